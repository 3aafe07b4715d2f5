use std::collections::VecDeque;

use crate::error::{LiError, Result};

/// Sliding history of outputs and controls that assembles the regressor
/// `xₙ = (y_{n−d_y}, …, y_{n−1}, u_{n−d_u}, …, u_n)`.
#[derive(Debug, Clone)]
pub struct NarxRegressor {
    d_y: usize,
    d_u: usize,
    output_dim: usize,
    control_dim: usize,
    outputs: VecDeque<Vec<f64>>,
    controls: VecDeque<Vec<f64>>,
}

impl NarxRegressor {
    pub fn new(d_y: usize, d_u: usize, output_dim: usize, control_dim: usize) -> Result<Self> {
        if output_dim == 0 || control_dim == 0 {
            return Err(LiError::invalid(
                "output and control dimensions must be at least 1",
            ));
        }
        Ok(Self {
            d_y,
            d_u,
            output_dim,
            control_dim,
            outputs: VecDeque::with_capacity(d_y),
            controls: VecDeque::with_capacity(d_u),
        })
    }

    /// `d_y·l + (d_u + 1)·s`.
    pub fn regressor_len(&self) -> usize {
        self.d_y * self.output_dim + (self.d_u + 1) * self.control_dim
    }

    /// True once enough history has been recorded to form a regressor.
    pub fn is_ready(&self) -> bool {
        self.outputs.len() == self.d_y && self.controls.len() == self.d_u
    }

    /// Records the output and control of a completed step.
    pub fn record(&mut self, y: &[f64], u: &[f64]) -> Result<()> {
        if y.len() != self.output_dim {
            return Err(LiError::DimensionMismatch {
                expected: self.output_dim,
                found: y.len(),
            });
        }
        if u.len() != self.control_dim {
            return Err(LiError::DimensionMismatch {
                expected: self.control_dim,
                found: u.len(),
            });
        }
        if self.d_y > 0 {
            if self.outputs.len() == self.d_y {
                self.outputs.pop_front();
            }
            self.outputs.push_back(y.to_vec());
        }
        if self.d_u > 0 {
            if self.controls.len() == self.d_u {
                self.controls.pop_front();
            }
            self.controls.push_back(u.to_vec());
        }
        Ok(())
    }

    /// Regressor for the current step given the control `u_now`, or `None`
    /// while the history is still filling.
    pub fn regressor(&self, u_now: &[f64]) -> Result<Option<Vec<f64>>> {
        if u_now.len() != self.control_dim {
            return Err(LiError::DimensionMismatch {
                expected: self.control_dim,
                found: u_now.len(),
            });
        }
        if !self.is_ready() {
            return Ok(None);
        }
        let mut x = Vec::with_capacity(self.regressor_len());
        self.outputs.iter().for_each(|y| x.extend_from_slice(y));
        self.controls.iter().for_each(|u| x.extend_from_slice(u));
        x.extend_from_slice(u_now);
        Ok(Some(x))
    }
}
