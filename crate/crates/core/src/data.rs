//! Append-only sample sets and their CSV form.
//!
//! The CSV layout is a header `x0,...,x{d-1},y` followed by one row per
//! sample. Values are written with Rust's shortest round-trip float
//! formatting, so a save followed by a load reproduces the set exactly.

use std::io::{Read, Write};
use std::path::Path;

use crate::error::{LiError, Result};

/// Ordered collection of `(input, noisy output)` pairs.
///
/// Inputs are stored row-major in one buffer. Appending never modifies
/// earlier entries.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    dim: usize,
    inputs: Vec<f64>,
    outputs: Vec<f64>,
}

impl SampleSet {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(LiError::invalid("input dimension must be at least 1"));
        }
        Ok(Self {
            dim,
            inputs: Vec::new(),
            outputs: Vec::new(),
        })
    }

    pub fn with_capacity(dim: usize, capacity: usize) -> Result<Self> {
        let mut set = Self::new(dim)?;
        set.inputs.reserve(capacity * dim);
        set.outputs.reserve(capacity);
        Ok(set)
    }

    /// Builds a set from `(input, output)` pairs, checking every input length.
    pub fn from_pairs<I, V>(dim: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, f64)>,
        V: AsRef<[f64]>,
    {
        let mut set = Self::new(dim)?;
        for (x, y) in pairs {
            set.push(x.as_ref(), y)?;
        }
        Ok(set)
    }

    /// Convenience constructor for one-dimensional data.
    ///
    /// Panics if a value is not finite.
    pub fn from_scalar_pairs(pairs: &[(f64, f64)]) -> Self {
        let mut set = Self {
            dim: 1,
            inputs: Vec::new(),
            outputs: Vec::new(),
        };
        for &(x, y) in pairs {
            assert!(x.is_finite() && y.is_finite(), "samples must be finite");
            set.inputs.push(x);
            set.outputs.push(y);
        }
        set
    }

    pub fn push(&mut self, x: &[f64], y: f64) -> Result<()> {
        if x.len() != self.dim {
            return Err(LiError::DimensionMismatch {
                expected: self.dim,
                found: x.len(),
            });
        }
        if !y.is_finite() || x.iter().any(|v| !v.is_finite()) {
            return Err(LiError::invalid("samples must be finite"));
        }
        self.inputs.extend_from_slice(x);
        self.outputs.push(y);
        Ok(())
    }

    /// Value-returning append; leaves `self` untouched.
    pub fn with_sample(&self, x: &[f64], y: f64) -> Result<Self> {
        let mut next = self.clone();
        next.push(x, y)?;
        Ok(next)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    pub fn input(&self, i: usize) -> &[f64] {
        &self.inputs[i * self.dim..(i + 1) * self.dim]
    }

    pub fn output(&self, i: usize) -> f64 {
        self.outputs[i]
    }

    pub fn outputs(&self) -> &[f64] {
        &self.outputs
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (&[f64], f64)> + '_ {
        self.inputs
            .chunks_exact(self.dim)
            .zip(self.outputs.iter().copied())
    }

    pub fn read_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(reader);
        let headers = rdr.headers()?.clone();
        let dim = check_sample_header(&headers)?;
        let mut set = Self::new(dim)?;
        let mut row = vec![0.0; dim];
        for (line, record) in rdr.records().enumerate() {
            let record = record?;
            if record.len() != dim + 1 {
                return Err(LiError::invalid(format!(
                    "row {}: expected {} fields, found {}",
                    line + 1,
                    dim + 1,
                    record.len()
                )));
            }
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = parse_field(&record[j], line + 1)?;
            }
            let y = parse_field(&record[dim], line + 1)?;
            set.push(&row, y)?;
        }
        Ok(set)
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(writer);
        let mut header: Vec<String> = (0..self.dim).map(|j| format!("x{j}")).collect();
        header.push("y".into());
        wtr.write_record(&header)?;
        for (x, y) in self.iter() {
            let mut rec: Vec<String> = x.iter().map(|v| format_f64(*v)).collect();
            rec.push(format_f64(y));
            wtr.write_record(&rec)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_csv(std::fs::File::open(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        crate::io::write_atomic(path.as_ref(), &buf)
    }
}

fn check_sample_header(headers: &csv::StringRecord) -> Result<usize> {
    if headers.len() < 2 {
        return Err(LiError::invalid(
            "sample CSV needs at least one input column and y",
        ));
    }
    let dim = headers.len() - 1;
    for (j, h) in headers.iter().take(dim).enumerate() {
        if h.trim() != format!("x{j}") {
            return Err(LiError::invalid(format!(
                "expected header x{j}, found {h:?}"
            )));
        }
    }
    if headers[dim].trim() != "y" {
        return Err(LiError::invalid(format!(
            "expected last header y, found {:?}",
            &headers[dim]
        )));
    }
    Ok(dim)
}

pub(crate) fn parse_field(s: &str, line: usize) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| LiError::invalid(format!("row {line}: cannot parse {s:?} as a number")))
}

/// Shortest representation that parses back to the same bits.
pub(crate) fn format_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Samples with vector-valued outputs; each output coordinate is learned
/// independently with a shared Lipschitz constant.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiOutputSampleSet {
    dim_in: usize,
    dim_out: usize,
    inputs: Vec<f64>,
    outputs: Vec<f64>,
}

impl MultiOutputSampleSet {
    pub fn new(dim_in: usize, dim_out: usize) -> Result<Self> {
        if dim_in == 0 || dim_out == 0 {
            return Err(LiError::invalid(
                "input and output dimensions must be at least 1",
            ));
        }
        Ok(Self {
            dim_in,
            dim_out,
            inputs: Vec::new(),
            outputs: Vec::new(),
        })
    }

    pub fn push(&mut self, x: &[f64], y: &[f64]) -> Result<()> {
        if x.len() != self.dim_in {
            return Err(LiError::DimensionMismatch {
                expected: self.dim_in,
                found: x.len(),
            });
        }
        if y.len() != self.dim_out {
            return Err(LiError::DimensionMismatch {
                expected: self.dim_out,
                found: y.len(),
            });
        }
        self.inputs.extend_from_slice(x);
        self.outputs.extend_from_slice(y);
        Ok(())
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn len(&self) -> usize {
        self.outputs.len() / self.dim_out
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    pub fn input(&self, i: usize) -> &[f64] {
        &self.inputs[i * self.dim_in..(i + 1) * self.dim_in]
    }

    pub fn output(&self, i: usize) -> &[f64] {
        &self.outputs[i * self.dim_out..(i + 1) * self.dim_out]
    }

    /// The scalar sample set of output coordinate `j`.
    pub fn component(&self, j: usize) -> Result<SampleSet> {
        if j >= self.dim_out {
            return Err(LiError::invalid(format!(
                "output component {j} out of range for {} outputs",
                self.dim_out
            )));
        }
        Ok(SampleSet {
            dim: self.dim_in,
            inputs: self.inputs.clone(),
            outputs: self
                .outputs
                .iter()
                .skip(j)
                .step_by(self.dim_out)
                .copied()
                .collect(),
        })
    }
}
