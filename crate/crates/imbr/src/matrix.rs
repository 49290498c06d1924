//! Dense feature matrix with aligned class labels, plus its CSV format.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};

/// Dense class id; labels are kept dense in `[0, C)`.
pub type ClassId = usize;

/// A row-major `n x d` matrix of finite reals with one class id per row.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    data: Vec<f64>,
    n_cols: usize,
    labels: Vec<ClassId>,
}

impl FeatureMatrix {
    /// An empty matrix with `n_cols >= 1` columns.
    pub fn with_dim(n_cols: usize) -> Result<Self> {
        if n_cols == 0 {
            return Err(Error::InvalidConfig(
                "matrix needs at least one column".into(),
            ));
        }
        Ok(Self {
            data: Vec::new(),
            n_cols,
            labels: Vec::new(),
        })
    }

    /// Builds a matrix from rows and aligned labels.
    pub fn from_rows(rows: &[Vec<f64>], labels: &[ClassId]) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::LengthMismatch {
                left: rows.len(),
                right: labels.len(),
            });
        }
        let n_cols = rows.first().map(Vec::len).unwrap_or(1);
        let mut m = Self::with_dim(n_cols)?;
        for (row, &label) in rows.iter().zip(labels) {
            m.push_row(row, label)?;
        }
        Ok(m)
    }

    /// Appends one row; rejects dimension mismatches and non-finite values.
    pub fn push_row(&mut self, row: &[f64], label: ClassId) -> Result<()> {
        if row.len() != self.n_cols {
            return Err(Error::DimensionMismatch {
                expected: self.n_cols,
                actual: row.len(),
            });
        }
        if row.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteValue {
                row: self.n_rows(),
            });
        }
        self.data.extend_from_slice(row);
        self.labels.push(label);
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n_cols)
    }

    pub fn labels(&self) -> &[ClassId] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> ClassId {
        self.labels[i]
    }

    /// Number of classes, i.e. one past the largest label (0 when empty).
    pub fn num_classes(&self) -> usize {
        self.labels.iter().max().map(|m| m + 1).unwrap_or(0)
    }

    /// Per-class row counts, indexed by class id over `[0, num_classes)`.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.num_classes()];
        for &l in &self.labels {
            counts[l] += 1;
        }
        counts
    }

    /// Row indices of the given class, in row order.
    pub fn class_members(&self, class_id: ClassId) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &l)| l == class_id)
            .map(|(i, _)| i)
            .collect()
    }

    /// A new matrix holding the selected rows, in the given order.
    pub fn select_rows(&self, indices: &[usize]) -> Self {
        let mut data = Vec::with_capacity(indices.len() * self.n_cols);
        let mut labels = Vec::with_capacity(indices.len());
        for &i in indices {
            data.extend_from_slice(self.row(i));
            labels.push(self.labels[i]);
        }
        Self {
            data,
            n_cols: self.n_cols,
            labels,
        }
    }

    /// Writes the CSV form: header `label,f0,...`, one row per instance,
    /// floats at 17 significant digits so reading back is lossless.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "label")?;
        for j in 0..self.n_cols {
            write!(w, ",f{j}")?;
        }
        writeln!(w)?;
        for (row, label) in self.rows().zip(&self.labels) {
            write!(w, "{label}")?;
            for v in row {
                write!(w, ",{v:.16e}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }

    /// Reads the CSV form produced by [`write_csv`](Self::write_csv).
    ///
    /// Errors carry 1-based line numbers.
    pub fn read_csv<R: BufRead>(r: R) -> Result<Self> {
        let mut lines = r.lines();
        let header = lines
            .next()
            .ok_or_else(|| format_err(1, "empty file; expected header"))??;
        let mut fields = header.split(',');
        if fields.next() != Some("label") {
            return Err(format_err(1, "header must start with 'label'"));
        }
        let n_cols = fields.count();
        if n_cols == 0 {
            return Err(format_err(1, "header names no feature columns"));
        }

        let mut m = Self::with_dim(n_cols)?;
        let mut row = Vec::with_capacity(n_cols);
        for (idx, line) in lines.enumerate() {
            let line_no = idx + 2;
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split(',');
            let label: ClassId = fields
                .next()
                .unwrap()
                .parse()
                .map_err(|_| format_err(line_no, "label must be a class-id integer"))?;
            row.clear();
            for field in fields {
                let v: f64 = field
                    .parse()
                    .map_err(|_| format_err(line_no, &format!("bad float {field:?}")))?;
                row.push(v);
            }
            if row.len() != n_cols {
                return Err(format_err(
                    line_no,
                    &format!("expected {} values, got {}", n_cols, row.len()),
                ));
            }
            m.push_row(&row, label)
                .map_err(|e| format_err(line_no, &e.to_string()))?;
        }
        Ok(m)
    }
}

fn format_err(line: usize, message: &str) -> Error {
    Error::Format {
        line,
        message: message.to_string(),
    }
}
