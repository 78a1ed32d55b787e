use std::fmt;

use crate::error::{Error, Result};
use crate::exactmath::TruncatedSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    ClosedForm,
    BarOracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ClosedForm => "closed-form",
            Provenance::BarOracle => "bar-oracle",
        })
    }
}

/// Bigraded dimensions `dim Tor_{s,n}` for `s <= s_max`, `n <= n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorTable {
    s_max: usize,
    n_max: usize,
    /// `dims[s][n]`
    dims: Vec<Vec<usize>>,
    provenance: Provenance,
}

impl TorTable {
    pub fn zeros(s_max: usize, n_max: usize, provenance: Provenance) -> Self {
        TorTable {
            s_max,
            n_max,
            dims: vec![vec![0; n_max + 1]; s_max + 1],
            provenance,
        }
    }

    pub fn s_max(&self) -> usize {
        self.s_max
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn get(&self, s: usize, n: usize) -> Result<usize> {
        if s > self.s_max || n > self.n_max {
            return Err(Error::OutsideTrustedRange {
                s,
                n,
                s_max: self.s_max,
                n_max: self.n_max,
            });
        }
        Ok(self.dims[s][n])
    }

    pub fn set(&mut self, s: usize, n: usize, v: usize) {
        self.dims[s][n] = v;
    }

    pub fn add(&mut self, s: usize, n: usize, v: usize) {
        self.dims[s][n] += v;
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.dims
    }

    /// Same entries, ignoring provenance.
    pub fn same_dims(&self, other: &TorTable) -> bool {
        self.s_max == other.s_max && self.n_max == other.n_max && self.dims == other.dims
    }

    /// The part with `s <= s_max`, `n <= n_max`.
    pub fn restrict(&self, s_max: usize, n_max: usize) -> Result<TorTable> {
        if s_max > self.s_max || n_max > self.n_max {
            return Err(Error::OutsideTrustedRange {
                s: s_max,
                n: n_max,
                s_max: self.s_max,
                n_max: self.n_max,
            });
        }
        Ok(TorTable {
            s_max,
            n_max,
            dims: self.dims[..=s_max].iter().map(|r| r[..=n_max].to_vec()).collect(),
            provenance: self.provenance,
        })
    }

    /// Nonzero entries in `(s, n)` order.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (s, row) in self.dims.iter().enumerate() {
            for (n, &d) in row.iter().enumerate() {
                if d != 0 {
                    out.push((s, n, d));
                }
            }
        }
        out
    }

    /// `P(Tor_s; t)`.
    pub fn row_series(&self, s: usize) -> TruncatedSeries {
        TruncatedSeries::from_counts(&self.dims[s], self.n_max)
    }

    /// `Σ_s (-1)^s P(Tor_s; t)` over the stored rows.
    pub fn alternating_series(&self) -> TruncatedSeries {
        (0..=self.s_max).fold(TruncatedSeries::zero(self.n_max), |acc, s| {
            if s % 2 == 0 {
                acc.add(&self.row_series(s))
            } else {
                acc.sub(&self.row_series(s))
            }
        })
    }
}

impl fmt::Display for TorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s\\n")?;
        for n in 0..=self.n_max {
            write!(f, " {n:>4}")?;
        }
        for (s, row) in self.dims.iter().enumerate() {
            write!(f, "\n{s:>3}")?;
            for d in row {
                write!(f, " {d:>4}")?;
            }
        }
        Ok(())
    }
}
