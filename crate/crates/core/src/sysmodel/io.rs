//! JSON formats.
//!
//! ```json
//! { "modes": [[[-0.3, 0.5], [0.2, -0.4]], [[-0.6, 0.0], [0.0, 1.0]]],
//!   "lower": [1, 1],
//!   "upper": [2, "inf"] }
//! ```
//!
//! Each mode is a list of rows or a flat row-major list of `d²` numbers.
//! Laws are lists of `[mode, duration]` pairs with 1-based modes.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{FiniteSwitchingLaw, Leg, RestrictedSystem};
use crate::numlin::Matrix;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatrixJson {
    Rows(Vec<Vec<f64>>),
    Flat(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BoundJson {
    Finite(f64),
    Named(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub modes: Vec<MatrixJson>,
    pub lower: Vec<f64>,
    pub upper: Vec<BoundJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LawFile(pub Vec<(usize, f64)>);

impl MatrixJson {
    pub fn to_matrix(&self, which: usize) -> Result<Matrix> {
        match self {
            MatrixJson::Rows(rows) => {
                let d = rows.len();
                if let Some(bad) = rows.iter().position(|r| r.len() != d) {
                    return Err(Error::InvalidSystem(format!(
                        "modes[{which}]: row {bad} has {} entries, expected {d}",
                        rows[bad].len()
                    )));
                }
                Ok(Matrix::from_fn(d, d, |i, k| rows[i][k]))
            }
            MatrixJson::Flat(xs) => {
                let d = (xs.len() as f64).sqrt().round() as usize;
                if d * d != xs.len() {
                    return Err(Error::InvalidSystem(format!(
                        "modes[{which}]: {} entries is not a square count",
                        xs.len()
                    )));
                }
                Ok(Matrix::from_row_slice(d, d, xs))
            }
        }
    }

    fn from_matrix(a: &Matrix) -> Self {
        MatrixJson::Rows(a.row_iter().map(|r| r.iter().copied().collect()).collect())
    }
}

impl BoundJson {
    fn value(&self, which: usize) -> Result<f64> {
        match self {
            BoundJson::Finite(x) => Ok(*x),
            BoundJson::Named(s) if matches!(s.to_ascii_lowercase().as_str(), "inf" | "infinity" | "+inf") => {
                Ok(f64::INFINITY)
            }
            BoundJson::Named(s) => Err(Error::InvalidSystem(format!("upper[{which}]: unrecognised bound {s:?}"))),
        }
    }
}

impl SystemFile {
    pub fn into_system(self) -> Result<RestrictedSystem> {
        if self.modes.is_empty() {
            return Err(Error::InvalidSystem("modes: list is empty".into()));
        }
        let modes = self.modes.iter().enumerate().map(|(i, m)| m.to_matrix(i)).collect::<Result<Vec<_>>>()?;
        let upper = self.upper.iter().enumerate().map(|(i, b)| b.value(i)).collect::<Result<Vec<_>>>()?;
        RestrictedSystem::new(modes, self.lower, upper)
    }

    pub fn from_system(sys: &RestrictedSystem) -> Self {
        SystemFile {
            modes: sys.modes().iter().map(MatrixJson::from_matrix).collect(),
            lower: sys.lower().to_vec(),
            upper: sys
                .upper()
                .iter()
                .map(|&m| if m.is_finite() { BoundJson::Finite(m) } else { BoundJson::Named("inf".into()) })
                .collect(),
        }
    }
}

impl RestrictedSystem {
    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str::<SystemFile>(s)?.into_system()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&SystemFile::from_system(self)).expect("system serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }
}

impl TryFrom<LawFile> for FiniteSwitchingLaw {
    type Error = Error;

    fn try_from(file: LawFile) -> Result<Self> {
        let mut legs = Vec::with_capacity(file.0.len());
        for (k, (mode, duration)) in file.0.into_iter().enumerate() {
            if mode == 0 {
                return Err(Error::InvalidLaw(format!("leg {k}: modes are numbered from 1")));
            }
            legs.push(Leg { mode: mode - 1, duration });
        }
        Ok(FiniteSwitchingLaw { legs })
    }
}

impl From<FiniteSwitchingLaw> for LawFile {
    fn from(law: FiniteSwitchingLaw) -> Self {
        LawFile(law.legs.iter().map(|l| (l.mode + 1, l.duration)).collect())
    }
}

impl FiniteSwitchingLaw {
    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("law serializes")
    }
}
