//! Weights of indefinite inner product spaces: invertible Hermitian matrices
//! with cached exact inverses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::inverse;
use crate::matrix::Matrix;
use crate::scalar::GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weight {
    h: Matrix,
    h_inverse: Matrix,
}

impl Weight {
    /// Validate an invertible Hermitian matrix and cache its inverse.
    pub fn validate(h: Matrix) -> Result<Self> {
        if !h.is_square() {
            return Err(Error::Dimension("weight must be square".into()));
        }
        if h.conj_transpose() != h {
            return Err(Error::NotHermitian);
        }
        let h_inverse = inverse(&h).map_err(|_| Error::SingularWeight)?;
        Ok(Self { h, h_inverse })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            h: Matrix::identity(n),
            h_inverse: Matrix::identity(n),
        }
    }

    /// Signature weight `diag(signs)` with entries ±1.
    pub fn signature(signs: &[i64]) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Config("signature entries must be ±1".into()));
        }
        let entries: Vec<GaussianRational> =
            signs.iter().map(|&s| GaussianRational::from_int(s)).collect();
        let h = Matrix::diag(&entries);
        // a signature matrix is its own inverse
        Ok(Self {
            h_inverse: h.clone(),
            h,
        })
    }

    pub fn order(&self) -> usize {
        self.h.rows()
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    pub fn h_inverse(&self) -> &Matrix {
        &self.h_inverse
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.h.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let h = Matrix::deserialize(d)?;
        Weight::validate(h).map_err(serde::de::Error::custom)
    }
}

/// Weights (M, N, L) for spaces of dimensions m, n, l: `A: C^n -> C^m` under
/// (M, N) and `B: C^l -> C^n` under (N, L).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightTriple {
    #[serde(rename = "M")]
    pub m: Weight,
    #[serde(rename = "N")]
    pub n: Weight,
    #[serde(rename = "L")]
    pub l: Weight,
}

impl WeightTriple {
    pub fn new(m: Weight, n: Weight, l: Weight) -> Self {
        Self { m, n, l }
    }

    pub fn identity(m: usize, n: usize, l: usize) -> Self {
        Self {
            m: Weight::identity(m),
            n: Weight::identity(n),
            l: Weight::identity(l),
        }
    }
}

/// On-disk weights file: `{"M": <matrix>, "N": <matrix>, "L": <matrix>?}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightsFile {
    #[serde(rename = "M")]
    pub m: Weight,
    #[serde(rename = "N")]
    pub n: Weight,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<Weight>,
}
