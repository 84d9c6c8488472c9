//! Serializable trial instances, the unit of sampling and replay.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logconvex::LogConvexFunctional;
use crate::matrix::cmatrix::CMatrix;
use crate::matrix::hermitian::{HermitianMatrix, PsdMatrix, SpdMatrix, SpectralBounds};
use crate::norms::NormKind;
use crate::scalar::refinement::ScalarPair;
use crate::scalar::weight::{RefinementDepth, Weight};

/// How a log-convex functional is reconstructed from an instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FunctionalSpec {
    /// `t -> e^{c t}`.
    LogAffine { c: f64 },
    /// One of the four built-in matrix functionals.
    Matrix { norm: NormKind, which: u8, a: CMatrix, b: CMatrix, x: CMatrix },
}

impl FunctionalSpec {
    pub fn build(&self) -> Result<LogConvexFunctional> {
        match self {
            FunctionalSpec::LogAffine { c } => Ok(LogConvexFunctional::log_affine(*c)),
            FunctionalSpec::Matrix { norm, which, a, b, x } => {
                let a = PsdMatrix::new(HermitianMatrix::new(a.clone())?)?;
                let b = PsdMatrix::new(HermitianMatrix::new(b.clone())?)?;
                crate::logconvex::build_functional(*norm, &a, &b, x, *which)
            }
        }
    }
}

/// One sampled (or replayed) evaluation point.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TrialInstance {
    Scalar {
        nu: f64,
        a: f64,
        b: f64,
        depth: u32,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        second_depth: Option<u32>,
    },
    Operator {
        nu: f64,
        depth: u32,
        a: CMatrix,
        b: CMatrix,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bounds: Option<SpectralBounds>,
    },
    Hs {
        nu: f64,
        depth: u32,
        a: CMatrix,
        b: CMatrix,
        x: CMatrix,
    },
    LogConvex {
        t: f64,
        depth: u32,
        functional: FunctionalSpec,
    },
}

impl TrialInstance {
    pub fn scalar_parts(&self) -> Result<(Weight, ScalarPair, RefinementDepth)> {
        match self {
            TrialInstance::Scalar { nu, a, b, depth, .. } => Ok((
                Weight::new(*nu)?,
                ScalarPair::new(*a, *b)?,
                RefinementDepth::new(*depth)?,
            )),
            _ => Err(Error::Usage("entry expects a scalar instance".into())),
        }
    }

    pub fn scalar_second_depth(&self) -> Result<RefinementDepth> {
        match self {
            TrialInstance::Scalar { second_depth: Some(m), .. } => RefinementDepth::new(*m),
            TrialInstance::Scalar { depth, .. } => RefinementDepth::new(*depth),
            _ => Err(Error::Usage("entry expects a scalar instance".into())),
        }
    }

    pub fn operator_parts(&self) -> Result<(Weight, RefinementDepth, SpdMatrix, SpdMatrix)> {
        match self {
            TrialInstance::Operator { nu, depth, a, b, .. } => Ok((
                Weight::new(*nu)?,
                RefinementDepth::new(*depth)?,
                SpdMatrix::new(HermitianMatrix::new(a.clone())?)?,
                SpdMatrix::new(HermitianMatrix::new(b.clone())?)?,
            )),
            _ => Err(Error::Usage("entry expects an operator instance".into())),
        }
    }

    pub fn operator_bounds(&self) -> Result<SpectralBounds> {
        match self {
            TrialInstance::Operator { bounds: Some(b), .. } => Ok(*b),
            TrialInstance::Operator { .. } => {
                Err(Error::Usage("instance carries no spectral bounds".into()))
            }
            _ => Err(Error::Usage("entry expects an operator instance".into())),
        }
    }

    pub fn hs_parts(&self) -> Result<(Weight, RefinementDepth, PsdMatrix, PsdMatrix, CMatrix)> {
        match self {
            TrialInstance::Hs { nu, depth, a, b, x } => Ok((
                Weight::new(*nu)?,
                RefinementDepth::new(*depth)?,
                PsdMatrix::new(HermitianMatrix::new(a.clone())?)?,
                PsdMatrix::new(HermitianMatrix::new(b.clone())?)?,
                x.clone(),
            )),
            _ => Err(Error::Usage("entry expects a Hilbert-Schmidt instance".into())),
        }
    }

    pub fn logconvex_parts(&self) -> Result<(Weight, RefinementDepth, LogConvexFunctional)> {
        match self {
            TrialInstance::LogConvex { t, depth, functional } => Ok((
                Weight::new(*t)?,
                RefinementDepth::new(*depth)?,
                functional.build()?,
            )),
            _ => Err(Error::Usage("entry expects a log-convex instance".into())),
        }
    }
}
