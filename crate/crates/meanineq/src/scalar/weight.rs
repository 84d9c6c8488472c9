//! The interpolation weight and refinement depth, with exact dyadic support.
//!
//! All floor expressions of the form `[2^j nu]` are discontinuous exactly at
//! dyadic rationals, which is where the refinements become tight. Evaluating
//! them naively in floating point misclassifies weights that land an ulp
//! below a dyadic, so a weight can carry an exact dyadic representation
//! `num / 2^log2_den`; floors are then computed in integer arithmetic.
//! Weights without that representation snap `2^j nu` to the nearest integer
//! when it is within `1e-12` before flooring.

use crate::error::{Error, Result};

/// Largest supported refinement depth; `2^60` still fits an `i128` product.
pub const MAX_DEPTH: u32 = 60;

/// Snap tolerance for floor arguments close to an integer.
const FLOOR_SNAP: f64 = 1e-12;

/// Exact dyadic rational `num / 2^log2_den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dyadic {
    pub num: i64,
    pub log2_den: u32,
}

impl Dyadic {
    fn value(self) -> f64 {
        self.num as f64 / (self.log2_den as f64).exp2()
    }
}

/// Interpolation weight, usually in `[0, 1]`, nonnegative for the
/// `a^{1+nu} b^{-nu}` reverses.
#[derive(Debug, Clone, Copy)]
pub struct Weight {
    value: f64,
    dyadic: Option<Dyadic>,
}

impl Weight {
    /// Weight from a plain floating point value.
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::domain(format!(
                "weight must be finite and nonnegative, got {value}"
            )));
        }
        Ok(Weight { value, dyadic: None })
    }

    /// Weight `num / 2^log2_den` with exact integer floor arithmetic.
    pub fn dyadic(num: i64, log2_den: u32) -> Result<Self> {
        if num < 0 {
            return Err(Error::domain(format!("dyadic numerator {num} < 0")));
        }
        if log2_den > MAX_DEPTH {
            return Err(Error::Depth(format!(
                "dyadic denominator exponent {log2_den} exceeds {MAX_DEPTH}"
            )));
        }
        let d = Dyadic { num, log2_den };
        Ok(Weight { value: d.value(), dyadic: Some(d) })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact_dyadic(&self) -> Option<(i64, u32)> {
        self.dyadic.map(|d| (d.num, d.log2_den))
    }

    /// `true` if the weight lies in `[0, 1]` (inclusive).
    pub fn is_convex(&self) -> bool {
        (0.0..=1.0).contains(&self.value)
    }

    pub(crate) fn require_convex(&self, what: &str) -> Result<()> {
        if self.is_convex() {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{what} requires a weight in [0, 1], got {}",
                self.value
            )))
        }
    }

    /// `floor(2^k * nu)` with exact integer arithmetic when available and
    /// snapped floating point flooring otherwise.
    pub(crate) fn floor_scaled(&self, k: u32) -> i64 {
        match self.dyadic {
            Some(d) => {
                if k >= d.log2_den {
                    d.num << (k - d.log2_den) as i64
                } else {
                    d.num >> (d.log2_den - k)
                }
            }
            None => floor_snapped((k as f64).exp2() * self.value),
        }
    }

    /// Fractional part of `2^k * nu` consistent with [`Self::floor_scaled`].
    pub(crate) fn frac_scaled(&self, k: u32) -> f64 {
        let x = (k as f64).exp2() * self.value;
        let f = x - self.floor_scaled(k) as f64;
        f.clamp(0.0, 1.0)
    }

    /// `offset + (-1)^negate * 2^pow2 * nu`, keeping dyadic exactness.
    ///
    /// Covers every weight transformation the statements need
    /// (`2nu`, `1 - nu`, `2 - 2nu`, `4nu - 2`, ...).
    pub(crate) fn affine(&self, pow2: i32, negate: bool, offset: i64) -> Result<Self> {
        let scaled = (pow2 as f64).exp2() * self.value;
        let value = offset as f64 + if negate { -scaled } else { scaled };
        // Negative dust appears when a weight sits a hair past a branch seam
        // that both branches are asked to evaluate; snap it to the seam.
        let value = if value < 0.0 && value > -1e-11 { 0.0 } else { value };
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::domain(format!(
                "transformed weight {value} is outside [0, inf)"
            )));
        }
        let dyadic = self.dyadic.and_then(|d| {
            let den_exp = (d.log2_den as i64 - pow2 as i64).max(0) as u32;
            if den_exp > MAX_DEPTH {
                return None;
            }
            let num_shift = pow2 + den_exp as i32 - d.log2_den as i32;
            debug_assert!(num_shift >= 0);
            let num = (d.num as i128) << num_shift as u32;
            let num = if negate { -num } else { num };
            let num = num + ((offset as i128) << den_exp);
            if num < 0 || num > i64::MAX as i128 {
                None
            } else {
                Some(Dyadic { num: num as i64, log2_den: den_exp })
            }
        });
        Ok(Weight { value, dyadic })
    }

    /// Distance to the branch seam, for deciding when both branch formulas
    /// of a two-branch statement apply.
    pub(crate) fn at_seam(&self, seam: f64) -> bool {
        (self.value - seam).abs() <= FLOOR_SNAP
    }
}

/// Number of refinement terms; `n = 0` is the empty sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RefinementDepth {
    n: u32,
}

impl RefinementDepth {
    pub fn new(n: u32) -> Result<Self> {
        if n > MAX_DEPTH {
            return Err(Error::Depth(format!("depth {n} exceeds maximum {MAX_DEPTH}")));
        }
        Ok(RefinementDepth { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Floor with snapping toward the nearest integer: arguments within
/// `1e-12` of an integer are treated as that integer, matching the branch
/// the formulas intend at dyadic points.
pub(crate) fn floor_snapped(x: f64) -> i64 {
    let r = x.round();
    if (x - r).abs() <= FLOOR_SNAP * x.abs().max(1.0) {
        r as i64
    } else {
        x.floor() as i64
    }
}
