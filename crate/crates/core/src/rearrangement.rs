//! Rearrangement along an enumeration and Pólya–Szegő ratios.
//!
//! The `k`-th largest value of `|f|` is placed on the point labelled `k`.
//! Functions in this crate are nonnegative, so `|f| = f`.

use std::cmp::Ordering;

use serde::Serialize;

use crate::enumerations::Enumeration;
use crate::lattice::{grad_lp, grad_pow_exact, Exponent, LatticeFunction, LatticePoint, Scalar};
use crate::{Error, Result};

/// Support points of `f` ordered by decreasing value.
///
/// Equal values are ordered by their own label under `e`, unlabelled points
/// last in lattice order. The values of `f*` do not depend on this.
pub fn ordered_support<'a, V: Scalar>(
    f: &'a LatticeFunction<V>,
    e: &Enumeration,
) -> Vec<(&'a LatticePoint, &'a V)> {
    let mut entries: Vec<_> = f.iter().collect();
    let key = |p: &LatticePoint| e.label_of(p).unwrap_or(u64::MAX);
    entries.sort_by(|a, b| {
        b.1.partial_cmp(a.1)
            .unwrap_or(Ordering::Equal)
            .then_with(|| key(a.0).cmp(&key(b.0)))
            .then_with(|| a.0.cmp(b.0))
    });
    entries
}

/// `f*`, extending `e` to `|supp f|` labels if its generator allows.
pub fn rearrange<V: Scalar>(
    f: &LatticeFunction<V>,
    e: &mut Enumeration,
) -> Result<LatticeFunction<V>> {
    if f.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            got: f.dim(),
        });
    }
    e.extend_to(f.len() as u64)?;
    rearrange_prefix(f, e)
}

/// `f*` on an enumeration that already has enough labels.
pub fn rearrange_prefix<V: Scalar>(
    f: &LatticeFunction<V>,
    e: &Enumeration,
) -> Result<LatticeFunction<V>> {
    if f.dim() != e.dim() {
        return Err(Error::DimensionMismatch {
            expected: e.dim(),
            got: f.dim(),
        });
    }
    let targets = e.prefix(f.len() as u64)?;
    let ordered = ordered_support(f, e);
    LatticeFunction::from_entries(
        f.dim(),
        targets
            .iter()
            .cloned()
            .zip(ordered.into_iter().map(|(_, v)| v.abs())),
    )
}

/// `||grad f*||_p / ||grad f||_p` together with its `p`-th power.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PsRatio {
    pub numerator: f64,
    pub denominator: f64,
    pub norm_ratio: f64,
    /// `None` for `p = inf`.
    pub power_ratio: Option<f64>,
}

impl PsRatio {
    fn new(numerator: f64, denominator: f64, p: Exponent) -> Result<Self> {
        if !(denominator > 0.0) {
            return Err(Error::ZeroGradient);
        }
        let norm_ratio = numerator / denominator;
        Ok(Self {
            numerator,
            denominator,
            norm_ratio,
            power_ratio: p.finite().map(|p| norm_ratio.powf(p)),
        })
    }
}

pub fn ps_ratio<V: Scalar>(
    f: &LatticeFunction<V>,
    e: &mut Enumeration,
    p: Exponent,
) -> Result<PsRatio> {
    let fstar = rearrange(f, e)?;
    PsRatio::new(grad_lp(&fstar, p), grad_lp(f, p), p)
}

/// Exact `(||grad f*||_p^p, ||grad f||_p^p)` for integer `p`.
pub fn ps_ratio_exact<V: Scalar>(
    f: &LatticeFunction<V>,
    e: &mut Enumeration,
    p: u32,
) -> Result<(V, V)> {
    let fstar = rearrange(f, e)?;
    let den = grad_pow_exact(f, p);
    if den.is_zero() {
        return Err(Error::ZeroGradient);
    }
    Ok((grad_pow_exact(&fstar, p), den))
}

/// Whether `|{f >= s}| = |{g >= s}|` for every threshold.
pub fn level_sets_match<V: Scalar>(
    f: &LatticeFunction<V>,
    g: &LatticeFunction<V>,
    thresholds: &[V],
) -> bool {
    thresholds
        .iter()
        .all(|s| f.level_set_size(s) == g.level_set_size(s))
}
