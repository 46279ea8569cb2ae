//! Exact maximisation of the `p = 2` ratio over a fixed support.
//!
//! Fix which support point carries the `k`-th largest value. Writing the
//! sorted values as `w_k = z_k + z_{k+1} + ... + z_m` with `z >= 0`, both
//! squared gradient norms are quadratic forms in `z`, and the ratio is a
//! generalised Rayleigh quotient on the nonnegative orthant. Its maximum is
//! attained in the relative interior of some face, where it is a
//! generalised eigenvector with positive entries. All faces are tried.

#![allow(clippy::needless_range_loop)]

use serde::Serialize;

use super::SupportGeometry;
use crate::enumerations::Enumeration;
use crate::lattice::LatticePoint;
use crate::{Error, Result};

pub const ORACLE_MAX_SUPPORT: usize = 6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleResult {
    /// Largest `||grad f*||_2^2 / ||grad f||_2^2`.
    pub quotient: f64,
    /// `ordering[k]` is the support index holding the `k`-th largest value.
    pub ordering: Vec<usize>,
    /// Maximising values, indexed like the support, largest value 1.
    pub values: Vec<f64>,
}

/// Symmetric eigen-decomposition by cyclic Jacobi rotations.
/// Returns eigenvalues and eigenvectors as columns.
pub fn jacobi_eigen(mut a: Vec<Vec<f64>>) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = a.len();
    let mut v = vec![vec![0.0; n]; n];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        let scale: f64 = (0..n)
            .map(|i| a[i][i] * a[i][i])
            .sum::<f64>()
            .max(f64::MIN_POSITIVE);
        if off <= 1e-30 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q] == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vp, vq) = (row[p], row[q]);
                    row[p] = c * vp - s * vq;
                    row[q] = s * vp + c * vq;
                }
            }
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}

fn cholesky(b: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = b.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let s: f64 = b[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}

/// Lower-triangular inverse.
fn invert_lower(l: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = l.len();
    let mut inv = vec![vec![0.0; n]; n];
    for col in 0..n {
        for i in col..n {
            let rhs = if i == col { 1.0 } else { 0.0 };
            let s: f64 = rhs - (col..i).map(|k| l[i][k] * inv[k][col]).sum::<f64>();
            inv[i][col] = s / l[i][i];
        }
    }
    inv
}

/// Generalised eigenpairs of `(a, b)` with `b` positive definite.
fn generalized_eigen(a: &[Vec<f64>], b: &[Vec<f64>]) -> Option<Vec<(f64, Vec<f64>)>> {
    let n = a.len();
    let li = invert_lower(&cholesky(b)?);
    // c = L^{-1} a L^{-T}
    let mut c = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            c[i][j] = (0..n)
                .flat_map(|k| (0..n).map(move |l| (k, l)))
                .map(|(k, l)| li[i][k] * a[k][l] * li[j][l])
                .sum();
        }
    }
    for i in 0..n {
        for j in 0..i {
            let s = 0.5 * (c[i][j] + c[j][i]);
            c[i][j] = s;
            c[j][i] = s;
        }
    }
    let (vals, vecs) = jacobi_eigen(c);
    Some(
        (0..n)
            .map(|col| {
                // x = L^{-T} y
                let x = (0..n)
                    .map(|i| (0..n).map(|k| li[k][i] * vecs[k][col]).sum())
                    .collect();
                (vals[col], x)
            })
            .collect(),
    )
}

fn quadratic(m: &[Vec<f64>], x: &[f64]) -> f64 {
    (0..x.len())
        .map(|i| x[i] * (0..x.len()).map(|j| m[i][j] * x[j]).sum::<f64>())
        .sum()
}

/// Best quotient for a fixed ordering, as `(quotient, z)`.
fn best_on_cone(a: &[Vec<f64>], b: &[Vec<f64>]) -> Option<(f64, Vec<f64>)> {
    let m = a.len();
    let mut best: Option<(f64, Vec<f64>)> = None;
    for mask in 1u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        let sub = |mat: &[Vec<f64>]| -> Vec<Vec<f64>> {
            idx.iter()
                .map(|&i| idx.iter().map(|&j| mat[i][j]).collect())
                .collect()
        };
        let Some(pairs) = generalized_eigen(&sub(a), &sub(b)) else {
            continue;
        };
        for (_, x) in pairs {
            let norm = x.iter().fold(0.0f64, |s, v| s.max(v.abs()));
            let sign = if x.iter().sum::<f64>() < 0.0 {
                -1.0
            } else {
                1.0
            };
            if norm == 0.0 || x.iter().any(|v| sign * v <= 1e-12 * norm) {
                continue;
            }
            let mut z = vec![0.0; m];
            for (&i, v) in idx.iter().zip(&x) {
                z[i] = sign * v / norm;
            }
            // recompute the quotient from the vector to avoid eigenvalue round-off
            let q = quadratic(a, &z) / quadratic(b, &z);
            if best.as_ref().is_none_or(|(bq, _)| q > *bq) {
                best = Some((q, z));
            }
        }
    }
    best
}

struct Problem {
    /// Quadratic form of `f*` in sorted coordinates `w`.
    target: Vec<Vec<f64>>,
    /// Quadratic form of `f` in support coordinates.
    source: Vec<Vec<f64>>,
    m: usize,
}

impl Problem {
    fn new(e: &mut Enumeration, support: &[LatticePoint]) -> Result<Self> {
        let m = support.len();
        if m == 0 || m > ORACLE_MAX_SUPPORT {
            return Err(Error::Unsupported(format!(
                "oracle supports 1..={ORACLE_MAX_SUPPORT} points, got {m}"
            )));
        }
        if support.iter().any(|p| p.dim() != e.dim()) {
            return Err(Error::DimensionMismatch {
                expected: e.dim(),
                got: support[0].dim(),
            });
        }
        e.extend_to(m as u64)?;
        let target = SupportGeometry::new(e.prefix(m as u64)?).dirichlet_matrix();
        let source = SupportGeometry::new(support).dirichlet_matrix();
        Ok(Self { target, source, m })
    }

    /// Both forms in `z` coordinates for an ordering.
    fn forms(&self, ordering: &[usize]) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let m = self.m;
        let b_w: Vec<Vec<f64>> = (0..m)
            .map(|k| {
                (0..m)
                    .map(|l| self.source[ordering[k]][ordering[l]])
                    .collect()
            })
            .collect();
        // w = u z with u[k][l] = 1 iff l >= k, and (u^T x u)[i][j] = sum_{k <= i, l <= j} x[k][l]
        let lift = |x: &[Vec<f64>]| -> Vec<Vec<f64>> {
            (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            (0..=i)
                                .flat_map(|k| (0..=j).map(move |l| (k, l)))
                                .map(|(k, l)| x[k][l])
                                .sum()
                        })
                        .collect()
                })
                .collect()
        };
        (lift(&self.target), lift(&b_w))
    }

    fn solve(&self, ordering: &[usize]) -> Result<OracleResult> {
        let (a, b) = self.forms(ordering);
        let (quotient, z) = best_on_cone(&a, &b)
            .ok_or_else(|| Error::Audit("no feasible point on the ordering cone".into()))?;
        let mut values = vec![0.0; self.m];
        let mut acc = 0.0;
        for k in (0..self.m).rev() {
            acc += z[k];
            values[ordering[k]] = acc;
        }
        let top = values.iter().fold(0.0f64, |s, v| s.max(*v));
        values.iter_mut().for_each(|v| *v /= top);
        Ok(OracleResult {
            quotient,
            ordering: ordering.to_vec(),
            values,
        })
    }
}

/// Largest quotient when `support[ordering[k]]` holds the `k`-th largest value.
pub fn rayleigh_oracle_p2_ordering(
    e: &mut Enumeration,
    support: &[LatticePoint],
    ordering: &[usize],
) -> Result<OracleResult> {
    let problem = Problem::new(e, support)?;
    let mut seen = ordering.to_vec();
    seen.sort_unstable();
    if !seen.iter().copied().eq(0..support.len()) {
        return Err(Error::Unsupported(
            "ordering must be a permutation of the support indices".into(),
        ));
    }
    problem.solve(ordering)
}

/// Largest `p = 2` quotient over all nonnegative functions supported in `support`.
pub fn rayleigh_oracle_p2(e: &mut Enumeration, support: &[LatticePoint]) -> Result<OracleResult> {
    let problem = Problem::new(e, support)?;
    let mut ordering: Vec<usize> = (0..support.len()).collect();
    let mut best = problem.solve(&ordering)?;
    while next_permutation(&mut ordering) {
        let r = problem.solve(&ordering)?;
        if r.quotient > best.quotient {
            best = r;
        }
    }
    Ok(best)
}

fn next_permutation(xs: &mut [usize]) -> bool {
    let Some(i) = (1..xs.len()).rev().find(|&i| xs[i - 1] < xs[i]) else {
        return false;
    };
    let j = (i..xs.len()).rev().find(|&j| xs[j] > xs[i - 1]).unwrap();
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}
