//! Vertex-isoperimetric profiles `n -> min |boundary(X)|, |X| = n`.

use std::collections::HashSet;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;

use super::{l1_sphere, Enumeration};
use crate::lattice::LatticePoint;
use crate::{Error, Result};

/// Isoperimetric profile with the convention `values[0] = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoProfile {
    dim: usize,
    values: Vec<u64>,
    /// False when the values come from a construction whose minimality has
    /// not been established (greedy profiles of `Z^d`, `d >= 3`).
    verified_minimal: bool,
    source: String,
}

impl IsoProfile {
    /// `boundaries[i]` is the profile value at `n = i + 1`.
    pub fn from_boundaries(
        dim: usize,
        boundaries: &[u64],
        verified_minimal: bool,
        source: impl Into<String>,
    ) -> Self {
        let mut values = Vec::with_capacity(boundaries.len() + 1);
        values.push(1);
        values.extend_from_slice(boundaries);
        Self {
            dim,
            values,
            verified_minimal,
            source: source.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Largest `n` with a known value.
    pub fn max_n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<u64> {
        self.values.get(n).copied()
    }

    /// Values for `n = 0..=max_n`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn verified_minimal(&self) -> bool {
        self.verified_minimal
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Checks `values[n+1] >= values[n]` for `n >= 1`.
    pub fn check_monotone(&self) -> Result<()> {
        match (1..self.max_n()).find(|&n| self.values[n + 1] < self.values[n]) {
            Some(n) => Err(Error::NonMonotoneProfile(n)),
            None => Ok(()),
        }
    }

    pub fn truncated(&self, max_n: usize) -> Self {
        let mut p = self.clone();
        p.values.truncate(max_n + 1);
        p
    }
}

/// `|boundary({v_1..v_n})|` for `n = 1..=n_max`; entry `i` is `n = i + 1`.
pub fn prefix_profile(e: &Enumeration, n_max: u64) -> Result<Vec<u64>> {
    let prefix = e.prefix(n_max)?;
    let mut inside: HashSet<&LatticePoint> = HashSet::new();
    let mut boundary: HashSet<LatticePoint> = HashSet::new();
    let mut out = Vec::with_capacity(prefix.len());
    for p in prefix {
        inside.insert(p);
        boundary.remove(p);
        for q in p.neighbors() {
            if !inside.contains(&q) {
                boundary.insert(q);
            }
        }
        out.push(boundary.len() as u64);
    }
    Ok(out)
}

static Z2_PROFILE: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// Profile of `Z^2` up to `n_max`, read off the Wang-Wang prefixes.
pub fn z2_profile(n_max: usize) -> IsoProfile {
    let mut cache = Z2_PROFILE.lock().unwrap_or_else(|e| e.into_inner());
    if cache.len() < n_max {
        let target = n_max.max(2 * cache.len()).max(64) as u64;
        let e = Enumeration::wang_wang(target);
        *cache = prefix_profile(&e, target).expect("generated to target");
    }
    IsoProfile::from_boundaries(
        2,
        &cache[..n_max],
        true,
        "Wang-Wang prefix perimeters on Z^2",
    )
}

/// `\partial_V^n` on `Z^2`, with `iso_z2(0) = 1`.
pub fn iso_z2(n: usize) -> u64 {
    if n == 0 {
        return 1;
    }
    z2_profile(n).values()[n]
}

/// Default limit on the number of subsets examined by [`brute_force_profile`].
pub const BRUTE_FORCE_BUDGET: u128 = 200_000_000;

/// Exact minimum of `|boundary(X)|` over `|X| = n`, `X` inside the closed l1
/// ball of radius `radius`, for `n = 1..=n_max`.
///
/// Oracle assumption: the window minimum equals the global minimum in the
/// tested range (perimeter is translation invariant and minimisers of these
/// sizes fit in the window).
pub fn brute_force_profile(dim: usize, n_max: usize, radius: u64) -> Result<IsoProfile> {
    brute_force_profile_with_budget(dim, n_max, radius, BRUTE_FORCE_BUDGET)
}

pub fn brute_force_profile_with_budget(
    dim: usize,
    n_max: usize,
    radius: u64,
    budget: u128,
) -> Result<IsoProfile> {
    if dim == 0 {
        return Err(Error::InvalidDimension { min: 1, got: 0 });
    }
    let window: Vec<LatticePoint> = (0..=radius).flat_map(|r| l1_sphere(dim, r)).collect();
    let halo: Vec<LatticePoint> = window
        .iter()
        .cloned()
        .chain(l1_sphere(dim, radius + 1))
        .collect();
    if halo.len() > 128 {
        return Err(Error::Unsupported(format!(
            "window with halo has {} points; at most 128 supported",
            halo.len()
        )));
    }
    let w = window.len();
    if n_max > w {
        return Err(Error::Unsupported(format!(
            "n_max = {n_max} exceeds window size {w}"
        )));
    }
    let needed: u128 = (1..=n_max).map(|n| binomial(w as u128, n as u128)).sum();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }

    let position = |p: &LatticePoint| halo.iter().position(|q| q == p);
    let nbr_masks: Vec<u128> = window
        .iter()
        .map(|p| {
            p.neighbors()
                .iter()
                .map(|q| 1u128 << position(q).expect("halo contains neighbours"))
                .fold(0, |a, b| a | b)
        })
        .collect();

    let values: Vec<u64> = (1..=n_max)
        .map(|n| {
            (0..w)
                .into_par_iter()
                .map(|first| {
                    let mut best = u32::MAX;
                    min_boundary(
                        &nbr_masks,
                        first + 1,
                        n - 1,
                        1u128 << first,
                        nbr_masks[first],
                        &mut best,
                    );
                    best
                })
                .min()
                .unwrap_or(u32::MAX) as u64
        })
        .collect();
    Ok(IsoProfile::from_boundaries(
        dim,
        &values,
        true,
        format!("brute force over all subsets of the closed l1 ball of radius {radius} in Z^{dim}"),
    ))
}

fn min_boundary(
    nbrs: &[u128],
    start: usize,
    remaining: usize,
    set: u128,
    reach: u128,
    best: &mut u32,
) {
    if remaining == 0 {
        *best = (*best).min((reach & !set).count_ones());
        return;
    }
    for i in start..=nbrs.len() - remaining {
        min_boundary(
            nbrs,
            i + 1,
            remaining - 1,
            set | (1u128 << i),
            reach | nbrs[i],
            best,
        );
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}
