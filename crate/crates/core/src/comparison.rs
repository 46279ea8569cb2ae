//! The universal comparison tree of an isoperimetric profile and the
//! comparison function of a lattice function.
//!
//! Vertex `n` of the tree has as larger neighbours exactly the labels
//! `i` with `(n-1) + P(n-1) < i <= n + P(n)`, where `P` is the profile with
//! `P(0) = 1`. Because `n + P(n)` is strictly increasing these intervals
//! tile `2, 3, 4, ...`, so every `n >= 2` has a unique smaller neighbour.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use crate::enumerations::{z2_profile, IsoProfile};
use crate::lattice::{Exponent, LatticeFunction, Scalar};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComparisonTree {
    profile: IsoProfile,
    size: u64,
    /// `parent[n]` for `n >= 2`; entries 0 and 1 are unused.
    parent: Vec<u64>,
    depth: Vec<u32>,
}

impl ComparisonTree {
    /// Builds the tree on vertices `1..=size`.
    pub fn build(profile: &IsoProfile, size: u64) -> Result<Self> {
        profile.check_monotone()?;
        if size == 0 {
            return Err(Error::TreeTooSmall { needed: 1, size });
        }
        let mut parent = vec![0u64; size as usize + 1];
        let mut depth = vec![0u32; size as usize + 1];
        let mut next = 2u64;
        let mut n = 1u64;
        while next <= size {
            let hi = n + profile.get(n as usize).ok_or(Error::ProfileTooShort {
                needed: n as usize + 1,
                have: profile.values().len(),
            })?;
            while next <= hi.min(size) {
                parent[next as usize] = n;
                depth[next as usize] = depth[n as usize] + 1;
                next += 1;
            }
            n += 1;
        }
        Ok(Self {
            profile: profile.clone(),
            size,
            parent,
            depth,
        })
    }

    /// Comparison tree of `(Z^2, l1)` on `1..=size`.
    pub fn z2(size: u64) -> Result<Self> {
        Self::build(&z2_profile(size as usize), size)
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn profile(&self) -> &IsoProfile {
        &self.profile
    }

    fn check(&self, n: u64) -> Result<()> {
        if n == 0 || n > self.size {
            return Err(Error::TreeTooSmall {
                needed: n,
                size: self.size,
            });
        }
        Ok(())
    }

    /// Unique smaller neighbour of `n >= 2`.
    pub fn parent(&self, n: u64) -> Result<Option<u64>> {
        self.check(n)?;
        Ok((n >= 2).then(|| self.parent[n as usize]))
    }

    /// Parent without bounds checks beyond indexing; 0 for the root.
    pub(crate) fn parent_of(&self, n: u64) -> u64 {
        self.parent[n as usize]
    }

    /// Distance from the root 1.
    pub fn depth(&self, n: u64) -> Result<u32> {
        self.check(n)?;
        Ok(self.depth[n as usize])
    }

    /// `((n-1) + P(n-1), n + P(n)]`, possibly reaching beyond `size`.
    pub fn children_range(&self, n: u64) -> Result<RangeInclusive<u64>> {
        if n == 0 {
            return Err(Error::ZeroLabel);
        }
        let value = |k: u64| {
            self.profile.get(k as usize).ok_or(Error::ProfileTooShort {
                needed: k as usize + 1,
                have: self.profile.values().len(),
            })
        };
        Ok((n - 1 + value(n - 1)? + 1)..=(n + value(n)?))
    }

    /// Children of `n` that exist in the tree.
    pub fn children(&self, n: u64) -> Result<Vec<u64>> {
        self.check(n)?;
        Ok(self
            .children_range(n)?
            .filter(|&c| c <= self.size)
            .collect())
    }

    /// Whether the whole children range of `n` lies inside the tree.
    pub fn is_complete(&self, n: u64) -> bool {
        self.children_range(n)
            .map(|r| *r.end() <= self.size)
            .unwrap_or(false)
    }

    pub fn are_adjacent(&self, a: u64, b: u64) -> Result<bool> {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.check(hi)?;
        Ok(lo >= 1 && hi >= 2 && self.parent[hi as usize] == lo)
    }

    /// Tree edges as `(parent, child)`.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        (2..=self.size).map(move |c| (self.parent[c as usize], c))
    }

    /// `true` iff the tree boundary of `{1..n}` is `{n+1, ..., n + P(n)}`.
    pub fn boundary_check(&self, n: u64) -> Result<bool> {
        let per = self.profile.get(n as usize).ok_or(Error::ProfileTooShort {
            needed: n as usize + 1,
            have: self.profile.values().len(),
        })?;
        self.check(n + per)?;
        let mut boundary = BTreeSet::new();
        for v in 1..=n {
            if let Some(p) = self.parent(v)? {
                if p > n {
                    boundary.insert(p);
                }
            }
            for c in self.children(v)? {
                if c > n {
                    boundary.insert(c);
                }
            }
        }
        Ok(boundary.into_iter().eq(n + 1..=n + per))
    }

    /// Sizes of the sphere and closed ball of radius `r` around the root.
    pub fn sphere_ball_sizes(&self, r: u32) -> Result<(u64, u64)> {
        // labels are in breadth-first order, so depth is nondecreasing in the label
        if self.depth[self.size as usize] <= r {
            return Err(Error::TreeTooSmall {
                needed: self.size + 1,
                size: self.size,
            });
        }
        let sphere = (1..=self.size)
            .filter(|&n| self.depth[n as usize] == r)
            .count() as u64;
        let ball = (1..=self.size)
            .filter(|&n| self.depth[n as usize] <= r)
            .count() as u64;
        Ok((sphere, ball))
    }

    /// Smallest size that contains every edge touching `{1..m}`.
    pub fn required_size(profile: &IsoProfile, m: u64) -> Result<u64> {
        let per = profile.get(m as usize).ok_or(Error::ProfileTooShort {
            needed: m as usize + 1,
            have: profile.values().len(),
        })?;
        Ok((m + per).max(1))
    }
}

/// Nonincreasing sequence of the values of `|f|`, one entry per support point.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonFunction<V = f64> {
    values: Vec<V>,
}

impl<V: Scalar> ComparisonFunction<V> {
    /// Wraps an already nonincreasing sequence of positive values.
    pub fn from_sorted(values: Vec<V>) -> Result<Self> {
        if values.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Unsupported(
                "comparison values must be nonincreasing".into(),
            ));
        }
        if values.last().is_some_and(|v| !(*v > V::zero())) {
            return Err(Error::Unsupported(
                "comparison values must be positive".into(),
            ));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `f_c(k)`, zero beyond the support.
    pub fn at(&self, k: u64) -> V {
        k.checked_sub(1)
            .and_then(|i| self.values.get(i as usize))
            .cloned()
            .unwrap_or_else(V::zero)
    }
}

/// `f_c(k) = k`-th largest value of `|f|`.
pub fn comparison_function<V: Scalar>(f: &LatticeFunction<V>) -> ComparisonFunction<V> {
    let mut values: Vec<V> = f.values().map(|v| v.abs()).collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("values are comparable"));
    ComparisonFunction { values }
}

fn tree_differences<'a, V: Scalar>(
    fc: &'a ComparisonFunction<V>,
    t: &'a ComparisonTree,
) -> Result<impl Iterator<Item = V> + 'a> {
    let m = fc.len() as u64;
    let last = ComparisonTree::required_size(t.profile(), m)?;
    if last > t.size() {
        return Err(Error::TreeTooSmall {
            needed: last,
            size: t.size(),
        });
    }
    Ok((2..=last).map(move |c| {
        let p = t.parent[c as usize];
        (fc.at(p) - fc.at(c)).abs()
    }))
}

/// `||grad f_c||_p` on the tree, `f_c` extended by zero.
pub fn grad_lp_tree<V: Scalar>(
    fc: &ComparisonFunction<V>,
    t: &ComparisonTree,
    p: Exponent,
) -> Result<f64> {
    let diffs = tree_differences(fc, t)?.map(|d| d.as_f64());
    Ok(match p {
        Exponent::Finite(p) => diffs.map(|d| d.powf(p)).sum::<f64>().powf(1.0 / p),
        Exponent::Infinity => diffs.fold(0.0, f64::max),
    })
}

/// `sum over tree edges |f_c(x) - f_c(y)|^p` for finite `p`.
pub fn grad_pow_tree<V: Scalar>(
    fc: &ComparisonFunction<V>,
    t: &ComparisonTree,
    p: f64,
) -> Result<f64> {
    Ok(tree_differences(fc, t)?.map(|d| d.as_f64().powf(p)).sum())
}

/// Exact tree gradient sum for integer `p`.
pub fn grad_pow_tree_exact<V: Scalar>(
    fc: &ComparisonFunction<V>,
    t: &ComparisonTree,
    p: u32,
) -> Result<V> {
    Ok(tree_differences(fc, t)?.fold(V::zero(), |acc, d| acc + d.pow_u32(p)))
}

/// `(||grad f_c||_p on the tree, ||grad f||_p on the lattice)`; the first
/// never exceeds the second.
pub fn comparison_lemma_check<V: Scalar>(
    f: &LatticeFunction<V>,
    t: &ComparisonTree,
    p: Exponent,
) -> Result<(f64, f64)> {
    let fc = comparison_function(f);
    Ok((grad_lp_tree(&fc, t, p)?, crate::lattice::grad_lp(f, p)))
}

/// Edge list `child,parent` for the tree.
pub fn tree_csv(t: &ComparisonTree) -> String {
    let mut out = String::from("child,parent\n");
    for (p, c) in t.edges() {
        out.push_str(&format!("{c},{p}\n"));
    }
    out
}

/// Graphviz rendering of the tree.
pub fn tree_dot(t: &ComparisonTree) -> String {
    let mut out = String::from("graph comparison_tree {\n");
    for (p, c) in t.edges() {
        out.push_str(&format!("  {p} -- {c};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LatticePoint;

    fn z2() -> ComparisonTree {
        ComparisonTree::z2(3000).unwrap()
    }

    #[test]
    fn initial_segment() {
        let t = z2();
        assert_eq!(t.children(1).unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(t.children(2).unwrap(), vec![6, 7, 8]);
        assert_eq!(t.children(3).unwrap(), vec![9, 10]);
        assert_eq!(t.parent(10).unwrap(), Some(3));
        assert_eq!(t.parent(1).unwrap(), None);
    }

    #[test]
    fn boundary_identity() {
        let t = z2();
        assert!(t.boundary_check(1).unwrap());
        assert!(t.boundary_check(2).unwrap());
        for n in 1..=1000 {
            assert!(t.boundary_check(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn spheres_and_balls() {
        let t = z2();
        assert_eq!(t.sphere_ball_sizes(0).unwrap(), (1, 1));
        assert_eq!(t.sphere_ball_sizes(1).unwrap(), (4, 5));
        assert_eq!(t.sphere_ball_sizes(2).unwrap(), (8, 13));
        assert!(t.sphere_ball_sizes(40).is_err());
    }

    #[test]
    fn structure_is_a_leafless_tree() {
        let t = z2();
        assert_eq!(t.edges().count() as u64, t.size() - 1);
        for n in 2..=t.size() {
            assert!(t.parent(n).unwrap().unwrap() < n);
        }
        for n in 1..=t.size() {
            if t.is_complete(n) {
                let kids = t.children(n).unwrap().len() as u64;
                assert!(kids >= 1);
                if n >= 2 {
                    let prof = t.profile();
                    let expected = 1 + (n + prof.get(n as usize).unwrap())
                        - (n - 1 + prof.get(n as usize - 1).unwrap());
                    assert_eq!(1 + kids, expected);
                }
            }
        }
        assert_eq!(t.children(1).unwrap().len(), 4);
    }

    #[test]
    fn rebuild_is_identical() {
        let p = z2_profile(500);
        assert_eq!(
            ComparisonTree::build(&p, 500).unwrap(),
            ComparisonTree::build(&p, 500).unwrap()
        );
    }

    #[test]
    fn non_monotone_profile_rejected() {
        let p = IsoProfile::from_boundaries(2, &[4, 6, 5, 7], false, "bad");
        assert!(matches!(
            ComparisonTree::build(&p, 10),
            Err(Error::NonMonotoneProfile(_))
        ));
    }

    #[test]
    fn comparison_function_sorts() {
        let f = LatticeFunction::from_entries(
            2,
            [
                (LatticePoint::xy(0, 0), 3.0),
                (LatticePoint::xy(5, 1), 1.0),
                (LatticePoint::xy(2, 2), 2.0),
            ],
        )
        .unwrap();
        assert_eq!(comparison_function(&f).values(), &[3.0, 2.0, 1.0]);
        assert!(comparison_function(&LatticeFunction::<f64>::zero(2)).is_empty());
        let ties = LatticeFunction::from_entries(
            2,
            [
                (LatticePoint::xy(0, 0), 2.0),
                (LatticePoint::xy(1, 0), 1.0),
                (LatticePoint::xy(2, 0), 2.0),
            ],
        )
        .unwrap();
        assert_eq!(comparison_function(&ties).values(), &[2.0, 2.0, 1.0]);
    }

    #[test]
    fn tree_gradients() {
        let t = z2();
        let one = ComparisonFunction::from_sorted(vec![1.0]).unwrap();
        assert_eq!(grad_lp_tree(&one, &t, Exponent::Finite(1.0)).unwrap(), 4.0);
        assert_eq!(grad_lp_tree(&one, &t, Exponent::Infinity).unwrap(), 1.0);
        let five = ComparisonFunction::from_sorted(vec![1.0; 5]).unwrap();
        assert_eq!(grad_lp_tree(&five, &t, Exponent::Finite(1.0)).unwrap(), 8.0);
        let small = ComparisonTree::z2(10).unwrap();
        assert!(matches!(
            grad_lp_tree(&five, &small, Exponent::Finite(1.0)),
            Err(Error::TreeTooSmall { .. })
        ));
    }

    #[test]
    fn lemma_on_simple_functions() {
        let t = z2();
        let spike = LatticeFunction::spike(LatticePoint::xy(3, 3), 1.0).unwrap();
        for p in [1.0, 2.0, 3.0] {
            let (lhs, rhs) = comparison_lemma_check(&spike, &t, Exponent::Finite(p)).unwrap();
            assert!((lhs - 4f64.powf(1.0 / p)).abs() < 1e-12 && (rhs - lhs).abs() < 1e-12);
        }
        let ball: Vec<_> = [(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]
            .into_iter()
            .map(|(x, y)| LatticePoint::xy(x, y))
            .collect();
        let ind = LatticeFunction::<f64>::indicator(2, ball).unwrap();
        assert_eq!(
            comparison_lemma_check(&ind, &t, Exponent::Finite(1.0)).unwrap(),
            (8.0, 12.0)
        );
    }
}
