//! Vertex boundaries, edge sets and `L^p` norms on `(Z^d, l1)`.

use std::collections::BTreeSet;

use super::{Exponent, LatticeFunction, LatticePoint, Scalar};
use crate::{Error, Result};

/// Vertices outside `set` adjacent to some vertex of `set`.
pub fn vertex_boundary<'a>(
    set: impl IntoIterator<Item = &'a LatticePoint>,
) -> BTreeSet<LatticePoint> {
    let set: BTreeSet<&LatticePoint> = set.into_iter().collect();
    let mut out = BTreeSet::new();
    for p in &set {
        for q in p.neighbors() {
            if !set.contains(&q) {
                out.insert(q);
            }
        }
    }
    out
}

/// Unordered lattice edges, each stored once as `(smaller, larger)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeList {
    edges: Vec<(LatticePoint, LatticePoint)>,
}

impl EdgeList {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(LatticePoint, LatticePoint)> {
        self.edges.iter()
    }
}

/// All edges with at least one endpoint in the support of `f`.
pub fn support_edges<V: Scalar>(f: &LatticeFunction<V>) -> EdgeList {
    let mut edges = BTreeSet::new();
    for p in f.support() {
        for q in p.neighbors() {
            let e = if *p < q {
                (p.clone(), q)
            } else {
                (q, p.clone())
            };
            edges.insert(e);
        }
    }
    EdgeList {
        edges: edges.into_iter().collect(),
    }
}

fn edge_differences<V: Scalar>(f: &LatticeFunction<V>) -> impl Iterator<Item = V> + '_ {
    let edges = support_edges(f);
    edges
        .edges
        .into_iter()
        .map(move |(a, b)| (f.value(&a) - f.value(&b)).abs())
}

/// `sum_{x~y} |f(x) - f(y)|^p` for finite `p`.
pub fn grad_pow_sum<V: Scalar>(f: &LatticeFunction<V>, p: f64) -> f64 {
    edge_differences(f).map(|d| d.as_f64().powf(p)).sum()
}

/// `||grad f||_p`; the maximal edge difference for `p = inf`.
pub fn grad_lp<V: Scalar>(f: &LatticeFunction<V>, p: Exponent) -> f64 {
    match p {
        Exponent::Finite(p) => grad_pow_sum(f, p).powf(1.0 / p),
        Exponent::Infinity => edge_differences(f).map(|d| d.as_f64()).fold(0.0, f64::max),
    }
}

/// Exact `sum_{x~y} |f(x) - f(y)|^p` for integer `p`.
pub fn grad_pow_exact<V: Scalar>(f: &LatticeFunction<V>, p: u32) -> V {
    edge_differences(f).fold(V::zero(), |acc, d| acc + d.pow_u32(p))
}

/// Vertex-sum norm `||f||_p`.
pub fn lp_norm<V: Scalar>(f: &LatticeFunction<V>, p: Exponent) -> f64 {
    match p {
        Exponent::Finite(p) => f
            .values()
            .map(|v| v.as_f64().abs().powf(p))
            .sum::<f64>()
            .powf(1.0 / p),
        Exponent::Infinity => f.values().map(|v| v.as_f64().abs()).fold(0.0, f64::max),
    }
}

/// Exact `sum_v |f(v)|^p` for integer `p`.
pub fn lp_pow_exact<V: Scalar>(f: &LatticeFunction<V>, p: u32) -> V {
    f.values()
        .fold(V::zero(), |acc, v| acc + v.abs().pow_u32(p))
}

/// Both sides of the modified coarea formula in floating point.
///
/// The left side is `||grad f||_p^p`. The right side integrates, level by
/// level, `p * sum_{cut edges} |grad min(f, s)|^{p-1}` over `s`: between two
/// consecutive levels the super-level set is constant, so each cut edge
/// `(v, w)` with `f(w) < s <= f(v)` contributes the closed form
/// `(s_hi - f(w))^p - (s_lo - f(w))^p`.
pub fn coarea_check(f: &LatticeFunction<f64>, p: Exponent) -> Result<(f64, f64)> {
    let p = p.finite().ok_or(Error::InfiniteExponent)?;
    let lhs = grad_pow_sum(f, p);
    let rhs = coarea_rhs(f, |base: &f64, lo: &f64, hi: &f64| {
        (hi - base).powf(p) - (lo - base).powf(p)
    });
    Ok((lhs, rhs))
}

/// Exact coarea check for integer `p`; both sides must agree exactly.
pub fn coarea_check_exact<V: Scalar>(f: &LatticeFunction<V>, p: u32) -> Result<(V, V)> {
    if p == 0 {
        return Err(Error::InvalidExponent(p.to_string()));
    }
    let lhs = grad_pow_exact(f, p);
    let pv = V::from_u32(p).expect("small integer");
    // antiderivative of (s - base)^{p-1} is (s - base)^p / p; the outer factor p
    // multiplies each interval integral.
    let rhs = coarea_rhs(f, |base: &V, lo: &V, hi: &V| {
        let integral = ((hi.clone() - base.clone()).pow_u32(p)
            - (lo.clone() - base.clone()).pow_u32(p))
            / pv.clone();
        pv.clone() * integral
    });
    Ok((lhs, rhs))
}

fn coarea_rhs<V: Scalar>(f: &LatticeFunction<V>, piece: impl Fn(&V, &V, &V) -> V) -> V {
    let mut levels: Vec<V> = f.values().cloned().collect();
    levels.push(V::zero());
    levels.sort_by(|a, b| a.partial_cmp(b).expect("values are comparable"));
    levels.dedup();

    let mut total = V::zero();
    for (a, b) in support_edges(f).iter() {
        let (fa, fb) = (f.value(a), f.value(b));
        let (low, high) = if fa <= fb { (fa, fb) } else { (fb, fa) };
        if low == high {
            continue;
        }
        // intervals (s_k, s_{k+1}] with low <= s_k and s_{k+1} <= high
        let start = levels
            .iter()
            .position(|s| *s == low)
            .expect("low is a level");
        for k in start.. {
            let hi = &levels[k + 1];
            if *hi > high {
                break;
            }
            total = total + piece(&low, &levels[k], hi);
            if *hi == high {
                break;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn pt(x: i64, y: i64) -> LatticePoint {
        LatticePoint::xy(x, y)
    }

    fn spike() -> LatticeFunction<f64> {
        LatticeFunction::spike(pt(0, 0), 1.0).unwrap()
    }

    #[test]
    fn boundaries() {
        assert_eq!(vertex_boundary(&[pt(0, 0)]).len(), 4);
        assert_eq!(vertex_boundary(&[pt(0, 0), pt(1, 0)]).len(), 6);
        for k in 0..6i64 {
            let ball: Vec<_> = (-k..=k)
                .flat_map(|x| (-k..=k).map(move |y| pt(x, y)))
                .filter(|p| p.l1_norm() as i64 <= k)
                .collect();
            assert_eq!(vertex_boundary(&ball).len() as i64, 4 * k + 4);
        }
    }

    #[test]
    fn edge_counts() {
        assert_eq!(support_edges(&spike()).len(), 4);
        assert!(support_edges(&LatticeFunction::<f64>::zero(2)).is_empty());
        let two = LatticeFunction::from_entries(2, [(pt(0, 0), 1.0), (pt(1, 0), 1.0)]).unwrap();
        assert_eq!(support_edges(&two).len(), 7);
    }

    #[test]
    fn spike_gradients() {
        let f = spike();
        assert_eq!(grad_lp(&f, Exponent::Finite(1.0)), 4.0);
        assert_eq!(grad_lp(&f, Exponent::Infinity), 1.0);
        assert!((grad_lp(&f, Exponent::Finite(2.0)) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn vertex_norms() {
        let f = LatticeFunction::from_entries(2, [(pt(0, 0), 3.0), (pt(4, 4), 4.0)]).unwrap();
        assert_eq!(lp_norm(&f, Exponent::Finite(1.0)), 7.0);
        assert_eq!(lp_norm(&f, Exponent::Infinity), 4.0);
        let g = LatticeFunction::indicator(2, [pt(0, 0), pt(1, 0), pt(5, 0)]).unwrap();
        assert!((lp_norm::<f64>(&g, Exponent::Finite(3.0)) - 3f64.powf(1.0 / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn coarea_spike() {
        assert_eq!(
            coarea_check(&spike(), Exponent::Finite(2.0)).unwrap(),
            (4.0, 4.0)
        );
        assert_eq!(
            coarea_check(&spike(), Exponent::Finite(1.0)).unwrap(),
            (4.0, 4.0)
        );
        assert!(coarea_check(&spike(), Exponent::Infinity).is_err());
    }

    #[test]
    fn coarea_exact_five_points() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let f = LatticeFunction::from_entries(
            2,
            [
                (pt(0, 0), q(3, 2)),
                (pt(1, 0), q(1, 3)),
                (pt(1, 1), q(7, 5)),
                (pt(-2, 0), q(1, 3)),
                (pt(0, 1), q(2, 1)),
            ],
        )
        .unwrap();
        for p in 1..=4 {
            let (lhs, rhs) = coarea_check_exact(&f, p).unwrap();
            assert_eq!(lhs, rhs, "p = {p}");
        }
    }

    #[test]
    fn coarea_fractional_p_float() {
        let f =
            LatticeFunction::from_entries(2, [(pt(0, 0), 0.7), (pt(1, 0), 0.2), (pt(0, 1), 1.0)])
                .unwrap();
        let (lhs, rhs) = coarea_check(&f, Exponent::Finite(1.5)).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12 * lhs);
    }
}
