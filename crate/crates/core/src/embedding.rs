//! Lattice edges mapped into the comparison tree.
//!
//! For the spiral labelling an edge `(i, j)`, `i < j`, goes to the tree path
//! from `i` down to the smallest descendant `k >= j` of `i`. For the
//! Wang-Wang labelling it goes to the single tree edge `(i, j)` when that
//! exists and to `(parent(j), j)` otherwise.

use rayon::prelude::*;
use serde::Serialize;

use crate::comparison::{comparison_function, grad_pow_tree, ComparisonTree};
use crate::enumerations::{spiral_index, spiral_label, Enumeration, KindName};
use crate::lattice::{grad_pow_sum, LatticeFunction};
use crate::rearrangement::rearrange;
use crate::{Error, Result};

/// Increasing tree path `x_0 < x_1 < ... < x_n`, each vertex the parent of the next.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreePath {
    vertices: Vec<u64>,
}

impl TreePath {
    /// Checks adjacency of consecutive vertices against `t`.
    pub fn new(vertices: Vec<u64>, t: &ComparisonTree) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::Audit("a tree path needs two vertices".into()));
        }
        for w in vertices.windows(2) {
            if t.parent(w[1])? != Some(w[0]) {
                return Err(Error::NotAnEdge(w[0], w[1]));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[u64] {
        &self.vertices
    }

    pub fn start(&self) -> u64 {
        self.vertices[0]
    }

    /// The endpoint `k`.
    pub fn end(&self) -> u64 {
        *self.vertices.last().unwrap()
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Tree edges as `(parent, child)`.
    pub fn edges(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.vertices.windows(2).map(|w| (w[0], w[1]))
    }
}

/// Tree size that comfortably holds every image of edges up to `label_max`.
pub fn tree_size_for(label_max: u64) -> u64 {
    label_max + 16 * ((label_max as f64).sqrt() as u64 + 2) + 64
}

/// Smallest descendant `k` of `i` (including `i`) with `k >= j`.
///
/// The generations below `i` are contiguous label intervals, so this walks
/// interval by interval.
pub fn smallest_descendant_at_least(t: &ComparisonTree, i: u64, j: u64) -> Result<u64> {
    t.depth(i)?;
    let (mut lo, mut hi) = (i, i);
    while hi < j {
        let a = *t.children_range(lo)?.start();
        let b = *t.children_range(hi)?.end();
        lo = a;
        hi = b;
    }
    let k = lo.max(j);
    if k > t.size() {
        return Err(Error::TreeTooSmall {
            needed: k,
            size: t.size(),
        });
    }
    Ok(k)
}

fn climb(t: &ComparisonTree, from: u64, k: u64) -> Vec<u64> {
    let mut path = vec![k];
    let mut v = k;
    while v != from {
        v = t.parent_of(v);
        path.push(v);
    }
    path.reverse();
    path
}

/// Image of the spiral edge `(i, j)`.
pub fn psi_spiral(i: u64, j: u64, t: &ComparisonTree) -> Result<TreePath> {
    if i == 0 || j == 0 {
        return Err(Error::ZeroLabel);
    }
    if i >= j || !spiral_label(i)?.is_adjacent(&spiral_label(j)?) {
        return Err(Error::NotAnEdge(i, j));
    }
    let k = smallest_descendant_at_least(t, i, j)?;
    Ok(TreePath {
        vertices: climb(t, i, k),
    })
}

/// Image of the Wang-Wang edge `(i, j)` as a tree edge `(a, j)`.
pub fn psi_wang(i: u64, j: u64, t: &ComparisonTree, e: &Enumeration) -> Result<(u64, u64)> {
    if i == 0 || j == 0 {
        return Err(Error::ZeroLabel);
    }
    let (Some(a), Some(b)) = (e.point(i), e.point(j)) else {
        return Err(Error::EnumerationTooShort {
            needed: i.max(j),
            have: e.len(),
        });
    };
    if i >= j || !a.is_adjacent(b) {
        return Err(Error::NotAnEdge(i, j));
    }
    let parent = t.parent(j)?.expect("j >= 2");
    if parent == i {
        Ok((i, j))
    } else if parent < i {
        Ok((parent, j))
    } else {
        Err(Error::Audit(format!(
            "edge ({i},{j}) has tree parent {parent} above {i}"
        )))
    }
}

/// Lattice edges `(i, j)`, `i < j <= label_max`, under `e`.
pub fn lower_edges(e: &Enumeration, label_max: u64) -> Result<Vec<(u64, u64)>> {
    let prefix = e.prefix(label_max)?;
    let mut edges = Vec::new();
    for (idx, p) in prefix.iter().enumerate() {
        let j = idx as u64 + 1;
        for q in p.neighbors() {
            if let Some(i) = e.label_of(&q).filter(|&i| i < j) {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

fn spiral_lower_edges(label_max: u64) -> Result<Vec<(u64, u64)>> {
    let mut edges = Vec::new();
    for j in 2..=label_max {
        for q in spiral_label(j)?.neighbors() {
            let i = spiral_index(&q)?;
            if i < j {
                edges.push((i, j));
            }
        }
    }
    Ok(edges)
}

fn check_size(t: &ComparisonTree, label_max: u64) -> Result<()> {
    let needed = tree_size_for(label_max);
    if t.size() < needed {
        return Err(Error::TreeTooSmall {
            needed,
            size: t.size(),
        });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PathLengthReport {
    pub label_max: u64,
    pub edges: usize,
    pub max_len: usize,
    pub argmax: (u64, u64),
}

/// Longest spiral image among edges with larger label `<= label_max`.
pub fn path_length_audit(t: &ComparisonTree, label_max: u64) -> Result<PathLengthReport> {
    check_size(t, label_max)?;
    let edges = spiral_lower_edges(label_max)?;
    let lens = edges
        .par_iter()
        .map(|&(i, j)| psi_spiral(i, j, t).map(|p| (p.len(), (i, j))))
        .collect::<Result<Vec<_>>>()?;
    let (max_len, argmax) =
        lens.into_iter().fold(
            (0, (0, 0)),
            |best, cur| if cur.0 > best.0 { cur } else { best },
        );
    Ok(PathLengthReport {
        label_max,
        edges: edges.len(),
        max_len,
        argmax,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MultiplicityReport {
    pub kind: String,
    pub label_max: u64,
    pub edges: usize,
    pub max_mult: u64,
    /// Tree edge `(parent, child)` attaining the maximum.
    pub argmax: (u64, u64),
}

/// Largest number of lattice edges whose image uses one tree edge.
pub fn multiplicity_audit(
    kind: KindName,
    t: &ComparisonTree,
    label_max: u64,
) -> Result<MultiplicityReport> {
    check_size(t, label_max)?;
    let size = t.size() as usize + 1;
    let (edges, counts) = match kind {
        KindName::Spiral => {
            let edges = spiral_lower_edges(label_max)?;
            let counts = edges
                .par_chunks(4096)
                .map(|chunk| {
                    let mut c = vec![0u64; size];
                    for &(i, j) in chunk {
                        for (_, child) in psi_spiral(i, j, t)?.edges() {
                            c[child as usize] += 1;
                        }
                    }
                    Ok::<_, Error>(c)
                })
                .try_reduce(
                    || vec![0u64; size],
                    |mut a, b| {
                        a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                        Ok(a)
                    },
                )?;
            (edges, counts)
        }
        KindName::Wang => {
            let e = Enumeration::wang_wang(label_max);
            let edges = lower_edges(&e, label_max)?;
            let mut counts = vec![0u64; size];
            for &(i, j) in &edges {
                let (_, child) = psi_wang(i, j, t, &e)?;
                counts[child as usize] += 1;
            }
            (edges, counts)
        }
        KindName::L1rand => {
            return Err(Error::Unsupported(
                "edge images exist for spiral and wang only".into(),
            ))
        }
    };
    let (child, max_mult) =
        counts.iter().enumerate().fold(
            (0, 0),
            |best, (c, &m)| if m > best.1 { (c as u64, m) } else { best },
        );
    let argmax = if child >= 2 {
        (t.parent_of(child), child)
    } else {
        (0, 0)
    };
    Ok(MultiplicityReport {
        kind: kind.to_string(),
        label_max,
        edges: edges.len(),
        max_mult,
        argmax,
    })
}

/// `(||grad f*||_p^p, 4^{p+1} ||grad f_c||_p^p)` for the spiral rearrangement.
pub fn path_chain_bound_check(
    f: &LatticeFunction,
    p: f64,
    t: &ComparisonTree,
) -> Result<(f64, f64)> {
    if !(p.is_finite() && p >= 1.0) {
        return Err(Error::InvalidExponent(p.to_string()));
    }
    let mut e = Enumeration::spiral(f.len() as u64);
    let fstar = rearrange(f, &mut e)?;
    let fc = comparison_function(f);
    Ok((
        grad_pow_sum(&fstar, p),
        4f64.powf(p + 1.0) * grad_pow_tree(&fc, t, p)?,
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescendantReport {
    pub m_max: u64,
    /// Smallest `(vertices at depths r+1..r+3) / sqrt(m)` with `r = depth(m)`.
    pub min_ratio: f64,
    pub argmin: u64,
}

/// The three generations below vertex `m` hold more than `7 sqrt(m)` vertices.
pub fn descendant_count_check(t: &ComparisonTree, m_max: u64) -> Result<DescendantReport> {
    let deepest = t.depth(m_max)? + 3;
    let mut per_depth = vec![0u64; deepest as usize + 1];
    let mut n = 1;
    while n <= t.size() {
        let d = t.depth(n)?;
        if d > deepest {
            break;
        }
        per_depth[d as usize] += 1;
        n += 1;
    }
    if t.depth(t.size())? <= deepest {
        return Err(Error::TreeTooSmall {
            needed: t.size() + 1,
            size: t.size(),
        });
    }
    let mut best = (f64::INFINITY, 0);
    for m in 1..=m_max {
        let r = t.depth(m)? as usize;
        let count: u64 = per_depth[r + 1..=r + 3].iter().sum();
        let ratio = count as f64 / (m as f64).sqrt();
        if ratio < best.0 {
            best = (ratio, m);
        }
    }
    Ok(DescendantReport {
        m_max,
        min_ratio: best.0,
        argmin: best.1,
    })
}

/// Counts of lower neighbours for Wang-Wang points on spheres `1..=r_max`:
/// returns `(corner counts ok, non-corner counts ok)`.
pub fn wang_lower_neighbour_check(r_max: u64) -> Result<(bool, bool)> {
    let mut e = Enumeration::wang_wang(0);
    e.cover_l1_ball(r_max)?;
    let (mut corners, mut others) = (true, true);
    for (idx, p) in e.points().iter().enumerate().skip(1) {
        let j = idx as u64 + 1;
        let r = p.l1_norm();
        let lower: Vec<_> = p
            .neighbors()
            .into_iter()
            .filter(|q| q.l1_norm() + 1 == r)
            .collect();
        if lower.iter().any(|q| e.label_of(q).is_none_or(|i| i >= j)) {
            return Err(Error::Audit(format!(
                "point {p} precedes a lower neighbour"
            )));
        }
        let corner = p.coords().iter().filter(|&&c| c != 0).count() == 1;
        if corner {
            corners &= lower.len() == 1;
        } else {
            others &= lower.len() == 2;
        }
    }
    Ok((corners, others))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Exponent, LatticePoint};

    fn tree(n: u64) -> ComparisonTree {
        ComparisonTree::z2(n).unwrap()
    }

    fn slow_descendant(t: &ComparisonTree, i: u64, j: u64) -> u64 {
        let mut frontier = vec![i];
        let mut found = Vec::new();
        while !frontier.is_empty() {
            found.extend(frontier.iter().copied().filter(|&v| v >= j));
            if !found.is_empty() {
                break;
            }
            frontier = frontier
                .iter()
                .flat_map(|&v| t.children(v).unwrap())
                .collect();
        }
        found.into_iter().min().unwrap()
    }

    #[test]
    fn spiral_examples() {
        let t = tree(200);
        assert_eq!(psi_spiral(1, 2, &t).unwrap().vertices(), &[1, 2]);
        assert_eq!(psi_spiral(1, 8, &t).unwrap().vertices(), &[1, 2, 8]);
        assert!(matches!(psi_spiral(1, 7, &t), Err(Error::NotAnEdge(1, 7))));
    }

    #[test]
    fn descendant_matches_subtree_scan() {
        let t = tree(3000);
        for (i, j) in spiral_lower_edges(1500).unwrap() {
            assert_eq!(
                smallest_descendant_at_least(&t, i, j).unwrap(),
                slow_descendant(&t, i, j),
                "({i},{j})"
            );
        }
    }

    #[test]
    fn wang_examples() {
        let t = tree(100);
        let e = Enumeration::wang_wang(100);
        assert_eq!(psi_wang(2, 6, &t, &e).unwrap(), (2, 6));
        assert_eq!(psi_wang(3, 6, &t, &e).unwrap(), (2, 6));
        assert_eq!(psi_wang(1, 4, &t, &e).unwrap(), (1, 4));
    }

    #[test]
    fn audits_small() {
        let t = tree(tree_size_for(2000));
        let len = path_length_audit(&t, 2000).unwrap();
        assert!(len.max_len <= 4 && len.max_len >= 2);
        assert!(
            multiplicity_audit(KindName::Spiral, &t, 2000)
                .unwrap()
                .max_mult
                <= 16
        );
        assert!(
            multiplicity_audit(KindName::Wang, &t, 2000)
                .unwrap()
                .max_mult
                <= 2
        );
        assert!(matches!(
            path_length_audit(&tree(2000), 2000),
            Err(Error::TreeTooSmall { .. })
        ));
    }

    #[test]
    fn descendant_counts_exceed_seven_root_m() {
        let t = tree(20000);
        assert!(descendant_count_check(&t, 10000).unwrap().min_ratio > 7.0);
    }

    #[test]
    fn wang_lower_neighbours() {
        assert_eq!(wang_lower_neighbour_check(30).unwrap(), (true, true));
    }

    #[test]
    fn chain_bound() {
        let t = tree(100);
        let spike = LatticeFunction::spike(LatticePoint::xy(2, 2), 1.0).unwrap();
        let (lhs, rhs) = path_chain_bound_check(&spike, 2.0, &t).unwrap();
        assert_eq!((lhs, rhs), (4.0, 256.0));
        assert!(path_chain_bound_check(&spike, f64::INFINITY, &t).is_err());
        let _ = Exponent::Infinity;
    }
}
