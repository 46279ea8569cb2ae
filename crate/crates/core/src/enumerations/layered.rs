//! l1-layered generators: the nested breadth-first greedy construction
//! (Wang-Wang on `Z^2`) and seeded random orders within l1 spheres.

use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::lattice::LatticePoint;

/// Fixed total order used to break greedy ties: larger last coordinate
/// first, then larger second-to-last, and so on. On `Z^2` this is "higher
/// `y` first, then larger `x`".
pub fn tie_break(a: &LatticePoint, b: &LatticePoint) -> Ordering {
    b.coords().iter().rev().cmp(a.coords().iter().rev())
}

/// Breadth-first greedy labelling.
///
/// Vertices are labelled in the order in which they are discovered: when
/// `v_n` is labelled, its not-yet-discovered neighbours form a group that
/// receives the next free block of labels. Hence the vertex boundary of
/// every prefix `{v_1..v_n}` is exactly the block `v_{n+1}, ..., v_{n+b}`.
/// Inside a group the order is greedy: the member discovering the fewest
/// new vertices (the smallest resulting prefix perimeter) goes first, ties
/// broken by [`tie_break`].
#[derive(Clone, Debug)]
pub(crate) struct NestedGreedy {
    groups: VecDeque<Vec<LatticePoint>>,
    discovered: HashSet<LatticePoint>,
}

impl NestedGreedy {
    pub fn new(dim: usize) -> Self {
        let origin = LatticePoint::origin(dim);
        let mut discovered = HashSet::new();
        discovered.insert(origin.clone());
        Self {
            groups: VecDeque::from([vec![origin]]),
            discovered,
        }
    }

    fn fresh_neighbors(&self, p: &LatticePoint) -> usize {
        p.neighbors()
            .iter()
            .filter(|q| !self.discovered.contains(*q))
            .count()
    }

    pub fn next_point(&mut self) -> LatticePoint {
        while self.groups.front().is_some_and(Vec::is_empty) {
            self.groups.pop_front();
        }
        let group = self.groups.front().expect("the lattice is infinite");
        let best = (0..group.len())
            .min_by(|&i, &j| {
                self.fresh_neighbors(&group[i])
                    .cmp(&self.fresh_neighbors(&group[j]))
                    .then_with(|| tie_break(&group[i], &group[j]))
            })
            .expect("nonempty group");
        let p = self.groups.front_mut().unwrap().swap_remove(best);
        let fresh: Vec<LatticePoint> = p
            .neighbors()
            .into_iter()
            .filter(|q| !self.discovered.contains(q))
            .collect();
        self.discovered.extend(fresh.iter().cloned());
        self.groups.push_back(fresh);
        p
    }
}

/// All points of `Z^d` with l1 norm exactly `r`, in lexicographic order.
pub fn l1_sphere(dim: usize, r: u64) -> Vec<LatticePoint> {
    fn rec(dim: usize, r: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if dim == 1 {
            for c in if r == 0 { vec![0] } else { vec![-r, r] } {
                prefix.push(c);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        for c in -r..=r {
            prefix.push(c);
            rec(dim - 1, r - c.abs(), prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(dim, r as i64, &mut Vec::with_capacity(dim), &mut out);
    out.into_iter().map(LatticePoint::new).collect()
}

/// Size of the closed l1 ball of radius `r` in `Z^d`.
pub fn l1_ball_size(dim: usize, r: u64) -> u64 {
    (0..=r).map(|k| l1_sphere_size(dim, k)).sum()
}

/// `|{x in Z^d : |x|_1 = r}| = sum_k 2^k C(d,k) C(r-1,k-1)`.
pub fn l1_sphere_size(dim: usize, r: u64) -> u64 {
    if r == 0 {
        return 1;
    }
    let binom = |n: u64, k: u64| -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    };
    (1..=dim as u64)
        .map(|k| (1u64 << k) * binom(dim as u64, k) * binom(r - 1, k - 1))
        .sum()
}

/// Sphere-by-sphere order with a seeded uniform shuffle inside each sphere.
#[derive(Clone, Debug)]
pub(crate) struct ShuffledSpheres {
    dim: usize,
    rng: ChaCha8Rng,
    radius: u64,
    pending: VecDeque<LatticePoint>,
}

impl ShuffledSpheres {
    pub fn new(dim: usize, seed: u64) -> Self {
        Self {
            dim,
            rng: ChaCha8Rng::seed_from_u64(seed),
            radius: 0,
            pending: VecDeque::new(),
        }
    }

    pub fn next_point(&mut self) -> LatticePoint {
        if self.pending.is_empty() {
            let mut sphere = l1_sphere(self.dim, self.radius);
            sphere.shuffle(&mut self.rng);
            self.pending.extend(sphere);
            self.radius += 1;
        }
        self.pending.pop_front().expect("spheres are nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_sizes_match_formula() {
        for d in 1..=4 {
            for r in 0..8 {
                assert_eq!(
                    l1_sphere(d, r).len() as u64,
                    l1_sphere_size(d, r),
                    "d={d} r={r}"
                );
            }
        }
        assert_eq!(l1_sphere_size(2, 5), 20);
        assert_eq!(l1_sphere_size(3, 2), 18);
        assert_eq!(l1_ball_size(2, 3), 25);
    }

    #[test]
    fn tie_break_prefers_high_y_then_high_x() {
        let mut v = vec![
            LatticePoint::xy(0, -1),
            LatticePoint::xy(-1, 0),
            LatticePoint::xy(1, 0),
            LatticePoint::xy(0, 1),
        ];
        v.sort_by(tie_break);
        assert_eq!(
            v,
            vec![
                LatticePoint::xy(0, 1),
                LatticePoint::xy(1, 0),
                LatticePoint::xy(-1, 0),
                LatticePoint::xy(0, -1)
            ]
        );
    }
}
