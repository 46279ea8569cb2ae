use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// A point of `Z^d` with exact integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(SmallVec<[i64; 4]>);

impl LatticePoint {
    pub fn new(coords: impl IntoIterator<Item = i64>) -> Self {
        let coords: SmallVec<[i64; 4]> = coords.into_iter().collect();
        assert!(
            !coords.is_empty(),
            "lattice points need at least one coordinate"
        );
        Self(coords)
    }

    pub fn xy(x: i64, y: i64) -> Self {
        Self(SmallVec::from_slice(&[x, y]))
    }

    pub fn origin(dim: usize) -> Self {
        Self::new(std::iter::repeat_n(0, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn x(&self) -> i64 {
        self.0[0]
    }

    pub fn y(&self) -> i64 {
        self.0[1]
    }

    pub fn l1_norm(&self) -> u64 {
        self.0.iter().map(|c| c.unsigned_abs()).sum()
    }

    pub fn l1_distance(&self, other: &Self) -> u64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.abs_diff(*b))
            .sum()
    }

    pub fn is_adjacent(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.l1_distance(other) == 1
    }

    /// The `2d` lattice neighbours: coordinate index ascending, minus before plus.
    pub fn neighbors(&self) -> Vec<LatticePoint> {
        let mut out = Vec::with_capacity(2 * self.dim());
        for axis in 0..self.dim() {
            for step in [-1, 1] {
                let mut q = self.clone();
                q.0[axis] += step;
                out.push(q);
            }
        }
        out
    }

    pub fn translate(&self, offset: &[i64]) -> Self {
        Self(self.0.iter().zip(offset).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Free function form of [`LatticePoint::neighbors`].
pub fn neighbors(p: &LatticePoint) -> Vec<LatticePoint> {
    p.neighbors()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn origin_neighbors_in_order() {
        let n = neighbors(&LatticePoint::xy(0, 0));
        assert_eq!(
            n,
            vec![
                LatticePoint::xy(-1, 0),
                LatticePoint::xy(1, 0),
                LatticePoint::xy(0, -1),
                LatticePoint::xy(0, 1)
            ]
        );
    }

    #[test]
    fn shifted_neighbors_are_adjacent() {
        let p = LatticePoint::xy(2, -1);
        let n = p.neighbors();
        assert_eq!(n.iter().collect::<BTreeSet<_>>().len(), 4);
        assert!(n.iter().all(|q| q.l1_distance(&p) == 1));
    }

    #[test]
    fn three_dimensional_neighbors() {
        assert_eq!(LatticePoint::origin(3).neighbors().len(), 6);
    }

    #[test]
    fn display() {
        assert_eq!(LatticePoint::new([1, -2, 3]).to_string(), "(1,-2,3)");
    }
}
