use std::collections::BTreeMap;

use super::{LatticePoint, Scalar};
use crate::{Error, Result};

/// A finitely supported nonnegative function on `Z^d`.
///
/// Only strictly positive values are stored, so the key set is the support.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeFunction<V = f64> {
    dim: usize,
    entries: BTreeMap<LatticePoint, V>,
}

impl<V: Scalar> LatticeFunction<V> {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a function, rejecting duplicate points, wrong dimensions and
    /// nonpositive values.
    pub fn from_entries(
        dim: usize,
        entries: impl IntoIterator<Item = (LatticePoint, V)>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension { min: 1, got: 0 });
        }
        let mut map = BTreeMap::new();
        for (p, v) in entries {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.dim(),
                });
            }
            if !(v > V::zero()) {
                return Err(Error::NonPositiveValue {
                    point: p.to_string(),
                    value: v.to_string(),
                });
            }
            if map.contains_key(&p) {
                return Err(Error::DuplicateVertex(p.to_string()));
            }
            map.insert(p, v);
        }
        Ok(Self { dim, entries: map })
    }

    /// Like [`from_entries`](Self::from_entries) but silently drops zero values.
    pub fn from_nonnegative(
        dim: usize,
        entries: impl IntoIterator<Item = (LatticePoint, V)>,
    ) -> Result<Self> {
        Self::from_entries(dim, entries.into_iter().filter(|(_, v)| !v.is_zero()))
    }

    pub fn spike(point: LatticePoint, value: V) -> Result<Self> {
        let dim = point.dim();
        Self::from_entries(dim, [(point, value)])
    }

    /// Indicator function of a set of points.
    pub fn indicator(dim: usize, points: impl IntoIterator<Item = LatticePoint>) -> Result<Self> {
        Self::from_entries(dim, points.into_iter().map(|p| (p, V::one())))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: &LatticePoint) -> Option<&V> {
        self.entries.get(p)
    }

    /// Value at `p`, zero off the support.
    pub fn value(&self, p: &LatticePoint) -> V {
        self.entries.get(p).cloned().unwrap_or_else(V::zero)
    }

    pub fn contains(&self, p: &LatticePoint) -> bool {
        self.entries.contains_key(p)
    }

    pub fn support(&self) -> impl Iterator<Item = &LatticePoint> {
        self.entries.keys()
    }

    pub fn values(&self) -> impl Iterator<Item = &V> {
        self.entries.values()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LatticePoint, &V)> {
        self.entries.iter()
    }

    pub fn max_value(&self) -> Option<&V> {
        self.entries.values().fold(None, |acc, v| match acc {
            Some(a) if a >= v => Some(a),
            _ => Some(v),
        })
    }

    /// Applies a point map; the map must be injective on the support.
    pub fn map_points(&self, mut f: impl FnMut(&LatticePoint) -> LatticePoint) -> Result<Self> {
        let dim = self.dim;
        Self::from_entries(dim, self.entries.iter().map(|(p, v)| (f(p), v.clone())))
    }

    pub fn translate(&self, offset: &[i64]) -> Self {
        self.map_points(|p| p.translate(offset))
            .expect("translation is injective")
    }

    pub fn scale(&self, factor: &V) -> Result<Self> {
        Self::from_entries(
            self.dim,
            self.entries
                .iter()
                .map(|(p, v)| (p.clone(), v.clone() * factor.clone())),
        )
    }

    pub fn to_f64(&self) -> LatticeFunction<f64> {
        LatticeFunction {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .map(|(p, v)| (p.clone(), v.as_f64()))
                .collect(),
        }
    }

    /// `|{v : f(v) >= s}|`.
    pub fn level_set_size(&self, s: &V) -> usize {
        self.entries.values().filter(|v| *v >= s).count()
    }
}
