use std::collections::HashMap;

use crate::lattice::{Exponent, LatticePoint};

/// Edge structure of a finite support: internal edges between support
/// points and, per point, the number of neighbours outside the support.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportGeometry {
    points: Vec<LatticePoint>,
    internal: Vec<(usize, usize)>,
    outer: Vec<u32>,
}

impl SupportGeometry {
    pub fn new(points: &[LatticePoint]) -> Self {
        let index: HashMap<&LatticePoint, usize> =
            points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut internal = Vec::new();
        let mut outer = vec![0u32; points.len()];
        for (a, p) in points.iter().enumerate() {
            for q in p.neighbors() {
                match index.get(&q) {
                    Some(&b) if a < b => internal.push((a, b)),
                    Some(_) => {}
                    None => outer[a] += 1,
                }
            }
        }
        Self {
            points: points.to_vec(),
            internal,
            outer,
        }
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn internal(&self) -> &[(usize, usize)] {
        &self.internal
    }

    pub fn outer(&self) -> &[u32] {
        &self.outer
    }

    /// `||grad f||_p^p` for finite `p`, `||grad f||_inf` otherwise, where
    /// `f` takes `values[i]` at `points[i]`.
    pub fn grad(&self, values: &[f64], p: Exponent) -> f64 {
        match p {
            Exponent::Finite(2.0) => {
                let inner: f64 = self
                    .internal
                    .iter()
                    .map(|&(a, b)| (values[a] - values[b]).powi(2))
                    .sum();
                inner
                    + self
                        .outer
                        .iter()
                        .zip(values)
                        .map(|(&c, v)| c as f64 * v * v)
                        .sum::<f64>()
            }
            Exponent::Finite(p) => {
                let inner: f64 = self
                    .internal
                    .iter()
                    .map(|&(a, b)| (values[a] - values[b]).abs().powf(p))
                    .sum();
                inner
                    + self
                        .outer
                        .iter()
                        .zip(values)
                        .map(|(&c, v)| c as f64 * v.powf(p))
                        .sum::<f64>()
            }
            Exponent::Infinity => {
                let inner = self
                    .internal
                    .iter()
                    .map(|&(a, b)| (values[a] - values[b]).abs())
                    .fold(0.0, f64::max);
                self.outer
                    .iter()
                    .zip(values)
                    .filter(|(&c, _)| c > 0)
                    .map(|(_, &v)| v)
                    .fold(inner, f64::max)
            }
        }
    }

    /// Matrix `M` with `v^T M v = ||grad f||_2^2`.
    pub fn dirichlet_matrix(&self) -> Vec<Vec<f64>> {
        let m = self.len();
        let mut mat = vec![vec![0.0; m]; m];
        for (a, &c) in self.outer.iter().enumerate() {
            mat[a][a] = c as f64;
        }
        for &(a, b) in &self.internal {
            mat[a][a] += 1.0;
            mat[b][b] += 1.0;
            mat[a][b] -= 1.0;
            mat[b][a] -= 1.0;
        }
        mat
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{grad_lp, grad_pow_sum, LatticeFunction};

    #[test]
    fn agrees_with_generic_gradient() {
        let pts = vec![
            LatticePoint::xy(0, 0),
            LatticePoint::xy(1, 0),
            LatticePoint::xy(3, 3),
            LatticePoint::xy(1, 1),
        ];
        let vals = [1.0, 0.3, 0.7, 0.2];
        let g = SupportGeometry::new(&pts);
        let f = LatticeFunction::from_entries(2, pts.iter().cloned().zip(vals)).unwrap();
        for p in [1.0, 2.0, 3.5] {
            assert!((g.grad(&vals, Exponent::Finite(p)) - grad_pow_sum(&f, p)).abs() < 1e-12);
        }
        assert_eq!(
            g.grad(&vals, Exponent::Infinity),
            grad_lp(&f, Exponent::Infinity)
        );
        let m = g.dirichlet_matrix();
        let q: f64 = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .map(|(i, j)| vals[i] * m[i][j] * vals[j])
            .sum();
        assert!((q - grad_pow_sum(&f, 2.0)).abs() < 1e-12);
        assert!(m.iter().all(|row| row.contains(&4.0)));
    }
}
