//! Counterclockwise square spiral on `Z^2`: 1 at the origin, 2 at (1,0),
//! 3 at (1,1), 4 at (0,1), ... After label `s^2` the labelled set is an
//! `s x s` square.

use num::integer::Roots;

use crate::lattice::LatticePoint;
use crate::{Error, Result};

/// Point carrying spiral label `k >= 1`.
pub fn spiral_label(k: u64) -> Result<LatticePoint> {
    if k == 0 {
        return Err(Error::ZeroLabel);
    }
    if k == 1 {
        return Ok(LatticePoint::xy(0, 0));
    }
    // (s-1)^2 < k <= s^2
    let mut s = k.sqrt();
    if s * s < k {
        s += 1;
    }
    let t = (k - (s - 1) * (s - 1)) as i64;
    let s = s as i64;
    let m = s / 2;
    let (x, y) = if s % 2 == 0 {
        // up the column x = m, then left along y = m
        if t <= s {
            (m, -(m - 1) + t - 1)
        } else {
            (m - (t - s), m)
        }
    } else if t <= s {
        // down the column x = -m, then right along y = -m
        (-m, m - (t - 1))
    } else {
        (-m + (t - s), -m)
    };
    Ok(LatticePoint::xy(x, y))
}

/// Inverse of [`spiral_label`].
pub fn spiral_index(p: &LatticePoint) -> Result<u64> {
    if p.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: p.dim(),
        });
    }
    let (x, y) = (p.x(), p.y());
    if x == 0 && y == 0 {
        return Ok(1);
    }
    // smallest square side containing the point: odd sides 2m+1 cover
    // [-m, m]^2, even sides 2m cover [-(m-1), m]^2
    let odd = 2 * x.abs().max(y.abs()) + 1;
    let even = 2 * x.max(y).max(1 - x).max(1 - y).max(1);
    let s = odd.min(even);
    let base = ((s - 1) * (s - 1)) as u64;
    let m = s / 2;
    let t = if s % 2 == 0 {
        if x == m {
            y + m
        } else {
            s + (m - x)
        }
    } else if x == -m {
        m - y + 1
    } else {
        s + (x + m)
    };
    Ok(base + t as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sixteen_labels() {
        let expected = [
            (0, 0),
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
            (-1, -1),
            (0, -1),
            (1, -1),
            (2, -1),
            (2, 0),
            (2, 1),
            (2, 2),
            (1, 2),
            (0, 2),
            (-1, 2),
        ];
        for (k, (x, y)) in expected.into_iter().enumerate() {
            let label = k as u64 + 1;
            assert_eq!(
                spiral_label(label).unwrap(),
                LatticePoint::xy(x, y),
                "label {label}"
            );
            assert_eq!(spiral_index(&LatticePoint::xy(x, y)).unwrap(), label);
        }
    }

    #[test]
    fn zero_label_rejected() {
        assert!(matches!(spiral_label(0), Err(Error::ZeroLabel)));
    }

    #[test]
    fn consecutive_labels_are_adjacent() {
        for k in 1..20_000u64 {
            let a = spiral_label(k).unwrap();
            let b = spiral_label(k + 1).unwrap();
            assert_eq!(a.l1_distance(&b), 1, "labels {k}, {}", k + 1);
        }
    }

    #[test]
    fn squares_fill_up() {
        for s in 1..30u64 {
            let pts: Vec<_> = (1..=s * s).map(|k| spiral_label(k).unwrap()).collect();
            let xs = pts.iter().map(|p| p.x());
            let ys = pts.iter().map(|p| p.y());
            let w = xs.clone().max().unwrap() - xs.min().unwrap() + 1;
            let h = ys.clone().max().unwrap() - ys.min().unwrap() + 1;
            assert_eq!((w as u64, h as u64), (s, s));
        }
    }

    #[test]
    fn window_round_trip() {
        for x in -60..=60 {
            for y in -60..=60 {
                let p = LatticePoint::xy(x, y);
                assert_eq!(spiral_label(spiral_index(&p).unwrap()).unwrap(), p);
            }
        }
    }
}
