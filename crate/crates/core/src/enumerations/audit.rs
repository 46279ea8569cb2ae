use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{spiral_index, spiral_label, Enumeration, IsoProfile};
use crate::lattice::LatticePoint;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub n_max: u64,
    /// `boundary({v_1..v_n}) = {v_{n+1}, ..., v_{n + profile(n)}}` for every `n <= n_max`.
    pub nested_ok: bool,
    /// First `n` where the nested identity fails.
    pub first_nested_failure: Option<u64>,
    /// Smallest `c` with `boundary({v_1..v_n}) ⊆ {v_{n+1}, ..., v_{n + c * profile(n)}}`.
    pub c_min: f64,
    /// An `n` attaining `c_min`.
    pub c_argmax: u64,
}

/// Compares the prefix boundaries of `e` with the ambient profile.
///
/// The enumeration is extended as far as needed to label every boundary vertex.
pub fn enumeration_audit(
    e: &mut Enumeration,
    profile: &IsoProfile,
    n_max: u64,
) -> Result<AuditReport> {
    if profile.max_n() < n_max as usize {
        return Err(Error::ProfileTooShort {
            needed: n_max as usize + 1,
            have: profile.values().len(),
        });
    }
    e.extend_to(n_max)?;
    let prefix: Vec<LatticePoint> = e.prefix(n_max)?.to_vec();

    let mut inside: HashSet<LatticePoint> = HashSet::new();
    let mut boundary: BTreeSet<u64> = BTreeSet::new();
    let mut report = AuditReport {
        n_max,
        nested_ok: true,
        first_nested_failure: None,
        c_min: 0.0,
        c_argmax: 1,
    };
    for (i, p) in prefix.iter().enumerate() {
        let n = i as u64 + 1;
        inside.insert(p.clone());
        boundary.remove(&n);
        for q in p.neighbors() {
            if inside.contains(&q) {
                continue;
            }
            let label = label_extending(e, &q)?;
            boundary.insert(label);
        }
        let per = profile.get(n as usize).expect("checked length");
        let max_label = *boundary.last().expect("finite sets in Z^d have a boundary");
        let c = (max_label - n) as f64 / per as f64;
        if c > report.c_min {
            report.c_min = c;
            report.c_argmax = n;
        }
        let nested = boundary.len() as u64 == per && max_label == n + per;
        if !nested && report.nested_ok {
            report.nested_ok = false;
            report.first_nested_failure = Some(n);
        }
    }
    Ok(report)
}

fn label_extending(e: &mut Enumeration, q: &LatticePoint) -> Result<u64> {
    loop {
        if let Some(l) = e.label_of(q) {
            return Ok(l);
        }
        let target = (e.len() * 2).max(64);
        e.extend_to(target)?;
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapReport {
    pub m_max: u64,
    /// `max (n - m) / sqrt(m)` over spiral edges `(m, n)`, `m < n`, `m <= m_max`.
    pub max_ratio: f64,
    pub argmax: (u64, u64),
}

/// Scans every spiral lattice edge `(m, n)` with `m < n`, `m <= m_max`.
pub fn spiral_edge_gap_check(m_max: u64) -> Result<GapReport> {
    let mut report = GapReport {
        m_max,
        max_ratio: 0.0,
        argmax: (0, 0),
    };
    for m in 1..=m_max {
        let p = spiral_label(m)?;
        let root = (m as f64).sqrt();
        for q in p.neighbors() {
            let n = spiral_index(&q)?;
            if n > m {
                let ratio = (n - m) as f64 / root;
                if ratio > report.max_ratio {
                    report.max_ratio = ratio;
                    report.argmax = (m, n);
                }
            }
        }
    }
    Ok(report)
}
