use serde::Serialize;

use super::{counterexample_search, SearchConfig};
use crate::enumerations::{
    enumeration_audit, prefix_profile, z2_profile, Enumeration, EnumerationKind, IsoProfile,
    KindName,
};
use crate::lattice::Exponent;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepConfig {
    pub budget: u64,
    pub seed: u64,
    pub support_size: usize,
    pub threads: usize,
    /// Prefix length for the boundary audit of random enumerations.
    pub audit_n: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            budget: 100_000,
            seed: 1,
            support_size: 5,
            threads: 1,
            audit_n: 200,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub kind: String,
    pub dim: usize,
    pub p: Exponent,
    /// Best searched norm ratio, a lower bound for the constant.
    pub lower_bound: f64,
    pub theorem_upper: Option<f64>,
    pub c_min: Option<f64>,
}

/// Proven upper bound on the norm ratio: `4^{1+1/p}` for the spiral,
/// `2^{1/p}` for Wang-Wang and `(c+1) (2d)^{1/p}` for an enumeration whose
/// prefix boundaries lie within `c` times the profile.
pub fn theorem_upper(
    kind: EnumerationKind,
    p: Exponent,
    c_min: Option<f64>,
    dim: usize,
) -> Option<f64> {
    let r = p.reciprocal();
    match kind {
        EnumerationKind::Spiral => Some(4f64.powf(1.0 + r)),
        EnumerationKind::WangWang => Some(2f64.powf(r)),
        _ => c_min.map(|c| (c + 1.0) * (2.0 * dim as f64).powf(r)),
    }
}

fn profile_for(dim: usize, n: u64) -> Result<IsoProfile> {
    match dim {
        2 => Ok(z2_profile(n as usize)),
        3 => {
            let e = Enumeration::nested_greedy(3, n)?;
            let mut values = prefix_profile(&e, n)?;
            values.truncate(n as usize);
            Ok(IsoProfile::from_boundaries(
                3,
                &values,
                false,
                "nested greedy prefixes",
            ))
        }
        d => Err(Error::Unsupported(format!(
            "no profile available in dimension {d}"
        ))),
    }
}

/// Best found ratio and proven bound for each `(kind, p)`.
pub fn constant_sweep(
    kinds: &[KindName],
    ps: &[Exponent],
    cfg: &SweepConfig,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::new();
    for &kind in kinds {
        let mut e = Enumeration::build(kind, 2, cfg.seed, 0)?;
        let c_min = match kind {
            KindName::L1rand => {
                let profile = profile_for(2, cfg.audit_n)?;
                Some(enumeration_audit(&mut e, &profile, cfg.audit_n)?.c_min)
            }
            _ => None,
        };
        for &p in ps {
            let search =
                SearchConfig::new(p, cfg.support_size, cfg.budget, cfg.seed).threads(cfg.threads);
            let report = counterexample_search(&mut e, &search)?;
            rows.push(SweepRow {
                kind: e.kind().to_string(),
                dim: 2,
                p,
                lower_bound: report.norm_ratio,
                theorem_upper: theorem_upper(e.kind(), p, c_min, 2),
                c_min,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DimRow {
    pub dim: usize,
    pub kind: String,
    pub c_min: f64,
    pub bound: f64,
    pub searched: f64,
    /// Whether the profile used for `c_min` is known to be minimal.
    pub profile_verified: bool,
    pub ok: bool,
}

/// Searched ratios against the bound implied by each enumeration's audited
/// constant, for seeded l1-respecting enumerations of `Z^d`.
pub fn dimension_check(
    dim: usize,
    seeds: &[u64],
    p: Exponent,
    cfg: &SweepConfig,
) -> Result<Vec<DimRow>> {
    if !(2..=3).contains(&dim) {
        return Err(Error::InvalidDimension { min: 2, got: dim });
    }
    let profile = profile_for(dim, cfg.audit_n)?;
    let mut enums = Vec::new();
    if dim == 2 {
        enums.push((Enumeration::wang_wang(0), cfg.seed));
    }
    for &s in seeds {
        enums.push((Enumeration::l1_random(dim, s, 0)?, s));
    }
    let mut rows = Vec::new();
    for (mut e, seed) in enums {
        let audit = enumeration_audit(&mut e, &profile, cfg.audit_n)?;
        let bound = (audit.c_min + 1.0) * (2.0 * dim as f64).powf(p.reciprocal());
        let search = SearchConfig::new(p, cfg.support_size, cfg.budget, seed).threads(cfg.threads);
        let searched = counterexample_search(&mut e, &search)?.norm_ratio;
        rows.push(DimRow {
            dim,
            kind: e.kind().to_string(),
            c_min: audit.c_min,
            bound,
            searched,
            profile_verified: profile.verified_minimal(),
            ok: searched <= bound + 1e-9,
        });
    }
    Ok(rows)
}

/// One CSV row per `(enum, p)` for external plotting.
pub fn emit_plot_data(rows: &[SweepRow]) -> String {
    let mut out = String::from("enum,p,lower_bound,theorem_upper\n");
    for r in rows {
        let upper = r.theorem_upper.map(|u| u.to_string()).unwrap_or_default();
        out.push_str(&format!("{},{},{},{}\n", r.kind, r.p, r.lower_bound, upper));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn upper_bounds() {
        let two = Exponent::Finite(2.0);
        assert_eq!(
            theorem_upper(EnumerationKind::Spiral, Exponent::Finite(1.0), None, 2),
            Some(16.0)
        );
        assert_eq!(
            theorem_upper(EnumerationKind::WangWang, Exponent::Infinity, None, 2),
            Some(1.0)
        );
        assert_eq!(
            theorem_upper(EnumerationKind::WangWang, two, None, 2),
            Some(2f64.sqrt())
        );
        assert_eq!(
            theorem_upper(EnumerationKind::L1Random { seed: 0 }, two, Some(1.0), 2),
            Some(4.0)
        );
        assert_eq!(
            theorem_upper(EnumerationKind::L1Random { seed: 0 }, two, None, 2),
            None
        );
    }

    #[test]
    fn tiny_sweep_csv() {
        let cfg = SweepConfig {
            budget: 2000,
            ..SweepConfig::default()
        };
        let rows = constant_sweep(
            &[KindName::Spiral, KindName::Wang],
            &[Exponent::Finite(1.0), Exponent::Infinity],
            &cfg,
        )
        .unwrap();
        let csv = emit_plot_data(&rows);
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("enum,p,lower_bound,theorem_upper\nspiral,1,"));
        assert!(rows
            .iter()
            .all(|r| r.lower_bound <= r.theorem_upper.unwrap() + 1e-9));
    }

    #[test]
    fn small_dimension_check() {
        let cfg = SweepConfig {
            budget: 2000,
            audit_n: 60,
            ..SweepConfig::default()
        };
        let rows = dimension_check(2, &[1, 2], Exponent::Finite(2.0), &cfg).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[0].kind, "wang");
        assert_eq!(rows[0].c_min, 1.0);
        assert!(rows.iter().all(|r| r.ok));
        assert!(dimension_check(4, &[1], Exponent::Finite(2.0), &cfg).is_err());
    }
}
