//! Necessary conditions for the word product to attain the maximal bound
//! `(2n−1)/k` on the lexicographic configuration, and the resulting
//! confinement of every periodic point of each letter.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use homeo_core::{rott, ExactScalar, LiftedHomeo, RotResult};

use crate::config::{OrbitConfig, PointRef, PositiveWord};
use crate::error::{CwError, Result};
use crate::realize::word_product;

/// One evaluated inequality `lhs > rhs`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InequalityCheck {
    /// 1: `c̃_1(x_2^j) > x_n^{j+1}`, 2: `c̃_i(x_{i+1}^j) > x_{i-1}^{j+2}`,
    /// 3: `c̃_n(x_1^j) > x_{n-1}^{j+1}`
    pub family: u8,
    pub label: u32,
    pub j: i64,
    pub lhs: ExactScalar,
    pub rhs: ExactScalar,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MaxConstraintReport {
    pub orbit_consistent: bool,
    pub checks: Vec<InequalityCheck>,
    pub all_pass: bool,
}

/// Requires every label to carry the datum `1/k` for a common `k`, with
/// the cycle interleaved lexicographically, and `gcd(2n−1, k) = 1`.
fn lexicographic_shape(config: &OrbitConfig) -> Result<(usize, u32)> {
    let n = config.labels().len();
    if n < 2 {
        return Err(CwError::InvalidConfig(
            "constraint check needs at least two labels".into(),
        ));
    }
    let k = config.labels()[0].rot.q;
    for l in config.labels() {
        if l.rot.p != 1 || l.rot.q != k {
            return Err(CwError::InvalidConfig(format!(
                "label {} has datum {}, expected 1/{k}",
                l.id, l.rot
            )));
        }
    }
    for (li, _) in config.labels().iter().enumerate() {
        for (j, &c_idx) in config.occurrences(li).iter().enumerate() {
            if c_idx != j * n + li {
                return Err(CwError::InvalidConfig(
                    "cycle is not in lexicographic order".into(),
                ));
            }
        }
    }
    if (2 * n as i64 - 1).gcd(&(k as i64)) != 1 {
        return Err(CwError::InvalidConfig(format!(
            "gcd(2n-1, k) = gcd({}, {k}) must be 1",
            2 * n - 1
        )));
    }
    Ok((n, k))
}

fn consistency_tolerance(h: &LiftedHomeo) -> ExactScalar {
    match h {
        LiftedHomeo::Mobius(m) => ExactScalar::from_f64_exact(16.0 * m.tolerance()),
        _ => ExactScalar::zero(),
    }
}

/// Checks that each map fixes the configured orbit: `d_i(x_i^j) = x_i^{j+p_i}`.
pub fn orbit_consistent(config: &OrbitConfig, homeos: &[LiftedHomeo]) -> Result<bool> {
    if homeos.len() != config.labels().len() {
        return Err(CwError::Inconsistent(format!(
            "{} maps for {} labels",
            homeos.len(),
            config.labels().len()
        )));
    }
    for (li, spec) in config.labels().iter().enumerate() {
        let tol = consistency_tolerance(&homeos[li]);
        for j in 0..spec.rot.q as i64 {
            let x = config.position(&PointRef::new(spec.id, j))?;
            let y = config.position(&PointRef::new(spec.id, j + spec.rot.p as i64))?;
            let got = homeos[li].evaluate(&x);
            if (&got - &y).abs() > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evaluates the three inequality families over one period.  If the word
/// product attains `(2n−1)/k`, every inequality must pass.
pub fn check_max_constraints(
    homeos: &[LiftedHomeo],
    config: &OrbitConfig,
) -> Result<MaxConstraintReport> {
    let (n, k) = lexicographic_shape(config)?;
    let consistent = orbit_consistent(config, homeos)?;
    if !consistent {
        return Err(CwError::Inconsistent(
            "maps do not fix the configured periodic orbits".into(),
        ));
    }
    let id_of = |i1: usize| config.labels()[i1 - 1].id; // 1-based label position
    let x = |i1: usize, j: i64| config.position(&PointRef::new(id_of(i1), j));
    let mut checks = Vec::new();
    for j in 0..k as i64 {
        // family 1
        let lhs = homeos[0].evaluate(&x(2, j)?);
        let rhs = x(n, j + 1)?;
        checks.push(InequalityCheck {
            family: 1,
            label: id_of(1),
            j,
            pass: lhs > rhs,
            lhs,
            rhs,
        });
        // family 2
        for i1 in 2..n {
            let lhs = homeos[i1 - 1].evaluate(&x(i1 + 1, j)?);
            let rhs = x(i1 - 1, j + 2)?;
            checks.push(InequalityCheck {
                family: 2,
                label: id_of(i1),
                j,
                pass: lhs > rhs,
                lhs,
                rhs,
            });
        }
        // family 3
        let lhs = homeos[n - 1].evaluate(&x(1, j)?);
        let rhs = x(n - 1, j + 1)?;
        checks.push(InequalityCheck {
            family: 3,
            label: id_of(n),
            j,
            pass: lhs > rhs,
            lhs,
            rhs,
        });
    }
    let all_pass = checks.iter().all(|c| c.pass);
    Ok(MaxConstraintReport {
        orbit_consistent: consistent,
        checks,
        all_pass,
    })
}

/// Open intervals (one period's worth) in which every lift of a periodic
/// point of the given label must lie, provided the product attains the
/// maximal bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodicPointZones {
    pub label: u32,
    pub intervals: Vec<(ExactScalar, ExactScalar)>,
}

pub fn locate_periodic_points(
    homeos: &[LiftedHomeo],
    config: &OrbitConfig,
    label: u32,
) -> Result<PeriodicPointZones> {
    let (n, k) = lexicographic_shape(config)?;
    if !orbit_consistent(config, homeos)? {
        return Err(CwError::Inconsistent(
            "maps do not fix the configured periodic orbits".into(),
        ));
    }
    // certify maximality of the product word
    let word = PositiveWord::new(config.labels().iter().map(|l| l.id).collect())?;
    let prod = word_product(config, homeos, &word)?;
    let target = ExactScalar::from_frac(2 * n as i64 - 1, k as i64);
    let r = rott(&prod, k.max(64), &homeo_core::default_resolution())?;
    match r {
        RotResult::Exact { ref value } if *value == target => {}
        other => {
            return Err(CwError::NotMaximal(format!(
                "product has rott {other:?}, needs exactly {target}"
            )))
        }
    }
    let li = config.label_index(label)?;
    let i1 = li + 1; // 1-based position
    let id_of = |i1: usize| config.labels()[i1 - 1].id;
    let x = |i1: usize, j: i64| config.position(&PointRef::new(id_of(i1), j));
    let mut intervals = Vec::with_capacity(k as usize);
    for j in 0..k as i64 {
        let (lo, hi) = if i1 == 1 {
            (x(n, j - 1)?, x(2, j)?)
        } else if i1 == n {
            (x(n - 1, j - 1)?, x(1, j)?)
        } else {
            (x(i1 - 1, j)?, x(i1 + 1, j)?)
        };
        intervals.push((lo, hi));
    }
    Ok(PeriodicPointZones { label, intervals })
}

impl PeriodicPointZones {
    /// Checks that a proposed alternative periodic orbit (circle points in
    /// `[0,1)`) interleaves exactly as the configured one: one point per
    /// allowed interval.
    pub fn admits_orbit(&self, points: &[ExactScalar]) -> bool {
        if points.len() != self.intervals.len() {
            return false;
        }
        let mut used = vec![false; self.intervals.len()];
        let one = ExactScalar::one();
        for y in points {
            let mut found = false;
            for (idx, (lo, hi)) in self.intervals.iter().enumerate() {
                for m in [-1i64, 0, 1] {
                    let shifted = y + &(&one * &ExactScalar::from_int(m));
                    if &shifted > lo && &shifted < hi {
                        if used[idx] {
                            return false;
                        }
                        used[idx] = true;
                        found = true;
                        break;
                    }
                }
                if found {
                    break;
                }
            }
            if !found {
                return false;
            }
        }
        used.into_iter().all(|u| u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RotData;
    use crate::realize::{default_contraction, realize};
    use homeo_core::rat;

    fn lex_config(n: usize, k: u32) -> OrbitConfig {
        let rots: Vec<RotData> = (0..n).map(|_| RotData::new(1, k)).collect();
        let total = (n as i64) * (k as i64);
        let positions: Vec<Vec<ExactScalar>> = (0..n)
            .map(|i| {
                (0..k as i64)
                    .map(|j| rat(i as i64 + j * n as i64, total))
                    .collect()
            })
            .collect();
        OrbitConfig::from_positions(&rots, &positions).unwrap()
    }

    #[test]
    fn realized_maps_pass_all_constraints() {
        let cfg = lex_config(2, 3);
        let maps = realize(&cfg, &default_contraction(&cfg).unwrap()).unwrap();
        let report = check_max_constraints(&maps, &cfg).unwrap();
        assert!(report.all_pass);
    }

    #[test]
    fn rigid_rotations_fail_some_constraint() {
        let cfg = lex_config(2, 3);
        // translations by 1/k fix compatible orbits but only reach n/k
        let maps = vec![
            LiftedHomeo::translation(rat(1, 3)),
            LiftedHomeo::translation(rat(1, 3)),
        ];
        // consistency: x_i^j + 1/3 must be x_i^{j+1}: true for evenly
        // spaced configurations only, so build one
        let rots = [RotData::new(1, 3), RotData::new(1, 3)];
        let pos1 = vec![rat(0, 6), rat(2, 6), rat(4, 6)];
        let pos2 = vec![rat(1, 6), rat(3, 6), rat(5, 6)];
        let cfg_even = OrbitConfig::from_positions(&rots, &[pos1, pos2]).unwrap();
        drop(cfg);
        let report = check_max_constraints(&maps, &cfg_even).unwrap();
        assert!(!report.all_pass);
        // and the product only reaches n/k = 2/3
        let w = PositiveWord::parse("c1 c2").unwrap();
        let prod = word_product(&cfg_even, &maps, &w).unwrap();
        assert_eq!(
            homeo_core::rott_default(&prod).unwrap(),
            RotResult::exact(rat(2, 3))
        );
    }

    #[test]
    fn zones_confine_all_periodic_points() {
        let cfg = lex_config(3, 2);
        let maps = realize(&cfg, &default_contraction(&cfg).unwrap()).unwrap();
        let zones = locate_periodic_points(&maps, &cfg, 2).unwrap();
        assert_eq!(zones.intervals.len(), 2);
        // middle label: intervals are (x_1^j, x_3^j)
        assert_eq!(
            zones.intervals[0],
            (
                cfg.position(&PointRef::new(1, 0)).unwrap(),
                cfg.position(&PointRef::new(3, 0)).unwrap()
            )
        );
        // every exact periodic point of d_2 lies inside some zone
        let d2 = maps[1].as_pl().unwrap();
        let h = d2.pow(2); // q = k = 2, p = 1: solve d^k = x + 1
        let sols = h.translated_points(&rat(1, 1));
        for (lo, hi) in sols {
            for y in [lo, hi] {
                let y = y.fract();
                let inside = zones.intervals.iter().any(|(a, b)| {
                    [-1i64, 0, 1].iter().any(|&m| {
                        let s = &y + &rat(m, 1);
                        &s > a && &s < b
                    })
                });
                assert!(inside, "periodic point {y} escapes the allowed zones");
            }
        }
    }

    #[test]
    fn maximality_is_a_precondition() {
        let rots = [RotData::new(1, 3), RotData::new(1, 3)];
        let pos1 = vec![rat(0, 6), rat(2, 6), rat(4, 6)];
        let pos2 = vec![rat(1, 6), rat(3, 6), rat(5, 6)];
        let cfg = OrbitConfig::from_positions(&rots, &[pos1, pos2]).unwrap();
        let maps = vec![
            LiftedHomeo::translation(rat(1, 3)),
            LiftedHomeo::translation(rat(1, 3)),
        ];
        assert!(matches!(
            locate_periodic_points(&maps, &cfg, 1),
            Err(CwError::NotMaximal(_))
        ));
    }
}
