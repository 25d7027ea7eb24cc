//! Certified rotation and translation numbers.
//!
//! The decidable comparisons behind everything here:
//!
//!   rott(F) < p/q  ⟺  F^q(x) < x + p for all x
//!   rott(F) > p/q  ⟺  F^q(x) > x + p for all x
//!
//! and when neither holds, `F^q − p` has a fixed point by the intermediate
//! value theorem, which certifies `rott(F) = p/q` exactly.  For the PL
//! backend the displacement extremes of `F^q` sit at breakpoints, so the
//! trichotomy is a finite exact computation.  For the Möbius backend the
//! same comparisons are made by adaptive interval evaluation using
//! monotonicity, at the backend tolerance.
//!
//! The search itself is Stern–Brocot bisection: the mediant of a Farey
//! interval is the unique smallest-denominator rational strictly inside
//! it, so stopping once the mediant denominator exceeds `max_denominator`
//! certifies that no admissible rational remains in the bracket.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{HomeoError, Result};
use crate::homeo::LiftedHomeo;
use crate::mobius::MobiusMap;
use crate::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum RotResult {
    Exact { value: ExactScalar },
    Interval { lo: ExactScalar, hi: ExactScalar },
}

impl RotResult {
    pub fn exact(value: ExactScalar) -> Self {
        RotResult::Exact { value }
    }

    pub fn as_exact(&self) -> Option<&ExactScalar> {
        match self {
            RotResult::Exact { value } => Some(value),
            RotResult::Interval { .. } => None,
        }
    }

    pub fn bounds(&self) -> (ExactScalar, ExactScalar) {
        match self {
            RotResult::Exact { value } => (value.clone(), value.clone()),
            RotResult::Interval { lo, hi } => (lo.clone(), hi.clone()),
        }
    }

    pub fn contains(&self, x: &ExactScalar) -> bool {
        match self {
            RotResult::Exact { value } => value == x,
            RotResult::Interval { lo, hi } => lo < x && x < hi,
        }
    }

    /// Whether two results are consistent with describing the same number.
    pub fn overlaps(&self, other: &RotResult) -> bool {
        let (alo, ahi) = self.bounds();
        let (blo, bhi) = other.bounds();
        alo <= bhi && blo <= ahi
    }
}

/// Three-way comparison of the displacement of `h = f^q` against `p`.
fn displacement_cmp(h: &LiftedHomeo, p: i64) -> Result<Ordering> {
    match h {
        LiftedHomeo::Translation(t) => Ok(t.cmp_frac(p, 1)),
        LiftedHomeo::Pl(pl) => {
            let (lo, hi) = pl.displacement_bounds();
            let pp = ExactScalar::from_int(p);
            if hi < pp {
                Ok(Ordering::Less)
            } else if lo > pp {
                Ok(Ordering::Greater)
            } else {
                Ok(Ordering::Equal)
            }
        }
        LiftedHomeo::Mobius(m) => mobius_displacement_cmp(m, p as f64, m.tolerance()),
    }
}

/// Exact three-way comparison of `rott(f)` against `p/q` (`q >= 1`).
/// `Ordering::Equal` certifies a point with `F^q(x) = x + p` (exactly for
/// PL and translation backends, at working tolerance for Möbius).
pub fn rott_cmp(f: &LiftedHomeo, p: i64, q: u32) -> Result<Ordering> {
    assert!(q >= 1, "denominator must be positive");
    if let LiftedHomeo::Translation(t) = f {
        return Ok((t * &ExactScalar::from_int(q as i64)).cmp_frac(p, 1));
    }
    displacement_cmp(&f.pow(q as i64)?, p)
}

/// Memoized powers of a fixed map.  The Stern–Brocot search always needs
/// `f^(ql+qr)` with `f^ql` and `f^qr` already computed, so each mediant
/// step costs one composition instead of a fresh power.
struct PowerCache {
    base: LiftedHomeo,
    cache: HashMap<u32, LiftedHomeo>,
}

impl PowerCache {
    fn new(base: LiftedHomeo) -> Self {
        PowerCache {
            base,
            cache: HashMap::new(),
        }
    }

    fn power(&mut self, q: u32) -> Result<LiftedHomeo> {
        assert!(q >= 1);
        if q == 1 {
            return Ok(self.base.clone());
        }
        if let Some(h) = self.cache.get(&q) {
            return Ok(h.clone());
        }
        let a = self.power(q / 2)?;
        let b = self.power(q - q / 2)?;
        let h = LiftedHomeo::compose(&a, &b)?;
        self.cache.insert(q, h.clone());
        Ok(h)
    }

    fn cmp(&mut self, p: i64, q: u32) -> Result<Ordering> {
        let h = self.power(q)?;
        displacement_cmp(&h, p)
    }
}

/// Adaptive comparison of `H(x) - x` against the constant `p`, using only
/// monotonicity of `H`: on a cell `[u, v]`,
/// `H(u) - v <= H(x) - x <= H(v) - u`.
///
/// `Equal` is returned on a certified sign change (an exact translated
/// point exists by the intermediate value theorem) or when the
/// displacement provably enters the `±margin` band: a touching zero at
/// working precision.  Cells are not refined below the margin width, which
/// keeps near-tangent configurations from exploding the subdivision.
fn mobius_displacement_cmp(h: &MobiusMap, p: f64, tol: f64) -> Result<Ordering> {
    let margin = tol;
    let floor = tol.max(1e-12);
    // displacement is periodic with period 1/k
    let period = 1.0 / h.cover_degree() as f64;
    let mut stack = vec![(0.0_f64, period)];
    let mut seen_below = false; // some sample with G < -margin
    let mut seen_above = false; // some sample with G > +margin
    let mut ambiguous = false;
    while let Some((u, v)) = stack.pop() {
        let gu = h.eval(u) - u - p;
        let gv = h.eval(v) - v - p;
        if !gu.is_finite() || !gv.is_finite() {
            return Err(HomeoError::Uncertifiable(
                "non-finite displacement sample".into(),
            ));
        }
        seen_below |= gu < -margin || gv < -margin;
        seen_above |= gu > margin || gv > margin;
        if seen_below && seen_above {
            return Ok(Ordering::Equal);
        }
        let upper = h.eval(v) - u - p; // >= sup of G on the cell
        let lower = h.eval(u) - v - p; // <= inf of G on the cell
        if upper < -margin || lower > margin {
            continue; // sign certified on this cell
        }
        if v - u > floor {
            let mid = 0.5 * (u + v);
            stack.push((u, mid));
            stack.push((mid, v));
        } else {
            ambiguous = true;
        }
    }
    match (seen_below, seen_above, ambiguous) {
        (true, false, false) => Ok(Ordering::Less),
        (false, true, false) => Ok(Ordering::Greater),
        _ => Ok(Ordering::Equal),
    }
}

/// Lifted (translation) number of `f`, as either a certified exact
/// rational with denominator at most `max_denominator`, or an enclosing
/// open interval of width at most `resolution`.
pub fn rott(
    f: &LiftedHomeo,
    max_denominator: u32,
    resolution: &ExactScalar,
) -> Result<RotResult> {
    if max_denominator == 0 {
        return Err(HomeoError::Domain("max_denominator must be positive".into()));
    }
    if let LiftedHomeo::Translation(t) = f {
        return Ok(RotResult::exact(t.clone()));
    }
    let mut powers = PowerCache::new(f.clone());

    // integer window: find n with rott in (n, n+1), or an exact integer hit
    let mut n = f.evaluate_f64(0.0).floor() as i64;
    loop {
        match powers.cmp(n, 1)? {
            Ordering::Equal => return Ok(RotResult::exact(ExactScalar::from_int(n))),
            Ordering::Less => n -= 1,
            Ordering::Greater => match powers.cmp(n + 1, 1)? {
                Ordering::Equal => {
                    return Ok(RotResult::exact(ExactScalar::from_int(n + 1)))
                }
                Ordering::Greater => n += 1,
                Ordering::Less => break,
            },
        }
    }

    // Stern–Brocot bisection inside (n, n+1)
    let (mut pl, mut ql) = (n, 1i64);
    let (mut pr, mut qr) = (n + 1, 1i64);
    loop {
        let (pm, qm) = (pl + pr, ql + qr);
        if qm > max_denominator as i64 {
            let lo = ExactScalar::from_frac(pl, ql);
            let hi = ExactScalar::from_frac(pr, qr);
            if (&hi - &lo) <= *resolution {
                return Ok(RotResult::Interval { lo, hi });
            }
        }
        match powers.cmp(pm, qm as u32)? {
            Ordering::Equal => {
                return Ok(RotResult::exact(ExactScalar::from_frac(pm, qm)))
            }
            Ordering::Less => {
                pr = pm;
                qr = qm;
            }
            Ordering::Greater => {
                pl = pm;
                ql = qm;
            }
        }
    }
}

/// Rotation number on the circle: `rott` reduced mod 1 into `[0, 1)`.
/// An interval straddling an integer is reported with `lo ∈ [0, 1)` and
/// `hi` possibly reaching slightly past 1.
pub fn rot_circle(
    f: &LiftedHomeo,
    max_denominator: u32,
    resolution: &ExactScalar,
) -> Result<RotResult> {
    match rott(f, max_denominator, resolution)? {
        RotResult::Exact { value } => Ok(RotResult::exact(value.fract())),
        RotResult::Interval { lo, hi } => {
            let shift = ExactScalar::from_bigint(lo.floor_int());
            Ok(RotResult::Interval {
                lo: &lo - &shift,
                hi: &hi - &shift,
            })
        }
    }
}

pub const DEFAULT_MAX_DENOMINATOR: u32 = 64;

/// Interval-mode stopping width.  Exact PL arithmetic doubles digit sizes
/// with every squaring, so the default keeps the implied power exponents
/// near the default denominator bound; pass a finer resolution explicitly
/// when the extra cost is wanted.
pub fn default_resolution() -> ExactScalar {
    ExactScalar::from_frac(1, 1 << 12)
}

/// `rott` with the library defaults.
pub fn rott_default(f: &LiftedHomeo) -> Result<RotResult> {
    rott(f, DEFAULT_MAX_DENOMINATOR, &default_resolution())
}

/// `rot_circle` with the library defaults.
pub fn rot_circle_default(f: &LiftedHomeo) -> Result<RotResult> {
    rot_circle(f, DEFAULT_MAX_DENOMINATOR, &default_resolution())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn res() -> ExactScalar {
        default_resolution()
    }

    #[test]
    fn rejects_zero_max_denominator() {
        let f = LiftedHomeo::translation(rat(1, 3));
        assert!(rott(&f, 0, &res()).is_err());
    }

    #[test]
    fn translation_is_exact() {
        let f = LiftedHomeo::translation(rat(2, 5));
        assert_eq!(rott(&f, 64, &res()).unwrap(), RotResult::exact(rat(2, 5)));
    }

    #[test]
    fn fixed_point_forces_zero() {
        let f = LiftedHomeo::pl(vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(3, 4))]).unwrap();
        assert_eq!(rott(&f, 64, &res()).unwrap(), RotResult::exact(rat(0, 1)));
    }

    #[test]
    fn circle_value_reduces_mod_one() {
        let f = LiftedHomeo::translation(rat(7, 3));
        assert_eq!(
            rot_circle(&f, 64, &res()).unwrap(),
            RotResult::exact(rat(1, 3))
        );
    }

    #[test]
    fn conjugate_of_translation_is_detected() {
        let h = LiftedHomeo::pl(vec![(rat(0, 1), rat(1, 8)), (rat(1, 2), rat(2, 3))]).unwrap();
        let t = LiftedHomeo::translation(rat(2, 5));
        let f = LiftedHomeo::compose(&LiftedHomeo::compose(&h, &t).unwrap(), &h.invert().unwrap())
            .unwrap();
        assert_eq!(rott(&f, 64, &res()).unwrap(), RotResult::exact(rat(2, 5)));
    }

    #[test]
    fn negative_rotation_number() {
        let f = LiftedHomeo::translation(rat(-3, 7));
        let h = LiftedHomeo::pl(vec![(rat(0, 1), rat(1, 8)), (rat(1, 2), rat(2, 3))]).unwrap();
        let g = LiftedHomeo::compose(&LiftedHomeo::compose(&h, &f).unwrap(), &h.invert().unwrap())
            .unwrap();
        assert_eq!(rott(&g, 64, &res()).unwrap(), RotResult::exact(rat(-3, 7)));
        assert_eq!(
            rot_circle(&g, 64, &res()).unwrap(),
            RotResult::exact(rat(4, 7))
        );
    }

    #[test]
    fn hyperbolic_mobius_lift_rotation_is_branch_over_k() {
        // diag(2, 1/2) fixes direction 0, so the canonical base lift fixes 0
        for (k, m) in [(2u32, 1i64), (3, 2), (4, 3)] {
            let f = LiftedHomeo::mobius([2.0, 0.0, 0.0, 0.5], k, m, 1e-9).unwrap();
            assert_eq!(
                rot_circle(&f, 64, &res()).unwrap(),
                RotResult::exact(rat(m, k as i64))
            );
        }
    }

    #[test]
    fn elliptic_mobius_interval_contains_angle() {
        let phi = 1.0_f64;
        let f = LiftedHomeo::mobius(
            [phi.cos(), -phi.sin(), phi.sin(), phi.cos()],
            1,
            0,
            1e-9,
        )
        .unwrap();
        let r = rott(&f, 50, &rat(1, 1 << 14)).unwrap();
        let target = 1.0 / std::f64::consts::PI;
        match r {
            RotResult::Interval { lo, hi } => {
                assert!(lo.to_f64() < target && target < hi.to_f64());
                assert!((&hi - &lo) <= rat(1, 1 << 14));
            }
            RotResult::Exact { value } => {
                // only acceptable if it agrees with the angle to high accuracy
                assert!((value.to_f64() - target).abs() < 1e-6);
            }
        }
        // long-orbit oracle: average displacement over 10^6 iterations
        let mut x = 0.0_f64;
        let n = 1_000_000u32;
        for _ in 0..n {
            x = f.evaluate_f64(x);
        }
        let avg = x / n as f64;
        assert!((avg - target).abs() < 1e-5);
    }

    #[test]
    fn power_law_on_pl_maps() {
        let f = LiftedHomeo::pl(vec![(rat(0, 1), rat(1, 8)), (rat(1, 2), rat(2, 3))]).unwrap();
        let r1 = rott(&f, 64, &res()).unwrap();
        for n in [2i64, 3, 5] {
            let rn = rott(&f.pow(n).unwrap(), 64, &res()).unwrap();
            let (lo, hi) = r1.bounds();
            let nn = ExactScalar::from_int(n);
            let scaled = RotResult::Interval {
                lo: &lo * &nn,
                hi: &hi * &nn,
            };
            assert!(rn.overlaps(&scaled), "power law failed for n={n}");
        }
    }
}
