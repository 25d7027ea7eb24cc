//! Lifts of circle homeomorphisms with three backends: exact piecewise
//! linear, Möbius-through-a-cyclic-cover, and rigid translation.
//!
//! Composition and inversion are exact for the PL and translation backends
//! and certified-within-tolerance for Möbius.  Mixing Möbius with the other
//! backends is refused in exact mode; `compose_tol` falls back to a PL
//! sampling of the Möbius factor with certified sup-error.

use serde::{Deserialize, Serialize};

use crate::error::{HomeoError, Result};
use crate::mobius::{MobiusMap, DEFAULT_TOLERANCE};
use crate::pl::PlMap;
use crate::scalar::ExactScalar;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "Wire", into = "Wire")]
pub enum LiftedHomeo {
    Pl(PlMap),
    Mobius(MobiusMap),
    Translation(ExactScalar),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "backend", rename_all = "lowercase")]
enum Wire {
    Pl {
        breakpoints: Vec<(ExactScalar, ExactScalar)>,
    },
    Mobius {
        matrix: [f64; 4],
        k: u32,
        branch: i64,
        #[serde(default = "default_tol", skip_serializing)]
        tol: f64,
    },
    Translation {
        t: ExactScalar,
    },
}

fn default_tol() -> f64 {
    DEFAULT_TOLERANCE
}

impl TryFrom<Wire> for LiftedHomeo {
    type Error = HomeoError;
    fn try_from(w: Wire) -> Result<Self> {
        match w {
            Wire::Pl { breakpoints } => Ok(LiftedHomeo::Pl(PlMap::new(breakpoints)?)),
            Wire::Mobius {
                matrix,
                k,
                branch,
                tol,
            } => Ok(LiftedHomeo::Mobius(MobiusMap::with_raw_branch(
                matrix, k, branch, tol,
            )?)),
            Wire::Translation { t } => Ok(LiftedHomeo::Translation(t)),
        }
    }
}

impl From<LiftedHomeo> for Wire {
    fn from(h: LiftedHomeo) -> Wire {
        match h {
            LiftedHomeo::Pl(p) => Wire::Pl {
                breakpoints: p.breakpoints().to_vec(),
            },
            LiftedHomeo::Mobius(m) => Wire::Mobius {
                matrix: m.matrix(),
                k: m.cover_degree(),
                branch: m.branch(),
                tol: m.tolerance(),
            },
            LiftedHomeo::Translation(t) => Wire::Translation { t },
        }
    }
}

impl LiftedHomeo {
    /// PL constructor; normalizes the lift so that `F(0) ∈ [0, 1)`.
    pub fn pl(breakpoints: Vec<(ExactScalar, ExactScalar)>) -> Result<Self> {
        let raw = PlMap::new(breakpoints)?;
        let at0 = raw.eval(&ExactScalar::zero());
        let shift = at0.floor_int();
        let shift: i64 = {
            use num_traits::ToPrimitive;
            shift.to_i64().ok_or_else(|| {
                HomeoError::InvalidPl("breakpoint ordinates out of range".into())
            })?
        };
        Ok(LiftedHomeo::Pl(raw.shift_by_int(-shift)))
    }

    /// PL constructor keeping the given lift (no normalization).
    pub fn pl_lift(breakpoints: Vec<(ExactScalar, ExactScalar)>) -> Result<Self> {
        Ok(LiftedHomeo::Pl(PlMap::new(breakpoints)?))
    }

    pub fn translation(t: ExactScalar) -> Self {
        LiftedHomeo::Translation(t)
    }

    /// Möbius constructor; `branch ∈ [0, k)` selects the lift whose value
    /// at 0 lies in `[branch/k, (branch+1)/k)`.
    pub fn mobius(matrix: [f64; 4], k: u32, branch: i64, tol: f64) -> Result<Self> {
        Ok(LiftedHomeo::Mobius(MobiusMap::new(matrix, k, branch, tol)?))
    }

    pub fn identity() -> Self {
        LiftedHomeo::Translation(ExactScalar::zero())
    }

    pub fn backend_name(&self) -> &'static str {
        match self {
            LiftedHomeo::Pl(_) => "pl",
            LiftedHomeo::Mobius(_) => "mobius",
            LiftedHomeo::Translation(_) => "translation",
        }
    }

    pub fn as_pl(&self) -> Option<&PlMap> {
        match self {
            LiftedHomeo::Pl(p) => Some(p),
            _ => None,
        }
    }

    pub fn as_mobius(&self) -> Option<&MobiusMap> {
        match self {
            LiftedHomeo::Mobius(m) => Some(m),
            _ => None,
        }
    }

    /// Exact for PL and translation backends.  For Möbius the returned
    /// rational is the exact value of the `f64` computation, accurate to
    /// the backend tolerance.
    pub fn evaluate(&self, x: &ExactScalar) -> ExactScalar {
        match self {
            LiftedHomeo::Pl(p) => p.eval(x),
            LiftedHomeo::Translation(t) => x + t,
            LiftedHomeo::Mobius(m) => ExactScalar::from_f64_exact(m.eval(x.to_f64())),
        }
    }

    pub fn evaluate_f64(&self, x: f64) -> f64 {
        match self {
            LiftedHomeo::Pl(p) => p.eval(&ExactScalar::from_f64_exact(x)).to_f64(),
            LiftedHomeo::Translation(t) => x + t.to_f64(),
            LiftedHomeo::Mobius(m) => m.eval(x),
        }
    }

    /// `h` with `h(x) = f(g(x))`; exact whenever the backends allow it.
    pub fn compose(f: &LiftedHomeo, g: &LiftedHomeo) -> Result<LiftedHomeo> {
        use LiftedHomeo::*;
        match (f, g) {
            (Translation(s), Translation(t)) => Ok(Translation(s + t)),
            (Pl(p), Pl(q)) => Ok(Pl(PlMap::compose(p, q))),
            (Pl(p), Translation(t)) => Ok(Pl(p.shift_pre(t))),
            (Translation(t), Pl(p)) => Ok(Pl(p.shift_post(t))),
            (Mobius(a), Mobius(b)) => Ok(Mobius(MobiusMap::compose(a, b)?)),
            (Mobius(m), Translation(t)) | (Translation(t), Mobius(m)) => {
                // exact only when t is a multiple of 1/k: the rotation is
                // central in the covering group, so both orders agree
                let k = m.cover_degree() as i64;
                let tk = t * &ExactScalar::from_int(k);
                if tk.is_integer() {
                    use num_traits::ToPrimitive;
                    let j = tk.floor_int().to_i64().ok_or_else(|| {
                        HomeoError::Domain("translation amount out of range".into())
                    })?;
                    Ok(Mobius(MobiusMap::with_raw_branch(
                        m.matrix(),
                        m.cover_degree(),
                        m.branch() + j,
                        m.tolerance(),
                    )?))
                } else {
                    Err(HomeoError::BackendMix {
                        lhs: f.backend_name(),
                        rhs: g.backend_name(),
                    })
                }
            }
            _ => Err(HomeoError::BackendMix {
                lhs: f.backend_name(),
                rhs: g.backend_name(),
            }),
        }
    }

    /// Like `compose`, but a backend mix is resolved by sampling the Möbius
    /// factor onto a PL map with certified sup-error at most `tol`.
    pub fn compose_tol(f: &LiftedHomeo, g: &LiftedHomeo, tol: f64) -> Result<LiftedHomeo> {
        match LiftedHomeo::compose(f, g) {
            Ok(h) => Ok(h),
            Err(HomeoError::BackendMix { .. }) => {
                let fp = f.approximate_pl(tol / 2.0)?;
                let gp = g.approximate_pl(tol / 2.0)?;
                LiftedHomeo::compose(&fp, &gp)
            }
            Err(e) => Err(e),
        }
    }

    fn approximate_pl(&self, tol: f64) -> Result<LiftedHomeo> {
        match self {
            LiftedHomeo::Mobius(m) => Ok(LiftedHomeo::Pl(m.to_pl(tol)?)),
            other => Ok(other.clone()),
        }
    }

    pub fn invert(&self) -> Result<LiftedHomeo> {
        match self {
            LiftedHomeo::Pl(p) => Ok(LiftedHomeo::Pl(p.inverse())),
            LiftedHomeo::Translation(t) => Ok(LiftedHomeo::Translation(-t)),
            LiftedHomeo::Mobius(m) => Ok(LiftedHomeo::Mobius(m.inverse()?)),
        }
    }

    /// `n`-fold composition power; negative `n` inverts first.
    pub fn pow(&self, n: i64) -> Result<LiftedHomeo> {
        if n < 0 {
            return self.invert()?.pow(-n);
        }
        match self {
            LiftedHomeo::Translation(t) => {
                Ok(LiftedHomeo::Translation(t * &ExactScalar::from_int(n)))
            }
            LiftedHomeo::Pl(p) => Ok(LiftedHomeo::Pl(p.pow(n as u32))),
            LiftedHomeo::Mobius(_) => {
                let mut acc = LiftedHomeo::identity();
                let mut base = self.clone();
                let mut n = n as u64;
                let mut acc_is_id = true;
                while n > 0 {
                    if n & 1 == 1 {
                        acc = if acc_is_id {
                            base.clone()
                        } else {
                            LiftedHomeo::compose(&base, &acc)?
                        };
                        acc_is_id = false;
                    }
                    n >>= 1;
                    if n > 0 {
                        base = LiftedHomeo::compose(&base, &base)?;
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Nearest integer translation and the sup-norm residual from it
    /// (exact breakpoint inspection for PL, 64 samples for Möbius).
    pub fn nearest_integer_translation(&self) -> (i64, f64) {
        use num_traits::ToPrimitive;
        match self {
            LiftedHomeo::Translation(t) => {
                let n = t.round_int();
                let r = (t - &ExactScalar::from_bigint(n.clone())).abs();
                (n.to_i64().unwrap_or(0), r.to_f64())
            }
            LiftedHomeo::Pl(p) => {
                let (lo, hi) = p.displacement_bounds();
                let mid = (&lo + &hi) / ExactScalar::from_int(2);
                let n = mid.round_int();
                let nn = ExactScalar::from_bigint(n.clone());
                let r = (&hi - &nn).abs().max((&lo - &nn).abs());
                (n.to_i64().unwrap_or(0), r.to_f64())
            }
            LiftedHomeo::Mobius(m) => {
                let d0 = m.eval(0.0);
                let n = d0.round();
                let mut r: f64 = 0.0;
                for i in 0..64 {
                    let x = i as f64 / 64.0;
                    r = r.max((m.eval(x) - x - n).abs());
                }
                (n as i64, r)
            }
        }
    }

    /// `Some(n)` when the map is the translation by `n` up to `tol` in sup
    /// norm; `None` otherwise.
    pub fn as_integer_translation(&self, tol: f64) -> Option<i64> {
        let (n, r) = self.nearest_integer_translation();
        (r <= tol).then_some(n)
    }
}

/// The lifted commutator `[ã, b̃] = ã b̃ ã⁻¹ b̃⁻¹`.  As a map it does not
/// depend on which lifts of the underlying circle maps were chosen.
pub fn lifted_commutator(a: &LiftedHomeo, b: &LiftedHomeo) -> Result<LiftedHomeo> {
    let ab = LiftedHomeo::compose(a, b)?;
    let ainv = a.invert()?;
    let binv = b.invert()?;
    let ab_ainv = LiftedHomeo::compose(&ab, &ainv)?;
    LiftedHomeo::compose(&ab_ainv, &binv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn translations_add() {
        let f = LiftedHomeo::translation(rat(1, 2));
        let g = LiftedHomeo::translation(rat(1, 3));
        match LiftedHomeo::compose(&f, &g).unwrap() {
            LiftedHomeo::Translation(t) => assert_eq!(t, rat(5, 6)),
            other => panic!("expected translation, got {other:?}"),
        }
    }

    #[test]
    fn pl_inverse_law() {
        let f = LiftedHomeo::pl(vec![(rat(0, 1), rat(1, 4)), (rat(1, 2), rat(3, 4))]).unwrap();
        let id = LiftedHomeo::compose(&f, &f.invert().unwrap()).unwrap();
        assert_eq!(id.as_integer_translation(0.0), Some(0));
    }

    #[test]
    fn pl_constructor_normalizes_lift() {
        let f = LiftedHomeo::pl(vec![(rat(0, 1), rat(9, 4)), (rat(1, 2), rat(11, 4))]).unwrap();
        let v = f.evaluate(&rat(0, 1));
        assert!(v >= rat(0, 1) && v < rat(1, 1));
    }

    #[test]
    fn mixed_pl_translation_stays_exact() {
        let f = LiftedHomeo::pl(vec![(rat(0, 1), rat(1, 4)), (rat(1, 2), rat(3, 4))]).unwrap();
        let t = LiftedHomeo::translation(rat(1, 3));
        let ft = LiftedHomeo::compose(&f, &t).unwrap();
        let tf = LiftedHomeo::compose(&t, &f).unwrap();
        for i in 0..8 {
            let x = rat(i, 8);
            assert_eq!(ft.evaluate(&x), f.evaluate(&(&x + &rat(1, 3))));
            assert_eq!(tf.evaluate(&x), f.evaluate(&x) + rat(1, 3));
        }
    }

    #[test]
    fn mobius_pl_mix_is_refused_without_tolerance() {
        let m = LiftedHomeo::mobius([2.0, 0.0, 0.0, 0.5], 1, 0, 1e-9).unwrap();
        let f = LiftedHomeo::pl(vec![(rat(0, 1), rat(1, 4)), (rat(1, 2), rat(3, 4))]).unwrap();
        assert!(matches!(
            LiftedHomeo::compose(&m, &f),
            Err(HomeoError::BackendMix { .. })
        ));
        let h = LiftedHomeo::compose_tol(&m, &f, 1e-5).unwrap();
        for i in 0..8 {
            let x = i as f64 / 8.0;
            assert!((h.evaluate_f64(x) - m.evaluate_f64(f.evaluate_f64(x))).abs() < 1e-4);
        }
    }

    #[test]
    fn mobius_central_rotation_is_exact() {
        let m = LiftedHomeo::mobius([2.0, 0.1, 0.3, 0.515], 2, 1, 1e-9).unwrap();
        let r = LiftedHomeo::translation(rat(3, 2));
        let mr = LiftedHomeo::compose(&m, &r).unwrap();
        let rm = LiftedHomeo::compose(&r, &m).unwrap();
        for i in 0..8 {
            let x = i as f64 / 8.0;
            assert!((mr.evaluate_f64(x) - m.evaluate_f64(x + 1.5)).abs() < 1e-12);
            assert!((rm.evaluate_f64(x) - m.evaluate_f64(x) - 1.5).abs() < 1e-12);
        }
        // non-multiples of 1/k are refused
        let bad = LiftedHomeo::translation(rat(1, 3));
        assert!(LiftedHomeo::compose(&m, &bad).is_err());
    }

    #[test]
    fn commutator_of_translations_is_identity() {
        let a = LiftedHomeo::translation(rat(2, 7));
        let b = LiftedHomeo::translation(rat(5, 3));
        let c = lifted_commutator(&a, &b).unwrap();
        assert_eq!(c.as_integer_translation(0.0), Some(0));
    }

    #[test]
    fn commutator_is_lift_independent() {
        let a = LiftedHomeo::pl(vec![(rat(0, 1), rat(1, 8)), (rat(1, 2), rat(2, 3))]).unwrap();
        let b = LiftedHomeo::pl(vec![(rat(1, 4), rat(1, 3)), (rat(3, 4), rat(7, 8))]).unwrap();
        let shifted = LiftedHomeo::compose(&LiftedHomeo::translation(rat(1, 1)), &a).unwrap();
        let c1 = lifted_commutator(&a, &b).unwrap();
        let c2 = lifted_commutator(&shifted, &b).unwrap();
        for i in 0..16 {
            let x = rat(i, 16);
            assert_eq!(c1.evaluate(&x), c2.evaluate(&x));
        }
    }

    #[test]
    fn json_round_trip_matches_schema() {
        let f = LiftedHomeo::pl(vec![(rat(0, 1), rat(1, 4)), (rat(1, 2), rat(3, 4))]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(
            s,
            r#"{"backend":"pl","breakpoints":[["0","1/4"],["1/2","3/4"]]}"#
        );
        let back: LiftedHomeo = serde_json::from_str(&s).unwrap();
        assert!(matches!(back, LiftedHomeo::Pl(_)));

        let t = LiftedHomeo::translation(rat(1, 3));
        assert_eq!(
            serde_json::to_string(&t).unwrap(),
            r#"{"backend":"translation","t":"1/3"}"#
        );

        let m = LiftedHomeo::mobius([2.0, 0.0, 0.0, 0.5], 2, 1, 1e-9).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        let back: LiftedHomeo = serde_json::from_str(&s).unwrap();
        let m0 = m.as_mobius().unwrap();
        let m1 = back.as_mobius().unwrap();
        assert_eq!(m0.matrix(), m1.matrix());
        assert_eq!(m0.cover_degree(), m1.cover_degree());
        assert_eq!(m0.branch(), m1.branch());
    }
}
