//! Möbius-backed lifts.
//!
//! A `MobiusMap` is a lift to the line of the action of a matrix in
//! PSL(2,R) on the projective circle, pushed through the k-fold cyclic
//! cover.  The projective circle is parametrized by `x ∈ R/Z ↦` the line
//! through direction `(cos πx, sin πx)`, so a matrix acts on `x` by
//!
//!     x ↦ atan2(c·cos πx + d·sin πx, a·cos πx + b·sin πx) / π   (mod 1)
//!
//! The canonical base lift `C` is the increasing lift with `C(0) ∈ [0, 1)`.
//! The element of the k-fold cover with branch `m` is then
//!
//!     F(x) = C(kx)/k + m/k
//!
//! which commutes with `x ↦ x + 1/k`.  Constructors take `m ∈ [0, k)`;
//! compositions may carry the branch outside that window, which encodes an
//! extra integer translation and is preserved exactly.
//!
//! Matrix entries are `f64`; every derived quantity (branch carries,
//! inverse branches) is certified by evaluation against the stated
//! tolerance rather than trusted.

use crate::error::{HomeoError, Result};
use crate::pl::PlMap;
use crate::scalar::ExactScalar;
use std::f64::consts::PI;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Margin above/below trace ±2 used to classify conjugacy types.
const TRACE_MARGIN: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct MobiusMap {
    mat: [f64; 4],
    k: u32,
    branch: i64,
    tol: f64,
}

fn normalize(mat: [f64; 4]) -> Result<[f64; 4]> {
    let [a, b, c, d] = mat;
    let det = a * d - b * c;
    if !det.is_finite() || det <= 0.0 {
        return Err(HomeoError::InvalidMobius(format!(
            "determinant {det} not positive"
        )));
    }
    let s = det.sqrt();
    let mut m = [a / s, b / s, c / s, d / s];
    // deterministic sign: first entry of significant magnitude is positive
    for v in m {
        if v.abs() > 1e-12 {
            if v < 0.0 {
                for e in &mut m {
                    *e = -*e;
                }
            }
            break;
        }
    }
    Ok(m)
}

fn wrap01(x: f64) -> f64 {
    let f = x - x.floor();
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

impl MobiusMap {
    pub fn new(mat: [f64; 4], k: u32, branch: i64, tol: f64) -> Result<Self> {
        if k == 0 {
            return Err(HomeoError::InvalidMobius("cover degree 0".into()));
        }
        if branch < 0 || branch >= k as i64 {
            return Err(HomeoError::InvalidMobius(format!(
                "branch {branch} outside [0, {k})"
            )));
        }
        Ok(MobiusMap {
            mat: normalize(mat)?,
            k,
            branch,
            tol,
        })
    }

    /// Internal constructor for composition results, where the branch may
    /// lie outside `[0, k)` (it then carries an integer translation).
    pub(crate) fn with_raw_branch(mat: [f64; 4], k: u32, branch: i64, tol: f64) -> Result<Self> {
        if k == 0 {
            return Err(HomeoError::InvalidMobius("cover degree 0".into()));
        }
        Ok(MobiusMap {
            mat: normalize(mat)?,
            k,
            branch,
            tol,
        })
    }

    pub fn matrix(&self) -> [f64; 4] {
        self.mat
    }

    pub fn cover_degree(&self) -> u32 {
        self.k
    }

    pub fn branch(&self) -> i64 {
        self.branch
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn trace(&self) -> f64 {
        self.mat[0] + self.mat[3]
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.trace().abs() > 2.0 + TRACE_MARGIN
    }

    pub fn is_elliptic(&self) -> bool {
        self.trace().abs() < 2.0 - TRACE_MARGIN
    }

    fn raw_angle(&self, t: f64) -> f64 {
        let [a, b, c, d] = self.mat;
        let (s, co) = (PI * t).sin_cos();
        f64::atan2(c * co + d * s, a * co + b * s) / PI
    }

    /// Canonical increasing lift of the base projective action, with
    /// `C(0) ∈ [0, 1)`.
    pub fn base_lift(&self, x: f64) -> f64 {
        let c0 = wrap01(self.raw_angle(0.0));
        let n = x.floor();
        let t = x - n;
        let r = self.raw_angle(t);
        // unique representative of r (mod 1) in [c0, c0 + 1)
        let val = r + (c0 - r).ceil();
        val + n
    }

    /// The lift through the k-fold cover with this branch.
    pub fn eval(&self, x: f64) -> f64 {
        let k = self.k as f64;
        self.base_lift(k * x) / k + self.branch as f64 / k
    }

    /// Verifies `|lhs(x) − rhs(x)| ≤ tol` on a 16-point grid.
    fn agree_on_samples(lhs: impl Fn(f64) -> f64, rhs: impl Fn(f64) -> f64, tol: f64) -> bool {
        (0..16).all(|i| {
            let x = i as f64 / 16.0 + 0.0123;
            (lhs(x) - rhs(x)).abs() <= tol
        })
    }

    pub fn compose(outer: &MobiusMap, inner: &MobiusMap) -> Result<MobiusMap> {
        if outer.k != inner.k {
            return Err(HomeoError::InvalidMobius(format!(
                "cover degrees differ: {} vs {}",
                outer.k, inner.k
            )));
        }
        let [a1, b1, c1, d1] = outer.mat;
        let [a2, b2, c2, d2] = inner.mat;
        let mat = [
            a1 * a2 + b1 * c2,
            a1 * b2 + b1 * d2,
            c1 * a2 + d1 * c2,
            c1 * b2 + d1 * d2,
        ];
        let tol = outer.tol.max(inner.tol);
        let base = MobiusMap::with_raw_branch(mat, outer.k, 0, tol)?;
        let z = outer.eval(inner.eval(0.0));
        let raw = (z - base.eval(0.0)) * outer.k as f64;
        let branch = raw.round();
        if (raw - branch).abs() > 0.01 {
            return Err(HomeoError::Uncertifiable(format!(
                "branch carry {raw} not near an integer"
            )));
        }
        let result = MobiusMap {
            branch: branch as i64,
            ..base
        };
        if !Self::agree_on_samples(
            |x| outer.eval(inner.eval(x)),
            |x| result.eval(x),
            16.0 * tol,
        ) {
            return Err(HomeoError::Uncertifiable(
                "composition disagrees with matrix product beyond tolerance".into(),
            ));
        }
        Ok(result)
    }

    pub fn inverse(&self) -> Result<MobiusMap> {
        let [a, b, c, d] = self.mat;
        let mat = [d, -b, -c, a];
        let base = MobiusMap::with_raw_branch(mat, self.k, 0, self.tol)?;
        let raw = -base.eval(self.eval(0.0)) * self.k as f64;
        let branch = raw.round();
        if (raw - branch).abs() > 0.01 {
            return Err(HomeoError::Uncertifiable(format!(
                "inverse branch {raw} not near an integer"
            )));
        }
        let result = MobiusMap {
            branch: branch as i64,
            ..base
        };
        if !Self::agree_on_samples(|x| result.eval(self.eval(x)), |x| x, 16.0 * self.tol) {
            return Err(HomeoError::Uncertifiable(
                "inverse does not invert within tolerance".into(),
            ));
        }
        Ok(result)
    }

    /// Fixed points of the base projective action for hyperbolic matrices,
    /// as `(repelling, attracting)` in `[0, 1)`.
    pub fn base_fixed_points(&self) -> Option<(f64, f64)> {
        if !self.is_hyperbolic() {
            return None;
        }
        let [a, b, c, d] = self.mat;
        let tr = a + d;
        let disc = (tr * tr - 4.0).sqrt();
        let lam_dom = (tr + tr.signum() * disc) / 2.0;
        let lam_sub = 1.0 / lam_dom;
        let angle_of = |lam: f64| -> f64 {
            // eigenvector of [[a,b],[c,d]] for eigenvalue lam
            let (vx, vy) = if b.abs() > 1e-14 || (lam - a).abs() > 1e-14 {
                (b, lam - a)
            } else {
                (lam - d, c)
            };
            wrap01(f64::atan2(vy, vx) / PI)
        };
        Some((angle_of(lam_sub), angle_of(lam_dom)))
    }

    /// Monotone PL interpolation with certified sup-error at most `tol`.
    /// Breakpoints are dyadic rationals; ordinates are the exact rational
    /// values of the sampled `f64`s.
    pub fn to_pl(&self, tol: f64) -> Result<PlMap> {
        if !(tol > 0.0) {
            return Err(HomeoError::Domain("tolerance must be positive".into()));
        }
        // refine dyadically until each image gap is below tol; monotone
        // interpolation error is bounded by the image gap of the cell
        let mut depth = 4u32;
        loop {
            let n = 1u64 << depth;
            let vals: Vec<f64> = (0..=n).map(|i| self.eval(i as f64 / n as f64)).collect();
            let max_gap = vals
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(0.0_f64, f64::max);
            if max_gap <= tol {
                let mut pts = Vec::with_capacity(n as usize);
                let mut prev: Option<f64> = None;
                for i in 0..n {
                    let v = vals[i as usize];
                    // guard strict monotonicity against f64 ties
                    if let Some(p) = prev {
                        if v <= p {
                            continue;
                        }
                    }
                    prev = Some(v);
                    pts.push((
                        ExactScalar::from_frac(i as i64, n as i64),
                        ExactScalar::from_f64_exact(v),
                    ));
                }
                return PlMap::new(pts);
            }
            depth += 1;
            if depth > 24 {
                return Err(HomeoError::Uncertifiable(format!(
                    "PL sampling did not reach tolerance {tol}"
                )));
            }
        }
    }
}
