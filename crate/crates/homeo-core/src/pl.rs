//! Exact piecewise-linear elements of the group of homeomorphisms of the
//! line commuting with integer translations.
//!
//! A map is stored as breakpoints `(x_i, y_i)` with
//! `0 <= x_0 < x_1 < ... < x_{n-1} < 1`, strictly increasing `y_i`, and the
//! wrap condition `y_{n-1} < y_0 + 1`.  Between breakpoints the map is
//! linear, and it extends to the whole line by `F(x + 1) = F(x) + 1`.
//! All arithmetic is rational and exact.

use crate::error::{HomeoError, Result};
use crate::scalar::ExactScalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlMap {
    pts: Vec<(ExactScalar, ExactScalar)>,
}

impl PlMap {
    /// Validates the breakpoint invariants listed in the module docs.
    pub fn new(pts: Vec<(ExactScalar, ExactScalar)>) -> Result<Self> {
        if pts.is_empty() {
            return Err(HomeoError::InvalidPl("no breakpoints".into()));
        }
        let one = ExactScalar::one();
        for (x, _) in &pts {
            if x.is_negative() || *x >= one {
                return Err(HomeoError::InvalidPl(format!(
                    "breakpoint abscissa {x} outside [0, 1)"
                )));
            }
        }
        for w in pts.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(HomeoError::InvalidPl(format!(
                    "abscissae not strictly increasing at {}",
                    w[1].0
                )));
            }
            if w[0].1 >= w[1].1 {
                return Err(HomeoError::InvalidPl(format!(
                    "ordinates not strictly increasing at {}",
                    w[1].1
                )));
            }
        }
        let last = &pts[pts.len() - 1].1;
        let wrap = &pts[0].1 + ExactScalar::one();
        if *last >= wrap {
            return Err(HomeoError::InvalidPl(format!(
                "wrap violated: last ordinate {last} >= first + 1 = {wrap}"
            )));
        }
        Ok(PlMap { pts })
    }

    pub fn identity() -> Self {
        PlMap {
            pts: vec![(ExactScalar::zero(), ExactScalar::zero())],
        }
    }

    pub fn breakpoints(&self) -> &[(ExactScalar, ExactScalar)] {
        &self.pts
    }

    /// Shifts every ordinate by the integer `n` (a different lift of the
    /// same circle map).
    pub fn shift_by_int(&self, n: i64) -> Self {
        let n = ExactScalar::from_int(n);
        PlMap {
            pts: self
                .pts
                .iter()
                .map(|(x, y)| (x.clone(), y + &n))
                .collect(),
        }
    }

    fn interp(
        x1: &ExactScalar,
        y1: &ExactScalar,
        x2: &ExactScalar,
        y2: &ExactScalar,
        u: &ExactScalar,
    ) -> ExactScalar {
        y1 + &((u - x1) * (y2 - y1) / (x2 - x1))
    }

    pub fn eval(&self, x: &ExactScalar) -> ExactScalar {
        let k = ExactScalar::from_bigint(x.floor_int());
        let u = x - &k;
        let n = self.pts.len();
        let val = if u < self.pts[0].0 {
            // segment from the previous period's last breakpoint
            let (xl, yl) = &self.pts[n - 1];
            let one = ExactScalar::one();
            Self::interp(&(xl - &one), &(yl - &one), &self.pts[0].0, &self.pts[0].1, &u)
        } else {
            let i = match self.pts.binary_search_by(|(bx, _)| bx.cmp(&u)) {
                Ok(i) => i,
                Err(ins) => ins - 1,
            };
            if i + 1 < n {
                let (x1, y1) = &self.pts[i];
                let (x2, y2) = &self.pts[i + 1];
                Self::interp(x1, y1, x2, y2, &u)
            } else {
                let (x1, y1) = &self.pts[n - 1];
                let one = ExactScalar::one();
                Self::interp(
                    x1,
                    y1,
                    &(&self.pts[0].0 + &one),
                    &(&self.pts[0].1 + &one),
                    &u,
                )
            }
        };
        val + k
    }

    /// The exact inverse map (reflect the graph).
    pub fn inverse(&self) -> Self {
        let mut pts: Vec<(ExactScalar, ExactScalar)> = self
            .pts
            .iter()
            .map(|(x, y)| {
                let n = ExactScalar::from_bigint(y.floor_int());
                (y - &n, x - &n)
            })
            .collect();
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        PlMap::new(pts).expect("inverse of a valid map is valid")
    }

    /// Exact composition `outer(inner(x))`.
    pub fn compose(outer: &PlMap, inner: &PlMap) -> PlMap {
        let inner_inv = inner.inverse();
        let mut xs: Vec<ExactScalar> = inner.pts.iter().map(|(x, _)| x.clone()).collect();
        for (bx, _) in &outer.pts {
            xs.push(inner_inv.eval(bx).fract());
        }
        xs.sort();
        xs.dedup();
        let pts: Vec<(ExactScalar, ExactScalar)> = xs
            .into_iter()
            .map(|x| {
                let y = outer.eval(&inner.eval(&x));
                (x, y)
            })
            .collect();
        PlMap::new(pts).expect("composition of valid maps is valid")
    }

    /// `x ↦ f(x) + t`.
    pub fn shift_post(&self, t: &ExactScalar) -> PlMap {
        PlMap {
            pts: self
                .pts
                .iter()
                .map(|(x, y)| (x.clone(), y + t))
                .collect(),
        }
    }

    /// `x ↦ f(x + t)`.
    pub fn shift_pre(&self, t: &ExactScalar) -> PlMap {
        let mut pts: Vec<(ExactScalar, ExactScalar)> = self
            .pts
            .iter()
            .map(|(x, y)| {
                let u = x - t;
                let n = ExactScalar::from_bigint(u.floor_int());
                (u - &n, y - &n)
            })
            .collect();
        pts.sort_by(|a, b| a.0.cmp(&b.0));
        PlMap::new(pts).expect("pre-translation of a valid map is valid")
    }

    /// Exact `(inf, sup)` of the displacement `F(x) - x` over one period.
    /// Both extremes are attained at breakpoints.
    pub fn displacement_bounds(&self) -> (ExactScalar, ExactScalar) {
        let mut lo: Option<ExactScalar> = None;
        let mut hi: Option<ExactScalar> = None;
        for (x, y) in &self.pts {
            let d = y - x;
            lo = Some(match lo {
                None => d.clone(),
                Some(v) => v.min(d.clone()),
            });
            hi = Some(match hi {
                None => d,
                Some(v) => v.max(d),
            });
        }
        (lo.unwrap(), hi.unwrap())
    }

    /// Exact n-fold composition, `n >= 0` (0 gives the identity).
    pub fn pow(&self, n: u32) -> PlMap {
        let mut result = PlMap::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = PlMap::compose(&base, &result);
            }
            n >>= 1;
            if n > 0 {
                base = PlMap::compose(&base, &base);
            }
        }
        result
    }

    /// Two breakpoint representations describe the same map iff they agree
    /// on the union of their breakpoints.
    pub fn eq_map(&self, other: &PlMap) -> bool {
        let mut xs: Vec<ExactScalar> = self.pts.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(other.pts.iter().map(|(x, _)| x.clone()));
        xs.sort();
        xs.dedup();
        xs.iter().all(|x| self.eval(x) == other.eval(x))
    }

    /// All solutions of `F(x) = x + p` with `x` in `[x_0, x_0 + 1)`,
    /// returned as closed intervals `[lo, hi]` (points have `lo == hi`).
    pub fn translated_points(&self, p: &ExactScalar) -> Vec<(ExactScalar, ExactScalar)> {
        let n = self.pts.len();
        let one = ExactScalar::one();
        let mut out: Vec<(ExactScalar, ExactScalar)> = Vec::new();
        for i in 0..n {
            let (x1, y1) = &self.pts[i];
            let (x2, y2) = if i + 1 < n {
                (self.pts[i + 1].0.clone(), self.pts[i + 1].1.clone())
            } else {
                (&self.pts[0].0 + &one, &self.pts[0].1 + &one)
            };
            let dx = &x2 - x1;
            let dy = &y2 - y1;
            // G(x) = F(x) - x - p on [x1, x2], linear with slope (dy - dx)/dx
            let g1 = y1 - x1 - p;
            let g2 = &y2 - &x2 - p;
            if dy == dx {
                if g1.is_zero() {
                    out.push((x1.clone(), x2.clone()));
                }
            } else {
                // root of the linear function through (x1, g1), (x2, g2)
                let denom = &g2 - &g1;
                let root = x1 - &(&g1 * &dx / &denom);
                if root >= *x1 && root <= x2 {
                    out.push((root.clone(), root));
                }
            }
        }
        // merge adjacent touching intervals
        let mut merged: Vec<(ExactScalar, ExactScalar)> = Vec::new();
        for (lo, hi) in out {
            if let Some(last) = merged.last_mut() {
                if lo <= last.1 {
                    if hi > last.1 {
                        last.1 = hi;
                    }
                    continue;
                }
            }
            merged.push((lo, hi));
        }
        merged
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn pl(pairs: &[(i64, i64, i64, i64)]) -> PlMap {
        PlMap::new(
            pairs
                .iter()
                .map(|&(xn, xd, yn, yd)| (rat(xn, xd), rat(yn, yd)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn eval_interpolates_and_wraps() {
        // breakpoints (0, 0), (1/2, 3/4): a map fixing 0
        let f = pl(&[(0, 1, 0, 1), (1, 2, 3, 4)]);
        assert_eq!(f.eval(&rat(0, 1)), rat(0, 1));
        assert_eq!(f.eval(&rat(1, 4)), rat(3, 8));
        assert_eq!(f.eval(&rat(1, 2)), rat(3, 4));
        // on [1/2, 1]: from 3/4 to 1
        assert_eq!(f.eval(&rat(3, 4)), rat(7, 8));
        // equivariance
        assert_eq!(f.eval(&rat(5, 4)), rat(3, 8) + rat(1, 1));
        assert_eq!(f.eval(&rat(-3, 4)), rat(3, 8) - rat(1, 1));
    }

    #[test]
    fn inverse_reflects_breakpoints() {
        let f = pl(&[(0, 1, 1, 4), (1, 2, 3, 4)]);
        let inv = f.inverse();
        assert_eq!(
            inv.breakpoints(),
            &[(rat(1, 4), rat(0, 1)), (rat(3, 4), rat(1, 2))]
        );
        let id = PlMap::compose(&inv, &f);
        assert!(id.eq_map(&PlMap::identity()));
    }

    #[test]
    fn compose_is_exact() {
        let f = pl(&[(0, 1, 1, 4), (1, 2, 3, 4)]);
        let g = pl(&[(0, 1, 1, 3), (2, 3, 5, 6)]);
        let h = PlMap::compose(&f, &g);
        for i in 0..16 {
            let x = rat(i, 16);
            assert_eq!(h.eval(&x), f.eval(&g.eval(&x)));
        }
    }

    #[test]
    fn displacement_bounds_are_exact() {
        let f = pl(&[(0, 1, 1, 4), (1, 2, 3, 4)]);
        let (lo, hi) = f.displacement_bounds();
        assert_eq!(lo, rat(1, 4));
        assert_eq!(hi, rat(1, 4));
        let g = pl(&[(0, 1, 0, 1), (1, 2, 3, 4)]);
        let (lo, hi) = g.displacement_bounds();
        assert_eq!(lo, rat(0, 1));
        assert_eq!(hi, rat(1, 4));
    }

    #[test]
    fn translated_points_enumerates_roots() {
        // f fixes 0 and nothing else in (0,1); f(x) > x in between
        let f = pl(&[(0, 1, 0, 1), (1, 2, 3, 4)]);
        let fixed = f.translated_points(&rat(0, 1));
        assert_eq!(fixed, vec![(rat(0, 1), rat(0, 1))]);
        // a pure translation is fixed-by-p on the whole period
        let t = pl(&[(0, 1, 1, 3)]);
        let sols = t.translated_points(&rat(1, 3));
        assert_eq!(sols.len(), 1);
        assert_eq!(sols[0].0, rat(0, 1));
        assert_eq!(sols[0].1, rat(1, 1));
    }

    #[test]
    fn rejects_bad_breakpoints() {
        assert!(PlMap::new(vec![]).is_err());
        assert!(PlMap::new(vec![(rat(1, 1), rat(0, 1))]).is_err());
        assert!(PlMap::new(vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(0, 1))]).is_err());
        // wrap violation: y_last >= y_0 + 1
        assert!(PlMap::new(vec![(rat(0, 1), rat(0, 1)), (rat(1, 2), rat(3, 2))]).is_err());
    }
}
