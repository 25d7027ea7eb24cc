//! The closed-form maximum for a product of two lifts with prescribed
//! lifted rotation numbers: the supremum of `(p1 + p2 + 1)/q` over
//! integers `q > 0`, `p_i >= 0` with `p1/q <= r` and `p2/q <= s`.

use homeo_core::ExactScalar;

use crate::error::{CwError, Result};

/// Brute-force maximization over `q <= max_denominator`.  For rational
/// `r, s` whose denominators divide some `q <= max_denominator` the
/// supremum is attained and the result is exact.
pub fn cw_pair_sup(r: &ExactScalar, s: &ExactScalar, max_denominator: u32) -> Result<ExactScalar> {
    if r.is_negative() || s.is_negative() {
        return Err(CwError::Domain(
            "pair supremum requires nonnegative rotation numbers".into(),
        ));
    }
    if max_denominator == 0 {
        return Err(CwError::Domain("max_denominator must be positive".into()));
    }
    let mut best: Option<ExactScalar> = None;
    for q in 1..=max_denominator as i64 {
        let qq = ExactScalar::from_int(q);
        let p1 = (&qq * r).floor_int();
        let p2 = (&qq * s).floor_int();
        let num = ExactScalar::from_bigint(p1 + p2 + 1);
        let cand = num / qq;
        best = Some(match best {
            None => cand,
            Some(b) => b.max(cand),
        });
    }
    Ok(best.expect("at least one q"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use homeo_core::rat;

    #[test]
    fn fixed_points_give_one() {
        assert_eq!(
            cw_pair_sup(&rat(0, 1), &rat(0, 1), 64).unwrap(),
            rat(1, 1)
        );
    }

    #[test]
    fn halves_give_three_halves() {
        assert_eq!(
            cw_pair_sup(&rat(1, 2), &rat(1, 2), 64).unwrap(),
            rat(3, 2)
        );
    }

    #[test]
    fn one_over_k_ties_at_one() {
        // q = 1 gives (0+0+1)/1 = 1 and q = 3 gives (1+1+1)/3 = 1: a tie
        assert_eq!(
            cw_pair_sup(&rat(1, 3), &rat(1, 3), 64).unwrap(),
            rat(1, 1)
        );
    }

    #[test]
    fn rejects_negative_inputs() {
        assert!(cw_pair_sup(&rat(-1, 2), &rat(0, 1), 8).is_err());
    }
}
