//! Random generators for PL lifts, used by the property suites.
//! Everything is driven by a caller-supplied RNG so the suites stay
//! reproducible under a fixed seed.

use rand::Rng;

use crate::homeo::LiftedHomeo;
use crate::scalar::ExactScalar;

/// Distinct sorted grid points `j/denom` in `[0, 1)`.
fn sorted_grid_points<R: Rng>(rng: &mut R, count: usize, denom: u32) -> Vec<ExactScalar> {
    assert!(count as u32 <= denom);
    let mut picks: Vec<u32> = Vec::new();
    while picks.len() < count {
        let j = rng.gen_range(0..denom);
        if !picks.contains(&j) {
            picks.push(j);
        }
    }
    picks.sort_unstable();
    picks
        .into_iter()
        .map(|j| ExactScalar::from_frac(j as i64, denom as i64))
        .collect()
}

/// A random PL lift with `breaks` breakpoints on the `1/denom` grid and
/// value at 0 in `[0, 1)`.
pub fn random_pl<R: Rng>(rng: &mut R, breaks: usize, denom: u32) -> LiftedHomeo {
    let breaks = breaks.max(1);
    let xs = sorted_grid_points(rng, breaks, denom);
    let ys = sorted_grid_points(rng, breaks, denom);
    let pts = xs.into_iter().zip(ys).collect();
    LiftedHomeo::pl(pts).expect("grid construction satisfies the PL invariants")
}

/// A random conjugate `h ∘ T_{p/q} ∘ h⁻¹`, which has lifted rotation
/// number exactly `p/q`.
pub fn random_conjugate_of_translation<R: Rng>(
    rng: &mut R,
    p: i64,
    q: i64,
    breaks: usize,
    denom: u32,
) -> LiftedHomeo {
    let h = random_pl(rng, breaks, denom);
    let t = LiftedHomeo::translation(ExactScalar::from_frac(p, q));
    let ht = LiftedHomeo::compose(&h, &t).expect("pl backends compose");
    LiftedHomeo::compose(&ht, &h.invert().expect("pl inverts")).expect("pl backends compose")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::{rott_default, RotResult};
    use crate::scalar::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_pl_is_valid_and_seed_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = random_pl(&mut rng, 4, 64);
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let g = random_pl(&mut rng2, 4, 64);
        assert_eq!(
            serde_json::to_string(&f).unwrap(),
            serde_json::to_string(&g).unwrap()
        );
    }

    #[test]
    fn conjugates_have_prescribed_rotation_number() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, q) in [(1i64, 2i64), (2, 5), (0, 1), (-1, 3)] {
            let f = random_conjugate_of_translation(&mut rng, p, q, 3, 32);
            assert_eq!(rott_default(&f).unwrap(), RotResult::exact(rat(p, q)));
        }
    }
}
