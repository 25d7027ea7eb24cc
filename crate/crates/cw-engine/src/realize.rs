//! Realization of a configuration by explicit PL homeomorphisms that
//! attain the combinatorial bound.
//!
//! Each `d_i` fixes the configured orbit (`x_i^j ↦ x_i^{j+p_i}`) and
//! contracts `(x_i^{j-1}+ε, x_i^j]` into `(x_i^{j+p_i}−ε, x_i^{j+p_i}]`.
//! For ε below a quarter of the minimum gap, the word product then carries
//! an exact periodic point alongside the maximizing combinatorial cycle,
//! so its lifted rotation number equals the bound exactly.

use homeo_core::{ExactScalar, LiftedHomeo};

use crate::config::{OrbitConfig, PointRef};
use crate::error::{CwError, Result};

/// Default contraction: one quarter of the minimum configured gap.
pub fn default_contraction(config: &OrbitConfig) -> Result<ExactScalar> {
    let gap = config
        .min_gap()
        .ok_or_else(|| CwError::Realize("coincident points cannot be realized".into()))?;
    Ok(gap / ExactScalar::from_int(4))
}

/// PL maps `d_i` (in label order) realizing the configuration.
pub fn realize(config: &OrbitConfig, contraction: &ExactScalar) -> Result<Vec<LiftedHomeo>> {
    let gap = config
        .min_gap()
        .ok_or_else(|| CwError::Realize("coincident points cannot be realized".into()))?;
    if contraction <= &ExactScalar::zero() || *contraction >= gap {
        return Err(CwError::Realize(format!(
            "contraction {contraction} not in (0, {gap})"
        )));
    }
    let mut out = Vec::with_capacity(config.labels().len());
    for spec in config.labels() {
        let id = spec.id;
        let q = spec.rot.q as i64;
        let lifted = |j: i64| config.position(&PointRef::new(id, j));
        let mut pts: Vec<(ExactScalar, ExactScalar)> = Vec::with_capacity(2 * q as usize);
        for j in 0..q {
            let x = lifted(j)?;
            let y = lifted(j + spec.rot.p as i64)?;
            let y_next = lifted(j + 1 + spec.rot.p as i64)?;
            pts.push((x.clone(), y));
            pts.push((&x + contraction, &y_next - contraction));
        }
        // reduce abscissae mod 1, shifting ordinates along
        let mut normalized: Vec<(ExactScalar, ExactScalar)> = pts
            .into_iter()
            .map(|(x, y)| {
                let n = ExactScalar::from_bigint(x.floor_int());
                (&x - &n, &y - &n)
            })
            .collect();
        normalized.sort_by(|a, b| a.0.cmp(&b.0));
        out.push(LiftedHomeo::pl_lift(normalized)?);
    }
    Ok(out)
}

/// The product of realized maps along `word` (rightmost letter first).
pub fn word_product(
    config: &OrbitConfig,
    homeos: &[LiftedHomeo],
    word: &crate::config::PositiveWord,
) -> Result<LiftedHomeo> {
    let mut acc: Option<LiftedHomeo> = None;
    for &letter in word.letters().iter() {
        let li = config.label_index(letter)?;
        let h = &homeos[li];
        acc = Some(match acc {
            None => h.clone(),
            Some(a) => LiftedHomeo::compose(&a, h)?,
        });
    }
    Ok(acc.expect("word is nonempty"))
}
