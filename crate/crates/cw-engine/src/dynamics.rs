//! The deterministic dynamical system on configured orbit points, and the
//! translation-number bound it certifies.
//!
//! A letter `c` moves a point rightward to the first configured `c`-point
//! at position `>=` the current one (so a coincident point counts as
//! already reached), then skips `p_c` further `c`-points.  Periodic orbits
//! of a word under this action certify upper bounds on the lifted rotation
//! number of the corresponding product of homeomorphisms, and the maximum
//! cycle value over all starting points is the bound this data yields.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use homeo_core::ExactScalar;

use crate::config::{OrbitConfig, PointRef, PositiveWord};
use crate::error::{CwError, Result};

/// One application of letter `label` to `point`.
pub fn step(config: &OrbitConfig, label: u32, point: &PointRef) -> Result<PointRef> {
    let li = config.label_index(label)?;
    // validate the point itself
    let pos = config.position(point)?;
    let spec = &config.labels()[li];
    let (p, q) = (spec.rot.p as i64, spec.rot.q as i64);

    // First occurrence of `label` with position >= pos.  Work per period:
    // positions of label occurrences are base[r] + shift.
    let bases: Vec<ExactScalar> = config
        .occurrences(li)
        .iter()
        .map(|&c| config.cycle()[c].pos.clone())
        .collect();
    let shift_int: i64 = {
        use num_traits::ToPrimitive;
        pos.floor_int()
            .to_i64()
            .ok_or_else(|| CwError::Domain("point index out of range".into()))?
    };
    let frac = pos.fract();
    // find smallest r with bases[r] >= frac, else wrap to next period
    let first = match bases.iter().position(|b| *b >= frac) {
        Some(r) => shift_int * q + r as i64,
        None => (shift_int + 1) * q,
    };
    Ok(PointRef::new(label, first + p))
}

/// Certificate of an `l/m`-periodic orbit: `w^m · start = start + l`,
/// witnessed by the full per-letter trace (starting point included).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodicOrbitCertificate {
    pub start: PointRef,
    pub translation: i64,
    pub period: u32,
    pub trace: Vec<PointRef>,
}

impl PeriodicOrbitCertificate {
    pub fn value(&self) -> ExactScalar {
        ExactScalar::from_frac(self.translation, self.period as i64)
    }

    /// Replays the trace through `step` and checks the closing identity.
    pub fn verify(&self, config: &OrbitConfig, word: &PositiveWord) -> Result<()> {
        let mut cur = self.start;
        let mut k = 0usize;
        if self.trace.first() != Some(&self.start) {
            return Err(CwError::Domain("trace does not begin at start".into()));
        }
        for _ in 0..self.period {
            for &letter in word.letters().iter().rev() {
                cur = step(config, letter, &cur)?;
                k += 1;
                if self.trace.get(k) != Some(&cur) {
                    return Err(CwError::Domain(format!("trace mismatch at step {k}")));
                }
            }
        }
        let li = config.label_index(self.start.label)?;
        let q = config.labels()[li].rot.q as i64;
        if cur.label != self.start.label
            || cur.index != self.start.index + self.translation * q
        {
            return Err(CwError::Domain("closing identity fails".into()));
        }
        Ok(())
    }
}

fn word_apply(
    config: &OrbitConfig,
    word: &PositiveWord,
    point: &PointRef,
    trace: Option<&mut Vec<PointRef>>,
) -> Result<PointRef> {
    let mut cur = *point;
    let mut trace = trace;
    for &letter in word.letters().iter().rev() {
        cur = step(config, letter, &cur)?;
        if let Some(t) = trace.as_deref_mut() {
            t.push(cur);
        }
    }
    Ok(cur)
}

fn cycle_from(
    config: &OrbitConfig,
    word: &PositiveWord,
    start: PointRef,
) -> Result<PeriodicOrbitCertificate> {
    // states are (label, index mod q); the translation accumulates in the
    // integer part of the index
    let mut seen: HashMap<(u32, i64), (u32, i64)> = HashMap::new();
    let mut path: Vec<PointRef> = vec![start];
    let mut cur = start;
    let mut steps: u32 = 0;
    loop {
        let li = config.label_index(cur.label)?;
        let q = config.labels()[li].rot.q as i64;
        let key = (cur.label, cur.index.rem_euclid(q));
        if let Some(&(s0, idx0)) = seen.get(&key) {
            let m = steps - s0;
            let l = (cur.index - idx0) / q;
            let w = word.len() as usize;
            let lo = s0 as usize * w;
            let hi = steps as usize * w;
            return Ok(PeriodicOrbitCertificate {
                start: path[lo],
                translation: l,
                period: m,
                trace: path[lo..=hi].to_vec(),
            });
        }
        seen.insert(key, (steps, cur.index));
        let mut seg: Vec<PointRef> = Vec::with_capacity(word.len());
        cur = word_apply(config, word, &cur, Some(&mut seg))?;
        path.extend(seg);
        steps += 1;
    }
}

/// The tightest upper bound the configuration certifies for the lifted
/// rotation number of `word`, as the maximum cycle translation number over
/// every starting point, with a replayable certificate.
pub fn word_translation_bound(
    config: &OrbitConfig,
    word: &PositiveWord,
) -> Result<(ExactScalar, PeriodicOrbitCertificate)> {
    for &l in word.letters() {
        config.label_index(l)?;
    }
    let starts = config.period_points();
    let certs: Vec<Result<PeriodicOrbitCertificate>> = starts
        .par_iter()
        .map(|s| cycle_from(config, word, *s))
        .collect();
    let mut best: Option<PeriodicOrbitCertificate> = None;
    for c in certs {
        let c = c?;
        best = Some(match best {
            None => c,
            Some(b) => {
                if c.value() > b.value() {
                    c
                } else {
                    b
                }
            }
        });
    }
    let best = best.expect("configuration has at least one point");
    Ok((best.value(), best))
}
