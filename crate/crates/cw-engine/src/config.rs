//! Combinatorial input data for the orbit dynamics: labeled periodic-orbit
//! points in cyclic order with per-label rotation data `p_i/q_i`.
//!
//! The rotation datum of a label is stored as the *pair* `(p, q)`, not as a
//! reduced rational: `q` is the number of configured points per period (so
//! `x_i^{j+q} = x_i^j + 1`), and a fixed-point label with `k` marked points
//! carries the datum `0/k`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use homeo_core::ExactScalar;

use crate::error::{CwError, Result};

/// Unreduced rotation datum `p/q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct RotData {
    pub p: u32,
    pub q: u32,
}

impl RotData {
    pub fn new(p: u32, q: u32) -> Self {
        assert!(q > 0, "q must be positive");
        RotData { p, q }
    }

    pub fn value(&self) -> ExactScalar {
        ExactScalar::from_frac(self.p as i64, self.q as i64)
    }
}

impl fmt::Display for RotData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RotData {
    type Err = CwError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || CwError::InvalidConfig(format!("bad rotation datum {s:?}"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (
                p.trim().parse::<u32>().map_err(|_| bad())?,
                q.trim().parse::<u32>().map_err(|_| bad())?,
            ),
            None => (s.trim().parse::<u32>().map_err(|_| bad())?, 1),
        };
        if q == 0 {
            return Err(bad());
        }
        Ok(RotData { p, q })
    }
}

impl TryFrom<String> for RotData {
    type Error = CwError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<RotData> for String {
    fn from(r: RotData) -> String {
        r.to_string()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LabelSpec {
    pub id: u32,
    pub rot: RotData,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleEntry {
    pub id: u32,
    pub pos: ExactScalar,
}

/// A point `x_label^index` of the lifted configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointRef {
    pub label: u32,
    pub index: i64,
}

impl PointRef {
    pub fn new(label: u32, index: i64) -> Self {
        PointRef { label, index }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ConfigWire", into = "ConfigWire")]
pub struct OrbitConfig {
    labels: Vec<LabelSpec>,
    cycle: Vec<CycleEntry>,
    // occurrences[i] = indices into cycle of label i's points, in order
    #[serde(skip)]
    occurrences: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct ConfigWire {
    labels: Vec<LabelSpec>,
    cycle: Vec<CycleEntry>,
}

impl TryFrom<ConfigWire> for OrbitConfig {
    type Error = CwError;
    fn try_from(w: ConfigWire) -> Result<Self> {
        OrbitConfig::new(w.labels, w.cycle)
    }
}

impl From<OrbitConfig> for ConfigWire {
    fn from(c: OrbitConfig) -> ConfigWire {
        ConfigWire {
            labels: c.labels,
            cycle: c.cycle,
        }
    }
}

impl OrbitConfig {
    pub fn new(labels: Vec<LabelSpec>, cycle: Vec<CycleEntry>) -> Result<Self> {
        if labels.is_empty() {
            return Err(CwError::InvalidConfig("no labels".into()));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.rot.q == 0 {
                return Err(CwError::InvalidConfig(format!("label {}: q = 0", l.id)));
            }
            if labels[..i].iter().any(|m| m.id == l.id) {
                return Err(CwError::InvalidConfig(format!("duplicate label id {}", l.id)));
            }
        }
        let one = ExactScalar::one();
        for e in &cycle {
            if e.pos.is_negative() || e.pos >= one {
                return Err(CwError::InvalidConfig(format!(
                    "position {} outside [0, 1)",
                    e.pos
                )));
            }
        }
        for w in cycle.windows(2) {
            if w[0].pos > w[1].pos {
                return Err(CwError::InvalidConfig(
                    "cycle positions not weakly increasing".into(),
                ));
            }
            if w[0].pos == w[1].pos && w[0].id == w[1].id {
                return Err(CwError::InvalidConfig(format!(
                    "label {} has two coincident points of its own",
                    w[0].id
                )));
            }
        }
        // wrap coincidence of the same label across the period boundary
        if cycle.len() >= 2 {
            let first = &cycle[0];
            let last = &cycle[cycle.len() - 1];
            if first.id == last.id && (&last.pos - &first.pos) == ExactScalar::one() {
                return Err(CwError::InvalidConfig(format!(
                    "label {} coincides with itself across the period",
                    first.id
                )));
            }
        }
        let mut occurrences = vec![Vec::new(); labels.len()];
        for (c_idx, e) in cycle.iter().enumerate() {
            let li = labels
                .iter()
                .position(|l| l.id == e.id)
                .ok_or(CwError::UnknownLabel(e.id))?;
            occurrences[li].push(c_idx);
        }
        for (li, l) in labels.iter().enumerate() {
            if occurrences[li].len() != l.rot.q as usize {
                return Err(CwError::InvalidConfig(format!(
                    "label {} appears {} times per period, expected q = {}",
                    l.id,
                    occurrences[li].len(),
                    l.rot.q
                )));
            }
        }
        Ok(OrbitConfig {
            labels,
            cycle,
            occurrences,
        })
    }

    /// Convenience builder: labels `1..=n` with rotation data `rots[i]` and
    /// point positions listed per label.
    pub fn from_positions(rots: &[RotData], positions: &[Vec<ExactScalar>]) -> Result<Self> {
        assert_eq!(rots.len(), positions.len());
        let labels = rots
            .iter()
            .enumerate()
            .map(|(i, r)| LabelSpec {
                id: (i + 1) as u32,
                rot: *r,
            })
            .collect();
        let mut cycle: Vec<CycleEntry> = positions
            .iter()
            .enumerate()
            .flat_map(|(i, ps)| {
                ps.iter().map(move |p| CycleEntry {
                    id: (i + 1) as u32,
                    pos: p.clone(),
                })
            })
            .collect();
        cycle.sort_by(|a, b| a.pos.cmp(&b.pos).then(a.id.cmp(&b.id)));
        OrbitConfig::new(labels, cycle)
    }

    pub fn labels(&self) -> &[LabelSpec] {
        &self.labels
    }

    pub fn cycle(&self) -> &[CycleEntry] {
        &self.cycle
    }

    pub fn label_index(&self, id: u32) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l.id == id)
            .ok_or(CwError::UnknownLabel(id))
    }

    pub(crate) fn occurrences(&self, label_idx: usize) -> &[usize] {
        &self.occurrences[label_idx]
    }

    /// Lifted position of `x_label^index`.
    pub fn position(&self, p: &PointRef) -> Result<ExactScalar> {
        let li = self.label_index(p.label)?;
        let q = self.labels[li].rot.q as i64;
        let r = p.index.rem_euclid(q);
        let shift = (p.index - r) / q;
        let base = &self.cycle[self.occurrences[li][r as usize]].pos;
        Ok(base + &ExactScalar::from_int(shift))
    }

    /// All per-period points as `PointRef`s (index = occurrence number),
    /// in cyclic order.
    pub fn period_points(&self) -> Vec<PointRef> {
        let mut pts: Vec<(usize, PointRef)> = Vec::new();
        for (li, l) in self.labels.iter().enumerate() {
            for (j, &c_idx) in self.occurrences[li].iter().enumerate() {
                pts.push((c_idx, PointRef::new(l.id, j as i64)));
            }
        }
        pts.sort_by_key(|(c_idx, _)| *c_idx);
        pts.into_iter().map(|(_, p)| p).collect()
    }

    /// Smallest gap between cyclically consecutive distinct positions.
    /// `None` when coincident points exist.
    pub fn min_gap(&self) -> Option<ExactScalar> {
        let n = self.cycle.len();
        if n == 0 {
            return None;
        }
        let mut min: Option<ExactScalar> = None;
        for i in 0..n {
            let a = &self.cycle[i].pos;
            let b = if i + 1 < n {
                self.cycle[i + 1].pos.clone()
            } else {
                &self.cycle[0].pos + &ExactScalar::one()
            };
            let gap = &b - a;
            if gap.is_zero() {
                return None;
            }
            min = Some(match min {
                None => gap,
                Some(m) => m.min(gap),
            });
        }
        min
    }

    pub fn has_coincidence(&self) -> bool {
        self.min_gap().is_none()
    }
}

/// A word over the label alphabet with no inverses.  The rightmost letter
/// acts first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositiveWord {
    letters: Vec<u32>,
}

impl PositiveWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if letters.is_empty() {
            return Err(CwError::InvalidWord("empty word".into()));
        }
        Ok(PositiveWord { letters })
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Cyclic rotation by `r` letters.
    pub fn rotate(&self, r: usize) -> PositiveWord {
        let n = self.letters.len();
        let mut letters = Vec::with_capacity(n);
        for i in 0..n {
            letters.push(self.letters[(i + r) % n]);
        }
        PositiveWord { letters }
    }

    /// Parses `"c1 c2 c3"` or `"1 2 3"`.
    pub fn parse(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let tok = tok.strip_prefix('c').unwrap_or(tok);
            let id: u32 = tok
                .parse()
                .map_err(|_| CwError::InvalidWord(format!("bad letter {tok:?}")))?;
            letters.push(id);
        }
        PositiveWord::new(letters)
    }
}

impl fmt::Display for PositiveWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|l| format!("c{l}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}
