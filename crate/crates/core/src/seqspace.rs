//! Points of the closed unit ball of ℓ∞ with decidable tail structure.
//!
//! A [`BallSeq`] is a finite prefix of explicit complex entries followed by a
//! closed-form tail. The tail forms are deliberately restricted — constants,
//! radial approaches to a boundary point, and finite interleavings of those —
//! because these are exactly the shapes for which suprema, limits superior,
//! and the boundary/interior/approach partition of the index set are
//! decidable. Arbitrary lazy generators are rejected by design: no certified
//! bound could be attached to them.
//!
//! Indices are 1-based throughout, matching the usual sequence notation.

use std::collections::BTreeSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disc::{Attainment, CertifiedValue, AMBIGUOUS_BAND, UNIMODULAR_TOL, UNIT_SLACK};
use crate::error::{Error, Result};

/// Closed-form description of all entries from the tail start onward.
#[derive(Debug, Clone, PartialEq)]
pub enum TailForm {
    /// Every tail entry equals `value` (|value| ≤ 1).
    Constant { value: Complex64 },
    /// Entry `n` is `phase · (1 − a·(n + offset)^(−p))`: a radial approach
    /// to the boundary point `phase` along decreasing power increments.
    /// The `offset` arises from reindexing under restriction.
    RadialPowerApproach {
        phase: Complex64,
        a: f64,
        p: f64,
        offset: u64,
    },
    /// Entries cycle through `parts` (each constant or radial) by position:
    /// entry `n` follows `parts[(n − tail_start) mod parts.len()]`,
    /// evaluated at the global index `n`.
    Interleaved { parts: Vec<TailForm> },
}

impl TailForm {
    /// The all-zeros tail (alias of `Constant { value: 0 }`).
    pub fn zero() -> Self {
        TailForm::Constant {
            value: Complex64::new(0.0, 0.0),
        }
    }

    pub fn constant(value: Complex64) -> Self {
        TailForm::Constant { value }
    }

    pub fn radial(phase: Complex64, a: f64, p: f64) -> Self {
        TailForm::RadialPowerApproach {
            phase,
            a,
            p,
            offset: 0,
        }
    }

    /// Cycle length of the tail pattern (1 for the simple forms).
    pub fn period(&self) -> usize {
        match self {
            TailForm::Interleaved { parts } => parts.len(),
            _ => 1,
        }
    }

    /// The simple form governing global index `n` (≥ `tail_start`).
    pub fn part_at(&self, n: usize, tail_start: usize) -> &TailForm {
        match self {
            TailForm::Interleaved { parts } => &parts[(n - tail_start) % parts.len()],
            simple => simple,
        }
    }

    /// The simple constituent forms, in cycle order.
    pub fn parts(&self) -> &[TailForm] {
        match self {
            TailForm::Interleaved { parts } => parts,
            simple => std::slice::from_ref(simple),
        }
    }

    /// Value of the entry at global index `n` (≥ `tail_start`).
    pub fn eval(&self, n: usize, tail_start: usize) -> Complex64 {
        match self.part_at(n, tail_start) {
            TailForm::Constant { value } => *value,
            TailForm::RadialPowerApproach {
                phase, a, p, offset, ..
            } => {
                let idx = n as f64 + *offset as f64;
                phase * (1.0 - a * idx.powf(-p))
            }
            TailForm::Interleaved { .. } => unreachable!("parts are simple"),
        }
    }

    /// First global index governed by the part with index `part_idx`.
    fn first_index_of_part(&self, part_idx: usize, tail_start: usize) -> usize {
        tail_start + part_idx
    }

    fn validate(&self, tail_start: usize) -> Result<()> {
        match self {
            TailForm::Constant { value } => {
                let m = value.norm();
                if m > 1.0 + UNIT_SLACK {
                    return Err(Error::Descriptor {
                        field: "tail.value".into(),
                        message: format!("constant tail has modulus {m}, exceeding 1"),
                    });
                }
                Ok(())
            }
            TailForm::RadialPowerApproach {
                phase, a, p, offset,
            } => {
                if (phase.norm() - 1.0).abs() > UNIMODULAR_TOL {
                    return Err(Error::Descriptor {
                        field: "tail.phase".into(),
                        message: format!("phase has modulus {}, expected 1", phase.norm()),
                    });
                }
                if !(a.is_finite() && *a > 0.0) {
                    return Err(Error::Descriptor {
                        field: "tail.a".into(),
                        message: format!("a = {a} must be a positive finite real"),
                    });
                }
                if !(p.is_finite() && *p > 0.0) {
                    return Err(Error::Descriptor {
                        field: "tail.p".into(),
                        message: format!("p = {p} must be a positive finite real"),
                    });
                }
                // The approach term must stay in (0, 1] over the covered
                // indices; it decreases in n, so the first index decides.
                let first = tail_start as f64 + *offset as f64;
                let step = a * first.powf(-p);
                if step > 1.0 {
                    return Err(Error::Descriptor {
                        field: "tail.a".into(),
                        message: format!(
                            "a·(n+offset)^(-p) = {step} exceeds 1 at the first tail index {tail_start}"
                        ),
                    });
                }
                Ok(())
            }
            TailForm::Interleaved { parts } => {
                if parts.len() < 2 {
                    return Err(Error::Descriptor {
                        field: "tail.parts".into(),
                        message: "interleaved tail needs at least two parts".into(),
                    });
                }
                for (i, part) in parts.iter().enumerate() {
                    if matches!(part, TailForm::Interleaved { .. }) {
                        return Err(Error::Descriptor {
                            field: format!("tail.parts[{i}]"),
                            message: "interleaved parts cannot nest".into(),
                        });
                    }
                    part.validate(self.first_index_of_part(i, tail_start))?;
                }
                Ok(())
            }
        }
    }
}

/// A point of the closed unit ball of ℓ∞: explicit prefix entries followed
/// by a closed-form tail starting at index `prefix.len() + 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSeq {
    prefix: Vec<Complex64>,
    tail: TailForm,
}

/// Modulus with the unimodular band collapsed to exactly 1.
pub(crate) fn effective_modulus(v: Complex64) -> f64 {
    let m = v.norm();
    if m >= 1.0 - UNIMODULAR_TOL {
        1.0
    } else {
        m
    }
}

impl BallSeq {
    pub fn new(prefix: Vec<Complex64>, tail: TailForm) -> Result<Self> {
        for (i, entry) in prefix.iter().enumerate() {
            let m = entry.norm();
            if m > 1.0 + UNIT_SLACK {
                return Err(Error::EntryOutsideClosedDisc {
                    index: i + 1,
                    modulus: m,
                });
            }
        }
        tail.validate(prefix.len() + 1)?;
        Ok(BallSeq { prefix, tail })
    }

    /// The zero sequence.
    pub fn zeros() -> Self {
        BallSeq {
            prefix: Vec::new(),
            tail: TailForm::zero(),
        }
    }

    /// Constant sequence `value, value, ...`.
    pub fn constant(value: Complex64) -> Result<Self> {
        Self::new(Vec::new(), TailForm::constant(value))
    }

    /// Finitely supported sequence: the given entries, then zeros.
    pub fn finite(entries: Vec<Complex64>) -> Result<Self> {
        Self::new(entries, TailForm::zero())
    }

    /// Sequence `phase·(1 − a·n^(−p))` from the first index on.
    pub fn radial(phase: Complex64, a: f64, p: f64) -> Result<Self> {
        Self::new(Vec::new(), TailForm::radial(phase, a, p))
    }

    pub fn prefix(&self) -> &[Complex64] {
        &self.prefix
    }

    pub fn tail(&self) -> &TailForm {
        &self.tail
    }

    /// Index of the first entry governed by the tail form (1-based).
    pub fn tail_start(&self) -> usize {
        self.prefix.len() + 1
    }

    /// Entry at 1-based index `n`.
    pub fn entry(&self, n: usize) -> Complex64 {
        assert!(n >= 1, "sequence indices are 1-based");
        if n <= self.prefix.len() {
            self.prefix[n - 1]
        } else {
            self.tail.eval(n, self.tail_start())
        }
    }

    /// Certified enclosure of `sup_n |entry(n)|` with an attainment flag.
    ///
    /// The closed tail forms make the supremum exact: radial parts approach
    /// 1 without reaching it, constants attain their modulus at every tail
    /// index. The returned enclosure therefore has width 0 ≤ `tol`.
    pub fn sup_norm(&self, tol: f64) -> CertifiedValue {
        assert!(tol > 0.0, "tolerance must be positive");
        // candidates: (value, attained_at: Option<index>)
        let mut best: Option<(f64, Option<usize>)> = None;
        let mut consider = |value: f64, at: Option<usize>| {
            let better = match &best {
                None => true,
                Some((v, a)) => {
                    value > *v || (value == *v && a.is_none() && at.is_some())
                }
            };
            if better {
                best = Some((value, at));
            }
        };
        for (i, entry) in self.prefix.iter().enumerate() {
            consider(effective_modulus(*entry), Some(i + 1));
        }
        let t = self.tail_start();
        for (i, part) in self.tail.parts().iter().enumerate() {
            let first = self.tail.first_index_of_part(i, t);
            match part {
                TailForm::Constant { value } => {
                    consider(effective_modulus(*value), Some(first));
                }
                TailForm::RadialPowerApproach { .. } => {
                    // entries increase strictly toward 1
                    consider(1.0, None);
                }
                TailForm::Interleaved { .. } => unreachable!("parts are simple"),
            }
        }
        let (value, at) = best.expect("sequence has at least a tail");
        let attained = match at {
            Some(n) => Attainment::AttainedAt(n),
            None => Attainment::SupremumNotAttained,
        };
        CertifiedValue::exact(value, attained)
    }

    /// Natural projection onto the first `n` coordinates, zero-padded back
    /// into ℓ∞. Padding with equal coordinates leaves pairwise distances of
    /// projected points unchanged, so these projections reproduce the
    /// finite-dimensional distances.
    pub fn project_prefix(&self, n: usize) -> BallSeq {
        assert!(n >= 1, "projection length must be at least 1");
        let prefix = (1..=n).map(|i| self.entry(i)).collect();
        BallSeq {
            prefix,
            tail: TailForm::zero(),
        }
    }

    /// Restriction to a kept index set, reindexed in increasing order.
    ///
    /// Supported patterns: any finite set, and sets whose infinite part is
    /// an arithmetic progression. Stride-1 progressions shift the tail form;
    /// progressions with larger stride survive only over constant tails.
    /// Anything else fails with an explicit unsupported-restriction error:
    /// a limit of the representation, not of the mathematics.
    pub fn restrict(&self, keep: &KeepSet) -> Result<BallSeq> {
        match keep.tail {
            None => {
                let entries = keep.explicit.iter().map(|&n| self.entry(n)).collect();
                BallSeq::new(entries, TailForm::zero())
            }
            Some(TailKeep { start, stride: 1 }) => {
                let t_star = start.max(self.tail_start());
                let mut below: BTreeSet<usize> =
                    keep.explicit.iter().copied().filter(|&n| n < t_star).collect();
                below.extend(start..t_star);
                let prefix: Vec<Complex64> = below.iter().map(|&n| self.entry(n)).collect();
                let new_start = prefix.len() + 1;
                let tail = self.shift_tail(t_star, new_start)?;
                BallSeq::new(prefix, tail)
            }
            Some(TailKeep { start, stride }) => {
                // First progression member inside the tail region.
                let first_tail = if start >= self.tail_start() {
                    start
                } else {
                    let skip = (self.tail_start() - start).div_ceil(stride);
                    start + skip * stride
                };
                for &n in keep.explicit.iter().filter(|&&n| n >= first_tail) {
                    if n < start || (n - start) % stride != 0 {
                        return Err(Error::UnsupportedRestriction(format!(
                            "explicit index {n} interleaves the kept stride-{stride} \
                             progression; the result has no closed tail form"
                        )));
                    }
                }
                let mut below: BTreeSet<usize> =
                    keep.explicit.iter().copied().filter(|&n| n < first_tail).collect();
                below.extend((start..first_tail).step_by(stride));
                let prefix: Vec<Complex64> = below.iter().map(|&n| self.entry(n)).collect();
                let tail = self.subsample_tail(first_tail, stride)?;
                BallSeq::new(prefix, tail)
            }
        }
    }

    /// Tail form seen from `old_from` onward, reindexed to start at
    /// `new_start` with stride 1.
    fn shift_tail(&self, old_from: usize, new_start: usize) -> Result<TailForm> {
        let delta = (old_from - new_start) as u64;
        let shift_simple = |part: &TailForm| -> TailForm {
            match part {
                TailForm::Constant { value } => TailForm::Constant { value: *value },
                TailForm::RadialPowerApproach {
                    phase, a, p, offset,
                } => TailForm::RadialPowerApproach {
                    phase: *phase,
                    a: *a,
                    p: *p,
                    offset: offset + delta,
                },
                TailForm::Interleaved { .. } => unreachable!("parts are simple"),
            }
        };
        Ok(match &self.tail {
            TailForm::Interleaved { parts } => {
                let period = parts.len();
                let rot = (old_from - self.tail_start()) % period;
                let rotated: Vec<TailForm> = (0..period)
                    .map(|i| shift_simple(&parts[(i + rot) % period]))
                    .collect();
                TailForm::Interleaved { parts: rotated }
            }
            simple => shift_simple(simple),
        })
    }

    /// Every `stride`-th tail entry from `first_tail` on, as a closed tail.
    fn subsample_tail(&self, first_tail: usize, stride: usize) -> Result<TailForm> {
        let period = self.tail.period();
        let single_part = if period == 1 {
            self.tail.part_at(first_tail, self.tail_start())
        } else if stride % period == 0 {
            self.tail.part_at(first_tail, self.tail_start())
        } else {
            return Err(Error::UnsupportedRestriction(format!(
                "stride {stride} does not align with the interleaved period {period}"
            )));
        };
        match single_part {
            TailForm::Constant { value } => Ok(TailForm::Constant { value: *value }),
            TailForm::RadialPowerApproach { .. } => Err(Error::UnsupportedRestriction(format!(
                "keeping every {stride}-th index of a radial-power tail breaks the \
                 closed form; only stride-1 reindexing is representable"
            ))),
            TailForm::Interleaved { .. } => unreachable!("parts are simple"),
        }
    }

    /// Canonical boundary/interior/approach partition of the index set.
    ///
    /// N₁ holds the indices with |z_n| = 1, decided from the representation
    /// (unimodular constants and unimodular prefix entries). The remainder
    /// splits canonically: when some coordinates approach modulus 1, the
    /// threshold (1 + s₀)/2 separates them from the coordinates certified
    /// below s₀ < 1; when every non-boundary coordinate approaches 1, the
    /// whole remainder is the approach set.
    pub fn partition(&self, tol: f64) -> Result<Partition> {
        assert!(tol > 0.0, "tolerance must be positive");
        let t = self.tail_start();

        let classify_entry = |index: usize, v: Complex64| -> Result<Option<f64>> {
            // Ok(None) = boundary; Ok(Some(m)) = interior with modulus m.
            let m = v.norm();
            if m >= 1.0 - UNIMODULAR_TOL {
                Ok(None)
            } else if m > 1.0 - AMBIGUOUS_BAND {
                Err(Error::AmbiguousModulus { index, modulus: m })
            } else {
                Ok(Some(m))
            }
        };

        let mut prefix_labels = Vec::with_capacity(self.prefix.len());
        let mut interior_max: Option<f64> = None; // s0 candidates
        for (i, &v) in self.prefix.iter().enumerate() {
            match classify_entry(i + 1, v)? {
                None => prefix_labels.push(PartLabel::Boundary),
                Some(m) => {
                    prefix_labels.push(PartLabel::Interior);
                    interior_max = Some(interior_max.map_or(m, |x: f64| x.max(m)));
                }
            }
        }

        // First pass over tail parts: boundary / interior-constant / radial.
        enum Raw {
            Boundary,
            InteriorConst,
            Radial { a: f64, p: f64, offset: u64 },
        }
        let mut raw = Vec::new();
        for (i, part) in self.tail.parts().iter().enumerate() {
            let first = self.tail.first_index_of_part(i, t);
            match part {
                TailForm::Constant { value } => match classify_entry(first, *value)? {
                    None => raw.push(Raw::Boundary),
                    Some(m) => {
                        raw.push(Raw::InteriorConst);
                        interior_max = Some(interior_max.map_or(m, |x: f64| x.max(m)));
                    }
                },
                TailForm::RadialPowerApproach {
                    a, p, offset, ..
                } => raw.push(Raw::Radial {
                    a: *a,
                    p: *p,
                    offset: *offset,
                }),
                TailForm::Interleaved { .. } => unreachable!("parts are simple"),
            }
        }

        let has_radial = raw.iter().any(|r| matches!(r, Raw::Radial { .. }));
        // Threshold applies only when approach coordinates coexist with
        // coordinates certified away from the boundary.
        let threshold = match (has_radial, interior_max) {
            (true, Some(s0)) => Some((1.0 + s0) / 2.0),
            _ => None,
        };

        let mut interior_sup = interior_max;
        let tail_rules: Vec<TailRule> = raw
            .iter()
            .enumerate()
            .map(|(i, r)| match r {
                Raw::Boundary => TailRule::Uniform(PartLabel::Boundary),
                Raw::InteriorConst => TailRule::Uniform(PartLabel::Interior),
                Raw::Radial { a, p, offset } => match threshold {
                    None => TailRule::Uniform(PartLabel::Approach),
                    Some(theta) => {
                        // Largest index with 1 − a(n+offset)^(−p) ≤ θ; the
                        // entries below it belong to the interior set.
                        let first = self.tail.first_index_of_part(i, t);
                        let bound = (a / (1.0 - theta)).powf(1.0 / p) - *offset as f64;
                        let last_low = bound.floor();
                        if last_low >= first as f64 {
                            // The modulus at the last sub-threshold index of
                            // this part's progression refines the interior sup.
                            let period = self.tail.period() as f64;
                            let steps = ((last_low - first as f64) / period).floor();
                            let n_last = first as f64 + steps * period;
                            let m = 1.0 - a * (n_last + *offset as f64).powf(-p);
                            if m > 0.0 {
                                interior_sup =
                                    Some(interior_sup.map_or(m, |x: f64| x.max(m)));
                            }
                        }
                        TailRule::RadialSplit {
                            a: *a,
                            p: *p,
                            offset: *offset,
                            theta,
                        }
                    }
                },
            })
            .collect();

        Ok(Partition {
            prefix_labels,
            tail_rules,
            tail_start: t,
            threshold,
            interior_sup,
        })
    }
}

/// Index set for [`BallSeq::restrict`]: a finite explicit set, optionally
/// joined with an arithmetic progression `start, start+stride, ...`.
#[derive(Debug, Clone, PartialEq)]
pub struct KeepSet {
    explicit: BTreeSet<usize>,
    tail: Option<TailKeep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailKeep {
    pub start: usize,
    pub stride: usize,
}

impl KeepSet {
    pub fn new(explicit: impl IntoIterator<Item = usize>, tail: Option<TailKeep>) -> Result<Self> {
        let explicit: BTreeSet<usize> = explicit.into_iter().collect();
        if explicit.iter().next() == Some(&0) {
            return Err(Error::UnsupportedRestriction(
                "indices are 1-based; 0 is not a valid index".into(),
            ));
        }
        if let Some(tk) = tail {
            if tk.start < 1 || tk.stride < 1 {
                return Err(Error::UnsupportedRestriction(format!(
                    "progression start {} / stride {} must both be at least 1",
                    tk.start, tk.stride
                )));
            }
        }
        if explicit.is_empty() && tail.is_none() {
            return Err(Error::UnsupportedRestriction(
                "the kept index set must be nonempty".into(),
            ));
        }
        Ok(KeepSet { explicit, tail })
    }

    pub fn finite(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::new(indices, None)
    }

    /// All indices from `start` on (plus nothing else).
    pub fn from_index(start: usize) -> Result<Self> {
        Self::new([], Some(TailKeep { start, stride: 1 }))
    }

    /// The identity keep set.
    pub fn all() -> Self {
        KeepSet {
            explicit: BTreeSet::new(),
            tail: Some(TailKeep { start: 1, stride: 1 }),
        }
    }

    pub fn contains(&self, n: usize) -> bool {
        self.explicit.contains(&n)
            || self
                .tail
                .is_some_and(|tk| n >= tk.start && (n - tk.start) % tk.stride == 0)
    }
}

/// Which of the three canonical index classes an index belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartLabel {
    /// N₁: |z_n| = 1 exactly.
    Boundary,
    /// N₂: modulus certified below a bound strictly less than 1.
    Interior,
    /// N₃: moduli approach 1 without reaching it.
    Approach,
}

#[derive(Debug, Clone, PartialEq)]
enum TailRule {
    Uniform(PartLabel),
    /// Radial part split by the canonical threshold: approach above,
    /// interior at or below.
    RadialSplit { a: f64, p: f64, offset: u64, theta: f64 },
}

/// Canonical (N₁, N₂, N₃) partition of the index set of a [`BallSeq`].
///
/// Membership is a total function of the index: explicit labels over the
/// prefix, and per-part rules over the tail. The three classes are pairwise
/// disjoint and cover ℕ by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    prefix_labels: Vec<PartLabel>,
    tail_rules: Vec<TailRule>,
    tail_start: usize,
    threshold: Option<f64>,
    interior_sup: Option<f64>,
}

impl Partition {
    /// Class of the 1-based index `n`.
    pub fn label(&self, n: usize) -> PartLabel {
        assert!(n >= 1, "sequence indices are 1-based");
        if n < self.tail_start {
            return self.prefix_labels[n - 1];
        }
        match &self.tail_rules[(n - self.tail_start) % self.tail_rules.len()] {
            TailRule::Uniform(label) => *label,
            TailRule::RadialSplit { a, p, offset, theta } => {
                let m = 1.0 - a * (n as f64 + *offset as f64).powf(-*p);
                if m > *theta {
                    PartLabel::Approach
                } else {
                    PartLabel::Interior
                }
            }
        }
    }

    /// Prefix indices in N₁.
    pub fn boundary_prefix_indices(&self) -> Vec<usize> {
        self.prefix_labels
            .iter()
            .enumerate()
            .filter(|(_, l)| **l == PartLabel::Boundary)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Whether infinitely many indices carry `label`.
    pub fn is_infinite(&self, label: PartLabel) -> bool {
        self.tail_rules.iter().any(|r| match r {
            TailRule::Uniform(l) => *l == label,
            // a radial split is eventually all-approach with finitely many
            // interior exceptions
            TailRule::RadialSplit { .. } => label == PartLabel::Approach,
        })
    }

    /// Whether any index at all carries `label` (scans the finite
    /// exceptional region plus the tail rules).
    pub fn is_nonempty(&self, label: PartLabel) -> bool {
        if self.is_infinite(label) {
            return true;
        }
        if self.prefix_labels.contains(&label) {
            return true;
        }
        // finitely many sub-threshold radial exceptions
        if label == PartLabel::Interior {
            for (i, rule) in self.tail_rules.iter().enumerate() {
                if let TailRule::RadialSplit { .. } = rule {
                    let first = self.tail_start + i;
                    if self.label(first) == PartLabel::Interior {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Certified supremum of |z_n| over N₂, when N₂ is nonempty.
    /// Always strictly below 1.
    pub fn interior_sup(&self) -> Option<f64> {
        if self.is_nonempty(PartLabel::Interior) {
            self.interior_sup.or(Some(0.0))
        } else {
            None
        }
    }

    /// Canonical split threshold (1 + s₀)/2, when in force.
    pub fn threshold(&self) -> Option<f64> {
        self.threshold
    }

    pub fn tail_start(&self) -> usize {
        self.tail_start
    }

    /// Tail-part labels in cycle order (approach parts report `Approach`
    /// even where early exceptions fall in the interior class).
    pub fn tail_part_labels(&self) -> Vec<PartLabel> {
        self.tail_rules
            .iter()
            .map(|r| match r {
                TailRule::Uniform(l) => *l,
                TailRule::RadialSplit { .. } => PartLabel::Approach,
            })
            .collect()
    }
}

// ---------------------------------------------------------------------------
// JSON descriptors
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct BallSeqDto {
    #[serde(default)]
    prefix: Vec<(f64, f64)>,
    tail: TailDto,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum TailDto {
    Zero,
    Constant {
        value: (f64, f64),
    },
    RadialPower {
        phase: (f64, f64),
        a: f64,
        p: f64,
        #[serde(default, skip_serializing_if = "is_zero_offset")]
        offset: u64,
    },
    Interleaved {
        parts: Vec<TailDto>,
    },
}

fn is_zero_offset(offset: &u64) -> bool {
    *offset == 0
}

fn tail_to_dto(tail: &TailForm) -> TailDto {
    match tail {
        TailForm::Constant { value } => TailDto::Constant {
            value: (value.re, value.im),
        },
        TailForm::RadialPowerApproach {
            phase, a, p, offset,
        } => TailDto::RadialPower {
            phase: (phase.re, phase.im),
            a: *a,
            p: *p,
            offset: *offset,
        },
        TailForm::Interleaved { parts } => TailDto::Interleaved {
            parts: parts.iter().map(tail_to_dto).collect(),
        },
    }
}

fn tail_from_dto(dto: &TailDto) -> TailForm {
    match dto {
        TailDto::Zero => TailForm::zero(),
        TailDto::Constant { value } => TailForm::constant(Complex64::new(value.0, value.1)),
        TailDto::RadialPower { phase, a, p, offset } => TailForm::RadialPowerApproach {
            phase: Complex64::new(phase.0, phase.1),
            a: *a,
            p: *p,
            offset: *offset,
        },
        TailDto::Interleaved { parts } => TailForm::Interleaved {
            parts: parts.iter().map(tail_from_dto).collect(),
        },
    }
}

/// Parses the JSON descriptor
/// `{"prefix": [[re,im],...], "tail": {"kind": ..., ...}}`,
/// validating every invariant. Errors name the offending field.
pub fn parse_descriptor(text: &str) -> Result<BallSeq> {
    let dto: BallSeqDto = serde_json::from_str(text).map_err(|e| Error::Descriptor {
        field: "<descriptor>".into(),
        message: e.to_string(),
    })?;
    let prefix = dto
        .prefix
        .iter()
        .map(|&(re, im)| Complex64::new(re, im))
        .collect();
    BallSeq::new(prefix, tail_from_dto(&dto.tail))
}

/// Canonical compact JSON form of a sequence descriptor. Parsing the output
/// and re-serializing reproduces it byte for byte.
pub fn to_descriptor(z: &BallSeq) -> String {
    let dto = BallSeqDto {
        prefix: z.prefix.iter().map(|c| (c.re, c.im)).collect(),
        tail: tail_to_dto(&z.tail),
    };
    serde_json::to_string(&dto).expect("descriptor serialization cannot fail")
}
