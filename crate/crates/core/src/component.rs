//! Gauge-homogeneous pieces of an element: sparse coefficient matrices over
//! word pairs of fixed lengths.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::Word;

/// Product of two monomials `(s_α t_β)(s_γ t_δ)`.
///
/// Returns `None` when the product vanishes, i.e. when neither of `β`, `γ`
/// is a prefix of the other.
pub fn mono_mul(left: (&Word, &Word), right: (&Word, &Word)) -> Result<Option<(Word, Word)>> {
    let (alpha, beta) = left;
    let (gamma, delta) = right;
    let d = alpha.d();
    for w in [beta, gamma, delta] {
        if w.d() != d {
            return Err(Error::AlphabetMismatch { left: d, right: w.d() });
        }
    }
    if let Some(rest) = gamma.strip_prefix(beta) {
        return Ok(Some((alpha.join(&rest), delta.clone())));
    }
    if let Some(rest) = beta.strip_prefix(gamma) {
        return Ok(Some((alpha.clone(), delta.join(&rest))));
    }
    Ok(None)
}

/// The degree-`n` part of an element, stored at a single level `m`.
///
/// Every entry `(α, β) → λ` stands for `λ s_α t_β` with
/// `l(α) = m + max(n, 0)` and `l(β) = m + max(-n, 0)`. Entries are never zero.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedComponent {
    d: u32,
    degree: i64,
    level: usize,
    entries: BTreeMap<(Word, Word), Scalar>,
}

pub(crate) fn row_len(degree: i64, level: usize) -> usize {
    level + degree.max(0) as usize
}

pub(crate) fn col_len(degree: i64, level: usize) -> usize {
    level + (-degree).max(0) as usize
}

impl GradedComponent {
    pub fn empty(d: u32, degree: i64, level: usize) -> Self {
        GradedComponent { d, degree, level, entries: BTreeMap::new() }
    }

    /// Builds a component from explicit entries, validating word lengths and
    /// dropping zero coefficients. The result is not contracted.
    pub fn from_entries(
        d: u32,
        degree: i64,
        level: usize,
        entries: impl IntoIterator<Item = (Word, Word, Scalar)>,
    ) -> Result<Self> {
        crate::word::check_alphabet(d)?;
        let (rl, cl) = (row_len(degree, level), col_len(degree, level));
        let mut map: BTreeMap<(Word, Word), Scalar> = BTreeMap::new();
        for (row, col, value) in entries {
            for w in [&row, &col] {
                if w.d() != d {
                    return Err(Error::AlphabetMismatch { left: d, right: w.d() });
                }
            }
            if row.len() != rl || col.len() != cl {
                return Err(Error::Precondition(format!(
                    "entry ({row}, {col}) does not fit degree {degree} at level {level}"
                )));
            }
            *map.entry((row, col)).or_insert_with(Scalar::zero) += &value;
        }
        map.retain(|_, v| !v.is_zero());
        Ok(GradedComponent { d, degree, level, entries: map })
    }

    /// `λ s_α t_β` as a minimal-level component.
    pub fn monomial(alpha: Word, beta: Word, coeff: Scalar) -> Result<Self> {
        let d = alpha.d();
        if beta.d() != d {
            return Err(Error::AlphabetMismatch { left: d, right: beta.d() });
        }
        let degree = alpha.len() as i64 - beta.len() as i64;
        let level = alpha.len().min(beta.len());
        Ok(GradedComponent::from_entries(d, degree, level, [(alpha, beta, coeff)])?.contract())
    }

    pub(crate) fn from_map(
        d: u32,
        degree: i64,
        level: usize,
        entries: BTreeMap<(Word, Word), Scalar>,
    ) -> Self {
        GradedComponent { d, degree, level, entries }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn row_len(&self) -> usize {
        row_len(self.degree, self.level)
    }

    pub fn col_len(&self) -> usize {
        col_len(self.degree, self.level)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: &Word, col: &Word) -> Option<&Scalar> {
        self.entries.get(&(row.clone(), col.clone()))
    }

    /// Entries in lexicographic `(row, col)` order.
    pub fn entries(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.entries.iter().map(|((r, c), v)| (r, c, v))
    }

    pub(crate) fn entry_map(&self) -> &BTreeMap<(Word, Word), Scalar> {
        &self.entries
    }

    /// One application of `Σ_j s_j t_j = 1`: each `(α, β, λ)` becomes the `d`
    /// entries `(αj, βj, λ)`.
    pub fn expand(&self) -> Self {
        let mut entries = BTreeMap::new();
        for ((row, col), v) in &self.entries {
            for j in 1..=self.d {
                entries.insert((row.pushed(j), col.pushed(j)), v.clone());
            }
        }
        GradedComponent { d: self.d, degree: self.degree, level: self.level + 1, entries }
    }

    /// Expands until the component sits at `level`. Levels below the current
    /// one are left alone.
    pub fn expand_to(&self, level: usize) -> Self {
        let mut c = self.clone();
        while c.level < level {
            c = c.expand();
        }
        c
    }

    /// Undoes one [`expand`](Self::expand) if the entries allow it.
    ///
    /// A level-`m` component contracts iff, for every row prefix `α′` and
    /// column prefix `β′`, the entries `(α′j, β′k)` vanish for `j ≠ k` and the
    /// entries `(α′j, β′j)` share one value for all `j`.
    pub fn contract_once(&self) -> Option<Self> {
        if self.level == 0 {
            return None;
        }
        if self.entries.is_empty() {
            return Some(GradedComponent::empty(self.d, self.degree, self.level - 1));
        }
        let mut groups: BTreeMap<(Word, Word), (u32, &Scalar)> = BTreeMap::new();
        for ((row, col), v) in &self.entries {
            let (rp, j) = row.split_last()?;
            let (cp, k) = col.split_last()?;
            if j != k {
                return None;
            }
            match groups.get_mut(&(rp.clone(), cp.clone())) {
                Some((count, value)) => {
                    if *value != v {
                        return None;
                    }
                    *count += 1;
                }
                None => {
                    groups.insert((rp, cp), (1, v));
                }
            }
        }
        if groups.values().any(|(count, _)| *count != self.d) {
            return None;
        }
        let entries = groups.into_iter().map(|(key, (_, v))| (key, v.clone())).collect();
        Some(GradedComponent { d: self.d, degree: self.degree, level: self.level - 1, entries })
    }

    /// Contracts as far as possible, giving the minimal-level form.
    pub fn contract(&self) -> Self {
        let mut c = self.clone();
        while let Some(next) = c.contract_once() {
            c = next;
        }
        c
    }

    /// Entrywise sum after bringing both to a common level. Not contracted.
    pub(crate) fn sum(&self, other: &Self) -> Self {
        debug_assert_eq!(self.degree, other.degree);
        let level = self.level.max(other.level);
        let mut acc = self.expand_to(level).entries;
        for (key, v) in other.expand_to(level).entries {
            match acc.get_mut(&key) {
                Some(existing) => *existing += &v,
                None => {
                    acc.insert(key, v);
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        GradedComponent { d: self.d, degree: self.degree, level, entries: acc }
    }

    /// Sparse rectangular product, expanding whichever side is shorter so
    /// the inner word lengths agree. Not contracted.
    pub(crate) fn product(&self, other: &Self) -> Self {
        let inner_left = self.col_len();
        let inner_right = other.row_len();
        let (left, right) = if inner_left < inner_right {
            (self.expand_to(self.level + inner_right - inner_left), other.clone())
        } else {
            (self.clone(), other.expand_to(other.level + inner_left - inner_right))
        };
        let mut by_row: HashMap<&Word, Vec<(&Word, &Scalar)>> = HashMap::new();
        for ((row, col), v) in &right.entries {
            by_row.entry(row).or_default().push((col, v));
        }
        let mut acc: HashMap<(Word, Word), Scalar> = HashMap::new();
        for ((row, mid), a) in &left.entries {
            if let Some(cols) = by_row.get(mid) {
                for (col, b) in cols {
                    let term = a * b;
                    match acc.get_mut(&(row.clone(), (*col).clone())) {
                        Some(existing) => *existing += &term,
                        None => {
                            acc.insert((row.clone(), (*col).clone()), term);
                        }
                    }
                }
            }
        }
        let degree = self.degree + other.degree;
        let rl = left.row_len();
        let cl = right.col_len();
        let level = rl.min(cl);
        debug_assert_eq!(rl as i64 - cl as i64, degree);
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        GradedComponent { d: self.d, degree, level, entries }
    }

    pub(crate) fn map_values(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut entries: BTreeMap<(Word, Word), Scalar> =
            self.entries.iter().map(|(k, v)| (k.clone(), f(v))).collect();
        entries.retain(|_, v| !v.is_zero());
        GradedComponent { d: self.d, degree: self.degree, level: self.level, entries }
    }
}
