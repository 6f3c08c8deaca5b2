//! Elements of the Leavitt algebra `L_d` in graded canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::component::{mono_mul, GradedComponent};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::word::{check_alphabet, Word};

/// A finite linear combination of monomials `s_α t_β`, stored as one
/// minimal-level [`GradedComponent`] per nonzero gauge degree.
///
/// The representation is canonical, so structural equality (`==`) is
/// equality in `L_d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LeavittElement {
    d: u32,
    components: BTreeMap<i64, GradedComponent>,
}

impl LeavittElement {
    pub fn zero(d: u32) -> Self {
        LeavittElement { d, components: BTreeMap::new() }
    }

    pub fn one(d: u32) -> Self {
        LeavittElement::scalar(d, Scalar::one())
    }

    pub fn scalar(d: u32, value: Scalar) -> Self {
        LeavittElement::monomial_unchecked(Word::empty(d), Word::empty(d), value)
    }

    /// `λ s_α t_β`.
    pub fn monomial(alpha: Word, beta: Word, coeff: Scalar) -> Result<Self> {
        let d = alpha.d();
        check_alphabet(d)?;
        let comp = GradedComponent::monomial(alpha, beta, coeff)?;
        Ok(LeavittElement::from_single(d, comp))
    }

    fn monomial_unchecked(alpha: Word, beta: Word, coeff: Scalar) -> Self {
        let d = alpha.d();
        let comp = GradedComponent::monomial(alpha, beta, coeff).expect("words share an alphabet");
        LeavittElement::from_single(d, comp)
    }

    /// `s_α`.
    pub fn s_word(alpha: Word) -> Self {
        let d = alpha.d();
        LeavittElement::monomial_unchecked(alpha, Word::empty(d), Scalar::one())
    }

    /// `t_α`, so that `t_α s_α = 1`.
    pub fn t_word(alpha: Word) -> Self {
        let d = alpha.d();
        LeavittElement::monomial_unchecked(Word::empty(d), alpha, Scalar::one())
    }

    /// `s_α t_β`.
    pub fn matrix_unit(alpha: Word, beta: Word) -> Result<Self> {
        LeavittElement::monomial(alpha, beta, Scalar::one())
    }

    /// The generator `s_j`.
    pub fn s(d: u32, j: u32) -> Result<Self> {
        Ok(LeavittElement::s_word(Word::letter(d, j)?))
    }

    /// The generator `t_j`.
    pub fn t(d: u32, j: u32) -> Result<Self> {
        Ok(LeavittElement::t_word(Word::letter(d, j)?))
    }

    fn from_single(d: u32, comp: GradedComponent) -> Self {
        let mut components = BTreeMap::new();
        if !comp.is_empty() {
            components.insert(comp.degree(), comp);
        }
        LeavittElement { d, components }
    }

    /// Assembles an element from arbitrary (possibly non-minimal, possibly
    /// repeated-degree) components. Components of equal degree are summed.
    pub fn from_components(d: u32, comps: impl IntoIterator<Item = GradedComponent>) -> Result<Self> {
        check_alphabet(d)?;
        let mut acc: BTreeMap<i64, GradedComponent> = BTreeMap::new();
        for c in comps {
            if c.d() != d {
                return Err(Error::AlphabetMismatch { left: d, right: c.d() });
            }
            let merged = match acc.remove(&c.degree()) {
                Some(prev) => prev.sum(&c),
                None => c,
            };
            acc.insert(merged.degree(), merged);
        }
        Ok(LeavittElement::canonical(d, acc.into_values()))
    }

    /// Sum of `λ s_α t_β` over the given terms.
    pub fn from_terms(d: u32, terms: impl IntoIterator<Item = (Word, Word, Scalar)>) -> Result<Self> {
        let mut comps = Vec::new();
        for (alpha, beta, coeff) in terms {
            if alpha.d() != d {
                return Err(Error::AlphabetMismatch { left: d, right: alpha.d() });
            }
            comps.push(GradedComponent::monomial(alpha, beta, coeff)?);
        }
        LeavittElement::from_components(d, comps)
    }

    fn canonical(d: u32, comps: impl IntoIterator<Item = GradedComponent>) -> Self {
        let components = comps
            .into_iter()
            .filter(|c| !c.is_empty())
            .map(|c| {
                let c = c.contract();
                (c.degree(), c)
            })
            .collect();
        LeavittElement { d, components }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_one(&self) -> bool {
        *self == LeavittElement::one(self.d)
    }

    pub fn component(&self, degree: i64) -> Option<&GradedComponent> {
        self.components.get(&degree)
    }

    pub fn components(&self) -> impl Iterator<Item = &GradedComponent> {
        self.components.values()
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<i64> {
        self.components.keys().copied().collect()
    }

    /// `Some(n)` if the element is nonzero and homogeneous of degree `n`.
    pub fn pure_degree(&self) -> Option<i64> {
        match self.components.len() {
            1 => self.components.keys().next().copied(),
            _ => None,
        }
    }

    /// Largest minimal level over all components (0 for the zero element).
    pub fn level(&self) -> usize {
        self.components.values().map(|c| c.level()).max().unwrap_or(0)
    }

    /// Number of stored monomials.
    pub fn num_terms(&self) -> usize {
        self.components.values().map(|c| c.len()).sum()
    }

    /// All stored monomials `(α, β, λ)`, grouped by ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Word, &Scalar)> {
        self.components.values().flat_map(|c| c.entries())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::AlphabetMismatch { left: self.d, right: other.d });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut comps = self.components.clone();
        for (deg, c) in &other.components {
            let merged = match comps.remove(deg) {
                Some(prev) => prev.sum(c),
                None => c.clone(),
            };
            comps.insert(*deg, merged);
        }
        Ok(LeavittElement::canonical(self.d, comps.into_values()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: BTreeMap<i64, GradedComponent> = BTreeMap::new();
        for a in self.components.values() {
            for b in other.components.values() {
                let prod = a.product(b);
                if prod.is_empty() {
                    continue;
                }
                let merged = match acc.remove(&prod.degree()) {
                    Some(prev) => prev.sum(&prod),
                    None => prod,
                };
                acc.insert(merged.degree(), merged);
            }
        }
        Ok(LeavittElement::canonical(self.d, acc.into_values()))
    }

    /// Left-to-right product of a nonempty list of factors.
    pub fn product_of(factors: &[&LeavittElement]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::Precondition("empty product".into()))?;
        rest.iter().try_fold((*first).clone(), |acc, f| acc.try_mul(f))
    }

    pub fn scale(&self, lambda: &Scalar) -> Self {
        LeavittElement::canonical(self.d, self.components.values().map(|c| c.map_values(|v| v * lambda)))
    }

    fn neg_ref(&self) -> Self {
        LeavittElement {
            d: self.d,
            components: self.components.iter().map(|(k, c)| (*k, c.map_values(|v| -v))).collect(),
        }
    }

    /// `n`-th power for `n ≥ 0`.
    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(LeavittElement::one(self.d), |acc, _| &acc * self)
    }

    /// The involution `s_j ↦ t_j`, `t_j ↦ s_j`, conjugating coefficients:
    /// `λ s_α t_β ↦ λ̄ s_β t_α`.
    pub fn star(&self) -> Self {
        let comps = self.components.values().map(|c| {
            let entries = c
                .entries()
                .map(|(r, col, v)| ((col.clone(), r.clone()), v.conj()))
                .collect();
            GradedComponent::from_map(self.d, -c.degree(), c.level(), entries)
        });
        LeavittElement::canonical(self.d, comps)
    }

    /// Canonical-form equality, with an alphabet check.
    pub fn equals(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self == other)
    }

    /// Equality decided by expanding both sides to a common level in every
    /// degree, without relying on contraction.
    pub fn equals_expanded(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        let level = self.level().max(other.level());
        let degrees: std::collections::BTreeSet<i64> =
            self.components.keys().chain(other.components.keys()).copied().collect();
        for deg in degrees {
            let lhs = self.components.get(&deg).map(|c| c.expand_to(level));
            let rhs = other.components.get(&deg).map(|c| c.expand_to(level));
            match (lhs, rhs) {
                (Some(a), Some(b)) if a.entry_map() == b.entry_map() => {}
                _ => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Multiplication done monomial by monomial with [`mono_mul`]; an
    /// independent route used to cross-check [`try_mul`](Self::try_mul).
    pub fn mul_by_monomials(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut terms = Vec::new();
        for (a, b, x) in self.terms() {
            for (c, e, y) in other.terms() {
                if let Some((row, col)) = mono_mul((a, b), (c, e))? {
                    terms.push((row, col, x * y));
                }
            }
        }
        LeavittElement::from_terms(self.d, terms)
    }

    /// Keeps only the degree-`n` component.
    pub(crate) fn degree_part(&self, n: i64) -> Self {
        let mut components = BTreeMap::new();
        if let Some(c) = self.components.get(&n) {
            components.insert(n, c.clone());
        }
        LeavittElement { d: self.d, components }
    }

    pub(crate) fn map_components(&self, f: impl Fn(&GradedComponent) -> GradedComponent) -> Self {
        LeavittElement::canonical(self.d, self.components.values().map(f))
    }
}

impl fmt::Display for LeavittElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::format_element(self))
    }
}

impl Add<&LeavittElement> for &LeavittElement {
    type Output = LeavittElement;
    /// Panics when the alphabets differ; use [`LeavittElement::try_add`] to
    /// get an error instead.
    fn add(self, rhs: &LeavittElement) -> LeavittElement {
        self.try_add(rhs).expect("alphabet mismatch in +")
    }
}

impl Sub<&LeavittElement> for &LeavittElement {
    type Output = LeavittElement;
    fn sub(self, rhs: &LeavittElement) -> LeavittElement {
        self.try_sub(rhs).expect("alphabet mismatch in -")
    }
}

impl Mul<&LeavittElement> for &LeavittElement {
    type Output = LeavittElement;
    /// Panics when the alphabets differ; use [`LeavittElement::try_mul`] to
    /// get an error instead.
    fn mul(self, rhs: &LeavittElement) -> LeavittElement {
        self.try_mul(rhs).expect("alphabet mismatch in *")
    }
}

impl Neg for &LeavittElement {
    type Output = LeavittElement;
    fn neg(self) -> LeavittElement {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(d: u32, j: u32) -> LeavittElement {
        LeavittElement::s(d, j).unwrap()
    }

    fn t(d: u32, j: u32) -> LeavittElement {
        LeavittElement::t(d, j).unwrap()
    }

    fn w(letters: &[u32]) -> Word {
        Word::new(2, letters.to_vec()).unwrap()
    }

    #[test]
    fn defining_relations() {
        for d in 2..=4 {
            let one = LeavittElement::one(d);
            let mut sum = LeavittElement::zero(d);
            for j in 1..=d {
                for k in 1..=d {
                    let p = &t(d, j) * &s(d, k);
                    if j == k {
                        assert_eq!(p, one);
                    } else {
                        assert!(p.is_zero());
                    }
                }
                sum = &sum + &(&s(d, j) * &t(d, j));
            }
            assert_eq!(sum, one);
        }
    }

    #[test]
    fn add_examples() {
        let a = &s(2, 1) * &t(2, 1);
        let b = &s(2, 2) * &t(2, 2);
        assert_eq!(&a + &b, LeavittElement::one(2));
        assert_eq!(&s(2, 1) + &LeavittElement::zero(2), s(2, 1));
        assert!((&s(2, 1) + &s(2, 1).scale(&Scalar::from_int(-1))).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&t(2, 1) * &s(2, 1), LeavittElement::one(2));
        let a = LeavittElement::matrix_unit(w(&[1]), w(&[2])).unwrap();
        let b = LeavittElement::matrix_unit(w(&[2]), w(&[1])).unwrap();
        assert_eq!(&a * &b, LeavittElement::matrix_unit(w(&[1]), w(&[1])).unwrap());
        assert_eq!(a.mul_by_monomials(&b).unwrap(), &a * &b);
    }

    #[test]
    fn equality_examples() {
        let sum = &(&s(2, 1) * &t(2, 1)) + &(&s(2, 2) * &t(2, 2));
        assert!(sum.equals(&LeavittElement::one(2)).unwrap());
        assert!(!s(2, 1).equals(&s(2, 2)).unwrap());
        assert!(sum.equals_expanded(&LeavittElement::one(2)).unwrap());
        assert!(!s(2, 1).equals_expanded(&s(2, 2)).unwrap());
        assert_eq!(s(2, 1).equals(&s(3, 1)), Err(Error::AlphabetMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn star_examples() {
        assert_eq!(s(2, 1).star(), t(2, 1));
        let a = LeavittElement::monomial(w(&[1]), w(&[2]), Scalar::i()).unwrap();
        let want = LeavittElement::monomial(w(&[2]), w(&[1]), -Scalar::i()).unwrap();
        assert_eq!(a.star(), want);
        assert_eq!(LeavittElement::one(2).star(), LeavittElement::one(2));
    }

    #[test]
    fn cross_alphabet_ops_fail() {
        assert!(s(2, 1).try_mul(&s(3, 1)).is_err());
        assert!(s(2, 1).try_add(&s(3, 1)).is_err());
    }

    #[test]
    fn minimal_level_is_reported() {
        let a = LeavittElement::matrix_unit(w(&[1, 1]), w(&[1, 2])).unwrap();
        assert_eq!(a.level(), 2);
        assert_eq!(LeavittElement::one(2).level(), 0);
        assert_eq!(s(2, 1).pure_degree(), Some(1));
    }
}
