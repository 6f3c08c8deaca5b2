//! The UHF core `A = ⋃ A_m` of degree-zero elements.
//!
//! `A_m` is spanned by the matrix units `s_α t_β` with `α, β ∈ W_m^d`, which
//! identifies it with `M_{d^m}` (rows and columns in lexicographic word
//! order). Expectations onto `A_m` are normalized partial traces over the
//! trailing tensor factors.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::component::GradedComponent;
use crate::element::LeavittElement;
use crate::error::{Error, Result};
use crate::json::{scalar_from_json, scalar_to_json, Num};
use crate::scalar::Scalar;
use crate::word::{check_alphabet, Word};

/// Default largest `d` for which [`signed_perm_group`] enumerates the group.
pub const DEFAULT_GROUP_CAP: usize = 6;

/// A dense `d^m × d^m` exact matrix indexed by `W_m^d`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CoreMatrix {
    d: u32,
    m: usize,
    rows: Vec<Vec<Scalar>>,
}

fn side(d: u32, m: usize) -> usize {
    (d as usize).pow(m as u32)
}

impl CoreMatrix {
    pub fn zeros(d: u32, m: usize) -> Self {
        let n = side(d, m);
        CoreMatrix { d, m, rows: vec![vec![Scalar::zero(); n]; n] }
    }

    pub fn identity(d: u32, m: usize) -> Self {
        let mut out = CoreMatrix::zeros(d, m);
        for i in 0..out.side() {
            out.rows[i][i] = Scalar::one();
        }
        out
    }

    /// The matrix unit `e_{α,β}`.
    pub fn unit(alpha: &Word, beta: &Word) -> Result<Self> {
        if alpha.len() != beta.len() || alpha.d() != beta.d() {
            return Err(Error::DimensionMismatch(format!(
                "matrix unit needs words of one length and alphabet, got {alpha} and {beta}"
            )));
        }
        let mut out = CoreMatrix::zeros(alpha.d(), alpha.len());
        out.rows[alpha.index()][beta.index()] = Scalar::one();
        Ok(out)
    }

    pub fn from_rows(d: u32, m: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        check_alphabet(d)?;
        let n = side(d, m);
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(format!("expected a {n}×{n} matrix for d = {d}, m = {m}")));
        }
        Ok(CoreMatrix { d, m, rows })
    }

    pub fn from_fn(d: u32, m: usize, f: impl Fn(usize, usize) -> Scalar) -> Self {
        let n = side(d, m);
        let rows = (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect();
        CoreMatrix { d, m, rows }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn side(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.d != other.d || self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "(d, m) = ({}, {}) vs ({}, {})",
                self.d, self.m, other.d, other.m
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let n = self.side();
        let mut out = CoreMatrix::zeros(self.d, self.m);
        for i in 0..n {
            for k in 0..n {
                let a = &self.rows[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.rows[k][j];
                    if !b.is_zero() {
                        out.rows[i][j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(CoreMatrix::from_fn(self.d, self.m, |i, j| &self.rows[i][j] + &other.rows[i][j]))
    }

    pub fn scale(&self, lambda: &Scalar) -> Self {
        CoreMatrix::from_fn(self.d, self.m, |i, j| &self.rows[i][j] * lambda)
    }

    /// Normalized trace `tr(M) = (1/n) Σ M_ii`, so `tr(I) = 1`.
    pub fn normalized_trace(&self) -> Scalar {
        let n = self.side();
        let mut sum = Scalar::zero();
        for i in 0..n {
            sum += &self.rows[i][i];
        }
        &sum * &Scalar::ratio(1, n as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Scalar::is_zero)
    }

    pub fn to_json(&self) -> CoreMatrixJson {
        CoreMatrixJson {
            d: self.d,
            m: self.m,
            rows: self
                .rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|v| {
                            let (re, im) = scalar_to_json(v);
                            ComplexJson { re, im }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_json(j: &CoreMatrixJson) -> Result<Self> {
        let rows = j
            .rows
            .iter()
            .map(|r| r.iter().map(|c| scalar_from_json(&c.re, &c.im)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        CoreMatrix::from_rows(j.d, j.m, rows)
    }
}

/// `{ "d":, "m":, "rows": [[{"re":, "im":}, …], …] }`
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct CoreMatrixJson {
    pub d: u32,
    pub m: usize,
    pub rows: Vec<Vec<ComplexJson>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct ComplexJson {
    pub re: Num,
    #[serde(default = "Num::zero")]
    pub im: Num,
}

/// `φ_m(M) = Σ M_{αβ} s_α t_β`.
pub fn phi(mat: &CoreMatrix) -> LeavittElement {
    let (d, m) = (mat.d, mat.m);
    let mut entries = Vec::new();
    for (i, row) in mat.rows.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !v.is_zero() {
                entries.push((Word::from_index(d, m, i), Word::from_index(d, m, j), v.clone()));
            }
        }
    }
    let comp = GradedComponent::from_entries(d, 0, m, entries).expect("matrix-unit words have length m");
    LeavittElement::from_components(d, [comp]).expect("valid alphabet")
}

fn core_component(a: &LeavittElement) -> Result<Option<&GradedComponent>> {
    if let Some(n) = a.degrees().into_iter().find(|&n| n != 0) {
        return Err(Error::NotInCore { degree: n });
    }
    Ok(a.component(0))
}

/// The unique `M` at level `m` with `φ_m(M) = a`.
pub fn phi_inv(a: &LeavittElement, m: usize) -> Result<CoreMatrix> {
    let mut out = CoreMatrix::zeros(a.d(), m);
    if let Some(c) = core_component(a)? {
        if c.level() > m {
            return Err(Error::LevelTooHigh { level: c.level(), max: m });
        }
        for (row, col, v) in c.expand_to(m).entries() {
            out.rows[row.index()][col.index()] = v.clone();
        }
    }
    Ok(out)
}

/// `E_m`: the conditional expectation of the core onto `A_m`.
///
/// Under `A_{m′} ≅ M_{d^m} ⊗ M_{d^{m′−m}}` this is `id ⊗ tr` with the
/// normalized trace:
/// `s_{α₁α₂} t_{β₁β₂} ↦ δ_{α₂β₂} d^{−(m′−m)} s_{α₁} t_{β₁}`.
pub fn expect_to_level(a: &LeavittElement, m: usize) -> Result<LeavittElement> {
    let d = a.d();
    let Some(c) = core_component(a)? else {
        return Ok(LeavittElement::zero(d));
    };
    let top = c.level();
    if top <= m {
        return Ok(a.clone());
    }
    let weight = Scalar::from_rational(BigRational::new(
        BigInt::from(1),
        BigInt::from(d).pow((top - m) as u32),
    ));
    let mut entries = Vec::new();
    for (row, col, v) in c.entries() {
        if row.letters()[m..] == col.letters()[m..] {
            entries.push((row.prefix(m), col.prefix(m), v * &weight));
        }
    }
    let comp = GradedComponent::from_entries(d, 0, m, entries)?;
    LeavittElement::from_components(d, [comp])
}

/// The normalized trace `τ(s_α t_β) = δ_{αβ} d^{−l(α)}`.
pub fn trace(a: &LeavittElement) -> Result<Scalar> {
    let d = a.d();
    let mut sum = Scalar::zero();
    if let Some(c) = core_component(a)? {
        for (row, col, v) in c.entries() {
            if row == col {
                let w = BigRational::new(BigInt::from(1), BigInt::from(d).pow(row.len() as u32));
                sum += &(v * &Scalar::from_rational(w));
            }
        }
    }
    Ok(sum)
}

/// `Σ_j ε_j e_{j,σ(j)}`: row `j` holds `ε_j` in column `σ(j)` (0-based).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SignedPermMatrix {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPermMatrix {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        if signs.len() != n {
            return Err(Error::DimensionMismatch("perm and signs differ in length".into()));
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Precondition(format!("{perm:?} is not a permutation")));
            }
        }
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Precondition("signs must be ±1".into()));
        }
        Ok(SignedPermMatrix { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermMatrix { perm: (0..n).collect(), signs: vec![1; n] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &Self) -> Self {
        let perm = self.perm.iter().map(|&p| other.perm[p]).collect();
        let signs = self.signs.iter().zip(&self.perm).map(|(&e, &p)| e * other.signs[p]).collect();
        SignedPermMatrix { perm, signs }
    }

    /// The inverse, which is the transpose.
    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut signs = vec![1; n];
        for (j, &p) in self.perm.iter().enumerate() {
            perm[p] = j;
            signs[p] = self.signs[j];
        }
        SignedPermMatrix { perm, signs }
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        if self.perm[i] == j {
            self.signs[i]
        } else {
            0
        }
    }

    /// As a `d × d` core matrix (level 1) over the alphabet `d = dim`.
    pub fn to_core_matrix(&self) -> Result<CoreMatrix> {
        let d = self.dim() as u32;
        check_alphabet(d)?;
        Ok(CoreMatrix::from_fn(d, 1, |i, j| Scalar::from_int(self.entry(i, j) as i64)))
    }

    /// `g A g⁻¹` for a `d × d` matrix `A`: entry `(i, k)` is
    /// `ε_i ε_k A_{σ(i), σ(k)}`.
    pub fn conjugate(&self, mat: &CoreMatrix) -> CoreMatrix {
        CoreMatrix::from_fn(mat.d, mat.m, |i, k| {
            let v = &mat.rows[self.perm[i]][self.perm[k]];
            if self.signs[i] * self.signs[k] < 0 {
                -v
            } else {
                v.clone()
            }
        })
    }
}

/// All `2^d · d!` signed permutation matrices of size `d`, each once, with
/// the default cap.
pub fn signed_perm_group(d: usize) -> Result<Vec<SignedPermMatrix>> {
    signed_perm_group_capped(d, DEFAULT_GROUP_CAP)
}

pub fn signed_perm_group_capped(d: usize, cap: usize) -> Result<Vec<SignedPermMatrix>> {
    if d == 0 {
        return Err(Error::Precondition("signed permutation group needs d >= 1".into()));
    }
    if d > cap {
        return Err(Error::EnumerationCap { d, cap });
    }
    let mut out = Vec::new();
    for perm in (0..d).permutations(d) {
        for mask in 0u32..(1 << d) {
            let signs = (0..d).map(|j| if mask >> j & 1 == 1 { -1 } else { 1 }).collect();
            out.push(SignedPermMatrix { perm: perm.clone(), signs });
        }
    }
    Ok(out)
}

/// `(1/|G|) Σ_{g ∈ G} g A g⁻¹` over the signed permutation group, by explicit
/// summation. The result is checked against `tr(A)·I`.
pub fn group_average(mat: &CoreMatrix) -> Result<CoreMatrix> {
    if mat.m != 1 {
        return Err(Error::DimensionMismatch(format!("group_average needs a d×d matrix, got m = {}", mat.m)));
    }
    let group = signed_perm_group(mat.d as usize)?;
    let mut acc = CoreMatrix::zeros(mat.d, 1);
    for g in &group {
        let conj = g.conjugate(mat);
        for (row, crow) in acc.rows.iter_mut().zip(&conj.rows) {
            for (v, c) in row.iter_mut().zip(crow) {
                *v += c;
            }
        }
    }
    let avg = acc.scale(&Scalar::ratio(1, group.len() as i64));
    let expected = CoreMatrix::identity(mat.d, 1).scale(&mat.normalized_trace());
    if avg != expected {
        return Err(Error::Internal("group average differs from tr(A)·I".into()));
    }
    Ok(avg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;

    fn w(letters: &[u32]) -> Word {
        Word::new(2, letters.to_vec()).unwrap()
    }

    fn el(text: &str) -> LeavittElement {
        parse_element(2, text).unwrap()
    }

    #[test]
    fn phi_examples() {
        let e = CoreMatrix::unit(&w(&[1, 1]), &w(&[1, 2])).unwrap();
        assert_eq!(phi(&e), el("s11 t12"));
        assert_eq!(phi(&CoreMatrix::identity(2, 3)), LeavittElement::one(2));
    }

    #[test]
    fn phi_inv_examples() {
        assert_eq!(phi_inv(&el("1"), 1).unwrap(), CoreMatrix::identity(2, 1));
        assert_eq!(phi_inv(&el("s1 t2"), 1).unwrap(), CoreMatrix::unit(&w(&[1]), &w(&[2])).unwrap());
        assert!(matches!(phi_inv(&el("s1"), 1), Err(Error::NotInCore { degree: 1 })));
        assert!(matches!(phi_inv(&el("s11 t12"), 1), Err(Error::LevelTooHigh { level: 2, max: 1 })));
    }

    #[test]
    fn expectation_examples() {
        assert_eq!(expect_to_level(&el("s11 t11"), 1).unwrap(), el("1/2 s1 t1"));
        assert!(expect_to_level(&el("s11 t12"), 1).unwrap().is_zero());
        let a = el("s1 t2 + 3 s2 t2");
        assert_eq!(expect_to_level(&a, 1).unwrap(), a);
        assert_eq!(expect_to_level(&el("s12 t21 + s21 t21"), 0).unwrap(), el("1/4"));
        assert!(expect_to_level(&el("t1"), 0).is_err());
    }

    #[test]
    fn trace_examples() {
        assert_eq!(trace(&el("1")).unwrap(), Scalar::one());
        assert_eq!(trace(&el("s1 t1")).unwrap(), Scalar::ratio(1, 2));
        assert_eq!(trace(&el("s1 t2")).unwrap(), Scalar::zero());
        assert!(trace(&el("s1")).is_err());
    }

    #[test]
    fn group_sizes() {
        assert_eq!(signed_perm_group(1).unwrap().len(), 2);
        assert_eq!(signed_perm_group(2).unwrap().len(), 8);
        assert_eq!(signed_perm_group(3).unwrap().len(), 48);
        assert!(matches!(signed_perm_group(7), Err(Error::EnumerationCap { d: 7, cap: 6 })));
    }

    #[test]
    fn group_closure_and_inverses() {
        let g = signed_perm_group(3).unwrap();
        let set: std::collections::HashSet<_> = g.iter().cloned().collect();
        assert_eq!(set.len(), g.len());
        for a in &g {
            assert_eq!(a.mul(&a.inverse()), SignedPermMatrix::identity(3));
            for b in &g {
                assert!(set.contains(&a.mul(b)));
            }
        }
    }

    #[test]
    fn signed_perm_product_matches_matrix_product() {
        let g = signed_perm_group(2).unwrap();
        for a in &g {
            for b in &g {
                let lhs = a.mul(b).to_core_matrix().unwrap();
                let rhs = a.to_core_matrix().unwrap().mul(&b.to_core_matrix().unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn averaging_examples() {
        let e11 = CoreMatrix::unit(&w(&[1]), &w(&[1])).unwrap();
        assert_eq!(group_average(&e11).unwrap(), CoreMatrix::identity(2, 1).scale(&Scalar::ratio(1, 2)));
        assert_eq!(group_average(&CoreMatrix::identity(3, 1)).unwrap(), CoreMatrix::identity(3, 1));
        let e12 = CoreMatrix::unit(&w(&[1]), &w(&[2])).unwrap();
        assert!(group_average(&e12).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let m = CoreMatrix::from_fn(2, 1, |i, j| Scalar::gaussian((i as i64 + 1, 3), (j as i64, 1)));
        let text = serde_json::to_string(&m.to_json()).unwrap();
        let back: CoreMatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(CoreMatrix::from_json(&back).unwrap(), m);
    }
}
