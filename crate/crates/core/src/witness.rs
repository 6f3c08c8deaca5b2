//! Pure infiniteness made constructive: for nonzero `a ∈ L_d`, exact
//! elements `x`, `y` with `x·a·y = 1`.

use crate::element::LeavittElement;
use crate::error::{Error, Result};
use crate::gauge::{project, shift_endo};
use crate::scalar::Scalar;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessPair {
    pub x: LeavittElement,
    pub y: LeavittElement,
    /// `x·a·y`, always equal to 1.
    pub certificate: LeavittElement,
}

/// First `r` letters of `σ = 1,2,1,1,2,2,1,1,1,2,2,2,…` (blocks of `k` ones
/// then `k` twos for `k = 1, 2, …`).
pub fn sigma_word(d: u32, r: usize) -> Result<Word> {
    if r == 0 {
        return Err(Error::Precondition("sigma_word needs r >= 1".into()));
    }
    let mut letters = Vec::with_capacity(r);
    let mut k = 1;
    while letters.len() < r {
        letters.extend(std::iter::repeat(1).take(k));
        letters.extend(std::iter::repeat(2).take(k));
        k += 1;
    }
    letters.truncate(r);
    Word::new(d, letters)
}

pub fn default_r_max(pairs: &[(Word, Word)]) -> usize {
    let longest = pairs.iter().map(|(a, b)| a.len().max(b.len())).max().unwrap_or(0);
    8 * (longest + pairs.len() + 1)
}

/// Whether `(s_γ t_γ) s_α t_β (s_γ t_γ) = 0` for every pair.
pub fn annihilates(gamma: &Word, pairs: &[(Word, Word)]) -> Result<bool> {
    let proj = LeavittElement::monomial(gamma.clone(), gamma.clone(), Scalar::one())?;
    for (alpha, beta) in pairs {
        let m = LeavittElement::monomial(alpha.clone(), beta.clone(), Scalar::one())?;
        if !LeavittElement::product_of(&[&proj, &m, &proj])?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `σ_r` with `r ≤ r_max` that annihilates every pair.
pub fn annihilating_word(d: u32, pairs: &[(Word, Word)], r_max: usize) -> Result<Word> {
    for (alpha, beta) in pairs {
        if alpha.len() == beta.len() {
            return Err(Error::Precondition(format!(
                "pair ({alpha}, {beta}) has equal lengths; only nonzero degrees can be annihilated"
            )));
        }
        if alpha.d() != d || beta.d() != d {
            return Err(Error::AlphabetMismatch { left: d, right: alpha.d().max(beta.d()) });
        }
    }
    for r in 1..=r_max {
        let gamma = sigma_word(d, r)?;
        if annihilates(&gamma, pairs)? {
            return Ok(gamma);
        }
    }
    Err(Error::BoundExceeded { r_max })
}

fn verify(x: &LeavittElement, a: &LeavittElement, y: &LeavittElement) -> Result<LeavittElement> {
    let product = LeavittElement::product_of(&[x, a, y])?;
    if !product.is_one() {
        return Err(Error::Internal(format!("witness check failed: x·a·y = {product}")));
    }
    Ok(product)
}

/// For nonzero `a` of pure degree 0 returns `(n, x, y)` with `x` of degree
/// `−n`, `y` of degree `n` and `x·a·y = 1`. Here `n = level(a)`.
pub fn core_witness(a: &LeavittElement) -> Result<(usize, LeavittElement, LeavittElement)> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    if a.pure_degree() != Some(0) {
        let degree = a.degrees().into_iter().find(|&n| n != 0).unwrap_or(0);
        return Err(Error::NotInCore { degree });
    }
    let d = a.d();
    let comp = a.component(0).expect("degree 0 present");
    let m = comp.level();
    let ((alpha0, beta0), lambda) = comp
        .entries()
        .map(|(row, col, v)| ((row, col), v))
        .fold(None, |best: Option<((&Word, &Word), &Scalar)>, cur| match best {
            Some(b) if b.1.norm_sqr() >= cur.1.norm_sqr() => Some(b),
            _ => Some(cur),
        })
        .expect("nonzero component");
    let lambda_inv = lambda.inv()?;

    let psi = |e: LeavittElement| if m == 0 { Ok(e) } else { shift_endo(&e, m) };
    let words: Vec<Word> = Word::all(d, m).collect();
    let mu1 = words[0].clone();
    let mut left = LeavittElement::zero(d);
    let mut right = LeavittElement::zero(d);
    for g in &words {
        let b = LeavittElement::monomial(g.clone(), alpha0.clone(), lambda_inv.clone())?;
        let c = LeavittElement::monomial(beta0.clone(), g.clone(), Scalar::one())?;
        let f_1g = psi(LeavittElement::matrix_unit(mu1.clone(), g.clone())?)?;
        let f_g1 = psi(LeavittElement::matrix_unit(g.clone(), mu1.clone())?)?;
        left = left.try_add(&b.try_mul(&f_1g)?)?;
        right = right.try_add(&f_g1.try_mul(&c)?)?;
    }
    let x = psi(LeavittElement::t_word(mu1.clone()))?.try_mul(&left)?;
    let y = right.try_mul(&psi(LeavittElement::s_word(mu1))?)?;
    verify(&x, a, &y)?;
    Ok((m, x, y))
}

/// The full construction for an arbitrary nonzero element, with
/// `annihilating_word` capped at its default bound.
pub fn witness(a: &LeavittElement) -> Result<WitnessPair> {
    witness_with_bound(a, None)
}

pub fn witness_with_bound(a: &LeavittElement, r_max: Option<usize>) -> Result<WitnessPair> {
    if a.is_zero() {
        return Err(Error::ZeroElement);
    }
    let d = a.d();
    let n = a
        .degrees()
        .into_iter()
        .min_by_key(|&n| (n.unsigned_abs(), n < 0))
        .expect("nonzero element has a degree");
    let k = n.unsigned_abs() as u32;
    let t1n = LeavittElement::t(d, 1)?.pow(k);
    let s1n = LeavittElement::s(d, 1)?.pow(k);
    let shifted = match n {
        n if n > 0 => a.try_mul(&t1n)?,
        n if n < 0 => s1n.try_mul(a)?,
        _ => a.clone(),
    };
    let (_, x0, y0) = core_witness(&project(&shifted, 0))?;
    let b = LeavittElement::product_of(&[&x0, &shifted, &y0])?.try_sub(&LeavittElement::one(d))?;

    let (mut x, mut y) = (x0, y0);
    if !b.is_zero() {
        let pairs: Vec<(Word, Word)> = b.terms().map(|(alpha, beta, _)| (alpha.clone(), beta.clone())).collect();
        let cap = r_max.unwrap_or_else(|| default_r_max(&pairs));
        let gamma = annihilating_word(d, &pairs, cap).map_err(|e| match e {
            Error::BoundExceeded { r_max } => Error::Precondition(format!(
                "no annihilating σ-word up to r = {r_max}; raise --r-max"
            )),
            other => other,
        })?;
        x = LeavittElement::t_word(gamma.clone()).try_mul(&x)?;
        y = y.try_mul(&LeavittElement::s_word(gamma))?;
    }
    if n > 0 {
        y = t1n.try_mul(&y)?;
    } else if n < 0 {
        x = x.try_mul(&s1n)?;
    }
    let certificate = verify(&x, a, &y)?;
    Ok(WitnessPair { x, y, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_element;

    fn el(d: u32, text: &str) -> LeavittElement {
        parse_element(d, text).unwrap()
    }

    fn w(d: u32, letters: &[u32]) -> Word {
        Word::new(d, letters.to_vec()).unwrap()
    }

    #[test]
    fn sigma_prefixes() {
        assert_eq!(sigma_word(2, 2).unwrap(), w(2, &[1, 2]));
        assert_eq!(sigma_word(2, 6).unwrap(), w(2, &[1, 2, 1, 1, 2, 2]));
        assert_eq!(sigma_word(3, 13).unwrap(), w(3, &[1, 2, 1, 1, 2, 2, 1, 1, 1, 2, 2, 2, 1]));
        assert!(sigma_word(2, 0).is_err());
    }

    #[test]
    fn annihilating_examples() {
        let pairs = [(w(2, &[1]), Word::empty(2))];
        assert!(!annihilates(&sigma_word(2, 1).unwrap(), &pairs).unwrap());
        assert_eq!(annihilating_word(2, &pairs, 10).unwrap(), w(2, &[1, 2]));

        let pairs = [(w(2, &[1]), w(2, &[1, 1]))];
        let g = annihilating_word(2, &pairs, default_r_max(&pairs)).unwrap();
        assert!(annihilates(&g, &pairs).unwrap());

        assert_eq!(annihilating_word(2, &[], 3).unwrap(), w(2, &[1]));
    }

    #[test]
    fn annihilating_errors() {
        let equal = [(w(2, &[1]), w(2, &[2]))];
        assert!(matches!(annihilating_word(2, &equal, 5), Err(Error::Precondition(_))));
        let pairs = [(w(2, &[1]), Word::empty(2))];
        assert_eq!(annihilating_word(2, &pairs, 1), Err(Error::BoundExceeded { r_max: 1 }));
    }

    #[test]
    fn core_examples() {
        let (n, x, y) = core_witness(&el(2, "1")).unwrap();
        assert_eq!((n, x.is_one(), y.is_one()), (0, true, true));
        for text in ["s1 t2", "2 s1 t1 + s2 t2", "s12 t21 - 1/3 s2 t2 + 1i"] {
            let a = el(2, text);
            let (n, x, y) = core_witness(&a).unwrap();
            assert_eq!(n, a.level());
            assert_eq!(project(&x, -(n as i64)), x);
            assert_eq!(project(&y, n as i64), y);
            assert!(LeavittElement::product_of(&[&x, &a, &y]).unwrap().is_one());
        }
        assert!(matches!(core_witness(&el(2, "s1")), Err(Error::NotInCore { degree: 1 })));
        assert_eq!(core_witness(&LeavittElement::zero(2)), Err(Error::ZeroElement));
    }

    #[test]
    fn witness_examples() {
        let pair = witness(&el(2, "s1")).unwrap();
        assert_eq!((pair.x, pair.y), (el(2, "t1"), el(2, "1")));
        for (d, text) in [(2, "s1 t1"), (2, "s1 + s2 t1"), (2, "t2 - 3 s11"), (3, "s3 t12 + (1-1i) t3 + 2 s2")] {
            let a = el(d, text);
            let pair = witness(&a).unwrap();
            assert!(pair.certificate.is_one());
            assert!(LeavittElement::product_of(&[&pair.x, &a, &pair.y]).unwrap().is_one());
        }
        assert_eq!(witness(&LeavittElement::zero(3)), Err(Error::ZeroElement));
    }
}
