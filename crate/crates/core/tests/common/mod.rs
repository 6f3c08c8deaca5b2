#![allow(dead_code)]

use leavitt_core::{LeavittElement, Scalar, Word};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const MAX_TERMS: usize = 6;
pub const MAX_LEN: usize = 3;

pub fn rand_word<R: Rng>(rng: &mut R, d: u32, len: usize) -> Word {
    Word::new(d, (0..len).map(|_| rng.gen_range(1..=d)).collect()).unwrap()
}

pub fn rand_scalar<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let re = (rng.gen_range(-4..=4), rng.gen_range(1..=3));
        let im = if rng.gen_bool(0.5) { (rng.gen_range(-3..=3), rng.gen_range(1..=3)) } else { (0, 1) };
        let v = Scalar::gaussian(re, im);
        if !v.is_zero() {
            return v;
        }
    }
}

/// Up to six monomials `λ s_α t_β` with word lengths at most three.
pub fn rand_element<R: Rng>(rng: &mut R, d: u32) -> LeavittElement {
    let n = rng.gen_range(1..=MAX_TERMS);
    let terms = (0..n).map(|_| {
        let (la, lb) = (rng.gen_range(0..=MAX_LEN), rng.gen_range(0..=MAX_LEN));
        (rand_word(rng, d, la), rand_word(rng, d, lb), rand_scalar(rng))
    });
    LeavittElement::from_terms(d, terms.collect::<Vec<_>>()).unwrap()
}

pub fn rand_nonzero<R: Rng>(rng: &mut R, d: u32) -> LeavittElement {
    loop {
        let a = rand_element(rng, d);
        if !a.is_zero() {
            return a;
        }
    }
}

/// Degree-zero element: every monomial has `l(α) = l(β)`.
pub fn rand_core<R: Rng>(rng: &mut R, d: u32) -> LeavittElement {
    let n = rng.gen_range(1..=MAX_TERMS);
    let terms = (0..n).map(|_| {
        let len = rng.gen_range(0..=MAX_LEN);
        (rand_word(rng, d, len), rand_word(rng, d, len), rand_scalar(rng))
    });
    LeavittElement::from_terms(d, terms.collect::<Vec<_>>()).unwrap()
}

/// Nonzero element of pure degree `n`.
pub fn rand_pure<R: Rng>(rng: &mut R, d: u32, n: i64) -> LeavittElement {
    let count = rng.gen_range(1..=MAX_TERMS);
    let terms = (0..count).map(|_| {
        let lb = rng.gen_range(0..=MAX_LEN);
        let la = (lb as i64 + n).max(0) as usize;
        let lb = (la as i64 - n) as usize;
        (rand_word(rng, d, la), rand_word(rng, d, lb), rand_scalar(rng))
    });
    LeavittElement::from_terms(d, terms.collect::<Vec<_>>()).unwrap()
}

pub fn rand_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Left-to-right generator products: `s_α = s_{α₁}⋯s_{αₙ}`,
/// `t_α = t_{αₙ}⋯t_{α₁}`.
pub fn s_by_generators(w: &Word) -> LeavittElement {
    let d = w.d();
    w.letters().iter().fold(LeavittElement::one(d), |acc, &j| &acc * &LeavittElement::s(d, j).unwrap())
}

pub fn t_by_generators(w: &Word) -> LeavittElement {
    let d = w.d();
    w.letters().iter().fold(LeavittElement::one(d), |acc, &j| &LeavittElement::t(d, j).unwrap() * &acc)
}

fn word_strategy(d: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(1..=d, 0..=MAX_LEN)
}

fn coeff_strategy() -> impl Strategy<Value = Scalar> {
    ((-4i64..=4, 1i64..=3), (-3i64..=3, 1i64..=3)).prop_map(|(re, im)| Scalar::gaussian(re, im))
}

pub fn element_strategy(d: u32) -> impl Strategy<Value = LeavittElement> {
    prop::collection::vec((word_strategy(d), word_strategy(d), coeff_strategy()), 0..=MAX_TERMS).prop_map(
        move |terms| {
            let terms = terms
                .into_iter()
                .map(|(a, b, v)| (Word::new(d, a).unwrap(), Word::new(d, b).unwrap(), v));
            LeavittElement::from_terms(d, terms.collect::<Vec<_>>()).unwrap()
        },
    )
}

pub fn core_strategy(d: u32) -> impl Strategy<Value = LeavittElement> {
    prop::collection::vec((0..=MAX_LEN, any::<u64>(), coeff_strategy()), 0..=MAX_TERMS).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(len, bits, v)| {
            let letters = |shift: u64| (0..len).map(|i| 1 + ((bits >> (shift + 4 * i as u64)) % d as u64) as u32).collect();
            (Word::new(d, letters(0)).unwrap(), Word::new(d, letters(32)).unwrap(), v)
        });
        LeavittElement::from_terms(d, terms.collect::<Vec<_>>()).unwrap()
    })
}
