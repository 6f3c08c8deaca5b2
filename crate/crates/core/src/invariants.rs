//! Supernatural numbers, `K₀` of spatial `L^p` UHF algebras, and the
//! isomorphism and homomorphism decision procedures built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::scalar::parse_rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(k) => write!(f, "{k}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

/// A supernatural number with finite support and at least one infinite
/// exponent. Primes absent from the map have exponent 0.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct SupernaturalNumber {
    exponents: BTreeMap<u64, Exponent>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        if n % k == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// Prime factorization by trial division, as `(prime, multiplicity)`.
pub fn factorize(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut k = 2u64;
    while k.saturating_mul(k) <= n {
        let mut e = 0;
        while n % k == 0 {
            n /= k;
            e += 1;
        }
        if e > 0 {
            out.push((k, e));
        }
        k += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

impl SupernaturalNumber {
    pub fn new(exponents: BTreeMap<u64, Exponent>) -> Result<Self> {
        for (&t, &e) in &exponents {
            if !is_prime(t) {
                return Err(Error::Precondition(format!("{t} is not prime")));
            }
            if e == Exponent::Finite(0) {
                return Err(Error::Precondition(format!("exponent of {t} must be positive")));
            }
        }
        if !exponents.values().any(|&e| e == Exponent::Infinite) {
            return Err(Error::Precondition(
                "a supernatural number needs at least one infinite exponent".into(),
            ));
        }
        Ok(SupernaturalNumber { exponents })
    }

    /// `m^∞`: every prime factor of `m` with infinite exponent.
    pub fn power_of(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Precondition(format!("m^inf needs m >= 2, got {m}")));
        }
        SupernaturalNumber::new(factorize(m).into_iter().map(|(t, _)| (t, Exponent::Infinite)).collect())
    }

    pub fn exponent(&self, prime: u64) -> Exponent {
        self.exponents.get(&prime).copied().unwrap_or(Exponent::Finite(0))
    }

    pub fn exponents(&self) -> &BTreeMap<u64, Exponent> {
        &self.exponents
    }

    pub fn to_json(&self) -> Value {
        let map: serde_json::Map<String, Value> =
            self.exponents.iter().map(|(t, e)| (t.to_string(), Value::String(e.to_string()))).collect();
        json!({ "exponents": map })
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (t, e)) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            match e {
                Exponent::Finite(1) => write!(f, "{t}")?,
                _ => write!(f, "{t}^{e}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for SupernaturalNumber {
    type Err = Error;

    /// Parses products like `2^inf*3^2*5`; `·` also separates factors.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |part: &str| Error::Precondition(format!("invalid supernatural factor {part:?}"));
        let mut exponents = BTreeMap::new();
        for part in s.split(['*', '·']).map(str::trim) {
            let (base, exp) = part.split_once('^').unwrap_or((part, "1"));
            let t: u64 = base.trim().parse().map_err(|_| bad(part))?;
            let e = match exp.trim() {
                "inf" | "∞" | "infinity" => Exponent::Infinite,
                k => Exponent::Finite(k.parse().map_err(|_| bad(part))?),
            };
            if exponents.insert(t, e).is_some() {
                return Err(Error::Precondition(format!("prime {t} repeated")));
            }
        }
        SupernaturalNumber::new(exponents)
    }
}

/// The eventually periodic sequence `preperiod, period, period, …`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorSequence {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl GeneratorSequence {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::Precondition("period must be nonempty".into()));
        }
        if let Some(&bad) = preperiod.iter().chain(&period).find(|&&k| k < 2) {
            return Err(Error::Precondition(format!("sequence entries must be >= 2, got {bad}")));
        }
        Ok(GeneratorSequence { preperiod, period })
    }

    pub fn constant(k: u64) -> Result<Self> {
        GeneratorSequence::new(Vec::new(), vec![k])
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    /// The `i`-th term, counting from 1.
    pub fn term(&self, i: usize) -> u64 {
        assert!(i >= 1, "terms are indexed from 1");
        let i = i - 1;
        if i < self.preperiod.len() {
            self.preperiod[i]
        } else {
            self.period[(i - self.preperiod.len()) % self.period.len()]
        }
    }

    /// The same sequence with its first `k` terms removed.
    pub fn drop_front(&self, k: usize) -> Self {
        if k <= self.preperiod.len() {
            return GeneratorSequence { preperiod: self.preperiod[k..].to_vec(), period: self.period.clone() };
        }
        let shift = (k - self.preperiod.len()) % self.period.len();
        let mut period = self.period[shift..].to_vec();
        period.extend_from_slice(&self.period[..shift]);
        GeneratorSequence { preperiod: Vec::new(), period }
    }
}

impl fmt::Display for GeneratorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{};{}", join(&self.preperiod), join(&self.period))
    }
}

impl FromStr for GeneratorSequence {
    type Err = Error;

    /// `"2;3,4"` is preperiod `(2)`, period `(3,4)`; without `;` the whole
    /// list is the period.
    fn from_str(s: &str) -> Result<Self> {
        let list = |part: &str| -> Result<Vec<u64>> {
            part.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| Error::Precondition(format!("invalid sequence entry {x:?}"))))
                .collect()
        };
        match s.split_once(';') {
            Some((pre, per)) => GeneratorSequence::new(list(pre)?, list(per)?),
            None => GeneratorSequence::new(Vec::new(), list(s)?),
        }
    }
}

/// `r_d(n) = d(1)·d(2)⋯d(n)`, with `r_d(0) = 1`.
pub fn r_d(seq: &GeneratorSequence, n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * seq.term(i))
}

/// `N_d(t) = sup{k : t^k divides some r_d(n)}`.
pub fn supernatural_of(seq: &GeneratorSequence) -> SupernaturalNumber {
    let mut exponents: BTreeMap<u64, Exponent> = BTreeMap::new();
    for &k in &seq.period {
        for (t, _) in factorize(k) {
            exponents.insert(t, Exponent::Infinite);
        }
    }
    for &k in &seq.preperiod {
        for (t, e) in factorize(k) {
            let slot = exponents.entry(t).or_insert(Exponent::Finite(0));
            if let Exponent::Finite(old) = *slot {
                *slot = Exponent::Finite(old + e);
            }
        }
    }
    SupernaturalNumber::new(exponents).expect("period contributes an infinite exponent")
}

pub fn sn_equal(a: &SupernaturalNumber, b: &SupernaturalNumber) -> bool {
    a == b
}

/// Membership of `q` in `K₀ = ⋃_n k(n)⁻¹ℤ ⊂ ℚ` for UHF type `N`: every prime
/// power dividing the reduced denominator must be allowed by `N`.
pub fn k0_contains(n: &SupernaturalNumber, q: &BigRational) -> bool {
    let mut den = q.denom().clone().into_parts().1;
    for (&t, &e) in &n.exponents {
        let t = BigUint::from(t);
        let mut used = 0u64;
        while (&den % &t).is_zero() && Exponent::Finite(used) < e {
            den /= &t;
            used += 1;
        }
    }
    den.is_one()
}

/// A spatial `L^p` UHF algebra of type `N`, up to isomorphism.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraDescriptor {
    p: BigRational,
    n: SupernaturalNumber,
}

impl AlgebraDescriptor {
    pub fn new(p: BigRational, n: SupernaturalNumber) -> Result<Self> {
        if p < BigRational::one() {
            return Err(Error::Precondition(format!("p must be >= 1, got {p}")));
        }
        Ok(AlgebraDescriptor { p, n })
    }

    pub fn parse(p: &str, n: &str) -> Result<Self> {
        AlgebraDescriptor::new(parse_exponent(p)?, n.parse()?)
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn n(&self) -> &SupernaturalNumber {
        &self.n
    }
}

/// Parses an integer, a fraction `-3/8` or a decimal `1.25` exactly.
pub fn parse_rational_literal(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Precondition(format!("invalid rational {text:?}"));
    match text.split_once('.') {
        Some((int, frac)) => {
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let negative = int.trim_start().starts_with('-');
            let int = match int.trim().trim_start_matches(['-', '+']) {
                "" => "0",
                digits => digits,
            };
            let num: num_bigint::BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
            let den = num_bigint::BigInt::from(10u8).pow(frac.len() as u32);
            let q = BigRational::new(num, den);
            Ok(if negative { -q } else { q })
        }
        None => parse_rational(text).map_err(|_| bad()),
    }
}

/// Parses an exponent `p ≥ 1` given as an integer, a fraction or a decimal.
pub fn parse_exponent(text: &str) -> Result<BigRational> {
    let q = parse_rational_literal(text)?;
    if q < BigRational::one() {
        return Err(Error::Precondition(format!("p must be >= 1, got {}", text.trim())));
    }
    Ok(q)
}

/// Isomorphic iff equal `p` and equal `N`.
pub fn classify_iso(a: &AlgebraDescriptor, b: &AlgebraDescriptor) -> bool {
    a.p == b.p && sn_equal(&a.n, &b.n)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HomObstruction {
    /// No nonzero continuous homomorphism into operators on a separable
    /// `L^{p₂}` space exists.
    Excluded,
    /// The known necessary condition holds; existence is not claimed.
    NotExcluded,
}

impl fmt::Display for HomObstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HomObstruction::Excluded => "excluded",
            HomObstruction::NotExcluded => "not_excluded",
        })
    }
}

/// Homomorphisms from a spatial `L^{p₁}` UHF algebra into bounded operators
/// on a separable `L^{p₂}` space require `1 ≤ p₂ < p₁ ≤ 2` or `p₁ = 2 < p₂`
/// when `p₁ ≠ p₂`. Equal exponents are never excluded.
pub fn hom_obstruction(p1: &BigRational, p2: &BigRational) -> Result<HomObstruction> {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    if *p1 < one || *p2 < one {
        return Err(Error::Precondition("exponents must be >= 1".into()));
    }
    if p1 == p2 {
        return Ok(HomObstruction::NotExcluded);
    }
    let allowed = (one <= *p2 && p2 < p1 && *p1 <= two) || (*p1 == two && two < *p2);
    Ok(if allowed { HomObstruction::NotExcluded } else { HomObstruction::Excluded })
}
