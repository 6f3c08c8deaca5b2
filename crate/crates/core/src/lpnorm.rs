//! `ℓᵖ → ℓᵖ` operator norms of complex matrices.
//!
//! [`opnorm`] returns a [`NormInterval`]: the lower end is the ratio
//! `‖Ax‖_p / ‖x‖_p` at a stored witness `x` found by a multi-start nonlinear
//! power iteration, the upper end is the smallest of several closed-form
//! bounds (Riesz–Thorin interpolation between `p ∈ {1, 2, ∞}` and Hölder
//! bounds on rows and columns). For `p ∈ {1, 2, ∞}` both ends are exact.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_rational::Rational64;
use num_traits::{One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::component::GradedComponent;
use crate::element::LeavittElement;
use crate::error::{Error, Result};
use crate::uhf::{phi_inv, CoreMatrix};
use crate::word::Word;

pub type CMatrix = DMatrix<Complex64>;

/// Relative outward padding applied to both ends of every interval to cover
/// floating-point rounding.
const ROUNDING_PAD: f64 = 1e-12;

/// An exponent `p ∈ [1, ∞]`, rational when finite.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PExponent {
    Finite(Rational64),
    Infinity,
}

impl PExponent {
    pub fn new(p: Rational64) -> Result<Self> {
        if p < Rational64::one() {
            return Err(Error::Precondition(format!("p must be >= 1, got {p}")));
        }
        Ok(PExponent::Finite(p))
    }

    pub fn int(p: i64) -> Result<Self> {
        PExponent::new(Rational64::from_integer(p))
    }

    pub fn one() -> Self {
        PExponent::Finite(Rational64::one())
    }

    pub fn two() -> Self {
        PExponent::Finite(Rational64::from_integer(2))
    }

    pub fn value(&self) -> f64 {
        match self {
            PExponent::Finite(p) => p.to_f64().unwrap_or(f64::INFINITY),
            PExponent::Infinity => f64::INFINITY,
        }
    }

    /// The `q` with `1/p + 1/q = 1`.
    pub fn conjugate(&self) -> Self {
        match self {
            PExponent::Infinity => PExponent::one(),
            PExponent::Finite(p) if p.is_one() => PExponent::Infinity,
            PExponent::Finite(p) => PExponent::Finite(p / (p - Rational64::one())),
        }
    }

    fn is(&self, n: i64) -> bool {
        matches!(self, PExponent::Finite(p) if *p == Rational64::from_integer(n))
    }
}

impl FromStr for PExponent {
    type Err = Error;

    /// Accepts `inf`, `∞`, integers, fractions `5/2` and decimals `2.5`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Precondition(format!("invalid exponent {s:?}"));
        if matches!(s.to_ascii_lowercase().as_str(), "inf" | "infinity" | "∞") {
            return Ok(PExponent::Infinity);
        }
        let q = if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Rational64::new(n, d)
        } else if let Some((int, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) || frac.len() > 15 {
                return Err(bad());
            }
            let int: i64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
            let scale = 10i64.pow(frac.len() as u32);
            let frac: i64 = frac.parse().map_err(|_| bad())?;
            Rational64::new(int * scale + frac, scale)
        } else {
            Rational64::from_integer(s.parse().map_err(|_| bad())?)
        };
        PExponent::new(q)
    }
}

impl fmt::Display for PExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PExponent::Infinity => write!(f, "inf"),
            PExponent::Finite(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormMethod {
    /// Maximum absolute column sum (`p = 1`).
    ColumnSum,
    /// Maximum absolute row sum (`p = ∞`).
    RowSum,
    /// Largest singular value (`p = 2`).
    Svd,
    /// Power iteration below, closed-form bounds above.
    PowerIteration,
}

/// A certified enclosure `[lower, upper]` of an operator norm.
#[derive(Clone, Debug, PartialEq)]
pub struct NormInterval {
    pub lower: f64,
    pub upper: f64,
    /// Unit vector (in `ℓᵖ`) whose ratio `‖Ax‖_p / ‖x‖_p` is `lower` up to
    /// the rounding pad.
    pub witness: Vec<Complex64>,
    pub method: NormMethod,
    /// False when the best power-iteration run hit `max_iter`.
    pub converged: bool,
}

impl NormInterval {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, value: f64, tol: f64) -> bool {
        self.lower - tol <= value && value <= self.upper + tol
    }

    fn zero(cols: usize) -> Self {
        NormInterval {
            lower: 0.0,
            upper: 0.0,
            witness: vec![Complex64::new(0.0, 0.0); cols],
            method: NormMethod::PowerIteration,
            converged: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NormConfig {
    pub restarts: usize,
    pub max_iter: usize,
    pub tol: f64,
    pub seed: u64,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig { restarts: 32, max_iter: 10_000, tol: 1e-10, seed: 0 }
    }
}

pub fn vec_norm(x: &[Complex64], p: PExponent) -> f64 {
    let scale = x.iter().map(|v| v.norm()).fold(0.0, f64::max);
    match p {
        PExponent::Infinity => scale,
        _ if scale == 0.0 => 0.0,
        _ => {
            let p = p.value();
            let sum: f64 = x.iter().map(|v| (v.norm() / scale).powf(p)).sum();
            scale * sum.powf(1.0 / p)
        }
    }
}

fn check_finite(a: &CMatrix) -> Result<()> {
    if a.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn max_col_sum(a: &CMatrix) -> (f64, usize) {
    a.column_iter()
        .enumerate()
        .map(|(j, col)| (col.iter().map(|v| v.norm()).sum::<f64>(), j))
        .fold((0.0, 0), |best, cur| if cur.0 > best.0 { cur } else { best })
}

fn max_row_sum(a: &CMatrix) -> (f64, usize) {
    a.row_iter()
        .enumerate()
        .map(|(i, row)| (row.iter().map(|v| v.norm()).sum::<f64>(), i))
        .fold((0.0, 0), |best, cur| if cur.0 > best.0 { cur } else { best })
}

/// Largest singular value and a corresponding right singular vector.
fn top_singular(a: &CMatrix) -> (f64, Vec<Complex64>) {
    let svd = a.clone().svd(false, true);
    let (k, sigma) = svd
        .singular_values
        .iter()
        .copied()
        .enumerate()
        .fold((0, 0.0), |best, (i, s)| if s > best.1 { (i, s) } else { best });
    let v_t = svd.v_t.expect("requested V");
    let v = v_t.row(k).iter().map(|z| z.conj()).collect();
    (sigma, v)
}

/// Closed forms for `p ∈ {1, 2, ∞}`. Other exponents are rejected.
pub fn opnorm_exact(a: &CMatrix, p: PExponent) -> Result<f64> {
    check_finite(a)?;
    if a.nrows() == 0 || a.ncols() == 0 {
        return Ok(0.0);
    }
    if p.is(1) {
        Ok(max_col_sum(a).0)
    } else if p == PExponent::Infinity {
        Ok(max_row_sum(a).0)
    } else if p.is(2) {
        Ok(top_singular(a).0)
    } else {
        Err(Error::Precondition(format!("no closed form for p = {p}")))
    }
}

fn ratio(a: &CMatrix, x: &[Complex64], p: PExponent) -> f64 {
    let xn = vec_norm(x, p);
    if xn == 0.0 {
        return 0.0;
    }
    let y = a * DVector::from_column_slice(x);
    vec_norm(y.as_slice(), p) / xn
}

fn normalized(x: Vec<Complex64>, p: PExponent) -> Vec<Complex64> {
    let n = vec_norm(&x, p);
    if n == 0.0 {
        x
    } else {
        x.into_iter().map(|v| v / n).collect()
    }
}

/// `sgn(v_i)|v_i|^{r−1} / ‖v‖_r^{r−1}`: the unit vector in the dual norm
/// that norms `v`.
fn dual_vector(v: &[Complex64], r: f64) -> Vec<Complex64> {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return v.to_vec();
    }
    let raw: Vec<Complex64> = v
        .iter()
        .map(|z| {
            let m = z.norm();
            if m == 0.0 {
                Complex64::new(0.0, 0.0)
            } else {
                (z / m) * (m / scale).powf(r - 1.0)
            }
        })
        .collect();
    let nr: f64 = v.iter().map(|z| (z.norm() / scale).powf(r)).sum::<f64>().powf(1.0 / r);
    raw.into_iter().map(|z| z / nr.powf(r - 1.0)).collect()
}

struct Run {
    value: f64,
    x: Vec<Complex64>,
    converged: bool,
}

fn power_iteration(a: &CMatrix, start: Vec<Complex64>, p: f64, cfg: &NormConfig) -> Run {
    let q = p / (p - 1.0);
    let norm_p = |v: &[Complex64]| -> f64 {
        let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.0;
        }
        scale * v.iter().map(|z| (z.norm() / scale).powf(p)).sum::<f64>().powf(1.0 / p)
    };
    let unit = |v: Vec<Complex64>| -> Vec<Complex64> {
        let n = norm_p(&v);
        if n == 0.0 {
            v
        } else {
            v.into_iter().map(|z| z / n).collect()
        }
    };
    let adjoint = a.adjoint();
    let mut x = unit(start);
    let mut best = Run { value: 0.0, x: x.clone(), converged: false };
    let mut prev = f64::NAN;
    for _ in 0..cfg.max_iter {
        let y = a * DVector::from_column_slice(&x);
        let gamma = norm_p(y.as_slice());
        if gamma > best.value {
            best.value = gamma;
            best.x = x.clone();
        }
        if gamma == 0.0 {
            best.converged = true;
            break;
        }
        if (gamma - prev).abs() <= cfg.tol * gamma {
            best.converged = true;
            break;
        }
        prev = gamma;
        let z = &adjoint * DVector::from_vec(dual_vector(y.as_slice(), p));
        if z.iter().all(|v| v.norm() == 0.0) {
            best.converged = true;
            break;
        }
        x = unit(dual_vector(z.as_slice(), q));
    }
    best
}

fn random_start(cols: usize, seed: u64, k: usize) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    (0..cols)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect()
}

/// Upper bounds valid for every `p`; the minimum is returned.
fn upper_bound(a: &CMatrix, p: f64, n1: f64, n2: f64, ninf: f64) -> f64 {
    let q = p / (p - 1.0);
    let mut best = n1.powf(1.0 / p) * ninf.powf(1.0 - 1.0 / p);
    let through_two = if p <= 2.0 {
        let theta = 2.0 * (1.0 - 1.0 / p);
        n1.powf(1.0 - theta) * n2.powf(theta)
    } else {
        let theta = 1.0 - 2.0 / p;
        n2.powf(1.0 - theta) * ninf.powf(theta)
    };
    best = best.min(through_two);
    // Hölder on each row: |(Ax)_i| ≤ ‖a_i‖_q ‖x‖_p.
    let rows: f64 = a
        .row_iter()
        .map(|r| r.iter().map(|v| v.norm().powf(q)).sum::<f64>().powf(p / q))
        .sum::<f64>()
        .powf(1.0 / p);
    // Same bound for the adjoint acting on ℓ^q.
    let cols: f64 = a
        .column_iter()
        .map(|c| c.iter().map(|v| v.norm().powf(p)).sum::<f64>().powf(q / p))
        .sum::<f64>()
        .powf(1.0 / q);
    best.min(rows).min(cols)
}

pub fn opnorm(a: &CMatrix, p: PExponent, cfg: &NormConfig) -> Result<NormInterval> {
    opnorm_with_starts(a, p, cfg, &[])
}

/// [`opnorm`] with extra warm-start vectors for the power iteration.
pub fn opnorm_with_starts(
    a: &CMatrix,
    p: PExponent,
    cfg: &NormConfig,
    extra_starts: &[Vec<Complex64>],
) -> Result<NormInterval> {
    check_finite(a)?;
    let (rows, cols) = a.shape();
    if rows == 0 || cols == 0 || a.iter().all(|v| v.norm() == 0.0) {
        return Ok(NormInterval::zero(cols));
    }
    let pad = |u: f64| u * (1.0 + ROUNDING_PAD);
    let lower_of = |x: &[Complex64]| ratio(a, x, p) * (1.0 - ROUNDING_PAD);
    let (n1, j1) = max_col_sum(a);
    let (ninf, i_inf) = max_row_sum(a);

    let col_start = {
        let mut e = vec![Complex64::new(0.0, 0.0); cols];
        e[j1] = Complex64::new(1.0, 0.0);
        e
    };
    let row_start: Vec<Complex64> = a
        .row(i_inf)
        .iter()
        .map(|v| if v.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { v.conj() / v.norm() })
        .collect();

    if p.is(1) {
        let lower = lower_of(&col_start);
        return Ok(NormInterval {
            lower,
            upper: pad(n1).max(lower),
            witness: col_start,
            method: NormMethod::ColumnSum,
            converged: true,
        });
    }
    if p == PExponent::Infinity {
        let lower = lower_of(&row_start);
        return Ok(NormInterval {
            lower,
            upper: pad(ninf).max(lower),
            witness: row_start,
            method: NormMethod::RowSum,
            converged: true,
        });
    }
    let (n2, sv) = top_singular(a);
    if p.is(2) {
        let witness = normalized(sv, p);
        let lower = lower_of(&witness);
        return Ok(NormInterval {
            lower,
            upper: pad(n2).max(lower),
            witness,
            method: NormMethod::Svd,
            converged: true,
        });
    }

    let pv = p.value();
    let mut starts = vec![col_start, sv, row_start];
    starts.extend(extra_starts.iter().filter(|s| s.len() == cols).cloned());
    let n_random = cfg.restarts.saturating_sub(starts.len());
    starts.extend((0..n_random).map(|k| random_start(cols, cfg.seed, k)));

    let runs: Vec<Run> = starts.into_par_iter().map(|s| power_iteration(a, s, pv, cfg)).collect();
    let best = runs
        .into_iter()
        .reduce(|best, r| if r.value > best.value { r } else { best })
        .expect("at least one start");
    let witness = normalized(best.x, p);
    let lower = lower_of(&witness);
    let upper = pad(upper_bound(a, pv, n1, n2, ninf));
    debug_assert!(lower <= upper * (1.0 + 1e-9), "lower {lower} above upper {upper}");
    Ok(NormInterval {
        lower,
        upper: upper.max(lower),
        witness,
        method: NormMethod::PowerIteration,
        converged: best.converged,
    })
}

/// Kronecker product; index `(i, k)` of `A ⊗ B` is `i·rows(B) + k`, matching
/// the lexicographic order of concatenated words.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

/// Conjugates `A` acting on `⊗_k ℂ^{dims[k]}` by the coordinate permutation
/// that puts old factor `perm[k]` in position `k`.
pub fn permute_factors(a: &CMatrix, dims: &[usize], perm: &[usize]) -> Result<CMatrix> {
    let total: usize = dims.iter().product();
    if a.nrows() != total || a.ncols() != total {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}×{}, factor dimensions multiply to {total}",
            a.nrows(),
            a.ncols()
        )));
    }
    if perm.len() != dims.len() || !is_permutation(perm) {
        return Err(Error::DimensionMismatch(format!("{perm:?} is not a permutation of {} factors", dims.len())));
    }
    let new_dims: Vec<usize> = perm.iter().map(|&k| dims[k]).collect();
    let relabel: Vec<usize> = (0..total)
        .map(|idx| {
            let digits = mixed_radix_digits(idx, dims);
            new_dims.iter().zip(perm).fold(0, |acc, (&n, &k)| acc * n + digits[k])
        })
        .collect();
    let mut out = CMatrix::zeros(total, total);
    for r in 0..total {
        for c in 0..total {
            out[(relabel[r], relabel[c])] = a[(r, c)];
        }
    }
    Ok(out)
}

fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    perm.iter().all(|&k| k < perm.len() && !std::mem::replace(&mut seen[k], true))
}

fn mixed_radix_digits(mut idx: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for (slot, &n) in digits.iter_mut().zip(dims).rev() {
        *slot = idx % n;
        idx /= n;
    }
    digits
}

/// `A ⊗ I_t`, the unital embedding `M_n → M_{nt}`.
pub fn embed(a: &CMatrix, t: usize) -> Result<CMatrix> {
    if t == 0 {
        return Err(Error::Precondition("embed needs t >= 1".into()));
    }
    Ok(kron(a, &CMatrix::identity(t, t)))
}

pub fn core_to_dense(m: &CoreMatrix) -> CMatrix {
    let n = m.side();
    CMatrix::from_fn(n, n, |i, j| m.get(i, j).to_complex64())
}

/// Coefficient matrix of a graded component: rows indexed by words of length
/// `row_len`, columns by words of length `col_len`, both lexicographic.
pub fn component_matrix(c: &GradedComponent) -> CMatrix {
    let d = c.d() as usize;
    let mut out = CMatrix::zeros(d.pow(c.row_len() as u32), d.pow(c.col_len() as u32));
    for (row, col, v) in c.entries() {
        out[(row.index(), col.index())] = v.to_complex64();
    }
    out
}

/// `n × n` matrix with `λ` as its first column and zeros elsewhere.
pub fn first_column_matrix(lambda: &[Complex64]) -> CMatrix {
    let n = lambda.len();
    CMatrix::from_fn(n, n, |i, j| if j == 0 { lambda[i] } else { Complex64::new(0.0, 0.0) })
}

/// `n × n` matrix with `λ` as its first row and zeros elsewhere.
pub fn first_row_matrix(lambda: &[Complex64]) -> CMatrix {
    let n = lambda.len();
    CMatrix::from_fn(n, n, |i, j| if i == 0 { lambda[j] } else { Complex64::new(0.0, 0.0) })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComponentNorm {
    pub degree: i64,
    pub level: usize,
    pub interval: NormInterval,
}

/// Norm bounds for an element of `L_d` in any spatial representation.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementNorm {
    pub lower: f64,
    pub upper: f64,
    pub components: Vec<ComponentNorm>,
    /// True when the element has a nonzero-degree component. The upper end
    /// then assumes each component's norm equals its rectangular matrix
    /// norm; only `≥` is established.
    pub assumes_component_norm: bool,
}

/// Degree-zero elements: the norm of `φ_m⁻¹(a)` at the element's level,
/// which is exact because `φ_m` is isometric. Mixed degrees: the largest
/// component lower bound below, the sum of component upper bounds above.
pub fn elem_norm(a: &LeavittElement, p: PExponent, cfg: &NormConfig) -> Result<ElementNorm> {
    if a.is_zero() {
        return Ok(ElementNorm { lower: 0.0, upper: 0.0, components: Vec::new(), assumes_component_norm: false });
    }
    if a.pure_degree() == Some(0) {
        let level = a.level();
        let iv = opnorm(&core_to_dense(&phi_inv(a, level)?), p, cfg)?;
        return Ok(ElementNorm {
            lower: iv.lower,
            upper: iv.upper,
            components: vec![ComponentNorm { degree: 0, level, interval: iv }],
            assumes_component_norm: false,
        });
    }
    let mut components = Vec::new();
    for c in a.components() {
        let interval = opnorm(&component_matrix(c), p, cfg)?;
        components.push(ComponentNorm { degree: c.degree(), level: c.level(), interval });
    }
    let lower = components.iter().map(|c| c.interval.lower).fold(0.0, f64::max);
    let upper = components.iter().map(|c| c.interval.upper).sum::<f64>().max(lower);
    Ok(ElementNorm { lower, upper, components, assumes_component_norm: true })
}

/// Rows or columns of a component matrix, as words.
pub fn component_index_words(c: &GradedComponent) -> (Vec<Word>, Vec<Word>) {
    (Word::all(c.d(), c.row_len()).collect(), Word::all(c.d(), c.col_len()).collect())
}
