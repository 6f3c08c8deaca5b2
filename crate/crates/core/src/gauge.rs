//! The gauge action `σ_λ(s_j) = λ s_j`, `σ_λ(t_j) = λ⁻¹ t_j`, its spectral
//! projections `P_n`, and the shift endomorphisms `ψ_r(a) = Σ_{|γ|=r} s_γ a t_γ`.
//!
//! On `L_d` the grading is explicit: `P_n(s_α t_β)` is `s_α t_β` when
//! `l(α) − l(β) = n` and zero otherwise, so `P_n` just selects a component.

use crate::element::LeavittElement;
use crate::error::{Error, Result};
use crate::component::GradedComponent;
use crate::scalar::Scalar;
use crate::word::Word;

/// `P_n(a)`: the degree-`n` component of `a`.
pub fn project(a: &LeavittElement, n: i64) -> LeavittElement {
    a.degree_part(n)
}

/// `σ_λ(a)`: scales the degree-`n` component by `λⁿ`.
///
/// `λ` is any exact scalar; restricting to the unit circle is up to the
/// caller. `λ = 0` is an error when a negative degree is present.
pub fn gauge_act(a: &LeavittElement, lambda: &Scalar) -> Result<LeavittElement> {
    if lambda.is_zero() {
        if let Some(n) = a.degrees().into_iter().find(|&n| n < 0) {
            return Err(Error::DivisionByZero(format!(
                "gauge action at λ = 0 on a component of degree {n}"
            )));
        }
    }
    let mut factors = Vec::new();
    for n in a.degrees() {
        factors.push((n, lambda.pow(n)?));
    }
    Ok(a.map_components(|c| {
        let f = &factors.iter().find(|(n, _)| *n == c.degree()).expect("degree present").1;
        c.map_values(|v| v * f)
    }))
}

/// `ψ_r(a) = Σ_{γ ∈ W_r^d} s_γ a t_γ`, computed monomialwise as
/// `s_γ s_α t_β t_γ = s_{γα} t_{γβ}`.
pub fn shift_endo(a: &LeavittElement, r: usize) -> Result<LeavittElement> {
    if r == 0 {
        return Err(Error::Precondition("shift_endo requires r >= 1".into()));
    }
    let d = a.d();
    let prefixes: Vec<Word> = Word::all(d, r).collect();
    let comps = a.components().map(|c| {
        let entries = c.entries().flat_map(|(row, col, v)| {
            prefixes.iter().map(move |g| (g.join(row), g.join(col), v.clone()))
        });
        GradedComponent::from_entries(d, c.degree(), c.level() + r, entries)
            .expect("prefixed words keep the component shape")
    });
    LeavittElement::from_components(d, comps.collect::<Vec<_>>())
}
