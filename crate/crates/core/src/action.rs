//! The operator action `𝓛_X` on symbols ("à la Fourier").
//!
//! Through the affine symbol map, `𝓛_X u = L_X u + Σ_{r≥1} t_r(X) u`, where
//! the order-lowering terms are, on a term `Λ ⊗ P`,
//!
//! ```text
//! t_r(X)(Λ⊗P) = − Σ_i Σ_{|γ|=r+1} (∂^γ Xⁱ / γ!) Λ ⊗ ξ_i ∂_ξ^γ P
//!               − Σ_{i,j} Σ_{|γ|=r} (∂^γ ∂_j Xⁱ / γ!) v_i ∧ i_{β^j}Λ ⊗ ∂_ξ^γ P
//! ```
//!
//! The formal variables η and ζ never get a stored representation: η is the
//! differentiation of symbol coefficients, ζ the differentiation of `X`.

use crate::error::{check_dim, Error, Result};
use crate::field::VectorField;
use crate::lie::lie_symbol;
use crate::midx::MIdx;
use crate::poly::Poly;
use crate::scalar::{from_bigint, Rat};
use crate::symbol::{SymKey, Symbol};

/// `(i, γ, ∂^γ Xⁱ / γ!)` for every nonzero derivative with `1 ≤ |γ| ≤ max`.
struct Taylor {
    entries: Vec<(usize, MIdx, Poly)>,
}

impl Taylor {
    fn new(x: &VectorField, min: u32, max: u32) -> Self {
        let n = x.n();
        let top = max.min(x.degree());
        let mut entries = Vec::new();
        for d in min..=top {
            for gamma in MIdx::of_degree(n, d) {
                let inv = Rat::new(1.into(), gamma.factorial());
                for i in 0..n {
                    let p = x.component(i).partial_multi(&gamma);
                    if !p.is_zero() {
                        entries.push((i, gamma.clone(), p.scale(&inv)));
                    }
                }
            }
        }
        Taylor { entries }
    }
}

/// Adds the contribution of one Taylor entry `(i, g, c_g)` of `X`, with
/// `|g| = |γ|+1` (first sum, derivative `γ = g`) and, for each `j` with
/// `g_j > 0`, the second sum with `γ = g − e_j`.
fn emit_t_terms(
    k: &SymKey,
    c: &Rat,
    i: usize,
    g: &MIdx,
    coef: &Poly,
    r_filter: Option<u32>,
    emit: &mut dyn FnMut(SymKey, Rat),
) {
    let gd = g.degree();
    // First sum: |γ| = r + 1 with γ = g.
    if gd >= 2 && r_filter.is_none_or(|r| r + 1 == gd) && g.le(&k.xi) {
        let f = from_bigint(k.xi.falling(g));
        let base = -(c * f);
        let xi = k.xi.checked_sub(g).unwrap().inc(i);
        for (m, d) in coef.terms() {
            emit(SymKey::new(k.x.add(m), k.wedge.clone(), xi.clone()), &base * d);
        }
    }
    // Second sum: ∂^γ ∂_j Xⁱ / γ! = (g_j) · ∂^g Xⁱ / g! with g = γ + e_j.
    if r_filter.is_none_or(|r| r + 1 == gd) {
        for j in k.wedge.indices() {
            let gj = g.get(j);
            if gj == 0 {
                continue;
            }
            let gamma = g.dec(j).unwrap();
            if !gamma.le(&k.xi) {
                continue;
            }
            let Some((s1, rest)) = k.wedge.contract(j) else { continue };
            let Some((s2, w)) = rest.insert(i) else { continue };
            let f = from_bigint(k.xi.falling(&gamma)) * Rat::from_integer(i64::from(gj).into());
            let mut base = -(c * f);
            if s1 * s2 < 0 {
                base = -base;
            }
            let xi = k.xi.checked_sub(&gamma).unwrap();
            for (m, d) in coef.terms() {
                emit(SymKey::new(k.x.add(m), w.clone(), xi.clone()), &base * d);
            }
        }
    }
}

/// The order-lowering term `t_r(X)`, mapping `S^k_p → S^{k−r}_p`.
pub fn t_term(x: &VectorField, r: u32, u: &Symbol) -> Result<Symbol> {
    if r < 1 {
        return Err(Error::Argument("t_r needs r ≥ 1".into()));
    }
    check_dim(u.n(), x.n())?;
    let taylor = Taylor::new(x, r + 1, r + 1);
    Ok(u.flat_map_terms(u.p(), |k, c, emit| {
        for (i, g, coef) in &taylor.entries {
            emit_t_terms(k, c, *i, g, coef, Some(r), emit);
        }
    }))
}

/// `Σ_{r≥1} t_r(X) u`, all orders at once.
pub fn t_total(x: &VectorField, u: &Symbol) -> Result<Symbol> {
    check_dim(u.n(), x.n())?;
    let kmax = u.max_xi_degree().unwrap_or(0);
    if kmax == 0 {
        return Ok(Symbol::zero(u.n(), u.p()));
    }
    let taylor = Taylor::new(x, 2, kmax + 1);
    Ok(u.flat_map_terms(u.p(), |k, c, emit| {
        for (i, g, coef) in &taylor.entries {
            emit_t_terms(k, c, *i, g, coef, None, emit);
        }
    }))
}

/// The operator action `𝓛_X u = L_X u + Σ_{r=1}^{k} t_r(X) u`; equals
/// `σ_Aff(𝓛_X σ_Aff⁻¹(u))`.
pub fn lie_symbolic(x: &VectorField, u: &Symbol) -> Result<Symbol> {
    let mut out = lie_symbol(x, u)?;
    out.add_assign(&t_total(x, u)?);
    Ok(out)
}

/// Which action on symbols a construction uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// The geometric Lie derivative `L`.
    Geometric,
    /// The operator Lie derivative `𝓛` transported by `σ_Aff`.
    Operator,
}

impl Action {
    pub fn apply(self, x: &VectorField, u: &Symbol) -> Result<Symbol> {
        match self {
            Action::Geometric => lie_symbol(x, u),
            Action::Operator => lie_symbolic(x, u),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::fixed_field;
    use crate::scalar::int;
    use crate::word::Word;

    fn t(x: &[u8], wedge: &[usize], xi: &[u8], c: i64) -> Symbol {
        Symbol::monomial(
            MIdx::from_slice(x),
            Word::new(3, wedge).unwrap(),
            MIdx::from_slice(xi),
            int(c),
        )
    }

    #[test]
    fn t1_examples() {
        let x = fixed_field(2);
        assert_eq!(
            t_term(&x, 1, &t(&[0, 0], &[], &[2, 0], 1)).unwrap(),
            t(&[0, 0], &[], &[0, 1], -2)
        );
        assert_eq!(
            t_term(&x, 1, &t(&[0, 0], &[0], &[1, 0], 1)).unwrap(),
            t(&[0, 0], &[1], &[0, 0], -2)
        );
        assert!(t_term(&x, 0, &t(&[0, 0], &[], &[2, 0], 1)).is_err());
    }

    #[test]
    fn affine_fields_have_no_lowering_terms() {
        let u = &t(&[1, 1], &[0], &[2, 1], 1) + &t(&[0, 2], &[1], &[0, 3], 2);
        for x in [VectorField::partial(2, 1), VectorField::linear(2, 0, 1), VectorField::euler(2)] {
            for r in 1..=3 {
                assert!(t_term(&x, r, &u).unwrap().is_zero());
            }
            assert_eq!(lie_symbolic(&x, &u).unwrap(), lie_symbol(&x, &u).unwrap());
        }
    }

    #[test]
    fn lie_symbolic_examples() {
        let x = fixed_field(2);
        // 𝓛_X(1 ⊗ ξ₁²) = −4x¹ ⊗ ξ₁ξ₂ − 2 ⊗ ξ₂
        assert_eq!(
            lie_symbolic(&x, &t(&[0, 0], &[], &[2, 0], 1)).unwrap(),
            &t(&[1, 0], &[], &[1, 1], -4) + &t(&[0, 0], &[], &[0, 1], -2)
        );
        // 𝓛_X(v₁ ⊗ ξ₁) = −2x¹v₂⊗ξ₁ − 2x¹v₁⊗ξ₂ − 2v₂⊗1
        let want = &(&t(&[1, 0], &[1], &[1, 0], -2) + &t(&[1, 0], &[0], &[0, 1], -2))
            + &t(&[0, 0], &[1], &[0, 0], -2);
        assert_eq!(lie_symbolic(&x, &t(&[0, 0], &[0], &[1, 0], 1)).unwrap(), want);
        assert_eq!(
            lie_symbolic(&VectorField::partial(2, 0), &t(&[1, 0], &[], &[1, 0], 1)).unwrap(),
            t(&[0, 0], &[], &[1, 0], 1)
        );
    }

    #[test]
    fn total_matches_sum_of_orders() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let x = VectorField::random(3, 4, &mut rng);
        let u = &t(&[1, 0, 1], &[0, 2], &[2, 1, 0], 3) + &t(&[0, 1, 0], &[1, 2], &[0, 1, 2], -1);
        let mut sum = Symbol::zero(3, 2);
        for r in 1..=3 {
            sum.add_assign(&t_term(&x, r, &u).unwrap());
        }
        assert_eq!(t_total(&x, &u).unwrap(), sum);
    }
}
