//! The geometric Lie derivative `L_X` on symbols.

use crate::error::{check_dim, Result};
use crate::field::VectorField;
use crate::poly::Poly;
use crate::scalar::Rat;
use crate::symbol::{SymKey, Symbol};

/// `L_X u = ⟨X, η⟩u − ρ(DX)u`.
///
/// The first term differentiates coefficients along `X`. The second is the
/// derivation action of the Jacobian `A = DX` (with `A^i_a = ∂_a Xⁱ`) on the
/// contravariant fiber: `v_a ↦ Σ_i A^i_a v_i` on each wedge factor and
/// `ξ_a ↦ Σ_i A^i_a ξ_i` on the ξ-polynomial.
pub fn lie_symbol(x: &VectorField, u: &Symbol) -> Result<Symbol> {
    check_dim(u.n(), x.n())?;
    let n = u.n();
    let jac: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|a| x.jacobian(i, a)).collect())
        .collect();
    Ok(u.flat_map_terms(u.p(), |k, c, emit| {
        // ⟨X, η⟩: coefficient differentiation
        for (i, xi_comp) in x.components().iter().enumerate() {
            let e = k.x.get(i);
            if e == 0 || xi_comp.is_zero() {
                continue;
            }
            let base = k.x.dec(i).unwrap();
            let ce = c * Rat::from_integer(i64::from(e).into());
            for (m, a) in xi_comp.terms() {
                emit(SymKey::new(base.add(m), k.wedge.clone(), k.xi.clone()), &ce * a);
            }
        }
        // −ρ(DX) on the wedge factors
        for a in k.wedge.indices() {
            for (i, row) in jac.iter().enumerate() {
                let j = &row[a];
                if j.is_zero() {
                    continue;
                }
                if let Some((s, w)) = k.wedge.substitute(a, i) {
                    let cs = if s > 0 { -c } else { c.clone() };
                    for (m, b) in j.terms() {
                        emit(SymKey::new(k.x.add(m), w.clone(), k.xi.clone()), &cs * b);
                    }
                }
            }
        }
        // −ρ(DX) on the ξ-polynomial
        for a in 0..n {
            let e = k.xi.get(a);
            if e == 0 {
                continue;
            }
            let lowered = k.xi.dec(a).unwrap();
            let ce = -(c * Rat::from_integer(i64::from(e).into()));
            for (i, row) in jac.iter().enumerate() {
                let j = &row[a];
                for (m, b) in j.terms() {
                    emit(
                        SymKey::new(k.x.add(m), k.wedge.clone(), lowered.inc(i)),
                        &ce * b,
                    );
                }
            }
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::fixed_field;
    use crate::midx::MIdx;
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
    fn translation_acts_on_coefficients() {
        let d1 = VectorField::partial(2, 0);
        assert_eq!(
            lie_symbol(&d1, &t(&[1, 0], &[], &[1, 0], 1)).unwrap(),
            t(&[0, 0], &[], &[1, 0], 1)
        );
    }

    #[test]
    fn linear_field_acts_on_both_slots() {
        // L_{x¹∂₂}(v₁ ⊗ ξ₁) = −v₂ ⊗ ξ₁ − v₁ ⊗ ξ₂
        let x = VectorField::linear(2, 0, 1);
        let got = lie_symbol(&x, &t(&[0, 0], &[0], &[1, 0], 1)).unwrap();
        let want = &t(&[0, 0], &[1], &[1, 0], -1) + &t(&[0, 0], &[0], &[0, 1], -1);
        assert_eq!(got, want);
    }

    #[test]
    fn quadratic_field_example() {
        // L_{(x¹)²∂₂}(v₁ ⊗ ξ₁) = −2x¹ v₂ ⊗ ξ₁ − 2x¹ v₁ ⊗ ξ₂
        let got = lie_symbol(&fixed_field(2), &t(&[0, 0], &[0], &[1, 0], 1)).unwrap();
        let want = &t(&[1, 0], &[1], &[1, 0], -2) + &t(&[1, 0], &[0], &[0, 1], -2);
        assert_eq!(got, want);
    }

    #[test]
    fn dimension_mismatch() {
        assert!(lie_symbol(&VectorField::partial(3, 0), &t(&[0, 0], &[], &[1, 0], 1)).is_err());
    }
}
