//! The Koszul differential `δ`, its dual `δ*`, the divergence `(η∂)` and the
//! `A/B` projectors on symbol spaces.
//!
//! All of these act fiberwise except the divergence, and none of them touch
//! the x-exponent bookkeeping beyond what is stated.

use crate::error::{Error, Result};
use crate::scalar::Rat;
use crate::symbol::{SymKey, Symbol};

/// `δ = Σ_j π_a(v_j) ∘ (β^j ∂)`: moves one ξ-slot into the exterior slot.
pub fn delta(u: &Symbol) -> Symbol {
    let n = u.n();
    if u.p() >= n {
        return Symbol::zero(n, u.p());
    }
    u.flat_map_terms(u.p() + 1, |k, c, emit| {
        for j in 0..n {
            let e = k.xi.get(j);
            if e == 0 {
                continue;
            }
            if let Some((s, w)) = k.wedge.insert(j) {
                let v = c * Rat::from_integer((i64::from(e) * i64::from(s)).into());
                emit(SymKey::new(k.x.clone(), w, k.xi.dec(j).unwrap()), v);
            }
        }
    })
}

/// `δ* = Σ_j i_{β^j} ∘ π_s(v_j)`: moves one exterior slot into ξ.
pub fn delta_star(u: &Symbol) -> Symbol {
    if u.p() == 0 {
        return Symbol::zero(u.n(), 0);
    }
    u.flat_map_terms(u.p() - 1, |k, c, emit| {
        for j in k.wedge.indices() {
            let (s, w) = k.wedge.contract(j).unwrap();
            let v = if s > 0 { c.clone() } else { -c };
            emit(SymKey::new(k.x.clone(), w, k.xi.inc(j)), v);
        }
    })
}

/// The divergence `(η∂) = Σ_j ∂_{x_j} ∂_{ξ_j}`.
pub fn divergence(u: &Symbol) -> Symbol {
    let n = u.n();
    u.flat_map_terms(u.p(), |k, c, emit| {
        for j in 0..n {
            let (a, b) = (k.x.get(j), k.xi.get(j));
            if a == 0 || b == 0 {
                continue;
            }
            let v = c * Rat::from_integer((i64::from(a) * i64::from(b)).into());
            emit(
                SymKey::new(k.x.dec(j).unwrap(), k.wedge.clone(), k.xi.dec(j).unwrap()),
                v,
            );
        }
    })
}

/// `i_η = Σ_j ∂_{x_j} ∘ i_{β^j}`, the commutator `[(η∂), δ*]`.
pub fn interior_eta(u: &Symbol) -> Symbol {
    if u.p() == 0 {
        return Symbol::zero(u.n(), 0);
    }
    u.flat_map_terms(u.p() - 1, |k, c, emit| {
        for j in k.wedge.indices() {
            let a = k.x.get(j);
            if a == 0 {
                continue;
            }
            let (s, w) = k.wedge.contract(j).unwrap();
            let v = c * Rat::from_integer((i64::from(a) * i64::from(s)).into());
            emit(SymKey::new(k.x.dec(j).unwrap(), w, k.xi.clone()), v);
        }
    })
}

/// `δ ∘ (η∂) ∘ δ*`, the operator driving the A-part corrections.
pub fn delta_div_delta_star(u: &Symbol) -> Symbol {
    delta(&divergence(&delta_star(u))).with_degree(u.p())
}

/// `δ* ∘ (η∂) ∘ δ`, the operator driving the B-part corrections.
pub fn delta_star_div_delta(u: &Symbol) -> Symbol {
    delta_star(&divergence(&delta(u))).with_degree(u.p())
}

/// `δ ∘ δ*` with the result labelled at the input degree.
pub fn delta_delta_star(u: &Symbol) -> Symbol {
    delta(&delta_star(u)).with_degree(u.p())
}

/// `δ* ∘ δ` with the result labelled at the input degree.
pub fn delta_star_delta(u: &Symbol) -> Symbol {
    delta_star(&delta(u)).with_degree(u.p())
}

/// Splits a ξ-homogeneous `u` of degree `k` into its `A` and `B` parts,
/// `δδ*(u)/(k+p)` and `δ*δ(u)/(k+p)`.
pub fn project_ab(u: &Symbol, k: u32) -> Result<(Symbol, Symbol)> {
    u.expect_degree(k)?;
    let grade = k as usize + u.p();
    if grade == 0 {
        return Err(Error::DegenerateGrade);
    }
    let inv = Rat::new(1.into(), (grade as i64).into());
    let a = delta_delta_star(u).scale(&inv);
    let b = delta_star_delta(u).scale(&inv);
    Ok((a, b))
}

/// Which irreducible part a homogeneous symbol lies in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    A,
    B,
}

/// Classifies `u` as a pure A-part (`δu = 0`) or B-part (`δ*u = 0`) element.
/// Zero and `S⁰₀` elements report `None`; mixed input is an error.
pub fn pure_part(u: &Symbol) -> Result<Option<Part>> {
    if u.is_zero() {
        return Ok(None);
    }
    let in_a = delta(u).is_zero();
    let in_b = delta_star(u).is_zero();
    match (in_a, in_b) {
        (true, true) => Ok(None),
        (true, false) => Ok(Some(Part::A)),
        (false, true) => Ok(Some(Part::B)),
        (false, false) => Err(Error::Argument(
            "symbol has nonzero A and B parts".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::midx::MIdx;
    use crate::scalar::{frac, int};
    use crate::word::Word;

    fn m(e: &[u8]) -> MIdx {
        MIdx::from_slice(e)
    }

    fn w(ix: &[usize]) -> Word {
        Word::new(3, ix).unwrap()
    }

    fn t(x: &[u8], wedge: &[usize], xi: &[u8], c: Rat) -> Symbol {
        Symbol::monomial(m(x), w(wedge), m(xi), c)
    }

    #[test]
    fn delta_examples() {
        // δ(1 ⊗ ξ₁) = v₁ ⊗ 1
        assert_eq!(
            delta(&t(&[0, 0], &[], &[1, 0], int(1))),
            t(&[0, 0], &[0], &[0, 0], int(1))
        );
        // δ(v₁ ⊗ ξ₁) = 0
        assert!(delta(&t(&[0, 0], &[0], &[1, 0], int(1))).is_zero());
        // δ(x¹ ⊗ ξ₁²) = 2x¹ v₁ ⊗ ξ₁
        assert_eq!(
            delta(&t(&[1, 0], &[], &[2, 0], int(1))),
            t(&[1, 0], &[0], &[1, 0], int(2))
        );
        // top degree maps to zero rather than failing
        assert!(delta(&t(&[0, 0], &[0, 1], &[1, 0], int(1))).is_zero());
    }

    #[test]
    fn delta_star_examples() {
        assert_eq!(
            delta_star(&t(&[0, 0], &[0], &[0, 0], int(1))),
            t(&[0, 0], &[], &[1, 0], int(1))
        );
        assert!(delta_star(&t(&[0, 0], &[], &[1, 0], int(1))).is_zero());
        // δ*(v₂ ⊗ ξ₁) = 1 ⊗ ξ₁ξ₂
        assert_eq!(
            delta_star(&t(&[0, 0], &[1], &[1, 0], int(1))),
            t(&[0, 0], &[], &[1, 1], int(1))
        );
    }

    #[test]
    fn divergence_examples() {
        assert_eq!(
            divergence(&t(&[1, 0], &[], &[1, 0], int(1))),
            t(&[0, 0], &[], &[0, 0], int(1))
        );
        assert!(divergence(&t(&[0, 0], &[0], &[1, 0], int(1))).is_zero());
        assert_eq!(
            divergence(&t(&[1, 0], &[], &[1, 1], int(1))),
            t(&[0, 0], &[], &[0, 1], int(1))
        );
    }

    #[test]
    fn projector_examples() {
        let v1 = t(&[0, 0], &[0], &[0, 0], int(1));
        let (a, b) = project_ab(&v1, 0).unwrap();
        assert_eq!(a, v1);
        assert!(b.is_zero());

        let xi1 = t(&[0, 0], &[], &[1, 0], int(1));
        let (a, b) = project_ab(&xi1, 1).unwrap();
        assert!(a.is_zero());
        assert_eq!(b, xi1);

        // x¹v₂ ⊗ ξ₁ = (x¹/2)(v₁⊗ξ₂ + v₂⊗ξ₁) + (x¹/2)(v₂⊗ξ₁ − v₁⊗ξ₂)
        let u = t(&[1, 0], &[1], &[1, 0], int(1));
        let (a, b) = project_ab(&u, 1).unwrap();
        let half = frac(1, 2);
        let ea = &t(&[1, 0], &[0], &[0, 1], half.clone()) + &t(&[1, 0], &[1], &[1, 0], half.clone());
        let eb = &t(&[1, 0], &[1], &[1, 0], half.clone()) - &t(&[1, 0], &[0], &[0, 1], half);
        assert_eq!(a, ea);
        assert_eq!(b, eb);
        assert_eq!(&a + &b, u);
    }

    #[test]
    fn projector_rejects_degenerate_and_mixed() {
        let one = t(&[0, 0], &[], &[0, 0], int(1));
        assert_eq!(project_ab(&one, 0), Err(Error::DegenerateGrade));
        let mixed = &one + &t(&[0, 0], &[], &[1, 0], int(1));
        assert!(matches!(project_ab(&mixed, 1), Err(Error::MixedDegree(_))));
        assert!(project_ab(&t(&[0, 0], &[], &[1, 0], int(1)), 2).is_err());
    }

    #[test]
    fn pure_part_classification() {
        let a = t(&[0, 0], &[0], &[0, 0], int(1));
        let b = t(&[0, 0], &[], &[1, 0], int(1));
        assert_eq!(pure_part(&a).unwrap(), Some(Part::A));
        assert_eq!(pure_part(&b).unwrap(), Some(Part::B));
        let mixed = t(&[0, 0], &[1], &[1, 0], int(1));
        assert!(pure_part(&mixed).is_err());
    }
}
