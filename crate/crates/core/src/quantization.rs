//! The projectively equivariant quantization `Q`, its inverse, the
//! obstruction operators `γ_i` and the invariant maps `K`, `K′`.
//!
//! Operators are handled in symbolic form throughout: "an operator" below is
//! its affine symbol, so `Q` maps symbols to symbols and the operator action
//! is [`lie_symbolic`].

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::action::lie_symbolic;
use crate::casimir::{alpha, beta, n_casimir};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::koszul::{delta, delta_div_delta_star, delta_star_div_delta, pure_part, Part};
use crate::scalar::{frac, Rat};
use crate::symbol::Symbol;

/// The correction scalars on `S^k_p`: `a[l−1]` multiplies `(δ(η∂)δ*)^l`,
/// `b[l−1]` multiplies `(δ*(η∂)δ)^l`, for `1 ≤ l ≤ k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QCoefficients {
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
}

impl QCoefficients {
    fn compute(n: usize, k: u32, p: usize) -> Self {
        let s = frac(1, n as i64 + 1);
        let series = |ev: fn(usize, u32, usize) -> Rat| {
            let top = ev(n, k, p);
            let mut acc = Rat::from_integer(1.into());
            (1..=k)
                .map(|j| {
                    acc = &acc * &s / (&top - ev(n, k - j, p));
                    acc.clone()
                })
                .collect()
        };
        QCoefficients { a: series(alpha), b: series(beta) }
    }

    /// Cached coefficients; the cache is filled once per `(n, k, p)`.
    pub fn get(n: usize, k: u32, p: usize) -> Arc<QCoefficients> {
        type Cache = RwLock<HashMap<(usize, u32, usize), Arc<QCoefficients>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(c) = cache.read().unwrap().get(&(n, k, p)) {
            return c.clone();
        }
        let c = Arc::new(Self::compute(n, k, p));
        cache.write().unwrap().entry((n, k, p)).or_insert(c).clone()
    }
}

fn quantize_homogeneous(u: &Symbol, k: u32) -> Symbol {
    let coef = QCoefficients::get(u.n(), k, u.p());
    let mut out = u.clone();
    let (mut a, mut b) = (u.clone(), u.clone());
    for l in 0..k as usize {
        a = delta_div_delta_star(&a);
        b = delta_star_div_delta(&b);
        if a.is_zero() && b.is_zero() {
            break;
        }
        out.add_scaled(&a, &coef.a[l]);
        out.add_scaled(&b, &coef.b[l]);
    }
    out
}

/// The equivariant quantization, applied per ξ-homogeneous component.
pub fn quantize(u: &Symbol) -> Symbol {
    let mut out = Symbol::zero(u.n(), u.p());
    for (k, c) in u.components() {
        out.add_assign(&quantize_homogeneous(&c, k));
    }
    out
}

/// The equivariant symbol map `Q⁻¹`, by downward triangular inversion.
pub fn symbol_map(d: &Symbol) -> Symbol {
    let mut rest = d.clone();
    let mut out = Symbol::zero(d.n(), d.p());
    while let Some(k) = rest.max_xi_degree() {
        let top = rest.component(k);
        rest = &rest - &quantize_homogeneous(&top, k);
        out.add_assign(&top);
    }
    out
}

fn eigenvalue(u: &Symbol, k: u32, part: Option<Part>) -> Rat {
    match part {
        Some(Part::B) => beta(u.n(), k, u.p()),
        // pure A, or S⁰₀ where both formulas give zero
        _ => alpha(u.n(), k, u.p()),
    }
}

/// Builds `Q(P)` for a `C`-eigenvector `P` from the eigen-equation
/// `𝓒(Q P) = λ Q P` alone, with `N = 𝓒 − C` evaluated through the vector
/// fields rather than its closed form.
pub fn casimir_solve(p_sym: &Symbol, k: u32) -> Result<Symbol> {
    p_sym.expect_degree(k)?;
    let part = pure_part(p_sym)?;
    let lambda = eigenvalue(p_sym, k, part);
    let mut out = p_sym.clone();
    let mut cur = p_sym.clone();
    for j in (0..k).rev() {
        let next = n_casimir(&cur)?.component(j);
        if next.is_zero() {
            break;
        }
        let mu = eigenvalue(&next, j, pure_part(&next)?);
        cur = next.scale(&(Rat::from_integer(1.into()) / (&lambda - mu)));
        out.add_assign(&cur);
    }
    Ok(out)
}

fn transported(x: &VectorField, u: &Symbol) -> Result<Symbol> {
    Ok(symbol_map(&lie_symbolic(x, &quantize(u))?))
}

/// `γ_i(X) u`: the ξ-degree `k − i` part of `Q⁻¹ 𝓛_X Q u` for homogeneous `u`
/// of degree `k`.
pub fn gamma(i: u32, x: &VectorField, u: &Symbol) -> Result<Symbol> {
    if i < 1 {
        return Err(Error::Argument("γ_i needs i ≥ 1".into()));
    }
    let k = u.homogeneous_degree()?.unwrap_or(0);
    if i > k {
        return Ok(Symbol::zero(u.n(), u.p()));
    }
    Ok(transported(x, u)?.component(k - i))
}

/// All `γ_i(X) u` at once, keyed by `i ≥ 1`; zero entries are omitted.
pub fn gamma_all(x: &VectorField, u: &Symbol) -> Result<BTreeMap<u32, Symbol>> {
    let k = u.homogeneous_degree()?.unwrap_or(0);
    let full = transported(x, u)?;
    Ok(full
        .components()
        .into_iter()
        .filter(|(j, c)| *j < k && !c.is_zero())
        .map(|(j, c)| (k - j, c))
        .collect())
}

/// Which symbol `K = Q ∘ δ ∘ σ` reads off its argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KReading {
    /// The principal symbol (top ξ-degree part).
    Principal,
    /// The full equivariant symbol `Q⁻¹ D`.
    Equivariant,
}

/// `K: D^k_p → D^{k−1}_{p+1}`, without the range check.
pub fn k_map_unchecked(d: &Symbol, k: u32, reading: KReading) -> Result<Symbol> {
    if let Some(ord) = d.max_xi_degree() {
        if ord > k {
            return Err(Error::Argument(format!("operator of order {ord} exceeds k = {k}")));
        }
    }
    let sigma = match reading {
        KReading::Principal => d.component(k),
        KReading::Equivariant => symbol_map(d),
    };
    Ok(quantize(&delta(&sigma)))
}

/// `K` on `D^k_p`, defined where it is Vect-invariant: `k = 1, p ≥ 1`, or
/// `(k, p) = (2, n−1)`.
pub fn k_map(d: &Symbol, k: u32, reading: KReading) -> Result<Symbol> {
    let (n, p) = (d.n(), d.p());
    if !((k == 1 && p >= 1) || (k == 2 && p + 1 == n)) {
        return Err(Error::Argument(format!("K is not invariant on D^{k}_{p} for n = {n}")));
    }
    k_map_unchecked(d, k, reading)
}

/// `K′: D²₀ → D¹₁`: `½δ` on the quadratic part and `δ` on the linear part of
/// the equivariant symbol, re-quantized.
pub fn k_prime(d: &Symbol) -> Result<Symbol> {
    if d.p() != 0 {
        return Err(Error::Argument("K′ acts on operators on functions".into()));
    }
    if d.max_xi_degree().is_some_and(|k| k > 2) {
        return Err(Error::Argument("K′ needs order ≤ 2".into()));
    }
    let s = symbol_map(d);
    let mut t = delta(&s.component(2)).scale(&frac(1, 2));
    t.add_assign(&delta(&s.component(1)));
    Ok(quantize(&t.with_degree(1)))
}

/// Whether `f` commutes with the operator action of `x` on `u`:
/// `f(𝓛_X u) = 𝓛_X f(u)`. Returns the defect.
pub fn commutation_defect(
    x: &VectorField,
    u: &Symbol,
    f: impl Fn(&Symbol) -> Result<Symbol>,
) -> Result<Symbol> {
    let lhs = f(&lie_symbolic(x, u)?)?;
    let rhs = lie_symbolic(x, &f(u)?)?;
    Ok(&lhs - &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::fixed_field;
    use crate::koszul::project_ab;
    use crate::midx::MIdx;
    use crate::scalar::int;
    use crate::word::Word;

    fn t(x: &[u8], wedge: &[usize], xi: &[u8], c: Rat) -> Symbol {
        Symbol::monomial(MIdx::from_slice(x), Word::new(3, wedge).unwrap(), MIdx::from_slice(xi), c)
    }

    #[test]
    fn quantize_examples() {
        let v1xi1 = t(&[0, 0], &[0], &[1, 0], int(1));
        assert_eq!(quantize(&v1xi1), v1xi1);
        let u = t(&[1, 0], &[0], &[1, 0], int(1));
        let qu = &u + &t(&[0, 0], &[0], &[0, 0], frac(2, 5));
        assert_eq!(quantize(&u), qu);
        assert_eq!(symbol_map(&qu), u);
        let f = t(&[1, 0], &[], &[1, 0], int(1));
        assert_eq!(quantize(&f), f);
        assert_eq!(QCoefficients::get(2, 1, 1).a, vec![frac(1, 5)]);
    }

    #[test]
    fn casimir_solve_matches_quantize() {
        let u = t(&[1, 0], &[0], &[1, 0], int(1));
        let (a, b) = project_ab(&u, 1).unwrap();
        assert_eq!(casimir_solve(&a, 1).unwrap(), quantize(&a));
        assert_eq!(casimir_solve(&b, 1).unwrap(), quantize(&b));
        let c = t(&[0, 0], &[], &[2, 0], int(1));
        assert_eq!(casimir_solve(&c, 2).unwrap(), c);
        let mixed = t(&[1, 0], &[1], &[1, 0], int(1));
        assert!(casimir_solve(&mixed, 1).is_err());
    }

    #[test]
    fn gamma_vanishing_and_not() {
        let x = fixed_field(2);
        assert!(gamma_all(&x, &t(&[1, 0], &[], &[1, 0], int(1))).unwrap().is_empty());
        let u = t(&[0, 0], &[], &[2, 0], int(1));
        assert!(!gamma(1, &x, &u).unwrap().is_zero());
        assert!(gamma_all(&VectorField::partial(2, 0), &u).unwrap().is_empty());
    }

    #[test]
    fn k_examples() {
        let u = t(&[1, 0], &[1], &[1, 0], int(1));
        let got = k_map(&quantize(&u), 1, KReading::Equivariant).unwrap();
        assert_eq!(got, t(&[1, 0], &[0, 1], &[0, 0], int(1)));
        let v = t(&[1, 0], &[0], &[1, 0], int(1));
        assert!(k_map(&quantize(&v), 1, KReading::Equivariant).unwrap().is_zero());
        let f = t(&[0, 0], &[], &[1, 0], int(1));
        assert!(k_map(&f, 1, KReading::Principal).is_err());
    }

    #[test]
    fn k_prime_examples() {
        assert!(k_prime(&t(&[2, 0], &[], &[0, 0], int(1))).unwrap().is_zero());
        assert_eq!(
            k_prime(&quantize(&t(&[0, 0], &[], &[1, 0], int(1)))).unwrap(),
            quantize(&t(&[0, 0], &[0], &[0, 0], int(1)))
        );
        assert_eq!(
            k_prime(&quantize(&t(&[0, 0], &[], &[2, 0], int(1)))).unwrap(),
            quantize(&t(&[0, 0], &[0], &[1, 0], int(1)))
        );
        assert!(k_prime(&t(&[0, 0], &[], &[3, 0], int(1))).is_err());
    }
}
