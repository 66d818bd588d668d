//! The projective algebra `sl(n+1) ⊂ Vect(ℝⁿ)`, its Killing-dual basis and
//! the Casimir operators `C` (through `L`) and `𝓒` (through `𝓛`).
//!
//! The Casimir is assembled from a basis and its dual,
//!
//! ```text
//! C = 2 Σ_i L_{εⁱ} L_{e_i} + L_{Σ_i [e_i, εⁱ]} + (1/2n) L_𝓔² + (n/(n+1)) Σ_A L_{h_A} L_{h_{A*}}
//! ```
//!
//! with `e_i = ∂_i`, `εⁱ = −xⁱ𝓔/(2(n+1))`, `h_A = −Σ A_kl x^l ∂_k` and `A*` the
//! Killing dual of `A` in `sl(n)`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{One, Zero};

use crate::action::{t_term, Action};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::koszul::{
    delta_delta_star, delta_div_delta_star, delta_star_delta, delta_star_div_delta,
};
use crate::linalg::RatMatrix;
use crate::midx::MIdx;
use crate::poly::Poly;
use crate::scalar::{frac, Rat};
use crate::symbol::Symbol;

/// The `n + n² + n` generators `∂_r`, `x^s ∂_r`, `x^r 𝓔`, in that order
/// (`x^s∂_r` ordered by `r` then `s`).
pub fn projective_generators(n: usize) -> Result<Vec<VectorField>> {
    if n < 2 {
        return Err(Error::Argument(format!("the projective algebra needs n ≥ 2, got {n}")));
    }
    let mut out: Vec<VectorField> = (0..n).map(|r| VectorField::partial(n, r)).collect();
    for r in 0..n {
        for s in 0..n {
            out.push(VectorField::linear(n, s, r));
        }
    }
    out.extend((0..n).map(|r| VectorField::quadratic(n, r)));
    Ok(out)
}

/// `E_ab` for `a ≠ b`, then `E_aa − E_{a+1,a+1}`.
pub fn traceless_basis(n: usize) -> Vec<RatMatrix> {
    let mut out = Vec::with_capacity(n * n - 1);
    for a in 0..n {
        for b in 0..n {
            if a != b {
                let mut m = RatMatrix::zeros(n, n);
                m.set(a, b, Rat::one());
                out.push(m);
            }
        }
    }
    for a in 0..n - 1 {
        let mut m = RatMatrix::zeros(n, n);
        m.set(a, a, Rat::one());
        m.set(a + 1, a + 1, -Rat::one());
        out.push(m);
    }
    out
}

fn trace(m: &RatMatrix) -> Rat {
    (0..m.rows()).map(|i| m.get(i, i).clone()).sum()
}

/// The Killing form of `sl(n)`, `2n · tr(AB)`.
pub fn killing(a: &RatMatrix, b: &RatMatrix) -> Result<Rat> {
    let n = a.rows();
    Ok(trace(&a.mul(b)?) * Rat::from_integer((2 * n as i64).into()))
}

/// The basis dual to `basis` under the Killing form, by Gram inversion.
pub fn killing_dual(basis: &[RatMatrix]) -> Result<Vec<RatMatrix>> {
    let Some(first) = basis.first() else {
        return Ok(Vec::new());
    };
    let n = first.rows();
    let m = basis.len();
    let mut gram = RatMatrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            gram.set(i, j, killing(&basis[i], &basis[j])?);
        }
    }
    let inv = gram
        .inverse()
        .map_err(|_| Error::InconsistentBasis("Killing Gram matrix is singular".into()))?;
    Ok((0..m)
        .map(|j| {
            let mut d = RatMatrix::zeros(n, n);
            for (mi, b) in basis.iter().enumerate() {
                let c = inv.get(mi, j);
                if c.is_zero() {
                    continue;
                }
                for r in 0..n {
                    for s in 0..n {
                        let v = d.get(r, s) + c * b.get(r, s);
                        d.set(r, s, v);
                    }
                }
            }
            d
        })
        .collect())
}

/// `h_A = −Σ_{k,l} A_kl x^l ∂_k`.
pub fn matrix_field(a: &RatMatrix) -> VectorField {
    let n = a.rows();
    let comps = (0..n)
        .map(|k| {
            let mut c = Poly::zero(n);
            for l in 0..n {
                c.add_term(MIdx::unit(n, l), -a.get(k, l).clone());
            }
            c
        })
        .collect();
    VectorField::new(comps).expect("components share n")
}

/// The generators entering the Casimir together with their duals.
#[derive(Debug, Clone)]
pub struct ProjectiveBasis {
    n: usize,
    pub e: Vec<VectorField>,
    pub euler: VectorField,
    pub h: Vec<VectorField>,
    pub h_dual: Vec<VectorField>,
    pub eps: Vec<VectorField>,
    /// `Σ_i [e_i, εⁱ]`
    pub bracket_sum: VectorField,
    pub traceless: Vec<RatMatrix>,
    pub traceless_dual: Vec<RatMatrix>,
}

impl ProjectiveBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Argument(format!("the projective algebra needs n ≥ 2, got {n}")));
        }
        let e: Vec<_> = (0..n).map(|i| VectorField::partial(n, i)).collect();
        let euler = VectorField::euler(n);
        let traceless = traceless_basis(n);
        let traceless_dual = killing_dual(&traceless)?;
        let h = traceless.iter().map(matrix_field).collect();
        let h_dual = traceless_dual.iter().map(matrix_field).collect();
        let s = -frac(1, 2 * (n as i64 + 1));
        let eps: Vec<_> = (0..n).map(|i| VectorField::quadratic(n, i).scale(&s)).collect();
        let mut bracket_sum = VectorField::zero(n);
        for (ei, epsi) in e.iter().zip(&eps) {
            bracket_sum = bracket_sum.checked_add(&ei.bracket(epsi)?)?;
        }
        Ok(ProjectiveBasis {
            n,
            e,
            euler,
            h,
            h_dual,
            eps,
            bracket_sum,
            traceless,
            traceless_dual,
        })
    }

    /// Shared, lazily built basis for dimension `n`.
    pub fn cached(n: usize) -> Result<Arc<ProjectiveBasis>> {
        static CACHE: OnceLock<RwLock<HashMap<usize, Arc<ProjectiveBasis>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(b) = cache.read().unwrap().get(&n) {
            return Ok(b.clone());
        }
        let b = Arc::new(ProjectiveBasis::new(n)?);
        Ok(cache.write().unwrap().entry(n).or_insert(b).clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Applies the Casimir built from `action`.
    pub fn casimir(&self, action: Action, u: &Symbol) -> Result<Symbol> {
        let n = self.n as i64;
        let act = |x: &VectorField, v: &Symbol| action.apply(x, v);
        let mut out = Symbol::zero(u.n(), u.p());
        for (ei, epsi) in self.e.iter().zip(&self.eps) {
            out.add_scaled(&act(epsi, &act(ei, u)?)?, &Rat::from_integer(2.into()));
        }
        out.add_assign(&act(&self.bracket_sum, u)?);
        out.add_scaled(&act(&self.euler, &act(&self.euler, u)?)?, &frac(1, 2 * n));
        let c = frac(n, n + 1);
        for (h, hd) in self.h.iter().zip(&self.h_dual) {
            out.add_scaled(&act(h, &act(hd, u)?)?, &c);
        }
        Ok(out)
    }
}

fn basis_for(u: &Symbol) -> Result<Arc<ProjectiveBasis>> {
    ProjectiveBasis::cached(u.n())
}

/// The Casimir operator `C` of the geometric action.
pub fn casimir_c(u: &Symbol) -> Result<Symbol> {
    basis_for(u)?.casimir(Action::Geometric, u)
}

/// The Casimir operator `𝓒` of the operator action, in symbolic form.
pub fn casimir_quant(u: &Symbol) -> Result<Symbol> {
    basis_for(u)?.casimir(Action::Operator, u)
}

/// `α^k_p = (k+n+1)(k+p)/(n+1)`.
pub fn alpha(n: usize, k: u32, p: usize) -> Rat {
    let (n, k, p) = (n as i64, i64::from(k), p as i64);
    frac((k + n + 1) * (k + p), n + 1)
}

/// `β^k_p = (k+n)(k+p)/(n+1)`.
pub fn beta(n: usize, k: u32, p: usize) -> Rat {
    let (n, k, p) = (n as i64, i64::from(k), p as i64);
    frac((k + n) * (k + p), n + 1)
}

/// The two eigenvalues of `C` on `S^k_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumValue {
    pub alpha: Rat,
    pub beta: Rat,
}

pub fn spectrum(n: usize, k: u32, p: usize) -> SpectrumValue {
    SpectrumValue { alpha: alpha(n, k, p), beta: beta(n, k, p) }
}

/// `((k+n+1)/(n+1)) δδ* + ((k+n)/(n+1)) δ*δ` on a ξ-homogeneous `u` of degree `k`.
pub fn casimir_closed_form(u: &Symbol, k: u32) -> Result<Symbol> {
    u.expect_degree(k)?;
    let n = u.n() as i64;
    let k = i64::from(k);
    let mut out = delta_delta_star(u).scale(&frac(k + n + 1, n + 1));
    out.add_scaled(&delta_star_delta(u), &frac(k + n, n + 1));
    Ok(out)
}

/// `N = 𝓒 − C`, by definition.
pub fn n_casimir(u: &Symbol) -> Result<Symbol> {
    Ok(&casimir_quant(u)? - &casimir_c(u)?)
}

/// `N = (δ(η∂)δ* + δ*(η∂)δ)/(n+1)`.
pub fn n_casimir_closed_form(u: &Symbol) -> Symbol {
    let s = frac(1, u.n() as i64 + 1);
    (&delta_div_delta_star(u) + &delta_star_div_delta(u)).scale(&s)
}

/// `N = 2 Σ_i t₁(εⁱ) L_{e_i}`: only the quadratic fields have lowering terms.
pub fn n_casimir_t1(u: &Symbol) -> Result<Symbol> {
    let b = basis_for(u)?;
    let mut out = Symbol::zero(u.n(), u.p());
    for (ei, epsi) in b.e.iter().zip(&b.eps) {
        let lu = Action::Geometric.apply(ei, u)?;
        out.add_scaled(&t_term(epsi, 1, &lu)?, &Rat::from_integer(2.into()));
    }
    Ok(out)
}
