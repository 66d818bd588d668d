//! Polynomial vector fields on ℝⁿ.

use std::fmt;

use rand::Rng;

use crate::error::{check_dim, Error, Result};
use crate::midx::MIdx;
use crate::poly::Poly;
use crate::scalar::{int, Rat};

/// `X = Σ Xⁱ ∂ᵢ` with polynomial components.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VectorField {
    components: Vec<Poly>,
}

impl VectorField {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        let n = components.len();
        if n == 0 {
            return Err(Error::Argument("a vector field needs n ≥ 1 components".into()));
        }
        for c in &components {
            check_dim(n, c.n())?;
        }
        Ok(VectorField { components })
    }

    pub fn zero(n: usize) -> Self {
        VectorField {
            components: vec![Poly::zero(n); n],
        }
    }

    /// `c · ∂_i` for a polynomial `c`.
    pub fn along(i: usize, c: Poly) -> Self {
        let mut x = Self::zero(c.n());
        x.components[i] = c;
        x
    }

    /// The translation `∂_i`.
    pub fn partial(n: usize, i: usize) -> Self {
        Self::along(i, Poly::one(n))
    }

    /// The Euler field `𝓔 = Σ xʳ ∂_r`.
    pub fn euler(n: usize) -> Self {
        VectorField {
            components: (0..n).map(|r| Poly::var(n, r)).collect(),
        }
    }

    /// `x^{s} ∂_r` (0-based).
    pub fn linear(n: usize, s: usize, r: usize) -> Self {
        Self::along(r, Poly::var(n, s))
    }

    /// `x^{r} 𝓔` (0-based).
    pub fn quadratic(n: usize, r: usize) -> Self {
        Self::euler(n).mul_poly(&Poly::var(n, r))
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.components[i]
    }

    /// Highest polynomial degree among the components (0 for the zero field).
    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .filter_map(Poly::degree)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        VectorField {
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn mul_poly(&self, f: &Poly) -> Self {
        VectorField {
            components: self.components.iter().map(|p| p * f).collect(),
        }
    }

    pub fn checked_add(&self, other: &VectorField) -> Result<Self> {
        check_dim(self.n(), other.n())?;
        Ok(VectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// The directional derivative `X.f`.
    pub fn apply(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero(self.n());
        for (i, xi) in self.components.iter().enumerate() {
            if !xi.is_zero() {
                out = &out + &(xi * &f.partial(i));
            }
        }
        out
    }

    /// Jacobian entry `∂_a Xⁱ`.
    pub fn jacobian(&self, i: usize, a: usize) -> Poly {
        self.components[i].partial(a)
    }

    /// Divergence `Σ ∂_i Xⁱ`.
    pub fn divergence(&self) -> Poly {
        let mut out = Poly::zero(self.n());
        for i in 0..self.n() {
            out = &out + &self.jacobian(i, i);
        }
        out
    }

    /// The Lie bracket `[X, Y]`.
    pub fn bracket(&self, other: &VectorField) -> Result<Self> {
        check_dim(self.n(), other.n())?;
        Ok(VectorField {
            components: (0..self.n())
                .map(|i| &self.apply(&other.components[i]) - &other.apply(&self.components[i]))
                .collect(),
        })
    }

    /// A field whose components are random integer polynomials of degree exactly
    /// `degree` in at least one component, coefficients in `[-3, 3]`.
    pub fn random<R: Rng>(n: usize, degree: u32, rng: &mut R) -> Self {
        loop {
            let components = (0..n)
                .map(|_| {
                    let mut p = Poly::zero(n);
                    for m in MIdx::up_to_degree(n, degree) {
                        if rng.gen_bool(0.5) {
                            p.add_term(m, int(rng.gen_range(-3..=3)));
                        }
                    }
                    p
                })
                .collect();
            let x = VectorField { components };
            if x.degree() == degree {
                return x;
            }
        }
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})∂{}", i + 1))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// `(x¹)² ∂₂`, the fixed field used throughout the classification.
pub fn fixed_field(n: usize) -> VectorField {
    let x1 = Poly::var(n, 0);
    VectorField::along(1, &x1 * &x1)
}
