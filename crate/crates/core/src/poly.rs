//! Multivariate polynomials in `x¹, …, xⁿ` with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::midx::MIdx;
use crate::scalar::{from_bigint, pretty_rat, Rat};

/// A polynomial in canonical form: zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<MIdx, Rat>,
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        Self::monomial(MIdx::zero(n), c)
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rat::one())
    }

    /// The coordinate function `x^{i+1}` (0-based `i`).
    pub fn var(n: usize, i: usize) -> Self {
        Self::monomial(MIdx::unit(n, i), Rat::one())
    }

    pub fn monomial(exp: MIdx, c: Rat) -> Self {
        let mut p = Poly::zero(exp.dim());
        p.add_term(exp, c);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (MIdx, Rat)>) -> Result<Self> {
        let mut p = Poly::zero(n);
        for (m, c) in terms {
            check_dim(n, m.dim())?;
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<MIdx, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MIdx::degree).max()
    }

    pub fn coeff(&self, m: &MIdx) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, m: MIdx, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.dim(), self.n);
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        check_dim(self.n, other.n)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        check_dim(self.n, other.n)?;
        let mut out = Poly::zero(self.n);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(ma.add(mb), a * b);
            }
        }
        Ok(out)
    }

    /// ∂/∂x^{i+1}.
    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            if let Some(d) = m.dec(i) {
                out.add_term(d, c * Rat::from_integer(m.get(i).into()));
            }
        }
        out
    }

    /// ∂^γ.
    pub fn partial_multi(&self, gamma: &MIdx) -> Poly {
        let mut out = Poly::zero(self.n);
        for (m, c) in &self.terms {
            if let Some(d) = m.checked_sub(gamma) {
                out.add_term(d, c * from_bigint(m.falling(gamma)));
            }
        }
        out
    }

    /// Multiplication by the monomial `x^m`.
    pub fn shift(&self, m: &MIdx) -> Poly {
        Poly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.add(m), c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, point: &[Rat]) -> Result<Rat> {
        check_dim(self.n, point.len())?;
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.as_slice()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// The single constant term when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.degree() {
            None => Some(Rat::zero()),
            Some(0) => Some(self.coeff(&MIdx::zero(self.n))),
            Some(_) => None,
        }
    }
}

/// Applies one of the ring operations by name; used by the CLI and tests.
pub enum PolyOp<'a> {
    Add(&'a Poly),
    Mul(&'a Poly),
    Scale(&'a Rat),
    Partial(usize),
}

pub fn poly_calculus(p: &Poly, op: PolyOp<'_>) -> Result<Poly> {
    match op {
        PolyOp::Add(q) => p.checked_add(q),
        PolyOp::Mul(q) => p.checked_mul(q),
        PolyOp::Scale(c) => Ok(p.scale(c)),
        PolyOp::Partial(i) if i < p.n => Ok(p.partial(i)),
        PolyOp::Partial(i) => Err(Error::Argument(format!(
            "partial index {i} out of range for n = {}",
            p.n
        ))),
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial dimension mismatch")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial dimension mismatch")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial dimension mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", pretty_rat(c))?;
            for (i, &e) in m.as_slice().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{self}]")
    }
}
