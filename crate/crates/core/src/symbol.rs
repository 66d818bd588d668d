//! The symbol spaces `S_p`: finite sums of `x^β ⊗ v_w ⊗ ξ^α` with rational
//! coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Result};
use crate::midx::MIdx;
use crate::poly::Poly;
use crate::scalar::{pretty_rat, Rat};
use crate::word::Word;

/// Key of a monomial term: x-exponent, contravariant exterior word, ξ-exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SymKey {
    pub x: MIdx,
    pub wedge: Word,
    pub xi: MIdx,
}

impl SymKey {
    pub fn new(x: MIdx, wedge: Word, xi: MIdx) -> Self {
        SymKey { x, wedge, xi }
    }
}

/// An element of `S_p` with polynomial coefficients, possibly mixing several
/// ξ-degrees.
///
/// The zero symbol is compatible with every form degree: adding it to, or
/// comparing it with, a symbol of another degree is allowed.
#[derive(Clone)]
pub struct Symbol {
    n: usize,
    p: usize,
    terms: BTreeMap<SymKey, Rat>,
}

impl Symbol {
    pub fn zero(n: usize, p: usize) -> Self {
        Symbol {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    /// A single term `c · x^x ⊗ v_wedge ⊗ ξ^xi`.
    pub fn monomial(x: MIdx, wedge: Word, xi: MIdx, c: Rat) -> Self {
        let mut s = Symbol::zero(x.dim(), wedge.len());
        s.add_term(SymKey::new(x, wedge, xi), c);
        s
    }

    /// Validating constructor.
    pub fn from_terms(
        n: usize,
        p: usize,
        terms: impl IntoIterator<Item = (SymKey, Rat)>,
    ) -> Result<Self> {
        if p > n {
            return Err(Error::Argument(format!("form degree p = {p} exceeds n = {n}")));
        }
        let mut s = Symbol::zero(n, p);
        for (k, c) in terms {
            check_dim(n, k.x.dim())?;
            check_dim(n, k.xi.dim())?;
            if k.wedge.len() != p {
                return Err(Error::DegreeMismatch {
                    expected: p,
                    found: k.wedge.len(),
                });
            }
            if k.wedge.indices().any(|i| i >= n) {
                return Err(Error::Argument(format!(
                    "wedge {:?} out of range for n = {n}",
                    k.wedge
                )));
            }
            s.add_term(k, c);
        }
        Ok(s)
    }

    /// `Σ_w c_w(x) v_w ⊗ ξ^xi`, the polynomial coefficient spread over its monomials.
    pub fn from_poly(coef: &Poly, wedge: Word, xi: MIdx) -> Self {
        let mut s = Symbol::zero(coef.n(), wedge.len());
        for (m, c) in coef.terms() {
            s.add_term(SymKey::new(m.clone(), wedge.clone(), xi.clone()), c.clone());
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<SymKey, Rat> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<SymKey, Rat> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &SymKey) -> Rat {
        self.terms.get(key).cloned().unwrap_or_else(Rat::zero)
    }

    pub(crate) fn with_degree(mut self, p: usize) -> Self {
        debug_assert!(self.terms.is_empty() || self.p == p);
        self.p = p;
        self
    }

    pub fn add_term(&mut self, key: SymKey, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(key.wedge.len(), self.p, "wedge length differs from p");
        match self.terms.entry(key) {
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

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Symbol, c: &Rat) {
        if other.is_zero() || c.is_zero() {
            return;
        }
        assert_eq!(self.n, other.n, "symbol dimension mismatch");
        if self.is_zero() {
            self.p = other.p;
        }
        assert_eq!(self.p, other.p, "symbol form-degree mismatch");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn add_assign(&mut self, other: &Symbol) {
        self.add_scaled(other, &Rat::one());
    }

    pub fn checked_add(&self, other: &Symbol) -> Result<Symbol> {
        check_dim(self.n, other.n)?;
        if !self.is_zero() && !other.is_zero() && self.p != other.p {
            return Err(Error::DegreeMismatch {
                expected: self.p,
                found: other.p,
            });
        }
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Symbol {
        if c.is_zero() {
            return Symbol::zero(self.n, self.p);
        }
        Symbol {
            n: self.n,
            p: self.p,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Maps each term through `f`, which may emit any number of new terms.
    pub(crate) fn flat_map_terms(
        &self,
        out_p: usize,
        mut f: impl FnMut(&SymKey, &Rat, &mut dyn FnMut(SymKey, Rat)),
    ) -> Symbol {
        let mut out = Symbol::zero(self.n, out_p);
        for (k, c) in &self.terms {
            f(k, c, &mut |key, val| out.add_term(key, val));
        }
        out
    }

    /// Distinct ξ-degrees present, ascending.
    pub fn xi_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|k| k.xi.degree()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn max_xi_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.xi.degree()).max()
    }

    pub fn max_x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.x.degree()).max()
    }

    /// The homogeneous component of ξ-degree `k`.
    pub fn component(&self, k: u32) -> Symbol {
        Symbol {
            n: self.n,
            p: self.p,
            terms: self
                .terms
                .iter()
                .filter(|(key, _)| key.xi.degree() == k)
                .map(|(key, v)| (key.clone(), v.clone()))
                .collect(),
        }
    }

    /// Splits into homogeneous components, keyed by ξ-degree.
    pub fn components(&self) -> BTreeMap<u32, Symbol> {
        let mut out: BTreeMap<u32, Symbol> = BTreeMap::new();
        for (k, v) in &self.terms {
            out.entry(k.xi.degree())
                .or_insert_with(|| Symbol::zero(self.n, self.p))
                .terms
                .insert(k.clone(), v.clone());
        }
        out
    }

    /// The degree `k` if the symbol is ξ-homogeneous (`None` for zero).
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        match self.xi_degrees().as_slice() {
            [] => Ok(None),
            [k] => Ok(Some(*k)),
            ds => Err(Error::MixedDegree(format!("ξ-degrees {ds:?} present"))),
        }
    }

    /// Requires ξ-homogeneity of degree exactly `k` (the zero symbol passes).
    pub fn expect_degree(&self, k: u32) -> Result<()> {
        match self.homogeneous_degree()? {
            None => Ok(()),
            Some(d) if d == k => Ok(()),
            Some(d) => Err(Error::MixedDegree(format!("expected degree {k}, found {d}"))),
        }
    }
}

impl PartialEq for Symbol {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.terms == other.terms
            && (self.p == other.p || self.terms.is_empty())
    }
}

impl Eq for Symbol {}

impl Add for &Symbol {
    type Output = Symbol;
    fn add(self, rhs: &Symbol) -> Symbol {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl Sub for &Symbol {
    type Output = Symbol;
    fn sub(self, rhs: &Symbol) -> Symbol {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rat::one());
        out
    }
}

impl Neg for &Symbol {
    type Output = Symbol;
    fn neg(self) -> Symbol {
        self.scale(&-Rat::one())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", pretty_rat(c))?;
            for (i, &e) in k.x.as_slice().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{}", i + 1, e)?,
                }
            }
            if !k.wedge.is_empty() {
                let w: Vec<String> = k.wedge.indices().map(|i| format!("v{}", i + 1)).collect();
                write!(f, "·{}", w.join("∧"))?;
            }
            for (i, &e) in k.xi.as_slice().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·ξ{}", i + 1)?,
                    _ => write!(f, "·ξ{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Symbol(n={}, p={})[{self}]", self.n, self.p)
    }
}

/// Monomial basis of `S^k_p` with x-degree `≤ max_x`.
pub fn monomial_basis(n: usize, p: usize, k: u32, max_x: u32) -> Vec<Symbol> {
    let xs = MIdx::up_to_degree(n, max_x);
    let words = Word::all_of_length(n, p);
    let xis = MIdx::of_degree(n, k);
    let mut out = Vec::with_capacity(xs.len() * words.len() * xis.len());
    for x in &xs {
        for w in &words {
            for xi in &xis {
                out.push(Symbol::monomial(x.clone(), w.clone(), xi.clone(), Rat::one()));
            }
        }
    }
    out
}

/// Monomial basis of `S^k_p` with x-degree exactly `x_deg`.
pub fn monomial_basis_exact(n: usize, p: usize, k: u32, x_deg: u32) -> Vec<Symbol> {
    let xs = MIdx::of_degree(n, x_deg);
    let words = Word::all_of_length(n, p);
    let xis = MIdx::of_degree(n, k);
    let mut out = Vec::new();
    for x in &xs {
        for w in &words {
            for xi in &xis {
                out.push(Symbol::monomial(x.clone(), w.clone(), xi.clone(), Rat::one()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn construction_validates() {
        let key = SymKey::new(MIdx::zero(2), Word::single(0), MIdx::zero(2));
        assert!(Symbol::from_terms(2, 1, [(key.clone(), int(1))]).is_ok());
        assert!(matches!(
            Symbol::from_terms(2, 0, [(key.clone(), int(1))]),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(Symbol::from_terms(3, 1, [(key, int(1))]).is_err());
    }

    #[test]
    fn components_and_zero_compatibility() {
        let a = Symbol::monomial(MIdx::zero(2), Word::empty(), MIdx::unit(2, 0), int(1));
        let b = Symbol::monomial(MIdx::unit(2, 1), Word::empty(), MIdx::zero(2), int(2));
        let s = &a + &b;
        assert_eq!(s.xi_degrees(), vec![0, 1]);
        assert!(s.homogeneous_degree().is_err());
        assert_eq!(s.component(1), a);
        assert_eq!(Symbol::zero(2, 0), Symbol::zero(2, 2));
        assert_eq!(monomial_basis(3, 1, 2, 2).len(), 10 * 3 * 6);
    }
}
