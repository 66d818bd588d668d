//! Differential operators from p-forms to functions, acting on polynomial
//! p-forms, with their Vect-module structure and the classical invariant maps.
//!
//! Compositions are normal-ordered symbolically with the Leibniz rule
//! `∂^α(f g) = Σ_{γ≤α} C(α,γ) ∂^γ f ∂^{α−γ} g`; nothing is ever recovered by
//! interpolation through test forms.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::One;

use crate::error::{check_dim, Error, Result};
use crate::field::VectorField;
use crate::midx::MIdx;
use crate::poly::Poly;
use crate::scalar::{from_bigint, Rat};
use crate::symbol::{SymKey, Symbol};
use crate::word::Word;

/// A p-form `Σ_w ω_w(x) dx^w` with polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PForm {
    n: usize,
    p: usize,
    terms: BTreeMap<Word, Poly>,
}

impl PForm {
    pub fn zero(n: usize, p: usize) -> Self {
        PForm {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(n: usize, p: usize, terms: impl IntoIterator<Item = (Word, Poly)>) -> Result<Self> {
        if p > n {
            return Err(Error::Argument(format!("form degree p = {p} exceeds n = {n}")));
        }
        let mut out = PForm::zero(n, p);
        for (w, c) in terms {
            check_dim(n, c.n())?;
            if w.len() != p {
                return Err(Error::DegreeMismatch {
                    expected: p,
                    found: w.len(),
                });
            }
            if w.indices().any(|i| i >= n) {
                return Err(Error::Argument(format!("word {w:?} out of range for n = {n}")));
            }
            out.add_term(w, &c);
        }
        Ok(out)
    }

    /// The function `f` viewed as a 0-form.
    pub fn function(f: Poly) -> Self {
        let n = f.n();
        let mut out = PForm::zero(n, 0);
        out.add_term(Word::empty(), &f);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Word, Poly> {
        &self.terms
    }

    pub fn coeff(&self, w: &Word) -> Poly {
        self.terms.get(w).cloned().unwrap_or_else(|| Poly::zero(self.n))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: Word, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.get(&w) {
            Some(prev) => prev + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&w);
        } else {
            self.terms.insert(w, sum);
        }
    }

    pub fn checked_add(&self, other: &PForm) -> Result<PForm> {
        check_dim(self.n, other.n)?;
        if self.p != other.p && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.p,
                found: other.p,
            });
        }
        let mut out = self.clone();
        if out.is_zero() {
            out.p = other.p;
        }
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> PForm {
        let mut out = PForm::zero(self.n, self.p);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), &f.scale(c));
        }
        out
    }
}

impl fmt::Debug for PForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let d: Vec<String> = w.indices().map(|i| format!("dx{}", i + 1)).collect();
                format!("({c}){}", if d.is_empty() { String::new() } else { format!(" {}", d.join("∧")) })
            })
            .collect();
        write!(f, "PForm(n={}, p={})[{}]", self.n, self.p, parts.join(" + "))
    }
}

/// `D ω = Σ_α Σ_w A_α^w(x) ∂^α ω_w`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffOp {
    n: usize,
    p: usize,
    terms: BTreeMap<(MIdx, Word), Poly>,
}

impl DiffOp {
    pub fn zero(n: usize, p: usize) -> Self {
        DiffOp {
            n,
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        n: usize,
        p: usize,
        terms: impl IntoIterator<Item = (MIdx, Word, Poly)>,
    ) -> Result<Self> {
        if p > n {
            return Err(Error::Argument(format!("form degree p = {p} exceeds n = {n}")));
        }
        let mut out = DiffOp::zero(n, p);
        for (alpha, w, c) in terms {
            check_dim(n, alpha.dim())?;
            check_dim(n, c.n())?;
            if w.len() != p {
                return Err(Error::DegreeMismatch {
                    expected: p,
                    found: w.len(),
                });
            }
            if w.indices().any(|i| i >= n) {
                return Err(Error::Argument(format!("word {w:?} out of range for n = {n}")));
            }
            out.add_term(alpha, w, &c);
        }
        Ok(out)
    }

    /// Multiplication by the function `f` (an order-0 operator on functions).
    pub fn multiplication(f: Poly) -> Self {
        let n = f.n();
        let mut out = DiffOp::zero(n, 0);
        out.add_term(MIdx::zero(n), Word::empty(), &f);
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<(MIdx, Word), Poly> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `max |α|` over nonzero coefficients.
    pub fn order(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|(a, _)| a.degree())
            .max()
            .ok_or(Error::UndefinedOrder)
    }

    pub fn add_term(&mut self, alpha: MIdx, w: Word, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let key = (alpha, w);
        let sum = match self.terms.get(&key) {
            Some(prev) => prev + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    pub fn checked_add(&self, other: &DiffOp) -> Result<DiffOp> {
        check_dim(self.n, other.n)?;
        if self.p != other.p && !self.is_zero() && !other.is_zero() {
            return Err(Error::DegreeMismatch {
                expected: self.p,
                found: other.p,
            });
        }
        let mut out = self.clone();
        if out.is_zero() {
            out.p = other.p;
        }
        for ((a, w), c) in &other.terms {
            out.add_term(a.clone(), w.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &DiffOp) -> Result<DiffOp> {
        self.checked_add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> DiffOp {
        let mut out = DiffOp::zero(self.n, self.p);
        for ((a, w), f) in &self.terms {
            out.add_term(a.clone(), w.clone(), &f.scale(c));
        }
        out
    }

    fn to_form_op(&self) -> FormOp {
        let mut op = FormOp::zero(self.n, self.p, 0);
        for ((a, w), c) in &self.terms {
            op.add_term(Word::empty(), w.clone(), a.clone(), c);
        }
        op
    }

    fn from_form_op(op: FormOp) -> DiffOp {
        debug_assert_eq!(op.p_out, 0);
        let mut out = DiffOp::zero(op.n, op.p_in);
        for ((_, w, a), c) in op.terms {
            out.add_term(a, w, &c);
        }
        out
    }
}

impl fmt::Debug for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((a, w), c)| format!("({c})·∂{:?}·ω{:?}", a, w))
            .collect();
        write!(f, "DiffOp(n={}, p={})[{}]", self.n, self.p, parts.join(" + "))
    }
}

/// Matrix differential operator `Ω^{p_in} → Ω^{p_out}`:
/// `(Tω)_w = Σ_{u,β} T[w,u,β](x) ∂^β ω_u`.
#[derive(Clone, Debug)]
pub(crate) struct FormOp {
    n: usize,
    p_in: usize,
    p_out: usize,
    terms: BTreeMap<(Word, Word, MIdx), Poly>,
}

impl FormOp {
    fn zero(n: usize, p_in: usize, p_out: usize) -> Self {
        FormOp {
            n,
            p_in,
            p_out,
            terms: BTreeMap::new(),
        }
    }

    fn add_term(&mut self, out: Word, inp: Word, beta: MIdx, c: &Poly) {
        if c.is_zero() {
            return;
        }
        let key = (out, inp, beta);
        let sum = match self.terms.get(&key) {
            Some(prev) => prev + c,
            None => c.clone(),
        };
        if sum.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, sum);
        }
    }

    fn apply(&self, w: &PForm) -> PForm {
        let mut out = PForm::zero(self.n, self.p_out);
        for ((o, i, beta), c) in &self.terms {
            if let Some(f) = w.terms.get(i) {
                let d = f.partial_multi(beta);
                if !d.is_zero() {
                    out.add_term(o.clone(), &(c * &d));
                }
            }
        }
        out
    }

    /// `self ∘ rhs`, normal-ordered.
    fn compose(&self, rhs: &FormOp) -> FormOp {
        debug_assert_eq!(self.p_in, rhs.p_out);
        let mut by_out: HashMap<&Word, Vec<(&Word, &MIdx, &Poly)>> = HashMap::new();
        for ((o, i, b), c) in &rhs.terms {
            by_out.entry(o).or_default().push((i, b, c));
        }
        let mut out = FormOp::zero(self.n, rhs.p_in, self.p_out);
        for ((w, u, alpha), s) in &self.terms {
            let Some(inner) = by_out.get(u) else { continue };
            let gammas = alpha.divisors();
            for &(v, beta, t) in inner {
                for gamma in &gammas {
                    let dt = t.partial_multi(gamma);
                    if dt.is_zero() {
                        continue;
                    }
                    let weight = from_bigint(alpha.binomial(gamma));
                    let coef = (s * &dt).scale(&weight);
                    let order = alpha.checked_sub(gamma).unwrap().add(beta);
                    out.add_term(w.clone(), v.clone(), order, &coef);
                }
            }
        }
        out
    }
}

/// `L_X` on p-forms as an operator `Ω^p → Ω^p`.
fn lie_form_op(x: &VectorField, p: usize) -> FormOp {
    let n = x.n();
    let mut op = FormOp::zero(n, p, p);
    for w in Word::all_of_length(n, p) {
        for i in 0..n {
            op.add_term(w.clone(), w.clone(), MIdx::unit(n, i), x.component(i));
        }
        // −ρ(DX) on covectors: dx^j ↦ Σ_a (∂_a X^j) dx^a in each slot.
        for j in w.indices() {
            for a in 0..n {
                let jac = x.jacobian(j, a);
                if jac.is_zero() {
                    continue;
                }
                if let Some((s, out)) = w.substitute(j, a) {
                    let c = if s > 0 { jac } else { -&jac };
                    op.add_term(out, w.clone(), MIdx::zero(n), &c);
                }
            }
        }
    }
    op
}

/// The de Rham differential `Ω^p → Ω^{p+1}`.
fn exterior_derivative_op(n: usize, p: usize) -> FormOp {
    let mut op = FormOp::zero(n, p, p + 1);
    for u in Word::all_of_length(n, p) {
        for a in 0..n {
            if let Some((s, w)) = u.insert(a) {
                op.add_term(w, u.clone(), MIdx::unit(n, a), &Poly::constant(n, Rat::from_integer(i64::from(s).into())));
            }
        }
    }
    op
}

/// `apply(D, ω) = Σ_α Σ_w A_α^w(x) ∂^α ω_w`.
pub fn apply(d: &DiffOp, w: &PForm) -> Result<Poly> {
    check_dim(d.n, w.n)?;
    if d.p != w.p {
        return Err(Error::DegreeMismatch {
            expected: d.p,
            found: w.p,
        });
    }
    let out = d.to_form_op().apply(w);
    Ok(out.coeff(&Word::empty()))
}

/// `L_X ω = X.ω − ρ(DX)ω`.
pub fn lie_form(x: &VectorField, w: &PForm) -> Result<PForm> {
    check_dim(w.n, x.n())?;
    Ok(lie_form_op(x, w.p).apply(w))
}

/// The de Rham differential of a p-form.
pub fn exterior_derivative(w: &PForm) -> PForm {
    if w.p >= w.n {
        return PForm::zero(w.n, w.p);
    }
    exterior_derivative_op(w.n, w.p).apply(w)
}

/// The interior product `i_X ω`.
pub fn interior_field(x: &VectorField, w: &PForm) -> Result<PForm> {
    check_dim(w.n, x.n())?;
    if w.p == 0 {
        return Ok(PForm::zero(w.n, 0));
    }
    let mut out = PForm::zero(w.n, w.p - 1);
    for (u, f) in &w.terms {
        for j in u.indices() {
            let (s, rest) = u.contract(j).unwrap();
            let c = f * x.component(j);
            out.add_term(rest, &if s > 0 { c } else { -&c });
        }
    }
    Ok(out)
}

/// `𝓛_X D = L_X ∘ D − D ∘ L_X`, normal-ordered back into coefficient form.
pub fn lie_diffop(x: &VectorField, d: &DiffOp) -> Result<DiffOp> {
    check_dim(d.n, x.n())?;
    let dop = d.to_form_op();
    let left = lie_form_op(x, 0).compose(&dop);
    let right = dop.compose(&lie_form_op(x, d.p));
    let mut out = DiffOp::from_form_op(left);
    for ((_, w, a), c) in right.terms {
        out.add_term(a, w, &-&c);
    }
    Ok(out)
}

/// The affine symbol map: `(α, w) ↦ ξ^α ⊗ v_w`, coefficients unchanged.
pub fn sigma_affine(d: &DiffOp) -> Symbol {
    let mut out = Symbol::zero(d.n, d.p);
    for ((alpha, w), c) in &d.terms {
        for (m, v) in c.terms() {
            out.add_term(SymKey::new(m.clone(), w.clone(), alpha.clone()), v.clone());
        }
    }
    out
}

/// Inverse of [`sigma_affine`].
pub fn sigma_affine_inv(u: &Symbol) -> DiffOp {
    let n = u.n();
    let mut out = DiffOp::zero(n, u.p());
    for (k, c) in u.terms() {
        out.add_term(k.xi.clone(), k.wedge.clone(), &Poly::monomial(k.x.clone(), c.clone()));
    }
    out
}

/// The principal symbol: top-order part of `sigma_affine(D)`.
pub fn principal_symbol(d: &DiffOp) -> Result<Symbol> {
    let k = d.order()?;
    Ok(sigma_affine(d).component(k))
}

/// `d*(D) = D ∘ d`, an operator on (p−1)-forms.
pub fn d_star(d: &DiffOp) -> Result<DiffOp> {
    if d.p == 0 {
        return Err(Error::Argument("d* needs form degree p ≥ 1".into()));
    }
    let op = d.to_form_op().compose(&exterior_derivative_op(d.n, d.p - 1));
    Ok(DiffOp::from_form_op(op))
}

/// `I₀(D) = D(1)`, as a multiplication operator.
pub fn i_zero(d: &DiffOp) -> Result<DiffOp> {
    if d.p != 0 {
        return Err(Error::Argument("I₀ acts on operators on functions (p = 0)".into()));
    }
    let one = PForm::function(Poly::one(d.n));
    Ok(DiffOp::multiplication(apply(d, &one)?))
}

/// The formal adjoint on top-degree forms: `g ↦ Σ (−1)^{|α|} ∂^α(a_α g)`.
pub fn conjugation(d: &DiffOp) -> Result<DiffOp> {
    if d.p != d.n {
        return Err(Error::Argument(format!(
            "conjugation needs p = n = {}, found p = {}",
            d.n, d.p
        )));
    }
    let top = Word::full(d.n);
    let mut out = DiffOp::zero(d.n, d.p);
    for ((alpha, _), a) in &d.terms {
        let sign = if alpha.degree() % 2 == 0 { Rat::one() } else { -Rat::one() };
        for gamma in alpha.divisors() {
            let c = a
                .partial_multi(&gamma)
                .scale(&(&sign * from_bigint(alpha.binomial(&gamma))));
            out.add_term(alpha.checked_sub(&gamma).unwrap(), top.clone(), &c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::fixed_field;
    use crate::scalar::int;

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    fn c(k: i64) -> Poly {
        Poly::constant(2, int(k))
    }

    fn w(ix: &[usize]) -> Word {
        Word::new(3, ix).unwrap()
    }

    fn m(e: &[u8]) -> MIdx {
        MIdx::from_slice(e)
    }

    fn op(p: usize, terms: Vec<(&[u8], &[usize], Poly)>) -> DiffOp {
        DiffOp::from_terms(2, p, terms.into_iter().map(|(a, ws, f)| (m(a), w(ws), f))).unwrap()
    }

    fn form(p: usize, terms: Vec<(&[usize], Poly)>) -> PForm {
        PForm::from_terms(2, p, terms.into_iter().map(|(ws, f)| (w(ws), f))).unwrap()
    }

    #[test]
    fn apply_examples() {
        let d = op(1, vec![(&[1, 0], &[0], c(1))]);
        assert_eq!(apply(&d, &form(1, vec![(&[0], &x(0) * &x(1))])).unwrap(), x(1));

        let id = op(1, vec![(&[0, 0], &[0], c(1))]);
        assert_eq!(apply(&id, &form(1, vec![(&[0], x(0))])).unwrap(), x(0));

        let d2 = op(2, vec![(&[0, 1], &[0, 1], c(1))]);
        assert_eq!(apply(&d2, &form(2, vec![(&[0, 1], x(1))])).unwrap(), c(1));

        assert!(apply(&d2, &form(1, vec![(&[0], x(1))])).is_err());
    }

    #[test]
    fn lie_form_examples() {
        let xf = VectorField::linear(2, 0, 1); // x¹∂₂
        assert!(lie_form(&xf, &form(1, vec![(&[0], c(1))])).unwrap().is_zero());
        assert_eq!(
            lie_form(&xf, &form(1, vec![(&[1], c(1))])).unwrap(),
            form(1, vec![(&[0], c(1))])
        );
        // (L_{(x¹)²∂₂} ω)₁ = (x¹)²∂₂ω₁ + 2x¹ω₂ on ω = a dx¹ + b dx²
        let a = &x(0) * &x(1);
        let b = &x(1) * &x(1);
        let omega = form(1, vec![(&[0], a.clone()), (&[1], b.clone())]);
        let got = lie_form(&fixed_field(2), &omega).unwrap().coeff(&w(&[0]));
        let x1sq = &x(0) * &x(0);
        let want = &(&x1sq * &a.partial(1)) + &(&(&x(0) * &b).scale(&int(2)));
        assert_eq!(got, want);
    }

    #[test]
    fn lie_diffop_examples() {
        // [∂₁, x¹∂₁] = ∂₁
        let d = op(0, vec![(&[1, 0], &[], x(0))]);
        assert_eq!(
            lie_diffop(&VectorField::partial(2, 0), &d).unwrap(),
            op(0, vec![(&[1, 0], &[], c(1))])
        );
        // 𝓛_{(x¹)²∂₂} ∂₁² = −2∂₂ − 4x¹∂₁∂₂
        let d = op(0, vec![(&[2, 0], &[], c(1))]);
        assert_eq!(
            lie_diffop(&fixed_field(2), &d).unwrap(),
            op(0, vec![(&[0, 1], &[], c(-2)), (&[1, 1], &[], x(0).scale(&int(-4)))])
        );
        // 𝓛_{(x¹)²∂₂}(ω ↦ ∂₁ω₁) = ω ↦ −2x¹∂₂ω₁ − 2ω₂ − 2x¹∂₁ω₂
        let d = op(1, vec![(&[1, 0], &[0], c(1))]);
        let want = op(
            1,
            vec![
                (&[0, 1], &[0], x(0).scale(&int(-2))),
                (&[0, 0], &[1], c(-2)),
                (&[1, 0], &[1], x(0).scale(&int(-2))),
            ],
        );
        assert_eq!(lie_diffop(&fixed_field(2), &d).unwrap(), want);
    }

    #[test]
    fn sigma_affine_and_principal_symbol() {
        let d = op(0, vec![(&[1, 0], &[], x(0)), (&[0, 0], &[], c(3))]);
        let s = sigma_affine(&d);
        assert_eq!(sigma_affine_inv(&s), d);
        assert_eq!(
            principal_symbol(&d).unwrap(),
            Symbol::monomial(m(&[1, 0]), Word::empty(), m(&[1, 0]), int(1))
        );
        let d = op(0, vec![(&[2, 0], &[], c(1)), (&[0, 1], &[], c(1))]);
        assert_eq!(
            principal_symbol(&d).unwrap(),
            Symbol::monomial(m(&[0, 0]), Word::empty(), m(&[2, 0]), int(1))
        );
        let d = op(1, vec![(&[0, 0], &[0], c(1))]);
        assert_eq!(
            principal_symbol(&d).unwrap(),
            Symbol::monomial(m(&[0, 0]), w(&[0]), m(&[0, 0]), int(1))
        );
        assert_eq!(principal_symbol(&DiffOp::zero(2, 0)), Err(Error::UndefinedOrder));
    }

    #[test]
    fn d_star_examples() {
        let d = op(1, vec![(&[0, 0], &[0], c(1))]);
        assert_eq!(d_star(&d).unwrap(), op(0, vec![(&[1, 0], &[], c(1))]));
        let d = op(2, vec![(&[0, 0], &[0, 1], c(1))]);
        assert_eq!(
            d_star(&d).unwrap(),
            op(1, vec![(&[1, 0], &[1], c(1)), (&[0, 1], &[0], c(-1))])
        );
        assert!(d_star(&d_star(&d).unwrap()).unwrap().is_zero());
        assert!(d_star(&op(0, vec![(&[0, 0], &[], c(1))])).is_err());
    }

    #[test]
    fn i_zero_examples() {
        let d = op(0, vec![(&[1, 0], &[], c(1)), (&[0, 0], &[], c(3))]);
        assert_eq!(i_zero(&d).unwrap(), DiffOp::multiplication(c(3)));
        assert!(i_zero(&op(0, vec![(&[2, 0], &[], c(1))])).unwrap().is_zero());
        let mx = DiffOp::multiplication(x(0));
        assert_eq!(i_zero(&mx).unwrap(), mx);
        assert!(i_zero(&op(1, vec![(&[0, 0], &[0], c(1))])).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let d = op(2, vec![(&[1, 0], &[0, 1], c(1))]);
        assert_eq!(conjugation(&d).unwrap(), op(2, vec![(&[1, 0], &[0, 1], c(-1))]));
        let d = op(2, vec![(&[1, 0], &[0, 1], x(0))]);
        assert_eq!(
            conjugation(&d).unwrap(),
            op(2, vec![(&[1, 0], &[0, 1], x(0).scale(&int(-1))), (&[0, 0], &[0, 1], c(-1))])
        );
        assert_eq!(conjugation(&conjugation(&d).unwrap()).unwrap(), d);
        assert!(conjugation(&op(1, vec![(&[0, 0], &[0], c(1))])).is_err());
    }
}
