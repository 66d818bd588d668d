//! Classification of invariant maps by exact nullspace computations.
//!
//! `sl_invariant_space` looks for constant-coefficient maps `S^k_p → S^l_q`
//! commuting with the projective algebra; `vect_invariant_space` looks for
//! operators `D^k_p → D_q` commuting with all vector fields, after
//! conjugation by the quantization.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::lie_symbolic;
use crate::casimir::projective_generators;
use crate::error::{Error, Result};
use crate::field::{fixed_field, VectorField};
use crate::koszul::{delta, delta_delta_star, delta_star, delta_star_delta};
use crate::lie::lie_symbol;
use crate::linalg::{RowReducer, SparseRow};
use crate::midx::MIdx;
use crate::operator::{conjugation, d_star, i_zero, sigma_affine, sigma_affine_inv};
use crate::par;
use crate::quantization::{commutation_defect, k_map_unchecked, k_prime, quantize, symbol_map, KReading};
use crate::scalar::Rat;
use crate::symbol::{monomial_basis, monomial_basis_exact, SymKey, Symbol};
use crate::word::Word;

/// A fiber monomial `v_w ⊗ ξ^α`.
pub type Fiber = (Word, MIdx);

fn fibers(n: usize, p: usize, k: u32) -> Vec<Fiber> {
    let xis = MIdx::of_degree(n, k);
    Word::all_of_length(n, p)
        .into_iter()
        .flat_map(|w| xis.iter().map(move |a| (w.clone(), a.clone())))
        .collect()
}

fn fmt_fiber((w, a): &Fiber) -> String {
    let mut s = String::new();
    let ws: Vec<String> = w.indices().map(|i| format!("v{}", i + 1)).collect();
    s.push_str(if ws.is_empty() { "1" } else { "" });
    s.push_str(&ws.join("∧"));
    s.push('⊗');
    let xs: Vec<String> = (0..a.dim())
        .filter(|&i| a.get(i) > 0)
        .map(|i| match a.get(i) {
            1 => format!("ξ{}", i + 1),
            e => format!("ξ{}^{e}", i + 1),
        })
        .collect();
    s.push_str(if xs.is_empty() { "1" } else { "" });
    s.push_str(&xs.join(""));
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchParams {
    pub n: usize,
    pub k: u32,
    pub p: usize,
    /// Target ξ-degree; only meaningful for the sl search.
    pub l: Option<u32>,
    pub q: usize,
    pub vect: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub label: String,
    pub coef: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// A named map; `verified` records an independent invariance check.
    Named { name: String, verified: bool },
    /// A raw nullspace vector.
    Table(Vec<TableEntry>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSpace {
    pub params: SearchParams,
    pub dimension: usize,
    pub generators: Vec<Generator>,
    /// Whether the named candidates span exactly the computed space.
    pub named_span: bool,
    pub status: String,
}

impl InvariantSpace {
    fn empty(params: SearchParams, status: &str) -> Self {
        InvariantSpace {
            params,
            dimension: 0,
            generators: Vec::new(),
            named_span: true,
            status: status.into(),
        }
    }

    pub fn generator_names(&self) -> Vec<&str> {
        self.generators
            .iter()
            .filter_map(|g| match g {
                Generator::Named { name, .. } => Some(name.as_str()),
                Generator::Table(_) => None,
            })
            .collect()
    }
}

fn validate(n: usize, p: usize, q: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Argument(format!("classification needs n ≥ 2, got {n}")));
    }
    if p > n || q > n {
        return Err(Error::Argument(format!("form degrees must lie in 0..={n}")));
    }
    Ok(())
}

/// Sorts, merges and drops zeros.
fn normalize_row(mut row: Vec<(usize, Rat)>) -> SparseRow {
    row.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Splits per-column images into rows keyed by output monomial.
fn rows_from_images(
    plus: impl IntoIterator<Item = (usize, Symbol)>,
    minus: impl IntoIterator<Item = (usize, Symbol)>,
) -> Vec<SparseRow> {
    let mut rows: BTreeMap<SymKey, Vec<(usize, Rat)>> = BTreeMap::new();
    for (col, s) in plus {
        for (key, v) in s.terms() {
            rows.entry(key.clone()).or_default().push((col, v.clone()));
        }
    }
    for (col, s) in minus {
        for (key, v) in s.terms() {
            rows.entry(key.clone()).or_default().push((col, -v.clone()));
        }
    }
    rows.into_values().map(normalize_row).filter(|r| !r.is_empty()).collect()
}

fn in_span(basis: &[Vec<Rat>], v: &[Rat]) -> bool {
    let mut red = RowReducer::new(v.len());
    for b in basis {
        red.push_dense(b);
    }
    let row = v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(c, x)| (c, x.clone())).collect();
    red.contains(row)
}

fn rank_of(vs: &[Vec<Rat>], cols: usize) -> usize {
    let mut red = RowReducer::new(cols);
    for v in vs {
        red.push_dense(v);
    }
    red.rank()
}

type FiberOp = fn(&Symbol) -> Symbol;

fn identity(u: &Symbol) -> Symbol {
    u.clone()
}

/// The named sl-invariant fiber maps `S^k_p → S^{k+p−q}_q` that are nonzero.
pub fn named_fiber_maps(n: usize, k: u32, p: usize, q: usize) -> Vec<(&'static str, FiberOp)> {
    let mut out: Vec<(&'static str, FiberOp)> = Vec::new();
    if q + 1 == p {
        out.push(("δ*", delta_star));
    } else if q == p {
        if k == 0 && p == 0 {
            out.push(("id", identity));
        } else {
            if p >= 1 {
                out.push(("δ∘δ*", delta_delta_star));
            }
            if k >= 1 && p < n {
                out.push(("δ*∘δ", delta_star_delta));
            }
        }
    } else if q == p + 1 && k >= 1 && p < n {
        out.push(("δ", delta));
    }
    out
}

struct SlColumn {
    input: Fiber,
    output: Fiber,
    gamma: MIdx,
}

/// The candidate applied to `s`, for every column at once.
fn sl_apply_all(
    n: usize,
    q: usize,
    cols: &[SlColumn],
    by_input: &HashMap<Fiber, Vec<usize>>,
    s: &Symbol,
) -> BTreeMap<usize, Symbol> {
    let mut out: BTreeMap<usize, Symbol> = BTreeMap::new();
    for (key, c) in s.terms() {
        let Some(ix) = by_input.get(&(key.wedge.clone(), key.xi.clone())) else { continue };
        for &ci in ix {
            let col = &cols[ci];
            if !col.gamma.le(&key.x) {
                continue;
            }
            let f = Rat::from_integer(key.x.falling(&col.gamma));
            let k = SymKey::new(key.x.checked_sub(&col.gamma).unwrap(), col.output.0.clone(), col.output.1.clone());
            out.entry(ci).or_insert_with(|| Symbol::zero(n, q)).add_term(k, c * f);
        }
    }
    out
}

/// `sl(n+1)`-invariant constant-coefficient maps `S^k_p → S^l_q`.
///
/// Unknowns are pruned by torus weights (which also fixes the derivative
/// multi-index), and the commutation with every projective generator is
/// imposed on inputs of x-degree `r−1 ..= r+1`, `r` the homogeneity order.
pub fn sl_invariant_space(n: usize, k: u32, p: usize, l: u32, q: usize) -> Result<InvariantSpace> {
    validate(n, p, q)?;
    let params = SearchParams { n, k, p, l: Some(l), q, vect: false };
    let r = (i64::from(k) + p as i64) - (i64::from(l) + q as i64);
    if r < 0 {
        return Ok(InvariantSpace::empty(params, "negative homogeneity order"));
    }
    let r = r as u32;

    let mut cols = Vec::new();
    for input in fibers(n, p, k) {
        for output in fibers(n, q, l) {
            let mut g = Vec::with_capacity(n);
            let ok = (0..n).all(|s| {
                let d = i32::from(input.0.contains(s)) + i32::from(input.1.get(s))
                    - i32::from(output.0.contains(s))
                    - i32::from(output.1.get(s));
                g.push(d.max(0) as u8);
                d >= 0
            });
            if ok {
                cols.push(SlColumn { input: input.clone(), output, gamma: MIdx::from_slice(&g) });
            }
        }
    }
    if cols.is_empty() {
        return Ok(InvariantSpace::empty(params, "no weight-compatible candidates"));
    }
    let mut by_input: HashMap<Fiber, Vec<usize>> = HashMap::new();
    for (i, c) in cols.iter().enumerate() {
        by_input.entry(c.input.clone()).or_default().push(i);
    }

    let gens = projective_generators(n)?;
    let inputs: Vec<Symbol> = (r.saturating_sub(1)..=r + 1)
        .flat_map(|d| monomial_basis_exact(n, p, k, d))
        .collect();
    let blocks = par::map(&inputs, |u| -> Result<Vec<SparseRow>> {
        let tu = sl_apply_all(n, q, &cols, &by_input, u);
        let mut rows = Vec::new();
        for g in &gens {
            let plus = sl_apply_all(n, q, &cols, &by_input, &lie_symbol(g, u)?);
            let minus = tu
                .iter()
                .map(|(c, s)| Ok((*c, lie_symbol(g, s)?)))
                .collect::<Result<Vec<_>>>()?;
            rows.extend(rows_from_images(plus, minus));
        }
        Ok(rows)
    });
    let mut red = RowReducer::new(cols.len());
    for block in blocks {
        for row in block? {
            red.push(row);
        }
    }
    let null = red.nullspace();

    // named maps in column coordinates (all targets have r = 0)
    let named = named_fiber_maps(n, k, p, q);
    let named = if r == 0 { named } else { Vec::new() };
    let mut named_vecs = Vec::new();
    for (name, op) in &named {
        let mut v = vec![Rat::zero(); cols.len()];
        for input in fibers(n, p, k) {
            let img = op(&Symbol::monomial(MIdx::zero(n), input.0.clone(), input.1.clone(), Rat::from_integer(1.into())));
            for (key, c) in img.terms() {
                let ci = by_input
                    .get(&input)
                    .and_then(|ix| ix.iter().copied().find(|&i| cols[i].output == (key.wedge.clone(), key.xi.clone())))
                    .ok_or_else(|| Error::InconsistentBasis(format!("{name} leaves the candidate space")))?;
                v[ci] = c.clone();
            }
        }
        named_vecs.push(v);
    }
    let named_span = named_vecs.iter().all(|v| in_span(&null, v))
        && rank_of(&named_vecs, cols.len()) == null.len();

    let generators = if named_span {
        named
            .iter()
            .map(|(name, _)| Generator::Named { name: (*name).into(), verified: true })
            .collect()
    } else {
        null.iter()
            .map(|v| {
                Generator::Table(
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| {
                            let col = &cols[i];
                            let mut label = String::new();
                            let _ = write!(label, "∂^{:?} {} → {}", col.gamma, fmt_fiber(&col.input), fmt_fiber(&col.output));
                            TableEntry { label, coef: c.clone() }
                        })
                        .collect(),
                )
            })
            .collect()
    };
    Ok(InvariantSpace { params, dimension: null.len(), generators, named_span, status: "ok".into() })
}

/// An invariant operator candidate acting on operators in symbolic form.
pub type OperatorMap = Box<dyn Fn(&Symbol) -> Result<Symbol> + Send + Sync>;

/// The named operator `name` on `D^k_p` (`k` matters for `K` only).
pub fn named_operator(name: &str, k: u32) -> Result<OperatorMap> {
    let ds = |d: &Symbol| -> Result<Symbol> { Ok(sigma_affine(&d_star(&sigma_affine_inv(d))?)) };
    Ok(match name {
        "id" => Box::new(|d: &Symbol| Ok(d.clone())),
        "d*" => Box::new(ds),
        "𝒞" => Box::new(|d: &Symbol| Ok(sigma_affine(&conjugation(&sigma_affine_inv(d))?))),
        "d*∘𝒞" => Box::new(move |d: &Symbol| ds(&sigma_affine(&conjugation(&sigma_affine_inv(d))?))),
        "I₀" => Box::new(|d: &Symbol| Ok(sigma_affine(&i_zero(&sigma_affine_inv(d))?))),
        "K" => Box::new(move |d: &Symbol| k_map_unchecked(d, k, KReading::Principal)),
        "d*∘K" => Box::new(move |d: &Symbol| ds(&k_map_unchecked(d, k, KReading::Principal)?)),
        "K′" => Box::new(k_prime),
        _ => return Err(Error::Argument(format!("unknown invariant operator {name}"))),
    })
}

/// Named generators predicted for `D^k_p → D_q`.
pub fn named_operators(n: usize, k: u32, p: usize, q: usize) -> Vec<&'static str> {
    let mut out = Vec::new();
    if q + 1 == p {
        out.push("d*");
        if p == n && k >= 1 {
            out.push("d*∘𝒞");
        }
    } else if q == p {
        out.push("id");
        if k >= 1 {
            if p == 0 {
                out.push("I₀");
            } else if p == n {
                out.push("𝒞");
            } else if k == 1 || (k == 2 && p + 1 == n) {
                out.push("d*∘K");
            }
        }
    } else if q == p + 1 && p < n {
        if k == 1 || (k == 2 && p + 1 == n) {
            out.push("K");
        } else if k == 2 && p == 0 {
            out.push("K′");
        }
    }
    out
}

/// Seeded random cubic fields used for independent invariance checks.
pub fn check_fields(n: usize, count: usize) -> Vec<VectorField> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
    (0..count).map(|_| VectorField::random(n, 3, &mut rng)).collect()
}

/// Whether `f` commutes with `𝓛_X` for every `X` in `fields` on the
/// quantized monomial basis of `D^k_p` with x-degree `≤ max_x`.
pub fn commutes_on(
    n: usize,
    k: u32,
    p: usize,
    max_x: u32,
    fields: &[VectorField],
    f: &(dyn Fn(&Symbol) -> Result<Symbol> + Sync),
) -> Result<bool> {
    let inputs: Vec<Symbol> = (0..=k).flat_map(|r| monomial_basis(n, p, r, max_x)).map(|u| quantize(&u)).collect();
    let ok = par::map(&inputs, |d| -> Result<bool> {
        for x in fields {
            if !commutation_defect(x, d, f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    });
    for r in ok {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn transported(x: &VectorField, u: &Symbol) -> Result<Symbol> {
    Ok(symbol_map(&lie_symbolic(x, &quantize(u))?))
}

/// Vect-invariant operators `D^k_p → D_q`, with inputs of x-degree up to
/// `k + 1`.
pub fn vect_invariant_space(n: usize, k: u32, p: usize, q: usize) -> Result<InvariantSpace> {
    vect_invariant_space_with(n, k, p, q, k + 1)
}

/// As [`vect_invariant_space`], with an explicit spanning-set x-degree bound.
///
/// Writes `𝒯 = Q⁻¹ T Q` as `Σ_r λ_{r,j} τ_j` over the named sl-invariant
/// fiber maps on each `S^r_p`, and imposes `𝒯 ∘ Q⁻¹𝓛_X Q = Q⁻¹𝓛_X Q ∘ 𝒯` for
/// `X = (x¹)²∂₂`, which together with sl-invariance generates `Vect`.
pub fn vect_invariant_space_with(n: usize, k: u32, p: usize, q: usize, max_x: u32) -> Result<InvariantSpace> {
    validate(n, p, q)?;
    let params = SearchParams { n, k, p, l: None, q, vect: true };
    if !(q + 1 == p || q == p || q == p + 1) {
        return Ok(InvariantSpace::empty(params, "no sl-invariant fiber maps for this q"));
    }
    let cols: Vec<(u32, &'static str, FiberOp)> = (0..=k)
        .flat_map(|r| named_fiber_maps(n, r, p, q).into_iter().map(move |(name, op)| (r, name, op)))
        .collect();
    if cols.is_empty() {
        return Ok(InvariantSpace::empty(params, "no sl-invariant fiber maps for this (k, p, q)"));
    }
    let apply_col = |c: &(u32, &'static str, FiberOp), s: &Symbol| (c.2)(&s.component(c.0));

    let x = fixed_field(n);
    let inputs: Vec<Symbol> = (0..=k).flat_map(|r| monomial_basis(n, p, r, max_x)).collect();
    let blocks = par::map(&inputs, |u| -> Result<Vec<SparseRow>> {
        let tu = transported(&x, u)?;
        let plus: Vec<_> = cols.iter().enumerate().map(|(i, c)| (i, apply_col(c, &tu))).collect();
        let minus = cols
            .iter()
            .enumerate()
            .map(|(i, c)| Ok((i, transported(&x, &apply_col(c, u))?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(rows_from_images(plus, minus))
    });
    let mut red = RowReducer::new(cols.len());
    for block in blocks {
        for row in block? {
            red.push(row);
        }
    }
    let null = red.nullspace();

    // express each named operator in the fiber-map parameters
    let fields = check_fields(n, 3);
    let names = named_operators(n, k, p, q);
    let mut named_vecs = Vec::new();
    let mut generators = Vec::new();
    for name in &names {
        let op = named_operator(name, k)?;
        let mut sys = RowReducer::new(cols.len() + 1);
        for u in &inputs {
            let target = symbol_map(&op(&quantize(u))?);
            let plus: Vec<_> = cols.iter().enumerate().map(|(i, c)| (i, apply_col(c, u))).collect();
            for row in rows_from_images(plus, [(cols.len(), target)]) {
                sys.push(row);
            }
        }
        let mut lambda = vec![Rat::zero(); cols.len()];
        for row in sys.rref() {
            let pc = row[0].0;
            if pc == cols.len() {
                return Err(Error::InconsistentBasis(format!("{name} is not a combination of fiber maps")));
            }
            if let Some((c, v)) = row.last() {
                if *c == cols.len() {
                    // row reads λ_pc − rhs = 0
                    lambda[pc] = -v.clone();
                }
            }
        }
        let verified = commutes_on(n, k, p, 2, &fields, &*op)?;
        generators.push(Generator::Named { name: (*name).into(), verified });
        named_vecs.push(lambda);
    }
    let named_span = named_vecs.iter().all(|v| in_span(&null, v))
        && rank_of(&named_vecs, cols.len()) == null.len();
    if !named_span {
        generators.extend(null.iter().map(|v| {
            Generator::Table(
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| TableEntry { label: format!("{} on S^{}", cols[i].1, cols[i].0), coef: c.clone() })
                    .collect(),
            )
        }));
    }
    Ok(InvariantSpace { params, dimension: null.len(), generators, named_span, status: "ok".into() })
}
