//! Equivariance properties of the quantization and the maps built on it.

use projquant::action::lie_symbolic;
use projquant::casimir::{casimir_c, casimir_quant, projective_generators};
use projquant::field::{fixed_field, VectorField};
use projquant::koszul::project_ab;
use projquant::lie::lie_symbol;
use projquant::quantization::{
    casimir_solve, commutation_defect, k_map, k_map_unchecked, k_prime, quantize, symbol_map,
    KReading,
};
use projquant::symbol::monomial_basis;
use projquant::Symbol;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn cubic_fields(n: usize, seed: u64) -> Vec<VectorField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![fixed_field(n)];
    out.extend((0..3).map(|_| VectorField::random(n, 3, &mut rng)));
    out
}

#[test]
fn quantize_is_projectively_equivariant() {
    for n in [2, 3] {
        let gens = projective_generators(n).unwrap();
        for p in 0..=n {
            for k in 0..=2 {
                for u in monomial_basis(n, p, k, 2) {
                    let qu = quantize(&u);
                    for x in &gens {
                        assert_eq!(quantize(&lie_symbol(x, &u).unwrap()), lie_symbolic(x, &qu).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn casimir_intertwining_and_solver() {
    for n in [2, 3] {
        for p in 0..=n {
            for k in 1..=3 {
                for u in monomial_basis(n, p, k, 2).into_iter().filter(|u| u.max_x_degree() >= Some(k.min(2))) {
                    assert_eq!(casimir_quant(&quantize(&u)).unwrap(), quantize(&casimir_c(&u).unwrap()));
                    let (a, b) = project_ab(&u, k).unwrap();
                    for part in [a, b] {
                        if !part.is_zero() {
                            assert_eq!(casimir_solve(&part, k).unwrap(), quantize(&part));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn symbol_map_inverts_quantize() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    use rand::Rng;
    for (n, p) in [(2, 1), (3, 2), (3, 0)] {
        let mut u = Symbol::zero(n, p);
        for k in 0..=3 {
            for b in monomial_basis(n, p, k, 2) {
                u.add_scaled(&b, &projquant::scalar::int(rng.gen_range(-3..=3)));
            }
        }
        assert_eq!(symbol_map(&quantize(&u)), u);
        assert_eq!(quantize(&symbol_map(&u)), u);
    }
}

fn invariant_on(n: usize, p: usize, k: u32, f: impl Fn(&Symbol) -> Symbol) -> bool {
    let fields = cubic_fields(n, 40 + n as u64);
    monomial_basis(n, p, k, k + 1).iter().all(|u| {
        let u = quantize(u);
        fields.iter().all(|x| commutation_defect(x, &u, |v| Ok(f(v))).unwrap().is_zero())
    })
}

#[test]
fn k_readings_at_top() {
    for n in [2, 3] {
        let p = n - 1;
        let principal = invariant_on(n, p, 2, |d| k_map(d, 2, KReading::Principal).unwrap());
        let equivariant = invariant_on(n, p, 2, |d| k_map(d, 2, KReading::Equivariant).unwrap());
        // only the principal reading survives at the top
        assert!(principal, "n={n}");
        assert!(!equivariant, "n={n}");
    }
    for n in [2, 3] {
        for p in 1..=n {
            assert!(invariant_on(n, p, 1, |d| k_map(d, 1, KReading::Equivariant).unwrap()));
        }
    }
    assert!(!invariant_on(3, 1, 2, |d| k_map_unchecked(d, 2, KReading::Principal).unwrap()));
    assert!(!invariant_on(3, 1, 2, |d| k_map_unchecked(d, 2, KReading::Equivariant).unwrap()));
    assert!(invariant_on(2, 0, 2, |d| k_prime(d).unwrap()));
    assert!(invariant_on(3, 0, 2, |d| k_prime(d).unwrap()));
}
