//! Cross-checks between the operator-side and symbol-side actions.

use projquant::action::{lie_symbolic, t_term};
use projquant::field::VectorField;
use projquant::lie::lie_symbol;
use projquant::operator::{
    exterior_derivative, interior_field, lie_diffop, lie_form, sigma_affine, sigma_affine_inv,
};
use projquant::symbol::monomial_basis;
use projquant::{PForm, Symbol, Word};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_symbol(n: usize, p: usize, k: u32, rng: &mut ChaCha8Rng) -> Symbol {
    use rand::Rng;
    let mut u = Symbol::zero(n, p);
    for kk in 0..=k {
        for b in monomial_basis(n, p, kk, 2) {
            let c: i64 = rng.gen_range(-2..=2);
            if c != 0 {
                u.add_scaled(&b, &projquant::scalar::int(c));
            }
        }
    }
    u
}

#[test]
fn operator_action_matches_transported_lie_derivative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (n, p) in [(2, 0), (2, 1), (2, 2), (3, 1), (3, 2)] {
        for deg in 0..=3 {
            let x = VectorField::random(n, deg, &mut rng);
            let u = random_symbol(n, p, 3, &mut rng);
            let via_ops = sigma_affine(&lie_diffop(&x, &sigma_affine_inv(&u)).unwrap());
            assert_eq!(lie_symbolic(&x, &u).unwrap(), via_ops, "n={n} p={p} deg={deg}");
        }
    }
}

#[test]
fn actions_are_lie_algebra_morphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (n, p) in [(2, 1), (3, 1), (3, 2)] {
        let x = VectorField::random(n, 2, &mut rng);
        let y = VectorField::random(n, 2, &mut rng);
        let xy = x.bracket(&y).unwrap();
        let u = random_symbol(n, p, 2, &mut rng);
        for act in [lie_symbol, lie_symbolic] {
            let lhs = &act(&x, &act(&y, &u).unwrap()).unwrap() - &act(&y, &act(&x, &u).unwrap()).unwrap();
            assert_eq!(lhs, act(&xy, &u).unwrap());
        }
    }
}

#[test]
fn lowering_terms_vanish_on_affine_fields_and_count_orders() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let u = random_symbol(3, 1, 3, &mut rng);
    let x = VectorField::random(3, 1, &mut rng);
    assert!(t_term(&x, 1, &u).unwrap().is_zero());
    let q = VectorField::random(3, 2, &mut rng);
    // a quadratic field only has a first lowering term
    assert!(t_term(&q, 2, &u).unwrap().is_zero());
    assert!(!t_term(&q, 1, &u).unwrap().is_zero());
}

#[test]
fn cartan_formula_on_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for (n, p) in [(2, 1), (3, 1), (3, 2)] {
        let x = VectorField::random(n, 2, &mut rng);
        let mut w = PForm::zero(n, p);
        for word in Word::all_of_length(n, p) {
            let f = VectorField::random(n, 2, &mut rng).component(0).clone();
            w.add_term(word, &f);
        }
        let di = exterior_derivative(&interior_field(&x, &w).unwrap());
        let id = interior_field(&x, &exterior_derivative(&w)).unwrap();
        assert_eq!(lie_form(&x, &w).unwrap(), di.checked_add(&id).unwrap());
    }
}
