use proptest::prelude::*;

use lie_split::backends::{
    example1_algebra, expm, norm2, random_matrix, sc_bracket, Matrix, ScElement,
};
use lie_split::convergence::refined_deltas;
use lie_split::exact_arith::{Rational, UniPoly};
use lie_split::lie_symbolic::{
    expand_assoc, AssocPoly, CommTree, FreeAssoc, Generator, LieCombo, TruncSeries,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-30i64..30, 1i64..12).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(rational(), 0..5).prop_map(UniPoly::from_coeffs)
}

fn tree(degree: usize) -> BoxedStrategy<CommTree> {
    if degree == 1 {
        return prop_oneof![Just(Generator::X), Just(Generator::Y)]
            .prop_map(CommTree::leaf)
            .boxed();
    }
    (1..degree)
        .prop_flat_map(move |l| (tree(l), tree(degree - l)))
        .prop_map(|(l, r)| CommTree::bracket(l, r))
        .boxed()
}

fn combo_of(degree: usize) -> impl Strategy<Value = LieCombo> {
    prop::collection::vec((tree(degree), rational()), 1..4).prop_map(|terms| {
        terms.into_iter().fold(LieCombo::zero(), |acc, (t, c)| {
            acc.plus(&LieCombo::from_tree(t, c))
        })
    })
}

fn combo() -> impl Strategy<Value = LieCombo> {
    (1usize..5).prop_flat_map(combo_of)
}

/// Two combinations of one common degree.
fn combo_pair() -> impl Strategy<Value = (LieCombo, LieCombo)> {
    (1usize..5).prop_flat_map(|d| (combo_of(d), combo_of(d)))
}

fn matrix(n: usize) -> impl Strategy<Value = Matrix<f64>> {
    prop::collection::vec(-1.0f64..1.0, n * n)
        .prop_map(move |v| Matrix::from_rows(v.chunks(n).map(|r| r.to_vec()).collect()).unwrap())
}

fn close(a: &Matrix<f64>, b: &Matrix<f64>, tol: f64) -> bool {
    a.sub(b).norm_fro() <= tol * (1.0 + b.norm_fro())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.recip().unwrap()).is_one());
        }
    }

    #[test]
    fn polynomial_ring_and_evaluation(p in poly(), q in poly(), r in poly(), t in rational()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert_eq!((&p * &q).eval(&t), &p.eval(&t) * &q.eval(&t));
        prop_assert_eq!((&p + &q).eval(&t), &p.eval(&t) + &q.eval(&t));
    }

    #[test]
    fn expansion_is_linear((a, b) in combo_pair(), s in rational(), t in rational()) {
        let lhs = expand_assoc(&a.scaled(&s).plus(&b.scaled(&t)));
        let rhs = expand_assoc(&a).scaled(&s).plus(&expand_assoc(&b).scaled(&t));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_laws_after_expansion(a in combo(), b in combo(), c in combo()) {
        let ab = expand_assoc(&a.bracket(&b));
        let ba = expand_assoc(&b.bracket(&a));
        prop_assert!(ab.plus(&ba).is_zero());
        let jacobi = a.bracket(&b.bracket(&c))
            .plus(&b.bracket(&c.bracket(&a)))
            .plus(&c.bracket(&a.bracket(&b)));
        prop_assert!(expand_assoc(&jacobi).is_zero());
        // the bracket expands to the commutator of the expansions
        let ea = expand_assoc(&a);
        let eb = expand_assoc(&b);
        let comm = ea.times(&eb).minus(&eb.times(&ea));
        for d in 0..=16 {
            prop_assert_eq!(ab.component(d), comm.component(d));
        }
    }

    #[test]
    fn exponential_factor_inverse(c in combo(), k in 1usize..3) {
        const N: usize = 6;
        let alg = FreeAssoc::new(N);
        let e = expand_assoc(&c);
        let neg = e.scaled(&Rational::from_int(-1));
        let prod = TruncSeries::exp_factor(&alg, &e, k, N)
            .mul(&alg, &TruncSeries::exp_factor(&alg, &neg, k, N))
            .unwrap();
        prop_assert_eq!(prod, TruncSeries::unit(&alg, N));
    }

    #[test]
    fn structure_constant_bracket_laws(
        u in prop::collection::vec(poly(), 3),
        v in prop::collection::vec(poly(), 3),
    ) {
        let l = example1_algebra();
        let (u, v) = (ScElement::new(u), ScElement::new(v));
        prop_assert!(sc_bracket(&l, &u, &u).unwrap().is_zero());
        let uv = sc_bracket(&l, &u, &v).unwrap();
        let vu = sc_bracket(&l, &v, &u).unwrap();
        let neg: Vec<UniPoly> = vu.coeffs().iter().map(|p| -p).collect();
        prop_assert_eq!(uv, ScElement::new(neg));
    }

    #[test]
    fn matrix_bracket_laws(a in matrix(4), b in matrix(4), c in matrix(4)) {
        prop_assert!(close(&a.commutator(&b), &b.commutator(&a).scale(-1.0), 1e-14));
        let jacobi = a.commutator(&b.commutator(&c))
            .add(&b.commutator(&c.commutator(&a)))
            .add(&c.commutator(&a.commutator(&b)));
        prop_assert!(jacobi.norm_fro() <= 1e-12);
    }

    #[test]
    fn expm_inverse_and_submultiplicative(a in matrix(4), b in matrix(4)) {
        let e = expm(&a).unwrap();
        let inv = expm(&a.scale(-1.0)).unwrap();
        prop_assert!(close(&e.mul(&inv), &Matrix::identity(4), 1e-12));
        prop_assert!(norm2(&a.mul(&b)) <= norm2(&a) * norm2(&b) * (1.0 + 1e-12));
    }

    #[test]
    fn seeded_matrices_reproducible(seed in 0u64..1000, norm in 0.1f64..5.0) {
        let a = random_matrix(6, norm, seed).unwrap();
        prop_assert_eq!(&a, &random_matrix(6, norm, seed).unwrap());
        prop_assert!((norm2(&a) - norm).abs() <= 1e-10 * norm);
    }

    #[test]
    fn deltas_grow_with_norms(x in 0.0f64..2.0, y in 0.01f64..2.0, dx in 0.0f64..1.0, dy in 0.0f64..1.0) {
        let base = refined_deltas(x, y, 31).unwrap();
        let bigger = refined_deltas(x + dx, y + dy, 31).unwrap();
        for ((_, a), (_, b)) in base.values().iter().zip(bigger.values()) {
            prop_assert!(*a <= b * (1.0 + 1e-12), "{a} > {b}");
        }
    }
}

#[test]
fn expanded_generators_are_words() {
    let x = expand_assoc(&LieCombo::x());
    assert_eq!(x, AssocPoly::parse("X", usize::MAX).unwrap());
}
