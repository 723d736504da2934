//! Cross-module invariants: the algebra of arithmetic functions against the
//! lattice counts, and the count identities that tie the three census
//! routes together.

use hurwitz_slope::arith::{
    check_multiplicative, dirichlet_convolve, jordan_totient2, pointwise_product, sigma,
    ArithmeticFunction, SieveTable,
};
use hurwitz_slope::census::{self, count_a, solve_b_recursion};
use hurwitz_slope::lattice;
use num_bigint::BigInt;
use proptest::prelude::*;

fn function_set() -> Vec<ArithmeticFunction> {
    vec![
        ArithmeticFunction::sigma(1),
        ArithmeticFunction::sigma(3),
        ArithmeticFunction::euler_phi(),
        ArithmeticFunction::inclusion(),
        ArithmeticFunction::jordan_totient2(),
        ArithmeticFunction::zero(),
    ]
}

#[test]
fn ab_count_identity() {
    // 12·B_d = (5d − 6)·A_d, with B from the recursion and A from the
    // closed form; the two sides come from unrelated computations.
    let max_d = 300;
    let sieve = SieveTable::new(max_d);
    let b = solve_b_recursion(max_d, &sieve);
    for d in 1..=max_d {
        let lhs = BigInt::from(12) * &b[d as usize];
        let rhs = BigInt::from(5 * d as i64 - 6) * count_a(d);
        assert_eq!(lhs, rhs, "AB identity at d={d}");
    }
}

#[test]
fn standard_functions_are_multiplicative() {
    for f in [
        ArithmeticFunction::sigma(1),
        ArithmeticFunction::sigma(2),
        ArithmeticFunction::sigma(3),
        ArithmeticFunction::euler_phi(),
        ArithmeticFunction::inclusion(),
        ArithmeticFunction::jordan_totient2(),
    ] {
        assert!(check_multiplicative(&f, 200), "{} fails", f.name());
    }
}

#[test]
fn convolution_and_product_preserve_multiplicativity() {
    let s1 = ArithmeticFunction::sigma(1);
    let phi = ArithmeticFunction::euler_phi();
    let j2 = ArithmeticFunction::jordan_totient2();

    let conv = ArithmeticFunction::new("s1*phi", true, {
        let s1 = s1.clone();
        let phi = phi.clone();
        move |d| dirichlet_convolve(&s1, &phi, d)
    });
    assert!(check_multiplicative(&conv, 150));

    let prod = pointwise_product(&j2, &s1);
    assert!(prod.is_claimed_multiplicative());
    assert!(check_multiplicative(&prod, 150));
}

#[test]
fn marked_count_is_the_jordan_totient() {
    for d in 2..=120u64 {
        assert_eq!(
            lattice::count_marked_closed_form(d).unwrap(),
            jordan_totient2(d),
            "closed form vs J2 at d={d}"
        );
    }
}

#[test]
fn census_counts_against_direct_enumeration() {
    // |C_d| = sigma1(d) counts sublattices; the marked census, corrected
    // for the degree-2 special case, halves onto A.
    for d in 1..=80u64 {
        assert_eq!(
            BigInt::from(lattice::enumerate_sublattices(d).len()),
            sigma(1, d)
        );
        assert!(census::count_a_check(d.max(2)).is_ok());
    }
}

#[test]
fn sequential_verifiers_pass_midsize() {
    assert!(hurwitz_slope::arith::verify_identities(300).all_passed());
    assert!(census::verify_genus2_slope(300).all_passed());
    assert!(census::verify_oracle(60, 40).all_passed());
    assert!(hurwitz_slope::picard::verify_slope_relation(40).all_passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Dirichlet convolution is commutative and associative, checked
    // pointwise on sampled function triples.
    #[test]
    fn convolution_is_commutative_and_associative(
        i in 0usize..6,
        j in 0usize..6,
        k in 0usize..6,
        d in 1u64..=120,
    ) {
        let fs = function_set();
        let (f, g, h) = (&fs[i], &fs[j], &fs[k]);
        prop_assert_eq!(dirichlet_convolve(f, g, d), dirichlet_convolve(g, f, d));

        let fg = ArithmeticFunction::new("fg", false, {
            let f = f.clone();
            let g = g.clone();
            move |n| dirichlet_convolve(&f, &g, n)
        });
        let gh = ArithmeticFunction::new("gh", false, {
            let g = g.clone();
            let h = h.clone();
            move |n| dirichlet_convolve(&g, &h, n)
        });
        prop_assert_eq!(dirichlet_convolve(&fg, h, d), dirichlet_convolve(f, &gh, d));
    }
}
