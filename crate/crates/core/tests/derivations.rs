//! The chain from two power-sum Pythagorean triples down to the
//! equal-sums family, checked step by step as exact identities.

use powersum_forge::exact::{int, rat, Rational};
use powersum_forge::poly::Polynomial;
use powersum_forge::powersum::{combo_to_polynomial, faulhaber, square, PowerSumCombo};
use powersum_forge::quadratic::{
    equal_sums_family, equal_sums_polynomials, integer_scale_affine, piza_triple,
    powersum_quadruple, powersum_triple, quadruple_residual,
};

fn combo(terms: &[(u32, i64)]) -> PowerSumCombo {
    PowerSumCombo::from_terms(terms.iter().map(|&(k, c)| (k, rat(c, 1))))
}

fn sq(c: &PowerSumCombo) -> Polynomial {
    combo_to_polynomial(c).pow(2)
}

#[test]
fn two_triples_give_equal_sums_of_two_squares() {
    let (t1, _) = powersum_triple(1, 3).unwrap().integer_scaled();
    let t2 = piza_triple().unwrap();
    assert_eq!(t1.legs[1], t2.legs[1]);

    // Subtracting the triples cancels the shared leg.
    let [a, _, c] = t1.combos();
    let [p, _, r] = t2.combos();
    assert_eq!(&sq(&a) + &sq(&r), &sq(&c) + &sq(&p));

    // With S_5 + S_7 = 2 S_3^2, each entry is S_3 times a linear form in S_3.
    assert_eq!(square(3).scale(&rat(2, 1)), combo(&[(5, 1), (7, 1)]));
    let s3 = faulhaber(3);
    let lin = |c0: i64, c1: i64| &Polynomial::from_int_coeffs(&[c0]) + &s3.scale(&rat(c1, 1));
    let entries = [
        (&a, lin(-2, 2)),
        (&r, lin(1, 4)),
        (&c, lin(2, 2)),
        (&p, lin(-1, 4)),
    ];
    for (combo, linear) in &entries {
        assert_eq!(combo_to_polynomial(combo), &s3 * linear);
    }

    let ([l1, l2], [r1, r2]) = equal_sums_polynomials();
    assert_eq!(&l1.pow(2) + &l2.pow(2), &r1.pow(2) + &r2.pow(2));
    for u in -50..=50 {
        let ((x, y), (z, w)) = equal_sums_family(&int(u));
        assert_eq!(&x * &x + &y * &y, &z * &z + &w * &w);
    }
}

#[test]
fn quadruple_polynomials_in_u() {
    for k in 1..=8 {
        let q = powersum_quadruple(k).unwrap();
        assert!(quadruple_residual(&q).is_zero(), "k = {k}");
    }
    let q = powersum_quadruple(2).unwrap();
    let (scaled, scale) = integer_scale_affine(&q);
    assert_eq!(scale, rat(3, 1));
    // a and b come out of the displayed integer form after a further x6,
    // i.e. x18 from the unscaled combinations.
    let a = Polynomial::from_int_coeffs(&[0, 3, 9, 6]);
    let eighteen = Rational::from_integer(int(18));
    assert_eq!(q[0].to_polynomial().scale(&eighteen), a);
    assert_eq!(scaled[0].to_polynomial().scale(&rat(6, 1)), a);
    let b = scaled[2].to_polynomial().scale(&rat(6, 1));
    for u in -20..=20 {
        let v = b.eval(&rat(u, 1));
        assert!(v.is_integer(), "b({u}) = {v}");
    }
}
