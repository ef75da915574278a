//! Quadratic counterparts: quadratic-form solutions of
//! `a^2 + b^2 + c^2 = d^2` and `r^2 + s^2 = t^2`, the same equations with
//! power sums substituted, and a family for `a^2 + b^2 = c^2 + d^2`.

use std::fmt;

use num_traits::{One, Zero};

use crate::bivariate::BivariatePoly;
use crate::error::{Error, Result};
use crate::exact::{gcd_all, int, lcm, rat_from, Integer, Rational};
use crate::forms::BinaryQuadraticForm;
use crate::poly::Polynomial;
use crate::powersum::{integer_normalize, product, s1_power, square, PowerSumCombo};

/// Nonzero integers with `a^2 + b^2 + c^2 = d^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PythagoreanQuadruple {
    a: Integer,
    b: Integer,
    c: Integer,
    d: Integer,
}

impl PythagoreanQuadruple {
    pub fn new(a: Integer, b: Integer, c: Integer, d: Integer) -> Result<Self> {
        let q = Self { a, b, c, d };
        let fail = |clause: &str| Error::InvalidQuadruple {
            quad: q.to_string(),
            clause: clause.into(),
        };
        if [&q.a, &q.b, &q.c, &q.d].iter().any(|v| v.is_zero()) {
            return Err(fail("entries must be nonzero"));
        }
        if sq(&q.a) + sq(&q.b) + sq(&q.c) != sq(&q.d) {
            return Err(fail("a^2 + b^2 + c^2 != d^2"));
        }
        Ok(q)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    pub fn entries(&self) -> [&Integer; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl fmt::Display for PythagoreanQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

fn sq(v: &Integer) -> Integer {
    v * v
}

fn sum_of_squares(forms: &[BinaryQuadraticForm]) -> BivariatePoly {
    forms.iter().fold(BivariatePoly::zero(), |acc, q| {
        &acc + &q.to_bivariate().pow(2)
    })
}

/// `q1^2 + q2^2 + q3^2 = q4^2` in binary quadratic forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFormQuadruple {
    pub forms: [BinaryQuadraticForm; 4],
}

impl SquareFormQuadruple {
    /// Exact quartic expansion of `q1^2 + q2^2 + q3^2 - q4^2`.
    pub fn verify(&self) -> bool {
        (&sum_of_squares(&self.forms[..3]) - &sum_of_squares(&self.forms[3..])).is_zero()
    }

    pub fn eval(&self, u: &Integer, v: &Integer) -> [Integer; 4] {
        self.forms.clone().map(|q| q.eval(u, v))
    }
}

/// `r^2 + s^2 = t^2` in binary quadratic forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PythagoreanFormTriple {
    pub forms: [BinaryQuadraticForm; 3],
}

impl PythagoreanFormTriple {
    pub fn verify(&self) -> bool {
        (&sum_of_squares(&self.forms[..2]) - &sum_of_squares(&self.forms[2..])).is_zero()
    }

    pub fn eval(&self, u: &Integer, v: &Integer) -> [Integer; 3] {
        self.forms.clone().map(|q| q.eval(u, v))
    }
}

/// Piezas' forms `(a u^2 - 2d uv + a v^2, b u^2 - b v^2, c u^2 - c v^2,
/// d u^2 - 2a uv + d v^2)`.
pub fn piezas_generate(pq: &PythagoreanQuadruple) -> SquareFormQuadruple {
    let PythagoreanQuadruple { a, b, c, d } = pq;
    let two = int(2);
    let f =
        |x: &Integer, y: Integer, z: &Integer| BinaryQuadraticForm::new(x.clone(), y, z.clone());
    SquareFormQuadruple {
        forms: [
            f(a, -(&two * d), a),
            f(b, Integer::zero(), &-b),
            f(c, Integer::zero(), &-c),
            f(d, -(&two * a), d),
        ],
    }
}

/// When `b^2 + c^2 = e^2` the middle two forms merge into `e u^2 - e v^2`,
/// leaving a two-parameter Pythagorean triple.
pub fn piezas_degenerate_triple(
    pq: &PythagoreanQuadruple,
    e: &Integer,
) -> Result<PythagoreanFormTriple> {
    if !(e > &Integer::zero() && sq(e) == sq(&pq.b) + sq(&pq.c)) {
        return Err(Error::InvalidArgument(format!(
            "b^2 + c^2 = {} is not the square of {e}",
            sq(&pq.b) + sq(&pq.c)
        )));
    }
    let [q1, _, _, q4] = piezas_generate(pq).forms;
    Ok(PythagoreanFormTriple {
        forms: [
            q1,
            BinaryQuadraticForm::new(e.clone(), Integer::zero(), -e),
            q4,
        ],
    })
}

/// Positive `e` with `e^2 = b^2 + c^2`, if any.
pub fn hypotenuse_of(pq: &PythagoreanQuadruple) -> Option<Integer> {
    let s = sq(&pq.b) + sq(&pq.c);
    let r = s.sqrt();
    (sq(&r) == s).then_some(r)
}

/// A power-sum combination plus a constant term.
///
/// Kept apart from [`PowerSumCombo`] so that the constant never leaks into
/// the Q/F constructions, whose combos vanish at `n = 0` and `n = -1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AffineCombo {
    pub constant: Rational,
    pub combo: PowerSumCombo,
}

impl AffineCombo {
    pub fn new(constant: Rational, combo: PowerSumCombo) -> Self {
        Self { constant, combo }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(&self.constant * c, self.combo.scale(c))
    }

    pub fn to_polynomial(&self) -> Polynomial {
        &self.combo.to_polynomial() + &Polynomial::constant(self.constant.clone())
    }

    pub fn eval(&self, n: &Integer) -> Rational {
        self.to_polynomial().eval_int(n)
    }

    fn coefficients(&self) -> impl Iterator<Item = &Rational> {
        std::iter::once(&self.constant)
            .filter(|c| !c.is_zero())
            .chain(self.combo.terms().map(|(_, c)| c))
    }
}

/// Rescales affine combos to integer coefficients with joint content 1;
/// returns them with the multiplier applied.
pub fn integer_scale_affine(items: &[AffineCombo]) -> (Vec<AffineCombo>, Rational) {
    let den = items
        .iter()
        .flat_map(AffineCombo::coefficients)
        .fold(Integer::one(), |acc, c| lcm(&acc, c.denom()));
    let num = gcd_all(
        items
            .iter()
            .flat_map(AffineCombo::coefficients)
            .map(|c| c.numer()),
    );
    if num.is_zero() {
        return (items.to_vec(), Rational::one());
    }
    let scale = Rational::new(den, num);
    (items.iter().map(|c| c.scale(&scale)).collect(), scale)
}

/// `S_k^2 + (1 + S_k)^2 + (S_k + S_k^2)^2 = (1 + S_k + S_k^2)^2` with `S_k^2`
/// expanded as a power-sum combination.
pub fn powersum_quadruple(k: u32) -> Result<[AffineCombo; 4]> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "powersum_quadruple requires k >= 1".into(),
        ));
    }
    let sk = PowerSumCombo::s(k);
    let sk_plus_square = &sk + &square(k);
    Ok([
        AffineCombo::new(Rational::zero(), sk.clone()),
        AffineCombo::new(Rational::one(), sk),
        AffineCombo::new(Rational::zero(), sk_plus_square.clone()),
        AffineCombo::new(Rational::one(), sk_plus_square),
    ])
}

/// `x1^2 + x2^2 + x3^2 - x4^2` for affine combos, as a polynomial in `n`.
pub fn quadruple_residual(q: &[AffineCombo; 4]) -> Polynomial {
    let sq = |c: &AffineCombo| c.to_polynomial().pow(2);
    &(&(&sq(&q[0]) + &sq(&q[1])) + &sq(&q[2])) - &sq(&q[3])
}

/// Legs and hypotenuse of `(S_k^2 - S_m^2)^2 + (2 S_k S_m)^2 = (S_k^2 + S_m^2)^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSumTriple {
    pub legs: [PowerSumCombo; 2],
    pub hypotenuse: PowerSumCombo,
}

impl PowerSumTriple {
    pub fn combos(&self) -> [PowerSumCombo; 3] {
        [
            self.legs[0].clone(),
            self.legs[1].clone(),
            self.hypotenuse.clone(),
        ]
    }

    pub fn from_combos([a, b, c]: [PowerSumCombo; 3]) -> Self {
        Self {
            legs: [a, b],
            hypotenuse: c,
        }
    }

    /// `leg1^2 + leg2^2 - hyp^2` as a polynomial in `n`.
    pub fn residual(&self) -> Polynomial {
        let sq = |c: &PowerSumCombo| c.to_polynomial().pow(2);
        &(&sq(&self.legs[0]) + &sq(&self.legs[1])) - &sq(&self.hypotenuse)
    }

    pub fn verify(&self) -> bool {
        self.residual().is_zero()
    }

    /// Integer coefficients with content 1, and the multiplier applied.
    pub fn integer_scaled(&self) -> (Self, Rational) {
        let (combos, factor) = integer_normalize(&self.combos());
        let triple = Self::from_combos(combos.try_into().expect("three combos"));
        (triple, factor.recip())
    }

    pub fn eval(&self, n: &Integer) -> [Rational; 3] {
        self.combos().map(|c| c.eval(n))
    }
}

/// Pythagorean triple in power sums. The first leg is
/// `S_hi^2 - S_lo^2` for `lo = min(k, m)`, `hi = max(k, m)`, which is
/// nonnegative for every `n >= 0`.
pub fn powersum_triple(k: u32, m: u32) -> Result<PowerSumTriple> {
    if k == m || k == 0 || m == 0 {
        return Err(Error::InvalidArgument(format!(
            "powersum_triple needs distinct k, m >= 1, got ({k}, {m})"
        )));
    }
    let (lo, hi) = (k.min(m), k.max(m));
    let two = rat_from(int(2));
    let triple = PowerSumTriple {
        legs: [&square(hi) - &square(lo), product(k, m).scale(&two)],
        hypotenuse: &square(k) + &square(m),
    };
    if !triple.verify() {
        return Err(Error::Verification(format!("power-sum triple ({k}, {m})")));
    }
    Ok(triple)
}

/// Triple from `((y^4 - y^2)/4)^2 + (y^3/2)^2 = ((y^4 + y^2)/4)^2` at `y = 2 S_1`:
/// legs `4 S_1^4 - S_1^2` and `4 S_1^3`, hypotenuse `4 S_1^4 + S_1^2`.
pub fn piza_triple() -> Result<PowerSumTriple> {
    let four = rat_from(int(4));
    let s1_4 = s1_power(4)?.scale(&four);
    let s1_2 = s1_power(2)?;
    let triple = PowerSumTriple {
        legs: [&s1_4 - &s1_2, s1_power(3)?.scale(&four)],
        hypotenuse: &s1_4 + &s1_2,
    };
    if !triple.verify() {
        return Err(Error::Verification("triple at y = 2 S_1".into()));
    }
    Ok(triple)
}

/// `(2u - 2)^2 + (4u + 1)^2 = (2u + 2)^2 + (4u - 1)^2`.
pub fn equal_sums_family(u: &Integer) -> ((Integer, Integer), (Integer, Integer)) {
    let two_u = u * 2;
    let four_u = u * 4;
    ((&two_u - 2, &four_u + 1), (&two_u + 2, &four_u - 1))
}

/// The same family as polynomials in `u`, lhs then rhs.
pub fn equal_sums_polynomials() -> ([Polynomial; 2], [Polynomial; 2]) {
    let p = Polynomial::from_int_coeffs;
    ([p(&[-2, 2]), p(&[1, 4])], [p(&[2, 2]), p(&[-1, 4])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn form(a: i64, b: i64, c: i64) -> BinaryQuadraticForm {
        BinaryQuadraticForm::from_i64(a, b, c)
    }

    fn combo(terms: &[(u32, i64)]) -> PowerSumCombo {
        PowerSumCombo::from_terms(terms.iter().map(|&(k, c)| (k, rat(c, 1))))
    }

    #[test]
    fn piza_triple_golden() {
        let t = piza_triple().unwrap();
        assert_eq!(t.legs[0], combo(&[(3, -1), (5, 2), (7, 2)]));
        assert_eq!(t.legs[1], combo(&[(3, 1), (5, 3)]));
        assert_eq!(t.hypotenuse, combo(&[(3, 1), (5, 2), (7, 2)]));
    }

    #[test]
    fn quadruple_validation() {
        assert!(PythagoreanQuadruple::from_i64(2, 3, 6, 7).is_ok());
        assert!(PythagoreanQuadruple::from_i64(2, 3, 6, 8).is_err());
        assert!(PythagoreanQuadruple::from_i64(0, 3, 4, 5).is_err());
    }

    #[test]
    fn piezas_examples() {
        let fq = piezas_generate(&PythagoreanQuadruple::from_i64(2, 3, 6, 7).unwrap());
        assert_eq!(
            fq.forms,
            [
                form(2, -14, 2),
                form(3, 0, -3),
                form(6, 0, -6),
                form(7, -4, 7)
            ]
        );
        assert!(fq.verify());
        assert_eq!(fq.eval(&int(1), &int(0)), [2, 3, 6, 7].map(int));

        let fq = piezas_generate(&PythagoreanQuadruple::from_i64(1, 2, 2, 3).unwrap());
        assert_eq!(
            fq.forms,
            [
                form(1, -6, 1),
                form(2, 0, -2),
                form(2, 0, -2),
                form(3, -2, 3)
            ]
        );
        assert!(fq.verify());
    }

    #[test]
    fn piezas_perturbed_fails_verification() {
        let mut fq = piezas_generate(&PythagoreanQuadruple::from_i64(2, 3, 6, 7).unwrap());
        fq.forms[3].beta = int(-5);
        assert!(!fq.verify());
    }

    #[test]
    fn degenerate_triple() {
        let pq = PythagoreanQuadruple::from_i64(8, 9, 12, 17).unwrap();
        assert_eq!(hypotenuse_of(&pq), Some(int(15)));
        let t = piezas_degenerate_triple(&pq, &int(15)).unwrap();
        assert_eq!(
            t.forms,
            [form(8, -34, 8), form(15, 0, -15), form(17, -16, 17)]
        );
        assert!(t.verify());
        assert_eq!(t.eval(&int(1), &int(0)), [8, 15, 17].map(int));

        let pq = PythagoreanQuadruple::from_i64(2, 3, 6, 7).unwrap();
        assert_eq!(hypotenuse_of(&pq), None);
        assert!(piezas_degenerate_triple(&pq, &int(7)).is_err());
        assert!(piezas_degenerate_triple(
            &PythagoreanQuadruple::from_i64(8, 9, 12, 17).unwrap(),
            &int(-15)
        )
        .is_err());
    }

    #[test]
    fn quadruple_k2() {
        let q = powersum_quadruple(2).unwrap();
        let (scaled, factor) = integer_scale_affine(&q);
        assert_eq!(factor, rat(3, 1));
        assert_eq!(scaled[0], AffineCombo::new(rat(0, 1), combo(&[(2, 3)])));
        assert_eq!(scaled[1], AffineCombo::new(rat(3, 1), combo(&[(2, 3)])));
        assert_eq!(
            scaled[2],
            AffineCombo::new(rat(0, 1), combo(&[(2, 3), (3, 1), (5, 2)]))
        );
        assert_eq!(
            scaled[3],
            AffineCombo::new(rat(3, 1), combo(&[(2, 3), (3, 1), (5, 2)]))
        );
        let at1: Vec<Rational> = scaled.iter().map(|c| c.eval(&int(1))).collect();
        assert_eq!(at1, [3, 6, 6, 9].map(|v| rat(v, 1)));
        assert!(quadruple_residual(&q).is_zero());
        assert!(powersum_quadruple(0).is_err());
    }

    #[test]
    fn quadruple_evaluations_are_pythagorean() {
        for k in 1..=5 {
            let q = powersum_quadruple(k).unwrap();
            for n in 1..=15 {
                let v: Vec<Rational> = q.iter().map(|c| c.eval(&int(n))).collect();
                assert!(v.iter().all(|x| x.denom().is_one()));
                assert_eq!(&v[0] * &v[0] + &v[1] * &v[1] + &v[2] * &v[2], &v[3] * &v[3]);
            }
        }
    }

    #[test]
    fn triple_1_3() {
        let (t, factor) = powersum_triple(1, 3).unwrap().integer_scaled();
        assert_eq!(factor, rat(2, 1));
        assert_eq!(t.legs[0], combo(&[(3, -2), (5, 1), (7, 1)]));
        assert_eq!(t.legs[1], combo(&[(3, 1), (5, 3)]));
        assert_eq!(t.hypotenuse, combo(&[(3, 2), (5, 1), (7, 1)]));
        assert_eq!(
            powersum_triple(3, 1).unwrap().legs[0],
            powersum_triple(1, 3).unwrap().legs[0]
        );
        assert!(powersum_triple(2, 2).is_err());
    }

    #[test]
    fn triple_evaluation_at_two() {
        // S_3(2) = 9, S_5(2) = 33, S_7(2) = 129
        let (t, _) = powersum_triple(1, 3).unwrap().integer_scaled();
        let v = t.eval(&int(2));
        assert_eq!(v, [144, 108, 180].map(|x| rat(x, 1)));
        assert_eq!(&v[0] * &v[0] + &v[1] * &v[1], &v[2] * &v[2]);
    }

    #[test]
    fn equal_sums() {
        let sq = |x: &Integer| x * x;
        assert_eq!(
            equal_sums_family(&int(17)),
            ((int(32), int(69)), (int(36), int(67)))
        );
        assert_eq!(
            equal_sums_family(&int(0)),
            ((int(-2), int(1)), (int(2), int(-1)))
        );
        assert_eq!(
            equal_sums_family(&int(1)),
            ((int(0), int(5)), (int(4), int(3)))
        );
        for u in -50..=50 {
            let ((a, b), (c, d)) = equal_sums_family(&int(u));
            assert_eq!(sq(&a) + sq(&b), sq(&c) + sq(&d));
        }
        let ([a, b], [c, d]) = equal_sums_polynomials();
        assert!((&(&a.pow(2) + &b.pow(2)) - &(&c.pow(2) + &d.pow(2))).is_zero());
    }
}
