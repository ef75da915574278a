//! Linear combinations of power sums `S_k(n) = 1^k + 2^k + ... + n^k`, the
//! closed-form product and power formulas, and conversion to polynomials
//! in `n` through Bernoulli's formula.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{bernoulli, binomial, gcd_all, lcm, pow2, rat_from, Integer, Rational};
use crate::poly::Polynomial;

/// `sum_j c_j S_j`, stored without zero coefficients. The empty map is zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PowerSumCombo {
    terms: BTreeMap<u32, Rational>,
}

impl PowerSumCombo {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single power sum `S_k`.
    pub fn s(k: u32) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn term(k: u32, c: Rational) -> Self {
        Self::from_terms([(k, c)])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    fn add_term(&mut self, k: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.terms.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn exponents(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    /// Sum of the coefficients, i.e. the value at `n = 1`.
    pub fn weight(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// The combo as a polynomial in `n`.
    pub fn to_polynomial(&self) -> Polynomial {
        combo_to_polynomial(self)
    }

    pub fn eval(&self, n: &Integer) -> Rational {
        self.to_polynomial().eval_int(n)
    }

    /// Rewrites a polynomial with zero constant term in the power-sum basis.
    /// `{S_0, S_1, ...}` is triangular against `{n, n^2, ...}` so the
    /// representation is unique.
    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        if !p.coeff(0).is_zero() {
            return Err(Error::InvalidArgument(
                "a power-sum combination has zero constant term".into(),
            ));
        }
        let mut rest = p.clone();
        let mut out = Self::zero();
        while let Some(d) = rest.degree() {
            // faulhaber(d - 1) has leading coefficient 1/d.
            let c = rest.coeff(d) * rat_from(Integer::from(d));
            rest = &rest - &faulhaber(d - 1).scale(&c);
            out.add_term(d - 1, c);
        }
        Ok(out)
    }
}

impl Add for &PowerSumCombo {
    type Output = PowerSumCombo;
    fn add(self, rhs: &PowerSumCombo) -> PowerSumCombo {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &PowerSumCombo {
    type Output = PowerSumCombo;
    fn sub(self, rhs: &PowerSumCombo) -> PowerSumCombo {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Neg for &PowerSumCombo {
    type Output = PowerSumCombo;
    fn neg(self) -> PowerSumCombo {
        self.scale(&-Rational::one())
    }
}

impl Add for PowerSumCombo {
    type Output = PowerSumCombo;
    fn add(self, rhs: PowerSumCombo) -> PowerSumCombo {
        &self + &rhs
    }
}

impl Sub for PowerSumCombo {
    type Output = PowerSumCombo;
    fn sub(self, rhs: PowerSumCombo) -> PowerSumCombo {
        &self - &rhs
    }
}

/// Splits combos into a common rational factor and integer combos whose
/// joint content is 1: `combos[i] = factor * normalized[i]`, factor > 0.
/// All-zero input gives factor 1.
pub fn integer_normalize(combos: &[PowerSumCombo]) -> (Vec<PowerSumCombo>, Rational) {
    let coeffs = || combos.iter().flat_map(|c| c.terms.values());
    let den = coeffs().fold(Integer::one(), |acc, c| lcm(&acc, c.denom()));
    let num = gcd_all(coeffs().map(|c| c.numer()));
    if num.is_zero() {
        return (combos.to_vec(), Rational::one());
    }
    let factor = Rational::new(num, den);
    let inv = factor.recip();
    (combos.iter().map(|c| c.scale(&inv)).collect(), factor)
}

/// Bernoulli's formula: `S_k` as a polynomial in `n` of degree `k + 1` with
/// zero constant term.
pub fn faulhaber(k: u32) -> Polynomial {
    let k1 = k + 1;
    let inv = Rational::new(Integer::one(), Integer::from(k1));
    Polynomial::from_terms((1..=k1).map(|j| {
        let sign = if (k1 - j).is_multiple_of(2) { 1 } else { -1 };
        let c = rat_from(binomial(k1, j) * sign) * bernoulli(k1 - j) * &inv;
        (j, c)
    }))
}

/// `S_k(n)` for any integer `n`, negative values included through the
/// polynomial. Always integral for integral `n`.
pub fn eval_powersum(k: u32, n: &Integer) -> Rational {
    faulhaber(k).eval_int(n)
}

pub fn combo_to_polynomial(c: &PowerSumCombo) -> Polynomial {
    c.terms().fold(Polynomial::zero(), |acc, (k, coeff)| {
        &acc + &faulhaber(k).scale(coeff)
    })
}

/// `1/(k+1) sum_{j=0}^{floor(k/2)} B_{2j} C(k+1, 2j) S_{shift - 2j}`, the
/// building block shared by the product and square formulas.
fn bernoulli_half_sum(k: u32, shift: u32) -> PowerSumCombo {
    let inv = Rational::new(Integer::one(), Integer::from(k + 1));
    PowerSumCombo::from_terms((0..=k / 2).map(|j| {
        let c = bernoulli(2 * j) * rat_from(binomial(k + 1, 2 * j)) * &inv;
        (shift - 2 * j, c)
    }))
}

/// `S_k S_m` as a combination of power sums.
///
/// For `k, m >= 1` this is Lucas' formula. When either index is zero the
/// formula does not hold (`S_0 S_1` at `n = 1` would give 3/2), so the
/// product polynomial is converted back to the power-sum basis instead.
pub fn product(k: u32, m: u32) -> PowerSumCombo {
    if k == 0 || m == 0 {
        let p = &faulhaber(k) * &faulhaber(m);
        return PowerSumCombo::from_polynomial(&p).expect("product has zero constant term");
    }
    let shift = k + m + 1;
    &bernoulli_half_sum(k, shift) + &bernoulli_half_sum(m, shift)
}

/// `S_k^2`. Only odd exponents occur for `k >= 1`.
pub fn square(k: u32) -> PowerSumCombo {
    if k == 0 {
        return product(0, 0);
    }
    bernoulli_half_sum(k, 2 * k + 1).scale(&rat_from(Integer::from(2)))
}

/// `S_1^k = 2^{1-k} sum_{j=0}^{floor((k-1)/2)} C(k, 2j+1) S_{2k-1-2j}`.
pub fn s1_power(k: u32) -> Result<PowerSumCombo> {
    if k == 0 {
        return Err(Error::InvalidArgument("s1_power requires k >= 1".into()));
    }
    let norm = Rational::new(Integer::one(), pow2(k - 1));
    Ok(PowerSumCombo::from_terms((0..=(k - 1) / 2).map(|j| {
        (2 * k - 1 - 2 * j, rat_from(binomial(k, 2 * j + 1)) * &norm)
    })))
}

/// `S_2 S_1^k = 1/(3 2^k) sum_{j=0}^{floor((k+1)/2)}
/// (2k+3-2j)/(2j+1) C(k+1, 2j) S_{2k+2-2j}`.
pub fn s2_s1_power(k: u32) -> PowerSumCombo {
    let norm = Rational::new(Integer::one(), pow2(k) * 3);
    PowerSumCombo::from_terms((0..=k.div_ceil(2)).map(|j| {
        let ratio = Rational::new(Integer::from(2 * k + 3 - 2 * j), Integer::from(2 * j + 1));
        (
            2 * k + 2 - 2 * j,
            ratio * rat_from(binomial(k + 1, 2 * j)) * &norm,
        )
    }))
}
