//! Sparse univariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::{gcd_all, lcm, rat_from, Integer, Rational};

/// `sum c_d x^d` stored as a map from degree to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: BTreeMap<u32, Rational>,
}

/// Term order for printing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermOrder {
    Ascending,
    Descending,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * x^degree`.
    pub fn monomial(c: Rational, degree: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, c);
        p
    }

    /// `x + shift`.
    pub fn linear(shift: Rational) -> Self {
        Self::from_terms([(1, Rational::one()), (0, shift)])
    }

    /// Sums duplicate degrees and drops zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    /// Integer coefficients listed from degree 0 upwards.
    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(d, &c)| (d as u32, rat_from(Integer::from(c)))),
        )
    }

    pub(crate) fn add_term(&mut self, degree: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(degree).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coeff(&self, degree: u32) -> Rational {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero terms in ascending degree.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Lowest degree carrying a nonzero coefficient.
    pub fn low_degree(&self) -> Option<u32> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.values().next_back()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let Some(top) = self.degree() else {
            return Rational::zero();
        };
        // Horner over the dense range.
        (0..=top)
            .rev()
            .fold(Rational::zero(), |acc, d| acc * x + self.coeff(d))
    }

    pub fn eval_int(&self, x: &Integer) -> Rational {
        self.eval(&rat_from(x.clone()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(d, v)| (*d, v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Polynomial long division. Returns `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> Option<(Polynomial, Polynomial)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading_coeff()?.clone();
        let mut quotient = Polynomial::zero();
        let mut rem = self.clone();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.coeff(rd) / &lead;
            let step = Polynomial::monomial(factor, rd - dd);
            rem = &rem - &(&step * divisor);
            quotient = &quotient + &step;
        }
        Some((quotient, rem))
    }

    /// Divides by `x^s`; all terms must have degree at least `s`.
    pub fn shift_down(&self, s: u32) -> Self {
        assert!(self.low_degree().is_none_or(|lo| lo >= s));
        Self {
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, c)| (d - s, c.clone()))
                .collect(),
        }
    }

    /// lcm of the coefficient denominators (1 for the zero polynomial).
    pub fn denominator_lcm(&self) -> Integer {
        self.coeffs
            .values()
            .fold(Integer::one(), |acc, c| lcm(&acc, c.denom()))
    }

    /// gcd of the coefficient numerators; meaningful for integral polynomials.
    pub fn numerator_gcd(&self) -> Integer {
        gcd_all(self.coeffs.values().map(|c| c.numer()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.denom().is_one())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|(d, c)| (*d, -c)).collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (d, c) in &rhs.coeffs {
            out.add_term(*d, -c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (da, ca) in &self.coeffs {
            for (db, cb) in &rhs.coeffs {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
