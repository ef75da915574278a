//! Sparse polynomials in two variables `u`, `v`, used to check form
//! identities by full expansion.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::exact::{rat_from, Integer, Rational};

/// Map from `(deg_u, deg_v)` to nonzero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePoly {
    coeffs: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rational::one(), 0, 0)
    }

    pub fn monomial(c: Rational, du: u32, dv: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((du, dv), c);
        p
    }

    /// `alpha u^2 + beta uv + gamma v^2`.
    pub fn quadratic(alpha: &Integer, beta: &Integer, gamma: &Integer) -> Self {
        let mut p = Self::zero();
        p.add_term((2, 0), rat_from(alpha.clone()));
        p.add_term((1, 1), rat_from(beta.clone()));
        p.add_term((0, 2), rat_from(gamma.clone()));
        p
    }

    fn add_term(&mut self, key: (u32, u32), c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn coeff(&self, du: u32, dv: u32) -> Rational {
        self.coeffs
            .get(&(du, dv))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            out.add_term(*k, v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, ((du, dv), c)| {
                acc + c
                    * num_traits::pow(u.clone(), *du as usize)
                    * num_traits::pow(v.clone(), *dv as usize)
            })
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (k, c) in &rhs.coeffs {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for ((au, av), ca) in &self.coeffs {
            for ((bu, bv), cb) in &rhs.coeffs {
                out.add_term((au + bu, av + bv), ca * cb);
            }
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(&-Rational::one())
    }
}
