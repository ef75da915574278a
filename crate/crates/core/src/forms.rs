//! Binary quadratic forms solving `q1^3 + q2^3 + q3^3 = q4^3`, generated from
//! a nontrivial integer solution of `a^3 + b^3 + c^3 = d^3`.

use std::fmt;

use num_traits::{One, Zero};

use crate::bivariate::BivariatePoly;
use crate::error::{Error, Result};
use crate::exact::{gcd_all, int, rat_from, to_integer, Integer, Rational};

/// A nontrivial solution `(a, b, c, d)` of `a^3 + b^3 + c^3 = d^3` with
/// `abcd != 0` and `d` distinct from each of `a`, `b`, `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubicQuadruple {
    a: Integer,
    b: Integer,
    c: Integer,
    d: Integer,
}

impl CubicQuadruple {
    pub fn new(a: Integer, b: Integer, c: Integer, d: Integer) -> Result<Self> {
        let seed = Self { a, b, c, d };
        let fail = |clause: String| Error::InvalidSeed {
            seed: seed.to_string(),
            clause,
        };
        for (name, v) in ["a", "b", "c", "d"].iter().zip(seed.entries()) {
            if v.is_zero() {
                return Err(fail(format!("abcd != 0 violated: {name} = 0")));
            }
        }
        if cube(&seed.a) + cube(&seed.b) + cube(&seed.c) != cube(&seed.d) {
            return Err(fail("a^3 + b^3 + c^3 != d^3".into()));
        }
        for (name, v) in [("a", &seed.a), ("b", &seed.b), ("c", &seed.c)] {
            if *v == seed.d {
                return Err(fail(format!("trivial solution: d = {name}")));
            }
        }
        Ok(seed)
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(int(a), int(b), int(c), int(d))
    }

    pub fn from_array(v: [Integer; 4]) -> Result<Self> {
        let [a, b, c, d] = v;
        Self::new(a, b, c, d)
    }

    pub fn a(&self) -> &Integer {
        &self.a
    }
    pub fn b(&self) -> &Integer {
        &self.b
    }
    pub fn c(&self) -> &Integer {
        &self.c
    }
    pub fn d(&self) -> &Integer {
        &self.d
    }

    pub fn entries(&self) -> [&Integer; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn to_array(&self) -> [Integer; 4] {
        [
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
        ]
    }

    /// Multiplies every entry by `t != 0`; the result is again a solution.
    pub fn scaled(&self, t: &Integer) -> Result<Self> {
        Self::new(&self.a * t, &self.b * t, &self.c * t, &self.d * t)
    }
}

impl fmt::Display for CubicQuadruple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

pub(crate) fn cube(v: &Integer) -> Integer {
    v * v * v
}

/// `true` when `q1^3 + q2^3 + q3^3 = q4^3`.
pub fn is_cubic_solution(q: &[Integer; 4]) -> bool {
    cube(&q[0]) + cube(&q[1]) + cube(&q[2]) == cube(&q[3])
}

/// Reorders `(a, b, c)` of a seed: entry `i` of the result is entry
/// `perm[i]` of the input. `[0, 2, 1]` swaps `b` and `c`.
pub fn permute_seed(seed: &CubicQuadruple, perm: [usize; 3]) -> Result<CubicQuadruple> {
    let mut sorted = perm;
    sorted.sort_unstable();
    if sorted != [0, 1, 2] {
        return Err(Error::InvalidArgument(format!(
            "{perm:?} is not a permutation of [0, 1, 2]"
        )));
    }
    let abc = [&seed.a, &seed.b, &seed.c];
    CubicQuadruple::new(
        abc[perm[0]].clone(),
        abc[perm[1]].clone(),
        abc[perm[2]].clone(),
        seed.d.clone(),
    )
}

/// `alpha u^2 + beta uv + gamma v^2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryQuadraticForm {
    pub alpha: Integer,
    pub beta: Integer,
    pub gamma: Integer,
}

impl BinaryQuadraticForm {
    pub fn new(alpha: Integer, beta: Integer, gamma: Integer) -> Self {
        Self { alpha, beta, gamma }
    }

    pub fn from_i64(alpha: i64, beta: i64, gamma: i64) -> Self {
        Self::new(int(alpha), int(beta), int(gamma))
    }

    pub fn eval(&self, u: &Integer, v: &Integer) -> Integer {
        &self.alpha * u * u + &self.beta * u * v + &self.gamma * v * v
    }

    pub fn to_bivariate(&self) -> BivariatePoly {
        BivariatePoly::quadratic(&self.alpha, &self.beta, &self.gamma)
    }

    pub fn coefficients(&self) -> [&Integer; 3] {
        [&self.alpha, &self.beta, &self.gamma]
    }

    /// The form composed with `(u, v) -> M (u, v)`, coefficients kept
    /// rational.
    fn substitute(&self, m: &SubstitutionMatrix) -> [Rational; 3] {
        let [[m11, m12], [m21, m22]] = &m.0;
        let a = rat_from(self.alpha.clone());
        let b = rat_from(self.beta.clone());
        let c = rat_from(self.gamma.clone());
        let two = rat_from(int(2));
        [
            &a * m11 * m11 + &b * m11 * m21 + &c * m21 * m21,
            &two * &a * m11 * m12 + &b * (m11 * m22 + m12 * m21) + &two * &c * m21 * m22,
            &a * m12 * m12 + &b * m12 * m22 + &c * m22 * m22,
        ]
    }
}

/// Four forms satisfying (or claimed to satisfy) the cubic identity, with
/// the seed they came from when known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormQuadruple {
    pub forms: [BinaryQuadraticForm; 4],
    pub seed: Option<CubicQuadruple>,
}

impl FormQuadruple {
    pub fn new(forms: [BinaryQuadraticForm; 4], seed: Option<CubicQuadruple>) -> Self {
        Self { forms, seed }
    }

    /// Builds from twelve coefficients `(alpha, beta, gamma)` per form.
    pub fn from_coefficients(c: [[i64; 3]; 4], seed: Option<CubicQuadruple>) -> Self {
        Self::new(
            c.map(|[a, b, g]| BinaryQuadraticForm::from_i64(a, b, g)),
            seed,
        )
    }

    /// All twelve coefficients, form by form.
    pub fn coefficients(&self) -> Vec<&Integer> {
        self.forms.iter().flat_map(|f| f.coefficients()).collect()
    }

    pub fn map_coefficients(&self, f: impl Fn(&Integer) -> Integer) -> Self {
        Self {
            forms: self
                .forms
                .clone()
                .map(|q| BinaryQuadraticForm::new(f(&q.alpha), f(&q.beta), f(&q.gamma))),
            seed: self.seed.clone(),
        }
    }
}

/// 2x2 matrix acting on `(u, v)`; entries may be rational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstitutionMatrix(pub [[Rational; 2]; 2]);

impl SubstitutionMatrix {
    pub fn identity() -> Self {
        Self::from_i64([[1, 0], [0, 1]])
    }

    pub fn from_i64(m: [[i64; 2]; 2]) -> Self {
        Self(m.map(|row| row.map(|x| rat_from(int(x)))))
    }

    /// `u -> u / k`, leaving `v` alone.
    pub fn scale_u(num: i64, den: i64) -> Self {
        let mut m = Self::identity();
        m.0[0][0] = Rational::new(int(num), int(den));
        m
    }

    pub fn swap() -> Self {
        Self::from_i64([[0, 1], [1, 0]])
    }

    pub fn inverse(&self) -> Option<Self> {
        let [[a, b], [c, d]] = &self.0;
        let det = a * d - b * c;
        if det.is_zero() {
            return None;
        }
        Some(Self([[d / &det, -b / &det], [-c / &det, a / &det]]))
    }
}

/// The four forms of Sándor's theorem for a nontrivial seed `(a, b, c, d)`:
///
/// ```text
/// q1 = a(a+c) u^2 + (d-b)(d+b) uv - c(d-b) v^2
/// q2 = b(a+c) u^2 - (c-a)(c+a) uv + d(d-b) v^2
/// q3 = c(a+c) u^2 - (d-b)(d+b) uv - a(d-b) v^2
/// q4 = d(a+c) u^2 - (c-a)(c+a) uv + b(d-b) v^2
/// ```
///
/// The seed is validated on construction, so the result always satisfies
/// the cubic identity; see [`verify_cubic_identity`].
pub fn sandor_generate(seed: &CubicQuadruple) -> FormQuadruple {
    let CubicQuadruple { a, b, c, d } = seed;
    let a_plus_c = a + c;
    let d_minus_b = d - b;
    let cross_db = &d_minus_b * (d + b);
    let cross_ca = (c - a) * (c + a);
    let form = |x: Integer, y: Integer, z: Integer| BinaryQuadraticForm::new(x, y, z);
    FormQuadruple::new(
        [
            form(a * &a_plus_c, cross_db.clone(), -(c * &d_minus_b)),
            form(b * &a_plus_c, -cross_ca.clone(), d * &d_minus_b),
            form(c * &a_plus_c, -cross_db, -(a * &d_minus_b)),
            form(d * &a_plus_c, -cross_ca, b * &d_minus_b),
        ],
        Some(seed.clone()),
    )
}

/// `q1^3 + q2^3 + q3^3 - q4^3` fully expanded.
pub fn cubic_residual(fq: &FormQuadruple) -> BivariatePoly {
    let cubes: Vec<BivariatePoly> = fq.forms.iter().map(|q| q.to_bivariate().pow(3)).collect();
    &(&(&cubes[0] + &cubes[1]) + &cubes[2]) - &cubes[3]
}

/// Checks the cubic identity by exact expansion: all seven sextic
/// coefficients of `q1^3 + q2^3 + q3^3 - q4^3` must vanish.
pub fn verify_cubic_identity(fq: &FormQuadruple) -> bool {
    cubic_residual(fq).is_zero()
}

/// Divides all twelve coefficients by their joint gcd `g` (returned).
/// The zero quadruple is returned unchanged with `g = 1`.
pub fn content_reduce(fq: &FormQuadruple) -> (FormQuadruple, Integer) {
    let g = gcd_all(fq.coefficients());
    if g.is_zero() || g.is_one() {
        return (fq.clone(), Integer::one());
    }
    (fq.map_coefficients(|x| x / &g), g)
}

/// Composes every form with `(u, v) -> M (u, v)`. All resulting
/// coefficients must be integers.
pub fn substitute(fq: &FormQuadruple, m: &SubstitutionMatrix) -> Result<FormQuadruple> {
    const NAMES: [&str; 3] = ["alpha", "beta", "gamma"];
    let mut forms = Vec::with_capacity(4);
    for (i, q) in fq.forms.iter().enumerate() {
        let coeffs = q.substitute(m);
        let mut ints = Vec::with_capacity(3);
        for (name, c) in NAMES.iter().zip(&coeffs) {
            ints.push(to_integer(c).ok_or_else(|| Error::NonIntegral {
                form: i + 1,
                coefficient: name,
                value: c.clone(),
            })?);
        }
        let [x, y, z]: [Integer; 3] = ints.try_into().expect("three coefficients");
        forms.push(BinaryQuadraticForm::new(x, y, z));
    }
    Ok(FormQuadruple::new(
        forms.try_into().expect("four forms"),
        fq.seed.clone(),
    ))
}

/// The numeric quadruple `(q1, q2, q3, q4)(u, v)`.
pub fn evaluate_forms(fq: &FormQuadruple, u: &Integer, v: &Integer) -> [Integer; 4] {
    fq.forms.clone().map(|q| q.eval(u, v))
}

/// `(a + c) / (d - b)`, preserved by every member of the seed's family.
pub fn fraction_ratio(seed: &CubicQuadruple) -> Rational {
    Rational::new(&seed.a + &seed.c, &seed.d - &seed.b)
}

/// `(q1 + q3) / (q4 - q2)` for a numeric quadruple, when defined.
pub fn numeric_ratio(q: &[Integer; 4]) -> Option<Rational> {
    let den = &q[3] - &q[1];
    (!den.is_zero()).then(|| Rational::new(&q[0] + &q[2], den))
}

/// Checks `(d - b)(q1 + q3) = (a + c)(q4 - q2)` as polynomials in `(u, v)`,
/// which makes the ratio identity hold at every `(u, v)`.
pub fn check_characterization(seed: &CubicQuadruple, fq: &FormQuadruple) -> bool {
    let [q1, q2, q3, q4] = fq.forms.clone().map(|q| q.to_bivariate());
    let lhs = (&q1 + &q3).scale(&rat_from(&seed.d - &seed.b));
    let rhs = (&q4 - &q2).scale(&rat_from(&seed.a + &seed.c));
    (&lhs - &rhs).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn seed(a: i64, b: i64, c: i64, d: i64) -> CubicQuadruple {
        CubicQuadruple::from_i64(a, b, c, d).unwrap()
    }

    fn fq(c: [[i64; 3]; 4]) -> FormQuadruple {
        FormQuadruple::from_coefficients(c, None)
    }

    fn family_1689() -> FormQuadruple {
        fq([[3, 15, -8], [18, -21, 9], [24, -15, -1], [27, -21, 6]])
    }

    fn family_7_14() -> FormQuadruple {
        fq([[28, 34, -17], [56, -40, 20], [68, -34, -7], [80, -40, 14]])
    }

    fn ints(v: [i64; 4]) -> [Integer; 4] {
        v.map(int)
    }

    #[test]
    fn seed_validation_names_the_clause() {
        let err = CubicQuadruple::from_i64(0, 1, 1, 1)
            .unwrap_err()
            .to_string();
        assert!(err.contains("a = 0"), "{err}");
        let err = CubicQuadruple::from_i64(1, 2, 3, 4)
            .unwrap_err()
            .to_string();
        assert!(err.contains("a^3 + b^3 + c^3 != d^3"), "{err}");
        // 1 + 1 - 1 = 1 with d = a
        let err = CubicQuadruple::from_i64(1, 1, -1, 1)
            .unwrap_err()
            .to_string();
        assert!(err.contains("trivial"), "{err}");
        assert!(CubicQuadruple::from_i64(1, 12, -10, 9).is_ok());
    }

    #[test]
    fn ramanujan_from_3456() {
        let raw = sandor_generate(&seed(3, 4, 5, 6));
        assert_eq!(
            raw.forms,
            fq([[24, 20, -10], [32, -16, 12], [40, -20, -6], [48, -16, 8]]).forms
        );
        let (reduced, g) = content_reduce(&raw);
        assert_eq!(g, int(2));
        let ramanujan = substitute(&reduced, &SubstitutionMatrix::scale_u(1, 2)).unwrap();
        assert_eq!(
            ramanujan.forms,
            fq([[3, 5, -5], [4, -4, 6], [5, -5, -3], [6, -4, 4]]).forms
        );
        assert!(verify_cubic_identity(&ramanujan));
    }

    #[test]
    fn golden_families() {
        let (f, g) = content_reduce(&sandor_generate(&seed(1, 6, 8, 9)));
        assert_eq!((f.forms, g), (family_1689().forms, int(3)));
        let (f, g) = content_reduce(&sandor_generate(&seed(7, 14, 17, 20)));
        assert_eq!((f.forms, g), (family_7_14().forms, int(6)));
        let (f, g) = content_reduce(&sandor_generate(&seed(1, 8, 6, 9)));
        assert_eq!(g, int(1));
        assert_eq!(
            f.forms,
            fq([[7, 17, -6], [56, -35, 9], [42, -17, -1], [63, -35, 8]]).forms
        );
    }

    #[test]
    fn verification() {
        assert!(verify_cubic_identity(&fq([
            [3, 5, -5],
            [4, -4, 6],
            [5, -5, -3],
            [6, -4, 4]
        ])));
        assert!(verify_cubic_identity(&family_7_14()));
        let mut bad = family_1689();
        bad.forms[0].gamma = int(-7);
        assert!(!verify_cubic_identity(&bad));
    }

    #[test]
    fn permutations() {
        assert_eq!(
            permute_seed(&seed(1, 6, 8, 9), [0, 2, 1]).unwrap(),
            seed(1, 8, 6, 9)
        );
        assert_eq!(
            permute_seed(&seed(1, 6, 8, 9), [0, 1, 2]).unwrap(),
            seed(1, 6, 8, 9)
        );
        assert_eq!(
            permute_seed(&seed(3, 4, 5, 6), [2, 1, 0]).unwrap(),
            seed(5, 4, 3, 6)
        );
        assert!(permute_seed(&seed(3, 4, 5, 6), [0, 0, 1]).is_err());
    }

    #[test]
    fn content_reduce_is_idempotent() {
        let (once, _) = content_reduce(&sandor_generate(&seed(7, 14, 17, 20)));
        let (twice, g) = content_reduce(&once);
        assert_eq!(once, twice);
        assert_eq!(g, int(1));
    }

    #[test]
    fn substitution() {
        assert_eq!(
            substitute(&family_1689(), &SubstitutionMatrix::identity()).unwrap(),
            family_1689()
        );
        let swapped = substitute(&family_1689(), &SubstitutionMatrix::swap()).unwrap();
        assert_eq!(
            swapped.forms,
            fq([[-8, 15, 3], [9, -21, 18], [-1, -15, 24], [6, -21, 27]]).forms
        );
        assert!(verify_cubic_identity(&swapped));
        let m = SubstitutionMatrix::from_i64([[2, 1], [1, 1]]);
        let there = substitute(&family_7_14(), &m).unwrap();
        assert!(verify_cubic_identity(&there));
        assert_eq!(substitute(&there, &m.inverse().unwrap()).unwrap(), family_7_14());
    }

    #[test]
    fn non_integral_substitution_is_rejected() {
        match substitute(&family_1689(), &SubstitutionMatrix::scale_u(1, 2)) {
            Err(Error::NonIntegral {
                form,
                coefficient,
                value,
            }) => {
                assert_eq!((form, coefficient, value), (1, "alpha", rat(3, 4)));
            }
            other => panic!("expected NonIntegral, got {other:?}"),
        }
    }

    #[test]
    fn evaluations() {
        assert_eq!(
            evaluate_forms(&family_1689(), &int(1), &int(2)),
            ints([1, 12, -10, 9])
        );
        assert_eq!(
            evaluate_forms(&family_1689(), &int(6), &int(-1)),
            ints([10, 783, 953, 1104])
        );
        assert_eq!(
            evaluate_forms(&family_7_14(), &int(-2), &int(-3)),
            ints([163, 164, 5, 206])
        );
        assert_eq!(
            evaluate_forms(&family_7_14(), &int(10), &int(3)),
            ints([3667, 4580, 5717, 6926])
        );
    }

    #[test]
    fn ratios() {
        assert_eq!(fraction_ratio(&seed(1, 6, 8, 9)), rat(3, 1));
        assert_eq!(fraction_ratio(&seed(7, 14, 17, 20)), rat(4, 1));
        assert_eq!(fraction_ratio(&seed(3, 4, 5, 6)), rat(4, 1));
        assert_eq!(numeric_ratio(&ints([1, 12, -10, 9])), Some(rat(3, 1)));
        assert_eq!(numeric_ratio(&ints([10, 783, 953, 1104])), Some(rat(3, 1)));
        assert_eq!(numeric_ratio(&ints([163, 164, 5, 206])), Some(rat(4, 1)));
        assert_eq!(
            numeric_ratio(&ints([3667, 4580, 5717, 6926])),
            Some(rat(4, 1))
        );
    }

    #[test]
    fn characterization() {
        assert!(check_characterization(&seed(1, 6, 8, 9), &family_1689()));
        assert!(check_characterization(&seed(7, 14, 17, 20), &family_7_14()));
        assert!(!check_characterization(&seed(1, 6, 8, 9), &family_7_14()));
    }

    #[test]
    fn evaluation_consistency_on_grid() {
        for f in [family_1689(), family_7_14()] {
            for u in -10..=10 {
                for v in -10..=10 {
                    assert!(is_cubic_solution(&evaluate_forms(&f, &int(u), &int(v))));
                }
            }
        }
    }
}
