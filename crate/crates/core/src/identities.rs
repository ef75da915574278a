//! Cubic relations among power sums: each form `alpha u^2 + beta uv +
//! gamma v^2` of a verified [`FormQuadruple`] is evaluated at `(S_k, S_m)`
//! (the Q family) or `(S_2, S_1^k)` (the F family) and rewritten as a power-sum
//! combination. Substituting Bernoulli's polynomials then gives univariate
//! polynomial identities.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{int, rat_from, Integer, Rational};
use crate::forms::{content_reduce, verify_cubic_identity, BinaryQuadraticForm, FormQuadruple};
use crate::poly::Polynomial;
use crate::powersum::{
    combo_to_polynomial, integer_normalize, product, s1_power, s2_s1_power, square, PowerSumCombo,
};

/// Which power sums stand in for `(u, v)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationMode {
    /// `(u, v) = (S_k, S_m)`.
    Q { k: u32, m: u32 },
    /// `(u, v) = (S_2, S_1^k)`.
    F { k: u32 },
}

impl RelationMode {
    fn validate(self) -> Result<Self> {
        match self {
            RelationMode::Q { k, m } if k == 0 || m == 0 => Err(Error::InvalidArgument(format!(
                "Q({k},{m}) needs k, m >= 1"
            ))),
            RelationMode::F { k: 0 } => Err(Error::InvalidArgument("F(0) needs k >= 1".into())),
            ok => Ok(ok),
        }
    }
}

impl fmt::Display for RelationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationMode::Q { k, m } => write!(f, "Q:{k},{m}"),
            RelationMode::F { k } => write!(f, "F:{k}"),
        }
    }
}

impl FromStr for RelationMode {
    type Err = Error;

    /// `Q:k,m` or `F:k`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("mode must be Q:k,m or F:k, got {s:?}"));
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        let (kind, args) = s.trim().split_once(':').ok_or_else(bad)?;
        let mode = match kind {
            "Q" | "q" => {
                let (k, m) = args.split_once(',').ok_or_else(bad)?;
                RelationMode::Q {
                    k: num(k)?,
                    m: num(m)?,
                }
            }
            "F" | "f" => RelationMode::F { k: num(args)? },
            _ => return Err(bad()),
        };
        mode.validate()
    }
}

/// `alpha S_k^2 + beta S_k S_m + gamma S_m^2`.
pub fn build_q(form: &BinaryQuadraticForm, k: u32, m: u32) -> Result<PowerSumCombo> {
    RelationMode::Q { k, m }.validate()?;
    let alpha = rat_from(form.alpha.clone());
    let beta = rat_from(form.beta.clone());
    let gamma = rat_from(form.gamma.clone());
    Ok(&(&square(k).scale(&alpha) + &product(k, m).scale(&beta)) + &square(m).scale(&gamma))
}

/// `alpha S_2^2 + beta S_2 S_1^k + gamma S_1^{2k}`.
pub fn build_f(form: &BinaryQuadraticForm, k: u32) -> Result<PowerSumCombo> {
    RelationMode::F { k }.validate()?;
    let alpha = rat_from(form.alpha.clone());
    let beta = rat_from(form.beta.clone());
    let gamma = rat_from(form.gamma.clone());
    Ok(
        &(&square(2).scale(&alpha) + &s2_s1_power(k).scale(&beta))
            + &s1_power(2 * k)?.scale(&gamma),
    )
}

fn build(form: &BinaryQuadraticForm, mode: RelationMode) -> Result<PowerSumCombo> {
    match mode {
        RelationMode::Q { k, m } => build_q(form, k, m),
        RelationMode::F { k } => build_f(form, k),
    }
}

/// `c1^3 + c2^3 + c3^3 = c4^3` among power-sum combinations.
///
/// The stored combos have integer coefficients with joint content 1; the
/// combos obtained directly from the forms are `common_factor * combos[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComboQuadruple {
    pub combos: [PowerSumCombo; 4],
    pub common_factor: Rational,
    /// Content-reduced forms the relation was built from.
    pub forms: FormQuadruple,
    /// Content divided out of the input forms before building.
    pub form_content: Integer,
    pub mode: RelationMode,
}

impl ComboQuadruple {
    /// The four combos evaluated at `n`.
    pub fn eval(&self, n: &Integer) -> [Rational; 4] {
        self.combos.clone().map(|c| c.eval(n))
    }

    /// Checks the cubic equation numerically at `n`.
    pub fn holds_at(&self, n: &Integer) -> bool {
        let [a, b, c, d] = self.eval(n);
        let cube = |x: &Rational| x * x * x;
        cube(&a) + cube(&b) + cube(&c) == cube(&d)
    }
}

/// Applies the Q or F construction to all four forms of a verified
/// quadruple, after dividing out the joint content of the forms.
pub fn build_relation(fq: &FormQuadruple, mode: RelationMode) -> Result<ComboQuadruple> {
    if !verify_cubic_identity(fq) {
        return Err(Error::Verification(
            "form quadruple does not satisfy q1^3 + q2^3 + q3^3 = q4^3".into(),
        ));
    }
    let mode = mode.validate()?;
    let (forms, form_content) = content_reduce(fq);
    let raw = forms
        .forms
        .iter()
        .map(|q| build(q, mode))
        .collect::<Result<Vec<_>>>()?;
    let (combos, common_factor) = integer_normalize(&raw);
    Ok(ComboQuadruple {
        combos: combos.try_into().expect("four combos"),
        common_factor,
        forms,
        form_content,
        mode,
    })
}

/// `p1^3 + p2^3 + p3^3 = p4^3` for polynomials in one variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyIdentity {
    pub polys: [Polynomial; 4],
    /// Multiplier applied to the source expressions to reach `polys`.
    pub scale: Rational,
}

impl PolyIdentity {
    pub fn new(polys: [Polynomial; 4]) -> Self {
        Self {
            polys,
            scale: Rational::one(),
        }
    }

    pub fn residual(&self) -> Polynomial {
        let [a, b, c, d] = &self.polys;
        &(&(&a.pow(3) + &b.pow(3)) + &c.pow(3)) - &d.pow(3)
    }

    /// `true` when the cubic identity holds as polynomials.
    pub fn verify(&self) -> bool {
        self.residual().is_zero()
    }

    pub fn eval(&self, x: &Rational) -> [Rational; 4] {
        self.polys.clone().map(|p| p.eval(x))
    }

    pub fn degree(&self) -> Option<u32> {
        self.polys.iter().filter_map(Polynomial::degree).max()
    }
}

/// Rescales polynomials to integer coefficients with joint content 1.
/// Returns the scaled polynomials and the multiplier used.
pub fn integer_rescale(polys: &[Polynomial]) -> (Vec<Polynomial>, Rational) {
    let den = polys.iter().fold(Integer::one(), |acc, p| {
        crate::exact::lcm(&acc, &p.denominator_lcm())
    });
    let scaled: Vec<Polynomial> = polys
        .iter()
        .map(|p| p.scale(&rat_from(den.clone())))
        .collect();
    let content = crate::exact::gcd_all(
        scaled
            .iter()
            .map(Polynomial::numerator_gcd)
            .collect::<Vec<_>>()
            .iter(),
    );
    if content.is_zero() {
        return (polys.to_vec(), Rational::one());
    }
    let scale = Rational::new(den, content.clone());
    let inv = Rational::new(Integer::one(), content);
    (scaled.iter().map(|p| p.scale(&inv)).collect(), scale)
}

/// Replaces each power sum by its polynomial, renaming `n` to `u`, and
/// rescales to coprime integer coefficients. The identity is re-verified by
/// expansion before returning.
pub fn expand_relation(cq: &ComboQuadruple) -> Result<PolyIdentity> {
    let polys: Vec<Polynomial> = cq.combos.iter().map(combo_to_polynomial).collect();
    let (polys, scale) = integer_rescale(&polys);
    let identity = PolyIdentity {
        polys: polys.try_into().expect("four polynomials"),
        scale,
    };
    if !identity.verify() {
        return Err(Error::Verification(format!(
            "expanded {} relation does not cancel",
            cq.mode
        )));
    }
    Ok(identity)
}

/// `u^s (u + 1)^t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CommonRoot {
    pub u_power: u32,
    pub u_plus_one_power: u32,
}

impl CommonRoot {
    pub fn polynomial(&self) -> Polynomial {
        let u = Polynomial::monomial(Rational::one(), 1);
        let u1 = Polynomial::linear(Rational::one());
        &u.pow(self.u_power) * &u1.pow(self.u_plus_one_power)
    }

    pub fn is_trivial(&self) -> bool {
        self.u_power == 0 && self.u_plus_one_power == 0
    }
}

/// Largest `g = u^s (u + 1)^t` dividing all four polynomials. The quotient
/// identity still holds since `g^3` is common to both sides; it is
/// re-verified anyway.
pub fn factor_common_root(pi: &PolyIdentity) -> Result<(PolyIdentity, CommonRoot)> {
    if pi.polys.iter().all(Polynomial::is_zero) {
        return Ok((
            pi.clone(),
            CommonRoot {
                u_power: 0,
                u_plus_one_power: 0,
            },
        ));
    }
    let s = pi
        .polys
        .iter()
        .filter_map(Polynomial::low_degree)
        .min()
        .unwrap_or(0);
    let mut polys: Vec<Polynomial> = pi.polys.iter().map(|p| p.shift_down(s)).collect();
    let u1 = Polynomial::linear(Rational::one());
    let minus_one = -Rational::one();
    let mut t = 0;
    while polys.iter().any(|p| !p.is_zero()) && polys.iter().all(|p| p.eval(&minus_one).is_zero()) {
        polys = polys
            .iter()
            .map(|p| p.div_rem(&u1).expect("u + 1 is nonzero").0)
            .collect();
        t += 1;
    }
    let quotient = PolyIdentity {
        polys: polys.try_into().expect("four polynomials"),
        scale: pi.scale.clone(),
    };
    if !quotient.verify() {
        return Err(Error::Verification(
            "quotient identity does not cancel".into(),
        ));
    }
    Ok((
        quotient,
        CommonRoot {
            u_power: s,
            u_plus_one_power: t,
        },
    ))
}

/// Integer values of the four polynomials at `u`, if integral.
pub fn eval_integral(pi: &PolyIdentity, u: i64) -> Option<[Integer; 4]> {
    let vals = pi.eval(&rat_from(int(u)));
    let ints: Option<Vec<Integer>> = vals.iter().map(crate::exact::to_integer).collect();
    ints.map(|v| v.try_into().expect("four values"))
}
