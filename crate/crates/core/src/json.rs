//! JSON representations. Big integers travel as decimal strings.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_integer, Integer, Rational};
use crate::forms::{BinaryQuadraticForm, CubicQuadruple, FormQuadruple};
use crate::identities::{ComboQuadruple, CommonRoot, PolyIdentity, RelationMode};
use crate::poly::Polynomial;
use crate::powersum::PowerSumCombo;
use crate::quadratic::AffineCombo;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalRepr {
    fn from(r: &Rational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalRepr> for Rational {
    type Error = Error;
    fn try_from(r: &RationalRepr) -> Result<Self> {
        let den = parse_integer(&r.den)?;
        if den == Integer::from(0) {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational::new(parse_integer(&r.num)?, den))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub exp: u32,
    pub num: String,
    pub den: String,
}

/// `{"terms": [{"exp": j, "num": "...", "den": "..."}]}`, ascending `exp`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermsRepr {
    pub terms: Vec<TermRepr>,
}

impl TermsRepr {
    fn from_iter<'a>(terms: impl Iterator<Item = (u32, &'a Rational)>) -> Self {
        Self {
            terms: terms
                .map(|(exp, c)| TermRepr {
                    exp,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    fn parse(&self) -> Result<Vec<(u32, Rational)>> {
        self.terms
            .iter()
            .map(|t| {
                let r = RationalRepr {
                    num: t.num.clone(),
                    den: t.den.clone(),
                };
                Ok((t.exp, Rational::try_from(&r)?))
            })
            .collect()
    }
}

impl From<&PowerSumCombo> for TermsRepr {
    fn from(c: &PowerSumCombo) -> Self {
        Self::from_iter(c.terms())
    }
}

impl TryFrom<&TermsRepr> for PowerSumCombo {
    type Error = Error;
    fn try_from(r: &TermsRepr) -> Result<Self> {
        Ok(PowerSumCombo::from_terms(r.parse()?))
    }
}

impl From<&Polynomial> for TermsRepr {
    fn from(p: &Polynomial) -> Self {
        Self::from_iter(p.terms())
    }
}

impl TryFrom<&TermsRepr> for Polynomial {
    type Error = Error;
    fn try_from(r: &TermsRepr) -> Result<Self> {
        Ok(Polynomial::from_terms(r.parse()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineRepr {
    pub constant: RationalRepr,
    pub terms: Vec<TermRepr>,
}

impl From<&AffineCombo> for AffineRepr {
    fn from(c: &AffineCombo) -> Self {
        Self {
            constant: (&c.constant).into(),
            terms: TermsRepr::from(&c.combo).terms,
        }
    }
}

pub fn integers(v: &[Integer]) -> Vec<String> {
    v.iter().map(Integer::to_string).collect()
}

pub fn parse_integers<const N: usize>(v: &[String]) -> Result<[Integer; N]> {
    if v.len() != N {
        return Err(Error::Parse(format!(
            "expected {N} integers, got {}",
            v.len()
        )));
    }
    let parsed = v
        .iter()
        .map(|s| parse_integer(s))
        .collect::<Result<Vec<_>>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormRepr {
    pub alpha: String,
    pub beta: String,
    pub gamma: String,
}

impl From<&BinaryQuadraticForm> for FormRepr {
    fn from(q: &BinaryQuadraticForm) -> Self {
        Self {
            alpha: q.alpha.to_string(),
            beta: q.beta.to_string(),
            gamma: q.gamma.to_string(),
        }
    }
}

impl TryFrom<&FormRepr> for BinaryQuadraticForm {
    type Error = Error;
    fn try_from(r: &FormRepr) -> Result<Self> {
        Ok(BinaryQuadraticForm::new(
            parse_integer(&r.alpha)?,
            parse_integer(&r.beta)?,
            parse_integer(&r.gamma)?,
        ))
    }
}

fn parse_forms<const N: usize>(v: &[FormRepr]) -> Result<[BinaryQuadraticForm; N]> {
    if v.len() != N {
        return Err(Error::Parse(format!("expected {N} forms, got {}", v.len())));
    }
    let forms = v
        .iter()
        .map(BinaryQuadraticForm::try_from)
        .collect::<Result<Vec<_>>>()?;
    Ok(forms.try_into().expect("length checked"))
}

pub fn parse_seed(v: &[String]) -> Result<CubicQuadruple> {
    CubicQuadruple::from_array(parse_integers::<4>(v)?)
}

/// `{"q": [{"alpha", "beta", "gamma"} x 4], "seed": [a, b, c, d] | null}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormQuadrupleRepr {
    pub q: Vec<FormRepr>,
    pub seed: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub content: Option<String>,
}

impl From<&FormQuadruple> for FormQuadrupleRepr {
    fn from(fq: &FormQuadruple) -> Self {
        Self {
            q: fq.forms.iter().map(FormRepr::from).collect(),
            seed: fq.seed.as_ref().map(|s| integers(&s.to_array())),
            content: None,
        }
    }
}

impl TryFrom<&FormQuadrupleRepr> for FormQuadruple {
    type Error = Error;
    fn try_from(r: &FormQuadrupleRepr) -> Result<Self> {
        let seed = r.seed.as_deref().map(parse_seed).transpose()?;
        Ok(FormQuadruple::new(parse_forms(&r.q)?, seed))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceRepr {
    pub seed: Option<Vec<String>>,
    pub mode: String,
    pub forms: Vec<FormRepr>,
    /// Content divided out of the generated forms.
    pub form_content: String,
}

/// A power-sum cubic relation with its provenance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRepr {
    pub combos: Vec<TermsRepr>,
    pub common_factor: RationalRepr,
    pub provenance: ProvenanceRepr,
}

impl From<&ComboQuadruple> for RelationRepr {
    fn from(cq: &ComboQuadruple) -> Self {
        Self {
            combos: cq.combos.iter().map(TermsRepr::from).collect(),
            common_factor: (&cq.common_factor).into(),
            provenance: ProvenanceRepr {
                seed: cq.forms.seed.as_ref().map(|s| integers(&s.to_array())),
                mode: cq.mode.to_string(),
                forms: cq.forms.forms.iter().map(FormRepr::from).collect(),
                form_content: cq.form_content.to_string(),
            },
        }
    }
}

impl TryFrom<&RelationRepr> for ComboQuadruple {
    type Error = Error;
    fn try_from(r: &RelationRepr) -> Result<Self> {
        if r.combos.len() != 4 {
            return Err(Error::Parse(format!(
                "expected 4 combos, got {}",
                r.combos.len()
            )));
        }
        let combos = r
            .combos
            .iter()
            .map(PowerSumCombo::try_from)
            .collect::<Result<Vec<_>>>()?;
        let seed = r.provenance.seed.as_deref().map(parse_seed).transpose()?;
        Ok(ComboQuadruple {
            combos: combos.try_into().expect("length checked"),
            common_factor: Rational::try_from(&r.common_factor)?,
            forms: FormQuadruple::new(parse_forms(&r.provenance.forms)?, seed),
            form_content: parse_integer(&r.provenance.form_content)?,
            mode: r.provenance.mode.parse::<RelationMode>()?,
        })
    }
}

/// A univariate cubic identity in `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyIdentityRepr {
    pub variable: String,
    pub polys: Vec<TermsRepr>,
    pub scale: RationalRepr,
}

impl From<&PolyIdentity> for PolyIdentityRepr {
    fn from(pi: &PolyIdentity) -> Self {
        Self {
            variable: "u".into(),
            polys: pi.polys.iter().map(TermsRepr::from).collect(),
            scale: (&pi.scale).into(),
        }
    }
}

impl TryFrom<&PolyIdentityRepr> for PolyIdentity {
    type Error = Error;
    fn try_from(r: &PolyIdentityRepr) -> Result<Self> {
        if r.polys.len() != 4 {
            return Err(Error::Parse(format!(
                "expected 4 polynomials, got {}",
                r.polys.len()
            )));
        }
        let polys = r
            .polys
            .iter()
            .map(Polynomial::try_from)
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyIdentity {
            polys: polys.try_into().expect("length checked"),
            scale: Rational::try_from(&r.scale)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommonRootRepr {
    pub u_power: u32,
    pub u_plus_one_power: u32,
    pub poly: TermsRepr,
}

impl From<&CommonRoot> for CommonRootRepr {
    fn from(g: &CommonRoot) -> Self {
        Self {
            u_power: g.u_power,
            u_plus_one_power: g.u_plus_one_power,
            poly: (&g.polynomial()).into(),
        }
    }
}

/// Quotient identity plus the removed divisor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactoredRepr {
    pub quotient: PolyIdentityRepr,
    pub divisor: CommonRootRepr,
}
