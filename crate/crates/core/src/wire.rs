//! JSON wire formats. Polynomials travel as strings in the expression
//! grammar; indices in words are 1-based.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coeff::Base;
use crate::elem::{ElemGen, ElemWord};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::pseudo::PseudoCert;
use crate::ring::{RingElem, RingSpec};
use crate::symplectic::{SpGen, SpWord};
use crate::univ::UnivPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TruncJson {
    pub vars: Vec<String>,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecJson {
    pub base: String,
    pub vars: Vec<String>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncate: Option<TruncJson>,
}

impl SpecJson {
    pub fn build(&self) -> Result<Arc<RingSpec>> {
        let base = Base::parse(&self.base)?;
        let mut b = RingSpec::builder(base, &self.vars);
        for r in &self.relations {
            b = b.relation(r.clone());
        }
        if let Some(t) = &self.truncate {
            b = b.truncate(&t.vars, t.order);
        }
        b.build()
    }

    pub fn from_spec(spec: &RingSpec) -> SpecJson {
        SpecJson {
            base: spec.base().to_string(),
            vars: spec.vars().to_vec(),
            relations: spec.rule_strings(),
            truncate: spec.truncation().map(|t| TruncJson {
                vars: t.vars.iter().map(|&i| spec.vars()[i].clone()).collect(),
                order: t.order,
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatJson {
    pub r: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatJson {
    pub fn from_mat<E: crate::scalar::Scalar>(m: &Mat<E>) -> MatJson {
        MatJson {
            r: m.size(),
            entries: m.rows().iter().map(|row| row.iter().map(|e| e.to_string()).collect()).collect(),
        }
    }

    pub fn to_mat(&self, spec: &Arc<RingSpec>) -> Result<Mat<RingElem>> {
        if self.entries.len() != self.r || self.entries.iter().any(|row| row.len() != self.r) {
            return Err(Error::SizeMismatch(format!("matrix JSON is not {0}x{0}", self.r)));
        }
        let rows: Vec<Vec<&str>> = self.entries.iter().map(|row| row.iter().map(String::as_str).collect()).collect();
        Mat::parse(spec, &rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenJson {
    pub i: usize,
    pub j: usize,
    pub z: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordJson {
    pub r: usize,
    pub gens: Vec<GenJson>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub sp: bool,
}

impl WordJson {
    pub fn from_word<E: crate::scalar::Scalar>(w: &ElemWord<E>) -> WordJson {
        WordJson {
            r: w.r,
            gens: w.gens.iter().map(|g| GenJson { i: g.i, j: g.j, z: g.z.to_string() }).collect(),
            sp: false,
        }
    }

    pub fn from_sp_word<E: crate::scalar::Scalar>(w: &SpWord<E>) -> WordJson {
        WordJson {
            r: w.r,
            gens: w.gens.iter().map(|g| GenJson { i: g.i, j: g.j, z: g.z.to_string() }).collect(),
            sp: true,
        }
    }

    pub fn to_word(&self, spec: &Arc<RingSpec>) -> Result<ElemWord<RingElem>> {
        if self.sp {
            return Err(Error::Input("expected an elementary word, got a symplectic one".into()));
        }
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            gens.push(ElemGen::new(g.i, g.j, RingElem::parse(spec, &g.z)?));
        }
        ElemWord::new(self.r, gens)
    }

    pub fn to_sp_word(&self, spec: &Arc<RingSpec>) -> Result<SpWord<RingElem>> {
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            gens.push(SpGen::new(g.i, g.j, RingElem::parse(spec, &g.z)?));
        }
        SpWord::new(self.r, gens)
    }
}

/// Ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnivJson {
    pub t: String,
    pub coeffs: Vec<String>,
}

impl UnivJson {
    pub fn from_poly(p: &UnivPoly) -> UnivJson {
        UnivJson {
            t: p.var().to_string(),
            coeffs: p.coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_poly(&self, spec: &Arc<RingSpec>) -> Result<UnivPoly> {
        let coeffs = self.coeffs.iter().map(|c| RingElem::parse(spec, c)).collect::<Result<Vec<_>>>()?;
        Ok(UnivPoly::new(spec, &self.t, coeffs))
    }
}

/// A pseudoelementary certificate: `sigma_prime` over `Z[vars]` and an
/// assignment of each variable into the target ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertJson {
    pub vars: Vec<String>,
    pub sigma_prime: Vec<Vec<String>>,
    pub assign: BTreeMap<String, String>,
}

impl CertJson {
    pub fn from_cert<E: crate::scalar::Scalar>(c: &PseudoCert<E>) -> CertJson {
        CertJson {
            vars: c.vars().to_vec(),
            sigma_prime: MatJson::from_mat(c.sigma_prime()).entries,
            assign: c.vars().iter().cloned().zip(c.assignment().iter().map(|e| e.to_string())).collect(),
        }
    }

    pub fn to_cert(&self, target: &Arc<RingSpec>) -> Result<PseudoCert<RingElem>> {
        let integral = crate::pseudo::integral_spec(&self.vars);
        let sp = MatJson { r: self.sigma_prime.len(), entries: self.sigma_prime.clone() }.to_mat(&integral)?;
        for k in self.assign.keys() {
            if !self.vars.contains(k) {
                return Err(Error::UnknownVariable(k.clone()));
            }
        }
        let mut assign = Vec::with_capacity(self.vars.len());
        for v in &self.vars {
            let src = self
                .assign
                .get(v)
                .ok_or_else(|| Error::CertInvalid(format!("variable `{v}` has no assignment")))?;
            assign.push(RingElem::parse(target, src)?);
        }
        PseudoCert::new(self.vars.clone(), sp, assign, RingElem::one(target))
    }
}

/// A Milnor square `P/(IJ)` with legs `P/I`, `P/J` over `P/(I+J)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareJson {
    pub ambient: SpecJson,
    pub i: Vec<String>,
    pub j: Vec<String>,
}

impl SquareJson {
    pub fn build(&self) -> Result<crate::patch::MilnorSquare> {
        let ambient = self.ambient.build()?;
        let i: Vec<&str> = self.i.iter().map(String::as_str).collect();
        let j: Vec<&str> = self.j.iter().map(String::as_str).collect();
        crate::patch::MilnorSquare::from_ideals(&ambient, &i, &j)
    }
}

pub fn elem_strings(v: &[RingElem]) -> Vec<String> {
    v.iter().map(|e| e.to_string()).collect()
}
