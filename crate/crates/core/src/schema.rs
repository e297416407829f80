//! JSON documents for certificates, torsionless witnesses and command
//! reports. Rings are stored in their text form; polynomials as term lists
//! `[{"c": "3/2", "e": [2, 0]}, ...]`.

use serde::{Deserialize, Serialize};

use crate::algebra::{FreeVec, Monomial, Polynomial, RingDescriptor};
use crate::certificate::{IntegralityCertificate, ProductTerm};
use crate::error::{Error, Result};
use crate::parse::parse_ring;
use crate::torsionless::{verify_witness, InverseSystem, IsoPackage, TorsionlessWitness};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub c: String,
    pub e: Vec<u32>,
}

pub type PolyDoc = Vec<TermDoc>;
pub type VecDoc = Vec<PolyDoc>;

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

pub fn poly_doc(p: &Polynomial) -> PolyDoc {
    p.terms()
        .map(|(m, c)| TermDoc {
            c: c.to_string(),
            e: m.0.clone(),
        })
        .collect()
}

pub fn poly_from_doc(doc: &PolyDoc, ring: &RingDescriptor) -> Result<Polynomial> {
    let f = ring.field();
    let mut p = ring.zero();
    for t in doc {
        if t.e.len() != ring.nvars() {
            return Err(doc_err(format!("exponent vector {:?} for {} variables", t.e, ring.nvars())));
        }
        let c = f.parse_scalar(&t.c).map_err(|e| doc_err(e.to_string()))?;
        p.add_term(Monomial(t.e.clone()), &c);
    }
    Ok(p)
}

pub fn vec_doc(v: &FreeVec) -> VecDoc {
    v.coords().iter().map(poly_doc).collect()
}

pub fn vec_from_doc(doc: &VecDoc, ring: &RingDescriptor) -> Result<FreeVec> {
    if doc.is_empty() {
        return Err(doc_err("vector with no coordinates"));
    }
    Ok(FreeVec::new(doc.iter().map(|p| poly_from_doc(p, ring)).collect::<Result<_>>()?))
}

fn ring_from_text(text: &str) -> Result<RingDescriptor> {
    parse_ring(text).map_err(|e| doc_err(format!("ring `{text}`: {e}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductTermDoc {
    pub coefficient: PolyDoc,
    pub factors: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub ring: String,
    pub rank: usize,
    pub element: VecDoc,
    pub generators: Vec<VecDoc>,
    pub degree: usize,
    pub coefficients: Vec<Vec<ProductTermDoc>>,
    /// Human-readable form; ignored when reading.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<String>,
}

impl CertificateDoc {
    pub fn from_certificate(c: &IntegralityCertificate) -> Self {
        CertificateDoc {
            ring: c.ring.to_string(),
            rank: c.rank,
            element: vec_doc(&c.element),
            generators: c.generators.iter().map(vec_doc).collect(),
            degree: c.degree,
            coefficients: c
                .coefficients
                .iter()
                .map(|terms| {
                    terms
                        .iter()
                        .map(|t| ProductTermDoc {
                            coefficient: poly_doc(&t.coefficient),
                            factors: t.factors.clone(),
                        })
                        .collect()
                })
                .collect(),
            equation: Some(c.equation()),
        }
    }

    pub fn to_certificate(&self) -> Result<IntegralityCertificate> {
        let ring = ring_from_text(&self.ring)?;
        let coefficients = self
            .coefficients
            .iter()
            .map(|terms| {
                terms
                    .iter()
                    .map(|t| {
                        Ok(ProductTerm {
                            coefficient: poly_from_doc(&t.coefficient, &ring)?,
                            factors: t.factors.clone(),
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntegralityCertificate {
            rank: self.rank,
            element: vec_from_doc(&self.element, &ring)?,
            generators: self.generators.iter().map(|g| vec_from_doc(g, &ring)).collect::<Result<_>>()?,
            degree: self.degree,
            coefficients,
            ring,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InverseSystemDoc {
    pub ideal: Vec<Vec<u32>>,
    pub basis: Vec<Vec<u32>>,
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDoc {
    pub element: PolyDoc,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoDoc {
    pub image: VecDoc,
    pub forward: Vec<CheckDoc>,
    pub backward: Vec<CheckDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub ring: String,
    pub ideal: Vec<PolyDoc>,
    pub inverse_system: InverseSystemDoc,
    pub level: usize,
    pub index: usize,
    pub free_rank: usize,
    pub l_gens: Vec<VecDoc>,
    pub t_gens: Vec<VecDoc>,
    pub iso: IsoDoc,
    pub certificates: Vec<CertificateDoc>,
    pub lengths: [usize; 2],
}

fn exps(ms: &[Monomial]) -> Vec<Vec<u32>> {
    ms.iter().map(|m| m.0.clone()).collect()
}

fn monos(es: &[Vec<u32>]) -> Vec<Monomial> {
    es.iter().map(|e| Monomial(e.clone())).collect()
}

impl WitnessDoc {
    pub fn from_witness(w: &TorsionlessWitness) -> Self {
        let checks = |v: &[(Polynomial, bool)]| {
            v.iter()
                .map(|(p, ok)| CheckDoc {
                    element: poly_doc(p),
                    holds: *ok,
                })
                .collect()
        };
        WitnessDoc {
            ring: w.ring.to_string(),
            ideal: w.ideal.iter().map(poly_doc).collect(),
            inverse_system: InverseSystemDoc {
                ideal: exps(&w.inverse_system.ideal),
                basis: exps(&w.inverse_system.basis),
                generators: exps(&w.inverse_system.generators),
            },
            level: w.level,
            index: w.index,
            free_rank: w.free_rank,
            l_gens: w.l_gens.iter().map(vec_doc).collect(),
            t_gens: w.t_gens.iter().map(vec_doc).collect(),
            iso: IsoDoc {
                image: vec_doc(&w.iso.image),
                forward: checks(&w.iso.forward),
                backward: checks(&w.iso.backward),
            },
            certificates: w.certificates.iter().map(CertificateDoc::from_certificate).collect(),
            lengths: [w.lengths.0, w.lengths.1],
        }
    }

    pub fn to_witness(&self) -> Result<TorsionlessWitness> {
        let ring = ring_from_text(&self.ring)?;
        let vecs = |v: &[VecDoc]| v.iter().map(|d| vec_from_doc(d, &ring)).collect::<Result<Vec<_>>>();
        let checks = |v: &[CheckDoc]| {
            v.iter()
                .map(|c| Ok((poly_from_doc(&c.element, &ring)?, c.holds)))
                .collect::<Result<Vec<_>>>()
        };
        Ok(TorsionlessWitness {
            ideal: self.ideal.iter().map(|p| poly_from_doc(p, &ring)).collect::<Result<_>>()?,
            inverse_system: InverseSystem {
                ideal: monos(&self.inverse_system.ideal),
                basis: monos(&self.inverse_system.basis),
                generators: monos(&self.inverse_system.generators),
            },
            level: self.level,
            index: self.index,
            free_rank: self.free_rank,
            l_gens: vecs(&self.l_gens)?,
            t_gens: vecs(&self.t_gens)?,
            iso: IsoPackage {
                image: vec_from_doc(&self.iso.image, &ring)?,
                forward: checks(&self.iso.forward)?,
                backward: checks(&self.iso.backward)?,
            },
            certificates: self.certificates.iter().map(CertificateDoc::to_certificate).collect::<Result<_>>()?,
            lengths: (self.lengths[0], self.lengths[1]),
            ring,
        })
    }
}

/// One conclusion of a command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictDoc {
    /// What the verdict is about, e.g. the element `x*y`.
    pub subject: String,
    /// The question asked, e.g. `ideal-closure` or `lic`.
    pub property: String,
    /// `member`, `non-member`, `inconclusive`, `holds`, `fails` or `computed`.
    pub status: String,
    /// `exact-oracle`, `certificate`, `valuation-check` or `inconclusive`.
    pub provenance: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    /// Index into the report's certificate list.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandEcho {
    pub name: String,
    pub args: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema_version: u32,
    pub command: CommandEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    pub verdicts: Vec<VerdictDoc>,
    pub certificates: Vec<CertificateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
}

/// Anything `verify` accepts.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum VerifiableDoc {
    Report(Box<Report>),
    Witness(Box<WitnessDoc>),
    Certificate(Box<CertificateDoc>),
}

/// Counts of what a document held, after everything re-verified.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub certificates: usize,
    pub witnesses: usize,
}

fn verify_witness_doc(doc: &WitnessDoc) -> Result<usize> {
    let w = doc.to_witness()?;
    verify_witness(&w)?;
    Ok(w.certificates.len())
}

/// Parses a JSON document and re-verifies every certificate and witness in
/// it.
pub fn verify_document(text: &str) -> Result<VerifySummary> {
    let doc: VerifiableDoc =
        serde_json::from_str(text).map_err(|e| doc_err(format!("not a report, witness or certificate: {e}")))?;
    let mut summary = VerifySummary::default();
    match doc {
        VerifiableDoc::Report(r) => {
            if r.schema_version != SCHEMA_VERSION {
                return Err(doc_err(format!("schema version {} (expected {SCHEMA_VERSION})", r.schema_version)));
            }
            for c in &r.certificates {
                c.to_certificate()?.verify()?;
                summary.certificates += 1;
            }
            if let Some(w) = &r.witness {
                summary.certificates += verify_witness_doc(w)?;
                summary.witnesses += 1;
            }
        }
        VerifiableDoc::Witness(w) => {
            summary.certificates += verify_witness_doc(&w)?;
            summary.witnesses += 1;
        }
        VerifiableDoc::Certificate(c) => {
            c.to_certificate()?.verify()?;
            summary.certificates += 1;
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::search::{certify_ideal_member, SearchOptions};

    fn cert() -> IntegralityCertificate {
        let r = RingDescriptor::poly(Field::Rational, &["x", "y"]).unwrap();
        certify_ideal_member(&r.monomial(&[1, 1]), &[r.monomial(&[2, 0]), r.monomial(&[0, 2])], &r, SearchOptions::default())
            .unwrap()
            .unwrap()
    }

    #[test]
    fn certificate_round_trip() {
        let c = cert();
        let doc = CertificateDoc::from_certificate(&c);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(verify_document(&text).unwrap().certificates, 1);
        let back: CertificateDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_certificate().unwrap(), c);
    }

    #[test]
    fn tampered_document_fails() {
        let mut doc = CertificateDoc::from_certificate(&cert());
        doc.coefficients[1][0].coefficient[0].c = "5".into();
        let text = serde_json::to_string(&doc).unwrap();
        assert!(matches!(verify_document(&text), Err(Error::Verification(_))));
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(verify_document("{}"), Err(Error::Document(_))));
        let mut doc = CertificateDoc::from_certificate(&cert());
        doc.element[0][0].e = vec![1];
        let text = serde_json::to_string(&doc).unwrap();
        assert!(matches!(verify_document(&text), Err(Error::Document(_))));
    }

    #[test]
    fn witness_round_trip() {
        let r = RingDescriptor::poly(Field::Rational, &["x", "y"]).unwrap();
        let w = crate::torsionless::represent_torsionless(&[r.var(0), r.var(1)], &r).unwrap();
        let doc = WitnessDoc::from_witness(&w);
        assert_eq!(doc.to_witness().unwrap(), w);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(verify_document(&text).unwrap().witnesses, 1);
    }
}
