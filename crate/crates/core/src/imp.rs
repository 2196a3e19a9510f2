//! Degree-bounded ideal membership with explicit certificates.
//!
//! A proof records the division of `f` by a basis: one cofactor per basis
//! element and the remainder, so that `f = Σ h_i·g_i + r`. The certificate
//! format embeds the basis polynomials themselves, which makes it checkable
//! without recomputing anything.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::buchberger::GroebnerBasis;
use crate::poly::{divide, parse_polynomial, MonomialOrder, OrderKind, PolyError, Polynomial};

pub const CERTIFICATE_FORMAT: &str = "combideal-membership-v1";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ImpError {
    #[error("query has degree {degree} but the bound is {bound}")]
    Degree { degree: u32, bound: u32 },
    #[error("basis is truncated at degree {truncation}, below the bound {bound}")]
    Truncation { truncation: u32, bound: u32 },
    #[error("a degree-truncated basis needs a graded order, got {0}")]
    Order(MonomialOrder),
    #[error("proof refers to basis element {0}, which does not exist")]
    Dangling(usize),
    #[error("malformed certificate: {0}")]
    Certificate(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `f = Σ cofactors[k]·basis[basis_ids[k]] + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipProof {
    pub basis_ids: Vec<usize>,
    pub cofactors: Vec<Polynomial>,
    pub remainder: Polynomial,
    pub order: MonomialOrder,
}

impl MembershipProof {
    pub fn is_member(&self) -> bool {
        self.remainder.is_zero()
    }
}

/// Divides `f` by `basis` and reports membership with the division as proof.
pub fn query(f: &Polynomial, basis: &GroebnerBasis, d: u32) -> Result<(bool, MembershipProof), ImpError> {
    let degree = f.degree();
    if degree > d {
        return Err(ImpError::Degree { degree, bound: d });
    }
    if let Some(t) = basis.truncation() {
        if !basis.order().is_graded() {
            return Err(ImpError::Order(basis.order().clone()));
        }
        if t < d {
            return Err(ImpError::Truncation { truncation: t, bound: d });
        }
    }
    let div = divide(f, basis.elements(), basis.order())?;
    let proof = MembershipProof {
        basis_ids: (0..basis.len()).collect(),
        cofactors: div.quotients,
        remainder: div.remainder,
        order: basis.order().clone(),
    };
    Ok((proof.is_member(), proof))
}

/// Checks the identity `f = Σ h_i·g_i + r`, that no product `h_i·g_i` leads
/// above `f`, and that no term of `r` is divisible by a leading monomial of
/// the basis.
pub fn verify(f: &Polynomial, proof: &MembershipProof, basis: &GroebnerBasis) -> Result<bool, ImpError> {
    if proof.basis_ids.len() != proof.cofactors.len() {
        return Err(ImpError::Certificate("cofactor count differs from basis reference count".into()));
    }
    let ord = &proof.order;
    let mut sum = proof.remainder.clone();
    for (&id, h) in proof.basis_ids.iter().zip(&proof.cofactors) {
        let g = basis.elements().get(id).ok_or(ImpError::Dangling(id))?;
        if h.is_zero() {
            continue;
        }
        let product = h * g;
        let bounded = match (product.leading_monomial(ord), f.leading_monomial(ord)) {
            (Some(p), Some(lf)) => ord.compare(p, lf)? != std::cmp::Ordering::Greater,
            (Some(_), None) => false,
            (None, _) => true,
        };
        if !bounded {
            return Ok(false);
        }
        sum = &sum + &product;
    }
    if sum != *f {
        return Ok(false);
    }
    let leads: Vec<_> = basis.elements().iter().filter_map(|g| g.leading_monomial(ord)).collect();
    let irreducible = proof
        .remainder
        .terms()
        .all(|(m, _)| !leads.iter().any(|lm| lm.divides(m)));
    Ok(irreducible)
}

#[derive(Serialize, Deserialize)]
struct CertificateTerm {
    basis: String,
    cofactor: String,
}

#[derive(Serialize, Deserialize)]
struct CertificateDoc {
    format: String,
    nvars: usize,
    order: OrderKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    priority: Option<Vec<usize>>,
    query: String,
    member: bool,
    terms: Vec<CertificateTerm>,
    remainder: String,
}

/// A self-contained membership certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub query: Polynomial,
    pub basis: GroebnerBasis,
    pub proof: MembershipProof,
}

impl Certificate {
    /// Packages a proof against `basis`; the referenced elements are copied in.
    pub fn new(query: &Polynomial, proof: &MembershipProof, basis: &GroebnerBasis) -> Result<Self, ImpError> {
        let elements = proof
            .basis_ids
            .iter()
            .map(|&id| basis.elements().get(id).cloned().ok_or(ImpError::Dangling(id)))
            .collect::<Result<Vec<_>, _>>()?;
        let cert = Certificate {
            query: query.clone(),
            basis: rebuild(elements.clone(), basis.order().clone(), basis.is_reduced())?,
            proof: proof.clone(),
        };
        Ok(cert.reindexed(&elements))
    }

    /// Maps the proof ids onto the positions the elements took in `self.basis`.
    fn reindexed(mut self, elements: &[Polynomial]) -> Self {
        self.proof.basis_ids = elements
            .iter()
            .map(|g| self.basis.elements().iter().position(|h| h == g).expect("element kept"))
            .collect();
        self
    }

    pub fn verify(&self) -> Result<bool, ImpError> {
        verify(&self.query, &self.proof, &self.basis)
    }

    pub fn to_json(&self) -> String {
        let order = &self.proof.order;
        let doc = CertificateDoc {
            format: CERTIFICATE_FORMAT.to_string(),
            nvars: self.query.nvars(),
            order: order.kind(),
            priority: order.priority().map(<[usize]>::to_vec),
            query: self.query.to_string(),
            member: self.proof.is_member(),
            terms: self
                .proof
                .basis_ids
                .iter()
                .zip(&self.proof.cofactors)
                .map(|(&id, h)| CertificateTerm {
                    basis: self.basis.elements()[id].to_string(),
                    cofactor: h.to_string(),
                })
                .collect(),
            remainder: self.proof.remainder.to_string(),
        };
        let mut out = serde_json::to_string_pretty(&doc).expect("certificate serialises");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Self, ImpError> {
        let doc: CertificateDoc = serde_json::from_str(text).map_err(|e| ImpError::Certificate(e.to_string()))?;
        if doc.format != CERTIFICATE_FORMAT {
            return Err(ImpError::Certificate(format!("unknown format '{}'", doc.format)));
        }
        let n = doc.nvars;
        let poly = |field: &str, s: &str| {
            parse_polynomial(s, Some(n)).map_err(|e| ImpError::Certificate(format!("{field}: {e}")))
        };
        let order = match doc.priority {
            Some(p) => MonomialOrder::with_priority(doc.order, p)?,
            None => MonomialOrder::new(doc.order),
        };
        let query = poly("query", &doc.query)?;
        let mut elements = Vec::new();
        let mut cofactors = Vec::new();
        for (k, t) in doc.terms.iter().enumerate() {
            elements.push(poly(&format!("terms[{k}].basis"), &t.basis)?);
            cofactors.push(poly(&format!("terms[{k}].cofactor"), &t.cofactor)?);
        }
        let remainder = poly("remainder", &doc.remainder)?;
        if doc.member != remainder.is_zero() {
            return Err(ImpError::Certificate("member flag contradicts the remainder".into()));
        }
        let cert = Certificate {
            query,
            basis: rebuild(elements.clone(), order.clone(), false)?,
            proof: MembershipProof {
                basis_ids: Vec::new(),
                cofactors,
                remainder,
                order,
            },
        };
        Ok(cert.reindexed(&elements))
    }
}

fn rebuild(elements: Vec<Polynomial>, order: MonomialOrder, reduced: bool) -> Result<GroebnerBasis, ImpError> {
    if let Some(k) = elements.iter().position(Polynomial::is_zero) {
        return Err(ImpError::Certificate(format!("basis element {k} is zero")));
    }
    let mut seen = Vec::new();
    for g in &elements {
        if seen.contains(&g) {
            return Err(ImpError::Certificate(format!("basis element {g} repeats")));
        }
        seen.push(g);
    }
    Ok(GroebnerBasis::new(elements, order, reduced))
}
