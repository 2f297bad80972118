//! One JSON-lines record per classified graph.

use num_rational::BigRational;
use salem_core::classify::{salem_classify_with, SalemKind};
use salem_core::glg::recognize_glg;
use salem_core::graph6::{parse_graph6, write_graph6};
use salem_core::spectra::sturm::decimal;
use salem_core::spectra::{char_poly, RationalInterval};
use salem_core::Graph;
use serde::{Deserialize, Serialize};

use crate::error::Result;

const DIGITS: usize = 12;

/// Exact rational bounds plus a decimal rendering of the midpoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Enclosure {
    pub lo: String,
    pub hi: String,
    pub decimal: String,
}

impl From<&RationalInterval> for Enclosure {
    fn from(r: &RationalInterval) -> Self {
        Enclosure { lo: r.lo.to_string(), hi: r.hi.to_string(), decimal: decimal(&r.midpoint(), DIGITS) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub graph6: String,
    pub vertices: usize,
    pub kind: String,
    /// Characteristic polynomial, constant coefficient first.
    pub char_poly: String,
    pub lambda1: Option<Enclosure>,
    pub tau: Option<Enclosure>,
    pub m_salem_index: Option<usize>,
    pub glg: bool,
    pub provenance: String,
}

/// A graph is a generalized line graph when each component is one.
pub fn is_glg(g: &Graph) -> Result<bool> {
    for comp in g.components() {
        if recognize_glg(&g.induced(comp)?)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl ResultRecord {
    pub fn classify(g: &Graph, tol: &BigRational, provenance: impl Into<String>) -> Result<Self> {
        let c = salem_classify_with(g, tol, true)?;
        Ok(ResultRecord {
            graph6: write_graph6(g)?,
            vertices: g.n(),
            kind: c.kind.as_str().to_owned(),
            char_poly: char_poly(g).to_coefficient_list(),
            lambda1: c.lambda1.as_ref().map(Enclosure::from),
            tau: c.tau.as_ref().map(Enclosure::from),
            m_salem_index: c.m_index,
            glg: is_glg(g)?,
            provenance: provenance.into(),
        })
    }

    pub fn is_salem(&self) -> bool {
        self.kind == SalemKind::SalemTrivial.as_str() || self.kind == SalemKind::SalemNontrivial.as_str()
    }

    /// Re-derives every field from the graph6 string alone.
    pub fn reproduces(&self, tol: &BigRational) -> Result<bool> {
        let g = parse_graph6(&self.graph6)?;
        Ok(&ResultRecord::classify(&g, tol, self.provenance.clone())? == self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use salem_core::spectra::sturm::rat;

    #[test]
    fn k4_record() {
        let r = ResultRecord::classify(&Graph::complete(4).unwrap(), &rat(1, 1000), "test").unwrap();
        assert_eq!(r.kind, "salem-trivial");
        assert_eq!(r.m_salem_index, Some(1));
        assert!(r.glg);
        assert_eq!(r.char_poly, "-3 -8 -6 0 1");
        let l1 = r.lambda1.as_ref().unwrap();
        let lo = salem_core::spectra::sturm::parse_rational(&l1.lo).unwrap();
        let hi = salem_core::spectra::sturm::parse_rational(&l1.hi).unwrap();
        assert!(lo <= rat(3, 1) && rat(3, 1) <= hi);
        let back: ResultRecord = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert!(r.reproduces(&rat(1, 1000)).unwrap());
    }

    #[test]
    fn disconnected_glg_flag() {
        let g = Graph::complete(3).unwrap().disjoint_union(&Graph::star(5).unwrap()).unwrap();
        assert!(!is_glg(&g).unwrap());
        let h = Graph::complete(3).unwrap().disjoint_union(&Graph::path(4).unwrap()).unwrap();
        assert!(is_glg(&h).unwrap());
    }
}
