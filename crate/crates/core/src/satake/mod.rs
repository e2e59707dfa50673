//! Satake diagrams of inner forms and the transfer `M -> M'` for Levi
//! subgroups in the sandwich `prod SL_{n_i} <= M <= prod GL_{n_i}`.

pub mod catalog;
pub mod render;

use crate::levi::{envelope_blocks, FactorKind, LeviDescriptor, LeviReport};
use crate::rootdata::{cartan_matrix, BasedRootDatum, Series};
use serde::{Deserialize, Serialize};
use std::fmt;

pub use catalog::{appendix_catalog, check_catalog, CatalogCheck, CatalogEntry, CatalogReport};
pub use render::{parse_diagram, render, render_ascii, RenderStyle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SatakeError {
    #[error("d = {d} does not divide n = {n}")]
    Indivisible { n: usize, d: usize },
    #[error("the Levi subgroup is not a product of general linear groups up to the sandwich condition")]
    NotConditionOne,
    #[error("expected {expected} division degrees, got {got}")]
    DegreeCount { expected: usize, got: usize },
    #[error("black vertex {0} is outside the Dynkin diagram")]
    BadVertex(usize),
    #[error("removed root {0} is black; only white vertices can be removed")]
    RemovedBlack(usize),
    #[error("black pattern on block {block:?} is not periodic")]
    NotPeriodic { block: Vec<usize> },
    #[error("diagram parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

/// Dynkin diagram of the split form with the black vertices of the
/// anisotropic kernel. Only the Cartan matrix of the base is kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatakeDiagram {
    pub cartan: Vec<Vec<i64>>,
    /// Sorted vertex indices.
    pub black: Vec<usize>,
}

impl SatakeDiagram {
    pub fn new(cartan: Vec<Vec<i64>>, black: &[usize]) -> Result<Self, SatakeError> {
        let mut black = black.to_vec();
        black.sort_unstable();
        black.dedup();
        if let Some(&v) = black.iter().find(|&&v| v >= cartan.len()) {
            return Err(SatakeError::BadVertex(v));
        }
        Ok(SatakeDiagram { cartan, black })
    }

    pub fn of_datum(datum: &BasedRootDatum, black: &[usize]) -> Result<Self, SatakeError> {
        Self::new(datum.cartan(), black)
    }

    pub fn is_black(&self, v: usize) -> bool {
        self.black.binary_search(&v).is_ok()
    }
}

/// Diagram of `GL_m(D_d)` on `A_{n-1}`: white exactly at `d, 2d, ...`.
pub fn type_a_satake(n: usize, d: usize) -> Result<SatakeDiagram, SatakeError> {
    if n == 0 || d == 0 || n % d != 0 {
        return Err(SatakeError::Indivisible { n, d });
    }
    let cartan = if n >= 2 { cartan_matrix(Series::A, n - 1) } else { Vec::new() };
    let black: Vec<usize> = (0..n.saturating_sub(1)).filter(|k| (k + 1) % d != 0).collect();
    SatakeDiagram::new(cartan, &black)
}

/// Division degree of a black pattern along an `A_{n-1}` path, if periodic.
pub fn pattern_degree(black: &[bool]) -> Option<usize> {
    let n = black.len() + 1;
    let d = black.iter().take_while(|&&b| b).count() + 1;
    let periodic = n % d == 0 && black.iter().enumerate().all(|(k, &b)| b == ((k + 1) % d != 0));
    periodic.then_some(d)
}

/// Reads `d_i` off the diagram, one per envelope block (in envelope order).
pub fn degrees_from_diagram(desc: &LeviDescriptor, black: &[usize]) -> Result<Vec<usize>, SatakeError> {
    let l = desc.ambient.semisimple_rank();
    if let Some(&v) = black.iter().find(|&&v| v >= l) {
        return Err(SatakeError::BadVertex(v));
    }
    if let Some(v) = desc.removed().into_iter().find(|v| black.contains(v)) {
        return Err(SatakeError::RemovedBlack(v));
    }
    let blocks = envelope_blocks(desc);
    if blocks.iter().map(|b| b.len()).sum::<usize>() != desc.theta.len() {
        return Err(SatakeError::NotConditionOne);
    }
    blocks
        .into_iter()
        .map(|b| {
            let pattern: Vec<bool> = b.iter().map(|v| black.contains(v)).collect();
            pattern_degree(&pattern).ok_or(SatakeError::NotPeriodic { block: b })
        })
        .collect()
}

/// `GL_m(D_d)` factor of `M~'`, with the kind of the matching factor of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InnerFactor {
    pub m: usize,
    pub d: usize,
    pub kind: FactorKind,
}

impl InnerFactor {
    pub fn n(&self) -> usize {
        self.m * self.d
    }
}

impl fmt::Display for InnerFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = if self.kind == FactorKind::Sl { "SL" } else { "GL" };
        if self.d == 1 {
            write!(f, "{g}_{}(F)", self.m)
        } else {
            write!(f, "{g}_{}(D_{})", self.m, self.d)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InnerFormShape {
    pub factors: Vec<InnerFactor>,
    /// Central `GL_1(F)` factors of `M~'`.
    pub gl1: usize,
    pub field_note: String,
}

impl InnerFormShape {
    /// `M~'(F)`, e.g. "GL_1(F) × GL_1(D_2) × GL_3(F)".
    pub fn describe_envelope(&self) -> String {
        let mut parts = vec!["GL_1(F)".to_string(); self.gl1];
        parts.extend(self.factors.iter().map(|f| InnerFactor { kind: FactorKind::Gl, ..*f }.to_string()));
        parts.join(" × ")
    }

    /// `M'(F)` when every factor is `GL` or `SL`; sandwich factors are bracketed.
    pub fn describe(&self) -> String {
        let mut parts = vec!["GL_1(F)".to_string(); self.gl1];
        for f in &self.factors {
            parts.push(match f.kind {
                FactorKind::Sandwich => format!("[{}]", InnerFactor { kind: FactorKind::Gl, ..*f }),
                _ => f.to_string(),
            });
        }
        parts.join(" × ")
    }

    /// `(m_i, d_i)` without kinds, sorted.
    pub fn signature(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self.factors.iter().map(|f| (f.m, f.d)).collect();
        v.sort_unstable();
        v
    }
}

pub fn transfer_levi(report: &LeviReport, degrees: &[usize]) -> Result<InnerFormShape, SatakeError> {
    let env = report.gl_envelope.as_ref().ok_or(SatakeError::NotConditionOne)?;
    if degrees.len() != env.blocks.len() {
        return Err(SatakeError::DegreeCount {
            expected: env.blocks.len(),
            got: degrees.len(),
        });
    }
    let factors = env
        .blocks
        .iter()
        .zip(degrees)
        .map(|(b, &d)| {
            if d == 0 || b.size % d != 0 {
                return Err(SatakeError::Indivisible { n: b.size, d });
            }
            Ok(InnerFactor {
                m: b.size / d,
                d,
                kind: b.kind,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let field_note = match env.gl1 {
        0 => String::new(),
        1 => "one central GL_1(F)".to_string(),
        k => format!("{k} central GL_1(F) factors"),
    };
    Ok(InnerFormShape {
        factors,
        gl1: env.gl1,
        field_note,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levi::analyze_levi;
    use crate::rootdata::build_catalog_group;

    #[test]
    fn type_a_patterns() {
        assert!(type_a_satake(4, 1).unwrap().black.is_empty());
        assert_eq!(type_a_satake(4, 2).unwrap().black, vec![0, 2]);
        assert_eq!(type_a_satake(6, 3).unwrap().black, vec![0, 1, 3, 4]);
        assert_eq!(type_a_satake(4, 4).unwrap().black, vec![0, 1, 2]);
        assert!(matches!(type_a_satake(6, 4), Err(SatakeError::Indivisible { .. })));
    }

    #[test]
    fn pattern_degrees() {
        assert_eq!(pattern_degree(&[]), Some(1));
        assert_eq!(pattern_degree(&[true]), Some(2));
        assert_eq!(pattern_degree(&[true, false, true]), Some(2));
        assert_eq!(pattern_degree(&[true, true, false, true, true]), Some(3));
        assert_eq!(pattern_degree(&[true, false, false]), None);
        assert_eq!(pattern_degree(&[true, true]), Some(3));
        assert_eq!(pattern_degree(&[false, true]), None);
    }

    fn shape(tag: &str, p: &[i64], removed: &[usize], degrees: &[usize]) -> Result<InnerFormShape, SatakeError> {
        let desc = LeviDescriptor::removing(build_catalog_group(tag, p).unwrap(), removed).unwrap();
        transfer_levi(&analyze_levi(&desc), degrees)
    }

    #[test]
    fn siegel_levi_transfers() {
        let s = shape("Sp", &[8], &[3], &[2]).unwrap();
        assert_eq!(s.describe_envelope(), "GL_2(D_2)");
        let s = shape("E7sc", &[], &[3], &[2, 1, 2]).unwrap();
        assert_eq!(s.describe_envelope(), "GL_1(D_2) × GL_3(F) × GL_2(D_2)");
        let s = shape("GSpin", &[11], &[3], &[2, 1]).unwrap();
        assert_eq!(s.describe(), "GL_1(D_2) × GL_4(F)");
        assert!(matches!(shape("Sp", &[8], &[3], &[3]), Err(SatakeError::Indivisible { n: 4, d: 3 })));
        assert!(matches!(shape("Sp", &[8], &[3], &[1, 1]), Err(SatakeError::DegreeCount { .. })));
        assert!(matches!(shape("F4", &[], &[0], &[1]), Err(SatakeError::NotConditionOne)));
    }

    #[test]
    fn sl_factor_is_named() {
        let s = shape("Sp", &[10], &[3], &[2, 2]).unwrap();
        assert_eq!(s.describe(), "SL_1(D_2) × GL_2(D_2)");
    }

    #[test]
    fn degrees_read_from_black_vertices() {
        let e7 = build_catalog_group("E7sc", &[]).unwrap();
        let desc = LeviDescriptor::removing(e7, &[3]).unwrap();
        assert_eq!(degrees_from_diagram(&desc, &[1, 4, 6]).unwrap(), vec![2, 1, 2]);
        assert!(matches!(degrees_from_diagram(&desc, &[3]), Err(SatakeError::RemovedBlack(3))));
        assert!(matches!(degrees_from_diagram(&desc, &[4]), Err(SatakeError::NotPeriodic { .. })));
    }
}
