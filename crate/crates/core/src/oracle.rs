//! Ext groups between pulled-back bundles on F(1,2,N) and on the (1,1)
//! hypersurface M, plus parameter sweeps for the vanishing lemmas.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::schur::{
    dualize, sym_cohomology, sym_cohomology_filtration, tensor, BundleDescriptor, Verdict,
};
use crate::weights::GradedDims;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    Flag,
    HyperplaneM,
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Flag => write!(f, "flag"),
            Space::HyperplaneM => write!(f, "M"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExtQuery {
    pub source: BundleDescriptor,
    pub target: BundleDescriptor,
    pub space: Space,
}

impl ExtQuery {
    pub fn new(source: BundleDescriptor, target: BundleDescriptor, space: Space) -> Result<Self> {
        if source.n != target.n {
            return domain(format!(
                "ambient mismatch: N={} vs N={}",
                source.n, target.n
            ));
        }
        Ok(Self {
            source,
            target,
            space,
        })
    }

    /// Same query with the source moved to twist (0,0).
    pub fn normalized(&self) -> Self {
        let (a, b) = (-self.source.x, -self.source.y);
        Self {
            source: self.source.twist(a, b),
            target: self.target.twist(a, b),
            space: self.space,
        }
    }

    pub fn eval(&self) -> Result<Verdict> {
        match self.space {
            Space::Flag => Ok(Verdict::Determinate(ext_on_flag(
                &self.source,
                &self.target,
            )?)),
            Space::HyperplaneM => Ok(ext_on_m(&self.source, &self.target)?.result),
        }
    }
}

impl fmt::Display for ExtQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ext_{}({}, {})", self.space, self.source, self.target)
    }
}

/// `Hom(source, target)` as a sum of `Sym^m U^vee (x,y)`.
pub fn hom_bundle(source: &BundleDescriptor, target: &BundleDescriptor) -> Vec<BundleDescriptor> {
    tensor(&dualize(source), target)
}

pub fn ext_on_flag(source: &BundleDescriptor, target: &BundleDescriptor) -> Result<GradedDims> {
    let mut g = GradedDims::zero();
    for piece in hom_bundle(source, target) {
        g.merge(&sym_cohomology(&piece)?);
    }
    Ok(g)
}

/// Flag Ext computed from line-bundle filtrations alone.
pub fn ext_on_flag_filtration(
    source: &BundleDescriptor,
    target: &BundleDescriptor,
) -> Result<Verdict> {
    let mut g = GradedDims::zero();
    for piece in hom_bundle(source, target) {
        match sym_cohomology_filtration(&piece)?.verdict {
            Verdict::Determinate(p) => g.merge(&p),
            Verdict::Indeterminate => return Ok(Verdict::Indeterminate),
        }
    }
    Ok(Verdict::Determinate(g))
}

/// Two-term Koszul computation `A -> B -> Ext_M` with
/// `A = Ext_Fl(E, F(-1,-1))`, `B = Ext_Fl(E, F)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulBreakdown {
    pub a: GradedDims,
    pub b: GradedDims,
    pub result: Verdict,
}

pub fn ext_on_m(source: &BundleDescriptor, target: &BundleDescriptor) -> Result<KoszulBreakdown> {
    let a = ext_on_flag(source, &target.twist(-1, -1))?;
    let b = ext_on_flag(source, target)?;
    let result = if a.is_zero() {
        Verdict::Determinate(b.clone())
    } else if b.is_zero() {
        Verdict::Determinate(a.shifted(1))
    } else if a.support().iter().any(|d| b.support().contains(d)) {
        // A^i -> B^i could be nonzero
        Verdict::Indeterminate
    } else {
        let mut g = b.clone();
        g.merge(&a.shifted(1));
        Verdict::Determinate(g)
    };
    Ok(KoszulBreakdown { a, b, result })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    A4,
    A5,
    A6,
}

impl std::str::FromStr for LemmaId {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A4" => Ok(LemmaId::A4),
            "A5" => Ok(LemmaId::A5),
            "A6" => Ok(LemmaId::A6),
            other => domain(format!("unknown lemma {other}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expected {
    Zero,
    PointInDegree(i64),
}

impl Expected {
    fn matches(&self, g: &GradedDims) -> bool {
        match self {
            Expected::Zero => g.is_zero(),
            Expected::PointInDegree(d) => g.is_point_in(*d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointStatus {
    Match,
    Mismatch,
    Indeterminate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaPoint {
    pub params: Vec<(String, i64)>,
    pub query: ExtQuery,
    pub expected: Expected,
    pub got: Verdict,
    pub status: PointStatus,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub n: usize,
    pub eps: usize,
    pub points: Vec<LemmaPoint>,
    pub matches: usize,
    pub mismatches: usize,
    pub indeterminates: usize,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0 && self.indeterminates == 0
    }
}

type GridPoint = (Vec<(String, i64)>, ExtQuery, Expected);

fn grid(lemma: LemmaId, n: usize, eps: usize) -> Result<Vec<GridPoint>> {
    let big_n = 2 * n + eps;
    let n_i = n as i64;
    let t_max = 2 * n_i - 3 + eps as i64;
    let mut out = Vec::new();
    match lemma {
        LemmaId::A4 | LemmaId::A5 => {
            for t in 1..=t_max {
                for r in 0..=(t - 1).min(n_i - 1) {
                    let src = BundleDescriptor::line(big_n, t, 0)?;
                    let (tgt, expected) = if lemma == LemmaId::A4 {
                        let e = if r == t - 1 {
                            Expected::PointInDegree(1)
                        } else {
                            Expected::Zero
                        };
                        (BundleDescriptor::new(big_n, r as u32, -1, 1)?, e)
                    } else {
                        (
                            BundleDescriptor::new(big_n, r as u32, 0, 0)?,
                            Expected::Zero,
                        )
                    };
                    let q = ExtQuery::new(src, tgt, Space::HyperplaneM)?;
                    out.push((vec![("t".into(), t), ("r".into(), r)], q, expected));
                }
            }
        }
        LemmaId::A6 => {
            for r in 0..=(n_i - 2) {
                for m in 0..=r {
                    let src = BundleDescriptor::new(big_n, m as u32, 0, 0)?;
                    let tgt = BundleDescriptor::new(big_n, r as u32, -1, 1)?;
                    let q = ExtQuery::new(src, tgt, Space::HyperplaneM)?;
                    out.push((vec![("m".into(), m), ("r".into(), r)], q, Expected::Zero));
                }
            }
        }
    }
    Ok(out)
}

/// Sweep a lemma's parameter grid and compare against its claimed values.
pub fn check_lemma(lemma: LemmaId, n: usize, eps: usize) -> Result<LemmaReport> {
    if n < 2 {
        return domain(format!("n must be at least 2, got {n}"));
    }
    if eps > 1 {
        return domain(format!("eps must be 0 or 1, got {eps}"));
    }
    let mut points = Vec::new();
    let (mut matches, mut mismatches, mut indeterminates) = (0, 0, 0);
    for (params, query, expected) in grid(lemma, n, eps)? {
        let got = query.eval()?;
        let status = match &got {
            Verdict::Indeterminate => {
                indeterminates += 1;
                PointStatus::Indeterminate
            }
            Verdict::Determinate(g) if expected.matches(g) => {
                matches += 1;
                PointStatus::Match
            }
            Verdict::Determinate(_) => {
                mismatches += 1;
                PointStatus::Mismatch
            }
        };
        points.push(LemmaPoint {
            params,
            query,
            expected,
            got,
            status,
        });
    }
    Ok(LemmaReport {
        lemma,
        n,
        eps,
        points,
        matches,
        mismatches,
        indeterminates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: usize, m: u32, x: i64, y: i64) -> BundleDescriptor {
        BundleDescriptor::new(n, m, x, y).unwrap()
    }

    #[test]
    fn hom_bundles() {
        let h = hom_bundle(&d(7, 0, 3, 0), &d(7, 2, -1, 1));
        assert_eq!(h, vec![d(7, 2, -4, 1)]);
        assert_eq!(
            hom_bundle(&d(7, 1, 0, 0), &d(7, 1, 0, 0)),
            vec![d(7, 2, 0, -1), d(7, 0, 0, 0)]
        );
        assert_eq!(
            hom_bundle(&d(7, 2, 0, 0), &d(7, 2, 0, 0)),
            vec![d(7, 4, 0, -2), d(7, 2, 0, -1), d(7, 0, 0, 0)]
        );
    }

    #[test]
    fn flag_exts() {
        assert_eq!(
            ext_on_flag(&d(5, 0, 0, 0), &d(5, 0, 0, 0)).unwrap(),
            GradedDims::single(0, 1u32)
        );
        assert_eq!(
            ext_on_flag(&d(9, 0, 3, 0), &d(9, 2, -1, 1)).unwrap(),
            GradedDims::single(1, 1u32)
        );
    }

    #[test]
    fn m_exts() {
        for t in 1..=5i64 {
            let k = ext_on_m(&d(8, 0, t, 0), &d(8, (t - 1) as u32, -1, 1)).unwrap();
            assert_eq!(
                k.result,
                Verdict::Determinate(GradedDims::single(1, 1u32)),
                "t={t}"
            );
        }
        let k = ext_on_m(&d(5, 0, 0, 0), &d(5, 0, 0, 0)).unwrap();
        assert_eq!(k.result, Verdict::Determinate(GradedDims::single(0, 1u32)));
    }

    #[test]
    fn small_sweeps() {
        for lemma in [LemmaId::A4, LemmaId::A5, LemmaId::A6] {
            let rep = check_lemma(lemma, 2, 1).unwrap();
            assert!(rep.passed(), "{lemma:?}");
        }
        let a6 = check_lemma(LemmaId::A6, 2, 0).unwrap();
        assert_eq!(a6.points.len(), 1);
        assert!(a6.passed());
    }
}
