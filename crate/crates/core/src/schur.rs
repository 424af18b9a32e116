//! Symmetric powers of the dual tautological rank-2 bundle on F(1,2,N):
//! filtrations, the Sym resolution step, rank-2 Clebsch-Gordan and exact
//! cohomology through the P^1-bundle F(1,2,N) -> G(2,N).

use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::weights::{
    euler_of, line_bundle_cohomology, weight_cohomology, CohomResult, GradedDims, Weight,
};

/// `Sym^m U_2^vee (x h1 + y h2)` on F(1,2,N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BundleDescriptor {
    pub m: u32,
    pub x: i64,
    pub y: i64,
    pub n: usize,
}

impl BundleDescriptor {
    pub fn new(n: usize, m: u32, x: i64, y: i64) -> Result<Self> {
        if n < 3 {
            return domain(format!("N must be at least 3, got {n}"));
        }
        Ok(Self { m, x, y, n })
    }

    pub fn line(n: usize, x: i64, y: i64) -> Result<Self> {
        Self::new(n, 0, x, y)
    }

    pub fn twist(self, a: i64, b: i64) -> Self {
        Self {
            x: self.x + a,
            y: self.y + b,
            ..self
        }
    }

    pub fn rank(&self) -> u64 {
        self.m as u64 + 1
    }
}

impl fmt::Display for BundleDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.m {
            0 => write!(f, "O({},{})", self.x, self.y),
            1 => write!(f, "U({},{})", self.x, self.y),
            m => write!(f, "S{m}U({},{})", self.x, self.y),
        }
    }
}

/// Line-bundle graded pieces, sub-most first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Filtration(pub Vec<(i64, i64)>);

impl Filtration {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn sym_filtration(d: &BundleDescriptor) -> Filtration {
    let m = d.m as i64;
    Filtration((0..=m).rev().map(|j| (d.x + m - 2 * j, d.y + j)).collect())
}

/// `0 -> Sym^{k-1}(-1,1) -> Sym^k -> O(k,0) -> 0`, returned as `[sub, mid, quot]`.
pub fn sym_resolution_step(n: usize, k: u32) -> Result<[BundleDescriptor; 3]> {
    if k == 0 {
        return domain("resolution step needs k >= 1");
    }
    Ok([
        BundleDescriptor::new(n, k - 1, -1, 1)?,
        BundleDescriptor::new(n, k, 0, 0)?,
        BundleDescriptor::new(n, 0, k as i64, 0)?,
    ])
}

/// `Sym^a (x) Sym^b = sum_j Sym^{a+b-2j} (x) det^j` in rank 2.
pub fn clebsch_gordan_rank2(a: u32, b: u32) -> Vec<(u32, u32)> {
    (0..=a.min(b)).map(|j| (a + b - 2 * j, j)).collect()
}

pub fn dualize(d: &BundleDescriptor) -> BundleDescriptor {
    BundleDescriptor {
        m: d.m,
        x: -d.x,
        y: -d.y - d.m as i64,
        n: d.n,
    }
}

/// Tensor product expanded into irreducible summands.
pub fn tensor(a: &BundleDescriptor, b: &BundleDescriptor) -> Vec<BundleDescriptor> {
    clebsch_gordan_rank2(a.m, b.m)
        .into_iter()
        .map(|(s, j)| BundleDescriptor {
            m: s,
            x: a.x + b.x,
            y: a.y + b.y + j as i64,
            n: a.n,
        })
        .collect()
}

/// Derived pushforward along F(1,2,N) -> G(2,N): summands `Sym^a U^vee (b)`
/// placed in a single cohomological degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pushforward {
    pub degree: i64,
    pub pieces: Vec<(u32, i64)>,
}

pub fn pushforward(d: &BundleDescriptor) -> Pushforward {
    let rel: Option<(u32, i64, i64)> = match d.x {
        x if x >= 0 => Some((x as u32, 0, 0)),
        -1 => None,
        x => Some(((-x - 2) as u32, x + 1, 1)),
    };
    match rel {
        None => Pushforward {
            degree: 0,
            pieces: vec![],
        },
        Some((k, extra, degree)) => Pushforward {
            degree,
            pieces: clebsch_gordan_rank2(d.m, k)
                .into_iter()
                .map(|(s, j)| (s, d.y + extra + j as i64))
                .collect(),
        },
    }
}

/// One irreducible summand on G(2,N) with its cohomology.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrassmannPiece {
    pub sym: u32,
    pub twist: i64,
    pub degree_shift: i64,
    pub result: CohomResult,
}

/// Exact cohomology of `Sym^m U^vee (x,y)` with its Grassmannian breakdown.
pub fn sym_cohomology_exact(d: &BundleDescriptor) -> Result<(GradedDims, Vec<GrassmannPiece>)> {
    let push = pushforward(d);
    let mut total = GradedDims::zero();
    let mut pieces = Vec::with_capacity(push.pieces.len());
    for (a, b) in push.pieces {
        let (res, _) = weight_cohomology(&Weight::from_pair(d.n, a as i64, b)?)?;
        if let CohomResult::NonZero { degree, dim, .. } = &res {
            total.add(*degree as i64 + push.degree, dim.clone());
        }
        pieces.push(GrassmannPiece {
            sym: a,
            twist: b,
            degree_shift: push.degree,
            result: res,
        });
    }
    Ok((total, pieces))
}

/// Exact graded cohomology `H^*(F(1,2,N), Sym^m U^vee (x,y))`.
pub fn sym_cohomology(d: &BundleDescriptor) -> Result<GradedDims> {
    Ok(sym_cohomology_exact(d)?.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    Determinate(GradedDims),
    Indeterminate,
}

impl Verdict {
    pub fn determinate(&self) -> Option<&GradedDims> {
        match self {
            Verdict::Determinate(g) => Some(g),
            Verdict::Indeterminate => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Verdict::Determinate(g) if g.is_zero())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Determinate(g) => write!(f, "{g}"),
            Verdict::Indeterminate => write!(f, "indeterminate"),
        }
    }
}

/// Filtration-only estimate: sound, but gives up when two surviving
/// pieces sit in adjacent degrees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationReport {
    pub pieces: Vec<((i64, i64), CohomResult)>,
    pub verdict: Verdict,
}

impl FiltrationReport {
    pub fn euler_char(&self) -> BigInt {
        self.pieces.iter().map(|(_, r)| euler_of(r)).sum()
    }
}

pub fn sym_cohomology_filtration(d: &BundleDescriptor) -> Result<FiltrationReport> {
    let mut pieces = Vec::new();
    for (x, y) in sym_filtration(d).0 {
        pieces.push(((x, y), line_bundle_cohomology(d.n, x, y)?));
    }
    let degrees: Vec<i64> = pieces
        .iter()
        .filter_map(|(_, r)| match r {
            CohomResult::NonZero { degree, .. } => Some(*degree as i64),
            CohomResult::Vanishes => None,
        })
        .collect();
    let adjacent = degrees
        .iter()
        .enumerate()
        .any(|(i, a)| degrees[i + 1..].iter().any(|b| (a - b).abs() == 1));
    let verdict = if adjacent {
        Verdict::Indeterminate
    } else {
        let mut g = GradedDims::zero();
        for (_, r) in &pieces {
            g.merge(&r.to_graded());
        }
        Verdict::Determinate(g)
    };
    Ok(FiltrationReport { pieces, verdict })
}
