//! Type A weights in fundamental coordinates and Borel-Weil-Bott for
//! homogeneous line bundles on F(1,2,N).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{domain, Error, Result};

/// Integer weight of SL(N) written in the basis of fundamental weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    coords: Vec<i64>,
}

impl Weight {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if coords.len() < 2 {
            return domain(format!(
                "weight needs at least 2 coordinates, got {}",
                coords.len()
            ));
        }
        Ok(Self { coords })
    }

    /// Weight `(a, b, 0, ..., 0)` of rank `N - 1`.
    pub fn from_pair(n: usize, a: i64, b: i64) -> Result<Self> {
        if n < 3 {
            return domain(format!("N must be at least 3, got {n}"));
        }
        let mut coords = vec![0; n - 1];
        coords[0] = a;
        coords[1] = b;
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Rank of the root system, `N - 1`.
    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    /// Size `N` of the ambient vector space.
    pub fn ambient(&self) -> usize {
        self.coords.len() + 1
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn checked_add(&self, other: &Weight) -> Result<Weight> {
        if self.rank() != other.rank() {
            return domain("rank mismatch in weight addition");
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight { coords })
    }

    pub fn checked_sub(&self, other: &Weight) -> Result<Weight> {
        if self.rank() != other.rank() {
            return domain("rank mismatch in weight subtraction");
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.checked_sub(*b).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight { coords })
    }

    /// Partition view: the `N` suffix sums, last entry 0.
    pub fn partition(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient()];
        for i in (0..self.rank()).rev() {
            out[i] = &out[i + 1] + BigInt::from(self.coords[i]);
        }
        out
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

pub fn rho(n: usize) -> Result<Weight> {
    if n < 3 {
        return domain(format!("N must be at least 3, got {n}"));
    }
    Ok(Weight {
        coords: vec![1; n - 1],
    })
}

/// Reflection in the `i`-th simple root, `i` in `1..=N-1`.
pub fn simple_reflection(w: &Weight, i: usize) -> Result<Weight> {
    let r = w.rank();
    if i == 0 || i > r {
        return domain(format!("reflection index {i} outside 1..={r}"));
    }
    let k = i - 1;
    let v = w.coords[k];
    let mut coords = w.coords.clone();
    coords[k] = v.checked_neg().ok_or(Error::Overflow)?;
    if k > 0 {
        coords[k - 1] = coords[k - 1].checked_add(v).ok_or(Error::Overflow)?;
    }
    if k + 1 < r {
        coords[k + 1] = coords[k + 1].checked_add(v).ok_or(Error::Overflow)?;
    }
    Ok(Weight { coords })
}

/// One reflection of a regularization run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub index: usize,
    pub result: Weight,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regularized {
    Singular {
        trace: Vec<TraceStep>,
    },
    Regular {
        length: usize,
        weight: Weight,
        trace: Vec<TraceStep>,
    },
}

impl Regularized {
    pub fn trace(&self) -> &[TraceStep] {
        match self {
            Regularized::Singular { trace } | Regularized::Regular { trace, .. } => trace,
        }
    }
}

/// Dotted-action regularization of `lambda + rho`.
pub fn bwb_regularize(w_plus_rho: &Weight) -> Result<Regularized> {
    let mut w = w_plus_rho.clone();
    let mut trace = Vec::new();
    loop {
        if w.coords.contains(&0) {
            return Ok(Regularized::Singular { trace });
        }
        match w.coords.iter().position(|&c| c < 0) {
            None => {
                return Ok(Regularized::Regular {
                    length: trace.len(),
                    weight: w,
                    trace,
                });
            }
            Some(k) => {
                w = simple_reflection(&w, k + 1)?;
                trace.push(TraceStep {
                    index: k + 1,
                    result: w.clone(),
                });
            }
        }
    }
}

/// Weyl dimension formula for a dominant weight.
pub fn weyl_dim(dominant: &Weight) -> Result<BigUint> {
    if !dominant.is_dominant() {
        return domain(format!("weight {dominant} is not dominant"));
    }
    let lam = dominant.partition();
    let n = lam.len();
    let mut acc = BigRational::one();
    for i in 0..n {
        for j in (i + 1)..n {
            let gap = BigInt::from((j - i) as i64);
            let num = &lam[i] - &lam[j] + &gap;
            acc *= BigRational::new(num, gap);
        }
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
        .to_biguint()
        .ok_or_else(|| Error::Domain("negative Weyl dimension".into()))
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum CohomResult {
    Vanishes,
    NonZero {
        degree: usize,
        dominant: Weight,
        #[serde_as(as = "DisplayFromStr")]
        dim: BigUint,
    },
}

impl CohomResult {
    pub fn is_zero(&self) -> bool {
        matches!(self, CohomResult::Vanishes)
    }

    pub fn to_graded(&self) -> GradedDims {
        match self {
            CohomResult::Vanishes => GradedDims::zero(),
            CohomResult::NonZero { degree, dim, .. } => {
                GradedDims::single(*degree as i64, dim.clone())
            }
        }
    }
}

impl fmt::Display for CohomResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CohomResult::Vanishes => write!(f, "0"),
            CohomResult::NonZero {
                degree,
                dominant,
                dim,
            } => {
                write!(f, "H^{degree} = V{dominant}, dim {dim}")
            }
        }
    }
}

/// Cohomology of the irreducible homogeneous bundle with highest weight `lambda`.
pub fn weight_cohomology(lambda: &Weight) -> Result<(CohomResult, Regularized)> {
    let rho = rho(lambda.ambient())?;
    let reg = bwb_regularize(&lambda.checked_add(&rho)?)?;
    let res = match &reg {
        Regularized::Singular { .. } => CohomResult::Vanishes,
        Regularized::Regular { length, weight, .. } => {
            let dominant = weight.checked_sub(&rho)?;
            let dim = weyl_dim(&dominant)?;
            CohomResult::NonZero {
                degree: *length,
                dominant,
                dim,
            }
        }
    };
    Ok((res, reg))
}

/// `H^*(F(1,2,N), O(x h1 + y h2))`.
pub fn line_bundle_cohomology(n: usize, x: i64, y: i64) -> Result<CohomResult> {
    Ok(weight_cohomology(&Weight::from_pair(n, x, y)?)?.0)
}

/// Same as [`line_bundle_cohomology`] together with the reflection trace.
pub fn line_bundle_cohomology_traced(
    n: usize,
    x: i64,
    y: i64,
) -> Result<(CohomResult, Regularized)> {
    weight_cohomology(&Weight::from_pair(n, x, y)?)
}

/// Canonical bundle of F(1,2,N) as an `(x, y)` twist.
pub fn canonical_fiber(n: usize) -> Result<(i64, i64)> {
    if n < 3 {
        return domain(format!("N must be at least 3, got {n}"));
    }
    Ok((-2, -(n as i64 - 1)))
}

/// Dimension of F(1,2,N).
pub fn flag_dim(n: usize) -> usize {
    2 * n - 3
}

/// Finite graded vector space, degree to multiplicity.
#[serde_as]
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedDims(#[serde_as(as = "BTreeMap<_, DisplayFromStr>")] BTreeMap<i64, BigUint>);

impl GradedDims {
    pub fn zero() -> Self {
        Self(BTreeMap::new())
    }

    pub fn single(degree: i64, dim: impl Into<BigUint>) -> Self {
        let mut g = Self::zero();
        g.add(degree, dim.into());
        g
    }

    pub fn add(&mut self, degree: i64, dim: BigUint) {
        if dim.is_zero() {
            return;
        }
        *self.0.entry(degree).or_insert_with(BigUint::zero) += dim;
    }

    pub fn merge(&mut self, other: &GradedDims) {
        for (d, m) in &other.0 {
            self.add(*d, m.clone());
        }
    }

    /// Re-index so that the piece in degree `d` moves to degree `d - k`.
    pub fn shifted(&self, k: i64) -> GradedDims {
        Self(self.0.iter().map(|(d, m)| (d - k, m.clone())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, degree: i64) -> BigUint {
        self.0.get(&degree).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<i64> {
        self.0.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigUint)> {
        self.0.iter().map(|(d, m)| (*d, m))
    }

    pub fn euler_char(&self) -> BigInt {
        self.0
            .iter()
            .map(|(d, m)| {
                let v = BigInt::from(m.clone());
                if d.rem_euclid(2) == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum()
    }

    /// True for a one-dimensional space in a single degree.
    pub fn is_point_in(&self, degree: i64) -> bool {
        self.0.len() == 1 && self.get(degree).is_one()
    }

    pub fn total(&self) -> BigUint {
        self.0.values().sum()
    }
}

impl fmt::Display for GradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(d, m)| {
                let base = if m.is_one() {
                    "C".to_string()
                } else {
                    format!("C^{m}")
                };
                if *d == 0 {
                    base
                } else {
                    format!("{base}[{}]", -d)
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Signed Euler characteristic contribution of a single result.
pub fn euler_of(res: &CohomResult) -> BigInt {
    match res {
        CohomResult::Vanishes => BigInt::zero(),
        CohomResult::NonZero { degree, dim, .. } => {
            let v = BigInt::from(dim.clone());
            if degree % 2 == 0 {
                v
            } else {
                -v
            }
        }
    }
}
