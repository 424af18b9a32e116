//! Truncated polynomial arithmetic in `Z[H]/(H^M)` and the parameter
//! counts attached to the twisted tautological quotient on P^{N-1}.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_with::{serde_as, DisplayFromStr};

use crate::error::{domain, Result};
use crate::weights::{line_bundle_cohomology, CohomResult};

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncPoly {
    #[serde_as(as = "Vec<DisplayFromStr>")]
    coeffs: Vec<BigInt>,
}

impl TruncPoly {
    /// Polynomial modulo `H^modulus`; higher coefficients are dropped.
    pub fn new(modulus: usize, coeffs: &[i64]) -> Self {
        let mut c: Vec<BigInt> = coeffs
            .iter()
            .take(modulus)
            .map(|&v| BigInt::from(v))
            .collect();
        c.resize(modulus, BigInt::zero());
        Self { coeffs: c }
    }

    pub fn one(modulus: usize) -> Self {
        Self::new(modulus, &[1])
    }

    pub fn modulus(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &TruncPoly) -> Result<TruncPoly> {
        if self.modulus() != other.modulus() {
            return domain("modulus mismatch");
        }
        let m = self.modulus();
        let mut out = vec![BigInt::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(m - i) {
                out[i + j] += a * b;
            }
        }
        Ok(TruncPoly { coeffs: out })
    }

    pub fn pow(&self, e: u32) -> Result<TruncPoly> {
        let mut acc = TruncPoly::one(self.modulus());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Inverse of a polynomial with constant term `+-1`.
    pub fn inv_unit(&self) -> Result<TruncPoly> {
        let m = self.modulus();
        let c0 = self.coeff(0);
        if !(c0.is_one() || (-&c0).is_one()) {
            return domain(format!("constant term {c0} is not a unit"));
        }
        let mut inv = vec![BigInt::zero(); m];
        if m == 0 {
            return Ok(TruncPoly { coeffs: inv });
        }
        inv[0] = c0.clone();
        for k in 1..m {
            let mut s = BigInt::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &inv[k - j];
            }
            // c0 * inv[k] = -s and c0^{-1} = c0
            inv[k] = -(s * &c0);
        }
        Ok(TruncPoly { coeffs: inv })
    }
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            terms.push(match i {
                0 => format!("{c}"),
                1 => format!("{c}H"),
                _ => format!("{c}H^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

pub fn poly_mul(a: &TruncPoly, b: &TruncPoly) -> Result<TruncPoly> {
    a.mul(b)
}

pub fn poly_inv_unit(a: &TruncPoly) -> Result<TruncPoly> {
    a.inv_unit()
}

pub fn poly_pow(a: &TruncPoly, e: u32) -> Result<TruncPoly> {
    a.pow(e)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverDegree {
    pub n: usize,
    pub eps: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub n_poly: BigInt,
    #[serde_as(as = "DisplayFromStr")]
    pub n_closed: BigInt,
    pub agree: bool,
}

fn check_params(n: usize, eps: usize) -> Result<usize> {
    if n < 2 {
        return domain(format!("n must be at least 2, got {n}"));
    }
    if eps > 1 {
        return domain(format!("eps must be 0 or 1, got {eps}"));
    }
    Ok(2 * n + eps)
}

/// Top coefficient of `(1+2H)^N / (1+3H)` modulo `H^N`.
pub fn cover_degree_poly(big_n: usize) -> Result<BigInt> {
    let num = TruncPoly::new(big_n, &[1, 2]).pow(big_n as u32)?;
    let den = TruncPoly::new(big_n, &[1, 3]).inv_unit()?;
    Ok(num.mul(&den)?.coeff(big_n - 1))
}

/// `sum_{i<N} (-3)^{N-1-i} 2^i C(N,i)`.
pub fn cover_degree_closed(big_n: usize) -> BigInt {
    let mut s = BigInt::zero();
    for i in 0..big_n {
        let sign_pow = BigInt::from(-3).pow((big_n - 1 - i) as u32);
        s += sign_pow * BigInt::from(2).pow(i as u32) * binomial(big_n as u64, i as u64);
    }
    s
}

pub fn cover_degree(n: usize, eps: usize) -> Result<CoverDegree> {
    let big_n = check_params(n, eps)?;
    let n_poly = cover_degree_poly(big_n)?;
    let n_closed = cover_degree_closed(big_n);
    let agree = n_poly == n_closed;
    Ok(CoverDegree {
        n,
        eps,
        n_poly,
        n_closed,
        agree,
    })
}

/// `h^0(P^{N-1}, Q^vee(2))` from `0 -> Q^vee(2) -> C^N (x) O(2) -> O(3) -> 0`.
pub fn h0_twisted_quotient(big_n: usize) -> Result<BigInt> {
    if big_n < 3 {
        return domain(format!("N must be at least 3, got {big_n}"));
    }
    assert_sub_has_no_h1(big_n)?;
    let n = big_n as u64;
    Ok(BigInt::from(n) * binomial(n + 1, 2) - binomial(n + 2, 3))
}

/// `Q^vee(2) = Omega(3)` is the irreducible bundle of weight `(1,1,0,...)`;
/// BWB must put all of its cohomology in degree 0 with the same dimension.
fn assert_sub_has_no_h1(big_n: usize) -> Result<()> {
    let n = big_n as u64;
    let expected = BigInt::from(n) * binomial(n + 1, 2) - binomial(n + 2, 3);
    match line_bundle_cohomology(big_n, 1, 1)? {
        CohomResult::NonZero { degree: 0, dim, .. } if BigInt::from(dim.clone()) == expected => {
            Ok(())
        }
        other => domain(format!("unexpected cohomology of Omega(3): {other}")),
    }
}

pub fn section_count_ld(big_n: usize) -> Result<BigInt> {
    let n = big_n as u64;
    Ok(h0_twisted_quotient(big_n)? - binomial(n + 1, 2) + BigInt::from(n))
}

pub fn section_count_syzygy(big_n: usize) -> Result<BigInt> {
    let n = big_n as u64;
    Ok(h0_twisted_quotient(big_n)? - binomial(n + 2, 3) + BigInt::from(2 * n) - 1)
}

pub fn condition3_bound(big_n: usize) -> Result<BigInt> {
    if big_n < 3 {
        return domain(format!("N must be at least 3, got {big_n}"));
    }
    let n = big_n as u64;
    Ok(binomial(n + 1, 2) - BigInt::from(n))
}

#[serde_as]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conditions {
    pub n: usize,
    pub eps: usize,
    pub big_n: usize,
    #[serde_as(as = "DisplayFromStr")]
    pub h0_twisted_quotient: BigInt,
    #[serde_as(as = "DisplayFromStr")]
    pub section_count_ld: BigInt,
    #[serde_as(as = "DisplayFromStr")]
    pub section_count_syzygy: BigInt,
    pub ld_exceeds_syzygy: bool,
    #[serde_as(as = "DisplayFromStr")]
    pub condition3_bound: BigInt,
}

pub fn conditions(n: usize, eps: usize) -> Result<Conditions> {
    let big_n = check_params(n, eps)?;
    let ld = section_count_ld(big_n)?;
    let syz = section_count_syzygy(big_n)?;
    Ok(Conditions {
        n,
        eps,
        big_n,
        h0_twisted_quotient: h0_twisted_quotient(big_n)?,
        ld_exceeds_syzygy: ld >= syz,
        section_count_ld: ld,
        section_count_syzygy: syz,
        condition3_bound: condition3_bound(big_n)?,
    })
}
