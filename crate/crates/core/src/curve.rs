//! Odd-degree Weierstrass models `y^2 = f(x)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyarith::{IntPoly, RatPoly};

/// A validated curve `y^2 = f(x)` with `f` monic, square-free, of degree
/// `2g + 1 >= 3`. The single point at infinity is never materialised.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OddHyperellipticCurve {
    #[serde(serialize_with = "serialize_poly")]
    f: IntPoly,
    genus: usize,
    #[serde(serialize_with = "serialize_bigint")]
    n_f: BigInt,
}

fn serialize_poly<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.coeffs().iter().map(|c| c.to_string()))
}

fn serialize_bigint<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl OddHyperellipticCurve {
    pub fn new(f: IntPoly) -> Result<Self> {
        let degree = f.degree().finite().unwrap_or(0);
        if degree < 3 || degree.is_multiple_of(2) {
            return Err(Error::EvenOrTooSmallDegree { degree });
        }
        if !f.is_monic() {
            return Err(Error::NotMonic {
                leading: f.leading().cloned().unwrap_or_default(),
            });
        }
        if !f.is_squarefree()? {
            return Err(Error::NotSquarefree);
        }
        let n_f = negativity_bound(&f);
        Ok(OddHyperellipticCurve {
            genus: (degree - 1) / 2,
            f,
            n_f,
        })
    }

    pub fn f(&self) -> &IntPoly {
        &self.f
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Largest `N` with `f(n) < 0` for every integer `n <= N`.
    pub fn n_f(&self) -> &BigInt {
        &self.n_f
    }

    pub fn eval(&self, n: &BigInt) -> BigInt {
        self.f.eval(n)
    }

    pub fn is_on_curve(&self, x0: &BigRational, y0: &BigRational) -> bool {
        y0 * y0 == self.f.to_rational().eval(x0)
    }

    pub fn discriminant(&self) -> BigInt {
        self.f.discriminant().expect("degree >= 3")
    }

    pub fn fixed_divisor(&self) -> BigInt {
        self.f.fixed_divisor().expect("nonzero")
    }
}

/// Every real root of a monic `f` lies strictly inside `(-B, B)`.
fn cauchy_bound(f: &IntPoly) -> BigInt {
    let max = f
        .coeffs()
        .iter()
        .take(f.coeffs().len().saturating_sub(1))
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    max + 1
}

fn sturm_chain(f: &IntPoly) -> Vec<RatPoly> {
    let mut chain = vec![f.to_rational(), f.to_rational().derivative()];
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(-r);
    }
    chain
}

fn sign_changes(chain: &[RatPoly], x: &BigRational) -> usize {
    let signs: Vec<bool> = chain
        .iter()
        .map(|p| p.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// For odd monic `f`: locate the smallest real root to integer granularity by
/// Sturm counting, then step forward over any run where `f` dips negative
/// again before the first integer with `f(m) >= 0`.
pub fn negativity_bound(f: &IntPoly) -> BigInt {
    let bound = cauchy_bound(f);
    let chain = sturm_chain(f);
    let lo_point = BigRational::from_integer(-&bound);
    let total = sign_changes(&chain, &lo_point);
    let roots_up_to = |k: &BigInt| total - sign_changes(&chain, &BigRational::from_integer(k.clone()));

    // smallest integer k in [-B, B] with at least one root in (-B, k]
    let (mut lo, mut hi) = (-&bound, bound.clone());
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) >> 1usize;
        if roots_up_to(&mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let mut m = hi;
    while f.eval(&m).is_negative() {
        m += 1;
    }
    m - 1
}
