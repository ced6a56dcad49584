//! Group law on `J(Q) = Pic^0(C)` in Mumford representation.
//!
//! A reduced class is a pair `(a, b)` of rational polynomials with `a` monic,
//! `deg b < deg a <= g` and `a | b^2 - f`; it stands for the divisor cut out by
//! `a(x) = 0, y = b(x)` minus the matching multiple of the point at infinity.
//! Addition is Cantor's composition followed by reduction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::curve::OddHyperellipticCurve;
use crate::error::{Error, Result};
use crate::polyarith::{Degree, RatPoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MumfordDivisor {
    a: RatPoly,
    b: RatPoly,
}

impl MumfordDivisor {
    /// Validates the Mumford conditions for `curve`.
    pub fn new(curve: &OddHyperellipticCurve, a: RatPoly, b: RatPoly) -> Result<Self> {
        if !a.is_monic() {
            return Err(Error::InvalidDivisor(format!("a = {a} is not monic")));
        }
        if b.degree() >= a.degree() {
            return Err(Error::InvalidDivisor(format!(
                "deg b = {} is not below deg a = {}",
                b.degree(),
                a.degree()
            )));
        }
        if a.degree() > Degree::Finite(curve.genus()) {
            return Err(Error::InvalidDivisor(format!(
                "deg a = {} exceeds the genus {}",
                a.degree(),
                curve.genus()
            )));
        }
        let f = curve.f().to_rational();
        if !(&(&b * &b) - &f).rem(&a)?.is_zero() {
            return Err(Error::InvalidDivisor(format!("a = {a} does not divide b^2 - f")));
        }
        Ok(MumfordDivisor { a, b })
    }

    pub fn identity() -> Self {
        MumfordDivisor {
            a: RatPoly::one(),
            b: RatPoly::zero(),
        }
    }

    /// The class of `(x0, y0) - infinity`.
    pub fn from_point(curve: &OddHyperellipticCurve, x0: &BigRational, y0: &BigRational) -> Result<Self> {
        if !curve.is_on_curve(x0, y0) {
            return Err(Error::PointNotOnCurve {
                x: x0.to_string(),
                y: y0.to_string(),
            });
        }
        Ok(MumfordDivisor {
            a: RatPoly::new(vec![-x0.clone(), BigRational::from_integer(1.into())]),
            b: RatPoly::constant(y0.clone()),
        })
    }

    pub fn a(&self) -> &RatPoly {
        &self.a
    }

    pub fn b(&self) -> &RatPoly {
        &self.b
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_constant()
    }

    /// `c = (b^2 - f) / a`, completing the form `[a, 2b, c]` of discriminant `4f`.
    pub fn c(&self, curve: &OddHyperellipticCurve) -> RatPoly {
        let f = curve.f().to_rational();
        (&(&self.b * &self.b) - &f)
            .div_exact(&self.a)
            .expect("Mumford invariant a | b^2 - f")
    }

    pub fn neg(&self) -> Self {
        MumfordDivisor {
            a: self.a.clone(),
            b: (-&self.b).rem(&self.a).expect("a is nonzero"),
        }
    }

    pub fn add(&self, other: &Self, curve: &OddHyperellipticCurve) -> Self {
        let f = curve.f().to_rational();
        let (a1, b1) = (&self.a, &self.b);
        let (a2, b2) = (&other.a, &other.b);

        let (d1, e1, e2) = a1.xgcd(a2).expect("nonzero");
        let (d, c1, c2) = d1.xgcd(&(b1 + b2)).expect("nonzero");
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let s3 = c2;

        let a = (a1 * a2).div_exact(&(&d * &d)).expect("d^2 | a1 a2");
        let numer = &(&(&(&s1 * a1) * b2) + &(&(&s2 * a2) * b1)) + &(&s3 * &(&(b1 * b2) + &f));
        let b = numer
            .div_exact(&d)
            .expect("d divides the composed b")
            .rem(&a)
            .expect("a is nonzero");
        reduce(a, b, &f, curve.genus())
    }

    pub fn sub(&self, other: &Self, curve: &OddHyperellipticCurve) -> Self {
        self.add(&other.neg(), curve)
    }

    /// `k * D` by double-and-add; negative `k` negates.
    pub fn smul(&self, k: &BigInt, curve: &OddHyperellipticCurve) -> Self {
        let base = if k.is_negative() { self.neg() } else { self.clone() };
        let mut k = k.abs();
        let mut acc = Self::identity();
        let mut pow = base;
        while !k.is_zero() {
            if k.is_odd() {
                acc = acc.add(&pow, curve);
            }
            k >>= 1usize;
            if !k.is_zero() {
                pow = pow.add(&pow, curve);
            }
        }
        acc
    }
}

fn reduce(mut a: RatPoly, mut b: RatPoly, f: &RatPoly, genus: usize) -> MumfordDivisor {
    while a.degree() > Degree::Finite(genus) {
        let a_next = (f - &(&b * &b)).div_exact(&a).expect("a | f - b^2");
        b = (-&b).rem(&a_next).expect("nonzero");
        a = a_next;
    }
    let a = a.monic();
    let b = b.rem(&a).expect("nonzero");
    MumfordDivisor { a, b }
}

impl fmt::Display for MumfordDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}
