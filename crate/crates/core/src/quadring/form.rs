//! Positive-definite binary quadratic forms `aX^2 + bXY + cY^2` and the class
//! group they represent.
//!
//! The middle coefficient is stored in full, so for the order `Z[sqrt(D)]`
//! (discriminant `4D`) the form `[a, 2b0, c]` has `b = 2*b0`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyarith::int::{gcd_all, is_perfect_square, xgcd};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntBinaryForm {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl IntBinaryForm {
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Self {
        IntBinaryForm { a, b, c }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - &self.a * &self.c * 4
    }

    pub fn content(&self) -> BigInt {
        gcd_all([&self.a, &self.b, &self.c])
    }

    pub fn is_primitive(&self) -> bool {
        self.content().is_one()
    }

    /// The principal form of discriminant `disc`.
    pub fn identity(disc: &BigInt) -> Self {
        if disc.is_even() {
            Self::new(BigInt::one(), BigInt::zero(), -(disc / 4u32))
        } else {
            Self::new(BigInt::one(), BigInt::one(), (BigInt::one() - disc) / 4)
        }
    }

    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -&self.b, self.c.clone())
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let abs_b = self.b.abs();
        self.a.is_positive()
            && abs_b <= self.a
            && self.a <= self.c
            && (!(abs_b == self.a || self.a == self.c) || !self.b.is_negative())
    }

    /// Translates `b` into `(-a, a]`.
    fn normalize(&mut self, disc: &BigInt) {
        let two_a: BigInt = &self.a * 2;
        let r = (&self.a - &self.b).div_floor(&two_a);
        self.b += &two_a * r;
        self.c = (&self.b * &self.b - disc) / (&self.a * 4);
    }

    /// Reduced representative of the SL_2(Z)-orbit of a positive-definite form.
    pub fn reduce(&self) -> Self {
        assert!(
            self.a.is_positive() && self.discriminant().is_negative(),
            "reduction needs a positive-definite form, got {self}"
        );
        let disc = self.discriminant();
        let mut f = self.clone();
        f.normalize(&disc);
        while f.a > f.c {
            f = Self::new(f.c.clone(), -&f.b, f.a.clone());
            f.normalize(&disc);
        }
        if f.a == f.c && f.b.is_negative() {
            f.b = -f.b;
        }
        f
    }

    /// Dirichlet composition (result not reduced).
    pub fn compose(&self, other: &Self) -> Self {
        let disc = self.discriminant();
        debug_assert_eq!(disc, other.discriminant());
        let (a1, b1) = (&self.a, &self.b);
        let (a2, b2) = (&other.a, &other.b);
        let s: BigInt = (b1 + b2) / 2;
        let (g1, x1, y1) = xgcd(a1, a2);
        let (e, u, w) = xgcd(&g1, &s);
        let (x, y, z) = (&u * x1, &u * y1, w);

        let a3 = a1 * a2 / (&e * &e);
        let numer = &x * a1 * b2 + &y * a2 * b1 + &z * ((b1 * b2 + &disc) / 2);
        let mut f = Self::new(a3, numer / &e, BigInt::zero());
        f.normalize(&disc);
        f
    }
}

impl fmt::Display for IntBinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

/// A class in the form class group of a negative discriminant, stored by its
/// reduced representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdealClass {
    disc: BigInt,
    rep: IntBinaryForm,
}

#[derive(Serialize)]
struct ClassRecord {
    a: String,
    b2: String,
    c: String,
    disc: String,
}

impl Serialize for IdealClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassRecord {
            a: self.rep.a.to_string(),
            b2: self.rep.b.to_string(),
            c: self.rep.c.to_string(),
            disc: self.disc.to_string(),
        }
        .serialize(s)
    }
}

pub fn check_discriminant(disc: &BigInt) -> Result<()> {
    let r = disc.mod_floor(&BigInt::from(4));
    if !disc.is_negative() || r > BigInt::one() || is_perfect_square(disc) {
        return Err(Error::InvalidDiscriminant(disc.clone()));
    }
    Ok(())
}

impl IdealClass {
    /// Class of a primitive positive-definite form.
    pub fn from_form(form: &IntBinaryForm) -> Result<Self> {
        let disc = form.discriminant();
        check_discriminant(&disc)?;
        if !form.is_primitive() {
            return Err(Error::NonInvertible { gcd: form.content() });
        }
        if !form.a.is_positive() {
            return Err(Error::InternalInconsistency(format!(
                "form {form} is not positive definite"
            )));
        }
        Ok(IdealClass {
            rep: form.reduce(),
            disc,
        })
    }

    pub fn identity(disc: &BigInt) -> Self {
        IdealClass {
            rep: IntBinaryForm::identity(disc),
            disc: disc.clone(),
        }
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn rep(&self) -> &IntBinaryForm {
        &self.rep
    }

    pub fn is_identity(&self) -> bool {
        self.rep == IntBinaryForm::identity(&self.disc)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.disc, other.disc, "classes of different discriminants");
        IdealClass {
            rep: self.rep.compose(&other.rep).reduce(),
            disc: self.disc.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        IdealClass {
            rep: self.rep.conjugate().reduce(),
            disc: self.disc.clone(),
        }
    }

    pub fn pow(&self, k: &BigInt) -> Self {
        let base = if k.is_negative() { self.inverse() } else { self.clone() };
        let mut k = k.abs();
        let mut acc = Self::identity(&self.disc);
        let mut sq = base;
        while !k.is_zero() {
            if k.is_odd() {
                acc = acc.mul(&sq);
            }
            k >>= 1usize;
            if !k.is_zero() {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Least `k >= 1` with `self^k` trivial.
    pub fn order(&self) -> u64 {
        let mut k = 1u64;
        let mut acc = self.clone();
        while !acc.is_identity() {
            acc = acc.mul(self);
            k += 1;
        }
        k
    }

    /// Order computed from a known multiple (e.g. the class number).
    pub fn order_dividing(&self, multiple: u64) -> u64 {
        let mut order = multiple;
        for (p, _) in crate::polyarith::factor::factorize(&BigInt::from(multiple), u64::MAX)
            .expect("small integers always factor")
        {
            let p: u64 = p.try_into().expect("fits");
            while order.is_multiple_of(p) && self.pow(&BigInt::from(order / p)).is_identity() {
                order /= p;
            }
        }
        debug_assert!(self.pow(&BigInt::from(order)).is_identity());
        order
    }
}

impl fmt::Display for IdealClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (disc {})", self.rep, self.disc)
    }
}
