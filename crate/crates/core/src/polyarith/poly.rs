//! Dense univariate polynomials over exact coefficient rings.
//!
//! Coefficients are stored in ascending order of exponent and the vector is
//! always trimmed, so the last entry (if any) is the nonzero leading
//! coefficient. The zero polynomial has an empty coefficient vector and degree
//! [`Degree::NegInfinity`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyarith::int::gcd_all;

/// Degree of a polynomial. `NegInfinity` (the zero polynomial) compares below
/// every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

pub trait Coeff:
    Clone + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;
pub type RatPoly = Poly<BigRational>;

impl<T: Coeff> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::NegInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| {
                let mut m = T::zero();
                for _ in 0..k {
                    m = m + c.clone();
                }
                m
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn map<U: Coeff, F: Fn(&T) -> U>(&self, f: F) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<T: Coeff> $tr for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: Poly<T>) -> Poly<T> {
                (&self).$m(&rhs)
            }
        }
        impl<T: Coeff> $tr<&Poly<T>> for Poly<T> {
            type Output = Poly<T>;
            fn $m(self, rhs: &Poly<T>) -> Poly<T> {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<T: Coeff> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -&self
    }
}

impl<T: Coeff + Signed + fmt::Display> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Integer polynomials

impl Poly<BigInt> {
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rational(&self) -> RatPoly {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Positive gcd of the coefficients.
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial { op: "content" });
        }
        Ok(gcd_all(&self.coeffs))
    }

    /// gcd of all integer values; equal to gcd of p(0), ..., p(deg p).
    pub fn fixed_divisor(&self) -> Result<BigInt> {
        let deg = self
            .degree()
            .finite()
            .ok_or(Error::ZeroPolynomial { op: "fixed_divisor" })?;
        let values: Vec<BigInt> = (0..=deg).map(|n| self.eval(&BigInt::from(n))).collect();
        Ok(gcd_all(&values))
    }

    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial { op: "is_squarefree" });
        }
        if self.is_constant() {
            return Ok(true);
        }
        let p = self.to_rational();
        Ok(p.gcd(&p.derivative())?.is_constant())
    }

    /// Pseudo-division: `lc(d)^k * self = q * d + r` with `k = deg self - deg d + 1`
    /// (or `k = 0` when `deg self < deg d`) and `deg r < deg d`.
    pub fn pseudo_divrem(&self, d: &IntPoly) -> Result<(IntPoly, IntPoly)> {
        let dd = d.degree().finite().ok_or(Error::DivisionByZero)?;
        let lc = d.leading().expect("nonzero").clone();
        let mut r = self.clone();
        let mut q = IntPoly::zero();
        let steps = match self.degree().finite() {
            Some(ds) if ds >= dd => ds - dd + 1,
            _ => return Ok((q, r)),
        };
        for _ in 0..steps {
            let (rd, rl) = match (r.degree().finite(), r.leading()) {
                (Some(rd), Some(rl)) if rd >= dd => (rd, rl.clone()),
                _ => {
                    q = q.scale(&lc);
                    r = r.scale(&lc);
                    continue;
                }
            };
            let t = IntPoly::monomial(rl, rd - dd);
            q = &q.scale(&lc) + &t;
            r = &r.scale(&lc) - &(&t * d);
        }
        Ok((q, r))
    }

    /// Sylvester-matrix resultant.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt> {
        let (m, n) = match (self.degree().finite(), other.degree().finite()) {
            (Some(m), Some(n)) => (m, n),
            _ => return Err(Error::ZeroPolynomial { op: "resultant" }),
        };
        if m == 0 && n == 0 {
            return Ok(BigInt::one());
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        // Rows hold coefficients from the leading term downward.
        for i in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                rows[i][i + j] = c.clone();
            }
        }
        for i in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                rows[n + i][i + j] = c.clone();
            }
        }
        Ok(bareiss_determinant(rows))
    }

    /// `(-1)^(n(n-1)/2) Res(p, p') / lc(p)`.
    pub fn discriminant(&self) -> Result<BigInt> {
        let deg = match self.degree() {
            Degree::NegInfinity => return Err(Error::ZeroPolynomial { op: "discriminant" }),
            Degree::Finite(0) => return Err(Error::ConstantPolynomial { op: "discriminant" }),
            Degree::Finite(d) => d,
        };
        let res = self.resultant(&self.derivative())?;
        let lc = self.leading().expect("nonzero");
        let (q, r) = res.div_rem(lc);
        debug_assert!(r.is_zero());
        Ok(if (deg * (deg - 1) / 2) % 2 == 1 { -q } else { q })
    }
}

fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

// ---------------------------------------------------------------------------
// Rational polynomials

impl Poly<BigRational> {
    pub fn from_integer_coeffs(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// `cont(lambda * h) = lambda * cont(h)` for primitive integral `h`:
    /// gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Result<BigRational> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial { op: "content" });
        }
        let num = gcd_all(self.coeffs.iter().map(|c| c.numer()));
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Ok(BigRational::new(num, den))
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as integers; `None` unless every coefficient is integral.
    pub fn to_integer(&self) -> Option<IntPoly> {
        self.is_integral().then(|| self.map(|c| c.to_integer()))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dd = d.degree().finite().ok_or(Error::DivisionByZero)?;
        let lc_inv = d.leading().expect("nonzero").recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut q = vec![BigRational::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] = &r[k + j] - &c * dc;
            }
            q[k] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &RatPoly) -> Result<RatPoly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; fails if the remainder is nonzero.
    pub fn div_exact(&self, d: &RatPoly) -> Result<RatPoly> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InternalInconsistency(format!(
                "inexact polynomial division with remainder {r}"
            )))
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &RatPoly) -> Result<RatPoly> {
        Ok(self.xgcd(other)?.0)
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic or zero.
    pub fn xgcd(&self, other: &RatPoly) -> Result<(RatPoly, RatPoly, RatPoly)> {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => Ok((r0, s0, t0)),
            Some(lc) => {
                let inv = lc.recip();
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn degree_sentinel_orders_below_zero() {
        assert!(Degree::NegInfinity < Degree::Finite(0));
        assert_eq!(IntPoly::zero().degree(), Degree::NegInfinity);
        assert_eq!(ip(&[0, 0, 3, 0]).degree(), Degree::Finite(2));
    }

    #[test]
    fn content_examples() {
        assert_eq!(ip(&[2, 4, 6]).content().unwrap(), BigInt::from(2));
        assert_eq!(ip(&[-4, 0, 0, 1]).content().unwrap(), BigInt::from(1));
        let p = RatPoly::new(vec![q(0, 1), q(3, 2)]);
        assert_eq!(p.content().unwrap(), q(3, 2));
        assert!(matches!(IntPoly::zero().content(), Err(Error::ZeroPolynomial { .. })));
    }

    #[test]
    fn fixed_divisor_examples() {
        // x(x+1)(x+2) = x^3 + 3x^2 + 2x
        assert_eq!(ip(&[0, 2, 3, 1]).fixed_divisor().unwrap(), BigInt::from(6));
        assert_eq!(ip(&[0, 1]).fixed_divisor().unwrap(), BigInt::from(1));
        assert_eq!(ip(&[0, 1, 1]).fixed_divisor().unwrap(), BigInt::from(2));
        assert!(IntPoly::zero().fixed_divisor().is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert!(ip(&[-4, 0, 0, 1]).is_squarefree().unwrap());
        assert!(!ip(&[0, 0, 1, 1]).is_squarefree().unwrap());
        assert!(ip(&[0, -1, 0, 1]).is_squarefree().unwrap());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(ip(&[7, 0, 1]).discriminant().unwrap(), BigInt::from(-28));
        assert_eq!(ip(&[0, -1, 0, 1]).discriminant().unwrap(), BigInt::from(4));
        assert_eq!(ip(&[0, 0, 1, 1]).discriminant().unwrap(), BigInt::zero());
        // x^3 - 4: -27 * 16
        assert_eq!(ip(&[-4, 0, 0, 1]).discriminant().unwrap(), BigInt::from(-432));
        assert!(matches!(ip(&[5]).discriminant(), Err(Error::ConstantPolynomial { .. })));
    }

    #[test]
    fn eval_examples() {
        let f = ip(&[-4, 0, 0, 1]);
        assert_eq!(f.eval(&BigInt::from(-1)), BigInt::from(-5));
        assert_eq!(f.eval(&BigInt::from(2)), BigInt::from(4));
        assert_eq!(ip(&[-106, 9]).eval(&BigInt::from(-1)), BigInt::from(-115));
    }

    #[test]
    fn divrem_and_gcd_examples() {
        let f = RatPoly::from_integer_coeffs(&[-8, 0, 0, 1]);
        let d = RatPoly::from_integer_coeffs(&[-2, 1]);
        let (qq, r) = f.divrem(&d).unwrap();
        assert_eq!(qq, RatPoly::from_integer_coeffs(&[4, 2, 1]));
        assert!(r.is_zero());

        let g = RatPoly::from_integer_coeffs(&[-4, 0, 0, 1])
            .gcd(&RatPoly::from_integer_coeffs(&[0, 0, 3]))
            .unwrap();
        assert!(g.is_constant());

        let g = RatPoly::from_integer_coeffs(&[-1, 0, 1])
            .gcd(&RatPoly::from_integer_coeffs(&[-1, 1]))
            .unwrap();
        assert_eq!(g, RatPoly::from_integer_coeffs(&[-1, 1]));

        assert!(matches!(f.divrem(&RatPoly::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(ip(&[-4, 0, 0, 1]).to_string(), "x^3 - 4");
        assert_eq!(ip(&[1, -2, 0, 3]).to_string(), "3*x^3 - 2*x + 1");
        assert_eq!(IntPoly::zero().to_string(), "0");
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..=20, 1..6)
            .prop_map(|c| ip(&c))
            .prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #[test]
        fn content_is_multiplicative(p in small_poly(), r in small_poly()) {
            let prod = &p * &r;
            prop_assert_eq!(prod.content().unwrap(), p.content().unwrap() * r.content().unwrap());
        }

        #[test]
        fn fixed_divisor_divides_values(p in small_poly(), ns in prop::collection::vec(-10_000i64..10_000, 200)) {
            let fd = p.fixed_divisor().unwrap();
            for n in ns {
                prop_assert!((p.eval(&BigInt::from(n)) % &fd).is_zero());
            }
        }

        #[test]
        fn content_divides_fixed_divisor(p in small_poly()) {
            let c = p.content().unwrap();
            let fd = p.fixed_divisor().unwrap();
            prop_assert!((&fd % &c).is_zero());
            if c.is_one() {
                let deg = p.degree().finite().unwrap();
                prop_assert!((crate::polyarith::int::factorial(deg) % &fd).is_zero());
            }
        }

        #[test]
        fn squarefree_iff_nonzero_discriminant(p in small_poly()) {
            prop_assume!(!p.is_constant());
            prop_assert_eq!(p.is_squarefree().unwrap(), !p.discriminant().unwrap().is_zero());
        }

        #[test]
        fn pseudo_division_identity(p in small_poly(), d in small_poly()) {
            let (qq, r) = p.pseudo_divrem(&d).unwrap();
            prop_assert!(r.degree() < d.degree() || p.degree() < d.degree());
            let k = match (p.degree().finite(), d.degree().finite()) {
                (Some(a), Some(b)) if a >= b => a - b + 1,
                _ => 0,
            };
            let lc = d.leading().unwrap().clone();
            let scale = (0..k).fold(BigInt::one(), |acc, _| acc * &lc);
            prop_assert_eq!(p.scale(&scale), &(&qq * &d) + &r);
        }

        #[test]
        fn squares_are_never_squarefree(p in small_poly(), r in small_poly()) {
            prop_assume!(!p.is_constant());
            let sq = &(&p * &p) * &r;
            prop_assert!(!sq.is_squarefree().unwrap());
        }

        #[test]
        fn divrem_reconstructs(p in small_poly(), d in small_poly()) {
            let (p, d) = (p.to_rational(), d.to_rational());
            let (qq, r) = p.divrem(&d).unwrap();
            prop_assert!(r.degree() < d.degree());
            prop_assert_eq!(&(&qq * &d) + &r, p);
        }
    }
}
