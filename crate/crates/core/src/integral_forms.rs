//! Denominator-controlled integral representation of Jacobian classes.
//!
//! A reduced Mumford pair `(a, b)` with `c = (b^2 - f) / a` gives the form
//! `[a, 2b, c]` over `Q[x]` of discriminant `4f`. Rescaling `a` to a primitive
//! integral polynomial `A = lambda * a` and clearing the denominator of `b`
//! gives integral `A, B, C` and `e > 0` with
//!
//! ```text
//! B^2 - A*C = e^2 * f,   content(A) = 1,   gcd(e, content(B)) = 1,
//! ```
//!
//! so that `[A/e, 2B/e, C/e]` is equivalent to `[a, 2b, c]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::curve::OddHyperellipticCurve;
use crate::error::{Error, Result};
use crate::jacobian::MumfordDivisor;
use crate::polyarith::factor::{distinct_prime_divisors, DEFAULT_WORK_BOUND};
use crate::polyarith::int::{crt, gcd, gcd_all};
use crate::polyarith::{Degree, IntPoly};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AltMumfordForm {
    pub a: IntPoly,
    pub b: IntPoly,
    pub c: IntPoly,
    pub e: BigInt,
}

impl AltMumfordForm {
    /// The canonical representative of `d` with positive leading coefficient of `A`.
    pub fn from_divisor(curve: &OddHyperellipticCurve, d: &MumfordDivisor) -> Result<Self> {
        let cont_a = d.a().content()?;
        let a_int = d
            .a()
            .scale(&cont_a.recip())
            .to_integer()
            .ok_or_else(|| Error::InternalInconsistency("a / cont(a) is not integral".into()))?;

        let e = d.b().denominator_lcm();
        let e_rat = BigRational::from_integer(e.clone());
        let b_int = d.b().scale(&e_rat).to_integer().expect("denominators cleared");

        // C = e^2 * lambda^-1 * c with lambda = 1 / cont(a)
        let c_int = d
            .c(curve)
            .scale(&(&e_rat * &e_rat * &cont_a))
            .to_integer()
            .ok_or_else(|| Error::InternalInconsistency("C is not integral".into()))?;

        let form = AltMumfordForm {
            a: a_int,
            b: b_int,
            c: c_int,
            e,
        };
        debug_assert!(form.check(curve).is_ok());
        Ok(form)
    }

    /// Checks every structural condition, reporting the first that fails.
    pub fn check(&self, curve: &OddHyperellipticCurve) -> Result<()> {
        let fail = |m: &str| Err(Error::InternalInconsistency(m.to_string()));
        if !self.e.is_positive() {
            return fail("e must be positive");
        }
        let lhs = &(&self.b * &self.b) - &(&self.a * &self.c);
        if lhs != curve.f().scale(&(&self.e * &self.e)) {
            return fail("B^2 - AC != e^2 f");
        }
        if !self.a.content()?.is_one() {
            return fail("content(A) != 1");
        }
        let cont_b = if self.b.is_zero() {
            BigInt::zero()
        } else {
            self.b.content()?
        };
        if !gcd(&self.e, &cont_b).is_one() {
            return fail("gcd(e, content(B)) != 1");
        }
        if self.b.degree() >= self.a.degree() || self.a.degree() > Degree::Finite(curve.genus()) {
            return fail("degree conditions deg B < deg A <= g violated");
        }
        if !self.a.leading().is_some_and(Signed::is_positive) {
            return fail("leading coefficient of A must be positive");
        }
        Ok(())
    }

    /// Back to the Mumford pair: `a = A / lc(A)`, `b = B / e`.
    pub fn to_divisor(&self, curve: &OddHyperellipticCurve) -> Result<MumfordDivisor> {
        let lc = BigRational::from_integer(self.a.leading().expect("nonzero").clone());
        let a = self.a.to_rational().scale(&lc.recip());
        let b = self
            .b
            .to_rational()
            .scale(&BigRational::from_integer(self.e.clone()).recip());
        MumfordDivisor::new(curve, a, b)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_constant()
    }
}

/// Output of [`soleng_shift`]: an equivalent value form `(a', 2b', c)` with
/// `gcd(a', e) = 1`, obtained from `(X, Y) -> (X, e1*X + Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShiftedValues {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub e1: BigInt,
}

/// Moves the leading entry of a primitive value form `(a, 2b, c)` away from
/// the primes of `e`.
///
/// `e = e1 * e2` where `e2` collects the prime powers of `e` at primes that
/// divide `a`. Primitivity forces `gcd(c, e2) = 1`, and then
/// `a + 2 e1 b + e1^2 c` is prime to `e`.
pub fn soleng_shift(a: &BigInt, b: &BigInt, c: &BigInt, e: &BigInt) -> Result<ShiftedValues> {
    let two_b = b * 2;
    let content = gcd_all([a, &two_b, c]);
    if !content.is_one() {
        return Err(Error::NotPrimitive { gcd: content });
    }
    if gcd(a, e).is_one() {
        return Ok(ShiftedValues {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            e1: e.clone(),
        });
    }
    // e2 = part of e supported on primes dividing a
    let mut e1 = e.clone();
    let mut e2 = BigInt::one();
    loop {
        let g = gcd(&e1, a);
        if g.is_one() {
            break;
        }
        e1 /= &g;
        e2 *= g;
    }
    let a_new = a + &e1 * b * 2 + &e1 * &e1 * c;
    let b_new = b + &e1 * c;
    if !gcd(&a_new, e).is_one() {
        return Err(Error::InternalInconsistency(format!(
            "shift with e1 = {e1}, e2 = {e2} left gcd(a', e) = {}",
            gcd(&a_new, e)
        )));
    }
    Ok(ShiftedValues {
        a: a_new,
        b: b_new,
        c: c.clone(),
        e1,
    })
}

/// `d_L`, `Delta_L` and `N_L` for a form: on the congruence class
/// `n = N_L (mod Delta_L)`, `gcd(A(n) / d_L, e) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CongruenceData {
    #[serde(serialize_with = "ser_str")]
    pub d_l: BigInt,
    #[serde(serialize_with = "ser_str")]
    pub delta_l: BigInt,
    #[serde(serialize_with = "ser_str")]
    pub n_l: BigInt,
}

fn ser_str<S: serde::Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl CongruenceData {
    pub fn contains(&self, n: &BigInt) -> bool {
        (n - &self.n_l).mod_floor(&self.delta_l).is_zero()
    }
}

pub fn congruence_data(form: &AltMumfordForm) -> Result<CongruenceData> {
    congruence_data_with_bound(form, DEFAULT_WORK_BOUND)
}

pub fn congruence_data_with_bound(form: &AltMumfordForm, work_bound: u64) -> Result<CongruenceData> {
    if form.e.is_one() {
        return Ok(CongruenceData {
            d_l: BigInt::one(),
            delta_l: BigInt::one(),
            n_l: BigInt::zero(),
        });
    }
    let d_l = gcd(&form.a.fixed_divisor()?, &form.e);
    let primes = distinct_prime_divisors(&form.e, work_bound)?;
    let delta_l = primes.iter().fold(BigInt::one(), |acc, p| acc * p);
    let mut residues = Vec::with_capacity(primes.len());
    for p in &primes {
        let mut m = BigInt::zero();
        let found = loop {
            if &m >= p {
                break None;
            }
            let v = form.a.eval(&m) / &d_l;
            if !(v % p).is_zero() {
                break Some(m.clone());
            }
            m += 1;
        };
        match found {
            Some(m) => residues.push((m, p.clone())),
            None => {
                return Err(Error::InternalInconsistency(format!(
                    "A / d_L vanishes identically modulo {p}"
                )))
            }
        }
    }
    let (n_l, _) = crt(&residues).expect("distinct primes are coprime");
    Ok(CongruenceData { d_l, delta_l, n_l })
}

/// Fujiwara bound: every complex root `z` of `p` has `|z| < bound`.
pub fn root_bound(p: &IntPoly) -> BigInt {
    let deg = p.degree().finite().unwrap_or(0);
    let lc = p.leading().map(|c| c.abs()).unwrap_or_else(BigInt::one);
    let mut best = BigInt::zero();
    for i in 1..=deg {
        let c = p.coeff(deg - i).abs();
        if c.is_zero() {
            continue;
        }
        let ratio = c.div_ceil(&lc);
        let mut r = ratio.nth_root(i as u32);
        if num_traits::pow(r.clone(), i) < ratio {
            r += 1;
        }
        best = best.max(r);
    }
    best * 2 + 1
}

/// Largest `N <= n_f` such that every `n <= N` has `|h(n)| > M` and
/// `f(n) +- h(n) < 0`. Below it, a family of forms with
/// `|h(n)/M| <= |a(n)| <= |h(n)|` has no member equivalent to `[1, 0, -f(n)]`.
pub fn keylemma_threshold(h: &IntPoly, m: &BigInt, curve: &OddHyperellipticCurve) -> Result<BigInt> {
    let deg_f = curve.f().degree().finite().expect("valid curve");
    let deg_h = match h.degree() {
        Degree::Finite(d) if d >= 1 => d,
        _ => {
            return Err(Error::ConstantPolynomial {
                op: "keylemma_threshold",
            })
        }
    };
    if deg_h >= deg_f {
        return Err(Error::DegreeTooLarge { deg_h, deg_f });
    }
    if !m.is_positive() {
        return Err(Error::InternalInconsistency(format!("M = {m} must be >= 1")));
    }
    let f = curve.f();
    let m_poly = IntPoly::constant(m.clone());
    let start = -[&(h - &m_poly), &(h + &m_poly), &(f + h), &(f - h)]
        .into_iter()
        .map(root_bound)
        .max()
        .expect("nonempty");
    let holds = |n: &BigInt| {
        let hv = h.eval(n);
        let fv = f.eval(n);
        hv.abs() > *m && (&fv + &hv).is_negative() && (&fv - &hv).is_negative()
    };
    let mut n = start;
    while &n <= curve.n_f() {
        if !holds(&n) {
            return Ok(n - 1);
        }
        n += 1;
    }
    Ok(curve.n_f().clone())
}
