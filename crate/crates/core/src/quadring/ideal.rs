//! Ideals of `Z[sqrt(D)]`, `D < 0` non-square, in the normal form
//! `(q)(a, y - b)` with `a | b^2 - D` and `0 <= b < a`.
//!
//! Every construction goes through the Hermite normal form of the Z-module
//! spanned by a generating set, written in the basis `{1, y}`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyarith::int::{gcd_all, is_perfect_square, xgcd};
use crate::quadring::form::{IdealClass, IntBinaryForm};

/// Lattice `Z*(alpha, 0) + Z*(beta, gamma)` in a fixed two-element basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hnf2 {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
}

impl Hnf2 {
    /// HNF of the lattice spanned by `vectors`; `None` when the rank is below two.
    pub fn of(vectors: &[(BigInt, BigInt)]) -> Option<Self> {
        let mut w = (BigInt::zero(), BigInt::zero());
        let mut first_coords = Vec::with_capacity(vectors.len());
        for (vx, vy) in vectors {
            if vy.is_zero() {
                first_coords.push(vx.clone());
                continue;
            }
            let (g, s, t) = xgcd(&w.1, vy);
            let new_w = (&s * &w.0 + &t * vx, g.clone());
            // the complementary row of a unimodular transform kills the second coordinate
            let rest = (vy / &g) * &w.0 - (&w.1 / &g) * vx;
            first_coords.push(rest);
            w = new_w;
        }
        let alpha = gcd_all(&first_coords);
        if alpha.is_zero() || w.1.is_zero() {
            return None;
        }
        let beta = w.0.mod_floor(&alpha);
        Some(Hnf2 {
            alpha,
            beta,
            gamma: w.1,
        })
    }

    /// Lattice index in `Z^2`.
    pub fn index(&self) -> BigInt {
        &self.alpha * &self.gamma
    }

    pub fn contains(&self, v: &(BigInt, BigInt)) -> bool {
        if !(&v.1 % &self.gamma).is_zero() {
            return false;
        }
        let k = &v.1 / &self.gamma;
        ((&v.0 - k * &self.beta) % &self.alpha).is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadIdeal {
    d: BigInt,
    q: BigInt,
    a: BigInt,
    b: BigInt,
}

pub(crate) fn check_d(d: &BigInt) -> Result<()> {
    if !d.is_negative() || is_perfect_square(d) {
        return Err(Error::InvalidDiscriminant(d.clone()));
    }
    Ok(())
}

impl QuadIdeal {
    pub fn new(d: BigInt, q: BigInt, a: BigInt, b: BigInt) -> Result<Self> {
        check_d(&d)?;
        if !q.is_positive() || !a.is_positive() {
            return Err(Error::InternalInconsistency(format!(
                "normal form needs q, a > 0 (got q = {q}, a = {a})"
            )));
        }
        let b = b.mod_floor(&a);
        if !((&b * &b - &d) % &a).is_zero() {
            return Err(Error::DivisibilityViolated { a });
        }
        Ok(QuadIdeal { d, q, a, b })
    }

    pub fn unit(d: &BigInt) -> Result<Self> {
        Self::new(d.clone(), BigInt::one(), BigInt::one(), BigInt::zero())
    }

    /// The principal ideal `(k)` for `k != 0`.
    pub fn principal_integer(d: &BigInt, k: &BigInt) -> Result<Self> {
        Self::new(d.clone(), k.abs(), BigInt::one(), BigInt::zero())
    }

    /// Normal form of the Z-module spanned by `gens` (coordinates in `{1, y}`).
    pub fn from_generators(d: &BigInt, gens: &[(BigInt, BigInt)]) -> Result<Self> {
        let h = Hnf2::of(gens)
            .ok_or_else(|| Error::InternalInconsistency("generators span a lattice of rank < 2".into()))?;
        Self::from_hnf(d, &h)
    }

    fn from_hnf(d: &BigInt, h: &Hnf2) -> Result<Self> {
        let q = h.gamma.clone();
        if !(&h.alpha % &q).is_zero() || !(&h.beta % &q).is_zero() {
            return Err(Error::InternalInconsistency(format!(
                "lattice {h:?} is not an ideal of Z[sqrt({d})]"
            )));
        }
        let a = &h.alpha / &q;
        let b = -(&h.beta / &q);
        Self::new(d.clone(), q, a, b)
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// Z-basis `{q*a, q*(y - b)}` in coordinates `{1, y}`.
    pub fn basis(&self) -> [(BigInt, BigInt); 2] {
        [
            (&self.q * &self.a, BigInt::zero()),
            (-(&self.q * &self.b), self.q.clone()),
        ]
    }

    pub fn norm(&self) -> BigInt {
        &self.q * &self.q * &self.a
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.d, other.d, "ideals of different rings");
        let (a1, b1, a2, b2) = (&self.a, &self.b, &other.a, &other.b);
        let gens = [
            (a1 * a2, BigInt::zero()),
            (-(a1 * b2), a1.clone()),
            (-(a2 * b1), a2.clone()),
            (&self.d + b1 * b2, -(b1 + b2)),
        ];
        let mut p = Self::from_generators(&self.d, &gens).expect("product of nonzero ideals");
        p.q *= &self.q * &other.q;
        p
    }

    /// Form `[a, 2b, (b^2 - D)/a]` of discriminant `4D`.
    pub fn form(&self) -> IntBinaryForm {
        let c = (&self.b * &self.b - &self.d) / &self.a;
        IntBinaryForm::new(self.a.clone(), &self.b * 2, c)
    }

    pub fn is_invertible(&self) -> bool {
        self.form().is_primitive()
    }

    pub fn class(&self) -> Result<IdealClass> {
        IdealClass::from_form(&self.form())
    }

    pub fn is_principal(&self) -> Result<bool> {
        Ok(self.class()?.is_identity())
    }

    pub fn class_order(&self) -> Result<u64> {
        Ok(self.class()?.order())
    }
}

impl fmt::Display for QuadIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.q.is_one() {
            write!(f, "({})", self.q)?;
        }
        write!(f, "({}, y - {}) in Z[sqrt({})]", self.a, self.b, self.d)
    }
}

/// Wood's map `[a, 2b, c] -> (a, y - b)` for a primitive form of discriminant `4D`.
pub fn wood_ideal(form: &IntBinaryForm, d: &BigInt) -> Result<QuadIdeal> {
    let disc = form.discriminant();
    let expected: BigInt = d * 4;
    if disc != expected {
        return Err(Error::DiscriminantMismatch { expected, actual: disc });
    }
    if !form.is_primitive() {
        return Err(Error::NotPrimitive { gcd: form.content() });
    }
    QuadIdeal::new(d.clone(), BigInt::one(), form.a.abs(), &form.b / 2)
}

pub fn ideal_mul(i: &QuadIdeal, j: &QuadIdeal) -> QuadIdeal {
    i.mul(j)
}

pub fn ideal_norm(i: &QuadIdeal) -> BigInt {
    i.norm()
}

pub fn ideal_to_class(i: &QuadIdeal) -> Result<IdealClass> {
    i.class()
}

/// `(a, e*y - b) Z[sqrt(D)]` for `a > 0` with `a | b^2 - e^2 D`.
pub fn extend_ideal(a: &BigInt, b: &BigInt, e: &BigInt, d: &BigInt) -> Result<QuadIdeal> {
    check_d(d)?;
    if !a.is_positive() || !e.is_positive() {
        return Err(Error::InternalInconsistency(format!(
            "extend_ideal needs a, e > 0 (got a = {a}, e = {e})"
        )));
    }
    if !((b * b - e * e * d) % a).is_zero() {
        return Err(Error::DivisibilityViolated { a: a.clone() });
    }
    let gens = [
        (a.clone(), BigInt::zero()),
        (BigInt::zero(), a.clone()),
        (-b, e.clone()),
        (e * d, -b),
    ];
    QuadIdeal::from_generators(d, &gens)
}

/// The ideal `(a, r + s*y)` of `Z[sqrt(D)]`.
pub fn two_element_ideal(a: &BigInt, r: &BigInt, s: &BigInt, d: &BigInt) -> Result<QuadIdeal> {
    check_d(d)?;
    let gens = [
        (a.clone(), BigInt::zero()),
        (BigInt::zero(), a.clone()),
        (r.clone(), s.clone()),
        (s * d, r.clone()),
    ];
    QuadIdeal::from_generators(d, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn ideal(d: i64, q: i64, a: i64, bb: i64) -> QuadIdeal {
        QuadIdeal::new(b(d), b(q), b(a), b(bb)).unwrap()
    }

    #[test]
    fn hnf_basics() {
        let h = Hnf2::of(&[(b(3), b(0)), (b(0), b(3)), (b(-1), b(2)), (b(-10), b(-1))]).unwrap();
        assert_eq!(
            h,
            Hnf2 {
                alpha: b(3),
                beta: b(1),
                gamma: b(1)
            }
        );
        assert!(h.contains(&(b(-2), b(1))));
        assert!(!h.contains(&(b(1), b(0))));
        assert!(Hnf2::of(&[(b(1), b(2)), (b(2), b(4))]).is_none());
    }

    #[test]
    fn wood_examples() {
        let d = b(-5);
        let unit = wood_ideal(&IntBinaryForm::from_i64(1, 0, 5), &d).unwrap();
        assert_eq!(unit, QuadIdeal::unit(&d).unwrap());
        let i = wood_ideal(&IntBinaryForm::from_i64(3, 4, 3), &d).unwrap();
        assert_eq!((i.a().clone(), i.b().clone(), i.norm()), (b(3), b(2), b(3)));
        let j = wood_ideal(&IntBinaryForm::from_i64(2, 2, 3), &d).unwrap();
        assert_eq!((j.a().clone(), j.b().clone(), j.norm()), (b(2), b(1), b(2)));
        // a < 0 gives the same ideal
        let neg = wood_ideal(&IntBinaryForm::from_i64(-3, 4, -3), &d).unwrap();
        assert_eq!(neg, i);
        assert!(matches!(
            wood_ideal(&IntBinaryForm::from_i64(2, 2, 3), &b(-6)),
            Err(Error::DiscriminantMismatch { .. })
        ));
        assert!(matches!(
            wood_ideal(&IntBinaryForm::from_i64(2, 2, 2), &b(-3)),
            Err(Error::NotPrimitive { .. })
        ));
    }

    #[test]
    fn multiplication_examples() {
        let d = b(-5);
        assert_eq!(ideal(-5, 1, 2, 1).mul(&ideal(-5, 1, 3, 1)), ideal(-5, 1, 6, 1));
        assert_eq!(ideal(-5, 1, 3, 1).mul(&ideal(-5, 1, 3, 2)), ideal(-5, 3, 1, 0));
        let i = ideal(-5, 1, 3, 2);
        assert_eq!(i.mul(&QuadIdeal::unit(&d).unwrap()), i);
    }

    #[test]
    fn norm_examples() {
        assert_eq!(QuadIdeal::unit(&b(-5)).unwrap().norm(), b(1));
        assert_eq!(ideal(-5, 1, 3, 2).norm(), b(3));
        assert_eq!(QuadIdeal::principal_integer(&b(-5), &b(5)).unwrap().norm(), b(25));
    }

    #[test]
    fn extension_examples() {
        assert_eq!(extend_ideal(&b(3), &b(2), &b(1), &b(-5)).unwrap(), ideal(-5, 1, 3, 2));
        assert_eq!(extend_ideal(&b(3), &b(1), &b(2), &b(-5)).unwrap(), ideal(-5, 1, 3, 2));
        assert_eq!(extend_ideal(&b(25), &b(5), &b(5), &b(-1)).unwrap(), ideal(-1, 5, 1, 0));
        assert!(matches!(
            extend_ideal(&b(7), &b(1), &b(1), &b(-5)),
            Err(Error::DivisibilityViolated { .. })
        ));
    }

    #[test]
    fn class_examples() {
        let unit = QuadIdeal::unit(&b(-5)).unwrap();
        assert_eq!(unit.class().unwrap().rep(), &IntBinaryForm::from_i64(1, 0, 5));
        assert_eq!(
            ideal(-5, 1, 3, 2).class().unwrap().rep(),
            &IntBinaryForm::from_i64(2, 2, 3)
        );
        assert_eq!(
            ideal(-5, 1, 2, 1).class().unwrap().rep(),
            &IntBinaryForm::from_i64(2, 2, 3)
        );
        // (2, y) in Z[sqrt(-4)] is not invertible
        assert!(matches!(ideal(-4, 1, 2, 0).class(), Err(Error::NonInvertible { .. })));
    }

    #[test]
    fn principality_and_orders() {
        assert!(QuadIdeal::principal_integer(&b(-5), &b(7))
            .unwrap()
            .is_principal()
            .unwrap());
        assert!(!ideal(-5, 1, 3, 2).is_principal().unwrap());
        let prod = ideal(-5, 1, 3, 2).mul(&ideal(-5, 1, 3, 1));
        assert!(prod.is_principal().unwrap());
        assert_eq!(QuadIdeal::unit(&b(-5)).unwrap().class_order().unwrap(), 1);
        assert_eq!(ideal(-5, 1, 3, 2).class_order().unwrap(), 2);
        assert_eq!(ideal(-5, 1, 2, 1).class_order().unwrap(), 2);
    }

    fn divisors(n: u64) -> Vec<u64> {
        crate::polyarith::factor::divisors_u64(n)
    }

    /// An admissible `(a, b)` for `D`: `a` is a divisor of `b^2 - D` picked by `k`.
    fn admissible(d: i64, bb: i64, k: usize) -> (BigInt, BigInt) {
        let n = (bb * bb - d) as u64;
        let divs = divisors(n);
        (b(divs[k % divs.len()] as i64), b(bb))
    }

    /// Content and index of the Z-span of `gens`, from gcds of entries and of 2x2 minors.
    fn lattice_oracle(gens: &[(BigInt, BigInt)]) -> (BigInt, BigInt) {
        let content = gcd_all(gens.iter().flat_map(|(x, y)| [x, y]));
        let mut minors = Vec::new();
        for i in 0..gens.len() {
            for j in i + 1..gens.len() {
                minors.push(&gens[i].0 * &gens[j].1 - &gens[i].1 * &gens[j].0);
            }
        }
        (content, gcd_all(&minors))
    }

    #[test]
    fn extension_shape_needs_a_primitive_form() {
        // [48, -24, 63] and [72, 48, 40] have content 3 and 8; the extension
        // is (12)(1) in both cases, outside {a/d, a/d^2} for d = 12.
        assert_eq!(
            extend_ideal(&b(48), &b(-12), &b(24), &b(-5)).unwrap(),
            ideal(-5, 12, 1, 0)
        );
        assert_eq!(
            extend_ideal(&b(72), &b(24), &b(12), &b(-13)).unwrap(),
            ideal(-13, 12, 1, 0)
        );
    }

    const DS: [i64; 5] = [-5, -6, -13, -14, -21];

    proptest::proptest! {
        #[test]
        fn norm_is_multiplicative(
            di in 0usize..5, b1 in 0i64..60, k1 in 0usize..50, b2 in 0i64..60, k2 in 0usize..50
        ) {
            let d = DS[di];
            let (a1, c1) = admissible(d, b1, k1);
            let (a2, c2) = admissible(d, b2, k2);
            let i = QuadIdeal::new(b(d), b(1), a1, c1).unwrap();
            let j = QuadIdeal::new(b(d), b(1), a2, c2).unwrap();
            proptest::prop_assume!(i.is_invertible() && j.is_invertible());
            let p = ideal_mul(&i, &j);
            proptest::prop_assert_eq!(p.norm(), i.norm() * j.norm());
            proptest::prop_assert_eq!(p.clone(), ideal_mul(&j, &i));
            // the product agrees with composition of classes
            proptest::prop_assert_eq!(p.class().unwrap(), i.class().unwrap().mul(&j.class().unwrap()));
        }

        #[test]
        fn product_norm_is_lattice_index(di in 0usize..5, b1 in 0i64..40, k1 in 0usize..50) {
            let d = DS[di];
            let (a, c) = admissible(d, b1, k1);
            let i = QuadIdeal::new(b(d), b(3), a, c).unwrap();
            let (content, index) = lattice_oracle(&i.basis());
            proptest::prop_assert_eq!(content, i.q().clone());
            proptest::prop_assert_eq!(index, i.norm());
        }

        #[test]
        fn fact_one(di in 0usize..5, bb in 0i64..80, k1 in 0usize..50, k2 in 0usize..50) {
            let d = DS[di];
            let n = (bb * bb - d) as u64;
            let divs = divisors(n);
            let a1 = divs[k1 % divs.len()];
            let rest = divisors(n / a1);
            let a2 = rest[k2 % rest.len()];
            proptest::prop_assume!(a1.gcd(&a2) == 1);
            let i = QuadIdeal::new(b(d), b(1), b(a1 as i64), b(bb)).unwrap();
            let j = QuadIdeal::new(b(d), b(1), b(a2 as i64), b(bb)).unwrap();
            let expected = QuadIdeal::new(b(d), b(1), b((a1 * a2) as i64), b(bb)).unwrap();
            proptest::prop_assert_eq!(ideal_mul(&i, &j), expected);
        }

        #[test]
        fn fact_two(di in 0usize..5, bb in -80i64..80, e in 1i64..30, k in 0usize..50) {
            let d = DS[di];
            let n = (bb * bb - e * e * d) as u64;
            let divs = divisors(n);
            let a = divs[k % divs.len()] as i64;
            proptest::prop_assume!(a.gcd(&e) == 1);
            let e_inv = crate::polyarith::int::mod_inverse(&b(e), &b(a)).unwrap();
            let expected = QuadIdeal::new(b(d), b(1), b(a), b(bb) * e_inv).unwrap();
            proptest::prop_assert_eq!(extend_ideal(&b(a), &b(bb), &b(e), &b(d)).unwrap(), expected);
        }

        #[test]
        fn fact_three(di in 0usize..5, r in -50i64..50, s in -50i64..50, a in 1i64..500) {
            let d = DS[di];
            let norm = r * r - s * s * d;
            proptest::prop_assume!(norm != 0 && a.gcd(&norm) == 1);
            let i = two_element_ideal(&b(a), &b(r), &b(s), &b(d)).unwrap();
            proptest::prop_assert_eq!(i, QuadIdeal::unit(&b(d)).unwrap());
        }

        #[test]
        fn extension_shape(di in 0usize..5, bb in -60i64..60, e in 1i64..40, k in 0usize..80) {
            let d = DS[di];
            let n = (bb * bb - e * e * d) as u64;
            let divs = divisors(n);
            let a = b(divs[k % divs.len()] as i64);
            let gens = [
                (a.clone(), b(0)),
                (b(0), a.clone()),
                (-b(bb), b(e)),
                (b(e) * b(d), -b(bb)),
            ];
            let (content, index) = lattice_oracle(&gens);
            let i = extend_ideal(&a, &b(bb), &b(e), &b(d)).unwrap();
            let g = gcd_all([&a, &b(e), &b(bb)]);
            proptest::prop_assert_eq!(i.q(), &content);
            proptest::prop_assert_eq!(i.q(), &g);
            proptest::prop_assert_eq!(i.norm(), index);
            let c = (b(bb) * b(bb) - b(e) * b(e) * b(d)) / &a;
            if gcd_all([&a, &b(2 * bb), &c]).is_one() {
                let a_prime = i.a();
                proptest::prop_assert!(*a_prime == &a / &g || *a_prime == &a / (&g * &g));
            }
        }

        #[test]
        fn wood_inverse_law(di in 0usize..5, bb in -60i64..60, k in 0usize..50) {
            let d = DS[di];
            let (a, _) = admissible(d, bb, k);
            let c = (b(bb) * b(bb) - b(d)) / &a;
            let f = IntBinaryForm::new(a.clone(), b(2 * bb), c);
            proptest::prop_assume!(f.is_primitive());
            let i = wood_ideal(&f, &b(d)).unwrap();
            let j = wood_ideal(&f.conjugate(), &b(d)).unwrap();
            let p = ideal_mul(&i, &j);
            proptest::prop_assert!(p.is_principal().unwrap());
            proptest::prop_assert_eq!(p.norm(), &a * &a);
            proptest::prop_assert_eq!(p, QuadIdeal::principal_integer(&b(d), &a).unwrap());
        }
    }
}
