//! The order `Z[sqrt(v)]` inside the maximal order of `Q(sqrt(v))`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyarith::factor::square_decomposition;
use crate::quadring::form::{IdealClass, IntBinaryForm};
use crate::quadring::ideal::{check_d, Hnf2, QuadIdeal};

/// `v = S^2 d` with `d` square-free, the fundamental discriminant `delta_k`
/// of `Q(sqrt(d))` and the conductor `m` of `Z[sqrt(v)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConductorData {
    pub s: BigInt,
    pub d: BigInt,
    pub delta_k: BigInt,
    pub m: BigInt,
}

#[derive(Serialize)]
struct ConductorRecord {
    s: String,
    d: String,
    delta_k: String,
    m: String,
}

impl Serialize for ConductorData {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ConductorRecord {
            s: self.s.to_string(),
            d: self.d.to_string(),
            delta_k: self.delta_k.to_string(),
            m: self.m.to_string(),
        }
        .serialize(ser)
    }
}

impl ConductorData {
    pub fn value(&self) -> BigInt {
        &self.s * &self.s * &self.d
    }

    fn d_is_one_mod_four(&self) -> bool {
        self.d.mod_floor(&BigInt::from(4)).is_one()
    }

    /// Upper bound `4 S^2` for the kernel of `Pic(Z[sqrt(v)]) -> Pic(O_K)`.
    pub fn kernel_bound(&self) -> BigInt {
        &self.s * &self.s * 4
    }
}

pub fn conductor_data(v: &BigInt, work_bound: u64) -> Result<ConductorData> {
    check_d(v)?;
    let (s, d) = square_decomposition(v, work_bound)?;
    let one_mod_four = d.mod_floor(&BigInt::from(4)).is_one();
    let (delta_k, m) = if one_mod_four {
        (d.clone(), &s * 2)
    } else {
        (&d * 4, s.clone())
    };
    Ok(ConductorData { s, d, delta_k, m })
}

/// Class of `I O_K` in the class group of discriminant `delta_k`.
///
/// Coordinates are taken in the basis `{1, w}` with `w = sqrt(d)`, or
/// `w = (1 + sqrt(d))/2` when `d = 1 mod 4`. The ideal `(a, t + w)` is sent to
/// the form `[a, -(2t + tr w), N(t + w)/a]`, which agrees with the ideal-to-form
/// convention used for `Z[sqrt(D)]`.
pub fn push_to_maximal(ideal: &QuadIdeal, cd: &ConductorData) -> Result<IdealClass> {
    if ideal.d() != &cd.value() {
        return Err(Error::DiscriminantMismatch {
            expected: cd.value(),
            actual: ideal.d().clone(),
        });
    }
    if !ideal.is_invertible() {
        return Err(Error::NonInvertible {
            gcd: ideal.form().content(),
        });
    }
    let half = cd.d_is_one_mod_four();
    let (tr_w, norm_w): (BigInt, BigInt) = if half {
        (BigInt::one(), (BigInt::one() - &cd.d) / 4)
    } else {
        (BigInt::zero(), -&cd.d)
    };
    let times_w = |(u, v): &(BigInt, BigInt)| -> (BigInt, BigInt) {
        if half {
            (v * ((&cd.d - 1) / 4), u + v)
        } else {
            (v * &cd.d, u.clone())
        }
    };
    let a = ideal.a();
    let sqrt_v = if half {
        (-&cd.s, &cd.s * 2)
    } else {
        (BigInt::zero(), cd.s.clone())
    };
    let alpha = (&sqrt_v.0 - ideal.b(), sqrt_v.1);
    let a_vec = (a.clone(), BigInt::zero());
    let gens = [times_w(&a_vec), a_vec, times_w(&alpha), alpha];
    let h = Hnf2::of(&gens).ok_or_else(|| Error::InternalInconsistency("extended ideal has rank < 2".into()))?;
    if !(&h.alpha % &h.gamma).is_zero() || !(&h.beta % &h.gamma).is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "lattice {h:?} is not an ideal of the maximal order"
        )));
    }
    let a_k = &h.alpha / &h.gamma;
    let t = &h.beta / &h.gamma;
    let middle = -(&t * 2u32 + &tr_w);
    let c = (&t * &t + &t * &tr_w + &norm_w) / &a_k;
    IdealClass::from_form(&IntBinaryForm::new(a_k, middle, c))
}
