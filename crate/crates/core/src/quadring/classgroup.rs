//! Class numbers of negative discriminants by enumeration of reduced forms.

use std::collections::{BTreeSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadring::form::{check_discriminant, IdealClass, IntBinaryForm};
use crate::quadring::ideal::check_d;

/// Largest `|disc|` accepted by the enumeration.
pub const ENUMERATION_LIMIT: u64 = 10_000_000_000;

fn small_disc(disc: &BigInt) -> Result<i64> {
    check_discriminant(disc)?;
    match disc.to_i64() {
        Some(v) if v.unsigned_abs() <= ENUMERATION_LIMIT => Ok(v),
        _ => Err(Error::ClassNumberOutOfRange(disc.clone())),
    }
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Reduced primitive forms with leading coefficient `a`, as `(b, c)` pairs.
fn forms_with_leading(a: i64, disc: i64) -> Vec<(i64, i64)> {
    let four_a = 4 * a as i128;
    let mut out = Vec::new();
    let parity = disc.rem_euclid(2);
    let mut b = -a + 1;
    if b.rem_euclid(2) != parity {
        b += 1;
    }
    while b <= a {
        let num = (b as i128) * (b as i128) - disc as i128;
        if num % four_a == 0 {
            let c = (num / four_a) as i64;
            let ok = c >= a && !(b < 0 && c == a) && a.gcd(&b).gcd(&c) == 1;
            if ok {
                out.push((b, c));
            }
        }
        b += 2;
    }
    out
}

/// All reduced primitive positive-definite forms of discriminant `disc`, sorted.
pub fn reduced_forms(disc: &BigInt) -> Result<Vec<IntBinaryForm>> {
    let dv = small_disc(disc)?;
    let a_max = isqrt(dv.unsigned_abs() / 3) as i64;
    let mut forms: Vec<IntBinaryForm> = (1..=a_max)
        .into_par_iter()
        .flat_map_iter(|a| {
            forms_with_leading(a, dv)
                .into_iter()
                .map(move |(b, c)| IntBinaryForm::from_i64(a, b, c))
        })
        .collect();
    forms.sort();
    Ok(forms)
}

/// Class number of the discriminant `disc` (negative, `= 0, 1 mod 4`, non-square).
pub fn class_number_of_discriminant(disc: &BigInt) -> Result<u64> {
    let dv = small_disc(disc)?;
    let a_max = isqrt(dv.unsigned_abs() / 3) as i64;
    Ok((1..=a_max)
        .into_par_iter()
        .map(|a| forms_with_leading(a, dv).len() as u64)
        .sum())
}

/// `h(4D)`, the order of `Pic(Z[sqrt(D)])`.
pub fn class_number(d: &BigInt) -> Result<u64> {
    check_d(d)?;
    class_number_of_discriminant(&(d * 4))
}

/// Size of the subgroup generated by all reduced forms, found by repeated
/// composition. Fails if some product is not one of the listed forms.
pub fn closure_count(disc: &BigInt) -> Result<u64> {
    let forms = reduced_forms(disc)?;
    let listed: BTreeSet<IntBinaryForm> = forms.iter().cloned().collect();
    let gens: Vec<IdealClass> = forms.iter().map(IdealClass::from_form).collect::<Result<_>>()?;
    let start = IdealClass::identity(disc);
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.mul(g);
            if !listed.contains(y.rep()) {
                return Err(Error::InternalInconsistency(format!(
                    "composition produced unlisted form {}",
                    y.rep()
                )));
            }
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    Ok(seen.len() as u64)
}
