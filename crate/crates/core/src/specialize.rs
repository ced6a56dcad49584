//! Specialisation of a Jacobian class at `x = n`.
//!
//! For `n` with `f(n) < 0` the integral form `[A/e, 2B/e, C/e]` of `Q` gives
//! the ideal `(A(n), e*sqrt(f(n)) - B(n))` of `Z[sqrt(f(n))]`, whose class is
//! `delta_n(Q)`. Its image in the class group of the maximal order is the
//! pairing value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::curve::OddHyperellipticCurve;
use crate::error::{Error, Result};
use crate::integral_forms::{soleng_shift, AltMumfordForm};
use crate::jacobian::MumfordDivisor;
use crate::polyarith::factor::{factorize, is_squarefree_integer, DEFAULT_WORK_BOUND};
use crate::polyarith::int::{gcd, gcd_all, is_perfect_square};
use crate::quadring::classgroup::{class_number, class_number_of_discriminant};
use crate::quadring::conductor::{conductor_data, push_to_maximal, ConductorData};
use crate::quadring::form::IdealClass;
use crate::quadring::ideal::{extend_ideal, QuadIdeal};

/// `A(n), B(n), C(n)` with `b_val^2 - a_val*c_val = e^2 * fval`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueForm {
    pub n: BigInt,
    pub a_val: BigInt,
    pub b_val: BigInt,
    pub c_val: BigInt,
    pub e: BigInt,
    pub fval: BigInt,
}

impl ValueForm {
    /// `gcd(A(n), 2B(n), C(n))`; unchanged by the shift in [`soleng_shift`].
    pub fn content(&self) -> BigInt {
        gcd_all([&self.a_val, &(&self.b_val * 2), &self.c_val])
    }
}

pub fn specialize_form(form: &AltMumfordForm, curve: &OddHyperellipticCurve, n: &BigInt) -> Result<ValueForm> {
    let fval = curve.eval(n);
    if !fval.is_negative() {
        return Err(Error::PositiveValue {
            n: n.clone(),
            value: fval,
        });
    }
    if is_perfect_square(&fval) {
        return Err(Error::SquareValue {
            n: n.clone(),
            value: fval,
        });
    }
    let v = ValueForm {
        n: n.clone(),
        a_val: form.a.eval(n),
        b_val: form.b.eval(n),
        c_val: form.c.eval(n),
        e: form.e.clone(),
        fval,
    };
    let lhs = &v.b_val * &v.b_val - &v.a_val * &v.c_val;
    if lhs != &v.e * &v.e * &v.fval {
        return Err(Error::InternalInconsistency(format!(
            "value form at n = {n} has the wrong discriminant"
        )));
    }
    Ok(v)
}

/// Outcome of the primitivity test at a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primitivity {
    /// The canonical representative is primitive.
    Canonical,
    /// `f(n)` is square-free, so some representative is primitive, but not ours.
    SquarefreeOnly,
    /// No primitive representative was found.
    NotPrimitive,
}

pub fn primitivity(v: &ValueForm, work_bound: u64) -> Result<Primitivity> {
    if v.content().is_one() {
        return Ok(Primitivity::Canonical);
    }
    if is_squarefree_integer(&v.fval, work_bound)? {
        Ok(Primitivity::SquarefreeOnly)
    } else {
        Ok(Primitivity::NotPrimitive)
    }
}

pub fn is_n_primitive(v: &ValueForm) -> bool {
    matches!(
        primitivity(v, DEFAULT_WORK_BOUND),
        Ok(Primitivity::Canonical | Primitivity::SquarefreeOnly)
    )
}

/// The ideal `delta_n(Q)` of `Z[sqrt(f(n))]`, built from the shifted value form.
pub fn delta_n_ideal(curve: &OddHyperellipticCurve, q: &MumfordDivisor, n: &BigInt) -> Result<QuadIdeal> {
    delta_n_ideal_with_bound(curve, q, n, DEFAULT_WORK_BOUND)
}

pub fn delta_n_ideal_with_bound(
    curve: &OddHyperellipticCurve,
    q: &MumfordDivisor,
    n: &BigInt,
    work_bound: u64,
) -> Result<QuadIdeal> {
    let form = AltMumfordForm::from_divisor(curve, q)?;
    let v = specialize_form(&form, curve, n)?;
    ideal_from_values(&v, work_bound)
}

fn ideal_from_values(v: &ValueForm, work_bound: u64) -> Result<QuadIdeal> {
    match primitivity(v, work_bound)? {
        Primitivity::Canonical => {}
        Primitivity::SquarefreeOnly => return Err(Error::IndeterminateRepresentative { n: v.n.clone() }),
        Primitivity::NotPrimitive => return Err(Error::NotPrimitive { gcd: v.content() }),
    }
    let s = soleng_shift(&v.a_val, &v.b_val, &v.c_val, &v.e)?;
    extend_ideal(&s.a.abs(), &s.b, &v.e, &v.fval)
}

pub fn delta_n(curve: &OddHyperellipticCurve, q: &MumfordDivisor, n: &BigInt) -> Result<IdealClass> {
    delta_n_ideal(curve, q, n)?.class()
}

/// `delta_n(Q)` pushed to the class group of the maximal order of `Q(sqrt(f(n)))`.
pub fn pairing_value(
    curve: &OddHyperellipticCurve,
    q: &MumfordDivisor,
    n: &BigInt,
    work_bound: u64,
) -> Result<IdealClass> {
    let ideal = delta_n_ideal_with_bound(curve, q, n, work_bound)?;
    let cd = conductor_data(ideal.d(), work_bound)?;
    push_to_maximal(&ideal, &cd)
}

/// Checks `A(n) / prod_{p | d} p^{v_p(A(n))} <= |u| <= |d A(n)|` for the
/// normal form `(q)(u, y - v)` of `(A(n), e*y - B(n)) Z[sqrt(f(n))]`, with
/// `d = gcd(A(n), e, B(n))`. When `gcd(A(n), e) = 1` it checks `|u| = |A(n)|`.
pub fn quadlemma_bound_check(curve: &OddHyperellipticCurve, q: &MumfordDivisor, n: &BigInt) -> Result<bool> {
    let form = AltMumfordForm::from_divisor(curve, q)?;
    let v = specialize_form(&form, curve, n)?;
    let a_abs = v.a_val.abs();
    let ideal = extend_ideal(&a_abs, &v.b_val, &v.e, &v.fval)?;
    let u = ideal.a();
    if gcd(&a_abs, &v.e).is_one() {
        return Ok(*u == a_abs);
    }
    let d = gcd_all([&a_abs, &v.e, &v.b_val]);
    let mut lower = a_abs.clone();
    for (p, _) in factorize(&d, DEFAULT_WORK_BOUND)? {
        while (&lower % &p).is_zero() {
            lower /= &p;
        }
    }
    Ok(lower <= *u && *u <= &d * &a_abs)
}

/// Whether the value was computed from a square-free `f(n)`, where the
/// maximal-order image is the class-group pairing, or only as `delta_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingStatus {
    Certified,
    DeltaOnly,
}

impl PairingStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairingStatus::Certified => "certified",
            PairingStatus::DeltaOnly => "delta_only",
        }
    }
}

/// One line of a scan. Fields that could not be computed are `None` and the
/// first failure is kept in `error`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationRow {
    pub n: BigInt,
    pub f_n: BigInt,
    pub s_n: Option<BigInt>,
    pub primitive: Option<bool>,
    pub delta: Option<IdealClass>,
    pub pairing: Option<IdealClass>,
    pub order_order: Option<u64>,
    pub order_maximal: Option<u64>,
    pub h_order: Option<u64>,
    pub h_maximal: Option<u64>,
    pub pairing_status: Option<PairingStatus>,
    pub error: Option<Error>,
}

impl SpecializationRow {
    fn empty(n: BigInt, f_n: BigInt) -> Self {
        SpecializationRow {
            n,
            f_n,
            s_n: None,
            primitive: None,
            delta: None,
            pairing: None,
            order_order: None,
            order_maximal: None,
            h_order: None,
            h_maximal: None,
            pairing_status: None,
            error: None,
        }
    }

    pub fn is_nontrivial(&self) -> bool {
        self.delta.as_ref().is_some_and(|c| !c.is_identity())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    pub work_bound: u64,
    /// Compute both class numbers per row (the dominant cost for large `|f(n)|`).
    pub class_numbers: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            work_bound: DEFAULT_WORK_BOUND,
            class_numbers: true,
        }
    }
}

fn order_with_hint(c: &IdealClass, h: Option<u64>) -> u64 {
    match h {
        Some(h) => c.order_dividing(h),
        None => c.order(),
    }
}

/// One scan row; per-`n` failures are recorded, not propagated.
pub fn evaluate_row(
    curve: &OddHyperellipticCurve,
    form: &AltMumfordForm,
    n: &BigInt,
    opts: &ScanOptions,
) -> SpecializationRow {
    let mut row = SpecializationRow::empty(n.clone(), curve.eval(n));
    if let Err(e) = fill_row(&mut row, curve, form, opts) {
        row.error = Some(e);
    }
    row
}

fn fill_row(
    row: &mut SpecializationRow,
    curve: &OddHyperellipticCurve,
    form: &AltMumfordForm,
    opts: &ScanOptions,
) -> Result<()> {
    let v = specialize_form(form, curve, &row.n)?;
    let cd: ConductorData = conductor_data(&v.fval, opts.work_bound)?;
    row.s_n = Some(cd.s.clone());
    row.pairing_status = Some(if cd.s.is_one() {
        PairingStatus::Certified
    } else {
        PairingStatus::DeltaOnly
    });
    let prim = primitivity(&v, opts.work_bound)?;
    row.primitive = Some(prim != Primitivity::NotPrimitive);
    let ideal = ideal_from_values(&v, opts.work_bound)?;
    let delta = ideal.class()?;
    if opts.class_numbers {
        row.h_order = Some(class_number(&v.fval)?);
        row.h_maximal = Some(class_number_of_discriminant(&cd.delta_k)?);
    }
    row.order_order = Some(order_with_hint(&delta, row.h_order));
    row.delta = Some(delta);
    let pairing = push_to_maximal(&ideal, &cd)?;
    row.order_maximal = Some(order_with_hint(&pairing, row.h_maximal));
    row.pairing = Some(pairing);
    Ok(())
}

/// Rows for `n = hi, hi - 1, ..., lo`.
pub fn scan(
    curve: &OddHyperellipticCurve,
    q: &MumfordDivisor,
    lo: &BigInt,
    hi: &BigInt,
    opts: &ScanOptions,
) -> Result<Vec<SpecializationRow>> {
    if hi > curve.n_f() {
        return Err(Error::RangeAboveBound {
            hi: hi.clone(),
            n_f: curve.n_f().clone(),
        });
    }
    let form = AltMumfordForm::from_divisor(curve, q)?;
    if lo > hi {
        return Ok(Vec::new());
    }
    let len = (hi - lo)
        .to_u64()
        .ok_or_else(|| Error::InternalInconsistency("scan range too long".into()))?;
    Ok((0..=len)
        .into_par_iter()
        .map(|i| evaluate_row(curve, &form, &(hi - BigInt::from(i)), opts))
        .collect())
}

/// Result of [`find_order_at_least`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub n: BigInt,
    pub pairing: IdealClass,
    pub order: u64,
    /// Number of `n` examined, from `n_f` down to the hit.
    pub examined: u64,
}

const SEARCH_CHUNK: u64 = 64;

/// Largest `n` in `[floor, n_f]` whose pairing value has order at least `k`.
/// With `squarefree_only`, only `n` with `f(n)/fd(f)` square-free count.
pub fn find_order_at_least(
    curve: &OddHyperellipticCurve,
    q: &MumfordDivisor,
    k: u64,
    floor: &BigInt,
    squarefree_only: bool,
    work_bound: u64,
) -> Result<SearchHit> {
    if k == 0 {
        return Err(Error::InternalInconsistency("k must be at least 1".into()));
    }
    let form = AltMumfordForm::from_divisor(curve, q)?;
    let fd = curve.fixed_divisor();
    let top = curve.n_f().clone();
    let not_found = || Error::NotFound {
        k,
        floor: floor.clone(),
        n_f: top.clone(),
    };
    if floor > &top {
        return Err(not_found());
    }
    let total = (&top - floor).to_u64().ok_or_else(not_found)? + 1;
    let probe = |n: &BigInt| -> Option<(IdealClass, u64)> {
        let v = specialize_form(&form, curve, n).ok()?;
        if squarefree_only {
            let reduced = v.fval.div_floor(&fd);
            if !is_squarefree_integer(&reduced, work_bound).ok()? {
                return None;
            }
        }
        let ideal = ideal_from_values(&v, work_bound).ok()?;
        let cd = conductor_data(&v.fval, work_bound).ok()?;
        let c = push_to_maximal(&ideal, &cd).ok()?;
        let order = bounded_order(&c, k);
        (order >= k).then_some((c, order))
    };
    let mut start = 0u64;
    while start < total {
        let end = (start + SEARCH_CHUNK).min(total);
        let hit = (start..end)
            .into_par_iter()
            .filter_map(|i| {
                let n = &top - BigInt::from(i);
                probe(&n).map(|r| (i, n, r))
            })
            .min_by_key(|(i, _, _)| *i);
        if let Some((i, n, (pairing, _))) = hit {
            let order = pairing.order();
            return Ok(SearchHit {
                n,
                pairing,
                order,
                examined: i + 1,
            });
        }
        start = end;
    }
    Err(not_found())
}

/// `min(order(c), k)`, stopping as soon as the order is known to reach `k`.
fn bounded_order(c: &IdealClass, k: u64) -> u64 {
    let mut acc = c.clone();
    let mut j = 1u64;
    while !acc.is_identity() {
        if j >= k {
            return k;
        }
        acc = acc.mul(c);
        j += 1;
    }
    j
}
