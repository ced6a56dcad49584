//! Integer factorisation: trial division by primes below 10^6, then
//! Miller-Rabin and Pollard-Brent rho under an explicit work bound.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub const TRIAL_LIMIT: u32 = 1_000_000;

/// Default number of rho iterations allowed per split.
pub const DEFAULT_WORK_BOUND: u64 = 2_000_000;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                (i * i..=n).step_by(i).for_each(|j| sieve[j] = false);
            }
            i += 1;
        }
        (0..=n).filter(|&i| sieve[i]).map(|i| i as u32).collect()
    })
}

/// Prime factorisation of `|n|` as sorted `(prime, exponent)` pairs.
/// `n = 0` is rejected.
pub fn factorize(n: &BigInt, work_bound: u64) -> Result<Vec<(BigInt, u32)>> {
    let mut m = n.magnitude().clone();
    if m.is_zero() {
        return Err(Error::InternalInconsistency("factorisation of zero".into()));
    }
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for &p in small_primes() {
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        let mut k = 0;
        while (&m % p).is_zero() {
            m /= p;
            k += 1;
        }
        if k > 0 {
            out.push((pb, k));
        }
    }
    if !m.is_one() {
        let limit_sq = BigUint::from(TRIAL_LIMIT) * BigUint::from(TRIAL_LIMIT);
        if m < limit_sq {
            out.push((m, 1));
        } else {
            let mut large = Vec::new();
            split_fully(m, work_bound, n, &mut large)?;
            large.sort();
            for p in large {
                match out.last_mut() {
                    Some((q, k)) if *q == p => *k += 1,
                    _ => out.push((p, 1)),
                }
            }
        }
    }
    out.sort();
    Ok(out.into_iter().map(|(p, k)| (BigInt::from(p), k)).collect())
}

fn split_fully(m: BigUint, work_bound: u64, orig: &BigInt, out: &mut Vec<BigUint>) -> Result<()> {
    if m.is_one() {
        return Ok(());
    }
    if is_probable_prime(&m) {
        out.push(m);
        return Ok(());
    }
    if let Some(r) = perfect_square_root(&m) {
        split_fully(r.clone(), work_bound, orig, out)?;
        return split_fully(r, work_bound, orig, out);
    }
    for c in 1u32..=16 {
        if let Some(g) = pollard_brent(&m, &BigUint::from(c), work_bound) {
            let other = &m / &g;
            split_fully(g, work_bound, orig, out)?;
            return split_fully(other, work_bound, orig, out);
        }
    }
    Err(Error::FactorisationFailed { value: orig.clone() })
}

fn perfect_square_root(m: &BigUint) -> Option<BigUint> {
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

pub fn is_probable_prime(n: &BigUint) -> bool {
    let two = BigUint::from(2u32);
    if n < &two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n == &BigUint::from(p) {
            return true;
        }
        if (n % p).is_zero() {
            return false;
        }
    }
    let n_minus_one = n - 1u32;
    let s = n_minus_one.trailing_zeros().unwrap_or(0);
    let d = &n_minus_one >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn abs_diff(a: &BigUint, b: &BigUint) -> BigUint {
    if a > b {
        a - b
    } else {
        b - a
    }
}

/// Brent's variant of Pollard rho; returns a proper divisor or `None` once
/// `work_bound` iterations are spent.
fn pollard_brent(n: &BigUint, c: &BigUint, work_bound: u64) -> Option<BigUint> {
    let step = |v: &BigUint| (v * v + c) % n;
    let batch = 64u64;
    let mut y = BigUint::from(2u32);
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut g = BigUint::one();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut spent = 0u64;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = step(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            for _ in 0..batch.min(r - k) {
                y = step(&y);
                q = (q * abs_diff(&x, &y)) % n;
            }
            g = q.gcd(n);
            k += batch;
        }
        spent += r;
        if spent > work_bound {
            return None;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = step(&ys);
            g = abs_diff(&x, &ys).gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Writes `v = S^2 * d` with `d` square-free (sign carried by `d`).
pub fn square_decomposition(v: &BigInt, work_bound: u64) -> Result<(BigInt, BigInt)> {
    let factors = factorize(v, work_bound)?;
    let mut s = BigInt::one();
    let mut d = BigInt::one();
    for (p, k) in &factors {
        for _ in 0..k / 2 {
            s *= p;
        }
        if k % 2 == 1 {
            d *= p;
        }
    }
    if v < &BigInt::zero() {
        d = -d;
    }
    Ok((s, d))
}

pub fn is_squarefree_integer(v: &BigInt, work_bound: u64) -> Result<bool> {
    Ok(factorize(v, work_bound)?.iter().all(|(_, k)| *k == 1))
}

pub fn distinct_prime_divisors(v: &BigInt, work_bound: u64) -> Result<Vec<BigInt>> {
    Ok(factorize(v, work_bound)?.into_iter().map(|(p, _)| p).collect())
}

/// Divisors of a small positive integer, ascending. Used for order computations.
pub fn divisors_u64(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i * i != n {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
