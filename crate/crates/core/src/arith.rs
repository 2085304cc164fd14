//! Small integer helpers: valuations, prime parts, trial-division factoring.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    let mut d = BigInt::from(2);
    while &d * &d <= *n {
        if n.is_multiple_of(&d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `|n|` in increasing order (`n ≠ 0`).
pub fn prime_divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            out.push(d.clone());
            while n.is_multiple_of(&d) {
                n /= &d;
            }
        }
        d += 1;
    }
    if n > BigInt::one() {
        out.push(n);
    }
    out
}

/// Exponent of `p` in `n` (`n ≠ 0`).
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// The largest power of `p` dividing `n` (`n ≠ 0`).
pub fn p_part(n: &BigInt, p: &BigInt) -> BigInt {
    num_traits::pow(p.clone(), valuation(n, p) as usize)
}

/// True when `n > 0` is a power of `p` (including `p⁰ = 1`).
pub fn is_power_of(n: &BigInt, p: &BigInt) -> bool {
    n.is_positive() && &p_part(n, p) == n
}

pub fn lcm_all<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x))
}

/// Positive divisors of `n > 0` in increasing order.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = vec![BigInt::one()];
    let mut m = n.abs();
    for p in prime_divisors(n) {
        let mut pk = BigInt::one();
        let base = out.clone();
        while m.is_multiple_of(&p) {
            m /= &p;
            pk *= &p;
            out.extend(base.iter().map(|d| d * &pk));
        }
    }
    out.sort();
    out
}
