//! Polynomials over GF(2) packed into `u64` words.
//!
//! Bit i of a word is the coefficient of x^i, so a polynomial of degree up to
//! 63 fits in one word. This is the substrate for reduction-polynomial
//! validation: multiplication modulo a word, gcd, and two independent
//! irreducibility tests (a Frobenius-ladder test used in production and an
//! exhaustive trial-division test kept as an oracle for small degrees).

use crate::arith::prime_factors;

/// Degree of `p`, or `None` for the zero polynomial.
pub fn degree(p: u64) -> Option<u32> {
    if p == 0 {
        None
    } else {
        Some(63 - p.leading_zeros())
    }
}

/// Quotient and remainder of `num / den` over GF(2). Panics if `den` is zero.
pub fn divrem(num: u64, den: u64) -> (u64, u64) {
    let dd = degree(den).expect("division by the zero polynomial");
    let mut q = 0u64;
    let mut r = num;
    while let Some(dr) = degree(r) {
        if dr < dd {
            break;
        }
        let shift = dr - dd;
        q |= 1 << shift;
        r ^= den << shift;
    }
    (q, r)
}

/// Remainder of `num` modulo `den` over GF(2).
pub fn rem(num: u64, den: u64) -> u64 {
    divrem(num, den).1
}

/// Greatest common divisor over GF(2)[x] (monic by construction).
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// Product of `a` and `b` reduced modulo `modulus` (degree k <= 63).
///
/// Requires deg a < k; reduces on the fly so intermediates stay in one word.
#[inline]
pub fn mulmod(mut a: u64, mut b: u64, modulus: u64) -> u64 {
    let k = degree(modulus).expect("zero modulus");
    debug_assert!(degree(a).is_none_or(|d| d < k));
    let mut acc = 0u64;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> k) & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

/// Irreducibility over GF(2) via the Frobenius ladder.
///
/// `f` of degree k is irreducible iff x^(2^k) = x (mod f) and, for every
/// prime p dividing k, gcd(x^(2^(k/p)) - x, f) = 1. Degree-1 polynomials are
/// irreducible; constants and zero are not.
pub fn is_irreducible(f: u64) -> bool {
    let k = match degree(f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(k) => k,
    };
    if f & 1 == 0 {
        return false; // divisible by x
    }
    let x = 2u64;
    let checkpoints: Vec<u32> = prime_factors(u64::from(k))
        .iter()
        .map(|&p| k / p as u32)
        .collect();
    let mut t = x;
    for i in 1..=k {
        t = mulmod(t, t, f);
        if checkpoints.contains(&i) && gcd(t ^ x, f) != 1 {
            return false;
        }
    }
    t == x
}

/// Irreducibility by exhaustive trial division (oracle; intended for k <= 16).
///
/// Divides by every polynomial of degree 1..=k/2; agreement with
/// [`is_irreducible`] on those degrees is part of the test suite.
pub fn is_irreducible_trial_division(f: u64) -> bool {
    let k = match degree(f) {
        None | Some(0) => return false,
        Some(1) => return true,
        Some(k) => k,
    };
    let max_deg = k / 2;
    for d in 2..1u64 << (max_deg + 1) {
        if rem(f, d) == 0 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest irreducible of degree `k` (coefficient
/// bitstring read as an integer), restricted to polynomials with constant
/// term 1 as required of reduction polynomials.
pub fn smallest_irreducible(k: u32) -> u64 {
    assert!((1..=63).contains(&k), "degree out of range");
    let mut cand = (1u64 << k) | 1;
    loop {
        if is_irreducible(cand) {
            return cand;
        }
        cand += 2;
    }
}
