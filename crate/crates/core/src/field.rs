//! Binary field contexts GF(2^k) with exact, word-packed arithmetic.
//!
//! A [`Field`] owns a validated reduction polynomial and a multiplication
//! strategy: log/exp tables for small degrees, a generic shift-reduce loop
//! above that. The two strategies are interchangeable and the test suite
//! requires them to agree bit-for-bit; [`Field::new_shift_reduce`] exists so
//! cross-checks can force the generic path on table-sized fields.
//!
//! Elements are plain `u64` bit vectors (bit i = coefficient of x^i). The
//! checked API wraps them in [`FieldElement`], which remembers the reduction
//! polynomial of the context that made it; mixing elements from different
//! contexts is an error, not a silent wrong answer. Every checked operation
//! has a `_raw` counterpart on bare words for inner loops.

use std::fmt;

use crate::arith::prime_factors;
use crate::error::{Error, Result};
use crate::f2poly;

/// Largest supported extension degree; elements must fit one `u64` word.
pub const MAX_DEGREE: u32 = 63;

/// Degrees at or below this bound use log/exp multiplication tables
/// (2^22 entries of `u32` keeps both tables under 48 MiB).
const TABLE_DEGREE_CAP: u32 = 22;

/// An element of a specific field context.
///
/// The element remembers the reduction polynomial it was created under, so
/// checked operations can reject cross-context mixing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    bits: u64,
    field: u64,
}

impl FieldElement {
    /// The element's coefficient bit vector.
    pub fn bits(self) -> u64 {
        self.bits
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.bits)
    }
}

enum MulStrategy {
    Table { log: Box<[u32]>, exp: Box<[u32]> },
    ShiftReduce,
}

/// A context for GF(2^k) arithmetic under a fixed reduction polynomial.
pub struct Field {
    k: u32,
    poly: u64,
    order: u64,
    strategy: MulStrategy,
}

/// Build a field context from a spec string such as `"k=5,poly=0x25"`.
///
/// The `poly` entry is optional; when omitted, the reduction polynomial
/// defaults to the smallest irreducible of the requested degree (by integer
/// value of the coefficient bitstring).
pub fn make_field(spec: &str) -> Result<Field> {
    let mut k: Option<u32> = None;
    let mut poly: Option<u64> = None;
    for part in spec.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value, got `{part}`")))?;
        match (key.trim(), value.trim()) {
            ("k", v) => {
                k = Some(
                    v.parse()
                        .map_err(|_| Error::Parse(format!("bad degree `{v}`")))?,
                );
            }
            ("poly", v) => {
                let parsed =
                    if let Some(hex) = v.strip_prefix("0x").or_else(|| v.strip_prefix("0X")) {
                        u64::from_str_radix(hex, 16)
                    } else {
                        v.parse()
                    };
                poly = Some(parsed.map_err(|_| Error::Parse(format!("bad polynomial `{v}`")))?);
            }
            (other, _) => {
                return Err(Error::Parse(format!("unknown field-spec key `{other}`")));
            }
        }
    }
    let k = k.ok_or_else(|| Error::Parse("field spec is missing `k=`".into()))?;
    Field::new(k, poly)
}

impl Field {
    /// Create GF(2^k) under `poly`, or under the default (smallest)
    /// irreducible of degree `k` when `poly` is `None`.
    pub fn new(k: u32, poly: Option<u64>) -> Result<Field> {
        Self::build(k, poly, k <= TABLE_DEGREE_CAP)
    }

    /// Create a context that always multiplies via the generic shift-reduce
    /// loop, even at table-sized degrees. Arithmetic results are identical to
    /// [`Field::new`]; this exists so tests can cross-check the two paths.
    pub fn new_shift_reduce(k: u32, poly: Option<u64>) -> Result<Field> {
        Self::build(k, poly, false)
    }

    fn build(k: u32, poly: Option<u64>, tables: bool) -> Result<Field> {
        if k == 0 || k > MAX_DEGREE {
            return Err(Error::InvalidSpec(format!(
                "extension degree must be in 1..={MAX_DEGREE}, got {k}"
            )));
        }
        let poly = match poly {
            Some(p) => {
                let actual = f2poly::degree(p).unwrap_or(0);
                if actual != k {
                    return Err(Error::DegreeMismatch {
                        expected: k,
                        actual,
                    });
                }
                if !f2poly::is_irreducible(p) {
                    return Err(Error::ReduciblePolynomial { poly: p });
                }
                p
            }
            None => f2poly::smallest_irreducible(k),
        };
        let order = 1u64 << k;
        let mut field = Field {
            k,
            poly,
            order,
            strategy: MulStrategy::ShiftReduce,
        };
        if tables {
            field.strategy = field.build_tables();
        }
        Ok(field)
    }

    fn build_tables(&self) -> MulStrategy {
        let n1 = self.order - 1; // multiplicative group order
        let g = self.primitive_element();
        let mut exp = vec![0u32; (2 * n1) as usize];
        let mut log = vec![u32::MAX; self.order as usize];
        let mut acc = 1u64;
        for i in 0..n1 {
            exp[i as usize] = acc as u32;
            log[acc as usize] = i as u32;
            acc = f2poly::mulmod(acc, g, self.poly);
        }
        debug_assert_eq!(acc, 1, "generator order does not divide group order");
        for i in n1..2 * n1 {
            exp[i as usize] = exp[(i - n1) as usize];
        }
        MulStrategy::Table {
            log: log.into_boxed_slice(),
            exp: exp.into_boxed_slice(),
        }
    }

    /// Extension degree k.
    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Reduction polynomial bits.
    pub fn poly(&self) -> u64 {
        self.poly
    }

    /// Number of field elements, 2^k.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Wrap raw bits as a checked element of this context.
    pub fn el(&self, bits: u64) -> Result<FieldElement> {
        if bits >= self.order {
            return Err(Error::ElementOutOfRange {
                bits,
                degree: self.k,
            });
        }
        Ok(FieldElement {
            bits,
            field: self.poly,
        })
    }

    /// The additive identity.
    pub fn zero(&self) -> FieldElement {
        FieldElement {
            bits: 0,
            field: self.poly,
        }
    }

    /// The multiplicative identity.
    pub fn one(&self) -> FieldElement {
        FieldElement {
            bits: 1,
            field: self.poly,
        }
    }

    /// Iterate every element of the field in bit order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(move |bits| FieldElement {
            bits,
            field: self.poly,
        })
    }

    pub(crate) fn check(&self, x: FieldElement) -> Result<u64> {
        if x.field != self.poly {
            return Err(Error::ContextMismatch);
        }
        Ok(x.bits)
    }

    fn wrap(&self, bits: u64) -> FieldElement {
        debug_assert!(bits < self.order);
        FieldElement {
            bits,
            field: self.poly,
        }
    }

    // ------------------------------------------------------------------
    // raw word-level operations
    // ------------------------------------------------------------------

    /// Addition = bitwise xor (characteristic 2).
    #[inline]
    pub fn add_raw(&self, a: u64, b: u64) -> u64 {
        a ^ b
    }

    /// Multiplication under the context's strategy.
    #[inline]
    pub fn mul_raw(&self, a: u64, b: u64) -> u64 {
        match &self.strategy {
            MulStrategy::Table { log, exp } => {
                if a == 0 || b == 0 {
                    0
                } else {
                    let i = log[a as usize] as usize + log[b as usize] as usize;
                    u64::from(exp[i])
                }
            }
            MulStrategy::ShiftReduce => f2poly::mulmod(a, b, self.poly),
        }
    }

    /// `a` squared.
    #[inline]
    pub fn sq_raw(&self, a: u64) -> u64 {
        self.mul_raw(a, a)
    }

    /// `a` raised to the `e`-th power (`0^0 = 1`).
    pub fn pow_raw(&self, a: u64, e: u64) -> u64 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n1 = self.order - 1;
        let e = e % n1;
        if let MulStrategy::Table { log, exp } = &self.strategy {
            if n1 == 1 {
                return 1;
            }
            let i = (u128::from(log[a as usize]) * u128::from(e) % u128::from(n1)) as usize;
            return u64::from(exp[i]);
        }
        let mut base = a;
        let mut acc = 1u64;
        let mut e = e;
        while e != 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.sq_raw(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv_raw(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if let MulStrategy::Table { log, exp } = &self.strategy {
            let n1 = self.order - 1;
            return Ok(u64::from(exp[(n1 - u64::from(log[a as usize])) as usize]));
        }
        Ok(self.pow_raw(a, self.order - 2))
    }

    /// The Frobenius map x -> x^(2^j), i.e. `j mod k` squarings.
    pub fn frobenius_raw(&self, a: u64, j: u32) -> u64 {
        let mut t = a;
        for _ in 0..(j % self.k) {
            t = self.sq_raw(t);
        }
        t
    }

    /// Square root (unique in characteristic 2): x^(2^(k-1)).
    pub fn sqrt_raw(&self, a: u64) -> u64 {
        self.frobenius_raw(a, self.k - 1)
    }

    /// Absolute trace to GF(2); always 0 or 1.
    pub fn trace_raw(&self, a: u64) -> u64 {
        let mut t = a;
        let mut acc = a;
        for _ in 1..self.k {
            t = self.sq_raw(t);
            acc ^= t;
        }
        debug_assert!(acc <= 1, "trace landed outside the prime subfield");
        acc
    }

    /// Half-trace H(a) = sum of a^(2^(2i)) for 2i < k; requires odd k.
    ///
    /// For odd degree, H(a)^2 + H(a) = a + trace(a), so H solves the
    /// Artin-Schreier equation whenever the trace vanishes.
    pub fn half_trace_raw(&self, a: u64) -> u64 {
        assert!(self.k % 2 == 1, "half-trace requires odd extension degree");
        let mut acc = a;
        let mut t = a;
        for _ in 0..(self.k - 1) / 2 {
            t = self.sq_raw(self.sq_raw(t));
            acc ^= t;
        }
        acc
    }

    /// Relative norm onto the index-2 subfield: a^(2^m + 1) with k = 2m.
    pub fn norm_raw(&self, a: u64) -> u64 {
        assert!(
            self.k.is_multiple_of(2),
            "norm onto GF(2^m) requires k = 2m"
        );
        self.mul_raw(self.frobenius_raw(a, self.k / 2), a)
    }

    /// Membership in the subfield GF(2^m); requires m | k.
    ///
    /// The subfield is exactly the fixed set of x -> x^(2^m), so no tower
    /// representation is needed.
    pub fn in_subfield_raw(&self, a: u64, m: u32) -> bool {
        assert!(
            m >= 1 && self.k.is_multiple_of(m),
            "GF(2^m) must be a subfield"
        );
        self.frobenius_raw(a, m) == a
    }

    /// Roots of x^2 + a x + b, sorted by bit value: empty, one (a double
    /// root), or two.
    pub fn solve_quadratic_raw(&self, a: u64, b: u64) -> Vec<u64> {
        if a == 0 {
            // x^2 = b has the single root sqrt(b).
            return vec![self.sqrt_raw(b)];
        }
        let a_inv = self.inv_raw(a).expect("nonzero by the branch above");
        let c = self.mul_raw(self.mul_raw(b, a_inv), a_inv);
        if self.trace_raw(c) == 1 {
            return vec![];
        }
        let y = self.artin_schreier_root(c);
        debug_assert_eq!(self.sq_raw(y) ^ y, c);
        let r1 = self.mul_raw(a, y);
        let r2 = r1 ^ a;
        let mut roots = vec![r1, r2];
        roots.sort_unstable();
        roots
    }

    /// A solution y of y^2 + y = c, assuming trace(c) = 0.
    fn artin_schreier_root(&self, c: u64) -> u64 {
        debug_assert_eq!(self.trace_raw(c), 0);
        if self.k % 2 == 1 {
            return self.half_trace_raw(c);
        }
        // Even degree: pick any delta of trace 1 and use the telescoping
        // solution y = sum_i c^(2^i) * s_i with s_i = sum_{j>i} delta^(2^j).
        let delta = (1..self.order)
            .find(|&d| self.trace_raw(d) == 1)
            .expect("trace is onto GF(2)");
        let k = self.k as usize;
        let mut delta_pow = vec![0u64; k]; // delta^(2^j)
        delta_pow[0] = delta;
        for j in 1..k {
            delta_pow[j] = self.sq_raw(delta_pow[j - 1]);
        }
        let mut s = vec![0u64; k - 1];
        s[k - 2] = delta_pow[k - 1];
        for i in (0..k - 2).rev() {
            s[i] = s[i + 1] ^ delta_pow[i + 1];
        }
        let mut y = 0u64;
        let mut c_pow = c;
        for si in s {
            y ^= self.mul_raw(c_pow, si);
            c_pow = self.sq_raw(c_pow);
        }
        y
    }

    /// The smallest multiplicative generator, certified by checking
    /// g^((2^k - 1)/p) != 1 for every prime p dividing the group order.
    pub fn primitive_element(&self) -> u64 {
        if self.order == 2 {
            return 1;
        }
        let n1 = self.order - 1;
        let primes = prime_factors(n1);
        'outer: for cand in 2..self.order {
            for &p in &primes {
                if self.pow_raw(cand, n1 / p) == 1 {
                    continue 'outer;
                }
            }
            return cand;
        }
        unreachable!("the multiplicative group of a finite field is cyclic")
    }

    // ------------------------------------------------------------------
    // checked element-level operations
    // ------------------------------------------------------------------

    pub fn add(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.check(x)? ^ self.check(y)?))
    }

    pub fn mul(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.mul_raw(self.check(x)?, self.check(y)?)))
    }

    pub fn inv(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.inv_raw(self.check(x)?)?))
    }

    pub fn div(&self, x: FieldElement, y: FieldElement) -> Result<FieldElement> {
        let y = self.inv_raw(self.check(y)?)?;
        Ok(self.wrap(self.mul_raw(self.check(x)?, y)))
    }

    pub fn pow(&self, x: FieldElement, e: u64) -> Result<FieldElement> {
        Ok(self.wrap(self.pow_raw(self.check(x)?, e)))
    }

    pub fn frobenius(&self, x: FieldElement, j: u32) -> Result<FieldElement> {
        Ok(self.wrap(self.frobenius_raw(self.check(x)?, j)))
    }

    pub fn sqrt(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.sqrt_raw(self.check(x)?)))
    }

    pub fn trace(&self, x: FieldElement) -> Result<u64> {
        Ok(self.trace_raw(self.check(x)?))
    }

    pub fn half_trace(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.half_trace_raw(self.check(x)?)))
    }

    pub fn norm(&self, x: FieldElement) -> Result<FieldElement> {
        Ok(self.wrap(self.norm_raw(self.check(x)?)))
    }

    pub fn in_subfield(&self, x: FieldElement, m: u32) -> Result<bool> {
        Ok(self.in_subfield_raw(self.check(x)?, m))
    }

    pub fn solve_quadratic(&self, a: FieldElement, b: FieldElement) -> Result<Vec<FieldElement>> {
        let roots = self.solve_quadratic_raw(self.check(a)?, self.check(b)?);
        Ok(roots.into_iter().map(|r| self.wrap(r)).collect())
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("k", &self.k)
            .field("poly", &format_args!("{:#x}", self.poly))
            .field(
                "strategy",
                &match self.strategy {
                    MulStrategy::Table { .. } => "table",
                    MulStrategy::ShiftReduce => "shift-reduce",
                },
            )
            .finish()
    }
}
