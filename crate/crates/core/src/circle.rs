//! The unit circle μ_{2^m+1} inside GF(2^{2m}).
//!
//! The circle is the kernel of the relative norm onto GF(2^m): the set of x
//! with x^(2^m+1) = 1. It is cyclic of order 2^m + 1, generated by
//! γ^(2^m−1) for any primitive γ of the big field. On the circle the
//! Frobenius iterate x -> x^(2^m) acts as inversion, which the downstream
//! trinomial analysis leans on constantly.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// The multiplicative subgroup of order 2^m + 1 in a degree-2m field.
pub struct UnitCircle<'f> {
    field: &'f Field,
    m: u32,
    generator: u64,
    order: u64,
}

/// Construct the unit circle of a degree-2m field context.
///
/// The generator is derived as γ^(2^m−1) from the smallest primitive element
/// γ, whose primitivity is certified by checking γ^((2^n−1)/p) ≠ 1 for every
/// prime p dividing 2^n − 1 (factored by trial division).
pub fn make_circle(field: &Field, m: u32) -> Result<UnitCircle<'_>> {
    if m == 0 || field.degree() != 2 * m {
        return Err(Error::DegreeMismatch {
            expected: 2 * m,
            actual: field.degree(),
        });
    }
    let gamma = field.primitive_element();
    let generator = field.pow_raw(gamma, (1u64 << m) - 1);
    let order = (1u64 << m) + 1;
    debug_assert_eq!(field.pow_raw(generator, order), 1);
    Ok(UnitCircle {
        field,
        m,
        generator,
        order,
    })
}

impl<'f> UnitCircle<'f> {
    pub fn field(&self) -> &'f Field {
        self.field
    }

    /// The half-degree m (the field has degree 2m).
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of circle elements, 2^m + 1.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generator(&self) -> FieldElement {
        self.field
            .el(self.generator)
            .expect("generator is a field element by construction")
    }

    /// Membership test on a raw word: x^(2^m)·x = 1.
    #[inline]
    pub fn contains_raw(&self, x: u64) -> bool {
        self.field.mul_raw(self.field.frobenius_raw(x, self.m), x) == 1
    }

    /// Membership test: true iff x^(2^m+1) = 1.
    pub fn contains(&self, x: FieldElement) -> Result<bool> {
        Ok(self.contains_raw(self.field.check(x)?))
    }

    /// All 2^m + 1 circle elements as raw words, in generator-power order
    /// (1, g, g^2, ...).
    pub fn enumerate_raw(&self) -> impl Iterator<Item = u64> + '_ {
        let mut acc = 1u64;
        (0..self.order).map(move |_| {
            let current = acc;
            acc = self.field.mul_raw(acc, self.generator);
            current
        })
    }

    /// All 2^m + 1 circle elements, in generator-power order.
    pub fn enumerate(&self) -> impl Iterator<Item = FieldElement> + '_ {
        self.enumerate_raw().map(move |x| {
            self.field
                .el(x)
                .expect("generator powers are field elements")
        })
    }

    /// Inverse of a circle element via x^(2^m) (Frobenius acts as inversion
    /// on the circle); errors if x is not on the circle.
    pub fn inverse_on_circle(&self, x: FieldElement) -> Result<FieldElement> {
        let bits = self.field.check(x)?;
        if !self.contains_raw(bits) {
            return Err(Error::NotOnCircle { element: bits });
        }
        self.field.el(self.field.frobenius_raw(bits, self.m))
    }
}
