//! The trinomial family x + x^(s(2^m−1)+1) + x^(t(2^m−1)+1) over GF(2^{2m})
//! and its restriction to the unit circle.
//!
//! Both non-linear exponents are congruent to 1 modulo 2^m − 1, so the whole
//! map is determined by its behaviour on μ_{2^m+1}: deciding whether the
//! trinomial permutes the field reduces to an eleventh-degree polynomial
//! equation on the circle, whose root counts this module computes.

use crate::arith::mod_inverse;
use crate::circle::UnitCircle;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::poly::{roots_in_set_raw, UniPoly};

/// A member of the Niho-exponent trinomial family over GF(2^{2m}).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NihoTrinomial {
    m: u32,
    s: u64,
    t: u64,
    e_s: u64,
    e_t: u64,
}

/// The studied parameter pair (s, t) = (4·11^{-1}, 10·11^{-1}) mod 2^m + 1.
///
/// Errors with [`Error::NotInvertible`] when 11 shares a factor with
/// 2^m + 1, which happens exactly for m ≡ 5 (mod 10).
pub fn conjecture_exponents(m: u32) -> Result<(u64, u64)> {
    assert!(
        m >= 1 && 2 * m <= 63,
        "the family needs 1 <= m and 2m <= 63"
    );
    let d = (1u64 << m) + 1;
    let inv11 = mod_inverse(11 % d, d).ok_or(Error::NotInvertible { modulus: d })?;
    Ok((4 * inv11 % d, 10 * inv11 % d))
}

impl NihoTrinomial {
    /// Build the trinomial for arbitrary residues (s, t) mod 2^m + 1.
    pub fn new(m: u32, s: u64, t: u64) -> NihoTrinomial {
        assert!(m >= 1 && 2 * m <= 63, "field degree 2m must fit one word");
        let d = (1u64 << m) + 1;
        let s = s % d;
        let t = t % d;
        NihoTrinomial {
            m,
            s,
            t,
            e_s: reduce_exponent(m, s),
            e_t: reduce_exponent(m, t),
        }
    }

    /// The trinomial with the studied parameters for this m.
    pub fn conjecture(m: u32) -> Result<NihoTrinomial> {
        let (s, t) = conjecture_exponents(m)?;
        Ok(NihoTrinomial::new(m, s, t))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// The parameter residues (s, t) mod 2^m + 1.
    pub fn parameters(&self) -> (u64, u64) {
        (self.s, self.t)
    }

    /// The reduced exponents (e_s, e_t) of the two non-linear terms, each in
    /// [1, 2^{2m} − 1].
    pub fn exponents(&self) -> (u64, u64) {
        (self.e_s, self.e_t)
    }

    /// Raw evaluation of x + x^{e_s} + x^{e_t}.
    ///
    /// Colliding exponents cancel in characteristic two exactly as the field
    /// dictates (e.g. the whole map can degenerate to x or to a monomial).
    #[inline]
    pub fn eval_raw(&self, f: &Field, x: u64) -> u64 {
        x ^ f.pow_raw(x, self.e_s) ^ f.pow_raw(x, self.e_t)
    }

    /// Evaluate the trinomial at x in GF(2^{2m}).
    pub fn eval(&self, f: &Field, x: FieldElement) -> Result<FieldElement> {
        self.check_field(f)?;
        let x = f.check(x)?;
        f.el(self.eval_raw(f, x))
    }

    fn check_field(&self, f: &Field) -> Result<()> {
        if f.degree() != 2 * self.m {
            return Err(Error::DegreeMismatch {
                expected: 2 * self.m,
                actual: f.degree(),
            });
        }
        Ok(())
    }

    /// Decompose the trinomial as x^r · h(x^sc) for the splitting criterion:
    /// r = 1, h(y) = 1 + y^s + y^t, sc = 2^m − 1, d = 2^m + 1 (so that
    /// d·sc = 2^{2m} − 1). Returns (r, h, d, sc). Colliding h terms cancel
    /// by xor, mirroring the field arithmetic.
    pub fn lemma1_parts(&self) -> (u64, UniPoly, u64, u64) {
        let mut coeffs = vec![0u64; (self.s.max(self.t) + 1) as usize];
        coeffs[0] ^= 1;
        coeffs[self.s as usize] ^= 1;
        coeffs[self.t as usize] ^= 1;
        let d = (1u64 << self.m) + 1;
        let sc = (1u64 << self.m) - 1;
        (1, UniPoly::new(coeffs), d, sc)
    }
}

/// Evaluate a trinomial at a field point (free-function form of
/// [`NihoTrinomial::eval`]).
pub fn trinomial_eval(f: &NihoTrinomial, field: &Field, x: FieldElement) -> Result<FieldElement> {
    f.eval(field, x)
}

/// Map exponent s(2^m−1)+1 into the canonical range [1, 2^{2m}−1].
///
/// Nonzero exponents may be reduced mod 2^{2m}−1 only within [1, q−1]
/// (never to 0), which preserves both x^e at x = 0 and on the rest of the
/// field, since x^{q−1} = 1 for x ≠ 0.
fn reduce_exponent(m: u32, s: u64) -> u64 {
    let q1 = (1u64 << (2 * m)) - 1; // q − 1
    let e = (u128::from(s) * u128::from((1u64 << m) - 1) + 1) % u128::from(q1);
    if e == 0 {
        q1
    } else {
        e as u64
    }
}

/// Coefficients of F_t(x) = x^11 + t·x^10 + x^7 + t·x^4 + x + t, the
/// polynomial whose circle roots govern injectivity of the restricted map.
pub fn f_t_poly(t: u64) -> UniPoly {
    UniPoly::new(vec![t, 1, 0, 0, t, 0, 0, 1, 0, 0, t, 1])
}

/// Evaluate the circle map (x^11 + x^7 + x) / (x^10 + x^4 + 1) at a circle
/// element, on raw words. Errors if x is off the circle or the denominator
/// vanishes (which cannot happen for gcd(m,5) = 1; the error is a tripwire,
/// not a code path the studied regime reaches).
pub fn circle_map_eval_raw(c: &UnitCircle<'_>, x: u64) -> Result<u64> {
    if !c.contains_raw(x) {
        return Err(Error::NotOnCircle { element: x });
    }
    let f = c.field();
    let x4 = f.pow_raw(x, 4);
    let x7 = f.pow_raw(x, 7);
    let x10 = f.mul_raw(x4, f.mul_raw(x, f.mul_raw(x4, x)));
    let num = f.mul_raw(x10, x) ^ x7 ^ x;
    let den = x10 ^ x4 ^ 1;
    if den == 0 {
        return Err(Error::DenominatorVanished { at: x });
    }
    let image = f.mul_raw(num, f.inv_raw(den)?);
    assert!(
        c.contains_raw(image),
        "circle map left the circle at {x:#x}"
    );
    Ok(image)
}

/// Evaluate the circle map at a circle element.
pub fn circle_map_eval(c: &UnitCircle<'_>, x: FieldElement) -> Result<FieldElement> {
    let bits = c.field().check(x)?;
    c.field().el(circle_map_eval_raw(c, bits)?)
}

/// Number of circle roots of F_t for a circle element t.
///
/// The permutation statement for the family is equivalent to this count
/// being exactly 1 for every t on the circle.
pub fn eq4_root_count(c: &UnitCircle<'_>, t: FieldElement) -> Result<u64> {
    let t = c.field().check(t)?;
    eq4_root_count_raw(c, t)
}

/// Raw-word version of [`eq4_root_count`].
pub fn eq4_root_count_raw(c: &UnitCircle<'_>, t: u64) -> Result<u64> {
    if !c.contains_raw(t) {
        return Err(Error::NotOnCircle { element: t });
    }
    let coeffs = f_t_poly(t);
    Ok(roots_in_set_raw(c.field(), coeffs.coeffs(), c.enumerate_raw()).len() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::make_circle;
    use crate::field::Field;

    #[test]
    fn studied_parameters_are_pinned() {
        let cases = [
            (1, (2, 2)),
            (2, (4, 0)),
            (3, (2, 5)),
            (4, (5, 4)),
            (6, (24, 60)),
            (7, (59, 83)),
            (8, (234, 71)),
        ];
        for (m, want) in cases {
            assert_eq!(conjecture_exponents(m).unwrap(), want, "m={m}");
        }
        for m in [5, 15] {
            let d = (1u64 << m) + 1;
            assert!(
                matches!(conjecture_exponents(m), Err(Error::NotInvertible { modulus }) if modulus == d),
                "m={m}"
            );
        }
    }

    #[test]
    fn exponents_have_the_niho_shape() {
        for m in 1..=8u32 {
            if m == 5 {
                continue;
            }
            let tri = NihoTrinomial::conjecture(m).unwrap();
            let (e_s, e_t) = tri.exponents();
            let sub = (1u64 << m) - 1;
            let q1 = (1u64 << (2 * m)) - 1;
            for e in [e_s, e_t] {
                assert!(e >= 1 && e <= q1);
                assert_eq!((e - 1) % sub, 0, "e ≡ 1 mod 2^m−1 (m={m}, e={e})");
            }
        }
        // Exponent derivation depends on s only through its residue.
        let d = (1u64 << 4) + 1;
        assert_eq!(
            NihoTrinomial::new(4, 3, 9).exponents(),
            NihoTrinomial::new(4, 3 + d, 9 + 2 * d).exponents()
        );
    }

    #[test]
    fn degenerate_families_collapse_honestly() {
        // m=1: both exponents become 3 and the terms cancel, leaving x.
        let f = Field::new(2, None).unwrap();
        let tri = NihoTrinomial::conjecture(1).unwrap();
        for x in 0..f.order() {
            assert_eq!(tri.eval_raw(&f, x), x);
        }
        // m=2: t ≡ 0 gives a third term x which cancels the linear term,
        // so the map is exactly x^13 pointwise.
        let f = Field::new(4, None).unwrap();
        let tri = NihoTrinomial::conjecture(2).unwrap();
        assert_eq!(tri.exponents(), (13, 1));
        for x in 0..f.order() {
            assert_eq!(tri.eval_raw(&f, x), f.pow_raw(x, 13));
        }
    }

    #[test]
    fn eval_anchors() {
        let f = Field::new(6, None).unwrap();
        let tri = NihoTrinomial::conjecture(3).unwrap();
        assert_eq!(tri.exponents(), (15, 36));
        assert_eq!(tri.eval_raw(&f, 0), 0);
        assert_eq!(tri.eval_raw(&f, 1), 1);
        assert_eq!(tri.eval_raw(&f, 0x2), 0x3c);
        assert_eq!(tri.eval_raw(&f, 0x3), 0x3);
        // checked API agrees and enforces the field degree
        let x = f.el(0x2).unwrap();
        assert_eq!(trinomial_eval(&tri, &f, x).unwrap().bits(), 0x3c);
        let wrong = Field::new(4, None).unwrap();
        assert!(matches!(
            trinomial_eval(&tri, &wrong, wrong.one()),
            Err(Error::DegreeMismatch {
                expected: 6,
                actual: 4
            })
        ));
    }

    #[test]
    fn circle_map_fixes_one_and_stays_on_circle() {
        let f = Field::new(6, None).unwrap();
        let c = make_circle(&f, 3).unwrap();
        assert_eq!(circle_map_eval_raw(&c, 1).unwrap(), 1);
        for x in c.enumerate_raw() {
            let y = circle_map_eval_raw(&c, x).unwrap();
            assert!(c.contains_raw(y));
        }
        assert!(matches!(
            circle_map_eval_raw(&c, 0x2),
            Err(Error::NotOnCircle { element: 0x2 })
        ));
    }

    #[test]
    fn ratio_form_agrees_with_power_form() {
        // On the circle, x^(2^m) = x^{-1} turns the ratio into
        // x^11 · (1 + x^4 + x^10)^(2^m − 1); both are evaluated
        // independently here.
        for m in [2u32, 3, 4] {
            let f = Field::new(2 * m, None).unwrap();
            let c = make_circle(&f, m).unwrap();
            let e = (1u64 << m) - 1;
            for x in c.enumerate_raw() {
                let ratio = circle_map_eval_raw(&c, x).unwrap();
                let unit = 1 ^ f.pow_raw(x, 4) ^ f.pow_raw(x, 10);
                let power_form = f.mul_raw(f.pow_raw(x, 11), f.pow_raw(unit, e));
                assert_eq!(ratio, power_form, "m={m} x={x:#x}");
            }
        }
    }

    #[test]
    fn root_counts_are_all_one_in_the_proved_regime() {
        for m in [1u32, 3] {
            let f = Field::new(2 * m, None).unwrap();
            let c = make_circle(&f, m).unwrap();
            for t in c.enumerate_raw() {
                assert_eq!(eq4_root_count_raw(&c, t).unwrap(), 1, "m={m} t={t:#x}");
            }
        }
    }

    #[test]
    fn root_counts_in_the_excluded_regime() {
        // m=5 sits outside the theorem (11 divides 2^m+1); the counter runs
        // honestly and finds t values with many roots.
        let f = Field::new(10, None).unwrap();
        let c = make_circle(&f, 5).unwrap();
        let mut histogram = std::collections::BTreeMap::new();
        let mut heavy = Vec::new();
        for t in c.enumerate_raw() {
            let n = eq4_root_count_raw(&c, t).unwrap();
            *histogram.entry(n).or_insert(0u64) += 1;
            if n > 1 {
                heavy.push(t);
            }
        }
        let expected: std::collections::BTreeMap<u64, u64> =
            [(0, 20), (1, 11), (11, 2)].into_iter().collect();
        assert_eq!(histogram, expected);
        heavy.sort_unstable();
        assert_eq!(heavy, vec![0xec, 0xed]);
    }

    #[test]
    fn splitting_decomposition_reproduces_the_trinomial() {
        // x·h(x^(2^m−1)) with h(y) = 1 + y^s + y^t is the trinomial itself,
        // pointwise over the whole field.
        for m in [1u32, 2, 3, 4] {
            let f = Field::new(2 * m, None).unwrap();
            let tri = NihoTrinomial::conjecture(m).unwrap();
            let (r, h, d, sc) = tri.lemma1_parts();
            assert_eq!(r, 1);
            assert_eq!(d * sc, f.order() - 1);
            for x in 0..f.order() {
                assert_eq!(
                    tri.eval_raw(&f, x),
                    crate::perm::cyclotomic_map_raw(&f, r, &h, sc, x),
                    "m={m} x={x:#x}"
                );
            }
        }
        // the degenerate shapes collapse inside h
        let (_, h, _, _) = NihoTrinomial::conjecture(1).unwrap().lemma1_parts();
        assert_eq!(h, UniPoly::one());
        let (_, h, _, _) = NihoTrinomial::conjecture(2).unwrap().lemma1_parts();
        assert_eq!(h, UniPoly::monomial(1, 4));
    }

    #[test]
    fn f_t_matches_its_literal_spelling() {
        use crate::poly::parse_poly;
        for t in [1u64, 0xec, 0x3a] {
            let lit = format!("11:1,10:{t:x},7:1,4:{t:x},1:1,0:{t:x}");
            assert_eq!(parse_poly(&lit).unwrap(), f_t_poly(t));
        }
    }

    #[test]
    fn off_circle_t_is_rejected() {
        let f = Field::new(6, None).unwrap();
        let c = make_circle(&f, 3).unwrap();
        assert!(matches!(
            eq4_root_count_raw(&c, 0x2),
            Err(Error::NotOnCircle { element: 0x2 })
        ));
    }
}
