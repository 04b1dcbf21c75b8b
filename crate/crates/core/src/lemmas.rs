//! Executable verification of the proof's structural steps.
//!
//! The pipeline being mechanized: a quadratic x^2 + ax + b (ab ≠ 0) dividing
//! F_t forces one of three coefficient conditions; two circle roots force
//! a^(2^m)·b = a; under that relation the conditions collapse to a single
//! equation in the subfield quantities u = a^{-1} + a^{-2^m},
//! v = a^{-1}·a^{-2^m}; that equation is G(v, u^2) for a fixed bivariate G;
//! G factors into linear forms over GF(32); and G has no subfield zeros when
//! gcd(m, 5) = 1. Each link is a separate function here so every step can be
//! tested, scanned, and falsified independently.

use serde::Serialize;

use crate::circle::UnitCircle;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::niho::f_t_poly;
use crate::poly::{bipoly_mul_linear_forms_raw, poly_divmod, roots_in_set_raw, BiPoly, UniPoly};

fn hex_str<S: serde::Serializer>(v: &u64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{v:#x}"))
}

/// Classification record for one (a, b, t) triple.
///
/// Serialized field order is the CSV column order; elements print as hex
/// coefficient bit vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct QuadFactorReport {
    #[serde(serialize_with = "hex_str")]
    pub a: u64,
    #[serde(serialize_with = "hex_str")]
    pub b: u64,
    #[serde(serialize_with = "hex_str")]
    pub t: u64,
    pub divides: bool,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub circle_roots: u8,
    pub relation_holds: bool,
}

impl QuadFactorReport {
    pub const CSV_HEADER: &'static str =
        "a,b,t,divides,cond1,cond2,cond3,circle_roots,relation_holds";

    pub fn csv_line(&self) -> String {
        format!(
            "{:#x},{:#x},{:#x},{},{},{},{},{},{}",
            self.a,
            self.b,
            self.t,
            self.divides,
            self.cond1,
            self.cond2,
            self.cond3,
            self.circle_roots,
            self.relation_holds
        )
    }

    /// The classification claim: a dividing quadratic with ab ≠ 0 satisfies
    /// at least one condition set.
    pub fn consistent(&self) -> bool {
        !self.divides || self.cond1 || self.cond2 || self.cond3
    }
}

/// The subfield pair u = a^{-1} + a^{-2^m}, v = a^{-1}·a^{-2^m} together
/// with the value of the single remaining equation at (u, v).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UvPair {
    #[serde(serialize_with = "hex_str")]
    pub u: u64,
    #[serde(serialize_with = "hex_str")]
    pub v: u64,
    #[serde(serialize_with = "hex_str")]
    pub residual: u64,
}

/// Classify one (a, b, t) triple: divisibility of F_t by x^2 + ax + b
/// (decided by long division), the three printed condition sets, and the
/// circle-root data for the same quadratic.
pub fn lemma2_classify(
    c: &UnitCircle<'_>,
    a: FieldElement,
    b: FieldElement,
    t: FieldElement,
) -> Result<QuadFactorReport> {
    let f = c.field();
    lemma2_classify_raw(c, f.check(a)?, f.check(b)?, f.check(t)?)
}

/// Raw-word version of [`lemma2_classify`].
pub fn lemma2_classify_raw(c: &UnitCircle<'_>, a: u64, b: u64, t: u64) -> Result<QuadFactorReport> {
    if a == 0 || b == 0 {
        return Err(Error::ZeroCoefficient);
    }
    if !c.contains_raw(t) {
        return Err(Error::NotOnCircle { element: t });
    }
    let f = c.field();
    let quad = UniPoly::new(vec![b, a, 1]);
    let (_, r) = poly_divmod(f, &f_t_poly(t), &quad)?;
    let divides = r.is_zero();
    let (cond1, cond2, cond3) = condition_sets(f, a, b);
    let (circle_roots, relation_holds) = circle_root_relation_raw(c, a, b);
    Ok(QuadFactorReport {
        a,
        b,
        t,
        divides,
        cond1,
        cond2,
        cond3,
        circle_roots,
        relation_holds,
    })
}

/// The three coefficient condition sets, exactly as printed:
/// 1. ab^3 + b^2 + b + a^2 = 0  and  b^6 + (a^4+1)b^4 + b^3 + a^2 = 0
/// 2. b^2 + b^3 + a^2b^2 + a = 0  and  a^2b^6 + b^5 + b^4 + b^2 + a^4 = 0
/// 3. a^10 + (b^4+b^2+1)a^6 + (b^5+b)a^4 + (b^7+b)a^2
///      + b^10 + b^8 + b^7 + b^5 + b^3 + b^2 + 1 = 0
fn condition_sets(f: &Field, a: u64, b: u64) -> (bool, bool, bool) {
    let p = |x: u64, e: u64| f.pow_raw(x, e);
    let mul = |x, y| f.mul_raw(x, y);

    let c1_first = mul(a, p(b, 3)) ^ p(b, 2) ^ b ^ p(a, 2);
    let c1_second = p(b, 6) ^ mul(p(a, 4) ^ 1, p(b, 4)) ^ p(b, 3) ^ p(a, 2);
    let cond1 = c1_first == 0 && c1_second == 0;

    let c2_first = p(b, 2) ^ p(b, 3) ^ mul(p(a, 2), p(b, 2)) ^ a;
    let c2_second = mul(p(a, 2), p(b, 6)) ^ p(b, 5) ^ p(b, 4) ^ p(b, 2) ^ p(a, 4);
    let cond2 = c2_first == 0 && c2_second == 0;

    let c3 = p(a, 10)
        ^ mul(p(b, 4) ^ p(b, 2) ^ 1, p(a, 6))
        ^ mul(p(b, 5) ^ b, p(a, 4))
        ^ mul(p(b, 7) ^ b, p(a, 2))
        ^ p(b, 10)
        ^ p(b, 8)
        ^ p(b, 7)
        ^ p(b, 5)
        ^ p(b, 3)
        ^ p(b, 2)
        ^ 1;
    let cond3 = c3 == 0;

    (cond1, cond2, cond3)
}

/// How many roots of x^2 + ax + b lie on the circle, and whether the
/// two-circle-root necessary relation a^(2^m)·b = a holds.
pub fn circle_root_relation(
    c: &UnitCircle<'_>,
    a: FieldElement,
    b: FieldElement,
) -> Result<(u8, bool)> {
    let f = c.field();
    Ok(circle_root_relation_raw(c, f.check(a)?, f.check(b)?))
}

/// Raw-word version of [`circle_root_relation`].
pub fn circle_root_relation_raw(c: &UnitCircle<'_>, a: u64, b: u64) -> (u8, bool) {
    let f = c.field();
    let roots = f.solve_quadratic_raw(a, b);
    let circle_roots = roots.iter().filter(|&&x| c.contains_raw(x)).count() as u8;
    let relation_holds = f.mul_raw(f.frobenius_raw(a, c.m()), b) == a;
    (circle_roots, relation_holds)
}

/// Exhaustive classification over all (a, b, t) with ab ≠ 0 and t on the
/// circle, streamed to `sink` in deterministic (t, a, b) order.
pub fn lemma2_scan(c: &UnitCircle<'_>, mut sink: impl FnMut(&QuadFactorReport)) -> Result<()> {
    let f = c.field();
    for t in c.enumerate_raw() {
        for a in 1..f.order() {
            for b in 1..f.order() {
                let report = lemma2_classify_raw(c, a, b, t)?;
                sink(&report);
            }
        }
    }
    Ok(())
}

/// Reduce a coefficient pair to the subfield quantities of the single
/// remaining equation: u = a^{-1} + a^{-2^m}, v = a^{-1}·a^{-2^m}, and the
/// value of v^5 + (u^4+u^2)v^3 + v^2 + (u^6+u^4)v + u^10 + u^4 + 1.
///
/// Preconditions (a ≠ 0 and a^(2^m)·b = a) are enforced; both u and v are
/// checked to land in GF(2^m).
pub fn lemma3_uv(f: &Field, a: FieldElement, b: FieldElement, m: u32) -> Result<UvPair> {
    lemma3_uv_raw(f, f.check(a)?, f.check(b)?, m)
}

/// Raw-word version of [`lemma3_uv`].
pub fn lemma3_uv_raw(f: &Field, a: u64, b: u64, m: u32) -> Result<UvPair> {
    if f.degree() != 2 * m {
        return Err(Error::DegreeMismatch {
            expected: 2 * m,
            actual: f.degree(),
        });
    }
    if a == 0 || f.mul_raw(f.frobenius_raw(a, m), b) != a {
        return Err(Error::RelationViolated);
    }
    let ai = f.inv_raw(a)?;
    let ai_conj = f.frobenius_raw(ai, m);
    let u = ai ^ ai_conj;
    let v = f.mul_raw(ai, ai_conj);
    assert!(
        f.in_subfield_raw(u, m) && f.in_subfield_raw(v, m),
        "u, v are symmetric in the conjugate pair and must lie in GF(2^m)"
    );
    let residual = residual_eval_raw(f, u, v);
    Ok(UvPair { u, v, residual })
}

/// v^5 + (u^4 + u^2)v^3 + v^2 + (u^6 + u^4)v + u^10 + u^4 + 1 on raw words.
pub fn residual_eval_raw(f: &Field, u: u64, v: u64) -> u64 {
    let p = |x: u64, e: u64| f.pow_raw(x, e);
    p(v, 5)
        ^ f.mul_raw(p(u, 4) ^ p(u, 2), p(v, 3))
        ^ p(v, 2)
        ^ f.mul_raw(p(u, 6) ^ p(u, 4), v)
        ^ p(u, 10)
        ^ p(u, 4)
        ^ 1
}

/// G(x, y) = x^5 + (y^2 + y)x^3 + x^2 + (y^3 + y^2)x + y^5 + y^2 + 1,
/// with GF(2) coefficients (valid in every field context).
pub fn g_poly() -> BiPoly {
    BiPoly::from_terms(&[
        (5, 0, 1),
        (3, 2, 1),
        (3, 1, 1),
        (2, 0, 1),
        (1, 3, 1),
        (1, 2, 1),
        (0, 5, 1),
        (0, 2, 1),
        (0, 0, 1),
    ])
}

/// The residual equation as a formal polynomial in (v, u) over GF(2)
/// (x-axis = v, y-axis = u).
pub fn residual_poly_formal() -> BiPoly {
    BiPoly::from_terms(&[
        (5, 0, 1),
        (3, 4, 1),
        (3, 2, 1),
        (2, 0, 1),
        (1, 6, 1),
        (1, 4, 1),
        (0, 10, 1),
        (0, 4, 1),
        (0, 0, 1),
    ])
}

/// Formal identity: the residual polynomial in (v, u) is exactly G(v, u^2),
/// checked coefficient-by-coefficient after the substitution y := y^2.
pub fn bridge_identity_holds() -> bool {
    g_poly().map_y_exponent(2) == residual_poly_formal()
}

/// The splitting set H: all roots of x^5 + x^2 + 1 in the given field,
/// in bit order. Errors with [`Error::FieldTooSmall`] when fewer than the
/// full five roots are present (i.e. 5 does not divide the degree).
pub fn splitting_set(f: &Field) -> Result<Vec<u64>> {
    let quintic = [1u64, 0, 1, 0, 0, 1]; // x^5 + x^2 + 1
    let roots = roots_in_set_raw(f, &quintic, 0..f.order());
    if roots.len() != 5 {
        return Err(Error::FieldTooSmall {
            needed: 5,
            found: roots.len() as u32,
        });
    }
    Ok(roots)
}

/// Expand ∏_{θ∈H} (x + θ^{-1}y + θ) over GF(2^m_ext) and compare it slot by
/// slot against G(x, y). True iff every coefficient matches.
pub fn lemma4_check(m_ext: u32) -> Result<bool> {
    let f = Field::new(m_ext, None)?;
    lemma4_check_in(&f)
}

/// [`lemma4_check`] against a caller-supplied field context.
pub fn lemma4_check_in(f: &Field) -> Result<bool> {
    let h = splitting_set(f)?;
    let forms: Vec<(u64, u64)> = h
        .iter()
        .map(|&theta| Ok((f.inv_raw(theta)?, theta)))
        .collect::<Result<_>>()?;
    let product = bipoly_mul_linear_forms_raw(f, &forms);
    Ok(product == g_poly())
}

/// Exhaustive scan for zeros of G over GF(2^m) × GF(2^m), in (x, y)
/// lexicographic order.
pub fn lemma5_search(m: u32) -> Result<Vec<(u64, u64)>> {
    let f = Field::new(m, None)?;
    Ok(lemma5_search_in(&f))
}

/// [`lemma5_search`] against a caller-supplied field context.
pub fn lemma5_search_in(f: &Field) -> Vec<(u64, u64)> {
    lemma5_search_range(f, 0, f.order())
}

/// Zeros of G with x restricted to [x_start, x_end); the building block for
/// partitioned scans (disjoint ranges concatenate to the full result).
pub fn lemma5_search_range(f: &Field, x_start: u64, x_end: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for x in x_start..x_end {
        // G as a polynomial in y for fixed x:
        // y^5 + x·y^3 + (x^3+x+1)·y^2 + x^3·y + (x^5+x^2+1)
        let x3 = f.mul_raw(f.mul_raw(x, x), x);
        let x5 = f.mul_raw(f.mul_raw(x3, x), x);
        let coeffs = [x5 ^ f.mul_raw(x, x) ^ 1, x3, x3 ^ x ^ 1, x, 0, 1];
        for y in 0..f.order() {
            if crate::poly::poly_eval_raw(f, &coeffs, y) == 0 {
                out.push((x, y));
            }
        }
    }
    out
}
