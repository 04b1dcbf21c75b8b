//! Dense univariate and bivariate polynomials over a field context.
//!
//! Coefficients are raw `u64` element words; every operation takes the
//! [`Field`] explicitly. Degrees in this project stay tiny (at most 11 in x
//! and 10 in y), so dense vectors beat any sparse representation.
//!
//! Checked entry points take [`FieldElement`] scalars and validate
//! coefficient ranges; the `_raw` forms are for inner loops.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

/// Univariate polynomial; `coeffs()[i]` is the coefficient of x^i.
/// Always normalized: no trailing zero, the zero polynomial is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<u64>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<u64>) -> UniPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> UniPoly {
        UniPoly { coeffs: vec![1] }
    }

    /// The monomial c·x^d.
    pub fn monomial(c: u64, d: usize) -> UniPoly {
        let mut coeffs = vec![0; d + 1];
        coeffs[d] = c;
        UniPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of x^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    fn check_in(&self, f: &Field) -> Result<()> {
        for &c in &self.coeffs {
            if c >= f.order() {
                return Err(Error::ElementOutOfRange {
                    bits: c,
                    degree: f.degree(),
                });
            }
        }
        Ok(())
    }
}

/// Parse the `deg:coeff_hex` literal format: comma-separated terms, hex
/// coefficients with optional `0x` prefix, e.g. `"11:1,10:ec,7:1"` for
/// x^11 + 0xec·x^10 + x^7. Repeated degrees accumulate by field addition.
pub fn parse_poly(text: &str) -> Result<UniPoly> {
    let mut terms: Vec<(usize, u64)> = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (deg, coeff) = part
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("term `{part}` is not deg:coeff_hex")))?;
        let deg: usize = deg
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in `{part}`")))?;
        let coeff = coeff.trim();
        let coeff = coeff.strip_prefix("0x").unwrap_or(coeff);
        let coeff = u64::from_str_radix(coeff, 16)
            .map_err(|_| Error::Parse(format!("bad hex coefficient in `{part}`")))?;
        terms.push((deg, coeff));
    }
    let top = terms.iter().map(|&(d, _)| d).max().unwrap_or(0);
    let mut coeffs = vec![0u64; top + 1];
    for (d, c) in terms {
        coeffs[d] ^= c;
    }
    Ok(UniPoly::new(coeffs))
}

/// Canonical `deg:coeff_hex` literal: descending degree, zero terms
/// omitted, `0:0` for the zero polynomial. Inverse of [`parse_poly`].
pub fn poly_literal(p: &UniPoly) -> String {
    if p.is_zero() {
        return "0:0".into();
    }
    p.coeffs()
        .iter()
        .enumerate()
        .rev()
        .filter(|&(_, &c)| c != 0)
        .map(|(d, &c)| format!("{d}:{c:x}"))
        .collect::<Vec<_>>()
        .join(",")
}

/// Horner evaluation on raw words.
#[inline]
pub fn poly_eval_raw(f: &Field, coeffs: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in coeffs.iter().rev() {
        acc = f.mul_raw(acc, x) ^ c;
    }
    acc
}

/// Evaluate `p` at `x`.
pub fn poly_eval(f: &Field, p: &UniPoly, x: FieldElement) -> Result<FieldElement> {
    p.check_in(f)?;
    let x = check_element(f, x)?;
    f.el(poly_eval_raw(f, p.coeffs(), x))
}

/// Sum of two polynomials (coefficient-wise xor).
pub fn poly_add(p: &UniPoly, q: &UniPoly) -> UniPoly {
    let n = p.coeffs.len().max(q.coeffs.len());
    UniPoly::new((0..n).map(|i| p.coeff(i) ^ q.coeff(i)).collect())
}

/// Product of two polynomials (schoolbook; degrees here are tiny).
pub fn poly_mul(f: &Field, p: &UniPoly, q: &UniPoly) -> UniPoly {
    if p.is_zero() || q.is_zero() {
        return UniPoly::zero();
    }
    let mut out = vec![0u64; p.coeffs.len() + q.coeffs.len() - 1];
    for (i, &a) in p.coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in q.coeffs.iter().enumerate() {
            out[i + j] ^= f.mul_raw(a, b);
        }
    }
    UniPoly::new(out)
}

/// Long division: returns (quotient, remainder) with
/// `num = den·q + r` and `deg r < deg den`. Errors on a zero divisor.
pub fn poly_divmod(f: &Field, num: &UniPoly, den: &UniPoly) -> Result<(UniPoly, UniPoly)> {
    num.check_in(f)?;
    den.check_in(f)?;
    let dd = den.degree().ok_or(Error::DivisionByZero)?;
    let dn = match num.degree() {
        Some(dn) if dn >= dd => dn,
        _ => return Ok((UniPoly::zero(), num.clone())),
    };
    let lead_inv = f.inv_raw(den.coeffs[dd])?;
    let mut r = num.coeffs.clone();
    let mut q = vec![0u64; dn - dd + 1];
    for i in (0..=dn - dd).rev() {
        let c = f.mul_raw(r[i + dd], lead_inv);
        q[i] = c;
        if c != 0 {
            for (j, &dc) in den.coeffs.iter().enumerate() {
                r[i + j] ^= f.mul_raw(c, dc);
            }
        }
    }
    r.truncate(dd);
    Ok((UniPoly::new(q), UniPoly::new(r)))
}

/// Does x^2 + a·x + b divide `p`? Raw fast path: reduces `p` by the
/// quadratic with two multiplications per coefficient, using
/// x^2 = a·x + b in the quotient ring.
pub fn divides_quadratic_raw(f: &Field, a: u64, b: u64, coeffs: &[u64]) -> bool {
    let mut r1 = 0u64; // remainder r1·x + r0
    let mut r0 = 0u64;
    for &c in coeffs.iter().rev() {
        let new_r1 = f.mul_raw(r1, a) ^ r0;
        let new_r0 = f.mul_raw(r1, b) ^ c;
        r1 = new_r1;
        r0 = new_r0;
    }
    r1 == 0 && r0 == 0
}

/// Does x^2 + a·x + b divide `p`?
pub fn divides_quadratic(f: &Field, a: FieldElement, b: FieldElement, p: &UniPoly) -> Result<bool> {
    p.check_in(f)?;
    assert!(
        !p.is_zero(),
        "divisibility of the zero polynomial is vacuous"
    );
    let a = check_element(f, a)?;
    let b = check_element(f, b)?;
    Ok(divides_quadratic_raw(f, a, b, p.coeffs()))
}

/// The elements of `set` at which `p` vanishes, in iteration order.
pub fn roots_in_set_raw(f: &Field, coeffs: &[u64], set: impl IntoIterator<Item = u64>) -> Vec<u64> {
    set.into_iter()
        .filter(|&x| poly_eval_raw(f, coeffs, x) == 0)
        .collect()
}

/// The elements of `set` at which `p` vanishes, in iteration order.
pub fn roots_in_set(
    f: &Field,
    p: &UniPoly,
    set: impl IntoIterator<Item = FieldElement>,
) -> Result<Vec<FieldElement>> {
    p.check_in(f)?;
    assert!(!p.is_zero(), "the zero polynomial vanishes everywhere");
    let mut out = Vec::new();
    for x in set {
        let v = poly_eval(f, p, x)?;
        if v.bits() == 0 {
            out.push(x);
        }
    }
    Ok(out)
}

fn check_element(f: &Field, x: FieldElement) -> Result<u64> {
    f.check(x)
}

/// Bivariate polynomial; `coeff(i, j)` is the coefficient of x^i y^j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiPoly {
    /// Row i holds the coefficients of x^i; all rows share one width.
    coeffs: Vec<Vec<u64>>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly { coeffs: Vec::new() }
    }

    pub fn one() -> BiPoly {
        BiPoly {
            coeffs: vec![vec![1]],
        }
    }

    /// Build from (x-exponent, y-exponent, coefficient) terms; repeated
    /// slots accumulate by xor (field addition).
    pub fn from_terms(terms: &[(usize, usize, u64)]) -> BiPoly {
        let mut p = BiPoly::zero();
        for &(i, j, c) in terms {
            p.grow_to(i, j);
            p.coeffs[i][j] ^= c;
        }
        p.normalize();
        p
    }

    fn grow_to(&mut self, i: usize, j: usize) {
        let width = self.coeffs.first().map_or(0, Vec::len).max(j + 1);
        for row in &mut self.coeffs {
            row.resize(width, 0);
        }
        while self.coeffs.len() <= i {
            self.coeffs.push(vec![0; width]);
        }
    }

    fn normalize(&mut self) {
        while self
            .coeffs
            .last()
            .is_some_and(|row| row.iter().all(|&c| c == 0))
        {
            self.coeffs.pop();
        }
        let width = (0..self.coeffs.first().map_or(0, Vec::len))
            .rev()
            .find(|&j| self.coeffs.iter().any(|row| row[j] != 0))
            .map_or(0, |j| j + 1);
        for row in &mut self.coeffs {
            row.truncate(width);
        }
    }

    pub fn coeff(&self, i: usize, j: usize) -> u64 {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.coeffs.first().map(|row| row.len() - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Nonzero terms as (x-exponent, y-exponent, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter()
                .enumerate()
                .filter(|&(_, &c)| c != 0)
                .map(move |(j, &c)| (i, j, c))
        })
    }

    /// Substitute y := y^factor (pure exponent map; no cross terms arise
    /// because each slot holds a single monomial).
    pub fn map_y_exponent(&self, factor: usize) -> BiPoly {
        let terms: Vec<_> = self.terms().map(|(i, j, c)| (i, j * factor, c)).collect();
        BiPoly::from_terms(&terms)
    }

    fn check_in(&self, f: &Field) -> Result<()> {
        for (_, _, c) in self.terms() {
            if c >= f.order() {
                return Err(Error::ElementOutOfRange {
                    bits: c,
                    degree: f.degree(),
                });
            }
        }
        Ok(())
    }
}

/// Evaluate a bivariate polynomial at raw words (Horner in both variables).
pub fn bipoly_eval_raw(f: &Field, p: &BiPoly, x: u64, y: u64) -> u64 {
    let mut acc = 0u64;
    for row in p.coeffs.iter().rev() {
        let row_val = {
            let mut r = 0u64;
            for &c in row.iter().rev() {
                r = f.mul_raw(r, y) ^ c;
            }
            r
        };
        acc = f.mul_raw(acc, x) ^ row_val;
    }
    acc
}

/// Evaluate a bivariate polynomial at (x, y).
pub fn bipoly_eval(
    f: &Field,
    p: &BiPoly,
    x: FieldElement,
    y: FieldElement,
) -> Result<FieldElement> {
    p.check_in(f)?;
    let x = check_element(f, x)?;
    let y = check_element(f, y)?;
    f.el(bipoly_eval_raw(f, p, x, y))
}

/// Expand the product of linear forms (x + α·y + β) into a normalized
/// bivariate polynomial. The input must be nonempty.
pub fn bipoly_mul_linear_forms(
    f: &Field,
    forms: &[(FieldElement, FieldElement)],
) -> Result<BiPoly> {
    assert!(!forms.is_empty(), "empty product of linear forms");
    let mut raw = Vec::with_capacity(forms.len());
    for &(alpha, beta) in forms {
        raw.push((check_element(f, alpha)?, check_element(f, beta)?));
    }
    Ok(bipoly_mul_linear_forms_raw(f, &raw))
}

/// Raw-word version of [`bipoly_mul_linear_forms`].
pub fn bipoly_mul_linear_forms_raw(f: &Field, forms: &[(u64, u64)]) -> BiPoly {
    assert!(!forms.is_empty(), "empty product of linear forms");
    let mut acc = BiPoly::one();
    for &(alpha, beta) in forms {
        let terms: Vec<_> = acc
            .terms()
            .flat_map(|(i, j, c)| {
                [
                    (i + 1, j, c),
                    (i, j + 1, f.mul_raw(alpha, c)),
                    (i, j, f.mul_raw(beta, c)),
                ]
            })
            .collect();
        acc = BiPoly::from_terms(&terms);
    }
    acc
}
