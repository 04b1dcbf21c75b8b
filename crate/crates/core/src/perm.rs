//! Permutation verification: exhaustive image scanning and the cyclotomic
//! splitting criterion, built to cross-validate each other.
//!
//! The splitting criterion: for q − 1 = d·s, the full-field map
//! x ↦ x^r · h(x^s) permutes GF(q) iff gcd(r, s) = 1 and x ↦ x^r · h(x)^s
//! permutes the d-th roots of unity. Note the two different compositions —
//! h is applied to x^s on the full field but raised to the s-th power on
//! the subgroup. Conflating them makes the criterion false (a GF(8) witness
//! lives in the tests), so the brute-force oracle here always evaluates the
//! full-field form while the criterion path works on the subgroup form.

use std::time::Instant;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{poly_eval_raw, UniPoly};

/// Default ceiling on brute-force domain sizes (2^28 elements).
pub const BRUTEFORCE_HARD_CAP: u64 = 1 << 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Bruteforce,
    Lemma1,
}

/// Why a verdict came out false.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Two domain points with the same image under the scanned map.
    Collision { x1: u64, x2: u64, image: u64 },
    /// The subgroup image set is smaller than the subgroup.
    NotInjectiveOnSubgroup { image_count: u64, expected: u64 },
    /// h vanished on the subgroup, so the subgroup map leaves it.
    ZeroImage { x: u64 },
    /// The exponent shares a factor with the cyclotomic index.
    GcdObstruction { r: u64, s: u64, gcd: u64 },
}

/// Outcome of one permutation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub method: Method,
    pub verdict: bool,
    pub witness: Option<Witness>,
    pub domain_size: u64,
    pub elapsed_ms: u64,
}

/// Presence bitsets that survive parallel merging: `seen` records images,
/// `seen_twice` records images hit at least twice, and `collisions` counts
/// repeat insertions exactly. Merging two chunk results ORs the bitsets,
/// adds the cross-chunk overlap into `seen_twice`, and adds one collision
/// per overlap bit — associative and order-independent, and the final count
/// always satisfies `count_seen() + collisions() = points inserted`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CollisionBitset {
    seen: Vec<u64>,
    seen_twice: Vec<u64>,
    collisions: u64,
}

impl CollisionBitset {
    pub fn new(domain_size: u64) -> CollisionBitset {
        let words = usize::try_from(domain_size.div_ceil(64)).expect("domain fits memory");
        CollisionBitset {
            seen: vec![0; words],
            seen_twice: vec![0; words],
            collisions: 0,
        }
    }

    #[inline]
    pub fn insert(&mut self, image: u64) {
        let word = (image >> 6) as usize;
        let bit = 1u64 << (image & 63);
        if self.seen[word] & bit != 0 {
            self.seen_twice[word] |= bit;
            self.collisions += 1;
        } else {
            self.seen[word] |= bit;
        }
    }

    /// Associative merge of chunk results.
    pub fn merge(&mut self, other: &CollisionBitset) {
        assert_eq!(self.seen.len(), other.seen.len());
        self.collisions += other.collisions;
        for i in 0..self.seen.len() {
            let overlap = self.seen[i] & other.seen[i];
            self.collisions += u64::from(overlap.count_ones());
            self.seen_twice[i] |= other.seen_twice[i] | overlap;
            self.seen[i] |= other.seen[i];
        }
    }

    pub fn has_collision(&self) -> bool {
        self.collisions != 0
    }

    /// Number of distinct images recorded.
    pub fn count_seen(&self) -> u64 {
        self.seen.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Number of repeat insertions (domain size minus distinct images).
    pub fn collisions(&self) -> u64 {
        self.collisions
    }
}

/// Scan `map` over [start, end), recording images in a fresh bitset.
/// Disjoint ranges can be scanned independently and merged.
pub fn scan_chunk(
    map: impl Fn(u64) -> u64,
    domain_size: u64,
    start: u64,
    end: u64,
) -> CollisionBitset {
    let mut bits = CollisionBitset::new(domain_size);
    for x in start..end {
        let y = map(x);
        debug_assert!(y < domain_size, "image left the domain");
        bits.insert(y);
    }
    bits
}

/// Decide whether `map` permutes the field by exhausting the domain.
///
/// The verdict comes from the collision bitset; on failure the witness is
/// the first colliding pair in domain order, recovered by a deterministic
/// second scan (so it is identical regardless of how the first pass was
/// chunked).
pub fn is_permutation_bruteforce(
    map: impl Fn(u64) -> u64,
    ctx: &Field,
    cap: u64,
) -> Result<VerifyReport> {
    let n = ctx.order();
    if n > cap.min(BRUTEFORCE_HARD_CAP) {
        return Err(Error::DomainTooLarge {
            size: n,
            cap: cap.min(BRUTEFORCE_HARD_CAP),
        });
    }
    let started = Instant::now();
    let bits = scan_chunk(&map, n, 0, n);
    assert_eq!(
        bits.count_seen() + bits.collisions(),
        n,
        "every domain point lands somewhere exactly once"
    );
    let verdict = !bits.has_collision();
    let witness = if verdict {
        None
    } else {
        Some(first_collision(&map, n))
    };
    Ok(VerifyReport {
        method: Method::Bruteforce,
        verdict,
        witness,
        domain_size: n,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// First (x1, x2) with x1 < x2 in domain order sharing an image.
fn first_collision(map: &impl Fn(u64) -> u64, n: u64) -> Witness {
    let mut first_preimage = vec![u32::MAX; n as usize];
    for x in 0..n {
        let y = map(x) as usize;
        if first_preimage[y] != u32::MAX {
            return Witness::Collision {
                x1: u64::from(first_preimage[y]),
                x2: x,
                image: y as u64,
            };
        }
        first_preimage[y] = x as u32;
    }
    unreachable!("a collision was detected by the bitset pass")
}

/// The full-field map x ↦ x^r · h(x^s) on raw words.
#[inline]
pub fn cyclotomic_map_raw(f: &Field, r: u64, h: &UniPoly, s: u64, x: u64) -> u64 {
    f.mul_raw(
        f.pow_raw(x, r),
        poly_eval_raw(f, h.coeffs(), f.pow_raw(x, s)),
    )
}

/// Decide whether x ↦ x^r · h(x^s) permutes the field via the splitting
/// criterion: gcd(r, s) = 1 and x ↦ x^r · h(x)^s permutes the d-th roots
/// of unity, where q − 1 = d·s.
///
/// The subgroup check enumerates the d-th roots as powers of γ^((q−1)/d)
/// for the smallest primitive γ and tests injectivity by image-set size
/// (images of nonvanishing points stay in the subgroup automatically, since
/// (x^r h(x)^s)^d = h(x)^(q−1) = 1).
///
/// The origin never obstructs: x^r·h(x^s) fixes 0 for every r ≥ 1, so the
/// full-field verdict is decided entirely on the nonzero part.
pub fn is_permutation_lemma1(
    r: u64,
    h: &UniPoly,
    d: u64,
    s: u64,
    ctx: &Field,
) -> Result<VerifyReport> {
    assert!(r > 0 && d > 0 && s > 0, "r, d, s must be positive");
    let q1 = ctx.order() - 1;
    if d.checked_mul(s) != Some(q1) {
        return Err(Error::BadFactorization { d, s, order: q1 });
    }
    let started = Instant::now();
    let g = crate::arith::gcd(r, s);
    let mut verdict = true;
    let mut witness = None;
    if g != 1 {
        verdict = false;
        witness = Some(Witness::GcdObstruction { r, s, gcd: g });
    } else {
        let gen_d = ctx.pow_raw(ctx.primitive_element(), s);
        debug_assert_eq!(ctx.pow_raw(gen_d, d), 1);
        let mut images = Vec::with_capacity(d as usize);
        let mut x = 1u64;
        for _ in 0..d {
            let hx = poly_eval_raw(ctx, h.coeffs(), x);
            if hx == 0 {
                verdict = false;
                witness = Some(Witness::ZeroImage { x });
                break;
            }
            images.push(ctx.mul_raw(ctx.pow_raw(x, r), ctx.pow_raw(hx, s)));
            x = ctx.mul_raw(x, gen_d);
        }
        if verdict {
            images.sort_unstable();
            images.dedup();
            if images.len() as u64 != d {
                verdict = false;
                witness = Some(Witness::NotInjectiveOnSubgroup {
                    image_count: images.len() as u64,
                    expected: d,
                });
            }
        }
    }
    Ok(VerifyReport {
        method: Method::Lemma1,
        verdict,
        witness,
        domain_size: d,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}
