//! Cross-module consistency: the trinomial family, the circle-root counts,
//! the quadratic-factor classification, the subfield reduction, and the
//! bivariate census must all tell the same story.

use nihoperm_core::arith::gcd;
use nihoperm_core::circle::make_circle;
use nihoperm_core::field::Field;
use nihoperm_core::lemmas::{
    circle_root_relation_raw, g_poly, lemma2_classify_raw, lemma3_uv_raw, lemma5_search,
};
use nihoperm_core::niho::{eq4_root_count_raw, f_t_poly, NihoTrinomial};
use nihoperm_core::perm::{
    cyclotomic_map_raw, is_permutation_bruteforce, is_permutation_lemma1, BRUTEFORCE_HARD_CAP,
};
use nihoperm_core::poly::{bipoly_eval_raw, divides_quadratic_raw, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn proved_regime_verdicts_and_root_counts_agree() {
    for m in [1u32, 2, 3, 4] {
        let field = Field::new(2 * m, None).unwrap();
        let circle = make_circle(&field, m).unwrap();
        let tri = NihoTrinomial::conjecture(m).unwrap();

        let brute =
            is_permutation_bruteforce(|x| tri.eval_raw(&field, x), &field, BRUTEFORCE_HARD_CAP)
                .unwrap();
        assert!(brute.verdict, "m={m} brute force");

        let (r, h, d, s) = tri.lemma1_parts();
        let split = is_permutation_lemma1(r, &h, d, s, &field).unwrap();
        assert!(split.verdict, "m={m} splitting criterion");

        for t in circle.enumerate_raw() {
            assert_eq!(eq4_root_count_raw(&circle, t).unwrap(), 1, "m={m} t={t:#x}");
        }
    }
}

#[test]
fn heavy_parameter_at_m5_walks_the_whole_chain() {
    // 11 | 2^5 + 1, so the family has no exponents at m = 5 — and the circle
    // criterion indeed breaks: some t values give F_t eleven circle roots.
    let field = Field::new(10, None).unwrap();
    let circle = make_circle(&field, 5).unwrap();
    let t = 0xec;
    assert_eq!(eq4_root_count_raw(&circle, t).unwrap(), 11);

    let mu: Vec<u64> = circle.enumerate_raw().collect();
    let ft = f_t_poly(t);
    let g = g_poly();
    let census: Vec<(u64, u64)> = {
        let sub: Vec<u64> = (0..field.order())
            .filter(|&x| field.in_subfield_raw(x, 5))
            .collect();
        let mut zeros = Vec::new();
        for &x in &sub {
            for &y in &sub {
                if bipoly_eval_raw(&field, &g, x, y) == 0 {
                    zeros.push((x, y));
                }
            }
        }
        zeros
    };

    let mut dividing = 0u64;
    for i in 0..mu.len() {
        for j in i + 1..mu.len() {
            let a = mu[i] ^ mu[j];
            let b = field.mul_raw(mu[i], mu[j]);
            if !divides_quadratic_raw(&field, a, b, ft.coeffs()) {
                continue;
            }
            dividing += 1;

            // classification: a dividing quadratic lands in a printed case
            let report = lemma2_classify_raw(&circle, a, b, t).unwrap();
            assert!(report.divides);
            assert!(report.consistent());
            assert_eq!(report.circle_roots, 2);
            assert!(report.relation_holds);

            // subfield reduction: the residual vanishes, i.e. (v, u²) is a
            // zero of the bivariate obstruction inside the degree-5 subfield
            let pair = lemma3_uv_raw(&field, a, b, 5).unwrap();
            assert_eq!(pair.residual, 0);
            let u_sq = field.sq_raw(pair.u);
            assert_eq!(bipoly_eval_raw(&field, &g, pair.v, u_sq), 0);
            assert!(census.contains(&(pair.v, u_sq)));
        }
    }
    // the eleven circle roots pair up into C(11,2) dividing quadratics
    assert_eq!(dividing, 55);

    // the subfield census is representation-independent: it matches the
    // direct search over an abstract GF(2^5)
    assert_eq!(census.len(), lemma5_search(5).unwrap().len());
    assert_eq!(census.len(), 150);
}

#[test]
fn no_two_circle_root_quadratic_divides_any_f_t_in_the_proved_regime() {
    for m in [2u32, 3, 4] {
        let field = Field::new(2 * m, None).unwrap();
        let circle = make_circle(&field, m).unwrap();
        let mu: Vec<u64> = circle.enumerate_raw().collect();
        let fts: Vec<UniPoly> = mu.iter().map(|&t| f_t_poly(t)).collect();
        for i in 0..mu.len() {
            for j in i + 1..mu.len() {
                let a = mu[i] ^ mu[j];
                let b = field.mul_raw(mu[i], mu[j]);
                let (count, relation) = circle_root_relation_raw(&circle, a, b);
                assert_eq!(count, 2);
                assert!(relation, "m={m}: conjugate symmetry forces the relation");
                for ft in &fts {
                    assert!(
                        !divides_quadratic_raw(&field, a, b, ft.coeffs()),
                        "m={m} a={a:#x} b={b:#x}"
                    );
                }
            }
        }
    }
}

#[test]
fn splitting_criterion_agrees_with_brute_force_on_seeded_controls() {
    let mut rng = ChaCha8Rng::seed_from_u64(7310);
    let mut checked = 0u32;
    for k in [4u32, 6, 8, 10, 12] {
        let field = Field::new(k, None).unwrap();
        let q1 = field.order() - 1;
        let divisors: Vec<u64> = (1..=q1).filter(|d| q1.is_multiple_of(*d)).collect();
        for _ in 0..10 {
            let r = rng.gen_range(1..=q1);
            let d = divisors[rng.gen_range(0..divisors.len())];
            let s = q1 / d;
            let h = if rng.gen_range(0..2) == 0 {
                UniPoly::one()
            } else {
                let mut coeffs = vec![0u64; 9];
                coeffs[0] = 1;
                coeffs[rng.gen_range(1..=4)] ^= 1;
                coeffs[rng.gen_range(5..=8)] ^= 1;
                UniPoly::new(coeffs)
            };
            let split = is_permutation_lemma1(r, &h, d, s, &field).unwrap();
            let brute = is_permutation_bruteforce(
                |x| cyclotomic_map_raw(&field, r, &h, s, x),
                &field,
                BRUTEFORCE_HARD_CAP,
            )
            .unwrap();
            assert_eq!(
                split.verdict,
                brute.verdict,
                "k={k} r={r} d={d} s={s} h={:?}",
                h.coeffs()
            );
            if r == 1 && gcd(r, s) == 1 {
                // r = 1 never obstructs; verdict is decided on the subgroup
                assert_eq!(split.domain_size, d);
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 50);
}
