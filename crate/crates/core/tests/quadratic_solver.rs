//! The quadratic solver against a full forward scan: for every (a, b) with
//! k ≤ 10, the returned roots are exactly the y with y² + ay + b = 0.

use nihoperm_core::field::Field;

#[test]
fn solver_matches_the_exhaustive_scan_through_degree_10() {
    for k in 1..=10 {
        let field = Field::new(k, None).unwrap();
        let n = field.order();
        for a in 0..n {
            // bucket every y under b = y² + a·y, one pass per coefficient a
            let mut expected: Vec<Vec<u64>> = vec![Vec::new(); n as usize];
            for y in 0..n {
                let b = field.add_raw(field.sq_raw(y), field.mul_raw(a, y));
                expected[b as usize].push(y);
            }
            let mut doubles = 0u64;
            for b in 0..n {
                let mut want = expected[b as usize].clone();
                want.sort_unstable();
                let got = field.solve_quadratic_raw(a, b);
                assert_eq!(got, want, "k={k} a={a:#x} b={b:#x}");
                if got.len() == 2 {
                    doubles += 1;
                }
            }
            // root-count profile: a = 0 is the bijective squaring case,
            // a ≠ 0 splits the b-line into halves of weight 0 and 2
            if a == 0 {
                assert_eq!(doubles, 0);
            } else {
                assert_eq!(doubles, n / 2, "k={k} a={a:#x}");
            }
        }
    }
}

#[test]
fn solvability_is_governed_by_the_trace() {
    for k in [3u32, 4, 5, 6, 9, 10] {
        let field = Field::new(k, None).unwrap();
        for c in 0..field.order() {
            let solvable = !field.solve_quadratic_raw(1, c).is_empty();
            assert_eq!(solvable, field.trace_raw(c) == 0, "k={k} c={c:#x}");
        }
    }
}

#[test]
fn degenerate_linear_coefficient_gives_the_single_square_root() {
    for k in [5u32, 8] {
        let field = Field::new(k, None).unwrap();
        for b in 0..field.order() {
            let roots = field.solve_quadratic_raw(0, b);
            assert_eq!(roots, vec![field.sqrt_raw(b)]);
        }
    }
}
