use flagchess::chern::binomial;
use flagchess::chess::board::initial_board_fibration;
use flagchess::chess::moves::{replay, Dir, Engine, Move};
use flagchess::oracle::ext_on_flag;
use flagchess::schur::{
    clebsch_gordan_rank2, sym_cohomology, sym_cohomology_filtration, sym_filtration,
};
use flagchess::weights::{canonical_fiber, flag_dim, line_bundle_cohomology, simple_reflection};
use flagchess::{BundleDescriptor, CohomResult, ExtQuery, Space, Verdict, Weight};
use num_bigint::BigInt;
use proptest::prelude::*;

fn d(n: usize, m: u32, x: i64, y: i64) -> BundleDescriptor {
    BundleDescriptor::new(n, m, x, y).unwrap()
}

/// Monomials of degree `k` in `v` variables, by enumeration.
fn monomials(v: usize, k: usize) -> u64 {
    if v == 1 {
        return 1;
    }
    (0..=k).map(|j| monomials(v - 1, k - j)).sum()
}

#[test]
fn serre_duality_line_bundles() {
    for big_n in 3..=7 {
        let top = flag_dim(big_n);
        let (kx, ky) = canonical_fiber(big_n).unwrap();
        for x in -6..=6 {
            for y in -6..=6 {
                let a = line_bundle_cohomology(big_n, x, y).unwrap();
                let b = line_bundle_cohomology(big_n, kx - x, ky - y).unwrap();
                match (&a, &b) {
                    (CohomResult::Vanishes, CohomResult::Vanishes) => {}
                    (
                        CohomResult::NonZero {
                            degree: i, dim: p, ..
                        },
                        CohomResult::NonZero {
                            degree: j, dim: q, ..
                        },
                    ) => {
                        assert_eq!(i + j, top, "N={big_n} ({x},{y})");
                        assert_eq!(p, q, "N={big_n} ({x},{y})");
                    }
                    _ => panic!("N={big_n} ({x},{y}): {a} vs {b}"),
                }
            }
        }
    }
}

#[test]
fn sections_count_monomials() {
    for big_n in 3..=8 {
        for k in 0..=6i64 {
            match line_bundle_cohomology(big_n, k, 0).unwrap() {
                CohomResult::NonZero { degree: 0, dim, .. } => {
                    assert_eq!(dim, monomials(big_n, k as usize).into(), "N={big_n} k={k}");
                    assert_eq!(
                        BigInt::from(dim),
                        binomial((big_n - 1) as u64 + k as u64, k as u64)
                    );
                }
                other => panic!("N={big_n} k={k}: {other}"),
            }
        }
    }
}

#[test]
fn resolution_euler_characteristics() {
    for big_n in 3..=7 {
        for k in 1..=8u32 {
            let lhs = sym_cohomology(&d(big_n, k, 0, 0)).unwrap().euler_char();
            let rhs = sym_cohomology(&d(big_n, k - 1, -1, 1))
                .unwrap()
                .euler_char()
                + sym_cohomology(&d(big_n, 0, k as i64, 0))
                    .unwrap()
                    .euler_char();
            assert_eq!(lhs, rhs, "N={big_n} k={k}");
        }
    }
}

fn weight() -> impl Strategy<Value = Weight> {
    prop::collection::vec(-8i64..=8, 2..=7).prop_map(|c| Weight::new(c).unwrap())
}

fn descriptor(max_n: usize, max_m: u32, r: i64) -> impl Strategy<Value = BundleDescriptor> {
    (3..=max_n, 0..=max_m, -r..=r, -r..=r).prop_map(|(n, m, x, y)| d(n, m, x, y))
}

proptest! {
    #[test]
    fn reflection_is_involution(w in weight(), i in 0usize..16) {
        let i = 1 + i % w.rank();
        let once = simple_reflection(&w, i).unwrap();
        prop_assert_eq!(simple_reflection(&once, i).unwrap(), w);
    }

    #[test]
    fn bwb_degree_bound(n in 3usize..=9, x in -12i64..=12, y in -12i64..=12) {
        if let CohomResult::NonZero { degree, .. } = line_bundle_cohomology(n, x, y).unwrap() {
            prop_assert!(degree <= 2 * n - 3);
            if x >= 0 && y >= 0 {
                prop_assert_eq!(degree, 0);
            }
        } else {
            prop_assert!(x < 0 || y < 0);
        }
    }

    #[test]
    fn clebsch_gordan_dimension(a in 0u32..40, b in 0u32..40) {
        let total: u64 = clebsch_gordan_rank2(a, b).iter().map(|(s, _)| *s as u64 + 1).sum();
        prop_assert_eq!(total, (a as u64 + 1) * (b as u64 + 1));
    }

    #[test]
    fn filtration_length(e in descriptor(9, 12, 8)) {
        prop_assert_eq!(sym_filtration(&e).len(), e.m as usize + 1);
    }

    #[test]
    fn filtration_agrees_with_exact(e in descriptor(7, 5, 6)) {
        let exact = sym_cohomology(&e).unwrap();
        let filt = sym_cohomology_filtration(&e).unwrap();
        prop_assert_eq!(filt.euler_char(), exact.euler_char());
        for (_, r) in &filt.pieces {
            if let CohomResult::NonZero { dim, .. } = r {
                prop_assert!(*dim > 0u32.into());
            }
        }
        if let Verdict::Determinate(g) = &filt.verdict {
            prop_assert_eq!(g, &exact);
        }
    }

    #[test]
    fn ext_twist_invariant(s in descriptor(6, 2, 3), m in 0u32..=2, x in -3i64..=3, y in -3i64..=3,
                           a in -4i64..=4, b in -4i64..=4) {
        let t = d(s.n, m, x, y);
        let base = ext_on_flag(&s, &t).unwrap();
        prop_assert_eq!(ext_on_flag(&s.twist(a, b), &t.twist(a, b)).unwrap(), base.clone());
        let q = ExtQuery::new(s.twist(a, b), t.twist(a, b), Space::Flag).unwrap();
        prop_assert_eq!(q.normalized().eval().unwrap(), Verdict::Determinate(base));
    }

    #[test]
    fn ext_serre_duality(s in descriptor(6, 2, 3), m in 0u32..=2, x in -3i64..=3, y in -3i64..=3) {
        let t = d(s.n, m, x, y);
        let (kx, ky) = canonical_fiber(s.n).unwrap();
        let top = flag_dim(s.n) as i64;
        let fwd = ext_on_flag(&s, &t).unwrap();
        let back = ext_on_flag(&t, &s.twist(kx, ky)).unwrap();
        for i in 0..=top {
            prop_assert_eq!(fwd.get(i), back.get(top - i), "degree {}", i);
        }
    }

    #[test]
    fn random_moves_conserve_copies(n in 2usize..=4, eps in 0usize..=1,
                                    steps in prop::collection::vec((0usize..1000, 0u8..3), 1..40)) {
        let start = initial_board_fibration(n, eps).unwrap();
        let mut e = Engine::new(start.clone(), false);
        for (at, kind) in steps {
            let len = e.board().len();
            let mv = match kind {
                0 => Move::Swap { at: at % (len - 1) },
                1 => Move::GlobalSerre { dir: Dir::FirstToEnd },
                _ => Move::GlobalSerre { dir: Dir::LastToFront },
            };
            e.apply(mv).unwrap();
            prop_assert_eq!(e.board().copies(), start.copies());
        }
        let (board, log) = e.into_parts();
        prop_assert_eq!(replay(&start, &log).unwrap(), board);
    }
}
