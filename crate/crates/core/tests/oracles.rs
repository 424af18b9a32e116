//! Frozen reference values.

use flagchess::chern::{
    binomial, condition3_bound, conditions, cover_degree, h0_twisted_quotient, poly_inv_unit,
    poly_mul, poly_pow, section_count_ld, section_count_syzygy, TruncPoly,
};
use flagchess::chess::board::{initial_board_fibration, initial_board_flip, Content, Entry};
use flagchess::chess::game::{gr2_pattern, run_game};
use flagchess::interface::render_ascii;
use flagchess::oracle::{check_lemma, ext_on_flag, ext_on_m, hom_bundle};
use flagchess::schur::{clebsch_gordan_rank2, sym_cohomology, sym_filtration, sym_resolution_step};
use flagchess::weights::{bwb_regularize, canonical_fiber, line_bundle_cohomology, rho, weyl_dim};
use flagchess::{
    BundleDescriptor, CohomResult, GradedDims, LemmaId, Mode, Regularized, Verdict, Weight,
};
use num_bigint::BigInt;

fn w(c: &[i64]) -> Weight {
    Weight::new(c.to_vec()).unwrap()
}

fn d(n: usize, m: u32, x: i64, y: i64) -> BundleDescriptor {
    BundleDescriptor::new(n, m, x, y).unwrap()
}

fn dim_h(res: &CohomResult) -> Option<(usize, u64)> {
    match res {
        CohomResult::Vanishes => None,
        CohomResult::NonZero { degree, dim, .. } => {
            Some((*degree, u64::try_from(dim.clone()).unwrap()))
        }
    }
}

#[test]
fn regularization_examples() {
    match bwb_regularize(&w(&[1, 1, 1, 1])).unwrap() {
        Regularized::Regular { length, weight, .. } => {
            assert_eq!((length, weight), (0, w(&[1, 1, 1, 1])))
        }
        other => panic!("{other:?}"),
    }
    assert!(matches!(
        bwb_regularize(&w(&[0, 1, 1, 1])).unwrap(),
        Regularized::Singular { .. }
    ));
    match bwb_regularize(&w(&[-1, 2, 1, 1])).unwrap() {
        Regularized::Regular { length, weight, .. } => {
            assert_eq!((length, weight), (1, w(&[1, 1, 1, 1])))
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(rho(5).unwrap(), w(&[1, 1, 1, 1]));
}

#[test]
fn weyl_dimensions() {
    assert_eq!(weyl_dim(&w(&[0, 0, 0, 0])).unwrap(), 1u32.into());
    assert_eq!(weyl_dim(&w(&[1, 0, 0, 0, 0, 0])).unwrap(), 7u32.into());
    assert_eq!(weyl_dim(&w(&[3, 0, 0, 0])).unwrap(), 35u32.into());
    assert!(weyl_dim(&w(&[-1, 0, 0, 0])).is_err());
}

#[test]
fn line_bundles() {
    assert_eq!(
        dim_h(&line_bundle_cohomology(5, 0, 0).unwrap()),
        Some((0, 1))
    );
    assert_eq!(dim_h(&line_bundle_cohomology(5, -1, 0).unwrap()), None);
    for (k, c) in [(1, 5), (2, 15), (3, 35)] {
        assert_eq!(
            dim_h(&line_bundle_cohomology(5, k, 0).unwrap()),
            Some((0, c))
        );
    }
    // canonical bundle: H^top of dim 1
    assert_eq!(
        dim_h(&line_bundle_cohomology(5, -2, -4).unwrap()),
        Some((7, 1))
    );
}

#[test]
fn canonical_bundles() {
    assert_eq!(canonical_fiber(5).unwrap(), (-2, -4));
    assert_eq!(canonical_fiber(3).unwrap(), (-2, -2));
    assert_eq!(canonical_fiber(12).unwrap(), (-2, -11));
}

#[test]
fn schur_examples() {
    assert_eq!(
        sym_filtration(&d(5, 2, -1, 1)).0,
        vec![(-3, 3), (-1, 2), (1, 1)]
    );
    let s = sym_resolution_step(5, 2).unwrap();
    assert_eq!(
        [
            (s[0].m, s[0].x, s[0].y),
            (s[1].m, s[1].x, s[1].y),
            (s[2].m, s[2].x, s[2].y)
        ],
        [(1, -1, 1), (2, 0, 0), (0, 2, 0)]
    );
    assert_eq!(clebsch_gordan_rank2(3, 2), vec![(5, 0), (3, 1), (1, 2)]);
    assert_eq!(
        sym_cohomology(&d(5, 0, 0, 0)).unwrap(),
        GradedDims::single(0, 1u32)
    );
    // Sym^1 U^vee has sections C^N
    assert_eq!(
        sym_cohomology(&d(5, 1, 0, 0)).unwrap(),
        GradedDims::single(0, 5u32)
    );
    assert_eq!(
        sym_cohomology(&d(9, 2, -4, 1)).unwrap(),
        GradedDims::single(1, 1u32)
    );
}

#[test]
fn hom_bundles() {
    for t in 0..4 {
        for r in 0..4 {
            let h = hom_bundle(&d(7, 0, t, 0), &d(7, r, -1, 1));
            assert_eq!(h.len(), 1);
            assert_eq!((h[0].m, h[0].x, h[0].y), (r, -1 - t, 1));
        }
    }
}

#[test]
fn ext_examples() {
    for t in 1..=4i64 {
        let src = d(9, 0, t, 0);
        let got = ext_on_m(&src, &d(9, (t - 1) as u32, -1, 1)).unwrap().result;
        assert_eq!(
            got,
            Verdict::Determinate(GradedDims::single(1, 1u32)),
            "t={t}"
        );
        for r in 0..=(t - 2).min(3) {
            assert!(
                ext_on_m(&src, &d(9, r as u32, -1, 1))
                    .unwrap()
                    .result
                    .is_zero(),
                "t={t} r={r}"
            );
        }
    }
    assert_eq!(
        ext_on_flag(&d(5, 0, 0, 0), &d(5, 0, 0, 0)).unwrap(),
        GradedDims::single(0, 1u32)
    );
}

#[test]
fn lemma_sweeps_small() {
    let r = check_lemma(LemmaId::A4, 2, 1).unwrap();
    assert!(r.passed() && r.mismatches == 0);
    let r = check_lemma(LemmaId::A6, 2, 0).unwrap();
    assert_eq!(r.points.len(), 1);
    assert!(r.passed());
    let r = check_lemma(LemmaId::A5, 4, 0).unwrap();
    assert!(r.passed());
    assert!(r.points.iter().all(|p| p.got.is_zero()));
}

#[test]
fn truncated_polynomials() {
    let inv = poly_inv_unit(&TruncPoly::new(3, &[1, 3])).unwrap();
    assert_eq!(inv, TruncPoly::new(3, &[1, -3, 9]));
    assert_eq!(
        poly_pow(&TruncPoly::new(2, &[1, 2]), 2).unwrap(),
        TruncPoly::new(2, &[1, 4])
    );
    let num = poly_pow(&TruncPoly::new(4, &[1, 2]), 4).unwrap();
    let q = poly_mul(&num, &poly_inv_unit(&TruncPoly::new(4, &[1, 3])).unwrap()).unwrap();
    // 1 + 5H + 9H^2 + 5H^3: the H^2 term is 24 - 24 + 9
    assert_eq!(q, TruncPoly::new(4, &[1, 5, 9, 5]));
    assert!(poly_inv_unit(&TruncPoly::new(3, &[2, 1])).is_err());
}

#[test]
fn cover_degrees() {
    let c = cover_degree(2, 1).unwrap();
    assert_eq!(
        (c.n_poly.clone(), c.n_closed.clone(), c.agree),
        (11.into(), 11.into(), true)
    );
    assert_eq!(cover_degree(2, 0).unwrap().n_poly, BigInt::from(5));
    let c = cover_degree(3, 0).unwrap();
    assert!(c.agree);
    for n in 2..=10 {
        for eps in 0..=1 {
            let c = cover_degree(n, eps).unwrap();
            assert!(c.agree, "n={n} eps={eps}");
            assert!(c.n_poly > BigInt::from(0));
        }
    }
}

#[test]
fn condition_counts() {
    assert_eq!(h0_twisted_quotient(5).unwrap(), 40.into());
    assert_eq!(h0_twisted_quotient(4).unwrap(), 20.into());
    assert_eq!(section_count_ld(5).unwrap(), 30.into());
    assert_eq!(section_count_syzygy(5).unwrap(), 14.into());
    assert_eq!(condition3_bound(5).unwrap(), 10.into());
    for big_n in 4..=20u64 {
        assert_eq!(
            condition3_bound(big_n as usize).unwrap(),
            binomial(big_n + 1, 2) - BigInt::from(big_n)
        );
    }
    assert!(conditions(2, 1).unwrap().ld_exceeds_syzygy);
}

#[test]
fn board_shapes() {
    assert_eq!(initial_board_fibration(6, 0).unwrap().copies(), 120);
    assert_eq!(initial_board_fibration(6, 1).unwrap().copies(), 143);
    assert_eq!(initial_board_fibration(2, 1).unwrap().copies(), 15);
    assert_eq!(initial_board_flip(2, 0).unwrap().copies(), 5);
    assert_eq!(initial_board_flip(2, 1).unwrap().copies(), 12);
    assert_eq!(initial_board_flip(3, 0).unwrap().copies(), 21);
    let grid = render_ascii(&initial_board_fibration(6, 0).unwrap());
    let zero_rows = grid
        .lines()
        .filter(|l| l.split_whitespace().filter(|c| *c == "0").count() == 12)
        .count();
    assert_eq!(zero_rows, 10);
}

#[test]
fn n6_first_upward_row() {
    let g = run_game(6, 0, Mode::Fibration, false).unwrap();
    let phase = g.phases.iter().find(|p| p.phase == "first upward").unwrap();
    let row: Vec<String> = phase
        .board
        .entries
        .iter()
        .filter(|e| e.y == 1 && e.x <= 0)
        .map(|e| e.content.sym_max().unwrap().to_string())
        .collect();
    assert_eq!(row.join(" "), "0 0 1 2 3 4 4");
}

#[test]
fn final_patterns() {
    for n in 2..=6 {
        for eps in 0..=1 {
            let g = run_game(n, eps, Mode::Fibration, false).unwrap();
            assert!(g.gr2.found, "n={n} eps={eps}");
            let want: Vec<Entry> = gr2_pattern(n, eps)
                .into_iter()
                .map(|((x, y), m)| Entry::new(x, y, Content::sym(m)))
                .collect();
            assert_eq!(g.gr2.boxes, want);
        }
    }
    // n = 6 even: six 5s, then five 4s plus the gray 4 at the origin
    let counts = gr2_pattern(6, 0).iter().fold([0; 2], |mut a, (_, m)| {
        a[(*m == 5) as usize] += 1;
        a
    });
    assert_eq!(counts, [6, 6]);
}

#[test]
fn n2_odd_residual() {
    let g = run_game(2, 1, Mode::Fibration, true).unwrap();
    assert_eq!(g.residual_f_count, 5);
    assert_eq!(
        cover_degree(2, 1).unwrap().n_poly + BigInt::from(g.residual_f_count),
        16.into()
    );
    assert!(!g.has_discrepancy());
}
