use flagchess::chess::board::initial_board_fibration;
use flagchess::chess::game::expected_residual;
use flagchess::chess::moves::{replay, Engine, Move};
use flagchess::interface::{render_ascii, render_latex, GameRecord};
use flagchess::{run_game, Error, GameResult, Mode};

fn check_conservation(g: &GameResult) {
    let total = g.initial.copies();
    for (i, e) in g.log.0.iter().enumerate() {
        assert_eq!(
            (e.copies_before, e.copies_after),
            (total, total),
            "move {i}"
        );
    }
    assert_eq!(g.final_board.copies(), total);
    assert_eq!(g.gr2.copies + g.residual_f_count, total);
}

#[test]
fn fibration_games_all_n() {
    for n in 2..=8 {
        for eps in 0..=1 {
            let g = run_game(n, eps, Mode::Fibration, false).unwrap();
            check_conservation(&g);
            assert!(g.gr2.found, "n={n} eps={eps}");
            assert_eq!(replay(&g.initial, &g.log).unwrap(), g.final_board);
            let n64 = n as u64;
            if eps == 1 {
                assert_eq!(g.residual_f_count, expected_residual(n, eps));
                assert!(g.flags.is_empty());
            } else {
                // fixed by conservation: N(N-2) - Gr2 copies = 2n^2 - 3n
                assert_eq!(g.residual_f_count, 2 * n64 * n64 - 3 * n64);
                assert!(g.has_discrepancy());
            }
        }
    }
}

#[test]
fn validated_games_match_unvalidated() {
    for n in 2..=4 {
        for (eps, mode) in [
            (0, Mode::Fibration),
            (1, Mode::Fibration),
            (0, Mode::Flip),
            (1, Mode::Flip),
        ] {
            let v = run_game(n, eps, mode, true).unwrap();
            let u = run_game(n, eps, mode, false).unwrap();
            assert!(
                v.log.0.iter().all(|e| e.verdict == "confirmed"),
                "n={n} eps={eps} {mode}"
            );
            assert!(v.log.oracle_checks() > 0);
            assert_eq!(v.log.moves(), u.log.moves());
            assert_eq!(v.final_board, u.final_board);
        }
    }
}

#[test]
fn flip_games() {
    for n in 2..=5 {
        for eps in 0..=1 {
            let g = run_game(n, eps, Mode::Flip, n <= 3).unwrap();
            check_conservation(&g);
            assert!(g.gr2.found, "n={n} eps={eps}");
            assert!(!g.has_discrepancy());
            if n <= 3 {
                assert!(g.log.0.iter().all(|e| e.verdict == "confirmed"));
            }
            assert_eq!(replay(&g.initial, &g.log).unwrap(), g.final_board);
        }
    }
}

#[test]
fn refused_swap_leaves_board_alone() {
    let b = initial_board_fibration(3, 0).unwrap();
    let mut e = Engine::new(b.clone(), true);
    match e.apply(Move::Swap { at: 0 }) {
        Err(Error::Refused { kind, reason }) => {
            assert!(kind == "oracle" && reason.contains("Ext"), "{reason}")
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(e.board(), &b);
    assert!(e.log().is_empty());
    let mut e = Engine::new(b.clone(), false);
    e.apply(Move::Swap { at: 0 }).unwrap();
    assert_eq!(e.log().len(), 1);
}

#[test]
fn out_of_range_moves_are_errors() {
    let b = initial_board_fibration(2, 0).unwrap();
    let mut e = Engine::new(b.clone(), false);
    assert!(e.apply(Move::Swap { at: b.len() }).is_err());
    assert!(e.apply(Move::Merge { at: 0, len: 3 }).is_err());
    assert_eq!(e.board(), &b);
}

#[test]
fn bad_parameters() {
    assert!(matches!(
        run_game(1, 0, Mode::Fibration, false),
        Err(Error::Domain(_))
    ));
    assert!(matches!(
        run_game(3, 2, Mode::Flip, false),
        Err(Error::Domain(_))
    ));
}

#[test]
fn output_is_deterministic() {
    for (n, eps, mode) in [
        (3, 0, Mode::Fibration),
        (3, 1, Mode::Flip),
        (5, 1, Mode::Fibration),
    ] {
        let a = GameRecord::from_result(&run_game(n, eps, mode, n <= 3).unwrap());
        let b = GameRecord::from_result(&run_game(n, eps, mode, n <= 3).unwrap());
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
        assert_eq!(a.to_json_lines().unwrap(), b.to_json_lines().unwrap());
        assert_eq!(GameRecord::from_json(&a.to_json().unwrap()).unwrap(), a);
        assert_eq!(
            GameRecord::from_json_lines(&a.to_json_lines().unwrap()).unwrap(),
            a
        );
        let g = run_game(n, eps, mode, false).unwrap();
        assert_eq!(
            render_ascii(&g.final_board),
            render_ascii(&g.final_board.clone())
        );
        assert_eq!(
            render_latex(&g.final_board),
            render_latex(&g.final_board.clone())
        );
    }
}

#[test]
fn record_schema_fields() {
    let r = GameRecord::from_result(&run_game(2, 1, Mode::Fibration, true).unwrap());
    let v: serde_json::Value = serde_json::from_str(&r.to_json().unwrap()).unwrap();
    for key in [
        "schema_version",
        "params",
        "initial",
        "moves",
        "final",
        "gr2",
        "residual_f_count",
        "flags",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    let mv = &v["moves"][0];
    for key in ["kind", "positions", "oracle", "verdict"] {
        assert!(mv.get(key).is_some(), "{key}");
    }
    assert_eq!(v["params"]["mode"], "fibration");
}

#[test]
fn refusal_completeness() {
    use flagchess::chess::board::{Board, Content, Entry};
    use flagchess::chess::moves::Side;
    for n in 2..=5usize {
        for eps in 0..=1usize {
            let t_max = (2 * n + eps - 3) as i64;
            for t in 1..=t_max {
                for r in 0..=(t - 1).min(n as i64 - 1) {
                    for mode in [Mode::Fibration, Mode::Flip] {
                        let entries = vec![
                            Entry::new(t, 0, Content::sym(0)),
                            Entry::new(-1, 1, Content::piece(r as u32)),
                        ];
                        let b = Board::new(n, eps, mode, entries).unwrap();
                        let mut e = Engine::new(b.clone(), true);
                        let swap = e.apply(Move::Swap { at: 0 });
                        let mut e = Engine::new(b, true);
                        let absorb = e.apply(Move::Absorb {
                            at: 0,
                            side: Side::Left,
                        });
                        let ctx = format!("n={n} eps={eps} t={t} r={r} {mode}");
                        if mode == Mode::Fibration {
                            assert_eq!(swap.is_err(), r == t - 1, "swap {ctx}");
                        } else {
                            assert!(swap.is_err() || r != t - 1, "swap {ctx}");
                        }
                        if r != t - 1 {
                            assert!(absorb.is_err(), "absorb {ctx}");
                        } else if mode == Mode::Fibration {
                            assert!(absorb.is_ok(), "absorb {ctx}");
                        }
                    }
                }
            }
        }
    }
}
