use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use flagchess::chern::{conditions, cover_degree};
use flagchess::chess::game::default_validate;
use flagchess::interface::{render_ascii, render_latex, GameRecord};
use flagchess::oracle::{check_lemma, ext_on_flag, ext_on_m, PointStatus};
use flagchess::schur::{sym_cohomology_exact, sym_cohomology_filtration};
use flagchess::weights::{line_bundle_cohomology_traced, Regularized};
use flagchess::{run_game, BundleDescriptor, Error, LemmaId, Mode, Space, Verdict};
use serde_json::json;

const OK: u8 = 0;
const DISCREPANCY: u8 = 1;
const REFUSED: u8 = 2;
const USAGE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Text,
    Json,
    JsonLines,
    Latex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpaceArg {
    Flag,
    #[value(name = "M", alias = "m")]
    M,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Fibration,
    Flip,
}

#[derive(Debug, Parser)]
#[command(
    name = "flagchess",
    version,
    about = "Cohomology on F(1,2,N) and the mutation chess game"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        global = true,
        value_enum,
        env = "FLAGCHESS_EMIT",
        default_value = "text"
    )]
    emit: Emit,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Line bundle O(x,y) on F(1,2,N) with its reflection trace.
    Bwb {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
    },
    /// Sym^m U^vee (x,y), exact and via its line-bundle filtration.
    Cohom {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
    },
    /// Ext between two bundles on the flag variety or on M.
    Ext {
        #[arg(long = "N")]
        big_n: usize,
        #[arg(long, value_enum)]
        space: SpaceArg,
        /// m,x,y
        #[arg(long, allow_hyphen_values = true)]
        src: String,
        /// m,x,y
        #[arg(long, allow_hyphen_values = true)]
        tgt: String,
    },
    /// Sweep a vanishing lemma over its parameter grid.
    Lemma {
        #[arg(long)]
        which: String,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        eps: usize,
    },
    /// Play a scripted game.
    Game {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        eps: usize,
        #[arg(long, value_enum, default_value = "fibration")]
        mode: ModeArg,
        /// Check every move with the oracle (default for n <= 4).
        #[arg(long, conflicts_with = "no_validate")]
        validate: bool,
        #[arg(long)]
        no_validate: bool,
    },
    /// Degree of the cover, by series and by closed sum.
    Degree {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        eps: usize,
    },
    /// Section counts and the base dimension bound.
    Conditions {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        eps: usize,
    },
}

struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Self { text, code: OK }
    }
}

fn parse_triple(big_n: usize, s: &str) -> Result<BundleDescriptor, Error> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let nums: Result<Vec<i64>, _> = parts.iter().map(|p| p.parse::<i64>()).collect();
    match nums.as_deref() {
        Ok([m, x, y]) if *m >= 0 => BundleDescriptor::new(big_n, *m as u32, *x, *y),
        _ => Err(Error::Domain(format!(
            "expected m,x,y with m >= 0, got {s:?}"
        ))),
    }
}

fn render(emit: Emit, value: serde_json::Value, text: String) -> Result<String, Error> {
    match emit {
        Emit::Text => Ok(text),
        Emit::Json | Emit::JsonLines => Ok(format!("{value}\n")),
        Emit::Latex => Err(Error::Domain(
            "latex output is only available for game".into(),
        )),
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.cmd {
        Cmd::Bwb { big_n, x, y } => {
            let (res, reg) = line_bundle_cohomology_traced(*big_n, *x, *y)?;
            let mut t = format!("O({x},{y}) on F(1,2,{big_n}): {res}\n");
            for step in reg.trace() {
                let _ = writeln!(t, "  s{} -> {}", step.index, step.result);
            }
            let reflections = match &reg {
                Regularized::Singular { trace } => {
                    let _ = writeln!(t, "  singular after {} reflections", trace.len());
                    trace.len()
                }
                Regularized::Regular { length, .. } => {
                    let _ = writeln!(t, "  reflections: {length}");
                    *length
                }
            };
            let v = json!({"N": big_n, "x": x, "y": y, "result": res, "reflections": reflections, "trace": reg});
            Ok(Outcome::ok(render(cli.emit, v, t)?))
        }
        Cmd::Cohom { big_n, m, x, y } => {
            let d = BundleDescriptor::new(*big_n, *m, *x, *y)?;
            let (total, pieces) = sym_cohomology_exact(&d)?;
            let filt = sym_cohomology_filtration(&d)?;
            let mut t =
                format!("H*({d}) on F(1,2,{big_n}) = {total}\n  pushforward to G(2,{big_n}):\n");
            for p in &pieces {
                let _ = writeln!(
                    t,
                    "    Sym{} U^vee ({}) from degree {}: {}",
                    p.sym, p.twist, p.degree_shift, p.result
                );
            }
            let _ = writeln!(t, "  filtration:");
            for ((a, b), r) in &filt.pieces {
                let _ = writeln!(t, "    O({a},{b}): {r}");
            }
            let _ = writeln!(
                t,
                "  filtration verdict: {}, euler {}",
                filt.verdict,
                filt.euler_char()
            );
            let v = json!({"bundle": d, "exact": total, "pushforward": pieces, "filtration": filt});
            Ok(Outcome::ok(render(cli.emit, v, t)?))
        }
        Cmd::Ext {
            big_n,
            space,
            src,
            tgt,
        } => {
            let s = parse_triple(*big_n, src)?;
            let g = parse_triple(*big_n, tgt)?;
            let (verdict, v, mut t) = match space {
                SpaceArg::Flag => {
                    let r = Verdict::Determinate(ext_on_flag(&s, &g)?);
                    let v = json!({"space": Space::Flag, "source": s, "target": g, "result": r});
                    (r.clone(), v, format!("Ext_flag({s}, {g}) = {r}\n"))
                }
                SpaceArg::M => {
                    let k = ext_on_m(&s, &g)?;
                    let t = format!(
                        "Ext_M({s}, {g}) = {}\n  A = Ext_flag({s}, {}) = {}\n  B = Ext_flag({s}, {g}) = {}\n",
                        k.result,
                        g.twist(-1, -1),
                        k.a,
                        k.b
                    );
                    let v =
                        json!({"space": Space::HyperplaneM, "source": s, "target": g, "koszul": k});
                    (k.result, v, t)
                }
            };
            let code = if verdict == Verdict::Indeterminate {
                REFUSED
            } else {
                OK
            };
            if code != OK {
                t.push_str("  verdict is indeterminate\n");
            }
            Ok(Outcome {
                text: render(cli.emit, v, t)?,
                code,
            })
        }
        Cmd::Lemma { which, n, eps } => {
            let lemma: LemmaId = which.parse()?;
            let rep = check_lemma(lemma, *n, *eps)?;
            let mut t = format!(
                "{lemma:?} n={n} eps={eps}: {} points, {} match, {} mismatch, {} indeterminate\n",
                rep.points.len(),
                rep.matches,
                rep.mismatches,
                rep.indeterminates
            );
            for p in rep.points.iter().filter(|p| p.status != PointStatus::Match) {
                let _ = writeln!(
                    t,
                    "  {:?} {} = {} ({:?})",
                    p.params, p.query, p.got, p.status
                );
            }
            let code = if rep.indeterminates > 0 {
                REFUSED
            } else if rep.mismatches > 0 {
                DISCREPANCY
            } else {
                OK
            };
            let v = serde_json::to_value(&rep).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Outcome {
                text: render(cli.emit, v, t)?,
                code,
            })
        }
        Cmd::Game {
            n,
            eps,
            mode,
            validate,
            no_validate,
        } => {
            let mode = match mode {
                ModeArg::Fibration => Mode::Fibration,
                ModeArg::Flip => Mode::Flip,
            };
            let check = if *validate {
                true
            } else if *no_validate {
                false
            } else {
                default_validate(*n)
            };
            let g = run_game(*n, *eps, mode, check)?;
            let code = if g.has_discrepancy() { DISCREPANCY } else { OK };
            let text = match cli.emit {
                Emit::Text => {
                    let mut t = format!("game n={n} eps={eps} mode={mode} validate={check}\n");
                    let _ = writeln!(
                        t,
                        "initial ({} copies):\n{}",
                        g.initial.copies(),
                        render_ascii(&g.initial)
                    );
                    for p in &g.phases {
                        let _ = writeln!(t, "after {}:\n{}", p.phase, render_ascii(&p.board));
                    }
                    let _ = writeln!(
                        t,
                        "moves: {}, oracle checks: {}",
                        g.log.len(),
                        g.log.oracle_checks()
                    );
                    let _ = writeln!(
                        t,
                        "gr2 found: {}, gr2 copies: {}",
                        g.gr2.found, g.gr2.copies
                    );
                    let _ = writeln!(t, "residual F-count: {}", g.residual_f_count);
                    for f in &g.flags {
                        let _ = writeln!(t, "flag: {f:?}");
                    }
                    t
                }
                Emit::Latex => {
                    let mut t = String::new();
                    for p in &g.phases {
                        let _ = writeln!(t, "% {}\n{}", p.phase, render_latex(&p.board));
                    }
                    t
                }
                Emit::Json => GameRecord::from_result(&g).to_json()? + "\n",
                Emit::JsonLines => GameRecord::from_result(&g).to_json_lines()?,
            };
            if code != OK {
                for f in &g.flags {
                    eprintln!("discrepancy: {f:?}");
                }
            }
            Ok(Outcome { text, code })
        }
        Cmd::Degree { n, eps } => {
            let c = cover_degree(*n, *eps)?;
            let t = format!(
                "{}\n  series: {}\n  closed: {}\n  agree={}\n",
                c.n_poly, c.n_poly, c.n_closed, c.agree
            );
            let code = if c.agree { OK } else { DISCREPANCY };
            let v = serde_json::to_value(&c).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Outcome {
                text: render(cli.emit, v, t)?,
                code,
            })
        }
        Cmd::Conditions { n, eps } => {
            let c = conditions(*n, *eps)?;
            let t = format!(
                "N={}\n  h0(Q^vee(2)) = {}\n  linearly dependent count = {}\n  shared syzygy count = {}\n  ld >= syzygy: {}\n  dimension bound = {}\n",
                c.big_n,
                c.h0_twisted_quotient,
                c.section_count_ld,
                c.section_count_syzygy,
                c.ld_exceeds_syzygy,
                c.condition3_bound
            );
            let v = serde_json::to_value(&c).map_err(|e| Error::Parse(e.to_string()))?;
            Ok(Outcome::ok(render(cli.emit, v, t)?))
        }
    }
}

fn code_for(e: &Error) -> u8 {
    match e {
        Error::Refused { .. } | Error::Pattern { .. } => REFUSED,
        Error::Domain(_) | Error::Overflow | Error::Parse(_) => USAGE,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(USAGE);
                }
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(code_for(&e))
        }
    }
}
