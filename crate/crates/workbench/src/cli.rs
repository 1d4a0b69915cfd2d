use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use aca_core::algebra::{Field, FieldElement};
use aca_core::automata::{
    ca_apply, ca_change_group, ca_compose, ca_minimal_memory, ca_periodic_map, parse_element, surjunctivity_check,
    CellularAutomaton, GroupChange, Pattern,
};
use aca_core::geometry::{format_points, image_closure, image_points, Point, RegularMap};
use aca_core::lattice::{sublattices_up_to, Sublattice, Window};
use aca_core::limits::{
    closed_image_search, ml_lift, real_counterexample_thresholds, reversibility_search, ClosedImageResult,
    LiftResult, ProjectiveSequence, ReversibilityResult,
};
use aca_core::Budget;
use clap::{Args, Parser, Subcommand};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::catalog;
use crate::error::{Result, WorkbenchError};
use crate::report::{RunReport, EXIT_BUDGET, EXIT_CERTIFICATE, EXIT_OK, EXIT_USAGE};
use crate::selftest;
use crate::spec::AutomatonSpec;

#[derive(Parser, Debug)]
#[command(name = "aca", version, about = "Algebraic cellular automata workbench")]
pub struct Cli {
    /// Field override: `Q`, `p`, `p^k` or `p^k:modulus`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Groebner step budget.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Seed for randomly generated test patterns.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Append `elapsed_ms` to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Write the report to a file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Source {
    /// An `.aca` file, or `example:<name>` for a catalog entry.
    #[arg(long)]
    pub spec: String,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply an automaton to a finite pattern.
    Eval {
        #[command(flatten)]
        source: Source,
        /// Pattern file with `cell : value` lines.
        #[arg(long, conflicts_with = "random")]
        pattern: Option<PathBuf>,
        /// Random pattern on the box `[0, n)^d`.
        #[arg(long)]
        random: Option<usize>,
    },
    /// The composite `outer ∘ inner`.
    Compose {
        #[arg(long)]
        outer: String,
        #[arg(long)]
        inner: String,
    },
    /// Minimal memory set and the rule restated on it.
    Minmem {
        #[command(flatten)]
        source: Source,
    },
    /// Restrict to a sublattice containing the memory.
    Restrict {
        #[command(flatten)]
        source: Source,
        /// `n` for `nZ^d`, or rows `a,b;c,d`.
        #[arg(long)]
        lattice: String,
    },
    /// Induce along the basis of a sublattice of a larger lattice.
    Induce {
        #[command(flatten)]
        source: Source,
        /// Generator rows in the larger lattice, e.g. `1,0`.
        #[arg(long)]
        lattice: String,
    },
    /// The induced self-map on periodic configurations.
    Periodic {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        lattice: String,
    },
    /// Injectivity and surjectivity on periodic configurations.
    Surjunctivity {
        #[command(flatten)]
        source: Source,
        /// Comma-separated `n` for the lattices `nZ^d`.
        #[arg(long)]
        lattices: Option<String>,
        /// Every sublattice of index at most this.
        #[arg(long)]
        max_index: Option<u64>,
        /// Test over `F_{p^k}` for `k = 1..=levels`.
        #[arg(long, default_value_t = 1)]
        levels: u32,
    },
    /// Image closure of a regular map file.
    Image {
        #[arg(long)]
        map: PathBuf,
        /// Also list the image points (finite fields).
        #[arg(long)]
        points: bool,
    },
    /// Search for an inverse automaton or a non-injectivity witness.
    Invert {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Search for a preimage of a constant configuration.
    Closedimage {
        #[command(flatten)]
        source: Source,
        /// Constant target value, comma-separated for vector alphabets.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Mittag-Leffler lifting on a projective sequence.
    Mlcheck {
        /// `shrinking` or `iterate`.
        #[arg(long)]
        sequence: String,
        /// Self-map file for `iterate`.
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Backward-chain thresholds of the real quadratic rule.
    Thresholds {
        #[arg(long, default_value_t = 5)]
        k: usize,
    },
    /// Print a catalog entry as a spec, with its inverse when known.
    Example {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Run the built-in oracle checks.
    Selftest,
}

struct Ctx {
    field: Option<Field>,
    budget: Budget,
    seed: u64,
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, S>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let start = Instant::now();
    let result = setup(&cli).and_then(|ctx| dispatch(&cli.command, &ctx, echo.join(" ")));
    let mut report = match result {
        Ok(r) => r,
        Err(e) if e.is_budget() => {
            let mut r = RunReport::new(echo.join(" "));
            r.field("budget", "exhausted").field("error", &e);
            r.exit = EXIT_BUDGET;
            r
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if cli.timing {
        report.elapsed_ms = Some(start.elapsed().as_millis());
    }
    let text = report.render();
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: {e}");
        return EXIT_USAGE;
    }
    report.exit
}

fn setup(cli: &Cli) -> Result<Ctx> {
    let field = cli.field.as_deref().map(Field::parse).transpose()?;
    let budget = cli.budget.map_or_else(Budget::default, Budget::with_steps);
    Ok(Ctx {
        field,
        budget,
        seed: cli.seed,
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| WorkbenchError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(src: &str, ctx: &Ctx) -> Result<(AutomatonSpec, CellularAutomaton)> {
    if let Some(name) = src.strip_prefix("example:") {
        let e = catalog::lookup(name, ctx.field.as_ref(), &ctx.budget)?;
        return Ok((e.spec(), e.automaton));
    }
    let spec = AutomatonSpec::parse_with_field(&read(Path::new(src))?, ctx.field.as_ref())?;
    let tau = spec.to_automaton(&ctx.budget)?;
    Ok((spec, tau))
}

fn spec_text(tau: &CellularAutomaton, name: Option<&str>) -> String {
    AutomatonSpec::from_automaton(tau, name).to_text()
}

/// `n` gives `nZ^dim`; otherwise `;`-separated rows of `,`-separated integers.
pub fn parse_lattice(text: &str, dim: usize) -> Result<Sublattice> {
    let bad = || WorkbenchError::usage(format!("cannot parse lattice `{text}`"));
    if let Ok(n) = text.trim().parse::<i64>() {
        return Ok(Sublattice::scaled(dim, n)?);
    }
    let rows = text
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| bad())?;
    let d = rows.first().map(Vec::len).ok_or_else(bad)?;
    Ok(Sublattice::new(d, &rows)?)
}

/// Uniform random alphabet points on `window`; small integers over the rationals.
pub fn random_pattern(tau: &CellularAutomaton, window: &Window, rng: &mut StdRng, budget: &Budget) -> Result<Pattern> {
    let field = tau.field();
    let values: Vec<Point> = if field.is_finite() {
        let points = tau.alphabet().enumerate_points(budget)?;
        if points.is_empty() {
            return Err(WorkbenchError::usage("the alphabet has no points"));
        }
        window.elements().iter().map(|_| points[rng.gen_range(0..points.len())].clone()).collect()
    } else {
        if !tau.alphabet().is_full() {
            return Err(WorkbenchError::usage("random rational patterns need a full affine alphabet"));
        }
        let m = tau.m();
        window
            .elements()
            .iter()
            .map(|_| (0..m).map(|_| field.from_i64(rng.gen_range(-9..=9))).collect())
            .collect()
    };
    Ok(Pattern::new(window.clone(), values)?)
}

fn dispatch(cmd: &Command, ctx: &Ctx, echo: String) -> Result<RunReport> {
    let mut r = RunReport::new(echo);
    let b = &ctx.budget;
    match cmd {
        Command::Eval { source, pattern, random } => {
            let (_, tau) = load(&source.spec, ctx)?;
            let input = match (pattern, random) {
                (Some(p), _) => Pattern::parse(&read(p)?, tau.dim(), tau.field())?,
                (None, Some(n)) => {
                    let d = tau.dim();
                    let w = Window::boxed(&vec![0; d], &vec![*n as i64 - 1; d]);
                    random_pattern(&tau, &w, &mut StdRng::seed_from_u64(ctx.seed), b)?
                }
                (None, None) => return Err(WorkbenchError::usage("eval needs --pattern or --random")),
            };
            input.validate(tau.alphabet())?;
            let output = ca_apply(&tau, &input)?;
            r.field("input_cells", input.window().len());
            r.field("output_cells", output.window().len());
            let _ = writeln!(r.body, "input:");
            r.body.push_str(&input.to_text(tau.field()));
            let _ = writeln!(r.body, "output:");
            r.body.push_str(&output.to_text(tau.field()));
        }
        Command::Compose { outer, inner } => {
            let (_, sigma) = load(outer, ctx)?;
            let (_, tau) = load(inner, ctx)?;
            let c = ca_compose(&sigma, &tau)?;
            r.field("memory", c.memory());
            r.body.push_str(&spec_text(&c, Some("composite")));
        }
        Command::Minmem { source } => {
            let (spec, tau) = load(&source.spec, ctx)?;
            let (m0, min) = ca_minimal_memory(&tau, b)?;
            r.field("memory", tau.memory()).field("minimal_memory", &m0);
            r.body.push_str(&spec_text(&min, spec.name.as_deref()));
        }
        Command::Restrict { source, lattice } | Command::Induce { source, lattice } => {
            let (spec, tau) = load(&source.spec, ctx)?;
            let h = parse_lattice(lattice, tau.dim())?;
            let dir = match cmd {
                Command::Restrict { .. } => GroupChange::Restrict,
                _ => GroupChange::Induce,
            };
            let t = ca_change_group(&tau, &h, dir)?;
            r.field("lattice", &h).field("dim", t.dim()).field("memory", t.memory());
            r.body.push_str(&spec_text(&t, spec.name.as_deref()));
        }
        Command::Periodic { source, lattice } => {
            let (_, tau) = load(&source.spec, ctx)?;
            let h = parse_lattice(lattice, tau.dim())?;
            let map = ca_periodic_map(&tau, &h)?;
            r.field("lattice", &h).field("index", h.index().map_or("infinite".into(), |i| i.to_string()));
            r.body.push_str(&map.to_text());
        }
        Command::Surjunctivity { source, lattices, max_index, levels } => {
            let (_, tau) = load(&source.spec, ctx)?;
            let mut hs = Vec::new();
            if let Some(list) = lattices {
                for n in list.split(',') {
                    hs.push(parse_lattice(n, tau.dim())?);
                }
            }
            if let Some(k) = max_index {
                hs.extend(sublattices_up_to(tau.dim(), *k)?);
            }
            if hs.is_empty() {
                return Err(WorkbenchError::usage("surjunctivity needs --lattices or --max-index"));
            }
            let rep = surjunctivity_check(&tau, &hs, *levels, b)?;
            for (i, v) in rep.lattices.iter().enumerate() {
                let _ = writeln!(
                    r.body,
                    "lattice[{i}]={} index={} injective={} surjective={}",
                    v.lattice,
                    v.lattice.index().unwrap_or(0),
                    v.report.injective(),
                    v.report.levels.iter().all(|l| l.surjective)
                );
                for l in &v.report.levels {
                    let _ = writeln!(
                        r.body,
                        "lattice[{i}].k{}: points={} image={} injective={} surjective={}",
                        l.k, l.points, l.image_size, l.injective, l.surjective
                    );
                }
            }
            r.field("lattices", rep.lattices.len())
                .field("all_bijective", rep.all_bijective())
                .field("injective_implies_surjective", rep.consistent());
            if let Some(v) = rep.non_injective().first() {
                if let Some((x, y)) = v.collision(tau.m()) {
                    let f = tau.field();
                    let reps = aca_core::lattice::coset_data(&v.lattice)?.representatives().clone();
                    let mut c = format!("period_lattice={}\nfirst:\n", v.lattice);
                    c.push_str(&x.to_pattern(&reps).to_text(f));
                    c.push_str("second:\n");
                    c.push_str(&y.to_pattern(&reps).to_text(f));
                    r.certificate = Some(c);
                    r.exit = EXIT_CERTIFICATE;
                }
            }
        }
        Command::Image { map, points } => {
            let f = RegularMap::parse(&read(map)?, b)?;
            let closure = image_closure(&f, b)?;
            r.field("closure", closure.to_text());
            if *points {
                let pts = image_points(&f, b)?;
                r.field("image_points", pts.len());
                r.body.push_str(&format_points(f.field(), &pts));
            }
        }
        Command::Invert { source, depth } => {
            let (spec, tau) = load(&source.spec, ctx)?;
            let rep = reversibility_search(&tau, *depth, b)?;
            let text = rep.to_text(&tau);
            match &rep.result {
                ReversibilityResult::Inverse { automaton, .. } => {
                    r.body = text;
                    let name = spec.name.as_deref().map(|n| format!("{n}-inverse"));
                    let _ = writeln!(r.body, "inverse spec:");
                    r.body.push_str(&spec_text(automaton, name.as_deref()));
                }
                ReversibilityResult::Witness { lattice, .. } => {
                    let cut = text.find("first:").unwrap_or(text.len());
                    r.body = text[..cut].to_string();
                    r.certificate = Some(text[cut..].to_string());
                    r.exit = if lattice.is_some() { EXIT_CERTIFICATE } else { EXIT_BUDGET };
                }
                ReversibilityResult::Inconclusive => {
                    r.body = text;
                    r.exit = EXIT_BUDGET;
                }
            }
        }
        Command::Closedimage { source, target, depth } => {
            let (_, tau) = load(&source.spec, ctx)?;
            let value: Point = target
                .split(',')
                .map(|t| parse_element(tau.field(), t))
                .collect::<Result<Vec<FieldElement>, _>>()?;
            if !tau.alphabet().contains(&value)? {
                return Err(WorkbenchError::usage("target value is not in the alphabet"));
            }
            let rep = closed_image_search(&tau, move |_| value.clone(), *depth, b)?;
            r.body = rep.to_text(tau.field());
            match &rep.result {
                ClosedImageResult::Preimage { .. } => {}
                ClosedImageResult::Obstruction { level } => {
                    r.certificate = Some(format!("empty_fiber_level={level}\n"));
                    r.exit = EXIT_CERTIFICATE;
                }
                ClosedImageResult::SymbolicEvidence { .. } => r.exit = EXIT_BUDGET,
            }
        }
        Command::Mlcheck { sequence, map, depth } => {
            let seq = match sequence.as_str() {
                "shrinking" => {
                    let f = ctx.field.clone().ok_or_else(|| WorkbenchError::usage("shrinking needs --field"))?;
                    ProjectiveSequence::shrinking(&f)?
                }
                "iterate" => {
                    let path = map.as_ref().ok_or_else(|| WorkbenchError::usage("iterate needs --map"))?;
                    ProjectiveSequence::iterate(RegularMap::parse(&read(path)?, b)?)
                }
                other => return Err(WorkbenchError::usage(format!("unknown sequence `{other}`"))),
            };
            let lift = ml_lift(&seq, *depth, b)?;
            r.body = lift.to_text();
            if let LiftResult::Obstruction { level } = lift.result {
                r.certificate = Some(format!("empty_level={level}\n"));
                r.exit = EXIT_CERTIFICATE;
            }
        }
        Command::Thresholds { k } => {
            let t = real_counterexample_thresholds(*k);
            r.body = t.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ") + "\n";
            r.bare = true;
        }
        Command::Example { name, list } => {
            if *list || name.is_none() {
                r.body = catalog::NAMES.join("\n") + "\n";
                r.bare = true;
                return Ok(r);
            }
            let e = catalog::lookup(name.as_deref().unwrap(), ctx.field.as_ref(), b)?;
            r.body.push_str(&e.spec().to_text());
            if let Some(inv) = e.inverse_spec() {
                let _ = writeln!(r.body, "inverse spec:");
                r.body.push_str(&inv.to_text());
            }
        }
        Command::Selftest => {
            let results = selftest::run_all(&ctx.budget);
            for (name, outcome) in &results {
                match outcome {
                    Ok(()) => {
                        let _ = writeln!(r.body, "check {name}=pass");
                    }
                    Err(msg) => {
                        let _ = writeln!(r.body, "check {name}=fail ({msg})");
                    }
                }
            }
            let failed = results.iter().filter(|(_, o)| o.is_err()).count();
            r.field("checks", results.len()).field("failed", failed);
            if failed > 0 {
                r.exit = EXIT_USAGE;
            }
        }
    }
    if !r.bare {
        r.field("budget", "ok");
    }
    Ok(r)
}
