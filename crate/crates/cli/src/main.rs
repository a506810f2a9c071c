use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use griesmer_core::basis::{construct_basis, verify_basis, BasisCertificate, BasisError};
use griesmer_core::constructions as cons;
use griesmer_core::derived::{projected, residual, shortened};
use griesmer_core::galois_ring::GaloisRing;
use griesmer_core::gcode::{read_gcode, write_gcode};
use griesmer_core::geometry::multiset_of;
use griesmer_core::lab::{corpus, parse_selector, run_on, verify_theorem, CorpusEntry, Status, TheoremVerdict};
use griesmer_core::padic::{c_sum, nu_binom};
use griesmer_core::report::analyze;
use griesmer_core::search::{search, write_findings, SearchTask, Strategy};
use griesmer_core::ward::{criterion_basis, max_divisor_exponent_with_basis, WardMode};
use griesmer_core::{make_field, Elem, LinearCode};

/// Writes to stdout, exiting quietly when the reader has gone away.
fn write_stdout(text: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(2);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { write_stdout(&format!($($arg)*)) };
}

macro_rules! outln {
    () => { write_stdout("\n") };
    ($($arg:tt)*) => { write_stdout(&(format!($($arg)*) + "\n")) };
}

/// Griesmer codes and the divisibility of their weights.
#[derive(Parser)]
#[command(name = "griesmer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parameters, weights, divisor and theorem checks of a code.
    Analyze {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Build a code from a named family.
    Construct {
        family: Family,
        /// Family parameters, e.g. `simplex 4 3` or `rs 8 8 4`.
        params: Vec<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Residual, projected or shortened code.
    Derive {
        kind: DeriveKind,
        file: PathBuf,
        /// Codeword as comma-separated elements (residual, projected).
        /// Defaults to the first minimum-weight codeword.
        #[arg(long)]
        word: Option<String>,
        /// Column point as comma-separated elements (shortened).
        /// Defaults to the first endpoint.
        #[arg(long)]
        point: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construct (or with --verify, check) a certified basis.
    Basis {
        file: PathBuf,
        /// Check the file's own generator rows instead of constructing.
        #[arg(long)]
        verify: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Largest p-power divisor certified by the criterion.
    Ward {
        file: PathBuf,
        #[arg(long)]
        max_e: u32,
        #[arg(long, value_enum, default_value_t = ModeArg::Folded)]
        mode: ModeArg,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Replace row 1 by row 1 + alpha * row 2 of the basis.
        #[arg(long, default_value_t = 0)]
        alpha: Elem,
        #[arg(long)]
        json: bool,
    },
    /// p-adic helpers.
    Padic {
        #[command(subcommand)]
        op: PadicOp,
    },
    /// Projective-geometry views of a code.
    Geometry {
        #[command(subcommand)]
        op: GeometryOp,
    },
    /// Check divisibility theorems on a code or the built-in corpus.
    Verify {
        file: Option<PathBuf>,
        #[arg(long, conflicts_with = "file")]
        corpus: bool,
        #[arg(long, default_value = "all")]
        theorems: String,
        /// Write verdicts as JSON to this path (`-` for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Search for Griesmer codes as point multisets.
    Search {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        f: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: u64,
        #[arg(long, default_value = "random")]
        strategy: Strategy,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the counterexample parameter recipe (small test instances).
        #[arg(long)]
        no_recipe: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Simplex,
    Rm1,
    Hexacode,
    Unital,
    Ovoid,
    Repetition,
    Rs,
}

#[derive(Clone, Copy, ValueEnum)]
enum DeriveKind {
    Residual,
    Projected,
    Shortened,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Folded,
    Bounded,
}

#[derive(Subcommand)]
enum PadicOp {
    /// nu_p(binom(n, m)) by counting carries.
    Kummer { n: u64, m: u64, p: u64 },
    /// c(r, s; 1) over GF(p^f).
    Csum {
        r: u64,
        s: u64,
        #[arg(long)]
        field: String,
    },
    /// Teichmuller lift of a field element in GR(p^N, f).
    Teich {
        elem: Elem,
        #[arg(long)]
        field: String,
        #[arg(long)]
        prec: u32,
    },
}

#[derive(Subcommand)]
enum GeometryOp {
    /// Hyperplane multiplicities `<index> <M(H)>`.
    Spectrum { file: PathBuf },
}

fn parse_elems(s: &str) -> Result<Vec<Elem>> {
    s.split(',')
        .map(|t| t.trim().parse::<Elem>().with_context(|| format!("bad element {t:?}")))
        .collect()
}

fn parse_field(s: &str) -> Result<(u32, u32)> {
    let (p, f) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("expected --field p,f, got {s:?}"))?;
    Ok((p.trim().parse()?, f.trim().parse()?))
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            out!("{text}");
            Ok(())
        }
    }
}

fn print_json<T: serde::Serialize + ?Sized>(value: &T) -> Result<()> {
    outln!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn file_id(path: &Path) -> String {
    path.display().to_string()
}

fn construct(family: Family, params: &[u64]) -> Result<LinearCode> {
    let want = |n: usize, usage: &str| -> Result<()> {
        if params.len() == n {
            Ok(())
        } else {
            bail!("expected {usage}")
        }
    };
    let code = match family {
        Family::Simplex => {
            want(2, "simplex Q K")?;
            cons::simplex(params[0], params[1] as usize)?
        }
        Family::Rm1 => {
            want(1, "rm1 M")?;
            cons::rm1(params[0] as usize)?
        }
        Family::Hexacode => {
            want(0, "hexacode")?;
            cons::hexacode()?
        }
        Family::Unital => {
            want(1, "unital Q0")?;
            cons::unital(params[0])?
        }
        Family::Ovoid => {
            want(1, "ovoid Q")?;
            cons::ovoid(params[0])?
        }
        Family::Repetition => {
            want(2, "repetition Q N")?;
            cons::repetition(params[0], params[1] as usize)?
        }
        Family::Rs => {
            want(3, "rs Q N K")?;
            cons::reed_solomon(params[0], params[1] as usize, params[2] as usize)?
        }
    };
    Ok(code)
}

fn render_certificate(cert: &BasisCertificate) -> String {
    use std::fmt::Write as _;
    let mut s = String::new();
    let _ = writeln!(s, "[n,k,d] = [{},{},{}], e = {}", cert.n, cert.k, cert.d, cert.e);
    for (i, row) in cert.rows.iter().enumerate() {
        let r: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "a_{} = {}", i + 1, r.join(" "));
    }
    for p in &cert.prefixes {
        let _ = writeln!(
            s,
            "prefix {}: effective length {}, weights {:?}",
            p.rows, p.effective_length, p.weights
        );
    }
    for o in &cert.omissions {
        let _ = writeln!(
            s,
            "omit a_{}: effective length {}, distance {}",
            o.omitted + 1,
            o.effective_length,
            o.min_distance
        );
    }
    for (j, cols) in cert.unit_columns.iter().enumerate() {
        let _ = writeln!(s, "unit e_{}: columns {:?}", j + 1, cols);
    }
    let _ = writeln!(s, "other columns: {}", cert.remaining_columns);
    if cert.constant_weight_shortcut {
        let _ = writeln!(s, "constant-weight code: row-reduced generator used");
    }
    s
}

fn verdict_line(v: &TheoremVerdict) -> String {
    let status = match v.status {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::Skipped => "skipped",
    };
    let mut line = format!("{:<26} {:<6} {status}", v.code, v.theorem.name());
    if let Some(c) = v.claimed_divisor {
        line += &format!(" claim={c} divisor={}", v.observed_divisor);
    }
    if let Some(r) = &v.reason {
        line += &format!(" ({r})");
    }
    if let Some(w) = &v.witness {
        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        line += &format!(" witness={}", w.join(","));
    }
    line
}

/// Returns the exit code for a command that ran to completion.
fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Analyze { file, json } => {
            let code = read_gcode(&file)?;
            let report = analyze(&code, &file_id(&file))?;
            if json {
                print_json(&report)?;
            } else {
                out!("{}", report.render());
            }
            Ok(u8::from(report.has_violation()))
        }
        Command::Construct { family, params, output } => {
            let code = construct(family, &params)?;
            emit(&write_gcode(&code), output.as_deref())?;
            Ok(0)
        }
        Command::Derive {
            kind,
            file,
            word,
            point,
            output,
        } => {
            let code = read_gcode(&file)?;
            let derived = match kind {
                DeriveKind::Residual | DeriveKind::Projected => {
                    let a = match word {
                        Some(w) => parse_elems(&w)?,
                        None => code.min_weight_codeword()?.1,
                    };
                    match kind {
                        DeriveKind::Residual => residual(&code, &a)?,
                        _ => projected(&code, &a)?,
                    }
                }
                DeriveKind::Shortened => {
                    let pt = match point {
                        Some(p) => parse_elems(&p)?,
                        None => {
                            let m = multiset_of(&code)?;
                            let first = *m.endpoints().first().expect("nonempty multiset");
                            m.space().point(first).to_vec()
                        }
                    };
                    shortened(&code, &pt)?.derived
                }
            };
            emit(&write_gcode(&derived.code), output.as_deref())?;
            Ok(0)
        }
        Command::Basis {
            file,
            verify,
            output,
            json,
        } => {
            let code = read_gcode(&file)?;
            let outcome = if verify {
                verify_basis(&code, code.gen())
            } else {
                construct_basis(&code)
            };
            let cert = match outcome {
                Ok(cert) => cert,
                Err(BasisError::Clause { clause, detail }) => {
                    if json {
                        print_json(&json!({ "clause": clause.to_string(), "detail": detail }))?;
                    } else {
                        outln!("clause {clause} failed: {detail}");
                    }
                    return Ok(1);
                }
                Err(e) => return Err(e.into()),
            };
            if let Some(path) = &output {
                let rebased = LinearCode::new(code.field().clone(), cert.matrix())?;
                emit(&write_gcode(&rebased), Some(path))?;
            }
            if json {
                print_json(&cert)?;
            } else {
                out!("{}", render_certificate(&cert));
            }
            Ok(0)
        }
        Command::Ward {
            file,
            max_e,
            mode,
            max_len,
            alpha,
            json,
        } => {
            let code = read_gcode(&file)?;
            let mode = match mode {
                ModeArg::Folded => WardMode::Folded,
                ModeArg::Bounded => WardMode::Bounded { max_len },
            };
            let rows = criterion_basis(&code, alpha)?;
            let outcome = max_divisor_exponent_with_basis(&code, &rows, max_e, mode)?;
            if json {
                print_json(&outcome)?;
            } else {
                outln!("exponent = {} (of at most {})", outcome.exponent, outcome.e_max);
                outln!("tuples checked = {}", outcome.tuples_checked);
                if let Some(w) = &outcome.witness {
                    let items: Vec<String> = w
                        .items
                        .iter()
                        .map(|(row, lambda, r)| format!("(b{} * {lambda})^{r}", row + 1))
                        .collect();
                    let v = if w.valuation.saturated {
                        format!(">= {}", w.valuation.value)
                    } else {
                        w.valuation.value.to_string()
                    };
                    outln!(
                        "witness = {} digit sum {} valuation {v} allows {}",
                        items.join(" o "),
                        w.digit_sum,
                        w.allowed
                    );
                }
            }
            Ok(0)
        }
        Command::Padic { op } => {
            match op {
                PadicOp::Kummer { n, m, p } => {
                    if p < 2 || !(2..p).all(|i| p % i != 0) {
                        bail!("p = {p} is not prime");
                    }
                    outln!("{}", nu_binom(n, m, p)?);
                }
                PadicOp::Csum { r, s, field } => {
                    let (p, f) = parse_field(&field)?;
                    outln!("{}", c_sum(r, s, &*make_field(p, f, None)?)?);
                }
                PadicOp::Teich { elem, field, prec } => {
                    let (p, f) = parse_field(&field)?;
                    let field = make_field(p, f, None)?;
                    field.check(elem as u64)?;
                    let ring = GaloisRing::new(&field, prec)?;
                    let t = ring.teichmuller(elem)?;
                    let coeffs: Vec<String> = t.0.iter().map(|c| c.to_string()).collect();
                    outln!("{}", coeffs.join(" "));
                }
            }
            Ok(0)
        }
        Command::Geometry {
            op: GeometryOp::Spectrum { file },
        } => {
            let code = read_gcode(&file)?;
            let m = multiset_of(&code)?;
            for (h, count) in m.spectrum().iter().enumerate() {
                outln!("{h} {count}");
            }
            outln!("gamma={} endpoints={}", m.gamma()?, m.endpoints().len());
            Ok(0)
        }
        Command::Verify {
            file,
            corpus: use_corpus,
            theorems,
            json,
        } => {
            let selected = parse_selector(&theorems)?;
            let verdicts = match (file, use_corpus) {
                (Some(path), false) => {
                    let code = read_gcode(&path)?;
                    let id = file_id(&path);
                    selected
                        .iter()
                        .map(|&t| verify_theorem(&code, &id, t))
                        .collect::<Result<Vec<_>, _>>()?
                }
                (None, true) => {
                    let entries: Vec<CorpusEntry> = corpus()?;
                    run_on(&entries, &selected)?
                }
                _ => bail!("give a .gcode file or --corpus"),
            };
            match json.as_deref() {
                Some(p) if p == Path::new("-") => print_json(&verdicts)?,
                Some(p) => {
                    let body = serde_json::to_string_pretty(&verdicts)? + "\n";
                    emit(&body, Some(p))?;
                }
                None => {}
            }
            if json.as_deref() != Some(Path::new("-")) {
                for v in &verdicts {
                    outln!("{}", verdict_line(v));
                }
            }
            Ok(u8::from(verdicts.iter().any(TheoremVerdict::is_violation)))
        }
        Command::Search {
            p,
            f,
            k,
            d,
            strategy,
            budget,
            seed,
            no_recipe,
            out,
            json,
        } => {
            let task = SearchTask {
                p,
                f,
                k,
                d,
                strategy,
                budget,
                seed,
                enforce_recipe: !no_recipe,
            };
            let report = search(&task)?;
            if let Some(dir) = &out {
                write_findings(&report, dir)?;
            }
            if json {
                print_json(&report)?;
            } else {
                outln!("q = {}, n = {}, gamma = {}", report.q, report.n, report.gamma);
                if let Some(note) = &report.note {
                    outln!("note: {note}");
                }
                outln!(
                    "examined {} of {} candidates (budget exhausted: {})",
                    report.examined,
                    report.candidate_multisets,
                    report.budget_exhausted
                );
                outln!("hits = {}, distinct = {}", report.hits, report.codes.len());
                for (i, c) in report.codes.iter().enumerate() {
                    let wd: Vec<String> = c
                        .weight_distribution
                        .counts()
                        .iter()
                        .map(|(w, n)| format!("{w}:{n}"))
                        .collect();
                    outln!("code {i}: weights {} conj1 {:?}", wd.join(" "), c.conjecture.status);
                }
                outln!("conj1 failures = {}", report.conjecture_failures);
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
