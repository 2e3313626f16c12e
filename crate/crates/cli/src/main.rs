//! Command-line front end: field arithmetic, unit-vector and
//! orthogonal-matrix decompositions, triangle censuses, Cayley digraph
//! spectra, the BFS distance oracle, and the full verification ledger.
//!
//! Exit codes: 0 on success with all checks passing, 1 on any failed
//! verification, 2 on usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fqwaring::field::FieldSpec;
use fqwaring::oracle::{self, Diameter};
use fqwaring::orthogonal;
use fqwaring::spectrum;
use fqwaring::triangle;
use fqwaring::vector::{self};
use fqwaring::verify::{self, VerifyConfig};
use fqwaring::wire;

#[derive(Parser)]
#[command(
    name = "fqwaring",
    version,
    about = "Waring-type decompositions over finite fields: unit-vector sums, \
             orthogonal-matrix sums, triangle censuses, and Cayley digraph spectra, \
             with built-in brute-force verification"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for verify-all (1 = sequential). Output order is
    /// deterministic either way.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Increase logging on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

/// Field selection: either --q, or --p with --n.
#[derive(Args, Clone)]
struct FieldArgs {
    /// Field size q = p^n (odd prime power).
    #[arg(long)]
    q: Option<u64>,
    /// Characteristic (odd prime); use with --n.
    #[arg(long)]
    p: Option<u64>,
    /// Extension degree; use with --p.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldOp {
    Info,
    Add,
    Sub,
    Mul,
    Neg,
    Inv,
    Pow,
    Legendre,
    Sqrt,
    Trace,
    Char,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum GroupKind {
    #[default]
    O2,
    Sphere,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum ReportKind {
    #[default]
    Bounds,
    Full,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum SpaceKind {
    #[default]
    Vectors,
    Matrices,
}

#[derive(Subcommand)]
enum Cmd {
    /// Inspect a field or apply a scalar operation.
    Field {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = FieldOp::Info)]
        op: FieldOp,
        /// First operand, as a field literal (integer or coefficient list).
        #[arg(long)]
        x: Option<String>,
        /// Second operand, where the operation takes one.
        #[arg(long)]
        y: Option<String>,
        /// Exponent for pow.
        #[arg(long)]
        e: Option<u64>,
    },
    /// Write a vector as an exact sum of unit vectors.
    DecomposeVector {
        #[command(flatten)]
        field: FieldArgs,
        /// Vector literal, e.g. `[2,2]`, or `[[0,1],[2,0]]` over extensions.
        #[arg(long)]
        vector: String,
    },
    /// Write a square matrix as an exact sum of orthogonal matrices.
    DecomposeMatrix {
        #[command(flatten)]
        field: FieldArgs,
        /// Matrix literal, e.g. `[[1,0],[1,0]]`.
        #[arg(long)]
        matrix: String,
        /// Include the parts list even for d >= 4 (large).
        #[arg(long)]
        emit_parts: bool,
    },
    /// Triangle congruence classes in the plane.
    Triangles {
        #[command(subcommand)]
        cmd: TrianglesCmd,
    },
    /// Cayley digraph spectrum with bound verdicts.
    Spectrum {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t)]
        group: GroupKind,
        #[arg(long, value_enum, default_value_t)]
        report: ReportKind,
    },
    /// BFS distances from zero under the standard generator sets.
    Oracle {
        #[command(flatten)]
        field: FieldArgs,
        /// Dimension of the ambient vectors or matrices.
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum, default_value_t)]
        space: SpaceKind,
        /// Optional element whose distance to report.
        #[arg(long)]
        target: Option<String>,
    },
    /// Run the full verification ledger.
    VerifyAll {
        /// Cap on the field sizes.
        #[arg(long, default_value_t = 13)]
        qmax: u64,
        /// Include the d = 4 recursion checks.
        #[arg(long)]
        deep: bool,
    },
}

#[derive(Subcommand)]
enum TrianglesCmd {
    /// Number of congruence classes of nondegenerate triangles.
    Count {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Enumerate every class as (L1, L2, mu) rows.
    Census {
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Decide congruence of two origin-pinned triangles.
    Congruent {
        #[command(flatten)]
        field: FieldArgs,
        /// Left matrix literal.
        #[arg(long)]
        left: String,
        /// Right matrix literal.
        #[arg(long)]
        right: String,
    },
    /// Decide whether a nondegenerate triangle with these side lengths exists.
    Sides {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        l1: String,
        #[arg(long)]
        l2: String,
        #[arg(long)]
        l3: String,
    },
}

/// Failure modes mapped to exit codes: usage errors exit 2, failed
/// verifications exit 1.
enum Failure {
    Usage(String),
    Verification(String),
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

fn resolve_field(args: &FieldArgs) -> CliResult<FieldSpec> {
    let (p, n) = match (args.q, args.p, args.n) {
        (Some(q), None, None) => match verify::as_odd_prime_power(q) {
            Some(pn) => pn,
            None => return usage(format!("--q {q} is not an odd prime power")),
        },
        (None, Some(p), Some(n)) => (p, n),
        (None, Some(p), None) => (p, 1),
        _ => return usage("specify the field as --q Q or as --p P [--n N]"),
    };
    FieldSpec::make(p, n).map_err(|e| Failure::Usage(e.to_string()))
}

fn parse_value(text: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| Failure::Usage(format!("bad literal {text:?}: {e}")))
}

fn parse_element(spec: &FieldSpec, text: &str) -> CliResult<fqwaring::FieldElement> {
    wire::element_from_value(spec, &parse_value(text)?).map_err(|e| Failure::Usage(e.to_string()))
}

fn emit(cli_out: &Option<PathBuf>, text: &str) -> CliResult<()> {
    match cli_out {
        None => {
            println!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Verification(format!("cannot write {}: {e}", path.display()))),
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failure: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> CliResult<ExitCode> {
    match &cli.cmd {
        Cmd::Field { field, op, x, y, e } => field_cmd(cli, field, *op, x, y, *e),
        Cmd::DecomposeVector { field, vector } => decompose_vector_cmd(cli, field, vector),
        Cmd::DecomposeMatrix {
            field,
            matrix,
            emit_parts,
        } => decompose_matrix_cmd(cli, field, matrix, *emit_parts),
        Cmd::Triangles { cmd } => triangles_cmd(cli, cmd),
        Cmd::Spectrum {
            field,
            group,
            report,
        } => spectrum_cmd(cli, field, *group, *report),
        Cmd::Oracle {
            field,
            d,
            space,
            target,
        } => oracle_cmd(cli, field, *d, *space, target),
        Cmd::VerifyAll { qmax, deep } => verify_all_cmd(cli, *qmax, *deep),
    }
}

fn field_cmd(
    cli: &Cli,
    field: &FieldArgs,
    op: FieldOp,
    x: &Option<String>,
    y: &Option<String>,
    e: Option<u64>,
) -> CliResult<ExitCode> {
    let spec = resolve_field(field)?;
    let need_x = || -> CliResult<fqwaring::FieldElement> {
        match x {
            Some(t) => parse_element(&spec, t),
            None => usage("this operation needs --x"),
        }
    };
    let need_y = || -> CliResult<fqwaring::FieldElement> {
        match y {
            Some(t) => parse_element(&spec, t),
            None => usage("this operation needs --y"),
        }
    };
    let result: Value = match op {
        FieldOp::Info => json!({
            "p": spec.p(),
            "n": spec.n(),
            "q": spec.q(),
            "modulus": spec.modulus(),
        }),
        FieldOp::Add => wire::element_to_value(&spec, spec.add(need_x()?, need_y()?)),
        FieldOp::Sub => wire::element_to_value(&spec, spec.sub(need_x()?, need_y()?)),
        FieldOp::Mul => wire::element_to_value(&spec, spec.mul(need_x()?, need_y()?)),
        FieldOp::Neg => wire::element_to_value(&spec, spec.neg(need_x()?)),
        FieldOp::Inv => match spec.inv(need_x()?) {
            Ok(v) => wire::element_to_value(&spec, v),
            Err(err) => return usage(err.to_string()),
        },
        FieldOp::Pow => {
            let Some(e) = e else {
                return usage("pow needs --e");
            };
            wire::element_to_value(&spec, spec.pow(need_x()?, e))
        }
        FieldOp::Legendre => json!(spec.legendre(need_x()?).as_i32()),
        FieldOp::Sqrt => match spec.sqrt(need_x()?) {
            Some(roots) => Value::Array(
                roots
                    .iter()
                    .map(|&r| wire::element_to_value(&spec, r))
                    .collect(),
            ),
            None => Value::Null,
        },
        FieldOp::Trace => json!(spec.galois_trace(need_x()?)),
        FieldOp::Char => {
            let c = spec.additive_character(need_x()?);
            json!({"re": c.re, "im": c.im})
        }
    };
    let text = match cli.format {
        Format::Pretty => format!("{result:#}"),
        _ => format!("{result}"),
    };
    emit(&cli.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn decompose_vector_cmd(cli: &Cli, field: &FieldArgs, vector: &str) -> CliResult<ExitCode> {
    let spec = resolve_field(field)?;
    let v = wire::vector_from_value(&spec, &parse_value(vector)?)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let dec = vector::decompose_unit_sum(&spec, &v).map_err(|e| Failure::Usage(e.to_string()))?;
    if !dec.verify(&spec) {
        return Err(Failure::Verification(
            "decomposition failed re-verification".into(),
        ));
    }
    let value = wire::unit_decomposition_to_value(&spec, &dec);
    let text = match cli.format {
        Format::Pretty => {
            let mut s = format!(
                "{} = sum of {} unit vectors:\n",
                serde_json::to_string(&wire::vector_to_value(&spec, &v)).unwrap(),
                dec.count()
            );
            for p in &dec.parts {
                let _ = writeln!(
                    s,
                    "  {}",
                    serde_json::to_string(&wire::vector_to_value(&spec, p)).unwrap()
                );
            }
            s.trim_end().to_string()
        }
        _ => format!("{value}"),
    };
    emit(&cli.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn decompose_matrix_cmd(
    cli: &Cli,
    field: &FieldArgs,
    matrix: &str,
    emit_parts: bool,
) -> CliResult<ExitCode> {
    let spec = resolve_field(field)?;
    let m = wire::matrix_from_value(&spec, &parse_value(matrix)?)
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let dec = orthogonal::decompose_matrix(&spec, &m).map_err(|e| Failure::Usage(e.to_string()))?;
    let verified = dec.verify(&spec);
    let include_parts = emit_parts || m.dim() <= 3;
    let value = wire::orth_decomposition_to_value(&spec, &dec, include_parts, verified);
    let text = match cli.format {
        Format::Pretty => format!(
            "{}x{} matrix = sum of {} orthogonal matrices (verified: {verified})",
            m.dim(),
            m.dim(),
            dec.declared_count
        ),
        _ => format!("{value}"),
    };
    emit(&cli.out, &text)?;
    if verified {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure::Verification(
            "orthogonal sum did not re-verify".into(),
        ))
    }
}

fn triangles_cmd(cli: &Cli, cmd: &TrianglesCmd) -> CliResult<ExitCode> {
    match cmd {
        TrianglesCmd::Count { field } => {
            let spec = resolve_field(field)?;
            let value = json!({
                "q": spec.q(),
                "classes": triangle::count_classes(spec.q()),
            });
            let text = match cli.format {
                Format::Pretty => format!(
                    "{} congruence classes of nondegenerate triangles over F_{}",
                    triangle::count_classes(spec.q()),
                    spec.q()
                ),
                _ => format!("{value}"),
            };
            emit(&cli.out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        TrianglesCmd::Census { field } => {
            let spec = resolve_field(field)?;
            let classes = triangle::enumerate_classes(&spec);
            let expected = triangle::count_classes(spec.q());
            let ok = classes.len() as u64 == expected;
            let text = match cli.format {
                Format::Csv | Format::Pretty => {
                    let mut s = String::from("q,L1,L2,mu\n");
                    for inv in &classes {
                        let _ = writeln!(
                            s,
                            "{},{},{},{}",
                            spec.q(),
                            wire::element_to_csv(&spec, inv.l1),
                            wire::element_to_csv(&spec, inv.l2),
                            wire::element_to_csv(&spec, inv.mu)
                        );
                    }
                    let _ = write!(
                        s,
                        "# {} classes (formula: {}, match: {})",
                        classes.len(),
                        expected,
                        ok
                    );
                    s
                }
                Format::Json => {
                    let rows: Vec<Value> = classes
                        .iter()
                        .map(|inv| {
                            json!({
                                "L1": wire::element_to_value(&spec, inv.l1),
                                "L2": wire::element_to_value(&spec, inv.l2),
                                "mu": wire::element_to_value(&spec, inv.mu),
                            })
                        })
                        .collect();
                    format!(
                        "{}",
                        json!({
                            "q": spec.q(),
                            "classes": rows,
                            "count": classes.len(),
                            "formula": expected,
                            "match": ok,
                        })
                    )
                }
            };
            emit(&cli.out, &text)?;
            if ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Err(Failure::Verification(
                    "census does not match the formula".into(),
                ))
            }
        }
        TrianglesCmd::Congruent { field, left, right } => {
            let spec = resolve_field(field)?;
            let l = wire::matrix_from_value(&spec, &parse_value(left)?)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let r = wire::matrix_from_value(&spec, &parse_value(right)?)
                .map_err(|e| Failure::Usage(e.to_string()))?;
            let answer =
                triangle::congruent(&spec, &l, &r).map_err(|e| Failure::Usage(e.to_string()))?;
            emit(&cli.out, &format!("{}", json!({ "congruent": answer })))?;
            Ok(ExitCode::SUCCESS)
        }
        TrianglesCmd::Sides { field, l1, l2, l3 } => {
            let spec = resolve_field(field)?;
            let a = parse_element(&spec, l1)?;
            let b = parse_element(&spec, l2)?;
            let c = parse_element(&spec, l3)?;
            let exists = triangle::triangle_exists_with_sides(&spec, a, b, c);
            let mu = triangle::mu_from_sides(&spec, a, b, c);
            let value = json!({
                "exists": exists,
                "mu": wire::element_to_value(&spec, mu),
            });
            emit(&cli.out, &format!("{value}"))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.9}")
}

fn spectrum_cmd(
    cli: &Cli,
    field: &FieldArgs,
    group: GroupKind,
    report: ReportKind,
) -> CliResult<ExitCode> {
    let spec = resolve_field(field)?;
    match group {
        GroupKind::O2 => {
            let rep = spectrum::bound_report(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
            let all_pass = rep.entries.iter().all(|e| e.pass);
            let full_ok = rep.parseval_rel_err < 1e-6
                && rep.closed_form_max_dev < 1e-6
                && rep.symmetry_max_dev < 1e-9;
            let row_values = |e: &spectrum::SpectrumEntry| -> (String, String, String) {
                match e.class {
                    spectrum::SpectralClass::Zero => ("0".into(), "0".into(), "0".into()),
                    spectrum::SpectralClass::RankOne { w_len, v_len } => (
                        wire::element_to_csv(&spec, w_len),
                        wire::element_to_csv(&spec, v_len),
                        "0".into(),
                    ),
                    spectrum::SpectralClass::Invertible(inv) => (
                        wire::element_to_csv(&spec, inv.l1),
                        wire::element_to_csv(&spec, inv.l2),
                        wire::element_to_csv(&spec, inv.mu),
                    ),
                }
            };
            let text = match cli.format {
                Format::Csv | Format::Pretty => {
                    let mut s = String::from("L1,L2,mu,re,im,branch,pass\n");
                    for e in &rep.entries {
                        let (l1, l2, mu) = row_values(e);
                        let _ = writeln!(
                            s,
                            "{},{},{},{},{},{},{}",
                            l1,
                            l2,
                            mu,
                            fmt_f64(e.value.re),
                            fmt_f64(e.value.im),
                            e.branch.as_str(),
                            e.pass
                        );
                    }
                    if matches!(report, ReportKind::Full) {
                        let _ = writeln!(s, "# gap_param={}", fmt_f64(rep.gap_param));
                        let _ = writeln!(s, "# parseval_rel_err={:.3e}", rep.parseval_rel_err);
                        let _ =
                            writeln!(s, "# closed_form_max_dev={:.3e}", rep.closed_form_max_dev);
                        let _ = writeln!(s, "# symmetry_max_dev={:.3e}", rep.symmetry_max_dev);
                    }
                    let _ = write!(s, "# all_pass={}", all_pass && full_ok);
                    s
                }
                Format::Json => {
                    let rows: Vec<Value> = rep
                        .entries
                        .iter()
                        .map(|e| {
                            let (l1, l2, mu) = row_values(e);
                            json!({
                                "L1": l1, "L2": l2, "mu": mu,
                                "re": e.value.re, "im": e.value.im,
                                "branch": e.branch.as_str(),
                                "bound": e.bound,
                                "pass": e.pass,
                            })
                        })
                        .collect();
                    let mut obj = json!({
                        "q": spec.q(),
                        "group": "o2",
                        "entries": rows,
                        "all_pass": all_pass && full_ok,
                    });
                    if matches!(report, ReportKind::Full) {
                        obj["gap_param"] = json!(rep.gap_param);
                        obj["parseval_rel_err"] = json!(rep.parseval_rel_err);
                        obj["closed_form_max_dev"] = json!(rep.closed_form_max_dev);
                        obj["symmetry_max_dev"] = json!(rep.symmetry_max_dev);
                    }
                    format!("{obj}")
                }
            };
            emit(&cli.out, &text)?;
            if all_pass && full_ok {
                Ok(ExitCode::SUCCESS)
            } else {
                Err(Failure::Verification("spectrum bounds failed".into()))
            }
        }
        GroupKind::Sphere => {
            let rep = spectrum::sphere_report(&spec).map_err(|e| Failure::Usage(e.to_string()))?;
            let all_pass = rep.entries.iter().all(|e| e.pass);
            let text = match cli.format {
                Format::Csv | Format::Pretty => {
                    let mut s = String::from("L1,L2,mu,re,im,branch,pass\n");
                    for e in &rep.entries {
                        let l1 = match e.m_len {
                            None => "zero".to_string(),
                            Some(l) => wire::element_to_csv(&spec, l),
                        };
                        let _ = writeln!(
                            s,
                            "{},1,0,{},{},{},{}",
                            l1,
                            fmt_f64(e.value.re),
                            fmt_f64(e.value.im),
                            if e.m_len.is_none() {
                                "trivial"
                            } else {
                                "sphere-fourier"
                            },
                            e.pass
                        );
                    }
                    let _ = write!(s, "# gap_param={}", fmt_f64(rep.gap_param));
                    s
                }
                Format::Json => {
                    let rows: Vec<Value> = rep
                        .entries
                        .iter()
                        .map(|e| {
                            json!({
                                "m_len": e.m_len.map(|l| wire::element_to_value(&spec, l)),
                                "re": e.value.re, "im": e.value.im,
                                "bound": e.bound, "pass": e.pass,
                            })
                        })
                        .collect();
                    format!(
                        "{}",
                        json!({
                            "q": spec.q(),
                            "group": "sphere",
                            "entries": rows,
                            "gap_param": rep.gap_param,
                            "all_pass": all_pass,
                        })
                    )
                }
            };
            emit(&cli.out, &text)?;
            if all_pass {
                Ok(ExitCode::SUCCESS)
            } else {
                Err(Failure::Verification(
                    "sphere spectrum bounds failed".into(),
                ))
            }
        }
    }
}

fn oracle_cmd(
    cli: &Cli,
    field: &FieldArgs,
    d: usize,
    space: SpaceKind,
    target: &Option<String>,
) -> CliResult<ExitCode> {
    let spec = resolve_field(field)?;
    let (map, target_dist, ambient_name) = match space {
        SpaceKind::Vectors => {
            let map =
                oracle::unit_sum_distances(&spec, d).map_err(|e| Failure::Usage(e.to_string()))?;
            let dist = match target {
                Some(t) => {
                    let v = wire::vector_from_value(&spec, &parse_value(t)?)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    if v.dim() != d {
                        return usage(format!("target has dimension {}, expected {d}", v.dim()));
                    }
                    Some(oracle::min_unit_sum(&spec, &map, &v))
                }
                None => None,
            };
            (map, dist, format!("F_{}^{}", spec.q(), d))
        }
        SpaceKind::Matrices => {
            let map =
                oracle::orth_sum_distances(&spec, d).map_err(|e| Failure::Usage(e.to_string()))?;
            let dist = match target {
                Some(t) => {
                    let m = wire::matrix_from_value(&spec, &parse_value(t)?)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    if m.dim() != d {
                        return usage(format!("target has dimension {}, expected {d}", m.dim()));
                    }
                    Some(oracle::min_orth_sum(&spec, &map, &m))
                }
                None => None,
            };
            (map, dist, format!("Mat_{}(F_{})", d, spec.q()))
        }
    };
    let mut histogram: Vec<u64> = Vec::new();
    let mut unreachable = 0u64;
    for dv in &map.dist {
        match dv {
            Some(k) => {
                if histogram.len() <= *k as usize {
                    histogram.resize(*k as usize + 1, 0);
                }
                histogram[*k as usize] += 1;
            }
            None => unreachable += 1,
        }
    }
    let mut obj = json!({
        "ambient": ambient_name,
        "size": map.dist.len() as u64,
        "diameter": match map.diameter {
            Diameter::Finite(k) => json!(k),
            Diameter::Unreachable => json!("unreachable"),
        },
        "counts_by_distance": histogram,
        "unreachable": unreachable,
    });
    if let Some(dist) = target_dist {
        obj["target_distance"] = match dist {
            Some(k) => json!(k),
            None => json!("unreachable"),
        };
    }
    let text = match cli.format {
        Format::Pretty => format!("{obj:#}"),
        _ => format!("{obj}"),
    };
    emit(&cli.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify_all_cmd(cli: &Cli, qmax: u64, deep: bool) -> CliResult<ExitCode> {
    let cfg = VerifyConfig { qmax, deep };
    let ids = verify::all_checks();
    let rows: Vec<verify::LedgerRow> = if cli.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
            .map_err(|e| Failure::Usage(format!("cannot build a {}-thread pool: {e}", cli.jobs)))?;
        use rayon::prelude::*;
        let mut batches: Vec<(usize, Vec<verify::LedgerRow>)> = pool.install(|| {
            ids.par_iter()
                .enumerate()
                .map(|(i, &id)| (i, verify::run_check(id, &cfg)))
                .collect()
        });
        batches.sort_by_key(|(i, _)| *i);
        batches.into_iter().flat_map(|(_, rows)| rows).collect()
    } else {
        verify::suite(&cfg)
    };

    let failed = rows.iter().filter(|r| !r.pass).count();
    let text = match cli.format {
        Format::Json => {
            let mut s = String::new();
            for row in &rows {
                let _ = writeln!(s, "{}", serde_json::to_string(row).unwrap());
            }
            s.trim_end().to_string()
        }
        Format::Csv => {
            let mut s = String::from("theorem,q,d,expected,observed,pass\n");
            for row in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{}",
                    row.theorem,
                    row.q,
                    row.d.map(|d| d.to_string()).unwrap_or_default(),
                    csv_quote(&row.expected.to_string()),
                    csv_quote(&row.observed.to_string()),
                    row.pass
                );
            }
            s.trim_end().to_string()
        }
        Format::Pretty => {
            let mut s = String::new();
            for row in &rows {
                let _ = writeln!(
                    s,
                    "{} {:32} q={:<4} d={} expected={} observed={}",
                    if row.pass { "PASS" } else { "FAIL" },
                    row.theorem,
                    row.q,
                    row.d.map(|d| d.to_string()).unwrap_or_else(|| "-".into()),
                    row.expected,
                    row.observed
                );
            }
            let _ = write!(s, "{} rows, {} failed", rows.len(), failed);
            s
        }
    };
    emit(&cli.out, &text)?;
    if cli.verbose > 0 {
        eprintln!("verify-all: {} rows, {} failed", rows.len(), failed);
    }
    if failed == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(Failure::Verification(format!(
            "{failed} ledger rows failed"
        )))
    }
}
