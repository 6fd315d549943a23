mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chainlab::complex::ChainComplex;
use chainlab::error::Error;
use chainlab::fgmod::{self, Presentation, Ring};
use chainlab::format::{self, ComplexDoc};
use chainlab::linalg::int;
use chainlab::model::{self, Verdict};
use chainlab::oracle::{self, FiniteModule};
use chainlab::resolve::{self, PdComplex, ResolveOutcome};
use chainlab::tensorx;
use chainlab::zigzag;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "chainlab", version, about = "Exact computations with chain complexes over Z and Z/m")]
struct Cli {
    /// Output style: summary lines or the full JSON report.
    #[arg(long, value_enum, global = true, default_value_t = Style::Text)]
    output: Style,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check shapes, well-definedness and ∂∘∂ = 0.
    Validate { file: PathBuf },
    /// Homology in every degree of the window.
    Homology { file: PathBuf },
    /// Whether all homology vanishes.
    Exact { file: PathBuf },
    /// Projective dimension of a complex (or of a module file).
    Pd {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Membership in the class of exact complexes with cycles of pd ≤ n.
    Membership {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Resolution by disk sums of free modules.
    Resolve {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Ext¹ between two complexes, or between two modules.
    Ext1 { first: PathBuf, second: PathBuf },
    /// Extract a small subcomplex containing a named element.
    Zigzag {
        file: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Include the per-sweep history.
        #[arg(long)]
        audit: bool,
    },
    /// Filtration with factors of bounded size.
    Filtrate {
        file: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        budget: usize,
    },
    /// Tensor product, or the modified product with --bar.
    Tensor {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        bar: bool,
    },
    /// Cofibration, fibration and weak-equivalence verdicts for a chain map.
    Classify {
        file: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Generating sets I and J over a degree window `LO:HI`.
    Gensets {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true, default_value = "0:1")]
        window: String,
    },
    /// The tensor product counterexample.
    Counterexample {
        #[arg(long)]
        n: usize,
    },
    /// Count extensions of two finite Z/m-modules by exhaustive search.
    OracleExt {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_CAP)]
        cap: usize,
    },
}

/// Exit statuses.
const OK: u8 = 0;
const NO: u8 = 1;
const INPUT: u8 = 2;
const PRECONDITION: u8 = 3;
const BUDGET: u8 = 4;

struct Report {
    command: &'static str,
    status: u8,
    summary: Vec<String>,
    data: Value,
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::Precondition(_) => PRECONDITION,
        Error::CapExceeded(_) => BUDGET,
        _ => INPUT,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_complex(path: &Path) -> Result<ChainComplex, Error> {
    format::complex_from_text(&read(path)?)
}

fn load_module(path: &Path) -> Result<Presentation, Error> {
    format::module_from_text(&read(path)?)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Parse(format!("window {s:?} is not of the form LO:HI"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn run(command: Command) -> Result<Report, Error> {
    match command {
        Command::Validate { file } => {
            let doc: ComplexDoc = format::from_text(&read(&file)?)?;
            let x = doc.complex_unchecked()?;
            let v = x.validate();
            let mut summary = v.failures.clone();
            summary.push(format!("valid: {}", yes_no(v.valid)));
            Ok(Report {
                command: "validate",
                status: if v.valid { OK } else { INPUT },
                summary,
                data: json!({ "valid": v.valid, "failures": v.failures }),
            })
        }
        Command::Homology { file } => {
            let x = load_complex(&file)?;
            let h = x.homology_all();
            let mut summary: Vec<String> = h.iter().map(|(d, g)| format!("H_{d} = {g}")).collect();
            summary.push(format!("exact: {}", yes_no(h.iter().all(|(_, g)| g.is_zero()))));
            Ok(Report {
                command: "homology",
                status: OK,
                summary,
                data: json!({ "homology": report::groups(&h) }),
            })
        }
        Command::Exact { file } => {
            let x = load_complex(&file)?;
            let exact = x.is_exact();
            let failing: Vec<i64> = x.homology_all().into_iter().filter(|(_, g)| !g.is_zero()).map(|(d, _)| d).collect();
            Ok(Report {
                command: "exact",
                status: if exact { OK } else { NO },
                summary: vec![format!("exact: {}", yes_no(exact))],
                data: json!({ "exact": exact, "nonzero_homology_degrees": failing, "homology": report::homology(&x) }),
            })
        }
        Command::Pd { file, max_len } => {
            let text = read(&file)?;
            if format::kind_of(&text)? == "module" {
                let m = format::module_from_text(&text)?;
                let r = fgmod::pd_report(&m);
                return Ok(Report {
                    command: "pd",
                    status: OK,
                    summary: vec![format!("pd = {}", r.pd)],
                    data: json!({ "module": m.invariants().to_string(), "pd": r.pd.to_string(), "note": r.note }),
                });
            }
            let x = format::complex_from_text(&text)?;
            let fast = resolve::pd_complex(&x, max_len);
            let slow = resolve::pd_complex_by_tower(&x, max_len);
            let cycles: Vec<Value> = x
                .degrees()
                .map(|d| {
                    let z = x.cycles(d).0;
                    json!({ "degree": d, "cycles": z.invariants().to_string(), "pd": fgmod::pd(&z).to_string() })
                })
                .collect();
            let finite = matches!(fast, PdComplex::Finite(_));
            Ok(Report {
                command: "pd",
                status: if finite { OK } else { NO },
                summary: vec![format!("pd = {fast}"), format!("by tower: {slow}")],
                data: json!({ "pd": fast.to_string(), "pd_by_tower": slow.to_string(), "exact": x.is_exact(), "cycles": cycles }),
            })
        }
        Command::Membership { file, n } => {
            let x = load_complex(&file)?;
            let member = resolve::in_tilde_pn(&x, n);
            let resolved = matches!(resolve::resolve_complex(&x, n), ResolveOutcome::Tower(_));
            let cycles: Vec<Value> = x
                .degrees()
                .map(|d| {
                    let z = x.cycles(d).0;
                    json!({ "degree": d, "cycles": z.invariants().to_string(), "pd": fgmod::pd(&z).to_string() })
                })
                .collect();
            Ok(Report {
                command: "membership",
                status: if member { OK } else { NO },
                summary: vec![
                    format!("exact: {}", yes_no(x.is_exact())),
                    format!("resolution of length ≤ {n}: {}", yes_no(resolved)),
                    format!("member for n = {n}: {}", yes_no(member)),
                ],
                data: json!({ "n": n, "member": member, "resolves": resolved, "exact": x.is_exact(),
                              "homology": report::homology(&x), "cycles": cycles }),
            })
        }
        Command::Resolve { file, max_len } => {
            let x = load_complex(&file)?;
            match resolve::resolve_complex(&x, max_len) {
                ResolveOutcome::Tower(t) => Ok(Report {
                    command: "resolve",
                    status: if t.verify() { OK } else { NO },
                    summary: vec![format!("length: {}", t.length()), format!("verified: {}", yes_no(t.verify()))],
                    data: json!({ "resolved": true, "tower": report::tower(&t) }),
                }),
                ResolveOutcome::Exceeded { max_len, residual, partial } => Ok(Report {
                    command: "resolve",
                    status: NO,
                    summary: vec![format!("no resolution of length ≤ {max_len}")],
                    data: json!({ "resolved": false, "max_len": max_len, "residual": report::complex(&residual),
                                  "residual_homology": report::homology(&residual), "partial": report::tower(&partial) }),
                }),
            }
        }
        Command::Ext1 { first, second } => {
            let (a, b) = (read(&first)?, read(&second)?);
            let (ka, kb) = (format::kind_of(&a)?, format::kind_of(&b)?);
            let e = match (ka.as_str(), kb.as_str()) {
                ("module", "module") => fgmod::ext1(&format::module_from_text(&a)?, &format::module_from_text(&b)?)?,
                ("complex", "complex") => {
                    resolve::ext1_complex(&format::complex_from_text(&a)?, &format::complex_from_text(&b)?)?
                }
                _ => return Err(Error::Parse(format!("ext1 needs two modules or two complexes, got {ka} and {kb}"))),
            };
            Ok(Report {
                command: "ext1",
                status: OK,
                summary: vec![format!("Ext^1 = {e}")],
                data: json!({ "ext1": e.to_string(), "free_rank": e.free_rank,
                              "torsion": e.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>() }),
            })
        }
        Command::Zigzag { file, element, budget, n, audit } => {
            let doc: ComplexDoc = format::from_text(&read(&file)?)?;
            let x = doc.complex()?;
            let e = doc.element(&x, &element)?;
            let cert = zigzag::zigzag_complex(&x, &e, n, budget)?;
            let check = cert.verify();
            let bases: Vec<Value> = cert
                .selected_bases()
                .iter()
                .map(|m| json!(m.iter().map(|(d, v)| (d.to_string(), v.clone())).collect::<std::collections::BTreeMap<_, _>>()))
                .collect();
            let mut data = json!({
                "n": n, "budget": budget, "size": cert.size, "ambient_size": x.size(), "over_budget": cert.over_budget,
                "element": { "degree": e.degree, "coords": e.coords.iter().map(|c| c.to_string()).collect::<Vec<_>>() },
                "selected_bases": bases,
                "subcomplex": report::subcomplex(&cert.extracted),
                "quotient": report::complex(&cert.quotient),
                "projection": report::map(&cert.projection),
                "ambient_tower": report::tower(&cert.tower),
                "sub_resolution": report::tower(&cert.sub_resolution),
                "quotient_resolution": report::tower(&cert.quotient_resolution),
                "checks": {
                    "element_in_sub": check.element_in_sub, "bases_closed": check.bases_closed,
                    "sub_tower_exact": check.sub_tower_exact, "quotient_tower_exact": check.quotient_tower_exact,
                    "sub_in_class": check.sub_in_class, "quotient_in_class": check.quotient_in_class,
                },
            });
            if audit {
                data["history"] = report::history(&cert.history);
            }
            let status = if !check.all_ok() {
                NO
            } else if cert.over_budget {
                BUDGET
            } else {
                OK
            };
            Ok(Report {
                command: "zigzag",
                status,
                summary: vec![
                    format!("extracted size {} of {}", cert.size, x.size()),
                    format!("within budget {budget}: {}", yes_no(!cert.over_budget)),
                    format!("certificate verified: {}", yes_no(check.all_ok())),
                ],
                data,
            })
        }
        Command::Filtrate { file, n, budget } => {
            let x = load_complex(&file)?;
            let f = zigzag::build_filtration(&x, n, budget)?;
            let ok = f.verify();
            let stages: Vec<Value> = f.stages.iter().map(report::subcomplex).collect();
            let status = if !ok {
                NO
            } else if f.over_budget() {
                BUDGET
            } else {
                OK
            };
            Ok(Report {
                command: "filtrate",
                status,
                summary: vec![
                    format!("stages: {}", f.len()),
                    format!("factor sizes: {:?}", f.factor_sizes()),
                    format!("verified: {}", yes_no(ok)),
                ],
                data: json!({ "n": n, "budget": budget, "factor_sizes": f.factor_sizes(), "over_budget": f.over_budget(),
                              "verified": ok, "stages": stages }),
            })
        }
        Command::Tensor { first, second, bar } => {
            let (x, y) = (load_complex(&first)?, load_complex(&second)?);
            let (c, blocks) = if bar {
                (tensorx::bar_tensor(&x, &y)?, Value::Null)
            } else {
                let t = tensorx::tensor(&x, &y)?;
                let blocks: std::collections::BTreeMap<String, Value> = t
                    .summand_index
                    .iter()
                    .map(|(d, bs)| {
                        let v: Vec<Value> = bs.iter().map(|b| json!({ "k": b.k, "offset": b.offset, "len": b.len })).collect();
                        (d.to_string(), json!(v))
                    })
                    .collect();
                (t.result, json!(blocks))
            };
            let h = c.homology_all();
            let exact = h.iter().all(|(_, g)| g.is_zero());
            let comps: Vec<(i64, fgmod::FgAbInvariants)> = c.degrees().map(|d| (d, c.component(d).invariants())).collect();
            let mut summary: Vec<String> = comps.iter().map(|(d, g)| format!("degree {d}: {g}")).collect();
            summary.extend(h.iter().filter(|(_, g)| !g.is_zero()).map(|(d, g)| format!("H_{d} = {g}")));
            summary.push(format!("exact: {}", yes_no(exact)));
            Ok(Report {
                command: "tensor",
                status: OK,
                summary,
                data: json!({ "bar": bar, "complex": report::complex(&c), "components": report::groups(&comps),
                              "homology": report::groups(&h), "exact": exact, "blocks": blocks }),
            })
        }
        Command::Classify { file, n } => {
            let f = format::map_from_text(&read(&file)?)?;
            let c = model::classify(&f, n)?;
            let verdict = |v: &Verdict| match v {
                Verdict::ConsistentWithFamily(labels) => json!({ "verdict": v.to_string(), "family": labels }),
                _ => json!({ "verdict": v.to_string() }),
            };
            Ok(Report {
                command: "classify",
                status: OK,
                summary: vec![
                    format!("mono: {}, epi: {}, weak equivalence: {}", yes_no(c.mono), yes_no(c.epi), yes_no(c.weak_equiv)),
                    format!("cofibration: {}", c.cofibration),
                    format!("trivial cofibration: {}", c.trivial_cofibration),
                    format!("fibration: {}", c.fibration),
                    format!("trivial fibration: {}", c.trivial_fibration),
                ],
                data: json!({
                    "n": n, "mono": c.mono, "epi": c.epi, "weak_equivalence": c.weak_equiv,
                    "cofibration": verdict(&c.cofibration), "trivial_cofibration": verdict(&c.trivial_cofibration),
                    "fibration": verdict(&c.fibration), "trivial_fibration": verdict(&c.trivial_fibration),
                    "evidence": c.evidence,
                }),
            })
        }
        Command::Gensets { n, window } => {
            let window = parse_window(&window)?;
            let samples: Vec<Presentation> = if n == 0 {
                Vec::new()
            } else {
                [2, 3].iter().map(|&d| Presentation::cyclic(Ring::Z, d)).collect()
            };
            let (i, j) = model::generating_sets(n, window, &samples)?;
            let set = |g: &model::GeneratingSet| -> Value {
                g.maps.iter().map(|(label, f)| json!({ "label": label, "map": report::map(f) })).collect()
            };
            let mut summary = Vec::new();
            for g in [&i, &j] {
                summary.extend(g.maps.iter().map(|(label, _)| format!("{}: {label}", g.label)));
            }
            Ok(Report {
                command: "gensets",
                status: OK,
                summary,
                data: json!({ "n": n, "window": [window.0, window.1], "I": set(&i), "J": set(&j) }),
            })
        }
        Command::Counterexample { n } => {
            let r = tensorx::counterexample_report(n)?;
            let product = |p: &tensorx::ProductReport| {
                json!({
                    "complex": report::complex(&p.complex),
                    "components": report::groups(&p.components),
                    "boundaries": p.boundaries.iter().map(|(d, m)| (d.to_string(), report::matrix(m))).collect::<serde_json::Map<_, _>>(),
                    "homology": report::groups(&p.homology),
                    "exact": p.exact,
                })
            };
            Ok(Report {
                command: "counterexample",
                status: OK,
                summary: r.lines(),
                data: json!({
                    "n": n, "cofibrant": report::complex(&r.cofibrant), "x": report::complex(&r.x),
                    "cofibration": r.cofibration.to_string(), "trivial_cofibration": r.trivial_cofibration.to_string(),
                    "tensor": product(&r.tensor), "bar": product(&r.bar), "axiom_fails": r.axiom_fails,
                }),
            })
        }
        Command::OracleExt { first, second, cap } => {
            let (pa, pb) = (load_module(&first)?, load_module(&second)?);
            let fa = FiniteModule::from_presentation(&pa, oracle::DEFAULT_VECTOR_CAP)?;
            let fb = FiniteModule::from_presentation(&pb, oracle::DEFAULT_VECTOR_CAP)?;
            let r = oracle::ext1_bruteforce(&fa, &fb, cap)?;
            let algebraic = fgmod::ext1(&pa, &pb)?;
            let agrees = algebraic.order() == Some(int(r.classes as i64));
            Ok(Report {
                command: "oracle-ext",
                status: if agrees { OK } else { NO },
                summary: vec![
                    format!("extension classes: {}", r.classes),
                    format!("Ext^1 = {algebraic}"),
                    format!("agree: {}", yes_no(agrees)),
                ],
                data: json!({
                    "a_size": fa.len(), "b_size": fb.len(), "a_cyclic_orders": r.a_orders,
                    "valid_structures": r.valid_structures, "classes": r.classes,
                    "representatives": r.representatives, "ext1": algebraic.to_string(), "agree": agrees,
                }),
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (status, summary, data) = match run(cli.command) {
        Ok(r) => {
            let data = json!({ "format": format::FORMAT_VERSION, "command": r.command, "status": r.status,
                               "report": r.data, "summary": r.summary });
            (r.status, r.summary, data)
        }
        Err(e) => {
            let status = exit_for(&e);
            let line = format!("error: {e}");
            (status, vec![line.clone()], json!({ "format": format::FORMAT_VERSION, "status": status, "error": e.to_string() }))
        }
    };
    match cli.output {
        Style::Text if data.get("error").is_some() => eprintln!("{}", summary.join("\n")),
        Style::Text => {
            for line in &summary {
                println!("{line}");
            }
        }
        Style::Json => print!("{}", format::to_text(&data)),
    }
    ExitCode::from(status)
}
