//! One line per acceptance criterion. Exits non-zero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use chainlab::complex::{ChainComplex, Element};
use chainlab::fgmod::{self, Presentation, Ring};
use chainlab::linalg::int;
use chainlab::maps::{self, ChainMap};
use chainlab::oracle::{self, FiniteModule};
use chainlab::resolve::{self, ComplexSequence, ResolveOutcome};
use chainlab::samples::{self, Piece, SampleRng};
use chainlab::tensorx;
use chainlab::zigzag;
use rand::Rng;
use serde_json::Value;

const WINDOW: (i64, i64) = (-1, 2);
const COUNTEREXAMPLE_TIME: Duration = Duration::from_secs(1);
const ORACLE_TIME: Duration = Duration::from_secs(300);
const CONTRACTIBLE_TRIALS: usize = 100;
const CONTRACTIBLE_MAX_GENS: usize = 30;
const MEMBER_TRIALS: usize = 50;
const NON_MEMBER_TRIALS: usize = 20;
const MEMBER_MAX_GENS: usize = 40;
const ZIGZAG_COMPLEXES: usize = 30;
const ZIGZAG_ELEMENTS: usize = 5;
const ZIGZAG_MAX_GENS: usize = 16;
const ZIGZAG_BUDGET: usize = 6;
const SPLIT_TRIALS: usize = 40;
const PROPER_RATE: f64 = 0.90;
const FILTRATION_TRIALS: usize = 15;
const LEMA2_TRIALS: usize = 25;
const ORACLE_MODULI: [u64; 5] = [4, 6, 8, 9, 12];
const ORACLE_MAX_ORDER: u64 = 16;
const CONE_TRIALS: usize = 100;
const GILLESPIE_TRIALS: usize = 50;

type Check = Box<dyn FnOnce(&mut SampleRng) -> Outcome>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn run_cli(args: &[&str]) -> (Value, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_chainlab"))
        .args(args)
        .args(["--output", "json"])
        .output()
        .expect("the binary runs");
    let elapsed = start.elapsed();
    let v: Value = serde_json::from_slice(&out.stdout).expect("JSON report");
    (v, elapsed)
}

fn groups(v: &Value) -> Vec<(String, String)> {
    v.as_object()
        .map(|m| m.iter().map(|(k, g)| (k.clone(), g.as_str().unwrap_or("").to_string())).collect())
        .unwrap_or_default()
}

fn nonzero_groups(v: &Value) -> Vec<(String, String)> {
    let mut g: Vec<(String, String)> = groups(v).into_iter().filter(|(_, g)| g != "0").collect();
    g.sort_by_key(|(d, _)| d.parse::<i64>().unwrap_or(0));
    g
}

fn pairs(entries: &[(i64, &str)]) -> Vec<(String, String)> {
    entries.iter().map(|(d, g)| (d.to_string(), g.to_string())).collect()
}

fn criterion_1() -> Outcome {
    let (v, t) = run_cli(&["counterexample", "--n", "1"]);
    let r = &v["report"]["tensor"];
    let lib = tensorx::counterexample_report(1).expect("report");
    let components_ok = nonzero_groups(&r["components"]) == pairs(&[(-1, "Z/2"), (0, "Z/2"), (1, "Z/2")]);
    let x_ok = (-1..=1).map(|d| lib.x.component(d).invariants().to_string()).collect::<Vec<_>>() == ["Z/2", "Z", "Z"];
    let d1_zero = lib.tensor.boundary_is_zero(1);
    let h1_ok = r["homology"]["1"] == "Z/2";
    let non_exact = r["exact"] == false;
    let last = v["summary"].as_array().and_then(|a| a.last()).and_then(Value::as_str).unwrap_or("");
    let last_ok = last == "pushout-product axiom: FAILS for ⊗ and ⊗̄";
    let fast = t < COUNTEREXAMPLE_TIME;
    outcome(
        components_ok && x_ok && d1_zero && h1_ok && non_exact && last_ok && fast,
        format!(
            "components Z/2 at 1,0,-1: {components_ok}, X = Z -2-> Z -> Z/2: {x_ok}, d1 = 0: {d1_zero}, H1 = Z/2: {h1_ok}, non-exact: {non_exact}, verdict line: {last_ok}, {:.3} s",
            t.as_secs_f64()
        ),
    )
}

fn criterion_2() -> Outcome {
    let (v, t) = run_cli(&["counterexample", "--n", "1"]);
    let r = &v["report"]["bar"];
    let lib = tensorx::counterexample_report(1).expect("report");
    let components_ok = nonzero_groups(&r["components"]) == pairs(&[(0, "Z/2"), (1, "Z/2")]);
    let zero_differential = lib.bar.complex.degrees().all(|d| lib.bar.boundary_is_zero(d));
    let non_exact = r["exact"] == false;
    let fast = t < COUNTEREXAMPLE_TIME;
    outcome(
        components_ok && zero_differential && non_exact && fast,
        format!(
            "components Z/2 at 1,0 only: {components_ok}, zero differential: {zero_differential}, non-exact: {non_exact}, {:.3} s",
            t.as_secs_f64()
        ),
    )
}

fn criterion_3(rng: &mut SampleRng) -> Outcome {
    let mut failures = 0;
    let mut largest = 0;
    for _ in 0..CONTRACTIBLE_TRIALS {
        let x = samples::random_in_class(rng, 0, CONTRACTIBLE_MAX_GENS, WINDOW);
        largest = largest.max(x.size());
        let id = ChainMap::identity(&x);
        let homotopy_ok = maps::is_nullhomotopic(&id).is_some_and(|h| maps::verify_homotopy(&id, &h));
        if !(x.size() <= CONTRACTIBLE_MAX_GENS && x.is_contractible() && homotopy_ok) {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("{CONTRACTIBLE_TRIALS} twisted disk sums (largest {largest} generators), {failures} failures"),
    )
}

fn criterion_4(rng: &mut SampleRng) -> Outcome {
    let mut member_failures = 0;
    for _ in 0..MEMBER_TRIALS {
        let x = samples::random_in_class(rng, 1, MEMBER_MAX_GENS, WINDOW);
        let tower_ok = match resolve::resolve_complex(&x, 1) {
            ResolveOutcome::Tower(t) => t.verify() && t.length() <= 1,
            ResolveOutcome::Exceeded { .. } => false,
        };
        if !(tower_ok && resolve::in_tilde_pn(&x, 1)) {
            member_failures += 1;
        }
    }
    let mut rejection_failures = 0;
    for _ in 0..NON_MEMBER_TRIALS {
        let x = samples::random_out_of_class(rng, 1, MEMBER_MAX_GENS, WINDOW);
        let resolves = matches!(resolve::resolve_complex(&x, 1), ResolveOutcome::Tower(_));
        if resolves || resolve::in_tilde_pn(&x, 1) {
            rejection_failures += 1;
        }
    }
    outcome(
        member_failures == 0 && rejection_failures == 0,
        format!(
            "{MEMBER_TRIALS} members resolved and re-validated ({member_failures} failures), {NON_MEMBER_TRIALS} non-members rejected by both ({rejection_failures} inconsistencies)"
        ),
    )
}

fn random_element(rng: &mut SampleRng, x: &ChainComplex) -> Element {
    let degrees: Vec<i64> = x.degrees().filter(|&d| !x.component(d).is_zero_module()).collect();
    let d = degrees[rng.gen_range(0..degrees.len())];
    loop {
        let coords = (0..x.gens(d)).map(|_| int(rng.gen_range(-2..=2))).collect();
        let e = x.element(d, coords).expect("in window");
        if !e.is_zero_in(x) {
            return e;
        }
    }
}

fn random_nonzero_generator(rng: &mut SampleRng, x: &ChainComplex) -> Element {
    let gens: Vec<Element> = x
        .degrees()
        .flat_map(|d| (0..x.gens(d)).map(move |i| (d, i)))
        .map(|(d, i)| x.generator(d, i))
        .filter(|e| !e.is_zero_in(x))
        .collect();
    gens[rng.gen_range(0..gens.len())].clone()
}

/// `k >= 2` pieces of the class, untwisted, with the largest piece size.
fn piece_sum(rng: &mut SampleRng) -> (ChainComplex, usize, usize) {
    let k = rng.gen_range(2..=4);
    let pieces: Vec<Piece> = (0..k).map(|_| samples::random_piece(rng, 1, WINDOW)).collect();
    let budget = pieces.iter().map(Piece::size).max().expect("nonempty");
    (samples::assemble(&pieces), k, budget)
}

fn criterion_5(rng: &mut SampleRng) -> Outcome {
    let mut cert_failures = 0;
    for _ in 0..ZIGZAG_COMPLEXES {
        let x = samples::random_in_class(rng, 1, ZIGZAG_MAX_GENS, WINDOW);
        for _ in 0..ZIGZAG_ELEMENTS {
            let e = random_element(rng, &x);
            let ok = zigzag::zigzag_complex(&x, &e, 1, ZIGZAG_BUDGET).is_ok_and(|c| c.verify().all_ok());
            if !ok {
                cert_failures += 1;
            }
        }
    }
    let mut proper = 0;
    for _ in 0..SPLIT_TRIALS {
        let (x, _, budget) = piece_sum(rng);
        let e = random_nonzero_generator(rng, &x);
        if let Ok(c) = zigzag::zigzag_complex(&x, &e, 1, budget) {
            if c.verify().all_ok() && c.size < x.size() {
                proper += 1;
            }
        }
    }
    let rate = proper as f64 / SPLIT_TRIALS as f64;
    outcome(
        cert_failures == 0 && rate >= PROPER_RATE,
        format!(
            "{} certificates, {cert_failures} failed re-verification; proper extraction in {proper}/{SPLIT_TRIALS} piece sums ({:.0}%, threshold {:.0}%)",
            ZIGZAG_COMPLEXES * ZIGZAG_ELEMENTS,
            rate * 100.0,
            PROPER_RATE * 100.0
        ),
    )
}

fn criterion_6(rng: &mut SampleRng) -> Outcome {
    let mut failures = 0;
    for _ in 0..FILTRATION_TRIALS {
        let (x, k, budget) = piece_sum(rng);
        let ok = zigzag::build_filtration(&x, 1, budget).is_ok_and(|f| {
            let factors_ok = f.certificates.iter().all(|c| {
                resolve::in_tilde_pn(c.extracted.complex(), 1) && resolve::in_tilde_pn(&c.quotient, 1) && c.size <= budget
            });
            f.len() <= k && factors_ok && !f.over_budget() && f.verify()
        });
        if !ok {
            failures += 1;
        }
    }
    outcome(failures == 0, format!("{FILTRATION_TRIALS} piece sums filtered, {failures} failures"))
}

fn criterion_7(rng: &mut SampleRng) -> Outcome {
    let mut failures = 0;
    let mut degrees = 0;
    for _ in 0..LEMA2_TRIALS {
        let x = samples::random_in_class(rng, 1, ZIGZAG_MAX_GENS, WINDOW);
        let (_, _, eps) = resolve::projective_cover_complex(&x);
        let (_, incl) = eps.kernel_complex();
        let ok = ComplexSequence::new(vec![incl, eps])
            .and_then(|s| resolve::verify_lema2(&s))
            .is_ok_and(|cs| {
                degrees += cs.len();
                cs.iter().all(|c| c.exact)
            });
        if !ok {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("{LEMA2_TRIALS} short exact sequences, {degrees} cycle sequences checked, {failures} failures"),
    )
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    let mut mismatches = 0;
    let mut projectivity_mismatches = 0;
    for m in ORACLE_MODULI {
        let modules: Vec<(Presentation, FiniteModule)> = oracle::small_modules(m, ORACLE_MAX_ORDER)
            .iter()
            .map(|orders| {
                let p = oracle::presentation(m, orders);
                let f = FiniteModule::from_presentation(&p, oracle::DEFAULT_VECTOR_CAP).expect("small");
                (p, f)
            })
            .collect();
        for (p, f) in &modules {
            if oracle::lifting_bruteforce(f) != fgmod::is_projective(p) {
                projectivity_mismatches += 1;
            }
        }
        for (pa, fa) in &modules {
            for (pb, fb) in &modules {
                pairs += 1;
                let brute = oracle::ext1_bruteforce(fa, fb, oracle::DEFAULT_CAP).map(|r| r.classes);
                let algebraic = fgmod::ext1(pa, pb).ok().and_then(|e| e.order());
                if brute.ok().map(|c| int(c as i64)) != algebraic {
                    mismatches += 1;
                }
            }
        }
    }
    let t = start.elapsed();
    outcome(
        mismatches == 0 && projectivity_mismatches == 0 && t < ORACLE_TIME,
        format!(
            "{pairs} pairs over Z/4, Z/6, Z/8, Z/9, Z/12, {mismatches} Ext mismatches, {projectivity_mismatches} projectivity mismatches, {:.1} s",
            t.as_secs_f64()
        ),
    )
}

fn criterion_9(rng: &mut SampleRng) -> Outcome {
    let mut mismatches = 0;
    let mut quasi = 0;
    for i in 0..CONE_TRIALS {
        let x = samples::random_bounded(rng, 8, WINDOW);
        let f = if i % 4 == 0 {
            samples::twist(rng, &x).1
        } else {
            let y = samples::random_bounded(rng, 8, WINDOW);
            samples::random_chain_map(rng, &x, &y)
        };
        let q = f.is_quasi_iso();
        quasi += usize::from(q);
        if q != maps::cone(&f).is_exact() {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0,
        format!("{CONE_TRIALS} maps ({quasi} quasi-isomorphisms), {mismatches} mismatches"),
    )
}

fn criterion_10(rng: &mut SampleRng) -> Outcome {
    let mut mismatches = 0;
    let mut nonzero = 0;
    for _ in 0..GILLESPIE_TRIALS {
        let m = samples::random_module(rng, 3);
        let y = samples::random_exact(rng, 10, WINDOW);
        let lhs = resolve::ext1_complex(&ChainComplex::sphere(0, &m), &y);
        let rhs = fgmod::ext1(&m, &y.cycles(0).0);
        match (lhs, rhs) {
            (Ok(a), Ok(b)) if a == b => nonzero += usize::from(!a.is_zero()),
            _ => mismatches += 1,
        }
    }
    outcome(
        mismatches == 0,
        format!("{GILLESPIE_TRIALS} pairs with exact Y ({nonzero} nonzero), {mismatches} mismatches"),
    )
}

fn main() {
    let mut rng = samples::rng(2024);
    let z = Presentation::free(Ring::Z, 1);
    assert!(ChainComplex::disk(0, &z).is_contractible());
    let criteria: Vec<(&str, Check)> = vec![
        ("tensor counterexample", Box::new(|_| criterion_1())),
        ("modified tensor counterexample", Box::new(|_| criterion_2())),
        ("contractibility of projective complexes", Box::new(criterion_3)),
        ("resolution and membership agree", Box::new(criterion_4)),
        ("zig-zag soundness", Box::new(criterion_5)),
        ("filtration", Box::new(criterion_6)),
        ("cycle sequences of short exact sequences", Box::new(criterion_7)),
        ("Ext oracle equivalence", Box::new(|_| criterion_8())),
        ("cone criterion", Box::new(criterion_9)),
        ("Ext of a sphere against exact Y", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let o = check(&mut rng);
        failed += usize::from(!o.pass);
        println!(
            "criterion {:>2} [{}] {name}: {} ({:.2} s)",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
