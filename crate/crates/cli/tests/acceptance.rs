//! One PASS/FAIL line per acceptance criterion. Tolerance is exact zero
//! everywhere; runtime budgets are part of the criteria that state one.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use gerbe_cli::{generate_text, run_args, GenKind};
use gerbe_core::cech::{
    self, bundle_check, check_all, check_cocycle, check_connection, check_coboundary_consistency,
    check_derived, coboundary_report, find, generate_bundle, generate_exact, generate_shift,
    remark_check, transport, GenerateParams, GerbeCocycle,
};
use gerbe_core::crossed::{GroupMap, Inner};
use gerbe_core::format::{parse_dataset, print_dataset};
use gerbe_core::forms::{LieForm, Side};
use gerbe_core::matrix::{Matrix, PolyMatrix};
use gerbe_core::poly::Poly;
use gerbe_core::report::RunReport;
use gerbe_core::ring::int;
use gerbe_core::simplicial::{comb_d, lift, Variant};
use gerbe_core::suite::{equivalence_suite, forms_suite, EquivParams, SuiteParams, EQUIV_IDS, FORMS_IDS};
use gerbe_core::weil::WeilMonomial;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn gen(seed: u64) -> GenerateParams {
    GenerateParams { seed, cover: 3, dim: 2, size: 2, degree: 1 }
}

fn e12(dim: usize) -> PolyMatrix {
    PolyMatrix::elementary(2, 0, 1, Poly::one(dim))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Every listed equation is present and every record passes.
fn require(rep: &RunReport, ids: &[&str], what: &str) -> Result<usize, String> {
    for id in ids {
        if rep.records_for(id).next().is_none() {
            return Err(format!("{what}: no records for {id}"));
        }
    }
    if let Some(r) = rep.failures().next() {
        return Err(format!("{what}: {} {:?} nonzero: {:?}", r.equation, r.tuple, r.leading));
    }
    Ok(rep.records.len())
}

fn within(start: Instant, budget: Duration) -> Result<String, String> {
    let t = start.elapsed();
    if t > budget {
        Err(format!("took {:.1}s, budget {}s", t.as_secs_f64(), budget.as_secs()))
    } else {
        Ok(format!("{:.1}s", t.as_secs_f64()))
    }
}

fn forms_identities() -> Outcome {
    let start = Instant::now();
    let rep = forms_suite(SuiteParams { seed: 0, trials: 100, dim: 3, size: 3, degree: 2 }).map_err(err)?;
    let n = require(&rep, FORMS_IDS, "forms suite")?;
    Ok(format!("{n} records, {}", within(start, Duration::from_secs(120))?))
}

fn equivalence() -> Outcome {
    let start = Instant::now();
    let rep = equivalence_suite(EquivParams { seed: 0, one_forms: 25, two_forms: 10, dim: 3, size: 2, degree: 2 })
        .map_err(err)?;
    let n = require(&rep, EQUIV_IDS, "equivalence suite")?;

    // ω = x2·dx1 on a 1×1 chart: the δ_{1,1}δ_{2,2} coefficient of comb_d is -1.
    let d = 2;
    let w = LieForm::monomial(Side::H, &[0], Matrix::from_rows(vec![vec![Poly::var(d, 1)]]).map_err(err)?)
        .map_err(err)?;
    let dv = comb_d(&lift(&w), None, Variant::Plain).map_err(err)?.evaluate_standard().map_err(err)?;
    let c = dv.get(0, 0).coeff(&WeilMonomial::canonical(&[1, 2], &[0, 1]));
    if c != Poly::constant(d, int(-1)) {
        return Err(format!("scalar example coefficient {c}"));
    }
    Ok(format!("{n} records + scalar example, {}", within(start, Duration::from_secs(60))?))
}

const CLOSURE_IDS: &[&str] = &[
    "coc1", "coc2", "cocep13clas0", "cocep5clas1", "cockap1", "cockap2", "comd1", "relnufi", "ificonj",
    "comoioj1",
];

fn gerbe_closure() -> Outcome {
    let start = Instant::now();
    let cm = Inner { k: 2 };
    let mut total = 0;
    for seed in 0..20 {
        let (data, _) = generate_exact(&cm, gen(seed)).map_err(err)?;
        let rep = check_all(&cm, &data).map_err(err)?;
        total += require(&rep, CLOSURE_IDS, &format!("seed {seed}"))?;
    }
    Ok(format!("20 seeds, {total} records, {}", within(start, Duration::from_secs(180))?))
}

fn transport_closure() -> Outcome {
    let start = Instant::now();
    let cm = Inner { k: 2 };
    let mut total = 0;
    for seed in 0..10 {
        let (data, _) = generate_exact(&cm, gen(seed)).map_err(err)?;
        require(&check_all(&cm, &data).map_err(err)?, CLOSURE_IDS, "base")?;
        let (_, cb) = generate_exact(&cm, gen(1000 + seed)).map_err(err)?;
        let (_, rep) = coboundary_report(&cm, &cb, &data).map_err(err)?;
        let ids: Vec<&str> = CLOSURE_IDS
            .iter()
            .copied()
            .chain(["ni1", "niri", "coboun-om1", "coboun-om1a", "coboun-om"])
            .collect();
        total += require(&rep, &ids, &format!("seed {seed}"))?;
    }
    Ok(format!("10 seeds, {total} records, {}", within(start, Duration::from_secs(180))?))
}

fn remark() -> Outcome {
    let cm = Inner { k: 2 };
    let mut total = 0;
    for seed in 0..10 {
        let (data, _) = generate_exact(&cm, gen(seed)).map_err(err)?;
        let cb = generate_shift(&cm, gen(seed));
        if cb.e.iter().all(|(_, e)| e.is_zero()) || cb.n.iter().all(|(_, n)| n.is_zero()) {
            return Err(format!("seed {seed}: degenerate shift"));
        }
        total += require(&remark_check(&cm, &data, &cb).map_err(err)?, &["simp"], &format!("seed {seed}"))?;
    }
    Ok(format!("10 seeds, {total} records"))
}

fn bundle() -> Outcome {
    let mut total = 0;
    for seed in 0..20 {
        let b = generate_bundle(GenerateParams { dim: 3, ..gen(seed) });
        let rep = bundle_check(&b).map_err(err)?;
        total += require(&rep, &["con:local", "con:local/kappa", "bianchiclas"], &format!("seed {seed}"))?;
    }
    Ok(format!("20 seeds, {total} records"))
}

fn expect_fail(rep: &RunReport, eq: &str, tuple: &[usize]) -> Result<(), String> {
    match find(rep, eq, tuple) {
        Some(r) if !r.passed() => Ok(()),
        Some(_) => Err(format!("{eq} {tuple:?} not detected")),
        None => Err(format!("{eq} {tuple:?} not recorded")),
    }
}

fn negative_controls() -> Outcome {
    let cm = Inner { k: 2 };

    let mut c = GerbeCocycle::trivial(&cm, 3, 2);
    let bump = GroupMap::unipotent(PolyMatrix::elementary(2, 0, 1, Poly::var(2, 0)).add(&PolyMatrix::poly_identity(2, 2)))
        .map_err(err)?;
    c.g.set(&[0, 1, 2], bump);
    expect_fail(&check_cocycle(&cm, &c), "coc1", &[0, 1, 2])?;

    let (data, _) = generate_exact(&cm, gen(31)).map_err(err)?;
    let mut conn = data.connection.clone();
    let dx1 = LieForm::monomial(Side::H, &[0], e12(2)).map_err(err)?;
    conn.gamma.set(&[0, 1], conn.gamma.get(&[0, 1]).add(&dx1));
    expect_fail(&check_connection(&cm, &data.cocycle, &conn).map_err(err)?, "cocep13clas0", &[0, 1])?;

    let p3 = GenerateParams { dim: 3, ..gen(32) };
    let (data3, _) = generate_exact(&cm, p3).map_err(err)?;
    let mut derived = data3.derived.clone();
    if derived.omega3.get(&[1]).is_zero() {
        return Err("omega control: ω_1 already zero".into());
    }
    derived.omega3.set(&[1], LieForm::zero(3, 3, 2, Side::H));
    let rep = check_derived(&cm, &data3.cocycle, &data3.connection, &data3.curving, &derived).map_err(err)?;
    expect_fail(&rep, "defom", &[1])?;

    // n only enters coboun-om1a through 3-forms, so this control needs d = 3.
    let (_, cb) = generate_exact(&cm, GenerateParams { seed: 33, ..p3 }).map_err(err)?;
    let primed = transport(&cm, &cb, &data3).map_err(err)?;
    let mut bad = cb.clone();
    let dn = LieForm::monomial(Side::H, &[0, 2], e12(3)).map_err(err)?;
    bad.n.set(&[2], bad.n.get(&[2]).add(&dn));
    let rep = check_coboundary_consistency(&cm, &bad, &data3, &primed).map_err(err)?;
    expect_fail(&rep, "coboun-om1a", &[2])?;

    let mut b = generate_bundle(gen(34));
    b.omega1.set(&[1], b.omega1.get(&[1]).add(&dx1));
    expect_fail(&bundle_check(&b).map_err(err)?, "con:local", &[0, 1])?;

    Ok("coc1 [0,1,2], cocep13clas0 [0,1], defom [1], coboun-om1a [2], con:local [0,1]".into())
}

fn round_trip() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    for seed in [0u64, 7] {
        let text = generate_text(gen(seed), GenKind::Gerbe).map_err(err)?;
        if text != generate_text(gen(seed), GenKind::Gerbe).map_err(err)? {
            return Err(format!("seed {seed}: generation not deterministic"));
        }
        let ds = parse_dataset(&text).map_err(err)?;
        if parse_dataset(&print_dataset(&ds)).map_err(err)? != ds || print_dataset(&ds) != text {
            return Err(format!("seed {seed}: print/parse not structural"));
        }
        let file = dir.path().join(format!("g{seed}.txt"));
        std::fs::write(&file, &text).map_err(err)?;
        let mut reports = Vec::new();
        for run in 0..2 {
            let out = dir.path().join(format!("r{seed}-{run}.json"));
            let o = run_args(["gerbe", "check", file.to_str().unwrap(), "--report", out.to_str().unwrap()]);
            if o.code != 0 {
                return Err(format!("seed {seed}: check exited {}: {}", o.code, o.stderr));
            }
            reports.push(std::fs::read(&out).map_err(err)?);
        }
        if reports[0] != reports[1] {
            return Err(format!("seed {seed}: reports differ"));
        }
    }
    // Same through the library, independent of the CLI.
    let cm = Inner { k: 2 };
    let (a, _) = cech::generate_exact(&cm, gen(3)).map_err(err)?;
    let (b, _) = cech::generate_exact(&cm, gen(3)).map_err(err)?;
    if check_all(&cm, &a).map_err(err)?.to_json() != check_all(&cm, &b).map_err(err)?.to_json() {
        return Err("library reports differ".into());
    }
    Ok("2 seeds".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 forms identities", forms_identities),
        ("2 combinatorial-classical equivalence", equivalence),
        ("3 gerbe closure", gerbe_closure),
        ("4 coboundary transport closure", transport_closure),
        ("5 r = θ = 1 reduction", remark),
        ("6 bundle", bundle),
        ("7 negative controls", negative_controls),
        ("8 round trip and determinism", round_trip),
    ];
    let mut ok = true;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                ok = false;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
