use linspect_core::certificate::{verify_document, CertificateDocument};
use linspect_core::classify::{
    classify_vertices, closed_form_v, is_almost_triangle_free, ClassifyError,
};
use linspect_core::constructions::SurgeryOutcome;
use linspect_core::io::to_graph6;
use linspect_core::solver::{
    bounds as bounds_report, brute_force_v, verify_efl, DEFAULT_ORACLE_CAP,
};
use linspect_core::{
    linear_intersection_number, reduced_linear_intersection_number, Graph, SolveError, SolveOptions,
};
use rayon::prelude::*;

use crate::{Check, Failure, BUDGET, CHECK_FAILED, PARSE, USAGE};

fn solve_failure(e: SolveError, name: &str) -> Failure {
    match e {
        SolveError::BudgetExceeded { lower, upper } => Failure::new(
            BUDGET,
            format!("budget exceeded: {name} in [{lower}, {upper}]"),
        ),
        SolveError::Graph(e) => Failure::new(USAGE, e.to_string()),
    }
}

macro_rules! pretty {
    ($value:expr) => {
        serde_json::to_string_pretty(&$value).expect("serializable")
    };
}

pub fn solve(
    g: &Graph,
    reduced: bool,
    opts: &SolveOptions,
    as_json: bool,
    deterministic: bool,
) -> Result<(), Failure> {
    let name = if reduced { "vbar" } else { "v" };
    let result = if reduced {
        reduced_linear_intersection_number(g, opts)
    } else {
        linear_intersection_number(g, opts)
    }
    .map_err(|e| solve_failure(e, name))?;
    if as_json {
        let cls = match classify_vertices(g, opts) {
            Ok(c) => c,
            Err(ClassifyError::BudgetExceeded { partial }) => partial,
        };
        println!(
            "{}",
            CertificateDocument::from_solve(g, &result, cls, deterministic).to_json()
        );
        return Ok(());
    }
    println!("{name} = {}", result.value);
    println!("certificate ({} cliques):", result.certificate.len());
    for c in &result.certificate.cliques {
        println!("  {c}");
    }
    let b = &result.bounds;
    println!(
        "bounds: {} <= {name}, v <= {} (lower bound from {})",
        b.best_lower, b.edge_bound, b.binding
    );
    let s = &result.stats;
    println!(
        "search: {} nodes, {:.3}s",
        s.nodes,
        s.wall_time.as_secs_f64()
    );
    if let Some(cf) = &s.closed_form {
        println!("closed form: {cf}");
    }
    Ok(())
}

pub fn bounds(g: &Graph, as_json: bool) -> Result<(), Failure> {
    let r = bounds_report(g);
    if as_json {
        println!("{}", pretty!(r));
        return Ok(());
    }
    for (name, value) in r.lower_bounds() {
        println!("{name:<14}{value}");
    }
    println!("{:<14}{}", "edge_bound", r.edge_bound);
    println!(
        "lower bound {} from {}; upper bound {}",
        r.best_lower, r.binding, r.edge_bound
    );
    Ok(())
}

pub fn classify(g: &Graph, opts: &SolveOptions, as_json: bool) -> Result<(), Failure> {
    let (cls, complete) = match classify_vertices(g, opts) {
        Ok(c) => (c, true),
        Err(ClassifyError::BudgetExceeded { partial }) => (partial, false),
    };
    let atf = is_almost_triangle_free(g);
    let closed = closed_form_v(g);
    if as_json {
        let doc = serde_json::json!({
            "vertices": cls.vertices,
            "almost_triangle_free": atf,
            "closed_form": closed,
            "complete": complete,
        });
        println!("{}", pretty!(doc));
    } else {
        let yn = |b: bool| if b { "yes" } else { "no" };
        let opt = |b: Option<bool>| b.map_or("?", yn);
        println!("vertex  leaf  isolated  interior  strong  extremal");
        for (x, f) in cls.vertices.iter().enumerate() {
            println!(
                "{x:<8}{:<6}{:<10}{:<10}{:<8}{}",
                yn(f.leaf),
                yn(f.isolated),
                yn(f.interior),
                yn(f.strongly_interior),
                opt(f.extremal_interior)
            );
        }
        println!(
            "Int = {}, Int_s = {}",
            cls.interior(),
            cls.strongly_interior()
        );
        println!(
            "Int_e = {}, Int_es = {}",
            cls.extremal_interior(),
            cls.extremal_strongly_interior()
        );
        match &atf {
            Some(d) => {
                println!(
                    "almost triangle-free: base {}, {} glued triangles",
                    d.base,
                    d.triangles.len()
                );
                for t in &d.triangles {
                    println!(
                        "  triangle at {} with outer vertices {} {}",
                        t.attachment, t.outer.0, t.outer.1
                    );
                }
            }
            None => println!("not almost triangle-free"),
        }
        if let Some(cf) = &closed {
            println!("closed form: v = {}", cf.describe());
        }
    }
    if complete {
        Ok(())
    } else {
        Err(Failure::new(
            BUDGET,
            "budget exceeded: extremal flags marked ? are undecided",
        ))
    }
}

pub fn efl(g: &Graph, opts: &SolveOptions) -> Result<(), Failure> {
    let r = verify_efl(g, opts).map_err(|e| solve_failure(e, "v"))?;
    if r.holds {
        println!(
            "chi = {}, v = {}, EFL holds (margin {})",
            r.chi, r.v, r.margin
        );
        Ok(())
    } else {
        println!("chi = {}, v = {}, EFL FAILS", r.chi, r.v);
        Err(Failure::new(
            CHECK_FAILED,
            format!(
                "EFL COUNTEREXAMPLE: chi = {} > v = {} for {}",
                r.chi,
                r.v,
                to_graph6(g)
            ),
        ))
    }
}

pub fn surgery(
    outcome: &SurgeryOutcome,
    verify: bool,
    as_json: bool,
    opts: &SolveOptions,
) -> Result<(), Failure> {
    let checks = if verify {
        Some(outcome.check(opts).map_err(|e| solve_failure(e, "v"))?)
    } else {
        None
    };
    if as_json {
        println!(
            "{}",
            pretty!(serde_json::json!({ "outcome": outcome, "checks": checks }))
        );
    } else {
        println!("lemma: {:?}", outcome.lemma);
        println!(
            "result: {} ({} vertices, {} edges)",
            to_graph6(&outcome.result),
            outcome.result.n(),
            outcome.result.m()
        );
        if !outcome.note.is_empty() {
            println!("note: {}", outcome.note);
        }
        if let Some(eq) = outcome.equality {
            println!("equality case: {}", if eq { "yes" } else { "no" });
        }
        for claim in &outcome.claims {
            println!("predicts: {claim}");
        }
        for c in checks.iter().flatten() {
            println!(
                "{}: {} (actual {})",
                if c.holds { "holds" } else { "FAILS" },
                c.claim,
                c.actual
            );
        }
    }
    match checks.iter().flatten().find(|c| !c.holds) {
        Some(c) => Err(Failure::new(
            CHECK_FAILED,
            format!("prediction failed: {}", c.claim),
        )),
        None => Ok(()),
    }
}

enum Status {
    Ok(String),
    Fail(String),
    Budget(String),
}

fn run_check(g: &Graph, check: Check, opts: &SolveOptions) -> Status {
    let v = match linear_intersection_number(g, opts) {
        Ok(r) => r,
        Err(SolveError::BudgetExceeded { lower, upper }) => {
            return Status::Budget(format!("v in [{lower}, {upper}]"))
        }
        Err(e) => return Status::Fail(e.to_string()),
    };
    match check {
        Check::Efl => {
            let chi = linspect_core::cliques::chromatic_number(g);
            if chi <= v.value {
                Status::Ok(format!("chi = {chi}, v = {}", v.value))
            } else {
                Status::Fail(format!("EFL COUNTEREXAMPLE: chi = {chi} > v = {}", v.value))
            }
        }
        Check::Oracle => match brute_force_v(g, DEFAULT_ORACLE_CAP) {
            Ok(o) if o == v.value => Status::Ok(format!("v = {o}")),
            Ok(o) => Status::Fail(format!("solver {} != oracle {o}", v.value)),
            Err(e) => Status::Fail(e.to_string()),
        },
        Check::Atf => {
            let eq = v.value == v.bounds.edge_bound;
            let atf = is_almost_triangle_free(g).is_some();
            if eq == atf {
                Status::Ok(format!(
                    "v = {}, edge bound {}, atf {atf}",
                    v.value, v.bounds.edge_bound
                ))
            } else {
                Status::Fail(format!(
                    "v = {} vs edge bound {} but atf {atf}",
                    v.value, v.bounds.edge_bound
                ))
            }
        }
        Check::Bounds => {
            let b = &v.bounds;
            match b.lower_bounds().into_iter().find(|&(_, l)| l > v.value) {
                Some((name, l)) => Status::Fail(format!("{name} = {l} > v = {}", v.value)),
                None if v.value > b.edge_bound => {
                    Status::Fail(format!("v = {} > edge bound", v.value))
                }
                None => Status::Ok(format!(
                    "{} <= {} <= {}",
                    b.best_lower, v.value, b.edge_bound
                )),
            }
        }
    }
}

pub fn batch(
    graphs: &[Graph],
    lines: &[&str],
    check: Check,
    opts: &SolveOptions,
) -> Result<(), Failure> {
    let results: Vec<Status> = graphs
        .par_iter()
        .map(|g| run_check(g, check, opts))
        .collect();
    let (mut ok, mut failed, mut budget) = (0, 0, 0);
    for (i, (status, line)) in results.iter().zip(lines).enumerate() {
        let (tag, detail) = match status {
            Status::Ok(d) => {
                ok += 1;
                ("ok", d)
            }
            Status::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Status::Budget(d) => {
                budget += 1;
                ("budget", d)
            }
        };
        println!("{:>5} {line} {tag} {detail}", i + 1);
    }
    println!("{ok}/{} ok", graphs.len());
    if failed > 0 {
        Err(Failure::new(
            CHECK_FAILED,
            format!("{failed} of {} graphs failed the check", graphs.len()),
        ))
    } else if budget > 0 {
        Err(Failure::new(
            BUDGET,
            format!("{budget} graphs exceeded the budget"),
        ))
    } else {
        Ok(())
    }
}

pub fn verify(text: &str) -> Result<(), Failure> {
    let doc = CertificateDocument::from_json(text)
        .map_err(|e| Failure::new(PARSE, format!("certificate: {e}")))?;
    match verify_document(&doc) {
        Ok(v) => {
            let name = match doc.mode {
                linspect_core::CoverMode::Full => "v",
                linspect_core::CoverMode::Reduced => "vbar",
            };
            println!("ok: {name} = {} (optimality: {})", v.value, v.optimality);
            Ok(())
        }
        Err(e) => {
            println!("rejected: {e}");
            Err(Failure::new(
                CHECK_FAILED,
                format!("certificate rejected: {e}"),
            ))
        }
    }
}
