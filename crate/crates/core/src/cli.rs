//! Command dispatch shared by the `isg` binary and the C interface.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    bundle_fibers, check_grading, epsilon_restrict, epsilon_star_square, fiber_decompose, sos_witness_coset,
    sos_witness_idempotent_kernel, Grading,
};
use crate::error::{IsgError, Result};
use crate::families::{
    br_phi, quasi_lattice_check, shift_context, shift_grading, toeplitz_oracle_check, BRElement, ShiftSemigroup,
};
use crate::graph::{enumerate_pairs, orthogonality_check, semisaturation_factorize, FactorSet, GraphInverseSemigroup};
use crate::io::{element_json, from_value, load_context, parse_element, AnyGroup, Context, ElementCodec, QLDoc};
use crate::rep::{
    action_matrix, coaction_unitary_check, graded_block_check, lambda_matrix, norm_lower_bound, psd_refute, rho_matrix,
    RepMatrix, Truncation,
};
use crate::semigroup::{is_e_unitary, kernel_of, max_group_image, natural_leq, Group, InverseSemigroup, Integers};
use crate::suite;

pub const COMMANDS: &[&str] = &[
    "product",
    "order",
    "idempotents",
    "max-group-image",
    "e-unitary",
    "epsilon",
    "fibers",
    "sos-witness",
    "bundle-check",
    "grading-check",
    "orthogonality",
    "factorize",
    "ql-check",
    "toeplitz-oracle",
    "psd",
    "norm-bound",
    "coaction-check",
    "example62",
    "report",
];

/// One invocation: a command, its input document and numeric parameters.
#[derive(Debug, Clone, Default, Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub command: String,
    #[serde(default)]
    pub input: Option<Value>,
    #[serde(default)]
    pub window: Option<usize>,
    #[serde(default)]
    pub length: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    AssertionFailed,
    InputError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::AssertionFailed => 1,
            Status::InputError => 2,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub status: Status,
    pub report: Value,
}

struct Report {
    passed: bool,
    body: Value,
}

fn ok(body: Value) -> Result<Report> {
    Ok(Report { passed: true, body })
}

fn verdict(passed: bool, body: Value) -> Result<Report> {
    Ok(Report { passed, body })
}

pub fn run_job(job: &Job) -> Outcome {
    match dispatch(job) {
        Ok(r) => {
            let mut body = r.body;
            if let Value::Object(m) = &mut body {
                m.insert("command".into(), json!(job.command));
                m.insert("passed".into(), json!(r.passed));
            }
            Outcome { status: if r.passed { Status::Ok } else { Status::AssertionFailed }, report: body }
        }
        Err(e) => {
            let status = if e.is_mathematical() { Status::AssertionFailed } else { Status::InputError };
            Outcome {
                status,
                report: json!({"command": job.command, "passed": false, "error": e.to_string(), "status": status}),
            }
        }
    }
}

/// `key: value` lines for the top-level fields of a report.
pub fn render_text(report: &Value) -> String {
    match report {
        Value::Object(m) => m
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn input(job: &Job) -> Result<&Value> {
    job.input.as_ref().ok_or_else(|| IsgError::Input(format!("command {} needs --input", job.command)))
}

/// The semigroup part of a document: `doc["semigroup"]` or the document.
fn semigroup_doc(doc: &Value) -> &Value {
    doc.get("semigroup").unwrap_or(doc)
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value> {
    doc.get(key).ok_or_else(|| IsgError::Input(format!("input is missing \"{key}\"")))
}

fn dispatch(job: &Job) -> Result<Report> {
    match job.command.as_str() {
        "order" | "max-group-image" | "e-unitary" => finite_command(job),
        "orthogonality" | "factorize" => graph_command(job),
        "ql-check" => {
            let bound = match &job.input {
                Some(doc) => from_value::<QLDoc>(doc, "quasi-lattice")?.bound,
                None => None,
            };
            let n = match &job.input {
                Some(doc) => from_value::<QLDoc>(doc, "quasi-lattice")?.n,
                None => return Err(IsgError::Input("ql-check needs --input {\"n\", \"box\"}".into())),
            };
            let r = quasi_lattice_check(n, job.window.map(|w| w as i64).or(bound).unwrap_or(3));
            verdict(r.passed(), json!({"report": r}))
        }
        "toeplitz-oracle" => {
            let n = match &job.input {
                Some(doc) => from_value::<QLDoc>(doc, "quasi-lattice")?.n,
                None => 2,
            };
            let r = toeplitz_oracle_check(n, job.window.unwrap_or(8), job.length.unwrap_or(3));
            verdict(r.passed(), json!({"report": r}))
        }
        "example62" => shift_counterexample(job.window.unwrap_or(5)),
        "report" => {
            let results = suite::run_all(job.seed.unwrap_or(suite::DEFAULT_SEED));
            let passed = results.iter().all(|r| r.passed);
            verdict(passed, json!({"criteria": results}))
        }
        "psd" | "norm-bound" if is_action(job) => action_command(job),
        "product" | "idempotents" | "epsilon" | "fibers" | "sos-witness" | "bundle-check" | "grading-check" | "psd"
        | "norm-bound" | "coaction-check" => {
            let doc = input(job)?;
            let ctx = load_context(semigroup_doc(doc))?;
            with_env(&ctx, job, doc)
        }
        other => Err(IsgError::Input(format!("unknown command {other:?}; expected one of {}", COMMANDS.join(", ")))),
    }
}

fn shift_counterexample(window: usize) -> Result<Report> {
    if window < 2 {
        return Err(IsgError::Input("--window must be at least 2".into()));
    }
    let ctx = shift_context(window)?;
    let m = action_matrix(&ctx.epsilon_x_x_star, &ctx.window_points()).matrix.to_float();
    let cert = psd_refute(&m)?;
    let exact = ctx.epsilon_x_x_star == ctx.expected_epsilon();
    let closed = 1.0 - 2.0 * (std::f64::consts::PI / (window as f64 + 2.0)).cos();
    let verdict_text = if cert.refuted { "not positive in ℂH" } else { "positivity not refuted" };
    verdict(
        exact,
        json!({
            "window": window,
            "x_x_star": ctx.x_x_star.render(&ShiftSemigroup),
            "epsilon_x_x_star": element_json(&ShiftSemigroup, &ctx.epsilon_x_x_star),
            "expected": ctx.expected_epsilon().render(&ShiftSemigroup),
            "exact_match": exact,
            "min_eig": cert.value,
            "closed_form": closed,
            "norm_lower_bound": norm_lower_bound(&m),
            "certificate": cert,
            "verdict": verdict_text,
        }),
    )
}

fn is_action(job: &Job) -> bool {
    job.input.as_ref().and_then(|d| d.get("representation")).and_then(Value::as_str) == Some("action")
}

fn action_command(job: &Job) -> Result<Report> {
    let doc = input(job)?;
    if !matches!(load_context(semigroup_doc(doc))?, Context::Shift) {
        return Err(IsgError::Input("the action representation is available for the shift family".into()));
    }
    let f = parse_element(&ShiftSemigroup, field(doc, "element")?)?;
    let window = job.window.unwrap_or(5);
    let points: Vec<i64> = (0..=window as i64).collect();
    let rep = action_matrix(&f, &points);
    spectral_report(job, rep)
}

fn spectral_report(job: &Job, rep: RepMatrix<crate::algebra::Scalar>) -> Result<Report> {
    let m = rep.matrix.to_float();
    if job.command == "psd" {
        let mut cert = psd_refute(&m)?;
        if let Some(tol) = job.tol {
            cert.tolerance = tol;
            cert.refuted = cert.value < -tol;
        }
        let verdict_text = if cert.refuted { "not positive" } else { "positivity not refuted" };
        ok(json!({"certificate": cert, "dropped": rep.dropped, "verdict": verdict_text}))
    } else {
        ok(json!({"norm_lower_bound": norm_lower_bound(&m), "basis_size": m.dim(), "dropped": rep.dropped}))
    }
}

fn finite_command(job: &Job) -> Result<Report> {
    let doc = input(job)?;
    let Context::Finite(ctx) = load_context(semigroup_doc(doc))? else {
        return Err(IsgError::Input(format!("{} needs a finite semigroup (table or generators)", job.command)));
    };
    let s = &ctx.semigroup;
    match job.command.as_str() {
        "order" => {
            if let (Some(a), Some(b)) = (doc.get("a"), doc.get("b")) {
                let (a, b) = (s.parse_elem(a)?, s.parse_elem(b)?);
                return ok(json!({"a": s.label(a), "b": s.label(b), "leq": natural_leq(s, a, b)}));
            }
            let pairs: Vec<[&str; 2]> = s
                .elements()
                .flat_map(|a| s.elements().map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && natural_leq(s, a, b))
                .map(|(a, b)| [s.label(a), s.label(b)])
                .collect();
            ok(json!({"strictly_below": pairs}))
        }
        "max-group-image" => {
            let img = max_group_image(s);
            let classes: Vec<Value> = s.elements().map(|a| json!({"elem": s.label(a), "class": img.sigma[a]})).collect();
            ok(json!({
                "group_order": img.group.len(),
                "trivial": img.group.len() == 1,
                "has_zero": s.zero().is_some(),
                "sigma": classes,
            }))
        }
        _ => {
            let img = max_group_image(s);
            let kernel = kernel_of(&img.homomorphism(s));
            let labels: Vec<&str> = kernel.iter().map(|&x| s.label(x)).collect();
            ok(json!({"e_unitary": is_e_unitary(s), "kernel": labels}))
        }
    }
}

fn graph_command(job: &Job) -> Result<Report> {
    let doc = input(job)?;
    let Context::Graph(sg) = load_context(semigroup_doc(doc))? else {
        return Err(IsgError::Input(format!("{} needs a graph", job.command)));
    };
    if job.command == "orthogonality" {
        let r = orthogonality_check(sg.graph(), job.length.unwrap_or(3));
        return verdict(r.passed(), json!({"report": r}));
    }
    let f = parse_element(&sg, field(doc, "element")?)?;
    let word = |key: &str| -> Result<_> {
        let text = field(doc, key)?.as_str().ok_or_else(|| IsgError::Input(format!("\"{key}\" must be a word string")))?;
        sg.parse_word(text)
    };
    let (s, t) = (word("s")?, word("t")?);
    let fac = semisaturation_factorize(&sg, &f, &s, &t)?;
    let ks = fac.ks();
    let render_pairs = |sg: &GraphInverseSemigroup| -> Vec<Value> {
        match &fac.factors {
            FactorSet::Exact(v) => v
                .iter()
                .map(|p| json!({"k": p.k, "left": element_json(sg, &p.left), "right": element_json(sg, &p.right)}))
                .collect(),
            FactorSet::Float(v) => v
                .iter()
                .map(|p| json!({"k": p.k, "left": p.left.render(sg), "right": p.right.render(sg)}))
                .collect(),
        }
    };
    let labels = sg.free_group();
    ok(json!({
        "exact": fac.is_exact(),
        "case": fac.case,
        "a": crate::graph::FreeWord::positive(&fac.a).render(&labels.labels),
        "b": crate::graph::FreeWord::positive(&fac.b).render(&labels.labels),
        "c": crate::graph::FreeWord::positive(&fac.c).render(&labels.labels),
        "k_range": [ks.first(), ks.last()],
        "factors": render_pairs(&sg),
        "max_residual": fac.max_residual,
        "identity": "sum of f_k f'_k equals f",
    }))
}

/// Everything a graded command needs about one semigroup.
struct Env<'a, S: InverseSemigroup, G: Group> {
    s: &'a S,
    phi: Grading<S::Elem, G>,
    elems: Vec<S::Elem>,
    group_window: Vec<G::Elem>,
    doc: &'a Value,
}

fn int_window(w: usize) -> Vec<i64> {
    (-(w as i64)..=w as i64).collect()
}

fn with_env(ctx: &Context, job: &Job, doc: &Value) -> Result<Report> {
    let w = job.window;
    let len = job.length.unwrap_or(2);
    match ctx {
        Context::Finite(c) => {
            let group_window = match &c.group {
                AnyGroup::Integers => int_window(w.unwrap_or(3)),
                AnyGroup::Table(g) => g.elements().map(|x| x as i64).collect(),
            };
            let elems = c.semigroup.elements().collect();
            run_graded(Env { s: &c.semigroup, phi: c.grading(), elems, group_window, doc }, job)
        }
        Context::Graph(sg) => {
            let elems = enumerate_pairs(sg.graph(), len).elements;
            let group_window = sg.free_group().ball(w.unwrap_or(2));
            run_graded(Env { s: sg, phi: sg.grading(), elems, group_window, doc }, job)
        }
        Context::BruckReilly { br, window } => {
            let m = w.map(|x| x as u64).or(*window).unwrap_or(3);
            let phi = Grading::new(Integers, |p: &BRElement| Some(br_phi(p)));
            let group_window = int_window(2 * m as usize);
            run_graded(Env { s: br, phi, elems: br.window(m), group_window, doc }, job)
        }
        Context::Toeplitz(ts) => {
            let r = w.unwrap_or(2) as i64;
            let mut group_window: Vec<Vec<i64>> = vec![Vec::new()];
            for _ in 0..ts.n {
                group_window = group_window
                    .into_iter()
                    .flat_map(|p| (-r..=r).map(move |c| [p.clone(), vec![c]].concat()))
                    .collect();
            }
            run_graded(Env { s: ts, phi: ts.grading(), elems: ts.elements_up_to(len), group_window, doc }, job)
        }
        Context::Shift => {
            let n = w.unwrap_or(4);
            let elems = shift_context(n)?.truncation();
            run_graded(Env { s: &ShiftSemigroup, phi: shift_grading(), elems, group_window: int_window(2 * n), doc }, job)
        }
    }
}

fn run_graded<S, G>(env: Env<'_, S, G>, job: &Job) -> Result<Report>
where
    S: ElementCodec,
    S::Elem: 'static,
    G: Group + Clone + 'static,
{
    let Env { s, phi, elems, group_window, doc } = env;
    let group = phi.group().clone();
    let element = || parse_element(s, field(doc, "element")?);
    let nonzero: Vec<S::Elem> = elems.iter().filter(|e| !s.is_zero(e)).cloned().collect();
    match job.command.as_str() {
        "product" => {
            let a = s.parse_elem(field(doc, "a")?)?;
            let b = s.parse_elem(field(doc, "b")?)?;
            ok(json!({"a": s.elem_json(&a), "b": s.elem_json(&b), "product": s.elem_json(&s.mul(&a, &b))}))
        }
        "idempotents" => {
            let list: Vec<Value> = nonzero.iter().filter(|e| s.is_idempotent(e)).map(|e| s.elem_json(e)).collect();
            ok(json!({"count": list.len(), "idempotents": list, "scanned": nonzero.len()}))
        }
        "epsilon" => {
            let f = element()?;
            let eps = match doc.get("h") {
                Some(Value::Array(hs)) => {
                    let h: BTreeSet<S::Elem> = hs.iter().map(|v| s.parse_elem(v)).collect::<Result<_>>()?;
                    epsilon_restrict(&f, |e| h.contains(e))
                }
                Some(_) => return Err(IsgError::Input("\"h\" must be a list of elements".into())),
                None => epsilon_restrict(&f, |e| phi.in_kernel(e)),
            };
            ok(json!({"element": element_json(s, &f), "epsilon": element_json(s, &eps), "unchanged": eps == f}))
        }
        "fibers" => {
            let f = element()?;
            let parts: Vec<Value> = fiber_decompose(&f, &phi)
                .iter()
                .map(|(g, part)| json!({"degree": group.render(g), "component": element_json(s, part)}))
                .collect();
            let sum = epsilon_star_square(s, &f, &phi)?;
            ok(json!({"fibers": parts, "epsilon_star_square": element_json(s, &sum), "identity": "ε(f*f) = Σ f_g* f_g"}))
        }
        "sos-witness" => {
            let f = element()?;
            let degrees: BTreeSet<Option<G::Elem>> = f.support().map(|e| phi.degree(e)).collect();
            if degrees.len() > 1 {
                return Err(IsgError::Input("sos-witness needs an element supported in a single fiber".into()));
            }
            let (mode, witness) = match doc.get("rep") {
                Some(r) => ("coset", sos_witness_coset(s, &f, &s.parse_elem(r)?)?),
                None => ("idempotent-kernel", sos_witness_idempotent_kernel(s, &f)?),
            };
            ok(json!({"mode": mode, "element": element_json(s, &f), "witness": element_json(s, &witness), "identity": "f'* f' = f* f"}))
        }
        "bundle-check" => {
            let fam = bundle_fibers(s, &elems, &phi);
            let sizes: Vec<Value> =
                fam.fibers.iter().map(|(g, v)| json!({"degree": group.render(g), "size": v.len()})).collect();
            verdict(fam.report.valid(), json!({"fibers": sizes, "report": fam.report}))
        }
        "grading-check" => {
            let r = check_grading(s, &elems, &phi);
            verdict(r.valid(), json!({"report": r}))
        }
        "psd" | "norm-bound" => {
            let f = element()?;
            let trunc = Truncation::new(s, elems.iter().cloned());
            let rep = match doc.get("representation").and_then(Value::as_str).unwrap_or("left") {
                "left" => lambda_matrix(s, &f, &trunc)?,
                "right" => rho_matrix(s, &f, &trunc)?,
                other => return Err(IsgError::Input(format!("unknown representation {other:?}"))),
            };
            spectral_report(job, rep)
        }
        "coaction-check" => {
            let trunc = Truncation::new(s, nonzero.iter().cloned());
            let co = coaction_unitary_check(s, &phi, &trunc, &group_window, &nonzero);
            let blocks = graded_block_check(s, &phi, &trunc, &nonzero);
            verdict(co.passed() && blocks.passed(), json!({"coaction": co, "graded_blocks": blocks}))
        }
        other => Err(IsgError::Input(format!("unknown command {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn job(command: &str, fixture: Option<&str>) -> Job {
        Job { command: command.into(), input: fixture.map(fixtures::get), ..Job::default() }
    }

    #[test]
    fn shift_command_reports_negative_spectrum() {
        let out = run_job(&Job { window: Some(5), ..job("example62", None) });
        assert_eq!(out.status, Status::Ok);
        let v = out.report["min_eig"].as_f64().unwrap();
        assert!((v + 0.80194).abs() < 1e-5);
        assert_eq!(out.report["verdict"], "not positive in ℂH");
    }

    #[test]
    fn factorize_fixture_is_exact() {
        let out = run_job(&job("factorize", Some("factorize_bouquet1")));
        assert_eq!(out.status, Status::Ok, "{}", out.report);
        assert_eq!(out.report["exact"], true);
        assert_eq!(out.report["k_range"], json!([0, 1]));
    }

    #[test]
    fn epsilon_of_kernel_element_is_unchanged() {
        let mut j = job("epsilon", None);
        j.input = Some(json!({
            "semigroup": fixtures::get("bouquet1"),
            "element": {"terms": [{"elem": "(e, e)", "re": "2"}, {"elem": "(v, v)", "re": "1/3"}]}
        }));
        let out = run_job(&j);
        assert_eq!(out.report["unchanged"], true);
    }

    #[test]
    fn input_errors_exit_two() {
        assert_eq!(run_job(&job("nonsense", None)).status.exit_code(), 2);
        assert_eq!(run_job(&job("epsilon", None)).status.exit_code(), 2);
        assert_eq!(run_job(&job("order", Some("bouquet1"))).status.exit_code(), 2);
    }

    #[test]
    fn failed_assertion_exits_one() {
        let mut j = job("sos-witness", None);
        j.input = Some(json!({
            "semigroup": fixtures::get("br_z2_trivial"),
            "element": {"terms": [{"elem": [2, "a", 1], "re": "1"}]},
            "rep": [3, "1", 0]
        }));
        let out = run_job(&j);
        assert_eq!(out.status.exit_code(), 1, "{}", out.report);
        assert!(out.report["error"].as_str().unwrap().contains("(2,a,1)"));
    }

    #[test]
    fn structural_commands() {
        let out = run_job(&job("max-group-image", Some("closure5")));
        assert_eq!(out.report["trivial"], true);
        let out = run_job(&job("e-unitary", Some("chain")));
        assert_eq!(out.report["e_unitary"], true);
        let out = run_job(&job("idempotents", Some("closure5")));
        assert_eq!(out.report["count"], 2);
    }

    #[test]
    fn graded_commands_pass_on_fixtures() {
        for (cmd, fx) in [
            ("grading-check", "bouquet2"),
            ("bundle-check", "br_z2_identity"),
            ("coaction-check", "closure5"),
            ("coaction-check", "bouquet1"),
            ("sos-witness", "sos_closure5"),
            ("sos-witness", "sos_br_coset"),
            ("fibers", "epsilon_bouquet2"),
            ("psd", "shift_expectation"),
            ("orthogonality", "parallel2"),
            ("ql-check", "ql_n2"),
        ] {
            let out = run_job(&job(cmd, Some(fx)));
            assert_eq!(out.status, Status::Ok, "{cmd} {fx}: {}", out.report);
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_job(&job("coaction-check", Some("br_z2_trivial")));
        let b = run_job(&job("coaction-check", Some("br_z2_trivial")));
        assert_eq!(serde_json::to_string(&a.report).unwrap(), serde_json::to_string(&b.report).unwrap());
    }
}
