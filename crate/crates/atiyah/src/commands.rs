use std::path::Path;

use atiyah_core::atiyah::{
    certificate_search, cocycle_closed_form, cocycle_definitional, decide_with, jet_obstruction,
    replay_certificate, replay_verdict, AtiyahError, Amp1Problem, JetOutcome, Operator, Verdict,
};
use atiyah_core::clean::{clean_check, CleanVerdict};
use atiyah_core::connection::{ConnectionTriple, Violation};
use atiyah_core::derived::{tangent_clean_check, zero_locus_iso_check};
use atiyah_core::graded::GradedVectorField;
use serde_json::{json, Map, Value};

use crate::problem::{parse_problem, ProblemError, ProblemFile};
use crate::report::{self, Outcome, Report};

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Problem { path: String, source: ProblemError },
    #[error("{path}: {source}")]
    Engine { path: String, source: AtiyahError },
}

impl CommandError {
    /// 66 for unreadable input, 65 for bad data.
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Io { .. } => 66,
            _ => 65,
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    pub degree_bound: Option<u32>,
    pub jet_order: Option<u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Route {
    Closed,
    Definitional,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    D1,
    D2,
    D3,
    All,
}

pub struct Loaded {
    pub path: String,
    pub file: ProblemFile,
}

impl Loaded {
    fn engine<T>(&self, r: Result<T, AtiyahError>) -> Result<T, CommandError> {
        r.map_err(|source| CommandError::Engine {
            path: self.path.clone(),
            source,
        })
    }

    fn header(&self) -> Map<String, Value> {
        let (p, vars) = self.file.amp1();
        let mut m = Map::new();
        m.insert("file".into(), self.path.clone().into());
        m.insert("kind".into(), self.file.kind().into());
        if let Some(d) = self.file.description() {
            m.insert("description".into(), d.into());
        }
        m.insert(
            "parameters".into(),
            json!({
                "vars": vars,
                "n": p.n(),
                "m": p.m(),
                "degree_bound": p.degree_bound,
                "jet_order": p.jet_order,
                "trivial_connection": p.connection.is_trivial(),
            }),
        );
        m
    }
}

pub fn load(path: &Path, bounds: Bounds) -> Result<Loaded, CommandError> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CommandError::Io {
        path: shown.clone(),
        source,
    })?;
    let mut file = parse_problem(&text).map_err(|source| CommandError::Problem {
        path: shown.clone(),
        source,
    })?;
    let p = file.amp1_mut();
    if let Some(d) = bounds.degree_bound {
        p.degree_bound = d;
    }
    if let Some(j) = bounds.jet_order {
        p.jet_order = j;
    }
    Ok(Loaded { path: shown, file })
}

fn verdict_outcome(v: &Verdict) -> Outcome {
    match v {
        Verdict::Vanishes { .. } => Outcome::Positive,
        Verdict::NonVanishing { .. } => Outcome::Negative,
        Verdict::Unknown { .. } => Outcome::Unknown,
    }
}

fn clean_outcome(v: &CleanVerdict) -> Outcome {
    match v {
        CleanVerdict::Clean => Outcome::Positive,
        CleanVerdict::NotClean { .. } => Outcome::Negative,
        CleanVerdict::Unknown => Outcome::Unknown,
    }
}

fn run_decide(problem: &Amp1Problem) -> Result<Verdict, AtiyahError> {
    let cocycle = problem.cocycle()?;
    Ok(decide_with(problem, &cocycle, &problem.operators()))
}

pub fn decide(l: &Loaded) -> Result<Report, CommandError> {
    let (p, vars) = l.file.amp1();
    let v = l.engine(run_decide(p))?;
    let replayed = l.engine(replay_verdict(p, &v))?;
    let mut body = l.header();
    body.insert("verdict".into(), report::verdict(&v, vars, &p.operators()));
    body.insert("replay".into(), replayed.into());
    Ok(Report::new("decide", body, verdict_outcome(&v)))
}

pub fn cocycle(l: &Loaded, route: Route, check_both: bool) -> Result<Report, CommandError> {
    let (p, vars) = l.file.amp1();
    let closed = || l.engine(cocycle_closed_form(&p.section, &p.connection));
    let definitional = || l.engine(cocycle_definitional(&p.section, &p.connection));
    let mut body = l.header();
    let mut outcome = Outcome::Positive;
    let shown = match route {
        Route::Closed => closed()?,
        Route::Definitional => definitional()?,
    };
    body.insert(
        "route".into(),
        match route {
            Route::Closed => "closed",
            Route::Definitional => "definitional",
        }
        .into(),
    );
    if check_both {
        let agree = closed()? == definitional()?;
        body.insert("routes_agree".into(), agree.into());
        if !agree {
            outcome = Outcome::Negative;
        }
    }
    body.insert("cocycle".into(), report::cocycle(&shown, vars));
    Ok(Report::new("cocycle", body, outcome))
}

pub fn operators(l: &Loaded, which: Which) -> Result<Report, CommandError> {
    let (p, vars) = l.file.amp1();
    let ops = p.operators();
    let chosen: Vec<Operator> = match which {
        Which::D1 => vec![Operator::D1],
        Which::D2 => vec![Operator::D2],
        Which::D3 => vec![Operator::D3],
        Which::All => Operator::ALL.to_vec(),
    };
    let mut body = l.header();
    body.insert(
        "operators".into(),
        chosen.iter().map(|&op| report::matrix(ops.get(op), vars)).collect(),
    );
    Ok(Report::new("operators", body, Outcome::Positive))
}

/// Clean-intersection oracle verdict, `Unknown` when the file has no witness.
pub fn clean_verdict(l: &Loaded) -> Result<CleanVerdict, CommandError> {
    let problem_err = |e: ProblemError| CommandError::Problem {
        path: l.path.clone(),
        source: e,
    };
    match &l.file {
        ProblemFile::Amp1(f) => match &f.witness {
            None => Ok(CleanVerdict::Unknown),
            Some(w) => clean_check(&f.problem.section, w).map_err(|e| CommandError::Problem {
                path: l.path.clone(),
                source: ProblemError::Invalid {
                    path: "zero_locus".into(),
                    message: e.to_string(),
                },
            }),
        },
        ProblemFile::Derived(f) => match &f.witness {
            None => Ok(CleanVerdict::Unknown),
            Some(w) => tangent_clean_check(&f.problem, w).map_err(|e| problem_err(e.into())),
        },
    }
}

pub fn clean(l: &Loaded) -> Result<Report, CommandError> {
    let v = clean_verdict(l)?;
    let mut body = l.header();
    body.insert("verdict".into(), report::clean_verdict(&v));
    Ok(Report::new("clean", body, clean_outcome(&v)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub status: Status,
}

fn describe_violation(v: &Violation) -> String {
    match v {
        Violation::Torsion { i, j, k } => {
            format!("torsion: gamma_m[{i}][{j}][{k}] differs from gamma_m[{j}][{i}][{k}]")
        }
        Violation::BetaConstraint { i, j, a, k, .. } => {
            format!("beta constraint violated at beta[{i}][{j}][{a}][{k}]")
        }
    }
}

fn first_certificate(
    cocycle: &atiyah_core::atiyah::Cocycle,
    ops: &atiyah_core::atiyah::Operators,
    bound: u32,
) -> Option<atiyah_core::atiyah::Certificate> {
    (0..=bound).find_map(|d| certificate_search(cocycle, ops, d))
}

/// Every invariant that applies to the file, in a fixed order. Later
/// checks are skipped when the connection is invalid.
pub fn checks(l: &Loaded) -> Result<Vec<Check>, CommandError> {
    let (p, _) = l.file.amp1();
    let mut out = Vec::new();
    let mut push = |name, status| out.push(Check { name, status });

    let violations = p.connection.validate();
    if let Some(v) = violations.first() {
        push("connection", Status::Fail(describe_violation(v)));
        return Ok(out);
    }
    push("connection", Status::Pass);

    let q = GradedVectorField::interior_product(&p.section);
    push(
        "q_squared",
        match q.bracket(&q) {
            Ok(b) if b.is_zero() => Status::Pass,
            Ok(_) => Status::Fail("[Q, Q] is not zero".into()),
            Err(e) => Status::Fail(e.to_string()),
        },
    );

    let closed = l.engine(cocycle_closed_form(&p.section, &p.connection))?;
    push(
        "routes",
        match cocycle_definitional(&p.section, &p.connection) {
            Ok(d) if d == closed => Status::Pass,
            Ok(_) => Status::Fail("closed and definitional cocycles differ".into()),
            Err(e) => Status::Fail(e.to_string()),
        },
    );

    let ops = p.operators();
    let verdict = decide_with(p, &closed, &ops);
    push(
        "replay",
        if l.engine(replay_verdict(p, &verdict))? {
            Status::Pass
        } else {
            Status::Fail(format!("{} verdict does not replay", verdict.kind()))
        },
    );

    push(
        "jet_monotonicity",
        match &verdict {
            Verdict::NonVanishing {
                witness_point,
                jet_order,
            } => {
                let top = (*jet_order).max(p.jet_order) + 1;
                match (*jet_order..=top)
                    .find(|&o| jet_obstruction(&closed, &ops, witness_point, o) != JetOutcome::Infeasible)
                {
                    None => Status::Pass,
                    Some(o) => Status::Fail(format!("jet system feasible again at order {o}")),
                }
            }
            _ => Status::Skip("no witness".into()),
        },
    );

    push(
        "connection_independence",
        if p.connection.is_trivial() {
            Status::Skip("trivial connection".into())
        } else {
            let trivial = ConnectionTriple::trivial(p.n(), p.m());
            let base = l.engine(cocycle_closed_form(&p.section, &trivial))?;
            let diff = closed.sub(&base);
            match first_certificate(&diff, &ops, p.degree_bound) {
                Some(c) if replay_certificate(&diff, &ops, &c) => Status::Pass,
                Some(_) => Status::Fail("difference certificate does not replay".into()),
                None => Status::Fail(format!(
                    "no difference certificate up to degree {}",
                    p.degree_bound
                )),
            }
        },
    );

    let clean = clean_verdict(l)?;
    push(
        "clean_equivalence",
        match (&verdict, &clean) {
            (Verdict::Unknown { .. }, _) => Status::Skip("decide returned Unknown".into()),
            (_, CleanVerdict::Unknown) => Status::Skip("no clean verdict".into()),
            (v, c) if matches!(v, Verdict::Vanishes { .. }) == matches!(c, CleanVerdict::Clean) => {
                Status::Pass
            }
            (v, c) => Status::Fail(format!("decide says {}, clean oracle says {}", v.kind(), c.kind())),
        },
    );

    if let ProblemFile::Derived(f) = &l.file {
        let mismatches = zero_locus_iso_check(&f.problem, &f.amp1);
        push(
            "zero_locus_iso",
            if mismatches.is_empty() {
                Status::Pass
            } else {
                Status::Fail(format!("{mismatches:?}"))
            },
        );
    }
    Ok(out)
}

fn checks_value(checks: &[Check]) -> Value {
    checks
        .iter()
        .map(|c| {
            let (status, detail) = match &c.status {
                Status::Pass => ("pass", None),
                Status::Fail(d) => ("fail", Some(d)),
                Status::Skip(d) => ("skip", Some(d)),
            };
            let mut m = Map::new();
            m.insert("name".into(), c.name.into());
            m.insert("status".into(), status.into());
            if let Some(d) = detail {
                m.insert("detail".into(), d.clone().into());
            }
            Value::Object(m)
        })
        .collect()
}

fn first_failure(checks: &[Check]) -> Option<&'static str> {
    checks
        .iter()
        .find(|c| matches!(c.status, Status::Fail(_)))
        .map(|c| c.name)
}

pub fn verify(l: &Loaded) -> Result<Report, CommandError> {
    let checks = checks(l)?;
    let failed = first_failure(&checks);
    let mut body = l.header();
    body.insert("checks".into(), checks_value(&checks));
    body.insert("first_failure".into(), failed.map_or(Value::Null, Value::from));
    let outcome = if failed.is_some() {
        Outcome::Negative
    } else {
        Outcome::Positive
    };
    Ok(Report::new("verify", body, outcome))
}

/// Verifies every `*.json` file in `dir`, in name order. A file that does
/// not load counts as a failure.
pub fn verify_corpus(dir: &Path, bounds: Bounds) -> Result<Report, CommandError> {
    let io = |source| CommandError::Io {
        path: dir.display().to_string(),
        source,
    };
    let mut paths: Vec<_> = std::fs::read_dir(dir)
        .map_err(io)?
        .collect::<Result<Vec<_>, _>>()
        .map_err(io)?
        .into_iter()
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    let mut rows = Vec::new();
    let mut all_pass = true;
    for path in &paths {
        let name = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
        let result = load(path, bounds).and_then(|l| checks(&l));
        let row = match result {
            Ok(checks) => {
                let failed = first_failure(&checks);
                all_pass &= failed.is_none();
                json!({
                    "file": name,
                    "status": if failed.is_some() { "fail" } else { "pass" },
                    "first_failure": failed,
                    "checks": checks_value(&checks),
                })
            }
            Err(e) => {
                all_pass = false;
                json!({"file": name, "status": "fail", "first_failure": "load", "error": e.to_string()})
            }
        };
        rows.push(row);
    }
    let mut body = Map::new();
    body.insert("corpus".into(), dir.display().to_string().into());
    body.insert("files".into(), rows.into());
    let outcome = if all_pass {
        Outcome::Positive
    } else {
        Outcome::Negative
    };
    Ok(Report::new("verify", body, outcome))
}
