//! Problem files: JSON documents with every number written as a string in
//! the exact rational grammar (small integer metadata may also be a JSON
//! integer). Unknown keys are rejected.

use std::collections::HashSet;
use std::fmt;

use atiyah_core::atiyah::{default_degree_bound, AtiyahError, Amp1Problem, DEFAULT_JET_ORDER};
use atiyah_core::clean::{Chart, ZeroLocusWitness};
use atiyah_core::connection::ConnectionTriple;
use atiyah_core::derived::{
    build_amp1, DerivedError, DerivedProblem, Intersection, IntersectionWitness, SubmanifoldParam,
};
use atiyah_core::graded::Section;
use atiyah_core::ring::{parse_poly, parse_rational, ParseError, Poly, Rational};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum ProblemError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {error}")]
    Expression { path: String, error: ParseError },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
    #[error("{0}")]
    Amp1(#[from] AtiyahError),
    #[error("{0}")]
    Derived(#[from] DerivedError),
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ProblemError {
    ProblemError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

#[derive(Deserialize, Debug, Clone)]
#[serde(untagged)]
enum Count {
    Int(u64),
    Text(String),
}

impl Count {
    fn get(&self, path: &str) -> Result<u32, ProblemError> {
        let value = match self {
            Count::Int(v) => *v,
            Count::Text(t) => t
                .trim()
                .parse()
                .map_err(|_| invalid(path, format!("expected a non-negative integer, found {t:?}")))?,
        };
        u32::try_from(value).map_err(|_| invalid(path, "integer too large"))
    }
}

#[derive(Deserialize, Debug)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum RawProblem {
    Amp1(RawAmp1),
    Derived(RawDerived),
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawAmp1 {
    #[serde(default)]
    description: Option<String>,
    vars: Vec<String>,
    fiber_rank: Count,
    section: Vec<String>,
    #[serde(default)]
    points: Vec<Vec<String>>,
    #[serde(default)]
    zero_locus: Option<RawZeroLocus>,
    #[serde(default)]
    connection: Option<RawConnection>,
    #[serde(default)]
    degree_bound: Option<Count>,
    #[serde(default)]
    jet_order: Option<Count>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawZeroLocus {
    #[serde(default)]
    charts: Vec<RawChart>,
    #[serde(default)]
    declared_singular: bool,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawChart {
    base_point: Vec<String>,
    param_vars: Vec<String>,
    param_map: Vec<String>,
    param_point: Vec<String>,
    claimed_dim: Count,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawConnection {
    #[serde(default)]
    gamma_m: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    gamma_e: Option<Vec<Vec<Vec<String>>>>,
    #[serde(default)]
    beta: Option<Vec<Vec<Vec<Vec<String>>>>>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawDerived {
    #[serde(default)]
    description: Option<String>,
    ambient_dim: Count,
    x: RawParam,
    y: RawParam,
    #[serde(default)]
    intersections: Vec<RawIntersection>,
    #[serde(default)]
    degree_bound: Option<Count>,
    #[serde(default)]
    jet_order: Option<Count>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawParam {
    param_vars: Vec<String>,
    map: Vec<String>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct RawIntersection {
    x_params: Vec<String>,
    y_params: Vec<String>,
    #[serde(default)]
    claimed_dim: Option<Count>,
    #[serde(default = "yes")]
    manifold: bool,
}

fn yes() -> bool {
    true
}

/// A validated amp1 problem together with its variable names and optional
/// zero-locus witness.
#[derive(Clone, Debug)]
pub struct Amp1File {
    pub description: Option<String>,
    pub vars: Vec<String>,
    pub problem: Amp1Problem,
    pub witness: Option<ZeroLocusWitness>,
}

#[derive(Clone, Debug)]
pub struct DerivedFile {
    pub description: Option<String>,
    pub x_vars: Vec<String>,
    pub y_vars: Vec<String>,
    pub problem: DerivedProblem,
    /// `None` if any intersection lacks a claimed dimension.
    pub witness: Option<Vec<IntersectionWitness>>,
    /// The built amplitude +1 model and its variable names `(t, u)`.
    pub amp1: Amp1Problem,
    pub amp1_vars: Vec<String>,
}

#[derive(Clone, Debug)]
pub enum ProblemFile {
    Amp1(Amp1File),
    Derived(DerivedFile),
}

impl ProblemFile {
    pub fn kind(&self) -> &'static str {
        match self {
            ProblemFile::Amp1(_) => "amp1",
            ProblemFile::Derived(_) => "derived",
        }
    }

    /// The problem `decide` runs on, with its variable names.
    pub fn amp1(&self) -> (&Amp1Problem, &[String]) {
        match self {
            ProblemFile::Amp1(f) => (&f.problem, &f.vars),
            ProblemFile::Derived(f) => (&f.amp1, &f.amp1_vars),
        }
    }

    pub fn amp1_mut(&mut self) -> &mut Amp1Problem {
        match self {
            ProblemFile::Amp1(f) => &mut f.problem,
            ProblemFile::Derived(f) => &mut f.amp1,
        }
    }

    pub fn description(&self) -> Option<&str> {
        match self {
            ProblemFile::Amp1(f) => f.description.as_deref(),
            ProblemFile::Derived(f) => f.description.as_deref(),
        }
    }
}

fn check_names(path: &str, names: &[String]) -> Result<(), ProblemError> {
    let mut seen = HashSet::new();
    for (i, name) in names.iter().enumerate() {
        let ok = name.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_alphanumeric() || c == '_');
        if !ok {
            return Err(invalid(format!("{path}[{i}]"), format!("{name:?} is not an identifier")));
        }
        if !seen.insert(name) {
            return Err(invalid(format!("{path}[{i}]"), format!("duplicate variable {name:?}")));
        }
    }
    Ok(())
}

fn poly(path: String, text: &str, vars: &[String]) -> Result<Poly, ProblemError> {
    parse_poly(text, vars).map_err(|error| ProblemError::Expression { path, error })
}

fn polys(path: &str, texts: &[String], vars: &[String]) -> Result<Vec<Poly>, ProblemError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| poly(format!("{path}[{i}]"), t, vars))
        .collect()
}

fn rationals(path: &str, texts: &[String], expected: usize) -> Result<Vec<Rational>, ProblemError> {
    if texts.len() != expected {
        return Err(invalid(path, format!("expected {expected} numbers, found {}", texts.len())));
    }
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| {
            parse_rational(t).map_err(|error| ProblemError::Expression {
                path: format!("{path}[{i}]"),
                error,
            })
        })
        .collect()
}

fn dense<T>(path: &str, v: &[T], expected: usize) -> Result<(), ProblemError> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(invalid(path, format!("expected {expected} entries, found {}", v.len())))
    }
}

fn connection(raw: &RawConnection, vars: &[String], m: usize) -> Result<ConnectionTriple, ProblemError> {
    let n = vars.len();
    let mut t = ConnectionTriple::trivial(n, m);
    if let Some(g) = &raw.gamma_m {
        dense("connection.gamma_m", g, n)?;
        for (i, gi) in g.iter().enumerate() {
            dense(&format!("connection.gamma_m[{i}]"), gi, n)?;
            for (j, gij) in gi.iter().enumerate() {
                let path = format!("connection.gamma_m[{i}][{j}]");
                dense(&path, gij, n)?;
                for (k, p) in polys(&path, gij, vars)?.into_iter().enumerate() {
                    *t.gamma_m_mut(i, j, k) = p;
                }
            }
        }
    }
    if let Some(g) = &raw.gamma_e {
        dense("connection.gamma_e", g, n)?;
        for (i, gi) in g.iter().enumerate() {
            dense(&format!("connection.gamma_e[{i}]"), gi, m)?;
            for (a, gia) in gi.iter().enumerate() {
                let path = format!("connection.gamma_e[{i}][{a}]");
                dense(&path, gia, m)?;
                for (k, p) in polys(&path, gia, vars)?.into_iter().enumerate() {
                    *t.gamma_e_mut(i, a, k) = p;
                }
            }
        }
    }
    if let Some(b) = &raw.beta {
        dense("connection.beta", b, n)?;
        for (i, bi) in b.iter().enumerate() {
            dense(&format!("connection.beta[{i}]"), bi, n)?;
            for (j, bij) in bi.iter().enumerate() {
                dense(&format!("connection.beta[{i}][{j}]"), bij, m)?;
                for (a, bija) in bij.iter().enumerate() {
                    let path = format!("connection.beta[{i}][{j}][{a}]");
                    dense(&path, bija, m)?;
                    for (k, p) in polys(&path, bija, vars)?.into_iter().enumerate() {
                        *t.beta_mut(i, j, a, k) = p;
                    }
                }
            }
        }
    }
    Ok(t)
}

fn optional(c: &Option<Count>, path: &str) -> Result<Option<u32>, ProblemError> {
    c.as_ref().map(|c| c.get(path)).transpose()
}

fn load_amp1(raw: RawAmp1) -> Result<Amp1File, ProblemError> {
    check_names("vars", &raw.vars)?;
    let n = raw.vars.len();
    let m = raw.fiber_rank.get("fiber_rank")? as usize;
    dense("section", &raw.section, m)?;
    let section = Section::new(n, polys("section", &raw.section, &raw.vars)?).expect("shape");
    let points = raw
        .points
        .iter()
        .enumerate()
        .map(|(i, p)| rationals(&format!("points[{i}]"), p, n))
        .collect::<Result<Vec<_>, _>>()?;
    let connection = raw
        .connection
        .as_ref()
        .map(|c| connection(c, &raw.vars, m))
        .transpose()?;
    let witness = match &raw.zero_locus {
        None => None,
        Some(z) => {
            let mut charts = Vec::new();
            for (ci, c) in z.charts.iter().enumerate() {
                let path = format!("zero_locus.charts[{ci}]");
                check_names(&format!("{path}.param_vars"), &c.param_vars)?;
                let k = c.param_vars.len();
                dense(&format!("{path}.param_map"), &c.param_map, n)?;
                charts.push(Chart {
                    base_point: rationals(&format!("{path}.base_point"), &c.base_point, n)?,
                    param_map: polys(&format!("{path}.param_map"), &c.param_map, &c.param_vars)?,
                    param_point: rationals(&format!("{path}.param_point"), &c.param_point, k)?,
                    claimed_dim: c.claimed_dim.get(&format!("{path}.claimed_dim"))? as usize,
                });
            }
            Some(ZeroLocusWitness {
                points: points.clone(),
                charts,
                declared_singular: z.declared_singular,
            })
        }
    };
    let problem = Amp1Problem::with_options(
        section,
        connection,
        points,
        optional(&raw.degree_bound, "degree_bound")?,
        optional(&raw.jet_order, "jet_order")?,
    )?;
    Ok(Amp1File {
        description: raw.description,
        vars: raw.vars,
        problem,
        witness,
    })
}

fn load_derived(raw: RawDerived) -> Result<DerivedFile, ProblemError> {
    let d = raw.ambient_dim.get("ambient_dim")? as usize;
    let mut params = Vec::new();
    for (name, p) in [("x", &raw.x), ("y", &raw.y)] {
        check_names(&format!("{name}.param_vars"), &p.param_vars)?;
        dense(&format!("{name}.map"), &p.map, d)?;
        let map = polys(&format!("{name}.map"), &p.map, &p.param_vars)?;
        params.push(SubmanifoldParam::new(d, p.param_vars.len(), map)?);
    }
    let y = params.pop().expect("two maps");
    let x = params.pop().expect("two maps");
    let mut intersections = Vec::new();
    let mut witness = Some(Vec::new());
    for (i, ix) in raw.intersections.iter().enumerate() {
        let path = format!("intersections[{i}]");
        intersections.push(Intersection {
            x_params: rationals(&format!("{path}.x_params"), &ix.x_params, x.nparams)?,
            y_params: rationals(&format!("{path}.y_params"), &ix.y_params, y.nparams)?,
        });
        match (&ix.claimed_dim, witness.as_mut()) {
            (Some(c), Some(w)) => w.push(IntersectionWitness {
                claimed_dim: c.get(&format!("{path}.claimed_dim"))? as usize,
                manifold: ix.manifold,
            }),
            _ => witness = None,
        }
    }
    let problem = DerivedProblem::new(x, y, intersections)?;
    let built = build_amp1(&problem)?;
    let section = built.section.clone();
    let amp1 = Amp1Problem::with_options(
        section,
        None,
        built.zero_points,
        Some(optional(&raw.degree_bound, "degree_bound")?.unwrap_or_else(|| default_degree_bound(&built.section))),
        Some(optional(&raw.jet_order, "jet_order")?.unwrap_or(DEFAULT_JET_ORDER)),
    )?;
    let clash = raw.x.param_vars.iter().any(|v| raw.y.param_vars.contains(v));
    let amp1_vars = if clash {
        let tag = |prefix: &str, vs: &[String]| -> Vec<String> {
            vs.iter().map(|v| format!("{prefix}_{v}")).collect()
        };
        let mut out = tag("x", &raw.x.param_vars);
        out.extend(tag("y", &raw.y.param_vars));
        out
    } else {
        raw.x.param_vars.iter().chain(&raw.y.param_vars).cloned().collect()
    };
    Ok(DerivedFile {
        description: raw.description,
        x_vars: raw.x.param_vars,
        y_vars: raw.y.param_vars,
        problem,
        witness,
        amp1,
        amp1_vars,
    })
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    match serde_json::from_str::<RawProblem>(text)? {
        RawProblem::Amp1(raw) => Ok(ProblemFile::Amp1(load_amp1(raw)?)),
        RawProblem::Derived(raw) => Ok(ProblemFile::Derived(load_derived(raw)?)),
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, _) = self.amp1();
        write!(f, "{} problem, n = {}, m = {}", self.kind(), p.n(), p.m())
    }
}
