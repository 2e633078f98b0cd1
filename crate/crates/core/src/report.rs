//! Orchestration: validate, build the requested systems, compute coranks and
//! bounds, and render the result.

use std::fmt::Write as _;

use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::io::{int_value, serialize_manifold};
use crate::ls1::{bound_c, build_ls1};
use crate::ls2::{bound_c_prime, build_ls2};
use crate::manifold::{apply_basis_change, validate, ManifoldError, ManifoldSpec, ValidatedManifold};
use crate::random::random_basis_change;
use crate::system::LinearSystem;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Entry bound used for the basis changes drawn by the self-test.
const SELF_TEST_SIZE_BOUND: u32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Systems {
    #[default]
    Both,
    Ls1Only,
    Ls2Only,
}

impl Systems {
    fn ls1(self) -> bool {
        self != Systems::Ls2Only
    }

    fn ls2(self) -> bool {
        self != Systems::Ls1Only
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RunOptions {
    pub systems: Systems,
    /// Number of random basis changes to check corank invariance against.
    pub self_test: usize,
    pub seed: u64,
    /// Keep the assembled systems in the report for dumping.
    pub keep_systems: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ObstructedC,
    ObstructedCPrime,
    Inconclusive,
    Ls2NotApplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::ObstructedC => "OBSTRUCTED_C",
            Verdict::ObstructedCPrime => "OBSTRUCTED_C_PRIME",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::Ls2NotApplicable => "LS2_NOT_APPLICABLE",
        }
    }

    pub fn is_obstructed(self) -> bool {
        matches!(self, Verdict::ObstructedC | Verdict::ObstructedCPrime)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemSummary {
    pub variables: usize,
    pub equations: usize,
    pub rank: usize,
    pub corank: i64,
    pub bound: BigRational,
}

impl SystemSummary {
    fn new(ls: &LinearSystem, bound: BigRational) -> Self {
        let rank = ls.rank();
        SystemSummary {
            variables: ls.num_variables(),
            equations: ls.num_equations(),
            rank,
            corank: ls.num_variables() as i64 - rank as i64,
            bound,
        }
    }

    pub fn obstructed(&self) -> bool {
        self.corank <= 0
    }

    fn to_json(&self) -> Value {
        json!({
            "variables": self.variables,
            "equations": self.equations,
            "rank": self.rank,
            "corank": self.corank,
            "lemma_bound": self.bound.to_string(),
            "obstructed": self.obstructed(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfTest {
    pub trials: usize,
    pub seed: u64,
    /// Seeds of basis changes under which a corank changed.
    pub failures: Vec<u64>,
}

impl SelfTest {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub version: &'static str,
    pub input_digest: String,
    pub dimension: usize,
    pub blocks: usize,
    pub gluing_tori: usize,
    pub boundary_tori: usize,
    pub ls1: Option<SystemSummary>,
    pub ls2: Option<SystemSummary>,
    pub verdict: Verdict,
    pub self_test: Option<SelfTest>,
    pub notes: Vec<String>,
    pub ls1_system: Option<LinearSystem>,
    pub ls2_system: Option<LinearSystem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RunError {
    #[error(transparent)]
    Invalid(#[from] ManifoldError),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl RunError {
    pub fn code(&self) -> &'static str {
        match self {
            RunError::Invalid(e) => e.code(),
            RunError::Internal(_) => "InternalError",
        }
    }
}

/// SHA-256 of the canonical serialization of `spec`.
pub fn input_digest(spec: &ManifoldSpec) -> String {
    let digest = Sha256::digest(serialize_manifold(spec).as_bytes());
    format!("sha256:{digest:x}")
}

fn coranks(m: &ValidatedManifold, systems: Systems) -> (Option<i64>, Option<i64>) {
    let c = systems.ls1().then(|| build_ls1(m).corank());
    let c_prime =
        if systems.ls2() && m.dimension() > 3 { Some(build_ls2(m).expect("dimension checked").corank()) } else { None };
    (c, c_prime)
}

fn self_test(m: &ValidatedManifold, options: &RunOptions) -> Result<SelfTest, RunError> {
    let reference = coranks(m, options.systems);
    let mut failures = Vec::new();
    for t in 0..options.self_test {
        let seed = options.seed.wrapping_add(t as u64);
        let bc = random_basis_change(m, seed, SELF_TEST_SIZE_BOUND);
        let changed =
            apply_basis_change(m, &bc).map_err(|e| RunError::Internal(format!("basis change {seed} rejected: {e}")))?;
        if coranks(&changed, options.systems) != reference {
            failures.push(seed);
        }
    }
    Ok(SelfTest { trials: options.self_test, seed: options.seed, failures })
}

pub fn run(spec: &ManifoldSpec, options: &RunOptions) -> Result<ObstructionReport, RunError> {
    let m = validate(spec)?;
    let n = m.dimension();
    let (nv, nw, nwd) = (m.num_blocks(), m.num_gluing_tori(), m.num_boundary_tori());

    let ls1_system = options.systems.ls1().then(|| build_ls1(&m));
    let ls1 = ls1_system.as_ref().map(|ls| SystemSummary::new(ls, bound_c(n, nv, nw, nwd)));

    let ls2_applicable = n > 3;
    let ls2_system = (options.systems.ls2() && ls2_applicable).then(|| build_ls2(&m).expect("dimension checked"));
    let ls2 = ls2_system.as_ref().map(|ls| SystemSummary::new(ls, bound_c_prime(n, nv, nw)));

    for (name, summary) in [("c", &ls1), ("c'", &ls2)] {
        if let Some(s) = summary {
            if BigRational::from_integer(s.corank.into()) < s.bound {
                return Err(RunError::Internal(format!("{name} = {} is below its lower bound {}", s.corank, s.bound)));
            }
        }
    }

    let verdict = if ls1.as_ref().is_some_and(SystemSummary::obstructed) {
        Verdict::ObstructedC
    } else if ls2.as_ref().is_some_and(SystemSummary::obstructed) {
        Verdict::ObstructedCPrime
    } else if options.systems.ls2() && !ls2_applicable {
        Verdict::Ls2NotApplicable
    } else {
        Verdict::Inconclusive
    };

    let self_test = if options.self_test > 0 { Some(self_test(&m, options)?) } else { None };

    Ok(ObstructionReport {
        version: VERSION,
        input_digest: input_digest(spec),
        dimension: n,
        blocks: nv,
        gluing_tori: nw,
        boundary_tori: nwd,
        ls1,
        ls2,
        verdict,
        self_test,
        notes: spec.notes.clone(),
        ls1_system: if options.keep_systems { ls1_system } else { None },
        ls2_system: if options.keep_systems { ls2_system } else { None },
    })
}

impl ObstructionReport {
    pub fn to_json(&self) -> Value {
        json!({
            "tool": "gmcheck",
            "version": self.version,
            "input_digest": self.input_digest,
            "dimension": self.dimension,
            "blocks": self.blocks,
            "gluing_tori": self.gluing_tori,
            "boundary_tori": self.boundary_tori,
            "ls1": self.ls1.as_ref().map(SystemSummary::to_json),
            "ls2": self.ls2.as_ref().map(SystemSummary::to_json),
            "ls2_applicable": self.dimension > 3,
            "verdict": self.verdict.as_str(),
            "self_test": self.self_test.as_ref().map(|t| json!({
                "trials": t.trials,
                "seed": t.seed,
                "passed": t.passed(),
                "failures": t.failures,
            })),
            "notes": self.notes,
        })
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "gmcheck {}", self.version);
        let _ = writeln!(out, "input      {}", self.input_digest);
        let _ = writeln!(out, "dimension  {}", self.dimension);
        let _ = writeln!(
            out,
            "blocks     {}   gluing tori {}   boundary tori {}",
            self.blocks, self.gluing_tori, self.boundary_tori
        );
        let line = |name: &str, inv: &str, s: &SystemSummary| {
            format!(
                "{name}  variables {:>4}  equations {:>4}  rank {:>4}  {inv} = {:<4} bound {}",
                s.variables, s.equations, s.rank, s.corank, s.bound
            )
        };
        if let Some(s) = &self.ls1 {
            let _ = writeln!(out, "{}", line("LS1", "c ", s));
        }
        if let Some(s) = &self.ls2 {
            let _ = writeln!(out, "{}", line("LS2", "c'", s));
        } else if self.dimension <= 3 {
            let _ = writeln!(out, "LS2  not applicable in dimension {}", self.dimension);
        }
        let meaning = match self.verdict {
            Verdict::ObstructedC => "c <= 0, no geometrization exists",
            Verdict::ObstructedCPrime => "c' <= 0, no geometrization exists",
            Verdict::Inconclusive => "no obstruction detected",
            Verdict::Ls2NotApplicable => "c > 0 and the second invariant needs dimension > 3",
        };
        let _ = writeln!(out, "verdict    {} ({meaning})", self.verdict.as_str());
        if let Some(t) = &self.self_test {
            let status = if t.passed() { "passed" } else { "FAILED" };
            let _ = writeln!(
                out,
                "self-test  {status}: {} random basis changes from seed {}, {} failures",
                t.trials,
                t.seed,
                t.failures.len()
            );
        }
        for note in &self.notes {
            let _ = writeln!(out, "note       {note}");
        }
        out
    }
}

/// JSON dump of a system with named columns and tagged rows.
pub fn system_to_json(name: &str, ls: &LinearSystem) -> Value {
    let rows: Vec<Value> = ls
        .rows
        .iter()
        .enumerate()
        .map(|(i, tag)| {
            json!({
                "tag": tag.to_string(),
                "coefficients": ls.coefficients.row(i).iter().map(int_value).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "system": name,
        "variables": ls.variables.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "rank": ls.rank(),
        "rows": rows,
    })
}
