//! Checks every `[expect]` entry of the bundled corpus.

use std::sync::Arc;

use noloop_core::certifier::{certify_no_loop, CertifyOptions};
use noloop_core::cleaving::{cleaving_violation, representation_infinite_witness, underlying_graph_type, Diagram, RayFunctor};
use noloop_core::module::RightModule;
use noloop_core::raycat::{contours, verify_multiplicative_basis, RayCategory};
use noloop_core::resolution::projective_dimension;
use noloop_core::structure::{arrows_from, check_distributive, detect_penny_farthings, minimal_loop_power, neighborhood};
use noloop_core::text::{parse_diagram, AlgebraFile, DiagramFile};
use noloop_core::{corpus, AlgebraBasis, Error, Result};

use crate::commands::{Outcome, Status};

/// Depth used for every projective dimension in the corpus.
pub const CORPUS_DEPTH: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub entry: String,
    pub key: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn join<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().collect::<Vec<_>>().join(" ")
}

/// Evaluates one algebra expectation; unknown keys yield an error string.
pub fn evaluate(a: &Arc<AlgebraBasis>, key: &str) -> Result<String> {
    let q = a.quiver();
    let (head, arg) = match key.split_once(' ') {
        Some((h, arg)) => (h, Some(arg.trim())),
        None => (key, None),
    };
    let v = || -> Result<usize> { q.vertex(arg.ok_or_else(|| Error::UnknownVertex(String::new()))?) };
    let rays = || -> Result<RayCategory> { RayCategory::build(a) };
    Ok(match head {
        "dim" => a.dim().to_string(),
        "projective-dim" => a.row_space(v()?).len().to_string(),
        "projective-basis" => RightModule::projective(a, v()?)?.labels().join(" "),
        "pd-simple" => projective_dimension(&RightModule::simple(a, v()?)?, CORPUS_DEPTH).outcome.to_string(),
        "loop-count" => a.loop_count(v()?).to_string(),
        "standard" => verify_multiplicative_basis(a).to_string(),
        "distributive" => check_distributive(a).to_string(),
        "cancellation" => rays()?.check_cancellation().to_string(),
        "long" => {
            let rc = rays()?;
            join(rc.long_morphisms().into_iter().map(|r| rc.display(r)))
        }
        "contours" => contours(a, a.bound().saturating_sub(1)).len().to_string(),
        "neighborhood" => join(neighborhood(a, v()?)?.vertices.iter().map(|&w| q.vertex_name(w).to_string())),
        "arrows-from" => join(arrows_from(a, v()?).into_iter().map(|b| q.arrow(b).name.clone())),
        "minimal-loop-power" => {
            let alpha = q.arrow_named(arg.unwrap_or_default())?;
            minimal_loop_power(a, alpha)?.map_or("none".to_string(), |r| r.exponent.to_string())
        }
        "pennyfarthings" => detect_penny_farthings(a).found.len().to_string(),
        "pennyfarthing-type" | "pennyfarthing-base" | "pennyfarthing-f" => {
            let scan = detect_penny_farthings(a);
            let [pf] = scan.found.as_slice() else {
                return Ok(format!("{} findings", scan.found.len()));
            };
            match head {
                "pennyfarthing-type" => pf.kind.to_string(),
                "pennyfarthing-base" => q.vertex_name(pf.base).to_string(),
                _ => join(pf.f.iter().map(|x| x.to_string())),
            }
        }
        "certify" => {
            let opts = CertifyOptions { depth: CORPUS_DEPTH, ..CertifyOptions::default() };
            certify_no_loop(a, v()?, &opts)?.conclusion.to_string()
        }
        _ => return Ok(format!("unknown expectation `{key}`")),
    })
}

/// Evaluates one diagram expectation against its target algebra, if any.
pub fn evaluate_diagram(file: &DiagramFile, algebra: Option<&Arc<AlgebraBasis>>, key: &str) -> Result<String> {
    let d = Diagram::from_file(file)?;
    if key == "graph-type" {
        return Ok(underlying_graph_type(d.quiver()).to_string());
    }
    let Some(a) = algebra else {
        return Ok("no target algebra".into());
    };
    let rc = RayCategory::build(a)?;
    let f = match RayFunctor::from_file(&rc, &d, file) {
        Ok(f) => f,
        Err(Error::IllFormedFunctor(_)) => return Ok("ill-formed".into()),
        Err(e) => return Err(e),
    };
    Ok(match key {
        "cleaving" => match cleaving_violation(&rc, &d, &f) {
            Ok(v) => v.is_none().to_string(),
            Err(Error::IllFormedFunctor(_)) => "ill-formed".into(),
            Err(e) => return Err(e),
        },
        "witness-after-long" => {
            // Reports the first long morphism after whose removal a witness remains.
            let found = rc
                .long_morphisms()
                .into_iter()
                .find(|&r| representation_infinite_witness(&rc, &d, &f, Some(r)).is_ok_and(|w| w.is_witness()));
            found.map_or("none".to_string(), |r| rc.display(r))
        }
        _ => format!("unknown expectation `{key}`"),
    })
}

fn algebra_checks(name: &str, f: &AlgebraFile) -> Vec<Check> {
    let check = |key: &str, expected: &str, actual: String| Check {
        entry: name.to_string(),
        key: key.to_string(),
        expected: expected.to_string(),
        actual,
    };
    let a = match AlgebraBasis::build(&f.presentation) {
        Ok(a) => Arc::new(a),
        Err(e) => return vec![check("build", "ok", e.to_string())],
    };
    f.expect
        .iter()
        .map(|(k, want)| check(k, want, evaluate(&a, k).unwrap_or_else(|e| format!("error: {e}"))))
        .collect()
}

/// Every check of the bundled corpus, in entry-name order.
pub fn run_checks() -> Vec<Check> {
    let mut checks = Vec::new();
    for (name, text) in corpus::ALGEBRAS {
        match noloop_core::text::parse_algebra(text) {
            Ok(f) => checks.extend(algebra_checks(name, &f)),
            Err(e) => checks.push(Check { entry: name.to_string(), key: "parse".into(), expected: "ok".into(), actual: e.to_string() }),
        }
    }
    for (name, text, target) in corpus::DIAGRAMS {
        let file = match parse_diagram(text) {
            Ok(f) => f,
            Err(e) => {
                checks.push(Check { entry: name.to_string(), key: "parse".into(), expected: "ok".into(), actual: e.to_string() });
                continue;
            }
        };
        let algebra = (!target.is_empty())
            .then(|| corpus::algebra(target).and_then(|f| f.ok()).and_then(|f| AlgebraBasis::build(&f.presentation).ok()))
            .flatten()
            .map(Arc::new);
        for (k, want) in &file.expect {
            let actual = evaluate_diagram(&file, algebra.as_ref(), k).unwrap_or_else(|e| format!("error: {e}"));
            checks.push(Check { entry: name.to_string(), key: k.clone(), expected: want.clone(), actual });
        }
    }
    checks
}

pub fn run() -> Outcome {
    let checks = run_checks();
    let mut out = Outcome { text: String::new(), records: vec![("command".into(), "corpus-run".into())], status: Status::Pass };
    let mut failed = 0;
    for c in &checks {
        if c.passed() {
            out.text.push_str(&format!("ok   {} {}: {}\n", c.entry, c.key, c.actual));
        } else {
            failed += 1;
            out.text.push_str(&format!("FAIL {} {}: expected `{}`, got `{}`\n", c.entry, c.key, c.expected, c.actual));
        }
    }
    out.text.push_str(&format!("{} checks, {failed} failed\n", checks.len()));
    out.records.push(("checks".into(), checks.len().to_string()));
    out.records.push(("failed".into(), failed.to_string()));
    if failed > 0 {
        out.status = Status::Fail;
    }
    out
}

pub fn list() -> Outcome {
    let mut out = Outcome { text: String::new(), records: vec![("command".into(), "corpus-list".into())], status: Status::Pass };
    for (name, _) in corpus::ALGEBRAS {
        out.text.push_str(&format!("algebra {name}\n"));
    }
    for (name, _, target) in corpus::DIAGRAMS {
        let over = if target.is_empty() { String::new() } else { format!(" over {target}") };
        out.text.push_str(&format!("diagram {name}{over}\n"));
    }
    out
}

pub fn show(name: &str) -> crate::commands::CliResult<Outcome> {
    let text = corpus::source(name)
        .or_else(|| corpus::DIAGRAMS.iter().find(|(n, _, _)| *n == name).map(|(_, t, _)| *t))
        .ok_or_else(|| crate::commands::CliError::Usage(format!("no corpus entry `{name}`")))?;
    Ok(Outcome { text: text.to_string(), records: vec![("command".into(), "corpus-show".into())], status: Status::Pass })
}
