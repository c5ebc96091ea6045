//! The command surface. Each command returns an [`Outcome`]: a plain-text
//! report, `key=value` records and a status.

use std::fmt;
use std::path::Path as FsPath;
use std::sync::Arc;

use noloop_core::certifier::{
    certify_no_loop, search_alpha_filtration, verify_alpha_filtration, CertifyOptions, Conclusion, Verdict,
};
use noloop_core::cleaving::{representation_infinite_witness, Diagram, RayFunctor, WitnessOutcome};
use noloop_core::module::{RightModule, Submodule};
use noloop_core::raycat::{contours as find_contours, multiplicative_basis_witness, RayCategory};
use noloop_core::resolution::projective_dimension;
use noloop_core::structure::{check_distributive, detect_penny_farthings, distributivity_witness, neighborhood as nbhd};
use noloop_core::text::{parse_algebra, parse_chain, parse_diagram, AlgebraFile, DiagramFile};
use noloop_core::{corpus, AlgebraBasis};

use crate::graph::StructureGraph;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] noloop_core::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    /// Nothing failed, but nothing was decided either.
    Inconclusive,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub text: String,
    pub records: Vec<(String, String)>,
    pub status: Status,
}

impl Outcome {
    fn new(command: &str) -> Self {
        Outcome { text: String::new(), records: vec![("command".into(), command.into())], status: Status::Pass }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn record(&mut self, key: &str, value: impl ToString) {
        self.records.push((key.to_string(), value.to_string()));
    }

    /// Lowers the status; a failure is never upgraded.
    fn mark(&mut self, s: Status) {
        self.status = match (self.status, s) {
            (Status::Fail, _) | (_, Status::Fail) => Status::Fail,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Pass,
        };
    }

    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass | Status::Inconclusive => 0,
            Status::Fail => 1,
        }
    }

    /// Line-delimited `key=value` records, ending with the status.
    pub fn records_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.records {
            out.push_str(&format!("{k}={}\n", v.replace('\n', " ")));
        }
        out.push_str(&format!("status={}\n", self.status));
        out
    }

    /// The report followed by a status line.
    pub fn render(&self) -> String {
        format!("{}status: {}\n", self.text, self.status)
    }
}

fn read(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

/// An algebra from a file path or, failing that, a bundled corpus name.
pub fn load_algebra(spec: &str) -> CliResult<AlgebraFile> {
    if FsPath::new(spec).exists() {
        return Ok(parse_algebra(&read(spec)?)?);
    }
    match corpus::algebra(spec) {
        Some(f) => Ok(f?),
        None => Err(CliError::Usage(format!("`{spec}` is neither a file nor a corpus algebra"))),
    }
}

pub fn load_diagram(spec: &str) -> CliResult<DiagramFile> {
    if FsPath::new(spec).exists() {
        return Ok(parse_diagram(&read(spec)?)?);
    }
    match corpus::diagram(spec) {
        Some(f) => Ok(f?),
        None => Err(CliError::Usage(format!("`{spec}` is neither a file nor a corpus diagram"))),
    }
}

pub fn build(f: &AlgebraFile) -> CliResult<Arc<AlgebraBasis>> {
    Ok(Arc::new(AlgebraBasis::build(&f.presentation)?))
}

fn vertex(a: &AlgebraBasis, name: &str) -> CliResult<usize> {
    Ok(a.quiver().vertex(name)?)
}

fn names(a: &AlgebraBasis, vs: impl IntoIterator<Item = usize>) -> String {
    vs.into_iter().map(|v| a.quiver().vertex_name(v).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn basis(a: &AlgebraBasis) -> Outcome {
    let mut out = Outcome::new("basis");
    let q = a.quiver();
    out.line(format!("dim: {}", a.dim()));
    out.record("dim", a.dim());
    for x in 0..q.vertex_count() {
        let row: Vec<String> = a.row_space(x).into_iter().map(|b| a.display_basis(b)).collect();
        out.line(format!("e[{}]A: dim {} [{}]", q.vertex_name(x), row.len(), row.join(" ")));
        out.record(&format!("projective-dim {}", q.vertex_name(x)), row.len());
    }
    out
}

pub fn projective(a: &Arc<AlgebraBasis>, x: &str, graph: Option<&str>) -> CliResult<Outcome> {
    let v = vertex(a, x)?;
    let p = RightModule::projective(a, v)?;
    let mut out = Outcome::new("projective");
    out.line(format!("P_{x}: dim {}", p.dim()));
    out.line(format!("basis: {}", p.labels().join(" ")));
    for (i, layer) in p.radical_layers().iter().enumerate() {
        out.line(format!("radical layer {i}: {}", names(a, layer.iter().copied())));
    }
    out.record("vertex", x);
    out.record("dim", p.dim());
    out.record("basis", p.labels().join(" "));
    let g = StructureGraph::of_module(&format!("P_{x}"), &p);
    if let Some(path) = graph {
        std::fs::write(path, g.to_dot()).map_err(|source| CliError::Io { path: path.to_string(), source })?;
        out.line(format!("graph written to {path}"));
        out.record("graph", path);
    }
    Ok(out)
}

pub fn pd(a: &Arc<AlgebraBasis>, x: &str, depth: usize) -> CliResult<Outcome> {
    let v = vertex(a, x)?;
    let r = projective_dimension(&RightModule::simple(a, v)?, depth);
    let mut out = Outcome::new("pd");
    out.line(format!("pd S_{x}: {}", r.outcome));
    for (i, d) in r.syzygy_dims.iter().enumerate() {
        out.line(format!("  Omega^{i}: {d:?}"));
    }
    match r.periodicity {
        Some((i, j)) => {
            out.line(format!("periodicity hint: Omega^{i} and Omega^{j} have identical summands"));
            out.record("periodicity", format!("{i},{j}"));
        }
        None => out.line("periodicity hint: none"),
    }
    out.line(format!("minimal: {}", r.minimal));
    out.record("vertex", x);
    out.record("pd", r.outcome);
    if !r.outcome.is_finite() {
        out.mark(Status::Inconclusive);
    }
    Ok(out)
}

pub fn raycat(a: &Arc<AlgebraBasis>, check_cancellation: bool) -> CliResult<Outcome> {
    let mut out = Outcome::new("raycat");
    if let Some(w) = multiplicative_basis_witness(a) {
        out.line(format!("standard: false ({})", w.describe(a)));
        out.record("standard", false);
        if check_cancellation {
            out.line("cancellation: not checked, the scalar classes do not form a ray category");
            out.mark(Status::Fail);
        }
        return Ok(out);
    }
    let rc = RayCategory::build(a)?;
    let q = a.quiver();
    out.line("standard: true");
    out.record("standard", true);
    out.line(format!("rays: {}", rc.rays().len()));
    out.record("rays", rc.rays().len());
    for x in 0..q.vertex_count() {
        for y in 0..q.vertex_count() {
            let h = rc.hom(x, y);
            if !h.is_empty() {
                let list: Vec<String> = h.iter().map(|&r| rc.display(r)).collect();
                out.line(format!("  {} -> {}: {}", q.vertex_name(x), q.vertex_name(y), list.join(" ")));
            }
        }
    }
    let irr: Vec<String> = rc.irreducible_rays().into_iter().map(|r| rc.display(r)).collect();
    out.line(format!("irreducible: {}", irr.join(" ")));
    let long: Vec<String> = rc.long_morphisms().into_iter().map(|r| rc.display(r)).collect();
    out.line(format!("long: {}", long.join(" ")));
    out.record("long", long.join(" "));
    if check_cancellation {
        match rc.cancellation_witness() {
            None => {
                out.line("cancellation: true");
                out.record("cancellation", true);
            }
            Some((l, m, n, k)) => {
                out.line(format!(
                    "cancellation: false ({} {} {} = {} {} {})",
                    rc.display(l),
                    rc.display(m),
                    rc.display(k),
                    rc.display(l),
                    rc.display(n),
                    rc.display(k)
                ));
                out.record("cancellation", false);
                out.mark(Status::Fail);
            }
        }
    }
    Ok(out)
}

pub fn contours(a: &AlgebraBasis, max_len: usize) -> Outcome {
    let mut out = Outcome::new("contours");
    let cs = find_contours(a, max_len);
    out.line(format!("contours up to length {max_len}: {}", cs.len()));
    for c in &cs {
        out.line(format!("  {}", c.display(a)));
    }
    out.record("contours", cs.len());
    out
}

pub fn pennyfarthing(a: &AlgebraBasis) -> Outcome {
    let mut out = Outcome::new("pennyfarthing");
    let scan = detect_penny_farthings(a);
    out.line(format!("penny-farthings: {}", scan.found.len()));
    for pf in &scan.found {
        out.line(format!("  {}", pf.display(a)));
    }
    for m in &scan.malformed {
        out.line(format!("  malformed: {m}"));
    }
    out.record("pennyfarthings", scan.found.len());
    if let [pf] = scan.found.as_slice() {
        out.record("pennyfarthing-type", pf.kind);
        out.record("pennyfarthing-base", a.quiver().vertex_name(pf.base));
        out.record("pennyfarthing-f", pf.f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "));
    }
    out
}

pub fn neighborhood(a: &AlgebraBasis, x: &str) -> CliResult<Outcome> {
    let v = vertex(a, x)?;
    let n = nbhd(a, v)?;
    let mut out = Outcome::new("neighborhood");
    out.line(n.display(a));
    match distributivity_witness(a) {
        None => out.line("distributive: true"),
        Some((s, t)) => out.line(format!(
            "distributive: false (e[{}] A e[{}] is not cyclic over a local corner)",
            a.quiver().vertex_name(s),
            a.quiver().vertex_name(t)
        )),
    }
    out.record("vertex", x);
    out.record("neighborhood", names(a, n.vertices.iter().copied()));
    out.record("distributive", check_distributive(a));
    Ok(out)
}

pub fn cleave(a: &Arc<AlgebraBasis>, file: &DiagramFile, quotient_long: Option<&str>) -> CliResult<Outcome> {
    let mut out = Outcome::new("cleave");
    let d = Diagram::from_file(file)?;
    let graph = noloop_core::cleaving::underlying_graph_type(d.quiver());
    out.line(format!("diagram type: {graph}"));
    out.record("graph-type", graph);
    if file.arrow_map.is_empty() {
        out.line("no functor given");
        return Ok(out);
    }
    if multiplicative_basis_witness(a).is_some() {
        out.line("the algebra is not standard; no ray category to map into");
        out.record("cleaving", "ill-formed");
        out.mark(Status::Fail);
        return Ok(out);
    }
    let rc = RayCategory::build(a)?;
    let checked = RayFunctor::from_file(&rc, &d, file)
        .and_then(|f| noloop_core::cleaving::cleaving_violation(&rc, &d, &f).map(|v| (f, v)));
    let f = match checked {
        Ok((f, None)) => {
            out.line("cleaving: true");
            out.record("cleaving", true);
            f
        }
        Ok((_, Some(v))) => {
            out.line(format!("cleaving: false ({}: {})", v.condition, v.detail));
            out.record("cleaving", false);
            out.mark(Status::Fail);
            return Ok(out);
        }
        Err(e @ noloop_core::Error::IllFormedFunctor(_)) => {
            out.line(format!("functor rejected: {e}"));
            out.record("cleaving", "ill-formed");
            out.mark(Status::Fail);
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
    };
    let eta = match quotient_long {
        None => None,
        Some(text) => {
            let p = a.quiver().parse_path(text)?;
            let r = rc.ray_of_path(&p).ok_or_else(|| CliError::Usage(format!("`{text}` is zero")))?;
            if !rc.is_long(r) {
                return Err(CliError::Usage(format!("`{text}` is not a long morphism")));
            }
            Some(r)
        }
    };
    match representation_infinite_witness(&rc, &d, &f, eta)? {
        WitnessOutcome::Witness { graph, quotient } => {
            let after = quotient.map_or(String::new(), |r| format!(" after setting {} to zero", rc.display(r)));
            out.line(format!("witness: cleaving diagram of Euclidean type {graph}{after}; representation-infinite"));
            out.record("witness", true);
        }
        WitnessOutcome::ImageIsQuotiented(arrow) => {
            out.line(format!("no witness: the image of {arrow} is the quotiented morphism"));
            out.record("witness", false);
            out.mark(Status::Inconclusive);
        }
        WitnessOutcome::NotCleaving(v) => {
            out.line(format!("no witness: not cleaving after the quotient ({}: {})", v.condition, v.detail));
            out.record("witness", false);
            out.mark(Status::Inconclusive);
        }
        WitnessOutcome::NotEuclidean(g) => {
            out.line(format!("no witness: diagram type {g} is not Euclidean"));
            out.record("witness", false);
            out.mark(Status::Inconclusive);
        }
    }
    Ok(out)
}

fn first_loop(a: &AlgebraBasis, v: usize) -> CliResult<usize> {
    a.quiver()
        .loops_at(v)
        .next()
        .ok_or_else(|| CliError::Usage(format!("no loop at {}", a.quiver().vertex_name(v))))
}

pub fn filtration_verify(a: &Arc<AlgebraBasis>, x: &str, chain_text: &str, depth: usize) -> CliResult<Outcome> {
    let v = vertex(a, x)?;
    let alpha = first_loop(a, v)?;
    let p = Arc::new(RightModule::projective(a, v)?);
    let chain = parse_chain(a, chain_text)?
        .iter()
        .map(|gens| Submodule::generated_by_elements(&p, gens))
        .collect::<noloop_core::Result<Vec<_>>>()?;
    let mut out = Outcome::new("filtration-verify");
    out.record("vertex", x);
    match verify_alpha_filtration(&p, alpha, &chain, depth) {
        Ok(cert) => {
            out.line("alpha-filtration: valid");
            out.line(cert.display());
            out.record("valid", true);
            out.record("verdict", cert.verdict);
            if matches!(cert.verdict, Verdict::Inconclusive(_)) {
                out.mark(Status::Inconclusive);
            }
        }
        Err(e) => {
            out.line(format!("alpha-filtration: invalid ({e})"));
            out.record("valid", false);
            out.mark(Status::Fail);
        }
    }
    Ok(out)
}

pub fn filtration_search(a: &Arc<AlgebraBasis>, x: &str, depth: usize, budget: usize) -> CliResult<Outcome> {
    let v = vertex(a, x)?;
    let alpha = first_loop(a, v)?;
    let p = Arc::new(RightModule::projective(a, v)?);
    let mut out = Outcome::new("filtration-search");
    out.record("vertex", x);
    match search_alpha_filtration(&p, alpha, depth, budget) {
        Ok(Some(chain)) => {
            let cert = verify_alpha_filtration(&p, alpha, &chain, depth)?;
            out.line("found an alpha-filtration of finite projective dimension");
            out.line(cert.display());
            out.record("found", true);
        }
        Ok(None) => {
            out.line(format!("no alpha-filtration of finite projective dimension at depth {depth}"));
            out.record("found", false);
            out.mark(Status::Inconclusive);
        }
        Err(e @ noloop_core::Error::BudgetExhausted(_)) => {
            out.line(format!("search stopped: {e}"));
            out.record("found", "budget");
            out.mark(Status::Inconclusive);
        }
        Err(e) => return Err(e.into()),
    }
    Ok(out)
}

pub fn certify(a: &Arc<AlgebraBasis>, x: &str, opts: &CertifyOptions) -> CliResult<Outcome> {
    let v = vertex(a, x)?;
    let r = certify_no_loop(a, v, opts)?;
    let mut out = Outcome::new("certify");
    out.line(r.display(a));
    out.record("vertex", x);
    out.record("loops", r.loops.len());
    out.record("pd-simple", r.pd_simple.outcome);
    if let Some((i, j)) = r.pd_simple.periodicity {
        out.record("periodicity", format!("{i},{j}"));
    }
    out.record("branch", r.branch);
    out.record("certificate", r.certificate().map_or("none".to_string(), |c| c.verdict.to_string()));
    out.record("conclusion", r.conclusion);
    out.mark(match r.conclusion {
        Conclusion::NoLoop | Conclusion::Consistent(_) => Status::Pass,
        Conclusion::Contradiction => Status::Fail,
        Conclusion::CounterexampleCandidate | Conclusion::Inconclusive => Status::Inconclusive,
    });
    Ok(out)
}
