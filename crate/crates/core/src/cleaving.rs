//! Diagrams, ray functors, the cleaving conditions and Euclidean recognition.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::{Path, Quiver};
use crate::raycat::RayCategory;
use crate::text::DiagramFile;

/// A finite category given by an acyclic quiver, zero relations and
/// commutativity. Parallel nonzero paths are one morphism.
#[derive(Clone, Debug)]
pub struct Diagram {
    quiver: Quiver,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Class of each path; `ZERO` is the absorbing class.
    class: Vec<usize>,
    /// Morphism ids with their representative path.
    morphisms: Vec<Path>,
    by_pair: BTreeMap<(usize, usize), usize>,
}

const ZERO: usize = usize::MAX;

impl Diagram {
    pub fn new(quiver: Quiver, zero: &[Path], equal: &[(Path, Path)]) -> Result<Self> {
        let paths = enumerate_paths(&quiver)?;
        let index: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        for (l, r) in equal {
            if l.source() != r.source() || l.target() != r.target() {
                return Err(Error::MalformedRelation(format!("{l} and {r} are not parallel")));
            }
        }
        // Zero is absorbing: an equality between a zero and a nonzero path
        // kills every path through that pair, until nothing changes.
        let mut forced: Vec<(usize, usize)> = Vec::new();
        let is_zero = |p: &Path, forced: &[(usize, usize)]| {
            zero.iter().any(|z| p.contains_subpath(z))
                || (0..p.len()).any(|i| {
                    (i + 1..=p.len()).any(|j| {
                        let s = p.subpath(&quiver, i, j);
                        forced.contains(&(s.source(), s.target()))
                    })
                })
        };
        loop {
            let before = forced.len();
            for (l, r) in equal {
                if is_zero(l, &forced) != is_zero(r, &forced) && !forced.contains(&(l.source(), l.target())) {
                    forced.push((l.source(), l.target()));
                }
            }
            if forced.len() == before {
                break;
            }
        }
        let zero_path: Vec<bool> = paths.iter().map(|p| !p.is_trivial() && is_zero(p, &forced)).collect();
        let mut class = vec![ZERO; paths.len()];
        let mut morphisms = Vec::new();
        let mut by_pair = BTreeMap::new();
        for (i, p) in paths.iter().enumerate() {
            let pair = (p.source(), p.target());
            if zero_path[i] {
                continue;
            }
            let id = *by_pair.entry(pair).or_insert_with(|| {
                morphisms.push(p.clone());
                morphisms.len() - 1
            });
            class[i] = id;
        }
        Ok(Diagram { quiver, paths, index, class, morphisms, by_pair })
    }

    pub fn from_file(f: &DiagramFile) -> Result<Self> {
        Diagram::new(f.quiver.clone(), &f.zero, &f.equal)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    /// Nonzero morphisms, each with a representative path.
    pub fn morphisms(&self) -> &[Path] {
        &self.morphisms
    }

    pub fn morphism(&self, source: usize, target: usize) -> Option<usize> {
        self.by_pair.get(&(source, target)).copied()
    }

    pub fn class_of(&self, p: &Path) -> Option<usize> {
        let c = self.class[*self.index.get(p)?];
        (c != ZERO).then_some(c)
    }

    /// An arrow is irreducible when no longer nonzero path runs parallel to it.
    pub fn is_irreducible(&self, m: usize) -> bool {
        !self.morphisms[m].is_trivial()
            && self.paths.iter().enumerate().all(|(i, p)| self.class[i] != m || p.len() <= 1)
    }

    /// Composite of two morphisms; `None` is zero.
    pub fn compose(&self, m: usize, n: usize) -> Option<usize> {
        let p = self.morphisms[m].then(&self.morphisms[n])?;
        self.class_of(&p)
    }
}

fn enumerate_paths(q: &Quiver) -> Result<Vec<Path>> {
    // Kahn's algorithm for acyclicity
    let n = q.vertex_count();
    let mut indeg = vec![0usize; n];
    for a in q.arrows() {
        indeg[a.target] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for a in q.arrows_from(v) {
            let t = q.arrow(a).target;
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.push(t);
            }
        }
    }
    if seen != n {
        return Err(Error::CyclicDiagram);
    }
    let mut paths: Vec<Path> = (0..n).map(Path::trivial).collect();
    let mut frontier = paths.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for a in q.arrows_from(p.target()) {
                let e = q.path(&[a]).expect("arrow");
                next.push(p.then(&e).expect("composable"));
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    paths.sort();
    Ok(paths)
}

/// Vertex and arrow images of a functor from a diagram to a ray category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayFunctor {
    pub vertices: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl RayFunctor {
    /// Resolves the textual functor of a diagram file against `rc`.
    pub fn from_file(rc: &RayCategory, d: &Diagram, f: &DiagramFile) -> Result<Self> {
        let a = rc.algebra();
        let q = a.quiver();
        let dq = d.quiver();
        let mut vertices: Vec<Option<usize>> = vec![None; dq.vertex_count()];
        let assign = |v: usize, w: usize, vertices: &mut Vec<Option<usize>>| -> Result<()> {
            match vertices[v] {
                Some(old) if old != w => Err(Error::IllFormedFunctor(format!(
                    "vertex {} sent to both {} and {}",
                    dq.vertex_name(v),
                    q.vertex_name(old),
                    q.vertex_name(w)
                ))),
                _ => {
                    vertices[v] = Some(w);
                    Ok(())
                }
            }
        };
        for (dv, av) in &f.vertex_map {
            assign(dq.vertex(dv)?, q.vertex(av)?, &mut vertices)?;
        }
        let mut arrows = vec![None; dq.arrows().len()];
        for (da, target) in &f.arrow_map {
            let i = dq.arrow_named(da)?;
            let p = q.parse_path(target)?;
            let r = rc.ray_of_path(&p).ok_or_else(|| Error::IllFormedFunctor(format!("{da} is sent to zero")))?;
            let arrow = dq.arrow(i);
            assign(arrow.source, rc.source(r), &mut vertices)?;
            assign(arrow.target, rc.target(r), &mut vertices)?;
            arrows[i] = Some(r);
        }
        let arrows = arrows
            .into_iter()
            .enumerate()
            .map(|(i, r)| r.ok_or_else(|| Error::IllFormedFunctor(format!("no image for {}", dq.arrow(i).name))))
            .collect::<Result<Vec<_>>>()?;
        let vertices = vertices
            .into_iter()
            .enumerate()
            .map(|(v, w)| w.ok_or_else(|| Error::IllFormedFunctor(format!("no image for {}", dq.vertex_name(v)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(RayFunctor { vertices, arrows })
    }

    fn image(&self, rc: &RayCategory, p: &Path) -> Option<usize> {
        if p.is_trivial() {
            return Some(rc.identity(self.vertices[p.source()]));
        }
        let rays: Vec<usize> = p.arrows().iter().map(|&a| self.arrows[a]).collect();
        rc.compose_all(&rays)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// A nonzero morphism goes to zero.
    ReflectsZero,
    /// `F(μ) = F(η)·ρ` without `μ = η·κ`.
    FactorsAfter,
    /// `F(μ) = ρ·F(η)` without `μ = κ·η`.
    FactorsBefore,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::ReflectsZero => "zero reflection",
            Condition::FactorsAfter => "factorization through an irreducible (same source)",
            Condition::FactorsBefore => "factorization through an irreducible (same target)",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub detail: String,
}

/// Images of all morphisms, after checking that `F` is a functor.
fn morphism_images(rc: &RayCategory, d: &Diagram, f: &RayFunctor) -> Result<Vec<Option<usize>>> {
    let dq = d.quiver();
    if f.vertices.len() != dq.vertex_count() || f.arrows.len() != dq.arrows().len() {
        return Err(Error::IllFormedFunctor("functor does not cover the diagram".into()));
    }
    for (i, &r) in f.arrows.iter().enumerate() {
        let arrow = dq.arrow(i);
        if !rc.is_ray(r) {
            return Err(Error::IllFormedFunctor(format!("{} is sent to zero", arrow.name)));
        }
        if rc.source(r) != f.vertices[arrow.source] || rc.target(r) != f.vertices[arrow.target] {
            return Err(Error::IllFormedFunctor(format!("endpoints of {} do not match", arrow.name)));
        }
    }
    let mut images: Vec<Option<Option<usize>>> = vec![None; d.morphisms.len()];
    for (i, p) in d.paths.iter().enumerate() {
        let image = f.image(rc, p);
        let c = d.class[i];
        if c == ZERO {
            if let Some(r) = image {
                return Err(Error::IllFormedFunctor(format!(
                    "zero path {} goes to {}",
                    dq.display_path(p),
                    rc.display(r)
                )));
            }
            continue;
        }
        match images[c] {
            None => images[c] = Some(image),
            Some(prev) if prev != image => {
                return Err(Error::IllFormedFunctor(format!(
                    "parallel paths {} and {} have different images",
                    dq.display_path(&d.morphisms[c]),
                    dq.display_path(p)
                )));
            }
            _ => {}
        }
    }
    Ok(images.into_iter().map(|i| i.expect("every class has a path")).collect())
}

/// Checks both cleaving conditions and their duals; `Ok(None)` means cleaving.
pub fn cleaving_violation(rc: &RayCategory, d: &Diagram, f: &RayFunctor) -> Result<Option<Violation>> {
    let images = morphism_images(rc, d, f)?;
    let dq = d.quiver();
    let name = |m: usize| dq.display_path(&d.morphisms[m]);
    for (m, image) in images.iter().enumerate() {
        if image.is_none() {
            return Ok(Some(Violation { condition: Condition::ReflectsZero, detail: format!("{} goes to zero", name(m)) }));
        }
    }
    let image = |m: usize| images[m].expect("checked");
    let count = d.morphisms.len();
    for eta in (0..count).filter(|&e| d.is_irreducible(e)) {
        let (y, z) = (d.morphisms[eta].source(), d.morphisms[eta].target());
        for mu in 0..count {
            let rep = &d.morphisms[mu];
            if rep.source() == y {
                let z2 = rep.target();
                let through = rc.hom(f.vertices[z], f.vertices[z2]).into_iter().find(|&rho| rc.compose(image(eta), rho) == Some(image(mu)));
                let lifts = || d.morphism(z, z2).is_some_and(|k| d.compose(eta, k) == Some(mu));
                if let Some(rho) = through {
                    if !lifts() {
                        return Ok(Some(Violation {
                            condition: Condition::FactorsAfter,
                            detail: format!("F({}) = F({})·{} but {} does not factor", name(mu), name(eta), rc.display(rho), name(mu)),
                        }));
                    }
                }
            }
            if rep.target() == z {
                let y2 = rep.source();
                let through = rc.hom(f.vertices[y2], f.vertices[y]).into_iter().find(|&rho| rc.compose(rho, image(eta)) == Some(image(mu)));
                let lifts = || d.morphism(y2, y).is_some_and(|k| d.compose(k, eta) == Some(mu));
                if let Some(rho) = through {
                    if !lifts() {
                        return Ok(Some(Violation {
                            condition: Condition::FactorsBefore,
                            detail: format!("F({}) = {}·F({}) but {} does not factor", name(mu), rc.display(rho), name(eta), name(mu)),
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn verify_cleaving(rc: &RayCategory, d: &Diagram, f: &RayFunctor) -> Result<bool> {
    Ok(cleaving_violation(rc, d, f)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphType {
    Dynkin(Family, usize),
    /// Extended Dynkin type, indexed as usual: `Ã_n` has `n + 1` vertices.
    Euclidean(Family, usize),
    Other,
}

impl GraphType {
    pub fn is_euclidean(self) -> bool {
        matches!(self, GraphType::Euclidean(..))
    }
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphType::Dynkin(fam, n) => write!(f, "{fam:?}{n}"),
            GraphType::Euclidean(fam, n) => write!(f, "~{fam:?}{n}"),
            GraphType::Other => write!(f, "other"),
        }
    }
}

/// Classifies the underlying undirected multigraph of `q`.
pub fn underlying_graph_type(q: &Quiver) -> GraphType {
    let n = q.vertex_count();
    let edges: Vec<(usize, usize)> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
    if n == 0 || edges.iter().any(|&(s, t)| s == t) || !connected(n, &edges) {
        return GraphType::Other;
    }
    let mut degree = vec![0usize; n];
    for &(s, t) in &edges {
        degree[s] += 1;
        degree[t] += 1;
    }
    if edges.len() == n {
        // connected with one cycle: Euclidean only if the cycle is everything
        return if degree.iter().all(|&d| d == 2) { GraphType::Euclidean(Family::A, n - 1) } else { GraphType::Other };
    }
    if edges.len() != n - 1 {
        return GraphType::Other;
    }
    let branches: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
    match branches.as_slice() {
        [] => GraphType::Dynkin(Family::A, n),
        [c] => {
            let mut arms = arm_lengths(n, &edges, *c);
            arms.sort_unstable();
            match (degree[*c], arms.as_slice()) {
                (4, [1, 1, 1, 1]) => GraphType::Euclidean(Family::D, 4),
                (3, [1, 1, _]) => GraphType::Dynkin(Family::D, n),
                (3, [1, 2, 2]) => GraphType::Dynkin(Family::E, 6),
                (3, [1, 2, 3]) => GraphType::Dynkin(Family::E, 7),
                (3, [1, 2, 4]) => GraphType::Dynkin(Family::E, 8),
                (3, [2, 2, 2]) => GraphType::Euclidean(Family::E, 6),
                (3, [1, 3, 3]) => GraphType::Euclidean(Family::E, 7),
                (3, [1, 2, 5]) => GraphType::Euclidean(Family::E, 8),
                _ => GraphType::Other,
            }
        }
        [b, c] if degree[*b] == 3 && degree[*c] == 3 => {
            let leaves = |v: usize| {
                edges
                    .iter()
                    .filter_map(|&(s, t)| if s == v { Some(t) } else if t == v { Some(s) } else { None })
                    .filter(|&w| degree[w] == 1)
                    .count()
            };
            if leaves(*b) == 2 && leaves(*c) == 2 {
                GraphType::Euclidean(Family::D, n - 1)
            } else {
                GraphType::Other
            }
        }
        _ => GraphType::Other,
    }
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(s, t) in edges {
            for (a, b) in [(s, t), (t, s)] {
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Number of vertices on each arm leaving `center` in a tree.
fn arm_lengths(n: usize, edges: &[(usize, usize)], center: usize) -> Vec<usize> {
    let neighbours = |v: usize| -> Vec<usize> {
        edges.iter().filter_map(|&(s, t)| if s == v { Some(t) } else if t == v { Some(s) } else { None }).collect()
    };
    let mut arms = Vec::new();
    for start in neighbours(center) {
        let (mut prev, mut cur, mut len) = (center, start, 1);
        loop {
            let next: Vec<usize> = neighbours(cur).into_iter().filter(|&w| w != prev).collect();
            if next.len() != 1 || len > n {
                break;
            }
            prev = cur;
            cur = next[0];
            len += 1;
        }
        arms.push(len);
    }
    arms
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessOutcome {
    /// The ray category (after the optional quotient) is representation-infinite.
    Witness { graph: GraphType, quotient: Option<usize> },
    /// Some arrow image is the morphism that was to be set to zero.
    ImageIsQuotiented(String),
    NotCleaving(Violation),
    NotEuclidean(GraphType),
}

impl WitnessOutcome {
    pub fn is_witness(&self) -> bool {
        matches!(self, WitnessOutcome::Witness { .. })
    }
}

/// A cleaving functor from a Euclidean diagram certifies representation-infinity.
pub fn representation_infinite_witness(
    rc: &RayCategory,
    d: &Diagram,
    f: &RayFunctor,
    eta: Option<usize>,
) -> Result<WitnessOutcome> {
    let graph = underlying_graph_type(d.quiver());
    let quotient = match eta {
        Some(e) => {
            let q = rc.quotient_by_ray(e)?;
            if let Some(i) = f.arrows.iter().position(|&r| r == e) {
                return Ok(WitnessOutcome::ImageIsQuotiented(d.quiver().arrow(i).name.clone()));
            }
            q
        }
        None => rc.clone(),
    };
    if let Some(v) = cleaving_violation(&quotient, d, f)? {
        return Ok(WitnessOutcome::NotCleaving(v));
    }
    if !graph.is_euclidean() {
        return Ok(WitnessOutcome::NotEuclidean(graph));
    }
    Ok(WitnessOutcome::Witness { graph, quotient: eta })
}
