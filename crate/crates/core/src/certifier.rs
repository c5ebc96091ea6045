//! α-filtrations of `P_x`: verification, search, template chains, the
//! predicate suite and the end-to-end no-loop report.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraBasis, Element};
use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::module::{left_multiply, left_multiply_image, RightModule, Submodule};
use crate::quiver::Path;
use crate::raycat::{verify_multiplicative_basis, RayCategory};
use crate::resolution::{projective_dimension, PdOutcome, PdReport};
use crate::structure::{arrows_from, detect_penny_farthings, minimal_loop_power, PennyFarthing};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Every interior term has finite projective dimension at this depth.
    AllFinite(usize),
    /// Some interior term exceeded this depth.
    Inconclusive(usize),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::AllFinite(d) => write!(f, "AllFinite({d})"),
            Verdict::Inconclusive(d) => write!(f, "Inconclusive({d})"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct FiltrationCertificate {
    pub chain: Vec<Submodule>,
    /// Reports for `M_1, ..., M_(n-1)`.
    pub reports: Vec<PdReport>,
    pub verdict: Verdict,
}

impl FiltrationCertificate {
    pub fn display(&self) -> String {
        let mut out = String::new();
        for (i, m) in self.chain.iter().enumerate() {
            let basis = m.describe().join(", ");
            let pd = match i.checked_sub(1).and_then(|j| self.reports.get(j)) {
                Some(r) if i + 1 < self.chain.len() => format!("  pd {}", r.outcome),
                _ => String::new(),
            };
            out.push_str(&format!("M{i}: dim {} [{basis}]{pd}\n", m.dim()));
        }
        out.push_str(&format!("verdict: {}", self.verdict));
        out
    }
}

fn loop_element(p: &RightModule, alpha: usize) -> Result<Element> {
    let a = p.algebra();
    let info = p.projective_info().ok_or_else(|| Error::InvalidModule("not an indecomposable projective".into()))?;
    let arrow = a.quiver().arrow(alpha);
    if !arrow.is_loop() || arrow.source != info.vertex {
        return Err(Error::NotALoop(arrow.name.clone()));
    }
    let path = a.quiver().path(&[alpha])?;
    Ok(a.path_normal_form(&path))
}

/// Checks strictness and `α M_i ⊆ M_(i+1)`, then resolves the interior terms.
pub fn verify_alpha_filtration(p: &Arc<RightModule>, alpha: usize, chain: &[Submodule], depth: usize) -> Result<FiltrationCertificate> {
    let w = loop_element(p, alpha)?;
    let n = chain.len();
    if n < 2 || chain[0].dim() != p.dim() {
        return Err(Error::NotAChain(0));
    }
    if !chain[n - 1].is_zero() {
        return Err(Error::NotAChain(n - 1));
    }
    for i in 0..n - 1 {
        let (big, small) = (&chain[i], &chain[i + 1]);
        if !small.is_submodule_of(big)? || small.dim() == big.dim() {
            return Err(Error::NotAChain(i + 1));
        }
        for row in big.space().rows() {
            let image = left_multiply(p, &w, row)?;
            if !small.contains(&image) {
                return Err(Error::NotAlphaStable { index: i, element: p.display_vector(row) });
            }
        }
    }
    let reports: Vec<PdReport> = chain[1..n - 1].iter().map(|m| projective_dimension(&m.to_module(), depth)).collect();
    let verdict = if reports.iter().all(|r| r.outcome.is_finite()) {
        Verdict::AllFinite(depth)
    } else {
        Verdict::Inconclusive(depth)
    };
    Ok(FiltrationCertificate { chain: chain.to_vec(), reports, verdict })
}

/// Every submodule of `P_x` generated by basis paths, each with the
/// lexicographically least generating set found, ordered by dimension
/// descending and then by that set.
pub fn path_generated_submodules(p: &Arc<RightModule>, limit: usize) -> Result<Vec<(Vec<usize>, Submodule)>> {
    p.projective_info().ok_or_else(|| Error::InvalidModule("not an indecomposable projective".into()))?;
    let cyclic: Vec<Submodule> =
        (0..p.dim()).map(|i| Submodule::generated(p, &[p.unit(i)])).collect::<Result<_>>()?;
    let key = |s: &Submodule| s.space().rows().to_vec();
    let mut found: HashMap<Vec<Vector>, (Vec<usize>, Submodule)> = HashMap::new();
    let zero = Submodule::zero(p);
    found.insert(key(&zero), (Vec::new(), zero.clone()));
    let mut frontier = vec![(Vec::<usize>::new(), zero)];
    while let Some((gens, s)) = frontier.pop() {
        let start = gens.last().map_or(0, |g| g + 1);
        for (i, c) in cyclic.iter().enumerate().skip(start) {
            let t = s.sum(c)?;
            let mut g = gens.clone();
            g.push(i);
            let k = key(&t);
            match found.get_mut(&k) {
                Some(entry) => {
                    if g < entry.0 {
                        entry.0 = g;
                    }
                }
                None => {
                    if found.len() >= limit {
                        return Err(Error::BudgetExhausted(limit));
                    }
                    found.insert(k, (g.clone(), t.clone()));
                    frontier.push((g, t));
                }
            }
        }
    }
    let mut all: Vec<(Vec<usize>, Submodule)> = found.into_values().collect();
    all.sort_by(|a, b| b.1.dim().cmp(&a.1.dim()).then_with(|| a.0.cmp(&b.0)));
    Ok(all)
}

/// Depth-first search for an α-filtration through path-generated submodules
/// whose interior terms all have finite projective dimension at `depth`.
/// `Ok(None)` means the search space was exhausted.
pub fn search_alpha_filtration(p: &Arc<RightModule>, alpha: usize, depth: usize, budget: usize) -> Result<Option<Vec<Submodule>>> {
    let w = loop_element(p, alpha)?;
    let candidates = path_generated_submodules(p, budget)?;
    let mut pd_ok: HashMap<usize, bool> = HashMap::new();
    let mut dead: HashSet<usize> = HashSet::new();
    let mut nodes = 0usize;
    let whole = candidates.iter().position(|(_, s)| s.dim() == p.dim()).expect("P_x is generated by e_x");
    let zero = candidates.iter().position(|(_, s)| s.is_zero()).expect("zero is listed");
    let mut chain = vec![whole];
    if dfs(&w, &candidates, depth, budget, zero, &mut chain, &mut pd_ok, &mut dead, &mut nodes)? {
        return Ok(Some(chain.into_iter().map(|i| candidates[i].1.clone()).collect()));
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    w: &Element,
    candidates: &[(Vec<usize>, Submodule)],
    depth: usize,
    budget: usize,
    zero: usize,
    chain: &mut Vec<usize>,
    pd_ok: &mut HashMap<usize, bool>,
    dead: &mut HashSet<usize>,
    nodes: &mut usize,
) -> Result<bool> {
    let current = *chain.last().expect("nonempty");
    if current == zero {
        return Ok(true);
    }
    if dead.contains(&current) {
        return Ok(false);
    }
    *nodes += 1;
    if *nodes > budget {
        return Err(Error::BudgetExhausted(budget));
    }
    let m = &candidates[current].1;
    let image = left_multiply_image(w, m)?;
    for (i, (_, s)) in candidates.iter().enumerate() {
        if s.dim() >= m.dim() || !image.is_submodule_of(s)? || !s.is_submodule_of(m)? {
            continue;
        }
        if i != zero {
            let ok = *pd_ok.entry(i).or_insert_with(|| projective_dimension(&s.to_module(), depth).outcome.is_finite());
            if !ok {
                continue;
            }
        }
        chain.push(i);
        if dfs(w, candidates, depth, budget, zero, chain, pd_ok, dead, nodes)? {
            return Ok(true);
        }
        chain.pop();
    }
    dead.insert(current);
    Ok(false)
}

/// All α-stable strict chains from `start` down to zero through
/// path-generated submodules, with no condition on projective dimension.
pub fn enumerate_alpha_chains(start: &Submodule, alpha: usize, limit: usize) -> Result<Vec<Vec<Submodule>>> {
    let p = start.ambient();
    let w = loop_element(p, alpha)?;
    let candidates: Vec<Submodule> = path_generated_submodules(p, limit)?
        .into_iter()
        .map(|(_, s)| s)
        .filter(|s| s.is_submodule_of(start).unwrap_or(false))
        .collect();
    let mut below: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut index: Vec<Submodule> = candidates.clone();
    let root = match index.iter().position(|s| s == start) {
        Some(i) => i,
        None => {
            index.push(start.clone());
            index.len() - 1
        }
    };
    for (i, m) in index.iter().enumerate() {
        let image = left_multiply_image(&w, m)?;
        let next: Vec<usize> = index
            .iter()
            .enumerate()
            .filter(|(_, s)| s.dim() < m.dim() && image.is_submodule_of(s).unwrap_or(false) && s.is_submodule_of(m).unwrap_or(false))
            .map(|(j, _)| j)
            .collect();
        below.insert(i, next);
    }
    let mut out = Vec::new();
    let mut stack = vec![vec![root]];
    while let Some(chain) = stack.pop() {
        let last = *chain.last().expect("nonempty");
        if index[last].is_zero() {
            out.push(chain.iter().map(|&i| index[i].clone()).collect());
            if out.len() > limit {
                return Err(Error::BudgetExhausted(limit));
            }
            continue;
        }
        for &j in below[&last].iter().rev() {
            let mut c = chain.clone();
            c.push(j);
            stack.push(c);
        }
    }
    Ok(out)
}

/// The data the predicates and templates are phrased in: the loop `α` at
/// `x`, the minimal relation `α^t = λ β_1 ⋯ β_r`, the out-arrows and the long
/// morphisms.
#[derive(Clone, Debug)]
pub struct LoopContext {
    pub x: usize,
    pub alpha: usize,
    pub t: Option<usize>,
    pub beta1: Option<usize>,
    pub gamma: Option<usize>,
    pub out: Vec<usize>,
    /// Long morphisms, when the presentation is standard.
    pub long: Option<Vec<usize>>,
    pub rays: Option<RayCategory>,
    pub penny_farthings: Vec<PennyFarthing>,
    pub standard: bool,
}

impl LoopContext {
    pub fn new(a: &Arc<AlgebraBasis>, x: usize, alpha: usize) -> Result<Self> {
        let q = a.quiver();
        let relation = minimal_loop_power(a, alpha)?;
        let out = arrows_from(a, x);
        let beta1 = relation.as_ref().and_then(|r| r.other.arrows().first().copied()).filter(|b| *b != alpha);
        let gamma = match (out.len(), beta1) {
            (3, Some(b)) => out.iter().copied().find(|&g| g != alpha && g != b),
            _ => None,
        };
        let standard = verify_multiplicative_basis(a);
        let rays = if standard { RayCategory::build(a).ok() } else { None };
        let long = rays.as_ref().map(|rc| rc.long_morphisms());
        let penny_farthings = detect_penny_farthings(a).found;
        debug_assert_eq!(q.arrow(alpha).source, x);
        Ok(LoopContext { x, alpha, t: relation.map(|r| r.exponent), beta1, gamma, out, long, rays, penny_farthings, standard })
    }

    fn path(&self, a: &AlgebraBasis, word: &[usize]) -> Option<Path> {
        if word.is_empty() {
            return Some(Path::trivial(self.x));
        }
        a.quiver().path(word).ok()
    }

    /// Whether every long morphism is the ray of one of the given words.
    fn long_within(&self, a: &AlgebraBasis, words: &[Vec<usize>]) -> Option<bool> {
        let rc = self.rays.as_ref()?;
        let allowed: Vec<usize> =
            words.iter().filter_map(|w| self.path(a, w)).filter_map(|p| rc.ray_of_path(&p)).collect();
        Some(self.long.as_ref()?.iter().all(|l| allowed.contains(l)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PredicateValue {
    Holds,
    Fails,
    NotApplicable(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    pub name: String,
    pub value: PredicateValue,
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            PredicateValue::Holds => write!(f, "{}: holds", self.name),
            PredicateValue::Fails => write!(f, "{}: FAILS", self.name),
            PredicateValue::NotApplicable(why) => write!(f, "{}: not applicable ({why})", self.name),
        }
    }
}

/// Words in the arrows `α, β_1, γ`, turned into submodules of `P_x`.
struct Words<'a> {
    a: &'a AlgebraBasis,
    p: &'a Arc<RightModule>,
    ctx: &'a LoopContext,
}

impl Words<'_> {
    fn alpha_pow(&self, k: usize) -> Vec<usize> {
        vec![self.ctx.alpha; k]
    }

    fn word(&self, k: usize, tail: Option<usize>) -> Vec<usize> {
        let mut w = self.alpha_pow(k);
        w.extend(tail);
        w
    }

    fn is_zero(&self, w: &[usize]) -> bool {
        self.ctx.path(self.a, w).is_none_or(|p| self.a.path_normal_form(&p).is_zero())
    }

    fn sub(&self, words: &[Vec<usize>]) -> Submodule {
        let paths: Vec<Path> = words.iter().filter_map(|w| self.ctx.path(self.a, w)).collect();
        Submodule::generated_by_paths(self.p, &paths).expect("paths start at x")
    }

    fn meet_zero(&self, l: &[Vec<usize>], r: &[Vec<usize>]) -> bool {
        self.sub(l).intersect(&self.sub(r)).expect("same ambient").is_zero()
    }

    /// `α² ρ = 0` for every ray `ρ` other than `e_x, α, ..., α^(t-2)`.
    fn square_kills(&self, t: usize) -> bool {
        let rc = self.ctx.rays.as_ref().expect("standard");
        let a = self.a;
        let Some(sq) = self.ctx.path(a, &self.alpha_pow(2)).and_then(|p| rc.ray_of_path(&p)) else {
            return true;
        };
        let allowed: Vec<usize> =
            (0..t.saturating_sub(1)).filter_map(|k| self.ctx.path(a, &self.alpha_pow(k)).and_then(|p| rc.ray_of_path(&p))).collect();
        rc.rays().into_iter().filter(|&r| rc.source(r) == self.ctx.x && !allowed.contains(&r)).all(|r| rc.compose(sq, r).is_none())
    }

    /// Whether the ray of `target` is `head · ρ` for some ray `ρ`.
    fn ray_factors(&self, head: &[usize], target: &[usize]) -> bool {
        let rc = self.ctx.rays.as_ref().expect("standard");
        let (Some(h), Some(t)) = (
            self.ctx.path(self.a, head).and_then(|p| rc.ray_of_path(&p)),
            self.ctx.path(self.a, target).and_then(|p| rc.ray_of_path(&p)),
        ) else {
            return false;
        };
        rc.rays().into_iter().any(|r| rc.compose(h, r) == Some(t))
    }
}

/// Evaluates the facts the case analysis relies on. Each entry is gated on
/// its hypotheses; when they fail the entry is `NotApplicable`.
pub fn evaluate_predicates(a: &Arc<AlgebraBasis>, p: &Arc<RightModule>, ctx: &LoopContext) -> Vec<Predicate> {
    let mut out = Vec::new();
    let mut push = |name: &str, value: PredicateValue| out.push(Predicate { name: name.to_string(), value });
    let names = [
        "<b1> n <a b1> = 0",
        "t >= 3 and L not in {a^3, a^2 b1} => a^2 b1 = 0",
        "<a^2> n <a b1> = 0 = <b1> n <a b1> => <a^2, b1> n <a b1> = 0",
        "x+ = {a, b1}, t >= 3, L not in {a^3, a^2 b1} => a^2 kills rays past a^(t-2) and <a^2> n <a b1> = 0",
        "x+ = {a, b1}, t >= 3, L not in {a^3, a^2 b1} => <a^2, b1> n <a b1> = 0",
        "a g != 0 => b1 v != a g != g w",
        "t >= 3 => a g = 0",
        "L not in {a^2, a b1, a g} => a b1 = 0 or a g = 0",
        "a^2 b1 != 0 => g w != a b1",
        "t = 2 or L not in {a^t, a^2 b1} => a^2 b1 = 0 = a^2 g and a^2 kills rays past a^(t-2)",
        "t = 2 or L not in {a^t, a^2 b1} => <b1> n <a g> = 0",
        "t = 2 or L not in {a^t, a^2 b1} => (<g> n <b1> = 0 => <g> n <a^2> = 0)",
        "t = 2 or L not in {a^t, a^2 b1} => <g> n <a^t> = 0 or <g> n <a b1> = 0",
        "t = 2 or L not in {a^t, a^2 b1} => <g> n <a b1> = 0 or <g> n <b1> = 0",
        "t = 2 or L not in {a^t, a^2 b1} => <a b1> n <a^2> = 0 = <a g> n <a^2>",
        "L not in {a^2, a b1, a g} => <g> n <a g> = 0",
        "both non-containments, <a g> = 0 = <g> n <a b1> => <b1, g, a^2> n <a b1> = 0",
        "both non-containments, <a g> = 0 = <g> n <b1> => <b1, a^2> n <g, a b1> = 0",
        "both non-containments, <a b1> = 0 => <b1, g, a^2> n <a g> = 0",
    ];
    let gate = if !ctx.standard {
        Some("presentation is not standard")
    } else if !ctx.penny_farthings.is_empty() {
        Some("a penny-farthing is present")
    } else if ctx.t.is_none() || ctx.beta1.is_none() {
        Some("no binomial relation through a loop power")
    } else {
        None
    };
    if let Some(why) = gate {
        for n in names {
            push(n, PredicateValue::NotApplicable(why.into()));
        }
        return out;
    }
    let t = ctx.t.expect("gated");
    let b1 = ctx.beta1.expect("gated");
    let w = Words { a, p, ctx };
    let al = |k: usize| w.alpha_pow(k);
    let ab = |k: usize| w.word(k, Some(b1));
    let ag = |k: usize| ctx.gamma.map(|g| w.word(k, Some(g)));
    let value = |hyp: bool, concl: &dyn Fn() -> bool| {
        if !hyp {
            PredicateValue::NotApplicable("hypothesis does not hold".into())
        } else if concl() {
            PredicateValue::Holds
        } else {
            PredicateValue::Fails
        }
    };
    let na = |why: &str| PredicateValue::NotApplicable(why.into());
    let not_in_cube = ctx.long_within(a, &[al(3), ab(2)]) == Some(false);
    let not_in_t = ctx.long_within(a, &[al(t), ab(2)]) == Some(false);
    let two = ctx.out.len() == 2;

    push(names[0], value(true, &|| w.meet_zero(&[ab(0)], &[ab(1)])));
    push(names[1], value(t >= 3 && not_in_cube, &|| w.is_zero(&ab(2))));
    let hyp = w.meet_zero(&[al(2)], &[ab(1)]) && w.meet_zero(&[ab(0)], &[ab(1)]);
    push(names[2], value(hyp, &|| w.meet_zero(&[al(2), ab(0)], &[ab(1)])));
    push(names[3], value(two && t >= 3 && not_in_cube, &|| w.square_kills(t) && w.meet_zero(&[al(2)], &[ab(1)])));
    push(names[4], value(two && t >= 3 && not_in_cube, &|| w.meet_zero(&[al(2), ab(0)], &[ab(1)])));

    let Some(g) = ctx.gamma else {
        for n in &names[5..] {
            push(n, na("x+ does not have three arrows"));
        }
        return out;
    };
    let ag0 = vec![g];
    let ag1 = ag(1).expect("gamma");
    let not_in_short = ctx.long_within(a, &[al(2), ab(1), ag1.clone()]) == Some(false);
    push(names[5], value(!w.is_zero(&ag1), &|| !w.ray_factors(&ab(0), &ag1) && !w.ray_factors(&ag0, &ag1)));
    push(names[6], value(t >= 3, &|| w.is_zero(&ag1)));
    push(names[7], value(not_in_short, &|| w.is_zero(&ab(1)) || w.is_zero(&ag1)));
    push(names[8], value(!w.is_zero(&ab(2)), &|| !w.ray_factors(&ag0, &ab(1))));
    let h17 = t == 2 || not_in_t;
    let ag2 = ag(2).expect("gamma");
    push(names[9], value(h17, &|| w.is_zero(&ab(2)) && w.is_zero(&ag2) && w.square_kills(t)));
    push(names[10], value(h17, &|| w.meet_zero(&[ab(0)], std::slice::from_ref(&ag1))));
    push(names[11], value(h17, &|| !w.meet_zero(std::slice::from_ref(&ag0), &[ab(0)]) || w.meet_zero(std::slice::from_ref(&ag0), &[al(2)])));
    push(names[12], value(h17, &|| w.meet_zero(std::slice::from_ref(&ag0), &[al(t)]) || w.meet_zero(std::slice::from_ref(&ag0), &[ab(1)])));
    push(names[13], value(h17, &|| w.meet_zero(std::slice::from_ref(&ag0), &[ab(1)]) || w.meet_zero(std::slice::from_ref(&ag0), &[ab(0)])));
    push(names[14], value(h17, &|| w.meet_zero(&[ab(1)], &[al(2)]) && w.meet_zero(std::slice::from_ref(&ag1), &[al(2)])));
    push(names[15], value(not_in_short, &|| w.meet_zero(std::slice::from_ref(&ag0), std::slice::from_ref(&ag1))));
    let both = not_in_t && not_in_short;
    let ag_zero = w.is_zero(&ag1);
    push(names[16], value(both && ag_zero && w.meet_zero(std::slice::from_ref(&ag0), &[ab(1)]), &|| w.meet_zero(&[ab(0), ag0.clone(), al(2)], &[ab(1)])));
    push(names[17], value(both && ag_zero && w.meet_zero(std::slice::from_ref(&ag0), &[ab(0)]), &|| w.meet_zero(&[ab(0), al(2)], &[ag0.clone(), ab(1)])));
    push(names[18], value(both && w.is_zero(&ab(1)), &|| w.meet_zero(&[ab(0), ag0.clone(), al(2)], std::slice::from_ref(&ag1))));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    NoLoop,
    PennyFarthing,
    /// `x⁺ = {α, β_1}` and every long morphism lies in `{α³, α²β_1}`.
    TwoArrowsShortLong,
    /// `x⁺ = {α, β_1}`, `t = 2`, otherwise.
    TwoArrowsSquare,
    /// `x⁺ = {α, β_1}`, `t ≥ 3`, otherwise.
    TwoArrowsHigher,
    /// `x⁺ = {α, β_1, γ}` and every long morphism lies in `{α², αβ_1, αγ}`.
    ThreeArrowsShortLong,
    /// `x⁺ = {α, β_1, γ}` and every long morphism lies in `{α^t, α²β_1}`.
    ThreeArrowsPowerLong,
    /// `x⁺ = {α, β_1, γ}`, neither containment.
    ThreeArrowsSplit,
    Search,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::NoLoop => "no-loop",
            Branch::PennyFarthing => "penny-farthing",
            Branch::TwoArrowsShortLong => "two-arrows/long-in-cubes",
            Branch::TwoArrowsSquare => "two-arrows/t=2",
            Branch::TwoArrowsHigher => "two-arrows/t>=3",
            Branch::ThreeArrowsShortLong => "three-arrows/long-in-squares",
            Branch::ThreeArrowsPowerLong => "three-arrows/long-in-powers",
            Branch::ThreeArrowsSplit => "three-arrows/split",
            Branch::Search => "search",
        })
    }
}

pub fn choose_branch(a: &AlgebraBasis, ctx: &LoopContext) -> Branch {
    if !ctx.penny_farthings.is_empty() {
        return Branch::PennyFarthing;
    }
    let (Some(t), Some(b1), true) = (ctx.t, ctx.beta1, ctx.standard) else {
        return Branch::Search;
    };
    let al = |k: usize| vec![ctx.alpha; k];
    let ab = |k: usize| {
        let mut w = al(k);
        w.push(b1);
        w
    };
    match (ctx.out.len(), ctx.gamma) {
        (2, _) => {
            if ctx.long_within(a, &[al(3), ab(2)]) == Some(true) {
                Branch::TwoArrowsShortLong
            } else if t == 2 {
                Branch::TwoArrowsSquare
            } else {
                Branch::TwoArrowsHigher
            }
        }
        (3, Some(g)) => {
            let ag = vec![ctx.alpha, g];
            if ctx.long_within(a, &[al(2), ab(1), ag]) == Some(true) {
                Branch::ThreeArrowsShortLong
            } else if ctx.long_within(a, &[al(t), ab(2)]) == Some(true) {
                Branch::ThreeArrowsPowerLong
            } else {
                Branch::ThreeArrowsSplit
            }
        }
        _ => Branch::Search,
    }
}

#[derive(Clone, Debug)]
pub struct Template {
    pub name: String,
    pub chain: Vec<Submodule>,
}

/// Instantiates the chains of the chosen branch. Terms that collapse are
/// dropped, so a chain may be shorter than its pattern; verification decides.
pub fn template_filtrations(a: &Arc<AlgebraBasis>, p: &Arc<RightModule>, ctx: &LoopContext, branch: Branch) -> Vec<Template> {
    let w = Words { a, p, ctx };
    let al = |k: usize| w.alpha_pow(k);
    let powers = |from: usize, to: usize| -> Vec<Vec<Vec<usize>>> { (from..=to).map(|k| vec![al(k)]).collect() };
    let t = ctx.t.unwrap_or(3);
    let mut out = Vec::new();
    let mut add = |name: &str, terms: Vec<Vec<Vec<usize>>>, extra: &[(usize, Submodule)]| {
        let mut chain = vec![Submodule::whole(p)];
        for (i, words) in terms.iter().enumerate() {
            let mut s = w.sub(words);
            for (at, k) in extra {
                if *at == i {
                    s = s.sum(k).expect("same ambient");
                }
            }
            chain.push(s);
        }
        chain.push(Submodule::zero(p));
        chain.dedup_by(|b, a| a.dim() == b.dim() && b.is_submodule_of(a).unwrap_or(false));
        out.push(Template { name: name.to_string(), chain });
    };
    match branch {
        Branch::NoLoop | Branch::Search => {}
        Branch::PennyFarthing => add("P_x > <a> > <a^2> > <a^3> > 0", powers(1, 3), &[]),
        Branch::TwoArrowsShortLong => add("P_x > <a> > <a^2> > <a^3> > 0", powers(1, 3), &[]),
        Branch::TwoArrowsSquare => {
            let b1 = ctx.beta1.expect("branch");
            let ab = |k: usize| w.word(k, Some(b1));
            let alpha = a.path_normal_form(&a.quiver().path(&[ctx.alpha]).expect("loop"));
            let kernel = crate::module::kernel_of_left_multiplication(&alpha, &w.sub(&[ab(0)])).expect("loop at x");
            add(
                "P_x > <a, b1> > <b1> + <a b1> > <a b1> + K > K > 0",
                vec![vec![al(1), ab(0)], vec![ab(0), ab(1)], vec![ab(1)], vec![]],
                &[(2, kernel.clone()), (3, kernel)],
            );
        }
        Branch::TwoArrowsHigher => {
            let b1 = ctx.beta1.expect("branch");
            let mut terms = vec![vec![al(1), vec![b1]], vec![al(2), w.word(1, Some(b1))]];
            terms.extend(powers(3, t));
            add("P_x > <a, b1> > <a^2> + <a b1> > <a^3> > ... > <a^t> > 0", terms, &[]);
        }
        Branch::ThreeArrowsShortLong | Branch::ThreeArrowsPowerLong | Branch::ThreeArrowsSplit => {
            let b1 = ctx.beta1.expect("branch");
            let g = ctx.gamma.expect("branch");
            let ab1 = w.word(1, Some(b1));
            let ag1 = w.word(1, Some(g));
            if branch == Branch::ThreeArrowsShortLong || (branch == Branch::ThreeArrowsPowerLong && t == 2) {
                add("P_x > <a> > <a^2> > 0", powers(1, 2), &[]);
                add("P_x > <a, g> > <a^2, a g> > 0", vec![vec![al(1), vec![g]], vec![al(2), ag1.clone()]], &[]);
            } else if branch == Branch::ThreeArrowsPowerLong {
                add("P_x > <a> > <a^2> > ... > <a^t> > 0", powers(1, t), &[]);
            } else {
                let top = vec![al(1), vec![b1], vec![g]];
                let mut with = |name: &str, second: Vec<Vec<usize>>| {
                    let mut terms = vec![top.clone(), second];
                    terms.extend(powers(3, t));
                    add(name, terms, &[]);
                };
                with("P_x > <a, b1, g> > <a^2> + <a g> > <a^3> > ... > 0", vec![al(2), ag1.clone()]);
                with("P_x > <a, b1, g> > <a^2> + <a b1> > <a^3> > ... > 0", vec![al(2), ab1.clone()]);
                with("P_x > <a, b1, g> > <a^2> + <g, a b1> > <a^3> > ... > 0", vec![al(2), vec![g], ab1.clone()]);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    NoLoop,
    /// `pd S_x` exceeded the depth, as the conjecture predicts with a loop.
    Consistent(usize),
    /// A loop together with a finite α-filtration: impossible for valid inputs.
    Contradiction,
    /// Finite `pd S_x` with a loop; mildness is not decided here.
    CounterexampleCandidate,
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::NoLoop => write!(f, "no-loop"),
            Conclusion::Consistent(_) => write!(f, "consistent"),
            Conclusion::Contradiction => write!(f, "contradiction"),
            Conclusion::CounterexampleCandidate => write!(f, "counterexample-candidate"),
            Conclusion::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

impl Conclusion {
    pub fn explain(&self) -> String {
        match self {
            Conclusion::NoLoop => "no loop at x; nothing to certify".into(),
            Conclusion::Consistent(d) => format!("pd S_x exceeds {d}: consistent with the strong no loop conjecture at depth {d}"),
            Conclusion::Contradiction => {
                "a loop at x and an alpha-filtration of finite projective dimension cannot coexist: flag for review".into()
            }
            Conclusion::CounterexampleCandidate => {
                "finite pd S_x with a loop at x: counterexample candidate, mildness not certified by this tool".into()
            }
            Conclusion::Inconclusive => "no decision at this depth".into(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Attempt {
    pub source: String,
    pub outcome: std::result::Result<FiltrationCertificate, String>,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub depth: usize,
    pub budget: usize,
    /// Run the generic search even when a template already verified.
    pub always_search: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions { depth: 20, budget: 20_000, always_search: false }
    }
}

#[derive(Clone, Debug)]
pub struct CertifyReport {
    pub x: usize,
    pub depth: usize,
    pub loops: Vec<usize>,
    pub pd_simple: PdReport,
    pub neighborhood: Vec<usize>,
    pub distributive: bool,
    pub standard: bool,
    pub penny_farthings: Vec<PennyFarthing>,
    pub t: Option<usize>,
    pub out: Vec<usize>,
    pub branch: Branch,
    pub predicates: Vec<Predicate>,
    pub attempts: Vec<Attempt>,
    /// Index into `attempts` of the best verified chain.
    pub certificate: Option<usize>,
    pub diagnostics: Vec<String>,
    pub conclusion: Conclusion,
}

impl CertifyReport {
    pub fn certificate(&self) -> Option<&FiltrationCertificate> {
        self.certificate.and_then(|i| self.attempts[i].outcome.as_ref().ok())
    }

    pub fn all_finite(&self) -> bool {
        self.certificate().is_some_and(|c| matches!(c.verdict, Verdict::AllFinite(_)))
    }

    pub fn display(&self, a: &AlgebraBasis) -> String {
        let q = a.quiver();
        let names = |vs: &[usize]| vs.iter().map(|&v| q.vertex_name(v).to_string()).collect::<Vec<_>>().join(" ");
        let arrows = |vs: &[usize]| vs.iter().map(|&v| q.arrow(v).name.clone()).collect::<Vec<_>>().join(" ");
        let mut s = String::new();
        s += &format!("vertex: {}\n", q.vertex_name(self.x));
        s += &format!("loops: {}\n", if self.loops.is_empty() { "none".to_string() } else { arrows(&self.loops) });
        s += &format!("pd S_x: {}\n", self.pd_simple.outcome);
        if let Some((i, j)) = self.pd_simple.periodicity {
            s += &format!("syzygy periodicity: Omega^{i} and Omega^{j} agree\n");
        }
        s += &format!("neighborhood: {}\n", names(&self.neighborhood));
        s += &format!("distributive: {}\nstandard: {}\n", self.distributive, self.standard);
        s += &format!("penny-farthings: {}\n", self.penny_farthings.len());
        for pf in &self.penny_farthings {
            s += &format!("  {}\n", pf.display(a));
        }
        s += &format!("t: {}\nx+: {}\n", self.t.map_or("none".into(), |t| t.to_string()), arrows(&self.out));
        s += &format!("branch: {}\n", self.branch);
        let mut skipped: BTreeMap<&str, usize> = BTreeMap::new();
        for p in &self.predicates {
            match &p.value {
                PredicateValue::NotApplicable(why) => *skipped.entry(why.as_str()).or_default() += 1,
                _ => s += &format!("  {p}\n"),
            }
        }
        for (why, n) in skipped {
            s += &format!("  {n} predicates not applicable: {why}\n");
        }
        for (i, at) in self.attempts.iter().enumerate() {
            let mark = if self.certificate == Some(i) { " (selected)" } else { "" };
            match &at.outcome {
                Ok(c) => s += &format!("attempt {}{mark}: {}\n{}\n", at.source, c.verdict, c.display()),
                Err(e) => s += &format!("attempt {}: {e}\n", at.source),
            }
        }
        for d in &self.diagnostics {
            s += &format!("diagnostic: {d}\n");
        }
        s += &format!("conclusion: {} ({})", self.conclusion, self.conclusion.explain());
        s
    }
}

/// The full no-loop pipeline at `x`. Failures of individual steps are
/// recorded as diagnostics; the report always completes.
pub fn certify_no_loop(a: &Arc<AlgebraBasis>, x: usize, opts: &CertifyOptions) -> Result<CertifyReport> {
    let q = a.quiver();
    if x >= q.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{x}")));
    }
    let depth = opts.depth;
    let simple = RightModule::simple(a, x)?;
    let pd_simple = projective_dimension(&simple, depth);
    let loops: Vec<usize> = q.loops_at(x).collect();
    let mut diagnostics = Vec::new();
    let neighborhood = crate::structure::neighborhood(a, x)?.vertices;
    let distributive = crate::structure::check_distributive(a);
    let standard = verify_multiplicative_basis(a);
    let mut report = CertifyReport {
        x,
        depth,
        loops: loops.clone(),
        pd_simple,
        neighborhood,
        distributive,
        standard,
        penny_farthings: Vec::new(),
        t: None,
        out: arrows_from(a, x),
        branch: Branch::NoLoop,
        predicates: Vec::new(),
        attempts: Vec::new(),
        certificate: None,
        diagnostics: Vec::new(),
        conclusion: Conclusion::NoLoop,
    };
    let Some(&alpha) = loops.first() else {
        return Ok(report);
    };
    if loops.len() > 1 {
        diagnostics.push(format!("{} loops at x; working with {}", loops.len(), q.arrow(alpha).name));
    }
    let p = Arc::new(RightModule::projective(a, x)?);
    let ctx = LoopContext::new(a, x, alpha)?;
    if !standard {
        diagnostics.push("presentation is not standard; only the penny-farthing chain is offered".into());
    }
    if !distributive {
        diagnostics.push("algebra is not distributive, so it is not mild".into());
    }
    let branch = if standard || !ctx.penny_farthings.is_empty() { choose_branch(a, &ctx) } else { Branch::Search };
    report.penny_farthings = ctx.penny_farthings.clone();
    report.t = ctx.t;
    report.branch = branch;
    report.predicates = evaluate_predicates(a, &p, &ctx);
    for pred in &report.predicates {
        if pred.value == PredicateValue::Fails {
            diagnostics.push(format!("predicate fails: {}", pred.name));
        }
    }
    for tpl in template_filtrations(a, &p, &ctx, branch) {
        let outcome = verify_alpha_filtration(&p, alpha, &tpl.chain, depth).map_err(|e| e.to_string());
        report.attempts.push(Attempt { source: format!("template {}", tpl.name), outcome });
    }
    let verified_finite = |r: &CertifyReport| {
        r.attempts.iter().any(|at| at.outcome.as_ref().is_ok_and(|c| matches!(c.verdict, Verdict::AllFinite(_))))
    };
    if opts.always_search || !verified_finite(&report) {
        let outcome = match search_alpha_filtration(&p, alpha, depth, opts.budget) {
            Ok(Some(chain)) => verify_alpha_filtration(&p, alpha, &chain, depth).map_err(|e| e.to_string()),
            Ok(None) => Err("search exhausted without a chain of finite projective dimension".into()),
            Err(e) => Err(e.to_string()),
        };
        report.attempts.push(Attempt { source: "search".into(), outcome });
    }
    let finite = report
        .attempts
        .iter()
        .position(|at| at.outcome.as_ref().is_ok_and(|c| matches!(c.verdict, Verdict::AllFinite(_))));
    report.certificate = finite.or_else(|| report.attempts.iter().position(|at| at.outcome.is_ok()));
    report.diagnostics = diagnostics;
    report.conclusion = if report.all_finite() {
        Conclusion::Contradiction
    } else {
        match report.pd_simple.outcome {
            PdOutcome::Exceeds(d) => Conclusion::Consistent(d),
            PdOutcome::Finite(_) if distributive => Conclusion::CounterexampleCandidate,
            PdOutcome::Finite(_) => Conclusion::Inconclusive,
        }
    };
    Ok(report)
}
