//! Distributivity, neighborhoods, penny-farthings and loop relations.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::{AlgebraBasis, Element};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::Subspace;
use crate::quiver::{Path, Presentation, Quiver, Relation};
use crate::raycat::Interlacing;

/// A pair `(x, y)` whose corner space `e_xΛe_y` is cyclic over neither
/// `e_xΛe_x` nor `e_yΛe_y`.
pub fn distributivity_witness(a: &AlgebraBasis) -> Option<(usize, usize)> {
    let n = a.quiver().vertex_count();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| !is_cyclic(a, x, y, Side::Left) && !is_cyclic(a, x, y, Side::Right))
}

pub fn check_distributive(a: &AlgebraBasis) -> bool {
    distributivity_witness(a).is_none()
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

/// A module over a local algebra is cyclic iff its top has dimension at most one.
fn is_cyclic(a: &AlgebraBasis, x: usize, y: usize, side: Side) -> bool {
    let space = a.hom_space(x, y);
    if space.len() <= 1 {
        return true;
    }
    let corner = match side {
        Side::Left => x,
        Side::Right => y,
    };
    let radical: Vec<usize> =
        a.hom_space(corner, corner).iter().copied().filter(|&u| !a.basis_path(u).is_trivial()).collect();
    let mut products = Vec::new();
    for &b in space {
        for &u in &radical {
            let e = match side {
                Side::Left => a.product(u, b),
                Side::Right => a.product(b, u),
            };
            if !e.is_zero() {
                products.push(a.to_vector(&e));
            }
        }
    }
    let rad = Subspace::span(a.field(), a.dim(), products);
    space.len() - rad.dim() <= 1
}

pub fn arrows_from(a: &AlgebraBasis, x: usize) -> Vec<usize> {
    a.quiver().arrows_from(x).collect()
}

/// A relation `α^t = λ·w` with `t` minimal and `w` a path other than `α^t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopRelation {
    pub exponent: usize,
    pub other: Path,
    pub coefficient: Scalar,
}

/// Smallest `t ≥ 2` for which `α^t` is a nonzero multiple of another path.
pub fn minimal_loop_power(a: &AlgebraBasis, alpha: usize) -> Result<Option<LoopRelation>> {
    let q = a.quiver();
    if !q.arrow(alpha).is_loop() {
        return Err(Error::NotALoop(q.arrow(alpha).name.clone()));
    }
    for t in 2..a.bound() {
        let power = q.path(&vec![alpha; t]).expect("loop powers compose");
        let Some((b, lambda)) = a.scalar_class(&power) else {
            break;
        };
        let found = a.all_paths().iter().filter(|w| **w != power && !w.is_empty()).find_map(|w| {
            let (c, mu) = a.scalar_class(w)?;
            (c == b).then(|| (w.clone(), &lambda * &mu.inv().expect("nonzero")))
        });
        if let Some((other, coefficient)) = found {
            return Ok(Some(LoopRelation { exponent: t, other, coefficient }));
        }
    }
    Ok(None)
}

/// The corner algebra `eΛe` on a set of vertices, kept as a based algebra
/// whose basis is every basis path of `Λ` with both ends in the set.
#[derive(Clone, Debug)]
pub struct Neighborhood {
    pub center: usize,
    pub vertices: Vec<usize>,
    pub basis: Vec<usize>,
    /// Arrows of the corner algebra, read off `rad / rad²`, as
    /// `(source, target, basis path)`.
    pub arrows: Vec<(usize, usize, usize)>,
}

impl Neighborhood {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Membership rules evaluated inside the corner algebra itself.
    pub fn rule_closure(&self, a: &AlgebraBasis) -> BTreeSet<usize> {
        let support: Vec<usize> =
            self.vertices.iter().copied().filter(|&v| !a.hom_space(self.center, v).is_empty()).collect();
        let arrows: Vec<(usize, usize)> = self.arrows.iter().map(|&(s, t, _)| (s, t)).collect();
        apply_rules(self.center, &support, &arrows)
    }

    pub fn display(&self, a: &AlgebraBasis) -> String {
        let q = a.quiver();
        let names: Vec<&str> = self.vertices.iter().map(|&v| q.vertex_name(v)).collect();
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|&(s, t, b)| format!("{}: {} -> {}", a.display_basis(b), q.vertex_name(s), q.vertex_name(t)))
            .collect();
        format!("vertices: {}\ndim: {}\narrows: {}", names.join(" "), self.dim(), arrows.join(", "))
    }
}

fn apply_rules(x: usize, support: &[usize], arrows: &[(usize, usize)]) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = support.iter().copied().collect();
    set.insert(x);
    for &(s, t) in arrows {
        if t == x {
            set.insert(s);
        }
    }
    // y' <- x <-> y <- z with four distinct points
    let has = |s: usize, t: usize| arrows.contains(&(s, t));
    for &(s, y) in arrows {
        if s != x || y == x || !has(y, x) {
            continue;
        }
        for &(z, t) in arrows {
            if t != y || z == x || z == y {
                continue;
            }
            if arrows.iter().any(|&(s2, y2)| s2 == x && y2 != x && y2 != y && y2 != z) {
                set.insert(z);
            }
        }
    }
    set
}

pub fn neighborhood(a: &AlgebraBasis, x: usize) -> Result<Neighborhood> {
    let q = a.quiver();
    if x >= q.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{x}")));
    }
    let support: Vec<usize> = (0..q.vertex_count()).filter(|&v| !a.hom_space(x, v).is_empty()).collect();
    let arrows: Vec<(usize, usize)> = q.arrows().iter().map(|r| (r.source, r.target)).collect();
    let vertices: Vec<usize> = apply_rules(x, &support, &arrows).into_iter().collect();
    Ok(corner(a, x, vertices))
}

fn corner(a: &AlgebraBasis, center: usize, vertices: Vec<usize>) -> Neighborhood {
    let mut basis = Vec::new();
    for &u in &vertices {
        for &v in &vertices {
            basis.extend_from_slice(a.hom_space(u, v));
        }
    }
    basis.sort_unstable();
    let radical: Vec<usize> = basis.iter().copied().filter(|&b| !a.basis_path(b).is_trivial()).collect();
    let mut squares = Vec::new();
    for &u in &radical {
        for &v in &radical {
            let e = a.product(u, v);
            if !e.is_zero() {
                squares.push(a.to_vector(&e));
            }
        }
    }
    let mut span = Subspace::span(a.field(), a.dim(), squares);
    let mut arrows = Vec::new();
    for &b in &radical {
        let p = a.basis_path(b);
        if span.insert(a.to_vector(&Element::basis(b, a.field()))) {
            arrows.push((p.source(), p.target(), b));
        }
    }
    arrows.sort_unstable();
    Neighborhood { center, vertices, basis, arrows }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PennyFarthingType {
    /// `ρ_s ρ_1 = 0`.
    One,
    /// `ρ_s ρ_1 = ρ_s σ ρ_1 ≠ 0`.
    Two,
}

impl fmt::Display for PennyFarthingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PennyFarthingType::One => write!(f, "1"),
            PennyFarthingType::Two => write!(f, "2"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PennyFarthing {
    pub base: usize,
    pub sigma: usize,
    pub rho: Vec<usize>,
    /// `z_1, ..., z_s`.
    pub cycle: Vec<usize>,
    pub kind: PennyFarthingType,
    /// `σ² = λ ρ_1 ⋯ ρ_s`.
    pub lambda: Scalar,
    /// `f(1), ..., f(s - 1)`, 1-based.
    pub f: Vec<usize>,
}

impl PennyFarthing {
    pub fn display(&self, a: &AlgebraBasis) -> String {
        let q = a.quiver();
        let rho: Vec<&str> = self.rho.iter().map(|&r| q.arrow(r).name.as_str()).collect();
        let f: Vec<String> = self.f.iter().map(|v| v.to_string()).collect();
        format!(
            "type {} base {} loop {} cycle {} f [{}]",
            self.kind,
            q.vertex_name(self.base),
            q.arrow(self.sigma).name,
            rho.join("."),
            f.join(" ")
        )
    }
}

#[derive(Clone, Debug, Default)]
pub struct PennyFarthingScan {
    pub found: Vec<PennyFarthing>,
    /// Contours of the right shape whose relations match neither system.
    pub malformed: Vec<String>,
}

/// Finds every contour `(σ², ρ_1 ⋯ ρ_s)` through a loop and a simple cycle,
/// and classifies it.
pub fn detect_penny_farthings(a: &AlgebraBasis) -> PennyFarthingScan {
    let q = a.quiver();
    let inter = Interlacing::new(a);
    let mut scan = PennyFarthingScan::default();
    for sigma in 0..q.arrows().len() {
        if !q.arrow(sigma).is_loop() {
            continue;
        }
        let z1 = q.arrow(sigma).source;
        let square = q.path(&[sigma, sigma]).expect("loop");
        let Some((class, sq_coeff)) = a.scalar_class(&square) else {
            continue;
        };
        for rho in simple_cycles(a, z1) {
            let cycle_path = q.path(&rho).expect("cycle");
            let Some((c, rho_coeff)) = a.scalar_class(&cycle_path) else {
                continue;
            };
            if c != class || inter.interlaced(&square, &cycle_path) {
                continue;
            }
            let cycle: Vec<usize> = rho.iter().map(|&r| q.arrow(r).source).collect();
            if !has_shape(a, sigma, &rho, &cycle) {
                continue;
            }
            let lambda = &sq_coeff * &rho_coeff.inv().expect("nonzero");
            let outcome = classify(a, sigma, &rho).and_then(|(kind, f)| {
                let pf = PennyFarthing { base: z1, sigma, rho: rho.clone(), cycle, kind, lambda, f };
                presents_corner(a, &pf).map(|()| pf)
            });
            match outcome {
                Ok(pf) => scan.found.push(pf),
                Err(why) => {
                    let names: Vec<&str> = rho.iter().map(|&r| q.arrow(r).name.as_str()).collect();
                    scan.malformed.push(format!("{} with {}: {why}", q.arrow(sigma).name, names.join(".")));
                }
            }
        }
    }
    scan
}

/// Cycles of non-loop arrows from `z` through pairwise distinct vertices.
fn simple_cycles(a: &AlgebraBasis, z: usize) -> Vec<Vec<usize>> {
    let q = a.quiver();
    let max = a.bound().saturating_sub(1);
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<usize>)> = vec![(Vec::new(), vec![z])];
    while let Some((arrows, seen)) = stack.pop() {
        let at = *seen.last().expect("nonempty");
        for r in q.arrows_from(at) {
            let t = q.arrow(r).target;
            if q.arrow(r).is_loop() {
                continue;
            }
            let mut next = arrows.clone();
            next.push(r);
            if t == z {
                out.push(next);
            } else if !seen.contains(&t) && next.len() < max {
                let mut s = seen.clone();
                s.push(t);
                stack.push((next, s));
            }
        }
    }
    out.sort();
    out
}

/// The full subquiver on the cycle vertices carries only `σ` and the cycle.
fn has_shape(a: &AlgebraBasis, sigma: usize, rho: &[usize], cycle: &[usize]) -> bool {
    let q = a.quiver();
    q.arrows().iter().enumerate().all(|(i, r)| {
        let inside = cycle.contains(&r.source) && cycle.contains(&r.target);
        !inside || i == sigma || rho.contains(&i)
    })
}

/// The relation system of `pf`, over the quiver `σ, ρ_1, ..., ρ_s`.
pub fn relation_system(a: &AlgebraBasis, pf: &PennyFarthing) -> Result<Presentation> {
    let q = a.quiver();
    let s = pf.rho.len();
    let vertices: Vec<String> = pf.cycle.iter().map(|&v| q.vertex_name(v).to_string()).collect();
    let mut arrows = vec![(q.arrow(pf.sigma).name.clone(), vertices[0].clone(), vertices[0].clone())];
    for (i, &r) in pf.rho.iter().enumerate() {
        arrows.push((q.arrow(r).name.clone(), vertices[i].clone(), vertices[(i + 1) % s].clone()));
    }
    let sub = Quiver::new(vertices, arrows)?;
    // arrow 0 is σ, arrow i is ρ_i
    let path = |arrows: Vec<usize>| sub.path(&arrows);
    let rho: Vec<usize> = (1..=s).collect();
    let mut relations = vec![Relation::Binomial {
        left: path(vec![0, 0])?,
        right: path(rho.clone())?,
        coefficient: pf.lambda.clone(),
    }];
    let back = path(vec![s, 1])?;
    relations.push(match pf.kind {
        PennyFarthingType::One => Relation::Monomial(back),
        PennyFarthingType::Two => Relation::Binomial {
            left: back,
            right: path(vec![s, 0, 1])?,
            coefficient: a.field().one(),
        },
    });
    for (i, &fi) in pf.f.iter().enumerate() {
        let mut detour: Vec<usize> = rho[i + 1..].to_vec();
        detour.push(0);
        detour.extend_from_slice(&rho[..fi]);
        relations.push(Relation::Monomial(path(detour)?));
    }
    Presentation::new(sub, relations, a.bound(), a.field())
}

/// Checks that the full subcategory on the cycle is presented by the relation
/// system: the induced map from the system algebra is injective and onto.
fn presents_corner(a: &AlgebraBasis, pf: &PennyFarthing) -> std::result::Result<(), String> {
    let q = a.quiver();
    let system = relation_system(a, pf).map_err(|e| e.to_string())?;
    let sys = AlgebraBasis::build(&system).map_err(|e| e.to_string())?;
    let image = sys.basis().iter().map(|p| {
        let arrows: Vec<usize> =
            p.arrows().iter().map(|&i| if i == 0 { pf.sigma } else { pf.rho[i - 1] }).collect();
        let lifted = if arrows.is_empty() {
            Path::trivial(pf.cycle[p.source()])
        } else {
            q.path(&arrows).expect("composable")
        };
        a.to_vector(&a.path_normal_form(&lifted))
    });
    let rank = Subspace::span(a.field(), a.dim(), image).dim();
    let mut corner = 0;
    for &u in &pf.cycle {
        for &v in &pf.cycle {
            corner += a.hom_space(u, v).len();
        }
    }
    if rank != sys.dim() {
        return Err(format!("relations beyond the system hold ({} of {} survive)", rank, sys.dim()));
    }
    if rank != corner {
        return Err(format!("corner has dimension {corner}, system gives {rank}"));
    }
    Ok(())
}

fn classify(a: &AlgebraBasis, sigma: usize, rho: &[usize]) -> std::result::Result<(PennyFarthingType, Vec<usize>), String> {
    let q = a.quiver();
    let s = rho.len();
    let nf = |arrows: &[usize]| a.path_normal_form(&q.path(arrows).expect("composable"));
    let back = nf(&[rho[s - 1], rho[0]]);
    let kind = if back.is_zero() {
        PennyFarthingType::One
    } else if back == nf(&[rho[s - 1], sigma, rho[0]]) {
        PennyFarthingType::Two
    } else {
        return Err("ρ_s ρ_1 is neither zero nor equal to ρ_s σ ρ_1".into());
    };
    let mut f = Vec::with_capacity(s.saturating_sub(1));
    let mut floor = 1;
    for i in 1..s {
        let killed = (1..=s).find(|&j| {
            let mut arrows: Vec<usize> = rho[i..].to_vec();
            arrows.push(sigma);
            arrows.extend_from_slice(&rho[..j]);
            nf(&arrows).is_zero()
        });
        let Some(j) = killed else {
            return Err(format!("no vanishing detour after ρ_{}", i + 1));
        };
        floor = floor.max(j);
        f.push(floor);
    }
    Ok((kind, f))
}
