//! Ray categories of standard presentations.
//!
//! A ray is the scalar class of a basis path. This realizes the orbit
//! category only when basis paths multiply to scalar multiples of basis paths
//! and no composite can be cancelled by a unit at the junction, which
//! [`multiplicative_basis_witness`] checks.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::AlgebraBasis;
use crate::error::{Error, Result};
use crate::quiver::Path;

/// Why scalar classes of basis paths fail to form the ray category.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplicativeWitness {
    /// `left · right` is not a multiple of a single basis path.
    NonMonomial { left: usize, right: usize },
    /// `left · middle · right` is a nonzero multiple of `left · right` for a
    /// radical `middle`, so a unit at the junction can cancel the product.
    UnitDependent { left: usize, middle: usize, right: usize },
}

impl MultiplicativeWitness {
    pub fn describe(&self, a: &AlgebraBasis) -> String {
        match *self {
            MultiplicativeWitness::NonMonomial { left, right } => format!(
                "{} * {} = {}",
                a.display_basis(left),
                a.display_basis(right),
                a.display_element(&a.product(left, right))
            ),
            MultiplicativeWitness::UnitDependent { left, middle, right } => format!(
                "{} * {} * {} is a multiple of {} * {}",
                a.display_basis(left),
                a.display_basis(middle),
                a.display_basis(right),
                a.display_basis(left),
                a.display_basis(right)
            ),
        }
    }
}

pub fn multiplicative_basis_witness(a: &AlgebraBasis) -> Option<MultiplicativeWitness> {
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let p = a.product(i, j);
            if !p.is_zero() && p.as_monomial().is_none() {
                return Some(MultiplicativeWitness::NonMonomial { left: i, right: j });
            }
        }
    }
    for i in 0..n {
        let y = a.basis_path(i).target();
        for j in 0..n {
            if a.basis_path(j).source() != y {
                continue;
            }
            let Some((ij, _)) = a.product(i, j).as_monomial().map(|(k, c)| (k, c.clone())) else {
                continue;
            };
            for &m in a.hom_space(y, y) {
                if a.basis_path(m).is_trivial() {
                    continue;
                }
                let im = a.product(i, m);
                let Some((k, _)) = im.as_monomial() else { continue };
                if a.product(k, j).as_monomial().is_some_and(|(l, _)| l == ij) {
                    return Some(MultiplicativeWitness::UnitDependent { left: i, middle: m, right: j });
                }
            }
        }
    }
    None
}

pub fn verify_multiplicative_basis(a: &AlgebraBasis) -> bool {
    multiplicative_basis_witness(a).is_none()
}

/// The ray category; rays are indexed by algebra basis indices.
#[derive(Clone, Debug)]
pub struct RayCategory {
    algebra: Arc<AlgebraBasis>,
    zeroed: BTreeSet<usize>,
    irreducible: Vec<bool>,
    table: HashMap<(usize, usize), usize>,
}

impl RayCategory {
    pub fn build(a: &Arc<AlgebraBasis>) -> Result<Self> {
        if let Some(w) = multiplicative_basis_witness(a) {
            let (l, r) = match w {
                MultiplicativeWitness::NonMonomial { left, right } => (left, right),
                MultiplicativeWitness::UnitDependent { left, right, .. } => (left, right),
            };
            return Err(Error::NonStandardPresentation(a.display_basis(l), a.display_basis(r)));
        }
        let j2 = a.radical_power(2);
        let irreducible = (0..a.dim())
            .map(|i| !a.basis_path(i).is_trivial() && !j2.contains(&a.to_vector(&crate::Element::basis(i, a.field()))))
            .collect();
        let mut table = HashMap::new();
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if let Some((k, _)) = a.product(i, j).as_monomial() {
                    table.insert((i, j), k);
                }
            }
        }
        Ok(RayCategory { algebra: a.clone(), zeroed: BTreeSet::new(), irreducible, table })
    }

    pub fn algebra(&self) -> &Arc<AlgebraBasis> {
        &self.algebra
    }

    pub fn is_ray(&self, r: usize) -> bool {
        r < self.algebra.dim() && !self.zeroed.contains(&r)
    }

    /// All nonzero rays, in basis order.
    pub fn rays(&self) -> Vec<usize> {
        (0..self.algebra.dim()).filter(|&r| self.is_ray(r)).collect()
    }

    pub fn hom(&self, x: usize, y: usize) -> Vec<usize> {
        self.algebra.hom_space(x, y).iter().copied().filter(|&r| self.is_ray(r)).collect()
    }

    pub fn source(&self, r: usize) -> usize {
        self.algebra.basis_path(r).source()
    }

    pub fn target(&self, r: usize) -> usize {
        self.algebra.basis_path(r).target()
    }

    pub fn identity(&self, x: usize) -> usize {
        self.algebra.trivial(x)
    }

    pub fn is_identity(&self, r: usize) -> bool {
        self.algebra.basis_path(r).is_trivial()
    }

    /// `r` followed by `s`, or `None` for the zero morphism.
    pub fn compose(&self, r: usize, s: usize) -> Option<usize> {
        if !self.is_ray(r) || !self.is_ray(s) {
            return None;
        }
        self.table.get(&(r, s)).copied().filter(|k| !self.zeroed.contains(k))
    }

    pub fn compose_all(&self, rays: &[usize]) -> Option<usize> {
        let (&first, rest) = rays.split_first()?;
        rest.iter().try_fold(first, |acc, &r| self.compose(acc, r))
    }

    /// The ray of a path, following the canonical functor.
    pub fn ray_of_path(&self, p: &Path) -> Option<usize> {
        let (b, _) = self.algebra.scalar_class(p)?;
        self.is_ray(b).then_some(b)
    }

    pub fn is_irreducible(&self, r: usize) -> bool {
        self.is_ray(r) && self.irreducible[r]
    }

    pub fn irreducible_rays(&self) -> Vec<usize> {
        self.rays().into_iter().filter(|&r| self.irreducible[r]).collect()
    }

    pub fn is_long(&self, r: usize) -> bool {
        if !self.is_ray(r) || self.is_identity(r) || self.irreducible[r] {
            return false;
        }
        self.rays().into_iter().filter(|&n| !self.is_identity(n)).all(|n| {
            (self.target(n) != self.source(r) || self.compose(n, r).is_none())
                && (self.source(n) != self.target(r) || self.compose(r, n).is_none())
        })
    }

    pub fn long_morphisms(&self) -> Vec<usize> {
        self.rays().into_iter().filter(|&r| self.is_long(r)).collect()
    }

    /// A quadruple `(l, m, n, k)` with `l m k = l n k ≠ 0` and `m ≠ n`.
    pub fn cancellation_witness(&self) -> Option<(usize, usize, usize, usize)> {
        let a = &self.algebra;
        let vc = a.quiver().vertex_count();
        for x in 0..vc {
            for y in 0..vc {
                let middle = self.hom(x, y);
                if middle.len() < 2 {
                    continue;
                }
                for w in 0..vc {
                    for l in self.hom(w, x) {
                        for z in 0..vc {
                            for k in self.hom(y, z) {
                                let mut seen: HashMap<usize, usize> = HashMap::new();
                                for &m in &middle {
                                    if let Some(v) = self.compose_all(&[l, m, k]) {
                                        if let Some(&prev) = seen.get(&v) {
                                            return Some((l, prev, m, k));
                                        }
                                        seen.insert(v, m);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn check_cancellation(&self) -> bool {
        self.cancellation_witness().is_none()
    }

    /// A path and split point where the canonical functor fails to be multiplicative.
    pub fn functor_witness(&self) -> Option<(Path, usize)> {
        let a = &self.algebra;
        let q = a.quiver();
        for p in a.all_paths() {
            for cut in 1..p.len() {
                let left = p.subpath(q, 0, cut);
                let right = p.subpath(q, cut, p.len());
                let composite = match (self.ray_of_path(&left), self.ray_of_path(&right)) {
                    (Some(l), Some(r)) => self.compose(l, r),
                    _ => None,
                };
                if composite != self.ray_of_path(p) {
                    return Some((p.clone(), cut));
                }
            }
        }
        None
    }

    /// Composition-associativity check over all composable triples.
    pub fn is_associative(&self) -> bool {
        let rays = self.rays();
        for &r in &rays {
            for &s in &rays {
                if self.target(r) != self.source(s) {
                    continue;
                }
                for &t in &rays {
                    if self.target(s) != self.source(t) {
                        continue;
                    }
                    let left = self.compose(r, s).and_then(|rs| self.compose(rs, t));
                    let right = self.compose(s, t).and_then(|st| self.compose(r, st));
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Sets a long morphism to zero.
    pub fn quotient_by_ray(&self, eta: usize) -> Result<RayCategory> {
        if !self.is_long(eta) {
            return Err(Error::NotLong(self.algebra.display_basis(eta)));
        }
        let mut q = self.clone();
        q.zeroed.insert(eta);
        Ok(q)
    }

    pub fn zeroed(&self) -> &BTreeSet<usize> {
        &self.zeroed
    }

    pub fn display(&self, r: usize) -> String {
        self.algebra.display_basis(r)
    }
}

/// Union-find over path indices, grouping interlaced paths.
#[derive(Clone, Debug)]
pub struct Interlacing {
    index: HashMap<Path, usize>,
    parent: Vec<usize>,
}

impl Interlacing {
    /// Closes the interlacing relation over all paths of length at most `N - 1`.
    pub fn new(a: &AlgebraBasis) -> Self {
        let q = a.quiver();
        let limit = a.bound().saturating_sub(1);
        let paths: Vec<&Path> = a.all_paths().iter().filter(|p| p.len() <= limit).collect();
        let index: HashMap<Path, usize> = paths.iter().enumerate().map(|(i, p)| ((*p).clone(), i)).collect();
        let mut parent: Vec<usize> = (0..paths.len()).collect();

        let mut classes: HashMap<usize, Vec<&Path>> = HashMap::new();
        for p in &paths {
            if let Some((b, _)) = a.scalar_class(p) {
                classes.entry(b).or_default().push(p);
            }
        }
        let mut into: Vec<Vec<&Path>> = vec![Vec::new(); q.vertex_count()];
        let mut from: Vec<Vec<&Path>> = vec![Vec::new(); q.vertex_count()];
        for p in &paths {
            into[p.target()].push(p);
            from[p.source()].push(p);
        }
        let mut ordered: Vec<_> = classes.into_iter().collect();
        ordered.sort_by_key(|(b, _)| *b);
        for (_, class) in ordered {
            for (i, v) in class.iter().enumerate() {
                for w in &class[i + 1..] {
                    for pre in &into[v.source()] {
                        for post in &from[v.target()] {
                            if pre.is_trivial() && post.is_trivial() {
                                continue;
                            }
                            let frame = pre.len() + post.len();
                            if frame + v.len() > limit || frame + w.len() > limit {
                                continue;
                            }
                            let vv = pre.then(v).and_then(|x| x.then(post)).expect("composable");
                            let ww = pre.then(w).and_then(|x| x.then(post)).expect("composable");
                            union(&mut parent, index[&vv], index[&ww]);
                        }
                    }
                }
            }
        }
        Interlacing { index, parent }
    }

    fn find(&self, mut i: usize) -> usize {
        while self.parent[i] != i {
            i = self.parent[i];
        }
        i
    }

    pub fn interlaced(&self, v: &Path, w: &Path) -> bool {
        if v.source() != w.source() || v.target() != w.target() {
            return false;
        }
        if v == w {
            return !v.is_trivial();
        }
        match (self.index.get(v), self.index.get(w)) {
            (Some(&i), Some(&j)) => self.find(i) == self.find(j),
            _ => false,
        }
    }
}

fn union(parent: &mut [usize], i: usize, j: usize) {
    let root = |parent: &mut [usize], mut k: usize| {
        while parent[k] != k {
            parent[k] = parent[parent[k]];
            k = parent[k];
        }
        k
    };
    let (ri, rj) = (root(parent, i), root(parent, j));
    if ri != rj {
        let (lo, hi) = if ri < rj { (ri, rj) } else { (rj, ri) };
        parent[hi] = lo;
    }
}

pub fn interlaced(a: &AlgebraBasis, v: &Path, w: &Path) -> bool {
    Interlacing::new(a).interlaced(v, w)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contour {
    pub first: Path,
    pub second: Path,
    /// The common ray.
    pub ray: usize,
    /// Set when one side is a loop power `σ^t` with `σ^(t+1) = 0`.
    pub deep: Option<bool>,
}

impl Contour {
    pub fn display(&self, a: &AlgebraBasis) -> String {
        let q = a.quiver();
        let deep = match self.deep {
            Some(true) => " deep",
            Some(false) => " not-deep",
            None => "",
        };
        format!("({}, {}){deep}", q.display_path(&self.first), q.display_path(&self.second))
    }

    /// The loop power side, as `(arrow, exponent, other side)`.
    pub fn loop_side(&self) -> Option<(usize, usize, &Path)> {
        if let Some((a, t)) = self.first.loop_power() {
            if self.second.loop_power().is_none_or(|(b, _)| b != a) {
                return Some((a, t, &self.second));
            }
        }
        if let Some((a, t)) = self.second.loop_power() {
            return Some((a, t, &self.first));
        }
        None
    }
}

impl fmt::Display for Contour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}

/// Deepness of a loop power `σ^t`: whether `σ^(t+1)` vanishes.
pub fn is_deep_power(a: &AlgebraBasis, sigma: usize, t: usize) -> bool {
    let p = a.quiver().path(&vec![sigma; t + 1]).expect("loop powers compose");
    a.path_normal_form(&p).is_zero()
}

pub fn is_deep(a: &AlgebraBasis, c: &Contour) -> Option<bool> {
    c.loop_side().map(|(s, t, _)| is_deep_power(a, s, t))
}

/// All contours with both paths of length at most `max_len`, ordered by the
/// smaller path and then the larger one.
pub fn contours(a: &AlgebraBasis, max_len: usize) -> Vec<Contour> {
    let inter = Interlacing::new(a);
    let limit = max_len.min(a.bound().saturating_sub(1));
    let mut classes: HashMap<usize, Vec<&Path>> = HashMap::new();
    for p in a.all_paths().iter().filter(|p| p.len() <= limit) {
        if let Some((b, _)) = a.scalar_class(p) {
            classes.entry(b).or_default().push(p);
        }
    }
    let mut out = Vec::new();
    for (&ray, class) in &classes {
        for (i, v) in class.iter().enumerate() {
            for w in &class[i + 1..] {
                if !inter.interlaced(v, w) {
                    let (first, second) = if v <= w { ((*v).clone(), (*w).clone()) } else { ((*w).clone(), (*v).clone()) };
                    let mut c = Contour { first, second, ray, deep: None };
                    c.deep = is_deep(a, &c);
                    out.push(c);
                }
            }
        }
    }
    out.sort_by(|x, y| (&x.first, &x.second).cmp(&(&y.first, &y.second)));
    out
}
