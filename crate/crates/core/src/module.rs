//! Finite-dimensional right modules given by per-arrow action matrices.
//!
//! Elements are row vectors and `m·a` is `m` times the matrix of `a`. Every
//! basis vector carries a vertex tag, and all subspaces handled here are
//! direct sums of their vertex parts, so their echelon rows are homogeneous.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{AlgebraBasis, Element};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{self, left_kernel, vec_mat, Subspace, Vector};
use crate::quiver::Path;

/// Marks a module as `e_x Λ` with its basis taken from the algebra basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveInfo {
    pub vertex: usize,
    /// Algebra basis index of each module basis vector.
    pub basis: Vec<usize>,
    position: HashMap<usize, usize>,
}

impl ProjectiveInfo {
    pub fn position(&self, algebra_index: usize) -> Option<usize> {
        self.position.get(&algebra_index).copied()
    }
}

#[derive(Clone, Debug)]
pub struct RightModule {
    algebra: Arc<AlgebraBasis>,
    tags: Vec<usize>,
    labels: Vec<String>,
    /// `actions[a][i]` is the image of basis vector `i` under arrow `a`.
    actions: Vec<Vec<Vector>>,
    projective: Option<ProjectiveInfo>,
}

impl RightModule {
    /// Builds a module from raw data, checking tags and the relations.
    pub fn new(
        algebra: Arc<AlgebraBasis>,
        tags: Vec<usize>,
        labels: Vec<String>,
        actions: Vec<Vec<Vector>>,
    ) -> Result<Self> {
        let m = RightModule { algebra, tags, labels, actions, projective: None };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let q = self.algebra.quiver();
        let bad = |why: String| Err(Error::InvalidModule(why));
        if self.actions.len() != q.arrows().len() || self.labels.len() != self.tags.len() {
            return bad("action list does not match the quiver".into());
        }
        for (a, arrow) in q.arrows().iter().enumerate() {
            for (i, row) in self.actions[a].iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() && (self.tags[i] != arrow.source || self.tags[j] != arrow.target) {
                        return bad(format!("arrow `{}` does not respect vertex tags", arrow.name));
                    }
                }
            }
        }
        for rel in self.algebra.presentation().relations() {
            for i in 0..self.dim() {
                let v = linalg::unit_vector(self.field(), self.dim(), i);
                let image = match rel {
                    crate::quiver::Relation::Monomial(p) => self.act_path(&v, p),
                    crate::quiver::Relation::Binomial { left, right, coefficient } => {
                        let mut w = self.act_path(&v, left);
                        linalg::axpy(&mut w, &-coefficient, &self.act_path(&v, right));
                        w
                    }
                };
                if !linalg::is_zero(&image) {
                    return bad("a relation acts nontrivially".into());
                }
            }
        }
        Ok(())
    }

    pub fn projective(algebra: &Arc<AlgebraBasis>, x: usize) -> Result<Self> {
        if x >= algebra.quiver().vertex_count() {
            return Err(Error::UnknownVertex(format!("#{x}")));
        }
        let basis = algebra.row_space(x);
        let position: HashMap<usize, usize> = basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let field = algebra.field();
        let n = basis.len();
        let q = algebra.quiver();
        let mut actions = Vec::with_capacity(q.arrows().len());
        for a in 0..q.arrows().len() {
            let arrow_path = q.path(&[a]).expect("single arrow is a path");
            let rows = basis
                .iter()
                .map(|&b| {
                    let mut row = linalg::zero_vector(field, n);
                    if let Some(p) = algebra.basis_path(b).then(&arrow_path) {
                        for (&k, c) in algebra.path_normal_form(&p).terms() {
                            row[position[&k]] = c.clone();
                        }
                    }
                    row
                })
                .collect();
            actions.push(rows);
        }
        Ok(RightModule {
            algebra: algebra.clone(),
            tags: basis.iter().map(|&b| algebra.basis_path(b).target()).collect(),
            labels: basis.iter().map(|&b| algebra.display_basis(b)).collect(),
            actions,
            projective: Some(ProjectiveInfo { vertex: x, basis, position }),
        })
    }

    pub fn simple(algebra: &Arc<AlgebraBasis>, x: usize) -> Result<Self> {
        if x >= algebra.quiver().vertex_count() {
            return Err(Error::UnknownVertex(format!("#{x}")));
        }
        let field = algebra.field();
        let actions = algebra.quiver().arrows().iter().map(|_| vec![linalg::zero_vector(field, 1)]).collect();
        Ok(RightModule {
            algebra: algebra.clone(),
            tags: vec![x],
            labels: vec![format!("S[{}]", algebra.quiver().vertex_name(x))],
            actions,
            projective: None,
        })
    }

    pub fn zero(algebra: &Arc<AlgebraBasis>) -> Self {
        RightModule {
            algebra: algebra.clone(),
            tags: Vec::new(),
            labels: Vec::new(),
            actions: vec![Vec::new(); algebra.quiver().arrows().len()],
            projective: None,
        }
    }

    pub fn algebra(&self) -> &Arc<AlgebraBasis> {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.tags.len()
    }

    pub fn is_zero(&self) -> bool {
        self.tags.is_empty()
    }

    pub fn tags(&self) -> &[usize] {
        &self.tags
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn action(&self, arrow: usize) -> &[Vector] {
        &self.actions[arrow]
    }

    pub fn projective_info(&self) -> Option<&ProjectiveInfo> {
        self.projective.as_ref()
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.algebra.quiver().vertex_count()];
        for &t in &self.tags {
            d[t] += 1;
        }
        d
    }

    pub fn unit(&self, i: usize) -> Vector {
        linalg::unit_vector(self.field(), self.dim(), i)
    }

    pub fn act(&self, v: &[Scalar], arrow: usize) -> Vector {
        vec_mat(self.field(), v, &self.actions[arrow], self.dim())
    }

    pub fn act_path(&self, v: &[Scalar], p: &Path) -> Vector {
        let mut w = v.to_vec();
        if p.is_trivial() {
            for (c, &t) in w.iter_mut().zip(&self.tags) {
                if t != p.source() {
                    *c = self.field().zero();
                }
            }
            return w;
        }
        for &a in p.arrows() {
            w = self.act(&w, a);
        }
        w
    }

    /// `v · e` for an algebra element `e`.
    pub fn act_element(&self, v: &[Scalar], e: &Element) -> Vector {
        let mut out = linalg::zero_vector(self.field(), self.dim());
        for (&b, c) in e.terms() {
            let w = self.act_path(v, self.algebra.basis_path(b));
            linalg::axpy(&mut out, c, &w);
        }
        out
    }

    /// Splits `v` into its vertex-homogeneous components.
    pub fn homogeneous_parts(&self, v: &[Scalar]) -> Vec<Vector> {
        let mut parts: Vec<Vector> = Vec::new();
        let mut seen = Vec::new();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() && !seen.contains(&self.tags[i]) {
                seen.push(self.tags[i]);
            }
        }
        for t in seen {
            let w = v
                .iter()
                .enumerate()
                .map(|(i, c)| if self.tags[i] == t { c.clone() } else { self.field().zero() })
                .collect();
            parts.push(w);
        }
        parts
    }

    /// The vector of an algebra element lying in `e_x Λ`, for `P_x`.
    pub fn element_vector(&self, e: &Element) -> Result<Vector> {
        let info = self.projective.as_ref().ok_or(Error::ElementNotInModule)?;
        let mut v = linalg::zero_vector(self.field(), self.dim());
        for (&b, c) in e.terms() {
            let i = info.position(b).ok_or(Error::ElementNotInModule)?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// The element of `Λ` represented by a vector of `P_x`.
    pub fn vector_element(&self, v: &[Scalar]) -> Option<Element> {
        let info = self.projective.as_ref()?;
        let mut e = Element::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term(info.basis[i], c.clone());
        }
        Some(e)
    }

    pub fn path_vector(&self, p: &Path) -> Result<Vector> {
        self.element_vector(&self.algebra.element_from_path(p))
    }

    pub fn display_vector(&self, v: &[Scalar]) -> String {
        match self.vector_element(v) {
            Some(e) => self.algebra.display_element(&e),
            None => {
                let parts: Vec<String> = v
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| if c.is_one() { self.labels[i].clone() } else { format!("({c}) {}", self.labels[i]) })
                    .collect();
                if parts.is_empty() { "0".into() } else { parts.join(" + ") }
            }
        }
    }

    /// `rad M = M·J`, spanned by the arrow images of the basis.
    pub fn radical_space(&self) -> Subspace {
        let vectors = (0..self.actions.len()).flat_map(|a| self.actions[a].iter().cloned());
        Subspace::span(self.field(), self.dim(), vectors)
    }

    /// Top of the module as a sorted multiset of vertices.
    pub fn top(&self) -> Vec<usize> {
        let rad = self.radical_space();
        let mut top: Vec<usize> = rad.free_columns().into_iter().map(|c| self.tags[c]).collect();
        top.sort();
        top
    }

    /// The radical layers `rad^k M / rad^(k+1) M` as multisets of vertices.
    pub fn radical_layers(&self) -> Vec<Vec<usize>> {
        let mut layers = Vec::new();
        let mut current = Subspace::full(self.field(), self.dim());
        while !current.is_zero() {
            let next = Subspace::span(
                self.field(),
                self.dim(),
                current.rows().iter().flat_map(|r| (0..self.actions.len()).map(move |a| self.act(r, a))),
            );
            let mut layer = layer_tags(self, &current);
            for t in layer_tags(self, &next) {
                let i = layer.iter().position(|&x| x == t).expect("radical is a subspace");
                layer.remove(i);
            }
            layer.sort();
            layers.push(layer);
            current = next;
        }
        layers
    }

    /// Composition factors in radical-layer order.
    pub fn composition_factors(&self) -> Vec<usize> {
        self.radical_layers().concat()
    }

    /// Cheap isomorphism invariant: dimension vector, top, and per-arrow ranks.
    pub fn fingerprint(&self) -> Vec<usize> {
        let mut f = self.dimension_vector();
        f.extend(self.top());
        f.push(usize::MAX);
        for a in 0..self.actions.len() {
            f.push(Subspace::span(self.field(), self.dim(), self.actions[a].iter().cloned()).dim());
        }
        f
    }

    /// Splits along connected components of the graph joining basis vectors
    /// `i` and `j` whenever some arrow maps `i` onto a multiple involving `j`.
    /// Each block is a direct summand.
    pub fn blocks(&self) -> Vec<RightModule> {
        let n = self.dim();
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut k: usize) -> usize {
            while p[k] != k {
                p[k] = p[p[k]];
                k = p[k];
            }
            k
        }
        for rows in &self.actions {
            for (i, row) in rows.iter().enumerate() {
                for (j, c) in row.iter().enumerate() {
                    if !c.is_zero() {
                        let (ri, rj) = (root(&mut parent, i), root(&mut parent, j));
                        parent[ri.max(rj)] = ri.min(rj);
                    }
                }
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let r = root(&mut parent, i);
            let g = *slot.entry(r).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(i);
        }
        if groups.len() <= 1 {
            return vec![self.clone()];
        }
        groups
            .into_iter()
            .map(|g| RightModule {
                algebra: self.algebra.clone(),
                tags: g.iter().map(|&i| self.tags[i]).collect(),
                labels: g.iter().map(|&i| self.labels[i].clone()).collect(),
                actions: self
                    .actions
                    .iter()
                    .map(|rows| g.iter().map(|&i| g.iter().map(|&j| rows[i][j].clone()).collect()).collect())
                    .collect(),
                projective: None,
            })
            .collect()
    }

    /// Exact presentation data, equal for modules with identical matrices.
    pub fn key(&self) -> (Vec<usize>, Vec<Vec<Vector>>) {
        (self.tags.clone(), self.actions.clone())
    }

    pub fn direct_sum(algebra: &Arc<AlgebraBasis>, parts: &[RightModule]) -> RightModule {
        let field = algebra.field();
        let total: usize = parts.iter().map(RightModule::dim).sum();
        let mut tags = Vec::new();
        let mut labels = Vec::new();
        let mut actions: Vec<Vec<Vector>> = vec![Vec::new(); algebra.quiver().arrows().len()];
        let mut offset = 0;
        for (k, m) in parts.iter().enumerate() {
            tags.extend_from_slice(&m.tags);
            labels.extend(m.labels.iter().map(|l| format!("{l}#{k}")));
            for (a, rows) in m.actions.iter().enumerate() {
                for row in rows {
                    let mut r = linalg::zero_vector(field, total);
                    r[offset..offset + m.dim()].clone_from_slice(row);
                    actions[a].push(r);
                }
            }
            offset += m.dim();
        }
        RightModule { algebra: algebra.clone(), tags, labels, actions, projective: None }
    }
}

fn layer_tags(m: &RightModule, s: &Subspace) -> Vec<usize> {
    s.pivots().iter().map(|&p| m.tags[p]).collect()
}

/// A submodule, stored as an echelon subspace of its ambient module.
#[derive(Clone, Debug)]
pub struct Submodule {
    ambient: Arc<RightModule>,
    space: Subspace,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ambient, &other.ambient) && self.space == other.space
    }
}

impl Eq for Submodule {}

impl Submodule {
    pub fn zero(ambient: &Arc<RightModule>) -> Self {
        Submodule { ambient: ambient.clone(), space: Subspace::zero(ambient.field(), ambient.dim()) }
    }

    pub fn whole(ambient: &Arc<RightModule>) -> Self {
        Submodule { ambient: ambient.clone(), space: Subspace::full(ambient.field(), ambient.dim()) }
    }

    /// Wraps a subspace known to be action-closed and homogeneous.
    pub(crate) fn from_closed(ambient: &Arc<RightModule>, space: Subspace) -> Self {
        Submodule { ambient: ambient.clone(), space }
    }

    /// The smallest submodule containing `gens`.
    pub fn generated(ambient: &Arc<RightModule>, gens: &[Vector]) -> Result<Self> {
        let mut space = Subspace::zero(ambient.field(), ambient.dim());
        let mut queue = Vec::new();
        for g in gens {
            if g.len() != ambient.dim() {
                return Err(Error::ElementNotInModule);
            }
            for part in ambient.homogeneous_parts(g) {
                if space.insert(part.clone()) {
                    queue.push(part);
                }
            }
        }
        while let Some(v) = queue.pop() {
            for a in 0..ambient.actions.len() {
                let w = ambient.act(&v, a);
                if !linalg::is_zero(&w) && space.insert(w.clone()) {
                    queue.push(w);
                }
            }
        }
        Ok(Submodule { ambient: ambient.clone(), space })
    }

    /// Submodule of `P_x` generated by algebra elements.
    pub fn generated_by_elements(ambient: &Arc<RightModule>, gens: &[Element]) -> Result<Self> {
        let vs = gens.iter().map(|e| ambient.element_vector(e)).collect::<Result<Vec<_>>>()?;
        Submodule::generated(ambient, &vs)
    }

    /// Submodule of `P_x` generated by paths.
    pub fn generated_by_paths(ambient: &Arc<RightModule>, gens: &[Path]) -> Result<Self> {
        let vs = gens.iter().map(|p| ambient.path_vector(p)).collect::<Result<Vec<_>>>()?;
        Submodule::generated(ambient, &vs)
    }

    pub fn radical(m: &Arc<RightModule>) -> Self {
        Submodule { ambient: m.clone(), space: m.radical_space() }
    }

    pub fn ambient(&self) -> &Arc<RightModule> {
        &self.ambient
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.space.is_zero()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.space.contains(v)
    }

    pub fn dimension_vector(&self) -> Vec<usize> {
        let mut d = vec![0; self.ambient.algebra.quiver().vertex_count()];
        for t in layer_tags(&self.ambient, &self.space) {
            d[t] += 1;
        }
        d
    }

    fn same_ambient(&self, other: &Submodule) -> Result<()> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub fn intersect(&self, other: &Submodule) -> Result<Submodule> {
        self.same_ambient(other)?;
        Ok(Submodule { ambient: self.ambient.clone(), space: self.space.intersect(&other.space) })
    }

    pub fn sum(&self, other: &Submodule) -> Result<Submodule> {
        self.same_ambient(other)?;
        Ok(Submodule { ambient: self.ambient.clone(), space: self.space.sum(&other.space) })
    }

    pub fn is_submodule_of(&self, other: &Submodule) -> Result<bool> {
        self.same_ambient(other)?;
        Ok(self.space.is_subspace_of(&other.space))
    }

    pub fn is_direct_sum(parts: &[Submodule]) -> Result<bool> {
        let Some(first) = parts.first() else {
            return Ok(true);
        };
        let mut total = Submodule::zero(&first.ambient);
        let mut dims = 0;
        for p in parts {
            total = total.sum(p)?;
            dims += p.dim();
        }
        Ok(total.dim() == dims)
    }

    /// The submodule as a module in its own right, with the echelon rows as basis.
    pub fn to_module(&self) -> RightModule {
        let amb = &self.ambient;
        let rows = self.space.rows();
        let tags: Vec<usize> = self.space.pivots().iter().map(|&p| amb.tags[p]).collect();
        let labels = rows.iter().map(|r| amb.display_vector(r)).collect();
        let actions = (0..amb.actions.len())
            .map(|a| {
                rows.iter()
                    .map(|r| self.space.coordinates(&amb.act(r, a)).expect("submodule is action-closed"))
                    .collect()
            })
            .collect();
        RightModule { algebra: amb.algebra.clone(), tags, labels, actions, projective: None }
    }

    /// `ambient / self`, with basis the classes of the non-pivot basis vectors.
    pub fn quotient_module(&self) -> RightModule {
        let amb = &self.ambient;
        let free = self.space.free_columns();
        let tags = free.iter().map(|&c| amb.tags[c]).collect();
        let labels = free.iter().map(|&c| amb.labels[c].clone()).collect();
        let actions = (0..amb.actions.len())
            .map(|a| {
                free.iter()
                    .map(|&c| {
                        let w = self.space.reduce(&amb.actions[a][c]);
                        free.iter().map(|&d| w[d].clone()).collect::<Vector>()
                    })
                    .collect()
            })
            .collect();
        RightModule { algebra: amb.algebra.clone(), tags, labels, actions, projective: None }
    }

    /// Basis-vector description, for reports.
    pub fn describe(&self) -> Vec<String> {
        self.space.rows().iter().map(|r| self.ambient.display_vector(r)).collect()
    }
}

/// `w · v` for `v` in `P_x` and `w` in `e_x Λ e_x`.
pub fn left_multiply(p: &RightModule, w: &Element, v: &[Scalar]) -> Result<Vector> {
    let info = p.projective_info().ok_or(Error::ElementNotInModule)?;
    let a = p.algebra();
    for &b in w.terms().keys() {
        let path = a.basis_path(b);
        if path.source() != info.vertex || path.target() != info.vertex {
            return Err(Error::ElementNotInModule);
        }
    }
    let elem = p.vector_element(v).expect("projective");
    p.element_vector(&a.multiply(w, &elem))
}

/// `w · S` for a submodule `S` of `P_x` and `w ∈ e_x Λ e_x`.
pub fn left_multiply_image(w: &Element, s: &Submodule) -> Result<Submodule> {
    let p = s.ambient();
    let images = s.space().rows().iter().map(|r| left_multiply(p, w, r)).collect::<Result<Vec<_>>>()?;
    Ok(Submodule::from_closed(p, Subspace::span(p.field(), p.dim(), images)))
}

/// `{m ∈ S : w·m = 0}` for a submodule `S` of `P_x` and `w ∈ e_x Λ e_x`.
pub fn kernel_of_left_multiplication(w: &Element, s: &Submodule) -> Result<Submodule> {
    let p = s.ambient();
    let rows = s.space().rows();
    let images = rows.iter().map(|r| left_multiply(p, w, r)).collect::<Result<Vec<_>>>()?;
    let kernel = left_kernel(p.field(), &images, p.dim());
    let vectors = kernel.into_iter().map(|c| vec_mat(p.field(), &c, rows, p.dim()));
    Ok(Submodule::from_closed(p, Subspace::span(p.field(), p.dim(), vectors)))
}
