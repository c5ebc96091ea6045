//! The finite-dimensional quotient `kQ/I` with a basis of normal-form paths.
//!
//! The ideal is computed inside `kQ/J^(N+1)` by sparse Gaussian elimination.
//! Rows are keyed by path index in path order, and the pivot of a row is its
//! largest path, so larger paths rewrite to smaller ones.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Subspace, Vector};
use crate::quiver::{Path, Presentation, Quiver, Relation};

/// Upper bound on the number of enumerated paths.
pub const PATH_LIMIT: usize = 400_000;

/// A linear combination of basis paths with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<usize, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Element::default()
    }

    pub fn basis(i: usize, field: Field) -> Self {
        Element::term(i, field.one())
    }

    pub fn term(i: usize, c: Scalar) -> Self {
        let mut e = Element::zero();
        e.add_term(i, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<usize, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, i: usize) -> Option<&Scalar> {
        self.terms.get(&i)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, i: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&i) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&i);
                }
            }
            None => {
                self.terms.insert(i, c);
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &Element) {
        if c.is_zero() {
            return;
        }
        for (&i, v) in &other.terms {
            self.add_term(i, c * v);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Element {
        let mut e = Element::zero();
        e.add_scaled(c, self);
        e
    }

    /// The single basis index and its coefficient, if the element is a monomial.
    pub fn as_monomial(&self) -> Option<(usize, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(&i, c)| (i, c))
        } else {
            None
        }
    }
}

type Row = BTreeMap<usize, Scalar>;

#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    presentation: Presentation,
    paths: Vec<Path>,
    path_index: HashMap<Path, usize>,
    /// Normal form of every enumerated path (length at most N).
    normal_forms: Vec<Element>,
    basis: Vec<Path>,
    basis_of_path: HashMap<usize, usize>,
    by_pair: Vec<Vec<Vec<usize>>>,
}

impl AlgebraBasis {
    pub fn build(p: &Presentation) -> Result<Self> {
        let q = p.quiver();
        let n = p.bound();
        let field = p.field();
        let paths = enumerate_paths(q, n)?;
        let path_index: HashMap<Path, usize> =
            paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();

        let mut by_source: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
        let mut by_target: Vec<Vec<usize>> = vec![Vec::new(); q.vertex_count()];
        for (i, path) in paths.iter().enumerate() {
            by_source[path.source()].push(i);
            by_target[path.target()].push(i);
        }

        let mut pivots: HashMap<usize, Row> = HashMap::new();
        for rel in p.relations() {
            let (left, right, coeff) = match rel {
                Relation::Monomial(m) => (m, None, None),
                Relation::Binomial { left, right, coefficient } => (left, Some(right), Some(coefficient)),
            };
            let min_len = right.map_or(left.len(), |r| r.len().min(left.len()));
            if min_len > n {
                continue;
            }
            let room = n - min_len;
            for &u in &by_target[left.source()] {
                let u = &paths[u];
                if u.len() > room {
                    break;
                }
                for &v in &by_source[left.target()] {
                    let v = &paths[v];
                    if u.len() + v.len() > room {
                        break;
                    }
                    let mut row = Row::new();
                    let sandwich = |g: &Path| path_index.get(&u.then(g).unwrap().then(v).unwrap()).copied();
                    if let Some(i) = sandwich(left) {
                        row.insert(i, field.one());
                    }
                    if let (Some(r), Some(c)) = (right, coeff) {
                        if let Some(j) = sandwich(r) {
                            add_to_row(&mut row, j, -c);
                        }
                    }
                    insert_row(&mut pivots, row);
                }
            }
        }

        // Normal forms in increasing path order; a pivot rewrites to smaller paths.
        let mut basis = Vec::new();
        let mut basis_of_path = HashMap::new();
        let mut normal_forms: Vec<Element> = Vec::with_capacity(paths.len());
        for (i, path) in paths.iter().enumerate() {
            let nf = match pivots.get(&i) {
                Some(row) => {
                    let mut e = Element::zero();
                    for (&k, c) in row.range(..i) {
                        e.add_scaled(&-c, &normal_forms[k]);
                    }
                    e
                }
                None => {
                    if path.len() >= n {
                        return Err(Error::NotAdmissible(format!(
                            "path `{}` of length {n} survives; the nilpotency bound is too small",
                            q.display_path(path)
                        )));
                    }
                    let b = basis.len();
                    basis.push(path.clone());
                    basis_of_path.insert(i, b);
                    Element::basis(b, field)
                }
            };
            normal_forms.push(nf);
        }

        let mut by_pair = vec![vec![Vec::new(); q.vertex_count()]; q.vertex_count()];
        for (b, path) in basis.iter().enumerate() {
            by_pair[path.source()][path.target()].push(b);
        }
        Ok(AlgebraBasis {
            presentation: p.clone(),
            paths,
            path_index,
            normal_forms,
            basis,
            basis_of_path,
            by_pair,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation.quiver()
    }

    pub fn field(&self) -> Field {
        self.presentation.field()
    }

    pub fn bound(&self) -> usize {
        self.presentation.bound()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_path(&self, i: usize) -> &Path {
        &self.basis[i]
    }

    /// Index of a path in the basis, if the path is itself a basis path.
    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.path_index.get(p).and_then(|i| self.basis_of_path.get(i)).copied()
    }

    pub fn trivial(&self, v: usize) -> usize {
        self.basis_index(&Path::trivial(v)).expect("trivial paths are basis paths")
    }

    /// Ordered basis indices of `e_x Λ e_y`.
    pub fn hom_space(&self, x: usize, y: usize) -> &[usize] {
        &self.by_pair[x][y]
    }

    /// Ordered basis indices of `e_x Λ`.
    pub fn row_space(&self, x: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].source() == x).collect()
    }

    pub fn display_basis(&self, i: usize) -> String {
        self.quiver().display_path(&self.basis[i])
    }

    pub fn display_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = e
            .terms()
            .iter()
            .map(|(&i, c)| {
                if c.is_one() {
                    self.display_basis(i)
                } else {
                    format!("({c}) {}", self.display_basis(i))
                }
            })
            .collect();
        parts.join(" + ")
    }

    pub fn path_normal_form(&self, p: &Path) -> Element {
        match self.path_index.get(p) {
            Some(&i) => self.normal_forms[i].clone(),
            None => Element::zero(),
        }
    }

    /// Normal form of a raw combination of paths.
    pub fn normal_form(&self, terms: &[(Scalar, Path)]) -> Element {
        let mut e = Element::zero();
        for (c, p) in terms {
            e.add_scaled(c, &self.path_normal_form(p));
        }
        e
    }

    /// Product of two basis paths.
    pub fn product(&self, i: usize, j: usize) -> Element {
        match self.basis[i].then(&self.basis[j]) {
            Some(p) => self.path_normal_form(&p),
            None => Element::zero(),
        }
    }

    pub fn multiply(&self, u: &Element, v: &Element) -> Element {
        let mut out = Element::zero();
        for (&i, a) in u.terms() {
            for (&j, b) in v.terms() {
                let p = self.product(i, j);
                if !p.is_zero() {
                    out.add_scaled(&(a * b), &p);
                }
            }
        }
        out
    }

    pub fn element_from_path(&self, p: &Path) -> Element {
        self.path_normal_form(p)
    }

    pub fn to_vector(&self, e: &Element) -> Vector {
        let mut v = crate::linalg::zero_vector(self.field(), self.dim());
        for (&i, c) in e.terms() {
            v[i] = c.clone();
        }
        v
    }

    pub fn from_vector(&self, v: &[Scalar]) -> Element {
        let mut e = Element::zero();
        for (i, c) in v.iter().enumerate() {
            e.add_term(i, c.clone());
        }
        e
    }

    /// `J^k` as a subspace of `Λ`: the span of normal forms of all paths of
    /// length at least `k`.
    pub fn radical_power(&self, k: usize) -> Subspace {
        let vectors = self
            .paths
            .iter()
            .enumerate()
            .filter(|(_, p)| p.len() >= k)
            .map(|(i, _)| &self.normal_forms[i])
            .filter(|e| !e.is_zero())
            .map(|e| self.to_vector(e));
        Subspace::span(self.field(), self.dim(), vectors)
    }

    /// For a path whose normal form is `c * b` with `b` a basis path, returns `(b, c)`.
    pub fn scalar_class(&self, p: &Path) -> Option<(usize, Scalar)> {
        let nf = self.path_normal_form(p);
        nf.as_monomial().map(|(i, c)| (i, c.clone()))
    }

    /// All enumerated paths (length at most N) in path order.
    pub fn all_paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn loop_count(&self, x: usize) -> usize {
        self.quiver().loops_at(x).count()
    }
}

fn add_to_row(row: &mut Row, i: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match row.get_mut(&i) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                row.remove(&i);
            }
        }
        None => {
            row.insert(i, c);
        }
    }
}

fn insert_row(pivots: &mut HashMap<usize, Row>, mut row: Row) {
    loop {
        let Some((&lead, c)) = row.iter().next_back() else {
            return;
        };
        match pivots.get(&lead) {
            Some(prow) => {
                let c = -c;
                for (&k, v) in prow {
                    add_to_row(&mut row, k, &c * v);
                }
            }
            None => {
                let inv = c.inv().expect("lead is nonzero");
                if !inv.is_one() {
                    for v in row.values_mut() {
                        *v = &*v * &inv;
                    }
                }
                pivots.insert(lead, row);
                return;
            }
        }
    }
}

/// All paths of length at most `n`, sorted in path order.
fn enumerate_paths(q: &Quiver, n: usize) -> Result<Vec<Path>> {
    let mut layer: Vec<Path> = (0..q.vertex_count()).map(Path::trivial).collect();
    let mut all = layer.clone();
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &layer {
            for a in q.arrows_from(p.target()) {
                next.push(p.push(a, q.arrow(a).target));
            }
        }
        if all.len() + next.len() > PATH_LIMIT {
            return Err(Error::TooLarge(format!("more than {PATH_LIMIT} paths up to length {n}")));
        }
        all.extend(next.iter().cloned());
        layer = next;
    }
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn loopnil(k: usize) -> AlgebraBasis {
        let q = Quiver::new(["x"], [("a", "x", "x")]).unwrap();
        let rel = Relation::Monomial(q.path(&vec![0; k]).unwrap());
        AlgebraBasis::build(&Presentation::new(q, vec![rel], k, Field::Rational).unwrap()).unwrap()
    }

    #[test]
    fn truncated_polynomial() {
        let a = loopnil(3);
        assert_eq!(a.dim(), 3);
        let alpha = a.basis_index(&a.quiver().parse_path("a").unwrap()).unwrap();
        let alpha2 = a.basis_index(&a.quiver().parse_path("a.a").unwrap()).unwrap();
        assert!(a.product(alpha, alpha2).is_zero());
        assert_eq!(a.radical_power(1).dim(), 2);
        assert_eq!(a.radical_power(2).dim(), 1);
        assert!(a.radical_power(3).is_zero());
    }

    #[test]
    fn bound_too_small() {
        let q = Quiver::new(["x"], [("a", "x", "x")]).unwrap();
        let rel = Relation::Monomial(q.parse_path("a.a.a").unwrap());
        let p = Presentation::new(q, vec![rel], 2, Field::Rational).unwrap();
        assert!(matches!(AlgebraBasis::build(&p), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn binomial_rewrites_larger_path() {
        // a.a = 2 b.c with b.c longer in arrow order, so b.c rewrites.
        let q = Quiver::new(["x", "y"], [("a", "x", "x"), ("b", "x", "y"), ("c", "y", "x")]).unwrap();
        let aa = q.parse_path("a.a").unwrap();
        let bc = q.parse_path("b.c").unwrap();
        let two = Field::Rational.from_i64(2);
        let mut rels = vec![Relation::Binomial { left: aa.clone(), right: bc.clone(), coefficient: two }];
        for z in ["a.b", "c.a", "c.b", "a.a.a"] {
            rels.push(Relation::Monomial(q.parse_path(z).unwrap()));
        }
        let a = AlgebraBasis::build(&Presentation::new(q, rels, 4, Field::Rational).unwrap()).unwrap();
        assert!(a.basis_index(&aa).is_some());
        assert!(a.basis_index(&bc).is_none());
        let (b, c) = a.scalar_class(&bc).unwrap();
        assert_eq!(b, a.basis_index(&aa).unwrap());
        assert_eq!(c.to_string(), "1/2");
    }
}
