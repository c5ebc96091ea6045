//! Quivers, paths and presentations `kQ/I`.
//!
//! Paths compose left to right: `a.b` is `a` followed by `b`, so the target
//! of `a` must equal the source of `b`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, source, target)` triples.
    pub fn new<V, A, S>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator<Item = S>,
        A: IntoIterator<Item = (S, S, S)>,
        S: Into<String>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(Error::DuplicateName(v.clone()));
            }
        }
        let mut q = Quiver { vertices, arrows: Vec::new(), vertex_index, arrow_index: HashMap::new() };
        for (name, s, t) in arrows {
            let name: String = name.into();
            if q.vertex_index.contains_key(&name) || q.arrow_index.contains_key(&name) {
                return Err(Error::DuplicateName(name));
            }
            let source = q.vertex(&s.into())?;
            let target = q.vertex(&t.into())?;
            q.arrow_index.insert(name.clone(), q.arrows.len());
            q.arrows.push(Arrow { name, source, target });
        }
        Ok(q)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex(&self, name: &str) -> Result<usize> {
        self.vertex_index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn arrow_named(&self, name: &str) -> Result<usize> {
        self.arrow_index.get(name).copied().ok_or_else(|| Error::UnknownArrow(name.to_string()))
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn loops_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows_from(v).filter(move |&a| self.arrows[a].target == v)
    }

    /// Builds a path from arrow indices, checking composability.
    pub fn path(&self, arrows: &[usize]) -> Result<Path> {
        let Some(&first) = arrows.first() else {
            return Err(Error::NotComposable("empty arrow list; use Path::trivial".into()));
        };
        let mut t = self.arrows[first].source;
        for &a in arrows {
            let arrow = &self.arrows[a];
            if arrow.source != t {
                return Err(Error::NotComposable(format!(
                    "`{}` does not start at `{}`",
                    arrow.name, self.vertices[t]
                )));
            }
            t = arrow.target;
        }
        Ok(Path { source: self.arrows[first].source, target: t, arrows: arrows.to_vec() })
    }

    /// Parses `a.b.c` or the trivial path `e[x]`.
    pub fn parse_path(&self, text: &str) -> Result<Path> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix("e[").and_then(|r| r.strip_suffix(']')) {
            return Ok(Path::trivial(self.vertex(inner.trim())?));
        }
        let arrows = text
            .split('.')
            .map(|n| self.arrow_named(n.trim()))
            .collect::<Result<Vec<_>>>()?;
        self.path(&arrows)
    }

    pub fn display_path(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            format!("e[{}]", self.vertices[p.source])
        } else {
            p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect::<Vec<_>>().join(".")
        }
    }
}

/// A path in a quiver, possibly trivial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    source: usize,
    target: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, or `None` when the endpoints differ.
    pub fn then(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    /// Extends by one arrow whose source is already known to match.
    pub(crate) fn push(&self, arrow: usize, target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        Path { source: self.source, target, arrows }
    }

    /// The subpath made of arrows `start..end`; `vertex_at` gives its source.
    pub fn subpath(&self, q: &Quiver, start: usize, end: usize) -> Path {
        if start == end {
            let v = if start == 0 { self.source } else { q.arrow(self.arrows[start - 1]).target };
            return Path::trivial(v);
        }
        let s = q.arrow(self.arrows[start]).source;
        let t = q.arrow(self.arrows[end - 1]).target;
        Path { source: s, target: t, arrows: self.arrows[start..end].to_vec() }
    }

    pub fn contains_subpath(&self, needle: &Path) -> bool {
        if needle.is_trivial() {
            return false;
        }
        self.arrows.windows(needle.len()).any(|w| w == needle.arrows.as_slice())
    }

    /// `true` when the path is `a^k` for a single loop `a` and `k >= 1`.
    pub fn loop_power(&self) -> Option<(usize, usize)> {
        let &first = self.arrows.first()?;
        if self.source == self.target && self.arrows.iter().all(|&a| a == first) {
            Some((first, self.arrows.len()))
        } else {
            None
        }
    }
}

/// Path order: length first, then lexicographic in arrow declaration order,
/// then by endpoints (which only matters for trivial paths).
impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        self.arrows
            .len()
            .cmp(&other.arrows.len())
            .then_with(|| self.arrows.cmp(&other.arrows))
            .then_with(|| self.source.cmp(&other.source))
            .then_with(|| self.target.cmp(&other.target))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A generator of the relation ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Monomial(Path),
    /// `left - coefficient * right`
    Binomial { left: Path, right: Path, coefficient: Scalar },
}

impl Relation {
    pub fn paths(&self) -> Vec<&Path> {
        match self {
            Relation::Monomial(p) => vec![p],
            Relation::Binomial { left, right, .. } => vec![left, right],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<Relation>,
    bound: usize,
    field: Field,
    name: Option<String>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<Relation>, bound: usize, field: Field) -> Result<Self> {
        if quiver.vertex_count() == 0 {
            return Err(Error::EmptyQuiver);
        }
        if bound < 2 {
            return Err(Error::NotAdmissible(format!("nilpotency bound {bound} is below 2")));
        }
        for r in &relations {
            for p in r.paths() {
                if p.len() < 2 {
                    return Err(Error::NotAdmissible(format!(
                        "relation path `{}` has length below 2",
                        quiver.display_path(p)
                    )));
                }
            }
            if let Relation::Binomial { left, right, coefficient } = r {
                if left.source != right.source || left.target != right.target {
                    return Err(Error::MalformedRelation(format!(
                        "`{}` and `{}` are not parallel",
                        quiver.display_path(left),
                        quiver.display_path(right)
                    )));
                }
                if left == right {
                    return Err(Error::MalformedRelation(format!(
                        "binomial with equal sides `{}`",
                        quiver.display_path(left)
                    )));
                }
                if coefficient.is_zero() || coefficient.field() != field {
                    return Err(Error::MalformedRelation(format!(
                        "coefficient {coefficient} must be a nonzero element of the {field} field"
                    )));
                }
            }
        }
        Ok(Presentation { quiver, relations, bound, field, name: None })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn with_bound(&self, bound: usize) -> Result<Self> {
        let mut p = Presentation::new(self.quiver.clone(), self.relations.clone(), bound, self.field)?;
        p.name = self.name.clone();
        Ok(p)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e{}", self.source)
        } else {
            let names: Vec<String> = self.arrows.iter().map(|a| format!("#{a}")).collect();
            write!(f, "{}", names.join("."))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::new(["x", "y"], [("a", "x", "y")]).unwrap()
    }

    #[test]
    fn duplicate_and_dangling_names() {
        assert_eq!(
            Quiver::new(["x", "x"], Vec::<(&str, &str, &str)>::new()),
            Err(Error::DuplicateName("x".into()))
        );
        assert_eq!(Quiver::new(["x"], [("a", "x", "y")]), Err(Error::UnknownVertex("y".into())));
    }

    #[test]
    fn composition_is_left_to_right() {
        let q = Quiver::new(["x", "y", "z"], [("a", "x", "y"), ("b", "y", "z")]).unwrap();
        let p = q.parse_path("a.b").unwrap();
        assert_eq!((p.source(), p.target()), (0, 2));
        assert!(q.parse_path("b.a").is_err());
        assert_eq!(q.display_path(&p), "a.b");
        assert_eq!(q.display_path(&q.parse_path("e[y]").unwrap()), "e[y]");
    }

    #[test]
    fn path_order() {
        let q = Quiver::new(["x"], [("a", "x", "x"), ("b", "x", "x")]).unwrap();
        let aa = q.parse_path("a.a").unwrap();
        let ab = q.parse_path("a.b").unwrap();
        let b = q.parse_path("b").unwrap();
        assert!(b < aa && aa < ab);
        assert!(Path::trivial(0) < b);
    }

    #[test]
    fn relations_are_validated() {
        let q = a2();
        let a = q.parse_path("a").unwrap();
        assert!(matches!(
            Presentation::new(q.clone(), vec![Relation::Monomial(a)], 2, Field::Rational),
            Err(Error::NotAdmissible(_))
        ));
        assert!(Presentation::new(q.clone(), vec![], 1, Field::Rational).is_err());
        assert_eq!(
            Presentation::new(Quiver::new(Vec::<&str>::new(), []).unwrap(), vec![], 2, Field::Rational),
            Err(Error::EmptyQuiver)
        );
    }
}
