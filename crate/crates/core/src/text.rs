//! The line-oriented `noloopwb/1` text format for algebras, diagrams and
//! filtration chains.
//!
//! ```text
//! noloopwb/1
//! [field]
//! rational
//! [vertices]
//! x y
//! [arrows]
//! a: x -> y
//! [relations]
//! zero: a.b
//! equal: a.a = (3/2) b.c
//! [bound]
//! 3
//! ```
//!
//! `#` starts a comment. Trivial paths are written `e[x]`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::algebra::{AlgebraBasis, Element};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::quiver::{Path, Presentation, Quiver, Relation};

pub const HEADER: &str = "noloopwb/1";

/// A parsed algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub presentation: Presentation,
    /// `[meta]` entries in file order.
    pub meta: Vec<(String, String)>,
    /// `[expect]` entries in file order.
    pub expect: Vec<(String, String)>,
}

impl AlgebraFile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

/// A parsed diagram file; the functor targets stay textual until an algebra
/// is at hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramFile {
    pub quiver: Quiver,
    pub zero: Vec<Path>,
    pub equal: Vec<(Path, Path)>,
    /// `(diagram arrow, algebra path)`
    pub arrow_map: Vec<(String, String)>,
    /// `(diagram vertex, algebra vertex)`
    pub vertex_map: Vec<(String, String)>,
    pub meta: Vec<(String, String)>,
    pub expect: Vec<(String, String)>,
}

fn perr(line: usize, reason: impl Into<String>) -> Error {
    Error::Parse { line, reason: reason.into() }
}

/// `(section, header line, [(line number, content)])`.
type Section = (String, usize, Vec<(usize, String)>);

/// Splits a file into `(section, [(line number, content)])` blocks.
fn sections(text: &str) -> Result<Vec<Section>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim().to_string()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, h)) if h == HEADER => {}
        Some((n, h)) => return Err(perr(n, format!("expected header `{HEADER}`, found `{h}`"))),
        None => return Err(perr(1, "empty file")),
    }
    let mut out: Vec<Section> = Vec::new();
    for (n, l) in lines {
        if let Some(name) = l.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            if out.iter().any(|(s, _, _)| s == name) {
                return Err(perr(n, format!("duplicate section [{name}]")));
            }
            out.push((name.to_string(), n, Vec::new()));
        } else {
            match out.last_mut() {
                Some((_, _, body)) => body.push((n, l)),
                None => return Err(perr(n, "content before the first section")),
            }
        }
    }
    Ok(out)
}

fn parse_key_value(n: usize, l: &str) -> Result<(String, String)> {
    let (k, v) = l.split_once(':').ok_or_else(|| perr(n, format!("expected `key: value`, found `{l}`")))?;
    Ok((k.trim().to_string(), v.trim().to_string()))
}

fn parse_field(n: usize, l: &str) -> Result<Field> {
    let words: Vec<&str> = l.split_whitespace().collect();
    match words.as_slice() {
        ["rational"] => Ok(Field::Rational),
        ["prime", p] => {
            let p: u64 = p.parse().map_err(|_| perr(n, format!("bad prime `{p}`")))?;
            Field::prime(p).map_err(|e| perr(n, e.to_string()))
        }
        _ => Err(perr(n, format!("unknown field `{l}`"))),
    }
}

pub fn parse_scalar(field: Field, text: &str) -> std::result::Result<Scalar, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| format!("bad scalar `{text}`"))?;
    let den: BigInt = den.parse().map_err(|_| format!("bad scalar `{text}`"))?;
    field.from_fraction(&num, &den).map_err(|e| e.to_string())
}

/// Splits `(c) path` into the coefficient text and the path text.
fn split_coefficient(text: &str) -> (Option<&str>, &str) {
    let t = text.trim();
    if let Some(rest) = t.strip_prefix('(') {
        if let Some((c, p)) = rest.split_once(')') {
            return (Some(c), p.trim());
        }
    }
    (None, t)
}

fn parse_quiver(
    vertices: &[(usize, String)],
    arrows: &[(usize, String)],
) -> Result<Quiver> {
    let mut names: Vec<String> = Vec::new();
    for (n, l) in vertices {
        for v in l.split_whitespace() {
            if names.iter().any(|x| x == v) {
                return Err(perr(*n, format!("duplicate vertex `{v}`")));
            }
            names.push(v.to_string());
        }
    }
    let mut triples: Vec<(String, String, String)> = Vec::new();
    for (n, l) in arrows {
        let (name, ends) = l.split_once(':').ok_or_else(|| perr(*n, "expected `name: source -> target`"))?;
        let (s, t) = ends.split_once("->").ok_or_else(|| perr(*n, "expected `source -> target`"))?;
        let (name, s, t) = (name.trim(), s.trim(), t.trim());
        if name.is_empty() || name.contains(['.', '[', ']', '(', ')']) || name.contains(char::is_whitespace) {
            return Err(perr(*n, format!("bad arrow name `{name}`")));
        }
        if names.iter().any(|x| x == name) || triples.iter().any(|(x, _, _)| x == name) {
            return Err(perr(*n, format!("duplicate name `{name}`")));
        }
        for v in [s, t] {
            if !names.iter().any(|x| x == v) {
                return Err(perr(*n, format!("unknown vertex `{v}`")));
            }
        }
        triples.push((name.into(), s.into(), t.into()));
    }
    Quiver::new(names, triples).map_err(|e| perr(0, e.to_string()))
}

fn parse_path_at(q: &Quiver, n: usize, text: &str) -> Result<Path> {
    q.parse_path(text).map_err(|e| perr(n, e.to_string()))
}

fn section<'a>(
    secs: &'a [Section],
    name: &str,
) -> Option<(usize, &'a [(usize, String)])> {
    secs.iter().find(|(s, _, _)| s == name).map(|(_, n, b)| (*n, b.as_slice()))
}

fn check_known(secs: &[Section], allowed: &[&str]) -> Result<()> {
    for (s, n, _) in secs {
        if !allowed.contains(&s.as_str()) {
            return Err(perr(*n, format!("unknown section [{s}]")));
        }
    }
    Ok(())
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile> {
    let secs = sections(text)?;
    check_known(&secs, &["meta", "field", "vertices", "arrows", "relations", "bound", "expect"])?;
    let field = match section(&secs, "field") {
        Some((_, [(n, l)])) => parse_field(*n, l)?,
        Some((n, _)) => return Err(perr(n, "[field] takes exactly one line")),
        None => Field::Rational,
    };
    let vertices = section(&secs, "vertices").map(|s| s.1).unwrap_or(&[]);
    let arrows = section(&secs, "arrows").map(|s| s.1).unwrap_or(&[]);
    let q = parse_quiver(vertices, arrows)?;
    if q.vertex_count() == 0 {
        return Err(perr(1, "quiver has no vertices"));
    }
    let mut relations = Vec::new();
    for (n, l) in section(&secs, "relations").map(|s| s.1).unwrap_or(&[]) {
        let n = *n;
        let (kind, body) = parse_key_value(n, l)?;
        let rel = match kind.as_str() {
            "zero" => Relation::Monomial(parse_path_at(&q, n, &body)?),
            "equal" => {
                let (lhs, rhs) = body.split_once('=').ok_or_else(|| perr(n, "expected `left = (c) right`"))?;
                if rhs.contains('=') || rhs.contains('+') || lhs.contains('+') {
                    return Err(perr(n, "only two-term relations are supported"));
                }
                let left = parse_path_at(&q, n, lhs)?;
                let (c, r) = split_coefficient(rhs);
                let right = parse_path_at(&q, n, r)?;
                let coefficient = match c {
                    Some(c) => parse_scalar(field, c).map_err(|e| perr(n, e))?,
                    None => field.one(),
                };
                if coefficient.is_zero() {
                    return Err(perr(n, "coefficient must be nonzero"));
                }
                if left.source() != right.source() || left.target() != right.target() {
                    return Err(perr(n, "binomial joins non-parallel paths"));
                }
                if left == right {
                    return Err(perr(n, "binomial has equal sides"));
                }
                Relation::Binomial { left, right, coefficient }
            }
            k => return Err(perr(n, format!("unknown relation kind `{k}`"))),
        };
        if rel.paths().iter().any(|p| p.len() < 2) {
            return Err(perr(n, "relation paths must have length at least 2"));
        }
        relations.push(rel);
    }
    let (bn, bound) = match section(&secs, "bound") {
        Some((_, [(n, l)])) => (*n, l.parse::<usize>().map_err(|_| perr(*n, format!("bad bound `{l}`")))?),
        Some((n, _)) => return Err(perr(n, "[bound] takes exactly one line")),
        None => return Err(perr(1, "missing [bound] section")),
    };
    let presentation = Presentation::new(q, relations, bound, field).map_err(|e| perr(bn, e.to_string()))?;
    let kv = |name| -> Result<Vec<(String, String)>> {
        section(&secs, name)
            .map(|s| s.1)
            .unwrap_or(&[])
            .iter()
            .map(|(n, l)| parse_key_value(*n, l))
            .collect()
    };
    let meta = kv("meta")?;
    let expect = kv("expect")?;
    let presentation = match meta.iter().find(|(k, _)| k == "name") {
        Some((_, name)) => presentation.with_name(name.clone()),
        None => presentation,
    };
    Ok(AlgebraFile { presentation, meta, expect })
}

/// Canonical text of a presentation; `parse_algebra` inverts it.
pub fn write_algebra(p: &Presentation, meta: &[(String, String)]) -> String {
    let q = p.quiver();
    let mut out = format!("{HEADER}\n");
    if !meta.is_empty() {
        out.push_str("[meta]\n");
        for (k, v) in meta {
            out.push_str(&format!("{k}: {v}\n"));
        }
    }
    out.push_str(&format!("[field]\n{}\n[vertices]\n{}\n[arrows]\n", p.field(), q.vertices().join(" ")));
    for a in q.arrows() {
        out.push_str(&format!("{}: {} -> {}\n", a.name, q.vertex_name(a.source), q.vertex_name(a.target)));
    }
    out.push_str("[relations]\n");
    for r in p.relations() {
        match r {
            Relation::Monomial(m) => out.push_str(&format!("zero: {}\n", q.display_path(m))),
            Relation::Binomial { left, right, coefficient } => out.push_str(&format!(
                "equal: {} = ({coefficient}) {}\n",
                q.display_path(left),
                q.display_path(right)
            )),
        }
    }
    out.push_str(&format!("[bound]\n{}\n", p.bound()));
    out
}

pub fn parse_diagram(text: &str) -> Result<DiagramFile> {
    let secs = sections(text)?;
    check_known(&secs, &["meta", "vertices", "arrows", "relations", "functor", "expect"])?;
    let vertices = section(&secs, "vertices").map(|s| s.1).unwrap_or(&[]);
    let arrows = section(&secs, "arrows").map(|s| s.1).unwrap_or(&[]);
    let quiver = parse_quiver(vertices, arrows)?;
    let mut zero = Vec::new();
    let mut equal = Vec::new();
    for (n, l) in section(&secs, "relations").map(|s| s.1).unwrap_or(&[]) {
        let (kind, body) = parse_key_value(*n, l)?;
        match kind.as_str() {
            "zero" => zero.push(parse_path_at(&quiver, *n, &body)?),
            "equal" => {
                let (a, b) = body.split_once('=').ok_or_else(|| perr(*n, "expected `left = right`"))?;
                let (a, b) = (parse_path_at(&quiver, *n, a)?, parse_path_at(&quiver, *n, b)?);
                if a.source() != b.source() || a.target() != b.target() {
                    return Err(perr(*n, "commutativity relation joins non-parallel paths"));
                }
                equal.push((a, b));
            }
            k => return Err(perr(*n, format!("unknown relation kind `{k}`"))),
        }
    }
    let mut arrow_map = Vec::new();
    let mut vertex_map = Vec::new();
    for (n, l) in section(&secs, "functor").map(|s| s.1).unwrap_or(&[]) {
        let (kind, body) = parse_key_value(*n, l)?;
        if kind != "maps-to" {
            return Err(perr(*n, format!("expected `maps-to:`, found `{kind}`")));
        }
        let (from, to) = body.split_once("->").ok_or_else(|| perr(*n, "expected `maps-to: item -> target`"))?;
        let (from, to) = (from.trim().to_string(), to.trim().to_string());
        if quiver.arrow_named(&from).is_ok() {
            if arrow_map.iter().any(|(f, _)| *f == from) {
                return Err(perr(*n, format!("arrow `{from}` mapped twice")));
            }
            arrow_map.push((from, to));
        } else if quiver.vertex(&from).is_ok() {
            if vertex_map.iter().any(|(f, _)| *f == from) {
                return Err(perr(*n, format!("vertex `{from}` mapped twice")));
            }
            vertex_map.push((from, to));
        } else {
            return Err(perr(*n, format!("`{from}` is not a diagram vertex or arrow")));
        }
    }
    let kv = |name| -> Result<Vec<(String, String)>> {
        section(&secs, name).map(|s| s.1).unwrap_or(&[]).iter().map(|(n, l)| parse_key_value(*n, l)).collect()
    };
    let meta = kv("meta")?;
    let expect = kv("expect")?;
    Ok(DiagramFile { quiver, zero, equal, arrow_map, vertex_map, meta, expect })
}

/// Parses an element such as `a.b + (-2) c.d` of the algebra.
pub fn parse_element(a: &AlgebraBasis, text: &str) -> std::result::Result<Element, String> {
    let t = text.trim();
    if t == "0" {
        return Ok(Element::zero());
    }
    let mut e = Element::zero();
    for term in t.split('+') {
        let (c, p) = split_coefficient(term);
        let c = match c {
            Some(c) => parse_scalar(a.field(), c)?,
            None => a.field().one(),
        };
        let path = a.quiver().parse_path(p).map_err(|e| e.to_string())?;
        e.add_scaled(&c, &a.element_from_path(&path));
    }
    Ok(e)
}

/// Parses a `[chain]` file: one term per line, each a comma-separated list of
/// generators; `0` is the zero module.
pub fn parse_chain(a: &AlgebraBasis, text: &str) -> Result<Vec<Vec<Element>>> {
    let secs = sections(text)?;
    check_known(&secs, &["meta", "chain"])?;
    let (_, body) = section(&secs, "chain").ok_or_else(|| perr(1, "missing [chain] section"))?;
    body.iter()
        .map(|(n, l)| {
            if l.trim() == "0" {
                return Ok(Vec::new());
            }
            l.split(',').map(|g| parse_element(a, g).map_err(|e| perr(*n, e))).collect()
        })
        .collect()
}

/// `[expect]` entries as a map, for lookups.
pub fn expectations(f: &AlgebraFile) -> BTreeMap<&str, &str> {
    f.expect.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect()
}

impl DiagramFile {
    pub fn meta(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LOOPNIL3: &str = "noloopwb/1\n[field]\nrational\n[vertices]\nx\n[arrows]\na: x -> x\n[relations]\nzero: a.a.a\n[bound]\n3\n";

    #[test]
    fn parses_loopnil3() {
        let f = parse_algebra(LOOPNIL3).unwrap();
        let p = &f.presentation;
        assert_eq!(p.quiver().vertex_count(), 1);
        assert_eq!(p.quiver().arrows().len(), 1);
        assert_eq!(p.relations().len(), 1);
        assert_eq!(write_algebra(p, &[]), LOOPNIL3);
    }

    #[test]
    fn line_numbered_errors() {
        let bad = "noloopwb/1\n[vertices]\nx y\n[arrows]\na: x -> y\nb: y -> y\n[relations]\nequal: a.b = b.b\n[bound]\n3\n";
        assert!(matches!(parse_algebra(bad), Err(Error::Parse { line: 8, .. })));
        let dup = "noloopwb/1\n[vertices]\nx x\n[bound]\n2\n";
        assert!(matches!(parse_algebra(dup), Err(Error::Parse { line: 3, .. })));
        let dangling = "noloopwb/1\n[vertices]\nx\n[arrows]\na: x -> q\n[bound]\n2\n";
        assert!(matches!(parse_algebra(dangling), Err(Error::Parse { line: 5, .. })));
        let short = "noloopwb/1\n[vertices]\nx\n[arrows]\na: x -> x\n[relations]\nzero: a\n[bound]\n2\n";
        assert!(matches!(parse_algebra(short), Err(Error::Parse { line: 7, .. })));
        let three = "noloopwb/1\n[vertices]\nx\n[arrows]\na: x -> x\nb: x -> x\n[relations]\nequal: a.a = b.b + a.b\n[bound]\n3\n";
        assert!(parse_algebra(three).is_err());
    }

    #[test]
    fn coefficients() {
        let t = "noloopwb/1\n[field]\nprime 5\n[vertices]\nx\n[arrows]\na: x -> x\nb: x -> x\n[relations]\nequal: a.a = (1/2) b.b\n[bound]\n2\n";
        let f = parse_algebra(t).unwrap();
        match &f.presentation.relations()[0] {
            Relation::Binomial { coefficient, .. } => assert_eq!(*coefficient, Field::Prime(5).from_i64(3)),
            r => panic!("unexpected {r:?}"),
        }
    }
}
