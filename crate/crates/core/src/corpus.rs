//! Bundled algebras and diagrams.

use crate::error::Result;
use crate::text::{self, AlgebraFile, DiagramFile};

/// `(name, file text)` for every bundled algebra, ordered by name.
pub const ALGEBRAS: &[(&str, &str)] = &[
    ("a2", include_str!("../corpus/a2.alg")),
    ("cleave-witness", include_str!("../corpus/cleave-witness.alg")),
    ("example1", include_str!("../corpus/example1.alg")),
    ("example2-ambient", include_str!("../corpus/example2-ambient.alg")),
    ("kronecker", include_str!("../corpus/kronecker.alg")),
    ("loopnil2", include_str!("../corpus/loopnil2.alg")),
    ("loopnil3", include_str!("../corpus/loopnil3.alg")),
    ("pf-case-1", include_str!("../corpus/pf-case-1.alg")),
    ("pf-case-2", include_str!("../corpus/pf-case-2.alg")),
    ("pf-case-3", include_str!("../corpus/pf-case-3.alg")),
    ("pf2-type2", include_str!("../corpus/pf2-type2.alg")),
];

/// `(name, diagram text, algebra name)` for the bundled diagrams; bare
/// shapes have no algebra.
pub const DIAGRAMS: &[(&str, &str, &str)] = &[
    ("shape-d4", include_str!("../corpus/shape-d4.dia"), ""),
    ("shape-d5", include_str!("../corpus/shape-d5.dia"), ""),
    ("shape-e6", include_str!("../corpus/shape-e6.dia"), ""),
    ("shape-e7", include_str!("../corpus/shape-e7.dia"), ""),
    ("square", include_str!("../corpus/square.dia"), "cleave-witness"),
    ("square-example1", include_str!("../corpus/square-example1.dia"), "example1"),
];

pub fn source(name: &str) -> Option<&'static str> {
    ALGEBRAS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn algebra(name: &str) -> Option<Result<AlgebraFile>> {
    source(name).map(text::parse_algebra)
}

pub fn diagram(name: &str) -> Option<Result<DiagramFile>> {
    DIAGRAMS.iter().find(|(n, _, _)| *n == name).map(|(_, t, _)| text::parse_diagram(t))
}
