#![allow(dead_code)]

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use noloop_core::field::Scalar;
use noloop_core::module::{RightModule, Submodule};
use noloop_core::{corpus, AlgebraBasis, Path, Presentation, Relation};

pub fn load(name: &str) -> Arc<AlgebraBasis> {
    let f = corpus::algebra(name).expect("known entry").expect("parses");
    Arc::new(AlgebraBasis::build(&f.presentation).expect("builds"))
}

pub fn all_names() -> Vec<&'static str> {
    corpus::ALGEBRAS.iter().map(|(n, _)| *n).collect()
}

pub fn path(a: &AlgebraBasis, text: &str) -> Path {
    a.quiver().parse_path(text).unwrap()
}

pub fn vertex(a: &AlgebraBasis, name: &str) -> usize {
    a.quiver().vertex(name).unwrap()
}

pub fn px(a: &Arc<AlgebraBasis>, x: &str) -> Arc<RightModule> {
    Arc::new(RightModule::projective(a, vertex(a, x)).unwrap())
}

pub fn gen(p: &Arc<RightModule>, paths: &[&str]) -> Submodule {
    let a = p.algebra().clone();
    let paths: Vec<Path> = paths.iter().map(|t| path(&a, t)).collect();
    Submodule::generated_by_paths(p, &paths).unwrap()
}

/// Independent normal form oracle for binomial presentations: explores the
/// class of a path under substitution of relation sides inside longer paths.
/// Returns the smallest path of the class with its coefficient, or `None`
/// when the class is zero.
pub fn oracle_class(p: &Presentation, start: &Path) -> Option<(Path, Scalar)> {
    let q = p.quiver();
    let n = p.bound();
    let field = p.field();
    let mut seen: HashMap<Vec<usize>, Scalar> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert(start.arrows().to_vec(), field.one());
    queue.push_back(start.arrows().to_vec());
    // `start = coeff * member`
    while let Some(cur) = queue.pop_front() {
        let c = seen[&cur].clone();
        if cur.len() >= n {
            return None;
        }
        for rel in p.relations() {
            let sides: Vec<(&Path, &Path, Scalar)> = match rel {
                Relation::Monomial(m) => {
                    if contains(&cur, m.arrows()) {
                        return None;
                    }
                    continue;
                }
                // left = coefficient * right
                Relation::Binomial { left, right, coefficient } => vec![
                    (left, right, coefficient.clone()),
                    (right, left, coefficient.inv().unwrap()),
                ],
            };
            for (from, to, k) in sides {
                let f = from.arrows();
                if f.len() > cur.len() {
                    continue;
                }
                for i in 0..=cur.len() - f.len() {
                    if &cur[i..i + f.len()] != f {
                        continue;
                    }
                    let mut next = cur[..i].to_vec();
                    next.extend_from_slice(to.arrows());
                    next.extend_from_slice(&cur[i + f.len()..]);
                    // cur = c' * next where c' = k, so start = c * k * next
                    let coeff = &c * &k;
                    match seen.get(&next) {
                        Some(old) if *old != coeff => return None,
                        Some(_) => {}
                        None => {
                            seen.insert(next.clone(), coeff);
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
    }
    let members: Vec<Path> = seen
        .keys()
        .map(|arrows| if arrows.is_empty() { start.clone() } else { q.path(arrows).unwrap() })
        .collect();
    let min = members.into_iter().min().unwrap();
    let c = seen[min.arrows()].clone();
    Some((min, c))
}

fn contains(hay: &[usize], needle: &[usize]) -> bool {
    needle.len() <= hay.len() && hay.windows(needle.len()).any(|w| w == needle)
}
