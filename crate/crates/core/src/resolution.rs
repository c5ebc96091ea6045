//! Projective covers, syzygies and depth-bounded projective dimension.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::AlgebraBasis;

use crate::linalg::{left_kernel, Subspace, Vector};
use crate::module::{RightModule, Submodule};

/// A projective cover `⊕ P_t → M`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub cover: Arc<RightModule>,
    /// Vertex of each indecomposable summand, in order.
    pub tops: Vec<usize>,
    /// Generator in `M` of each summand.
    pub generators: Vec<Vector>,
    /// Image in `M` of each basis vector of the cover.
    pub map: Vec<Vector>,
}

/// Projective cover built on a complement of `rad M` spanned by basis vectors.
pub fn projective_cover(m: &RightModule) -> Cover {
    let a = m.algebra();
    let rad = m.radical_space();
    let mut tops = Vec::new();
    let mut generators = Vec::new();
    let mut parts = Vec::new();
    let mut map = Vec::new();
    for c in rad.free_columns() {
        let t = m.tags()[c];
        let g = m.unit(c);
        let p = RightModule::projective(a, t).expect("tag is a vertex");
        for &b in &p.projective_info().expect("projective").basis {
            map.push(m.act_path(&g, a.basis_path(b)));
        }
        tops.push(t);
        generators.push(g);
        parts.push(p);
    }
    let cover = if parts.len() == 1 {
        parts.pop().expect("one part")
    } else {
        RightModule::direct_sum(a, &parts)
    };
    debug_assert_eq!(map.len(), cover.dim());
    Cover { cover: Arc::new(cover), tops, generators, map }
}

/// The first syzygy as a submodule of the cover.
pub fn syzygy_in_cover(m: &RightModule, cover: &Cover) -> Submodule {
    let kernel = left_kernel(m.field(), &cover.map, m.dim());
    Submodule::from_closed(&cover.cover, Subspace::span(m.field(), cover.cover.dim(), kernel))
}

pub fn syzygy(m: &RightModule) -> RightModule {
    let c = projective_cover(m);
    syzygy_in_cover(m, &c).to_module()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdOutcome {
    /// The projective dimension equals this value.
    Finite(usize),
    /// No resolution of length at most this bound exists.
    Exceeds(usize),
}

impl PdOutcome {
    pub fn is_finite(self) -> bool {
        matches!(self, PdOutcome::Finite(_))
    }
}

impl fmt::Display for PdOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PdOutcome::Finite(d) => write!(f, "Finite({d})"),
            PdOutcome::Exceeds(d) => write!(f, "Exceeds({d})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdReport {
    pub outcome: PdOutcome,
    /// Dimension vectors of `Ω^0 M, Ω^1 M, ...` as computed.
    pub syzygy_dims: Vec<Vec<u64>>,
    /// Multiplicity of each `P_v` in the cover at each step.
    pub cover_counts: Vec<Vec<u64>>,
    /// Whether every syzygy lay in the radical of its cover.
    pub minimal: bool,
    /// First pair `i < j` with `Ω^i M` and `Ω^j M` built from identical blocks.
    pub periodicity: Option<(usize, usize)>,
    /// Number of distinct indecomposable blocks met along the way.
    pub distinct_blocks: usize,
}

impl PdReport {
    /// Alternating sum of the cover dimension vectors, which equals the
    /// dimension vector of `M` for a finite resolution.
    pub fn euler_sum(&self, algebra: &AlgebraBasis) -> Vec<i128> {
        let n = algebra.quiver().vertex_count();
        let mut sum = vec![0i128; n];
        for (i, counts) in self.cover_counts.iter().enumerate() {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            for (v, &c) in counts.iter().enumerate() {
                for &b in &algebra.row_space(v) {
                    sum[algebra.basis_path(b).target()] += sign * c as i128;
                }
            }
        }
        sum
    }
}

type Key = (Vec<usize>, Vec<Vec<Vector>>);

/// Syzygy data per distinct block, computed once.
#[derive(Default)]
struct Memo {
    ids: HashMap<Key, usize>,
    blocks: Vec<RightModule>,
    steps: Vec<Option<(Vec<usize>, Vec<usize>)>>,
    minimal: bool,
}

impl Memo {
    fn intern(&mut self, m: RightModule) -> usize {
        let key = m.key();
        if let Some(&id) = self.ids.get(&key) {
            return id;
        }
        let id = self.blocks.len();
        self.ids.insert(key, id);
        self.blocks.push(m);
        self.steps.push(None);
        id
    }

    fn split(&mut self, m: &RightModule) -> Vec<usize> {
        m.blocks().into_iter().filter(|b| !b.is_zero()).map(|b| self.intern(b)).collect()
    }

    /// Cover tops and syzygy blocks of block `id`.
    fn step(&mut self, id: usize) -> (Vec<usize>, Vec<usize>) {
        if let Some(s) = &self.steps[id] {
            return s.clone();
        }
        let m = self.blocks[id].clone();
        let cover = projective_cover(&m);
        let omega = syzygy_in_cover(&m, &cover);
        let rad = Submodule::radical(&cover.cover);
        self.minimal &= omega.space().is_subspace_of(rad.space());
        let next = self.split(&omega.to_module());
        let s = (cover.tops, next);
        self.steps[id] = Some(s.clone());
        s
    }
}

fn add_count(state: &mut BTreeMap<usize, u64>, id: usize, mult: u64) {
    let e = state.entry(id).or_insert(0);
    *e = e.saturating_add(mult);
}

/// Resolves `m` for at most `depth + 1` steps. `Finite(d)` means `Ω^(d+1) M = 0`
/// and `Ω^d M ≠ 0`; the zero module has `Finite(0)`.
///
/// Syzygies are tracked as multisets of blocks, so repeated summands are
/// resolved once.
pub fn projective_dimension(m: &RightModule, depth: usize) -> PdReport {
    let n = m.algebra().quiver().vertex_count();
    let mut memo = Memo { minimal: true, ..Memo::default() };
    let mut state: BTreeMap<usize, u64> = BTreeMap::new();
    for id in memo.split(m) {
        add_count(&mut state, id, 1);
    }
    let dims_of = |memo: &Memo, state: &BTreeMap<usize, u64>| {
        let mut d = vec![0u64; n];
        for (&id, &k) in state {
            for &t in memo.blocks[id].tags() {
                d[t] = d[t].saturating_add(k);
            }
        }
        d
    };
    let mut syzygy_dims = vec![dims_of(&memo, &state)];
    let mut cover_counts = Vec::new();
    let mut history: Vec<BTreeMap<usize, u64>> = Vec::new();
    let mut periodicity = None;
    let finish = |outcome, syzygy_dims, cover_counts, memo: &Memo, periodicity| PdReport {
        outcome,
        syzygy_dims,
        cover_counts,
        minimal: memo.minimal,
        periodicity,
        distinct_blocks: memo.blocks.len(),
    };
    if state.is_empty() {
        return finish(PdOutcome::Finite(0), syzygy_dims, cover_counts, &memo, periodicity);
    }
    for step in 0..=depth {
        if periodicity.is_none() {
            if let Some(i) = history.iter().position(|h| *h == state) {
                periodicity = Some((i, step));
            }
        }
        history.push(state.clone());
        let mut counts = vec![0u64; n];
        let mut next = BTreeMap::new();
        for (&id, &k) in &state {
            let (tops, blocks) = memo.step(id);
            for t in tops {
                counts[t] = counts[t].saturating_add(k);
            }
            for b in blocks {
                add_count(&mut next, b, k);
            }
        }
        cover_counts.push(counts);
        syzygy_dims.push(dims_of(&memo, &next));
        if next.is_empty() {
            return finish(PdOutcome::Finite(step), syzygy_dims, cover_counts, &memo, periodicity);
        }
        state = next;
    }
    finish(PdOutcome::Exceeds(depth), syzygy_dims, cover_counts, &memo, periodicity)
}
