//! Dense exact linear algebra over a [`Field`].
//!
//! Subspaces are stored as reduced row echelon bases, so two subspaces are
//! equal exactly when their stored rows are equal.

use crate::field::{Field, Scalar};

pub type Vector = Vec<Scalar>;

pub fn zero_vector(field: Field, n: usize) -> Vector {
    vec![field.zero(); n]
}

pub fn unit_vector(field: Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vector(field, n);
    v[i] = field.one();
    v
}

pub fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Scalar], c: &Scalar, v: &[Scalar]) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a = &*a + &(c * b);
        }
    }
}

pub fn scale(v: &mut [Scalar], c: &Scalar) {
    for a in v.iter_mut() {
        if !a.is_zero() {
            *a = &*a * c;
        }
    }
}

/// Row vector times matrix (given by its rows).
pub fn vec_mat(field: Field, v: &[Scalar], rows: &[Vector], ncols: usize) -> Vector {
    let mut out = zero_vector(field, ncols);
    for (c, row) in v.iter().zip(rows) {
        axpy(&mut out, c, row);
    }
    out
}

/// A linear subspace of `field^n` in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let rows = (0..ambient).map(|i| unit_vector(field, ambient, i)).collect();
        Subspace { field, ambient, rows, pivots: (0..ambient).collect() }
    }

    pub fn span<I: IntoIterator<Item = Vector>>(field: Field, ambient: usize, vectors: I) -> Self {
        let mut s = Subspace::zero(field, ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots; the matching unit vectors span a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Subtracts the projection onto the stored rows; the result vanishes at
    /// every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let c = -&w[p];
                axpy(&mut w, &c, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        is_zero(&self.reduce(v))
    }

    /// Coordinates of `v` with respect to the stored rows, if `v` lies in the
    /// subspace.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vector) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("pivot is nonzero");
        scale(&mut w, &inv);
        for row in &mut self.rows {
            if !row[p].is_zero() {
                let c = -&row[p];
                axpy(row, &c, &w);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        let stacked: Vec<Vector> = self.rows.iter().chain(&other.rows).cloned().collect();
        let k = self.rows.len();
        let vectors = left_kernel(self.field, &stacked, self.ambient)
            .into_iter()
            .map(|c| vec_mat(self.field, &c[..k], &self.rows, self.ambient));
        Subspace::span(self.field, self.ambient, vectors)
    }
}

/// Basis of `{c : c * M = 0}` where `M` is given by its rows.
pub fn left_kernel(field: Field, rows: &[Vector], ncols: usize) -> Vec<Vector> {
    let m = rows.len();
    let mut aug: Vec<(Vector, Vector)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.clone(), unit_vector(field, m, i)))
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(i) = (rank..m).find(|&i| !aug[i].0[col].is_zero()) else {
            continue;
        };
        aug.swap(rank, i);
        let inv = aug[rank].0[col].inv().expect("pivot is nonzero");
        {
            let (a, b) = &mut aug[rank];
            scale(a, &inv);
            scale(b, &inv);
        }
        let (pivot, rest) = aug.split_at_mut(rank + 1);
        let (pa, pb) = &pivot[rank];
        for (a, b) in rest.iter_mut() {
            if !a[col].is_zero() {
                let c = -&a[col];
                axpy(a, &c, pa);
                axpy(b, &c, pb);
            }
        }
        rank += 1;
    }
    aug.into_iter().skip(rank).map(|(_, b)| b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: &[i64]) -> Vector {
        v.iter().map(|&x| Field::Rational.from_i64(x)).collect()
    }

    #[test]
    fn rref_is_canonical() {
        let a = Subspace::span(Field::Rational, 3, [q(&[1, 2, 3]), q(&[2, 4, 7])]);
        let b = Subspace::span(Field::Rational, 3, [q(&[0, 0, 1]), q(&[3, 6, 0])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.free_columns(), vec![1]);
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::span(Field::Rational, 3, [q(&[1, 0, 0]), q(&[0, 1, 0])]);
        let b = Subspace::span(Field::Rational, 3, [q(&[0, 1, 0]), q(&[0, 0, 1])]);
        let c = a.intersect(&b);
        assert_eq!(c, Subspace::span(Field::Rational, 3, [q(&[0, 1, 0])]));
        assert_eq!(a.sum(&b).dim(), 3);
    }

    #[test]
    fn kernel_dimension() {
        let rows = vec![q(&[1, 1]), q(&[2, 2]), q(&[0, 1])];
        let k = left_kernel(Field::Rational, &rows, 2);
        assert_eq!(k.len(), 1);
        assert!(is_zero(&vec_mat(Field::Rational, &k[0], &rows, 2)));
    }

    #[test]
    fn coordinates_round_trip() {
        let s = Subspace::span(Field::Prime(3), 3, [vec![Field::Prime(3).one(); 3]]);
        let v = vec![Field::Prime(3).from_i64(2); 3];
        assert_eq!(s.coordinates(&v).unwrap(), vec![Field::Prime(3).from_i64(2)]);
    }
}
