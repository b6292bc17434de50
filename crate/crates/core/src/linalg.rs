//! Sparse exact linear algebra: incremental echelon forms, rank, kernels.

use crate::field::Field;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec<S> = Vec<(usize, S)>;

/// `v - c * w`
pub fn sub_scaled<F: Field>(f: &F, v: &[(usize, F::Scalar)], c: &F::Scalar, w: &[(usize, F::Scalar)]) -> SparseVec<F::Scalar> {
    let mut out = Vec::with_capacity(v.len() + w.len());
    let (mut i, mut j) = (0, 0);
    while i < v.len() || j < w.len() {
        if j == w.len() || (i < v.len() && v[i].0 < w[j].0) {
            out.push(v[i].clone());
            i += 1;
        } else if i == v.len() || w[j].0 < v[i].0 {
            out.push((w[j].0, f.neg(&f.mul(c, &w[j].1))));
            j += 1;
        } else {
            let s = f.mul_sub(&v[i].1, c, &w[j].1);
            if !f.is_zero(&s) {
                out.push((v[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn add_scaled<F: Field>(f: &F, v: &[(usize, F::Scalar)], c: &F::Scalar, w: &[(usize, F::Scalar)]) -> SparseVec<F::Scalar> {
    sub_scaled(f, v, &f.neg(c), w)
}

pub fn scale<F: Field>(f: &F, v: &[(usize, F::Scalar)], c: &F::Scalar) -> SparseVec<F::Scalar> {
    if f.is_zero(c) {
        return Vec::new();
    }
    v.iter().map(|(i, a)| (*i, f.mul(a, c))).collect()
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn collect_sparse<F: Field>(f: &F, mut entries: Vec<(usize, F::Scalar)>) -> SparseVec<F::Scalar> {
    entries.sort_by_key(|e| e.0);
    let mut out: SparseVec<F::Scalar> = Vec::with_capacity(entries.len());
    for (i, a) in entries {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = f.add(&last.1, &a),
            _ => out.push((i, a)),
        }
    }
    out.retain(|(_, a)| !f.is_zero(a));
    out
}

pub fn to_dense<F: Field>(f: &F, v: &[(usize, F::Scalar)], len: usize) -> Vec<F::Scalar> {
    let mut d = vec![f.zero(); len];
    for (i, a) in v {
        d[*i] = a.clone();
    }
    d
}

pub fn from_dense<F: Field>(f: &F, d: &[F::Scalar]) -> SparseVec<F::Scalar> {
    d.iter()
        .enumerate()
        .filter(|(_, a)| !f.is_zero(a))
        .map(|(i, a)| (i, a.clone()))
        .collect()
}

/// Column-sparse matrix.
#[derive(Clone, Debug)]
pub struct SparseMatrix<S> {
    pub nrows: usize,
    pub cols: Vec<SparseVec<S>>,
}

impl<S: Clone> SparseMatrix<S> {
    pub fn new(nrows: usize, cols: Vec<SparseVec<S>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.iter().all(|(i, _)| *i < nrows)));
        SparseMatrix { nrows, cols }
    }
    pub fn ncols(&self) -> usize {
        self.cols.len()
    }
    pub fn transpose(&self) -> SparseMatrix<S> {
        let mut rows: Vec<SparseVec<S>> = vec![Vec::new(); self.nrows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, a) in c {
                rows[*i].push((j, a.clone()));
            }
        }
        SparseMatrix { nrows: self.cols.len(), cols: rows }
    }
    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }
}

const NONE: usize = usize::MAX;

/// Incremental row echelon form. Every stored row has leading coefficient 1
/// at its smallest index, and leading indices are distinct.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseVec<F::Scalar>>,
    pivot_row: Vec<usize>,
    combos: Option<Vec<SparseVec<F::Scalar>>>,
    inserted: usize,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F) -> Self {
        Echelon { field: field.clone(), rows: Vec::new(), pivot_row: Vec::new(), combos: None, inserted: 0 }
    }

    /// Records for each row the combination of inserted vectors producing it.
    pub fn tracked(field: &F) -> Self {
        let mut e = Self::new(field);
        e.combos = Some(Vec::new());
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<F::Scalar>] {
        &self.rows
    }

    fn row_at(&self, col: usize) -> Option<usize> {
        match self.pivot_row.get(col) {
            Some(&r) if r != NONE => Some(r),
            _ => None,
        }
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_at(col).is_some()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Eliminates leading entries until the leading index is not a pivot.
    pub fn reduce_lead(&self, mut v: SparseVec<F::Scalar>) -> SparseVec<F::Scalar> {
        while let Some((c, a)) = v.first() {
            match self.row_at(*c) {
                Some(r) => {
                    let a = a.clone();
                    v = sub_scaled(&self.field, &v, &a, &self.rows[r]);
                }
                None => break,
            }
        }
        v
    }

    /// Eliminates every pivot column. The result is the canonical
    /// representative of `v` modulo the row space.
    pub fn reduce_full(&self, mut v: SparseVec<F::Scalar>) -> SparseVec<F::Scalar> {
        let mut k = 0;
        while k < v.len() {
            let c = v[k].0;
            match self.row_at(c) {
                Some(r) => {
                    let a = v[k].1.clone();
                    let head: SparseVec<F::Scalar> = v[..k].to_vec();
                    let tail = sub_scaled(&self.field, &v[k..], &a, &self.rows[r]);
                    v = head;
                    v.extend(tail);
                }
                None => k += 1,
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec<F::Scalar>) -> bool {
        self.reduce_lead(v.clone()).is_empty()
    }

    fn push_row(&mut self, v: SparseVec<F::Scalar>, combo: Option<SparseVec<F::Scalar>>) {
        let inv = self.field.inv(&v[0].1);
        let row = scale(&self.field, &v, &inv);
        let col = row[0].0;
        if self.pivot_row.len() <= col {
            self.pivot_row.resize(col + 1, NONE);
        }
        self.pivot_row[col] = self.rows.len();
        self.rows.push(row);
        if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo) {
            cs.push(scale(&self.field, &c, &inv));
        }
    }

    /// Returns true when `v` was independent of the current rows.
    pub fn insert(&mut self, v: SparseVec<F::Scalar>) -> bool {
        if self.combos.is_some() {
            return self.insert_tracked(v).is_none();
        }
        self.inserted += 1;
        let v = self.reduce_lead(v);
        if v.is_empty() {
            return false;
        }
        self.push_row(v, None);
        true
    }

    /// Tracked insertion. On dependence returns the relation among inserted
    /// vectors (indexed by insertion order) that sums to zero.
    pub fn insert_tracked(&mut self, mut v: SparseVec<F::Scalar>) -> Option<SparseVec<F::Scalar>> {
        let f = self.field.clone();
        let mut combo: SparseVec<F::Scalar> = vec![(self.inserted, f.one())];
        self.inserted += 1;
        let combos = self.combos.as_ref().expect("tracked echelon");
        while let Some((c, a)) = v.first() {
            match self.row_at(*c) {
                Some(r) => {
                    let a = a.clone();
                    v = sub_scaled(&f, &v, &a, &self.rows[r]);
                    combo = sub_scaled(&f, &combo, &a, &combos[r]);
                }
                None => break,
            }
        }
        if v.is_empty() {
            return Some(combo);
        }
        self.push_row(v, Some(combo));
        None
    }

    /// Reduced row echelon basis of the row space, sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec<F::Scalar>> {
        let f = self.field.clone();
        let mut rows = self.rows;
        rows.sort_by_key(|r| std::cmp::Reverse(r[0].0));
        let mut done = Echelon::new(&f);
        for r in rows {
            // earlier pivots are smaller, so reducing the tail against the
            // finished rows never touches the leading entry
            let lead = r[0].clone();
            let tail = done.reduce_full(r[1..].to_vec());
            let mut row = vec![lead];
            row.extend(tail);
            done.push_row(row, None);
        }
        let mut out = done.rows;
        out.sort_by_key(|r| r[0].0);
        out
    }
}

pub fn rank<F: Field>(f: &F, vecs: impl IntoIterator<Item = SparseVec<F::Scalar>>) -> usize {
    let mut e = Echelon::new(f);
    for v in vecs {
        e.insert(v);
    }
    e.rank()
}

/// Rank of a matrix, eliminating along the side with fewer vectors.
pub fn matrix_rank<F: Field>(f: &F, m: &SparseMatrix<F::Scalar>) -> usize {
    if m.cols.is_empty() || m.nrows == 0 {
        return 0;
    }
    if m.cols.len() <= m.nrows {
        rank(f, m.cols.iter().cloned())
    } else {
        rank(f, m.transpose().cols)
    }
}

/// Basis (in reduced row echelon form) of `{x : sum x_j cols[j] = 0}`.
pub fn kernel<F: Field>(f: &F, cols: &[SparseVec<F::Scalar>]) -> Vec<SparseVec<F::Scalar>> {
    let mut e = Echelon::tracked(f);
    let mut rels = Echelon::new(f);
    for c in cols {
        if let Some(rel) = e.insert_tracked(c.clone()) {
            rels.insert(rel);
        }
    }
    rels.into_rref()
}

/// Reduced row echelon basis of the span of `vecs`.
pub fn rref<F: Field>(f: &F, vecs: impl IntoIterator<Item = SparseVec<F::Scalar>>) -> Vec<SparseVec<F::Scalar>> {
    let mut e = Echelon::new(f);
    for v in vecs {
        e.insert(v);
    }
    e.into_rref()
}

/// Dense rank for small matrices given as rows.
pub fn dense_rank<F: Field>(f: &F, rows: &[Vec<F::Scalar>]) -> usize {
    rank(f, rows.iter().map(|r| from_dense(f, r)))
}

/// Solves `sum x_j cols[j] = target`, if possible.
pub fn solve<F: Field>(f: &F, cols: &[SparseVec<F::Scalar>], target: &SparseVec<F::Scalar>) -> Option<SparseVec<F::Scalar>> {
    let mut e = Echelon::tracked(f);
    for c in cols {
        e.insert_tracked(c.clone());
    }
    let combos = e.combos.clone().expect("tracked");
    let mut v = target.clone();
    let mut x: SparseVec<F::Scalar> = Vec::new();
    while let Some((c, a)) = v.first() {
        let r = e.row_at(*c)?;
        let a = a.clone();
        v = sub_scaled(f, &v, &a, &e.rows[r]);
        x = add_scaled(f, &x, &a, &combos[r]);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn q(v: &[i64]) -> SparseVec<num_rational::BigRational> {
        from_dense(&Rationals, &v.iter().map(|&a| Rationals.from_i64(a)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_small_matrix() {
        let f = Rationals;
        // columns (1,2), (2,4), (0,1)
        let cols = vec![q(&[1, 2]), q(&[2, 4]), q(&[0, 1])];
        let k = kernel(&f, &cols);
        let half = crate::field::parse_rational("-1/2").unwrap();
        assert_eq!(k, vec![vec![(0, f.one()), (1, half)]]);
        assert_eq!(rank(&f, cols), 2);
    }

    #[test]
    fn rref_is_canonical() {
        let f = Rationals;
        let a = rref(&f, vec![q(&[1, 1, 0]), q(&[0, 1, 1])]);
        let b = rref(&f, vec![q(&[1, 2, 1]), q(&[1, 0, -1])]);
        assert_eq!(a, b);
        assert_eq!(a, vec![q(&[1, 0, -1]), q(&[0, 1, 1])]);
    }

    #[test]
    fn solve_finds_combination() {
        let f = Rationals;
        let cols = vec![q(&[1, 0, 1]), q(&[0, 1, 1])];
        let x = solve(&f, &cols, &q(&[2, 3, 5])).unwrap();
        assert_eq!(x, q(&[2, 3]));
        assert!(solve(&f, &cols, &q(&[0, 0, 1])).is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..4, c), r))
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let f = PrimeField::new(101).unwrap();
            let ncols = m[0].len();
            let cols: Vec<_> = (0..ncols)
                .map(|j| from_dense(&f, &m.iter().map(|row| f.from_i64(row[j])).collect::<Vec<_>>()))
                .collect();
            let r = rank(&f, cols.clone());
            let k = kernel(&f, &cols);
            prop_assert_eq!(r + k.len(), ncols);
            let t = SparseMatrix::new(m.len(), cols.clone()).transpose();
            prop_assert_eq!(matrix_rank(&f, &t), r);
            for v in &k {
                let mut acc: SparseVec<u64> = Vec::new();
                for (j, a) in v {
                    acc = add_scaled(&f, &acc, a, &cols[*j]);
                }
                prop_assert!(acc.is_empty());
            }
        }

        #[test]
        fn full_reduction_is_canonical(m in small_matrix(), extra in prop::collection::vec(-3i64..4, 1..6)) {
            let f = Rationals;
            let rows: Vec<_> = m.iter().map(|r| q(r)).collect();
            let mut e1 = Echelon::new(&f);
            for r in &rows { e1.insert(r.clone()); }
            let mut e2 = Echelon::new(&f);
            for r in rows.iter().rev() { e2.insert(r.clone()); }
            let v = q(&extra);
            prop_assert_eq!(e1.reduce_full(v.clone()), e2.reduce_full(v));
        }
    }
}
