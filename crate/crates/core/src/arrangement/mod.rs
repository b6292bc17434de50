//! Affine hyperplane arrangements over an exact field and their matroid data.

mod algebras;
mod families;
mod matroid;

pub use algebras::{link_complement_ideal, surface_algebra_ideal};
pub use families::{boolean, central_lines, generic_lines};
pub use matroid::{CircuitData, Decomposition};

use crate::error::{precondition, Error, Result};
use crate::field::Field;
use crate::linalg;

/// A hyperplane `normal . x + constant = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane<S> {
    pub normal: Vec<S>,
    pub constant: S,
}

#[derive(Clone, Debug)]
pub struct Arrangement<F: Field> {
    field: F,
    dim: usize,
    hyperplanes: Vec<Hyperplane<F::Scalar>>,
}

impl<F: Field> Arrangement<F> {
    /// Rejects zero functionals and repeated hyperplanes.
    pub fn new(field: &F, dim: usize, hyperplanes: Vec<Hyperplane<F::Scalar>>) -> Result<Self> {
        if hyperplanes.len() > crate::exterior::MAX_VARS {
            return precondition(format!("too many hyperplanes ({})", hyperplanes.len()));
        }
        for (i, h) in hyperplanes.iter().enumerate() {
            if h.normal.len() != dim {
                return Err(Error::Parse(format!("hyperplane {} has {} coordinates, expected {dim}", i + 1, h.normal.len())));
            }
            if h.normal.iter().all(|c| field.is_zero(c)) {
                return Err(Error::Parse(format!("hyperplane {} has zero normal", i + 1)));
            }
        }
        let arr = Arrangement { field: field.clone(), dim, hyperplanes };
        for i in 0..arr.n() {
            for j in i + 1..arr.n() {
                if arr.augmented_rank(1 << i | 1 << j) < 2 {
                    return Err(Error::Parse(format!("hyperplanes {} and {} coincide", i + 1, j + 1)));
                }
            }
        }
        Ok(arr)
    }

    /// Convenience constructor from integer rows `[c_1, .., c_l, c_0]`.
    pub fn from_int_rows(field: &F, dim: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let hs = rows
            .iter()
            .map(|r| Hyperplane {
                normal: r[..dim].iter().map(|&c| field.from_i64(c)).collect(),
                constant: field.from_i64(r[dim]),
            })
            .collect();
        Arrangement::new(field, dim, hs)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn n(&self) -> usize {
        self.hyperplanes.len()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn hyperplanes(&self) -> &[Hyperplane<F::Scalar>] {
        &self.hyperplanes
    }

    fn rows(&self, subset: u32, augmented: bool) -> Vec<Vec<F::Scalar>> {
        crate::exterior::support(subset)
            .map(|i| {
                let h = &self.hyperplanes[i];
                let mut r = h.normal.clone();
                if augmented {
                    r.push(h.constant.clone());
                }
                r
            })
            .collect()
    }

    pub fn normal_rank(&self, subset: u32) -> usize {
        linalg::dense_rank(&self.field, &self.rows(subset, false))
    }

    pub fn augmented_rank(&self, subset: u32) -> usize {
        linalg::dense_rank(&self.field, &self.rows(subset, true))
    }

    pub fn all(&self) -> u32 {
        if self.n() == 32 {
            u32::MAX
        } else {
            (1u32 << self.n()) - 1
        }
    }

    /// True when the hyperplanes in `subset` share a point.
    pub fn meets(&self, subset: u32) -> bool {
        self.normal_rank(subset) == self.augmented_rank(subset)
    }

    pub fn rank(&self) -> usize {
        self.normal_rank(self.all())
    }

    pub fn is_central(&self) -> bool {
        self.meets(self.all())
    }

    pub fn is_essential(&self) -> bool {
        self.rank() == self.dim
    }

    /// Homogenizes into dimension `dim + 1` (new last coordinate) and
    /// appends the hyperplane at infinity.
    pub fn cone(&self) -> Arrangement<F> {
        let f = &self.field;
        let mut hs: Vec<Hyperplane<F::Scalar>> = self
            .hyperplanes
            .iter()
            .map(|h| {
                let mut normal = h.normal.clone();
                normal.push(h.constant.clone());
                Hyperplane { normal, constant: f.zero() }
            })
            .collect();
        let mut inf = vec![f.zero(); self.dim];
        inf.push(f.one());
        hs.push(Hyperplane { normal: inf, constant: f.zero() });
        Arrangement { field: f.clone(), dim: self.dim + 1, hyperplanes: hs }
    }

    /// Restricts the remaining hyperplanes to the affine chart `H_h = 1`.
    pub fn decone(&self, h: usize) -> Result<Arrangement<F>> {
        if h >= self.n() {
            return precondition(format!("no hyperplane {}", h + 1));
        }
        if !self.is_central() {
            return precondition("decone requires a central arrangement");
        }
        let f = &self.field;
        // the linear parts are the functionals relative to the center
        let linear: Vec<Vec<F::Scalar>> = self.hyperplanes.iter().map(|hp| hp.normal.clone()).collect();
        let a = &linear[h];
        let k = a.iter().position(|c| !f.is_zero(c)).expect("nonzero normal");
        let inv = f.inv(&a[k]);
        let mut hs = Vec::new();
        for (i, row) in linear.iter().enumerate() {
            if i == h {
                continue;
            }
            // x_k = (1 - sum_{j != k} a_j x_j) / a_k
            let coef = f.mul(&row[k], &inv);
            let normal: Vec<F::Scalar> = (0..self.dim)
                .filter(|&j| j != k)
                .map(|j| f.mul_sub(&row[j], &coef, &a[j]))
                .collect();
            hs.push(Hyperplane { normal, constant: coef });
        }
        Arrangement::new(f, self.dim - 1, hs)
    }

    /// A common point of all hyperplanes, if any.
    pub fn center(&self) -> Option<Vec<F::Scalar>> {
        let f = &self.field;
        let cols: Vec<linalg::SparseVec<F::Scalar>> = (0..self.dim)
            .map(|j| linalg::from_dense(f, &self.hyperplanes.iter().map(|h| h.normal[j].clone()).collect::<Vec<_>>()))
            .collect();
        let target = linalg::from_dense(f, &self.hyperplanes.iter().map(|h| f.neg(&h.constant)).collect::<Vec<_>>());
        linalg::solve(f, &cols, &target).map(|x| linalg::to_dense(f, &x, self.dim))
    }

    /// Product arrangement in the direct sum of the ambient spaces.
    pub fn product(&self, other: &Arrangement<F>) -> Result<Arrangement<F>> {
        let f = &self.field;
        let mut hs = Vec::new();
        for h in &self.hyperplanes {
            let mut normal = h.normal.clone();
            normal.extend((0..other.dim).map(|_| f.zero()));
            hs.push(Hyperplane { normal, constant: h.constant.clone() });
        }
        for h in &other.hyperplanes {
            let mut normal: Vec<F::Scalar> = (0..self.dim).map(|_| f.zero()).collect();
            normal.extend(h.normal.iter().cloned());
            hs.push(Hyperplane { normal, constant: h.constant.clone() });
        }
        Arrangement::new(f, self.dim + other.dim, hs)
    }

    /// Generic in the sense that every set of at most `dim` hyperplanes meets
    /// transversally, and (noncentral case) no `dim + 1` of them meet.
    pub fn is_generic(&self) -> bool {
        let l = self.dim;
        for s in 1u32..=self.all() {
            let k = s.count_ones() as usize;
            if k <= l && self.normal_rank(s) < k {
                return false;
            }
            if !self.is_central() && k == l + 1 && self.meets(s) {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn validation() {
        let q = Rationals;
        assert!(Arrangement::from_int_rows(&q, 2, &[vec![1, 0, 0], vec![2, 0, 0]]).is_err());
        assert!(Arrangement::from_int_rows(&q, 2, &[vec![0, 0, 1]]).is_err());
        assert!(Arrangement::from_int_rows(&q, 2, &[vec![1, 0, 0], vec![1, 0, 1]]).is_ok());
    }

    #[test]
    fn flags() {
        let q = Rationals;
        let c3 = central_lines(&q, 3).unwrap();
        assert!(c3.is_central() && c3.is_essential());
        let g3 = generic_lines(&q, 3).unwrap();
        assert!(!g3.is_central() && g3.is_generic());
        assert!(!Arrangement::from_int_rows(&q, 2, &[vec![1, 0, 0]]).unwrap().is_essential());
    }

    #[test]
    fn cone_decone_round_trip() {
        let q = Rationals;
        for a in [central_lines(&q, 3).unwrap(), generic_lines(&q, 4).unwrap()] {
            let c = a.cone();
            assert!(c.is_central());
            let back = c.decone(c.n() - 1).unwrap();
            assert_eq!(back.hyperplanes(), a.hyperplanes());
        }
        assert!(generic_lines(&q, 3).unwrap().decone(0).is_err());
    }

    #[test]
    fn decone_preserves_circuits_up_to_relabeling() {
        let q = Rationals;
        let c = central_lines(&q, 4).unwrap();
        // deconing at line 1: remaining three lines become three points of C^1
        let d = c.decone(0).unwrap();
        assert_eq!(d.n(), 3);
        assert_eq!(d.circuits().dependent_circuits.len(), 0);
        assert_eq!(d.circuits().empty_min_sets.len(), 3);
        assert_eq!(d.cone().circuits().dependent_circuits.len(), c.circuits().dependent_circuits.len());
    }
}
