//! Finite simplicial complexes on vertices 0..n, stored by facets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{self, Mono};
use crate::field::Field;
use crate::linalg::{self, SparseVec};

/// A complex closed under subsets. `facets` empty means the void complex
/// (no faces at all); `facets == [0]` is the complex whose only face is the
/// empty set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub n: usize,
    pub facets: Vec<Mono>,
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    n: usize,
    facets: Vec<Vec<usize>>,
}

fn maximal(mut sets: Vec<Mono>) -> Vec<Mono> {
    sets.sort_unstable();
    sets.dedup();
    let keep: Vec<Mono> = sets.iter().copied().filter(|&s| !sets.iter().any(|&t| t != s && t & s == s)).collect();
    let mut keep = keep;
    keep.sort_by_key(|&s| (exterior::degree(s), s));
    keep
}

impl SimplicialComplex {
    pub fn new(n: usize, facets: Vec<Mono>) -> Result<Self> {
        if n > exterior::MAX_VARS {
            return Err(Error::Parse(format!("too many vertices ({n})")));
        }
        if facets.iter().any(|&f| f >> n != 0) {
            return Err(Error::Parse("facet uses a vertex outside the ground set".into()));
        }
        Ok(SimplicialComplex { n, facets: maximal(facets) })
    }

    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    pub fn empty(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![0] }
    }

    pub fn simplex(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![full(n)] }
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_face(&self, s: Mono) -> bool {
        self.facets.iter().any(|&f| f & s == s)
    }

    /// All faces, sorted by size then mask.
    pub fn faces(&self) -> Vec<Mono> {
        let mut out: Vec<Mono> = (0..=full(self.n)).filter(|&s| self.is_face(s)).collect();
        out.sort_by_key(|&s| (exterior::degree(s), s));
        out
    }

    /// Dimension; `None` for the void complex.
    pub fn dim(&self) -> Option<i32> {
        self.facets.iter().map(|&f| exterior::degree(f) as i32 - 1).max()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().all(|&f| Some(exterior::degree(f) as i32 - 1) == self.dim())
    }

    /// Induced subcomplex on the vertex set `w`.
    pub fn restriction(&self, w: Mono) -> SimplicialComplex {
        if self.is_void() {
            return self.clone();
        }
        SimplicialComplex { n: self.n, facets: maximal(self.facets.iter().map(|&f| f & w).collect()) }
    }

    pub fn link(&self, face: Mono) -> SimplicialComplex {
        let sets: Vec<Mono> = self.facets.iter().filter(|&&f| f & face == face).map(|&f| f & !face).collect();
        SimplicialComplex { n: self.n, facets: maximal(sets) }
    }

    /// Reduced Betti numbers `[h_{-1}, h_0, .., h_{n-1}]`.
    pub fn reduced_homology<F: Field>(&self, field: &F) -> Vec<usize> {
        let faces = self.faces();
        let mut by_dim: Vec<Vec<Mono>> = vec![Vec::new(); self.n + 1];
        for s in faces {
            by_dim[exterior::degree(s)].push(s);
        }
        // rank of the boundary from size k to size k-1
        let mut ranks = vec![0usize; self.n + 2];
        for k in 1..=self.n {
            if by_dim[k].is_empty() || by_dim[k - 1].is_empty() {
                continue;
            }
            let idx: std::collections::HashMap<Mono, usize> = by_dim[k - 1].iter().enumerate().map(|(i, s)| (*s, i)).collect();
            let cols: Vec<SparseVec<F::Scalar>> = by_dim[k]
                .iter()
                .map(|&s| {
                    let entries = exterior::support(s)
                        .enumerate()
                        .map(|(j, v)| (idx[&(s & !(1 << v))], field.signed(&field.one(), j % 2 == 1)))
                        .collect();
                    linalg::collect_sparse(field, entries)
                })
                .collect();
            ranks[k] = linalg::rank(field, cols);
        }
        (0..=self.n).map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1]).collect()
    }

    /// Reduced Betti number in dimension `i >= -1`.
    pub fn reduced_betti<F: Field>(&self, field: &F, i: i32) -> usize {
        if i < -1 || i as usize + 1 > self.n {
            return 0;
        }
        self.reduced_homology(field)[(i + 1) as usize]
    }

    /// Faces are complements of nonfaces.
    pub fn alexander_dual(&self) -> SimplicialComplex {
        let all = full(self.n);
        let faces: Vec<Mono> = (0..=all).filter(|&s| !self.is_face(s)).map(|s| all & !s).collect();
        SimplicialComplex { n: self.n, facets: maximal(faces) }
    }

    /// Reisner: every link (including that of the empty face) has vanishing
    /// reduced homology below its dimension. The void complex passes.
    pub fn is_cohen_macaulay<F: Field>(&self, field: &F) -> bool {
        self.faces().into_iter().all(|f| {
            let lk = self.link(f);
            let d = lk.dim().unwrap_or(-1);
            let h = lk.reduced_homology(field);
            (-1..d).all(|i| h[(i + 1) as usize] == 0)
        })
    }

    /// Complex of sets containing no generator.
    pub fn from_monomial_ideal(n: usize, gens: &[Mono]) -> Self {
        let faces: Vec<Mono> = (0..=full(n)).filter(|&s| !gens.iter().any(|&g| g & s == g)).collect();
        SimplicialComplex { n, facets: maximal(faces) }
    }

    /// Minimal nonfaces.
    pub fn stanley_reisner_ideal(&self) -> Vec<Mono> {
        let non: Vec<Mono> = (0..=full(self.n)).filter(|&s| !self.is_face(s)).collect();
        let mut min: Vec<Mono> = non.iter().copied().filter(|&s| !non.iter().any(|&t| t != s && t & s == t)).collect();
        min.sort_by_key(|&s| (exterior::degree(s), s));
        min
    }

    pub fn to_json(&self) -> serde_json::Value {
        let facets: Vec<Vec<usize>> = self.facets.iter().map(|&f| exterior::support(f).map(|i| i + 1).collect()).collect();
        serde_json::to_value(ComplexFile { n: self.n, facets }).expect("serializable")
    }

    /// Vertices are numbered from 1 in files.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let cf: ComplexFile = serde_json::from_value(v.clone())?;
        let mut facets = Vec::new();
        for f in cf.facets {
            let mut m = 0;
            for v in f {
                if v == 0 || v > cf.n {
                    return Err(Error::Parse(format!("vertex {v} outside 1..{}", cf.n)));
                }
                m |= 1 << (v - 1);
            }
            facets.push(m);
        }
        SimplicialComplex::new(cf.n, facets)
    }
}

pub fn full(n: usize) -> Mono {
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use proptest::prelude::*;

    #[test]
    fn duals() {
        let path = SimplicialComplex::new(3, vec![0b011, 0b110]).unwrap();
        assert_eq!(path.alexander_dual(), SimplicialComplex::new(3, vec![0b010]).unwrap());
        assert!(SimplicialComplex::simplex(3).alexander_dual().is_void());
        let points = SimplicialComplex::new(2, vec![0b01, 0b10]).unwrap();
        assert_eq!(points.alexander_dual(), SimplicialComplex::empty(2));
        assert_eq!(SimplicialComplex::void(2).alexander_dual(), SimplicialComplex::simplex(2));
    }

    #[test]
    fn homology() {
        let q = Rationals;
        let circle = SimplicialComplex::new(3, vec![0b011, 0b110, 0b101]).unwrap();
        assert_eq!(circle.reduced_homology(&q), vec![0, 0, 1, 0]);
        assert_eq!(SimplicialComplex::empty(2).reduced_homology(&q), vec![1, 0, 0]);
        assert_eq!(SimplicialComplex::void(2).reduced_homology(&q), vec![0, 0, 0]);
        assert_eq!(SimplicialComplex::simplex(3).reduced_homology(&q), vec![0, 0, 0, 0]);
    }

    #[test]
    fn reisner() {
        let q = Rationals;
        assert!(SimplicialComplex::new(3, vec![0b011, 0b110]).unwrap().is_cohen_macaulay(&q));
        assert!(!SimplicialComplex::new(4, vec![0b0011, 0b1100]).unwrap().is_cohen_macaulay(&q));
        assert!(SimplicialComplex::simplex(3).is_cohen_macaulay(&q));
        assert!(SimplicialComplex::void(2).is_cohen_macaulay(&q));
        // a triangle boundary is a CM circle; a bowtie is not
        assert!(SimplicialComplex::new(3, vec![0b011, 0b110, 0b101]).unwrap().is_cohen_macaulay(&q));
        assert!(!SimplicialComplex::new(5, vec![0b00111, 0b11100]).unwrap().is_cohen_macaulay(&q));
    }

    #[test]
    fn stanley_reisner_round_trip() {
        let d = SimplicialComplex::from_monomial_ideal(3, &[0b011, 0b101]);
        assert_eq!(d.facets, vec![0b001, 0b110]);
        assert_eq!(d.stanley_reisner_ideal(), vec![0b011, 0b101]);
        assert!(SimplicialComplex::from_monomial_ideal(2, &[0]).is_void());
    }

    #[test]
    fn json() {
        let d = SimplicialComplex::new(3, vec![0b011, 0b110]).unwrap();
        assert_eq!(SimplicialComplex::from_json(&d.to_json()).unwrap(), d);
        assert!(SimplicialComplex::from_json(&serde_json::json!({"n": 2, "facets": [[3]]})).is_err());
    }

    proptest! {
        #[test]
        fn dual_is_involutive(n in 1usize..6, raw in prop::collection::vec(0u32..64, 1..5)) {
            let facets: Vec<Mono> = raw.into_iter().map(|f| f & full(n)).collect();
            let d = SimplicialComplex::new(n, facets).unwrap();
            prop_assert_eq!(d.alexander_dual().alexander_dual(), d);
        }
    }
}
