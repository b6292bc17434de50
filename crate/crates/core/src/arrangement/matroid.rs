use std::collections::BTreeMap;

use serde::Serialize;

use super::Arrangement;
use crate::exterior::{self, ExtElem, Exterior, Mono};
use crate::field::Field;
use crate::linalg::Echelon;
use crate::series::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CircuitData {
    /// Minimal dependent sets (of affine functionals) whose hyperplanes meet.
    pub dependent_circuits: Vec<Mono>,
    /// Minimal sets of hyperplanes with empty intersection.
    pub empty_min_sets: Vec<Mono>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub blocks: Vec<Mono>,
    pub central: Vec<bool>,
}

impl Decomposition {
    pub fn num_central(&self) -> usize {
        self.central.iter().filter(|c| **c).count()
    }

    pub fn central_blocks(&self) -> Vec<Mono> {
        self.blocks.iter().zip(&self.central).filter(|(_, c)| **c).map(|(b, _)| *b).collect()
    }
}

/// Subsets of {0..n} of size k in increasing mask order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<Mono> {
    exterior::monomials_of_degree(n, k)
}

fn contains_any(s: Mono, sets: &[Mono]) -> bool {
    sets.iter().any(|c| c & s == *c)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut i: usize) -> usize {
        while self.0[i] != i {
            self.0[i] = self.0[self.0[i]];
            i = self.0[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

impl<F: Field> Arrangement<F> {
    /// Enumerates subsets by increasing size with rank tests.
    pub fn circuits(&self) -> CircuitData {
        let n = self.n();
        let mut aug_circuits: Vec<Mono> = Vec::new();
        let mut dependent = Vec::new();
        let mut empty = Vec::new();
        for k in 1..=n.min(self.dim() + 2) {
            for s in subsets_of_size(n, k) {
                let meets = self.meets(s);
                if !meets && !contains_any(s, &empty) {
                    empty.push(s);
                }
                if self.augmented_rank(s) < k && !contains_any(s, &aug_circuits) {
                    aug_circuits.push(s);
                    if meets {
                        dependent.push(s);
                    }
                }
            }
        }
        CircuitData { dependent_circuits: dependent, empty_min_sets: empty }
    }

    /// Generators of the Orlik-Solomon ideal: boundaries of dependent
    /// circuits, then monomials of minimal empty-intersection sets.
    pub fn os_ideal(&self, ext: &Exterior<F>) -> Vec<ExtElem<F::Scalar>> {
        let c = self.circuits();
        let mut gens: Vec<ExtElem<F::Scalar>> = c.dependent_circuits.iter().map(|&m| ext.boundary(&ext.monomial(m))).collect();
        gens.extend(c.empty_min_sets.iter().map(|&m| ext.monomial(m)));
        gens
    }

    pub fn exterior(&self) -> Exterior<F> {
        Exterior::new(self.n(), self.field()).expect("hyperplane count validated")
    }

    /// Irreducible factors: connected components of the matroid of normal
    /// vectors, then a check that the normal ranks of the blocks add up.
    pub fn product_decompose(&self) -> Decomposition {
        let n = self.n();
        let mut uf = UnionFind::new(n);
        let mut circuits: Vec<Mono> = Vec::new();
        for k in 2..=n.min(self.dim() + 1) {
            for s in subsets_of_size(n, k) {
                if self.normal_rank(s) < k && !contains_any(s, &circuits) {
                    circuits.push(s);
                    let first = s.trailing_zeros() as usize;
                    for i in exterior::support(s) {
                        uf.union(first, i);
                    }
                }
            }
        }
        let mut by_root: BTreeMap<usize, Mono> = BTreeMap::new();
        for i in 0..n {
            *by_root.entry(uf.find(i)).or_default() |= 1 << i;
        }
        let mut blocks: Vec<Mono> = by_root.into_values().collect();
        let split_ok = blocks.iter().map(|b| self.normal_rank(*b)).sum::<usize>() == self.rank();
        if !split_ok {
            // cannot happen for matroid components; keep a single factor
            blocks = if n == 0 { vec![] } else { vec![self.all()] };
        }
        let central = blocks.iter().map(|b| self.meets(*b)).collect();
        Decomposition { blocks, central }
    }

    /// Each central factor contributes the equation `sum_{H in block} x_H = 0`;
    /// returned as the index sets of those sums.
    pub fn singular_variety_equations(&self) -> Vec<Mono> {
        self.product_decompose().central_blocks()
    }

    /// `C \ min(C)` for each dependent circuit; `rank[i]` orders the
    /// hyperplanes (smallest first).
    pub fn broken_circuits(&self, rank: &[usize]) -> Vec<Mono> {
        let mut out: Vec<Mono> = self
            .circuits()
            .dependent_circuits
            .iter()
            .map(|&c| {
                let min = exterior::support(c).min_by_key(|&i| rank[i]).expect("nonempty circuit");
                c & !(1 << min)
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Monomials divisible by no broken circuit and no empty-intersection set.
    pub fn nbc_monomials(&self, rank: &[usize]) -> Vec<Mono> {
        let bc = self.broken_circuits(rank);
        let empty = self.circuits().empty_min_sets;
        (0..=self.all()).filter(|&m| !contains_any(m, &bc) && !contains_any(m, &empty)).collect()
    }

    /// nbc counts per degree, computed directly on this arrangement.
    pub fn nbc_dims_direct(&self) -> Vec<usize> {
        let rank: Vec<usize> = (0..self.n()).collect();
        let mut dims = vec![0usize; self.n() + 1];
        for m in self.nbc_monomials(&rank) {
            dims[exterior::degree(m)] += 1;
        }
        trim(dims)
    }

    /// Graded dimensions of the Orlik-Solomon algebra from the nbc basis;
    /// noncentral input goes through the cone and divides by `1 + t`.
    pub fn nbc_dims(&self) -> Vec<usize> {
        if self.is_central() {
            return self.nbc_dims_direct();
        }
        let coned = self.cone().nbc_dims_direct();
        let p = Poly::new(coned.iter().map(|&d| d as i64).collect());
        let q = p.div_one_plus_t().expect("cone Poincare polynomial divisible by 1+t");
        trim(q.coeffs.iter().map(|&c| c as usize).collect())
    }

    pub fn poincare(&self) -> Poly {
        Poly::new(self.nbc_dims().iter().map(|&d| d as i64).collect())
    }

    /// `t^l pi(-1/t)`; on noncentral input, the cone's polynomial over `t - 1`.
    pub fn char_poly(&self) -> Poly {
        if self.is_central() {
            self.poincare().reciprocal_negated(self.dim())
        } else {
            self.cone().char_poly().div_by_root(1).expect("cone polynomial vanishes at 1")
        }
    }

    /// Linear-algebra oracle: dim E_j - dim I_j, with I_j spanned by all
    /// monomial multiples of the generators.
    pub fn dims_by_rank(&self) -> Vec<usize> {
        let ext = self.exterior();
        let gens = self.os_ideal(&ext);
        let n = self.n();
        let mut dims = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let index = exterior::degree_index(n, d);
            let mut e = Echelon::new(self.field());
            for g in &gens {
                let gd = g.homogeneous_degree().expect("homogeneous generator");
                if gd > d {
                    continue;
                }
                for u in exterior::monomials_of_degree(n, d - gd) {
                    let p = ext.mono_mul(u, g);
                    if !p.is_zero() {
                        e.insert(ext.coords(&p, &index));
                    }
                }
            }
            dims.push(ext.dim(d) - e.rank());
        }
        trim(dims)
    }
}

fn trim(mut v: Vec<usize>) -> Vec<usize> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}
