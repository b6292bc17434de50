//! Linear complexes attached to E-modules and S-modules (S the polynomial
//! ring on the dual variables).
//!
//! For a finite E-module P the complex L(P) has terms S (x) P_i and
//! differential `x^b (x) p -> sum_j x^{b+j} (x) e_j p`. It splits into strands:
//! strand k uses S_{k - (top - i)} in term i, so the last term of strand k is
//! S_k (x) P_top.

use std::collections::HashMap;

use crate::error::{precondition, Result};
use crate::exterior::{self, mul_sign, Mono};
use crate::field::Field;
use crate::linalg::{self, Echelon, SparseMatrix, SparseVec};
use crate::module::{exponent_vectors, GradedModule};

/// Basis of S_m with lookup.
struct Monomials {
    list: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

fn s_monomials(n: usize, m: i32) -> Monomials {
    let list = if m < 0 { Vec::new() } else { exponent_vectors(n, m as usize) };
    let index = list.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
    Monomials { list, index }
}

#[derive(Clone, Debug)]
pub struct LinearComplex<F: Field> {
    pub module: GradedModule<F>,
}

/// Builds L(P) after checking the exterior relations on P.
pub fn bgg_l<F: Field>(p: &GradedModule<F>) -> Result<LinearComplex<F>> {
    p.check_exterior_relations()?;
    Ok(LinearComplex { module: p.clone() })
}

impl<F: Field> LinearComplex<F> {
    fn top(&self) -> i32 {
        self.module.hi()
    }

    fn s_degree(&self, k: i32, i: i32) -> i32 {
        k - (self.top() - i)
    }

    /// Dimension of term i (a degree of P) in strand k.
    pub fn term_dim(&self, k: i32, i: i32) -> usize {
        let m = self.s_degree(k, i);
        if m < 0 {
            return 0;
        }
        exterior::binomial(self.module.n + m as usize - 1, m as usize) * self.module.dim(i)
    }

    /// Matrix of the differential from term i to term i+1 in strand k, with
    /// basis (monomial index, basis index) flattened monomial-major.
    pub fn differential(&self, k: i32, i: i32) -> SparseMatrix<F::Scalar> {
        let p = &self.module;
        let m = self.s_degree(k, i);
        let src = s_monomials(p.n, m);
        let dst = s_monomials(p.n, m + 1);
        let dp = p.dim(i);
        let dq = p.dim(i + 1);
        let mut cols = Vec::with_capacity(src.list.len() * dp);
        for b in &src.list {
            for a in 0..dp {
                let mut col = Vec::new();
                for j in 0..p.n {
                    let w = p.act(j, i, &vec![(a, p.field.one())]);
                    if w.is_empty() {
                        continue;
                    }
                    let mut b2 = b.clone();
                    b2[j] += 1;
                    let base = dst.index[&b2] * dq;
                    col.extend(w.into_iter().map(|(r, c)| (base + r, c)));
                }
                cols.push(linalg::collect_sparse(&p.field, col));
            }
        }
        SparseMatrix::new(dst.list.len() * dq, cols)
    }

    fn rank(&self, k: i32, i: i32) -> usize {
        if self.term_dim(k, i) == 0 || self.term_dim(k, i + 1) == 0 {
            return 0;
        }
        linalg::matrix_rank(&self.module.field, &self.differential(k, i))
    }

    /// d composed with d vanishes on strand k.
    pub fn is_complex(&self, k: i32) -> bool {
        let f = &self.module.field;
        for i in self.module.lo..self.top() - 1 {
            if self.term_dim(k, i) == 0 {
                continue;
            }
            let d1 = self.differential(k, i);
            let d2 = self.differential(k, i + 1);
            for c in &d1.cols {
                let mut acc = Vec::new();
                for (r, x) in c {
                    acc = linalg::add_scaled(f, &acc, x, &d2.cols[*r]);
                }
                if !acc.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Homology dimensions of strand k, indexed by term.
    pub fn homology(&self, k: i32) -> Vec<(i32, usize)> {
        let mut out = Vec::new();
        let mut incoming = 0;
        for i in self.module.lo..=self.top() {
            let dim = self.term_dim(k, i);
            let outgoing = if i < self.top() { self.rank(k, i) } else { 0 };
            out.push((i, dim - outgoing - incoming));
            incoming = outgoing;
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessReport {
    /// Largest strand index checked.
    pub max_strand: i32,
    /// (internal degree, term) pairs with nonzero homology before the end.
    pub failures: Vec<(i32, i32)>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks L(A) exact except at its last term in every internal degree up to
/// `max_degree`; internal degree of strand k is k + top.
pub fn verify_l_exactness<F: Field>(a: &GradedModule<F>, max_degree: i32) -> Result<ExactnessReport> {
    let l = bgg_l(a)?;
    let top = a.hi();
    let max_strand = max_degree - top;
    let mut failures = Vec::new();
    for k in 0..=max_strand.max(-1) {
        for (i, h) in l.homology(k) {
            if i < top && h != 0 {
                failures.push((k + top, i));
            }
        }
    }
    Ok(ExactnessReport { max_strand, failures })
}

/// Dimensions of the cokernel of L(A) in strands 0..=trunc, i.e. the Hilbert
/// function of the module it resolves, indexed from its generator degree.
pub fn f_module_hilbert<F: Field>(a: &GradedModule<F>, trunc: usize) -> Result<Vec<usize>> {
    let l = bgg_l(a)?;
    let top = a.hi();
    Ok((0..=trunc as i32).map(|k| l.term_dim(k, top) - if top > a.lo { l.rank(k, top - 1) } else { 0 }).collect())
}

/// Graded S-module with explicit multiplication maps.
#[derive(Clone, Debug)]
pub struct SModule<F: Field> {
    pub field: F,
    pub n: usize,
    pub lo: i32,
    pub dims: Vec<usize>,
    /// `mult[k][j][b]`: x_j times basis vector b of degree lo+k.
    pub mult: Vec<Vec<Vec<SparseVec<F::Scalar>>>>,
}

impl<F: Field> SModule<F> {
    pub fn dim(&self, d: i32) -> usize {
        if d < self.lo {
            return 0;
        }
        self.dims.get((d - self.lo) as usize).copied().unwrap_or(0)
    }

    /// Multiplication by x_j; zero past the stored window.
    pub fn mul(&self, j: usize, d: i32, v: &SparseVec<F::Scalar>) -> SparseVec<F::Scalar> {
        if d < self.lo || d + 1 >= self.lo + self.dims.len() as i32 {
            return Vec::new();
        }
        let cols = &self.mult[(d - self.lo) as usize][j];
        let mut acc = Vec::new();
        for (b, c) in v {
            acc = linalg::add_scaled(&self.field, &acc, c, &cols[*b]);
        }
        acc
    }

    /// x_i x_j = x_j x_i wherever both sides are inside the window.
    pub fn check_commuting(&self) -> Result<()> {
        let f = &self.field;
        for k in 0..self.dims.len().saturating_sub(2) {
            let d = self.lo + k as i32;
            for b in 0..self.dims[k] {
                let v = vec![(b, f.one())];
                for i in 0..self.n {
                    for j in i + 1..self.n {
                        let a = self.mul(j, d + 1, &self.mul(i, d, &v));
                        let c = self.mul(i, d + 1, &self.mul(j, d, &v));
                        if a != c {
                            return precondition(format!("x_{} and x_{} do not commute in degree {d}", i + 1, j + 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// S in n variables, degrees 0..=top.
    pub fn polynomial_ring(field: &F, n: usize, top: usize) -> Self {
        let monos: Vec<Monomials> = (0..=top as i32).map(|m| s_monomials(n, m)).collect();
        let mult = (0..=top)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        monos[k]
                            .list
                            .iter()
                            .map(|b| {
                                if k == top {
                                    return Vec::new();
                                }
                                let mut b2 = b.clone();
                                b2[j] += 1;
                                vec![(monos[k + 1].index[&b2], field.one())]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        SModule { field: field.clone(), n, lo: 0, dims: monos.iter().map(|m| m.list.len()).collect(), mult }
    }
}

/// The module resolved by L(A), in strands 0..=top_strand.
pub fn f_module<F: Field>(a: &GradedModule<F>, top_strand: usize) -> Result<SModule<F>> {
    let l = bgg_l(a)?;
    let f = &a.field;
    let n = a.n;
    let top = a.hi();
    let dt = a.dim(top);
    // per strand: echelon of the image, kept basis, position map
    let mut eches = Vec::new();
    let mut kept: Vec<Vec<usize>> = Vec::new();
    let mut pos: Vec<HashMap<usize, usize>> = Vec::new();
    for k in 0..=top_strand as i32 {
        let mut e = Echelon::new(f);
        if top > a.lo && l.term_dim(k, top - 1) > 0 {
            for c in l.differential(k, top - 1).cols {
                e.insert(c);
            }
        }
        let keep: Vec<usize> = (0..l.term_dim(k, top)).filter(|&b| !e.is_pivot(b)).collect();
        pos.push(keep.iter().enumerate().map(|(i, b)| (*b, i)).collect());
        kept.push(keep);
        eches.push(e);
    }
    let monos: Vec<Monomials> = (0..=top_strand as i32 + 1).map(|m| s_monomials(n, m)).collect();
    let mut mult = Vec::new();
    for k in 0..=top_strand {
        let mut per_j = Vec::new();
        for j in 0..n {
            let cols = kept[k]
                .iter()
                .map(|&b| {
                    if k == top_strand {
                        return Vec::new();
                    }
                    let (mi, ai) = (b / dt, b % dt);
                    let mut m2 = monos[k].list[mi].clone();
                    m2[j] += 1;
                    let v = vec![(monos[k + 1].index[&m2] * dt + ai, f.one())];
                    eches[k + 1].reduce_full(v).into_iter().map(|(i, c)| (pos[k + 1][&i], c)).collect()
                })
                .collect();
            per_j.push(cols);
        }
        mult.push(per_j);
    }
    Ok(SModule { field: f.clone(), n, lo: 0, dims: kept.iter().map(|k| k.len()).collect(), mult })
}

/// Dimensions of the cokernel of the dual of the first map of L(A), in
/// S-degrees 0..=window: the top Ext of the resolved module with S.
pub fn ext_top_dims<F: Field>(a: &GradedModule<F>, window: usize) -> Result<Vec<usize>> {
    bgg_l(a)?;
    let f = &a.field;
    let n = a.n;
    let lo = a.lo;
    let d0 = a.dim(lo);
    let d1 = a.dim(lo + 1);
    // dual map S (x) P_{lo+1}^* -> S (x) P_lo^*: q^* -> sum_j x_j <e_j p, q> p^*
    let mut out = Vec::new();
    for m in 0..=window as i32 {
        let src = s_monomials(n, m - 1);
        let dst = s_monomials(n, m);
        let mut cols = Vec::new();
        for b in &src.list {
            for q in 0..d1 {
                let mut col = Vec::new();
                for p in 0..d0 {
                    for j in 0..n {
                        let w = a.act(j, lo, &vec![(p, f.one())]);
                        if let Some((_, c)) = w.iter().find(|(r, _)| *r == q) {
                            let mut b2 = b.clone();
                            b2[j] += 1;
                            col.push((dst.index[&b2] * d0 + p, c.clone()));
                        }
                    }
                }
                cols.push(linalg::collect_sparse(f, col));
            }
        }
        let total = dst.list.len() * d0;
        out.push(total - linalg::matrix_rank(f, &SparseMatrix::new(total, cols)));
    }
    Ok(out)
}

/// The complex R(M) with terms Hom_K(E, M_i), split by weight i + |u| where
/// the basis functional phi_{u,m} sends e_u to m.
#[derive(Clone, Debug)]
pub struct RComplex<F: Field> {
    pub module: SModule<F>,
}

pub fn bgg_r<F: Field>(m: &SModule<F>) -> Result<RComplex<F>> {
    m.check_commuting()?;
    Ok(RComplex { module: m.clone() })
}

impl<F: Field> RComplex<F> {
    fn hi(&self) -> i32 {
        self.module.lo + self.module.dims.len() as i32 - 1
    }

    fn basis(&self, w: i32, i: i32) -> Vec<(Mono, usize)> {
        let k = w - i;
        if k < 0 || k as usize > self.module.n {
            return Vec::new();
        }
        let mut out = Vec::new();
        for u in exterior::monomials_of_degree(self.module.n, k as usize) {
            for b in 0..self.module.dim(i) {
                out.push((u, b));
            }
        }
        out
    }

    /// Differential from term i to term i+1 in weight w:
    /// phi_{u,m} -> sum_{j in u} sign * phi_{u - j, x_j m}.
    pub fn differential(&self, w: i32, i: i32) -> SparseMatrix<F::Scalar> {
        let f = &self.module.field;
        let src = self.basis(w, i);
        let dst = self.basis(w, i + 1);
        let index: HashMap<(Mono, usize), usize> = dst.iter().enumerate().map(|(k, x)| (*x, k)).collect();
        let cols = src
            .iter()
            .map(|&(u, b)| {
                let mut col = Vec::new();
                for j in exterior::support(u) {
                    let rest = u & !(1 << j);
                    let neg = mul_sign(1 << j, rest).expect("j not in rest");
                    for (r, c) in self.module.mul(j, i, &vec![(b, f.one())]) {
                        col.push((index[&(rest, r)], f.signed(&c, neg)));
                    }
                }
                linalg::collect_sparse(f, col)
            })
            .collect();
        SparseMatrix::new(dst.len(), cols)
    }

    pub fn is_complex(&self, w: i32) -> bool {
        let f = &self.module.field;
        for i in self.module.lo..self.hi() - 1 {
            let d1 = self.differential(w, i);
            let d2 = self.differential(w, i + 1);
            for c in &d1.cols {
                let mut acc = Vec::new();
                for (r, x) in c {
                    acc = linalg::add_scaled(f, &acc, x, &d2.cols[*r]);
                }
                if !acc.is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Homology dimensions in weight w, one per term of the window. The last
    /// term is taken with zero outgoing map.
    pub fn homology(&self, w: i32) -> Vec<(i32, usize)> {
        let f = &self.module.field;
        let mut out = Vec::new();
        let mut incoming = 0;
        for i in self.module.lo..=self.hi() {
            let dim = self.basis(w, i).len();
            let outgoing = if i < self.hi() && dim > 0 { linalg::matrix_rank(f, &self.differential(w, i)) } else { 0 };
            out.push((i, dim - outgoing - incoming));
            incoming = outgoing;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{boolean, central_lines, generic_lines};
    use crate::exterior::Exterior;
    use crate::field::Rationals;

    fn os<F: Field>(a: &crate::arrangement::Arrangement<F>) -> GradedModule<F> {
        let ext = a.exterior();
        GradedModule::quotient_algebra(&ext, &a.os_ideal(&ext)).unwrap()
    }

    #[test]
    fn koszul_one_variable() {
        let q = Rationals;
        let e = GradedModule::exterior_algebra(&Exterior::new(1, &q).unwrap());
        let l = bgg_l(&e).unwrap();
        // strand k: S_{k-1} -> S_k, exact except the cokernel in strand 0
        assert_eq!(l.homology(0), vec![(0, 0), (1, 1)]);
        assert_eq!(l.homology(3), vec![(0, 0), (1, 0)]);
    }

    #[test]
    fn l_complexes() {
        let q = Rationals;
        for a in [central_lines(&q, 3).unwrap(), boolean(&q, 2).unwrap(), generic_lines(&q, 3).unwrap()] {
            let p = os(&a);
            let l = bgg_l(&p).unwrap();
            for k in 0..4 {
                assert!(l.is_complex(k));
            }
            assert!(verify_l_exactness(&p, 8).unwrap().exact());
        }
        assert_eq!(os(&central_lines(&q, 3).unwrap()).dims, vec![1, 3, 2]);
    }

    #[test]
    fn f_module_series() {
        let q = Rationals;
        assert_eq!(f_module_hilbert(&os(&central_lines(&q, 3).unwrap()), 3).unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(f_module_hilbert(&os(&boolean(&q, 2).unwrap()), 2).unwrap(), vec![1, 0, 0]);
        assert_eq!(f_module_hilbert(&os(&generic_lines(&q, 3).unwrap()), 3).unwrap(), vec![3, 6, 10, 15]);
    }

    #[test]
    fn top_ext_is_residue_field() {
        let q = Rationals;
        assert_eq!(ext_top_dims(&os(&central_lines(&q, 4).unwrap()), 3).unwrap(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn r_of_residue_field_and_line() {
        let q = Rationals;
        let k = SModule::polynomial_ring(&q, 2, 0);
        let r = bgg_r(&k).unwrap();
        assert_eq!(r.homology(0), vec![(0, 1)]);
        let s = SModule::polynomial_ring(&q, 1, 2);
        let r = bgg_r(&s).unwrap();
        assert!(r.is_complex(2));
        assert_eq!(r.homology(0), vec![(0, 1), (1, 0), (2, 0)]);
        assert_eq!(r.homology(1), vec![(0, 0), (1, 0), (2, 0)]);
        assert_eq!(r.homology(2), vec![(0, 0), (1, 0), (2, 0)]);
        // weight 3 lives only in the truncated last term
        assert_eq!(r.homology(3), vec![(0, 0), (1, 0), (2, 1)]);
    }

    #[test]
    fn reciprocity_spot_check() {
        let q = Rationals;
        let a = central_lines(&q, 3).unwrap();
        let p = os(&a);
        let window = 4;
        let m = f_module(&p, window).unwrap();
        assert_eq!(m.dims, vec![2, 3, 4, 5, 6]);
        let r = bgg_r(&m).unwrap();
        for w in 0..=window as i32 {
            assert!(r.is_complex(w));
            let h = r.homology(w);
            let expect0 = if w <= 2 { p.dim(2 - w) } else { 0 };
            assert_eq!(h[0].1, expect0, "weight {w}");
            for (i, d) in &h[1..h.len() - 1] {
                assert_eq!(*d, 0, "weight {w} term {i}");
            }
        }
    }
}
