//! The functor from square-free complexes to free complexes over E: each
//! object generated in degree a is replaced by its linear Cartan resolution
//! over E, and the maps become multiplication by signed monomials.

use std::collections::{BTreeMap, HashMap};

use crate::error::{precondition, Result};
use crate::exterior::{self, binomial, mul_sign, ExtElem, Exterior, Mono};
use crate::field::Field;
use crate::linalg::{self, SparseVec};
use crate::module::{add_multideg, exponent_vectors, is_squarefree, mono_multideg, MultiDeg};
use crate::resolution::betti_via_tor;

use super::{MultiTable, SfComplex};

/// A generator of the total complex: the copy of the Cartan generator of
/// divided-power multidegree `level` attached to `object` in `column`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiGen {
    pub column: usize,
    pub object: usize,
    pub support: Mono,
    pub level: Vec<u32>,
}

impl PhiGen {
    pub fn multidegree(&self) -> MultiDeg {
        add_multideg(&mono_multideg(self.level.len(), self.support), &self.level)
    }
}

/// A free complex over E, truncated at `gens.len() - 1`.
#[derive(Clone, Debug)]
pub struct FreeComplexE<F: Field> {
    pub ext: Exterior<F>,
    /// Multidegree of each generator per homological position.
    pub gens: Vec<Vec<MultiDeg>>,
    /// `d[k][g]`: image of generator g of position k in position k-1
    /// (empty for k = 0).
    pub d: Vec<Vec<Vec<(usize, ExtElem<F::Scalar>)>>>,
}

impl<F: Field> FreeComplexE<F> {
    pub fn top(&self) -> usize {
        self.gens.len().saturating_sub(1)
    }

    fn image(&self, k: usize, terms: &[(usize, ExtElem<F::Scalar>)]) -> BTreeMap<usize, ExtElem<F::Scalar>> {
        let mut out: BTreeMap<usize, ExtElem<F::Scalar>> = BTreeMap::new();
        for (g, coef) in terms {
            for (h, c2) in &self.d[k][*g] {
                let prod = self.ext.mul(coef, c2);
                let e = out.entry(*h).or_insert_with(ExtElem::zero);
                *e = self.ext.add(e, &prod);
            }
        }
        out.retain(|_, e| !e.is_zero());
        out
    }

    pub fn is_complex(&self) -> bool {
        let one = self.ext.one();
        (2..=self.top()).all(|k| (0..self.gens[k].len()).all(|g| {
            let first: Vec<(usize, ExtElem<F::Scalar>)> = self.image(k, &[(g, one.clone())]).into_iter().collect();
            self.image(k - 1, &first).is_empty()
        }))
    }

    /// No differential entry has a nonzero constant term.
    pub fn is_minimal(&self) -> bool {
        self.d.iter().flatten().flatten().all(|(_, e)| !e.terms.contains_key(&0))
    }

    pub fn betti(&self) -> MultiTable {
        let mut out = MultiTable::new();
        for (k, gs) in self.gens.iter().enumerate() {
            for md in gs {
                *out.entry((k, md.clone())).or_default() += 1;
            }
        }
        out
    }

    /// Basis of position k grouped by multidegree: pairs (generator, monomial).
    fn blocks(&self, k: usize) -> BTreeMap<MultiDeg, Vec<(usize, Mono)>> {
        let n = self.ext.n;
        let mut out: BTreeMap<MultiDeg, Vec<(usize, Mono)>> = BTreeMap::new();
        for (g, md) in self.gens[k].iter().enumerate() {
            for u in 0..=super::simplicial::full(n) {
                out.entry(add_multideg(md, &mono_multideg(n, u))).or_default().push((g, u));
            }
        }
        out
    }

    /// Coordinates of d_k applied to e_u times generator g.
    fn apply(&self, k: usize, g: usize, u: Mono, c: &F::Scalar, index: &HashMap<(usize, Mono), usize>) -> SparseVec<F::Scalar> {
        let f = &self.ext.field;
        let mut entries = Vec::new();
        for (h, coef) in &self.d[k][g] {
            for (m, x) in &self.ext.mono_mul(u, coef).terms {
                entries.push((index[&(*h, *m)], f.mul(x, c)));
            }
        }
        linalg::collect_sparse(f, entries)
    }

    fn rank_at(&self, k: usize, md: &MultiDeg, blocks: &[BTreeMap<MultiDeg, Vec<(usize, Mono)>>]) -> usize {
        if k == 0 || k > self.top() {
            return 0;
        }
        let Some(src) = blocks[k].get(md) else { return 0 };
        let Some(dst) = blocks[k - 1].get(md) else { return 0 };
        let index: HashMap<(usize, Mono), usize> = dst.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let one = self.ext.field.one();
        linalg::rank(&self.ext.field, src.iter().map(|&(g, u)| self.apply(k, g, u, &one, &index)))
    }

    /// Homology dimensions per multidegree at positions 0..top-1.
    pub fn homology(&self) -> Vec<BTreeMap<MultiDeg, usize>> {
        let blocks: Vec<_> = (0..=self.top()).map(|k| self.blocks(k)).collect();
        (0..self.top())
            .map(|k| {
                let mut h = BTreeMap::new();
                for (md, basis) in &blocks[k] {
                    let dim = basis.len() - self.rank_at(k, md, &blocks) - self.rank_at(k + 1, md, &blocks);
                    if dim > 0 {
                        h.insert(md.clone(), dim);
                    }
                }
                h
            })
            .collect()
    }
}

/// Total complex of the Cartan resolutions of the objects of `c`, through
/// homological position `steps`. Returns the complex and its generators.
pub fn phi_total<F: Field>(field: &F, c: &SfComplex<F::Scalar>, steps: usize) -> Result<(FreeComplexE<F>, Vec<Vec<PhiGen>>)> {
    let n = c.n;
    let ext = Exterior::new(n, field)?;
    let mut gens: Vec<Vec<PhiGen>> = Vec::new();
    for k in 0..=steps {
        let mut here = Vec::new();
        for (p, objs) in c.terms.iter().enumerate().take(k + 1) {
            for (o, &a) in objs.iter().enumerate() {
                let supp: Vec<usize> = exterior::support(a).collect();
                for e in exponent_vectors(supp.len(), k - p) {
                    let mut level = vec![0u32; n];
                    for (i, &j) in supp.iter().enumerate() {
                        level[j] = e[i];
                    }
                    here.push(PhiGen { column: p, object: o, support: a, level });
                }
            }
        }
        gens.push(here);
    }
    let index: Vec<HashMap<(usize, usize, Vec<u32>), usize>> =
        gens.iter().map(|gs| gs.iter().enumerate().map(|(i, g)| ((g.column, g.object, g.level.clone()), i)).collect()).collect();
    let mut d = vec![Vec::new()];
    for k in 1..=steps {
        let mut imgs = Vec::new();
        for g in &gens[k] {
            let mut img: Vec<(usize, ExtElem<F::Scalar>)> = Vec::new();
            let a = g.support;
            // vertical: (-1)^p (-1)^|a| sum_j e_j times the level lowered at j
            let neg_v = (g.column + exterior::degree(a)) % 2 == 1;
            for j in 0..n {
                if g.level[j] > 0 {
                    let mut lower = g.level.clone();
                    lower[j] -= 1;
                    let t = index[k - 1][&(g.column, g.object, lower)];
                    img.push((t, ext.term(1 << j, field.signed(&field.one(), neg_v))));
                }
            }
            // horizontal: lambda times the signed monomial taking a' up to a
            if g.column > 0 {
                let lvl = mono_of(&g.level);
                for (r, &a2) in c.terms[g.column - 1].iter().enumerate() {
                    let lam = &c.maps[g.column - 1][r][g.object];
                    if field.is_zero(lam) || lvl & a2 != lvl {
                        continue;
                    }
                    let u = a & !a2;
                    let neg = mul_sign(u, a2).expect("disjoint");
                    let t = index[k - 1][&(g.column - 1, r, g.level.clone())];
                    img.push((t, ext.term(u, field.signed(lam, neg))));
                }
            }
            imgs.push(img);
        }
        d.push(imgs);
    }
    let md = gens.iter().map(|gs| gs.iter().map(|g| g.multidegree()).collect()).collect();
    Ok((FreeComplexE { ext, gens: md, d }, gens))
}

fn mono_of(level: &[u32]) -> Mono {
    level.iter().enumerate().filter(|(_, &x)| x > 0).fold(0, |acc, (j, _)| acc | 1 << j)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhiCheck {
    pub is_complex: bool,
    pub minimal: bool,
    pub exact: bool,
    pub h0_matches: bool,
    pub betti_matches: bool,
    pub round_trip: bool,
}

impl PhiCheck {
    pub fn all(&self) -> bool {
        self.is_complex && self.minimal && self.exact && self.h0_matches && self.betti_matches && self.round_trip
    }
}

/// Checks the total complex against the module resolved by `c`: d^2 = 0,
/// minimality, exactness in positions 1..steps-1, H_0 and Betti numbers
/// against the resolution engine, and recovery of `c` from the square-free
/// degrees.
pub fn verify_phi<F: Field>(field: &F, c: &SfComplex<F::Scalar>, steps: usize) -> Result<PhiCheck> {
    if steps < 2 {
        return precondition("need at least two steps");
    }
    let (phi, gens) = phi_total(field, c, steps)?;
    let m = c.exterior_cokernel(&phi.ext)?;
    let h = phi.homology();
    let exact = h.iter().skip(1).all(|x| x.is_empty());
    let mut mdims: BTreeMap<MultiDeg, usize> = BTreeMap::new();
    if let Some(mds) = &m.multideg {
        for md in mds.iter().flatten() {
            *mdims.entry(md.clone()).or_default() += 1;
        }
    }
    let h0_matches = h[0] == mdims;
    let tor = betti_via_tor(&m, steps).multigraded.unwrap_or_default();
    let betti_matches = tor == phi.betti();
    let round_trip = round_trip(field, c, &phi, &gens);
    Ok(PhiCheck { is_complex: phi.is_complex(), minimal: phi.is_minimal(), exact, h0_matches, betti_matches, round_trip })
}

/// In square-free multidegree w, position k of the total complex has basis
/// e_u times the level-zero generator of an object a of column k with
/// u = w - a; writing e_u e_a = s e_w identifies s e_u g_a with the copy of
/// object a in degree w, and the differential must become the original map.
fn round_trip<F: Field>(field: &F, c: &SfComplex<F::Scalar>, phi: &FreeComplexE<F>, gens: &[Vec<PhiGen>]) -> bool {
    let n = c.n;
    let zero_level = |k: usize, p: usize, o: usize| gens[k].iter().position(|g| g.column == p && g.object == o && g.level.iter().all(|&x| x == 0));
    for k in 1..gens.len().min(c.terms.len()) {
        for (o, &b) in c.terms[k].iter().enumerate() {
            let g = zero_level(k, k, o).expect("level-zero generator");
            for w in 0..=super::simplicial::full(n) {
                if w & b != b {
                    continue;
                }
                let u = w & !b;
                let s = mul_sign(u, b).expect("disjoint");
                let mut got: BTreeMap<usize, F::Scalar> = BTreeMap::new();
                for (h, coef) in &phi.d[k][g] {
                    for (m, x) in &phi.ext.mono_mul(u, coef).terms {
                        let t = &gens[k - 1][*h];
                        if t.level.iter().any(|&l| l > 0) || t.column != k - 1 {
                            return false;
                        }
                        let a2 = t.support;
                        let Some(s2) = mul_sign(*m, a2) else { return false };
                        if m | a2 != w {
                            return false;
                        }
                        let v = field.signed(&field.signed(x, s), s2);
                        let e = got.entry(t.object).or_insert_with(|| field.zero());
                        *e = field.add(e, &v);
                    }
                }
                got.retain(|_, v| !field.is_zero(v));
                let want: BTreeMap<usize, F::Scalar> = (0..c.terms[k - 1].len())
                    .filter(|&r| c.terms[k - 1][r] & w == c.terms[k - 1][r] && !field.is_zero(&c.maps[k - 1][r][o]))
                    .map(|r| (r, c.maps[k - 1][r][o].clone()))
                    .collect();
                if got != want {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanTerm {
    pub step: usize,
    pub degree: usize,
    pub rank: usize,
}

/// Ranks of the linear resolution over E of the cyclic module generated in
/// square-free degree a: C(|supp a| + l - 1, l) generators in step l.
pub fn cartan_resolution(a: &[u32], steps: usize) -> Result<Vec<CartanTerm>> {
    if !is_squarefree(a) {
        return precondition("generator degree is not square-free");
    }
    let s: usize = a.iter().map(|&x| x as usize).sum();
    Ok((0..=steps)
        .map(|l| CartanTerm { step: l, degree: s + l, rank: if s == 0 { usize::from(l == 0) } else { binomial(s + l - 1, l) } })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::squarefree::three_points;

    fn single(n: usize, a: Mono) -> SfComplex<num_rational::BigRational> {
        SfComplex::new(&Rationals, n, vec![vec![a]], vec![]).unwrap()
    }

    #[test]
    fn cartan_ranks() {
        let t = cartan_resolution(&[1, 1, 0], 3).unwrap();
        assert_eq!(t.iter().map(|x| x.rank).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        assert_eq!(cartan_resolution(&[0, 0], 2).unwrap().iter().map(|x| x.rank).collect::<Vec<_>>(), vec![1, 0, 0]);
        assert!(cartan_resolution(&[2, 0], 1).is_err());
        let q = Rationals;
        for a in 0..8u32 {
            let (phi, _) = phi_total(&q, &single(3, a), 4).unwrap();
            let ranks: Vec<usize> = phi.gens.iter().map(|g| g.len()).collect();
            let want: Vec<usize> = cartan_resolution(&mono_multideg(3, a), 4).unwrap().iter().map(|t| t.rank).collect();
            assert_eq!(ranks, want);
        }
    }

    #[test]
    fn single_objects() {
        let q = Rationals;
        for a in 0..8u32 {
            let ch = verify_phi(&q, &single(3, a), 3).unwrap();
            assert!(ch.all(), "{a:b}: {ch:?}");
        }
    }

    #[test]
    fn inclusions() {
        let p = PrimeField::new(101).unwrap();
        let n = 4;
        for b in 0..16u32 {
            for a in 0..16u32 {
                if a & b != a || a == b {
                    continue;
                }
                let c = SfComplex::new(&p, n, vec![vec![a], vec![b]], vec![vec![vec![p.one()]]]).unwrap();
                assert!(c.is_acyclic(&p));
                let ch = verify_phi(&p, &c, 2).unwrap();
                assert!(ch.all(), "{a:b} < {b:b}: {ch:?}");
            }
        }
    }

    #[test]
    fn taylor_and_three_points() {
        let q = Rationals;
        let one = q.one();
        let neg = q.neg(&one);
        let t = SfComplex::new(&q, 3, vec![vec![0b011, 0b101], vec![0b111]], vec![vec![vec![one.clone()], vec![neg.clone()]]]).unwrap();
        assert!(verify_phi(&q, &t, 3).unwrap().all());
        let p3 = three_points(&q).two_term_complex(&q).unwrap();
        assert!(p3.is_acyclic(&q));
        assert!(verify_phi(&q, &p3, 3).unwrap().all());
    }

    #[test]
    fn rejects_bad_maps() {
        let q = Rationals;
        assert!(SfComplex::new(&q, 2, vec![vec![0b01], vec![0b10]], vec![vec![vec![q.one()]]]).is_err());
    }
}
