//! Square-free modules over the polynomial ring S and the exterior algebra E,
//! the Stanley-Reisner dictionary, and Betti number comparisons between the
//! two rings.

pub mod phi;
pub mod simplicial;

use std::collections::BTreeMap;

pub use phi::{cartan_resolution, phi_total, verify_phi, CartanTerm, FreeComplexE, PhiCheck};
pub use simplicial::SimplicialComplex;

use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::error::{precondition, Error, Result};
use crate::exterior::{self, mul_sign, ExtElem, Exterior, Mono};
use crate::field::Field;
use crate::linalg;
use crate::module::{exponent_vectors, mono_multideg, GradedModule, GradedPresentation, MultiDeg};
use crate::resolution::minimal_free_resolution;

pub type MultiTable = BTreeMap<(usize, MultiDeg), usize>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ring {
    Polynomial,
    Exterior,
}

/// A presentation whose generators and relations sit in square-free
/// multidegrees; each relation is a list of (generator, coefficient,
/// monomial) entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareFreePresentation<S> {
    pub n: usize,
    pub ring: Ring,
    pub generators: Vec<Mono>,
    pub relations: Vec<Vec<(usize, S, Mono)>>,
}

impl<S: Clone> SquareFreePresentation<S> {
    pub fn new(n: usize, ring: Ring, generators: Vec<Mono>, relations: Vec<Vec<(usize, S, Mono)>>) -> Result<Self> {
        let p = SquareFreePresentation { n, ring, generators, relations };
        p.relation_degrees()?;
        Ok(p)
    }

    /// Multidegree of each relation; fails if an entry leaves the square-free
    /// range or the relation is inhomogeneous.
    pub fn relation_degrees(&self) -> Result<Vec<Mono>> {
        let mut out = Vec::new();
        for (r, rel) in self.relations.iter().enumerate() {
            let mut deg: Option<Mono> = None;
            for (g, _, m) in rel {
                let gd = *self.generators.get(*g).ok_or_else(|| Error::Parse(format!("relation {} uses unknown generator {}", r + 1, g + 1)))?;
                if gd & m != 0 {
                    return Err(Error::Precondition(format!("relation {} has a non-square-free entry", r + 1)));
                }
                let d = gd | m;
                if deg.is_some_and(|x| x != d) {
                    return Err(Error::Precondition(format!("relation {} is not homogeneous", r + 1)));
                }
                deg = Some(d);
            }
            out.push(deg.unwrap_or(0));
        }
        Ok(out)
    }

    /// The same matrix read over the other ring.
    pub fn transfer(&self, ring: Ring) -> Self {
        SquareFreePresentation { ring, ..self.clone() }
    }

    /// Cokernel over E of the matrix read with exterior monomials.
    pub fn exterior_presentation<F: Field<Scalar = S>>(&self, ext: &Exterior<F>) -> GradedPresentation<S> {
        GradedPresentation {
            n: self.n,
            generator_degrees: self.generators.iter().map(|&g| exterior::degree(g) as i32).collect(),
            generator_multidegrees: Some(self.generators.iter().map(|&g| mono_multideg(self.n, g)).collect()),
            relations: self.relations.iter().map(|rel| rel.iter().map(|(g, c, m)| (*g, ext.term(*m, c.clone()))).collect()).collect(),
        }
    }

    /// The matrix as a two-term square-free complex (generators in position
    /// 0, relations in position 1).
    pub fn two_term_complex<F: Field<Scalar = S>>(&self, field: &F) -> Result<SfComplex<S>>
    where
        S: PartialEq,
    {
        let degs = self.relation_degrees()?;
        let mut map = vec![vec![field.zero(); degs.len()]; self.generators.len()];
        for (c, rel) in self.relations.iter().enumerate() {
            for (g, x, _) in rel {
                map[*g][c] = field.add(&map[*g][c], x);
            }
        }
        SfComplex::new(field, self.n, vec![self.generators.clone(), degs], vec![map])
    }
}

/// Presentation of S/I for a square-free monomial ideal I.
pub fn stanley_reisner_presentation<F: Field>(field: &F, n: usize, gens: &[Mono]) -> SquareFreePresentation<F::Scalar> {
    SquareFreePresentation { n, ring: Ring::Polynomial, generators: vec![0], relations: gens.iter().map(|&g| vec![(0, field.one(), g)]).collect() }
}

/// The canonical module of the cone over three points in the plane: the
/// cokernel of the 3x2 matrix with columns (x0, -x1, 0) and (0, x1, -x2).
pub fn three_points<F: Field>(field: &F) -> SquareFreePresentation<F::Scalar> {
    let one = field.one();
    let neg = field.neg(&one);
    SquareFreePresentation {
        n: 3,
        ring: Ring::Polynomial,
        generators: vec![0b110, 0b101, 0b011],
        relations: vec![vec![(0, one.clone(), 0b001), (1, neg.clone(), 0b010)], vec![(1, one, 0b010), (2, neg, 0b100)]],
    }
}

/// A complex whose objects are the cyclic modules generated by square-free
/// monomials (over R = S/(x_i^2) or over E), with maps scalar multiples of
/// inclusions. `maps[k][row][col]` goes from object `col` of term k+1 to
/// object `row` of term k.
#[derive(Clone, Debug, PartialEq)]
pub struct SfComplex<S> {
    pub n: usize,
    pub terms: Vec<Vec<Mono>>,
    pub maps: Vec<Vec<Vec<S>>>,
}

impl<S: Clone + PartialEq> SfComplex<S> {
    /// Checks shapes, that every nonzero entry goes from a larger support to
    /// a smaller one, and that consecutive maps compose to zero.
    pub fn new<F: Field<Scalar = S>>(field: &F, n: usize, terms: Vec<Vec<Mono>>, maps: Vec<Vec<Vec<S>>>) -> Result<Self> {
        if maps.len() + 1 != terms.len().max(1) {
            return Err(Error::Parse("need one map between consecutive terms".into()));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.len() != terms[k].len() || m.iter().any(|r| r.len() != terms[k + 1].len()) {
                return Err(Error::Parse(format!("map {} has the wrong shape", k + 1)));
            }
            for (r, row) in m.iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    if !field.is_zero(x) && terms[k][r] & terms[k + 1][c] != terms[k][r] {
                        return Err(Error::Precondition(format!("map {} entry ({}, {}) is not an inclusion", k + 1, r + 1, c + 1)));
                    }
                }
            }
        }
        for k in 0..maps.len().saturating_sub(1) {
            for r in 0..terms[k].len() {
                for c in 0..terms[k + 2].len() {
                    let s = (0..terms[k + 1].len()).fold(field.zero(), |acc, m| field.add(&acc, &field.mul(&maps[k][r][m], &maps[k + 1][m][c])));
                    if !field.is_zero(&s) {
                        return Err(Error::Precondition(format!("maps {} and {} do not compose to zero", k + 1, k + 2)));
                    }
                }
            }
        }
        Ok(SfComplex { n, terms, maps })
    }

    /// Homology per position and square-free multidegree w; the component of
    /// object a in degree w is one-dimensional when a is contained in w.
    pub fn homology<F: Field<Scalar = S>>(&self, field: &F) -> Vec<BTreeMap<Mono, usize>> {
        let len = self.terms.len();
        let mut out = vec![BTreeMap::new(); len];
        for w in 0..=simplicial::full(self.n) {
            let present: Vec<Vec<usize>> = self.terms.iter().map(|t| (0..t.len()).filter(|&i| t[i] & w == t[i]).collect()).collect();
            let rank = |k: usize| -> usize {
                // map from term k+1 to term k
                if k + 1 >= len {
                    return 0;
                }
                let cols = present[k + 1]
                    .iter()
                    .map(|&c| linalg::collect_sparse(field, present[k].iter().enumerate().map(|(ri, &r)| (ri, self.maps[k][r][c].clone())).collect()))
                    .collect::<Vec<_>>();
                linalg::rank(field, cols)
            };
            let ranks: Vec<usize> = (0..len).map(rank).collect();
            for k in 0..len {
                let h = present[k].len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 };
                if h > 0 {
                    out[k].insert(w, h);
                }
            }
        }
        out
    }

    pub fn is_acyclic<F: Field<Scalar = S>>(&self, field: &F) -> bool {
        self.homology(field).iter().skip(1).all(|h| h.is_empty())
    }

    /// The E-module resolved by the complex: the cokernel of the first map,
    /// with the inclusion of b into a written as right multiplication by the
    /// signed monomial taking a to b.
    pub fn exterior_cokernel<F: Field<Scalar = S>>(&self, ext: &Exterior<F>) -> Result<GradedModule<F>> {
        let f = &ext.field;
        let t0 = self.terms.first().cloned().unwrap_or_default();
        let mut relations = Vec::new();
        for (g, &a) in t0.iter().enumerate() {
            for j in exterior::support(a) {
                relations.push(vec![(g, ext.var(j))]);
            }
        }
        if let (Some(m), Some(t1)) = (self.maps.first(), self.terms.get(1)) {
            for (c, &b) in t1.iter().enumerate() {
                let mut rel = Vec::new();
                for (r, &a) in t0.iter().enumerate() {
                    if f.is_zero(&m[r][c]) {
                        continue;
                    }
                    let u = b & !a;
                    let neg = mul_sign(u, a).expect("disjoint");
                    rel.push((r, ext.term(u, f.signed(&m[r][c], neg))));
                }
                relations.push(rel);
            }
        }
        let p = GradedPresentation {
            n: self.n,
            generator_degrees: t0.iter().map(|&a| exterior::degree(a) as i32).collect(),
            generator_multidegrees: Some(t0.iter().map(|&a| mono_multideg(self.n, a)).collect()),
            relations,
        };
        GradedModule::from_presentation(ext, &p)
    }
}

/// A free complex over S with square-free generator degrees; each entry is a
/// scalar times a monomial.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareFreeFreeComplex<S> {
    pub n: usize,
    pub terms: Vec<Vec<Mono>>,
    /// `maps[k][row][col] = (coefficient, monomial)`
    pub maps: Vec<Vec<Vec<(S, Mono)>>>,
}

/// Restricts a free complex to its square-free multidegrees.
pub fn squarefree_part<F: Field>(field: &F, c: &SquareFreeFreeComplex<F::Scalar>) -> Result<SfComplex<F::Scalar>> {
    let mut maps = Vec::new();
    for (k, m) in c.maps.iter().enumerate() {
        let mut rows = Vec::new();
        for (r, row) in m.iter().enumerate() {
            let mut out = Vec::new();
            for (col, (x, mono)) in row.iter().enumerate() {
                if !field.is_zero(x) {
                    let (a, b) = (c.terms[k][r], c.terms[k + 1][col]);
                    if a & mono != 0 || a | mono != b {
                        return Err(Error::Precondition(format!("map {} entry ({}, {}) is not homogeneous of square-free degree", k + 1, r + 1, col + 1)));
                    }
                }
                out.push(x.clone());
            }
            rows.push(out);
        }
        maps.push(rows);
    }
    SfComplex::new(field, c.n, c.terms.clone(), maps)
}

/// Koszul complex on the variables in `vars`.
pub fn koszul_complex<F: Field>(field: &F, n: usize, vars: Mono) -> SquareFreeFreeComplex<F::Scalar> {
    let k = exterior::degree(vars);
    let subsets = |d: usize| -> Vec<Mono> { exterior::monomials_of_degree(k, d).into_iter().map(|m| embed(m, vars)).collect() };
    let terms: Vec<Vec<Mono>> = (0..=k).map(subsets).collect();
    let maps = (0..k)
        .map(|d| {
            terms[d]
                .iter()
                .map(|&a| {
                    terms[d + 1]
                        .iter()
                        .map(|&b| {
                            if a & b == a {
                                let j = b & !a;
                                // position of j inside b gives the sign
                                let pos = (b & (j - 1)).count_ones();
                                (field.signed(&field.one(), pos % 2 == 1), j)
                            } else {
                                (field.zero(), 0)
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    SquareFreeFreeComplex { n, terms, maps }
}

/// Places the bits of `m` (over 0..|vars|) onto the set bits of `vars`.
fn embed(m: Mono, vars: Mono) -> Mono {
    exterior::support(vars).enumerate().filter(|(i, _)| m >> i & 1 == 1).fold(0, |acc, (_, v)| acc | 1 << v)
}

/// Minimal free resolution over S of the ideal generated by two square-free
/// monomials with neither dividing the other.
pub fn two_generator_resolution<F: Field>(field: &F, n: usize, a: Mono, b: Mono) -> SquareFreeFreeComplex<F::Scalar> {
    let l = a | b;
    SquareFreeFreeComplex {
        n,
        terms: vec![vec![a, b], vec![l]],
        maps: vec![vec![vec![(field.one(), l & !a)], vec![(field.neg(&field.one()), l & !b)]]],
    }
}

/// Multigraded Betti numbers over S of a square-free monomial ideal from
/// reduced homology of restrictions of its Stanley-Reisner complex.
pub fn hochster_betti<F: Field>(field: &F, n: usize, gens: &[Mono]) -> MultiTable {
    let mut out = MultiTable::new();
    if gens.contains(&0) {
        out.insert((0, vec![0; n]), 1);
        return out;
    }
    let delta = SimplicialComplex::from_monomial_ideal(n, gens);
    for a in 0..=simplicial::full(n) {
        let h = delta.restriction(a).reduced_homology(field);
        let size = exterior::degree(a) as i32;
        for i in 0..n as i32 {
            let dim = size - i - 2;
            if dim < -1 {
                break;
            }
            let b = h[(dim + 1) as usize];
            if b > 0 {
                out.insert((i as usize, mono_multideg(n, a)), b);
            }
        }
    }
    out
}

/// Multigraded Betti numbers over E of the same ideal through `steps`.
pub fn exterior_multigraded_betti<F: Field>(field: &F, n: usize, gens: &[Mono], steps: usize) -> Result<MultiTable> {
    let ext = Exterior::new(n, field)?;
    let elems: Vec<ExtElem<F::Scalar>> = gens.iter().map(|&g| ext.monomial(g)).collect();
    let m = GradedModule::ideal(&ext, &elems)?;
    let t = minimal_free_resolution(&m, steps);
    Ok(t.multigraded.unwrap_or_default())
}

/// Expands sum beta_{i,a} t^i u^a / prod_{j in supp a} (1 - t u_j) through t^trunc.
pub fn expand_s_series(n: usize, s: &MultiTable, trunc: usize) -> MultiTable {
    let mut out = MultiTable::new();
    for ((i, a), b) in s {
        if *i > trunc {
            continue;
        }
        let supp: Vec<usize> = (0..n).filter(|&j| a[j] > 0).collect();
        for extra in 0..=trunc - i {
            for c in exponent_vectors(supp.len(), extra) {
                let mut d = a.clone();
                for (k, &j) in supp.iter().enumerate() {
                    d[j] += c[k];
                }
                *out.entry((i + extra, d)).or_default() += b;
            }
        }
    }
    out
}

/// The exterior Betti series equals the expanded polynomial-ring series
/// coefficientwise through t^trunc.
pub fn verify_betti_identity<F: Field>(field: &F, n: usize, gens: &[Mono], trunc: usize) -> Result<bool> {
    let lhs = exterior_multigraded_betti(field, n, gens, trunc)?;
    let rhs = expand_s_series(n, &hochster_betti(field, n, gens), trunc);
    Ok(lhs == rhs)
}

/// All entries of a table on one line |a| - i = d.
pub fn table_is_linear(t: &MultiTable) -> bool {
    let mut shifts = t.keys().map(|(i, a)| a.iter().sum::<u32>() as i64 - *i as i64);
    match shifts.next() {
        None => true,
        Some(d) => shifts.all(|x| x == d),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EagonReiner {
    pub cohen_macaulay: bool,
    pub dual_linear: bool,
}

impl EagonReiner {
    pub fn holds(&self) -> bool {
        self.cohen_macaulay == self.dual_linear
    }
}

/// S/I Cohen-Macaulay (Reisner) against a linear resolution of the ideal of
/// the Alexander dual (Hochster).
pub fn eagon_reiner_check<F: Field>(field: &F, n: usize, gens: &[Mono]) -> EagonReiner {
    let delta = SimplicialComplex::from_monomial_ideal(n, gens);
    let dual_ideal = delta.alexander_dual().stanley_reisner_ideal();
    EagonReiner { cohen_macaulay: delta.is_cohen_macaulay(field), dual_linear: table_is_linear(&hochster_betti(field, n, &dual_ideal)) }
}

/// Every square-free monomial ideal on n variables as its minimal generators
/// (antichains of subsets), including the zero and unit ideals.
pub fn all_squarefree_ideals(n: usize) -> Vec<Vec<Mono>> {
    assert!(n <= 4, "exhaustive enumeration only for n <= 4");
    let sets = 1usize << n;
    let mut out = Vec::new();
    for family in 0u64..(1u64 << sets) {
        let members: Vec<Mono> = (0..sets as u32).filter(|&s| family >> s & 1 == 1).collect();
        let antichain = members.iter().all(|&a| members.iter().all(|&b| a == b || a & b != a));
        if antichain {
            out.push(members);
        }
    }
    out
}

/// The square-free complexes used to exercise the total-complex functor:
/// single objects on three variables, every strict inclusion on four
/// variables, the two-generator Taylor complexes on three variables, and the
/// three-points presentation.
pub fn b0_test_complexes<F: Field>(field: &F) -> Result<Vec<(String, SfComplex<F::Scalar>)>> {
    let name = |m: Mono| format!("{{{}}}", exterior::support(m).map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","));
    let mut out = Vec::new();
    for a in 0..8u32 {
        out.push((format!("object {}", name(a)), SfComplex::new(field, 3, vec![vec![a]], vec![])?));
    }
    for b in 0..16u32 {
        for a in 0..16u32 {
            if a & b == a && a != b {
                let c = SfComplex::new(field, 4, vec![vec![a], vec![b]], vec![vec![vec![field.one()]]])?;
                out.push((format!("inclusion {} < {}", name(a), name(b)), c));
            }
        }
    }
    for a in 1..8u32 {
        for b in a + 1..8u32 {
            if a & b != a && a & b != b {
                let c = squarefree_part(field, &two_generator_resolution(field, 3, a, b))?;
                out.push((format!("taylor {} {}", name(a), name(b)), c));
            }
        }
    }
    out.push(("three points".into(), three_points(field).two_term_complex(field)?));
    Ok(out)
}

/// Faces are the nbc sets of a central arrangement under the given order.
pub fn broken_circuit_complex<F: Field>(arr: &Arrangement<F>, rank: &[usize]) -> Result<SimplicialComplex> {
    if !arr.is_central() {
        return precondition("broken-circuit complex needs a central arrangement");
    }
    Ok(SimplicialComplex::from_monomial_ideal(arr.n(), &arr.broken_circuits(rank)))
}

pub fn multitable_to_json(t: &MultiTable) -> Value {
    Value::Array(t.iter().map(|((i, a), r)| json!({"step": i, "multidegree": a, "rank": r})).collect())
}

pub fn multitable_from_json(v: &Value) -> Result<MultiTable> {
    #[derive(serde::Deserialize)]
    struct Entry {
        step: usize,
        multidegree: MultiDeg,
        rank: usize,
    }
    let entries: Vec<Entry> = serde_json::from_value(v.clone())?;
    let mut out = MultiTable::new();
    for e in entries {
        if e.rank > 0 {
            *out.entry((e.step, e.multidegree)).or_default() += e.rank;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn md(v: &[u32]) -> MultiDeg {
        v.to_vec()
    }

    #[test]
    fn antichain_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| all_squarefree_ideals(n).len()).collect();
        assert_eq!(counts, vec![3, 6, 20, 168]);
    }

    #[test]
    fn hochster_examples() {
        let q = Rationals;
        let t = hochster_betti(&q, 2, &[0b11]);
        assert_eq!(t, [((0, md(&[1, 1])), 1)].into_iter().collect());
        let t = hochster_betti(&q, 3, &[0b011, 0b101]);
        let expect: MultiTable = [((0, md(&[1, 1, 0])), 1), ((0, md(&[1, 0, 1])), 1), ((1, md(&[1, 1, 1])), 1)].into_iter().collect();
        assert_eq!(t, expect);
        assert!(hochster_betti(&q, 3, &[]).is_empty());
    }

    #[test]
    fn exterior_examples() {
        let q = Rationals;
        let t = exterior_multigraded_betti(&q, 2, &[0b11], 2).unwrap();
        let expect: MultiTable = [
            ((0, md(&[1, 1])), 1),
            ((1, md(&[2, 1])), 1),
            ((1, md(&[1, 2])), 1),
            ((2, md(&[3, 1])), 1),
            ((2, md(&[2, 2])), 1),
            ((2, md(&[1, 3])), 1),
        ]
        .into_iter()
        .collect();
        assert_eq!(t, expect);
        assert!(exterior_multigraded_betti(&q, 2, &[], 2).unwrap().is_empty());
    }

    #[test]
    fn identity_small_cases() {
        let q = Rationals;
        assert!(verify_betti_identity(&q, 2, &[0b11], 3).unwrap());
        assert!(verify_betti_identity(&q, 3, &[], 3).unwrap());
        assert!(verify_betti_identity(&q, 3, &[0b011, 0b101], 3).unwrap());
    }

    #[test]
    fn eagon_reiner_examples() {
        let q = Rationals;
        let two_edges = SimplicialComplex::new(4, vec![0b0011, 0b1100]).unwrap().stanley_reisner_ideal();
        let er = eagon_reiner_check(&q, 4, &two_edges);
        assert_eq!(er, EagonReiner { cohen_macaulay: false, dual_linear: false });
        assert!(eagon_reiner_check(&q, 3, &[]).holds());
        assert!(eagon_reiner_check(&q, 3, &[0]).holds());
    }

    #[test]
    fn transfer_round_trip() {
        let q = Rationals;
        let p = three_points(&q);
        assert_eq!(p.relation_degrees().unwrap(), vec![0b111, 0b111]);
        let e = p.transfer(Ring::Exterior);
        assert_eq!(e.generators, p.generators);
        assert_eq!(e.transfer(Ring::Polynomial), p);
        let sr = stanley_reisner_presentation(&q, 3, &[0b011, 0b101]);
        let ext = Exterior::new(3, &q).unwrap();
        let m = GradedModule::from_presentation(&ext, &sr.transfer(Ring::Exterior).exterior_presentation(&ext)).unwrap();
        let direct = GradedModule::quotient_algebra(&ext, &[ext.monomial(0b011), ext.monomial(0b101)]).unwrap();
        assert_eq!(m.dims, direct.dims);
        let bad = SquareFreePresentation::new(2, Ring::Polynomial, vec![0b01], vec![vec![(0, q.one(), 0b01)]]);
        assert!(matches!(bad, Err(Error::Precondition(_))));
    }

    #[test]
    fn squarefree_parts() {
        let q = Rationals;
        let k = squarefree_part(&q, &koszul_complex(&q, 2, 0b11)).unwrap();
        assert_eq!(k.terms.iter().map(|t| t.len()).collect::<Vec<_>>(), vec![1, 2, 1]);
        assert!(k.is_acyclic(&q));
        assert_eq!(k.homology(&q)[0], [(0, 1)].into_iter().collect());
        let t = squarefree_part(&q, &two_generator_resolution(&q, 3, 0b011, 0b101)).unwrap();
        assert!(t.is_acyclic(&q));
        // the cokernel in square-free degrees is the square-free part of the ideal
        let h0 = &t.homology(&q)[0];
        let expect: BTreeMap<Mono, usize> = (0..8u32).filter(|&w| w & 0b011 == 0b011 || w & 0b101 == 0b101).map(|w| (w, 1)).collect();
        assert_eq!(h0, &expect);
        let bad = SquareFreeFreeComplex { n: 2, terms: vec![vec![0b01], vec![0b11]], maps: vec![vec![vec![(q.one(), 0b01)]]] };
        assert!(squarefree_part(&q, &bad).is_err());
    }

    #[test]
    fn linearity_transfers_between_rings() {
        let p = PrimeField::new(32003).unwrap();
        for gens in all_squarefree_ideals(3) {
            let s = hochster_betti(&p, 3, &gens);
            let e = exterior_multigraded_betti(&p, 3, &gens, 3).unwrap();
            assert_eq!(table_is_linear(&s), table_is_linear(&e), "{gens:?}");
        }
    }
    #[test]
    fn socle_ideal_is_cartan() {
        let q = Rationals;
        let t = exterior_multigraded_betti(&q, 3, &[0b111], 3).unwrap();
        let mut per_step = vec![0usize; 4];
        for ((i, _), r) in &t {
            per_step[*i] += r;
        }
        let want: Vec<usize> = cartan_resolution(&[1, 1, 1], 3).unwrap().iter().map(|c| c.rank).collect();
        assert_eq!(per_step, want);
    }

    #[test]
    fn cone_of_central3_broken_circuits() {
        let q = Rationals;
        let arr = crate::arrangement::central_lines(&q, 3).unwrap().cone();
        let rank: Vec<usize> = (0..arr.n()).collect();
        let bc = arr.broken_circuits(&rank);
        assert!(verify_betti_identity(&q, arr.n(), &bc, 3).unwrap());
        assert_eq!(eagon_reiner_check(&q, arr.n(), &bc), EagonReiner { cohen_macaulay: true, dual_linear: true });
        assert!(broken_circuit_complex(&arr, &rank).unwrap().is_cohen_macaulay(&q));
        assert!(broken_circuit_complex(&crate::arrangement::generic_lines(&q, 3).unwrap(), &[0, 1, 2]).is_err());
    }

    #[test]
    fn zero_presentation_transfers() {
        let z: SquareFreePresentation<num_rational::BigRational> = SquareFreePresentation::new(3, Ring::Polynomial, vec![], vec![]).unwrap();
        assert_eq!(z.transfer(Ring::Exterior).transfer(Ring::Polynomial), z);
        let q = Rationals;
        let one = squarefree_part(&q, &SquareFreeFreeComplex { n: 3, terms: vec![vec![0b011]], maps: vec![] }).unwrap();
        assert_eq!(one.terms, vec![vec![0b011]]);
    }

    #[test]
    fn multitable_json() {
        let q = Rationals;
        let t = hochster_betti(&q, 3, &[0b011, 0b101]);
        assert_eq!(multitable_from_json(&multitable_to_json(&t)).unwrap(), t);
    }
}
