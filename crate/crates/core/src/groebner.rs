//! Gröbner bases of homogeneous ideals in the exterior algebra.

use std::collections::BTreeMap;

use crate::exterior::{self, mul_sign, ExtElem, Exterior, Mono, MonoOrder};
use crate::field::Field;

#[derive(Clone, Debug)]
pub struct GroebnerBasis<S> {
    pub order: MonoOrder,
    /// Monic, auto-reduced, sorted by lead monomial (increasing).
    pub elements: Vec<ExtElem<S>>,
}

fn lead<S: Clone>(f: &ExtElem<S>, order: &MonoOrder) -> Option<(Mono, S)> {
    f.lead(order)
}

fn divides(a: Mono, b: Mono) -> bool {
    a & b == a
}

/// `f - c * e_u * g` where `e_u * lead(g) = s * e_m`, chosen to cancel the
/// term `c * e_m` of f.
fn cancel<F: Field>(ext: &Exterior<F>, f: &ExtElem<F::Scalar>, m: Mono, c: &F::Scalar, g: &ExtElem<F::Scalar>, glead: Mono) -> ExtElem<F::Scalar> {
    let u = m & !glead;
    let neg = mul_sign(u, glead).expect("disjoint");
    let k = ext.field.signed(c, neg);
    ext.sub(f, &ext.scale(&ext.mono_mul(u, g), &k))
}

fn make_monic<F: Field>(ext: &Exterior<F>, f: &ExtElem<F::Scalar>, order: &MonoOrder) -> ExtElem<F::Scalar> {
    match lead(f, order) {
        Some((_, c)) => ext.scale(f, &ext.field.inv(&c)),
        None => f.clone(),
    }
}

/// Reduces every term of `f` divisible by a lead monomial of `basis`.
pub fn reduce<F: Field>(ext: &Exterior<F>, f: &ExtElem<F::Scalar>, basis: &[ExtElem<F::Scalar>], order: &MonoOrder) -> ExtElem<F::Scalar> {
    let leads: Vec<Mono> = basis.iter().map(|g| lead(g, order).expect("nonzero basis element").0).collect();
    let mut f = f.clone();
    let mut done: BTreeMap<Mono, F::Scalar> = BTreeMap::new();
    // repeatedly take the largest remaining term
    while let Some((m, c)) = lead(&f, order) {
        match leads.iter().position(|&l| divides(l, m)) {
            Some(i) => {
                let lc = lead(&basis[i], order).unwrap().1;
                let k = ext.field.div(&c, &lc);
                f = cancel(ext, &f, m, &k, &basis[i], leads[i]);
            }
            None => {
                f.terms.remove(&m);
                done.insert(m, c);
            }
        }
    }
    ExtElem { terms: done }
}

/// Exterior Buchberger algorithm: S-pairs over the union of lead
/// supports, plus `x_i * g` for each variable of lead(g).
pub fn buchberger<F: Field>(ext: &Exterior<F>, gens: &[ExtElem<F::Scalar>], order: &MonoOrder) -> GroebnerBasis<F::Scalar> {
    let mut g: Vec<ExtElem<F::Scalar>> = Vec::new();
    // (degree, kind, i, j): kind 0 = S-pair (i, j), kind 1 = square pair (i, var j)
    let mut queue: Vec<(usize, u8, usize, usize)> = Vec::new();
    let mut pending: Vec<ExtElem<F::Scalar>> = gens.iter().filter(|x| !x.is_zero()).cloned().collect();
    pending.sort_by_key(|x| x.terms.keys().map(|m| exterior::degree(*m)).max().unwrap_or(0));

    let add = |g: &mut Vec<ExtElem<F::Scalar>>, queue: &mut Vec<(usize, u8, usize, usize)>, h: ExtElem<F::Scalar>| {
        let h = make_monic(ext, &h, order);
        let hl = lead(&h, order).unwrap().0;
        let idx = g.len();
        for (i, other) in g.iter().enumerate() {
            let ol = lead(other, order).unwrap().0;
            queue.push((exterior::degree(hl | ol), 0, i, idx));
        }
        for v in exterior::support(hl) {
            queue.push((exterior::degree(hl) + 1, 1, idx, v));
        }
        g.push(h);
    };

    loop {
        // feed input generators by degree, interleaved with pair processing
        let next_pair_deg = queue.iter().map(|p| p.0).min();
        let next_gen_deg = pending.first().map(|x| x.terms.keys().map(|m| exterior::degree(*m)).max().unwrap_or(0));
        let take_gen = match (next_gen_deg, next_pair_deg) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        };
        let candidate = if take_gen {
            pending.remove(0)
        } else {
            let k = (0..queue.len()).min_by_key(|&k| (queue[k].0, queue[k].1, queue[k].2, queue[k].3)).unwrap();
            let (_, kind, i, j) = queue.remove(k);
            if kind == 0 {
                let (li, lj) = (lead(&g[i], order).unwrap().0, lead(&g[j], order).unwrap().0);
                let l = li | lj;
                let ui = l & !li;
                let uj = l & !lj;
                let si = ext.field.signed(&ext.field.one(), mul_sign(ui, li).unwrap());
                let sj = ext.field.signed(&ext.field.one(), mul_sign(uj, lj).unwrap());
                ext.sub(&ext.scale(&ext.mono_mul(ui, &g[i]), &si), &ext.scale(&ext.mono_mul(uj, &g[j]), &sj))
            } else {
                ext.mono_mul(1 << j, &g[i])
            }
        };
        let r = reduce(ext, &candidate, &g, order);
        if !r.is_zero() {
            add(&mut g, &mut queue, r);
        }
    }
    GroebnerBasis { order: order.clone(), elements: autoreduce(ext, g, order) }
}

fn autoreduce<F: Field>(ext: &Exterior<F>, g: Vec<ExtElem<F::Scalar>>, order: &MonoOrder) -> Vec<ExtElem<F::Scalar>> {
    let leads: Vec<Mono> = g.iter().map(|x| lead(x, order).unwrap().0).collect();
    // drop elements whose lead is divisible by another lead; on equal leads
    // the first inserted survives
    let keep: Vec<usize> = (0..g.len())
        .filter(|&i| !(0..g.len()).any(|j| j != i && divides(leads[j], leads[i]) && (leads[j] != leads[i] || j < i)))
        .collect();
    let kept: Vec<ExtElem<F::Scalar>> = keep.iter().map(|&i| g[i].clone()).collect();
    let mut out = Vec::new();
    for (k, x) in kept.iter().enumerate() {
        let others: Vec<ExtElem<F::Scalar>> = kept.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, y)| y.clone()).collect();
        let (lm, lc) = lead(x, order).unwrap();
        let mut tail = x.clone();
        tail.terms.remove(&lm);
        let tail = reduce(ext, &tail, &others, order);
        let mut full = tail;
        full.terms.insert(lm, lc);
        out.push(make_monic(ext, &full, order));
    }
    out.sort_by(|a, b| order.cmp(lead(a, order).unwrap().0, lead(b, order).unwrap().0));
    out
}

impl<S: Clone + PartialEq + std::fmt::Debug> GroebnerBasis<S> {
    pub fn leads(&self) -> Vec<Mono> {
        self.elements.iter().map(|g| lead(g, &self.order).unwrap().0).collect()
    }

    /// Lead monomials, minimalized under divisibility.
    pub fn initial_ideal(&self) -> Vec<Mono> {
        let leads = self.leads();
        let mut out: Vec<Mono> = leads.iter().copied().filter(|&m| !leads.iter().any(|&l| l != m && divides(l, m))).collect();
        out.sort_by(|a, b| self.order.cmp(*a, *b));
        out.dedup();
        out
    }
}

impl<S> GroebnerBasis<S> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

pub fn normal_form<F: Field>(ext: &Exterior<F>, f: &ExtElem<F::Scalar>, gb: &GroebnerBasis<F::Scalar>) -> ExtElem<F::Scalar> {
    reduce(ext, f, &gb.elements, &gb.order)
}

/// Checks that every S-pair and square pair reduces to zero.
pub fn is_groebner<F: Field>(ext: &Exterior<F>, basis: &[ExtElem<F::Scalar>], order: &MonoOrder) -> bool {
    let leads: Vec<Mono> = basis.iter().map(|g| lead(g, order).unwrap().0).collect();
    for (i, g) in basis.iter().enumerate() {
        for v in exterior::support(leads[i]) {
            if !reduce(ext, &ext.mono_mul(1 << v, g), basis, order).is_zero() {
                return false;
            }
        }
        for j in i + 1..basis.len() {
            let l = leads[i] | leads[j];
            let (ui, uj) = (l & !leads[i], l & !leads[j]);
            let ci = ext.field.inv(&lead(g, order).unwrap().1);
            let cj = ext.field.inv(&lead(&basis[j], order).unwrap().1);
            let si = ext.field.signed(&ci, mul_sign(ui, leads[i]).unwrap());
            let sj = ext.field.signed(&cj, mul_sign(uj, leads[j]).unwrap());
            let s = ext.sub(&ext.scale(&ext.mono_mul(ui, g), &si), &ext.scale(&ext.mono_mul(uj, &basis[j]), &sj));
            if !reduce(ext, &s, basis, order).is_zero() {
                return false;
            }
        }
    }
    true
}

/// A linear form is regular on E/I when multiplication by it is exact.
pub fn is_regular_linear_form<F: Field>(ext: &Exterior<F>, f: &ExtElem<F::Scalar>, gens: &[ExtElem<F::Scalar>]) -> crate::Result<bool> {
    if !f.is_zero() && f.homogeneous_degree() != Some(1) {
        return crate::error::precondition("expected a linear form");
    }
    let coeffs: Vec<F::Scalar> = (0..ext.n).map(|i| f.terms.get(&(1 << i)).cloned().unwrap_or_else(|| ext.field.zero())).collect();
    crate::local_systems::is_regular_on_quotient(ext, &coeffs, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{central_lines, generic_lines};
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    #[test]
    fn central3_basis_and_normal_forms() {
        let q = Rationals;
        let a = central_lines(&q, 3).unwrap();
        let ext = a.exterior();
        let gens = a.os_ideal(&ext);
        let gb = buchberger(&ext, &gens, &MonoOrder::lex(3));
        assert_eq!(gb.len(), 1);
        assert_eq!(gb.initial_ideal(), vec![0b110]);
        let p = |s: &str| ext.parse(s, None).unwrap();
        assert_eq!(normal_form(&ext, &p("e2e3"), &gb), p("e1e3 - e1e2"));
        assert!(normal_form(&ext, &gens[0], &gb).is_zero());
        assert!(normal_form(&ext, &p("e1e2e3"), &gb).is_zero());
    }

    #[test]
    fn example_quadrics_are_a_basis() {
        let q = Rationals;
        let ext = Exterior::new(4, &q).unwrap();
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let gens: Vec<_> = ["ab+cd", "ac", "bc"].iter().map(|s| ext.parse(s, Some(&names)).unwrap()).collect();
        // a > b > c > d, listed smallest first
        let order = MonoOrder::lex_from_list(4, &[3, 2, 1, 0]).unwrap();
        assert!(is_groebner(&ext, &gens, &order));
        let gb = buchberger(&ext, &gens, &order);
        assert_eq!(gb.len(), 3);
        let mut init = gb.initial_ideal();
        init.sort();
        assert_eq!(init, vec![0b0011, 0b0101, 0b0110]);
        assert!(is_regular_linear_form(&ext, &ext.var(3), &gens).unwrap());
    }

    #[test]
    fn regular_forms() {
        let q = Rationals;
        let ext = Exterior::new(3, &q).unwrap();
        let e = ext.parse("e1 - 2*e3", None).unwrap();
        assert!(is_regular_linear_form(&ext, &e, &[]).unwrap());
        let a = central_lines(&q, 3).unwrap();
        let os = a.os_ideal(&ext);
        assert!(!is_regular_linear_form(&ext, &ext.parse("e1 - e2", None).unwrap(), &os).unwrap());
        assert!(is_regular_linear_form(&ext, &ext.var(0), &os).unwrap());
        assert!(is_regular_linear_form(&ext, &ext.monomial(0b11), &os).is_err());
    }

    #[test]
    fn zero_ideal() {
        let q = Rationals;
        let ext = Exterior::new(3, &q).unwrap();
        let gb = buchberger(&ext, &[ExtElem::zero()], &MonoOrder::deglex(3));
        assert!(gb.is_empty());
        assert!(gb.initial_ideal().is_empty());
    }

    #[test]
    fn broken_circuits_are_the_initial_ideal() {
        let f = PrimeField::new(32003).unwrap();
        for a in [central_lines(&f, 4).unwrap(), central_lines(&f, 6).unwrap(), generic_lines(&f, 4).unwrap().cone()] {
            let ext = a.exterior();
            let gb = buchberger(&ext, &a.os_ideal(&ext), &MonoOrder::lex(a.n()));
            assert!(is_groebner(&ext, &gb.elements, &gb.order));
            let mut init = gb.initial_ideal();
            init.sort();
            let rank: Vec<usize> = (0..a.n()).collect();
            let bc = a.broken_circuits(&rank);
            // minimal broken circuits generate the initial ideal
            let minimal: Vec<Mono> = bc.iter().copied().filter(|&m| !bc.iter().any(|&l| l != m && divides(l, m))).collect();
            assert_eq!(init, minimal);
        }
    }

    fn ideal_strategy() -> impl Strategy<Value = Vec<Vec<(u32, i64)>>> {
        prop::collection::vec(prop::collection::vec((0u32..32, -2i64..3), 1..4), 1..4)
    }

    proptest! {
        #[test]
        fn buchberger_certificate(raw in ideal_strategy(), d in 1usize..4) {
            let f = PrimeField::new(101).unwrap();
            let ext = Exterior::new(5, &f).unwrap();
            let gens: Vec<_> = raw.iter().map(|terms| {
                let mut e = ExtElem::zero();
                for (m, c) in terms {
                    // force homogeneity in degree d
                    let mm = exterior::monomials_of_degree(5, d)[*m as usize % exterior::binomial(5, d)];
                    e = ext.add(&e, &ext.term(mm, f.from_i64(*c)));
                }
                e
            }).collect();
            let order = MonoOrder::deglex(5);
            let gb = buchberger(&ext, &gens, &order);
            prop_assert!(is_groebner(&ext, &gb.elements, &order));
            for g in &gens {
                prop_assert!(normal_form(&ext, g, &gb).is_zero());
            }
            let leads = gb.leads();
            for (i, a) in leads.iter().enumerate() {
                for (j, b) in leads.iter().enumerate() {
                    prop_assert!(i == j || !divides(*a, *b));
                }
            }
        }
    }
}
