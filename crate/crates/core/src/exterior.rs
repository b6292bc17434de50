//! The exterior algebra on e_1..e_n. Monomials are bitmasks (bit i is e_{i+1}).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{parse_rational, Field};

pub type Mono = u32;

pub const MAX_VARS: usize = 24;

pub fn degree(m: Mono) -> usize {
    m.count_ones() as usize
}

/// Variable indices (0-based) in increasing order.
pub fn support(m: Mono) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| m >> i & 1 == 1)
}

/// Sign of `e_a * e_b` relative to `e_{a|b}`: `None` if the product
/// vanishes, `Some(true)` if it is negative.
pub fn mul_sign(a: Mono, b: Mono) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    let mut inv = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        // factors of a sitting to the right of e_j after concatenation
        inv += (a >> j).count_ones();
    }
    Some(inv % 2 == 1)
}

/// All monomials of degree `d` in `n` variables, in increasing mask order.
pub fn monomials_of_degree(n: usize, d: usize) -> Vec<Mono> {
    if d > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    for m in 0u32..(1u32 << n) {
        if degree(m) == d {
            out.push(m);
        }
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// Renders a monomial as `e1e3`, or `1` for the unit.
pub fn mono_name(m: Mono, names: Option<&[String]>) -> String {
    if m == 0 {
        return "1".into();
    }
    support(m)
        .map(|i| match names {
            Some(ns) => ns[i].clone(),
            None => format!("e{}", i + 1),
        })
        .collect::<Vec<_>>()
        .join("")
}

/// Term order on exterior monomials. `rank[i]` is the position of variable i
/// in the variable order, smallest first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoOrder {
    Lex(Vec<usize>),
    DegLex(Vec<usize>),
}

impl MonoOrder {
    /// e_1 < e_2 < ... < e_n.
    pub fn lex(n: usize) -> Self {
        MonoOrder::Lex((0..n).collect())
    }
    pub fn deglex(n: usize) -> Self {
        MonoOrder::DegLex((0..n).collect())
    }

    /// Variables listed from smallest to largest.
    pub fn lex_from_list(n: usize, smallest_first: &[usize]) -> Result<Self> {
        Ok(MonoOrder::Lex(ranks_from_list(n, smallest_first)?))
    }

    pub fn ranks(&self) -> &[usize] {
        match self {
            MonoOrder::Lex(r) | MonoOrder::DegLex(r) => r,
        }
    }

    /// Re-indexes the mask so that integer comparison is lex comparison.
    pub fn key(&self, m: Mono) -> Mono {
        let r = self.ranks();
        let mut k = 0u32;
        for i in support(m) {
            k |= 1 << r[i];
        }
        k
    }

    pub fn cmp(&self, a: Mono, b: Mono) -> Ordering {
        match self {
            MonoOrder::Lex(_) => self.key(a).cmp(&self.key(b)),
            MonoOrder::DegLex(_) => degree(a).cmp(&degree(b)).then(self.key(a).cmp(&self.key(b))),
        }
    }
}

fn ranks_from_list(n: usize, smallest_first: &[usize]) -> Result<Vec<usize>> {
    if smallest_first.len() != n {
        return Err(Error::Parse(format!("order lists {} variables, expected {n}", smallest_first.len())));
    }
    let mut rank = vec![usize::MAX; n];
    for (pos, &v) in smallest_first.iter().enumerate() {
        if v >= n || rank[v] != usize::MAX {
            return Err(Error::Parse("order is not a permutation".into()));
        }
        rank[v] = pos;
    }
    Ok(rank)
}

/// Element of the exterior algebra, terms keyed by monomial mask.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtElem<S> {
    pub terms: BTreeMap<Mono, S>,
}

impl<S: Clone> ExtElem<S> {
    pub fn zero() -> Self {
        ExtElem { terms: BTreeMap::new() }
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn support(&self) -> impl Iterator<Item = Mono> + '_ {
        self.terms.keys().copied()
    }
    /// Degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = degree(*it.next()?);
        it.all(|m| degree(*m) == d).then_some(d)
    }
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }
    pub fn lead(&self, order: &MonoOrder) -> Option<(Mono, S)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(*a.0, *b.0))
            .map(|(m, c)| (*m, c.clone()))
    }
}

/// Arithmetic context for the exterior algebra on `n` generators.
#[derive(Clone, Debug)]
pub struct Exterior<F: Field> {
    pub n: usize,
    pub field: F,
}

impl<F: Field> Exterior<F> {
    pub fn new(n: usize, field: &F) -> Result<Self> {
        if n > MAX_VARS {
            return Err(Error::Precondition(format!("at most {MAX_VARS} variables supported, got {n}")));
        }
        Ok(Exterior { n, field: field.clone() })
    }

    pub fn dim(&self, d: usize) -> usize {
        binomial(self.n, d)
    }

    pub fn one(&self) -> ExtElem<F::Scalar> {
        self.monomial(0)
    }

    pub fn monomial(&self, m: Mono) -> ExtElem<F::Scalar> {
        self.term(m, self.field.one())
    }

    pub fn term(&self, m: Mono, c: F::Scalar) -> ExtElem<F::Scalar> {
        let mut e = ExtElem::zero();
        if !self.field.is_zero(&c) {
            e.terms.insert(m, c);
        }
        e
    }

    /// The generator e_{i+1}.
    pub fn var(&self, i: usize) -> ExtElem<F::Scalar> {
        self.monomial(1 << i)
    }

    /// Sum of `c_i e_i` for a coefficient vector.
    pub fn linear_form(&self, coeffs: &[F::Scalar]) -> ExtElem<F::Scalar> {
        let mut e = ExtElem::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if !self.field.is_zero(c) {
                e.terms.insert(1 << i, c.clone());
            }
        }
        e
    }

    fn add_term(&self, acc: &mut BTreeMap<Mono, F::Scalar>, m: Mono, c: F::Scalar) {
        match acc.get_mut(&m) {
            Some(v) => {
                *v = self.field.add(v, &c);
                if self.field.is_zero(v) {
                    acc.remove(&m);
                }
            }
            None => {
                if !self.field.is_zero(&c) {
                    acc.insert(m, c);
                }
            }
        }
    }

    pub fn add(&self, a: &ExtElem<F::Scalar>, b: &ExtElem<F::Scalar>) -> ExtElem<F::Scalar> {
        let mut t = a.terms.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut t, *m, c.clone());
        }
        ExtElem { terms: t }
    }

    pub fn sub(&self, a: &ExtElem<F::Scalar>, b: &ExtElem<F::Scalar>) -> ExtElem<F::Scalar> {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &ExtElem<F::Scalar>) -> ExtElem<F::Scalar> {
        self.scale(a, &self.field.neg(&self.field.one()))
    }

    pub fn scale(&self, a: &ExtElem<F::Scalar>, c: &F::Scalar) -> ExtElem<F::Scalar> {
        if self.field.is_zero(c) {
            return ExtElem::zero();
        }
        ExtElem { terms: a.terms.iter().map(|(m, v)| (*m, self.field.mul(v, c))).collect() }
    }

    pub fn mul(&self, a: &ExtElem<F::Scalar>, b: &ExtElem<F::Scalar>) -> ExtElem<F::Scalar> {
        let mut t = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some(neg) = mul_sign(*ma, *mb) {
                    let c = self.field.signed(&self.field.mul(ca, cb), neg);
                    self.add_term(&mut t, ma | mb, c);
                }
            }
        }
        ExtElem { terms: t }
    }

    /// `e_m * a` for a monomial m.
    pub fn mono_mul(&self, m: Mono, a: &ExtElem<F::Scalar>) -> ExtElem<F::Scalar> {
        let mut t = BTreeMap::new();
        for (mb, cb) in &a.terms {
            if let Some(neg) = mul_sign(m, *mb) {
                t.insert(m | mb, self.field.signed(cb, neg));
            }
        }
        ExtElem { terms: t }
    }

    /// The boundary derivation: on e_{i_1}...e_{i_t} (i_1 < ... < i_t) it is
    /// the sum over j of (-1)^j times the monomial with the j-th factor removed,
    /// j counted from 1.
    pub fn boundary(&self, a: &ExtElem<F::Scalar>) -> ExtElem<F::Scalar> {
        let mut t = BTreeMap::new();
        for (m, c) in &a.terms {
            for (pos, i) in support(*m).enumerate() {
                let neg = (pos + 1) % 2 == 1;
                self.add_term(&mut t, m & !(1 << i), self.field.signed(c, neg));
            }
        }
        ExtElem { terms: t }
    }

    /// Coordinates of a homogeneous element in the monomial basis of its degree
    /// (increasing mask order), as a sparse vector.
    pub fn coords(&self, a: &ExtElem<F::Scalar>, index: &BTreeMap<Mono, usize>) -> Vec<(usize, F::Scalar)> {
        let mut v: Vec<(usize, F::Scalar)> = a.terms.iter().map(|(m, c)| (index[m], c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    pub fn format(&self, a: &ExtElem<F::Scalar>, order: Option<&MonoOrder>, names: Option<&[String]>) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut ms: Vec<Mono> = a.support().collect();
        match order {
            Some(o) => ms.sort_by(|x, y| o.cmp(*y, *x)),
            None => ms.sort_by(|x, y| y.cmp(x)),
        }
        let mut out = String::new();
        for (k, m) in ms.iter().enumerate() {
            let c = self.field.render(&a.terms[m]);
            let (neg, mag) = match c.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, c),
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let name = mono_name(*m, names);
            if mag == "1" {
                out.push_str(&name);
            } else if *m == 0 {
                out.push_str(&mag);
            } else {
                out.push_str(&format!("{mag}*{name}"));
            }
        }
        out
    }

    /// Parses sums like `e1e2 + 2/3*e3e4 - e2e1`. Factors are matched
    /// greedily against `names` (default `e1`..`en`); their written order
    /// determines the sign.
    pub fn parse(&self, s: &str, names: Option<&[String]>) -> Result<ExtElem<F::Scalar>> {
        let default: Vec<String> = (1..=self.n).map(|i| format!("e{i}")).collect();
        let names = names.unwrap_or(&default);
        let mut by_len: Vec<(usize, &str)> = names.iter().enumerate().map(|(i, s)| (i, s.as_str())).collect();
        by_len.sort_by_key(|(_, s)| std::cmp::Reverse(s.len()));

        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        if compact == "0" {
            return Ok(ExtElem::zero());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (k, ch) in compact.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if k == 0 {
                    neg = ch == '-';
                    continue;
                }
                if cur.is_empty() {
                    return Err(Error::Parse(format!("dangling sign in '{s}'")));
                }
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(Error::Parse(format!("dangling sign in '{s}'")));
        }
        terms.push((neg, cur));

        let mut acc = ExtElem::zero();
        for (neg, t) in terms {
            let (coef_str, rest) = split_coefficient(&t);
            let mut coef = match coef_str {
                Some(c) => self.field.from_rational(&parse_rational(c)?)?,
                None => self.field.one(),
            };
            if neg {
                coef = self.field.neg(&coef);
            }
            let mut m: Mono = 0;
            let mut sign_neg = false;
            let mut r = rest.trim_start_matches('*');
            while !r.is_empty() {
                r = r.trim_start_matches('*');
                let hit = by_len.iter().find(|(_, nm)| r.starts_with(nm));
                let (i, nm) = hit.ok_or_else(|| Error::Parse(format!("unknown factor in '{t}'")))?;
                r = &r[nm.len()..];
                let bit = 1u32 << i;
                match mul_sign(m, bit) {
                    Some(n) => sign_neg ^= n,
                    None => {
                        coef = self.field.zero();
                    }
                }
                m |= bit;
            }
            let c = self.field.signed(&coef, sign_neg);
            let mut tmp = acc.terms.clone();
            self.add_term(&mut tmp, m, c);
            acc = ExtElem { terms: tmp };
        }
        Ok(acc)
    }
}

fn split_coefficient(t: &str) -> (Option<&str>, &str) {
    let end = t
        .char_indices()
        .find(|(_, c)| !(c.is_ascii_digit() || *c == '/'))
        .map(|(i, _)| i)
        .unwrap_or(t.len());
    if end == 0 {
        (None, t)
    } else {
        (Some(&t[..end]), &t[end..])
    }
}

/// Index of each monomial of degree d in the increasing-mask basis.
pub fn degree_index(n: usize, d: usize) -> BTreeMap<Mono, usize> {
    monomials_of_degree(n, d).into_iter().enumerate().map(|(i, m)| (m, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn ext(n: usize) -> Exterior<Rationals> {
        Exterior::new(n, &Rationals).unwrap()
    }

    /// Independent sign oracle: bubble sort the concatenated index list.
    fn sign_by_sorting(a: Mono, b: Mono) -> Option<bool> {
        if a & b != 0 {
            return None;
        }
        let mut seq: Vec<usize> = support(a).chain(support(b)).collect();
        let mut swaps = 0;
        for i in 0..seq.len() {
            for j in 0..seq.len() - 1 - i {
                if seq[j] > seq[j + 1] {
                    seq.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        Some(swaps % 2 == 1)
    }

    #[test]
    fn boundary_low_degrees() {
        let e = ext(3);
        let p = |s: &str| e.parse(s, None).unwrap();
        assert_eq!(e.boundary(&p("e1")), p("-1"));
        assert_eq!(e.boundary(&p("e1e2")), p("e1 - e2"));
        assert_eq!(e.boundary(&p("e1e2e3")), p("-e2e3 + e1e3 - e1e2"));
    }

    #[test]
    fn parse_and_format() {
        let e = ext(4);
        let a = e.parse("e2e1 + 2/3*e3e4", None).unwrap();
        assert_eq!(e.format(&a, None, None), "2/3*e3e4 - e1e2");
        assert!(e.parse("e1e1", None).unwrap().is_zero());
        assert!(e.parse("e5", None).is_err());
        let names: Vec<String> = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        let b = e.parse("ab + cd", Some(&names)).unwrap();
        assert_eq!(b, e.parse("e1e2+e3e4", None).unwrap());
    }

    #[test]
    fn lex_order_ranks_broken_circuits_first() {
        let o = MonoOrder::lex(3);
        // e2e3 is the lead of e1e2 - e1e3 + e2e3
        assert_eq!(o.cmp(0b110, 0b101), Ordering::Greater);
        assert_eq!(o.cmp(0b101, 0b011), Ordering::Greater);
        let d = MonoOrder::deglex(3);
        assert_eq!(d.cmp(0b100, 0b011), Ordering::Less);
        let p = MonoOrder::lex_from_list(4, &[3, 2, 1, 0]).unwrap();
        assert_eq!(p.cmp(0b0001, 0b0010), Ordering::Greater);
    }

    proptest! {
        #[test]
        fn sign_matches_sorting(a in 0u32..256, b in 0u32..256) {
            prop_assert_eq!(mul_sign(a, b), sign_by_sorting(a, b));
        }

        #[test]
        fn boundary_squares_to_zero(m in 0u32..128, coef in -5i64..6) {
            let f = PrimeField::new(101).unwrap();
            let e = Exterior::new(7, &f).unwrap();
            let a = e.term(m, f.from_i64(coef));
            prop_assert!(e.boundary(&e.boundary(&a)).is_zero());
        }

        #[test]
        fn boundary_is_graded_derivation(a in 0u32..64, b in 0u32..64) {
            let e = ext(6);
            let (x, y) = (e.monomial(a), e.monomial(b));
            let lhs = e.boundary(&e.mul(&x, &y));
            let sgn = if degree(a) % 2 == 1 { -1 } else { 1 };
            let rhs = e.add(&e.mul(&e.boundary(&x), &y), &e.scale(&e.mul(&x, &e.boundary(&y)), &Rationals.from_i64(sgn)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_of_differences(idx in prop::collection::btree_set(0usize..6, 1..6)) {
            // (e_{i1}-e_{i2})...(e_{i(s-1)}-e_{is}) = (-1)^s boundary(e_{i1}...e_{is})
            let e = ext(6);
            let ids: Vec<usize> = idx.into_iter().collect();
            let s = ids.len();
            let mut prod = e.one();
            for w in ids.windows(2) {
                prod = e.mul(&prod, &e.sub(&e.var(w[0]), &e.var(w[1])));
            }
            let m: Mono = ids.iter().map(|i| 1u32 << i).sum();
            let sgn = if s % 2 == 1 { -1 } else { 1 };
            let rhs = e.scale(&e.boundary(&e.monomial(m)), &Rationals.from_i64(sgn));
            prop_assert_eq!(prod, rhs);
        }

        #[test]
        fn multiplication_is_associative(a in 0u32..32, b in 0u32..32, c in 0u32..32) {
            let e = ext(5);
            let x = e.add(&e.monomial(a), &e.monomial(b));
            let y = e.add(&e.monomial(c), &e.monomial(a ^ 3));
            let z = e.add(&e.monomial(b ^ 5), &e.monomial(c));
            prop_assert_eq!(e.mul(&e.mul(&x, &y), &z), e.mul(&x, &e.mul(&y, &z)));
        }
    }
}
