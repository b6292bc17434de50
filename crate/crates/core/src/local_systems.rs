//! Homology of multiplication by a degree-one element e on a module,
//! singular linear forms, and sampling along the singular variety.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::error::{precondition, Result};
use crate::exterior::Exterior;
use crate::field::Field;
use crate::linalg::{self, SparseVec};
use crate::module::GradedModule;
use crate::resolution::first_syzygy;

#[derive(Clone, Debug, PartialEq)]
pub struct AomotoReport<S> {
    pub e: Vec<S>,
    /// Lowest degree of the module.
    pub lo: i32,
    /// h^j for j = lo, lo+1, ..
    pub dims: Vec<usize>,
}

impl<S> AomotoReport<S> {
    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn get(&self, d: i32) -> usize {
        if d < self.lo {
            return 0;
        }
        self.dims.get((d - self.lo) as usize).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(j, &d)| if (self.lo + j as i32) % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    pub fn to_json<F: Field<Scalar = S>>(&self, field: &F) -> Value {
        json!({
            "e": self.e.iter().map(|c| field.render(c)).collect::<Vec<_>>(),
            "lo": self.lo,
            "dims": self.dims,
        })
    }
}

fn mult_rank<F: Field>(m: &GradedModule<F>, e: &[F::Scalar], d: i32) -> usize {
    let cols: Vec<SparseVec<F::Scalar>> = (0..m.dim(d)).map(|b| m.act_linear(e, d, &vec![(b, m.field.one())])).collect();
    linalg::rank(&m.field, cols)
}

/// h^j = dim ker(e: M_j -> M_{j+1}) - rank(e: M_{j-1} -> M_j).
pub fn aomoto_homology<F: Field>(m: &GradedModule<F>, e: &[F::Scalar]) -> Result<AomotoReport<F::Scalar>> {
    if e.len() != m.n {
        return precondition(format!("linear form has {} coefficients, expected {}", e.len(), m.n));
    }
    let mut dims = Vec::with_capacity(m.dims.len());
    let mut incoming = 0;
    for k in 0..m.dims.len() {
        let d = m.lo + k as i32;
        let outgoing = mult_rank(m, e, d);
        dims.push(m.dims[k] - outgoing - incoming);
        incoming = outgoing;
    }
    Ok(AomotoReport { e: e.to_vec(), lo: m.lo, dims })
}

/// The Orlik-Solomon algebra of `arr` as a module.
pub fn os_algebra<F: Field>(arr: &Arrangement<F>) -> Result<GradedModule<F>> {
    let ext = arr.exterior();
    GradedModule::quotient_algebra(&ext, &arr.os_ideal(&ext))
}

/// True when multiplication by e into the top degree is not surjective.
pub fn is_singular<F: Field>(a: &GradedModule<F>, e: &[F::Scalar]) -> Result<bool> {
    if e.len() != a.n {
        return precondition(format!("linear form has {} coefficients, expected {}", e.len(), a.n));
    }
    if a.is_zero() {
        return Ok(false);
    }
    let top = a.hi();
    Ok(mult_rank(a, e, top - 1) < a.dim(top))
}

/// e lies on every hyperplane sum x_H = 0 over the central factors.
pub fn satisfies_singular_equations<F: Field>(arr: &Arrangement<F>, e: &[F::Scalar]) -> bool {
    let f = arr.field();
    arr.singular_variety_equations().iter().all(|&mask| {
        let s = crate::exterior::support(mask).fold(f.zero(), |acc, i| f.add(&acc, &e[i]));
        f.is_zero(&s)
    })
}

/// With N the algebra regraded so that H(e,N)_i = h^{top-i}: the nonzero
/// indices are exactly 0..=c, or none at all, and H(e,N) is nonzero exactly
/// when H(e,N)_0 is.
pub fn verify_contiguity<S>(report: &AomotoReport<S>, top: i32, c: usize) -> bool {
    let h = |i: i32| report.get(top - i);
    let span = report.dims.len() as i32 + 1;
    let nonzero: Vec<i32> = (0..=span).filter(|&i| h(i) != 0).collect();
    if nonzero.is_empty() {
        return true;
    }
    h(0) != 0 && nonzero == (0..=c as i32).collect::<Vec<_>>()
}

/// H(e, N') in degree d+1 matches H(e, N) in degree d along a first syzygy
/// 0 -> N' -> F -> N -> 0, repeated for `steps` syzygies. Requires e nonzero,
/// so that F has no homology.
pub fn syzygy_shift_check<F: Field>(m: &GradedModule<F>, e: &[F::Scalar], steps: usize) -> Result<bool> {
    if e.iter().all(|c| m.field.is_zero(c)) {
        return precondition("syzygy shift needs a nonzero linear form");
    }
    let mut cur = m.clone();
    for _ in 0..steps {
        let h = aomoto_homology(&cur, e)?;
        let syz = first_syzygy(&cur)?;
        let free_h = aomoto_homology(&syz.free, e)?;
        if !free_h.is_zero() {
            return Ok(false);
        }
        let h2 = aomoto_homology(&syz.kernel, e)?;
        let lo = cur.lo.min(syz.kernel.lo - 1);
        let hi = cur.hi().max(syz.kernel.hi());
        if (lo..=hi).any(|d| h2.get(d + 1) != h.get(d)) {
            return Ok(false);
        }
        cur = syz.kernel;
    }
    Ok(true)
}

/// A sampled linear form with the set of imposed equations.
#[derive(Clone, Debug)]
pub struct Sample<S> {
    pub e: Vec<S>,
    /// Bitmask over the central factors whose equation was imposed.
    pub imposed: u64,
    /// All equations imposed.
    pub on_variety: bool,
}

fn draw<F: Field>(f: &F, rng: &mut ChaCha8Rng) -> F::Scalar {
    let p = f.characteristic();
    if p == 0 {
        let v = loop {
            let v: i64 = rng.gen_range(-100..=100);
            if v != 0 {
                break v;
            }
        };
        f.from_i64(v)
    } else {
        f.from_i64(rng.gen_range(1..p) as i64)
    }
}

/// Random linear forms, each on a random subset of the singular-variety
/// equations and off all the others. Deterministic given `seed`.
pub fn sample_linear_forms<F: Field>(arr: &Arrangement<F>, seed: u64, count: usize) -> Vec<Sample<F::Scalar>> {
    let f = arr.field();
    let eqs = arr.singular_variety_equations();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let imposed: u64 = if eqs.is_empty() { 0 } else { rng.gen_range(0..1u64 << eqs.len()) };
        let mut e: Vec<F::Scalar> = (0..arr.n()).map(|_| draw(f, &mut rng)).collect();
        let mut ok = true;
        for (k, &mask) in eqs.iter().enumerate() {
            let members: Vec<usize> = crate::exterior::support(mask).collect();
            let last = *members.last().unwrap();
            let rest = members[..members.len() - 1].iter().fold(f.zero(), |acc, &i| f.add(&acc, &e[i]));
            if imposed >> k & 1 == 1 {
                e[last] = f.neg(&rest);
                // a singleton factor forces the coordinate to vanish
                if members.len() > 1 && f.is_zero(&e[last]) {
                    ok = false;
                }
            } else if f.is_zero(&f.add(&rest, &e[last])) {
                ok = false;
            }
        }
        if ok {
            let on_variety = imposed.count_ones() as usize == eqs.len();
            out.push(Sample { e, imposed, on_variety });
        }
    }
    out
}

/// f is regular on E/I: multiplication by f has no homology.
pub fn is_regular_on_quotient<F: Field>(ext: &Exterior<F>, f: &[F::Scalar], gens: &[crate::exterior::ExtElem<F::Scalar>]) -> Result<bool> {
    let m = GradedModule::quotient_algebra(ext, gens)?;
    Ok(aomoto_homology(&m, f)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{boolean, central_lines, generic_lines};
    use crate::field::{PrimeField, Rationals};
    use crate::resolution::homology_module;

    fn ints<F: Field>(f: &F, v: &[i64]) -> Vec<F::Scalar> {
        v.iter().map(|&x| f.from_i64(x)).collect()
    }

    #[test]
    fn central3_examples() {
        let q = Rationals;
        let a = central_lines(&q, 3).unwrap();
        let m = os_algebra(&a).unwrap();
        assert_eq!(aomoto_homology(&m, &ints(&q, &[1, 1, 1])).unwrap().dims, vec![0, 0, 0]);
        let r = aomoto_homology(&m, &ints(&q, &[1, -1, 0])).unwrap();
        assert_eq!(r.dims, vec![0, 1, 1]);
        assert_eq!(aomoto_homology(&m, &ints(&q, &[0, 0, 0])).unwrap().dims, vec![1, 3, 2]);
        assert!(is_singular(&m, &ints(&q, &[1, -1, 0])).unwrap());
        assert!(!is_singular(&m, &ints(&q, &[1, 1, 1])).unwrap());
        assert!(verify_contiguity(&r, 2, 1));
        assert!(!verify_contiguity(&r, 2, 0));
    }

    #[test]
    fn generic_always_singular() {
        let q = Rationals;
        let a = generic_lines(&q, 3).unwrap();
        let m = os_algebra(&a).unwrap();
        for s in sample_linear_forms(&a, 7, 10) {
            assert!(is_singular(&m, &s.e).unwrap());
        }
    }

    #[test]
    fn boolean_nonsingular() {
        let q = Rationals;
        let m = os_algebra(&boolean(&q, 2).unwrap()).unwrap();
        let r = aomoto_homology(&m, &ints(&q, &[1, 0])).unwrap();
        assert!(r.is_zero());
        assert!(verify_contiguity(&r, 2, 2));
    }

    #[test]
    fn product_codimension_two() {
        let q = Rationals;
        let a = boolean(&q, 1).unwrap().product(&central_lines(&q, 3).unwrap()).unwrap();
        let m = os_algebra(&a).unwrap();
        let samples = sample_linear_forms(&a, 11, 40);
        let mut seen = 0;
        for s in samples.iter().filter(|s| s.on_variety) {
            let r = aomoto_homology(&m, &s.e).unwrap();
            assert!(verify_contiguity(&r, 3, 2), "{:?}", r.dims);
            seen += 1;
        }
        assert!(seen > 0);
    }

    #[test]
    fn syzygy_shift() {
        let q = Rationals;
        let ext = Exterior::new(2, &q).unwrap();
        let n = GradedModule::quotient_algebra(&ext, &[ext.monomial(0b11)]).unwrap();
        assert_eq!(aomoto_homology(&n, &ints(&q, &[1, 0])).unwrap().dims, vec![0, 1]);
        assert!(syzygy_shift_check(&n, &ints(&q, &[1, 0]), 2).unwrap());
        let free = GradedModule::exterior_algebra(&ext);
        assert!(syzygy_shift_check(&free, &ints(&q, &[1, 2]), 1).unwrap());
        let h = homology_module(&central_lines(&q, 3).unwrap()).unwrap();
        assert!(syzygy_shift_check(&h.module, &ints(&q, &[1, -1, 0]), 2).unwrap());
    }

    #[test]
    fn samples_are_deterministic() {
        let p = PrimeField::new(101).unwrap();
        let a = central_lines(&p, 4).unwrap();
        let s1: Vec<_> = sample_linear_forms(&a, 3, 5).into_iter().map(|s| s.e).collect();
        let s2: Vec<_> = sample_linear_forms(&a, 3, 5).into_iter().map(|s| s.e).collect();
        assert_eq!(s1, s2);
    }
}
