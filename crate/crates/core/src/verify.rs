//! The acceptance criteria as reusable checks over a fixture corpus.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::arrangement::Arrangement;
use crate::bgg::{f_module_hilbert, verify_l_exactness};
use crate::error::{Error, Result};
use crate::exterior::{self, ExtElem, Exterior};
use crate::field::Field;
use crate::groebner::{buchberger, is_regular_linear_form};
use crate::io::{Fixture, FixtureFile};
use crate::local_systems::{aomoto_homology, is_singular, os_algebra, sample_linear_forms, satisfies_singular_equations, verify_contiguity};
use crate::module::{annihilator_module, GradedModule};
use crate::resolution::{homology_module, minimal_free_resolution, os_ideal_resolution_is_linear, predicted_betti_series, socle, BettiTable};
use crate::squarefree::{all_squarefree_ideals, b0_test_complexes, broken_circuit_complex, eagon_reiner_check, verify_betti_identity, verify_phi};

pub const SAMPLES_PER_FIXTURE: usize = 100;
pub const DEFAULT_SEED: u64 = 20001;

/// Named groups of criteria for `verify --suite`.
pub const SUITES: &[(&str, &[usize])] = &[
    ("all", &[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]),
    ("homology-resolution", &[1, 2]),
    ("socle", &[3]),
    ("singular-variety", &[4, 5]),
    ("bgg", &[6]),
    ("os-ideal-linearity", &[7]),
    ("quadrics", &[8]),
    ("squarefree", &[9, 10]),
    ("links-surfaces", &[11]),
    ("cross-engine", &[12]),
];

pub fn suite(name: &str) -> Option<&'static [usize]> {
    SUITES.iter().find(|(n, _)| *n == name).map(|(_, c)| *c)
}

pub const NAMES: [&str; 12] = [
    "homology module resolution is linear",
    "Betti numbers match the characteristic polynomial series",
    "socle concentrated in the top degree",
    "singular forms satisfy the central-factor equations",
    "homology of singular forms is contiguous",
    "F-module Hilbert function and L exactness",
    "os-ideal linearity for generic arrangements and their cones",
    "quadrics with a regular linear form",
    "exterior and polynomial Betti series agree on square-free ideals",
    "Cohen-Macaulay iff dual ideal is linear; broken-circuit complexes",
    "link complements and the genus-2 surface",
    "cross-engine consistency",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// A loaded corpus instantiated over one field.
pub struct Corpus<F: Field> {
    pub field: F,
    pub arrangements: Vec<(String, Arrangement<F>)>,
    pub others: Vec<FixtureFile>,
    pub seed: u64,
    resolutions: OnceLock<Vec<BettiTable>>,
}

impl<F: Field> Corpus<F> {
    pub fn new(field: &F, files: &[FixtureFile], seed: u64) -> Result<Self> {
        let mut arrangements = Vec::new();
        let mut others = Vec::new();
        for f in files {
            match f.fixture {
                Fixture::Arrangement { .. } => arrangements.push((f.name.clone(), f.arrangement(field)?)),
                _ => others.push(f.clone()),
            }
        }
        Ok(Corpus { field: field.clone(), arrangements, others, seed, resolutions: OnceLock::new() })
    }

    fn small(&self) -> impl Iterator<Item = &(String, Arrangement<F>)> {
        self.arrangements.iter().filter(|(_, a)| a.n() <= 7)
    }

    fn find(&self, name: &str) -> Option<&Arrangement<F>> {
        self.arrangements.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    /// Four-step resolutions of the homology modules of the n <= 7 fixtures.
    fn homology_resolutions(&self) -> Result<&[BettiTable]> {
        if let Some(r) = self.resolutions.get() {
            return Ok(r);
        }
        let small: Vec<&Arrangement<F>> = self.small().map(|(_, a)| a).collect();
        let tables = small.par_iter().map(|a| Ok(minimal_free_resolution(&homology_module(a)?.module, 4))).collect::<Result<Vec<_>>>()?;
        Ok(self.resolutions.get_or_init(|| tables))
    }
}

fn failure_list(failures: &[String]) -> (bool, String) {
    if failures.is_empty() {
        (true, String::new())
    } else {
        (false, failures.join("; "))
    }
}

pub fn run_criterion<F: Field>(corpus: &Corpus<F>, id: usize) -> CriterionResult {
    let outcome = match id {
        1 => linearity(corpus),
        2 => betti_series(corpus),
        3 => socles(corpus),
        4 => singular_equations(corpus),
        5 => contiguity(corpus),
        6 => bgg_checks(corpus),
        7 => os_ideal_linearity(corpus),
        8 => quadrics(corpus),
        9 => betti_identity(&corpus.field),
        10 => eagon_reiner(corpus),
        11 => links_and_surfaces(corpus),
        12 => cross_engine(corpus),
        _ => Err(Error::Precondition(format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, e.to_string()));
    CriterionResult { id, name: NAMES.get(id.wrapping_sub(1)).copied().unwrap_or("unknown"), passed, detail }
}

pub fn run_suite<F: Field>(corpus: &Corpus<F>, ids: &[usize]) -> Vec<CriterionResult> {
    ids.iter().map(|&i| run_criterion(corpus, i)).collect()
}

fn linearity<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let tables = c.homology_resolutions()?;
    let mut failures = Vec::new();
    for ((name, a), t) in c.small().zip(tables) {
        let s = (a.n() - a.dim()) as i32;
        if t.start() != Some(s) || !t.is_linear(s) {
            failures.push(format!("{name}: start {:?}, expected {s}", t.start()));
        }
    }
    if tables.is_empty() {
        failures.push("no arrangement fixtures".into());
    }
    Ok(failure_list(&failures))
}

fn betti_series<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let tables = c.homology_resolutions()?;
    let mut failures = Vec::new();
    let mut observed: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for ((name, a), t) in c.small().zip(tables) {
        let got: Vec<i64> = t.totals().iter().map(|&x| x as i64).collect();
        let want = predicted_betti_series(a, 4);
        if got != want {
            failures.push(format!("{name}: {got:?} != {want:?}"));
        }
        observed.insert(name, t.totals());
    }
    for (name, want) in [("central3", vec![2, 3, 4, 5, 6]), ("generic3", vec![3, 6, 10, 15, 21])] {
        match observed.get(name) {
            Some(got) if *got == want => {}
            Some(got) => failures.push(format!("{name}: {got:?} != {want:?}")),
            None => failures.push(format!("{name} missing from corpus")),
        }
    }
    Ok(failure_list(&failures))
}

fn socles<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for (name, a) in &c.arrangements {
        let s = socle(a)?;
        let dims = a.nbc_dims();
        let mut want = vec![0; a.dim() + 1];
        want[a.dim()] = dims.get(a.dim()).copied().unwrap_or(0);
        if s != want {
            failures.push(format!("{name}: {s:?} != {want:?}"));
        }
    }
    Ok(failure_list(&failures))
}

fn fixture_seed(base: u64, k: usize) -> u64 {
    base.wrapping_add(k as u64 * 7919)
}

fn singular_equations<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let results: Vec<Result<Option<String>>> = c
        .arrangements
        .par_iter()
        .enumerate()
        .map(|(k, (name, a))| {
            let alg = os_algebra(a)?;
            let mut mismatches = 0;
            for s in sample_linear_forms(a, fixture_seed(c.seed, k), SAMPLES_PER_FIXTURE) {
                if is_singular(&alg, &s.e)? != satisfies_singular_equations(a, &s.e) {
                    mismatches += 1;
                }
            }
            Ok((mismatches > 0).then(|| format!("{name}: {mismatches} mismatches")))
        })
        .collect();
    let failures: Vec<String> = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    Ok(failure_list(&failures))
}

fn contiguity<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let f = &c.field;
    let results: Vec<Result<Option<String>>> = c
        .arrangements
        .par_iter()
        .enumerate()
        .map(|(k, (name, a))| {
            let alg = os_algebra(a)?;
            let codim = a.singular_variety_equations().len();
            let mut bad = 0;
            for s in sample_linear_forms(a, fixture_seed(c.seed, k), SAMPLES_PER_FIXTURE) {
                // the zero form is not a point of projective space
                if !s.on_variety || s.e.iter().all(|x| f.is_zero(x)) {
                    continue;
                }
                let r = aomoto_homology(&alg, &s.e)?;
                if !verify_contiguity(&r, alg.hi(), codim) {
                    bad += 1;
                }
            }
            Ok((bad > 0).then(|| format!("{name}: {bad} samples off the range 0..={codim}")))
        })
        .collect();
    let mut failures: Vec<String> = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    match c.find("central3") {
        Some(a) => {
            let e: Vec<F::Scalar> = [1, -1, 0].iter().map(|&x| f.from_i64(x)).collect();
            let r = aomoto_homology(&os_algebra(a)?, &e)?;
            if r.dims != vec![0, 1, 1] {
                failures.push(format!("central3 witness {:?} != [0, 1, 1]", r.dims));
            }
        }
        None => failures.push("central3 missing from corpus".into()),
    }
    Ok(failure_list(&failures))
}

fn bgg_checks<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let results: Vec<Result<Option<String>>> = c
        .arrangements
        .par_iter()
        .map(|(name, a)| {
            let alg = os_algebra(a)?;
            let got: Vec<i64> = f_module_hilbert(&alg, 6)?.into_iter().map(|x| x as i64).collect();
            let want = predicted_betti_series(a, 6);
            let mut msg = Vec::new();
            if got != want {
                msg.push(format!("{name}: Hilbert {got:?} != {want:?}"));
            }
            let ex = verify_l_exactness(&alg, 8)?;
            if !ex.exact() {
                msg.push(format!("{name}: L not exact at {:?}", ex.failures));
            }
            Ok((!msg.is_empty()).then(|| msg.join("; ")))
        })
        .collect();
    let failures: Vec<String> = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    Ok(failure_list(&failures))
}

fn os_ideal_linearity<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut generic = 0;
    let mut nongeneric = 0;
    for (name, a) in &c.arrangements {
        if a.is_central() {
            continue;
        }
        if a.is_generic() {
            generic += 1;
            let mut cur = a.clone();
            let mut cones = 0;
            while cur.n() <= 7 {
                if !os_ideal_resolution_is_linear(&cur, 4)? {
                    failures.push(format!("{name} coned {cones} times: not linear"));
                }
                cur = cur.cone();
                cones += 1;
            }
        } else {
            nongeneric += 1;
            if os_ideal_resolution_is_linear(a, 2)? {
                failures.push(format!("{name}: nongeneric but linear through step 2"));
            }
        }
    }
    if generic == 0 || nongeneric == 0 {
        failures.push(format!("corpus has {generic} generic and {nongeneric} nongeneric noncentral fixtures"));
    }
    Ok(failure_list(&failures))
}

fn quadrics<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let fx = c.others.iter().find(|f| f.name == "quadrics").ok_or_else(|| Error::Precondition("quadrics fixture missing".into()))?;
    let (ext, gens) = fx.ideal(&c.field)?;
    let order = fx.order()?.ok_or_else(|| Error::Precondition("quadrics fixture needs an order".into()))?;
    let mut failures = Vec::new();
    let gb = buchberger(&ext, &gens, &order);
    if gb.len() != gens.len() || !gens.iter().all(|g| gb.elements.contains(g)) {
        failures.push(format!("basis has {} elements, not the given quadrics", gb.len()));
    }
    let mut init = gb.initial_ideal();
    init.sort();
    if init != vec![0b0011, 0b0101, 0b0110] {
        failures.push(format!("initial ideal {init:?}"));
    }
    let d = ext.var(ext.n - 1);
    if !is_regular_linear_form(&ext, &d, &gens)? {
        failures.push("last variable is not regular".into());
    }
    // setting the last variable to zero
    let small = Exterior::new(ext.n - 1, &c.field)?;
    let keep = (1u32 << (ext.n - 1)) - 1;
    let images: Vec<ExtElem<F::Scalar>> = gens
        .iter()
        .map(|g| ExtElem { terms: g.terms.iter().filter(|(m, _)| **m & !keep == 0).map(|(m, x)| (*m, x.clone())).collect() })
        .collect();
    let square: Vec<ExtElem<F::Scalar>> = exterior::monomials_of_degree(small.n, 2).into_iter().map(|m| small.monomial(m)).collect();
    let lhs = GradedModule::quotient_algebra(&small, &images)?;
    let rhs = GradedModule::quotient_algebra(&small, &square)?;
    if lhs.dims != rhs.dims || images.iter().any(|g| g.homogeneous_degree() != Some(2)) {
        failures.push(format!("reduction has quotient dims {:?}, square of the maximal ideal {:?}", lhs.dims, rhs.dims));
    }
    Ok(failure_list(&failures))
}

fn squarefree_corpus() -> Vec<(usize, Vec<exterior::Mono>)> {
    (1..=4).flat_map(|n| all_squarefree_ideals(n).into_iter().map(move |g| (n, g))).collect()
}

fn betti_identity<F: Field>(field: &F) -> Result<(bool, String)> {
    let corpus = squarefree_corpus();
    let results: Vec<Result<Option<String>>> =
        corpus.par_iter().map(|(n, g)| Ok((!verify_betti_identity(field, *n, g, 3)?).then(|| format!("n={n} {g:?}")))).collect();
    let failures: Vec<String> = results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten().collect();
    let (ok, detail) = failure_list(&failures);
    Ok((ok, if ok { format!("{} ideals", corpus.len()) } else { detail }))
}

fn eagon_reiner<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let mut failures: Vec<String> = squarefree_corpus()
        .par_iter()
        .filter(|(n, g)| !eagon_reiner_check(&c.field, *n, g).holds())
        .map(|(n, g)| format!("n={n} {g:?}"))
        .collect();
    for (name, a) in c.arrangements.iter().filter(|(_, a)| a.is_central()) {
        let rank: Vec<usize> = (0..a.n()).collect();
        if !broken_circuit_complex(a, &rank)?.is_cohen_macaulay(&c.field) {
            failures.push(format!("{name}: broken-circuit complex not Cohen-Macaulay"));
        }
    }
    Ok(failure_list(&failures))
}

fn linear_from_start(t: &BettiTable) -> bool {
    t.start().is_none_or(|s| t.is_linear(s))
}

fn links_and_surfaces<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut links = 0;
    let mut surface = false;
    for fx in &c.others {
        match fx.fixture {
            Fixture::Link { .. } => {
                links += 1;
                let (ext, gens) = fx.ideal(&c.field)?;
                let ti = minimal_free_resolution(&GradedModule::ideal(&ext, &gens)?, 3);
                let tj = minimal_free_resolution(&annihilator_module(&ext, &gens)?.0, 3);
                if !linear_from_start(&ti) {
                    failures.push(format!("{}: ideal resolution not linear", fx.name));
                }
                if tj.start().is_none() || !linear_from_start(&tj) {
                    failures.push(format!("{}: homology resolution not linear", fx.name));
                }
            }
            Fixture::Surface { genus: 2 } => {
                surface = true;
                let (ext, gens) = fx.ideal(&c.field)?;
                let t = minimal_free_resolution(&annihilator_module(&ext, &gens)?.0, 1);
                let row0 = t.row(0);
                if row0 != BTreeMap::from([(2, 1)]) || t.total(1) != 5 {
                    failures.push(format!("{}: step 0 {:?}, step 1 total {}", fx.name, row0, t.total(1)));
                }
            }
            _ => {}
        }
    }
    if links != 3 || !surface {
        failures.push(format!("corpus has {links} link fixtures and {} genus-2 surface", if surface { "a" } else { "no" }));
    }
    Ok(failure_list(&failures))
}

fn cross_engine<F: Field>(c: &Corpus<F>) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    for (name, a) in &c.arrangements {
        let alg = os_algebra(a)?;
        let mut dims = alg.dims.clone();
        while dims.last() == Some(&0) {
            dims.pop();
        }
        if dims != a.nbc_dims() || alg.lo != 0 {
            failures.push(format!("{name}: nbc {:?} != ranks {:?}", a.nbc_dims(), dims));
        }
    }
    let complexes = b0_test_complexes(&c.field)?;
    let results: Vec<Result<Option<String>>> = complexes
        .par_iter()
        .map(|(name, cx)| Ok((!verify_phi(&c.field, cx, 3)?.betti_matches).then(|| format!("{name}: total complex ranks differ"))))
        .collect();
    failures.extend(results.into_iter().collect::<Result<Vec<_>>>()?.into_iter().flatten());
    Ok(failure_list(&failures))
}
