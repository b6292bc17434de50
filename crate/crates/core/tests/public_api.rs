use std::path::PathBuf;

use osalg_core::arrangement::{boolean, central_lines, generic_lines, Arrangement};
use osalg_core::field::{PrimeField, Rationals};
use osalg_core::io::{load_corpus, FixtureFile};
use osalg_core::module::GradedModule;
use osalg_core::resolution::{betti_via_tor, homology_module, minimal_free_resolution};
use proptest::prelude::*;

fn corpus() -> Vec<FixtureFile> {
    load_corpus(&PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")).unwrap()
}

fn fixture(files: &[FixtureFile], name: &str) -> Arrangement<Rationals> {
    files.iter().find(|f| f.name == name).unwrap_or_else(|| panic!("missing {name}")).arrangement(&Rationals).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn corpus_matches_family_constructors() {
    let q = Rationals;
    let files = corpus();
    for l in 1..=4 {
        assert_eq!(fixture(&files, &format!("bool{l}")).hyperplanes(), boolean(&q, l).unwrap().hyperplanes());
    }
    for n in 3..=7 {
        assert_eq!(fixture(&files, &format!("central{n}")).hyperplanes(), central_lines(&q, n).unwrap().hyperplanes());
        assert_eq!(fixture(&files, &format!("generic{n}")).hyperplanes(), generic_lines(&q, n).unwrap().hyperplanes());
    }
    for n in 3..=6 {
        for fam in ["central", "generic"] {
            let base = fixture(&files, &format!("{fam}{n}"));
            assert_eq!(fixture(&files, &format!("cone_{fam}{n}")).hyperplanes(), base.cone().hyperplanes());
        }
    }
    let prod = boolean(&q, 1).unwrap().product(&central_lines(&q, 3).unwrap()).unwrap();
    assert_eq!(fixture(&files, "product_bool1_central3").hyperplanes(), prod.hyperplanes());
}

#[test]
fn orlik_solomon_dimensions_of_families() {
    let q = Rationals;
    for l in 1..=4 {
        let want: Vec<usize> = (0..=l).map(|k| binomial(l, k)).collect();
        assert_eq!(boolean(&q, l).unwrap().nbc_dims(), want);
    }
    for n in 3..=7 {
        assert_eq!(central_lines(&q, n).unwrap().nbc_dims(), vec![1, n, n - 1]);
        assert_eq!(generic_lines(&q, n).unwrap().nbc_dims(), vec![1, n, binomial(n, 2)]);
        assert!(generic_lines(&q, n).unwrap().is_generic());
    }
    assert_eq!(central_lines(&q, 3).unwrap().char_poly().to_string(), "t^2 - 3t + 2");
}

#[test]
fn nbc_dimensions_match_the_quotient_algebra() {
    let q = Rationals;
    for a in [central_lines(&q, 4).unwrap(), boolean(&q, 3).unwrap(), generic_lines(&q, 4).unwrap().cone()] {
        let ext = a.exterior();
        let alg = GradedModule::quotient_algebra(&ext, &a.os_ideal(&ext)).unwrap();
        let dims: Vec<usize> = (0..=a.rank() as i32).map(|d| alg.dim(d)).collect();
        assert_eq!(dims, a.nbc_dims());
        assert!((a.rank() as i32 + 1..=a.n() as i32).all(|d| alg.dim(d) == 0));
    }
}

#[test]
fn fields_agree_in_large_characteristic() {
    let p = PrimeField::new(32003).unwrap();
    let files = corpus();
    for name in ["central4", "generic4", "nongeneric4"] {
        let f = files.iter().find(|f| f.name == name).unwrap();
        let aq = f.arrangement(&Rationals).unwrap();
        let ap = f.arrangement(&p).unwrap();
        assert_eq!(aq.nbc_dims(), ap.nbc_dims());
        let bq = minimal_free_resolution(&homology_module(&aq).unwrap().module, 3);
        let bp = minimal_free_resolution(&homology_module(&ap).unwrap().module, 3);
        assert_eq!(bq, bp, "{name}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn engines_agree_on_random_line_arrangements(rows in prop::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 2..=5)) {
        let rows: Vec<Vec<i64>> = rows.into_iter().map(|(a, b, c)| vec![a, b, c]).collect();
        prop_assume!(rows.iter().all(|r| r[0] != 0 || r[1] != 0));
        let Ok(a) = Arrangement::from_int_rows(&Rationals, 2, &rows) else { return Ok(()); };
        let m = homology_module(&a).unwrap().module;
        prop_assert_eq!(minimal_free_resolution(&m, 3), betti_via_tor(&m, 3));
        let ext = a.exterior();
        let alg = GradedModule::quotient_algebra(&ext, &a.os_ideal(&ext)).unwrap();
        let dims: Vec<usize> = (0..=a.rank() as i32).map(|d| alg.dim(d)).collect();
        prop_assert_eq!(dims, a.nbc_dims());
        prop_assert!((a.rank() as i32 + 1..=a.n() as i32).all(|d| alg.dim(d) == 0));
    }
}
