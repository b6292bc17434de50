//! One function per subcommand, generic over the ground field.

use std::fmt::Write as _;
use std::path::Path;

use osalg_core::arrangement::Arrangement;
use osalg_core::bgg::{f_module_hilbert, verify_l_exactness};
use osalg_core::exterior::{self, ExtElem, Exterior, Mono, MonoOrder};
use osalg_core::field::{Field, FieldSpec};
use osalg_core::groebner::buchberger;
use osalg_core::io::{load_corpus, parse_order, FixtureFile};
use osalg_core::local_systems::{aomoto_homology, is_singular, os_algebra, sample_linear_forms, satisfies_singular_equations, verify_contiguity};
use osalg_core::module::{annihilator_module, GradedModule};
use osalg_core::resolution::{betti_via_tor, predicted_betti_series, socle, BettiTable};
use osalg_core::squarefree::{
    exterior_multigraded_betti, hochster_betti, multitable_to_json, verify_betti_identity, MultiTable, SimplicialComplex,
};
use osalg_core::verify::{run_suite, suite, Corpus, DEFAULT_SEED};
use osalg_core::{with_field, Error, Result};
use serde_json::{json, Value};

use crate::{Cli, Command, Engine, ModuleKind, Outcome};

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::OsIdeal { .. } => "os-ideal",
        Command::Circuits { .. } => "circuits",
        Command::CharPoly { .. } => "char-poly",
        Command::Betti { .. } => "betti",
        Command::CheckLinear { .. } => "check-linear",
        Command::Socle { .. } => "socle",
        Command::SingularVariety { .. } => "singular-variety",
        Command::LocalSystem { .. } => "local-system",
        Command::BggHilbert { .. } => "bgg-hilbert",
        Command::Groebner { .. } => "groebner",
        Command::SfBetti { .. } => "sf-betti",
        Command::AlexanderDual { .. } => "alexander-dual",
        Command::Verify { .. } => "verify",
    }
}

fn positive(name: &str, v: Option<usize>, default: usize) -> Result<usize> {
    match v {
        Some(0) => Err(Error::Parse(format!("--{name} must be at least 1"))),
        Some(k) => Ok(k),
        None => Ok(default),
    }
}

fn sets_json(sets: &[Mono]) -> Value {
    json!(sets.iter().map(|&s| exterior::support(s).map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn sets_text(sets: &[Mono]) -> String {
    let parts: Vec<String> = sets.iter().map(|&s| format!("{{{}}}", exterior::support(s).map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(","))).collect();
    if parts.is_empty() {
        "(none)".into()
    } else {
        parts.join(" ")
    }
}

fn numbers(v: &[impl ToString]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn parse_list(s: &str) -> Result<Vec<String>> {
    let parts: Vec<String> = s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect();
    if parts.is_empty() {
        return Err(Error::Parse(format!("empty list '{s}'")));
    }
    Ok(parts)
}

fn cli_order(cli: &Cli, n: usize) -> Result<Option<MonoOrder>> {
    match &cli.order {
        None => Ok(None),
        Some(s) => {
            let idx = parse_list(s)?.iter().map(|x| x.parse::<usize>().map_err(|_| Error::Parse(format!("bad order entry '{x}'")))).collect::<Result<Vec<_>>>()?;
            parse_order(n, &idx).map(Some)
        }
    }
}

fn field_spec(cli: &Cli, file_field: Option<FieldSpec>) -> Result<FieldSpec> {
    match &cli.field {
        Some(s) => s.parse(),
        None => Ok(file_field.unwrap_or(FieldSpec::Rational)),
    }
}

/// Runs the command; returns the field used and the outcome.
pub fn run(cli: &Cli) -> Result<(FieldSpec, Outcome)> {
    match &cli.command {
        Command::Verify { suite: name, dir } => {
            let spec = field_spec(cli, None)?;
            Ok((spec, with_field!(spec, |f| verify(cli, &f, name, dir))?))
        }
        Command::AlexanderDual { file } => Ok((field_spec(cli, None)?, alexander_dual(file)?)),
        Command::Betti { file, .. }
        | Command::CheckLinear { file, .. }
        | Command::OsIdeal { file }
        | Command::Circuits { file }
        | Command::CharPoly { file }
        | Command::Socle { file }
        | Command::SingularVariety { file }
        | Command::LocalSystem { file, .. }
        | Command::BggHilbert { file }
        | Command::Groebner { file }
        | Command::SfBetti { file } => {
            let fx = FixtureFile::read(file)?;
            let spec = field_spec(cli, fx.field)?;
            Ok((spec, with_field!(spec, |f| dispatch(cli, &f, &fx))?))
        }
    }
}

fn dispatch<F: Field>(cli: &Cli, f: &F, fx: &FixtureFile) -> Result<Outcome> {
    match &cli.command {
        Command::OsIdeal { .. } => os_ideal(&fx.arrangement(f)?),
        Command::Circuits { .. } => circuits(cli, &fx.arrangement(f)?),
        Command::CharPoly { .. } => char_poly(&fx.arrangement(f)?),
        Command::Betti { module, engine, .. } => betti(cli, f, fx, *module, *engine),
        Command::CheckLinear { module, .. } => check_linear(cli, f, fx, *module),
        Command::Socle { .. } => socle_cmd(&fx.arrangement(f)?),
        Command::SingularVariety { .. } => singular_variety(&fx.arrangement(f)?),
        Command::LocalSystem { e, samples, .. } => local_system(cli, &fx.arrangement(f)?, e.as_deref(), *samples),
        Command::BggHilbert { .. } => bgg_hilbert(cli, &fx.arrangement(f)?),
        Command::Groebner { .. } => groebner(cli, f, fx),
        Command::SfBetti { .. } => sf_betti(cli, f, fx),
        Command::AlexanderDual { .. } | Command::Verify { .. } => unreachable!("handled before dispatch"),
    }
}

fn os_ideal<F: Field>(a: &Arrangement<F>) -> Result<Outcome> {
    let ext = a.exterior();
    let gens: Vec<String> = a.os_ideal(&ext).iter().map(|g| ext.format(g, None, None)).collect();
    let mut text = String::new();
    for g in &gens {
        writeln!(text, "{g}").unwrap();
    }
    Ok(Outcome { payload: json!({"n": a.n(), "generators": gens}), text, ok: true })
}

fn circuits<F: Field>(cli: &Cli, a: &Arrangement<F>) -> Result<Outcome> {
    let data = a.circuits();
    let rank: Vec<usize> = match cli_order(cli, a.n())? {
        Some(o) => o.ranks().to_vec(),
        None => (0..a.n()).collect(),
    };
    let bc = a.broken_circuits(&rank);
    let dims = a.nbc_dims();
    let text = format!(
        "dependent circuits: {}\nempty intersections: {}\nbroken circuits: {}\nnbc dimensions: {}\n",
        sets_text(&data.dependent_circuits),
        sets_text(&data.empty_min_sets),
        sets_text(&bc),
        numbers(&dims)
    );
    let payload = json!({
        "dependent_circuits": sets_json(&data.dependent_circuits),
        "empty_intersections": sets_json(&data.empty_min_sets),
        "broken_circuits": sets_json(&bc),
        "nbc_dims": dims,
    });
    Ok(Outcome { payload, text, ok: true })
}

fn char_poly<F: Field>(a: &Arrangement<F>) -> Result<Outcome> {
    let chi = a.char_poly();
    let pi = a.poincare();
    let text = format!("{chi}\n");
    Ok(Outcome { payload: json!({"char_poly": chi.to_string(), "coefficients": chi.coeffs, "poincare": pi.coeffs}), text, ok: true })
}

/// The requested module of a fixture and the twist relating its internal
/// grading to homological grading.
fn fixture_module<F: Field>(f: &F, fx: &FixtureFile, kind: ModuleKind) -> Result<(GradedModule<F>, i32)> {
    let (ext, gens) = fx.ideal(f)?;
    let n = ext.n as i32;
    Ok(match kind {
        ModuleKind::Homology => (annihilator_module(&ext, &gens)?.0, n),
        ModuleKind::Ideal => (GradedModule::ideal(&ext, &gens)?, 0),
        ModuleKind::Algebra => (GradedModule::quotient_algebra(&ext, &gens)?, 0),
    })
}

fn resolve<F: Field>(m: &GradedModule<F>, steps: usize, max_degree: Option<i32>, engine: Engine) -> BettiTable {
    match engine {
        Engine::Iterated => osalg_core::resolution::minimal_free_resolution_truncated(m, steps, max_degree),
        Engine::Tor => betti_via_tor(m, steps),
    }
}

fn module_label(kind: ModuleKind) -> &'static str {
    match kind {
        ModuleKind::Homology => "homology",
        ModuleKind::Ideal => "ideal",
        ModuleKind::Algebra => "algebra",
    }
}

fn betti<F: Field>(cli: &Cli, f: &F, fx: &FixtureFile, kind: ModuleKind, engine: Engine) -> Result<Outcome> {
    let steps = positive("steps", cli.steps, 4)?;
    let (m, twist) = fixture_module(f, fx, kind)?;
    let t = resolve(&m, steps, cli.max_degree, engine);
    let mut payload = json!({"module": module_label(kind), "twist": twist, "table": t.to_json(), "totals": t.totals()});
    let mut text = format!("{t}");
    writeln!(text, "betti: {}", numbers(&t.totals())).unwrap();
    if kind == ModuleKind::Homology {
        if let Ok(a) = fx.arrangement(f) {
            let predicted = predicted_betti_series(&a, steps);
            writeln!(text, "predicted: {}", numbers(&predicted)).unwrap();
            payload["predicted"] = json!(predicted);
        }
    }
    Ok(Outcome { payload, text, ok: true })
}

fn check_linear<F: Field>(cli: &Cli, f: &F, fx: &FixtureFile, kind: ModuleKind) -> Result<Outcome> {
    let steps = positive("steps", cli.steps, 4)?;
    let (m, _) = fixture_module(f, fx, kind)?;
    let t = betti_via_tor(&m, steps);
    let start = t.start();
    let linear = start.is_none_or(|s| t.is_linear(s));
    let text = format!(
        "{} resolution through step {steps}: {} (generated in degree {})\n",
        module_label(kind),
        if linear { "linear" } else { "not linear" },
        start.map_or("none".into(), |s| s.to_string())
    );
    Ok(Outcome { payload: json!({"module": module_label(kind), "steps": steps, "start": start, "linear": linear, "table": t.to_json()}), text, ok: linear })
}

fn socle_cmd<F: Field>(a: &Arrangement<F>) -> Result<Outcome> {
    let s = socle(a)?;
    let dims = a.nbc_dims();
    let top = dims.get(a.dim()).copied().unwrap_or(0);
    let concentrated = s.iter().enumerate().all(|(d, &x)| if d == a.dim() { x == top } else { x == 0 });
    let text = format!("socle: {}\ntop degree {}: dim {}\n", numbers(&s), a.dim(), top);
    Ok(Outcome { payload: json!({"socle": s, "top_degree": a.dim(), "top_dim": top, "concentrated": concentrated}), text, ok: concentrated })
}

fn singular_variety<F: Field>(a: &Arrangement<F>) -> Result<Outcome> {
    let eqs = a.singular_variety_equations();
    let mut text = format!("codimension {}\n", eqs.len());
    for &e in &eqs {
        let terms: Vec<String> = exterior::support(e).map(|i| format!("x{}", i + 1)).collect();
        writeln!(text, "{} = 0", terms.join(" + ")).unwrap();
    }
    Ok(Outcome { payload: json!({"codimension": eqs.len(), "equations": sets_json(&eqs)}), text, ok: true })
}

fn local_system<F: Field>(cli: &Cli, a: &Arrangement<F>, e: Option<&str>, samples: usize) -> Result<Outcome> {
    let f = a.field();
    let alg = os_algebra(a)?;
    let codim = a.singular_variety_equations().len();
    let top = alg.hi();
    let mut forms: Vec<(Vec<F::Scalar>, Option<bool>)> = Vec::new();
    match (e, cli.seed) {
        (Some(s), _) => {
            let coeffs = parse_list(s)?.iter().map(|x| Ok(f.from_rational(&osalg_core::field::parse_rational(x)?)?)).collect::<Result<Vec<_>>>()?;
            forms.push((coeffs, None));
        }
        (None, Some(seed)) => {
            for s in sample_linear_forms(a, seed, samples) {
                forms.push((s.e, Some(s.on_variety)));
            }
        }
        (None, None) => return Err(Error::Precondition("sampling needs --seed (or give --e)".into())),
    }
    let mut ok = true;
    let mut text = String::new();
    let mut reports = Vec::new();
    for (e, _) in &forms {
        let r = aomoto_homology(&alg, e)?;
        let singular = is_singular(&alg, e)?;
        let on_variety = satisfies_singular_equations(a, e);
        let nonzero = e.iter().any(|x| !f.is_zero(x));
        let contiguous = (on_variety && nonzero).then(|| verify_contiguity(&r, top, codim));
        ok &= singular == on_variety && contiguous != Some(false);
        let coeffs: Vec<String> = e.iter().map(|x| f.render(x)).collect();
        writeln!(
            text,
            "e = ({}): h = {}, singular {singular}, on variety {on_variety}{}",
            coeffs.join(", "),
            numbers(&r.dims),
            contiguous.map_or(String::new(), |c| format!(", contiguous {c}"))
        )
        .unwrap();
        let mut j = r.to_json(f);
        j["singular"] = json!(singular);
        j["on_variety"] = json!(on_variety);
        j["contiguous"] = json!(contiguous);
        reports.push(j);
    }
    Ok(Outcome { payload: json!({"codimension": codim, "reports": reports}), text, ok })
}

fn bgg_hilbert<F: Field>(cli: &Cli, a: &Arrangement<F>) -> Result<Outcome> {
    let trunc = positive("steps", cli.steps, 6)?;
    let max_degree = cli.max_degree.unwrap_or(8);
    let alg = os_algebra(a)?;
    let hilbert = f_module_hilbert(&alg, trunc)?;
    let predicted = predicted_betti_series(a, trunc);
    let matches = hilbert.iter().map(|&x| x as i64).eq(predicted.iter().copied());
    let ex = verify_l_exactness(&alg, max_degree)?;
    let text = format!(
        "hilbert (from degree {}): {}\npredicted: {}\nL exact through internal degree {max_degree}: {}\n",
        a.dim(),
        numbers(&hilbert),
        numbers(&predicted),
        ex.exact()
    );
    let payload = json!({"start_degree": a.dim(), "hilbert": hilbert, "predicted": predicted, "matches": matches, "max_degree": max_degree, "l_exact": ex.exact(), "failures": ex.failures});
    Ok(Outcome { payload, text, ok: matches && ex.exact() })
}

fn groebner<F: Field>(cli: &Cli, f: &F, fx: &FixtureFile) -> Result<Outcome> {
    let (ext, gens) = fx.ideal(f)?;
    let order = match cli_order(cli, ext.n)? {
        Some(o) => o,
        None => fx.order()?.unwrap_or_else(|| MonoOrder::lex(ext.n)),
    };
    let names = fx.names();
    let gb = buchberger(&ext, &gens, &order);
    let basis: Vec<String> = gb.elements.iter().map(|g| ext.format(g, Some(&order), names)).collect();
    let init: Vec<String> = gb.initial_ideal().iter().map(|&m| exterior::mono_name(m, names)).collect();
    let mut text = String::from("basis:\n");
    for b in &basis {
        writeln!(text, "  {b}").unwrap();
    }
    writeln!(text, "initial ideal: ({})", init.join(", ")).unwrap();
    Ok(Outcome { payload: json!({"basis": basis, "initial_ideal": init}), text, ok: true })
}

fn monomial_generators<F: Field>(ext: &Exterior<F>, gens: &[ExtElem<F::Scalar>]) -> Result<Vec<Mono>> {
    gens.iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let m = *g.terms.keys().next().expect("nonzero");
            if g.is_monomial() && g.terms.len() == 1 {
                Ok(m)
            } else {
                Err(Error::Precondition(format!("generator {} is not a monomial", ext.format(g, None, None))))
            }
        })
        .collect()
}

fn multitable_text(t: &MultiTable) -> String {
    let mut s = String::new();
    for ((i, a), r) in t {
        writeln!(s, "  step {i} multidegree ({}): {r}", numbers(a)).unwrap();
    }
    s
}

fn sf_betti<F: Field>(cli: &Cli, f: &F, fx: &FixtureFile) -> Result<Outcome> {
    let steps = positive("steps", cli.steps, 3)?;
    let (ext, gens) = fx.ideal(f)?;
    let monos = monomial_generators(&ext, &gens)?;
    let s = hochster_betti(f, ext.n, &monos);
    let e = exterior_multigraded_betti(f, ext.n, &monos, steps)?;
    let identity = verify_betti_identity(f, ext.n, &monos, steps)?;
    let text = format!("polynomial ring:\n{}exterior algebra through step {steps}:\n{}series identity: {identity}\n", multitable_text(&s), multitable_text(&e));
    Ok(Outcome { payload: json!({"polynomial": multitable_to_json(&s), "exterior": multitable_to_json(&e), "steps": steps, "identity": identity}), text, ok: identity })
}

fn alexander_dual(file: &Path) -> Result<Outcome> {
    let v: Value = serde_json::from_str(&std::fs::read_to_string(file)?)?;
    let d = SimplicialComplex::from_json(&v)?;
    let dual = d.alexander_dual();
    let text = if dual.is_void() { "void complex\n".to_string() } else { format!("facets: {}\n", sets_text(&dual.facets)) };
    Ok(Outcome { payload: dual.to_json(), text, ok: true })
}

fn verify<F: Field>(cli: &Cli, f: &F, name: &str, dir: &Path) -> Result<Outcome> {
    let ids = suite(name).ok_or_else(|| Error::Parse(format!("unknown suite '{name}'")))?;
    let files = load_corpus(dir)?;
    let corpus = Corpus::new(f, &files, cli.seed.unwrap_or(DEFAULT_SEED))?;
    let results = run_suite(&corpus, ids);
    let mut text = String::new();
    for r in &results {
        let detail = if r.detail.is_empty() { String::new() } else { format!(" ({})", r.detail) };
        writeln!(text, "criterion {:2} {}: {}{detail}", r.id, if r.passed { "PASS" } else { "FAIL" }, r.name).unwrap();
    }
    let ok = results.iter().all(|r| r.passed);
    let payload = json!(results.iter().map(|r| json!({"id": r.id, "name": r.name, "passed": r.passed, "detail": r.detail})).collect::<Vec<_>>());
    Ok(Outcome { payload, text, ok })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lists_and_steps() {
        assert_eq!(parse_list("1, -1,0").unwrap(), vec!["1", "-1", "0"]);
        assert!(parse_list(" , ").is_err());
        assert!(positive("steps", Some(0), 4).is_err());
        assert_eq!(positive("steps", None, 4).unwrap(), 4);
    }
}
