//! File formats: arrangements, ideals, surfaces, links and fixture corpora.

use std::path::{Path, PathBuf};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arrangement::{link_complement_ideal, surface_algebra_ideal, Arrangement, Hyperplane};
use crate::error::{Error, Result};
use crate::exterior::{ExtElem, Exterior, MonoOrder};
use crate::field::{parse_rational, Field, FieldSpec};

/// `"Q"` or `{"p": prime}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldEntry {
    Name(String),
    Prime { p: u64 },
}

impl FieldEntry {
    pub fn spec(&self) -> Result<FieldSpec> {
        match self {
            FieldEntry::Name(s) => s.parse(),
            FieldEntry::Prime { p } => format!("Fp:{p}").parse(),
        }
    }

    pub fn from_spec(spec: FieldSpec) -> Self {
        match spec {
            FieldSpec::Rational => FieldEntry::Name("Q".into()),
            FieldSpec::Prime(p) => FieldEntry::Prime { p },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct HyperplaneEntry {
    normal: Vec<Value>,
    #[serde(rename = "const", default)]
    constant: Option<Value>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ArrangementEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<FieldEntry>,
    dim: usize,
    hyperplanes: Vec<HyperplaneEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct IdealEntry {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    field: Option<FieldEntry>,
    n: usize,
    #[serde(default)]
    names: Option<Vec<String>>,
    generators: Vec<String>,
    /// 1-based variables from smallest to largest for a lex order.
    #[serde(default)]
    order: Option<Vec<usize>>,
}

/// Integers or rational strings `"a/b"`.
pub fn parse_scalar<F: Field>(field: &F, v: &Value) -> Result<F::Scalar> {
    let q: BigRational = match v {
        Value::Number(n) => {
            let i = n.as_i64().ok_or_else(|| Error::Parse(format!("coefficient {n} is not an integer; write rationals as strings")))?;
            BigRational::from_integer(i.into())
        }
        Value::String(s) => parse_rational(s)?,
        other => return Err(Error::Parse(format!("bad coefficient {other}"))),
    };
    field.from_rational(&q)
}

/// The kinds of input the corpus and the command line accept. Arrangements
/// are stored without field data; the field is chosen when instantiating.
#[derive(Clone, Debug)]
pub enum Fixture {
    Arrangement { dim: usize, rows: Vec<(Vec<Value>, Value)> },
    Ideal { n: usize, names: Option<Vec<String>>, generators: Vec<String>, order: Option<Vec<usize>> },
    Surface { genus: usize },
    Link { linking: Vec<Vec<i64>> },
}

#[derive(Clone, Debug)]
pub struct FixtureFile {
    pub name: String,
    /// Field named in the file, if any.
    pub field: Option<FieldSpec>,
    pub fixture: Fixture,
}

impl FixtureFile {
    /// A JSON object with an optional `"kind"`: `"arrangement"` (default),
    /// `"ideal"`, `"surface"` or `"link"`.
    pub fn from_json(v: &Value, default_name: &str) -> Result<Self> {
        let kind = v.get("kind").and_then(Value::as_str).unwrap_or("arrangement");
        let name = v.get("name").and_then(Value::as_str).unwrap_or(default_name).to_string();
        let field = match v.get("field") {
            Some(f) => Some(serde_json::from_value::<FieldEntry>(f.clone())?.spec()?),
            None => None,
        };
        let fixture = match kind {
            "arrangement" => {
                let a: ArrangementEntry = serde_json::from_value(v.clone())?;
                let rows = a.hyperplanes.into_iter().map(|h| (h.normal, h.constant.unwrap_or(json!(0)))).collect();
                Fixture::Arrangement { dim: a.dim, rows }
            }
            "ideal" => {
                let i: IdealEntry = serde_json::from_value(v.clone())?;
                Fixture::Ideal { n: i.n, names: i.names, generators: i.generators, order: i.order }
            }
            "surface" => {
                let g = v.get("genus").and_then(Value::as_u64).ok_or_else(|| Error::Parse("surface needs a genus".into()))?;
                Fixture::Surface { genus: g as usize }
            }
            "link" => {
                let l: Vec<Vec<i64>> = serde_json::from_value(v.get("linking").cloned().ok_or_else(|| Error::Parse("link needs a linking matrix".into()))?)?;
                Fixture::Link { linking: l }
            }
            other => return Err(Error::Parse(format!("unknown fixture kind '{other}'"))),
        };
        Ok(FixtureFile { name, field, fixture })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let v: Value = serde_json::from_str(&text)?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("fixture");
        Self::from_json(&v, stem)
    }

    pub fn arrangement<F: Field>(&self, field: &F) -> Result<Arrangement<F>> {
        let Fixture::Arrangement { dim, rows } = &self.fixture else {
            return Err(Error::Parse(format!("{} is not an arrangement", self.name)));
        };
        let mut hs = Vec::with_capacity(rows.len());
        for (normal, c) in rows {
            let normal = normal.iter().map(|x| parse_scalar(field, x)).collect::<Result<Vec<_>>>()?;
            hs.push(Hyperplane { normal, constant: parse_scalar(field, c)? });
        }
        Arrangement::new(field, *dim, hs)
    }

    /// The presentation ideal in E for ideal, surface and link fixtures, and
    /// the Orlik-Solomon ideal for arrangements.
    pub fn ideal<F: Field>(&self, field: &F) -> Result<(Exterior<F>, Vec<ExtElem<F::Scalar>>)> {
        match &self.fixture {
            Fixture::Arrangement { .. } => {
                let a = self.arrangement(field)?;
                let ext = a.exterior();
                let gens = a.os_ideal(&ext);
                Ok((ext, gens))
            }
            Fixture::Ideal { n, names, generators, .. } => {
                let ext = Exterior::new(*n, field)?;
                let gens = generators.iter().map(|g| ext.parse(g, names.as_deref())).collect::<Result<Vec<_>>>()?;
                Ok((ext, gens))
            }
            Fixture::Surface { genus } => surface_algebra_ideal(field, *genus),
            Fixture::Link { linking } => link_complement_ideal(field, linking),
        }
    }

    /// Lex order stored with an ideal fixture, if any.
    pub fn order(&self) -> Result<Option<MonoOrder>> {
        match &self.fixture {
            Fixture::Ideal { n, order: Some(o), .. } => Ok(Some(parse_order(*n, o)?)),
            _ => Ok(None),
        }
    }

    pub fn names(&self) -> Option<&[String]> {
        match &self.fixture {
            Fixture::Ideal { names, .. } => names.as_deref(),
            _ => None,
        }
    }
}

/// A lex order from 1-based variables listed smallest first.
pub fn parse_order(n: usize, smallest_first: &[usize]) -> Result<MonoOrder> {
    if smallest_first.iter().any(|&i| i == 0 || i > n) {
        return Err(Error::Parse(format!("order entries must lie in 1..{n}")));
    }
    let zero_based: Vec<usize> = smallest_first.iter().map(|i| i - 1).collect();
    MonoOrder::lex_from_list(n, &zero_based)
}

/// Serializes an arrangement in the file format (coefficients as strings).
pub fn arrangement_to_json<F: Field>(name: Option<&str>, spec: Option<FieldSpec>, arr: &Arrangement<F>) -> Value {
    let f = arr.field();
    let hyperplanes: Vec<HyperplaneEntry> = arr
        .hyperplanes()
        .iter()
        .map(|h| HyperplaneEntry { normal: h.normal.iter().map(|c| json!(f.render(c))).collect(), constant: Some(json!(f.render(&h.constant))) })
        .collect();
    serde_json::to_value(ArrangementEntry { name: name.map(String::from), field: spec.map(FieldEntry::from_spec), dim: arr.dim(), hyperplanes }).expect("serializable")
}

/// All `*.json` fixtures in a directory, sorted by file name.
pub fn load_corpus(dir: &Path) -> Result<Vec<FixtureFile>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| FixtureFile::read(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::central_lines;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn arrangement_round_trip() {
        let q = Rationals;
        let a = central_lines(&q, 4).unwrap();
        let v = arrangement_to_json(Some("c4"), Some(FieldSpec::Rational), &a);
        let f = FixtureFile::from_json(&v, "x").unwrap();
        assert_eq!(f.name, "c4");
        assert_eq!(f.field, Some(FieldSpec::Rational));
        let b = f.arrangement(&q).unwrap();
        assert_eq!(b.hyperplanes(), a.hyperplanes());
    }

    #[test]
    fn rationals_and_primes() {
        let v = json!({"field": {"p": 7}, "dim": 1, "hyperplanes": [{"normal": ["1/2"], "const": -1}]});
        let f = FixtureFile::from_json(&v, "x").unwrap();
        assert_eq!(f.field, Some(FieldSpec::Prime(7)));
        let p = PrimeField::new(7).unwrap();
        let a = f.arrangement(&p).unwrap();
        assert_eq!(a.hyperplanes()[0].normal[0], 4);
        assert!(FixtureFile::from_json(&json!({"dim": 1, "hyperplanes": [{"normal": [0.5]}]}), "x").unwrap().arrangement(&p).is_err());
        assert!(FixtureFile::from_json(&json!({"kind": "torus"}), "x").is_err());
    }

    #[test]
    fn ideal_fixture() {
        let q = Rationals;
        let v = json!({"kind": "ideal", "n": 4, "names": ["a", "b", "c", "d"], "generators": ["ab+cd", "ac", "bc"], "order": [4, 3, 2, 1]});
        let f = FixtureFile::from_json(&v, "x").unwrap();
        let (ext, gens) = f.ideal(&q).unwrap();
        assert_eq!(ext.n, 4);
        assert_eq!(gens.len(), 3);
        assert!(f.order().unwrap().is_some());
        assert!(parse_order(3, &[0, 1, 2]).is_err());
    }
}
