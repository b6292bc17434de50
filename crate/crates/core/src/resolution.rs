//! Minimal free resolutions over the exterior algebra.
//!
//! Two engines compute the same Betti numbers. The iterated engine builds the
//! resolution step by step, choosing minimal generators of each kernel. The
//! Tor engine takes homology of the complex `D_i (x) M` obtained by tensoring
//! the divided-power resolution of the residue field with M; it never forms
//! the free modules and is the one used for large inputs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arrangement::Arrangement;
use crate::error::Result;
use crate::exterior::{self, mul_sign, ExtElem, Exterior, Mono};
use crate::field::Field;
use crate::linalg::{self, Echelon, SparseMatrix, SparseVec};
use crate::module::{self, add_multideg, mono_multideg, GradedModule, MultiDeg};
use crate::series::Poly;

/// Internal degree plus multidegree (empty when only singly graded).
pub type Key = (i32, MultiDeg);

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub steps: usize,
    pub graded: BTreeMap<(usize, i32), usize>,
    pub multigraded: Option<BTreeMap<(usize, MultiDeg), usize>>,
}

impl BettiTable {
    fn new(steps: usize, multigraded: bool) -> Self {
        BettiTable { steps, graded: BTreeMap::new(), multigraded: multigraded.then(BTreeMap::new) }
    }

    fn add(&mut self, i: usize, key: &Key, count: usize) {
        if count == 0 {
            return;
        }
        *self.graded.entry((i, key.0)).or_default() += count;
        if let Some(mg) = self.multigraded.as_mut() {
            *mg.entry((i, key.1.clone())).or_default() += count;
        }
    }

    pub fn get(&self, i: usize, d: i32) -> usize {
        self.graded.get(&(i, d)).copied().unwrap_or(0)
    }

    pub fn row(&self, i: usize) -> BTreeMap<i32, usize> {
        self.graded.iter().filter(|((s, _), _)| *s == i).map(|((_, d), r)| (*d, *r)).collect()
    }

    pub fn total(&self, i: usize) -> usize {
        self.row(i).values().sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.steps).map(|i| self.total(i)).collect()
    }

    /// Lowest generator degree.
    pub fn start(&self) -> Option<i32> {
        self.row(0).keys().next().copied()
    }

    /// Every step i concentrated in degree s + i.
    pub fn is_linear(&self, s: i32) -> bool {
        self.graded.keys().all(|(i, d)| *d == s + *i as i32)
    }

    /// Same table with every internal degree moved by `shift`.
    pub fn shifted(&self, shift: i32) -> BettiTable {
        BettiTable {
            steps: self.steps,
            graded: self.graded.iter().map(|((i, d), r)| ((*i, d + shift), *r)).collect(),
            multigraded: self.multigraded.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..=self.steps)
            .map(|i| {
                let degrees: serde_json::Map<String, Value> = self.row(i).into_iter().map(|(d, r)| (d.to_string(), json!(r))).collect();
                json!({ "step": i, "degrees": degrees })
            })
            .collect();
        let mut v = json!({ "start": self.start(), "rows": rows });
        if let Some(mg) = &self.multigraded {
            let entries: Vec<Value> = mg.iter().map(|((i, a), r)| json!({ "step": i, "multidegree": a, "rank": r })).collect();
            v["multigraded"] = json!(entries);
        }
        v
    }

    pub fn from_json(v: &Value) -> Result<BettiTable> {
        let bad = || crate::Error::Parse("malformed Betti table".into());
        let rows = v["rows"].as_array().ok_or_else(bad)?;
        let mut t = BettiTable::new(rows.len().saturating_sub(1), false);
        for r in rows {
            let i = r["step"].as_u64().ok_or_else(bad)? as usize;
            for (d, rank) in r["degrees"].as_object().ok_or_else(bad)? {
                let d: i32 = d.parse().map_err(|_| bad())?;
                let rank = rank.as_u64().ok_or_else(bad)? as usize;
                if rank > 0 {
                    t.graded.insert((i, d), rank);
                }
            }
        }
        if let Some(mg) = v.get("multigraded").and_then(|m| m.as_array()) {
            let mut map = BTreeMap::new();
            for e in mg {
                let i = e["step"].as_u64().ok_or_else(bad)? as usize;
                let a: MultiDeg = serde_json::from_value(e["multidegree"].clone())?;
                map.insert((i, a), e["rank"].as_u64().ok_or_else(bad)? as usize);
            }
            t.multigraded = Some(map);
        }
        Ok(t)
    }
}

impl fmt::Display for BettiTable {
    /// Rows are indexed by degree minus step.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let totals = self.totals();
        let mut strands: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for ((i, d), r) in &self.graded {
            strands.entry(d - *i as i32).or_insert_with(|| vec![0; self.steps + 1])[*i] = *r;
        }
        let width = totals.iter().map(|t| t.to_string().len()).max().unwrap_or(1).max(self.steps.to_string().len()) + 1;
        write!(f, "{:>7}", "")?;
        for i in 0..=self.steps {
            write!(f, "{:>width$}", i)?;
        }
        writeln!(f)?;
        write!(f, "{:>7}", "total:")?;
        for t in &totals {
            write!(f, "{:>width$}", t)?;
        }
        writeln!(f)?;
        for (s, row) in strands {
            write!(f, "{:>7}", format!("{s}:"))?;
            for r in row {
                if r == 0 {
                    write!(f, "{:>width$}", ".")?;
                } else {
                    write!(f, "{:>width$}", r)?;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// A finite-dimensional module split into blocks by internal degree and,
/// when available, multidegree.
trait Blocks<F: Field> {
    fn keys(&self) -> Vec<Key>;
    fn block_dim(&self, key: &Key) -> usize;
    fn act(&self, j: usize, key: &Key, v: &SparseVec<F::Scalar>) -> Option<(Key, SparseVec<F::Scalar>)>;
}

struct ModuleBlocks<'a, F: Field> {
    m: &'a GradedModule<F>,
    blocks: BTreeMap<Key, Vec<usize>>,
    /// (degree offset, global index) -> (key, local index)
    local: Vec<Vec<(Key, usize)>>,
}

impl<'a, F: Field> ModuleBlocks<'a, F> {
    fn new(m: &'a GradedModule<F>) -> Self {
        let mut blocks: BTreeMap<Key, Vec<usize>> = BTreeMap::new();
        let mut local = Vec::new();
        for k in 0..m.dims.len() {
            let d = m.lo + k as i32;
            let mut loc = Vec::with_capacity(m.dims[k]);
            for b in 0..m.dims[k] {
                let a = m.multideg.as_ref().map(|md| md[k][b].clone()).unwrap_or_default();
                let key = (d, a);
                let list = blocks.entry(key.clone()).or_default();
                loc.push((key, list.len()));
                list.push(b);
            }
            local.push(loc);
        }
        ModuleBlocks { m, blocks, local }
    }
}

impl<F: Field> Blocks<F> for ModuleBlocks<'_, F> {
    fn keys(&self) -> Vec<Key> {
        self.blocks.keys().cloned().collect()
    }

    fn block_dim(&self, key: &Key) -> usize {
        self.blocks.get(key).map_or(0, |b| b.len())
    }

    fn act(&self, j: usize, key: &Key, v: &SparseVec<F::Scalar>) -> Option<(Key, SparseVec<F::Scalar>)> {
        let globals = &self.blocks[key];
        let g: SparseVec<F::Scalar> = v.iter().map(|(i, c)| (globals[*i], c.clone())).collect();
        let w = self.m.act(j, key.0, &g);
        if w.is_empty() {
            return None;
        }
        let k = (key.0 + 1 - self.m.lo) as usize;
        let dest = self.local[k][w[0].0].0.clone();
        let out = w
            .into_iter()
            .map(|(i, c)| {
                let (kk, li) = &self.local[k][i];
                debug_assert_eq!(kk, &dest);
                (*li, c)
            })
            .collect();
        Some((dest, out))
    }
}

/// Free module on generators with given keys, basis (generator, monomial).
struct FreeBlocks<F: Field> {
    field: F,
    n: usize,
    multigraded: bool,
    gens: Vec<Key>,
    blocks: BTreeMap<Key, Vec<(usize, Mono)>>,
    index: HashMap<(usize, Mono), usize>,
}

impl<F: Field> FreeBlocks<F> {
    fn new(field: &F, n: usize, gens: Vec<Key>, multigraded: bool) -> Self {
        let mut blocks: BTreeMap<Key, Vec<(usize, Mono)>> = BTreeMap::new();
        let mut index = HashMap::new();
        for (g, gk) in gens.iter().enumerate() {
            for k in 0..=n {
                for u in exterior::monomials_of_degree(n, k) {
                    let key = Self::key_for(n, multigraded, gk, u);
                    let list = blocks.entry(key).or_default();
                    index.insert((g, u), list.len());
                    list.push((g, u));
                }
            }
        }
        FreeBlocks { field: field.clone(), n, multigraded, gens, blocks, index }
    }

    fn key_for(n: usize, multigraded: bool, gk: &Key, u: Mono) -> Key {
        let a = if multigraded { add_multideg(&gk.1, &mono_multideg(n, u)) } else { Vec::new() };
        (gk.0 + exterior::degree(u) as i32, a)
    }
}

impl<F: Field> Blocks<F> for FreeBlocks<F> {
    fn keys(&self) -> Vec<Key> {
        self.blocks.keys().cloned().collect()
    }

    fn block_dim(&self, key: &Key) -> usize {
        self.blocks.get(key).map_or(0, |b| b.len())
    }

    fn act(&self, j: usize, key: &Key, v: &SparseVec<F::Scalar>) -> Option<(Key, SparseVec<F::Scalar>)> {
        let f = &self.field;
        let basis = &self.blocks[key];
        let mut dest = None;
        let mut out = Vec::new();
        for (i, c) in v {
            let (g, u) = basis[*i];
            if let Some(neg) = mul_sign(1 << j, u) {
                let nu = u | 1 << j;
                if dest.is_none() {
                    dest = Some(Self::key_for(self.n, self.multigraded, &self.gens[g], nu));
                }
                out.push((self.index[&(g, nu)], f.signed(c, neg)));
            }
        }
        let dest = dest?;
        Some((dest, linalg::collect_sparse(f, out)))
    }
}

/// Keys one degree lower from which e_j lands in `key`.
fn predecessors(key: &Key, n: usize, multigraded: bool) -> Vec<(Key, usize)> {
    if multigraded {
        (0..n)
            .filter(|&j| key.1[j] > 0)
            .map(|j| {
                let mut a = key.1.clone();
                a[j] -= 1;
                ((key.0 - 1, a), j)
            })
            .collect()
    } else {
        (0..n).map(|j| ((key.0 - 1, Vec::new()), j)).collect()
    }
}

/// Minimal generators of a submodule N of `amb`, degree by degree. `dim_n`
/// gives dim N in each block; `full` a basis of N in that block, called only
/// when the products from lower degrees do not already fill it.
fn find_generators<F: Field, B: Blocks<F>>(
    f: &F,
    n: usize,
    multigraded: bool,
    amb: &B,
    max_degree: Option<i32>,
    dim_n: &dyn Fn(&Key) -> usize,
    full: &mut dyn FnMut(&Key) -> Vec<SparseVec<F::Scalar>>,
) -> (Vec<(Key, SparseVec<F::Scalar>)>, HashMap<Key, Vec<SparseVec<F::Scalar>>>) {
    let mut basis: HashMap<Key, Vec<SparseVec<F::Scalar>>> = HashMap::new();
    let mut gens = Vec::new();
    for key in amb.keys() {
        if max_degree.is_some_and(|m| key.0 > m) {
            break;
        }
        let expected = dim_n(&key);
        if expected == 0 {
            continue;
        }
        let mut ech = Echelon::new(f);
        for (pk, j) in predecessors(&key, n, multigraded) {
            if let Some(vs) = basis.get(&pk) {
                for v in vs {
                    if let Some((k2, w)) = amb.act(j, &pk, v) {
                        debug_assert_eq!(k2, key);
                        ech.insert(w);
                    }
                }
            }
        }
        if ech.rank() < expected {
            let candidates = full(&key);
            assert_eq!(candidates.len(), expected, "kernel dimension disagrees with exactness count");
            for v in candidates {
                if ech.rank() == expected {
                    break;
                }
                if ech.insert(v.clone()) {
                    gens.push((key.clone(), v));
                }
            }
        }
        assert_eq!(ech.rank(), expected);
        basis.insert(key, ech.rows().to_vec());
    }
    (gens, basis)
}

/// Lift of a free module onto the submodule generated by `gens`, with images
/// of basis elements memoized.
struct Lift<'a, F: Field, B: Blocks<F>> {
    target: &'a B,
    gens: &'a [(Key, SparseVec<F::Scalar>)],
    memo: HashMap<(usize, Mono), Option<SparseVec<F::Scalar>>>,
}

impl<F: Field, B: Blocks<F>> Lift<'_, F, B> {
    fn image(&mut self, g: usize, u: Mono) -> Option<SparseVec<F::Scalar>> {
        if u == 0 {
            return Some(self.gens[g].1.clone());
        }
        if let Some(v) = self.memo.get(&(g, u)) {
            return v.clone();
        }
        // e_u = e_j * e_rest with j the smallest index in u
        let j = u.trailing_zeros() as usize;
        let rest = u & !(1 << j);
        let out = self.image(g, rest).and_then(|r| {
            let n = self.gens[g].0 .1.len();
            let key = if n == 0 {
                (self.gens[g].0 .0 + exterior::degree(rest) as i32, Vec::new())
            } else {
                (self.gens[g].0 .0 + exterior::degree(rest) as i32, add_multideg(&self.gens[g].0 .1, &mono_multideg(n, rest)))
            };
            self.target.act(j, &key, &r).map(|x| x.1)
        });
        self.memo.insert((g, u), out.clone());
        out
    }
}

/// Betti numbers of `m` through step `steps` by iterated kernels.
pub fn minimal_free_resolution<F: Field>(m: &GradedModule<F>, steps: usize) -> BettiTable {
    minimal_free_resolution_truncated(m, steps, None)
}

/// As `minimal_free_resolution`, exact in internal degrees up to `max_degree`.
pub fn minimal_free_resolution_truncated<F: Field>(m: &GradedModule<F>, steps: usize, max_degree: Option<i32>) -> BettiTable {
    let f = &m.field;
    let n = m.n;
    let mg = m.is_multigraded();
    let mut table = BettiTable::new(steps, mg);
    let amb0 = ModuleBlocks::new(m);
    let (mut gens, mut basis) = find_generators(f, n, mg, &amb0, max_degree, &|k| amb0.block_dim(k), &mut |k| {
        (0..amb0.block_dim(k)).map(|i| vec![(i, f.one())]).collect()
    });
    for (k, _) in &gens {
        table.add(0, k, 1);
    }
    // ambient of the current kernel: the previous free module
    let mut free: FreeBlocks<F>;
    let mut prev_free: Option<FreeBlocks<F>> = None;
    for i in 1..=steps {
        if gens.is_empty() {
            break;
        }
        free = FreeBlocks::new(f, n, gens.iter().map(|g| g.0.clone()).collect(), mg);
        let image_dims: HashMap<Key, usize> = basis.iter().map(|(k, v)| (k.clone(), v.len())).collect();
        let (new_gens, new_basis) = {
            let dim_n = |k: &Key| free.block_dim(k) - image_dims.get(k).copied().unwrap_or(0);
            match &prev_free {
                None => {
                    let mut lift = Lift { target: &amb0, gens: &gens, memo: HashMap::new() };
                    let mut full = |k: &Key| kernel_block(f, &free, k, &mut lift);
                    find_generators(f, n, mg, &free, max_degree, &dim_n, &mut full)
                }
                Some(pf) => {
                    let mut lift = Lift { target: pf, gens: &gens, memo: HashMap::new() };
                    let mut full = |k: &Key| kernel_block(f, &free, k, &mut lift);
                    find_generators(f, n, mg, &free, max_degree, &dim_n, &mut full)
                }
            }
        };
        for (k, _) in &new_gens {
            table.add(i, k, 1);
        }
        gens = new_gens;
        basis = new_basis;
        prev_free = Some(free);
    }
    table
}

fn kernel_block<F: Field, B: Blocks<F>>(f: &F, free: &FreeBlocks<F>, key: &Key, lift: &mut Lift<'_, F, B>) -> Vec<SparseVec<F::Scalar>> {
    let cols: Vec<SparseVec<F::Scalar>> = free.blocks[key].iter().map(|&(g, u)| lift.image(g, u).unwrap_or_default()).collect();
    linalg::kernel(f, &cols)
}

/// Terms of the complex `D_i (x) M` split by key.
struct TorTerm {
    /// C-key -> segments (exponent index, module key, offset)
    blocks: BTreeMap<Key, Vec<(usize, Key, usize)>>,
    dims: HashMap<Key, usize>,
    offset: HashMap<(usize, Key), usize>,
    exps: Vec<Vec<u32>>,
    exp_index: HashMap<Vec<u32>, usize>,
}

fn tor_term<F: Field>(mb: &ModuleBlocks<'_, F>, n: usize, multigraded: bool, i: usize) -> TorTerm {
    let exps = module::exponent_vectors(n, i);
    let exp_index = exps.iter().enumerate().map(|(k, c)| (c.clone(), k)).collect();
    let mut blocks: BTreeMap<Key, Vec<(usize, Key, usize)>> = BTreeMap::new();
    let mut dims: HashMap<Key, usize> = HashMap::new();
    let mut offset = HashMap::new();
    for mkey in mb.keys() {
        let dm = mb.block_dim(&mkey);
        for (ci, c) in exps.iter().enumerate() {
            let ck = (mkey.0 + i as i32, if multigraded { add_multideg(&mkey.1, c) } else { Vec::new() });
            let d = dims.entry(ck.clone()).or_default();
            blocks.entry(ck).or_default().push((ci, mkey.clone(), *d));
            offset.insert((ci, mkey.clone()), *d);
            *d += dm;
        }
    }
    TorTerm { blocks, dims, offset, exps, exp_index }
}

/// Rank of the differential `C_i -> C_{i-1}` in block `ck`.
fn tor_rank<F: Field>(f: &F, mb: &ModuleBlocks<'_, F>, src: &TorTerm, dst: &TorTerm, ck: &Key) -> usize {
    let Some(segs) = src.blocks.get(ck) else { return 0 };
    let Some(&nrows) = dst.dims.get(ck) else { return 0 };
    let mut cols = Vec::new();
    for (ci, mkey, _) in segs {
        let c = &src.exps[*ci];
        for b in 0..mb.block_dim(mkey) {
            let unit = vec![(b, f.one())];
            let mut col = Vec::new();
            for j in 0..c.len() {
                if c[j] == 0 {
                    continue;
                }
                let Some((mk2, w)) = mb.act(j, mkey, &unit) else { continue };
                let mut c2 = c.clone();
                c2[j] -= 1;
                let off = dst.offset[&(dst.exp_index[&c2], mk2)];
                col.extend(w.into_iter().map(|(r, x)| (off + r, x)));
            }
            cols.push(linalg::collect_sparse(f, col));
        }
    }
    linalg::matrix_rank(f, &SparseMatrix::new(nrows, cols))
}

/// Betti numbers of `m` through step `steps` as dimensions of Tor(K, m).
pub fn betti_via_tor<F: Field>(m: &GradedModule<F>, steps: usize) -> BettiTable {
    let f = &m.field;
    let n = m.n;
    let mg = m.is_multigraded();
    let mb = ModuleBlocks::new(m);
    let terms: Vec<TorTerm> = (0..=steps + 1).map(|i| tor_term(&mb, n, mg, i)).collect();
    // ranks[i][key] = rank of C_i -> C_{i-1}
    let mut ranks: Vec<HashMap<Key, usize>> = vec![HashMap::new()];
    for i in 1..=steps + 1 {
        let keys: Vec<&Key> = terms[i].blocks.keys().collect();
        let r: HashMap<Key, usize> = keys.par_iter().map(|k| ((*k).clone(), tor_rank(f, &mb, &terms[i], &terms[i - 1], k))).collect();
        ranks.push(r);
    }
    let mut table = BettiTable::new(steps, mg);
    for i in 0..=steps {
        for (k, d) in &terms[i].dims {
            let b = d - ranks[i].get(k).copied().unwrap_or(0) - ranks[i + 1].get(k).copied().unwrap_or(0);
            table.add(i, k, b);
        }
    }
    table
}

/// Checks that consecutive differentials of `D_i (x) m` compose to zero.
pub fn tor_complex_is_complex<F: Field>(m: &GradedModule<F>, steps: usize) -> bool {
    let f = &m.field;
    let mb = ModuleBlocks::new(m);
    let mg = m.is_multigraded();
    let terms: Vec<TorTerm> = (0..=steps).map(|i| tor_term(&mb, m.n, mg, i)).collect();
    let apply = |i: usize, ck: &Key, v: &SparseVec<F::Scalar>| -> SparseVec<F::Scalar> {
        let mut out = Vec::new();
        for (ci, mkey, off) in &terms[i].blocks[ck] {
            let c = &terms[i].exps[*ci];
            let dm = mb.block_dim(mkey);
            let part: SparseVec<F::Scalar> = v.iter().filter(|(r, _)| *r >= *off && *r < off + dm).map(|(r, x)| (r - off, x.clone())).collect();
            if part.is_empty() {
                continue;
            }
            for j in 0..c.len() {
                if c[j] == 0 {
                    continue;
                }
                let Some((mk2, w)) = mb.act(j, mkey, &part) else { continue };
                let mut c2 = c.clone();
                c2[j] -= 1;
                let o2 = terms[i - 1].offset[&(terms[i - 1].exp_index[&c2], mk2)];
                out.extend(w.into_iter().map(|(r, x)| (o2 + r, x)));
            }
        }
        linalg::collect_sparse(f, out)
    };
    for i in 2..=steps {
        for (ck, d) in &terms[i].dims {
            for b in 0..*d {
                let once = apply(i, ck, &vec![(b, f.one())]);
                if once.is_empty() {
                    continue;
                }
                if !terms[i - 1].blocks.contains_key(ck) || !apply(i - 1, ck, &once).is_empty() {
                    return false;
                }
            }
        }
    }
    true
}

/// The annihilator of the Orlik-Solomon ideal, standing in for the homology
/// of the complement. Internal degree `d` corresponds to homological degree
/// `d - twist`.
#[derive(Clone, Debug)]
pub struct HomologyModule<F: Field> {
    pub generators: Vec<ExtElem<F::Scalar>>,
    pub module: GradedModule<F>,
    pub twist: i32,
}

pub fn homology_module<F: Field>(arr: &Arrangement<F>) -> Result<HomologyModule<F>> {
    let ext = arr.exterior();
    let ideal = arr.os_ideal(&ext);
    let generators = module::annihilator(&ext, &ideal)?;
    let (module, _) = module::annihilator_module(&ext, &ideal)?;
    Ok(HomologyModule { generators, module, twist: arr.n() as i32 })
}

/// Coefficients of `(-1)^l chi(t) / (1 - t)^n` through `t^trunc`.
pub fn predicted_betti_series<F: Field>(arr: &Arrangement<F>, trunc: usize) -> Vec<i64> {
    let chi = arr.char_poly();
    let sign = if arr.dim() % 2 == 0 { 1 } else { -1 };
    chi.scale(sign).over_one_minus_t_pow(arr.n(), trunc)
}

/// Checks that the alternating Betti series times `(1+t)^n` is the Poincare
/// polynomial of homology, `t^l pi(1/t)` written from the top degree down.
pub fn euler_consistent<F: Field>(arr: &Arrangement<F>, totals: &[usize]) -> bool {
    let n = arr.n();
    let l = arr.dim();
    // sum (-1)^i beta_i t^i (1+t)^n, truncated at the number of steps
    let alt = Poly::new(totals.iter().enumerate().map(|(i, b)| if i % 2 == 0 { *b as i64 } else { -(*b as i64) }).collect());
    let prod = alt.mul(&Poly::linear(1, 1).pow(n));
    let dims = arr.nbc_dims();
    // coefficient of t^k is dim of the homology piece A_{l-k}
    (0..totals.len()).all(|k| prod.coeff(k) == if k <= l { dims[l - k] as i64 } else { 0 })
}

/// Socle dimensions of the Orlik-Solomon algebra in degrees 0..=l.
pub fn socle<F: Field>(arr: &Arrangement<F>) -> Result<Vec<usize>> {
    let ext = arr.exterior();
    let a = GradedModule::quotient_algebra(&ext, &arr.os_ideal(&ext))?;
    let mut out = vec![0; arr.dim() + 1];
    for (d, s) in a.socle_dims() {
        out[d as usize] = s;
    }
    Ok(out)
}

/// Resolves the Orlik-Solomon ideal itself and tests linearity from its
/// lowest generator degree.
pub fn os_ideal_resolution_is_linear<F: Field>(arr: &Arrangement<F>, steps: usize) -> Result<bool> {
    let ext = arr.exterior();
    let i = GradedModule::ideal(&ext, &arr.os_ideal(&ext))?;
    let t = betti_via_tor(&i, steps);
    Ok(match t.start() {
        None => true,
        Some(s) => t.is_linear(s),
    })
}

/// Minimal generators (degree, vector) of a module, chosen per degree as the
/// earliest basis vectors independent of the products from below.
pub fn module_generators<F: Field>(m: &GradedModule<F>) -> Vec<(i32, SparseVec<F::Scalar>)> {
    let f = &m.field;
    let mut out = Vec::new();
    for k in 0..m.dims.len() {
        let d = m.lo + k as i32;
        let mut ech = Echelon::new(f);
        if k > 0 {
            for b in 0..m.dims[k - 1] {
                for j in 0..m.n {
                    let w = m.act(j, d - 1, &vec![(b, f.one())]);
                    if !w.is_empty() {
                        ech.insert(w);
                    }
                }
            }
        }
        for b in 0..m.dims[k] {
            if ech.rank() == m.dims[k] {
                break;
            }
            let v = vec![(b, f.one())];
            if ech.insert(v.clone()) {
                out.push((d, v));
            }
        }
    }
    out
}

/// The free cover `F -> m` on minimal generators and its kernel.
pub struct FirstSyzygy<F: Field> {
    pub free: GradedModule<F>,
    pub kernel: GradedModule<F>,
    pub generators: Vec<(i32, SparseVec<F::Scalar>)>,
}

pub fn first_syzygy<F: Field>(m: &GradedModule<F>) -> Result<FirstSyzygy<F>> {
    let f = &m.field;
    let ext = Exterior::new(m.n, f)?;
    let generators = module_generators(m);
    let degrees: Vec<i32> = generators.iter().map(|g| g.0).collect();
    let free = GradedModule::free(&ext, &degrees, None);
    if degrees.is_empty() {
        let kernel = free.clone();
        return Ok(FirstSyzygy { free, kernel, generators });
    }
    let mut spans = Vec::new();
    for k in 0..free.dims.len() {
        let d = free.lo + k as i32;
        let idx = module::free_basis_index(m.n, &degrees, d);
        let mut basis: Vec<(usize, Mono)> = vec![(0, 0); idx.len()];
        for (key, i) in &idx {
            basis[*i] = *key;
        }
        let cols: Vec<SparseVec<F::Scalar>> = basis.iter().map(|&(g, u)| m.act_mono(u, generators[g].0, &generators[g].1)).collect();
        let mut ech = Echelon::new(f);
        for v in linalg::kernel(f, &cols) {
            ech.insert(v);
        }
        spans.push(ech);
    }
    let (kernel, _) = free.submodule(spans);
    Ok(FirstSyzygy { free, kernel, generators })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{boolean, central_lines, generic_lines};
    use crate::field::{PrimeField, Rationals};

    fn residue_field<F: Field>(f: &F, n: usize) -> GradedModule<F> {
        let ext = Exterior::new(n, f).unwrap();
        let m: Vec<_> = (0..n).map(|i| ext.var(i)).collect();
        GradedModule::quotient_algebra(&ext, &m).unwrap()
    }

    #[test]
    fn residue_field_betti() {
        let q = Rationals;
        let k = residue_field(&q, 2);
        let t = minimal_free_resolution(&k, 4);
        assert_eq!(t.totals(), vec![1, 2, 3, 4, 5]);
        assert!(t.is_linear(0));
        assert_eq!(betti_via_tor(&k, 4), t);
        let k3 = residue_field(&q, 3);
        let totals = minimal_free_resolution(&k3, 4).totals();
        assert_eq!(totals, (0..=4).map(|i| exterior::binomial(3 + i - 1, i)).collect::<Vec<_>>());
    }

    #[test]
    fn homology_modules() {
        let q = Rationals;
        let c3 = homology_module(&central_lines(&q, 3).unwrap()).unwrap();
        assert_eq!(c3.generators.len(), 2);
        assert_eq!(c3.module.lo, 1);
        let t = minimal_free_resolution(&c3.module, 4);
        assert_eq!(t.totals(), vec![2, 3, 4, 5, 6]);
        assert!(t.is_linear(1));
        let g3 = homology_module(&generic_lines(&q, 3).unwrap()).unwrap();
        let t = minimal_free_resolution(&g3.module, 3);
        assert_eq!(t.totals(), vec![3, 6, 10, 15]);
        assert!(t.is_linear(1));
        let b2 = homology_module(&boolean(&q, 2).unwrap()).unwrap();
        assert_eq!(b2.generators.len(), 1);
        assert_eq!(b2.module.lo, 0);
        assert_eq!(minimal_free_resolution(&b2.module, 3).totals(), vec![1, 0, 0, 0]);
    }

    #[test]
    fn predicted_series() {
        let q = Rationals;
        assert_eq!(predicted_betti_series(&central_lines(&q, 3).unwrap(), 3), vec![2, 3, 4, 5]);
        assert_eq!(predicted_betti_series(&generic_lines(&q, 3).unwrap(), 3), vec![3, 6, 10, 15]);
        assert_eq!(predicted_betti_series(&boolean(&q, 2).unwrap(), 2), vec![1, 0, 0]);
    }

    #[test]
    fn socles() {
        let q = Rationals;
        assert_eq!(socle(&central_lines(&q, 3).unwrap()).unwrap(), vec![0, 0, 2]);
        assert_eq!(socle(&generic_lines(&q, 3).unwrap()).unwrap(), vec![0, 0, 3]);
        assert_eq!(socle(&boolean(&q, 2).unwrap()).unwrap(), vec![0, 0, 1]);
    }

    #[test]
    fn engines_agree_multigraded() {
        let p = PrimeField::new(32003).unwrap();
        let ext = Exterior::new(4, &p).unwrap();
        let gens = vec![ext.monomial(0b0011), ext.monomial(0b0110), ext.monomial(0b1101)];
        let i = GradedModule::ideal(&ext, &gens).unwrap();
        assert!(i.is_multigraded());
        let a = minimal_free_resolution(&i, 3);
        let b = betti_via_tor(&i, 3);
        assert_eq!(a, b);
        assert!(a.multigraded.is_some());
        assert!(tor_complex_is_complex(&i, 3));
    }

    #[test]
    fn os_ideal_linearity() {
        let q = Rationals;
        let g3 = generic_lines(&q, 3).unwrap();
        assert!(os_ideal_resolution_is_linear(&g3, 3).unwrap());
        assert!(os_ideal_resolution_is_linear(&g3.cone(), 3).unwrap());
        let ng = Arrangement::from_int_rows(&q, 2, &[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, -1], vec![1, -1, 0]]).unwrap();
        assert!(!os_ideal_resolution_is_linear(&ng, 3).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let q = Rationals;
        let t = minimal_free_resolution(&residue_field(&q, 2), 3);
        let back = BettiTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back.graded, t.graded);
        assert!(t.to_string().contains("total:"));
    }

    #[test]
    fn syzygy_of_residue_field() {
        let q = Rationals;
        let k = residue_field(&q, 2);
        let s = first_syzygy(&k).unwrap();
        // the maximal ideal of E
        assert_eq!(s.kernel.dims, vec![2, 1]);
        assert_eq!(s.kernel.lo, 1);
        s.kernel.check_exterior_relations().unwrap();
    }

    #[test]
    fn euler_identity() {
        let q = Rationals;
        let a = central_lines(&q, 3).unwrap();
        let h = homology_module(&a).unwrap();
        let t = betti_via_tor(&h.module, 4);
        assert!(euler_consistent(&a, &t.totals()));
    }
}
