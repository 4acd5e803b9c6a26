//! Hochschild–Mitchell homology of finite linear categories over `Z`.
//!
//! `C_n = ⊕ C(x_1,x_0) ⊗ C(x_2,x_1) ⊗ ... ⊗ C(x_0,x_n)` with
//! `d(f_0 ⊗ ... ⊗ f_n) = Σ_{i<n} (-1)^i f_0 ⊗ ... ⊗ f_i f_{i+1} ⊗ ... ⊗ f_n
//!   + (-1)^n f_n f_0 ⊗ f_1 ⊗ ... ⊗ f_{n-1}`.

pub mod snf;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use petgraph::algo::{kosaraju_scc, toposort};
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
pub use snf::{invariant_factors, smith, Pivot, Smith, SparseMatrix};

pub const DEFAULT_MAX_ENTRIES: usize = 2_000_000;

/// The size guard, overridable through `DECAT_MAX_ENTRIES`.
pub fn max_entries() -> usize {
    std::env::var("DECAT_MAX_ENTRIES").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_ENTRIES)
}

/// A vector in the span of the basis morphisms, by basis index.
pub type Vector = BTreeMap<usize, BigInt>;

fn add_to(v: &mut Vector, k: usize, c: BigInt) {
    if c.is_zero() {
        return;
    }
    let slot = v.entry(k).or_insert_with(BigInt::zero);
    *slot += c;
    if slot.is_zero() {
        v.remove(&k);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A linear category with finitely many objects and free homs of finite rank.
#[derive(Clone, Debug)]
pub struct FinLinCat {
    pub objects: Vec<String>,
    pub basis: Vec<Morphism>,
    /// basis indices of `C(x, y)`, keyed by `(x, y)`
    homs: BTreeMap<(usize, usize), Vec<usize>>,
    /// `(g, f) -> g ∘ f`; missing composable pairs compose to zero
    compose: HashMap<(usize, usize), Vector>,
    identities: Vec<Vector>,
}

impl FinLinCat {
    /// Validates composability, identity laws and associativity.
    pub fn new(
        objects: Vec<String>,
        basis: Vec<Morphism>,
        compose: HashMap<(usize, usize), Vector>,
        identities: Vec<Vector>,
    ) -> Result<Self> {
        let bad = |s: String| Err(Error::InvalidCategory(s));
        if identities.len() != objects.len() {
            return bad(format!("{} identities for {} objects", identities.len(), objects.len()));
        }
        let mut homs: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (k, m) in basis.iter().enumerate() {
            if m.source >= objects.len() || m.target >= objects.len() {
                return bad(format!("basis element {} has an unknown endpoint", m.name));
            }
            homs.entry((m.source, m.target)).or_default().push(k);
        }
        let c = FinLinCat { objects, basis, homs, compose, identities };
        for (&(g, f), v) in &c.compose {
            let (mg, mf) = (&c.basis[g], &c.basis[f]);
            if mf.target != mg.source {
                return bad(format!("{} ∘ {} is not composable", mg.name, mf.name));
            }
            if let Some(k) = v.keys().copied().find(|&k| c.basis[k].source != mf.source || c.basis[k].target != mg.target) {
                return bad(format!("{} ∘ {} has the term {} outside its hom", mg.name, mf.name, c.basis[k].name));
            }
        }
        for (x, id) in c.identities.iter().enumerate() {
            if let Some(k) = id.keys().copied().find(|&k| c.basis[k].source != x || c.basis[k].target != x) {
                return bad(format!("identity of {} involves {}", c.objects[x], c.basis[k].name));
            }
        }
        for (k, m) in c.basis.iter().enumerate() {
            let f: Vector = [(k, BigInt::one())].into();
            if c.compose_vec(&c.identities[m.target], &f) != f {
                return bad(format!("id_{} ∘ {} != {}", c.objects[m.target], m.name, m.name));
            }
            if c.compose_vec(&f, &c.identities[m.source]) != f {
                return bad(format!("{} ∘ id_{} != {}", m.name, c.objects[m.source], m.name));
            }
        }
        for (f, mf) in c.basis.iter().enumerate() {
            for &g in c.hom_from(mf.target) {
                let gf = c.compose_basis(g, f);
                for &h in c.hom_from(c.basis[g].target) {
                    let hg = c.compose_basis(h, g);
                    let hf: Vector = [(f, BigInt::one())].into();
                    let left = c.compose_vec(&hg, &hf);
                    let hv: Vector = [(h, BigInt::one())].into();
                    let right = c.compose_vec(&hv, &gf);
                    if left != right {
                        return bad(format!(
                            "associativity fails on ({}, {}, {})",
                            c.basis[h].name, c.basis[g].name, mf.name
                        ));
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        self.homs.get(&(x, y)).map_or(&[], Vec::as_slice)
    }

    pub fn rank(&self, x: usize, y: usize) -> usize {
        self.hom(x, y).len()
    }

    fn hom_from(&self, x: usize) -> impl Iterator<Item = &usize> {
        self.homs.iter().filter(move |((s, _), _)| *s == x).flat_map(|(_, v)| v.iter())
    }

    pub fn identity(&self, x: usize) -> &Vector {
        &self.identities[x]
    }

    /// `g ∘ f` for basis elements; zero unless listed.
    pub fn compose_basis(&self, g: usize, f: usize) -> Vector {
        self.compose.get(&(g, f)).cloned().unwrap_or_default()
    }

    pub fn compose_vec(&self, g: &Vector, f: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&j, c) in g {
            for (&k, d) in f {
                if let Some(v) = self.compose.get(&(j, k)) {
                    for (&r, e) in v {
                        add_to(&mut out, r, c * d * e);
                    }
                }
            }
        }
        out
    }

    pub fn find_basis(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|m| m.name == name)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: CategoryJson = serde_json::from_str(s)?;
        j.load()
    }

    pub fn to_json(&self) -> CategoryJson {
        let term = |v: &Vector| -> Vec<TermJson> {
            v.iter()
                .map(|(&k, c)| TermJson { basis: self.basis[k].name.clone(), coeff: Value::String(c.to_string()) })
                .collect()
        };
        let homs = self
            .homs
            .iter()
            .map(|(&(x, y), v)| {
                (
                    format!("{}->{}", self.objects[x], self.objects[y]),
                    HomJson { rank: v.len(), basis: v.iter().map(|&k| self.basis[k].name.clone()).collect() },
                )
            })
            .collect();
        let mut compose: Vec<ComposeJson> = self
            .compose
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(&(g, f), v)| ComposeJson { g: self.basis[g].name.clone(), f: self.basis[f].name.clone(), result: term(v) })
            .collect();
        compose.sort_by(|a, b| (&a.g, &a.f).cmp(&(&b.g, &b.f)));
        let identities = self.objects.iter().cloned().zip(self.identities.iter().map(term)).collect();
        CategoryJson { objects: self.objects.clone(), homs, compose, identities }
    }

    /// The poset category on `n` objects with `C(x, y) = Z` iff `x <= y` in the
    /// reflexive-transitive closure of `relations`.
    pub fn poset(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(x, y) in relations {
            if x >= n || y >= n {
                return Err(Error::InvalidCategory(format!("relation ({x}, {y}) out of range")));
            }
            leq[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if leq[i][k] && leq[k][j] {
                        leq[i][j] = true;
                    }
                }
            }
        }
        if (0..n).any(|i| (0..n).any(|j| i != j && leq[i][j] && leq[j][i])) {
            return Err(Error::InvalidCategory("relations contain a cycle".into()));
        }
        let objects: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let mut basis = Vec::new();
        let mut index = HashMap::new();
        for i in 0..n {
            for j in 0..n {
                if leq[i][j] {
                    index.insert((i, j), basis.len());
                    basis.push(Morphism { name: format!("a{i}_{j}"), source: i, target: j });
                }
            }
        }
        let mut compose = HashMap::new();
        for (&(i, j), &f) in &index {
            for k in 0..n {
                if let Some(&g) = index.get(&(j, k)) {
                    compose.insert((g, f), Vector::from([(index[&(i, k)], BigInt::one())]));
                }
            }
        }
        let identities = (0..n).map(|i| Vector::from([(index[&(i, i)], BigInt::one())])).collect();
        FinLinCat::new(objects, basis, compose, identities)
    }

    /// The totally ordered poset category `x0 < x1 < ... < x_{n-1}`.
    pub fn chain(n: usize) -> Result<Self> {
        let rel: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
        Self::poset(n, &rel)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomJson {
    pub rank: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub basis: String,
    /// an integer, or a string holding one
    pub coeff: Value,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComposeJson {
    pub g: String,
    pub f: String,
    pub result: Vec<TermJson>,
}

/// `{objects, homs: {"x->y": {rank, basis}}, compose: [{g, f, result}], identities: {x: [...]}}`;
/// `{g, f}` stands for `g ∘ f` with `f` applied first.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryJson {
    pub objects: Vec<String>,
    pub homs: BTreeMap<String, HomJson>,
    #[serde(default)]
    pub compose: Vec<ComposeJson>,
    pub identities: BTreeMap<String, Vec<TermJson>>,
}

fn parse_coeff(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from).ok_or_else(|| Error::Parse(format!("coefficient {n} is not an integer"))),
        Value::String(s) => s.trim().parse().map_err(|_| Error::Parse(format!("coefficient `{s}` is not an integer"))),
        other => Err(Error::Parse(format!("coefficient {other} is not an integer"))),
    }
}

impl CategoryJson {
    pub fn load(&self) -> Result<FinLinCat> {
        let bad = |s: String| Err(Error::InvalidCategory(s));
        let obj_index: HashMap<&str, usize> = self.objects.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        if obj_index.len() != self.objects.len() {
            return bad("duplicate object names".into());
        }
        let mut basis = Vec::new();
        let mut name_index: HashMap<String, usize> = HashMap::new();
        for (key, hom) in &self.homs {
            let Some((x, y)) = key.split_once("->") else {
                return bad(format!("hom key `{key}` is not of the form x->y"));
            };
            let (Some(&x), Some(&y)) = (obj_index.get(x.trim()), obj_index.get(y.trim())) else {
                return bad(format!("hom key `{key}` names an unknown object"));
            };
            if hom.rank != hom.basis.len() {
                return bad(format!("hom {key} has rank {} but {} basis names", hom.rank, hom.basis.len()));
            }
            for name in &hom.basis {
                if name_index.insert(name.clone(), basis.len()).is_some() {
                    return bad(format!("basis name {name} used twice"));
                }
                basis.push(Morphism { name: name.clone(), source: x, target: y });
            }
        }
        let lookup = |name: &str| -> Result<usize> {
            name_index.get(name).copied().ok_or_else(|| Error::InvalidCategory(format!("unknown basis element {name}")))
        };
        let vector = |terms: &[TermJson]| -> Result<Vector> {
            let mut v = Vector::new();
            for t in terms {
                add_to(&mut v, lookup(&t.basis)?, parse_coeff(&t.coeff)?);
            }
            Ok(v)
        };
        let mut compose = HashMap::new();
        for c in &self.compose {
            let key = (lookup(&c.g)?, lookup(&c.f)?);
            if compose.insert(key, vector(&c.result)?).is_some() {
                return bad(format!("{} ∘ {} given twice", c.g, c.f));
            }
        }
        let mut identities = Vec::new();
        for name in &self.objects {
            let Some(terms) = self.identities.get(name) else {
                return bad(format!("no identity for {name}"));
            };
            identities.push(vector(terms)?);
        }
        FinLinCat::new(self.objects.clone(), basis, compose, identities)
    }
}

/// Boundary maps `d_n : C_n -> C_{n-1}` for `1 <= n <= top`.
#[derive(Clone, Debug)]
pub struct IntChainComplex {
    pub ranks: Vec<usize>,
    /// `boundaries[n - 1]` is `d_n`
    pub boundaries: Vec<SparseMatrix>,
}

impl IntChainComplex {
    /// `d_n ∘ d_{n+1} = 0` for every stored pair.
    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }
}

/// Cyclic chains `(b_0, ..., b_n)` with `b_i : x_{i+1} -> x_i`, `b_n : x_0 -> x_n`.
fn chains(c: &FinLinCat, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n + 1);
    fn go(c: &FinLinCat, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n + 1 {
            let first = &c.basis[cur[0]];
            if c.basis[cur[n]].source == first.target {
                out.push(cur.clone());
            }
            return;
        }
        let want = cur.last().map(|&b| c.basis[b].source);
        for (k, m) in c.basis.iter().enumerate() {
            if want.map_or(true, |w| m.target == w) {
                cur.push(k);
                go(c, n, cur, out);
                cur.pop();
            }
        }
    }
    go(c, n, &mut cur, &mut out);
    out
}

/// `rank C_n` for `n = 0..=top`, as `trace(A^{n+1})` with `A` the rank matrix.
pub fn chain_ranks(c: &FinLinCat, top: usize) -> Vec<BigInt> {
    let k = c.num_objects();
    let a: Vec<Vec<BigInt>> = (0..k).map(|x| (0..k).map(|y| BigInt::from(c.rank(x, y))).collect()).collect();
    let mut power = a.clone();
    let mut out = Vec::new();
    for _ in 0..=top {
        out.push((0..k).map(|i| power[i][i].clone()).sum());
        power = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| &power[i][l] * &a[l][j]).sum()).collect())
            .collect();
    }
    out
}

/// The complex truncated at `C_top`, refusing any `d_n` with more than `limit` entries.
pub fn build_complex(c: &FinLinCat, top: usize, limit: usize) -> Result<IntChainComplex> {
    let ranks = chain_ranks(c, top);
    for n in 1..=top {
        let entries = &ranks[n] * &ranks[n - 1];
        if entries > BigInt::from(limit) {
            return Err(Error::SizeGuard { entries: entries.to_usize().unwrap_or(usize::MAX), limit });
        }
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=top).map(|n| chains(c, n)).collect();
    let index: Vec<HashMap<&[usize], usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect()).collect();
    let mut boundaries = Vec::new();
    for n in 1..=top {
        let mut d = SparseMatrix::zero(bases[n - 1].len(), bases[n].len());
        for (col, w) in bases[n].iter().enumerate() {
            for i in 0..=n {
                let (prod, rest): (Vector, Vec<usize>) = if i < n {
                    let mut rest = w[..i].to_vec();
                    rest.push(usize::MAX);
                    rest.extend_from_slice(&w[i + 2..]);
                    (c.compose_basis(w[i], w[i + 1]), rest)
                } else {
                    let mut rest = vec![usize::MAX];
                    rest.extend_from_slice(&w[1..n]);
                    (c.compose_basis(w[n], w[0]), rest)
                };
                let slot = if i < n { i } else { 0 };
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                for (b, coef) in prod {
                    let mut key = rest.clone();
                    key[slot] = b;
                    let row = index[n - 1][key.as_slice()];
                    d.add_entry(row, col, &sign * coef);
                }
            }
        }
        boundaries.push(d);
    }
    let ranks = bases.iter().map(Vec::len).collect();
    Ok(IntChainComplex { ranks, boundaries })
}

/// A finitely generated abelian group `Z^free ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub free: usize,
    /// invariant factors greater than one, each dividing the next
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}

impl HomologyGroup {
    pub fn zero() -> Self {
        HomologyGroup { free: 0, torsion: vec![] }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup { free: rank, torsion: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    /// Direct sum, returned with torsion back in invariant-factor form.
    pub fn direct_sum(&self, other: &HomologyGroup) -> HomologyGroup {
        let mut primary = prime_powers(&self.torsion);
        primary.extend(prime_powers(&other.torsion));
        HomologyGroup { free: self.free + other.free, torsion: from_prime_powers(primary) }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Elementary divisors `(p, p^e)` of a list of cyclic orders.
fn prime_powers(ts: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::new();
    for t in ts {
        let mut m = t.abs();
        let mut p = BigInt::from(2);
        while &p * &p <= m {
            if m.is_multiple_of(&p) {
                let mut q = BigInt::one();
                while m.is_multiple_of(&p) {
                    m /= &p;
                    q *= &p;
                }
                out.push((p.clone(), q));
            }
            p += 1;
        }
        if m > BigInt::one() {
            out.push((m.clone(), m));
        }
    }
    out
}

fn from_prime_powers(mut pp: Vec<(BigInt, BigInt)>) -> Vec<BigInt> {
    let mut by_prime: BTreeMap<BigInt, Vec<BigInt>> = BTreeMap::new();
    pp.sort();
    for (p, q) in pp {
        by_prime.entry(p).or_default().push(q);
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![BigInt::one(); len];
    for qs in by_prime.values() {
        // largest powers go to the last factors
        for (k, q) in qs.iter().rev().enumerate() {
            out[len - 1 - k] *= q;
        }
    }
    out
}

/// Homology of `C_0 <- ... <- C_top` in degrees `0..top`.
pub fn homology(cx: &IntChainComplex, strategy: Pivot) -> Vec<HomologyGroup> {
    let factors: Vec<Vec<BigInt>> = cx.boundaries.iter().map(|d| invariant_factors(d, strategy)).collect();
    let rank_d = |n: usize| if n == 0 || n > factors.len() { 0 } else { factors[n - 1].len() };
    (0..cx.boundaries.len())
        .map(|n| HomologyGroup {
            free: cx.ranks[n] - rank_d(n) - rank_d(n + 1),
            torsion: snf::torsion_of(&factors[n]),
        })
        .collect()
}

/// `HH_0, ..., HH_{d-1}` of `c`, under the size guard from [`max_entries`].
pub fn hh(c: &FinLinCat, d: usize) -> Result<Vec<HomologyGroup>> {
    hh_with(c, d, max_entries(), Pivot::MinAbs)
}

pub fn hh_with(c: &FinLinCat, d: usize, limit: usize, strategy: Pivot) -> Result<Vec<HomologyGroup>> {
    if d == 0 {
        return Err(Error::OutOfRange("hh needs at least one degree".into()));
    }
    let cx = build_complex(c, d, limit)?;
    Ok(homology(&cx, strategy))
}

/// `Tr(C) = HH_0(C)` with coordinates for classes of endomorphisms.
#[derive(Clone, Debug)]
pub struct Trace0 {
    pub group: HomologyGroup,
    /// basis morphisms spanning `C_0`, i.e. the endomorphisms
    pub endo_basis: Vec<usize>,
    smith: Smith,
}

/// Coordinates in `Z^free ⊕ ⊕ Z/t_i`; torsion entries reduced into `[0, t_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TraceClass {
    #[serde(with = "bigint_strings")]
    pub free: Vec<BigInt>,
    #[serde(with = "bigint_strings")]
    pub torsion: Vec<BigInt>,
}

impl TraceClass {
    pub fn is_zero(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(Zero::is_zero)
    }
}

pub fn trace0(c: &FinLinCat) -> Result<Trace0> {
    let cx = build_complex(c, 1, max_entries())?;
    let d1 = &cx.boundaries[0];
    let smith = snf::smith(&d1.to_dense(), d1.cols, Pivot::MinAbs);
    let group = HomologyGroup {
        free: d1.rows - smith.rank(),
        torsion: snf::torsion_of(&smith.diagonal),
    };
    let endo_basis = chains(c, 0).into_iter().map(|w| w[0]).collect();
    Ok(Trace0 { group, endo_basis, smith })
}

impl Trace0 {
    /// Class of an endomorphism given in basis coordinates.
    pub fn class_of(&self, f: &Vector) -> Result<TraceClass> {
        let mut v = vec![BigInt::zero(); self.endo_basis.len()];
        for (k, c) in f {
            let pos = self
                .endo_basis
                .iter()
                .position(|b| b == k)
                .ok_or_else(|| Error::Shape(format!("basis element {k} is not an endomorphism")))?;
            v[pos] += c;
        }
        let w: Vec<BigInt> = self.smith.u.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        let r = self.smith.rank();
        let torsion = (0..r)
            .filter(|&i| !self.smith.diagonal[i].is_one())
            .map(|i| w[i].mod_floor(&self.smith.diagonal[i]))
            .collect();
        Ok(TraceClass { free: w[r..].to_vec(), torsion })
    }

    pub fn zero_class(&self) -> TraceClass {
        TraceClass {
            free: vec![BigInt::zero(); self.group.free],
            torsion: vec![BigInt::zero(); self.group.torsion.len()],
        }
    }

    pub fn add(&self, x: &TraceClass, y: &TraceClass) -> TraceClass {
        TraceClass {
            free: x.free.iter().zip(&y.free).map(|(a, b)| a + b).collect(),
            torsion: x
                .torsion
                .iter()
                .zip(&y.torsion)
                .zip(&self.group.torsion)
                .map(|((a, b), t)| (a + b).mod_floor(t))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Triangularity {
    /// objects in an order with `C(x, y) != 0` only for `x` before `y`
    Order(Vec<usize>),
    /// a cycle `x_0 -> x_1 -> ... -> x_0` of nonzero homs through distinct objects
    Cycle(Vec<usize>),
}

pub fn check_upper_triangular(c: &FinLinCat) -> Triangularity {
    let mut g = DiGraph::<usize, ()>::new();
    let nodes: Vec<_> = (0..c.num_objects()).map(|x| g.add_node(x)).collect();
    for x in 0..c.num_objects() {
        for y in 0..c.num_objects() {
            if x != y && c.rank(x, y) > 0 {
                g.add_edge(nodes[x], nodes[y], ());
            }
        }
    }
    match toposort(&g, None) {
        Ok(order) => Triangularity::Order(order.into_iter().map(|n| g[n]).collect()),
        Err(_) => {
            let scc = kosaraju_scc(&g).into_iter().find(|s| s.len() > 1).expect("a cycle lives in a nontrivial component");
            let members: Vec<usize> = scc.iter().map(|n| g[*n]).collect();
            Triangularity::Cycle(cycle_within(c, &members))
        }
    }
}

// breadth-first search for a path back to the start inside a strongly connected set
fn cycle_within(c: &FinLinCat, members: &[usize]) -> Vec<usize> {
    let start = members[0];
    let mut prev: HashMap<usize, usize> = HashMap::new();
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for &y in members {
            if y == x || c.rank(x, y) == 0 {
                continue;
            }
            if y == start {
                let mut path = vec![x];
                while let Some(&p) = prev.get(path.last().unwrap()) {
                    path.push(p);
                }
                path.reverse();
                return path;
            }
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(y) {
                e.insert(x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("strongly connected set without a cycle")
}

/// Whether every endomorphism ring is `Z` spanned by the identity.
pub fn has_trivial_ends(c: &FinLinCat) -> bool {
    (0..c.num_objects()).all(|x| {
        let h = c.hom(x, x);
        h.len() == 1 && c.identity(x) == &Vector::from([(h[0], BigInt::one())])
    })
}

/// The full subcategory on one object.
pub fn endomorphism_algebra(c: &FinLinCat, x: usize) -> Result<FinLinCat> {
    let ids = c.hom(x, x).to_vec();
    let pos: HashMap<usize, usize> = ids.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let basis = ids.iter().map(|&k| Morphism { name: c.basis[k].name.clone(), source: 0, target: 0 }).collect();
    let relabel = |v: &Vector| -> Vector { v.iter().map(|(k, c)| (pos[k], c.clone())).collect() };
    let mut compose = HashMap::new();
    for &g in &ids {
        for &f in &ids {
            let v = c.compose_basis(g, f);
            if !v.is_empty() {
                compose.insert((pos[&g], pos[&f]), relabel(&v));
            }
        }
    }
    FinLinCat::new(vec![c.objects[x].clone()], basis, compose, vec![relabel(c.identity(x))])
}

pub fn decompose(c: &FinLinCat) -> Result<Vec<FinLinCat>> {
    (0..c.num_objects()).map(|x| endomorphism_algebra(c, x)).collect()
}

/// For an upper-triangular category, compares `HH_i(C)` with `⊕_x HH_i(End(x))`
/// for `i < d`. `None` if `c` is not upper-triangular.
pub fn verify_decomposition(c: &FinLinCat, d: usize) -> Result<Option<bool>> {
    if let Triangularity::Cycle(_) = check_upper_triangular(c) {
        return Ok(None);
    }
    let whole = hh(c, d)?;
    let mut sum = vec![HomologyGroup::zero(); d];
    for e in decompose(c)? {
        for (acc, g) in sum.iter_mut().zip(hh(&e, d)?) {
            *acc = acc.direct_sum(&g);
        }
    }
    let normal = |g: &HomologyGroup| g.direct_sum(&HomologyGroup::zero());
    Ok(Some(whole.iter().map(normal).eq(sum.iter().map(normal))))
}

/// `tr([f_kl]) = Σ_k [f_kk]` for an endomorphism of `objs[0] ⊕ objs[1] ⊕ ...`;
/// `blocks[k][l] : objs[l] -> objs[k]`.
pub fn matrix_trace(c: &FinLinCat, tr: &Trace0, objs: &[usize], blocks: &[Vec<Vector>]) -> Result<TraceClass> {
    if blocks.len() != objs.len() || blocks.iter().any(|r| r.len() != objs.len()) {
        return Err(Error::Shape(format!("expected a {0}x{0} block matrix", objs.len())));
    }
    for (k, row) in blocks.iter().enumerate() {
        for (l, f) in row.iter().enumerate() {
            if let Some(b) = f.keys().copied().find(|&b| c.basis[b].source != objs[l] || c.basis[b].target != objs[k]) {
                return Err(Error::Shape(format!("block ({k}, {l}) contains {}", c.basis[b].name)));
            }
        }
    }
    let mut acc = tr.zero_class();
    for (k, row) in blocks.iter().enumerate() {
        acc = tr.add(&acc, &tr.class_of(&row[k])?);
    }
    Ok(acc)
}

/// The additive closure restricted to the given formal sums of objects.
/// Basis element `k,l:b` of `C(X, Y)` puts `b : X_l -> Y_k` in block `(k, l)`.
#[derive(Clone, Debug)]
pub struct AdditiveClosure {
    pub category: FinLinCat,
    pub sums: Vec<Vec<usize>>,
    /// closure basis index -> (row k, column l, basis morphism of the original)
    pub entries: Vec<(usize, usize, usize)>,
}

pub fn additive_closure(c: &FinLinCat, sums: &[Vec<usize>]) -> Result<AdditiveClosure> {
    let name_of = |s: &[usize]| s.iter().map(|&x| c.objects[x].as_str()).collect::<Vec<_>>().join("+");
    let objects: Vec<String> = sums.iter().map(|s| name_of(s)).collect();
    let mut basis = Vec::new();
    let mut entries = Vec::new();
    let mut index: HashMap<(usize, usize, usize, usize, usize), usize> = HashMap::new();
    for (xi, x) in sums.iter().enumerate() {
        for (yi, y) in sums.iter().enumerate() {
            for (k, &yk) in y.iter().enumerate() {
                for (l, &xl) in x.iter().enumerate() {
                    for &b in c.hom(xl, yk) {
                        index.insert((xi, yi, k, l, b), basis.len());
                        entries.push((k, l, b));
                        basis.push(Morphism {
                            name: format!("{}->{}:{k},{l}:{}", objects[xi], objects[yi], c.basis[b].name),
                            source: xi,
                            target: yi,
                        });
                    }
                }
            }
        }
    }
    let mut compose = HashMap::new();
    for (f, mf) in basis.iter().enumerate() {
        let (k, l, bf) = entries[f];
        for (g, mg) in basis.iter().enumerate() {
            if mg.source != mf.target {
                continue;
            }
            let (k2, k1, bg) = entries[g];
            if k1 != k {
                continue;
            }
            let v: Vector = c
                .compose_basis(bg, bf)
                .into_iter()
                .map(|(b, coef)| (index[&(mf.source, mg.target, k2, l, b)], coef))
                .collect();
            if !v.is_empty() {
                compose.insert((g, f), v);
            }
        }
    }
    let identities = sums
        .iter()
        .enumerate()
        .map(|(xi, s)| {
            let mut v = Vector::new();
            for (k, &x) in s.iter().enumerate() {
                for (b, coef) in c.identity(x) {
                    add_to(&mut v, index[&(xi, xi, k, k, *b)], coef.clone());
                }
            }
            v
        })
        .collect();
    let category = FinLinCat::new(objects, basis, compose, identities)?;
    Ok(AdditiveClosure { category, sums: sums.to_vec(), entries })
}

/// All single objects and all sums `x ⊕ y` with `x <= y`.
pub fn two_fold_sums(c: &FinLinCat) -> Vec<Vec<usize>> {
    let n = c.num_objects();
    let mut out: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
    for x in 0..n {
        for y in x..n {
            out.push(vec![x, y]);
        }
    }
    out
}

impl AdditiveClosure {
    /// The block matrix of an endomorphism of the closure object `xi`.
    pub fn blocks(&self, xi: usize, f: &Vector) -> Vec<Vec<Vector>> {
        let size = self.sums[xi].len();
        let mut out = vec![vec![Vector::new(); size]; size];
        for (b, coef) in f {
            let (k, l, orig) = self.entries[*b];
            add_to(&mut out[k][l], orig, coef.clone());
        }
        out
    }
}

/// Checks that `matrix_trace` induces an isomorphism `Tr(closure) -> Tr(C)`:
/// it kills every commutator of the closure, the singletons split it, and the
/// two groups have the same invariants.
pub fn closure_trace_agrees(c: &FinLinCat, closure: &AdditiveClosure) -> Result<bool> {
    let tr = trace0(c)?;
    let k = &closure.category;
    let trk = trace0(k)?;
    if tr.group != trk.group {
        return Ok(false);
    }
    let image = |b: usize| -> Result<TraceClass> {
        let xi = k.basis[b].source;
        let f = Vector::from([(b, BigInt::one())]);
        matrix_trace(c, &tr, &closure.sums[xi], &closure.blocks(xi, &f))
    };
    let cx = build_complex(k, 1, max_entries())?;
    let endo: Vec<usize> = chains(k, 0).into_iter().map(|w| w[0]).collect();
    let images: Vec<TraceClass> = endo.iter().map(|&b| image(b)).collect::<Result<_>>()?;
    for col in &cx.boundaries[0].columns {
        let mut acc = tr.zero_class();
        for (&row, coef) in col {
            let scaled = TraceClass {
                free: images[row].free.iter().map(|x| x * coef).collect(),
                torsion: images[row].torsion.iter().zip(&tr.group.torsion).map(|(x, t)| (x * coef).mod_floor(t)).collect(),
            };
            acc = tr.add(&acc, &scaled);
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    // singletons: the closure object [x] carries C(x, x) verbatim
    for (xi, s) in closure.sums.iter().enumerate() {
        if s.len() != 1 {
            continue;
        }
        for &b in k.hom(xi, xi) {
            let (_, _, orig) = closure.entries[b];
            if image(b)? != tr.class_of(&Vector::from([(orig, BigInt::one())]))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DUAL: &str = r#"{
        "objects": ["x"],
        "homs": {"x->x": {"rank": 2, "basis": ["1", "e"]}},
        "compose": [
            {"g": "1", "f": "1", "result": [{"basis": "1", "coeff": 1}]},
            {"g": "1", "f": "e", "result": [{"basis": "e", "coeff": 1}]},
            {"g": "e", "f": "1", "result": [{"basis": "e", "coeff": 1}]}
        ],
        "identities": {"x": [{"basis": "1", "coeff": 1}]}
    }"#;

    #[test]
    fn chain_homology() {
        for k in 1..=4 {
            let c = FinLinCat::chain(k).unwrap();
            let h = hh(&c, 5).unwrap();
            assert_eq!(h[0], HomologyGroup::free(k));
            assert!(h[1..].iter().all(HomologyGroup::is_zero));
        }
    }

    #[test]
    fn dual_numbers() {
        let c = FinLinCat::from_json_str(DUAL).unwrap();
        let cx = build_complex(&c, 5, DEFAULT_MAX_ENTRIES).unwrap();
        assert!(cx.is_complex());
        let h = homology(&cx, Pivot::MinAbs);
        assert_eq!(h[0], HomologyGroup::free(2));
        assert!(!h[1].is_zero());
        assert_eq!(h, homology(&cx, Pivot::FirstNonzero));
    }

    #[test]
    fn broken_identity() {
        let s = DUAL.replace(r#"{"g": "e", "f": "1", "result": [{"basis": "e", "coeff": 1}]}"#, r#"{"g": "e", "f": "1", "result": [{"basis": "e", "coeff": 2}]}"#);
        let err = FinLinCat::from_json_str(&s).unwrap_err().to_string();
        assert!(err.contains("e ∘ id_x"), "{err}");
    }

    #[test]
    fn two_cycle() {
        let s = r#"{
            "objects": ["x", "y"],
            "homs": {"x->x": {"rank": 1, "basis": ["ix"]}, "y->y": {"rank": 1, "basis": ["iy"]},
                     "x->y": {"rank": 1, "basis": ["f"]}, "y->x": {"rank": 1, "basis": ["g"]}},
            "compose": [
                {"g": "ix", "f": "ix", "result": [{"basis": "ix", "coeff": 1}]},
                {"g": "iy", "f": "iy", "result": [{"basis": "iy", "coeff": 1}]},
                {"g": "iy", "f": "f", "result": [{"basis": "f", "coeff": 1}]},
                {"g": "f", "f": "ix", "result": [{"basis": "f", "coeff": 1}]},
                {"g": "ix", "f": "g", "result": [{"basis": "g", "coeff": 1}]},
                {"g": "g", "f": "iy", "result": [{"basis": "g", "coeff": 1}]},
                {"g": "g", "f": "f", "result": [{"basis": "ix", "coeff": 1}]},
                {"g": "f", "f": "g", "result": [{"basis": "iy", "coeff": 1}]}
            ],
            "identities": {"x": [{"basis": "ix", "coeff": 1}], "y": [{"basis": "iy", "coeff": 1}]}
        }"#;
        let c = FinLinCat::from_json_str(s).unwrap();
        assert!(matches!(check_upper_triangular(&c), Triangularity::Cycle(v) if v.len() == 2));
        // x and y are isomorphic, so the trace is Z
        assert_eq!(trace0(&c).unwrap().group, HomologyGroup::free(1));
    }

    #[test]
    fn trace_relations() {
        let c = FinLinCat::chain(2).unwrap();
        let tr = trace0(&c).unwrap();
        assert_eq!(tr.group, HomologyGroup::free(2));
        let closure = additive_closure(&c, &two_fold_sums(&c)).unwrap();
        assert!(closure_trace_agrees(&c, &closure).unwrap());
    }

    #[test]
    fn torsion_sums() {
        let a = HomologyGroup { free: 1, torsion: vec![BigInt::from(2)] };
        let b = HomologyGroup { free: 0, torsion: vec![BigInt::from(3)] };
        assert_eq!(a.direct_sum(&b), HomologyGroup { free: 1, torsion: vec![BigInt::from(6)] });
    }
}
