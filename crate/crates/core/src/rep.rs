//! Finite-dimensional representations: Weyl dimensions, dominant characters
//! by Freudenthal's recursion, and tensor product decomposition.
//!
//! [`RepTheory`] owns a root system together with a memo of every character
//! it has computed. Entries are immutable once inserted, so concurrent readers
//! only contend on the insert.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;
use std::sync::{Arc, RwLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{RootSystem, SimpleType, Weight};

pub const DEFAULT_CHARACTER_CAP: usize = 1_000_000;

/// Weight multiplicities. Characters of modules are keyed by dominant
/// weights; a full weight system lists every weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Character {
    pub entries: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn multiplicity(&self, w: &Weight) -> i64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Every weight of a module with multiplicity, flattened for hot loops.
#[derive(Clone, Debug, Default)]
pub struct WeightSystem {
    pub weights: Vec<(Vec<i32>, i64)>,
}

impl WeightSystem {
    pub fn dimension(&self) -> i64 {
        self.weights.iter().map(|(_, m)| m).sum()
    }
}

/// Multiplicities of irreducible summands, keyed by highest weight.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub terms: BTreeMap<Weight, u64>,
}

impl Decomposition {
    pub fn support(&self) -> impl Iterator<Item = &Weight> {
        self.terms.keys()
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// Converts signed accumulators; fails if any coefficient is negative.
    pub(crate) fn from_signed(acc: HashMap<Vec<i32>, i64>, what: &str) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (w, c) in acc {
            match c {
                0 => {}
                c if c > 0 => {
                    terms.insert(Weight(w), c as u64);
                }
                c => {
                    return Err(Error::Internal(format!(
                        "{what}: negative coefficient {c} at {}",
                        Weight(w)
                    )))
                }
            }
        }
        Ok(Decomposition { terms })
    }
}

pub struct RepTheory {
    rs: RootSystem,
    cap: usize,
    dominant: RwLock<HashMap<Weight, Arc<Character>>>,
    full: RwLock<HashMap<Weight, Arc<WeightSystem>>>,
}

impl RepTheory {
    pub fn new(rs: RootSystem) -> Self {
        Self::with_cap(rs, DEFAULT_CHARACTER_CAP)
    }

    pub fn with_cap(rs: RootSystem, cap: usize) -> Self {
        RepTheory {
            rs,
            cap,
            dominant: RwLock::new(HashMap::new()),
            full: RwLock::new(HashMap::new()),
        }
    }

    pub fn for_type(t: SimpleType) -> Self {
        Self::new(RootSystem::new(t))
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check_dominant(&self, w: &Weight) -> Result<()> {
        self.rs.check_len(w)?;
        if !w.is_dominant() {
            return Err(Error::NonDominantInput(w.clone()));
        }
        Ok(())
    }

    /// dim V(λ) = Π_{α>0} (λ+ρ, α)/(ρ, α).
    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<BigUint> {
        self.check_dominant(lambda)?;
        let shifted: Vec<i32> = lambda.0.iter().map(|x| x + 1).collect();
        let rho = vec![1; self.rs.rank()];
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for alpha in self.rs.positive_roots() {
            num *= self.rs.scaled_inner(&shifted, &alpha.0) as u64;
            den *= self.rs.scaled_inner(&rho, &alpha.0) as u64;
        }
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::Internal(format!("Weyl dimension of {lambda} not integral")));
        }
        Ok(q)
    }

    fn dim_u128(&self, lambda: &Weight) -> Result<u128> {
        let d = self.weyl_dimension(lambda)?;
        Ok(u128::try_from(d).unwrap_or(u128::MAX))
    }

    /// Multiplicities of the dominant weights of V(λ) (Freudenthal).
    pub fn dominant_character(&self, lambda: &Weight) -> Result<Arc<Character>> {
        self.check_dominant(lambda)?;
        if let Some(c) = self.dominant.read().unwrap().get(lambda) {
            return Ok(c.clone());
        }
        let c = Arc::new(self.freudenthal(lambda)?);
        let mut guard = self.dominant.write().unwrap();
        Ok(guard.entry(lambda.clone()).or_insert(c).clone())
    }

    fn freudenthal(&self, lambda: &Weight) -> Result<Character> {
        let rs = &self.rs;
        let roots: Vec<&[i32]> = rs.positive_roots().iter().map(|w| w.labels()).collect();

        // Dominant weights below λ: closed under subtracting positive roots
        // while staying dominant.
        let mut order = vec![lambda.0.clone()];
        let mut seen: HashSet<Vec<i32>> = HashSet::new();
        seen.insert(lambda.0.clone());
        let mut head = 0;
        while head < order.len() {
            let mu = order[head].clone();
            head += 1;
            for a in &roots {
                let nu: Vec<i32> = mu.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
                if nu.iter().all(|&x| x >= 0) && seen.insert(nu.clone()) {
                    order.push(nu);
                    if order.len() > self.cap {
                        return Err(Error::ResourceCapExceeded {
                            what: format!("dominant weights of V({lambda})"),
                            estimate: order.len() as u128,
                            cap: self.cap,
                        });
                    }
                }
            }
        }

        let rho = vec![1i32; rs.rank()];
        order.sort_by_key(|m| std::cmp::Reverse(rs.scaled_inner(m, &rho)));

        let shift = |m: &[i32]| -> Vec<i32> { m.iter().map(|x| x + 1).collect() };
        let top = {
            let lr = shift(&lambda.0);
            rs.scaled_inner(&lr, &lr)
        };
        let root_norms: Vec<i64> = roots.iter().map(|a| rs.scaled_inner(a, a)).collect();

        let mut mult: HashMap<Vec<i32>, i64> = HashMap::with_capacity(order.len());
        let mut scratch = vec![0i32; rs.rank()];
        for mu in &order {
            if *mu == lambda.0 {
                mult.insert(mu.clone(), 1);
                continue;
            }
            let mut rhs = 0i64;
            for (a, &aa) in roots.iter().zip(&root_norms) {
                let mu_a = rs.scaled_inner(mu, a);
                let mut k = 1i64;
                loop {
                    for ((s, &m), &x) in scratch.iter_mut().zip(mu.iter()).zip(a.iter()) {
                        *s = m + k as i32 * x;
                    }
                    rs.fold_in_place(&mut scratch);
                    let Some(&m) = mult.get(&scratch) else { break };
                    rhs += (mu_a + k * aa) * m;
                    k += 1;
                }
            }
            let ms = shift(mu);
            let lhs = top - rs.scaled_inner(&ms, &ms);
            let (q, r) = (2 * rhs).div_rem(&lhs);
            if lhs <= 0 || r != 0 {
                return Err(Error::Internal(format!(
                    "Freudenthal step at {} for V({lambda}) is not integral",
                    Weight(mu.clone())
                )));
            }
            mult.insert(mu.clone(), q);
        }
        Ok(Character {
            entries: mult
                .into_iter()
                .filter(|(_, m)| *m != 0)
                .map(|(w, m)| (Weight(w), m))
                .collect(),
        })
    }

    /// Every weight of V(λ), expanding dominant multiplicities over Weyl orbits.
    pub fn weight_system(&self, lambda: &Weight) -> Result<Arc<WeightSystem>> {
        self.check_dominant(lambda)?;
        if let Some(ws) = self.full.read().unwrap().get(lambda) {
            return Ok(ws.clone());
        }
        let dom = self.dominant_character(lambda)?;
        let estimate: u128 = dom.entries.keys().map(|w| self.rs.orbit_size(&w.0)).sum();
        if estimate > self.cap as u128 {
            return Err(Error::ResourceCapExceeded {
                what: format!("weight system of V({lambda})"),
                estimate,
                cap: self.cap,
            });
        }
        let mut weights = Vec::with_capacity(estimate as usize);
        for (w, &m) in &dom.entries {
            weights.extend(self.rs.dominant_orbit(&w.0).into_iter().map(|v| (v, m)));
        }
        let ws = Arc::new(WeightSystem { weights });
        let mut guard = self.full.write().unwrap();
        Ok(guard.entry(lambda.clone()).or_insert(ws).clone())
    }

    /// Racah–Speiser: fold λ + ν + ρ over the weights ν of the smaller factor.
    pub fn tensor_decompose(&self, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
        self.check_dominant(lambda)?;
        self.check_dominant(mu)?;
        let (big, small) = if self.dim_u128(lambda)? >= self.dim_u128(mu)? {
            (lambda, mu)
        } else {
            (mu, lambda)
        };
        let ws = self.weight_system(small)?;
        let mut acc: HashMap<Vec<i32>, i64> = HashMap::new();
        let mut v = vec![0i32; self.rs.rank()];
        for (nu, m) in &ws.weights {
            for ((x, b), n) in v.iter_mut().zip(&big.0).zip(nu) {
                *x = b + n + 1;
            }
            let (sign, wall) = self.rs.fold_in_place(&mut v);
            if wall {
                continue;
            }
            let key: Vec<i32> = v.iter().map(|x| x - 1).collect();
            *acc.entry(key).or_insert(0) += sign as i64 * m;
        }
        Decomposition::from_signed(acc, "Racah-Speiser")
    }

    /// Brute-force decomposition: multiply full characters, then peel off
    /// irreducible characters from the top.
    pub fn tensor_oracle(&self, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
        self.check_dominant(lambda)?;
        self.check_dominant(mu)?;
        let a = self.weight_system(lambda)?;
        let b = self.weight_system(mu)?;
        let estimate = a.weights.len() as u128 * b.weights.len() as u128;
        if estimate > (self.cap as u128) * 100 {
            return Err(Error::ResourceCapExceeded {
                what: format!("character product V({lambda})⊗V({mu})"),
                estimate,
                cap: self.cap,
            });
        }
        let mut product: HashMap<Vec<i32>, i64> = HashMap::new();
        for (x, mx) in &a.weights {
            for (y, my) in &b.weights {
                let s: Vec<i32> = x.iter().zip(y).map(|(p, q)| p + q).collect();
                *product.entry(s).or_insert(0) += mx * my;
            }
        }
        let mut remaining: HashMap<Vec<i32>, i64> = product
            .into_iter()
            .filter(|(w, m)| *m != 0 && w.iter().all(|&x| x >= 0))
            .collect();
        let rho = vec![1i32; self.rs.rank()];
        let mut terms = BTreeMap::new();
        while !remaining.is_empty() {
            let top = remaining
                .keys()
                .max_by(|p, q| {
                    self.rs
                        .scaled_inner(p, &rho)
                        .cmp(&self.rs.scaled_inner(q, &rho))
                        .then_with(|| p.cmp(q))
                })
                .cloned()
                .unwrap();
            let c = remaining[&top];
            if c < 0 {
                return Err(Error::Internal(format!(
                    "oracle: negative multiplicity at {}",
                    Weight(top)
                )));
            }
            let top_w = Weight(top);
            let ch = self.dominant_character(&top_w)?;
            for (w, m) in &ch.entries {
                let e = remaining.entry(w.0.clone()).or_insert(0);
                *e -= c * m;
                if *e == 0 {
                    remaining.remove(&w.0);
                }
            }
            terms.insert(top_w, c as u64);
        }
        Ok(Decomposition { terms })
    }

    /// Σ m · dim V(ν) over a decomposition.
    pub fn decomposition_dimension(&self, d: &Decomposition) -> Result<BigUint> {
        let mut total = BigUint::zero();
        for (w, &m) in &d.terms {
            total += self.weyl_dimension(w)? * m;
        }
        Ok(total)
    }

    /// Writes the fundamental characters computed so far into the cache
    /// file, merging with entries already present for other types.
    pub fn save_fundamental_cache(&self, path: &Path) -> Result<()> {
        let mut store = if path.exists() {
            CharacterCacheFile::read(path)?
        } else {
            CharacterCacheFile::default()
        };
        let n = self.rs.rank();
        let t = self.rs.simple_type();
        let guard = self.dominant.read().unwrap();
        for i in 1..=n {
            if let Some(c) = guard.get(&Weight::fundamental(n, i)) {
                store.entries.insert((t.to_string(), i), (**c).clone());
            }
        }
        drop(guard);
        store.write(path)
    }

    /// Preloads fundamental characters for this type from a cache file.
    /// Returns the number of entries loaded.
    pub fn load_fundamental_cache(&self, path: &Path) -> Result<usize> {
        let store = CharacterCacheFile::read(path)?;
        let t = self.rs.simple_type().to_string();
        let n = self.rs.rank();
        let mut guard = self.dominant.write().unwrap();
        let mut loaded = 0;
        for ((ty, i), c) in store.entries {
            if ty != t {
                continue;
            }
            if i == 0 || i > n || c.entries.keys().any(|w| w.rank() != n) {
                return Err(Error::CacheFormat(format!("entry {ty} {i} does not fit rank {n}")));
            }
            guard.insert(Weight::fundamental(n, i), Arc::new(c));
            loaded += 1;
        }
        Ok(loaded)
    }
}

const CACHE_MAGIC: &str = "verlinde-character-cache";
const CACHE_VERSION: u32 = 1;

/// Text cache of fundamental characters keyed by (type, fundamental index).
///
/// ```text
/// verlinde-character-cache 1
/// char <TYPE> <i> <count>
/// <label,label,...> <multiplicity>     (count lines, dominant weights)
/// ```
#[derive(Debug, Default, Clone, PartialEq)]
pub struct CharacterCacheFile {
    pub entries: BTreeMap<(String, usize), Character>,
}

impl CharacterCacheFile {
    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::CacheFormat(msg.to_string());
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| bad("empty file"))?;
        let mut h = header.split_whitespace();
        if h.next() != Some(CACHE_MAGIC) {
            return Err(bad("missing header"));
        }
        let version: u32 = h
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| bad("missing version"))?;
        if version != CACHE_VERSION {
            return Err(Error::CacheFormat(format!("unsupported version {version}")));
        }
        let mut entries = BTreeMap::new();
        while let Some(line) = lines.next() {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [tag, ty, idx, count] = parts[..] else {
                return Err(Error::CacheFormat(format!("bad record header `{line}`")));
            };
            if tag != "char" {
                return Err(Error::CacheFormat(format!("bad record header `{line}`")));
            }
            let ty: SimpleType = ty.parse()?;
            let idx: usize = idx.parse().map_err(|_| bad("bad index"))?;
            let count: usize = count.parse().map_err(|_| bad("bad count"))?;
            let mut ch = Character::default();
            for _ in 0..count {
                let l = lines.next().ok_or_else(|| bad("truncated record"))?;
                let (w, m) = l
                    .trim()
                    .split_once(' ')
                    .ok_or_else(|| Error::CacheFormat(format!("bad entry `{l}`")))?;
                let m: i64 = m.trim().parse().map_err(|_| bad("bad multiplicity"))?;
                ch.entries.insert(w.parse()?, m);
            }
            entries.insert((ty.to_string(), idx), ch);
        }
        Ok(CharacterCacheFile { entries })
    }

    pub fn render(&self) -> String {
        let mut out = format!("{CACHE_MAGIC} {CACHE_VERSION}\n");
        for ((ty, i), ch) in &self.entries {
            let _ = writeln!(out, "char {ty} {i} {}", ch.entries.len());
            for (w, m) in &ch.entries {
                let _ = writeln!(out, "{w} {m}");
            }
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            if !dir.as_os_str().is_empty() {
                std::fs::create_dir_all(dir)?;
            }
        }
        let tmp = path.with_extension("tmp");
        std::fs::write(&tmp, self.render())?;
        std::fs::rename(tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rt(s: &str) -> RepTheory {
        RepTheory::for_type(s.parse().unwrap())
    }

    fn w(v: &[i32]) -> Weight {
        Weight(v.to_vec())
    }

    fn dec(pairs: &[(&[i32], u64)]) -> Decomposition {
        Decomposition {
            terms: pairs.iter().map(|(k, m)| (w(k), *m)).collect(),
        }
    }

    #[test]
    fn dimensions() {
        assert_eq!(rt("A2").weyl_dimension(&w(&[0, 0])).unwrap(), 1u32.into());
        assert_eq!(rt("A2").weyl_dimension(&w(&[1, 1])).unwrap(), 8u32.into());
        assert_eq!(rt("G2").weyl_dimension(&w(&[1, 0])).unwrap(), 7u32.into());
        assert_eq!(rt("G2").weyl_dimension(&w(&[0, 1])).unwrap(), 14u32.into());
        assert_eq!(rt("E8").weyl_dimension(&Weight::fundamental(8, 8)).unwrap(), 248u32.into());
        assert_eq!(rt("E8").weyl_dimension(&Weight::fundamental(8, 1)).unwrap(), 3875u32.into());
        assert_eq!(rt("F4").weyl_dimension(&Weight::fundamental(4, 4)).unwrap(), 26u32.into());
        assert_eq!(rt("B3").weyl_dimension(&Weight::fundamental(3, 3)).unwrap(), 8u32.into());
        assert!(matches!(
            rt("A2").weyl_dimension(&w(&[-1, 0])),
            Err(Error::NonDominantInput(_))
        ));
    }

    #[test]
    fn freudenthal_small() {
        let a2 = rt("A2");
        let c = a2.dominant_character(&w(&[1, 1])).unwrap();
        assert_eq!(c.entries, [(w(&[1, 1]), 1), (w(&[0, 0]), 2)].into_iter().collect());
        let a1 = rt("A1");
        let c = a1.dominant_character(&w(&[2])).unwrap();
        assert_eq!(c.entries, [(w(&[2]), 1), (w(&[0]), 1)].into_iter().collect());
    }

    #[test]
    fn weight_system_sums_to_dimension() {
        for (t, lam) in [("A2", vec![1, 1]), ("G2", vec![1, 0]), ("G2", vec![1, 1]), ("B3", vec![0, 1, 1]), ("F4", vec![0, 0, 0, 1]), ("E6", vec![0, 1, 0, 0, 0, 0])] {
            let r = rt(t);
            let lam = Weight(lam);
            let dim = r.weyl_dimension(&lam).unwrap();
            assert_eq!(BigUint::from(r.weight_system(&lam).unwrap().dimension() as u64), dim, "{t} {lam}");
        }
    }

    #[test]
    fn tensor_examples() {
        let a2 = rt("A2");
        assert_eq!(
            a2.tensor_decompose(&w(&[1, 0]), &w(&[0, 1])).unwrap(),
            dec(&[(&[0, 0], 1), (&[1, 1], 1)])
        );
        assert_eq!(
            a2.tensor_oracle(&w(&[1, 0]), &w(&[1, 0])).unwrap(),
            dec(&[(&[2, 0], 1), (&[0, 1], 1)])
        );
        let a1 = rt("A1");
        assert_eq!(
            a1.tensor_oracle(&w(&[1]), &w(&[1])).unwrap(),
            dec(&[(&[0], 1), (&[2], 1)])
        );
        assert_eq!(a1.tensor_decompose(&w(&[0]), &w(&[5])).unwrap(), dec(&[(&[5], 1)]));
        let b2 = rt("B2");
        assert_eq!(
            b2.tensor_decompose(&w(&[1, 0]), &w(&[1, 0])).unwrap(),
            b2.tensor_oracle(&w(&[1, 0]), &w(&[1, 0])).unwrap()
        );
    }

    #[test]
    fn clebsch_gordan() {
        let a1 = rt("A1");
        for a in 0..6 {
            for b in 0..6 {
                let d = a1.tensor_decompose(&w(&[a]), &w(&[b])).unwrap();
                let expect: BTreeMap<Weight, u64> =
                    ((a - b).abs()..=a + b).step_by(2).map(|c| (w(&[c]), 1)).collect();
                assert_eq!(d.terms, expect, "{a}⊗{b}");
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let r = RepTheory::with_cap(RootSystem::new("E8".parse().unwrap()), 10);
        let err = r.dominant_character(&Weight::fundamental(8, 4)).unwrap_err();
        assert!(matches!(err, Error::ResourceCapExceeded { .. }), "{err}");
        let r = RepTheory::with_cap(RootSystem::new("E8".parse().unwrap()), 200);
        let err = r.weight_system(&Weight::fundamental(8, 8)).unwrap_err();
        match err {
            Error::ResourceCapExceeded { estimate, .. } => assert_eq!(estimate, 241),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("chars.txt");
        let g2 = rt("G2");
        g2.dominant_character(&w(&[1, 0])).unwrap();
        g2.dominant_character(&w(&[0, 1])).unwrap();
        g2.save_fundamental_cache(&path).unwrap();
        let a2 = rt("A2");
        a2.dominant_character(&w(&[1, 0])).unwrap();
        a2.save_fundamental_cache(&path).unwrap();

        let fresh = rt("G2");
        assert_eq!(fresh.load_fundamental_cache(&path).unwrap(), 2);
        assert_eq!(
            *fresh.dominant_character(&w(&[0, 1])).unwrap(),
            *g2.dominant_character(&w(&[0, 1])).unwrap()
        );
        let file = CharacterCacheFile::read(&path).unwrap();
        assert_eq!(file.entries.len(), 3);
        assert!(CharacterCacheFile::parse("nonsense").is_err());
        assert!(CharacterCacheFile::parse("verlinde-character-cache 9\n").is_err());
    }
}
