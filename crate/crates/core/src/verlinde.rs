//! The level-l Verlinde ring.
//!
//! Fusion products are computed by Kac–Walton folding: for each weight ν of
//! one factor, λ + ν + ρ is reflected into the open fundamental alcove
//! {x : (x, α_i) > 0, (x, θ) < l + h∨}, accumulating the sign of the affine
//! Weyl element and discarding anything that lands on a wall.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{RootSystem, SimpleType, Weight};
use crate::rep::{Decomposition, RepTheory};

/// D_l in lexicographic order of Dynkin labels; index 0 is the zero weight.
#[derive(Clone, Debug)]
pub struct LevelWeightBasis {
    level: u32,
    weights: Vec<Weight>,
    index: HashMap<Weight, usize>,
}

impl LevelWeightBasis {
    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of(&self, w: &Weight) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.index.contains_key(w)
    }
}

pub fn check_level(l: i64) -> Result<u32> {
    u32::try_from(l).map_err(|_| Error::NegativeLevel(l))
}

/// All dominant λ with (λ, θ) ≤ l.
pub fn enumerate_level_weights(rs: &RootSystem, l: i64) -> Result<LevelWeightBasis> {
    let level = check_level(l)?;
    let comarks = rs.comarks();
    let n = rs.rank();
    let mut weights = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(i: usize, budget: i64, comarks: &[i64], cur: &mut Vec<i32>, out: &mut Vec<Weight>) {
        if i == cur.len() {
            out.push(Weight(cur.clone()));
            return;
        }
        let mut x = 0;
        while x as i64 * comarks[i] <= budget {
            cur[i] = x;
            rec(i + 1, budget - x as i64 * comarks[i], comarks, cur, out);
            x += 1;
        }
        cur[i] = 0;
    }
    rec(0, level as i64, comarks, &mut cur, &mut weights);
    weights.sort();
    let index = weights.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    Ok(LevelWeightBasis {
        level,
        weights,
        index,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AffineFold {
    Folded { weight: Weight, sign: i32 },
    Wall,
}

/// Folds ν + ρ into the fundamental alcove of level l; returns the folded
/// weight minus ρ with the sign of the affine Weyl element.
pub fn affine_fold(rs: &RootSystem, l: u32, nu: &Weight) -> Result<AffineFold> {
    rs.check_len(nu)?;
    let mut mu: Vec<i32> = nu.0.iter().map(|x| x + 1).collect();
    match affine_fold_shifted(rs, l, &mut mu) {
        Some(sign) => Ok(AffineFold::Folded {
            weight: Weight(mu.iter().map(|x| x - 1).collect()),
            sign,
        }),
        None if mu.is_empty() => Err(Error::NonConvergence(nu.clone())),
        None => Ok(AffineFold::Wall),
    }
}

/// Folds a ρ-shifted weight in place. `None` means a wall; an emptied
/// vector signals non-convergence.
fn affine_fold_shifted(rs: &RootSystem, l: u32, mu: &mut Vec<i32>) -> Option<i32> {
    let height = l as i64 + rs.dual_coxeter();
    let theta = rs.highest_root().labels();
    let mut sign = 1;
    for _ in 0..100_000 {
        if let Some(i) = mu.iter().position(|&x| x <= 0) {
            if mu[i] == 0 {
                return None;
            }
            rs.reflect(mu, i);
            sign = -sign;
            continue;
        }
        let t = rs.level_of(mu) - height;
        match t {
            0 => return None,
            t if t > 0 => {
                for (x, th) in mu.iter_mut().zip(theta) {
                    *x -= t as i32 * th;
                }
                sign = -sign;
            }
            _ => return Some(sign),
        }
    }
    mu.clear();
    None
}

/// Signed Kac–Walton sum over the weights of `char_side`, placed on top of
/// `other`. Valid for any dominant inputs; coefficients may be negative when
/// an input lies outside D_l.
pub(crate) fn kac_walton(
    rt: &RepTheory,
    l: u32,
    other: &Weight,
    char_side: &Weight,
) -> Result<BTreeMap<Weight, i64>> {
    let rs = rt.root_system();
    let ws = rt.weight_system(char_side)?;
    let mut acc: HashMap<Vec<i32>, i64> = HashMap::new();
    let mut v = vec![0i32; rs.rank()];
    for (nu, m) in &ws.weights {
        v.clear();
        v.extend(other.0.iter().zip(nu).map(|(a, b)| a + b + 1));
        match affine_fold_shifted(rs, l, &mut v) {
            Some(sign) => {
                let key: Vec<i32> = v.iter().map(|x| x - 1).collect();
                *acc.entry(key).or_insert(0) += sign as i64 * m;
            }
            None if v.is_empty() => {
                return Err(Error::NonConvergence(Weight(
                    other.0.iter().zip(nu).map(|(a, b)| a + b).collect(),
                )))
            }
            None => {}
        }
    }
    Ok(acc
        .into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(w, c)| (Weight(w), c))
        .collect())
}

/// [V(λ)] ⊗_l [V(μ)] for λ, μ ∈ D_l.
pub fn fuse(rt: &RepTheory, l: u32, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    let rs = rt.root_system();
    for w in [lambda, mu] {
        rs.check_len(w)?;
        if !w.is_dominant() {
            return Err(Error::NonDominantInput(w.clone()));
        }
        if rs.level_of(&w.0) > l as i64 {
            return Err(Error::WeightNotInLevel {
                weight: w.clone(),
                level: l,
            });
        }
    }
    let (other, side) = if rt.weyl_dimension(lambda)? >= rt.weyl_dimension(mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let signed = kac_walton(rt, l, other, side)?;
    let mut terms = BTreeMap::new();
    for (w, c) in signed {
        if c < 0 || rs.level_of(&w.0) > l as i64 {
            return Err(Error::Internal(format!(
                "fusion {lambda} ⊗ {mu} at level {l} produced coefficient {c} at {w}"
            )));
        }
        terms.insert(w, c as u64);
    }
    Ok(Decomposition { terms })
}

/// Image of V(ω_i) in the Verlinde ring: a signed basis element or zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FundamentalClass {
    /// 1-based fundamental index.
    pub fundamental: usize,
    /// Basis index of the folded class, `None` if V(ω_i) lies on a wall.
    pub class: Option<usize>,
    pub sign: i32,
}

impl FundamentalClass {
    pub fn is_positive_basis_element(&self) -> bool {
        self.class.is_some() && self.sign == 1
    }
}

/// The fusion ring: `matrices[i][j][k]` is the multiplicity of V_k in V_i ⊗_l V_j.
#[derive(Clone, Debug)]
pub struct FusionRing {
    simple_type: SimpleType,
    basis: LevelWeightBasis,
    matrices: Vec<Vec<Vec<u32>>>,
    dual: Vec<usize>,
    fundamentals: Vec<FundamentalClass>,
    warnings: Vec<String>,
}

impl FusionRing {
    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn level(&self) -> u32 {
        self.basis.level()
    }

    pub fn basis(&self) -> &LevelWeightBasis {
        &self.basis
    }

    pub fn size(&self) -> usize {
        self.basis.len()
    }

    /// N_i as a dense m×m matrix.
    pub fn matrix(&self, i: usize) -> &[Vec<u32>] {
        &self.matrices[i]
    }

    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> u32 {
        self.matrices[i][j][k]
    }

    /// Index of the dual representation.
    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn fundamental_classes(&self) -> &[FundamentalClass] {
        &self.fundamentals
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// JSON export: basis labels and sparse triples `[i, j, k, m]`.
    pub fn to_json(&self) -> serde_json::Value {
        let mut tensor = Vec::new();
        for (i, ni) in self.matrices.iter().enumerate() {
            for (j, row) in ni.iter().enumerate() {
                for (k, &m) in row.iter().enumerate() {
                    if m != 0 {
                        tensor.push([i as u64, j as u64, k as u64, m as u64]);
                    }
                }
            }
        }
        serde_json::json!({
            "type": self.simple_type.to_string(),
            "level": self.level(),
            "basis": self.basis.weights().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
            "tensor": tensor,
        })
    }
}

pub fn fundamental_classes(
    rs: &RootSystem,
    basis: &LevelWeightBasis,
) -> Result<Vec<FundamentalClass>> {
    let n = rs.rank();
    (1..=n)
        .map(|i| {
            let w = Weight::fundamental(n, i);
            Ok(match affine_fold(rs, basis.level(), &w)? {
                AffineFold::Wall => FundamentalClass {
                    fundamental: i,
                    class: None,
                    sign: 0,
                },
                AffineFold::Folded { weight, sign } => FundamentalClass {
                    fundamental: i,
                    class: Some(basis.index_of(&weight).ok_or_else(|| {
                        Error::Internal(format!("fold of ω{i} left D_l: {weight}"))
                    })?),
                    sign,
                },
            })
        })
        .collect()
}

/// Assembles every fusion coefficient and checks the ring axioms
/// (unit, duality transpose, commutativity of the N_i).
pub fn fusion_matrices(rt: &RepTheory, l: u32) -> Result<FusionRing> {
    if l == 0 {
        return Err(Error::Config("fusion rings need level ≥ 1".into()));
    }
    let rs = rt.root_system();
    let basis = enumerate_level_weights(rs, l as i64)?;
    let m = basis.len();
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i..m).map(move |j| (i, j))).collect();
    let products: Vec<Result<((usize, usize), Decomposition)>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            fuse(rt, l, &basis.weights()[i], &basis.weights()[j]).map(|d| ((i, j), d))
        })
        .collect();
    let mut matrices = vec![vec![vec![0u32; m]; m]; m];
    for p in products {
        let ((i, j), d) = p?;
        for (w, &c) in &d.terms {
            let k = basis
                .index_of(w)
                .ok_or_else(|| Error::Internal(format!("fusion product left D_l: {w}")))?;
            let c = u32::try_from(c).map_err(|_| Error::Internal("coefficient overflow".into()))?;
            matrices[i][j][k] = c;
            matrices[j][i][k] = c;
        }
    }
    let dual = basis
        .weights()
        .iter()
        .map(|w| {
            let d = rs.dual_weight(w)?;
            basis
                .index_of(&d)
                .ok_or_else(|| Error::Internal(format!("dual of {w} left D_l")))
        })
        .collect::<Result<Vec<_>>>()?;
    let fundamentals = fundamental_classes(rs, &basis)?;
    let warnings = fundamentals
        .iter()
        .filter(|f| !f.is_positive_basis_element() || !basis.contains(&Weight::fundamental(rs.rank(), f.fundamental)))
        .map(|f| match f.class {
            None => format!("ω{} is not in D_{l} and folds onto a wall", f.fundamental),
            Some(k) => format!(
                "ω{} is not in D_{l}; it folds to {}[{}]",
                f.fundamental,
                if f.sign < 0 { "-" } else { "" },
                basis.weights()[k]
            ),
        })
        .collect();
    let ring = FusionRing {
        simple_type: rs.simple_type(),
        basis,
        matrices,
        dual,
        fundamentals,
        warnings,
    };
    check_ring_axioms(&ring)?;
    Ok(ring)
}

fn check_ring_axioms(ring: &FusionRing) -> Result<()> {
    let m = ring.size();
    for j in 0..m {
        for k in 0..m {
            if ring.matrices[0][j][k] != (j == k) as u32 {
                return Err(Error::Internal("N_0 is not the identity".into()));
            }
        }
    }
    for i in 0..m {
        let d = ring.dual[i];
        for j in 0..m {
            for k in 0..m {
                if ring.matrices[d][j][k] != ring.matrices[i][k][j] {
                    return Err(Error::Internal(format!("N_dual({i}) ≠ N_{i}ᵀ")));
                }
            }
        }
    }
    let bad = (0..m).into_par_iter().find_any(|&a| {
        (a + 1..m).any(|b| {
            let ab = mat_mul(&ring.matrices[a], &ring.matrices[b]);
            let ba = mat_mul(&ring.matrices[b], &ring.matrices[a]);
            ab != ba
        })
    });
    if let Some(a) = bad {
        return Err(Error::Internal(format!("N_{a} does not commute")));
    }
    Ok(())
}

pub(crate) fn mat_mul(a: &[Vec<u32>], b: &[Vec<u32>]) -> Vec<Vec<u64>> {
    let m = a.len();
    let mut out = vec![vec![0u64; m]; m];
    for i in 0..m {
        for (k, &x) in a[i].iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += x as u64 * b[k][j] as u64;
            }
        }
    }
    out
}

pub const DEFAULT_WEYL_CAP: usize = 1_000_000;
pub const DEFAULT_ROUNDING_TOLERANCE: f64 = 1e-6;

/// Modular S-matrix and the fusion coefficients it predicts through the
/// Verlinde formula.
#[derive(Clone, Debug)]
pub struct SMatrixOracle {
    pub s: Vec<Vec<Complex64>>,
    /// `n[i][j][k]`, rounded.
    pub n: Vec<Vec<Vec<i64>>>,
    /// Largest distance between a Verlinde sum and its rounded value.
    pub residual: f64,
    /// max |(S S†)_{ij} − δ_ij|
    pub unitarity_defect: f64,
}

impl SMatrixOracle {
    /// S_{i0} / S_{00}.
    pub fn quantum_dimension(&self, i: usize) -> f64 {
        (self.s[i][0] / self.s[0][0]).re
    }
}

pub fn smatrix_verlinde_oracle(
    rs: &RootSystem,
    l: u32,
    weyl_cap: usize,
    tolerance: f64,
) -> Result<SMatrixOracle> {
    let order = rs.weyl_group_order();
    if order > weyl_cap as u128 {
        return Err(Error::WeylGroupTooLarge {
            order,
            cap: weyl_cap,
        });
    }
    let basis = enumerate_level_weights(rs, l as i64)?;
    let m = basis.len();
    let modulus = rs.quad_denom() * (l as i64 + rs.dual_coxeter());
    let shifted: Vec<Vec<i32>> = basis
        .weights()
        .iter()
        .map(|w| w.0.iter().map(|x| x + 1).collect())
        .collect();
    let orbits: Vec<Vec<(Vec<i32>, f64)>> = shifted
        .par_iter()
        .map(|x| {
            rs.dominant_orbit(x)
                .into_iter()
                .map(|v| {
                    let mut u = v.clone();
                    let (sign, _) = rs.fold_in_place(&mut u);
                    (v, sign as f64)
                })
                .collect()
        })
        .collect();
    let raw: Vec<Vec<Complex64>> = orbits
        .par_iter()
        .map(|orbit| {
            shifted
                .iter()
                .map(|mu| {
                    orbit.iter().fold(Complex64::new(0.0, 0.0), |acc, (x, sign)| {
                        let p = rs.scaled_inner(x, mu).rem_euclid(modulus);
                        let angle = -2.0 * std::f64::consts::PI * p as f64 / modulus as f64;
                        acc + Complex64::from_polar(*sign, angle)
                    })
                })
                .collect()
        })
        .collect();
    let norm: f64 = raw[0].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let phase = raw[0][0].conj() / raw[0][0].norm();
    let s: Vec<Vec<Complex64>> = raw
        .iter()
        .map(|row| row.iter().map(|z| z * phase / norm).collect())
        .collect();

    let mut unitarity_defect: f64 = 0.0;
    for i in 0..m {
        for j in 0..m {
            let z: Complex64 = (0..m).map(|k| s[i][k] * s[j][k].conj()).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            unitarity_defect = unitarity_defect.max((z - target).norm());
        }
    }

    let mut residual: f64 = 0.0;
    let mut n = vec![vec![vec![0i64; m]; m]; m];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                let z: Complex64 = (0..m)
                    .map(|c| s[i][c] * s[j][c] * s[k][c].conj() / s[0][c])
                    .sum();
                let r = z.re.round();
                residual = residual.max((z - r).norm());
                n[i][j][k] = r as i64;
            }
        }
    }
    if residual > tolerance {
        return Err(Error::RoundingFailure {
            residual,
            tolerance,
        });
    }
    Ok(SMatrixOracle {
        s,
        n,
        residual,
        unitarity_defect,
    })
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

    fn terms(d: &Decomposition) -> Vec<(String, u64)> {
        d.terms.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn level_weights() {
        let a1 = RootSystem::new("A1".parse().unwrap());
        let b = enumerate_level_weights(&a1, 3).unwrap();
        assert_eq!(b.weights(), &[w(&[0]), w(&[1]), w(&[2]), w(&[3])]);
        let g2 = RootSystem::new("G2".parse().unwrap());
        let b = enumerate_level_weights(&g2, 2).unwrap();
        assert_eq!(b.weights(), &[w(&[0, 0]), w(&[0, 1]), w(&[1, 0]), w(&[2, 0])]);
        let e8 = RootSystem::new("E8".parse().unwrap());
        assert_eq!(enumerate_level_weights(&e8, 0).unwrap().weights(), &[Weight::zero(8)]);
        assert!(matches!(enumerate_level_weights(&e8, -1), Err(Error::NegativeLevel(-1))));
    }

    #[test]
    fn affine_fold_examples() {
        let a1 = RootSystem::new("A1".parse().unwrap());
        assert_eq!(affine_fold(&a1, 1, &w(&[2])).unwrap(), AffineFold::Wall);
        assert_eq!(
            affine_fold(&a1, 1, &w(&[4])).unwrap(),
            AffineFold::Folded { weight: w(&[0]), sign: -1 }
        );
        assert_eq!(
            affine_fold(&a1, 3, &w(&[2])).unwrap(),
            AffineFold::Folded { weight: w(&[2]), sign: 1 }
        );
    }

    #[test]
    fn fuse_examples() {
        let a1 = rt("A1");
        assert_eq!(terms(&fuse(&a1, 3, &w(&[1]), &w(&[1])).unwrap()), [("0".into(), 1), ("2".into(), 1)]);
        assert_eq!(terms(&fuse(&a1, 2, &w(&[2]), &w(&[2])).unwrap()), [("0".into(), 1)]);
        let a2 = rt("A2");
        assert_eq!(terms(&fuse(&a2, 1, &w(&[1, 0]), &w(&[1, 0])).unwrap()), [("0,1".into(), 1)]);
        assert!(matches!(
            fuse(&a1, 2, &w(&[3]), &w(&[0])),
            Err(Error::WeightNotInLevel { .. })
        ));
    }

    #[test]
    fn ring_examples() {
        let a1 = rt("A1");
        let r1 = fusion_matrices(&a1, 1).unwrap();
        assert_eq!(r1.matrix(1), &[vec![0, 1], vec![1, 0]]);
        let r2 = fusion_matrices(&a1, 2).unwrap();
        assert_eq!(r2.matrix(1), &[vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]);
        assert!(r2.warnings().is_empty());
        let json = r2.to_json();
        assert_eq!(json["basis"], serde_json::json!(["0", "1", "2"]));
    }

    #[test]
    fn s_matrix_a1_level1() {
        let a1 = RootSystem::new("A1".parse().unwrap());
        let o = smatrix_verlinde_oracle(&a1, 1, DEFAULT_WEYL_CAP, 1e-6).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expect = [[h, h], [h, -h]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((o.s[i][j] - Complex64::new(expect[i][j], 0.0)).norm() < 1e-12);
            }
        }
        assert!(o.unitarity_defect < 1e-9);
    }

    #[test]
    fn weyl_cap() {
        let e7 = RootSystem::new("E7".parse().unwrap());
        assert!(matches!(
            smatrix_verlinde_oracle(&e7, 1, DEFAULT_WEYL_CAP, 1e-6),
            Err(Error::WeylGroupTooLarge { .. })
        ));
    }

    #[test]
    fn fundamental_classes_outside_level() {
        let g2 = RootSystem::new("G2".parse().unwrap());
        let basis = enumerate_level_weights(&g2, 1).unwrap();
        let f = fundamental_classes(&g2, &basis).unwrap();
        assert_eq!(f[0].class, basis.index_of(&w(&[1, 0])));
        // (ω₂ + ρ, θ) = 2 + 3 = l + h∨
        assert_eq!(f[1].class, None);
    }
}
