//! Depth of the level-l Verlinde ring: the least tensor power of
//! W = V(0) ⊕ V(ω_1) ⊕ … ⊕ V(ω_n) whose highest-weight support covers D_l.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::{Family, Rational, RootSystem, SimpleType, Weight};
use crate::rep::RepTheory;
use crate::simplex::{maximize, rat};
use crate::verlinde::{check_level, enumerate_level_weights, fundamental_classes, kac_walton};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Classical,
    Level(u32),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Classical => f.write_str("classical"),
            Mode::Level(l) => write!(f, "level {l}"),
        }
    }
}

/// Π_h(W^⊗k), or its image in the level-l Verlinde ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportSet {
    pub weights: BTreeSet<Weight>,
    pub k: u32,
    pub mode: Mode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    #[serde(rename = "type")]
    pub simple_type: SimpleType,
    pub level: u32,
    pub depth: u32,
    pub lower: u32,
    pub upper: u32,
    pub witness: Weight,
    pub mode: &'static str,
}

/// Sum of Dynkin labels.
pub fn epsilon(lambda: &Weight) -> i64 {
    lambda.0.iter().map(|&x| x as i64).sum()
}

/// Dominant weights with ε ≤ k, in lexicographic order.
pub fn enumerate_b_k(rs: &RootSystem, k: u32) -> Vec<Weight> {
    let n = rs.rank();
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    fn rec(i: usize, budget: i32, cur: &mut Vec<i32>, out: &mut Vec<Weight>) {
        if i == cur.len() {
            out.push(Weight(cur.clone()));
            return;
        }
        for x in 0..=budget {
            cur[i] = x;
            rec(i + 1, budget - x, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, k as i32, &mut cur, &mut out);
    out.sort();
    out
}

/// min_i c_i‖α_i‖²/2, i.e. the smallest comark.
pub fn min_mark(rs: &RootSystem) -> Rational {
    rs.marks()
        .iter()
        .zip(rs.root_norms())
        .map(|(&c, norm)| Rational::from_integer(c) * norm / 2)
        .min()
        .expect("rank ≥ 1")
}

/// max ε(Σx_iω_i − Σy_iα_i) over x, y ≥ 0, Σx_i ≤ k, and
/// Σ_i y_i⟨α_i, α_j^∨⟩ ≤ x_j for every j.
pub fn lp_epsilon_max(rs: &RootSystem, k: u32) -> Result<BigRational> {
    let n = rs.rank();
    let cartan = rs.cartan();
    // variables: x_1..x_n, y_1..y_n
    let mut c = vec![rat(1); n];
    c.extend(cartan.iter().map(|row| rat(-row.iter().map(|&v| v as i64).sum::<i64>())));
    let mut a = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut row = vec![rat(0); 2 * n];
        row[j] = rat(-1);
        for i in 0..n {
            row[n + i] = rat(cartan[i][j] as i64);
        }
        a.push(row);
    }
    let mut total = vec![rat(1); n];
    total.extend(std::iter::repeat(rat(0)).take(n));
    a.push(total);
    let mut b = vec![rat(0); n];
    b.push(rat(k as i64));
    match maximize(&c, &a, &b) {
        Ok(s) => Ok(s.value),
        Err(Error::Unbounded) => Err(Error::Internal("ε is unbounded on the LP polytope".into())),
        Err(e) => Err(e),
    }
}

/// Bounds on d(l) for the given type: (lower, upper).
pub fn depth_bounds(t: SimpleType, l: u32) -> (u32, u32) {
    let n = t.rank() as u32;
    let ceil = |num: u32, den: u32| Integer::div_ceil(&num, &den);
    match (t.family(), n) {
        (Family::A, _) | (Family::C, _) | (Family::B, 2) => (l, l),
        (Family::B, _) => (ceil(2 * l, n), l),
        (Family::D, _) => (ceil(2 * l, n - 1), l),
        (Family::E, 6) => (ceil(l, 3), l),
        (Family::E, 7) => (ceil(l, 5), l),
        (Family::E, _) => (ceil(4 * l, 15), l / 2),
        (Family::F, _) => (ceil(2 * l, 5), l),
        (Family::G, _) => (ceil(2 * l, 3), l),
    }
}

fn step(
    rt: &RepTheory,
    mode: Mode,
    frontier: &[Weight],
    fundamentals: &[Weight],
) -> Result<BTreeSet<Weight>> {
    let pairs: Vec<(&Weight, &Weight)> = frontier
        .iter()
        .flat_map(|l| fundamentals.iter().map(move |f| (l, f)))
        .collect();
    let parts: Vec<Result<Vec<Weight>>> = pairs
        .par_iter()
        .map(|(lambda, f)| match mode {
            Mode::Classical => Ok(rt.tensor_decompose(lambda, f)?.terms.into_keys().collect()),
            Mode::Level(l) => {
                let signed = kac_walton(rt, l, lambda, f)?;
                if let Some((w, c)) = signed.iter().find(|(_, c)| **c < 0) {
                    return Err(Error::Internal(format!(
                        "negative coefficient {c} at {w} in {lambda} ⊗ {f} at level {l}"
                    )));
                }
                Ok(signed.into_keys().collect())
            }
        })
        .collect();
    let mut out = BTreeSet::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Fundamentals that act nontrivially: all of them classically, at level l
/// only those whose class in the Verlinde ring is nonzero.
fn active_fundamentals(rt: &RepTheory, mode: Mode) -> Result<Vec<Weight>> {
    let rs = rt.root_system();
    let n = rs.rank();
    match mode {
        Mode::Classical => Ok((1..=n).map(|i| Weight::fundamental(n, i)).collect()),
        Mode::Level(l) => {
            let basis = enumerate_level_weights(rs, l as i64)?;
            let classes = fundamental_classes(rs, &basis)?;
            let mut out = Vec::new();
            for c in classes {
                match c.class {
                    None => {}
                    Some(k) if c.sign > 0 => out.push(basis.weights()[k].clone()),
                    Some(k) => {
                        return Err(Error::Internal(format!(
                            "ω{} folds to -[{}] at level {l}",
                            c.fundamental,
                            basis.weights()[k]
                        )))
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Supports S_0 ⊆ S_1 ⊆ … ⊆ S_k; each step only re-tensors the newest weights.
pub fn support_sequence(rt: &RepTheory, k: u32, mode: Mode) -> Result<Vec<SupportSet>> {
    let n = rt.root_system().rank();
    let fundamentals = active_fundamentals(rt, mode)?;
    let mut current: BTreeSet<Weight> = [Weight::zero(n)].into();
    let mut frontier: Vec<Weight> = current.iter().cloned().collect();
    let mut out = vec![SupportSet {
        weights: current.clone(),
        k: 0,
        mode,
    }];
    for t in 1..=k {
        let new: Vec<Weight> = step(rt, mode, &frontier, &fundamentals)?
            .into_iter()
            .filter(|w| !current.contains(w))
            .collect();
        current.extend(new.iter().cloned());
        frontier = new;
        out.push(SupportSet {
            weights: current.clone(),
            k: t,
            mode,
        });
    }
    Ok(out)
}

pub fn support_power(rt: &RepTheory, k: u32, mode: Mode) -> Result<SupportSet> {
    Ok(support_sequence(rt, k, mode)?.pop().expect("nonempty"))
}

/// d(l) and the last weight of D_l to be reached. Level mode runs until the
/// support stabilizes; classical mode stops at the upper bound.
pub fn depth(rt: &RepTheory, l: i64, mode_classical: bool) -> Result<DepthReport> {
    let l = check_level(l)?;
    let rs = rt.root_system();
    let n = rs.rank();
    let basis = enumerate_level_weights(rs, l as i64)?;
    let target: BTreeSet<Weight> = basis.weights().iter().cloned().collect();
    let (lower, upper) = depth_bounds(rs.simple_type(), l);
    let mode = if mode_classical {
        Mode::Classical
    } else {
        Mode::Level(l)
    };
    let fundamentals = active_fundamentals(rt, mode)?;

    let mut current: BTreeSet<Weight> = [Weight::zero(n)].into();
    let mut frontier: Vec<Weight> = current.iter().cloned().collect();
    let mut witness = Weight::zero(n);
    let mut remaining: BTreeSet<Weight> = target.clone();
    remaining.remove(&witness);
    let mut k = 0u32;
    while !remaining.is_empty() {
        if mode == Mode::Classical && k >= upper {
            return Err(Error::Internal(format!(
                "D_{l} is not covered by W^⊗{upper} (classical mode)"
            )));
        }
        k += 1;
        let new: Vec<Weight> = step(rt, mode, &frontier, &fundamentals)?
            .into_iter()
            .filter(|w| !current.contains(w))
            .collect();
        if new.is_empty() {
            return Err(Error::Internal(format!(
                "support stabilized at k = {} without covering D_{l}",
                k - 1
            )));
        }
        for w in &new {
            if remaining.remove(w) {
                witness = w.clone();
            }
        }
        current.extend(new.iter().cloned());
        // classical supports grow without bound, only D_l matters from here
        frontier = match mode {
            Mode::Classical => new,
            Mode::Level(_) => new.into_iter().filter(|w| target.contains(w)).collect(),
        };
    }
    Ok(DepthReport {
        simple_type: rs.simple_type(),
        level: l,
        depth: k,
        lower,
        upper,
        witness,
        mode: if mode_classical { "classical" } else { "level" },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    #[serde(rename = "type")]
    pub simple_type: SimpleType,
    pub level: u32,
    pub depth: u32,
    pub lower: u32,
    pub upper: u32,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

impl BoundCheck {
    pub fn pass(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

pub fn check_depth_bounds(rs: &RootSystem, l: u32, d: u32) -> BoundCheck {
    let (lower, upper) = depth_bounds(rs.simple_type(), l);
    BoundCheck {
        simple_type: rs.simple_type(),
        level: l,
        depth: d,
        lower,
        upper,
        lower_ok: lower <= d,
        upper_ok: d <= upper,
    }
}

/// Lower bound on d(l) from the exact LP: D_l ⊆ Π_h(W^⊗k) ⊆ B_{⌊βk⌋} forces
/// ⌊βk⌋ ≥ ⌊l/c⌋, with β = lp_epsilon_max(1) and c the min mark.
pub fn lp_depth_lower_bound(rs: &RootSystem, l: u32) -> Result<u32> {
    let beta = lp_epsilon_max(rs, 1)?;
    let need = level_over_min_mark(rs, l);
    let mut k = 0u32;
    while floor_u32(&(&beta * rat(k as i64))) < need {
        k += 1;
    }
    Ok(k)
}

/// ⌊q⌋ for a nonnegative rational.
pub fn floor_u32(q: &BigRational) -> u32 {
    q.to_integer().to_u32().unwrap_or(u32::MAX)
}

/// ⌊l / c⌋ for the min mark c.
pub fn level_over_min_mark(rs: &RootSystem, l: u32) -> u32 {
    let c = min_mark(rs);
    Integer::div_floor(&(l as i64 * c.denom()), c.numer()) as u32
}
