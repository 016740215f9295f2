//! Root systems of the simple Lie algebras in Dynkin-label coordinates.
//!
//! Simple roots follow Bourbaki's numbering. The invariant form is scaled so
//! the highest root θ has (θ, θ) = 2, which makes every long root have norm 2.
//! For G₂ the short root is α₁, so ω₁ is the 7-dimensional representation.
//!
//! B₂ and C₂ are the same algebra; both strings parse to the B₂ numbering
//! (α₁ long, α₂ short).

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Family> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }
}

/// A simple Lie type, validated and canonicalized (C₂ ↦ B₂).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    family: Family,
    rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            });
        }
        let family = if family == Family::C && rank == 2 {
            Family::B
        } else {
            family
        };
        Ok(SimpleType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::InvalidType(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

impl Serialize for SimpleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An integral weight given by its Dynkin labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Weight(pub Vec<i32>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// The fundamental weight ω_i, with `i` counted from 1.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = vec![0; rank];
        w[i - 1] = 1;
        Weight(w)
    }

    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    pub fn labels(&self) -> &[i32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i32) -> Weight {
        Weight(self.0.iter().map(|x| x * k).collect())
    }
}

impl From<Vec<i32>> for Weight {
    fn from(v: Vec<i32>) -> Self {
        Weight(v)
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad weight label `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Result of folding a weight into the dominant chamber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fold {
    pub dominant: Weight,
    pub sign: i32,
    pub on_wall: bool,
}

/// Immutable Cartan data for one simple type.
#[derive(Clone, Debug)]
pub struct RootSystem {
    simple_type: SimpleType,
    /// `cartan[i][j] = ⟨α_i, α_j⟩ = 2(α_i, α_j)/(α_j, α_j)`; row i holds the labels of α_i.
    cartan: Vec<Vec<i32>>,
    root_norms: Vec<Rational>,
    quad_form: Vec<Vec<Rational>>,
    quad_scaled: Vec<Vec<i64>>,
    quad_denom: i64,
    highest_root: Weight,
    marks: Vec<i64>,
    comarks: Vec<i64>,
    dual_coxeter: i64,
    positive_roots: Vec<Weight>,
    positive_roots_simple: Vec<Vec<i32>>,
}

impl RootSystem {
    pub fn new(t: SimpleType) -> Self {
        let n = t.rank();
        let (edges, norms) = diagram(t);
        let mut sym = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            sym[i][i] = norms[i];
        }
        for &(i, j) in &edges {
            let v = -std::cmp::max(norms[i], norms[j]) / 2;
            sym[i][j] = v;
            sym[j][i] = v;
        }
        let cartan: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let v = sym[i][j] * 2 / norms[j];
                        assert!(v.is_integer(), "non-integral Cartan entry");
                        v.to_integer() as i32
                    })
                    .collect()
            })
            .collect();

        let inv = invert(&cartan);
        // (ω_i, ω_j) = (A⁻¹)_{ji} · ‖α_i‖²/2
        let quad_form: Vec<Vec<Rational>> = (0..n)
            .map(|i| (0..n).map(|j| inv[j][i] * norms[i] / 2).collect())
            .collect();
        let quad_denom = quad_form
            .iter()
            .flatten()
            .fold(1i64, |acc, r| acc.lcm(r.denom()));
        let quad_scaled = quad_form
            .iter()
            .map(|row| {
                row.iter()
                    .map(|r| (r * quad_denom).to_integer())
                    .collect()
            })
            .collect();

        let positive_roots_simple = positive_roots(&cartan);
        let positive_roots: Vec<Weight> = positive_roots_simple
            .iter()
            .map(|c| simple_to_labels(&cartan, c))
            .collect();
        let top = positive_roots_simple
            .iter()
            .max_by_key(|c| c.iter().sum::<i32>())
            .expect("nonempty root system");
        let marks: Vec<i64> = top.iter().map(|&c| c as i64).collect();
        let highest_root = simple_to_labels(&cartan, top);
        let comarks: Vec<i64> = (0..n)
            .map(|i| {
                let v = norms[i] * marks[i] / 2;
                assert!(v.is_integer());
                v.to_integer()
            })
            .collect();
        let dual_coxeter = 1 + comarks.iter().sum::<i64>();

        let rs = RootSystem {
            simple_type: t,
            cartan,
            root_norms: norms,
            quad_form,
            quad_scaled,
            quad_denom,
            highest_root,
            marks,
            comarks,
            dual_coxeter,
            positive_roots,
            positive_roots_simple,
        };
        debug_assert_eq!(
            rs.inner_product_unchecked(&rs.highest_root, &rs.highest_root),
            Rational::from_integer(2)
        );
        rs
    }

    pub fn simple_type(&self) -> SimpleType {
        self.simple_type
    }

    pub fn rank(&self) -> usize {
        self.simple_type.rank()
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn root_norms(&self) -> &[Rational] {
        &self.root_norms
    }

    pub fn quad_form(&self) -> &[Vec<Rational>] {
        &self.quad_form
    }

    pub fn highest_root(&self) -> &Weight {
        &self.highest_root
    }

    /// Coefficients c_i of θ = Σ c_i α_i.
    pub fn marks(&self) -> &[i64] {
        &self.marks
    }

    /// a_i = c_i‖α_i‖²/2 = (ω_i, θ); all integers under the normalization.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// Positive roots in simple-root coordinates, same order as [`positive_roots`](Self::positive_roots).
    pub fn positive_roots_simple(&self) -> &[Vec<i32>] {
        &self.positive_roots_simple
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.cartan[i].clone())
    }

    pub fn check_len(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: w.rank(),
            });
        }
        Ok(())
    }

    pub fn inner_product(&self, a: &Weight, b: &Weight) -> Result<Rational> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.inner_product_unchecked(a, b))
    }

    pub(crate) fn inner_product_unchecked(&self, a: &Weight, b: &Weight) -> Rational {
        Rational::new(self.scaled_inner(&a.0, &b.0), self.quad_denom)
    }

    /// `quad_denom · (a, b)` as an exact integer.
    pub fn scaled_inner(&self, a: &[i32], b: &[i32]) -> i64 {
        let mut acc = 0i64;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.quad_scaled[i];
            let mut s = 0i64;
            for (j, &bj) in b.iter().enumerate() {
                s += row[j] * bj as i64;
            }
            acc += ai as i64 * s;
        }
        acc
    }

    pub fn quad_denom(&self) -> i64 {
        self.quad_denom
    }

    /// (λ, θ) = Σ a_i λ_i.
    pub fn level_of(&self, labels: &[i32]) -> i64 {
        labels
            .iter()
            .zip(&self.comarks)
            .map(|(&x, &a)| x as i64 * a)
            .sum()
    }

    /// Reflect at the lowest-index negative label until dominant.
    pub fn to_dominant_fold(&self, mu: &Weight) -> Fold {
        let mut labels = mu.0.clone();
        let (sign, on_wall) = self.fold_in_place(&mut labels);
        Fold {
            dominant: Weight(labels),
            sign,
            on_wall,
        }
    }

    /// In-place variant of [`to_dominant_fold`](Self::to_dominant_fold); returns `(sign, on_wall)`.
    pub fn fold_in_place(&self, labels: &mut [i32]) -> (i32, bool) {
        let mut sign = 1;
        while let Some(i) = labels.iter().position(|&x| x < 0) {
            self.reflect(labels, i);
            sign = -sign;
        }
        (sign, labels.contains(&0))
    }

    /// Simple reflection s_i on Dynkin labels: μ ↦ μ − μ_i α_i.
    #[inline]
    pub fn reflect(&self, labels: &mut [i32], i: usize) {
        let c = labels[i];
        if c != 0 {
            for (x, a) in labels.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
    }

    /// −w₀(λ), the highest weight of the dual of V(λ).
    pub fn dual_weight(&self, lambda: &Weight) -> Result<Weight> {
        self.check_len(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::NonDominantInput(lambda.clone()));
        }
        let neg = Weight(lambda.0.iter().map(|x| -x).collect());
        Ok(self.to_dominant_fold(&neg).dominant)
    }

    /// Order of the Weyl group.
    pub fn weyl_group_order(&self) -> u128 {
        connected_weyl_order(&self.cartan)
    }

    /// Weyl orbit of an arbitrary weight, breadth-first from the input.
    pub fn orbit(&self, w: &[i32]) -> Vec<Vec<i32>> {
        let mut seen: HashSet<Vec<i32>> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(v) = queue.pop_front() {
            for i in 0..self.rank() {
                if v[i] != 0 {
                    let mut u = v.clone();
                    self.reflect(&mut u, i);
                    if seen.insert(u.clone()) {
                        queue.push_back(u);
                    }
                }
            }
            out.push(v);
        }
        out
    }

    /// Orbit of a dominant weight generated only downward (s_i applied where
    /// the label is positive), which visits each orbit element once.
    pub fn dominant_orbit(&self, w: &[i32]) -> Vec<Vec<i32>> {
        let mut out = vec![w.to_vec()];
        let mut seen: HashSet<Vec<i32>> = HashSet::new();
        seen.insert(w.to_vec());
        let mut head = 0;
        while head < out.len() {
            let v = out[head].clone();
            head += 1;
            for i in 0..self.rank() {
                if v[i] > 0 {
                    let mut u = v.clone();
                    self.reflect(&mut u, i);
                    if seen.insert(u.clone()) {
                        out.push(u);
                    }
                }
            }
        }
        out
    }

    /// Size of the Weyl orbit of a dominant weight, |W| / |W_λ|.
    pub fn orbit_size(&self, dominant: &[i32]) -> u128 {
        let zeros: Vec<usize> = (0..self.rank()).filter(|&i| dominant[i] == 0).collect();
        self.weyl_group_order() / self.parabolic_order(&zeros)
    }

    /// Order of the parabolic subgroup generated by the given simple reflections.
    fn parabolic_order(&self, nodes: &[usize]) -> u128 {
        let mut left: Vec<usize> = nodes.to_vec();
        let mut order = 1u128;
        while let Some(start) = left.pop() {
            // connected component of `start` inside `nodes`
            let mut comp = vec![start];
            let mut head = 0;
            while head < comp.len() {
                let v = comp[head];
                head += 1;
                left.retain(|&u| {
                    if self.cartan[v][u] != 0 {
                        comp.push(u);
                        false
                    } else {
                        true
                    }
                });
            }
            let sub: Vec<Vec<i32>> = comp
                .iter()
                .map(|&i| comp.iter().map(|&j| self.cartan[i][j]).collect())
                .collect();
            order *= connected_weyl_order(&sub);
        }
        order
    }
}

/// |W| for a connected Cartan matrix, identified by rank, number of positive
/// roots and whether it is simply laced.
fn connected_weyl_order(cartan: &[Vec<i32>]) -> u128 {
    let k = cartan.len() as u128;
    let roots = positive_roots(cartan).len() as u128;
    let laced = cartan.iter().flatten().all(|&x| x >= -1);
    let fact = |n: u128| (1..=n).product::<u128>();
    match (k, roots, laced) {
        (_, r, true) if r == k * (k + 1) / 2 => fact(k + 1),
        (_, r, true) if r == k * (k - 1) => fact(k) << (k - 1),
        (6, 36, true) => 51_840,
        (7, 63, true) => 2_903_040,
        (8, 120, true) => 696_729_600,
        (2, 6, false) => 12,
        (4, 24, false) => 1_152,
        (_, r, false) if r == k * k => fact(k) << k,
        _ => unreachable!("unclassified Cartan matrix"),
    }
}

fn diagram(t: SimpleType) -> (Vec<(usize, usize)>, Vec<Rational>) {
    let n = t.rank();
    let two = Rational::from_integer(2);
    let one = Rational::one();
    let chain = |len: usize| (0..len.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    match t.family() {
        Family::A => (chain(n), vec![two; n]),
        Family::B => {
            let mut norms = vec![two; n];
            norms[n - 1] = one;
            (chain(n), norms)
        }
        Family::C => {
            let mut norms = vec![one; n];
            norms[n - 1] = two;
            (chain(n), norms)
        }
        Family::D => {
            let mut edges = chain(n - 1);
            edges.push((n - 3, n - 1));
            (edges, vec![two; n])
        }
        Family::E => {
            // 1-3-4-5-…-n with 2 attached to 4
            let mut edges = vec![(0, 2), (1, 3)];
            edges.extend((2..n - 1).map(|i| (i, i + 1)));
            (edges, vec![two; n])
        }
        Family::F => (chain(4), vec![two, two, one, one]),
        Family::G => (chain(2), vec![Rational::new(2, 3), two]),
    }
}

fn invert(m: &[Vec<i32>]) -> Vec<Vec<Rational>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Rational> = row.iter().map(|&x| Rational::from_integer(x as i64)).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("Cartan matrix is nonsingular");
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

fn simple_to_labels(cartan: &[Vec<i32>], coords: &[i32]) -> Weight {
    let n = cartan.len();
    Weight(
        (0..n)
            .map(|j| coords.iter().zip(cartan).map(|(c, row)| c * row[j]).sum())
            .collect(),
    )
}

/// Positive roots by height, using α-strings: β + α_i is a root iff q > 0
/// where p − q = ⟨β, α_i^∨⟩ and p is the length of the downward string.
fn positive_roots(cartan: &[Vec<i32>]) -> Vec<Vec<i32>> {
    let n = cartan.len();
    let mut roots: Vec<Vec<i32>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    let mut index: HashMap<Vec<i32>, usize> =
        roots.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
    let mut head = 0;
    while head < roots.len() {
        let beta = roots[head].clone();
        head += 1;
        let labels = simple_to_labels(cartan, &beta);
        for i in 0..n {
            let mut p = 0;
            let mut down = beta.clone();
            loop {
                down[i] -= 1;
                if index.contains_key(&down) {
                    p += 1;
                } else {
                    break;
                }
            }
            let q = p - labels.0[i];
            if q > 0 {
                let mut up = beta.clone();
                up[i] += 1;
                if !index.contains_key(&up) {
                    index.insert(up.clone(), roots.len());
                    roots.push(up);
                }
            }
        }
    }
    roots
}

/// Classical count of positive roots for a type.
pub fn positive_root_count(t: SimpleType) -> usize {
    let n = t.rank();
    match t.family() {
        Family::A => n * (n + 1) / 2,
        Family::B | Family::C => n * n,
        Family::D => n * (n - 1),
        Family::E => match n {
            6 => 36,
            7 => 63,
            _ => 120,
        },
        Family::F => 24,
        Family::G => 6,
    }
}

/// All admissible types up to the given rank, one per isomorphism class.
pub fn all_types_up_to_rank(max_rank: usize) -> Vec<SimpleType> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push(SimpleType::new(Family::A, n).unwrap());
        if n >= 2 {
            out.push(SimpleType::new(Family::B, n).unwrap());
        }
        if n >= 3 {
            out.push(SimpleType::new(Family::C, n).unwrap());
        }
        if n >= 4 {
            out.push(SimpleType::new(Family::D, n).unwrap());
        }
        if (6..=8).contains(&n) {
            out.push(SimpleType::new(Family::E, n).unwrap());
        }
        if n == 4 {
            out.push(SimpleType::new(Family::F, 4).unwrap());
        }
        if n == 2 {
            out.push(SimpleType::new(Family::G, 2).unwrap());
        }
    }
    out
}

pub(crate) fn ratio_to_string(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse().unwrap())
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn a1_data() {
        let a1 = rs("A1");
        assert_eq!(a1.marks(), &[1]);
        assert_eq!(a1.highest_root(), &Weight(vec![2]));
        assert_eq!(a1.dual_coxeter(), 2);
        let w = Weight::fundamental(1, 1);
        assert_eq!(a1.inner_product(&w, &w).unwrap(), r(1, 2));
    }

    #[test]
    fn exceptional_marks_and_norms() {
        assert_eq!(rs("E8").marks(), &[2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(rs("E7").marks(), &[2, 2, 3, 4, 3, 2, 1]);
        assert_eq!(rs("E6").marks(), &[1, 2, 2, 3, 2, 1]);
        assert_eq!(rs("F4").marks(), &[2, 3, 4, 2]);
        let g2 = rs("G2");
        assert_eq!(g2.marks(), &[3, 2]);
        assert_eq!(g2.root_norms(), &[r(2, 3), r(2, 1)]);
        assert_eq!(g2.dual_coxeter(), 4);
        let theta = g2.highest_root().clone();
        assert_eq!(g2.inner_product(&Weight(vec![1, 0]), &theta).unwrap(), r(1, 1));
        assert_eq!(g2.inner_product(&Weight(vec![0, 1]), &theta).unwrap(), r(2, 1));
    }

    #[test]
    fn classical_marks() {
        assert_eq!(rs("D4").marks(), &[1, 2, 1, 1]);
        assert_eq!(rs("B3").marks(), &[1, 2, 2]);
        assert_eq!(rs("C3").marks(), &[2, 2, 1]);
        assert_eq!(rs("C3").root_norms(), &[r(1, 1), r(1, 1), r(2, 1)]);
    }

    #[test]
    fn dual_coxeter_numbers() {
        let expect = [
            ("A1", 2),
            ("A4", 5),
            ("B3", 5),
            ("C3", 4),
            ("D5", 8),
            ("E6", 12),
            ("E7", 18),
            ("E8", 30),
            ("F4", 9),
            ("G2", 4),
        ];
        for (t, h) in expect {
            assert_eq!(rs(t).dual_coxeter(), h, "{t}");
        }
    }

    #[test]
    fn invariants_for_all_types() {
        for t in all_types_up_to_rank(8) {
            let rs = RootSystem::new(t);
            let theta = rs.highest_root().clone();
            assert_eq!(rs.inner_product(&theta, &theta).unwrap(), r(2, 1), "{t}");
            assert_eq!(rs.positive_roots().len(), positive_root_count(t), "{t}");
            let rho = Weight::rho(t.rank());
            assert_eq!(
                Rational::from_integer(rs.dual_coxeter()),
                rs.inner_product(&rho, &theta).unwrap() + 1,
                "{t}"
            );
            // ⟨ω_i, α_j⟩ = δ_ij and Cartan reconstruction from the form
            for i in 0..t.rank() {
                let wi = Weight::fundamental(t.rank(), i + 1);
                for j in 0..t.rank() {
                    let aj = rs.simple_root(j);
                    let pair = rs.inner_product(&wi, &aj).unwrap() * 2 / rs.root_norms()[j];
                    assert_eq!(pair, r((i == j) as i64, 1), "{t} ω{i} α{j}");
                    let ai = rs.simple_root(i);
                    let c = rs.inner_product(&ai, &aj).unwrap() * 2 / rs.inner_product(&aj, &aj).unwrap();
                    assert_eq!(c, r(rs.cartan()[i][j] as i64, 1));
                }
            }
            if rs.weyl_group_order() <= 60_000 {
                assert_eq!(rs.orbit(&vec![1; t.rank()]).len() as u128, rs.weyl_group_order(), "{t}");
            }
        }
    }

    #[test]
    fn c2_is_b2() {
        let c2: SimpleType = "C2".parse().unwrap();
        assert_eq!(c2, "B2".parse().unwrap());
        assert!("B1".parse::<SimpleType>().is_err());
        assert!("D3".parse::<SimpleType>().is_err());
        assert!("E9".parse::<SimpleType>().is_err());
        assert!("X2".parse::<SimpleType>().is_err());
    }

    #[test]
    fn fold_examples() {
        let a1 = rs("A1");
        assert_eq!(
            a1.to_dominant_fold(&Weight(vec![-2])),
            Fold { dominant: Weight(vec![2]), sign: -1, on_wall: false }
        );
        assert_eq!(
            a1.to_dominant_fold(&Weight(vec![0])),
            Fold { dominant: Weight(vec![0]), sign: 1, on_wall: true }
        );
        let a2 = rs("A2");
        let f = a2.to_dominant_fold(&Weight(vec![1, 0]));
        assert_eq!((f.sign, f.on_wall), (1, true));
    }

    #[test]
    fn duals() {
        let a2 = rs("A2");
        assert_eq!(a2.dual_weight(&Weight(vec![1, 0])).unwrap(), Weight(vec![0, 1]));
        let b2 = rs("B2");
        assert_eq!(b2.dual_weight(&Weight(vec![3, 1])).unwrap(), Weight(vec![3, 1]));
        let e6 = rs("E6");
        assert_eq!(
            e6.dual_weight(&Weight::fundamental(6, 1)).unwrap(),
            Weight::fundamental(6, 6)
        );
        assert!(matches!(
            a2.dual_weight(&Weight(vec![-1, 0])),
            Err(Error::NonDominantInput(_))
        ));
    }

    #[test]
    fn dimension_mismatch() {
        let a2 = rs("A2");
        assert!(matches!(
            a2.inner_product(&Weight(vec![1]), &Weight(vec![1, 0])),
            Err(Error::DimensionMismatch { expected: 2, found: 1 })
        ));
    }

    #[test]
    fn weight_parsing() {
        let w: Weight = "1, 0,2".parse().unwrap();
        assert_eq!(w, Weight(vec![1, 0, 2]));
        assert_eq!(w.to_string(), "1,0,2");
        assert!("1,x".parse::<Weight>().is_err());
    }
}
