//! One line per acceptance criterion, written straight to stdout so it shows
//! up without `--nocapture`.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use verlinde_core::depth::{check_depth_bounds, depth, lp_epsilon_max, min_mark};
use verlinde_core::lie::all_types_up_to_rank;
use verlinde_core::simplex::rat;
use verlinde_core::tower::{perron_frobenius, stationary_matrix, verify_tower_properties_with};
use verlinde_core::verlinde::{enumerate_level_weights, fusion_matrices, smatrix_verlinde_oracle};
use verlinde_core::{Family, Rational, RepTheory, RootSystem, SimpleType, Weight};

const CRIT1_BUDGET: Duration = Duration::from_secs(60);
const CRIT2_BUDGET: Duration = Duration::from_secs(600);
const CRIT3_BUDGET: Duration = Duration::from_secs(1);
const CRIT4_BUDGET: Duration = Duration::from_secs(1);
const CRIT5_BUDGET: Duration = Duration::from_secs(120);
const CRIT6_BUDGET: Duration = Duration::from_secs(300);
const ROUNDING_TOLERANCE: f64 = 1e-6;
const PF_CLOSED_FORM_TOLERANCE: f64 = 1e-9;
const TRACE_TOLERANCE: f64 = 1e-9;
const TRACE_FLOORS: usize = 10;
const INDEX_TOLERANCE: f64 = 1e-5;
const WEYL_CAP: usize = 1_000_000;

fn report(n: u32, name: &str, pass: bool, detail: &str) {
    let line = format!(
        "criterion {n:>2} [{name}]: {} {detail}\n",
        if pass { "PASS" } else { "FAIL" }
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    assert!(pass, "criterion {n} failed: {detail}");
}

fn ty(s: &str) -> SimpleType {
    s.parse().unwrap()
}

#[test]
fn criterion_01_depth_exactness() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for t in ["A1", "A2", "A3", "B2", "C3"] {
        let rt = RepTheory::for_type(ty(t));
        for l in 1..=5 {
            let d = depth(&rt, l, false).unwrap().depth;
            if d != l as u32 {
                bad.push(format!("{t} l={l} d={d}"));
            }
        }
    }
    let el = start.elapsed();
    report(1, "d(l) = l for A1 A2 A3 B2 C3, l ≤ 5", bad.is_empty() && el < CRIT1_BUDGET, &format!("{bad:?} in {el:.2?}"));
}

#[test]
fn criterion_02_depth_bounds() {
    let start = Instant::now();
    let mut rows = Vec::new();
    let mut ok = true;
    for (t, lmax) in [("B3", 4), ("B4", 4), ("D4", 4), ("G2", 5), ("F4", 3), ("E6", 2)] {
        let rt = RepTheory::for_type(ty(t));
        for l in 1..=lmax {
            let d = depth(&rt, l, false).unwrap().depth;
            let c = check_depth_bounds(rt.root_system(), l as u32, d);
            ok &= c.pass();
            rows.push(format!("{t}/{l}:{}≤{d}≤{}", c.lower, c.upper));
        }
    }
    let el = start.elapsed();
    report(2, "bound table B3 B4 D4 G2 F4 E6", ok && el < CRIT2_BUDGET, &format!("{} in {el:.2?}", rows.join(" ")));
}

/// The published β values next to the exact LP optimum.
#[test]
fn criterion_03_lp_beta_table() {
    let start = Instant::now();
    let half = |p: i64| BigRational::new(p.into(), 2.into());
    let expected = |t: SimpleType| -> BigRational {
        let n = t.rank() as i64;
        match (t.family(), n) {
            (Family::A, _) | (Family::C, _) => rat(1),
            (Family::B, _) => half(n),
            (Family::D, _) => half(n - 1),
            (Family::E, 6) => rat(3),
            (Family::E, 7) => rat(5),
            (Family::E, _) => half(15),
            (Family::F, _) => half(5),
            (Family::G, _) => half(3),
        }
    };
    let mut mismatches = Vec::new();
    let mut matched = 0;
    for t in all_types_up_to_rank(8) {
        if t.family() == Family::B && t.rank() == 2 {
            // B2 = C2 has β = 1 under either name
            continue;
        }
        let got = lp_epsilon_max(&RootSystem::new(t), 1).unwrap();
        if got == expected(t) {
            matched += 1;
        } else {
            mismatches.push(format!("{t}: LP {got} vs table {}", expected(t)));
        }
    }
    let el = start.elapsed();
    report(
        3,
        "exact LP max equals the β table",
        mismatches.is_empty() && el < CRIT3_BUDGET,
        &format!("{matched} types agree; mismatches {mismatches:?} in {el:.2?}"),
    );
}

#[test]
fn criterion_04_min_marks() {
    let start = Instant::now();
    let bad: Vec<String> = all_types_up_to_rank(8)
        .into_iter()
        .filter(|&t| {
            let want = if t == ty("E8") { 2 } else { 1 };
            min_mark(&RootSystem::new(t)) != Rational::from_integer(want)
        })
        .map(|t| t.to_string())
        .collect();
    let el = start.elapsed();
    report(4, "min mark 1, E8 2, rank ≤ 8", bad.is_empty() && el < CRIT4_BUDGET, &format!("{bad:?} in {el:.2?}"));
}

#[test]
fn criterion_05_fusion_oracle() {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut bad = Vec::new();
    for (t, lmax) in [("A1", 6), ("A2", 4), ("B2", 4), ("G2", 3)] {
        let rt = RepTheory::for_type(ty(t));
        for l in 1..=lmax {
            let ring = fusion_matrices(&rt, l).unwrap();
            let o = smatrix_verlinde_oracle(rt.root_system(), l, WEYL_CAP, ROUNDING_TOLERANCE).unwrap();
            worst = worst.max(o.residual);
            let m = ring.size();
            let same = (0..m).all(|i| (0..m).all(|j| (0..m).all(|k| o.n[i][j][k] == ring.coefficient(i, j, k) as i64)));
            if !same {
                bad.push(format!("{t}/{l}"));
            }
        }
    }
    let el = start.elapsed();
    report(
        5,
        "Kac–Walton = Verlinde formula",
        bad.is_empty() && worst < ROUNDING_TOLERANCE && el < CRIT5_BUDGET,
        &format!("{bad:?} max residual {worst:.2e} in {el:.2?}"),
    );
}

#[test]
fn criterion_06_tensor_oracle() {
    let start = Instant::now();
    let mut cases = 0;
    let mut bad = Vec::new();
    for t in all_types_up_to_rank(3) {
        let rt = RepTheory::for_type(t);
        let rs = rt.root_system().clone();
        let weights = verlinde_core::depth::enumerate_b_k(&rs, 3);
        for a in &weights {
            for b in &weights {
                cases += 1;
                let rsp = rt.tensor_decompose(a, b).unwrap();
                let ora = rt.tensor_oracle(a, b).unwrap();
                let dim = rt.decomposition_dimension(&rsp).unwrap();
                let expect = rt.weyl_dimension(a).unwrap() * rt.weyl_dimension(b).unwrap();
                if rsp != ora || dim != expect {
                    bad.push(format!("{t} {a} ⊗ {b}"));
                }
            }
        }
    }
    let el = start.elapsed();
    report(
        6,
        "Racah–Speiser = character product, rank ≤ 3, ε ≤ 3",
        bad.is_empty() && el < CRIT6_BUDGET,
        &format!("{cases} cases, {bad:?} in {el:.2?}"),
    );
}

#[test]
fn criterion_07_a1_closed_forms() {
    let rt = RepTheory::for_type(ty("A1"));
    let mut bad = Vec::new();
    let mut worst: f64 = 0.0;
    for l in 1..=6u32 {
        let ring = fusion_matrices(&rt, l).unwrap();
        let lu = l as usize;
        for a in 0..=lu {
            for b in 0..=lu {
                for c in 0..=lu {
                    let expect = (c >= a.abs_diff(b) && c <= (a + b).min(2 * lu - a - b) && (a + b + c) % 2 == 0) as u32;
                    if ring.coefficient(a, b, c) != expect {
                        bad.push(format!("l={l} {a}⊗{b}→{c}"));
                    }
                }
            }
        }
        let (beta, _) = perron_frobenius(&stationary_matrix(&ring).unwrap()).unwrap();
        let closed = 1.0 + 2.0 * (std::f64::consts::PI / (l as f64 + 2.0)).cos();
        worst = worst.max((beta - closed).abs());
    }
    report(
        7,
        "A1 truncated Clebsch–Gordan and β = 1 + 2cos(π/(l+2))",
        bad.is_empty() && worst < PF_CLOSED_FORM_TOLERANCE,
        &format!("{bad:?} max |β − closed form| {worst:.2e}"),
    );
}

#[test]
fn criterion_08_tower_properties() {
    let mut failures = Vec::new();
    let mut count = 0;
    for t in ["A1", "A2", "B2", "G2"] {
        let rt = RepTheory::for_type(ty(t));
        for l in 1..=4 {
            let ring = fusion_matrices(&rt, l).unwrap();
            let rep = verify_tower_properties_with(&ring, TRACE_FLOORS, TRACE_TOLERANCE).unwrap();
            count += 1;
            for c in rep.checks.iter().filter(|c| !c.pass) {
                failures.push(format!("{t}/{l}: {} ({})", c.name, c.detail));
            }
        }
    }
    report(8, "tower checks A1 A2 B2 G2, l ≤ 4", failures.is_empty(), &format!("{count} towers, {failures:?}"));
}

#[test]
fn criterion_09_index_consistency() {
    let mut worst: f64 = 0.0;
    let mut rows = BTreeMap::new();
    for (t, lmax) in [("A1", 6), ("A2", 4), ("B2", 4), ("G2", 4), ("A3", 3), ("B3", 3), ("C3", 3), ("D4", 2), ("F4", 2), ("E6", 2)] {
        let rt = RepTheory::for_type(ty(t));
        for l in 1..=lmax {
            let ring = fusion_matrices(&rt, l).unwrap();
            let (beta, _) = perron_frobenius(&stationary_matrix(&ring).unwrap()).unwrap();
            let o = smatrix_verlinde_oracle(rt.root_system(), l, WEYL_CAP, ROUNDING_TOLERANCE).unwrap();
            let qdim = 1.0
                + ring
                    .fundamental_classes()
                    .iter()
                    .filter_map(|c| c.class.map(|k| c.sign as f64 * o.quantum_dimension(k)))
                    .sum::<f64>();
            worst = worst.max((beta - qdim).abs());
            rows.insert(format!("{t}/{l}"), format!("{beta:.6}"));
        }
    }
    report(
        9,
        "β = 1 + Σ qdim of surviving fundamentals",
        worst < INDEX_TOLERANCE,
        &format!("{} rings, max |β − qdim W| {worst:.2e}", rows.len()),
    );
}

#[test]
fn criterion_10_level_weight_counts() {
    let mut bad = Vec::new();
    let mut cases = 0;
    for t in all_types_up_to_rank(4) {
        let rs = RootSystem::new(t);
        let n = rs.rank();
        for l in 0..=5i32 {
            // every label vector in the box [0, l]^n
            let mut brute = 0usize;
            let total = (l as usize + 1).pow(n as u32);
            for code in 0..total {
                let mut c = code;
                let mut w = Vec::with_capacity(n);
                for _ in 0..n {
                    w.push((c % (l as usize + 1)) as i32);
                    c /= l as usize + 1;
                }
                let level: i64 = w.iter().zip(rs.comarks()).map(|(&x, &a)| x as i64 * a).sum();
                if level <= l as i64 {
                    brute += 1;
                }
            }
            let got = enumerate_level_weights(&rs, l as i64).unwrap();
            cases += 1;
            let all_in = got.weights().iter().all(|w: &Weight| w.0.iter().all(|&x| (0..=l).contains(&x)));
            if got.len() != brute || !all_in {
                bad.push(format!("{t}/{l}: {} vs {brute}", got.len()));
            }
        }
    }
    report(10, "|D_l| by box enumeration, rank ≤ 4, l ≤ 5", bad.is_empty(), &format!("{cases} cases, {bad:?}"));
}
