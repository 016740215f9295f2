//! Command-line front end. `run` returns the process exit status:
//! 0 success, 1 computation error, 2 usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::config::{Config, TOL_INDEX, TOL_ROUNDING, TOL_TRACE};
use crate::depth::{
    check_depth_bounds, depth, enumerate_b_k, floor_u32, lp_depth_lower_bound, lp_epsilon_max,
};
use crate::error::{Error, Result};
use crate::lie::{ratio_to_string, RootSystem, SimpleType, Weight};
use crate::rep::RepTheory;
use crate::tower::{
    bratteli_tower, minimal_power_index, trace_of_identity, trace_weights, verify_tower_properties_with,
};
use crate::verlinde::{check_level, fuse, fusion_matrices, smatrix_verlinde_oracle};

#[derive(Parser, Debug)]
#[command(name = "verlinde", version, about = "Verlinde fusion rules, depth and tower data for simple Lie types")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalOpts {
    /// TOML file with character_cap, weyl_cap, cache_path, float_tolerances
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Maximum number of dominant weights / weights per character
    #[arg(long, global = true)]
    character_cap: Option<usize>,
    /// Maximum Weyl group order for the S-matrix
    #[arg(long, global = true)]
    weyl_cap: Option<usize>,
    /// Character cache file (overrides the config file, not VERLINDE_CACHE)
    #[arg(long, global = true)]
    cache_path: Option<PathBuf>,
    /// Do not read or write the character cache
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root system data
    Roots {
        #[command(subcommand)]
        what: RootsCmd,
    },
    /// Decompose V(λ) ⊗ V(μ)
    Tensor {
        ty: SimpleType,
        #[arg(allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(allow_hyphen_values = true)]
        mu: Weight,
        /// Cross-check against full character multiplication
        #[arg(long)]
        oracle: bool,
    },
    /// Level-l fusion product of two weights in D_l
    Fusion {
        ty: SimpleType,
        #[arg(allow_negative_numbers = true)]
        level: i64,
        #[arg(allow_hyphen_values = true)]
        lambda: Weight,
        #[arg(allow_hyphen_values = true)]
        mu: Weight,
    },
    /// All fusion coefficients at level l
    FusionTable {
        ty: SimpleType,
        #[arg(allow_negative_numbers = true)]
        level: i64,
    },
    /// Modular S-matrix and Verlinde-formula cross-check
    Smatrix {
        ty: SimpleType,
        #[arg(allow_negative_numbers = true)]
        level: i64,
    },
    /// Depth d(l) with its bounds
    Depth {
        ty: SimpleType,
        #[arg(allow_negative_numbers = true)]
        level: i64,
        /// Grow classical tensor powers instead of the level-l image
        #[arg(long)]
        classical: bool,
    },
    /// Dominant weights with label sum ≤ k
    Bk { ty: SimpleType, k: u32 },
    /// Exact LP maximum of ε over Π_h(W^⊗k)
    Lpmax { ty: SimpleType, k: u32 },
    /// Bratteli diagram of the tower
    Tower {
        ty: SimpleType,
        #[arg(allow_negative_numbers = true)]
        level: i64,
        #[arg(long, default_value_t = 6)]
        floors: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Markov trace weights at one floor
    Trace {
        ty: SimpleType,
        #[arg(allow_negative_numbers = true)]
        level: i64,
        #[arg(long)]
        floor: usize,
    },
    /// Run depth bounds, tower checks and oracle comparisons over a range
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        types: Vec<SimpleType>,
        /// Inclusive range `a..b`
        #[arg(long, value_parser = parse_range)]
        levels: (u32, u32),
        /// Floors for the tower checks
        #[arg(long, default_value_t = 10)]
        floors: usize,
    },
}

#[derive(Subcommand, Debug)]
enum RootsCmd {
    Info { ty: SimpleType },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

fn parse_range(s: &str) -> std::result::Result<(u32, u32), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected `a..b`, got `{s}`"))?;
    let a: u32 = a.trim().parse().map_err(|_| format!("bad range start `{a}`"))?;
    let b: u32 = b.trim().parse().map_err(|_| format!("bad range end `{b}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

enum Output {
    Json(Value),
    Text(String),
}

/// Rounds for stable float output.
fn r12(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

struct Session {
    cfg: Config,
    cache: Option<PathBuf>,
}

impl Session {
    fn rep(&self, t: SimpleType) -> RepTheory {
        let rt = RepTheory::with_cap(RootSystem::new(t), self.cfg.character_cap);
        if let Some(p) = &self.cache {
            if p.exists() {
                if let Err(e) = rt.load_fundamental_cache(p) {
                    eprintln!("warning: ignoring character cache {}: {e}", p.display());
                }
            }
        }
        rt
    }

    fn persist(&self, rt: &RepTheory) {
        if let Some(p) = &self.cache {
            if let Some(dir) = p.parent() {
                let _ = std::fs::create_dir_all(dir);
            }
            if let Err(e) = rt.save_fundamental_cache(p) {
                eprintln!("warning: could not write character cache {}: {e}", p.display());
            }
        }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let session = match session(&cli.global) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 2;
        }
    };
    match execute(&session, cli.command) {
        Ok((output, ok)) => {
            let _ = match output {
                Output::Json(v) => writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json")),
                Output::Text(s) => write!(out, "{s}"),
            };
            if ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn session(g: &GlobalOpts) -> Result<Session> {
    let mut cfg = match &g.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(c) = g.character_cap {
        cfg.character_cap = c;
    }
    if let Some(c) = g.weyl_cap {
        cfg.weyl_cap = c;
    }
    if let Some(p) = &g.cache_path {
        cfg.cache_path = Some(p.clone());
    }
    cfg.validate()?;
    let cache = if g.no_cache { None } else { cfg.resolve_cache_path() };
    Ok(Session { cfg, cache })
}

fn terms_json(d: &crate::rep::Decomposition) -> Value {
    let m: BTreeMap<String, u64> = d.terms.iter().map(|(w, c)| (w.to_string(), *c)).collect();
    json!(m)
}

fn execute(s: &Session, cmd: Command) -> Result<(Output, bool)> {
    let out = match cmd {
        Command::Roots { what: RootsCmd::Info { ty } } => {
            let rs = RootSystem::new(ty);
            json!({
                "type": ty.to_string(),
                "rank": rs.rank(),
                "cartan": rs.cartan(),
                "root_norms": rs.root_norms().iter().map(ratio_to_string).collect::<Vec<_>>(),
                "highest_root": rs.highest_root().to_string(),
                "marks": rs.marks(),
                "comarks": rs.comarks(),
                "dual_coxeter": rs.dual_coxeter(),
                "positive_roots": rs.positive_roots().len(),
                "weyl_group_order": rs.weyl_group_order().to_string(),
                "reference": "θ = Σ c_i α_i with (θ, θ) = 2; h∨ = 1 + (ρ, θ)",
            })
        }
        Command::Tensor { ty, lambda, mu, oracle } => {
            let rt = s.rep(ty);
            let d = rt.tensor_decompose(&lambda, &mu)?;
            let dim = rt.decomposition_dimension(&d)?;
            let expect = rt.weyl_dimension(&lambda)? * rt.weyl_dimension(&mu)?;
            if dim != expect {
                return Err(Error::Internal(format!("dimension {dim} ≠ {expect}")));
            }
            let mut v = json!({
                "type": ty.to_string(),
                "lambda": lambda.to_string(),
                "mu": mu.to_string(),
                "terms": terms_json(&d),
                "dimension": dim.to_string(),
                "reference": "Racah–Speiser: V(λ) ⊗ V(μ) = Σ_ν m_ν(μ) sgn(w) V(w(λ + ν + ρ) − ρ)",
            });
            if oracle {
                let o = rt.tensor_oracle(&lambda, &mu)?;
                if o != d {
                    return Err(Error::Internal("Racah–Speiser and character product disagree".into()));
                }
                v["oracle_agrees"] = json!(true);
            }
            s.persist(&rt);
            v
        }
        Command::Fusion { ty, level, lambda, mu } => {
            let l = check_level(level)?;
            let rt = s.rep(ty);
            let d = fuse(&rt, l, &lambda, &mu)?;
            s.persist(&rt);
            json!({
                "type": ty.to_string(),
                "level": l,
                "lambda": lambda.to_string(),
                "mu": mu.to_string(),
                "terms": terms_json(&d),
                "reference": "Kac–Walton: fold λ + ν + ρ into the level-(l + h∨) alcove",
            })
        }
        Command::FusionTable { ty, level } => {
            let l = check_level(level)?;
            let rt = s.rep(ty);
            let ring = fusion_matrices(&rt, l)?;
            s.persist(&rt);
            let mut v = ring.to_json();
            v["warnings"] = json!(ring.warnings());
            v["reference"] = json!("N_{λμ}^ν = multiplicity of V_ν in V_λ ⊗_l V_μ");
            v
        }
        Command::Smatrix { ty, level } => {
            let l = check_level(level)?;
            let rs = RootSystem::new(ty);
            let o = smatrix_verlinde_oracle(&rs, l, s.cfg.weyl_cap, s.cfg.tolerance(TOL_ROUNDING))?;
            let rt = s.rep(ty);
            let ring = fusion_matrices(&rt, l)?;
            s.persist(&rt);
            let m = ring.size();
            let agrees = (0..m).all(|i| {
                (0..m).all(|j| (0..m).all(|k| o.n[i][j][k] == ring.coefficient(i, j, k) as i64))
            });
            json!({
                "type": ty.to_string(),
                "level": l,
                "basis": ring.basis().weights().iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "s": o.s.iter().map(|row| row.iter().map(|z| [r12(z.re), r12(z.im)]).collect::<Vec<_>>()).collect::<Vec<_>>(),
                "quantum_dimensions": (0..m).map(|i| r12(o.quantum_dimension(i))).collect::<Vec<_>>(),
                "rounding_residual": o.residual,
                "unitarity_defect": o.unitarity_defect,
                "verlinde_agrees": agrees,
                "reference": "N_{ij}^k = Σ_c S_ic S_jc conj(S_kc) / S_0c",
            })
        }
        Command::Depth { ty, level, classical } => {
            let rt = s.rep(ty);
            let r = depth(&rt, level, classical)?;
            s.persist(&rt);
            let check = check_depth_bounds(rt.root_system(), r.level, r.depth);
            let mut v = serde_json::to_value(&r).expect("json");
            v["bounds_hold"] = json!(check.pass());
            v["lp_lower"] = json!(lp_depth_lower_bound(rt.root_system(), r.level)?);
            v["reference"] = json!("d(l) = min{k ≥ 0 : D_l ⊆ Π_h(W^⊗k)}, W = V(0) ⊕ ⊕_i V(ω_i)");
            v
        }
        Command::Bk { ty, k } => {
            let rs = RootSystem::new(ty);
            let b = enumerate_b_k(&rs, k);
            json!({
                "type": ty.to_string(),
                "k": k,
                "count": b.len(),
                "weights": b.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "reference": "B_k = {λ dominant : ε(λ) ≤ k}",
            })
        }
        Command::Lpmax { ty, k } => {
            let rs = RootSystem::new(ty);
            let v = lp_epsilon_max(&rs, k)?;
            json!({
                "type": ty.to_string(),
                "k": k,
                "value": if v.is_integer() { v.to_integer().to_string() } else { v.to_string() },
                "floor": floor_u32(&v),
                "reference": "max ε(Σx_iω_i − Σy_iα_i), x, y ≥ 0, Σx_i ≤ k, y·A ≤ x",
            })
        }
        Command::Tower { ty, level, floors, format } => {
            let l = check_level(level)?;
            let rt = s.rep(ty);
            let ring = fusion_matrices(&rt, l)?;
            s.persist(&rt);
            let t = bratteli_tower(&ring, floors)?;
            match format {
                Format::Dot => return Ok((Output::Text(t.to_dot()), true)),
                Format::Json => {
                    let mut v = t.to_json();
                    v["warnings"] = json!(ring.warnings());
                    v["reference"] = json!("t_ij = dim Hom(V_i ⊗ W, V_j); A_k = End(W^⊗k)");
                    v
                }
            }
        }
        Command::Trace { ty, level, floor } => {
            let l = check_level(level)?;
            let rt = s.rep(ty);
            let ring = fusion_matrices(&rt, l)?;
            s.persist(&rt);
            let m = ring.size();
            let t = bratteli_tower(&ring, floor.max(m).max(1))?;
            let tr = trace_weights(&t)?;
            let f = &t.floors()[floor];
            json!({
                "type": ty.to_string(),
                "level": l,
                "floor": floor,
                "pf_eigenvalue": r12(tr.pf_eigenvalue),
                "pf_vector": tr.pf_vector.iter().map(|&x| r12(x)).collect::<Vec<_>>(),
                "support": f.support.iter().map(|&i| ring.basis().weights()[i].to_string()).collect::<Vec<_>>(),
                "dims": f.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "weights": tr.floor_weights[floor].iter().map(|x| format!("{x:.15e}")).collect::<Vec<_>>(),
                "identity_trace": r12(trace_of_identity(&t, &tr, floor)),
                "reference": "tr(minimal projection in block i at floor k) = v_i / β^k, T v = β v",
            })
        }
        Command::Verify { types, levels, floors } => {
            if types.is_empty() {
                return Err(Error::Config("no types given".into()));
            }
            let (v, ok) = verify(s, &types, levels, floors)?;
            return Ok((Output::Json(v), ok));
        }
    };
    Ok((Output::Json(out), true))
}

fn verify(s: &Session, types: &[SimpleType], (a, b): (u32, u32), floors: usize) -> Result<(Value, bool)> {
    let mut results = Vec::new();
    let mut all = true;
    let mut push = |ty: SimpleType, l: u32, name: &str, pass: Option<bool>, detail: String| {
        all &= pass.unwrap_or(true);
        results.push(json!({"type": ty.to_string(), "level": l, "check": name, "pass": pass, "detail": detail}));
    };
    for &ty in types {
        let rt = s.rep(ty);
        let rs = rt.root_system().clone();
        for l in a.max(1)..=b {
            let r = depth(&rt, l as i64, false)?;
            let c = check_depth_bounds(&rs, l, r.depth);
            push(ty, l, "depth lower bound", Some(c.lower_ok), format!("{} ≤ {}", c.lower, r.depth));
            push(ty, l, "depth upper bound", Some(c.upper_ok), format!("{} ≤ {}", r.depth, c.upper));
            let lp = lp_depth_lower_bound(&rs, l)?;
            push(ty, l, "depth ≥ LP bound", Some(lp <= r.depth), format!("{lp} ≤ {}", r.depth));

            let ring = fusion_matrices(&rt, l)?;
            let rep = verify_tower_properties_with(&ring, floors, s.cfg.tolerance(TOL_TRACE))?;
            push(
                ty,
                l,
                "tower stationary from d(l)",
                Some(rep.stationary_from == Some(r.depth as usize)),
                format!("{:?} vs {}", rep.stationary_from, r.depth),
            );
            for c in &rep.checks {
                push(ty, l, &c.name, Some(c.pass), c.detail.clone());
            }
            let (_, phi) = minimal_power_index(&ring, 0)?;
            push(ty, l, "φ(V_0) = 0", Some(phi == 0), String::new());

            if rs.weyl_group_order() <= s.cfg.weyl_cap as u128 {
                let o = smatrix_verlinde_oracle(&rs, l, s.cfg.weyl_cap, s.cfg.tolerance(TOL_ROUNDING))?;
                let m = ring.size();
                let agrees = (0..m).all(|i| {
                    (0..m).all(|j| (0..m).all(|k| o.n[i][j][k] == ring.coefficient(i, j, k) as i64))
                });
                push(ty, l, "Kac–Walton = Verlinde formula", Some(agrees), format!("residual {:.2e}", o.residual));
                let qdim: f64 = 1.0
                    + ring
                        .fundamental_classes()
                        .iter()
                        .filter_map(|c| c.class.map(|k| c.sign as f64 * o.quantum_dimension(k)))
                        .sum::<f64>();
                let beta = rep.pf_eigenvalue.unwrap_or(f64::NAN);
                let tol = s.cfg.tolerance(TOL_INDEX);
                push(ty, l, "β = qdim [W]", Some((beta - qdim).abs() < tol), format!("β = {beta:.10}, qdim = {qdim:.10}"));
            } else {
                let detail = format!("skipped: |W| = {} exceeds weyl_cap", rs.weyl_group_order());
                push(ty, l, "S-matrix oracle", None, detail);
            }
        }
        s.persist(&rt);
    }
    Ok((
        json!({
            "types": types.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "levels": [a, b],
            "results": results,
            "all_pass": all,
            "reference": "⌈l/β⌉ ≤ d(l) ≤ ⌊l/c⌋ per type; T symmetric, irreducible; Markov trace",
        }),
        all,
    ))
}
