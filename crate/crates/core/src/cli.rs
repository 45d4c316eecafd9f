//! The `qpieri` command line: products, lifts, label conversion and
//! verification sweeps, as text tables or JSON.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::pieri::{check_pieri, check_tfae, pieri, special_class, sweep_pieri, verify_chi_vanishing, verify_vanishing};
use crate::qhb::{QClass, QuantumEngine};
use crate::qhp::{lambda_b_closed_form, pw_lift, pw_lift_candidates, Grassmannian, GrassmannianDesc};
use crate::rootsystem::{set_rank_ceiling, CurveDegree, LieType};
use crate::shapes::{
    barred_permutation, element_of_partition_a, element_to_shape, partition_of_element_a, pieri_b_shapes, pieri_c_shapes,
    select_gamma_reading, shape_to_element, shapes_match_oracle, verify_identifications, Gamma2Reading, Shape, TypeAPartition,
};
use crate::weyl::{parse_word, ParabolicData, WeylElement};

/// A flag variety `G/B` (`B:3`) or a Grassmannian (`IG:2:8`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Flag { ty: LieType, rank: usize },
    Grass(GrassmannianDesc),
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            [ty, rank] => {
                let ty: LieType = ty.trim().parse()?;
                let rank = rank.trim().parse::<usize>().map_err(|_| Error::InvalidSpace(format!("bad rank in {s:?}")))?;
                crate::rootsystem::RootSystem::new(ty, rank)?;
                Ok(Space::Flag { ty, rank })
            }
            _ => Ok(Space::Grass(s.parse()?)),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Flag { ty, rank } => write!(f, "{ty}{rank}/B"),
            Space::Grass(gd) => write!(f, "{}", gd.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Chevalley recursion in `G/B` plus the Peterson-Woodward lift.
    Oracle,
    /// The quantum Pieri formula for the space's type.
    Pieri,
}

#[derive(Parser, Debug)]
#[command(name = "qpieri", version, about = "Quantum Schubert calculus on classical Grassmannians")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Memo budget of the product cache in MiB.
    #[arg(long, global = true, default_value_t = 512)]
    pub cache_mb: usize,
    /// Largest rank accepted.
    #[arg(long, global = true, env = "QPIERI_MAX_RANK")]
    pub max_rank: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// σ^u ⋆ σ^v in G/B or G/P.
    Multiply(MultiplyArgs),
    /// The Peterson-Woodward lift of a degree d.
    Lift(LiftArgs),
    /// Run a verification suite; exit 1 on any mismatch.
    Verify(VerifyArgs),
    /// Show one element as word, one-line form, barred permutation and shape.
    Convert(ConvertArgs),
}

#[derive(Args, Debug)]
pub struct MultiplyArgs {
    #[arg(long)]
    pub space: String,
    /// Reduced word of u, e.g. "s1 s2".
    #[arg(long, conflicts_with = "p")]
    pub u: Option<String>,
    /// Use the special class σ^p as u.
    #[arg(long)]
    pub p: Option<usize>,
    /// Reduced word of v.
    #[arg(long, conflicts_with = "shape")]
    pub v: Option<String>,
    /// v as a shape "(a1,a2 // b1)" or partition "[a1,a2]".
    #[arg(long)]
    pub shape: Option<String>,
    /// Only print the t^d (or ⟨2ρ,λ⟩ = d) part.
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long, value_enum, default_value_t = Method::Oracle)]
    pub method: Method,
}

#[derive(Args, Debug)]
pub struct LiftArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long)]
    pub d: usize,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub space: String,
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Restrict Pieri sweeps to one p.
    #[arg(long)]
    pub p: Option<usize>,
    /// Suite bound: smallest degree (vanishing), largest degree (lift), ⟨2ρ,λ⟩ bound (reduction).
    #[arg(long)]
    pub d: Option<usize>,
    /// Random instances instead of an exhaustive sweep (reduction, ring).
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct ConvertArgs {
    #[arg(long)]
    pub space: String,
    /// Reduced word.
    #[arg(long, conflicts_with_all = ["one_line", "shape"])]
    pub w: Option<String>,
    /// Signed one-line form "(2,-1,3)".
    #[arg(long, conflicts_with = "shape")]
    pub one_line: Option<String>,
    /// Shape "(a1,a2 // b1)" or partition "[a1,a2]".
    #[arg(long)]
    pub shape: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// Pieri formula against the oracle for the space's type.
    Pieri,
    #[value(name = "pieri-C")]
    #[serde(rename = "pieri-C")]
    PieriC,
    #[value(name = "pieri-BD")]
    #[serde(rename = "pieri-BD")]
    PieriBd,
    #[value(name = "pieri-A")]
    #[serde(rename = "pieri-A")]
    PieriA,
    Tfae,
    GammaChevalley,
    Shapes,
    Reduction,
    Vanishing,
    Lift,
    Ring,
}

/// Result of one verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub space: String,
    pub checked: usize,
    pub mismatches: usize,
    /// The `Γ_2` reading that passed, for suites that choose one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma2_reading: Option<Gamma2Reading>,
    pub items: Vec<Value>,
}

impl SuiteReport {
    fn new(suite: Suite, space: &Space) -> Self {
        SuiteReport {
            suite,
            space: space.to_string(),
            checked: 0,
            mismatches: 0,
            gamma2_reading: None,
            items: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    fn item(&mut self, ok: bool, v: Value) {
        self.checked += 1;
        if !ok {
            self.mismatches += 1;
        }
        self.items.push(v);
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn grass(space: &Space) -> Result<GrassmannianDesc> {
    match space {
        Space::Grass(gd) => Ok(*gd),
        Space::Flag { .. } => Err(usage(format!("{space} is a flag variety; this needs a Grassmannian"))),
    }
}

fn flag(space: &Space) -> Result<(LieType, usize)> {
    match space {
        Space::Flag { ty, rank } => Ok((*ty, *rank)),
        Space::Grass(gd) => Err(usage(format!("{} is a Grassmannian; this needs a flag variety TYPE:rank", gd.name()))),
    }
}

fn engine_for(ty: LieType, rank: usize, cache_mb: usize) -> Result<Arc<QuantumEngine>> {
    let e = QuantumEngine::for_type(ty, rank)?;
    e.set_cache_budget_mb(cache_mb);
    Ok(Arc::new(e))
}

fn grassmannian(gd: GrassmannianDesc, cache_mb: usize) -> Result<Grassmannian> {
    Ok(Grassmannian::with_engine(gd, engine_for(gd.lie_type, gd.rank(), cache_mb)?))
}

/// Reads a label as a shape, a partition, or nothing.
fn element_from_label(gd: &GrassmannianDesc, label: &str) -> Result<WeylElement> {
    if gd.lie_type == LieType::A {
        let a: TypeAPartition = label.parse()?;
        element_of_partition_a(gd, &a)
    } else {
        shape_to_element(&Shape::parse(label, gd.n, gd.k)?, gd.lie_type)
    }
}

/// Shape or partition label of `w ∈ W^P`, where one exists.
pub fn label_of(gd: &GrassmannianDesc, w: &WeylElement) -> Option<String> {
    match gd.lie_type {
        LieType::A => partition_of_element_a(gd, w).ok().map(|a| a.to_string()),
        LieType::B | LieType::C => element_to_shape(w, gd.k).ok().map(|s| s.to_string()),
        LieType::D => None,
    }
}

fn word(ty: LieType, rank: usize, text: &str) -> Result<WeylElement> {
    WeylElement::from_word(ty, rank, &parse_word(text)?)
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    let s = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable"),
        Format::Text => text(),
    };
    // A closed pipe (e.g. `| head`) is not an error of the computation.
    let _ = writeln!(out, "{s}");
    Ok(())
}

fn cmd_multiply(cli: &Cli, a: &MultiplyArgs, out: &mut dyn Write) -> Result<i32> {
    let space: Space = a.space.parse()?;
    match space {
        Space::Flag { ty, rank } => {
            if a.p.is_some() || a.shape.is_some() || a.method == Method::Pieri {
                return Err(usage("--p, --shape and --method pieri need a Grassmannian"));
            }
            let e = engine_for(ty, rank, cli.cache_mb)?;
            let u = word(ty, rank, a.u.as_deref().unwrap_or(""))?;
            let v = word(ty, rank, a.v.as_deref().unwrap_or(""))?;
            let full = e.quantum_multiply(&u, &v)?;
            let mut prod = QClass::zero(ty, rank);
            let keep = |l: &CurveDegree| a.d.is_none_or(|d| e.root_system().two_rho_pairing(l) == d as i64);
            prod.add_class(&full, 1, None, keep);
            let value = json!({"space": space.to_string(), "u": u.word_string(), "v": v.word_string(), "terms": prod});
            emit(out, cli.format, &value, || prod.render())?;
        }
        Space::Grass(gd) => {
            let g = grassmannian(gd, cli.cache_mb)?;
            let u = match (a.p, &a.u) {
                (Some(p), _) => special_class(&gd, p)?.element,
                (None, Some(w)) => word(gd.lie_type, gd.rank(), w)?,
                (None, None) => return Err(usage("give --u or --p")),
            };
            let v = match (&a.shape, &a.v) {
                (Some(s), _) => element_from_label(&gd, s)?,
                (None, Some(w)) => word(gd.lie_type, gd.rank(), w)?,
                (None, None) => WeylElement::identity(gd.lie_type, gd.rank()),
            };
            let (prod, case) = match a.method {
                Method::Oracle => (g.quantum_multiply(&u, &v)?, None),
                Method::Pieri => {
                    let p = a.p.ok_or_else(|| usage("--method pieri needs --p"))?;
                    let r = pieri(&g, p, &v)?;
                    (r.to_tclass(), Some(r.theorem_case))
                }
            };
            let rows: Vec<Value> = prod
                .records()
                .into_iter()
                .filter(|r| a.d.is_none_or(|d| r.d == d))
                .map(|r| json!({"d": r.d, "w": r.w, "word": r.word, "label": label_of(&gd, &r.w), "coeff": r.coeff}))
                .collect();
            let value = json!({
                "space": gd.name(),
                "u": u.word_string(),
                "v": v.word_string(),
                "theorem_case": case,
                "terms": rows,
            });
            emit(out, cli.format, &value, || {
                let mut s = format!("{}: σ[{}] ⋆ σ[{}]\n", gd.name(), u.word_string(), v.word_string());
                if let Some(c) = &case {
                    s += &format!("case: {c}\n");
                }
                s += &format!("{:>3}  {:>8}  {:<28} {}\n", "d", "coeff", "w", "label");
                for r in &rows {
                    s += &format!(
                        "{:>3}  {:>8}  {:<28} {}\n",
                        r["d"],
                        r["coeff"].to_string().trim_matches('"'),
                        r["word"].as_str().unwrap_or(""),
                        r["label"].as_str().unwrap_or("")
                    );
                }
                if rows.is_empty() {
                    s += "0\n";
                }
                s.trim_end().to_string()
            })?;
        }
    }
    Ok(0)
}

fn cmd_lift(cli: &Cli, a: &LiftArgs, out: &mut dyn Write) -> Result<i32> {
    let gd = grass(&a.space.parse()?)?;
    if a.d == 0 {
        return Err(usage("--d must be at least 1"));
    }
    let lift = pw_lift(&gd, a.d)?;
    let value = json!({
        "space": gd.name(),
        "d": lift.d,
        "lambda_b": lift.lambda_b.to_vec(),
        "delta_p_prime": lift.delta_p_prime,
        "omega_product": lift.omega_product,
        "omega_word": lift.omega_word(),
    });
    emit(out, cli.format, &value, || {
        format!(
            "{} d={}\nλ_B     = {:?}\nΔ_P'    = {:?}\nω_Pω_P' = {}",
            gd.name(),
            lift.d,
            lift.lambda_b.to_vec(),
            lift.delta_p_prime,
            lift.omega_word()
        )
    })?;
    Ok(0)
}

fn cmd_convert(cli: &Cli, a: &ConvertArgs, out: &mut dyn Write) -> Result<i32> {
    let space: Space = a.space.parse()?;
    let (ty, rank) = match space {
        Space::Flag { ty, rank } => (ty, rank),
        Space::Grass(gd) => (gd.lie_type, gd.rank()),
    };
    let w = match (&a.w, &a.one_line, &a.shape) {
        (Some(t), _, _) => word(ty, rank, t)?,
        (_, Some(t), _) => WeylElement::parse(ty, rank, t)?,
        (_, _, Some(t)) => element_from_label(&grass(&space)?, t)?,
        _ => return Err(usage("give --w, --one-line or --shape")),
    };
    let barred = matches!(ty, LieType::B | LieType::C).then(|| barred_permutation(rank, &w.reduced_word()));
    let label = match space {
        Space::Grass(gd) => {
            if !gd.parabolic().is_min_rep(&w) {
                return Err(Error::NotMinimal(w.word_string()));
            }
            label_of(&gd, &w)
        }
        Space::Flag { .. } => None,
    };
    let value = json!({
        "space": space.to_string(),
        "word": w.word_string(),
        "one_line": w,
        "length": w.length(),
        "barred": barred,
        "label": label,
    });
    emit(out, cli.format, &value, || {
        let mut s = format!("word      {}\none-line  {}\nlength    {}", w.word_string(), w.one_line_string(), w.length());
        if let Some(b) = &barred {
            let b: Vec<String> = b.iter().map(|x| if *x < 0 { format!("{}̄", -x) } else { x.to_string() }).collect();
            s += &format!("\nbarred    {}", b.join(" "));
        }
        if let Some(l) = &label {
            s += &format!("\nlabel     {l}");
        }
        s
    })?;
    Ok(0)
}

/// Pieri formula against the oracle for every `(p, v)`; type C also
/// checks that each quantum coefficient is a power of two.
pub fn suite_pieri(g: &Grassmannian, suite: Suite, p: Option<usize>) -> Result<SuiteReport> {
    let gd = g.desc();
    let want = match suite {
        Suite::PieriC => Some(vec![LieType::C]),
        Suite::PieriBd => Some(vec![LieType::B, LieType::D]),
        Suite::PieriA => Some(vec![LieType::A]),
        _ => None,
    };
    if want.is_some_and(|w| !w.contains(&gd.lie_type)) {
        return Err(usage(format!("suite {suite:?} does not apply to {}", gd.name())));
    }
    let reports = match p {
        None => sweep_pieri(g)?,
        Some(p) => {
            let reps = g.parabolic().min_coset_reps();
            reps.par_iter().map(|v| check_pieri(g, p, v)).collect::<Result<Vec<_>>>()?
        }
    };
    let mut rep = SuiteReport::new(suite, &Space::Grass(*gd));
    for r in reports {
        let pow2 = gd.lie_type != LieType::C || r.lhs.records().iter().filter(|t| t.d > 0).all(|t| t.coeff.log2_exact().is_some());
        let degree_at_most_one = gd.lie_type != LieType::A || r.rhs.max_degree().unwrap_or(0) <= 1;
        let mut v = serde_json::to_value(&r).expect("serializable");
        v["powers_of_two"] = json!(pow2);
        rep.item(r.matched && pow2 && degree_at_most_one, v);
    }
    Ok(rep)
}

pub fn suite_tfae(g: &Grassmannian) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Tfae, &Space::Grass(*g.desc()));
    for v in g.parabolic().min_coset_reps() {
        let t = check_tfae(g, v)?;
        rep.item(t.all_equal(), json!({"v": v.word_string(), "a": t.a, "b": t.b, "c": t.c}));
    }
    Ok(rep)
}

pub fn suite_gamma(g: &Grassmannian) -> Result<SuiteReport> {
    let (chosen, reports) = select_gamma_reading(g)?;
    let mut rep = SuiteReport::new(Suite::GammaChevalley, &Space::Grass(*g.desc()));
    rep.gamma2_reading = chosen;
    let best = reports.iter().min_by_key(|r| r.mismatches.len()).expect("two readings");
    rep.checked = best.checked;
    rep.mismatches = if chosen.is_some() { 0 } else { best.mismatches.len() };
    rep.items = reports.iter().map(|r| serde_json::to_value(r).expect("serializable")).collect();
    Ok(rep)
}

/// Shape bijection, shape-map identifications (`k < n`) and the shape
/// forms of the Pieri rules against the oracle.
pub fn suite_shapes(g: &Grassmannian, reading: Gamma2Reading) -> Result<SuiteReport> {
    let gd = *g.desc();
    if !matches!(gd.lie_type, LieType::B | LieType::C) || gd.k >= gd.n {
        return Err(usage(format!("shape suite needs IG(k,2n) or OG(k,2n+1) with k < n, got {}", gd.name())));
    }
    let mut rep = SuiteReport::new(Suite::Shapes, &Space::Grass(gd));
    let ident = verify_identifications(gd.n, gd.k)?;
    for (name, tally) in &ident.checks {
        rep.checked += tally.passed + tally.failed.len();
        rep.mismatches += tally.failed.len();
        rep.items.push(json!({"check": name, "passed": tally.passed, "failed": tally.failed}));
    }
    let shapes = Shape::all(gd.n, gd.k);
    let jobs: Vec<(usize, &Shape)> = (1..=gd.k).flat_map(|p| shapes.iter().map(move |a| (p, a))).collect();
    let results: Vec<Result<(bool, Value)>> = jobs
        .par_iter()
        .map(|&(p, a)| {
            let r = match gd.lie_type {
                LieType::C => pieri_c_shapes(g, p, a)?,
                _ => pieri_b_shapes(g, p, a, reading)?,
            };
            let ok = r.consistent && shapes_match_oracle(g, &r)?;
            Ok((ok, serde_json::to_value(&r).expect("serializable")))
        })
        .collect();
    for r in results {
        let (ok, v) = r?;
        rep.item(ok, v);
    }
    if gd.lie_type == LieType::B {
        rep.gamma2_reading = Some(reading);
    }
    Ok(rep)
}

/// Reduction identities for one engine over the given `(u, v, w, λ)`.
pub fn suite_reduction(e: &QuantumEngine, instances: &[(WeylElement, WeylElement, WeylElement, CurveDegree)]) -> Result<SuiteReport> {
    let rs = e.root_system();
    let space = Space::Flag {
        ty: rs.lie_type(),
        rank: rs.rank(),
    };
    let found: Vec<Result<Vec<(bool, bool, Value)>>> = instances
        .par_iter()
        .map(|(u, v, w, l)| {
            (1..=rs.rank())
                .map(|a| {
                    let r = e.check_reduction_identities(u, v, w, l, a)?;
                    Ok((r.applicable, r.holds, serde_json::to_value(&r).expect("serializable")))
                })
                .collect()
        })
        .collect();
    let mut rep = SuiteReport::new(Suite::Reduction, &space);
    for batch in found {
        for (applicable, holds, v) in batch? {
            if applicable {
                rep.checked += 1;
            }
            if !holds {
                rep.mismatches += 1;
                rep.items.push(v);
            }
        }
    }
    Ok(rep)
}

/// All `(u, v, w, λ)` with `λ = 0` or effective with `⟨2ρ,λ⟩ ≤ bound` and
/// `ℓ(u) + ℓ(v) = ℓ(w) + ⟨2ρ,λ⟩`.
pub fn reduction_instances(e: &QuantumEngine, bound: i64) -> Vec<(WeylElement, WeylElement, WeylElement, CurveDegree)> {
    let rs = e.root_system();
    let all = ParabolicData::borel(rs.lie_type(), rs.rank()).min_coset_reps().to_vec();
    let mut degrees = vec![CurveDegree::zero(rs.rank())];
    degrees.extend(e.effective_degrees(bound));
    let mut out = Vec::new();
    for u in &all {
        for v in &all {
            for l in &degrees {
                let len = (u.length() + v.length()) as i64 - rs.two_rho_pairing(l);
                for w in all.iter().filter(|w| w.length() as i64 == len) {
                    out.push((*u, *v, *w, *l));
                }
            }
        }
    }
    out
}

pub fn suite_vanishing(g: &Grassmannian, d_min: Option<usize>, p: Option<usize>) -> Result<SuiteReport> {
    let gd = *g.desc();
    let d_min = d_min.unwrap_or(match gd.lie_type {
        LieType::B | LieType::D => 3,
        _ => 2,
    });
    let top = if gd.lie_type == LieType::A { gd.n + 1 - gd.k } else { gd.k };
    let mut rep = SuiteReport::new(Suite::Vanishing, &Space::Grass(gd));
    for p in (1..=top).filter(|&q| p.is_none_or(|p| p == q)) {
        let r = verify_vanishing(g, p, d_min)?;
        rep.checked += r.checked;
        rep.mismatches += r.counterexamples.len();
        rep.items.push(serde_json::to_value(&r).expect("serializable"));
    }
    Ok(rep)
}

pub fn suite_chi_vanishing(e: &QuantumEngine) -> Result<SuiteReport> {
    let rs = e.root_system();
    let mut rep = SuiteReport::new(
        Suite::Vanishing,
        &Space::Flag {
            ty: rs.lie_type(),
            rank: rs.rank(),
        },
    );
    let bad = verify_chi_vanishing(e)?;
    rep.checked = 1;
    rep.mismatches = bad.len();
    rep.items = bad.iter().map(|b| json!({"u": b.0, "v": b.1, "w": b.2, "lambda": b.3.to_vec()})).collect();
    Ok(rep)
}

/// Searched lift against the closed form for `1 ≤ d ≤ d_max`.
pub fn suite_lift(gd: &GrassmannianDesc, d_max: usize) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Lift, &Space::Grass(*gd));
    for d in 1..=d_max {
        let searched = pw_lift(gd, d)?.lambda_b;
        let candidates = pw_lift_candidates(gd, d)?;
        let closed = lambda_b_closed_form(gd, d);
        let ok = searched == closed && candidates == vec![searched];
        rep.item(
            ok,
            json!({"d": d, "searched": searched.to_vec(), "closed_form": closed.to_vec(), "candidates": candidates.len()}),
        );
    }
    Ok(rep)
}

/// Commutativity and associativity of `QH*(G/B)`: exhaustive, or on
/// `samples` random pairs and triples.
pub fn suite_ring(e: &QuantumEngine, samples: Option<usize>, seed: u64) -> Result<SuiteReport> {
    let rs = e.root_system();
    let (ty, rank) = (rs.lie_type(), rs.rank());
    let all = ParabolicData::borel(ty, rank).min_coset_reps().to_vec();
    let mut rep = SuiteReport::new(Suite::Ring, &Space::Flag { ty, rank });
    let (pairs, triples): (Vec<[WeylElement; 2]>, Vec<[WeylElement; 3]>) = match samples {
        None => (
            all.iter().flat_map(|u| all.iter().map(move |v| [*u, *v])).collect(),
            all_triples(&all),
        ),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pick = || *all.choose(&mut rng).expect("nonempty");
            let pairs = (0..s).map(|_| [pick(), pick()]).collect();
            let triples = (0..s).map(|_| [pick(), pick(), pick()]).collect();
            (pairs, triples)
        }
    };
    let comm: Vec<Result<(bool, Value)>> = pairs
        .par_iter()
        .map(|[u, v]| {
            let ok = *e.quantum_multiply(u, v)? == *e.quantum_multiply(v, u)?;
            Ok((ok, json!({"law": "commutative", "u": u.word_string(), "v": v.word_string()})))
        })
        .collect();
    let assoc: Vec<Result<(bool, Value)>> = triples
        .par_iter()
        .map(|[u, v, w]| {
            let left = e.multiply_classes(&*e.quantum_multiply(u, v)?, &QClass::basis(*w))?;
            let right = e.multiply_classes(&QClass::basis(*u), &*e.quantum_multiply(v, w)?)?;
            Ok((left == right, json!({"law": "associative", "u": u.word_string(), "v": v.word_string(), "w": w.word_string()})))
        })
        .collect();
    for r in comm.into_iter().chain(assoc) {
        let (ok, v) = r?;
        rep.checked += 1;
        if !ok {
            rep.mismatches += 1;
            rep.items.push(v);
        }
    }
    Ok(rep)
}

fn all_triples(all: &[WeylElement]) -> Vec<[WeylElement; 3]> {
    let mut out = Vec::with_capacity(all.len().pow(3));
    for u in all {
        for v in all {
            for w in all {
                out.push([*u, *v, *w]);
            }
        }
    }
    out
}

/// Random instances of the reduction suite at the engine's rank.
pub fn random_reduction_instances(
    e: &QuantumEngine,
    count: usize,
    bound: i64,
    seed: u64,
) -> Vec<(WeylElement, WeylElement, WeylElement, CurveDegree)> {
    let rs = e.root_system();
    let all = ParabolicData::borel(rs.lie_type(), rs.rank()).min_coset_reps().to_vec();
    let mut degrees = vec![CurveDegree::zero(rs.rank())];
    degrees.extend(e.effective_degrees(bound));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (u, v) = (*all.choose(&mut rng).expect("nonempty"), *all.choose(&mut rng).expect("nonempty"));
        let l = *degrees.choose(&mut rng).expect("nonempty");
        let len = (u.length() + v.length()) as i64 - rs.two_rho_pairing(&l);
        let ws: Vec<&WeylElement> = all.iter().filter(|w| w.length() as i64 == len).collect();
        if let Some(w) = ws.choose(&mut rng) {
            out.push((u, v, **w, l));
        }
    }
    out
}

pub fn run_suite(space: &Space, a: &VerifyArgs, cache_mb: usize) -> Result<SuiteReport> {
    match a.suite {
        Suite::Pieri | Suite::PieriC | Suite::PieriBd | Suite::PieriA => {
            suite_pieri(&grassmannian(grass(space)?, cache_mb)?, a.suite, a.p)
        }
        Suite::Tfae => {
            let gd = grass(space)?;
            if gd.lie_type != LieType::C {
                return Err(usage("tfae applies to IG(k,2n)"));
            }
            suite_tfae(&grassmannian(gd, cache_mb)?)
        }
        Suite::GammaChevalley => suite_gamma(&grassmannian(grass(space)?, cache_mb)?),
        Suite::Shapes => {
            let g = grassmannian(grass(space)?, cache_mb)?;
            let reading = if g.desc().lie_type == LieType::B && g.desc().k >= 1 {
                select_gamma_reading(&g)?.0.unwrap_or(Gamma2Reading::BottomPart)
            } else {
                Gamma2Reading::BottomPart
            };
            suite_shapes(&g, reading)
        }
        Suite::Reduction => {
            let (ty, rank) = flag(space)?;
            let e = engine_for(ty, rank, cache_mb)?;
            let bound = a.d.unwrap_or(8) as i64;
            let inst = match a.samples {
                None => reduction_instances(&e, bound),
                Some(s) => random_reduction_instances(&e, s, bound, a.seed),
            };
            suite_reduction(&e, &inst)
        }
        Suite::Vanishing => match space {
            Space::Grass(gd) => suite_vanishing(&grassmannian(*gd, cache_mb)?, a.d, a.p),
            Space::Flag { ty, rank } => suite_chi_vanishing(&*engine_for(*ty, *rank, cache_mb)?),
        },
        Suite::Lift => {
            let gd = grass(space)?;
            suite_lift(&gd, a.d.unwrap_or(3 * gd.k))
        }
        Suite::Ring => {
            let (ty, rank) = flag(space)?;
            suite_ring(&*engine_for(ty, rank, cache_mb)?, a.samples, a.seed)
        }
    }
}

fn cmd_verify(cli: &Cli, a: &VerifyArgs, out: &mut dyn Write) -> Result<i32> {
    let space: Space = a.space.parse()?;
    let rep = run_suite(&space, a, cli.cache_mb)?;
    emit(out, cli.format, &rep, || {
        let mut s = format!(
            "{} {:?}: {} checked, {} mismatches{}",
            rep.space,
            rep.suite,
            rep.checked,
            rep.mismatches,
            rep.gamma2_reading.map(|r| format!(", Γ2 reading {r:?}")).unwrap_or_default()
        );
        if !rep.passed() {
            for v in rep.items.iter().filter(|v| v.get("matched") != Some(&json!(true))).take(20) {
                s += &format!("\n  {v}");
            }
        }
        s
    })?;
    Ok(if rep.passed() { 0 } else { 1 })
}

/// Runs the command line; returns the process exit code
/// (0 success, 1 mismatch, 2 usage error).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    if let Some(r) = cli.max_rank {
        set_rank_ceiling(r);
    }
    if let Some(w) = cli.workers {
        // Fails only if the global pool already exists, e.g. on a second
        // call in the same process; the existing pool is then reused.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(w.max(1)).build_global();
    }
    let result = match &cli.command {
        Command::Multiply(a) => cmd_multiply(&cli, a, out),
        Command::Lift(a) => cmd_lift(&cli, a, out),
        Command::Verify(a) => cmd_verify(&cli, a, out),
        Command::Convert(a) => cmd_convert(&cli, a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
