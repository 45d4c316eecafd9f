//! Grassmannians `G/P` with one quantum parameter `t`, computed through the
//! Peterson-Woodward lift: `N_{u,v}^{w,d} = N_{u,v}^{w ω_P ω_{P'}, λ_B}` in
//! `QH*(G/B)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use parking_lot::Mutex;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::qhb::{QuantumEngine, Truncation};
use crate::rootsystem::{CurveDegree, LieType, RootSystem};
use crate::weyl::{check_longest_characterization, ParabolicData, WeylElement};

/// A Grassmannian `G/P` with `Δ_P = Δ ∖ {α_k}`.
///
/// `n` is the parameter in the usual names: `IG(k,2n)` is `C_n`,
/// `OG(k,2n+1)` is `B_n`, `OG(k,2n+2)` is `D_{n+1}` and `Gr(k,n+1)` is `A_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GrassmannianDesc {
    pub lie_type: LieType,
    pub n: usize,
    pub k: usize,
}

impl GrassmannianDesc {
    pub fn new(lie_type: LieType, n: usize, k: usize) -> Result<Self> {
        let bad = |why: &str| Err(Error::InvalidSpace(format!("{lie_type} n={n} k={k}: {why}")));
        if n == 0 || k == 0 {
            return bad("n and k must be positive");
        }
        match lie_type {
            LieType::A | LieType::B | LieType::C if k > n => return bad("need k ≤ n"),
            LieType::D if n < 2 || k + 1 > n => return bad("need k ≤ n−1"),
            _ => {}
        }
        Ok(GrassmannianDesc { lie_type, n, k })
    }

    /// `IG(k, 2n)`.
    pub fn ig(k: usize, dim: usize) -> Result<Self> {
        if !dim.is_multiple_of(2) {
            return Err(Error::InvalidSpace(format!("IG needs an even dimension, got {dim}")));
        }
        GrassmannianDesc::new(LieType::C, dim / 2, k)
    }

    /// `OG(k, N)`: `B` for odd `N`, `D` for even `N`. `OG(n+1, 2n+2)` is
    /// replaced by the isomorphic `OG(n, 2n+1)`.
    pub fn og(k: usize, dim: usize) -> Result<Self> {
        if dim % 2 == 1 {
            return GrassmannianDesc::new(LieType::B, dim / 2, k);
        }
        let n = dim / 2 - 1;
        if k == n + 1 && n >= 1 {
            return GrassmannianDesc::new(LieType::B, n, n);
        }
        if k == n {
            return Err(Error::InvalidSpace(format!(
                "OG({k},{dim}) is not a maximal-parabolic quotient; use OG({},{dim})",
                n + 1
            )));
        }
        GrassmannianDesc::new(LieType::D, n, k)
    }

    /// `Gr(k, N)`.
    pub fn gr(k: usize, dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidSpace(format!("Gr needs dimension ≥ 2, got {dim}")));
        }
        GrassmannianDesc::new(LieType::A, dim - 1, k)
    }

    /// Rank of the root system (`n + 1` for `D`).
    pub fn rank(&self) -> usize {
        match self.lie_type {
            LieType::D => self.n + 1,
            _ => self.n,
        }
    }

    /// Dimension of the ambient vector space.
    pub fn ambient(&self) -> usize {
        match self.lie_type {
            LieType::A => self.n + 1,
            LieType::B => 2 * self.n + 1,
            LieType::C => 2 * self.n,
            LieType::D => 2 * self.n + 2,
        }
    }

    pub fn name(&self) -> String {
        let prefix = match self.lie_type {
            LieType::A => "Gr",
            LieType::C => "IG",
            LieType::B | LieType::D => "OG",
        };
        format!("{prefix}({},{})", self.k, self.ambient())
    }

    /// `OG(n, 2n+1)`, where `c_p(S*) = 2σ^u`.
    pub fn is_odd_maximal(&self) -> bool {
        self.lie_type == LieType::B && self.k == self.n
    }

    /// Cohomological degree of `t`.
    pub fn deg_t(&self) -> usize {
        let (n, k) = (self.n, self.k);
        match self.lie_type {
            LieType::A => n + 1,
            LieType::C if k < n => 2 * n + 1 - k,
            LieType::C => n + 1,
            LieType::B if k < n => 2 * n - k,
            LieType::B => 2 * n,
            LieType::D => 2 * n + 1 - k,
        }
    }

    pub fn root_system(&self) -> Result<RootSystem> {
        RootSystem::new(self.lie_type, self.rank())
    }

    pub fn parabolic(&self) -> ParabolicData {
        ParabolicData::maximal(self.lie_type, self.rank(), self.k).expect("validated k")
    }
}

impl fmt::Display for GrassmannianDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for GrassmannianDesc {
    type Err = Error;

    /// `IG:k:2n`, `OGodd:k:2n+1`, `OGeven:k:2n+2`, `OG:k:N`, `Gr:k:n+1`
    /// (or `A:k:n+1`).
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').map(str::trim).collect();
        let [kind, k, dim] = parts.as_slice() else {
            return Err(Error::InvalidSpace(format!("expected KIND:k:N, got {s:?}")));
        };
        let num = |x: &str| x.parse::<usize>().map_err(|_| Error::InvalidSpace(format!("bad number {x:?} in {s:?}")));
        let (k, dim) = (num(k)?, num(dim)?);
        match kind.to_ascii_lowercase().as_str() {
            "ig" => GrassmannianDesc::ig(k, dim),
            "og" => GrassmannianDesc::og(k, dim),
            "ogodd" if dim % 2 == 1 => GrassmannianDesc::og(k, dim),
            "ogeven" if dim % 2 == 0 => GrassmannianDesc::og(k, dim),
            "ogodd" | "ogeven" => Err(Error::InvalidSpace(format!("parity of {dim} does not match {kind}"))),
            "gr" | "a" => GrassmannianDesc::gr(k, dim),
            _ => Err(Error::InvalidSpace(format!("unknown space kind {kind:?}"))),
        }
    }
}

/// The data of the Peterson-Woodward lift of `dα_k∨ + Q_P∨`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PWLift {
    pub d: usize,
    pub lambda_b: CurveDegree,
    pub delta_p_prime: Vec<usize>,
    pub omega_product: WeylElement,
}

impl PWLift {
    pub fn omega_word(&self) -> String {
        self.omega_product.word_string()
    }
}

fn degree(lambda: &[i64]) -> CurveDegree {
    CurveDegree::from_coords(lambda).expect("lift coordinates fit")
}

fn satisfies_lift_condition(rs: &RootSystem, pd: &ParabolicData, lambda: &CurveDegree) -> bool {
    pd.positive_roots(rs).all(|g| matches!(rs.pairing_root(g, lambda), 0 | -1))
}

/// Connected components of `Δ_P` in the Dynkin diagram.
fn components(rs: &RootSystem, pd: &ParabolicData) -> Vec<Vec<usize>> {
    let mut seen = vec![false; rs.rank()];
    let mut out = Vec::new();
    for start in pd.delta_p() {
        if seen[start - 1] {
            continue;
        }
        let mut comp = vec![start];
        seen[start - 1] = true;
        let mut i = 0;
        while i < comp.len() {
            let a = comp[i];
            for b in pd.delta_p() {
                if !seen[b - 1] && rs.cartan()[a - 1][b - 1] != 0 {
                    seen[b - 1] = true;
                    comp.push(b);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Walk `dα_k∨` into the closed anti-fundamental alcove of the affine Weyl
/// group of `Δ_P`: reflect positive pairings away, then reflect in the
/// affine wall `⟨θ, λ⟩ = −1` of each component's highest root `θ`.
fn alcove_walk(rs: &RootSystem, pd: &ParabolicData, k: usize, d: usize) -> Option<CurveDegree> {
    let rank = rs.rank();
    let mut lambda = vec![0i64; rank];
    lambda[k - 1] = d as i64;
    let highest: Vec<_> = components(rs, pd)
        .into_iter()
        .map(|comp| {
            *pd.positive_roots(rs)
                .filter(|r| comp.iter().any(|&j| r.simple[j - 1] != 0))
                .max_by_key(|r| r.coords(rank).iter().map(|&c| c as i64).sum::<i64>())
                .expect("component has a root")
        })
        .collect();
    let pair = |lam: &[i64], beta: &[i16]| -> i64 {
        rs.root_pairing(beta[..rank].iter().map(|&c| c as i64), &degree(lam))
    };
    for _ in 0..10_000 {
        let mut moved = false;
        for i in pd.delta_p() {
            let c = pair(&lambda, &rs.simple_root(i).simple);
            if c > 0 {
                lambda[i - 1] -= c;
                moved = true;
            }
        }
        if moved {
            continue;
        }
        for theta in &highest {
            let c = pair(&lambda, &theta.simple);
            if c <= -2 {
                for (j, slot) in lambda.iter_mut().enumerate() {
                    *slot -= (c + 1) * theta.coroot.get(j + 1);
                }
                moved = true;
            }
        }
        if !moved {
            let cand = degree(&lambda);
            return satisfies_lift_condition(rs, pd, &cand).then_some(cand);
        }
    }
    None
}

/// Solves `A x = b` over the rationals for a small invertible integer matrix;
/// `None` if the solution is not integral.
fn solve_integral(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<i64>> {
    let m = b.len();
    let mut rows: Vec<Vec<i128>> = a
        .iter()
        .zip(b)
        .map(|(r, &y)| r.iter().map(|&x| x as i128).chain(std::iter::once(y as i128)).collect())
        .collect();
    for col in 0..m {
        let piv = (col..m).find(|&r| rows[r][col] != 0)?;
        rows.swap(col, piv);
        for r in 0..m {
            if r != col && rows[r][col] != 0 {
                let (p, q) = (rows[col][col], rows[r][col]);
                for c in 0..=m {
                    rows[r][c] = rows[r][c] * p - rows[col][c] * q;
                }
            }
        }
    }
    (0..m)
        .map(|i| {
            let (num, den) = (rows[i][m], rows[i][i]);
            (num % den == 0).then(|| (num / den) as i64)
        })
        .collect()
}

/// Every `λ ∈ dα_k∨ + Q_P∨` with `⟨γ, λ⟩ ∈ {0, −1}` for all `γ ∈ R_P^+`,
/// found by trying all `2^{|Δ_P|}` pairing patterns on `Δ_P` and solving.
pub fn pw_lift_candidates(gd: &GrassmannianDesc, d: usize) -> Result<Vec<CurveDegree>> {
    let rs = gd.root_system()?;
    let pd = gd.parabolic();
    let dp = pd.delta_p();
    let cart = rs.cartan();
    let k = gd.k;
    let matrix: Vec<Vec<i64>> = dp.iter().map(|&i| dp.iter().map(|&j| cart[i - 1][j - 1]).collect()).collect();
    let mut out = Vec::new();
    for pattern in 0u32..(1 << dp.len()) {
        let rhs: Vec<i64> = dp
            .iter()
            .enumerate()
            .map(|(idx, &i)| -((pattern >> idx) as i64 & 1) - d as i64 * cart[i - 1][k - 1])
            .collect();
        let Some(x) = solve_integral(&matrix, &rhs) else { continue };
        let mut lambda = vec![0i64; rs.rank()];
        lambda[k - 1] = d as i64;
        for (&j, v) in dp.iter().zip(x) {
            lambda[j - 1] = v;
        }
        let cand = degree(&lambda);
        if satisfies_lift_condition(&rs, &pd, &cand) {
            out.push(cand);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The lift `(λ_B, Δ_{P'}, ω_P ω_{P'})` of degree `d ≥ 1`.
pub fn pw_lift(gd: &GrassmannianDesc, d: usize) -> Result<PWLift> {
    let rs = gd.root_system()?;
    pw_lift_with(&rs, gd, d)
}

fn pw_lift_with(rs: &RootSystem, gd: &GrassmannianDesc, d: usize) -> Result<PWLift> {
    if d == 0 {
        return Err(Error::InvalidSpace("the lift needs d ≥ 1".into()));
    }
    let pd = gd.parabolic();
    let lambda_b = match alcove_walk(rs, &pd, gd.k, d) {
        Some(l) => l,
        None => {
            let found = pw_lift_candidates(gd, d)?;
            assert_eq!(found.len(), 1, "λ_B must be unique for {gd} d={d}: {found:?}");
            found[0]
        }
    };
    let delta_p_prime: Vec<usize> = pd.delta_p().into_iter().filter(|&i| rs.simple_pairing(i, &lambda_b) == 0).collect();
    let pd_prime = ParabolicData::new(gd.lie_type, gd.rank(), &delta_p_prime)?;
    let omega_product = pd.longest_element().compose(&pd_prime.longest_element());
    debug_assert!(check_longest_characterization(&omega_product, &pd, &pd_prime).unwrap_or(false));
    Ok(PWLift {
        d,
        lambda_b,
        delta_p_prime,
        omega_product,
    })
}

fn add_scaled(lambda: &mut [i64], j: usize, c: i64) {
    lambda[j - 1] += c;
}

/// `mΣ_{j<k} jα_j∨ + Σ_{j<r} jα_{k−r+j}∨` for `D = mk + r`, `1 ≤ r ≤ k`.
fn lower_tail(lambda: &mut [i64], k: usize, big_d: usize) {
    let (m, r) = ((big_d - 1) / k, (big_d - 1) % k + 1);
    for j in 1..k {
        add_scaled(lambda, j, (m * j) as i64);
    }
    for j in 1..r {
        add_scaled(lambda, k - r + j, j as i64);
    }
}

/// `λ_B` from its closed form for each Grassmannian family.
pub fn lambda_b_closed_form(gd: &GrassmannianDesc, d: usize) -> CurveDegree {
    let (n, k) = (gd.n, gd.k);
    let mut lambda = vec![0i64; gd.rank()];
    match gd.lie_type {
        LieType::C => {
            lower_tail(&mut lambda, k, d);
            for j in k..=n {
                add_scaled(&mut lambda, j, d as i64);
            }
        }
        LieType::B | LieType::D => {
            let big_d = if k < n { d } else { 2 * d };
            lower_tail(&mut lambda, k, big_d);
            add_scaled(&mut lambda, k, d as i64);
            if k < n {
                let half = (d / 2) as i64;
                for j in k + 1..n {
                    add_scaled(&mut lambda, j, 2 * half);
                }
                add_scaled(&mut lambda, n, half);
                if gd.lie_type == LieType::D {
                    add_scaled(&mut lambda, n + 1, half);
                }
            }
        }
        LieType::A => {
            lower_tail(&mut lambda, k, d);
            add_scaled(&mut lambda, k, d as i64);
            let top = n + 1 - k;
            let (m2, r2) = ((d - 1) / top, (d - 1) % top + 1);
            for j in 1..=n - k {
                add_scaled(&mut lambda, n + 1 - j, (m2 * j) as i64);
            }
            for j in 1..r2 {
                add_scaled(&mut lambda, k + r2 - j, j as i64);
            }
        }
    }
    CurveDegree::from_coords(&lambda).expect("closed form fits")
}

/// A class of `QH*(G/P)`: coefficients of `t^d σ^w`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TClass {
    terms: FxHashMap<(WeylElement, usize), Coeff>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TTermRecord {
    pub d: usize,
    pub w: WeylElement,
    pub word: String,
    pub coeff: Coeff,
}

impl TClass {
    pub fn get(&self, w: &WeylElement, d: usize) -> Coeff {
        self.terms.get(&(*w, d)).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, w: WeylElement, d: usize, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((w, d)).or_default();
        slot.add_assign(c);
        if slot.is_zero() {
            self.terms.remove(&(w, d));
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(|&(_, d)| d).max()
    }

    /// Terms sorted by `(d, ℓ(w), one-line)`.
    pub fn sorted_terms(&self) -> Vec<(WeylElement, usize, Coeff)> {
        let mut out: Vec<_> = self.terms.iter().map(|(&(w, d), c)| (w, d, c.clone())).collect();
        out.sort_by(|a, b| (a.1, a.0.length(), a.0.one_line()).cmp(&(b.1, b.0.length(), b.0.one_line())));
        out
    }

    pub fn degree_part(&self, d: usize) -> BTreeMap<WeylElement, Coeff> {
        self.terms.iter().filter(|(&(_, e), _)| e == d).map(|(&(w, _), c)| (w, c.clone())).collect()
    }

    pub fn records(&self) -> Vec<TTermRecord> {
        self.sorted_terms()
            .into_iter()
            .map(|(w, d, coeff)| TTermRecord {
                d,
                w,
                word: w.word_string(),
                coeff,
            })
            .collect()
    }

    pub fn render(&self) -> String {
        if self.is_empty() {
            return "0".into();
        }
        self.sorted_terms()
            .iter()
            .map(|(w, d, c)| {
                let t = match d {
                    0 => String::new(),
                    1 => "t·".into(),
                    _ => format!("t^{d}·"),
                };
                let c = if c.is_one() { String::new() } else { format!("{c}·") };
                format!("{c}{t}σ[{w}]")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Serialize for TClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.records().serialize(s)
    }
}

/// `QH*(G/P)` of one Grassmannian, backed by a `G/B` engine.
pub struct Grassmannian {
    desc: GrassmannianDesc,
    engine: Arc<QuantumEngine>,
    pd: ParabolicData,
    lifts: Mutex<FxHashMap<usize, PWLift>>,
}

impl Grassmannian {
    pub fn new(desc: GrassmannianDesc) -> Result<Self> {
        let engine = Arc::new(QuantumEngine::new(desc.root_system()?));
        Ok(Grassmannian::with_engine(desc, engine))
    }

    /// Shares an existing `G/B` engine (and its caches).
    pub fn with_engine(desc: GrassmannianDesc, engine: Arc<QuantumEngine>) -> Self {
        assert_eq!(engine.root_system().lie_type(), desc.lie_type);
        assert_eq!(engine.root_system().rank(), desc.rank());
        Grassmannian {
            desc,
            pd: desc.parabolic(),
            engine,
            lifts: Mutex::new(FxHashMap::default()),
        }
    }

    pub fn desc(&self) -> &GrassmannianDesc {
        &self.desc
    }

    pub fn engine(&self) -> &Arc<QuantumEngine> {
        &self.engine
    }

    pub fn parabolic(&self) -> &ParabolicData {
        &self.pd
    }

    pub fn element(&self, word: &[usize]) -> Result<WeylElement> {
        self.engine.element(word)
    }

    pub fn lift(&self, d: usize) -> Result<PWLift> {
        if let Some(l) = self.lifts.lock().get(&d) {
            return Ok(l.clone());
        }
        let l = pw_lift_with(self.engine.root_system(), &self.desc, d)?;
        self.lifts.lock().insert(d, l.clone());
        Ok(l)
    }

    fn check_min(&self, w: &WeylElement) -> Result<()> {
        if w.lie_type() != self.desc.lie_type || w.rank() != self.desc.rank() {
            return Err(Error::TypeMismatch(format!("{w:?} is not in the Weyl group of {}", self.desc)));
        }
        if !self.pd.is_min_rep(w) {
            return Err(Error::NotMinimal(w.word_string()));
        }
        Ok(())
    }

    /// `N_{u,v}^{w,d}` for `u, v, w ∈ W^P`.
    pub fn gw_invariant(&self, u: &WeylElement, v: &WeylElement, w: &WeylElement, d: usize) -> Result<Coeff> {
        for x in [u, v, w] {
            self.check_min(x)?;
        }
        if w.length() + d * self.desc.deg_t() != u.length() + v.length() {
            return Ok(Coeff::zero());
        }
        if d == 0 {
            return self.engine.gw_invariant(u, v, w, &CurveDegree::zero(self.desc.rank()));
        }
        let lift = self.lift(d)?;
        self.engine.gw_invariant(u, v, &w.compose(&lift.omega_product), &lift.lambda_b)
    }

    /// `σ^u ⋆ σ^v` in `QH*(G/P)`, all degrees allowed by the dimension
    /// constraint.
    pub fn quantum_multiply(&self, u: &WeylElement, v: &WeylElement) -> Result<TClass> {
        self.check_min(u)?;
        self.check_min(v)?;
        let total = u.length() + v.length();
        let deg_t = self.desc.deg_t();
        let d_max = total / deg_t;
        let rank = self.desc.rank();
        let mut lifts = Vec::new();
        let mut ceiling = CurveDegree::zero(rank);
        for d in 1..=d_max {
            let l = self.lift(d)?;
            ceiling = ceiling.componentwise_max(&l.lambda_b);
            lifts.push(l);
        }
        let prod = self.engine.multiply_truncated(u, v, &Truncation::ceiling(ceiling))?;
        let mut out = TClass::default();
        let zero = CurveDegree::zero(rank);
        for (w, lambda, c) in prod.iter() {
            if *lambda == zero && self.pd.is_min_rep(w) {
                out.add(*w, 0, c);
            }
        }
        for l in &lifts {
            for w in self.pd.min_coset_reps_of_length(total - l.d * deg_t) {
                out.add(*w, l.d, &prod.get(&w.compose(&l.omega_product), &l.lambda_b));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn desc(s: &str) -> GrassmannianDesc {
        s.parse().unwrap()
    }

    #[test]
    fn parses_spaces() {
        assert_eq!(desc("IG:2:8"), GrassmannianDesc::new(LieType::C, 4, 2).unwrap());
        assert_eq!(desc("OGodd:2:7"), GrassmannianDesc::new(LieType::B, 3, 2).unwrap());
        assert_eq!(desc("OGeven:2:8"), GrassmannianDesc::new(LieType::D, 3, 2).unwrap());
        assert_eq!(desc("OGeven:4:8"), GrassmannianDesc::new(LieType::B, 3, 3).unwrap());
        assert_eq!(desc("Gr:2:5"), GrassmannianDesc::new(LieType::A, 4, 2).unwrap());
        assert!("OGeven:3:8".parse::<GrassmannianDesc>().is_err());
        assert!("OGodd:2:8".parse::<GrassmannianDesc>().is_err());
        assert!("IG:5:8".parse::<GrassmannianDesc>().is_err());
        assert!("IG:2".parse::<GrassmannianDesc>().is_err());
        assert_eq!(desc("OG:3:7").name(), "OG(3,7)");
    }

    #[test]
    fn deg_t_matches_lift_dimension() {
        for s in ["IG:1:6", "IG:2:6", "IG:3:6", "OG:1:7", "OG:2:7", "OG:3:7", "OG:1:8", "OG:2:8", "Gr:1:4", "Gr:2:4", "Gr:2:5"] {
            let gd = desc(s);
            let l = pw_lift(&gd, 1).unwrap();
            let rs = gd.root_system().unwrap();
            let dim = rs.two_rho_pairing(&l.lambda_b) as usize + l.omega_product.length();
            assert_eq!(dim, gd.deg_t(), "{s}");
        }
    }

    #[test]
    fn degree_one_lifts() {
        // IG(k, 2n): λ_B = Σ_{j≥k} α_j∨ and ω_Pω_{P'} = s_1⋯s_{k−1}.
        let gd = desc("IG:3:10");
        let l = pw_lift(&gd, 1).unwrap();
        assert_eq!(l.lambda_b.to_vec(), vec![0, 0, 1, 1, 1]);
        assert_eq!(l.omega_product, WeylElement::from_word(LieType::C, 5, &[1, 2]).unwrap());
        assert_eq!(l.delta_p_prime, vec![1, 4, 5]);
        // OG(n, 2n+1): λ_B = α_{n−1}∨ + α_n∨.
        let l = pw_lift(&desc("OG:4:9"), 1).unwrap();
        assert_eq!(l.lambda_b.to_vec(), vec![0, 0, 1, 1]);
        assert_eq!(l.omega_product, WeylElement::from_word(LieType::B, 4, &[2, 3, 1, 2]).unwrap());
        // Gr(k, n+1): λ_B = α_k∨, ω_Pω_{P'} = s_n⋯s_{k+1}s_1⋯s_{k−1}.
        let l = pw_lift(&desc("Gr:2:5"), 1).unwrap();
        assert_eq!(l.lambda_b.to_vec(), vec![0, 1, 0, 0]);
        assert_eq!(l.omega_product, WeylElement::from_word(LieType::A, 4, &[4, 3, 1]).unwrap());
    }

    #[test]
    fn walk_agrees_with_exhaustive_search() {
        for s in ["IG:2:8", "OG:2:7", "OG:3:7", "OG:1:8", "Gr:2:5", "Gr:3:6"] {
            let gd = desc(s);
            for d in 1..=6 {
                let all = pw_lift_candidates(&gd, d).unwrap();
                assert_eq!(all, vec![pw_lift(&gd, d).unwrap().lambda_b], "{s} d={d}");
            }
        }
    }

    #[test]
    fn closed_forms_small() {
        for s in ["IG:2:8", "IG:4:8", "OG:2:9", "OG:4:9", "OG:2:10", "Gr:2:6"] {
            let gd = desc(s);
            for d in 1..=3 * gd.k {
                assert_eq!(lambda_b_closed_form(&gd, d), pw_lift(&gd, d).unwrap().lambda_b, "{s} d={d}");
            }
        }
    }

    #[test]
    fn ig28_example_vanishes() {
        let g = Grassmannian::new(desc("IG:2:8")).unwrap();
        let u = g.element(&[1, 2]).unwrap();
        let v = g.element(&[3, 4, 3, 1, 2]).unwrap();
        let id = g.element(&[]).unwrap();
        assert_eq!(u.length() + v.length(), g.desc().deg_t());
        assert_eq!(g.gw_invariant(&u, &v, &id, 1).unwrap(), 0);
    }

    #[test]
    fn p1_is_quantum() {
        // Gr(1,2) = P^1: σ^1 ⋆ σ^1 = t.
        let g = Grassmannian::new(desc("Gr:1:2")).unwrap();
        let s = g.element(&[1]).unwrap();
        let prod = g.quantum_multiply(&s, &s).unwrap();
        assert_eq!(prod.len(), 1);
        assert_eq!(prod.get(&g.element(&[]).unwrap(), 1), 1);
    }

    #[test]
    fn rejects_non_minimal() {
        let g = Grassmannian::new(desc("IG:1:4")).unwrap();
        let bad = g.element(&[2]).unwrap();
        let id = g.element(&[]).unwrap();
        assert!(matches!(g.gw_invariant(&bad, &id, &id, 0), Err(Error::NotMinimal(_))));
    }

    #[test]
    fn identity_is_unit() {
        let g = Grassmannian::new(desc("IG:2:6")).unwrap();
        let id = g.element(&[]).unwrap();
        for v in g.parabolic().min_coset_reps() {
            let p = g.quantum_multiply(&id, v).unwrap();
            assert_eq!(p.sorted_terms(), vec![(*v, 0, Coeff::from(1))]);
        }
    }
}
