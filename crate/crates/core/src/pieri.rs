//! Quantum Pieri rules for the special classes `σ^u`, `u = s_{k−p+1}⋯s_k`
//! (and `u = s_{k+p−1}⋯s_k` for `Gr(k, n+1)`), each paired with a check
//! against the Peterson-Woodward oracle in [`crate::qhp`].

use rayon::prelude::*;
use serde::Serialize;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::qhp::{Grassmannian, GrassmannianDesc, TClass};
use crate::rootsystem::{CurveDegree, LieType, Root};
use crate::shapes::{element_of_partition_a, partition_of_element_a, TypeAPartition};
use crate::weyl::{ParabolicData, WeylElement};

/// `a, a+1, …, b` (empty when `a > b`).
fn up(a: usize, b: usize) -> Vec<usize> {
    (a..=b).collect()
}

/// `a, a−1, …, b` (empty when `a < b`).
fn down(a: usize, b: usize) -> Vec<usize> {
    (b..=a).rev().collect()
}

fn times(w: &WeylElement, word: &[usize]) -> WeylElement {
    word.iter().fold(*w, |x, &i| x.right_mul_simple(i))
}

/// `σ^u` with `c_p(S*) = scale·σ^u` (`c_p(Q)` for `Gr`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialClass {
    pub space: GrassmannianDesc,
    pub p: usize,
    pub element: WeylElement,
    pub scale: u8,
}

pub fn special_class(gd: &GrassmannianDesc, p: usize) -> Result<SpecialClass> {
    let k = gd.k;
    let (top, word) = match gd.lie_type {
        LieType::A => (gd.n + 1 - k, down(k + p.saturating_sub(1), k)),
        _ => (k, up((k + 1).saturating_sub(p), k)),
    };
    if p == 0 || p > top {
        return Err(Error::Index(format!("p = {p} out of 1..={top} for {gd}")));
    }
    Ok(SpecialClass {
        space: *gd,
        p,
        element: WeylElement::from_word(gd.lie_type, gd.rank(), &word)?,
        scale: if gd.is_odd_maximal() { 2 } else { 1 },
    })
}

/// One term of a Pieri formula, tagged with the branch that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieriTerm {
    pub w: WeylElement,
    pub word: String,
    pub d: usize,
    pub coeff: Coeff,
    pub case: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieriResult {
    pub space: String,
    pub p: usize,
    pub v: WeylElement,
    pub theorem_case: String,
    pub terms: Vec<PieriTerm>,
}

impl PieriResult {
    fn new(g: &Grassmannian, p: usize, v: &WeylElement, theorem_case: impl Into<String>) -> Self {
        PieriResult {
            space: g.desc().name(),
            p,
            v: *v,
            theorem_case: theorem_case.into(),
            terms: Vec::new(),
        }
    }

    fn push(&mut self, w: WeylElement, d: usize, coeff: Coeff, case: &'static str) {
        if !coeff.is_zero() {
            self.terms.push(PieriTerm {
                w,
                word: w.word_string(),
                d,
                coeff,
                case,
            });
        }
    }

    pub fn to_tclass(&self) -> TClass {
        let mut out = TClass::default();
        for t in &self.terms {
            out.add(t.w, t.d, &t.coeff);
        }
        out
    }

    pub fn classical_terms(&self) -> impl Iterator<Item = &PieriTerm> {
        self.terms.iter().filter(|t| t.d == 0)
    }

    pub fn quantum_terms(&self) -> impl Iterator<Item = &PieriTerm> {
        self.terms.iter().filter(|t| t.d > 0)
    }

    fn finish(mut self) -> Self {
        self.terms.sort_by(|a, b| (a.d, a.w.length(), a.w.one_line()).cmp(&(b.d, b.w.length(), b.w.one_line())));
        self
    }
}

fn check_space(g: &Grassmannian, want: &[LieType], v: &WeylElement) -> Result<()> {
    if !want.contains(&g.desc().lie_type) {
        return Err(Error::TypeMismatch(format!("{} is not of type {want:?}", g.desc())));
    }
    if !g.parabolic().is_min_rep(v) {
        return Err(Error::NotMinimal(v.word_string()));
    }
    Ok(())
}

fn classical_part(g: &Grassmannian, u: &WeylElement, v: &WeylElement, out: &mut PieriResult) -> Result<()> {
    let prod = g.engine().classical_multiply(u, v)?;
    for (w, _, c) in prod.sorted_terms() {
        if g.parabolic().is_min_rep(&w) {
            out.push(w, 0, c, "classical");
        }
    }
    Ok(())
}

fn classical_n(g: &Grassmannian, u: &WeylElement, v: &WeylElement, w: &WeylElement) -> Result<Coeff> {
    g.engine().gw_invariant(u, v, w, &CurveDegree::zero(g.desc().rank()))
}

/// `γ = α_n + 2Σ_{j=k}^{n−1} α_j` in `C_n` and its reflection.
pub fn gamma_c(g: &Grassmannian) -> Result<(Root, WeylElement)> {
    let gd = g.desc();
    if gd.lie_type != LieType::C {
        return Err(Error::TypeMismatch(format!("{gd} is not of type C")));
    }
    let rs = g.engine().root_system();
    let mut coords = vec![0i64; gd.n];
    for j in gd.k..gd.n {
        coords[j - 1] = 2;
    }
    coords[gd.n - 1] = 1;
    let gamma = rs.root_from_coords(&coords)?;
    Ok((gamma, WeylElement::reflection(rs, &gamma)))
}

/// `ℓ(vs_γ) = ℓ(v) − 2n + 2k − 1`.
fn ig_length_condition(g: &Grassmannian, v: &WeylElement, s_gamma: &WeylElement) -> bool {
    let gd = g.desc();
    v.compose(s_gamma).length() as i64 == v.length() as i64 - 2 * gd.n as i64 + 2 * gd.k as i64 - 1
}

/// Quantum Pieri rule for `IG(k, 2n)`.
pub fn pieri_c(g: &Grassmannian, p: usize, v: &WeylElement) -> Result<PieriResult> {
    check_space(g, &[LieType::C], v)?;
    let gd = *g.desc();
    let u = special_class(&gd, p)?.element;
    let (_, s_gamma) = gamma_c(g)?;
    let holds = ig_length_condition(g, v, &s_gamma);
    let mut out = PieriResult::new(g, p, v, if holds { "length-condition-holds" } else { "length-condition-fails" });
    classical_part(g, &u, v, &mut out)?;
    let total = u.length() + v.length();
    if holds && total >= gd.deg_t() {
        let u1 = u.right_mul_simple(gd.k);
        let v1 = v.compose(&s_gamma);
        let tail = up(1, gd.k - 1);
        for w in g.parabolic().min_coset_reps_of_length(total - gd.deg_t()) {
            out.push(*w, 1, classical_n(g, &u1, &v1, &times(w, &tail))?, "t1");
        }
    }
    Ok(out.finish())
}

/// The three equivalent conditions on `v ∈ W^P` for `IG(k, 2n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Tfae {
    /// `ℓ(vs_γ) = ℓ(v) + 1 − ⟨2ρ, γ∨⟩`.
    pub a: bool,
    /// `vs_γ(α_k) > 0`.
    pub b: bool,
    /// `vs_γ ∈ W^{P̃}` with `Δ_{P̃} = Δ ∖ {α_{k−1}}`.
    pub c: bool,
}

impl Tfae {
    pub fn all_equal(&self) -> bool {
        self.a == self.b && self.b == self.c
    }
}

pub fn check_tfae(g: &Grassmannian, v: &WeylElement) -> Result<Tfae> {
    check_space(g, &[LieType::C], v)?;
    let gd = g.desc();
    let rs = g.engine().root_system();
    let (gamma, s_gamma) = gamma_c(g)?;
    let x = v.compose(&s_gamma);
    let a = x.length() as i64 == v.length() as i64 + 1 - rs.two_rho_pairing(&gamma.coroot);
    let b = x.apply(rs, rs.simple_root(gd.k)).is_positive();
    let c = if gd.k == 1 {
        x.is_identity()
    } else {
        ParabolicData::maximal(gd.lie_type, gd.rank(), gd.k - 1)?.is_min_rep(&x)
    };
    Ok(Tfae { a, b, c })
}

/// `s_{ᾱ_n}`: `s_n` for `B_n`, `s_n s_{n+1}` for `D_{n+1}`.
fn s_bar(gd: &GrassmannianDesc) -> Vec<usize> {
    match gd.lie_type {
        LieType::D => vec![gd.n, gd.n + 1],
        _ => vec![gd.n],
    }
}

fn check_bd(g: &Grassmannian, v: &WeylElement) -> Result<()> {
    check_space(g, &[LieType::B, LieType::D], v)?;
    if g.desc().is_odd_maximal() && g.desc().n < 2 {
        return Err(Error::InvalidSpace(format!("{} needs n ≥ 2", g.desc())));
    }
    Ok(())
}

/// Degree-one invariant `N_{u,v}^{w,1}` of `OG(k, N)` as a classical
/// intersection number.
pub fn pieri_bd_d1(g: &Grassmannian, p: usize, v: &WeylElement, w: &WeylElement) -> Result<Coeff> {
    check_bd(g, v)?;
    let gd = *g.desc();
    let u = special_class(&gd, p)?.element;
    if u.length() + v.length() != w.length() + gd.deg_t() {
        return Ok(Coeff::zero());
    }
    let (n, k) = (gd.n, gd.k);
    let (u1, v1, w1) = if k < n {
        let mut vw = up(k, n - 1);
        vw.extend(s_bar(&gd));
        vw.extend(down(n - 1, k + 1));
        (u.right_mul_simple(k), times(v, &vw), times(w, &up(1, k - 1)))
    } else {
        let mut ww = up(2, n - 1);
        ww.extend(up(1, n));
        (u, times(v, &[n, n - 1]), times(w, &ww))
    };
    classical_n(g, &u1, &v1, &w1)
}

/// Degree-two invariant of `OG(k, N)`, `k < n`, with the side conditions
/// checked whenever it is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeTwo {
    pub value: Coeff,
    pub v2: WeylElement,
    pub w2: WeylElement,
    /// `v_2 ∈ W^P` and `ℓ(v_2) = ℓ(v) − ℓ(v^{-1}v_2)`; `None` when the value is 0.
    pub side_conditions: Option<bool>,
}

pub fn pieri_bd_d2(g: &Grassmannian, p: usize, v: &WeylElement, w: &WeylElement) -> Result<DegreeTwo> {
    check_bd(g, v)?;
    let gd = *g.desc();
    let u = special_class(&gd, p)?.element;
    let (n, k) = (gd.n, gd.k);
    let mut vw = up(k, n - 1);
    vw.extend(s_bar(&gd));
    vw.extend(down(n - 1, 1));
    let mut ww = up(1, n - 1);
    ww.extend(s_bar(&gd));
    ww.extend(down(n - 1, k));
    let (v2, w2) = (times(v, &vw), times(w, &ww));
    let zero = DegreeTwo {
        value: Coeff::zero(),
        v2,
        w2,
        side_conditions: None,
    };
    if k >= n || u.length() + v.length() != w.length() + 2 * gd.deg_t() {
        return Ok(zero);
    }
    let value = classical_n(g, &u, &v2, &w2)?;
    if value.is_zero() {
        return Ok(zero);
    }
    let side = g.parabolic().is_min_rep(&v2) && v2.length() + v.inverse().compose(&v2).length() == v.length();
    Ok(DegreeTwo {
        value,
        v2,
        w2,
        side_conditions: Some(side),
    })
}

/// Quantum Pieri rule for `OG(k, 2n+1)` and `OG(k, 2n+2)`: degrees 0, 1, 2.
pub fn pieri_bd(g: &Grassmannian, p: usize, v: &WeylElement) -> Result<PieriResult> {
    check_bd(g, v)?;
    let gd = *g.desc();
    let u = special_class(&gd, p)?.element;
    let mut out = PieriResult::new(g, p, v, if gd.k < gd.n { "k<n" } else { "k=n" });
    classical_part(g, &u, v, &mut out)?;
    let total = u.length() + v.length();
    for d in 1..=2 {
        if total < d * gd.deg_t() {
            break;
        }
        for w in g.parabolic().min_coset_reps_of_length(total - d * gd.deg_t()) {
            let c = if d == 1 { pieri_bd_d1(g, p, v, w)? } else { pieri_bd_d2(g, p, v, w)?.value };
            out.push(*w, d, c, if d == 1 { "t1" } else { "t2" });
        }
    }
    Ok(out.finish())
}

/// The type A quantum Pieri rule on partitions for `Gr(k, n+1)` and the class `c_p(Q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeAPieriProduct {
    pub classical: Vec<TypeAPartition>,
    pub quantum: Vec<TypeAPartition>,
}

/// Partitions `b ⊂ k × width` with `|b| = size` and `upper_i ≥ b_i ≥ lower_i`.
fn interlaced(upper: &[i64], lower: &[i64], size: i64) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(upper.len());
    fn go(i: usize, upper: &[i64], lower: &[i64], left: i64, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == upper.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lo = lower[i].max(0);
        let hi = upper[i].min(left);
        let mut x = hi;
        while x >= lo {
            cur.push(x as usize);
            go(i + 1, upper, lower, left - x, cur, out);
            cur.pop();
            x -= 1;
        }
    }
    go(0, upper, lower, size, &mut cur, &mut out);
    out
}

pub fn pieri_a(gd: &GrassmannianDesc, p: usize, a: &TypeAPartition) -> Result<TypeAPieriProduct> {
    if gd.lie_type != LieType::A {
        return Err(Error::TypeMismatch(format!("{gd} is not a type A Grassmannian")));
    }
    let (n, k) = (gd.n, gd.k);
    let width = n + 1 - k;
    special_class(gd, p)?;
    a.check_box(k, width)?;
    let parts: Vec<i64> = a.parts().iter().map(|&x| x as i64).collect();
    let size = parts.iter().sum::<i64>();
    // b_1 ≤ width, b_i ≤ a_{i−1}, b_i ≥ a_i.
    let upper: Vec<i64> = (0..k).map(|i| if i == 0 { width as i64 } else { parts[i - 1] }).collect();
    let classical = interlaced(&upper, &parts, size + p as i64);
    // a_i − 1 ≥ c_i ≥ a_{i+1} − 1.
    let upper: Vec<i64> = parts.iter().map(|&x| x - 1).collect();
    let lower: Vec<i64> = (0..k).map(|i| parts.get(i + 1).map_or(0, |&x| x - 1)).collect();
    let target = size + p as i64 - (n as i64 + 1);
    let quantum = if target < 0 || upper.iter().any(|&x| x < 0) {
        Vec::new()
    } else {
        interlaced(&upper, &lower, target)
    };
    let mk = |v: Vec<Vec<usize>>| v.into_iter().map(|x| TypeAPartition::new(x).expect("interlacing keeps order")).collect();
    Ok(TypeAPieriProduct {
        classical: mk(classical),
        quantum: mk(quantum),
    })
}

/// The type A quantum Pieri rule as a [`PieriResult`] over Weyl group labels.
pub fn pieri_a_result(g: &Grassmannian, p: usize, v: &WeylElement) -> Result<PieriResult> {
    check_space(g, &[LieType::A], v)?;
    let gd = *g.desc();
    let prod = pieri_a(&gd, p, &partition_of_element_a(&gd, v)?)?;
    let mut out = PieriResult::new(g, p, v, "type-a");
    for b in &prod.classical {
        out.push(element_of_partition_a(&gd, b)?, 0, Coeff::from(1), "classical");
    }
    for c in &prod.quantum {
        out.push(element_of_partition_a(&gd, c)?, 1, Coeff::from(1), "t1");
    }
    Ok(out.finish())
}

/// Degree-one invariant of `Gr(k, n+1)` as a classical number.
pub fn degree1_reduction_a(g: &Grassmannian, p: usize, v: &WeylElement, w: &WeylElement) -> Result<Coeff> {
    check_space(g, &[LieType::A], v)?;
    let gd = *g.desc();
    let u = special_class(&gd, p)?.element;
    if w.length() + gd.n + 1 != v.length() + p {
        return Ok(Coeff::zero());
    }
    let (n, k) = (gd.n, gd.k);
    classical_n(g, &u.right_mul_simple(k), &times(v, &down(k, 1)), &times(w, &down(n, k + 1)))
}

/// The Pieri formula for any supported space.
pub fn pieri(g: &Grassmannian, p: usize, v: &WeylElement) -> Result<PieriResult> {
    match g.desc().lie_type {
        LieType::C => pieri_c(g, p, v),
        LieType::B | LieType::D => pieri_bd(g, p, v),
        LieType::A => pieri_a_result(g, p, v),
    }
}

/// Formula versus oracle for one `(p, v)`.
#[derive(Clone, Debug, Serialize)]
pub struct PieriReport {
    pub space: String,
    pub p: usize,
    pub v: String,
    pub theorem_case: String,
    pub matched: bool,
    pub lhs: TClass,
    pub rhs: TClass,
}

pub fn check_pieri(g: &Grassmannian, p: usize, v: &WeylElement) -> Result<PieriReport> {
    let formula = pieri(g, p, v)?;
    let u = special_class(g.desc(), p)?.element;
    let oracle = g.quantum_multiply(&u, v)?;
    let lhs = formula.to_tclass();
    Ok(PieriReport {
        space: formula.space,
        p,
        v: v.word_string(),
        theorem_case: formula.theorem_case,
        matched: lhs == oracle,
        lhs,
        rhs: oracle,
    })
}

/// Every `(p, v)` of one space, in `(p, W^P order)`.
pub fn sweep_pieri(g: &Grassmannian) -> Result<Vec<PieriReport>> {
    let gd = g.desc();
    let top = if gd.lie_type == LieType::A { gd.n + 1 - gd.k } else { gd.k };
    let jobs: Vec<(usize, usize)> = (1..=top).flat_map(|p| (0..g.parabolic().min_coset_reps().len()).map(move |i| (p, i))).collect();
    jobs.into_par_iter()
        .map(|(p, i)| check_pieri(g, p, &g.parabolic().min_coset_reps()[i]))
        .collect()
}

/// Nonzero invariants found where the rules predict vanishing.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingReport {
    pub space: String,
    pub p: usize,
    pub d_min: usize,
    pub checked: usize,
    pub counterexamples: Vec<(String, String, usize, Coeff)>,
}

/// Checks `N_{u,v}^{w,d} = 0` for the special `u`, all `v, w` and all
/// `d ≥ d_min` the dimension constraint allows.
pub fn verify_vanishing(g: &Grassmannian, p: usize, d_min: usize) -> Result<VanishingReport> {
    let gd = *g.desc();
    let u = special_class(&gd, p)?.element;
    let reps = g.parabolic().min_coset_reps();
    let found: Vec<Result<(usize, Vec<(String, String, usize, Coeff)>)>> = reps
        .par_iter()
        .map(|v| {
            let total = u.length() + v.length();
            let mut checked = 0;
            let mut bad = Vec::new();
            let mut d = d_min.max(1);
            while d * gd.deg_t() <= total {
                for w in g.parabolic().min_coset_reps_of_length(total - d * gd.deg_t()) {
                    checked += 1;
                    let c = g.gw_invariant(&u, v, w, d)?;
                    if !c.is_zero() {
                        bad.push((v.word_string(), w.word_string(), d, c));
                    }
                }
                d += 1;
            }
            Ok((checked, bad))
        })
        .collect();
    let mut report = VanishingReport {
        space: gd.name(),
        p,
        d_min,
        checked: 0,
        counterexamples: Vec::new(),
    };
    for r in found {
        let (c, bad) = r?;
        report.checked += c;
        report.counterexamples.extend(bad);
    }
    Ok(report)
}

/// For `u' = s_{j−i+1}⋯s_j`, `N_{u',v'}^{w',λ} = 0` whenever `λ ≠ 0` is
/// effective with `⟨χ_j, λ⟩ = 0`. Returns violations as
/// `(u', v', w', λ)` over all `v'` and all `j` in range for the type.
pub fn verify_chi_vanishing(g: &crate::qhb::QuantumEngine) -> Result<Vec<(String, String, String, CurveDegree)>> {
    let rs = g.root_system();
    let rank = rs.rank();
    let j_max = match rs.lie_type() {
        LieType::D => rank.saturating_sub(3),
        _ => rank - 1,
    };
    let all: Vec<WeylElement> = ParabolicData::borel(rs.lie_type(), rank).min_coset_reps().to_vec();
    let mut bad = Vec::new();
    for j in 1..=j_max {
        for i in 1..=j {
            let u = WeylElement::from_word(rs.lie_type(), rank, &up(j + 1 - i, j))?;
            for v in &all {
                for (w, lambda, _) in g.quantum_multiply(&u, v)?.sorted_terms() {
                    if !lambda.is_zero() && lambda.get(j) == 0 {
                        bad.push((u.word_string(), v.word_string(), w.word_string(), lambda));
                    }
                }
            }
        }
    }
    Ok(bad)
}

/// True iff `c` is a power of two.
pub fn is_power_of_two(c: &Coeff) -> bool {
    c.log2_exact().is_some()
}
