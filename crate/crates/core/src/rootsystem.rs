//! Cartan data for the classical types A, B, C and D.
//!
//! Roots are built from their ambient ε-coordinates (Humphreys labelling:
//! `α_n` is short in `B_n`, long in `C_n`, and `α_{n-1}, α_n` are the fork
//! nodes of `D_n`). Simple-root and simple-coroot coordinates are derived
//! from the ε-vectors, never the other way round.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::OnceLock;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard storage limit for the rank.
pub const MAX_RANK: usize = 12;
/// Hard storage limit for the ambient dimension (type `A_12` needs 13).
pub const MAX_DIM: usize = MAX_RANK + 1;
/// Default practical rank ceiling; override with `QPIERI_MAX_RANK`.
pub const DEFAULT_RANK_CEILING: usize = 8;

static RANK_CEILING: AtomicUsize = AtomicUsize::new(0);
static RANK_CEILING_ENV: OnceLock<usize> = OnceLock::new();

/// The current rank ceiling: an explicit `set_rank_ceiling` wins, then the
/// `QPIERI_MAX_RANK` environment variable, then [`DEFAULT_RANK_CEILING`].
pub fn rank_ceiling() -> usize {
    match RANK_CEILING.load(Ordering::Relaxed) {
        0 => *RANK_CEILING_ENV.get_or_init(|| {
            std::env::var("QPIERI_MAX_RANK")
                .ok()
                .and_then(|s| s.trim().parse::<usize>().ok())
                .map(|r| r.clamp(1, MAX_RANK))
                .unwrap_or(DEFAULT_RANK_CEILING)
        }),
        r => r,
    }
}

pub fn set_rank_ceiling(rank: usize) {
    RANK_CEILING.store(rank.clamp(1, MAX_RANK), Ordering::Relaxed);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieType {
    A,
    B,
    C,
    D,
}

impl LieType {
    pub fn letter(self) -> char {
        match self {
            LieType::A => 'A',
            LieType::B => 'B',
            LieType::C => 'C',
            LieType::D => 'D',
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            LieType::D => 3,
            _ => 1,
        }
    }

    /// Number of ε-coordinates.
    pub fn ambient_dim(self, rank: usize) -> usize {
        match self {
            LieType::A => rank + 1,
            _ => rank,
        }
    }

    /// The type whose roots are the coroots of this one.
    pub fn dual(self) -> LieType {
        match self {
            LieType::B => LieType::C,
            LieType::C => LieType::B,
            t => t,
        }
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for LieType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(LieType::A),
            "B" | "b" => Ok(LieType::B),
            "C" | "c" => Ok(LieType::C),
            "D" | "d" => Ok(LieType::D),
            other => Err(Error::Parse(format!("unknown Lie type {other:?}"))),
        }
    }
}

/// A coroot combination `λ = Σ a_j α_j∨`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveDegree {
    rank: u8,
    coords: [i16; MAX_RANK],
}

impl CurveDegree {
    pub fn zero(rank: usize) -> Self {
        CurveDegree {
            rank: rank as u8,
            coords: [0; MAX_RANK],
        }
    }

    pub fn from_coords(coords: &[i64]) -> Result<Self> {
        if coords.len() > MAX_RANK {
            return Err(Error::DimensionMismatch {
                expected: MAX_RANK,
                got: coords.len(),
            });
        }
        let mut c = CurveDegree::zero(coords.len());
        for (slot, &a) in c.coords.iter_mut().zip(coords) {
            *slot = i16::try_from(a).map_err(|_| Error::Parse(format!("coordinate {a} too large")))?;
        }
        Ok(c)
    }

    /// `α_i∨` (1-based).
    pub fn simple(rank: usize, i: usize) -> Self {
        let mut c = CurveDegree::zero(rank);
        c.coords[i - 1] = 1;
        c
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i16] {
        &self.coords[..self.rank as usize]
    }

    /// 1-based coordinate access.
    pub fn get(&self, j: usize) -> i64 {
        self.coords[j - 1] as i64
    }

    pub fn set(&mut self, j: usize, value: i64) {
        self.coords[j - 1] = value as i16;
    }

    pub fn is_zero(&self) -> bool {
        self.coords().iter().all(|&a| a == 0)
    }

    pub fn is_effective(&self) -> bool {
        self.coords().iter().all(|&a| a >= 0)
    }

    /// Sum of coordinates (half of `⟨2ρ, λ⟩`).
    pub fn height(&self) -> i64 {
        self.coords().iter().map(|&a| a as i64).sum()
    }

    pub fn add(&self, other: &CurveDegree) -> CurveDegree {
        let mut c = *self;
        for j in 0..self.rank as usize {
            c.coords[j] += other.coords[j];
        }
        c
    }

    pub fn sub(&self, other: &CurveDegree) -> CurveDegree {
        let mut c = *self;
        for j in 0..self.rank as usize {
            c.coords[j] -= other.coords[j];
        }
        c
    }

    pub fn scale(&self, factor: i64) -> CurveDegree {
        let mut c = *self;
        for j in 0..self.rank as usize {
            c.coords[j] = (c.coords[j] as i64 * factor) as i16;
        }
        c
    }

    /// Componentwise `self ≤ other`.
    pub fn componentwise_le(&self, other: &CurveDegree) -> bool {
        self.coords().iter().zip(other.coords()).all(|(a, b)| a <= b)
    }

    /// Componentwise maximum.
    pub fn componentwise_max(&self, other: &CurveDegree) -> CurveDegree {
        let mut c = *self;
        for j in 0..self.rank as usize {
            c.coords[j] = c.coords[j].max(other.coords[j]);
        }
        c
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.coords().iter().map(|&a| a as i64).collect()
    }
}

impl fmt::Debug for CurveDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CurveDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, a) in self.coords().iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for CurveDegree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        if inner.trim().is_empty() {
            return Err(Error::Parse("empty curve degree".into()));
        }
        let coords = inner
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        CurveDegree::from_coords(&coords)
    }
}

impl Serialize for CurveDegree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

/// A root (positive or negative), kept in three coordinate systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Root {
    pub eps: [i8; MAX_DIM],
    pub simple: [i16; MAX_RANK],
    pub coroot_eps: [i8; MAX_DIM],
    pub coroot: CurveDegree,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.eps.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    pub fn negate(&self) -> Root {
        let mut r = *self;
        for x in r.eps.iter_mut().chain(r.coroot_eps.iter_mut()) {
            *x = -*x;
        }
        for x in r.simple.iter_mut() {
            *x = -*x;
        }
        r.coroot = r.coroot.scale(-1);
        r
    }

    /// Simple-root coordinates, truncated to the rank.
    pub fn coords(&self, rank: usize) -> &[i16] {
        &self.simple[..rank]
    }
}

/// A weight given in a basis the pairing understands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Weight {
    /// Coordinates in the fundamental weights `χ_1..χ_n`.
    Fundamental(Vec<i64>),
    /// Coordinates in the simple roots `α_1..α_n`.
    Roots(Vec<i64>),
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    lie_type: LieType,
    rank: usize,
    dim: usize,
    simple_roots: Vec<Root>,
    positive_roots: Vec<Root>,
    cartan: Vec<Vec<i64>>,
    rho_pairings: Vec<i64>,
    index: FxHashMap<[i8; MAX_DIM], usize>,
}

/// ε-vector → coordinates in the simple roots of a system of the given type.
/// Returns `None` if the vector is not in the root lattice.
fn eps_to_simple(ty: LieType, rank: usize, eps: &[i8; MAX_DIM]) -> Option<[i16; MAX_RANK]> {
    let mut out = [0i16; MAX_RANK];
    let mut prefix = 0i16;
    let n = rank;
    match ty {
        LieType::A => {
            for j in 0..n {
                prefix += eps[j] as i16;
                out[j] = prefix;
            }
            let total: i16 = eps[..=n].iter().map(|&x| x as i16).sum();
            if total != 0 {
                return None;
            }
        }
        LieType::B => {
            for j in 0..n {
                prefix += eps[j] as i16;
                out[j] = prefix;
            }
        }
        LieType::C => {
            for j in 0..n - 1 {
                prefix += eps[j] as i16;
                out[j] = prefix;
            }
            let total = prefix + eps[n - 1] as i16;
            if total % 2 != 0 {
                return None;
            }
            out[n - 1] = total / 2;
        }
        LieType::D => {
            for j in 0..n - 2 {
                prefix += eps[j] as i16;
                out[j] = prefix;
            }
            let p = prefix + eps[n - 2] as i16;
            let last = eps[n - 1] as i16;
            if (p - last) % 2 != 0 {
                return None;
            }
            out[n - 2] = (p - last) / 2;
            out[n - 1] = (p + last) / 2;
        }
    }
    Some(out)
}

fn eps_dot(a: &[i8; MAX_DIM], b: &[i8; MAX_DIM]) -> i64 {
    a.iter().zip(b).map(|(&x, &y)| x as i64 * y as i64).sum()
}

impl RootSystem {
    pub fn new(lie_type: LieType, rank: usize) -> Result<Self> {
        let max = rank_ceiling();
        if rank < lie_type.min_rank() || rank > max {
            return Err(Error::RankOutOfRange {
                ty: lie_type.letter(),
                rank,
                min: lie_type.min_rank(),
                max,
            });
        }
        let dim = lie_type.ambient_dim(rank);
        let n = rank;
        let e = |pairs: &[(usize, i8)]| {
            let mut v = [0i8; MAX_DIM];
            for &(i, c) in pairs {
                v[i] += c;
            }
            v
        };

        let mut pos_eps: Vec<[i8; MAX_DIM]> = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                pos_eps.push(e(&[(i, 1), (j, -1)]));
                if lie_type != LieType::A {
                    pos_eps.push(e(&[(i, 1), (j, 1)]));
                }
            }
            match lie_type {
                LieType::B => pos_eps.push(e(&[(i, 1)])),
                LieType::C => pos_eps.push(e(&[(i, 2)])),
                _ => {}
            }
        }
        let simple_eps: Vec<[i8; MAX_DIM]> = (0..n)
            .map(|i| {
                if i + 1 < n || lie_type == LieType::A {
                    e(&[(i, 1), (i + 1, -1)])
                } else {
                    match lie_type {
                        LieType::B => e(&[(i, 1)]),
                        LieType::C => e(&[(i, 2)]),
                        LieType::D => e(&[(i - 1, 1), (i, 1)]),
                        LieType::A => unreachable!(),
                    }
                }
            })
            .collect();

        let build = |eps: [i8; MAX_DIM]| -> Root {
            let norm = eps_dot(&eps, &eps);
            let mut coroot_eps = [0i8; MAX_DIM];
            for (c, &x) in coroot_eps.iter_mut().zip(&eps) {
                *c = (2 * x as i64 / norm) as i8;
            }
            let simple = eps_to_simple(lie_type, n, &eps).expect("root lattice");
            let co = eps_to_simple(lie_type.dual(), n, &coroot_eps).expect("coroot lattice");
            let mut coroot = CurveDegree::zero(n);
            coroot.coords[..n].copy_from_slice(&co[..n]);
            Root {
                eps,
                simple,
                coroot_eps,
                coroot,
            }
        };

        let mut positive_roots: Vec<Root> = pos_eps.into_iter().map(build).collect();
        positive_roots.sort_by_key(|r| {
            let h: i16 = r.simple[..n].iter().sum();
            (h, std::cmp::Reverse(r.simple))
        });
        let simple_roots: Vec<Root> = simple_eps.into_iter().map(build).collect();

        let cartan = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| eps_dot(&simple_roots[i].eps, &simple_roots[j].coroot_eps))
                    .collect()
            })
            .collect();

        let mut two_rho = [0i64; MAX_DIM];
        for r in &positive_roots {
            for (t, &x) in two_rho.iter_mut().zip(&r.eps) {
                *t += x as i64;
            }
        }
        let rho_pairings = simple_roots
            .iter()
            .map(|a| two_rho.iter().zip(&a.coroot_eps).map(|(&x, &y)| x * y as i64).sum())
            .collect();

        let index = positive_roots.iter().enumerate().map(|(i, r)| (r.eps, i)).collect();

        Ok(RootSystem {
            lie_type,
            rank,
            dim,
            simple_roots,
            positive_roots,
            cartan,
            rho_pairings,
            index,
        })
    }

    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.lie_type, self.rank)
    }

    /// `α_i` (1-based).
    pub fn simple_root(&self, i: usize) -> &Root {
        &self.simple_roots[i - 1]
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.simple_roots
    }

    /// `α_i∨` in simple-coroot coordinates.
    pub fn simple_coroot(&self, i: usize) -> CurveDegree {
        CurveDegree::simple(self.rank, i)
    }

    /// Positive roots ordered by height.
    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    /// `c_ij = ⟨α_i, α_j∨⟩`, 0-based rows.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// `⟨2ρ, α_j∨⟩` for each `j`, computed from the sum of positive roots.
    pub fn rho_pairings(&self) -> &[i64] {
        &self.rho_pairings
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        let mut v = vec![0; self.rank];
        v[i - 1] = 1;
        Weight::Fundamental(v)
    }

    /// Looks up a root (of either sign) by its ε-vector.
    pub fn root_from_eps(&self, eps: &[i8; MAX_DIM]) -> Option<Root> {
        if let Some(&i) = self.index.get(eps) {
            return Some(self.positive_roots[i]);
        }
        let mut neg = *eps;
        for x in neg.iter_mut() {
            *x = -*x;
        }
        self.index.get(&neg).map(|&i| self.positive_roots[i].negate())
    }

    /// Looks up a root by simple-root coordinates.
    pub fn root_from_coords(&self, coords: &[i64]) -> Result<Root> {
        if coords.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: coords.len(),
            });
        }
        let mut eps = [0i64; MAX_DIM];
        for (a, r) in coords.iter().zip(&self.simple_roots) {
            for (t, &x) in eps.iter_mut().zip(&r.eps) {
                *t += a * x as i64;
            }
        }
        let mut small = [0i8; MAX_DIM];
        for (s, &x) in small.iter_mut().zip(&eps) {
            *s = i8::try_from(x).map_err(|_| Error::NotARoot(format!("{coords:?}")))?;
        }
        self.root_from_eps(&small)
            .ok_or_else(|| Error::NotARoot(format_root(coords)))
    }

    pub fn positive_root_index(&self, root: &Root) -> Option<usize> {
        self.index.get(&root.eps).copied()
    }

    /// `⟨β, λ⟩` for a weight in either basis.
    pub fn pairing(&self, beta: &Weight, lambda: &CurveDegree) -> Result<i64> {
        if lambda.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: lambda.rank(),
            });
        }
        match beta {
            Weight::Fundamental(a) => {
                self.check_len(a.len())?;
                Ok(a.iter().enumerate().map(|(i, &x)| x * lambda.get(i + 1)).sum())
            }
            Weight::Roots(b) => {
                self.check_len(b.len())?;
                Ok(self.root_pairing(b.iter().copied(), lambda))
            }
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: len,
            });
        }
        Ok(())
    }

    /// `⟨β, λ⟩` for β in simple-root coordinates.
    pub fn root_pairing(&self, beta: impl IntoIterator<Item = i64>, lambda: &CurveDegree) -> i64 {
        beta.into_iter()
            .enumerate()
            .map(|(i, b)| {
                if b == 0 {
                    return 0;
                }
                b * (0..self.rank).map(|j| self.cartan[i][j] * lambda.get(j + 1)).sum::<i64>()
            })
            .sum()
    }

    /// `⟨α_i, λ⟩` for a simple root (1-based).
    pub fn simple_pairing(&self, i: usize, lambda: &CurveDegree) -> i64 {
        (0..self.rank).map(|j| self.cartan[i - 1][j] * lambda.get(j + 1)).sum()
    }

    /// `⟨γ, λ⟩` for a root.
    pub fn pairing_root(&self, gamma: &Root, lambda: &CurveDegree) -> i64 {
        self.root_pairing(gamma.simple[..self.rank].iter().map(|&x| x as i64), lambda)
    }

    /// `⟨2ρ, λ⟩`.
    pub fn two_rho_pairing(&self, lambda: &CurveDegree) -> i64 {
        lambda
            .coords()
            .iter()
            .zip(&self.rho_pairings)
            .map(|(&a, &r)| a as i64 * r)
            .sum()
    }

    pub fn cartan_datum(&self) -> CartanDatum {
        let root = |r: &Root| RootRecord {
            eps: r.eps[..self.dim].to_vec(),
            simple: r.simple[..self.rank].to_vec(),
            coroot: r.coroot.to_vec(),
            text: format_root(&r.simple[..self.rank].iter().map(|&x| x as i64).collect::<Vec<_>>()),
        };
        CartanDatum {
            lie_type: self.lie_type,
            rank: self.rank,
            cartan: self.cartan.clone(),
            rho_pairings: self.rho_pairings.clone(),
            simple_roots: self.simple_roots.iter().map(root).collect(),
            positive_roots: self.positive_roots.iter().map(root).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootRecord {
    pub eps: Vec<i8>,
    pub simple: Vec<i16>,
    pub coroot: Vec<i64>,
    pub text: String,
}

/// JSON-friendly export of a root system.
#[derive(Clone, Debug, Serialize)]
pub struct CartanDatum {
    pub lie_type: LieType,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub rho_pairings: Vec<i64>,
    pub simple_roots: Vec<RootRecord>,
    pub positive_roots: Vec<RootRecord>,
}

/// Renders simple-root coordinates as `r1+2*r2`.
pub fn format_root(coords: &[i64]) -> String {
    let mut out = String::new();
    for (i, &a) in coords.iter().enumerate() {
        if a == 0 {
            continue;
        }
        if a < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if a.abs() != 1 {
            out.push_str(&format!("{}*", a.abs()));
        }
        out.push_str(&format!("r{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Parses `a1*r1+a2*r2` style text into simple-root coordinates.
pub fn parse_root(text: &str, rank: usize) -> Result<Vec<i64>> {
    let mut coords = vec![0i64; rank];
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned == "0" {
        return Ok(coords);
    }
    let mut terms = Vec::new();
    let mut cur = String::new();
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && !cur.is_empty() && !cur.ends_with('*') {
            terms.push(std::mem::take(&mut cur));
        }
        cur.push(ch);
    }
    if !cur.is_empty() {
        terms.push(cur);
    }
    if terms.is_empty() {
        return Err(Error::Parse("empty root".into()));
    }
    for term in terms {
        let (sign, body) = match term.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, term.trim_start_matches('+')),
        };
        let (coef, sym) = match body.split_once('*') {
            Some((c, s)) => (c.parse::<i64>().map_err(|e| Error::Parse(format!("{c:?}: {e}")))?, s),
            None => (1, body),
        };
        let idx = sym
            .strip_prefix(['r', 'a'])
            .and_then(|s| s.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad root symbol {sym:?}")))?;
        if idx == 0 || idx > rank {
            return Err(Error::Index(format!("root index {idx} out of 1..={rank}")));
        }
        coords[idx - 1] += sign * coef;
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_cartan_matrix() {
        let rs = RootSystem::new(LieType::C, 2).unwrap();
        assert_eq!(rs.cartan(), &[vec![2, -1], vec![-2, 2]]);
        assert_eq!(rs.positive_roots().len(), 4);
    }

    #[test]
    fn positive_root_counts() {
        for n in 1..=6 {
            assert_eq!(RootSystem::new(LieType::A, n).unwrap().positive_roots().len(), n * (n + 1) / 2);
            assert_eq!(RootSystem::new(LieType::B, n).unwrap().positive_roots().len(), n * n);
            assert_eq!(RootSystem::new(LieType::C, n).unwrap().positive_roots().len(), n * n);
            if n >= 3 {
                assert_eq!(RootSystem::new(LieType::D, n).unwrap().positive_roots().len(), n * (n - 1));
            }
        }
    }

    #[test]
    fn d_needs_rank_three() {
        assert!(matches!(RootSystem::new(LieType::D, 2), Err(Error::RankOutOfRange { .. })));
        assert!(RootSystem::new(LieType::A, 0).is_err());
    }

    #[test]
    fn a1_rho() {
        let rs = RootSystem::new(LieType::A, 1).unwrap();
        assert_eq!(rs.positive_roots().len(), 1);
        assert_eq!(rs.two_rho_pairing(&rs.simple_coroot(1)), 2);
    }

    #[test]
    fn rho_pairs_to_two_on_simple_coroots() {
        for (t, n) in [(LieType::A, 4), (LieType::B, 4), (LieType::C, 4), (LieType::D, 5)] {
            let rs = RootSystem::new(t, n).unwrap();
            assert!(rs.rho_pairings().iter().all(|&x| x == 2), "{t}{n}");
            for i in 1..=n {
                assert_eq!(rs.cartan()[i - 1][i - 1], 2);
            }
        }
    }

    #[test]
    fn b3_not_a_root() {
        let rs = RootSystem::new(LieType::B, 3).unwrap();
        assert!(rs.root_from_coords(&[2, 2, 1]).is_err());
        assert!(rs.root_from_coords(&[1, 2, 2]).is_ok());
        let two = CurveDegree::from_coords(&[1, 1, 0]).unwrap();
        assert_eq!(rs.two_rho_pairing(&two), 4);
    }

    #[test]
    fn type_c_gamma_coroot() {
        // γ = α_n + 2Σ_{j=k}^{n-1} α_j has γ∨ = Σ_{j=k}^n α_j∨.
        let n = 5;
        let rs = RootSystem::new(LieType::C, n).unwrap();
        for k in 1..=n {
            let mut coords = vec![0; n];
            for c in coords.iter_mut().take(n - 1).skip(k - 1) {
                *c = 2;
            }
            coords[n - 1] = 1;
            let g = rs.root_from_coords(&coords).unwrap();
            let expect: Vec<i64> = (1..=n).map(|j| i64::from(j >= k)).collect();
            assert_eq!(g.coroot.to_vec(), expect);
            assert_eq!(rs.two_rho_pairing(&g.coroot), 2 * (n - k) as i64 + 2);
            let chi = rs.fundamental_weight(k);
            assert_eq!(rs.pairing(&chi, &g.coroot).unwrap(), 1);
        }
    }

    #[test]
    fn pairing_checks_dimension() {
        let rs = RootSystem::new(LieType::B, 3).unwrap();
        let lam = CurveDegree::zero(3);
        assert_eq!(rs.pairing(&rs.fundamental_weight(2), &lam).unwrap(), 0);
        assert!(rs.pairing(&Weight::Roots(vec![1, 0]), &lam).is_err());
        assert!(rs.pairing(&Weight::Roots(vec![1, 0, 0]), &CurveDegree::zero(2)).is_err());
    }

    #[test]
    fn root_text_round_trip() {
        assert_eq!(format_root(&[1, 2, 0]), "r1+2*r2");
        assert_eq!(parse_root("r1+2*r2", 3).unwrap(), vec![1, 2, 0]);
        assert_eq!(parse_root("2*r1 - r3", 3).unwrap(), vec![2, 0, -1]);
        assert!(parse_root("r4", 3).is_err());
    }

    #[test]
    fn reflection_closure_reproduces_roots() {
        for (t, n) in [(LieType::A, 3), (LieType::B, 3), (LieType::C, 3), (LieType::D, 4)] {
            let rs = RootSystem::new(t, n).unwrap();
            let mut seen: std::collections::HashSet<[i8; MAX_DIM]> =
                rs.simple_roots().iter().map(|r| r.eps).collect();
            let mut frontier: Vec<[i8; MAX_DIM]> = seen.iter().copied().collect();
            while let Some(v) = frontier.pop() {
                for a in rs.simple_roots() {
                    let c = eps_dot(&v, &a.coroot_eps);
                    let mut w = v;
                    for (x, &y) in w.iter_mut().zip(&a.eps) {
                        *x -= (c * y as i64) as i8;
                    }
                    if seen.insert(w) {
                        frontier.push(w);
                    }
                }
            }
            assert_eq!(seen.len(), 2 * rs.positive_roots().len(), "{t}{n}");
            assert!(seen.iter().all(|e| rs.root_from_eps(e).is_some()));
        }
    }
}
