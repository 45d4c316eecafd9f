//! Weyl group elements as signed one-line permutations.
//!
//! `w(ε_i) = sgn(w(i)) ε_{|w(i)|}` and products compose as functions,
//! `(w1 w2)(i) = w1(w2(i))`. Right multiplication by `s_i` acts on positions,
//! left multiplication on values. Type `A_n` uses plain permutations of
//! `1..=n+1`; type `D_n` keeps an even number of negative entries.

use std::fmt;
use std::sync::OnceLock;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsystem::{LieType, Root, RootSystem, MAX_DIM};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    ty: LieType,
    rank: u8,
    one_line: [i8; MAX_DIM],
}

impl WeylElement {
    pub fn identity(ty: LieType, rank: usize) -> Self {
        let mut one_line = [0i8; MAX_DIM];
        for (i, x) in one_line.iter_mut().take(ty.ambient_dim(rank)).enumerate() {
            *x = i as i8 + 1;
        }
        WeylElement {
            ty,
            rank: rank as u8,
            one_line,
        }
    }

    pub fn from_one_line(ty: LieType, rank: usize, values: &[i64]) -> Result<Self> {
        let dim = ty.ambient_dim(rank);
        if values.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: values.len(),
            });
        }
        let mut seen = vec![false; dim + 1];
        let mut negatives = 0;
        let mut one_line = [0i8; MAX_DIM];
        for (slot, &v) in one_line.iter_mut().zip(values) {
            let a = v.unsigned_abs() as usize;
            if a == 0 || a > dim || seen[a] {
                return Err(Error::Parse(format!("{values:?} is not a signed permutation of 1..={dim}")));
            }
            seen[a] = true;
            if v < 0 {
                negatives += 1;
            }
            *slot = v as i8;
        }
        match ty {
            LieType::A if negatives > 0 => {
                return Err(Error::Parse("type A elements carry no signs".into()));
            }
            LieType::D if negatives % 2 == 1 => {
                return Err(Error::Parse("type D elements need an even number of signs".into()));
            }
            _ => {}
        }
        Ok(WeylElement {
            ty,
            rank: rank as u8,
            one_line,
        })
    }

    pub fn simple(ty: LieType, rank: usize, i: usize) -> Self {
        WeylElement::identity(ty, rank).right_mul_simple(i)
    }

    /// Product `s_{w[0]} s_{w[1]} ⋯` (1-based indices).
    pub fn from_word(ty: LieType, rank: usize, word: &[usize]) -> Result<Self> {
        let mut w = WeylElement::identity(ty, rank);
        for &i in word {
            if i == 0 || i > rank {
                return Err(Error::Index(format!("s{i} out of range for rank {rank}")));
            }
            w = w.right_mul_simple(i);
        }
        Ok(w)
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn dim(&self) -> usize {
        self.ty.ambient_dim(self.rank as usize)
    }

    pub fn one_line(&self) -> &[i8] {
        &self.one_line[..self.dim()]
    }

    pub fn is_identity(&self) -> bool {
        self.one_line().iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    /// Value at a signed position.
    #[inline]
    fn value(&self, i: i8) -> i8 {
        if i > 0 {
            self.one_line[i as usize - 1]
        } else {
            -self.one_line[(-i) as usize - 1]
        }
    }

    fn same_group(&self, other: &WeylElement) -> Result<()> {
        if self.ty != other.ty || self.rank != other.rank {
            return Err(Error::TypeMismatch(format!(
                "{}{} vs {}{}",
                self.ty, self.rank, other.ty, other.rank
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &WeylElement) -> Result<WeylElement> {
        self.same_group(other)?;
        Ok(self.compose(other))
    }

    /// Group product without the type check.
    #[inline]
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let mut out = *self;
        for i in 0..self.dim() {
            out.one_line[i] = self.value(other.one_line[i]);
        }
        out
    }

    pub fn inverse(&self) -> WeylElement {
        let mut out = *self;
        for (i, &x) in self.one_line().iter().enumerate() {
            let pos = x.unsigned_abs() as usize - 1;
            out.one_line[pos] = if x > 0 { i as i8 + 1 } else { -(i as i8 + 1) };
        }
        out
    }

    /// `w s_i`.
    pub fn right_mul_simple(&self, i: usize) -> WeylElement {
        let mut out = *self;
        let n = self.rank as usize;
        let l = &mut out.one_line;
        if i < n || self.ty == LieType::A {
            l.swap(i - 1, i);
        } else {
            match self.ty {
                LieType::B | LieType::C => l[n - 1] = -l[n - 1],
                LieType::D => {
                    let (a, b) = (l[n - 2], l[n - 1]);
                    l[n - 2] = -b;
                    l[n - 1] = -a;
                }
                LieType::A => unreachable!(),
            }
        }
        out
    }

    /// `s_i w`.
    pub fn left_mul_simple(&self, i: usize) -> WeylElement {
        WeylElement::simple(self.ty, self.rank as usize, i).compose(self)
    }

    /// Position of a signed value in the order `1 < 2 < … < n < -n < … < -1`.
    #[inline]
    fn key(&self, a: i8) -> i32 {
        if a > 0 {
            a as i32
        } else {
            2 * self.dim() as i32 + 1 + a as i32
        }
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let l = self.one_line();
        let mut len = 0;
        match self.ty {
            LieType::A => {
                for i in 0..l.len() {
                    for j in i + 1..l.len() {
                        len += usize::from(l[i] > l[j]);
                    }
                }
            }
            _ => {
                for i in 0..l.len() {
                    let ki = self.key(l[i]);
                    for j in i + 1..l.len() {
                        len += usize::from(ki > self.key(l[j]));
                        len += usize::from(ki > self.key(-l[j]));
                    }
                    if self.ty != LieType::D && l[i] < 0 {
                        len += 1;
                    }
                }
            }
        }
        len
    }

    /// Image of an ε-vector.
    pub fn apply_eps(&self, eps: &[i8; MAX_DIM]) -> [i8; MAX_DIM] {
        let mut out = [0i8; MAX_DIM];
        for (i, &x) in eps.iter().take(self.dim()).enumerate() {
            if x != 0 {
                let v = self.one_line[i];
                out[v.unsigned_abs() as usize - 1] += if v > 0 { x } else { -x };
            }
        }
        out
    }

    /// `w(β)` for a root `β`.
    pub fn apply(&self, rs: &RootSystem, beta: &Root) -> Root {
        rs.root_from_eps(&self.apply_eps(&beta.eps))
            .expect("Weyl group permutes the roots")
    }

    /// `sgn_{α_i}(w)`: 1 iff `w(α_i)` is negative, i.e. `ℓ(w s_i) < ℓ(w)`.
    pub fn sgn(&self, i: usize) -> u8 {
        let n = self.rank as usize;
        let l = &self.one_line;
        let descent = if i < n || self.ty == LieType::A {
            if self.ty == LieType::A {
                l[i - 1] > l[i]
            } else {
                self.key(l[i - 1]) > self.key(l[i])
            }
        } else {
            match self.ty {
                LieType::B | LieType::C => l[n - 1] < 0,
                LieType::D => self.key(l[n - 2]) > self.key(-l[n - 1]),
                LieType::A => unreachable!(),
            }
        };
        u8::from(descent)
    }

    /// True iff `ℓ(s_i w) < ℓ(w)`.
    pub fn is_left_descent(&self, i: usize) -> bool {
        self.inverse().sgn(i) == 1
    }

    /// Reduced word by repeatedly stripping the smallest left descent.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut word = Vec::new();
        let mut w = *self;
        let n = self.rank as usize;
        'outer: loop {
            let inv = w.inverse();
            for i in 1..=n {
                if inv.sgn(i) == 1 {
                    word.push(i);
                    w = w.left_mul_simple(i);
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// The reflection `s_γ` for a root `γ` of the given system.
    pub fn reflection(rs: &RootSystem, gamma: &Root) -> WeylElement {
        let dim = rs.ambient_dim();
        let mut one_line = [0i8; MAX_DIM];
        for (i, slot) in one_line.iter_mut().take(dim).enumerate() {
            // s_γ(ε_i) = ε_i - (ε_i, γ∨) γ
            let c = gamma.coroot_eps[i] as i32;
            let mut img = [0i32; MAX_DIM];
            img[i] = 1;
            for (t, &g) in img.iter_mut().zip(&gamma.eps) {
                *t -= c * g as i32;
            }
            let (pos, &val) = img
                .iter()
                .enumerate()
                .find(|(_, &x)| x != 0)
                .expect("reflection image is nonzero");
            *slot = if val > 0 { pos as i8 + 1 } else { -(pos as i8 + 1) };
        }
        WeylElement {
            ty: rs.lie_type(),
            rank: rs.rank() as u8,
            one_line,
        }
    }

    pub fn word_string(&self) -> String {
        format_word(&self.reduced_word())
    }

    pub fn one_line_string(&self) -> String {
        let parts: Vec<String> = self.one_line().iter().map(|x| x.to_string()).collect();
        format!("({})", parts.join(","))
    }

    /// Parses either a word `"s1 s2"` (empty or `"id"` for the identity) or a
    /// one-line form `"(2,-1,3)"`.
    pub fn parse(ty: LieType, rank: usize, text: &str) -> Result<Self> {
        let t = text.trim();
        if t.starts_with('(') || t.starts_with('[') {
            let inner = t.trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
            let values = inner
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|e| Error::Parse(format!("{s:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            return WeylElement::from_one_line(ty, rank, &values);
        }
        WeylElement::from_word(ty, rank, &parse_word(t)?)
    }

    /// Is `w` in the parabolic subgroup generated by `mask`?
    pub fn in_subgroup(&self, mask: &[bool]) -> bool {
        self.reduced_word().iter().all(|&i| mask[i - 1])
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_line_string())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.word_string();
        if w.is_empty() {
            write!(f, "id")
        } else {
            write!(f, "{w}")
        }
    }
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_line().serialize(s)
    }
}

/// `"s1 s2 s3"`; also accepts `"s1s2"`, `"1 2 3"`, `"id"` and the empty string.
pub fn parse_word(text: &str) -> Result<Vec<usize>> {
    let t = text.trim();
    if t.is_empty() || t == "id" || t == "e" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for token in t.split(|c: char| c.is_whitespace() || c == ',' || c == 's' || c == '*' || c == '.') {
        if token.is_empty() {
            continue;
        }
        let i = token
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad reflection index {token:?} in {text:?}")))?;
        out.push(i);
    }
    Ok(out)
}

pub fn format_word(word: &[usize]) -> String {
    word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
}

/// Word helper: `s_a s_{a+1} ⋯ s_b` when `a ≤ b`, `s_a s_{a-1} ⋯ s_b` otherwise.
pub fn run(a: usize, b: usize) -> Vec<usize> {
    if a <= b {
        (a..=b).collect()
    } else {
        (b..=a).rev().collect()
    }
}

/// A standard parabolic subgroup `W_P` given by `Δ_P`.
#[derive(Clone, Debug)]
pub struct ParabolicData {
    ty: LieType,
    rank: usize,
    mask: Vec<bool>,
    reps: OnceLock<Vec<WeylElement>>,
}

impl ParabolicData {
    /// `Δ_P` as 1-based simple-root indices.
    pub fn new(ty: LieType, rank: usize, delta_p: &[usize]) -> Result<Self> {
        let mut mask = vec![false; rank];
        for &i in delta_p {
            if i == 0 || i > rank {
                return Err(Error::Index(format!("simple root {i} out of 1..={rank}")));
            }
            mask[i - 1] = true;
        }
        Ok(ParabolicData {
            ty,
            rank,
            mask,
            reps: OnceLock::new(),
        })
    }

    /// `Δ_P = Δ ∖ {α_k}`.
    pub fn maximal(ty: LieType, rank: usize, k: usize) -> Result<Self> {
        let delta: Vec<usize> = (1..=rank).filter(|&i| i != k).collect();
        if k == 0 || k > rank {
            return Err(Error::Index(format!("k = {k} out of 1..={rank}")));
        }
        ParabolicData::new(ty, rank, &delta)
    }

    /// The whole group as `W^P` with `Δ_P = ∅`.
    pub fn borel(ty: LieType, rank: usize) -> Self {
        ParabolicData::new(ty, rank, &[]).expect("empty Δ_P")
    }

    pub fn lie_type(&self) -> LieType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn delta_p(&self) -> Vec<usize> {
        (1..=self.rank).filter(|&i| self.mask[i - 1]).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i - 1]
    }

    /// `w ∈ W^P` iff `w(α) > 0` for every `α ∈ Δ_P`.
    pub fn is_min_rep(&self, w: &WeylElement) -> bool {
        (1..=self.rank).all(|i| !self.mask[i - 1] || w.sgn(i) == 0)
    }

    /// Positive roots supported on `Δ_P`.
    pub fn positive_roots<'a>(&'a self, rs: &'a RootSystem) -> impl Iterator<Item = &'a Root> + 'a {
        rs.positive_roots()
            .iter()
            .filter(move |r| r.coords(self.rank).iter().enumerate().all(|(i, &c)| c == 0 || self.mask[i]))
    }

    /// Minimal coset representatives ordered by (length, one-line).
    pub fn min_coset_reps(&self) -> &[WeylElement] {
        self.reps.get_or_init(|| {
            let mut all = Vec::new();
            let mut level = vec![WeylElement::identity(self.ty, self.rank)];
            while !level.is_empty() {
                all.extend_from_slice(&level);
                let len = level[0].length();
                let mut next = FxHashSet::default();
                for w in &level {
                    for j in 1..=self.rank {
                        let x = w.left_mul_simple(j);
                        if x.length() == len + 1 && self.is_min_rep(&x) {
                            next.insert(x);
                        }
                    }
                }
                let mut next: Vec<WeylElement> = next.into_iter().collect();
                next.sort_unstable_by(|a, b| a.one_line().cmp(b.one_line()));
                level = next;
            }
            all
        })
    }

    /// Representatives of a given length.
    pub fn min_coset_reps_of_length(&self, len: usize) -> impl Iterator<Item = &WeylElement> + '_ {
        let reps = self.min_coset_reps();
        let start = reps.partition_point(|w| w.length() < len);
        reps[start..].iter().take_while(move |w| w.length() == len)
    }

    /// `ω_P`: climb by right multiplication while some `α ∈ Δ_P` is an ascent.
    pub fn longest_element(&self) -> WeylElement {
        let mut w = WeylElement::identity(self.ty, self.rank);
        loop {
            match (1..=self.rank).find(|&i| self.mask[i - 1] && w.sgn(i) == 0) {
                Some(i) => w = w.right_mul_simple(i),
                None => return w,
            }
        }
    }
}

/// `w̄ = ω_P ω_{P'}` characterization: `ℓ(w̄) = ℓ(ω_P) − ℓ(ω_{P'})` and
/// `w̄(α) > 0` for every `α ∈ Δ_{P'}`. `w̄` must lie in `W_P`.
pub fn check_longest_characterization(
    w_bar: &WeylElement,
    pd: &ParabolicData,
    pd_prime: &ParabolicData,
) -> Result<bool> {
    if !w_bar.in_subgroup(pd.mask()) {
        return Err(Error::TypeMismatch(format!("{w_bar} is not in W_P")));
    }
    let target = pd.longest_element().length() - pd_prime.longest_element().length();
    Ok(w_bar.length() == target && pd_prime.delta_p().iter().all(|&i| w_bar.sgn(i) == 0))
}

/// Normal form of `(s_i⋯s_j)(s_r⋯s_m)` inside the type-A subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductRule {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl ProductRule {
    pub fn word(&self) -> Vec<usize> {
        self.left.iter().chain(&self.right).copied().collect()
    }
}

fn ascending(a: usize, b: usize) -> Vec<usize> {
    if a > b {
        Vec::new()
    } else {
        (a..=b).collect()
    }
}

pub fn type_a_product_rule(i: usize, j: usize, r: usize, m: usize) -> Result<ProductRule> {
    if !(1 <= i && i <= j && j <= m && 1 <= r && r <= m) {
        return Err(Error::Index(format!("need 1 ≤ i ≤ j ≤ m and 1 ≤ r ≤ m, got i={i} j={j} r={r} m={m}")));
    }
    let rule = if r >= j + 2 {
        ProductRule {
            left: ascending(r, m),
            right: ascending(i, j),
        }
    } else if r == j + 1 {
        ProductRule {
            left: ascending(i, m),
            right: Vec::new(),
        }
    } else if i <= r {
        ProductRule {
            left: ascending(r + 1, m),
            right: ascending(i, j - 1),
        }
    } else {
        ProductRule {
            left: ascending(r, m),
            right: ascending(i - 1, j - 1),
        }
    };
    Ok(rule)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ty: LieType, n: usize, word: &[usize]) -> WeylElement {
        WeylElement::from_word(ty, n, word).unwrap()
    }

    #[test]
    fn basic_products() {
        let id = WeylElement::identity(LieType::C, 4);
        let s1 = WeylElement::simple(LieType::C, 4, 1);
        assert_eq!(s1.multiply(&s1).unwrap(), id);
        assert_eq!(s1.multiply(&id).unwrap(), s1);
        let a = w(LieType::C, 4, &[1, 2, 3, 4]);
        let b = w(LieType::C, 4, &[4, 3, 2, 1]);
        assert_eq!(a.multiply(&b).unwrap(), id);
        assert!(s1.multiply(&WeylElement::identity(LieType::B, 4)).is_err());
    }

    #[test]
    fn lengths_of_special_words() {
        for ty in [LieType::A, LieType::B, LieType::C] {
            let n = 5;
            for k in 1..=n {
                for p in 1..=k {
                    assert_eq!(w(ty, n, &run(k - p + 1, k)).length(), p);
                }
            }
        }
        let d = w(LieType::D, 4, &[4, 3, 2, 1]);
        assert_eq!(d.length(), 4);
    }

    #[test]
    fn type_c_gamma_reflection() {
        let n = 5;
        let rs = RootSystem::new(LieType::C, n).unwrap();
        for k in 1..=n {
            let mut coords = vec![0; n];
            for c in coords.iter_mut().take(n - 1).skip(k - 1) {
                *c = 2;
            }
            coords[n - 1] = 1;
            let g = rs.root_from_coords(&coords).unwrap();
            let s = WeylElement::reflection(&rs, &g);
            let mut word = run(k, n);
            if k < n {
                word.extend(run(n - 1, k));
            }
            assert_eq!(s, w(LieType::C, n, &word));
            assert_eq!(s.length(), 2 * (n - k) + 1);
            assert!(s.compose(&s).is_identity());
        }
    }

    #[test]
    fn simple_reflections_from_roots() {
        for (t, n) in [(LieType::A, 3), (LieType::B, 3), (LieType::C, 3), (LieType::D, 4)] {
            let rs = RootSystem::new(t, n).unwrap();
            for i in 1..=n {
                assert_eq!(WeylElement::reflection(&rs, rs.simple_root(i)), WeylElement::simple(t, n, i));
                let s = WeylElement::simple(t, n, i);
                assert!(!s.apply(&rs, rs.simple_root(i)).is_positive());
                assert_eq!(s.sgn(i), 1);
            }
        }
    }

    #[test]
    fn identity_properties() {
        let id = WeylElement::identity(LieType::B, 3);
        assert_eq!(id.length(), 0);
        assert!(id.reduced_word().is_empty());
        for i in 1..=3 {
            assert_eq!(id.sgn(i), 0);
        }
        assert_eq!(format!("{id}"), "id");
    }

    #[test]
    fn text_forms() {
        let x = WeylElement::parse(LieType::C, 3, "s1 s2 s3").unwrap();
        let y = WeylElement::parse(LieType::C, 3, &x.one_line_string()).unwrap();
        assert_eq!(x, y);
        let z = WeylElement::parse(LieType::C, 3, &x.word_string()).unwrap();
        assert_eq!(x, z);
        assert!(WeylElement::parse(LieType::D, 3, "(-1,2,3)").is_err());
        assert!(WeylElement::parse(LieType::A, 2, "(1,1,3)").is_err());
        assert_eq!(serde_json::to_string(&x).unwrap(), format!("[{}]", x.one_line().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")));
    }

    #[test]
    fn coset_counts() {
        let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
        for n in 1..=4 {
            for k in 1..=n {
                let pa = ParabolicData::maximal(LieType::A, n, k).unwrap();
                assert_eq!(pa.min_coset_reps().len(), binom(n + 1, k));
                let pc = ParabolicData::maximal(LieType::C, n, k).unwrap();
                assert_eq!(pc.min_coset_reps().len(), (1 << k) * binom(n, k));
            }
        }
        let full = ParabolicData::new(LieType::B, 3, &[1, 2, 3]).unwrap();
        assert_eq!(full.min_coset_reps().len(), 1);
    }

    #[test]
    fn longest_elements() {
        let pd = ParabolicData::new(LieType::C, 3, &[]).unwrap();
        assert!(pd.longest_element().is_identity());
        let rs = RootSystem::new(LieType::C, 4).unwrap();
        for k in 1..=4 {
            let pd = ParabolicData::maximal(LieType::C, 4, k).unwrap();
            let wp = pd.longest_element();
            assert_eq!(wp.length(), pd.positive_roots(&rs).count());
        }
    }

    #[test]
    fn product_rule_cases() {
        let r = type_a_product_rule(1, 2, 3, 4).unwrap();
        assert_eq!(r.word(), vec![1, 2, 3, 4]);
        let r = type_a_product_rule(1, 1, 3, 4).unwrap();
        assert_eq!((r.left.clone(), r.right.clone()), (vec![3, 4], vec![1]));
        let r = type_a_product_rule(2, 3, 2, 4).unwrap();
        assert_eq!((r.left.clone(), r.right.clone()), (vec![3, 4], vec![2]));
        assert!(type_a_product_rule(3, 2, 1, 4).is_err());
    }
}
