//! Braid words, block partitions and the mixed braid group `B_{n,Λ}`.
//!
//! Strand positions and generator indices are 1-based throughout, matching
//! the usual `σ_1, …, σ_{n-1}` naming.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BraidError {
    #[error("partition must have at least one block")]
    EmptyPartition,
    #[error("block sizes must be positive")]
    EmptyBlock,
    #[error("generator {0} is out of range")]
    OutOfRange(String),
    #[error("σ_{0} swaps two blocks and is not a mixed generator")]
    NotMixedGenerator(usize),
    #[error("word does not preserve the blocks")]
    NotColorPreserving,
    #[error("relations are only listed for two blocks, got {0}")]
    NotTwoBlocks(usize),
    #[error("cannot parse braid word: {0}")]
    Parse(String),
}

/// Partition `Λ = (n_1, …, n_m)` of `n` into consecutive blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct MixedBraidSpec {
    parts: Vec<usize>,
    bounds: Vec<usize>,
}

impl TryFrom<Vec<usize>> for MixedBraidSpec {
    type Error = BraidError;
    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        MixedBraidSpec::new(parts)
    }
}

impl From<MixedBraidSpec> for Vec<usize> {
    fn from(s: MixedBraidSpec) -> Self {
        s.parts
    }
}

impl MixedBraidSpec {
    pub fn new(parts: Vec<usize>) -> Result<Self, BraidError> {
        if parts.is_empty() {
            return Err(BraidError::EmptyPartition);
        }
        if parts.contains(&0) {
            return Err(BraidError::EmptyBlock);
        }
        let mut bounds = vec![0];
        for &p in &parts {
            bounds.push(bounds.last().unwrap() + p);
        }
        Ok(MixedBraidSpec { parts, bounds })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        *self.bounds.last().unwrap()
    }

    pub fn m(&self) -> usize {
        self.parts.len()
    }

    /// `h_j = n_1 + … + n_j`, with `h_0 = 0`.
    pub fn boundary(&self, j: usize) -> usize {
        self.bounds[j]
    }

    /// Block of strand position `i`: the `j` with `h_{j-1} < i ≤ h_j`.
    pub fn color_of(&self, i: usize) -> usize {
        assert!(i >= 1 && i <= self.n(), "position {i} out of range");
        self.bounds.partition_point(|&h| h < i)
    }

    /// Block of each position `1..=n`, as a vector indexed from zero.
    pub fn colors(&self) -> Vec<usize> {
        (1..=self.n()).map(|i| self.color_of(i)).collect()
    }

    /// True when `i` is an interior boundary `h_j` with `j < m`.
    pub fn is_boundary(&self, i: usize) -> bool {
        self.bounds[1..self.m()].contains(&i)
    }

    /// The generators `σ_i` (`i ≠ h_j`) and `A_{j,k}` (`j < k`).
    pub fn generators(&self) -> Vec<Generator> {
        let mut out: Vec<Generator> =
            (1..self.n()).filter(|&i| !self.is_boundary(i)).map(Generator::Sigma).collect();
        for j in 1..=self.m() {
            for k in j + 1..=self.m() {
                out.push(Generator::A(j, k));
            }
        }
        out
    }

    pub fn check_generator(&self, g: Generator, raw: bool) -> Result<(), BraidError> {
        match g {
            Generator::Sigma(i) => {
                if i == 0 || i >= self.n() {
                    return Err(BraidError::OutOfRange(g.to_string()));
                }
                if !raw && self.is_boundary(i) {
                    return Err(BraidError::NotMixedGenerator(i));
                }
            }
            Generator::A(j, k) => {
                if j == 0 || j >= k || k > self.m() {
                    return Err(BraidError::OutOfRange(g.to_string()));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for MixedBraidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Sigma(usize),
    A(usize, usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Sigma(i) => write!(f, "s{i}"),
            Generator::A(j, k) => write!(f, "A{j},{k}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: Generator,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: Generator) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn exponent(self) -> i32 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.gen)
        } else {
            write!(f, "{}", self.gen)
        }
    }
}

/// A word in braid generators. Mixed words use only `B_{n,Λ}` generators;
/// raw words may use any `σ_i` of `B_n` as well.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct BraidWord {
    pub letters: Vec<Letter>,
    pub raw: bool,
}

pub fn s(i: usize) -> Letter {
    Letter::new(Generator::Sigma(i))
}

pub fn a(j: usize, k: usize) -> Letter {
    Letter::new(Generator::A(j, k))
}

impl BraidWord {
    pub fn mixed(letters: Vec<Letter>) -> Self {
        BraidWord { letters, raw: false }
    }

    pub fn raw(letters: Vec<Letter>) -> Self {
        BraidWord { letters, raw: true }
    }

    pub fn identity() -> Self {
        BraidWord::default()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters, raw: self.raw || other.raw }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { letters: self.letters.iter().rev().map(|l| l.inv()).collect(), raw: self.raw }
    }

    pub fn pow(&self, e: usize) -> BraidWord {
        let mut out = BraidWord { letters: Vec::with_capacity(self.len() * e), raw: self.raw };
        for _ in 0..e {
            out.letters.extend_from_slice(&self.letters);
        }
        out
    }

    /// Cancels adjacent `g g^{-1}` pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last().is_some_and(|&p| p.gen == l.gen && p.inverse != l.inverse) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { letters: out, raw: self.raw }
    }

    /// Rewrites every `A_{j,k}` as its `σ` expansion; the result is raw.
    pub fn to_raw(&self, spec: &MixedBraidSpec) -> BraidWord {
        let mut letters = Vec::new();
        for &l in &self.letters {
            match l.gen {
                Generator::Sigma(_) => letters.push(l),
                Generator::A(j, k) => {
                    let e = expand_a(j, k, spec);
                    let e = if l.inverse { e.inverse() } else { e };
                    letters.extend(e.letters);
                }
            }
        }
        BraidWord::raw(letters)
    }

    /// Checks indices, and for mixed words that no `σ_{h_j}` occurs.
    pub fn validate(&self, spec: &MixedBraidSpec) -> Result<(), BraidError> {
        for l in &self.letters {
            spec.check_generator(l.gen, self.raw)?;
        }
        Ok(())
    }

    /// Parses whitespace-separated tokens `s3`, `s3^-1`, `A1,2`, `A1,2^-1`.
    pub fn parse(text: &str, raw: bool) -> Result<BraidWord, BraidError> {
        let letters = text.split_whitespace().map(parse_letter).collect::<Result<Vec<_>, _>>()?;
        Ok(BraidWord { letters, raw })
    }
}

fn parse_letter(tok: &str) -> Result<Letter, BraidError> {
    let err = || BraidError::Parse(tok.to_string());
    let (body, inverse) = match tok.split_once('^') {
        Some((b, "-1")) => (b, true),
        Some((b, "1")) => (b, false),
        Some(_) => return Err(err()),
        None => (tok, false),
    };
    let gen = if let Some(i) = body.strip_prefix('s') {
        Generator::Sigma(i.parse().map_err(|_| err())?)
    } else if let Some(jk) = body.strip_prefix('A') {
        let (j, k) = jk.split_once(',').ok_or_else(err)?;
        Generator::A(j.parse().map_err(|_| err())?, k.parse().map_err(|_| err())?)
    } else {
        return Err(err());
    };
    Ok(Letter { gen, inverse })
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", toks.join(" "))
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BraidWord::parse(s, false)
    }
}

/// Bijection of `1..=n`, stored as the image list `images[i-1] = p(i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return None;
            }
            seen[x - 1] = true;
        }
        Some(Permutation { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        p
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i + 1)
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&x| self.images[x - 1]).collect() }
    }

    /// Cycle notation, fixed points omitted, e.g. `(1 2)(3 5 4)`.
    pub fn cycles(&self) -> String {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 1..=n {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start - 1] = true;
            let mut x = self.apply(start);
            while x != start {
                seen[x - 1] = true;
                cyc.push(x);
                x = self.apply(x);
            }
            let parts: Vec<String> = cyc.iter().map(|c| c.to_string()).collect();
            out.push_str(&format!("({})", parts.join(" ")));
        }
        if out.is_empty() {
            "()".to_string()
        } else {
            out
        }
    }
}

/// `Φ(w)`: the product of the transpositions `(i, i+1)` of the `σ` letters.
/// `A_{j,k}` letters are pure and contribute nothing. `Φ(uv) = Φ(u) ∘ Φ(v)`.
pub fn underlying_permutation(w: &BraidWord, spec: &MixedBraidSpec) -> Permutation {
    let n = spec.n();
    let mut p = Permutation::identity(n);
    for l in &w.letters {
        if let Generator::Sigma(i) = l.gen {
            p.images.swap(i - 1, i);
        }
    }
    p
}

/// True iff `Φ(w)` maps every block onto itself.
pub fn is_mixed(w: &BraidWord, spec: &MixedBraidSpec) -> bool {
    let p = underlying_permutation(w, spec);
    (1..=spec.n()).all(|i| spec.color_of(p.apply(i)) == spec.color_of(i))
}

/// `(σ_{h_{k-1}} ⋯ σ_{h_j+1}) σ_{h_j}^2 (σ_{h_{k-1}} ⋯ σ_{h_j+1})^{-1}` as a raw word.
pub fn expand_a(j: usize, k: usize, spec: &MixedBraidSpec) -> BraidWord {
    assert!(1 <= j && j < k && k <= spec.m(), "A_{{{j},{k}}} out of range");
    let hj = spec.boundary(j);
    let hk1 = spec.boundary(k - 1);
    let conj: Vec<Letter> = (hj + 1..=hk1).rev().map(s).collect();
    let mut letters = conj.clone();
    letters.push(s(hj));
    letters.push(s(hj));
    letters.extend(conj.iter().rev().map(|l| l.inv()));
    BraidWord::raw(letters)
}

/// The full twist `(σ_1 ⋯ σ_{n-1})^n` as a raw word.
pub fn tau_word(spec: &MixedBraidSpec) -> BraidWord {
    let n = spec.n();
    let row: Vec<Letter> = (1..n).map(s).collect();
    BraidWord::raw(row).pow(n)
}

fn w(letters: &[Letter]) -> BraidWord {
    BraidWord::mixed(letters.to_vec())
}

/// Relations of `B_{n,Λ}` for a two-block partition, as pairs of words with
/// equal images.
pub fn relations_m2(spec: &MixedBraidSpec) -> Result<Vec<(BraidWord, BraidWord)>, BraidError> {
    if spec.m() != 2 {
        return Err(BraidError::NotTwoBlocks(spec.m()));
    }
    Ok(block_pair_relations(spec, 1))
}

/// The two-block relation schema for blocks `j`, `j+1` with `A = A_{j,j+1}`,
/// restricted to the `σ` generators of those two blocks.
fn block_pair_relations(spec: &MixedBraidSpec, j: usize) -> Vec<(BraidWord, BraidWord)> {
    let h = spec.boundary(j);
    let lo = spec.boundary(j - 1) + 1;
    let hi = spec.boundary(j + 1) - 1;
    let sig: Vec<usize> = (lo..=hi).filter(|&i| i != h).collect();
    let aa = a(j, j + 1);
    let mut out = Vec::new();
    for &x in &sig {
        for &y in &sig {
            if x + 1 < y {
                out.push((w(&[s(x), s(y)]), w(&[s(y), s(x)])));
            }
        }
    }
    for &x in &sig {
        if sig.contains(&(x + 1)) {
            out.push((w(&[s(x), s(x + 1), s(x)]), w(&[s(x + 1), s(x), s(x + 1)])));
        }
    }
    for &x in &sig {
        if x + 1 != h && x != h + 1 {
            out.push((w(&[s(x), aa]), w(&[aa, s(x)])));
        }
    }
    for x in [h.wrapping_sub(1), h + 1] {
        if sig.contains(&x) {
            out.push((w(&[s(x), aa, s(x), aa]), w(&[aa, s(x), aa, s(x)])));
        }
    }
    if sig.contains(&(h.wrapping_sub(1))) && sig.contains(&(h + 1)) {
        let left = [s(h - 1), aa, s(h - 1).inv()];
        let right = [s(h + 1), aa, s(h + 1).inv()];
        let lr: Vec<Letter> = left.iter().chain(right.iter()).copied().collect();
        let rl: Vec<Letter> = right.iter().chain(left.iter()).copied().collect();
        out.push((w(&lr), w(&rl)));
    }
    out
}

/// Strand positions touched by a generator's `σ` expansion.
fn support(g: Generator, spec: &MixedBraidSpec) -> (usize, usize) {
    match g {
        Generator::Sigma(i) => (i, i + 1),
        Generator::A(j, k) => (spec.boundary(j), spec.boundary(k - 1) + 1),
    }
}

/// Relation instances valid for any number of blocks: the two-block schema
/// for every consecutive pair of blocks (the braid relations when there is
/// one block), plus commutation of generators acting on disjoint strands.
pub fn relations_general(spec: &MixedBraidSpec) -> Vec<(BraidWord, BraidWord)> {
    let mut out = Vec::new();
    for j in 1..spec.m() {
        out.extend(block_pair_relations(spec, j));
    }
    if spec.m() == 1 {
        for x in 1..spec.n().saturating_sub(1) {
            out.push((w(&[s(x), s(x + 1), s(x)]), w(&[s(x + 1), s(x), s(x + 1)])));
        }
    }
    let gens = spec.generators();
    for (x, &g) in gens.iter().enumerate() {
        for &h in &gens[x + 1..] {
            let (a0, a1) = support(g, spec);
            let (b0, b1) = support(h, spec);
            if a1 < b0 || b1 < a0 {
                let pair = (w(&[Letter::new(g), Letter::new(h)]), w(&[Letter::new(h), Letter::new(g)]));
                if !out.contains(&pair) {
                    out.push(pair);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: &[usize]) -> MixedBraidSpec {
        MixedBraidSpec::new(p.to_vec()).unwrap()
    }

    #[test]
    fn boundaries_and_colors() {
        let sp = spec(&[2, 3, 1]);
        assert_eq!(sp.n(), 6);
        assert_eq!((sp.boundary(0), sp.boundary(1), sp.boundary(2), sp.boundary(3)), (0, 2, 5, 6));
        assert_eq!(sp.colors(), vec![1, 1, 2, 2, 2, 3]);
        assert!(MixedBraidSpec::new(vec![]).is_err());
        assert!(MixedBraidSpec::new(vec![2, 0]).is_err());
    }

    #[test]
    fn permutation_examples() {
        let sp = spec(&[3]);
        let p = underlying_permutation(&w(&[s(1)]), &sp);
        assert_eq!(p, Permutation::transposition(3, 1, 2));
        assert_eq!(p.cycles(), "(1 2)");
        let l = underlying_permutation(&w(&[s(1), s(2), s(1)]), &sp);
        let r = underlying_permutation(&w(&[s(2), s(1), s(2)]), &sp);
        assert_eq!(l, r);
        assert!(underlying_permutation(&w(&[a(1, 2)]), &spec(&[2, 2])).is_identity());
    }

    #[test]
    fn mixedness() {
        let sp = spec(&[2, 2]);
        assert!(!is_mixed(&BraidWord::raw(vec![s(2)]), &sp));
        assert!(is_mixed(&BraidWord::raw(vec![s(2), s(2)]), &sp));
        for g in sp.generators() {
            assert!(is_mixed(&w(&[Letter::new(g)]), &sp));
        }
    }

    #[test]
    fn expansions() {
        assert_eq!(expand_a(1, 2, &spec(&[2, 2])), BraidWord::raw(vec![s(2), s(2)]));
        assert_eq!(expand_a(1, 3, &spec(&[1, 1, 1])), BraidWord::raw(vec![s(2), s(1), s(1), s(2).inv()]));
        let sp = spec(&[2, 1, 3, 1]);
        for j in 1..=4 {
            for k in j + 1..=4 {
                let e = expand_a(j, k, &sp);
                assert!(underlying_permutation(&e, &sp).is_identity());
                assert!(is_mixed(&e, &sp));
            }
        }
    }

    #[test]
    fn full_twist() {
        assert_eq!(tau_word(&spec(&[2])), BraidWord::raw(vec![s(1), s(1)]));
        assert_eq!(tau_word(&spec(&[3])), BraidWord::raw(vec![s(1), s(2)]).pow(3));
        let sp = spec(&[2, 3]);
        assert_eq!(tau_word(&sp).len(), 20);
        assert!(underlying_permutation(&tau_word(&sp), &sp).is_identity());
    }

    #[test]
    fn two_block_relations() {
        let rels = relations_m2(&spec(&[2, 2])).unwrap();
        let target = (w(&[s(1), a(1, 2), s(1), a(1, 2)]), w(&[a(1, 2), s(1), a(1, 2), s(1)]));
        assert!(rels.contains(&target));
        assert!(relations_m2(&spec(&[1, 1])).unwrap().is_empty());
        let rels = relations_m2(&spec(&[3, 3])).unwrap();
        assert!(rels.contains(&(w(&[s(1), s(2), s(1)]), w(&[s(2), s(1), s(2)]))));
        assert!(relations_m2(&spec(&[1, 1, 1])).is_err());
        // both conjugates exist only when blocks have at least two strands
        let rels = relations_m2(&spec(&[2, 3])).unwrap();
        assert!(rels.iter().any(|(l, _)| l.len() == 6));
    }

    #[test]
    fn word_text_round_trip() {
        let wd: BraidWord = "s3 s3^-1 A1,2 A1,2^-1".parse().unwrap();
        assert_eq!(wd.to_string(), "s3 s3^-1 A1,2 A1,2^-1");
        assert!(wd.free_reduce().is_empty());
        assert!("x3".parse::<BraidWord>().is_err());
        assert!("s3^2".parse::<BraidWord>().is_err());
    }

    #[test]
    fn validation() {
        let sp = spec(&[2, 2]);
        assert_eq!(w(&[s(2)]).validate(&sp), Err(BraidError::NotMixedGenerator(2)));
        assert!(BraidWord::raw(vec![s(2)]).validate(&sp).is_ok());
        assert!(w(&[s(4)]).validate(&sp).is_err());
        assert!(w(&[a(2, 1)]).validate(&sp).is_err());
    }
}
