//! Abelian covers of the sphere: deck group, ramification at infinity,
//! genus, eigenspace dimensions and the signature of the intersection form
//! on each eigenspace.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::braid::{BraidError, MixedBraidSpec};
use crate::cyclotomic::{lcm_u32, CycNum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoverError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("expected {expected} degrees, got {got}")]
    DegreeCount { expected: usize, got: usize },
    #[error("degree {0} is below 2")]
    DegreeTooSmall(u32),
    #[error("expected {expected} character exponents, got {got}")]
    ExponentCount { expected: usize, got: usize },
    #[error("exponent k_{j} = {k} is outside 0..{d}")]
    ExponentRange { j: usize, k: u32, d: u32 },
    #[error("character is not primed: some ρ_j = 1")]
    NotPrimed,
    #[error("genus formula produced a non-integral or negative value {0}")]
    GenusNotIntegral(String),
    #[error("ramification order must exceed the index, got ν = {nu}, j = {j}")]
    NpTermRange { nu: u32, j: u32 },
}

/// Partition together with the deck group `Z/d_1 × ⋯ × Z/d_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoverSpec {
    pub spec: MixedBraidSpec,
    degrees: Vec<u32>,
}

impl CoverSpec {
    pub fn new(parts: Vec<usize>, degrees: Vec<u32>) -> Result<Self, CoverError> {
        let spec = MixedBraidSpec::new(parts)?;
        Self::from_spec(spec, degrees)
    }

    pub fn from_spec(spec: MixedBraidSpec, degrees: Vec<u32>) -> Result<Self, CoverError> {
        if degrees.len() != spec.m() {
            return Err(CoverError::DegreeCount { expected: spec.m(), got: degrees.len() });
        }
        if let Some(&d) = degrees.iter().find(|&&d| d < 2) {
            return Err(CoverError::DegreeTooSmall(d));
        }
        Ok(CoverSpec { spec, degrees })
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn parts(&self) -> &[usize] {
        self.spec.parts()
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn m(&self) -> usize {
        self.spec.m()
    }

    /// `|Γ| = Π d_j`.
    pub fn group_order(&self) -> BigUint {
        self.degrees.iter().map(|&d| BigUint::from(d)).product()
    }

    /// `lcm(d_1, …, d_m)`, the conductor of every `ρ_j`.
    pub fn degree_lcm(&self) -> u32 {
        self.degrees.iter().fold(1, |acc, &d| lcm_u32(acc, d))
    }

    /// Conductor used for Gram matrices: `lcm(4, d_1, …, d_m)`.
    pub fn gram_conductor(&self) -> u32 {
        lcm_u32(4, self.degree_lcm())
    }
}

impl std::fmt::Display for CoverSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let d: Vec<String> = self.degrees.iter().map(|x| x.to_string()).collect();
        write!(f, "Λ={} d=({})", self.spec, d.join(","))
    }
}

/// Character `ρ = (ρ_1, …, ρ_m)` with `ρ_j = ζ_{d_j}^{-k_j}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Character {
    exps: Vec<u32>,
}

impl Character {
    pub fn new(c: &CoverSpec, exps: Vec<u32>) -> Result<Self, CoverError> {
        if exps.len() != c.m() {
            return Err(CoverError::ExponentCount { expected: c.m(), got: exps.len() });
        }
        for (j, (&k, &d)) in exps.iter().zip(c.degrees()).enumerate() {
            if k >= d {
                return Err(CoverError::ExponentRange { j: j + 1, k, d });
            }
        }
        Ok(Character { exps })
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// `ρ_j` for a 1-based block index.
    pub fn rho(&self, c: &CoverSpec, j: usize) -> CycNum {
        CycNum::root_of_unity(c.degrees()[j - 1], -(self.exps[j - 1] as i64)).unwrap()
    }

    /// All `ρ_j`, indexed from zero.
    pub fn rhos(&self, c: &CoverSpec) -> Vec<CycNum> {
        (1..=c.m()).map(|j| self.rho(c, j)).collect()
    }

    /// Evaluation point `t_j ↦ ρ_j` as `(d_j, -k_j)` pairs.
    pub fn point(&self, c: &CoverSpec) -> Vec<(u32, i64)> {
        c.degrees().iter().zip(&self.exps).map(|(&d, &k)| (d, -(k as i64))).collect()
    }

    /// Evaluation point `t_j ↦ ρ̄_j`.
    pub fn conj_point(&self, c: &CoverSpec) -> Vec<(u32, i64)> {
        c.degrees().iter().zip(&self.exps).map(|(&d, &k)| (d, k as i64)).collect()
    }

    /// Exponent of `ρ_j` as the fraction `k_j/d_j` (so `ρ_j = e^{-2πi k_j/d_j}`).
    fn frac(&self, c: &CoverSpec, j: usize) -> (u64, u64) {
        (self.exps[j] as u64, c.degrees()[j] as u64)
    }

    /// Every `ρ_j ≠ 1`.
    pub fn is_primed(&self) -> bool {
        self.exps.iter().all(|&k| k != 0)
    }

    fn product_is_one(&self, c: &CoverSpec, j: usize, k: usize) -> bool {
        let (a, b) = self.frac(c, j);
        let (x, y) = self.frac(c, k);
        (a * y + x * b) % (b * y) == 0
    }

    /// `ρ_j ρ_k ≠ 1` for all `j, k`, including `j = k`.
    pub fn is_nondegenerate(&self, c: &CoverSpec) -> bool {
        let m = c.m();
        (0..m).all(|j| (j..m).all(|k| !self.product_is_one(c, j, k)))
    }

    /// The weaker condition under which every generator is a well-defined
    /// reflection: `ρ_j ρ_k ≠ 1` for `j < k`, and `ρ_j ≠ -1` only for blocks
    /// that carry a `σ` generator (`n_j ≥ 2`).
    pub fn reflections_defined(&self, c: &CoverSpec) -> bool {
        let m = c.m();
        self.is_primed()
            && (0..m).all(|j| (j + 1..m).all(|k| !self.product_is_one(c, j, k)))
            && (0..m).all(|j| c.parts()[j] < 2 || !self.product_is_one(c, j, j))
    }

    /// `Π ρ_j^{n_j} = 1`, i.e. `Σ n_j k_j / d_j ∈ Z`.
    pub fn total_product_is_one(&self, c: &CoverSpec) -> bool {
        let l = c.degree_lcm() as u64;
        let s: u64 = (0..c.m())
            .map(|j| c.parts()[j] as u64 * self.exps[j] as u64 * (l / c.degrees()[j] as u64))
            .sum();
        s % l == 0
    }

    /// `Π ρ_j^{n_j}` as a cyclotomic number.
    pub fn total_product(&self, c: &CoverSpec) -> CycNum {
        let l = c.degree_lcm();
        let e: i64 = (0..c.m())
            .map(|j| -((c.parts()[j] as i64) * self.exps[j] as i64 * (l / c.degrees()[j]) as i64))
            .sum();
        CycNum::root_of_unity(l, e).unwrap()
    }
}

/// `f = ord(n_1T_1 + … + n_mT_m)` in `Γ` and `e = |Γ|/f`.
pub fn infinity_order(c: &CoverSpec) -> (u64, BigUint) {
    let f = c
        .degrees()
        .iter()
        .zip(c.parts())
        .fold(1u64, |acc, (&d, &n)| acc.lcm(&(d as u64 / (d as u64).gcd(&(n as u64)))));
    let e = c.group_order() / BigUint::from(f);
    (f, e)
}

/// Genus of the cover by Riemann–Hurwitz:
/// `g = ½(|Γ|(n−1) − |Γ|Σ n_j/d_j − e) + 1`.
pub fn genus(c: &CoverSpec) -> Result<BigUint, CoverError> {
    let order = BigRational::from_integer(BigInt::from(c.group_order()));
    let (_, e) = infinity_order(c);
    let e = BigRational::from_integer(BigInt::from(e));
    let n = BigRational::from_integer(BigInt::from(c.n() as u64));
    let sum: BigRational = c
        .parts()
        .iter()
        .zip(c.degrees())
        .map(|(&nj, &dj)| BigRational::new(BigInt::from(nj), BigInt::from(dj)))
        .fold(BigRational::zero(), |a, b| a + b);
    let two = BigRational::from_integer(BigInt::from(2));
    let g = (&order * (n - BigRational::one()) - &order * sum - e) / two + BigRational::one();
    if !g.is_integer() || g.is_negative() {
        return Err(CoverError::GenusNotIntegral(g.to_string()));
    }
    Ok(g.to_integer().to_biguint().unwrap())
}

/// `dim H¹(X)_ρ` from exponents alone; allocation-free for sweeps.
pub fn eigenspace_dim_exps(parts: &[usize], degrees: &[u32], exps: &[u32]) -> usize {
    if exps.iter().all(|&k| k == 0) {
        return 0;
    }
    let n: usize = parts.iter().sum();
    let trivial_blocks: usize = parts.iter().zip(exps).filter(|(_, &k)| k == 0).map(|(&p, _)| p).sum();
    // Σ n_j k_j / d_j ∈ Z, accumulated as an exact fraction
    let (mut num, mut den) = (0u64, 1u64);
    for ((&p, &d), &k) in parts.iter().zip(degrees).zip(exps) {
        let (a, b) = (p as u64 * k as u64, d as u64);
        num = num * b + a * den;
        den *= b;
        let g = num.gcd(&den);
        num /= g;
        den /= g;
    }
    let total_trivial = usize::from(den == 1);
    (n - 1) - trivial_blocks - total_trivial
}

/// `dim H¹(X)_ρ = (n−1) − Σ_j δ(ρ_j)n_j − δ(Πρ_j^{n_j})`, and 0 for the trivial
/// character.
pub fn eigenspace_dim(c: &CoverSpec, rho: &Character) -> usize {
    eigenspace_dim_exps(c.parts(), c.degrees(), rho.exps())
}

fn ceil(q: &BigRational) -> i64 {
    q.ceil().to_integer().to_i64().expect("small signature")
}

/// `(r, s)` with `r = ⌈Σ n_jk_j/d_j − 1⌉`, `s = ⌈n − 1 − Σ n_jk_j/d_j⌉`.
pub fn chevalley_weil_signature(c: &CoverSpec, rho: &Character) -> Result<(usize, usize), CoverError> {
    if !rho.is_primed() {
        return Err(CoverError::NotPrimed);
    }
    let sum = weighted_exponent_sum(c, rho);
    let one = BigRational::one();
    let n = BigRational::from_integer(BigInt::from(c.n() as u64));
    let r = ceil(&(&sum - &one));
    let s = ceil(&(n - one - sum));
    Ok((r.max(0) as usize, s.max(0) as usize))
}

/// `Σ_j n_j k_j / d_j`.
pub fn weighted_exponent_sum(c: &CoverSpec, rho: &Character) -> BigRational {
    c.parts()
        .iter()
        .zip(c.degrees())
        .zip(rho.exps())
        .map(|((&n, &d), &k)| BigRational::new(BigInt::from(n as u64 * k as u64), BigInt::from(d)))
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Weight `1 − j/ν` of the eigenvalue `ζ_ν^j` at a branch point of order
/// `ν`; the trivial eigenvalue contributes nothing.
pub fn np_term(nu: u32, j: u32) -> Result<BigRational, CoverError> {
    if nu == 0 || j >= nu {
        return Err(CoverError::NpTermRange { nu, j });
    }
    if j == 0 {
        return Ok(BigRational::zero());
    }
    Ok(BigRational::one() - BigRational::new(BigInt::from(j), BigInt::from(nu)))
}

/// `Σ_ρ dim H¹(X)_ρ` over every character, streamed without allocating per
/// character. Tracks `Σ n_jk_j·(L/d_j) mod L` and the size of the trivial
/// blocks while the exponents run through an odometer.
pub fn total_eigenspace_dim(c: &CoverSpec) -> u64 {
    let parts = c.parts();
    let degrees = c.degrees();
    let m = parts.len();
    let l = c.degree_lcm() as u64;
    let weights: Vec<u64> = parts.iter().zip(degrees).map(|(&p, &d)| (p as u64 * (l / d as u64)) % l).collect();
    let n = c.n() as u64;
    let mut exps = vec![0u32; m];
    let mut sum = 0u64;
    let mut trivial = n;
    let mut zeros = m;
    let mut total = 0u64;
    loop {
        if zeros < m {
            total += n - 1 - trivial - u64::from(sum == 0);
        }
        let mut j = 0;
        loop {
            if j == m {
                return total;
            }
            exps[j] += 1;
            sum = (sum + weights[j]) % l;
            if exps[j] == 1 {
                trivial -= parts[j] as u64;
                zeros -= 1;
            }
            if exps[j] < degrees[j] {
                break;
            }
            exps[j] = 0;
            trivial += parts[j] as u64;
            zeros += 1;
            j += 1;
        }
    }
}

/// Every character of `Γ`, in lexicographic order of exponents.
pub fn all_characters(c: &CoverSpec) -> impl Iterator<Item = Character> + '_ {
    let total: u64 = c.degrees().iter().map(|&d| d as u64).product();
    (0..total).map(move |mut idx| {
        let mut exps = vec![0u32; c.m()];
        for j in (0..c.m()).rev() {
            let d = c.degrees()[j] as u64;
            exps[j] = (idx % d) as u32;
            idx /= d;
        }
        Character { exps }
    })
}

/// The `Π (d_j − 1)` primed characters.
pub fn primed_characters(c: &CoverSpec) -> impl Iterator<Item = Character> + '_ {
    all_characters(c).filter(Character::is_primed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cover(p: &[usize], d: &[u32]) -> CoverSpec {
        CoverSpec::new(p.to_vec(), d.to_vec()).unwrap()
    }

    fn chi(c: &CoverSpec, k: &[u32]) -> Character {
        Character::new(c, k.to_vec()).unwrap()
    }

    #[test]
    fn infinity_orders() {
        assert_eq!(infinity_order(&cover(&[2, 2], &[3, 5])), (15, BigUint::from(1u32)));
        assert_eq!(infinity_order(&cover(&[4], &[4])), (1, BigUint::from(4u32)));
        assert_eq!(infinity_order(&cover(&[1], &[2])), (2, BigUint::from(1u32)));
    }

    #[test]
    fn streamed_betti_sum_matches_per_character() {
        for (p, d) in [(vec![2, 2], vec![3, 5]), (vec![1, 2, 1], vec![2, 4, 6]), (vec![3], vec![6]), (vec![1], vec![2])] {
            let c = cover(&p, &d);
            let direct: u64 = all_characters(&c).map(|r| eigenspace_dim(&c, &r) as u64).sum();
            assert_eq!(total_eigenspace_dim(&c), direct);
        }
    }

    #[test]
    fn genera() {
        assert_eq!(genus(&cover(&[2, 2], &[3, 5])).unwrap(), BigUint::from(15u32));
        assert_eq!(genus(&cover(&[2], &[2])).unwrap(), BigUint::from(0u32));
        assert_eq!(genus(&cover(&[3], &[2])).unwrap(), BigUint::from(1u32));
    }

    #[test]
    fn eigenspace_dims() {
        let c = cover(&[2, 2], &[3, 5]);
        assert_eq!(eigenspace_dim(&c, &chi(&c, &[2, 4])), 3);
        assert_eq!(eigenspace_dim(&c, &chi(&c, &[0, 0])), 0);
        let c = cover(&[2], &[2]);
        assert_eq!(eigenspace_dim(&c, &chi(&c, &[1])), 0);
    }

    #[test]
    fn signatures() {
        let c = cover(&[2, 2], &[3, 5]);
        assert_eq!(chevalley_weil_signature(&c, &chi(&c, &[2, 4])), Ok((2, 1)));
        assert_eq!(chevalley_weil_signature(&c, &chi(&c, &[0, 4])), Err(CoverError::NotPrimed));
        for n in [2usize, 4, 6, 8] {
            let c = cover(&[n], &[2]);
            let h = n / 2 - 1;
            assert_eq!(chevalley_weil_signature(&c, &chi(&c, &[1])), Ok((h, h)));
        }
    }

    #[test]
    fn np_terms() {
        let q = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(np_term(3, 1), Ok(q(2, 3)));
        assert_eq!(np_term(7, 0), Ok(q(0, 1)));
        assert_eq!(np_term(5, 4), Ok(q(1, 5)));
        assert!(np_term(5, 5).is_err());
    }

    #[test]
    fn predicates() {
        let c = cover(&[2, 2], &[3, 5]);
        let r = chi(&c, &[2, 4]);
        assert!(r.is_primed() && r.is_nondegenerate(&c) && !r.total_product_is_one(&c));
        assert_eq!(r.rho(&c, 1), CycNum::root_of_unity(3, 1).unwrap());
        assert_eq!(r.rho(&c, 2), CycNum::root_of_unity(5, 1).unwrap());
        let c = cover(&[1, 1], &[3, 3]);
        assert!(!chi(&c, &[1, 2]).is_nondegenerate(&c));
        let c = cover(&[1, 1], &[2, 3]);
        let r = chi(&c, &[1, 1]);
        assert!(!r.is_nondegenerate(&c));
        assert!(r.reflections_defined(&c));
        let c = cover(&[3], &[3]);
        assert!(chi(&c, &[1]).total_product_is_one(&c));
        assert_eq!(chi(&c, &[1]).total_product(&c), CycNum::one());
    }

    #[test]
    fn character_counts() {
        let c = cover(&[2, 1, 1], &[3, 4, 2]);
        assert_eq!(all_characters(&c).count(), 24);
        assert_eq!(primed_characters(&c).count(), 6);
        assert!(Character::new(&c, vec![3, 0, 0]).is_err());
        assert!(CoverSpec::new(vec![1, 1], vec![2]).is_err());
        assert!(CoverSpec::new(vec![1], vec![1]).is_err());
    }
}
