//! The intersection form on an eigenspace and the monodromy representation
//! `θ_ρ` of the mixed braid group, with its verification predicates.
//!
//! Coordinates are columns over the spanning classes `ω_1, …, ω_{n-1}`. The
//! form is `h(u, v) = uᵀ M v̄`, so `A` preserves it iff `Aᵀ M Ā = M`. A word
//! `g_1 g_2 ⋯ g_L` acts by applying `g_1` first: its matrix is
//! `θ(g_L) ⋯ θ(g_1)`.

use std::collections::HashMap;

use crate::braid::{BraidError, BraidWord, Generator, MixedBraidSpec};
use crate::burau;
use crate::cover::{infinity_order, CoverError, CoverSpec, Character};
use crate::cyclotomic::{CycNum, Sign};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Burau(#[from] burau::BurauError),
    #[error("character is not primed: some ρ_j = 1")]
    NotPrimed,
    #[error("{0} is not a reflection for this character (zero self-pairing)")]
    Degenerate(Generator),
    #[error("character is degenerate: some ρ_jρ_k = 1")]
    DegenerateCharacter,
    #[error("the linear relation needs Π ρ_j^(n_j) = 1")]
    ProductNotOne,
    #[error("the total product Π ρ_j^(n_j) is 1, so the duality change of basis is singular")]
    ProductIsOne,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("block range {j}..{k} is invalid")]
    BlockRange { j: usize, k: usize },
    #[error("{0}")]
    Structure(String),
}

fn i_unit() -> CycNum {
    CycNum::i()
}

fn one() -> CycNum {
    CycNum::one()
}

fn require_primed(rho: &Character) -> Result<(), RepError> {
    if rho.is_primed() {
        Ok(())
    } else {
        Err(RepError::NotPrimed)
    }
}

/// `√−1 (1 + ρ)/(1 − ρ)`.
fn interior_diag(r: &CycNum) -> CycNum {
    &(&i_unit() * &(&one() + r)) / &(&one() - r)
}

/// `√−1 (1 − ρρ')/((1 − ρ)(1 − ρ'))`.
fn boundary_diag(r: &CycNum, s: &CycNum) -> CycNum {
    &(&i_unit() * &(&one() - &(r * s))) / &(&(&one() - r) * &(&one() - s))
}

/// `√−1 (−ρ)/(1 − ρ)`.
fn off_diag(r: &CycNum) -> CycNum {
    &(&i_unit() * &(-r)) / &(&one() - r)
}

/// Gram matrix `M_{il} = ⟨ω_i, ω_l⟩` of the intersection form.
pub fn gram_matrix(c: &CoverSpec, rho: &Character) -> Result<Matrix<CycNum>, RepError> {
    require_primed(rho)?;
    let spec = &c.spec;
    let n = spec.n();
    let rhos = rho.rhos(c);
    let dim = n - 1;
    let mut m = Matrix::<CycNum>::zeros(dim, dim);
    let mut interior: Vec<Option<CycNum>> = vec![None; c.m()];
    let mut offs: Vec<Option<CycNum>> = vec![None; c.m()];
    for i in 1..=dim {
        let j = spec.color_of(i);
        m[(i - 1, i - 1)] = if spec.is_boundary(i) {
            boundary_diag(&rhos[j - 1], &rhos[j])
        } else {
            interior[j - 1].get_or_insert_with(|| interior_diag(&rhos[j - 1])).clone()
        };
        if i >= 2 {
            let cj = spec.color_of(i);
            let v = offs[cj - 1].get_or_insert_with(|| off_diag(&rhos[cj - 1])).clone();
            m[(i - 1, i - 2)] = v.conj();
            m[(i - 2, i - 1)] = v;
        }
    }
    Ok(m)
}

/// Coordinates of `φ_{j,k} = ω_{h_j} + … + ω_{h_{k-1}}` (for `k = j+1` just
/// `ω_{h_j}`).
pub fn phi_coordinates(c: &CoverSpec, j: usize, k: usize) -> Result<Vec<CycNum>, RepError> {
    if j == 0 || j >= k || k > c.m() {
        return Err(RepError::BlockRange { j, k });
    }
    let n = c.n();
    let (lo, hi) = (c.spec.boundary(j), c.spec.boundary(k - 1));
    Ok((1..n).map(|i| if lo <= i && i <= hi { one() } else { CycNum::zero() }).collect())
}

/// `h(u, v) = uᵀ M v̄`.
pub fn pairing(m: &Matrix<CycNum>, u: &[CycNum], v: &[CycNum]) -> CycNum {
    let vbar: Vec<CycNum> = v.iter().map(CycNum::conj).collect();
    let mv = m.mul_vec(&vbar);
    u.iter().zip(&mv).fold(CycNum::zero(), |acc, (a, b)| &acc + &(a * b))
}

/// Generator matrices written out entry by entry.
pub fn theta_generator_closed_form(c: &CoverSpec, rho: &Character, g: Generator) -> Result<Matrix<CycNum>, RepError> {
    require_primed(rho)?;
    c.spec.check_generator(g, false)?;
    let dim = c.n() - 1;
    let mut a = Matrix::<CycNum>::identity(dim);
    match g {
        Generator::Sigma(i) => {
            let r = rho.rho(c, c.spec.color_of(i));
            if i >= 2 {
                a[(i - 1, i - 2)] = r.clone();
            }
            a[(i - 1, i - 1)] = -&r;
            if i < dim {
                a[(i - 1, i)] = one();
            }
        }
        Generator::A(j, k) => {
            let (rj, rk) = (rho.rho(c, j), rho.rho(c, k));
            let hj = c.spec.boundary(j);
            let hk1 = c.spec.boundary(k - 1);
            let mut row: Vec<(usize, CycNum)> = vec![(hj - 1, &rj * &(&one() - &rk))];
            if k == j + 1 {
                row.push((hj, &(&rj * &rk) - &one()));
            } else {
                row.push((hj, &rk - &one()));
                row.push((hk1, &(&rj - &one()) * &rk));
            }
            row.push((hk1 + 1, &one() - &rj));
            for r in hj..=hk1 {
                for (col, v) in &row {
                    if *col >= 1 && *col <= dim {
                        let t = &a[(r - 1, col - 1)] + v;
                        a[(r - 1, col - 1)] = t;
                    }
                }
            }
        }
    }
    Ok(a)
}

/// Generator matrices built as complex reflections from the Gram matrix:
/// `σ_i(ξ) = ξ − (ρ_j+1) h(ξ,ω_i)/h(ω_i,ω_i) ω_i` and
/// `A_{j,k}(ξ) = ξ + (ρ_jρ_k−1) h(ξ,φ)/h(φ,φ) φ`.
pub fn theta_generator_reflection(
    c: &CoverSpec,
    rho: &Character,
    g: Generator,
    m: &Matrix<CycNum>,
) -> Result<Matrix<CycNum>, RepError> {
    require_primed(rho)?;
    c.spec.check_generator(g, false)?;
    let dim = c.n() - 1;
    if m.rows() != dim || m.cols() != dim {
        return Err(RepError::Dimension(format!("Gram matrix is {}x{}, expected {dim}", m.rows(), m.cols())));
    }
    let (axis, coeff): (Vec<CycNum>, CycNum) = match g {
        Generator::Sigma(i) => {
            let r = rho.rho(c, c.spec.color_of(i));
            let e: Vec<CycNum> = (1..=dim).map(|l| if l == i { one() } else { CycNum::zero() }).collect();
            (e, -&(&r + &one()))
        }
        Generator::A(j, k) => (phi_coordinates(c, j, k)?, &(&rho.rho(c, j) * &rho.rho(c, k)) - &one()),
    };
    let self_pair = pairing(m, &axis, &axis);
    if self_pair.is_zero() {
        return Err(RepError::Degenerate(g));
    }
    let scale = &coeff / &self_pair;
    // column l is ω_l + scale·h(ω_l, axis)·axis, and h(ω_l, axis) = (M·axis̄)_l
    let abar: Vec<CycNum> = axis.iter().map(CycNum::conj).collect();
    let pair_with = m.mul_vec(&abar);
    let mut a = Matrix::<CycNum>::identity(dim);
    for (r, ar) in axis.iter().enumerate() {
        if ar.is_zero() {
            continue;
        }
        for (l, p) in pair_with.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let t = &a[(r, l)] + &(&(&scale * p) * ar);
            a[(r, l)] = t;
        }
    }
    Ok(a)
}

/// Sparse description of a matrix that differs from the identity in a few
/// rows, used to multiply on the left in `O(rows · dim)`.
#[derive(Debug, Clone)]
struct RowUpdate {
    rows: Vec<(usize, Vec<(usize, CycNum)>)>,
}

impl RowUpdate {
    fn from_matrix(a: &Matrix<CycNum>) -> Self {
        let mut rows = Vec::new();
        for r in 0..a.rows() {
            let nonstd = (0..a.cols()).any(|c| {
                let x = &a[(r, c)];
                if r == c {
                    !x.is_one()
                } else {
                    !x.is_zero()
                }
            });
            if nonstd {
                let entries = (0..a.cols()).filter(|&c| !a[(r, c)].is_zero()).map(|c| (c, a[(r, c)].clone())).collect();
                rows.push((r, entries));
            }
        }
        RowUpdate { rows }
    }

    /// `acc ← self · acc`.
    fn apply_left(&self, acc: &mut Matrix<CycNum>) {
        let cols = acc.cols();
        let new_rows: Vec<(usize, Vec<CycNum>)> = self
            .rows
            .iter()
            .map(|(r, entries)| {
                let mut out = vec![CycNum::zero(); cols];
                for (l, coef) in entries {
                    for (col, o) in out.iter_mut().enumerate() {
                        let x = &acc[(*l, col)];
                        if !x.is_zero() {
                            *o = &*o + &(coef * x);
                        }
                    }
                }
                (*r, out)
            })
            .collect();
        for (r, row) in new_rows {
            for (col, v) in row.into_iter().enumerate() {
                acc[(r, col)] = v;
            }
        }
    }
}

/// `θ_ρ` for one cover and character, caching generator images and inverses.
#[derive(Debug, Clone)]
pub struct ThetaRep {
    cover: CoverSpec,
    rho: Character,
    cache: HashMap<Generator, (Matrix<CycNum>, RowUpdate, RowUpdate)>,
}

impl ThetaRep {
    /// Requires every generator to be a genuine reflection (see
    /// [`Character::reflections_defined`]).
    pub fn new(c: &CoverSpec, rho: &Character) -> Result<Self, RepError> {
        require_primed(rho)?;
        if !rho.reflections_defined(c) {
            return Err(RepError::DegenerateCharacter);
        }
        Ok(ThetaRep { cover: c.clone(), rho: rho.clone(), cache: HashMap::new() })
    }

    pub fn dim(&self) -> usize {
        self.cover.n() - 1
    }

    fn entry(&mut self, g: Generator) -> Result<&(Matrix<CycNum>, RowUpdate, RowUpdate), RepError> {
        if !self.cache.contains_key(&g) {
            let a = theta_generator_closed_form(&self.cover, &self.rho, g)?;
            let inv = a.inverse().ok_or_else(|| RepError::Structure(format!("{g} is singular")))?;
            let fwd = RowUpdate::from_matrix(&a);
            let bwd = RowUpdate::from_matrix(&inv);
            self.cache.insert(g, (a, fwd, bwd));
        }
        Ok(&self.cache[&g])
    }

    pub fn generator(&mut self, g: Generator) -> Result<Matrix<CycNum>, RepError> {
        Ok(self.entry(g)?.0.clone())
    }

    /// Matrix of a mixed word; letters act in reading order.
    pub fn word(&mut self, w: &BraidWord) -> Result<Matrix<CycNum>, RepError> {
        if w.raw {
            return Err(RepError::Braid(BraidError::Parse("θ_ρ takes mixed words only".into())));
        }
        w.validate(&self.cover.spec)?;
        let mut acc = Matrix::<CycNum>::identity(self.dim());
        for l in &w.letters {
            let (_, fwd, bwd) = self.entry(l.gen)?;
            if l.inverse {
                bwd.apply_left(&mut acc);
            } else {
                fwd.apply_left(&mut acc);
            }
        }
        Ok(acc)
    }
}

/// `θ_ρ(w)` for a mixed word.
pub fn theta_word(c: &CoverSpec, rho: &Character, w: &BraidWord) -> Result<Matrix<CycNum>, RepError> {
    ThetaRep::new(c, rho)?.word(w)
}

/// `Aᵀ M Ā = M`.
pub fn verify_unitary(a: &Matrix<CycNum>, m: &Matrix<CycNum>) -> bool {
    if a.rows() != m.rows() || a.cols() != m.cols() || !a.is_square() {
        return false;
    }
    a.transpose().mul(m).mul(&a.conj()) == *m
}

/// `(√−1)^{n−1}(1 − Π ρ_j^{n_j}) / Π (1 − ρ_j)^{n_j}`.
pub fn gram_determinant_closed_form(c: &CoverSpec, rho: &Character) -> Result<CycNum, RepError> {
    require_primed(rho)?;
    let ipow = CycNum::root_of_unity(4, (c.n() as i64 - 1) % 4).unwrap();
    let mut den = one();
    for (j, r) in rho.rhos(c).iter().enumerate() {
        den = &den * &(&one() - r).pow(c.parts()[j] as i64).unwrap();
    }
    Ok(&(&ipow * &(&one() - &rho.total_product(c))) / &den)
}

/// Exact determinant of the Gram matrix equals the closed form.
pub fn gram_determinant_check(c: &CoverSpec, rho: &Character) -> Result<bool, RepError> {
    let m = gram_matrix(c, rho)?;
    Ok(m.det() == gram_determinant_closed_form(c, rho)?)
}

/// Coefficients `r_i = 1 − ρ_1^{n_1}⋯ρ_{j−1}^{n_{j−1}} ρ_j^{i−h_{j−1}}` for
/// `i` in block `j`.
pub fn linear_relation_vector(c: &CoverSpec, rho: &Character) -> Result<Vec<CycNum>, RepError> {
    require_primed(rho)?;
    if !rho.total_product_is_one(c) {
        return Err(RepError::ProductNotOne);
    }
    let rhos = rho.rhos(c);
    let mut out = Vec::with_capacity(c.n() - 1);
    let mut prefix = one();
    for i in 1..c.n() {
        let j = c.spec.color_of(i);
        let offset = (i - c.spec.boundary(j - 1)) as i64;
        let v = &prefix * &rhos[j - 1].pow(offset).unwrap();
        out.push(&one() - &v);
        if i == c.spec.boundary(j) {
            prefix = v;
        }
    }
    Ok(out)
}

/// The relation vector pairs to zero with every `ω_l`: `rᵀ M = 0`.
pub fn linear_relation_check(c: &CoverSpec, rho: &Character) -> Result<bool, RepError> {
    let r = linear_relation_vector(c, rho)?;
    let m = gram_matrix(c, rho)?;
    Ok(m.transpose().mul_vec(&r).iter().all(CycNum::is_zero))
}

/// Outcome of the full-twist computation.
#[derive(Debug, Clone)]
pub struct TauReport {
    /// `f`, the order of the total ramification class.
    pub f: u64,
    /// `λ` when `θ_ρ(τ) = λ·Id`.
    pub scalar: Option<CycNum>,
    /// `θ_ρ(τ) = (Π ρ_j^{n_j})^{−1}·Id`.
    pub matches_inverse_product: bool,
    /// `θ_ρ(τ) = Π ρ_j^{n_j}·Id`.
    pub matches_product: bool,
    /// `θ_ρ(τ)^f = Id`.
    pub power_is_identity: bool,
    /// `θ_ρ(τ)` commutes with every generator image.
    pub central: bool,
}

/// Computes `θ_ρ(τ)` for the full twist through the colored Burau route and
/// compares it with the deck-transformation scalars.
pub fn tau_report(c: &CoverSpec, rho: &Character) -> Result<TauReport, RepError> {
    let tau_inv = crate::braid::tau_word(&c.spec).inverse();
    let inv = burau::burau_word(&tau_inv, &c.spec)?;
    tau_report_from(c, rho, &inv)
}

/// [`tau_report`] with `β̃(τ^{-1})` supplied by the caller.
pub fn tau_report_from(
    c: &CoverSpec,
    rho: &Character,
    tau_inverse_burau: &Matrix<crate::laurent::LaurentPoly>,
) -> Result<TauReport, RepError> {
    require_primed(rho)?;
    let tau = burau::theta_from_inverse_burau(c, rho, tau_inverse_burau)?;
    let dim = c.n() - 1;
    let lambda = tau[(0, 0)].clone();
    let is_scalar = tau == Matrix::identity(dim).scale(&lambda);
    let prod = rho.total_product(c);
    let (f, _) = infinity_order(c);
    let scalar = is_scalar.then_some(lambda);
    let matches_inverse_product = scalar.as_ref().is_some_and(|l| *l == prod.inv().unwrap());
    let matches_product = scalar.as_ref().is_some_and(|l| *l == prod);
    let power_is_identity = tau.pow(f).is_identity();
    let mut central = true;
    for g in c.spec.generators() {
        let a = theta_generator_closed_form(c, rho, g)?;
        if a.mul(&tau) != tau.mul(&a) {
            central = false;
            break;
        }
    }
    Ok(TauReport { f, scalar, matches_inverse_product, matches_product, power_is_identity, central })
}

/// `θ_ρ(τ) = (Π ρ_j^{n_j})^{−1}·Id` and `θ_ρ(τ)^f = Id`.
pub fn tau_scalar_check(c: &CoverSpec, rho: &Character) -> Result<bool, RepError> {
    let r = tau_report(c, rho)?;
    Ok(r.matches_inverse_product && r.power_is_identity)
}

/// Signature `(positive, negative)` of a Hermitian matrix.
///
/// Division-free congruence: eliminating with a real pivot `p` replaces the
/// trailing block by `p·a_{ij} − a_{ik}a_{kj}`, which is `1/p` times a
/// congruent matrix, so a negative pivot flips the signs of what remains.
/// When every remaining diagonal entry vanishes, `e_k ← e_k + ā_{lk} e_l`
/// creates the positive diagonal entry `2|a_{lk}|²`.
pub fn signature_from_gram(m: &Matrix<CycNum>) -> Result<(usize, usize), RepError> {
    if !m.is_square() {
        return Err(RepError::Dimension("signature of a non-square matrix".into()));
    }
    if !m.is_hermitian() {
        return Err(RepError::Structure("signature needs a Hermitian matrix".into()));
    }
    let mut a = m.clone();
    let mut active: Vec<usize> = (0..a.rows()).collect();
    let (mut pos, mut neg) = (0usize, 0usize);
    let mut flipped = false;
    while !active.is_empty() {
        let pivot = active.iter().position(|&k| !a[(k, k)].is_zero());
        let k_idx = match pivot {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(x, &k)| {
                    active.iter().find(|&&l| l != k && !a[(l, k)].is_zero()).map(|&l| (x, k, l))
                });
                let Some((x, k, l)) = pair else { break };
                let cfac = a[(l, k)].conj();
                // row_k += c·row_l, then col_k += c̄·col_l
                for &col in &active {
                    let t = &a[(k, col)] + &(&cfac * &a[(l, col)]);
                    a[(k, col)] = t;
                }
                let cbar = cfac.conj();
                for &row in &active {
                    let t = &a[(row, k)] + &(&cbar * &a[(row, l)]);
                    a[(row, k)] = t;
                }
                x
            }
        };
        let k = active.remove(k_idx);
        let p = a[(k, k)].clone();
        let sign = p.real_sign().map_err(|e| RepError::Structure(e.to_string()))?;
        let positive = (sign == Sign::Positive) != flipped;
        if positive {
            pos += 1;
        } else {
            neg += 1;
        }
        let col: Vec<(usize, CycNum)> = active.iter().map(|&i| (i, a[(i, k)].clone())).collect();
        for &(i, ref aik) in &col {
            for &(j, ref ajk) in &col {
                let cross = if aik.is_zero() || ajk.is_zero() { CycNum::zero() } else { aik * &ajk.conj() };
                let scaled = if a[(i, j)].is_zero() { CycNum::zero() } else { &p * &a[(i, j)] };
                a[(i, j)] = &scaled - &cross;
            }
        }
        if sign == Sign::Negative {
            flipped = !flipped;
        }
    }
    Ok((pos, neg))
}

/// Compares the Gram signature with the Chevalley–Weil count `(r, s)`.
/// With `h(u, v) = uᵀ M v̄` the form is positive on the `s`-dimensional part,
/// so the expected `(positive, negative)` is `(s, r)`.
pub fn signature_consistency(c: &CoverSpec, rho: &Character) -> Result<bool, RepError> {
    let (r, s) = crate::cover::chevalley_weil_signature(c, rho)?;
    Ok(signature_from_gram(&gram_matrix(c, rho)?)? == (s, r))
}

/// Rank of the Gram matrix.
pub fn gram_rank(c: &CoverSpec, rho: &Character) -> Result<usize, RepError> {
    Ok(gram_matrix(c, rho)?.rank())
}

/// The generator whose image moves `ω_i`: `σ_i` inside a block, or
/// `A_{j,j+1}` at the boundary `i = h_j`.
fn mover(spec: &MixedBraidSpec, i: usize) -> Generator {
    if spec.is_boundary(i) {
        Generator::A(spec.color_of(i), spec.color_of(i) + 1)
    } else {
        Generator::Sigma(i)
    }
}

/// Fraction-free row echelon basis of a growing subspace.
struct Span {
    rows: Vec<(usize, Vec<CycNum>)>,
}

impl Span {
    fn new() -> Self {
        Span { rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if it is independent; returns whether it was added.
    fn insert(&mut self, mut v: Vec<CycNum>) -> bool {
        for (p, b) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            let bp = &b[*p];
            for (x, y) in v.iter_mut().zip(b) {
                let scaled = if x.is_zero() { CycNum::zero() } else { bp * &*x };
                *x = if y.is_zero() { scaled } else { &scaled - &(&f * y) };
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(p) => {
                self.rows.push((p, v));
                true
            }
            None => false,
        }
    }
}

/// Irreducibility of `θ_ρ` on `H¹(X)_ρ` (the coordinate space modulo the
/// radical of the form).
///
/// Each generator moving `ω_i` has `g − Id = ω_i · ℓ_i` with `ℓ_i` a nonzero
/// multiple of `h(·, ω_i)`; this is verified first. Then every invariant
/// subspace not inside the radical contains some `ω_l`, so it suffices to
/// saturate `span(ω_l) + radical` under all generators for each `ω_l` outside
/// the radical and check that the whole space is reached.
pub fn is_irreducible(c: &CoverSpec, rho: &Character) -> Result<bool, RepError> {
    let dim = c.n() - 1;
    let mut theta = ThetaRep::new(c, rho)?;
    let m = gram_matrix(c, rho)?;
    if dim == 0 {
        return Ok(false);
    }
    for i in 1..=dim {
        let g = mover(&c.spec, i);
        let d = theta.generator(g)?.sub(&Matrix::identity(dim));
        for r in 0..dim {
            if r != i - 1 && (0..dim).any(|col| !d[(r, col)].is_zero()) {
                return Err(RepError::Structure(format!("{g} moves more than ω_{i}")));
            }
        }
        // row i−1 of d must be a nonzero multiple of (M_{l,i})_l
        let anchor = (0..dim).find(|&l| !m[(l, i - 1)].is_zero());
        let ok = match anchor {
            None => false,
            Some(l) => {
                let ratio = &d[(i - 1, l)] / &m[(l, i - 1)];
                !ratio.is_zero() && (0..dim).all(|col| d[(i - 1, col)] == &ratio * &m[(col, i - 1)])
            }
        };
        if !ok {
            return Err(RepError::Structure(format!("{g} is not a reflection along ω_{i}")));
        }
    }
    let radical = m.transpose().kernel();
    let quotient_dim = dim - radical.len();
    if quotient_dim == 0 {
        return Ok(false);
    }
    let gens: Vec<Generator> = c.spec.generators();
    for l in 0..dim {
        let mut e = vec![CycNum::zero(); dim];
        e[l] = one();
        let mut span = Span::new();
        for r in &radical {
            span.insert(r.clone());
        }
        if !span.insert(e.clone()) {
            continue; // ω_l lies in the radical
        }
        let mut queue = vec![e];
        while let Some(v) = queue.pop() {
            if span.dim() == dim {
                break;
            }
            for &g in &gens {
                let a = theta.generator(g)?;
                let image = a.mul_vec(&v);
                if span.insert(image.clone()) {
                    queue.push(image);
                }
            }
        }
        if span.dim() < dim {
            return Ok(false);
        }
    }
    Ok(true)
}
