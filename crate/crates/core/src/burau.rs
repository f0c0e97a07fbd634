//! The colored Burau representation over `Z[t_1^{±1}, …, t_m^{±1}]`, its
//! reduced form, and the duality that recovers `θ_ρ` from it.
//!
//! A crossing `σ_i` between strands of colours `a` (position `i`) and `b`
//! (position `i+1`) acts by the block `[[1 − t_a, 1], [t_b, 0]]`; colours are
//! tracked along the word. A word's matrix is `X_L ⋯ X_1`.

use crate::braid::{is_mixed, BraidError, BraidWord, Generator, Letter, MixedBraidSpec};
use crate::cover::{CoverSpec, Character};
use crate::cyclotomic::CycNum;
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::rep::{RepError, ThetaRep};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BurauError {
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error("word permutes strands between blocks")]
    NotColorPreserving,
    #[error("the span of v_1, …, v_(n-1) is not invariant under the dual Burau matrix")]
    NotInvariant,
    #[error("duality change of basis is singular (Π ρ_j^(n_j) = 1)")]
    SingularBasis,
}

fn t(color: usize) -> LaurentPoly {
    LaurentPoly::var(color - 1)
}

fn t_inv(color: usize) -> LaurentPoly {
    LaurentPoly::var_pow(color - 1, -1)
}

/// Running product of crossing matrices with the current strand colours.
#[derive(Debug, Clone)]
pub struct ColoredBurauState {
    matrix: Matrix<LaurentPoly>,
    colors: Vec<usize>,
    start: Vec<usize>,
}

impl ColoredBurauState {
    pub fn new(spec: &MixedBraidSpec) -> Self {
        let colors = spec.colors();
        ColoredBurauState { matrix: Matrix::identity(spec.n()), start: colors.clone(), colors }
    }

    /// Current colour of each position, 1-based colours.
    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn matrix(&self) -> &Matrix<LaurentPoly> {
        &self.matrix
    }

    /// Multiplies on the left by the matrix of one crossing. `A_{j,k}`
    /// letters are expanded into crossings first.
    pub fn apply(&mut self, spec: &MixedBraidSpec, l: Letter) -> Result<(), BraidError> {
        spec.check_generator(l.gen, true)?;
        match l.gen {
            Generator::Sigma(i) => {
                self.crossing(i, l.inverse);
                Ok(())
            }
            Generator::A(..) => {
                for x in BraidWord::raw(vec![l]).to_raw(spec).letters {
                    self.apply(spec, x)?;
                }
                Ok(())
            }
        }
    }

    fn crossing(&mut self, i: usize, inverse: bool) {
        let (x, y) = (self.colors[i - 1], self.colors[i]);
        let (top, bot) = (self.matrix.row(i - 1).to_vec(), self.matrix.row(i).to_vec());
        let n = self.matrix.cols();
        let (new_top, new_bot): (Vec<LaurentPoly>, Vec<LaurentPoly>) = if !inverse {
            // [[1 − t_x, 1], [t_y, 0]]
            let (ax, ty) = (&LaurentPoly::one() - &t(x), t(y));
            (
                (0..n).map(|c| &(&ax * &top[c]) + &bot[c]).collect(),
                (0..n).map(|c| &ty * &top[c]).collect(),
            )
        } else {
            // inverse of the forward block at the swapped colouring:
            // [[0, t_x^{-1}], [1, −t_x^{-1}(1 − t_y)]]
            let ix = t_inv(x);
            let q = -&(&ix * &(&LaurentPoly::one() - &t(y)));
            (
                (0..n).map(|c| &ix * &bot[c]).collect(),
                (0..n).map(|c| &top[c] + &(&q * &bot[c])).collect(),
            )
        };
        for c in 0..n {
            self.matrix[(i - 1, c)] = new_top[c].clone();
            self.matrix[(i, c)] = new_bot[c].clone();
        }
        self.colors.swap(i - 1, i);
    }

    /// The accumulated matrix, provided every strand is back in its block.
    pub fn finish(self) -> Result<Matrix<LaurentPoly>, BurauError> {
        if self.colors != self.start {
            return Err(BurauError::NotColorPreserving);
        }
        Ok(self.matrix)
    }
}

/// Single-crossing matrix of `σ_i` when positions `i, i+1` carry colours
/// `colors[i-1], colors[i]`.
pub fn burau_sigma(i: usize, colors: &[usize]) -> Matrix<LaurentPoly> {
    let n = colors.len();
    assert!(1 <= i && i < n, "σ_{i} out of range");
    let mut m = Matrix::<LaurentPoly>::identity(n);
    m[(i - 1, i - 1)] = &LaurentPoly::one() - &t(colors[i - 1]);
    m[(i - 1, i)] = LaurentPoly::one();
    m[(i, i - 1)] = t(colors[i]);
    m[(i, i)] = LaurentPoly::zero();
    m
}

/// `β̃(A_{j,k}) = Id + R̃ S̃` with
/// `R̃ = (1 − t_k) e_{h_j} + (t_j − 1) e_{h_{k−1}+1}` and
/// `S̃ = −t_j e_{h_j}ᵀ + Σ_{j<r<k} Σ_{i ∈ block r} (1 − t_r) e_iᵀ + e_{h_{k−1}+1}ᵀ`.
pub fn burau_a(j: usize, k: usize, spec: &MixedBraidSpec) -> Result<Matrix<LaurentPoly>, BraidError> {
    spec.check_generator(Generator::A(j, k), false)?;
    let n = spec.n();
    let one = LaurentPoly::one();
    let hj = spec.boundary(j);
    let last = spec.boundary(k - 1) + 1;
    let r = [(hj, &one - &t(k)), (last, &t(j) - &one)];
    let mut s: Vec<(usize, LaurentPoly)> = vec![(hj, -&t(j))];
    for col in spec.boundary(j) + 1..=spec.boundary(k - 1) {
        s.push((col, &one - &t(spec.color_of(col))));
    }
    s.push((last, one.clone()));
    let mut m = Matrix::<LaurentPoly>::identity(n);
    for (row, rv) in &r {
        for (col, sv) in &s {
            let v = &m[(row - 1, col - 1)] + &(rv * sv);
            m[(row - 1, col - 1)] = v;
        }
    }
    Ok(m)
}

/// Colored Burau matrix of a colour-preserving word (mixed or raw).
pub fn burau_word(w: &BraidWord, spec: &MixedBraidSpec) -> Result<Matrix<LaurentPoly>, BurauError> {
    w.validate(spec)?;
    let mut st = ColoredBurauState::new(spec);
    for &l in &w.letters {
        st.apply(spec, l)?;
    }
    st.finish()
}

/// `u_i = Π_{p<i} t_{c(p)}`, fixed by every colour-preserving word.
pub fn fixed_vector(spec: &MixedBraidSpec) -> Vec<LaurentPoly> {
    let mut out = Vec::with_capacity(spec.n());
    let mut acc = LaurentPoly::one();
    for p in 1..=spec.n() {
        out.push(acc.clone());
        acc = &acc * &t(spec.color_of(p));
    }
    out
}

/// `w = Σ (1 − t_{c(i)}) e_i`, fixed by the transpose of every mixed
/// generator image.
pub fn dual_fixed_vector(spec: &MixedBraidSpec) -> Vec<LaurentPoly> {
    (1..=spec.n()).map(|i| &LaurentPoly::one() - &t(spec.color_of(i))).collect()
}

/// Reduced colored Burau matrix: the action on the quotient by the fixed
/// vector `u`, in the basis of the images of `e_1, …, e_{n−1}`. Entries stay
/// Laurent because `u_n` is a monomial.
pub fn reduced_burau(w: &BraidWord, spec: &MixedBraidSpec) -> Result<Matrix<LaurentPoly>, BurauError> {
    let full = burau_word(w, spec)?;
    Ok(reduce(&full, spec))
}

/// Quotient of a full colored Burau matrix by `u`.
pub fn reduce(full: &Matrix<LaurentPoly>, spec: &MixedBraidSpec) -> Matrix<LaurentPoly> {
    let n = spec.n();
    // u_i / u_n = Π_{p=i}^{n−1} t_{c(p)}^{-1}
    let mut ratio = vec![LaurentPoly::one(); n];
    for i in (1..n).rev() {
        ratio[i - 1] = &ratio[i] * &t_inv(spec.color_of(i));
    }
    Matrix::from_fn(n - 1, n - 1, |i, l| &full[(i, l)] - &(&full[(n - 1, l)] * &ratio[i]))
}

/// Evaluates every entry at `t_j ↦ ζ_{d_j}^{k_j}` for `point[j] = (d_j, k_j)`.
pub fn evaluate(m: &Matrix<LaurentPoly>, point: &[(u32, i64)]) -> Matrix<CycNum> {
    m.map(|p| p.eval_roots(point))
}

/// Evaluation at `ρ` or, with `conjugate`, at `ρ̄`.
pub fn evaluate_at(m: &Matrix<LaurentPoly>, c: &CoverSpec, rho: &Character, conjugate: bool) -> Matrix<CycNum> {
    let point = if conjugate { rho.conj_point(c) } else { rho.point(c) };
    evaluate(m, &point)
}

/// `D(w) = (β̃_{ρ̄}(w)ᵀ)^{-1}`, computed as `β̃_{ρ̄}(w^{-1})ᵀ`.
pub fn dual_matrix(c: &CoverSpec, rho: &Character, w: &BraidWord) -> Result<Matrix<CycNum>, BurauError> {
    let inv = burau_word(&w.inverse(), &c.spec)?;
    Ok(evaluate_at(&inv, c, rho, true).transpose())
}

/// Columns `v_i = −ρ̄_{c(i)} e_i + e_{i+1}` for `i < n` and last column
/// `(1 − ρ̄_{c(i)})_i`.
pub fn duality_basis(c: &CoverSpec, rho: &Character) -> Matrix<CycNum> {
    let n = c.n();
    let bars: Vec<CycNum> = rho.rhos(c).iter().map(CycNum::conj).collect();
    let bar = |i: usize| bars[c.spec.color_of(i) - 1].clone();
    Matrix::from_fn(n, n, |r, col| {
        if col == n - 1 {
            &CycNum::one() - &bar(r + 1)
        } else if r == col {
            -&bar(col + 1)
        } else if r == col + 1 {
            CycNum::one()
        } else {
            CycNum::zero()
        }
    })
}

/// Solves `V X = D V` for the `(n−1)×(n−1)` block `X`, where `V` holds the
/// first `n−1` columns of the duality basis. `V` is unit upper bidiagonal on
/// rows `2..n`, so this is back substitution; row 1 is then checked exactly.
pub fn restrict_to_span(c: &CoverSpec, rho: &Character, d: &Matrix<CycNum>) -> Result<Matrix<CycNum>, BurauError> {
    let n = c.n();
    let b = duality_basis(c, rho);
    let v = b.submatrix(0..n, 0..n - 1);
    let y = d.mul(&v);
    let bar = |i: usize| -&b[(i - 1, i - 1)];
    let mut x = Matrix::<CycNum>::zeros(n - 1, n - 1);
    for col in 0..n - 1 {
        x[(n - 2, col)] = y[(n - 1, col)].clone();
        for r in (2..n).rev() {
            // row r: X_{r−1} − ρ̄ X_r = Y_r
            let val = &y[(r - 1, col)] + &(&bar(r) * &x[(r - 1, col)]);
            x[(r - 2, col)] = val;
        }
    }
    if v.mul(&x) != y {
        return Err(BurauError::NotInvariant);
    }
    Ok(x)
}

/// `θ_ρ(w)` recovered from the colored Burau matrix of `w` through the
/// duality basis. Accepts mixed or raw colour-preserving words.
pub fn theta_via_burau(c: &CoverSpec, rho: &Character, w: &BraidWord) -> Result<Matrix<CycNum>, RepError> {
    let raw = w.to_raw(&c.spec);
    if !is_mixed(&raw, &c.spec) {
        return Err(BurauError::NotColorPreserving.into());
    }
    let inv = burau_word(&raw.inverse(), &c.spec)?;
    Ok(theta_from_inverse_burau(c, rho, &inv)?)
}

/// `θ_ρ(w)` from a precomputed `β̃(w^{-1})`, for reuse across characters.
pub fn theta_from_inverse_burau(
    c: &CoverSpec,
    rho: &Character,
    inv: &Matrix<LaurentPoly>,
) -> Result<Matrix<CycNum>, BurauError> {
    let d = evaluate_at(inv, c, rho, true).transpose();
    restrict_to_span(c, rho, &d)
}

/// `B^{-1} D(g) B = diag(θ_ρ(g), 1)`, checked as `D(g) B = B diag(θ_ρ(g), 1)`
/// after confirming `B` is invertible.
pub fn duality_check(c: &CoverSpec, rho: &Character, g: Generator) -> Result<bool, RepError> {
    let b = duality_basis(c, rho);
    if b.det().is_zero() {
        return Err(BurauError::SingularBasis.into());
    }
    let theta = ThetaRep::new(c, rho)?.generator(g)?;
    let d = dual_matrix(c, rho, &BraidWord::mixed(vec![Letter::new(g)]))?;
    let one = Matrix::<CycNum>::identity(1);
    Ok(d.mul(&b) == b.mul(&theta.direct_sum(&one)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{a, expand_a, s};
    use crate::matrix::Ring;

    fn lp(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn single_crossing() {
        let spec = MixedBraidSpec::new(vec![2]).unwrap();
        let m = burau_word(&BraidWord::mixed(vec![s(1)]), &spec).unwrap();
        assert_eq!(m, Matrix::from_rows(vec![vec![lp("1 - t1"), lp("1")], vec![lp("t1"), lp("0")]]));
        let r = reduced_burau(&BraidWord::mixed(vec![s(1)]), &spec).unwrap();
        assert_eq!(r[(0, 0)], lp("-t1"));
    }

    #[test]
    fn inverse_letters_cancel() {
        let spec = MixedBraidSpec::new(vec![1, 2, 1]).unwrap();
        let w = BraidWord::raw(vec![s(1), s(2), s(3).inv(), s(1)]);
        let ww = w.concat(&w.inverse());
        let mut st = ColoredBurauState::new(&spec);
        for &l in &ww.letters {
            st.apply(&spec, l).unwrap();
        }
        assert!(st.finish().unwrap().is_identity());
        assert_eq!(burau_word(&w, &spec), Err(BurauError::NotColorPreserving));
    }

    #[test]
    fn closed_form_a_matches_expansion() {
        for parts in [vec![1, 1], vec![2, 1], vec![1, 2, 2], vec![2, 1, 1, 2]] {
            let spec = MixedBraidSpec::new(parts).unwrap();
            for j in 1..spec.m() {
                for k in j + 1..=spec.m() {
                    let direct = burau_word(&expand_a(j, k, &spec), &spec).unwrap();
                    assert_eq!(burau_a(j, k, &spec).unwrap(), direct, "A{j},{k} for {spec}");
                    let via_letter = burau_word(&BraidWord::mixed(vec![a(j, k)]), &spec).unwrap();
                    assert_eq!(via_letter, direct);
                }
            }
        }
    }

    #[test]
    fn fixed_vectors() {
        let spec = MixedBraidSpec::new(vec![2, 1, 2]).unwrap();
        let u = fixed_vector(&spec);
        let w = dual_fixed_vector(&spec);
        for g in spec.generators() {
            let m = burau_word(&BraidWord::mixed(vec![Letter::new(g)]), &spec).unwrap();
            assert_eq!(m.mul_vec(&u), u, "{g}");
            assert_eq!(m.transpose().mul_vec(&w), w, "{g}");
        }
        let pure = BraidWord::raw(vec![s(2), s(3), s(3), s(2)]);
        let m = burau_word(&pure, &spec).unwrap();
        assert_eq!(m.mul_vec(&u), u);
    }

    #[test]
    fn reduced_is_homomorphic_on_words() {
        let spec = MixedBraidSpec::new(vec![2, 2]).unwrap();
        let x = BraidWord::mixed(vec![s(1), a(1, 2)]);
        let y = BraidWord::mixed(vec![s(3).inv(), s(1)]);
        let rx = reduced_burau(&x, &spec).unwrap();
        let ry = reduced_burau(&y, &spec).unwrap();
        assert_eq!(reduced_burau(&x.concat(&y), &spec).unwrap(), ry.mul(&rx));
    }

    #[test]
    fn duality_recovers_theta() {
        let c = CoverSpec::new(vec![2, 2], vec![3, 5]).unwrap();
        let rho = Character::new(&c, vec![2, 4]).unwrap();
        let mut th = ThetaRep::new(&c, &rho).unwrap();
        for g in c.spec.generators() {
            assert_eq!(duality_check(&c, &rho, g), Ok(true), "{g}");
            let w = BraidWord::mixed(vec![Letter::new(g)]);
            assert_eq!(theta_via_burau(&c, &rho, &w).unwrap(), th.generator(g).unwrap());
        }
        let w = BraidWord::mixed(vec![s(1), a(1, 2).inv(), s(3)]);
        assert_eq!(theta_via_burau(&c, &rho, &w).unwrap(), th.word(&w).unwrap());
    }

    #[test]
    fn specialization_at_one_is_permutation() {
        let spec = MixedBraidSpec::new(vec![3]).unwrap();
        let m = burau_word(&BraidWord::mixed(vec![s(1), s(2)]), &spec).unwrap();
        let e = evaluate(&m, &[(1, 0)]);
        for r in 0..3 {
            let ones = (0..3).filter(|&c| e[(r, c)].is_one()).count();
            let zeros = (0..3).filter(|&c| Ring::is_zero(&e[(r, c)])).count();
            assert_eq!((ones, zeros), (1, 2));
        }
    }
}
