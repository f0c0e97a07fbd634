use std::collections::BTreeMap;

use mixbraid::braid::{s, BraidWord, Generator, Letter, MixedBraidSpec};
use mixbraid::burau::{burau_sigma, burau_word, duality_basis};
use mixbraid::cover::{eigenspace_dim, primed_characters, Character, CoverSpec};
use mixbraid::laurent::LaurentPoly;
use mixbraid::rep::{gram_matrix, gram_rank, pairing, phi_coordinates, ThetaRep};
use mixbraid::{CycNum, Matrix};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One-variable Laurent polynomials as exponent → coefficient.
type Poly = BTreeMap<i32, i64>;

fn poly(terms: &[(i32, i64)]) -> Poly {
    let mut p = Poly::new();
    for &(e, c) in terms {
        *p.entry(e).or_default() += c;
    }
    p.retain(|_, c| *c != 0);
    p
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_default() += c;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Textbook unreduced Burau: `σ_i ↦ I ⊕ [[1−t, t], [1, 0]] ⊕ I`, extended as
/// a homomorphism.
fn classical_burau(n: usize, letters: &[(usize, bool)]) -> Vec<Vec<Poly>> {
    let identity = |n: usize| -> Vec<Vec<Poly>> {
        (0..n).map(|r| (0..n).map(|c| if r == c { poly(&[(0, 1)]) } else { Poly::new() }).collect()).collect()
    };
    let mut acc = identity(n);
    for &(i, inv) in letters {
        let mut g = identity(n);
        let (a, b) = (i - 1, i);
        let block = if inv {
            [[poly(&[]), poly(&[(0, 1)])], [poly(&[(-1, 1)]), poly(&[(0, 1), (-1, -1)])]]
        } else {
            [[poly(&[(0, 1), (1, -1)]), poly(&[(1, 1)])], [poly(&[(0, 1)]), poly(&[])]]
        };
        for (r, row) in block.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                g[[a, b][r]][[a, b][c]] = e.clone();
            }
        }
        acc = (0..n)
            .map(|r| {
                (0..n).map(|c| (0..n).fold(Poly::new(), |s, k| poly_add(&s, &poly_mul(&acc[r][k], &g[k][c])))).collect()
            })
            .collect();
    }
    acc
}

/// Sets every colour variable to one `t`.
fn specialize(p: &LaurentPoly) -> Poly {
    let mut out = Poly::new();
    for (e, c) in p.terms() {
        *out.entry(e.iter().sum()).or_default() += c.to_i64().unwrap();
    }
    out.retain(|_, c| *c != 0);
    out
}

fn random_letters(rng: &mut ChaCha8Rng, n: usize, len: usize) -> Vec<(usize, bool)> {
    (0..len).map(|_| (rng.gen_range(1..n), rng.gen_bool(0.5))).collect()
}

fn letters_word(letters: &[(usize, bool)], raw: bool) -> BraidWord {
    let ls: Vec<Letter> = letters.iter().map(|&(i, inv)| if inv { s(i).inv() } else { s(i) }).collect();
    if raw {
        BraidWord::raw(ls)
    } else {
        BraidWord::mixed(ls)
    }
}

#[test]
fn one_colour_burau_is_the_transposed_classical_burau() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for n in 2..=5 {
        let spec = MixedBraidSpec::new(vec![n]).unwrap();
        for _ in 0..40 {
            let len = rng.gen_range(0..8);
            let letters = random_letters(&mut rng, n, len);
            let ours = burau_word(&letters_word(&letters, false), &spec).unwrap();
            let oracle = classical_burau(n, &letters);
            for r in 0..n {
                for c in 0..n {
                    assert_eq!(specialize(&ours.row(r)[c]), oracle[c][r], "{letters:?} at ({r}, {c})");
                }
            }
        }
    }
}

#[test]
fn colored_burau_specializes_to_classical_burau() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let spec = MixedBraidSpec::new(vec![2, 1, 2]).unwrap();
    let gens = spec.generators();
    for _ in 0..60 {
        let len = rng.gen_range(0..6);
        let picks: Vec<Letter> = (0..len)
            .map(|_| {
                let l = Letter::new(gens[rng.gen_range(0..gens.len())]);
                if rng.gen_bool(0.5) {
                    l.inv()
                } else {
                    l
                }
            })
            .collect();
        let w = BraidWord::mixed(picks);
        let ours = burau_word(&w, &spec).unwrap();
        // expand A_{j,k} into σ letters for the oracle
        let mut letters = Vec::new();
        for l in &w.letters {
            let base: Vec<(usize, bool)> = match l.gen {
                Generator::Sigma(i) => vec![(i, false)],
                Generator::A(j, k) => mixbraid::braid::expand_a(j, k, &spec)
                    .letters
                    .iter()
                    .map(|x| match x.gen {
                        Generator::Sigma(i) => (i, x.exponent() < 0),
                        Generator::A(..) => unreachable!(),
                    })
                    .collect(),
            };
            if l.exponent() < 0 {
                letters.extend(base.iter().rev().map(|&(i, inv)| (i, !inv)));
            } else {
                letters.extend(base);
            }
        }
        let oracle = classical_burau(spec.n(), &letters);
        for r in 0..spec.n() {
            for c in 0..spec.n() {
                assert_eq!(specialize(&ours.row(r)[c]), oracle[c][r]);
            }
        }
    }
}

#[test]
fn burau_of_sigma_squared() {
    let spec = MixedBraidSpec::new(vec![2]).unwrap();
    let m = burau_word(&BraidWord::mixed(vec![s(1), s(1)]), &spec).unwrap();
    let t = |e: i32| LaurentPoly::var_pow(0, e);
    let one = LaurentPoly::one();
    let expected = Matrix::from_rows(vec![
        vec![&(&one - &t(1)) + &t(2), &one - &t(1)],
        vec![&t(1) - &t(2), t(1)],
    ]);
    assert_eq!(m, expected);
}

#[test]
fn burau_crossing_determinant() {
    for colors in [[1, 1], [1, 2], [2, 1]] {
        let b = burau_sigma(1, &colors);
        let r = b.to_rows();
        let det = &(&r[0][0] * &r[1][1]) - &(&r[0][1] * &r[1][0]);
        assert_eq!(det, -&LaurentPoly::var(colors[1] - 1));
    }
}

#[test]
fn phi_coordinate_examples() {
    let c = CoverSpec::new(vec![2, 2], vec![3, 5]).unwrap();
    let one = CycNum::one;
    let zero = CycNum::zero;
    assert_eq!(phi_coordinates(&c, 1, 2).unwrap(), vec![zero(), one(), zero()]);
    let c = CoverSpec::new(vec![1, 1, 1], vec![2, 3, 4]).unwrap();
    assert_eq!(phi_coordinates(&c, 1, 3).unwrap(), vec![one(), one()]);
    assert!(phi_coordinates(&c, 2, 2).is_err());
}

#[test]
fn phi_self_pairing_identity() {
    let i = CycNum::i();
    let one = CycNum::one();
    for (parts, degrees) in [(vec![2, 2], vec![3, 5]), (vec![1, 2, 1], vec![4, 3, 5]), (vec![1, 1, 1, 1], vec![2, 3, 4, 6])] {
        let c = CoverSpec::new(parts, degrees).unwrap();
        for rho in primed_characters(&c) {
            let m = gram_matrix(&c, &rho).unwrap();
            for j in 1..c.m() {
                for k in j + 1..=c.m() {
                    let phi = phi_coordinates(&c, j, k).unwrap();
                    let (rj, rk) = (rho.rho(&c, j), rho.rho(&c, k));
                    let expected = &(&i * &(&one - &(&rj * &rk))) / &(&(&one - &rj) * &(&one - &rk));
                    assert_eq!(pairing(&m, &phi, &phi), expected, "{:?} ({j},{k})", rho.exps());
                }
            }
        }
    }
}

#[test]
fn duality_basis_for_two_strands() {
    let c = CoverSpec::new(vec![2], vec![3]).unwrap();
    let rho = Character::new(&c, vec![1]).unwrap();
    let rb = rho.rho(&c, 1).conj();
    let one = CycNum::one();
    let expected = Matrix::from_rows(vec![vec![-&rb, &one - &rb], vec![one.clone(), &one - &rb]]);
    assert_eq!(duality_basis(&c, &rho), expected);
}

#[test]
fn duality_basis_is_invertible_off_the_trivial_product() {
    for (parts, degrees) in [(vec![2, 2], vec![3, 5]), (vec![1, 2], vec![4, 6]), (vec![3, 1], vec![5, 2]), (vec![4], vec![8])] {
        let c = CoverSpec::new(parts, degrees).unwrap();
        for rho in primed_characters(&c) {
            let det = duality_basis(&c, &rho).det();
            assert_eq!(det.is_zero(), rho.total_product_is_one(&c), "{:?}", rho.exps());
        }
    }
}

#[test]
fn gram_rank_matches_eigenspace_dimension() {
    for (parts, degrees) in [(vec![2, 2], vec![3, 5]), (vec![1, 2, 1], vec![2, 3, 6]), (vec![3, 2], vec![4, 4]), (vec![5], vec![5])] {
        let c = CoverSpec::new(parts, degrees).unwrap();
        for rho in primed_characters(&c).filter(|r| r.is_nondegenerate(&c)) {
            assert_eq!(gram_rank(&c, &rho).unwrap(), eigenspace_dim(&c, &rho), "{:?}", rho.exps());
        }
    }
}

#[test]
fn generators_are_reflections_with_the_right_eigenvalue() {
    for (parts, degrees) in [(vec![2, 2], vec![3, 5]), (vec![2, 1, 2], vec![4, 3, 5]), (vec![3], vec![7])] {
        let c = CoverSpec::new(parts, degrees).unwrap();
        for rho in primed_characters(&c).filter(|r| r.reflections_defined(&c)) {
            let mut rep = ThetaRep::new(&c, &rho).unwrap();
            for g in c.spec.generators() {
                let th = rep.generator(g).unwrap();
                let expected = match g {
                    Generator::Sigma(i) => -&rho.rho(&c, c.spec.color_of(i)),
                    Generator::A(j, k) => &rho.rho(&c, j) * &rho.rho(&c, k),
                };
                assert_eq!(th.det(), expected, "{:?} {g}", rho.exps());
                assert_eq!(th.sub(&Matrix::identity(rep.dim())).rank(), 1, "{:?} {g}", rho.exps());
                if let Generator::A(j, k) = g {
                    let phi = phi_coordinates(&c, j, k).unwrap();
                    let image = th.mul_vec(&phi);
                    let scaled: Vec<CycNum> = phi.iter().map(|x| x * &expected).collect();
                    assert_eq!(image, scaled, "{:?} {g}", rho.exps());
                }
            }
        }
    }
}
