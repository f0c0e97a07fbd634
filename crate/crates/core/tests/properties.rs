use mixbraid::braid::{underlying_permutation, BraidWord, Letter, MixedBraidSpec, Permutation};
use mixbraid::burau::burau_word;
use mixbraid::cover::{primed_characters, Character, CoverSpec};
use mixbraid::laurent::LaurentPoly;
use mixbraid::rep::{gram_matrix, verify_unitary, ThetaRep};
use mixbraid::{CycNum, Matrix};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

const CONDUCTORS: [u32; 8] = [1, 3, 4, 5, 8, 9, 12, 15];

fn cyc() -> impl Strategy<Value = CycNum> {
    (0..CONDUCTORS.len(), prop::collection::vec((-4i64..=4, 1i64..=3), 15)).prop_map(|(i, raw)| {
        let m = CONDUCTORS[i];
        let coeffs: Vec<BigRational> =
            raw.iter().take(m as usize).map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        CycNum::from_coefficients(m, &coeffs).unwrap()
    })
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((prop::collection::vec(-2i32..=2, 2), -3i64..=3), 0..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(LaurentPoly::zero(), |acc, (e, c)| &acc + &LaurentPoly::monomial(e, BigInt::from(c)))
    })
}

/// Covers with several blocks and a character on each.
fn cases() -> Vec<(CoverSpec, Character)> {
    let covers = [(vec![2, 2], vec![3, 5]), (vec![1, 2], vec![4, 3]), (vec![2, 1, 1], vec![5, 3, 4]), (vec![3], vec![7])];
    let mut out = Vec::new();
    for (parts, degrees) in covers {
        let c = CoverSpec::new(parts, degrees).unwrap();
        for rho in primed_characters(&c).filter(|r| r.is_nondegenerate(&c)).take(6) {
            out.push((c.clone(), rho));
        }
    }
    out
}

fn word(spec: &MixedBraidSpec, picks: &[(usize, bool)]) -> BraidWord {
    let gens = spec.generators();
    BraidWord::mixed(
        picks
            .iter()
            .map(|&(i, inv)| {
                let l = Letter::new(gens[i % gens.len()]);
                if inv {
                    l.inv()
                } else {
                    l
                }
            })
            .collect(),
    )
}

fn picks() -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..16, any::<bool>()), 0..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_ring_laws(a in cyc(), b in cyc(), c in cyc()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in cyc(), b in cyc()) {
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert!((&a * &a.conj()).is_real());
    }

    #[test]
    fn text_form_round_trips(a in cyc()) {
        prop_assert_eq!(a.to_string().parse::<CycNum>().unwrap(), a);
    }

    #[test]
    fn enclosures_contain_products(a in cyc(), b in cyc()) {
        let prod = (&a * &b).eval_complex(64);
        let enclosure = a.eval_complex(64).mul(&b.eval_complex(64));
        prop_assert!(enclosure.contains(&prod));
        let (re, im) = (&a * &b).to_c64();
        prop_assert!(prod.re.contains_f64(re) || prod.re.width_f64() < 1e-12);
        prop_assert!(prod.im.contains_f64(im) || prod.im.width_f64() < 1e-12);
    }

    #[test]
    fn laurent_ring_laws(p in laurent(), q in laurent(), r in laurent()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&(&(&p + &q) - &q) - &p).is_zero());
        prop_assert_eq!(&p * &LaurentPoly::one(), p.clone());
    }

    #[test]
    fn laurent_evaluation_is_a_homomorphism(p in laurent(), q in laurent(), k in 1i64..7) {
        let point = [CycNum::root_of_unity(7, k).unwrap(), CycNum::from_i64(-2)];
        prop_assert_eq!((&p * &q).eval(&point), &p.eval(&point) * &q.eval(&point));
        prop_assert_eq!((&p + &q).eval(&point), &p.eval(&point) + &q.eval(&point));
    }

    #[test]
    fn permutation_is_a_homomorphism(x in picks(), y in picks()) {
        let spec = MixedBraidSpec::new(vec![2, 3, 1]).unwrap();
        let (u, v) = (word(&spec, &x), word(&spec, &y));
        let pu = underlying_permutation(&u, &spec);
        let pv = underlying_permutation(&v, &spec);
        prop_assert_eq!(underlying_permutation(&u.concat(&v), &spec), pu.compose(&pv));
        prop_assert!(underlying_permutation(&u.concat(&u.inverse()), &spec).is_identity());
        prop_assert_eq!(pu.compose(&Permutation::identity(6)), pu);
    }

    #[test]
    fn burau_composes_in_reverse_word_order(x in picks(), y in picks()) {
        let spec = MixedBraidSpec::new(vec![2, 1, 2]).unwrap();
        let (u, v) = (word(&spec, &x), word(&spec, &y));
        let (bu, bv) = (burau_word(&u, &spec).unwrap(), burau_word(&v, &spec).unwrap());
        prop_assert_eq!(burau_word(&u.concat(&v), &spec).unwrap(), bv.mul(&bu));
        prop_assert!(burau_word(&u.concat(&u.inverse()), &spec).unwrap().is_identity());
    }

    #[test]
    fn theta_words_are_unitary_and_compose(case in 0usize..64, x in picks(), y in picks()) {
        let all = cases();
        let (c, rho) = &all[case % all.len()];
        let mut rep = ThetaRep::new(c, rho).unwrap();
        let (u, v) = (word(&c.spec, &x), word(&c.spec, &y));
        let (tu, tv) = (rep.word(&u).unwrap(), rep.word(&v).unwrap());
        prop_assert_eq!(rep.word(&u.concat(&v)).unwrap(), tv.mul(&tu));
        let gram = gram_matrix(c, rho).unwrap();
        prop_assert!(verify_unitary(&tu, &gram));
        prop_assert!(rep.word(&u.concat(&u.inverse())).unwrap().is_identity());
    }
}

#[test]
fn gram_is_hermitian_on_every_character() {
    for (parts, degrees) in [(vec![2, 2], vec![3, 5]), (vec![1, 1, 2], vec![2, 3, 4]), (vec![4], vec![6])] {
        let c = CoverSpec::new(parts, degrees).unwrap();
        for rho in primed_characters(&c) {
            let m: Matrix<CycNum> = gram_matrix(&c, &rho).unwrap();
            assert!(m.is_hermitian(), "{:?}", rho.exps());
        }
    }
}
