//! Multi-modular inversion in cyclotomic fields: solve the multiplication
//! system modulo word-sized primes, lift by CRT and rational reconstruction.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{CycNum, Layout};

const PRIME_BUDGET: usize = 96;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_BUDGET);
        let mut c = (1u64 << 62) - 1;
        while out.len() < PRIME_BUDGET {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

fn to_mod(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Solves `a·y = b (mod p)`; `None` when `a` is singular modulo `p`.
fn solve_mod(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, p: u64) -> Option<Vec<u64>> {
    let n = b.len();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, piv);
        b.swap(c, piv);
        let inv = pow_mod(a[c][c], p - 2, p);
        for k in c..n {
            a[c][k] = mul_mod(a[c][k], inv, p);
        }
        b[c] = mul_mod(b[c], inv, p);
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = a[r][c];
                for k in c..n {
                    let t = mul_mod(f, a[c][k], p);
                    a[r][k] = (a[r][k] + p - t) % p;
                }
                let t = mul_mod(f, b[c], p);
                b[r] = (b[r] + p - t) % p;
            }
        }
    }
    Some(b)
}

/// Smallest `a/b ≡ r (mod m)` with `|a|, b ≤ √(m/2)`.
pub fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        (r0, r1) = (r1.clone(), &r0 - &q * &r1);
        (t0, t1) = (t1.clone(), &t0 - &q * &t1);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if !(&r1).gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Inverse of `num/den` (canonical coordinates in `layout`), or `None` when
/// the prime budget runs out. `verify` must certify a candidate exactly.
pub(crate) fn invert(
    layout: &Layout,
    num: &[BigInt],
    den: &BigInt,
    verify: impl Fn(&CycNum) -> bool,
) -> Option<CycNum> {
    let m = layout.m;
    let basis = layout.basis();
    let n = basis.len();
    let conductor = m as u32;
    // columns: coordinates of num·ζ^s for each basis exponent s
    let numer = CycNum::from_coefficients(
        conductor,
        &num.iter().map(|x| BigRational::from_integer(x.clone())).collect::<Vec<_>>(),
    )
    .ok()?;
    let mut columns: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for &s in &basis {
        let shifted = &numer * &CycNum::root_of_unity(conductor, s as i64).ok()?;
        let c = shifted.coefficients();
        columns.push(basis.iter().map(|&b| c[b].to_integer()).collect());
    }
    let one = CycNum::one().promote(conductor).ok()?.coefficients();
    let rhs: Vec<BigInt> = basis.iter().map(|&b| one[b].to_integer() * den).collect();

    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); n];
    for &p in primes() {
        let a: Vec<Vec<u64>> = (0..n).map(|r| (0..n).map(|c| to_mod(&columns[c][r], p)).collect()).collect();
        let b: Vec<u64> = rhs.iter().map(|x| to_mod(x, p)).collect();
        let Some(y) = solve_mod(a, b, p) else { continue };
        // CRT merge
        let pb = BigInt::from(p);
        let minv = BigInt::from(pow_mod(to_mod(&modulus, p), p - 2, p));
        for (res, &yi) in residues.iter_mut().zip(y.iter()) {
            let diff = (BigInt::from(yi) - &*res).mod_floor(&pb);
            let t = (diff * &minv).mod_floor(&pb);
            *res = &*res + &modulus * t;
        }
        modulus *= &pb;
        let lifted: Option<Vec<BigRational>> =
            residues.iter().map(|r| rational_reconstruction(r, &modulus)).collect();
        if let Some(coords) = lifted {
            let mut full = vec![BigRational::zero(); m];
            for (&b, c) in basis.iter().zip(coords) {
                full[b] = c;
            }
            let cand = CycNum::from_coefficients(conductor, &full).ok()?;
            if verify(&cand) {
                return Some(cand);
            }
        }
    }
    None
}
