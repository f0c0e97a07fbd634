//! Exact arithmetic in the cyclotomic fields `Q(ζ_M)`.
//!
//! An element is stored as a dense coefficient vector over the powers
//! `ζ_M^0, …, ζ_M^{M-1}` with a common positive denominator. Only the
//! positions of a fixed basis (the Zumbroich basis) may be nonzero: for every
//! prime power `q = p^e ‖ M` one residue class of the `q`-component exponent is
//! eliminated through the relation `Σ_{b<p} ζ_p^b = 0`. This makes the vector
//! unique, so equality is plain vector comparison at a common conductor.
//!
//! Coefficients live in `i64` while they fit, with an `i128` accumulation path
//! and a `BigInt` fallback on overflow.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::interval::{ComplexInterval, FixedPointTrig};
use crate::modular;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycError {
    #[error("conductor must be positive")]
    ZeroConductor,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not real: {0}")]
    NotReal(String),
    #[error("conductor {from} does not divide {to}")]
    NotDivisor { from: u32, to: u32 },
    #[error("cannot parse cyclotomic number: {0}")]
    Parse(String),
}

/// Sign of a real number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Coeffs {
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An element of `Q(ζ_M)` in canonical form.
#[derive(Clone)]
pub struct CycNum {
    conductor: u32,
    coeffs: Coeffs,
}

/// Prime-power decomposition of a conductor and the derived basis test.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub m: usize,
    /// `(p, q = p^e, (M/q)^{-1} mod q)`
    primes: Vec<(usize, usize, usize)>,
}

impl Layout {
    pub fn new(m: u32) -> Self {
        let m = m as usize;
        let mut primes = Vec::new();
        let mut rest = m;
        let mut p = 2;
        while p * p <= rest {
            if rest % p == 0 {
                let mut q = 1;
                while rest % p == 0 {
                    rest /= p;
                    q *= p;
                }
                primes.push((p, q, 0));
            }
            p += 1;
        }
        if rest > 1 {
            primes.push((rest, rest, 0));
        }
        for entry in primes.iter_mut() {
            let (_, q, _) = *entry;
            entry.2 = inverse_mod((m / q) % q, q);
        }
        Layout { m, primes }
    }

    fn digit(&self, k: usize, idx: usize) -> usize {
        let (p, q, inv) = self.primes[idx];
        let t = (k % q) * inv % q;
        t / (q / p)
    }

    fn excluded_for(&self, k: usize, idx: usize) -> bool {
        let p = self.primes[idx].0;
        let d = self.digit(k, idx);
        if p == 2 {
            d == 1
        } else {
            d == 0
        }
    }

    pub fn is_basis(&self, k: usize) -> bool {
        (0..self.primes.len()).all(|i| !self.excluded_for(k, i))
    }

    pub fn basis(&self) -> Vec<usize> {
        (0..self.m).filter(|&k| self.is_basis(k)).collect()
    }

    /// Rewrites `v` (indexed by exponent mod M) into basis coordinates.
    fn reduce<C: Coef>(&self, v: &mut [C]) -> Option<()> {
        for idx in 0..self.primes.len() {
            let p = self.primes[idx].0;
            let step = self.m / p;
            for k in 0..self.m {
                if v[k].is_nil() || !self.excluded_for(k, idx) {
                    continue;
                }
                let c = std::mem::replace(&mut v[k], C::nil());
                for b in 1..p {
                    let t = (k + b * step) % self.m;
                    v[t] = v[t].sub(&c)?;
                }
            }
        }
        Some(())
    }
}

fn inverse_mod(a: usize, m: usize) -> usize {
    if m == 1 {
        return 0;
    }
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (m as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(m as i64) as usize
}

pub(crate) fn lcm_u32(a: u32, b: u32) -> u32 {
    (a as u64).lcm(&(b as u64)) as u32
}

/// Integer coefficient arithmetic with overflow reporting.
pub(crate) trait Coef: Clone + fmt::Debug {
    fn nil() -> Self;
    fn is_nil(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
}

impl Coef for i128 {
    fn nil() -> Self {
        0
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

impl Coef for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

impl Coeffs {
    fn wide(&self) -> Option<(Vec<i128>, i128)> {
        match self {
            Coeffs::Small { num, den } => Some((num.iter().map(|&x| x as i128).collect(), *den as i128)),
            Coeffs::Big { .. } => None,
        }
    }

    fn big(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Coeffs::Small { num, den } => (num.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(*den)),
            Coeffs::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    fn len(&self) -> usize {
        match self {
            Coeffs::Small { num, .. } => num.len(),
            Coeffs::Big { num, .. } => num.len(),
        }
    }

    fn is_zero_at(&self, k: usize) -> bool {
        match self {
            Coeffs::Small { num, .. } => num[k] == 0,
            Coeffs::Big { num, .. } => Zero::is_zero(&num[k]),
        }
    }
}

fn normalize_wide(mut num: Vec<i128>, mut den: i128) -> Option<Coeffs> {
    if den == 0 {
        return None;
    }
    if den < 0 {
        den = den.checked_neg()?;
        for x in num.iter_mut() {
            *x = x.checked_neg()?;
        }
    }
    let mut g = den;
    for &x in &num {
        if g == 1 {
            break;
        }
        if x != 0 {
            g = g.gcd(&x);
        }
    }
    if num.iter().all(|&x| x == 0) {
        g = den;
    }
    if g > 1 {
        den /= g;
        for x in num.iter_mut() {
            *x /= g;
        }
    }
    let den64 = i64::try_from(den).ok()?;
    let mut out = Vec::with_capacity(num.len());
    for x in num {
        out.push(i64::try_from(x).ok()?);
    }
    Some(Coeffs::Small { num: out, den: den64 })
}

fn normalize_big(mut num: Vec<BigInt>, mut den: BigInt) -> Coeffs {
    assert!(!Zero::is_zero(&den), "zero denominator");
    if den.is_negative() {
        den = -den;
        for x in num.iter_mut() {
            *x = -&*x;
        }
    }
    let mut g = den.clone();
    let mut all_zero = true;
    for x in &num {
        if !Zero::is_zero(x) {
            all_zero = false;
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
    }
    if all_zero {
        g = den.clone();
    }
    if !g.is_one() {
        den /= &g;
        for x in num.iter_mut() {
            *x /= &g;
        }
    }
    // demote when everything fits
    if let Some(den64) = den.to_i64() {
        let small: Option<Vec<i64>> = num.iter().map(|x| x.to_i64()).collect();
        if let Some(num) = small {
            return Coeffs::Small { num, den: den64 };
        }
    }
    Coeffs::Big { num, den }
}

impl CycNum {
    fn from_parts_wide(conductor: u32, num: Vec<i128>, den: i128) -> Option<Self> {
        normalize_wide(num, den).map(|coeffs| CycNum { conductor, coeffs })
    }

    fn from_parts_big(conductor: u32, num: Vec<BigInt>, den: BigInt) -> Self {
        CycNum { conductor, coeffs: normalize_big(num, den) }
    }

    /// Builds an element from raw (not necessarily reduced) coefficients on
    /// `ζ_M^0, …, ζ_M^{M-1}`.
    pub fn from_coefficients(conductor: u32, coeffs: &[BigRational]) -> Result<Self, CycError> {
        if conductor == 0 {
            return Err(CycError::ZeroConductor);
        }
        let m = conductor as usize;
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); m];
        for (k, c) in coeffs.iter().enumerate() {
            num[k % m] += c.numer() * (&den / c.denom());
        }
        Layout::new(conductor).reduce(&mut num);
        Ok(Self::from_parts_big(conductor, num, den))
    }

    pub fn zero() -> Self {
        CycNum { conductor: 1, coeffs: Coeffs::Small { num: vec![0], den: 1 } }
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        CycNum { conductor: 1, coeffs: Coeffs::Small { num: vec![v], den: 1 } }
    }

    pub fn from_rational(r: &BigRational) -> Self {
        Self::from_parts_big(1, vec![r.numer().clone()], r.denom().clone())
    }

    /// `ζ_M^k`, with `k` reduced modulo `M`.
    pub fn root_of_unity(m: u32, k: i64) -> Result<Self, CycError> {
        if m == 0 {
            return Err(CycError::ZeroConductor);
        }
        let mm = m as usize;
        let e = k.rem_euclid(m as i64) as usize;
        let mut num = vec![0i128; mm];
        num[e] = 1;
        Layout::new(m).reduce(&mut num).expect("unit coefficients cannot overflow");
        Ok(Self::from_parts_wide(m, num, 1).expect("unit coefficients fit"))
    }

    /// `√−1 = ζ_4`.
    pub fn i() -> Self {
        Self::root_of_unity(4, 1).unwrap()
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        match &self.coeffs {
            Coeffs::Small { num, .. } => num.iter().all(|&x| x == 0),
            Coeffs::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == CycNum::one()
    }

    /// Canonical coefficients on `ζ_M^0, …, ζ_M^{M-1}`.
    pub fn coefficients(&self) -> Vec<BigRational> {
        let (num, den) = self.coeffs.big();
        num.into_iter().map(|n| BigRational::new(n, den.clone())).collect()
    }

    /// Nonzero canonical terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, BigRational)> {
        self.coefficients()
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    fn nonzero_count(&self) -> usize {
        (0..self.coeffs.len()).filter(|&k| !self.coeffs.is_zero_at(k)).count()
    }

    /// Returns the rational value when the element lies in `Q`.
    pub fn to_rational(&self) -> Option<BigRational> {
        let one = CycNum::one().promote(self.conductor).ok()?;
        let terms = self.terms();
        if terms.is_empty() {
            return Some(BigRational::zero());
        }
        // a rational element is a scalar multiple of the reduced form of 1
        let one_terms = one.terms();
        if terms.len() != one_terms.len() {
            return None;
        }
        let ratio = &terms[0].1 / &one_terms[0].1;
        for ((k, c), (k1, c1)) in terms.iter().zip(one_terms.iter()) {
            if k != k1 || *c != &ratio * c1 {
                return None;
            }
        }
        Some(ratio)
    }

    /// Re-expresses the element in `Q(ζ_to)`; `conductor` must divide `to`.
    pub fn promote(&self, to: u32) -> Result<Self, CycError> {
        if to == self.conductor {
            return Ok(self.clone());
        }
        if to == 0 || to % self.conductor != 0 {
            return Err(CycError::NotDivisor { from: self.conductor, to });
        }
        let factor = (to / self.conductor) as usize;
        let m = to as usize;
        let layout = Layout::new(to);
        if let Some((num, den)) = self.coeffs.wide() {
            let mut v = vec![0i128; m];
            for (k, c) in num.into_iter().enumerate() {
                if c != 0 {
                    v[k * factor] = c;
                }
            }
            if layout.reduce(&mut v).is_some() {
                if let Some(out) = Self::from_parts_wide(to, v, den) {
                    return Ok(out);
                }
            }
        }
        let (num, den) = self.coeffs.big();
        let mut v = vec![BigInt::zero(); m];
        for (k, c) in num.into_iter().enumerate() {
            v[k * factor] = c;
        }
        layout.reduce(&mut v);
        Ok(Self::from_parts_big(to, v, den))
    }

    fn aligned(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let l = lcm_u32(a.conductor, b.conductor);
        (a.promote(l).unwrap(), b.promote(l).unwrap())
    }

    fn add_sub(&self, other: &CycNum, negate: bool) -> CycNum {
        if self.conductor != other.conductor {
            let (a, b) = Self::aligned(self, other);
            return a.add_sub(&b, negate);
        }
        let m = self.conductor;
        if let (Some((an, ad)), Some((bn, bd))) = (self.coeffs.wide(), other.coeffs.wide()) {
            let l = ad.lcm(&bd);
            let (fa, fb) = (l / ad, l / bd);
            let combined: Option<Vec<i128>> = an
                .iter()
                .zip(bn.iter())
                .map(|(x, y)| {
                    let x = x.checked_mul(fa)?;
                    let y = y.checked_mul(fb)?;
                    if negate {
                        x.checked_sub(y)
                    } else {
                        x.checked_add(y)
                    }
                })
                .collect();
            if let Some(v) = combined {
                if let Some(out) = Self::from_parts_wide(m, v, l) {
                    return out;
                }
            }
        }
        let (an, ad) = self.coeffs.big();
        let (bn, bd) = other.coeffs.big();
        let l = ad.lcm(&bd);
        let (fa, fb) = (&l / &ad, &l / &bd);
        let v = an
            .iter()
            .zip(bn.iter())
            .map(|(x, y)| if negate { x * &fa - y * &fb } else { x * &fa + y * &fb })
            .collect();
        Self::from_parts_big(m, v, l)
    }

    fn mul_impl(&self, other: &CycNum) -> CycNum {
        if self.conductor != other.conductor {
            let (a, b) = Self::aligned(self, other);
            return a.mul_impl(&b);
        }
        let m = self.conductor as usize;
        let layout = Layout::new(self.conductor);
        if let (Some((an, ad)), Some((bn, bd))) = (self.coeffs.wide(), other.coeffs.wide()) {
            if let Some(out) = convolve(&an, &bn, m, &layout).and_then(|v| {
                let den = ad.checked_mul(bd)?;
                Self::from_parts_wide(self.conductor, v, den)
            }) {
                return out;
            }
        }
        let (an, ad) = self.coeffs.big();
        let (bn, bd) = other.coeffs.big();
        let v = convolve(&an, &bn, m, &layout).expect("bigint arithmetic does not overflow");
        Self::from_parts_big(self.conductor, v, ad * bd)
    }

    /// Applies the Galois automorphism `ζ_M ↦ ζ_M^a` (`gcd(a, M) = 1`).
    pub fn galois(&self, a: i64) -> CycNum {
        let m = self.conductor as usize;
        let a = a.rem_euclid(m as i64) as usize;
        debug_assert_eq!(a.gcd(&m) * (m > 1) as usize, (m > 1) as usize);
        let layout = Layout::new(self.conductor);
        if let Some((num, den)) = self.coeffs.wide() {
            let mut v = vec![0i128; m];
            for (k, c) in num.into_iter().enumerate() {
                if c != 0 {
                    v[(k * a) % m] = c;
                }
            }
            if layout.reduce(&mut v).is_some() {
                if let Some(out) = Self::from_parts_wide(self.conductor, v, den) {
                    return out;
                }
            }
        }
        let (num, den) = self.coeffs.big();
        let mut v = vec![BigInt::zero(); m];
        for (k, c) in num.into_iter().enumerate() {
            v[(k * a) % m] = c;
        }
        layout.reduce(&mut v);
        Self::from_parts_big(self.conductor, v, den)
    }

    /// Complex conjugation, `ζ_M ↦ ζ_M^{M-1}`.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        self.conj() == *self
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if self.nonzero_count() == 1 {
            // c·ζ^k
            let (k, c) = self.terms().pop().unwrap();
            let m = self.conductor;
            let root = CycNum::root_of_unity(m, -(k as i64))?;
            return Ok(root.scale(&c.recip()));
        }
        let layout = Layout::new(self.conductor);
        let (num, den) = self.coeffs.big();
        let inv = modular::invert(&layout, &num, &den, |cand| {
            let prod = self * cand;
            prod.is_one()
        });
        Ok(inv.unwrap_or_else(|| self.inv_exact(&layout)))
    }

    /// Gaussian elimination over `Q` on the multiplication matrix; used only
    /// when the modular route does not certify within its prime budget.
    fn inv_exact(&self, layout: &Layout) -> CycNum {
        let basis = layout.basis();
        let n = basis.len();
        let mut a: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
        for (col, &s) in basis.iter().enumerate() {
            let shifted = self * &CycNum::root_of_unity(self.conductor, s as i64).unwrap();
            let coeffs = shifted.coefficients();
            for (row, &b) in basis.iter().enumerate() {
                a[row][col] = coeffs[b].clone();
            }
        }
        let one = CycNum::one().promote(self.conductor).unwrap().coefficients();
        for (row, &b) in basis.iter().enumerate() {
            a[row][n] = one[b].clone();
        }
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("nonzero element is invertible");
            a.swap(c, p);
            let piv = a[c][c].clone();
            for x in a[c].iter_mut() {
                *x = &*x / &piv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    for k in c..=n {
                        let t = &f * &a[c][k];
                        a[r][k] -= t;
                    }
                }
            }
        }
        let mut coeffs = vec![BigRational::zero(); layout.m];
        for (row, &b) in basis.iter().enumerate() {
            coeffs[b] = a[row][n].clone();
        }
        CycNum::from_coefficients(self.conductor, &coeffs).unwrap()
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        self * &CycNum::from_rational(r)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum, CycError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = CycNum::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    /// Relative cost of inverting this element; guides pivot selection.
    pub fn inversion_cost(&self) -> usize {
        match self.nonzero_count() {
            0 => usize::MAX,
            1 => 1,
            k => 1 + k * k,
        }
    }

    /// Certified enclosure of the image under `ζ_M ↦ e^{2πi/M}`.
    pub fn eval_complex(&self, precision: u32) -> ComplexInterval {
        let precision = precision.max(32);
        let (num, den) = self.coeffs.big();
        let terms: Vec<(usize, BigInt)> = num
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(c))
            .collect();
        if terms.is_empty() {
            return ComplexInterval::exact_zero(precision);
        }
        let trig = FixedPointTrig::new(precision + 16 + bit_length(self.conductor as u64));
        let pairs = terms
            .into_iter()
            .map(|(k, c)| (c, trig.root_of_unity(k as u64, self.conductor as u64)));
        ComplexInterval::linear_combination(pairs, &den, trig.bits(), precision)
    }

    /// Floating-point approximation `(re, im)`.
    pub fn to_c64(&self) -> (f64, f64) {
        let z = self.eval_complex(64);
        (z.re.midpoint_f64(), z.im.midpoint_f64())
    }

    /// Exact sign of a real element: the zero test is symbolic, the nonzero
    /// case refines an interval enclosure until it excludes zero.
    pub fn real_sign(&self) -> Result<Sign, CycError> {
        if !self.is_real() {
            return Err(CycError::NotReal(self.to_string()));
        }
        if self.is_zero() {
            return Ok(Sign::Zero);
        }
        let mut bits = 64;
        loop {
            let z = self.eval_complex(bits);
            match z.re.sign() {
                Some(Ordering::Greater) => return Ok(Sign::Positive),
                Some(Ordering::Less) => return Ok(Sign::Negative),
                _ => bits *= 2,
            }
        }
    }
}

fn bit_length(x: u64) -> u32 {
    64 - x.leading_zeros()
}

fn convolve<C: Coef>(a: &[C], b: &[C], m: usize, layout: &Layout) -> Option<Vec<C>> {
    let bnz: Vec<(usize, &C)> = b.iter().enumerate().filter(|(_, c)| !c.is_nil()).collect();
    let mut out = vec![C::nil(); m];
    for (i, x) in a.iter().enumerate() {
        if x.is_nil() {
            continue;
        }
        for &(j, y) in &bnz {
            let t = (i + j) % m;
            out[t] = out[t].add(&x.mul(y)?)?;
        }
    }
    layout.reduce(&mut out)?;
    Some(out)
}

impl PartialEq for CycNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = Self::aligned(self, other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycNum {}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({})", self)
    }
}

/// Canonical text: `[M] c0 + c1*z + c2*z^2 …` over the basis terms.
impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ", self.conductor)?;
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (k, c)) in terms.iter().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (*k, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{}*z", mag)?,
                (k, true) => write!(f, "z^{}", k)?,
                (k, false) => write!(f, "{}*z^{}", mag, k)?,
            }
        }
        Ok(())
    }
}

impl FromStr for CycNum {
    type Err = CycError;

    /// Parses the canonical text form; any sum of `c*z^k` terms is accepted
    /// and reduced.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || CycError::Parse(s.to_string());
        let s = s.trim();
        let rest = s.strip_prefix('[').ok_or_else(err)?;
        let close = rest.find(']').ok_or_else(err)?;
        let m: u32 = rest[..close].trim().parse().map_err(|_| err())?;
        if m == 0 {
            return Err(CycError::ZeroConductor);
        }
        let body: String = rest[close + 1..].chars().filter(|c| !c.is_whitespace()).collect();
        let mut coeffs = vec![BigRational::zero(); m as usize];
        let mut term = String::new();
        let mut sign = 1i32;
        let flush = |term: &str, sign: i32, coeffs: &mut Vec<BigRational>| -> Result<(), CycError> {
            if term.is_empty() {
                return Err(err());
            }
            let (coef, exp) = match term.find('z') {
                None => (term, 0usize),
                Some(pos) => {
                    let c = term[..pos].trim_end_matches('*');
                    let e = &term[pos + 1..];
                    let e = if e.is_empty() { 1 } else { e.strip_prefix('^').ok_or_else(err)?.parse().map_err(|_| err())? };
                    (c, e)
                }
            };
            let c = if coef.is_empty() { BigRational::one() } else { coef.parse::<BigRational>().map_err(|_| err())? };
            let c = if sign < 0 { -c } else { c };
            let idx = exp % m as usize;
            coeffs[idx] = &coeffs[idx] + c;
            Ok(())
        };
        let chars: Vec<char> = body.chars().collect();
        for (i, &ch) in chars.iter().enumerate() {
            let is_op = (ch == '+' || ch == '-') && i > 0 && chars[i - 1] != '^';
            if is_op {
                flush(&term, sign, &mut coeffs)?;
                term.clear();
                sign = if ch == '-' { -1 } else { 1 };
            } else if i == 0 && ch == '-' {
                sign = -1;
            } else {
                term.push(ch);
            }
        }
        flush(&term, sign, &mut coeffs)?;
        CycNum::from_coefficients(m, &coeffs)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a CycNum> for &'a CycNum {
            type Output = CycNum;
            fn $method(self, rhs: &'a CycNum) -> CycNum {
                let f: fn(&CycNum, &CycNum) -> CycNum = $body;
                f(self, rhs)
            }
        }
        impl $trait<CycNum> for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_sub(b, false));
forward_binop!(Sub, sub, |a, b| a.add_sub(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a * &b.inv().expect("division by zero"));

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        match &self.coeffs {
            Coeffs::Small { num, den } if num.iter().all(|&x| x != i64::MIN) => CycNum {
                conductor: self.conductor,
                coeffs: Coeffs::Small { num: num.iter().map(|&x| -x).collect(), den: *den },
            },
            _ => {
                let (num, den) = self.coeffs.big();
                CycNum::from_parts_big(self.conductor, num.into_iter().map(|x| -x).collect(), den)
            }
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::one()
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_i64(v)
    }
}
