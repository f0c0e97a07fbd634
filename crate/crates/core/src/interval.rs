//! Outward-rounded fixed-point intervals for certified evaluation of
//! cyclotomic numbers.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

/// Closed interval `[lo, hi] · 2^{-bits}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub bits: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: RealInterval,
    pub im: RealInterval,
}

fn to_f64_scaled(x: &BigInt, bits: u32) -> f64 {
    // keep 64 significant bits before converting
    let len = x.bits() as i64;
    let shift = (len - 64).max(0);
    let head = (x >> shift as usize).to_f64().unwrap_or(0.0);
    head * 2f64.powi((shift - bits as i64) as i32)
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl RealInterval {
    pub fn point(v: BigInt, bits: u32) -> Self {
        RealInterval { lo: v.clone(), hi: v, bits }
    }

    /// `Some(ordering of the value against 0)` when the interval decides it.
    pub fn sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64_scaled(&(&self.lo + &self.hi), self.bits + 1)
    }

    pub fn width_f64(&self) -> f64 {
        to_f64_scaled(&(&self.hi - &self.lo), self.bits)
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        let lo = to_f64_scaled(&self.lo, self.bits);
        let hi = to_f64_scaled(&self.hi, self.bits);
        lo <= x && x <= hi
    }

    fn rescale(&self, bits: u32) -> RealInterval {
        if bits >= self.bits {
            let s = bits - self.bits;
            RealInterval { lo: &self.lo << s, hi: &self.hi << s, bits }
        } else {
            let d = BigInt::from(1) << (self.bits - bits);
            RealInterval { lo: floor_div(&self.lo, &d), hi: ceil_div(&self.hi, &d), bits }
        }
    }

    /// `true` when `other ⊆ self`.
    pub fn contains(&self, other: &RealInterval) -> bool {
        let b = self.bits.max(other.bits);
        let (a, o) = (self.rescale(b), other.rescale(b));
        a.lo <= o.lo && o.hi <= a.hi
    }

    pub fn add(&self, other: &RealInterval) -> RealInterval {
        let b = self.bits.max(other.bits);
        let (a, o) = (self.rescale(b), other.rescale(b));
        RealInterval { lo: a.lo + o.lo, hi: a.hi + o.hi, bits: b }
    }

    pub fn neg(&self) -> RealInterval {
        RealInterval { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn sub(&self, other: &RealInterval) -> RealInterval {
        self.add(&other.neg())
    }

    /// Product, rounded outward to the larger of the two precisions.
    pub fn mul(&self, other: &RealInterval) -> RealInterval {
        let cands = [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        let prod = RealInterval { lo, hi, bits: self.bits + other.bits };
        prod.rescale(self.bits.max(other.bits))
    }
}

impl ComplexInterval {
    pub fn exact_zero(bits: u32) -> Self {
        let z = RealInterval::point(BigInt::zero(), bits);
        ComplexInterval { re: z.clone(), im: z }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.re.sign() == Some(Ordering::Equal) && self.im.sign() == Some(Ordering::Equal)
    }

    pub fn contains(&self, other: &ComplexInterval) -> bool {
        self.re.contains(&other.re) && self.im.contains(&other.im)
    }

    pub fn add(&self, other: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: self.re.add(&other.re), im: self.im.add(&other.im) }
    }

    pub fn mul(&self, other: &ComplexInterval) -> ComplexInterval {
        let re = self.re.mul(&other.re).sub(&self.im.mul(&other.im));
        let im = self.re.mul(&other.im).add(&self.im.mul(&other.re));
        ComplexInterval { re, im }
    }

    /// Encloses `Σ c_k · w_k / den` at `out_bits`, where each `w_k` is a
    /// fixed-point ball at `work_bits`.
    pub(crate) fn linear_combination<I>(pairs: I, den: &BigInt, work_bits: u32, out_bits: u32) -> ComplexInterval
    where
        I: IntoIterator<Item = (BigInt, (Ball, Ball))>,
    {
        let mut re_mid = BigInt::zero();
        let mut re_rad = BigInt::zero();
        let mut im_mid = BigInt::zero();
        let mut im_rad = BigInt::zero();
        for (c, (cos, sin)) in pairs {
            re_mid += &c * &cos.mid;
            im_mid += &c * &sin.mid;
            let a = c.abs();
            re_rad += &a * &cos.rad;
            im_rad += &a * &sin.rad;
        }
        let scale = den << (work_bits - out_bits);
        let fin = |mid: BigInt, rad: BigInt| RealInterval {
            lo: floor_div(&(&mid - &rad), &scale),
            hi: ceil_div(&(&mid + &rad), &scale),
            bits: out_bits,
        };
        ComplexInterval { re: fin(re_mid, re_rad), im: fin(im_mid, im_rad) }
    }
}

/// `mid ± rad` in units of `2^{-bits}`.
#[derive(Debug, Clone)]
pub(crate) struct Ball {
    pub mid: BigInt,
    pub rad: BigInt,
}

/// Cosines and sines of rational multiples of `2π` at a fixed precision.
pub(crate) struct FixedPointTrig {
    bits: u32,
    pi: BigInt,
}

fn atan_inv(x: u64, bits: u32) -> BigInt {
    // Σ (-1)^n / ((2n+1) x^{2n+1}), each term truncated
    let one = BigInt::from(1) << bits;
    let x2 = BigInt::from(x * x);
    let mut power = &one / BigInt::from(x);
    let mut sum = BigInt::zero();
    let mut n: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * n + 1);
        if n % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        n += 1;
    }
    sum
}

impl FixedPointTrig {
    pub fn new(bits: u32) -> Self {
        let guard = bits + 32;
        let pi_g = atan_inv(5, guard) * 16 - atan_inv(239, guard) * 4;
        let pi = pi_g >> 32usize;
        FixedPointTrig { bits, pi }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// `(cos, sin)` of `2πk/m`.
    pub fn root_of_unity(&self, k: u64, m: u64) -> (Ball, Ball) {
        let k = k % m;
        let quadrant = (4 * k) / m;
        let rem = 4 * k - quadrant * m;
        // α = 2π·(rem/4)/m = π·rem/(2m) ∈ [0, π/2)
        let (c, s) = if rem == 0 {
            let one = BigInt::from(1) << self.bits;
            (Ball { mid: one, rad: BigInt::zero() }, Ball { mid: BigInt::zero(), rad: BigInt::zero() })
        } else {
            let alpha = (&self.pi * BigInt::from(rem)) / BigInt::from(2 * m);
            self.taylor(&alpha)
        };
        let negate = |b: &Ball| Ball { mid: -&b.mid, rad: b.rad.clone() };
        match quadrant {
            0 => (c, s),
            1 => (negate(&s), c),
            2 => (negate(&c), negate(&s)),
            _ => (s, negate(&c)),
        }
    }

    fn taylor(&self, x: &BigInt) -> (Ball, Ball) {
        let one = BigInt::from(1) << self.bits;
        let x2 = (x * x) >> self.bits as usize;
        let mut sin = BigInt::zero();
        let mut cos = BigInt::zero();
        let mut s_term = x.clone();
        let mut c_term = one;
        let mut n: u64 = 0;
        let mut steps: u64 = 0;
        while !(s_term.is_zero() && c_term.is_zero()) {
            if n % 2 == 0 {
                sin += &s_term;
                cos += &c_term;
            } else {
                sin -= &s_term;
                cos -= &c_term;
            }
            c_term = ((&c_term * &x2) >> self.bits as usize) / BigInt::from((2 * n + 1) * (2 * n + 2));
            s_term = ((&s_term * &x2) >> self.bits as usize) / BigInt::from((2 * n + 2) * (2 * n + 3));
            n += 1;
            steps += 1;
        }
        let rad = BigInt::from(8 * (steps + 4));
        (Ball { mid: cos, rad: rad.clone() }, Ball { mid: sin, rad })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let t = FixedPointTrig::new(200);
        let approx = to_f64_scaled(&t.pi, 200);
        assert!((approx - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn unit_circle_values() {
        let t = FixedPointTrig::new(128);
        for m in [3u64, 5, 7, 12, 60] {
            for k in 0..m {
                let (c, s) = t.root_of_unity(k, m);
                let ang = 2.0 * std::f64::consts::PI * k as f64 / m as f64;
                assert!((to_f64_scaled(&c.mid, 128) - ang.cos()).abs() < 1e-14);
                assert!((to_f64_scaled(&s.mid, 128) - ang.sin()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn interval_product_contains_points() {
        let a = RealInterval { lo: BigInt::from(-3), hi: BigInt::from(5), bits: 2 };
        let b = RealInterval { lo: BigInt::from(2), hi: BigInt::from(7), bits: 2 };
        let p = a.mul(&b);
        assert!(p.contains_f64(-0.75 * 1.75) && p.contains_f64(1.25 * 1.75));
        assert!(a.contains(&RealInterval::point(BigInt::from(0), 5)));
    }
}
