//! Multivariate Laurent polynomials `Z[t_1^{±1}, …, t_m^{±1}]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cyclotomic::{lcm_u32, CycNum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse Laurent polynomial: {0}")]
pub struct LaurentParseError(String);

/// Exponent vectors carry no trailing zeros, so every monomial has a unique
/// key regardless of how many variables are in play.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Vec<i32>, BigInt>,
}

fn trim(mut e: Vec<i32>) -> Vec<i32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(Vec::new(), BigInt::from(c))
    }

    pub fn monomial(exponents: Vec<i32>, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(trim(exponents), coeff);
        }
        LaurentPoly { terms }
    }

    /// `t_{j+1}^e` (variables are indexed from zero).
    pub fn var_pow(j: usize, e: i32) -> Self {
        let mut ex = vec![0; j + 1];
        ex[j] = e;
        Self::monomial(ex, BigInt::one())
    }

    pub fn var(j: usize) -> Self {
        Self::var_pow(j, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Highest variable index that occurs, plus one.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<i32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let entry = self.terms.entry(e.clone()).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn combine(&self, o: &Self, sign: i32) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), if sign < 0 { -c } else { c.clone() });
        }
        out
    }

    fn mul_impl(&self, o: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let n = ea.len().max(eb.len());
                let e = (0..n)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    /// Evaluates at arbitrary cyclotomic values of the variables.
    pub fn eval(&self, point: &[CycNum]) -> CycNum {
        let mut acc = CycNum::zero();
        for (e, c) in &self.terms {
            let mut term = CycNum::from_rational(&num_rational::BigRational::from_integer(c.clone()));
            for (j, &k) in e.iter().enumerate() {
                if k != 0 {
                    let v = point.get(j).expect("evaluation point has too few coordinates");
                    term = &term * &v.pow(k as i64).expect("evaluation at zero of a negative power");
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Evaluates at roots of unity: `t_{j+1} ↦ ζ_{d_j}^{k_j}` for
    /// `point[j] = (d_j, k_j)`. One reduction for the whole sum.
    pub fn eval_roots(&self, point: &[(u32, i64)]) -> CycNum {
        let l = point.iter().fold(1u32, |acc, &(d, _)| lcm_u32(acc, d));
        let lm = l as i64;
        let mut coeffs = vec![num_rational::BigRational::zero(); l as usize];
        for (e, c) in &self.terms {
            let mut exp: i64 = 0;
            for (j, &k) in e.iter().enumerate() {
                let (d, kj) = *point.get(j).expect("evaluation point has too few coordinates");
                exp += (k as i64) * kj * (lm / d as i64);
                exp = exp.rem_euclid(lm);
            }
            let idx = exp as usize;
            coeffs[idx] = &coeffs[idx] + num_rational::BigRational::from_integer(c.clone());
        }
        CycNum::from_coefficients(l, &coeffs).expect("positive conductor")
    }

    /// Integer content of the coefficients.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }
}

impl crate::matrix::Ring for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.combine(o, 1)
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self.combine(o, -1)
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.mul_impl(o)
    }
    fn neg_ref(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &'a LaurentPoly) -> LaurentPoly {
        self.combine(o, 1)
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &'a LaurentPoly) -> LaurentPoly {
        self.combine(o, -1)
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &'a LaurentPoly) -> LaurentPoly {
        self.mul_impl(o)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        crate::matrix::Ring::neg_ref(self)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

/// Text form such as `3*t1^2*t2^-1 - 1`; terms in descending monomial order.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(j, &k)| if k == 1 { format!("t{}", j + 1) } else { format!("t{}^{}", j + 1, k) })
                .collect();
            if vars.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || LaurentParseError(s.to_string());
        let body: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if body.is_empty() {
            return Err(err());
        }
        let mut out = LaurentPoly::zero();
        let mut start = 0;
        let mut i = 0;
        let mut pieces = Vec::new();
        while i <= body.len() {
            let at_split = i == body.len() || ((body[i] == '+' || body[i] == '-') && i > 0 && body[i - 1] != '^');
            if at_split {
                pieces.push(body[start..i].iter().collect::<String>());
                start = i;
            }
            i += 1;
        }
        for piece in pieces {
            let (neg, rest) = match piece.chars().next() {
                Some('-') => (true, &piece[1..]),
                Some('+') => (false, &piece[1..]),
                _ => (false, piece.as_str()),
            };
            if rest.is_empty() {
                return Err(err());
            }
            let mut coeff = BigInt::one();
            let mut exps: Vec<i32> = Vec::new();
            for factor in rest.split('*') {
                if let Some(v) = factor.strip_prefix('t') {
                    let (idx, pow) = match v.split_once('^') {
                        Some((a, b)) => (a, b.parse::<i32>().map_err(|_| err())?),
                        None => (v, 1),
                    };
                    let idx: usize = idx.parse().map_err(|_| err())?;
                    if idx == 0 {
                        return Err(err());
                    }
                    if exps.len() < idx {
                        exps.resize(idx, 0);
                    }
                    exps[idx - 1] += pow;
                } else {
                    let c: BigInt = factor.parse().map_err(|_| err())?;
                    coeff *= c;
                }
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(exps, coeff);
        }
        Ok(out)
    }
}

impl serde::Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Number of variables a coefficient can be bounded by, for diagnostics.
pub fn max_abs_coefficient(p: &LaurentPoly) -> f64 {
    p.terms.values().map(|c| c.abs().to_f64().unwrap_or(f64::INFINITY)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let t1 = LaurentPoly::var(0);
        let t2 = LaurentPoly::var(1);
        let one = LaurentPoly::one();
        let a = &one - &t1;
        let b = &a * &t2;
        assert_eq!(b.num_terms(), 2);
        let inv = LaurentPoly::var_pow(0, -1);
        assert_eq!(&t1 * &inv, one);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn text_round_trip() {
        let p: LaurentPoly = "3*t1^2*t2^-1 - 1".parse().unwrap();
        assert_eq!(p.to_string(), "3*t1^2*t2^-1 - 1");
        let q: LaurentPoly = "-t2 + 2 - t1^-3".parse().unwrap();
        assert_eq!(q.to_string().parse::<LaurentPoly>().unwrap(), q);
        assert!("t0".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn evaluation_paths_agree() {
        let p: LaurentPoly = "3*t1^2*t2^-1 - 1 + t2^4".parse().unwrap();
        let point = [(3u32, 2i64), (5u32, -1i64)];
        let vals: Vec<CycNum> = point.iter().map(|&(d, k)| CycNum::root_of_unity(d, k).unwrap()).collect();
        assert_eq!(p.eval_roots(&point), p.eval(&vals));
    }
}
