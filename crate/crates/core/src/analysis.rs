//! What can be said about the image `θ_ρ(B_{n,Λ})` without computing it.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cover::{CoverSpec, Character};

/// Pairs `(n, d)` for which a block of size `n ≥ 3` with a primitive `d`-th
/// root of unity does not force an infinite image.
pub const EXCEPTIONAL_PAIRS: [(usize, u32); 8] = [(3, 3), (3, 4), (3, 6), (3, 10), (4, 4), (4, 6), (5, 6), (6, 6)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictTag {
    Infinite,
    ExceptionalPairOnly,
    CriterionSilent,
}

/// A witness is a 1-based block index with its `(n_i, d_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub block: usize,
    pub size: usize,
    pub degree: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ImageVerdict {
    /// Some block has `n_i ≥ 3`, primitive `ρ_i` and `(n_i, d_i)` outside the
    /// exceptional set.
    Infinite { witness: Witness },
    /// Every block meeting the size and primitivity conditions is exceptional.
    ExceptionalPairOnly,
    /// No block meets the size and primitivity conditions.
    CriterionSilent,
}

impl ImageVerdict {
    pub fn tag(&self) -> VerdictTag {
        match self {
            ImageVerdict::Infinite { .. } => VerdictTag::Infinite,
            ImageVerdict::ExceptionalPairOnly => VerdictTag::ExceptionalPairOnly,
            ImageVerdict::CriterionSilent => VerdictTag::CriterionSilent,
        }
    }

    pub fn witness(&self) -> Option<Witness> {
        match self {
            ImageVerdict::Infinite { witness } => Some(*witness),
            _ => None,
        }
    }
}

/// `ζ_d^k` is a primitive `d`-th root of unity.
pub fn primitive_check(d: u32, k: u32) -> bool {
    k != 0 && k < d && k.gcd(&d) == 1
}

pub fn is_exceptional(n: usize, d: u32) -> bool {
    EXCEPTIONAL_PAIRS.contains(&(n, d))
}

pub fn image_finiteness(c: &CoverSpec, rho: &Character) -> ImageVerdict {
    let mut qualifying = false;
    for (j, (&n, (&d, &k))) in c.parts().iter().zip(c.degrees().iter().zip(rho.exps())).enumerate() {
        if n < 3 || !primitive_check(d, k) {
            continue;
        }
        qualifying = true;
        if !is_exceptional(n, d) {
            return ImageVerdict::Infinite { witness: Witness { block: j + 1, size: n, degree: d } };
        }
    }
    if qualifying {
        ImageVerdict::ExceptionalPairOnly
    } else {
        ImageVerdict::CriterionSilent
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(p: &[usize], d: &[u32], k: &[u32]) -> ImageVerdict {
        let c = CoverSpec::new(p.to_vec(), d.to_vec()).unwrap();
        image_finiteness(&c, &Character::new(&c, k.to_vec()).unwrap())
    }

    #[test]
    fn primitivity() {
        assert!(primitive_check(6, 1));
        assert!(!primitive_check(6, 2));
        assert!(primitive_check(5, 4));
        assert!(!primitive_check(5, 0));
    }

    #[test]
    fn verdicts() {
        let v = verdict(&[3, 1], &[5, 2], &[1, 1]);
        assert_eq!(v.witness(), Some(Witness { block: 1, size: 3, degree: 5 }));
        assert_eq!(verdict(&[3], &[4], &[1]), ImageVerdict::ExceptionalPairOnly);
        assert_eq!(verdict(&[3], &[4], &[2]), ImageVerdict::CriterionSilent);
        for k in [(1, 1), (2, 3), (0, 4)] {
            assert_eq!(verdict(&[2, 2], &[3, 5], &[k.0, k.1]), ImageVerdict::CriterionSilent);
        }
        assert_eq!(verdict(&[3, 4], &[3, 7], &[1, 3]).tag(), VerdictTag::Infinite);
    }
}
