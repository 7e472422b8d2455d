use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::Int;

/// An element of `Cl ≅ Z^r`; also read as a character of the torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<Int>);

impl Weight {
    pub fn new(coords: Vec<Int>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Pairing with a one-parameter subgroup.
    pub fn dot(&self, lambda: &[Int]) -> Int {
        assert_eq!(self.0.len(), lambda.len(), "rank mismatch");
        self.0.iter().zip(lambda).map(|(a, b)| a * b).sum()
    }

    pub fn scale(&self, k: Int) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl From<Vec<Int>> for Weight {
    fn from(v: Vec<Int>) -> Self {
        Weight(v)
    }
}

impl<const N: usize> From<[Int; N]> for Weight {
    fn from(v: [Int; N]) -> Self {
        Weight(v.to_vec())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.0.len(), rhs.0.len(), "rank mismatch");
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// Collapses a list of weights into (value, multiplicity), sorted by value.
pub fn multiset(weights: &[Weight]) -> Vec<(Weight, usize)> {
    let mut sorted = weights.to_vec();
    sorted.sort();
    let mut out: Vec<(Weight, usize)> = Vec::new();
    for w in sorted {
        match out.last_mut() {
            Some((v, k)) if *v == w => *k += 1,
            _ => out.push((w, 1)),
        }
    }
    out
}
