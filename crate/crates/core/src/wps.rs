//! Weighted projective spaces `P(n_0, ..., n_k)`.
//!
//! With `gcd(n_i) = 1` the Picard group is infinite cyclic, its ample
//! generator pulls back to `O(s)` on `P^k` with `s = lcm(n_i)`, and global
//! sections of its `d`-th power are the degree-`ds` part of the graded
//! polynomial ring. Graded dimensions here are computed for any degree.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::root_system::RootDatum;

/// Weights of a weighted projective space, gcd 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct WpsWeights(Vec<u64>);

impl WpsWeights {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Validation("weight tuple is empty".into()));
        }
        if weights.contains(&0) {
            return Err(Error::Validation(format!(
                "weights must be positive, got {weights:?}"
            )));
        }
        let g = weights.iter().fold(0u64, |acc, w| acc.gcd(w));
        if g != 1 {
            return Err(Error::Validation(format!(
                "weights {weights:?} have gcd {g}, expected 1"
            )));
        }
        Ok(WpsWeights(weights))
    }

    pub fn weights(&self) -> &[u64] {
        &self.0
    }

    /// Dimension `k` of `P(n_0, ..., n_k)`.
    pub fn dimension(&self) -> usize {
        self.0.len() - 1
    }

    /// Degree `s = lcm(n_i)` of the ample generator `O(s)`.
    pub fn generator_degree(&self) -> u64 {
        self.0.iter().fold(1u64, |acc, w| acc.lcm(w))
    }

    /// Number of monomials `z^m` with `sum m_i n_i = d`.
    pub fn hilbert_dim(&self, d: u64) -> BigUint {
        HilbertTable::compute(self.clone(), d).get(d).expect("in range").clone()
    }
}

impl fmt::Display for WpsWeights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// `(1, a_1^vee, ..., a_k^vee)`: the genus-one moduli space as a weighted
/// projective space.
pub fn wps_from_group(datum: &RootDatum) -> WpsWeights {
    let mut w = vec![1u64];
    w.extend(datum.comarks().iter().map(|&c| c as u64));
    WpsWeights::new(w).expect("leading weight 1 forces gcd 1")
}

/// Hilbert function of `C[z_0..z_k]` (graded by the weights) on `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertTable {
    weights: WpsWeights,
    values: Vec<BigUint>,
}

impl HilbertTable {
    /// Coin-counting recurrence: add one variable at a time.
    pub fn compute(weights: WpsWeights, max_degree: u64) -> Self {
        let n = max_degree as usize + 1;
        let mut values = vec![BigUint::zero(); n];
        values[0] = BigUint::one();
        for &w in weights.weights() {
            let w = w as usize;
            for d in w..n {
                let (lo, hi) = values.split_at_mut(d);
                hi[0] += &lo[d - w];
            }
        }
        HilbertTable { weights, values }
    }

    pub fn weights(&self) -> &WpsWeights {
        &self.weights
    }

    pub fn max_degree(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, d: u64) -> Option<&BigUint> {
        self.values.get(d as usize)
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }
}

/// Shared memo of Hilbert tables: concurrent readers, serialized fills.
///
/// A fill recomputes the table up to the larger requested degree, so an
/// entry only ever grows and values already handed out never change.
#[derive(Debug, Default)]
pub struct HilbertCache {
    tables: RwLock<HashMap<WpsWeights, HilbertTable>>,
}

impl HilbertCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self, weights: &WpsWeights, d: u64) -> BigUint {
        {
            let read = self.tables.read().expect("cache lock poisoned");
            if let Some(v) = read.get(weights).and_then(|t| t.get(d)) {
                return v.clone();
            }
        }
        let mut write = self.tables.write().expect("cache lock poisoned");
        let table = write
            .entry(weights.clone())
            .or_insert_with(|| HilbertTable::compute(weights.clone(), d));
        if table.max_degree() < d {
            *table = HilbertTable::compute(weights.clone(), d);
        }
        table.get(d).expect("filled").clone()
    }

    pub fn len(&self) -> usize {
        self.tables.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}
