//! Irreducible representations: Weyl dimension, Dynkin index, weight
//! multiplicities, and the minimal-index fundamental weights `w_d`.
//!
//! The Dynkin index of `V(l)` is computed in closed form as
//! `dim V(l) <l, l + 2 rho> / dim g`. The Freudenthal weight multiset gives
//! an independent route through `m = 1/2 sum_mu mult(mu) <mu, theta>^2`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{consistency, Error, Result};
use crate::root_system::{LieType, RootDatum, WeightVec};

/// Refuse to run Freudenthal on representations larger than this.
pub const FREUDENTHAL_MAX_DIM: u64 = 100_000;

/// Dense accumulation is used for tensor products while the bounding box
/// of the result has at most this many cells.
const DENSE_BOX_LIMIT: usize = 1 << 22;

/// Highest weight of an irreducible representation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IrrepLabel(WeightVec);

impl IrrepLabel {
    pub fn new(highest_weight: WeightVec) -> Result<Self> {
        if !highest_weight.is_dominant() {
            return Err(Error::Domain(format!(
                "highest weight {highest_weight} is not dominant"
            )));
        }
        Ok(IrrepLabel(highest_weight))
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        IrrepLabel(WeightVec::fundamental(rank, i))
    }

    pub fn trivial(rank: usize) -> Self {
        IrrepLabel(WeightVec::zero(rank))
    }

    pub fn highest_weight(&self) -> &WeightVec {
        &self.0
    }
}

fn check_rank(datum: &RootDatum, w: &WeightVec) -> Result<()> {
    if w.len() != datum.rank() {
        return Err(Error::Shape {
            expected: datum.rank(),
            got: w.len(),
        });
    }
    Ok(())
}

/// Weyl dimension formula, `prod_{a>0} <l+rho, a> / <rho, a>`.
pub fn weyl_dim(datum: &RootDatum, lambda: &IrrepLabel) -> Result<BigUint> {
    let lw = lambda.highest_weight();
    check_rank(datum, lw)?;
    let shifted: Vec<i64> = lw.coords().iter().map(|c| c + 1).collect();
    let rho = datum.rho().coords();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for alpha in datum.positive_roots() {
        let top = datum.pair_root_weight(alpha, &shifted);
        let bottom = datum.pair_root_weight(alpha, rho);
        // top/bottom = (tn/td) / (bn/bd)
        num *= BigInt::from(*top.numer()) * BigInt::from(*bottom.denom());
        den *= BigInt::from(*top.denom()) * BigInt::from(*bottom.numer());
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() || !q.is_positive() {
        return Err(consistency(format!(
            "{}: Weyl dimension of {} is not a positive integer",
            datum.lie(),
            lw
        )));
    }
    Ok(q.magnitude().clone())
}

/// Dynkin index `dim V(l) <l, l + 2 rho> / dim g`.
pub fn dynkin_index(datum: &RootDatum, lambda: &IrrepLabel) -> Result<BigUint> {
    let dim = weyl_dim(datum, lambda)?;
    let lw = lambda.highest_weight().coords();
    let l_plus_2rho: Vec<i64> = lw.iter().map(|c| c + 2).collect();
    let casimir = datum.pair_weights(lw, &l_plus_2rho);
    let num = BigInt::from(dim) * BigInt::from(*casimir.numer());
    let den = BigInt::from(*casimir.denom()) * BigInt::from(datum.dim_g());
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() || q.is_negative() {
        return Err(consistency(format!(
            "{}: Dynkin index of {} is {}/{}, not an integer",
            datum.lie(),
            lambda.highest_weight(),
            num,
            den
        )));
    }
    Ok(q.magnitude().clone())
}

/// Multiset of weights of a (possibly reducible) representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    lie: LieType,
    entries: BTreeMap<WeightVec, u64>,
}

impl WeightSystem {
    /// Builds a weight system from explicit multiplicities; zero entries are dropped.
    pub fn from_entries(
        lie: LieType,
        entries: impl IntoIterator<Item = (WeightVec, u64)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, m) in entries {
            if w.len() != lie.rank() {
                return Err(Error::Shape {
                    expected: lie.rank(),
                    got: w.len(),
                });
            }
            if m > 0 {
                *map.entry(w).or_insert(0) += m;
            }
        }
        Ok(WeightSystem { lie, entries: map })
    }

    /// The one-dimensional trivial representation.
    pub fn trivial(lie: LieType) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(WeightVec::zero(lie.rank()), 1);
        WeightSystem { lie, entries }
    }

    pub fn lie(&self) -> LieType {
        self.lie
    }

    pub fn entries(&self) -> &BTreeMap<WeightVec, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, w: &WeightVec) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    /// Total multiplicity, i.e. the dimension of the representation.
    pub fn dim(&self) -> u64 {
        self.entries.values().sum()
    }
}

/// Weight multiplicities of `V(l)` by Freudenthal's recursion.
pub fn freudenthal_weights(datum: &RootDatum, lambda: &IrrepLabel) -> Result<WeightSystem> {
    let top = lambda.highest_weight().clone();
    let dim = weyl_dim(datum, lambda)?;
    if dim > BigUint::from(FREUDENTHAL_MAX_DIM) {
        return Err(Error::Resource(format!(
            "{}: V{} has dimension {} > {}",
            datum.lie(),
            top,
            dim,
            FREUDENTHAL_MAX_DIM
        )));
    }

    let k = datum.rank();
    let simple: Vec<WeightVec> = (0..k)
        .map(|i| WeightVec::new(&datum.cartan()[i]))
        .collect();
    let roots: Vec<(&[i64], WeightVec, i64)> = datum
        .positive_roots()
        .iter()
        .map(|r| (r.as_slice(), datum.root_to_weight(r), r.iter().sum()))
        .collect();
    let norm_shift = |w: &WeightVec| {
        let s: Vec<i64> = w.coords().iter().map(|c| c + 1).collect();
        datum.pair_weights(&s, &s)
    };
    let top_norm = norm_shift(&top);

    let mut mult: HashMap<WeightVec, u64> = HashMap::new();
    mult.insert(top.clone(), 1);
    let mut layer = vec![top];
    let mut depth = 0i64;
    while !layer.is_empty() {
        depth += 1;
        let mut candidates: Vec<WeightVec> = layer
            .iter()
            .flat_map(|mu| simple.iter().map(move |a| mu.sub(a)))
            .collect();
        candidates.sort();
        candidates.dedup();

        let mut next = Vec::new();
        for nu in candidates {
            let mut acc = Rational64::zero();
            for (alpha, alpha_w, height) in &roots {
                let mut shifted = nu.clone();
                let mut step = 1;
                while step * height <= depth {
                    shifted = shifted.add(alpha_w);
                    if let Some(&m) = mult.get(&shifted) {
                        acc += datum.pair_root_weight(alpha, shifted.coords()) * (m as i64);
                    }
                    step += 1;
                }
            }
            let gap = top_norm - norm_shift(&nu);
            let m = if gap.is_zero() {
                if !acc.is_zero() {
                    return Err(consistency(format!(
                        "Freudenthal: vanishing denominator with nonzero numerator at {nu}"
                    )));
                }
                Rational64::zero()
            } else {
                acc * 2 / gap
            };
            if !m.is_integer() || m.is_negative() {
                return Err(consistency(format!(
                    "Freudenthal: multiplicity {m} of {nu} is not a nonnegative integer"
                )));
            }
            let m = m.to_integer() as u64;
            if m > 0 {
                mult.insert(nu.clone(), m);
                next.push(nu);
            }
        }
        layer = next;
    }

    let ws = WeightSystem::from_entries(datum.lie(), mult)?;
    if BigUint::from(ws.dim()) != dim {
        return Err(consistency(format!(
            "{}: Freudenthal total {} differs from Weyl dimension {}",
            datum.lie(),
            ws.dim(),
            dim
        )));
    }
    Ok(ws)
}

/// Index from a weight multiset: `1/2 sum_mu mult(mu) <mu, theta>^2`.
pub fn index_via_weights(ws: &WeightSystem, datum: &RootDatum) -> Result<BigUint> {
    if ws.lie() != datum.lie() {
        return Err(Error::Shape {
            expected: datum.rank(),
            got: ws.lie().rank(),
        });
    }
    let theta = datum.theta();
    let mut sum = BigRational::zero();
    for (mu, &m) in ws.entries() {
        let c = datum.pair_root_weight(theta, mu.coords());
        let c = BigRational::new(BigInt::from(*c.numer()), BigInt::from(*c.denom()));
        sum += &c * &c * BigInt::from(m);
    }
    let half = sum / BigInt::from(2);
    if !half.is_integer() {
        return Err(consistency(format!(
            "{}: weight-sum index {} is not an integer",
            datum.lie(),
            half
        )));
    }
    Ok(half.to_integer().magnitude().clone())
}

/// Weight multiset of `V (x) W`: all pairwise sums with multiplied multiplicities.
pub fn tensor_weight_system(v: &WeightSystem, w: &WeightSystem) -> Result<WeightSystem> {
    if v.lie() != w.lie() {
        return Err(Error::Shape {
            expected: v.lie().rank(),
            got: w.lie().rank(),
        });
    }
    let k = v.lie().rank();
    let bounds = |ws: &WeightSystem| -> Vec<(i64, i64)> {
        (0..k)
            .map(|i| {
                let it = ws.entries().keys().map(|x| x.coords()[i]);
                (it.clone().min().unwrap_or(0), it.max().unwrap_or(0))
            })
            .collect()
    };
    let (bv, bw) = (bounds(v), bounds(w));
    let lo: Vec<i64> = bv.iter().zip(&bw).map(|(a, b)| a.0 + b.0).collect();
    let extent: Vec<usize> = bv
        .iter()
        .zip(&bw)
        .zip(&lo)
        .map(|((a, b), l)| (a.1 + b.1 - l + 1) as usize)
        .collect();
    let cells = extent
        .iter()
        .try_fold(1usize, |acc, &e| acc.checked_mul(e))
        .unwrap_or(usize::MAX);

    if cells <= DENSE_BOX_LIMIT {
        let offset = |x: &WeightVec, y: &WeightVec| {
            let mut idx = 0usize;
            for i in 0..k {
                idx = idx * extent[i] + (x.coords()[i] + y.coords()[i] - lo[i]) as usize;
            }
            idx
        };
        let mut dense = vec![0u64; cells];
        for (x, &mx) in v.entries() {
            for (y, &my) in w.entries() {
                dense[offset(x, y)] += mx * my;
            }
        }
        let mut entries = BTreeMap::new();
        for (mut idx, m) in dense.into_iter().enumerate() {
            if m == 0 {
                continue;
            }
            let mut coords = vec![0i64; k];
            for i in (0..k).rev() {
                coords[i] = (idx % extent[i]) as i64 + lo[i];
                idx /= extent[i];
            }
            entries.insert(WeightVec::new(&coords), m);
        }
        return Ok(WeightSystem {
            lie: v.lie(),
            entries,
        });
    }

    let mut acc: HashMap<WeightVec, u64> = HashMap::new();
    for (x, &mx) in v.entries() {
        for (y, &my) in w.entries() {
            *acc.entry(x.add(y)).or_insert(0) += mx * my;
        }
    }
    WeightSystem::from_entries(v.lie(), acc)
}

/// Reflects a weight into the dominant chamber.
pub fn dominant_conjugate(datum: &RootDatum, w: &WeightVec) -> WeightVec {
    let mut w = w.clone();
    while let Some(i) = w.coords().iter().position(|&c| c < 0) {
        let c = w.coords()[i];
        w = w.sub(&WeightVec::new(&datum.cartan()[i]).scale(c));
    }
    w
}

/// The fundamental weights whose Dynkin index divides all others, and `m_G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaD {
    /// 1-based Bourbaki indices, ascending.
    pub indices: Vec<usize>,
    /// `lcm(1, comarks)`, equal to the common minimal index.
    pub m_g: u64,
    /// Dynkin index of every fundamental representation, in Bourbaki order.
    pub fundamental_indices: Vec<u64>,
}

impl OmegaD {
    /// The first listed weight, used where a single choice is needed.
    pub fn canonical(&self) -> usize {
        self.indices[0]
    }
}

pub fn omega_d(datum: &RootDatum) -> Result<OmegaD> {
    let k = datum.rank();
    let fundamental_indices = (1..=k)
        .map(|i| {
            let m = dynkin_index(datum, &IrrepLabel::fundamental(k, i))?;
            m.to_u64()
                .ok_or_else(|| consistency("fundamental Dynkin index overflows u64"))
        })
        .collect::<Result<Vec<u64>>>()?;
    let indices: Vec<usize> = (0..k)
        .filter(|&i| {
            let mi = fundamental_indices[i];
            mi > 0 && fundamental_indices.iter().all(|mj| mj % mi == 0)
        })
        .map(|i| i + 1)
        .collect();
    if indices.is_empty() {
        return Err(consistency(format!(
            "{}: no fundamental Dynkin index divides all others",
            datum.lie()
        )));
    }
    let m_g = datum.comark_lcm();
    if let Some(&i) = indices.iter().find(|&&i| fundamental_indices[i - 1] != m_g) {
        return Err(consistency(format!(
            "{}: m_V(w{i}) = {} but lcm of comarks is {m_g}",
            datum.lie(),
            fundamental_indices[i - 1]
        )));
    }
    Ok(OmegaD {
        indices,
        m_g,
        fundamental_indices,
    })
}
