//! Level-`l` alcoves and the Verlinde formula
//!
//! `F_g(l) = t_l^{g-1} sum_{mu in P_l} prod_{alpha > 0} (2 sin(pi <alpha, mu+rho> / (l+h)))^{2-2g}`
//!
//! with `t_l = (l+h)^rank #(P/Q_lg)`. The sum is evaluated in MPFR floats
//! and only returned once the distance to the nearest integer is certified
//! small; [`smatrix`] provides a second route through the modular S-matrix.

mod precise;
pub mod smatrix;
pub mod weyl;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use rug::Float;
use serde::{Deserialize, Serialize};

use crate::error::{consistency, Error, Result};
use crate::root_system::{LieType, RootDatum, WeightVec};

pub use precise::{cis_two_pi, two_sin_pi, SineTable};
pub use smatrix::{kac_peterson_s, SMatrix};
pub use weyl::{weyl_group, WeylElement, WEYL_GROUP_LIMIT};

/// Starting working precision, in mantissa bits.
pub const DEFAULT_PRECISION_BITS: u32 = 128;
/// Precision is doubled up to this cap.
pub const MAX_PRECISION_BITS: u32 = 4096;
/// Stop refining once the value is this close to an integer.
pub const TARGET_GAP: f64 = 1e-9;
/// Refuse to return an integer farther away than this.
pub const MAX_GAP: f64 = 1e-6;
/// Largest alcove summed term by term at genus >= 2.
pub const MAX_ALCOVE_TERMS: u64 = 5_000_000;

/// Dominant weights `mu` with `<mu, theta> <= l`, lexicographic order.
///
/// Since `<w_i, theta>` is the comark `a_i^vee`, this is the set of
/// nonnegative `n` with `sum n_i a_i^vee <= l`.
pub fn enumerate_p_ell(datum: &RootDatum, level: u32) -> Vec<WeightVec> {
    fn go(comarks: &[i64], budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<WeightVec>) {
        let Some((&c, rest)) = comarks.split_first() else {
            out.push(WeightVec::new(prefix));
            return;
        };
        for n in 0..=budget / c {
            prefix.push(n);
            go(rest, budget - n * c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(datum.comarks(), level as i64, &mut Vec::new(), &mut out);
    let theta = datum.theta();
    for mu in &out {
        let lvl = datum.pair_root_weight(theta, mu.coords());
        assert!(
            lvl <= num_rational::Rational64::from_integer(level as i64),
            "{mu} has level {lvl} > {level}"
        );
    }
    out
}

/// `#P_l` without materializing the alcove.
pub fn count_p_ell(datum: &RootDatum, level: u32) -> BigUint {
    // ways[b] = number of choices for the remaining coordinates with total <= b
    let l = level as usize;
    let mut ways = vec![BigUint::one(); l + 1];
    for &c in datum.comarks().iter().rev() {
        let c = c as usize;
        let next: Vec<BigUint> = (0..=l)
            .map(|b| (0..=b / c).fold(BigUint::zero(), |acc, n| acc + &ways[b - n * c]))
            .collect();
        ways = next;
    }
    ways.swap_remove(l)
}

/// `t_l = (l + h)^rank #(P/Q_lg)`.
pub fn t_ell(datum: &RootDatum, level: u32) -> BigUint {
    let base = BigUint::from(level as u64 + datum.dual_coxeter() as u64);
    base.pow(datum.rank() as u32) * datum.index_p_over_qlg()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerlindeQuery {
    pub lie: LieType,
    pub genus: u32,
    pub level: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerlindeOptions {
    pub precision_bits: u32,
    pub max_precision_bits: u32,
    /// Worker cap for the sum over `P_l`; `None` uses the global pool.
    pub jobs: Option<usize>,
}

impl Default for VerlindeOptions {
    fn default() -> Self {
        VerlindeOptions {
            precision_bits: DEFAULT_PRECISION_BITS,
            max_precision_bits: MAX_PRECISION_BITS,
            jobs: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerlindeResult {
    pub value: Float,
    pub rounded: BigUint,
    /// `|value - rounded|`.
    pub abs_gap: Float,
    /// A priori bound on the accumulated rounding error of `value`.
    pub error_bound: Float,
    pub precision_bits: u32,
}

impl VerlindeResult {
    /// `abs_gap + error_bound < threshold`: the true value is within
    /// `threshold` of `rounded`.
    fn certified_within(&self, threshold: f64) -> bool {
        Float::with_val(self.precision_bits, &self.abs_gap + &self.error_bound) < threshold
    }

    /// `value` in fixed-point decimal with `digits` fractional digits.
    pub fn value_decimal(&self, digits: usize) -> String {
        let prec = self.value.prec();
        let scale = rug::Integer::from(rug::Integer::u_pow_u(10, digits as u32));
        let scaled = Float::with_val(prec, &self.value * &scale);
        let mut s = scaled.to_integer().unwrap_or_default().abs().to_string();
        if s.len() <= digits {
            s = format!("{}{s}", "0".repeat(digits + 1 - s.len()));
        }
        let (int, frac) = s.split_at(s.len() - digits);
        let sign = if self.value < 0 { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int}")
        } else {
            format!("{sign}{int}.{frac}")
        }
    }
}

pub(crate) fn to_float(n: &BigUint, prec: u32) -> Float {
    let z = rug::Integer::from_digits(&n.to_bytes_le(), rug::integer::Order::Lsf);
    Float::with_val(prec, z)
}

fn to_biguint(z: &rug::Integer) -> BigUint {
    BigUint::from_bytes_le(&z.to_digits::<u8>(rug::integer::Order::Lsf))
}

/// Evaluates the Verlinde formula with an integrality certificate.
pub fn verlinde_dim(datum: &RootDatum, query: &VerlindeQuery, opts: &VerlindeOptions) -> Result<VerlindeResult> {
    if query.lie != datum.lie() {
        return Err(Error::Validation(format!(
            "query is for {} but root datum is {}",
            query.lie,
            datum.lie()
        )));
    }
    if query.genus == 0 {
        return Err(Error::Unsupported("genus 0; the formula is used for genus >= 1".into()));
    }
    if opts.precision_bits < 16 || opts.max_precision_bits < opts.precision_bits {
        return Err(Error::Validation(format!(
            "precision {} bits with cap {} bits",
            opts.precision_bits, opts.max_precision_bits
        )));
    }

    if query.genus == 1 {
        let count = count_p_ell(datum, query.level);
        return Ok(VerlindeResult {
            value: to_float(&count, opts.precision_bits.max(count.bits() as u32)),
            rounded: count,
            abs_gap: Float::with_val(opts.precision_bits, 0),
            error_bound: Float::with_val(opts.precision_bits, 0),
            precision_bits: opts.precision_bits,
        });
    }

    let size = count_p_ell(datum, query.level);
    if size > BigUint::from(MAX_ALCOVE_TERMS) {
        return Err(Error::Resource(format!(
            "{} at level {} has {size} alcove points; the sum is capped at {MAX_ALCOVE_TERMS} terms",
            query.lie, query.level
        )));
    }
    let alcove = enumerate_p_ell(datum, query.level);
    let mut prec = opts.precision_bits;
    loop {
        let result = evaluate(datum, query, &alcove, prec, opts.jobs)?;
        if result.certified_within(TARGET_GAP) {
            return Ok(result);
        }
        if prec >= opts.max_precision_bits {
            if result.certified_within(MAX_GAP) {
                return Ok(result);
            }
            return Err(Error::Precision(format!(
                "{} g={} l={}: value {} is {} away from an integer with error bound {} at {} bits",
                query.lie,
                query.genus,
                query.level,
                result.value_decimal(30),
                result.abs_gap.to_string_radix(10, Some(6)),
                result.error_bound.to_string_radix(10, Some(6)),
                prec
            )));
        }
        prec = (prec * 2).min(opts.max_precision_bits);
    }
}

fn evaluate(
    datum: &RootDatum,
    query: &VerlindeQuery,
    alcove: &[WeightVec],
    prec: u32,
    jobs: Option<usize>,
) -> Result<VerlindeResult> {
    let table = SineTable::new(datum, query.level, prec);
    let exponent = i32::try_from(query.genus - 1)
        .map_err(|_| Error::Validation(format!("genus {} too large", query.genus)))?;
    let term = |mu: &WeightVec| -> Result<Float> {
        let prod = table.sine_product(datum, mu.coords())?;
        if prod <= 0 {
            return Err(consistency(format!("nonpositive sine product at {mu}")));
        }
        Ok(Float::with_val(prec, rug::ops::Pow::pow(prod, -exponent)))
    };
    let terms: Vec<Float> = match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Resource(format!("thread pool: {e}")))?
            .install(|| alcove.par_iter().map(term).collect::<Result<Vec<_>>>())?,
        None => alcove.par_iter().map(term).collect::<Result<Vec<_>>>()?,
    };

    // fixed left-to-right order keeps the result independent of the worker count
    let mut sum = Float::with_val(prec, 0);
    for t in &terms {
        sum += t;
    }
    let t = to_float(&t_ell(datum, query.level), prec);
    let scale = Float::with_val(prec, rug::ops::Pow::pow(t, exponent));
    let value = Float::with_val(prec, &sum * &scale);

    let nearest = value
        .to_integer()
        .ok_or_else(|| Error::Precision(format!("non-finite value {value}")))?;
    let abs_gap = Float::with_val(prec, &value - &nearest).abs();
    if nearest < 1 {
        return Err(consistency(format!("Verlinde number rounds to {nearest}")));
    }

    // Every sine carries relative error below 2^-prec; the product over
    // 2|D+| factors, the power g-1, the positive sum and the final scaling
    // each add at most a few units of 2^-prec. A factor 4 covers the
    // second-order terms.
    let ops = 2 * datum.positive_roots().len() as u64 * (exponent as u64 + 1)
        + alcove.len() as u64
        + 2 * exponent as u64
        + 8;
    let mut error_bound = Float::with_val(prec, &value * (4 * ops));
    error_bound >>= prec;
    Ok(VerlindeResult {
        value,
        rounded: to_biguint(&nearest),
        abs_gap,
        error_bound,
        precision_bits: prec,
    })
}

/// `#P_l` as a `u64`, for small alcoves.
pub fn alcove_size(datum: &RootDatum, level: u32) -> u64 {
    count_p_ell(datum, level).to_u64().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(s: &str) -> RootDatum {
        RootDatum::build(s.parse().unwrap()).unwrap()
    }

    fn verlinde(s: &str, genus: u32, level: u32) -> VerlindeResult {
        let d = datum(s);
        let q = VerlindeQuery { lie: d.lie(), genus, level };
        verlinde_dim(&d, &q, &VerlindeOptions::default()).unwrap()
    }

    #[test]
    fn alcoves() {
        let a1 = enumerate_p_ell(&datum("A1"), 3);
        assert_eq!(a1, (0..4).map(|n| WeightVec::new(&[n])).collect::<Vec<_>>());
        assert_eq!(enumerate_p_ell(&datum("E8"), 1), vec![WeightVec::zero(8)]);
        let a2 = enumerate_p_ell(&datum("A2"), 2);
        assert_eq!(a2.len(), 6);
        assert!(a2.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn count_matches_enumeration() {
        for lie in LieType::all_up_to_rank(5) {
            let d = RootDatum::build(lie).unwrap();
            for l in 0..7 {
                assert_eq!(count_p_ell(&d, l), BigUint::from(enumerate_p_ell(&d, l).len()), "{lie} {l}");
            }
        }
    }

    #[test]
    fn t_values() {
        assert_eq!(t_ell(&datum("A1"), 1), BigUint::from(6u32));
        assert_eq!(t_ell(&datum("E8"), 0), BigUint::from(30u32).pow(8));
        assert_eq!(t_ell(&datum("A2"), 1), BigUint::from(48u32));
    }

    #[test]
    fn su2_values() {
        assert_eq!(verlinde("A1", 2, 1).rounded, BigUint::from(4u32));
        assert_eq!(verlinde("A1", 2, 2).rounded, BigUint::from(10u32));
        assert_eq!(verlinde("A1", 3, 1).rounded, BigUint::from(8u32));
    }

    #[test]
    fn genus_one_is_alcove_size() {
        let r = verlinde("A2", 1, 2);
        assert_eq!(r.rounded, BigUint::from(6u32));
        assert_eq!(r.abs_gap, 0);
    }

    #[test]
    fn genus_one_counts_without_listing() {
        let d = datum("E8");
        let r = verlinde("E8", 1, 300);
        assert_eq!(r.rounded, count_p_ell(&d, 300));
        let q = VerlindeQuery { lie: d.lie(), genus: 2, level: 300 };
        assert!(matches!(
            verlinde_dim(&d, &q, &VerlindeOptions::default()),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn decimal_rendering() {
        let r = verlinde("A1", 2, 2);
        assert_eq!(r.value_decimal(0), "10");
        assert!(r.value_decimal(12).starts_with("10.0000000000") || r.value_decimal(12).starts_with("9.9999999999"));
        let small = VerlindeResult {
            value: Float::with_val(64, 0.015625),
            ..r.clone()
        };
        assert_eq!(small.value_decimal(6), "0.015625");
        assert_eq!(small.value_decimal(2), "0.02");
    }

    #[test]
    fn e8_level_one_is_one() {
        for g in 2..=5 {
            let r = verlinde("E8", g, 1);
            assert_eq!(r.rounded, BigUint::one(), "g={g}");
            assert!(r.abs_gap < 1e-20);
        }
    }

    #[test]
    fn level_zero_is_one() {
        for t in ["A3", "B3", "C2", "G2", "F4", "E6"] {
            assert_eq!(verlinde(t, 2, 0).rounded, BigUint::one(), "{t}");
        }
    }

    #[test]
    fn genus_zero_unsupported() {
        let d = datum("A1");
        let q = VerlindeQuery { lie: d.lie(), genus: 0, level: 1 };
        assert!(matches!(
            verlinde_dim(&d, &q, &VerlindeOptions::default()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn insufficient_precision_is_an_error() {
        // 20 bits cannot resolve a value of this size to within 1e-6
        let d = datum("A2");
        let q = VerlindeQuery { lie: d.lie(), genus: 3, level: 4 };
        let opts = VerlindeOptions { precision_bits: 20, max_precision_bits: 20, jobs: None };
        assert!(matches!(verlinde_dim(&d, &q, &opts), Err(Error::Precision(_))));
    }

    #[test]
    fn worker_count_does_not_change_bits() {
        let d = datum("C2");
        let q = VerlindeQuery { lie: d.lie(), genus: 3, level: 4 };
        let one = verlinde_dim(&d, &q, &VerlindeOptions { jobs: Some(1), ..Default::default() }).unwrap();
        let four = verlinde_dim(&d, &q, &VerlindeOptions { jobs: Some(4), ..Default::default() }).unwrap();
        assert_eq!(one.value.to_string_radix(16, None), four.value.to_string_radix(16, None));
    }

    #[test]
    fn e8_sine_product_equals_t1() {
        // classical identity: S_00^2 = 1 at level 1 for E8
        let d = datum("E8");
        let table = SineTable::new(&d, 1, 256);
        let prod = table.sine_product(&d, &[0; 8]).unwrap();
        let t1 = to_float(&t_ell(&d, 1), 256);
        let rel = Float::with_val(256, &prod / &t1) - 1u32;
        assert!(rel.abs() < 1e-60);
    }

    #[test]
    fn s_matrix_a1() {
        let d = datum("A1");
        let s = kac_peterson_s(&d, 1, 256).unwrap();
        let inv_sqrt2 = Float::with_val(256, 2).recip_sqrt();
        for i in 0..2 {
            for j in 0..2 {
                let (re, im) = s.entry(i, j);
                let modulus = Float::with_val(256, re * re) + Float::with_val(256, im * im);
                let m = modulus.sqrt();
                assert!(Float::with_val(256, &m - &inv_sqrt2).abs() < 1e-60);
            }
        }
        let s2 = kac_peterson_s(&d, 2, 256).unwrap();
        let (re, im) = s2.entry(0, 0);
        assert!(Float::with_val(256, re - 0.5f64).abs() < 1e-60);
        assert!(im.clone().abs() < 1e-60);
    }
}
