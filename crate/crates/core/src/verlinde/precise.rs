//! Trigonometry at rational multiples of `pi`, in MPFR floats.
//!
//! Arguments are reduced exactly in rational arithmetic before anything is
//! rounded, so `sin(pi r)` near `r = 1` keeps full relative accuracy.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use rug::float::Constant;
use rug::{Float, Rational};

use crate::error::{consistency, Result};
use crate::root_system::RootDatum;

fn to_rug(r: Rational64) -> Rational {
    Rational::from((*r.numer(), *r.denom()))
}

fn pi_times(r: Rational64, prec: u32) -> Float {
    let pi = Float::with_val(prec + 16, Constant::Pi);
    Float::with_val(prec + 16, pi * to_rug(r))
}

/// `sin(pi r)` for rational `r` in `[0, 1/2]`.
fn sin_pi_half(r: Rational64, prec: u32) -> Float {
    if r.is_zero() {
        return Float::with_val(prec, 0);
    }
    if r == Rational64::new(1, 2) {
        return Float::with_val(prec, 1);
    }
    Float::with_val(prec, pi_times(r, prec).sin())
}

/// `2 sin(pi r)` for rational `r` strictly between 0 and 1.
pub fn two_sin_pi(r: Rational64, prec: u32) -> Float {
    debug_assert!(r > Rational64::zero() && r < Rational64::one());
    let folded = if r > Rational64::new(1, 2) {
        Rational64::one() - r
    } else {
        r
    };
    Float::with_val(prec, sin_pi_half(folded, prec) * 2u32)
}

/// `(cos 2 pi r, sin 2 pi r)` for any rational `r`.
pub fn cis_two_pi(r: Rational64, prec: u32) -> (Float, Float) {
    // reduce to [0, 1), then to a quarter turn s in [0, 1/4)
    let r = r - r.floor();
    let quarters = (r * 4).floor();
    let s = r - quarters / 4;
    let angle = s * 2;
    let (c, sn) = if s.is_zero() {
        (Float::with_val(prec, 1), Float::with_val(prec, 0))
    } else {
        // cos(2 pi s) = sin(pi (1/2 - 2s)), both reduced arguments in [0, 1/2]
        (
            sin_pi_half(Rational64::new(1, 2) - angle, prec),
            sin_pi_half(angle, prec),
        )
    };
    match quarters.to_integer() {
        0 => (c, sn),
        1 => (-sn, c),
        2 => (-c, -sn),
        3 => (sn, -c),
        q => unreachable!("quarter index {q}"),
    }
}

/// Table of `2 sin(pi j / (D (l + h)))` for the denominators `D` that can
/// occur in `<alpha, mu + rho>`.
#[derive(Debug, Clone)]
pub struct SineTable {
    shifted_level: i64,
    denom: i64,
    values: Vec<Float>,
    prec: u32,
}

impl SineTable {
    pub fn new(datum: &RootDatum, level: u32, prec: u32) -> Self {
        let denom = datum
            .half_norms()
            .iter()
            .fold(1i64, |acc, hn| acc.lcm(hn.denom()));
        let shifted_level = level as i64 + datum.dual_coxeter();
        let n = denom * shifted_level;
        let values = (0..n)
            .map(|j| {
                if j == 0 {
                    Float::with_val(prec, 0)
                } else {
                    two_sin_pi(Rational64::new(j, n), prec)
                }
            })
            .collect();
        SineTable {
            shifted_level,
            denom,
            values,
            prec,
        }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// `l + h`.
    pub fn shifted_level(&self) -> i64 {
        self.shifted_level
    }

    /// `2 sin(pi x / (l + h))` for `0 < x < l + h`.
    pub fn two_sin(&self, x: Rational64) -> Result<&Float> {
        let r = x / self.shifted_level;
        if r <= Rational64::zero() || r >= Rational64::one() {
            return Err(consistency(format!(
                "sine argument {x}/{} outside (0, 1)",
                self.shifted_level
            )));
        }
        let scaled = r * (self.denom * self.shifted_level);
        if !scaled.is_integer() {
            return Err(consistency(format!("unexpected denominator in {x}")));
        }
        Ok(&self.values[scaled.to_integer() as usize])
    }

    /// `prod_{alpha > 0} (2 sin(pi <alpha, mu + rho> / (l + h)))^2`.
    pub fn sine_product(&self, datum: &RootDatum, mu: &[i64]) -> Result<Float> {
        let shifted: Vec<i64> = mu.iter().map(|c| c + 1).collect();
        let mut prod = Float::with_val(self.prec, 1);
        for alpha in datum.positive_roots() {
            let s = self.two_sin(datum.pair_root_weight(alpha, &shifted))?;
            prod *= s;
            prod *= s;
        }
        Ok(prod)
    }
}
