//! Kac-Peterson modular S-matrix at level `l`, as an independent route to
//! the Verlinde numbers: `F_g(l) = sum_mu S_{0 mu}^{2-2g}`.

use std::collections::HashMap;

use num_rational::Rational64;
use rug::Float;

use super::precise::cis_two_pi;
use super::weyl::weyl_group;
use super::{enumerate_p_ell, t_ell, to_float};
use crate::error::Result;
use crate::root_system::{RootDatum, WeightVec};

/// `S_{l m} = i^{|D+|} t_l^{-1/2} sum_w det(w) exp(-2 pi i <w(l+rho), m+rho> / (l+h))`,
/// rows and columns indexed by the alcove `P_l` in lexicographic order.
#[derive(Debug, Clone)]
pub struct SMatrix {
    weights: Vec<WeightVec>,
    re: Vec<Vec<Float>>,
    im: Vec<Vec<Float>>,
    precision: u32,
}

impl SMatrix {
    pub fn weights(&self) -> &[WeightVec] {
        &self.weights
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    /// `(Re, Im)` of the entry at row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> (&Float, &Float) {
        (&self.re[i][j], &self.im[i][j])
    }

    /// `max_{ij} |(S S^*)_{ij} - delta_ij|`, the modulus taken componentwise.
    pub fn unitarity_residual(&self) -> Float {
        let n = self.size();
        let p = self.precision;
        let mut worst = Float::with_val(p, 0);
        for i in 0..n {
            for j in 0..n {
                let mut re = Float::with_val(p, 0);
                let mut im = Float::with_val(p, 0);
                for l in 0..n {
                    // (a + bi)(c - di) = (ac + bd) + (bc - ad) i
                    let (a, b) = (&self.re[i][l], &self.im[i][l]);
                    let (c, d) = (&self.re[j][l], &self.im[j][l]);
                    re += Float::with_val(p, a * c);
                    re += Float::with_val(p, b * d);
                    im += Float::with_val(p, b * c);
                    im -= Float::with_val(p, a * d);
                }
                if i == j {
                    re -= 1u32;
                }
                worst.max_mut(&re.abs());
                worst.max_mut(&im.abs());
            }
        }
        worst
    }

    /// `max_{ij} |S_{ij} - S_{ji}|`, componentwise.
    pub fn symmetry_residual(&self) -> Float {
        let n = self.size();
        let p = self.precision;
        let mut worst = Float::with_val(p, 0);
        for i in 0..n {
            for j in 0..n {
                worst.max_mut(&Float::with_val(p, &self.re[i][j] - &self.re[j][i]).abs());
                worst.max_mut(&Float::with_val(p, &self.im[i][j] - &self.im[j][i]).abs());
            }
        }
        worst
    }
}

pub fn kac_peterson_s(datum: &RootDatum, level: u32, precision: u32) -> Result<SMatrix> {
    let group = weyl_group(datum)?;
    let weights = enumerate_p_ell(datum, level);
    let shifted: Vec<Vec<i64>> = weights
        .iter()
        .map(|w| w.coords().iter().map(|c| c + 1).collect())
        .collect();
    let k_plus_h = level as i64 + datum.dual_coxeter();
    let p = precision;

    let t = to_float(&t_ell(datum, level), p);
    let norm = Float::with_val(p, t.recip_sqrt());
    let quarter_turns = datum.positive_roots().len() % 4;

    let mut cis_cache: HashMap<Rational64, (Float, Float)> = HashMap::new();
    let n = weights.len();
    let mut re = vec![vec![Float::with_val(p, 0); n]; n];
    let mut im = vec![vec![Float::with_val(p, 0); n]; n];
    for (a, lam) in shifted.iter().enumerate() {
        let orbit: Vec<(WeightVec, i8)> = group.iter().map(|w| (w.apply(lam), w.det())).collect();
        for (b, mu) in shifted.iter().enumerate() {
            let mut sr = Float::with_val(p, 0);
            let mut si = Float::with_val(p, 0);
            for (wl, det) in &orbit {
                let r = datum.pair_weights(wl.coords(), mu) / k_plus_h;
                let (c, s) = cis_cache
                    .entry(r - r.floor())
                    .or_insert_with(|| cis_two_pi(r, p));
                // exp(-2 pi i r) = cos - i sin
                if *det > 0 {
                    sr += &*c;
                    si -= &*s;
                } else {
                    sr -= &*c;
                    si += &*s;
                }
            }
            let (x, y) = match quarter_turns {
                0 => (sr, si),
                1 => (-si, sr),
                2 => (-sr, -si),
                _ => (si, -sr),
            };
            re[a][b] = Float::with_val(p, &x * &norm);
            im[a][b] = Float::with_val(p, &y * &norm);
        }
    }
    Ok(SMatrix {
        weights,
        re,
        im,
        precision,
    })
}
