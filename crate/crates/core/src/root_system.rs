//! Root data of the simple Lie algebras, Bourbaki numbering throughout.
//!
//! A [`RootDatum`] is built from the Cartan matrix alone: root lengths come
//! from symmetrizing the Cartan matrix, positive roots from root strings,
//! and the invariant form is rescaled so that the highest root has squared
//! length 2. Everything is exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{consistency, Error, Result};
use crate::snf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub const ALL: [Series; 7] = [
        Series::A,
        Series::B,
        Series::C,
        Series::D,
        Series::E,
        Series::F,
        Series::G,
    ];

    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    /// Human-readable admissible rank range.
    pub fn admissible_ranks(self) -> &'static str {
        match self {
            Series::A => "rank >= 1",
            Series::B => "rank >= 3",
            Series::C => "rank >= 2",
            Series::D => "rank >= 4",
            Series::E => "rank in {6, 7, 8}",
            Series::F => "rank = 4",
            Series::G => "rank = 2",
        }
    }

    fn admits(self, rank: usize) -> bool {
        match self {
            Series::A => rank >= 1,
            Series::B => rank >= 3,
            Series::C => rank >= 2,
            Series::D => rank >= 4,
            Series::E => (6..=8).contains(&rank),
            Series::F => rank == 4,
            Series::G => rank == 2,
        }
    }
}

/// Type of a simple, simply connected group: series letter plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LieType {
    series: Series,
    rank: usize,
}

impl LieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if series.admits(rank) {
            return Ok(LieType { series, rank });
        }
        let token = format!("{}{}", series.letter(), rank);
        let mut reason = format!(
            "series {} requires {}",
            series.letter(),
            series.admissible_ranks()
        );
        match (series, rank) {
            (Series::B, 2) => reason.push_str("; B2 is isomorphic to C2, use C2"),
            (Series::B, 1) | (Series::C, 1) => reason.push_str("; use A1"),
            (Series::D, 3) => reason.push_str("; D3 is isomorphic to A3, use A3"),
            _ => {}
        }
        Err(Error::InvalidType { token, reason })
    }

    pub fn series(&self) -> Series {
        self.series
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every admissible type of rank at most `max_rank`, in series order.
    pub fn all_up_to_rank(max_rank: usize) -> Vec<LieType> {
        Series::ALL
            .iter()
            .flat_map(|&s| (1..=max_rank).filter_map(move |k| LieType::new(s, k).ok()))
            .collect()
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for LieType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let token = s.trim();
        let bad = |reason: &str| Error::InvalidType {
            token: token.to_string(),
            reason: reason.to_string(),
        };
        let mut chars = token.chars();
        let letter = chars
            .next()
            .ok_or_else(|| bad("empty type token; expected e.g. E8, A3, G2"))?;
        let series = Series::from_letter(letter)
            .ok_or_else(|| bad("series letter must be one of A, B, C, D, E, F, G"))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| bad("expected a series letter followed by a rank, e.g. E8, A3, G2"))?;
        LieType::new(series, rank)
    }
}

impl Serialize for LieType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for LieType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Integer vector in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WeightVec(pub SmallVec<[i64; 8]>);

impl WeightVec {
    pub fn new(coords: &[i64]) -> Self {
        WeightVec(SmallVec::from_slice(coords))
    }

    pub fn zero(rank: usize) -> Self {
        WeightVec(SmallVec::from_elem(0, rank))
    }

    /// The `i`-th fundamental weight, 1-based as in Bourbaki.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        assert!((1..=rank).contains(&i), "fundamental weight index out of range");
        let mut w = Self::zero(rank);
        w.0[i - 1] = 1;
        w
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &WeightVec) -> WeightVec {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> WeightVec {
        WeightVec(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for WeightVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A vector of `h*` in one of the two integral bases.
#[derive(Debug, Clone, Copy)]
pub enum Elem<'a> {
    /// Coordinates with respect to the simple roots.
    Root(&'a [i64]),
    /// Coordinates with respect to the fundamental weights.
    Weight(&'a [i64]),
}

impl Elem<'_> {
    fn coords(&self) -> &[i64] {
        match self {
            Elem::Root(c) | Elem::Weight(c) => c,
        }
    }
}

/// Immutable root data of a simple Lie algebra.
#[derive(Debug, Clone)]
pub struct RootDatum {
    lie: LieType,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    root_form: Vec<Vec<Rational64>>,
    weight_form: Vec<Vec<Rational64>>,
    half_norms: Vec<Rational64>,
    theta: Vec<i64>,
    comarks: Vec<i64>,
    rho: WeightVec,
    dual_coxeter: i64,
    index_p_over_qlg: u64,
}

fn bourbaki_cartan(lie: LieType) -> Vec<Vec<i64>> {
    let k = lie.rank();
    let mut a = vec![vec![0i64; k]; k];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    // (i, j, a_ij, a_ji), 1-based
    let mut bonds: Vec<(usize, usize, i64, i64)> = Vec::new();
    let chain = |n: usize, bonds: &mut Vec<(usize, usize, i64, i64)>| {
        for i in 1..n {
            bonds.push((i, i + 1, -1, -1));
        }
    };
    match lie.series() {
        Series::A => chain(k, &mut bonds),
        Series::B => {
            chain(k - 1, &mut bonds);
            bonds.push((k - 1, k, -2, -1));
        }
        Series::C => {
            chain(k - 1, &mut bonds);
            bonds.push((k - 1, k, -1, -2));
        }
        Series::D => {
            chain(k - 1, &mut bonds);
            bonds.push((k - 2, k, -1, -1));
        }
        Series::E => {
            bonds.push((1, 3, -1, -1));
            bonds.push((2, 4, -1, -1));
            for i in 3..k {
                bonds.push((i, i + 1, -1, -1));
            }
        }
        Series::F => {
            bonds.push((1, 2, -1, -1));
            bonds.push((2, 3, -2, -1));
            bonds.push((3, 4, -1, -1));
        }
        Series::G => bonds.push((1, 2, -1, -3)),
    }
    for (i, j, aij, aji) in bonds {
        a[i - 1][j - 1] = aij;
        a[j - 1][i - 1] = aji;
    }
    a
}

fn expected_positive_roots(lie: LieType) -> usize {
    let k = lie.rank();
    match (lie.series(), k) {
        (Series::A, _) => k * (k + 1) / 2,
        (Series::B, _) | (Series::C, _) => k * k,
        (Series::D, _) => k * (k - 1),
        (Series::E, 6) => 36,
        (Series::E, 7) => 63,
        (Series::E, 8) => 120,
        (Series::F, _) => 24,
        (Series::G, _) => 6,
        _ => unreachable!("inadmissible type reached root count"),
    }
}

fn check_cartan(a: &[Vec<i64>]) -> Result<()> {
    for (i, row) in a.iter().enumerate() {
        if row[i] != 2 {
            return Err(consistency(format!("cartan diagonal entry {i} is not 2")));
        }
        for (j, &aij) in row.iter().enumerate() {
            if i != j && (aij > 0 || (aij == 0) != (a[j][i] == 0)) {
                return Err(consistency(format!("cartan entries ({i},{j}) malformed")));
            }
        }
    }
    Ok(())
}

/// Squared lengths `<a_i, a_i>` up to a common factor, from `a_ij d_j = a_ji d_i`.
fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<Rational64>> {
    let k = a.len();
    let mut d: Vec<Option<Rational64>> = vec![None; k];
    d[0] = Some(Rational64::one());
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let di = d[i].expect("visited");
        for j in 0..k {
            if i == j || a[i][j] == 0 {
                continue;
            }
            let dj = di * Rational64::new(a[j][i], a[i][j]);
            match d[j] {
                None => {
                    d[j] = Some(dj);
                    stack.push(j);
                }
                Some(old) if old != dj => {
                    return Err(consistency("cartan matrix is not symmetrizable"));
                }
                _ => {}
            }
        }
    }
    d.into_iter()
        .map(|x| x.ok_or_else(|| consistency("dynkin diagram is disconnected")))
        .collect()
}

/// Positive roots in simple-root coordinates, sorted by height then lexicographically.
///
/// Root strings: for a positive root `b` and simple root `a_i` with
/// `b != a_i`, the `a_i`-string through `b` is `b - p a_i, ..., b + q a_i`
/// with `p - q = <b, a_i^vee>`. Processing by height means `p` is known.
fn positive_roots(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    use std::collections::BTreeSet;
    let k = a.len();
    let simple: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect();
    let mut all: BTreeSet<Vec<i64>> = simple.iter().cloned().collect();
    let mut layer: Vec<Vec<i64>> = simple;
    while !layer.is_empty() {
        let mut next = BTreeSet::new();
        for beta in &layer {
            for i in 0..k {
                // <beta, a_i^vee> = sum_j beta_j a_ji
                let pairing: i64 = (0..k).map(|j| beta[j] * a[j][i]).sum();
                let mut p = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if all.contains(&probe) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    next.insert(up);
                }
            }
        }
        layer = next.into_iter().collect();
        all.extend(layer.iter().cloned());
    }
    let mut roots: Vec<Vec<i64>> = all.into_iter().collect();
    roots.sort_by(|x, y| {
        let hx: i64 = x.iter().sum();
        let hy: i64 = y.iter().sum();
        hx.cmp(&hy).then_with(|| x.cmp(y))
    });
    roots
}

fn invert(m: &[Vec<Rational64>]) -> Result<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational64::one() } else { Rational64::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !aug[r][col].is_zero())
            .ok_or_else(|| consistency("singular matrix"))?;
        aug.swap(col, piv);
        let inv = aug[col][col].recip();
        for x in aug[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col];
                for c in 0..2 * n {
                    let sub = f * aug[col][c];
                    aug[r][c] -= sub;
                }
            }
        }
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Sylvester's criterion with exact leading minors.
fn is_positive_definite(m: &[Vec<Rational64>]) -> bool {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m.to_vec();
    for col in 0..n {
        // Gaussian elimination without pivoting: pivots are ratios of
        // consecutive leading minors.
        if !a[col][col].is_positive() {
            return false;
        }
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                let sub = f * a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    true
}

impl RootDatum {
    pub fn build(lie: LieType) -> Result<RootDatum> {
        // re-validate in case the caller forged a LieType through a future constructor
        let lie = LieType::new(lie.series(), lie.rank())?;
        let k = lie.rank();
        let cartan = bourbaki_cartan(lie);
        check_cartan(&cartan)?;

        let raw_lengths = symmetrizer(&cartan)?;
        let positive_roots = positive_roots(&cartan);
        if positive_roots.len() != expected_positive_roots(lie) {
            return Err(consistency(format!(
                "{lie}: generated {} positive roots, expected {}",
                positive_roots.len(),
                expected_positive_roots(lie)
            )));
        }

        let theta = positive_roots.last().cloned().expect("nonempty root system");
        let theta_height: i64 = theta.iter().sum();
        if positive_roots
            .iter()
            .filter(|r| r.iter().sum::<i64>() == theta_height)
            .count()
            != 1
        {
            return Err(consistency(format!("{lie}: highest root is not unique")));
        }

        // <a_i, a_j> = a_ij d_j / 2, then rescale so <theta, theta> = 2.
        let raw_form = |d: &[Rational64]| -> Vec<Vec<Rational64>> {
            (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| Rational64::from_integer(cartan[i][j]) * d[j] / 2)
                        .collect()
                })
                .collect()
        };
        let unscaled = raw_form(&raw_lengths);
        let theta_sq = quad(&unscaled, &theta, &theta);
        let scale = Rational64::from_integer(2) / theta_sq;
        let lengths: Vec<Rational64> = raw_lengths.iter().map(|d| *d * scale).collect();
        let root_form = raw_form(&lengths);

        for i in 0..k {
            for j in 0..k {
                if root_form[i][j] != root_form[j][i] {
                    return Err(consistency(format!("{lie}: invariant form not symmetric")));
                }
            }
        }
        if quad(&root_form, &theta, &theta) != Rational64::from_integer(2) {
            return Err(consistency(format!("{lie}: <theta,theta> != 2")));
        }
        if !is_positive_definite(&root_form) {
            return Err(consistency(format!("{lie}: invariant form not positive definite")));
        }

        let half_norms: Vec<Rational64> = lengths.iter().map(|d| *d / 2).collect();
        let comarks = theta
            .iter()
            .zip(&half_norms)
            .map(|(&a, &hn)| {
                let c = hn * a;
                if c.is_integer() && c.is_positive() {
                    Ok(c.to_integer())
                } else {
                    Err(consistency(format!("{lie}: non-integral comark {c}")))
                }
            })
            .collect::<Result<Vec<i64>>>()?;

        // <w_i, w_j> = (A^-1)_{ji} <a_i,a_i>/2
        let cartan_q: Vec<Vec<Rational64>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| Rational64::from_integer(x)).collect())
            .collect();
        let cinv = invert(&cartan_q)?;
        let weight_form: Vec<Vec<Rational64>> = (0..k)
            .map(|i| (0..k).map(|j| cinv[j][i] * half_norms[i]).collect())
            .collect();

        let rho = WeightVec(SmallVec::from_elem(1, k));
        let dual_coxeter = 1 + comarks.iter().sum::<i64>();

        let mut datum = RootDatum {
            lie,
            cartan,
            positive_roots,
            root_form,
            weight_form,
            half_norms,
            theta,
            comarks,
            rho,
            dual_coxeter,
            index_p_over_qlg: 0,
        };
        datum.check_rho()?;
        datum.index_p_over_qlg = datum.compute_index_p_over_qlg()?;
        Ok(datum)
    }

    /// Half-sum of positive roots must be `(1,...,1)` in the weight basis
    /// and satisfy `<rho, theta> + 1 = h`.
    fn check_rho(&self) -> Result<()> {
        let k = self.rank();
        let mut twice_rho = vec![0i64; k];
        for r in &self.positive_roots {
            for (acc, c) in twice_rho.iter_mut().zip(r) {
                *acc += c;
            }
        }
        let as_weight = self.root_to_weight(&twice_rho);
        if as_weight.coords().iter().any(|&c| c != 2) {
            return Err(consistency(format!(
                "{}: half-sum of positive roots is {} / 2, expected all ones",
                self.lie, as_weight
            )));
        }
        let rho_theta = quad(&self.root_form, &twice_rho, &self.theta) / 2;
        if rho_theta + 1 != Rational64::from_integer(self.dual_coxeter) {
            return Err(consistency(format!(
                "{}: <rho,theta>+1 = {} but 1 + sum of comarks = {}",
                self.lie,
                rho_theta + 1,
                self.dual_coxeter
            )));
        }
        Ok(())
    }

    fn compute_index_p_over_qlg(&self) -> Result<u64> {
        let rows: Vec<Vec<i64>> = self
            .long_positive_roots()
            .flat_map(|r| {
                let w = self.root_to_weight(r).0.to_vec();
                let neg = w.iter().map(|x| -x).collect();
                [w, neg]
            })
            .collect();
        snf::lattice_index(&rows)
            .ok_or_else(|| consistency(format!("{}: long roots do not span full rank", self.lie)))
    }

    pub fn lie(&self) -> LieType {
        self.lie
    }

    pub fn rank(&self) -> usize {
        self.lie.rank()
    }

    /// `A_ij = 2<a_i,a_j>/<a_j,a_j>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    /// Gram matrix `<a_i, a_j>` of the simple roots.
    pub fn form(&self) -> &[Vec<Rational64>] {
        &self.root_form
    }

    /// Gram matrix `<w_i, w_j>` of the fundamental weights.
    pub fn weight_form(&self) -> &[Vec<Rational64>] {
        &self.weight_form
    }

    /// Highest root in simple-root coordinates (the marks).
    pub fn theta(&self) -> &[i64] {
        &self.theta
    }

    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    pub fn rho(&self) -> &WeightVec {
        &self.rho
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    /// `#(P / Q_lg)`.
    pub fn index_p_over_qlg(&self) -> u64 {
        self.index_p_over_qlg
    }

    /// `rank + 2 |positive roots|`.
    pub fn dim_g(&self) -> u64 {
        (self.rank() + 2 * self.positive_roots.len()) as u64
    }

    /// `<a_i, a_i> / 2` for each simple root.
    pub fn half_norms(&self) -> &[Rational64] {
        &self.half_norms
    }

    pub fn is_long(&self, root: &[i64]) -> bool {
        quad(&self.root_form, root, root) == Rational64::from_integer(2)
    }

    pub fn long_positive_roots(&self) -> impl Iterator<Item = &Vec<i64>> + '_ {
        self.positive_roots.iter().filter(|r| self.is_long(r))
    }

    /// Simple-root coordinates to weight coordinates: `a_i = sum_j A_ij w_j`.
    pub fn root_to_weight(&self, root: &[i64]) -> WeightVec {
        let k = self.rank();
        WeightVec(
            (0..k)
                .map(|j| (0..k).map(|i| root[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    /// `<theta, w_i>` is the comark `a_i^vee`, so the level of a weight is
    /// an integer.
    pub fn level(&self, w: &WeightVec) -> i64 {
        w.coords().iter().zip(&self.comarks).map(|(a, b)| a * b).sum()
    }

    /// Exact value of the normalized invariant form.
    pub fn pairing(&self, x: Elem<'_>, y: Elem<'_>) -> Result<Rational64> {
        let k = self.rank();
        for v in [x, y] {
            if v.coords().len() != k {
                return Err(Error::Shape {
                    expected: k,
                    got: v.coords().len(),
                });
            }
        }
        Ok(match (x, y) {
            (Elem::Root(a), Elem::Root(b)) => quad(&self.root_form, a, b),
            (Elem::Weight(a), Elem::Weight(b)) => quad(&self.weight_form, a, b),
            (Elem::Root(r), Elem::Weight(w)) | (Elem::Weight(w), Elem::Root(r)) => {
                self.pair_root_weight(r, w)
            }
        })
    }

    /// `<root, weight>` with the root in simple-root and the weight in
    /// fundamental-weight coordinates; no shape check.
    pub fn pair_root_weight(&self, root: &[i64], weight: &[i64]) -> Rational64 {
        root.iter()
            .zip(weight)
            .zip(&self.half_norms)
            .fold(Rational64::zero(), |acc, ((&r, &w), &hn)| {
                acc + hn * (r * w)
            })
    }

    /// `<x, y>` for two weights; no shape check.
    pub fn pair_weights(&self, x: &[i64], y: &[i64]) -> Rational64 {
        quad(&self.weight_form, x, y)
    }

    /// `lcm(1, a_1^vee, ..., a_k^vee)`.
    pub fn comark_lcm(&self) -> u64 {
        self.comarks.iter().fold(1u64, |acc, &c| acc.lcm(&(c as u64)))
    }
}

fn quad(form: &[Vec<Rational64>], x: &[i64], y: &[i64]) -> Rational64 {
    let mut acc = Rational64::zero();
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            if yj != 0 {
                acc += form[i][j] * (xi * yj);
            }
        }
    }
    acc
}
