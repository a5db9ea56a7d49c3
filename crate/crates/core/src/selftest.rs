//! The acceptance battery.
//!
//! Twelve checks, each comparing a closed-form path against reference
//! values or an independent oracle. `Level::Full` runs every check over the
//! full parameter ranges; `Level::Quick` shrinks the expensive ranges so the
//! whole battery finishes in a few seconds.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rug::float::Constant;
use rug::Float;
use serde::Serialize;

use crate::picard::{report_for, theta_exponent};
use crate::rep_theory::{
    dynkin_index, freudenthal_weights, index_via_weights, omega_d, tensor_weight_system,
    weyl_dim, IrrepLabel, WeightSystem,
};
use crate::root_system::{LieType, RootDatum, Series, WeightVec};
use crate::verlinde::{
    count_p_ell, enumerate_p_ell, kac_peterson_s, t_ell, verlinde_dim, SineTable, VerlindeOptions,
    VerlindeQuery, VerlindeResult,
};
use crate::wps::wps_from_group;

/// Tolerance on the certified distance of a Verlinde value to its integer.
pub const INTEGRALITY_TOL: f64 = 1e-6;
/// Tolerance for S-matrix identities at 256 bits.
pub const S_MATRIX_TOL: f64 = 1e-20;
/// Working precision of the S-matrix checks.
pub const S_MATRIX_BITS: u32 = 256;
/// Wall-clock budget of the table regeneration check.
pub const TABLE_BUDGET: Duration = Duration::from_secs(10);
/// Wall-clock budget of the higher-genus integrality check.
pub const INTEGRALITY_BUDGET: Duration = Duration::from_secs(60);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Quick,
    Full,
}

impl std::str::FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "quick" => Ok(Level::Quick),
            "full" => Ok(Level::Full),
            other => Err(format!("unknown level `{other}` (expected quick or full)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl std::fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "[{:>2}] {} {:<36} {} ({} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.elapsed_ms
        )
    }
}

type CheckFn = fn(Level) -> Result<String, String>;

pub const CHECKS: [(u8, &str, CheckFn); 12] = [
    (1, "minimal-index fundamental weights", check_prop23),
    (2, "genus-one weighted projective types", check_wps_table),
    (3, "m_G = lcm(1, comarks)", check_mg_identity),
    (4, "genus-one Verlinde = #P_l", check_genus_one),
    (5, "graded dimension = #P_(p m_G)", check_count_matching),
    (6, "SU(2) higher genus closed form", check_su2),
    (7, "higher-genus integrality", check_integrality),
    (8, "S-matrix oracle", check_s_matrix),
    (9, "Dynkin index vs Freudenthal", check_index_oracle),
    (10, "tensor index identity", check_tensor_identity),
    (11, "m_G divides every m_V(w_i)", check_divisibility),
    (12, "local factoriality iff A or C", check_factoriality),
];

pub fn run_check(id: u8, level: Level) -> CheckOutcome {
    let (_, name, f) = CHECKS
        .iter()
        .find(|(i, _, _)| *i == id)
        .unwrap_or_else(|| panic!("no check with id {id}"));
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(|| f(level)))
        .unwrap_or_else(|p| Err(format!("panicked: {}", panic_message(&p))));
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    CheckOutcome {
        id,
        name,
        passed,
        detail,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

pub fn run(level: Level) -> Vec<CheckOutcome> {
    CHECKS.iter().map(|(id, _, _)| run_check(*id, level)).collect()
}

fn panic_message(p: &Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

fn build(lie: LieType) -> Result<RootDatum, String> {
    RootDatum::build(lie).map_err(|e| e.to_string())
}

fn lie(s: &str) -> LieType {
    s.parse().expect("fixture type token")
}

/// A1-A8, B3-B8, C2-C8, D4-D8, E6, E7, E8, F4, G2.
fn table_types() -> Vec<LieType> {
    LieType::all_up_to_rank(8)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Reference listing of minimal-index fundamental weights and their index.
fn expected_prop23(t: LieType) -> (Vec<usize>, u64) {
    let k = t.rank();
    match t.series() {
        Series::A if k == 1 => (vec![1], 1),
        Series::A => (vec![1, k], 1),
        Series::C => (vec![1], 1),
        Series::B if k == 3 => (vec![1, 3], 2),
        Series::B => (vec![1], 2),
        Series::D if k == 4 => (vec![1, 3, 4], 2),
        Series::D => (vec![1], 2),
        Series::G => (vec![1], 2),
        Series::F => (vec![4], 6),
        Series::E => match k {
            6 => (vec![1, 6], 6),
            7 => (vec![7], 12),
            _ => (vec![8], 60),
        },
    }
}

/// Reference weighted projective types `(1, a_1^vee, ..., a_k^vee)`.
fn expected_wps(t: LieType) -> Vec<u64> {
    let k = t.rank();
    let mut v = vec![1u64];
    match t.series() {
        Series::A | Series::C => v.extend(std::iter::repeat_n(1, k)),
        Series::B => {
            v.push(1);
            v.extend(std::iter::repeat_n(2, k - 2));
            v.push(1);
        }
        Series::D => {
            v.push(1);
            v.extend(std::iter::repeat_n(2, k - 3));
            v.extend([1, 1]);
        }
        Series::G => v.extend([1, 2]),
        Series::F => v.extend([2, 3, 2, 1]),
        Series::E => match k {
            6 => v.extend([1, 2, 2, 3, 2, 1]),
            7 => v.extend([2, 2, 3, 4, 3, 2, 1]),
            _ => v.extend([2, 3, 4, 6, 5, 4, 3, 2]),
        },
    }
    v
}

fn check_prop23(_: Level) -> Result<String, String> {
    let start = Instant::now();
    let types = table_types();
    for &t in &types {
        let d = build(t)?;
        let od = omega_d(&d).map_err(|e| e.to_string())?;
        let expected = expected_prop23(t);
        ensure((od.indices.clone(), od.m_g) == expected, || {
            format!("{t}: computed ({:?}, {}) expected {:?}", od.indices, od.m_g, expected)
        })?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TABLE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} types match", types.len()))
}

fn check_wps_table(_: Level) -> Result<String, String> {
    let types = table_types();
    for &t in &types {
        let d = build(t)?;
        let got = wps_from_group(&d);
        let want = expected_wps(t);
        ensure(got.weights() == want.as_slice(), || {
            format!("{t}: computed {got} expected {want:?}")
        })?;
    }
    Ok(format!("{} types match", types.len()))
}

fn check_mg_identity(_: Level) -> Result<String, String> {
    let types = table_types();
    for &t in &types {
        let d = build(t)?;
        let s = wps_from_group(&d).generator_degree();
        let od = omega_d(&d).map_err(|e| e.to_string())?;
        for &i in &od.indices {
            let m = dynkin_index(&d, &IrrepLabel::fundamental(d.rank(), i)).map_err(|e| e.to_string())?;
            ensure(m == BigUint::from(s), || format!("{t}: m_V(w{i}) = {m}, lcm = {s}"))?;
        }
    }
    Ok(format!("{} types", types.len()))
}

fn check_genus_one(level: Level) -> Result<String, String> {
    let max_level = if level == Level::Full { 6 } else { 4 };
    let mut n = 0;
    for t in LieType::all_up_to_rank(6) {
        let d = build(t)?;
        for l in 0..=max_level {
            let q = VerlindeQuery { lie: t, genus: 1, level: l };
            let r = verlinde_dim(&d, &q, &VerlindeOptions::default()).map_err(|e| e.to_string())?;
            let listed = enumerate_p_ell(&d, l).len();
            ensure(r.rounded == BigUint::from(listed), || {
                format!("{t} l={l}: F_1 = {} but #P_l = {listed}", r.rounded)
            })?;
            ensure(count_p_ell(&d, l) == BigUint::from(listed), || {
                format!("{t} l={l}: count and enumeration of P_l disagree")
            })?;
            n += 1;
        }
    }
    Ok(format!("{n} (type, level) pairs"))
}

fn check_count_matching(level: Level) -> Result<String, String> {
    let max_p = if level == Level::Full { 5 } else { 2 };
    let mut types = LieType::all_up_to_rank(6);
    types.extend([lie("E7"), lie("E8")]);
    let mut n = 0;
    for t in types {
        let d = build(t)?;
        let model = wps_from_group(&d);
        let m_g = omega_d(&d).map_err(|e| e.to_string())?.m_g;
        for p in 1..=max_p {
            let l = p * m_g;
            let graded = model.hilbert_dim(l);
            let alcove = count_p_ell(&d, l as u32);
            ensure(graded == alcove, || {
                format!("{t} p={p}: dim C[z]_{l} = {graded} but #P_{l} = {alcove}")
            })?;
            if alcove <= BigUint::from(200_000u32) {
                let listed = enumerate_p_ell(&d, l as u32).len();
                ensure(alcove == BigUint::from(listed), || {
                    format!("{t} p={p}: counted {alcove}, listed {listed}")
                })?;
            }
            n += 1;
        }
    }
    Ok(format!("{n} (type, p) pairs"))
}

/// `(2(l+2))^{g-1} sum_{j=0}^{l} (2 sin((j+1) pi/(l+2)))^{2-2g}`, straight from MPFR.
fn su2_closed_form(genus: u32, level: u32, prec: u32) -> Float {
    let pi = Float::with_val(prec, Constant::Pi);
    let n = level + 2;
    let e = genus as i32 - 1;
    let mut sum = Float::with_val(prec, 0);
    for j in 0..=level {
        let arg = Float::with_val(prec, &pi * (j + 1)) / n;
        let s = Float::with_val(prec, arg.sin() * 2u32);
        sum += Float::with_val(prec, rug::ops::Pow::pow(s, -2 * e));
    }
    let pre = Float::with_val(prec, rug::ops::Pow::pow(Float::with_val(prec, 2 * n), e));
    Float::with_val(prec, sum * pre)
}

fn certified(r: &VerlindeResult) -> bool {
    Float::with_val(r.precision_bits, &r.abs_gap + &r.error_bound) < INTEGRALITY_TOL
}

fn check_su2(_: Level) -> Result<String, String> {
    let d = build(lie("A1"))?;
    let mut seen = BTreeMap::new();
    for g in 2..=4 {
        for l in 1..=6 {
            let q = VerlindeQuery { lie: d.lie(), genus: g, level: l };
            let r = verlinde_dim(&d, &q, &VerlindeOptions::default()).map_err(|e| e.to_string())?;
            ensure(certified(&r), || format!("g={g} l={l}: gap not certified"))?;
            let oracle = su2_closed_form(g, l, 256);
            let nearest = oracle
                .to_integer()
                .ok_or_else(|| format!("g={g} l={l}: oracle not finite"))?;
            let gap = Float::with_val(256, &oracle - &nearest).abs();
            ensure(gap < INTEGRALITY_TOL, || format!("g={g} l={l}: oracle gap {gap}"))?;
            ensure(r.rounded.to_string() == nearest.to_string(), || {
                format!("g={g} l={l}: formula {} vs closed form {nearest}", r.rounded)
            })?;
            seen.insert((g, l), r.rounded);
        }
    }
    for ((g, l), want) in [((2, 1), 4u32), ((2, 2), 10), ((3, 1), 8)] {
        ensure(seen[&(g, l)] == BigUint::from(want), || {
            format!("g={g} l={l}: {} expected {want}", seen[&(g, l)])
        })?;
    }
    Ok(format!("{} values match, incl. 4, 10, 8", seen.len()))
}

fn check_integrality(level: Level) -> Result<String, String> {
    let start = Instant::now();
    let max_level = if level == Level::Full { 4 } else { 2 };
    let mut n = 0;
    for t in ["A2", "C2", "G2"] {
        let d = build(lie(t))?;
        for g in 2..=3 {
            for l in 1..=max_level {
                let q = VerlindeQuery { lie: d.lie(), genus: g, level: l };
                let r = verlinde_dim(&d, &q, &VerlindeOptions::default()).map_err(|e| e.to_string())?;
                ensure(r.abs_gap < INTEGRALITY_TOL && certified(&r), || {
                    format!("{t} g={g} l={l}: gap {}", r.abs_gap)
                })?;
                ensure(r.rounded >= BigUint::from(1u32), || format!("{t} g={g} l={l}: zero"))?;
                n += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < INTEGRALITY_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{n} values certified"))
}

fn check_s_matrix(_: Level) -> Result<String, String> {
    let p = S_MATRIX_BITS;
    let mut worst_unitarity = Float::with_val(p, 0);
    let mut n = 0;
    for t in ["A1", "A2"] {
        let d = build(lie(t))?;
        for l in 0..=3 {
            let s = kac_peterson_s(&d, l, p).map_err(|e| e.to_string())?;
            let u = s.unitarity_residual();
            ensure(u < S_MATRIX_TOL, || format!("{t} l={l}: unitarity residual {u}"))?;
            let sym = s.symmetry_residual();
            ensure(sym < S_MATRIX_TOL, || format!("{t} l={l}: symmetry residual {sym}"))?;
            worst_unitarity.max_mut(&u);

            let t_l = crate::verlinde::to_float(&t_ell(&d, l), p);
            let table = SineTable::new(&d, l, p);
            // |S_{0 mu}|^2 for every mu
            let mut sq = Vec::new();
            for (j, mu) in s.weights().iter().enumerate() {
                let (re, im) = s.entry(0, j);
                ensure(im.clone().abs() < S_MATRIX_TOL && *re > 0, || {
                    format!("{t} l={l}: S_0{mu} not real positive")
                })?;
                let m2 = Float::with_val(p, re * re) + Float::with_val(p, im * im);
                let prod = table.sine_product(&d, mu.coords()).map_err(|e| e.to_string())?;
                let diff = Float::with_val(p, &m2 * &t_l) - &prod;
                ensure(diff.clone().abs() < S_MATRIX_TOL, || {
                    format!("{t} l={l} mu={mu}: S_0mu^2 t_l - sine product = {diff}")
                })?;
                sq.push(m2);
            }
            for g in 1..=3u32 {
                let mut sum = Float::with_val(p, 0);
                for m2 in &sq {
                    sum += Float::with_val(p, rug::ops::Pow::pow(m2, 1 - g as i32));
                }
                let q = VerlindeQuery { lie: d.lie(), genus: g, level: l };
                let r = verlinde_dim(&d, &q, &VerlindeOptions::default()).map_err(|e| e.to_string())?;
                let diff = Float::with_val(p, &sum - &r.value).abs();
                ensure(diff < INTEGRALITY_TOL, || {
                    format!("{t} l={l} g={g}: S-matrix sum differs by {diff}")
                })?;
            }
            n += 1;
        }
    }
    Ok(format!(
        "{n} matrices, worst unitarity residual {}",
        worst_unitarity.to_string_radix(10, Some(3))
    ))
}

fn check_index_oracle(_: Level) -> Result<String, String> {
    let mut n = 0;
    for t in LieType::all_up_to_rank(4) {
        let d = build(t)?;
        for i in 1..=d.rank() {
            let lam = IrrepLabel::fundamental(d.rank(), i);
            let closed = dynkin_index(&d, &lam).map_err(|e| e.to_string())?;
            let ws = freudenthal_weights(&d, &lam).map_err(|e| e.to_string())?;
            let via = index_via_weights(&ws, &d).map_err(|e| e.to_string())?;
            ensure(closed == via, || format!("{t} w{i}: closed {closed}, weights {via}"))?;
            n += 1;
        }
    }
    Ok(format!("{n} fundamental representations"))
}

/// Dominant weights with Weyl dimension at most `max_dim`; dimension grows
/// in every coordinate so a bounded search is exhaustive.
fn irreps_up_to(d: &RootDatum, max_dim: u64) -> Result<Vec<(IrrepLabel, u64)>, String> {
    fn go(
        d: &RootDatum,
        max_dim: u64,
        prefix: &mut Vec<i64>,
        out: &mut Vec<(IrrepLabel, u64)>,
    ) -> Result<(), String> {
        let k = d.rank();
        if prefix.len() == k {
            let lam = IrrepLabel::new(WeightVec::new(prefix)).map_err(|e| e.to_string())?;
            let dim = weyl_dim(d, &lam).map_err(|e| e.to_string())?;
            out.push((lam, dim.to_u64().unwrap_or(u64::MAX)));
            return Ok(());
        }
        let mut c = 0;
        loop {
            // smallest completion: remaining coordinates zero
            let mut probe = prefix.clone();
            probe.push(c);
            probe.resize(k, 0);
            let dim = weyl_dim(d, &IrrepLabel::new(WeightVec::new(&probe)).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            if dim > BigUint::from(max_dim) {
                return Ok(());
            }
            prefix.push(c);
            go(d, max_dim, prefix, out)?;
            prefix.pop();
            c += 1;
        }
    }
    let mut out = Vec::new();
    go(d, max_dim, &mut Vec::new(), &mut out)?;
    out.retain(|(_, dim)| *dim <= max_dim);
    Ok(out)
}

fn check_tensor_identity(level: Level) -> Result<String, String> {
    let max_dim = if level == Level::Full { 200 } else { 40 };
    let mut pairs = 0usize;
    for t in ["A1", "A2", "C2", "G2"] {
        let d = build(lie(t))?;
        let irreps = irreps_up_to(&d, max_dim)?;
        let data: Vec<(WeightSystem, BigUint, u64)> = irreps
            .iter()
            .map(|(lam, dim)| {
                let ws = freudenthal_weights(&d, lam).map_err(|e| e.to_string())?;
                let m = dynkin_index(&d, lam).map_err(|e| e.to_string())?;
                Ok((ws, m, *dim))
            })
            .collect::<Result<_, String>>()?;
        for a in 0..data.len() {
            for b in a..data.len() {
                let (va, ma, da) = &data[a];
                let (vb, mb, db) = &data[b];
                let prod = tensor_weight_system(va, vb).map_err(|e| e.to_string())?;
                let lhs = index_via_weights(&prod, &d).map_err(|e| e.to_string())?;
                let rhs = ma * BigUint::from(*db) + mb * BigUint::from(*da);
                ensure(lhs == rhs, || {
                    format!(
                        "{t}: {} x {}: index {lhs} vs {rhs}",
                        irreps[a].0.highest_weight(),
                        irreps[b].0.highest_weight()
                    )
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} pairs with dim <= {max_dim}"))
}

fn check_divisibility(_: Level) -> Result<String, String> {
    let types = table_types();
    for &t in &types {
        let d = build(t)?;
        for i in 1..=d.rank() {
            let te = theta_exponent(&d, &IrrepLabel::fundamental(d.rank(), i)).map_err(|e| e.to_string())?;
            ensure(!te.power_of_generator.is_zero(), || format!("{t} w{i}: zero power"))?;
        }
    }
    Ok(format!("{} types", types.len()))
}

fn check_factoriality(_: Level) -> Result<String, String> {
    let types = table_types();
    let mut factorial = Vec::new();
    for &t in &types {
        let d = build(t)?;
        for g in [1, 2] {
            let r = report_for(&d, g).map_err(|e| e.to_string())?;
            let expect = matches!(t.series(), Series::A | Series::C);
            ensure(r.locally_factorial == expect, || {
                format!("{t} g={g}: locally_factorial = {}", r.locally_factorial)
            })?;
            if g == 1 && r.locally_factorial {
                factorial.push(t.to_string());
            }
        }
    }
    Ok(format!("{} of {} types locally factorial", factorial.len(), types.len()))
}
