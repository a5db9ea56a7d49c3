//! Acceptance gate. Runs all twelve criteria at full size and prints one
//! line per criterion; exits nonzero if any fails.
//!
//! Criteria 1, 2 and 6 are additionally checked against literal fixtures
//! kept here, so a wrong reference inside the library cannot mask a wrong
//! computation.

use std::process::ExitCode;

use num_bigint::BigUint;
use picmod::rep_theory::omega_d;
use picmod::selftest::{run_check, Level, CHECKS};
use picmod::verlinde::{verlinde_dim, VerlindeOptions, VerlindeQuery};
use picmod::wps::wps_from_group;
use picmod::{LieType, RootDatum};

/// (type, minimal-index fundamental weights, their index)
const PROP23: &[(&str, &[usize], u64)] = &[
    ("A1", &[1], 1), ("A2", &[1, 2], 1), ("A3", &[1, 3], 1), ("A4", &[1, 4], 1),
    ("A5", &[1, 5], 1), ("A6", &[1, 6], 1), ("A7", &[1, 7], 1), ("A8", &[1, 8], 1),
    ("B3", &[1, 3], 2), ("B4", &[1], 2), ("B5", &[1], 2), ("B6", &[1], 2), ("B7", &[1], 2), ("B8", &[1], 2),
    ("C2", &[1], 1), ("C3", &[1], 1), ("C4", &[1], 1), ("C5", &[1], 1), ("C6", &[1], 1), ("C7", &[1], 1), ("C8", &[1], 1),
    ("D4", &[1, 3, 4], 2), ("D5", &[1], 2), ("D6", &[1], 2), ("D7", &[1], 2), ("D8", &[1], 2),
    ("E6", &[1, 6], 6), ("E7", &[7], 12), ("E8", &[8], 60),
    ("F4", &[4], 6), ("G2", &[1], 2),
];

/// Weighted projective type of the genus-one moduli space.
const WPS: &[(&str, &[u64])] = &[
    ("A1", &[1, 1]), ("A2", &[1, 1, 1]), ("A8", &[1, 1, 1, 1, 1, 1, 1, 1, 1]),
    ("B3", &[1, 1, 2, 1]), ("B4", &[1, 1, 2, 2, 1]), ("B8", &[1, 1, 2, 2, 2, 2, 2, 2, 1]),
    ("C2", &[1, 1, 1]), ("C8", &[1, 1, 1, 1, 1, 1, 1, 1, 1]),
    ("D4", &[1, 1, 2, 1, 1]), ("D5", &[1, 1, 2, 2, 1, 1]), ("D8", &[1, 1, 2, 2, 2, 2, 2, 1, 1]),
    ("E6", &[1, 1, 2, 2, 3, 2, 1]), ("E7", &[1, 2, 2, 3, 4, 3, 2, 1]), ("E8", &[1, 2, 3, 4, 6, 5, 4, 3, 2]),
    ("F4", &[1, 2, 3, 2, 1]), ("G2", &[1, 1, 2]),
];

fn datum(s: &str) -> RootDatum {
    RootDatum::build(s.parse::<LieType>().unwrap()).unwrap()
}

fn fixture_prop23() -> Result<(), String> {
    for &(t, indices, m) in PROP23 {
        let od = omega_d(&datum(t)).map_err(|e| e.to_string())?;
        if od.indices != indices || od.m_g != m {
            return Err(format!("{t}: fixture ({indices:?}, {m}) vs ({:?}, {})", od.indices, od.m_g));
        }
    }
    if PROP23.len() != LieType::all_up_to_rank(8).len() {
        return Err("fixture does not cover every type".into());
    }
    Ok(())
}

fn fixture_wps() -> Result<(), String> {
    for &(t, w) in WPS {
        let got = wps_from_group(&datum(t));
        if got.weights() != w {
            return Err(format!("{t}: fixture {w:?} vs {got}"));
        }
    }
    Ok(())
}

fn fixture_su2() -> Result<(), String> {
    let d = datum("A1");
    for (g, l, want) in [(2, 1, 4u32), (2, 2, 10), (3, 1, 8)] {
        let q = VerlindeQuery { lie: d.lie(), genus: g, level: l };
        let r = verlinde_dim(&d, &q, &VerlindeOptions::default()).map_err(|e| e.to_string())?;
        if r.rounded != BigUint::from(want) {
            return Err(format!("g={g} l={l}: {} vs {want}", r.rounded));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (id, _, _) in CHECKS {
        let key = format!("criterion_{id}");
        if !filter.is_empty() && !filter.iter().any(|f| key.contains(f.as_str())) {
            continue;
        }
        let mut outcome = run_check(id, Level::Full);
        let fixture = match id {
            1 => Some(fixture_prop23()),
            2 => Some(fixture_wps()),
            6 => Some(fixture_su2()),
            _ => None,
        };
        if let Some(Err(e)) = fixture {
            outcome.passed = false;
            outcome.detail = format!("fixture mismatch: {e}");
        }
        println!(
            "criterion {:>2}: {}  {}: {} ({} ms)",
            id,
            if outcome.passed { "PASS" } else { "FAIL" },
            outcome.name,
            outcome.detail,
            outcome.elapsed_ms
        );
        if !outcome.passed {
            failures += 1;
        }
    }
    if failures == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
