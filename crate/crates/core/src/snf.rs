//! Smith normal form over the integers, diagonal only.
//!
//! Only the invariant factors are needed here (lattice indices), so the
//! unimodular transforms are not tracked.

use num_integer::Integer;

/// Invariant factors `d_1 | d_2 | ... | d_r` of an integer matrix given by rows.
///
/// Zero factors are dropped, so the length of the result is the rank.
pub fn invariant_factors(rows: &[Vec<i64>]) -> Vec<i64> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            r.iter().map(|&x| x as i128).collect()
        })
        .collect();

    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        // Pivot: smallest nonzero |entry| in the trailing block.
        loop {
            let Some((pi, pj)) = min_nonzero(&m, t) else {
                return finish(diag);
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }

            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..nrows {
                let q = Integer::div_floor(&m[i][t], &p);
                if q != 0 {
                    for j in t..ncols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..ncols {
                let q = Integer::div_floor(&m[t][j], &p);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if dirty {
                continue;
            }

            // Pivot must divide the remaining block; otherwise fold the
            // offending row into the pivot row and go again.
            let bad = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| m[i][j] % p != 0));
            match bad {
                Some(i) => {
                    for j in t..ncols {
                        m[t][j] += m[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    finish(diag)
}

fn min_nonzero(m: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(i128, usize, usize)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, &v) in row.iter().enumerate().skip(t) {
            if v != 0 && best.is_none_or(|(b, _, _)| v.abs() < b) {
                best = Some((v.abs(), i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn finish(diag: Vec<i128>) -> Vec<i64> {
    diag.into_iter()
        .map(|d| i64::try_from(d).expect("invariant factor overflows i64"))
        .collect()
}

/// Index of the lattice spanned by `rows` inside `Z^n`, where `n` is the
/// row length. `None` when the rows do not span a full-rank sublattice.
pub fn lattice_index(rows: &[Vec<i64>]) -> Option<u64> {
    let n = rows.first()?.len();
    let factors = invariant_factors(rows);
    if factors.len() != n {
        return None;
    }
    Some(factors.iter().map(|&d| d as u64).product())
}
