//! Regeneration of the reference tables from root data.
//!
//! Each table has concrete rows for every type up to rank 8 and, per
//! series, one symbolic row obtained by writing the rank-8 instance in
//! terms of `k` (`w1, wk`, `(1,1,2,...,2,1)`).

use serde::Serialize;

use crate::error::{consistency, Result};
use crate::rep_theory::omega_d;
use crate::root_system::{LieType, RootDatum, Series};
use crate::wps::wps_from_group;

/// Largest rank instantiated for the infinite series.
pub const MAX_TABLE_RANK: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Prop23,
    Wps,
    Comarks,
}

impl TableKind {
    pub fn name(self) -> &'static str {
        match self {
            TableKind::Prop23 => "prop23",
            TableKind::Wps => "wps",
            TableKind::Comarks => "comarks",
        }
    }
}

impl std::str::FromStr for TableKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "prop23" => Ok(TableKind::Prop23),
            "wps" => Ok(TableKind::Wps),
            "comarks" => Ok(TableKind::Comarks),
            other => Err(format!("unknown table `{other}` (expected prop23, wps or comarks)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub kind: TableKind,
    pub columns: Vec<String>,
    /// One row per series, written in terms of the rank `k`.
    pub symbolic: Vec<Vec<String>>,
    /// One row per concrete type.
    pub rows: Vec<Vec<String>>,
}

/// A1..A8, B3..B8, C2..C8, D4..D8, E6, E7, E8, F4, G2.
pub fn table_types() -> Vec<LieType> {
    LieType::all_up_to_rank(MAX_TABLE_RANK)
}

fn family_label(series: Series) -> String {
    let l = series.letter();
    match series {
        Series::A => format!("{l}_k (k>=1)"),
        Series::B => format!("{l}_k (k>=3)"),
        Series::C => format!("{l}_k (k>=2)"),
        Series::D => format!("{l}_k (k>=4)"),
        _ => unreachable!("exceptional series have no family row"),
    }
}

fn is_classical(series: Series) -> bool {
    matches!(series, Series::A | Series::B | Series::C | Series::D)
}

fn symbolic_index(i: usize, k: usize) -> String {
    if i == k {
        "k".into()
    } else if i + 1 == k {
        "k-1".into()
    } else {
        i.to_string()
    }
}

fn weights_list(indices: &[usize]) -> String {
    indices
        .iter()
        .map(|i| format!("w{i}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn tuple(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("({})", inner.join(","))
}

/// Collapses the longest interior run (length >= 3) of equal values into
/// `a,...,a`.
fn compress_tuple(values: &[u64]) -> String {
    let mut best: Option<(usize, usize)> = None;
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] != values[start] {
            let len = i - start;
            if len >= 3 && best.is_none_or(|(_, l)| len > l) {
                best = Some((start, len));
            }
            start = i;
        }
    }
    let Some((s, len)) = best else {
        return tuple(values);
    };
    let mut parts: Vec<String> = values[..s + 1].iter().map(u64::to_string).collect();
    parts.push("...".into());
    parts.extend(values[s + len - 1..].iter().map(u64::to_string));
    format!("({})", parts.join(","))
}

pub fn generate(kind: TableKind) -> Result<Table> {
    let types = table_types();
    let data: Vec<RootDatum> = types
        .iter()
        .map(|&t| RootDatum::build(t))
        .collect::<Result<_>>()?;

    let (columns, rows, symbolic) = match kind {
        TableKind::Prop23 => {
            let mut rows = Vec::new();
            let mut symbolic = Vec::new();
            for series in Series::ALL {
                let family: Vec<&RootDatum> =
                    data.iter().filter(|d| d.lie().series() == series).collect();
                let mut family_m = None;
                for d in &family {
                    let od = omega_d(d)?;
                    if is_classical(series) {
                        match family_m {
                            None => family_m = Some(od.m_g),
                            Some(m) if m != od.m_g => {
                                return Err(consistency(format!(
                                    "{}: m_G {} differs within its series ({m})",
                                    d.lie(),
                                    od.m_g
                                )))
                            }
                            _ => {}
                        }
                        if d.rank() == MAX_TABLE_RANK {
                            let sym: Vec<String> = od
                                .indices
                                .iter()
                                .map(|&i| format!("w{}", symbolic_index(i, d.rank())))
                                .collect();
                            symbolic.push(vec![
                                family_label(series),
                                sym.join(", "),
                                od.m_g.to_string(),
                            ]);
                        }
                    }
                    rows.push(vec![
                        d.lie().to_string(),
                        weights_list(&od.indices),
                        od.m_g.to_string(),
                    ]);
                }
            }
            (vec!["type", "omega_d", "m_V(omega_d)"], rows, symbolic)
        }
        TableKind::Wps | TableKind::Comarks => {
            let mut rows = Vec::new();
            let mut symbolic = Vec::new();
            for d in &data {
                let values: Vec<u64> = if kind == TableKind::Wps {
                    wps_from_group(d).weights().to_vec()
                } else {
                    d.comarks().iter().map(|&c| c as u64).collect()
                };
                let series = d.lie().series();
                if is_classical(series) && d.rank() == MAX_TABLE_RANK {
                    symbolic.push(vec![family_label(series), compress_tuple(&values)]);
                }
                rows.push(vec![d.lie().to_string(), tuple(&values)]);
            }
            let header = if kind == TableKind::Wps {
                "weighted_projective_type"
            } else {
                "comarks"
            };
            (vec!["type", header], rows, symbolic)
        }
    };

    Ok(Table {
        kind,
        columns: columns.into_iter().map(String::from).collect(),
        symbolic,
        rows,
    })
}

impl Table {
    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let line = |cells: &[String]| format!("| {} |\n", cells.join(" | "));
        out.push_str(&line(&self.columns));
        out.push_str(&line(&vec!["---".to_string(); self.columns.len()]));
        for row in self.symbolic.iter().chain(&self.rows) {
            out.push_str(&line(row));
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let quote = |c: &String| {
            if c.contains([',', '"', '\n']) {
                format!("\"{}\"", c.replace('"', "\"\""))
            } else {
                c.clone()
            }
        };
        let mut out = String::new();
        for row in std::iter::once(&self.columns).chain(&self.symbolic).chain(&self.rows) {
            let cells: Vec<String> = row.iter().map(quote).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    /// Concrete row for a type, if present.
    pub fn row(&self, lie: &str) -> Option<&[String]> {
        self.rows.iter().find(|r| r[0] == lie).map(Vec::as_slice)
    }
}
