//! Weyl group as integer matrices on fundamental-weight coordinates.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::root_system::{RootDatum, WeightVec};

/// Largest Weyl group we are willing to enumerate.
pub const WEYL_GROUP_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    /// Acts on column vectors of fundamental-weight coordinates.
    matrix: Vec<Vec<i64>>,
    det: i8,
}

impl WeylElement {
    fn identity(k: usize) -> Self {
        let matrix = (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect();
        WeylElement { matrix, det: 1 }
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    /// `det(w) = (-1)^length(w)`.
    pub fn det(&self) -> i8 {
        self.det
    }

    pub fn apply(&self, w: &[i64]) -> WeightVec {
        WeightVec(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(w).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }
}

/// Simple reflection `s_i(l) = l - <l, a_i^vee> a_i` in weight coordinates.
fn simple_reflection(datum: &RootDatum, i: usize) -> Vec<Vec<i64>> {
    let k = datum.rank();
    (0..k)
        .map(|j| {
            (0..k)
                .map(|l| i64::from(j == l) - if l == i { datum.cartan()[i][j] } else { 0 })
                .collect()
        })
        .collect()
}

fn matmul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| a[i][l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// All elements of the Weyl group, in breadth-first order from the identity.
///
/// Elements are told apart by their image of `rho`, whose stabilizer is trivial.
pub fn weyl_group(datum: &RootDatum) -> Result<Vec<WeylElement>> {
    let k = datum.rank();
    let reflections: Vec<Vec<Vec<i64>>> = (0..k).map(|i| simple_reflection(datum, i)).collect();
    let rho = datum.rho().coords().to_vec();

    let id = WeylElement::identity(k);
    let mut seen: HashSet<WeightVec> = HashSet::new();
    seen.insert(id.apply(&rho));
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(w) = queue.pop_front() {
        for s in &reflections {
            let next = WeylElement {
                matrix: matmul(s, &w.matrix),
                det: -w.det,
            };
            if seen.insert(next.apply(&rho)) {
                if out.len() >= WEYL_GROUP_LIMIT {
                    return Err(Error::Resource(format!(
                        "{}: Weyl group has more than {WEYL_GROUP_LIMIT} elements",
                        datum.lie()
                    )));
                }
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(out)
}
