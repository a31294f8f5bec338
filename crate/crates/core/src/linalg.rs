//! Exact sparse Gauss-Jordan elimination over `Q(i)`.

use std::collections::BTreeMap;

use crate::gaussian::GaussianRational as Q;

pub type SparseRow = BTreeMap<usize, Q>;

/// Outcome of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    /// Unique solution.
    Unique(Vec<Q>),
    /// Consistent but underdetermined; free unknowns set to zero.
    Particular(Vec<Q>),
    Inconsistent,
}

impl Solution {
    pub fn values(&self) -> Option<&[Q]> {
        match self {
            Solution::Unique(v) | Solution::Particular(v) => Some(v),
            Solution::Inconsistent => None,
        }
    }
}

fn axpy(target: &mut SparseRow, c: &Q, row: &SparseRow) {
    for (&k, v) in row {
        let slot = target.entry(k).or_insert_with(Q::zero);
        *slot -= &(c * v);
        if slot.is_zero() {
            target.remove(&k);
        }
    }
}

/// Solves `rows * u = rhs` for `ncols` unknowns.
pub fn solve(rows: Vec<SparseRow>, rhs: Vec<Q>, ncols: usize) -> Solution {
    assert_eq!(rows.len(), rhs.len());
    // pivot column -> (row, rhs), rows kept fully reduced against each other
    let mut pivots: BTreeMap<usize, (SparseRow, Q)> = BTreeMap::new();
    for (mut row, mut b) in rows.into_iter().zip(rhs) {
        row.retain(|_, c| !c.is_zero());
        // reduce against existing pivots
        loop {
            let hit = row.keys().find(|k| pivots.contains_key(k)).copied();
            let Some(k) = hit else { break };
            let c = row[&k].clone();
            let (prow, pb) = &pivots[&k];
            axpy(&mut row, &c, prow);
            b = &b - &(&c * pb);
        }
        let Some((&col, lead)) = row.iter().next() else {
            if !b.is_zero() {
                return Solution::Inconsistent;
            }
            continue;
        };
        let inv = lead.inv().unwrap();
        let row: SparseRow = row.iter().map(|(&k, v)| (k, v * &inv)).collect();
        let b = &b * &inv;
        // eliminate the new pivot column from earlier pivot rows
        for (prow, pb) in pivots.values_mut() {
            if let Some(c) = prow.get(&col).cloned() {
                axpy(prow, &c, &row);
                *pb = &*pb - &(&c * &b);
            }
        }
        pivots.insert(col, (row, b));
    }
    let mut x = vec![Q::zero(); ncols];
    for (&col, (_, b)) in &pivots {
        x[col] = b.clone();
    }
    // free columns are zero, so each pivot value is just its rhs
    if pivots.len() == ncols {
        Solution::Unique(x)
    } else {
        Solution::Particular(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|&(k, v)| (k, Q::from_int(v))).collect()
    }

    #[test]
    fn two_by_two() {
        // u0 + u1 = 3, u0 - u1 = 1
        let s = solve(
            vec![row(&[(0, 1), (1, 1)]), row(&[(0, 1), (1, -1)])],
            vec![Q::from_int(3), Q::from_int(1)],
            2,
        );
        assert_eq!(s, Solution::Unique(vec![Q::from_int(2), Q::from_int(1)]));
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let s = solve(
            vec![row(&[(0, 1), (1, 1)]), row(&[(0, 2), (1, 2)])],
            vec![Q::from_int(1), Q::from_int(3)],
            2,
        );
        assert_eq!(s, Solution::Inconsistent);
        let s = solve(vec![row(&[(0, 1), (1, 1)])], vec![Q::from_int(1)], 2);
        assert!(matches!(s, Solution::Particular(_)));
    }
}
