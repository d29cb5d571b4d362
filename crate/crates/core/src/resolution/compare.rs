use serde::{Deserialize, Serialize};

use super::matrix::ModulePresentation;
use super::oracle::graded_betti_oracle;
use super::resolve::{resolve, BettiTable};
use crate::error::Result;

/// Engine and oracle totals at one homological degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleRow {
    pub index: usize,
    pub engine: usize,
    pub oracle: usize,
    /// Every engine generator at this index has degree at most the bound,
    /// so the oracle total is complete.
    pub certified: bool,
}

/// A graded Betti number on which the two routes disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    pub index: usize,
    pub degree: i32,
    pub engine: usize,
    pub oracle: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleComparison {
    pub degree_bound: i32,
    pub hom_bound: usize,
    pub rows: Vec<OracleRow>,
    pub discrepancies: Vec<Discrepancy>,
}

impl OracleComparison {
    /// No graded Betti number up to the bounds differs.
    pub fn agrees(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

/// Resolves `m` to `hom_bound` and compares every `β_{i,j}` with
/// `i ≤ hom_bound`, `j ≤ degree_bound` against [`graded_betti_oracle`].
pub fn compare_with_oracle(
    m: &ModulePresentation,
    degree_bound: i32,
    hom_bound: usize,
) -> Result<OracleComparison> {
    let oracle = graded_betti_oracle(m, degree_bound, hom_bound)?;
    let engine = resolve(m, hom_bound)?.graded_betti();
    Ok(compare_tables(&engine, &oracle, degree_bound, hom_bound))
}

pub(crate) fn compare_tables(
    engine: &BettiTable,
    oracle: &BettiTable,
    degree_bound: i32,
    hom_bound: usize,
) -> OracleComparison {
    let mut discrepancies = Vec::new();
    let keys: std::collections::BTreeSet<(usize, i32)> = engine
        .entries
        .keys()
        .chain(oracle.entries.keys())
        .copied()
        .collect();
    for (i, j) in keys {
        if i > hom_bound || j > degree_bound {
            continue;
        }
        let (e, o) = (engine.get(i, j), oracle.get(i, j));
        if e != o {
            discrepancies.push(Discrepancy {
                index: i,
                degree: j,
                engine: e,
                oracle: o,
            });
        }
    }
    let rows = (0..=hom_bound)
        .map(|i| OracleRow {
            index: i,
            engine: engine.total(i),
            oracle: oracle.total(i),
            certified: engine.max_degree(i).is_none_or(|d| d <= degree_bound),
        })
        .collect();
    OracleComparison {
        degree_bound,
        hom_bound,
        rows,
        discrepancies,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_differences_inside_the_bounds_only() {
        let mut e = BettiTable::default();
        let mut o = BettiTable::default();
        e.add(0, 0, 1);
        o.add(0, 0, 1);
        e.add(1, 2, 3);
        o.add(1, 2, 2);
        e.add(2, 9, 4);
        let c = compare_tables(&e, &o, 5, 2);
        assert_eq!(
            c.discrepancies,
            vec![Discrepancy {
                index: 1,
                degree: 2,
                engine: 3,
                oracle: 2
            }]
        );
        assert!(!c.rows[2].certified);
        assert!(c.rows[0].certified);
    }
}
