use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{column_degree, QuotientRing};
use crate::ring::{Homogeneity, Polynomial};

/// A homogeneous matrix describing a map `⊕ R(-c_j) -> ⊕ R(-r_i)`.
///
/// Stored column by column; column `j` has degree `c_j` and entry `(i, j)`
/// is homogeneous of degree `c_j - r_i` (or zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix {
    row_degrees: Vec<i32>,
    col_degrees: Vec<i32>,
    columns: Vec<Vec<Polynomial>>,
}

impl GradedMatrix {
    /// Builds a matrix from columns, inferring column degrees. Zero columns
    /// carry no relation and are dropped.
    pub fn from_columns(row_degrees: Vec<i32>, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let mut kept = Vec::with_capacity(columns.len());
        let mut col_degrees = Vec::with_capacity(columns.len());
        for c in columns {
            if c.len() != row_degrees.len() {
                return Err(Error::Shape(format!(
                    "column of length {} for {} rows",
                    c.len(),
                    row_degrees.len()
                )));
            }
            if let Some(d) = column_degree(&c, &row_degrees)? {
                col_degrees.push(d);
                kept.push(c);
            }
        }
        Ok(GradedMatrix {
            row_degrees,
            col_degrees,
            columns: kept,
        })
    }

    /// Builds a matrix with explicit degrees; zero columns are kept.
    pub fn with_degrees(
        row_degrees: Vec<i32>,
        col_degrees: Vec<i32>,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if col_degrees.len() != columns.len() {
            return Err(Error::Shape(
                "column degree count differs from column count".into(),
            ));
        }
        for (c, &d) in columns.iter().zip(&col_degrees) {
            if c.len() != row_degrees.len() {
                return Err(Error::Shape(format!(
                    "column of length {} for {} rows",
                    c.len(),
                    row_degrees.len()
                )));
            }
            if let Some(e) = column_degree(c, &row_degrees)? {
                if e != d {
                    return Err(Error::NotHomogeneous(format!(
                        "column declared of degree {d} has degree {e}"
                    )));
                }
            }
        }
        Ok(GradedMatrix {
            row_degrees,
            col_degrees,
            columns,
        })
    }

    /// The `rows × 0` matrix (presenting a free module).
    pub fn empty(row_degrees: Vec<i32>) -> Self {
        GradedMatrix {
            row_degrees,
            col_degrees: Vec::new(),
            columns: Vec::new(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn row_degrees(&self) -> &[i32] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i32] {
        &self.col_degrees
    }

    pub fn columns(&self) -> &[Vec<Polynomial>] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[Polynomial] {
        &self.columns[j]
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.columns[j][i]
    }

    pub fn rows(&self) -> Vec<Vec<Polynomial>> {
        (0..self.nrows())
            .map(|i| self.columns.iter().map(|c| c[i].clone()).collect())
            .collect()
    }

    /// All entries, column by column.
    pub fn entries(&self) -> impl Iterator<Item = &Polynomial> {
        self.columns.iter().flatten()
    }

    /// Whether every entry lies in the homogeneous maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.entries().all(|p| p.constant_term().is_none())
    }

    /// `self * other`, entries reduced in `ring`.
    pub fn compose(
        &self,
        other: &GradedMatrix,
        ring: &QuotientRing,
    ) -> Result<Vec<Vec<Polynomial>>> {
        if self.ncols() != other.nrows() {
            return Err(Error::Shape(format!(
                "cannot compose {}x{} with {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        Ok(other
            .columns
            .iter()
            .map(|oc| {
                (0..self.nrows())
                    .map(|i| {
                        let mut acc = ring.zero();
                        for (k, b) in oc.iter().enumerate() {
                            if !b.is_zero() {
                                acc = acc.add(&self.columns[k][i].mul(b));
                            }
                        }
                        ring.reduce(&acc)
                    })
                    .collect()
            })
            .collect())
    }

    /// Plain-text rendering, one row per line.
    pub fn format(&self, names: &[String]) -> String {
        let mut out = String::new();
        if self.nrows() == 0 || self.ncols() == 0 {
            let _ = write!(out, "({}x{} zero matrix)", self.nrows(), self.ncols());
            return out;
        }
        let cells: Vec<Vec<String>> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|p| p.display(names).to_string()).collect())
            .collect();
        let widths: Vec<usize> = (0..self.ncols())
            .map(|j| cells.iter().map(|r| r[j].len()).max().unwrap_or(0))
            .collect();
        for (i, r) in cells.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push('[');
            for (j, c) in r.iter().enumerate() {
                if j > 0 {
                    out.push_str("  ");
                }
                let _ = write!(out, "{c:>w$}", w = widths[j]);
            }
            out.push(']');
        }
        out
    }
}

/// Infers row degrees that make every column homogeneous. Rows linked
/// through a common column get consistent degrees; each linked group is
/// shifted so its smallest row degree is 0.
#[allow(clippy::needless_range_loop)] // entries are looked up by (row, column)
pub fn infer_row_degrees(rows: &[Vec<Polynomial>]) -> Result<Vec<i32>> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut row_deg: Vec<Option<i32>> = vec![None; nrows];
    let mut col_deg: Vec<Option<i32>> = vec![None; ncols];
    let entry_deg = |i: usize, j: usize| -> Result<Option<i32>> {
        match rows[i][j].homogeneity() {
            Homogeneity::Zero => Ok(None),
            Homogeneity::Homogeneous(d) => Ok(Some(d as i32)),
            Homogeneity::Mixed => Err(Error::NotHomogeneous(format!(
                "entry ({i}, {j}) has mixed degrees"
            ))),
        }
    };
    for start in 0..nrows {
        if row_deg[start].is_some() {
            continue;
        }
        let mut group = vec![start];
        row_deg[start] = Some(0);
        let mut stack = vec![(true, start)];
        while let Some((is_row, idx)) = stack.pop() {
            if is_row {
                let r = row_deg[idx].unwrap();
                for j in 0..ncols {
                    if let Some(e) = entry_deg(idx, j)? {
                        match col_deg[j] {
                            None => {
                                col_deg[j] = Some(r + e);
                                stack.push((false, j));
                            }
                            Some(c) if c != r + e => {
                                return Err(Error::NotHomogeneous(format!(
                                    "no row degrees make column {j} homogeneous"
                                )))
                            }
                            _ => {}
                        }
                    }
                }
            } else {
                let c = col_deg[idx].unwrap();
                for i in 0..nrows {
                    if let Some(e) = entry_deg(i, idx)? {
                        match row_deg[i] {
                            None => {
                                row_deg[i] = Some(c - e);
                                group.push(i);
                                stack.push((true, i));
                            }
                            Some(r) if r != c - e => {
                                return Err(Error::NotHomogeneous(format!(
                                    "no row degrees make column {idx} homogeneous"
                                )))
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        let low = group.iter().map(|&i| row_deg[i].unwrap()).min().unwrap();
        for &i in &group {
            row_deg[i] = Some(row_deg[i].unwrap() - low);
        }
    }
    Ok(row_deg.into_iter().map(|d| d.unwrap()).collect())
}

/// A finitely generated graded module `M = coker(matrix)` over a quotient ring.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Arc<QuotientRing>,
    matrix: GradedMatrix,
}

impl ModulePresentation {
    /// Entries are reduced modulo `I`; columns that become zero are dropped.
    pub fn new(ring: Arc<QuotientRing>, matrix: GradedMatrix) -> Result<Self> {
        let columns: Vec<Vec<Polynomial>> = matrix
            .columns
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| {
                        ring.spec().ambient.check(p)?;
                        Ok(ring.reduce(p))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let matrix = GradedMatrix::from_columns(matrix.row_degrees, columns)?;
        Ok(ModulePresentation { ring, matrix })
    }

    /// From a row-major array, inferring row degrees when none are given.
    pub fn from_rows(
        ring: Arc<QuotientRing>,
        rows: Vec<Vec<Polynomial>>,
        row_degrees: Option<Vec<i32>>,
    ) -> Result<Self> {
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Shape("rows of unequal length".into()));
        }
        let row_degrees = match row_degrees {
            Some(d) if d.len() != rows.len() => {
                return Err(Error::Shape(format!(
                    "{} row degrees for {} rows",
                    d.len(),
                    rows.len()
                )))
            }
            Some(d) => d,
            None => infer_row_degrees(&rows)?,
        };
        let columns = (0..ncols)
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        let matrix = GradedMatrix::from_columns(row_degrees, columns)?;
        Self::new(ring, matrix)
    }

    /// `R/(gens)`.
    pub fn cyclic(ring: Arc<QuotientRing>, gens: &[Polynomial]) -> Result<Self> {
        let rows = vec![gens.to_vec()];
        Self::from_rows(ring, rows, Some(vec![0]))
    }

    /// The free module `⊕ R(-d)` for the given degrees.
    pub fn free(ring: Arc<QuotientRing>, degrees: Vec<i32>) -> Self {
        ModulePresentation {
            ring,
            matrix: GradedMatrix::empty(degrees),
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn matrix(&self) -> &GradedMatrix {
        &self.matrix
    }
}

/// Removes every unit entry by column operations followed by deleting the
/// pivot row and column. The cokernel is unchanged; the result has no entry
/// with a nonzero constant term.
pub fn minimalize_presentation(ring: &QuotientRing, m: &GradedMatrix) -> GradedMatrix {
    let mut row_degrees = m.row_degrees.clone();
    let mut col_degrees = m.col_degrees.clone();
    let mut columns: Vec<Vec<Polynomial>> = m
        .columns
        .iter()
        .map(|c| c.iter().map(|p| ring.reduce(p)).collect())
        .collect();
    loop {
        let pivot = columns.iter().enumerate().find_map(|(j, c)| {
            c.iter()
                .position(|p| p.constant_term().is_some())
                .map(|i| (i, j))
        });
        let Some((i, j)) = pivot else { break };
        // in a graded ring a unit entry is a nonzero constant
        let pc = columns[j][i].constant_term().unwrap().clone();
        debug_assert!(columns[j][i].is_constant());
        let pivot_col = columns[j].clone();
        for (k, col) in columns.iter_mut().enumerate() {
            if k == j || col[i].is_zero() {
                continue;
            }
            let factor = col[i].scale(&pc.inv());
            for (r, entry) in col.iter_mut().enumerate() {
                if !pivot_col[r].is_zero() {
                    *entry = ring.reduce(&entry.sub(&factor.mul(&pivot_col[r])));
                }
            }
        }
        columns.remove(j);
        col_degrees.remove(j);
        row_degrees.remove(i);
        for col in columns.iter_mut() {
            col.remove(i);
        }
    }
    let keep: Vec<bool> = columns
        .iter()
        .map(|c| c.iter().any(|p| !p.is_zero()))
        .collect();
    let columns: Vec<Vec<Polynomial>> = columns
        .into_iter()
        .zip(&keep)
        .filter_map(|(c, k)| k.then_some(c))
        .collect();
    let col_degrees: Vec<i32> = col_degrees
        .into_iter()
        .zip(&keep)
        .filter_map(|(d, k)| k.then_some(d))
        .collect();
    GradedMatrix {
        row_degrees,
        col_degrees,
        columns,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::Limits;
    use crate::ring::{FieldSpec, QuotientRingSpec};

    fn ring(vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
        let spec = QuotientRingSpec::parse(vars, FieldSpec::Rational, ideal).unwrap();
        Arc::new(QuotientRing::new(spec, Limits::default()).unwrap())
    }

    fn rows(r: &QuotientRing, rows: &[&[&str]]) -> Vec<Vec<Polynomial>> {
        rows.iter()
            .map(|row| row.iter().map(|t| r.parse(t).unwrap()).collect())
            .collect()
    }

    #[test]
    fn identity_pivot_empties_matrix() {
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let m = ModulePresentation::from_rows(r.clone(), rows(&r, &[&["1"]]), None).unwrap();
        let min = minimalize_presentation(&r, m.matrix());
        assert_eq!((min.nrows(), min.ncols()), (0, 0));
    }

    #[test]
    fn nothing_to_pivot() {
        let r = ring(&["x", "y"], &["x^2", "x*y"]);
        let m = ModulePresentation::from_rows(r.clone(), rows(&r, &[&["y"]]), None).unwrap();
        assert_eq!(&minimalize_presentation(&r, m.matrix()), m.matrix());
    }

    #[test]
    fn single_pivot() {
        let r = ring(&["x", "y"], &[]);
        let m = ModulePresentation::from_rows(
            r.clone(),
            rows(&r, &[&["x", "1"], &["y", "0"]]),
            Some(vec![1, 1]),
        );
        // rows of degree 1 with an entry `1` make column 2 degree 1 and column 1 degree 2
        let m = m.unwrap();
        let min = minimalize_presentation(&r, m.matrix());
        assert_eq!(min.rows(), rows(&r, &[&["y"]]));
        assert_eq!(min.row_degrees(), &[1]);
        assert_eq!(min.col_degrees(), &[2]);
    }

    #[test]
    fn infers_degrees_for_mixed_column() {
        let r = ring(&["u", "v", "z"], &[]);
        let d = infer_row_degrees(&rows(&r, &[&["u"], &["v"], &["z^2"]])).unwrap();
        assert_eq!(d, vec![1, 1, 0]);
        assert!(infer_row_degrees(&rows(&r, &[&["u", "v"], &["z", "u^2"]])).is_err());
    }
}
