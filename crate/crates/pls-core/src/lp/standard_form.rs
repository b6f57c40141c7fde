//! Standard-form LPs with node-mapped rows and edge-mapped columns, exact
//! rational feasibility checks, and the relaxed complementary slackness
//! conditions.

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::scheme::Sense;

/// Column owner: a graph edge, or the artificial return edge of a flow LP,
/// readable at the source and sink from their own incident flows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColRef {
    Edge(usize),
    TsArtificial,
}

#[derive(Debug, Clone)]
pub struct LpRow {
    /// Node this row is mapped to.
    pub node: usize,
    pub b: BigRational,
    /// Sparse coefficients: (column index, a_ij).
    pub entries: Vec<(usize, BigRational)>,
}

#[derive(Debug, Clone)]
pub struct LpCol {
    pub loc: ColRef,
    pub c: BigRational,
}

/// min c'x s.t. Ax >= b, x >= 0 — or max c'x s.t. Ax <= b, x >= 0.
#[derive(Debug, Clone)]
pub struct StandardFormLp {
    pub sense: Sense,
    pub rows: Vec<LpRow>,
    pub cols: Vec<LpCol>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LpError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
}

impl StandardFormLp {
    fn row_value(&self, row: &LpRow, x: &[BigRational]) -> BigRational {
        row.entries.iter().map(|(j, a)| a * &x[*j]).sum()
    }

    fn col_value(&self, j: usize, y: &[BigRational]) -> BigRational {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row.entries
                    .iter()
                    .filter(move |(jj, _)| *jj == j)
                    .map(move |(_, a)| a * &y[i])
            })
            .sum()
    }

    pub fn primal_objective(&self, x: &[BigRational]) -> BigRational {
        self.cols.iter().zip(x).map(|(c, xj)| &c.c * xj).sum()
    }

    pub fn dual_objective(&self, y: &[BigRational]) -> BigRational {
        self.rows.iter().zip(y).map(|(r, yi)| &r.b * yi).sum()
    }

    pub fn check_primal_feasible(&self, x: &[BigRational]) -> Result<bool, LpError> {
        if x.len() != self.cols.len() {
            return Err(LpError::Dimension { expected: self.cols.len(), got: x.len() });
        }
        if x.iter().any(|v| v < &BigRational::zero()) {
            return Ok(false);
        }
        Ok(self.rows.iter().all(|row| {
            let ax = self.row_value(row, x);
            match self.sense {
                Sense::Min => ax >= row.b,
                Sense::Max => ax <= row.b,
            }
        }))
    }

    pub fn check_dual_feasible(&self, y: &[BigRational]) -> Result<bool, LpError> {
        if y.len() != self.rows.len() {
            return Err(LpError::Dimension { expected: self.rows.len(), got: y.len() });
        }
        if y.iter().any(|v| v < &BigRational::zero()) {
            return Ok(false);
        }
        Ok((0..self.cols.len()).all(|j| {
            let aty = self.col_value(j, y);
            match self.sense {
                Sense::Min => aty <= self.cols[j].c,
                Sense::Max => aty >= self.cols[j].c,
            }
        }))
    }

    /// Relaxed complementary slackness with parameters beta (primal side) and
    /// gamma (dual side); callers check feasibility separately.
    pub fn check_relaxed_slackness(
        &self,
        x: &[BigRational],
        y: &[BigRational],
        beta: &BigRational,
        gamma: &BigRational,
    ) -> Result<bool, LpError> {
        if x.len() != self.cols.len() {
            return Err(LpError::Dimension { expected: self.cols.len(), got: x.len() });
        }
        if y.len() != self.rows.len() {
            return Err(LpError::Dimension { expected: self.rows.len(), got: y.len() });
        }
        for (j, col) in self.cols.iter().enumerate() {
            if x[j] > BigRational::zero() {
                let aty = self.col_value(j, y);
                let ok = match self.sense {
                    Sense::Min => &col.c / beta <= aty && aty <= col.c,
                    Sense::Max => col.c <= aty && aty <= beta * &col.c,
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        for (i, row) in self.rows.iter().enumerate() {
            if y[i] > BigRational::zero() {
                let ax = self.row_value(row, x);
                let ok = match self.sense {
                    Sense::Min => row.b <= ax && ax <= gamma * &row.b,
                    Sense::Max => &row.b / gamma <= ax && ax <= row.b,
                };
                if !ok {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Local verifiability: nonzero coefficients only where the column's edge is
/// incident on the row's node. Used as a structural self-check in tests.
pub fn locally_verifiable(lp: &StandardFormLp, g: &crate::graph::Graph) -> bool {
    lp.rows.iter().all(|row| {
        row.entries.iter().all(|(j, a)| {
            a.is_zero()
                || match lp.cols[*j].loc {
                    ColRef::Edge(e) => g.edge(e).u == row.node || g.edge(e).v == row.node,
                    ColRef::TsArtificial => {
                        g.source() == Some(row.node) || g.sink() == Some(row.node)
                    }
                }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn r(v: i64) -> BigRational {
        BigRational::from_i64(v).unwrap()
    }

    /// Edge cover LP on a triangle: rows are node coverage, columns edges.
    fn triangle_cover_lp() -> StandardFormLp {
        // edges: 0=(0,1), 1=(1,2), 2=(0,2)
        let incident = [vec![0, 2], vec![0, 1], vec![1, 2]];
        StandardFormLp {
            sense: Sense::Min,
            rows: incident
                .iter()
                .enumerate()
                .map(|(v, inc)| LpRow {
                    node: v,
                    b: r(1),
                    entries: inc.iter().map(|&j| (j, r(1))).collect(),
                })
                .collect(),
            cols: (0..3).map(|e| LpCol { loc: ColRef::Edge(e), c: r(1) }).collect(),
        }
    }

    #[test]
    fn zero_vector_infeasible_for_cover() {
        let lp = triangle_cover_lp();
        assert_eq!(lp.check_primal_feasible(&[r(0), r(0), r(0)]), Ok(false));
        assert_eq!(lp.check_primal_feasible(&[r(1), r(1), r(0)]), Ok(true));
    }

    #[test]
    fn all_ones_dual_infeasible() {
        let lp = triangle_cover_lp();
        // y_u + y_v <= 1 fails with all ones
        assert_eq!(lp.check_dual_feasible(&[r(1), r(1), r(1)]), Ok(false));
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(
            lp.check_dual_feasible(&[half.clone(), half.clone(), half]),
            Ok(true)
        );
    }

    #[test]
    fn strong_duality_pair_satisfies_exact_slackness() {
        // two-node edge cover: x = 1 on the only edge, y = (1, 0)
        let lp = StandardFormLp {
            sense: Sense::Min,
            rows: vec![
                LpRow { node: 0, b: r(1), entries: vec![(0, r(1))] },
                LpRow { node: 1, b: r(1), entries: vec![(0, r(1))] },
            ],
            cols: vec![LpCol { loc: ColRef::Edge(0), c: r(1) }],
        };
        let x = [r(1)];
        let y = [r(1), r(0)];
        assert_eq!(lp.check_primal_feasible(&x), Ok(true));
        assert_eq!(lp.check_dual_feasible(&y), Ok(true));
        assert_eq!(lp.check_relaxed_slackness(&x, &y, &r(1), &r(1)), Ok(true));
        assert_eq!(lp.primal_objective(&x), lp.dual_objective(&y));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let lp = triangle_cover_lp();
        assert!(lp.check_primal_feasible(&[r(1)]).is_err());
        assert!(lp.check_dual_feasible(&[r(1)]).is_err());
    }
}
