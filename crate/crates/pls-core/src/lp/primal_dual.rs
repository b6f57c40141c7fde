//! The primal-dual scheme engine: labels carry the dual variables mapped to
//! each node, and every node runs the same four checks on its local slice of
//! the LP — primal feasibility of its rows, dual feasibility of its incident
//! columns, and both relaxed complementary slackness conditions.

use num_rational::BigRational;
use num_traits::Zero;

use crate::bits::BitString;
use crate::config::{ConfigGraph, ProblemKind};
use crate::graph::NodeId;
use crate::scheme::{
    verify, LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind, Sense,
};

use super::standard_form::StandardFormLp;

/// One primal row of the local slice, with its dual value.
pub struct LocalRow {
    pub b: BigRational,
    /// (coefficient, primal value) over the row's support.
    pub terms: Vec<(BigRational, BigRational)>,
    pub y: BigRational,
}

/// One incident column of the local slice, with its primal value.
pub struct LocalCol {
    pub c: BigRational,
    pub x: BigRational,
    /// (coefficient, dual value) over the column's support.
    pub terms: Vec<(BigRational, BigRational)>,
}

pub struct LocalLp {
    pub sense: Sense,
    pub rows: Vec<LocalRow>,
    pub cols: Vec<LocalCol>,
}

/// The four verifier checks, on one node's slice.
pub fn check_local(lp: &LocalLp, beta: &BigRational, gamma: &BigRational) -> bool {
    let zero = BigRational::zero();
    for col in &lp.cols {
        if col.x < zero {
            return false;
        }
        let aty: BigRational = col.terms.iter().map(|(a, y)| a * y).sum();
        let feasible = match lp.sense {
            Sense::Min => aty <= col.c,
            Sense::Max => aty >= col.c,
        };
        if !feasible {
            return false;
        }
        if col.x > zero {
            let slack = match lp.sense {
                Sense::Min => &col.c / beta <= aty && aty <= col.c,
                Sense::Max => col.c <= aty && aty <= beta * &col.c,
            };
            if !slack {
                return false;
            }
        }
    }
    for row in &lp.rows {
        if row.y < zero {
            return false;
        }
        let ax: BigRational = row.terms.iter().map(|(a, x)| a * x).sum();
        let feasible = match lp.sense {
            Sense::Min => ax >= row.b,
            Sense::Max => ax <= row.b,
        };
        if !feasible {
            return false;
        }
        if row.y > zero {
            let slack = match lp.sense {
                Sense::Min => row.b <= ax && ax <= gamma * &row.b,
                Sense::Max => &row.b / gamma <= ax && ax <= row.b,
            };
            if !slack {
                return false;
            }
        }
    }
    true
}

/// A locally verifiable OptDGP wired into the engine.
pub trait PdProblem: Send + Sync {
    fn name(&self) -> String;

    fn scheme_kind(&self) -> SchemeKind;

    fn problem(&self) -> (ProblemKind, Sense);

    fn beta(&self) -> BigRational;

    fn gamma(&self) -> BigRational;

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError>;

    /// Whole LP plus the primal vector from the output, for global checks.
    fn build_lp(&self, cfg: &ConfigGraph)
        -> Result<(StandardFormLp, Vec<BigRational>), SchemeError>;

    /// Dual vector (indexed like the LP rows) for a yes-instance.
    fn gen_duals(&self, cfg: &ConfigGraph) -> Result<Vec<BigRational>, SchemeError>;

    /// Label codec: the duals of the rows mapped to `v`, in row order.
    fn encode_label(&self, cfg: &ConfigGraph, v: usize, ys: &[BigRational]) -> BitString;

    /// Local slice extraction; `None` rejects (undecodable label or output).
    fn local_lp(&self, view: &LocalView) -> Option<LocalLp>;
}

/// Wraps a [`PdProblem`] as a scheme with alpha = beta * gamma.
pub struct PdScheme<P: PdProblem> {
    pub problem: P,
}

impl<P: PdProblem> PdScheme<P> {
    pub fn new(problem: P) -> Self {
        Self { problem }
    }
}

impl<P: PdProblem> Scheme for PdScheme<P> {
    fn name(&self) -> String {
        self.problem.name()
    }

    fn kind(&self) -> SchemeKind {
        self.problem.scheme_kind()
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        self.problem.beta() * self.problem.gamma()
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some(self.problem.problem())
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        self.problem.check_universe(cfg)
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let (lp, _x) = self.problem.build_lp(cfg)?;
        let y = self.problem.gen_duals(cfg)?;
        let mut labels = LabelAssignment::default();
        let g = cfg.graph();
        for v in g.node_indices() {
            let ys: Vec<BigRational> = lp
                .rows
                .iter()
                .zip(&y)
                .filter(|(row, _)| row.node == v)
                .map(|(_, yi)| yi.clone())
                .collect();
            labels.insert(g.id(v), self.problem.encode_label(cfg, v, &ys));
        }
        // a fitted problem must verify its own honest labels; failing here
        // means the dual generator broke fittedness
        if !verify(self, cfg, &labels).accept() {
            return Err(SchemeError::ProverRefused(
                "generated dual does not satisfy the fitted slackness conditions".into(),
            ));
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        match self.problem.local_lp(view) {
            Some(lp) => check_local(&lp, &self.problem.beta(), &self.problem.gamma()),
            None => false,
        }
    }
}

/// Decodes a fixed-width dual numerator label: exactly `width` bits holding a
/// value at most `max_num`, interpreted over `denom`.
pub fn decode_numerator(bits: &BitString, width: usize, max_num: u64, denom: u64) -> Option<BigRational> {
    if bits.len() != width {
        return None;
    }
    let mut r = crate::bits::BitReader::new(bits);
    let num = r.read_uint(width)?;
    if num > max_num {
        return None;
    }
    Some(BigRational::new(num.into(), denom.into()))
}

/// The matching encoder; panics if the value is not representable, which
/// honest provers never hit.
pub fn encode_numerator(y: &BigRational, width: usize, denom: u64) -> BitString {
    let scaled = y * BigRational::from_integer(denom.into());
    assert!(scaled.is_integer(), "dual {y} not a multiple of 1/{denom}");
    let num = num_traits::ToPrimitive::to_u64(&scaled.to_integer()).expect("small numerator");
    let mut bs = BitString::new();
    bs.push_uint(num, width);
    bs
}

pub type NodeDualMap = std::collections::BTreeMap<NodeId, BigRational>;
