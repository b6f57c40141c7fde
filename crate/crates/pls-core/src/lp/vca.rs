//! The verifiable-centralized-approximation engine: a decision scheme whose
//! labels bundle a certified approximation with a comparison certificate over
//! its decomposition values.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;

use crate::bits::{split_frames, BitString};
use crate::certify::comparison::{check_from_chunks, prove_certs};
use crate::config::{ConfigGraph, ProblemKind};
use crate::graph::NodeId;
use crate::scheme::{
    LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind, Sense,
};

use super::AlphaSpec;

pub type UniverseFn = Arc<dyn Fn(&ConfigGraph) -> Result<(), SchemeError> + Send + Sync>;

pub fn any_universe() -> UniverseFn {
    Arc::new(|_| Ok(()))
}

/// The approximation task: the prover emits a per-node chunk encoding the
/// approximation output and a proof it came from the intended algorithm; the
/// verifier re-derives the node's decomposition value from the chunks.
pub trait ApproxTask: Send + Sync {
    /// Per-node approximation chunks and decomposition values.
    #[allow(clippy::type_complexity)]
    fn prove(
        &self,
        cfg: &ConfigGraph,
    ) -> Result<(BTreeMap<NodeId, BitString>, BTreeMap<NodeId, BigRational>), SchemeError>;

    /// Local check of the approximation structure; returns this node's
    /// decomposition value on success.
    fn verify(
        &self,
        view: &LocalView,
        own: &BitString,
        neighbors: &[Option<BitString>],
    ) -> Option<BigRational>;
}

pub struct VcaScheme {
    pub name: String,
    pub scheme_kind: SchemeKind,
    pub alpha: AlphaSpec,
    pub sense: Sense,
    pub k: i64,
    pub problem_kind: ProblemKind,
    pub universe: UniverseFn,
    pub task: Arc<dyn ApproxTask>,
    /// Rebuilds the scheme at another threshold (for reductions and fuzzing).
    pub refit: Arc<dyn Fn(i64) -> Box<dyn Scheme> + Send + Sync>,
}

impl VcaScheme {
    fn comparison_value(&self, lambda: &BigRational) -> BigRational {
        match self.sense {
            Sense::Min => lambda.clone(),
            Sense::Max => -lambda,
        }
    }

    fn comparison_threshold(&self) -> BigRational {
        let k = BigRational::from_integer(self.k.into());
        match self.sense {
            Sense::Min => k,
            Sense::Max => -k,
        }
    }
}

impl Scheme for VcaScheme {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn kind(&self) -> SchemeKind {
        self.scheme_kind
    }

    fn alpha(&self, cfg: &ConfigGraph) -> BigRational {
        self.alpha.value(cfg)
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((self.problem_kind, self.sense))
    }

    fn threshold(&self) -> Option<i64> {
        Some(self.k)
    }

    fn with_threshold(&self, k: i64) -> Option<Box<dyn Scheme>> {
        Some((self.refit)(k))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        (self.universe)(cfg)
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let (chunks, lambdas) = self.task.prove(cfg)?;
        let total: BigRational = lambdas.values().sum();
        let k = BigRational::from_integer(self.k.into());
        let certifiable = match self.sense {
            Sense::Min => total >= k,
            Sense::Max => total <= k,
        };
        if !certifiable {
            return Err(SchemeError::ProverRefused(format!(
                "decomposition total {total} cannot certify threshold {k}"
            )));
        }
        let h: BTreeMap<NodeId, BigRational> = lambdas
            .iter()
            .map(|(id, l)| (*id, self.comparison_value(l)))
            .collect();
        let certs = prove_certs(cfg.graph(), &h)?;
        let g = cfg.graph();
        let mut labels = LabelAssignment::default();
        for v in g.node_indices() {
            let id = g.id(v);
            let mut bs = BitString::new();
            bs.push_frame(&chunks[&id]);
            bs.push_frame(&certs[&id].encode());
            labels.insert(id, bs);
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let own = match view.label().and_then(|l| split_frames(l, 2)) {
            Some(f) => f,
            None => return false,
        };
        let neighbor_frames: Vec<Option<Vec<BitString>>> = (0..view.degree())
            .map(|p| view.neighbor_label(p).and_then(|l| split_frames(l, 2)))
            .collect();
        let approx_neighbors: Vec<Option<BitString>> = neighbor_frames
            .iter()
            .map(|f| f.as_ref().map(|v| v[0].clone()))
            .collect();
        let lambda = match self.task.verify(view, &own[0], &approx_neighbors) {
            Some(l) => l,
            None => return false,
        };
        let comp_neighbors: Vec<Option<BitString>> = neighbor_frames
            .iter()
            .map(|f| f.as_ref().map(|v| v[1].clone()))
            .collect();
        check_from_chunks(
            &own[1],
            &comp_neighbors,
            view.my_id(),
            &self.comparison_value(&lambda),
            &self.comparison_threshold(),
        )
    }
}
