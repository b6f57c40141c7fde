//! Reductions between approximate and decision schemes.
//!
//! Lifting a decision scheme to an approximation scheme bundles a feasibility
//! certificate, the claimed objective value (equal at all nodes), a two-sided
//! comparison pinning the objective decomposition to that claim, and the
//! inner decision scheme run at the claimed value. The reverse direction
//! turns a primal-dual scheme's dual labels into a decomposable approximation
//! for the verifiable-centralized-approximation engine: the verifier keeps
//! only dual feasibility and certifies the scaled dual objective.

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use crate::bits::{split_frames, BitReader, BitString};
use crate::certify::comparison::{check_from_chunks, prove_certs, ViewValue};
use crate::config::{self, ConfigGraph, ProblemKind};
use crate::graph::NodeId;
use crate::scheme::{
    LabelAssignment, LocalView, Scheme, SchemeError, SchemeKind, Sense,
};

use super::vca::UniverseFn;
use super::AlphaSpec;

/// alpha-ADPLS + feasibility scheme + decomposable objective -> alpha-APLS.
pub struct ObjectiveLiftedApls {
    pub name: String,
    pub problem_kind: ProblemKind,
    pub sense: Sense,
    pub alpha: AlphaSpec,
    pub universe: UniverseFn,
    /// Feasibility scheme whose labels form the first chunk.
    pub feasibility: Arc<dyn Scheme>,
    /// Decision scheme factory, instantiated at the claimed objective value.
    pub adpls_factory: Arc<dyn Fn(i64) -> Box<dyn Scheme> + Send + Sync>,
    /// Objective decomposition, evaluated on a view whose labels are the
    /// feasibility chunks.
    pub lambda_obj: ViewValue,
}

fn encode_obj(f: i64) -> Option<BitString> {
    let mut bs = BitString::new();
    bs.push_gamma(u64::try_from(f).ok()? + 1);
    Some(bs)
}

fn decode_obj(bits: &BitString) -> Option<i64> {
    let mut r = BitReader::new(bits);
    let v = r.read_gamma()? - 1;
    if !r.at_end() {
        return None;
    }
    i64::try_from(v).ok()
}

impl ObjectiveLiftedApls {
    fn feas_views<'a>(
        view: &LocalView,
        own: &[BitString],
        neighbors: &'a [Option<Vec<BitString>>],
        idx: usize,
    ) -> (LocalView, Vec<Option<BitString>>) {
        let nb: Vec<Option<BitString>> = neighbors
            .iter()
            .map(|f| f.as_ref().map(|v| v[idx].clone()))
            .collect();
        let sub = view.with_labels(Some(own[idx].clone()), nb.clone());
        (sub, nb)
    }
}

impl Scheme for ObjectiveLiftedApls {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn kind(&self) -> SchemeKind {
        SchemeKind::Apls
    }

    fn alpha(&self, cfg: &ConfigGraph) -> BigRational {
        self.alpha.value(cfg)
    }

    fn problem(&self) -> Option<(ProblemKind, Sense)> {
        Some((self.problem_kind, self.sense))
    }

    fn check_universe(&self, cfg: &ConfigGraph) -> Result<(), SchemeError> {
        (self.universe)(cfg)
    }

    fn prove(&self, cfg: &ConfigGraph) -> Result<LabelAssignment, SchemeError> {
        let g = cfg.graph();
        let feas_labels = self.feasibility.prove(cfg)?;
        let f = config::objective(self.problem_kind, cfg)
            .map_err(|e| SchemeError::ProverRefused(e.to_string()))?;
        let obj_chunk = encode_obj(f)
            .ok_or_else(|| SchemeError::ProverRefused("negative objective".into()))?;

        // evaluate the decomposition against the feasibility labels
        let mut lambdas = std::collections::BTreeMap::new();
        for v in g.node_indices() {
            let view = LocalView::build(cfg, v, &feas_labels);
            let l = (self.lambda_obj)(&view).ok_or_else(|| {
                SchemeError::ProverRefused(format!("lambda undefined at {}", g.id(v)))
            })?;
            lambdas.insert(g.id(v), l);
        }
        let total: BigRational = lambdas.values().sum();
        if total != BigRational::from_integer(f.into()) {
            return Err(SchemeError::ProverRefused(format!(
                "decomposition total {total} differs from objective {f}"
            )));
        }

        let up = prove_certs(g, &lambdas)?;
        let neg: std::collections::BTreeMap<NodeId, BigRational> =
            lambdas.iter().map(|(id, l)| (*id, -l)).collect();
        let down = prove_certs(g, &neg)?;

        let inner = (self.adpls_factory)(f);
        let inner_labels = inner.prove(cfg)?;

        let mut labels = LabelAssignment::default();
        for v in g.node_indices() {
            let id = g.id(v);
            let mut bs = BitString::new();
            bs.push_frame(feas_labels.get(id).unwrap());
            bs.push_frame(&obj_chunk);
            bs.push_frame(&up[&id].encode());
            bs.push_frame(&down[&id].encode());
            bs.push_frame(inner_labels.get(id).unwrap());
            labels.insert(id, bs);
        }
        Ok(labels)
    }

    fn verify_node(&self, view: &LocalView) -> bool {
        let own = match view.label().and_then(|l| split_frames(l, 5)) {
            Some(f) => f,
            None => return false,
        };
        let neighbors: Vec<Option<Vec<BitString>>> = (0..view.degree())
            .map(|p| view.neighbor_label(p).and_then(|l| split_frames(l, 5)))
            .collect();
        if neighbors.iter().any(|f| f.is_none()) {
            return false;
        }

        // feasibility layer
        let (feas_view, _) = Self::feas_views(view, &own, &neighbors, 0);
        if !self.feasibility.verify_node(&feas_view) {
            return false;
        }

        // objective claim, equal across every edge
        let f = match decode_obj(&own[1]) {
            Some(f) => f,
            None => return false,
        };
        for nf in &neighbors {
            if nf.as_ref().and_then(|v| decode_obj(&v[1])) != Some(f) {
                return false;
            }
        }

        // decomposition pinned to the claim from both sides
        let lambda = match (self.lambda_obj)(&feas_view) {
            Some(l) => l,
            None => return false,
        };
        let fk = BigRational::from_integer(f.into());
        let up_nb: Vec<Option<BitString>> = neighbors
            .iter()
            .map(|x| x.as_ref().map(|v| v[2].clone()))
            .collect();
        if !check_from_chunks(&own[2], &up_nb, view.my_id(), &lambda, &fk) {
            return false;
        }
        let down_nb: Vec<Option<BitString>> = neighbors
            .iter()
            .map(|x| x.as_ref().map(|v| v[3].clone()))
            .collect();
        if !check_from_chunks(&own[3], &down_nb, view.my_id(), &-lambda, &-fk) {
            return false;
        }

        // inner decision scheme at the claimed objective
        let inner = (self.adpls_factory)(f);
        let (inner_view, _) = Self::feas_views(view, &own, &neighbors, 4);
        inner.verify_node(&inner_view)
    }
}

/// Primal-dual APLS -> ADPLS: the label is the dual vector restricted to the
/// node plus a comparison over the scaled dual objective. Covers the single
/// dual-variable-per-node LPs (covering/packing on edges).
pub struct DualObjectiveAdpls {
    pub name: String,
    pub problem_kind: ProblemKind,
    pub sense: Sense,
    pub alpha: BigRational,
    pub k: i64,
    pub universe: UniverseFn,
    /// Solves the instance and emits the fitted dual, one value per node.
    #[allow(clippy::type_complexity)]
    pub gen_dual: Arc<
        dyn Fn(&ConfigGraph) -> Result<std::collections::BTreeMap<NodeId, BigRational>, SchemeError>
            + Send
            + Sync,
    >,
    pub encode_y: Arc<dyn Fn(&BigRational) -> BitString + Send + Sync>,
    pub decode_y: Arc<dyn Fn(&BitString) -> Option<BigRational> + Send + Sync>,
    /// Dual edge constraint: y_u + y_v >= 1 (packing) or <= 1 (covering).
    pub edge_geq_one: bool,
    /// b_i of the node's row, read from the local view.
    pub b_of: Arc<dyn Fn(&LocalView) -> BigRational + Send + Sync>,
    pub refit: Arc<dyn Fn(i64) -> Box<dyn Scheme> + Send + Sync>,
}

impl DualObjectiveAdpls {
    fn lambda(&self, view_b: &BigRational, y: &BigRational) -> BigRational {
        let by = view_b * y;
        match self.sense {
            Sense::Min => &self.alpha * by,
            Sense::Max => by / &self.alpha,
        }
    }

    fn comparison_value(&self, lambda: &BigRational) -> BigRational {
        match self.sense {
            Sense::Min => lambda.clone(),
            Sense::Max => -lambda,
        }
    }
}

impl Scheme for DualObjectiveAdpls {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn kind(&self) -> SchemeKind {
        if self.alpha == BigRational::from_integer(1.into()) {
            SchemeKind::Dpls
        } else {
            SchemeKind::Adpls
        }
    }

    fn alpha(&self, _cfg: &ConfigGraph) -> BigRational {
        self.alpha.clone()
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
        let g = cfg.graph();
        let duals = (self.gen_dual)(cfg)?;
        let empty = LabelAssignment::default();
        let mut lambdas = std::collections::BTreeMap::new();
        for v in g.node_indices() {
            let view = LocalView::build(cfg, v, &empty);
            let id = g.id(v);
            lambdas.insert(id, self.lambda(&(self.b_of)(&view), &duals[&id]));
        }
        let total: BigRational = lambdas.values().sum();
        let k = BigRational::from_integer(self.k.into());
        let ok = match self.sense {
            Sense::Min => total >= k,
            Sense::Max => total <= k,
        };
        if !ok {
            return Err(SchemeError::ProverRefused(format!(
                "scaled dual objective {total} cannot certify {k}"
            )));
        }
        let h: std::collections::BTreeMap<NodeId, BigRational> = lambdas
            .iter()
            .map(|(id, l)| (*id, self.comparison_value(l)))
            .collect();
        let certs = prove_certs(g, &h)?;
        let mut labels = LabelAssignment::default();
        for v in g.node_indices() {
            let id = g.id(v);
            let mut bs = BitString::new();
            bs.push_frame(&(self.encode_y)(&duals[&id]));
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
        let y_me = match (self.decode_y)(&own[0]) {
            Some(y) if y >= BigRational::zero() => y,
            _ => return false,
        };
        let neighbors: Vec<Option<Vec<BitString>>> = (0..view.degree())
            .map(|p| view.neighbor_label(p).and_then(|l| split_frames(l, 2)))
            .collect();
        // dual feasibility on my incident columns
        for nf in &neighbors {
            let y_nb = match nf.as_ref().and_then(|v| (self.decode_y)(&v[0])) {
                Some(y) => y,
                None => return false,
            };
            let sum = &y_me + &y_nb;
            let one = BigRational::from_integer(1.into());
            let ok = if self.edge_geq_one { sum >= one } else { sum <= one };
            if !ok {
                return false;
            }
        }
        let lambda = self.lambda(&(self.b_of)(view), &y_me);
        let k = BigRational::from_integer(self.k.into());
        let (h, kk) = match self.sense {
            Sense::Min => (lambda, k),
            Sense::Max => (-lambda, -k),
        };
        let comp_nb: Vec<Option<BitString>> = neighbors
            .iter()
            .map(|x| x.as_ref().map(|v| v[1].clone()))
            .collect();
        check_from_chunks(&own[1], &comp_nb, view.my_id(), &h, &kk)
    }
}
