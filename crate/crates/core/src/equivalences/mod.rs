//! The equivalence layers over spans:
//!
//! * split epimorphisms and actions (distributive laws), through the
//!   kernel object and the comparison map `q(k, b) = k ∘ i(b)`;
//! * reflexive graphs and pre-crossed modules, through `κ = t ∘ p_A` and
//!   `t(y, b) = κ(y) ∘ b`;
//! * internal categories and crossed modules, through the iterated maps
//!   `q_n`, `h_n`, `b_n` and the composition `d`.
//!
//! Every comparison map is tabulated as a [`MorphismMap`] and its
//! bijectivity is decided exhaustively.

mod graph;
mod iterated;
mod kernel;
mod relcat;

use thiserror::Error;

use crate::distlaw::{ActionError, DistLawError, SplitEpiError};
use crate::fincat::{FinCat, FunctorError, Mor};
use crate::maps::{Bijectivity, MorphismMap};
use crate::witness::Witness;

pub use graph::{
    check_kt_correspondence, check_peiffer, check_precrossed, prex_round_trip,
    prex_to_reflgraph, reflgraph_round_trip, reflgraph_to_prex, CrossedModule, PreCrossedModule,
    ReflexiveGraph,
};
pub use iterated::{
    b_n, build_iterated, check_b2_unit_identities, check_bn, check_hn, check_qn, graph_power,
    h_n, q_n, IteratedKind, Structure,
};
pub use kernel::{
    action_round_trip, build_q, groupoid_q_inverse, kernel_carrier, kernel_object,
    natural_iso_check, q_from_tables, splitepi_distlaw, splitepi_round_trip,
    splitepi_to_distlaw, validate_split_epi, Instance, KernelObject,
};
pub use relcat::{
    build_composition_d, check_d_existence, check_graph_morphism_is_functor,
    check_internal_cat_laws, composable_pairs, groupoid_d_closed_form, relcat_round_trip,
    relcat_to_xmod, xmod_round_trip, xmod_to_relcat, GraphMorphism, InternalCat,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EquivError {
    #[error("q is not invertible: {0}")]
    QNotInvertible(Witness),
    #[error("q₂ is not invertible: {0}")]
    Q2NotInvertible(Witness),
    #[error("no composition exists; the existence square fails at {0}")]
    NoComposition(Witness),
    #[error("pre-crossed condition κ(b▷y)∘b = b∘κ(y) fails at {0}")]
    PreCrossedViolated(Witness),
    #[error("Peiffer identity (κ(y)▷y')∘y = y∘y' fails at {0}")]
    PeifferViolated(Witness),
    #[error("iterated maps are available for n = 1, 2, 3 only (got {0})")]
    UnsupportedN(usize),
    #[error("{map} needs {needs}")]
    StructureMismatch { map: &'static str, needs: &'static str },
    #[error("t is not a functor: {0}")]
    Target(FunctorError),
    #[error("t∘i is not the identity at {0}")]
    TargetNotRetraction(Witness),
    #[error("κ is not a functor: {0}")]
    Kappa(FunctorError),
    #[error("composition violates the {law} law at {witness}")]
    InternalCatLaw { law: String, witness: Witness },
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    DistLaw(#[from] DistLawError),
    #[error(transparent)]
    SplitEpi(#[from] SplitEpiError),
}

impl EquivError {
    pub fn witness(&self) -> Option<&Witness> {
        use EquivError::*;
        match self {
            QNotInvertible(w) | Q2NotInvertible(w) | NoComposition(w) | PreCrossedViolated(w)
            | PeifferViolated(w) | TargetNotRetraction(w) => Some(w),
            InternalCatLaw { witness, .. } => Some(witness),
            Target(e) | Kappa(e) => e.witness(),
            Action(e) => e.witness(),
            DistLaw(e) => e.witness(),
            SplitEpi(e) => e.witness(),
            UnsupportedN(_) | StructureMismatch { .. } => None,
        }
    }
}

/// `(n1, n2, ..)` with one category per coordinate; the last category is
/// reused for any extra coordinates.
pub(crate) fn render(t: &[Mor], cats: &[&FinCat]) -> String {
    let parts: Vec<&str> = t
        .iter()
        .enumerate()
        .map(|(k, &m)| cats[k.min(cats.len() - 1)].name(m))
        .collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn tuple_witness(t: &[Mor], cats: &[&FinCat]) -> Witness {
    Witness::new(t.to_vec(), render(t, cats))
}

/// The failing point of a non-bijective map: the two colliding domain
/// tuples, or a codomain tuple outside the image.
pub(crate) fn bijectivity_witness(
    map: &MorphismMap,
    dom: &[&FinCat],
    cod: &[&FinCat],
) -> Option<Witness> {
    match map.bijectivity() {
        Bijectivity::Bijective => None,
        Bijectivity::NotInjective(i, j) => {
            let (s, t) = (map.domain().get(i), map.domain().get(j));
            let mut ids = s.to_vec();
            ids.extend_from_slice(t);
            Some(Witness::new(
                ids,
                format!("({}, {})", render(s, dom), render(t, dom)),
            ))
        }
        Bijectivity::NotSurjective(c) => Some(tuple_witness(map.codomain().get(c), cod)),
    }
}
