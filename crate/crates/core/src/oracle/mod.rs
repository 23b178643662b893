//! Brute-force verifiers, enumerators and the canonical fixtures. Nothing
//! here reuses the closed formulas it is meant to check.

mod enumerate;
pub mod fixtures;
pub mod groups;
mod search;

use std::env;

use thiserror::Error;

use crate::distlaw::DistLawMap;
use crate::fincat::{FinCat, Mor};
use crate::maps::MorphismMap;
use crate::span::span_product;

pub use crate::report::OracleReport;
pub use enumerate::{
    enumerate_actions, enumerate_functors, enumerate_graph_morphisms, enumerate_prexmods,
    enumerate_xmods,
};
pub use search::{solve_d_by_search, DSearch};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const BUDGET_ENV: &str = "XMODKIT_BUDGET";

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("search budget of {limit} candidate evaluations exceeded")]
pub struct BudgetExceeded {
    pub limit: u64,
}

/// A counter of candidate evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    limit: u64,
    spent: u64,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit, spent: 0 }
    }

    /// `XMODKIT_BUDGET` if set and numeric, the default otherwise.
    pub fn from_env() -> Self {
        let limit = env::var(BUDGET_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn spent(&self) -> u64 {
        self.spent
    }

    pub fn spend(&mut self, n: u64) -> Result<(), BudgetExceeded> {
        self.spent += n;
        if self.spent > self.limit {
            Err(BudgetExceeded { limit: self.limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InverseError {
    #[error("not injective: {0:?} and {1:?} have the same image")]
    NotInjective(Vec<Mor>, Vec<Mor>),
    #[error("not surjective: {0:?} has no preimage")]
    NotSurjective(Vec<Mor>),
}

/// Inverts a map by searching preimages one codomain point at a time.
/// The collision reported is the one with the earliest second element.
pub fn brute_force_inverse(f: &MorphismMap) -> Result<MorphismMap, InverseError> {
    let (dom, cod) = (f.domain(), f.codomain());
    for j in 0..dom.len() {
        let fj = f.codomain().get(f.apply(j));
        for i in 0..j {
            if cod.get(f.apply(i)) == fj {
                return Err(InverseError::NotInjective(
                    dom.get(i).to_vec(),
                    dom.get(j).to_vec(),
                ));
            }
        }
    }
    let mut table = Vec::with_capacity(cod.len());
    for c in 0..cod.len() {
        match (0..dom.len()).find(|&i| f.apply(i) == c) {
            Some(i) => table.push(i),
            None => return Err(InverseError::NotSurjective(cod.get(c).to_vec())),
        }
    }
    Ok(MorphismMap::from_table(
        format!("{}⁻¹", f.name),
        cod.clone(),
        dom.clone(),
        table,
    ))
}

/// The category on `Y □_X B` whose product
/// `(y, b)(y', b') = (y ∘ y'', b'' ∘ b')` with `(y'', b'') = x(b, y')`
/// uses nothing but `x` and the two compositions.
pub fn generic_distlaw_multiplication(x: &DistLawMap) -> FinCat {
    let (y_cat, b_cat) = (x.fiber(), x.base());
    let prod = span_product(&y_cat.underlying_span(), &b_cat.underlying_span())
        .expect("same object set");
    let elems = &prod.provenance;
    let morphisms = elems
        .iter()
        .enumerate()
        .map(|(k, &(y, b))| {
            (
                format!("({},{})", y_cat.name(y), b_cat.name(b)),
                prod.span.right()[k],
                prod.span.left()[k],
            )
        })
        .collect();
    let identities = (0..b_cat.objects().len())
        .map(|o| {
            prod.position(y_cat.id(o), b_cat.id(o))
                .expect("identity pair")
        })
        .collect();
    FinCat::from_parts(b_cat.objects().clone(), morphisms, identities, |g, f| {
        let (y, b) = elems[g];
        let (y2, b2) = elems[f];
        let (y3, b3) = x.get(b, y2);
        prod.position(y_cat.comp(y, y3), b_cat.comp(b3, b2))
            .expect("product lands in Y □ B")
    })
    .expect("a distributive law induces a category")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::TupleSet;

    #[test]
    fn brute_force_inverse_reports_first_collision() {
        let d = TupleSet::new((0..4).map(|i| vec![i]));
        let c = TupleSet::new((0..4).map(|i| vec![i]));
        let f = MorphismMap::from_fn("f", d, c, |t| vec![[0, 1, 2, 2][t[0]]]).unwrap();
        assert_eq!(
            brute_force_inverse(&f).unwrap_err(),
            InverseError::NotInjective(vec![2], vec![3])
        );
    }

    #[test]
    fn identity_map_inverts_to_itself() {
        let d = TupleSet::new((0..3).map(|i| vec![i]));
        let f = MorphismMap::from_fn("id", d.clone(), d, |t| t.to_vec()).unwrap();
        assert_eq!(brute_force_inverse(&f).unwrap().table(), f.table());
    }

    #[test]
    fn trivial_law_gives_the_direct_product() {
        let act = fixtures::fix_b().into_prex().action().clone();
        let c = generic_distlaw_multiplication(&crate::distlaw::action_to_distlaw(&act));
        let (y, b) = (act.fiber(), act.base());
        for g in c.morphisms() {
            for f in c.morphisms() {
                let parse = |m: Mor| {
                    let n = c.name(m);
                    let (yn, bn) = n[1..n.len() - 1].split_once(',').unwrap();
                    (y.index_of(yn).unwrap(), b.index_of(bn).unwrap())
                };
                let ((y1, b1), (y2, b2)) = (parse(g), parse(f));
                assert_eq!(parse(c.comp(g, f)), (y.comp(y1, y2), b.comp(b1, b2)));
            }
        }
    }

    #[test]
    fn budget_counts() {
        let mut b = Budget::new(2);
        assert!(b.spend(2).is_ok());
        assert_eq!(b.spend(1), Err(BudgetExceeded { limit: 2 }));
    }
}
