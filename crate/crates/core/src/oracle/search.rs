use crate::equivalences::{composable_pairs, ReflexiveGraph};
use crate::fincat::Mor;
use crate::report::OracleReport;
use crate::witness::Witness;

use super::{Budget, BudgetExceeded};

/// Outcome of [`solve_d_by_search`]; at most two solutions are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DSearch {
    pub solutions: Vec<Vec<Mor>>,
    pub report: OracleReport,
}

impl DSearch {
    pub fn unique(&self) -> Option<&[Mor]> {
        match self.solutions.as_slice() {
            [d] => Some(d),
            _ => None,
        }
    }
}

struct Problem<'a> {
    rg: &'a ReflexiveGraph,
    // products[p] lists (r, p∘r) over the pairs r composable with p
    products: Vec<Vec<(usize, usize)>>,
    candidates: Vec<Vec<Mor>>,
}

impl Problem<'_> {
    /// Closes `val` under `d(p ∘ r) = d(p) ∘ d(r)`; `false` on a clash.
    fn propagate(&self, val: &mut [Option<Mor>], budget: &mut Budget) -> Result<bool, BudgetExceeded> {
        let a_cat = self.rg.total();
        let mut changed = true;
        while changed {
            changed = false;
            for (p, row) in self.products.iter().enumerate() {
                let Some(dp) = val[p] else { continue };
                for &(r, pr) in row {
                    let Some(dr) = val[r] else { continue };
                    budget.spend(1)?;
                    let v = a_cat.comp(dp, dr);
                    match val[pr] {
                        Some(old) if old != v => return Ok(false),
                        Some(_) => {}
                        None => {
                            val[pr] = Some(v);
                            changed = true;
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    fn solve(
        &self,
        val: Vec<Option<Mor>>,
        out: &mut Vec<Vec<Mor>>,
        budget: &mut Budget,
    ) -> Result<(), BudgetExceeded> {
        let Some(p) = val.iter().position(Option::is_none) else {
            out.push(val.into_iter().map(|v| v.expect("complete")).collect());
            return Ok(());
        };
        for &a in &self.candidates[p] {
            if out.len() >= 2 {
                break;
            }
            budget.spend(1)?;
            let mut next = val.clone();
            next[p] = Some(a);
            if self.propagate(&mut next, budget)? {
                self.solve(next, out, budget)?;
            }
        }
        Ok(())
    }
}

/// Searches all maps `d: A □_B A -> A` that preserve endpoints, satisfy
/// `d(a, i s(a)) = a = d(i t(a), a)` and are functors for the
/// componentwise composition of pairs. Unit-law values seed a constraint
/// propagation; whatever stays open is branched on.
pub fn solve_d_by_search(rg: &ReflexiveGraph, budget: &mut Budget) -> Result<DSearch, BudgetExceeded> {
    let a_cat = rg.total();
    let pairs = composable_pairs(rg);
    let n = pairs.len();
    let mut products = vec![Vec::new(); n];
    for (p, top) in pairs.iter().enumerate() {
        for (r, bottom) in pairs.iter().enumerate() {
            if a_cat.src(top[0]) != a_cat.tgt(bottom[0]) {
                continue;
            }
            let prod = [a_cat.comp(top[0], bottom[0]), a_cat.comp(top[1], bottom[1])];
            let pr = pairs.position(&prod).expect("A □_B A is closed under composition");
            products[p].push((r, pr));
        }
    }
    let candidates = pairs
        .iter()
        .map(|t| {
            a_cat
                .morphisms()
                .filter(|&a| a_cat.src(a) == a_cat.src(t[1]) && a_cat.tgt(a) == a_cat.tgt(t[0]))
                .collect()
        })
        .collect();
    let problem = Problem {
        rg,
        products,
        candidates,
    };
    let mut val = vec![None; n];
    let mut consistent = true;
    for a in a_cat.morphisms() {
        for seed in [[a, rg.i(rg.s(a))], [rg.i(rg.t(a)), a]] {
            let p = pairs.position(&seed).expect("unit pairs are composable");
            match val[p] {
                Some(old) if old != a => consistent = false,
                _ => val[p] = Some(a),
            }
        }
    }
    let mut solutions = Vec::new();
    if consistent && problem.propagate(&mut val, budget)? {
        problem.solve(val, &mut solutions, budget)?;
    }
    let report = match solutions.as_slice() {
        [d1, d2, ..] => {
            let p = (0..n).find(|&p| d1[p] != d2[p]).expect("distinct solutions");
            OracleReport::fail(
                n,
                Witness::new(pairs.get(p).to_vec(), a_cat.witness(pairs.get(p)).label),
                "at least two compositions",
            )
        }
        [_] => OracleReport::pass(n, "exactly one composition"),
        [] => OracleReport::pass(n, "no composition"),
    };
    Ok(DSearch { solutions, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalences::{build_composition_d, groupoid_d_closed_form, prex_to_reflgraph};
    use crate::fincat::groupoid_inverses;
    use crate::oracle::fixtures;

    fn graph(pxm: &crate::equivalences::PreCrossedModule) -> ReflexiveGraph {
        prex_to_reflgraph(pxm).unwrap()
    }

    #[test]
    fn unique_on_crossed_modules() {
        for xm in [fixtures::fix_a(), fixtures::fix_b(), fixtures::fix_c()] {
            let rg = graph(xm.prex());
            let s = solve_d_by_search(&rg, &mut Budget::default()).unwrap();
            assert!(s.report.ok);
            let d = s.unique().expect("exactly one solution");
            assert_eq!(d, build_composition_d(&rg).unwrap().table());
            let inv = groupoid_inverses(rg.base()).unwrap();
            assert_eq!(d, groupoid_d_closed_form(&rg, &inv));
        }
    }

    #[test]
    fn none_without_peiffer() {
        let s = solve_d_by_search(&graph(&fixtures::fix_e()), &mut Budget::default()).unwrap();
        assert!(s.solutions.is_empty());
        assert!(s.report.ok);
    }

    #[test]
    fn budget_is_enforced() {
        let rg = graph(fixtures::fix_a().prex());
        assert!(solve_d_by_search(&rg, &mut Budget::new(5)).is_err());
    }
}
