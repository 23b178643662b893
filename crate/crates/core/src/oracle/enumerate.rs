use crate::distlaw::ActionSystem;
use crate::equivalences::{
    check_peiffer, check_precrossed, CrossedModule, GraphMorphism, PreCrossedModule,
    ReflexiveGraph,
};
use crate::fincat::{FinCat, Functor, Mor};

use super::{Budget, BudgetExceeded};

/// All assignments `pos ↦ cands[pos][_]` respecting every triple
/// `(g, h, gh)`: `img(gh) = comp(img(g), img(h))`. Results come out in
/// lexicographic order of the image vectors.
fn search_homs(
    cands: &[Vec<Mor>],
    triples: &[(usize, usize, usize)],
    comp: &dyn Fn(Mor, Mor) -> Mor,
    budget: &mut Budget,
) -> Result<Vec<Vec<Mor>>, BudgetExceeded> {
    let n = cands.len();
    let mut at: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n];
    for &t in triples {
        at[t.0.max(t.1).max(t.2)].push(t);
    }
    let mut out = Vec::new();
    let mut img = vec![0; n];
    fn go(
        pos: usize,
        img: &mut Vec<Mor>,
        cands: &[Vec<Mor>],
        at: &[Vec<(usize, usize, usize)>],
        comp: &dyn Fn(Mor, Mor) -> Mor,
        budget: &mut Budget,
        out: &mut Vec<Vec<Mor>>,
    ) -> Result<(), BudgetExceeded> {
        if pos == cands.len() {
            out.push(img.clone());
            return Ok(());
        }
        for &c in &cands[pos] {
            budget.spend(1)?;
            img[pos] = c;
            if at[pos].iter().all(|&(g, h, gh)| img[gh] == comp(img[g], img[h])) {
                go(pos + 1, img, cands, at, comp, budget, out)?;
            }
        }
        Ok(())
    }
    go(0, &mut img, cands, &at, comp, budget, &mut out)?;
    Ok(out)
}

/// Every identity-on-objects functor `dom -> cod`, lexicographic in the
/// morphism table.
pub fn enumerate_functors(
    dom: &FinCat,
    cod: &FinCat,
    budget: &mut Budget,
) -> Result<Vec<Functor>, BudgetExceeded> {
    if dom.objects() != cod.objects() {
        return Ok(Vec::new());
    }
    let cands: Vec<Vec<Mor>> = dom
        .morphisms()
        .map(|f| {
            if dom.is_identity(f) {
                vec![cod.id(dom.src(f))]
            } else {
                cod.hom(dom.src(f), dom.tgt(f))
            }
        })
        .collect();
    let mut triples = Vec::new();
    for g in dom.morphisms() {
        for f in dom.morphisms() {
            if let Some(gf) = dom.compose(g, f) {
                triples.push((g, f, gf));
            }
        }
    }
    let maps = search_homs(&cands, &triples, &|g, f| cod.comp(g, f), budget)?;
    Ok(maps
        .into_iter()
        .map(|m| Functor::new(m, dom, cod).expect("search respects the functor laws"))
        .collect())
}

/// Monoid homomorphisms between the local monoids of a bundle at `x` and
/// at `z`, as image vectors along the morphisms at `x`.
fn local_homs(
    fiber: &FinCat,
    local_x: &[Mor],
    local_z: &[Mor],
    budget: &mut Budget,
) -> Result<Vec<Vec<Mor>>, BudgetExceeded> {
    let pos = |y: Mor| local_x.iter().position(|&v| v == y).expect("local");
    let cands: Vec<Vec<Mor>> = local_x
        .iter()
        .map(|&y| {
            if fiber.is_identity(y) {
                vec![local_z.iter().copied().find(|&v| fiber.is_identity(v)).expect("unit")]
            } else {
                local_z.to_vec()
            }
        })
        .collect();
    let mut triples = Vec::new();
    for &g in local_x {
        for &f in local_x {
            triples.push((pos(g), pos(f), pos(fiber.comp(g, f))));
        }
    }
    search_homs(&cands, &triples, &|g, f| fiber.comp(g, f), budget)
}

/// Every action of `base` on the bundle `fiber`, lexicographic in the
/// table listed along composable `(b, y)`. Axiom (i) and (ii) are built
/// into the candidates, (iii) is checked during the search.
pub fn enumerate_actions(
    base: &FinCat,
    fiber: &FinCat,
    budget: &mut Budget,
) -> Result<Vec<ActionSystem>, BudgetExceeded> {
    if base.objects() != fiber.objects() || !fiber.is_bundle() {
        return Ok(Vec::new());
    }
    let by_obj = fiber.by_target();
    let n_obj = by_obj.len();
    let mut homs: Vec<Vec<Vec<Mor>>> = Vec::with_capacity(n_obj * n_obj);
    for x in 0..n_obj {
        for z in 0..n_obj {
            homs.push(local_homs(fiber, &by_obj[x], &by_obj[z], budget)?);
        }
    }
    let mut local_pos = vec![0; fiber.len()];
    for local in &by_obj {
        for (i, &y) in local.iter().enumerate() {
            local_pos[y] = i;
        }
    }
    // each actor picks a local homomorphism; (iii) links three actors
    let cands: Vec<Vec<usize>> = base
        .morphisms()
        .map(|b| {
            let hs = &homs[base.src(b) * n_obj + base.tgt(b)];
            if base.is_identity(b) {
                let local = &by_obj[base.src(b)];
                vec![hs.iter().position(|h| h == local).expect("identity hom")]
            } else {
                (0..hs.len()).collect()
            }
        })
        .collect();
    let hom_of = |b: Mor, choice: usize| &homs[base.src(b) * n_obj + base.tgt(b)][choice];
    let act = |b: Mor, choice: usize, y: Mor| hom_of(b, choice)[local_pos[y]];
    let mut at: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); base.len()];
    for outer in base.morphisms() {
        for inner in base.morphisms() {
            if let Some(c) = base.compose(outer, inner) {
                at[outer.max(inner).max(c)].push((outer, inner, c));
            }
        }
    }
    let mut choice = vec![0; base.len()];
    let mut found = Vec::new();
    let mut stack: Vec<usize> = vec![0];
    // iterative depth-first search; stack[k] is the next candidate for actor k
    while let Some(&next) = stack.last() {
        let b = stack.len() - 1;
        if b == base.len() {
            found.push(choice.clone());
            stack.pop();
            continue;
        }
        if next >= cands[b].len() {
            stack.pop();
            continue;
        }
        *stack.last_mut().expect("non-empty") += 1;
        budget.spend(1)?;
        choice[b] = cands[b][next];
        let ok = at[b].iter().all(|&(outer, inner, c)| {
            by_obj[base.src(inner)].iter().all(|&y| {
                act(c, choice[c], y) == act(outer, choice[outer], act(inner, choice[inner], y))
            })
        });
        if ok {
            stack.push(0);
        }
    }
    let ny = fiber.len();
    Ok(found
        .into_iter()
        .map(|ch| {
            let mut table = vec![None; base.len() * ny];
            for b in base.morphisms() {
                for &y in &by_obj[base.src(b)] {
                    table[b * ny + y] = Some(act(b, ch[b], y));
                }
            }
            ActionSystem::new(base.clone(), fiber.clone(), table)
                .expect("search respects the action axioms")
        })
        .collect())
}

/// All `(▷, κ)` with `κ(b ▷ y) ∘ b = b ∘ κ(y)`; actions vary slowest.
pub fn enumerate_prexmods(
    base: &FinCat,
    fiber: &FinCat,
    budget: &mut Budget,
) -> Result<Vec<PreCrossedModule>, BudgetExceeded> {
    let actions = enumerate_actions(base, fiber, budget)?;
    let kappas = enumerate_functors(fiber, base, budget)?;
    let mut out = Vec::new();
    for act in &actions {
        for kappa in &kappas {
            budget.spend(1)?;
            if check_precrossed(act, kappa).ok {
                out.push(
                    PreCrossedModule::new(act.clone(), kappa.table().to_vec())
                        .expect("checked"),
                );
            }
        }
    }
    Ok(out)
}

/// The pre-crossed modules that also satisfy Peiffer.
pub fn enumerate_xmods(
    base: &FinCat,
    fiber: &FinCat,
    budget: &mut Budget,
) -> Result<Vec<CrossedModule>, BudgetExceeded> {
    let mut out = Vec::new();
    for pxm in enumerate_prexmods(base, fiber, budget)? {
        budget.spend(1)?;
        if check_peiffer(&pxm).ok {
            out.push(CrossedModule::new(pxm).expect("checked"));
        }
    }
    Ok(out)
}

/// Pairs of functors `(β, α)` commuting with `i`, `s` and `t`.
pub fn enumerate_graph_morphisms(
    from: &ReflexiveGraph,
    to: &ReflexiveGraph,
    budget: &mut Budget,
) -> Result<Vec<GraphMorphism>, BudgetExceeded> {
    let betas = enumerate_functors(from.base(), to.base(), budget)?;
    let alphas = enumerate_functors(from.total(), to.total(), budget)?;
    let mut out = Vec::new();
    for beta in &betas {
        for alpha in &alphas {
            budget.spend(1)?;
            let m = GraphMorphism {
                base: beta.clone(),
                total: alpha.clone(),
            };
            if m.defect(from, to).is_none() {
                out.push(m);
            }
        }
    }
    Ok(out)
}
