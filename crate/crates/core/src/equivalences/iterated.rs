//! Iterated comparison maps. `A^n` below is the `n`-fold pullback
//! `A □_B .. □_B A` of tuples `(a1, .., an)` with `s(a_j) = t(a_{j+1})`;
//! `A^0 = B`.

use crate::distlaw::{semidirect_product, Semidirect, SplitEpiPair};
use crate::fincat::{FinCat, Mor, Obj};
use crate::maps::{MorphismMap, TupleSet};
use crate::report::OracleReport;
use crate::span::pullback;
use crate::witness::Witness;

use super::graph::{prex_to_reflgraph, PreCrossedModule, ReflexiveGraph};
use super::kernel::{build_q, kernel_carrier};
use super::{bijectivity_witness, tuple_witness, EquivError};

const MAX_N: usize = 3;

fn check_n(n: usize) -> Result<(), EquivError> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(EquivError::UnsupportedN(n))
    }
}

fn append(head: &[Mor], tail: &[Mor]) -> Vec<Mor> {
    let mut v = head.to_vec();
    v.extend_from_slice(tail);
    v
}

/// `A^n` in lexicographic order.
pub fn graph_power(rg: &ReflexiveGraph, n: usize) -> TupleSet {
    let (a_cat, b_cat) = (rg.total(), rg.base());
    if n == 0 {
        return TupleSet::new(b_cat.morphisms().map(|b| vec![b]));
    }
    let s: Vec<Mor> = a_cat.morphisms().map(|a| rg.s(a)).collect();
    let mut cur: Vec<Vec<Mor>> = a_cat.morphisms().map(|a| vec![a]).collect();
    for _ in 1..n {
        let t_first: Vec<Mor> = cur.iter().map(|tup| rg.t(tup[0])).collect();
        cur = pullback(&s, &t_first)
            .pairs()
            .iter()
            .map(|&(a, j)| append(&[a], &cur[j]))
            .collect();
    }
    TupleSet::new(cur)
}

/// `(k, a1..am)` with `k` in the kernel at `tgt(a1)`, where the `a`-tuples
/// run over `tail`.
fn kernel_times(rg: &ReflexiveGraph, tail: &TupleSet) -> TupleSet {
    let kernel = kernel_carrier(rg.base(), rg.pair().retraction().table());
    let points: Vec<Obj> = kernel.iter().map(|p| p.1).collect();
    let tgts: Vec<Obj> = tail.iter().map(|t| rg.total().tgt(t[0])).collect();
    TupleSet::new(
        pullback(&points, &tgts)
            .pairs()
            .iter()
            .map(|&(k, j)| append(&[kernel[k].0], tail.get(j))),
    )
}

fn q_power(rg: &ReflexiveGraph, n: usize) -> MorphismMap {
    if n == 1 {
        return build_q(rg.pair());
    }
    let a_cat = rg.total();
    let domain = kernel_times(rg, &graph_power(rg, n - 1));
    MorphismMap::from_fn(format!("q{n}"), domain, graph_power(rg, n), |t| {
        append(&[a_cat.comp(t[0], rg.i(rg.t(t[1])))], &t[1..])
    })
    .expect("q_n lands in A^n")
}

/// `q_n(k, a1..a_{n-1}) = (k ∘ i(t(a1)), a1, .., a_{n-1})`; `q_1 = q`.
pub fn q_n(rg: &ReflexiveGraph, n: usize) -> Result<MorphismMap, EquivError> {
    check_n(n)?;
    Ok(q_power(rg, n))
}

fn h_power(rg: &ReflexiveGraph, n: usize) -> MorphismMap {
    let power = graph_power(rg, n);
    let domain = kernel_times(rg, &power);
    let q1 = build_q(rg.pair());
    let q_b: Vec<Mor> = q1.domain().iter().map(|t| t[1]).collect();
    let t_first: Vec<Mor> = power.iter().map(|t| rg.t(t[0])).collect();
    let codomain = TupleSet::new(
        pullback(&q_b, &t_first)
            .pairs()
            .iter()
            .map(|&(i, j)| append(q1.domain().get(i), power.get(j))),
    );
    MorphismMap::from_fn(format!("h{n}"), domain, codomain, |t| {
        let mut v = vec![t[0], rg.t(t[1])];
        v.extend_from_slice(&t[1..]);
        v
    })
    .expect("h_n lands in the pullback")
}

/// `h_n(k, a1..an) = ((k, t(a1)), a1, .., an)`.
pub fn h_n(rg: &ReflexiveGraph, n: usize) -> Result<MorphismMap, EquivError> {
    check_n(n)?;
    Ok(h_power(rg, n))
}

/// `Y^n B`: tuples `(y1, .., yn, b)` with every `y` at `tgt(b)`.
fn fiber_power(pxm: &PreCrossedModule, n: usize) -> TupleSet {
    let (y_cat, b_cat) = (pxm.fiber(), pxm.base());
    let by_obj = y_cat.by_target();
    let mut out = Vec::new();
    for b in b_cat.morphisms() {
        let local = &by_obj[b_cat.tgt(b)];
        let mut tuples: Vec<Vec<Mor>> = vec![Vec::new()];
        for _ in 0..n {
            tuples = tuples
                .iter()
                .flat_map(|t| local.iter().map(move |&y| append(t, &[y])))
                .collect();
        }
        out.extend(tuples.into_iter().map(|t| append(&t, &[b])));
    }
    out.sort();
    TupleSet::new(out)
}

/// `κ(y1) ∘ .. ∘ κ(ym) ∘ b` for `(y1, .., ym, b)`.
fn kappa_product(pxm: &PreCrossedModule, t: &[Mor]) -> Mor {
    let (ys, b) = t.split_at(t.len() - 1);
    ys.iter()
        .rev()
        .fold(b[0], |acc, &y| pxm.base().comp(pxm.k(y), acc))
}

fn b_power(pxm: &PreCrossedModule, sd: &Semidirect, n: usize) -> MorphismMap {
    let rest = fiber_power(pxm, n - 1);
    let yb: Vec<(Mor, Mor)> = sd.pair.total().morphisms().map(|a| sd.coords(a)).collect();
    let c: Vec<Mor> = yb.iter().map(|p| p.1).collect();
    let m: Vec<Mor> = rest.iter().map(|t| kappa_product(pxm, t)).collect();
    let codomain = TupleSet::new(
        pullback(&c, &m)
            .pairs()
            .iter()
            .map(|&(i, j)| append(&[yb[i].0, yb[i].1], rest.get(j))),
    );
    MorphismMap::from_fn(format!("b{n}"), fiber_power(pxm, n), codomain, |t| {
        let mut v = vec![t[0], kappa_product(pxm, &t[1..])];
        v.extend_from_slice(&t[1..]);
        v
    })
    .expect("b_n lands in YB □_B Y^(n-1)B")
}

/// `b_n(y1, .., yn, b) = ((y1, κ(y2)..κ(yn) b), (y2, .., yn, b))`.
pub fn b_n(pxm: &PreCrossedModule, n: usize) -> Result<MorphismMap, EquivError> {
    check_n(n)?;
    Ok(b_power(pxm, &semidirect_product(pxm.action()), n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IteratedKind {
    Q,
    B,
    H,
}

#[derive(Debug, Clone, Copy)]
pub enum Structure<'a> {
    SplitEpi(&'a SplitEpiPair),
    Graph(&'a ReflexiveGraph),
    PreX(&'a PreCrossedModule),
}

pub fn build_iterated(
    kind: IteratedKind,
    structure: Structure<'_>,
    n: usize,
) -> Result<MorphismMap, EquivError> {
    check_n(n)?;
    let graph = |s: Structure<'_>| -> Result<Option<ReflexiveGraph>, EquivError> {
        Ok(match s {
            Structure::Graph(rg) => Some(rg.clone()),
            Structure::PreX(pxm) => Some(prex_to_reflgraph(pxm)?),
            Structure::SplitEpi(_) => None,
        })
    };
    match (kind, structure) {
        (IteratedKind::Q, Structure::SplitEpi(se)) if n == 1 => Ok(build_q(se)),
        (IteratedKind::B, Structure::PreX(pxm)) => b_n(pxm, n),
        (IteratedKind::B, _) => Err(EquivError::StructureMismatch {
            map: "b_n",
            needs: "a pre-crossed module",
        }),
        (IteratedKind::Q, s) => match graph(s)? {
            Some(rg) => q_n(&rg, n),
            None => Err(EquivError::StructureMismatch {
                map: "q_n for n > 1",
                needs: "a reflexive graph",
            }),
        },
        (IteratedKind::H, s) => match graph(s)? {
            Some(rg) => h_n(&rg, n),
            None => Err(EquivError::StructureMismatch {
                map: "h_n",
                needs: "a reflexive graph",
            }),
        },
    }
}

fn bijective(map: &MorphismMap, dom: &[&FinCat], cod: &[&FinCat]) -> OracleReport {
    let checked = map.domain().len();
    match bijectivity_witness(map, dom, cod) {
        None => OracleReport::pass(checked, format!("{} bijective", map.name)),
        Some(w) => OracleReport::fail(checked, w, format!("{} not bijective", map.name)),
    }
}

fn repeat<'a>(c: &'a FinCat, n: usize, last: &'a FinCat) -> Vec<&'a FinCat> {
    let mut v = vec![c; n];
    v.push(last);
    v
}

/// `q_1, q_2, q_3` are bijective.
pub fn check_qn(rg: &ReflexiveGraph) -> Result<OracleReport, EquivError> {
    let a = rg.total();
    let mut report = OracleReport::pass(0, "");
    for n in 1..=MAX_N {
        let q = q_power(rg, n);
        let dom = if n == 1 { vec![a, rg.base()] } else { vec![a] };
        report = report.and(bijective(&q, &dom, &[a]));
    }
    Ok(report)
}

/// `h_1, h_2, h_3` are bijective and `q_{n+1} = (q □ 1) ∘ h_n`.
pub fn check_hn(rg: &ReflexiveGraph) -> Result<OracleReport, EquivError> {
    let a = rg.total();
    let mut report = OracleReport::pass(0, "");
    for n in 1..=MAX_N {
        let h = h_power(rg, n);
        report = report.and(bijective(&h, &[a], &[a, rg.base(), a]));
        let q_next = q_power(rg, n + 1);
        let mut factor = OracleReport::pass(h.domain().len(), format!("q{} = (q□1)h{n}", n + 1));
        for (i, t) in h.domain().iter().enumerate() {
            let image = h.codomain().get(h.apply(i));
            let via_q = append(&[a.comp(image[0], rg.i(image[1]))], &image[2..]);
            if q_next.apply_tuple(t) != Some(via_q.as_slice()) {
                factor = OracleReport::fail(
                    i + 1,
                    tuple_witness(t, &[a]),
                    format!("q{} ≠ (q□1)h{n}", n + 1),
                );
                break;
            }
        }
        report = report.and(factor);
    }
    Ok(report)
}

/// The chain `(1□b_1)..(1□b_n) b_n` followed by the projection, read in
/// `A = YB`.
fn top_path(bs: &[MorphismMap], sd: &Semidirect, t: &[Mor]) -> Vec<Mor> {
    let mut out = Vec::new();
    let mut cur = t.to_vec();
    for b in bs.iter().rev() {
        let image = b.apply_tuple(&cur).expect("chain stays in the domains");
        out.push(sd.element(image[0], image[1]));
        cur = image[2..].to_vec();
    }
    out
}

/// `q_n (1□q_{n-1}) .. (1..1□q_1)` after `f..f1`.
fn bottom_path(qs: &[MorphismMap], pxm: &PreCrossedModule, sd: &Semidirect, t: &[Mor]) -> Vec<Mor> {
    let (ys, b) = t.split_at(t.len() - 1);
    let f = |y: Mor| sd.element(y, pxm.base().id(pxm.fiber().tgt(y)));
    let mut cur = b.to_vec();
    for (j, &y) in ys.iter().enumerate().rev() {
        let q = &qs[ys.len() - 1 - j];
        cur = q
            .apply_tuple(&append(&[f(y)], &cur))
            .expect("chain stays in the domains")
            .to_vec();
    }
    cur
}

/// `b_n` and `q_n` bijectivity decided independently and compared, the
/// commuting square through `b`'s and `q`'s, and the two unit identities
/// of `b_2`.
pub fn check_bn(pxm: &PreCrossedModule) -> Result<OracleReport, EquivError> {
    let rg = prex_to_reflgraph(pxm)?;
    let sd = semidirect_product(pxm.action());
    let (y, b) = (pxm.fiber(), pxm.base());
    let bs: Vec<MorphismMap> = (1..=MAX_N).map(|n| b_power(pxm, &sd, n)).collect();
    let qs: Vec<MorphismMap> = (1..=MAX_N).map(|n| q_power(&rg, n)).collect();
    let mut report = OracleReport::pass(0, "");
    for n in 1..=MAX_N {
        let (bm, qm) = (&bs[n - 1], &qs[n - 1]);
        let mut cod = vec![y, b];
        cod.extend(repeat(y, n - 1, b));
        report = report.and(bijective(bm, &repeat(y, n, b), &cod));
        if bm.is_bijective() != qm.is_bijective() {
            return Ok(report.and(OracleReport::fail(
                1,
                Witness::new(vec![n], format!("n = {n}")),
                format!("b{n} and q{n} disagree on bijectivity"),
            )));
        }
        let mut square = OracleReport::pass(bm.domain().len(), format!("square for n = {n}"));
        for (i, t) in bm.domain().iter().enumerate() {
            if top_path(&bs[..n], &sd, t) != bottom_path(&qs[..n], pxm, &sd, t) {
                square = OracleReport::fail(
                    i + 1,
                    tuple_witness(t, &repeat(y, n, b)),
                    format!("square fails for n = {n}"),
                );
                break;
            }
        }
        report = report.and(square);
    }
    Ok(report.and(check_b2_unit_identities(pxm)?))
}

/// `b_2(1, y, b) = (i t(a), a)` and `b_2(y, 1, b) = (a, i s(a))` for every
/// `a = (y, b)`.
pub fn check_b2_unit_identities(pxm: &PreCrossedModule) -> Result<OracleReport, EquivError> {
    let rg = prex_to_reflgraph(pxm)?;
    let sd = semidirect_product(pxm.action());
    let b2 = b_power(pxm, &sd, 2);
    let (y_cat, b_cat, a_cat) = (pxm.fiber(), pxm.base(), rg.total());
    let n = a_cat.len();
    let read = |t: &[Mor]| vec![sd.element(t[0], t[1]), sd.element(t[2], t[3])];
    let mut first = OracleReport::pass(n, format!("b₂.u11 = u1□1 on {n} points"));
    let mut second = OracleReport::pass(n, format!("b₂.1u1 = 1□u1 on {n} points"));
    for a in a_cat.morphisms() {
        let (y, b) = sd.coords(a);
        let one = y_cat.id(b_cat.tgt(b));
        let lhs = read(b2.apply_tuple(&[one, y, b]).expect("in Y²B"));
        if first.ok && lhs != [rg.i(rg.t(a)), a] {
            first = OracleReport::fail(n, a_cat.witness(&[a]), "b₂.u11 ≠ u1□1");
        }
        let lhs = read(b2.apply_tuple(&[y, one, b]).expect("in Y²B"));
        if second.ok && lhs != [a, rg.i(rg.s(a))] {
            second = OracleReport::fail(n, a_cat.witness(&[a]), "b₂.1u1 ≠ 1□u1");
        }
    }
    Ok(first.and(second))
}
