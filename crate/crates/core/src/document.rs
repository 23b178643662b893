//! The JSON wire format. Every document carries a `kind`; categories
//! nested inside larger documents may omit it. Canonical form: keys in
//! lexicographic order, 2-space indentation, a trailing newline, and every
//! array of names sorted.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::distlaw::{ActionSystem, SplitEpiPair};
use crate::equivalences::{
    composable_pairs, CrossedModule, InternalCat, PreCrossedModule, ReflexiveGraph,
};
use crate::fincat::{FinCat, Functor, Mor, RawCategory, RawMorphism};
use crate::oracle::fixtures::RawSplitEpi;
use crate::witness::Witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Category,
    SplitEpi,
    ReflGraph,
    Action,
    PreX,
    Xmod,
    RelCat,
}

impl Kind {
    pub const ALL: [Kind; 7] = [
        Kind::Category,
        Kind::SplitEpi,
        Kind::ReflGraph,
        Kind::Action,
        Kind::PreX,
        Kind::Xmod,
        Kind::RelCat,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Category => "category",
            Kind::SplitEpi => "splitepi",
            Kind::ReflGraph => "reflgraph",
            Kind::Action => "action",
            Kind::PreX => "prexmod",
            Kind::Xmod => "xmod",
            Kind::RelCat => "relcat",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Kind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Category(FinCat),
    SplitEpi(SplitEpiPair),
    ReflGraph(ReflexiveGraph),
    Action(ActionSystem),
    PreX(PreCrossedModule),
    Xmod(CrossedModule),
    RelCat(InternalCat),
}

impl Payload {
    pub fn kind(&self) -> Kind {
        match self {
            Payload::Category(_) => Kind::Category,
            Payload::SplitEpi(_) => Kind::SplitEpi,
            Payload::ReflGraph(_) => Kind::ReflGraph,
            Payload::Action(_) => Kind::Action,
            Payload::PreX(_) => Kind::PreX,
            Payload::Xmod(_) => Kind::Xmod,
            Payload::RelCat(_) => Kind::RelCat,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub comments: Vec<String>,
}

impl Meta {
    fn is_empty(&self) -> bool {
        self.name.is_none() && self.comments.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub meta: Meta,
    pub payload: Payload,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocError {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("invalid {kind}: {message}")]
    Invalid {
        kind: Kind,
        message: String,
        witness: Option<Witness>,
    },
}

impl DocError {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            DocError::Invalid { witness, .. } => witness.as_ref(),
            DocError::Malformed(_) => None,
        }
    }
}

fn invalid(kind: Kind, message: impl fmt::Display, witness: Option<&Witness>) -> DocError {
    DocError::Invalid {
        kind,
        message: message.to_string(),
        witness: witness.cloned(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismJson {
    name: String,
    src: String,
    tgt: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
    objects: Vec<String>,
    morphisms: Vec<MorphismJson>,
    identities: Vec<String>,
    compose: Vec<[String; 3]>,
}

type NameMap = BTreeMap<String, String>;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeometricJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
    base: CategoryJson,
    total: CategoryJson,
    i: NameMap,
    s: NameMap,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<NameMap>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    d: Option<Vec<[String; 3]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraicJson {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<Meta>,
    base: CategoryJson,
    fiber: CategoryJson,
    action: Vec<[String; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kappa: Option<NameMap>,
}

fn category_json(c: &FinCat) -> CategoryJson {
    raw_category_json(&c.to_raw())
}

fn raw_category_json(raw: &RawCategory) -> CategoryJson {
    let mut objects = raw.objects.clone();
    objects.sort();
    let mut morphisms: Vec<MorphismJson> = raw
        .morphisms
        .iter()
        .map(|m| MorphismJson {
            name: m.name.clone(),
            src: m.src.clone(),
            tgt: m.tgt.clone(),
        })
        .collect();
    morphisms.sort_by(|a, b| a.name.cmp(&b.name));
    let mut identities = raw.identities.clone();
    identities.sort();
    let mut compose = raw.compose.clone();
    compose.sort();
    CategoryJson {
        kind: None,
        meta: None,
        objects,
        morphisms,
        identities,
        compose,
    }
}

fn category_from_json(j: &CategoryJson, kind: Kind) -> Result<FinCat, DocError> {
    if let Some(k) = &j.kind {
        if k != "category" {
            return Err(DocError::Malformed(format!(
                "nested category declares kind `{k}`"
            )));
        }
    }
    let raw = RawCategory {
        objects: j.objects.clone(),
        morphisms: j
            .morphisms
            .iter()
            .map(|m| RawMorphism {
                name: m.name.clone(),
                src: m.src.clone(),
                tgt: m.tgt.clone(),
            })
            .collect(),
        identities: j.identities.clone(),
        compose: j.compose.clone(),
    };
    FinCat::from_raw(&raw).map_err(|e| invalid(kind, e.to_string(), e.witness()))
}

fn name_map(f: &Functor, dom: &FinCat, cod: &FinCat) -> NameMap {
    dom.morphisms()
        .map(|m| (dom.name(m).to_string(), cod.name(f.apply(m)).to_string()))
        .collect()
}

fn map_from_json(
    map: &NameMap,
    dom: &FinCat,
    cod: &FinCat,
    what: &str,
    kind: Kind,
) -> Result<Vec<Mor>, DocError> {
    let lookup = |c: &FinCat, n: &str| {
        c.index_of(n)
            .ok_or_else(|| invalid(kind, format!("{what}: unknown morphism `{n}`"), None))
    };
    let mut out = vec![None; dom.len()];
    for (k, v) in map {
        out[lookup(dom, k)?] = Some(lookup(cod, v)?);
    }
    out.into_iter()
        .enumerate()
        .map(|(m, v)| {
            v.ok_or_else(|| {
                invalid(
                    kind,
                    format!("{what} is undefined at `{}`", dom.name(m)),
                    Some(&dom.witness(&[m])),
                )
            })
        })
        .collect()
}

fn resolve(c: &FinCat, name: &str, kind: Kind) -> Result<Mor, DocError> {
    c.index_of(name)
        .ok_or_else(|| invalid(kind, format!("unknown morphism `{name}`"), None))
}

fn action_entries(act: &ActionSystem) -> Vec<[String; 3]> {
    let (b_cat, y_cat) = (act.base(), act.fiber());
    let mut v: Vec<[String; 3]> = act
        .pairs()
        .map(|(b, y)| {
            [
                b_cat.name(b).to_string(),
                y_cat.name(y).to_string(),
                y_cat.name(act.act(b, y)).to_string(),
            ]
        })
        .collect();
    v.sort();
    v
}

fn action_from_json(j: &AlgebraicJson, kind: Kind) -> Result<ActionSystem, DocError> {
    let base = category_from_json(&j.base, kind)?;
    let fiber = category_from_json(&j.fiber, kind)?;
    let entries = j
        .action
        .iter()
        .map(|[b, y, v]| {
            Ok((
                resolve(&base, b, kind)?,
                resolve(&fiber, y, kind)?,
                resolve(&fiber, v, kind)?,
            ))
        })
        .collect::<Result<Vec<_>, DocError>>()?;
    ActionSystem::from_entries(base, fiber, &entries)
        .map_err(|e| invalid(kind, e.to_string(), e.witness()))
}

fn prex_from_json(j: &AlgebraicJson, kind: Kind) -> Result<PreCrossedModule, DocError> {
    let action = action_from_json(j, kind)?;
    let Some(kappa) = &j.kappa else {
        return Err(DocError::Malformed("missing field `kappa`".into()));
    };
    let kappa = map_from_json(kappa, action.fiber(), action.base(), "kappa", kind)?;
    PreCrossedModule::new(action, kappa).map_err(|e| invalid(kind, e.to_string(), e.witness()))
}

fn graph_from_json(j: &GeometricJson, kind: Kind) -> Result<ReflexiveGraph, DocError> {
    let pair = splitepi_from_json(j, kind)?;
    let Some(t) = &j.t else {
        return Err(DocError::Malformed("missing field `t`".into()));
    };
    let t = map_from_json(t, pair.total(), pair.base(), "t", kind)?;
    ReflexiveGraph::new(pair, t).map_err(|e| invalid(kind, e.to_string(), e.witness()))
}

fn splitepi_from_json(j: &GeometricJson, kind: Kind) -> Result<SplitEpiPair, DocError> {
    let base = category_from_json(&j.base, kind)?;
    let total = category_from_json(&j.total, kind)?;
    if base.objects() != total.objects() {
        return Err(invalid(kind, "base and total have different object sets", None));
    }
    let i = map_from_json(&j.i, &base, &total, "i", kind)?;
    let s = map_from_json(&j.s, &total, &base, "s", kind)?;
    SplitEpiPair::new(total, base, i, s).map_err(|e| invalid(kind, e.to_string(), e.witness()))
}

fn relcat_from_json(j: &GeometricJson, kind: Kind) -> Result<InternalCat, DocError> {
    let graph = graph_from_json(j, kind)?;
    let Some(entries) = &j.d else {
        return Err(DocError::Malformed("missing field `d`".into()));
    };
    let a_cat = graph.total();
    let pairs = composable_pairs(&graph);
    let mut d = vec![None; pairs.len()];
    for [a1, a2, v] in entries {
        let key = [resolve(a_cat, a1, kind)?, resolve(a_cat, a2, kind)?];
        let Some(p) = pairs.position(&key) else {
            return Err(invalid(
                kind,
                "d given on a pair outside A □_B A",
                Some(&a_cat.witness(&key)),
            ));
        };
        if d[p].is_some() {
            return Err(invalid(kind, "d given twice", Some(&a_cat.witness(&key))));
        }
        d[p] = Some(resolve(a_cat, v, kind)?);
    }
    let d = d
        .into_iter()
        .enumerate()
        .map(|(p, v)| {
            v.ok_or_else(|| {
                invalid(kind, "d is undefined on a composable pair", Some(&a_cat.witness(pairs.get(p))))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    InternalCat::new(graph, d).map_err(|e| invalid(kind, e.to_string(), e.witness()))
}

fn geometric_json(kind: Kind, pair: &SplitEpiPair) -> GeometricJson {
    GeometricJson {
        kind: kind.as_str().to_string(),
        meta: None,
        base: category_json(pair.base()),
        total: category_json(pair.total()),
        i: name_map(pair.section(), pair.base(), pair.total()),
        s: name_map(pair.retraction(), pair.total(), pair.base()),
        t: None,
        d: None,
    }
}

fn algebraic_json(kind: Kind, act: &ActionSystem) -> AlgebraicJson {
    AlgebraicJson {
        kind: kind.as_str().to_string(),
        meta: None,
        base: category_json(act.base()),
        fiber: category_json(act.fiber()),
        action: action_entries(act),
        kappa: None,
    }
}

fn with_kappa(mut j: AlgebraicJson, pxm: &PreCrossedModule) -> AlgebraicJson {
    j.kappa = Some(name_map(pxm.kappa(), pxm.fiber(), pxm.base()));
    j
}

fn with_t(mut j: GeometricJson, rg: &ReflexiveGraph) -> GeometricJson {
    j.t = Some(name_map(rg.target(), rg.total(), rg.base()));
    j
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("document serializes")
}

fn from_value<T: for<'de> Deserialize<'de>>(v: Value) -> Result<T, DocError> {
    serde_json::from_value(v).map_err(|e| DocError::Malformed(e.to_string()))
}

fn with_meta(mut v: Value, meta: &Meta) -> Value {
    if let Value::Object(map) = &mut v {
        if meta.is_empty() {
            map.remove("meta");
        } else {
            map.insert("meta".into(), to_value(meta));
        }
    }
    v
}

fn canonical(v: Value, meta: &Meta) -> String {
    let v = with_meta(v, meta);
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

impl Document {
    pub fn new(payload: Payload) -> Self {
        Document {
            meta: Meta::default(),
            payload,
        }
    }

    pub fn named(payload: Payload, name: &str) -> Self {
        Document {
            meta: Meta {
                name: Some(name.to_string()),
                comments: Vec::new(),
            },
            payload,
        }
    }

    pub fn kind(&self) -> Kind {
        self.payload.kind()
    }

    /// Parses and validates. Syntax and schema problems are
    /// [`DocError::Malformed`]; everything the validators reject is
    /// [`DocError::Invalid`].
    pub fn parse(text: &str) -> Result<Self, DocError> {
        let v: Value = serde_json::from_str(text).map_err(|e| DocError::Malformed(e.to_string()))?;
        let kind_str = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| DocError::Malformed("missing string field `kind`".into()))?;
        let kind: Kind = kind_str.parse().map_err(DocError::Malformed)?;
        let meta = match v.get("meta") {
            Some(m) => from_value::<Meta>(m.clone())?,
            None => Meta::default(),
        };
        let payload = match kind {
            Kind::Category => {
                let j: CategoryJson = from_value(v)?;
                Payload::Category(category_from_json(&j, kind)?)
            }
            Kind::SplitEpi | Kind::ReflGraph | Kind::RelCat => {
                let j: GeometricJson = from_value(v)?;
                let extra = match kind {
                    Kind::SplitEpi => j.t.is_some() || j.d.is_some(),
                    Kind::ReflGraph => j.d.is_some(),
                    _ => false,
                };
                if extra {
                    return Err(DocError::Malformed(format!("unexpected field for kind `{kind}`")));
                }
                match kind {
                    Kind::SplitEpi => Payload::SplitEpi(splitepi_from_json(&j, kind)?),
                    Kind::ReflGraph => Payload::ReflGraph(graph_from_json(&j, kind)?),
                    _ => Payload::RelCat(relcat_from_json(&j, kind)?),
                }
            }
            Kind::Action | Kind::PreX | Kind::Xmod => {
                let j: AlgebraicJson = from_value(v)?;
                match kind {
                    Kind::Action if j.kappa.is_some() => {
                        return Err(DocError::Malformed("unexpected field `kappa`".into()))
                    }
                    Kind::Action => Payload::Action(action_from_json(&j, kind)?),
                    Kind::PreX => Payload::PreX(prex_from_json(&j, kind)?),
                    _ => {
                        let pxm = prex_from_json(&j, kind)?;
                        Payload::Xmod(
                            CrossedModule::new(pxm)
                                .map_err(|e| invalid(kind, e.to_string(), e.witness()))?,
                        )
                    }
                }
            }
        };
        Ok(Document { meta, payload })
    }

    /// The canonical text.
    pub fn to_json(&self) -> String {
        canonical(self.body(), &self.meta)
    }

    /// The canonical content on a single line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(&with_meta(self.body(), &self.meta)).expect("value serializes")
    }

    fn body(&self) -> Value {
        let kind = self.kind();
        match &self.payload {
            Payload::Category(c) => {
                let mut j = category_json(c);
                j.kind = Some("category".into());
                to_value(&j)
            }
            Payload::SplitEpi(se) => to_value(&geometric_json(kind, se)),
            Payload::ReflGraph(rg) => to_value(&with_t(geometric_json(kind, rg.pair()), rg)),
            Payload::RelCat(ic) => {
                let rg = ic.graph();
                let mut j = with_t(geometric_json(kind, rg.pair()), rg);
                let a = rg.total();
                let mut d: Vec<[String; 3]> = ic
                    .pairs()
                    .iter()
                    .zip(ic.table())
                    .map(|(t, &v)| {
                        [a.name(t[0]).to_string(), a.name(t[1]).to_string(), a.name(v).to_string()]
                    })
                    .collect();
                d.sort();
                j.d = Some(d);
                to_value(&j)
            }
            Payload::Action(act) => to_value(&algebraic_json(kind, act)),
            Payload::PreX(pxm) => to_value(&with_kappa(algebraic_json(kind, pxm.action()), pxm)),
            Payload::Xmod(xm) => {
                to_value(&with_kappa(algebraic_json(kind, xm.prex().action()), xm.prex()))
            }
        }
    }
}

/// Canonical text for split-epimorphism tables that may fail validation.
pub fn raw_splitepi_json(raw: &RawSplitEpi, meta: &Meta) -> String {
    let named = |map: &[Mor], dom: &FinCat, cod: &FinCat| -> NameMap {
        dom.morphisms()
            .map(|m| (dom.name(m).to_string(), cod.name(map[m]).to_string()))
            .collect()
    };
    let j = GeometricJson {
        kind: Kind::SplitEpi.as_str().to_string(),
        meta: None,
        base: category_json(&raw.base),
        total: category_json(&raw.total),
        i: named(&raw.section, &raw.base, &raw.total),
        s: named(&raw.retraction, &raw.total, &raw.base),
        t: None,
        d: None,
    };
    canonical(to_value(&j), meta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fixtures;

    #[test]
    fn canonical_text_is_a_fixed_point() {
        for fx in fixtures::all() {
            let doc = Document::named(fx.payload, fx.name);
            let text = doc.to_json();
            let again = Document::parse(&text).unwrap().to_json();
            assert_eq!(text, again, "{}", fx.file);
        }
    }

    #[test]
    fn malformed_versus_invalid() {
        assert!(matches!(Document::parse("{"), Err(DocError::Malformed(_))));
        assert!(matches!(
            Document::parse(r#"{"kind":"widget"}"#),
            Err(DocError::Malformed(_))
        ));
        let bad = r#"{"kind":"category","objects":["x"],"morphisms":[{"name":"1","src":"x","tgt":"x"}],"identities":[],"compose":[["1","1","1"]]}"#;
        assert!(matches!(Document::parse(bad), Err(DocError::Invalid { .. })));
    }
}
