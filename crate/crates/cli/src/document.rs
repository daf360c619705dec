//! Instance documents: one JSON object per file,
//! `{"kind": ..., "name": ..., "payload": {...}}`.

use std::path::Path;
use std::sync::Arc;

use morita_core::groupoid::{ActionSide, GroupoidFunctor};
use morita_core::{
    Bibundle, Bimodule, ExactMatrix, FiniteDimAlgebra, FiniteGroupoid, GroupoidAction, MultimatrixAlgebra,
    MultiplicityBimodule, PrimeField,
};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Algebra,
    Bimodule,
    Multimatrix,
    Correspondence,
    Groupoid,
    Action,
    Bibundle,
    Functor,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Bimodule => "bimodule",
            Kind::Multimatrix => "multimatrix",
            Kind::Correspondence => "correspondence",
            Kind::Groupoid => "groupoid",
            Kind::Action => "action",
            Kind::Bibundle => "bibundle",
            Kind::Functor => "functor",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub kind: Kind,
    pub name: String,
    pub payload: Value,
}

/// A validated instance.
#[derive(Clone, Debug)]
pub enum Instance {
    Algebra(Arc<FiniteDimAlgebra>),
    Bimodule(Bimodule),
    Multimatrix(MultimatrixAlgebra),
    Correspondence(MultiplicityBimodule),
    Groupoid(Arc<FiniteGroupoid>),
    Action(GroupoidAction),
    Bibundle(Bibundle),
    Functor(GroupoidFunctor),
}

impl Instance {
    pub fn kind(&self) -> Kind {
        match self {
            Instance::Algebra(_) => Kind::Algebra,
            Instance::Bimodule(_) => Kind::Bimodule,
            Instance::Multimatrix(_) => Kind::Multimatrix,
            Instance::Correspondence(_) => Kind::Correspondence,
            Instance::Groupoid(_) => Kind::Groupoid,
            Instance::Action(_) => Kind::Action,
            Instance::Bibundle(_) => Kind::Bibundle,
            Instance::Functor(_) => Kind::Functor,
        }
    }

    /// A short size summary for reports.
    pub fn summary(&self) -> Value {
        use serde_json::json;
        match self {
            Instance::Algebra(a) => json!({"field": a.field().p(), "dim": a.dim()}),
            Instance::Bimodule(m) => json!({
                "field": m.field().p(),
                "dim": m.dim(),
                "left_dim": m.left_algebra().dim(),
                "right_dim": m.right_algebra().dim(),
            }),
            Instance::Multimatrix(a) => json!({"blocks": a.blocks()}),
            Instance::Correspondence(e) => json!({"mult": e.mult(), "module_dims": e.module_dims()}),
            Instance::Groupoid(g) => json!({"objects": g.object_count(), "arrows": g.arrow_count()}),
            Instance::Action(a) => json!({"carrier": a.len()}),
            Instance::Bibundle(b) => json!({"carrier": b.len()}),
            Instance::Functor(f) => json!({"objects": f.on_objects(), "arrows": f.on_arrows()}),
        }
    }
}

// ---------------------------------------------------------------- payloads

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraPreset {
    Scalars,
    Matrix,
    UpperTriangular,
    TruncatedPolynomial,
    Diagonal,
}

/// Either a preset (`{"field": 2, "preset": "matrix", "n": 2}`) or explicit
/// structure constants (`constants[i][j]` is the coordinate vector of
/// `e_i e_j`) with a unit vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraPayload {
    pub field: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<AlgebraPreset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BimodulePreset {
    /// `F^n` over `(M_n(F), F)`.
    Column,
    /// `F^n` over `(F, M_n(F))`.
    Row,
    /// The algebra `algebra` as a bimodule over itself.
    Unit,
}

/// Either a preset or explicit action matrices (`left_action[i]` is the
/// matrix of `x ↦ e_i x`, `right_action[j]` of `x ↦ x e_j`, as row lists).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimodulePayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<BimodulePreset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<AlgebraPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<AlgebraPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<AlgebraPayload>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left_action: Option<Vec<Vec<Vec<u32>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_action: Option<Vec<Vec<Vec<u32>>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultimatrixPayload {
    pub blocks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrespondencePayload {
    pub left: MultimatrixPayload,
    pub right: MultimatrixPayload,
    pub mult: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupoidPreset {
    Point,
    Discrete,
    Pair,
    Cyclic,
    Abelian,
}

/// Either a preset (`n` for discrete, pair and cyclic, `orders` for
/// abelian) or the full tables. `products` lists `[x, y, xy]` for every
/// composable pair, where `xy` is defined when `s(x) = t(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupoidPayload {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<GroupoidPreset>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arrows: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<[usize; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SidePayload {
    Left,
    Right,
}

/// `table` lists `[arrow, element, result]` for every defined action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionPayload {
    pub groupoid: GroupoidPayload,
    pub side: SidePayload,
    pub carrier: Vec<String>,
    pub base: Vec<usize>,
    pub table: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BibundlePayload {
    pub left: GroupoidPayload,
    pub right: GroupoidPayload,
    pub carrier: Vec<String>,
    pub tau: Vec<usize>,
    pub sigma: Vec<usize>,
    pub left_table: Vec<[usize; 3]>,
    pub right_table: Vec<[usize; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorPayload {
    pub source: GroupoidPayload,
    pub target: GroupoidPayload,
    pub on_objects: Vec<usize>,
    pub on_arrows: Vec<usize>,
}

// ------------------------------------------------------------------ parsing

/// Parses the envelope. Syntax errors carry a line and column.
pub fn parse_document(text: &str, origin: &str) -> Result<InstanceDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: origin.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn read_document(path: &Path) -> Result<InstanceDocument, CliError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: origin.clone(),
        message: e.to_string(),
    })?;
    parse_document(&text, &origin)
}

fn payload<T: for<'de> Deserialize<'de>>(doc: &InstanceDocument) -> Result<T, CliError> {
    T::deserialize(&doc.payload).map_err(|e| CliError::Schema {
        name: doc.name.clone(),
        message: format!("{} payload: {e}", doc.kind.as_str()),
    })
}

fn schema(message: impl Into<String>) -> CliError {
    CliError::Schema {
        name: String::new(),
        message: message.into(),
    }
}

fn field(p: u32) -> Result<PrimeField, CliError> {
    Ok(PrimeField::new(p)?)
}

fn matrix(f: PrimeField, dim: usize, rows: &[Vec<u32>]) -> Result<ExactMatrix, CliError> {
    if rows.len() != dim {
        return Err(schema(format!("action matrix has {} rows, expected {dim}", rows.len())));
    }
    Ok(ExactMatrix::from_rows_with_cols(f, rows, dim)?)
}

pub fn build_algebra(p: &AlgebraPayload) -> Result<Arc<FiniteDimAlgebra>, CliError> {
    let f = field(p.field)?;
    let need_n = || p.n.filter(|&n| n > 0).ok_or_else(|| schema("algebra preset needs a positive `n`"));
    let a = match (p.preset, &p.constants, &p.unit) {
        (Some(AlgebraPreset::Scalars), None, None) => FiniteDimAlgebra::scalars(f),
        (Some(AlgebraPreset::Matrix), None, None) => FiniteDimAlgebra::matrix(f, need_n()?),
        (Some(AlgebraPreset::UpperTriangular), None, None) => FiniteDimAlgebra::upper_triangular(f, need_n()?),
        (Some(AlgebraPreset::TruncatedPolynomial), None, None) => FiniteDimAlgebra::truncated_polynomial(f, need_n()?),
        (Some(AlgebraPreset::Diagonal), None, None) => FiniteDimAlgebra::diagonal(f, need_n()?),
        (None, Some(c), Some(u)) => FiniteDimAlgebra::new(f, c, u)?,
        _ => return Err(schema("algebra needs either `preset` or both `constants` and `unit`")),
    };
    Ok(Arc::new(a))
}

pub fn build_bimodule(p: &BimodulePayload) -> Result<Bimodule, CliError> {
    match p.preset {
        Some(BimodulePreset::Column | BimodulePreset::Row) => {
            let f = field(p.field.ok_or_else(|| schema("bimodule preset needs `field`"))?)?;
            let n = p.n.filter(|&n| n > 0).ok_or_else(|| schema("bimodule preset needs a positive `n`"))?;
            Ok(if p.preset == Some(BimodulePreset::Column) {
                Bimodule::column_module(f, n)
            } else {
                Bimodule::row_module(f, n)
            })
        }
        Some(BimodulePreset::Unit) => {
            let a = p.algebra.as_ref().ok_or_else(|| schema("unit bimodule needs `algebra`"))?;
            Ok(Bimodule::unit(&build_algebra(a)?))
        }
        None => {
            let missing = |k: &str| schema(format!("bimodule needs `{k}`"));
            let left = build_algebra(p.left.as_ref().ok_or_else(|| missing("left"))?)?;
            let right = build_algebra(p.right.as_ref().ok_or_else(|| missing("right"))?)?;
            let dim = p.dim.ok_or_else(|| missing("dim"))?;
            let f = left.field();
            let to_matrices = |ms: &[Vec<Vec<u32>>]| ms.iter().map(|m| matrix(f, dim, m)).collect::<Result<Vec<_>, _>>();
            let la = to_matrices(p.left_action.as_deref().ok_or_else(|| missing("left_action"))?)?;
            let ra = to_matrices(p.right_action.as_deref().ok_or_else(|| missing("right_action"))?)?;
            Ok(Bimodule::new(left, right, dim, la, ra)?)
        }
    }
}

pub fn build_multimatrix(p: &MultimatrixPayload) -> Result<MultimatrixAlgebra, CliError> {
    Ok(MultimatrixAlgebra::new(p.blocks.clone())?)
}

pub fn build_correspondence(p: &CorrespondencePayload) -> Result<MultiplicityBimodule, CliError> {
    Ok(MultiplicityBimodule::new(
        build_multimatrix(&p.left)?,
        build_multimatrix(&p.right)?,
        p.mult.clone(),
    )?)
}

pub fn build_groupoid(p: &GroupoidPayload) -> Result<Arc<FiniteGroupoid>, CliError> {
    let need_n = || p.n.filter(|&n| n > 0).ok_or_else(|| schema("groupoid preset needs a positive `n`"));
    let g = match p.preset {
        Some(GroupoidPreset::Point) => FiniteGroupoid::point(),
        Some(GroupoidPreset::Discrete) => FiniteGroupoid::discrete(need_n()?),
        Some(GroupoidPreset::Pair) => FiniteGroupoid::pair(need_n()?),
        Some(GroupoidPreset::Cyclic) => FiniteGroupoid::cyclic(need_n()?),
        Some(GroupoidPreset::Abelian) => {
            let orders = p.orders.as_ref().ok_or_else(|| schema("abelian preset needs `orders`"))?;
            if orders.contains(&0) {
                return Err(schema("`orders` must be positive"));
            }
            FiniteGroupoid::abelian(orders)
        }
        None => {
            let missing = |k: &str| schema(format!("groupoid needs `{k}`"));
            let products: Vec<(usize, usize, usize)> = p
                .products
                .as_ref()
                .ok_or_else(|| missing("products"))?
                .iter()
                .map(|&[x, y, z]| (x, y, z))
                .collect();
            FiniteGroupoid::new(
                p.objects.clone().ok_or_else(|| missing("objects"))?,
                p.arrows.clone().ok_or_else(|| missing("arrows"))?,
                p.source.clone().ok_or_else(|| missing("source"))?,
                p.target.clone().ok_or_else(|| missing("target"))?,
                &products,
                p.inverse.clone().ok_or_else(|| missing("inverse"))?,
                p.unit.clone().ok_or_else(|| missing("unit"))?,
            )?
        }
    };
    Ok(Arc::new(g))
}

fn triples(t: &[[usize; 3]]) -> Vec<(usize, usize, usize)> {
    t.iter().map(|&[a, b, c]| (a, b, c)).collect()
}

pub fn build_action(p: &ActionPayload) -> Result<GroupoidAction, CliError> {
    let side = match p.side {
        SidePayload::Left => ActionSide::Left,
        SidePayload::Right => ActionSide::Right,
    };
    Ok(GroupoidAction::new(
        build_groupoid(&p.groupoid)?,
        side,
        p.carrier.clone(),
        p.base.clone(),
        &triples(&p.table),
    )?)
}

pub fn build_bibundle(p: &BibundlePayload) -> Result<Bibundle, CliError> {
    let left = GroupoidAction::new(
        build_groupoid(&p.left)?,
        ActionSide::Left,
        p.carrier.clone(),
        p.tau.clone(),
        &triples(&p.left_table),
    )?;
    let right = GroupoidAction::new(
        build_groupoid(&p.right)?,
        ActionSide::Right,
        p.carrier.clone(),
        p.sigma.clone(),
        &triples(&p.right_table),
    )?;
    Ok(Bibundle::new(left, right)?)
}

pub fn build_functor(p: &FunctorPayload) -> Result<GroupoidFunctor, CliError> {
    Ok(GroupoidFunctor::new(
        build_groupoid(&p.source)?,
        build_groupoid(&p.target)?,
        p.on_objects.clone(),
        p.on_arrows.clone(),
    )?)
}

/// Validates the payload against its kind. Errors are tagged with the
/// document name.
pub fn build(doc: &InstanceDocument) -> Result<Instance, CliError> {
    let inst = match doc.kind {
        Kind::Algebra => build_algebra(&payload(doc)?).map(Instance::Algebra),
        Kind::Bimodule => build_bimodule(&payload(doc)?).map(Instance::Bimodule),
        Kind::Multimatrix => build_multimatrix(&payload(doc)?).map(Instance::Multimatrix),
        Kind::Correspondence => build_correspondence(&payload(doc)?).map(Instance::Correspondence),
        Kind::Groupoid => build_groupoid(&payload(doc)?).map(Instance::Groupoid),
        Kind::Action => build_action(&payload(doc)?).map(Instance::Action),
        Kind::Bibundle => build_bibundle(&payload(doc)?).map(Instance::Bibundle),
        Kind::Functor => build_functor(&payload(doc)?).map(Instance::Functor),
    };
    inst.map_err(|e| e.named(&doc.name))
}

// -------------------------------------------------------------- rendering

fn rows(m: &ExactMatrix) -> Vec<Vec<u32>> {
    m.to_rows()
}

pub fn algebra_payload(a: &FiniteDimAlgebra) -> AlgebraPayload {
    AlgebraPayload {
        field: a.field().p(),
        preset: None,
        n: None,
        constants: Some(a.structure_constants()),
        unit: Some(a.unit().to_vec()),
    }
}

pub fn bimodule_payload(m: &Bimodule) -> BimodulePayload {
    BimodulePayload {
        preset: None,
        field: None,
        n: None,
        algebra: None,
        left: Some(algebra_payload(m.left_algebra())),
        right: Some(algebra_payload(m.right_algebra())),
        dim: Some(m.dim()),
        left_action: Some(m.left_action().iter().map(rows).collect()),
        right_action: Some(m.right_action().iter().map(rows).collect()),
    }
}

fn multimatrix_payload(a: &MultimatrixAlgebra) -> MultimatrixPayload {
    MultimatrixPayload {
        blocks: a.blocks().to_vec(),
    }
}

pub fn groupoid_payload(g: &FiniteGroupoid) -> GroupoidPayload {
    GroupoidPayload {
        preset: None,
        n: None,
        orders: None,
        objects: Some(g.objects().to_vec()),
        arrows: Some(g.arrows().to_vec()),
        source: Some(g.sources().to_vec()),
        target: Some(g.targets().to_vec()),
        products: Some(g.products().into_iter().map(|(x, y, z)| [x, y, z]).collect()),
        inverse: Some(g.inverses().to_vec()),
        unit: Some(g.units().to_vec()),
    }
}

fn table(a: &GroupoidAction) -> Vec<[usize; 3]> {
    a.triples().into_iter().map(|(x, m, r)| [x, m, r]).collect()
}

pub fn bibundle_payload(b: &Bibundle) -> BibundlePayload {
    BibundlePayload {
        left: groupoid_payload(b.left_groupoid()),
        right: groupoid_payload(b.right_groupoid()),
        carrier: b.carrier().to_vec(),
        tau: b.left().base().to_vec(),
        sigma: b.right().base().to_vec(),
        left_table: table(b.left()),
        right_table: table(b.right()),
    }
}

/// Serializes an instance losslessly (presets are expanded to tables).
pub fn to_document(name: &str, inst: &Instance) -> InstanceDocument {
    let value = |v: Result<Value, serde_json::Error>| v.expect("payloads serialize");
    let payload = match inst {
        Instance::Algebra(a) => value(serde_json::to_value(algebra_payload(a))),
        Instance::Bimodule(m) => value(serde_json::to_value(bimodule_payload(m))),
        Instance::Multimatrix(a) => value(serde_json::to_value(multimatrix_payload(a))),
        Instance::Correspondence(e) => value(serde_json::to_value(CorrespondencePayload {
            left: multimatrix_payload(e.left()),
            right: multimatrix_payload(e.right()),
            mult: e.mult().to_vec(),
        })),
        Instance::Groupoid(g) => value(serde_json::to_value(groupoid_payload(g))),
        Instance::Action(a) => value(serde_json::to_value(ActionPayload {
            groupoid: groupoid_payload(a.groupoid()),
            side: match a.side() {
                ActionSide::Left => SidePayload::Left,
                ActionSide::Right => SidePayload::Right,
            },
            carrier: a.carrier().to_vec(),
            base: a.base().to_vec(),
            table: table(a),
        })),
        Instance::Bibundle(b) => value(serde_json::to_value(bibundle_payload(b))),
        Instance::Functor(f) => value(serde_json::to_value(FunctorPayload {
            source: groupoid_payload(f.source()),
            target: groupoid_payload(f.target()),
            on_objects: f.on_objects().to_vec(),
            on_arrows: f.on_arrows().to_vec(),
        })),
    };
    InstanceDocument {
        kind: inst.kind(),
        name: name.to_string(),
        payload,
    }
}

pub fn render_document(doc: &InstanceDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(text: &str) -> InstanceDocument {
        parse_document(text, "test").unwrap()
    }

    #[test]
    fn presets_expand_losslessly() {
        let texts = [
            r#"{"kind":"algebra","name":"a","payload":{"field":3,"preset":"upper-triangular","n":2}}"#,
            r#"{"kind":"bimodule","name":"b","payload":{"preset":"column","field":2,"n":3}}"#,
            r#"{"kind":"groupoid","name":"g","payload":{"preset":"abelian","orders":[2,3]}}"#,
            r#"{"kind":"correspondence","name":"c","payload":{"left":{"blocks":[1,2]},"right":{"blocks":[3]},"mult":[[1],[2]]}}"#,
            r#"{"kind":"functor","name":"f","payload":{"source":{"preset":"point"},"target":{"preset":"pair","n":2},"on_objects":[1],"on_arrows":[3]}}"#,
        ];
        for t in texts {
            let d = doc(t);
            let inst = build(&d).unwrap();
            let expanded = to_document(&d.name, &inst);
            let again = to_document(&d.name, &build(&expanded).unwrap());
            assert_eq!(expanded, again, "{t}");
        }
    }

    #[test]
    fn explicit_tables_match_presets() {
        let preset = GroupoidPayload {
            preset: Some(GroupoidPreset::Pair),
            n: Some(2),
            orders: None,
            objects: None,
            arrows: None,
            source: None,
            target: None,
            products: None,
            inverse: None,
            unit: None,
        };
        let g = build_groupoid(&preset).unwrap();
        assert_eq!(build_groupoid(&groupoid_payload(&g)).unwrap(), g);
    }

    #[test]
    fn schema_errors_name_the_document() {
        let d = doc(r#"{"kind":"bimodule","name":"half","payload":{"preset":"column","field":2}}"#);
        let e = build(&d).unwrap_err();
        assert!(matches!(&e, CliError::Schema { name, .. } if name == "half"), "{e:?}");
        let d = doc(r#"{"kind":"algebra","name":"x","payload":{"field":2,"colour":"red"}}"#);
        assert!(matches!(build(&d), Err(CliError::Schema { .. })));
        let d = doc(r#"{"kind":"algebra","name":"p4","payload":{"field":4,"preset":"scalars"}}"#);
        assert!(matches!(build(&d), Err(CliError::Invalid { error: morita_core::Error::NotPrime(4), .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_document("{\n  \"kind\": \"algebra\",\n  oops\n}", "f.json").unwrap_err();
        let CliError::Parse { line, column, .. } = e else { panic!("{e:?}") };
        assert_eq!((line, column), (3, 3));
        assert!(parse_document(r#"{"kind":"sheaf","name":"s","payload":{}}"#, "k").is_err());
    }
}
