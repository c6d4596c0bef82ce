//! JSON-compatible definition files for groups, groupoids, Lie algebras,
//! commutative algebras and Lie–Rinehart algebras. Scalars are written as
//! strings (`"a/b"` over ℚ, decimal integers over 𝔽p); bare JSON integers
//! are accepted on input.

use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::dga::{CartanComplex, CommAlgebra};
use crate::error::{Error, Result};
use crate::gmodule::{GModule, Side};
use crate::group::FiniteGroup;
use crate::groupoid::{GroupoidModule, TransitiveGroupoid};
use crate::lie::{CgComplex, LieAlgebra, LieModule, ModuleAlgebra};
use crate::lie_rinehart::LieRinehartAlgebra;
use crate::matrix::{canonical, SparseMatrix, SparseVec};
use crate::scalar::{Field, Scalar};

fn parse_err(what: impl Into<String>) -> Error {
    Error::Parse(what.into())
}

fn field_of<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| parse_err(format!("missing field {key:?}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| parse_err(format!("{what} must be a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| parse_err(format!("{what} must be a list")))
}

/// `"Q"`, `"Fp:<p>"` or `{"Fp": p}`.
pub fn parse_field(v: &Value) -> Result<Field> {
    match v {
        Value::String(s) => Field::from_flag(s),
        Value::Object(o) => match o.get("Fp").and_then(Value::as_u64) {
            Some(p) => Field::prime(p),
            None => Err(parse_err("scalar object must be {\"Fp\": p}")),
        },
        _ => Err(parse_err("scalar must be \"Q\" or {\"Fp\": p}")),
    }
}

pub fn field_to_json(f: Field) -> Value {
    match f {
        Field::Rational => json!("Q"),
        Field::Prime(p) => json!({ "Fp": p }),
    }
}

pub fn parse_scalar(f: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => f.parse(s),
        Value::Number(n) => n.as_i64().map(|x| f.from_i64(x)).ok_or_else(|| parse_err(format!("scalar {n} out of range"))),
        _ => Err(parse_err(format!("scalar expected, found {v}"))),
    }
}

/// A dense coefficient list of length `n`.
pub fn parse_vector(f: Field, v: &Value, n: usize, what: &str) -> Result<SparseVec> {
    let xs = as_array(v, what)?;
    if xs.len() != n {
        return Err(Error::DimensionMismatch(format!("{what} has {} entries, expected {n}", xs.len())));
    }
    let entries = xs.iter().enumerate().map(|(i, x)| Ok((i, parse_scalar(f, x)?))).collect::<Result<Vec<_>>>()?;
    Ok(canonical(entries))
}

/// A list of `rows` rows with `cols` entries each.
pub fn parse_matrix(f: Field, v: &Value, rows: usize, cols: usize, what: &str) -> Result<SparseMatrix> {
    let rs = as_array(v, what)?;
    if rs.len() != rows {
        return Err(Error::DimensionMismatch(format!("{what} has {} rows, expected {rows}", rs.len())));
    }
    let data = rs.iter().map(|r| parse_vector(f, r, cols, what)).collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_rows(cols, f, data))
}

fn parse_matrices(f: Field, v: &Value, count: usize, n: usize, what: &str) -> Result<Vec<SparseMatrix>> {
    let ms = as_array(v, what)?;
    if ms.len() != count {
        return Err(Error::DimensionMismatch(format!("{what} has {} matrices, expected {count}", ms.len())));
    }
    ms.iter().enumerate().map(|(k, m)| parse_matrix(f, m, n, n, &format!("{what}[{k}]"))).collect()
}

pub fn vector_to_json(v: &[(usize, Scalar)], n: usize, f: Field) -> Value {
    let mut dense = vec![f.zero(); n];
    for (i, x) in v {
        dense[*i] = x.clone();
    }
    Value::Array(dense.iter().map(|x| Value::String(x.to_string())).collect())
}

pub fn matrix_to_json(m: &SparseMatrix) -> Value {
    Value::Array(m.row_data().iter().map(|r| vector_to_json(r, m.cols(), m.field())).collect())
}

/// The scalar field named in a definition, unless overridden.
pub fn definition_field(doc: &Value, over: Option<Field>) -> Result<Field> {
    match (over, doc.get("scalar")) {
        (Some(f), _) => Ok(f),
        (None, Some(s)) => parse_field(s),
        (None, None) => Ok(Field::Rational),
    }
}

pub fn parse_document(text: &str) -> Result<Value> {
    Ok(serde_json::from_str(text)?)
}

/// `{"order": n, "table": [[…]]}`, validated as a group.
pub fn parse_group(v: &Value) -> Result<FiniteGroup> {
    let n = as_usize(field_of(v, "order")?, "order")?;
    let rows = as_array(field_of(v, "table")?, "table")?;
    let table = rows
        .iter()
        .map(|r| as_array(r, "table row")?.iter().map(|x| as_usize(x, "table entry")).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    if table.len() != n {
        return Err(Error::DimensionMismatch(format!("table has {} rows for order {n}", table.len())));
    }
    let name = v.get("name").and_then(Value::as_str).unwrap_or("G");
    FiniteGroup::from_table(name, table)
}

pub fn group_to_json(g: &FiniteGroup) -> Value {
    json!({ "order": g.order(), "table": g.table() })
}

fn parse_side(v: &Value) -> Result<Side> {
    match v.get("side").and_then(Value::as_str).unwrap_or("right") {
        "right" => Ok(Side::Right),
        "left" => Ok(Side::Left),
        s => Err(parse_err(format!("module side must be \"left\" or \"right\", found {s:?}"))),
    }
}

/// `{"dim": d, "side": …, "action": [matrix per element]}`.
pub fn parse_gmodule(g: Arc<FiniteGroup>, f: Field, v: &Value) -> Result<GModule> {
    let d = as_usize(field_of(v, "dim")?, "module dim")?;
    let side = parse_side(v)?;
    let actions = parse_matrices(f, field_of(v, "action")?, g.order(), d, "action")?;
    GModule::new(g, f, side, actions)
}

pub fn gmodule_to_json(v: &GModule) -> Value {
    json!({
        "dim": v.dim(),
        "side": if v.side() == Side::Right { "right" } else { "left" },
        "action": v.actions().iter().map(matrix_to_json).collect::<Vec<_>>(),
    })
}

/// A group with a module; the trivial one-dimensional right module when absent.
#[derive(Clone, Debug)]
pub struct GroupDefinition {
    pub field: Field,
    pub group: Arc<FiniteGroup>,
    pub module: GModule,
}

pub fn parse_group_definition(doc: &Value, over: Option<Field>) -> Result<GroupDefinition> {
    let field = definition_field(doc, over)?;
    let group = Arc::new(parse_group(field_of(doc, "group")?)?);
    let module = match doc.get("module") {
        Some(m) => parse_gmodule(group.clone(), field, m)?,
        None => GModule::trivial(group.clone(), field, Side::Right, 1),
    };
    Ok(GroupDefinition { field, group, module })
}

pub fn group_definition_to_json(d: &GroupDefinition) -> Value {
    json!({ "scalar": field_to_json(d.field), "group": group_to_json(&d.group), "module": gmodule_to_json(&d.module) })
}

/// `{"groupoid": {"base": m, "vertex_group": {…}}, "module": {"fiber_dim": d, "from_vertex_rep": {"action": …}}}`;
/// the trivial one-dimensional module when absent.
pub fn parse_groupoid_definition(doc: &Value, over: Option<Field>) -> Result<GroupoidModule> {
    let field = definition_field(doc, over)?;
    let gd = field_of(doc, "groupoid")?;
    let base = as_usize(field_of(gd, "base")?, "base")?;
    let vertex = Arc::new(parse_group(field_of(gd, "vertex_group")?)?);
    let om = Arc::new(TransitiveGroupoid::gauge(base, vertex.clone())?);
    let v = match doc.get("module") {
        Some(m) => {
            let d = as_usize(field_of(m, "fiber_dim")?, "fiber_dim")?;
            let rep = field_of(m, "from_vertex_rep")?;
            let actions = parse_matrices(field, field_of(rep, "action")?, vertex.order(), d, "from_vertex_rep.action")?;
            GModule::new(vertex, field, Side::Left, actions)?
        }
        None => GModule::trivial(vertex, field, Side::Left, 1),
    };
    GroupoidModule::induced(om, &v)
}

/// `{"dim": n, "brackets": [[i, j, [coeff per k]], …]}`.
pub fn parse_lie(f: Field, v: &Value) -> Result<LieAlgebra> {
    let n = as_usize(field_of(v, "dim")?, "dim")?;
    let name = v.get("name").and_then(Value::as_str).unwrap_or("g");
    let mut table = vec![vec![Vec::new(); n]; n];
    let mut given = vec![vec![false; n]; n];
    for b in as_array(field_of(v, "brackets")?, "brackets")? {
        let t = as_array(b, "bracket")?;
        if t.len() != 3 {
            return Err(parse_err("bracket entries are [i, j, [coefficients]]"));
        }
        let (i, j) = (as_usize(&t[0], "bracket index")?, as_usize(&t[1], "bracket index")?);
        if i >= n || j >= n {
            return Err(Error::DimensionMismatch(format!("bracket index ({i},{j}) out of range")));
        }
        table[i][j] = parse_vector(f, &t[2], n, "bracket coefficients")?;
        given[i][j] = true;
    }
    // Unlisted brackets follow from antisymmetry.
    for i in 0..n {
        for j in 0..n {
            if !given[i][j] && given[j][i] {
                table[i][j] = table[j][i].iter().map(|(k, x)| (*k, x.neg())).collect();
            }
        }
    }
    LieAlgebra::from_table(name, f, table)
}

pub fn lie_to_json(g: &LieAlgebra) -> Value {
    let n = g.dim();
    let brackets: Vec<Value> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| !g.bracket(i, j).is_empty())
        .map(|(i, j)| json!([i, j, vector_to_json(g.bracket(i, j), n, g.field())]))
        .collect();
    json!({ "name": g.name(), "dim": n, "brackets": brackets })
}

fn parse_degrees(m: &Value, d: usize) -> Result<Vec<i64>> {
    match m.get("degrees") {
        None => Ok(vec![0; d]),
        Some(v) => {
            let xs = as_array(v, "degrees")?;
            if xs.len() != d {
                return Err(Error::DimensionMismatch(format!("{} degrees for dimension {d}", xs.len())));
            }
            xs.iter().map(|x| x.as_i64().ok_or_else(|| parse_err("degrees must be integers"))).collect()
        }
    }
}

/// `{"dim": d, "action": [matrix per basis element], "degrees"?: [...], "differential"?: matrix}`.
pub fn parse_lie_module(g: &Arc<LieAlgebra>, v: &Value) -> Result<LieModule> {
    let f = g.field();
    let d = as_usize(field_of(v, "dim")?, "module dim")?;
    let rho = parse_matrices(f, field_of(v, "action")?, g.dim(), d, "action")?;
    let degrees = parse_degrees(v, d)?;
    let diff = v.get("differential").map(|m| parse_matrix(f, m, d, d, "differential")).transpose()?;
    LieModule::new(g.clone(), degrees, diff, rho)
}

/// A `(C𝔤, 𝔤)`-complex: a module with `"contractions"` per basis element (zero when absent).
pub fn parse_cg_complex(g: &Arc<LieAlgebra>, v: &Value) -> Result<CgComplex> {
    let f = g.field();
    let d = as_usize(field_of(v, "dim")?, "module dim")?;
    let lambda = parse_matrices(f, field_of(v, "action")?, g.dim(), d, "action")?;
    let iota = match v.get("contractions") {
        Some(c) => parse_matrices(f, c, g.dim(), d, "contractions")?,
        None => vec![SparseMatrix::zeros(d, d, f); g.dim()],
    };
    let degrees = parse_degrees(v, d)?;
    let diff = match v.get("differential") {
        Some(m) => parse_matrix(f, m, d, d, "differential")?,
        None => SparseMatrix::zeros(d, d, f),
    };
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by_key(|&i| degrees[i]);
    if order.iter().enumerate().any(|(k, &i)| k != i) {
        return Err(Error::Validation("basis vectors must be listed in increasing degree".into()));
    }
    CgComplex::new(g.clone(), CartanComplex { field: f, degrees, d: diff, lambda, iota })
}

/// `{"dim": k, "unit": [coeffs], "mult": [[[coeffs] per t] per s]}`.
pub fn parse_algebra(f: Field, v: &Value) -> Result<CommAlgebra> {
    let k = as_usize(field_of(v, "dim")?, "algebra dim")?;
    let unit = parse_vector(f, field_of(v, "unit")?, k, "unit")?;
    let rows = as_array(field_of(v, "mult")?, "mult")?;
    if rows.len() != k {
        return Err(Error::DimensionMismatch(format!("mult has {} rows, expected {k}", rows.len())));
    }
    let mult = rows
        .iter()
        .map(|r| {
            let r = as_array(r, "mult row")?;
            if r.len() != k {
                return Err(Error::DimensionMismatch(format!("mult row has {} entries, expected {k}", r.len())));
            }
            r.iter().map(|x| parse_vector(f, x, k, "product")).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    CommAlgebra::new(f, mult, unit)
}

pub fn algebra_to_json(a: &CommAlgebra) -> Value {
    let (k, f) = (a.dim(), a.field());
    let mult: Vec<Value> =
        a.table().iter().map(|r| Value::Array(r.iter().map(|x| vector_to_json(x, k, f)).collect())).collect();
    json!({ "dim": k, "unit": vector_to_json(a.unit(), k, f), "mult": mult })
}

/// `{"algebra": …, "rank": r, "anchor": [matrix per generator], "brackets": [[i, j, [[A-coeffs] per generator]]]}`.
pub fn parse_lr(f: Field, v: &Value) -> Result<LieRinehartAlgebra> {
    let a = parse_algebra(f, field_of(v, "algebra")?)?;
    let r = as_usize(field_of(v, "rank")?, "rank")?;
    let anchor = parse_matrices(f, field_of(v, "anchor")?, r, a.dim(), "anchor")?;
    let mut brackets = Vec::new();
    if let Some(bs) = v.get("brackets") {
        for b in as_array(bs, "brackets")? {
            let t = as_array(b, "bracket")?;
            if t.len() != 3 {
                return Err(parse_err("bracket entries are [i, j, [A-coefficients per generator]]"));
            }
            let (i, j) = (as_usize(&t[0], "bracket index")?, as_usize(&t[1], "bracket index")?);
            let cs = as_array(&t[2], "bracket coefficients")?;
            if cs.len() != r {
                return Err(Error::DimensionMismatch(format!("bracket ({i},{j}) needs {r} coefficients")));
            }
            let coeffs = cs.iter().map(|c| parse_vector(f, c, a.dim(), "A-coefficient")).collect::<Result<Vec<_>>>()?;
            brackets.push((i, j, coeffs));
        }
    }
    let name = v.get("name").and_then(Value::as_str).unwrap_or("(A, L)");
    LieRinehartAlgebra::new(name, a, anchor, &brackets)
}

pub fn lr_to_json(lr: &LieRinehartAlgebra) -> Value {
    let (r, m, f) = (lr.rank(), lr.algebra().dim(), lr.field());
    let brackets: Vec<Value> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .filter(|&(i, j)| lr.bracket(i, j).iter().any(|c| !c.is_empty()))
        .map(|(i, j)| json!([i, j, lr.bracket(i, j).iter().map(|c| vector_to_json(c, m, f)).collect::<Vec<_>>()]))
        .collect();
    json!({
        "name": lr.name(),
        "algebra": algebra_to_json(lr.algebra()),
        "rank": r,
        "anchor": lr.anchor().iter().map(matrix_to_json).collect::<Vec<_>>(),
        "brackets": brackets,
    })
}

/// `{"algebra": …, "action": [derivation per Lie basis element]}` (trivial action when absent).
pub fn parse_module_algebra(g: &Arc<LieAlgebra>, v: &Value) -> Result<ModuleAlgebra> {
    let a = parse_algebra(g.field(), v)?;
    match v.get("action") {
        Some(act) => {
            let action = parse_matrices(g.field(), act, g.dim(), a.dim(), "algebra action")?;
            ModuleAlgebra::new(g, a, action)
        }
        None => Ok(ModuleAlgebra::trivial(g, a)),
    }
}

/// Which kind of object a definition file describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefinitionKind {
    Group,
    Groupoid,
    Lie,
    LieRinehart,
}

pub fn detect_kind(doc: &Value) -> Result<DefinitionKind> {
    let o: &Map<String, Value> = doc.as_object().ok_or_else(|| parse_err("definition must be a JSON object"))?;
    if o.contains_key("groupoid") {
        Ok(DefinitionKind::Groupoid)
    } else if o.contains_key("group") {
        Ok(DefinitionKind::Group)
    } else if o.contains_key("rank") && o.contains_key("algebra") {
        Ok(DefinitionKind::LieRinehart)
    } else if o.contains_key("brackets") || o.contains_key("lie") {
        Ok(DefinitionKind::Lie)
    } else {
        Err(parse_err("cannot tell what the definition describes"))
    }
}

/// The Lie algebra of a file: either the top level or the `"lie"` member.
pub fn lie_part(doc: &Value) -> &Value {
    doc.get("lie").unwrap_or(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        let f = Field::Rational;
        let g = LieAlgebra::sl2(f);
        assert_eq!(parse_lie(f, &lie_to_json(&g)).unwrap(), g);
        let lr = LieRinehartAlgebra::euler_dual_numbers(f);
        assert_eq!(parse_lr(f, &lr_to_json(&lr)).unwrap().anchor(), lr.anchor());
        let a = CommAlgebra::truncated_polynomial(f, 3);
        assert_eq!(parse_algebra(f, &algebra_to_json(&a)).unwrap(), a);
        let grp = FiniteGroup::symmetric(3);
        assert_eq!(parse_group(&group_to_json(&grp)).unwrap().table(), grp.table());
    }

    #[test]
    fn malformed_cayley_table_names_the_triple() {
        let doc = parse_document(r#"{"group": {"order": 3, "table": [[0,1,2],[1,0,2],[2,2,0]]}}"#).unwrap();
        let e = parse_group_definition(&doc, None).unwrap_err();
        assert!(e.to_string().starts_with("associativity violated at ("), "{e}");
    }

    #[test]
    fn fields_and_scalars() {
        assert_eq!(parse_field(&json!({"Fp": 5})).unwrap(), Field::Prime(5));
        assert_eq!(parse_field(&json!("Q")).unwrap(), Field::Rational);
        assert_eq!(parse_scalar(Field::Rational, &json!("-3/4")).unwrap().to_string(), "-3/4");
        assert_eq!(parse_scalar(Field::Prime(5), &json!(7)).unwrap().to_string(), "2");
        assert!(parse_field(&json!({"Fp": 4})).is_err());
    }
}
