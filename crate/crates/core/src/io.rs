//! JSON formats and builtin names shared with the command line tool.
//!
//! Structure: `{"model": "complex"|"boolean", "n": int, "delta": matrix,
//! "top": matrix}` with matrices as nested rows, complex entries as
//! `[re, im]` and boolean entries as `0`/`1`.
//! Group: `{"order": k, "add": [[...]], "zero": 0}`.
//! Bit function: `{"m": int, "n": int, "table": [int]}`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::frobenius::ClassicalStructure;
use crate::limits;
use crate::models::{fhilb_computational, hadamard_structure, rel_group_structure, rel_rect, AbelianGroup};
use crate::oracle::BitFn;
use crate::scalar::{Scalar, C64};
use crate::tensor::Mor;

/// A structure in either model.
#[derive(Clone, Debug)]
pub enum AnyStructure {
    Complex(ClassicalStructure<C64>),
    Boolean(ClassicalStructure<bool>),
}

impl AnyStructure {
    pub fn n(&self) -> usize {
        match self {
            AnyStructure::Complex(c) => c.n(),
            AnyStructure::Boolean(c) => c.n(),
        }
    }

    pub fn model(&self) -> &'static str {
        match self {
            AnyStructure::Complex(_) => "complex",
            AnyStructure::Boolean(_) => "boolean",
        }
    }
}

/// A structure together with how to print its carrier elements.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub structure: AnyStructure,
    /// For rectangular structures on `Z_k`, the group order; element
    /// `i·k + j` then prints as `ij`.
    pub rect: Option<usize>,
}

impl From<AnyStructure> for Loaded {
    fn from(structure: AnyStructure) -> Self {
        Loaded { structure, rect: None }
    }
}

fn get<'a>(v: &'a Value, field: &str) -> Result<&'a Value> {
    v.get(field).ok_or_else(|| Error::input(field, "missing"))
}

fn as_usize(v: &Value, field: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::input(field, format!("expected a nonnegative integer, found {v}")))
}

fn as_array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::input(field, format!("expected an array, found {v}")))
}

fn parse_document(text: &str) -> Result<Value> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::input("<document>", e.to_string()))?;
    if !v.is_object() {
        return Err(Error::input("<document>", "expected a JSON object"));
    }
    Ok(v)
}

/// Entry parsers per model.
trait JsonEntry: Scalar {
    fn parse(v: &Value, field: &str) -> Result<Self>;
    fn render(self) -> Value;
}

impl JsonEntry for C64 {
    fn parse(v: &Value, field: &str) -> Result<Self> {
        if let Some(x) = v.as_f64() {
            return Ok(C64::new(x, 0.0));
        }
        match v.as_array().map(|a| a.as_slice()) {
            Some([re, im]) => match (re.as_f64(), im.as_f64()) {
                (Some(re), Some(im)) => Ok(C64::new(re, im)),
                _ => Err(Error::input(field, format!("non-numeric complex entry {v}"))),
            },
            _ => Err(Error::input(field, format!("expected [re, im], found {v}"))),
        }
    }

    fn render(self) -> Value {
        json!([self.re, self.im])
    }
}

impl JsonEntry for bool {
    fn parse(v: &Value, field: &str) -> Result<Self> {
        match v {
            Value::Bool(b) => Ok(*b),
            _ => match v.as_u64() {
                Some(0) => Ok(false),
                Some(1) => Ok(true),
                _ => Err(Error::input(field, format!("expected 0 or 1, found {v}"))),
            },
        }
    }

    fn render(self) -> Value {
        json!(self as u8)
    }
}

fn parse_matrix<S: JsonEntry>(v: &Value, field: &str, shape: (usize, usize)) -> Result<Mor<S>> {
    let rows = as_array(v, field)?;
    if rows.len() != shape.0 {
        return Err(Error::input(
            field,
            format!("expected {} rows, found {}", shape.0, rows.len()),
        ));
    }
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let row = as_array(row, field)?;
        if row.len() != shape.1 {
            return Err(Error::input(
                field,
                format!("row {i} has {} entries, expected {}", row.len(), shape.1),
            ));
        }
        for (j, x) in row.iter().enumerate() {
            let s = S::parse(x, field)?;
            if !s.is_zero() {
                entries.push((i, j, s));
            }
        }
    }
    Mor::from_entries(shape.0, shape.1, entries)
}

fn render_matrix<S: JsonEntry>(m: &Mor<S>) -> Value {
    Value::Array(
        m.rows()
            .into_iter()
            .map(|r| Value::Array(r.into_iter().map(S::render).collect()))
            .collect(),
    )
}

fn parse_cs<S: JsonEntry>(doc: &Value, n: usize) -> Result<ClassicalStructure<S>> {
    let delta = parse_matrix(get(doc, "delta")?, "delta", (n * n, n))?;
    let top = parse_matrix(get(doc, "top")?, "top", (1, n))?;
    ClassicalStructure::new(delta, top)
}

pub fn parse_structure(text: &str) -> Result<AnyStructure> {
    let doc = parse_document(text)?;
    let n = as_usize(get(&doc, "n")?, "n")?;
    if n == 0 {
        return Err(Error::input("n", "must be positive"));
    }
    let square = n.checked_mul(n).and_then(|q| q.checked_mul(n)).unwrap_or(usize::MAX);
    if square > limits::max_dim() {
        return Err(Error::SizeLimit {
            what: "structure entries",
            size: square,
            limit: limits::max_dim(),
        });
    }
    match get(&doc, "model")?.as_str() {
        Some("complex") => Ok(AnyStructure::Complex(parse_cs(&doc, n)?)),
        Some("boolean") => Ok(AnyStructure::Boolean(parse_cs(&doc, n)?)),
        _ => Err(Error::input("model", "expected \"complex\" or \"boolean\"")),
    }
}

pub fn structure_to_json(s: &AnyStructure) -> Value {
    let (delta, top) = match s {
        AnyStructure::Complex(c) => (render_matrix(c.delta()), render_matrix(c.top())),
        AnyStructure::Boolean(c) => (render_matrix(c.delta()), render_matrix(c.top())),
    };
    json!({"model": s.model(), "n": s.n(), "delta": delta, "top": top})
}

pub fn parse_group(text: &str) -> Result<AbelianGroup> {
    let doc = parse_document(text)?;
    let order = as_usize(get(&doc, "order")?, "order")?;
    let zero = as_usize(get(&doc, "zero")?, "zero")?;
    let rows = as_array(get(&doc, "add")?, "add")?;
    if rows.len() != order {
        return Err(Error::input(
            "add",
            format!("expected {order} rows, found {}", rows.len()),
        ));
    }
    let add = rows
        .iter()
        .map(|r| as_array(r, "add")?.iter().map(|x| as_usize(x, "add")).collect())
        .collect::<Result<Vec<Vec<usize>>>>()?;
    AbelianGroup::new(add, zero)
}

pub fn group_to_json(g: &AbelianGroup) -> Value {
    json!({"order": g.order(), "add": g.table(), "zero": g.zero()})
}

pub fn parse_bitfn(text: &str) -> Result<BitFn> {
    let doc = parse_document(text)?;
    let bits = |field: &str| -> Result<u32> {
        let v = as_usize(get(&doc, field)?, field)?;
        u32::try_from(v).map_err(|_| Error::input(field, "too large"))
    };
    let (m, n) = (bits("m")?, bits("n")?);
    let table = as_array(get(&doc, "table")?, "table")?
        .iter()
        .map(|x| {
            x.as_u64()
                .ok_or_else(|| Error::input("table", format!("expected a nonnegative integer, found {x}")))
        })
        .collect::<Result<Vec<u64>>>()?;
    BitFn::new(m, n, table).map_err(|e| match e {
        Error::InvalidBitFn(d) => Error::input("table", d),
        other => other,
    })
}

pub fn bitfn_to_json(f: &BitFn) -> Value {
    json!({"m": f.m(), "n": f.n(), "table": f.table()})
}

fn parse_group_name(name: &str) -> Result<AbelianGroup> {
    let mut acc: Option<AbelianGroup> = None;
    for part in name.split('x') {
        let k: usize = part
            .strip_prefix('z')
            .and_then(|k| k.parse().ok())
            .filter(|&k| k > 0)
            .ok_or_else(|| Error::input("builtin", format!("bad group `{name}`, expected e.g. z3 or z2xz2")))?;
        let g = AbelianGroup::cyclic(k)?;
        acc = Some(match acc {
            None => g,
            Some(a) => AbelianGroup::product(&a, &g)?,
        });
    }
    acc.ok_or_else(|| Error::input("builtin", "empty group"))
}

/// Resolves `fhilb:N`, `hadamard:N`, `rect:zK` and `group:G` where `G` is
/// a product of cyclic groups such as `z2xz2`.
pub fn builtin(name: &str) -> Result<Loaded> {
    let (kind, arg) = name
        .split_once(':')
        .ok_or_else(|| Error::input("builtin", format!("`{name}` is not of the form kind:arg")))?;
    let size = || -> Result<usize> {
        arg.parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::input("builtin", format!("`{arg}` is not a positive size")))
    };
    let group = |g: &AbelianGroup| -> Result<()> {
        let n = g.order();
        if n > 64 {
            return Err(Error::SizeLimit {
                what: "builtin group order",
                size: n,
                limit: 64,
            });
        }
        Ok(())
    };
    match kind {
        "fhilb" | "hadamard" => {
            let n = size()?;
            if n > 256 {
                return Err(Error::SizeLimit {
                    what: "builtin dimension",
                    size: n,
                    limit: 256,
                });
            }
            let cs = if kind == "fhilb" {
                fhilb_computational(n)?
            } else {
                hadamard_structure(n)?
            };
            Ok(AnyStructure::Complex(cs).into())
        }
        "rect" => {
            let g = parse_group_name(arg)?;
            if g.order() > 16 {
                return Err(Error::SizeLimit {
                    what: "builtin rect group order",
                    size: g.order(),
                    limit: 16,
                });
            }
            let k = g.order();
            let r = rel_rect(&g)?;
            Ok(Loaded {
                structure: AnyStructure::Boolean(r.structure().clone()),
                rect: Some(k),
            })
        }
        "group" => {
            let g = parse_group_name(arg)?;
            group(&g)?;
            Ok(AnyStructure::Boolean(rel_group_structure(&g)?).into())
        }
        _ => Err(Error::input(
            "builtin",
            format!("unknown kind `{kind}`; expected fhilb, hadamard, rect or group"),
        )),
    }
}

/// A boolean vector as a set of carrier elements, e.g. `{00,01}`.
pub fn render_subset(v: &Mor<bool>, rect: Option<usize>) -> String {
    let items: Vec<String> = v
        .support()
        .into_iter()
        .map(|e| match rect {
            Some(k) if k <= 10 => format!("{}{}", e / k, e % k),
            Some(k) => format!("({},{})", e / k, e % k),
            None => e.to_string(),
        })
        .collect();
    format!("{{{}}}", items.join(","))
}

/// Basis vectors as JSON: strings of subsets for booleans, complex column
/// vectors as lists of `[re, im]` otherwise.
pub fn basis_to_json(l: &Loaded) -> Result<Value> {
    Ok(match &l.structure {
        AnyStructure::Boolean(c) => Value::Array(
            c.find_basis()?
                .iter()
                .map(|v| json!(render_subset(v, l.rect)))
                .collect(),
        ),
        AnyStructure::Complex(c) => Value::Array(
            c.find_basis()?
                .iter()
                .map(|v| Value::Array(v.entries().into_iter().map(C64::render).collect()))
                .collect(),
        ),
    })
}

#[cfg(test)]
#[allow(clippy::identity_op, clippy::erasing_op)]
mod tests {
    use super::*;

    #[test]
    fn structure_round_trip() {
        for name in ["fhilb:3", "hadamard:2", "rect:z2", "group:z2xz2"] {
            let l = builtin(name).unwrap();
            let text = structure_to_json(&l.structure).to_string();
            let back = parse_structure(&text).unwrap();
            match (&l.structure, &back) {
                (AnyStructure::Complex(a), AnyStructure::Complex(b)) => assert!(a.delta().approx_eq(b.delta(), 1e-12)),
                (AnyStructure::Boolean(a), AnyStructure::Boolean(b)) => assert_eq!(a, b),
                _ => panic!("model changed for {name}"),
            }
        }
    }

    #[test]
    fn errors_name_the_field() {
        let field = |text: &str| match parse_structure(text) {
            Err(Error::Input { field, .. }) => field,
            other => panic!("{other:?}"),
        };
        assert_eq!(field(r#"{"model":"boolean","n":1,"top":[[1]]}"#), "delta");
        assert_eq!(field(r#"{"model":"boolean","n":1,"delta":[[2]],"top":[[1]]}"#), "delta");
        assert_eq!(field(r#"{"model":"boolean","n":-1}"#), "n");
        assert_eq!(field(r#"{"model":"quantum","n":1,"delta":[[1]],"top":[[1]]}"#), "model");
        assert_eq!(
            field(r#"{"model":"complex","n":1,"delta":[[[1,0]]],"top":[[1,0]]}"#),
            "top"
        );
        assert_eq!(field("[1, 2"), "<document>");
        assert!(
            matches!(parse_bitfn(r#"{"m":1,"n":1,"table":[0,2]}"#), Err(Error::Input { field, .. }) if field == "table")
        );
        assert!(matches!(parse_bitfn(r#"{"m":1,"table":[0,1]}"#), Err(Error::Input { field, .. }) if field == "n"));
    }

    #[test]
    fn group_and_bitfn_round_trip() {
        let g = AbelianGroup::cyclic(4).unwrap();
        assert_eq!(parse_group(&group_to_json(&g).to_string()).unwrap(), g);
        assert!(matches!(
            parse_group(r#"{"order":2,"add":[[0,1],[1,1]],"zero":0}"#),
            Err(Error::InvalidGroup(_))
        ));
        let f = BitFn::new(2, 2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(parse_bitfn(&bitfn_to_json(&f).to_string()).unwrap(), f);
    }

    #[test]
    fn rect_basis_prints_as_sets() {
        let l = builtin("rect:z2").unwrap();
        assert_eq!(basis_to_json(&l).unwrap(), json!(["{00,01}", "{10,11}"]));
    }

    #[test]
    fn bad_builtins() {
        for s in ["fhilb", "fhilb:0", "rect:q2", "torus:3", "group:", "fhilb:x"] {
            assert!(matches!(builtin(s), Err(Error::Input { .. })), "{s}");
        }
        assert!(matches!(builtin("fhilb:100000"), Err(Error::SizeLimit { .. })));
    }
}
