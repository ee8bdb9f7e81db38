use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::ZooError;
use crate::exactla::{format_rational, parse_rational, Matrix, Rational};
use crate::poissonmodel::{ensure_valid, Bidegree, DolbeaultPoissonModel, Operator};

pub const FORMAT: &str = "kbmodel/1";

/// Whether fields the format does not know are an error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strictness {
    #[default]
    Strict,
    Lax,
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// On-disk form of a model. Bidegree keys are `"p,q"`, matrices are
/// row-major with rational entries written as strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format: String,
    pub name: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "is_false")]
    pub formal: bool,
    pub basis: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub del: Vec<BlockEntry>,
    #[serde(default)]
    pub delbar: Vec<BlockEntry>,
    #[serde(default)]
    pub contraction: Vec<BlockEntry>,
    #[serde(default)]
    pub metadata: BTreeMap<String, String>,
    #[serde(flatten, skip_serializing)]
    extra: BTreeMap<String, Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockEntry {
    pub from: [i32; 2],
    pub matrix: Vec<Vec<String>>,
    #[serde(flatten, skip_serializing)]
    extra: BTreeMap<String, Value>,
}

fn key(b: Bidegree) -> String {
    format!("{},{}", b.0, b.1)
}

fn field(path: impl Into<String>, message: impl Into<String>) -> ZooError {
    ZooError::Field {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_key(s: &str) -> Result<Bidegree, ZooError> {
    let bad = || field(format!("basis[{s:?}]"), "bidegree key must look like \"p,q\"");
    let (p, q) = s.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

/// Serialises a model. Wedge data is not stored.
pub fn save_model(m: &DolbeaultPoissonModel, name: &str, metadata: &BTreeMap<String, String>) -> ModelFile {
    let blocks = |op: Operator| {
        m.blocks(op)
            .iter()
            .map(|(s, x)| BlockEntry {
                from: [s.0, s.1],
                matrix: x
                    .to_dense()
                    .iter()
                    .map(|r| r.iter().map(format_rational).collect())
                    .collect(),
                extra: BTreeMap::new(),
            })
            .collect()
    };
    ModelFile {
        format: FORMAT.to_string(),
        name: name.to_string(),
        n: m.n(),
        formal: m.is_formal(),
        basis: m.labels().iter().map(|(b, l)| (key(*b), l.clone())).collect(),
        del: blocks(Operator::Del),
        delbar: blocks(Operator::Delbar),
        contraction: blocks(Operator::Contraction),
        metadata: metadata.clone(),
        extra: BTreeMap::new(),
    }
}

impl ModelFile {
    /// Parses JSON text; syntax and type errors carry line and column.
    pub fn from_json(text: &str, strictness: Strictness) -> Result<Self, ZooError> {
        let f: ModelFile = serde_json::from_str(text).map_err(|e| ZooError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if f.format != FORMAT {
            return Err(field("format", format!("expected {FORMAT:?}, found {:?}", f.format)));
        }
        if strictness == Strictness::Strict {
            if let Some(k) = f.extra.keys().next() {
                return Err(field(k.clone(), "unknown field"));
            }
            for (name, list) in [("del", &f.del), ("delbar", &f.delbar), ("contraction", &f.contraction)] {
                for (i, b) in list.iter().enumerate() {
                    if let Some(k) = b.extra.keys().next() {
                        return Err(field(format!("{name}[{i}].{k}"), "unknown field"));
                    }
                }
            }
        }
        Ok(f)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("plain data");
        s.push('\n');
        s
    }
}

fn read_blocks(
    list: &[BlockEntry],
    op: Operator,
    dims: &BTreeMap<Bidegree, usize>,
) -> Result<BTreeMap<Bidegree, Matrix>, ZooError> {
    let dim = |b: Bidegree| dims.get(&b).copied().unwrap_or(0);
    let mut out = BTreeMap::new();
    for (i, b) in list.iter().enumerate() {
        let path = format!("{}[{i}]", op.name());
        let s = (b.from[0], b.from[1]);
        let t = (s.0 + op.step().0, s.1 + op.step().1);
        let (rows, cols) = (dim(t), dim(s));
        if b.matrix.len() != rows {
            return Err(field(
                format!("{path}.matrix"),
                format!("expected {rows} rows for target ({}, {}), found {}", t.0, t.1, b.matrix.len()),
            ));
        }
        let mut parsed: Vec<Vec<Rational>> = Vec::with_capacity(rows);
        for (r, row) in b.matrix.iter().enumerate() {
            if row.len() != cols {
                return Err(field(
                    format!("{path}.matrix[{r}]"),
                    format!("expected {cols} entries for source ({}, {}), found {}", s.0, s.1, row.len()),
                ));
            }
            let row = row
                .iter()
                .enumerate()
                .map(|(c, x)| parse_rational(x).map_err(|e| field(format!("{path}.matrix[{r}][{c}]"), e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            parsed.push(row);
        }
        if out.contains_key(&s) {
            return Err(field(format!("{path}.from"), "duplicate block"));
        }
        out.insert(s, Matrix::from_rows(&parsed, cols).map_err(|e| field(&path, e.to_string()))?);
    }
    Ok(out)
}

/// Rebuilds and validates the model stored in `f`.
pub fn load_model(f: &ModelFile) -> Result<DolbeaultPoissonModel, ZooError> {
    let m = build_model(f)?;
    ensure_valid(&m)?;
    Ok(m)
}

/// Rebuilds the model stored in `f`, checking shapes but not the operator
/// identities.
pub fn build_model(f: &ModelFile) -> Result<DolbeaultPoissonModel, ZooError> {
    let mut labels = BTreeMap::new();
    for (k, l) in &f.basis {
        labels.insert(parse_key(k)?, l.clone());
    }
    let dims: BTreeMap<Bidegree, usize> = labels.iter().map(|(b, l): (&Bidegree, &Vec<String>)| (*b, l.len())).collect();
    let del = read_blocks(&f.del, Operator::Del, &dims)?;
    let delbar = read_blocks(&f.delbar, Operator::Delbar, &dims)?;
    let contraction = read_blocks(&f.contraction, Operator::Contraction, &dims)?;
    Ok(DolbeaultPoissonModel::new(f.n, labels, del, delbar, contraction)?.with_formal(f.formal))
}
