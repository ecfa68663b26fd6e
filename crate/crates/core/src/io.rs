//! JSON documents for algebras and morphisms.
//!
//! One flat schema covers every variety: the optional `join`, `meet` and
//! `zero` fields are present exactly when the variety uses them. Emitted
//! documents have their keys sorted.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{validate, FiniteAlgebra, VarietyTag};
use crate::error::{AlgebraError, IoError};
use crate::morphisms::Morphism;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    pub name: String,
    pub variety: String,
    pub size: usize,
    pub one: usize,
    pub arrow: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub join: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meet: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A morphism document refers to its algebras either inline or by a path
/// relative to the document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraSource {
    File(String),
    Inline(Box<AlgebraDocument>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDocument {
    pub dom: AlgebraSource,
    pub cod: AlgebraSource,
    pub map: Vec<usize>,
    pub tag: String,
}

fn rows(table: &[usize], n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return Vec::new();
    }
    table.chunks(n).map(<[usize]>::to_vec).collect()
}

fn flatten(
    location: &str,
    field: &'static str,
    rows: &[Vec<usize>],
    n: usize,
) -> Result<Vec<usize>, IoError> {
    let bad_shape = |found| IoError::Algebra {
        location: format!("{location}: {field}"),
        source: AlgebraError::TableShape {
            table: field,
            expected: n * n,
            found,
        },
    };
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(bad_shape(rows.iter().map(Vec::len).sum()));
    }
    Ok(rows.concat())
}

impl AlgebraDocument {
    /// Document for `alg` declared as `tag`. Tables outside the signature of
    /// `tag` are dropped.
    pub fn from_algebra(alg: &FiniteAlgebra, tag: VarietyTag) -> Self {
        let alg = alg.reduct(tag);
        let n = alg.size();
        AlgebraDocument {
            name: alg.name().to_string(),
            variety: tag.as_str().to_string(),
            size: n,
            one: alg.one(),
            arrow: rows(alg.arrow_table(), n),
            join: alg.join_table().map(|t| rows(t, n)),
            meet: alg.meet_table().map(|t| rows(t, n)),
            zero: alg.zero(),
            labels: alg.labels().map(<[String]>::to_vec),
        }
    }

    /// Builds the algebra and validates it under the declared variety.
    /// `location` prefixes every error.
    pub fn to_algebra(&self, location: &str) -> Result<(FiniteAlgebra, VarietyTag), IoError> {
        let (alg, tag) = self.build(location)?;
        let report = validate(&alg, tag).map_err(|source| IoError::Algebra {
            location: format!("{location}: variety"),
            source,
        })?;
        if !report.passed() {
            return Err(IoError::VarietyMismatch {
                location: format!("{location}: variety"),
                variety: tag,
                report: report
                    .failures
                    .first()
                    .map(ToString::to_string)
                    .unwrap_or_default(),
            });
        }
        Ok((alg, tag))
    }

    /// Builds the algebra and parses the declared variety without checking
    /// any axiom. Table shapes and ranges are still checked.
    pub fn build(&self, location: &str) -> Result<(FiniteAlgebra, VarietyTag), IoError> {
        let tag: VarietyTag = self.variety.parse().map_err(|_| IoError::UnknownVariety {
            location: format!("{location}: variety"),
            value: self.variety.clone(),
        })?;
        let n = self.size;
        let at = |field: &str| format!("{location}: {field}");
        let wrap = |field: &'static str| {
            move |source| IoError::Algebra {
                location: at(field),
                source,
            }
        };

        let arrow = flatten(location, "arrow", &self.arrow, n)?;
        let mut alg =
            FiniteAlgebra::new(self.name.clone(), n, arrow, self.one).map_err(wrap("arrow"))?;
        if let Some(j) = &self.join {
            alg = alg
                .with_join(flatten(location, "join", j, n)?)
                .map_err(wrap("join"))?;
        }
        if let Some(m) = &self.meet {
            alg = alg
                .with_meet(flatten(location, "meet", m, n)?)
                .map_err(wrap("meet"))?;
        }
        if let Some(z) = self.zero {
            alg = alg.with_zero(z).map_err(wrap("zero"))?;
        }
        if let Some(l) = &self.labels {
            alg = alg.with_labels(l.clone()).map_err(wrap("labels"))?;
        }
        Ok((alg, tag))
    }
}

fn syntax(location: &str, e: serde_json::Error) -> IoError {
    IoError::Syntax {
        location: location.to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

/// JSON text with keys in sorted order. Arrays of scalars stay on one line
/// so that tables read as rows.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("documents serialize");
    let mut s = String::new();
    write_value(&v, 0, &mut s);
    s.push('\n');
    s
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = |k: usize| "  ".repeat(k);
    match v {
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            let row: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&row.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(item, indent + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            // serde_json's default map is ordered by key
            for (k, (key, item)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

pub fn parse_algebra_document(text: &str, location: &str) -> Result<AlgebraDocument, IoError> {
    serde_json::from_str(text).map_err(|e| syntax(location, e))
}

pub fn parse_algebra(text: &str, location: &str) -> Result<(FiniteAlgebra, VarietyTag), IoError> {
    parse_algebra_document(text, location)?.to_algebra(location)
}

pub fn emit_algebra(alg: &FiniteAlgebra, tag: VarietyTag) -> String {
    to_canonical_json(&AlgebraDocument::from_algebra(alg, tag))
}

pub fn read_text(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn write_file(path: &Path, text: &str) -> Result<(), IoError> {
    fs::write(path, text).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_algebra(path: &Path) -> Result<(FiniteAlgebra, VarietyTag), IoError> {
    parse_algebra(&read_text(path)?, &path.display().to_string())
}

pub fn write_algebra(path: &Path, alg: &FiniteAlgebra, tag: VarietyTag) -> Result<(), IoError> {
    write_file(path, &emit_algebra(alg, tag))
}

impl AlgebraSource {
    fn resolve(&self, base: Option<&Path>, location: &str) -> Result<FiniteAlgebra, IoError> {
        match self {
            AlgebraSource::Inline(doc) => Ok(doc.to_algebra(location)?.0),
            AlgebraSource::File(rel) => {
                let path: PathBuf = match base {
                    Some(dir) => dir.join(rel),
                    None => PathBuf::from(rel),
                };
                Ok(read_algebra(&path)?.0)
            }
        }
    }
}

impl MorphismDocument {
    /// Inline document for `f`.
    pub fn from_morphism(f: &Morphism) -> Self {
        MorphismDocument {
            dom: AlgebraSource::Inline(Box::new(AlgebraDocument::from_algebra(
                f.dom(),
                signature_of(f.dom()),
            ))),
            cod: AlgebraSource::Inline(Box::new(AlgebraDocument::from_algebra(
                f.cod(),
                signature_of(f.cod()),
            ))),
            map: f.map().to_vec(),
            tag: f.tag().as_str().to_string(),
        }
    }

    /// Resolves both algebras (file references relative to `base`) and
    /// builds the morphism. Preservation is not checked here.
    pub fn to_morphism(&self, base: Option<&Path>, location: &str) -> Result<Morphism, IoError> {
        let tag: VarietyTag = self.tag.parse().map_err(|_| IoError::UnknownVariety {
            location: format!("{location}: tag"),
            value: self.tag.clone(),
        })?;
        let dom = self.dom.resolve(base, &format!("{location}: dom"))?;
        let cod = self.cod.resolve(base, &format!("{location}: cod"))?;
        Morphism::new(dom, cod, self.map.clone(), tag).map_err(|source| IoError::Morphism {
            location: format!("{location}: map"),
            source,
        })
    }
}

/// The smallest tag whose signature covers the tables `alg` carries.
pub fn signature_of(alg: &FiniteAlgebra) -> VarietyTag {
    match (alg.has_join(), alg.has_meet(), alg.zero().is_some()) {
        (false, false, _) => VarietyTag::Hil,
        (true, false, false) => VarietyTag::HilS,
        (true, false, true) => VarietyTag::HilS0,
        (false, true, _) => VarietyTag::IS,
        (true, true, false) => VarietyTag::GHey,
        (true, true, true) => VarietyTag::Hey,
    }
}

pub fn parse_morphism(
    text: &str,
    base: Option<&Path>,
    location: &str,
) -> Result<Morphism, IoError> {
    let doc: MorphismDocument = serde_json::from_str(text).map_err(|e| syntax(location, e))?;
    doc.to_morphism(base, location)
}

pub fn read_morphism(path: &Path) -> Result<Morphism, IoError> {
    parse_morphism(
        &read_text(path)?,
        path.parent(),
        &path.display().to_string(),
    )
}

pub fn emit_morphism(f: &Morphism) -> String {
    to_canonical_json(&MorphismDocument::from_morphism(f))
}
