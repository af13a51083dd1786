//! JSON text formats.
//!
//! A matrix document is
//!
//! ```json
//! {"field": "gf:3", "rows": [["1", "2"], ["0", "1"]]}
//! ```
//!
//! with `field` one of `rat`, `gf:<p>`, `quad:<a>` and every entry a scalar
//! string in that field. Unknown keys, non-string entries, ragged or empty
//! rows and out-of-field scalars are rejected with the line and column where
//! parsing stopped.
//!
//! A census document extends the matrix document: `field` and `rows` hold the
//! coefficient, followed by
//!
//! | key              | value                                              |
//! |------------------|----------------------------------------------------|
//! | `jordan`         | Jordan shorthand such as `"0^2"`, or `null`        |
//! | `commuting_only` | bool                                               |
//! | `total`          | number of solutions                                |
//! | `by_rank`        | object, rank (as a string) to count                |
//! | `by_kernel`      | object, kernel label to count                      |
//! | `family_tallies` | object, family name to count (empty if unclassified) |
//! | `solutions`      | array of `{"rows", "rank", "kernel", "family"?}`   |
//!
//! Solutions appear in row-major lexicographic order. Parsing a census
//! recomputes every summary field and rejects documents whose stored
//! summaries or solutions do not check out.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::{self, DeserializeSeed, Deserializer, MapAccess, SeqAccess, Visitor};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;
use crate::oracle::{kernel_label, CensusReport, FamilyTag};
use crate::ybe::{residual, PropertyVerdict};

fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: strip_position(&e.to_string()),
    }
}

/// serde_json appends " at line L column C"; the position is kept separately.
fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

struct RowsSeed<'a>(Option<&'a Field>);

impl<'de> DeserializeSeed<'de> for RowsSeed<'_> {
    type Value = Vec<Vec<Scalar>>;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> std::result::Result<Self::Value, D::Error> {
        d.deserialize_seq(self)
    }
}

impl<'de> Visitor<'de> for RowsSeed<'_> {
    type Value = Vec<Vec<Scalar>>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an array of rows")
    }

    fn visit_seq<A: SeqAccess<'de>>(
        self,
        mut seq: A,
    ) -> std::result::Result<Self::Value, A::Error> {
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        while let Some(row) = seq.next_element_seed(RowSeed(self.0))? {
            if let Some(first) = rows.first() {
                if row.len() != first.len() {
                    return Err(de::Error::custom(format!(
                        "row {} has {} entries, expected {}",
                        rows.len() + 1,
                        row.len(),
                        first.len()
                    )));
                }
            } else if row.is_empty() {
                return Err(de::Error::custom("empty row"));
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(de::Error::custom("matrix has no rows"));
        }
        Ok(rows)
    }
}

struct RowSeed<'a>(Option<&'a Field>);

impl<'de> DeserializeSeed<'de> for RowSeed<'_> {
    type Value = Vec<Scalar>;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> std::result::Result<Self::Value, D::Error> {
        d.deserialize_seq(self)
    }
}

impl<'de> Visitor<'de> for RowSeed<'_> {
    type Value = Vec<Scalar>;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("an array of scalar strings")
    }

    fn visit_seq<A: SeqAccess<'de>>(
        self,
        mut seq: A,
    ) -> std::result::Result<Self::Value, A::Error> {
        let mut row = Vec::new();
        while let Some(text) = seq.next_element::<String>()? {
            // without a valid field the field key reports the error
            let value = match self.0 {
                Some(f) => f
                    .parse_scalar(&text)
                    .map_err(|m| de::Error::custom(format!("scalar {text:?}: {m}")))?,
                None => Scalar::Residue(0),
            };
            row.push(value);
        }
        Ok(row)
    }
}

fn field_from<E: de::Error>(text: &str) -> std::result::Result<Field, E> {
    Field::from_str(text).map_err(|e| E::custom(e.to_string()))
}

/// First pass: only the field name, so the second pass can validate scalars
/// in place regardless of key order.
#[derive(Deserialize)]
struct FieldOnly {
    field: String,
}

fn field_hint(text: &str) -> Option<Field> {
    // unknown keys are tolerated here; the second pass rejects them
    serde_json::from_str::<FieldOnly>(text)
        .ok()?
        .field
        .parse()
        .ok()
}

struct MatrixDoc<'a>(Option<&'a Field>);

impl<'de> DeserializeSeed<'de> for MatrixDoc<'_> {
    type Value = Matrix;

    fn deserialize<D: Deserializer<'de>>(self, d: D) -> std::result::Result<Matrix, D::Error> {
        d.deserialize_map(self)
    }
}

impl<'de> Visitor<'de> for MatrixDoc<'_> {
    type Value = Matrix;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a matrix object with keys \"field\" and \"rows\"")
    }

    fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> std::result::Result<Matrix, A::Error> {
        let mut field = None;
        let mut rows = None;
        while let Some(key) = map.next_key::<String>()? {
            match key.as_str() {
                "field" if field.is_none() => {
                    field = Some(field_from::<A::Error>(&map.next_value::<String>()?)?)
                }
                "rows" if rows.is_none() => rows = Some(map.next_value_seed(RowsSeed(self.0))?),
                "field" | "rows" => return Err(de::Error::duplicate_field("key")),
                other => return Err(de::Error::unknown_field(other, &["field", "rows"])),
            }
        }
        let field = field.ok_or_else(|| de::Error::missing_field("field"))?;
        let rows = rows.ok_or_else(|| de::Error::missing_field("rows"))?;
        Matrix::from_rows(&field, rows).map_err(|e| de::Error::custom(e.to_string()))
    }
}

/// Parses a matrix document.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let hint = field_hint(text);
    let mut de = serde_json::Deserializer::from_str(text);
    let m = MatrixDoc(hint.as_ref())
        .deserialize(&mut de)
        .map_err(parse_error)?;
    de.end().map_err(parse_error)?;
    Ok(m)
}

fn rows_value(m: &Matrix) -> Value {
    Value::Array(
        m.to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(|s| Value::String(s.to_string())).collect()))
            .collect(),
    )
}

/// `{"field": …, "rows": …}` as a JSON value.
pub fn matrix_value(m: &Matrix) -> Value {
    json!({ "field": m.field().to_string(), "rows": rows_value(m) })
}

/// Pretty JSON with one matrix row per line. Object keys keep insertion
/// order, so the output is deterministic.
pub fn to_pretty(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn is_scalar_row(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(_) if is_scalar_row(v) => out.push_str(&compact(v)),
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, item)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(item, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

pub fn matrix_to_json(m: &Matrix) -> String {
    to_pretty(&matrix_value(m))
}

/// `{"field": …, "basis": [rows, …]}` for a list of same-shape matrices.
pub fn matrix_list_value(field: &Field, ms: &[Matrix]) -> Value {
    json!({ "field": field.to_string(), "basis": ms.iter().map(rows_value).collect::<Vec<_>>() })
}

fn counts_value<K: ToString>(m: &BTreeMap<K, usize>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), json!(v))).collect())
}

pub fn census_value(r: &CensusReport) -> Value {
    let jordan = r.jordan.as_ref().map(|j| j.to_string());
    let solutions: Vec<Value> = r
        .solutions
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let mut entry = serde_json::Map::new();
            entry.insert("rows".into(), rows_value(x));
            entry.insert("rank".into(), json!(x.rank()));
            entry.insert("kernel".into(), json!(kernel_label(r.jordan.as_ref(), x)));
            if let Some(tags) = &r.tags {
                entry.insert("family".into(), json!(tags[i].to_string()));
            }
            Value::Object(entry)
        })
        .collect();
    json!({
        "field": r.field.to_string(),
        "rows": rows_value(&r.coefficient),
        "jordan": jordan,
        "commuting_only": r.commuting_only,
        "total": r.total(),
        "by_rank": counts_value(&r.by_rank),
        "by_kernel": counts_value(&r.by_kernel),
        "family_tallies": counts_value(&r.family_tallies),
        "solutions": solutions,
    })
}

pub fn census_to_json(r: &CensusReport) -> String {
    to_pretty(&census_value(r))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCensus {
    field: String,
    rows: Value,
    jordan: Option<String>,
    commuting_only: bool,
    total: usize,
    by_rank: BTreeMap<usize, usize>,
    by_kernel: BTreeMap<String, usize>,
    family_tallies: BTreeMap<String, usize>,
    solutions: Vec<RawSolution>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolution {
    rows: Vec<Vec<String>>,
    rank: usize,
    kernel: String,
    family: Option<String>,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(format!("census document: {}", msg.into()))
}

fn rows_from_text(field: &Field, rows: &[Vec<String>]) -> Result<Matrix> {
    let parsed = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|t| field.parse_scalar(t).map_err(invalid))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(field, parsed)
}

/// Parses a census document and re-derives everything it claims.
pub fn parse_census(text: &str) -> Result<CensusReport> {
    let raw: RawCensus = serde_json::from_str(text).map_err(parse_error)?;
    let field: Field = raw.field.parse()?;
    // the coefficient goes through the strict matrix reader
    let coefficient = parse_matrix(&json!({ "field": raw.field, "rows": raw.rows }).to_string())?;
    let solutions = raw
        .solutions
        .iter()
        .map(|s| rows_from_text(&field, &s.rows))
        .collect::<Result<Vec<_>>>()?;
    for (i, x) in solutions.iter().enumerate() {
        if !residual(&coefficient, x)?.is_solution {
            return Err(invalid(format!(
                "solution {i} does not satisfy the equation"
            )));
        }
    }
    let mut report = CensusReport::build(&coefficient, raw.commuting_only, solutions);
    let jordan = report.jordan.as_ref().map(|j| j.to_string());
    if raw.jordan != jordan {
        return Err(invalid(format!(
            "jordan {:?} does not match the coefficient",
            raw.jordan
        )));
    }
    if raw.total != report.total() {
        return Err(invalid(format!(
            "total {} but {} solutions listed",
            raw.total,
            report.total()
        )));
    }
    if raw.by_rank != report.by_rank || raw.by_kernel != report.by_kernel {
        return Err(invalid(
            "partition counts do not match the listed solutions",
        ));
    }
    for (i, (s, x)) in raw.solutions.iter().zip(&report.solutions).enumerate() {
        if s.rank != x.rank() || s.kernel != kernel_label(report.jordan.as_ref(), x) {
            return Err(invalid(format!("rank or kernel of solution {i} is wrong")));
        }
    }
    let tagged = raw.solutions.iter().filter(|s| s.family.is_some()).count();
    if tagged == raw.solutions.len() && tagged > 0 {
        let tags = raw
            .solutions
            .iter()
            .map(|s| s.family.as_deref().unwrap_or_default().parse())
            .collect::<Result<Vec<FamilyTag>>>()?;
        for t in &tags {
            *report
                .family_tallies
                .entry(t.family().to_string())
                .or_insert(0) += 1;
        }
        report.tags = Some(tags);
    } else if tagged != 0 {
        return Err(invalid(
            "either every solution or none carries a family tag",
        ));
    }
    if raw.family_tallies != report.family_tallies {
        return Err(invalid("family tallies do not match the tags"));
    }
    Ok(report)
}

/// `{"property", "holds", "witness"}`.
pub fn verdict_value(v: &PropertyVerdict) -> Value {
    json!({
        "property": v.property.name(),
        "holds": v.holds,
        "witness": v.witness.as_ref().map(|w| w.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jordan::JordanSpec;
    use crate::oracle::{classify_against_families, enumerate_solutions, EnumerationOptions};

    fn position(e: Error) -> (usize, usize) {
        match e {
            Error::Parse { line, column, .. } => (line, column),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn round_trip_every_field() {
        for (field, rows) in [
            ("rat", vec![vec!["-3/4", "1"], vec!["0", "2"]]),
            ("gf:5", vec![vec!["4", "1"], vec!["0", "3"]]),
            ("quad:2", vec![vec!["1/2+3*s", "s"], vec!["0", "-1"]]),
        ] {
            let doc = json!({ "field": field, "rows": rows }).to_string();
            let m = parse_matrix(&doc).unwrap();
            assert_eq!(m.field().to_string(), field);
            let again = parse_matrix(&matrix_to_json(&m)).unwrap();
            assert_eq!(again, m);
        }
    }

    #[test]
    fn key_order_does_not_matter() {
        let m = parse_matrix(r#"{"rows": [["6"]], "field": "gf:5"}"#).unwrap();
        assert_eq!(m.get(0, 0), &Scalar::Residue(1));
    }

    #[test]
    fn pretty_output_is_one_row_per_line() {
        let m = Matrix::from_ints(&Field::Rationals, &[[1, 2], [3, 4]]);
        assert_eq!(
            matrix_to_json(&m),
            "{\n  \"field\": \"rat\",\n  \"rows\": [\n    [\"1\", \"2\"],\n    [\"3\", \"4\"]\n  ]\n}\n"
        );
    }

    #[test]
    fn strictness_with_positions() {
        let bad_scalar = "{\"field\": \"rat\",\n \"rows\": [[\"1\", \"x\"]]}";
        assert_eq!(position(parse_matrix(bad_scalar).unwrap_err()).0, 2);
        let ragged = r#"{"field": "rat", "rows": [["1", "2"], ["3"]]}"#;
        assert!(matches!(parse_matrix(ragged), Err(Error::Parse { .. })));
        for doc in [
            r#"{"field": "rat", "rows": [[1]]}"#,
            r#"{"field": "rat", "rows": []}"#,
            r#"{"field": "rat", "rows": [[]]}"#,
            r#"{"field": "rat", "rows": [["1"]], "extra": 0}"#,
            r#"{"field": "gf:4", "rows": [["1"]]}"#,
            r#"{"field": "quad:4", "rows": [["1"]]}"#,
            r#"{"rows": [["1"]]}"#,
            r#"{"field": "rat", "rows": [["1"]]} trailing"#,
            r#"{"field": "rat", "field": "rat", "rows": [["1"]]}"#,
            "",
        ] {
            assert!(
                matches!(parse_matrix(doc), Err(Error::Parse { .. })),
                "{doc}"
            );
        }
        let (line, column) = position(
            parse_matrix("{\"field\": \"rat\", \"rows\": [[\"1\"]],\n  \"bogus\": 1}").unwrap_err(),
        );
        assert_eq!(line, 2);
        assert!(column > 0);
    }

    fn census(p: u64, spec: &str) -> CensusReport {
        let f = Field::prime(p).unwrap();
        let a = JordanSpec::parse(&f, spec).unwrap().matrix();
        enumerate_solutions(&a, EnumerationOptions::default()).unwrap()
    }

    #[test]
    fn census_round_trip() {
        let plain = census(3, "0^2");
        assert_eq!(parse_census(&census_to_json(&plain)).unwrap(), plain);
        let tagged = classify_against_families(&census(2, "1^2"));
        let text = census_to_json(&tagged);
        assert_eq!(parse_census(&text).unwrap(), tagged);
        assert_eq!(census_to_json(&parse_census(&text).unwrap()), text);
    }

    #[test]
    fn census_rejects_tampering() {
        let text = census_to_json(&census(2, "0^2"));
        let mut v: Value = serde_json::from_str(&text).unwrap();
        v["total"] = json!(7);
        assert!(parse_census(&v.to_string()).is_err());
        let mut v: Value = serde_json::from_str(&text).unwrap();
        v["solutions"][1]["rows"] = json!([["1", "1"], ["1", "1"]]);
        assert!(parse_census(&v.to_string()).is_err());
        let mut v: Value = serde_json::from_str(&text).unwrap();
        v["surprise"] = json!(true);
        assert!(matches!(
            parse_census(&v.to_string()),
            Err(Error::Parse { .. })
        ));
    }
}
