//! JSON documents exchanged by the command-line tool. Every document
//! carries a `kind` field naming its schema.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::barcat::{FinCategory, MorphismInfo, Monoid};
use crate::error::{Error, Result};
use crate::ring::{Ring, RingSpec};
use crate::simplicial::{CyclicStructure, SimplicialSet};
use crate::suite::{Report, SuiteConfig};
use crate::witt::{TruncationSet, WittVector};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Document {
    Simplicial(SimplicialDoc),
    Category(CategoryDoc),
    Monoid(MonoidDoc),
    Witt(WittDoc),
    Report(Report),
    SuiteConfig(SuiteConfig),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Simplicial(_) => "simplicial",
            Document::Category(_) => "category",
            Document::Monoid(_) => "monoid",
            Document::Witt(_) => "witt",
            Document::Report(_) => "report",
            Document::SuiteConfig(_) => "suite-config",
        }
    }
}

const KINDS: [&str; 6] = ["simplicial", "category", "monoid", "witt", "report", "suite-config"];

/// Parses any document. Malformed JSON is a [`Error::Parse`] with the byte
/// offset of the problem; well-formed JSON that does not fit the schema
/// named by its `kind` is an [`Error::Schema`].
pub fn parse_document(text: &str) -> Result<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| parse_error(text, &e))?;
    let kind = value
        .get("kind")
        .ok_or_else(|| Error::Schema("missing required field `kind`".into()))?
        .as_str()
        .ok_or_else(|| Error::Schema("`kind` must be a string".into()))?
        .to_string();
    if !KINDS.contains(&kind.as_str()) {
        return Err(Error::Schema(format!("unknown kind `{kind}`; expected one of {}", KINDS.join(", "))));
    }
    serde_json::from_value(value).map_err(|e| Error::Schema(format!("{kind}: {e}")))
}

fn parse_error(text: &str, e: &serde_json::Error) -> Error {
    let line_start: usize = text.split_inclusive('\n').take(e.line().saturating_sub(1)).map(str::len).sum();
    let offset = if e.is_eof() { text.len() } else { (line_start + e.column().saturating_sub(1)).min(text.len()) };
    Error::Parse { offset, message: e.to_string() }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("documents serialize") + "\n"
}

/// `{"truncation": N, "counts": [...], "faces": [[k, i, [...]], ...],
/// "degeneracies": [[k, i, [...]], ...], "cyclic": [[k, [...]], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialDoc {
    pub truncation: usize,
    pub counts: Vec<usize>,
    pub faces: Vec<(usize, usize, Vec<usize>)>,
    pub degeneracies: Vec<(usize, usize, Vec<usize>)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclic: Option<Vec<(usize, Vec<usize>)>>,
    /// Order factor of the cyclic operators, `t_k^{period(k+1)} = id`.
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub period: usize,
}

fn one() -> usize {
    1
}

fn is_one(n: &usize) -> bool {
    *n == 1
}

impl SimplicialDoc {
    pub fn from_set(x: &SimplicialSet) -> Self {
        let n = x.truncation();
        let faces = (1..=n).flat_map(|k| (0..=k).map(move |i| (k, i, x.face_map(k, i).to_vec()))).collect();
        let degeneracies =
            (0..n).flat_map(|k| (0..=k).map(move |i| (k, i, x.degeneracy_map(k, i).to_vec()))).collect();
        let cyclic = x.cyclic().map(|c| c.rotations.iter().cloned().enumerate().collect());
        SimplicialDoc {
            truncation: n,
            counts: x.counts().to_vec(),
            faces,
            degeneracies,
            cyclic,
            period: x.cyclic().map_or(1, |c| c.period),
        }
    }

    pub fn to_set(&self) -> Result<SimplicialSet> {
        let n = self.truncation;
        if self.counts.len() != n + 1 {
            return Err(Error::Schema(format!("counts must list degrees 0..={n}")));
        }
        let place = |tables: &[(usize, usize, Vec<usize>)], what: &str, arity: &dyn Fn(usize) -> usize| {
            let mut out: Vec<Vec<Option<Vec<usize>>>> = (0..=n).map(|k| vec![None; arity(k)]).collect();
            for (k, i, t) in tables {
                let slot = out
                    .get_mut(*k)
                    .and_then(|row| row.get_mut(*i))
                    .ok_or_else(|| Error::Schema(format!("{what}_{i} in degree {k} is out of range")))?;
                if slot.replace(t.clone()).is_some() {
                    return Err(Error::Schema(format!("{what}_{i} in degree {k} given twice")));
                }
            }
            out.into_iter()
                .enumerate()
                .map(|(k, row)| {
                    row.into_iter()
                        .enumerate()
                        .map(|(i, t)| t.ok_or_else(|| Error::Schema(format!("{what}_{i} in degree {k} is missing"))))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()
        };
        let faces = place(&self.faces, "d", &|k| if k == 0 { 0 } else { k + 1 })?;
        let degeneracies = place(&self.degeneracies, "s", &|k| if k < n { k + 1 } else { 0 })?;
        let cyclic = match &self.cyclic {
            None => None,
            Some(list) => {
                let tables: Vec<(usize, usize, Vec<usize>)> = list.iter().map(|(k, t)| (*k, 0, t.clone())).collect();
                let rotations = place(&tables, "t", &|_| 1)?.into_iter().map(|mut v| v.remove(0)).collect();
                Some(CyclicStructure { period: self.period, rotations })
            }
        };
        SimplicialSet::from_parts(self.counts.clone(), faces, degeneracies, cyclic)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub id: String,
    pub src: String,
    pub dst: String,
}

/// `{"objects": [...], "morphisms": [{"id", "src", "dst"}], "identities":
/// [...], "compose": [[g, f, "g∘f"], ...]}`, morphisms named by id and
/// objects by name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryDoc {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismDoc>,
    pub identities: Vec<String>,
    pub compose: Vec<(String, String, String)>,
}

fn index_of(names: &[String], what: &str) -> Result<HashMap<String, usize>> {
    let mut out = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if out.insert(n.clone(), i).is_some() {
            return Err(Error::Schema(format!("duplicate {what} `{n}`")));
        }
    }
    Ok(out)
}

impl CategoryDoc {
    pub fn from_category(c: &FinCategory) -> Self {
        let ids: Vec<String> = (0..c.morphism_count()).map(|m| format!("m{m}")).collect();
        let morphisms = c
            .morphisms()
            .iter()
            .zip(&ids)
            .map(|(m, id)| MorphismDoc { id: id.clone(), src: c.objects()[m.src].clone(), dst: c.objects()[m.dst].clone() })
            .collect();
        let mut compose: Vec<(String, String, String)> = c
            .composable_pairs()
            .map(|(g, f)| (ids[g].clone(), ids[f].clone(), ids[c.compose(g, f)].clone()))
            .collect();
        compose.sort();
        CategoryDoc {
            objects: c.objects().to_vec(),
            morphisms,
            identities: c.identities().iter().map(|&i| ids[i].clone()).collect(),
            compose,
        }
    }

    pub fn to_category(&self) -> Result<FinCategory> {
        let objects = index_of(&self.objects, "object")?;
        let ids: Vec<String> = self.morphisms.iter().map(|m| m.id.clone()).collect();
        let morphisms = index_of(&ids, "morphism id")?;
        let object = |n: &str| objects.get(n).copied().ok_or_else(|| Error::Schema(format!("unknown object `{n}`")));
        let morphism = |n: &str| morphisms.get(n).copied().ok_or_else(|| Error::Schema(format!("unknown morphism `{n}`")));
        let infos = self
            .morphisms
            .iter()
            .map(|m| Ok(MorphismInfo { src: object(&m.src)?, dst: object(&m.dst)?, label: m.id.clone() }))
            .collect::<Result<Vec<_>>>()?;
        let identities = self.identities.iter().map(|i| morphism(i)).collect::<Result<Vec<_>>>()?;
        let mut table = HashMap::new();
        for (g, f, h) in &self.compose {
            if table.insert((morphism(g)?, morphism(f)?), morphism(h)?).is_some() {
                return Err(Error::Schema(format!("composite {g}∘{f} given twice")));
            }
        }
        FinCategory::from_parts(self.objects.clone(), infos, identities, table)
    }
}

/// `{"elements": [...], "table": [[a·b index, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

impl MonoidDoc {
    pub fn from_monoid(m: &Monoid) -> Self {
        MonoidDoc { elements: m.elements().to_vec(), table: m.table().to_vec() }
    }

    pub fn to_monoid(&self) -> Result<Monoid> {
        Monoid::new(self.elements.clone(), self.table.clone())
    }
}

/// `{"ring": "z:0", "S": [...], "coords": [...]}`; coordinates are written
/// as strings and read from strings or JSON numbers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WittDoc {
    pub ring: RingSpec,
    #[serde(rename = "S")]
    pub set: TruncationSet,
    #[serde(deserialize_with = "scalar_strings")]
    pub coords: Vec<String>,
}

fn scalar_strings<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<String>, D::Error> {
    let values = Vec::<Value>::deserialize(d)?;
    values
        .into_iter()
        .map(|v| match v {
            Value::String(s) => Ok(s),
            Value::Number(n) => Ok(n.to_string()),
            other => Err(serde::de::Error::custom(format!("coordinate {other} is not a number or string"))),
        })
        .collect()
}

impl WittDoc {
    pub fn from_vector<R: Ring>(v: &WittVector<R>) -> Self {
        WittDoc { ring: v.ring().spec(), set: v.set().clone(), coords: v.format_coords() }
    }

    /// Reads the coordinates in `ring`, which must be the ring named by the
    /// document.
    pub fn to_vector<R: Ring>(&self, ring: R) -> Result<WittVector<R>> {
        if ring.spec() != self.ring {
            return Err(Error::Mismatch);
        }
        let coords = self.coords.iter().map(|c| ring.parse(c)).collect::<Result<Vec<_>>>()?;
        WittVector::from_coords(ring, self.set.clone(), coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Integers;
    use crate::simplicial::{circle, sphere2};

    #[test]
    fn simplicial_round_trip() {
        for x in [circle(4), sphere2(3)] {
            let text = to_json(&Document::Simplicial(SimplicialDoc::from_set(&x)));
            let Document::Simplicial(doc) = parse_document(&text).unwrap() else { panic!() };
            assert_eq!(doc.to_set().unwrap(), x);
        }
    }

    #[test]
    fn category_and_monoid_round_trip() {
        let m = Monoid::symmetric3();
        let text = to_json(&Document::Monoid(MonoidDoc::from_monoid(&m)));
        let Document::Monoid(doc) = parse_document(&text).unwrap() else { panic!() };
        assert_eq!(doc.to_monoid().unwrap(), m);
        let c = m.as_category();
        let doc = CategoryDoc::from_category(&c);
        let back = doc.to_category().unwrap();
        assert_eq!(back.morphism_count(), 6);
        assert!(back.validate().is_empty());
        assert_eq!(CategoryDoc::from_category(&back).compose, doc.compose);
    }

    #[test]
    fn witt_accepts_numbers_and_strings() {
        let text = r#"{"kind": "witt", "ring": "z:0", "S": [1, 2, 4], "coords": [0, "1", -3]}"#;
        let Document::Witt(doc) = parse_document(text).unwrap() else { panic!() };
        let v = doc.to_vector(Integers).unwrap();
        assert_eq!(v.format_coords(), vec!["0", "1", "-3"]);
        assert_eq!(WittDoc::from_vector(&v).coords, doc.coords);
    }

    #[test]
    fn errors_are_classified() {
        let text = r#"{"kind": "witt", "ring": "z:0", "#;
        match parse_document(text) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, text.len()),
            other => panic!("{other:?}"),
        }
        let bad = "{\n  \"kind\": \"monoid\",\n  \"elements\": [\"e\"] x\n}";
        match parse_document(bad) {
            Err(Error::Parse { offset, .. }) => assert_eq!(&bad[offset..offset + 1], "x"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_document(r#"{"kind": "nope"}"#), Err(Error::Schema(_))));
        assert!(matches!(parse_document(r#"{"elements": []}"#), Err(Error::Schema(_))));
        assert!(matches!(parse_document(r#"{"kind": "witt", "ring": "z:0"}"#), Err(Error::Schema(_))));
        assert!(matches!(
            parse_document(r#"{"kind": "witt", "ring": "z:0", "S": [2], "coords": [1]}"#),
            Err(Error::Schema(_))
        ));
    }
}
