//! JSON documents with exact rational entries.
//!
//! Rationals are strings `"n"` or `"p/q"` (plain JSON integers are accepted on
//! input). Emission is canonical: reduced fractions, zero cochain entries
//! omitted, entries sorted, scalar arrays kept on one line.

use std::fmt::{self, Write as _};

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cochain::{Arg, Cochain};
use crate::deformation::{DeformationDatum, EquivalenceWitness};
use crate::error::{Error, Result};
use crate::extension::{AbelianExtension, DerPairRepresentation, ExtensionCocycle};
use crate::linalg::{parse_scalar, Matrix, Scalar};
use crate::prelie::{DerPair, PreLieAlgebra, Representation};

/// A rational entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Scalar);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Q;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<Q, E> {
                parse_scalar(s).map(Q).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> std::result::Result<Q, E> {
                Ok(Q(crate::linalg::int(n)))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> std::result::Result<Q, E> {
                i64::try_from(n).map_err(E::custom).and_then(|n| self.visit_i64(n))
            }
        }
        d.deserialize_any(V)
    }
}

type Vector = Vec<Q>;
/// Row-major.
type Rows = Vec<Vector>;
/// `table[i][j]` holds the coordinates of `e_i · e_j`.
type Table = Vec<Vec<Vector>>;

/// One stored value of an alternating cochain: `args` lists the wedge slots
/// followed by the tail slot, 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub args: Vec<usize>,
    pub value: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PrelieDoc {
    pub dim: usize,
    pub product: Table,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub dim_g: usize,
    pub dim_v: usize,
    pub product: Table,
    pub rho: Vec<Rows>,
    pub mu: Vec<Rows>,
}

/// A regular pair `(g, D)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationDoc {
    pub dim: usize,
    pub product: Table,
    pub d: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerPairDoc {
    pub dim_g: usize,
    pub dim_v: usize,
    pub product: Table,
    pub rho: Vec<Rows>,
    pub mu: Vec<Rows>,
    pub d: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainDoc {
    pub arity: usize,
    pub dom: usize,
    pub cod: usize,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    pub n: Rows,
    pub s: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationDoc {
    pub dim_g: usize,
    pub dim_v: usize,
    pub omega: Table,
    pub sigma: Vec<Rows>,
    pub tau: Vec<Rows>,
    pub dhat: Rows,
    /// `(N, S)` mapping this deformation to the one it is compared with.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub k: Rows,
    pub rho: Vec<Rows>,
    pub mu: Vec<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    /// `θ: g ⊗ g → V` as cochain entries.
    pub theta: Vec<Entry>,
    pub xi: Rows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TotalDoc {
    pub product: Table,
    pub d: Rows,
    pub inject: Rows,
    pub project: Rows,
}

/// Any of: the representation `(V, K, ρ̃, μ̃)`, a cocycle `(θ, ξ)`, a concrete
/// extension `ĝ` with `ι` and `p`, and a section.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionDoc {
    pub dim_g: usize,
    pub dim_v: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cocycle: Option<CocycleDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<TotalDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub section: Option<Rows>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Prelie(PrelieDoc),
    Representation(RepresentationDoc),
    Derivation(DerivationDoc),
    Derpair(DerPairDoc),
    Cochain(CochainDoc),
    Deformation(DeformationDoc),
    Extension(ExtensionDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Prelie(_) => "prelie",
            Document::Representation(_) => "representation",
            Document::Derivation(_) => "derivation",
            Document::Derpair(_) => "derpair",
            Document::Cochain(_) => "cochain",
            Document::Deformation(_) => "deformation",
            Document::Extension(_) => "extension",
        }
    }
}

/// Parse a document. Syntax and rational errors carry line and column; shape
/// errors name the offending field.
pub fn parse(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text).map_err(|e| Error::Parse(locate(text, &e)))?;
    check_shapes(&doc)?;
    Ok(doc)
}

/// Tagged documents are buffered before the body is decoded, which drops the
/// position of bad rationals; recover it from the literal in the source.
fn locate(text: &str, e: &serde_json::Error) -> String {
    let msg = e.to_string();
    if e.line() > 0 {
        return msg;
    }
    let literal = msg.split('"').nth(1).map(|l| format!("\"{l}\""));
    match literal.and_then(|l| text.find(&l)) {
        Some(pos) => {
            let line = text[..pos].matches('\n').count() + 1;
            let column = pos - text[..pos].rfind('\n').map_or(0, |i| i + 1) + 1;
            format!("{msg} at line {line} column {column}")
        }
        None => msg,
    }
}

/// Canonical text of a document, newline terminated.
pub fn emit(doc: &Document) -> String {
    to_canonical_json(&serde_json::to_value(doc).expect("documents serialize"))
}

/// Pretty JSON with arrays of scalars kept on one line.
pub fn to_canonical_json(v: &serde_json::Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, v: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            let _ = write!(out, "[{}]", parts.join(", "));
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (k, x) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, x, indent + 1);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (k, (key, x)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::String(key.clone()));
                write_value(out, x, indent + 1);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn shape_err(field: &str, msg: String) -> Error {
    Error::Parse(format!("{field}: {msg}"))
}

fn check_len(field: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(shape_err(field, format!("expected length {want}, got {got}")));
    }
    Ok(())
}

fn check_rows(field: &str, rows: &Rows, r: usize, c: usize) -> Result<()> {
    check_len(field, rows.len(), r)?;
    for (i, row) in rows.iter().enumerate() {
        check_len(&format!("{field}[{i}]"), row.len(), c)?;
    }
    Ok(())
}

fn check_table(field: &str, t: &Table, dim: usize, cod: usize) -> Result<()> {
    check_len(field, t.len(), dim)?;
    for (i, row) in t.iter().enumerate() {
        check_rows(&format!("{field}[{i}]"), row, dim, cod)?;
    }
    Ok(())
}

fn check_family(field: &str, ms: &[Rows], count: usize, n: usize) -> Result<()> {
    check_len(field, ms.len(), count)?;
    for (i, m) in ms.iter().enumerate() {
        check_rows(&format!("{field}[{i}]"), m, n, n)?;
    }
    Ok(())
}

fn check_entries(field: &str, entries: &[Entry], arity: usize, dom: usize, cod: usize) -> Result<()> {
    if arity == 0 {
        return Err(shape_err("arity", "must be at least 1".into()));
    }
    for (k, e) in entries.iter().enumerate() {
        let f = format!("{field}[{k}]");
        check_len(&format!("{f}.args"), e.args.len(), arity)?;
        check_len(&format!("{f}.value"), e.value.len(), cod)?;
        if let Some(&bad) = e.args.iter().find(|&&a| a >= dom) {
            return Err(shape_err(&format!("{f}.args"), format!("index {bad} out of range for dimension {dom}")));
        }
        let wedge = &e.args[..arity - 1];
        if (1..wedge.len()).any(|i| wedge[..i].contains(&wedge[i])) {
            return Err(shape_err(&format!("{f}.args"), "repeated wedge index".into()));
        }
    }
    Ok(())
}

fn check_shapes(doc: &Document) -> Result<()> {
    match doc {
        Document::Prelie(p) => check_table("product", &p.product, p.dim, p.dim),
        Document::Representation(p) => {
            check_table("product", &p.product, p.dim_g, p.dim_g)?;
            check_family("rho", &p.rho, p.dim_g, p.dim_v)?;
            check_family("mu", &p.mu, p.dim_g, p.dim_v)
        }
        Document::Derivation(p) => {
            check_table("product", &p.product, p.dim, p.dim)?;
            check_rows("d", &p.d, p.dim, p.dim)
        }
        Document::Derpair(p) => {
            check_table("product", &p.product, p.dim_g, p.dim_g)?;
            check_family("rho", &p.rho, p.dim_g, p.dim_v)?;
            check_family("mu", &p.mu, p.dim_g, p.dim_v)?;
            check_rows("d", &p.d, p.dim_v, p.dim_g)
        }
        Document::Cochain(c) => check_entries("entries", &c.entries, c.arity, c.dom, c.cod),
        Document::Deformation(p) => {
            check_table("omega", &p.omega, p.dim_g, p.dim_g)?;
            check_family("sigma", &p.sigma, p.dim_g, p.dim_v)?;
            check_family("tau", &p.tau, p.dim_g, p.dim_v)?;
            check_rows("dhat", &p.dhat, p.dim_v, p.dim_g)?;
            if let Some(w) = &p.witness {
                check_rows("witness.n", &w.n, p.dim_g, p.dim_g)?;
                check_rows("witness.s", &w.s, p.dim_v, p.dim_v)?;
            }
            Ok(())
        }
        Document::Extension(p) => {
            let (m, n) = (p.dim_g, p.dim_v);
            if let Some(md) = &p.module {
                check_rows("module.k", &md.k, n, n)?;
                check_family("module.rho", &md.rho, m, n)?;
                check_family("module.mu", &md.mu, m, n)?;
            }
            if let Some(c) = &p.cocycle {
                check_entries("cocycle.theta", &c.theta, 2, m, n)?;
                check_rows("cocycle.xi", &c.xi, n, m)?;
            }
            if let Some(t) = &p.total {
                check_table("total.product", &t.product, m + n, m + n)?;
                check_rows("total.d", &t.d, m + n, m + n)?;
                check_rows("total.inject", &t.inject, m + n, n)?;
                check_rows("total.project", &t.project, m, m + n)?;
            }
            if let Some(s) = &p.section {
                check_rows("section", s, m + n, m)?;
            }
            Ok(())
        }
    }
}

// conversions, assuming checked shapes

fn vector(v: &[Q]) -> Vec<Scalar> {
    v.iter().map(|q| q.0.clone()).collect()
}

fn matrix(rows: &Rows, cols: usize) -> Matrix {
    Matrix::from_rows(cols, rows.iter().map(|r| vector(r)).collect()).expect("checked shape")
}

fn table(t: &Table) -> Vec<Vec<Vec<Scalar>>> {
    t.iter().map(|row| row.iter().map(|v| vector(v)).collect()).collect()
}

fn algebra(dim: usize, t: &Table) -> PreLieAlgebra {
    PreLieAlgebra::new(dim, table(t)).expect("checked shape")
}

fn family(ms: &[Rows], n: usize) -> Vec<Matrix> {
    ms.iter().map(|m| matrix(m, n)).collect()
}

fn cochain(entries: &[Entry], arity: usize, dom: usize, cod: usize) -> Cochain {
    let mut c = Cochain::zero(arity, dom, cod);
    for e in entries {
        c.add_to(&e.args[..arity - 1], e.args[arity - 1], &vector(&e.value));
    }
    c
}

fn q_vec(v: &[Scalar]) -> Vector {
    v.iter().cloned().map(Q).collect()
}

fn q_rows(m: &Matrix) -> Rows {
    m.to_rows().iter().map(|r| q_vec(r)).collect()
}

fn q_table(a: &PreLieAlgebra) -> Table {
    a.table().iter().map(|row| row.iter().map(|v| q_vec(v)).collect()).collect()
}

fn q_entries(c: &Cochain) -> Vec<Entry> {
    c.terms()
        .map(|(idx, v)| {
            let mut args = idx.wedge.clone();
            args.push(idx.tail);
            Entry { args, value: q_vec(v) }
        })
        .collect()
}

fn wrong_kind(doc: &Document, want: &str) -> Error {
    Error::Usage(format!("expected a {want} document, got kind {:?}", doc.kind()))
}

impl Document {
    pub fn from_algebra(a: &PreLieAlgebra) -> Self {
        Document::Prelie(PrelieDoc { dim: a.dim(), product: q_table(a) })
    }

    pub fn from_representation(a: &PreLieAlgebra, r: &Representation) -> Self {
        Document::Representation(RepresentationDoc {
            dim_g: a.dim(),
            dim_v: r.dim_v(),
            product: q_table(a),
            rho: r.rho_matrices().iter().map(q_rows).collect(),
            mu: r.mu_matrices().iter().map(q_rows).collect(),
        })
    }

    /// Regular pairs are written with kind `derivation`, all others as `derpair`.
    pub fn from_pair(p: &DerPair) -> Self {
        if p.is_regular() {
            return Document::Derivation(DerivationDoc { dim: p.dim_g(), product: q_table(&p.algebra), d: q_rows(&p.d) });
        }
        Document::Derpair(DerPairDoc {
            dim_g: p.dim_g(),
            dim_v: p.dim_v(),
            product: q_table(&p.algebra),
            rho: p.rep.rho_matrices().iter().map(q_rows).collect(),
            mu: p.rep.mu_matrices().iter().map(q_rows).collect(),
            d: q_rows(&p.d),
        })
    }

    pub fn from_cochain(c: &Cochain) -> Self {
        Document::Cochain(CochainDoc { arity: c.arity(), dom: c.dom(), cod: c.cod(), entries: q_entries(c) })
    }

    pub fn from_deformation(d: &DeformationDatum, witness: Option<&EquivalenceWitness>) -> Self {
        Document::Deformation(DeformationDoc {
            dim_g: d.omega.dim(),
            dim_v: d.sigma_tau.dim_v(),
            omega: q_table(&d.omega),
            sigma: d.sigma_tau.rho_matrices().iter().map(q_rows).collect(),
            tau: d.sigma_tau.mu_matrices().iter().map(q_rows).collect(),
            dhat: q_rows(&d.dhat),
            witness: witness.map(|w| WitnessDoc { n: q_rows(&w.n), s: q_rows(&w.s) }),
        })
    }

    pub fn from_extension(dim_g: usize, dim_v: usize, parts: ExtensionParts<'_>) -> Self {
        Document::Extension(ExtensionDoc {
            dim_g,
            dim_v,
            module: parts.module.map(|r| ModuleDoc {
                k: q_rows(&r.k),
                rho: r.rep.rho_matrices().iter().map(q_rows).collect(),
                mu: r.rep.mu_matrices().iter().map(q_rows).collect(),
            }),
            cocycle: parts.cocycle.map(|c| CocycleDoc { theta: q_entries(&c.theta), xi: q_rows(&c.xi) }),
            total: parts.total.map(|e| TotalDoc {
                product: q_table(&e.total.algebra),
                d: q_rows(&e.total.d),
                inject: q_rows(&e.inject),
                project: q_rows(&e.project),
            }),
            section: parts.section.map(q_rows),
        })
    }

    pub fn to_algebra(&self) -> Result<PreLieAlgebra> {
        Ok(match self {
            Document::Prelie(p) => algebra(p.dim, &p.product),
            Document::Representation(p) => algebra(p.dim_g, &p.product),
            Document::Derivation(p) => algebra(p.dim, &p.product),
            Document::Derpair(p) => algebra(p.dim_g, &p.product),
            _ => return Err(wrong_kind(self, "prelie, representation, derivation or derpair")),
        })
    }

    pub fn to_representation(&self) -> Result<(PreLieAlgebra, Representation)> {
        match self {
            Document::Representation(p) => {
                let r = Representation::new(p.dim_v, family(&p.rho, p.dim_v), family(&p.mu, p.dim_v))?;
                Ok((algebra(p.dim_g, &p.product), r))
            }
            _ => self.to_pair().map(|p| (p.algebra, p.rep)),
        }
    }

    pub fn to_pair(&self) -> Result<DerPair> {
        match self {
            Document::Derivation(p) => DerPair::regular(algebra(p.dim, &p.product), matrix(&p.d, p.dim)),
            Document::Derpair(p) => DerPair::new(
                algebra(p.dim_g, &p.product),
                Representation::new(p.dim_v, family(&p.rho, p.dim_v), family(&p.mu, p.dim_v))?,
                matrix(&p.d, p.dim_g),
            ),
            _ => Err(wrong_kind(self, "derivation or derpair")),
        }
    }

    pub fn to_cochain(&self) -> Result<Cochain> {
        match self {
            Document::Cochain(c) => Ok(cochain(&c.entries, c.arity, c.dom, c.cod)),
            _ => Err(wrong_kind(self, "cochain")),
        }
    }

    pub fn to_deformation(&self) -> Result<(DeformationDatum, Option<EquivalenceWitness>)> {
        let Document::Deformation(p) = self else {
            return Err(wrong_kind(self, "deformation"));
        };
        let datum = DeformationDatum {
            omega: algebra(p.dim_g, &p.omega),
            sigma_tau: Representation::new(p.dim_v, family(&p.sigma, p.dim_v), family(&p.tau, p.dim_v))?,
            dhat: matrix(&p.dhat, p.dim_g),
        };
        let witness = p.witness.as_ref().map(|w| EquivalenceWitness { n: matrix(&w.n, p.dim_g), s: matrix(&w.s, p.dim_v) });
        Ok((datum, witness))
    }

    pub fn to_extension(&self) -> Result<ExtensionData> {
        let Document::Extension(p) = self else {
            return Err(wrong_kind(self, "extension"));
        };
        let (m, n) = (p.dim_g, p.dim_v);
        let module = match &p.module {
            Some(md) => Some(DerPairRepresentation::new(matrix(&md.k, n), Representation::new(n, family(&md.rho, n), family(&md.mu, n))?)?),
            None => None,
        };
        let cocycle = match &p.cocycle {
            Some(c) => Some(ExtensionCocycle::new(cochain(&c.theta, 2, m, n), matrix(&c.xi, m))?),
            None => None,
        };
        let total = match &p.total {
            Some(t) => Some(AbelianExtension {
                total: DerPair::regular(algebra(m + n, &t.product), matrix(&t.d, m + n))?,
                inject: matrix(&t.inject, n),
                project: matrix(&t.project, m + n),
            }),
            None => None,
        };
        Ok(ExtensionData { dim_g: m, dim_v: n, module, cocycle, total, section: p.section.as_ref().map(|s| matrix(s, m)) })
    }
}

/// Borrowed pieces for [`Document::from_extension`].
#[derive(Clone, Copy, Default)]
pub struct ExtensionParts<'a> {
    pub module: Option<&'a DerPairRepresentation>,
    pub cocycle: Option<&'a ExtensionCocycle>,
    pub total: Option<&'a AbelianExtension>,
    pub section: Option<&'a Matrix>,
}

/// The decoded content of an `extension` document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub dim_g: usize,
    pub dim_v: usize,
    pub module: Option<DerPairRepresentation>,
    pub cocycle: Option<ExtensionCocycle>,
    pub total: Option<AbelianExtension>,
    pub section: Option<Matrix>,
}

/// Read and parse a document from a file, with the path in error messages.
pub fn read_document(path: &std::path::Path) -> Result<Document> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| Error::Parse(format!("{}: {}", path.display(), e.to_string().trim_start_matches("parse error: "))))
}

/// Value of a cochain on basis arguments, as used by reports.
pub fn cochain_value(c: &Cochain, args: &[usize]) -> Vec<Scalar> {
    c.eval_args(&args.iter().map(|&i| Arg::Basis(i)).collect::<Vec<_>>())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{frac, int};

    const ABELIAN: &str = r#"{"kind": "prelie", "dim": 1, "product": [[["0"]]]}"#;

    #[test]
    fn rationals_are_canonical() {
        let doc = parse(r#"{"kind": "prelie", "dim": 1, "product": [[["2/4"]]]}"#).unwrap();
        assert_eq!(doc.to_algebra().unwrap().basis_product(0, 0), &[frac(1, 2)]);
        assert!(emit(&doc).contains("\"1/2\""));
        let ints = parse(r#"{"kind": "prelie", "dim": 1, "product": [[[-3]]]}"#).unwrap();
        assert_eq!(ints.to_algebra().unwrap().basis_product(0, 0), &[int(-3)]);
    }

    #[test]
    fn malformed_input_is_located() {
        let err = parse("{\"kind\": \"prelie\",\n \"dim\": 1,\n \"product\": [[[\"1/0\"]]]}").unwrap_err().to_string();
        assert!(err.contains("zero denominator") && err.contains("line 3"), "{err}");
        let err = parse(r#"{"kind": "prelie", "dim": 2, "product": [[["0"]]]}"#).unwrap_err().to_string();
        assert!(err.contains("product: expected length 2"), "{err}");
        let err = parse(r#"{"kind": "derpair", "dim_g": 1, "dim_v": 1, "product": [[["0"]]], "rho": [[["0"]]], "mu": [[["0"]]], "d": [["0", "1"]]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("d[0]: expected length 1"), "{err}");
        assert!(parse(r#"{"kind": "prelie", "dim": 1, "product": [[["0"]]], "extra": 1}"#).is_err());
        assert!(parse(r#"{"kind": "nope"}"#).is_err());
        let err = parse(r#"{"kind": "cochain", "arity": 3, "dom": 2, "cod": 1, "entries": [{"args": [1, 1, 0], "value": ["1"]}]}"#)
            .unwrap_err()
            .to_string();
        assert!(err.contains("entries[0].args: repeated"), "{err}");
    }

    #[test]
    fn emit_parse_round_trip() {
        let doc = parse(ABELIAN).unwrap();
        let text = emit(&doc);
        assert_eq!(parse(&text).unwrap(), doc);
        assert_eq!(emit(&parse(&text).unwrap()), text);
    }

    #[test]
    fn cochain_entries_are_normalised() {
        let doc = parse(r#"{"kind": "cochain", "arity": 3, "dom": 2, "cod": 1, "entries": [{"args": [1, 0, 0], "value": ["1"]}]}"#).unwrap();
        let c = doc.to_cochain().unwrap();
        assert_eq!(cochain_value(&c, &[0, 1, 0]), vec![int(-1)]);
        let text = emit(&Document::from_cochain(&c));
        assert!(text.contains("[0, 1, 0]") && text.contains("\"-1\""), "{text}");
    }
}
