//! The `prelieder` command line.
//!
//! Exit codes: 0 when the answer is yes (valid, exact, same class, …), 1 when it
//! is a mathematical no, 2 on unreadable input or bad usage.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::bracket::mn_bracket;
use crate::cohomology::{les_check, Complex, ComplexKind};
use crate::deformation::{check_equivalence, check_infinitesimal_deformation, same_cohomology_class, DeformationDatum};
use crate::error::{Error, Result};
use crate::extension::{
    build_extension, check_derpair_representation, check_extension, classify, cocycle_residual, extract_cocycle, DerPairRepresentation,
    ExtensionCocycle,
};
use crate::io::{emit, read_document, to_canonical_json, Document, ExtensionData, ExtensionParts};
use crate::linalg::Matrix;
use crate::linfty::mc_check;
use crate::prelie::{check_derpair, check_prelie, check_representation, DerPair};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "prelieder", version, about = "Cohomology, deformations and extensions of pre-LieDer pairs")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms of any document.
    Validate {
        file: PathBuf,
        /// Base pair, for deformation and extension documents.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Matsushima–Nijenhuis bracket of two cochains.
    Bracket { f: PathBuf, g: PathBuf },
    /// Dimensions of cocycles, coboundaries and cohomology.
    Cohomology {
        pair: PathBuf,
        #[arg(long, default_value = "pair")]
        complex: ComplexKind,
        /// A single degree; all degrees up to vanishing if omitted.
        #[arg(long)]
        degree: Option<usize>,
        /// Extension document holding the module, for `--complex rep`.
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Maurer–Cartan test of a candidate pair.
    Mc { candidate: PathBuf },
    #[command(subcommand)]
    Deform(Deform),
    #[command(subcommand)]
    Ext(Ext),
    /// Exactness of the long exact sequence.
    Les {
        pair: PathBuf,
        /// Highest degree checked (default dim g + 2).
        #[arg(long)]
        max: Option<usize>,
    },
}

#[derive(Debug, Args)]
struct DeformArgs {
    base: PathBuf,
    datum: PathBuf,
    datum2: Option<PathBuf>,
}

/// Infinitesimal deformations.
#[derive(Debug, Subcommand)]
enum Deform {
    /// Deformation equations; with two data, the equivalence given by the second one's witness.
    Check(DeformArgs),
    /// Whether two data (the second defaults to zero) differ by a coboundary.
    Class(DeformArgs),
}

/// Abelian extensions of regular pairs.
#[derive(Debug, Subcommand)]
enum Ext {
    /// Build the extension of a module and a cocycle.
    Build { base: PathBuf, ext: PathBuf },
    /// Read the module and cocycle off an extension through a section.
    Extract { base: PathBuf, ext: PathBuf },
    /// Find an isomorphism between the extensions of two cocycles.
    Classify { base: PathBuf, ext1: PathBuf, ext2: PathBuf },
}

/// What a command produced: the verdict, a text rendering and a JSON rendering.
struct Outcome {
    ok: bool,
    text: String,
    json: Value,
}

/// Run the CLI on `args` (including the program name), writing to `out` and `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(o) => {
            let _ = if cli.json { write!(out, "{}", to_canonical_json(&o.json)) } else { write!(out, "{}", o.text) };
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn load(path: &Path) -> Result<Document> {
    read_document(path)
}

fn load_pair(path: &Path) -> Result<DerPair> {
    load(path)?.to_pair()
}

fn verdict(ok: bool, yes: &str, no: &str) -> String {
    format!("{}\n", if ok { yes } else { no })
}

fn report_json(command: &str, report: &Report, extra: Value) -> Value {
    let mut v = json!({ "command": command, "ok": report.ok(), "checks": report.checks });
    if let (Value::Object(map), Value::Object(more)) = (&mut v, extra) {
        map.extend(more);
    }
    v
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(|x| Value::String(x.to_string())).collect())).collect())
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Validate { file, base } => validate(file, base.as_deref()),
        Command::Bracket { f, g } => {
            let (f, g) = (load(f)?.to_cochain()?, load(g)?.to_cochain()?);
            let b = mn_bracket(&f, &g)?;
            let doc = Document::from_cochain(&b);
            let text = format!("degree {}\n{}", b.degree(), emit(&doc));
            let json = json!({ "command": "bracket", "ok": true, "degree": b.degree(), "result": doc });
            Ok(Outcome { ok: true, text, json })
        }
        Command::Cohomology { pair, complex, degree, module } => {
            let pair = load_pair(pair)?;
            let module = match module {
                Some(path) => Some(ext_data(path)?.module.ok_or_else(|| Error::Usage("the module file has no module".into()))?),
                None => None,
            };
            let cx = Complex::of_pair(*complex, &pair, module.as_ref())?;
            let dims = match degree {
                Some(0) => return Err(Error::Usage("complexes start in degree 1".into())),
                Some(n) => vec![cx.cohomology(*n)?],
                None => cx.cohomology_table(cx.top_degree() + 1)?,
            };
            let mut text = format!("{:<10} {:>3} {:>6} {:>6} {:>6} {:>6}\n", "complex", "n", "dim", "z", "b", "h");
            for d in &dims {
                text.push_str(&format!("{:<10} {:>3} {:>6} {:>6} {:>6} {:>6}\n", complex.name(), d.n, d.dim, d.z, d.b, d.h));
            }
            let json = json!({ "command": "cohomology", "ok": true, "complex": complex.name(), "degrees": dims });
            Ok(Outcome { ok: true, text, json })
        }
        Command::Mc { candidate } => {
            let p = load_pair(candidate)?;
            let mc = mc_check(&p)?;
            let ok = mc.is_mc();
            let text = format!("{}{}", mc.report, verdict(ok, "Maurer-Cartan element", "not a Maurer-Cartan element"));
            let residual = json!({
                "shifted": Document::from_cochain(mc.residual.shifted()),
                "h": mc.residual.h().map(Document::from_cochain),
            });
            Ok(Outcome { ok, text, json: report_json("mc", &mc.report, json!({ "residual": residual })) })
        }
        Command::Deform(d) => deform(d),
        Command::Ext(e) => ext(e),
        Command::Les { pair, max } => {
            let p = load_pair(pair)?;
            let report = les_check(&p, max.unwrap_or(p.dim_g() + 2))?;
            let text = report.to_string();
            let ok = report.ok();
            Ok(Outcome { ok, text, json: json!({ "command": "les", "ok": ok, "positions": report.positions }) })
        }
    }
}

fn validate(file: &Path, base: Option<&Path>) -> Result<Outcome> {
    let doc = load(file)?;
    let kind = doc.kind();
    let report = match &doc {
        Document::Prelie(_) => check_prelie(&doc.to_algebra()?),
        Document::Representation(_) => {
            let (a, r) = doc.to_representation()?;
            let mut report = check_prelie(&a);
            report.extend(check_representation(&a, &r)?);
            report
        }
        Document::Derivation(_) | Document::Derpair(_) => check_derpair(&doc.to_pair()?),
        Document::Cochain(_) => {
            let c = doc.to_cochain()?;
            let mut report = Report::new();
            report.pass("well-formed");
            let text = format!("kind: cochain\narity {}, {} -> {}, {} stored values\n{report}", c.arity(), c.dom(), c.cod(), c.num_terms());
            return Ok(Outcome { ok: true, text, json: report_json("validate", &report, json!({ "kind": kind })) });
        }
        Document::Deformation(_) => {
            let base = load_pair(base.ok_or_else(|| Error::Usage("validating a deformation needs --base".into()))?)?;
            check_infinitesimal_deformation(&base, &doc.to_deformation()?.0)?
        }
        Document::Extension(_) => {
            let base = load_pair(base.ok_or_else(|| Error::Usage("validating an extension needs --base".into()))?)?;
            let data = doc.to_extension()?;
            let mut report = Report::new();
            if let Some(r) = &data.module {
                report.extend(check_derpair_representation(&base, r)?);
                if let Some(c) = &data.cocycle {
                    let res = cocycle_residual(&base, r, c)?;
                    report.push("cocycle", (!res.is_zero()).then(|| "D(theta, xi) != 0".into()));
                }
            }
            if let Some(e) = &data.total {
                let k = e.k().or_else(|| data.module.as_ref().map(|r| r.k.clone()));
                match k {
                    Some(k) => report.extend(check_extension(&base, &k, e)?),
                    None => report.push("extension-iota", Some("iota(V) is not D^-stable".into())),
                }
            }
            report
        }
    };
    let ok = report.ok();
    let text = format!("kind: {kind}\n{report}{}", verdict(ok, "valid", "INVALID"));
    Ok(Outcome { ok, text, json: report_json("validate", &report, json!({ "kind": kind })) })
}

fn deform(cmd: &Deform) -> Result<Outcome> {
    let (Deform::Check(a) | Deform::Class(a)) = cmd;
    let base = load_pair(&a.base)?;
    let (d1, _) = load(&a.datum)?.to_deformation()?;
    let second = match &a.datum2 {
        Some(p) => Some(load(p)?.to_deformation()?),
        None => None,
    };
    match cmd {
        Deform::Check(_) => {
            let mut report = check_infinitesimal_deformation(&base, &d1)?;
            if let Some((d2, w)) = &second {
                let w = w.as_ref().ok_or_else(|| Error::Usage("the second datum needs a witness (N, S)".into()))?;
                for c in check_infinitesimal_deformation(&base, d2)?.checks {
                    report.push(&format!("{} (second)", c.tag), c.detail);
                }
                report.extend(check_equivalence(&base, &d1, d2, w)?);
            }
            let ok = report.ok();
            let yes = if second.is_some() { "equivalent deformations" } else { "infinitesimal deformation" };
            let no = if second.is_some() { "not an equivalence" } else { "not an infinitesimal deformation" };
            let text = format!("{report}{}", verdict(ok, yes, no));
            Ok(Outcome { ok, text, json: report_json("deform check", &report, json!({})) })
        }
        Deform::Class(_) => {
            let d2 = second.map(|(d, _)| d).unwrap_or_else(|| DeformationDatum::zero(&base));
            let found = same_cohomology_class(&base, &d2, &d1)?;
            let ok = found.is_some();
            let (text, witness) = match &found {
                Some(w) => (format!("same cohomology class\nN = {}\nS = {}\n", w.n, w.s), json!({ "n": matrix_json(&w.n), "s": matrix_json(&w.s) })),
                None => ("different cohomology classes\n".to_string(), Value::Null),
            };
            Ok(Outcome { ok, text, json: json!({ "command": "deform class", "ok": ok, "witness": witness }) })
        }
    }
}

fn ext_data(path: &Path) -> Result<ExtensionData> {
    load(path)?.to_extension()
}

fn need<T>(v: Option<T>, what: &str) -> Result<T> {
    v.ok_or_else(|| Error::Usage(format!("extension document has no {what}")))
}

fn module_and_cocycle(path: &Path) -> Result<(ExtensionData, DerPairRepresentation, ExtensionCocycle)> {
    let data = ext_data(path)?;
    let r = need(data.module.clone(), "module")?;
    let c = need(data.cocycle.clone(), "cocycle")?;
    Ok((data, r, c))
}

fn ext(cmd: &Ext) -> Result<Outcome> {
    match cmd {
        Ext::Build { base, ext } => {
            let base = load_pair(base)?;
            let (data, r, c) = module_and_cocycle(ext)?;
            let rep_report = check_derpair_representation(&base, &r)?;
            if !rep_report.ok() {
                let text = format!("{rep_report}{}", verdict(false, "", "not a representation"));
                return Ok(Outcome { ok: false, text, json: report_json("ext build", &rep_report, json!({})) });
            }
            match build_extension(&base, &r, &c) {
                Ok(e) => {
                    let parts = ExtensionParts { module: Some(&r), cocycle: Some(&c), total: Some(&e), section: None };
                    let doc = Document::from_extension(data.dim_g, data.dim_v, parts);
                    Ok(Outcome { ok: true, text: emit(&doc), json: json!({ "command": "ext build", "ok": true, "result": doc }) })
                }
                Err(Error::Invalid(msg)) => {
                    let text = format!("{msg}\n");
                    Ok(Outcome { ok: false, text, json: json!({ "command": "ext build", "ok": false, "detail": msg }) })
                }
                Err(e) => Err(e),
            }
        }
        Ext::Extract { base, ext } => {
            let base = load_pair(base)?;
            let data = ext_data(ext)?;
            let e = need(data.total.clone(), "total")?;
            let s = match data.section.clone() {
                Some(s) => s,
                None => e.canonical_section()?,
            };
            let (c, r) = match extract_cocycle(&base, &e, &s) {
                Ok(x) => x,
                Err(Error::Invalid(msg)) => {
                    return Ok(Outcome { ok: false, text: format!("{msg}\n"), json: json!({ "command": "ext extract", "ok": false, "detail": msg }) })
                }
                Err(err) => return Err(err),
            };
            let report = check_extension(&base, &r.k, &e)?;
            if !report.ok() {
                let text = format!("{report}{}", verdict(false, "", "not an abelian extension"));
                return Ok(Outcome { ok: false, text, json: report_json("ext extract", &report, json!({})) });
            }
            let parts = ExtensionParts { module: Some(&r), cocycle: Some(&c), total: None, section: Some(&s) };
            let doc = Document::from_extension(data.dim_g, data.dim_v, parts);
            Ok(Outcome { ok: true, text: emit(&doc), json: json!({ "command": "ext extract", "ok": true, "result": doc }) })
        }
        Ext::Classify { base, ext1, ext2 } => {
            let base = load_pair(base)?;
            let (_, r1, c1) = module_and_cocycle(ext1)?;
            let (_, r2, c2) = module_and_cocycle(ext2)?;
            if r1 != r2 {
                let msg = "the extensions induce different representations";
                return Ok(Outcome { ok: false, text: format!("{msg}\n"), json: json!({ "command": "ext classify", "ok": false, "detail": msg }) });
            }
            let zeta = match classify(&base, &r1, &c1, &c2) {
                Ok(z) => z,
                Err(Error::Invalid(msg)) => {
                    return Ok(Outcome { ok: false, text: format!("{msg}\n"), json: json!({ "command": "ext classify", "ok": false, "detail": msg }) })
                }
                Err(e) => return Err(e),
            };
            let ok = zeta.is_some();
            let text = match &zeta {
                Some(z) => format!("isomorphic extensions\nzeta = {}\n", z),
                None => "non-isomorphic extensions\n".to_string(),
            };
            let json = json!({ "command": "ext classify", "ok": ok, "zeta": zeta.as_ref().map(matrix_json) });
            Ok(Outcome { ok, text, json })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("prelieder").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["cohomology", "x.json", "--complex", "nope"]).0, 2);
        let (code, _, err) = run_str(&["validate", "/nonexistent/file.json"]);
        assert_eq!(code, 2);
        assert!(err.contains("/nonexistent/file.json"), "{err}");
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("cohomology"));
    }
}
