//! Knot tables: loading, classification dispatch, batch runs and reports.
//!
//! A table is a CSV file with columns `name,class,params,expected`. Lines
//! starting with `#` are comments. The `params` column depends on the class:
//!
//! | class | params |
//! |---|---|
//! | `fibred` | empty |
//! | `two_bridge` | `p/q` table index, negative normalized fraction, or `[e1,...,en]` |
//! | `special_alternating` | Seifert graph file, relative to the table |
//! | `unique_base_plus_fibred` | `base=unique;summands=fibred,fibred` |
//! | `plumbing_unique_pair` | `A1=0;A1p=0;A2=0;A2p=0` |
//! | `table_expected` | shape literal such as `edge` or `path(3)` |

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::complex::{ComplexShape, SimplicialComplex};
use crate::error::{Error, Result};
use crate::planar::PlanarMultigraph;
use crate::rational::{even_cfe, normalize_two_bridge, EvenCfe, Fraction};
use crate::thetagraph;
use crate::twobridge;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KnotClass {
    Fibred,
    TwoBridge,
    SpecialAlternating,
    UniqueBasePlusFibred,
    PlumbingUniquePair,
    TableExpected,
}

impl KnotClass {
    pub fn as_str(self) -> &'static str {
        match self {
            KnotClass::Fibred => "fibred",
            KnotClass::TwoBridge => "two_bridge",
            KnotClass::SpecialAlternating => "special_alternating",
            KnotClass::UniqueBasePlusFibred => "unique_base_plus_fibred",
            KnotClass::PlumbingUniquePair => "plumbing_unique_pair",
            KnotClass::TableExpected => "table_expected",
        }
    }
}

impl fmt::Display for KnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for KnotClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "fibred" => KnotClass::Fibred,
            "two_bridge" => KnotClass::TwoBridge,
            "special_alternating" => KnotClass::SpecialAlternating,
            "unique_base_plus_fibred" => KnotClass::UniqueBasePlusFibred,
            "plumbing_unique_pair" => KnotClass::PlumbingUniquePair,
            "table_expected" => KnotClass::TableExpected,
            other => return Err(Error::Parse(format!("unknown class {other:?}"))),
        })
    }
}

/// Which markings of a plumbing admit a product disk.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MarkingFlags {
    pub product_disk_a1: bool,
    pub product_disk_a1_prime: bool,
    pub product_disk_a2: bool,
    pub product_disk_a2_prime: bool,
}

impl FromStr for MarkingFlags {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut flags = MarkingFlags::default();
        let mut seen = HashSet::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("flag {part:?} needs `=`")))?;
            let value = match value.trim() {
                "0" => false,
                "1" => true,
                other => return Err(Error::Parse(format!("flag value {other:?} is not 0 or 1"))),
            };
            let slot = match key.trim() {
                "A1" => &mut flags.product_disk_a1,
                "A1p" => &mut flags.product_disk_a1_prime,
                "A2" => &mut flags.product_disk_a2,
                "A2p" => &mut flags.product_disk_a2_prime,
                other => return Err(Error::Parse(format!("unknown flag {other:?}"))),
            };
            if !seen.insert(key.trim().to_string()) {
                return Err(Error::Parse(format!("flag {key} given twice")));
            }
            *slot = value;
        }
        if seen.len() != 4 {
            return Err(Error::Parse(format!("expected A1, A1p, A2 and A2p in {s:?}")));
        }
        Ok(flags)
    }
}

/// Complex of a plumbing of two non-fibred surfaces that are each unique.
///
/// Without product disks at any marking the surface and its dual are the only
/// classes. A product disk at `A1` alone adds one more class `[T^c]` next to `[S]`.
pub fn plumbing_theorem_complex(flags: MarkingFlags) -> Result<SimplicialComplex> {
    let set = |labels: &[&str]| labels.iter().map(|s| s.to_string()).collect::<BTreeSet<_>>();
    match flags {
        MarkingFlags {
            product_disk_a1: false,
            product_disk_a1_prime: false,
            product_disk_a2: false,
            product_disk_a2_prime: false,
        } => SimplicialComplex::new(set(&["[S]", "[S^c]"]), BTreeSet::from([set(&["[S]", "[S^c]"])])),
        MarkingFlags {
            product_disk_a1: true,
            product_disk_a1_prime: false,
            product_disk_a2: false,
            product_disk_a2_prime: false,
        } => SimplicialComplex::new(
            set(&["[S]", "[S^c]", "[T^c]"]),
            BTreeSet::from([set(&["[S]", "[S^c]"]), set(&["[S]", "[T^c]"])]),
        ),
        other => Err(Error::Precondition(format!(
            "no rule for the product-disk pattern {other:?}"
        ))),
    }
}

/// A base surface Murasugi summed with fibred pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub base_unique: bool,
    /// Fibredness of each summand.
    pub summands: Vec<bool>,
}

impl FromStr for Decomposition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut base = None;
        let mut summands = Vec::new();
        for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            match part.split_once('=') {
                Some(("base", v)) => {
                    base = Some(match v.trim() {
                        "unique" => true,
                        "nonunique" => false,
                        other => return Err(Error::Parse(format!("base {other:?} is not unique|nonunique"))),
                    })
                }
                Some(("summands", v)) => {
                    for t in v.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                        summands.push(match t {
                            "fibred" => true,
                            "nonfibred" => false,
                            other => {
                                return Err(Error::Parse(format!(
                                    "summand {other:?} is not fibred|nonfibred"
                                )))
                            }
                        });
                    }
                }
                _ => return Err(Error::Parse(format!("unknown decomposition field {part:?}"))),
            }
        }
        Ok(Self {
            base_unique: base.ok_or_else(|| Error::Parse(format!("missing base= in {s:?}")))?,
            summands,
        })
    }
}

/// Removes fibred summands one at a time; each removal keeps the complex.
///
/// Returns the resulting shape (always a point) and one audit line per step.
pub fn strip_fibred_summands(d: &Decomposition) -> Result<(ComplexShape, Vec<String>)> {
    if !d.base_unique {
        return Err(Error::Precondition("base surface is not declared unique".into()));
    }
    if let Some(i) = d.summands.iter().position(|f| !f) {
        return Err(Error::Precondition(format!("summand {} is not fibred", i + 1)));
    }
    let k = d.summands.len();
    let mut audit: Vec<String> = (1..=k)
        .rev()
        .map(|i| {
            format!(
                "deplumb fibred summand {i}: classes of S_{i} correspond to classes of S_{}",
                i - 1
            )
        })
        .collect();
    audit.push("S_0 is the unique base surface: single class".into());
    Ok((ComplexShape::Point, audit))
}

#[derive(Clone, Debug, PartialEq)]
pub enum TwoBridgeParam {
    Fraction(Fraction<BigInt>),
    Cfe(EvenCfe<BigInt>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Params {
    None,
    TwoBridge(TwoBridgeParam),
    SeifertGraph(PathBuf),
    Decomposition(Decomposition),
    Flags(MarkingFlags),
    Shape(ComplexShape),
}

#[derive(Clone, Debug, PartialEq)]
pub struct KnotRecord {
    pub name: String,
    pub class: KnotClass,
    pub params: Params,
    pub expected: Option<ComplexShape>,
    /// Line in the source table, 0 when built in code.
    pub line: u64,
}

impl KnotRecord {
    pub fn new(name: &str, class: KnotClass, params: &str, expected: Option<ComplexShape>) -> Result<Self> {
        Ok(Self {
            name: name.to_string(),
            class,
            params: parse_params(class, params, Path::new("."))?,
            expected,
            line: 0,
        })
    }
}

fn parse_params(class: KnotClass, raw: &str, base_dir: &Path) -> Result<Params> {
    let raw = raw.trim();
    Ok(match class {
        KnotClass::Fibred => {
            if !raw.is_empty() {
                return Err(Error::Parse(format!("fibred rows take no params, got {raw:?}")));
            }
            Params::None
        }
        KnotClass::TwoBridge if raw.starts_with('[') => Params::TwoBridge(TwoBridgeParam::Cfe(raw.parse()?)),
        KnotClass::TwoBridge => Params::TwoBridge(TwoBridgeParam::Fraction(raw.parse()?)),
        KnotClass::SpecialAlternating => {
            if raw.is_empty() {
                return Err(Error::Parse("special_alternating rows need a graph file".into()));
            }
            Params::SeifertGraph(base_dir.join(raw))
        }
        KnotClass::UniqueBasePlusFibred => Params::Decomposition(raw.parse()?),
        KnotClass::PlumbingUniquePair => Params::Flags(raw.parse()?),
        KnotClass::TableExpected => Params::Shape(raw.parse()?),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_bands: usize,
    pub max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_bands: twobridge::DEFAULT_MAX_BANDS,
            max_vertices: thetagraph::DEFAULT_MAX_VERTICES,
        }
    }
}

/// Expansion of a 2-bridge parameter: positive fractions are table indices.
pub fn two_bridge_cfe(param: &TwoBridgeParam) -> Result<EvenCfe<BigInt>> {
    match param {
        TwoBridgeParam::Cfe(c) => Ok(c.clone()),
        TwoBridgeParam::Fraction(f) if f.numer().is_negative() => even_cfe(f),
        TwoBridgeParam::Fraction(f) => even_cfe(&normalize_two_bridge(f)?),
    }
}

/// Complex of the special alternating knot with this Seifert graph.
pub fn special_alternating_complex(g: &PlanarMultigraph, max_vertices: usize) -> Result<SimplicialComplex> {
    match thetagraph::theta_from_seifert(g) {
        Ok(tg) => thetagraph::build_complex(&tg, &tg.weights(), max_vertices),
        Err(Error::EmptyTheta) => Ok(SimplicialComplex::point("T")),
        Err(e) => Err(e),
    }
}

/// Computed complex plus any audit lines produced on the way.
#[derive(Clone, Debug, PartialEq)]
pub struct Computation {
    pub complex: SimplicialComplex,
    pub audit: Vec<String>,
}

pub fn classify_and_compute(rec: &KnotRecord, limits: &Limits) -> Result<Computation> {
    let plain = |complex| Computation {
        complex,
        audit: Vec::new(),
    };
    let mismatch = || Error::Precondition(format!("params of {} do not fit class {}", rec.name, rec.class));
    match (rec.class, &rec.params) {
        (KnotClass::Fibred, Params::None) => Ok(plain(SimplicialComplex::point("T"))),
        (KnotClass::TwoBridge, Params::TwoBridge(p)) => {
            let chain = twobridge::band_chain(&two_bridge_cfe(p)?)?;
            Ok(plain(twobridge::build_complex(&chain, limits.max_bands)?))
        }
        (KnotClass::SpecialAlternating, Params::SeifertGraph(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let g: PlanarMultigraph = text.parse()?;
            Ok(plain(special_alternating_complex(&g, limits.max_vertices)?))
        }
        (KnotClass::UniqueBasePlusFibred, Params::Decomposition(d)) => {
            let (shape, audit) = strip_fibred_summands(d)?;
            Ok(Computation {
                complex: shape.to_complex()?,
                audit,
            })
        }
        (KnotClass::PlumbingUniquePair, Params::Flags(f)) => Ok(plain(plumbing_theorem_complex(*f)?)),
        (KnotClass::TableExpected, Params::Shape(s)) => Ok(plain(s.to_complex()?)),
        _ => Err(mismatch()),
    }
}

fn table_error(line: u64, e: impl fmt::Display) -> Error {
    Error::Table {
        line,
        message: e.to_string(),
    }
}

/// Parses table text; graph paths resolve against `base_dir`.
pub fn parse_table(text: &str, base_dir: &Path) -> Result<Vec<KnotRecord>> {
    // Drop comments and blank lines up front, remembering the original line numbers.
    let (kept, origin): (Vec<&str>, Vec<u64>) = text
        .lines()
        .zip(1u64..)
        .filter(|(l, _)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .unzip();
    let body = kept.join("\n");
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(false)
        .from_reader(body.as_bytes());
    let line_at = |pos: Option<&csv::Position>| {
        pos.and_then(|p| origin.get(p.line() as usize - 1))
            .copied()
            .unwrap_or(0)
    };
    let header_line = origin.first().copied().unwrap_or(1);
    let headers = reader.headers().map_err(|e| table_error(header_line, e))?.clone();
    if headers.iter().collect::<Vec<_>>() != ["name", "class", "params", "expected"] {
        return Err(table_error(
            header_line,
            "header must be name,class,params,expected",
        ));
    }
    let mut records = Vec::new();
    let mut names = HashSet::new();
    for row in reader.records() {
        let row = row.map_err(|e| table_error(line_at(e.position()), e))?;
        let line = line_at(row.position());
        let name = row[0].to_string();
        if name.is_empty() {
            return Err(table_error(line, "empty name"));
        }
        if !names.insert(name.clone()) {
            return Err(table_error(line, format!("duplicate name {name}")));
        }
        let class: KnotClass = row[1].parse().map_err(|e| table_error(line, e))?;
        let params = parse_params(class, &row[2], base_dir).map_err(|e| table_error(line, e))?;
        let expected = match row[3].trim() {
            "" => None,
            s => Some(s.parse().map_err(|e| table_error(line, e))?),
        };
        records.push(KnotRecord {
            name,
            class,
            params,
            expected,
            line,
        });
    }
    Ok(records)
}

pub fn load_table(path: &Path) -> Result<Vec<KnotRecord>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_table(&text, path.parent().unwrap_or(Path::new(".")))
}

#[derive(Clone, Debug)]
pub struct ResultRecord {
    pub name: String,
    pub class: KnotClass,
    pub computed: Option<SimplicialComplex>,
    pub shape: Option<ComplexShape>,
    /// Present exactly when the record carried an expected shape and was computed.
    pub matched_expected: Option<bool>,
    pub error: Option<String>,
    pub audit: Vec<String>,
    pub runtime: Duration,
}

impl ResultRecord {
    pub fn is_success(&self) -> bool {
        self.error.is_none() && self.matched_expected != Some(false)
    }
}

fn run_one(rec: &KnotRecord, limits: &Limits) -> ResultRecord {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| -> Result<(Computation, Option<bool>)> {
        let done = classify_and_compute(rec, limits)?;
        if !done.complex.is_connected() || !done.complex.is_flag() {
            return Err(Error::Invariant("complex is not a connected flag complex".into()));
        }
        let matched = rec
            .expected
            .as_ref()
            .map(|s| s.matches(&done.complex))
            .transpose()?;
        Ok((done, matched))
    }))
    .unwrap_or_else(|_| Err(Error::Invariant("computation panicked".into())));
    let runtime = start.elapsed();
    match outcome {
        Ok((done, matched)) => ResultRecord {
            name: rec.name.clone(),
            class: rec.class,
            shape: Some(done.complex.recognize()),
            computed: Some(done.complex),
            matched_expected: matched,
            error: None,
            audit: done.audit,
            runtime,
        },
        Err(e) => ResultRecord {
            name: rec.name.clone(),
            class: rec.class,
            computed: None,
            shape: None,
            matched_expected: None,
            error: Some(e.to_string()),
            audit: Vec::new(),
            runtime,
        },
    }
}

/// Computes every record in parallel; results keep the input order.
pub fn run_batch(records: &[KnotRecord], limits: &Limits) -> Vec<ResultRecord> {
    records.par_iter().map(|r| run_one(r, limits)).collect()
}

fn shape_name(shape: &ComplexShape) -> String {
    match shape {
        ComplexShape::Explicit(c) => format!(
            "explicit({} vertices, dimension {})",
            c.vertex_count(),
            c.dimension()
        ),
        other => other.to_string(),
    }
}

/// Report without timings, so identical input gives identical bytes.
pub fn report_json(results: &[ResultRecord]) -> Value {
    let records: Vec<Value> = results
        .iter()
        .map(|r| {
            json!({
                "name": r.name,
                "class": r.class.as_str(),
                "shape": r.shape.as_ref().map(shape_name),
                "matched_expected": r.matched_expected,
                "error": r.error,
                "complex": r.computed.as_ref().map(SimplicialComplex::to_json_value),
                "audit": r.audit,
            })
        })
        .collect();
    let count = |f: &dyn Fn(&ResultRecord) -> bool| results.iter().filter(|r| f(r)).count();
    json!({
        "records": records,
        "summary": {
            "total": results.len(),
            "matched": count(&|r| r.matched_expected == Some(true)),
            "mismatched": count(&|r| r.matched_expected == Some(false)),
            "failed": count(&|r| r.error.is_some()),
        }
    })
}

/// Plain-text table with one line per record, including timings.
pub fn summary_table(results: &[ResultRecord]) -> String {
    let mut out = format!(
        "{:<10} {:<24} {:<22} {:<8} {:>10}\n",
        "name", "class", "shape", "status", "time"
    );
    for r in results {
        let status = match (&r.error, r.matched_expected) {
            (Some(_), _) => "ERROR",
            (None, Some(true)) => "ok",
            (None, Some(false)) => "MISMATCH",
            (None, None) => "-",
        };
        let shape = r.shape.as_ref().map_or_else(|| "-".to_string(), shape_name);
        out += &format!(
            "{:<10} {:<24} {:<22} {:<8} {:>8.1}ms\n",
            r.name,
            r.class.as_str(),
            shape,
            status,
            r.runtime.as_secs_f64() * 1e3
        );
        if let Some(e) = &r.error {
            out += &format!("           {e}\n");
        }
    }
    let failed = results.iter().filter(|r| !r.is_success()).count();
    out += &format!("{} records, {} not ok\n", results.len(), failed);
    out
}

/// Writes the JSON report to `path` and the text summary next to it (`.txt`).
pub fn write_report(results: &[ResultRecord], path: &Path) -> Result<()> {
    let mut json =
        serde_json::to_string_pretty(&report_json(results)).map_err(|e| Error::Invariant(e.to_string()))?;
    json.push('\n');
    fs::write(path, json).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let txt = path.with_extension("txt");
    fs::write(&txt, summary_table(results)).map_err(|e| Error::Io(format!("{}: {e}", txt.display())))?;
    Ok(())
}

/// 0 when every record computed and matched, 1 otherwise.
pub fn batch_exit_code(results: &[ResultRecord]) -> i32 {
    if results.iter().all(ResultRecord::is_success) {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const HEADER: &str = "name,class,params,expected\n";

    fn table(rows: &str) -> Result<Vec<KnotRecord>> {
        parse_table(&format!("{HEADER}{rows}"), Path::new("."))
    }

    #[test]
    fn dispatch_examples() {
        let limits = Limits::default();
        let rec = KnotRecord::new("11_3", KnotClass::Fibred, "", None).unwrap();
        assert_eq!(
            classify_and_compute(&rec, &limits).unwrap().complex.recognize(),
            ComplexShape::Point
        );
        let rec = KnotRecord::new("11_13", KnotClass::TwoBridge, "28/61", None).unwrap();
        assert_eq!(
            classify_and_compute(&rec, &limits).unwrap().complex.recognize(),
            ComplexShape::Point
        );
        let rec = KnotRecord::new("11_103", KnotClass::TableExpected, "edge", None).unwrap();
        let c = classify_and_compute(&rec, &limits).unwrap().complex;
        assert_eq!(c.edges(), BTreeSet::from([("T1".to_string(), "T2".to_string())]));
        let rec = KnotRecord::new("x", KnotClass::TwoBridge, "[-2,-6,-4,-2]", None).unwrap();
        assert_eq!(
            classify_and_compute(&rec, &limits).unwrap().complex.recognize(),
            ComplexShape::Path(2)
        );
    }

    #[test]
    fn fraction_params() {
        let cfe = |s: &str| {
            let rec = KnotRecord::new("x", KnotClass::TwoBridge, s, None).unwrap();
            match rec.params {
                Params::TwoBridge(p) => two_bridge_cfe(&p).map(|c| c.to_string()),
                _ => unreachable!(),
            }
        };
        assert_eq!(cfe("43/53").unwrap(), "[-6,-2,-2,-4]");
        assert_eq!(cfe("-10/53").unwrap(), "[-6,-2,-2,-4]");
        assert_eq!(cfe("1/3").unwrap(), "[-2,-2]");
        assert!(cfe("-1/3").is_err());
    }

    #[test]
    fn plumbing_rules() {
        let none: MarkingFlags = "A1=0;A1p=0;A2=0;A2p=0".parse().unwrap();
        assert_eq!(
            plumbing_theorem_complex(none).unwrap().recognize(),
            ComplexShape::Path(2)
        );
        let a1: MarkingFlags = "A1=1;A1p=0;A2=0;A2p=0".parse().unwrap();
        let c = plumbing_theorem_complex(a1).unwrap();
        assert_eq!(c.recognize(), ComplexShape::Path(3));
        assert_eq!(c.edges().len(), 2);
        let both: MarkingFlags = "A1=1;A1p=1;A2=0;A2p=0".parse().unwrap();
        assert!(plumbing_theorem_complex(both).is_err());
        assert!("A1=0;A1p=0;A2=0".parse::<MarkingFlags>().is_err());
        assert!("A1=2;A1p=0;A2=0;A2p=0".parse::<MarkingFlags>().is_err());
        assert!("A1=0;A1=0;A2=0;A2p=0".parse::<MarkingFlags>().is_err());
    }

    #[test]
    fn strip_summands() {
        let d: Decomposition = "base=unique;summands=fibred".parse().unwrap();
        let (shape, audit) = strip_fibred_summands(&d).unwrap();
        assert_eq!(shape, ComplexShape::Point);
        assert_eq!(audit.len(), 2);
        let d: Decomposition = "base=unique".parse().unwrap();
        assert_eq!(strip_fibred_summands(&d).unwrap().0, ComplexShape::Point);
        let d: Decomposition = "base=nonunique;summands=fibred".parse().unwrap();
        assert!(strip_fibred_summands(&d).is_err());
        let d: Decomposition = "base=unique;summands=fibred,nonfibred".parse().unwrap();
        assert!(strip_fibred_summands(&d).is_err());
        assert!("summands=fibred".parse::<Decomposition>().is_err());
    }

    #[test]
    fn table_parsing() {
        assert!(table("").unwrap().is_empty());
        let recs = table("# comment\n11_13,two_bridge,28/61,point\n11_3,fibred,,\n").unwrap();
        assert_eq!(recs.len(), 2);
        assert_eq!(recs[0].line, 3);
        assert_eq!(recs[1].expected, None);
        assert!(matches!(
            table("11_13,two_bridge,28/61,point\n11_13,fibred,,\n"),
            Err(Error::Table { line: 3, .. })
        ));
        assert!(matches!(
            table("a,unknown,,\n"),
            Err(Error::Table { line: 2, .. })
        ));
        assert!(matches!(
            table("a,two_bridge,x/y,\n"),
            Err(Error::Table { line: 2, .. })
        ));
        assert!(matches!(
            table("a,fibred,,blob\n"),
            Err(Error::Table { line: 2, .. })
        ));
        assert!(parse_table("a,b,c\n", Path::new(".")).is_err());
        let quoted = table("a,two_bridge,\"[-8,-4]\",edge\n").unwrap();
        assert!(matches!(
            quoted[0].params,
            Params::TwoBridge(TwoBridgeParam::Cfe(_))
        ));
    }

    #[test]
    fn batch_isolates_failures() {
        let recs =
            table("good,two_bridge,28/61,point\nbad,two_bridge,-1/3,point\nwrong,two_bridge,33/73,point\n")
                .unwrap();
        let results = run_batch(&recs, &Limits::default());
        assert_eq!(results.len(), 3);
        assert!(results[0].is_success());
        assert!(results[1].error.is_some());
        assert_eq!(results[1].matched_expected, None);
        assert_eq!(results[2].matched_expected, Some(false));
        assert_eq!(batch_exit_code(&results), 1);
        assert_eq!(batch_exit_code(&results[..1]), 0);
        assert_eq!(
            report_json(&results),
            report_json(&run_batch(&recs, &Limits::default()))
        );
        let summary = summary_table(&results);
        assert!(summary.contains("MISMATCH") && summary.contains("ERROR"));
    }

    #[test]
    fn missing_graph_file_is_a_record_error() {
        let recs = table("x,special_alternating,no_such_file.theta,\n").unwrap();
        let results = run_batch(&recs, &Limits::default());
        assert!(results[0].error.as_deref().unwrap().contains("no_such_file"));
    }
}
