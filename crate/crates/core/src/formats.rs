//! Versioned JSON documents: meshes, Legendre fields, problems,
//! certificates, Newton–Kantorovich reports and constant tables.
//!
//! Numbers in input documents may be JSON numbers or strings holding a
//! decimal or hexadecimal literal; decimals are parsed exactly and widened
//! to the tightest enclosing interval. Every interval written out is a pair
//! of exact hexadecimal literals, with an outward decimal rendering next to
//! it for people.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::certify::{
    default_assumptions, default_m_candidates, EigenLower, GrowthTerm, LevelReport, NonlinearityBound,
    PositivityCertificate, Verdict,
};
use crate::constants::{DomainSpec, Lambda1Source};
use crate::error::{Error, Result};
use crate::field::{legendre_to_mesh, Cell, CellMesh, LegendreField, DEFAULT_SUBDIVISION_DEPTH};
use crate::interval::Interval;
use crate::nk::NKReport;
use crate::tables::{EmbeddingRow, RfkRow};
use crate::text::{
    hex_interval, parse_decimal, parse_hex, parse_hex_interval, render_interval, to_hex, DECIMAL_DIGITS,
};

pub const CELLMESH_FORMAT: &str = "cellmesh/1";
pub const LEGENDRE_FORMAT: &str = "legendre/1";
pub const PROBLEM_FORMAT: &str = "problem/1";
pub const CERTIFICATE_FORMAT: &str = "positivity-cert/1";
pub const NK_REPORT_FORMAT: &str = "nk-report/1";
pub const CONSTANTS_FORMAT: &str = "constants/1";

fn config<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Config(msg.into()))
}

fn check_format(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return config(format!("format {found:?} is not {expected:?}"));
    }
    Ok(())
}

/// A number as written: JSON number or string literal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum NumText {
    Number(serde_json::Number),
    Text(String),
}

impl NumText {
    pub fn text(&self) -> String {
        match self {
            NumText::Number(n) => n.to_string(),
            NumText::Text(s) => s.clone(),
        }
    }

    pub fn enclose(&self, field: &str) -> Result<Interval> {
        parse_decimal(&self.text()).map_err(|e| Error::Parse(format!("{field}: {e}")))
    }

    /// Nearest double, for free parameters such as levels and exponents.
    pub fn nearest(&self, field: &str) -> Result<f64> {
        let t = self.text();
        if t.trim_start_matches('-').starts_with("0x") {
            return parse_hex(&t);
        }
        let iv = self.enclose(field)?;
        Ok(if iv.is_point() { iv.lo() } else { t.trim().parse::<f64>().expect("validated decimal") })
    }

    pub fn hex(x: f64) -> NumText {
        NumText::Text(to_hex(x))
    }
}

/// A scalar (widened to its enclosure) or an explicit `[lo, hi]` pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntervalText {
    Pair([NumText; 2]),
    Scalar(NumText),
}

impl IntervalText {
    pub fn enclose(&self, field: &str) -> Result<Interval> {
        match self {
            IntervalText::Scalar(x) => x.enclose(field),
            IntervalText::Pair([lo, hi]) => {
                let (lo, hi) = (lo.enclose(field)?, hi.enclose(field)?);
                Interval::new(lo.lo(), hi.hi()).map_err(|e| Error::Parse(format!("{field}: {e}")))
            }
        }
    }

    pub fn hex(x: Interval) -> IntervalText {
        IntervalText::Pair([NumText::hex(x.lo()), NumText::hex(x.hi())])
    }
}

// ---------------------------------------------------------------- meshes

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<usize>,
    pub volume_lo: NumText,
    pub volume_hi: NumText,
    /// Already rounded down by the producer; decimals are widened further.
    pub lower: NumText,
    pub upper: NumText,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshDoc {
    pub format: String,
    pub dimension: u32,
    pub declared_coverage: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume_units: Option<String>,
    pub cells: Vec<CellRecord>,
}

impl MeshDoc {
    pub fn from_mesh(mesh: &CellMesh) -> MeshDoc {
        MeshDoc {
            format: CELLMESH_FORMAT.into(),
            dimension: mesh.dimension(),
            declared_coverage: true,
            volume_units: None,
            cells: mesh
                .cells()
                .iter()
                .map(|c| CellRecord {
                    id: Some(c.id),
                    volume_lo: NumText::hex(c.volume.lo()),
                    volume_hi: NumText::hex(c.volume.hi()),
                    lower: NumText::hex(c.lower),
                    upper: NumText::hex(c.upper),
                })
                .collect(),
        }
    }

    pub fn to_mesh(&self) -> Result<CellMesh> {
        check_format(&self.format, CELLMESH_FORMAT)?;
        if !self.declared_coverage {
            return config("mesh does not declare that its cells cover the domain (declared_coverage: false)");
        }
        let cells = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let field = |name: &str| format!("cells[{i}].{name}");
                let volume = Interval::new(
                    c.volume_lo.enclose(&field("volume_lo"))?.lo(),
                    c.volume_hi.enclose(&field("volume_hi"))?.hi(),
                )
                .map_err(|e| Error::Parse(format!("{}: {e}", field("volume"))))?;
                let lower = c.lower.enclose(&field("lower"))?.lo();
                let upper = c.upper.enclose(&field("upper"))?.hi();
                Cell::new(c.id.unwrap_or(i), volume, lower, upper)
            })
            .collect::<Result<Vec<_>>>()?;
        CellMesh::new(self.dimension, cells)
    }
}

// ------------------------------------------------------- legendre fields

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LegendreDoc {
    pub format: String,
    pub degree: usize,
    /// Row-major `u_{i,j}`.
    pub coefficients: Vec<NumText>,
    pub grid: [usize; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subdivision_depth: Option<u32>,
}

impl LegendreDoc {
    pub fn from_field(fld: &LegendreField) -> LegendreDoc {
        LegendreDoc {
            format: LEGENDRE_FORMAT.into(),
            degree: fld.degree(),
            coefficients: fld.coefficients().iter().map(|&c| NumText::hex(c)).collect(),
            grid: fld.grid(),
            subdivision_depth: Some(fld.subdivision_depth()),
        }
    }

    /// The field, and how many coefficients had to be rounded to the
    /// nearest double (the series then describes that rounded û).
    pub fn to_field(&self) -> Result<(LegendreField, usize)> {
        check_format(&self.format, LEGENDRE_FORMAT)?;
        let mut rounded = 0;
        let coefficients = self
            .coefficients
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let field = format!("coefficients[{i}]");
                if !c.enclose(&field)?.is_point() {
                    rounded += 1;
                }
                c.nearest(&field)
            })
            .collect::<Result<Vec<_>>>()?;
        let depth = self.subdivision_depth.unwrap_or(DEFAULT_SUBDIVISION_DEPTH);
        Ok((LegendreField::new(self.degree, coefficients, self.grid, depth)?, rounded))
    }
}

// ---------------------------------------------------------------- domains

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Lambda1Record {
    Lower {
        value: IntervalText,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        provenance: Option<String>,
    },
    Hyperrectangle {
        sides: Vec<NumText>,
    },
    RayleighFaberKrahn,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainRecord {
    pub dimension: u32,
    pub volume: IntervalText,
    /// Absent: the Rayleigh–Faber–Krahn bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<Lambda1Record>,
}

impl DomainRecord {
    pub fn from_domain(dom: &DomainSpec) -> DomainRecord {
        let lambda1 = dom.lambda1.as_ref().map(|l| match l {
            Lambda1Source::Lower { value, source } => {
                Lambda1Record::Lower { value: IntervalText::hex(*value), provenance: Some(source.clone()) }
            }
            Lambda1Source::Hyperrectangle(sides) => {
                Lambda1Record::Hyperrectangle { sides: sides.iter().map(|&s| NumText::hex(s)).collect() }
            }
            Lambda1Source::RayleighFaberKrahn => Lambda1Record::RayleighFaberKrahn,
        });
        DomainRecord { dimension: dom.dimension, volume: IntervalText::hex(dom.volume), lambda1 }
    }

    pub fn to_domain(&self) -> Result<DomainSpec> {
        let volume = self.volume.enclose("domain.volume")?;
        let lambda1 = match &self.lambda1 {
            None | Some(Lambda1Record::RayleighFaberKrahn) => Lambda1Source::RayleighFaberKrahn,
            Some(Lambda1Record::Lower { value, provenance }) => Lambda1Source::Lower {
                value: value.enclose("domain.lambda1.value")?,
                source: provenance.clone().unwrap_or_else(|| "user supplied".into()),
            },
            // λ₁ decreases in every side length, so the upper ends are safe.
            Some(Lambda1Record::Hyperrectangle { sides }) => Lambda1Source::Hyperrectangle(
                sides
                    .iter()
                    .enumerate()
                    .map(|(i, s)| Ok(s.enclose(&format!("domain.lambda1.sides[{i}]"))?.hi()))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        DomainSpec::new(self.dimension, volume, Some(lambda1))
    }
}

// ----------------------------------------------------------- nonlinearity

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermRecord {
    pub a: IntervalText,
    pub p: IntervalText,
}

/// Either a preset (`lane-emden`, `allen-cahn`, `nagumo`, `lions`) with its
/// parameters, or explicit `lambda` and `terms`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonlinearityRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<IntervalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<IntervalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<IntervalText>,
    #[serde(default, rename = "A", skip_serializing_if = "Option::is_none")]
    pub big_a: Option<IntervalText>,
    #[serde(default, rename = "B", skip_serializing_if = "Option::is_none")]
    pub big_b: Option<IntervalText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terms: Option<Vec<TermRecord>>,
}

impl NonlinearityRecord {
    pub fn explicit(nl: &NonlinearityBound) -> NonlinearityRecord {
        NonlinearityRecord {
            name: Some(nl.name.clone()),
            lambda: Some(IntervalText::hex(nl.lambda)),
            terms: Some(
                nl.terms.iter().map(|t| TermRecord { a: IntervalText::hex(t.a), p: IntervalText::hex(t.p) }).collect(),
            ),
            ..NonlinearityRecord::default()
        }
    }

    fn param(&self, value: &Option<IntervalText>, name: &str) -> Result<Interval> {
        match value {
            Some(v) => v.enclose(&format!("nonlinearity.{name}")),
            None => config(format!("nonlinearity.{name} is required for this preset")),
        }
    }

    pub fn to_bound(&self) -> Result<NonlinearityBound> {
        let lambda = || self.param(&self.lambda, "lambda");
        if let Some(terms) = &self.terms {
            if self.preset.is_some() {
                return config("nonlinearity: give either a preset or explicit terms, not both");
            }
            let terms = terms
                .iter()
                .enumerate()
                .map(|(i, t)| {
                    Ok(GrowthTerm {
                        a: t.a.enclose(&format!("nonlinearity.terms[{i}].a"))?,
                        p: t.p.enclose(&format!("nonlinearity.terms[{i}].p"))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let name = self.name.clone().unwrap_or_else(|| "explicit".into());
            return NonlinearityBound::new(name, lambda()?, terms);
        }
        let Some(preset) = self.preset.as_deref() else {
            return config("nonlinearity: missing \"preset\" (or explicit \"lambda\" and \"terms\")");
        };
        match preset {
            "lane-emden" => {
                let l = if self.lambda.is_some() { lambda()? } else { Interval::ZERO };
                NonlinearityBound::lane_emden(l, self.param(&self.p, "p")?)
            }
            "allen-cahn" => NonlinearityBound::allen_cahn(lambda()?),
            "nagumo" => NonlinearityBound::nagumo(lambda()?, self.param(&self.a, "a")?),
            "lions" => NonlinearityBound::lions(lambda()?, self.param(&self.big_a, "A")?),
            other => {
                config(format!("nonlinearity.preset {other:?} is not one of lane-emden, allen-cahn, nagumo, lions"))
            }
        }
    }
}

// ---------------------------------------------------------------- problems

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source<T> {
    Path(String),
    Inline(T),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RhoRecord {
    Plain(NumText),
    Detailed { value: NumText, provenance: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    pub format: String,
    pub domain: DomainRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh: Option<Source<MeshDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub legendre: Option<Source<LegendreDoc>>,
    pub nonlinearity: NonlinearityRecord,
    pub rho: RhoRecord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<NumText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_candidates: Option<Vec<NumText>>,
}

/// A problem ready for [`crate::certify::certify_positivity`].
#[derive(Clone, Debug, PartialEq)]
pub struct Problem {
    pub domain: DomainSpec,
    pub mesh: CellMesh,
    pub nonlinearity: NonlinearityBound,
    pub rho: f64,
    pub q: f64,
    pub m_candidates: Vec<f64>,
    pub assumptions: Vec<String>,
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

impl ProblemDoc {
    /// Resolves referenced files relative to `base`.
    pub fn to_problem(&self, base: &Path) -> Result<Problem> {
        check_format(&self.format, PROBLEM_FORMAT)?;
        let domain = self.domain.to_domain()?;
        let resolve = |p: &str| -> PathBuf { base.join(p) };
        let (rho, rho_source) = match &self.rho {
            RhoRecord::Plain(v) => (v, "not recorded".to_string()),
            RhoRecord::Detailed { value, provenance } => (value, provenance.clone()),
        };
        let mut assumptions = default_assumptions(&rho_source);
        let mesh = match (&self.mesh, &self.legendre) {
            (Some(m), None) => match m {
                Source::Inline(doc) => doc.to_mesh()?,
                Source::Path(p) => read_json::<MeshDoc>(&resolve(p))?.to_mesh()?,
            },
            (None, Some(l)) => {
                let doc = match l {
                    Source::Inline(doc) => doc.clone(),
                    Source::Path(p) => read_json::<LegendreDoc>(&resolve(p))?,
                };
                let (field, rounded) = doc.to_field()?;
                if rounded > 0 {
                    assumptions.push(format!(
                        "{rounded} Legendre coefficients were rounded to the nearest binary64; rho refers to that rounded series"
                    ));
                }
                legendre_to_mesh(&field)?
            }
            _ => return config("problem needs exactly one of \"mesh\" and \"legendre\""),
        };
        let q = match &self.q {
            Some(q) => q.nearest("q")?,
            None => 2.0,
        };
        let m_candidates = match &self.m_candidates {
            Some(ms) => ms
                .iter()
                .enumerate()
                .map(|(i, m)| m.nearest(&format!("m_candidates[{i}]")))
                .collect::<Result<Vec<_>>>()?,
            None => default_m_candidates(),
        };
        Ok(Problem {
            domain,
            mesh,
            nonlinearity: self.nonlinearity.to_bound()?,
            // Round ρ up: a larger radius only weakens the test.
            rho: rho.enclose("rho")?.hi(),
            q,
            m_candidates,
            assumptions,
        })
    }
}

pub fn load_problem(path: &Path) -> Result<Problem> {
    let doc: ProblemDoc = read_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    doc.to_problem(base)
}

// ----------------------------------------------------------- certificates

/// Decimal rendering of a hexadecimal interval pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EigenText {
    Infinite(String),
    Bounded([String; 2]),
}

fn eigen_hex(e: EigenLower) -> EigenText {
    match e {
        EigenLower::Unbounded => EigenText::Infinite("infinite".into()),
        EigenLower::Bounded(v) => EigenText::Bounded(hex_interval(v)),
    }
}

fn eigen_decimal(e: EigenLower) -> EigenText {
    match e {
        EigenLower::Unbounded => EigenText::Infinite("infinite".into()),
        EigenLower::Bounded(v) => EigenText::Bounded(render_interval(v, DECIMAL_DIGITS)),
    }
}

fn eigen_parse(e: &EigenText) -> Result<EigenLower> {
    match e {
        EigenText::Infinite(s) if s == "infinite" => Ok(EigenLower::Unbounded),
        EigenText::Infinite(s) => Err(Error::Parse(format!("eigen_lower {s:?} is neither a pair nor \"infinite\""))),
        EigenText::Bounded(pair) => Ok(EigenLower::Bounded(parse_hex_interval(pair)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelDecimal {
    pub m: String,
    pub support_margin: [String; 2],
    pub dm_volume: [String; 2],
    pub eigen_lower: EigenText,
    pub c1: [String; 2],
    pub c2: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub m: String,
    pub support_margin: [String; 2],
    pub dm_volume: [String; 2],
    pub eigen_lower: EigenText,
    pub c1: [String; 2],
    pub c2: [String; 2],
    pub passes: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub decimal: LevelDecimal,
}

impl LevelRecord {
    fn new(r: &LevelReport, lambda: Interval) -> LevelRecord {
        LevelRecord {
            m: to_hex(r.m),
            support_margin: hex_interval(r.support_margin),
            dm_volume: hex_interval(r.dm_volume),
            eigen_lower: eigen_hex(r.eigen_lower),
            c1: hex_interval(r.c1),
            c2: hex_interval(r.c2),
            passes: r.passes(lambda),
            failure: r.failure(lambda).map(str::to_string),
            decimal: LevelDecimal {
                m: crate::text::decimal_down(r.m, DECIMAL_DIGITS),
                support_margin: render_interval(r.support_margin, DECIMAL_DIGITS),
                dm_volume: render_interval(r.dm_volume, DECIMAL_DIGITS),
                eigen_lower: eigen_decimal(r.eigen_lower),
                c1: render_interval(r.c1, DECIMAL_DIGITS),
                c2: render_interval(r.c2, DECIMAL_DIGITS),
            },
        }
    }

    fn to_report(&self) -> Result<LevelReport> {
        Ok(LevelReport {
            m: parse_hex(&self.m)?,
            support_margin: parse_hex_interval(&self.support_margin)?,
            dm_volume: parse_hex_interval(&self.dm_volume)?,
            eigen_lower: eigen_parse(&self.eigen_lower)?,
            c1: parse_hex_interval(&self.c1)?,
            c2: parse_hex_interval(&self.c2)?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub format: String,
    pub verdict: String,
    pub proves: String,
    pub q: String,
    pub m: String,
    pub rho: String,
    pub dm_volume: [String; 2],
    pub eigen_lower: EigenText,
    pub c1: [String; 2],
    pub c2: [String; 2],
    pub support_margin: [String; 2],
    pub selected_level: usize,
    pub nonlinearity: NonlinearityRecord,
    pub domain: DomainRecord,
    pub assumptions: Vec<String>,
    pub levels: Vec<LevelRecord>,
    pub decimal: LevelDecimal,
}

impl CertificateDoc {
    pub fn new(cert: &PositivityCertificate) -> CertificateDoc {
        let lambda = cert.nonlinearity.lambda;
        let levels: Vec<LevelRecord> = cert.levels.iter().map(|r| LevelRecord::new(r, lambda)).collect();
        let top = levels[cert.selected].clone();
        CertificateDoc {
            format: CERTIFICATE_FORMAT.into(),
            verdict: cert.verdict.as_str().into(),
            proves: "u >= 0 in the domain (nonnegativity, not strict positivity)".into(),
            q: to_hex(cert.q),
            m: top.m,
            rho: to_hex(cert.rho),
            dm_volume: top.dm_volume,
            eigen_lower: top.eigen_lower,
            c1: top.c1,
            c2: top.c2,
            support_margin: top.support_margin,
            selected_level: cert.selected,
            nonlinearity: NonlinearityRecord::explicit(&cert.nonlinearity),
            domain: DomainRecord::from_domain(&cert.domain),
            assumptions: cert.assumptions.clone(),
            decimal: top.decimal,
            levels,
        }
    }

    pub fn to_certificate(&self) -> Result<PositivityCertificate> {
        check_format(&self.format, CERTIFICATE_FORMAT)?;
        let verdict = match self.verdict.as_str() {
            "VERIFIED_NONNEGATIVE" => Verdict::VerifiedNonnegative,
            "INCONCLUSIVE" => Verdict::Inconclusive,
            other => return Err(Error::Parse(format!("verdict {other:?} is unknown"))),
        };
        let levels = self.levels.iter().map(LevelRecord::to_report).collect::<Result<Vec<_>>>()?;
        let Some(top) = levels.get(self.selected_level) else {
            return Err(Error::Parse(format!("selected_level {} out of range", self.selected_level)));
        };
        let summary = LevelReport {
            m: parse_hex(&self.m)?,
            support_margin: parse_hex_interval(&self.support_margin)?,
            dm_volume: parse_hex_interval(&self.dm_volume)?,
            eigen_lower: eigen_parse(&self.eigen_lower)?,
            c1: parse_hex_interval(&self.c1)?,
            c2: parse_hex_interval(&self.c2)?,
        };
        if &summary != top {
            return Err(Error::Parse("top-level fields disagree with the selected level".into()));
        }
        Ok(PositivityCertificate {
            verdict,
            q: parse_hex(&self.q)?,
            rho: parse_hex(&self.rho)?,
            nonlinearity: self.nonlinearity.to_bound()?,
            domain: self.domain.to_domain()?,
            selected: self.selected_level,
            levels,
            assumptions: self.assumptions.clone(),
        })
    }
}

pub fn certificate_to_json(cert: &PositivityCertificate) -> String {
    serde_json::to_string_pretty(&CertificateDoc::new(cert)).expect("certificate serializes")
}

pub fn certificate_from_json(text: &str) -> Result<PositivityCertificate> {
    serde_json::from_str::<CertificateDoc>(text)?.to_certificate()
}

// ------------------------------------------------------------ nk reports

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoCheck {
    pub rho: [String; 2],
    pub admissible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NKDecimal {
    pub alpha: [String; 2],
    pub beta: [String; 2],
    pub rho_min: Option<[String; 2]>,
    pub rho_max: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NKReportDoc {
    pub format: String,
    pub provenance: String,
    pub alpha: [String; 2],
    pub beta: [String; 2],
    pub rho_min: Option<[String; 2]>,
    pub rho_max: [String; 2],
    pub uniqueness_radius: [String; 2],
    pub feasible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub check_rho: Option<RhoCheck>,
    pub decimal: NKDecimal,
}

impl NKReportDoc {
    pub fn new(report: &NKReport, provenance: &str, check_rho: Option<Interval>) -> NKReportDoc {
        NKReportDoc {
            format: NK_REPORT_FORMAT.into(),
            provenance: provenance.into(),
            alpha: hex_interval(report.alpha),
            beta: hex_interval(report.beta),
            rho_min: report.rho_min.map(hex_interval),
            rho_max: hex_interval(report.rho_max),
            uniqueness_radius: hex_interval(report.uniqueness_radius()),
            feasible: report.feasible,
            check_rho: check_rho.map(|r| RhoCheck { rho: hex_interval(r), admissible: report.admits_interval(r) }),
            decimal: NKDecimal {
                alpha: render_interval(report.alpha, DECIMAL_DIGITS),
                beta: render_interval(report.beta, DECIMAL_DIGITS),
                rho_min: report.rho_min.map(|r| render_interval(r, DECIMAL_DIGITS)),
                rho_max: render_interval(report.rho_max, DECIMAL_DIGITS),
            },
        }
    }

    pub fn to_report(&self) -> Result<NKReport> {
        check_format(&self.format, NK_REPORT_FORMAT)?;
        Ok(NKReport {
            alpha: parse_hex_interval(&self.alpha)?,
            beta: parse_hex_interval(&self.beta)?,
            rho_min: self.rho_min.as_ref().map(parse_hex_interval).transpose()?,
            rho_max: parse_hex_interval(&self.rho_max)?,
            feasible: self.feasible,
        })
    }
}

// ------------------------------------------------------------- constants

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RfkRecord {
    pub dimension: u32,
    pub bessel_order: String,
    pub ball_volume: [String; 2],
    pub bessel_zero: [String; 2],
    pub rfk: [String; 2],
    pub decimal: RfkDecimal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RfkDecimal {
    pub ball_volume: [String; 2],
    pub bessel_zero: [String; 2],
    pub rfk: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub p: String,
    pub dimension: u32,
    pub volume: String,
    pub talenti: Option<[String; 2]>,
    pub constant: [String; 2],
    pub decimal: EmbeddingDecimal,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmbeddingDecimal {
    pub talenti: Option<[String; 2]>,
    pub constant: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantsDoc {
    pub format: String,
    pub rfk: Vec<RfkRecord>,
    pub embedding: Vec<EmbeddingRecord>,
}

impl ConstantsDoc {
    pub fn new(rfk: &[RfkRow], embedding: &[EmbeddingRow]) -> ConstantsDoc {
        ConstantsDoc {
            format: CONSTANTS_FORMAT.into(),
            rfk: rfk
                .iter()
                .map(|r| RfkRecord {
                    dimension: r.dimension,
                    bessel_order: r.order.to_string(),
                    ball_volume: hex_interval(r.ball_volume),
                    bessel_zero: hex_interval(r.bessel_zero),
                    rfk: hex_interval(r.rfk),
                    decimal: RfkDecimal {
                        ball_volume: render_interval(r.ball_volume, DECIMAL_DIGITS),
                        bessel_zero: render_interval(r.bessel_zero, DECIMAL_DIGITS),
                        rfk: render_interval(r.rfk, DECIMAL_DIGITS),
                    },
                })
                .collect(),
            embedding: embedding
                .iter()
                .map(|r| EmbeddingRecord {
                    p: to_hex(r.spec.p),
                    dimension: r.spec.dimension,
                    volume: to_hex(r.spec.volume),
                    talenti: r.talenti.map(hex_interval),
                    constant: hex_interval(r.constant),
                    decimal: EmbeddingDecimal {
                        talenti: r.talenti.map(|t| render_interval(t, DECIMAL_DIGITS)),
                        constant: render_interval(r.constant, DECIMAL_DIGITS),
                    },
                })
                .collect(),
        }
    }
}
