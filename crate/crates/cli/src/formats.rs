//! JSON shapes for spaces, sparse matrices, representations, mode series and
//! check reports. Every rational is an exact `"p/q"` string and every index
//! is 1-based.

use osp_yangian::{CheckReport, GradedMatrix, IdentityResult, ModeSeries, MonodromyRep, Rational, SuperSpace, Witness};
use serde::{Deserialize, Serialize};

use crate::FormatError;

/// `{"M": 1, "N": 2, "theta0": 1}`; κ is recomputed on load.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceJson {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub theta0: i64,
}

impl From<SuperSpace> for SpaceJson {
    fn from(s: SuperSpace) -> Self {
        Self { m: s.m(), n: s.n(), theta0: s.theta0().into() }
    }
}

impl TryFrom<SpaceJson> for SuperSpace {
    type Error = osp_yangian::Error;

    fn try_from(j: SpaceJson) -> Result<Self, Self::Error> {
        SuperSpace::new(j.m, j.n, j.theta0)
    }
}

/// One nonzero entry: row multi-index, column multi-index, value.
pub type EntryJson = (Vec<usize>, Vec<usize>, String);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub spec: SpaceJson,
    pub factors: usize,
    pub entries: Vec<EntryJson>,
}

impl MatrixJson {
    pub fn new(m: &GradedMatrix) -> Self {
        Self {
            spec: m.space().into(),
            factors: m.factors(),
            entries: m.entries().map(|(r, c, v)| (r, c, v.to_string())).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<GradedMatrix, FormatError> {
        let space = SuperSpace::try_from(self.spec)?;
        let entries = self
            .entries
            .iter()
            .map(|(r, c, v)| Ok((r.clone(), c.clone(), v.parse::<Rational>()?)))
            .collect::<Result<Vec<_>, osp_yangian::Error>>()?;
        Ok(GradedMatrix::from_entries(space, self.factors, entries)?)
    }
}

/// `{"spec": …, "sites": L, "inhomogeneities": ["0", "1/3", …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub spec: SpaceJson,
    pub sites: usize,
    pub inhomogeneities: Vec<String>,
}

impl RepJson {
    pub fn new(rep: &MonodromyRep) -> Self {
        Self {
            spec: rep.space().into(),
            sites: rep.sites(),
            inhomogeneities: rep.inhomogeneities().iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeJson {
    pub n: usize,
    pub matrix: MatrixJson,
}

/// The truncated expansion T(u) = Σ T₍ₙ₎ u⁻ⁿ of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeSeriesJson {
    pub representation: RepJson,
    pub n_max: usize,
    pub modes: Vec<ModeJson>,
}

impl ModeSeriesJson {
    pub fn new(rep: &MonodromyRep, series: &ModeSeries) -> Self {
        Self {
            representation: RepJson::new(rep),
            n_max: series.n_max(),
            modes: series
                .modes()
                .iter()
                .enumerate()
                .map(|(n, m)| ModeJson { n, matrix: MatrixJson::new(m) })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellEntryJson {
    pub row: Vec<usize>,
    pub col: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub point: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub entry: Option<CellEntryJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl From<&Witness> for WitnessJson {
    fn from(w: &Witness) -> Self {
        Self {
            point: w.point.iter().map(ToString::to_string).collect(),
            entry: w.entry.as_ref().map(|(row, col)| CellEntryJson { row: row.clone(), col: col.clone() }),
            value: w.value.as_ref().map(ToString::to_string),
            detail: w.detail.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultJson {
    pub identity: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<WitnessJson>,
}

impl From<&IdentityResult> for ResultJson {
    fn from(r: &IdentityResult) -> Self {
        Self { identity: r.identity.clone(), pass: r.pass, witness: r.witness.as_ref().map(WitnessJson::from) }
    }
}

/// One (spec, suite) cell. Wall time is deliberately absent so that reports
/// are byte-stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub suite: String,
    pub spec: SpaceJson,
    pub kappa: String,
    pub kappa_overridden: bool,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub representation: Option<RepJson>,
    pub degree_bounds: Vec<u32>,
    pub grid: Vec<Vec<String>>,
    pub results: Vec<ResultJson>,
    pub notes: Vec<String>,
}

impl ReportJson {
    pub fn new(report: &CheckReport, rep: Option<&MonodromyRep>) -> Self {
        Self {
            suite: report.suite.clone(),
            spec: report.space.into(),
            kappa: report.kappa.to_string(),
            kappa_overridden: report.kappa_overridden,
            pass: report.passed(),
            representation: rep.map(RepJson::new),
            degree_bounds: report.degree_bounds.clone(),
            grid: report.grid.iter().map(|p| p.iter().map(ToString::to_string).collect()).collect(),
            results: report.results.iter().map(ResultJson::from).collect(),
            notes: report.notes.clone(),
        }
    }
}

/// Pretty JSON in which any array or object that fits in `WIDTH` columns
/// stays on one line, so entry triples and grid points read as rows.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("formats serialize");
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    out
}

const WIDTH: usize = 72;

fn write_value(out: &mut String, v: &serde_json::Value, indent: usize) {
    use serde_json::Value;
    let compact = serde_json::to_string(v).expect("value serializes");
    let nested = matches!(v, Value::Array(a) if !a.is_empty()) || matches!(v, Value::Object(o) if !o.is_empty());
    if !nested || indent + compact.len() <= WIDTH {
        out.push_str(&compact);
        return;
    }
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                out.push_str(if k == 0 { "\n" } else { ",\n" });
                out.push_str(&pad);
                write_value(out, item, indent + 1);
            }
            out.push('\n');
        }
        Value::Object(map) => {
            out.push('{');
            for (k, (key, item)) in map.iter().enumerate() {
                out.push_str(if k == 0 { "\n" } else { ",\n" });
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(key).expect("key serializes"));
                out.push_str(": ");
                write_value(out, item, indent + 1);
            }
            out.push('\n');
        }
        _ => unreachable!(),
    }
    out.push_str(&"  ".repeat(indent));
    out.push(if matches!(v, Value::Array(_)) { ']' } else { '}' });
}
