//! Serializable reports and their JSON and CSV renderings.

use serde::{Deserialize, Serialize};

use subsums_core::{
    Certificate, Classification, CoverResult, DimensionEstimate, Enclosure, Interval, SandwichReport,
    ScanSummary, SumsetInfo,
};
use subsums_core::analysis::MeasureEstimate;

fn pair(e: &Enclosure) -> [f64; 2] {
    [e.lo(), e.hi()]
}

fn iv(i: &Interval) -> [f64; 2] {
    [i.lo, i.hi]
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub theorem: String,
    pub inequality: String,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
}

impl From<&Certificate> for CertificateReport {
    fn from(c: &Certificate) -> Self {
        CertificateReport {
            theorem: c.theorem.to_string(),
            inequality: c.inequality.to_string(),
            lhs: pair(&c.lhs),
            rhs: pair(&c.rhs),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub label: String,
    pub certificates: Vec<CertificateReport>,
    pub notes: Vec<String>,
}

impl From<&Classification> for ClassificationReport {
    fn from(c: &Classification) -> Self {
        ClassificationReport {
            label: c.label.as_str().to_string(),
            certificates: c.certificates.iter().map(Into::into).collect(),
            notes: c.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverReport {
    pub depth: usize,
    pub tail_hi: f64,
    pub intervals: Vec<[f64; 2]>,
    pub gaps: Vec<[f64; 2]>,
    pub total_length: f64,
    pub point_count: usize,
}

impl From<&CoverResult> for CoverReport {
    fn from(c: &CoverResult) -> Self {
        CoverReport {
            depth: c.depth,
            tail_hi: c.tail_hi,
            intervals: c.cover.intervals().iter().map(iv).collect(),
            gaps: c.gaps.iter().map(iv).collect(),
            total_length: c.cover.total_length(),
            point_count: c.point_count,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureRow {
    pub depth: usize,
    pub upper_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub steps: Vec<MeasureRow>,
    pub final_bound: f64,
    pub last_decrement: Option<f64>,
}

impl From<&MeasureEstimate> for MeasureReport {
    fn from(m: &MeasureEstimate) -> Self {
        MeasureReport {
            steps: m
                .steps
                .iter()
                .map(|s| MeasureRow {
                    depth: s.depth,
                    upper_bound: s.upper_bound,
                })
                .collect(),
            final_bound: m.final_bound(),
            last_decrement: m.last_decrement,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub depth: usize,
    pub eps: f64,
    pub boxes: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub slope: f64,
    pub samples: Vec<DimensionRow>,
}

impl From<&DimensionEstimate> for DimensionReport {
    fn from(d: &DimensionEstimate) -> Self {
        DimensionReport {
            slope: d.slope,
            samples: d
                .samples
                .iter()
                .map(|s| DimensionRow {
                    depth: s.depth,
                    eps: s.eps,
                    boxes: s.boxes,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SumsetReport {
    pub n0: u64,
    pub n_star: u64,
    pub card_sigma: usize,
    pub sigma: Vec<u64>,
}

impl From<&SumsetInfo> for SumsetReport {
    fn from(s: &SumsetInfo) -> Self {
        SumsetReport {
            n0: s.n0,
            n_star: s.n_star,
            card_sigma: s.card_sigma,
            sigma: s.sigma.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichRow {
    pub n: u64,
    pub chain: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichOutput {
    pub horizon: u64,
    pub chain_holds_at: Vec<u64>,
    pub chain_fails_at: Option<u64>,
    pub which_chain: Vec<SandwichRow>,
    /// Per index: whether `a_n <= c_n <= b_n` is certified.
    pub terms_ordered: Vec<bool>,
}

impl From<&SandwichReport> for SandwichOutput {
    fn from(r: &SandwichReport) -> Self {
        SandwichOutput {
            horizon: r.horizon,
            chain_holds_at: r.chain_holds_at.clone(),
            chain_fails_at: r.chain_fails_at,
            which_chain: r
                .which_chain
                .iter()
                .enumerate()
                .map(|(i, t)| SandwichRow {
                    n: i as u64 + 1,
                    chain: t.as_str().to_string(),
                })
                .collect(),
            terms_ordered: r.terms_ordered.iter().map(|t| t.is_true()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KakeyaReport {
    pub horizon: u64,
    pub leq: usize,
    pub gt: usize,
    pub indeterminate: usize,
    /// Heuristic reading of the outcomes; never a certificate.
    pub pattern: String,
    pub outcomes: Vec<String>,
}

impl From<&ScanSummary> for KakeyaReport {
    fn from(s: &ScanSummary) -> Self {
        KakeyaReport {
            horizon: s.horizon,
            leq: s.leq,
            gt: s.gt,
            indeterminate: s.indeterminate,
            pattern: s.pattern.describe(),
            outcomes: s.outcomes.iter().map(|o| o.as_str().to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    /// The grid point as written, e.g. `1/20`.
    pub x: String,
    pub x_value: f64,
    pub label: String,
    /// Theorem of the first certificate, empty when none.
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridReport {
    pub family: String,
    pub k: Vec<u32>,
    pub rows: Vec<GridRow>,
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn csv_header_only(header: &str) -> String {
    format!("{header}\n")
}

#[derive(Serialize)]
struct LoHi {
    lo: f64,
    hi: f64,
}

pub fn cover_csv(r: &CoverReport) -> Result<String, csv::Error> {
    let rows: Vec<LoHi> = r.intervals.iter().map(|&[lo, hi]| LoHi { lo, hi }).collect();
    if rows.is_empty() {
        return Ok(csv_header_only("lo,hi"));
    }
    csv_rows(&rows)
}

pub fn measure_csv(r: &MeasureReport) -> Result<String, csv::Error> {
    csv_rows(&r.steps)
}

/// Rows `depth,eps,boxes` followed by a `# slope=...` summary line.
pub fn dimension_csv(r: &DimensionReport) -> Result<String, csv::Error> {
    let mut out = csv_rows(&r.samples)?;
    out.push_str(&format!("# slope={}\n", r.slope));
    Ok(out)
}

pub fn sandwich_csv(r: &SandwichOutput) -> Result<String, csv::Error> {
    if r.which_chain.is_empty() {
        return Ok(csv_header_only("n,chain"));
    }
    csv_rows(&r.which_chain)
}

pub fn grid_csv(r: &GridReport) -> Result<String, csv::Error> {
    csv_rows(&r.rows)
}

#[derive(Serialize)]
struct OutcomeRow<'a> {
    n: usize,
    outcome: &'a str,
}

/// Rows `n,outcome` followed by a `# pattern=...` summary line.
pub fn kakeya_csv(r: &KakeyaReport) -> Result<String, csv::Error> {
    let rows: Vec<OutcomeRow> = r
        .outcomes
        .iter()
        .enumerate()
        .map(|(i, o)| OutcomeRow { n: i + 1, outcome: o })
        .collect();
    let mut out = csv_rows(&rows)?;
    out.push_str(&format!("# pattern={}\n", r.pattern));
    Ok(out)
}

#[derive(Serialize)]
struct CertRow<'a> {
    label: &'a str,
    theorem: &'a str,
    inequality: &'a str,
    lhs_lo: Option<f64>,
    lhs_hi: Option<f64>,
    rhs_lo: Option<f64>,
    rhs_hi: Option<f64>,
}

/// One row per certificate, or a single row with empty certificate
/// fields when there is none.
pub fn classification_csv(r: &ClassificationReport) -> Result<String, csv::Error> {
    let rows: Vec<CertRow> = if r.certificates.is_empty() {
        vec![CertRow {
            label: &r.label,
            theorem: "",
            inequality: "",
            lhs_lo: None,
            lhs_hi: None,
            rhs_lo: None,
            rhs_hi: None,
        }]
    } else {
        r.certificates
            .iter()
            .map(|c| CertRow {
                label: &r.label,
                theorem: &c.theorem,
                inequality: &c.inequality,
                lhs_lo: Some(c.lhs[0]),
                lhs_hi: Some(c.lhs[1]),
                rhs_lo: Some(c.rhs[0]),
                rhs_hi: Some(c.rhs[1]),
            })
            .collect()
    };
    csv_rows(&rows)
}

#[derive(Serialize)]
struct SumsetRow {
    sigma: u64,
}

/// Rows of `Σ` followed by `# n0=.., n_star=.., card_sigma=..`.
pub fn sumset_csv(r: &SumsetReport) -> Result<String, csv::Error> {
    let rows: Vec<SumsetRow> = r.sigma.iter().map(|&sigma| SumsetRow { sigma }).collect();
    let mut out = csv_rows(&rows)?;
    out.push_str(&format!(
        "# n0={}, n_star={}, card_sigma={}\n",
        r.n0, r.n_star, r.card_sigma
    ));
    Ok(out)
}
