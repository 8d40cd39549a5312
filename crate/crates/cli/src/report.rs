use crate::config::{CommandKind, Format, RunConfig};
use num_bigint::BigInt;
use semiformal::exactnum::format_rat;
use semiformal::hilbert::HilbertReport;
use semiformal::rational::BbrReport;
use semiformal::suites::SuiteResult;
use semiformal::{Check, Outcome};
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub version: &'static str,
    pub config_echo: ConfigEcho,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suites: Option<Vec<SuiteResult>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hilbert: Option<HilbertSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bbr: Option<BbrSection>,
}

impl Report {
    /// Any failure beats any undecided, which beats pass.
    pub fn outcome(&self) -> Outcome {
        self.checks.iter().fold(Outcome::Pass, |acc, c| acc.and(c.status))
    }
}

/// Everything that determines the report's content. The output path is
/// left out so that runs differing only in destination produce identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub command: CommandKind,
    pub seed: u64,
    pub cases: usize,
    pub coeffs: Vec<String>,
    pub max_r: usize,
    pub eps: Option<String>,
    pub b: Vec<String>,
    pub alpha: Vec<u64>,
    pub max_n: usize,
    pub max_k: usize,
    pub euler_max_k: usize,
    pub format: Format,
    pub emit_tables: bool,
}

fn strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

impl From<&RunConfig> for ConfigEcho {
    fn from(c: &RunConfig) -> Self {
        ConfigEcho {
            command: c.command,
            seed: c.seed,
            cases: c.cases,
            coeffs: strings(&c.coeffs),
            max_r: c.max_r,
            eps: c.eps.as_ref().map(format_rat),
            b: strings(&c.b),
            alpha: c.alpha.clone(),
            max_n: c.max_n,
            max_k: c.max_k,
            euler_max_k: c.euler_max_k,
            format: c.format,
            emit_tables: c.emit_tables,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    /// The statement being checked.
    pub paper_ref: String,
    pub status: Outcome,
    pub detail: String,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            id: c.id.clone(),
            paper_ref: c.label.clone(),
            status: c.outcome,
            detail: c.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertSection {
    pub coeffs: Vec<String>,
    pub rows: Vec<HilbertRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertRow {
    pub r: usize,
    #[serde(rename = "B_r")]
    pub b_r: String,
    #[serde(rename = "B_r_residue")]
    pub b_r_residue: String,
    #[serde(rename = "A_r_exact")]
    pub a_r_exact: Vec<String>,
    #[serde(rename = "A_r_interval")]
    pub a_r_interval: [String; 2],
    pub identity_ok: bool,
    pub bound_c: String,
}

impl From<&HilbertReport> for HilbertRow {
    fn from(h: &HilbertReport) -> Self {
        HilbertRow {
            r: h.r,
            b_r: h.b_r.to_string(),
            b_r_residue: h.b_r_residue.to_string(),
            a_r_exact: h.a_r_exact.to_strings(),
            a_r_interval: [format_rat(h.a_r_interval.lo()), format_rat(h.a_r_interval.hi())],
            identity_ok: h.identity_ok,
            bound_c: format_rat(&h.bound_c),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BbrInstanceEcho {
    pub b: Vec<String>,
    pub alpha: Vec<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct InductionEcho {
    pub pass: bool,
    pub k0: usize,
    pub window_size: usize,
    pub zero_marked: usize,
    pub n_region_witness: Option<(usize, usize)>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BbrSection {
    pub instance: BbrInstanceEcho,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub v_prefix: Vec<String>,
    pub p_r: Vec<Vec<String>>,
    pub checks: Vec<NamedCheck>,
    /// Least `k0` for the window-maximal growth constant.
    pub k0_for_window_c: usize,
    pub growth_base_first_violation: Option<usize>,
    /// Expected to fail for data that is not rational.
    pub norm_induction: InductionEcho,
}

/// How many leading `v_n` a report shows.
const V_PREFIX: usize = 10;

impl From<&BbrReport> for BbrSection {
    fn from(r: &BbrReport) -> Self {
        BbrSection {
            instance: BbrInstanceEcho {
                b: strings(r.instance.b()),
                alpha: r.instance.alpha().to_vec(),
            },
            n: r.n_max,
            k: r.k_max,
            v_prefix: strings(&r.table.v[..r.table.v.len().min(V_PREFIX)]),
            p_r: r.p_r.iter().map(|p| strings(p)).collect(),
            checks: r
                .checks
                .iter()
                .map(|c| NamedCheck { name: c.id.clone(), pass: c.passed(), detail: c.detail.clone() })
                .collect(),
            k0_for_window_c: r.k0,
            growth_base_first_violation: r.growth.base_first_violation,
            norm_induction: InductionEcho {
                pass: r.induction.pass,
                k0: r.induction.k0,
                window_size: r.induction.window_size,
                zero_marked: r.induction.zero_marked.len(),
                n_region_witness: r.induction.n_region_witness,
                detail: r.induction.detail.clone(),
            },
        }
    }
}

pub fn render(report: &Report, format: Format) -> Result<Vec<u8>, crate::RunError> {
    match format {
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for c in &report.checks {
                w.serialize(c)?;
            }
            w.into_inner().map_err(|e| crate::RunError::Io(e.into_error()))
        }
    }
}

/// `report.json` -> `report-<suffix>.csv` in the same directory.
pub fn sibling(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}-{suffix}.csv"))
}

pub fn write_file(path: &Path, bytes: &[u8]) -> Result<(), crate::RunError> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir)?;
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(bytes)?;
    Ok(())
}

pub fn vtable_csv(r: &BbrReport) -> Result<Vec<u8>, crate::RunError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "n", "v_n(k)"])?;
    for k in 0..=r.table.k_max() {
        for n in 0..=r.table.n_max() {
            w.write_record([k.to_string(), n.to_string(), r.table.vk(k, n).to_string()])?;
        }
    }
    w.into_inner().map_err(|e| crate::RunError::Io(e.into_error()))
}

pub fn hilbert_csv(rows: &[HilbertRow]) -> Result<Vec<u8>, crate::RunError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["r", "B_r", "B_r_residue", "A_r_lo", "A_r_hi", "identity_ok", "bound_c"])?;
    for row in rows {
        w.write_record([
            row.r.to_string(),
            row.b_r.clone(),
            row.b_r_residue.clone(),
            row.a_r_interval[0].clone(),
            row.a_r_interval[1].clone(),
            row.identity_ok.to_string(),
            row.bound_c.clone(),
        ])?;
    }
    w.into_inner().map_err(|e| crate::RunError::Io(e.into_error()))
}
