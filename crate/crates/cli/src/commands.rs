use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use escape_core::cassels::{
    build_lattice, deep_hole_decomposition, epsilon_c_certificate, irreducibility_certificate, isolate_roots, representative_decompositions,
    stabilizer_residual, tightness_certificate, ConstructionReport, EpsilonCCertificate, IntegerSpectrum, IrreducibilityCertificate,
    ReportDocument, TightnessCertificate,
};
use escape_core::index::{
    certify_index, default_coefficient_bound, distinct_visits, unit_saturation_oracle, w_double_prime, IndexCertificate, IndexConfig, OracleReport,
};
use escape_core::orbit::{
    accprop_check, connected_components, mass_above, scan_with_sampler, shortest_vector, visit_localization_check, AccpropReport, EomParameters,
    LocalizationReport, OrbitSampler, OrbitScan, VisitReport,
};
use escape_core::simplex::{coset_classes, covering_constant_estimate, CosetClasses, HoleCatalog};
use escape_core::{Dimension, Error, Mpf, Perm, PrecisionConfig, Scalar};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::store::{write_atomic, write_json_at, Store};
use crate::svg;

pub const EXIT_CERTIFICATE: u8 = 2;
pub const EXIT_INPUT: u8 = 3;
pub const EXIT_OTHER: u8 = 1;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError { code: EXIT_INPUT, message: message.into() }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Dimension(_)
            | Error::DimensionMismatch { .. }
            | Error::NotTraceZero { .. }
            | Error::EntriesNotDistinct
            | Error::Overflow(_)
            | Error::ParameterConstraint(_)
            | Error::Invalid(_) => EXIT_INPUT,
            _ => EXIT_CERTIFICATE,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError { code: EXIT_OTHER, message: e.to_string() }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError { code: EXIT_OTHER, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// What a command hands back to `main`.
pub struct Outcome {
    pub summary: serde_json::Value,
    pub text: String,
    pub certificate_failure: bool,
}

impl Outcome {
    fn new<T: Serialize>(summary: &T, text: String, certificate_failure: bool) -> Self {
        Outcome { summary: serde_json::to_value(summary).unwrap_or(serde_json::Value::Null), text, certificate_failure }
    }
}

// ---------------------------------------------------------------------------
// construction

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StabilizerEntry {
    pub l: usize,
    pub residual: f64,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HoleEntry {
    pub tau: Perm,
    pub g_deviation: f64,
    pub s: Vec<f64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificates {
    pub irreducibility: IrreducibilityCertificate,
    pub tightness: TightnessCertificate,
    pub stabilizers: Vec<StabilizerEntry>,
    pub distortion_norm: f64,
    pub inverse_distortion_norm: f64,
    pub deep_holes: Vec<HoleEntry>,
    pub epsilon_c: Option<EpsilonCCertificate>,
}

impl Certificates {
    pub fn failed(&self) -> bool {
        !self.irreducibility.is_certified() || !self.tightness.pass || self.stabilizers.iter().any(|s| !s.ok)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StoredReport {
    #[serde(flatten)]
    pub document: ReportDocument,
    pub certificates: Certificates,
}

pub fn build(m: &[i64], bits: u32) -> CliResult<ConstructionReport<Mpf>> {
    IntegerSpectrum::new(m.to_vec())?;
    let field = isolate_roots::<Mpf>(m, PrecisionConfig::new(bits)?)?;
    Ok(build_lattice(&field)?)
}

pub fn certificates(report: &ConstructionReport<Mpf>, cfg: &RunConfig) -> CliResult<Certificates> {
    let ell = report.scoped(|| shortest_vector(report.basis.matrix()))?.length.to_f64();
    let stabilizers = (0..report.d())
        .map(|l| {
            let residual = stabilizer_residual(report, l).unwrap_or(f64::INFINITY);
            StabilizerEntry { l, residual, ok: residual < 1e-6 }
        })
        .collect();
    let (distortion_norm, inverse_distortion_norm) = report.scoped(|| {
        let h = report.simplex.distortion();
        (h.operator_norm().to_f64(), h.inverse_operator_norm().to_f64())
    });
    let decomps = representative_decompositions(report).ok();
    let covol = report.scoped(|| report.simplex.covolume().to_f64());
    let epsilon_c = match &decomps {
        Some(ds) => Some(epsilon_c_certificate(ds, covol, cfg.epsilon, cfg.c_const)?),
        None => None,
    };
    let deep_holes = decomps
        .unwrap_or_default()
        .iter()
        .map(|dh| HoleEntry { tau: dh.tau.clone(), g_deviation: dh.g_deviation.to_f64(), s: dh.s.coords().iter().map(Scalar::to_f64).collect() })
        .collect();
    Ok(Certificates {
        irreducibility: irreducibility_certificate(&report.field),
        tightness: tightness_certificate(report, cfg.m_const, ell),
        stabilizers,
        distortion_norm,
        inverse_distortion_norm,
        deep_holes,
        epsilon_c,
    })
}

fn open_store(cfg: &RunConfig, m: &[i64]) -> Store {
    Store::open(&cfg.cache_root(), m, cfg.bits)
}

fn out_dir(cfg: &RunConfig, store: &Store) -> PathBuf {
    cfg.out.clone().unwrap_or_else(|| store.dir().to_path_buf())
}

/// Builds `x_m` and writes `report.json`; returns the stored form.
pub fn construct_into(cfg: &RunConfig, m: &[i64], store: &Store) -> CliResult<(ConstructionReport<Mpf>, StoredReport)> {
    let report = build(m, cfg.bits)?;
    let stored = StoredReport { document: report.document(), certificates: certificates(&report, cfg)? };
    let _lock = store.lock()?;
    store.write_json("report.json", &stored)?;
    Ok((report, stored))
}

/// Rebuilds the construction behind an existing `report.json`.
fn load(cfg: &RunConfig, store: &Store) -> CliResult<(ConstructionReport<Mpf>, StoredReport)> {
    let stored: StoredReport = store
        .read_json("report.json")?
        .ok_or_else(|| CliError::input(format!("missing report {}; run `construct` first", store.path("report.json").display())))?;
    let report = build(&cfg.m, cfg.bits)?;
    if report.document() != stored.document {
        return Err(CliError::input(format!("stale report {}; rerun `construct`", store.path("report.json").display())));
    }
    Ok((report, stored))
}

pub fn cmd_construct(cfg: &RunConfig) -> CliResult<Outcome> {
    cfg.validate()?;
    let store = open_store(cfg, &cfg.m);
    let (_, stored) = construct_into(cfg, &cfg.m, &store)?;
    let path = store.path("report.json");
    if let Some(out) = &cfg.out {
        write_json_at(&out.join("report.json"), &stored)?;
    }
    let c = &stored.certificates;
    let text = format!(
        "m = {:?}\nD_m = {}\nxi = {}\ncovol = {}\nirreducible: {}\ntight (M = {}): {} (ratio {:.6})\nreport: {}",
        stored.document.m,
        short(&stored.document.d_m),
        short(&stored.document.xi),
        short(&stored.document.covol_delta_phi),
        c.irreducibility.is_certified(),
        cfg.m_const,
        c.tightness.pass,
        c.tightness.ratio,
        path.display()
    );
    Ok(Outcome::new(&stored, text, c.failed()))
}

fn short(s: &str) -> String {
    s.parse::<f64>().map(|v| format!("{v:.10}")).unwrap_or_else(|_| s.to_string())
}

// ---------------------------------------------------------------------------
// scans

fn scan_cached(store: &Store, report: &ConstructionReport<Mpf>, grid: usize) -> CliResult<OrbitScan> {
    let name = format!("scan-{grid}.json");
    if let Some(scan) = store.read_json::<OrbitScan>(&name)? {
        return Ok(scan);
    }
    let _lock = store.lock()?;
    if let Some(scan) = store.read_json::<OrbitScan>(&name)? {
        return Ok(scan);
    }
    let scan = scan_with_sampler(&OrbitSampler::new(report)?, grid);
    store.write_json(&name, &scan)?;
    Ok(scan)
}

fn write_scan_csv(scan: &OrbitScan, path: &Path) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let n = scan.n();
    let mut header = vec!["cell".to_string()];
    header.extend((1..=n).map(|i| format!("u{i}")));
    header.extend((1..=scan.d).map(|i| format!("t{i}")));
    header.push("ell".into());
    w.write_record(&header)?;
    for idx in 0..scan.len() {
        let mut row = vec![idx.to_string()];
        row.extend(scan.cell_u(idx).iter().map(|u| u.to_string()));
        row.extend(scan.cell_time(idx).coords().iter().map(|t| t.to_string()));
        row.push(scan.values[idx].to_string());
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError { code: EXIT_OTHER, message: e.to_string() })?;
    write_atomic(path, &bytes)?;
    Ok(())
}

#[derive(Serialize)]
struct ScanSummary {
    grid: usize,
    cells: usize,
    max: f64,
    min: f64,
    failures: usize,
    csv: PathBuf,
    svg: Option<PathBuf>,
}

pub fn cmd_scan(cfg: &RunConfig) -> CliResult<Outcome> {
    cfg.validate()?;
    let store = open_store(cfg, &cfg.m);
    let (report, _) = load(cfg, &store)?;
    let scan = scan_cached(&store, &report, cfg.grid)?;
    let out = out_dir(cfg, &store);
    let csv = out.join("scan.csv");
    write_scan_csv(&scan, &csv)?;
    let svg = match svg::heatmap(&scan, cfg.delta1) {
        Some(text) => {
            let p = out.join("heatmap.svg");
            write_atomic(&p, text.as_bytes())?;
            Some(p)
        }
        None => None,
    };
    let summary = ScanSummary { grid: scan.grid, cells: scan.len(), max: scan.max_value(), min: scan.min_value(), failures: scan.failures.len(), csv, svg };
    let text = format!(
        "grid {}^{}: {} cells, ell in [{:.6e}, {:.6}], {} failures\ncsv: {}{}",
        scan.grid,
        scan.n(),
        summary.cells,
        summary.min,
        summary.max,
        summary.failures,
        summary.csv.display(),
        summary.svg.as_ref().map(|p| format!("\nsvg: {}", p.display())).unwrap_or_default()
    );
    Ok(Outcome::new(&summary, text, !scan.failures.is_empty()))
}

/// Escape-of-mass parameters with a measured covering constant.
fn eom(report: &ConstructionReport<Mpf>, cfg: &RunConfig, tight: &TightnessCertificate) -> CliResult<(EomParameters, HoleCatalog<f64>)> {
    let s64 = report.scoped(|| report.simplex.to_f64())?;
    let cc = covering_constant_estimate(&s64, &[0.3, 0.1, 0.03], 2000, cfg.seed)?;
    let covol = report.scoped(|| report.simplex.covolume().to_f64());
    let params = EomParameters::new(report.d() - 1, cfg.kappa, cfg.m_const, covol, tight.xi, cc.c_est)?;
    Ok((params, HoleCatalog::new(&s64)))
}

#[derive(Serialize)]
struct MassSummary {
    grid: usize,
    delta: f64,
    fraction: f64,
    delta_kappa: f64,
    fraction_at_delta_kappa: f64,
}

pub fn cmd_mass(cfg: &RunConfig, delta: f64) -> CliResult<Outcome> {
    cfg.validate()?;
    let store = open_store(cfg, &cfg.m);
    let (report, _) = load(cfg, &store)?;
    let scan = scan_cached(&store, &report, cfg.grid)?;
    let n = (report.d() - 1) as f64;
    let covol = report.scoped(|| report.simplex.covolume().to_f64());
    let delta_kappa = cfg.m_const * (-(n / 2.0) * covol.powf(cfg.kappa / n)).exp();
    let summary = MassSummary {
        grid: scan.grid,
        delta,
        fraction: mass_above(&scan, delta),
        delta_kappa,
        fraction_at_delta_kappa: mass_above(&scan, delta_kappa),
    };
    store.write_json("mass.json", &summary)?;
    if let Some(out) = &cfg.out {
        write_json_at(&out.join("mass.json"), &summary)?;
    }
    let text = format!(
        "mass above {delta}: {:.6}\nmass above delta_kappa = {:.6}: {:.6}",
        summary.fraction, summary.delta_kappa, summary.fraction_at_delta_kappa
    );
    Ok(Outcome::new(&summary, text, false))
}

#[derive(Serialize)]
struct VisitsSummary {
    params: EomParameters,
    localization: LocalizationReport,
    visits: VisitReport,
    distinct_attribution: bool,
    w_double_prime: Vec<Perm>,
}

pub fn cmd_visits(cfg: &RunConfig) -> CliResult<Outcome> {
    cfg.validate()?;
    let store = open_store(cfg, &cfg.m);
    let (report, stored) = load(cfg, &store)?;
    let scan = scan_cached(&store, &report, cfg.grid)?;
    let (params, catalog) = eom(&report, cfg, &stored.certificates.tightness)?;
    let localization = visit_localization_check(&scan, &catalog, &params)?;
    let visits = connected_components(&scan, cfg.delta1, &catalog)?;
    let w2 = w_double_prime(&scan, &catalog, cfg.delta1, &params)?;
    let summary = VisitsSummary {
        distinct_attribution: visits.distinct_attribution(),
        params,
        localization,
        visits,
        w_double_prime: w2.into_iter().collect(),
    };
    store.write_json("visits.json", &summary)?;
    if let Some(out) = &cfg.out {
        write_json_at(&out.join("visits.json"), &summary)?;
    }
    let mut text = format!(
        "delta1 = {}: {} visit cells in {} components (distinct attribution: {})",
        cfg.delta1,
        summary.visits.visit_cells,
        summary.visits.count(),
        summary.distinct_attribution
    );
    for c in &summary.visits.components {
        text.push_str(&format!("\n  {} cells, peak {:.6}, nearest class {:?} at {:.4}", c.cells, c.peak_value, c.tau, c.peak_distance));
    }
    text.push_str(&format!(
        "\nlocalization at delta = {:.6}: max distance {:.4} vs r = {:.4} ({})",
        summary.localization.delta,
        summary.localization.max_distance,
        summary.localization.r,
        if summary.localization.pass { "pass" } else { "fail" }
    ));
    Ok(Outcome::new(&summary, text, false))
}

#[derive(Serialize)]
struct IndexSummary {
    certificate: IndexCertificate,
    oracle: OracleReport,
    distinct_visits: Result<usize, String>,
}

pub fn cmd_index(cfg: &RunConfig, q: Option<usize>, h: Option<f64>) -> CliResult<Outcome> {
    cfg.validate()?;
    let store = open_store(cfg, &cfg.m);
    let (report, stored) = load(cfg, &store)?;
    let scan = scan_cached(&store, &report, cfg.grid)?;
    let (params, catalog) = eom(&report, cfg, &stored.certificates.tightness)?;
    let w2 = w_double_prime(&scan, &catalog, cfg.delta1, &params)?;
    let mut certificate = certify_index(&report, &w2, &IndexConfig { m_const: cfg.m_const, ..IndexConfig::default() })?;
    let n = report.d() - 1;
    let q = q.unwrap_or_else(|| (1..=n).product());
    let oracle = unit_saturation_oracle(&report, h.unwrap_or_else(|| default_coefficient_bound(cfg.bits)), q)?;
    certificate.attach_oracle(&oracle);
    let visits = connected_components(&scan, cfg.delta1, &catalog)?;
    let distinct = distinct_visits(&visits, &certificate, scan.grid).map_err(|e| e.to_string());
    // The visit count is asymptotic; a shortfall is reported, not treated as a failed certificate.
    if let Err(e) = &distinct {
        eprintln!("warning: {e}");
    }
    let failed = !certificate.index_one || !oracle.is_confirmed();
    let summary = IndexSummary { certificate, oracle, distinct_visits: distinct };
    store.write_json("index.json", &summary)?;
    if let Some(out) = &cfg.out {
        write_json_at(&out.join("index.json"), &summary)?;
    }
    let c = &summary.certificate;
    let text = format!(
        "index one: {} via {:?} (bound |W''| = {})\noracle Q = {}: {} over {} candidates\nregulator {} (covolume {}, defect {:.1e})\ndistinct visits: {}",
        c.index_one,
        c.method,
        c.bound,
        summary.oracle.q_max,
        if summary.oracle.is_confirmed() { "confirmed" } else { "violation" },
        summary.oracle.candidates,
        short(&c.regulator.classical),
        short(&c.regulator.covolume),
        c.regulator.defect,
        match &summary.distinct_visits {
            Ok(k) => k.to_string(),
            Err(e) => e.clone(),
        }
    );
    Ok(Outcome::new(&summary, text, failed))
}

// ---------------------------------------------------------------------------
// sweep

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepRow {
    pub k: i64,
    pub m: Vec<i64>,
    pub ell: Option<f64>,
    pub xi: Option<f64>,
    pub d_m: Option<String>,
    pub mass: Option<f64>,
    pub components: Option<usize>,
    pub max_visit_distance: Option<f64>,
    pub g_deviation_times_k: Option<f64>,
    pub error: Option<String>,
}

#[derive(Serialize)]
pub struct SweepTable {
    pub direction: Vec<i64>,
    pub delta: f64,
    pub delta1: f64,
    pub rows: Vec<SweepRow>,
    pub mass_strictly_decreasing: bool,
    pub max_visit_distance_strictly_decreasing: bool,
    /// Largest over smallest `||g - I|| k`; bounded columns stay near one.
    pub g_deviation_spread: Option<f64>,
}

fn strictly_decreasing(col: &[Option<f64>]) -> bool {
    col.iter().all(Option::is_some) && col.windows(2).all(|w| w[1] < w[0])
}

fn sweep_member(cfg: &RunConfig, direction: &[i64], k: i64, delta: f64) -> CliResult<SweepRow> {
    let m: Vec<i64> = direction.iter().map(|&x| x.checked_mul(k).ok_or(Error::Overflow("k m_0"))).collect::<Result<_, _>>()?;
    let store = open_store(cfg, &m);
    let (report, stored) = construct_into(cfg, &m, &store)?;
    let tight = &stored.certificates.tightness;
    let scan = scan_cached(&store, &report, cfg.grid)?;
    let (params, catalog) = eom(&report, cfg, tight)?;
    let visits = connected_components(&scan, cfg.delta1, &catalog)?;
    let sampler = OrbitSampler::new(&report)?;
    let accprop: AccpropReport = accprop_check(&scan, &sampler, params.delta, params.covolume, cfg.epsilon, cfg.c_prime, cfg.kappa, true)?;
    let id = deep_hole_decomposition(&report, &Perm::identity(report.d()))?;
    Ok(SweepRow {
        k,
        m,
        ell: Some(tight.ell),
        xi: Some(tight.xi),
        d_m: Some(stored.document.d_m.clone()),
        mass: Some(mass_above(&scan, delta)),
        components: Some(visits.count()),
        max_visit_distance: Some(accprop.max_distance),
        g_deviation_times_k: Some(id.g_deviation.to_f64() * k as f64),
        error: None,
    })
}

pub fn cmd_sweep(cfg: &RunConfig, direction: &[i64], ks: &[i64], delta: f64, jobs: Option<usize>) -> CliResult<Outcome> {
    if !ks.is_empty() {
        IntegerSpectrum::new(direction.to_vec())?;
        cfg.validate_accprop(direction.len())?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError { code: EXIT_OTHER, message: e.to_string() })?;
    let rows: Vec<SweepRow> = pool.install(|| {
        ks.par_iter()
            .map(|&k| {
                sweep_member(cfg, direction, k, delta)
                    .unwrap_or_else(|e| SweepRow { k, error: Some(e.message), ..SweepRow::default() })
            })
            .collect()
    });
    let finite: Vec<f64> = rows.iter().filter_map(|r| r.g_deviation_times_k).collect();
    let table = SweepTable {
        direction: direction.to_vec(),
        delta,
        delta1: cfg.delta1,
        mass_strictly_decreasing: strictly_decreasing(&rows.iter().map(|r| r.mass).collect::<Vec<_>>()),
        max_visit_distance_strictly_decreasing: strictly_decreasing(&rows.iter().map(|r| r.max_visit_distance).collect::<Vec<_>>()),
        g_deviation_spread: (!finite.is_empty()).then(|| {
            finite.iter().copied().fold(f64::MIN, f64::max) / finite.iter().copied().fold(f64::MAX, f64::min)
        }),
        rows,
    };
    let out = cfg.out.clone().unwrap_or_else(|| cfg.cache_root().join("sweep"));
    write_json_at(&out.join("sweep.json"), &table)?;
    write_sweep_csv(&table, &out.join("sweep.csv"))?;
    let mut text = String::from("k\tell\txi\tmass\tcomponents\tmax_dist\tgdev*k\terror");
    for r in &table.rows {
        let f = |v: Option<f64>| v.map(|x| format!("{x:.6}")).unwrap_or_else(|| "-".into());
        text.push_str(&format!(
            "\n{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.k,
            r.ell.map(|x| format!("{x:.6e}")).unwrap_or_else(|| "-".into()),
            f(r.xi),
            f(r.mass),
            r.components.map(|c| c.to_string()).unwrap_or_else(|| "-".into()),
            f(r.max_visit_distance),
            f(r.g_deviation_times_k),
            r.error.clone().unwrap_or_default()
        ));
    }
    text.push_str(&format!(
        "\nmass strictly decreasing: {}\nmax visit distance strictly decreasing: {}",
        table.mass_strictly_decreasing, table.max_visit_distance_strictly_decreasing
    ));
    Ok(Outcome::new(&table, text, false))
}

fn write_sweep_csv(table: &SweepTable, path: &Path) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "m", "ell", "xi", "D_m", "mass", "components", "max_visit_distance", "g_deviation_times_k", "error"])?;
    let f = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in &table.rows {
        w.write_record([
            r.k.to_string(),
            r.m.iter().map(i64::to_string).collect::<Vec<_>>().join(" "),
            f(r.ell),
            f(r.xi),
            r.d_m.clone().unwrap_or_default(),
            f(r.mass),
            r.components.map(|c| c.to_string()).unwrap_or_default(),
            f(r.max_visit_distance),
            f(r.g_deviation_times_k),
            r.error.clone().unwrap_or_default(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| CliError { code: EXIT_OTHER, message: e.to_string() })?;
    write_atomic(path, &bytes)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// cosets

pub fn cmd_cosets(d: usize, out: Option<&Path>) -> CliResult<Outcome> {
    let classes: CosetClasses = coset_classes(Dimension::new(d)?)?;
    if let Some(out) = out {
        write_json_at(&out.join(format!("cosets-{d}.json")), &classes)?;
    }
    let mut text = format!("d = {d}: {} classes ({} pairs checked)", classes.classes.len(), classes.pairs_checked);
    for class in &classes.classes {
        text.push_str(&format!("\n  {:?}", class.iter().map(Perm::hole_representative).collect::<Vec<_>>()));
    }
    Ok(Outcome::new(&classes, text, false))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_decrease() {
        assert!(strictly_decreasing(&[Some(3.0), Some(2.0), Some(1.0)]));
        assert!(!strictly_decreasing(&[Some(3.0), Some(3.0)]));
        assert!(!strictly_decreasing(&[Some(3.0), None]));
        assert!(strictly_decreasing(&[]));
    }

    #[test]
    fn error_codes() {
        assert_eq!(CliError::from(Error::EntriesNotDistinct).code, EXIT_INPUT);
        assert_eq!(CliError::from(Error::PrecisionExhausted("x".into())).code, EXIT_CERTIFICATE);
    }
}
