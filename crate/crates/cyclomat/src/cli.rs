//! Command implementations and the bulk sweep runner.
//!
//! The binary in `main.rs` is a thin argument parser over this module, so
//! the full command surface stays testable in-process. Reports are
//! deterministic for a fixed (config, version): tasks are enumerated in a
//! fixed order, executed in parallel, and collected positionally; only the
//! elapsed-time fields vary between runs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

use crate::arith;
use crate::char_sums::{
    gauss_sum, gauss_sum_exact, greene_binomial, hyp2f1, jacobi_sum, GAUSS_EXACT_PHI_BOUND,
};
use crate::cyclotomic::complex::ComplexApprox;
use crate::cyclotomic::CycNum;
use crate::finite_field::{FieldElement, FiniteField};
use crate::matrices::{
    build_b, build_carlitz, build_m, build_n, build_t, det_exact, det_field,
    eigen_structure_check, verify_carlitz, CycMatrix, EigenVariant, FieldMatrix,
};
use crate::report::{Backend, ReportBuilder, Status, VerificationReport};
use crate::theorems::{
    verify_lemma21, verify_lemma22_all_pairs, verify_lemma31, verify_mordell,
    verify_quadratic_gauss, verify_thm1_i, verify_thm1_ii, verify_thm2, verify_thm3_i,
    verify_thm3_ii, verify_thm3_iii, VerifyOpts,
};
use crate::{Error, Result};

/// Every claim id the verify/sweep commands understand.
pub const ALL_CLAIMS: &[&str] = &[
    "thm1.i", "thm1.ii", "thm2", "thm3.i", "thm3.ii", "thm3.iii", "lemma2.1", "lemma2.2",
    "lemma3.1", "eq1.1", "carlitz", "mordell", "eigen.m", "eigen.n",
];

/// Exponent selection: every admissible value, or an explicit list.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum RSelection {
    Keyword(String),
    List(Vec<i64>),
}

impl Default for RSelection {
    fn default() -> Self {
        RSelection::Keyword("all".into())
    }
}

impl RSelection {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(RSelection::Keyword("all".into()));
        }
        let list = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Config(format!("bad exponent list '{s}': {e}")))?;
        Ok(RSelection::List(list))
    }

    fn validate(&self) -> Result<()> {
        match self {
            RSelection::Keyword(k) if k == "all" => Ok(()),
            RSelection::Keyword(k) => Err(Error::Config(format!("unknown r selection '{k}'"))),
            RSelection::List(_) => Ok(()),
        }
    }

    /// The exponents to run for a field with q elements.
    fn resolve(&self, q: u64) -> Vec<i64> {
        match self {
            RSelection::Keyword(_) => (1..=(q as i64 - 2)).collect(),
            RSelection::List(list) => list.clone(),
        }
    }
}

/// Output format for verification reports.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

fn default_format() -> ReportFormat {
    ReportFormat::Json
}

fn default_precision() -> u32 {
    crate::DEFAULT_PRECISION
}

fn default_backend() -> Backend {
    Backend::Both
}

/// Bulk-verification configuration (the sweep config file schema; unknown
/// keys are rejected).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub q_min: u64,
    pub q_max: u64,
    /// Optional congruence filter [residue, modulus]: keep q with
    /// q = residue (mod modulus).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_mod: Option<(u64, u64)>,
    #[serde(default)]
    pub r: RSelection,
    pub claims: Vec<String>,
    #[serde(default = "default_backend")]
    pub backend: Backend,
    #[serde(default = "default_precision")]
    pub precision_bits: u32,
    /// Worker threads; 0 means all available cores.
    #[serde(default)]
    pub parallelism: usize,
    #[serde(default = "default_format")]
    pub format: ReportFormat,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.q_min > self.q_max {
            return Err(Error::Config(format!(
                "q_min = {} exceeds q_max = {}",
                self.q_min, self.q_max
            )));
        }
        if self.precision_bits < 53 {
            return Err(Error::Config("precision_bits must be >= 53".into()));
        }
        if self.claims.is_empty() {
            return Err(Error::Config("claims must be nonempty".into()));
        }
        for c in &self.claims {
            if !ALL_CLAIMS.contains(&c.as_str()) {
                return Err(Error::Config(format!(
                    "unknown claim '{c}' (known: {})",
                    ALL_CLAIMS.join(", ")
                )));
            }
        }
        if let Some((_, m)) = self.q_mod {
            if m == 0 {
                return Err(Error::Config("q_mod modulus must be nonzero".into()));
            }
        }
        self.r.validate()
    }

    fn opts(&self) -> VerifyOpts {
        VerifyOpts {
            precision: self.precision_bits,
            tolerance: crate::DEFAULT_TOLERANCE,
            backend: self.backend,
        }
    }
}

/// Narrowing flags for single-claim verification.
#[derive(Debug, Clone, Default)]
pub struct ClaimSelection {
    pub r: RSelection,
    pub k: Option<Vec<u64>>,
    pub m: Option<Vec<u64>>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub psi: Option<Vec<i64>>,
}

/// Divisors k of q-1 admissible for the B/T families ((q-1)/k even).
fn admissible_even_cofactor_k(q: u64) -> Vec<u64> {
    arith::divisors(q - 1)
        .into_iter()
        .filter(|&k| k > 1 && (k < q - 1 || matches!(k, 2 | 4)) && ((q - 1) / k) % 2 == 0)
        .collect()
}

/// Runs one claim against one field, producing one report per sub-case.
pub fn run_claim(
    claim: &str,
    field: &FiniteField,
    sel: &ClaimSelection,
    opts: &VerifyOpts,
) -> Result<Vec<VerificationReport>> {
    let q = field.q();
    let reports = match claim {
        "thm1.i" => {
            if q % 4 != 3 {
                vec![verify_thm1_i(field, 1, opts)]
            } else {
                sel.r.resolve(q).into_iter().map(|r| verify_thm1_i(field, r, opts)).collect()
            }
        }
        "thm1.ii" => {
            let ks = sel.k.clone().unwrap_or_else(|| admissible_even_cofactor_k(q));
            if ks.is_empty() {
                vec![skip_report(claim, field, "no divisor k of q-1 has even cofactor")]
            } else {
                ks.iter().map(|&k| verify_thm1_ii(field, k)).collect::<Result<Vec<_>>>()?
            }
        }
        "thm2" => {
            if q % 8 != 5 {
                vec![verify_thm2(field, 1)]
            } else {
                sel.r.resolve(q).into_iter().map(|r| verify_thm2(field, r)).collect()
            }
        }
        "thm3.i" => {
            let ks = sel.k.clone().unwrap_or_else(|| admissible_even_cofactor_k(q));
            if ks.is_empty() {
                vec![skip_report(claim, field, "no divisor k of q-1 has even cofactor")]
            } else {
                ks.iter().map(|&k| verify_thm3_i(field, k)).collect::<Result<Vec<_>>>()?
            }
        }
        "thm3.ii" => vec![verify_thm3_ii(field)],
        "thm3.iii" => {
            if q % 8 != 5 {
                vec![verify_thm3_iii(field, 1)]
            } else {
                sel.r.resolve(q).into_iter().map(|r| verify_thm3_iii(field, r)).collect()
            }
        }
        "lemma2.1" => {
            let ms = sel
                .m
                .clone()
                .unwrap_or_else(|| arith::divisors(q - 1).into_iter().filter(|&m| m > 1).collect());
            ms.iter()
                .map(|&m| {
                    let psis = sel
                        .psi
                        .clone()
                        .unwrap_or_else(|| (0..=(q as i64 - 2)).collect());
                    let sub: Vec<VerificationReport> =
                        psis.iter().map(|&s| verify_lemma21(field, m, s, opts)).collect();
                    fold_reports("lemma2.1", field, &[("m", m.to_string())], sub)
                })
                .collect()
        }
        "lemma2.2" => {
            if let (Some(a), Some(b)) = (sel.a, sel.b) {
                vec![crate::theorems::verify_lemma22(field, a as i64, b as i64, opts)]
            } else {
                vec![verify_lemma22_all_pairs(field, opts)]
            }
        }
        "lemma3.1" => {
            if let (Some(a), Some(b)) = (sel.a, sel.b) {
                vec![verify_lemma31(field, a, b)?]
            } else {
                let mut sub = Vec::new();
                for a in 1..=q - 2 {
                    for b in 0..=q - 2 {
                        sub.push(verify_lemma31(field, a, b)?);
                    }
                }
                vec![fold_reports("lemma3.1", field, &[("a", "all".into()), ("b", "all".into())], sub)]
            }
        }
        "eq1.1" => vec![verify_quadratic_gauss(field, opts)],
        "carlitz" => {
            if field.n() != 1 {
                vec![skip_report(claim, field, "Carlitz matrix needs a prime field")]
            } else {
                let psis = sel
                    .psi
                    .clone()
                    .unwrap_or_else(|| (1..=(q as i64 - 2)).collect());
                psis.iter()
                    .map(|&e| verify_carlitz(field, e, opts.precision, opts.tolerance))
                    .collect::<Result<Vec<_>>>()?
            }
        }
        "mordell" => {
            if field.n() != 1 {
                vec![skip_report(claim, field, "Mordell congruence concerns prime fields")]
            } else {
                vec![verify_mordell(field.p())]
            }
        }
        "eigen.m" => {
            if q % 4 != 3 {
                vec![skip_report(claim, field, "q is not 3 (mod 4)")]
            } else {
                sel.r
                    .resolve(q)
                    .into_iter()
                    .map(|r| eigen_structure_check(field, r, EigenVariant::M))
                    .collect::<Result<Vec<_>>>()?
            }
        }
        "eigen.n" => {
            if q % 8 != 5 {
                vec![skip_report(claim, field, "q is not 5 (mod 8)")]
            } else {
                sel.r
                    .resolve(q)
                    .into_iter()
                    .map(|r| eigen_structure_check(field, r, EigenVariant::N))
                    .collect::<Result<Vec<_>>>()?
            }
        }
        other => {
            return Err(Error::Config(format!(
                "unknown claim '{other}' (known: {})",
                ALL_CLAIMS.join(", ")
            )))
        }
    };
    Ok(reports)
}

fn skip_report(claim: &str, field: &FiniteField, reason: &str) -> VerificationReport {
    ReportBuilder::new(claim, Backend::Both)
        .param("q", field.q())
        .param("p", field.p())
        .param("n", field.n())
        .skip(reason)
}

/// Collapses per-case subreports into one aggregate report.
fn fold_reports(
    claim: &str,
    field: &FiniteField,
    extra_params: &[(&str, String)],
    sub: Vec<VerificationReport>,
) -> VerificationReport {
    let mut builder = ReportBuilder::new(claim, Backend::Both)
        .param("q", field.q())
        .param("p", field.p())
        .param("n", field.n());
    for (k, v) in extra_params {
        builder.set_param(k, v);
    }
    let total = sub.len();
    let passed = sub.iter().filter(|r| r.passed()).count();
    let skipped = sub.iter().filter(|r| r.status == Status::Skipped).count();
    let failed = sub.iter().filter(|r| r.failed()).count();
    if total == skipped && total > 0 {
        return builder.skip("all subchecks inapplicable");
    }
    let first_fail = sub
        .iter()
        .find(|r| r.failed())
        .map(|r| format!("; first failure at {:?}", r.parameters))
        .unwrap_or_default();
    builder.finish(
        failed == 0,
        format!("{passed}/{total} subchecks passed, {skipped} skipped"),
        format!("expected all applicable subchecks to pass{first_fail}"),
    )
}

/// Top-level report artifact.
#[derive(Debug, Serialize, Deserialize)]
pub struct SweepReport {
    pub version: String,
    pub config: SweepConfig,
    pub reports: Vec<VerificationReport>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

pub fn summarize(reports: &[VerificationReport]) -> Summary {
    Summary {
        pass: reports.iter().filter(|r| r.status == Status::Pass).count(),
        fail: reports.iter().filter(|r| r.status == Status::Fail).count(),
        skipped: reports.iter().filter(|r| r.status == Status::Skipped).count(),
    }
}

/// Odd prime powers in [lo, hi], optionally filtered by a congruence.
pub fn odd_prime_powers(lo: u64, hi: u64, q_mod: Option<(u64, u64)>) -> Vec<u64> {
    (lo.max(3)..=hi)
        .filter(|&q| q % 2 == 1)
        .filter(|&q| arith::prime_power(q).is_some())
        .filter(|&q| q_mod.map(|(res, m)| q % m == res % m).unwrap_or(true))
        .collect()
}

/// Runs a full sweep: every claim against every selected q, in parallel.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let opts = config.opts();
    let qs = odd_prime_powers(config.q_min, config.q_max, config.q_mod);
    let sel = ClaimSelection { r: config.r.clone(), ..ClaimSelection::default() };

    let tasks: Vec<(String, u64)> = config
        .claims
        .iter()
        .flat_map(|c| qs.iter().map(move |&q| (c.clone(), q)))
        .collect();

    let run_all = || -> Result<Vec<Vec<VerificationReport>>> {
        tasks
            .par_iter()
            .map(|(claim, q)| {
                let (p, n) = arith::prime_power(*q).expect("filtered to prime powers");
                let field = FiniteField::new(p, n)?;
                run_claim(claim, &field, &sel, &opts)
            })
            .collect()
    };

    let nested = if config.parallelism > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallelism)
            .build()
            .map_err(|e| Error::Config(format!("thread pool: {e}")))?
            .install(run_all)
    } else {
        run_all()
    }?;

    let reports: Vec<VerificationReport> = nested.into_iter().flatten().collect();
    let summary = summarize(&reports);
    Ok(SweepReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        reports,
        summary,
    })
}

fn short_hash(s: &str) -> String {
    let digest = Sha256::digest(s.as_bytes());
    digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

/// Renders a sweep report in the requested format.
pub fn render_report(report: &SweepReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => Ok(serde_json::to_string_pretty(report)?),
        ReportFormat::Csv => {
            let mut out =
                String::from("claim_id,p,n,q,k,r,status,backend,lhs_hash,rhs_hash,elapsed_ms\n");
            for r in &report.reports {
                let get = |key: &str| r.parameters.get(key).cloned().unwrap_or_default();
                let status = match r.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Skipped => "skipped",
                };
                let backend = match r.backend {
                    Backend::Exact => "exact",
                    Backend::Numeric => "numeric",
                    Backend::Both => "both",
                };
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{},{},{:.3}\n",
                    r.claim_id,
                    get("p"),
                    get("n"),
                    get("q"),
                    get("k"),
                    get("r"),
                    status,
                    backend,
                    short_hash(&r.lhs),
                    short_hash(&r.rhs),
                    r.elapsed_ms
                ));
            }
            Ok(out)
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for r in &report.reports {
                let params: Vec<String> =
                    r.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let status = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "skip",
                };
                let reason = r.reason.as_deref().map(|s| format!(" ({s})")).unwrap_or_default();
                out.push_str(&format!("{:8} {} [{}]{}\n", status, r.claim_id, params.join(" "), reason));
            }
            out.push_str(&format!(
                "summary: {} pass, {} fail, {} skipped\n",
                report.summary.pass, report.summary.fail, report.summary.skipped
            ));
            Ok(out)
        }
    }
}

// --- value rendering -------------------------------------------------------

/// Lossless JSON form of an exact cyclotomic value:
/// {"conductor": m, "coeffs": [["num", "den"], ...]}.
pub fn cycnum_to_json(v: &CycNum) -> serde_json::Value {
    let coeffs: Vec<serde_json::Value> = v
        .coeffs()
        .iter()
        .map(|c| serde_json::json!([c.numer().to_string(), c.denom().to_string()]))
        .collect();
    serde_json::json!({ "conductor": v.conductor(), "coeffs": coeffs })
}

/// Decimal-string JSON form of a complex approximation.
pub fn complex_to_json(v: &ComplexApprox) -> serde_json::Value {
    serde_json::json!({
        "re": v.re.to_decimal_string(None),
        "im": v.im.to_decimal_string(None),
        "precision_bits": v.precision(),
    })
}

fn field_element_json(x: &FieldElement) -> serde_json::Value {
    serde_json::json!(x.coeffs())
}

// --- sums / matrix commands ------------------------------------------------

/// Which sum the `sums` command evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumKind {
    Gauss,
    Jacobi,
    Binomial,
    Hyp2f1,
}

pub struct SumArgs {
    pub p: u64,
    pub n: u32,
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub r: i64,
    pub lambda: i64,
    pub precision: u32,
    pub exact_gauss: bool,
}

/// Evaluates one character sum and renders text plus JSON.
pub fn cmd_sums(kind: SumKind, args: &SumArgs) -> Result<(String, serde_json::Value)> {
    let field = FiniteField::new(args.p, args.n)?;
    let q = field.q();
    let prec = args.precision;
    match kind {
        SumKind::Gauss => {
            let g = gauss_sum(&field, args.r, prec);
            let (re, im) = g.to_f64_pair();
            let modulus = g.abs().to_f64();
            let mut json = serde_json::json!({
                "kind": "gauss", "q": q, "r": arith::norm_exp(args.r, q - 1),
                "complex": complex_to_json(&g),
            });
            let mut text =
                format!("G_q(chi^{}) = {re:.12} + {im:.12}i  (|.| = {modulus:.12})", args.r);
            if args.exact_gauss {
                let exact = gauss_sum_exact(&field, args.r, GAUSS_EXACT_PHI_BOUND)?;
                text.push_str(&format!("\nexact: {exact}"));
                json["exact"] = cycnum_to_json(&exact);
            }
            Ok((text, json))
        }
        SumKind::Jacobi => {
            let j = jacobi_sum(&field, args.a, args.b);
            let c = j.embed(prec);
            let (re, im) = c.to_f64_pair();
            let text = format!(
                "J_q(chi^{}, chi^{}) = {j}\ncomplex: {re:.12} + {im:.12}i",
                args.a, args.b
            );
            let json = serde_json::json!({
                "kind": "jacobi", "q": q, "a": arith::norm_exp(args.a, q - 1),
                "b": arith::norm_exp(args.b, q - 1),
                "exact": cycnum_to_json(&j), "complex": complex_to_json(&c),
            });
            Ok((text, json))
        }
        SumKind::Binomial => {
            let v = greene_binomial(&field, args.a, args.b);
            let c = v.embed(prec);
            let (re, im) = c.to_f64_pair();
            let text = format!(
                "(chi^{} over chi^{}) = {v}\ncomplex: {re:.12} + {im:.12}i",
                args.a, args.b
            );
            let json = serde_json::json!({
                "kind": "binomial", "q": q, "a": arith::norm_exp(args.a, q - 1),
                "b": arith::norm_exp(args.b, q - 1),
                "exact": cycnum_to_json(&v), "complex": complex_to_json(&c),
            });
            Ok((text, json))
        }
        SumKind::Hyp2f1 => {
            let lambda = field.from_int(args.lambda);
            let v = hyp2f1(&field, args.a, args.b, args.c, &lambda);
            let cx = v.embed(prec);
            let (re, im) = cx.to_f64_pair();
            let text = format!(
                "2F1(chi^{}, chi^{}; chi^{} | {}) = {v}\ncomplex: {re:.12} + {im:.12}i",
                args.a, args.b, args.c, args.lambda
            );
            let json = serde_json::json!({
                "kind": "hyp2f1", "q": q, "a": arith::norm_exp(args.a, q - 1),
                "b": arith::norm_exp(args.b, q - 1), "c": arith::norm_exp(args.c, q - 1),
                "lambda": args.lambda,
                "exact": cycnum_to_json(&v), "complex": complex_to_json(&cx),
            });
            Ok((text, json))
        }
    }
}

/// Matrix families the `matrix` command understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFamily {
    B,
    T,
    M,
    N,
    Carlitz,
}

impl MatrixFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "b" => Ok(MatrixFamily::B),
            "t" => Ok(MatrixFamily::T),
            "m" => Ok(MatrixFamily::M),
            "n" => Ok(MatrixFamily::N),
            "carlitz" => Ok(MatrixFamily::Carlitz),
            other => Err(Error::InvalidParameter(format!("unknown matrix family '{other}'"))),
        }
    }
}

pub struct MatrixArgs {
    pub p: u64,
    pub n: u32,
    pub k: u64,
    pub r: i64,
    pub psi: i64,
    pub precision: u32,
}

enum BuiltMatrix {
    Cyc(CycMatrix),
    Field(FieldMatrix),
}

fn build_family(family: MatrixFamily, field: &FiniteField, args: &MatrixArgs) -> Result<BuiltMatrix> {
    Ok(match family {
        MatrixFamily::B => BuiltMatrix::Cyc(build_b(field, args.k, args.r)?),
        MatrixFamily::T => BuiltMatrix::Field(build_t(field, args.k, args.r)?),
        MatrixFamily::M => BuiltMatrix::Cyc(build_m(field, args.r)?),
        MatrixFamily::N => BuiltMatrix::Cyc(build_n(field, args.r)?),
        MatrixFamily::Carlitz => BuiltMatrix::Cyc(build_carlitz(field, args.psi)?),
    })
}

/// Builds a matrix and renders its entries.
pub fn cmd_matrix_build(
    family: MatrixFamily,
    args: &MatrixArgs,
) -> Result<(String, serde_json::Value)> {
    let field = FiniteField::new(args.p, args.n)?;
    match build_family(family, &field, args)? {
        BuiltMatrix::Cyc(m) => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for i in 0..m.dim() {
                let mut row = Vec::new();
                for j in 0..m.dim() {
                    let e = m.get(i, j);
                    text.push_str(&format!("[{i},{j}] {e}\n"));
                    row.push(cycnum_to_json(e));
                }
                rows.push(serde_json::Value::Array(row));
            }
            let json = serde_json::json!({
                "family": format!("{family:?}"), "q": field.q(), "dim": m.dim(),
                "conductor": m.conductor(), "entries": rows,
            });
            Ok((text, json))
        }
        BuiltMatrix::Field(m) => {
            let mut text = String::new();
            let mut rows = Vec::new();
            for i in 0..m.dim() {
                let mut row = Vec::new();
                for j in 0..m.dim() {
                    let e = m.get(i, j);
                    text.push_str(&format!("[{i},{j}] {:?}\n", e.coeffs()));
                    row.push(field_element_json(e));
                }
                rows.push(serde_json::Value::Array(row));
            }
            let json = serde_json::json!({
                "family": format!("{family:?}"), "q": field.q(), "dim": m.dim(),
                "entries": rows,
            });
            Ok((text, json))
        }
    }
}

/// Builds a matrix and renders its determinant.
pub fn cmd_matrix_det(
    family: MatrixFamily,
    args: &MatrixArgs,
) -> Result<(String, serde_json::Value)> {
    let field = FiniteField::new(args.p, args.n)?;
    match build_family(family, &field, args)? {
        BuiltMatrix::Cyc(m) => {
            let det = det_exact(&m);
            let c = det.embed(args.precision);
            let (re, im) = c.to_f64_pair();
            let text = format!("det = {det}\ncomplex: {re:.12} + {im:.12}i");
            let json = serde_json::json!({
                "family": format!("{family:?}"), "q": field.q(), "dim": m.dim(),
                "det": cycnum_to_json(&det), "complex": complex_to_json(&c),
            });
            Ok((text, json))
        }
        BuiltMatrix::Field(m) => {
            let det = det_field(&field, &m);
            let text = format!("det = {:?} over F_{}", det.coeffs(), field.q());
            let json = serde_json::json!({
                "family": format!("{family:?}"), "q": field.q(), "dim": m.dim(),
                "det": field_element_json(&det),
            });
            Ok((text, json))
        }
    }
}
