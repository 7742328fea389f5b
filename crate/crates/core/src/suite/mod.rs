//! Batch runner: expands a configuration into check instances, runs them,
//! and assembles a deterministic report.

pub mod registry;
pub mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::cyclo::Verdict;
use crate::error::{Error, Result};
use crate::exec::{with_jobs, Strategy};
use crate::padic::{is_prime, run_classical, ClassicalCheck, ClassicalId};
use crate::qseries::bridge::{self, BridgeSum};
use crate::qseries::corollary::{check_corollary_with, Corollary};
use crate::qseries::crt::check_crt_relations;
use crate::qseries::lemmas::{
    check_lemma_la1, check_lemma_la2, check_lemma_la3, check_thm2_with, Abce, LemmaShape,
};
use crate::qseries::lhospital::{check_lhospital_limit, default_points};
use crate::qseries::theorem::{check_theorem_general_with, Shape};
use crate::qseries::watson::{check_watson, WatsonParams};
use crate::qseries::{ParamValue, Sampler, TheoremInstance, Truncation};

pub use registry::{CheckId, Grid};
pub use report::{Format, Record, Report, Summary, Timing};

/// Redraws allowed per sample before giving up on a grid point.
const MAX_DRAWS: u32 = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    /// Check ids; empty selects every check.
    pub checks: Vec<String>,
    /// `n` grid for q-series checks; `None` uses each check's default.
    pub n_list: Option<Vec<i64>>,
    /// Prime grid for classical checks and the bridge.
    pub p_list: Option<Vec<u64>>,
    pub d: i64,
    pub r: i64,
    pub samples: u32,
    pub seed: u64,
    /// Power of `p` for classical checks; `None` uses the stated power.
    pub precision: Option<u32>,
    pub max_n: i64,
    pub output_format: Format,
    pub jobs: Option<usize>,
    /// Raises the top cyclotomic power of q-series moduli (negative control).
    pub extra_power: u32,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            checks: Vec::new(),
            n_list: None,
            p_list: None,
            d: 3,
            r: -1,
            samples: 5,
            seed: 42,
            precision: None,
            max_n: 40,
            output_format: Format::Json,
            jobs: None,
            extra_power: 0,
        }
    }
}

impl SuiteConfig {
    /// Selected checks in registry order; rejects unknown ids.
    pub fn selected(&self) -> Result<Vec<CheckId>> {
        if self.checks.is_empty() {
            return Ok(CheckId::all());
        }
        let mut set = BTreeSet::new();
        for c in &self.checks {
            set.insert(c.parse::<CheckId>()?);
        }
        Ok(CheckId::all()
            .into_iter()
            .filter(|c| set.contains(c))
            .collect())
    }

    /// Usage-level validation, done before any work.
    pub fn validate(&self) -> Result<Vec<CheckId>> {
        let checks = self.selected()?;
        if checks.iter().any(|c| c.sampled()) && self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be positive".into()));
        }
        if checks.iter().any(|c| c.grid() == Grid::Prime) {
            for &p in self.p_list.iter().flatten() {
                if !is_prime(p) {
                    return Err(Error::InvalidConfig(format!(
                        "{p} in the prime list is not prime"
                    )));
                }
            }
        }
        if let Some(m) = self.precision {
            for c in &checks {
                if let CheckId::Classical(id) = c {
                    if m < id.stated_precision() {
                        return Err(Error::InvalidConfig(format!(
                            "precision {m} is below the stated power {} of {id}",
                            id.stated_precision()
                        )));
                    }
                }
            }
        }
        Ok(checks)
    }

    fn grid(&self, c: CheckId) -> Vec<i64> {
        match c.grid() {
            Grid::Prime => match &self.p_list {
                Some(ps) => ps.iter().map(|&p| p as i64).collect(),
                None => c.default_grid(),
            },
            _ => self.n_list.clone().unwrap_or_else(|| c.default_grid()),
        }
    }
}

/// One grid point of one check.
struct Task {
    check: CheckId,
    g: i64,
}

/// Runs the whole suite.
pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    let checks = config.validate()?;
    let mut tasks = Vec::new();
    for &check in &checks {
        let mut seen = BTreeSet::new();
        for g in config.grid(check) {
            if seen.insert(g) {
                tasks.push(Task { check, g });
            }
        }
    }
    let start = Instant::now();
    let results = with_jobs(config.jobs, || {
        Strategy::default().map(&tasks, |t| {
            let t0 = Instant::now();
            let records = run_point(config, t.check, t.g);
            (records, t0.elapsed().as_secs_f64() * 1e3)
        })
    });
    let mut per_check_ms = BTreeMap::new();
    let mut records = Vec::new();
    for (t, (rs, ms)) in tasks.iter().zip(results) {
        *per_check_ms.entry(t.check.id().to_string()).or_insert(0.0) += ms;
        records.extend(rs);
    }
    records.extend(implication_violations(config, &records));
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let summary = Summary::of(&records);
    Ok(Report {
        version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        records,
        summary,
        timing: Timing {
            total_ms: start.elapsed().as_secs_f64() * 1e3,
            per_check_ms,
        },
    })
}

/// Whenever the two minus-third congruences hold at `p`, the combined one
/// must hold there too; a violation is reported as a failing record.
fn implication_violations(config: &SuiteConfig, records: &[Record]) -> Vec<Record> {
    let passing = |id: ClassicalId| -> BTreeSet<i64> {
        records
            .iter()
            .filter(|r| r.check == id.id() && r.pass && !r.skipped)
            .map(|r| r.order.0)
            .collect()
    };
    let both: BTreeSet<i64> = passing(ClassicalId::Equ7)
        .intersection(&passing(ClassicalId::Equ8))
        .copied()
        .collect();
    let mut out = Vec::new();
    for p in both {
        let check = ClassicalCheck::with_precision(
            ClassicalId::CombinedRare,
            p as u64,
            config.precision.unwrap_or(4),
        );
        let holds = matches!(check.and_then(|c| run_classical(&c)), Ok(o) if o.pass);
        if !holds {
            let mut params = Map::new();
            params.insert("p".into(), json!(p));
            out.push(Record {
                check: ClassicalId::CombinedRare.id().into(),
                params,
                modulus: format!("{p}^4"),
                variant: "implied by equ7 and equ8".into(),
                pass: false,
                witness: None,
                skipped: false,
                reason: Some("equ7 and equ8 hold but combined_rare does not".into()),
                order: (p, u32::MAX, 0),
            });
        }
    }
    out
}

fn shape_params(n: i64, d: i64, r: i64) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("n".into(), json!(n));
    m.insert("d".into(), json!(d));
    m.insert("r".into(), json!(r));
    m
}

fn base_params(check: CheckId, config: &SuiteConfig, g: i64) -> Map<String, Value> {
    let mut m = match check.grid() {
        Grid::Shape => shape_params(g, config.d, config.r),
        Grid::N => {
            let mut m = Map::new();
            m.insert("n".into(), json!(g));
            m
        }
        Grid::Prime => {
            let mut m = Map::new();
            m.insert("p".into(), json!(g));
            m
        }
    };
    if let Some(s) = check.status() {
        m.insert("status".into(), json!(s));
    }
    m
}

fn verdict_record(
    check: CheckId,
    params: Map<String, Value>,
    order: (i64, u32, u32),
    variant: String,
    v: Result<Verdict>,
) -> Record {
    match v {
        Ok(v) => Record {
            check: check.id().into(),
            params,
            modulus: v.modulus.clone(),
            variant,
            pass: v.pass,
            witness: v.failure_witness.as_ref().map(|w| json!(w)),
            skipped: false,
            reason: None,
            order,
        },
        Err(e) => Record {
            check: check.id().into(),
            params,
            modulus: String::new(),
            variant,
            pass: false,
            witness: None,
            skipped: false,
            reason: Some(e.to_string()),
            order,
        },
    }
}

fn is_precondition(e: &Error) -> bool {
    matches!(e, Error::Precondition(_) | Error::NotPrime(_))
}

fn is_redraw(e: &Error) -> bool {
    matches!(e, Error::ZeroFactor(_) | Error::DegenerateSample(_))
}

/// All records for one grid point.
fn run_point(config: &SuiteConfig, check: CheckId, g: i64) -> Vec<Record> {
    let params = base_params(check, config, g);
    if check.grid() != Grid::Prime && g > config.max_n {
        return vec![Record::skip(
            check.id(),
            g,
            params,
            format!("n = {g} exceeds max_n = {}", config.max_n),
        )];
    }
    match precondition(config, check, g) {
        Ok(()) => {}
        Err(e) => return vec![Record::skip(check.id(), g, params, e.to_string())],
    }
    if check.sampled() {
        sampled_point(config, check, g, params)
    } else {
        fixed_point(config, check, g, params)
    }
}

fn precondition(config: &SuiteConfig, check: CheckId, g: i64) -> Result<()> {
    let (d, r) = (config.d, config.r);
    match check {
        CheckId::TheoremGeneral => Shape::new(g, d, r).map(|_| ()),
        CheckId::La1 => {
            let s = LemmaShape::new(g, d, r)?;
            if !(s.n + s.d - s.n * s.d <= s.r && s.r <= s.n) {
                return Err(Error::Precondition(format!(
                    "la1 requires n + d - nd <= r <= n, got (n, d, r) = ({g}, {d}, {r})"
                )));
            }
            Ok(())
        }
        CheckId::La2 | CheckId::Thm2 | CheckId::Lhospital => LemmaShape::unit(g, d, r).map(|_| ()),
        CheckId::La3 => LemmaShape::new(g, d, r)?.m1().map(|_| ()),
        CheckId::Watson => (g >= 0)
            .then_some(())
            .ok_or_else(|| Error::Precondition("truncation order must be nonnegative".into())),
        CheckId::Crt => (g >= 1)
            .then_some(())
            .ok_or_else(|| Error::Precondition("crt requires n >= 1".into())),
        CheckId::Corollary(c) => c.admits(g),
        CheckId::Bridge => bridge::admits(g as u64),
        CheckId::Classical(id) => ClassicalCheck::with_precision(
            id,
            g as u64,
            config.precision.unwrap_or(id.stated_precision()),
        )
        .map(|_| ()),
    }
}

/// One draw of free parameters, as display strings and as a runnable closure
/// input.
enum Draw {
    Theorem(ParamValue, ParamValue),
    Watson(WatsonParams),
    Lemma(Abce),
    Crt(crate::kernel::Rational, crate::kernel::Rational),
}

impl Draw {
    fn describe(&self) -> Map<String, Value> {
        let mut m = Map::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.into(), Value::String(v));
        };
        match self {
            Draw::Theorem(c, e) => {
                put("c", c.to_string());
                put("e", e.to_string());
            }
            Draw::Watson(p) => {
                put("a", p.a.to_string());
                put("b", p.b.to_string());
                put("c", p.c.to_string());
                put("d", p.d.to_string());
                put("e", p.e.to_string());
            }
            Draw::Lemma(p) => {
                put("a", p.a.to_string());
                put("b", p.b.to_string());
                put("c", p.c.to_string());
                put("e", p.e.to_string());
            }
            Draw::Crt(a, b) => {
                put("a", a.to_string());
                put("b", b.to_string());
            }
        }
        m
    }
}

fn draw(check: CheckId, s: &mut Sampler, index: u32) -> Draw {
    match check {
        CheckId::TheoremGeneral => Draw::Theorem(s.param(), s.param()),
        CheckId::Watson => Draw::Watson(WatsonParams {
            a: s.param(),
            b: s.param(),
            c: s.param(),
            d: s.param(),
            e: s.param(),
        }),
        CheckId::La3 if index == 0 => Draw::Lemma(Abce {
            a: ParamValue::one(),
            b: ParamValue::one(),
            c: s.param(),
            e: s.param(),
        }),
        CheckId::Crt => Draw::Crt(s.rational(), s.rational()),
        _ => Draw::Lemma(Abce {
            a: s.param(),
            b: s.param(),
            c: s.param(),
            e: s.param(),
        }),
    }
}

/// Variants of one sample: `(label, verdict)`.
fn run_draw(
    config: &SuiteConfig,
    check: CheckId,
    g: i64,
    d: &Draw,
) -> Vec<(String, Result<Verdict>)> {
    let (dd, r, extra) = (config.d, config.r, config.extra_power);
    match (check, d) {
        (CheckId::TheoremGeneral, Draw::Theorem(c, e)) => Truncation::BOTH
            .iter()
            .map(|&w| {
                let v = TheoremInstance::new(g, dd, r, c.clone(), e.clone(), w)
                    .and_then(|t| check_theorem_general_with(&t, extra));
                (w.label().to_string(), v)
            })
            .collect(),
        (CheckId::Watson, Draw::Watson(p)) => vec![(String::new(), check_watson(g as u64, p))],
        (CheckId::La1, Draw::Lemma(p)) => {
            vec![(
                String::new(),
                LemmaShape::new(g, dd, r).and_then(|s| check_lemma_la1(&s, p)),
            )]
        }
        (CheckId::La2, Draw::Lemma(p)) => Truncation::BOTH
            .iter()
            .map(|&w| {
                let v = LemmaShape::unit(g, dd, r).and_then(|s| check_lemma_la2(&s, p, w));
                (w.label().to_string(), v)
            })
            .collect(),
        (CheckId::La3, Draw::Lemma(p)) => {
            vec![(
                String::new(),
                LemmaShape::new(g, dd, r).and_then(|s| check_lemma_la3(&s, p)),
            )]
        }
        (CheckId::Thm2, Draw::Lemma(p)) => vec![(
            String::new(),
            LemmaShape::unit(g, dd, r).and_then(|s| check_thm2_with(&s, p, extra)),
        )],
        (CheckId::Crt, Draw::Crt(a, b)) => {
            vec![(String::new(), check_crt_relations(g as usize, a, b))]
        }
        _ => unreachable!("draw kind matches its check"),
    }
}

fn sampled_point(
    config: &SuiteConfig,
    check: CheckId,
    g: i64,
    params: Map<String, Value>,
) -> Vec<Record> {
    let tag = match check.grid() {
        Grid::Shape => format!("{}/n={g}/d={}/r={}", check.id(), config.d, config.r),
        _ => format!("{}/n={g}", check.id()),
    };
    let mut sampler = Sampler::new(config.seed, &tag);
    let mut seen = BTreeSet::new();
    let mut records = Vec::new();
    for index in 0..config.samples {
        let mut draws = 0;
        let outcome = loop {
            draws += 1;
            if draws > MAX_DRAWS {
                break None;
            }
            let d = draw(check, &mut sampler, index);
            let key = serde_json::to_string(&d.describe()).expect("map serializes");
            if !seen.insert(key) {
                continue;
            }
            let results = run_draw(config, check, g, &d);
            if results
                .iter()
                .any(|(_, v)| matches!(v, Err(e) if is_redraw(e)))
            {
                continue;
            }
            if let Some((_, Err(e))) = results
                .iter()
                .find(|(_, v)| matches!(v, Err(e) if is_precondition(e)))
            {
                return vec![Record::skip(check.id(), g, params, e.to_string())];
            }
            break Some((d, results));
        };
        let Some((d, results)) = outcome else {
            records.push(verdict_record(
                check,
                params.clone(),
                (g, index, 0),
                String::new(),
                Err(Error::DegenerateSample(format!(
                    "no admissible sample after {MAX_DRAWS} draws"
                ))),
            ));
            continue;
        };
        let mut p = params.clone();
        p.insert("sample".into(), json!(index));
        p.extend(d.describe());
        if check == CheckId::La2 {
            p.insert("b".into(), json!(format!("q^{g}")));
        }
        for (vi, (label, v)) in results.into_iter().enumerate() {
            records.push(verdict_record(
                check,
                p.clone(),
                (g, index, vi as u32),
                label,
                v,
            ));
        }
    }
    records
}

fn fixed_point(
    config: &SuiteConfig,
    check: CheckId,
    g: i64,
    params: Map<String, Value>,
) -> Vec<Record> {
    let (d, r, extra) = (config.d, config.r, config.extra_power);
    let mut out = Vec::new();
    match check {
        CheckId::Lhospital => {
            let v = LemmaShape::unit(g, d, r)
                .and_then(|s| check_lhospital_limit(&s, &default_points()).map(|(v, _)| v));
            out.push(verdict_record(check, params, (g, 0, 0), String::new(), v));
        }
        CheckId::Corollary(c) => {
            let substs: &[u32] = if c == Corollary::C23 { &[2, 4] } else { &[1] };
            let mut vi = 0;
            for &w in c.truncations() {
                for &sub in substs {
                    let m = match w {
                        Truncation::Short => "M=(n+1)/3",
                        Truncation::Long => "M=n-1",
                    };
                    let label = if c == Corollary::C23 {
                        format!("{m}, D={sub}")
                    } else {
                        m.to_string()
                    };
                    let v = check_corollary_with(c, g, w, sub, extra);
                    out.push(verdict_record(check, params.clone(), (g, 0, vi), label, v));
                    vi += 1;
                }
            }
        }
        CheckId::Bridge => {
            for (vi, which) in BridgeSum::ALL.into_iter().enumerate() {
                let v = bridge::check_q_to_1_bridge(which, g as u64).map(|(v, _)| v);
                out.push(verdict_record(
                    check,
                    params.clone(),
                    (g, 0, vi as u32),
                    which.id().into(),
                    v,
                ));
            }
        }
        CheckId::Classical(id) => {
            let m = config.precision.unwrap_or(id.stated_precision());
            let mut p = params;
            if id != ClassicalId::Equ9 {
                p.insert("precision".into(), json!(m));
            }
            let outcome =
                ClassicalCheck::with_precision(id, g as u64, m).and_then(|c| run_classical(&c));
            out.push(match outcome {
                Ok(o) => {
                    if let Some(b) = &o.branch {
                        p.insert("branch".into(), json!(b));
                    }
                    Record {
                        check: id.id().into(),
                        params: p,
                        modulus: o.modulus.clone(),
                        variant: String::new(),
                        pass: o.pass,
                        witness: (!o.pass).then(|| json!({ "lhs": o.lhs, "rhs": o.rhs })),
                        skipped: false,
                        reason: None,
                        order: (g, 0, 0),
                    }
                }
                Err(e) => verdict_record(check, p, (g, 0, 0), String::new(), Err(e)),
            });
        }
        _ => unreachable!("sampled checks are handled separately"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(checks: &[&str]) -> SuiteConfig {
        SuiteConfig {
            checks: checks.iter().map(|s| s.to_string()).collect(),
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn theorem_grid_gives_thirty_records() {
        let c = SuiteConfig {
            n_list: Some(vec![2, 5, 8]),
            ..config(&["theorem_general"])
        };
        let r = run_suite(&c).unwrap();
        assert_eq!(r.records.len(), 30);
        assert_eq!(
            r.summary,
            Summary {
                pass: 30,
                fail: 0,
                skip: 0
            }
        );
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn non_prime_is_a_usage_error() {
        let c = SuiteConfig {
            p_list: Some(vec![4]),
            ..config(&["lehmer"])
        };
        assert!(matches!(run_suite(&c), Err(Error::InvalidConfig(_))));
        assert!(matches!(
            run_suite(&config(&["nope"])),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn residue_class_violation_is_a_skip() {
        let c = SuiteConfig {
            n_list: Some(vec![2]),
            ..config(&["equ3"])
        };
        let r = run_suite(&c).unwrap();
        assert_eq!(r.records.len(), 1);
        assert!(r.records[0].skipped);
        assert!(r.records[0].reason.as_deref().unwrap().contains("n > 2"));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn empty_grid_gives_an_empty_valid_document() {
        let c = SuiteConfig {
            n_list: Some(vec![]),
            ..config(&["c22"])
        };
        let r = run_suite(&c).unwrap();
        assert!(r.records.is_empty());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["records"], json!([]));
    }

    #[test]
    fn conjecture_is_flagged() {
        let c = SuiteConfig {
            n_list: Some(vec![4]),
            ..config(&["equ4"])
        };
        let r = run_suite(&c).unwrap();
        assert_eq!(r.records.len(), 1);
        assert!(r.records[0].pass);
        assert_eq!(r.records[0].params["status"], json!("conjecture"));
    }

    #[test]
    fn la3_sample_zero_is_degenerate() {
        let c = SuiteConfig {
            n_list: Some(vec![5]),
            samples: 2,
            ..config(&["la3"])
        };
        let r = run_suite(&c).unwrap();
        assert_eq!(r.records.len(), 2);
        assert_eq!(r.records[0].params["a"], json!("1"));
        assert_eq!(r.records[0].params["b"], json!("1"));
        assert!(r.records.iter().all(|x| x.pass));
    }

    #[test]
    fn failing_record_carries_a_coefficient_witness() {
        let c = SuiteConfig {
            n_list: Some(vec![5]),
            samples: 1,
            extra_power: 1,
            ..config(&["theorem_general"])
        };
        let r = run_suite(&c).unwrap();
        let failing: Vec<_> = r.records.iter().filter(|x| !x.pass).collect();
        assert!(!failing.is_empty());
        let w = failing[0].witness.as_ref().unwrap();
        assert!(w["remainder"].as_array().is_some_and(|a| !a.is_empty()));
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn payload_is_deterministic() {
        let c = SuiteConfig {
            n_list: Some(vec![2, 5]),
            p_list: Some(vec![5, 11]),
            samples: 2,
            ..config(&[
                "theorem_general",
                "watson",
                "crt",
                "equ8",
                "combined_rare",
                "bridge",
            ])
        };
        let a = run_suite(&c).unwrap();
        let b = run_suite(&c).unwrap();
        assert_eq!(a.comparable_json(), b.comparable_json());
        let single = run_suite(&SuiteConfig { jobs: Some(1), ..c }).unwrap();
        assert_eq!(a.records, single.records);
    }
}
