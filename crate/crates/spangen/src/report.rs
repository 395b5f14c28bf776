//! JSON reports emitted by the command-line verbs.

use serde_json::{json, Value};
use spangen_core::keys::KeyAnalysis;
use spangen_core::statmech::{AnalyticityReport, Observables, TransitionWindow};
use spangen_core::theorem::{
    Certification, Conclusion, Falsification, LcViolation, LogConcavity, Outcome, ScanReport,
    ScanTrial, Subject, WeightClass,
};
use spangen_core::{KeyFamily, KeyPolynomial, Root, RootStatus, Verdict};

use crate::error::{format_err, Result};
use crate::json::{
    activities_to_json, complex_json, graph_to_json, region_to_json, root_to_json, scalar_to_json,
    unipoly_to_json,
};

/// `nonneg`, `bounded:λmax` or `atleast:λmin`.
pub fn parse_weight_class(s: &str) -> Result<WeightClass> {
    let s = s.trim();
    let num = |x: &str| {
        x.trim()
            .parse::<f64>()
            .map_err(|_| format_err!("bad bound in weight class {s:?}"))
    };
    Ok(match s.split_once(':') {
        None if s == "nonneg" => WeightClass::NonnegReal,
        Some(("bounded", x)) => WeightClass::bounded_modulus(num(x)?)?,
        Some(("atleast", x)) => WeightClass::modulus_at_least(num(x)?)?,
        _ => {
            return Err(format_err!(
                "bad weight class {s:?}; expected nonneg, bounded:L or atleast:L"
            ))
        }
    })
}

pub fn weight_class_label(c: &WeightClass) -> String {
    match c {
        WeightClass::NonnegReal => "nonneg".into(),
        WeightClass::BoundedModulus(m) => format!("bounded:{m}"),
        WeightClass::ModulusAtLeast(m) => format!("atleast:{m}"),
    }
}

fn verdict_label(v: Verdict) -> &'static str {
    match v {
        Verdict::Holds => "holds",
        Verdict::Fails => "fails",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn status_label(s: RootStatus) -> &'static str {
    match s {
        RootStatus::Inside => "inside",
        RootStatus::Boundary => "boundary",
        RootStatus::Outside => "outside",
    }
}

pub fn outcome_label(o: Outcome) -> &'static str {
    match o {
        Outcome::Pass => "pass",
        Outcome::Fail => "fail",
        Outcome::Inconclusive => "inconclusive",
    }
}

pub fn key_report(family: &KeyFamily, key: &KeyPolynomial, a: &KeyAnalysis) -> Value {
    json!({
        "family": family.to_string(),
        "degree": key.degree_bound(),
        "activities": key.activities().iter().map(scalar_to_json).collect::<Vec<_>>(),
        "key": unipoly_to_json(key.poly(), "z"),
        "roots": a.roots.iter().map(root_to_json).collect::<Vec<_>>(),
        "origin_multiplicity": a.origin_multiplicity,
        "sector_max": a.sector_max,
        "sector_max_over_pi": a.sector_max / std::f64::consts::PI,
        "disk_radius": finite_or_label(a.disk_radius),
        "exterior_radius": a.exterior_radius,
        "degree_full": a.degree_full,
        "verified": a.verified,
    })
}

fn finite_or_label(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        json!("inf")
    }
}

pub fn conclusion_json(c: &Conclusion) -> Value {
    let diagnostics: Vec<Value> = c
        .diagnostics
        .iter()
        .map(|d| {
            let subject = match d.subject {
                Subject::Vertex(v) => json!({ "vertex": v }),
                Subject::Edge(e) => json!({ "edge": e }),
                Subject::Parameter => json!("parameter"),
            };
            json!({ "subject": subject, "verdict": verdict_label(d.verdict), "detail": d.detail })
        })
        .collect();
    json!({
        "class": weight_class_label(&c.class),
        "parameter": c.parameter,
        "hypotheses_ok": c.hypotheses_ok,
        "multivariate_region": c.multivariate_region.as_ref().map(region_to_json),
        "univariate_region": c.univariate_region.as_ref().map(region_to_json),
        "diagnostics": diagnostics,
    })
}

fn status_root(r: &Root, s: RootStatus) -> Value {
    let mut v = root_to_json(r);
    v["status"] = json!(status_label(s));
    v
}

pub fn certification_json(c: &Certification) -> Value {
    json!({
        "verdict": outcome_label(c.outcome),
        "region": c.region.to_string(),
        "degenerate": c.degenerate,
        "polynomial": unipoly_to_json(&c.polynomial, "y"),
        "roots": c.roots.iter().map(|(r, s)| status_root(r, *s)).collect::<Vec<_>>(),
        "verified": c.verified,
    })
}

pub fn falsification_json(f: &Falsification, region: &spangen_core::Region, seed: u64) -> Value {
    let best = f.best.as_ref().map(|p| {
        let point: serde_json::Map<String, Value> = p
            .point
            .iter()
            .map(|(v, z)| (v.to_string(), complex_json(*z)))
            .collect();
        json!({ "index": p.index, "normalized": p.normalized, "point": point })
    });
    json!({
        "region": region.to_string(),
        "seed": seed,
        "samples": f.samples,
        "degenerate": f.degenerate,
        "best": best,
        "candidate": f.candidate,
        "recheck": f.recheck,
        "counterexample": f.confirmed,
    })
}

pub fn logconcavity_json(v: &LogConcavity) -> Value {
    match v {
        LogConcavity::Pass => json!({ "verdict": "pass" }),
        LogConcavity::Fail { index, reason } => json!({
            "verdict": "fail",
            "index": index,
            "reason": match reason {
                LcViolation::InternalZero => "internal_zero",
                LcViolation::Inequality => "inequality",
            },
        }),
        LogConcavity::NotApplicable { index } => {
            json!({ "verdict": "not_applicable", "index": index })
        }
    }
}

/// Everything needed to replay one scan trial.
pub fn trial_payload(t: &ScanTrial) -> Value {
    json!({
        "index": t.index,
        "seed": t.seed,
        "graph": graph_to_json(&t.graph),
        "windows": t.windows,
        "activities": activities_to_json(&t.activities),
        "coefficients": t.coefficients.as_ref().map(|p| unipoly_to_json(p, "y")),
        "check": t.verdict.as_ref().map(logconcavity_json),
    })
}

pub fn scan_json(r: &ScanReport, seed: u64) -> Value {
    json!({
        "seed": seed,
        "trials": r.trials,
        "passes": r.passes,
        "not_applicable": r.not_applicable,
        "violations": r.violations.iter().map(trial_payload).collect::<Vec<_>>(),
        "skipped": r.skipped.iter().map(|(i, why)| json!({ "index": i, "reason": why })).collect::<Vec<_>>(),
    })
}

pub fn observables_json(o: &Observables) -> Value {
    json!({
        "Z": scalar_to_json(&o.partition),
        "log_Z": o.log_partition,
        "expected_edges": scalar_to_json(&o.expected_edges),
        "expected_degree_counts": o.expected_degree_counts.iter().map(scalar_to_json).collect::<Vec<_>>(),
        "free_energy": o.free_energy,
    })
}

fn window_json(w: &TransitionWindow) -> Value {
    match *w {
        TransitionWindow::Empty => json!({ "type": "empty" }),
        TransitionWindow::Point(j) => json!({ "type": "point", "J": j }),
        TransitionWindow::Interval { lower, upper } => json!({
            "type": "interval",
            "lower": if lower.is_finite() { json!(lower) } else { json!("-inf") },
            "upper": if upper.is_finite() { json!(upper) } else { json!("inf") },
        }),
    }
}

pub fn analyticity_json(r: &AnalyticityReport) -> Value {
    let clause = |c: Option<(f64, f64)>| c.map(|(kappa, j0)| json!({ "kappa": kappa, "J0": j0 }));
    json!({
        "degree": r.degree,
        "beta": r.beta,
        "activities": r.activities.iter().map(scalar_to_json).collect::<Vec<_>>(),
        "key": unipoly_to_json(r.key.poly(), "z"),
        "roots": r.analysis.roots.iter().map(root_to_json).collect::<Vec<_>>(),
        "sector_max": r.analysis.sector_max,
        "sector_epsilon": r.sector_epsilon,
        "disk": clause(r.disk),
        "exterior": clause(r.exterior),
        "modulus_window": r.modulus_window.as_ref().map(window_json),
        "window": window_json(&r.window),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_classes_parse() {
        assert_eq!(
            parse_weight_class("nonneg").unwrap(),
            WeightClass::NonnegReal
        );
        assert_eq!(
            parse_weight_class("bounded:2").unwrap(),
            WeightClass::BoundedModulus(2.0)
        );
        assert_eq!(
            parse_weight_class("atleast:0.5").unwrap(),
            WeightClass::ModulusAtLeast(0.5)
        );
        assert!(parse_weight_class("bounded:-1").is_err());
        assert!(parse_weight_class("positive").is_err());
    }

    #[test]
    fn logconcavity_labels() {
        let v = logconcavity_json(&LogConcavity::Fail {
            index: 2,
            reason: LcViolation::InternalZero,
        });
        assert_eq!(
            v,
            json!({"verdict": "fail", "index": 2, "reason": "internal_zero"})
        );
    }
}
