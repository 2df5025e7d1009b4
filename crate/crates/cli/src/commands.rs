//! Subcommand implementations. Each one resolves its objects, delegates to
//! the core operation of the same name, and renders a report.

use serde_json::{json, Value};

use gcorr_core::correspondence::{
    check_proper, compute_adjoining, etale_normalize, restrict_to_units, validate_bispace,
    verify_properness_equation, Correspondence,
};
use gcorr_core::groupoid::{validate_groupoid, validate_haar};
use gcorr_core::hyper::{transfer, verify_imprimitivity, KtAlgebra};
use gcorr_core::measure::check_invariance;
use gcorr_core::module::left_matrix;
use gcorr_core::numeric::{mats_close, mats_max_diff};
use gcorr_core::rat::format_rat;
use gcorr_core::report::Report as CoreReport;

use crate::literal::{format_complex, format_f64, parse_element};
use crate::report::{CheckResult, Report};
use crate::schema::{CliError, ResolvedDocument};

fn violations(report: &CoreReport) -> Vec<String> {
    report.violations.iter().map(|v| v.to_string()).collect()
}

fn check_from_core(name: String, report: &CoreReport) -> CheckResult {
    if report.is_valid() {
        CheckResult::pass(name)
    } else {
        CheckResult::fail(name, violations(report))
    }
}

/// The axioms every correspondence-consuming command relies on: groupoid
/// and Haar laws for both sides, action laws, the strict bispace axioms,
/// and H-invariance of the family. Returns a failing check when violated,
/// so downstream certificates are never computed from broken data.
fn precondition_gate(
    doc: &ResolvedDocument,
    name: &str,
    corr: &Correspondence,
) -> Option<CheckResult> {
    let mut witnesses = Vec::new();
    if let Some(record) = doc.document.bispaces.get(name) {
        let mut groupoid_names = vec![record.left_groupoid.clone(), record.right_groupoid.clone()];
        groupoid_names.dedup();
        for gname in groupoid_names {
            let (groupoid, haar) = &doc.groupoids[&gname];
            for v in validate_groupoid(groupoid).violations {
                witnesses.push(format!("groupoid {gname}: {v}"));
            }
            for v in validate_haar(groupoid, haar).violations {
                witnesses.push(format!("haar {gname}: {v}"));
            }
        }
    }
    for v in corr.bispace.left().validate().violations {
        witnesses.push(format!("left action: {v}"));
    }
    for v in corr.bispace.right().validate().violations {
        witnesses.push(format!("right action: {v}"));
    }
    for v in validate_bispace(&corr.bispace).violations {
        witnesses.push(format!("bispace: {v}"));
    }
    for v in check_invariance(&corr.lambda, corr.bispace.right()).violations {
        witnesses.push(format!("lambda: {v}"));
    }
    if witnesses.is_empty() {
        None
    } else {
        witnesses.truncate(20);
        Some(CheckResult::fail("precondition: correspondence axioms", witnesses))
    }
}

/// Picks the named bispace, or the only one.
pub fn resolve_object<'a>(
    doc: &'a ResolvedDocument,
    object: Option<&str>,
) -> Result<(String, &'a Correspondence), CliError> {
    match object {
        Some(name) => doc
            .correspondences
            .get(name)
            .map(|c| (name.to_string(), c))
            .ok_or_else(|| CliError::UnresolvedReference(format!("bispaces.{name}"))),
        None => {
            let mut iter = doc.correspondences.iter();
            match (iter.next(), iter.next()) {
                (Some((name, corr)), None) => Ok((name.clone(), corr)),
                (None, _) => Err(CliError::ParseError(
                    "document has no bispaces; nothing to check".into(),
                )),
                _ => Err(CliError::ParseError(
                    "several bispaces in the document; pass --object".into(),
                )),
            }
        }
    }
}

pub fn cmd_validate(doc: &ResolvedDocument, object: Option<&str>) -> Result<Report, CliError> {
    // --object NAME narrows to that groupoid, or to that bispace together
    // with the two groupoids it references.
    let (groupoid_names, bispace_names): (Vec<String>, Vec<String>) = match object {
        None => (
            doc.groupoids.keys().cloned().collect(),
            doc.correspondences.keys().cloned().collect(),
        ),
        Some(name) => {
            if doc.groupoids.contains_key(name) {
                (vec![name.to_string()], Vec::new())
            } else if let Some(record) = doc.document.bispaces.get(name) {
                let mut names = vec![record.left_groupoid.clone(), record.right_groupoid.clone()];
                names.dedup();
                (names, vec![name.to_string()])
            } else {
                return Err(CliError::UnresolvedReference(format!(
                    "object {name:?} not found in the document"
                )));
            }
        }
    };
    let mut report = Report::new("validate", object.map(|s| s.to_string()));
    for name in &groupoid_names {
        let (groupoid, haar) = &doc.groupoids[name];
        report.push(check_from_core(
            format!("groupoid {name}: axioms"),
            &validate_groupoid(groupoid),
        ));
        report.push(check_from_core(
            format!("groupoid {name}: haar system"),
            &validate_haar(groupoid, haar),
        ));
    }
    for name in &bispace_names {
        let corr = &doc.correspondences[name];
        report.push(check_from_core(
            format!("bispace {name}: left action"),
            &corr.bispace.left().validate(),
        ));
        report.push(check_from_core(
            format!("bispace {name}: right action"),
            &corr.bispace.right().validate(),
        ));
        report.push(check_from_core(
            format!("bispace {name}: commutation and momentum invariance"),
            &validate_bispace(&corr.bispace),
        ));
        report.push(check_from_core(
            format!("bispace {name}: lambda H-invariance"),
            &check_invariance(&corr.lambda, corr.bispace.right()),
        ));
    }
    Ok(report)
}

fn delta_json(corr: &Correspondence) -> Value {
    let delta = corr.delta().expect("delta computed");
    Value::Array(
        delta
            .entries()
            .map(|(gamma, x, v)| {
                json!({"arrow": gamma, "point": x, "value": format_rat(v)})
            })
            .collect(),
    )
}

pub fn cmd_adjoining(doc: &ResolvedDocument, object: Option<&str>) -> Result<Report, CliError> {
    let (name, corr) = resolve_object(doc, object)?;
    let mut report = Report::new("adjoining", Some(name.clone()));
    if let Some(gate) = precondition_gate(doc, &name, corr) {
        report.push(gate);
        return Ok(report);
    }
    match compute_adjoining(&corr.bispace, &corr.left_haar, &corr.lambda) {
        Ok(delta) => {
            let mut with_delta = corr.clone();
            with_delta.delta = Some(delta);
            report.push(
                CheckResult::pass("adjoining function computed")
                    .with_data(json!({"delta": delta_json(&with_delta)})),
            );
        }
        Err(e) => report.push(CheckResult::fail("adjoining function", vec![e.to_string()])),
    }
    Ok(report)
}

fn certificate_json(cert: &gcorr_core::correspondence::ProperCertificate) -> Value {
    json!({
        "certificate": Value::Array(
            cert.d_entries()
                .map(|(x, y, v)| json!({"pair": [x, y], "value": format_rat(v)}))
                .collect(),
        ),
        "evidence_instances": cert.evidence.len(),
        "orbit_space": Value::Array(
            cert.orbit_space
                .iter()
                .map(|orbit| Value::Array(orbit.iter().map(|x| Value::String(x.clone())).collect()))
                .collect(),
        ),
        "notes": cert.notes,
    })
}

pub fn cmd_check_proper(doc: &ResolvedDocument, object: Option<&str>) -> Result<Report, CliError> {
    let (name, corr) = resolve_object(doc, object)?;
    let mut report = Report::new("check-proper", Some(name.clone()));
    if let Some(gate) = precondition_gate(doc, &name, corr) {
        report.push(gate);
        return Ok(report);
    }
    match check_proper(corr) {
        Ok(cert) => {
            report.push(
                CheckResult::pass("proper: certificate found").with_data(certificate_json(&cert)),
            );
        }
        Err(obstruction) => {
            report.push(CheckResult::fail("proper", vec![obstruction.to_string()]));
        }
    }
    Ok(report)
}

pub fn cmd_verify_equation(
    doc: &ResolvedDocument,
    object: Option<&str>,
) -> Result<Report, CliError> {
    let (name, corr) = resolve_object(doc, object)?;
    let mut report = Report::new("verify-equation", Some(name.clone()));
    if let Some(gate) = precondition_gate(doc, &name, corr) {
        report.push(gate);
        return Ok(report);
    }
    match check_proper(corr) {
        Ok(cert) => {
            let eq = verify_properness_equation(corr, &cert);
            if eq.is_valid() {
                report.push(
                    CheckResult::pass("properness equation")
                        .with_data(json!({"instances": eq.instances})),
                );
            } else {
                report.push(CheckResult::fail(
                    "properness equation",
                    eq.mismatches
                        .iter()
                        .map(|m| {
                            format!(
                                "cover ({}, {}), point {}: {} != {}",
                                m.cover.0,
                                m.cover.1,
                                m.x,
                                format_rat(&m.lhs),
                                format_rat(&m.rhs)
                            )
                        })
                        .collect(),
                ));
            }
        }
        Err(obstruction) => {
            report.push(CheckResult::fail("proper", vec![obstruction.to_string()]));
        }
    }
    Ok(report)
}

fn with_adjoining(corr: &Correspondence) -> Result<Correspondence, String> {
    if corr.delta.is_some() {
        return Ok(corr.clone());
    }
    match compute_adjoining(&corr.bispace, &corr.left_haar, &corr.lambda) {
        Ok(delta) => {
            let mut out = corr.clone();
            out.delta = Some(delta);
            Ok(out)
        }
        Err(e) => Err(e.to_string()),
    }
}

pub fn cmd_transfer(
    doc: &ResolvedDocument,
    object: Option<&str>,
    element: &str,
) -> Result<Report, CliError> {
    let (name, corr) = resolve_object(doc, object)?;
    let mut report = Report::new("transfer", Some(name.clone()));
    if let Some(gate) = precondition_gate(doc, &name, corr) {
        report.push(gate);
        return Ok(report);
    }
    let corr = match with_adjoining(corr) {
        Ok(c) => c,
        Err(e) => {
            report.push(CheckResult::fail("adjoining function", vec![e]));
            return Ok(report);
        }
    };
    let b = parse_element(element, corr.left_groupoid())?;
    let cert = match check_proper(&corr) {
        Ok(cert) => cert,
        Err(obstruction) => {
            report.push(CheckResult::fail("proper", vec![obstruction.to_string()]));
            return Ok(report);
        }
    };
    let kt = KtAlgebra::new(&corr);
    let t = transfer(&kt, &cert, &b).expect("certificate present");
    let lhs = kt.act_matrix(&t);
    let rhs = left_matrix(&corr, &b).expect("delta present");
    let equal = mats_close(&lhs, &rhs);
    let data = json!({
        "element": element,
        "transfer": Value::Array(
            kt.orbits
                .classes
                .iter()
                .map(|class| json!({"class": class, "value": format_complex(t.value(class))}))
                .collect(),
        ),
        "operators-equal": equal,
        "max-entry-difference": format_f64(mats_max_diff(&lhs, &rhs)),
    });
    if equal {
        report.push(CheckResult::pass("transfer contract").with_data(data));
    } else {
        report.push(
            CheckResult::fail(
                "transfer contract",
                vec!["sigma_KT(transfer(b)) differs from sigma_G(b)".into()],
            )
            .with_data(data),
        );
    }
    Ok(report)
}

pub fn cmd_morita(doc: &ResolvedDocument, object: Option<&str>) -> Result<Report, CliError> {
    let (name, corr) = resolve_object(doc, object)?;
    let mut report = Report::new("morita", Some(name.clone()));
    if let Some(gate) = precondition_gate(doc, &name, corr) {
        report.push(gate);
        return Ok(report);
    }
    let kt = KtAlgebra::new(corr);
    let morita = verify_imprimitivity(&kt);
    let data = json!({
        "triples": morita.triples,
        "h_span_rank": morita.h_span.0,
        "h_algebra_dim": morita.h_span.1,
        "k_span_rank": morita.k_span.0,
        "k_algebra_dim": morita.k_span.1,
    });
    if morita.is_valid() {
        report.push(CheckResult::pass("imprimitivity identity").with_data(data));
    } else {
        report.push(
            CheckResult::fail(
                "imprimitivity identity",
                morita
                    .mismatches
                    .iter()
                    .map(|m| {
                        format!(
                            "triple ({}, {}, {}): max diff {}",
                            m.zeta,
                            m.xi,
                            m.theta,
                            format_f64(m.max_diff)
                        )
                    })
                    .collect(),
            )
            .with_data(data),
        );
    }
    Ok(report)
}

pub fn cmd_normalize_etale(
    doc: &ResolvedDocument,
    object: Option<&str>,
) -> Result<Report, CliError> {
    let (name, corr) = resolve_object(doc, object)?;
    let mut report = Report::new("normalize-etale", Some(name.clone()));
    if let Some(gate) = precondition_gate(doc, &name, corr) {
        report.push(gate);
        return Ok(report);
    }
    let corr = match with_adjoining(corr) {
        Ok(c) => c,
        Err(e) => {
            report.push(CheckResult::fail("adjoining function", vec![e]));
            return Ok(report);
        }
    };
    match etale_normalize(&corr) {
        Ok((normalized, density)) => {
            let data = json!({
                "density": Value::Array(
                    density
                        .iter()
                        .map(|(x, v)| json!({"point": x, "value": format_rat(v)}))
                        .collect(),
                ),
                "normalized_delta": delta_json(&normalized),
            });
            report.push(CheckResult::pass("etale normalization").with_data(data));
        }
        Err(e) => report.push(CheckResult::fail("etale normalization", vec![e.to_string()])),
    }
    Ok(report)
}

pub fn cmd_restrict_units(
    doc: &ResolvedDocument,
    object: Option<&str>,
) -> Result<Report, CliError> {
    let (name, corr) = resolve_object(doc, object)?;
    let mut report = Report::new("restrict-units", Some(name.clone()));
    if let Some(gate) = precondition_gate(doc, &name, corr) {
        report.push(gate);
        return Ok(report);
    }
    match restrict_to_units(corr) {
        Ok(restricted) => {
            let data = json!({
                "unit_space": restricted.left_groupoid().units(),
                "arrows": restricted.left_groupoid().arrows(),
                "delta": delta_json(&restricted),
            });
            report.push(CheckResult::pass("restriction to the unit space").with_data(data));
        }
        Err(e) => report.push(CheckResult::fail("restriction", vec![e.to_string()])),
    }
    Ok(report)
}

/// The full pipeline, or the tasks listed in the document.
pub fn cmd_report(doc: &ResolvedDocument, object: Option<&str>) -> Result<Report, CliError> {
    let mut combined = Report::new("report", object.map(|s| s.to_string()));
    if !doc.document.tasks.is_empty() {
        for task in &doc.document.tasks {
            let task_object = task.object.as_deref().or(object);
            let sub = run_named(
                doc,
                &task.check,
                task_object,
                task.element.as_deref(),
            )?;
            for check in sub.checks {
                combined.push(CheckResult {
                    name: format!("{}: {}", task.check, check.name),
                    ..check
                });
            }
        }
        return Ok(combined);
    }
    let sub = cmd_validate(doc, object)?;
    combined.checks.extend(sub.checks);
    let objects: Vec<String> = match object {
        Some(name) => vec![name.to_string()],
        None => doc.correspondences.keys().cloned().collect(),
    };
    for name in &objects {
        for builder in [
            cmd_adjoining,
            cmd_check_proper,
            cmd_verify_equation,
            cmd_morita,
        ] {
            let sub = builder(doc, Some(name))?;
            for check in sub.checks {
                combined.push(CheckResult {
                    name: format!("{name}: {}", check.name),
                    ..check
                });
            }
        }
    }
    Ok(combined)
}

pub fn run_named(
    doc: &ResolvedDocument,
    check: &str,
    object: Option<&str>,
    element: Option<&str>,
) -> Result<Report, CliError> {
    match check {
        "validate" => cmd_validate(doc, object),
        "adjoining" => cmd_adjoining(doc, object),
        "check-proper" => cmd_check_proper(doc, object),
        "verify-equation" => cmd_verify_equation(doc, object),
        "transfer" => {
            let element = element.ok_or_else(|| {
                CliError::ParseError("transfer task needs an element".to_string())
            })?;
            cmd_transfer(doc, object, element)
        }
        "morita" => cmd_morita(doc, object),
        "normalize-etale" => cmd_normalize_etale(doc, object),
        "restrict-units" => cmd_restrict_units(doc, object),
        other => Err(CliError::ParseError(format!("unknown check {other:?}"))),
    }
}
