//! The declarative JSON input format and its bridge to the core objects.
//!
//! Rationals are "p/q" strings (decimals rejected); the document must
//! resolve completely before any check runs, but axiom violations are left
//! to the validators so that broken inputs can be diagnosed.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use gcorr_core::action::{Action, Side};
use gcorr_core::correspondence::{Bispace, Correspondence};
use gcorr_core::fixtures::Fixture;
use gcorr_core::groupoid::{FiniteGroupoid, HaarSystem};
use gcorr_core::measure::MeasureFamily;
use gcorr_core::rat::{format_rat, is_positive, parse_rat, Rat};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("unresolved reference: {0}")]
    UnresolvedReference(String),
    #[error("bad weight at {context}: {reason}")]
    BadWeight { context: String, reason: String },
    #[error("bad element literal: {0}")]
    BadElement(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ArrowRecord {
    pub name: String,
    pub src: String,
    pub rng: String,
    pub inv: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupoidRecord {
    pub units: Vec<String>,
    pub arrows: Vec<ArrowRecord>,
    pub unit_arrows: BTreeMap<String, String>,
    /// Triples `[a, b, a∘b]` with `b` applied first.
    pub compose: Vec<[String; 3]>,
    /// Arrow -> strictly positive rational "p/q".
    pub haar: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct BispaceRecord {
    pub left_groupoid: String,
    pub right_groupoid: String,
    pub carrier: Vec<String>,
    /// `r_X`: carrier -> left units.
    pub left_momentum: BTreeMap<String, String>,
    /// `s_X`: carrier -> right units.
    pub right_momentum: BTreeMap<String, String>,
    /// Triples `[gamma, x, gamma·x]`.
    pub left_action: Vec<[String; 3]>,
    /// Triples `[x, eta, x·eta]`.
    pub right_action: Vec<[String; 3]>,
    /// Carrier -> nonnegative rational "p/q".
    pub lambda: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TaskRecord {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct SpecDocument {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groupoids: BTreeMap<String, GroupoidRecord>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub bispaces: BTreeMap<String, BispaceRecord>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tasks: Vec<TaskRecord>,
}

/// A document with every record bridged into core objects. Bispaces become
/// raw correspondences: structurally sound, axioms still to be validated.
pub struct ResolvedDocument {
    pub document: SpecDocument,
    pub groupoids: BTreeMap<String, (FiniteGroupoid, HaarSystem)>,
    pub correspondences: BTreeMap<String, Correspondence>,
}

pub fn parse_str(text: &str) -> Result<SpecDocument, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::ParseError(e.to_string()))
}

pub fn parse_file(path: &std::path::Path) -> Result<SpecDocument, CliError> {
    let text = std::fs::read_to_string(path)?;
    parse_str(&text)
}

pub fn to_json(doc: &SpecDocument) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("document serializes");
    out.push('\n');
    out
}

fn parse_weight(context: &str, raw: &str, positive: bool) -> Result<Rat, CliError> {
    let value = parse_rat(raw).map_err(|e| CliError::BadWeight {
        context: context.to_string(),
        reason: e.to_string(),
    })?;
    if positive && !is_positive(&value) {
        return Err(CliError::BadWeight {
            context: context.to_string(),
            reason: format!("haar weight must be positive, got {}", format_rat(&value)),
        });
    }
    if !positive && value < gcorr_core::rat::rat_zero() {
        return Err(CliError::BadWeight {
            context: context.to_string(),
            reason: format!("weight must be nonnegative, got {}", format_rat(&value)),
        });
    }
    Ok(value)
}

pub fn groupoid_from_record(
    name: &str,
    record: &GroupoidRecord,
) -> Result<(FiniteGroupoid, HaarSystem), CliError> {
    let arrows: Vec<String> = record.arrows.iter().map(|a| a.name.clone()).collect();
    let src = record
        .arrows
        .iter()
        .map(|a| (a.name.clone(), a.src.clone()))
        .collect();
    let rng = record
        .arrows
        .iter()
        .map(|a| (a.name.clone(), a.rng.clone()))
        .collect();
    let inv = record
        .arrows
        .iter()
        .map(|a| (a.name.clone(), a.inv.clone()))
        .collect();
    let compose = record
        .compose
        .iter()
        .map(|[a, b, c]| ((a.clone(), b.clone()), c.clone()))
        .collect();
    let groupoid = FiniteGroupoid::new(
        record.units.clone(),
        arrows,
        src,
        rng,
        inv,
        compose,
        record.unit_arrows.clone(),
    )
    .map_err(|e| CliError::UnresolvedReference(format!("groupoids.{name}: {e}")))?;
    let mut weights = BTreeMap::new();
    for (arrow, raw) in &record.haar {
        weights.insert(
            arrow.clone(),
            parse_weight(&format!("groupoids.{name}.haar.{arrow}"), raw, true)?,
        );
    }
    let haar = HaarSystem::new(&groupoid, weights)
        .map_err(|e| CliError::UnresolvedReference(format!("groupoids.{name}.haar: {e}")))?;
    Ok((groupoid, haar))
}

fn action_from_table(
    context: &str,
    side: Side,
    groupoid: &FiniteGroupoid,
    carrier: &[String],
    momentum: &BTreeMap<String, String>,
    table: &[[String; 3]],
) -> Result<Action, CliError> {
    let mut act = BTreeMap::new();
    for row in table {
        let (arrow, point, result) = match side {
            Side::Left => (&row[0], &row[1], &row[2]),
            Side::Right => (&row[1], &row[0], &row[2]),
        };
        act.insert((arrow.clone(), point.clone()), result.clone());
    }
    Action::new(
        side,
        groupoid.clone(),
        carrier.to_vec(),
        momentum.clone(),
        act,
    )
    .map_err(|e| CliError::UnresolvedReference(format!("{context}: {e}")))
}

pub fn correspondence_from_record(
    name: &str,
    record: &BispaceRecord,
    groupoids: &BTreeMap<String, (FiniteGroupoid, HaarSystem)>,
) -> Result<Correspondence, CliError> {
    let (left_g, left_haar) = groupoids.get(&record.left_groupoid).ok_or_else(|| {
        CliError::UnresolvedReference(format!(
            "bispaces.{name}.left_groupoid: {:?}",
            record.left_groupoid
        ))
    })?;
    let (right_g, right_haar) = groupoids.get(&record.right_groupoid).ok_or_else(|| {
        CliError::UnresolvedReference(format!(
            "bispaces.{name}.right_groupoid: {:?}",
            record.right_groupoid
        ))
    })?;
    let left = action_from_table(
        &format!("bispaces.{name}.left_action"),
        Side::Left,
        left_g,
        &record.carrier,
        &record.left_momentum,
        &record.left_action,
    )?;
    let right = action_from_table(
        &format!("bispaces.{name}.right_action"),
        Side::Right,
        right_g,
        &record.carrier,
        &record.right_momentum,
        &record.right_action,
    )?;
    let bispace = Bispace::new(left, right)
        .map_err(|e| CliError::UnresolvedReference(format!("bispaces.{name}: {e}")))?;
    let mut weights = BTreeMap::new();
    for x in &record.carrier {
        let raw = record.lambda.get(x).ok_or_else(|| CliError::BadWeight {
            context: format!("bispaces.{name}.lambda.{x}"),
            reason: "missing".to_string(),
        })?;
        weights.insert(
            x.clone(),
            parse_weight(&format!("bispaces.{name}.lambda.{x}"), raw, false)?,
        );
    }
    let lambda = MeasureFamily::new(
        record.carrier.clone(),
        right_g.units().to_vec(),
        record.right_momentum.clone(),
        weights,
    )
    .map_err(|e| CliError::UnresolvedReference(format!("bispaces.{name}.lambda: {e}")))?;
    Correspondence::raw(bispace, left_haar.clone(), right_haar.clone(), lambda)
        .map_err(|e| CliError::UnresolvedReference(format!("bispaces.{name}: {e}")))
}

pub fn resolve(document: SpecDocument) -> Result<ResolvedDocument, CliError> {
    let mut groupoids = BTreeMap::new();
    for (name, record) in &document.groupoids {
        groupoids.insert(name.clone(), groupoid_from_record(name, record)?);
    }
    let mut correspondences = BTreeMap::new();
    for (name, record) in &document.bispaces {
        correspondences.insert(
            name.clone(),
            correspondence_from_record(name, record, &groupoids)?,
        );
    }
    Ok(ResolvedDocument {
        document,
        groupoids,
        correspondences,
    })
}

pub fn record_from_groupoid(groupoid: &FiniteGroupoid, haar: &HaarSystem) -> GroupoidRecord {
    GroupoidRecord {
        units: groupoid.units().to_vec(),
        arrows: groupoid
            .arrows()
            .iter()
            .map(|a| ArrowRecord {
                name: a.clone(),
                src: groupoid.src(a).to_string(),
                rng: groupoid.rng(a).to_string(),
                inv: groupoid.inv(a).to_string(),
            })
            .collect(),
        unit_arrows: groupoid
            .unit_arrow_table()
            .map(|(u, e)| (u.to_string(), e.to_string()))
            .collect(),
        compose: groupoid
            .compose_table()
            .map(|(a, b, c)| [a.to_string(), b.to_string(), c.to_string()])
            .collect(),
        haar: haar
            .weights()
            .map(|(a, w)| (a.to_string(), format_rat(w)))
            .collect(),
    }
}

pub fn record_from_correspondence(corr: &Correspondence) -> BispaceRecord {
    let bispace = &corr.bispace;
    BispaceRecord {
        left_groupoid: "G".to_string(),
        right_groupoid: "H".to_string(),
        carrier: bispace.carrier().to_vec(),
        left_momentum: bispace.left().momentum_map().clone(),
        right_momentum: bispace.right().momentum_map().clone(),
        left_action: bispace
            .left()
            .table()
            .map(|(g, x, y)| [g.to_string(), x.to_string(), y.to_string()])
            .collect(),
        right_action: bispace
            .right()
            .table()
            .map(|(eta, x, y)| [x.to_string(), eta.to_string(), y.to_string()])
            .collect(),
        lambda: corr
            .lambda
            .weights()
            .map(|(x, w)| (x.to_string(), format_rat(w)))
            .collect(),
    }
}

pub fn document_from_fixture(fixture: &Fixture) -> SpecDocument {
    match fixture {
        Fixture::Groupoid { groupoid, haar, .. } => SpecDocument {
            groupoids: [("G".to_string(), record_from_groupoid(groupoid, haar))].into(),
            bispaces: BTreeMap::new(),
            tasks: Vec::new(),
        },
        Fixture::Correspondence { corr, .. } => SpecDocument {
            groupoids: [
                (
                    "G".to_string(),
                    record_from_groupoid(corr.left_groupoid(), &corr.left_haar),
                ),
                (
                    "H".to_string(),
                    record_from_groupoid(corr.right_groupoid(), &corr.right_haar),
                ),
            ]
            .into(),
            bispaces: [("X".to_string(), record_from_correspondence(corr))].into(),
            tasks: Vec::new(),
        },
    }
}
