//! Finite groupoids with Haar systems.
//!
//! Arrows and units are opaque string identifiers and composition is an
//! explicit table: no topology survives at finite scale, so extensional
//! tables are the honest model. The composition convention is
//! `compose(a, b) = a∘b`, defined exactly when `src(a) = rng(b)` (so `b`
//! is applied first).

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::action::{Action, Side};
use crate::measure::MeasureFamily;
use crate::rat::{format_rat, Rat};
use crate::report::Report;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("groupoid has no units")]
    NoUnits,
    #[error("duplicate identifier {0:?}")]
    DuplicateId(String),
    #[error("{map}: unresolved reference {id:?}")]
    Unresolved { map: String, id: String },
    #[error("{map}: missing entry for {id:?}")]
    Missing { map: String, id: String },
    #[error("haar weight missing for arrow {0:?}")]
    MissingWeight(String),
    #[error("haar weight for unknown arrow {0:?}")]
    UnknownWeight(String),
    #[error("negative weight {value} at {id:?}")]
    NegativeWeight { id: String, value: String },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupoidError {
    #[error("restriction to an empty unit set")]
    EmptyRestriction,
    #[error("action failed validation: {0}")]
    InvalidAction(String),
    #[error("family is not fibered along the given map at {0:?}")]
    FiberMismatch(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A finite groupoid presented by explicit tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    units: Vec<String>,
    arrows: Vec<String>,
    src: BTreeMap<String, String>,
    rng: BTreeMap<String, String>,
    inv: BTreeMap<String, String>,
    compose: BTreeMap<(String, String), String>,
    unit_arrow: BTreeMap<String, String>,
}

impl FiniteGroupoid {
    pub fn new(
        units: Vec<String>,
        arrows: Vec<String>,
        src: BTreeMap<String, String>,
        rng: BTreeMap<String, String>,
        inv: BTreeMap<String, String>,
        compose: BTreeMap<(String, String), String>,
        unit_arrow: BTreeMap<String, String>,
    ) -> Result<Self, StructureError> {
        if units.is_empty() {
            return Err(StructureError::NoUnits);
        }
        check_distinct(&units)?;
        check_distinct(&arrows)?;
        let unit_set: BTreeSet<_> = units.iter().cloned().collect();
        let arrow_set: BTreeSet<_> = arrows.iter().cloned().collect();
        let check_total = |map: &BTreeMap<String, String>,
                           name: &str,
                           domain: &[String],
                           codomain: &BTreeSet<String>|
         -> Result<(), StructureError> {
            for k in domain {
                match map.get(k) {
                    None => {
                        return Err(StructureError::Missing {
                            map: name.to_string(),
                            id: k.clone(),
                        })
                    }
                    Some(v) if !codomain.contains(v) => {
                        return Err(StructureError::Unresolved {
                            map: name.to_string(),
                            id: v.clone(),
                        })
                    }
                    _ => {}
                }
            }
            for k in map.keys() {
                if !domain.contains(k) {
                    return Err(StructureError::Unresolved {
                        map: name.to_string(),
                        id: k.clone(),
                    });
                }
            }
            Ok(())
        };
        check_total(&src, "src", &arrows, &unit_set)?;
        check_total(&rng, "rng", &arrows, &unit_set)?;
        check_total(&inv, "inv", &arrows, &arrow_set)?;
        check_total(&unit_arrow, "unit_arrow", &units, &arrow_set)?;
        for ((a, b), c) in &compose {
            for id in [a, b, c] {
                if !arrow_set.contains(id) {
                    return Err(StructureError::Unresolved {
                        map: "compose".to_string(),
                        id: id.clone(),
                    });
                }
            }
        }
        Ok(FiniteGroupoid {
            units,
            arrows,
            src,
            rng,
            inv,
            compose,
            unit_arrow,
        })
    }

    pub fn units(&self) -> &[String] {
        &self.units
    }

    pub fn arrows(&self) -> &[String] {
        &self.arrows
    }

    pub fn src(&self, a: &str) -> &str {
        &self.src[a]
    }

    pub fn rng(&self, a: &str) -> &str {
        &self.rng[a]
    }

    pub fn inv(&self, a: &str) -> &str {
        &self.inv[a]
    }

    pub fn unit_arrow(&self, u: &str) -> &str {
        &self.unit_arrow[u]
    }

    pub fn is_unit_arrow(&self, a: &str) -> bool {
        self.unit_arrow.values().any(|e| e == a)
    }

    pub fn is_composable(&self, a: &str, b: &str) -> bool {
        self.src(a) == self.rng(b)
    }

    /// `a∘b`, with `b` applied first. `None` when the table has no entry.
    pub fn compose(&self, a: &str, b: &str) -> Option<&str> {
        self.compose
            .get(&(a.to_string(), b.to_string()))
            .map(|s| s.as_str())
    }

    /// `a∘b` on a validated groupoid.
    pub fn compose_ok(&self, a: &str, b: &str) -> &str {
        self.compose(a, b)
            .unwrap_or_else(|| panic!("compose undefined for ({a}, {b})"))
    }

    pub fn arrows_with_rng(&self, u: &str) -> Vec<&str> {
        self.arrows
            .iter()
            .filter(|a| self.rng(a) == u)
            .map(|a| a.as_str())
            .collect()
    }

    pub fn arrows_with_src(&self, u: &str) -> Vec<&str> {
        self.arrows
            .iter()
            .filter(|a| self.src(a) == u)
            .map(|a| a.as_str())
            .collect()
    }

    /// Iterator over the raw composition table, for serialization.
    pub fn compose_table(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.compose
            .iter()
            .map(|((a, b), c)| (a.as_str(), b.as_str(), c.as_str()))
    }

    pub fn unit_arrow_table(&self) -> impl Iterator<Item = (&str, &str)> {
        self.unit_arrow.iter().map(|(u, e)| (u.as_str(), e.as_str()))
    }
}

fn check_distinct(ids: &[String]) -> Result<(), StructureError> {
    let mut seen = BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(StructureError::DuplicateId(id.clone()));
        }
    }
    Ok(())
}

/// Checks every groupoid axiom and reports violations with witnesses.
pub fn validate_groupoid(g: &FiniteGroupoid) -> Report {
    let mut report = Report::new();

    for u in g.units() {
        let e = g.unit_arrow(u);
        if g.src(e) != u || g.rng(e) != u {
            report.push("unit-arrow-endpoints", format!("({u}, {e})"));
        }
    }

    // The compose table must be defined exactly on composable pairs.
    for a in g.arrows() {
        for b in g.arrows() {
            let defined = g.compose(a, b).is_some();
            if g.is_composable(a, b) != defined {
                report.push("compose-domain", format!("({a}, {b})"));
            }
            if let Some(c) = g.compose(a, b) {
                if g.src(c) != g.src(b) || g.rng(c) != g.rng(a) {
                    report.push("compose-src-rng", format!("({a}, {b}) -> {c}"));
                }
            }
        }
    }

    for a in g.arrows() {
        let e_src = g.unit_arrow(g.src(a));
        let e_rng = g.unit_arrow(g.rng(a));
        if g.compose(a, e_src) != Some(a) {
            report.push("right-identity", a.clone());
        }
        if g.compose(e_rng, a) != Some(a) {
            report.push("left-identity", a.clone());
        }
    }

    for a in g.arrows() {
        let ai = g.inv(a);
        if g.inv(ai) != a {
            report.push("inv-involution", a.clone());
        }
        if g.src(ai) != g.rng(a) || g.rng(ai) != g.src(a) {
            report.push("inv-src-rng-swap", a.clone());
            continue;
        }
        if g.compose(a, ai) != Some(g.unit_arrow(g.rng(a))) {
            report.push("inv-right", a.clone());
        }
        if g.compose(ai, a) != Some(g.unit_arrow(g.src(a))) {
            report.push("inv-left", a.clone());
        }
    }

    // Associativity wherever both parenthesizations are defined.
    for a in g.arrows() {
        for b in g.arrows() {
            if !g.is_composable(a, b) {
                continue;
            }
            for c in g.arrows() {
                if !g.is_composable(b, c) {
                    continue;
                }
                let lhs = g.compose(a, b).and_then(|ab| g.compose(ab, c));
                let rhs = g.compose(b, c).and_then(|bc| g.compose(a, bc));
                if let (Some(l), Some(r)) = (lhs, rhs) {
                    if l != r {
                        report.push("associativity", format!("({a}, {b}, {c})"));
                    }
                }
            }
        }
    }

    report
}

/// A Haar system: strictly positive rational weights, interpreted fiberwise
/// as a measure on each range fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaarSystem {
    weight: BTreeMap<String, Rat>,
}

impl HaarSystem {
    pub fn new(g: &FiniteGroupoid, weight: BTreeMap<String, Rat>) -> Result<Self, StructureError> {
        for a in g.arrows() {
            if !weight.contains_key(a) {
                return Err(StructureError::MissingWeight(a.clone()));
            }
        }
        for a in weight.keys() {
            if !g.arrows().contains(a) {
                return Err(StructureError::UnknownWeight(a.clone()));
            }
        }
        Ok(HaarSystem { weight })
    }

    pub fn uniform(g: &FiniteGroupoid) -> Self {
        HaarSystem {
            weight: g
                .arrows()
                .iter()
                .map(|a| (a.clone(), crate::rat::rat_one()))
                .collect(),
        }
    }

    pub fn weight(&self, a: &str) -> &Rat {
        &self.weight[a]
    }

    pub fn weights(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.weight.iter().map(|(a, w)| (a.as_str(), w))
    }
}

/// Positivity plus left invariance, the latter tested on every indicator
/// function of every range fiber (which suffices by linearity).
pub fn validate_haar(g: &FiniteGroupoid, haar: &HaarSystem) -> Report {
    use num::Zero;
    let mut report = Report::new();
    for a in g.arrows() {
        if haar.weight(a) <= &Rat::zero() {
            report.push("positivity", format!("{a} (weight {})", format_rat(haar.weight(a))));
        }
    }
    // Translation by gamma carries the fiber over src(gamma) onto the fiber
    // over rng(gamma); the integral of each indicator must be preserved.
    for gamma in g.arrows() {
        let src_fiber = g.arrows_with_rng(g.src(gamma));
        for target in g.arrows_with_rng(g.rng(gamma)) {
            let mut lhs = Rat::zero();
            for eta in &src_fiber {
                if g.compose(gamma, eta) == Some(target) {
                    lhs += haar.weight(eta);
                }
            }
            let rhs = haar.weight(target);
            if &lhs != rhs {
                report.push(
                    "left-invariance",
                    format!(
                        "gamma {gamma}, indicator {target}: {} != {}",
                        format_rat(&lhs),
                        format_rat(rhs)
                    ),
                );
            }
        }
    }
    report
}

/// Arrow identifier for a pair, used by the derived groupoid constructions.
pub fn pair_id(a: &str, b: &str) -> String {
    format!("({a}|{b})")
}

/// The transformation groupoid `G ⋉ X` of a left action, with the induced
/// Haar system assigning `alpha(gamma)` to the arrow `(gamma, x)`.
pub fn transformation_groupoid(
    haar: &HaarSystem,
    action: &Action,
) -> Result<(FiniteGroupoid, HaarSystem), GroupoidError> {
    let validation = action.validate();
    if action.side() != Side::Left {
        return Err(GroupoidError::InvalidAction("expected a left action".into()));
    }
    if !validation.is_valid() {
        return Err(GroupoidError::InvalidAction(validation.to_string()));
    }
    let g = action.groupoid();
    let units: Vec<String> = action.carrier().to_vec();
    let mut arrows = Vec::new();
    let mut src = BTreeMap::new();
    let mut rng = BTreeMap::new();
    let mut inv = BTreeMap::new();
    let mut unit_arrow = BTreeMap::new();
    let mut weight = BTreeMap::new();
    let mut pairs = Vec::new();
    for gamma in g.arrows() {
        for x in action.carrier() {
            if let Some(gx) = action.apply(gamma, x) {
                let id = pair_id(gamma, x);
                arrows.push(id.clone());
                src.insert(id.clone(), x.clone());
                rng.insert(id.clone(), gx.to_string());
                let gx = gx.to_string();
                inv.insert(id.clone(), pair_id(g.inv(gamma), &gx));
                weight.insert(id.clone(), haar.weight(gamma).clone());
                pairs.push((gamma.clone(), x.clone()));
            }
        }
    }
    for x in &units {
        unit_arrow.insert(x.clone(), pair_id(g.unit_arrow(action.momentum(x)), x));
    }
    let mut compose = BTreeMap::new();
    for (gamma, x) in &pairs {
        for (gamma2, x2) in &pairs {
            // (gamma, x)∘(gamma2, x2) needs x = gamma2·x2.
            if action.apply(gamma2, x2) == Some(x.as_str()) {
                let composite = g.compose_ok(gamma, gamma2);
                compose.insert(
                    (pair_id(gamma, x), pair_id(gamma2, x2)),
                    pair_id(composite, x2),
                );
            }
        }
    }
    let groupoid = FiniteGroupoid::new(units, arrows, src, rng, inv, compose, unit_arrow)?;
    let haar = HaarSystem::new(&groupoid, weight)?;
    Ok((groupoid, haar))
}

/// Output of [`relation_groupoid`]. When the family lacks full support the
/// induced family is still left invariant but fails positivity, so it is an
/// invariant family rather than a Haar system.
#[derive(Clone, Debug)]
pub struct RelationGroupoidResult {
    pub groupoid: FiniteGroupoid,
    pub family: MeasureFamily,
    pub is_haar_system: bool,
    pub invariance: Report,
}

/// The groupoid of the equivalence relation `phi(x) = phi(x')`, with the
/// induced family `lambda_1^z = delta_z ⊗ lambda_{phi(z)}` along the range map.
pub fn relation_groupoid(
    carrier: &[String],
    phi: &BTreeMap<String, String>,
    lambda: &MeasureFamily,
) -> Result<RelationGroupoidResult, GroupoidError> {
    for x in carrier {
        if !phi.contains_key(x) {
            return Err(GroupoidError::FiberMismatch(x.clone()));
        }
        if lambda.fiber_map().get(x) != phi.get(x) {
            return Err(GroupoidError::FiberMismatch(x.clone()));
        }
    }
    let units: Vec<String> = carrier.to_vec();
    let mut arrows = Vec::new();
    let mut src = BTreeMap::new();
    let mut rng = BTreeMap::new();
    let mut inv = BTreeMap::new();
    let mut weight = BTreeMap::new();
    let mut fiber_map = BTreeMap::new();
    let mut members = Vec::new();
    for x in carrier {
        for y in carrier {
            if phi[x] == phi[y] {
                let id = pair_id(x, y);
                arrows.push(id.clone());
                src.insert(id.clone(), y.clone());
                rng.insert(id.clone(), x.clone());
                inv.insert(id.clone(), pair_id(y, x));
                weight.insert(id.clone(), lambda.weight(y).clone());
                fiber_map.insert(id.clone(), x.clone());
                members.push((x.clone(), y.clone()));
            }
        }
    }
    let unit_arrow: BTreeMap<String, String> =
        carrier.iter().map(|x| (x.clone(), pair_id(x, x))).collect();
    let mut compose = BTreeMap::new();
    for (x, y) in &members {
        for (y2, z) in &members {
            if y == y2 {
                compose.insert((pair_id(x, y), pair_id(y2, z)), pair_id(x, z));
            }
        }
    }
    let groupoid = FiniteGroupoid::new(units, arrows, src, rng, inv, compose, unit_arrow)?;
    let family = MeasureFamily::new(
        groupoid.arrows().to_vec(),
        carrier.to_vec(),
        fiber_map,
        weight.clone(),
    )
    .map_err(|e| GroupoidError::FiberMismatch(e.to_string()))?;
    let is_haar = family.full_support();
    let haar = HaarSystem { weight };
    let invariance = validate_haar_invariance_only(&groupoid, &haar);
    Ok(RelationGroupoidResult {
        groupoid,
        family,
        is_haar_system: is_haar,
        invariance,
    })
}

fn validate_haar_invariance_only(g: &FiniteGroupoid, haar: &HaarSystem) -> Report {
    let full = validate_haar(g, haar);
    Report {
        violations: full
            .violations
            .into_iter()
            .filter(|v| v.axiom == "left-invariance")
            .collect(),
    }
}

/// The restriction groupoid `G|_V^V`: arrows with source and range in `V`.
/// Preserves identifier order, so restricting to all units returns `G`
/// exactly.
pub fn restrict(g: &FiniteGroupoid, v: &BTreeSet<String>) -> Result<FiniteGroupoid, GroupoidError> {
    if v.is_empty() {
        return Err(GroupoidError::EmptyRestriction);
    }
    for u in v {
        if !g.units().contains(u) {
            return Err(GroupoidError::Structure(StructureError::Unresolved {
                map: "restrict".into(),
                id: u.clone(),
            }));
        }
    }
    let units: Vec<String> = g.units().iter().filter(|u| v.contains(*u)).cloned().collect();
    let arrows: Vec<String> = g
        .arrows()
        .iter()
        .filter(|a| v.contains(g.src(a)) && v.contains(g.rng(a)))
        .cloned()
        .collect();
    let keep: BTreeSet<&String> = arrows.iter().collect();
    let filter_map = |m: &BTreeMap<String, String>| -> BTreeMap<String, String> {
        m.iter()
            .filter(|(k, _)| keep.contains(k))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    };
    let src = filter_map(&g.src);
    let rng = filter_map(&g.rng);
    let inv = filter_map(&g.inv);
    let unit_arrow: BTreeMap<String, String> = g
        .unit_arrow
        .iter()
        .filter(|(u, _)| v.contains(*u))
        .map(|(u, e)| (u.clone(), e.clone()))
        .collect();
    let compose: BTreeMap<(String, String), String> = g
        .compose
        .iter()
        .filter(|((a, b), c)| keep.contains(a) && keep.contains(b) && keep.contains(*c))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    Ok(FiniteGroupoid::new(units, arrows, src, rng, inv, compose, unit_arrow)?)
}

/// Restriction of a Haar system to a restriction groupoid.
pub fn restrict_haar(haar: &HaarSystem, restricted: &FiniteGroupoid) -> HaarSystem {
    HaarSystem {
        weight: restricted
            .arrows()
            .iter()
            .map(|a| (a.clone(), haar.weight(a).clone()))
            .collect(),
    }
}

/// The unit-space groupoid `G⁰`: only identity arrows survive, each keeping
/// its weight from the ambient Haar system. Fails only when the ambient
/// unit-arrow table is degenerate (two units sharing an identity arrow).
pub fn unit_space_groupoid(
    g: &FiniteGroupoid,
    haar: &HaarSystem,
) -> Result<(FiniteGroupoid, HaarSystem), StructureError> {
    let units: Vec<String> = g.units().to_vec();
    let arrows: Vec<String> = units.iter().map(|u| g.unit_arrow(u).to_string()).collect();
    let mut src = BTreeMap::new();
    let mut rng = BTreeMap::new();
    let mut inv = BTreeMap::new();
    let mut unit_arrow = BTreeMap::new();
    let mut compose = BTreeMap::new();
    let mut weight = BTreeMap::new();
    for u in &units {
        let e = g.unit_arrow(u).to_string();
        src.insert(e.clone(), u.clone());
        rng.insert(e.clone(), u.clone());
        inv.insert(e.clone(), e.clone());
        unit_arrow.insert(u.clone(), e.clone());
        compose.insert((e.clone(), e.clone()), e.clone());
        weight.insert(e.clone(), haar.weight(&e).clone());
    }
    let groupoid = FiniteGroupoid::new(units, arrows, src, rng, inv, compose, unit_arrow)?;
    let haar = HaarSystem { weight };
    Ok((groupoid, haar))
}
