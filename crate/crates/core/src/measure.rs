//! Finite atomic measure families along maps.
//!
//! In the discrete model every subset is open and every map is a local
//! homeomorphism onto its image via singleton charts, so pullback reduces
//! to composition with the map and concentration reduces to vanishing off
//! the set. Weights are exact rationals and every check here is exact.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use thiserror::Error;

use crate::action::{Action, Side};
use crate::groupoid::HaarSystem;
use crate::rat::{format_rat, Rat};
use crate::report::Report;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MeasureError {
    #[error("weight missing for {0:?}")]
    MissingWeight(String),
    #[error("negative weight {value} at {id:?}")]
    NegativeWeight { id: String, value: String },
    #[error("fiber map missing or unresolved at {0:?}")]
    BadFiberMap(String),
    #[error("map has no value at {0:?}")]
    MissingValue(String),
    #[error("map does not preserve fibers: {x:?} and {y:?} collide")]
    NotFiberPreserving { x: String, y: String },
    #[error("families live on different carriers")]
    CarrierMismatch,
    #[error("not absolutely continuous: weight positive at {0:?} where the reference vanishes")]
    NotAbsolutelyContinuous(String),
    #[error("quotient family ill-defined: representatives {x:?} and {y:?} disagree")]
    NotWellDefined { x: String, y: String },
    #[error("expected a right action")]
    WrongSide,
}

/// Nonnegative rational weights on a finite carrier, fibered along a map
/// to a base set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasureFamily {
    carrier: Vec<String>,
    base: Vec<String>,
    fiber_map: BTreeMap<String, String>,
    weight: BTreeMap<String, Rat>,
}

impl MeasureFamily {
    pub fn new(
        carrier: Vec<String>,
        base: Vec<String>,
        fiber_map: BTreeMap<String, String>,
        weight: BTreeMap<String, Rat>,
    ) -> Result<Self, MeasureError> {
        let base_set: BTreeSet<_> = base.iter().cloned().collect();
        for x in &carrier {
            match fiber_map.get(x) {
                Some(b) if base_set.contains(b) => {}
                _ => return Err(MeasureError::BadFiberMap(x.clone())),
            }
            match weight.get(x) {
                None => return Err(MeasureError::MissingWeight(x.clone())),
                Some(w) if w < &Rat::zero() => {
                    return Err(MeasureError::NegativeWeight {
                        id: x.clone(),
                        value: format_rat(w),
                    })
                }
                _ => {}
            }
        }
        Ok(MeasureFamily {
            carrier,
            base,
            fiber_map,
            weight,
        })
    }

    /// Counting family: weight one everywhere.
    pub fn counting(
        carrier: Vec<String>,
        base: Vec<String>,
        fiber_map: BTreeMap<String, String>,
    ) -> Result<Self, MeasureError> {
        let weight = carrier
            .iter()
            .map(|x| (x.clone(), crate::rat::rat_one()))
            .collect();
        MeasureFamily::new(carrier, base, fiber_map, weight)
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn base(&self) -> &[String] {
        &self.base
    }

    pub fn fiber_map(&self) -> &BTreeMap<String, String> {
        &self.fiber_map
    }

    pub fn fiber_of(&self, x: &str) -> &str {
        &self.fiber_map[x]
    }

    pub fn weight(&self, x: &str) -> &Rat {
        &self.weight[x]
    }

    pub fn weights(&self) -> impl Iterator<Item = (&str, &Rat)> {
        self.carrier.iter().map(|x| (x.as_str(), &self.weight[x]))
    }

    /// Points of the fiber over `b`, in carrier order.
    pub fn fiber(&self, b: &str) -> Vec<&str> {
        self.carrier
            .iter()
            .filter(|x| self.fiber_map[*x] == b)
            .map(|x| x.as_str())
            .collect()
    }

    pub fn fiber_mass(&self, b: &str) -> Rat {
        self.fiber(b).iter().map(|x| self.weight(x)).sum()
    }

    /// Computed, never asserted: every atom positive.
    pub fn full_support(&self) -> bool {
        self.carrier.iter().all(|x| self.weight[x] > Rat::zero())
    }

    pub fn zero_atoms(&self) -> Vec<&str> {
        self.carrier
            .iter()
            .filter(|x| self.weight[*x].is_zero())
            .map(|x| x.as_str())
            .collect()
    }

    pub fn integrate(&self, f: &BTreeMap<String, Rat>) -> Rat {
        self.carrier
            .iter()
            .map(|x| f.get(x).cloned().unwrap_or_else(Rat::zero) * self.weight(x))
            .sum()
    }

    /// Same weights transported to a new fiber structure.
    pub fn refibered(
        &self,
        base: Vec<String>,
        fiber_map: BTreeMap<String, String>,
    ) -> Result<Self, MeasureError> {
        MeasureFamily::new(self.carrier.clone(), base, fiber_map, self.weight.clone())
    }

    pub fn scaled(&self, factor: &Rat) -> Self {
        MeasureFamily {
            carrier: self.carrier.clone(),
            base: self.base.clone(),
            fiber_map: self.fiber_map.clone(),
            weight: self
                .weight
                .iter()
                .map(|(x, w)| (x.clone(), w * factor))
                .collect(),
        }
    }
}

/// Image measure along a fiber-preserving map: `weight'(y)` is the total
/// weight of the preimage of `y`.
pub fn pushforward(
    mu: &MeasureFamily,
    phi: &BTreeMap<String, String>,
) -> Result<MeasureFamily, MeasureError> {
    for x in mu.carrier() {
        if !phi.contains_key(x) {
            return Err(MeasureError::MissingValue(x.clone()));
        }
    }
    // Preserving fibers: points that collide under phi share a base fiber.
    let mut image_fiber: BTreeMap<&String, &String> = BTreeMap::new();
    let mut witness: BTreeMap<&String, &String> = BTreeMap::new();
    for x in mu.carrier() {
        let y = &phi[x];
        let b = &mu.fiber_map()[x];
        match image_fiber.get(y) {
            None => {
                image_fiber.insert(y, b);
                witness.insert(y, x);
            }
            Some(prev) if *prev != b => {
                return Err(MeasureError::NotFiberPreserving {
                    x: witness[y].clone(),
                    y: x.clone(),
                });
            }
            _ => {}
        }
    }
    let mut carrier = Vec::new();
    let mut fiber_map = BTreeMap::new();
    let mut weight: BTreeMap<String, Rat> = BTreeMap::new();
    for x in mu.carrier() {
        let y = phi[x].clone();
        if !weight.contains_key(&y) {
            carrier.push(y.clone());
            fiber_map.insert(y.clone(), mu.fiber_of(x).to_string());
            weight.insert(y.clone(), Rat::zero());
        }
        *weight.get_mut(&y).unwrap() += mu.weight(x);
    }
    MeasureFamily::new(carrier, mu.base().to_vec(), fiber_map, weight)
}

/// Pullback along any map: `weight'(x) = lambda(phi(x))`, the singleton-chart
/// instance of the chartwise pullback formula.
pub fn pullback(
    lambda: &MeasureFamily,
    phi: &BTreeMap<String, String>,
    carrier: &[String],
) -> Result<MeasureFamily, MeasureError> {
    let mut fiber_map = BTreeMap::new();
    let mut weight = BTreeMap::new();
    for x in carrier {
        let y = phi.get(x).ok_or_else(|| MeasureError::MissingValue(x.clone()))?;
        if !lambda.carrier().contains(y) {
            return Err(MeasureError::BadFiberMap(y.clone()));
        }
        fiber_map.insert(x.clone(), lambda.fiber_of(y).to_string());
        weight.insert(x.clone(), lambda.weight(y).clone());
    }
    MeasureFamily::new(carrier.to_vec(), lambda.base().to_vec(), fiber_map, weight)
}

/// Concentration of the family on a subset, decided five ways (the finite
/// content of the equivalence lemma) which are asserted to agree:
/// vanishing on singleton neighbourhoods off the set, and integral equality
/// against nonnegative indicators, signed differences, the full delta basis,
/// and a generic positive function.
pub fn is_concentrated(mu: &MeasureFamily, z: &BTreeSet<String>) -> bool {
    let integrate_over = |f: &BTreeMap<String, Rat>, domain: &dyn Fn(&str) -> bool| -> Rat {
        mu.carrier()
            .iter()
            .filter(|x| domain(x))
            .map(|x| f.get(x).cloned().unwrap_or_else(Rat::zero) * mu.weight(x))
            .sum()
    };
    let everywhere = |_: &str| true;
    let inside = |x: &str| z.contains(x);

    // (v) every point has the singleton neighbourhood V = {y}.
    let by_neighbourhoods = mu
        .carrier()
        .iter()
        .all(|y| z.contains(y) || mu.weight(y).is_zero());

    // (i) nonnegative compactly supported functions: the indicator cone.
    let mut by_indicators = true;
    for y in mu.carrier() {
        let f: BTreeMap<String, Rat> = [(y.clone(), crate::rat::rat_one())].into();
        if integrate_over(&f, &everywhere) != integrate_over(&f, &inside) {
            by_indicators = false;
        }
    }

    // (ii) signed functions: differences of indicators plus the singles.
    let mut by_signed = by_indicators;
    for y in mu.carrier() {
        for y2 in mu.carrier() {
            if y == y2 {
                continue;
            }
            let f: BTreeMap<String, Rat> = [
                (y.clone(), crate::rat::rat_one()),
                (y2.clone(), -crate::rat::rat_one()),
            ]
            .into();
            if integrate_over(&f, &everywhere) != integrate_over(&f, &inside) {
                by_signed = false;
            }
        }
    }

    // (iii) all functions; by linearity the delta basis decides.
    let mut by_basis = true;
    for y in mu.carrier() {
        let f: BTreeMap<String, Rat> = [(y.clone(), crate::rat::rat_one())].into();
        if integrate_over(&f, &everywhere) != integrate_over(&f, &inside) {
            by_basis = false;
        }
    }

    // (iv) nonnegative integrable functions: one generic strictly positive
    // function with pairwise distinct coefficients decides, since the
    // weights are nonnegative.
    let generic: BTreeMap<String, Rat> = mu
        .carrier()
        .iter()
        .enumerate()
        .map(|(i, x)| (x.clone(), crate::rat::rat_int(i as i64 + 1)))
        .collect();
    let by_generic =
        integrate_over(&generic, &everywhere) == integrate_over(&generic, &inside);

    assert!(
        [by_indicators, by_signed, by_basis, by_generic]
            .iter()
            .all(|v| *v == by_neighbourhoods),
        "the five concentration formulations diverged"
    );
    by_neighbourhoods
}

/// Radon-Nikodym derivative of `mu` against `lambda` on a common carrier.
pub fn rn_derivative(
    mu: &MeasureFamily,
    lambda: &MeasureFamily,
) -> Result<BTreeMap<String, Rat>, MeasureError> {
    if mu.carrier() != lambda.carrier() {
        return Err(MeasureError::CarrierMismatch);
    }
    let mut d = BTreeMap::new();
    for x in mu.carrier() {
        let num = mu.weight(x);
        let den = lambda.weight(x);
        if den.is_zero() {
            if !num.is_zero() {
                return Err(MeasureError::NotAbsolutelyContinuous(x.clone()));
            }
            d.insert(x.clone(), Rat::zero());
        } else {
            d.insert(x.clone(), num / den);
        }
    }
    Ok(d)
}

/// The family along the quotient map of a right action: the weight at a
/// point of an orbit is the total Haar weight of the arrows carrying a
/// representative there. Well-definedness is re-verified from every
/// representative; the guard cannot fire for a valid Haar system but is
/// retained as an oracle.
pub fn family_along_quotient(
    action: &Action,
    beta: &HaarSystem,
) -> Result<MeasureFamily, MeasureError> {
    if action.side() != Side::Right {
        return Err(MeasureError::WrongSide);
    }
    let h = action.groupoid();
    let orbit_map = action.orbit_map();
    let orbits = action.orbits();
    let mut weight: BTreeMap<String, Rat> = BTreeMap::new();
    for orbit in &orbits {
        let mut reference: Option<(String, BTreeMap<String, Rat>)> = None;
        for x in orbit {
            let mut candidate: BTreeMap<String, Rat> =
                orbit.iter().map(|y| (y.clone(), Rat::zero())).collect();
            for eta in h.arrows() {
                if let Some(y) = action.apply(eta, x) {
                    *candidate.get_mut(y).expect("orbit closed under the action") +=
                        beta.weight(eta);
                }
            }
            match &reference {
                None => reference = Some((x.clone(), candidate)),
                Some((x0, w0)) => {
                    if w0 != &candidate {
                        return Err(MeasureError::NotWellDefined {
                            x: x0.clone(),
                            y: x.clone(),
                        });
                    }
                }
            }
        }
        let (_, w) = reference.expect("orbits are nonempty");
        weight.extend(w);
    }
    let mut base: Vec<String> = orbits.iter().map(|o| format!("[{}]", o[0])).collect();
    base.sort();
    MeasureFamily::new(action.carrier().to_vec(), base, orbit_map, weight)
}

/// H-invariance of a family along the right momentum map, in the atomic
/// sense: `lambda(x·eta) = lambda(x)` for every composable pair.
pub fn check_invariance(lambda: &MeasureFamily, action: &Action) -> Report {
    let mut report = Report::new();
    if action.side() != Side::Right {
        report.push("side", "expected a right action");
        return report;
    }
    for x in action.carrier() {
        if !lambda.carrier().contains(x) {
            report.push("fiber", format!("{x} missing from the family"));
            continue;
        }
        if lambda.fiber_of(x) != action.momentum(x) {
            report.push("fiber", format!("fiber map disagrees with momentum at {x}"));
        }
    }
    for (eta, x, y) in action.table() {
        if lambda.weight(x) != lambda.weight(y) {
            report.push(
                "invariance",
                format!(
                    "({x}, {eta}): lambda({y}) = {} != lambda({x}) = {}",
                    format_rat(lambda.weight(y)),
                    format_rat(lambda.weight(x))
                ),
            );
        }
    }
    report
}
