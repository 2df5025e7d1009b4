//! Bispaces, topological correspondences, the adjoining function, and the
//! properness decision with its certificate.
//!
//! The strict bispace axiom (`s_X` G-invariant, `r_X` H-invariant) is
//! enforced throughout: the properness certificate lives on the fiber
//! product `X ×_{s_X} X`, which only makes sense under it.

use std::collections::{BTreeMap, BTreeSet};

use num::Zero;
use thiserror::Error;

use crate::action::{Action, Side};
use crate::groupoid::{unit_space_groupoid, FiniteGroupoid, HaarSystem};
use crate::measure::{check_invariance, is_concentrated, MeasureFamily};
use crate::rat::{format_rat, rat_sqrt_f64, Rat};
use crate::report::Report;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorrespondenceError {
    #[error("bispace carriers disagree")]
    CarrierMismatch,
    #[error("left action must be a left action and right action a right action")]
    WrongSides,
    #[error("family is not fibered along s_X at {0:?}")]
    FiberMismatch(String),
    #[error("bispace failed validation: {0}")]
    InvalidBispace(String),
    #[error("lambda is not H-invariant: {0}")]
    NotInvariant(String),
    #[error("lambda is not quasi-invariant: exactly one side vanishes at ({gamma}, {x})")]
    NotQuasiInvariant { gamma: String, x: String },
    #[error("adjoining function missing; run compute_adjoining first")]
    AdjoiningMissing,
    #[error("zero atom at {0:?}")]
    ZeroAtom(String),
    #[error("phi is not a bijection")]
    NotBijective,
    #[error("phi is not equivariant at {0}")]
    NotEquivariant(String),
    #[error("measures are not equivalent: witnessed at {0:?}")]
    NotEquivalentMeasures(String),
}

/// A set carrying commuting left G- and right H-actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bispace {
    left: Action,
    right: Action,
}

impl Bispace {
    pub fn new(left: Action, right: Action) -> Result<Self, CorrespondenceError> {
        if left.side() != Side::Left || right.side() != Side::Right {
            return Err(CorrespondenceError::WrongSides);
        }
        if left.carrier() != right.carrier() {
            return Err(CorrespondenceError::CarrierMismatch);
        }
        Ok(Bispace { left, right })
    }

    pub fn left(&self) -> &Action {
        &self.left
    }

    pub fn right(&self) -> &Action {
        &self.right
    }

    pub fn carrier(&self) -> &[String] {
        self.left.carrier()
    }

    /// `r_X`, the momentum map of the left action.
    pub fn r_x(&self, x: &str) -> &str {
        self.left.momentum(x)
    }

    /// `s_X`, the momentum map of the right action.
    pub fn s_x(&self, x: &str) -> &str {
        self.right.momentum(x)
    }

    /// Pairs `(x, y)` with `s_X(x) = s_X(y)`, in carrier order.
    pub fn fiber_product(&self) -> Vec<(String, String)> {
        let mut pairs = Vec::new();
        for x in self.carrier() {
            for y in self.carrier() {
                if self.s_x(x) == self.s_x(y) {
                    pairs.push((x.clone(), y.clone()));
                }
            }
        }
        pairs
    }
}

/// Commutation and the strict momentum invariances, with witnesses.
pub fn validate_bispace(b: &Bispace) -> Report {
    let mut report = Report::new();
    for (gamma, x, gx) in b.left.table() {
        if b.s_x(gx) != b.s_x(x) {
            report.push("s_X not G-invariant", format!("({gamma}, {x})"));
        }
    }
    for (eta, x, xe) in b.right.table() {
        if b.r_x(xe) != b.r_x(x) {
            report.push("r_X not H-invariant", format!("({x}, {eta})"));
        }
    }
    for (gamma, x, gx) in b.left.table() {
        for eta in b.right.groupoid().arrows() {
            let Some(xe) = b.right.apply(eta, x) else { continue };
            // (gamma x) eta and gamma (x eta) must both be defined and agree.
            let lhs = b.right.apply(eta, gx);
            let rhs = b.left.apply(gamma, xe);
            if lhs.is_none() || rhs.is_none() || lhs != rhs {
                report.push("commutation", format!("({gamma}, {x}, {eta})"));
            }
        }
    }
    report
}

/// The adjoining function on composable `(gamma, x)` pairs, as an exact
/// rational table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Adjoining {
    values: BTreeMap<(String, String), Rat>,
}

impl Adjoining {
    pub fn value(&self, gamma: &str, x: &str) -> &Rat {
        &self.values[&(gamma.to_string(), x.to_string())]
    }

    pub fn sqrt(&self, gamma: &str, x: &str) -> f64 {
        rat_sqrt_f64(self.value(gamma, x))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str, &Rat)> {
        self.values.iter().map(|((g, x), v)| (g.as_str(), x.as_str(), v))
    }
}

/// A topological correspondence at finite scale: a bispace with Haar
/// systems on both groupoids, an H-invariant family along `s_X`, and the
/// adjoining function once computed.
#[derive(Clone, Debug)]
pub struct Correspondence {
    pub bispace: Bispace,
    pub left_haar: HaarSystem,
    pub right_haar: HaarSystem,
    pub lambda: MeasureFamily,
    pub delta: Option<Adjoining>,
}

impl Correspondence {
    /// Assembles and validates a correspondence, computing the adjoining
    /// function. Use [`Correspondence::raw`] to carry invalid data into a
    /// validator.
    pub fn build(
        bispace: Bispace,
        left_haar: HaarSystem,
        right_haar: HaarSystem,
        lambda: MeasureFamily,
    ) -> Result<Self, CorrespondenceError> {
        let mut c = Correspondence::raw(bispace, left_haar, right_haar, lambda)?;
        let bisp = validate_bispace(&c.bispace);
        if !bisp.is_valid() {
            return Err(CorrespondenceError::InvalidBispace(bisp.to_string()));
        }
        let inv = check_invariance(&c.lambda, c.bispace.right());
        if !inv.is_valid() {
            return Err(CorrespondenceError::NotInvariant(inv.to_string()));
        }
        c.delta = Some(compute_adjoining(&c.bispace, &c.left_haar, &c.lambda)?);
        Ok(c)
    }

    /// Structural assembly only; no axiom is checked and no adjoining
    /// function is computed.
    pub fn raw(
        bispace: Bispace,
        left_haar: HaarSystem,
        right_haar: HaarSystem,
        lambda: MeasureFamily,
    ) -> Result<Self, CorrespondenceError> {
        if lambda.carrier() != bispace.carrier() {
            return Err(CorrespondenceError::CarrierMismatch);
        }
        for x in bispace.carrier() {
            if lambda.fiber_of(x) != bispace.s_x(x) {
                return Err(CorrespondenceError::FiberMismatch(x.clone()));
            }
        }
        Ok(Correspondence {
            bispace,
            left_haar,
            right_haar,
            lambda,
            delta: None,
        })
    }

    pub fn carrier(&self) -> &[String] {
        self.bispace.carrier()
    }

    pub fn delta(&self) -> Result<&Adjoining, CorrespondenceError> {
        self.delta.as_ref().ok_or(CorrespondenceError::AdjoiningMissing)
    }

    pub fn left_groupoid(&self) -> &FiniteGroupoid {
        self.bispace.left().groupoid()
    }

    pub fn right_groupoid(&self) -> &FiniteGroupoid {
        self.bispace.right().groupoid()
    }
}

/// The finite Radon-Nikodym cocycle of `nu(gamma, x) = alpha(gamma) lambda(x)`
/// against its image under `(gamma, x) -> (gamma^{-1}, gamma x)`:
///
/// `Delta(gamma, x) = alpha(gamma) lambda(x) / (alpha(gamma^{-1}) lambda(gamma x))`.
///
/// The orientation is pinned by the adjointness of the left representation.
/// When both sides vanish the value is set to 1; when exactly one vanishes
/// the family is not quasi-invariant.
pub fn compute_adjoining(
    bispace: &Bispace,
    alpha: &HaarSystem,
    lambda: &MeasureFamily,
) -> Result<Adjoining, CorrespondenceError> {
    let g = bispace.left().groupoid();
    let mut values = BTreeMap::new();
    for (gamma, x, gx) in bispace.left().table() {
        let num = alpha.weight(gamma) * lambda.weight(x);
        let den = alpha.weight(g.inv(gamma)) * lambda.weight(gx);
        let value = if num.is_zero() && den.is_zero() {
            crate::rat::rat_one()
        } else if num.is_zero() || den.is_zero() {
            return Err(CorrespondenceError::NotQuasiInvariant {
                gamma: gamma.to_string(),
                x: x.to_string(),
            });
        } else {
            num / den
        };
        values.insert((gamma.to_string(), x.to_string()), value);
    }
    Ok(Adjoining { values })
}

/// One verified instance of the pointwise certificate identity
/// `D(gamma x, x) lambda(x) = alpha(gamma)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evidence {
    pub gamma: String,
    pub x: String,
    pub lhs: Rat,
    pub rhs: Rat,
}

/// The certificate for a proper correspondence: the function `D` on the
/// fiber product (zero off the image of `m_{s_X}`) plus the trail of
/// verified pointwise identities.
#[derive(Clone, Debug)]
pub struct ProperCertificate {
    d: BTreeMap<(String, String), Rat>,
    pub evidence: Vec<Evidence>,
    /// Orbit space of the right action, computed while discharging the
    /// automatic conditions.
    pub orbit_space: Vec<Vec<String>>,
    /// The automatic conditions of the finite model, reported as notes.
    pub notes: Vec<String>,
}

impl ProperCertificate {
    pub fn d(&self, x: &str, y: &str) -> Rat {
        self.d
            .get(&(x.to_string(), y.to_string()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn d_entries(&self) -> impl Iterator<Item = (&str, &str, &Rat)> {
        self.d.iter().map(|((x, y), v)| (x.as_str(), y.as_str(), v))
    }

    /// Overrides the certificate function; used to exercise the literal
    /// equation verifier against a wrong certificate.
    pub fn with_d(&self, d: BTreeMap<(String, String), Rat>) -> Self {
        ProperCertificate {
            d,
            evidence: Vec::new(),
            orbit_space: self.orbit_space.clone(),
            notes: self.notes.clone(),
        }
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum Obstruction {
    #[error("zero atom at {0:?}")]
    ZeroAtom(String),
    #[error("inconsistent certificate values from {gamma1} and {gamma2} at {x}")]
    Inconsistent {
        gamma1: String,
        gamma2: String,
        x: String,
    },
}

/// Decides properness. Conditions (i) and (ii) of the definition are
/// automatic in the discrete model and recorded as notes; condition (iii)
/// reduces over singleton covers and minimal extensions to the pointwise
/// identity `D(gamma x, x) lambda(x) = alpha(gamma)`, so the operation
/// attempts `D(gamma x, x) = alpha(gamma) / lambda(x)`.
pub fn check_proper(c: &Correspondence) -> Result<ProperCertificate, Obstruction> {
    let bispace = &c.bispace;
    let alpha = &c.left_haar;
    let lambda = &c.lambda;
    let mut d: BTreeMap<(String, String), Rat> = BTreeMap::new();
    let mut evidence = Vec::new();
    for (gamma, x, gx) in bispace.left().table() {
        if lambda.weight(x).is_zero() {
            return Err(Obstruction::ZeroAtom(x.to_string()));
        }
        let value = alpha.weight(gamma) / lambda.weight(x);
        let key = (gx.to_string(), x.to_string());
        if let Some(prev) = d.get(&key) {
            if prev != &value {
                // Unreachable for a valid Haar system; kept as an oracle.
                let gamma1 = bispace
                    .left()
                    .table()
                    .find(|(g2, x2, gx2)| x2 == &x && gx2 == &gx && g2 != &gamma)
                    .map(|(g2, _, _)| g2.to_string())
                    .unwrap_or_default();
                return Err(Obstruction::Inconsistent {
                    gamma1,
                    gamma2: gamma.to_string(),
                    x: x.to_string(),
                });
            }
        } else {
            d.insert(key, value.clone());
        }
        evidence.push(Evidence {
            gamma: gamma.to_string(),
            x: x.to_string(),
            lhs: &value * lambda.weight(x),
            rhs: alpha.weight(gamma).clone(),
        });
    }
    let orbit_space = bispace.right().orbits();
    let notes = vec![
        "condition (i): m_{s_X} is a local homeomorphism onto its image (every map is, via singleton charts)".to_string(),
        format!(
            "condition (ii): [r_X]: X/H -> G0 is proper (finite spaces; {} orbits computed)",
            orbit_space.len()
        ),
    ];
    Ok(ProperCertificate {
        d,
        evidence,
        orbit_space,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationMismatch {
    /// The singleton cover element (gamma, x0) whose indicator was tested.
    pub cover: (String, String),
    /// The evaluation point.
    pub x: String,
    pub lhs: Rat,
    pub rhs: Rat,
}

#[derive(Clone, Debug, Default)]
pub struct EquationReport {
    pub instances: usize,
    pub mismatches: Vec<EquationMismatch>,
}

impl EquationReport {
    pub fn is_valid(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// The literal integral identity of the properness definition, brute-forced
/// over every singleton cover element, its indicator function, the canonical
/// minimal extension, and every evaluation point. This is the fidelity
/// oracle behind the finite reduction used by `check_proper`.
pub fn verify_properness_equation(c: &Correspondence, cert: &ProperCertificate) -> EquationReport {
    let bispace = &c.bispace;
    let alpha = &c.left_haar;
    let lambda = &c.lambda;
    let g = bispace.left().groupoid();
    let mut report = EquationReport::default();
    for (gamma0, x0, gx0) in bispace.left().table() {
        // f is the indicator of the singleton {(gamma0, x0)}; its minimal
        // extension f' is the indicator of {(gamma0 x0, x0)} on the fiber
        // product.
        for x in c.carrier() {
            // LHS: integral of f'(x, .) D(x, .) against lambda on the fiber.
            let mut lhs = Rat::zero();
            for y in c.carrier() {
                if bispace.s_x(y) != bispace.s_x(x) {
                    continue;
                }
                let f_prime = x == gx0 && y == x0;
                if f_prime {
                    lhs += cert.d(x, y) * lambda.weight(y);
                }
            }
            // RHS: integral of f(gamma, gamma^{-1} x) against alpha on the
            // range fiber of r_X(x).
            let mut rhs = Rat::zero();
            for gamma in g.arrows() {
                if g.rng(gamma) != bispace.r_x(x) {
                    continue;
                }
                let ginv = g.inv(gamma);
                let Some(ginv_x) = bispace.left().apply(ginv, x) else {
                    continue;
                };
                if gamma == gamma0 && ginv_x == x0 {
                    rhs += alpha.weight(gamma);
                }
            }
            report.instances += 1;
            if lhs != rhs {
                report.mismatches.push(EquationMismatch {
                    cover: (gamma0.to_string(), x0.to_string()),
                    x: x.to_string(),
                    lhs,
                    rhs,
                });
            }
        }
    }
    report
}

/// Result of comparing two correspondences along a candidate isomorphism.
#[derive(Clone, Debug)]
pub struct IsomorphismReport {
    /// Positive Radon-Nikodym derivative of the target family pulled back
    /// along phi against the source family.
    pub rn_derivative: BTreeMap<String, Rat>,
}

/// Checks that a bijection of carriers is a G-H-equivariant isomorphism of
/// correspondences with equivalent families, returning the derivative.
pub fn is_isomorphism(
    phi: &BTreeMap<String, String>,
    source: &Correspondence,
    target: &Correspondence,
) -> Result<IsomorphismReport, CorrespondenceError> {
    let x_carrier = source.carrier();
    let y_carrier = target.carrier();
    if phi.len() != x_carrier.len() {
        return Err(CorrespondenceError::NotBijective);
    }
    let mut image = BTreeSet::new();
    for x in x_carrier {
        let y = phi.get(x).ok_or(CorrespondenceError::NotBijective)?;
        if !y_carrier.contains(y) || !image.insert(y.clone()) {
            return Err(CorrespondenceError::NotBijective);
        }
    }
    if image.len() != y_carrier.len() {
        return Err(CorrespondenceError::NotBijective);
    }
    // Equivariance, including the momentum maps.
    for x in x_carrier {
        if target.bispace.r_x(&phi[x]) != source.bispace.r_x(x)
            || target.bispace.s_x(&phi[x]) != source.bispace.s_x(x)
        {
            return Err(CorrespondenceError::NotEquivariant(format!("momentum at {x}")));
        }
    }
    for (gamma, x, gx) in source.bispace.left().table() {
        if target.bispace.left().apply(gamma, &phi[x]) != Some(phi[gx].as_str()) {
            return Err(CorrespondenceError::NotEquivariant(format!("({gamma}, {x})")));
        }
    }
    for (eta, x, xe) in source.bispace.right().table() {
        if target.bispace.right().apply(eta, &phi[x]) != Some(phi[xe].as_str()) {
            return Err(CorrespondenceError::NotEquivariant(format!("({x}, {eta})")));
        }
    }
    // Pointwise equivalence of the families.
    let mut rn = BTreeMap::new();
    for x in x_carrier {
        let num = target.lambda.weight(&phi[x]);
        let den = source.lambda.weight(x);
        if num.is_zero() != den.is_zero() {
            return Err(CorrespondenceError::NotEquivalentMeasures(x.clone()));
        }
        let value = if den.is_zero() {
            crate::rat::rat_one()
        } else {
            num / den
        };
        rn.insert(x.clone(), value);
    }
    Ok(IsomorphismReport { rn_derivative: rn })
}

/// Replaces the family by the counting family along `s_X`, returning the
/// normalized correspondence and the positive density `D(x) = lambda(x)`.
pub fn etale_normalize(
    c: &Correspondence,
) -> Result<(Correspondence, BTreeMap<String, Rat>), CorrespondenceError> {
    if let Some(x) = c.lambda.zero_atoms().first() {
        return Err(CorrespondenceError::ZeroAtom(x.to_string()));
    }
    let density: BTreeMap<String, Rat> = c
        .carrier()
        .iter()
        .map(|x| (x.clone(), c.lambda.weight(x).clone()))
        .collect();
    let tau = MeasureFamily::counting(
        c.carrier().to_vec(),
        c.lambda.base().to_vec(),
        c.lambda.fiber_map().clone(),
    )
    .expect("counting family over the same fibering");
    let normalized = Correspondence::build(
        c.bispace.clone(),
        c.left_haar.clone(),
        c.right_haar.clone(),
        tau,
    )?;
    Ok((normalized, density))
}

/// Forgets the left action down to the trivial action of the unit-space
/// groupoid `G0` along `r_X`. The restricted adjoining function is
/// identically 1.
pub fn restrict_to_units(c: &Correspondence) -> Result<Correspondence, CorrespondenceError> {
    let g = c.left_groupoid();
    let (g0, haar0) = unit_space_groupoid(g, &c.left_haar)
        .map_err(|e| CorrespondenceError::InvalidBispace(e.to_string()))?;
    let carrier = c.carrier().to_vec();
    let momentum: BTreeMap<String, String> = carrier
        .iter()
        .map(|x| (x.clone(), c.bispace.r_x(x).to_string()))
        .collect();
    let mut act = BTreeMap::new();
    for x in &carrier {
        let e = g0.unit_arrow(c.bispace.r_x(x)).to_string();
        act.insert((e, x.clone()), x.clone());
    }
    let left = Action::new(Side::Left, g0, carrier, momentum, act)
        .expect("trivial action is structurally sound");
    let bispace = Bispace::new(left, c.bispace.right().clone())?;
    Correspondence::build(bispace, haar0, c.right_haar.clone(), c.lambda.clone())
}

/// The concentration statement behind the certificate: the measure
/// `D(x, .) lambda_1^x` on the fiber product is concentrated on the image
/// of `m_{s_X}`, checked through the five-way concentration oracle.
pub fn certificate_concentration(c: &Correspondence, cert: &ProperCertificate) -> bool {
    let bispace = &c.bispace;
    let pairs = bispace.fiber_product();
    let image: BTreeSet<String> = bispace
        .left()
        .table()
        .map(|(_, x, gx)| crate::groupoid::pair_id(gx, x))
        .collect();
    let carrier: Vec<String> = pairs
        .iter()
        .map(|(x, y)| crate::groupoid::pair_id(x, y))
        .collect();
    let fiber_map: BTreeMap<String, String> = pairs
        .iter()
        .map(|(x, y)| (crate::groupoid::pair_id(x, y), x.clone()))
        .collect();
    let weight: BTreeMap<String, Rat> = pairs
        .iter()
        .map(|(x, y)| {
            (
                crate::groupoid::pair_id(x, y),
                cert.d(x, y) * c.lambda.weight(y),
            )
        })
        .collect();
    let family = MeasureFamily::new(carrier, c.carrier().to_vec(), fiber_map, weight)
        .expect("certificate measure is structurally sound");
    is_concentrated(&family, &image)
}

/// Convenience: the exact rational `Delta` value rendered for reports.
pub fn format_delta(delta: &Adjoining) -> Vec<(String, String, String)> {
    delta
        .entries()
        .map(|(g, x, v)| (g.to_string(), x.to_string(), format_rat(v)))
        .collect()
}
