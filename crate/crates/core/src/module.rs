//! The correspondence module: complex functions on the carrier with the
//! right C_c(H)-action, the C_c(H)-valued inner product, and the left
//! representation through `Delta^{1/2}`.
//!
//! Operator equality is always asserted via `operator_matrix`, never via the
//! action on a sampled vector alone.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::algebra::AlgebraElem;
use crate::correspondence::{Correspondence, CorrespondenceError};
use crate::numeric::{c64, CMat, C64};
use crate::rat::rat_to_f64;

/// A complex function on the carrier points.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModuleElem {
    values: BTreeMap<String, C64>,
}

impl ModuleElem {
    pub fn zero() -> Self {
        ModuleElem::default()
    }

    pub fn delta(point: &str) -> Self {
        ModuleElem {
            values: [(point.to_string(), c64(1.0, 0.0))].into(),
        }
    }

    pub fn from_values(values: BTreeMap<String, C64>) -> Self {
        ModuleElem { values }
    }

    pub fn value(&self, point: &str) -> C64 {
        self.values.get(point).copied().unwrap_or_else(|| c64(0.0, 0.0))
    }

    pub fn set(&mut self, point: &str, v: C64) {
        if v == c64(0.0, 0.0) {
            self.values.remove(point);
        } else {
            self.values.insert(point.to_string(), v);
        }
    }

    pub fn scaled(&self, s: C64) -> Self {
        ModuleElem {
            values: self.values.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    /// Pointwise multiplication by a real density, e.g. `sqrt(D)`.
    pub fn densified(&self, density: &BTreeMap<String, f64>) -> Self {
        ModuleElem {
            values: self
                .values
                .iter()
                .map(|(k, v)| (k.clone(), v * density.get(k).copied().unwrap_or(0.0)))
                .collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.values().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl Add for &ModuleElem {
    type Output = ModuleElem;
    fn add(self, other: &ModuleElem) -> ModuleElem {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let s = out.value(k) + v;
            out.set(k, s);
        }
        out
    }
}

impl Sub for &ModuleElem {
    type Output = ModuleElem;
    fn sub(self, other: &ModuleElem) -> ModuleElem {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let s = out.value(k) - v;
            out.set(k, s);
        }
        out
    }
}

impl Neg for &ModuleElem {
    type Output = ModuleElem;
    fn neg(self) -> ModuleElem {
        self.scaled(c64(-1.0, 0.0))
    }
}

/// `(zeta·g)(x) = sum_{eta in rng^{-1}(s_X(x))} zeta(x eta) g(eta^{-1}) beta(eta)`.
pub fn right_act(c: &Correspondence, zeta: &ModuleElem, g: &AlgebraElem) -> ModuleElem {
    let h = c.right_groupoid();
    let right = c.bispace.right();
    let mut out = ModuleElem::zero();
    for x in c.carrier() {
        let mut acc = c64(0.0, 0.0);
        for eta in h.arrows_with_rng(c.bispace.s_x(x)) {
            let xe = right.apply_ok(eta, x);
            acc += zeta.value(xe) * g.value(h.inv(eta)) * rat_to_f64(c.right_haar.weight(eta));
        }
        out.set(x, acc);
    }
    out
}

/// `<zeta, xi>(eta) = sum_{x in s_X^{-1}(r_H(eta))} conj zeta(x) xi(x eta) lambda(x)`.
pub fn inner(c: &Correspondence, zeta: &ModuleElem, xi: &ModuleElem) -> AlgebraElem {
    let h = c.right_groupoid();
    let right = c.bispace.right();
    let mut out = AlgebraElem::zero();
    for eta in h.arrows() {
        let mut acc = c64(0.0, 0.0);
        for x in c.carrier() {
            if c.bispace.s_x(x) != h.rng(eta) {
                continue;
            }
            let xe = right.apply_ok(eta, x);
            acc += zeta.value(x).conj() * xi.value(xe) * rat_to_f64(c.lambda.weight(x));
        }
        out.set(eta, acc);
    }
    out
}

/// The left representation `sigma_G`:
/// `(b·zeta)(x) = sum_{gamma in rng^{-1}(r_X(x))} b(gamma) zeta(gamma^{-1} x)
///  Delta^{1/2}(gamma, gamma^{-1} x) alpha(gamma)`.
pub fn left_act(
    c: &Correspondence,
    b: &AlgebraElem,
    zeta: &ModuleElem,
) -> Result<ModuleElem, CorrespondenceError> {
    let delta = c.delta()?;
    let g = c.left_groupoid();
    let left = c.bispace.left();
    let mut out = ModuleElem::zero();
    for x in c.carrier() {
        let mut acc = c64(0.0, 0.0);
        for gamma in g.arrows_with_rng(c.bispace.r_x(x)) {
            let ginv = g.inv(gamma);
            let gx = left.apply_ok(ginv, x);
            acc += b.value(gamma)
                * zeta.value(gx)
                * delta.sqrt(gamma, gx)
                * rat_to_f64(c.left_haar.weight(gamma));
        }
        out.set(x, acc);
    }
    Ok(out)
}

/// Matrix of a linear map on the module in the delta basis fixed by the
/// carrier order.
pub fn operator_matrix<F>(carrier: &[String], map: F) -> CMat
where
    F: Fn(&ModuleElem) -> ModuleElem,
{
    let n = carrier.len();
    let mut m = CMat::zeros(n, n);
    for (j, y) in carrier.iter().enumerate() {
        let out = map(&ModuleElem::delta(y));
        for (i, x) in carrier.iter().enumerate() {
            m[(i, j)] = out.value(x);
        }
    }
    m
}

/// Matrix of `sigma_G(b)`.
pub fn left_matrix(c: &Correspondence, b: &AlgebraElem) -> Result<CMat, CorrespondenceError> {
    c.delta()?;
    Ok(operator_matrix(c.carrier(), |zeta| {
        left_act(c, b, zeta).expect("delta checked above")
    }))
}

