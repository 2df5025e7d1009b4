//! The convolution *-algebra of a finite groupoid with Haar system and its
//! regular representation as block matrices.
//!
//! Coefficients are complex doubles; Haar weights stay rational and enter
//! exactly. Full and reduced completions coincide on finite groupoids, so
//! only the regular representation is built.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::groupoid::{FiniteGroupoid, HaarSystem};
use crate::numeric::{c64, operator_norm, CMat, C64};
use crate::rat::{rat_sqrt_f64, rat_to_f64};

/// A finitely supported complex function on the arrows of a groupoid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraElem {
    values: BTreeMap<String, C64>,
}

impl AlgebraElem {
    pub fn zero() -> Self {
        AlgebraElem::default()
    }

    pub fn delta(arrow: &str) -> Self {
        AlgebraElem {
            values: [(arrow.to_string(), c64(1.0, 0.0))].into(),
        }
    }

    pub fn from_values(values: BTreeMap<String, C64>) -> Self {
        AlgebraElem { values }
    }

    pub fn value(&self, arrow: &str) -> C64 {
        self.values.get(arrow).copied().unwrap_or_else(|| c64(0.0, 0.0))
    }

    pub fn values(&self) -> &BTreeMap<String, C64> {
        &self.values
    }

    pub fn set(&mut self, arrow: &str, v: C64) {
        if v == c64(0.0, 0.0) {
            self.values.remove(arrow);
        } else {
            self.values.insert(arrow.to_string(), v);
        }
    }

    pub fn scaled(&self, s: C64) -> Self {
        AlgebraElem {
            values: self.values.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Support restricted to unit arrows.
    pub fn is_unit_supported(&self, g: &FiniteGroupoid) -> bool {
        self.values.keys().all(|a| g.is_unit_arrow(a))
    }
}

impl Add for &AlgebraElem {
    type Output = AlgebraElem;
    fn add(self, other: &AlgebraElem) -> AlgebraElem {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let s = out.value(k) + v;
            out.set(k, s);
        }
        out
    }
}

impl Sub for &AlgebraElem {
    type Output = AlgebraElem;
    fn sub(self, other: &AlgebraElem) -> AlgebraElem {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let s = out.value(k) - v;
            out.set(k, s);
        }
        out
    }
}

impl Neg for &AlgebraElem {
    type Output = AlgebraElem;
    fn neg(self) -> AlgebraElem {
        self.scaled(c64(-1.0, 0.0))
    }
}

/// The convolution algebra context `(G, alpha)`.
#[derive(Clone, Debug)]
pub struct ConvolutionAlgebra<'a> {
    pub groupoid: &'a FiniteGroupoid,
    pub haar: &'a HaarSystem,
}

impl<'a> ConvolutionAlgebra<'a> {
    pub fn new(groupoid: &'a FiniteGroupoid, haar: &'a HaarSystem) -> Self {
        ConvolutionAlgebra { groupoid, haar }
    }

    /// `(f*g)(gamma) = sum_{eta in rng^{-1}(src gamma)} f(gamma eta) g(eta^{-1}) alpha(eta)`.
    pub fn convolve(&self, f: &AlgebraElem, g: &AlgebraElem) -> AlgebraElem {
        let gpd = self.groupoid;
        let mut out = AlgebraElem::zero();
        for gamma in gpd.arrows() {
            let mut acc = c64(0.0, 0.0);
            for eta in gpd.arrows_with_rng(gpd.src(gamma)) {
                let ge = gpd.compose_ok(gamma, eta);
                acc += f.value(ge) * g.value(gpd.inv(eta)) * rat_to_f64(self.haar.weight(eta));
            }
            out.set(gamma, acc);
        }
        out
    }

    /// `f*(gamma) = conj f(gamma^{-1})`.
    pub fn star(&self, f: &AlgebraElem) -> AlgebraElem {
        let mut out = AlgebraElem::zero();
        for gamma in self.groupoid.arrows() {
            out.set(gamma, f.value(self.groupoid.inv(gamma)).conj());
        }
        out
    }

    /// The multiplicative unit `sum_u alpha(e_u)^{-1} delta_{e_u}`.
    pub fn unit(&self) -> AlgebraElem {
        let mut out = AlgebraElem::zero();
        for u in self.groupoid.units() {
            let e = self.groupoid.unit_arrow(u);
            out.set(e, c64(1.0 / rat_to_f64(self.haar.weight(e)), 0.0));
        }
        out
    }

    /// Basis data of the regular representation: per-unit blocks on the
    /// source fibers, orthonormalized against the weights `alpha(gamma^{-1})`.
    /// The global basis is the arrow list, so the matrix is block diagonal
    /// over units.
    pub fn representation_basis(&self) -> Vec<String> {
        let mut basis = Vec::new();
        for u in self.groupoid.units() {
            for a in self.groupoid.arrows_with_src(u) {
                basis.push(a.to_string());
            }
        }
        basis
    }

    /// The regular representation matrix,
    /// `M[x, y] = f(x y^{-1}) sqrt(alpha(x^{-1}) alpha(y^{-1}))`
    /// for arrows `x, y` with a common source; a *-homomorphism, faithful
    /// on finite groupoids.
    pub fn represent(&self, f: &AlgebraElem) -> CMat {
        let g = self.groupoid;
        let basis = self.representation_basis();
        let n = basis.len();
        let mut m = CMat::zeros(n, n);
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                if g.src(x) != g.src(y) {
                    continue;
                }
                let arrow = g.compose_ok(x, g.inv(y));
                let wx = rat_sqrt_f64(self.haar.weight(g.inv(x)));
                let wy = rat_sqrt_f64(self.haar.weight(g.inv(y)));
                m[(i, j)] = f.value(arrow) * (wx * wy);
            }
        }
        m
    }

    /// Spectral norm of the regular representation.
    pub fn norm(&self, f: &AlgebraElem) -> f64 {
        operator_norm(&self.represent(f))
    }
}

