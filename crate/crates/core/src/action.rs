//! Finite groupoid actions: validation, stabilizers, freeness, transitivity
//! over an invariant map, and the multiplication map `m_f`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::groupoid::{FiniteGroupoid, StructureError};
use crate::report::Report;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("map is not constant on orbits: f({x}) != f({y}) but the points share an orbit")]
    NotInvariant { x: String, y: String },
    #[error("map is missing a value at {0:?}")]
    MissingValue(String),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A finite action. The `act` table is keyed `(arrow, point)` for both
/// sides; for a right action the stored value is `x·eta` with the
/// composability rule mirrored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    side: Side,
    groupoid: FiniteGroupoid,
    carrier: Vec<String>,
    momentum: BTreeMap<String, String>,
    act: BTreeMap<(String, String), String>,
}

impl Action {
    pub fn new(
        side: Side,
        groupoid: FiniteGroupoid,
        carrier: Vec<String>,
        momentum: BTreeMap<String, String>,
        act: BTreeMap<(String, String), String>,
    ) -> Result<Self, StructureError> {
        let point_set: BTreeSet<_> = carrier.iter().cloned().collect();
        if point_set.len() != carrier.len() {
            let dup = carrier
                .iter()
                .find(|p| carrier.iter().filter(|q| q == p).count() > 1)
                .unwrap();
            return Err(StructureError::DuplicateId(dup.clone()));
        }
        for x in &carrier {
            match momentum.get(x) {
                None => {
                    return Err(StructureError::Missing {
                        map: "momentum".into(),
                        id: x.clone(),
                    })
                }
                Some(u) if !groupoid.units().contains(u) => {
                    return Err(StructureError::Unresolved {
                        map: "momentum".into(),
                        id: u.clone(),
                    })
                }
                _ => {}
            }
        }
        for ((a, x), y) in &act {
            if !groupoid.arrows().contains(a) {
                return Err(StructureError::Unresolved {
                    map: "act".into(),
                    id: a.clone(),
                });
            }
            for p in [x, y] {
                if !point_set.contains(p) {
                    return Err(StructureError::Unresolved {
                        map: "act".into(),
                        id: p.clone(),
                    });
                }
            }
        }
        Ok(Action {
            side,
            groupoid,
            carrier,
            momentum,
            act,
        })
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn groupoid(&self) -> &FiniteGroupoid {
        &self.groupoid
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn momentum(&self, x: &str) -> &str {
        &self.momentum[x]
    }

    pub fn momentum_map(&self) -> &BTreeMap<String, String> {
        &self.momentum
    }

    /// Composability: `src(a) = momentum(x)` for left actions,
    /// `rng(a) = momentum(x)` for right actions.
    pub fn is_composable(&self, arrow: &str, x: &str) -> bool {
        match self.side {
            Side::Left => self.groupoid.src(arrow) == self.momentum(x),
            Side::Right => self.groupoid.rng(arrow) == self.momentum(x),
        }
    }

    pub fn apply(&self, arrow: &str, x: &str) -> Option<&str> {
        self.act
            .get(&(arrow.to_string(), x.to_string()))
            .map(|p| p.as_str())
    }

    pub fn apply_ok(&self, arrow: &str, x: &str) -> &str {
        self.apply(arrow, x)
            .unwrap_or_else(|| panic!("action undefined for ({arrow}, {x})"))
    }

    pub fn table(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.act
            .iter()
            .map(|((a, x), y)| (a.as_str(), x.as_str(), y.as_str()))
    }

    /// Action axioms: domain exactness, unit law, momentum covariance, and
    /// compatibility with composition.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let g = &self.groupoid;
        for a in g.arrows() {
            for x in &self.carrier {
                let defined = self.apply(a, x).is_some();
                if self.is_composable(a, x) != defined {
                    report.push("act-domain", format!("({a}, {x})"));
                }
            }
        }
        for x in &self.carrier {
            let e = g.unit_arrow(self.momentum(x));
            if self.apply(e, x) != Some(x.as_str()) {
                report.push("unit-act", x.clone());
            }
        }
        for ((a, x), y) in &self.act {
            let expected = match self.side {
                Side::Left => g.rng(a),
                Side::Right => g.src(a),
            };
            if self.momentum(y) != expected {
                report.push("momentum-covariance", format!("({a}, {x}) -> {y}"));
            }
        }
        // Left: (a∘b)x = a(bx).  Right: x(a∘b) = (xa)b, i.e. stored as
        // act(a∘b, x) = act(b, act(a, x)).
        for a in g.arrows() {
            for b in g.arrows() {
                let Some(ab) = g.compose(a, b) else { continue };
                for x in &self.carrier {
                    let (first, second) = match self.side {
                        Side::Left => (b.as_str(), a.as_str()),
                        Side::Right => (a.as_str(), b.as_str()),
                    };
                    let Some(mid) = self.apply(first, x) else { continue };
                    let mid = mid.to_string();
                    let step = self.apply(second, &mid);
                    if step.is_some() && self.apply(ab, x) != step {
                        report.push("act-compose", format!("({a}, {b}, {x})"));
                    }
                }
            }
        }
        report
    }

    /// The isotropy group `Fix(x)`: arrows fixing `x`.
    pub fn stabilizer(&self, x: &str) -> Vec<String> {
        self.groupoid
            .arrows()
            .iter()
            .filter(|a| self.apply(a, x) == Some(x))
            .cloned()
            .collect()
    }

    /// Orbits in deterministic order (discovered along the carrier order).
    pub fn orbits(&self) -> Vec<Vec<String>> {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut orbits = Vec::new();
        for start in &self.carrier {
            if seen.contains(start) {
                continue;
            }
            let mut orbit = vec![start.clone()];
            seen.insert(start.clone());
            let mut queue = vec![start.clone()];
            while let Some(x) = queue.pop() {
                for a in self.groupoid.arrows() {
                    if let Some(y) = self.apply(a, &x) {
                        if seen.insert(y.to_string()) {
                            orbit.push(y.to_string());
                            queue.push(y.to_string());
                        }
                    }
                }
            }
            orbit.sort();
            orbits.push(orbit);
        }
        orbits
    }

    /// Point -> orbit identifier; the identifier is the bracketed
    /// lexicographically least member.
    pub fn orbit_map(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        for orbit in self.orbits() {
            let id = format!("[{}]", orbit[0]);
            for x in orbit {
                map.insert(x, id.clone());
            }
        }
        map
    }

    /// Freeness, computed two ways and cross-checked: all stabilizers
    /// trivial, and the graph of `m_0` injective in its first slot.
    pub fn is_free(&self) -> bool {
        let by_stabilizers = self.carrier.iter().all(|x| {
            self.stabilizer(x) == vec![self.groupoid.unit_arrow(self.momentum(x)).to_string()]
        });
        let mut by_m0 = true;
        'outer: for x in &self.carrier {
            let mut hit: BTreeMap<&str, &str> = BTreeMap::new();
            for a in self.groupoid.arrows() {
                if let Some(y) = self.apply(a, x) {
                    if let Some(prev) = hit.insert(y, a) {
                        if prev != a {
                            by_m0 = false;
                            break 'outer;
                        }
                    }
                }
            }
        }
        assert_eq!(
            by_stabilizers, by_m0,
            "freeness cross-check diverged on a validated action"
        );
        by_stabilizers
    }

    fn check_invariant_map(&self, f: &BTreeMap<String, String>) -> Result<(), ActionError> {
        for x in &self.carrier {
            if !f.contains_key(x) {
                return Err(ActionError::MissingValue(x.clone()));
            }
        }
        for ((_, x), y) in &self.act {
            if f[x] != f[y] {
                return Err(ActionError::NotInvariant {
                    x: x.clone(),
                    y: y.clone(),
                });
            }
        }
        Ok(())
    }

    /// Transitivity over an invariant map `f`, computed two ways and
    /// cross-checked: surjectivity of `m_f` onto the fiber product, and
    /// injectivity of the induced map on the orbit space.
    pub fn is_transitive_over(&self, f: &BTreeMap<String, String>) -> Result<bool, ActionError> {
        self.check_invariant_map(f)?;
        let m = self.m_map(f)?;
        let by_surjectivity = m.codomain.iter().all(|p| m.image.contains(p));

        // [f] is injective iff distinct orbits carry distinct f-values.
        let values: Vec<&String> = self.orbits().iter().map(|orbit| &f[&orbit[0]]).collect();
        let distinct: BTreeSet<&String> = values.iter().copied().collect();
        let by_quotient = distinct.len() == values.len();

        assert_eq!(
            by_surjectivity, by_quotient,
            "transitivity cross-check diverged on a validated action"
        );
        Ok(by_surjectivity)
    }
}

/// The graph of `m_f(gamma, x) = (gamma·x, x)` with image and fibers.
#[derive(Clone, Debug)]
pub struct MMap {
    pub graph: Vec<((String, String), (String, String))>,
    pub image: BTreeSet<(String, String)>,
    /// The fiber product `X ×_{f,Y,f} X`.
    pub codomain: Vec<(String, String)>,
    pub fibers: BTreeMap<(String, String), Vec<(String, String)>>,
}

impl MMap {
    pub fn non_singleton_fibers(&self) -> BTreeMap<(String, String), Vec<(String, String)>> {
        self.fibers
            .iter()
            .filter(|(_, v)| v.len() > 1)
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.fibers.values().all(|v| v.len() <= 1)
    }
}

impl Action {
    /// Explicit finite presentation of `m_f`.
    pub fn m_map(&self, f: &BTreeMap<String, String>) -> Result<MMap, ActionError> {
        self.check_invariant_map(f)?;
        let mut graph = Vec::new();
        let mut image = BTreeSet::new();
        let mut fibers: BTreeMap<(String, String), Vec<(String, String)>> = BTreeMap::new();
        for a in self.groupoid.arrows() {
            for x in &self.carrier {
                if let Some(y) = self.apply(a, x) {
                    let source = (a.clone(), x.clone());
                    let target = (y.to_string(), x.clone());
                    graph.push((source.clone(), target.clone()));
                    image.insert(target.clone());
                    fibers.entry(target).or_default().push(source);
                }
            }
        }
        let mut codomain = Vec::new();
        for x in &self.carrier {
            for y in &self.carrier {
                if f[x] == f[y] {
                    codomain.push((x.clone(), y.clone()));
                }
            }
        }
        Ok(MMap {
            graph,
            image,
            codomain,
            fibers,
        })
    }
}

/// Constant map onto a one-point set, fitting `m_0` into the `m_f` frame.
pub fn constant_map(carrier: &[String]) -> BTreeMap<String, String> {
    carrier.iter().map(|x| (x.clone(), "*".to_string())).collect()
}
