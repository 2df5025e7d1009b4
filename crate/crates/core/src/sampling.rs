//! Seeded random generators for structured objects: valid finite groupoids,
//! actions, and correspondences. Used by the property and acceptance suites.
//!
//! Groupoids are built as disjoint unions of transitive pieces, each the
//! product of a pair groupoid with a cyclic isotropy group; every finite
//! groupoid has this shape up to isomorphism. Haar weights factor through
//! the source map, which is exactly left invariance at finite scale.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::Rng;

use crate::action::{Action, Side};
use crate::correspondence::{Bispace, Correspondence};
use crate::groupoid::{FiniteGroupoid, HaarSystem};
use crate::measure::MeasureFamily;
use crate::rat::{rat, rat_zero, Rat};

fn random_positive_rat(rng: &mut StdRng) -> Rat {
    let choices = [(1, 1), (2, 1), (1, 2), (3, 1), (1, 3), (3, 2), (2, 3)];
    let (p, q) = choices[rng.random_range(0..choices.len())];
    rat(p, q)
}

fn random_weight(rng: &mut StdRng, allow_zero: bool) -> Rat {
    if allow_zero && rng.random_bool(0.3) {
        rat_zero()
    } else {
        random_positive_rat(rng)
    }
}

/// A random valid groupoid with a random Haar system, at most `max_arrows`
/// arrows. Pieces are `pair(k) x Z/m`.
pub fn random_groupoid(rng: &mut StdRng, max_arrows: usize) -> (FiniteGroupoid, HaarSystem) {
    let mut units: Vec<String> = Vec::new();
    let mut arrows: Vec<String> = Vec::new();
    let mut src = BTreeMap::new();
    let mut rng_map = BTreeMap::new();
    let mut inv = BTreeMap::new();
    let mut compose = BTreeMap::new();
    let mut unit_arrow = BTreeMap::new();
    let mut weight = BTreeMap::new();
    let mut arrow_count = 0usize;
    let pieces = rng.random_range(1..=2);
    for piece in 0..pieces {
        let k = rng.random_range(1..=2);
        let m = rng.random_range(1..=3);
        if arrow_count + k * k * m > max_arrows && piece > 0 {
            break;
        }
        arrow_count += k * k * m;
        let unit = |i: usize| format!("p{piece}u{i}");
        let arrow = |i: usize, j: usize, t: usize| format!("p{piece}a{i}_{j}_{}", t % m);
        let piece_units: Vec<usize> = (0..k).collect();
        for i in &piece_units {
            units.push(unit(*i));
            unit_arrow.insert(unit(*i), arrow(*i, *i, 0));
        }
        // Source-dependent weights: exactly the left-invariant ones.
        let unit_weight: Vec<Rat> =
            piece_units.iter().map(|_| random_positive_rat(rng)).collect();
        for i in &piece_units {
            for j in &piece_units {
                for t in 0..m {
                    let id = arrow(*i, *j, t);
                    arrows.push(id.clone());
                    src.insert(id.clone(), unit(*j));
                    rng_map.insert(id.clone(), unit(*i));
                    inv.insert(id.clone(), arrow(*j, *i, m - t % m));
                    weight.insert(id, unit_weight[*j].clone());
                }
            }
        }
        for i in &piece_units {
            for j in &piece_units {
                for l in &piece_units {
                    for t in 0..m {
                        for t2 in 0..m {
                            compose.insert(
                                (arrow(*i, *j, t), arrow(*j, *l, t2)),
                                arrow(*i, *l, t + t2),
                            );
                        }
                    }
                }
            }
        }
    }
    let g = FiniteGroupoid::new(units, arrows, src, rng_map, inv, compose, unit_arrow)
        .expect("random groupoid is structurally sound");
    let haar = HaarSystem::new(&g, weight).expect("random haar covers all arrows");
    (g, haar)
}

/// A random left G-set: a disjoint union of orbits `src^{-1}(u)/K` for
/// random base units `u` and random subgroups `K` of the isotropy.
pub fn random_left_gset(rng: &mut StdRng, g: &FiniteGroupoid, max_points: usize) -> Action {
    let orbit_count = rng.random_range(1..=2);
    let mut carrier: Vec<String> = Vec::new();
    let mut momentum = BTreeMap::new();
    let mut act = BTreeMap::new();
    // point id: the least arrow id of its K-class, tagged by the orbit.
    for orbit in 0..orbit_count {
        let u = g.units()[rng.random_range(0..g.units().len())].clone();
        // The isotropy of u consists of the arrows u <- u.
        let iso: Vec<String> = g
            .arrows()
            .iter()
            .filter(|a| g.src(a) == u && g.rng(a) == u)
            .cloned()
            .collect();
        // A random subgroup: the cyclic group generated by one element.
        let generator = iso[rng.random_range(0..iso.len())].clone();
        let mut subgroup = vec![g.unit_arrow(&u).to_string()];
        let mut current = generator;
        while !subgroup.contains(&current) {
            subgroup.push(current.clone());
            current = g.compose_ok(&current, &subgroup[1]).to_string();
        }
        // Classes of src^{-1}(u) under right multiplication by the subgroup.
        let fiber: Vec<String> = g
            .arrows()
            .iter()
            .filter(|a| g.src(a) == u)
            .cloned()
            .collect();
        let class_of = |gamma: &str| -> String {
            let mut members: Vec<String> = subgroup
                .iter()
                .map(|d| g.compose_ok(gamma, d).to_string())
                .collect();
            members.sort();
            format!("o{orbit}[{}]", members[0])
        };
        let mut classes: Vec<String> = Vec::new();
        for gamma in &fiber {
            let class = class_of(gamma);
            if !classes.contains(&class) {
                classes.push(class);
            }
        }
        if carrier.len() + classes.len() > max_points && orbit > 0 {
            break;
        }
        for gamma in &fiber {
            let point = class_of(gamma);
            momentum.insert(point.clone(), g.rng(gamma).to_string());
            if !carrier.contains(&point) {
                carrier.push(point.clone());
            }
            for arrow in g.arrows() {
                if g.is_composable(arrow, gamma) {
                    let target = class_of(g.compose_ok(arrow, gamma));
                    act.insert((arrow.clone(), point.clone()), target);
                }
            }
        }
    }
    Action::new(Side::Left, g.clone(), carrier, momentum, act)
        .expect("random G-set is structurally sound")
}

/// A random invariant map from the carrier, built by coarsening the orbit
/// partition into random labels.
pub fn random_invariant_map(rng: &mut StdRng, action: &Action) -> BTreeMap<String, String> {
    let orbits = action.orbits();
    let labels = rng.random_range(1..=orbits.len().max(1));
    let mut map = BTreeMap::new();
    for orbit in &orbits {
        let label = format!("y{}", rng.random_range(0..labels));
        for x in orbit {
            map.insert(x.clone(), label.clone());
        }
    }
    map
}

/// A random valid correspondence whose left side is a random groupoid
/// acting on a random G-set and whose right side is the trivial groupoid on
/// a G-invariant quotient of the carrier, with weighted point masses.
pub fn random_space_correspondence(
    rng: &mut StdRng,
    full_support: bool,
    max_points: usize,
    max_arrows: usize,
) -> Correspondence {
    let (g, alpha) = random_groupoid(rng, max_arrows);
    let left = random_left_gset(rng, &g, max_points);
    // Coarsening orbits into labels stays G-invariant.
    let s_map = random_invariant_map(rng, &left);
    let mut base: Vec<String> = s_map.values().cloned().collect();
    base.sort();
    base.dedup();
    let (h, _) = crate::fixtures::space_groupoid(&base);
    let beta_weights: BTreeMap<String, Rat> = base
        .iter()
        .map(|y| (y.clone(), random_positive_rat(rng)))
        .collect();
    let beta = HaarSystem::new(&h, beta_weights).expect("space haar");
    let carrier = left.carrier().to_vec();
    let mut act = BTreeMap::new();
    for x in &carrier {
        act.insert((s_map[x].clone(), x.clone()), x.clone());
    }
    let right = Action::new(Side::Right, h, carrier.clone(), s_map.clone(), act)
        .expect("trivial right action");
    let bispace = Bispace::new(left, right).expect("random bispace");
    let weight: BTreeMap<String, Rat> = carrier
        .iter()
        .map(|x| (x.clone(), random_weight(rng, !full_support)))
        .collect();
    let lambda = MeasureFamily::new(carrier, base, s_map, weight).expect("random family");
    if full_support {
        Correspondence::build(bispace, alpha, beta, lambda).expect("random correspondence")
    } else {
        // Zero atoms break quasi-invariance in general, so skip the
        // adjoining function; the properness checker does not need it.
        Correspondence::raw(bispace, alpha, beta, lambda).expect("random correspondence")
    }
}

/// A random correspondence with nontrivial H: Z/nZ as a bispace between two
/// of its subgroups, with per-coset weights.
pub fn random_group_correspondence(rng: &mut StdRng, full_support: bool) -> Correspondence {
    let n = rng.random_range(2..=6usize);
    let a = rng.random_range(1..=n);
    let b = rng.random_range(1..=n);
    let (g, g_arrows) = cyclic_subgroup(n, a, "g");
    let (h, h_arrows) = cyclic_subgroup(n, b, "h");
    let alpha_value = random_positive_rat(rng);
    let beta_value = random_positive_rat(rng);
    let alpha = HaarSystem::new(
        &g,
        g_arrows.iter().map(|(id, _)| (id.clone(), alpha_value.clone())).collect(),
    )
    .expect("group haar");
    let beta = HaarSystem::new(
        &h,
        h_arrows.iter().map(|(id, _)| (id.clone(), beta_value.clone())).collect(),
    )
    .expect("group haar");
    let carrier: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let momentum_g: BTreeMap<String, String> =
        carrier.iter().map(|x| (x.clone(), "u".to_string())).collect();
    let momentum_h: BTreeMap<String, String> =
        carrier.iter().map(|x| (x.clone(), "u".to_string())).collect();
    let mut left_act = BTreeMap::new();
    for (id, r) in &g_arrows {
        for j in 0..n {
            left_act.insert((id.clone(), format!("x{j}")), format!("x{}", (j + r) % n));
        }
    }
    let mut right_act = BTreeMap::new();
    for (id, r) in &h_arrows {
        for j in 0..n {
            right_act.insert((id.clone(), format!("x{j}")), format!("x{}", (j + r) % n));
        }
    }
    let left = Action::new(Side::Left, g, carrier.clone(), momentum_g, left_act)
        .expect("left translation");
    let right = Action::new(Side::Right, h, carrier.clone(), momentum_h, right_act)
        .expect("right translation");
    let bispace = Bispace::new(left, right).expect("translation bispace");
    // H-invariance forces the weights to be constant on H-cosets
    // (residues mod gcd(n, b)). When zeros are allowed, the zero set is
    // chosen constant on joint (G, H)-orbits, keeping it G-invariant too.
    let d_h = gcd(n, b % n);
    let d_joint = gcd(n, gcd(a % n, b % n));
    let mut coset_value: BTreeMap<usize, Rat> = BTreeMap::new();
    let mut orbit_zero: BTreeMap<usize, bool> = BTreeMap::new();
    let mut weight: BTreeMap<String, Rat> = BTreeMap::new();
    for j in 0..n {
        let base = coset_value
            .entry(j % d_h)
            .or_insert_with(|| random_positive_rat(rng))
            .clone();
        let zeroed = !full_support
            && *orbit_zero
                .entry(j % d_joint)
                .or_insert_with(|| rng.random_bool(0.35));
        weight.insert(format!("x{j}"), if zeroed { rat_zero() } else { base });
    }
    let lambda = MeasureFamily::new(carrier, vec!["u".into()], momentum_fiber(n), weight)
        .expect("translation family");
    if lambda.full_support() {
        Correspondence::build(bispace, alpha, beta, lambda).expect("translation correspondence")
    } else {
        Correspondence::raw(bispace, alpha, beta, lambda).expect("translation correspondence")
    }
}

fn momentum_fiber(n: usize) -> BTreeMap<String, String> {
    (0..n).map(|i| (format!("x{i}"), "u".to_string())).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The subgroup of Z/nZ generated by `step`, as a one-unit groupoid with
/// arrows tagged by their residues.
fn cyclic_subgroup(n: usize, step: usize, prefix: &str) -> (FiniteGroupoid, Vec<(String, usize)>) {
    let mut residues = vec![0usize];
    let mut r = step % n;
    while r != 0 {
        residues.push(r);
        r = (r + step) % n;
    }
    residues.sort();
    residues.dedup();
    let arrow = |r: usize| format!("{prefix}{r}");
    let arrows: Vec<(String, usize)> = residues.iter().map(|r| (arrow(*r), *r)).collect();
    let ids: Vec<String> = arrows.iter().map(|(id, _)| id.clone()).collect();
    let mut compose = BTreeMap::new();
    for x in &residues {
        for y in &residues {
            compose.insert((arrow(*x), arrow(*y)), arrow((x + y) % n));
        }
    }
    let g = FiniteGroupoid::new(
        vec!["u".into()],
        ids.clone(),
        ids.iter().map(|a| (a.clone(), "u".into())).collect(),
        ids.iter().map(|a| (a.clone(), "u".into())).collect(),
        residues.iter().map(|r| (arrow(*r), arrow((n - r) % n))).collect(),
        compose,
        [("u".into(), arrow(0))].into(),
    )
    .expect("cyclic subgroup");
    (g, arrows)
}

/// Mixed stream of random valid correspondences for the properness
/// characterization: alternating space-style (rich left side) and
/// group-style (nontrivial H) samples.
pub fn random_correspondence(rng: &mut StdRng, full_support: bool) -> Correspondence {
    if rng.random_bool(0.5) {
        random_space_correspondence(rng, full_support, 6, 12)
    } else {
        random_group_correspondence(rng, full_support)
    }
}
