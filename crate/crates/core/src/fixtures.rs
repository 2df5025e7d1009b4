//! Named fixtures: small groupoids and correspondences used across the test
//! suite and exposed through the CLI fixture generator.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::action::{Action, Side};
use crate::correspondence::{Bispace, Correspondence};
use crate::groupoid::{pair_id, FiniteGroupoid, HaarSystem};
use crate::measure::MeasureFamily;
use crate::rat::{rat_int, rat_one, rat_zero, Rat};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FixtureError {
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("bad parameters for {name}: {reason}")]
    BadParams { name: String, reason: String },
}

/// A named fixture: either a bare groupoid with Haar system or a full
/// correspondence.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Fixture {
    Groupoid {
        name: String,
        groupoid: FiniteGroupoid,
        haar: HaarSystem,
    },
    Correspondence {
        name: String,
        corr: Correspondence,
    },
}

impl Fixture {
    pub fn name(&self) -> &str {
        match self {
            Fixture::Groupoid { name, .. } => name,
            Fixture::Correspondence { name, .. } => name,
        }
    }
}

/// The one-point groupoid.
pub fn pt() -> (FiniteGroupoid, HaarSystem) {
    let g = FiniteGroupoid::new(
        vec!["u".into()],
        vec!["e".into()],
        [("e".into(), "u".into())].into(),
        [("e".into(), "u".into())].into(),
        [("e".into(), "e".into())].into(),
        [(("e".into(), "e".into()), "e".into())].into(),
        [("u".into(), "e".into())].into(),
    )
    .expect("pt");
    let haar = HaarSystem::uniform(&g);
    (g, haar)
}

/// The group Z/2Z with arrows `e, s`.
pub fn z2() -> (FiniteGroupoid, HaarSystem) {
    let compose: BTreeMap<(String, String), String> = [
        (("e".into(), "e".into()), "e".into()),
        (("e".into(), "s".into()), "s".into()),
        (("s".into(), "e".into()), "s".into()),
        (("s".into(), "s".into()), "e".into()),
    ]
    .into();
    let g = FiniteGroupoid::new(
        vec!["u".into()],
        vec!["e".into(), "s".into()],
        [("e".into(), "u".into()), ("s".into(), "u".into())].into(),
        [("e".into(), "u".into()), ("s".into(), "u".into())].into(),
        [("e".into(), "e".into()), ("s".into(), "s".into())].into(),
        compose,
        [("u".into(), "e".into())].into(),
    )
    .expect("z2");
    let haar = HaarSystem::uniform(&g);
    (g, haar)
}

/// The cyclic group Z/nZ with arrows `{prefix}0 .. {prefix}{n-1}`.
pub fn cyclic_group(n: usize, prefix: &str) -> (FiniteGroupoid, HaarSystem) {
    assert!(n >= 1);
    let arrow = |i: usize| format!("{prefix}{}", i % n);
    let arrows: Vec<String> = (0..n).map(arrow).collect();
    let mut compose = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            compose.insert((arrow(i), arrow(j)), arrow(i + j));
        }
    }
    let g = FiniteGroupoid::new(
        vec!["u".into()],
        arrows.clone(),
        arrows.iter().map(|a| (a.clone(), "u".into())).collect(),
        arrows.iter().map(|a| (a.clone(), "u".into())).collect(),
        (0..n).map(|i| (arrow(i), arrow(n - i % n))).collect(),
        compose,
        [("u".into(), arrow(0))].into(),
    )
    .expect("cyclic group");
    let haar = HaarSystem::uniform(&g);
    (g, haar)
}

/// The pair groupoid on the given points; arrows are `(a|b)` with
/// `src = b`, `rng = a`.
pub fn pair_groupoid(points: &[&str]) -> (FiniteGroupoid, HaarSystem) {
    let units: Vec<String> = points.iter().map(|p| p.to_string()).collect();
    let mut arrows = Vec::new();
    let mut src = BTreeMap::new();
    let mut rng = BTreeMap::new();
    let mut inv = BTreeMap::new();
    let mut compose = BTreeMap::new();
    for a in points {
        for b in points {
            let id = pair_id(a, b);
            arrows.push(id.clone());
            src.insert(id.clone(), b.to_string());
            rng.insert(id.clone(), a.to_string());
            inv.insert(id, pair_id(b, a));
        }
    }
    for a in points {
        for b in points {
            for c in points {
                compose.insert((pair_id(a, b), pair_id(b, c)), pair_id(a, c));
            }
        }
    }
    let unit_arrow = points.iter().map(|p| (p.to_string(), pair_id(p, p))).collect();
    let g = FiniteGroupoid::new(units, arrows, src, rng, inv, compose, unit_arrow)
        .expect("pair groupoid");
    let haar = HaarSystem::uniform(&g);
    (g, haar)
}

/// The pair groupoid on `{1, 2}`.
pub fn pair2() -> (FiniteGroupoid, HaarSystem) {
    pair_groupoid(&["1", "2"])
}

/// A finite set viewed as a groupoid: every arrow is a unit arrow, named
/// after its unit.
pub fn space_groupoid(points: &[String]) -> (FiniteGroupoid, HaarSystem) {
    let units: Vec<String> = points.to_vec();
    let idmap: BTreeMap<String, String> =
        points.iter().map(|p| (p.clone(), p.clone())).collect();
    let compose = points
        .iter()
        .map(|p| ((p.clone(), p.clone()), p.clone()))
        .collect();
    let g = FiniteGroupoid::new(
        units.clone(),
        units.clone(),
        idmap.clone(),
        idmap.clone(),
        idmap.clone(),
        compose,
        idmap,
    )
    .expect("space groupoid");
    let haar = HaarSystem::uniform(&g);
    (g, haar)
}

/// The trivial right action of a space groupoid along `s` on a carrier.
fn trivial_right_action(
    space: &FiniteGroupoid,
    carrier: &[String],
    s_map: &BTreeMap<String, String>,
) -> Action {
    let mut act = BTreeMap::new();
    for x in carrier {
        act.insert((s_map[x].clone(), x.clone()), x.clone());
    }
    Action::new(
        Side::Right,
        space.clone(),
        carrier.to_vec(),
        s_map.clone(),
        act,
    )
    .expect("trivial right action")
}

/// The truncated group bundle: fibres `Z/(j+1)Z` over units `n0 .. nk`,
/// arrows `nj:i`.
pub fn gbund(k: usize) -> (FiniteGroupoid, HaarSystem) {
    let units: Vec<String> = (0..=k).map(|j| format!("n{j}")).collect();
    let arrow = |j: usize, i: usize| format!("n{j}:{}", i % (j + 1));
    let mut arrows = Vec::new();
    let mut src = BTreeMap::new();
    let mut rng = BTreeMap::new();
    let mut inv = BTreeMap::new();
    let mut compose = BTreeMap::new();
    let mut unit_arrow = BTreeMap::new();
    for j in 0..=k {
        unit_arrow.insert(format!("n{j}"), arrow(j, 0));
        for i in 0..=j {
            let id = arrow(j, i);
            arrows.push(id.clone());
            src.insert(id.clone(), format!("n{j}"));
            rng.insert(id.clone(), format!("n{j}"));
            inv.insert(id, arrow(j, j + 1 - i));
        }
        for i in 0..=j {
            for i2 in 0..=j {
                compose.insert((arrow(j, i), arrow(j, i2)), arrow(j, i + i2));
            }
        }
    }
    let g = FiniteGroupoid::new(units, arrows, src, rng, inv, compose, unit_arrow)
        .expect("group bundle");
    let haar = HaarSystem::uniform(&g);
    (g, haar)
}

fn constant_momentum(carrier: &[String], unit: &str) -> BTreeMap<String, String> {
    carrier.iter().map(|x| (x.clone(), unit.to_string())).collect()
}

/// SWAP: Z/2Z swapping two points over a trivial right groupoid, with the
/// weights (1, 2) that make the adjoining function nontrivial.
pub fn swap() -> Correspondence {
    swap_with_weights(rat_one(), rat_int(2))
}

/// SWAP with a zero atom at `x1`; the canonical improper fixture.
pub fn zeroatom() -> Correspondence {
    swap_with_weights(rat_one(), rat_zero())
}

fn swap_with_weights(w0: Rat, w1: Rat) -> Correspondence {
    let (g, alpha) = z2();
    let carrier: Vec<String> = vec!["x0".into(), "x1".into()];
    let left_act: BTreeMap<(String, String), String> = [
        (("e".into(), "x0".into()), "x0".into()),
        (("e".into(), "x1".into()), "x1".into()),
        (("s".into(), "x0".into()), "x1".into()),
        (("s".into(), "x1".into()), "x0".into()),
    ]
    .into();
    let left = Action::new(
        Side::Left,
        g,
        carrier.clone(),
        constant_momentum(&carrier, "u"),
        left_act,
    )
    .expect("swap left action");
    let (h, beta) = space_groupoid(&["pt".to_string()]);
    let s_map = constant_momentum(&carrier, "pt");
    let right = trivial_right_action(&h, &carrier, &s_map);
    let bispace = Bispace::new(left, right).expect("swap bispace");
    let lambda = MeasureFamily::new(
        carrier,
        vec!["pt".into()],
        s_map,
        [("x0".into(), w0), ("x1".into(), w1)].into(),
    )
    .expect("swap family");
    match Correspondence::build(bispace.clone(), alpha.clone(), beta.clone(), lambda.clone()) {
        Ok(c) => c,
        // The zero-atom variant is not quasi-invariant, so it cannot carry
        // an adjoining function; ship it raw for the properness checker.
        Err(_) => Correspondence::raw(bispace, alpha, beta, lambda).expect("swap raw"),
    }
}

/// ZCIRC(n): Z/2Z negating Z/nZ, over the trivial groupoid on the orbit
/// space, with the counting family. The faithful finite analogue of the
/// circle example.
pub fn zcirc(n: usize) -> Correspondence {
    assert!(n >= 1);
    let (g, alpha) = z2();
    let carrier: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut left_act = BTreeMap::new();
    for i in 0..n {
        left_act.insert((String::from("e"), format!("x{i}")), format!("x{i}"));
        left_act.insert((String::from("s"), format!("x{i}")), format!("x{}", (n - i) % n));
    }
    let left = Action::new(
        Side::Left,
        g,
        carrier.clone(),
        constant_momentum(&carrier, "u"),
        left_act,
    )
    .expect("zcirc left action");
    let orbit_map = left.orbit_map();
    let mut orbit_ids: Vec<String> = orbit_map.values().cloned().collect();
    orbit_ids.sort();
    orbit_ids.dedup();
    let (h, beta) = space_groupoid(&orbit_ids);
    let right = trivial_right_action(&h, &carrier, &orbit_map);
    let bispace = Bispace::new(left, right).expect("zcirc bispace");
    let lambda = MeasureFamily::counting(carrier, orbit_ids, orbit_map).expect("zcirc family");
    Correspondence::build(bispace, alpha, beta, lambda).expect("zcirc")
}

/// SUBGRP(n, m): the group Z/nZ as a bispace over itself on the left and
/// the subgroup generated by `m` on the right, with the counting family
/// that the uniform Haar weights induce.
pub fn subgrp(n: usize, m: usize) -> Correspondence {
    assert!(n >= 1);
    let (g, alpha) = cyclic_group(n, "g");
    // Residues of the subgroup generated by m.
    let mut residues = vec![0usize];
    if !m.is_multiple_of(n) {
        let mut r = m % n;
        while r != 0 {
            residues.push(r);
            r = (r + m) % n;
        }
        residues.sort();
    }
    let harrow = |r: usize| format!("h{r}");
    let h_arrows: Vec<String> = residues.iter().map(|r| harrow(*r)).collect();
    let mut h_compose = BTreeMap::new();
    for a in &residues {
        for b in &residues {
            h_compose.insert((harrow(*a), harrow(*b)), harrow((a + b) % n));
        }
    }
    let h = FiniteGroupoid::new(
        vec!["v".into()],
        h_arrows.clone(),
        h_arrows.iter().map(|a| (a.clone(), "v".into())).collect(),
        h_arrows.iter().map(|a| (a.clone(), "v".into())).collect(),
        residues.iter().map(|r| (harrow(*r), harrow((n - r) % n))).collect(),
        h_compose,
        [("v".into(), harrow(0))].into(),
    )
    .expect("subgroup");
    let beta = HaarSystem::uniform(&h);
    let carrier: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut left_act = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            left_act.insert((format!("g{i}"), format!("x{j}")), format!("x{}", (i + j) % n));
        }
    }
    let left = Action::new(
        Side::Left,
        g,
        carrier.clone(),
        constant_momentum(&carrier, "u"),
        left_act,
    )
    .expect("subgrp left action");
    let mut right_act = BTreeMap::new();
    for r in &residues {
        for j in 0..n {
            right_act.insert((harrow(*r), format!("x{j}")), format!("x{}", (j + r) % n));
        }
    }
    let right = Action::new(
        Side::Right,
        h,
        carrier.clone(),
        constant_momentum(&carrier, "v"),
        right_act,
    )
    .expect("subgrp right action");
    let bispace = Bispace::new(left, right).expect("subgrp bispace");
    let lambda = MeasureFamily::counting(
        carrier.clone(),
        vec!["v".into()],
        constant_momentum(&carrier, "v"),
    )
    .expect("subgrp family");
    Correspondence::build(bispace, alpha, beta, lambda).expect("subgrp")
}

/// MODH: `X = H = Z/2Z` acting on itself on both sides.
pub fn modh() -> Correspondence {
    let (g, alpha) = z2();
    let (h, beta) = z2();
    let carrier: Vec<String> = vec!["e".into(), "s".into()];
    let mult = |a: &str, b: &str| -> String {
        if a == b {
            "e".into()
        } else {
            "s".into()
        }
    };
    let mut left_act = BTreeMap::new();
    let mut right_act = BTreeMap::new();
    for a in ["e", "s"] {
        for x in ["e", "s"] {
            left_act.insert((a.to_string(), x.to_string()), mult(a, x));
            right_act.insert((a.to_string(), x.to_string()), mult(x, a));
        }
    }
    let left = Action::new(
        Side::Left,
        g,
        carrier.clone(),
        constant_momentum(&carrier, "u"),
        left_act,
    )
    .expect("modh left action");
    let right = Action::new(
        Side::Right,
        h,
        carrier.clone(),
        constant_momentum(&carrier, "u"),
        right_act,
    )
    .expect("modh right action");
    let bispace = Bispace::new(left, right).expect("modh bispace");
    let lambda = MeasureFamily::counting(
        carrier.clone(),
        vec!["u".into()],
        constant_momentum(&carrier, "u"),
    )
    .expect("modh family");
    Correspondence::build(bispace, alpha, beta, lambda).expect("modh")
}

/// TRANSV(n, k): the transversal correspondence from the restriction of the
/// pair groupoid on `n` points to `k` units, acting on the arrows with
/// range in the restriction, to the ambient pair groupoid.
pub fn transv(n: usize, k: usize) -> Correspondence {
    assert!(1 <= k && k <= n);
    let points: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let refs: Vec<&str> = points.iter().map(|s| s.as_str()).collect();
    let (g, alpha) = pair_groupoid(&refs);
    let sub: Vec<&str> = refs[..k].to_vec();
    let (h, beta) = pair_groupoid(&sub);
    // Carrier: arrows of G with range in the units of H.
    let mut carrier = Vec::new();
    let mut r_map = BTreeMap::new();
    let mut s_map = BTreeMap::new();
    for b in &sub {
        for c in &refs {
            let x = pair_id(b, c);
            carrier.push(x.clone());
            r_map.insert(x.clone(), b.to_string());
            s_map.insert(x, c.to_string());
        }
    }
    // Left H-action and right G-action, both by multiplication.
    let mut left_act = BTreeMap::new();
    for a in &sub {
        for b in &sub {
            for c in &refs {
                left_act.insert((pair_id(a, b), pair_id(b, c)), pair_id(a, c));
            }
        }
    }
    let mut right_act = BTreeMap::new();
    for b in &sub {
        for c in &refs {
            for d in &refs {
                right_act.insert((pair_id(c, d), pair_id(b, c)), pair_id(b, d));
            }
        }
    }
    let left = Action::new(Side::Left, h, carrier.clone(), r_map, left_act)
        .expect("transv left action");
    let right = Action::new(Side::Right, g, carrier.clone(), s_map.clone(), right_act)
        .expect("transv right action");
    let bispace = Bispace::new(left, right).expect("transv bispace");
    let lambda = MeasureFamily::counting(carrier, points, s_map).expect("transv family");
    Correspondence::build(bispace, beta, alpha, lambda).expect("transv")
}

/// QUIV: a quiver of finite spaces `Y <-b- X -f-> Z` with the counting
/// family along `f`.
pub fn quiv() -> Correspondence {
    let y: Vec<String> = vec!["y0".into(), "y1".into()];
    let z: Vec<String> = vec!["z0".into(), "z1".into()];
    let carrier: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
    let b_map: BTreeMap<String, String> = [
        ("a".into(), "y0".into()),
        ("b".into(), "y1".into()),
        ("c".into(), "y1".into()),
    ]
    .into();
    let f_map: BTreeMap<String, String> = [
        ("a".into(), "z0".into()),
        ("b".into(), "z0".into()),
        ("c".into(), "z1".into()),
    ]
    .into();
    let (gy, alpha) = space_groupoid(&y);
    let (gz, beta) = space_groupoid(&z);
    let mut left_act = BTreeMap::new();
    for x in &carrier {
        left_act.insert((b_map[x].clone(), x.clone()), x.clone());
    }
    let left = Action::new(Side::Left, gy, carrier.clone(), b_map, left_act)
        .expect("quiv left action");
    let right = trivial_right_action(&gz, &carrier, &f_map);
    let bispace = Bispace::new(left, right).expect("quiv bispace");
    let lambda = MeasureFamily::counting(carrier, z, f_map).expect("quiv family");
    Correspondence::build(bispace, alpha, beta, lambda).expect("quiv")
}

/// Parses names like `SWAP`, `ZCIRC(4)`, `SUBGRP(Z4,2Z4)`, `TRANSV(3,2)`.
pub fn generate(name: &str) -> Result<Fixture, FixtureError> {
    let name = name.trim();
    let (base, args) = match name.split_once('(') {
        None => (name, Vec::new()),
        Some((base, rest)) => {
            let inner = rest.strip_suffix(')').ok_or_else(|| FixtureError::BadParams {
                name: name.to_string(),
                reason: "unbalanced parentheses".into(),
            })?;
            (
                base,
                inner
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect::<Vec<_>>(),
            )
        }
    };
    let base_upper = base.to_ascii_uppercase();
    let numeric = |arg: &str| -> Result<usize, FixtureError> {
        parse_group_size(arg).ok_or_else(|| FixtureError::BadParams {
            name: name.to_string(),
            reason: format!("cannot read {arg:?} as a size"),
        })
    };
    let expect_args = |want: usize| -> Result<(), FixtureError> {
        if args.len() != want {
            return Err(FixtureError::BadParams {
                name: name.to_string(),
                reason: format!("expected {want} parameter(s), got {}", args.len()),
            });
        }
        Ok(())
    };
    let fixture = match base_upper.as_str() {
        "PT" => {
            expect_args(0)?;
            let (groupoid, haar) = pt();
            Fixture::Groupoid {
                name: "PT".into(),
                groupoid,
                haar,
            }
        }
        "Z2" => {
            expect_args(0)?;
            let (groupoid, haar) = z2();
            Fixture::Groupoid {
                name: "Z2".into(),
                groupoid,
                haar,
            }
        }
        "PAIR2" => {
            expect_args(0)?;
            let (groupoid, haar) = pair2();
            Fixture::Groupoid {
                name: "PAIR2".into(),
                groupoid,
                haar,
            }
        }
        "GBUND" => {
            expect_args(1)?;
            let k = numeric(&args[0])?;
            let (groupoid, haar) = gbund(k);
            Fixture::Groupoid {
                name: format!("GBUND({k})"),
                groupoid,
                haar,
            }
        }
        "SWAP" => {
            expect_args(0)?;
            Fixture::Correspondence {
                name: "SWAP".into(),
                corr: swap(),
            }
        }
        "ZEROATOM" => {
            expect_args(0)?;
            Fixture::Correspondence {
                name: "ZEROATOM".into(),
                corr: zeroatom(),
            }
        }
        "MODH" => {
            expect_args(0)?;
            Fixture::Correspondence {
                name: "MODH".into(),
                corr: modh(),
            }
        }
        "QUIV" => {
            expect_args(0)?;
            Fixture::Correspondence {
                name: "QUIV".into(),
                corr: quiv(),
            }
        }
        "ZCIRC" => {
            expect_args(1)?;
            let n = numeric(&args[0])?;
            if n == 0 {
                return Err(FixtureError::BadParams {
                    name: name.to_string(),
                    reason: "n must be positive".into(),
                });
            }
            Fixture::Correspondence {
                name: format!("ZCIRC({n})"),
                corr: zcirc(n),
            }
        }
        "SUBGRP" => {
            expect_args(2)?;
            let n = numeric(&args[0])?;
            let m = parse_subgroup_generator(&args[1]).ok_or_else(|| FixtureError::BadParams {
                name: name.to_string(),
                reason: format!("cannot read {:?} as a subgroup", args[1]),
            })?;
            if n == 0 {
                return Err(FixtureError::BadParams {
                    name: name.to_string(),
                    reason: "n must be positive".into(),
                });
            }
            Fixture::Correspondence {
                name: format!("SUBGRP(Z{n},{m}Z{n})"),
                corr: subgrp(n, m),
            }
        }
        "TRANSV" => {
            let (n, k) = match args.len() {
                0 => (3, 2),
                2 => (numeric(&args[0])?, numeric(&args[1])?),
                _ => {
                    return Err(FixtureError::BadParams {
                        name: name.to_string(),
                        reason: "expected TRANSV or TRANSV(n,k)".into(),
                    })
                }
            };
            if k == 0 || k > n {
                return Err(FixtureError::BadParams {
                    name: name.to_string(),
                    reason: "need 1 <= k <= n".into(),
                });
            }
            Fixture::Correspondence {
                name: format!("TRANSV({n},{k})"),
                corr: transv(n, k),
            }
        }
        _ => return Err(FixtureError::UnknownFixture(name.to_string())),
    };
    Ok(fixture)
}

/// Reads "4" or "Z4" as 4.
fn parse_group_size(arg: &str) -> Option<usize> {
    let arg = arg.trim();
    let stripped = arg.strip_prefix('Z').or_else(|| arg.strip_prefix('z')).unwrap_or(arg);
    stripped.parse::<usize>().ok()
}

/// Reads "2Z4" or "2" as the generator 2; "trivial" as 0.
fn parse_subgroup_generator(arg: &str) -> Option<usize> {
    let arg = arg.trim();
    if arg.eq_ignore_ascii_case("trivial") {
        return Some(0);
    }
    let head: String = arg.chars().take_while(|c| c.is_ascii_digit()).collect();
    if head.is_empty() {
        // "Z4" alone denotes the whole group, generator 1.
        if arg.starts_with('Z') || arg.starts_with('z') {
            return Some(1);
        }
        return None;
    }
    head.parse::<usize>().ok()
}

/// The correspondence fixtures carrying an adjoining function, used by the
/// fixture-wide checks.
pub fn proper_fixture_names() -> Vec<&'static str> {
    vec![
        "SUBGRP(Z4,2Z4)",
        "SWAP",
        "ZCIRC(4)",
        "ZCIRC(5)",
        "MODH",
        "TRANSV",
        "QUIV",
    ]
}

/// The fixtures named by the finite main-theorem check.
pub fn main_theorem_fixture_names() -> Vec<&'static str> {
    vec!["SUBGRP(Z4,2Z4)", "SWAP", "ZCIRC(4)", "ZCIRC(5)", "MODH", "TRANSV"]
}

fn correspondences_by_name(names: Vec<&'static str>) -> Vec<(String, Correspondence)> {
    names
        .into_iter()
        .map(|name| match generate(name).expect("fixture") {
            Fixture::Correspondence { name, corr } => (name, corr),
            Fixture::Groupoid { .. } => unreachable!("all entries are correspondences"),
        })
        .collect()
}

pub fn proper_fixtures() -> Vec<(String, Correspondence)> {
    correspondences_by_name(proper_fixture_names())
}

pub fn main_theorem_fixtures() -> Vec<(String, Correspondence)> {
    correspondences_by_name(main_theorem_fixture_names())
}
