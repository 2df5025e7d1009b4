//! The spatial hypergroupoid `K_T(X) = (X ×_{s_X} X)/H`: its *-algebra, its
//! action on the module, the K-valued inner product, the imprimitivity
//! verification, and the constructive transfer that lands the left
//! representation inside it.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use crate::algebra::AlgebraElem;
use crate::correspondence::{Correspondence, CorrespondenceError, ProperCertificate};
use crate::module::{inner, operator_matrix, right_act, ModuleElem};
use crate::numeric::{c64, c64_close, mats_close, rank, CMat, C64};
use crate::rat::{rat_to_f64, rat_zero, Rat};

/// H-orbits of the fiber product under the diagonal action, with
/// deterministic lexicographic-least representatives.
#[derive(Clone, Debug)]
pub struct OrbitSpace {
    pub classes: Vec<String>,
    pub representative: BTreeMap<String, (String, String)>,
    pub members: BTreeMap<String, Vec<(String, String)>>,
    class_of: BTreeMap<(String, String), String>,
}

impl OrbitSpace {
    pub fn class_of(&self, x: &str, y: &str) -> &str {
        &self.class_of[&(x.to_string(), y.to_string())]
    }

    pub fn class_id(rep: &(String, String)) -> String {
        format!("[{}|{}]", rep.0, rep.1)
    }

    /// A second representative when the class has one, for the runtime
    /// representative-independence re-checks.
    pub fn alternate_representative(&self, class: &str) -> Option<&(String, String)> {
        self.members[class].get(1)
    }
}

/// Orbit classes of the diagonal right H-action on `X ×_{s_X} X`, computed
/// by translation closure.
pub fn build_kt(c: &Correspondence) -> OrbitSpace {
    let bispace = &c.bispace;
    let right = bispace.right();
    let h = c.right_groupoid();
    let pairs = bispace.fiber_product();
    let mut class_of: BTreeMap<(String, String), String> = BTreeMap::new();
    let mut members: BTreeMap<String, Vec<(String, String)>> = BTreeMap::new();
    let mut classes = Vec::new();
    let mut seen: std::collections::BTreeSet<(String, String)> = std::collections::BTreeSet::new();
    for pair in &pairs {
        if seen.contains(pair) {
            continue;
        }
        // Orbit of the pair under (x, y)eta = (x eta, y eta).
        let mut orbit = vec![pair.clone()];
        seen.insert(pair.clone());
        let mut queue = vec![pair.clone()];
        while let Some((x, y)) = queue.pop() {
            for eta in h.arrows() {
                let (Some(xe), Some(ye)) = (right.apply(eta, &x), right.apply(eta, &y)) else {
                    continue;
                };
                let next = (xe.to_string(), ye.to_string());
                if seen.insert(next.clone()) {
                    orbit.push(next.clone());
                    queue.push(next);
                }
            }
        }
        orbit.sort();
        let rep = orbit[0].clone();
        let id = OrbitSpace::class_id(&rep);
        for member in &orbit {
            class_of.insert(member.clone(), id.clone());
        }
        members.insert(id.clone(), orbit);
        classes.push(id);
    }
    classes.sort();
    let representative = classes
        .iter()
        .map(|id| (id.clone(), members[id][0].clone()))
        .collect();
    OrbitSpace {
        classes,
        representative,
        members,
        class_of,
    }
}

/// A complex function on the orbit classes.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct HyperElem {
    values: BTreeMap<String, C64>,
}

impl HyperElem {
    pub fn zero() -> Self {
        HyperElem::default()
    }

    pub fn delta(class: &str) -> Self {
        HyperElem {
            values: [(class.to_string(), c64(1.0, 0.0))].into(),
        }
    }

    pub fn value(&self, class: &str) -> C64 {
        self.values.get(class).copied().unwrap_or_else(|| c64(0.0, 0.0))
    }

    pub fn set(&mut self, class: &str, v: C64) {
        if v == c64(0.0, 0.0) {
            self.values.remove(class);
        } else {
            self.values.insert(class.to_string(), v);
        }
    }

    pub fn values(&self) -> &BTreeMap<String, C64> {
        &self.values
    }

    pub fn scaled(&self, s: C64) -> Self {
        HyperElem {
            values: self.values.iter().map(|(k, v)| (k.clone(), v * s)).collect(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.values.values().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

impl Add for &HyperElem {
    type Output = HyperElem;
    fn add(self, other: &HyperElem) -> HyperElem {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let s = out.value(k) + v;
            out.set(k, s);
        }
        out
    }
}

impl Sub for &HyperElem {
    type Output = HyperElem;
    fn sub(self, other: &HyperElem) -> HyperElem {
        let mut out = self.clone();
        for (k, v) in &other.values {
            let s = out.value(k) - v;
            out.set(k, s);
        }
        out
    }
}

impl Neg for &HyperElem {
    type Output = HyperElem;
    fn neg(self) -> HyperElem {
        self.scaled(c64(-1.0, 0.0))
    }
}

/// The hypergroupoid algebra of a correspondence.
pub struct KtAlgebra<'a> {
    pub corr: &'a Correspondence,
    pub orbits: OrbitSpace,
}

impl<'a> KtAlgebra<'a> {
    pub fn new(corr: &'a Correspondence) -> Self {
        KtAlgebra {
            corr,
            orbits: build_kt(corr),
        }
    }

    /// Value of a hyper element at a pair of the fiber product.
    pub fn at_pair(&self, f: &HyperElem, x: &str, y: &str) -> C64 {
        f.value(self.orbits.class_of(x, y))
    }

    fn conv_at(&self, f: &HyperElem, g: &HyperElem, x: &str, z: &str) -> C64 {
        let c = self.corr;
        let mut acc = c64(0.0, 0.0);
        for y in c.carrier() {
            if c.bispace.s_x(y) != c.bispace.s_x(z) {
                continue;
            }
            acc += self.at_pair(f, x, y) * self.at_pair(g, y, z) * rat_to_f64(c.lambda.weight(y));
        }
        acc
    }

    /// `(f*g)[x,z] = sum_y f[x,y] g[y,z] lambda_{s_X(z)}(y)`, evaluated at
    /// the fixed representative and re-checked at one alternate
    /// representative per class.
    pub fn conv(&self, f: &HyperElem, g: &HyperElem) -> HyperElem {
        let mut out = HyperElem::zero();
        for class in &self.orbits.classes {
            let (x, z) = &self.orbits.representative[class];
            let v = self.conv_at(f, g, x, z);
            if let Some((x2, z2)) = self.orbits.alternate_representative(class) {
                let v2 = self.conv_at(f, g, x2, z2);
                assert!(
                    c64_close(v, v2),
                    "convolution not representative-independent at {class}"
                );
            }
            out.set(class, v);
        }
        out
    }

    /// `f*[x,y] = conj f[y,x]`.
    pub fn star(&self, f: &HyperElem) -> HyperElem {
        let mut out = HyperElem::zero();
        for class in &self.orbits.classes {
            let (x, y) = &self.orbits.representative[class];
            let v = self.at_pair(f, y, x).conj();
            if let Some((x2, y2)) = self.orbits.alternate_representative(class) {
                let v2 = self.at_pair(f, y2, x2).conj();
                assert!(
                    c64_close(v, v2),
                    "involution not representative-independent at {class}"
                );
            }
            out.set(class, v);
        }
        out
    }

    /// The averaging map `B(F)[x,y] = sum_eta F(x eta, y eta) beta(eta)`
    /// from functions on the fiber product onto the orbit classes.
    pub fn average(&self, big_f: &BTreeMap<(String, String), C64>) -> HyperElem {
        let c = self.corr;
        let right = c.bispace.right();
        let h = c.right_groupoid();
        let mut out = HyperElem::zero();
        for class in &self.orbits.classes {
            let (x, y) = &self.orbits.representative[class];
            let mut acc = c64(0.0, 0.0);
            for eta in h.arrows_with_rng(c.bispace.s_x(x)) {
                let xe = right.apply_ok(eta, x);
                let ye = right.apply_ok(eta, y);
                if let Some(v) = big_f.get(&(xe.to_string(), ye.to_string())) {
                    acc += v * rat_to_f64(c.right_haar.weight(eta));
                }
            }
            out.set(class, acc);
        }
        out
    }

    /// Rank of the averaging map as a matrix from the pair basis to the
    /// class basis; its surjectivity is the finite form of the density of
    /// the integration map's image.
    pub fn average_rank(&self) -> (usize, usize) {
        let pairs = self.corr.bispace.fiber_product();
        let n = self.orbits.classes.len();
        let mut m = CMat::zeros(n, pairs.len());
        for (j, pair) in pairs.iter().enumerate() {
            let image = self.average(&[(pair.clone(), c64(1.0, 0.0))].into());
            for (i, class) in self.orbits.classes.iter().enumerate() {
                m[(i, j)] = image.value(class);
            }
        }
        (rank(&m, 1e-10), n)
    }

    /// The representation `sigma_{K_T}`:
    /// `(f zeta)(x) = sum_y f[x,y] zeta(y) lambda_{s_X(x)}(y)`.
    pub fn act(&self, f: &HyperElem, zeta: &ModuleElem) -> ModuleElem {
        let c = self.corr;
        let mut out = ModuleElem::zero();
        for x in c.carrier() {
            let mut acc = c64(0.0, 0.0);
            for y in c.carrier() {
                if c.bispace.s_x(y) != c.bispace.s_x(x) {
                    continue;
                }
                acc += self.at_pair(f, x, y) * zeta.value(y) * rat_to_f64(c.lambda.weight(y));
            }
            out.set(x, acc);
        }
        out
    }

    pub fn act_matrix(&self, f: &HyperElem) -> CMat {
        operator_matrix(self.corr.carrier(), |zeta| self.act(f, zeta))
    }

    /// The K-valued inner product
    /// `_K<zeta, xi>[x,y] = sum_eta zeta(x eta) conj xi(y eta) beta(eta)`.
    pub fn k_inner(&self, zeta: &ModuleElem, xi: &ModuleElem) -> HyperElem {
        let c = self.corr;
        let right = c.bispace.right();
        let h = c.right_groupoid();
        let mut out = HyperElem::zero();
        for class in &self.orbits.classes {
            let (x, y) = &self.orbits.representative[class];
            let mut acc = c64(0.0, 0.0);
            for eta in h.arrows_with_rng(c.bispace.s_x(x)) {
                let xe = right.apply_ok(eta, x);
                let ye = right.apply_ok(eta, y);
                acc += zeta.value(xe) * xi.value(ye).conj() * rat_to_f64(c.right_haar.weight(eta));
            }
            out.set(class, acc);
        }
        out
    }
}

/// One failed instance of the imprimitivity identity.
#[derive(Clone, Debug)]
pub struct MoritaMismatch {
    pub zeta: String,
    pub xi: String,
    pub theta: String,
    pub max_diff: f64,
}

/// Outcome of the Morita verification: the identity
/// `_K<zeta, xi>·theta = zeta·<xi, theta>` over all basis triples, plus the
/// span ranks standing in for the two density claims.
#[derive(Clone, Debug)]
pub struct MoritaReport {
    pub triples: usize,
    pub mismatches: Vec<MoritaMismatch>,
    /// Rank of `{<zeta, xi>}` inside the H-algebra, and that algebra's dimension.
    pub h_span: (usize, usize),
    /// Rank of `{_K<zeta, xi>}` inside the hyper-algebra, and its dimension.
    pub k_span: (usize, usize),
}

impl MoritaReport {
    pub fn is_valid(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Verifies the imprimitivity identity on every delta-basis triple and
/// reports the spans of the two inner products.
pub fn verify_imprimitivity(kt: &KtAlgebra<'_>) -> MoritaReport {
    let c = kt.corr;
    let carrier = c.carrier();
    let mut mismatches = Vec::new();
    let mut triples = 0;
    for a in carrier {
        let zeta = ModuleElem::delta(a);
        for b in carrier {
            let xi = ModuleElem::delta(b);
            for d in carrier {
                let theta = ModuleElem::delta(d);
                let lhs = kt.act(&kt.k_inner(&zeta, &xi), &theta);
                let rhs = right_act(c, &zeta, &inner(c, &xi, &theta));
                triples += 1;
                let diff = (&lhs - &rhs).max_abs();
                let scale = 1.0 + lhs.max_abs().max(rhs.max_abs());
                if diff > crate::numeric::MAT_RTOL * scale {
                    mismatches.push(MoritaMismatch {
                        zeta: a.clone(),
                        xi: b.clone(),
                        theta: d.clone(),
                        max_diff: diff,
                    });
                }
            }
        }
    }

    // Span of {<zeta, xi>} in the delta basis of C_c(H).
    let h_arrows = c.right_groupoid().arrows();
    let mut h_mat = CMat::zeros(h_arrows.len(), carrier.len() * carrier.len());
    for (j, (a, b)) in carrier
        .iter()
        .flat_map(|a| carrier.iter().map(move |b| (a, b)))
        .enumerate()
    {
        let ip = inner(c, &ModuleElem::delta(a), &ModuleElem::delta(b));
        for (i, eta) in h_arrows.iter().enumerate() {
            h_mat[(i, j)] = ip.value(eta);
        }
    }
    // Span of {_K<zeta, xi>} in the class basis.
    let classes = &kt.orbits.classes;
    let mut k_mat = CMat::zeros(classes.len(), carrier.len() * carrier.len());
    for (j, (a, b)) in carrier
        .iter()
        .flat_map(|a| carrier.iter().map(move |b| (a, b)))
        .enumerate()
    {
        let ip = kt.k_inner(&ModuleElem::delta(a), &ModuleElem::delta(b));
        for (i, class) in classes.iter().enumerate() {
            k_mat[(i, j)] = ip.value(class);
        }
    }
    MoritaReport {
        triples,
        mismatches,
        h_span: (rank(&h_mat, 1e-10), h_arrows.len()),
        k_span: (rank(&k_mat, 1e-10), classes.len()),
    }
}

/// The constructive transfer of the main theorem: realizes a left algebra
/// element as a hypergroupoid element acting identically on the module.
/// The certificate argument is the properness witness, so an improper
/// correspondence cannot reach this point.
///
/// Discrete choices from the constructive proof: the partitions of unity
/// are the delta functions on arrows and on points, the pre-cutoff is
/// `c ≡ 1` normalized by the orbit mass
/// `cbar(x) = sum_{eta in rng^{-1}(s_X(x))} beta(eta)`, each summand
/// `l_ij = b(gamma_i) Delta^{1/2}(gamma_i, x_j) / cbar(x_j)` is extended to
/// the singleton `{(gamma_i x_j, x_j)}`, multiplied by the certificate
/// function, and averaged over H.
pub fn transfer(
    kt: &KtAlgebra<'_>,
    cert: &ProperCertificate,
    b: &AlgebraElem,
) -> Result<HyperElem, CorrespondenceError> {
    let c = kt.corr;
    let delta = c.delta()?;
    let h = c.right_groupoid();
    let mut cbar: BTreeMap<String, Rat> = BTreeMap::new();
    for x in c.carrier() {
        let mass: Rat = h
            .arrows_with_rng(c.bispace.s_x(x))
            .iter()
            .map(|eta| c.right_haar.weight(eta).clone())
            .sum();
        assert!(mass > rat_zero(), "Haar positivity gives a positive orbit mass");
        cbar.insert(x.clone(), mass);
    }
    let mut total = HyperElem::zero();
    for (gamma, x, gx) in c.bispace.left().table() {
        let coeff = b.value(gamma);
        if coeff == c64(0.0, 0.0) {
            continue;
        }
        let l = coeff * delta.sqrt(gamma, x) / rat_to_f64(&cbar[x]);
        let d = cert.d(gx, x);
        let f_prime: BTreeMap<(String, String), C64> =
            [((gx.to_string(), x.to_string()), l * rat_to_f64(&d))].into();
        total = &total + &kt.average(&f_prime);
    }
    Ok(total)
}

/// Checks the transfer contract `sigma_{K_T}(transfer(b)) = sigma_G(b)` as
/// operator matrices.
pub fn transfer_contract_holds(
    kt: &KtAlgebra<'_>,
    cert: &ProperCertificate,
    b: &AlgebraElem,
) -> Result<bool, CorrespondenceError> {
    let t = transfer(kt, cert, b)?;
    let lhs = kt.act_matrix(&t);
    let rhs = crate::module::left_matrix(kt.corr, b)?;
    Ok(mats_close(&lhs, &rhs))
}
