//! Chains of cycles: torsion profiles, discrete realizations, and the
//! representing-divisor normal form.
//!
//! A chain of cycles of genus `g` is a row of `g` cycles glued by bridges.
//! For rank computations the only data that matters is the torsion profile
//! `(m_2, ..., m_g)`: on each interior cycle, `m_i` is the order of the
//! difference of the two bridge points in the cycle's Jacobian, with `0`
//! standing for infinite order. Discrete chains pin the picture down to an
//! actual multigraph by giving each cycle a size and an attachment vertex.

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;
use crate::oracle::{dhar_reduce, FiniteGraph, VertexDivisor};

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// Inverse of a mod m for m >= 1, when gcd(a, m) = 1.
pub(crate) fn mod_inverse(a: i64, m: i64) -> Option<i64> {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 == 1 {
        Some(s0.rem_euclid(m))
    } else {
        None
    }
}

/// Torsion data of a metric chain of cycles: the genus together with the
/// sequence `(m_2, ..., m_g)`. `m_i = 0` encodes infinite torsion, and a
/// congruence mod 0 means integer equality.
///
/// The first cycle carries no profile entry. The only congruence a tableau
/// ever imposes there is `xi_1 = 0` (the cell `(1,1)` holding value 1), so
/// positions on cycle 1 are compared exactly, with class 0 denoting the
/// bridge point `w_1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionProfile {
    genus: usize,
    torsions: Vec<u32>,
}

impl TorsionProfile {
    pub fn new(genus: usize, torsions: Vec<u32>) -> Result<Self, Error> {
        if genus == 0 {
            return Err(Error::constraint("genus >= 1 violated"));
        }
        if torsions.len() != genus - 1 {
            return Err(Error::constraint(format!(
                "torsion count = genus - 1 violated ({} torsions for genus {genus})",
                torsions.len()
            )));
        }
        Ok(TorsionProfile { genus, torsions })
    }

    /// Profile with the same torsion on every cycle; `uniform(g, 2)` is the
    /// hyperelliptic one.
    pub fn uniform(genus: usize, m: u32) -> Self {
        TorsionProfile::new(genus, vec![m; genus.saturating_sub(1)])
            .expect("uniform profile is always well formed")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn torsions(&self) -> &[u32] {
        &self.torsions
    }

    /// Torsion used in congruence tests for cycle `i` (1-based). Cycle 1 has
    /// no entry and compares exactly, which the mod-0 convention encodes.
    pub fn torsion(&self, i: usize) -> u32 {
        assert!((1..=self.genus).contains(&i), "cycle index out of range");
        if i == 1 {
            0
        } else {
            self.torsions[i - 2]
        }
    }
}

impl Serialize for TorsionProfile {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ProfileRepr {
            genus: self.genus,
            torsions: self.torsions.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TorsionProfile {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ProfileRepr::deserialize(deserializer)?;
        TorsionProfile::new(repr.genus, repr.torsions).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileRepr {
    genus: usize,
    torsions: Vec<u32>,
}

/// Which variant of "general" a Martens-special profile uses for its
/// exceptional cycles: torsion 0 on a metric chain, torsion `g + 1` on a
/// discrete one (any value above `g` behaves identically).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    MetricGeneral,
    Discrete,
}

/// A Martens-special chain of type `k`: torsion 2 everywhere except at the
/// positions `j_1 < ... < j_k`, which must satisfy `3 <= j_1`, gaps of at
/// least 2, and `j_k <= g - 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MartensSpec {
    genus: usize,
    positions: Vec<usize>,
}

impl MartensSpec {
    pub fn new(genus: usize, positions: Vec<usize>) -> Result<Self, Error> {
        if positions.is_empty() {
            return Err(Error::constraint("k >= 1 violated (no positions)"));
        }
        if positions[0] < 3 {
            return Err(Error::constraint(format!(
                "3 <= j_1 violated (j_1 = {})",
                positions[0]
            )));
        }
        for w in positions.windows(2) {
            if w[1] < w[0] + 2 {
                return Err(Error::constraint(format!(
                    "j_(i+1) - j_i >= 2 violated ({} follows {})",
                    w[1], w[0]
                )));
            }
        }
        let last = *positions.last().unwrap();
        if last + 2 > genus {
            return Err(Error::constraint(format!(
                "j_k <= g - 2 violated (j_k = {last}, g = {genus})"
            )));
        }
        Ok(MartensSpec { genus, positions })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// The type `k`, the number of exceptional positions.
    pub fn k(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn profile(&self, kind: ProfileKind) -> TorsionProfile {
        martens_special_profile(self, kind)
    }
}

/// Torsion profile of a Martens-special chain: 2 on every cycle except the
/// spec's positions, which get 0 (metric-general) or `g + 1` (discrete).
pub fn martens_special_profile(spec: &MartensSpec, kind: ProfileKind) -> TorsionProfile {
    let g = spec.genus();
    let mut torsions = vec![2u32; g - 1];
    let exceptional = match kind {
        ProfileKind::MetricGeneral => 0,
        ProfileKind::Discrete => (g + 1) as u32,
    };
    for &j in spec.positions() {
        torsions[j - 2] = exceptional;
    }
    TorsionProfile::new(g, torsions).expect("spec invariants give a well formed profile")
}

/// One cycle of a discrete chain: `size` vertices `v_1, ..., v_size` on a
/// ring, with the bridge to the next cycle leaving from vertex `attach`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSpec {
    pub size: usize,
    pub attach: usize,
}

/// Discrete chain of cycles: `g` rings joined by bridges from each ring's
/// attachment vertex to the next ring's vertex 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteChain {
    cycles: Vec<CycleSpec>,
}

impl DiscreteChain {
    pub fn new(cycles: Vec<CycleSpec>) -> Result<Self, Error> {
        if cycles.is_empty() {
            return Err(Error::constraint("genus >= 1 violated (no cycles)"));
        }
        for (idx, c) in cycles.iter().enumerate() {
            if c.size < 2 {
                return Err(Error::constraint(format!(
                    "k_i >= 2 violated (cycle {} has size {})",
                    idx + 1,
                    c.size
                )));
            }
            if c.attach < 2 || c.attach > c.size {
                return Err(Error::constraint(format!(
                    "2 <= j_i <= k_i violated (cycle {} has attach {}, size {})",
                    idx + 1,
                    c.attach,
                    c.size
                )));
            }
        }
        Ok(DiscreteChain { cycles })
    }

    pub fn genus(&self) -> usize {
        self.cycles.len()
    }

    pub fn cycles(&self) -> &[CycleSpec] {
        &self.cycles
    }

    /// Size `k_i` of cycle `i` (1-based).
    pub fn size(&self, i: usize) -> usize {
        self.cycles[i - 1].size
    }

    /// Attachment index `j_i` of cycle `i` (1-based).
    pub fn attach(&self, i: usize) -> usize {
        self.cycles[i - 1].attach
    }

    pub fn vertex_count(&self) -> usize {
        self.cycles.iter().map(|c| c.size).sum()
    }

    fn offset(&self, i: usize) -> usize {
        self.cycles[..i - 1].iter().map(|c| c.size).sum()
    }

    /// Global 0-based index of vertex `v_{i,j}` (both arguments 1-based).
    pub fn vertex_index(&self, i: usize, j: usize) -> usize {
        assert!((1..=self.genus()).contains(&i), "cycle index out of range");
        assert!((1..=self.size(i)).contains(&j), "vertex index out of range");
        self.offset(i) + (j - 1)
    }

    /// The bridge point `v_{i,1}` where cycle `i` receives its left bridge.
    pub fn entry(&self, i: usize) -> usize {
        self.vertex_index(i, 1)
    }

    /// The bridge point `v_{i,j_i}` where cycle `i` sends its right bridge;
    /// on the last cycle this is the marked point carrying the tail.
    pub fn exit(&self, i: usize) -> usize {
        self.vertex_index(i, self.attach(i))
    }

    /// The underlying multigraph: each ring contributes `k_i` edges (two
    /// parallel ones when `k_i = 2`) plus one bridge per adjacent pair.
    pub fn graph(&self) -> FiniteGraph {
        let mut edges = Vec::new();
        for (idx, c) in self.cycles.iter().enumerate() {
            let base = self.offset(idx + 1);
            for j in 0..c.size {
                edges.push((base + j, base + (j + 1) % c.size));
            }
        }
        for i in 1..self.genus() {
            edges.push((self.exit(i), self.entry(i + 1)));
        }
        FiniteGraph::new(self.vertex_count(), edges)
            .expect("chain construction yields a connected loopless multigraph")
    }

    /// Order of `v_{i,j_i} - v_{i,1}` in the Jacobian of ring `i`, which is
    /// the smallest positive `m` with `m (j_i - 1)` divisible by `k_i`.
    pub fn cycle_torsion(&self, i: usize) -> u32 {
        let k = self.size(i) as u64;
        let a = (self.attach(i) - 1) as u64;
        (k / gcd(k, a)) as u32
    }
}

impl Serialize for DiscreteChain {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ChainRepr {
            cycles: self.cycles.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiscreteChain {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = ChainRepr::deserialize(deserializer)?;
        DiscreteChain::new(repr.cycles).map_err(D::Error::custom)
    }
}

#[derive(Serialize, Deserialize)]
struct ChainRepr {
    cycles: Vec<CycleSpec>,
}

/// Torsion profile `(m_2, ..., m_g)` of a discrete chain.
pub fn torsion_of_discrete(chain: &DiscreteChain) -> TorsionProfile {
    let g = chain.genus();
    let torsions = (2..=g).map(|i| chain.cycle_torsion(i)).collect();
    TorsionProfile::new(g, torsions).expect("one torsion per cycle past the first")
}

/// Smallest discrete chain with the given profile: ring sizes `k_i = m_i`
/// and every attachment at vertex 2, with the unconstrained first ring fixed
/// to a 2-cycle. Profiles containing 0 or 1 are not realizable.
pub fn realize_discrete_chain(profile: &TorsionProfile) -> Result<DiscreteChain, Error> {
    let mut cycles = vec![CycleSpec { size: 2, attach: 2 }];
    for (idx, &m) in profile.torsions().iter().enumerate() {
        if m < 2 {
            return Err(Error::Unrealizable(format!(
                "m_{} = {m} (a discrete chain needs every torsion >= 2)",
                idx + 2
            )));
        }
        cycles.push(CycleSpec {
            size: m as usize,
            attach: 2,
        });
    }
    DiscreteChain::new(cycles)
}

/// The vertex `<xi>_i`: the unique `j` in `1..=k_i` with
/// `(j_i - 1) xi + j_i = j  (mod k_i)`. In particular `<0>_i = v_{i,j_i}`
/// and `<-1>_i = v_{i,1}`.
pub fn vertex_of_class(chain: &DiscreteChain, i: usize, xi: i64) -> usize {
    let k = chain.size(i) as i64;
    let a = (chain.attach(i) - 1) as i64;
    (a * xi + a).rem_euclid(k) as usize + 1
}

/// Location of a point on one cycle of a metric chain: either a torsion
/// class relative to the bridge points, or a point in general position.
///
/// For a cycle with torsion `m > 0` classes are stored reduced into
/// `0..m`; for `m = 0` the integer is exact. `Generic` satisfies no
/// congruence, which also covers non-integer points on discrete chains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointPosition {
    Generic,
    IntegerClass(i64),
}

impl Serialize for PointPosition {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            PointPosition::Generic => serializer.serialize_str("generic"),
            PointPosition::IntegerClass(c) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("class", c)?;
                map.end()
            }
        }
    }
}

impl<'de> Deserialize<'de> for PointPosition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Tag(String),
            Class { class: i64 },
        }
        match Repr::deserialize(deserializer)? {
            Repr::Tag(s) if s == "generic" => Ok(PointPosition::Generic),
            Repr::Tag(s) => Err(D::Error::custom(format!(
                "unknown position tag {s:?}, expected \"generic\""
            ))),
            Repr::Class { class } => Ok(PointPosition::IntegerClass(class)),
        }
    }
}

/// Normal form of a divisor class on a chain: one point per cycle plus a
/// tail of `degree - genus` at the last cycle's marked point `w_g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentingDivisor {
    degree: i64,
    positions: Vec<PointPosition>,
    tail: i64,
}

impl RepresentingDivisor {
    pub fn new(degree: i64, positions: Vec<PointPosition>) -> Self {
        let tail = degree - positions.len() as i64;
        RepresentingDivisor {
            degree,
            positions,
            tail,
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn genus(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[PointPosition] {
        &self.positions
    }

    /// Position of the point on cycle `i` (1-based).
    pub fn position(&self, i: usize) -> PointPosition {
        self.positions[i - 1]
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }
}

impl Serialize for RepresentingDivisor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RepresentingRepr {
            degree: self.degree,
            positions: self.positions.clone(),
            tail: self.tail,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RepresentingDivisor {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = RepresentingRepr::deserialize(deserializer)?;
        let expected = repr.degree - repr.positions.len() as i64;
        if repr.tail != expected {
            return Err(D::Error::custom(format!(
                "tail = degree - genus violated (tail {}, expected {expected})",
                repr.tail
            )));
        }
        Ok(RepresentingDivisor {
            degree: repr.degree,
            positions: repr.positions,
            tail: repr.tail,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct RepresentingRepr {
    degree: i64,
    positions: Vec<PointPosition>,
    tail: i64,
}

/// Divisor on a discrete chain in cycle coordinates, the JSON-facing form.
/// Entries may repeat a vertex; multiplicities add up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDivisor {
    pub entries: Vec<ChainDivisorEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDivisorEntry {
    pub cycle: usize,
    pub vertex: usize,
    pub mult: i64,
}

impl ChainDivisor {
    pub fn to_vertex_divisor(&self, chain: &DiscreteChain) -> Result<VertexDivisor, Error> {
        let mut coeffs = vec![0i64; chain.vertex_count()];
        for e in &self.entries {
            if e.cycle < 1 || e.cycle > chain.genus() {
                return Err(Error::constraint(format!(
                    "cycle {} out of range 1..={}",
                    e.cycle,
                    chain.genus()
                )));
            }
            if e.vertex < 1 || e.vertex > chain.size(e.cycle) {
                return Err(Error::constraint(format!(
                    "vertex {} out of range 1..={} on cycle {}",
                    e.vertex,
                    chain.size(e.cycle),
                    e.cycle
                )));
            }
            coeffs[chain.vertex_index(e.cycle, e.vertex)] += e.mult;
        }
        Ok(VertexDivisor::new(coeffs))
    }

    pub fn from_vertex_divisor(chain: &DiscreteChain, divisor: &VertexDivisor) -> Self {
        let mut entries = Vec::new();
        for i in 1..=chain.genus() {
            for j in 1..=chain.size(i) {
                let mult = divisor.coeffs()[chain.vertex_index(i, j)];
                if mult != 0 {
                    entries.push(ChainDivisorEntry {
                        cycle: i,
                        vertex: j,
                        mult,
                    });
                }
            }
        }
        ChainDivisor { entries }
    }
}

/// Vertex form of a divisor class on a discrete chain: the unique equivalent
/// divisor `v_{1,j'_1} + ... + v_{g,j'_g} + (d - g) v_{g,j_g}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub degree: i64,
    /// `j'_i` per cycle, 1-based.
    pub vertices: Vec<usize>,
}

impl NormalForm {
    pub fn to_divisor(&self, chain: &DiscreteChain) -> VertexDivisor {
        let mut coeffs = vec![0i64; chain.vertex_count()];
        for (idx, &j) in self.vertices.iter().enumerate() {
            coeffs[chain.vertex_index(idx + 1, j)] += 1;
        }
        coeffs[chain.exit(chain.genus())] += self.degree - chain.genus() as i64;
        VertexDivisor::new(coeffs)
    }

    /// Class coordinates of the normal form. A vertex that is not an
    /// integer class (possible only when `gcd(j_i - 1, k_i) > 1`) maps to
    /// `Generic`, since such a point satisfies no integer congruence.
    pub fn to_representing(&self, chain: &DiscreteChain) -> RepresentingDivisor {
        let positions = self
            .vertices
            .iter()
            .enumerate()
            .map(|(idx, &j)| {
                let i = idx + 1;
                let k = chain.size(i) as i64;
                let a = (chain.attach(i) - 1) as i64;
                let target = (j as i64 - chain.attach(i) as i64).rem_euclid(k);
                let e = gcd(a as u64, k as u64) as i64;
                if target % e != 0 {
                    return PointPosition::Generic;
                }
                let m = k / e;
                let inv = mod_inverse(a / e, m).expect("a/e and k/e are coprime");
                PointPosition::IntegerClass((target / e * inv).rem_euclid(m))
            })
            .collect();
        RepresentingDivisor::new(self.degree, positions)
    }
}

/// The unique normal form equivalent to `divisor`, by the constructive
/// argument: step functions push each ring's surplus across the bridges
/// until every ring holds degree 1 (the tail at `w_g` absorbs `d - g`), then
/// each ring's configuration reduces to a single chip.
///
/// Ring-local firings extend to the whole chain by continuing the firing
/// function as a constant to the left and zero to the right, so every move
/// is an equivalence on the chain itself.
pub fn normal_form_discrete(chain: &DiscreteChain, divisor: &VertexDivisor) -> NormalForm {
    let g = chain.genus();
    assert_eq!(
        divisor.coeffs().len(),
        chain.vertex_count(),
        "divisor length mismatch"
    );
    let degree = divisor.degree();
    let mut c = divisor.coeffs().to_vec();

    for i in 1..g {
        let base = chain.entry(i);
        let surplus: i64 = c[base..base + chain.size(i)].iter().sum::<i64>() - 1;
        c[chain.exit(i)] -= surplus;
        c[chain.entry(i + 1)] += surplus;
    }
    c[chain.exit(g)] -= degree - g as i64;

    let vertices = (1..=g)
        .map(|i| {
            let base = chain.entry(i);
            let local = VertexDivisor::new(c[base..base + chain.size(i)].to_vec());
            let ring = FiniteGraph::cycle(chain.size(i));
            let reduced = dhar_reduce(&ring, &local, chain.attach(i) - 1);
            // a degree-1 reduced divisor on a ring is a single chip
            let j = reduced
                .coeffs()
                .iter()
                .position(|&x| x == 1)
                .expect("degree-1 reduced form on a ring is one chip");
            debug_assert!(reduced.coeffs().iter().all(|&x| x == 0 || x == 1));
            j + 1
        })
        .collect();

    NormalForm { degree, vertices }
}

/// Class coordinates of any divisor on a discrete chain: the normal form's
/// positions, the degree, and the tail `d - g`.
pub fn representing_divisor_discrete(
    chain: &DiscreteChain,
    divisor: &VertexDivisor,
) -> RepresentingDivisor {
    normal_form_discrete(chain, divisor).to_representing(chain)
}
