//! Clifford gates, layers, and circuits; tableau-free Pauli propagation and
//! gate orbits.
//!
//! A circuit is an ordered list of layers whose gates act on disjoint qubits.
//! Noise is keyed by gate identity `(kind, targets, layer_context)`, where the
//! context names the layer type a gate occurs in.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::pauli::{LocalPauli, PauliString};
use crate::{Error, Result};

/// Primitive operation kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    H,
    S,
    X,
    Z,
    CX,
    CZ,
    MeasureZ,
    ResetZ,
    Idle,
    MeasureIdle,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::CX | GateKind::CZ => 2,
            _ => 1,
        }
    }

    pub fn is_unitary(self) -> bool {
        !matches!(self, GateKind::MeasureZ | GateKind::ResetZ)
    }

    /// Kinds whose noise is a full Pauli channel on the support (as opposed to
    /// the single outcome/reset flip probability).
    pub fn has_pauli_channel(self) -> bool {
        self.is_unitary()
    }

    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::S => "S",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::CX => "CX",
            GateKind::CZ => "CZ",
            GateKind::MeasureZ => "MZ",
            GateKind::ResetZ => "RZ",
            GateKind::Idle => "IDLE",
            GateKind::MeasureIdle => "MIDLE",
        }
    }

    pub fn parse(s: &str) -> Result<GateKind> {
        Ok(match s {
            "H" => GateKind::H,
            "S" => GateKind::S,
            "X" => GateKind::X,
            "Z" => GateKind::Z,
            "CX" => GateKind::CX,
            "CZ" => GateKind::CZ,
            "MZ" => GateKind::MeasureZ,
            "RZ" => GateKind::ResetZ,
            "IDLE" => GateKind::Idle,
            "MIDLE" => GateKind::MeasureIdle,
            _ => return Err(Error::Parse(format!("unknown gate kind {s:?}"))),
        })
    }
}

/// Identifier of the layer type a gate occurs in.
pub type LayerContext = Arc<str>;

/// A gate instance within a circuit layer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub context: LayerContext,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>, context: LayerContext) -> Gate {
        debug_assert_eq!(targets.len(), kind.arity());
        debug_assert!(kind.arity() == 1 || targets[0] != targets[1]);
        Gate { kind, targets, context }
    }

    pub fn id(&self) -> GateId {
        GateId { kind: self.kind, targets: self.targets.clone(), context: self.context.clone() }
    }
}

/// Noise identity of a gate: `(kind, targets, layer_context)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GateId {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub context: LayerContext,
}

impl fmt::Display for GateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.kind.name())?;
        let ts: Vec<String> = self.targets.iter().map(|t| t.to_string()).collect();
        write!(f, "{} @{}", ts.join(","), self.context)
    }
}

impl GateId {
    pub fn parse(s: &str) -> Result<GateId> {
        let (head, context) = s
            .split_once(" @")
            .ok_or_else(|| Error::Parse(format!("bad gate id {s:?}")))?;
        let (kind, targets) = head
            .trim()
            .split_once(' ')
            .ok_or_else(|| Error::Parse(format!("bad gate id {s:?}")))?;
        let kind = GateKind::parse(kind)?;
        let targets = parse_targets(targets)?;
        if targets.len() != kind.arity() {
            return Err(Error::Parse(format!("bad target count in {s:?}")));
        }
        Ok(GateId { kind, targets, context: Arc::from(context) })
    }
}

fn parse_targets(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad qubit index {t:?}")))
        })
        .collect()
}

/// A set of gates implemented simultaneously on disjoint qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    pub gates: Vec<Gate>,
    pub context: LayerContext,
}

impl Layer {
    pub fn new(context: LayerContext, gates: Vec<Gate>) -> Result<Layer> {
        let mut seen = std::collections::HashSet::new();
        for g in &gates {
            for &t in &g.targets {
                if !seen.insert(t) {
                    return Err(Error::InvalidCircuit(format!(
                        "layer {context}: qubit {t} targeted twice"
                    )));
                }
            }
        }
        Ok(Layer { gates, context })
    }

    /// Canonical content key: the sorted multiset of (kind, targets).
    pub fn content_key(gates: &[(GateKind, Vec<usize>)]) -> String {
        let mut items: Vec<String> = gates
            .iter()
            .map(|(k, ts)| {
                let ts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                format!("{} {}", k.name(), ts.join(","))
            })
            .collect();
        items.sort();
        items.join(";")
    }
}

/// A measurement event: which gate produced it and when.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementEvent {
    pub layer_index: usize,
    pub qubit: usize,
    pub gate: GateId,
}

/// An ordered sequence of layers with measurement bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    pub n_qubits: usize,
    pub layers: Vec<Layer>,
    pub measurements: Vec<MeasurementEvent>,
}

impl Circuit {
    pub fn new(n_qubits: usize, layers: Vec<Layer>) -> Result<Circuit> {
        let mut measurements = Vec::new();
        for (i, layer) in layers.iter().enumerate() {
            for g in &layer.gates {
                for &t in &g.targets {
                    if t >= n_qubits {
                        return Err(Error::InvalidCircuit(format!(
                            "gate target {t} out of range for {n_qubits} qubits"
                        )));
                    }
                }
                if g.kind == GateKind::MeasureZ {
                    measurements.push(MeasurementEvent {
                        layer_index: i,
                        qubit: g.targets[0],
                        gate: g.id(),
                    });
                }
            }
        }
        Ok(Circuit { n_qubits, layers, measurements })
    }

    pub fn num_measurements(&self) -> usize {
        self.measurements.len()
    }

    /// Measurement event indices produced by each layer, in gate order.
    pub fn measurement_index(&self, layer_index: usize, qubit: usize) -> Option<usize> {
        self.measurements
            .iter()
            .position(|m| m.layer_index == layer_index && m.qubit == qubit)
    }

    /// All distinct gate identities in first-occurrence order.
    pub fn gate_ids(&self) -> Vec<GateId> {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for layer in &self.layers {
            for g in &layer.gates {
                let id = g.id();
                if seen.insert(id.clone()) {
                    out.push(id);
                }
            }
        }
        out
    }

    /// Line-oriented text format: one layer per line, `context | gates`,
    /// gates as `KIND q0[,q1]` separated by semicolons.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.n_qubits);
        for layer in &self.layers {
            let gates: Vec<String> = layer
                .gates
                .iter()
                .map(|g| {
                    let ts: Vec<String> = g.targets.iter().map(|t| t.to_string()).collect();
                    format!("{} {}", g.kind.name(), ts.join(","))
                })
                .collect();
            out.push_str(&format!("{} | {}\n", layer.context, gates.join("; ")));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Circuit> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty circuit".into()))?;
        let n_qubits = header
            .strip_prefix("qubits ")
            .and_then(|s| s.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Parse(format!("bad header {header:?}")))?;
        let mut layers = Vec::new();
        for (i, line) in lines.enumerate() {
            let (context, body) = match line.split_once('|') {
                Some((c, b)) => (Arc::<str>::from(c.trim()), b),
                None => (Arc::<str>::from(format!("L{i}")), line),
            };
            let mut gates = Vec::new();
            for item in body.split(';') {
                let item = item.trim();
                if item.is_empty() {
                    continue;
                }
                let (kind, targets) = item
                    .split_once(' ')
                    .ok_or_else(|| Error::Parse(format!("bad gate {item:?}")))?;
                let kind = GateKind::parse(kind.trim())?;
                let targets = parse_targets(targets)?;
                if targets.len() != kind.arity() {
                    return Err(Error::Parse(format!("bad target count in {item:?}")));
                }
                gates.push(Gate::new(kind, targets, context.clone()));
            }
            layers.push(Layer::new(context, gates)?);
        }
        Circuit::new(n_qubits, layers)
    }
}

/// Conjugate `p` by the gate: returns signed G·p·G†.
pub fn conjugate(kind: GateKind, targets: &[usize], p: &mut PauliString) -> Result<()> {
    match kind {
        GateKind::H => {
            let q = targets[0];
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            if x && z {
                p.negate();
            }
            p.set_x_bit(q, z);
            p.set_z_bit(q, x);
        }
        GateKind::S => {
            let q = targets[0];
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            if x && z {
                p.negate();
            }
            p.set_z_bit(q, z ^ x);
        }
        GateKind::X => {
            let q = targets[0];
            if p.z_bit(q) {
                p.negate();
            }
        }
        GateKind::Z => {
            let q = targets[0];
            if p.x_bit(q) {
                p.negate();
            }
        }
        GateKind::CX => {
            let (c, t) = (targets[0], targets[1]);
            let (xc, zc, xt, zt) = (p.x_bit(c), p.z_bit(c), p.x_bit(t), p.z_bit(t));
            if xc && zt && (xt == zc) {
                p.negate();
            }
            p.set_x_bit(t, xt ^ xc);
            p.set_z_bit(c, zc ^ zt);
        }
        GateKind::CZ => {
            let (c, t) = (targets[0], targets[1]);
            let (xc, zc, xt, zt) = (p.x_bit(c), p.z_bit(c), p.x_bit(t), p.z_bit(t));
            if xc && xt && (zc != zt) {
                p.negate();
            }
            p.set_z_bit(c, zc ^ xt);
            p.set_z_bit(t, zt ^ xc);
        }
        GateKind::Idle | GateKind::MeasureIdle => {}
        GateKind::MeasureZ | GateKind::ResetZ => {
            return Err(Error::UnsupportedGate(kind.name().into()));
        }
    }
    Ok(())
}

/// Conjugate by the adjoint: returns G†·p·G.
pub fn conjugate_adjoint(kind: GateKind, targets: &[usize], p: &mut PauliString) -> Result<()> {
    match kind {
        // Self-inverse conjugation maps.
        GateKind::H
        | GateKind::X
        | GateKind::Z
        | GateKind::CX
        | GateKind::CZ
        | GateKind::Idle
        | GateKind::MeasureIdle => conjugate(kind, targets, p),
        GateKind::S => {
            // S†: X → −Y, Y → X, Z → Z.
            let q = targets[0];
            let (x, z) = (p.x_bit(q), p.z_bit(q));
            if x && !z {
                p.negate();
            }
            p.set_z_bit(q, z ^ x);
            Ok(())
        }
        GateKind::MeasureZ | GateKind::ResetZ => Err(Error::UnsupportedGate(kind.name().into())),
    }
}

/// Apply every unitary gate of the layer to `p` in place.
pub fn conjugate_layer(layer: &Layer, p: &mut PauliString) -> Result<()> {
    for g in &layer.gates {
        conjugate(g.kind, &g.targets, p)?;
    }
    Ok(())
}

/// Composition of layer conjugations in order. Only valid for unitary circuits.
pub fn circuit_propagate(c: &Circuit, p: &PauliString) -> Result<PauliString> {
    let mut out = p.clone();
    for layer in &c.layers {
        conjugate_layer(layer, &mut out)?;
    }
    Ok(out)
}

/// Partition of a gate's supported non-identity Paulis into cyclically ordered
/// orbits under conjugation, signs neglected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GateOrbitSet {
    pub kind: GateKind,
    pub qubits: u8,
    /// Each orbit is the cyclic list of local Pauli codes visited by repeated
    /// conjugation, starting from the smallest code.
    pub orbits: Vec<Vec<LocalPauli>>,
}

impl GateOrbitSet {
    pub fn orbit_of(&self, p: LocalPauli) -> &[LocalPauli] {
        self.orbits
            .iter()
            .find(|o| o.contains(&p))
            .expect("supported Pauli must be in an orbit")
    }
}

/// Orbits of the gate per repeated conjugation; non-unitary kinds rejected.
pub fn gate_orbits(kind: GateKind) -> Result<GateOrbitSet> {
    if !kind.is_unitary() {
        return Err(Error::UnsupportedGate(kind.name().into()));
    }
    let qubits = kind.arity() as u8;
    let targets: Vec<usize> = (0..qubits as usize).collect();
    let size = LocalPauli::space_size(qubits);
    let mut assigned = vec![false; size];
    assigned[0] = true;
    let mut orbits = Vec::new();
    for code in 1..size {
        if assigned[code] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut current = LocalPauli::new(qubits, code as u16);
        loop {
            orbit.push(current);
            assigned[current.code as usize] = true;
            let mut p = PauliString::from_local(qubits as usize, &targets, current);
            conjugate(kind, &targets, &mut p)?;
            p.set_sign_positive();
            current = p.restrict(&targets);
            if current.code as usize == code {
                break;
            }
        }
        orbits.push(orbit);
    }
    Ok(GateOrbitSet { kind, qubits, orbits })
}

/// Orbit sets for each distinct unitary kind appearing among the gate ids.
pub fn orbit_sets_for(ids: &[GateId]) -> Result<BTreeMap<GateKind, GateOrbitSet>> {
    let mut map = BTreeMap::new();
    for id in ids {
        if id.kind.is_unitary() && !map.contains_key(&id.kind) {
            map.insert(id.kind, gate_orbits(id.kind)?);
        }
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::Pauli;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn ctx(s: &str) -> LayerContext {
        Arc::from(s)
    }

    #[test]
    fn textbook_conjugations() {
        let mut p = PauliString::single(1, 0, Pauli::X);
        conjugate(GateKind::H, &[0], &mut p).unwrap();
        assert_eq!(p.get(0), Pauli::Z);
        assert_eq!(p.sign(), 1);

        let mut p = PauliString::single(2, 0, Pauli::X);
        conjugate(GateKind::CX, &[0, 1], &mut p).unwrap();
        assert_eq!((p.get(0), p.get(1)), (Pauli::X, Pauli::X));

        let mut p = PauliString::single(1, 0, Pauli::X);
        conjugate(GateKind::S, &[0], &mut p).unwrap();
        assert_eq!(p.get(0), Pauli::Y);
        assert_eq!(p.sign(), 1);
        conjugate(GateKind::S, &[0], &mut p).unwrap();
        assert_eq!(p.get(0), Pauli::X);
        assert_eq!(p.sign(), -1);
    }

    #[test]
    fn adjoint_inverts_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let kinds = [GateKind::H, GateKind::S, GateKind::X, GateKind::Z, GateKind::CX, GateKind::CZ];
        for _ in 0..200 {
            let kind = kinds[rng.gen_range(0..kinds.len())];
            let targets: Vec<usize> = if kind.arity() == 2 { vec![0, 1] } else { vec![0] };
            let mut p = PauliString::identity(2);
            for q in 0..2 {
                p.set(q, Pauli::from_code(rng.gen_range(0..4)));
            }
            let orig = p.clone();
            conjugate(kind, &targets, &mut p).unwrap();
            conjugate_adjoint(kind, &targets, &mut p).unwrap();
            assert_eq!(p, orig, "kind {kind:?}");
        }
    }

    #[test]
    fn conjugation_preserves_commutation() {
        let kinds = [GateKind::H, GateKind::S, GateKind::X, GateKind::Z, GateKind::CX, GateKind::CZ];
        for kind in kinds {
            let targets: Vec<usize> = (0..kind.arity()).collect();
            for a in 0..16u16 {
                for b in 0..16u16 {
                    let pa = PauliString::from_local(2, &[0, 1], LocalPauli::new(2, a));
                    let pb = PauliString::from_local(2, &[0, 1], LocalPauli::new(2, b));
                    let before = pa.symplectic(&pb).unwrap();
                    let mut ga = pa.clone();
                    let mut gb = pb.clone();
                    conjugate(kind, &targets, &mut ga).unwrap();
                    conjugate(kind, &targets, &mut gb).unwrap();
                    assert_eq!(before, ga.symplectic(&gb).unwrap());
                }
            }
        }
    }

    #[test]
    fn empty_circuit_propagates_identity() {
        let c = Circuit::new(3, vec![]).unwrap();
        let p = PauliString::single(3, 1, Pauli::Y);
        assert_eq!(circuit_propagate(&c, &p).unwrap(), p);
    }

    #[test]
    fn double_hadamard_is_involution() {
        let l = |i| {
            Layer::new(ctx(&format!("h{i}")), vec![Gate::new(GateKind::H, vec![0], ctx("h"))])
                .unwrap()
        };
        let c = Circuit::new(1, vec![l(0), l(1)]).unwrap();
        let p = PauliString::single(1, 0, Pauli::X);
        assert_eq!(circuit_propagate(&c, &p).unwrap(), p);
    }

    /// Dense matrix oracle with explicit sign tracking for 2-qubit circuits,
    /// independent of the bitwise conjugation rules.
    mod dense_oracle {
        use super::*;

        // Minimal complex arithmetic to avoid a dependency in tests.
        #[derive(Clone, Copy, Debug, PartialEq)]
        pub struct C {
            re: f64,
            im: f64,
        }
        impl C {
            const ZERO: C = C { re: 0.0, im: 0.0 };
            const ONE: C = C { re: 1.0, im: 0.0 };
            const I: C = C { re: 0.0, im: 1.0 };
            fn mul(self, o: C) -> C {
                C { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
            }
            fn add(self, o: C) -> C {
                C { re: self.re + o.re, im: self.im + o.im }
            }
            fn neg(self) -> C {
                C { re: -self.re, im: -self.im }
            }
            fn conj(self) -> C {
                C { re: self.re, im: -self.im }
            }
            fn approx(self, o: C) -> bool {
                (self.re - o.re).abs() < 1e-9 && (self.im - o.im).abs() < 1e-9
            }
        }

        type Mat = Vec<Vec<C>>;

        fn kron(a: &Mat, b: &Mat) -> Mat {
            let (ra, ca, rb, cb) = (a.len(), a[0].len(), b.len(), b[0].len());
            let mut out = vec![vec![C::ZERO; ca * cb]; ra * rb];
            for i in 0..ra {
                for j in 0..ca {
                    for k in 0..rb {
                        for l in 0..cb {
                            out[i * rb + k][j * cb + l] = a[i][j].mul(b[k][l]);
                        }
                    }
                }
            }
            out
        }

        fn matmul(a: &Mat, b: &Mat) -> Mat {
            let (r, k, c) = (a.len(), b.len(), b[0].len());
            let mut out = vec![vec![C::ZERO; c]; r];
            for i in 0..r {
                for j in 0..c {
                    let mut acc = C::ZERO;
                    for m in 0..k {
                        acc = acc.add(a[i][m].mul(b[m][j]));
                    }
                    out[i][j] = acc;
                }
            }
            out
        }

        fn dagger(a: &Mat) -> Mat {
            let (r, c) = (a.len(), a[0].len());
            let mut out = vec![vec![C::ZERO; r]; c];
            for i in 0..r {
                for j in 0..c {
                    out[j][i] = a[i][j].conj();
                }
            }
            out
        }

        fn pauli1(p: Pauli) -> Mat {
            let o = C::ONE;
            let z = C::ZERO;
            let i = C::I;
            match p {
                Pauli::I => vec![vec![o, z], vec![z, o]],
                Pauli::X => vec![vec![z, o], vec![o, z]],
                Pauli::Y => vec![vec![z, i.neg()], vec![i, z]],
                Pauli::Z => vec![vec![o, z], vec![z, o.neg()]],
            }
        }

        pub fn pauli2(p: &PauliString) -> Mat {
            kron(&pauli1(p.get(0)), &pauli1(p.get(1)))
        }

        pub fn gate_matrix(kind: GateKind, targets: &[usize]) -> Mat {
            let o = C::ONE;
            let z = C::ZERO;
            let i = C::I;
            let inv_sqrt2 = C { re: 1.0 / 2.0_f64.sqrt(), im: 0.0 };
            let g1 = |m: Mat, q: usize| -> Mat {
                let id = pauli1(Pauli::I);
                if q == 0 {
                    kron(&m, &id)
                } else {
                    kron(&id, &m)
                }
            };
            match kind {
                GateKind::H => g1(
                    vec![vec![inv_sqrt2, inv_sqrt2], vec![inv_sqrt2, inv_sqrt2.neg()]],
                    targets[0],
                ),
                GateKind::S => g1(vec![vec![o, z], vec![z, i]], targets[0]),
                GateKind::X => g1(pauli1(Pauli::X), targets[0]),
                GateKind::Z => g1(pauli1(Pauli::Z), targets[0]),
                GateKind::CZ => {
                    let mut m = vec![vec![C::ZERO; 4]; 4];
                    for d in 0..4 {
                        m[d][d] = if d == 3 { o.neg() } else { o };
                    }
                    m
                }
                GateKind::CX => {
                    // Control = targets[0] in the (q0 ⊗ q1) basis.
                    let (c, t) = (targets[0], targets[1]);
                    let mut m = vec![vec![C::ZERO; 4]; 4];
                    for basis in 0..4usize {
                        let (b0, b1) = (basis >> 1 & 1, basis & 1);
                        let bits = [b0, b1];
                        let cv = bits[c];
                        let mut out = bits;
                        out[t] ^= cv;
                        m[(out[0] << 1) | out[1]][basis] = o;
                    }
                    m
                }
                _ => unreachable!(),
            }
        }

        /// Conjugate a signed 2-qubit Pauli by the dense matrix and identify
        /// the resulting signed Pauli.
        pub fn conjugate_dense(kind: GateKind, targets: &[usize], p: &PauliString) -> PauliString {
            let u = gate_matrix(kind, targets);
            let m = matmul(&matmul(&u, &pauli2(p)), &dagger(&u));
            for code in 0..16u16 {
                for neg in [false, true] {
                    let mut cand = PauliString::from_local(2, &[0, 1], LocalPauli::new(2, code));
                    if neg {
                        cand.negate();
                    }
                    let mut cm = pauli2(&cand);
                    if cand.sign() < 0 {
                        for row in cm.iter_mut() {
                            for v in row.iter_mut() {
                                *v = v.neg();
                            }
                        }
                    }
                    let mut target = m.clone();
                    if p.sign() < 0 {
                        for row in target.iter_mut() {
                            for v in row.iter_mut() {
                                *v = v.neg();
                            }
                        }
                    }
                    if (0..4).all(|r| (0..4).all(|c| target[r][c].approx(cm[r][c]))) {
                        return cand;
                    }
                }
            }
            panic!("conjugated operator is not a signed Pauli");
        }
    }

    #[test]
    fn conjugation_matches_dense_matrix_oracle() {
        let kinds = [GateKind::H, GateKind::S, GateKind::X, GateKind::Z, GateKind::CX, GateKind::CZ];
        for kind in kinds {
            let target_sets: Vec<Vec<usize>> = if kind.arity() == 2 {
                vec![vec![0, 1], vec![1, 0]]
            } else {
                vec![vec![0], vec![1]]
            };
            for targets in target_sets {
                for code in 0..16u16 {
                    let p = PauliString::from_local(2, &[0, 1], LocalPauli::new(2, code));
                    let expected = dense_oracle::conjugate_dense(kind, &targets, &p);
                    let mut got = p.clone();
                    conjugate(kind, &targets, &mut got).unwrap();
                    assert_eq!(got, expected, "kind {kind:?} targets {targets:?} code {code}");
                }
            }
        }
    }

    #[test]
    fn random_circuit_propagation_matches_gate_by_gate_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let kinds = [GateKind::H, GateKind::S, GateKind::X, GateKind::Z, GateKind::CX, GateKind::CZ];
        for _ in 0..20 {
            let mut layers = Vec::new();
            let mut flat: Vec<(GateKind, Vec<usize>)> = Vec::new();
            for i in 0..4 {
                let kind = kinds[rng.gen_range(0..kinds.len())];
                let targets = if kind.arity() == 2 {
                    if rng.gen() { vec![0, 1] } else { vec![1, 0] }
                } else {
                    vec![rng.gen_range(0..2)]
                };
                flat.push((kind, targets.clone()));
                let c = ctx(&format!("L{i}"));
                layers.push(Layer::new(c.clone(), vec![Gate::new(kind, targets, c)]).unwrap());
            }
            let circuit = Circuit::new(2, layers).unwrap();
            for code in 0..16u16 {
                let p = PauliString::from_local(2, &[0, 1], LocalPauli::new(2, code));
                let via_circuit = circuit_propagate(&circuit, &p).unwrap();
                let mut via_oracle = p.clone();
                for (kind, targets) in &flat {
                    via_oracle = dense_oracle::conjugate_dense(*kind, targets, &via_oracle);
                }
                assert_eq!(via_circuit, via_oracle);
            }
        }
    }

    #[test]
    fn hadamard_orbits() {
        let o = gate_orbits(GateKind::H).unwrap();
        let mut orbits: Vec<Vec<String>> = o
            .orbits
            .iter()
            .map(|orb| orb.iter().map(|p| p.label()).collect())
            .collect();
        orbits.sort();
        assert_eq!(orbits, vec![vec!["X".to_string(), "Z".to_string()], vec!["Y".to_string()]]);
    }

    #[test]
    fn pauli_gate_orbits_are_all_singletons() {
        let o = gate_orbits(GateKind::X).unwrap();
        assert_eq!(o.orbits.len(), 3);
        assert!(o.orbits.iter().all(|orb| orb.len() == 1));
    }

    #[test]
    fn cx_orbits_match_conjugation_oracle() {
        let o = gate_orbits(GateKind::CX).unwrap();
        let all: usize = o.orbits.iter().map(|orb| orb.len()).sum();
        assert_eq!(all, 15);
        // Spot checks: XI ↔ XX orbit, ZI fixed point.
        let xi = LocalPauli::parse("XI").unwrap();
        let xx = LocalPauli::parse("XX").unwrap();
        let zi = LocalPauli::parse("ZI").unwrap();
        let orbit_xi = o.orbit_of(xi).to_vec();
        assert_eq!(orbit_xi.len(), 2);
        assert!(orbit_xi.contains(&xx));
        assert_eq!(o.orbit_of(zi), &[zi]);
        // Every orbit closes: conjugating |o| times returns the start up to sign.
        for orbit in &o.orbits {
            for &start in orbit {
                let mut p = PauliString::from_local(2, &[0, 1], start);
                for _ in 0..orbit.len() {
                    conjugate(GateKind::CX, &[0, 1], &mut p).unwrap();
                }
                p.set_sign_positive();
                assert_eq!(p.restrict(&[0, 1]), start);
            }
        }
        assert!(gate_orbits(GateKind::MeasureZ).is_err());
    }

    #[test]
    fn layer_rejects_overlapping_targets() {
        let c = ctx("L");
        let gates = vec![
            Gate::new(GateKind::H, vec![0], c.clone()),
            Gate::new(GateKind::CZ, vec![0, 1], c.clone()),
        ];
        assert!(Layer::new(c, gates).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = ctx("round.cz_a");
        let layers = vec![
            Layer::new(
                c.clone(),
                vec![Gate::new(GateKind::CZ, vec![0, 2], c.clone()), Gate::new(GateKind::H, vec![1], c.clone())],
            )
            .unwrap(),
            Layer::new(
                ctx("round.meas"),
                vec![
                    Gate::new(GateKind::MeasureZ, vec![0], ctx("round.meas")),
                    Gate::new(GateKind::MeasureIdle, vec![1], ctx("round.meas")),
                ],
            )
            .unwrap(),
        ];
        let circuit = Circuit::new(3, layers).unwrap();
        let text = circuit.to_text();
        let parsed = Circuit::from_text(&text).unwrap();
        assert_eq!(parsed, circuit);
        assert_eq!(parsed.num_measurements(), 1);
    }
}
