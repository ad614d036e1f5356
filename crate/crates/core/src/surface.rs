//! Rotated XZZX surface-code layouts, syndrome-extraction circuits, and
//! memory experiments with detectors and logical observables.
//!
//! Geometry: data qubits sit at odd-odd coordinates (2c+1, 2r+1) of a d×d
//! grid; plaquette centers at even-even coordinates (2i, 2j) with diagonal
//! data neighbors. Interior centers form a checkerboard (red when i+j is
//! even, blue when odd) and the boundary carries alternating half-plaquettes:
//! blue halves on the top and bottom edges, red halves on the left and right.
//!
//! Every plaquette measures the same local pattern — Z on the top-left and
//! bottom-right data qubits, X on the top-right and bottom-left — via a
//! Hadamard-interleaved CZ schedule. Blue plaquettes interact in the order
//! (a, b, c, d) = (TL, TR, BL, BR) and red plaquettes in (a, c, b, d).

use std::sync::Arc;

use crate::circuit::{Circuit, Gate, GateId, GateKind, Layer, LayerContext};
use crate::pauli::Pauli;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlaquetteColor {
    Red,
    Blue,
}

/// Diagonal data neighbors of a plaquette center, in (TL, TR, BL, BR) order.
pub const NEIGHBOR_OFFSETS: [(i32, i32); 4] = [(-1, 1), (1, 1), (-1, -1), (1, -1)];

#[derive(Debug, Clone)]
pub struct MeasureQubit {
    /// Qubit index in the circuit.
    pub qubit: usize,
    pub center: (i32, i32),
    pub color: PlaquetteColor,
    /// Data qubit indices in (TL, TR, BL, BR) order; None outside the grid.
    pub neighbors: [Option<usize>; 4],
}

/// Rotated surface-code layout with d² data and d²−1 measure qubits.
#[derive(Debug, Clone)]
pub struct SurfaceCodeLayout {
    pub distance: usize,
    pub n_qubits: usize,
    /// Data qubit coordinates, indexed by qubit id 0..d².
    pub data_coords: Vec<(i32, i32)>,
    pub measure: Vec<MeasureQubit>,
}

impl SurfaceCodeLayout {
    pub fn data_qubit(&self, x: i32, y: i32) -> Option<usize> {
        let d = self.distance as i32;
        if x % 2 == 1 && y % 2 == 1 && x >= 1 && x < 2 * d && y >= 1 && y < 2 * d {
            let c = (x - 1) / 2;
            let r = (y - 1) / 2;
            Some((r * d + c) as usize)
        } else {
            None
        }
    }

    pub fn data_qubits(&self) -> std::ops::Range<usize> {
        0..self.data_coords.len()
    }

    /// The stabilizer factor measured on a data neighbor: Z on the TL/BR
    /// diagonal, X on the TR/BL diagonal.
    pub fn stabilizer_factor(slot: usize) -> Pauli {
        match slot {
            0 | 3 => Pauli::Z,
            1 | 2 => Pauli::X,
            _ => unreachable!(),
        }
    }
}

/// Checkerboard plaquette layout with alternating boundary half-plaquettes.
pub fn build_layout(d: usize) -> Result<SurfaceCodeLayout> {
    if d < 3 || d % 2 == 0 {
        return Err(Error::InvalidLayout(format!("distance {d} must be odd and ≥ 3")));
    }
    let di = d as i32;
    let mut data_coords = Vec::with_capacity(d * d);
    for r in 0..di {
        for c in 0..di {
            data_coords.push((2 * c + 1, 2 * r + 1));
        }
    }
    let mut centers = Vec::new();
    for j in 0..=di {
        for i in 0..=di {
            let interior = i >= 1 && i <= di - 1 && j >= 1 && j <= di - 1;
            let boundary = if j == 0 {
                i % 2 == 1 && i <= di - 1
            } else if j == di {
                (i + di) % 2 == 1 && i >= 1 && i <= di - 1
            } else if i == 0 {
                j % 2 == 0 && j >= 1 && j <= di - 1
            } else if i == di {
                (j + di) % 2 == 0 && j >= 1 && j <= di - 1
            } else {
                false
            };
            if interior || boundary {
                centers.push((i, j));
            }
        }
    }
    let layout_stub = SurfaceCodeLayout {
        distance: d,
        n_qubits: 2 * d * d - 1,
        data_coords: data_coords.clone(),
        measure: Vec::new(),
    };
    let mut measure = Vec::with_capacity(centers.len());
    for (k, &(i, j)) in centers.iter().enumerate() {
        let (cx, cy) = (2 * i, 2 * j);
        let color = if (i + j) % 2 == 0 { PlaquetteColor::Red } else { PlaquetteColor::Blue };
        let mut neighbors = [None; 4];
        for (slot, (dx, dy)) in NEIGHBOR_OFFSETS.iter().enumerate() {
            neighbors[slot] = layout_stub.data_qubit(cx + dx, cy + dy);
        }
        measure.push(MeasureQubit { qubit: d * d + k, center: (cx, cy), color, neighbors });
    }
    if measure.len() != d * d - 1 {
        return Err(Error::InvalidLayout(format!(
            "constructed {} measure qubits, expected {}",
            measure.len(),
            d * d - 1
        )));
    }
    Ok(SurfaceCodeLayout {
        distance: d,
        n_qubits: 2 * d * d - 1,
        data_coords,
        measure,
    })
}

fn ctx(s: String) -> LayerContext {
    Arc::from(s.as_str())
}

/// The CZ partner slot for each color in interaction columns 0..4.
fn schedule_slot(color: PlaquetteColor, column: usize) -> usize {
    match (color, column) {
        (PlaquetteColor::Blue, c) => [0, 1, 2, 3][c],
        (PlaquetteColor::Red, c) => [0, 2, 1, 3][c],
    }
}

/// Layer contexts of one syndrome-extraction round, in order.
pub fn round_layers(layout: &SurfaceCodeLayout) -> Result<Vec<Layer>> {
    let hx = ctx("round.hx".to_string());
    let xh = ctx("round.xh".to_string());
    let xx = ctx("round.xx".to_string());
    let meas = ctx("round.meas".to_string());
    let reset = ctx("round.reset".to_string());

    let h_on_measure_x_on_data = |c: &LayerContext| -> Result<Layer> {
        let mut gates = Vec::new();
        for m in &layout.measure {
            gates.push(Gate::new(GateKind::H, vec![m.qubit], c.clone()));
        }
        for q in layout.data_qubits() {
            gates.push(Gate::new(GateKind::X, vec![q], c.clone()));
        }
        Layer::new(c.clone(), gates)
    };
    let x_on_measure_h_on_data = |c: &LayerContext| -> Result<Layer> {
        let mut gates = Vec::new();
        for m in &layout.measure {
            gates.push(Gate::new(GateKind::X, vec![m.qubit], c.clone()));
        }
        for q in layout.data_qubits() {
            gates.push(Gate::new(GateKind::H, vec![q], c.clone()));
        }
        Layer::new(c.clone(), gates)
    };
    let x_everywhere = |c: &LayerContext| -> Result<Layer> {
        let mut gates = Vec::new();
        for m in &layout.measure {
            gates.push(Gate::new(GateKind::X, vec![m.qubit], c.clone()));
        }
        for q in layout.data_qubits() {
            gates.push(Gate::new(GateKind::X, vec![q], c.clone()));
        }
        Layer::new(c.clone(), gates)
    };
    let cz_column = |column: usize| -> Result<Layer> {
        let c = ctx(format!("round.cz_{}", ["a", "b", "c", "d"][column]));
        let mut gates = Vec::new();
        for m in &layout.measure {
            let slot = schedule_slot(m.color, column);
            if let Some(dq) = m.neighbors[slot] {
                gates.push(Gate::new(GateKind::CZ, vec![m.qubit, dq], c.clone()));
            }
        }
        Layer::new(c, gates)
    };

    let mut measure_gates = Vec::new();
    for m in &layout.measure {
        measure_gates.push(Gate::new(GateKind::MeasureZ, vec![m.qubit], meas.clone()));
    }
    for q in layout.data_qubits() {
        measure_gates.push(Gate::new(GateKind::MeasureIdle, vec![q], meas.clone()));
    }
    let reset_gates = layout
        .measure
        .iter()
        .map(|m| Gate::new(GateKind::ResetZ, vec![m.qubit], reset.clone()))
        .collect();

    Ok(vec![
        h_on_measure_x_on_data(&hx)?,
        cz_column(0)?,
        x_on_measure_h_on_data(&xh)?,
        cz_column(1)?,
        x_everywhere(&xx)?,
        cz_column(2)?,
        x_on_measure_h_on_data(&xh)?,
        cz_column(3)?,
        h_on_measure_x_on_data(&hx)?,
        Layer::new(meas, measure_gates)?,
        Layer::new(reset, reset_gates)?,
    ])
}

/// One round of syndrome extraction as a standalone circuit.
pub fn build_syndrome_circuit(layout: &SurfaceCodeLayout) -> Result<Circuit> {
    Circuit::new(layout.n_qubits, round_layers(layout)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MemoryBasis {
    X,
    Z,
}

impl MemoryBasis {
    pub fn name(self) -> &'static str {
        match self {
            MemoryBasis::X => "x",
            MemoryBasis::Z => "z",
        }
    }

    /// The stabilizer color that is deterministic in the first round.
    pub fn color(self) -> PlaquetteColor {
        match self {
            MemoryBasis::Z => PlaquetteColor::Blue,
            MemoryBasis::X => PlaquetteColor::Red,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryExperimentSpec {
    pub distance: usize,
    pub rounds: usize,
    pub basis: MemoryBasis,
}

/// Detectors and the logical observable as sets of measurement-event indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DetectorSet {
    pub detectors: Vec<Vec<usize>>,
    pub logical_observable: Vec<usize>,
    /// (measure qubit, round) annotation per detector; the final-round
    /// detectors reuse the last round index.
    pub coords: Vec<(usize, usize)>,
}

/// Per-qubit preparation basis for a memory experiment: the local factor the
/// deterministic stabilizers and the preserved logical have on that qubit.
pub fn data_basis(layout: &SurfaceCodeLayout, basis: MemoryBasis, q: usize) -> Pauli {
    let (x, y) = layout.data_coords[q];
    let z_like = (x + y).rem_euclid(4) == 2;
    match (basis, z_like) {
        (MemoryBasis::Z, true) | (MemoryBasis::X, false) => Pauli::Z,
        (MemoryBasis::Z, false) | (MemoryBasis::X, true) => Pauli::X,
    }
}

/// Data qubits of the preserved logical operator, with their local factors.
pub fn logical_support(layout: &SurfaceCodeLayout, basis: MemoryBasis) -> Vec<(usize, Pauli)> {
    let d = layout.distance as i32;
    let mut out = Vec::new();
    match basis {
        // Vertical string on the left column.
        MemoryBasis::Z => {
            for k in 0..d {
                let q = layout.data_qubit(1, 2 * k + 1).unwrap();
                out.push((q, data_basis(layout, basis, q)));
            }
        }
        // Horizontal string on the bottom row.
        MemoryBasis::X => {
            for k in 0..d {
                let q = layout.data_qubit(2 * k + 1, 1).unwrap();
                out.push((q, data_basis(layout, basis, q)));
            }
        }
    }
    out
}

/// Memory experiment: basis-appropriate preparation, `rounds` rounds of
/// syndrome extraction, and a transversal data measurement in the memory
/// basis. Detectors compare stabilizer outcomes across consecutive rounds,
/// plus first- and final-round detectors for the basis-consistent color.
pub fn build_memory_circuit(spec: &MemoryExperimentSpec) -> Result<(Circuit, DetectorSet, SurfaceCodeLayout)> {
    if spec.rounds == 0 {
        return Err(Error::InvalidCircuit("memory experiment needs rounds ≥ 1".into()));
    }
    let layout = build_layout(spec.distance)?;
    let n = layout.n_qubits;
    let basis_name = spec.basis.name();

    let mut layers = Vec::new();
    let init_reset = ctx("init.reset".to_string());
    let gates = (0..n).map(|q| Gate::new(GateKind::ResetZ, vec![q], init_reset.clone())).collect();
    layers.push(Layer::new(init_reset, gates)?);

    let rotated: Vec<usize> = layout
        .data_qubits()
        .filter(|&q| data_basis(&layout, spec.basis, q) == Pauli::X)
        .collect();
    let init_h = ctx(format!("init.h_{basis_name}"));
    let gates = rotated.iter().map(|&q| Gate::new(GateKind::H, vec![q], init_h.clone())).collect();
    layers.push(Layer::new(init_h, gates)?);

    let round = round_layers(&layout)?;
    for _ in 0..spec.rounds {
        layers.extend(round.iter().cloned());
    }

    let final_h = ctx(format!("final.h_{basis_name}"));
    let gates = rotated.iter().map(|&q| Gate::new(GateKind::H, vec![q], final_h.clone())).collect();
    layers.push(Layer::new(final_h, gates)?);

    let final_meas = ctx(format!("final.meas_{basis_name}"));
    let gates = layout
        .data_qubits()
        .map(|q| Gate::new(GateKind::MeasureZ, vec![q], final_meas.clone()))
        .collect();
    layers.push(Layer::new(final_meas, gates)?);

    let circuit = Circuit::new(n, layers)?;

    // Measurement events: per round, measure qubits in layout order; then the
    // final transversal data measurement in data-qubit order.
    let n_meas = layout.measure.len();
    let event = |round: usize, mk: usize| (round - 1) * n_meas + mk;
    let final_event = |q: usize| spec.rounds * n_meas + q;

    let mut detectors = Vec::new();
    let mut coords = Vec::new();
    let color = spec.basis.color();
    for (mk, m) in layout.measure.iter().enumerate() {
        if m.color == color {
            detectors.push(vec![event(1, mk)]);
            coords.push((m.qubit, 1));
        }
    }
    for round in 2..=spec.rounds {
        for (mk, m) in layout.measure.iter().enumerate() {
            detectors.push(vec![event(round - 1, mk), event(round, mk)]);
            coords.push((m.qubit, round));
        }
    }
    for (mk, m) in layout.measure.iter().enumerate() {
        if m.color == color {
            let mut det = vec![event(spec.rounds, mk)];
            for dq in m.neighbors.into_iter().flatten() {
                det.push(final_event(dq));
            }
            detectors.push(det);
            coords.push((m.qubit, spec.rounds));
        }
    }
    let logical_observable =
        logical_support(&layout, spec.basis).iter().map(|&(q, _)| final_event(q)).collect();

    debug_assert_eq!(circuit.num_measurements(), spec.rounds * n_meas + layout.data_coords.len());
    Ok((circuit, DetectorSet { detectors, logical_observable, coords }, layout))
}

/// All gate identities a distance-d memory experiment can contain, across both
/// memory bases. Used to draw one noise instance covering every context.
pub fn memory_gate_ids(d: usize) -> Result<Vec<GateId>> {
    let mut ids = Vec::new();
    for basis in [MemoryBasis::Z, MemoryBasis::X] {
        let (circuit, _, _) =
            build_memory_circuit(&MemoryExperimentSpec { distance: d, rounds: 1, basis })?;
        ids.extend(circuit.gate_ids());
    }
    ids.sort();
    ids.dedup();
    Ok(ids)
}
