//! Pauli-frame propagation of faults through circuits.
//!
//! A fault is a Pauli inserted before a given layer. Propagating it forward
//! yields the set of measurement events whose outcomes flip, which is exact
//! for Pauli noise on Clifford circuits. Frames carry no sign: outcome flips
//! depend only on anticommutation with the measured operator.

use crate::circuit::{Circuit, GateKind};
use crate::pauli::{Pauli, PauliString};
use crate::{Error, Result};

/// Precomputed per-layer qubit-to-gate lookup for sparse fault propagation.
pub struct FramePropagator<'c> {
    pub circuit: &'c Circuit,
    /// layer → qubit → gate index within the layer (usize::MAX when idle).
    layer_gate_of_qubit: Vec<Vec<usize>>,
    /// layer → qubit → measurement event index (usize::MAX when none).
    layer_measurement_of_qubit: Vec<Vec<usize>>,
}

impl<'c> FramePropagator<'c> {
    pub fn new(circuit: &'c Circuit) -> FramePropagator<'c> {
        let n = circuit.n_qubits;
        let mut layer_gate_of_qubit = Vec::with_capacity(circuit.layers.len());
        let mut layer_measurement_of_qubit = Vec::with_capacity(circuit.layers.len());
        let mut event = 0usize;
        for layer in &circuit.layers {
            let mut gates = vec![usize::MAX; n];
            let mut meas = vec![usize::MAX; n];
            for (gi, g) in layer.gates.iter().enumerate() {
                for &t in &g.targets {
                    gates[t] = gi;
                }
                if g.kind == GateKind::MeasureZ {
                    meas[g.targets[0]] = event;
                    event += 1;
                }
            }
            layer_gate_of_qubit.push(gates);
            layer_measurement_of_qubit.push(meas);
        }
        FramePropagator { circuit, layer_gate_of_qubit, layer_measurement_of_qubit }
    }

    /// Propagate a fault inserted before `layer_index`, returning the flipped
    /// measurement event indices in ascending order.
    pub fn propagate(&self, layer_index: usize, fault: &PauliString) -> Result<Vec<usize>> {
        if layer_index > self.circuit.layers.len() {
            return Err(Error::InvalidCircuit(format!(
                "fault layer {layer_index} out of range"
            )));
        }
        if fault.len() != self.circuit.n_qubits {
            return Err(Error::QubitMismatch {
                left: fault.len(),
                right: self.circuit.n_qubits,
            });
        }
        let mut frame = fault.clone();
        frame.set_sign_positive();
        let mut support: Vec<usize> = frame.support();
        let mut flips = Vec::new();
        let mut scratch = Vec::new();
        for li in layer_index..self.circuit.layers.len() {
            if support.is_empty() {
                break;
            }
            let layer = &self.circuit.layers[li];
            let gate_of = &self.layer_gate_of_qubit[li];
            let meas_of = &self.layer_measurement_of_qubit[li];
            scratch.clear();
            for &q in &support {
                let gi = gate_of[q];
                if gi != usize::MAX && !scratch.contains(&gi) {
                    scratch.push(gi);
                }
            }
            scratch.sort_unstable();
            for &gi in &scratch {
                let g = &layer.gates[gi];
                match g.kind {
                    GateKind::MeasureZ => {
                        let q = g.targets[0];
                        if frame.x_bit(q) {
                            flips.push(meas_of[q]);
                        }
                    }
                    GateKind::ResetZ => {
                        let q = g.targets[0];
                        frame.set(q, Pauli::I);
                    }
                    _ => {
                        crate::circuit::conjugate(g.kind, &g.targets, &mut frame)?;
                    }
                }
            }
            // Recompute the support over qubits touched this layer.
            let mut next = Vec::with_capacity(support.len() + scratch.len());
            for &q in &support {
                if frame.get(q) != Pauli::I {
                    next.push(q);
                }
            }
            for &gi in &scratch {
                for &t in &layer.gates[gi].targets {
                    if frame.get(t) != Pauli::I && !next.contains(&t) {
                        next.push(t);
                    }
                }
            }
            next.sort_unstable();
            next.dedup();
            support = next;
        }
        flips.sort_unstable();
        Ok(flips)
    }
}

/// Deterministic set of measurement events whose outcomes flip under a fault
/// inserted before the layer at `layer_index`.
pub fn detector_frame_propagate(
    circuit: &Circuit,
    layer_index: usize,
    fault: &PauliString,
) -> Result<Vec<usize>> {
    FramePropagator::new(circuit).propagate(layer_index, fault)
}
