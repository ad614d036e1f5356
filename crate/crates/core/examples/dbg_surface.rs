use aces_qec::circuit::*;
use aces_qec::frame::detector_frame_propagate;
use aces_qec::pauli::{LocalPauli, PauliString};
use aces_qec::surface::*;

fn main() {
    let spec = MemoryExperimentSpec { distance: 3, rounds: 4, basis: MemoryBasis::Z };
    let (circuit, dets, _) = build_memory_circuit(&spec).unwrap();
    println!("layers: {}", circuit.layers.len());
    for (i, l) in circuit.layers.iter().enumerate().take(16) {
        println!("{i}: {} ({} gates)", l.context, l.gates.len());
    }
    let round_start = 2 + 11;
    let cz_layer = round_start + 1;
    let gate = circuit.layers[cz_layer].gates[0].clone();
    println!("gate at layer {cz_layer}: {:?} {:?}", gate.kind, gate.targets);
    let fault = PauliString::from_local(circuit.n_qubits, &gate.targets, LocalPauli::parse("XZ").unwrap());
    let flips = detector_frame_propagate(&circuit, cz_layer + 1, &fault).unwrap();
    println!("flips: {flips:?}");
    println!("num detectors: {}", dets.detectors.len());
    let flipped: Vec<usize> = dets
        .detectors
        .iter()
        .enumerate()
        .filter(|(_, det)| det.iter().filter(|e| flips.contains(e)).count() % 2 == 1)
        .map(|(k, _)| k)
        .collect();
    println!("flipped detectors: {flipped:?}");
    // Also try a plain data X fault right before the final measurement layer.
    let q = 0usize;
    let fault2 = PauliString::single(circuit.n_qubits, q, aces_qec::pauli::Pauli::X);
    let fl2 = detector_frame_propagate(&circuit, circuit.layers.len() - 1, &fault2).unwrap();
    println!("data X before final meas flips: {fl2:?}");
}
