"""Genetic-algorithm toolkit: stationary Schrodinger solutions, quantum-neuron
training and two-qubit control-circuit synthesis."""

from ._core import (
    CircuitMatrix,
    GaConfig,
    behave,
    circuit_default_config,
    circuit_target,
    compose_serial,
    fidelity_distance,
    gate,
    hamming_matches,
    kron,
    neuron_default_config,
    neuron_enumerate_best,
    neuron_fitness_overlap,
    neuron_fitness_table,
    neuron_forward,
    oracle_eigenvalues,
    oracle_eigenvector,
    run_experiment,
    schrodinger_default_config,
    solve_schrodinger,
    synthesize,
    train_neuron,
    verify,
    wave_fitness,
)

__all__ = [
    "CircuitMatrix",
    "GaConfig",
    "behave",
    "circuit_default_config",
    "circuit_target",
    "compose_serial",
    "fidelity_distance",
    "gate",
    "hamming_matches",
    "kron",
    "neuron_default_config",
    "neuron_enumerate_best",
    "neuron_fitness_overlap",
    "neuron_fitness_table",
    "neuron_forward",
    "oracle_eigenvalues",
    "oracle_eigenvector",
    "run_experiment",
    "schrodinger_default_config",
    "solve_schrodinger",
    "synthesize",
    "train_neuron",
    "verify",
    "wave_fitness",
]
