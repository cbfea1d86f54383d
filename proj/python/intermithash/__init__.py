"""Block-cipher hashes, quality metrics and the intermittent-execution simulator."""

from ._core import (
    EnergyParams,
    Hasher,
    avalanche_bias,
    bench,
    collision_probability,
    cycles_per_ipc,
    differential_test,
    digest,
    energy_per_ipc,
    hash_names,
    load_params,
    parse_params,
    run_sweep,
    speck_encrypt,
    twobytes_collisions,
    zeros_collisions,
)

__all__ = [
    "EnergyParams",
    "Hasher",
    "avalanche_bias",
    "bench",
    "collision_probability",
    "cycles_per_ipc",
    "differential_test",
    "digest",
    "energy_per_ipc",
    "hash_names",
    "load_params",
    "parse_params",
    "run_sweep",
    "speck_encrypt",
    "twobytes_collisions",
    "zeros_collisions",
]
