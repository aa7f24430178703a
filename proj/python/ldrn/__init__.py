"""Linear multicast codes for layered linear deterministic relay networks.

Layer, node and destination indices are 1-based, matching the JSON files.
"""

from ._ldrn import (
    Error,
    Field,
    FieldTooSmall,
    Flow,
    InvariantError,
    MulticastCode,
    Network,
    ParseError,
    RetriesExhausted,
    ValidationError,
    build_code,
    find_flow,
    generate,
    lift_network,
    min_cut,
    multicast_capacity,
    pack,
    required_rounds,
    run_cli,
    simulate,
    unicast_transmit,
    unpack,
    verify_code,
    verify_flow,
)

__all__ = [
    "Error",
    "Field",
    "FieldTooSmall",
    "Flow",
    "InvariantError",
    "MulticastCode",
    "Network",
    "ParseError",
    "RetriesExhausted",
    "ValidationError",
    "build_code",
    "find_flow",
    "generate",
    "lift_network",
    "min_cut",
    "multicast_capacity",
    "pack",
    "required_rounds",
    "run_cli",
    "simulate",
    "unicast_transmit",
    "unpack",
    "verify_code",
    "verify_flow",
]
