"""Reversible-logic circuit toolkit.

Gate primitives, strict single-sink netlists with forward and inverse
simulation, TSG-based adder generators, Fredkin-latch sequential
elements, a bit-serial carry-save Montgomery multiplier, and
information-erasure / switching-activity accounting with a small DPA
analysis harness.
"""

from .arith import (
    IrreversibleGate,
    IrreversibleNetlist,
    build_cpa,
    build_csa42,
    build_csa52,
    build_full_adder,
    build_irreversible_cpa,
)
from .energy import (
    K_BOLTZMANN,
    EnergyReport,
    ErasureReport,
    PowerTrace,
    dpa_diff_of_means,
    energy_report,
    erasure_bits,
    erasure_report,
    esig_energy,
    landauer_energy,
    switching_trace,
)
from .gates import (
    FEYNMAN,
    FREDKIN,
    STANDARD_GATES,
    TOFFOLI,
    TSG,
    GateKind,
    GateReport,
    apply_gate,
    invert_gate,
    tsg_as_full_adder,
    verify_gate,
)
from .montgomery import (
    CycleRecord,
    MontDatapath,
    MontParams,
    MontRun,
    MontTrace,
    build_mont_datapath,
    from_mont,
    mont_exp,
    mont_mult_trace,
    mont_mult_word,
    run_mont_datapath,
    to_mont,
)
from .netlist import (
    CostReport,
    GateInstance,
    Netlist,
    NetlistError,
    ReversibilityReport,
    ValidationReport,
    Violation,
    check_reversibility,
)
from .rnl import RnlSyntaxError, parse_rnl, serialize_rnl
from .sequential import (
    ClockedCircuit,
    DLatch,
    MasterSlaveDFF,
    Register,
    ShiftRegister,
    build_d_latch,
    build_ms_dff,
    build_register,
    build_shift_register,
)

__version__ = "0.1.0"

__all__ = [
    "CostReport",
    "CycleRecord",
    "DLatch",
    "ClockedCircuit",
    "EnergyReport",
    "ErasureReport",
    "FEYNMAN",
    "FREDKIN",
    "GateInstance",
    "GateKind",
    "GateReport",
    "IrreversibleGate",
    "IrreversibleNetlist",
    "K_BOLTZMANN",
    "MasterSlaveDFF",
    "MontDatapath",
    "MontParams",
    "MontRun",
    "MontTrace",
    "Netlist",
    "NetlistError",
    "PowerTrace",
    "Register",
    "ReversibilityReport",
    "RnlSyntaxError",
    "STANDARD_GATES",
    "ShiftRegister",
    "TOFFOLI",
    "TSG",
    "ValidationReport",
    "Violation",
    "apply_gate",
    "build_cpa",
    "build_csa42",
    "build_csa52",
    "build_d_latch",
    "build_full_adder",
    "build_irreversible_cpa",
    "build_mont_datapath",
    "build_ms_dff",
    "build_register",
    "build_shift_register",
    "check_reversibility",
    "dpa_diff_of_means",
    "energy_report",
    "erasure_bits",
    "erasure_report",
    "esig_energy",
    "from_mont",
    "invert_gate",
    "landauer_energy",
    "mont_exp",
    "mont_mult_trace",
    "mont_mult_word",
    "parse_rnl",
    "run_mont_datapath",
    "serialize_rnl",
    "switching_trace",
    "to_mont",
    "tsg_as_full_adder",
    "verify_gate",
]
