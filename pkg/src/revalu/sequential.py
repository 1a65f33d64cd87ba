"""Clocked reversible elements built on the Fredkin D latch.

The storage primitive is a level-sensitive D latch: one Fredkin gate
computes the next state (enable selects between held state and data)
and one Feynman gate copies it, one leg feeding the state back and the
other observable. Feedback lives in the stepper, not in the netlist:
each time step evaluates the acyclic combinational core once with the
previous state, so the cores stay verifiable as ordinary reversible
netlists.

Clock and enable rails may drive any number of elements; only data
wires are subject to the single-sink rule, and every element keeps its
own core netlist so no single netlist contains fan-out.

Each latch discards two bits per step (the enable pass-through and the
Fredkin swap residue); the running total is tracked per element because
garbage accumulates over time in sequential reversible logic.
"""

from __future__ import annotations

from typing import Mapping

from .bits import from_bits, to_bits
from .gates import FEYNMAN, FREDKIN
from .netlist import CostReport, GateInstance, Netlist


def _latch_core() -> Netlist:
    """Combinational core of the D latch, feedback edge cut.

    Inputs e (enable), d (data), q (previous state). The Fredkin gate
    is wired so its middle output is e'*q + e*d, i.e. the next state;
    the Feynman gate duplicates it into the feedback leg `qs` and the
    observable leg `qo`.
    """
    return Netlist(
        primary_inputs=["e", "d", "q"],
        constants={"z": 0},
        gates=[
            GateInstance(FREDKIN, ("e", "q", "d"), ("et", "qn", "gs")),
            GateInstance(FEYNMAN, ("qn", "z"), ("qs", "qo")),
        ],
        primary_outputs=["qs", "qo"],
        garbage_outputs=["et", "gs"],
        name="dlatch_core",
    )


def _bit(inputs: Mapping[str, int], name: str) -> int:
    try:
        value = inputs[name]
    except KeyError:
        raise ValueError(f"missing input {name!r}") from None
    if value not in (0, 1):
        raise ValueError(f"input {name!r} must be 0 or 1, got {value!r}")
    return value


class ClockedCircuit:
    """Base class for discrete-time reversible sequential elements.

    Instances carry mutable state; drive each instance from a single
    stepper. `step` consumes one input map and returns the observable
    outputs for that time step.
    """

    name = ""

    @property
    def cores(self) -> tuple[Netlist, ...]:
        raise NotImplementedError

    @property
    def state(self) -> tuple[int, ...]:
        """All latched bits, including any internal master stages."""
        raise NotImplementedError

    @property
    def value(self) -> int:
        """Observable content as a little-endian integer."""
        raise NotImplementedError

    @property
    def garbage_bits_emitted(self) -> int:
        raise NotImplementedError

    def step(self, inputs: Mapping[str, int]) -> dict[str, int]:
        raise NotImplementedError

    def load_value(self, value: int) -> None:
        """Force the stored contents (models a parallel-load/reset rail)."""
        raise NotImplementedError

    def cost_report(self) -> CostReport:
        total = CostReport(0, 0, 0, 0)
        for core in self.cores:
            total = total + core.cost_report()
        return total


class DLatch(ClockedCircuit):
    """Level-sensitive D latch: q' = e*d + e'*q. Transparent while e=1."""

    name = "dlatch"

    def __init__(self):
        self._core = _latch_core()
        assert self._core.validate().ok
        self._q = 0
        self._garbage = 0

    @property
    def cores(self) -> tuple[Netlist, ...]:
        return (self._core,)

    @property
    def state(self) -> tuple[int, ...]:
        return (self._q,)

    @property
    def value(self) -> int:
        return self._q

    @property
    def garbage_bits_emitted(self) -> int:
        return self._garbage

    def step(self, inputs: Mapping[str, int]) -> dict[str, int]:
        e = _bit(inputs, "e")
        d = _bit(inputs, "d")
        values = self._core._evaluate({"e": e, "d": d, "q": self._q, "z": 0})
        self._q = values["qs"]
        self._garbage += len(self._core.garbage_outputs)
        return {"q": values["qo"]}

    def load_value(self, value: int) -> None:
        if value not in (0, 1):
            raise ValueError(f"latch holds one bit, got {value!r}")
        self._q = value


class Register(ClockedCircuit):
    """Parallel bank of D latches with a shared enable.

    Inputs per step: `e` and `d0` .. `d{width-1}`; loads when e=1,
    holds when e=0.
    """

    name = "register"

    def __init__(self, width: int):
        if width < 1:
            raise ValueError(f"width must be >= 1, got {width}")
        self.width = width
        self._lanes = [DLatch() for _ in range(width)]

    @property
    def cores(self) -> tuple[Netlist, ...]:
        return tuple(core for lane in self._lanes for core in lane.cores)

    @property
    def state(self) -> tuple[int, ...]:
        return tuple(lane.value for lane in self._lanes)

    @property
    def value(self) -> int:
        return from_bits(self.state)

    @property
    def garbage_bits_emitted(self) -> int:
        return sum(lane.garbage_bits_emitted for lane in self._lanes)

    def step(self, inputs: Mapping[str, int]) -> dict[str, int]:
        e = _bit(inputs, "e")
        outputs = {}
        for i, lane in enumerate(self._lanes):
            out = lane.step({"e": e, "d": _bit(inputs, f"d{i}")})
            outputs[f"q{i}"] = out["q"]
        return outputs

    def load(self, value: int) -> None:
        """Clock the value in through the latches (one step with e=1)."""
        self.step({"e": 1, **{f"d{i}": b for i, b in enumerate(to_bits(value, self.width))}})

    def load_value(self, value: int) -> None:
        for lane, b in zip(self._lanes, to_bits(value, self.width)):
            lane.load_value(b)


class MasterSlaveDFF(ClockedCircuit):
    """Negative-edge D flip-flop from two latches.

    The master is transparent while cp=1, the slave while cp=0, so the
    observable output takes the captured data when the clock falls. The
    slave enable is the inverted clock; clock conditioning is treated
    as (irreversible) control plumbing outside the data path.
    """

    name = "dff"

    def __init__(self):
        self._master = DLatch()
        self._slave = DLatch()

    @property
    def cores(self) -> tuple[Netlist, ...]:
        return self._master.cores + self._slave.cores

    @property
    def state(self) -> tuple[int, ...]:
        return (self._master.value, self._slave.value)

    @property
    def value(self) -> int:
        return self._slave.value

    @property
    def garbage_bits_emitted(self) -> int:
        return self._master.garbage_bits_emitted + self._slave.garbage_bits_emitted

    def step(self, inputs: Mapping[str, int]) -> dict[str, int]:
        cp = _bit(inputs, "cp")
        d = _bit(inputs, "d")
        master_out = self._master.step({"e": cp, "d": d})
        slave_out = self._slave.step({"e": 1 - cp, "d": master_out["q"]})
        return {"q": slave_out["q"]}

    def pulse(self, d: int) -> dict[str, int]:
        """One full clock pulse: evaluate at cp=1, then at cp=0."""
        self.step({"cp": 1, "d": d})
        return self.step({"cp": 0, "d": d})

    def load_value(self, value: int) -> None:
        self._master.load_value(value)
        self._slave.load_value(value)


class ShiftRegister(ClockedCircuit):
    """Right-shifting register: a chain of master-slave flip-flops.

    Each clock pulse moves bit i+1 into bit i, feeds `sin` into the
    MSB, and drops the old LSB out of `sout`. With sin=0 one pulse
    halves the stored value, which is how the divide-by-two steps of
    the multiplier datapath are realized.
    """

    name = "shiftreg"

    def __init__(self, width: int):
        if width < 1:
            raise ValueError(f"width must be >= 1, got {width}")
        self.width = width
        self._flops = [MasterSlaveDFF() for _ in range(width)]

    @property
    def cores(self) -> tuple[Netlist, ...]:
        return tuple(core for f in self._flops for core in f.cores)

    @property
    def state(self) -> tuple[int, ...]:
        return tuple(b for f in self._flops for b in f.state)

    @property
    def value(self) -> int:
        return from_bits(tuple(f.value for f in self._flops))

    @property
    def garbage_bits_emitted(self) -> int:
        return sum(f.garbage_bits_emitted for f in self._flops)

    def step(self, inputs: Mapping[str, int]) -> dict[str, int]:
        cp = _bit(inputs, "cp")
        sin = _bit(inputs, "sin")
        # Capture neighbours before any flop moves.
        feed = [self._flops[i + 1].value for i in range(self.width - 1)] + [sin]
        outputs = {}
        for i, f in enumerate(self._flops):
            out = f.step({"cp": cp, "d": feed[i]})
            outputs[f"q{i}"] = out["q"]
        outputs["sout"] = outputs["q0"]
        return outputs

    def pulse(self, sin: int = 0) -> dict[str, int]:
        self.step({"cp": 1, "sin": sin})
        return self.step({"cp": 0, "sin": sin})

    def load_value(self, value: int) -> None:
        for f, b in zip(self._flops, to_bits(value, self.width)):
            f.load_value(b)


def build_d_latch() -> DLatch:
    return DLatch()


def build_ms_dff() -> MasterSlaveDFF:
    return MasterSlaveDFF()


def build_register(width: int) -> Register:
    return Register(width)


def build_shift_register(width: int) -> ShiftRegister:
    return ShiftRegister(width)
