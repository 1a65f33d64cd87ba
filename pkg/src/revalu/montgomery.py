"""Montgomery modular multiplication, word-level and gate-level.

The word-level routine keeps the running value in carry-save form: two
words S and C whose sum is the partial product. Each scan step adds
x_i * Y, then adds s0 * M to clear the parity bit (M is odd, so adding
M flips parity), then halves both words. After n steps S + C equals
X * Y * 2^(-n) modulo M, up to one final conditional subtraction.

The gate-level datapath mirrors that loop with reversible hardware:

    shift regs (S, C) --> CSA stage 1 (+ x_i * Y) --> registers S, C
        ^                                                  | LSB tap
        |                                                  v
        +------- divide-by-2 shift <-- CSA stage 2 (+ s0 * M)

Each CSA stage is a row of TSG full adders; the x_i and s0 operand
gating is done with Toffoli AND gates fed by Feynman copy chains, so
the per-cycle cores are ordinary valid reversible netlists. X is
consumed bit-serially out of its own shift register. The closing
carry-propagate addition P = S + C runs on a gate-level ripple adder;
the final conditional subtraction is performed at word level.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .arith import build_cpa
from .bits import from_bits, to_bits
from .gates import FEYNMAN, TOFFOLI, TSG
from .netlist import CostReport, GateInstance, Netlist
from .sequential import Register, ShiftRegister


@dataclass(frozen=True)
class MontParams:
    """Modulus and scan length; the residue scale factor is R = 2^n."""

    modulus: int
    n: int

    def __post_init__(self):
        if self.modulus < 1 or self.modulus % 2 == 0:
            raise ValueError(f"modulus must be odd and positive, got {self.modulus}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.modulus >> self.n:
            raise ValueError(
                f"modulus {self.modulus} does not fit in n={self.n} bits"
            )

    @classmethod
    def for_modulus(cls, modulus: int, n: int | None = None) -> "MontParams":
        """Params with the minimal scan length unless n is given."""
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        return cls(modulus, modulus.bit_length() if n is None else n)

    @property
    def r(self) -> int:
        return 1 << self.n

    @property
    def register_width(self) -> int:
        # S, C < 2M and one in-flight addend each < M keep every
        # intermediate below 4M < 2^(n+2).
        return self.n + 2


def _check_operand(name: str, value: int, params: MontParams) -> None:
    if not 0 <= value < params.modulus:
        raise ValueError(
            f"{name}={value} out of range [0, {params.modulus}) for modulus "
            f"{params.modulus}"
        )


def _csa_words(u: int, v: int, w: int) -> tuple[int, int]:
    """Carry-save step: exact sum split into an XOR word and a carry word."""
    return u ^ v ^ w, ((u & v) | (u & w) | (v & w)) << 1


@dataclass(frozen=True)
class CycleRecord:
    """One scan step of the multiplier loop."""

    index: int
    x_bit: int
    s0: int
    total_after_multiplicand: int
    total_after_parity_clear: int
    s: int
    c: int


@dataclass(frozen=True)
class MontTrace:
    params: MontParams
    x: int
    y: int
    cycles: tuple[CycleRecord, ...]
    product: int


def mont_mult_word(x: int, y: int, params: MontParams) -> int:
    """Compute x * y * 2^(-n) mod M by the carry-save scan."""
    _check_operand("x", x, params)
    _check_operand("y", y, params)
    m = params.modulus
    s = c = 0
    for i in range(params.n):
        if (x >> i) & 1:
            s, c = _csa_words(s, c, y)
        else:
            s, c = _csa_words(s, c, 0)
        if s & 1:
            s, c = _csa_words(s, c, m)
        else:
            s, c = _csa_words(s, c, 0)
        # Adding M when the parity bit is set makes both words even,
        # so the halving below is exact.
        assert s & 1 == 0 and c & 1 == 0
        s >>= 1
        c >>= 1
    p = s + c
    if p >= m:
        p -= m
    return p


def mont_mult_trace(x: int, y: int, params: MontParams) -> MontTrace:
    """As `mont_mult_word`, recording the per-cycle register values."""
    _check_operand("x", x, params)
    _check_operand("y", y, params)
    m = params.modulus
    s = c = 0
    cycles = []
    for i in range(params.n):
        xi = (x >> i) & 1
        s, c = _csa_words(s, c, y if xi else 0)
        t3 = s + c
        s0 = s & 1
        s, c = _csa_words(s, c, m if s0 else 0)
        t4 = s + c
        assert s & 1 == 0 and c & 1 == 0
        assert t4 % 2 == 0
        s >>= 1
        c >>= 1
        assert s + c < 2 * m
        cycles.append(CycleRecord(i, xi, s0, t3, t4, s, c))
    p = s + c
    if p >= m:
        p -= m
    return MontTrace(params, x, y, tuple(cycles), p)


def to_mont(x: int, params: MontParams) -> int:
    """Enter the residue domain: x * 2^n mod M."""
    _check_operand("x", x, params)
    return (x << params.n) % params.modulus


def from_mont(xbar: int, params: MontParams) -> int:
    """Leave the residue domain: multiply by 1 strips the 2^n factor."""
    _check_operand("xbar", xbar, params)
    return mont_mult_word(xbar, 1, params)


def mont_exp(a: int, b: int, modulus: int) -> int:
    """a^b mod modulus by left-to-right binary square and multiply.

    Every squaring and conditional multiplication is a Montgomery
    product; operands enter the residue domain once and the result
    leaves it once at the end.
    """
    if modulus < 3 or modulus % 2 == 0:
        raise ValueError(f"modulus must be odd and >= 3, got {modulus}")
    if b < 0:
        raise ValueError(f"exponent must be non-negative, got {b}")
    params = MontParams.for_modulus(modulus)
    _check_operand("a", a, params)
    abar = to_mont(a, params)
    result = to_mont(1, params)
    for i in reversed(range(b.bit_length())):
        result = mont_mult_word(result, result, params)
        if (b >> i) & 1:
            result = mont_mult_word(result, abar, params)
    return from_mont(result, params)


# -- gate-level datapath ---------------------------------------------


def _csa_stage(width: int, n: int, *, bus: str, tap_lsb: bool, name: str) -> Netlist:
    """One carry-save stage: a TSG full-adder row plus operand gating.

    Adds `gate_bit * bus` to the two running words. The gating bit is
    either the external input `x` (tap_lsb=False) or the stage's own
    LSB input `si0` (tap_lsb=True); Feynman chains replicate it for the
    Toffoli AND row, which keeps every wire single-sink.
    """
    gates: list[GateInstance] = []
    garbage: list[str] = []
    consts: dict[str, int] = {}

    if tap_lsb:
        source = "si0"
        n_copies = n  # n AND lines plus the pass-through back into slice 0
    else:
        source = "x"
        n_copies = n - 1  # n AND lines total, the source itself is one

    lines: list[str] = []
    cur = source
    for k in range(n_copies):
        consts[f"fz{k}"] = 0
        gates.append(GateInstance(FEYNMAN, (cur, f"fz{k}"), (f"ft{k}", f"fc{k}")))
        lines.append(f"fc{k}")
        cur = f"ft{k}"
    and_lines = lines + [cur] if not tap_lsb else lines
    slice0_a = cur if tap_lsb else "si0"
    assert len(and_lines) == n

    products: list[str] = []
    for j in range(n):
        consts[f"tz{j}"] = 0
        gates.append(
            GateInstance(
                TOFFOLI,
                (and_lines[j], f"{bus}{j}", f"tz{j}"),
                (f"tg{j}a", f"tg{j}b", f"p{j}"),
            )
        )
        garbage += [f"tg{j}a", f"tg{j}b"]
        products.append(f"p{j}")

    for j in range(width):
        consts[f"az{j}"] = 0
        if j < n:
            addend = products[j]
        else:
            consts[f"pz{j}"] = 0
            addend = f"pz{j}"
        a_in = slice0_a if j == 0 else f"si{j}"
        gates.append(
            GateInstance(
                TSG,
                (a_in, f"ci{j}", f"az{j}", addend),
                (f"fa{j}a", f"fa{j}b", f"sum{j}", f"car{j}"),
            )
        )
        garbage += [f"fa{j}a", f"fa{j}b"]

    primary_inputs = (
        [f"si{j}" for j in range(width)]
        + [f"ci{j}" for j in range(width)]
        + [f"{bus}{j}" for j in range(n)]
    )
    if not tap_lsb:
        primary_inputs.append("x")
    return Netlist(
        primary_inputs=primary_inputs,
        constants=consts,
        gates=gates,
        primary_outputs=[f"sum{j}" for j in range(width)]
        + [f"car{j}" for j in range(width)],
        garbage_outputs=garbage,
        name=name,
    )


@dataclass(frozen=True)
class MontRun:
    """Record of one datapath execution, snapshots included.

    `snapshots` holds the concatenated register state after reset and
    after each scan cycle, for switching-activity analysis.
    """

    x: int
    y: int
    modulus: int
    n: int
    product: int
    cycles: tuple[CycleRecord, ...]
    snapshots: tuple[tuple[int, ...], ...]
    metadata: dict = field(default_factory=dict)


class MontDatapath:
    """Bit-serial Montgomery multiplier assembled from reversible parts.

    Single-stepper: one run at a time per instance. The most recent run
    record is kept on `last_run`.
    """

    def __init__(self, params: MontParams):
        self.params = params
        w = params.register_width
        n = params.n
        self.stage1 = _csa_stage(w, n, bus="y", tap_lsb=False, name="csa_stage1")
        self.stage2 = _csa_stage(w, n, bus="m", tap_lsb=True, name="csa_stage2")
        assert self.stage1.validate().ok and self.stage2.validate().ok
        self.s_reg = Register(w)
        self.c_reg = Register(w)
        self.s_shift = ShiftRegister(w)
        self.c_shift = ShiftRegister(w)
        self.x_shift = ShiftRegister(n)
        self.y_reg = Register(n)
        self.m_reg = Register(n)
        self.final_adder = build_cpa(w)
        self.m_reg.load_value(params.modulus)
        self.last_run: MontRun | None = None

    # -- accounting ---------------------------------------------------

    @property
    def cores(self) -> tuple[Netlist, ...]:
        """Every combinational netlist in the datapath, latch cores included."""
        sequential_parts = (
            self.s_reg,
            self.c_reg,
            self.s_shift,
            self.c_shift,
            self.x_shift,
            self.y_reg,
            self.m_reg,
        )
        latch_cores = tuple(c for part in sequential_parts for c in part.cores)
        return (self.stage1, self.stage2, self.final_adder) + latch_cores

    def component_costs(self) -> dict[str, CostReport]:
        return {
            "csa_stage1": self.stage1.cost_report(),
            "csa_stage2": self.stage2.cost_report(),
            "s_reg": self.s_reg.cost_report(),
            "c_reg": self.c_reg.cost_report(),
            "s_shift": self.s_shift.cost_report(),
            "c_shift": self.c_shift.cost_report(),
            "x_shift": self.x_shift.cost_report(),
            "y_reg": self.y_reg.cost_report(),
            "m_reg": self.m_reg.cost_report(),
            "final_adder": self.final_adder.cost_report(),
        }

    def cost_report(self) -> CostReport:
        """Field-wise sum over all components (sequential-composition bound)."""
        total = CostReport(0, 0, 0, 0)
        for report in self.component_costs().values():
            total = total + report
        return total

    @property
    def garbage_bits_emitted(self) -> int:
        parts = (
            self.s_reg,
            self.c_reg,
            self.s_shift,
            self.c_shift,
            self.x_shift,
            self.y_reg,
            self.m_reg,
        )
        return sum(p.garbage_bits_emitted for p in parts)

    def _snapshot(self) -> tuple[int, ...]:
        return (
            self.s_shift.state
            + self.c_shift.state
            + self.s_reg.state
            + self.c_reg.state
            + self.x_shift.state
            + self.y_reg.state
            + self.m_reg.state
        )

    # -- execution ----------------------------------------------------

    def _stage_inputs(self, stage_s: int, stage_c: int, bus: str, bus_value: int
                      ) -> dict[str, int]:
        w = self.params.register_width
        n = self.params.n
        values = {f"si{j}": b for j, b in enumerate(to_bits(stage_s, w))}
        values.update({f"ci{j}": b for j, b in enumerate(to_bits(stage_c, w))})
        values.update({f"{bus}{j}": b for j, b in enumerate(to_bits(bus_value, n))})
        return values

    def run(self, x: int, y: int) -> int:
        """Clock the datapath n cycles and resolve the product."""
        params = self.params
        _check_operand("x", x, params)
        _check_operand("y", y, params)
        w = params.register_width

        self.s_shift.load_value(0)
        self.c_shift.load_value(0)
        self.s_reg.load_value(0)
        self.c_reg.load_value(0)
        self.x_shift.load_value(x)
        self.y_reg.load_value(y)
        self.m_reg.load_value(params.modulus)

        snapshots = [self._snapshot()]
        cycles = []
        for i in range(params.n):
            xi = self.x_shift.value & 1

            out1 = self.stage1.simulate(
                {**self._stage_inputs(self.s_shift.value, self.c_shift.value, "y",
                                      self.y_reg.value), "x": xi}
            )
            sum1 = from_bits(out1[f"sum{j}"] for j in range(w))
            car1 = from_bits(out1[f"car{j}"] for j in range(w))
            assert car1 >> (w - 1) == 0  # bounded, never spills past the register
            self.s_reg.load(sum1)
            self.c_reg.load((car1 << 1) & ((1 << w) - 1))
            s0 = self.s_reg.value & 1
            total_after_multiplicand = self.s_reg.value + self.c_reg.value

            out2 = self.stage2.simulate(
                self._stage_inputs(self.s_reg.value, self.c_reg.value, "m",
                                   self.m_reg.value)
            )
            sum2 = from_bits(out2[f"sum{j}"] for j in range(w))
            car2 = from_bits(out2[f"car{j}"] for j in range(w))
            assert car2 >> (w - 1) == 0
            assert sum2 & 1 == 0  # parity cleared, halving is exact
            total_after_parity_clear = sum2 + (car2 << 1)

            self.s_shift.load_value(sum2)
            self.s_shift.pulse(sin=0)
            self.c_shift.load_value((car2 << 1) & ((1 << w) - 1))
            self.c_shift.pulse(sin=0)
            self.x_shift.pulse(sin=0)
            # Holding registers see the clock too; enable stays low.
            self.y_reg.step({"e": 0, **{f"d{j}": 0 for j in range(params.n)}})
            self.m_reg.step({"e": 0, **{f"d{j}": 0 for j in range(params.n)}})

            cycles.append(
                CycleRecord(
                    i,
                    xi,
                    s0,
                    total_after_multiplicand,
                    total_after_parity_clear,
                    self.s_shift.value,
                    self.c_shift.value,
                )
            )
            snapshots.append(self._snapshot())

        final = self.final_adder.simulate(
            {
                **{f"a{j}": b for j, b in enumerate(to_bits(self.s_shift.value, w))},
                **{f"b{j}": b for j, b in enumerate(to_bits(self.c_shift.value, w))},
                "cin": 0,
            }
        )
        p = from_bits(final[f"s{j}"] for j in range(w))
        p |= final["cout"] << w
        if p >= params.modulus:
            p -= params.modulus
        self.last_run = MontRun(
            x=x,
            y=y,
            modulus=params.modulus,
            n=params.n,
            product=p,
            cycles=tuple(cycles),
            snapshots=tuple(snapshots),
            metadata={"x": x, "y": y, "m": params.modulus, "n": params.n},
        )
        return p


def build_mont_datapath(params: MontParams) -> MontDatapath:
    return MontDatapath(params)


def run_mont_datapath(datapath: MontDatapath, x: int, y: int) -> int:
    return datapath.run(x, y)
