"""Run every decision method on one language and cross-check the verdicts."""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from .automata import Dfa, minimize
from .loopstep import DEFAULT_STATE_CAP, LoopStepWitness, algorithm1_exact, detect_loop_step, verify_witness
from .monoid import (
    DEFAULT_MONOID_CAP,
    NonPrimitivityWitness,
    non_primitivity_witness,
    transition_monoid,
    verify_non_primitivity,
)


@dataclass
class DecisionReport:
    input: str
    states: int
    monoid_size: int
    fc_definable: bool
    loop_step: LoopStepWitness | None
    group_primitive: bool
    non_primitivity: NonPrimitivityWitness | None
    algorithm1: bool | None
    methods_agree: bool
    witnesses_valid: bool
    timings: dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["loop_step"] = self.loop_step.to_dict() if self.loop_step else None
        out["non_primitivity"] = self.non_primitivity.to_dict() if self.non_primitivity else None
        out["group_primitive"] = {
            "value": self.group_primitive,
            "witness": out.pop("non_primitivity"),
        }
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "DecisionReport":
        gp = data["group_primitive"]
        return cls(
            input=data["input"],
            states=data["states"],
            monoid_size=data["monoid_size"],
            fc_definable=data["fc_definable"],
            loop_step=LoopStepWitness.from_dict(data["loop_step"]) if data["loop_step"] else None,
            group_primitive=gp["value"],
            non_primitivity=NonPrimitivityWitness.from_dict(gp["witness"]) if gp["witness"] else None,
            algorithm1=data["algorithm1"],
            methods_agree=data["methods_agree"],
            witnesses_valid=data["witnesses_valid"],
            timings=dict(data["timings"]),
        )

    def text(self) -> str:
        lines = [
            f"input: {self.input}",
            f"minimal DFA states: {self.states}",
            f"syntactic monoid size: {self.monoid_size}",
            f"FC-definable: {'yes' if self.fc_definable else 'no'}",
        ]
        if self.loop_step:
            lines.append(f"loop-step cycle: {self.loop_step}")
        else:
            lines.append("loop-step cycle: none")
        if self.non_primitivity:
            np = self.non_primitivity
            lines.append(
                f"group primitive: no (element {np.element}, words {np.word1!r} and {np.word2!r}, "
                f"index {np.index_period[0]}, period {np.index_period[1]})"
            )
        else:
            lines.append("group primitive: yes")
        if self.algorithm1 is not None:
            lines.append(f"configuration search finds a loop-step cycle: {'yes' if self.algorithm1 else 'no'}")
        lines.append(f"methods agree: {'yes' if self.methods_agree else 'NO'}")
        if not self.witnesses_valid:
            lines.append("WARNING: a witness failed replay")
        return "\n".join(lines)


def decide(d: Dfa, label: str = "<dfa>", run_algorithm1: bool = False,
           state_cap: int | None = DEFAULT_STATE_CAP,
           monoid_cap: int = DEFAULT_MONOID_CAP) -> DecisionReport:
    """Minimize ``d`` and run loop-step detection, the group-primitivity
    test and (optionally) the exhaustive configuration search."""
    timings: dict[str, float] = {}

    t0 = time.perf_counter()
    m = minimize(d)
    timings["minimize"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    monoid = transition_monoid(m, monoid_cap)
    npw = non_primitivity_witness(m, monoid)
    timings["group_primitive"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    lsw = detect_loop_step(m, state_cap)
    timings["loop_step"] = time.perf_counter() - t0

    a1 = None
    if run_algorithm1:
        t0 = time.perf_counter()
        a1 = algorithm1_exact(m, state_cap=state_cap)
        timings["algorithm1"] = time.perf_counter() - t0

    has_cycle = lsw is not None
    agree = has_cycle == (npw is not None) and (a1 is None or a1 == has_cycle)
    valid = (lsw is None or verify_witness(m, lsw)) and (npw is None or verify_non_primitivity(m, npw))
    return DecisionReport(
        input=label,
        states=m.n,
        monoid_size=len(monoid),
        fc_definable=not has_cycle,
        loop_step=lsw,
        group_primitive=npw is None,
        non_primitivity=npw,
        algorithm1=a1,
        methods_agree=agree,
        witnesses_valid=valid,
        timings=timings,
    )
