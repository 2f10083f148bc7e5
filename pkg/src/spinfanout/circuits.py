"""Circuit data model and builders for the parity/fanout constructions.

A circuit is an ordered list of steps; the first listed step acts first.
The builders follow the qubit layout used throughout the package: for an
(n+1)-qubit parity or fanout circuit, the source wires are qubits
0..n-2, the rotated helper wire is qubit n-1, and the accumulator (the
fanout control) is qubit n.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_CAPS,
    DenseOperator,
    DiagonalOperator,
    Operator,
    SizeCaps,
    StateVector,
    apply_gate,
    compose,
    embed,
)
from .gates import GateDef, standard_gate
from .hamiltonians import un, un_dagger


@dataclass(frozen=True)
class Step:
    gate: GateDef
    targets: tuple[int, ...]


@dataclass(frozen=True)
class Circuit:
    n: int
    steps: tuple[Step, ...]

    def __post_init__(self):
        for step in self.steps:
            if len(set(step.targets)) != len(step.targets):
                raise IndexError(f"duplicate targets in step {step}")
            if any(not 0 <= t < self.n for t in step.targets):
                raise IndexError(f"target out of range in step {step}")
            if step.gate.arity != len(step.targets):
                raise IndexError(
                    f"gate {step.gate.name} wants {step.gate.arity} targets, "
                    f"got {len(step.targets)}"
                )

    def __len__(self) -> int:
        return len(self.steps)


def _evolution_gate(name: str, n: int, caps: SizeCaps) -> GateDef:
    if name == "UN":
        return GateDef("UN", n, un(n, caps=caps))
    if name == "UNDAG":
        return GateDef("UNDAG", n, un_dagger(n, caps=caps))
    raise KeyError(f"unknown evolution {name!r}")


def compile_circuit(c: Circuit, caps: SizeCaps = DEFAULT_CAPS) -> DenseOperator:
    """Product of the step unitaries embedded on their targets."""
    caps.check_dense(c.n)
    result: Operator = DiagonalOperator.identity(c.n)
    for step in c.steps:
        full = embed(step.gate.unitary, list(step.targets), c.n)
        result = compose(full, result)
    return result.to_dense()


def run_circuit(c: Circuit, state: StateVector) -> StateVector:
    """Apply the circuit's steps to a state, in order."""
    for step in c.steps:
        state = apply_gate(state, step.gate.unitary, list(step.targets))
    return state


def dagger(c: Circuit) -> Circuit:
    """Reversed circuit with each gate replaced by its exact adjoint."""
    inverse_name = {"S": "SDAG", "SDAG": "S", "UN": "UNDAG", "UNDAG": "UN"}
    steps = []
    for step in reversed(c.steps):
        g = step.gate
        name = inverse_name.get(g.name, g.name)
        steps.append(Step(GateDef(name, g.arity, g.unitary.dagger()), step.targets))
    return Circuit(c.n, tuple(steps))


def _use_swapped_evolution(n: int) -> bool:
    """Whether the evolution and its adjoint trade places (n = 0 mod 4)."""
    return n % 4 == 0


def _evolution_pair(n: int, swapped: bool, caps: SizeCaps) -> tuple[GateDef, GateDef]:
    e = _evolution_gate("UNDAG" if swapped else "UN", n, caps)
    e_inv = _evolution_gate("UN" if swapped else "UNDAG", n, caps)
    return e, e_inv


def parity_circuit(
    n: int, swapped: bool | None = None, caps: SizeCaps = DEFAULT_CAPS
) -> Circuit:
    """(n+1)-qubit circuit computing the parity of qubits 0..n-1 into qubit n.

    ``swapped`` selects which of the evolution/adjoint pair comes first;
    by default it follows the mod-4 rule that makes the identity hold.
    Forcing the wrong value is useful as a negative control.
    """
    if n % 2 != 0 or n < 2:
        raise ValueError(f"parity circuit needs even n >= 2, got {n}")
    caps.check_dense(n + 1)
    if swapped is None:
        swapped = _use_swapped_evolution(n)
    e, e_inv = _evolution_pair(n, swapped, caps)
    h = standard_gate("H")
    s = standard_gate("S")
    sdag = standard_gate("SDAG")
    cnot = standard_gate("CNOT")
    all_n = tuple(range(n))
    r = n - 1  # the rotated helper wire
    steps = (
        Step(h, (r,)),
        Step(e, all_n),
        Step(sdag, (r,)),
        Step(h, (r,)),
        Step(cnot, (r, n)),  # control r, target accumulator
        Step(h, (r,)),
        Step(s, (r,)),
        Step(e_inv, all_n),
        Step(h, (r,)),
    )
    return Circuit(n + 1, steps)


def parity_like_circuit(
    n: int, swapped: bool | None = None, caps: SizeCaps = DEFAULT_CAPS
) -> Circuit:
    """n-qubit circuit with one evolution: parity lands on qubit n-1.

    For inputs with qubit n-1 in |0>, the output is a unit-phase multiple
    of the input with qubit n-1 replaced by the parity of the others.
    """
    if n % 2 != 0 or n < 2:
        raise ValueError(f"parity-like circuit needs even n >= 2, got {n}")
    caps.check_dense(n)
    if swapped is None:
        swapped = _use_swapped_evolution(n)
    e, _ = _evolution_pair(n, swapped, caps)
    h = standard_gate("H")
    sdag = standard_gate("SDAG")
    r = n - 1
    steps = (
        Step(h, (r,)),
        Step(e, tuple(range(n))),
        Step(sdag, (r,)),
        Step(h, (r,)),
        Step(sdag, (r,)),
    )
    return Circuit(n, steps)


def fanout_circuit(
    n: int, swapped: bool | None = None, caps: SizeCaps = DEFAULT_CAPS
) -> Circuit:
    """(n+1)-qubit fanout from the parity circuit conjugated by Hadamards.

    The fanout control is qubit n (the parity accumulator wire).
    """
    if n % 2 != 0 or n < 2:
        raise ValueError(f"fanout circuit needs even n >= 2, got {n}")
    caps.check_dense(n + 1)
    h = standard_gate("H")
    pre = tuple(Step(h, (q,)) for q in range(n + 1))
    mid = parity_circuit(n, swapped=swapped, caps=caps).steps
    post = tuple(Step(h, (q,)) for q in range(n + 1))
    return Circuit(n + 1, pre + mid + post)


def _steps_are_inverse(a: Step, b: Step) -> bool:
    if a.targets != b.targets:
        return False
    ua, ub = a.gate.unitary, b.gate.unitary
    if isinstance(ua, DiagonalOperator) and isinstance(ub, DiagonalOperator):
        return bool(np.max(np.abs(ua.entries * ub.entries - 1.0)) < 1e-12)
    prod = compose(ub, ua).to_dense().matrix
    return bool(np.max(np.abs(prod - np.eye(prod.shape[0]))) < 1e-12)


def simplify(c: Circuit) -> Circuit:
    """Cancel adjacent inverse pairs (H.H, S.Sdag, ...) until a fixpoint.

    Two steps are adjacent on a wire if no step between them touches any
    of their qubits.
    """
    steps = list(c.steps)
    changed = True
    while changed:
        changed = False
        for i in range(len(steps)):
            blocked = set(steps[i].targets)
            for j in range(i + 1, len(steps)):
                overlap = blocked & set(steps[j].targets)
                if not overlap:
                    continue
                if set(steps[j].targets) == set(steps[i].targets) and _steps_are_inverse(
                    steps[i], steps[j]
                ):
                    del steps[j]
                    del steps[i]
                    changed = True
                break
            if changed:
                break
    return Circuit(c.n, tuple(steps))


def simplified_fanout_circuit(
    n: int, swapped: bool | None = None, caps: SizeCaps = DEFAULT_CAPS
) -> Circuit:
    """Fanout circuit after peephole cancellation; same unitary, fewer gates."""
    full = fanout_circuit(n, swapped=swapped, caps=caps)
    reduced = simplify(full)
    if len(reduced) >= len(full):
        raise AssertionError("simplification removed no gates")
    return reduced


def to_text(c: Circuit) -> str:
    """Line-oriented serialization: one step per line, ``GATE q_i [q_j]``.

    Evolutions on qubits 0..k-1 serialize as ``UN k`` / ``UNDAG k``.
    """
    lines = []
    for step in c.steps:
        if step.gate.name in ("UN", "UNDAG"):
            k = step.gate.arity
            if step.targets != tuple(range(k)):
                raise ValueError("evolution steps must act on qubits 0..k-1")
            lines.append(f"{step.gate.name} {k}")
        else:
            lines.append(" ".join([step.gate.name] + [str(t) for t in step.targets]))
    return "\n".join(lines) + "\n"


def from_text(
    text: str, n: int | None = None, caps: SizeCaps = DEFAULT_CAPS
) -> Circuit:
    """Parse the line format of :func:`to_text`.

    ``n`` defaults to one more than the highest qubit index mentioned.
    """
    raw_steps: list[tuple[str, tuple[int, ...]]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        name = parts[0].upper()
        try:
            args = [int(p) for p in parts[1:]]
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad qubit index in {line!r}") from exc
        if name in ("UN", "UNDAG"):
            if len(args) != 1 or args[0] < 1:
                raise ValueError(f"line {lineno}: {name} takes one positive size")
            raw_steps.append((name, tuple(range(args[0]))))
        else:
            standard_gate(name)  # raises KeyError on unknown gates
            raw_steps.append((name, tuple(args)))
    if not raw_steps and n is None:
        raise ValueError("empty circuit with no qubit count given")
    inferred = max((max(t) + 1 for _, t in raw_steps if t), default=1)
    n = inferred if n is None else n
    steps = []
    for name, targets in raw_steps:
        if name in ("UN", "UNDAG"):
            steps.append(Step(_evolution_gate(name, len(targets), caps), targets))
        else:
            steps.append(Step(standard_gate(name), targets))
    return Circuit(n, tuple(steps))
