"""Search for deployment mappings that maximize the evaluation score.

Three solvers share one request/result shape:

* ``solve_exhaustive`` tries every completion of the pins and is the
  correctness oracle for the other two.
* ``solve_branch_and_bound`` walks the same space depth-first, abandoning a
  partial assignment as soon as it breaks a constraint or its optimistic bound
  cannot beat the incumbent. It returns the same optimal score as the oracle.
* ``solve_local_search`` is seeded multi-restart steepest-ascent hill climbing
  with no optimality guarantee.

When nothing feasible is found, ``score`` is -1 and ``mapping`` is None.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .errors import InstanceTooLarge, UnknownId
from .evaluation import ScoreWeights, evaluate, tally
from .model import DeploymentMapping, HardwareModel, SoftwareModel

DEFAULT_EXHAUSTIVE_CAP = 10 ** 7
NOT_FOUND_SCORE = -1


@dataclass(frozen=True)
class SolveRequest:
    hw: HardwareModel
    sw: SoftwareModel
    weights: ScoreWeights = ScoreWeights()
    pins: Mapping[str, str] = field(default_factory=dict)
    seed: int = 0
    restarts: int = 10
    max_iters: int = 1000
    exhaustive_cap: int = DEFAULT_EXHAUSTIVE_CAP

    def __post_init__(self):
        object.__setattr__(self, "pins", dict(self.pins))
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be an unsigned integer, got {self.seed!r}")
        if self.restarts < 1:
            raise ValueError(f"restarts must be positive, got {self.restarts}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be positive, got {self.max_iters}")

    def check_pins(self):
        for comp in sorted(self.pins):
            if comp not in self.sw.component_by_id:
                raise UnknownId("component", comp)
            if self.pins[comp] not in self.hw.ecu_by_id:
                raise UnknownId("ECU", self.pins[comp])

    @property
    def free_components(self) -> Tuple[str, ...]:
        """Unpinned component ids, ascending."""
        return tuple(c for c in self.sw.component_ids if c not in self.pins)


@dataclass(frozen=True)
class SolveResult:
    mapping: Optional[DeploymentMapping]
    score: int
    feasible: bool
    explored: int

    def to_dict(self):
        return {
            "feasible": self.feasible,
            "score": self.score,
            "mapping": None if self.mapping is None else dict(sorted(self.mapping.items())),
            "explored": self.explored,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _found(best: Optional[Tuple[int, Dict[str, str]]], explored: int) -> SolveResult:
    if best is None:
        return SolveResult(None, NOT_FOUND_SCORE, False, explored)
    score, assignment = best
    return SolveResult(DeploymentMapping(assignment), score, True, explored)


# -----------------------------------------------------------------------------
# Exhaustive oracle
# -----------------------------------------------------------------------------

def enumerate_mappings(hw: HardwareModel, sw: SoftwareModel,
                       pins: Mapping[str, str] = None) -> Iterator[Dict[str, str]]:
    """Every completion of ``pins``: components by id, ECUs by id, odometer order."""
    pins = dict(pins or {})
    free = [c for c in sw.component_ids if c not in pins]
    for images in itertools.product(hw.ecu_ids, repeat=len(free)):
        assignment = dict(pins)
        assignment.update(zip(free, images))
        yield assignment


def solve_exhaustive(req: SolveRequest) -> SolveResult:
    req.check_pins()
    size = len(req.hw.ecu_ids) ** len(req.free_components)
    if size > req.exhaustive_cap:
        raise InstanceTooLarge(size, req.exhaustive_cap)
    best = None
    explored = 0
    for assignment in enumerate_mappings(req.hw, req.sw, req.pins):
        explored += 1
        t = tally(req.hw, req.sw, assignment)
        if t.violations:
            continue
        score = t.score(req.hw, req.sw, req.weights)
        if best is None or score > best[0]:
            best = (score, assignment)
    return _found(best, explored)


# -----------------------------------------------------------------------------
# Branch and bound
# -----------------------------------------------------------------------------

def solve_branch_and_bound(req: SolveRequest) -> SolveResult:
    req.check_pins()
    hw, sw, weights = req.hw, req.sw, req.weights
    order = sorted(req.free_components, key=lambda c: (-sw.component(c).demand, c))
    values = hw.ecu_ids
    assignment = dict(req.pins)
    best: Optional[Tuple[int, Dict[str, str]]] = None
    explored = 1

    # bound of the partial assignment; None if it already breaks a constraint
    def bound() -> Optional[int]:
        t = tally(hw, sw, assignment)
        return None if t.violations else t.score(hw, sw, weights)

    def dive(depth: int):
        nonlocal best, explored
        for ecu in values:
            assignment[order[depth]] = ecu
            explored += 1
            b = bound()
            if b is not None and (best is None or b > best[0]):
                if depth + 1 == len(order):
                    # a complete feasible assignment scores exactly its bound
                    best = (b, dict(assignment))
                else:
                    dive(depth + 1)
        del assignment[order[depth]]

    root = bound()
    if root is not None:
        if order:
            dive(0)
        else:
            best = (root, dict(assignment))
    return _found(best, explored)


# -----------------------------------------------------------------------------
# Local search
# -----------------------------------------------------------------------------

def solve_local_search(req: SolveRequest) -> SolveResult:
    req.check_pins()
    hw, sw, weights = req.hw, req.sw, req.weights
    rng = random.Random(req.seed)
    free = req.free_components
    ecus = hw.ecu_ids
    best: Optional[Tuple[int, Dict[str, str]]] = None
    explored = 0

    def objective(assignment: Dict[str, str]) -> int:
        nonlocal best, explored
        explored += 1
        t = tally(hw, sw, assignment)
        if t.violations:
            return -1000 * len(t.violations)
        score = t.score(hw, sw, weights)
        if best is None or score > best[0]:
            best = (score, dict(assignment))
        return score

    for _ in range(req.restarts):
        current = dict(req.pins)
        for comp in free:
            current[comp] = rng.choice(ecus)
        value = objective(current)
        for _ in range(req.max_iters):
            move = None
            for comp in free:
                was = current[comp]
                for ecu in ecus:
                    if ecu == was:
                        continue
                    current[comp] = ecu
                    candidate = objective(current)
                    if candidate > value:
                        value, move = candidate, (comp, ecu)
                current[comp] = was
            if move is None:
                break
            current[move[0]] = move[1]
    return _found(best, explored)


SOLVERS = {
    "exhaustive": solve_exhaustive,
    "bnb": solve_branch_and_bound,
    "local": solve_local_search,
}


def solve(req: SolveRequest, solver: str = "bnb") -> SolveResult:
    try:
        fn = SOLVERS[solver]
    except KeyError:
        raise ValueError(f"unknown solver {solver!r}; choose from {sorted(SOLVERS)}") from None
    return fn(req)


def feasible_completions(hw: HardwareModel, sw: SoftwareModel,
                         pins: Mapping[str, str] = None) -> List[Dict[str, str]]:
    """All feasible completions of ``pins``, in enumeration order."""
    return [a for a in enumerate_mappings(hw, sw, pins) if not tally(hw, sw, a).violations]


def verify(req: SolveRequest, result: SolveResult) -> bool:
    """Check a result's internal consistency against a fresh evaluation."""
    if not result.feasible:
        return result.mapping is None
    ev = evaluate(req.hw, req.sw, result.mapping, req.weights)
    return ev.feasible and ev.score == result.score and all(
        result.mapping[c] == e for c, e in req.pins.items())
