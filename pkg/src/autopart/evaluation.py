"""Routing, hard-constraint checking and mapping quality scores.

The score of a mapping is an integer. A mapping that breaks any hard
constraint scores ``-(number of violations)``. A feasible mapping scores
``round(1000 * weighted headroom)`` where each headroom term is the worst
(minimum) remaining fraction of RAM, CPU, link bandwidth or latency budget
across the system. Every term can only shrink as demands are added, which is
what lets the branch-and-bound solver use a partial tally as an upper bound.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Mapping, Optional, Tuple

from .errors import IncompleteMapping, NoRouteExists, UnknownId
from .model import DeploymentMapping, HardwareModel, NetLink, SoftwareModel

MAX_SCORE = 1000


# -----------------------------------------------------------------------------
# Routing
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class Route:
    hops: Tuple[NetLink, ...] = ()
    total_latency_ms: float = 0

    @property
    def path(self) -> Tuple[str, ...]:
        """ECU ids visited, endpoints included (empty for a local route)."""
        if not self.hops:
            return ()
        return (self.hops[0].src,) + tuple(h.dst for h in self.hops)


_LOCAL = Route()


def _shortest_route(hw: HardwareModel, src: str, dst: str) -> Optional[Route]:
    # Dijkstra on the composite key (latency, hop count, intermediate ids).
    # The key is prefix-monotone, so label-setting stays exact for the tie-breaks.
    heap = [(0, 0, (), src, ())]
    settled = set()
    while heap:
        latency, nhops, via, node, hops = heapq.heappop(heap)
        if node in settled:
            continue
        settled.add(node)
        if node == dst:
            return Route(hops, latency)
        through = via + (node,) if node != src else via
        for link in hw.out_links[node]:
            if link.dst not in settled:
                heapq.heappush(
                    heap,
                    (latency + link.latency_ms, nhops + 1, through, link.dst, hops + (link,)),
                )
    return None


def _route_or_none(hw: HardwareModel, src: str, dst: str) -> Optional[Route]:
    if src == dst:
        return _LOCAL
    # models are immutable, so memoizing on the instance is safe
    cache = hw.__dict__.setdefault("_route_memo", {})
    key = (src, dst)
    if key not in cache:
        cache[key] = _shortest_route(hw, src, dst)
    return cache[key]


def route(hw: HardwareModel, src: str, dst: str) -> Route:
    """Minimum-latency directed route from ``src`` to ``dst``.

    Ties go to fewer hops, then to the lexicographically smallest sequence of
    intermediate ECU ids.
    """
    for ident in (src, dst):
        if ident not in hw.ecu_by_id:
            raise UnknownId("ECU", ident)
    found = _route_or_none(hw, src, dst)
    if found is None:
        raise NoRouteExists(src, dst)
    return found


# -----------------------------------------------------------------------------
# Violations
# -----------------------------------------------------------------------------

class ViolationKind(str, Enum):
    CAPABILITY_MISSING = "CapabilityMissing"
    RAM_OVERFLOW = "RamOverflow"
    CPU_OVERFLOW = "CpuOverflow"
    INTEGRITY_VIOLATION = "IntegrityViolation"
    NO_ROUTE = "NoRoute"
    BANDWIDTH_OVERFLOW = "BandwidthOverflow"
    LATENCY_EXCEEDED = "LatencyExceeded"


_KIND_RANK = {kind: i for i, kind in enumerate(ViolationKind)}


@dataclass(frozen=True)
class Violation:
    kind: ViolationKind
    subject: str
    detail: str = ""

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.subject, self.detail)

    def to_dict(self):
        return {"kind": self.kind.value, "subject": self.subject, "detail": self.detail}


def _fmt(x) -> str:
    return "infinity" if math.isinf(x) else f"{x:g}"


# -----------------------------------------------------------------------------
# Weights and scoring
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class ScoreWeights:
    w_mem: float = 0.25
    w_cpu: float = 0.25
    w_bw: float = 0.25
    w_lat: float = 0.25

    def __post_init__(self):
        values = (self.w_mem, self.w_cpu, self.w_bw, self.w_lat)
        if any(not math.isfinite(w) or w < 0 for w in values):
            raise ValueError(f"weights must be finite and nonnegative, got {values}")
        if abs(sum(values) - 1) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {sum(values)!r}")


def headroom(used: float, capacity: float) -> float:
    """Unused fraction of ``capacity``; an unused resource has headroom 1."""
    if used == 0:
        return 1.0
    if capacity == 0:
        return -math.inf
    return 1 - used / capacity


def round_half_away(x: float) -> int:
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


# -----------------------------------------------------------------------------
# Tally
# -----------------------------------------------------------------------------

@dataclass
class Tally:
    """Resource usage and violations of a (possibly partial) assignment.

    Only assigned components and edges with both endpoints assigned are
    counted. Sums run in model declaration order so a partial tally never
    exceeds the tally of any completion, even in floating point.
    """

    violations: List[Violation]
    ram_used: Dict[str, float]
    cpu_used: Dict[str, float]
    link_used: Dict[Tuple[str, str], float]
    edge_latency: Dict[Tuple[str, str], Optional[float]]

    def terms(self, hw: HardwareModel, sw: SoftwareModel) -> Tuple[float, float, float, float]:
        t_mem = min((headroom(self.ram_used[e.id], e.ram_mb)
                     for e in hw.ecus if math.isfinite(e.ram_mb)), default=1.0)
        t_cpu = min((headroom(self.cpu_used[e.id], e.cpu_units)
                     for e in hw.ecus if math.isfinite(e.cpu_units)), default=1.0)
        t_bw = min((headroom(self.link_used[l.key], l.bandwidth_kbps)
                    for l in hw.links if math.isfinite(l.bandwidth_kbps)), default=1.0)
        t_lat = min((headroom(self.edge_latency[e.key], e.max_latency_ms)
                     for e in sw.edges
                     if math.isfinite(e.max_latency_ms) and self.edge_latency.get(e.key) is not None),
                    default=1.0)
        return t_mem, t_cpu, t_bw, t_lat

    def score(self, hw: HardwareModel, sw: SoftwareModel, weights: ScoreWeights) -> int:
        if self.violations:
            return -len(self.violations)
        t_mem, t_cpu, t_bw, t_lat = self.terms(hw, sw)
        raw = (weights.w_mem * t_mem + weights.w_cpu * t_cpu
               + weights.w_bw * t_bw + weights.w_lat * t_lat)
        return round_half_away(MAX_SCORE * raw)


def tally(hw: HardwareModel, sw: SoftwareModel, assignment: Mapping[str, str]) -> Tally:
    """Tally ``assignment`` without checking it for totality or unknown ids."""
    violations: List[Violation] = []
    ram_used = {e.id: 0 for e in hw.ecus}
    cpu_used = {e.id: 0 for e in hw.ecus}

    for comp in sw.components:
        ecu_id = assignment.get(comp.id)
        if ecu_id is None:
            continue
        ecu = hw.ecu_by_id[ecu_id]
        for cap in sorted(comp.requires - ecu.capabilities):
            violations.append(Violation(
                ViolationKind.CAPABILITY_MISSING, comp.id,
                f"requires {cap!r}, not available on {ecu_id}"))
        if comp.criticality > ecu.integrity:
            violations.append(Violation(
                ViolationKind.INTEGRITY_VIOLATION, comp.id,
                f"criticality {comp.criticality.name} exceeds integrity "
                f"{ecu.integrity.name} of {ecu_id}"))
        ram_used[ecu_id] += comp.ram_mb
        cpu_used[ecu_id] += comp.cpu_units

    for ecu in hw.ecus:
        if ram_used[ecu.id] > ecu.ram_mb:
            violations.append(Violation(
                ViolationKind.RAM_OVERFLOW, ecu.id,
                f"used {_fmt(ram_used[ecu.id])} MB > capacity {_fmt(ecu.ram_mb)} MB"))
        if cpu_used[ecu.id] > ecu.cpu_units:
            violations.append(Violation(
                ViolationKind.CPU_OVERFLOW, ecu.id,
                f"used {_fmt(cpu_used[ecu.id])} > capacity {_fmt(ecu.cpu_units)} units"))

    link_used = {l.key: 0 for l in hw.links}
    edge_latency: Dict[Tuple[str, str], Optional[float]] = {}
    for edge in sw.edges:
        a = assignment.get(edge.src)
        b = assignment.get(edge.dst)
        if a is None or b is None:
            continue
        found = _route_or_none(hw, a, b)
        if found is None:
            edge_latency[edge.key] = None
            violations.append(Violation(
                ViolationKind.NO_ROUTE, edge.label, f"no route from {a} to {b}"))
            continue
        for hop in found.hops:
            link_used[hop.key] += edge.bandwidth_kbps
        edge_latency[edge.key] = found.total_latency_ms
        if found.total_latency_ms > edge.max_latency_ms:
            violations.append(Violation(
                ViolationKind.LATENCY_EXCEEDED, edge.label,
                f"routed {_fmt(found.total_latency_ms)} ms > bound {_fmt(edge.max_latency_ms)} ms"))

    for link in hw.links:
        if link_used[link.key] > link.bandwidth_kbps:
            violations.append(Violation(
                ViolationKind.BANDWIDTH_OVERFLOW, link.label,
                f"used {_fmt(link_used[link.key])} kbps > capacity {_fmt(link.bandwidth_kbps)} kbps"))

    violations.sort(key=Violation.sort_key)
    return Tally(violations, ram_used, cpu_used, link_used, edge_latency)


def partial_bound(hw: HardwareModel, sw: SoftwareModel, partial: Mapping[str, str],
                  weights: ScoreWeights = ScoreWeights()) -> Optional[int]:
    """Upper bound on the score of any feasible completion of ``partial``.

    Returns None when ``partial`` already breaks a constraint, in which case no
    completion is feasible.
    """
    t = tally(hw, sw, partial)
    if t.violations:
        return None
    return t.score(hw, sw, weights)


# -----------------------------------------------------------------------------
# Public operations
# -----------------------------------------------------------------------------

def _as_dict(m) -> Mapping[str, str]:
    return m.assignment if isinstance(m, DeploymentMapping) else m


def _check_mapping(hw: HardwareModel, sw: SoftwareModel, assignment: Mapping[str, str]):
    for comp in sorted(assignment):
        if comp not in sw.component_by_id:
            raise UnknownId("component", comp)
        if assignment[comp] not in hw.ecu_by_id:
            raise UnknownId("ECU", assignment[comp])
    missing = [c for c in sw.component_ids if c not in assignment]
    if missing:
        raise IncompleteMapping(missing)


@dataclass(frozen=True)
class UtilizationReport:
    ecu_utilization: Dict[str, Dict[str, float]]
    link_utilization: Dict[str, float]
    edge_latencies: Dict[str, Optional[float]]

    @classmethod
    def from_tally(cls, hw: HardwareModel, sw: SoftwareModel, t: Tally) -> "UtilizationReport":
        return cls(
            ecu_utilization={e.id: {"ram_mb": t.ram_used[e.id], "cpu_units": t.cpu_used[e.id]}
                             for e in hw.ecus},
            link_utilization={l.label: t.link_used[l.key] for l in hw.links},
            edge_latencies={e.label: t.edge_latency.get(e.key) for e in sw.edges},
        )


@dataclass(frozen=True)
class EvaluationResult:
    score: int
    violations: Tuple[Violation, ...] = ()
    ecu_utilization: Dict[str, Dict[str, float]] = field(default_factory=dict)
    link_utilization: Dict[str, float] = field(default_factory=dict)
    edge_latencies: Dict[str, Optional[float]] = field(default_factory=dict)

    @property
    def feasible(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {
            "score": self.score,
            "feasible": self.feasible,
            "violations": [v.to_dict() for v in self.violations],
            "ecu_utilization": self.ecu_utilization,
            "link_utilization": self.link_utilization,
            "edge_latencies": self.edge_latencies,
        }


def check_feasibility(hw: HardwareModel, sw: SoftwareModel, m) -> List[Violation]:
    """All hard-constraint violations of a total mapping, in deterministic order."""
    assignment = _as_dict(m)
    _check_mapping(hw, sw, assignment)
    return tally(hw, sw, assignment).violations


def utilization_report(hw: HardwareModel, sw: SoftwareModel, m) -> UtilizationReport:
    assignment = _as_dict(m)
    _check_mapping(hw, sw, assignment)
    return UtilizationReport.from_tally(hw, sw, tally(hw, sw, assignment))


def evaluate(hw: HardwareModel, sw: SoftwareModel, m,
             weights: ScoreWeights = ScoreWeights()) -> EvaluationResult:
    assignment = _as_dict(m)
    _check_mapping(hw, sw, assignment)
    t = tally(hw, sw, assignment)
    usage = UtilizationReport.from_tally(hw, sw, t)
    return EvaluationResult(
        score=t.score(hw, sw, weights),
        violations=tuple(t.violations),
        ecu_utilization=usage.ecu_utilization,
        link_utilization=usage.link_utilization,
        edge_latencies=usage.edge_latencies,
    )
