"""Hardware and software twin data model.

A hardware model is a directed graph of computational devices (ECUs) joined by
network links; a software model is a directed graph of atomic components
joined by required communications. Both are immutable once built and validate
their structural invariants on construction, so holding a model instance means
holding a valid model.

Unlimited capacities and unbounded latencies are represented by ``math.inf``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum, IntEnum
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .errors import (
    DanglingEdgeEndpoint,
    DanglingLinkEndpoint,
    DuplicateEdge,
    DuplicateId,
    DuplicateLink,
    EmptyEcuSet,
    SchemaError,
    SelfLoopEdge,
    SelfLoopLink,
)

UNLIMITED = math.inf


class Tier(str, Enum):
    """Device class of an ECU."""

    MICROCONTROLLER = "microcontroller"
    EMBEDDED = "embedded"
    CLOUD = "cloud"


class Integrity(IntEnum):
    """ASIL-style safety level, ordered QM < A < B < C < D."""

    QM = 0
    A = 1
    B = 2
    C = 3
    D = 4

    @classmethod
    def parse(cls, label: str) -> "Integrity":
        try:
            return cls[label]
        except KeyError:
            raise ValueError(f"unknown integrity level {label!r}") from None


def _check_id(value, field_name):
    if not isinstance(value, str) or not value:
        raise SchemaError(field_name, "must be a nonempty string")


def _check_amount(value, field_name, *, allow_inf, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(field_name, f"must be a number, got {value!r}")
    if math.isnan(value):
        raise SchemaError(field_name, "must not be NaN")
    if math.isinf(value) and not (allow_inf and value > 0):
        raise SchemaError(field_name, "must be finite")
    if positive and value <= 0:
        raise SchemaError(field_name, f"must be positive, got {value!r}")
    if value < 0:
        raise SchemaError(field_name, f"must be nonnegative, got {value!r}")


def _names(values, field_name) -> frozenset:
    if isinstance(values, str):
        raise SchemaError(field_name, "must be a collection of names, not a string")
    names = frozenset(values)
    for name in names:
        if not isinstance(name, str) or not name:
            raise SchemaError(field_name, "names must be nonempty strings")
    return names


def _coerce_enum(obj, attr, enum_cls):
    value = getattr(obj, attr)
    if isinstance(value, enum_cls):
        return
    try:
        coerced = enum_cls.parse(value) if enum_cls is Integrity else enum_cls(value)
    except (ValueError, KeyError):
        raise SchemaError(attr, f"invalid value {value!r}") from None
    object.__setattr__(obj, attr, coerced)


# -----------------------------------------------------------------------------
# Hardware
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class EcuNode:
    id: str
    tier: Tier = Tier.EMBEDDED
    ram_mb: float = UNLIMITED
    cpu_units: float = UNLIMITED
    capabilities: frozenset = frozenset()
    integrity: Integrity = Integrity.QM

    def __post_init__(self):
        _check_id(self.id, "id")
        _coerce_enum(self, "tier", Tier)
        _coerce_enum(self, "integrity", Integrity)
        _check_amount(self.ram_mb, "ram_mb", allow_inf=True)
        _check_amount(self.cpu_units, "cpu_units", allow_inf=True)
        object.__setattr__(self, "capabilities", _names(self.capabilities, "capabilities"))


@dataclass(frozen=True)
class NetLink:
    """Directed link ``src -> dst``. Model both directions for a bidirectional bus."""

    src: str
    dst: str
    bandwidth_kbps: float = UNLIMITED
    latency_ms: float = 0

    def __post_init__(self):
        _check_id(self.src, "from")
        _check_id(self.dst, "to")
        _check_amount(self.bandwidth_kbps, "bandwidth_kbps", allow_inf=True, positive=True)
        _check_amount(self.latency_ms, "latency_ms", allow_inf=False)

    @property
    def key(self) -> Tuple[str, str]:
        return (self.src, self.dst)

    @property
    def label(self) -> str:
        return f"{self.src}->{self.dst}"


@dataclass(frozen=True)
class HardwareModel:
    ecus: Tuple[EcuNode, ...]
    links: Tuple[NetLink, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "ecus", tuple(self.ecus))
        object.__setattr__(self, "links", tuple(self.links))
        if not self.ecus:
            raise EmptyEcuSet()
        seen = set()
        for ecu in self.ecus:
            if ecu.id in seen:
                raise DuplicateId("ECU", ecu.id)
            seen.add(ecu.id)
        pairs = set()
        for link in self.links:
            if link.src == link.dst:
                raise SelfLoopLink(link.label)
            for end in (link.src, link.dst):
                if end not in seen:
                    raise DanglingLinkEndpoint(link.label, end)
            if link.key in pairs:
                raise DuplicateLink(link.label)
            pairs.add(link.key)

    @cached_property
    def ecu_by_id(self) -> Dict[str, EcuNode]:
        return {e.id: e for e in self.ecus}

    @cached_property
    def link_by_key(self) -> Dict[Tuple[str, str], NetLink]:
        return {l.key: l for l in self.links}

    @cached_property
    def out_links(self) -> Dict[str, List[NetLink]]:
        adj: Dict[str, List[NetLink]] = {e.id: [] for e in self.ecus}
        for link in self.links:
            adj[link.src].append(link)
        return adj

    @cached_property
    def ecu_ids(self) -> Tuple[str, ...]:
        """ECU ids in ascending order."""
        return tuple(sorted(self.ecu_by_id))

    def ecu(self, ident: str) -> EcuNode:
        return self.ecu_by_id[ident]


def build_hardware_model(ecus: Iterable[EcuNode], links: Iterable[NetLink] = ()) -> HardwareModel:
    return HardwareModel(tuple(ecus), tuple(links))


# -----------------------------------------------------------------------------
# Software
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class SwComponent:
    id: str
    ram_mb: float = 0
    cpu_units: float = 0
    requires: frozenset = frozenset()
    criticality: Integrity = Integrity.QM

    def __post_init__(self):
        _check_id(self.id, "id")
        _coerce_enum(self, "criticality", Integrity)
        _check_amount(self.ram_mb, "ram_mb", allow_inf=False)
        _check_amount(self.cpu_units, "cpu_units", allow_inf=False)
        object.__setattr__(self, "requires", _names(self.requires, "requires"))

    @property
    def demand(self) -> float:
        return self.ram_mb + self.cpu_units


@dataclass(frozen=True)
class SwEdge:
    src: str
    dst: str
    bandwidth_kbps: float = 0
    max_latency_ms: float = math.inf

    def __post_init__(self):
        _check_id(self.src, "from")
        _check_id(self.dst, "to")
        _check_amount(self.bandwidth_kbps, "bandwidth_kbps", allow_inf=False)
        _check_amount(self.max_latency_ms, "max_latency_ms", allow_inf=True, positive=True)

    @property
    def key(self) -> Tuple[str, str]:
        return (self.src, self.dst)

    @property
    def label(self) -> str:
        return f"{self.src}->{self.dst}"


@dataclass(frozen=True)
class SoftwareModel:
    components: Tuple[SwComponent, ...] = ()
    edges: Tuple[SwEdge, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "edges", tuple(self.edges))
        seen = set()
        for comp in self.components:
            if comp.id in seen:
                raise DuplicateId("component", comp.id)
            seen.add(comp.id)
        pairs = set()
        for edge in self.edges:
            if edge.src == edge.dst:
                raise SelfLoopEdge(edge.label)
            for end in (edge.src, edge.dst):
                if end not in seen:
                    raise DanglingEdgeEndpoint(edge.label, end)
            if edge.key in pairs:
                raise DuplicateEdge(edge.label)
            pairs.add(edge.key)

    @cached_property
    def component_by_id(self) -> Dict[str, SwComponent]:
        return {c.id: c for c in self.components}

    @cached_property
    def component_ids(self) -> Tuple[str, ...]:
        """Component ids in ascending order."""
        return tuple(sorted(self.component_by_id))

    def component(self, ident: str) -> SwComponent:
        return self.component_by_id[ident]


def build_software_model(components: Iterable[SwComponent], edges: Iterable[SwEdge] = ()) -> SoftwareModel:
    return SoftwareModel(tuple(components), tuple(edges))


# -----------------------------------------------------------------------------
# Deployment
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class DeploymentMapping:
    """Assignment of software component ids to ECU ids.

    Totality is checked against a software model at evaluation time, not here.
    """

    assignment: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self):
        assignment = dict(self.assignment)
        for comp, ecu in assignment.items():
            _check_id(comp, "component id")
            _check_id(ecu, f"image of {comp}")
        object.__setattr__(self, "assignment", assignment)

    def __getitem__(self, comp: str) -> str:
        return self.assignment[comp]

    def __contains__(self, comp) -> bool:
        return comp in self.assignment

    def __iter__(self) -> Iterator[str]:
        return iter(self.assignment)

    def __len__(self) -> int:
        return len(self.assignment)

    def get(self, comp: str, default: Optional[str] = None) -> Optional[str]:
        return self.assignment.get(comp, default)

    def items(self):
        return self.assignment.items()
