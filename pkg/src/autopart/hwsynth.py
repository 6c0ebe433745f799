"""Propose a hardware model for a software model from a priced device catalog.

The synthesized topology is a star: one gateway-capable hub, every other device
linked to it in both directions. Components are packed first-fit-decreasing:
largest demand first, into the first open device that can take them, opening
the cheapest compatible template when none can. The result is verified with
``evaluate`` and never returned infeasible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .evaluation import evaluate
from .errors import DuplicateId, InfeasibleSynthesis, NoCompatibleTemplate, SchemaError
from .model import (
    UNLIMITED,
    DeploymentMapping,
    EcuNode,
    HardwareModel,
    Integrity,
    NetLink,
    SoftwareModel,
    SwComponent,
    Tier,
    _check_amount,
    _check_id,
    _coerce_enum,
    _names,
)


@dataclass(frozen=True)
class DeviceTemplate:
    id: str
    tier: Tier = Tier.EMBEDDED
    ram_mb: float = UNLIMITED
    cpu_units: float = UNLIMITED
    capabilities: frozenset = frozenset()
    integrity: Integrity = Integrity.QM
    cost: float = 0
    gateway_capable: bool = False

    def __post_init__(self):
        _check_id(self.id, "id")
        _coerce_enum(self, "tier", Tier)
        _coerce_enum(self, "integrity", Integrity)
        _check_amount(self.ram_mb, "ram_mb", allow_inf=True)
        _check_amount(self.cpu_units, "cpu_units", allow_inf=True)
        _check_amount(self.cost, "cost", allow_inf=False)
        object.__setattr__(self, "capabilities", _names(self.capabilities, "capabilities"))

    def can_host(self, comp: SwComponent) -> bool:
        """Whether a fresh instance of this template could host ``comp`` alone."""
        return (comp.requires <= self.capabilities
                and comp.criticality <= self.integrity
                and comp.ram_mb <= self.ram_mb
                and comp.cpu_units <= self.cpu_units)


@dataclass(frozen=True)
class LinkDefaults:
    bandwidth_kbps: float = UNLIMITED
    latency_ms: float = 0

    def __post_init__(self):
        _check_amount(self.bandwidth_kbps, "bandwidth_kbps", allow_inf=True, positive=True)
        _check_amount(self.latency_ms, "latency_ms", allow_inf=False)


@dataclass(frozen=True)
class DeviceCatalog:
    templates: Tuple[DeviceTemplate, ...]
    link_defaults: LinkDefaults = LinkDefaults()

    def __post_init__(self):
        object.__setattr__(self, "templates", tuple(self.templates))
        if not self.templates:
            raise SchemaError("templates", "catalog needs at least one template")
        seen = set()
        for t in self.templates:
            if t.id in seen:
                raise DuplicateId("template", t.id)
            seen.add(t.id)
        if not any(t.gateway_capable for t in self.templates):
            raise SchemaError("templates", "catalog needs a gateway_capable template")

    def by_price(self) -> List[DeviceTemplate]:
        return sorted(self.templates, key=lambda t: (t.cost, t.id))

    def cheapest_host(self, comp: SwComponent) -> Optional[DeviceTemplate]:
        return next((t for t in self.by_price() if t.can_host(comp)), None)


@dataclass(frozen=True)
class SynthesisResult:
    hw: HardwareModel
    mapping: DeploymentMapping
    total_cost: float

    def to_dict(self):
        from .io import hardware_to_dict, mapping_to_dict

        return {
            "total_cost": self.total_cost,
            "hardware": hardware_to_dict(self.hw),
            "mapping": mapping_to_dict(self.mapping),
        }


class _Instance:
    """An opened device and the components packed onto it so far."""

    __slots__ = ("id", "template", "hosted")

    def __init__(self, ident: str, template: DeviceTemplate):
        self.id = ident
        self.template = template
        self.hosted: List[Tuple[int, SwComponent]] = []

    def fits(self, comp: SwComponent, rank: int) -> bool:
        # sum in declaration order, exactly as evaluate() will
        load = sorted(self.hosted + [(rank, comp)], key=lambda p: p[0])
        ram = cpu = 0
        for _, c in load:
            ram += c.ram_mb
            cpu += c.cpu_units
        t = self.template
        return (comp.requires <= t.capabilities and comp.criticality <= t.integrity
                and ram <= t.ram_mb and cpu <= t.cpu_units)

    def place(self, comp: SwComponent, rank: int):
        self.hosted.append((rank, comp))

    def as_ecu(self) -> EcuNode:
        t = self.template
        return EcuNode(self.id, t.tier, t.ram_mb, t.cpu_units, t.capabilities, t.integrity)


def naive_cost(sw: SoftwareModel, catalog: DeviceCatalog) -> float:
    """Cost of the hub plus one dedicated cheapest compatible device per component."""
    hub = next(t for t in catalog.by_price() if t.gateway_capable)
    costs = [hub.cost]
    for comp in sw.components:
        host = catalog.cheapest_host(comp)
        if host is None:
            raise NoCompatibleTemplate(comp.id)
        costs.append(host.cost)
    return math.fsum(costs)


def suggest_hardware(sw: SoftwareModel, catalog: DeviceCatalog) -> SynthesisResult:
    counters: Dict[str, int] = {}

    def open_instance(template: DeviceTemplate) -> _Instance:
        counters[template.id] = counters.get(template.id, 0) + 1
        return _Instance(f"{template.id}-{counters[template.id]}", template)

    hub_template = next(t for t in catalog.by_price() if t.gateway_capable)
    instances = [open_instance(hub_template)]
    assignment: Dict[str, str] = {}

    rank = {c.id: i for i, c in enumerate(sw.components)}
    for comp in sorted(sw.components, key=lambda c: (-c.demand, c.id)):
        host = next((inst for inst in instances if inst.fits(comp, rank[comp.id])), None)
        if host is None:
            template = catalog.cheapest_host(comp)
            if template is None:
                raise NoCompatibleTemplate(comp.id)
            host = open_instance(template)
            instances.append(host)
        host.place(comp, rank[comp.id])
        assignment[comp.id] = host.id

    hub = instances[0]
    defaults = catalog.link_defaults
    links = []
    for inst in instances[1:]:
        links.append(NetLink(inst.id, hub.id, defaults.bandwidth_kbps, defaults.latency_ms))
        links.append(NetLink(hub.id, inst.id, defaults.bandwidth_kbps, defaults.latency_ms))
    hw = HardwareModel(tuple(inst.as_ecu() for inst in instances), tuple(links))
    mapping = DeploymentMapping(assignment)

    result = evaluate(hw, sw, mapping)
    if not result.feasible:
        raise InfeasibleSynthesis(result.violations)
    total = math.fsum(inst.template.cost for inst in instances)
    return SynthesisResult(hw, mapping, total)
