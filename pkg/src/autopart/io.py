"""JSON documents for hardware, software, mapping and catalog models.

Parsers are strict: unknown fields are rejected and every failure names the
offending field path. Serializers write every field explicitly, so
``parse_x(serialize_x(m)) == m`` holds and a fully-spelled document survives
``serialize_x(parse_x(doc))`` unchanged up to key order.
"""

from __future__ import annotations

import json
import math
from typing import Any, Dict, List

from .errors import DocumentSyntaxError, SchemaError
from .hwsynth import DeviceCatalog, DeviceTemplate, LinkDefaults
from .model import (
    DeploymentMapping,
    EcuNode,
    HardwareModel,
    NetLink,
    SoftwareModel,
    SwComponent,
    SwEdge,
    Tier,
)

INFINITY = "infinity"
UNBOUNDED = "unbounded"


def _load(text) -> Any:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(f"malformed JSON: {exc}") from None


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _object(value, where, allowed, required=()) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise SchemaError(where or "<root>", "must be a JSON object")
    for key in value:
        if key not in allowed:
            raise SchemaError(f"{where}.{key}" if where else key, "unknown field")
    for key in required:
        if key not in value:
            raise SchemaError(f"{where}.{key}" if where else key, "required field missing")
    return value


def _array(value, where) -> List[Any]:
    if not isinstance(value, list):
        raise SchemaError(where, "must be a JSON array")
    return value


def _names(value, where) -> List[str]:
    names = _array(value, where)
    if not all(isinstance(n, str) and n for n in names):
        raise SchemaError(where, "names must be nonempty strings")
    if len(set(names)) != len(names):
        raise SchemaError(where, "contains duplicate names")
    return names


def _quantity(value, where, token=None):
    """Decode a number, or ``token`` meaning +inf when the field allows it."""
    if token is not None and value == token:
        return math.inf
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        allowed = f'a number or "{token}"' if token else "a number"
        raise SchemaError(where, f"must be {allowed}, got {value!r}")
    return value


def _emit(value, token=None):
    if math.isinf(value):
        return token
    return value


def _build(cls, where, **kwargs):
    """Construct a model record, prefixing attribute errors with ``where``."""
    try:
        return cls(**kwargs)
    except SchemaError as exc:
        raise SchemaError(f"{where}.{exc.field}", exc.reason) from None


# -- hardware -----------------------------------------------------------------

_ECU_FIELDS = ("id", "tier", "ram_mb", "cpu_units", "capabilities", "integrity")
_LINK_FIELDS = ("from", "to", "bandwidth_kbps", "latency_ms")


def hardware_from_dict(doc) -> HardwareModel:
    _object(doc, "", ("ecus", "links"), required=("ecus",))
    ecus = []
    for i, raw in enumerate(_array(doc["ecus"], "ecus")):
        where = f"ecus[{i}]"
        _object(raw, where, _ECU_FIELDS, required=("id",))
        ecus.append(_build(
            EcuNode, where,
            id=raw["id"],
            tier=raw.get("tier", Tier.EMBEDDED.value),
            ram_mb=_quantity(raw.get("ram_mb", INFINITY), f"{where}.ram_mb", INFINITY),
            cpu_units=_quantity(raw.get("cpu_units", INFINITY), f"{where}.cpu_units", INFINITY),
            capabilities=_names(raw.get("capabilities", []), f"{where}.capabilities"),
            integrity=raw.get("integrity", "QM"),
        ))
    links = []
    for i, raw in enumerate(_array(doc.get("links", []), "links")):
        where = f"links[{i}]"
        _object(raw, where, _LINK_FIELDS, required=("from", "to"))
        links.append(_build(
            NetLink, where,
            src=raw["from"],
            dst=raw["to"],
            bandwidth_kbps=_quantity(raw.get("bandwidth_kbps", INFINITY), f"{where}.bandwidth_kbps", INFINITY),
            latency_ms=_quantity(raw.get("latency_ms", 0), f"{where}.latency_ms"),
        ))
    return HardwareModel(tuple(ecus), tuple(links))


def hardware_to_dict(hw: HardwareModel) -> Dict[str, Any]:
    return {
        "ecus": [
            {
                "id": e.id,
                "tier": e.tier.value,
                "ram_mb": _emit(e.ram_mb, INFINITY),
                "cpu_units": _emit(e.cpu_units, INFINITY),
                "capabilities": sorted(e.capabilities),
                "integrity": e.integrity.name,
            }
            for e in hw.ecus
        ],
        "links": [
            {
                "from": l.src,
                "to": l.dst,
                "bandwidth_kbps": _emit(l.bandwidth_kbps, INFINITY),
                "latency_ms": l.latency_ms,
            }
            for l in hw.links
        ],
    }


def parse_hardware(text) -> HardwareModel:
    return hardware_from_dict(_load(text))


def serialize_hardware(hw: HardwareModel) -> str:
    return _dump(hardware_to_dict(hw))


# -- software -----------------------------------------------------------------

_COMPONENT_FIELDS = ("id", "ram_mb", "cpu_units", "requires", "criticality")
_EDGE_FIELDS = ("from", "to", "bandwidth_kbps", "max_latency_ms")


def software_from_dict(doc) -> SoftwareModel:
    _object(doc, "", ("components", "edges"), required=("components",))
    comps = []
    for i, raw in enumerate(_array(doc["components"], "components")):
        where = f"components[{i}]"
        _object(raw, where, _COMPONENT_FIELDS, required=("id",))
        comps.append(_build(
            SwComponent, where,
            id=raw["id"],
            ram_mb=_quantity(raw.get("ram_mb", 0), f"{where}.ram_mb"),
            cpu_units=_quantity(raw.get("cpu_units", 0), f"{where}.cpu_units"),
            requires=_names(raw.get("requires", []), f"{where}.requires"),
            criticality=raw.get("criticality", "QM"),
        ))
    edges = []
    for i, raw in enumerate(_array(doc.get("edges", []), "edges")):
        where = f"edges[{i}]"
        _object(raw, where, _EDGE_FIELDS, required=("from", "to"))
        edges.append(_build(
            SwEdge, where,
            src=raw["from"],
            dst=raw["to"],
            bandwidth_kbps=_quantity(raw.get("bandwidth_kbps", 0), f"{where}.bandwidth_kbps"),
            max_latency_ms=_quantity(raw.get("max_latency_ms", UNBOUNDED), f"{where}.max_latency_ms", UNBOUNDED),
        ))
    return SoftwareModel(tuple(comps), tuple(edges))


def software_to_dict(sw: SoftwareModel) -> Dict[str, Any]:
    return {
        "components": [
            {
                "id": c.id,
                "ram_mb": c.ram_mb,
                "cpu_units": c.cpu_units,
                "requires": sorted(c.requires),
                "criticality": c.criticality.name,
            }
            for c in sw.components
        ],
        "edges": [
            {
                "from": e.src,
                "to": e.dst,
                "bandwidth_kbps": e.bandwidth_kbps,
                "max_latency_ms": _emit(e.max_latency_ms, UNBOUNDED),
            }
            for e in sw.edges
        ],
    }


def parse_software(text) -> SoftwareModel:
    return software_from_dict(_load(text))


def serialize_software(sw: SoftwareModel) -> str:
    return _dump(software_to_dict(sw))


# -- mapping ------------------------------------------------------------------

def mapping_from_dict(doc) -> DeploymentMapping:
    if not isinstance(doc, dict):
        raise SchemaError("<root>", "mapping must be a JSON object")
    for comp, ecu in doc.items():
        if not isinstance(ecu, str) or not ecu:
            raise SchemaError(comp, f"image must be a nonempty ECU id string, got {ecu!r}")
    return _build(DeploymentMapping, "mapping", assignment=doc)


def mapping_to_dict(mapping: DeploymentMapping) -> Dict[str, str]:
    return {comp: mapping[comp] for comp in sorted(mapping)}


def parse_mapping(text) -> DeploymentMapping:
    return mapping_from_dict(_load(text))


def serialize_mapping(mapping: DeploymentMapping) -> str:
    return _dump(mapping_to_dict(mapping))


# -- catalog ------------------------------------------------------------------

_TEMPLATE_FIELDS = ("id", "tier", "ram_mb", "cpu_units", "capabilities", "integrity", "cost", "gateway_capable")


def catalog_from_dict(doc) -> DeviceCatalog:
    _object(doc, "", ("templates", "link_defaults"), required=("templates",))
    templates = []
    for i, raw in enumerate(_array(doc["templates"], "templates")):
        where = f"templates[{i}]"
        _object(raw, where, _TEMPLATE_FIELDS, required=("id", "cost"))
        gateway = raw.get("gateway_capable", False)
        if not isinstance(gateway, bool):
            raise SchemaError(f"{where}.gateway_capable", "must be a boolean")
        templates.append(_build(
            DeviceTemplate, where,
            id=raw["id"],
            tier=raw.get("tier", Tier.EMBEDDED.value),
            ram_mb=_quantity(raw.get("ram_mb", INFINITY), f"{where}.ram_mb", INFINITY),
            cpu_units=_quantity(raw.get("cpu_units", INFINITY), f"{where}.cpu_units", INFINITY),
            capabilities=_names(raw.get("capabilities", []), f"{where}.capabilities"),
            integrity=raw.get("integrity", "QM"),
            cost=_quantity(raw["cost"], f"{where}.cost"),
            gateway_capable=gateway,
        ))
    raw = _object(doc.get("link_defaults", {}), "link_defaults", ("bandwidth_kbps", "latency_ms"))
    defaults = _build(
        LinkDefaults, "link_defaults",
        bandwidth_kbps=_quantity(raw.get("bandwidth_kbps", INFINITY), "link_defaults.bandwidth_kbps", INFINITY),
        latency_ms=_quantity(raw.get("latency_ms", 0), "link_defaults.latency_ms"),
    )
    return _build(DeviceCatalog, "catalog", templates=tuple(templates), link_defaults=defaults)


def catalog_to_dict(catalog: DeviceCatalog) -> Dict[str, Any]:
    return {
        "templates": [
            {
                "id": t.id,
                "tier": t.tier.value,
                "ram_mb": _emit(t.ram_mb, INFINITY),
                "cpu_units": _emit(t.cpu_units, INFINITY),
                "capabilities": sorted(t.capabilities),
                "integrity": t.integrity.name,
                "cost": t.cost,
                "gateway_capable": t.gateway_capable,
            }
            for t in catalog.templates
        ],
        "link_defaults": {
            "bandwidth_kbps": _emit(catalog.link_defaults.bandwidth_kbps, INFINITY),
            "latency_ms": catalog.link_defaults.latency_ms,
        },
    }


def parse_catalog(text) -> DeviceCatalog:
    return catalog_from_dict(_load(text))


def serialize_catalog(catalog: DeviceCatalog) -> str:
    return _dump(catalog_to_dict(catalog))


__all__ = [
    "parse_hardware", "serialize_hardware", "hardware_from_dict", "hardware_to_dict",
    "parse_software", "serialize_software", "software_from_dict", "software_to_dict",
    "parse_mapping", "serialize_mapping", "mapping_from_dict", "mapping_to_dict",
    "parse_catalog", "serialize_catalog", "catalog_from_dict", "catalog_to_dict",
]
