import math

import pytest

from autopart import (
    EcuNode,
    Integrity,
    NetLink,
    SwComponent,
    SwEdge,
    Tier,
    build_hardware_model,
    build_software_model,
)
from autopart.errors import (
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

EXAMPLE_LINKS = [("Cloud", "GW"), ("GW", "C1"), ("GW", "C2"), ("GW", "Cloud"), ("C1", "GW"), ("C2", "GW")]


def example_ecus():
    return [
        EcuNode("Cloud", Tier.CLOUD),
        EcuNode("GW", Tier.EMBEDDED, ram_mb=1024),
        EcuNode("C1", Tier.MICROCONTROLLER, ram_mb=4, capabilities={"Sen"}),
        EcuNode("C2", Tier.MICROCONTROLLER, ram_mb=2, capabilities={"Act"}),
    ]


def test_example_hardware_builds():
    hw = build_hardware_model(example_ecus(), [NetLink(a, b) for a, b in EXAMPLE_LINKS])
    assert [e.id for e in hw.ecus] == ["Cloud", "GW", "C1", "C2"]
    assert len(hw.links) == 6
    assert math.isinf(hw.ecu("Cloud").ram_mb)
    assert hw.ecu("C1").capabilities == {"Sen"}
    # every link endpoint is a declared ECU
    assert all(l.src in hw.ecu_by_id and l.dst in hw.ecu_by_id for l in hw.links)


def test_single_ecu_no_links():
    hw = build_hardware_model([EcuNode("only")], [])
    assert hw.ecu_ids == ("only",)


def test_no_implicit_symmetrization():
    hw = build_hardware_model(example_ecus(), [NetLink("GW", "C1")])
    assert ("GW", "C1") in hw.link_by_key
    assert ("C1", "GW") not in hw.link_by_key


@pytest.mark.parametrize("ecus, links, error", [
    (["C1"], [("C1", "C1")], SelfLoopLink),
    (["C1", "C1"], [], DuplicateId),
    (["C1"], [("C1", "GW")], DanglingLinkEndpoint),
    (["C1", "GW"], [("C1", "GW"), ("C1", "GW")], DuplicateLink),
    ([], [], EmptyEcuSet),
])
def test_hardware_errors(ecus, links, error):
    with pytest.raises(error):
        build_hardware_model([EcuNode(e) for e in ecus], [NetLink(a, b) for a, b in links])


def test_error_names_offender():
    with pytest.raises(DanglingLinkEndpoint) as info:
        build_hardware_model([EcuNode("C1")], [NetLink("C1", "Nowhere")])
    assert info.value.endpoint == "Nowhere"
    assert "Nowhere" in str(info.value)


def test_example_software_builds():
    comps = [SwComponent("CtrlS", requires={"Sen"}), SwComponent("CtrlA", requires={"Act"}),
             SwComponent("Comp1"), SwComponent("Comp2"), SwComponent("Comp3")]
    edges = [SwEdge("CtrlS", "Comp1"), SwEdge("Comp1", "CtrlA"),
             SwEdge("Comp1", "Comp2"), SwEdge("Comp1", "Comp3")]
    sw = build_software_model(comps, edges)
    assert sw.component_ids == ("Comp1", "Comp2", "Comp3", "CtrlA", "CtrlS")
    assert sw.component("CtrlS").criticality is Integrity.QM
    assert all(math.isinf(e.max_latency_ms) and e.bandwidth_kbps == 0 for e in sw.edges)


def test_empty_software_model():
    sw = build_software_model([], [])
    assert sw.components == () and sw.edges == ()


@pytest.mark.parametrize("comps, edges, error", [
    (["a"], [("a", "X")], DanglingEdgeEndpoint),
    (["a"], [("a", "a")], SelfLoopEdge),
    (["a", "a"], [], DuplicateId),
    (["a", "b"], [("a", "b"), ("a", "b")], DuplicateEdge),
])
def test_software_errors(comps, edges, error):
    with pytest.raises(error):
        build_software_model([SwComponent(c) for c in comps], [SwEdge(a, b) for a, b in edges])


@pytest.mark.parametrize("kwargs", [
    {"ram_mb": -4}, {"cpu_units": -1}, {"ram_mb": math.nan},
    {"capabilities": {""}}, {"integrity": "E"}, {"tier": "mainframe"},
])
def test_ecu_attribute_validation(kwargs):
    with pytest.raises(SchemaError):
        EcuNode("C1", **kwargs)


@pytest.mark.parametrize("kwargs", [
    {"bandwidth_kbps": 0}, {"bandwidth_kbps": -3}, {"latency_ms": -1}, {"latency_ms": math.inf},
])
def test_link_attribute_validation(kwargs):
    with pytest.raises(SchemaError):
        NetLink("a", "b", **kwargs)


@pytest.mark.parametrize("kwargs", [
    {"ram_mb": math.inf}, {"cpu_units": -1}, {"criticality": "Z"},
])
def test_component_attribute_validation(kwargs):
    with pytest.raises(SchemaError):
        SwComponent("c", **kwargs)


@pytest.mark.parametrize("kwargs", [{"max_latency_ms": 0}, {"bandwidth_kbps": -1}])
def test_edge_attribute_validation(kwargs):
    with pytest.raises(SchemaError):
        SwEdge("a", "b", **kwargs)


def test_integrity_order():
    assert Integrity.QM < Integrity.A < Integrity.B < Integrity.C < Integrity.D
    assert Integrity.parse("C") is Integrity.C


def test_models_are_immutable():
    hw = build_hardware_model([EcuNode("a")])
    with pytest.raises(AttributeError):
        hw.ecus = ()
    with pytest.raises(AttributeError):
        hw.ecus[0].ram_mb = 3


def test_ordering_does_not_affect_validation():
    ecus = example_ecus()
    links = [NetLink(a, b) for a, b in EXAMPLE_LINKS]
    forward = build_hardware_model(ecus, links)
    backward = build_hardware_model(ecus[::-1], links[::-1])
    assert forward.ecu_by_id == backward.ecu_by_id
    assert forward.link_by_key == backward.link_by_key
