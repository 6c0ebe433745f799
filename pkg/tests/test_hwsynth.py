import random

import pytest

from autopart import (
    DeviceCatalog,
    DeviceTemplate,
    LinkDefaults,
    SoftwareModel,
    SwComponent,
    SwEdge,
    evaluate,
    fixtures,
    suggest_hardware,
)
from autopart.errors import InfeasibleSynthesis, NoCompatibleTemplate, SchemaError
from autopart.hwsynth import naive_cost

from instances import random_catalog, random_software

SENSOR = DeviceTemplate("sensorCtrl", "microcontroller", ram_mb=4, capabilities={"Sen"}, cost=10)
GATEWAY = DeviceTemplate("gw", "embedded", ram_mb=1024, cost=50, gateway_capable=True)


def test_sensor_component_gets_dedicated_controller():
    sw = SoftwareModel((SwComponent("reader", requires={"Sen"}),))
    result = suggest_hardware(sw, DeviceCatalog((SENSOR, GATEWAY)))
    assert [e.id for e in result.hw.ecus] == ["gw-1", "sensorCtrl-1"]
    assert {l.label for l in result.hw.links} == {"gw-1->sensorCtrl-1", "sensorCtrl-1->gw-1"}
    assert result.mapping["reader"] == "sensorCtrl-1"
    assert result.total_cost == 60
    assert evaluate(result.hw, sw, result.mapping).feasible


def test_empty_software_is_hub_only():
    cheap_gw = DeviceTemplate("gw2", ram_mb=8, cost=30, gateway_capable=True)
    result = suggest_hardware(SoftwareModel(), DeviceCatalog((SENSOR, GATEWAY, cheap_gw)))
    assert [e.id for e in result.hw.ecus] == ["gw2-1"]
    assert result.hw.links == ()
    assert result.total_cost == 30


def test_example_software_with_mirror_catalog():
    sw = fixtures.software()
    result = suggest_hardware(sw, fixtures.catalog())
    assert evaluate(result.hw, sw, result.mapping).feasible
    assert result.hw.ecu(result.mapping["CtrlS"]).capabilities >= {"Sen"}
    assert result.hw.ecu(result.mapping["CtrlA"]).capabilities >= {"Act"}
    assert {result.mapping[c] for c in ("Comp1", "Comp2", "Comp3")} == {"gw-1"}
    assert result.total_cost == 70


def test_no_compatible_template():
    sw = SoftwareModel((SwComponent("cam", requires={"Camera"}),))
    with pytest.raises(NoCompatibleTemplate) as info:
        suggest_hardware(sw, DeviceCatalog((SENSOR, GATEWAY)))
    assert info.value.component == "cam"


def test_integrity_gates_placement():
    safe = DeviceTemplate("safe", integrity="D", cost=99)
    sw = SoftwareModel((SwComponent("brake", criticality="D"),))
    result = suggest_hardware(sw, DeviceCatalog((GATEWAY, safe)))
    assert result.mapping["brake"] == "safe-1"


def test_first_fit_decreasing_packing():
    small_gw = DeviceTemplate("hub", ram_mb=4, cost=5, gateway_capable=True)
    box = DeviceTemplate("box", ram_mb=4, cost=7)
    sw = SoftwareModel((SwComponent("a", ram_mb=1), SwComponent("b", ram_mb=3), SwComponent("c", ram_mb=3)))
    result = suggest_hardware(sw, DeviceCatalog((small_gw, box)))
    # b (3) -> hub-1, c (3) -> hub-2 (cheapest fresh), a (1) -> first with room: hub-1
    assert dict(result.mapping.items()) == {"b": "hub-1", "c": "hub-2", "a": "hub-1"}
    assert result.total_cost == 10


def test_latency_bound_unsatisfiable():
    actuator = DeviceTemplate("act", capabilities={"Act"}, cost=1)
    sw = SoftwareModel((SwComponent("s", requires={"Sen"}), SwComponent("a", requires={"Act"})),
                       (SwEdge("s", "a", max_latency_ms=1),))
    catalog = DeviceCatalog((SENSOR, actuator, GATEWAY), LinkDefaults(latency_ms=5))
    with pytest.raises(InfeasibleSynthesis) as info:
        suggest_hardware(sw, catalog)
    assert [v.kind.value for v in info.value.violations] == ["LatencyExceeded"]


def test_catalog_invariants():
    with pytest.raises(SchemaError):
        DeviceCatalog(())
    with pytest.raises(SchemaError):
        DeviceCatalog((SENSOR,))


def test_link_defaults_applied():
    sw = SoftwareModel((SwComponent("reader", requires={"Sen"}),))
    result = suggest_hardware(sw, DeviceCatalog((SENSOR, GATEWAY), LinkDefaults(500, 2)))
    assert all(l.bandwidth_kbps == 500 and l.latency_ms == 2 for l in result.hw.links)


def independent_naive_cost(sw, catalog):
    hub = min(t.cost for t in catalog.templates if t.gateway_capable)
    total = hub
    for c in sw.components:
        costs = [t.cost for t in catalog.templates
                 if c.requires <= t.capabilities and c.criticality <= t.integrity
                 and c.ram_mb <= t.ram_mb and c.cpu_units <= t.cpu_units]
        if not costs:
            return None
        total += min(costs)
    return total


def test_random_soundness_cost_and_determinism():
    rng = random.Random(5)
    successes = 0
    for _ in range(150):
        catalog = random_catalog(rng)
        sw = random_software(rng, rng.randint(0, 6))
        naive = independent_naive_cost(sw, catalog)
        try:
            result = suggest_hardware(sw, catalog)
        except NoCompatibleTemplate:
            assert naive is None
            continue
        except InfeasibleSynthesis:
            continue
        successes += 1
        assert evaluate(result.hw, sw, result.mapping).feasible
        assert result.total_cost <= naive + 1e-9
        assert result.total_cost <= naive_cost(sw, catalog)
        assert suggest_hardware(sw, catalog) == result
    assert successes >= 50
