"""The gateway/controller/cloud worked example, shipped as JSON documents."""

from importlib import resources
from pathlib import Path

from .hwsynth import DeviceCatalog
from .io import parse_catalog, parse_hardware, parse_mapping, parse_software
from .model import DeploymentMapping, HardwareModel, SoftwareModel

NAMES = ("example_hardware", "example_software", "example_mapping_m1", "example_mapping_m2", "example_catalog")


def path(name: str) -> Path:
    """Filesystem path of a bundled fixture, e.g. ``path("example_hardware")``."""
    return Path(str(resources.files("autopart") / "data" / f"{name}.json"))


def text(name: str) -> str:
    return path(name).read_text(encoding="utf-8")


def hardware() -> HardwareModel:
    return parse_hardware(text("example_hardware"))


def software() -> SoftwareModel:
    return parse_software(text("example_software"))


def mapping_m1() -> DeploymentMapping:
    """Sensor/actuator controllers on C1/C2, everything else on the gateway."""
    return parse_mapping(text("example_mapping_m1"))


def mapping_m2() -> DeploymentMapping:
    """As m1 but with Comp2 and Comp3 moved to the cloud."""
    return parse_mapping(text("example_mapping_m2"))


def catalog() -> DeviceCatalog:
    return parse_catalog(text("example_catalog"))
