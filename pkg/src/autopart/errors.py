"""Exception hierarchy.

Every error raised by the package derives from :class:`AutopartError`, so
callers (the CLI in particular) can catch one type and still report the
specific kind via ``type(err).__name__``.
"""


class AutopartError(Exception):
    """Base class for all package errors."""

    @property
    def kind(self) -> str:
        return type(self).__name__


# -- model construction -------------------------------------------------------

class ModelError(AutopartError, ValueError):
    """A hardware/software model violates a structural invariant."""


class DuplicateId(ModelError):
    def __init__(self, what, ident):
        self.ident = ident
        super().__init__(f"duplicate {what} id {ident!r}")


class DanglingLinkEndpoint(ModelError):
    def __init__(self, link, endpoint):
        self.link = link
        self.endpoint = endpoint
        super().__init__(f"link {link} references undeclared ECU {endpoint!r}")


class DanglingEdgeEndpoint(ModelError):
    def __init__(self, edge, endpoint):
        self.edge = edge
        self.endpoint = endpoint
        super().__init__(f"edge {edge} references undeclared component {endpoint!r}")


class SelfLoopLink(ModelError):
    def __init__(self, link):
        self.link = link
        super().__init__(f"link {link} connects an ECU to itself")


class SelfLoopEdge(ModelError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"edge {edge} connects a component to itself")


class DuplicateLink(ModelError):
    def __init__(self, link):
        self.link = link
        super().__init__(f"more than one link {link}")


class DuplicateEdge(ModelError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"more than one edge {edge}")


class EmptyEcuSet(ModelError):
    def __init__(self):
        super().__init__("hardware model declares no ECUs")


# -- documents ----------------------------------------------------------------

class DocumentSyntaxError(AutopartError, ValueError):
    """The text is not well-formed JSON."""


class SchemaError(AutopartError, ValueError):
    """A document or attribute value does not match the expected schema."""

    def __init__(self, field, reason):
        self.field = field
        self.reason = reason
        super().__init__(f"{field}: {reason}")


# -- evaluation ---------------------------------------------------------------

class NoRouteExists(AutopartError):
    def __init__(self, src, dst):
        self.src = src
        self.dst = dst
        super().__init__(f"no route from {src!r} to {dst!r}")


class IncompleteMapping(AutopartError, ValueError):
    def __init__(self, missing):
        self.missing = tuple(missing)
        super().__init__("mapping has no image for: " + ", ".join(self.missing))


class UnknownId(AutopartError, ValueError):
    def __init__(self, what, ident):
        self.ident = ident
        super().__init__(f"unknown {what} id {ident!r}")


# -- solving / synthesis ------------------------------------------------------

class InstanceTooLarge(AutopartError):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(f"{size} candidate mappings exceed the exhaustive cap of {cap}")


class NoCompatibleTemplate(AutopartError):
    def __init__(self, component):
        self.component = component
        super().__init__(f"no catalog template can host component {component!r}")


class InfeasibleSynthesis(AutopartError):
    def __init__(self, violations):
        self.violations = tuple(violations)
        summary = "; ".join(f"{v.kind.value}({v.subject})" for v in self.violations)
        super().__init__(f"synthesized hardware is infeasible: {summary}")
