"""Exception hierarchy shared by all sheafharmonics modules."""


class SheafHarmonicsError(Exception):
    """Base class for every error raised by this package."""


class GraphError(SheafHarmonicsError):
    """Invalid graph construction or element lookup."""


class SelfLoopError(GraphError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"self-loop at node {node!r} is not allowed")


class DuplicateNodeError(GraphError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"duplicate node id {node!r}")


class UnknownEndpointError(GraphError):
    def __init__(self, node):
        self.node = node
        super().__init__(f"edge endpoint {node!r} is not a node of the graph")


class UnknownElementError(GraphError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element!r} does not belong to the graph")


class NotOpenError(GraphError):
    """The element set is not Alexandrov-open."""


class InvalidDimensionError(SheafHarmonicsError):
    """Stalk dimension must be a positive integer."""


class DimensionMismatchError(SheafHarmonicsError):
    """Cochain blocks or restriction matrices do not match stalk dimensions."""


class WeightOffEdgeError(SheafHarmonicsError):
    def __init__(self, pair):
        self.pair = pair
        super().__init__(f"weight entry {pair[0]!r}->{pair[1]!r} does not lie on an edge")


class NonzeroDiagonalError(SheafHarmonicsError):
    def __init__(self, node, value=None):
        self.node = node
        self.value = value
        detail = "" if value is None else f" (= {value!r})"
        super().__init__(
            f"diagonal weight entry for node {node!r}{detail}; self-weights must be omitted"
        )


class MissingResidualError(SheafHarmonicsError):
    def __init__(self, edge):
        self.edge = edge
        super().__init__(f"no residual available for edge {edge!r}")


class NonMonotoneFiltrationError(SheafHarmonicsError):
    """An edge enters the filtration before one of its endpoints."""


class ParseError(SheafHarmonicsError):
    """Input bytes are not valid UTF-8 JSON."""


class SchemaError(SheafHarmonicsError):
    def __init__(self, field, detail=""):
        self.field = field
        msg = f"invalid document field {field!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class ValidationError(SheafHarmonicsError):
    """A parsed document failed semantic validation."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(d.message for d in self.diagnostics)
        super().__init__(f"document validation failed: {lines}")
