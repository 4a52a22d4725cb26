"""Cellular sheaves on finite graphs: Laplacians, section spaces, harmonic
substructures, and multiscale persistence barcodes."""

from .errors import (
    DimensionMismatchError,
    DuplicateNodeError,
    GraphError,
    InvalidDimensionError,
    MissingResidualError,
    NonMonotoneFiltrationError,
    NonzeroDiagonalError,
    NotOpenError,
    ParseError,
    SchemaError,
    SelfLoopError,
    SheafHarmonicsError,
    UnknownElementError,
    UnknownEndpointError,
    ValidationError,
    WeightOffEdgeError,
)
from .filtration import (
    Bar,
    Barcode,
    Filtration,
    barcode,
    build_filtration,
    persistence_h0,
    persistence_h1,
    sublevel_set,
)
from .graph import (
    EdgeKey,
    Element,
    ElementSet,
    Graph,
    NodeId,
    build_graph,
    closure,
    complement,
    connected_components,
    edge_key,
    is_closed,
    is_open,
    is_union_of_components,
    star_open_set,
)
from .harmonic import (
    EdgeResiduals,
    HarmonicSet,
    HarmonicSetClassification,
    classify_harmonic_set,
    edge_residuals,
    epsilon_harmonic_set,
    harmonic_set,
    is_global_section,
)
from .io import (
    AnalysisReport,
    HarmonicSummary,
    build_report,
    parse_triple,
    triple_to_document,
    write_barcode,
    write_triple,
)
from .sheaf import (
    CellularSheaf,
    Cochain0,
    Cochain1,
    Diagnostic,
    GatTriple,
    LocalSectionBasis,
    SectionBasis,
    apply_coboundary,
    attention_aggregate,
    coboundary,
    constant_sheaf,
    gat_sheaf,
    global_sections,
    laplacian_spectrum,
    local_section_space,
    sheaf_laplacian,
    sheaf_norm,
    validate_triple,
)

__version__ = "0.1.0"
