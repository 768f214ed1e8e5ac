"""Process extraction: ontology -> DAG -> tool-agnostic intermediate model."""

from ontoline.procgraph.extract import extract_pools, extract_process
from ontoline.procgraph.graph import (
    Operation,
    ProcessGraph,
    adjacency_matrix,
    critical_path,
    topological_order,
)
from ontoline.procgraph.intermediate import (
    SCHEMA_VERSION,
    IntermediateModel,
    dumps_intermediate,
    load_intermediate,
    loads_intermediate,
    to_intermediate,
    write_intermediate,
)

__all__ = [
    "SCHEMA_VERSION",
    "IntermediateModel",
    "Operation",
    "ProcessGraph",
    "adjacency_matrix",
    "critical_path",
    "dumps_intermediate",
    "extract_pools",
    "extract_process",
    "load_intermediate",
    "loads_intermediate",
    "to_intermediate",
    "topological_order",
    "write_intermediate",
]
