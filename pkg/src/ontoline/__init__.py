"""Requirements-to-KPI pipeline for assembly-line design.

EARS requirements and a GOPPRR-style architecture model are mapped into one
application ontology; per-scenario process graphs are extracted from it,
simulated under resource limits, scored for ergonomics and compared.
"""

__version__ = "0.1.0"
