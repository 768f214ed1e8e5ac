"""Exception hierarchy.

Every error raised by the toolkit derives from :class:`OntolineError` and
carries the name of the module that raised it, so the CLI can report
module-qualified messages.
"""

from __future__ import annotations


class OntolineError(Exception):
    module = "ontoline"


# reqmodel ------------------------------------------------------------------


class ReqModelError(OntolineError):
    module = "reqmodel"


class NoShallClause(ReqModelError):
    pass


class MalformedClause(ReqModelError):
    pass


class UnknownMetric(ReqModelError):
    pass


class UnknownUnit(ReqModelError):
    pass


class DuplicateId(ReqModelError):
    pass


class ParseError(ReqModelError):
    def __init__(self, row: int, cause: Exception):
        super().__init__(f"row {row}: {type(cause).__name__}: {cause}")
        self.row = row
        self.cause = cause


class SchemaViolation(ReqModelError):
    pass


class UnknownAttribute(ReqModelError):
    pass


class UnknownRequirementId(ReqModelError):
    pass


# ontology ------------------------------------------------------------------


class OntologyError(OntolineError):
    module = "ontology"


class InvalidIri(OntologyError):
    pass


class UndeclaredEntity(OntologyError):
    pass


class SubclassCycle(OntologyError):
    pass


class ConflictingDataAssertion(OntologyError):
    pass


class UnknownElement(OntologyError):
    pass


class DanglingReference(OntologyError):
    pass


# archdef -------------------------------------------------------------------


class ArchdefError(OntolineError):
    module = "archdef"


class ModelSyntaxError(ArchdefError):
    def __init__(self, line: int, column: int, expected: str, found: str = ""):
        msg = f"line {line}, column {column}: expected {expected}"
        if found:
            msg += f", found {found!r}"
        super().__init__(msg)
        self.line = line
        self.column = column
        self.expected = expected


class UnknownObjectReference(ArchdefError):
    pass


class InvalidModel(ArchdefError):
    def __init__(self, diagnostics):
        super().__init__("; ".join(str(d) for d in diagnostics))
        self.diagnostics = list(diagnostics)


class MissingRequiredProperty(ArchdefError):
    pass


class NonNumericLiteral(ArchdefError):
    pass


class InvalidPropertyValue(ArchdefError):
    pass


class DanglingTraceLink(ArchdefError):
    pass


# procgraph -----------------------------------------------------------------


class ProcGraphError(OntolineError):
    module = "procgraph"


class UnknownScenario(ProcGraphError):
    pass


class MissingAttribute(ProcGraphError):
    pass


class MalformedLiteral(ProcGraphError):
    pass


class CycleDetected(ProcGraphError):
    def __init__(self, cycle: list[str]):
        super().__init__("cycle: " + " -> ".join(cycle + cycle[:1]))
        self.cycle = cycle


class SchemaVersionMismatch(ProcGraphError):
    pass


class ValidationError(ProcGraphError):
    pass


# dessim --------------------------------------------------------------------


class DessimError(OntolineError):
    module = "dessim"


class InfeasibleDemand(DessimError):
    pass


class UnknownResourceType(DessimError):
    pass


class ZeroMakespan(DessimError):
    pass


# ergosim -------------------------------------------------------------------


class ErgosimError(OntolineError):
    module = "ergosim"


class MissingPosition(ErgosimError):
    pass


class NonPositiveSpeed(ErgosimError):
    pass


class MissingMass(ErgosimError):
    pass


class MissingPostureFactor(ErgosimError):
    pass


# report --------------------------------------------------------------------


class ReportError(OntolineError):
    module = "report"


class InconsistentScenario(ReportError):
    pass


class MetricUnavailable(ReportError):
    pass


class EmptyInput(ReportError):
    pass


class FewerThanTwoScenarios(ReportError):
    pass


# cli -----------------------------------------------------------------------


class PipelineError(OntolineError):
    module = "cli"

    def __init__(self, module: str, message: str):
        super().__init__(f"[{module}] {message}")
        self.module = module
