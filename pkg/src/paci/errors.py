"""Exception hierarchy shared across the package.

Every error the CLI or API can surface derives from PaciError so the
front ends can map failures to machine-readable reports uniformly.
"""


class PaciError(Exception):
    """Base class for all domain errors."""

    #: short machine-readable tag used in CLI/API error payloads
    tag = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        return {"error": self.tag, "message": str(self), "details": self.details}


class SchemaError(PaciError):
    """Input file/JSON does not match the documented schema."""

    tag = "schema"


class SeriesError(PaciError):
    """Raw series violates an ingest invariant (gaps, negatives, ...)."""

    tag = "series"


class InsufficientHistoryError(PaciError):
    """A windowed transform was asked for a day before its warm-up."""

    tag = "insufficient-history"


class SeriesTooShortError(PaciError):
    """Series shorter than the warm-up horizon of the slowest transform."""

    tag = "series-too-short"


class JudgementError(PaciError):
    """Elicitation judgements violate a structural invariant."""

    tag = "judgements"


class ConfigError(PaciError):
    """Model configuration violates an invariant."""

    tag = "config"

    def __init__(self, message, violations=None, **details):
        super().__init__(message, **details)
        self.violations = list(violations or [message])

    def to_dict(self):
        doc = super().to_dict()
        doc["details"] = dict(doc["details"], violations=self.violations)
        return doc


class ConfigMismatchError(PaciError):
    """Indicator points from different model configurations were compared."""

    tag = "config-mismatch"


class EmptyPolyhedronError(PaciError):
    """Weight bounds do not intersect the unit simplex."""

    tag = "empty-polyhedron"


class PivotError(PaciError):
    """Counterfactual pivot day outside the evaluable range."""

    tag = "pivot-out-of-range"
