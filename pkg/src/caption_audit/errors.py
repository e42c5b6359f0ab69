"""Exception types shared across the toolkit."""


class CaptionAuditError(Exception):
    """Base class for all toolkit errors."""


class TaxonomyParseError(CaptionAuditError):
    """A taxonomy document line could not be parsed."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class TaxonomyValidationError(CaptionAuditError):
    """A loaded taxonomy violates a structural invariant (cycle, dangling id, ...)."""


class UnknownSynsetError(CaptionAuditError, KeyError):
    """A synset id was looked up that does not exist in the network."""


class DataFormatError(CaptionAuditError, ValueError):
    """An annotations / categories / detections document violates its schema."""


class ModelFormatError(CaptionAuditError):
    """A tagger model file is corrupt, has a bad checksum or a wrong version."""
