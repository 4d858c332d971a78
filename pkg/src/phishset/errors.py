"""Exception hierarchy shared across the package."""


class PhishsetError(Exception):
    """Base class for all package errors."""


class MalformedUrl(PhishsetError, ValueError):
    pass


class UnsupportedScheme(PhishsetError, ValueError):
    pass


class MissingListFile(PhishsetError, FileNotFoundError):
    pass


class EmptyList(PhishsetError, ValueError):
    pass


class ModelNotLoaded(PhishsetError, RuntimeError):
    pass


class ProbeTimeout(PhishsetError, TimeoutError):
    pass


class ServiceTimeout(PhishsetError, TimeoutError):
    """An external service failed to answer in time (or at all)."""


class NetworkForbidden(PhishsetError, RuntimeError):
    """A live network operation was attempted while running offline."""


class EmptySnapshot(PhishsetError, ValueError):
    pass


class CorruptArchiveLine(PhishsetError, ValueError):
    def __init__(self, line_number, reason):
        super().__init__(f"line {line_number}: {reason}")
        self.line_number = line_number
        self.reason = reason


class EmptySource(PhishsetError, ValueError):
    pass


class UnreachableSeed(PhishsetError, RuntimeError):
    pass


class SingleClassDataset(PhishsetError, ValueError):
    pass


class SchemaMismatch(PhishsetError, ValueError):
    pass


class FeatureOrderMismatch(PhishsetError, ValueError):
    pass


class EmptyMatrix(PhishsetError, ValueError):
    pass


class TooFewRows(PhishsetError, ValueError):
    pass


class UnknownClass(PhishsetError, KeyError):
    pass


class ModelCountMismatch(PhishsetError, ValueError):
    pass


class NotAPermutation(PhishsetError, ValueError):
    pass
