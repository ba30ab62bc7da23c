"""Exception hierarchy shared by every bytepremium module."""


class BytePremiumError(Exception):
    """Base class for all errors raised by this package."""


class CorpusError(BytePremiumError, ValueError):
    """A corpus file could not be read into an aligned collection."""


class AlignmentError(CorpusError):
    def __init__(self, path_a, count_a, path_b, count_b):
        self.counts = (count_a, count_b)
        super().__init__(
            f"line counts differ: {path_a} has {count_a} lines, "
            f"{path_b} has {count_b} lines ({count_a} != {count_b})"
        )


class CorpusDecodeError(CorpusError):
    def __init__(self, path, offset, reason=""):
        self.path = path
        self.offset = offset
        super().__init__(f"{path}: invalid UTF-8 at byte offset {offset}" + (f" ({reason})" if reason else ""))


class EmptyCorpusError(CorpusError):
    pass


class FormatError(CorpusError):
    pass


class DuplicateLanguageError(CorpusError):
    pass


class InsufficientDataError(BytePremiumError, ValueError):
    pass


class InsufficientOverlapError(InsufficientDataError):
    pass


class UnknownLanguageError(BytePremiumError, KeyError):
    def __init__(self, tag, hint=""):
        self.tag = tag
        msg = f"unknown language {tag}"
        if hint:
            msg += f"; {hint}"
        super().__init__(msg)

    def __str__(self):
        return self.args[0]


class DegenerateCorpusError(BytePremiumError, ValueError):
    pass


class DisconnectedGraphError(BytePremiumError, ValueError):
    def __init__(self, components):
        self.components = components
        parts = "; ".join("{" + ", ".join(str(t) for t in comp) + "}" for comp in components)
        super().__init__(
            f"observation graph has {len(components)} connected components; "
            f"add pairs bridging them: {parts}"
        )


class FeatureMissingError(BytePremiumError, ValueError):
    def __init__(self, tag, field):
        self.tag = tag
        self.field = field
        super().__init__(f"{tag}: missing required feature '{field}'")


class NumericalError(BytePremiumError, ArithmeticError):
    """Raised when a numerical routine cannot produce a trustworthy answer."""


class ConvergenceError(NumericalError):
    def __init__(self, message, best=None):
        self.best = best
        super().__init__(message)


class RankDeficiencyError(NumericalError):
    pass
