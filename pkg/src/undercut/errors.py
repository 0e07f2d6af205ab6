"""Exception hierarchy shared by every engine module."""


class UndercutError(Exception):
    """Base class for all engine errors."""

    code = "error"


class AtomLimitExceeded(UndercutError):
    code = "atom-limit-exceeded"


class SizeCapExceeded(UndercutError):
    code = "size-cap-exceeded"


class TheoryError(UndercutError):
    code = "invalid-theory"


class CyclicPreference(TheoryError):
    code = "cyclic-preference"


class SpecificityPreferenceCycle(CyclicPreference):
    code = "specificity-preference-cycle"


class DanglingRuleName(TheoryError):
    code = "dangling-rule-name"


class DuplicateRuleName(TheoryError):
    code = "duplicate-rule-name"


class InconsistentPremises(TheoryError):
    code = "inconsistent-premises"


class PremiseLevelConflict(UndercutError):
    code = "premise-level-conflict"


class NonNormalDefault(UndercutError):
    code = "non-normal-default"


class NoExtension(UndercutError):
    code = "no-extension"


class TheorySyntaxError(TheoryError):
    """Parse failure with a 1-based source position."""

    code = "syntax-error"

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")
