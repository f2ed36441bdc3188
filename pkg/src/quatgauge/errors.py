"""Exception types shared across the package."""


class QuatGaugeError(Exception):
    """Base class for all library errors."""


class DomainError(QuatGaugeError):
    """An operation was applied outside its mathematical domain
    (zero input, nonzero valuation where a unit is required, ...)."""


class UnsupportedFieldError(QuatGaugeError):
    """The base field does not support the requested decision procedure."""


class FactorBoundError(QuatGaugeError):
    """Integer factorization exceeded the configured trial-division bound."""


class ScalarParseError(QuatGaugeError):
    """Malformed scalar literal.  Carries the 0-based position of the error."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class DegeneratePairingError(QuatGaugeError):
    """The alternating pairing has a nontrivial radical.  The offending
    radical classes are attached for diagnostics."""

    def __init__(self, radical):
        super().__init__(f"degenerate pairing, radical classes {sorted(radical)}")
        self.radical = list(radical)


class ContractViolation(QuatGaugeError):
    """A witness or pipeline postcondition failed; names the violated
    invariant and the offending data."""
