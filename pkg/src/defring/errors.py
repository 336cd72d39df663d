"""Exception taxonomy shared by all workbench modules."""


class DefringError(Exception):
    """Base class for all workbench-specific errors."""


class NotInSubring(DefringError):
    """Element is not fixed by the required Frobenius power."""


class ModulusMismatch(DefringError):
    """Cyclotomic sums over different moduli cannot be compared."""


class BadModulus(DefringError):
    """Frobenius prime divides the cyclotomic modulus."""


class BadAction(DefringError):
    """The twisting unit does not have the required multiplicative order."""


class RelationViolation(DefringError):
    """Proposed action matrices violate a defining relation of the base group."""


class NoRootOfUnity(DefringError):
    """The coefficient ring contains no primitive root of unity of the given order."""


class NotDescendable(DefringError):
    """Minimal polynomial coefficients are not fixed by the target Frobenius power."""


class NotIntegral(DefringError):
    """A count that must be divisible by the group order is not."""


class HypothesisFailure(DefringError):
    """A parameter condition required by the construction fails."""


class NotGenerating(DefringError):
    """The supplied elements do not generate the group."""


class ModuleNotInflated(DefringError):
    """The kernel subgroup acts nontrivially on a module assumed inflated."""


class NotALift(DefringError):
    """Candidate matrices do not reduce to the base representation."""


class KernelViolation(DefringError):
    """A product defect lands outside the one-dimensional kernel line."""


class DecompositionFailure(DefringError):
    """A kernel-restricted matrix is not congruent to the identity mod t."""


class HomomorphismFailure(DefringError):
    """A constructed representation fails multiplicativity; carries a witness pair."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class PrecisionTooLow(DefringError):
    """Working precision is below the minimum for the requested ring."""


class TooLarge(DefringError):
    """A brute-force enumeration would exceed its size guard."""
