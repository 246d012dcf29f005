"""Exception hierarchy shared by all stabdyn modules."""

from __future__ import annotations


class StabdynError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(StabdynError):
    """Input text or document does not encode a valid edge shift."""


class EmptyShiftError(ParseError):
    """Normalization removed every state; the shift space is empty."""


class ReducibleShiftError(StabdynError):
    """Operation requires an irreducible (strongly connected) edge shift."""


class NoSuchEigenvalueError(StabdynError):
    """Requested cyclic-partition size is not a rational eigenvalue."""


class NoPowerDecompositionError(StabdynError):
    """No factorization n = k*l with l dividing the period and gcd(k, period) = 1.

    Happens exactly when some prime divides n with multiplicity exceeding its
    multiplicity in the period (e.g. period 2, n = 4).
    """


class BudgetExceededError(StabdynError):
    """A configured enumeration budget would be exceeded."""


class IterationCapError(StabdynError):
    """Power iteration failed to converge within the iteration cap."""


class ZeroEntropyError(StabdynError):
    """Entropy ratio is undefined because a factor has entropy zero."""


class ShiftMismatchError(StabdynError):
    """Sliding block codes live on incompatible shift presentations."""


class WordError(StabdynError):
    """A word is too short or not admissible for the requested operation."""


class ImageSplitsClassesError(StabdynError):
    """A code maps one partition class into several; the induced permutation
    does not exist (precondition of the class-action computation violated)."""


class AmbientMismatchError(StabdynError):
    """Wreath elements belong to different ambient contexts (G, n)."""


class VerificationError(StabdynError):
    """A dual-route cross-check (formula vs. brute force) disagreed."""
