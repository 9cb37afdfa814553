"""Exception types shared across the package."""


class PirconLabError(Exception):
    """Base class for every error raised by this package."""


class ParseError(PirconLabError):
    """Malformed input file or JSON payload."""


class SizeLimitExceeded(PirconLabError):
    """Input exceeds a configured size cap."""


# poset construction / queries

class CycleDetected(PirconLabError):
    """The cover digraph contains a directed cycle."""


class RedundantCover(PirconLabError):
    """A listed cover pair is already implied transitively."""


class UnknownId(PirconLabError):
    """A relation or map mentions an id that is not an element."""


class NotComparable(PirconLabError):
    """Interval endpoints are not ordered."""


# simplicial complexes

class FaceNotInComplex(PirconLabError):
    """A face argument does not belong to the complex."""


class NotCollapsibleWithThisMatching(PirconLabError):
    """The supplied matching is incomplete or cyclic, so it certifies nothing."""


# special partial matchings

class NoMaximum(PirconLabError):
    """The poset has no maximum element."""


class MultipleMinima(PirconLabError):
    """A principal ideal has more than one minimal element."""


class SpmInvalid(PirconLabError):
    """A map fails the special-partial-matching axioms."""


# poset surgeries

class NotProper(PirconLabError):
    """The zipper's apex is the maximum, so zipping is undefined."""


class NotRemovable(PirconLabError):
    """The element fails the removability conditions."""


class NotOrderProjection(PirconLabError):
    """The candidate map is not an order projection."""


class AuditFailed(PirconLabError):
    """A conversion step failed independent re-verification."""


# Coxeter systems

class GroupTooLarge(PirconLabError):
    """The requested group exceeds the order cap."""


class UnsupportedType(PirconLabError):
    """Unknown Coxeter type label."""


class InvalidAutomorphism(PirconLabError):
    """The map is not an involutive diagram automorphism."""


class NotInIdealClosure(PirconLabError):
    """The candidate matching leaves the order ideal."""


# scaled W-sets

class NoReducedExpression(PirconLabError):
    """The element is not reachable from the chosen minimum."""


class UniquenessViolated(PirconLabError):
    """An orbit contains more than one W-minimal element."""


class VerificationFailed(PirconLabError):
    """A candidate matching that should verify did not."""
