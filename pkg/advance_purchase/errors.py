# -*- coding: utf-8 -*-


class ApgameError(Exception):
    """Base class for every error raised by advance_purchase."""


class DomainError(ApgameError, ValueError):
    """Model primitives or prices outside their admissible range."""


class ParseError(ApgameError, ValueError):
    """A scenario document could not be read."""

    def __init__(self, message, line=None):
        self.line = line

        if line is not None:
            message = "line %d: %s" % (line, message)

        super().__init__(message)


class InvalidAction(ApgameError, ValueError):
    """An action label that is not available at the queried node."""


class NoEquilibrium(ApgameError):
    """No degenerate plan is credible at every consumer node."""

    def __init__(self, offer, assumption):
        self.offer = offer
        self.assumption = assumption
        super().__init__(
            "no credible degenerate plan for %r under %s" % (offer, assumption))


class NotMonotone(ApgameError):
    """The pre-purchase decision is not downward closed in the advance price."""

    def __init__(self, samples):
        self.samples = list(samples)
        shown = ", ".join("%.9f:%s" % (p1, "buy" if buy else "no")
                          for p1, buy in self.samples)
        super().__init__("purchase decision not monotone in p1 [%s]" % shown)


class BracketError(ApgameError):
    """A root search bracket without a sign change."""
