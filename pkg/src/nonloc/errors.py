"""Exception types shared across the package."""


class NonlocError(Exception):
    """Base class for errors raised by this package."""


class DimensionMismatch(NonlocError, ValueError):
    """Operands whose shapes or party dimensions do not fit together."""


class ValidationError(NonlocError, ValueError):
    """Input rejected by a precondition (bad norm, bad range, bad schema)."""


class ZeroProbabilityBranch(NonlocError):
    """Post-selection landed on an outcome of (numerically) zero probability.

    Carries the party index, and the round index when raised from a chained
    evaluation.  Callers must not renormalize such a branch.
    """

    def __init__(self, party, round_index=None, prob=0.0):
        self.party = party
        self.round_index = round_index
        self.prob = prob
        where = f"party {party}"
        if round_index is not None:
            where += f", round {round_index}"
        super().__init__(f"zero-probability post-selection branch ({where}, p={prob:.3e})")


class LPError(NonlocError):
    """The no-signaling linear program reached an impossible status.

    The polytope is compact, so infeasibility or unboundedness indicates a
    bug in the constraint builder, not a property of the input.
    """


class ScenarioError(NonlocError, ValueError):
    """A scenario file failed schema validation; message carries the field path."""
