"""Shared exception hierarchy; the CLI maps these onto exit codes."""


class InputError(ValueError):
    """Malformed or semantically invalid input (exit code 1)."""


class PropertyViolation(RuntimeError):
    """A checked mathematical property failed on concrete data (exit code 2)."""


class InternalConsistencyError(RuntimeError):
    """An internal invariant broke: either a bug or violated hypotheses (exit code 3)."""
