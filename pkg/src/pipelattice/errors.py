"""Exception types shared across the package.

The hierarchy keeps three failure surfaces apart:

* ``DomainError`` — the caller handed us something outside an operation's
  domain (bad permutation text, a pivot that is not a cross, mismatched
  permutations, ...).  The CLI maps these to exit code 1.
* ``VerificationError`` — a property sweep or cross-check found a genuine
  violation of a claimed invariant.  The CLI maps these to exit code 2.
* ``ResourceError`` — a configured budget (oracle size, enumeration cap)
  was exceeded before an answer could be produced.
* ``InternalInvariantError`` — a guard that theory says can never fire
  actually fired; this is a bug in the library, never user error, so it
  deliberately escapes the CLI's tidy exit-code mapping.
"""

from __future__ import annotations

__all__ = [
    "DomainError",
    "InvalidTableauError",
    "VerificationError",
    "ResourceError",
    "InternalInvariantError",
]


class DomainError(ValueError):
    """Input lies outside the operation's documented domain."""


class InvalidTableauError(DomainError):
    """A filling that cannot be the tableau of any reduced pipe dream."""


class VerificationError(AssertionError):
    """A verified property failed on concrete data."""


class ResourceError(RuntimeError):
    """A configured size/time budget was exceeded."""


class InternalInvariantError(AssertionError):
    """A 'cannot happen' guard fired; indicates a library bug."""
