"""Resource bounds for the Groebner engines."""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass, replace

from ..errors import ResourceLimit


@dataclass(frozen=True)
class Limits:
    max_degree: int = 64
    max_terms: int = 100_000
    max_vars: int = 8
    max_basis: int = 5_000


_current: contextvars.ContextVar[Limits] = contextvars.ContextVar("psikit_limits", default=Limits())


def get_limits() -> Limits:
    return _current.get()


@contextlib.contextmanager
def limits(**overrides):
    """Temporarily override resource bounds, e.g. ``with limits(max_vars=12):``."""
    token = _current.set(replace(_current.get(), **overrides))
    try:
        yield _current.get()
    finally:
        _current.reset(token)


def check_vars(n: int) -> None:
    lim = get_limits()
    if n > lim.max_vars:
        raise ResourceLimit(f"{n} variables exceeds the bound {lim.max_vars}")
