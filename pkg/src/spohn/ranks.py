"""Rank arithmetic.

A rank is a grade of implausibility: a non-negative int, or the single
absorbing infinity INF for the impossible. Finite ranks are plain Python
ints, so ordinary arithmetic, min() and sorting just work; INF is a
dedicated singleton (not a large sentinel integer) that absorbs addition
and finite subtraction and refuses INF - INF, which is never meaningful
and always signals a bug upstream.

Signed intermediate values (message deltas, belief strengths) reuse the
same representation but may be negative; NEG_INF exists only as a belief
strength, never as a rank.
"""

from __future__ import annotations

from typing import Iterable, TypeAlias, Union

from .errors import AllInfinite, RankArithmeticError


class _Infinity:
    """Absorbing infinite rank. One instance, INF."""

    __slots__ = ()

    def __add__(self, other):
        if isinstance(other, (int, _Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, _Infinity):
            raise RankArithmeticError("inf - inf is undefined")
        if isinstance(other, int):
            return self
        return NotImplemented

    def __rsub__(self, other):
        raise RankArithmeticError("cannot subtract inf from a finite rank")

    def __neg__(self):
        return NEG_INF

    # INF is strictly above every int and equal only to itself.
    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, _Infinity)

    def __gt__(self, other):
        return isinstance(other, (int, _NegInfinity))

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return isinstance(other, _Infinity)

    def __hash__(self):
        return hash("spohn.INF")

    def __repr__(self):
        return "inf"

    def __reduce__(self):
        return (_restore_inf, ())


class _NegInfinity:
    """Mirror of INF for belief strengths; no additive arithmetic."""

    __slots__ = ()

    def __neg__(self):
        return INF

    def __lt__(self, other):
        return isinstance(other, (int, _Infinity))

    def __le__(self, other):
        return True

    def __gt__(self, other):
        return False

    def __ge__(self, other):
        return isinstance(other, _NegInfinity)

    def __eq__(self, other):
        return isinstance(other, _NegInfinity)

    def __hash__(self):
        return hash("spohn.NEG_INF")

    def __repr__(self):
        return "-inf"

    def __reduce__(self):
        return (_restore_neg_inf, ())


INF = _Infinity()
NEG_INF = _NegInfinity()


def _restore_inf():
    return INF


def _restore_neg_inf():
    return NEG_INF


Rank: TypeAlias = Union[int, _Infinity]
SignedDelta: TypeAlias = Union[int, _Infinity]
BeliefStrength: TypeAlias = Union[int, _Infinity, _NegInfinity]


def is_rank(value: object) -> bool:
    """True for a non-negative int or INF (bools excluded)."""
    if isinstance(value, _Infinity):
        return True
    return type(value) is int and value >= 0


def check_rank(value: object, what: str = "rank") -> Rank:
    if not is_rank(value):
        raise ValueError(f"{what} must be a non-negative integer or INF, got {value!r}")
    return value  # type: ignore[return-value]


def rank_delta(new: Rank, old: Rank) -> SignedDelta:
    """Change in implausibility, new relative to old.

    A value already impossible stays impossible, so inf-to-inf counts as
    no change; inf-to-finite would resurrect an excluded value and is a bug.
    """
    if isinstance(new, _Infinity):
        return 0 if isinstance(old, _Infinity) else INF
    if isinstance(old, _Infinity):
        raise RankArithmeticError("a finite rank cannot replace an infinite one")
    return new - old


def s_normalize(entries: Iterable[SignedDelta]) -> tuple[Rank, ...]:
    """Shift a signed rank vector so its least finite entry becomes 0.

    Infinite entries stay infinite. Raises AllInfinite when nothing is
    finite, which is how contradictory certain evidence announces itself.
    """
    values = tuple(entries)
    finite = [v for v in values if not isinstance(v, _Infinity)]
    if not finite:
        raise AllInfinite("no finite entry to normalize against")
    low = min(finite)
    return tuple(v if isinstance(v, _Infinity) else v - low for v in values)
