"""Exact rational points of (Q,<): parsing, formatting, and fresh-point supply."""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError

Q = Fraction


def parse_rational(token: str) -> Fraction:
    """Parse "p/q" or "p" (lowest terms are not required on input)."""
    token = token.strip()
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {token!r}: {exc}") from None


def format_rational(x: Fraction) -> str:
    """Render in lowest terms, "p/q" or plain "p" for integers."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class PointSupplier:
    """Deterministic source of fresh rationals inside open intervals.

    The seed only shifts where inside an interval the first candidate lands;
    every choice is reproducible given the seed and the call sequence.  A
    supplier instance remembers what it issued, so repeated calls with the
    same window return distinct points.  Operations take the supplier as an
    argument; share one instance per top-level call, not across threads.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._issued: set[Fraction] = set()
        # first-candidate position inside (lo, hi), strictly between 0 and 1
        self._bias = Fraction((seed % 7) + 1, 8)

    def pick(self, lo: Fraction | None, hi: Fraction | None,
             exclude=()) -> Fraction:
        """A fresh rational strictly inside (lo, hi), avoiding `exclude`."""
        if lo is not None and hi is not None and lo >= hi:
            raise ValueError(f"empty interval ({lo}, {hi})")
        taken = self._issued.union(exclude)
        if lo is None and hi is None:
            x = Fraction(0)
            while x in taken:
                x += 1
        elif lo is None:
            x = hi - 1
            while x in taken:
                x -= 1
        elif hi is None:
            x = lo + 1
            while x in taken:
                x += 1
        else:
            x = lo + (hi - lo) * self._bias
            # bisect toward hi; the exclusion set is finite so this stops
            while x in taken:
                x = (x + hi) / 2
        self._issued.add(x)
        return x

    def pick_many(self, count: int, lo: Fraction | None, hi: Fraction | None,
                  exclude=()) -> list[Fraction]:
        """`count` fresh increasing rationals inside (lo, hi)."""
        out: list[Fraction] = []
        cur = lo
        for i in range(count):
            remaining = count - i
            if hi is None or cur is None or remaining == 1:
                nxt = self.pick(cur, hi, exclude)
            else:
                # leave an open sub-window for each of the later points
                nxt = self.pick(cur, cur + (hi - cur) / remaining, exclude)
            out.append(nxt)
            cur = nxt
        return out
