"""Membership in conjugacy-class closures over (Q,<), and rich normal forms.

A word descriptor stands for the orbital ordering of a reference
automorphism.  Membership of a finite map is decided by embedding its
colored quotient into the word; richness asks the quotient to realize every
letter with a quota.  richify extends any member into the strict normal
form the amalgamation algorithms operate on: per letter, singleton-letter
blocks are single orbitals, fixed-point blocks carry at least `threshold`
fixed points, and alternation blocks are strictly alternating runs of at
least `threshold` pairs whose endpoint colors fit their neighbors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .colored_words import (
    I0, M, OrderDescriptor, P, PAIR_ORDER, Z, chi_hom_exists,
    embed_into_word, is_canonical)
from .errors import DomainError, NotInClassError, PreconditionError
from .partial_iso import (
    MINUS, PLUS, ZERO, PartialIso, eliminate_bad_pairs, find_bad_pairs,
    glue_orbitals, is_good, merge_to_single_orbital, orbital_quotient)
from .rationals import PointSupplier

SINGLETON_LETTERS = {P: PLUS, M: MINUS, Z: ZERO}


def default_threshold(r: OrderDescriptor) -> int:
    n = len(r.word)
    return n ** n if n > 0 else 1


def _require_canonical(r: OrderDescriptor):
    if not r.full and not is_canonical(r):
        raise PreconditionError(f"descriptor not canonical: {r!r}")


def quotient_colors(p: PartialIso) -> tuple[str, ...]:
    return orbital_quotient(p).parities()


def in_closure(g: OrderDescriptor, r: OrderDescriptor) -> bool:
    """Whether every finite piece of a g-shaped automorphism fits into r."""
    _require_canonical(g)
    _require_canonical(r)
    if r.full:
        return True
    if g.full:
        return False
    return chi_hom_exists(g, r) is not None


def p_member(p: PartialIso, r: OrderDescriptor) -> tuple[int, ...] | None:
    """Embedding witness of p's colored quotient into r, or None."""
    _require_canonical(r)
    return embed_into_word(quotient_colors(p), r)


@dataclass(frozen=True)
class RichWitness:
    """Per-letter ranges [start, end) of consecutive quotient classes."""

    blocks: tuple[tuple[int, int], ...]
    threshold: int


def _alternating_pairs(colors, first: str, second: str) -> int:
    count = 0
    want = first
    for c in colors:
        if c == want:
            if want == second:
                count += 1
                want = first
            else:
                want = second
    return count


def _rich_block_ok(letter: str, colors, threshold: int) -> bool:
    if letter in SINGLETON_LETTERS:
        return len(colors) == 1 and colors[0] == SINGLETON_LETTERS[letter]
    if letter == I0:
        return len(colors) >= threshold and set(colors) <= {ZERO}
    e1, e2 = PAIR_ORDER[letter]
    if not set(colors) <= {e1, e2}:
        return False
    # either phase of the alternation realizes the letter
    return max(_alternating_pairs(colors, e1, e2),
               _alternating_pairs(colors, e2, e1)) >= threshold


def _strict_block_ok(letter: str, colors, threshold: int) -> bool:
    if letter in SINGLETON_LETTERS:
        return len(colors) == 1 and colors[0] == SINGLETON_LETTERS[letter]
    if letter == I0:
        return len(colors) >= threshold and set(colors) <= {ZERO}
    e1, e2 = PAIR_ORDER[letter]
    if set(colors) - {e1, e2} or len(colors) % 2 or len(colors) < 2 * threshold:
        return False
    return all(a != b for a, b in zip(colors, colors[1:]))


def _assign_blocks(colors, word, threshold, ok) -> tuple | None:
    """Partition all classes into one consecutive non-empty block per letter."""
    n, k = len(word), len(colors)
    if n == 0:
        return () if k == 0 else None

    memo: dict[tuple[int, int], int | None] = {}

    def solve(i: int, j: int) -> int | None:
        """Smallest block end for letter j starting at class i, or None."""
        if j == n:
            return k if i == k else None
        if (i, j) in memo:
            return memo[(i, j)]
        found = None
        for e in range(i + 1, k + 1):
            if not ok(word[j], colors[i:e], threshold):
                continue
            if solve(e, j + 1) is not None:
                found = e
                break
        memo[(i, j)] = found
        return found

    if solve(0, 0) is None:
        return None
    out = []
    i = 0
    for j in range(n):
        e = solve(i, j)
        out.append((i, e))
        i = e
    return tuple(out)


def is_rich(p: PartialIso, r: OrderDescriptor,
            threshold: int | None = None) -> RichWitness | None:
    """Block assignment realizing every letter's quota, or None.

    Singleton letters take exactly one class of their parity; I0 takes at
    least `threshold` fixed-point classes; an alternation letter takes a
    block over its two parities containing at least `threshold` ordered
    alternating pairs.
    """
    if r.full:
        raise DomainError("richness is undefined against the full descriptor")
    _require_canonical(r)
    if threshold is None:
        threshold = default_threshold(r)
    blocks = _assign_blocks(quotient_colors(p), r.word, threshold,
                            _rich_block_ok)
    if blocks is None:
        return None
    return RichWitness(blocks=blocks, threshold=threshold)


def strict_blocks(p: PartialIso, r: OrderDescriptor,
                  threshold: int | None = None) -> tuple | None:
    """Block ranges of the strict normal form, or None.

    Strict blocks of alternation letters are strictly alternating runs of
    even length; they are what the amalgamation step interleaves.
    """
    if r.full:
        raise DomainError("strict form is undefined against full")
    if threshold is None:
        threshold = default_threshold(r)
    return _assign_blocks(quotient_colors(p), r.word, threshold,
                          _strict_block_ok)


def plan_orientations(word) -> list[tuple[str, str]]:
    """Choose, per letter, the colors a strict block starts and ends with,
    so that neighboring blocks never meet in equal non-fixed parities."""
    plan: list[tuple[str, str]] = []
    prev_end: str | None = None
    for letter in word:
        if letter in SINGLETON_LETTERS:
            c = SINGLETON_LETTERS[letter]
            choice = (c, c)
        elif letter == I0:
            choice = (ZERO, ZERO)
        else:
            e1, e2 = PAIR_ORDER[letter]
            choice = (e1, e2)
            if prev_end == e1 and e1 != ZERO:
                choice = (e2, e1)
        if prev_end == choice[0] and choice[0] != ZERO:
            raise AssertionError(f"orientation clash in {word}")
        plan.append(choice)
        prev_end = choice[1]
    return plan


def _flip(color: str, pair) -> str:
    a, b = pair
    return b if color == a else a


def _restrict(p: PartialIso, points) -> PartialIso:
    pts = set(points)
    return PartialIso((x, y) for x, y in p.pairs if x in pts)


def _fresh_orbital(color: str, fresh: PointSupplier, lo, hi,
                   exclude) -> list[tuple[Fraction, Fraction]]:
    """A new one-pair orbital (or fixed point) strictly inside (lo, hi)."""
    if color == ZERO:
        x = fresh.pick(lo, hi, exclude)
        return [(x, x)]
    a = fresh.pick(lo, hi, exclude)
    b = fresh.pick(a, hi, exclude)
    return [(a, b)] if color == PLUS else [(b, a)]


def _eliminate_in_class_bad_pairs(p: PartialIso,
                                  fresh: PointSupplier) -> PartialIso:
    """Resolve bad pairs lying inside a single orbital, class by class."""
    while True:
        quot = orbital_quotient(p)
        bads = [(a, b) for a, b in find_bad_pairs(p)
                if quot.class_of[a] == quot.class_of[b]]
        if not bads:
            return p
        a, _ = bads[0]
        idx = quot.class_of[a]
        lo = quot.members(idx - 1)[-1] if idx > 0 else None
        hi = quot.members(idx + 1)[0] if idx + 1 < len(quot) else None
        sub = _restrict(p, quot.members(idx))
        sub = eliminate_bad_pairs(sub, fresh, lo, hi)
        p = p.extend(sub.pairs)


def richify(p: PartialIso, r: OrderDescriptor, fresh: PointSupplier,
            threshold: int | None = None) -> PartialIso:
    """Extend a member into strict rich good form for r.

    Against the full descriptor this is plain gluing: every map belongs
    there and no letter quotas exist.
    """
    if r.full:
        return glue_orbitals(p, fresh)
    _require_canonical(r)
    if threshold is None:
        threshold = default_threshold(r)
    if threshold < 1:
        raise DomainError("threshold must be positive")
    if p_member(p, r) is None:
        raise NotInClassError(f"map does not embed into {r!r}")
    if is_good(p) and strict_blocks(p, r, threshold) is not None:
        return p
    original = p

    p = _eliminate_in_class_bad_pairs(p, fresh)
    quot = orbital_quotient(p)
    wit = embed_into_word(quot.parities(), r)
    assert wit is not None
    word = r.word
    plan = plan_orientations(word)
    per_letter: list[list[int]] = [[] for _ in word]
    for cls_idx, letter_idx in enumerate(wit):
        per_letter[letter_idx].append(cls_idx)

    def window_hi(j):
        """First original support point belonging to letters beyond j."""
        for jj in range(j + 1, len(word)):
            if per_letter[jj]:
                return quot.members(per_letter[jj][0])[0]
        return None

    cursor = None  # max rational of everything materialized so far

    def place(color, hi):
        nonlocal cursor, p
        pairs = _fresh_orbital(color, fresh, cursor, hi, p.support)
        p = p.extend(pairs)
        cursor = max(max(x, y) for x, y in pairs)

    for j, letter in enumerate(word):
        classes = per_letter[j]
        start_color, end_color = plan[j]
        hi = window_hi(j)
        if letter in SINGLETON_LETTERS:
            if not classes:
                place(SINGLETON_LETTERS[letter], hi)
            elif len(classes) == 1:
                cursor = quot.members(classes[0])[-1]
            else:
                points = {m for idx in classes for m in quot.members(idx)}
                sub = _restrict(p, points)
                sub = merge_to_single_orbital(sub, fresh)
                sub = eliminate_bad_pairs(sub, fresh, cursor, hi)
                p = p.extend(sub.pairs)
                cursor = max(sub.support)
        elif letter == I0:
            if classes:
                cursor = quot.members(classes[-1])[-1]
            for _ in range(threshold - len(classes)):
                place(ZERO, hi)
        else:
            pair = PAIR_ORDER[letter]
            seq: list[str] = []
            for idx in classes:
                color = quot.parity_of(idx)
                gap_hi = quot.members(idx)[0]
                if not seq and color != start_color:
                    place(start_color, gap_hi)
                    seq.append(start_color)
                elif seq and seq[-1] == color:
                    place(_flip(color, pair), gap_hi)
                    seq.append(_flip(color, pair))
                seq.append(color)
                cursor = quot.members(idx)[-1]
            if seq and seq[-1] != end_color:
                place(end_color, hi)
                seq.append(end_color)
            want = start_color if not seq else _flip(seq[-1], pair)
            while len(seq) < 2 * threshold:
                place(want, hi)
                seq.append(want)
                want = _flip(want, pair)

    assert p.includes(original)
    assert is_good(p), "rich construction left the good family"
    assert strict_blocks(p, r, threshold) is not None
    return p


def generic_extend(p: PartialIso, anchors, r: OrderDescriptor,
                   fresh: PointSupplier,
                   threshold: int | None = None) -> PartialIso:
    """Extension whose quotient is rich and separates close anchors.

    Two anchors lying in the same alternation (or I0) block get a fresh
    pair of that block's colors (a fresh fixed point) interposed between
    their orbitals.
    """
    if r.full:
        raise DomainError("generic extension needs a word descriptor")
    _require_canonical(r)
    if threshold is None:
        threshold = default_threshold(r)
    anchors = sorted(set(Fraction(a) for a in anchors))
    support = set(p.support)
    for a in anchors:
        if a not in support:
            raise DomainError(f"anchor {a} outside the support")
    if p_member(p, r) is None:
        raise NotInClassError(f"map does not embed into {r!r}")

    p = richify(p, r, fresh, threshold)
    blocks = strict_blocks(p, r, threshold)
    quot = orbital_quotient(p)
    new_pairs: list[tuple[Fraction, Fraction]] = []
    taken = set(p.support)
    for j, letter in enumerate(r.word):
        if letter in SINGLETON_LETTERS:
            continue
        start, end = blocks[j]
        anchor_classes = sorted({quot.class_of[a] for a in anchors
                                 if start <= quot.class_of[a] < end})
        for c1, c2 in zip(anchor_classes, anchor_classes[1:]):
            assert c1 < c2
            glo = quot.members(c1)[-1]
            ghi = quot.members(c1 + 1)[0]
            if letter == I0:
                inserts = _fresh_orbital(ZERO, fresh, glo, ghi, taken)
            else:
                pair = PAIR_ORDER[letter]
                u = quot.parity_of(c1)
                mid = fresh.pick(glo, ghi, taken)
                first = _fresh_orbital(_flip(u, pair), fresh, glo, mid, taken)
                taken.update(q for pr in first for q in pr)
                second = _fresh_orbital(u, fresh, mid, ghi, taken)
                inserts = first + second
            taken.update(q for pr in inserts for q in pr)
            new_pairs.extend(inserts)
    p = p.extend(new_pairs)
    assert is_good(p)
    assert strict_blocks(p, r, threshold) is not None
    return p
