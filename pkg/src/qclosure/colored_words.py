"""The seven-letter interval calculus for {+,-,0}-colored linear orders.

Letters name interval types of an orbital ordering: single-parity intervals
P, M, Z, the infinite fixed-point interval I0, and the three unbounded
alternation types IPM, IPZ, IMZ.  Containment orders the letters; canonical
words are the normal forms of infinite orbital orderings, and the two
homomorphism tests decide when one colored structure maps into another.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidWordError, ParseError, PreconditionError
from .partial_iso import MINUS, PLUS, ZERO

P, M, Z, I0, IPM, IPZ, IMZ = "P", "M", "Z", "I0", "IPM", "IPZ", "IMZ"

ALPHABET = (P, M, Z, I0, IPM, IPZ, IMZ)

LETTER_COLORS = {
    P: frozenset({PLUS}),
    M: frozenset({MINUS}),
    Z: frozenset({ZERO}),
    I0: frozenset({ZERO}),
    IPM: frozenset({PLUS, MINUS}),
    IPZ: frozenset({PLUS, ZERO}),
    IMZ: frozenset({MINUS, ZERO}),
}

INFINITE_PAIR_LETTERS = frozenset({IPM, IPZ, IMZ})

# the pair (ε1, ε2) a strict alternation of the letter starts and ends with
PAIR_ORDER = {IPM: (PLUS, MINUS), IPZ: (PLUS, ZERO), IMZ: (MINUS, ZERO)}

_STRICT_LEQ = frozenset({
    (Z, I0), (Z, IPZ), (Z, IMZ),
    (P, IPM), (P, IPZ),
    (M, IPM), (M, IMZ),
    (I0, IPZ), (I0, IMZ),
})


def chi_leq(c1: str, c2: str) -> bool:
    """Containment of interval types; reflexive, nothing beyond the table."""
    if c1 not in LETTER_COLORS or c2 not in LETTER_COLORS:
        raise ParseError(f"unknown letter {c1!r} or {c2!r}")
    return c1 == c2 or (c1, c2) in _STRICT_LEQ


@dataclass(frozen=True)
class OrderDescriptor:
    """Finite description of an infinite colored orbital ordering: either
    the unrestricted type (full) or a word over the seven letters."""

    full: bool
    word: tuple[str, ...] = ()

    def __post_init__(self):
        if self.full and self.word:
            raise PreconditionError("full descriptors carry no word")
        for letter in self.word:
            if letter not in LETTER_COLORS:
                raise ParseError(f"unknown letter {letter!r}")

    @classmethod
    def of(cls, *letters: str) -> "OrderDescriptor":
        return cls(full=False, word=tuple(letters))

    def __repr__(self):
        return "OrderDescriptor(FULL)" if self.full else \
            f"OrderDescriptor({','.join(self.word) or 'empty'})"


FULL = OrderDescriptor(full=True)


def parse_word(text: str) -> OrderDescriptor:
    text = text.strip()
    if text.upper() == "FULL":
        return FULL
    letters = tuple(tok.strip() for tok in text.split(",") if tok.strip())
    if not letters:
        raise ParseError("empty word")
    for letter in letters:
        if letter not in LETTER_COLORS:
            raise ParseError(f"unknown letter {letter!r}")
    return OrderDescriptor(full=False, word=letters)


def format_word(d: OrderDescriptor) -> str:
    return "FULL" if d.full else ",".join(d.word)


def parse_colored_order(text: str) -> tuple[str, ...]:
    colors = tuple(text.strip())
    for c in colors:
        if c not in (PLUS, MINUS, ZERO):
            raise ParseError(f"unknown color {c!r}")
    return colors


def format_colored_order(seq) -> str:
    return "".join(seq)


# ------------------------------------------------------------- decomposition

def decompose_bichromatic(seq) -> list[list[str]]:
    """Maximal monochromatic runs of a two-colored order."""
    seq = list(seq)
    if len(set(seq)) > 2:
        raise PreconditionError("more than two colors")
    blocks: list[list[str]] = []
    for c in seq:
        if blocks and blocks[-1][-1] == c:
            blocks[-1].append(c)
        else:
            blocks.append([c])
    return blocks


_CYCLE = (PLUS, MINUS, ZERO)


def _cyc_next(c):
    return _CYCLE[(_CYCLE.index(c) + 1) % 3]


def _cyc_prev(c):
    return _CYCLE[(_CYCLE.index(c) - 1) % 3]


def decompose_trichromatic(seq) -> list[list[str]]:
    """Split a three-colored order into consecutive two-colored intervals.

    Anchors a maximal (+,-,0)-patterned subsequence, splits every segment
    between consecutive anchors by the maximal-initial / maximal-final rule,
    then re-joins neighbors whose union still uses at most two colors.
    """
    seq = list(seq)
    if not seq:
        return []
    if len(set(seq)) <= 2:
        return [seq]

    anchors: list[int] = []
    needed = 0
    for pos, c in enumerate(seq):
        if c == _CYCLE[needed % 3]:
            anchors.append(pos)
            needed += 1
    anchors = anchors[:3 * (len(anchors) // 3)]
    if not anchors:
        anchors = [0]

    cuts = anchors + [len(seq)]
    segments = []
    if cuts[0] > 0:
        left_virtual = _cyc_prev(seq[anchors[0]])
        segments.append((0, cuts[0], left_virtual, seq[anchors[0]]))
    for k in range(len(anchors)):
        start, stop = cuts[k], cuts[k + 1]
        cl = seq[anchors[k]]
        cr = seq[anchors[k + 1]] if k + 1 < len(anchors) else _cyc_next(cl)
        segments.append((start, stop, cl, cr))

    blocks: list[list[str]] = []
    for start, stop, cl, cr in segments:
        if start == stop:
            continue
        part = seq[start:stop]
        blocks.extend(_split_segment(part, cl, cr))

    merged: list[list[str]] = []
    for b in blocks:
        if merged and len(set(merged[-1]) | set(b)) <= 2:
            merged[-1] = merged[-1] + b
        else:
            merged.append(b)
    for b in merged:
        assert len(set(b)) <= 2
    return merged


def _split_segment(part: list[str], cl: str, cr: str) -> list[list[str]]:
    """A1 = longest prefix missing cr, A4 = longest suffix missing cl."""
    n = len(part)
    a1 = 0
    while a1 < n and part[a1] != cr:
        a1 += 1
    a4 = n
    while a4 > 0 and part[a4 - 1] != cl:
        a4 -= 1
    if a1 >= a4:
        pieces = [part[:a1], part[a1:]]
    else:
        pieces = [part[:a1], part[a1:a4], part[a4:]]
    out = [piece for piece in pieces if piece]
    fixed: list[list[str]] = []
    for piece in out:
        if len(set(piece)) <= 2:
            fixed.append(piece)
        else:
            # defensive: peel maximal two-colored prefixes
            rest = piece
            while rest:
                take = 2
                while take <= len(rest) and len(set(rest[:take])) <= 2:
                    take += 1
                fixed.append(rest[:take - 1])
                rest = rest[take - 1:]
    return fixed


# --------------------------------------------------------------- canonicity

def _word_is_canonical(word: tuple[str, ...]) -> bool:
    for a, b in zip(word, word[1:]):
        if chi_leq(a, b) or chi_leq(b, a):
            return False
    n = len(word)
    for i in range(n):
        x = word[i]
        if x not in INFINITE_PAIR_LETTERS:
            continue
        for j in range(i + 2, n):
            y = word[j]
            if y not in INFINITE_PAIR_LETTERS or y == x:
                continue
            between = word[i + 1:j]
            allowed = {P, M, Z, I0, x, y}
            seen = {z for z in between if z in allowed}
            cond_a = len(seen) >= 2
            cond_b = any(_separates(z, x, y) for z in between)
            if not (cond_a or cond_b):
                return False
    return True


def _separates(z: str, x: str, y: str) -> bool:
    """Whether z is an alternation letter whose pair can be split into one
    color outside x and one outside y."""
    if z not in INFINITE_PAIR_LETTERS:
        return False
    c1, c2 = tuple(LETTER_COLORS[z])
    px, py = LETTER_COLORS[x], LETTER_COLORS[y]
    return (c1 not in px and c2 not in py) or (c2 not in px and c1 not in py)


def is_canonical(d: OrderDescriptor) -> bool:
    """Both normal-form conditions over the word positions; full passes."""
    if d.full:
        return True
    return _word_is_canonical(d.word)


@lru_cache(maxsize=None)
def _canonical_word(word: tuple[str, ...]) -> tuple[str, ...]:
    letters = list(word)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            a, b = letters[i], letters[i + 1]
            if a == b == Z:
                raise InvalidWordError(
                    "two adjacent singleton fixed-point intervals")
            if a == b:
                del letters[i + 1]
            elif chi_leq(a, b):
                del letters[i]
            elif chi_leq(b, a):
                del letters[i + 1]
            else:
                continue
            changed = True
            break
    out = tuple(letters)
    if not _word_is_canonical(out):
        raise InvalidWordError(f"irreducible but not canonical: {out}")
    return out


def canonicalize(d: OrderDescriptor) -> OrderDescriptor:
    """Merge adjacent comparable or equal letters until canonical.

    Words with two adjacent Z letters describe no orbital ordering and are
    rejected rather than repaired.
    """
    if d.full:
        return d
    return OrderDescriptor(full=False, word=_canonical_word(d.word))


# ------------------------------------------------------------ homomorphisms

def kappa_hom_exists(a, b) -> tuple[int, ...] | None:
    """Color-preserving monotone position map a -> b, injective on 0s.

    Greedy left-to-right; returns the position assignment or None.
    """
    a, b = tuple(a), tuple(b)
    out: list[int] = []
    j = -1
    for color in a:
        start = j + 1 if (color == ZERO and j >= 0 and b[j] == ZERO) else max(j, 0)
        k = start
        while k < len(b) and b[k] != color:
            k += 1
        if k >= len(b):
            return None
        out.append(k)
        j = k
    return tuple(out)


# what a letter may absorb: allowed colors and a capacity (None = unbounded)
_LETTER_LANG = {
    P: (frozenset({PLUS}), None),
    M: (frozenset({MINUS}), None),
    Z: (frozenset({ZERO}), 1),
    I0: (frozenset({ZERO}), None),
    IPM: (frozenset({PLUS, MINUS}), None),
    IPZ: (frozenset({PLUS, ZERO}), None),
    IMZ: (frozenset({MINUS, ZERO}), None),
}


def embed_into_word(a, d: OrderDescriptor) -> tuple[int, ...] | None:
    """Monotone assignment of colored positions to the word's letters.

    Each letter absorbs only its own colors; Z absorbs at most one point.
    For a full descriptor any colored order fits and the assignment is the
    sentinel -1 at every position.
    """
    a = tuple(a)
    if d.full:
        return tuple(-1 for _ in a)
    word = d.word
    n = len(word)

    memo: dict[tuple[int, int, int], bool] = {}

    def feasible(i: int, j: int, used: int) -> bool:
        if i == len(a):
            return True
        if j == n:
            return False
        key = (i, j, used)
        if key in memo:
            return memo[key]
        colors, cap = _LETTER_LANG[word[j]]
        ok = feasible(i, j + 1, 0)
        if not ok and a[i] in colors and (cap is None or used < cap):
            ok = feasible(i + 1, j, used + 1 if cap is not None else 0)
        memo[key] = ok
        return ok

    if not feasible(0, 0, 0):
        return None
    out: list[int] = []
    i, j, used = 0, 0, 0
    while i < len(a):
        colors, cap = _LETTER_LANG[word[j]]
        if a[i] in colors and (cap is None or used < cap) and \
                feasible(i + 1, j, used + 1 if cap is not None else 0):
            out.append(j)
            i += 1
            used = used + 1 if cap is not None else 0
        else:
            j += 1
            used = 0
    return tuple(out)


def chi_hom_exists(g: OrderDescriptor, r: OrderDescriptor) -> tuple[int, ...] | None:
    """Monotone letter map with containment-compatible colors, or None."""
    if g.full or r.full:
        raise PreconditionError("letter maps are defined on words only")
    gw, rw = g.word, r.word
    if not gw:
        return ()
    reach_prev: list[bool] = []
    table: list[list[bool]] = []
    for i, gl in enumerate(gw):
        row = []
        for j, rl in enumerate(rw):
            ok = chi_leq(gl, rl)
            if ok and i > 0:
                ok = any(reach_prev[:j + 1])
            row.append(ok)
        table.append(row)
        reach_prev = row
    if not any(table[-1]):
        return None
    out: list[int] = []
    j = next(k for k, ok in enumerate(table[-1]) if ok)
    out.append(j)
    for i in range(len(gw) - 2, -1, -1):
        j = next(k for k, ok in enumerate(table[i][:j + 1]) if ok)
        out.append(j)
    out.reverse()
    return tuple(out)
