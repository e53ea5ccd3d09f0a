"""Finite partial order-isomorphisms of (Q,<).

A PartialIso is a finite strictly increasing partial injection.  Around it
live the parity function, the orbital quotient (equivalence classes of the
finite relatedness closure), bad-pair analysis, and the two normalization
procedures: merging same-parity orbitals into one and eliminating bad pairs.
Good maps (no bad pairs, adjacent non-fixed orbitals of opposite parity)
are the normal form every later construction works over.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DomainError, ParseError, PreconditionError
from .rationals import PointSupplier, format_rational, parse_rational

PLUS = "+"
MINUS = "-"
ZERO = "0"


class Monomap:
    """A finite strictly increasing injection of Q (an order-embedding)."""

    __slots__ = ("pairs", "_map")

    def __init__(self, pairs):
        pairs = tuple(sorted((Fraction(x), Fraction(y)) for x, y in pairs))
        for (x1, y1), (x2, y2) in zip(pairs, pairs[1:]):
            if x1 == x2 or y1 >= y2:
                raise PreconditionError(f"not strictly increasing at {x2}")
        self.pairs = pairs
        self._map = dict(pairs)

    @classmethod
    def identity_on(cls, points) -> "Monomap":
        return cls((p, p) for p in points)

    def __call__(self, x: Fraction) -> Fraction:
        try:
            return self._map[x]
        except KeyError:
            raise DomainError(f"{x} not in embedding domain") from None

    def __contains__(self, x) -> bool:
        return x in self._map

    def __eq__(self, other):
        return isinstance(other, Monomap) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        body = ", ".join(f"{x}->{y}" for x, y in self.pairs)
        return f"Monomap({body})"

    def domain(self):
        return tuple(x for x, _ in self.pairs)

    def compose(self, inner: "Monomap") -> "Monomap":
        """self after inner; defined on inner's domain."""
        return Monomap((x, self(y)) for x, y in inner.pairs)

    def extended(self, pairs) -> "Monomap":
        merged = dict(self.pairs)
        for x, y in pairs:
            if x in merged and merged[x] != y:
                raise PreconditionError(f"conflicting image for {x}")
            merged[x] = y
        return Monomap(merged.items())

    def fixes(self, points) -> bool:
        return all(p in self._map and self._map[p] == p for p in points)


class PartialIso:
    """Finite strictly increasing partial injection of Q, sorted by source."""

    __slots__ = ("pairs", "_map", "_inv", "support")

    def __init__(self, pairs):
        pairs = tuple(sorted((Fraction(x), Fraction(y)) for x, y in pairs))
        for (x1, y1), (x2, y2) in zip(pairs, pairs[1:]):
            if x1 == x2:
                raise PreconditionError(f"duplicate source {x1}")
            if y1 >= y2:
                raise PreconditionError(
                    f"images not increasing: {x1}->{y1}, {x2}->{y2}")
        self.pairs = pairs
        self._map = {x: y for x, y in pairs}
        self._inv = {y: x for x, y in pairs}
        self.support = tuple(sorted(set(self._map) | set(self._inv)))

    @classmethod
    def from_map(cls, mapping) -> "PartialIso":
        return cls(mapping.items())

    @classmethod
    def empty(cls) -> "PartialIso":
        return cls(())

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        return isinstance(other, PartialIso) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        body = ", ".join(f"{format_rational(x)}->{format_rational(y)}"
                         for x, y in self.pairs)
        return f"PartialIso({{{body}}})"

    def image(self, x) -> Fraction | None:
        return self._map.get(x)

    def preimage(self, y) -> Fraction | None:
        return self._inv.get(y)

    def in_domain(self, x) -> bool:
        return x in self._map

    def in_range(self, y) -> bool:
        return y in self._inv

    def domain(self):
        return tuple(x for x, _ in self.pairs)

    def range(self):
        return tuple(sorted(self._inv))

    def extend(self, new_pairs) -> "PartialIso":
        merged = dict(self.pairs)
        for x, y in new_pairs:
            if x in merged and merged[x] != y:
                raise PreconditionError(f"conflicting image for {x}")
            merged[x] = y
        return PartialIso(merged.items())

    def includes(self, other: "PartialIso") -> bool:
        """Graph inclusion: every pair of `other` is a pair of self."""
        return all(self._map.get(x) == y for x, y in other.pairs)

    def reflect(self) -> "PartialIso":
        """Conjugate by the order reversal x -> -x; swaps + and - parities."""
        return PartialIso((-x, -y) for x, y in self.pairs)


def parity(p: PartialIso, a: Fraction) -> str:
    """The parity of a support point: +, -, or 0."""
    y = p.image(a)
    if y is not None:
        return PLUS if y > a else MINUS if y < a else ZERO
    x = p.preimage(a)
    if x is not None:
        return PLUS if a > x else MINUS if a < x else ZERO
    raise DomainError(f"{a} not in the support of {p!r}")


def _one_step_related(p: PartialIso, a: Fraction, b: Fraction) -> bool:
    """Direct relatedness of two support points (before transitive closure)."""
    if a == b:
        return True
    pa, pb = parity(p, a), parity(p, b)
    ia, ib = p.image(a), p.image(b)
    ja, jb = p.preimage(a), p.preimage(b)
    if pa == PLUS or pb == PLUS:
        if ia is not None and a <= b <= ia:
            return True
        if ib is not None and b <= a <= ib:
            return True
        if ja is not None and ja <= b <= a:
            return True
        if jb is not None and jb <= a <= b:
            return True
    if pa == MINUS or pb == MINUS:
        if ja is not None and a <= b <= ja:
            return True
        if jb is not None and b <= a <= jb:
            return True
        if ia is not None and ia <= b <= a:
            return True
        if ib is not None and ib <= a <= b:
            return True
    return False


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


class OrbitalQuotient:
    """Ordered colored classes of the relatedness closure on the support."""

    __slots__ = ("classes", "class_of")

    def __init__(self, classes, class_of):
        self.classes = classes        # tuple of (parity, members-tuple)
        self.class_of = class_of      # support point -> class index

    def __len__(self):
        return len(self.classes)

    def __repr__(self):
        body = ", ".join(
            f"({par}:{','.join(format_rational(m) for m in members)})"
            for par, members in self.classes)
        return f"OrbitalQuotient[{body}]"

    def parities(self) -> tuple[str, ...]:
        return tuple(par for par, _ in self.classes)

    def members(self, i):
        return self.classes[i][1]

    def parity_of(self, i) -> str:
        return self.classes[i][0]


def orbital_quotient(p: PartialIso) -> OrbitalQuotient:
    """Classes of relatedness on the support, ordered and colored."""
    supp = p.support
    uf = _UnionFind(supp)
    for i, a in enumerate(supp):
        for b in supp[i + 1:]:
            if _one_step_related(p, a, b):
                uf.union(a, b)
    groups: dict[Fraction, list[Fraction]] = {}
    for a in supp:
        groups.setdefault(uf.find(a), []).append(a)
    ordered = sorted(groups.values(), key=lambda g: g[0])
    classes = []
    class_of = {}
    for idx, members in enumerate(ordered):
        pars = {parity(p, m) for m in members}
        assert len(pars) == 1, f"mixed parities in one class: {members}"
        classes.append((pars.pop(), tuple(members)))
        for m in members:
            class_of[m] = idx
    # classes are order-convex: each lies strictly below the next
    for (_, m1), (_, m2) in zip(classes, classes[1:]):
        assert m1[-1] < m2[0]
    return OrbitalQuotient(tuple(classes), class_of)


def find_bad_pairs(p: PartialIso) -> list[tuple[Fraction, Fraction]]:
    """All support pairs a < a' obstructing single-orbital form.

    A pair is bad when every class weakly between the two points has parity +
    while p(a) and the preimage of a' are undefined, or dually for parity -.
    """
    quot = orbital_quotient(p)
    pars = quot.parities()
    supp = p.support
    bad = []
    for i, a in enumerate(supp):
        for b in supp[i + 1:]:
            ca, cb = quot.class_of[a], quot.class_of[b]
            span = set(pars[ca:cb + 1])
            if span == {PLUS} and not p.in_domain(a) and not p.in_range(b):
                bad.append((a, b))
            elif span == {MINUS} and not p.in_domain(b) and not p.in_range(a):
                bad.append((a, b))
    return bad


def is_good(p: PartialIso) -> bool:
    """The good-isomorphism predicate: no bad pairs, and neighboring
    non-fixed orbitals carry different parities."""
    if find_bad_pairs(p):
        return False
    pars = orbital_quotient(p).parities()
    for a, b in zip(pars, pars[1:]):
        if a == b and a in (PLUS, MINUS):
            return False
    return True


def _monochromatic_parity(quot: OrbitalQuotient) -> str | None:
    pars = set(quot.parities())
    if pars <= {PLUS}:
        return PLUS
    if pars <= {MINUS}:
        return MINUS
    return None


def _merge_classes(p: PartialIso, class_members: list[tuple[Fraction, ...]],
                   fresh: PointSupplier) -> PartialIso:
    """Chain consecutive same-parity-+ classes into one orbital.

    For each gap, the top of the lower class maps to a new point which maps
    on to the bottom of the upper class.
    """
    for lower, upper in zip(class_members, class_members[1:]):
        top, bottom = lower[-1], upper[0]
        assert not p.in_domain(top) and not p.in_range(bottom)
        mid = fresh.pick(top, bottom, exclude=p.support)
        p = p.extend([(top, mid), (mid, bottom)])
    return p


def merge_to_single_orbital(p: PartialIso, fresh: PointSupplier) -> PartialIso:
    """Extend an all-+ (or all--) map so its quotient is a single orbital."""
    quot = orbital_quotient(p)
    if len(quot) <= 1:
        return p
    par = _monochromatic_parity(quot)
    if par is None:
        raise PreconditionError("orbitals of mixed parity")
    if par == MINUS:
        return merge_to_single_orbital(p.reflect(), _Reflected(fresh)).reflect()
    return _merge_classes(p, [m for _, m in quot.classes], fresh)


class _Reflected:
    """View of a supplier that picks inside the reflected interval."""

    def __init__(self, inner: PointSupplier):
        self.inner = inner

    def pick(self, lo, hi, exclude=()):
        r_lo = None if hi is None else -hi
        r_hi = None if lo is None else -lo
        return -self.inner.pick(r_lo, r_hi, [-e for e in exclude])

    def pick_many(self, count, lo, hi, exclude=()):
        return [self.pick(lo, hi, exclude) for _ in range(count)]


def _chain_down(p: PartialIso, a: Fraction, target: Fraction,
                fresh: PointSupplier, lo_bound, hi_bound) -> PartialIso:
    """Resolve an in-orbital + bad pair (a, target) by a descending chain.

    New sources b are inserted with p(b) = target, then the chosen b becomes
    the next target, until the chain drops below a.  Each b sits above every
    support point that no jump over the current target dominates.
    """
    while True:
        dom = p.domain()
        x_hi = min((x for x in dom if p.image(x) > target), default=None)
        s_ok = [c for c in p.support
                if not any(x <= c and p.image(x) > target for x in dom)]
        lo = max(s_ok, default=None)
        if lo_bound is not None and (lo is None or lo < lo_bound):
            lo = lo_bound
        hi = min((v for v in (x_hi, target, hi_bound) if v is not None))
        b = fresh.pick(lo, hi, exclude=p.support)
        p = p.extend([(b, target)])
        if b < a:
            return p
        target = b


def eliminate_bad_pairs(p: PartialIso, fresh: PointSupplier,
                        lo_bound=None, hi_bound=None) -> PartialIso:
    """Extend a single-parity map until it has no bad pairs.

    Cross-orbital bad pairs are resolved by chaining the classes they span
    into one orbital; in-orbital ones by the descending-chain construction.
    The class count never grows.
    """
    quot = orbital_quotient(p)
    par = _monochromatic_parity(quot)
    if par is None:
        raise PreconditionError("orbitals of mixed parity")
    if par == MINUS:
        r_lo = None if hi_bound is None else -hi_bound
        r_hi = None if lo_bound is None else -lo_bound
        return eliminate_bad_pairs(
            p.reflect(), _Reflected(fresh), r_lo, r_hi).reflect()

    guard = 40 + 4 * len(p.support) ** 2
    for _ in range(guard):
        bads = find_bad_pairs(p)
        if not bads:
            return p
        a, b = bads[0]
        quot = orbital_quotient(p)
        ca, cb = quot.class_of[a], quot.class_of[b]
        if ca != cb:
            p = _merge_classes(
                p, [quot.members(i) for i in range(ca, cb + 1)], fresh)
        else:
            p = _chain_down(p, a, b, fresh, lo_bound, hi_bound)
    raise AssertionError("bad-pair elimination did not converge")


def glue_orbitals(p: PartialIso, fresh: PointSupplier) -> PartialIso:
    """Extend to a good isomorphism.

    Each maximal run of consecutive same-parity non-fixed orbitals is merged
    into a single orbital inside the open interval bounded by its neighbors,
    and bad pairs are eliminated.
    """
    quot = orbital_quotient(p)
    pars = quot.parities()
    runs: list[tuple[int, int, str]] = []  # [start, end) with parity
    i = 0
    while i < len(pars):
        if pars[i] == ZERO:
            i += 1
            continue
        j = i
        while j < len(pars) and pars[j] == pars[i]:
            j += 1
        runs.append((i, j, pars[i]))
        i = j
    for start, end, _ in reversed(runs):
        members = [quot.members(k) for k in range(start, end)]
        points = {m for ms in members for m in ms}
        sub = PartialIso((x, y) for x, y in p.pairs if x in points)
        lo = quot.members(start - 1)[-1] if start > 0 else None
        hi = quot.members(end)[0] if end < len(quot) else None
        sub = merge_to_single_orbital(sub, fresh)
        sub = eliminate_bad_pairs(sub, fresh, lo, hi)
        p = p.extend(sub.pairs)
    assert is_good(p), "gluing failed to reach good form"
    return p


def parse_partial_iso(text: str) -> PartialIso:
    """One pair per line, "p/q -> r/s"; blank lines are skipped."""
    pairs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        if "->" not in line:
            raise ParseError(f"line {lineno}: expected 'x -> y', got {line!r}")
        left, right = line.split("->", 1)
        pairs.append((parse_rational(left), parse_rational(right)))
    try:
        return PartialIso(pairs)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def format_partial_iso(p: PartialIso) -> str:
    return "\n".join(f"{format_rational(x)} -> {format_rational(y)}"
                     for x, y in p.pairs)
