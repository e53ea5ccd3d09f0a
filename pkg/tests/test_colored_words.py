"""Chi-letter calculus: containment, decompositions, canonical words, homs."""

import random
from itertools import combinations_with_replacement, product

import pytest

from qclosure.colored_words import (
    ALPHABET, FULL, I0, IMZ, IPM, IPZ, LETTER_COLORS, M, OrderDescriptor, P,
    Z, canonicalize, chi_hom_exists, chi_leq, decompose_bichromatic,
    decompose_trichromatic, embed_into_word, format_word, is_canonical,
    kappa_hom_exists, parse_colored_order, parse_word)
from qclosure.errors import InvalidWordError, ParseError, PreconditionError
from qclosure.partial_iso import MINUS, PLUS, ZERO

W = OrderDescriptor.of


# -------------------------------------------------------------- containment

def test_chi_leq_examples():
    assert chi_leq(P, IPM)
    assert not chi_leq(Z, IPM)
    assert chi_leq(I0, I0)


def test_chi_leq_full_table():
    strict = {(Z, I0), (Z, IPZ), (Z, IMZ), (P, IPM), (P, IPZ),
              (M, IPM), (M, IMZ), (I0, IPZ), (I0, IMZ)}
    for a, b in product(ALPHABET, repeat=2):
        expected = a == b or (a, b) in strict
        assert chi_leq(a, b) == expected
    assert len(ALPHABET) == 7


# ------------------------------------------------------------ decomposition

def test_bichromatic_runs():
    assert decompose_bichromatic("++-") == [["+", "+"], ["-"]]
    assert decompose_bichromatic("+") == [["+"]]
    assert decompose_bichromatic("+-+-") == [["+"], ["-"], ["+"], ["-"]]
    with pytest.raises(PreconditionError):
        decompose_bichromatic("+-0")


def test_trichromatic_examples():
    for text in ("+-0+", "0", "++--"):
        seq = list(text)
        blocks = decompose_trichromatic(seq)
        assert [c for b in blocks for c in b] == seq
        assert all(len(set(b)) <= 2 for b in blocks)
    assert decompose_trichromatic("0") == [["0"]]
    assert decompose_trichromatic("++--") == [list("++--")]


def test_trichromatic_randomized():
    rng = random.Random(5)
    for _ in range(500):
        seq = [rng.choice("+-0") for _ in range(rng.randint(1, 12))]
        blocks = decompose_trichromatic(seq)
        assert [c for b in blocks for c in b] == seq
        assert all(len(set(b)) <= 2 for b in blocks)
        assert all(blocks) is True or blocks == []


# ---------------------------------------------------------------- canonical

def test_is_canonical_examples():
    assert is_canonical(W(P))
    assert not is_canonical(W(P, IPM))
    assert is_canonical(W(IPM, IPZ))
    assert is_canonical(FULL)


def test_canonicalize_examples():
    assert canonicalize(W(P, IPM, P)) == W(IPM)
    assert canonicalize(W(IPM, Z, IPZ)) == W(IPM, IPZ)
    assert canonicalize(W(P)) == W(P)
    assert canonicalize(FULL) == FULL


def test_canonicalize_rejects_adjacent_z():
    with pytest.raises(InvalidWordError):
        canonicalize(W(Z, Z))
    with pytest.raises(InvalidWordError):
        canonicalize(W(IPM, Z, Z, IPM))


def test_canonicalize_idempotent_short_words():
    for length in range(0, 4):
        for word in product(ALPHABET, repeat=length):
            try:
                once = canonicalize(OrderDescriptor(False, word))
            except InvalidWordError:
                continue
            assert canonicalize(once) == once
            assert is_canonical(once)


def test_separation_of_distinct_pair_letters():
    # the third alternation letter separates the other two
    assert is_canonical(W(IPM, IMZ, IPZ))
    # a single small letter between distinct pair letters does not
    bad = OrderDescriptor(False, (IPM, Z, IPZ))
    assert not is_canonical(bad)


# ------------------------------------------------------------------- kappa

def test_kappa_hom_examples():
    assert kappa_hom_exists("+", "+") == (0,)
    assert kappa_hom_exists("00", "0") is None
    assert kappa_hom_exists("++", "+") == (0, 0)


def test_kappa_hom_randomized_against_brute_force():
    rng = random.Random(9)

    def brute(a, b):
        n, m = len(a), len(b)
        for assign in product(range(m), repeat=n):
            if any(assign[i] > assign[i + 1] for i in range(n - 1)):
                continue
            if any(a[i] != b[assign[i]] for i in range(n)):
                continue
            zeros = [assign[i] for i in range(n) if a[i] == ZERO]
            if len(zeros) != len(set(zeros)):
                continue
            return True
        return n == 0

    for _ in range(400):
        a = [rng.choice("+-0") for _ in range(rng.randint(0, 4))]
        b = [rng.choice("+-0") for _ in range(rng.randint(1, 5))]
        got = kappa_hom_exists(a, b)
        assert (got is not None) == brute(a, b)
        if got is not None:
            assert list(got) == sorted(got)
            assert all(a[i] == b[j] for i, j in enumerate(got))


# ---------------------------------------------------------------- embedding

E = embed_into_word


def test_embed_examples():
    assert E("+-", W(IPM)) == (0, 0)
    assert E("00", W(Z)) is None
    assert E("+-0+-0", FULL) == (-1,) * 6


def brute_embed(a, word):
    """All monotone letter assignments, letter languages checked directly."""
    langs = {P: ({PLUS}, None), M: ({MINUS}, None), Z: ({ZERO}, 1),
             I0: ({ZERO}, None), IPM: ({PLUS, MINUS}, None),
             IPZ: ({PLUS, ZERO}, None), IMZ: ({MINUS, ZERO}, None)}
    n = len(a)
    if n == 0:
        return True
    for assign in combinations_with_replacement(range(len(word)), n):
        ok = True
        for j in set(assign):
            chunk = [a[i] for i in range(n) if assign[i] == j]
            colors, cap = langs[word[j]]
            if any(c not in colors for c in chunk):
                ok = False
                break
            if cap is not None and len(chunk) > cap:
                ok = False
                break
        if ok:
            return True
    return False


def test_embed_matches_brute_force():
    rng = random.Random(13)
    for _ in range(600):
        a = [rng.choice("+-0") for _ in range(rng.randint(0, 6))]
        word = tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 4)))
        got = E(a, OrderDescriptor(False, word))
        assert (got is not None) == brute_embed(a, word)
        if got is not None and a:
            assert list(got) == sorted(got)


# ----------------------------------------------------------------- chi homs

def test_chi_hom_examples():
    assert chi_hom_exists(W(P), W(P)) == (0,)
    assert chi_hom_exists(W(P, M), W(IPM)) == (0, 0)
    assert chi_hom_exists(W(IPM), W(P)) is None
    with pytest.raises(PreconditionError):
        chi_hom_exists(FULL, W(P))


def test_chi_hom_matches_brute_force():
    rng = random.Random(21)

    def brute(gw, rw):
        if not gw:
            return True
        for assign in product(range(len(rw)), repeat=len(gw)):
            if any(assign[i] > assign[i + 1] for i in range(len(gw) - 1)):
                continue
            if all(chi_leq(gw[i], rw[assign[i]]) for i in range(len(gw))):
                return True
        return False

    for _ in range(500):
        gw = tuple(rng.choice(ALPHABET) for _ in range(rng.randint(0, 5)))
        rw = tuple(rng.choice(ALPHABET) for _ in range(rng.randint(1, 5)))
        got = chi_hom_exists(OrderDescriptor(False, gw),
                             OrderDescriptor(False, rw))
        assert (got is not None) == brute(gw, rw)
        if got is not None and gw:
            assert list(got) == sorted(got)
            assert all(chi_leq(gw[i], rw[j]) for i, j in enumerate(got))


# --------------------------------------------------------------- text forms

def test_word_round_trip():
    assert parse_word("IPM,Z,I0") == W(IPM, Z, I0)
    assert parse_word("FULL") == FULL
    assert parse_word(format_word(W(P, IMZ))) == W(P, IMZ)
    with pytest.raises(ParseError):
        parse_word("QQ")
    assert parse_colored_order("+-0") == (PLUS, MINUS, ZERO)
    with pytest.raises(ParseError):
        parse_colored_order("+x")
