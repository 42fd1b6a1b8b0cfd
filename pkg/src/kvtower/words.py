"""Combinatorics of words over the two-letter alphabet {x, y}.

Words are plain Python strings with ``x < y`` in the lexicographic order,
so built-in string comparison is the right order everywhere.  Lyndon words
index the basis of the graded free Lie algebra; rotation-minimal words
(necklaces) index cyclic words.
"""

from functools import lru_cache

ALPHABET = "xy"


def all_words(n):
    """All words of length ``n`` in lexicographic order."""
    if n == 0:
        return [""]
    out = [""]
    for _ in range(n):
        out = [w + c for w in out for c in ALPHABET]
    return out


def rotations(word):
    return [word[i:] + word[:i] for i in range(len(word))]


def min_rotation(word):
    """Lexicographically least rotation; the canonical necklace form."""
    if len(word) < 2:
        return word
    return min(rotations(word))


def is_lyndon(word):
    """True iff ``word`` is strictly smaller than all its proper rotations."""
    if not word:
        return False
    return all(word < word[i:] + word[:i] for i in range(1, len(word)))


@lru_cache(maxsize=None)
def lyndon_words(n):
    """All Lyndon words of degree ``n`` in lexicographic order.

    Uses Duval's generation algorithm; the list length equals the
    dimension of the degree-``n`` part of the free Lie algebra on two
    generators.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    out = []
    w = [0]
    k = len(ALPHABET)
    while w:
        if len(w) == n:
            out.append("".join(ALPHABET[c] for c in w))
        # Duval step: extend periodically to length n, then increment.
        m = len(w)
        w = [w[i % m] for i in range(n)]
        while w and w[-1] == k - 1:
            w.pop()
        if w:
            w[-1] += 1
    # Duval emits Lyndon words of every length <= n in lexicographic
    # order; only the full-degree ones are kept.
    return tuple(out)


@lru_cache(maxsize=None)
def necklaces(n):
    """All rotation-minimal words of degree ``n``, lexicographically."""
    if n == 0:
        return ("",)
    return tuple(w for w in all_words(n) if w == min_rotation(w))


@lru_cache(maxsize=None)
def standard_factorization(word):
    """Split a Lyndon word as ``(u, v)`` with ``v`` the longest proper
    Lyndon suffix; the bracketing ``[B(u), B(v)]`` is the basis element."""
    if len(word) < 2:
        raise ValueError("degree-1 words do not factor")
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError(f"not a Lyndon word: {word!r}")
