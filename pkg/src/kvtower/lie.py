"""Degree-truncated free Lie algebra on x and y in the Lyndon basis.

A basis element is the standard bracketing of a Lyndon word: for a word
``w = uv`` with ``v`` the longest proper Lyndon suffix, ``B(w) = [B(u),
B(v)]``.  The expansion of ``B(w)`` into the associative algebra is
triangular — its lexicographically least word is ``w`` itself, with
coefficient one — which makes conversion from associative elements a
simple elimination.

The bracket is computed through the associative algebra once per pair of
basis words and cached as structure constants; everything downstream is
sparse linear algebra over those tables.
"""

from fractions import Fraction

from .assoc import AssocElt, assoc_exp, assoc_log
from .errors import CapMismatch, NotPrimitive
from .words import is_lyndon, lyndon_words, standard_factorization

# Expansion of each Lyndon basis element as an integer word polynomial,
# and structure constants of brackets of basis elements.  Both are exact,
# homogeneous and cap-independent, so the caches are global.
_EXPANSION = {}
_BRACKET = {}


def basis_expansion(word):
    """Associative expansion of the standard bracketing of ``word``,
    as a map word -> integer coefficient."""
    cached = _EXPANSION.get(word)
    if cached is not None:
        return cached
    if len(word) == 1:
        result = {word: 1}
    else:
        u, v = standard_factorization(word)
        a = basis_expansion(u)
        b = basis_expansion(v)
        result = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                w = wa + wb
                result[w] = result.get(w, 0) + ca * cb
                w = wb + wa
                result[w] = result.get(w, 0) - ca * cb
        result = {w: c for w, c in result.items() if c}
    _EXPANSION[word] = result
    return result


def _lyndon_coords_of_homogeneous(poly, degree):
    """Express a homogeneous integer word polynomial in the Lyndon basis.

    Returns (coords, residual): ``coords`` maps Lyndon words to
    coefficients, ``residual`` is whatever is left outside the span.
    Triangularity of the basis expansions makes this a single sweep in
    lexicographic order.
    """
    residual = dict(poly)
    coords = {}
    for w in lyndon_words(degree):
        c = residual.get(w, 0)
        if c == 0:
            continue
        coords[w] = c
        for ww, cc in basis_expansion(w).items():
            s = residual.get(ww, 0) - c * cc
            if s == 0:
                residual.pop(ww, None)
            else:
                residual[ww] = s
    return coords, residual


def bracket_table(w1, w2):
    """Structure constants of ``[B(w1), B(w2)]`` in the Lyndon basis."""
    key = (w1, w2)
    cached = _BRACKET.get(key)
    if cached is not None:
        return cached
    if w1 == w2:
        result = {}
    elif (w2, w1) in _BRACKET:
        result = {w: -c for w, c in _BRACKET[(w2, w1)].items()}
    else:
        a = basis_expansion(w1)
        b = basis_expansion(w2)
        comm = {}
        for wa, ca in a.items():
            for wb, cb in b.items():
                w = wa + wb
                comm[w] = comm.get(w, 0) + ca * cb
                w = wb + wa
                comm[w] = comm.get(w, 0) - ca * cb
        comm = {w: c for w, c in comm.items() if c}
        result, residual = _lyndon_coords_of_homogeneous(comm, len(w1) + len(w2))
        if residual:
            raise AssertionError("bracket of basis elements left a residual")
    _BRACKET[key] = result
    return result


class LieElt:
    """Element of the free Lie algebra truncated at degree ``cap``,
    stored as a sparse map Lyndon word -> rational coefficient."""

    __slots__ = ("cap", "coeffs")

    def __init__(self, cap, coeffs=None):
        if cap < 1:
            raise ValueError("cap must be >= 1")
        self.cap = cap
        store = {}
        if coeffs:
            for w, c in coeffs.items():
                if len(w) > cap:
                    continue
                c = Fraction(c)
                if c != 0:
                    store[w] = c
        self.coeffs = store

    @classmethod
    def zero(cls, cap):
        return cls(cap)

    @classmethod
    def basis(cls, word, cap, coeff=1):
        if not is_lyndon(word):
            raise ValueError(f"not a Lyndon word: {word!r}")
        return cls(cap, {word: coeff})

    @classmethod
    def gen_x(cls, cap):
        return cls(cap, {"x": 1})

    @classmethod
    def gen_y(cls, cap):
        return cls(cap, {"y": 1})

    def is_zero(self):
        return not self.coeffs

    def coeff(self, word):
        return self.coeffs.get(word, Fraction(0))

    def min_degree(self):
        if not self.coeffs:
            return None
        return min(len(w) for w in self.coeffs)

    def homogeneous_part(self, d):
        return LieElt(self.cap, {w: c for w, c in self.coeffs.items() if len(w) == d})

    def truncate(self, n):
        if n > self.cap:
            raise ValueError("cannot extend the cap by truncation")
        return LieElt(n, {w: c for w, c in self.coeffs.items() if len(w) <= n})

    def with_cap(self, n):
        if n < self.cap:
            raise ValueError("use truncate to lower the cap")
        return LieElt(n, self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, LieElt)
            and self.cap == other.cap
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.cap, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other):
        if self.cap != other.cap:
            raise CapMismatch(f"cap mismatch: {self.cap} != {other.cap}")
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w, 0) + c
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
        return LieElt(self.cap, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return LieElt(self.cap, {w: -c for w, c in self.coeffs.items()})

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        if scalar == 0:
            return LieElt.zero(self.cap)
        return LieElt(self.cap, {w: scalar * c for w, c in self.coeffs.items()})

    def sorted_terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*{w}" for w, c in self.sorted_terms())


def lie_bracket(u, v):
    """Lie bracket ``[u, v]`` truncated at the common cap."""
    if u.cap != v.cap:
        raise CapMismatch(f"cap mismatch: {u.cap} != {v.cap}")
    cap = u.cap
    out = {}
    for w1, c1 in u.coeffs.items():
        d1 = len(w1)
        for w2, c2 in v.coeffs.items():
            if d1 + len(w2) > cap:
                continue
            c = c1 * c2
            for w, k in bracket_table(w1, w2).items():
                s = out.get(w, 0) + c * k
                if s == 0:
                    out.pop(w, None)
                else:
                    out[w] = s
    elt = LieElt.__new__(LieElt)
    elt.cap = cap
    elt.coeffs = out
    return elt


def lie_to_assoc(u):
    """View a Lie element inside the associative algebra by expanding all
    brackets as commutators."""
    out = {}
    for w, c in u.coeffs.items():
        for ww, k in basis_expansion(w).items():
            s = out.get(ww, 0) + c * k
            if s == 0:
                out.pop(ww, None)
            else:
                out[ww] = s
    elt = AssocElt.__new__(AssocElt)
    elt.cap = u.cap
    elt.coeffs = out
    return elt


def lie_from_assoc(a):
    """Inverse of :func:`lie_to_assoc` on its image.

    Works degree by degree, eliminating against the leading words of the
    Lyndon basis expansions.  Raises :class:`NotPrimitive` with the
    offending residual when ``a`` is not the expansion of a Lie element.
    """
    if a.constant_term() != 0:
        raise NotPrimitive(
            "nonzero constant term", AssocElt(a.cap, {"": a.constant_term()})
        )
    by_degree = {}
    for w, c in a.coeffs.items():
        by_degree.setdefault(len(w), {})[w] = c
    out = {}
    bad = {}
    for d in sorted(by_degree):
        coords, residual = _lyndon_coords_of_homogeneous(by_degree[d], d)
        out.update(coords)
        bad.update(residual)
    if bad:
        raise NotPrimitive(f"not primitive; residual {bad}", AssocElt(a.cap, bad))
    return LieElt(a.cap, out)


def bch(u, v):
    """Baker-Campbell-Hausdorff product ``log(e^u e^v)`` at the cap.

    Computed through the associative algebra; primitivity of the result
    is a theorem, so the conversion back never reports a residual.
    """
    if u.cap != v.cap:
        raise CapMismatch(f"cap mismatch: {u.cap} != {v.cap}")
    product = assoc_exp(lie_to_assoc(u)) * assoc_exp(lie_to_assoc(v))
    return lie_from_assoc(assoc_log(product))


def bch_xy(cap):
    """The series ``bch(x, y)`` at the given cap (cached)."""
    cached = _BCH_XY.get(cap)
    if cached is None:
        cached = bch(LieElt.gen_x(cap), LieElt.gen_y(cap))
        _BCH_XY[cap] = cached
    return cached


_BCH_XY = {}
