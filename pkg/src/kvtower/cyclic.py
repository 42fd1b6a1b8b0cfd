"""Cyclic words: the quotient of the associative algebra by commutators.

A cyclic word is stored by its canonical necklace — the lexicographically
least rotation — so the trace map just rotates every word to canonical
form and accumulates coefficients.
"""

from fractions import Fraction

from .assoc import AssocElt
from .errors import CapMismatch
from .lie import bch_xy, lie_to_assoc
from .words import min_rotation


class CycElt:
    """Element of the space of cyclic words truncated at ``cap``."""

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
                if w != min_rotation(w):
                    raise ValueError(f"not a canonical necklace: {w!r}")
                c = Fraction(c)
                if c != 0:
                    store[w] = c
        self.coeffs = store

    @classmethod
    def zero(cls, cap):
        return cls(cap)

    def is_zero(self):
        return not self.coeffs

    def coeff(self, word):
        return self.coeffs.get(min_rotation(word), Fraction(0))

    def min_degree(self):
        if not self.coeffs:
            return None
        return min(len(w) for w in self.coeffs)

    def homogeneous_part(self, d):
        return CycElt(self.cap, {w: c for w, c in self.coeffs.items() if len(w) == d})

    def truncate(self, n):
        if n > self.cap:
            raise ValueError("cannot extend the cap by truncation")
        return CycElt(n, {w: c for w, c in self.coeffs.items() if len(w) <= n})

    def with_cap(self, n):
        if n < self.cap:
            raise ValueError("use truncate to lower the cap")
        return CycElt(n, self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, CycElt)
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
        return CycElt(self.cap, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CycElt(self.cap, {w: -c for w, c in self.coeffs.items()})

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        if scalar == 0:
            return CycElt.zero(self.cap)
        return CycElt(self.cap, {w: scalar * c for w, c in self.coeffs.items()})

    def sorted_terms(self):
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{c}*({w})" for w, c in self.sorted_terms())


def trace(a):
    """Project an associative element onto cyclic words."""
    out = {}
    for w, c in a.coeffs.items():
        k = min_rotation(w)
        s = out.get(k, 0) + c
        if s == 0:
            out.pop(k, None)
        else:
            out[k] = s
    elt = CycElt.__new__(CycElt)
    elt.cap = a.cap
    elt.coeffs = out
    return elt


def duflo_pattern(k, target, cap):
    """Trace of ``w^k - x^k - y^k`` with ``w`` either ``x+y`` or the BCH
    series, truncated at ``cap``.

    These are the right-hand-side building blocks the Duflo coefficient
    ``r_k`` multiplies in the second equation of each system.
    """
    if not 2 <= k <= cap:
        raise ValueError(f"k must satisfy 2 <= k <= cap, got {k}")
    if target == "sum":
        w = AssocElt(cap, {"x": 1, "y": 1})
    elif target == "bch":
        w = lie_to_assoc(bch_xy(cap))
    else:
        raise ValueError(f"unknown target {target!r}")
    wk = w**k
    xk = AssocElt.word("x" * k, cap)
    yk = AssocElt.word("y" * k, cap)
    return trace(wk - xk - yk)
