"""Truncated free associative algebra on x and y.

Elements are noncommutative polynomials stored as sparse maps from words
(strings over ``xy``, the empty word being the scalar slot) to rational
coefficients.  Every operation silently drops terms above the degree cap,
which is exactly the arithmetic of the quotient algebra at that cap.
"""

from fractions import Fraction

from .errors import CapMismatch


def _require_same_cap(a, b):
    if a.cap != b.cap:
        raise CapMismatch(f"cap mismatch: {a.cap} != {b.cap}")


class AssocElt:
    """Noncommutative polynomial in x, y truncated at degree ``cap``."""

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
    def one(cls, cap):
        return cls(cap, {"": 1})

    @classmethod
    def word(cls, w, cap, coeff=1):
        return cls(cap, {w: coeff})

    def is_zero(self):
        return not self.coeffs

    def constant_term(self):
        return self.coeffs.get("", Fraction(0))

    def homogeneous_part(self, d):
        return AssocElt(self.cap, {w: c for w, c in self.coeffs.items() if len(w) == d})

    def truncate(self, n):
        if n > self.cap:
            raise ValueError("cannot extend the cap by truncation")
        return AssocElt(n, {w: c for w, c in self.coeffs.items() if len(w) <= n})

    def with_cap(self, n):
        """Reinterpret at cap ``n`` >= current cap (zero extension)."""
        if n < self.cap:
            raise ValueError("use truncate to lower the cap")
        return AssocElt(n, self.coeffs)

    def __eq__(self, other):
        return (
            isinstance(other, AssocElt)
            and self.cap == other.cap
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.cap, tuple(sorted(self.coeffs.items()))))

    def __add__(self, other):
        _require_same_cap(self, other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out.get(w, 0) + c
            if s == 0:
                out.pop(w, None)
            else:
                out[w] = s
        return AssocElt(self.cap, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return AssocElt(self.cap, {w: -c for w, c in self.coeffs.items()})

    def __rmul__(self, scalar):
        scalar = Fraction(scalar)
        if scalar == 0:
            return AssocElt.zero(self.cap)
        return AssocElt(self.cap, {w: scalar * c for w, c in self.coeffs.items()})

    def __mul__(self, other):
        """Concatenation product, truncated at the cap."""
        if isinstance(other, (int, Fraction)):
            return self.__rmul__(other)
        _require_same_cap(self, other)
        cap = self.cap
        out = {}
        # Group by degree so over-cap pairs are skipped wholesale.
        left = {}
        for w, c in self.coeffs.items():
            left.setdefault(len(w), []).append((w, c))
        right = {}
        for w, c in other.coeffs.items():
            right.setdefault(len(w), []).append((w, c))
        for da, terms_a in left.items():
            for db, terms_b in right.items():
                if da + db > cap:
                    continue
                for wa, ca in terms_a:
                    for wb, cb in terms_b:
                        w = wa + wb
                        s = out.get(w, 0) + ca * cb
                        if s == 0:
                            out.pop(w, None)
                        else:
                            out[w] = s
        elt = AssocElt.__new__(AssocElt)
        elt.cap = cap
        elt.coeffs = out
        return elt

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = AssocElt.one(self.cap)
        for _ in range(n):
            out = out * self
        return out

    def min_degree(self):
        """Lowest degree with a nonzero term; None for the zero element."""
        if not self.coeffs:
            return None
        return min(len(w) for w in self.coeffs)

    def sorted_terms(self):
        """Terms ordered by (degree, word) — the canonical order."""
        return sorted(self.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{c}*{w or '1'}" for w, c in self.sorted_terms()]
        return " + ".join(parts)


def assoc_mul(a, b):
    """Product in the truncated algebra; same as ``a * b``."""
    return a * b


def assoc_exp(a):
    """Exponential series of an element with zero constant term."""
    if a.constant_term() != 0:
        raise ValueError("exp requires zero constant term")
    out = AssocElt.one(a.cap)
    term = AssocElt.one(a.cap)
    for k in range(1, a.cap + 1):
        term = Fraction(1, k) * (term * a)
        if term.is_zero():
            break
        out = out + term
    return out


def assoc_log(a):
    """Logarithm series of an element with constant term 1."""
    if a.constant_term() != 1:
        raise ValueError("log requires constant term 1")
    u = a - AssocElt.one(a.cap)
    out = AssocElt.zero(a.cap)
    power = AssocElt.one(a.cap)
    for k in range(1, a.cap + 1):
        power = power * u
        if power.is_zero():
            break
        out = out + (Fraction((-1) ** (k + 1), k) * power)
    return out


def decompose(a):
    """Unique split ``a = a0 + dx*x + dy*y``.

    ``dx`` collects the words ending in x with the final letter removed,
    ``dy`` likewise for y, and ``a0`` is the scalar part.
    """
    a0 = a.constant_term()
    dx = {}
    dy = {}
    for w, c in a.coeffs.items():
        if not w:
            continue
        if w[-1] == "x":
            dx[w[:-1]] = c
        else:
            dy[w[:-1]] = c
    return a0, AssocElt(a.cap, dx), AssocElt(a.cap, dy)
