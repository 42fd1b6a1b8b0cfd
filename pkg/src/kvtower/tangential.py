"""Tangential derivations and tangential automorphisms.

A tangential derivation is a pair ``u = (u1, u2)`` of Lie elements acting
by ``x -> [x, u1]``, ``y -> [y, u2]``; the pair is kept in the canonical
normalized form (no ``x`` term in ``u1``, no ``y`` term in ``u2``), which
fixes the representative modulo the kernel of pairs -> derivations.

A tangential automorphism is stored by its normalized exponent pair
``F = (e^{f1}, e^{f2})``, acting by ``x -> e^{-f1} x e^{f1}`` and
``y -> e^{-f2} y e^{f2}``.  Composition, inversion, exponential and
logarithm are all computed degree by degree in exact arithmetic.

The action of an automorphism on the generators only sees exponent terms
below the cap, so the exponential of a derivation is pinned down at its
top degree by matching actions one degree above the cap; ``taut_exp`` and
``taut_log`` do that internally.
"""

import math
from fractions import Fraction

from .assoc import AssocElt, assoc_exp
from .cyclic import CycElt, trace
from .errors import CapMismatch
from .lie import LieElt, bch, lie_bracket, lie_to_assoc
from .linalg import PresolvedSystem, QMatrix
from .words import lyndon_words, standard_factorization


def _normalize_pair(u1, u2):
    c1 = dict(u1.coeffs)
    c1.pop("x", None)
    c2 = dict(u2.coeffs)
    c2.pop("y", None)
    return LieElt(u1.cap, c1), LieElt(u2.cap, c2)


class TDer:
    """Tangential derivation, normalized pair of Lie elements."""

    __slots__ = ("cap", "u1", "u2")

    def __init__(self, u1, u2):
        if u1.cap != u2.cap:
            raise CapMismatch(f"cap mismatch: {u1.cap} != {u2.cap}")
        self.cap = u1.cap
        self.u1, self.u2 = _normalize_pair(u1, u2)

    @classmethod
    def zero(cls, cap):
        return cls(LieElt.zero(cap), LieElt.zero(cap))

    def is_zero(self):
        return self.u1.is_zero() and self.u2.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, TDer)
            and self.cap == other.cap
            and self.u1 == other.u1
            and self.u2 == other.u2
        )

    def __hash__(self):
        return hash((self.cap, self.u1, self.u2))

    def __add__(self, other):
        return TDer(self.u1 + other.u1, self.u2 + other.u2)

    def __sub__(self, other):
        return TDer(self.u1 - other.u1, self.u2 - other.u2)

    def __neg__(self):
        return TDer(-self.u1, -self.u2)

    def __rmul__(self, scalar):
        return TDer(scalar * self.u1, scalar * self.u2)

    def truncate(self, n):
        return TDer(self.u1.truncate(n), self.u2.truncate(n))

    def with_cap(self, n):
        return TDer(self.u1.with_cap(n), self.u2.with_cap(n))

    def homogeneous_part(self, d):
        return TDer(self.u1.homogeneous_part(d), self.u2.homogeneous_part(d))

    def min_degree(self):
        degs = [d for d in (self.u1.min_degree(), self.u2.min_degree()) if d]
        return min(degs) if degs else None

    def __repr__(self):
        return f"TDer({self.u1!r}, {self.u2!r})"


class _DerEngine:
    """Applies one tangential derivation with memoized basis images."""

    def __init__(self, u):
        self.u = u
        self.cap = u.cap
        self._images = {
            "x": lie_bracket(LieElt.gen_x(u.cap), u.u1),
            "y": lie_bracket(LieElt.gen_y(u.cap), u.u2),
        }

    def _image(self, word):
        img = self._images.get(word)
        if img is None:
            p, q = standard_factorization(word)
            bp = LieElt.basis(p, self.cap)
            bq = LieElt.basis(q, self.cap)
            img = lie_bracket(self._image(p), bq) + lie_bracket(bp, self._image(q))
            self._images[word] = img
        return img

    def apply(self, w):
        out = LieElt.zero(self.cap)
        for word, c in w.coeffs.items():
            img = self._image(word)
            if not img.is_zero():
                out = out + c * img
        return out


def tder_apply(u, w):
    """Apply the derivation ``u`` to a Lie element by the Leibniz rule."""
    if u.cap != w.cap:
        raise CapMismatch(f"cap mismatch: {u.cap} != {w.cap}")
    return _DerEngine(u).apply(w)


def tder_bracket(u, v):
    """Derivation commutator; again tangential, as the pair
    ``(u(v1) - v(u1) + [u1,v1], u(v2) - v(u2) + [u2,v2])``."""
    if u.cap != v.cap:
        raise CapMismatch(f"cap mismatch: {u.cap} != {v.cap}")
    ue = _DerEngine(u)
    ve = _DerEngine(v)
    w1 = ue.apply(v.u1) - ve.apply(u.u1) + lie_bracket(u.u1, v.u1)
    w2 = ue.apply(v.u2) - ve.apply(u.u2) + lie_bracket(u.u2, v.u2)
    return TDer(w1, w2)


def divergence(u):
    """The divergence cocycle: ``tr(d_x(u1) x + d_y(u2) y)`` on the
    normalized representative.

    ``d_x(u1) x`` is just the part of ``u1`` whose words end in x, so no
    word surgery is needed before tracing.
    """
    keep = {
        w: c for w, c in lie_to_assoc(u.u1).coeffs.items() if w.endswith("x")
    }
    for w, c in lie_to_assoc(u.u2).coeffs.items():
        if w.endswith("y"):
            s = keep.get(w, 0) + c
            if s == 0:
                keep.pop(w, None)
            else:
                keep[w] = s
    return trace(AssocElt(u.cap, keep))


def _word_sandwich(prefix, elt, suffix, cap):
    out = {}
    base = len(prefix) + len(suffix)
    for w, c in elt.coeffs.items():
        if base + len(w) > cap:
            continue
        key = prefix + w + suffix
        s = out.get(key, 0) + c
        if s == 0:
            out.pop(key, None)
        else:
            out[key] = s
    return AssocElt(cap, out)


def cyc_tder_act(u, c):
    """Derivation action on cyclic words: act letter by letter on any
    representative, then re-trace."""
    if u.cap != c.cap:
        raise CapMismatch(f"cap mismatch: {u.cap} != {c.cap}")
    cap = u.cap
    images = {
        "x": lie_to_assoc(lie_bracket(LieElt.gen_x(cap), u.u1)),
        "y": lie_to_assoc(lie_bracket(LieElt.gen_y(cap), u.u2)),
    }
    acc = AssocElt.zero(cap)
    for word, coeff in c.coeffs.items():
        for i, letter in enumerate(word):
            term = _word_sandwich(word[:i], images[letter], word[i + 1 :], cap)
            acc = acc + coeff * term
    return trace(acc)


def cyc_taut_act(F, c):
    """Automorphism action on cyclic words: substitute the images of the
    generators into a representative, multiply out, re-trace."""
    if F.cap != c.cap:
        raise CapMismatch(f"cap mismatch: {F.cap} != {c.cap}")
    cap = F.cap
    images = {
        "x": F.generator_image_assoc("x"),
        "y": F.generator_image_assoc("y"),
    }
    acc = AssocElt.zero(cap)
    one = AssocElt.one(cap)
    for word, coeff in c.coeffs.items():
        prod = one
        for letter in word:
            prod = prod * images[letter]
        acc = acc + coeff * prod
    return trace(acc)


class TAutElt:
    """Tangential automorphism as a normalized exponent pair."""

    __slots__ = ("cap", "f1", "f2")

    def __init__(self, f1, f2):
        if f1.cap != f2.cap:
            raise CapMismatch(f"cap mismatch: {f1.cap} != {f2.cap}")
        self.cap = f1.cap
        c = f1.coeff("x")
        if c != 0:
            f1 = bch(LieElt(self.cap, {"x": -c}), f1)
        c = f2.coeff("y")
        if c != 0:
            f2 = bch(LieElt(self.cap, {"y": -c}), f2)
        self.f1 = f1
        self.f2 = f2

    @classmethod
    def identity(cls, cap):
        return cls(LieElt.zero(cap), LieElt.zero(cap))

    def is_identity(self):
        return self.f1.is_zero() and self.f2.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, TAutElt)
            and self.cap == other.cap
            and self.f1 == other.f1
            and self.f2 == other.f2
        )

    def __hash__(self):
        return hash((self.cap, self.f1, self.f2))

    def truncate(self, n):
        """Drop exponent terms above degree ``n``; the projection onto the
        degree-``n`` quotient group."""
        if n > self.cap:
            raise ValueError("truncate cannot raise the cap")
        return TAutElt(self.f1.truncate(n), self.f2.truncate(n))

    def with_cap(self, n):
        return TAutElt(self.f1.with_cap(n), self.f2.with_cap(n))

    def generator_image_assoc(self, letter):
        """Image of a generator inside the associative algebra."""
        f = self.f1 if letter == "x" else self.f2
        ef = assoc_exp(lie_to_assoc(f))
        emf = assoc_exp(lie_to_assoc(-f))
        return emf * AssocElt.word(letter, self.cap) * ef

    def __repr__(self):
        return f"TAutElt(e^({self.f1!r}), e^({self.f2!r}))"


class _AutEngine:
    """Applies one tangential automorphism with memoized basis images.

    Images of the generators are the conjugation series
    ``x + [x, f1] + [[x, f1], f1]/2 + ...``; images of longer Lyndon
    words follow from the standard factorization since the map is a Lie
    homomorphism.
    """

    def __init__(self, F):
        self.F = F
        self.cap = F.cap
        self._images = {
            "x": _conjugation_series(LieElt.gen_x(self.cap), F.f1),
            "y": _conjugation_series(LieElt.gen_y(self.cap), F.f2),
        }

    def _image(self, word):
        img = self._images.get(word)
        if img is None:
            p, q = standard_factorization(word)
            img = lie_bracket(self._image(p), self._image(q))
            self._images[word] = img
        return img

    def apply(self, w):
        out = LieElt.zero(self.cap)
        for word, c in w.coeffs.items():
            img = self._image(word)
            if not img.is_zero():
                out = out + c * img
        return out

    def inverse_apply(self, w):
        """Solve ``F(v) = w`` for ``v``; the deviation of F from the
        identity raises degree, so fixed-point iteration settles in at
        most ``cap`` rounds."""
        v = w
        for _ in range(self.cap + 1):
            defect = w - self.apply(v)
            if defect.is_zero():
                return v
            v = v + defect
        if not (w - self.apply(v)).is_zero():
            raise AssertionError("inverse application did not converge")
        return v


def _conjugation_series(gen, f, cap=None):
    """``e^{-f} gen e^{f}`` as a Lie element: ``gen + [gen,f] + ...``."""
    cap = cap if cap is not None else gen.cap
    out = gen
    term = gen
    for j in range(1, cap + 1):
        term = Fraction(1, j) * lie_bracket(term, f)
        if term.is_zero():
            break
        out = out + term
    return out


def taut_apply(F, w):
    """Apply the automorphism to a Lie element."""
    if F.cap != w.cap:
        raise CapMismatch(f"cap mismatch: {F.cap} != {w.cap}")
    return _AutEngine(F).apply(w)


def taut_compose(F, G):
    """Composition ``(F o G)(w) = F(G(w))``; exponents are
    ``bch(f_i, F(g_i))``."""
    if F.cap != G.cap:
        raise CapMismatch(f"cap mismatch: {F.cap} != {G.cap}")
    eng = _AutEngine(F)
    return TAutElt(bch(F.f1, eng.apply(G.f1)), bch(F.f2, eng.apply(G.f2)))


def taut_inverse(F):
    """Group inverse; its exponents are ``-F^{-1}(f_i)``."""
    eng = _AutEngine(F)
    return TAutElt(-eng.inverse_apply(F.f1), -eng.inverse_apply(F.f2))


_AD_SOLVERS = {}


def _ad_generator_solver(letter, k):
    """Presolved system for ``[gen, a] = rhs`` with ``a`` homogeneous of
    degree ``k``; at degree one the unknown space excludes the generator
    itself (the normalized complement)."""
    key = (letter, k)
    solver = _AD_SOLVERS.get(key)
    if solver is not None:
        return solver
    if k == 1:
        columns = ["y"] if letter == "x" else ["x"]
    else:
        columns = list(lyndon_words(k))
    rows = list(lyndon_words(k + 1))
    row_index = {w: i for i, w in enumerate(rows)}
    cap = k + 1
    gen = LieElt.basis(letter, cap)
    M = QMatrix(len(rows), len(columns))
    for j, w in enumerate(columns):
        img = lie_bracket(gen, LieElt.basis(w, cap))
        for ww, c in img.coeffs.items():
            M[row_index[ww], j] = c
    solver = (PresolvedSystem(M), columns, rows, row_index)
    _AD_SOLVERS[key] = solver
    return solver


def _solve_generator_bracket(letter, k, rhs):
    """Solve ``[gen, a] = rhs`` for homogeneous ``a`` of degree ``k``."""
    solver, columns, rows, row_index = _ad_generator_solver(letter, k)
    vec = [Fraction(0)] * len(rows)
    for w, c in rhs.coeffs.items():
        vec[row_index[w]] = c
    sol = solver.solve(vec)
    if sol is None:
        raise AssertionError("generator-bracket system inconsistent")
    return LieElt(rhs.cap, {w: c for w, c in zip(columns, sol) if c != 0})


def _exponent_from_action(image, letter, out_cap):
    """Find normalized ``f`` with ``e^{-f} gen e^{f} = image``; the image
    must be at cap ``out_cap + 1`` so the top degree of ``f`` is pinned."""
    work_cap = image.cap
    f = LieElt.zero(work_cap)
    gen = LieElt.basis(letter, work_cap)
    for k in range(1, out_cap + 1):
        cur = _conjugation_series(gen.truncate(k + 1), f.truncate(k + 1))
        defect = (image.truncate(k + 1) - cur).homogeneous_part(k + 1)
        if defect.is_zero():
            continue
        step = _solve_generator_bracket(letter, k, defect)
        f = f + step.with_cap(work_cap)
    return f.truncate(out_cap)


def taut_exp(u):
    """Exponential of a tangential derivation, as an automorphism.

    The exponent pair is recovered degree by degree from the action of
    ``exp(u)`` on the generators, with one degree of internal headroom so
    the top-degree exponents come out right.
    """
    cap = u.cap
    work = cap + 1
    uu = u.with_cap(work)
    eng = _DerEngine(uu)
    exponents = []
    for letter in ("x", "y"):
        gen = LieElt.basis(letter, work)
        acc = gen
        term = gen
        for j in range(1, work + 1):
            term = Fraction(1, j) * eng.apply(term)
            if term.is_zero():
                break
            acc = acc + term
        exponents.append(_exponent_from_action(acc, letter, cap))
    return TAutElt(exponents[0], exponents[1])


def taut_log(F):
    """Inverse of :func:`taut_exp`, by degree-by-degree defect correction:
    the degree-``k`` component of the log is read off from the degree-``k``
    mismatch between ``F`` and the exponential of what is known so far."""
    cap = F.cap
    u1 = LieElt.zero(cap)
    u2 = LieElt.zero(cap)
    for k in range(1, cap + 1):
        partial = TDer(u1.truncate(k), u2.truncate(k))
        E = taut_exp(partial)
        u1 = u1 + F.f1.homogeneous_part(k) - E.f1.homogeneous_part(k).with_cap(cap)
        u2 = u2 + F.f2.homogeneous_part(k) - E.f2.homogeneous_part(k).with_cap(cap)
    return TDer(u1, u2)


def jacobian(F):
    """The group cocycle integrating the divergence:
    ``J(e^w) = sum_k w^k (j(w)) / (k+1)!`` with ``w = log F`` acting on
    cyclic words."""
    w = taut_log(F)
    jw = divergence(w)
    out = CycElt.zero(F.cap)
    term = jw
    k = 0
    while not term.is_zero():
        out = out + Fraction(1, math.factorial(k + 1)) * term
        term = cyc_tder_act(w, term)
        k += 1
        if k > F.cap:
            break
    return out


def group_commutator(F, G):
    """``F^{-1} o G^{-1} o F o G``."""
    if F.cap != G.cap:
        raise CapMismatch(f"cap mismatch: {F.cap} != {G.cap}")
    Fi = taut_inverse(F)
    Gi = taut_inverse(G)
    return taut_compose(taut_compose(taut_compose(Fi, Gi), F), G)


def valuation(F):
    """Lowest degree with a nonzero exponent term; ``math.inf`` for the
    identity at this cap."""
    degs = [d for d in (F.f1.min_degree(), F.f2.min_degree()) if d]
    return min(degs) if degs else math.inf
