"""The Kashiwara-Vergne equation systems at finite degree.

Checkers decide membership in the degree-n solution set and the two
symmetry groups; the Duflo series attached to an element is recomputed
from scratch on every check, never cached.  The extension step realizes
the degree-by-degree surjectivity as two exact linear solves:

* a degree-n correction of the exponents kills the first equation's
  defect one degree up while keeping the divergence side solvable, and
* a fresh degree-(n+1) term matches the second equation there.

Free variables are set to zero under a fixed column order (first
exponent block, second exponent block, then the Duflo unknown), so
extension outputs are reproducible bit for bit.
"""

from fractions import Fraction

from .cyclic import duflo_pattern
from .errors import InconsistentSystem, PreconditionFailed
from .lie import LieElt, bch_xy, lie_bracket
from .linalg import QMatrix, kernel_basis, rank, solve_linear
from .tangential import (
    TAutElt,
    TDer,
    divergence,
    jacobian,
    taut_apply,
    taut_compose,
    taut_exp,
    taut_inverse,
    taut_log,
    tder_apply,
    valuation,
)
from .words import lyndon_words, necklaces


class DufloSeries:
    """The power series attached to a solution; indices start at 2."""

    __slots__ = ("cap", "coeffs")

    def __init__(self, cap, coeffs=None):
        self.cap = cap
        store = {}
        if coeffs:
            for k, c in coeffs.items():
                if not 2 <= k <= cap:
                    raise ValueError(f"index {k} outside 2..{cap}")
                c = Fraction(c)
                if c != 0:
                    store[k] = c
        self.coeffs = store

    def coeff(self, k):
        return self.coeffs.get(k, Fraction(0))

    def is_zero(self):
        return not self.coeffs

    def sorted_terms(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        return (
            isinstance(other, DufloSeries)
            and self.cap == other.cap
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})z^{k}" for k, c in self.sorted_terms())


class KVReport:
    """Outcome of one equation-system check at one degree."""

    __slots__ = ("variant", "degree", "eq1_defect", "duflo", "duflo_residual", "passed")

    def __init__(self, variant, degree, eq1_defect, duflo, duflo_residual):
        self.variant = variant
        self.degree = degree
        self.eq1_defect = eq1_defect
        self.duflo = duflo
        self.duflo_residual = duflo_residual
        self.passed = eq1_defect.is_zero() and duflo_residual is None

    def __repr__(self):
        state = "PASS" if self.passed else "FAIL"
        return f"KVReport({self.variant}, degree={self.degree}, {state})"


def solve_duflo(c, n, target):
    """Match ``c = sum_k r_k tr(w^k - x^k - y^k)`` in degrees <= n.

    For the ``sum`` target the system is diagonal by degree; for ``bch``
    it is lower-triangular in ``k`` since ``bch(x,y)^k`` starts with
    ``(x+y)^k``.  Returns ``(series, residual)`` where ``residual`` is
    ``None`` on success and the unmatched remainder otherwise.
    """
    remaining = c.truncate(n) if c.cap > n else c.with_cap(n)
    coeffs = {}
    for k in range(2, n + 1):
        pattern = duflo_pattern(k, target, n)
        lead = pattern.homogeneous_part(k)
        word, pc = lead.sorted_terms()[0]
        rk = remaining.coeff(word) / pc
        if rk != 0:
            coeffs[k] = rk
            remaining = remaining - rk * pattern
    series = DufloSeries(n, coeffs)
    if remaining.is_zero():
        return series, None
    return series, remaining


def _check(variant, Ft, n, defect, target):
    duflo, residual = solve_duflo(jacobian(Ft), n, target)
    return KVReport(variant, n, defect, duflo, residual)


def check_sol_kv(F, n):
    """Does ``F`` solve the KV equations up to degree ``n``?"""
    if n > F.cap:
        raise PreconditionFailed("degree exceeds the element's cap")
    Ft = F.truncate(n)
    xy = LieElt(n, {"x": 1, "y": 1})
    defect = taut_apply(Ft, bch_xy(n)) - xy
    return _check("SolKV", Ft, n, defect, "sum")


def check_krv(F, n):
    """Membership in the graded symmetry group up to degree ``n``."""
    if n > F.cap:
        raise PreconditionFailed("degree exceeds the element's cap")
    Ft = F.truncate(n)
    xy = LieElt(n, {"x": 1, "y": 1})
    defect = taut_apply(Ft, xy) - xy
    return _check("KRV", Ft, n, defect, "sum")


def check_kv(F, n):
    """Membership in the left symmetry group up to degree ``n``."""
    if n > F.cap:
        raise PreconditionFailed("degree exceeds the element's cap")
    Ft = F.truncate(n)
    b = bch_xy(n)
    defect = taut_apply(Ft, b) - b
    return _check("KV", Ft, n, defect, "bch")


def check_krv_lie(u, n):
    """Lie-algebra variant: ``u(x+y) = 0`` and divergence in the Duflo
    span, both up to degree ``n``."""
    if n > u.cap:
        raise PreconditionFailed("degree exceeds the element's cap")
    ut = u.truncate(n)
    xy = LieElt(n, {"x": 1, "y": 1})
    defect = tder_apply(ut, xy)
    duflo, residual = solve_duflo(divergence(ut), n, "sum")
    return KVReport("krv-lie", n, defect, duflo, residual)


def _tder_columns(n):
    """Coordinate words for the normalized degree-n derivation block."""
    words = list(lyndon_words(n))
    if n == 1:
        return ["y"], ["x"]
    return words, words


def _homogeneous_tder(cols1, cols2, values, n, cap):
    u1 = {w: v for w, v in zip(cols1, values[: len(cols1)]) if v != 0}
    u2 = {w: v for w, v in zip(cols2, values[len(cols1) : len(cols1) + len(cols2)]) if v != 0}
    return TDer(LieElt(cap, u1), LieElt(cap, u2))


def _divergence_rows(cols1, cols2, n, cap):
    """Divergence of each coordinate derivation, as necklace columns."""
    neck = list(necklaces(n))
    index = {w: i for i, w in enumerate(neck)}
    out = []
    for block, letter in ((cols1, "x"), (cols2, "y")):
        for w in block:
            u1 = LieElt(cap, {w: 1}) if letter == "x" else LieElt.zero(cap)
            u2 = LieElt(cap, {w: 1}) if letter == "y" else LieElt.zero(cap)
            j = divergence(TDer(u1, u2))
            col = [Fraction(0)] * len(neck)
            for ww, c in j.coeffs.items():
                col[index[ww]] = c
            out.append(col)
    return neck, index, out


class _GradedSystem:
    """The degree-n linear system shared by the extension step and the
    graded-dimension solver.

    Columns: normalized first-slot coordinates, then second-slot
    coordinates, then (for n >= 2) the Duflo multiplier.  Rows: the
    generator-bracket equation over degree-(n+1) basis words (optional),
    then the divergence equation over degree-n necklaces.
    """

    def __init__(self, n, with_bracket_rows):
        cap = n + 1
        self.n = n
        self.cols1, self.cols2 = _tder_columns(n)
        neck, _, div_cols = _divergence_rows(self.cols1, self.cols2, n, cap)
        lw = list(lyndon_words(cap)) if with_bracket_rows else []
        self.lw_index = {w: i for i, w in enumerate(lw)}
        base = len(lw)
        self.neck_index = {w: base + i for i, w in enumerate(neck)}
        ncols = len(self.cols1) + len(self.cols2) + (1 if n >= 2 else 0)
        M = QMatrix(base + len(neck), ncols)
        if with_bracket_rows:
            gens = (
                (self.cols1, LieElt.gen_x(cap), 0),
                (self.cols2, LieElt.gen_y(cap), len(self.cols1)),
            )
            for block, gen, offset in gens:
                for j, w in enumerate(block):
                    img = lie_bracket(gen, LieElt(cap, {w: 1}))
                    for ww, cc in img.coeffs.items():
                        M[self.lw_index[ww], offset + j] = cc
        for j, col in enumerate(div_cols):
            for i, cc in enumerate(col):
                if cc != 0:
                    M[base + i, j] = cc
        if n >= 2:
            pat = duflo_pattern(n, "sum", cap)
            for ww, cc in pat.coeffs.items():
                M[self.neck_index[ww], ncols - 1] = -cc
        self.matrix = M

    def tder_from(self, values, cap):
        """Read a homogeneous derivation off a solution/kernel vector,
        dropping the trailing Duflo coordinate if present."""
        return _homogeneous_tder(self.cols1, self.cols2, values, self.n, cap)


def extend_solkv_step(F):
    """Extend a degree-n solution to degree n+1.

    Stage A solves for a degree-n exponent correction: the generator
    brackets must cancel the first equation's new defect while the
    correction's divergence stays a multiple of the degree-n pattern.
    Stage B solves for the fresh degree-(n+1) exponent terms matching
    the Jacobian one degree up.  Both systems are consistent whenever
    the input really is a degree-n solution; a failed solve indicates an
    internal bug and raises :class:`InconsistentSystem`.
    """
    n = F.cap
    if not check_sol_kv(F, n).passed:
        raise PreconditionFailed("input does not solve the system at its cap")
    cap = n + 1
    Fx = F.with_cap(cap)
    xy = LieElt(cap, {"x": 1, "y": 1})

    # Stage A: degree-n correction.
    E1 = (taut_apply(Fx, bch_xy(cap)) - xy).homogeneous_part(cap)
    sysA = _GradedSystem(n, with_bracket_rows=True)
    rhs = [Fraction(0)] * sysA.matrix.rows
    for ww, cc in E1.coeffs.items():
        rhs[sysA.lw_index[ww]] = -cc
    sol = solve_linear(sysA.matrix, rhs)
    if not sol.consistent:
        raise InconsistentSystem("degree-n correction system inconsistent")
    a = sysA.tder_from(sol.particular, cap)
    F1 = TAutElt(Fx.f1 + a.u1, Fx.f2 + a.u2)

    # Stage B: new degree-(n+1) terms.
    E2 = jacobian(F1).homogeneous_part(cap)
    sysB = _GradedSystem(cap, with_bracket_rows=False)
    rhsb = [Fraction(0)] * sysB.matrix.rows
    for ww, cc in E2.coeffs.items():
        rhsb[sysB.neck_index[ww]] = -cc
    solb = solve_linear(sysB.matrix, rhsb)
    if not solb.consistent:
        raise InconsistentSystem("degree-(n+1) divergence system inconsistent")
    b = sysB.tder_from(solb.particular, cap)
    return TAutElt(F1.f1 + b.u1, F1.f2 + b.u2)


def extend_solkv(F, to_degree):
    """Iterate :func:`extend_solkv_step` up to the requested degree."""
    out = F
    while out.cap < to_degree:
        out = extend_solkv_step(out)
    return out


def extend_krv_step(G):
    """Extend a degree-n symmetry one degree up by zero-extending its
    logarithm and re-exponentiating."""
    n = G.cap
    if not check_krv(G, n).passed:
        raise PreconditionFailed("input is not in the symmetry group at its cap")
    w = taut_log(G)
    out = taut_exp(w.with_cap(n + 1))
    if not check_krv(out, n + 1).passed:
        raise PreconditionFailed(
            "zero-extension of the log does not satisfy the equations one "
            "degree up; the input only satisfies them in the truncated sense"
        )
    return out


def torsor_quotient(F, G, n):
    """The symmetry ``H = G o F^{-1}`` carrying ``F`` to ``G`` under the
    right action ``G . H = H^{-1} o G``."""
    if not check_sol_kv(F, n).passed or not check_sol_kv(G, n).passed:
        raise PreconditionFailed("both inputs must solve the system at degree n")
    Ft = F.truncate(n)
    Gt = G.truncate(n)
    return taut_compose(Gt, taut_inverse(Ft))


def psi_conjugate(F, G, n):
    """Transport a left symmetry to a right symmetry through a solution:
    ``H = F o G o F^{-1}``."""
    if not check_sol_kv(F, n).passed:
        raise PreconditionFailed("F must solve the system at degree n")
    if not check_kv(G, n).passed:
        raise PreconditionFailed("G must be a left symmetry at degree n")
    Ft = F.truncate(n)
    Gt = G.truncate(n)
    return taut_compose(taut_compose(Ft, Gt), taut_inverse(Ft))


def krv_dim(n):
    """Dimension and basis of the homogeneous degree-n graded Lie algebra.

    Solves exactly for normalized pairs with ``u(x+y) = 0`` (a genuine
    degree-(n+1) bracket condition) and divergence a multiple of the
    degree-n pattern; the multiplier is carried as one extra unknown and
    eliminated from the reported basis.
    """
    if n < 1:
        raise ValueError("degree must be >= 1")
    system = _GradedSystem(n, with_bracket_rows=True)
    kernel = kernel_basis(system.matrix)
    basis = [system.tder_from(vec, n) for vec in kernel]
    return len(basis), basis


def gr_leading_rank(F, n):
    """Rank of the leading terms of left symmetries obtained by
    transporting the degree-n graded basis through ``F``; equals the
    graded dimension when the graded correspondence holds."""
    if F.cap < n + 1:
        raise PreconditionFailed("the solution must be known beyond degree n")
    if not check_sol_kv(F, F.cap).passed:
        raise PreconditionFailed("F must solve the system at its cap")
    dim, basis = krv_dim(n)
    if dim == 0:
        return 0
    Fi = taut_inverse(F)
    vectors = []
    cols = list(lyndon_words(n))
    for u in basis:
        U = taut_exp(u.with_cap(F.cap))
        G = taut_compose(taut_compose(Fi, U), F)
        if not check_kv(G, F.cap).passed:
            raise InconsistentSystem("transported element fails the left system")
        if valuation(G) != n:
            raise InconsistentSystem("transported element has wrong valuation")
        lead = taut_log(G).homogeneous_part(n)
        vec = [lead.u1.coeff(w) for w in cols] + [lead.u2.coeff(w) for w in cols]
        vectors.append(vec)
    M = QMatrix(len(vectors[0]), len(vectors))
    for j, vec in enumerate(vectors):
        for i, c in enumerate(vec):
            if c != 0:
                M[i, j] = c
    return rank(M)
