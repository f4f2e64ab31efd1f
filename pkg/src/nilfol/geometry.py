"""Left-invariant metric geometry: Levi-Civita connection, mean curvature
of the leaf foliation, bundle-like and coclosedness checks.

Nothing here takes a square root.  Orthonormalization is avoided by
routing every formula through Gram-matrix inverses, and the Hodge star is
used only up to the positive constant sqrt(det G), which no zero-test can
see because invariant metrics make that factor a global constant.

Positive-definiteness of a Gram matrix over Q(s) is not decidable
per-parameter without real-algebraic machinery; the module computes the
leading principal minors exactly and reports their signs at a caller
supplied rational sample value of s.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .exactalg import (
    ONE,
    Scalar,
    ScalarMatrix,
    Subspace,
    Vector,
    ZERO,
    kernel,
    vec,
    vec_add,
    vec_is_zero,
    vec_scale,
    unit_vector,
    zero_vector,
)
from .invforms import InvForm, ce_d, multi_indices
from .liealg import LeafSubalgebra, LieAlgebra


class Metric:
    """Invariant metric given by the Gram matrix of the chosen frame."""

    __slots__ = ("gram", "_inverse")

    def __init__(self, gram: ScalarMatrix):
        if not gram.is_symmetric():
            raise ValueError("Gram matrix must be symmetric")
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "_inverse", None)

    def __setattr__(self, name, value):
        raise AttributeError("Metric is immutable")

    @classmethod
    def identity(cls, n: int) -> "Metric":
        return cls(ScalarMatrix.identity(n))

    @property
    def n(self) -> int:
        return self.gram.rows

    def inverse(self) -> ScalarMatrix:
        if self._inverse is None:
            try:
                inv = self.gram.inverse()
            except ValueError:
                raise ValueError("singular Gram matrix") from None
            object.__setattr__(self, "_inverse", inv)
        return self._inverse

    def pairing(self, x: Vector, y: Vector) -> Scalar:
        gx = self.gram.apply(vec(x))
        return sum((a * b for a, b in zip(gx, vec(y))), ZERO)

    def flat(self, x: Vector) -> InvForm:
        """The 1-form g(x, .)."""
        gx = self.gram.apply(vec(x))
        return InvForm(self.n, 1, {(i,): c for i, c in enumerate(gx) if not c.is_zero})

    def sharp(self, alpha: InvForm) -> Vector:
        if alpha.degree != 1:
            raise ValueError("sharp takes a 1-form")
        coords = tuple(alpha.coefficient((i,)) for i in range(self.n))
        return self.inverse().apply(coords)

    def leading_minors(self) -> list[Scalar]:
        out = []
        for k in range(1, self.n + 1):
            sub = ScalarMatrix([row[:k] for row in self.gram.entries[:k]])
            out.append(sub.det())
        return out

    def sample_signature(self, sigma: Fraction) -> "MetricSampleReport":
        """Signs of the leading principal minors at s = sigma."""
        signs = []
        for minor in self.leading_minors():
            value = minor.evaluate(sigma)
            signs.append(1 if value > 0 else (-1 if value < 0 else 0))
        return MetricSampleReport(Fraction(sigma), tuple(signs), all(s > 0 for s in signs))


@dataclass(frozen=True)
class MetricSampleReport:
    sample: Fraction
    minor_signs: tuple[int, ...]
    positive_definite: bool


class Connection:
    """Coefficients nabla_{e_i} e_j of an invariant affine connection."""

    __slots__ = ("n", "coeffs")

    def __init__(self, coeffs):
        grid = tuple(tuple(vec(v) for v in row) for row in coeffs)
        object.__setattr__(self, "n", len(grid))
        object.__setattr__(self, "coeffs", grid)

    def __setattr__(self, name, value):
        raise AttributeError("Connection is immutable")

    def nabla(self, x: Vector, y: Vector) -> Vector:
        """Bilinear extension, valid for invariant (constant) fields."""
        x, y = vec(x), vec(y)
        out = zero_vector(self.n)
        for i, xi in enumerate(x):
            if xi.is_zero:
                continue
            for j, yj in enumerate(y):
                if yj.is_zero or vec_is_zero(self.coeffs[i][j]):
                    continue
                out = vec_add(out, vec_scale(xi * yj, self.coeffs[i][j]))
        return out


def levi_civita(g: LieAlgebra, metric: Metric) -> Connection:
    """Koszul formula for invariant fields:
    2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y)."""
    n = g.n
    if metric.n != n:
        raise ValueError("metric dimension mismatch")
    ginv = metric.inverse()  # raises on a singular Gram matrix
    half = Scalar([Fraction(1, 2)])
    coeffs = []
    for i in range(n):
        row = []
        ei = unit_vector(n, i)
        for j in range(n):
            ej = unit_vector(n, j)
            rhs = []
            for k in range(n):
                ek = unit_vector(n, k)
                val = metric.pairing(g.c[i][j], ek)
                val = val - metric.pairing(g.bracket(ej, ek), ei)
                val = val + metric.pairing(g.bracket(ek, ei), ej)
                rhs.append(half * val)
            row.append(ginv.apply(tuple(rhs)))
        coeffs.append(row)
    return Connection(coeffs)


def is_torsion_free(g: LieAlgebra, conn: Connection) -> bool:
    for i in range(g.n):
        for j in range(g.n):
            diff = vec_add(conn.coeffs[i][j], vec_scale(-ONE, conn.coeffs[j][i]))
            if diff != g.c[i][j]:
                return False
    return True


def is_metric_compatible(g: LieAlgebra, conn: Connection, metric: Metric) -> bool:
    # invariant fields have constant inner products, so
    # g(nabla_{e_i} e_j, e_k) + g(e_j, nabla_{e_i} e_k) = 0
    for i in range(g.n):
        for j in range(g.n):
            for k in range(g.n):
                val = metric.pairing(conn.coeffs[i][j], unit_vector(g.n, k))
                val = val + metric.pairing(unit_vector(g.n, j), conn.coeffs[i][k])
                if not val.is_zero:
                    return False
    return True


# -- projections -----------------------------------------------------------

def leaf_gram(leaf_basis: tuple[Vector, ...], metric: Metric) -> ScalarMatrix:
    return ScalarMatrix([[metric.pairing(a, b) for b in leaf_basis] for a in leaf_basis])


def perp_projector(leaf_basis: tuple[Vector, ...], metric: Metric) -> ScalarMatrix:
    """Matrix of the g-orthogonal projection onto the complement of the span:
    id - H (H^T G H)^{-1} H^T G for H the basis-column matrix."""
    n = metric.n
    if not leaf_basis:
        return ScalarMatrix.identity(n)
    H = ScalarMatrix([[leaf_basis[a][i] for a in range(len(leaf_basis))] for i in range(n)])
    HtG = H.transpose().matmul(metric.gram)
    gram = HtG.matmul(H)
    try:
        gram_inv = gram.inverse()
    except ValueError:
        raise ValueError("degenerate leaf metric") from None
    P = H.matmul(gram_inv).matmul(HtG)
    entries = [[(ONE if i == j else ZERO) - P.entries[i][j] for j in range(n)] for i in range(n)]
    return ScalarMatrix(entries)


def orthogonal_complement(leaf: LeafSubalgebra, metric: Metric) -> Subspace:
    if leaf.dim == 0:
        return Subspace.full(metric.n)
    rows = [metric.gram.apply(b) for b in leaf.space.basis]
    return kernel(ScalarMatrix(rows))


# -- mean curvature -----------------------------------------------------------

@dataclass(frozen=True)
class MeanCurvature:
    """Mean curvature 1-form of the leaves; dual to the trace of their
    second fundamental form."""

    form: InvForm
    vanishes: bool
    basic: bool


def mean_curvature(g: LieAlgebra, leaf: LeafSubalgebra, metric: Metric,
                   basis: tuple[Vector, ...] | None = None) -> MeanCurvature:
    """kappa(X) = sum_{a,b} (G_h^{-1})_{ab} g(nabla_{h_a} h_b, Pperp X).

    Independent of the chosen leaf basis; normalization enters only
    through the inverse leaf Gram matrix, so no square roots appear.
    """
    n = g.n
    h_basis = tuple(vec(b) for b in basis) if basis is not None else leaf.space.basis
    if not h_basis:
        return MeanCurvature(InvForm.zero(n, 1), True, True)
    conn = levi_civita(g, metric)
    gram = leaf_gram(h_basis, metric)
    try:
        gram_inv = gram.inverse()
    except ValueError:
        raise ValueError("degenerate leaf metric") from None
    pperp = perp_projector(h_basis, metric)
    trace = zero_vector(n)
    for a in range(len(h_basis)):
        for b in range(len(h_basis)):
            w = gram_inv.entries[a][b]
            if w.is_zero:
                continue
            trace = vec_add(trace, vec_scale(w, conn.nabla(h_basis[a], h_basis[b])))
    coeffs = {}
    for j in range(n):
        val = metric.pairing(trace, pperp.column(j))
        if not val.is_zero:
            coeffs[(j,)] = val
    form = InvForm(n, 1, coeffs)
    vanishes = form.is_zero
    basic = all(form.interior(v).is_zero and ce_d(g, form).interior(v).is_zero
                for v in leaf.space.basis)
    return MeanCurvature(form, vanishes, basic)


# -- bundle-like check ---------------------------------------------------------

@dataclass(frozen=True)
class BundleLikeResult:
    holds: bool
    witness: tuple[Vector, Vector, Vector, Scalar] | None

    def __bool__(self):
        return self.holds


def bundle_like_check(g: LieAlgebra, leaf: LeafSubalgebra, metric: Metric) -> BundleLikeResult:
    """Invariant form of the holonomy-invariance of the transverse metric:
    for leaf-tangent v and transverse X, Y the expression
    g(Pperp [v,X], Y) + g(X, Pperp [v,Y]) must vanish."""
    perp = orthogonal_complement(leaf, metric)
    pperp = perp_projector(leaf.space.basis, metric)
    for v in leaf.space.basis:
        for a in range(perp.dim):
            X = perp.basis[a]
            for b in range(a, perp.dim):
                Y = perp.basis[b]
                val = metric.pairing(pperp.apply(g.bracket(v, X)), Y)
                val = val + metric.pairing(X, pperp.apply(g.bracket(v, Y)))
                if not val.is_zero:
                    return BundleLikeResult(False, (v, X, Y, val))
    return BundleLikeResult(True, None)


# -- Hodge star and coclosedness ------------------------------------------------

def _complement_sign(idx: tuple[int, ...], n: int) -> tuple[int, tuple[int, ...]]:
    comp = tuple(i for i in range(n) if i not in idx)
    perm = idx + comp
    inversions = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm))
                     if perm[a] > perm[b])
    return (-1 if inversions % 2 else 1), comp


def hodge_star(metric: Metric, form: InvForm) -> InvForm:
    """Hodge star without the constant sqrt(det G) normalization.

    Characterized by  a ^ star(b) = <a, b> e^{1..n}  where the pairing of
    basis forms is the minor determinant of the inverse Gram matrix.
    Sufficient for every zero-test downstream; not an isometry.
    """
    n = metric.n
    if form.n != n:
        raise ValueError("form dimension mismatch")
    k = form.degree
    ginv = metric.inverse()
    out: dict[tuple[int, ...], Scalar] = {}
    for idx in multi_indices(n, k):
        val = ZERO
        for jdx, coeff in form.coeffs.items():
            minor = ScalarMatrix([[ginv.entries[i][j] for j in jdx] for i in idx])
            det = minor.det() if k else ONE
            if not det.is_zero:
                val = val + coeff * det
        if val.is_zero:
            continue
        sign, comp = _complement_sign(idx, n)
        out[comp] = out.get(comp, ZERO) + (val if sign > 0 else -val)
    return InvForm(n, n - k, out)


def characteristic_form(leaf: LeafSubalgebra, metric: Metric) -> InvForm:
    """Wedge of the flats of a leaf basis (constant rescaling of the usual
    characteristic form; the constant is irrelevant for zero-tests)."""
    chi = InvForm.constant(metric.n, ONE)
    for v in leaf.space.basis:
        chi = chi.wedge(metric.flat(v))
    return chi


def coclosed_check(g: LieAlgebra, leaf: LeafSubalgebra, metric: Metric,
                   alpha: InvForm) -> bool:
    """Whether a basic 1-form is coclosed for the transverse star:
    d(star(alpha ^ chi)) = 0 with the unnormalized star and characteristic
    form (the dropped constants cannot affect the zero-test)."""
    if alpha.degree != 1:
        raise ValueError("coclosedness is checked for 1-forms")
    for v in leaf.space.basis:
        if not alpha.interior(v).is_zero or not ce_d(g, alpha).interior(v).is_zero:
            raise ValueError("form is not basic for the foliation")
    chi = characteristic_form(leaf, metric)
    return ce_d(g, hodge_star(metric, alpha.wedge(chi))).is_zero
