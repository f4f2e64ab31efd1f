"""Shared test utilities: independent oracles and random input generators.

The oracles here deliberately avoid the code paths they are used to check:
rank is recomputed with plain Fraction Gaussian elimination after
specializing s, the exterior differential is evaluated through the full
alternating sum over basis tuples, and forms are evaluated as determinants.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from nilfol.exactalg import (
    ONE,
    S,
    ZERO,
    Scalar,
    ScalarMatrix,
    Subspace,
    unit_vector,
    vec,
    vec_add,
    vec_scale,
    zero_vector,
)
from nilfol.invforms import InvForm
from nilfol.liealg import LieAlgebra


# -- independent rank oracle over Q --------------------------------------

def frac_rank(rows: list[list[Fraction]]) -> int:
    rows = [list(r) for r in rows]
    rank = 0
    if not rows:
        return 0
    ncols = len(rows[0])
    for c in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        p = rows[rank][c]
        for i in range(len(rows)):
            if i == rank or rows[i][c] == 0:
                continue
            f = rows[i][c] / p
            rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def specialize_matrix_rank(m: ScalarMatrix, sigma: Fraction) -> int:
    return frac_rank(m.evaluate(sigma))


# -- specialization of whole structures ----------------------------------

def specialize_scalar(x: Scalar, sigma) -> Scalar:
    return Scalar.from_fraction(x.evaluate(Fraction(sigma)))


def specialize_vector(v, sigma):
    return tuple(specialize_scalar(x, sigma) for x in v)


def specialize_algebra(g: LieAlgebra, sigma) -> LieAlgebra:
    tensor = [[specialize_vector(g.c[i][j], sigma) for j in range(g.n)] for i in range(g.n)]
    return LieAlgebra.from_structure_tensor(tensor, basis_names=g.basis_names)


# -- independent form evaluation and exterior derivative ------------------

def eval_form(form: InvForm, vectors) -> Scalar:
    """Evaluate a k-form on k vectors via the determinant of coordinates."""
    k = form.degree
    assert len(vectors) == k
    if k == 0:
        return form.coeffs.get((), ZERO)
    total = ZERO
    for idx, coeff in form.coeffs.items():
        # det of the k x k matrix of the selected coordinates
        det = ZERO
        for perm in itertools.permutations(range(k)):
            sign = _perm_sign(perm)
            prod = ONE
            for a in range(k):
                prod = prod * vectors[a][idx[perm[a]]]
                if prod.is_zero:
                    break
            det = det + prod if sign > 0 else det - prod
        total = total + coeff * det
    return total


def _perm_sign(perm) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv % 2 else 1


def d_oracle(g: LieAlgebra, form: InvForm) -> InvForm:
    """(d w)(v_0..v_k) = sum_{a<b} (-1)^(a+b) w([v_a,v_b], ..others..)."""
    n, k = g.n, form.degree
    coeffs = {}
    for J in itertools.combinations(range(n), k + 1):
        total = ZERO
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                rest = tuple(J[t] for t in range(k + 1) if t != a and t != b)
                w = g.bracket(unit_vector(n, J[a]), unit_vector(n, J[b]))
                val = ZERO
                for m in range(n):
                    if w[m].is_zero:
                        continue
                    args = [unit_vector(n, m)] + [unit_vector(n, r) for r in rest]
                    val = val + w[m] * eval_form(form, args)
                total = total + val if (a + b) % 2 == 0 else total - val
        if not total.is_zero:
            coeffs[J] = total
    return InvForm(n, k + 1, coeffs)


# -- random generators -----------------------------------------------------

def random_fraction(rng: random.Random, span: int = 5) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, 4))


def random_scalar(rng: random.Random, max_deg: int = 2, allow_denominator: bool = True) -> Scalar:
    num = [random_fraction(rng) for _ in range(rng.randint(1, max_deg + 1))]
    if allow_denominator and rng.random() < 0.4:
        den = [random_fraction(rng) for _ in range(rng.randint(1, max_deg + 1))]
        if not any(den):
            den[-1] = Fraction(1)
        return Scalar(num, den)
    return Scalar(num)


def random_nonzero_scalar(rng: random.Random, **kw) -> Scalar:
    while True:
        x = random_scalar(rng, **kw)
        if not x.is_zero:
            return x


def random_matrix(rng: random.Random, rows: int, cols: int, **kw) -> ScalarMatrix:
    return ScalarMatrix([[random_scalar(rng, **kw) for _ in range(cols)] for _ in range(rows)])


def random_vector(rng: random.Random, n: int, rational=False):
    if rational:
        return vec([random_fraction(rng) for _ in range(n)])
    return tuple(random_scalar(rng) for _ in range(n))


def random_two_step_algebra(rng: random.Random, with_s: bool = True) -> LieAlgebra:
    """Random 2-step nilpotent algebra: [V,V] lands in a central slice.

    All double brackets vanish, so the Jacobi identity holds for any choice
    of the bracket coefficients.
    """
    nv = rng.randint(2, 4)
    nz = rng.randint(1, 2)
    n = nv + nz
    brackets = {}
    for i in range(nv):
        for j in range(i + 1, nv):
            value = {}
            for m in range(nv, n):
                if rng.random() < 0.6:
                    c = Scalar.from_fraction(random_fraction(rng))
                    if with_s and rng.random() < 0.5:
                        c = c + S * Scalar.from_fraction(random_fraction(rng))
                    if not c.is_zero:
                        value[m] = c
            if value:
                brackets[(i, j)] = value
    return LieAlgebra(n, brackets)


def random_basis_change(rng: random.Random, g: LieAlgebra, with_s: bool = False) -> LieAlgebra:
    """Conjugate the structure tensor by a random invertible matrix."""
    n = g.n
    while True:
        entries = [[Scalar.from_fraction(rng.randint(-2, 2)) for _ in range(n)] for _ in range(n)]
        if with_s:
            i, j = rng.randrange(n), rng.randrange(n)
            entries[i][j] = entries[i][j] + S
        P = ScalarMatrix(entries)
        if not P.det().is_zero:
            break
    Pinv = P.inverse()
    tensor = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            w = g.bracket(P.column(i), P.column(j))
            tensor[i][j] = Pinv.apply(w)
    return LieAlgebra.from_structure_tensor(tensor)


def random_form(rng: random.Random, n: int, k: int, terms: int = 3) -> InvForm:
    combos = list(itertools.combinations(range(n), k))
    coeffs = {}
    for _ in range(min(terms, len(combos))):
        idx = combos[rng.randrange(len(combos))]
        coeffs[idx] = random_scalar(rng)
    return InvForm(n, k, coeffs)


def random_subalgebra(rng: random.Random, g: LieAlgebra) -> Subspace:
    seed_vectors = [random_vector(rng, g.n) for _ in range(rng.randint(1, 2))]
    space = Subspace(g.n, [v for v in seed_vectors if not all(x.is_zero for x in v)])
    return g.bracket_closure(space)
