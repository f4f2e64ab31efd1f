"""Exact arithmetic over Q(s) and the exact linear algebra built on it.

A scalar is a rational function in one indeterminate ``s`` with rational
coefficients.  Polynomials are stored as coefficient tuples (constant term
first, no trailing zeros, ``()`` for the zero polynomial).  Every scalar is
kept in canonical form:

* numerator and denominator are coprime,
* the denominator is monic (so rational constants have denominator 1),

which makes equality of field elements plain structural equality.

On top of scalars the module provides matrices, reduced row echelon form,
kernels, subspaces (always stored with an RREF basis, so equal subspaces
have identical representations), decomposition of Q(s)-vectors into their
rational coefficient layers, extraction of the rational members of a
subspace, and integer lattices in Hermite normal form.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

Coeffs = tuple[Fraction, ...]

_P_ZERO: Coeffs = ()
_P_ONE: Coeffs = (Fraction(1),)


def _ptrim(cs: Sequence[Fraction]) -> Coeffs:
    n = len(cs)
    while n > 0 and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _padd(a: Coeffs, b: Coeffs) -> Coeffs:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return _ptrim(out)


def _pneg(a: Coeffs) -> Coeffs:
    return tuple(-c for c in a)


def _psub(a: Coeffs, b: Coeffs) -> Coeffs:
    return _padd(a, _pneg(b))


def _pmul(a: Coeffs, b: Coeffs) -> Coeffs:
    if not a or not b:
        return _P_ZERO
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _ptrim(out)


def _pdivmod(a: Coeffs, b: Coeffs) -> tuple[Coeffs, Coeffs]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quo = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b) and _ptrim(rem):
        rem = list(_ptrim(rem))
        if len(rem) < len(b):
            break
        shift = len(rem) - len(b)
        q = rem[-1] / lead
        quo[shift] = q
        for i, cb in enumerate(b):
            rem[shift + i] -= q * cb
        rem.pop()
    return _ptrim(quo), _ptrim(rem)


def _pdiv_exact(a: Coeffs, b: Coeffs) -> Coeffs:
    q, r = _pdivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def _pmonic(a: Coeffs) -> Coeffs:
    if not a:
        return a
    lead = a[-1]
    if lead == 1:
        return a
    return tuple(c / lead for c in a)


def _pgcd(a: Coeffs, b: Coeffs) -> Coeffs:
    # monic gcd via the Euclidean algorithm
    while b:
        a, b = b, _pdivmod(a, b)[1]
    return _pmonic(a)


def _peval(a: Coeffs, x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(a):
        out = out * x + c
    return out


def _pstr(a: Coeffs) -> str:
    if not a:
        return "0"
    parts: list[str] = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if c == 0:
            continue
        if d == 0:
            body = str(abs(c))
        else:
            mag = abs(c)
            var = "s" if d == 1 else f"s^{d}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


class Scalar:
    """Element of Q(s) in canonical (reduced, monic-denominator) form."""

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable[Fraction | int], den: Iterable[Fraction | int] = _P_ONE):
        n = _ptrim([Fraction(c) for c in num])
        d = _ptrim([Fraction(c) for c in den])
        if not d:
            raise ZeroDivisionError("denominator polynomial is zero")
        if not n:
            d = _P_ONE
        else:
            g = _pgcd(n, d)
            if len(g) > 1:
                n = _pdiv_exact(n, g)
                d = _pdiv_exact(d, g)
            lead = d[-1]
            if lead != 1:
                n = tuple(c / lead for c in n)
                d = tuple(c / lead for c in d)
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "den", d)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def from_fraction(cls, q: Fraction | int) -> "Scalar":
        q = Fraction(q)
        return cls((q,)) if q != 0 else ZERO

    @staticmethod
    def _coerce(value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, (int, Fraction)):
            return Scalar.from_fraction(value)
        raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")

    # -- predicates ----------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_rational(self) -> bool:
        return len(self.num) <= 1 and self.den == _P_ONE

    def as_fraction(self) -> Fraction:
        if not self.is_rational:
            raise ValueError(f"{self} is not a rational constant")
        return self.num[0] if self.num else Fraction(0)

    def evaluate(self, sigma: Fraction | int) -> Fraction:
        """Specialize s to the rational number sigma."""
        sigma = Fraction(sigma)
        d = _peval(self.den, sigma)
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at s={sigma}")
        return _peval(self.num, sigma) / d

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        return Scalar(_padd(_pmul(self.num, other.den), _pmul(other.num, self.den)),
                      _pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar(_pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        return Scalar(_pmul(self.num, other.num), _pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero in Q(s)")
        return Scalar(_pmul(self.num, other.den), _pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            raise TypeError("exponent must be an integer")
        if exponent < 0:
            return (ONE / self) ** (-exponent)
        out, base, e = ONE, self, exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar.from_fraction(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.is_zero

    def __str__(self):
        if self.den == _P_ONE:
            return _pstr(self.num)
        return f"{_wrap(_pstr(self.num))}/{_wrap(_pstr(self.den))}"

    def __repr__(self):
        return f"Scalar({self})"


_SIMPLE_TOKEN = re.compile(r"-?\d+(/\d+)?$|-?s(\^\d+)?$")


def _wrap(text: str) -> str:
    return text if _SIMPLE_TOKEN.match(text) else f"({text})"


ZERO = Scalar(_P_ZERO)
ONE = Scalar(_P_ONE)
S = Scalar((Fraction(0), Fraction(1)))


# -- parsing ------------------------------------------------------------

class ScalarParseError(ValueError):
    """Raised for malformed scalar expressions."""


_TOKEN = re.compile(r"\s*(?:(\d+)|(s)|([+\-*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ScalarParseError(f"unexpected character {text[pos:].lstrip()[0]!r} at position {pos}")
        if m.group(1):
            tokens.append(("int", m.group(1)))
        elif m.group(2):
            tokens.append(("s", "s"))
        else:
            tokens.append(("op", m.group(3)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], text: str):
        self.tokens = tokens
        self.pos = 0
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def fail(self, message):
        raise ScalarParseError(f"{message} in {self.text!r}")

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            _, op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.unary()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            _, op = self.take()
            rhs = self.unary()
            value = value * rhs if op == "*" else value / rhs
        return value

    def unary(self) -> Scalar:
        if self.peek() == ("op", "-"):
            self.take()
            return -self.unary()
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, text = self.take()
            if kind != "int":
                self.fail("exponent must be a nonnegative integer")
            return base ** int(text)
        return base

    def atom(self) -> Scalar:
        kind, text = self.take()
        if kind == "int":
            return Scalar.from_fraction(int(text))
        if kind == "s":
            return S
        if (kind, text) == ("op", "("):
            value = self.expr()
            if self.take() != ("op", ")"):
                self.fail("missing closing parenthesis")
            return value
        self.fail(f"unexpected token {text!r}" if text else "unexpected end of input")


def scalar_parse(text: str) -> Scalar:
    """Parse an expression in integers, 's', '+ - * / ^' and parentheses."""
    tokens = _tokenize(text)
    if not tokens:
        raise ScalarParseError("empty scalar expression")
    parser = _Parser(tokens, text)
    value = parser.expr()
    if parser.pos != len(tokens):
        parser.fail(f"trailing input from token {parser.pos}")
    return value


# -- vectors ------------------------------------------------------------

Vector = tuple[Scalar, ...]


def vec(entries: Iterable) -> Vector:
    return tuple(Scalar._coerce(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if j == i else ZERO for j in range(n))


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b, strict=True))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b, strict=True))


def vec_scale(c: Scalar, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def vec_is_zero(a: Vector) -> bool:
    return all(x.is_zero for x in a)


# -- matrices -----------------------------------------------------------

class ScalarMatrix:
    """Immutable rectangular matrix with Scalar entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        grid = tuple(tuple(Scalar._coerce(e) for e in row) for row in entries)
        if grid and any(len(row) != len(grid[0]) for row in grid):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", len(grid[0]) if grid else 0)

    def __setattr__(self, name, value):
        raise AttributeError("ScalarMatrix is immutable")

    @classmethod
    def identity(cls, n: int) -> "ScalarMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ScalarMatrix":
        return cls([[ZERO] * cols for _ in range(rows)])

    def entry(self, i: int, j: int) -> Scalar:
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix([[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def matmul(self, other: "ScalarMatrix") -> "ScalarMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = ZERO
                for k in range(self.cols):
                    a = self.entries[i][k]
                    if a.is_zero:
                        continue
                    acc = acc + a * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return ScalarMatrix(out)

    def apply(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        out = []
        for i in range(self.rows):
            acc = ZERO
            for k in range(self.cols):
                a = self.entries[i][k]
                if not a.is_zero and not v[k].is_zero:
                    acc = acc + a * v[k]
            out.append(acc)
        return tuple(out)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i]
            for i in range(self.rows) for j in range(i + 1, self.cols))

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        work = [list(row) for row in self.entries]
        n = self.rows
        sign = 1
        out = ONE
        for c in range(n):
            pivot = next((r for r in range(c, n) if not work[r][c].is_zero), None)
            if pivot is None:
                return ZERO
            if pivot != c:
                work[c], work[pivot] = work[pivot], work[c]
                sign = -sign
            p = work[c][c]
            out = out * p
            for r in range(c + 1, n):
                f = work[r][c] / p
                if f.is_zero:
                    continue
                for j in range(c, n):
                    work[r][j] = work[r][j] - f * work[c][j]
        return out if sign > 0 else -out

    def inverse(self) -> "ScalarMatrix":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = ScalarMatrix([list(self.entries[i]) + list(ScalarMatrix.identity(n).entries[i])
                            for i in range(n)])
        result = rref(aug)
        if result.rank < n or result.pivots[:n] != tuple(range(n)):
            raise ValueError("matrix is singular over Q(s)")
        return ScalarMatrix([result.reduced.entries[i][n:] for i in range(n)])

    def evaluate(self, sigma: Fraction | int) -> list[list[Fraction]]:
        return [[e.evaluate(sigma) for e in row] for row in self.entries]

    def __eq__(self, other):
        return isinstance(other, ScalarMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return f"ScalarMatrix({self.rows}x{self.cols})"


class RrefResult(NamedTuple):
    rank: int
    pivots: tuple[int, ...]
    reduced: ScalarMatrix


def rref(m: ScalarMatrix) -> RrefResult:
    """Unique reduced row echelon form over Q(s)."""
    work = [list(row) for row in m.entries]
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if not work[i][c].is_zero), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        p = work[r][c]
        if p != ONE:
            work[r] = [e / p for e in work[r]]
        for i in range(nrows):
            if i == r or work[i][c].is_zero:
                continue
            f = work[i][c]
            work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return RrefResult(r, tuple(pivots), ScalarMatrix(work))


def kernel(m: ScalarMatrix) -> "Subspace":
    """Basis of the right null space of m over Q(s)."""
    result = rref(m)
    pivots = set(result.pivots)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for r, p in enumerate(result.pivots):
            v[p] = -result.reduced.entries[r][f]
        basis.append(tuple(v))
    return Subspace(m.cols, basis)


# -- subspaces ----------------------------------------------------------

class Subspace:
    """Subspace of Q(s)^n, stored as the unique RREF basis of its span."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence]):
        rows = [vec(v) for v in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        if rows:
            result = rref(ScalarMatrix(rows))
            basis = tuple(result.reduced.entries[i] for i in range(result.rank))
        else:
            basis = ()
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, [])

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [unit_vector(n, i) for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Sequence) -> bool:
        v = list(vec(v))
        if len(v) != self.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        for row in self.basis:
            pivot = next(j for j, e in enumerate(row) if not e.is_zero)
            c = v[pivot]
            if c.is_zero:
                continue
            for j in range(self.ambient_dim):
                v[j] = v[j] - c * row[j]
        return all(e.is_zero for e in v)

    def contains(self, other: "Subspace") -> bool:
        self._check(other)
        return all(self.contains_vector(v) for v in other.basis)

    def sum(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace(self.ambient_dim, list(self.basis) + list(other.basis))

    def intersection(self, other: "Subspace") -> "Subspace":
        # v in both spans iff v = u^T A = w^T B; solve A^T u - B^T w = 0.
        self._check(other)
        ra, rb = self.dim, other.dim
        if ra == 0 or rb == 0:
            return Subspace.zero(self.ambient_dim)
        columns = []
        for i in range(self.ambient_dim):
            columns.append([self.basis[r][i] for r in range(ra)]
                           + [-other.basis[r][i] for r in range(rb)])
        solutions = kernel(ScalarMatrix(columns))
        vectors = []
        for sol in solutions.basis:
            v = zero_vector(self.ambient_dim)
            for r in range(ra):
                v = vec_add(v, vec_scale(sol[r], self.basis[r]))
            vectors.append(v)
        return Subspace(self.ambient_dim, vectors)

    def is_rational(self) -> bool:
        return all(e.is_rational for row in self.basis for e in row)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")

    def __eq__(self, other):
        return (isinstance(other, Subspace)
                and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of Q(s)^{self.ambient_dim})"


class SubspaceOps(NamedTuple):
    sum: Subspace
    intersection: Subspace
    contains: bool


def subspace_ops(a: Subspace, b: Subspace) -> SubspaceOps:
    """Sum, intersection, and whether a contains b."""
    return SubspaceOps(a.sum(b), a.intersection(b), a.contains(b))


def _den_lcm(entries: Iterable[Scalar]) -> Coeffs:
    out = _P_ONE
    for e in entries:
        g = _pgcd(out, e.den)
        out = _pdiv_exact(_pmul(out, e.den), g)
    return out


def q_decompose(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    """Q-span of the per-degree rational coefficient vectors.

    Each vector is cleared of denominators and written as sum_d s^d * w_d
    with w_d in Q^n; the span of all the w_d is the smallest subspace
    defined over Q that contains the span of the input.
    """
    rows = []
    for v in vectors:
        v = vec(v)
        if len(v) != ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        clear = Scalar(_den_lcm(v))
        cleared = [clear * e for e in v]
        maxdeg = max((len(e.num) for e in cleared), default=0)
        for d in range(maxdeg):
            w = [e.num[d] if d < len(e.num) else Fraction(0) for e in cleared]
            if any(w):
                rows.append([Scalar.from_fraction(c) for c in w])
    return Subspace(ambient_dim, rows)


def rational_subspace(space: Subspace) -> Subspace:
    """All vectors of Q^n lying in the given Q(s)-subspace, as a Q-basis.

    A vector x is in the span iff reducing it against the RREF basis leaves
    zero, and the reduction coefficients are forced to be the pivot
    coordinates of x.  Requiring the residual to vanish identically in s
    gives rational linear conditions on x, one per power of s and
    non-pivot column.
    """
    n = space.ambient_dim
    if space.dim == 0:
        return Subspace.zero(n)
    if space.is_rational():
        return space
    pivots = [next(j for j, e in enumerate(row) if not e.is_zero) for row in space.basis]
    pivot_set = set(pivots)
    rows = []
    for j in range(n):
        if j in pivot_set:
            continue
        column = [row[j] for row in space.basis]
        clear = Scalar(_den_lcm(column))
        cleared = [clear * e for e in column]
        maxdeg = max([len(clear.num)] + [len(e.num) for e in cleared])
        for d in range(maxdeg):
            coeffs = [Fraction(0)] * n
            coeffs[j] = clear.num[d] if d < len(clear.num) else Fraction(0)
            for i, e in enumerate(cleared):
                coeffs[pivots[i]] -= e.num[d] if d < len(e.num) else Fraction(0)
            if any(coeffs):
                rows.append([Scalar.from_fraction(c) for c in coeffs])
    if not rows:
        return space
    return kernel(ScalarMatrix(rows))


# -- integer lattices ----------------------------------------------------

def _hnf_int_rows(rows: list[list[int]]) -> list[list[int]]:
    """Row Hermite normal form: echelon, positive pivots, entries above
    each pivot reduced into [0, pivot)."""
    rows = [list(r) for r in rows]
    if not rows:
        return []
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if len(nz) <= 1:
                break
            nz.sort(key=lambda i: abs(rows[i][c]))
            base = nz[0]
            for i in nz[1:]:
                q = rows[i][c] // rows[base][c]
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[base])]
        nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
        if not nz:
            continue
        rows[r], rows[nz[0]] = rows[nz[0]], rows[r]
        if rows[r][c] < 0:
            rows[r] = [-a for a in rows[r]]
        for i in range(r):
            q = rows[i][c] // rows[r][c]
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return rows[:r]


class IntLattice:
    """Full-rank lattice in R^k with a canonical triangular basis.

    The basis rows form the Hermite normal form of the generator matrix
    (rescaled if the generators were rational rather than integral), so two
    equal lattices always carry identical bases.  Row i has its pivot on
    the diagonal, which is positive.
    """

    __slots__ = ("rank", "basis")

    def __init__(self, rank: int, basis: tuple[tuple[Fraction, ...], ...]):
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("IntLattice is immutable")

    def is_standard(self) -> bool:
        return all(self.basis[i][j] == (1 if i == j else 0)
                   for i in range(self.rank) for j in range(self.rank))

    def contains(self, point: Sequence[Fraction | int]) -> bool:
        v = [Fraction(x) for x in point]
        if len(v) != self.rank:
            raise ValueError("point dimension mismatch")
        for i in range(self.rank):
            if v[i] == 0:
                continue
            q = v[i] / self.basis[i][i]
            if q.denominator != 1:
                return False
            for j in range(self.rank):
                v[j] -= q * self.basis[i][j]
        return all(x == 0 for x in v)

    def reduce(self, point: Sequence[Fraction | int]) -> tuple[Fraction, ...]:
        """Canonical representative of point modulo the lattice."""
        v = [Fraction(x) for x in point]
        if len(v) != self.rank:
            raise ValueError("point dimension mismatch")
        for i in range(self.rank):
            q = math.floor(v[i] / self.basis[i][i])
            if q:
                for j in range(self.rank):
                    v[j] -= q * self.basis[i][j]
        return tuple(v)

    def __eq__(self, other):
        return (isinstance(other, IntLattice)
                and self.rank == other.rank and self.basis == other.basis)

    def __hash__(self):
        return hash((self.rank, self.basis))

    def __repr__(self):
        return f"IntLattice(rank {self.rank})"


def hnf_lattice(generators: Sequence[Sequence[Fraction | int]]) -> IntLattice:
    """Canonical basis of the Z-module spanned by rational generators.

    The generators must span R^k; a rank-deficient family is rejected
    because the construction downstream needs a full lattice.
    """
    gens = [[Fraction(x) for x in g] for g in generators]
    if not gens:
        raise ValueError("lattice not full rank")
    k = len(gens[0])
    if any(len(g) != k for g in gens):
        raise ValueError("generators of unequal length")
    scale = 1
    for g in gens:
        for x in g:
            scale = scale * x.denominator // math.gcd(scale, x.denominator)
    int_rows = [[int(x * scale) for x in g] for g in gens]
    hnf = _hnf_int_rows(int_rows)
    if len(hnf) < k:
        raise ValueError("lattice not full rank")
    basis = tuple(tuple(Fraction(e, scale) for e in row) for row in hnf)
    return IntLattice(k, basis)
