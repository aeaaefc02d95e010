"""Exact integer/rational linear algebra and binary forms over Q.

Matrices are tuples of row tuples holding ``int`` or ``Fraction``. A matrix
with zero rows is ``()``; callers that care about its column count pass it
separately. Floats never appear here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

IntMat = tuple[tuple[int, ...], ...]
RatMat = tuple[tuple[Fraction, ...], ...]


# ---------------------------------------------------------------------------
# basic matrix plumbing
# ---------------------------------------------------------------------------

def int_matrix(rows: Iterable[Iterable]) -> IntMat:
    out = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError(f"non-integral entry {x}")
                x = x.numerator
            if isinstance(x, bool) or not isinstance(x, int):
                raise TypeError(f"expected an integer entry, got {x!r}")
            r.append(x)
        out.append(tuple(r))
    _check_rectangular(out)
    return tuple(out)


def rat_matrix(rows: Iterable[Iterable]) -> RatMat:
    out = tuple(tuple(Fraction(x) for x in row) for row in rows)
    _check_rectangular(out)
    return out


def _check_rectangular(rows) -> None:
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("ragged matrix")


def identity(n: int) -> IntMat:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence], ncols: int | None = None) -> tuple:
    if not a:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*a))


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], ncols: int | None = None) -> tuple:
    """Product ``a @ b``; ``ncols`` is needed only when ``b`` has no rows."""
    if b:
        ncols = len(b[0])
    bt = transpose(b, ncols)
    out = []
    for row in a:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append(tuple(sum(x * col[k] for k, x in nz) for col in bt))
    return tuple(out)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v) if x and y) for row in a)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError("length mismatch")
    return sum(x * y for x, y in zip(u, v) if x and y)


def bilinear(gram: Sequence[Sequence], u: Sequence, v: Sequence):
    """``u^T G v``."""
    if len(u) != len(gram) or len(v) != len(gram):
        raise ValueError("vector length does not match the Gram matrix")
    return dot(u, matvec(gram, v))


def is_symmetric(a: Sequence[Sequence]) -> bool:
    n = len(a)
    return all(len(r) == n for r in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def block_diag(*blocks: Sequence[Sequence]) -> tuple:
    n = sum(len(b) for b in blocks)
    out = []
    offset = 0
    for b in blocks:
        k = len(b)
        for row in b:
            out.append((0,) * offset + tuple(row) + (0,) * (n - offset - k))
        offset += k
    return tuple(out)


def is_zero_row(row: Sequence) -> bool:
    return not any(row)


# ---------------------------------------------------------------------------
# determinant
# ---------------------------------------------------------------------------

def det(a: Sequence[Sequence]):
    """Exact determinant: Bareiss for integers, Gaussian elimination over Q otherwise."""
    m = [list(r) for r in a]
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    if all(type(x) is int for r in m for x in r):
        return _bareiss(m)
    return _rational_det([[Fraction(x) for x in r] for r in m])


def _bareiss(m: list[list[int]]) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _rational_det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    result = Fraction(1)
    for k in range(n):
        p = next((i for i in range(k, n) if m[i][k] != 0), None)
        if p is None:
            return Fraction(0)
        if p != k:
            m[k], m[p] = m[p], m[k]
            result = -result
        pivot = m[k][k]
        result *= pivot
        for i in range(k + 1, n):
            f = m[i][k] / pivot
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[k])]
    return result


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms
# ---------------------------------------------------------------------------

def _row_sub(m, i, k, q):
    """row_i -= q * row_k"""
    ri, rk = m[i], m[k]
    for j in range(len(ri)):
        ri[j] -= q * rk[j]


def hnf(a: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat]:
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U @ A == H``. Pivots are
    positive, entries above a pivot lie in ``[0, pivot)``, zero rows sit at the
    bottom. Among candidate pivot rows the smallest absolute value wins, ties
    going to the smallest row index.
    """
    a = int_matrix(a)
    m = len(a)
    n = len(a[0]) if m else 0
    H = [list(r) for r in a]
    U = [list(r) for r in identity(m)]
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][j] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: (abs(H[i][j]), i))
            H[r], H[p] = H[p], H[r]
            U[r], U[p] = U[p], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // H[r][j]
                    _row_sub(H, i, r, q)
                    _row_sub(U, i, r, q)
                    if H[i][j]:
                        done = False
            if done:
                break
        if H[r][j] == 0:
            continue
        if H[r][j] < 0:
            H[r] = [-x for x in H[r]]
            U[r] = [-x for x in U[r]]
        for i in range(r):
            q = H[i][j] // H[r][j]
            if q:
                _row_sub(H, i, r, q)
                _row_sub(U, i, r, q)
        r += 1
    return tuple(map(tuple, H)), tuple(map(tuple, U))


def row_basis(a: Sequence[Sequence[int]]) -> IntMat:
    """Nonzero rows of the HNF: canonical basis of the row lattice."""
    H, _ = hnf(a)
    return tuple(r for r in H if not is_zero_row(r))


def snf(a: Sequence[Sequence[int]]) -> tuple[IntMat, IntMat, IntMat]:
    """Smith normal form ``(S, U, V)`` with ``U @ A @ V == S``.

    ``S`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``; ``U`` and
    ``V`` are unimodular.
    """
    a = int_matrix(a)
    m = len(a)
    n = len(a[0]) if m else 0
    S = [list(r) for r in a]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_cols(M, i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]

    def col_sub(M, j, k, q):
        for row in M:
            row[j] -= q * row[k]

    t = 0
    while t < min(m, n):
        cand = [(abs(S[i][j]), i, j) for i in range(t, m) for j in range(t, n) if S[i][j]]
        if not cand:
            break
        _, pi, pj = min(cand)
        S[t], S[pi] = S[pi], S[t]
        U[t], U[pi] = U[pi], U[t]
        swap_cols(S, t, pj)
        swap_cols(V, t, pj)
        clean = True
        for i in range(t + 1, m):
            if S[i][t]:
                q = S[i][t] // S[t][t]
                _row_sub(S, i, t, q)
                _row_sub(U, i, t, q)
                clean = clean and not S[i][t]
        for j in range(t + 1, n):
            if S[t][j]:
                q = S[t][j] // S[t][t]
                col_sub(S, j, t, q)
                col_sub(V, j, t, q)
                clean = clean and not S[t][j]
        if not clean:
            continue
        bad = next(
            (i for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
            None,
        )
        if bad is not None:
            _row_sub(S, t, bad, -1)
            _row_sub(U, t, bad, -1)
            continue
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return tuple(map(tuple, S)), tuple(map(tuple, U)), tuple(map(tuple, V))


def invariant_factors(a: Sequence[Sequence[int]]) -> list[int]:
    """Diagonal of the Smith form, trailing zeros included."""
    S, _, _ = snf(a)
    return [S[i][i] for i in range(min(len(S), len(S[0]) if S else 0))]


# ---------------------------------------------------------------------------
# kernels and solving
# ---------------------------------------------------------------------------

def left_kernel(a: Sequence[Sequence[int]]) -> IntMat:
    """Basis (in HNF) of the integer vectors ``x`` with ``x @ A == 0``.

    The basis is saturated: it comes from rows of a unimodular transform.
    """
    H, U = hnf(a)
    rows = [U[i] for i in range(len(H)) if is_zero_row(H[i])]
    return row_basis(rows) if rows else ()


def right_kernel(a: Sequence[Sequence[int]], ncols: int) -> IntMat:
    """Basis of the integer vectors ``v`` (length ``ncols``) with ``A @ v == 0``."""
    return left_kernel(transpose(a, ncols))


def solve(a: Sequence[Sequence], b: Sequence[Sequence]) -> RatMat | None:
    """Solve ``A @ X == B`` over Q.

    Returns one solution (free variables set to zero) or ``None`` when the
    system is inconsistent. ``B`` is given as a matrix with ``len(A)`` rows.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    k = len(b[0]) if b else 0
    M = [[Fraction(x) for x in a[i]] + [Fraction(x) for x in b[i]] for i in range(m)]
    pivots = []
    r = 0
    for j in range(n):
        p = next((i for i in range(r, m) if M[i][j] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][j]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][j]:
                f = M[i][j]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(j)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if any(M[i][n:]):
            return None
    X = [[Fraction(0)] * k for _ in range(n)]
    for i, j in enumerate(pivots):
        X[j] = M[i][n:]
    return tuple(map(tuple, X))


def solve_left(a: Sequence[Sequence], b: Sequence[Sequence]) -> RatMat | None:
    """Solve ``X @ A == B`` over Q (rows of ``B`` in the row space of ``A``)."""
    if not b:
        return ()
    ncols = len(b[0])
    xt = solve(transpose(a, ncols), transpose(b))
    if xt is None:
        return None
    return transpose(xt, len(b))


def rank(a: Sequence[Sequence]) -> int:
    if not a:
        return 0
    if all(type(x) is int for r in a for x in r):
        return len(row_basis(a))
    m = [[Fraction(x) for x in r] for r in a]
    rk = 0
    n = len(m[0])
    for j in range(n):
        p = next((i for i in range(rk, len(m)) if m[i][j] != 0), None)
        if p is None:
            continue
        m[rk], m[p] = m[p], m[rk]
        for i in range(rk + 1, len(m)):
            f = m[i][j] / m[rk][j]
            if f:
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


# ---------------------------------------------------------------------------
# signatures
# ---------------------------------------------------------------------------

def congruence_diagonalize(g: Sequence[Sequence]) -> tuple[RatMat, RatMat, tuple[int, int]]:
    """Diagonalize a symmetric form by congruence over Q.

    Returns ``(D, P, (p, q))`` with ``P^T G P == D`` diagonal; ``p`` and ``q``
    count positive and negative diagonal entries. A zero pivot is replaced by
    a nonzero later diagonal entry if one exists, otherwise by ``e_k + e_j``
    for some ``j`` with ``G[k][j] != 0``.
    """
    if not is_symmetric(g):
        raise ValueError("congruence_diagonalize needs a symmetric matrix")
    n = len(g)
    M = [[Fraction(x) for x in row] for row in g]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    def swap(k, j):
        M[k], M[j] = M[j], M[k]
        for row in M:
            row[k], row[j] = row[j], row[k]
        for row in P:
            row[k], row[j] = row[j], row[k]

    def add_basis(j, k, c):
        """e_j <- e_j + c e_k"""
        for row in P:
            row[j] += c * row[k]
        for i in range(n):
            M[j][i] += c * M[k][i]
        for i in range(n):
            M[i][j] += c * M[i][k]

    for k in range(n):
        if M[k][k] == 0:
            j = next((j for j in range(k + 1, n) if M[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if M[k][j] != 0), None)
                if j is None:
                    continue
                add_basis(k, j, Fraction(1))
        piv = M[k][k]
        for j in range(k + 1, n):
            if M[k][j]:
                add_basis(j, k, -M[k][j] / piv)

    D = tuple(tuple(M[i][j] if i == j else Fraction(0) for j in range(n)) for i in range(n))
    p = sum(1 for i in range(n) if M[i][i] > 0)
    q = sum(1 for i in range(n) if M[i][i] < 0)
    return D, tuple(map(tuple, P)), (p, q)


def signature(g: Sequence[Sequence]) -> tuple[int, int]:
    return congruence_diagonalize(g)[2]


# ---------------------------------------------------------------------------
# univariate polynomials over Q (ascending coefficient lists, trimmed)
# ---------------------------------------------------------------------------

def _trim(p: list[Fraction]) -> list[Fraction]:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _deg(p) -> int:
    return len(p) - 1


def _monic(p):
    return [c / p[-1] for c in p] if p else p


def _divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        c = r[-1] / lead
        q[shift] = c
        for i, bc in enumerate(b):
            r[shift + i] -= c * bc
        r = _trim(r)
    return _trim(q), r


def _pgcd(a, b):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _divmod(a, b)[1]
    return _monic(a)


def _deriv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def _yun(p) -> list[tuple[list[Fraction], int]]:
    """Squarefree decomposition of a nonconstant polynomial over Q."""
    dp = _deriv(p)
    b = _pgcd(p, dp)
    c = _divmod(p, b)[0]
    d = _trim([x - y for x, y in _zip_pad(_divmod(dp, b)[0], _deriv(c))])
    out = []
    i = 1
    while _deg(c) > 0:
        a = _pgcd(c, d)
        if _deg(a) > 0:
            out.append((a, i))
        c = _divmod(c, a)[0]
        d = _trim([x - y for x, y in _zip_pad(_divmod(d, a)[0], _deriv(c))])
        i += 1
    return out


def _zip_pad(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return zip(a, b)


# ---------------------------------------------------------------------------
# binary forms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BinForm:
    """Homogeneous form ``c_0 t^d + c_1 t^(d-1) s + ... + c_d s^d`` over Q.

    The degree is explicit, so a section of O(d) that vanishes at infinity
    (``s = 0``) is written with leading zero coefficients.
    """

    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if len(coeffs) != self.degree + 1:
            raise ValueError(
                f"degree {self.degree} form needs {self.degree + 1} coefficients, got {len(coeffs)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def of(cls, *coeffs) -> BinForm:
        return cls(len(coeffs) - 1, tuple(coeffs))

    @classmethod
    def zero(cls, degree: int) -> BinForm:
        return cls(degree, (0,) * (degree + 1))

    @classmethod
    def monomial(cls, t_power: int, s_power: int, c=1) -> BinForm:
        d = t_power + s_power
        coeffs = [0] * (d + 1)
        coeffs[s_power] = c
        return cls(d, tuple(coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: BinForm) -> BinForm:
        if self.degree != other.degree:
            raise ValueError("cannot add forms of different degree")
        return BinForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> BinForm:
        return BinForm(self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other: BinForm) -> BinForm:
        return self + (-other)

    def __mul__(self, other) -> BinForm:
        if not isinstance(other, BinForm):
            c = Fraction(other)
            return BinForm(self.degree, tuple(c * x for x in self.coeffs))
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinForm(self.degree + other.degree, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> BinForm:
        out = BinForm.of(1)
        for _ in range(k):
            out = out * self
        return out

    def order_at_infinity(self) -> int:
        """Multiplicity of the ``s`` factor (number of leading zero coefficients)."""
        if self.is_zero():
            raise ValueError("zero form vanishes to infinite order")
        return next(i for i, c in enumerate(self.coeffs) if c)

    def order_at_zero(self) -> int:
        """Multiplicity of the ``t`` factor (number of trailing zero coefficients)."""
        if self.is_zero():
            raise ValueError("zero form vanishes to infinite order")
        return next(i for i, c in enumerate(reversed(self.coeffs)) if c)

    def dehomogenize(self) -> list[Fraction]:
        """``f(x, 1)`` as an ascending coefficient list."""
        return _trim(list(reversed(self.coeffs)))

    @classmethod
    def homogenize(cls, poly: Sequence, degree: int) -> BinForm:
        poly = _trim(list(poly))
        if len(poly) > degree + 1:
            raise ValueError("polynomial degree exceeds form degree")
        asc = list(poly) + [Fraction(0)] * (degree + 1 - len(poly))
        return cls(degree, tuple(reversed(asc)))

    def normalized(self) -> BinForm:
        """Scale so the first nonzero coefficient is 1."""
        if self.is_zero():
            return self
        lead = self.coeffs[self.order_at_infinity()]
        return self * (1 / lead)

    def derivative_t(self) -> BinForm:
        d = self.degree
        if d == 0:
            return BinForm.zero(0)
        return BinForm(d - 1, tuple((d - i) * c for i, c in enumerate(self.coeffs[:-1])))

    def derivative_s(self) -> BinForm:
        d = self.degree
        if d == 0:
            return BinForm.zero(0)
        return BinForm(d - 1, tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def __str__(self) -> str:
        d = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "*".join(
                p for p in (_pw("t", d - i), _pw("s", i)) if p
            )
            terms.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(terms) if terms else "0"


def _pw(var: str, k: int) -> str:
    if k == 0:
        return ""
    return var if k == 1 else f"{var}^{k}"


T = BinForm.of(1, 0)
S = BinForm.of(0, 1)


def poly_gcd(f: BinForm, g: BinForm) -> BinForm:
    """Normalized gcd of two binary forms (the zero form is divisible by everything)."""
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd of two zero forms is undefined")
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    k = min(f.order_at_infinity(), g.order_at_infinity())
    p = _pgcd(f.dehomogenize(), g.dehomogenize())
    return (S ** k) * BinForm.homogenize(p, _deg(p))


def divides(g: BinForm, f: BinForm) -> bool:
    """True when ``f = g * h`` for some binary form ``h``."""
    if g.is_zero():
        return f.is_zero()
    if f.is_zero():
        return True
    if g.degree > f.degree or g.order_at_infinity() > f.order_at_infinity():
        return False
    return not _divmod(f.dehomogenize(), g.dehomogenize())[1]


def squarefree_decomposition(f: BinForm) -> list[tuple[BinForm, int]]:
    """Factor ``f = c * prod(g_i ** m_i)`` with ``g_i`` squarefree, pairwise coprime.

    Factors are normalized. A root at infinity shows up as the factor ``s``.
    Constant forms give an empty list.
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero form")
    k = f.order_at_infinity()
    p = f.dehomogenize()
    out = []
    if _deg(p) > 0:
        for a, m in _yun(p):
            out.append((BinForm.homogenize(a, _deg(a)), m))
    if k:
        out.append((S, k))
    return out


def high_multiplicity_part(f: BinForm, min_mult: int) -> BinForm:
    """Product of the squarefree factors of ``f`` occurring with multiplicity >= ``min_mult``."""
    out = BinForm.of(1)
    for g, m in squarefree_decomposition(f):
        if m >= min_mult:
            out = out * g
    return out
