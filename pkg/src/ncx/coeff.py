"""Coefficient fields carrying a distinguished root of unity, and q-combinatorics.

Two kinds of field are supported:

* ``PrimeField(p, N, q)``: F_p with a chosen element ``q``.
* ``CyclotomicField(N)``: Q(zeta_N) = Q[x]/Phi_N with ``q`` the class of ``x``.

Scalars of a prime field are plain Python ints in ``[0, p)``.  Scalars of a
cyclotomic field are :class:`Cyc` instances (coefficient tuples of
``Fraction`` in the power basis).  Both have a unique canonical form, so
equality is exact.

Matrices are numpy arrays: ``int64`` for prime fields (hot loops go through
:mod:`ncx._kernels`), ``object`` arrays of :class:`Cyc` for cyclotomic fields.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Sequence

import numpy as np
from sympy import isprime

from . import _kernels
from .errors import AssumptionError, FieldSpecError

# ---------------------------------------------------------------------------
# integer polynomials (coefficients low -> high)


def _poly_trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a: Sequence, b: Sequence) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_divmod(a: Sequence, b: Sequence):
    """Divide by a monic polynomial ``b``; returns ``(quotient, remainder)``."""
    a = list(a)
    db = len(b) - 1
    assert b[-1] == 1
    if len(a) - 1 < db:
        return [0], a
    quo = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c == 0:
            continue
        quo[k - db] = c
        for i in range(db + 1):
            a[k - db + i] -= c * b[i]
    return _poly_trim(quo), _poly_trim(a[:db] or [0])


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Phi_N as integer coefficients (low -> high), by exact division of x^N - 1."""
    if N < 1:
        raise ValueError("N must be positive")
    num = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            num, rem = _poly_divmod(num, cyclotomic_poly(d))
            assert all(r == 0 for r in rem), "x^N - 1 not divisible by Phi_d"
    return tuple(int(c) for c in num)


# ---------------------------------------------------------------------------
# cyclotomic elements


class Cyc:
    """Element of Q(zeta_N) stored in the power basis 1, x, ..., x^(phi-1)."""

    __slots__ = ("F", "c")

    def __init__(self, F: "CyclotomicField", coeffs: Sequence):
        self.F = F
        self.c = tuple(Fraction(x) for x in coeffs)

    def _coerce(self, other):
        if isinstance(other, Cyc):
            if other.F != self.F:
                raise ValueError("elements of different cyclotomic fields")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return self.F.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyc(self.F, [a + b for a, b in zip(self.c, o.c)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyc(self.F, [a - b for a, b in zip(self.c, o.c)])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return Cyc(self.F, [-a for a in self.c])

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        prod = _poly_mul(self.c, o.c)
        return Cyc(self.F, self.F._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyc":
        if not self:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        return Cyc(self.F, self.F._invert(self.c))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.F.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, np.integer)):
            other = self.F.from_int(other)
        if not isinstance(other, Cyc):
            return NotImplemented
        return self.F == other.F and self.c == other.c

    def __hash__(self):
        return hash((self.F.N, self.c))

    def __repr__(self):
        return self.F.pretty(self)


# ---------------------------------------------------------------------------
# fields


class Field:
    """Shared behaviour; concrete fields override scalar and matrix primitives."""

    kind: str
    N: int

    # scalar interface -----------------------------------------------------
    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def pow(self, a, e: int):
        result = self.one
        if e < 0:
            a, e = self.inv(a), -e
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # matrix interface -----------------------------------------------------
    def zeros(self, rows: int, cols: int) -> np.ndarray:
        raise NotImplementedError

    def eye(self, n: int) -> np.ndarray:
        M = self.zeros(n, n)
        for i in range(n):
            M[i, i] = self.one
        return M

    def matrix(self, rows: Sequence[Sequence[Any]], shape: Optional[tuple] = None) -> np.ndarray:
        """Build a canonical matrix from nested scalars or ints."""
        rows = [list(r) for r in rows]
        if shape is None:
            shape = (len(rows), len(rows[0]) if rows else 0)
        M = self.zeros(*shape)
        for i, row in enumerate(rows):
            if len(row) != shape[1]:
                raise ValueError("ragged matrix rows")
            for j, x in enumerate(row):
                M[i, j] = self.coerce(x)
        return M

    def vector(self, xs: Sequence[Any]) -> np.ndarray:
        return self.matrix([list(xs)], shape=(1, len(xs)))[0]

    def matvec(self, M: np.ndarray, v: np.ndarray) -> np.ndarray:
        return self.matmul(M, v.reshape(-1, 1))[:, 0]

    def is_zero_matrix(self, M: np.ndarray) -> bool:
        return not any(bool(x) for x in M.flat)

    def random_matrix(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        M = self.zeros(rows, cols)
        for i in range(rows):
            for j in range(cols):
                M[i, j] = self.random(rng)
        return M

    def check_assumption(self) -> None:
        report = validate_assumption_A(self)
        if not report.passed:
            raise AssumptionError(f"{self!r} fails the root-of-unity assumption: {report.reason}")


@dataclass(frozen=True)
class PrimeField(Field):
    """F_p with distinguished element ``q`` and nilpotency order ``N``."""

    p: int
    N: int
    q: int
    kind: str = field(default="Fp", init=False)

    def __post_init__(self):
        if self.N < 2:
            raise FieldSpecError(f"N must be >= 2, got {self.N}")
        if self.p < 2 or not isprime(self.p):
            raise FieldSpecError(f"p = {self.p} is not prime")
        if not 0 <= self.q < self.p:
            raise FieldSpecError(f"q = {self.q} not in [0, {self.p})")

    def __repr__(self):
        return f"PrimeField(p={self.p}, N={self.N}, q={self.q})"

    # scalars
    def from_int(self, n) -> int:
        return int(n) % self.p

    def coerce(self, x) -> int:
        if isinstance(x, Fraction):
            return self.div(self.from_int(x.numerator), self.from_int(x.denominator))
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero in F_p")
        return pow(int(a), -1, self.p)

    def pow(self, a, e: int):
        return pow(int(a), e, self.p)

    def is_zero(self, a) -> bool:
        return int(a) % self.p == 0

    def eq(self, a, b) -> bool:
        return (int(a) - int(b)) % self.p == 0

    def random(self, rng: np.random.Generator) -> int:
        return int(rng.integers(0, self.p))

    def format(self, a) -> str:
        return str(int(a) % self.p)

    def pretty(self, a) -> str:
        return self.format(a)

    def parse(self, s) -> int:
        if isinstance(s, bool) or isinstance(s, (list, dict)):
            raise ValueError(f"bad F_p scalar {s!r}")
        if isinstance(s, int):
            return s % self.p
        return self.coerce(Fraction(str(s).strip()))

    # matrices
    def _require_kernel_size(self):
        if self.p >= _kernels.MAX_KERNEL_PRIME:
            raise ValueError("matrix arithmetic over F_p requires p < 2**31")

    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=np.int64)

    def matrix(self, rows, shape=None):
        self._require_kernel_size()
        return super().matrix(rows, shape)

    def matmul(self, A, B):
        if A.shape[1] != B.shape[0]:
            raise ValueError(f"matmul shape mismatch {A.shape} @ {B.shape}")
        self._require_kernel_size()
        return _kernels.matmul_modp(A, B, self.p)

    def madd(self, A, B):
        return (A + B) % self.p

    def msub(self, A, B):
        return (A - B) % self.p

    def smul(self, s, A):
        return (int(s) % self.p * A) % self.p

    def kron(self, A, B):
        return np.kron(A, B) % self.p

    def rref(self, A):
        self._require_kernel_size()
        R, piv = _kernels.rref_modp(A, self.p)
        return R, [int(c) for c in piv]

    def is_zero_matrix(self, M):
        return not np.any(M)

    def random_matrix(self, rng, rows, cols):
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)


@dataclass(frozen=True)
class CyclotomicField(Field):
    """Q(zeta_N) with q the class of x modulo the N-th cyclotomic polynomial."""

    N: int
    phi: tuple = field(init=False, compare=False, repr=False)
    kind: str = field(default="cyclotomic", init=False)

    def __post_init__(self):
        if self.N < 2:
            raise FieldSpecError(f"N must be >= 2, got {self.N}")
        object.__setattr__(self, "phi", cyclotomic_poly(self.N))

    def __repr__(self):
        return f"CyclotomicField(N={self.N})"

    @property
    def degree(self) -> int:
        return len(self.phi) - 1

    @property
    def q(self) -> Cyc:
        if self.degree == 1:
            # Phi_N = x - c  (only N = 2 here), so x is the constant c
            return self.from_int(-self.phi[0])
        return Cyc(self, [0, 1] + [0] * (self.degree - 2))

    def _reduce(self, coeffs: list) -> list:
        d = self.degree
        a = list(coeffs)
        for k in range(len(a) - 1, d - 1, -1):
            c = a[k]
            if c:
                for i in range(d + 1):
                    a[k - d + i] -= c * self.phi[i]
        a = a[:d]
        return a + [0] * (d - len(a))

    def _invert(self, coeffs) -> list:
        # solve (a * x^j)_j . v = 1 over Q; the multiplication matrix is invertible for a != 0
        d = self.degree
        cols = []
        mono = [Fraction(0)] * d
        mono[0] = Fraction(1)
        for _ in range(d):
            cols.append(self._reduce(_poly_mul(coeffs, mono)))
            mono = self._reduce([Fraction(0)] + mono)
        aug = [[cols[j][i] for j in range(d)] + [Fraction(int(i == 0))] for i in range(d)]
        for c in range(d):
            piv = next(i for i in range(c, d) if aug[i][c] != 0)
            aug[c], aug[piv] = aug[piv], aug[c]
            inv = 1 / aug[c][c]
            aug[c] = [x * inv for x in aug[c]]
            for i in range(d):
                f = aug[i][c]
                if i != c and f:
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
        return [aug[i][d] for i in range(d)]

    # scalars
    def from_int(self, n) -> Cyc:
        n = Fraction(n) if not isinstance(n, np.integer) else Fraction(int(n))
        return Cyc(self, [n] + [0] * (self.degree - 1))

    def coerce(self, x) -> Cyc:
        if isinstance(x, Cyc):
            if x.F != self:
                raise ValueError("scalar from a different field")
            return x
        if isinstance(x, (list, tuple)):
            return self.parse(x)
        return self.from_int(x)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inverse()

    def pow(self, a, e):
        return a ** e

    def is_zero(self, a) -> bool:
        return not a

    def eq(self, a, b) -> bool:
        return a == b

    def random(self, rng: np.random.Generator) -> Cyc:
        return Cyc(self, [int(x) for x in rng.integers(-2, 3, size=self.degree)])

    def format(self, a: Cyc) -> list:
        return [str(c) for c in a.c]

    def pretty(self, a: Cyc) -> str:
        terms = []
        for i, c in enumerate(a.c):
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                cs = str(c) if "/" not in str(c) or not mono else f"({c})"
                terms.append(cs + ("*" + mono if mono else ""))
        if not terms:
            return "0"
        return "+".join(terms).replace("+-", "-")

    def parse(self, s) -> Cyc:
        if isinstance(s, (list, tuple)):
            if len(s) != self.degree:
                raise ValueError(f"cyclotomic scalar needs {self.degree} coefficients, got {len(s)}")
            return Cyc(self, [Fraction(str(x).strip()) for x in s])
        if isinstance(s, (int, str)) and not isinstance(s, bool):
            return self.from_int(Fraction(str(s).strip()))
        raise ValueError(f"bad cyclotomic scalar {s!r}")

    # matrices (object arrays of Cyc)
    def zeros(self, rows, cols):
        M = np.empty((rows, cols), dtype=object)
        z = self.zero
        for idx in np.ndindex(rows, cols):
            M[idx] = z
        return M

    def matmul(self, A, B):
        if A.shape[1] != B.shape[0]:
            raise ValueError(f"matmul shape mismatch {A.shape} @ {B.shape}")
        out = self.zeros(A.shape[0], B.shape[1])
        for t in range(A.shape[1]):
            col = A[:, t]
            row = B[t, :]
            for i in range(A.shape[0]):
                a = col[i]
                if a:
                    for j in range(B.shape[1]):
                        b = row[j]
                        if b:
                            out[i, j] = out[i, j] + a * b
        return out

    def madd(self, A, B):
        return A + B if A.size else A.copy()

    def msub(self, A, B):
        return A - B if A.size else A.copy()

    def smul(self, s, A):
        s = self.coerce(s)
        out = self.zeros(*A.shape)
        for idx in np.ndindex(*A.shape):
            out[idx] = s * A[idx]
        return out

    def kron(self, A, B):
        m, n = A.shape
        r, c = B.shape
        out = self.zeros(m * r, n * c)
        for i in range(m):
            for j in range(n):
                a = A[i, j]
                if a:
                    out[i * r:(i + 1) * r, j * c:(j + 1) * c] = self.smul(a, B)
        return out

    def rref(self, A):
        R = A.copy()
        m, n = R.shape
        pivots = []
        r = 0
        for c in range(n):
            if r == m:
                break
            piv = next((i for i in range(r, m) if R[i, c]), None)
            if piv is None:
                continue
            if piv != r:
                R[[r, piv]] = R[[piv, r]]
            inv = R[r, c].inverse()
            R[r] = [x * inv for x in R[r]]
            for i in range(m):
                f = R[i, c]
                if i != r and f:
                    R[i] = [x - f * y for x, y in zip(R[i], R[r])]
            pivots.append(c)
            r += 1
        return R, pivots


def make_field(spec: dict) -> Field:
    """Construct a field from a description such as ``{"type": "Fp", "p": 7, "N": 3, "q": 2}``.

    Accepted ``type`` values: ``"Fp"`` / ``"prime-field"`` and ``"cyclotomic"``.
    Failing the root-of-unity assumption is *not* an error here; see
    :func:`validate_assumption_A`.
    """
    kind = spec.get("type", spec.get("kind"))
    try:
        N = int(spec["N"])
    except (KeyError, TypeError, ValueError):
        raise FieldSpecError("field spec needs an integer N") from None
    if kind in ("Fp", "prime-field", "prime"):
        try:
            p, q = int(spec["p"]), int(spec["q"])
        except (KeyError, TypeError, ValueError):
            raise FieldSpecError("prime field spec needs integer p and q") from None
        return PrimeField(p=p, N=N, q=q)
    if kind == "cyclotomic":
        return CyclotomicField(N=N)
    raise FieldSpecError(f"unknown field type {kind!r}")


def field_spec(F: Field) -> dict:
    if isinstance(F, PrimeField):
        return {"type": "Fp", "p": F.p, "q": F.q}
    return {"type": "cyclotomic"}


# ---------------------------------------------------------------------------
# q-combinatorics


def q_int(F: Field, n: int, q=None):
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q = 0."""
    if n < 0:
        raise ValueError("q_int needs n >= 0")
    q = F.q if q is None else q
    total, power = F.zero, F.one
    for _ in range(n):
        total = F.add(total, power)
        power = F.mul(power, q)
    return total


def q_factorial(F: Field, n: int, q=None):
    if n < 1:
        raise ValueError("q_factorial needs n >= 1")
    out = F.one
    for k in range(1, n + 1):
        out = F.mul(out, q_int(F, k, q))
    return out


def q_pascal(F: Field, nmax: int, q=None) -> list[list]:
    """Rows 0..nmax of the q-binomial triangle, built from the recurrence

        [n, m] + q^(m+1) [n, m+1] = [n+1, m+1],   [n, 0] = [n, n] = 1.
    """
    q = F.q if q is None else q
    rows = [[F.one]]
    for n in range(nmax):
        prev = rows[-1]
        row = [F.one]
        for m in range(n):
            row.append(F.add(prev[m], F.mul(F.pow(q, m + 1), prev[m + 1])))
        row.append(F.one)
        rows.append(row)
    return rows


def q_binomial(F: Field, n: int, m: int, q=None):
    """Gaussian binomial [n choose m]_q via the additive recurrence (row 0 is ``[1]``)."""
    if n < 0 or not 0 <= m <= n:
        raise ValueError(f"q_binomial needs 0 <= m <= n, got n={n}, m={m}")
    return q_pascal(F, n, q)[n][m]


@dataclass(frozen=True)
class AssumptionReport:
    q_N: Any
    invertible: dict
    passed: bool
    reason: str = ""


def validate_assumption_A(F: Field, q=None) -> AssumptionReport:
    """Check [N]_q = 0 and [n]_q != 0 for 1 <= n <= N-1."""
    q = F.q if q is None else q
    qN = q_int(F, F.N, q)
    inv = {n: not F.is_zero(q_int(F, n, q)) for n in range(1, F.N)}
    problems = []
    if not F.is_zero(qN):
        problems.append(f"[{F.N}]_q = {F.pretty(qN)} != 0")
    bad = [n for n, ok in inv.items() if not ok]
    if bad:
        problems.append(f"[n]_q = 0 for n in {bad}")
    return AssumptionReport(q_N=qN, invertible=inv, passed=not problems, reason="; ".join(problems))


def primitive_roots(F: Field) -> list:
    """All primitive N-th roots of unity in ``F`` expressed as powers q^j, gcd(j, N) = 1."""
    from math import gcd

    return [F.pow(F.q, j) for j in range(1, F.N) if gcd(j, F.N) == 1]
