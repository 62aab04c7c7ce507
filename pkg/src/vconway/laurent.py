"""Exact arithmetic for sparse integer Laurent polynomials in x and y.

Everything this package computes lives in Z[x^(+-1), y^(+-1)]: link
polynomials are elements of the ring, matrices over it get exact
determinants, and the expansion in z = 1 - x is a thin coefficient
vector (`ConwayPoly`) whose entries are y-only elements of the same
ring.  All coefficients are Python ints, so nothing overflows and
every equality test is exact.

Representation: a mapping from exponent pairs to nonzero integer
coefficients.  Internally the pair (ex, ey) is packed into one integer
(ex * 2^32 + ey) so that exponent addition during multiplication is a
single integer add; the empty mapping is the zero polynomial.

Rendering grammar, used verbatim by the CLI and by regression tests:
terms are sorted by (ex + ey, ex) ascending and joined with " + " or
" - ".  A monomial prints as `x^a*y^b`, omitting a factor whose
exponent is 0 and the `^` mark when the exponent is 1; a coefficient
of magnitude 1 is omitted unless the monomial part is empty.  The zero
polynomial prints as "0".  Examples:

    1 + x*y^-1 + y + x
    2 - x - x^-1
    -3*y^2 + x^-2*y
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping

_SHIFT = 1 << 32
_HALF = 1 << 31
_EXP_LIMIT = 1 << 30


def _pack(ex: int, ey: int) -> int:
    if not (-_EXP_LIMIT < ex < _EXP_LIMIT and -_EXP_LIMIT < ey < _EXP_LIMIT):
        raise OverflowError(f"exponent pair ({ex}, {ey}) out of supported range")
    return ex * _SHIFT + ey


def _unpack(key: int) -> tuple[int, int]:
    ey = ((key + _HALF) % _SHIFT) - _HALF
    return (key - ey) >> 32, ey


class LaurentPoly2:
    """An element of Z[x^(+-1), y^(+-1)] in canonical sparse form."""

    __slots__ = ("_t",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        data: dict[int, int] = {}
        if terms:
            for (ex, ey), c in terms.items():
                if c:
                    key = _pack(ex, ey)
                    v = data.get(key, 0) + c
                    if v:
                        data[key] = v
                    else:
                        data.pop(key, None)
        self._t = data

    @classmethod
    def _raw(cls, packed: dict[int, int]) -> "LaurentPoly2":
        obj = object.__new__(cls)
        obj._t = packed
        return obj

    @classmethod
    def zero(cls) -> "LaurentPoly2":
        return cls._raw({})

    @classmethod
    def one(cls) -> "LaurentPoly2":
        return cls._raw({0: 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly2":
        return cls._raw({0: c} if c else {})

    @classmethod
    def monomial(cls, c: int, ex: int, ey: int) -> "LaurentPoly2":
        return cls._raw({_pack(ex, ey): c} if c else {})

    def is_zero(self) -> bool:
        return not self._t

    def __bool__(self) -> bool:
        return bool(self._t)

    def terms(self) -> dict[tuple[int, int], int]:
        """The canonical {(ex, ey): coefficient} view (a fresh dict)."""
        return {_unpack(k): c for k, c in self._t.items()}

    def term_count(self) -> int:
        return len(self._t)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly2):
            return self._t == other._t
        if isinstance(other, int):
            return self._t == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._t.items()))

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2._raw({k: -c for k, c in self._t.items()})

    def __add__(self, other: "LaurentPoly2 | int") -> "LaurentPoly2":
        if isinstance(other, int):
            other = LaurentPoly2.const(other)
        elif not isinstance(other, LaurentPoly2):
            return NotImplemented
        if not self._t:
            return other
        if not other._t:
            return self
        out = dict(self._t)
        for k, c in other._t.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                del out[k]
        return LaurentPoly2._raw(out)

    __radd__ = __add__

    def __sub__(self, other: "LaurentPoly2 | int") -> "LaurentPoly2":
        if isinstance(other, int):
            other = LaurentPoly2.const(other)
        elif not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: int) -> "LaurentPoly2":
        return LaurentPoly2.const(other) + (-self)

    def __mul__(self, other: "LaurentPoly2 | int") -> "LaurentPoly2":
        if isinstance(other, int):
            if not other:
                return _ZERO
            return LaurentPoly2._raw({k: c * other for k, c in self._t.items()})
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return _ZERO
        if len(a) == 1:
            (ka, ca), = a.items()
            return LaurentPoly2._raw({k + ka: c * ca for k, c in b.items()})
        if len(b) == 1:
            (kb, cb), = b.items()
            return LaurentPoly2._raw({k + kb: c * cb for k, c in a.items()})
        out: dict[int, int] = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                k = ka + kb
                v = out.get(k, 0) + ca * cb
                if v:
                    out[k] = v
                else:
                    del out[k]
        return LaurentPoly2._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly2":
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = LaurentPoly2.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, dex: int, dey: int) -> "LaurentPoly2":
        """Multiply by the monomial x^dex * y^dey."""
        if not (dex or dey) or not self._t:
            return self
        dk = _pack(dex, dey)
        return LaurentPoly2._raw({k + dk: c for k, c in self._t.items()})

    def min_exponents(self) -> tuple[int, int]:
        """Componentwise minimum of (ex, ey) over the support; zero poly raises."""
        if not self._t:
            raise ValueError("undefined exponent: zero polynomial has no support")
        mex = mey = None
        for k in self._t:
            ex, ey = _unpack(k)
            mex = ex if mex is None else min(mex, ex)
            mey = ey if mey is None else min(mey, ey)
        return mex, mey  # type: ignore[return-value]

    def render(self) -> str:
        if not self._t:
            return "0"
        parts: list[str] = []
        first = True
        for key in sorted(self._t, key=_render_key):
            c = self._t[key]
            ex, ey = _unpack(key)
            factors = []
            if ex:
                factors.append("x" if ex == 1 else f"x^{ex}")
            if ey:
                factors.append("y" if ey == 1 else f"y^{ey}")
            mono = "*".join(factors)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if first:
                parts.append(f"-{body}" if c < 0 else body)
                first = False
            else:
                parts.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"LaurentPoly2({self.render()!r})"


def _render_key(key: int) -> tuple[int, int]:
    ex, ey = _unpack(key)
    return ex + ey, ex


_ZERO = LaurentPoly2.zero()

ZERO = _ZERO
ONE = LaurentPoly2.one()
X = LaurentPoly2.monomial(1, 1, 0)
Y = LaurentPoly2.monomial(1, 0, 1)
X_INV = LaurentPoly2.monomial(1, -1, 0)
Y_INV = LaurentPoly2.monomial(1, 0, -1)


def lowest_x_exponent(p: LaurentPoly2) -> int:
    """Smallest x-exponent in the support; the zero polynomial raises."""
    if p.is_zero():
        raise ValueError("undefined exponent: zero polynomial has no support")
    return min(_unpack(k)[0] for k in p._t)


def normalize_x(p: LaurentPoly2) -> LaurentPoly2:
    """Shift by a power of x so the lowest x-exponent becomes 0 (zero maps to zero)."""
    if p.is_zero():
        return p
    return p.shifted(-lowest_x_exponent(p), 0)


def eval_x1(p: LaurentPoly2) -> LaurentPoly2:
    """Substitute x = 1, collapsing the support onto the y-axis."""
    out: dict[int, int] = {}
    for k, c in p._t.items():
        _, ey = _unpack(k)
        key = _pack(0, ey)
        v = out.get(key, 0) + c
        if v:
            out[key] = v
        else:
            del out[key]
    return LaurentPoly2._raw(out)


def substitute_y_inverse(p: LaurentPoly2) -> LaurentPoly2:
    """Substitute y -> y^-1, an involution on the ring."""
    out: dict[int, int] = {}
    for k, c in p._t.items():
        ex, ey = _unpack(k)
        out[_pack(ex, -ey)] = c
    return LaurentPoly2._raw(out)


class ConwayPoly:
    """A polynomial in z with coefficients in Z[y^(+-1)].

    Stored as the coefficient tuple (c_0, c_1, ...) with trailing zeros
    trimmed; `reconstruct` substitutes z = 1 - x back and returns the
    original x-normalized polynomial exactly.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[LaurentPoly2] = ()):
        cs = list(coeffs)
        for c in cs:
            if any(ex for (ex, _ey) in c.terms()):
                raise ValueError("conway coefficients must be polynomials in y only")
        while cs and cs[-1].is_zero():
            cs.pop()
        self._coeffs = tuple(cs)

    @property
    def coeffs(self) -> tuple[LaurentPoly2, ...]:
        return self._coeffs

    def coeff(self, k: int) -> LaurentPoly2:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return ZERO

    def degree(self) -> int:
        """Degree in z, or -1 for the zero polynomial."""
        return len(self._coeffs) - 1

    def is_zero(self) -> bool:
        return not self._coeffs

    def reconstruct(self) -> LaurentPoly2:
        """Sum of coeff(k) * (1 - x)^k as an element of Z[x, y^(+-1)]."""
        one_minus_x = ONE - X
        acc = ZERO
        power = ONE
        for c in self._coeffs:
            acc = acc + c * power
            power = power * one_minus_x
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ConwayPoly):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __neg__(self) -> "ConwayPoly":
        return ConwayPoly(-c for c in self._coeffs)

    def __add__(self, other: "ConwayPoly") -> "ConwayPoly":
        if not isinstance(other, ConwayPoly):
            return NotImplemented
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for k, c in enumerate(b):
            merged[k] = merged[k] + c
        return ConwayPoly(merged)

    def __sub__(self, other: "ConwayPoly") -> "ConwayPoly":
        if not isinstance(other, ConwayPoly):
            return NotImplemented
        return self + (-other)

    def render(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self._coeffs):
            if c.is_zero():
                continue
            if k == 0:
                parts.append(f"({c.render()})")
            elif k == 1:
                parts.append(f"({c.render()})*z")
            else:
                parts.append(f"({c.render()})*z^{k}")
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"ConwayPoly({self.render()!r})"


def expand_conway(p: LaurentPoly2) -> ConwayPoly:
    """Rewrite an x-normalized polynomial as sum of c_k * z^k with z = 1 - x.

    Requires all x-exponents nonnegative (run `normalize_x` first);
    substituting x = 1 - z term by term keeps everything exact.
    """
    coeffs: list[dict[int, int]] = []
    for k, c in p._t.items():
        ex, ey = _unpack(k)
        if ex < 0:
            raise ValueError("not x-normalized: negative x-exponent in conway expansion")
        while len(coeffs) <= ex:
            coeffs.append({})
        ykey = _pack(0, ey)
        # x^ex = (1 - z)^ex contributes comb(ex, j) * (-1)^j at z^j
        for j in range(ex + 1):
            add = c * comb(ex, j) * (-1 if j & 1 else 1)
            bucket = coeffs[j]
            v = bucket.get(ykey, 0) + add
            if v:
                bucket[ykey] = v
            else:
                bucket.pop(ykey, None)
    return ConwayPoly(LaurentPoly2._raw(b) for b in coeffs)


@dataclass(frozen=True)
class PolyMatrix:
    """A square matrix over the Laurent ring (immutable rows of rows)."""

    rows: tuple[tuple[LaurentPoly2, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.rows)
        for row in self.rows:
            if len(row) != n:
                raise ValueError(f"matrix is not square: {n} rows, a row of length {len(row)}")

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable["LaurentPoly2 | int"]]) -> "PolyMatrix":
        built = tuple(
            tuple(e if isinstance(e, LaurentPoly2) else LaurentPoly2.const(e) for e in row)
            for row in rows
        )
        return cls(built)

    @classmethod
    def identity(cls, n: int) -> "PolyMatrix":
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def diagonal(cls, entries: Iterable[LaurentPoly2]) -> "PolyMatrix":
        es = list(entries)
        n = len(es)
        return cls(tuple(tuple(es[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def block_diag(cls, *mats: "PolyMatrix") -> "PolyMatrix":
        n = sum(m.n for m in mats)
        rows = [[ZERO] * n for _ in range(n)]
        off = 0
        for m in mats:
            for i, row in enumerate(m.rows):
                for j, e in enumerate(row):
                    rows[off + i][off + j] = e
            off += m.n
        return cls(tuple(tuple(r) for r in rows))

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.n != other.n:
            raise ValueError("matrix size mismatch")
        return PolyMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.n != other.n:
            raise ValueError("matrix size mismatch")
        n = self.n
        cols = list(zip(*other.rows))
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = ZERO
                for a, b in zip(self.rows[i], cols[j]):
                    if a._t and b._t:
                        acc = acc + a * b
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(tuple(out))


def _exact_div(num: LaurentPoly2, den: LaurentPoly2) -> LaurentPoly2:
    """Exact division in the Laurent ring; raises if the quotient does not exist."""
    dt = den._t
    if not dt:
        raise ZeroDivisionError("division by the zero polynomial")
    nt = num._t
    if not nt:
        return ZERO
    if len(dt) == 1:
        (dk, dc), = dt.items()
        out: dict[int, int] = {}
        for k, c in nt.items():
            q, r = divmod(c, dc)
            if r:
                raise ArithmeticError("non-exact division")
            out[k - dk] = q
        return LaurentPoly2._raw(out)
    dk = max(dt)
    dc = dt[dk]
    rem = dict(nt)
    quo: dict[int, int] = {}
    limit = (len(nt) + 1) * (len(dt) + 1) + 64
    steps = 0
    while rem:
        steps += 1
        if steps > limit:
            raise ArithmeticError("non-exact division")
        lk = max(rem)
        qc, r = divmod(rem[lk], dc)
        if r:
            raise ArithmeticError("non-exact division")
        qk = lk - dk
        quo[qk] = qc
        for k, c in dt.items():
            kk = k + qk
            v = rem.get(kk, 0) - c * qc
            if v:
                rem[kk] = v
            else:
                rem.pop(kk, None)
    return LaurentPoly2._raw(quo)


def det(matrix: PolyMatrix) -> LaurentPoly2:
    """Exact determinant by fraction-free elimination.

    Each row is first scaled by a monomial so its entries have
    nonnegative exponents (the collected monomial is divided back out
    at the end), then a Bareiss-style one-step elimination with full
    pivoting runs in the polynomial subring, where every division by
    the previous pivot is exact.  Pivots are chosen to keep fill-in
    low, which matters because the matrices this package builds carry
    at most a few nonzero entries per column.
    """
    n = matrix.n
    if n == 0:
        return ONE
    rows = [list(r) for r in matrix.rows]
    shift_ex = shift_ey = 0
    for i in range(n):
        mex = mey = None
        for e in rows[i]:
            if not e._t:
                continue
            ex, ey = e.min_exponents()
            mex = ex if mex is None else min(mex, ex)
            mey = ey if mey is None else min(mey, ey)
        if mex is None:
            return ZERO
        if mex or mey:
            rows[i] = [e.shifted(-mex, -mey) for e in rows[i]]
            shift_ex += mex
            shift_ey += mey
    sign = 1
    prev = ONE
    for k in range(n - 1):
        row_nnz = [0] * n
        col_nnz = [0] * n
        for i in range(k, n):
            for j in range(k, n):
                if rows[i][j]._t:
                    row_nnz[i] += 1
                    col_nnz[j] += 1
        best = None
        for i in range(k, n):
            if row_nnz[i] == 0:
                return ZERO
            for j in range(k, n):
                e = rows[i][j]
                if e._t:
                    score = ((row_nnz[i] - 1) * (col_nnz[j] - 1), len(e._t))
                    if best is None or score < best[0]:
                        best = (score, i, j)
        if best is None:
            return ZERO
        _, pi, pj = best
        if pi != k:
            rows[k], rows[pi] = rows[pi], rows[k]
            sign = -sign
        if pj != k:
            for r in rows:
                r[k], r[pj] = r[pj], r[k]
            sign = -sign
        piv = rows[k][k]
        row_k = rows[k]
        for i in range(k + 1, n):
            row_i = rows[i]
            aik = row_i[k]
            if aik._t:
                for j in range(k + 1, n):
                    num = piv * row_i[j] - aik * row_k[j]
                    row_i[j] = _exact_div(num, prev) if num._t else ZERO
                row_i[k] = ZERO
            else:
                for j in range(k + 1, n):
                    a = row_i[j]
                    if a._t:
                        row_i[j] = _exact_div(piv * a, prev)
        prev = piv
    result = rows[n - 1][n - 1]
    if sign < 0:
        result = -result
    if shift_ex or shift_ey:
        result = result.shifted(shift_ex, shift_ey)
    return result


def det_cofactor(matrix: PolyMatrix) -> LaurentPoly2:
    """Exact determinant by Laplace expansion, memoized over row subsets.

    Independent of `det` on purpose: the two must agree, and property
    tests compare them.  Cost grows like 2^n, so keep n small (<= 12).
    """
    n = matrix.n
    if n == 0:
        return ONE
    if n > 12:
        raise ValueError("cofactor determinant is limited to matrices of side <= 12")
    rows = matrix.rows
    memo: dict[tuple[int, ...], LaurentPoly2] = {}

    def rec(active: tuple[int, ...]) -> LaurentPoly2:
        if not active:
            return ONE
        got = memo.get(active)
        if got is not None:
            return got
        col = n - len(active)
        acc = ZERO
        for pos, r in enumerate(active):
            e = rows[r][col]
            if not e._t:
                continue
            sub = rec(active[:pos] + active[pos + 1 :])
            term = e * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[active] = acc
        return acc

    return rec(tuple(range(n)))
