"""Exact arithmetic kernel.

Arbitrary-precision rationals, sparse multivariate polynomials in the four
indeterminates q, l, g, h (l is the forest activity usually written lambda),
rational matrices with fraction-free elimination, and certified isolation of
real roots of univariate polynomials.

Everything in this module is exact.  There is no floating point anywhere, and
every returned sign or interval is backed by integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

try:
    from gmpy2 import mpq as Rational, mpz as _int
except ImportError:  # pragma: no cover - gmpy2 is a hard dependency, but the
    from fractions import Fraction as Rational  # stdlib type is a drop-in.
    _int = int

__all__ = [
    "Rational",
    "rat",
    "parse_rational",
    "format_rational",
    "INDETERMINATES",
    "MultiPoly",
    "poly_eval",
    "parse_poly",
    "RationalMatrix",
    "bareiss_det",
    "invert",
    "psd_certificate",
    "IsolatingInterval",
    "sturm_chain",
    "sturm_count",
    "count_real_roots",
    "isolate_real_roots",
    "isolate_negative_region",
    "descartes_no_roots_above",
]

INDETERMINATES = ("q", "l", "g", "h")
_NVARS = 4
_ZERO_EXP = (0, 0, 0, 0)

_R0 = Rational(0)
_R1 = Rational(1)


def rat(num, den=1) -> Rational:
    """Exact rational from integers, strings, or another rational."""
    if den == 1:
        if isinstance(num, str):
            return parse_rational(num)
        return Rational(num)
    return Rational(num) / Rational(den)


def parse_rational(text: str) -> Rational:
    """Parse "3/4", "-2" or "7" into an exact rational."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        d = int(den)
        if d == 0:
            raise ValueError(f"zero denominator in rational {text!r}")
        return Rational(int(num), d)
    return Rational(int(text))


def format_rational(x) -> str:
    return str(Rational(x))


# ---------------------------------------------------------------------------
# Sparse multivariate polynomials
# ---------------------------------------------------------------------------


class MultiPoly:
    """Sparse polynomial over exact rationals in the variables q, l, g, h.

    Terms are stored as a dict mapping exponent 4-tuples to nonzero rational
    coefficients.  Instances are treated as immutable; all arithmetic returns
    new polynomials.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for exp, coeff in terms.items():
                c = Rational(coeff)
                if c != 0:
                    if len(exp) != _NVARS or any(e < 0 for e in exp):
                        raise ValueError(f"bad exponent tuple {exp!r}")
                    cleaned[tuple(exp)] = c
        self.terms = cleaned

    # -- constructors

    @staticmethod
    def zero() -> "MultiPoly":
        return MultiPoly()

    @staticmethod
    def const(c) -> "MultiPoly":
        return MultiPoly({_ZERO_EXP: Rational(c)})

    @staticmethod
    def variable(name: str) -> "MultiPoly":
        i = INDETERMINATES.index(name)
        exp = [0] * _NVARS
        exp[i] = 1
        return MultiPoly({tuple(exp): _R1})

    @staticmethod
    def monomial(coeff, q=0, l=0, g=0, h=0) -> "MultiPoly":
        return MultiPoly({(q, l, g, h): Rational(coeff)})

    # -- basic queries

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ZERO_EXP in self.terms)

    def constant_value(self) -> Rational:
        if not self.terms:
            return _R0
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms[_ZERO_EXP]

    def variables(self) -> tuple[str, ...]:
        used = [False] * _NVARS
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    used[i] = True
        return tuple(v for i, v in enumerate(INDETERMINATES) if used[i])

    def degree(self, var: str) -> int:
        """Largest exponent of var; -1 for the zero polynomial."""
        i = INDETERMINATES.index(var)
        if not self.terms:
            return -1
        return max(exp[i] for exp in self.terms)

    def min_degree(self, var: str) -> int:
        i = INDETERMINATES.index(var)
        if not self.terms:
            raise ValueError("zero polynomial has no minimal degree")
        return min(exp[i] for exp in self.terms)

    def coefficient(self, var: str, power: int) -> "MultiPoly":
        """Coefficient of var**power, as a polynomial in the other variables."""
        i = INDETERMINATES.index(var)
        out = {}
        for exp, c in self.terms.items():
            if exp[i] == power:
                reduced = list(exp)
                reduced[i] = 0
                out[tuple(reduced)] = c
        return MultiPoly(out)

    def coefficient_of(self, exp: tuple[int, int, int, int]) -> Rational:
        return self.terms.get(tuple(exp), _R0)

    def dense_in(self, var: str) -> list[Rational]:
        """Coefficient list [c0, c1, ...] when univariate in var (or constant)."""
        i = INDETERMINATES.index(var)
        if not self.terms:
            return [_R0]
        coeffs = [_R0] * (self.degree(var) + 1)
        for exp, c in self.terms.items():
            if any(e and j != i for j, e in enumerate(exp)):
                raise ValueError(f"polynomial is not univariate in {var}")
            coeffs[exp[i]] = c
        return coeffs

    @staticmethod
    def from_dense(var: str, coeffs: Sequence) -> "MultiPoly":
        i = INDETERMINATES.index(var)
        terms = {}
        for k, c in enumerate(coeffs):
            c = Rational(c)
            if c != 0:
                exp = [0] * _NVARS
                exp[i] = k
                terms[tuple(exp)] = c
        return MultiPoly(terms)

    def _single_var(self):
        """Index of the unique variable appearing, or None for constants/mixed."""
        found = -1
        for exp in self.terms:
            for i, e in enumerate(exp):
                if e:
                    if found == -1:
                        found = i
                    elif found != i:
                        return None
        return found if found != -1 else -2  # -2: constant

    # -- arithmetic

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for exp, c in other.terms.items():
            s = out.get(exp, _R0) + c
            if s == 0:
                out.pop(exp, None)
            else:
                out[exp] = s
        res = MultiPoly.__new__(MultiPoly)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = MultiPoly.__new__(MultiPoly)
        res.terms = {exp: -c for exp, c in self.terms.items()}
        return res

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.terms or not other.terms:
            return MultiPoly()
        # Dense convolution fast path when both sides live in one variable.
        va, vb = self._single_var(), other._single_var()
        if va is not None and vb is not None and (va == vb or va == -2 or vb == -2):
            var = va if va >= 0 else vb
            if var >= 0:
                return self._mul_dense(other, var)
        out = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                exp = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
                s = out.get(exp)
                out[exp] = ca * cb if s is None else s + ca * cb
        res = MultiPoly.__new__(MultiPoly)
        res.terms = {e: c for e, c in out.items() if c != 0}
        return res

    __rmul__ = __mul__

    def _mul_dense(self, other, var_index):
        da = max(e[var_index] for e in self.terms)
        db = max(e[var_index] for e in other.terms)
        a = [_R0] * (da + 1)
        b = [_R0] * (db + 1)
        for e, c in self.terms.items():
            a[e[var_index]] = c
        for e, c in other.terms.items():
            b[e[var_index]] = c
        out = [_R0] * (da + db + 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        terms = {}
        for k, c in enumerate(out):
            if c != 0:
                exp = [0] * _NVARS
                exp[var_index] = k
                terms[tuple(exp)] = c
        res = MultiPoly.__new__(MultiPoly)
        res.terms = terms
        return res

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    # -- evaluation and formatting

    def eval(self, point: dict) -> Rational:
        """Exact value at a point assigning a rational to every variable used."""
        for v in self.variables():
            if v not in point:
                raise ValueError(f"missing assignment for indeterminate {v!r}")
        vals = [Rational(point.get(v, 0)) for v in INDETERMINATES]
        total = _R0
        for exp, c in self.terms.items():
            term = c
            for i, e in enumerate(exp):
                if e:
                    term *= vals[i] ** e
            total += term
        return total

    def subs(self, point: dict) -> "MultiPoly":
        """Substitute rationals for a subset of the variables."""
        idx = {INDETERMINATES.index(v): Rational(x) for v, x in point.items()}
        out = MultiPoly()
        for exp, c in self.terms.items():
            coeff = c
            reduced = list(exp)
            for i, x in idx.items():
                if exp[i]:
                    coeff *= x ** exp[i]
                    reduced[i] = 0
            out += MultiPoly({tuple(reduced): coeff})
        return out

    def to_string(self) -> str:
        """Canonical text form: coeff*q^a*l^b*g^c*h^d terms in lex exponent order."""
        if not self.terms:
            return "0"
        parts = []
        for exp in sorted(self.terms):
            c = self.terms[exp]
            vars_part = "*".join(f"{v}^{e}" for v, e in zip(INDETERMINATES, exp))
            parts.append(f"{format_rational(c)}*{vars_part}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.to_string()})"


def _coerce(x):
    if isinstance(x, MultiPoly):
        return x
    if isinstance(x, (int, Rational)) or type(x).__name__ in ("mpq", "mpz", "Fraction"):
        return MultiPoly.const(x)
    return NotImplemented


def poly_eval(p: MultiPoly, point: dict) -> Rational:
    """Exact evaluation; errors name any unassigned indeterminate."""
    return p.eval(point)


def parse_poly(text: str) -> MultiPoly:
    """Parse the canonical text form (lenient: exponents and vars may be omitted)."""
    text = text.strip()
    if text == "0":
        return MultiPoly()
    total = MultiPoly()
    for raw in text.split("+"):
        raw = raw.strip()
        if not raw:
            continue
        coeff = _R1
        exp = [0] * _NVARS
        for factor in raw.split("*"):
            factor = factor.strip()
            if not factor:
                continue
            if factor[0] in "qlgh" and (len(factor) == 1 or factor[1] == "^"):
                i = INDETERMINATES.index(factor[0])
                exp[i] += int(factor[2:]) if "^" in factor else 1
            else:
                coeff *= parse_rational(factor)
        total += MultiPoly({tuple(exp): coeff})
    return total


# ---------------------------------------------------------------------------
# Rational matrices and fraction-free elimination
# ---------------------------------------------------------------------------


class RationalMatrix:
    """Dense matrix of exact rationals."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable]):
        self.data = [[Rational(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.data else 0
        if any(len(row) != self.cols for row in self.data):
            raise ValueError("ragged matrix")

    @staticmethod
    def identity(n: int) -> "RationalMatrix":
        return RationalMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def ones(rows: int, cols: int | None = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        return RationalMatrix([[1] * cols for _ in range(rows)])

    @staticmethod
    def zeros(rows: int, cols: int | None = None) -> "RationalMatrix":
        cols = rows if cols is None else cols
        return RationalMatrix([[0] * cols for _ in range(rows)])

    def __getitem__(self, key):
        i, j = key
        return self.data[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __add__(self, other):
        self._shape_match(other)
        return RationalMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def __sub__(self, other):
        self._shape_match(other)
        return RationalMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)]
        )

    def _shape_match(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError("shape mismatch")
            bt = list(zip(*other.data))
            return RationalMatrix(
                [[sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.data]
            )
        c = Rational(other)
        return RationalMatrix([[a * c for a in row] for row in self.data])

    def __rmul__(self, other):
        return self * other

    def __neg__(self):
        return self * Rational(-1)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(list(zip(*self.data)))

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def submatrix(self, keep_rows: Sequence[int], keep_cols: Sequence[int]) -> "RationalMatrix":
        return RationalMatrix([[self.data[i][j] for j in keep_cols] for i in keep_rows])

    def apply(self, vec: Sequence) -> list[Rational]:
        if len(vec) != self.cols:
            raise ValueError("shape mismatch")
        return [sum(a * Rational(x) for a, x in zip(row, vec)) for row in self.data]

    def to_lists(self) -> list[list[str]]:
        return [[format_rational(x) for x in row] for row in self.data]

    def __repr__(self):
        return f"RationalMatrix({self.to_lists()})"


def _cleared_int_rows(m: RationalMatrix):
    """Scale each row to integers; returns (int rows, product of row scales)."""
    rows = []
    total = 1
    for row in m.data:
        scale = 1
        for x in row:
            d = int(x.denominator)
            scale = scale * d // _gcd(scale, d)
        rows.append([int(x.numerator) * (scale // int(x.denominator)) for x in row])
        total *= scale
    return rows, total


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def bareiss_det(m: RationalMatrix) -> Rational:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return _R1
    a, scale = _cleared_int_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return _R0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Rational(sign * a[n - 1][n - 1], scale)


def invert(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse via fraction-free forward elimination and back substitution."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    # Row-scale to integers and solve (D*M) X = D, so X = M^-1.
    aug = []
    for i in range(n):
        scale = 1
        row = m.data[i]
        for x in row:
            d = int(x.denominator)
            scale = scale * d // _gcd(scale, d)
        left = [int(x.numerator) * (scale // int(x.denominator)) for x in row]
        right = [scale if j == i else 0 for j in range(n)]
        aug.append(left + right)
    width = 2 * n
    prev = 1
    for k in range(n - 1):
        if aug[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if aug[i][k] != 0), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            aug[k], aug[pivot] = aug[pivot], aug[k]
        akk = aug[k][k]
        for i in range(k + 1, n):
            aik = aug[i][k]
            row_i, row_k = aug[i], aug[k]
            for j in range(k + 1, width):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    if aug[n - 1][n - 1] == 0:
        raise ValueError("matrix is singular")
    # Back substitution in exact rationals.
    inv_rows: list[list[Rational]] = [[_R0] * n for _ in range(n)]
    for col in range(n):
        x = [_R0] * n
        for i in range(n - 1, -1, -1):
            s = Rational(aug[i][n + col])
            for j in range(i + 1, n):
                s -= Rational(aug[i][j]) * x[j]
            x[i] = s / Rational(aug[i][i])
        for i in range(n):
            inv_rows[i][col] = x[i]
    return RationalMatrix(inv_rows)


def psd_certificate(m: RationalMatrix):
    """Exact positive-semidefiniteness test for a symmetric rational matrix.

    Returns (True, None) when PSD, else (False, witness) with a rational vector
    x such that x^T M x < 0.  Uses symmetric elimination with diagonal
    pivoting; works for singular (rank-deficient) matrices.
    """
    if not m.is_symmetric():
        raise ValueError("psd_certificate requires a symmetric matrix")
    n = m.rows
    a = [[Rational(x) for x in row] for row in m.data]
    # basis[i] expresses the current coordinate i in the original coordinates.
    basis = [[_R1 if i == j else _R0 for j in range(n)] for i in range(n)]
    active = list(range(n))

    def witness_from(vec_coeffs):
        w = [_R0] * n
        for i, c in vec_coeffs:
            for j in range(n):
                w[j] += c * basis[i][j]
        value = _quadratic_form(m, w)
        assert value < 0
        return w

    while active:
        neg = next((i for i in active if a[i][i] < 0), None)
        if neg is not None:
            return False, witness_from([(neg, _R1)])
        pivot = next((i for i in active if a[i][i] > 0), None)
        if pivot is None:
            # All remaining diagonal entries vanish; any nonzero off-diagonal
            # entry makes the form indefinite.
            for i in active:
                for j in active:
                    if j != i and a[i][j] != 0:
                        s = _R1 if a[i][j] > 0 else Rational(-1)
                        return False, witness_from([(i, _R1), (j, -s)])
            return True, None
        d = a[pivot][pivot]
        active.remove(pivot)
        coeffs = {i: a[i][pivot] / d for i in active}
        for i in active:
            ci = coeffs[i]
            if ci == 0:
                continue
            for j in active:
                a[i][j] -= ci * a[pivot][j]
            for j in range(n):
                basis[i][j] -= ci * basis[pivot][j]
        for i in active:
            a[pivot][i] = a[i][pivot] = _R0
    return True, None


def _quadratic_form(m: RationalMatrix, x: Sequence) -> Rational:
    mx = m.apply(x)
    return sum(Rational(a) * b for a, b in zip(x, mx))


# ---------------------------------------------------------------------------
# Dense integer polynomials (internal helpers for root isolation)
# ---------------------------------------------------------------------------


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _int_clear(coeffs: Sequence[Rational]) -> list[int]:
    """Scale a rational coefficient list by a positive rational to integers."""
    lcm = 1
    for c in coeffs:
        d = int(Rational(c).denominator)
        lcm = lcm * d // _gcd(lcm, d)
    out = [int(Rational(c).numerator) * (lcm // int(Rational(c).denominator)) for c in coeffs]
    return _trim(out)


def _content(c: Sequence[int]) -> int:
    g = 0
    for x in c:
        g = _gcd(g, x)
        if g == 1:
            return 1
    return g or 1


def _primitive(c: Sequence[int]) -> list[int]:
    c = _trim(list(c))
    if not c:
        return []
    g = _content(c)
    return [x // g for x in c]


def _derivative(c: Sequence[int]) -> list[int]:
    return _trim([i * c[i] for i in range(1, len(c))])


def _eval_scaled(c: Sequence[int], num: int, den: int) -> int:
    """den**deg * p(num/den); same sign as p(num/den) for den > 0."""
    if not c:
        return 0
    acc = c[-1]
    dpow = 1
    for k in range(len(c) - 2, -1, -1):
        dpow *= den
        acc = acc * num + c[k] * dpow
    return acc


def _eval_sign(c: Sequence[int], x: Rational) -> int:
    x = Rational(x)
    v = _eval_scaled(c, int(x.numerator), int(x.denominator))
    return (v > 0) - (v < 0)


def _pseudo_rem(f: list[int], g: list[int]) -> list[int]:
    """Remainder of f scaled by positive powers of |lc(g)|.

    The positive scaling leaves the sign sequence of a Sturm chain intact.
    """
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    scale = abs(lc)
    while f and len(f) - 1 >= dg:
        f = [x * scale for x in f]
        factor = f[-1] // lc
        shift = (len(f) - 1) - dg
        for i in range(dg + 1):
            f[shift + i] -= factor * g[i]
        f = _trim(f)
    return f


def _poly_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive gcd via Euclid with pseudo-remainders."""
    a, b = _primitive(a), _primitive(b)
    while b:
        r = _primitive(_pseudo_rem(a, b))
        a, b = b, r
    if a and a[-1] < 0:
        a = [-x for x in a]
    return a


def sturm_chain(coeffs: Sequence) -> list[list[int]]:
    """Sturm chain of a univariate polynomial given as a coefficient list."""
    p0 = _int_clear([Rational(c) for c in coeffs])
    if not p0:
        raise ValueError("zero polynomial has no Sturm chain")
    chain = [_primitive(p0)]
    d = _derivative(chain[0])
    if d:
        chain.append(_primitive(d))
        while True:
            r = _pseudo_rem(chain[-2], chain[-1])
            if not r:
                break
            chain.append([-x for x in _primitive(r)])
            if len(chain[-1]) == 1:
                break
    return chain


def _variations(signs: Iterable[int]) -> int:
    prev = 0
    count = 0
    for s in signs:
        if s == 0:
            continue
        if prev and s != prev:
            count += 1
        prev = s
    return count


def _chain_variations_at(chain, x: Rational) -> int:
    return _variations(_eval_sign(p, x) for p in chain)


def _chain_variations_inf(chain, positive: bool) -> int:
    signs = []
    for p in chain:
        s = (p[-1] > 0) - (p[-1] < 0)
        if not positive and (len(p) - 1) % 2 == 1:
            s = -s
        signs.append(s)
    return _variations(signs)


def sturm_count(chain, a: Rational, b: Rational) -> int:
    """Number of distinct real roots in (a, b] (endpoints must not be roots of p)."""
    return _chain_variations_at(chain, a) - _chain_variations_at(chain, b)


def count_real_roots(coeffs: Sequence) -> int:
    """Total number of distinct real roots."""
    chain = sturm_chain(coeffs)
    return _chain_variations_inf(chain, positive=False) - _chain_variations_inf(
        chain, positive=True
    )


# -- Descartes / interval sign variation machinery


def _taylor_shift(c: list[int], a: int) -> list[int]:
    """Coefficients of p(x + a) by repeated synthetic division."""
    out = list(c)
    n = len(out)
    if a == 0:
        return out
    for k in range(n - 1):
        for i in range(n - 2, k - 1, -1):
            out[i] += a * out[i + 1]
    return out


def _interval_variations(c: list[int], a: Rational, b: Rational) -> int:
    """Descartes sign variations for the open interval (a, b).

    The count is an upper bound on the number of roots in (a, b) with the same
    parity; 0 certifies no roots and 1 certifies exactly one simple root.
    """
    a, b = Rational(a), Rational(b)
    an, ad = int(a.numerator), int(a.denominator)
    bn, bd = int(b.numerator), int(b.denominator)
    d = len(c) - 1
    # p1(x) = p((an + (bn*ad - an*bd)/ (ad*bd) * x)/1) scaled to integers:
    # substitute x -> (an*bd + (bn*ad - an*bd) x) / (ad*bd).
    alpha = an * bd
    beta = bn * ad - an * bd
    den = ad * bd
    # q(x) = den**d * p((alpha + beta*x)/den) via Horner.
    q = [c[-1]]
    dpow = 1
    for k in range(d - 1, -1, -1):
        # q <- q*(alpha + beta*x) + c[k]*den**(d-k)
        dpow *= den
        new = [0] * (len(q) + 1)
        for i, qc in enumerate(q):
            new[i] += qc * alpha
            new[i + 1] += qc * beta
        new[0] += c[k] * dpow
        q = new
    q = _trim(q)
    if not q:
        return 0
    # Roots of q in (0, 1) <-> roots of p in (a, b).  Count variations of
    # (1+x)^deg * q(1/(1+x)).
    rev = q[::-1]
    shifted = _taylor_shift(rev, 1)
    return _variations((x > 0) - (x < 0) for x in shifted)


def descartes_no_roots_above(coeffs: Sequence, a: Rational) -> bool:
    """Certify that a univariate polynomial has no real roots in (a, infinity)."""
    c = _int_clear([Rational(x) for x in coeffs])
    if not c:
        raise ValueError("zero polynomial")
    a = Rational(a)
    an, ad = int(a.numerator), int(a.denominator)
    d = len(c) - 1
    # den**d * p(a + x) has the same roots shifted; integer Taylor shift of
    # the scaled polynomial p_s(x) = ad**d p(x/ad) at an.
    scaled = [c[i] * ad ** (d - i) for i in range(d + 1)]
    shifted = _taylor_shift(scaled, an)
    return _variations((x > 0) - (x < 0) for x in shifted) == 0


# -- root isolation


@dataclass(frozen=True)
class IsolatingInterval:
    """Open interval (low, high) containing exactly `multiplicity` roots
    (counted with multiplicity) of the isolated polynomial."""

    low: Rational
    high: Rational
    multiplicity: int = 1

    def __post_init__(self):
        if not self.low < self.high:
            raise ValueError("isolating interval needs low < high")
        if self.multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    def width(self) -> Rational:
        return self.high - self.low

    def contains(self, x) -> bool:
        return self.low < Rational(x) < self.high


_STURM_DEGREE_LIMIT = 24


def isolate_real_roots(
    coeffs: Sequence,
    domain: tuple,
    width,
    engine: str = "auto",
) -> list[IsolatingInterval]:
    """Isolate the distinct real roots of a univariate polynomial in a domain.

    Returns disjoint intervals of width < `width`, each containing exactly one
    distinct root whose multiplicity is reported.  Interval endpoints are
    never roots.  `engine` selects the certification method: "sturm" builds a
    Sturm chain (exhaustive but with heavy coefficient growth at high degree),
    "descartes" certifies through exact interval sign variations and needs no
    chain; "auto" uses Sturm up to degree 24 and Descartes beyond.  Repeated
    roots route through the Sturm machinery either way.
    """
    lo, hi = Rational(domain[0]), Rational(domain[1])
    if not lo < hi:
        raise ValueError("empty domain")
    width = Rational(width)
    if width <= 0:
        raise ValueError("width must be positive")
    c = _int_clear([Rational(x) for x in coeffs])
    if not c:
        raise ValueError("zero polynomial")
    if len(c) == 1:
        return []
    if engine == "auto":
        engine = "sturm" if len(c) - 1 <= _STURM_DEGREE_LIMIT else "descartes"

    # Nudge domain endpoints off roots.
    step = width / 4
    while _eval_sign(c, lo) == 0:
        lo += step
        step /= 2
        if lo >= hi:
            return []
    step = width / 4
    while _eval_sign(c, hi) == 0:
        hi -= step
        step /= 2
        if hi <= lo:
            return []

    if engine == "sturm":
        chain = sturm_chain([Rational(x) for x in c])
        # The chain bottoms out at gcd(p, p'); non-constant means repeated roots.
        gcd = chain[-1] if len(chain[-1]) > 1 else None
        raw = _isolate_sturm(c, chain, lo, hi, width)
        out = []
        for a, b in raw:
            mult = 1 if gcd is None else _multiplicity(c, gcd, a, b)
            out.append(IsolatingInterval(a, b, mult))
        return out
    if engine == "descartes":
        try:
            raw = _isolate_descartes(c, lo, hi, width)
            return [IsolatingInterval(a, b, 1) for a, b in raw]
        except _RepeatedRootSuspicion:
            if len(c) - 1 > 4 * _STURM_DEGREE_LIMIT:
                raise ValueError(
                    "roots failed to separate; certified isolation at this "
                    "degree needs a square-free polynomial"
                ) from None
            return isolate_real_roots(
                [Rational(x) for x in c], (lo, hi), width, engine="sturm"
            )
    raise ValueError(f"unknown isolation engine {engine!r}")


def _multiplicity(c, gcd, a, b) -> int:
    """Multiplicity of the single distinct root of c in (a, b)."""
    mult = 1
    g = gcd
    while len(g) > 1:
        chain = sturm_chain([Rational(x) for x in g])
        # Endpoints are not roots of c, hence not of g either.
        if sturm_count(chain, a, b) == 0:
            break
        mult += 1
        deriv = _derivative(g)
        g = _poly_gcd(g, deriv) if deriv else []
    return mult


def _isolate_sturm(c, chain, lo, hi, width):
    out = []
    stack = [(lo, hi, None)]
    while stack:
        a, b, count = stack.pop()
        if count is None:
            count = sturm_count(chain, a, b)
        if count == 0:
            continue
        if count == 1 and b - a < width:
            out.append((a, b))
            continue
        mid = (a + b) / 2
        bump = (b - a) / 16
        while _eval_sign(c, mid) == 0:
            mid += bump
            bump /= 3
        left = sturm_count(chain, a, mid)
        if left:
            stack.append((a, mid, left))
        if count - left:
            stack.append((mid, b, count - left))
    out.sort()
    return out


class _RepeatedRootSuspicion(Exception):
    pass


def _isolate_descartes(c, lo, hi, width):
    out = []
    min_width = width / (1 << 16)
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        v = _interval_variations(c, a, b)
        if v == 0:
            continue
        if v == 1:
            # Exactly one simple root: refine by cheap exact sign bisection.
            out.append(_refine_sign_change(c, a, b, width))
            continue
        if b - a < min_width:
            raise _RepeatedRootSuspicion
        mid = (a + b) / 2
        bump = (b - a) / 16
        while _eval_sign(c, mid) == 0:
            mid += bump
            bump /= 3
        stack.append((a, mid))
        stack.append((mid, b))
    out.sort()
    return out


def _refine_sign_change(c, a, b, width):
    """Shrink a bracket that contains exactly one simple root below `width`."""
    sa = _eval_sign(c, a)
    while b - a >= width:
        mid = (a + b) / 2
        sm = _eval_sign(c, mid)
        if sm == 0:
            # The root is the rational point mid itself.
            quarter = width / 4
            lo2, hi2 = mid - quarter, mid + quarter
            if lo2 <= a:
                lo2 = (a + mid) / 2
            if hi2 >= b:
                hi2 = (mid + b) / 2
            return lo2, hi2
        if sm == sa:
            a = mid
        else:
            b = mid
    return a, b


def isolate_negative_region(
    p: MultiPoly,
    domain: tuple,
    width,
    engine: str = "auto",
):
    """Certified sign analysis of a univariate polynomial in q on a domain.

    Returns (roots, negative) where `roots` is a list of IsolatingInterval
    bracketing every distinct root inside the open domain, and `negative` is
    the list of maximal subintervals of the domain where p < 0.  Negative
    region endpoints that fall at a root are reported by the root's outer
    bracket, so each carries uncertainty below `width`; endpoints at the
    domain boundary are exact.
    """
    if p.is_zero():
        raise ValueError("zero polynomial has no sign regions")
    coeffs = p.dense_in("q")
    lo, hi = Rational(domain[0]), Rational(domain[1])
    if not lo < hi:
        raise ValueError("empty domain")
    width = Rational(width)
    # A q**k factor has its root at 0; on a non-negative domain it never
    # changes signs, so strip it to keep the boundary clean.
    if lo >= 0:
        k = p.min_degree("q")
        if k:
            coeffs = coeffs[k:]
            if len(coeffs) == 1:
                sign = 1 if coeffs[0] > 0 else -1
                return [], ([] if sign > 0 else [(lo, hi)])
    roots = isolate_real_roots(coeffs, (lo, hi), width, engine=engine)
    c = _int_clear(coeffs)

    # One exact sign per gap between consecutive root brackets.
    gaps = []  # (left cut index, right cut index, sign); cut 0 = lo, cut i = root i
    bounds = [lo] + [r.low for r in roots] + [hi]
    uppers = [lo] + [r.high for r in roots] + [hi]
    signs = []
    for i in range(len(roots) + 1):
        a, b = uppers[i], bounds[i + 1]
        if a >= b:
            signs.append(0)
            continue
        sample = (a + b) / 2
        bump = (b - a) / 16
        while _eval_sign(c, sample) == 0:
            sample += bump
            bump /= 3
        signs.append(_eval_sign(c, sample))

    # Assemble maximal negative intervals.  A gap endpoint at the domain edge
    # is exact; at a root it is the root's outer bracket edge, except where
    # the neighbouring gap is also negative (a sign-preserving touch point),
    # in which case the inner edge keeps the reported intervals disjoint.
    negative = []
    for i, sign in enumerate(signs):
        if sign >= 0:
            continue
        if i == 0:
            left = lo
        elif signs[i - 1] < 0:
            left = roots[i - 1].high
        else:
            left = roots[i - 1].low
        if i == len(roots):
            right = hi
        elif signs[i + 1] < 0:
            right = roots[i].low
        else:
            right = roots[i].high
        negative.append((left, right))
    return roots, negative
