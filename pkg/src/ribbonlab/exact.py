"""Exact scalars and exact linear algebra over the rationals.

Every computation in this package is exact: scalars are `fractions.Fraction`
(already kept in lowest terms with positive denominator) or truncated
polynomials in pi over Q, and matrices are eliminated with rational pivots.
Floating point is never used.

Rationals serialize as "p/q" (or just "p" when the denominator is 1).
"""

from __future__ import annotations

from fractions import Fraction


def rat(value) -> Fraction:
    """Coerce an int, string or Fraction to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError("cannot coerce %r to a rational" % (value,))


def rat_to_str(x: Fraction) -> str:
    x = rat(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def rat_from_str(s: str) -> Fraction:
    return Fraction(s.strip())


class TruncatedScalar:
    """Element of Q[pi]/(pi^order), coefficients stored low degree first.

    The length of `coeffs` is exactly `order`; arithmetic between elements of
    different orders is refused rather than silently coerced, since the order
    tracks how far a family is known.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = tuple(rat(c) for c in coeffs)
        if not self.coeffs:
            raise ValueError("truncation order must be at least 1")

    @classmethod
    def from_rational(cls, x, order: int) -> "TruncatedScalar":
        return cls((rat(x),) + (Fraction(0),) * (order - 1))

    @classmethod
    def pi(cls, order: int, power: int = 1) -> "TruncatedScalar":
        if power < 0:
            raise ValueError("pi power must be nonnegative")
        coeffs = [Fraction(0)] * order
        if power < order:
            coeffs[power] = Fraction(1)
        return cls(coeffs)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def _lift(self, other):
        if isinstance(other, TruncatedScalar):
            if other.order != self.order:
                raise ValueError("truncation order mismatch: %d vs %d"
                                 % (self.order, other.order))
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedScalar.from_rational(other, self.order)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return TruncatedScalar(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return TruncatedScalar(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return TruncatedScalar(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        n = self.order
        out = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return TruncatedScalar(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        # Division by an exact rational only; pi powers are handled by shift().
        if isinstance(other, (int, Fraction)):
            q = rat(other)
            return TruncatedScalar(a / q for a in self.coeffs)
        return NotImplemented

    def __eq__(self, other):
        lifted = self._lift(other) if isinstance(other, (TruncatedScalar, int, Fraction)) else None
        if lifted is None:
            return NotImplemented
        return self.coeffs == lifted.coeffs

    def __bool__(self):
        return any(self.coeffs)

    def __hash__(self):
        return hash(self.coeffs)

    def valuation(self):
        """Smallest i with nonzero pi^i coefficient, or None for the zero element."""
        for i, a in enumerate(self.coeffs):
            if a:
                return i
        return None

    def constant_term(self) -> Fraction:
        return self.coeffs[0]

    def truncate(self, order: int) -> "TruncatedScalar":
        """Reduce mod pi^order (order <= self.order)."""
        if not 1 <= order <= self.order:
            raise ValueError("bad truncation order %d" % order)
        return TruncatedScalar(self.coeffs[:order])

    def shift(self, s: int) -> "TruncatedScalar":
        """Multiply by pi^s.

        For s >= 0 the order is unchanged (top digits fall off the end).  For
        s < 0 the division must be exact (low digits zero) and the order drops
        by |s|, since the discarded head carried that much precision.
        """
        if s >= 0:
            coeffs = (Fraction(0),) * s + self.coeffs
            return TruncatedScalar(coeffs[:self.order])
        k = -s
        if k >= self.order:
            raise ValueError("cannot shift down past the truncation order")
        if any(self.coeffs[:k]):
            raise ValueError("inexact division by pi^%d" % k)
        return TruncatedScalar(self.coeffs[k:])

    def __repr__(self):
        return "TruncatedScalar(%s)" % (list(map(rat_to_str, self.coeffs)),)

    def to_json(self):
        return [rat_to_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "TruncatedScalar":
        return cls([rat_from_str(c) for c in data])


class RatMatrix:
    """Dense matrix over Q, immutable after construction.

    Elimination uses the deterministic first-nonzero pivot rule, so reduced
    forms (and hence canonical subspace bases) are reproducible byte for byte.
    """

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows, ncols=None):
        self.rows = tuple(tuple(rat(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(row) != self.ncols for row in self.rows):
                raise ValueError("ragged rows")
            if ncols is not None and ncols != self.ncols:
                raise ValueError("ncols disagrees with row length")
        else:
            if ncols is None:
                raise ValueError("empty matrix needs an explicit ncols")
            self.ncols = ncols

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def entry(self, i, j) -> Fraction:
        return self.rows[i][j]

    def transpose(self) -> "RatMatrix":
        return RatMatrix([[self.rows[i][j] for i in range(self.nrows)]
                          for j in range(self.ncols)], ncols=self.nrows)

    def mat_mul(self, other: "RatMatrix") -> "RatMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for row in self.rows:
            out.append([sum((row[k] * other.rows[k][j] for k in range(self.ncols)),
                            Fraction(0)) for j in range(other.ncols)])
        return RatMatrix(out, ncols=other.ncols)

    def apply(self, vec):
        """Matrix-vector product."""
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        return tuple(sum((row[j] * vec[j] for j in range(self.ncols)), Fraction(0))
                     for row in self.rows)

    def rref(self):
        """Reduced row echelon form.  Returns (RatMatrix, pivot columns)."""
        rows = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot_row = None
            for i in range(r, len(rows)):
                if rows[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return RatMatrix(rows, ncols=self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self):
        """Canonical basis of the right kernel, one vector per free column.

        The vector for free column f has entry 1 there and -R[i][f] at the
        i-th pivot column of the rref R, so equality of kernels is equality
        of these lists.
        """
        R, pivots = self.rref()
        pivot_set = set(pivots)
        basis = []
        for f in range(self.ncols):
            if f in pivot_set:
                continue
            v = [Fraction(0)] * self.ncols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -R.rows[i][f]
            basis.append(tuple(v))
        return basis

    def det(self) -> Fraction:
        """Determinant by fraction-free (Bareiss) elimination.

        Rows are first scaled to integers; the Bareiss recurrence then keeps
        every intermediate value an integer, which controls coefficient
        blowup compared to naive fractional elimination.
        """
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return Fraction(1)
        scale = Fraction(1)
        m = []
        for row in self.rows:
            denom_lcm = 1
            for x in row:
                denom_lcm = denom_lcm * x.denominator // _gcd(denom_lcm, x.denominator)
            scale *= denom_lcm
            m.append([int(x * denom_lcm) for x in row])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                swap = None
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        swap = i
                        break
                if swap is None:
                    return Fraction(0)
                m[k], m[swap] = m[swap], m[k]
                sign = -sign
            pivot = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = pivot
        return Fraction(sign * m[n - 1][n - 1]) / scale

    def solve(self, b):
        """Solve A x = b.

        Returns None when the system is inconsistent, otherwise a pair
        (x, unique) where x is one solution (free variables set to zero) and
        unique tells whether it is the only one.
        """
        sols, unique = self.solve_columns([list(b)])
        if sols[0] is None:
            return None
        return sols[0], unique

    def solve_columns(self, columns):
        """Solve A x = b for several right-hand sides with one elimination.

        `columns` is a list of right-hand-side vectors.  Returns
        (solutions, unique): solutions[i] is a tuple or None (inconsistent),
        and unique is rank == ncols, shared by every consistent system.
        """
        k = len(columns)
        aug = [list(self.rows[i]) + [rat(col[i]) for col in columns]
               for i in range(self.nrows)]
        pivots = []
        r = 0
        for c in range(self.ncols):
            pivot_row = None
            for i in range(r, len(aug)):
                if aug[i][c]:
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
            inv = 1 / aug[r][c]
            aug[r] = [x * inv for x in aug[r]]
            for i in range(len(aug)):
                if i != r and aug[i][c]:
                    f = aug[i][c]
                    aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
        rank = len(pivots)
        unique = rank == self.ncols
        solutions = []
        for t in range(k):
            col = self.ncols + t
            if any(aug[i][col] for i in range(rank, self.nrows)):
                solutions.append(None)
                continue
            x = [Fraction(0)] * self.ncols
            for i, p in enumerate(pivots):
                x[p] = aug[i][col]
            solutions.append(tuple(x))
        return solutions, unique

    def __eq__(self, other):
        if not isinstance(other, RatMatrix):
            return NotImplemented
        return (self.nrows, self.ncols, self.rows) == (other.nrows, other.ncols, other.rows)

    def __hash__(self):
        return hash((self.nrows, self.ncols, self.rows))

    def __repr__(self):
        return "RatMatrix(%d x %d)" % (self.nrows, self.ncols)

    def to_json(self):
        return [[rat_to_str(x) for x in row] for row in self.rows]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def row_space_matrix(vectors, ncols) -> RatMatrix:
    """Canonical rref matrix of the span of the given vectors (zero rows dropped).

    Two collections span the same subspace iff these matrices are equal.
    """
    if not vectors:
        return RatMatrix([], ncols=ncols)
    R, pivots = RatMatrix(vectors, ncols=ncols).rref()
    return RatMatrix(R.rows[:len(pivots)], ncols=ncols)


def _sparse_forward(rows):
    """Forward elimination on dict rows; pivot rows are triangular.

    Returns {lead: tail} where tail maps columns (> lead) to coefficients
    and each stored row encodes x_lead + sum(tail[c] * x_c) = 0.
    """
    pivots = {}
    queue = sorted((r for r in rows if r), key=len)
    for row in queue:
        row = dict(row)
        while True:
            hit = None
            for c in row:
                if c in pivots:
                    if hit is None or c < hit:
                        hit = c
            if hit is None:
                break
            factor = row.pop(hit)
            for c, v in pivots[hit].items():
                if c in row:
                    val = row[c] - factor * v
                    if val:
                        row[c] = val
                    else:
                        del row[c]
                else:
                    row[c] = -factor * v
        if row:
            lead = min(row)
            inv = 1 / row[lead]
            pivots[lead] = {c: v * inv for c, v in row.items() if c != lead}
    return pivots


def sparse_rank(rows, ncols) -> int:
    """Rank of a sparse matrix given as dicts {column: coefficient}.

    Forward elimination with shortest-row pivot preference.  Rows here come
    from generator-times-monomial spans whose rows have very few terms, so
    the elimination stays sparse; results agree with dense rref rank.
    """
    return len(_sparse_forward(rows))


def sparse_kernel_basis(rows, ncols):
    """Kernel of the sparse matrix, as the same canonical basis rref gives.

    One kernel vector per non-pivot column f: x_f = 1, other free columns
    zero, pivot values back-solved in descending column order (pivot rows
    only involve larger columns, so this is a triangular solve).
    """
    pivots = _sparse_forward(rows)
    order = sorted(pivots, reverse=True)
    basis = []
    for f in range(ncols):
        if f in pivots:
            continue
        values = {f: Fraction(1)}
        for p in order:
            if p > f:
                continue
            s = Fraction(0)
            for c, v in pivots[p].items():
                xv = values.get(c)
                if xv:
                    s += v * xv
            if s:
                values[p] = -s
        basis.append(tuple(values.get(c, Fraction(0)) for c in range(ncols)))
    return basis


class RowEliminator:
    """Incremental Gaussian elimination for rank growth tests.

    add() reduces a vector against the pivots collected so far and either
    absorbs it (returning True if it was independent) or discards it.
    """

    __slots__ = ("ncols", "pivots")

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add(self, vec) -> bool:
        if isinstance(vec, dict):
            row = {c: v for c, v in vec.items() if v}
        else:
            row = {c: v for c, v in enumerate(vec) if v}
        while row:
            lead = min(row)
            piv = self.pivots.get(lead)
            if piv is None:
                factor = row.pop(lead)
                self.pivots[lead] = {c: v / factor for c, v in row.items()}
                return True
            factor = row.pop(lead)
            for c, v in piv.items():
                val = row.get(c, Fraction(0)) - factor * v
                if val:
                    row[c] = val
                else:
                    row.pop(c, None)
        return False
