"""Quadrics through the rational normal curve of degree g-1.

The curve sits in P^{g-1} with coordinates u_0..u_{g-1}; its degree-d ideal
slice is the kernel of evaluation (Veronese pullback) on degree-d monomials.
Symmetric forms q on the (g-2)-dimensional space H^0(O(g-3)) map to quadrics
x_q through the curve; on basis tensors

    e_i (x) e_i      |-->  u_{i+2} u_i - u_{i+1}^2
    e_i (.) e_j      |-->  u_{i+2} u_j + u_{j+2} u_i - 2 u_{i+1} u_{j+1}

which is the half-polarization x_q = sum_{i,j} q_ij (u_{i+2} u_j -
u_{i+1} u_{j+1}).
"""

from __future__ import annotations

from fractions import Fraction

from .exact import RatMatrix, rat, rat_from_str, rat_to_str, row_space_matrix
from .poly import WPoly, monomial_index, monomials, veronese_pullback


class QuadForm:
    """Symmetric (g-2) x (g-2) rational matrix."""

    __slots__ = ("g", "mat")

    def __init__(self, g: int, entries):
        if g < 3:
            raise ValueError("genus must be at least 3")
        self.g = g
        n = g - 2
        mat = RatMatrix(entries, ncols=n)
        if mat.nrows != n:
            raise ValueError("expected a %d x %d matrix" % (n, n))
        for i in range(n):
            for j in range(i):
                if mat.rows[i][j] != mat.rows[j][i]:
                    raise ValueError("matrix is not symmetric")
        self.mat = mat

    @classmethod
    def zero(cls, g: int) -> "QuadForm":
        n = g - 2
        return cls(g, [[0] * n for _ in range(n)])

    @classmethod
    def basis_element(cls, g: int, i: int, j: int) -> "QuadForm":
        """The symmetric unit e_i (.) e_j: ones at (i, j) and (j, i)."""
        n = g - 2
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError("index out of range")
        entries = [[Fraction(0)] * n for _ in range(n)]
        entries[i][j] = Fraction(1)
        entries[j][i] = Fraction(1)
        return cls(g, entries)

    @property
    def size(self) -> int:
        return self.g - 2

    def entry(self, i, j) -> Fraction:
        return self.mat.rows[i][j]

    def is_zero(self) -> bool:
        return all(not x for row in self.mat.rows for x in row)

    def det(self) -> Fraction:
        return self.mat.det()

    def kernel_basis(self):
        return self.mat.kernel_basis()

    def __eq__(self, other):
        if not isinstance(other, QuadForm):
            return NotImplemented
        return self.g == other.g and self.mat == other.mat

    def __hash__(self):
        return hash((self.g, self.mat))

    def __repr__(self):
        return "QuadForm(g=%d, %s)" % (self.g, [list(map(rat_to_str, r)) for r in self.mat.rows])

    def to_json(self):
        return {"g": self.g, "matrix": self.mat.to_json()}

    @classmethod
    def from_json(cls, data) -> "QuadForm":
        return cls(int(data["g"]),
                   [[rat_from_str(x) for x in row] for row in data["matrix"]])


def q_to_quadric(q: QuadForm) -> WPoly:
    """Quadric through the rational normal curve attached to a symmetric form."""
    g = q.g
    total = {}
    for i in range(q.size):
        for j in range(q.size):
            c = q.entry(i, j)
            if not c:
                continue
            for (a, b), sign in (((i + 2, j), 1), ((i + 1, j + 1), -1)):
                e = [0] * (2 * g - 2)
                e[a] += 1
                e[b] += 1
                key = tuple(e)
                total[key] = total.get(key, Fraction(0)) + sign * c
    return WPoly(g, total)


def hankel_generators(g: int):
    """Images of the symmetric basis e_i (.) e_j (i <= j) under q_to_quadric.

    These (g-1)(g-2)/2 quadrics span the full degree-2 ideal slice.
    """
    gens = []
    for i in range(g - 2):
        for j in range(i, g - 2):
            gens.append(q_to_quadric(QuadForm.basis_element(g, i, j)))
    return gens


class IdealSlice:
    """A subspace of degree-d u-polynomials, held in rref-canonical form.

    `basis` lists WPoly rows of the canonical rref matrix over the fixed
    monomial order, so two slices are equal iff their matrices are equal.
    """

    __slots__ = ("g", "d", "monomials", "matrix", "basis")

    def __init__(self, g: int, d: int, vectors):
        self.g = g
        self.d = d
        self.monomials = monomials(g, d, u_only=True)
        self.matrix = row_space_matrix(list(vectors), len(self.monomials))
        self.basis = [self._to_poly(row) for row in self.matrix.rows]

    def _to_poly(self, row) -> WPoly:
        return WPoly(self.g, {e: c for e, c in zip(self.monomials, row) if c})

    @classmethod
    def from_polys(cls, g: int, d: int, polys) -> "IdealSlice":
        idx_basis = monomials(g, d, u_only=True)
        idx = monomial_index(idx_basis)
        vectors = []
        for p in polys:
            if not p:
                continue
            if not p.is_u_only():
                raise ValueError("slice elements must be u-polynomials")
            if p.degree("weighted") != d:
                raise ValueError("expected degree %d" % d)
            vec = [Fraction(0)] * len(idx_basis)
            for e, c in p.terms.items():
                vec[idx[e]] = c
            vectors.append(vec)
        return cls(g, d, vectors)

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def vector_of(self, p: WPoly):
        idx = monomial_index(self.monomials)
        vec = [Fraction(0)] * len(self.monomials)
        for e, c in p.terms.items():
            if e not in idx:
                raise ValueError("polynomial does not live in this slice's degree")
            vec[idx[e]] = c
        return vec

    def contains(self, p: WPoly) -> bool:
        if not p:
            return True
        vec = self.vector_of(p)
        stacked = row_space_matrix(list(self.matrix.rows) + [vec], len(self.monomials))
        return stacked.nrows == self.matrix.nrows

    def __eq__(self, other):
        if not isinstance(other, IdealSlice):
            return NotImplemented
        return (self.g, self.d, self.matrix) == (other.g, other.d, other.matrix)

    def __repr__(self):
        return "IdealSlice(g=%d, d=%d, dim=%d)" % (self.g, self.d, self.dim)


def ideal_slice(g: int, d: int) -> IdealSlice:
    """Degree-d slice of the ideal of the rational normal curve.

    Kernel of the evaluation map sending a degree-d monomial in u to its
    pullback x0^a x1^(d(g-1)-a); dimension C(g-1+d, d) - (d(g-1)+1).
    """
    if g < 3 or d < 1:
        raise ValueError("need g >= 3 and d >= 1")
    basis = monomials(g, d, u_only=True)
    nrows = d * (g - 1) + 1
    cols = []
    for e in basis:
        a = sum(i * k for i, k in enumerate(e[:g]))
        cols.append(a)
    eval_rows = [[Fraction(0)] * len(basis) for _ in range(nrows)]
    for col, a in enumerate(cols):
        eval_rows[a][col] = Fraction(1)
    kernel = RatMatrix(eval_rows, ncols=len(basis)).kernel_basis()
    return IdealSlice(g, d, kernel)


def ideal_square_slice(g: int, d: int) -> IdealSlice:
    """Degree-d slice of the square of the curve ideal (d >= 4).

    Spanned by m * q_a * q_b over degree-(d-4) monomials m and pairs of
    quadric generators; the square has no elements below degree 4.
    """
    if d < 4:
        raise ValueError("the ideal square has no elements in degree %d" % d)
    gens = hankel_generators(g)
    mults = [WPoly(g, {e: Fraction(1)}) for e in monomials(g, d - 4, u_only=True)]
    polys = []
    for a in range(len(gens)):
        for b in range(a, len(gens)):
            qq = gens[a] * gens[b]
            for m in mults:
                polys.append(m * qq)
    return IdealSlice.from_polys(g, d, polys)
