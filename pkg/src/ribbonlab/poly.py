"""Binary forms and polynomials on the weighted ambient space.

Two polynomial flavors live here:

* `BinaryForm`: a homogeneous form in x0, x1 over Q, stored densely.  The
  coefficient at index a multiplies x0^a * x1^(degree - a).

* `WPoly`: a polynomial in u_0..u_{g-1} (weight 1) and v_0..v_{g-3}
  (weight 2), the coordinates of the weighted ambient space of genus g.
  Terms are keyed by full exponent tuples (u exponents first, then v
  exponents).  Coefficients are Fractions or TruncatedScalars; the class
  only assumes ring operations, so the same code serves exact fibers and
  one-parameter families.

Gradings: "weighted" counts deg u = 1, deg v = 2; "koszul" counts every
variable once.  The variable order is u_0 < u_1 < ... < u_{g-1} < v_0 < ...
< v_{g-3} throughout; monomial-order keys below take it as given.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import RatMatrix, rat, rat_from_str, rat_to_str
from .exact import TruncatedScalar

GRADINGS = ("weighted", "koszul")


class BinaryForm:
    """Homogeneous binary form of fixed degree over Q."""

    __slots__ = ("degree", "coeffs")

    def __init__(self, degree: int, coeffs=None):
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        self.degree = degree
        if coeffs is None:
            self.coeffs = (Fraction(0),) * (degree + 1)
        else:
            self.coeffs = tuple(rat(c) for c in coeffs)
            if len(self.coeffs) != degree + 1:
                raise ValueError("expected %d coefficients" % (degree + 1))

    @classmethod
    def monomial(cls, degree: int, a: int, coeff=1) -> "BinaryForm":
        """coeff * x0^a * x1^(degree - a)."""
        if not 0 <= a <= degree:
            raise ValueError("exponent out of range")
        coeffs = [Fraction(0)] * (degree + 1)
        coeffs[a] = rat(coeff)
        return cls(degree, coeffs)

    def coeff(self, a: int) -> Fraction:
        return self.coeffs[a]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def _check_degree(self, other):
        if self.degree != other.degree:
            raise ValueError("degree mismatch: %d vs %d" % (self.degree, other.degree))

    def __add__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        self._check_degree(other)
        return BinaryForm(self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        self._check_degree(other)
        return BinaryForm(self.degree, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return BinaryForm(self.degree, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, BinaryForm):
            out = [Fraction(0)] * (self.degree + other.degree + 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
            return BinaryForm(self.degree + other.degree, out)
        if isinstance(other, (int, Fraction)):
            q = rat(other)
            return BinaryForm(self.degree, [q * a for a in self.coeffs])
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, self.coeffs))

    def divide_exact(self, a0: int, a1: int) -> "BinaryForm":
        """Exact division by x0^a0 * x1^a1; raises if any term is not divisible."""
        if a0 + a1 > self.degree:
            raise ValueError("divisor degree exceeds form degree")
        new_degree = self.degree - a0 - a1
        out = [Fraction(0)] * (new_degree + 1)
        for a, c in enumerate(self.coeffs):
            if not c:
                continue
            if a < a0 or self.degree - a < a1:
                raise ValueError("form not divisible by x0^%d x1^%d" % (a0, a1))
            out[a - a0] = c
        return BinaryForm(new_degree, out)

    def derivative(self, var: int) -> "BinaryForm":
        """Partial derivative with respect to x0 (var=0) or x1 (var=1)."""
        if self.degree == 0:
            return BinaryForm(0, [Fraction(0)])
        out = [Fraction(0)] * self.degree
        for a, c in enumerate(self.coeffs):
            if not c:
                continue
            if var == 0:
                if a:
                    out[a - 1] = a * c
            elif var == 1:
                if self.degree - a:
                    out[a] = (self.degree - a) * c
            else:
                raise ValueError("var must be 0 or 1")
        return BinaryForm(self.degree - 1, out)

    def __repr__(self):
        parts = []
        for a in range(self.degree, -1, -1):
            c = self.coeffs[a]
            if not c:
                continue
            mono = []
            if a:
                mono.append("x0" + ("^%d" % a if a > 1 else ""))
            if self.degree - a:
                mono.append("x1" + ("^%d" % (self.degree - a) if self.degree - a > 1 else ""))
            body = "*".join(mono) if mono else "1"
            parts.append("%s*%s" % (rat_to_str(c), body))
        return " + ".join(parts) if parts else "0 (degree %d)" % self.degree

    def to_json(self):
        return {"degree": self.degree, "coeffs": [rat_to_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data) -> "BinaryForm":
        return cls(int(data["degree"]), [rat_from_str(c) for c in data["coeffs"]])


def resultant(f: BinaryForm, g: BinaryForm) -> Fraction:
    """Homogeneous resultant of two binary forms via the Sylvester matrix.

    All coefficients enter the matrix, so vanishing leading coefficients
    (roots at [1:0]) are handled without special cases: the resultant is
    zero iff the forms share a projective root.
    """
    m, n = f.degree, g.degree
    if m == 0 or n == 0:
        const = f.coeffs[0] if m == 0 else g.coeffs[0]
        other_deg = n if m == 0 else m
        return const ** other_deg
    size = m + n
    rows = []
    fc = [f.coeffs[m - i] for i in range(m + 1)]  # degree-descending in x0
    gc = [g.coeffs[n - i] for i in range(n + 1)]
    for shift in range(n):
        rows.append([Fraction(0)] * shift + fc + [Fraction(0)] * (size - m - 1 - shift))
    for shift in range(m):
        rows.append([Fraction(0)] * shift + gc + [Fraction(0)] * (size - n - 1 - shift))
    return RatMatrix(rows).det()


class WPoly:
    """Polynomial in the weighted coordinates of genus g.

    Exponent keys are tuples of length 2g-2: entries 0..g-1 are u exponents,
    entries g..2g-3 are v exponents.  Zero coefficients are never stored.
    """

    __slots__ = ("g", "terms")

    def __init__(self, g: int, terms=None):
        if g < 3:
            raise ValueError("genus must be at least 3")
        self.g = g
        clean = {}
        if terms:
            n = 2 * g - 2
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != n or any(e < 0 for e in exps):
                    raise ValueError("bad exponent tuple %r for g=%d" % (exps, g))
                if not coeff:
                    continue
                if exps in clean:
                    s = clean[exps] + coeff
                    if s:
                        clean[exps] = s
                    else:
                        del clean[exps]
                else:
                    clean[exps] = coeff
        self.terms = clean

    @classmethod
    def zero(cls, g: int) -> "WPoly":
        return cls(g)

    @classmethod
    def u_var(cls, g: int, i: int) -> "WPoly":
        if not 0 <= i <= g - 1:
            raise ValueError("u index out of range")
        e = [0] * (2 * g - 2)
        e[i] = 1
        return cls(g, {tuple(e): Fraction(1)})

    @classmethod
    def v_var(cls, g: int, j: int) -> "WPoly":
        if not 0 <= j <= g - 3:
            raise ValueError("v index out of range")
        e = [0] * (2 * g - 2)
        e[g + j] = 1
        return cls(g, {tuple(e): Fraction(1)})

    @classmethod
    def u_monomial(cls, g: int, indices, coeff=1) -> "WPoly":
        """coeff * product of u_i over the (multiset of) indices."""
        e = [0] * (2 * g - 2)
        for i in indices:
            e[i] += 1
        return cls(g, {tuple(e): rat(coeff)})

    @classmethod
    def constant(cls, g: int, coeff) -> "WPoly":
        return cls(g, {(0,) * (2 * g - 2): coeff})

    def u_exps(self, exps):
        return exps[:self.g]

    def v_exps(self, exps):
        return exps[self.g:]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, WPoly):
            return NotImplemented
        return self.g == other.g and self.terms == other.terms

    def __hash__(self):
        return hash((self.g, tuple(sorted(self.terms.items()))))

    def _check_g(self, other):
        if self.g != other.g:
            raise ValueError("genus mismatch")

    def __add__(self, other):
        if not isinstance(other, WPoly):
            return NotImplemented
        self._check_g(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return WPoly(self.g, out)

    def __sub__(self, other):
        if not isinstance(other, WPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return WPoly(self.g, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WPoly):
            self._check_g(other)
            out = {}
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    c = c1 * c2
                    if e in out:
                        s = out[e] + c
                        if s:
                            out[e] = s
                        else:
                            del out[e]
                    elif c:
                        out[e] = c
            return WPoly(self.g, out)
        # scalar (Fraction, int, or TruncatedScalar)
        return WPoly(self.g, {e: c * other for e, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def map_coeffs(self, fn) -> "WPoly":
        return WPoly(self.g, {e: fn(c) for e, c in self.terms.items()})

    def degree_of(self, exps, grading: str) -> int:
        if grading == "weighted":
            return sum(exps[:self.g]) + 2 * sum(exps[self.g:])
        if grading == "koszul":
            return sum(exps)
        raise ValueError("unknown grading %r" % grading)

    def is_homogeneous(self, grading: str) -> bool:
        degs = {self.degree_of(e, grading) for e in self.terms}
        return len(degs) <= 1

    def degree(self, grading: str = "weighted"):
        """Common degree of all terms; None for the zero polynomial."""
        degs = {self.degree_of(e, grading) for e in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("polynomial is not homogeneous in the %s grading" % grading)
        return degs.pop()

    def is_u_only(self) -> bool:
        return all(not any(self.v_exps(e)) for e in self.terms)

    def v_degree_split(self):
        """Split into parts of constant total v-degree: {v_deg: WPoly}."""
        parts = {}
        for e, c in self.terms.items():
            b = sum(self.v_exps(e))
            parts.setdefault(b, {})[e] = c
        return {b: WPoly(self.g, t) for b, t in sorted(parts.items())}

    def partial(self, var: int) -> "WPoly":
        """Formal partial derivative with respect to variable index var."""
        if not 0 <= var < 2 * self.g - 2:
            raise ValueError("variable index out of range")
        out = {}
        for e, c in self.terms.items():
            k = e[var]
            if not k:
                continue
            new = list(e)
            new[var] = k - 1
            out[tuple(new)] = k * c
        return WPoly(self.g, out)

    def var_name(self, index: int) -> str:
        if index < self.g:
            return "u%d" % index
        return "v%d" % (index - self.g)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[e]
            mono = "*".join("%s%s" % (self.var_name(i), "^%d" % k if k > 1 else "")
                            for i, k in enumerate(e) if k)
            cs = rat_to_str(c) if isinstance(c, (int, Fraction)) else repr(c)
            parts.append("%s*%s" % (cs, mono) if mono else cs)
        return " + ".join(parts)

    def to_json(self):
        out = []
        for e in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[e]
            entry = {"u": list(e[:self.g]), "v": list(e[self.g:])}
            if isinstance(c, TruncatedScalar):
                entry["c"] = c.to_json()
            else:
                entry["c"] = rat_to_str(c)
            out.append(entry)
        return out

    @classmethod
    def from_json(cls, g: int, data) -> "WPoly":
        terms = {}
        for entry in data:
            exps = tuple(entry["u"]) + tuple(entry["v"])
            c = entry["c"]
            coeff = TruncatedScalar.from_json(c) if isinstance(c, list) else rat_from_str(c)
            terms[exps] = coeff
        return cls(g, terms)


def grlex_key(exps):
    """Graded-lex sort key (largest monomial has the largest key).

    The grading is the Koszul one (total degree); ties are broken
    lexicographically with v_{g-3} most significant, matching the stated
    variable order u_0 < ... < v_{g-3}.
    """
    return (sum(exps), tuple(reversed(exps)))


def grevlex_key(exps):
    """Graded-reverse-lex sort key for the same variable order."""
    return (sum(exps), tuple(-e for e in exps))


MONOMIAL_ORDERS = {"grlex": grlex_key, "grevlex": grevlex_key}


def monomials(g: int, degree: int, grading: str = "weighted", u_only: bool = False):
    """All exponent tuples of the given degree, in descending grlex order.

    The order is a fixed convention so that coefficient vectors, rref forms
    and JSON output are reproducible.
    """
    if grading not in GRADINGS:
        raise ValueError("unknown grading %r" % grading)
    nu = g
    nv = 0 if u_only else g - 2
    v_weight = 2 if grading == "weighted" else 1
    # enumerate u exponents first, then v exponents for the leftover degree
    results = []
    u_parts = []

    def u_rec(prefix, remaining, slots):
        if slots == 0:
            u_parts.append((prefix, remaining))
            return
        for k in range(remaining, -1, -1):
            u_rec(prefix + (k,), remaining - k, slots - 1)

    u_rec((), degree, nu)
    pad = (0,) * (g - 2)
    for up, rest in u_parts:
        if nv == 0:
            if rest == 0:
                results.append(up + pad)
            continue
        v_parts = []

        def v_rec(prefix, remaining, slots):
            if slots == 0:
                if remaining == 0:
                    v_parts.append(prefix)
                return
            for k in range(remaining // v_weight, -1, -1):
                v_rec(prefix + (k,), remaining - k * v_weight, slots - 1)

        v_rec((), rest, nv)
        for vp in v_parts:
            results.append(up + vp)
    results.sort(key=grlex_key, reverse=True)
    return results


def monomial_index(basis):
    """{exponent tuple: position} for a monomial list."""
    return {e: i for i, e in enumerate(basis)}


def veronese_pullback(p: WPoly) -> BinaryForm:
    """Restrict a u-polynomial to the rational normal curve.

    Substitutes u_i -> x0^i * x1^(g-1-i).  The input must involve only u
    variables and be homogeneous of some degree d (weighted = ordinary for
    u-polynomials); the result is a binary form of degree d*(g-1).
    """
    g = p.g
    if not p.is_u_only():
        raise ValueError("pullback requires a u-only polynomial")
    if not p.terms:
        raise ValueError("pullback of the zero polynomial has no determined degree")
    d = p.degree("weighted")
    n = g - 1
    out = BinaryForm(d * n)
    coeffs = list(out.coeffs)
    for e, c in p.terms.items():
        a = sum(i * k for i, k in enumerate(e[:g]))
        coeffs[a] += c
    return BinaryForm(d * n, coeffs)


def quartic_lift(f: BinaryForm, g: int) -> WPoly:
    """Greedy right inverse of the pullback on degree-4(g-1) forms.

    The monomial x0^k * x1^(4(g-1)-k) lifts to u_{a_1} u_{a_2} u_{a_3}
    u_{a_4} where each a_t takes as much of k as fits: a_t = min(g-1,
    k - a_1 - ... - a_{t-1}).  Distinct lifts of the same form differ by
    elements of the curve ideal, so downstream identities are checked by
    ideal membership rather than literal equality.
    """
    n = g - 1
    if f.degree != 4 * n:
        raise ValueError("expected a form of degree %d" % (4 * n))
    total = WPoly.zero(g)
    for k, c in enumerate(f.coeffs):
        if not c:
            continue
        indices = []
        rem = k
        for _ in range(4):
            a = min(n, rem)
            indices.append(a)
            rem -= a
        total = total + WPoly.u_monomial(g, indices, c)
    return total
