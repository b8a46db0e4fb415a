"""Ideals of curves and ribbons in the weighted space X_g.

X_g = Proj Q[u_0..u_{g-1}, v_0..v_{g-3}] with deg u = 1, deg v = 2.  Three
generator groups appear in every model here, always in this order and with
these canonical spanning sets:

* UU (weighted degree 2): for each value s of i+j one balanced base pair
  (s//2, s-s//2); each other pair (i, j) contributes u_i u_j - u_k u_l.
* UV (weighted degree 3): for each value s of i+j the base pair has the
  smallest v index; each other pair contributes u_i v_j - u_k v_l.
* VV (weighted degree 4): the products v_i v_j (i <= j), possibly corrected
  by a u-quartic.

The split ribbon takes the groups as-is; a ribbon in canonical form bends
UU by v-linear terms; a hyperelliptic curve bends VV by lifted quartics.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import (
    RatMatrix,
    RowEliminator,
    row_space_matrix,
    sparse_kernel_basis,
    sparse_rank,
)
from .poly import (
    MONOMIAL_ORDERS,
    BinaryForm,
    WPoly,
    monomial_index,
    monomials,
    quartic_lift,
)
from .rnc import IdealSlice

GROUPS = ("UU", "UV", "VV")


def uu_keys(g: int):
    """(i, j, k, l) with i+j = k+l, (k, l) the balanced split, (i, j) != (k, l)."""
    keys = []
    for i in range(g):
        for j in range(i, g):
            s = i + j
            k, l = s // 2, s - s // 2
            if (i, j) != (k, l):
                keys.append((i, j, k, l))
    return keys


def uv_keys(g: int):
    """(i, j, k, l) with i+j = k+l, (k, l) the pair with the smallest v index."""
    keys = []
    for s in range(0, 2 * g - 3):
        pairs = [(i, s - i) for i in range(g)
                 if 0 <= s - i <= g - 3]
        if not pairs:
            continue
        base = min(pairs, key=lambda p: p[1])
        for i, j in pairs:
            if (i, j) != base:
                keys.append((i, j, base[0], base[1]))
    return keys


def vv_keys(g: int):
    return [(i, j) for i in range(g - 2) for j in range(i, g - 2)]


def uu_base_poly(g: int, key) -> WPoly:
    i, j, k, l = key
    return WPoly.u_monomial(g, [i, j]) - WPoly.u_monomial(g, [k, l])


def uv_base_poly(g: int, key) -> WPoly:
    i, j, k, l = key
    return (WPoly.u_var(g, i) * WPoly.v_var(g, j)
            - WPoly.u_var(g, k) * WPoly.v_var(g, l))


def vv_base_poly(g: int, key) -> WPoly:
    i, j = key
    return WPoly.v_var(g, i) * WPoly.v_var(g, j)


class XgIdeal:
    """A generator set in the three-group shape, over Q."""

    __slots__ = ("g", "UU", "UV", "VV")

    def __init__(self, g: int, UU, UV, VV):
        self.g = g
        self.UU = list(UU)
        self.UV = list(UV)
        self.VV = list(VV)
        for key, p in self.UU + self.UV + self.VV:
            if p.g != g:
                raise ValueError("generator genus mismatch")

    def group_items(self, name: str):
        return getattr(self, name)

    def generators(self):
        return [p for _, p in self.UU + self.UV + self.VV]

    def generator_groups(self):
        """Group name of each generator, aligned with generators()."""
        return (["UU"] * len(self.UU) + ["UV"] * len(self.UV)
                + ["VV"] * len(self.VV))

    def to_json(self):
        def dump(items):
            return [{"key": list(k), "poly": p.to_json()} for k, p in items]
        return {"g": self.g, "UU": dump(self.UU), "UV": dump(self.UV),
                "VV": dump(self.VV)}

    @classmethod
    def from_json(cls, data) -> "XgIdeal":
        g = int(data["g"])

        def load(items):
            return [(tuple(e["key"]), WPoly.from_json(g, e["poly"])) for e in items]
        return cls(g, load(data["UU"]), load(data["UV"]), load(data["VV"]))


def split_ribbon_ideal(g: int) -> XgIdeal:
    """The two-step structure with trivial gluing: v-products vanish."""
    if g < 3:
        raise ValueError("g must be at least 3")
    return XgIdeal(
        g,
        [(k, uu_base_poly(g, k)) for k in uu_keys(g)],
        [(k, uv_base_poly(g, k)) for k in uv_keys(g)],
        [(k, vv_base_poly(g, k)) for k in vv_keys(g)],
    )


def canonical_ribbon_ideal(g: int, ell) -> XgIdeal:
    """Ribbon in canonical form: UU_e = (uu)_{0,e} - ell_e(v).

    `ell` is a list of v-linear forms (or zero polynomials) aligned with
    uu_keys(g).
    """
    keys = uu_keys(g)
    if len(ell) != len(keys):
        raise ValueError("expected %d linear forms" % len(keys))
    uu = []
    for key, ell_e in zip(keys, ell):
        if ell_e is None:
            ell_e = WPoly.zero(g)
        if ell_e:
            ok = ell_e.is_homogeneous("weighted") and ell_e.degree("weighted") == 2 \
                and all(not any(e[:g]) and sum(e[g:]) == 1 for e in ell_e.terms)
            if not ok:
                raise ValueError("ell must be linear in the v variables")
        uu.append((key, uu_base_poly(g, key) - ell_e))
    return XgIdeal(
        g,
        uu,
        [(k, uv_base_poly(g, k)) for k in uv_keys(g)],
        [(k, vv_base_poly(g, k)) for k in vv_keys(g)],
    )


def random_ell(g: int, rng, bound: int = 3):
    """Random unconstrained v-linear forms aligned with uu_keys(g).

    Arbitrary corrections generally do NOT give a ribbon: the subscheme
    they cut out can be smaller than a ribbon in low degrees.  Use
    random_ribbon_ell for corrections from the canonical-form family.
    """
    out = []
    for _ in uu_keys(g):
        terms = {}
        for j in range(g - 2):
            c = rng.randint(-bound, bound)
            if c:
                e = [0] * (2 * g - 2)
                e[g + j] = 1
                terms[tuple(e)] = Fraction(c)
        out.append(WPoly(g, terms))
    return out


def ribbon_ell_space(g: int):
    """Basis of v-linear corrections that keep the split Hilbert function.

    A correction list ell is admissible iff for every linear syzygy
    sum_e sigma_e (uu)_{0,e} + (uv-part) = 0 of the split equations, the
    combination sum_e sigma_e ell_e lies in the span of the UV relations;
    otherwise new degree-3 elements appear and the subscheme is smaller
    than a ribbon.  Degree 4 and higher impose nothing extra because the
    VV group spans all v-quadratics.  Each basis element is a list of
    WPoly aligned with uu_keys(g).
    """
    split = split_ribbon_ideal(g)
    kernel, layout = _syzygy_kernel(split, 3)
    nuu = len(split.UU)
    nv = g - 2
    nz = nuu * nv
    uv_gens = [p for _, p in split.UV]
    uv_monos = [(i, n) for i in range(g) for n in range(nv)]
    mono_idx = {m: t for t, m in enumerate(uv_monos)}
    conditions = []
    for vec in kernel:
        sigma = {}
        for col, c in enumerate(vec):
            if c:
                e, m = layout[col]
                if e < nuu:
                    i = next(t for t in range(g) if m[t])
                    sigma.setdefault(e, {})[i] = c
        if sigma:
            conditions.append(sigma)
    ny = len(uv_gens)
    total = nz + len(conditions) * ny
    eqs = []
    for r, sigma in enumerate(conditions):
        block = [[Fraction(0)] * total for _ in uv_monos]
        for e, lin in sigma.items():
            for i, c in lin.items():
                for n in range(nv):
                    block[mono_idx[(i, n)]][e * nv + n] += c
        for f, gen in enumerate(uv_gens):
            ycol = nz + r * ny + f
            for exp, c in gen.terms.items():
                i = next(t for t in range(g) if exp[t])
                n = next(t for t in range(nv) if exp[g + t])
                block[mono_idx[(i, n)]][ycol] -= c
        eqs.extend(block)
    if eqs:
        zvecs = [v[:nz] for v in RatMatrix(eqs, ncols=total).kernel_basis()]
    else:
        zvecs = [row for row in RatMatrix.identity(nz).rows]
    basis = row_space_matrix(zvecs, nz)
    out = []
    for row in basis.rows:
        ell = []
        for e in range(nuu):
            terms = {}
            for n in range(nv):
                if row[e * nv + n]:
                    exp = [0] * (2 * g - 2)
                    exp[g + n] = 1
                    terms[tuple(exp)] = row[e * nv + n]
            ell.append(WPoly(g, terms))
        out.append(ell)
    return out


def random_ribbon_ell(g: int, rng, bound: int = 5):
    """Random member of the canonical-form family of corrections."""
    space = ribbon_ell_space(g)
    out = [WPoly.zero(g) for _ in uu_keys(g)]
    for ell in space:
        c = Fraction(rng.randint(-bound, bound))
        if c:
            out = [acc + e * c for acc, e in zip(out, ell)]
    return out


def hyperelliptic_model(g: int, h: BinaryForm) -> XgIdeal:
    """Hyperelliptic curve y^2 = h embedded in X_g: v_i v_j = p_ij(u).

    h is a binary form of degree 2g+2; p_ij lifts x0^(i+j) x1^(2g-6-i-j) h.
    """
    if h.degree != 2 * g + 2:
        raise ValueError("expected a form of degree %d" % (2 * g + 2))
    vv = []
    for key in vv_keys(g):
        i, j = key
        shifted = BinaryForm.monomial(2 * g - 6, i + j) * h
        p_ij = quartic_lift(shifted, g)
        vv.append((key, vv_base_poly(g, key) - p_ij))
    return XgIdeal(
        g,
        [(k, uu_base_poly(g, k)) for k in uu_keys(g)],
        [(k, uv_base_poly(g, k)) for k in uv_keys(g)],
        vv,
    )


def split_ribbon_evaluation(p: WPoly):
    """Evaluate on the split ribbon: a pair (a, eps*b) with eps^2 = 0.

    u_i maps to (x0^i x1^(g-1-i), 0) and v_j to (0, x0^j x1^(g-3-j)); a term
    with two or more v factors dies.  Requires weighted-homogeneous input;
    returns (first, second) binary forms of degrees d(g-1) and d(g-1)-(g+1).
    Membership in the split-ribbon ideal is exactly: both vanish.
    """
    g = p.g
    if not p.terms:
        raise ValueError("evaluation of the zero polynomial has no determined degree")
    d = p.degree("weighted")
    deg1 = d * (g - 1)
    deg2 = deg1 - (g + 1)
    first = [Fraction(0)] * (deg1 + 1)
    second = [Fraction(0)] * (deg2 + 1) if deg2 >= 0 else None
    for e, c in p.terms.items():
        b = sum(e[g:])
        a = sum(i * k for i, k in enumerate(e[:g]))
        if b == 0:
            first[a] += c
        elif b == 1:
            if second is None:
                raise ValueError("degree too small for a v term")
            j = next(t for t, k in enumerate(e[g:]) if k)
            second[a + j] += c
    return (BinaryForm(deg1, first),
            BinaryForm(deg2, second) if second is not None else BinaryForm(0))


def split_ribbon_contains(p: WPoly) -> bool:
    if not p.terms:
        return True
    first, second = split_ribbon_evaluation(p)
    return first.is_zero() and second.is_zero()


def ring_dimension(g: int, degree: int, grading: str = "weighted") -> int:
    return len(monomials(g, degree, grading))


def _slice_rows(ideal: XgIdeal, degree: int, grading: str):
    """Sparse rows spanning the degree slice of the ideal, plus the column basis."""
    g = ideal.g
    basis = monomials(g, degree, grading)
    idx = monomial_index(basis)
    rows = []
    for gen in ideal.generators():
        if not gen.is_homogeneous(grading):
            raise ValueError("generator is inhomogeneous in the %s grading" % grading)
        w = gen.degree(grading)
        if w is None or w > degree:
            continue
        terms = list(gen.terms.items())
        for m in monomials(g, degree - w, grading):
            row = {}
            for e, c in terms:
                col = idx[tuple(a + b for a, b in zip(m, e))]
                row[col] = row.get(col, Fraction(0)) + c
            rows.append({k: v for k, v in row.items() if v})
    return rows, basis


def hilbert_function(ideal: XgIdeal, grading, degrees):
    """Dimension of (ring / ideal) in each requested degree, by sparse rref.

    No Groebner machinery: the slice of the ideal is spanned by generator
    multiples and its rank is computed directly.  Returns the list of
    dimensions aligned with `degrees`.
    """
    out = []
    for degree in degrees:
        rows, basis = _slice_rows(ideal, degree, grading)
        out.append(len(basis) - sparse_rank(rows, len(basis)))
    return out


def ideal_slice_dimension(ideal: XgIdeal, degree: int, grading: str = "weighted") -> int:
    rows, basis = _slice_rows(ideal, degree, grading)
    return sparse_rank(rows, len(basis))


def eliminate_v(ideal: XgIdeal, max_degree: int):
    """u-only polynomials in the ideal, one IdealSlice per weighted degree.

    Entry d of the returned list is the slice at degree d, for d up to
    max_degree inclusive.
    """
    return [eliminate_v_degree(ideal, d) for d in range(max_degree + 1)]


def eliminate_v_degree(ideal: XgIdeal, degree: int) -> IdealSlice:
    """u-polynomials of the given weighted degree lying in the ideal's slice.

    Degreewise linear algebra: order the slice columns with v-involving
    monomials first, reduce, and keep the rref rows supported on the u-only
    block.  No elimination order or Groebner step is involved.
    """
    g = ideal.g
    basis = monomials(g, degree, "weighted")
    v_cols = [e for e in basis if any(e[g:])]
    u_cols = [e for e in basis if not any(e[g:])]
    ordered = v_cols + u_cols
    idx = monomial_index(ordered)
    rows = []
    for gen in ideal.generators():
        w = gen.degree("weighted")
        if w is None or w > degree:
            continue
        for m in monomials(g, degree - w, "weighted"):
            vec = [Fraction(0)] * len(ordered)
            for e, c in gen.terms.items():
                vec[idx[tuple(a + b for a, b in zip(m, e))]] += c
            rows.append(vec)
    if not rows:
        return IdealSlice(g, degree, [])
    R, pivots = RatMatrix(rows, ncols=len(ordered)).rref()
    nv = len(v_cols)
    u_idx = monomial_index(monomials(g, degree, u_only=True))
    vectors = []
    for row in R.rows[:len(pivots)]:
        if any(row[:nv]):
            continue
        vec = [Fraction(0)] * len(u_idx)
        for col, c in enumerate(row[nv:]):
            if c:
                vec[u_idx[u_cols[col]]] = c
        vectors.append(vec)
    return IdealSlice(g, degree, vectors)


class GroebnerResult:
    """Outcome of a truncated Buchberger run."""

    __slots__ = ("order", "basis", "input_is_groebner", "complete", "cap")

    def __init__(self, order, basis, input_is_groebner, complete, cap):
        self.order = order
        self.basis = basis
        self.input_is_groebner = input_is_groebner
        self.complete = complete
        self.cap = cap

    def leading_exponents(self):
        key = MONOMIAL_ORDERS[self.order]
        return [max(p.terms, key=key) for p in self.basis]

    def normal_monomial_count(self, degree: int, grading: str = "weighted") -> int:
        """Monomials of the degree not divisible by any leading monomial."""
        leads = self.leading_exponents()
        g = self.basis[0].g
        count = 0
        for e in monomials(g, degree, grading):
            if not any(all(a >= b for a, b in zip(e, lead)) for lead in leads):
                count += 1
        return count

    def normal_monomials(self, degree: int, grading: str = "weighted"):
        leads = self.leading_exponents()
        g = self.basis[0].g
        return [e for e in monomials(g, degree, grading)
                if not any(all(a >= b for a, b in zip(e, lead)) for lead in leads)]


def _top_reduce(p: WPoly, basis, leads, key) -> WPoly:
    """Reduce the leading term of p against the basis until stuck or zero."""
    g = p.g
    while p.terms:
        lt = max(p.terms, key=key)
        hit = None
        for t, lead in enumerate(leads):
            if all(a >= b for a, b in zip(lt, lead)):
                hit = t
                break
        if hit is None:
            return p
        quot = tuple(a - b for a, b in zip(lt, leads[hit]))
        factor = p.terms[lt] / basis[hit].terms[leads[hit]]
        p = p - WPoly(g, {quot: factor}) * basis[hit]
    return p


def _s_poly(f: WPoly, h: WPoly, lead_f, lead_h, key) -> WPoly:
    g = f.g
    lcm = tuple(max(a, b) for a, b in zip(lead_f, lead_h))
    mf = tuple(a - b for a, b in zip(lcm, lead_f))
    mh = tuple(a - b for a, b in zip(lcm, lead_h))
    return (WPoly(g, {mf: 1 / f.terms[lead_f]}) * f
            - WPoly(g, {mh: 1 / h.terms[lead_h]}) * h)


def buchberger(gens, order: str = "grlex", cap: int = 12) -> GroebnerResult:
    """S-polynomial completion truncated at weighted degree `cap`.

    `gens` is an XgIdeal or a plain list of WPoly.  Every S-pair of the
    *input* is reduced regardless of the cap (their degrees are bounded),
    so `input_is_groebner` is a genuine certificate.  The completion loop
    only processes pairs whose lcm stays within the cap; `complete`
    records whether anything was skipped.
    """
    if order not in MONOMIAL_ORDERS:
        raise ValueError("unknown order %r" % order)
    key = MONOMIAL_ORDERS[order]
    if isinstance(gens, XgIdeal):
        gens = gens.generators()
    basis = [p for p in gens if p]
    if not basis:
        raise ValueError("empty generating set")
    g = basis[0].g
    leads = [max(p.terms, key=key) for p in basis]
    n_input = len(basis)

    def wdeg(e):
        return sum(e[:g]) + 2 * sum(e[g:])

    input_is_groebner = True
    pairs = [(i, j) for i in range(n_input) for j in range(i + 1, n_input)]
    skipped = False
    pos = 0
    while pos < len(pairs):
        i, j = pairs[pos]
        pos += 1
        lcm = tuple(max(a, b) for a, b in zip(leads[i], leads[j]))
        from_completion = i >= n_input or j >= n_input
        if from_completion and wdeg(lcm) > cap:
            skipped = True
            continue
        s = _s_poly(basis[i], basis[j], leads[i], leads[j], key)
        r = _top_reduce(s, basis, leads, key)
        if r.terms:
            if not from_completion:
                input_is_groebner = False
            if wdeg(max(r.terms, key=key)) > cap:
                skipped = True
                continue
            basis.append(r)
            leads.append(max(r.terms, key=key))
            new = len(basis) - 1
            pairs.extend((t, new) for t in range(new))
    return GroebnerResult(order, basis, input_is_groebner, not skipped, cap)


def certify_groebner(ideal: XgIdeal, cap: int = 12):
    """Try grlex then grevlex; return the first certifying GroebnerResult.

    Returns None when neither order certifies the input as a Groebner basis.
    """
    gens = ideal.generators()
    for order in ("grlex", "grevlex"):
        res = buchberger(gens, order, cap)
        if res.input_is_groebner:
            return res
    return None


RIBBON_SYZYGY_SHAPES = {
    3: ("u(uu)0", (("UU", (1, 0)),)),
    4: ("v(uu)0 + u(uv)0", (("UU", (0, 1)), ("UV", (1, 0)))),
    5: ("v(uv)0 + u(vv)0", (("UV", (0, 1)), ("VV", (1, 0)))),
    6: ("v(vv)0", (("VV", (0, 1)),)),
}

HYPERELLIPTIC_SYZYGY_SHAPES = {
    3: ("u(uu)0", (("UU", (1, 0)),)),
    4: ("v(uu)0 + u(uv)0", (("UU", (0, 1)), ("UV", (1, 0)))),
    5: ("u(vv) + v(uv)0 + uuu(uu)0",
        (("VV", (1, 0)), ("UV", (0, 1)), ("UU", (3, 0)))),
    6: ("v(vv) + uuu(uv)0 + uuv(uu)0",
        (("VV", (0, 1)), ("UV", (3, 0)), ("UU", (2, 1)))),
}

SYZYGY_SHAPE_TABLES = {"ribbon": RIBBON_SYZYGY_SHAPES,
                       "hyperelliptic": HYPERELLIPTIC_SYZYGY_SHAPES}


class SyzygyRecord:
    """Syzygies of one weighted degree.

    `minimal_count` is dim(kernel) - dim(multiples of lower-degree
    syzygies).  `shape_matched` reports whether syzygies supported on the
    schematic coefficient pattern for this degree account for all minimal
    generators; it is None when there are no minimal syzygies to classify.
    """

    __slots__ = ("degree", "kernel_dim", "from_lower_dim", "minimal_count",
                 "shape_name", "shape_matched", "representatives")

    def __init__(self, degree, kernel_dim, from_lower_dim, minimal_count,
                 shape_name, shape_matched, representatives):
        self.degree = degree
        self.kernel_dim = kernel_dim
        self.from_lower_dim = from_lower_dim
        self.minimal_count = minimal_count
        self.shape_name = shape_name
        self.shape_matched = shape_matched
        self.representatives = representatives

    def __repr__(self):
        return ("SyzygyRecord(degree=%d, minimal=%d, shape=%r, matched=%s)"
                % (self.degree, self.minimal_count, self.shape_name, self.shape_matched))


def _syzygy_columns(ideal: XgIdeal, degree: int):
    """Domain column layout for syzygies of a weighted degree."""
    g = ideal.g
    gens = ideal.generators()
    layout = []
    for e, gen in enumerate(gens):
        w = gen.degree("weighted")
        if degree - w < 0:
            continue
        for m in monomials(g, degree - w, "weighted"):
            layout.append((e, m))
    return gens, layout


def _syzygy_kernel(ideal: XgIdeal, degree: int):
    """Kernel vectors of (a_e) -> sum a_e gen_e in the weighted degree."""
    g = ideal.g
    gens, layout = _syzygy_columns(ideal, degree)
    if not layout:
        return [], layout
    cod = monomials(g, degree, "weighted")
    idx = monomial_index(cod)
    rows = [{} for _ in cod]
    for col, (e, m) in enumerate(layout):
        for t, c in gens[e].terms.items():
            row = rows[idx[tuple(a + b for a, b in zip(m, t))]]
            row[col] = row.get(col, Fraction(0)) + c
    rows = [{k: v for k, v in r.items() if v} for r in rows]
    return sparse_kernel_basis(rows, len(layout)), layout


def syzygies_by_degree(ideal: XgIdeal, max_degree: int,
                       shape_table: str = "ribbon"):
    """First syzygies of the generator set, degree by weighted degree.

    For each degree up to max_degree: compute the kernel of the evaluation
    map, quotient out monomial multiples of lower-degree syzygies to count
    minimal generators, and check the schematic shape for that degree by
    restricting supports to the allowed (group, coefficient-bidegree)
    pattern.  Multiples of the minimal representatives from lower degrees
    span the same submodule as multiples of the full lower kernels.
    """
    g = ideal.g
    shapes = SYZYGY_SHAPE_TABLES[shape_table]
    groups = ideal.generator_groups()
    records = {}
    minimal_reps = {}
    layouts = {}
    min_gen_degree = min(p.degree("weighted") for p in ideal.generators())
    for degree in range(min_gen_degree + 1, max_degree + 1):
        kernel, layout = _syzygy_kernel(ideal, degree)
        layouts[degree] = layout
        index_to = {col_key: i for i, col_key in enumerate(layout)}
        lifted_rows = []
        for lower_degree, reps in minimal_reps.items():
            shift = degree - lower_degree
            lower_layout = layouts[lower_degree]
            for m_extra in monomials(g, shift, "weighted"):
                for vec in reps:
                    lifted = {}
                    for col, c in enumerate(vec):
                        if c:
                            e, m = lower_layout[col]
                            t = index_to[(e, tuple(a + b for a, b in zip(m, m_extra)))]
                            lifted[t] = lifted.get(t, Fraction(0)) + c
                    lifted_rows.append(lifted)
        elim = RowEliminator(len(layout))
        for row in lifted_rows:
            elim.add(row)
        low_dim = elim.rank
        new_reps = [v for v in kernel if elim.add(v)]
        minimal_count = len(new_reps)
        shape_entry = shapes.get(degree)
        shape_name = shape_entry[0] if shape_entry else None
        shape_matched = None
        if minimal_count:
            if shape_entry is None:
                shape_matched = False
            else:
                allowed = dict(shape_entry[1])
                pure_cols = []
                for col, (e, m) in enumerate(layout):
                    want = allowed.get(groups[e])
                    if want is not None and (sum(m[:g]), sum(m[g:])) == want:
                        pure_cols.append(col)
                pure = _restricted_kernel(ideal, degree, layout, pure_cols)
                elim2 = RowEliminator(len(layout))
                for row in lifted_rows:
                    elim2.add(row)
                covered = sum(1 for v in pure if elim2.add(v))
                shape_matched = covered == minimal_count
        records[degree] = SyzygyRecord(
            degree, len(kernel), low_dim, minimal_count, shape_name,
            shape_matched, [_vectors_to_polys(ideal, layout, v) for v in new_reps])
        minimal_reps[degree] = new_reps
    return records


def _restricted_kernel(ideal: XgIdeal, degree: int, layout, cols):
    """Syzygies supported on the given columns, embedded in full coordinates."""
    if not cols:
        return []
    g = ideal.g
    gens = ideal.generators()
    cod = monomials(g, degree, "weighted")
    idx = monomial_index(cod)
    rows = [{} for _ in cod]
    for local, col in enumerate(cols):
        e, m = layout[col]
        for t, c in gens[e].terms.items():
            row = rows[idx[tuple(a + b for a, b in zip(m, t))]]
            row[local] = row.get(local, Fraction(0)) + c
    rows = [{k: v for k, v in r.items() if v} for r in rows]
    out = []
    for v in sparse_kernel_basis(rows, len(cols)):
        full = [Fraction(0)] * len(layout)
        for local, c in enumerate(v):
            full[cols[local]] = c
        out.append(full)
    return out


def _vectors_to_polys(ideal: XgIdeal, layout, vec):
    """Repackage a kernel vector as one coefficient WPoly per generator."""
    g = ideal.g
    per_gen = {}
    for col, c in enumerate(vec):
        if c:
            e, m = layout[col]
            per_gen.setdefault(e, {})[m] = per_gen.get(e, {}).get(m, Fraction(0)) + c
    n_gens = len(ideal.generators())
    return [WPoly(g, per_gen.get(e, {})) for e in range(n_gens)]
