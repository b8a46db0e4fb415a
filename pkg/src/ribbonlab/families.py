"""One-parameter families of X_g ideals over the truncated base Q[pi]/(pi^N).

A hyperelliptic model v_i*v_j = p_ij(u) can be pushed toward the split
ribbon by rescaling the v coordinates: substituting v -> v/pi^k and
clearing the forced denominators turns a family that is hyperelliptic to
order d into one that is a ribbon to order 2d, and the quartics p_ij
reappear at level pi^{2d}, where they record a single binary form of
degree 2g+2 (the branch data).  This module implements the truncated
families, the rescaling, order detection, the even/odd splitting under
the involution v -> -v, and extraction of that degree 2g+2 section
together with a discriminant that vanishes exactly on non-simple zeros.

Order detection is literal shape detection: a family counts as
hyperelliptic (or a ribbon) to order m when its reduction mod pi^m
displays the exact generator shapes.  No attempt is made to normalize
away coordinate changes first, so callers are expected to feed families
that are already in normalized coordinates, as every constructor here
produces.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import RowEliminator, TruncatedScalar, rat_to_str
from .poly import BinaryForm, WPoly, monomials, resultant, veronese_pullback
from .xg import (
    XgIdeal,
    hyperelliptic_model,
    uu_base_poly,
    uu_keys,
    uv_base_poly,
    uv_keys,
    vv_base_poly,
    vv_keys,
)

GROUP_NAMES = ("UU", "UV", "VV")
GROUP_DEGREES = {"UU": 2, "UV": 3, "VV": 4}

# Involution signs: v -> -v composed with these per-group signs fixes
# every split-ribbon and hyperelliptic generator.
GROUP_SIGNS = {"UU": 1, "UV": -1, "VV": 1}

_BASE_POLY = {"UU": uu_base_poly, "UV": uv_base_poly, "VV": vv_base_poly}
_KEYS = {"UU": uu_keys, "UV": uv_keys, "VV": vv_keys}


def _lift_poly(p: WPoly, order: int, shift: int = 0) -> WPoly:
    """Lift a rational polynomial to truncated coefficients times pi^shift."""
    return p.map_coeffs(lambda c: TruncatedScalar.from_rational(c, order).shift(shift))


def _check_v_linear(p: WPoly):
    ok = p.is_homogeneous("weighted") and p.degree("weighted") == 2 \
        and all(not any(e[:p.g]) and sum(e[p.g:]) == 1 for e in p.terms)
    if not ok:
        raise ValueError("odd direction entries must be linear in the v variables")


class TruncatedFamily:
    """Generators in the three-group shape with coefficients in Q[pi]/(pi^N).

    Keys follow the standard lists of the fiber module, every coefficient
    is truncated at the same order, and each generator is weighted
    homogeneous of its group degree (2, 3, 4).
    """

    __slots__ = ("g", "order_bound", "UU", "UV", "VV")

    def __init__(self, g: int, order_bound: int, UU, UV, VV):
        if order_bound < 1:
            raise ValueError("order bound must be at least 1")
        self.g = g
        self.order_bound = order_bound
        for name, items in (("UU", UU), ("UV", UV), ("VV", VV)):
            items = [(tuple(key), p) for key, p in items]
            setattr(self, name, items)
            if [key for key, _ in items] != _KEYS[name](g):
                raise ValueError("%s keys must be the standard list for g=%d" % (name, g))
            for key, p in items:
                if p.g != g:
                    raise ValueError("generator genus mismatch")
                for c in p.terms.values():
                    if not isinstance(c, TruncatedScalar) or c.order != order_bound:
                        raise ValueError("coefficients must live in Q[pi]/(pi^%d)"
                                         % order_bound)
                if p.degree("weighted") != GROUP_DEGREES[name]:
                    raise ValueError("%s generator %s must be weighted-homogeneous "
                                     "of degree %d" % (name, key, GROUP_DEGREES[name]))

    def group_items(self, name: str):
        return getattr(self, name)

    def _map_polys(self, order_bound, fn) -> "TruncatedFamily":
        groups = {name: [(key, fn(p)) for key, p in self.group_items(name)]
                  for name in GROUP_NAMES}
        return TruncatedFamily(self.g, order_bound,
                               groups["UU"], groups["UV"], groups["VV"])

    def truncate(self, order: int) -> "TruncatedFamily":
        """Reduce every coefficient mod pi^order."""
        return self._map_polys(order, lambda p: p.map_coeffs(lambda c: c.truncate(order)))

    def special_fiber(self) -> XgIdeal:
        """The reduction mod pi, over Q."""
        fn = lambda p: p.map_coeffs(lambda c: c.constant_term())
        return XgIdeal(self.g,
                       [(k, fn(p)) for k, p in self.UU],
                       [(k, fn(p)) for k, p in self.UV],
                       [(k, fn(p)) for k, p in self.VV])

    def __eq__(self, other):
        if not isinstance(other, TruncatedFamily):
            return NotImplemented
        return (self.g == other.g and self.order_bound == other.order_bound
                and self.UU == other.UU and self.UV == other.UV
                and self.VV == other.VV)

    def __repr__(self):
        return "TruncatedFamily(g=%d, mod pi^%d)" % (self.g, self.order_bound)

    def to_json(self):
        def dump(items):
            return [{"key": list(k), "poly": p.to_json()} for k, p in items]
        return {"g": self.g, "order_bound": self.order_bound,
                "UU": dump(self.UU), "UV": dump(self.UV), "VV": dump(self.VV)}

    @classmethod
    def from_json(cls, data) -> "TruncatedFamily":
        g = int(data["g"])

        def load(items):
            return [(tuple(e["key"]), WPoly.from_json(g, e["poly"])) for e in items]
        return cls(g, int(data["order_bound"]),
                   load(data["UU"]), load(data["UV"]), load(data["VV"]))


def constant_family(ideal: XgIdeal, order_bound: int) -> TruncatedFamily:
    """The ideal viewed as a family that does not move with pi."""
    lift = lambda items: [(k, _lift_poly(p, order_bound)) for k, p in items]
    return TruncatedFamily(ideal.g, order_bound,
                           lift(ideal.UU), lift(ideal.UV), lift(ideal.VV))


def perturb_hyperelliptic(g: int, h: BinaryForm, d: int, order_bound: int,
                          odd_direction) -> TruncatedFamily:
    """Add pi^d times v-linear forms to the pure-u equations of v^2 = h.

    `odd_direction` is a list aligned with uu_keys(g); entries are v-linear
    forms or None.  The result reduces to the hyperelliptic model mod pi^d
    and, when some entry is nonzero, stops being hyperelliptic at order d+1.
    """
    if d < 1:
        raise ValueError("perturbation order d must be at least 1")
    if order_bound <= 2 * d:
        raise ValueError("order bound %d must exceed 2d = %d" % (order_bound, 2 * d))
    keys = uu_keys(g)
    if len(odd_direction) != len(keys):
        raise ValueError("expected %d odd direction entries" % len(keys))
    model = constant_family(hyperelliptic_model(g, h), order_bound)
    uu = []
    for (key, p), ell in zip(model.UU, odd_direction):
        if ell is None:
            ell = WPoly.zero(g)
        if ell:
            _check_v_linear(ell)
            p = p + _lift_poly(ell, order_bound, shift=d)
        uu.append((key, p))
    return TruncatedFamily(g, order_bound, uu, model.UV, model.VV)


def rescale_v(family: TruncatedFamily, k: int) -> TruncatedFamily:
    """Substitute v -> v/pi^k and clear the forced denominators groupwise.

    Each group is multiplied back by the power of pi that returns its base
    term to level pi^0: UU by pi^0, UV by pi^k, VV by pi^{2k}.  A term with
    b v-factors therefore shifts by pi^(mult - k*b), and the shift must be
    exact, which for k > 0 constrains exactly the v-linear parts of the UU
    equations.  The order bound drops by the largest power divided out of
    any coefficient slot: k when k > 0, 2|k| when k < 0.
    """
    if k == 0:
        return family
    drop = k if k > 0 else -2 * k
    n = family.order_bound - drop
    if n < 1:
        raise ValueError("rescaling by k=%d needs order bound above %d" % (k, drop))
    mult = {"UU": 0, "UV": k, "VV": 2 * k}
    groups = {}
    for name in GROUP_NAMES:
        items = []
        for key, p in family.group_items(name):
            terms = {}
            for e, c in p.terms.items():
                s = mult[name] - k * sum(e[family.g:])
                try:
                    shifted = c.shift(s)
                except ValueError:
                    raise ValueError("%s generator %s does not admit the rescaling:"
                                     " a coefficient is not divisible by pi^%d"
                                     % (name, key, -s))
                shifted = shifted.truncate(n)
                if shifted:
                    terms[e] = shifted
            items.append((key, WPoly(family.g, terms)))
        groups[name] = items
    return TruncatedFamily(family.g, n, groups["UU"], groups["UV"], groups["VV"])


def negate_v(family: TruncatedFamily) -> TruncatedFamily:
    """The involution v -> -v with group signs (+1, -1, +1).

    The signs are chosen so that every split-ribbon, canonical-ribbon-base
    and hyperelliptic generator is fixed; only genuinely odd perturbation
    terms change sign.
    """
    def flip(name, p):
        sign = GROUP_SIGNS[name]
        return WPoly(family.g, {
            e: (c if sign * (-1 if sum(e[family.g:]) % 2 else 1) == 1 else -c)
            for e, c in p.terms.items()})
    groups = {name: [(key, flip(name, p)) for key, p in family.group_items(name)]
              for name in GROUP_NAMES}
    return TruncatedFamily(family.g, family.order_bound,
                           groups["UU"], groups["UV"], groups["VV"])


def even_odd_split(family: TruncatedFamily, base: XgIdeal):
    """Split family - base into parts fixed and negated by negate_v.

    Requires the family to reduce to `base` mod pi.  Returns a pair of
    dicts {group name: [(key, poly), ...]} with family = base + even + odd;
    the parts are deviations, not families, since they vanish mod pi.
    """
    fiber = family.special_fiber()
    if not (fiber.g == base.g and fiber.UU == base.UU
            and fiber.UV == base.UV and fiber.VV == base.VV):
        raise ValueError("family does not reduce to the given ideal mod pi")
    n = family.order_bound
    even, odd = {}, {}
    for name in GROUP_NAMES:
        sign = GROUP_SIGNS[name]
        epart, opart = [], []
        for (key, p), (bkey, bp) in zip(family.group_items(name), base.group_items(name)):
            assert key == bkey
            dev = p - _lift_poly(bp, n)
            et, ot = {}, {}
            for e, c in dev.terms.items():
                if sign * (-1 if sum(e[family.g:]) % 2 else 1) == 1:
                    et[e] = c
                else:
                    ot[e] = c
            epart.append((key, WPoly(family.g, et)))
            opart.append((key, WPoly(family.g, ot)))
        even[name] = epart
        odd[name] = opart
    return even, odd


def _shape_order(family: TruncatedFamily, allowed_v_degrees) -> int:
    """Largest m <= order_bound with the reduction mod pi^m in the given shape.

    The shape fixes every generator to its standard base polynomial except
    for deviation monomials whose v-degree is allowed for the group.
    """
    m = family.order_bound
    for name in GROUP_NAMES:
        for key, p in family.group_items(name):
            dev = p - _lift_poly(_BASE_POLY[name](family.g, key), family.order_bound)
            for e, c in dev.terms.items():
                if sum(e[family.g:]) in allowed_v_degrees[name]:
                    continue
                val = c.valuation()
                if val is not None and val < m:
                    m = val
    return m


def ribbon_order(family: TruncatedFamily) -> int:
    """Largest m <= order_bound with the reduction mod pi^m a canonical ribbon.

    Canonical ribbon shape: UU equations are the base pure-u quadrics plus
    arbitrary v-linear terms, UV equations are standard, VV equations are
    exactly v_i*v_j.  Returns the order bound when the shape persists that
    far, so a return value equal to order_bound means "at least", not
    "exactly".
    """
    return _shape_order(family, {"UU": (1,), "UV": (), "VV": ()})


def hyperell_order(family: TruncatedFamily) -> int:
    """Largest m <= order_bound with the reduction mod pi^m hyperelliptic.

    Hyperelliptic shape: UU and UV equations standard, VV equations
    v_i*v_j minus an arbitrary pure-u quartic.
    """
    return _shape_order(family, {"UU": (), "UV": (), "VV": (0,)})


class DiscriminantSection:
    """The binary form of degree 2g+2 extracted from a normalized family."""

    __slots__ = ("g", "s")

    def __init__(self, g: int, s: BinaryForm):
        if s.degree != 2 * g + 2:
            raise ValueError("expected a form of degree %d" % (2 * g + 2))
        self.g = g
        self.s = s

    def __eq__(self, other):
        if not isinstance(other, DiscriminantSection):
            return NotImplemented
        return self.g == other.g and self.s == other.s

    def __repr__(self):
        return "DiscriminantSection(g=%d, s=%r)" % (self.g, self.s)

    def to_json(self):
        return {"g": self.g, "s": self.s.to_json()}

    @classmethod
    def from_json(cls, data) -> "DiscriminantSection":
        return cls(int(data["g"]), BinaryForm.from_json(data["s"]))


def discriminant_section(family: TruncatedFamily) -> DiscriminantSection:
    """Read the degree 2g+2 section off a family in normalized ribbon form.

    The family must be a ribbon to an exact even order 2d below its bound,
    with VV equations v_i*v_j - pi^{2d}*p_ij(u) + higher terms.  Each p_ij
    pulls back to x0^(i+j) * x1^(2g-6-i-j) times a common form s of degree
    2g+2, which is returned; any failure of that pattern is an error.
    """
    g = family.g
    m = ribbon_order(family)
    if m >= family.order_bound:
        raise ValueError("family stays in ribbon form to the truncation bound;"
                         " there is no level to read the section from")
    if m % 2:
        raise ValueError("family leaves ribbon form at odd order %d" % m)
    quotient = None
    for key, p in family.VV:
        i, j = key
        dev = p - _lift_poly(vv_base_poly(g, key), family.order_bound)
        digit = {}
        for e, c in dev.terms.items():
            a = c.coeffs[m]
            if not a:
                continue
            if any(e[g:]):
                raise ValueError("family is not normalized: VV%s has v terms"
                                 " at level pi^%d" % (key, m))
            digit[e] = -a
        p_ij = WPoly(g, digit)
        if not p_ij:
            raise ValueError("family is not normalized: VV%s has no pure-u"
                             " term at level pi^%d" % (key, m))
        pulled = veronese_pullback(p_ij)
        quot = pulled.divide_exact(i + j, 2 * g - 6 - i - j)
        if quotient is None:
            quotient = quot
        elif quotient != quot:
            raise ValueError("family is not normalized: the VV quartics do"
                             " not match a single section")
    return DiscriminantSection(g, quotient)


def binary_discriminant(s: BinaryForm) -> Fraction:
    """Nonzero exactly when s has simple zeros on the projective line.

    Computed as the resultant of the two partial derivatives, divided by
    the x0-leading coefficient when that is nonzero.  Roots at infinity
    need no special handling because the homogeneous resultant sees them.
    """
    if s.is_zero():
        raise ValueError("the zero form has no discriminant")
    if s.degree < 1:
        raise ValueError("the form must have positive degree")
    r = resultant(s.derivative(0), s.derivative(1))
    lead = s.coeff(s.degree)
    return r / lead if lead else r


def base_change_pi_squared(family: TruncatedFamily) -> TruncatedFamily:
    """Reindex coefficients along pi -> pi^2: digit i moves to digit 2i.

    The new bound 2N-1 is exactly what the old digits determine.  Shape
    orders double, capped at the new bound.
    """
    n = 2 * family.order_bound - 1

    def stretch(c: TruncatedScalar) -> TruncatedScalar:
        out = [Fraction(0)] * n
        for i, a in enumerate(c.coeffs):
            out[2 * i] = a
        return TruncatedScalar(out)

    return family._map_polys(n, lambda p: p.map_coeffs(stretch))


def order_doubling_experiment(g: int, h: BinaryForm, d: int, odd_direction) -> dict:
    """Certify that rescaling turns order-d hyperelliptic into order-2d ribbon.

    Builds the perturbed family at order bound 3d+2 (rescaling by d costs d
    digits, and certifying that the ribbon order is exactly 2d rather than
    merely >= 2d needs the rescaled bound to stay above 2d), rescales,
    checks both orders, and reads the section back, which must equal h.
    Raises on any failed check; returns the report as a JSON-ready dict.
    """
    if not any(ell is not None and ell for ell in odd_direction):
        raise ValueError("odd direction must be nonzero")
    order_bound = 3 * d + 2
    family = perturb_hyperelliptic(g, h, d, order_bound, odd_direction)
    found_h = hyperell_order(family)
    if found_h != d:
        raise ArithmeticError("expected hyperelliptic order %d, found %d"
                              % (d, found_h))
    rescaled = rescale_v(family, d)
    found_r = ribbon_order(rescaled)
    if found_r >= rescaled.order_bound:
        raise ArithmeticError("ribbon order not resolved within the bound")
    if found_r != 2 * d:
        raise ArithmeticError("expected ribbon order %d, found %d"
                              % (2 * d, found_r))
    section = discriminant_section(rescaled)
    if section.s != h:
        raise ArithmeticError("extracted section does not match the input form")
    return {
        "g": g,
        "d": d,
        "order_bound": order_bound,
        "hyperell_order": found_h,
        "rescaled_order_bound": rescaled.order_bound,
        "ribbon_order": found_r,
        "section_degree": section.s.degree,
        "section_matches_input": True,
        "binary_discriminant": rat_to_str(binary_discriminant(h)),
    }


def reduction_hilbert_function(family: TruncatedFamily, modulus: int, degrees):
    """Q-dimensions of the quotient slices of the reduction mod pi^modulus.

    Every coefficient contributes `modulus` rational layers, so a family
    that is degreewise free over Q[pi]/(pi^modulus) shows modulus times
    its fiber numbers; drops below that witness a failure of flatness.
    """
    if not 1 <= modulus <= family.order_bound:
        raise ValueError("modulus must lie between 1 and the order bound")
    g = family.g
    gens = [(GROUP_DEGREES[name], p)
            for name in GROUP_NAMES for _, p in family.group_items(name)]
    out = []
    for degree in degrees:
        basis = monomials(g, degree, "weighted")
        index = {e: i for i, e in enumerate(basis)}
        elim = RowEliminator(len(basis) * modulus)
        for weight, p in gens:
            if degree < weight:
                continue
            for mu in monomials(g, degree - weight, "weighted"):
                for layer in range(modulus):
                    row = {}
                    for e, c in p.terms.items():
                        col = index[tuple(a + b for a, b in zip(mu, e))]
                        for t in range(layer, modulus):
                            a = c.coeffs[t - layer]
                            if a:
                                row[col * modulus + t] = a
                    if row:
                        elim.add(row)
        out.append(len(basis) * modulus - elim.rank)
    return out
