"""The sextic Weierstrass model in P(1,1,2,3).

y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with a_i in k[t,s] homogeneous
of degree i.  Invariants use the universal integral formulary (b2 = a1^2 +
4 a2 and so on) evaluated with integer scalars mapped into the coefficient
field, so one code path is correct in characteristics 2 and 3 as well.

The admissible substitution engine implements the coefficient
transformation formulas for the simplified shapes W0/W3/W2/W2' directly and
cross-checks each application by substituting into the defining sextic and
re-reading coefficients.
"""

from dataclasses import dataclass

from .poly import BiPoly, LocalPoly, PositiveDimensionalError

_DEGREES = {"a1": 1, "a2": 2, "a3": 3, "a4": 4, "a6": 6}


class FormMismatchError(ValueError):
    pass


class WeierstrassEq:
    """Sextic (W) over a tower level; coefficients are BiPolys (zero allowed)."""

    __slots__ = ("K", "a1", "a2", "a3", "a4", "a6")

    def __init__(self, K, a1, a2, a3, a4, a6):
        self.K = K
        self.a1, self.a2, self.a3, self.a4, self.a6 = a1, a2, a3, a4, a6
        for name in _DEGREES:
            a = getattr(self, name)
            if not a.is_zero() and a.degree != _DEGREES[name]:
                raise ValueError("deg %s = %s, expected %d"
                                 % (name, a.degree, _DEGREES[name]))

    @staticmethod
    def from_coeff_map(K, coeffs):
        """coeffs: dict name -> BiPoly (missing names are zero)."""
        z = {n: BiPoly.zero(K) for n in _DEGREES}
        z.update(coeffs)
        return WeierstrassEq(K, z["a1"], z["a2"], z["a3"], z["a4"], z["a6"])

    @property
    def p(self):
        return self.K.p

    def coeff_map(self):
        return {"a1": self.a1, "a2": self.a2, "a3": self.a3,
                "a4": self.a4, "a6": self.a6}

    def embed(self, L):
        if L is self.K:
            return self
        return WeierstrassEq(L, *(getattr(self, n).embed(L)
                                  for n in ("a1", "a2", "a3", "a4", "a6")))

    def __eq__(self, other):
        return (isinstance(other, WeierstrassEq) and self.K is other.K
                and all(getattr(self, n) == getattr(other, n) for n in _DEGREES))

    def __hash__(self):
        return hash(tuple(getattr(self, n) for n in _DEGREES))

    def chart_equation(self, chart):
        """Affine surface equation F = 0 in LocalPoly variables.

        chart "s": variables (t, x, y), obtained by setting s = 1;
        chart "t": variables (s, x, y), obtained by setting t = 1.
        """
        K = self.K
        names = ("t", "x", "y") if chart == "s" else ("s", "x", "y")
        terms = {}
        def put(uni, ex, ey, sign):
            for i, c in enumerate(uni):
                if c == K.zero:
                    continue
                key = (i, ex, ey)
                cur = terms.get(key, K.zero)
                val = K.add(cur, c) if sign > 0 else K.sub(cur, c)
                if val == K.zero:
                    terms.pop(key, None)
                else:
                    terms[key] = val
        def uni(a):
            if a.is_zero():
                return []
            return a.dehomogenize_s() if chart == "s" else a.dehomogenize_t()
        put([K.one], 0, 2, +1)
        put(uni(self.a1), 1, 1, +1)
        put(uni(self.a3), 0, 1, +1)
        put([K.one], 3, 0, -1)
        put(uni(self.a2), 2, 0, -1)
        put(uni(self.a4), 1, 0, -1)
        put(uni(self.a6), 0, 0, -1)
        return LocalPoly(K, names, terms)

    def format(self):
        lhs = ["y^2"]
        if not self.a1.is_zero():
            lhs.append(_fmt_coeff_mono(self.a1, "x*y"))
        if not self.a3.is_zero():
            lhs.append(_fmt_coeff_mono(self.a3, "y"))
        rhs = ["x^3"]
        if not self.a2.is_zero():
            rhs.append(_fmt_coeff_mono(self.a2, "x^2"))
        if not self.a4.is_zero():
            rhs.append(_fmt_coeff_mono(self.a4, "x"))
        if not self.a6.is_zero():
            rhs.append(self.a6.format())
        return "%s = %s" % (" + ".join(lhs), " + ".join(rhs))

    def __repr__(self):
        return "WeierstrassEq(%s)" % self.format()


def _fmt_coeff_mono(a, mono):
    s = a.format()
    if s == "1":
        return mono
    if " + " in s:
        return "(%s)*%s" % (s, mono)
    return "%s*%s" % (s, mono)


@dataclass
class SurfaceInvariants:
    b2: BiPoly
    b4: BiPoly
    b6: BiPoly
    b8: BiPoly
    c4: BiPoly
    delta: BiPoly
    j_num: BiPoly       # c4^3, unreduced
    j_den: BiPoly       # delta; the reduced display form comes from j_reduced()

    def j_is_defined(self):
        return not self.delta.is_zero()

    def j_reduced(self):
        """(num, den) with common factors cancelled and den normalized to
        leading coefficient 1; None when delta = 0."""
        if self.delta.is_zero():
            return None
        K = self.delta.K
        num, den = self.j_num, self.j_den
        if num.is_zero():
            return (BiPoly.zero(K), BiPoly.const(K, K.one))
        _un, nf = num.factor()
        _ud, df = den.factor()
        nmap = {f.coeffs: (f, m) for f, m in nf}
        out_n = BiPoly.const(K, _un)
        out_d = BiPoly.const(K, K.one)
        for f, m in df:
            common = nmap.get(f.coeffs)
            cancel = min(m, common[1]) if common else 0
            if common:
                nmap[f.coeffs] = (f, common[1] - cancel)
            if m - cancel:
                out_d = out_d.mul(f.pow(m - cancel))
        for f, m in nmap.values():
            if m:
                out_n = out_n.mul(f.pow(m))
        out_n = out_n.scale(K.inv(_ud))
        lead = out_d.leading_coefficient()
        out_n = out_n.scale(K.inv(lead))
        out_d = out_d.scale(K.inv(lead))
        return out_n, out_d


def compute_invariants(eq):
    """b2, b4, b6, b8, c4, delta and j from the universal integral formulas."""
    a1, a2, a3, a4, a6 = eq.a1, eq.a2, eq.a3, eq.a4, eq.a6
    b2 = _sum(a1.mul(a1), a2.smul(4))
    b4 = _sum(a4.smul(2), a1.mul(a3))
    b6 = _sum(a3.mul(a3), a6.smul(4))
    b8 = _sum(a1.mul(a1).mul(a6), a2.mul(a6).smul(4),
              a1.mul(a3).mul(a4).smul(-1), a2.mul(a3).mul(a3),
              a4.mul(a4).smul(-1))
    c4 = _sum(b2.mul(b2), b4.smul(-24))
    delta = _sum(b2.mul(b2).mul(b8).smul(-1), b4.pow(3).smul(-8),
                 b6.mul(b6).smul(-27), b2.mul(b4).mul(b6).smul(9))
    # standard syzygy, checked on every construction
    lhs = b8.smul(4)
    rhs = _sum(b2.mul(b6), b4.mul(b4).smul(-1))
    if lhs != rhs:
        raise AssertionError("syzygy 4*b8 = b2*b6 - b4^2 violated")
    if not delta.is_zero() and delta.degree != 12:
        raise AssertionError("nonzero discriminant of degree != 12")
    return SurfaceInvariants(b2, b4, b6, b8, c4, delta, c4.pow(3), delta)


def _sum(*forms):
    out = None
    for f in forms:
        if f.is_zero():
            continue
        out = f if out is None else out.add(f)
    return out if out is not None else BiPoly.zero(forms[0].K)


def fibration_kind(eq, singular_points_fn=None):
    """"elliptic", "quasi-elliptic" or "invalid".

    Nonzero discriminant means elliptic.  Vanishing discriminant is
    quasi-elliptic exactly in characteristic 2 or 3 with a finite surface
    singular locus (generic fiber regular); otherwise the input does not
    define an RDP surface.  Finiteness is delegated to the singularity
    module; a different checker can be injected for testing.
    """
    inv = compute_invariants(eq)
    if not inv.delta.is_zero():
        return "elliptic"
    if eq.p not in (2, 3):
        return "invalid"
    if singular_points_fn is None:
        from .singularity import singular_points
        singular_points_fn = singular_points
    try:
        singular_points_fn(eq)
    except PositiveDimensionalError:
        return "invalid"
    return "quasi-elliptic"


# ---------------------------------------------------------------------------
# admissible substitutions
# ---------------------------------------------------------------------------

class Substitution:
    """One admissible change of coordinates.

    kind W0:  x -> l^2 x,      y -> l^3 y                 (p != 2,3)
    kind W3:  x -> l^2 x + f,  y -> l^3 y                 (p = 3, deg f = 2)
    kind W2:  x -> l^2 x,      y -> l^3 y + f x + g       (p = 2, deg f = 1,
                                                           deg g = 3)
    kind W2': x -> l^2 x + f,  y -> l^3 y + g x + h       (p = 2, deg f = 2,
                                                           deg g = 1, deg h = 3)
    kind moebius: (t,s) -> (a t + b s, c t + d s), ad - bc != 0.
    """

    KINDS = ("W0", "W3", "W2", "W2'", "moebius")

    def __init__(self, K, kind, lam=None, f=None, g=None, h=None, matrix=None):
        if kind not in self.KINDS:
            raise ValueError("unknown substitution kind %r" % (kind,))
        self.K = K
        self.kind = kind
        self.lam = lam if lam is not None else K.one
        z = BiPoly.zero(K)
        self.f = f if f is not None else z
        self.g = g if g is not None else z
        self.h = h if h is not None else z
        self.matrix = matrix
        if kind != "moebius":
            if self.lam == K.zero:
                raise ValueError("unit lambda must be nonzero")
            reqs = {"W0": (), "W3": (("f", 2),),
                    "W2": (("f", 1), ("g", 3)),
                    "W2'": (("f", 2), ("g", 1), ("h", 3))}[kind]
            for name, deg in reqs:
                a = getattr(self, name)
                if not a.is_zero() and a.degree != deg:
                    raise ValueError("substitution %s needs deg %s = %d"
                                     % (kind, name, deg))
        else:
            a, b, c, d = matrix
            det = K.sub(K.mul(a, d), K.mul(b, c))
            if det == K.zero:
                raise ValueError("singular Moebius matrix")


def apply_substitution(eq, sub):
    """Transformed equation, exactly per the displayed coefficient formulas,
    cross-checked against generic substitution into the sextic."""
    K = eq.K
    if sub.K is not K:
        raise FormMismatchError("substitution over a different field")
    zero = BiPoly.zero(K)
    if sub.kind == "moebius":
        m = sub.matrix
        out = WeierstrassEq(K, *(getattr(eq, n).subs_linear(m)
                                 for n in ("a1", "a2", "a3", "a4", "a6")))
        return out
    lam = sub.lam
    li = {n: K.pow(K.inv(lam), n) for n in (1, 2, 3, 4, 6)}
    f, g, h = sub.f, sub.g, sub.h
    if sub.kind == "W0":
        if eq.p in (2, 3):
            raise FormMismatchError("W0 substitutions need p != 2,3")
        if not (eq.a1.is_zero() and eq.a2.is_zero() and eq.a3.is_zero()):
            raise FormMismatchError("equation is not in W0 form")
        out = WeierstrassEq(K, zero, zero, zero,
                            eq.a4.scale(li[4]), eq.a6.scale(li[6]))
    elif sub.kind == "W3":
        if eq.p != 3:
            raise FormMismatchError("W3 substitutions need p = 3")
        if not (eq.a1.is_zero() and eq.a3.is_zero()):
            raise FormMismatchError("equation is not in W3 form")
        a2, a4, a6 = eq.a2, eq.a4, eq.a6
        new_a2 = a2.scale(li[2])
        new_a4 = _sum(a4, _nzmul(a2, f).smul(2)).scale(li[4])
        new_a6 = _sum(a6, _nzmul(a4, f), _nzmul(a2, f.mul(f)),
                      f.pow(3)).scale(li[6])
        out = WeierstrassEq(K, zero, new_a2, zero, new_a4, new_a6)
    elif sub.kind == "W2":
        if eq.p != 2:
            raise FormMismatchError("W2 substitutions need p = 2")
        if not eq.a3.is_zero():
            raise FormMismatchError("equation is not in W2 form")
        a1, a2, a4, a6 = eq.a1, eq.a2, eq.a4, eq.a6
        l2 = K.pow(lam, 2)
        l4 = K.pow(lam, 4)
        new_a1 = a1.scale(li[1])
        new_a2 = _sum(a2.scale(l4), _nzmul(a1, f).scale(l2),
                      f.mul(f)).scale(li[6])
        new_a4 = _sum(a4, _nzmul(a1, g)).scale(li[4])
        new_a6 = _sum(a6, g.mul(g)).scale(li[6])
        out = WeierstrassEq(K, new_a1, new_a2, zero, new_a4, new_a6)
    elif sub.kind == "W2'":
        if eq.p != 2:
            raise FormMismatchError("W2' substitutions need p = 2")
        if not eq.a1.is_zero():
            raise FormMismatchError("equation is not in W2' form")
        a2, a3, a4, a6 = eq.a2, eq.a3, eq.a4, eq.a6
        l2 = K.pow(lam, 2)
        l4 = K.pow(lam, 4)
        new_a3 = a3.scale(li[3])
        new_a2 = _sum(a2.scale(l4), g.mul(g), f.scale(l4)).scale(li[6])
        new_a4 = _sum(a4.scale(l2), _nzmul(a3, g),
                      f.mul(f).scale(l2)).scale(li[6])
        new_a6 = _sum(a6, _nzmul(a4, f), _nzmul(a3, h),
                      _nzmul(a2, f.mul(f)), f.pow(3), h.mul(h)).scale(li[6])
        out = WeierstrassEq(K, zero, new_a2, new_a3, new_a4, new_a6)
    else:
        raise FormMismatchError("unsupported kind %r" % (sub.kind,))
    check = _generic_substitution(eq, sub)
    if out != check:
        raise AssertionError("substitution formula disagrees with direct expansion")
    return out


def _nzmul(a, b):
    if a.is_zero() or b.is_zero():
        return BiPoly.zero(a.K)
    return a.mul(b)


def _generic_substitution(eq, sub):
    """Substitute x -> l^2 X + F, y -> l^3 Y + G X + H into the sextic and
    re-read the Weierstrass coefficients of the result (divided by l^6)."""
    K = eq.K
    lam = sub.lam
    if sub.kind == "W0":
        F = G = H = BiPoly.zero(K)
    elif sub.kind == "W3":
        F, G, H = sub.f, BiPoly.zero(K), BiPoly.zero(K)
    elif sub.kind == "W2":
        F, G, H = BiPoly.zero(K), sub.f, sub.g
    elif sub.kind == "W2'":
        F, G, H = sub.f, sub.g, sub.h
    else:
        raise ValueError(sub.kind)
    # work in Z[X, Y] with BiPoly coefficients: key (i, j) -> BiPoly
    def mono(i, j, c):
        return {(i, j): c}
    def mul(P, Q):
        out = {}
        for (i1, j1), c1 in P.items():
            if c1.is_zero():
                continue
            for (i2, j2), c2 in Q.items():
                if c2.is_zero():
                    continue
                key = (i1 + i2, j1 + j2)
                v = c1.mul(c2)
                out[key] = out[key].add(v) if key in out else v
        return out
    def add(P, Q):
        out = dict(P)
        for k, c in Q.items():
            out[k] = out[k].add(c) if k in out else c
        return {k: c for k, c in out.items() if not c.is_zero()}
    def scale(P, c):
        return {k: v.mul(c) for k, v in P.items()}
    one = BiPoly.const(K, K.one)
    l2 = BiPoly.const(K, K.pow(lam, 2))
    l3 = BiPoly.const(K, K.pow(lam, 3))
    ximg = add(mono(1, 0, l2), mono(0, 0, F) if not F.is_zero() else {})
    yimg = add(add(mono(0, 1, l3),
                   mono(1, 0, G) if not G.is_zero() else {}),
               mono(0, 0, H) if not H.is_zero() else {})
    def power(P, n):
        out = mono(0, 0, one)
        for _ in range(n):
            out = mul(out, P)
        return out
    E = {}
    # y^2 + a1 xy + a3 y - x^3 - a2 x^2 - a4 x - a6
    E = add(E, power(yimg, 2))
    if not eq.a1.is_zero():
        E = add(E, scale(mul(ximg, yimg), eq.a1))
    if not eq.a3.is_zero():
        E = add(E, scale(yimg, eq.a3))
    E = add(E, scale(power(ximg, 3), BiPoly.const(K, K.from_int(-1))))
    for a, n in ((eq.a2, 2), (eq.a4, 1), (eq.a6, 0)):
        if not a.is_zero():
            E = add(E, scale(power(ximg, n), a.neg()))
    l6inv = BiPoly.const(K, K.inv(K.pow(lam, 6)))
    E = scale(E, l6inv)
    def coeff(i, j):
        return E.get((i, j), BiPoly.zero(K))
    if coeff(0, 2) != one or coeff(3, 0).neg() != one:
        raise AssertionError("substitution did not preserve the sextic shape")
    for (i, j) in E:
        if (i, j) not in ((0, 2), (1, 1), (0, 1), (3, 0), (2, 0), (1, 0), (0, 0)):
            raise AssertionError("unexpected monomial x^%d y^%d" % (i, j))
    return WeierstrassEq(K, coeff(1, 1), coeff(2, 0).neg(), coeff(0, 1),
                         coeff(1, 0).neg(), coeff(0, 0).neg())
