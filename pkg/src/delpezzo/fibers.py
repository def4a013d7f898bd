"""Kodaira fiber classification via Tate's algorithm, at every place of P^1.

A place is an irreducible homogeneous factor of the discriminant over the
equation's coefficient field.  The equation is localized at the place by
passing to the affine chart where the place is finite (the place [s] is
handled in the chart t = 1, everything else in s = 1), shifting a chosen
root to the origin, and working with exact polynomials in the uniformizer
over a tower level.

The algorithm runs the full Tate step sequence with valuation tests on the
a_i and b_i; all root-multiplicity and square-root decisions use exact
factorization over the residue level, never the characteristic-0 shortcut
via v(c4) (which fails in characteristics 2 and 3).
"""

from dataclasses import dataclass, field

from . import gf
from .gf import (factor_univariate, padd, pdeg, pembed, peval, pgcd, pmul,
                 pneg, pscale, pshift, psub, roots_in)
from .poly import BiPoly
from .rdp import RdpClass, dynkin_multiset
from .weierstrass import compute_invariants


class NotRationalEllipticError(RuntimeError):
    pass


@dataclass
class Place:
    """A closed point of P^1: an irreducible homogeneous form plus splitting
    data (the chart where it is finite, a residue level and a root)."""
    form: BiPoly
    multiplicity: int          # multiplicity in the discriminant
    degree: int
    chart: str                 # "s": uniformizer t - alpha; "t": uniformizer s
    level: object              # residue tower level containing alpha
    alpha: object              # root of form(t, 1) in level (zero for chart "t")

    def name(self):
        return "[%s]" % self.form.format()

    def contains_chart_point(self, chart, coord, lev):
        """Does this place vanish at the given chart coordinate?"""
        if chart != self.chart:
            return False
        K = self.form.K
        f = (self.form.dehomogenize_s() if self.chart == "s"
             else self.form.dehomogenize_t())
        return peval(lev, pembed(lev, f, K), coord) == lev.zero


@dataclass(frozen=True)
class KodairaType:
    symbol: str                # "I0", "In", "II", "III", "IV", "In*", ...
    n: int = 0

    def __post_init__(self):
        if self.symbol == "In" and self.n < 1:
            raise ValueError("type In needs n >= 1")
        if self.symbol == "In*" and self.n < 0:
            raise ValueError("type In* needs n >= 0")

    def render(self):
        if self.symbol == "In":
            return "I%d" % self.n
        if self.symbol == "In*":
            return "I%d*" % self.n
        return self.symbol

    def components(self):
        return {"I0": 1, "II": 1, "III": 2, "IV": 3,
                "IV*": 7, "III*": 8, "II*": 9}.get(
            self.symbol, self.n if self.symbol == "In" else 5 + self.n)

    def rdp(self):
        """The rational double point under the contracted fiber (Dynkin data
        only; the Artin coindex comes from the singularity module).  None for
        a fiber whose image point is smooth (A0)."""
        if self.symbol == "In":
            return ("A", self.n - 1) if self.n >= 2 else None
        return {"I0": None, "II": None, "III": ("A", 1), "IV": ("A", 2),
                "IV*": ("E", 6), "III*": ("E", 7), "II*": ("E", 8),
                "In*": ("D", 4 + self.n)}[self.symbol]


@dataclass
class FiberConfiguration:
    places: list               # of (Place, KodairaType, components, v_delta)
    gamma_prime: tuple         # sorted ((letter, rank) ...) with multiplicity
    mw_rank: int

    def total_v_delta(self):
        return sum(pl.degree * v for pl, _k, _c, v in self.places)


def places_of_discriminant(inv):
    """Factor the discriminant into places, chart chosen so each is finite."""
    if inv.delta.is_zero():
        raise ValueError("quasi-elliptic or invalid")
    K = inv.delta.K
    unit, facs = inv.delta.factor()
    out = []
    for form, mult in facs:
        is_s = form.degree == 1 and form.coeffs[0] == K.zero
        if is_s:
            out.append(Place(form, mult, 1, "t", K, K.zero))
            continue
        f = form.dehomogenize_s()
        if pdeg(f) == 1:
            lev, alpha = K, K.neg(f[0])
        else:
            lev = K.extend_canonical(pdeg(f))
            rr = roots_in(lev, pembed(lev, f, K))
            alpha = rr[0]
        out.append(Place(form, mult, form.degree, "s", lev, alpha))
    return out


def localize(eq, place):
    """Dense polynomials [a1,...,a4,a6] in the uniformizer over place.level."""
    L = place.level
    out = []
    for name in ("a1", "a2", "a3", "a4", "a6"):
        a = getattr(eq, name)
        if a.is_zero():
            out.append([])
            continue
        ae = a.embed(L)
        f = ae.dehomogenize_s() if place.chart == "s" else ae.dehomogenize_t()
        if place.chart == "s" and place.alpha != L.zero:
            f = pshift(L, f, place.alpha)
        out.append(f)
    return out


def _val(f):
    for i, c in enumerate(f):
        if not _is_zero_elem(c):
            return i
    return 10 ** 9


def _is_zero_elem(c):
    return c == 0 or (isinstance(c, tuple) and all(_is_zero_elem(x) for x in c))


def _coef(K, f, k):
    return f[k] if k < len(f) else K.zero


def _translate(K, a, r=None, s=None, t=None):
    """Apply x -> x + r, y -> y + s*x + t to [a1,a2,a3,a4,a6] (pi-polys)."""
    zero = []
    r = r or zero
    s = s or zero
    t = t or zero
    a1, a2, a3, a4, a6 = a
    def m(f, g):
        return pmul(K, f, g)
    def sm(n, f):
        return pscale(K, K.from_int(n), f)
    na1 = padd(K, a1, sm(2, s))
    na2 = psub(K, padd(K, a2, sm(3, r)), padd(K, m(s, a1), m(s, s)))
    na3 = padd(K, padd(K, a3, m(r, a1)), sm(2, t))
    na4 = psub(K, padd(K, padd(K, a4, sm(2, m(r, a2))), sm(3, m(r, r))),
               padd(K, padd(K, m(s, a3), m(padd(K, t, m(r, s)), a1)),
                    sm(2, m(s, t))))
    na6 = psub(K, padd(K, padd(K, a6, m(r, a4)),
                       padd(K, m(m(r, r), a2), m(m(r, r), r))),
               padd(K, padd(K, m(t, a3), m(t, t)), m(m(r, t), a1)))
    return [na1, na2, na3, na4, na6]


def _shift_down(K, a):
    """Non-minimal restart: a_i -> a_i / pi^i."""
    out = []
    for f, i in zip(a, (1, 2, 3, 4, 6)):
        if not f:
            out.append([])
            continue
        if _val(f) < i:
            raise ArithmeticError("inexact division in non-minimal restart")
        out.append(f[i:])
    return out


def _b_polys(K, a):
    a1, a2, a3, a4, a6 = a
    def m(f, g):
        return pmul(K, f, g)
    def sm(n, f):
        return pscale(K, K.from_int(n), f)
    b2 = padd(K, m(a1, a1), sm(4, a2))
    b4 = padd(K, sm(2, a4), m(a1, a3))
    b6 = padd(K, m(a3, a3), sm(4, a6))
    b8 = padd(K, padd(K, m(m(a1, a1), a6), sm(4, m(a2, a6))),
              padd(K, psub(K, m(a2, m(a3, a3)), m(m(a1, a3), a4)),
                   pneg(K, m(a4, a4))))
    return b2, b4, b6, b8


def _delta_poly(K, a):
    b2, b4, b6, b8 = _b_polys(K, a)
    def m(f, g):
        return pmul(K, f, g)
    def sm(n, f):
        return pscale(K, K.from_int(n), f)
    t1 = pneg(K, m(m(b2, b2), b8))
    t2 = sm(-8, m(b4, m(b4, b4)))
    t3 = sm(-27, m(b6, b6))
    t4 = sm(9, m(b2, m(b4, b6)))
    return padd(K, padd(K, t1, t2), padd(K, t3, t4))


def _reduction_singular_point(K, a):
    """Singular point (x0, y0) in K^2 of the reduced Weierstrass cubic."""
    p = K.p
    a1, a2, a3, a4, a6 = (_coef(K, f, 0) for f in a)
    if p != 2:
        # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6: x0 is the
        # multiple root of the right-hand cubic
        b2 = K.add(K.mul(a1, a1), K.smul(4, a2))
        b4 = K.add(K.smul(2, a4), K.mul(a1, a3))
        b6 = K.add(K.mul(a3, a3), K.smul(4, a6))
        g = [b6, K.smul(2, b4), b2, K.from_int(4)]
        gg = pgcd(K, g, gf.pderiv(K, g))
        rr = roots_in(K, gg)
        if not rr:
            raise AssertionError("no rational singular point on the reduction")
        x0 = rr[0]
        y0 = K.neg(K.div(K.add(K.mul(a1, x0), a3), K.from_int(2)))
        return x0, y0
    if a1 != K.zero:
        x0 = K.div(a3, a1)
        y0 = K.div(K.add(K.mul(x0, x0), a4), a1)
        return x0, y0
    if a3 != K.zero:
        raise AssertionError("reduction is nonsingular")
    x0 = K.sqrt(a4)
    rhs = K.add(K.add(K.mul(K.mul(x0, x0), K.add(x0, a2)), K.mul(a4, x0)), a6)
    y0 = K.sqrt(rhs)
    return x0, y0


def _quadratic_separable(K, b, c):
    """Is Y^2 + b Y - c separable?  If not, return (False, double root)."""
    if K.p == 2:
        if b != K.zero:
            return True, None
        return False, K.sqrt(c)
    disc = K.add(K.mul(b, b), K.smul(4, c))
    if disc != K.zero:
        return True, None
    return False, K.neg(K.div(b, K.from_int(2)))


def _quadratic2_separable(K, a, b, c):
    """Same for a T^2 + b T + c with a != 0."""
    if K.p == 2:
        if b != K.zero:
            return True, None
        return False, K.sqrt(K.div(c, a))
    disc = K.sub(K.mul(b, b), K.smul(4, K.mul(a, c)))
    if disc != K.zero:
        return True, None
    return False, K.neg(K.div(b, K.smul(2, a)))


def tate_classify(eq, place):
    """(KodairaType, component count, local v(Delta)) at the place."""
    K = place.level
    a = localize(eq, place)
    delta = _delta_poly(K, a)
    v_delta_orig = _val(delta)
    if not delta:
        raise ValueError("discriminant vanishes identically")
    for _restart in range(6):
        delta = _delta_poly(K, a)
        vd = _val(delta)
        if vd == 0:
            return KodairaType("I0"), 1, v_delta_orig
        # step 2: move the singular point of the reduction to the origin
        x0, y0 = _reduction_singular_point(K, a)
        a = _translate(K, a, r=[x0], t=[y0])
        b2, b4, b6, b8 = _b_polys(K, a)
        if _val(b2) == 0:
            kt = KodairaType("In", n=vd)
            return kt, kt.components(), v_delta_orig
        # step 3
        if _val(a[4]) < 2:
            return KodairaType("II"), 1, v_delta_orig
        # step 4
        if _val(b8) < 3:
            return KodairaType("III"), 2, v_delta_orig
        # step 5
        if _val(b6) < 3:
            return KodairaType("IV"), 3, v_delta_orig
        # step 6 normalization: pi | a1, a2; pi^2 | a3, a4; pi^3 | a6
        if K.p != 2:
            half = K.inv(K.from_int(2))
            s_poly = pscale(K, K.neg(half), a[0])
            t_poly = pscale(K, K.neg(half), a[2])
            a = _translate(K, a, s=s_poly, t=t_poly)
        else:
            if _val(a[1]) == 0:
                sbar = K.sqrt(_coef(K, a[1], 0))
                a = _translate(K, a, s=[sbar])
            if _val(a[4]) == 2:
                gam = K.sqrt(_coef(K, a[4], 2))
                a = _translate(K, a, t=[K.zero, gam])
        if not (_val(a[0]) >= 1 and _val(a[1]) >= 1 and _val(a[2]) >= 2
                and _val(a[3]) >= 2 and _val(a[4]) >= 3):
            raise AssertionError("Tate normalization failed")
        # step 6: the cubic P(T) = T^3 + a2,1 T^2 + a4,2 T + a6,3
        P = [_coef(K, a[4], 3), _coef(K, a[3], 2), _coef(K, a[1], 1), K.one]
        _u, facs = factor_univariate(K, P)
        mults = sorted(m for _f, m in facs)
        if all(m == 1 for m in mults):  # separable over the closure
            return KodairaType("In*", n=0), 5, v_delta_orig
        if mults == [1, 2]:
            double = next(f for f, m in facs if m == 2)
            r0 = K.neg(double[0])
            a = _translate(K, a, r=[K.zero, r0])
            kt = _istar_loop(K, a)
            return kt, kt.components(), v_delta_orig
        # triple root
        triple = next(f for f, m in facs if m == 3)
        r0 = K.neg(triple[0])
        a = _translate(K, a, r=[K.zero, r0])
        # step 8: Y^2 + a3,2 Y - a6,4
        sep, double = _quadratic_separable(
            K, _coef(K, a[2], 2), K.neg(_coef(K, a[4], 4)))
        if sep:
            return KodairaType("IV*"), 7, v_delta_orig
        a = _translate(K, a, t=[K.zero, K.zero, double])
        # step 9
        if _val(a[3]) == 3:
            return KodairaType("III*"), 8, v_delta_orig
        # step 10
        if _val(a[4]) == 5:
            return KodairaType("II*"), 9, v_delta_orig
        # step 11: non-minimal; undress and restart
        a = _shift_down(K, a)
    raise NotRationalEllipticError("not a rational elliptic surface")


def _istar_loop(K, a):
    """Sub-loop for type In*, n >= 1, entered with the double root of P at
    T = 0 (v(a2) = 1, v(a3) >= 2, v(a4) >= 3, v(a6) >= 4)."""
    n = 1
    mx = 2
    my = 2
    for _ in range(40):
        sep, double = _quadratic_separable(
            K, _coef(K, a[2], my), K.neg(_coef(K, a[4], 2 * my)))
        if sep:
            return KodairaType("In*", n=n)
        shift = [K.zero] * my + [double]
        a = _translate(K, a, t=shift)
        n += 1
        sep, double = _quadratic2_separable(
            K, _coef(K, a[1], 1), _coef(K, a[3], mx + 1), _coef(K, a[4], 2 * mx + 1))
        if sep:
            return KodairaType("In*", n=n)
        shift = [K.zero] * mx + [double]
        a = _translate(K, a, r=shift)
        n += 1
        mx += 1
        my += 1
    raise NotRationalEllipticError("In* sub-loop failed to terminate")


def fiber_configuration(eq):
    """Classify every place of the discriminant; attach Gamma' and MW rank."""
    inv = compute_invariants(eq)
    places = places_of_discriminant(inv)
    out = []
    gamma = []
    for pl in places:
        kt, comps, vd = tate_classify(eq, pl)
        if vd != pl.multiplicity:
            raise AssertionError("local v(Delta) disagrees with factorization")
        out.append((pl, kt, comps, vd))
        r = kt.rdp()
        if r is not None:
            gamma.extend([r] * pl.degree)
    gp = dynkin_multiset(tuple(RdpClass(l, r) for l, r in gamma))
    rank = sum(r for _l, r in gp)
    if rank > 8:
        raise AssertionError("fiber configuration of rank > 8")
    cfg = FiberConfiguration(out, gp, 8 - rank)
    if cfg.total_v_delta() != 12:
        raise AssertionError("sum of v(Delta) over places is not 12")
    return cfg
