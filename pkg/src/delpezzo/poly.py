"""Polynomial algebra on top of the field towers.

Two polynomial shapes cover everything the surface pipeline needs:

* BiPoly -- homogeneous binary forms in (t, s) over a tower level; these
  carry the Weierstrass coefficients a_1..a_6 and derived quantities such as
  the discriminant.
* LocalPoly -- sparse polynomials in up to three named variables over a
  tower level; these carry surface chart equations, local singularity
  equations and Jacobian systems.

`eliminate` solves zero-dimensional systems of LocalPolys over the algebraic
closure by iterated resultants, extending the field tower as needed, and
reports "positive-dimensional" when finiteness cannot be certified.
"""

from . import gf
from .gf import factor_univariate, pdeg, pgcd, splitting_roots


class PositiveDimensionalError(RuntimeError):
    """The solution set is (or could not be certified not to be) infinite."""


# ---------------------------------------------------------------------------
# homogeneous binary forms
# ---------------------------------------------------------------------------

class BiPoly:
    """Homogeneous form in (t, s) over a tower level.

    coeffs[j] is the coefficient of t^(d-j) * s^j.  The zero form carries
    degree None and an empty coefficient list.
    """

    __slots__ = ("K", "degree", "coeffs")

    def __init__(self, K, degree, coeffs):
        self.K = K
        if coeffs and all(c == K.zero for c in coeffs):
            coeffs = []
        if not coeffs:
            self.degree = None
            self.coeffs = ()
        else:
            if len(coeffs) != degree + 1:
                raise ValueError("coefficient list does not match degree")
            self.degree = degree
            self.coeffs = tuple(coeffs)

    @staticmethod
    def zero(K):
        return BiPoly(K, None, ())

    @staticmethod
    def monomial(K, c, i, j):
        """c * t^i * s^j."""
        if c == K.zero:
            return BiPoly.zero(K)
        d = i + j
        coeffs = [K.zero] * (d + 1)
        coeffs[j] = c
        return BiPoly(K, d, coeffs)

    @staticmethod
    def const(K, c):
        return BiPoly.monomial(K, c, 0, 0)

    def is_zero(self):
        return self.degree is None

    def __eq__(self, other):
        return (isinstance(other, BiPoly) and self.K is other.K
                and self.degree == other.degree and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((id(self.K), self.degree, self.coeffs))

    def embed(self, L):
        if L is self.K:
            return self
        return BiPoly(L, self.degree,
                      [L.embed(c, self.K) for c in self.coeffs])

    def add(self, other):
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.degree != other.degree:
            raise ValueError("adding forms of different degrees")
        K = self.K
        return BiPoly(K, self.degree,
                      [K.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def sub(self, other):
        return self.add(other.neg())

    def neg(self):
        K = self.K
        return BiPoly(K, self.degree, [K.neg(c) for c in self.coeffs])

    def mul(self, other):
        if self.is_zero() or other.is_zero():
            return BiPoly.zero(self.K)
        K = self.K
        d = self.degree + other.degree
        out = [K.zero] * (d + 1)
        for j, a in enumerate(self.coeffs):
            if a == K.zero:
                continue
            for k, b in enumerate(other.coeffs):
                out[j + k] = K.add(out[j + k], K.mul(a, b))
        return BiPoly(K, d, out)

    def scale(self, c):
        if c == self.K.zero or self.is_zero():
            return BiPoly.zero(self.K)
        K = self.K
        return BiPoly(K, self.degree, [K.mul(c, x) for x in self.coeffs])

    def smul(self, n):
        return self.scale(self.K.from_int(n))

    def pow(self, n):
        r = BiPoly.const(self.K, self.K.one)
        b = self
        while n:
            if n & 1:
                r = r.mul(b)
            b = b.mul(b)
            n >>= 1
        return r

    def evaluate(self, t0, s0):
        K = self.K
        if self.is_zero():
            return K.zero
        acc = K.zero
        tpow = K.one
        spows = [K.one]
        for _ in range(self.degree):
            spows.append(K.mul(spows[-1], s0))
        for j in range(self.degree, -1, -1):
            c = self.coeffs[j]
            if c != K.zero:
                acc = K.add(acc, K.mul(K.mul(c, tpow), spows[j]))
            tpow = K.mul(tpow, t0)
        return acc

    def subs_linear(self, m):
        """Apply (t, s) -> (a t + b s, c t + d s) given m = (a, b, c, d)."""
        K = self.K
        if self.is_zero():
            return self
        a, b, c, d = m
        t_img = BiPoly(K, 1, [a, b])
        s_img = BiPoly(K, 1, [c, d])
        out = BiPoly.zero(K)
        for j, cf in enumerate(self.coeffs):
            if cf == K.zero:
                continue
            term = BiPoly.const(K, cf).mul(t_img.pow(self.degree - j)).mul(s_img.pow(j))
            out = term if out.is_zero() else out.add(term)
        return out

    def dehomogenize_s(self):
        """Univariate in t: f(t) = F(t, 1), ascending coefficients."""
        if self.is_zero():
            return []
        K = self.K
        out = [K.zero] * (self.degree + 1)
        for j, c in enumerate(self.coeffs):
            out[self.degree - j] = c
        return gf._ptrim(K, out)

    def dehomogenize_t(self):
        """Univariate in s: f(s) = F(1, s), ascending coefficients."""
        if self.is_zero():
            return []
        return gf._ptrim(self.K, list(self.coeffs))

    def leading_coefficient(self):
        """Coefficient of the canonically-first nonzero monomial (t-power first)."""
        for c in self.coeffs:
            if c != self.K.zero:
                return c
        raise ValueError("zero form")

    def monic(self):
        return self.scale(self.K.inv(self.leading_coefficient()))

    def factor(self):
        """Factor into irreducible homogeneous forms over the coefficient level.

        Returns (unit, [(BiPoly irreducible monic-normalized form, mult)]),
        sorted with the place [t] first, then [s], then by (degree, key).
        Raises ZeroDivisionError on the zero form.
        """
        if self.is_zero():
            raise ZeroDivisionError("identically zero")
        K = self.K
        f = self.dehomogenize_s()
        s_mult = self.degree - pdeg(f)
        unit, facs = factor_univariate(K, f)
        out = []
        if s_mult:
            out.append((BiPoly.monomial(K, K.one, 0, 1), s_mult))
        for g, m in facs:
            d = pdeg(g)
            coeffs = [K.zero] * (d + 1)
            # g = sum g_i t^i -> homogeneous sum g_i t^i s^(d-i)
            for i, c in enumerate(g):
                coeffs[d - i] = c
            out.append((BiPoly(K, d, coeffs), m))
        def place_key(fm):
            form, _ = fm
            is_t = form.degree == 1 and form.coeffs[1] == K.zero
            is_s = form.degree == 1 and form.coeffs[0] == K.zero
            return (0 if is_t else 1 if is_s else 2,
                    form.degree, tuple(K.key(c) for c in form.coeffs))
        out.sort(key=place_key)
        return unit, out

    def format(self, tname="t", sname="s"):
        if self.is_zero():
            return "0"
        K = self.K
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == K.zero:
                continue
            i = self.degree - j
            bits = []
            cs = K.format(c)
            if cs != "1" or (i == 0 and j == 0):
                bits.append("(%s)" % cs if "+" in cs else cs)
            if i:
                bits.append(tname if i == 1 else "%s^%d" % (tname, i))
            if j:
                bits.append(sname if j == 1 else "%s^%d" % (sname, j))
            parts.append("*".join(bits))
        return " + ".join(parts)

    def __repr__(self):
        return "BiPoly(%s)" % self.format()


def bipoly_from_int_coeffs(K, degree, pairs):
    """Build sum c * t^i s^j from (c, i, j) integer-coefficient triples."""
    out = BiPoly.zero(K)
    for c, i, j in pairs:
        if i + j != degree:
            raise ValueError("inhomogeneous term")
        term = BiPoly.monomial(K, K.from_int(c), i, j)
        out = term if out.is_zero() else out.add(term)
    return out


# ---------------------------------------------------------------------------
# sparse local polynomials in named variables
# ---------------------------------------------------------------------------

class LocalPoly:
    """Sparse polynomial over a tower level in the variables `vars`.

    terms maps exponent tuples to nonzero coefficients; the term order used
    for printing and canonical keys is (total degree, exponent tuple).
    Weights are carried for weighted-degree checks but default to 1.
    """

    __slots__ = ("K", "vars", "terms", "weights")

    def __init__(self, K, vars, terms, weights=None):
        self.K = K
        self.vars = tuple(vars)
        self.weights = tuple(weights) if weights else (1,) * len(self.vars)
        clean = {e: c for e, c in terms.items() if c != K.zero}
        self.terms = clean

    @staticmethod
    def zero(K, vars, weights=None):
        return LocalPoly(K, vars, {}, weights)

    @staticmethod
    def const(K, vars, c, weights=None):
        return LocalPoly(K, vars, {(0,) * len(vars): c}, weights)

    @staticmethod
    def var(K, vars, name, weights=None):
        e = [0] * len(vars)
        e[list(vars).index(name)] = 1
        return LocalPoly(K, vars, {tuple(e): K.one}, weights)

    def monomial(self, c, exps):
        return LocalPoly(self.K, self.vars, {tuple(exps): c}, self.weights)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, LocalPoly) and self.K is other.K
                and self.vars == other.vars and self.terms == other.terms)

    def __hash__(self):
        return hash((id(self.K), self.vars, frozenset(self.terms.items())))

    def _binop(self, other, op):
        K = self.K
        out = dict(self.terms)
        for e, c in other.terms.items():
            cur = out.get(e, K.zero)
            val = op(cur, c)
            if val == K.zero:
                out.pop(e, None)
            else:
                out[e] = val
        return LocalPoly(K, self.vars, out, self.weights)

    def add(self, other):
        return self._binop(other, self.K.add)

    def sub(self, other):
        return self._binop(other, self.K.sub)

    def neg(self):
        K = self.K
        return LocalPoly(K, self.vars, {e: K.neg(c) for e, c in self.terms.items()},
                         self.weights)

    def mul(self, other):
        K = self.K
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = K.mul(c1, c2)
                cur = out.get(e)
                if cur is None:
                    out[e] = v
                else:
                    s = K.add(cur, v)
                    if s == K.zero:
                        del out[e]
                    else:
                        out[e] = s
        return LocalPoly(K, self.vars, out, self.weights)

    def scale(self, c):
        K = self.K
        if c == K.zero:
            return LocalPoly.zero(K, self.vars, self.weights)
        return LocalPoly(K, self.vars, {e: K.mul(c, v) for e, v in self.terms.items()},
                         self.weights)

    def smul(self, n):
        return self.scale(self.K.from_int(n))

    def pow(self, n):
        r = LocalPoly.const(self.K, self.vars, self.K.one, self.weights)
        b = self
        while n:
            if n & 1:
                r = r.mul(b)
            b = b.mul(b)
            n >>= 1
        return r

    def embed(self, L):
        if L is self.K:
            return self
        K = self.K
        return LocalPoly(L, self.vars,
                         {e: L.embed(c, K) for e, c in self.terms.items()},
                         self.weights)

    def partial(self, name):
        K = self.K
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            v = K.smul(e[i], c)
            if v == K.zero:
                continue
            e2 = list(e)
            e2[i] -= 1
            out[tuple(e2)] = v
        return LocalPoly(K, self.vars, out, self.weights)

    def order(self):
        """Minimal total degree of a term (None for the zero polynomial)."""
        if not self.terms:
            return None
        return min(sum(e) for e in self.terms)

    def total_degree(self):
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def weighted_degrees(self):
        return {sum(w * x for w, x in zip(self.weights, e))
                for e in self.terms}

    def degree_in(self, name):
        i = self.vars.index(name)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def evaluate(self, point):
        """Evaluate at a full point (tuple of elements, one per variable)."""
        K = self.K
        acc = K.zero
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = K.mul(v, K.pow(x, k))
            acc = K.add(acc, v)
        return acc

    def subs(self, assignment):
        """Substitute LocalPolys (same ring) for variables named in assignment."""
        K = self.K
        out = LocalPoly.zero(K, self.vars, self.weights)
        images = []
        for i, name in enumerate(self.vars):
            if name in assignment:
                images.append(assignment[name])
            else:
                images.append(LocalPoly.var(K, self.vars, name, self.weights))
        cache = {}
        for e, c in self.terms.items():
            term = LocalPoly.const(K, self.vars, c, self.weights)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = images[i].pow(k)
                    term = term.mul(cache[key])
            out = out.add(term)
        return out

    def translate(self, point):
        """Shift each variable by a constant: f(v1 + c1, ...)."""
        K = self.K
        assign = {}
        for name, c in zip(self.vars, point):
            v = LocalPoly.var(K, self.vars, name, self.weights)
            if c != K.zero:
                assign[name] = v.add(LocalPoly.const(K, self.vars, c, self.weights))
        return self.subs(assign) if assign else self

    def divide_by_var_power(self, name, k):
        """Exact division by name^k."""
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise ArithmeticError("inexact division by %s^%d" % (name, k))
            e2 = list(e)
            e2[i] -= k
            out[tuple(e2)] = c
        return LocalPoly(self.K, self.vars, out, self.weights)

    def as_univariate(self, name):
        """View as univariate in `name` with LocalPoly coefficients
        (ascending list; coefficients do not involve `name`)."""
        i = self.vars.index(name)
        d = self.degree_in(name)
        coeffs = [dict() for _ in range(d + 1)] if d >= 0 else []
        for e, c in self.terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            coeffs[k][tuple(e2)] = c
        return [LocalPoly(self.K, self.vars, t, self.weights) for t in coeffs]

    @staticmethod
    def from_univariate(K, vars, name, coeffs, weights=None):
        i = list(vars).index(name)
        out = {}
        for k, cp in enumerate(coeffs):
            for e, c in cp.terms.items():
                e2 = list(e)
                e2[i] += k
                out[tuple(e2)] = c
        return LocalPoly(K, vars, out, weights)

    def to_univariate_dense(self, name):
        """For polynomials involving only `name`: dense coefficient list."""
        i = self.vars.index(name)
        d = self.degree_in(name)
        out = [self.K.zero] * (d + 1) if d >= 0 else []
        for e, c in self.terms.items():
            if any(e[j] for j in range(len(e)) if j != i):
                raise ValueError("polynomial involves other variables")
            out[e[i]] = c
        return gf._ptrim(self.K, out)

    def variables_present(self):
        out = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    out.add(self.vars[i])
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda ec: (sum(ec[0]), ec[0]))

    def key(self):
        K = self.K
        return tuple((e, K.key(c)) for e, c in self.sorted_terms())

    def format(self):
        if not self.terms:
            return "0"
        K = self.K
        parts = []
        for e, c in self.sorted_terms():
            bits = []
            cs = K.format(c)
            if cs != "1" or not any(e):
                bits.append("(%s)" % cs if "+" in cs else cs)
            for name, k in zip(self.vars, e):
                if k:
                    bits.append(name if k == 1 else "%s^%d" % (name, k))
            parts.append("*".join(bits))
        return " + ".join(parts)

    def __repr__(self):
        return "LocalPoly(%s)" % self.format()


# ---------------------------------------------------------------------------
# resultants of LocalPolys
# ---------------------------------------------------------------------------

def _upoly_trim(polys):
    while polys and polys[-1].is_zero():
        polys.pop()
    return polys

def _upoly_mul(a, b, zero):
    if not a or not b:
        return []
    out = [zero for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j].add(x.mul(y))
    return _upoly_trim(out)

def _upoly_scale(a, c):
    return _upoly_trim([x.mul(c) for x in a])

def _upoly_sub(a, b, zero):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else zero
        y = b[i] if i < len(b) else zero
        out.append(x.sub(y))
    return _upoly_trim(out)

def _pseudo_rem(f, g, zero):
    """Pseudo-remainder: lc(g)^(deg f - deg g + 1) * f  mod  g."""
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    e = len(f) - len(g) + 1
    while f and len(f) - 1 >= dg:
        shift = len(f) - 1 - dg
        top = f[-1]
        f = _upoly_scale(f, lc)
        sub = [zero] * shift + _upoly_scale(g, top)
        f = _upoly_sub(f, sub, zero)
        e -= 1
    for _ in range(max(0, e)):
        f = _upoly_scale(f, lc)
    return f

def _sylvester_resultant(fu, gu, ring_zero):
    """Resultant via fraction-free Gaussian elimination on the Sylvester
    matrix; fallback for degenerate subresultant runs."""
    m, n = len(fu) - 1, len(gu) - 1
    size = m + n
    if size == 0:
        return None
    rows = []
    for i in range(n):
        row = [ring_zero] * size
        for j, c in enumerate(reversed(fu)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [ring_zero] * size
        for j, c in enumerate(reversed(gu)):
            row[i + j] = c
        rows.append(row)
    # Bareiss fraction-free elimination over the polynomial ring
    K = None
    denom = None
    sign = 1
    for k in range(size - 1):
        piv = None
        for r in range(k, size):
            if not rows[r][k].is_zero():
                piv = r
                break
        if piv is None:
            return None  # singular: resultant is zero
        if piv != k:
            rows[k], rows[piv] = rows[piv], rows[k]
            sign = -sign
        for r in range(k + 1, size):
            for c in range(k + 1, size):
                val = rows[k][k].mul(rows[r][c]).sub(rows[r][k].mul(rows[k][c]))
                if denom is not None and not denom.is_zero():
                    # exact division per Bareiss
                    val = _localpoly_exact_div(val, denom)
                rows[r][c] = val
            rows[r][k] = ring_zero
        denom = rows[k][k]
    res = rows[size - 1][size - 1]
    if sign < 0:
        res = res.neg()
    return res

def _localpoly_exact_div(num, den):
    """Exact division of LocalPolys when den divides num (used by Bareiss).
    Implemented by recursive univariate division in the last present var."""
    if num.is_zero():
        return num
    vs = sorted(den.variables_present() | num.variables_present())
    if not vs:
        ((e, c),) = den.terms.items()
        return num.scale(num.K.inv(c))
    v = vs[-1]
    fn = num.as_univariate(v)
    fd = den.as_univariate(v)
    zero = LocalPoly.zero(num.K, num.vars, num.weights)
    q = [zero] * (len(fn) - len(fd) + 1)
    while _upoly_trim(fn):
        if len(fn) < len(fd):
            raise ArithmeticError("inexact division in Bareiss step")
        shift = len(fn) - len(fd)
        qc = _localpoly_exact_div(fn[-1], fd[-1])
        q[shift] = qc
        sub = [zero] * shift + _upoly_scale(fd, qc)
        fn = _upoly_sub(fn, sub, zero)
    return LocalPoly.from_univariate(num.K, num.vars, v, q, num.weights)

def resultant(f, g, name):
    """Resultant of f and g with respect to variable `name`.

    Subresultant pseudo-remainder scheme (no coefficient fractions); a
    degenerate run falls back to the fraction-free Sylvester determinant.
    """
    K = f.K
    zero = LocalPoly.zero(K, f.vars, f.weights)
    fu = _upoly_trim(f.as_univariate(name))
    gu = _upoly_trim(g.as_univariate(name))
    if not fu or not gu:
        raise ValueError("resultant of the zero polynomial")
    try:
        return _subresultant_prs(fu, gu, zero)
    except ArithmeticError:
        res = _sylvester_resultant(fu, gu, zero)
        return zero if res is None else res

def _subresultant_prs(fu, gu, zero):
    """Resultant via the subresultant PRS (Cohen, Algorithm 3.3.7)."""
    K = zero.K
    one = LocalPoly.const(K, zero.vars, K.one, zero.weights)
    m, n = len(fu) - 1, len(gu) - 1
    if m < n:
        res = _subresultant_prs(gu, fu, zero)
        return res.neg() if (m * n) % 2 == 1 else res
    if n == 0:
        if m == 0:
            return one
        return gu[0].pow(m)
    a, b = fu, gu
    g = one
    h = one
    s = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        delta = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = _pseudo_rem(a, b, zero)
        a = b
        if not r:
            return zero  # positive-degree common factor
        div = g
        for _ in range(delta):
            div = div.mul(h)
        b = _upoly_trim([_localpoly_exact_div(c, div) for c in r])
        g = a[-1]
        if delta > 0:
            h_new = g.pow(delta)
            if delta > 1:
                h_new = _localpoly_exact_div(h_new, h.pow(delta - 1))
            h = h_new
        if not b:
            return zero
        if len(b) - 1 == 0:
            dA = len(a) - 1
            res = b[0].pow(dA)
            if dA > 1:
                res = _localpoly_exact_div(res, h.pow(dA - 1))
            return res.neg() if s < 0 else res


# ---------------------------------------------------------------------------
# zero-dimensional solving
# ---------------------------------------------------------------------------

def eliminate(system, vars=None):
    """Solve a polynomial system over the algebraic closure.

    system: nonempty list of LocalPolys over a common tower level, all in
    the same variable ring.  vars: the variables to solve for (default: the
    full ring); a variable unconstrained by the system makes the solution
    set infinite.

    Returns (L, points): L is the tower level after any needed canonical
    extensions (extensions are always applied to the current top, so all
    intermediate levels form one chain), and points is a deterministic
    sorted list of coordinate tuples over L in the order of `vars`, each of
    which satisfies every input polynomial exactly.

    Raises PositiveDimensionalError when the triangularized system fails to
    be zero-dimensional (non-isolated solution locus).
    """
    if not system:
        raise ValueError("empty system")
    K = system[0].K
    ring_vars = system[0].vars
    if vars is None:
        vars = list(ring_vars)
    present = set()
    for p in system:
        present |= p.variables_present()
    if not present <= set(vars):
        raise ValueError("system involves variables outside the solve list")
    L, points = _solve(K, list(system), list(vars))
    for pt in points:
        assign = dict(zip(vars, pt))
        for p in system:
            if not _specialize(p.embed(L), assign).is_zero():
                raise AssertionError("eliminate produced a non-solution")
    points = sorted(set(points), key=lambda pt: tuple(L.key(c) for c in pt))
    return L, points


def _solve(K, polys, vars):
    """Recursive solver; returns (level, list of tuples over that level)."""
    polys = [p for p in polys if not p.is_zero()]
    for p in polys:
        if p.total_degree() == 0:
            return K, []          # nonzero constant: inconsistent
    if not vars:
        return K, [()]
    if not polys:
        raise PositiveDimensionalError("positive-dimensional")
    last = vars[-1]
    with_last = [p for p in polys if last in p.variables_present()]
    if not with_last:
        L, sub = _solve(K, polys, vars[:-1])
        if sub:
            raise PositiveDimensionalError("positive-dimensional")
        return L, []
    if len(vars) == 1:
        g = None
        for p in with_last:
            u = p.to_univariate_dense(last)
            g = u if g is None else pgcd(K, g, u)
        if pdeg(g) == 0:
            return K, []
        L, roots = splitting_roots(K, g)
        return L, [(r,) for r in roots]
    if len(polys) == 1:
        # a single hypersurface in >= 2 effective variables
        raise PositiveDimensionalError("positive-dimensional")
    # eliminate `last` by resultants against a pivot of minimal degree
    pivot = min(with_last, key=lambda p: p.degree_in(last))
    elims = []
    for p in polys:
        if p is pivot:
            continue
        if last not in p.variables_present():
            elims.append(p)
            continue
        r = resultant(pivot, p, last)
        if not r.is_zero():
            elims.append(r)
    if not elims:
        raise PositiveDimensionalError("positive-dimensional")
    base, subsols = _solve(K, elims, vars[:-1])
    cur = base
    found = []
    for partial0 in subsols:
        partial = tuple(cur.embed(c, base) for c in partial0)
        assign = dict(zip(vars[:-1], partial))
        specs = []
        consistent = True
        all_zero = True
        for p in polys:
            spec = _specialize(p.embed(cur), assign)
            if spec.is_zero():
                continue
            if not spec.variables_present():
                consistent = False
                break
            all_zero = False
            specs.append(spec.to_univariate_dense(last))
        if not consistent:
            continue
        if all_zero:
            raise PositiveDimensionalError("positive-dimensional")
        g = None
        for u in specs:
            g = u if g is None else pgcd(cur, g, u)
        if pdeg(g) == 0:
            continue
        cur2, roots = splitting_roots(cur, g)
        for r in roots:
            pt = tuple(cur2.embed(c, cur) for c in partial) + (r,)
            if all(_specialize(p.embed(cur2), dict(zip(vars, pt))).is_zero()
                   for p in polys):
                found.append((cur2, pt))
        cur = cur2
    pts = [tuple(cur.embed(c, lev) for c in pt) for lev, pt in found]
    return cur, pts


def _specialize(p, assign):
    """Substitute constants for the named variables."""
    K = p.K
    out = {}
    names = p.vars
    for e, c in p.terms.items():
        v = c
        e2 = list(e)
        for i, name in enumerate(names):
            if name in assign and e[i]:
                v = K.mul(v, K.pow(assign[name], e[i]))
                e2[i] = 0
        key = tuple(e2)
        cur = out.get(key, K.zero)
        s = K.add(cur, v)
        if s == K.zero:
            out.pop(key, None)
        else:
            out[key] = s
    return LocalPoly(K, names, out, p.weights)
