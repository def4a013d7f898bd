"""Exact arithmetic in towers of finite fields GF(p^k).

A FieldTower is a chain GF(p) = K0 < K1 < ... where each step is defined by a
stored irreducible monic polynomial over the previous level.  Field elements
are plain Python values interpreted relative to a tower level: integers
0..p-1 at the prime level, and tuples of parent-level values (ascending
coefficient order, fixed length = extension degree) above it.  Keeping
elements as raw ints/tuples makes them hashable and cheap; all arithmetic
goes through the level object, in the style of domain-plus-raw-data
polynomial libraries.

Univariate polynomials over a level are dense Python lists of elements in
ascending degree order with no trailing zeros (the zero polynomial is []).

Everything here is deterministic: extension polynomials are the
lexicographically smallest irreducible monic of the required degree, and the
`factor_univariate` splitting uses a fixed enumeration of trial elements
instead of random ones, so repeated runs produce identical towers and
identical factor orderings.
"""

# Towers are capped at this total degree over GF(p); all catalog
# computations stay within degree 6.
EXTENSION_BUDGET = 12


class ExtensionBudgetError(RuntimeError):
    pass


class FieldTower:
    """One level of a tower of finite fields; the chain of parents is the tower."""

    __slots__ = ("p", "parent", "modulus", "degree", "abs_degree", "depth",
                 "size", "_canonical_children", "_elements_cache",
                 "_zero", "_one")

    def __init__(self, p, parent=None, modulus=None):
        self.p = p
        self.parent = parent
        self._canonical_children = {}
        self._elements_cache = None
        self._zero = None
        self._one = None
        if parent is None:
            self.modulus = None
            self.degree = 1
            self.abs_degree = 1
            self.depth = 0
            self.size = p
        else:
            # modulus: monic, ascending coefficients over parent, length degree+1
            self.modulus = tuple(modulus)
            self.degree = len(modulus) - 1
            self.abs_degree = parent.abs_degree * self.degree
            self.depth = parent.depth + 1
            self.size = parent.size ** self.degree
            if self.abs_degree > EXTENSION_BUDGET:
                raise ExtensionBudgetError("extension budget exceeded")

    _PRIMES = {}

    @staticmethod
    def prime(p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError("characteristic must be prime, got %r" % (p,))
        if p not in FieldTower._PRIMES:
            FieldTower._PRIMES[p] = FieldTower(p)
        return FieldTower._PRIMES[p]

    def __repr__(self):
        return "GF(%d^%d)" % (self.p, self.abs_degree) if self.abs_degree > 1 \
            else "GF(%d)" % self.p

    # ----- basic constants -----

    @property
    def zero(self):
        z = self._zero
        if z is None:
            z = 0 if self.parent is None else (self.parent.zero,) * self.degree
            self._zero = z
        return z

    @property
    def one(self):
        o = self._one
        if o is None:
            if self.parent is None:
                o = 1 % self.p
            else:
                o = (self.parent.one,) + (self.parent.zero,) * (self.degree - 1)
            self._one = o
        return o

    def from_int(self, n):
        if self.parent is None:
            return n % self.p
        return self.up(self.parent.from_int(n))

    def gen(self):
        """The class of x, generating this level over its parent."""
        if self.parent is None:
            raise ValueError("prime field has no extension generator")
        z, o = self.parent.zero, self.parent.one
        return (z, o) + (z,) * (self.degree - 2)

    def up(self, a):
        """Embed a parent-level value as a constant of this level."""
        return (a,) + (self.parent.zero,) * (self.degree - 1)

    def embed(self, a, src):
        """Embed a value living at ancestor level `src` into this level."""
        chain = []
        lev = self
        while lev is not src:
            chain.append(lev)
            lev = lev.parent
            if lev is None:
                raise ValueError("source level is not an ancestor")
        for lev in reversed(chain):
            a = lev.up(a)
        return a

    def is_ancestor_of(self, other):
        lev = other
        while lev is not None:
            if lev is self:
                return True
            lev = lev.parent
        return False

    def retract(self, a):
        """Return (level, value) for the smallest tower level containing a."""
        lev, val = self, a
        while lev.parent is not None:
            if any(c != lev.parent.zero for c in val[1:]):
                break
            val = val[0]
            lev = lev.parent
        return lev, val

    # ----- arithmetic -----

    def add(self, a, b):
        if self.parent is None:
            return (a + b) % self.p
        par = self.parent
        return tuple(par.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.parent is None:
            return (a - b) % self.p
        par = self.parent
        return tuple(par.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.parent is None:
            return (-a) % self.p
        par = self.parent
        return tuple(par.neg(x) for x in a)

    def mul(self, a, b):
        if self.parent is None:
            return (a * b) % self.p
        par = self.parent
        d = self.degree
        if d == 1:
            return (par.mul(a[0], b[0]),)
        # schoolbook product, then reduce by the monic modulus
        prod = [par.zero] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai == par.zero:
                continue
            for j, bj in enumerate(b):
                prod[i + j] = par.add(prod[i + j], par.mul(ai, bj))
        mod = self.modulus
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c == par.zero:
                continue
            prod[k] = par.zero
            for j in range(d):
                prod[k - d + j] = par.sub(prod[k - d + j], par.mul(c, mod[j]))
        return tuple(prod[:d])

    def smul(self, n, a):
        """Integer scalar times element (n reduced mod p)."""
        return self.mul(self.from_int(n), a)

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inversion of zero field element")
        if self.parent is None:
            return pow(a, self.p - 2, self.p)
        # extended Euclid on coefficient lists over the parent
        par = self.parent
        r0, r1 = list(self.modulus), list(a)
        t0, t1 = [], [par.one]
        while True:
            r1 = _ptrim(par, r1)
            if len(r1) == 1:
                c = par.inv(r1[0])
                t1 = _ptrim(par, t1)
                out = [par.mul(c, x) for x in t1]
                out += [par.zero] * (self.degree - len(out))
                return tuple(out[: self.degree])
            q, r = _pdivmod(par, r0, r1)
            r0, r1 = r1, r
            t0, t1 = t1, _psub(par, t0, _pmul(par, q, t1))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frobenius(self, a):
        return self.pow(a, self.p)

    def pth_root(self, a):
        """The unique p-th root (Frobenius is bijective on a finite field)."""
        return self.pow(a, self.p ** (self.abs_degree - 1))

    def sqrt(self, a):
        """A square root of a inside this level, or None if there is none."""
        if self.p == 2:
            return self.pth_root(a)
        if a == self.zero:
            return a
        half = (self.size - 1) // 2
        if self.pow(a, half) != self.one:
            return None
        r = min(self._all_roots_quadratic(a), key=self.key)
        return r

    def _all_roots_quadratic(self, a):
        # roots of x^2 - a; used only for odd p where a is a known square
        f = [self.neg(a), self.zero, self.one]
        roots = [lin[0] for lin, _m in factor_univariate(self, f)[1]
                 if len(lin) == 2]
        return [self.neg(r) for r in roots]

    # ----- ordering / enumeration -----

    def key(self, a):
        """Canonical sort key: descending-degree coefficient tuple."""
        if self.parent is None:
            return a
        par = self.parent
        return tuple(par.key(c) for c in reversed(a))

    def elements(self):
        """All elements in canonical order (parent-field constants first)."""
        if self._elements_cache is None:
            if self.parent is None:
                self._elements_cache = list(range(self.p))
            else:
                par_elems = self.parent.elements()
                m = len(par_elems)
                out = []
                # low coefficient varies fastest, so constants come first
                for idx in range(m ** self.degree):
                    coeffs = []
                    rem = idx
                    for _ in range(self.degree):
                        coeffs.append(par_elems[rem % m])
                        rem //= m
                    out.append(tuple(coeffs))
                self._elements_cache = out
        return self._elements_cache

    def random(self, rng):
        if self.parent is None:
            return rng.randrange(self.p)
        return tuple(self.parent.random(rng) for _ in range(self.degree))

    def format(self, a):
        """Human-readable form, nesting generators g1, g2, ... by depth."""
        if self.parent is None:
            return str(a)
        name = "g%d" % self.depth if self.depth > 1 else "g"
        par = self.parent
        parts = []
        for i in range(self.degree - 1, -1, -1):
            c = a[i]
            if c == par.zero:
                continue
            cs = par.format(c)
            if i == 0:
                parts.append(cs)
            else:
                xs = name if i == 1 else "%s^%d" % (name, i)
                if cs == "1":
                    parts.append(xs)
                elif par.parent is not None and ("+" in cs or "-" in cs):
                    parts.append("(%s)*%s" % (cs, xs))
                else:
                    parts.append("%s*%s" % (cs, xs))
        return "+".join(parts) if parts else "0"

    # ----- extensions -----

    def extend(self, modulus):
        """Extend by an explicit irreducible monic polynomial over this level."""
        mod = _ptrim(self, list(modulus))
        if mod[-1] != self.one:
            raise ValueError("modulus must be monic")
        if len(mod) < 3:
            raise ValueError("extension degree must be at least 2")
        if not is_irreducible(self, mod):
            raise ValueError("modulus is not irreducible over its base level")
        return FieldTower(self.p, self, mod)

    def extend_canonical(self, d):
        """Extend by the canonical (lex-smallest) irreducible of degree d."""
        if d == 1:
            return self
        child = self._canonical_children.get(d)
        if child is None:
            child = FieldTower(self.p, self, canonical_irreducible(self, d))
            self._canonical_children[d] = child
        return child


# ---------------------------------------------------------------------------
# dense univariate polynomials over a tower level
# ---------------------------------------------------------------------------

def _ptrim(K, f):
    while f and f[-1] == K.zero:
        f.pop()
    return f

def pzero():
    return []

def pconst(K, c):
    return [] if c == K.zero else [c]

def pX(K):
    return [K.zero, K.one]

def pdeg(f):
    return len(f) - 1

def padd(K, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else K.zero
        b = g[i] if i < len(g) else K.zero
        out.append(K.add(a, b))
    return _ptrim(K, out)

def _psub(K, f, g):
    n = max(len(f), len(g))
    out = []
    for i in range(n):
        a = f[i] if i < len(f) else K.zero
        b = g[i] if i < len(g) else K.zero
        out.append(K.sub(a, b))
    return _ptrim(K, out)

def psub(K, f, g):
    return _psub(K, f, g)

def pneg(K, f):
    return [K.neg(c) for c in f]

def pscale(K, c, f):
    if c == K.zero:
        return []
    return _ptrim(K, [K.mul(c, x) for x in f])

def _pmul(K, f, g):
    if not f or not g:
        return []
    out = [K.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == K.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = K.add(out[i + j], K.mul(a, b))
    return _ptrim(K, out)

def pmul(K, f, g):
    return _pmul(K, f, g)

def _pdivmod(K, f, g):
    f = list(f)
    g = _ptrim(K, list(g))
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    dg = len(g) - 1
    inv_lc = K.inv(g[-1])
    q = [K.zero] * max(0, len(f) - dg)
    while True:
        f = _ptrim(K, f)
        if len(f) - 1 < dg:
            break
        shift = len(f) - 1 - dg
        c = K.mul(f[-1], inv_lc)
        q[shift] = c
        for i in range(dg + 1):
            f[shift + i] = K.sub(f[shift + i], K.mul(c, g[i]))
    return _ptrim(K, q), f

def pdivmod(K, f, g):
    return _pdivmod(K, list(f), g)

def pdiv(K, f, g):
    q, r = _pdivmod(K, list(f), g)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q

def pmod(K, f, g):
    return _pdivmod(K, list(f), g)[1]

def pmonic(K, f):
    if not f:
        return []
    return pscale(K, K.inv(f[-1]), f)

def pgcd(K, f, g):
    a, b = _ptrim(K, list(f)), _ptrim(K, list(g))
    while b:
        a, b = b, pmod(K, a, b)
    return pmonic(K, a)

def pderiv(K, f):
    return _ptrim(K, [K.smul(i, f[i]) for i in range(1, len(f))])

def peval(K, f, x):
    acc = K.zero
    for c in reversed(f):
        acc = K.add(K.mul(acc, x), c)
    return acc

def ppowmod(K, f, n, m):
    r = pconst(K, K.one)
    f = pmod(K, f, m)
    while n:
        if n & 1:
            r = pmod(K, _pmul(K, r, f), m)
        f = pmod(K, _pmul(K, f, f), m)
        n >>= 1
    return r

def pshift(K, f, a):
    """f(x + a)."""
    out = []
    for c in reversed(f):
        out = padd(K, _pmul(K, out, [a, K.one]), pconst(K, c))
    return out

def pembed(K, f, src):
    return [K.embed(c, src) for c in f]

def pkey(K, f):
    return (len(f),) + tuple(K.key(c) for c in reversed(f))

def pformat(K, f, var="u"):
    if not f:
        return "0"
    parts = []
    for i in range(len(f) - 1, -1, -1):
        c = f[i]
        if c == K.zero:
            continue
        cs = K.format(c)
        if i == 0:
            parts.append(cs)
            continue
        xs = var if i == 1 else "%s^%d" % (var, i)
        if cs == "1":
            parts.append(xs)
        elif "+" in cs or "*" in cs:
            parts.append("(%s)*%s" % (cs, xs))
        else:
            parts.append("%s*%s" % (cs, xs))
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# irreducibility, canonical extension polynomials
# ---------------------------------------------------------------------------

def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out

def is_irreducible(K, f):
    """Rabin test: x^{q^d} = x mod f and gcd(x^{q^{d/l}} - x, f) = 1."""
    f = _ptrim(K, list(f))
    d = len(f) - 1
    if d <= 0:
        return False
    if d == 1:
        return True
    q = K.size
    x = pX(K)
    for ell in _prime_factors(d):
        h = ppowmod(K, x, q ** (d // ell), f)
        if pdeg(pgcd(K, _psub(K, h, x), f)) != 0:
            return False
    h = ppowmod(K, x, q ** d, f)
    return _psub(K, h, x) == []

def canonical_irreducible(K, d):
    """Lexicographically smallest irreducible monic of degree d over K.

    Candidates are ordered by the (c_{d-1}, ..., c_0) coefficient tuple with
    each coefficient in the level's canonical element order, so the choice
    (and hence every downstream tower) is reproducible bit-for-bit.
    """
    elems = K.elements()
    m = len(elems)
    for idx in range(m ** d):
        # digits with c_0 varying fastest, c_{d-1} slowest
        coeffs = []
        rem = idx
        for _ in range(d):
            coeffs.append(elems[rem % m])
            rem //= m
        f = coeffs + [K.one]
        if is_irreducible(K, f):
            return f
    raise RuntimeError("no irreducible of degree %d over %r" % (d, K))


# ---------------------------------------------------------------------------
# factorization
# ---------------------------------------------------------------------------

def _pth_root_poly(K, f):
    """For f with zero derivative, f = g(x^p); return g."""
    p = K.p
    out = []
    for i in range(0, len(f), p):
        out.append(K.pth_root(f[i]))
    return _ptrim(K, out)

def squarefree_decomposition(K, f):
    """Monic f -> list of (monic squarefree factor, multiplicity)."""
    p = K.p
    out = []
    c = pgcd(K, f, pderiv(K, f))
    w = pdiv(K, f, c)
    i = 1
    while pdeg(w) > 0:
        y = pgcd(K, w, c)
        z = pdiv(K, w, y)
        if pdeg(z) > 0:
            out.append((z, i))
        i += 1
        w = y
        c = pdiv(K, c, y)
    if pdeg(c) > 0:
        for g, m in squarefree_decomposition(K, _pth_root_poly(K, c)):
            out.append((g, m * p))
    return out

def _trial_polys(K, bound_deg):
    """Deterministic stream of trial polynomials for splitting.

    All polynomials of each degree are enumerated (not only monic ones):
    by CRT the values of degree < deg f polynomials cover the whole product
    of residue fields, so a separating trial is guaranteed to appear."""
    elems = K.elements()
    nonzero = [e for e in elems if e != K.zero]
    m = len(elems)
    for d in range(1, max(2, bound_deg) + 1):
        for lead in nonzero:
            for idx in range(m ** d):
                coeffs = []
                rem = idx
                for _ in range(d):
                    coeffs.append(elems[rem % m])
                    rem //= m
                yield coeffs + [lead]

def _equal_degree_split(K, f, d):
    """Split monic squarefree f, all of whose irreducible factors have
    degree d, into its irreducible factors (Cantor-Zassenhaus with a
    deterministic trial sequence)."""
    n = pdeg(f)
    if n == d:
        return [f]
    q = K.size
    for a in _trial_polys(K, n - 1):
        if K.p == 2:
            # trace map over GF(2)
            m = K.abs_degree * d
            t = pmod(K, a, f)
            acc = t
            for _ in range(m - 1):
                t = pmod(K, _pmul(K, t, t), f)
                acc = padd(K, acc, t)
            g = pgcd(K, acc, f)
        else:
            e = (q ** d - 1) // 2
            b = ppowmod(K, a, e, f)
            g = pgcd(K, _psub(K, b, pconst(K, K.one)), f)
        if 0 < pdeg(g) < n:
            return (_equal_degree_split(K, g, d)
                    + _equal_degree_split(K, pdiv(K, f, g), d))
    raise RuntimeError("equal-degree splitting failed to separate factors")

def _distinct_degree(K, f):
    """Monic squarefree f -> list of (product-of-irreducibles, degree)."""
    out = []
    q = K.size
    x = pX(K)
    h = list(x)
    i = 1
    rest = f
    while pdeg(rest) >= 2 * i:
        h = ppowmod(K, h, q, rest)
        g = pgcd(K, _psub(K, h, x), rest)
        if pdeg(g) > 0:
            out.append((g, i))
            rest = pdiv(K, rest, g)
            h = pmod(K, h, rest)
        i += 1
    if pdeg(rest) > 0:
        out.append((rest, pdeg(rest)))
    return out

def factor_univariate(K, f):
    """Factor f over tower level K.

    Returns (leading unit, [(irreducible monic factor, multiplicity), ...])
    with the factor list sorted by degree then canonical term order.  The
    product of factors^multiplicities times the unit reproduces f exactly.
    """
    f = _ptrim(K, list(f))
    if not f:
        raise ZeroDivisionError("zero polynomial")
    unit = f[-1]
    f = pmonic(K, f)
    factors = []
    if pdeg(f) == 0:
        return unit, []
    for sqf, mult in squarefree_decomposition(K, f):
        for block, d in _distinct_degree(K, sqf):
            for irr in _equal_degree_split(K, block, d):
                factors.append((irr, mult))
    factors.sort(key=lambda fm: pkey(K, fm[0]))
    return unit, factors

def roots_in(K, f):
    """Roots of f lying in K itself, in canonical order (no multiplicity)."""
    _u, facs = factor_univariate(K, f)
    out = [K.neg(g[0]) for g, _m in facs if pdeg(g) == 1]
    out.sort(key=K.key)
    return out

def splitting_roots(K, f):
    """All roots of f over an extension of K.

    Returns (L, roots) where L extends K canonically far enough for f to
    split and roots lists every root of f in L (with multiplicity 1 each,
    canonical order).
    """
    L = K
    g = list(f)
    while True:
        _u, facs = factor_univariate(L, g)
        degs = sorted({pdeg(h) for h, _ in facs})
        if degs and degs[-1] > 1:
            L2 = L.extend_canonical(degs[-1])
            g = pembed(L2, g, L)
            L = L2
            continue
        roots = [L.neg(h[0]) for h, _m in facs]
        roots.sort(key=L.key)
        return L, roots
