"""Surface singularities: location, Tjurina dimensions, blow-up resolution
and Dynkin/coindex classification.

The Dynkin type of a point is identified by its resolution fingerprint: the
tree of (Tjurina dimension, exceptional-component count, child fingerprints)
produced by iterated point blow-ups.  A calibration table built at startup
runs the same engine on the non-taut normal forms (plus the taut A/D/E
forms for the ambient characteristic) and must be injective; the Artin
coindex is then read off from the deformation dimension m of the root.

Tjurina dimensions are computed by exact linear algebra on monomials of
bounded degree, with a Nakayama certificate (some full degree lies in the
ideal) guaranteeing that the truncated dimension is the true one.  The
matrices live over GF(p): coefficients in GF(p^k) are blown up through the
regular representation, k GF(p)-rows and k-column blocks per monomial.
"""

from dataclasses import dataclass

import numpy as np

from .gf import FieldTower
from .poly import LocalPoly, PositiveDimensionalError, eliminate
from .rdp import RdpClass, coindex_from_m


class NotRdpError(RuntimeError):
    pass


class TjurinaUncertifiedError(RuntimeError):
    pass


MAX_BLOWUP_DEPTH = 14


@dataclass
class SingularPoint:
    chart: str              # "s" or "t" (surface charts); "-" for raw input
    coords: tuple           # coordinates over `level`
    level: object           # tower level of the coordinates
    local: LocalPoly        # equation translated so the point is the origin
    residue_degree: int     # degree of the residue field over the base level


@dataclass
class TjurinaResult:
    dimension: int
    truncation_degree: int
    certified: bool


# ---------------------------------------------------------------------------
# Tjurina dimensions
# ---------------------------------------------------------------------------

def _flatten_elem(K, a):
    if K.parent is None:
        return [a]
    out = []
    for c in a:
        out.extend(_flatten_elem(K.parent, c))
    return out


def _basis_elements(K):
    """Elements of K whose GF(p)-coordinate vectors are the unit vectors."""
    k = K.abs_degree
    if k == 1:
        return [K.one]
    def unflatten(lev, vec):
        if lev.parent is None:
            return vec[0]
        step = lev.parent.abs_degree
        return tuple(unflatten(lev.parent, vec[i * step:(i + 1) * step])
                     for i in range(lev.degree))
    out = []
    for i in range(k):
        vec = [0] * k
        vec[i] = 1
        out.append(unflatten(K, vec))
    return out


def _monomials_upto(nvars, bound):
    """Exponent tuples of total degree < bound, sorted by (degree, lex)."""
    out = []
    for d in range(bound):
        block = []
        def rec(prefix, rest, budget):
            if rest == 1:
                block.append(tuple(prefix + [budget]))
                return
            for e in range(budget, -1, -1):
                rec(prefix + [e], rest - 1, budget - e)
        rec([], nvars, d)
        block.sort()
        out.extend(block)
    return out


def _pivot_columns(M, p):
    """Pivot column indices of M over GF(p) (columns scanned left to right)."""
    M = M % p
    rows, cols = M.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        col = M[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = int(r + nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        below = np.nonzero(M[r + 1:, c])[0]
        if below.size:
            idx = below + r + 1
            M[idx] = (M[idx] - np.outer(M[idx, c], M[r])) % p
        pivots.append(c)
        r += 1
    return pivots


def tjurina_dimension(f, start=8, n_max=24):
    """Dimension of k[u,v,w]_(0) / (f, f_u, f_v, f_w).

    Truncate at degree N, span all products generator x monomial, row-reduce
    and count the complement; accept once every monomial of some degree
    d0 < N lies in the span (Nakayama: the maximal-ideal power is inside the
    ideal, so the truncation is exact).  N starts at `start` and grows to
    n_max before giving up.
    """
    K = f.K
    p = K.p
    gens = [f] + [f.partial(v) for v in f.vars]
    gens = [g for g in gens if not g.is_zero()]
    if any(g.order() == 0 for g in gens):
        return TjurinaResult(0, start, True)   # unit ideal: smooth point
    k = K.abs_degree
    basis = _basis_elements(K)
    N = start
    while True:
        monos = _monomials_upto(len(f.vars), N)
        index = {e: i for i, e in enumerate(monos)}
        ncols = len(monos) * k
        rows = []
        for g in gens:
            gord = g.order()
            gterms = list(g.terms.items())
            for m in monos:
                dm = sum(m)
                if dm + gord >= N:
                    continue
                base_entries = []
                for e, c in gterms:
                    e2 = tuple(a + b for a, b in zip(e, m))
                    if sum(e2) >= N:
                        continue
                    base_entries.append((index[e2], c))
                if not base_entries:
                    continue
                for b in basis:
                    row = np.zeros(ncols, dtype=np.int64)
                    for col, c in base_entries:
                        vec = _flatten_elem(K, K.mul(b, c))
                        row[col * k:(col + 1) * k] = vec
                    rows.append(row)
        if not rows:
            raise NotRdpError("zero Jacobian ideal")
        M = np.vstack(rows)
        pivots = set(_pivot_columns(M, p))
        full_blocks = set()
        for i, e in enumerate(monos):
            if all((i * k + j) in pivots for j in range(k)):
                full_blocks.add(e)
        # certificate: every monomial of some degree d0 < N is in the span
        d0 = None
        for d in range(1, N):
            degree_monos = [e for e in monos if sum(e) == d]
            if all(e in full_blocks for e in degree_monos):
                d0 = d
                break
        if d0 is not None:
            for e in monos:
                if sum(e) >= d0 and e not in full_blocks:
                    raise AssertionError("certificate inconsistency")
            dim = sum(1 for e in monos if e not in full_blocks)
            if len(pivots) != k * len(full_blocks):
                raise AssertionError("partial pivot block")
            return TjurinaResult(dim, N, True)
        if N >= n_max:
            raise TjurinaUncertifiedError("non-isolated or too degenerate")
        N = min(2 * N, n_max)


# ---------------------------------------------------------------------------
# tangent cone and blow-ups
# ---------------------------------------------------------------------------

def _quadratic_part(f):
    K = f.K
    q = {}
    for e, c in f.terms.items():
        if sum(e) == 2:
            q[e] = c
    return q


def tangent_cone_components(f):
    """Number of irreducible components over the closure of the conic cut
    out by the degree-2 part of f (which is nonzero for a double point)."""
    K = f.K
    q = _quadratic_part(f)
    if not q:
        raise NotRdpError("multiplicity exceeds 2")
    z = K.zero
    a = q.get((2, 0, 0), z)
    b = q.get((0, 2, 0), z)
    c = q.get((0, 0, 2), z)
    d = q.get((1, 1, 0), z)
    e = q.get((0, 1, 1), z)
    g = q.get((1, 0, 1), z)
    if K.p == 2:
        if d == z and e == z and g == z:
            return 1            # perfect square: a double line
        # the conic is singular iff its strange point [e:g:d] lies on it
        val = K.add(K.add(K.mul(a, K.mul(e, e)), K.mul(b, K.mul(g, g))),
                    K.add(K.mul(c, K.mul(d, d)), K.mul(d, K.mul(e, g))))
        return 2 if val == z else 1
    half = K.inv(K.from_int(2))
    G = [[a, K.mul(half, d), K.mul(half, g)],
         [K.mul(half, d), b, K.mul(half, e)],
         [K.mul(half, g), K.mul(half, e), c]]
    det = _det3(K, G)
    if det != z:
        return 1                # smooth conic
    rank2 = any(_minor2(K, G, i, j) != z for i in range(3) for j in range(3))
    return 2 if rank2 else 1    # rank 2: two lines; rank 1: a double line


def _det3(K, G):
    s = K.zero
    for (i, j, l), sg in (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
                          ((2, 1, 0), -1), ((1, 0, 2), -1), ((0, 2, 1), -1)):
        t = K.mul(K.mul(G[0][i], G[1][j]), G[2][l])
        s = K.add(s, t) if sg > 0 else K.sub(s, t)
    return s


def _minor2(K, G, i, j):
    r = [x for x in range(3) if x != i]
    c = [x for x in range(3) if x != j]
    return K.sub(K.mul(G[r[0]][c[0]], G[r[1]][c[1]]),
                 K.mul(G[r[0]][c[1]], G[r[1]][c[0]]))


def blow_up_once(f):
    """One point blow-up of the double point f = 0 at the origin.

    Returns (children, component_count): children are (level, local equation)
    pairs for the singular points of the strict transform on the exceptional
    plane, translated to the origin; component_count counts irreducible
    exceptional components over the closure.  Children found in several
    chart strata are deduplicated by stratifying the exceptional plane as
    [1:*:*], [0:1:*], [0:0:1].
    """
    K = f.K
    ordf = f.order()
    if ordf is None or ordf >= 3:
        raise NotRdpError("multiplicity exceeds 2")
    if ordf <= 1:
        raise ValueError("already smooth")
    comps = tangent_cone_components(f)
    vars = f.vars
    children = []
    for chart in range(3):
        g = _strict_transform(f, chart)
        cv = vars[chart]
        system = [g] + [g.partial(v) for v in vars]
        # restrict to the exceptional plane and to the chart's stratum
        fixed = {cv: K.zero}
        for earlier in range(chart):
            fixed[vars[earlier]] = K.zero
        system = [_fix_vars(p_, fixed) for p_ in system]
        system = [p_ for p_ in system if not p_.is_zero()]
        free = [v for v in vars if v not in fixed]
        if not free:
            # stratum is the single point [0:0:1]; surviving polynomials
            # are nonzero constants, so empty system = singular there
            if not system:
                children.append((K, g))
            continue
        if not system:
            raise NotRdpError("non-isolated singularity after blow-up")
        try:
            lev, pts = eliminate(system, vars=free)
        except PositiveDimensionalError:
            raise NotRdpError("non-isolated singularity after blow-up")
        for pt in pts:
            coords = []
            it = iter(pt)
            for v in vars:
                coords.append(lev.zero if v in fixed else next(it))
            ge = g.embed(lev)
            children.append((lev, ge.translate(tuple(coords))))
    return children, comps


def _strict_transform(f, chart):
    K = f.K
    vars = f.vars
    cv = vars[chart]
    assign = {}
    for i, v in enumerate(vars):
        if i != chart:
            assign[v] = LocalPoly.var(K, vars, v).mul(LocalPoly.var(K, vars, cv))
    total = f.subs(assign)
    return total.divide_by_var_power(cv, 2)


def _fix_vars(p_, fixed):
    K = p_.K
    out = {}
    idx = [i for i, v in enumerate(p_.vars) if v in fixed]
    for e, c in p_.terms.items():
        if any(e[i] for i in idx):
            continue   # fixing to zero kills any term with that variable
        cur = out.get(e)
        out[e] = c if cur is None else K.add(cur, c)
    return LocalPoly(K, p_.vars, out, p_.weights)


def fingerprint(f):
    """Resolution fingerprint: (m, components, sorted child fingerprints)."""
    return BlowupTree.build(f).fingerprint()


@dataclass
class BlowupTree:
    equation: LocalPoly
    tjurina: int
    components: int
    children: list

    @staticmethod
    def build(f, depth=0):
        if depth > MAX_BLOWUP_DEPTH:
            raise NotRdpError("blow-up recursion exceeded depth bound")
        try:
            res = tjurina_dimension(f)
        except TjurinaUncertifiedError as exc:
            raise NotRdpError(str(exc))
        children, comps = blow_up_once(f)
        kids = [BlowupTree.build(g, depth + 1) for _lev, g in children]
        return BlowupTree(f, res.dimension, comps, kids)

    def fingerprint(self):
        return (self.tjurina, self.components,
                tuple(sorted(k.fingerprint() for k in self.children)))

    def size(self):
        return 1 + sum(k.size() for k in self.children)


# ---------------------------------------------------------------------------
# calibration table: normal form -> fingerprint -> Dynkin type
# ---------------------------------------------------------------------------

def _normal_forms(p):
    """[(letter, rank, coindex, LocalPoly over GF(p) in (x, y, z))]."""
    K = FieldTower.prime(p)
    V = ("x", "y", "z")
    def P(spec):
        terms = {}
        for c, ex, ey, ez in spec:
            key = (ex, ey, ez)
            cur = terms.get(key, K.zero)
            terms[key] = K.add(cur, K.from_int(c))
        return LocalPoly(K, V, terms)
    out = []
    for n in range(1, 9):
        # A_n: xy + z^(n+1)
        out.append(("A", n, 0, P([(1, 1, 1, 0), (1, 0, 0, n + 1)])))
    if p == 2:
        for n in range(2, 5):       # D_{2n}: ranks 4, 6, 8
            base = [(1, 0, 0, 2), (1, 2, 1, 0), (1, 1, n, 0)]
            out.append(("D", 2 * n, 0, P(base)))
            for r in range(1, n):
                out.append(("D", 2 * n, r,
                            P(base + [(1, 1, n - r, 1)])))
        for n in range(2, 4):       # D_{2n+1}: ranks 5, 7
            base = [(1, 0, 0, 2), (1, 2, 1, 0), (1, 0, n, 1)]
            out.append(("D", 2 * n + 1, 0, P(base)))
            for r in range(1, n):
                out.append(("D", 2 * n + 1, r,
                            P(base + [(1, 1, n - r, 1)])))
        e6 = [(1, 0, 0, 2), (1, 3, 0, 0), (1, 0, 2, 1)]
        out.append(("E", 6, 0, P(e6)))
        out.append(("E", 6, 1, P(e6 + [(1, 1, 1, 1)])))
        e7 = [(1, 0, 0, 2), (1, 3, 0, 0), (1, 1, 3, 0)]
        out.append(("E", 7, 0, P(e7)))
        out.append(("E", 7, 1, P(e7 + [(1, 2, 1, 1)])))
        out.append(("E", 7, 2, P(e7 + [(1, 0, 3, 1)])))
        out.append(("E", 7, 3, P(e7 + [(1, 1, 1, 1)])))
        e8 = [(1, 0, 0, 2), (1, 3, 0, 0), (1, 0, 5, 0)]
        out.append(("E", 8, 0, P(e8)))
        out.append(("E", 8, 1, P(e8 + [(1, 1, 3, 1)])))
        out.append(("E", 8, 2, P(e8 + [(1, 1, 2, 1)])))
        out.append(("E", 8, 3, P(e8 + [(1, 0, 3, 1)])))
        out.append(("E", 8, 4, P(e8 + [(1, 1, 1, 1)])))
        return out
    # D_n for p != 2: z^2 + x^2 y + y^(n-1)
    for n in range(4, 9):
        out.append(("D", n, 0, P([(1, 0, 0, 2), (1, 2, 1, 0),
                                  (1, 0, n - 1, 0)])))
    if p == 3:
        e6 = [(1, 0, 0, 2), (1, 3, 0, 0), (1, 0, 4, 0)]
        out.append(("E", 6, 0, P(e6)))
        out.append(("E", 6, 1, P(e6 + [(1, 2, 2, 0)])))
        e7 = [(1, 0, 0, 2), (1, 3, 0, 0), (1, 1, 3, 0)]
        out.append(("E", 7, 0, P(e7)))
        out.append(("E", 7, 1, P(e7 + [(1, 2, 2, 0)])))
        e8 = [(1, 0, 0, 2), (1, 3, 0, 0), (1, 0, 5, 0)]
        out.append(("E", 8, 0, P(e8)))
        out.append(("E", 8, 1, P(e8 + [(1, 2, 3, 0)])))
        out.append(("E", 8, 2, P(e8 + [(1, 2, 2, 0)])))
        return out
    out.append(("E", 6, 0, P([(1, 0, 0, 2), (1, 3, 0, 0), (1, 0, 4, 0)])))
    out.append(("E", 7, 0, P([(1, 0, 0, 2), (1, 3, 0, 0), (1, 1, 3, 0)])))
    e8 = [(1, 0, 0, 2), (1, 3, 0, 0), (1, 0, 5, 0)]
    out.append(("E", 8, 0, P(e8)))
    if p == 5:
        out.append(("E", 8, 1, P(e8 + [(1, 1, 4, 0)])))
    return out


_CALIBRATION = {}


def calibration(p):
    """fingerprint -> (letter, rank); built once per characteristic and
    checked for injectivity across distinct (letter, rank, coindex)."""
    if p not in _CALIBRATION:
        table = {}
        owners = {}
        for letter, rank, coidx, form in _normal_forms(p):
            fp = fingerprint(form)
            prev = owners.get(fp)
            if prev is not None and prev != (letter, rank, coidx):
                raise AssertionError(
                    "fingerprint collision in char %d: %s%d^%d vs %s%d^%d"
                    % (p, prev[0], prev[1], prev[2], letter, rank, coidx))
            owners[fp] = (letter, rank, coidx)
            table[fp] = (letter, rank)
        _CALIBRATION[p] = table
    return _CALIBRATION[p]


# ---------------------------------------------------------------------------
# surface singular points and classification
# ---------------------------------------------------------------------------

def singular_points(eq):
    """All singular points of the sextic surface, over the two affine charts.

    Points with s != 0 are reported in chart s = 1; the chart t = 1 is
    searched only along s = 0.  The base point t = s = 0 of the anticanonical
    pencil is excluded (the surface is smooth there; a defensive Jacobian
    check on the weighted cone backs this up when both charts come up empty).
    """
    K = eq.K
    out = []
    F = eq.chart_equation("s")
    system = [F] + [F.partial(v) for v in F.vars]
    system = [p for p in system if not p.is_zero()]
    lev, pts = eliminate(system, vars=list(F.vars))
    for pt in pts:
        loc = F.embed(lev).translate(pt)
        plev, _ = _point_level(lev, pt, K)
        out.append(SingularPoint("s", pt, lev, loc,
                                 plev.abs_degree // K.abs_degree))
    F2 = eq.chart_equation("t")
    system2 = [F2] + [F2.partial(v) for v in F2.vars]
    system2 = [_fix_vars(p, {"s": K.zero}) for p in system2]
    system2 = [p for p in system2 if not p.is_zero()]
    # F2 restricted to s = 0 keeps its y^2 and x^3 terms, so never vanishes
    lev2, pts2 = eliminate(system2, vars=["x", "y"])
    for pt in pts2:
        full = (lev2.zero, pt[0], pt[1])
        loc = F2.embed(lev2).translate(full)
        plev, _ = _point_level(lev2, full, K)
        out.append(SingularPoint("t", full, lev2, loc,
                                 plev.abs_degree // K.abs_degree))
    if not out and compute_delta_is_degenerate(eq):
        _defensive_base_point_check(eq)
    return out


def _point_level(lev, pt, base):
    """Smallest tower level between base and lev containing every coordinate."""
    best = base
    for c in pt:
        clev, _ = lev.retract(c)
        if clev.abs_degree > best.abs_degree:
            best = clev
    return best, None


def compute_delta_is_degenerate(eq):
    from .weierstrass import compute_invariants
    inv = compute_invariants(eq)
    if inv.delta.is_zero():
        return True
    _u, facs = inv.delta.factor()
    return any(m > 1 for _f, m in facs)


def _defensive_base_point_check(eq):
    """Jacobian of the weighted-homogeneous sextic at (t,s,x,y) = (0,0,1,1).

    The affine cone is smooth there in every characteristic (F_x = -3 != 0
    for p != 3, F_y = 2 for p != 2, and F_x = 1 for p = 2), so the check can
    only fail on corrupted input.
    """
    K = eq.K
    o = K.one
    z = K.zero
    a_at = {n: (getattr(eq, n).evaluate(z, z) if not getattr(eq, n).is_zero()
                else z) for n in ("a1", "a2", "a3", "a4", "a6")}
    fx = K.sub(K.mul(a_at["a1"], o),
               K.add(K.add(K.smul(3, o), K.smul(2, K.mul(a_at["a2"], o))),
                     a_at["a4"]))
    fy = K.add(K.smul(2, o), K.add(a_at["a1"], a_at["a3"]))
    if fx == z and fy == z:
        raise AssertionError("base point of the pencil is singular")


def classify_rdp(point, fiber_hint=None):
    """Two-stage classification of a singular point.

    Stage 1 matches the blow-up fingerprint against the calibration table
    (when a fiber-based Dynkin type is supplied it takes precedence and the
    fingerprint match becomes a cross-check).  Stage 2 reads the Artin
    coindex from the deformation dimension of the root.
    """
    f = point.local if isinstance(point, SingularPoint) else point
    p = f.K.p
    fp = fingerprint(f)
    match = calibration(p).get(fp)
    if match is None:
        raise NotRdpError("not a rational double point")
    if fiber_hint is not None and fiber_hint != match:
        raise AssertionError(
            "Tate type %s disagrees with resolution fingerprint %s"
            % (fiber_hint, match))
    letter, rank = match
    m = fp[0]
    coidx = coindex_from_m(p, letter, rank, m)
    if coidx is None:
        raise NotRdpError("inconsistent singularity data")
    return RdpClass(letter, rank, coidx)


def surface_configuration(eq, fiber_cfg=None, dual_record=None):
    """RDP configuration of the surface: classify every singular point.

    When a FiberConfiguration is supplied (elliptic case), each point is
    matched to its place and the Tate Dynkin type is cross-checked against
    the fingerprint classifier (classify_rdp raises on disagreement); every
    singular point must then lie under a fiber that contracts to an RDP.
    dual_record, when given, collects one {"tate", "fingerprint"} entry per
    cross-checked point.
    """
    pts = singular_points(eq)
    classes = []
    for pt in pts:
        hint = None
        if fiber_cfg is not None:
            hint = _fiber_hint_for(pt, fiber_cfg)
            if hint is None:
                # the fiber over an RDP of the model always contracts to one;
                # a mismatch means the surface is not an RDP del Pezzo (for
                # example a non-minimal place hiding an elliptic singularity)
                raise NotRdpError(
                    "singular point not under a fiber contracting to a "
                    "rational double point")
        cls = classify_rdp(pt, fiber_hint=hint)
        if dual_record is not None and hint is not None:
            dual_record.append({"tate": "%s%d" % hint,
                                "fingerprint": "%s%d" % (cls.letter, cls.rank)})
        classes.append(cls)
    return tuple(sorted(classes,
                        key=lambda c: (-c.rank, c.letter, c.coindex))), pts


def _fiber_hint_for(pt, fiber_cfg):
    coord = pt.coords[0]
    for pl, kt, _c, _v in fiber_cfg.places:
        if pl.chart == pt.chart:
            if pl.chart == "t":
                return kt.rdp()
            if pl.contains_chart_point("s", coord, pt.level):
                return kt.rdp()
    return None
