"""E8 root-system combinatorics.

Roots are integer 8-tuples in the simple-root basis of E8 (an even unimodular
realization); the bilinear form is u^T C v with C the E8 Cartan matrix, and
the geometric convention is negative definite, so "self-intersection -2"
means u^T C u = 2 internally.

Subsystems are enumerated by Borel-de Siebenthal recursion (delete one node
from the affine diagram of each irreducible factor, or delete one node
outright), carrying explicit simple-root bases.  Classes are deduplicated by
(ADE type, Smith invariants of E8 / subsystem); several concrete
representatives per class are retained and expanded to reduce the risk of
missing a quotient shape reachable only through a non-conjugate twin.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .rdp import (dynkin_multiset, parse_dynkin, render_dynkin,
                  validate_configuration, is_taut)

# Bourbaki numbering: chain 1-3-4-5-6-7-8 with node 2 attached to node 4
_E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))

_CARTAN = None


def cartan_matrix():
    global _CARTAN
    if _CARTAN is None:
        C = [[0] * 8 for _ in range(8)]
        for i in range(8):
            C[i][i] = 2
        for i, j in _E8_EDGES:
            C[i][j] = C[j][i] = -1
        _CARTAN = tuple(tuple(r) for r in C)
    return _CARTAN


def pairing(u, v):
    C = cartan_matrix()
    return sum(u[i] * C[i][j] * v[j] for i in range(8) for j in range(8))


@lru_cache(maxsize=1)
def all_roots():
    """The 240 roots, closed under simple reflections from the unit vectors."""
    C = cartan_matrix()
    def reflect(v, i):
        c = sum(C[i][j] * v[j] for j in range(8))
        w = list(v)
        w[i] -= c
        return tuple(w)
    roots = set()
    frontier = [tuple(1 if j == i else 0 for j in range(8)) for i in range(8)]
    roots.update(frontier)
    while frontier:
        nxt = []
        for v in frontier:
            for i in range(8):
                w = reflect(v, i)
                if w not in roots:
                    roots.add(w)
                    nxt.append(w)
        frontier = nxt
    assert len(roots) == 240
    assert all(pairing(v, v) == 2 for v in roots)
    return frozenset(roots)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def smith_normal_form(mat):
    """Invariant factors (sorted, 1s suppressed) and rank of an integer
    matrix, by elementary row/column operations."""
    m = [list(r) for r in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    divs = []
    r = 0
    while r < min(rows, cols):
        # find the nonzero entry of least absolute value in the remaining block
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                if m[i][j] and (best is None or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        m[r], m[i0] = m[i0], m[r]
        for row in m:
            row[r], row[j0] = row[j0], row[r]
        dirty = False
        for i in range(r + 1, rows):
            q = m[i][r] // m[r][r]
            if q:
                for j in range(r, cols):
                    m[i][j] -= q * m[r][j]
            if m[i][r]:
                dirty = True
        for j in range(r + 1, cols):
            q = m[r][j] // m[r][r]
            if q:
                for i in range(r, rows):
                    m[i][j] -= q * m[i][r]
            if m[r][j]:
                dirty = True
        if dirty:
            continue
        divs.append(abs(m[r][r]))
        r += 1
    # enforce the divisibility chain d1 | d2 | ...
    import math
    changed = True
    while changed:
        changed = False
        for i in range(len(divs) - 1):
            a, b = divs[i], divs[i + 1]
            if b % a:
                g = math.gcd(a, b)
                divs[i], divs[i + 1] = g, a * b // g
                changed = True
    divs.sort()
    return [d for d in divs if d != 1], r


def quotient_invariants(basis):
    """(free rank, invariant factors) of E8 / <basis>.

    basis: list of roots as integer 8-tuples in the simple-root coordinates.
    Raises ValueError("not a basis") on dependent input.
    """
    if not basis:
        return 8, []
    mat = [list(v) for v in basis]     # rank x 8; quotient of Z^8 by row span
    divs, rank = smith_normal_form(mat)
    if rank != len(basis):
        raise ValueError("not a basis")
    return 8 - rank, divs


# ---------------------------------------------------------------------------
# diagram recognition
# ---------------------------------------------------------------------------

def _components(basis):
    n = len(basis)
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if pairing(basis[i], basis[j]) != 0:
                adj[i].add(j)
                adj[j].add(i)
    seen = set()
    comps = []
    for i in range(n):
        if i in seen:
            continue
        comp = []
        stack = [i]
        seen.add(i)
        while stack:
            k = stack.pop()
            comp.append(k)
            for nb in adj[k]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        comps.append(sorted(comp))
    return comps, adj


def classify_component(indices, adj):
    """ADE letter of one connected simple diagram."""
    n = len(indices)
    degs = {i: len(adj[i] & set(indices)) for i in indices}
    branch = [i for i in indices if degs[i] >= 3]
    if any(degs[i] > 3 for i in indices) or len(branch) > 1:
        raise AssertionError("not an ADE diagram")
    if not branch:
        return ("A", n)
    b = branch[0]
    # branch arm lengths from the trivalent node
    arms = []
    for start in (adj[b] & set(indices)):
        length = 1
        prev, cur = b, start
        while True:
            nxt = [x for x in (adj[cur] & set(indices)) if x != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ("D", n)
    if arms == [1, 2, 2] and n == 6:
        return ("E", 6)
    if arms == [1, 2, 3] and n == 7:
        return ("E", 7)
    if arms == [1, 2, 4] and n == 8:
        return ("E", 8)
    raise AssertionError("not an ADE diagram")


def _component_roots(comp_basis):
    """All roots of the subsystem spanned by one component's simple basis,
    by reflection closure inside the component."""
    basis = list(comp_basis)
    roots = set(basis)
    frontier = list(basis)
    while frontier:
        nxt = []
        for v in frontier:
            for a in basis:
                c = pairing(v, a)
                w = tuple(x - c * y for x, y in zip(v, a))
                if w not in roots:
                    roots.add(w)
                    nxt.append(w)
        frontier = nxt
    return roots


def _highest_root(comp_basis):
    """The dominant root: climb by simple-root additions."""
    roots = _component_roots(comp_basis)
    v = comp_basis[0]
    changed = True
    while changed:
        changed = False
        for a in comp_basis:
            w = tuple(x + y for x, y in zip(v, a))
            if w in roots:
                v = w
                changed = True
                break
    return v


# ---------------------------------------------------------------------------
# subsystem classes
# ---------------------------------------------------------------------------

@dataclass
class SubsystemClass:
    ade_type: tuple            # sorted ((letter, rank), ...)
    basis: tuple               # one explicit simple-root basis
    free_rank: int
    invariants: tuple          # invariant factors > 1, sorted

    def torsion_count(self, ell):
        return sum(1 for d in self.invariants if d % ell == 0)

    def is_elementary_p(self, p):
        return self.free_rank == 0 and all(d == p for d in self.invariants)

    def condition_T_ell(self, ell):
        """(E8/Gamma')[ell] contained in (Z/ell)^2."""
        return self.torsion_count(ell) <= 2

    def condition_T_p(self, p):
        """(E8/Gamma')[p] in Z/p, or the quotient is (Z/p)^n."""
        if p == 0:
            return True
        return self.torsion_count(p) <= 1 or self.is_elementary_p(p)

    def record(self):
        return {
            "type": render_dynkin(self.ade_type),
            "basis": [list(v) for v in self.basis],
            "free_rank": self.free_rank,
            "invariant_factors": list(self.invariants),
            "T_ell": {ell: self.condition_T_ell(ell) for ell in (2, 3, 5, 7)},
            "T_p": {q: self.condition_T_p(q) for q in (2, 3, 5, 7)},
        }


def _type_of_basis(basis):
    comps, adj = _components(basis)
    out = []
    for comp in comps:
        out.append(classify_component(comp, adj))
    return tuple(sorted(out, key=lambda lr: (-lr[1], {"E": 0, "D": 1, "A": 2}[lr[0]])))


_ENUM_CACHE = None
_REPS_PER_CLASS = 4


def enumerate_subsystems():
    """Every root subsystem of E8 up to achievable (type, quotient) pairs.

    Borel-de Siebenthal recursion from the full E8 basis, deduplicated by
    (ADE type, Smith invariants); the empty subsystem is included.  Returns
    a list of SubsystemClass sorted by (total rank, type string).
    """
    global _ENUM_CACHE
    if _ENUM_CACHE is not None:
        return _ENUM_CACHE
    start = tuple(tuple(1 if j == i else 0 for j in range(8)) for i in range(8))
    reps = {}          # key -> list of frozenset bases kept for expansion
    classes = {}       # key -> SubsystemClass
    queue = [start]
    def key_of(basis):
        if not basis:
            return ((), 8, ())
        t = _type_of_basis(basis)
        free, divs = quotient_invariants(basis)
        return (t, free, tuple(divs))
    def consider(basis):
        basis = tuple(sorted(basis))
        k = key_of(basis)
        bucket = reps.setdefault(k, [])
        if k not in classes:
            t, free, divs = k
            classes[k] = SubsystemClass(t, basis, free, divs)
        marker = frozenset(basis)
        if marker in bucket or len(bucket) >= _REPS_PER_CLASS:
            return False
        bucket.append(marker)
        queue.append(basis)
        return True
    consider(start)
    consider(())
    while queue:
        basis = queue.pop()
        if not basis:
            continue
        comps, adj = _components(list(basis))
        # node deletions (arbitrary sub-diagrams, one node at a time)
        for i in range(len(basis)):
            child = basis[:i] + basis[i + 1:]
            consider(child)
        # affine extension of each component, minus one node
        for comp in comps:
            comp_basis = [basis[i] for i in comp]
            lowest = tuple(-x for x in _highest_root(comp_basis))
            rest = [basis[i] for i in range(len(basis)) if i not in comp]
            extended = comp_basis + [lowest]
            for skip in range(len(comp_basis)):
                child = rest + extended[:skip] + extended[skip + 1:]
                if _is_independent(child):
                    consider(child)
    out = sorted(classes.values(),
                 key=lambda c: (sum(r for _l, r in c.ade_type),
                                render_dynkin(c.ade_type),
                                c.free_rank, c.invariants))
    _ENUM_CACHE = out
    return out


def _is_independent(vectors):
    if not vectors:
        return True
    rows = [[Fraction(x) for x in v] for v in vectors]
    cols = 8
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r == len(vectors)


def classes_of_type(ade_type):
    return [c for c in enumerate_subsystems() if c.ade_type == tuple(ade_type)]


def check_conditions(ade_type, p):
    """Flags {E8, T2 (= E8+T[l=2]), Tp (= E8+T[p])}, existential over all
    embedding classes of the given type."""
    cls = classes_of_type(ade_type)
    if not cls:
        return {"E8": False, "T2": False, "Tp": False}
    return {
        "E8": True,
        "T2": any(c.condition_T_ell(2) for c in cls),
        "Tp": any(c.condition_T_p(p) for c in cls) if p else True,
    }


# ---------------------------------------------------------------------------
# the occurrence decision procedure
# ---------------------------------------------------------------------------

_P_NE_2_EXCLUDED = (parse_dynkin("D4+4A1"), parse_dynkin("8A1"),
                    parse_dynkin("7A1"))
_P_EQ_2_EXCLUDED = (parse_dynkin("2A3+2A1"), parse_dynkin("A3+4A1"),
                    parse_dynkin("6A1"))
_SEVEN_A1 = parse_dynkin("7A1")


@dataclass
class OccurrenceVerdict:
    occurs: bool
    degree1_witness: str       # "yes" / "no" / "only-degree-2"
    rationale: str

    def as_dict(self):
        return {"occurs": self.occurs, "degree1_witness": self.degree1_witness,
                "rationale": self.rationale}


def decide_occurrence(classes, p):
    """Does the RDP configuration occur on an RDP del Pezzo surface in
    characteristic p?  `classes` is a tuple of RdpClass; p may be 0."""
    validate_configuration(p, classes)
    gamma = dynkin_multiset(classes)
    if not gamma:
        return OccurrenceVerdict(True, "yes", "empty configuration: smooth del Pezzo")
    if sum(r for _l, r in gamma) > 8:
        return OccurrenceVerdict(False, "no", "rank exceeds 8")
    flags = check_conditions(gamma, p)
    if p != 2:
        occurs = flags["E8"] and gamma not in _P_NE_2_EXCLUDED
        if occurs != flags["T2"] or (flags["E8"] and not flags["Tp"]):
            raise AssertionError("lattice condition tables are inconsistent")
        tag = ("satisfies (E8+T[l=2])" if occurs else
               ("does not embed into E8" if not flags["E8"]
                else "embeds but violates (E8+T[l=2])"))
        if p in (3, 5) and any(not is_taut(p, c.letter, c.rank) for c in classes):
            member = _catalog_has(classes, p)
            if member != occurs:
                raise AssertionError(
                    "lattice verdict disagrees with catalog membership")
        return OccurrenceVerdict(occurs, "yes" if occurs else "no", tag)
    # p = 2
    if all(is_taut(2, c.letter, c.rank) for c in classes):
        occurs = flags["E8"] and gamma not in _P_EQ_2_EXCLUDED
        if not occurs:
            tag = ("does not embed into E8" if not flags["E8"]
                   else "embeds but violates (E8+T[p=2])")
            return OccurrenceVerdict(False, "no", tag)
        if gamma == _SEVEN_A1:
            return OccurrenceVerdict(True, "only-degree-2",
                                     "occurs on a unique degree-2 surface only")
        return OccurrenceVerdict(True, "yes", "satisfies the char-2 weak del Pezzo criterion")
    member = _catalog_has(classes, 2)
    if not member:
        return OccurrenceVerdict(False, "no",
                                 "non-taut char-2 configuration outside the catalog")
    if _catalog_degree2_only(classes, 2):
        return OccurrenceVerdict(True, "only-degree-2",
                                 "catalog row occurs only in degree 2")
    return OccurrenceVerdict(True, "yes", "catalog member")


def _catalog_has(classes, p):
    from . import catalog
    from .rdp import normalize_configuration
    return normalize_configuration(classes) in catalog.configuration_set(p)


def _catalog_degree2_only(classes, p):
    from . import catalog
    from .rdp import normalize_configuration
    entry = catalog.configuration_set(p).get(normalize_configuration(classes))
    return entry == "degree2"
