"""Rational double point classes and configurations.

An RdpClass is (Dynkin letter, rank, Artin coindex); an RdpConfiguration is
a multiset of those, asked about in a fixed characteristic.  This module
also owns the coindex <-> deformation-dimension dictionary for the non-taut
classes in characteristics 2, 3, 5 and the configuration string syntax used
by the CLI and the catalog ("E8^1", "D4^0+3A1", "2A3+2A1").
"""

from dataclasses import dataclass
import re


class InvalidConfigError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class RdpClass:
    letter: str
    rank: int
    coindex: int = 0

    def __post_init__(self):
        if self.letter not in ("A", "D", "E"):
            raise InvalidConfigError("unknown Dynkin letter %r" % (self.letter,))
        if self.letter == "A" and self.rank < 1:
            raise InvalidConfigError("A-rank must be >= 1")
        if self.letter == "D" and self.rank < 4:
            raise InvalidConfigError("D-rank must be >= 4")
        if self.letter == "E" and self.rank not in (6, 7, 8):
            raise InvalidConfigError("E-rank must be 6, 7 or 8")

    def render(self, always_coindex=False):
        base = "%s%d" % (self.letter, self.rank)
        if self.coindex or always_coindex:
            return "%s^%d" % (base, self.coindex)
        return base

    def dynkin(self):
        return (self.letter, self.rank)


def coindex_m_table(p, letter, rank):
    """Map coindex -> dimension m of the miniversal deformation space for
    the non-taut classes; None when the class is taut in characteristic p."""
    if p == 2:
        if letter == "D":
            # D_{2n}^r and D_{2n+1}^r both have m = 4n - 2r, 0 <= r <= n-1
            n = rank // 2
            return {r: 4 * n - 2 * r for r in range(n)}
        if letter == "E":
            return {6: {0: 8, 1: 6},
                    7: {0: 14, 1: 12, 2: 10, 3: 8},
                    8: {0: 16, 1: 14, 2: 12, 3: 10, 4: 8}}[rank]
        return None
    if p == 3:
        if letter == "E":
            return {6: {0: 9, 1: 7},
                    7: {0: 9, 1: 7},
                    8: {0: 12, 1: 10, 2: 8}}[rank]
        return None
    if p == 5:
        if letter == "E" and rank == 8:
            return {0: 10, 1: 8}
        return None
    return None


def is_taut(p, letter, rank):
    return coindex_m_table(p, letter, rank) is None


def valid_coindices(p, letter, rank):
    table = coindex_m_table(p, letter, rank)
    if table is None:
        return [0]
    return sorted(table)


def validate_class(p, cls):
    if cls.coindex not in valid_coindices(p, cls.letter, cls.rank):
        raise InvalidConfigError(
            "no such singularity in characteristic %s: %s" % (p, cls.render(True)))


def coindex_from_m(p, letter, rank, m):
    """Coindex determined by (resolution graph, m); None if m fits no row."""
    table = coindex_m_table(p, letter, rank)
    if table is None:
        return 0
    for k, mk in table.items():
        if mk == m:
            return k
    return None


_CLASS_RE = re.compile(r"^(\d*)([ADE])(\d+)(?:\^(\d+))?$")


def parse_configuration(text):
    """Parse "E8^1", "D4^0+3A1", "2A3+2A1" into a sorted tuple of RdpClass.

    A missing caret means coindex 0 (the taut rendering); a leading integer
    is a multiplicity prefix.
    """
    text = text.strip()
    if not text or text in ("0", "-", "empty"):
        return ()
    out = []
    for part in text.split("+"):
        part = part.strip()
        m = _CLASS_RE.match(part)
        if not m:
            raise InvalidConfigError("cannot parse RDP class %r" % (part,))
        mult = int(m.group(1)) if m.group(1) else 1
        if mult < 1:
            raise InvalidConfigError("bad multiplicity in %r" % (part,))
        cls = RdpClass(m.group(2), int(m.group(3)),
                       int(m.group(4)) if m.group(4) else 0)
        out.extend([cls] * mult)
    return tuple(sorted(out, key=_class_sort_key))


_LETTER_ORDER = {"E": 0, "D": 1, "A": 2}


def _class_sort_key(cls):
    return (-cls.rank, _LETTER_ORDER[cls.letter], cls.coindex)


def normalize_configuration(classes):
    return tuple(sorted(classes, key=_class_sort_key))


def render_configuration(classes, p=None):
    """Canonical display: big summands first, multiplicity prefixes,
    superscripts only where a coindex is carried (or the type is non-taut
    in the given characteristic)."""
    classes = normalize_configuration(classes)
    if not classes:
        return "0"
    parts = []
    i = 0
    while i < len(classes):
        j = i
        while j < len(classes) and classes[j] == classes[i]:
            j += 1
        cls = classes[i]
        always = p is not None and not is_taut(p, cls.letter, cls.rank)
        body = cls.render(always_coindex=always)
        parts.append(body if j - i == 1 else "%d%s" % (j - i, body))
        i = j
    return "+".join(parts)


def validate_configuration(p, classes):
    for cls in classes:
        validate_class(p, cls)


def total_rank(classes):
    return sum(c.rank for c in classes)


def dynkin_multiset(classes):
    """Forget coindices: the (-2)-curve configuration underlying an RDP
    configuration, as a sorted tuple of (letter, rank)."""
    return tuple(sorted((c.dynkin() for c in classes),
                        key=lambda lr: (-lr[1], _LETTER_ORDER[lr[0]])))


def parse_dynkin(text):
    """Parse an ADE sum without coindices, e.g. "D4+4A1"."""
    classes = parse_configuration(text)
    if any(c.coindex for c in classes):
        raise InvalidConfigError("coindices are not allowed here")
    return dynkin_multiset(classes)


def render_dynkin(pairs):
    if not pairs:
        return "0"
    parts = []
    pairs = list(pairs)
    i = 0
    while i < len(pairs):
        j = i
        while j < len(pairs) and pairs[j] == pairs[i]:
            j += 1
        letter, rank = pairs[i]
        body = "%s%d" % (letter, rank)
        parts.append(body if j - i == 1 else "%d%s" % (j - i, body))
        i = j
    return "+".join(parts)
