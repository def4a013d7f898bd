"""Parsing for the equation input language, symbolic table expressions and
the extra-RDP condition predicates.

One tokenizer and recursive-descent grammar serve four consumers: CLI
Weierstrass equations, catalog equations with named parameters, the tables'
symbolic discriminant / j expressions, and the predicate language of the
dashed sub-rows ("a65 = 0 and a64 != 0", "a65 in {0, 1}").

Multiplication signs are optional ("t^5*s" and "t^5 s" both work); an
alphanumeric run with no keyword meaning is split greedily into parameter
names (a letter followed by digits) and single-letter variables, so "ts"
means t*s.
"""

import re

from .poly import BiPoly, LocalPoly


class ParseError(ValueError):
    def __init__(self, message, pos=None):
        self.pos = pos
        super().__init__(message if pos is None
                         else "%s (at position %d)" % (message, pos))


_KEYWORDS = ("and", "or", "not", "in", "delta", "Delta")
_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(!=|[=+\-*^/(){},]))")


def tokenize(text):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError("unexpected character %r" % text[pos], pos)
        pos = m.end()
        if m.group(1):
            out.append(("int", int(m.group(1)), m.start()))
        elif m.group(2):
            word = m.group(2)
            if word in _KEYWORDS:
                tok = "delta" if word in ("delta", "Delta") else word
                out.append(("kw", tok, m.start()))
            else:
                for name in _split_names(word, m.start()):
                    out.append(("name", name, m.start()))
        else:
            out.append(("op", m.group(3), m.start()))
    out.append(("end", None, len(text)))
    return out


def _split_names(word, pos):
    """Greedy split of an alphanumeric run into parameter names (letter +
    digits) and single-letter variables."""
    out = []
    i = 0
    while i < len(word):
        m = re.match(r"[A-Za-z]\d+", word[i:])
        if m:
            out.append(word[i:i + m.end()])
            i += m.end()
            continue
        if word[i].isdigit():
            raise ParseError("cannot read symbol %r" % word, pos)
        out.append(word[i])
        i += 1
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise ParseError("expected %r" % op, pos)

    def at_op(self, op):
        kind, val, _ = self.peek()
        return kind == "op" and val == op

    def at_kw(self, kw):
        kind, val, _ = self.peek()
        return kind == "kw" and val == kw

    # ----- arithmetic expressions -----

    def expr(self):
        node = self.term()
        while self.at_op("+") or self.at_op("-"):
            _k, op, _p = self.next()
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.factor()
        while True:
            if self.at_op("*"):
                self.next()
                node = ("mul", node, self.factor())
                continue
            kind, val, _ = self.peek()
            if kind in ("int", "name") or (kind == "kw" and val == "delta") \
                    or (kind == "op" and val == "("):
                node = ("mul", node, self.factor())
                continue
            return node

    def factor(self):
        if self.at_op("-"):
            self.next()
            return ("neg", self.factor())
        node = self.primary()
        if self.at_op("^"):
            self.next()
            kind, val, pos = self.next()
            if kind != "int":
                raise ParseError("exponent must be an integer", pos)
            node = ("pow", node, val)
        return node

    def primary(self):
        kind, val, pos = self.next()
        if kind == "int":
            return ("int", val)
        if kind == "name":
            return ("name", val)
        if kind == "kw" and val == "delta":
            return ("name", "delta")
        if kind == "op" and val == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        raise ParseError("unexpected token %r" % (val,), pos)

    # ----- predicates -----

    def pred(self):
        node = self.pred_and()
        while self.at_kw("or"):
            self.next()
            node = ("or", node, self.pred_and())
        return node

    def pred_and(self):
        node = self.pred_not()
        while self.at_kw("and"):
            self.next()
            node = ("and", node, self.pred_not())
        return node

    def pred_not(self):
        if self.at_kw("not"):
            self.next()
            return ("not", self.pred_not())
        if self.at_op("("):
            save = self.i
            self.next()
            try:
                node = self.pred()
                self.expect_op(")")
                return node
            except ParseError:
                self.i = save
        return self.comparison()

    def comparison(self):
        lhs = self.expr()
        if self.at_op("="):
            self.next()
            return ("eq", lhs, self.expr())
        if self.at_op("!="):
            self.next()
            return ("ne", lhs, self.expr())
        if self.at_kw("in"):
            self.next()
            self.expect_op("{")
            items = [self.expr()]
            while self.at_op(","):
                self.next()
                items.append(self.expr())
            self.expect_op("}")
            return ("in", lhs, items)
        kind, val, pos = self.peek()
        raise ParseError("expected a comparison, found %r" % (val,), pos)


def parse_expression(text):
    p = _Parser(tokenize(text))
    node = p.expr()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError("trailing input %r" % (val,), pos)
    return node


def parse_fraction(text):
    """Top-level 'num / den' used by the j column; den defaults to 1."""
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return parse_expression(text[:i]), parse_expression(text[i + 1:])
    return parse_expression(text), ("int", 1)


def parse_predicate(text):
    p = _Parser(tokenize(text))
    node = p.pred()
    kind, val, pos = p.peek()
    if kind != "end":
        raise ParseError("trailing input %r" % (val,), pos)
    return node


def parse_equation_sides(text):
    if text.count("=") != 1:
        raise ParseError("an equation needs exactly one '='")
    lhs, rhs = text.split("=")
    return parse_expression(lhs), parse_expression(rhs)


def ast_names(node):
    kind = node[0]
    if kind == "name":
        return {node[1]}
    if kind == "int":
        return set()
    if kind in ("add", "sub", "mul", "and", "or", "eq", "ne"):
        return ast_names(node[1]) | ast_names(node[2])
    if kind in ("neg", "not"):
        return ast_names(node[1])
    if kind == "pow":
        return ast_names(node[1])
    if kind == "in":
        out = ast_names(node[1])
        for item in node[2]:
            out |= ast_names(item)
        return out
    raise ValueError("unknown node %r" % (kind,))


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def eval_scalar(node, K, env):
    """Field-element value; names must be bound in env."""
    kind = node[0]
    if kind == "int":
        return K.from_int(node[1])
    if kind == "name":
        if node[1] not in env:
            raise ParseError("unknown symbol %r" % node[1])
        return env[node[1]]
    if kind == "add":
        return K.add(eval_scalar(node[1], K, env), eval_scalar(node[2], K, env))
    if kind == "sub":
        return K.sub(eval_scalar(node[1], K, env), eval_scalar(node[2], K, env))
    if kind == "mul":
        return K.mul(eval_scalar(node[1], K, env), eval_scalar(node[2], K, env))
    if kind == "neg":
        return K.neg(eval_scalar(node[1], K, env))
    if kind == "pow":
        return K.pow(eval_scalar(node[1], K, env), node[2])
    raise ParseError("not a scalar expression: %r" % (kind,))


def eval_predicate(node, K, env):
    kind = node[0]
    if kind == "and":
        return eval_predicate(node[1], K, env) and eval_predicate(node[2], K, env)
    if kind == "or":
        return eval_predicate(node[1], K, env) or eval_predicate(node[2], K, env)
    if kind == "not":
        return not eval_predicate(node[1], K, env)
    if kind == "eq":
        return eval_scalar(node[1], K, env) == eval_scalar(node[2], K, env)
    if kind == "ne":
        return eval_scalar(node[1], K, env) != eval_scalar(node[2], K, env)
    if kind == "in":
        val = eval_scalar(node[1], K, env)
        return any(val == eval_scalar(item, K, env) for item in node[2])
    raise ParseError("not a predicate: %r" % (kind,))


class _WValue:
    """Polynomial in (x, y) with graded (t, s)-form coefficients:
    data[(i, j)][d] is the degree-d form multiplying x^i y^j."""

    __slots__ = ("K", "data")

    def __init__(self, K, data=None):
        self.K = K
        self.data = data or {}

    @staticmethod
    def const(K, form):
        if form.is_zero():
            return _WValue(K)
        return _WValue(K, {(0, 0): {form.degree: form}})

    def add(self, other, sign=+1):
        K = self.K
        out = {k: dict(v) for k, v in self.data.items()}
        for key, byd in other.data.items():
            slot = out.setdefault(key, {})
            for d, form in byd.items():
                f = form if sign > 0 else form.neg()
                cur = slot.get(d)
                new = f if cur is None else cur.add(f)
                if new.is_zero():
                    slot.pop(d, None)
                else:
                    slot[d] = new
            if not slot:
                out.pop(key, None)
        return _WValue(K, out)

    def mul(self, other):
        K = self.K
        out = {}
        for (i1, j1), byd1 in self.data.items():
            for (i2, j2), byd2 in other.data.items():
                key = (i1 + i2, j1 + j2)
                slot = out.setdefault(key, {})
                for d1, f1 in byd1.items():
                    for d2, f2 in byd2.items():
                        f = f1.mul(f2)
                        cur = slot.get(d1 + d2)
                        new = f if cur is None else cur.add(f)
                        if new.is_zero():
                            slot.pop(d1 + d2, None)
                        else:
                            slot[d1 + d2] = new
        return _WValue(K, {k: v for k, v in out.items() if v})

    def neg(self):
        return _WValue(self.K, {k: {d: f.neg() for d, f in v.items()}
                                for k, v in self.data.items()})

    def pow(self, n):
        out = _WValue.const(self.K, BiPoly.const(self.K, self.K.one))
        for _ in range(n):
            out = out.mul(self)
        return out


def eval_wvalue(node, K, env):
    """Evaluate in the graded ring k[t,s][x,y]; env binds parameter names to
    field elements (treated as degree-0 forms)."""
    kind = node[0]
    if kind == "int":
        return _WValue.const(K, BiPoly.const(K, K.from_int(node[1])))
    if kind == "name":
        nm = node[1]
        if nm == "t":
            return _WValue.const(K, BiPoly.monomial(K, K.one, 1, 0))
        if nm == "s":
            return _WValue.const(K, BiPoly.monomial(K, K.one, 0, 1))
        if nm == "x":
            return _WValue(K, {(1, 0): {0: BiPoly.const(K, K.one)}})
        if nm == "y":
            return _WValue(K, {(0, 1): {0: BiPoly.const(K, K.one)}})
        if nm in env:
            return _WValue.const(K, BiPoly.const(K, env[nm]))
        raise ParseError("unknown symbol %r" % nm)
    if kind == "add":
        return eval_wvalue(node[1], K, env).add(eval_wvalue(node[2], K, env))
    if kind == "sub":
        return eval_wvalue(node[1], K, env).add(eval_wvalue(node[2], K, env), -1)
    if kind == "mul":
        return eval_wvalue(node[1], K, env).mul(eval_wvalue(node[2], K, env))
    if kind == "neg":
        return eval_wvalue(node[1], K, env).neg()
    if kind == "pow":
        return eval_wvalue(node[1], K, env).pow(node[2])
    raise ParseError("not an equation expression: %r" % (kind,))


def eval_form(node, K, env):
    """A single homogeneous (t, s)-form (used for the tables' Delta column)."""
    v = eval_wvalue(node, K, env)
    if not v.data:
        return BiPoly.zero(K)
    if set(v.data) != {(0, 0)}:
        raise ParseError("x and y are not allowed here")
    byd = v.data[(0, 0)]
    if len(byd) != 1:
        raise ParseError("inhomogeneous expression where a form was expected")
    return next(iter(byd.values()))


_ALLOWED_MONOS = {(0, 2): None, (1, 1): "a1", (0, 1): "a3",
                  (3, 0): None, (2, 0): "a2", (1, 0): "a4", (0, 0): "a6"}
_WEIGHTS = {(0, 2): 0, (1, 1): 1, (0, 1): 3, (3, 0): 0,
            (2, 0): 2, (1, 0): 4, (0, 0): 6}


class EquationShapeError(ValueError):
    pass


def equation_from_sides(lhs_ast, rhs_ast, K, env):
    """Validate the Weierstrass shape and weighted homogeneity; build the
    equation.  Raises EquationShapeError with the offending term named."""
    from .weierstrass import WeierstrassEq
    E = eval_wvalue(lhs_ast, K, env).add(eval_wvalue(rhs_ast, K, env), -1)
    one = BiPoly.const(K, K.one)
    for (i, j), byd in E.data.items():
        if (i, j) not in _ALLOWED_MONOS:
            raise EquationShapeError(
                "not a Weierstrass sextic: monomial x^%d*y^%d" % (i, j))
        want = _WEIGHTS[(i, j)]
        for d in byd:
            if d != want:
                term = _term_name(byd[d], i, j)
                raise EquationShapeError(
                    "inhomogeneous term %s (weighted degree %d != 6)"
                    % (term, 2 * i + 3 * j + d))
    y2 = E.data.get((0, 2), {}).get(0)
    x3 = E.data.get((3, 0), {}).get(0)
    if y2 is None or y2 != one:
        raise EquationShapeError("not a Weierstrass sextic: y^2 coefficient != 1")
    if x3 is None or x3 != one.neg():
        raise EquationShapeError("not a Weierstrass sextic: x^3 coefficient != -1")
    def grab(key, sign):
        byd = E.data.get(key, {})
        if not byd:
            return BiPoly.zero(K)
        form = next(iter(byd.values()))
        return form if sign > 0 else form.neg()
    return WeierstrassEq(K, grab((1, 1), +1), grab((2, 0), -1),
                         grab((0, 1), +1), grab((1, 0), -1), grab((0, 0), -1))


def _term_name(form, i, j):
    bits = [form.monic().format()]
    if i:
        bits.append("x" if i == 1 else "x^%d" % i)
    if j:
        bits.append("y" if j == 1 else "y^%d" % j)
    return "*".join(b for b in bits if b != "1") or "1"


def parse_weierstrass(text, K, env=None):
    lhs, rhs = parse_equation_sides(text)
    return equation_from_sides(lhs, rhs, K, env or {})


def eval_local(node, K, env, varnames):
    """Evaluate a polynomial expression into LocalPoly over `varnames`."""
    kind = node[0]
    vars = tuple(varnames)
    if kind == "int":
        return LocalPoly.const(K, vars, K.from_int(node[1]))
    if kind == "name":
        nm = node[1]
        if nm in vars:
            return LocalPoly.var(K, vars, nm)
        if nm in env:
            return LocalPoly.const(K, vars, env[nm])
        raise ParseError("unknown symbol %r" % nm)
    if kind == "add":
        return eval_local(node[1], K, env, vars).add(eval_local(node[2], K, env, vars))
    if kind == "sub":
        return eval_local(node[1], K, env, vars).sub(eval_local(node[2], K, env, vars))
    if kind == "mul":
        return eval_local(node[1], K, env, vars).mul(eval_local(node[2], K, env, vars))
    if kind == "neg":
        return eval_local(node[1], K, env, vars).neg()
    if kind == "pow":
        return eval_local(node[1], K, env, vars).pow(node[2])
    raise ParseError("not a polynomial expression: %r" % (kind,))
