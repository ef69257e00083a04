"""Boolean expression AST, parser, printers and evaluation; problem-file DSL.

Grammar (loosest to tightest)::

    expr   := xterm ('|' xterm)*
    xterm  := term (('^' | '<=>') term)*
    term   := factor ('&' factor)*
    factor := '~' factor | atom "'"*
    atom   := '0' | '1' | IDENT | '(' expr ')'

Problem files are ``;``-terminated statements, ``#`` starts a comment::

    generators a b c;
    unknowns X Y;
    suppressed W;
    equation c & (a | X) & (b | Y) = 0;
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from typing import Callable, Mapping

from .algebra import Elem, Signature, from_generator
from .errors import BoolforgeError, ParseError


class Expr:
    __slots__ = ()

    def __and__(self, other):
        return And(self, other)

    def __or__(self, other):
        return Or(self, other)

    def __xor__(self, other):
        return Xor(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        return to_text(self)


@dataclass(frozen=True)
class Const(Expr):
    value: int

    def __post_init__(self):
        if self.value not in (0, 1):
            raise BoolforgeError(f"constant must be 0 or 1, got {self.value!r}")


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Not(Expr):
    arg: Expr


@dataclass(frozen=True)
class Binary(Expr):
    left: Expr
    right: Expr

    symbol = "?"
    precedence = 0


@dataclass(frozen=True)
class And(Binary):
    symbol = "&"
    precedence = 3


@dataclass(frozen=True)
class Xor(Binary):
    symbol = "^"
    precedence = 2


@dataclass(frozen=True)
class Xnor(Binary):
    symbol = "<=>"
    precedence = 2


@dataclass(frozen=True)
class Or(Binary):
    symbol = "|"
    precedence = 1


ZERO = Const(0)
ONE = Const(1)
_BINARY = {"&": And, "|": Or, "^": Xor, "<=>": Xnor}


def conj(items) -> Expr:
    items = list(items)
    return reduce(And, items) if items else ONE


def disj(items) -> Expr:
    items = list(items)
    return reduce(Or, items) if items else ZERO


# ---------------------------------------------------------------- tokenizer

_TOKEN = re.compile(r"""
    (?P<ws>\s+|\#[^\n]*)
  | (?P<op><=>|[&|^~'()=;])
  | (?P<const>[01](?![A-Za-z0-9_]))
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str  # 'op', 'const', 'ident', 'eof'
    text: str
    pos: int


def _byte_offset(text: str, pos: int) -> int:
    return len(text[:pos].encode("utf-8"))


def _error(text: str, pos: int, message: str, expected=()) -> ParseError:
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return ParseError(message, _byte_offset(text, pos), expected, line, column)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise _error(text, pos, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def advance(self) -> Token:
        tok = self.tokens[self.index]
        if tok.kind != "eof":
            self.index += 1
        return tok

    def at(self, text: str) -> bool:
        tok = self.token
        return tok.kind == "op" and tok.text == text

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.fail(f"unexpected {self._describe()}", {repr(text)})
        return self.advance()

    def fail(self, message, expected=()):
        raise _error(self.text, self.token.pos, message, expected)

    def _describe(self):
        tok = self.token
        return "end of input" if tok.kind == "eof" else repr(tok.text)

    def expr(self, min_prec: int = 1) -> Expr:
        left = self.factor()
        while True:
            tok = self.token
            cls = _BINARY.get(tok.text) if tok.kind == "op" else None
            if cls is None or cls.precedence < min_prec:
                return left
            self.advance()
            right = self.expr(cls.precedence + 1)
            left = cls(left, right)

    def factor(self) -> Expr:
        if self.at("~"):
            self.advance()
            return Not(self.factor())
        node = self.atom()
        while self.at("'"):
            self.advance()
            node = Not(node)
        return node

    def atom(self) -> Expr:
        tok = self.token
        if tok.kind == "const":
            self.advance()
            return Const(int(tok.text))
        if tok.kind == "ident":
            self.advance()
            return Var(tok.text)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail(f"unexpected {self._describe()}", {"'('", "'~'", "'0'", "'1'", "identifier"})


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    node = p.expr()
    if p.token.kind != "eof":
        p.fail(f"unexpected {p._describe()}", {"'&'", "'|'", "'^'", "'<=>'", "\"'\"", "end of input"})
    return node


# ---------------------------------------------------------------- printers

def to_text(e: Expr) -> str:
    """Readable text with the minimum parentheses; re-parses to the same AST."""
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Not):
        inner = to_text(e.arg)
        if isinstance(e.arg, Binary):
            inner = f"({inner})"
        return "~" + inner
    left = to_text(e.left)
    right = to_text(e.right)
    if isinstance(e.left, Binary) and e.left.precedence < e.precedence:
        left = f"({left})"
    # left-associative: equal precedence on the right needs parentheses
    if isinstance(e.right, Binary) and e.right.precedence <= e.precedence:
        right = f"({right})"
    return f"{left} {e.symbol} {right}"


def to_full_text(e: Expr) -> str:
    """Fully parenthesized form."""
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Not):
        return "~" + to_full_text(e.arg)
    return f"({to_full_text(e.left)} {e.symbol} {to_full_text(e.right)})"


_JSON_OPS = {And: "and", Or: "or", Xor: "xor", Xnor: "xnor"}
_JSON_CLASSES = {v: k for k, v in _JSON_OPS.items()}


def to_json(e: Expr):
    if isinstance(e, Const):
        return {"const": e.value}
    if isinstance(e, Var):
        return {"var": e.name}
    if isinstance(e, Not):
        return {"op": "not", "args": [to_json(e.arg)]}
    return {"op": _JSON_OPS[type(e)], "args": [to_json(e.left), to_json(e.right)]}


def from_json(data) -> Expr:
    if "const" in data:
        return Const(int(data["const"]))
    if "var" in data:
        return Var(data["var"])
    op = data["op"]
    args = [from_json(a) for a in data["args"]]
    if op == "not":
        return Not(*args)
    try:
        return _JSON_CLASSES[op](*args)
    except KeyError:
        raise BoolforgeError(f"unknown operator {op!r} in JSON AST") from None


# ---------------------------------------------------------------- semantics

def free_vars(e: Expr) -> set[str]:
    out: set[str] = set()
    stack = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            out.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.arg)
        elif isinstance(node, Binary):
            stack.append(node.left)
            stack.append(node.right)
    return out


_APPLY: dict[type, Callable] = {
    And: lambda x, y: x & y,
    Or: lambda x, y: x | y,
    Xor: lambda x, y: x ^ y,
    Xnor: lambda x, y: ~(x ^ y),
}


def evaluate(e: Expr, env: Mapping[str, Elem], sig: Signature | None = None) -> Elem:
    """Homomorphic evaluation of ``e`` in the algebra of the bound elements."""
    if sig is None:
        for value in env.values():
            sig = value.sig
            break
        else:
            raise BoolforgeError("cannot infer a signature from an empty environment")
    memo: dict[int, Elem] = {}

    def ev(node):
        key = id(node)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if isinstance(node, Const):
            out = sig.one() if node.value else sig.zero()
        elif isinstance(node, Var):
            try:
                out = env[node.name]
            except KeyError:
                raise BoolforgeError(f"unbound variable {node.name!r}") from None
        elif isinstance(node, Not):
            out = ~ev(node.arg)
        else:
            out = _APPLY[type(node)](ev(node.left), ev(node.right))
        memo[key] = out
        return out

    return ev(e)


def generator_env(sig: Signature) -> dict[str, Elem]:
    """Generators bound canonically to their own atom sets."""
    return {g: from_generator(sig, g) for g in sig.generators}


def substitute(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    if isinstance(e, Var):
        return mapping.get(e.name, e)
    if isinstance(e, Const):
        return e
    if isinstance(e, Not):
        return Not(substitute(e.arg, mapping))
    return type(e)(substitute(e.left, mapping), substitute(e.right, mapping))


def fold(e: Expr, consts: Mapping[str, int]) -> Expr:
    """Bind some variables to 0/1 and constant-fold the result."""
    if isinstance(e, Var):
        if e.name in consts:
            return ONE if consts[e.name] else ZERO
        return e
    if isinstance(e, Const):
        return e
    if isinstance(e, Not):
        a = fold(e.arg, consts)
        if isinstance(a, Const):
            return Const(1 - a.value)
        if isinstance(a, Not):
            return a.arg
        return Not(a)
    a = fold(e.left, consts)
    b = fold(e.right, consts)
    ca = a.value if isinstance(a, Const) else None
    cb = b.value if isinstance(b, Const) else None
    if isinstance(e, And):
        if ca == 0 or cb == 0:
            return ZERO
        if ca == 1:
            return b
        if cb == 1:
            return a
        return And(a, b)
    if isinstance(e, Or):
        if ca == 1 or cb == 1:
            return ONE
        if ca == 0:
            return b
        if cb == 0:
            return a
        return Or(a, b)
    if ca is not None and cb is not None:
        v = ca ^ cb
        return Const(v if isinstance(e, Xor) else 1 - v)
    flip = isinstance(e, Xnor)
    if ca is not None or cb is not None:
        const, other = (ca, b) if ca is not None else (cb, a)
        if const ^ flip:
            return fold(Not(other), {})
        return other
    return type(e)(a, b)


def truth(e: Expr, values: Mapping[str, int]) -> int:
    """Two-valued evaluation."""
    r = fold(e, values)
    if not isinstance(r, Const):
        raise BoolforgeError(f"unbound variables {sorted(free_vars(r))}")
    return r.value


# ---------------------------------------------------------------- problems

@dataclass(frozen=True)
class Problem:
    generators: tuple[str, ...]
    unknowns: tuple[str, ...]
    suppressed: tuple[str, ...] = ()
    equations: tuple[tuple[Expr, Expr], ...] = field(default=())

    def __post_init__(self):
        classes = {"generators": self.generators, "unknowns": self.unknowns,
                   "suppressed": self.suppressed}
        seen: dict[str, str] = {}
        for cls, names in classes.items():
            for name in names:
                if name in seen:
                    raise BoolforgeError(f"name {name!r} declared twice ({seen[name]}, {cls})")
                seen[name] = cls
        if not self.unknowns:
            raise BoolforgeError("a problem needs at least one unknown")
        for lhs, rhs in self.equations:
            stray = (free_vars(lhs) | free_vars(rhs)) - seen.keys()
            if stray:
                raise BoolforgeError(f"undeclared identifiers: {', '.join(sorted(stray))}")

    def signature(self) -> Signature:
        return Signature(self.generators)

    def to_text(self) -> str:
        lines = []
        if self.generators:
            lines.append("generators " + " ".join(self.generators) + ";")
        lines.append("unknowns " + " ".join(self.unknowns) + ";")
        if self.suppressed:
            lines.append("suppressed " + " ".join(self.suppressed) + ";")
        for lhs, rhs in self.equations:
            lines.append(f"equation {to_text(lhs)} = {to_text(rhs)};")
        return "\n".join(lines) + "\n"


_DECLS = ("generators", "unknowns", "suppressed")


def parse_problem(text: str) -> Problem:
    p = _Parser(text)
    decls: dict[str, list[str]] = {k: [] for k in _DECLS}
    equations = []
    while p.token.kind != "eof":
        tok = p.token
        if tok.kind != "ident" or tok.text not in _DECLS + ("equation",):
            p.fail(f"unexpected {p._describe()}", set(_DECLS) | {"equation"})
        p.advance()
        if tok.text == "equation":
            lhs = p.expr()
            p.expect("=")
            rhs = p.expr()
            p.expect(";")
            equations.append((lhs, rhs))
            continue
        while p.token.kind == "ident":
            decls[tok.text].append(p.advance().text)
        p.expect(";")
    try:
        return Problem(tuple(decls["generators"]), tuple(decls["unknowns"]),
                       tuple(decls["suppressed"]), tuple(equations))
    except BoolforgeError as exc:
        raise ParseError(str(exc), _byte_offset(text, len(text))) from exc
