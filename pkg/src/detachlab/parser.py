"""Parser for the workbench source grammar.

Statements are `;`-terminated, `#` starts a comment.  The core statements
(ring / ideal / point) follow the documented grammar; module, structure,
matrix, family and check statements extend it for the example registry.

parse_source returns a Document holding every named object; printing a
stored object and reparsing it yields a structurally identical value.
"""

from dataclasses import dataclass, field

from .ring import RingDescriptor, CoefficientField, QQ, GREVLEX, LEX, MonomialOrder, eliminate_order
from .poly import Polynomial
from .gb import Ideal


class ParseError(Exception):
    def __init__(self, message, line=None, col=None):
        loc = f" at line {line}, column {col}" if line is not None else ""
        super().__init__(message + loc)
        self.line = line
        self.col = col


@dataclass
class Token:
    kind: str  # word, string, sym
    text: str
    line: int
    col: int


_SYMBOLS = ("==", ">=", "<=", ";", ",", "=", "(", ")", "[", "]", "^", "*", "+", "-", "/", ">", "<", ":")


def tokenize(text):
    tokens = []
    i = 0
    line = 1
    col = 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if c == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == '"':
            j = i + 1
            while j < n and text[j] != '"':
                if text[j] == "\n":
                    raise ParseError("unterminated string", line, col)
                j += 1
            if j >= n:
                raise ParseError("unterminated string", line, col)
            tokens.append(Token("string", text[i + 1 : j], line, col))
            col += j - i + 1
            i = j + 1
            continue
        if c.isalnum() or c == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("word", text[i:j], line, col))
            col += j - i
            i = j
            continue
        matched = None
        for s in _SYMBOLS:
            if text.startswith(s, i):
                matched = s
                break
        if matched is None:
            raise ParseError(f"unexpected character {c!r}", line, col)
        tokens.append(Token("sym", matched, line, col))
        i += len(matched)
        col += len(matched)
    return tokens


@dataclass
class Name:
    """An unresolved reference inside a statement argument."""

    text: str


@dataclass
class StructureDecl:
    name: str
    base: str
    case: str
    support: tuple
    data: dict
    ring: RingDescriptor


@dataclass
class FamilyDecl:
    name: str
    kind: str  # detach kind, "cilimit" or "raw"
    base: str = None
    clauses: dict = field(default_factory=dict)
    ring: RingDescriptor = None


@dataclass
class CheckDecl:
    name: str
    kind: str
    args: list
    comparator: str
    expected: object
    tag: str = "direct"
    ref: str = ""
    ring: RingDescriptor = None


@dataclass
class ModuleDecl:
    name: str
    kind: str
    args: list
    ring: RingDescriptor = None


@dataclass
class Document:
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    polys: dict = field(default_factory=dict)
    points: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    structures: dict = field(default_factory=dict)
    families: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    current_ring: RingDescriptor = None

    def lookup(self, name):
        for table in (
            self.ideals,
            self.polys,
            self.points,
            self.matrices,
            self.modules,
            self.structures,
            self.families,
        ):
            if name in table:
                return table[name]
        if name in self.rings:
            return self.rings[name]
        return None


class Parser:
    def __init__(self, text):
        self.tokens = tokenize(text)
        self.pos = 0
        self.doc = Document()

    # -- token helpers ---------------------------------------------------

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        self.pos += 1
        return tok

    def expect_sym(self, s):
        tok = self.next()
        if tok.kind != "sym" or tok.text != s:
            raise ParseError(f"expected {s!r}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def expect_word(self, w=None):
        tok = self.next()
        if tok.kind != "word" or (w is not None and tok.text != w):
            raise ParseError(f"expected {w or 'a name'}, found {tok.text!r}", tok.line, tok.col)
        return tok

    def at_sym(self, s):
        tok = self.peek()
        return tok is not None and tok.kind == "sym" and tok.text == s

    def at_word(self, w):
        tok = self.peek()
        return tok is not None and tok.kind == "word" and tok.text == w

    def ring(self):
        if self.doc.current_ring is None:
            raise ParseError("no ring declared yet")
        return self.doc.current_ring

    # -- expressions -----------------------------------------------------

    def parse_poly(self, ring=None):
        ring = ring or self.ring()
        return self._expr(ring)

    def _expr(self, ring):
        node = self._term(ring)
        while True:
            if self.at_sym("+"):
                self.next()
                node = node + self._term(ring)
            elif self.at_sym("-"):
                self.next()
                node = node - self._term(ring)
            else:
                return node

    def _term(self, ring):
        node = self._factor(ring)
        while True:
            if self.at_sym("*"):
                self.next()
                node = node * self._factor(ring)
            elif self.at_sym("/"):
                tok = self.next()
                rhs = self._factor(ring)
                if rhs.degree() > 0:
                    raise ParseError("division only by constants", tok.line, tok.col)
                c = rhs.constant_term()
                if c == 0:
                    raise ParseError("division by zero", tok.line, tok.col)
                node = node.scale(ring.fld.inv(c))
            else:
                return node

    def _factor(self, ring):
        if self.at_sym("-"):
            self.next()
            return -self._factor(ring)
        if self.at_sym("+"):
            self.next()
            return self._factor(ring)
        node = self._atom(ring)
        if self.at_sym("^"):
            tok = self.next()
            etok = self.next()
            if etok.kind != "word" or not etok.text.isdigit():
                raise ParseError("exponent must be an integer", etok.line, etok.col)
            node = node ** int(etok.text)
        return node

    def _atom(self, ring):
        tok = self.next()
        if tok.kind == "sym" and tok.text == "(":
            node = self._expr(ring)
            self.expect_sym(")")
            return node
        if tok.kind == "word":
            if tok.text.isdigit():
                return Polynomial.const(ring, int(tok.text))
            if tok.text in ring.all_vars:
                return Polynomial.var(ring, tok.text)
            if tok.text in self.doc.polys:
                p = self.doc.polys[tok.text]
                if p.ring == ring:
                    return p
            raise ParseError(f"unknown variable {tok.text!r}", tok.line, tok.col)
        raise ParseError(f"unexpected token {tok.text!r}", tok.line, tok.col)

    # -- values (check/family arguments) ---------------------------------

    def parse_value(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if tok.kind == "string":
            self.next()
            return tok.text
        if tok.kind == "sym" and tok.text == "(":
            start = self.pos
            try:
                self.next()
                items = []
                if not self.at_sym(")"):
                    items.append(self.parse_value())
                    while self.at_sym(","):
                        self.next()
                        items.append(self.parse_value())
                self.expect_sym(")")
            except ParseError:
                self.pos = start
                return self.parse_poly()
            nxt = self.peek()
            if nxt is not None and nxt.kind == "sym" and nxt.text in ("^", "*", "/", "+", "-"):
                # parenthesized arithmetic, not a tuple
                self.pos = start
                return self.parse_poly()
            return tuple(items)
        if tok.kind == "word" and tok.text in ("true", "false"):
            self.next()
            return tok.text == "true"
        # integer literals that are not part of a longer expression
        def _op_follows(at):
            nxt = self.tokens[at] if at < len(self.tokens) else None
            return nxt is not None and nxt.kind == "sym" and nxt.text in ("^", "*", "/", "+", "-")

        if tok.kind == "sym" and tok.text == "-":
            nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            if nxt is not None and nxt.kind == "word" and nxt.text.isdigit() and not _op_follows(self.pos + 2):
                self.next()
                self.next()
                return -int(nxt.text)
        if tok.kind == "word" and tok.text.isdigit() and not _op_follows(self.pos + 1):
            self.next()
            return int(tok.text)
        # single bare word that names something and is not followed by an
        # operator: a reference.  Everything else: a polynomial expression.
        if tok.kind == "word" and not tok.text.isdigit():
            nxt = self.tokens[self.pos + 1] if self.pos + 1 < len(self.tokens) else None
            operator_follows = nxt is not None and nxt.kind == "sym" and nxt.text in ("^", "*", "+", "-", "/")
            known = (
                self.doc.lookup(tok.text) is not None
                or (self.doc.current_ring and tok.text in self.doc.current_ring.all_vars)
            )
            if not operator_follows:
                self.next()
                if known and self.doc.lookup(tok.text) is not None:
                    return Name(tok.text)
                if self.doc.current_ring and tok.text in self.doc.current_ring.all_vars:
                    return Polynomial.var(self.doc.current_ring, tok.text)
                return Name(tok.text)
        start = self.pos
        try:
            return self.parse_poly()
        except ParseError:
            self.pos = start
            tok = self.next()
            if tok.kind == "word" and tok.text.lstrip("-").isdigit():
                return int(tok.text)
            return Name(tok.text)

    # -- statements -------------------------------------------------------

    def parse_document(self):
        while self.peek() is not None:
            self.statement()
        return self.doc

    def statement(self):
        tok = self.expect_word()
        handler = getattr(self, "stmt_" + tok.text, None)
        if handler is None:
            raise ParseError(f"unknown statement {tok.text!r}", tok.line, tok.col)
        handler()
        self.expect_sym(";")

    def stmt_ring(self):
        name = self.expect_word().text
        self.expect_word("vars")
        names = [self.expect_word().text]
        while self.at_sym(","):
            self.next()
            names.append(self.expect_word().text)
        param = None
        if self.at_word("param"):
            self.next()
            param = self.expect_word().text
        self.expect_word("over")
        ftok = self.expect_word()
        if ftok.text == "QQ":
            fld = QQ
        elif ftok.text == "FF":
            ptok = self.expect_word()
            if not ptok.text.isdigit():
                raise ParseError("FF needs a prime modulus", ptok.line, ptok.col)
            fld = CoefficientField(int(ptok.text))
        else:
            raise ParseError(f"unknown field {ftok.text!r}", ftok.line, ftok.col)
        order = GREVLEX
        if self.at_word("order"):
            self.next()
            otok = self.expect_word()
            if otok.text == "grevlex":
                order = GREVLEX
            elif otok.text == "lex":
                order = LEX
            elif otok.text == "eliminate":
                ktok = self.expect_word()
                order = eliminate_order(int(ktok.text))
            elif otok.text == "paramlast":
                order = MonomialOrder("paramlast")
            else:
                raise ParseError(f"unknown order {otok.text!r}", otok.line, otok.col)
        ring = RingDescriptor(tuple(names), fld, order, param)
        self.doc.rings[name] = ring
        self.doc.current_ring = ring

    def stmt_ideal(self):
        name = self.expect_word().text
        self.expect_sym("=")
        gens = [self.parse_poly()]
        while self.at_sym(","):
            self.next()
            gens.append(self.parse_poly())
        self.doc.ideals[name] = Ideal(self.ring(), gens)

    def stmt_poly(self):
        name = self.expect_word().text
        self.expect_sym("=")
        self.doc.polys[name] = self.parse_poly()

    def stmt_point(self):
        name = self.expect_word().text
        self.expect_sym("=")
        self.expect_sym("(")
        coords = [self._int_or_fraction()]
        while self.at_sym(","):
            self.next()
            coords.append(self._int_or_fraction())
        self.expect_sym(")")
        self.doc.points[name] = tuple(coords)

    def _int_or_fraction(self):
        sign = 1
        if self.at_sym("-"):
            self.next()
            sign = -1
        tok = self.expect_word()
        if not tok.text.isdigit():
            raise ParseError("expected a number", tok.line, tok.col)
        val = sign * int(tok.text)
        if self.at_sym("/"):
            self.next()
            den = self.expect_word()
            from fractions import Fraction

            return Fraction(val, int(den.text))
        return val

    def stmt_matrix(self):
        name = self.expect_word().text
        self.expect_sym("=")
        self.expect_sym("[")
        rows = []
        while True:
            self.expect_sym("[")
            row = [self.parse_poly()]
            while self.at_sym(","):
                self.next()
                row.append(self.parse_poly())
            self.expect_sym("]")
            rows.append(row)
            if self.at_sym(","):
                self.next()
                continue
            break
        self.expect_sym("]")
        self.doc.matrices[name] = rows

    def stmt_module(self):
        name = self.expect_word().text
        self.expect_sym("=")
        kind = self.expect_word().text
        args = []
        while not self.at_sym(";"):
            if self.at_sym(","):
                self.next()
                continue
            args.append(self.parse_value())
        self.doc.modules[name] = ModuleDecl(name, kind, args, self.ring())

    def stmt_structure(self):
        name = self.expect_word().text
        self.expect_word("on")
        base = self.expect_word().text
        self.expect_word("case")
        tok = self.next()
        if tok.kind not in ("word", "string"):
            raise ParseError("expected a case label", tok.line, tok.col)
        case = tok.text
        if case.isdigit():  # labels like `3e` lex as two tokens
            nxt = self.peek()
            if nxt is not None and nxt.kind == "word":
                case += self.next().text
        support = (0, 0, 0)
        if self.at_word("support"):
            self.next()
            support = self.parse_value()
        data = {}
        if self.at_word("data"):
            self.next()
            while True:
                key = self.expect_word().text
                self.expect_sym("=")
                data[key] = self.parse_value()
                if self.at_sym(","):
                    self.next()
                    continue
                break
        self.doc.structures[name] = StructureDecl(name, base, case, support, data, self.ring())

    def stmt_family(self):
        name = self.expect_word().text
        self.expect_sym("=")
        head = self.expect_word().text
        decl = FamilyDecl(name, kind=head, ring=self.ring())
        if head == "detach":
            tok = self.next()
            if tok.kind not in ("word", "string"):
                raise ParseError("expected a family kind", tok.line, tok.col)
            decl.kind = tok.text
        elif head == "cilimit":
            decl.kind = "cilimit"
        elif head == "raw":
            gens = [self.parse_poly()]
            while self.at_sym(","):
                self.next()
                gens.append(self.parse_poly())
            decl.clauses["gens"] = gens
            self.doc.families[name] = decl
            return
        else:
            raise ParseError(f"unknown family form {head!r}")
        while not self.at_sym(";"):
            key = self.expect_word().text
            if self.at_sym("="):
                self.next()
            decl.clauses[key] = self.parse_value()
            if self.at_sym(","):
                self.next()
        self.doc.families[name] = decl

    def stmt_check(self):
        name = self.expect_word().text
        kind = self.expect_word().text
        self.expect_sym("(")
        args = []
        if not self.at_sym(")"):
            args.append(self.parse_value())
            while self.at_sym(","):
                self.next()
                args.append(self.parse_value())
        self.expect_sym(")")
        cmp_tok = self.next()
        if cmp_tok.kind != "sym" or cmp_tok.text not in ("==", ">", ">="):
            raise ParseError("expected ==, > or >=", cmp_tok.line, cmp_tok.col)
        expected = self.parse_value()
        tag = "direct"
        ref = ""
        while not self.at_sym(";"):
            key = self.expect_word()
            if key.text == "tag":
                tag = self.expect_word().text
            elif key.text == "ref":
                tok = self.next()
                if tok.kind != "string":
                    raise ParseError("ref needs a quoted label", tok.line, tok.col)
                ref = tok.text
            else:
                raise ParseError(f"unknown check attribute {key.text!r}", key.line, key.col)
        self.doc.checks.append(
            CheckDecl(name, kind, args, cmp_tok.text, expected, tag, ref, self.ring())
        )


def parse_source(text):
    """Parse a full source document; returns a Document."""
    return Parser(text).parse_document()


def parse_polynomial(text, ring):
    """Parse a single polynomial expression in the given ring."""
    p = Parser("")
    p.tokens = tokenize(text)
    p.pos = 0
    p.doc.current_ring = ring
    poly = p.parse_poly()
    if p.peek() is not None:
        tok = p.peek()
        raise ParseError(f"trailing input {tok.text!r}", tok.line, tok.col)
    return poly
