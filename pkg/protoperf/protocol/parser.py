"""
Parser and serializer for the protocol description language

Grammar::

    corpus    := protocol*
    protocol  := "protocol" IDENT "{" step+ "}"
    step      := IDENT "->" IDENT ":" op (";" op)*
    op        := KIND "(" attr ("," attr)* ")"
    KIND      := "senc" | "sdec" | "hash" | "aenc" | "adec"
    attr      := ("size" | "key") "=" INT | ("alg" | "mode") "=" IDENT

Whitespace is insignificant and ``#`` starts a comment that runs to the end
of the line. ``size`` is required. Omitted attributes take the defaults of
``CryptoOp``. ``mode`` is only accepted on symmetric operations and ``key``
is not accepted on ``hash``.

Canonical form writes one step per line and every attribute the operation
accepts, in the order size, alg, mode, key::

    protocol p {
      A -> B: senc(size=80, alg=aes, mode=cbc, key=128); hash(size=80, alg=sha1)
    }
"""
from typing import Any, Dict, Iterable, List, Optional, Tuple

from ply import lex

from protoperf.bench.spec import MODES
from protoperf.protocol.model import CryptoOp, Protocol, ProtocolStep
from protoperf.shared.category import Category
from protoperf.shared.exceptions import DSLSyntaxError

__all__ = ["parse_protocol", "read_corpus", "serialize_protocol", "write_corpus"]

KINDS = {cat.keyword: cat for cat in Category}
ATTRIBUTES = ("size", "alg", "mode", "key")
_INT_ATTRIBUTES = ("size", "key")


def _column(data: str, lexpos: int) -> int:
    return lexpos - data.rfind("\n", 0, lexpos)


class _Rules(object):
    """Token rules in the form expected by ``ply.lex``"""

    tokens = (
        "IDENT",
        "INT",
        "ARROW",
        "LBRACE",
        "RBRACE",
        "LPAREN",
        "RPAREN",
        "COLON",
        "SEMI",
        "COMMA",
        "EQUALS",
    )

    t_ARROW = r"->"
    t_LBRACE = r"\{"
    t_RBRACE = r"\}"
    t_LPAREN = r"\("
    t_RPAREN = r"\)"
    t_COLON = r":"
    t_SEMI = r";"
    t_COMMA = r","
    t_EQUALS = r"="
    t_ignore = " \t\r"
    t_ignore_COMMENT = r"\#[^\n]*"

    def t_IDENT(self, t: lex.LexToken) -> lex.LexToken:
        r"[A-Za-z_][A-Za-z0-9_]*"
        return t

    def t_INT(self, t: lex.LexToken) -> lex.LexToken:
        r"\d+"
        t.value = int(t.value)
        return t

    def t_newline(self, t: lex.LexToken) -> None:
        r"\n+"
        t.lexer.lineno += len(t.value)

    def t_error(self, t: lex.LexToken) -> None:
        raise DSLSyntaxError(
            f"unexpected character {t.value[0]!r}",
            t.lexer.lineno,
            _column(t.lexer.lexdata, t.lexpos),
        )


_LEXER = lex.lex(object=_Rules(), errorlog=lex.NullLogger())


class _Token(object):
    __slots__ = ("type", "value", "line", "column")

    def __init__(self, type: str, value: Any, line: int, column: int) -> None:
        self.type = type
        self.value = value
        self.line = line
        self.column = column

    def describe(self) -> str:
        if self.type == "EOF":
            return "end of input"
        return repr(str(self.value))


def _tokenize(text: str) -> List[_Token]:
    lexer = _LEXER.clone()
    lexer.lineno = 1
    lexer.input(text)
    out = []
    for tok in iter(lexer.token, None):
        out.append(_Token(tok.type, tok.value, tok.lineno, _column(text, tok.lexpos)))
    end = len(text)
    out.append(_Token("EOF", None, text.count("\n") + 1, _column(text, end)))
    return out


class _Parser(object):
    """Recursive descent over the token list"""

    def __init__(self, text: str) -> None:
        self._tokens = _tokenize(text)
        self._pos = 0

    @property
    def current(self) -> _Token:
        return self._tokens[self._pos]

    def _peek(self, offset: int = 1) -> _Token:
        return self._tokens[min(self._pos + offset, len(self._tokens) - 1)]

    def _error(self, reason: str, tok: Optional[_Token] = None) -> DSLSyntaxError:
        tok = tok or self.current
        return DSLSyntaxError(reason, tok.line, tok.column)

    def _expect(self, type: str, what: str) -> _Token:
        tok = self.current
        if tok.type != type:
            raise self._error(f"expected {what}, found {tok.describe()}")
        self._pos += 1
        return tok

    def at_end(self) -> bool:
        return self.current.type == "EOF"

    def protocol(self) -> Protocol:
        keyword = self._expect("IDENT", '"protocol"')
        if keyword.value != "protocol":
            raise self._error(f'expected "protocol", found {keyword.describe()}', keyword)
        ident = self._expect("IDENT", "protocol identifier")
        self._expect("LBRACE", '"{"')
        steps = [self.step()]
        while self.current.type != "RBRACE":
            steps.append(self.step())
        self._expect("RBRACE", '"}"')
        return Protocol(ident.value, tuple(steps))

    def step(self) -> ProtocolStep:
        sender = self._expect("IDENT", "sender principal")
        self._expect("ARROW", '"->"')
        receiver = self._expect("IDENT", "receiver principal")
        if receiver.value == sender.value:
            raise self._error(f"sender equals receiver ({sender.value})", receiver)
        self._expect("COLON", '":"')
        ops = [self.op()]
        while self.current.type == "SEMI":
            self._pos += 1
            ops.append(self.op())
        return ProtocolStep(sender.value, receiver.value, tuple(ops))

    def op(self) -> CryptoOp:
        kind = self._expect("IDENT", "operation")
        if kind.value not in KINDS:
            raise self._error(
                "unknown operation {0!r}, expected one of {1}".format(
                    kind.value, ", ".join(KINDS)
                ),
                kind,
            )
        category = KINDS[kind.value]
        self._expect("LPAREN", '"("')
        attrs: Dict[str, Any] = {}
        self.attr(category, attrs)
        while self.current.type == "COMMA":
            self._pos += 1
            self.attr(category, attrs)
        self._expect("RPAREN", '")"')
        if "size" not in attrs:
            raise self._error(f"{kind.value} requires a size attribute", kind)
        try:
            return CryptoOp(
                category,
                attrs["size"],
                algorithm=attrs.get("alg"),
                mode=attrs.get("mode"),
                key_bits=attrs.get("key"),
            )
        except ValueError as exc:
            raise self._error(str(exc), kind)

    def attr(self, category: Category, attrs: Dict[str, Any]) -> None:
        name = self._expect("IDENT", "attribute name")
        if name.value not in ATTRIBUTES:
            raise self._error(
                "unknown attribute {0!r}, expected one of {1}".format(
                    name.value, ", ".join(ATTRIBUTES)
                ),
                name,
            )
        if name.value in attrs:
            raise self._error(f"duplicate attribute {name.value!r}", name)
        if name.value == "mode" and not category.is_symmetric:
            raise self._error(f"mode is not valid on {category.keyword} operations", name)
        if name.value == "key" and category.is_hash:
            raise self._error("key is not valid on hash operations", name)
        self._expect("EQUALS", '"="')
        if name.value in _INT_ATTRIBUTES:
            value = self._expect("INT", f"integer value for {name.value}")
            if value.value < 1:
                raise self._error(f"{name.value} must be positive", value)
        else:
            value = self._expect("IDENT", f"identifier value for {name.value}")
            if name.value == "mode" and value.value.lower() not in MODES:
                raise self._error(
                    "unknown mode {0!r}, expected one of {1}".format(
                        value.value, ", ".join(MODES)
                    ),
                    value,
                )
        attrs[name.value] = value.value


def parse_protocol(text: str) -> Protocol:
    """
    Parse a single protocol

    Parameters
    ----------
    text : str
        Protocol description

    Returns
    -------
    Protocol
        The parsed protocol with defaults filled in

    Raises
    ------
    DSLSyntaxError
        On any lexical, syntactic or semantic error, reported as
        ``line:column: reason``

    Examples
    --------
    >>> p = parse_protocol("protocol p { A -> B: senc(size=80, key=128); hash(size=80) }")
    >>> p.ops[0].mode
    'cbc'
    """
    parser = _Parser(text)
    protocol = parser.protocol()
    if not parser.at_end():
        raise parser._error(f"unexpected {parser.current.describe()} after protocol")
    return protocol


def read_corpus(text: str) -> List[Protocol]:
    """
    Parse concatenated protocol blocks

    Parameters
    ----------
    text : str
        Zero or more protocol descriptions

    Returns
    -------
    list[Protocol]
        Protocols in file order

    Raises
    ------
    DSLSyntaxError
        On a parse error or a repeated protocol id
    """
    parser = _Parser(text)
    out: List[Protocol] = []
    seen = set()
    while not parser.at_end():
        ident = parser._peek()
        protocol = parser.protocol()
        if protocol.id in seen:
            raise DSLSyntaxError(
                f"duplicate protocol id {protocol.id!r}", ident.line, ident.column
            )
        seen.add(protocol.id)
        out.append(protocol)
    return out


def _serialize_op(op: CryptoOp) -> str:
    attrs: List[Tuple[str, Any]] = [("size", op.payload_bytes), ("alg", op.algorithm)]
    if op.category.is_symmetric:
        attrs.append(("mode", op.mode))
    if not op.category.is_hash:
        attrs.append(("key", op.key_bits))
    return "{0}({1})".format(op.keyword, ", ".join(f"{k}={v}" for k, v in attrs))


def serialize_protocol(p: Protocol) -> str:
    """
    Canonical text of a protocol

    Parameters
    ----------
    p : Protocol
        Protocol to write

    Returns
    -------
    str
        One step per line with every attribute written explicitly, ending
        with a newline. Structurally equal protocols give identical text.
    """
    lines = [f"protocol {p.id} {{"]
    for step in p.steps:
        ops = "; ".join(_serialize_op(op) for op in step.ops)
        lines.append(f"  {step.sender} -> {step.receiver}: {ops}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_corpus(protocols: Iterable[Protocol]) -> str:
    """Canonical text of several protocols separated by blank lines"""
    return "\n".join(serialize_protocol(p) for p in protocols)
