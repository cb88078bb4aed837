"""Plain-text instance format, canonical serialization, and digests.

Format (``#`` starts a comment line; blank lines are ignored)::

    n m d        number of nodes, number of links, hop bound
    s t          the two terminals, node ids in [0, n)
    u v p        one line per link; p is a reliability token

Reliability tokens: ``1`` (perfect), ``0``, a decimal like ``0.25``, an exact
rational like ``3/4``, or the bare symbol ``p`` (polynomial mode).  Symbolic
and non-{0,1} numeric reliabilities cannot be mixed: a polynomial-mode
instance must carry the same symbol on every imperfect link.

A hop bound beyond ``n - 1`` is admitted and clamped to ``n - 1`` (no
elementary path can be longer).  Serialization is canonical: nodes are
renumbered densely in sorted order and links sorted by endpoints, so equal
instances serialize identically; the digest is the SHA-256 of that text.
"""

from __future__ import annotations

import hashlib
import re
from decimal import Decimal, InvalidOperation
from fractions import Fraction

from .errors import ParseError
from .graph import Graph, Instance
from .values import Mode, P_SYMBOL, Poly, Value, from_fraction, is_one, is_zero, one, zero

_TOKEN = re.compile(r"\S+")

MODES = {m.value: m for m in Mode}


def parse_reliability_token(token: str) -> tuple[str, Fraction | None]:
    """Classify a reliability token: ('one'|'zero'|'symbol'|'number', value)."""
    if token == "1":
        return "one", Fraction(1)
    if token == "0":
        return "zero", Fraction(0)
    if token == "p":
        return "symbol", None
    if "/" in token:
        num, _, den = token.partition("/")
        if num.lstrip("+").isdigit() and den.isdigit() and int(den) != 0:
            return "number", Fraction(int(num), int(den))
        raise ValueError(f"malformed rational {token!r}")
    try:
        return "number", Fraction(Decimal(token))
    except (InvalidOperation, ValueError, OverflowError):
        raise ValueError(f"unrecognized reliability token {token!r}") from None


def reliability_value(kind: str, number: Fraction | None, mode: Mode) -> Value:
    if kind == "one":
        return one(mode)
    if kind == "zero":
        return zero(mode)
    if kind == "symbol":
        if mode is not Mode.POLY:
            raise ValueError("symbolic reliability requires polynomial mode")
        return P_SYMBOL
    if mode is Mode.POLY:
        raise ValueError("polynomial mode admits only 0, 1 and the symbol p")
    return from_fraction(number, mode)


def _significant_lines(text: str):
    for i, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        yield i, raw


def _tokens(line_no: int, raw: str, expect: int, what: str) -> list[tuple[str, int]]:
    toks = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(raw)]
    if len(toks) != expect:
        col = toks[expect][1] if len(toks) > expect else len(raw) + 1
        raise ParseError(f"expected {expect} fields ({what}), got {len(toks)}", line_no, col)
    return toks

def _int_field(token: str, col: int, line_no: int, what: str) -> int:
    try:
        value = int(token)
    except ValueError:
        raise ParseError(f"{what} must be an integer, got {token!r}", line_no, col) from None
    return value


def parse_instance_text(text: str, mode: str | Mode | None = None) -> Instance:
    """Parse an instance; ``mode`` may be 'float', 'rational', 'poly' or None.

    With ``None`` the mode is inferred: polynomial when any link carries the
    symbol ``p``, exact rational otherwise.
    """
    if isinstance(mode, str):
        if mode in ("auto", ""):
            mode = None
        elif mode in MODES:
            mode = MODES[mode]
        else:
            raise ValueError(f"unknown mode {mode!r}; expected one of {sorted(MODES)} or 'auto'")

    lines = list(_significant_lines(text))
    if len(lines) < 2:
        raise ParseError("instance needs a header line and a terminals line",
                         lines[-1][0] + 1 if lines else 1)
    header = _tokens(*lines[0], expect=3, what="nodes, links, hop bound")
    line_no = lines[0][0]
    n = _int_field(header[0][0], header[0][1], line_no, "node count")
    m = _int_field(header[1][0], header[1][1], line_no, "link count")
    d = _int_field(header[2][0], header[2][1], line_no, "hop bound")
    if n < 2:
        raise ParseError(f"need at least 2 nodes, got {n}", line_no, header[0][1])
    if m < 0:
        raise ParseError(f"link count cannot be negative", line_no, header[1][1])
    if d < 1:
        raise ParseError(f"hop bound must be at least 1, got {d}", line_no, header[2][1])
    d = min(d, n - 1)

    term = _tokens(*lines[1], expect=2, what="source, target")
    t_line = lines[1][0]
    source = _int_field(term[0][0], term[0][1], t_line, "source")
    target = _int_field(term[1][0], term[1][1], t_line, "target")
    for node, col in ((source, term[0][1]), (target, term[1][1])):
        if not 0 <= node < n:
            raise ParseError(f"terminal {node} outside 0..{n - 1}", t_line, col)
    if source == target:
        raise ParseError("source and target must differ", t_line, term[1][1])

    if len(lines) != 2 + m:
        extra = lines[2 + m] if len(lines) > 2 + m else lines[-1]
        raise ParseError(f"expected {m} link lines, found {len(lines) - 2}",
                         extra[0] + (0 if len(lines) > 2 + m else 1))

    raw_links = []
    symbol_at = numeric_at = None
    for line_no, raw in lines[2:]:
        toks = _tokens(line_no, raw, expect=3, what="node, node, reliability")
        u = _int_field(toks[0][0], toks[0][1], line_no, "endpoint")
        v = _int_field(toks[1][0], toks[1][1], line_no, "endpoint")
        for node, col in ((u, toks[0][1]), (v, toks[1][1])):
            if not 0 <= node < n:
                raise ParseError(f"endpoint {node} outside 0..{n - 1}", line_no, col)
        if u == v:
            raise ParseError(f"self-loop on node {u} not allowed", line_no, toks[1][1])
        tok, col = toks[2]
        try:
            kind, number = parse_reliability_token(tok)
        except ValueError as exc:
            raise ParseError(str(exc), line_no, col) from None
        if kind == "number" and not 0 <= number <= 1:
            raise ParseError(f"reliability {tok} outside [0, 1]", line_no, col)
        if kind == "symbol" and symbol_at is None:
            symbol_at = (line_no, col)
        if kind == "number" and not (number == 0 or number == 1) and numeric_at is None:
            numeric_at = (line_no, col)
        raw_links.append((u, v, kind, number, line_no, col))

    if symbol_at and numeric_at:
        where = max(symbol_at, numeric_at)
        raise ParseError("cannot mix symbolic and numeric reliabilities", *where)
    if mode is None:
        mode = Mode.POLY if symbol_at else Mode.RATIONAL
    if mode is Mode.POLY and numeric_at:
        raise ParseError("polynomial mode admits only 0, 1 and the symbol p", *numeric_at)
    if mode is not Mode.POLY and symbol_at:
        raise ParseError(f"symbolic reliability requires polynomial mode, not {mode.value}",
                         *symbol_at)

    triples = []
    for u, v, kind, number, line_no, col in raw_links:
        triples.append((u, v, reliability_value(kind, number, mode)))
    return Instance(Graph.from_links(n, triples), source, target, d, mode)


def parse_instance_file(path: str, mode: str | Mode | None = None) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance_text(fh.read(), mode)


def reliability_token(value: Value) -> str:
    """Canonical token for a link reliability; inverse of the parser."""
    if is_one(value):
        return "1"
    if is_zero(value):
        return "0"
    if isinstance(value, Poly):
        if value == P_SYMBOL:
            return "p"
        raise ValueError(f"polynomial {value} has no instance-file token")
    if isinstance(value, Fraction):
        return str(value)
    return repr(value)


def serialize_instance(inst: Instance) -> str:
    """Canonical text for an instance (dense sorted node ids, sorted links)."""
    order = sorted(inst.graph.nodes)
    renum = {v: i for i, v in enumerate(order)}
    rows = []
    for l in inst.graph.sorted_links():
        a, b = sorted((renum[l.u], renum[l.v]))
        rows.append((a, b, l.id))
    rows.sort()
    out = [f"{len(order)} {len(rows)} {inst.diameter}",
           f"{renum[inst.source]} {renum[inst.target]}"]
    for a, b, lid in rows:
        out.append(f"{a} {b} {reliability_token(inst.graph.link(lid).reliability)}")
    return "\n".join(out) + "\n"


def instance_digest(inst: Instance) -> str:
    """SHA-256 hex digest of the canonical serialization."""
    return hashlib.sha256(serialize_instance(inst).encode("utf-8")).hexdigest()


def instance_to_json(inst: Instance) -> dict:
    """Structured form used when a reduced instance is embedded in results
    (reduced links can carry reliabilities the text format cannot express)."""
    from .values import value_to_json
    return {
        "nodes": sorted(inst.graph.nodes),
        "links": [
            {"id": l.id, "u": l.u, "v": l.v, "reliability": value_to_json(l.reliability)}
            for l in inst.graph.sorted_links()
        ],
        "source": inst.source,
        "target": inst.target,
        "diameter": inst.diameter,
        "mode": inst.mode.value,
    }
