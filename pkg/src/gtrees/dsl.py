"""Parser for the ``.gog`` text format.

    group Z4 = cyclic 4 a
    group Z6 = cyclic 6 b
    group Z2 = cyclic 2 x
    vertex u : Z4
    vertex w : Z6
    edge e : Z2 from u via { x -> a^2 } to w via { x -> b^3 }
    base u

``cyclic N`` may carry a generator symbol (default ``g``).  Table groups list
one row per element, ``x : p1 p2 ...`` where ``pk`` is x times the k-th row's
element; rows are separated by newlines or ``;``.  Optionally ``tree e1 e2 ...``
fixes the spanning tree.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

from .fingroup import GroupError, check_monomorphism, cyclic, from_table, symmetric
from .gog import GraphError, GraphOfGroups, make_edge

_TOKEN = re.compile(r"->|[{}:=,;]|[^\s{}:=,;]+?(?=->|[\s{}:=,;]|$)")


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, col: int, source: str = "<string>"):
        super().__init__(f"{source}:{line}:{col}: {msg}")
        self.msg = msg
        self.line = line
        self.col = col


@dataclass
class Tok:
    text: str
    line: int
    col: int
    newline_before: bool = False


def tokenize(text: str) -> list[Tok]:
    toks: list[Tok] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        first = True
        for m in _TOKEN.finditer(line):
            toks.append(Tok(m.group(), lineno, m.start() + 1, first))
            first = False
    return toks


class _Parser:
    def __init__(self, text: str, source: str):
        self.toks = tokenize(text)
        self.pos = 0
        self.source = source
        n = text.count("\n") + 1
        self.eof = Tok("<eof>", n, 1, True)

    def error(self, msg: str, tok: Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.line, tok.col, self.source)

    def peek(self) -> Tok:
        return self.toks[self.pos] if self.pos < len(self.toks) else self.eof

    def next(self) -> Tok:
        tok = self.peek()
        if tok is self.eof:
            self.error("unexpected end of input")
        self.pos += 1
        return tok

    def expect(self, text: str) -> Tok:
        tok = self.next()
        if tok.text != text:
            self.error(f"expected {text!r}, got {tok.text!r}", tok)
        return tok

    def name(self, what: str) -> Tok:
        tok = self.next()
        if tok.text in "{}:=,;" or tok.text == "->":
            self.error(f"expected {what}, got {tok.text!r}", tok)
        return tok

    def at_line_end(self) -> bool:
        tok = self.peek()
        return tok is self.eof or tok.newline_before

    # -- grammar ---------------------------------------------------------
    def parse(self, max_order: int) -> GraphOfGroups:
        groups = {}
        vertices = {}
        edges = []
        base = None
        tree = None
        while self.peek() is not self.eof:
            kw = self.next()
            if kw.text == "group":
                gname = self.name("group name")
                if gname.text in groups:
                    self.error(f"group {gname.text!r} declared twice", gname)
                self.expect("=")
                groups[gname.text] = self.group_body(gname.text, max_order)
            elif kw.text == "vertex":
                vname = self.name("vertex name")
                if vname.text in vertices:
                    self.error(f"vertex {vname.text!r} declared twice", vname)
                self.expect(":")
                gtok = self.name("group name")
                if gtok.text not in groups:
                    self.error(f"unknown group {gtok.text!r}", gtok)
                vertices[vname.text] = groups[gtok.text]
            elif kw.text == "edge":
                edges.append(self.edge(groups, vertices, edges))
            elif kw.text == "base":
                vtok = self.name("vertex name")
                if vtok.text not in vertices:
                    self.error(f"unknown vertex {vtok.text!r}", vtok)
                base = vtok.text
            elif kw.text == "tree":
                tree = []
                while not self.at_line_end():
                    tree.append(self.name("edge name").text)
            else:
                self.error(f"unknown declaration {kw.text!r}", kw)
        if not vertices:
            self.error("no vertices declared")
        try:
            return GraphOfGroups(vertices, edges, base, tree, name=self.source)
        except GraphError as exc:
            raise ParseError(str(exc), self.eof.line, 1, self.source) from None

    def group_body(self, gname: str, max_order: int):
        kind = self.next()
        try:
            if kind.text in ("cyclic", "symmetric"):
                ntok = self.next()
                try:
                    n = int(ntok.text)
                except ValueError:
                    self.error(f"expected an integer, got {ntok.text!r}", ntok)
                if kind.text == "symmetric":
                    g = symmetric(n, name=gname)
                else:
                    gen = "g"
                    if not self.at_line_end():
                        gen = self.name("generator symbol").text
                    if n > max_order:
                        self.error(f"group order {n} exceeds cap {max_order}", ntok)
                    g = cyclic(n, gen, name=gname)
            elif kind.text == "table":
                g = self.table(gname)
            else:
                self.error(f"expected cyclic, symmetric or table, got {kind.text!r}", kind)
        except GroupError as exc:
            self.error(str(exc), kind)
        if g.order > max_order:
            self.error(f"group order {g.order} exceeds cap {max_order}", kind)
        return g

    def table(self, gname: str):
        self.expect("{")
        rows: dict[str, list[str]] = {}
        while True:
            tok = self.peek()
            if tok.text == "}":
                self.next()
                break
            if tok.text == ";":
                self.next()
                continue
            key = self.name("element name")
            if key.text in rows:
                self.error(f"duplicate table row {key.text!r}", key)
            self.expect(":")
            row = []
            while self.peek().text not in ("}", ";") and not (self.peek().newline_before and row and self._row_start()):
                row.append(self.name("element name").text)
            rows[key.text] = row
        return from_table(gname, rows)

    def _row_start(self) -> bool:
        nxt = self.toks[self.pos + 1] if self.pos + 1 < len(self.toks) else None
        return nxt is not None and nxt.text == ":"

    def edge(self, groups, vertices, edges):
        ename = self.name("edge name")
        if any(e.name == ename.text for e in edges):
            self.error(f"edge {ename.text!r} declared twice", ename)
        self.expect(":")
        gtok = self.name("group name")
        if gtok.text not in groups:
            self.error(f"unknown group {gtok.text!r}", gtok)
        eg = groups[gtok.text]
        self.expect("from")
        a, alpha = self.end(eg, vertices)
        self.expect("to")
        b, omega = self.end(eg, vertices)
        return make_edge(ename.text, eg, a, alpha, b, omega)

    def end(self, eg, vertices):
        vtok = self.name("vertex name")
        if vtok.text not in vertices:
            self.error(f"unknown vertex {vtok.text!r}", vtok)
        vg = vertices[vtok.text]
        self.expect("via")
        brace = self.expect("{")
        mapping = {}
        while True:
            src = self.name("element")
            self.expect("->")
            dst = self.name("element expression")
            try:
                mapping[eg.parse_element(src.text)] = vg.parse_element(dst.text)
            except GroupError as exc:
                self.error(str(exc), src)
            sep = self.next()
            if sep.text == "}":
                break
            if sep.text != ",":
                self.error(f"expected ',' or '}}', got {sep.text!r}", sep)
        try:
            mono = check_monomorphism(eg, vg, mapping)
        except GroupError as exc:
            self.error(f"inclusion into {vtok.text!r}: {exc}", brace)
        return vtok.text, mono


def parse_gog(text: str, source: str = "<string>", max_order: int = 48) -> GraphOfGroups:
    return _Parser(text, source).parse(max_order)


def load_gog(path, max_order: int = 48) -> GraphOfGroups:
    path = Path(path)
    g = parse_gog(path.read_text(encoding="utf-8"), source=path.name, max_order=max_order)
    g.name = path.stem
    return g


def dump_gog(g: GraphOfGroups) -> str:
    """Serialize to the DSL; groups are written as tables unless trivially cyclic."""
    out = []
    names = {}
    for v in sorted(g.vertices):
        grp = g.vertices[v]
        names.setdefault(id(grp), grp)
    for e in g.edges.values():
        names.setdefault(id(e.group), e.group)
    gname = {}
    used = set()
    for grp in names.values():
        n = grp.name
        k = 1
        while n in used:
            k += 1
            n = f"{grp.name}_{k}"
        used.add(n)
        gname[id(grp)] = n
        rows = "; ".join(
            f"{x} : " + " ".join(grp.elements[grp.mul(i, j)] for j in range(grp.order))
            for i, x in enumerate(grp.elements)
        )
        out.append(f"group {n} = table {{ {rows} }}")
    for v in sorted(g.vertices):
        out.append(f"vertex {v} : {gname[id(g.vertices[v])]}")
    for name in sorted(g.edges):
        e = g.edges[name]

        def maps(m):
            return ", ".join(f"{e.group.elements[x]} -> {m.codomain.elements[m(x)]}" for x in e.group.generators()) \
                or f"{e.group.elements[e.group.identity]} -> {m.codomain.elements[m.codomain.identity]}"

        out.append(f"edge {name} : {gname[id(e.group)]} from {e.a} via {{ {maps(e.alpha)} }} "
                   f"to {e.b} via {{ {maps(e.omega)} }}")
    out.append(f"base {g.base}")
    out.append("tree " + " ".join(sorted(g.tree)))
    return "\n".join(out) + "\n"
