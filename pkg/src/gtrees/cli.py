"""Command-line front end.

    gtrees check SSF1.gog
    gtrees nf SSF1.gog < words.txt
    gtrees enumerate SSF1.gog --depth 3 --format json
    gtrees rigidity FREE3.gog --depth 2
    gtrees dot SSF1.gog

Exit status: 0 on success, 1 on input errors, 2 when a rigidity run finds a
THEOREM-VIOLATION.
"""

from __future__ import annotations

import argparse
import random
import sys
from dataclasses import dataclass
from pathlib import Path

from . import fixtures
from .bass_serre import PathWord, WordError, finite_subgroup_classes, parse_word, translation_length
from .dsl import ParseError, load_gog
from .fingroup import GroupError
from .gog import GraphError, GraphOfGroups, is_minimal, is_reduced, is_strongly_slide_free
from .marked import MarkedGraphOfGroups
from .moves import Caps, dumps, enumerate_reduced, enumeration_dot, enumeration_json
from .rigidity import verify_unique_ssf

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_VIOLATION = 2

FORMATS = ("text", "json", "dot")
_FORBIDDEN = ("--skip-hypotheses", "--unchecked")


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    inputs: list[str]
    depth: int = 3
    max_edges: int = 8
    max_order: int = 48
    radius: int | None = None
    fmt: str = "text"
    seed: int = 0
    samples: int = 16
    moves: bool = False
    out: str | None = None

    def __post_init__(self):
        for name in ("depth", "max_edges", "max_order", "samples"):
            if getattr(self, name) < 0 or (name != "samples" and getattr(self, name) == 0):
                raise InputError(f"--{name.replace('_', '-')} must be positive")
        if self.radius is not None and self.radius <= 0:
            raise InputError("--radius must be positive")
        if self.fmt not in FORMATS:
            raise InputError(f"unknown format {self.fmt!r}")

    @property
    def caps(self) -> Caps:
        return Caps(depth=self.depth, max_edges=self.max_edges, max_order=self.max_order)


def _load(path: str, cfg: RunConfig) -> GraphOfGroups:
    p = Path(path)
    if not p.exists() and path in fixtures.NAMES:
        p = fixtures.path(path)
    if not p.exists():
        raise InputError(f"{path}: no such file")
    try:
        return load_gog(p, max_order=cfg.max_order)
    except ParseError as exc:
        raise InputError(str(exc)) from None
    except (GroupError, GraphError, OSError) as exc:
        raise InputError(f"{path}: {exc}") from None


# ---------------------------------------------------------------------------
# DOT


def emit_dot(g: GraphOfGroups) -> str:
    """Vertices as "id : order", edges as "order [i:j]" with the two end indices."""
    lines = [f'graph "{g.name or "G"}" {{']
    for v in sorted(g.vertices):
        lines.append(f'  "{v}" [label="{v} : {g.group(v).order}"];')
    for name in sorted(g.edges):
        e = g.edges[name]
        i = g.group(e.a).order // e.group.order
        j = g.group(e.b).order // e.group.order
        lines.append(f'  "{e.a}" -- "{e.b}" [label="{e.group.order} [{i}:{j}]", id="{name}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# reports


def _sample_word(g: GraphOfGroups, rng: random.Random, length: int) -> PathWord:
    w = PathWord.identity(g)
    gens = []
    for v in sorted(g.vertices):
        grp = g.group(v)
        gens += [PathWord.local(g, v, x) for x in range(grp.order) if x != grp.identity]
    for e in g.non_tree_edges():
        s = PathWord.stable(g, e)
        gens += [s, s.inverse()]
    if not gens:
        return w
    for _ in range(length):
        w = w * rng.choice(gens)
    return w


def check_report(g: GraphOfGroups, cfg: RunConfig) -> dict:
    red, red_w = is_reduced(g)
    mini, min_w = is_minimal(g)
    ssf, ssf_w = is_strongly_slide_free(g)
    classes = finite_subgroup_classes(g)
    rng = random.Random(cfg.seed)
    samples = []
    for _ in range(cfg.samples):
        w = _sample_word(g, rng, rng.randint(1, 6))
        samples.append({"word": str(w), "translation_length": translation_length(w)})
    return {
        "name": g.name,
        "vertices": {v: g.group(v).order for v in sorted(g.vertices)},
        "edges": {n: {"order": e.group.order, "from": e.a, "to": e.b} for n, e in sorted(g.edges.items())},
        "reduced": {"holds": red, "witness": red_w},
        "minimal": {"holds": mini, "witness": min_w},
        "slide_free": {"holds": ssf, "witness": ssf_w.describe(g) if ssf_w else None},
        "subgroup_classes": [
            {"index": c.index, "order": c.order, "representative": [str(w) for w in c.representative]}
            for c in classes
        ],
        "seed": cfg.seed,
        "samples": samples,
    }


def _mark(ok: bool) -> str:
    return "✓" if ok else "✗"


def check_text(rep: dict) -> str:
    parts = []
    for key, label in (("reduced", "reduced"), ("minimal", "minimal"), ("slide_free", "slide-free")):
        r = rep[key]
        s = f"{label} {_mark(r['holds'])}"
        if not r["holds"] and r["witness"]:
            s += f" ({r['witness']})"
        parts.append(s)
    return f"{rep['name']}: " + " ".join(parts) + f", {len(rep['subgroup_classes'])} subgroup classes\n"


def rigidity_report(g: GraphOfGroups, cfg: RunConfig) -> tuple[dict, bool]:
    m = MarkedGraphOfGroups.seed(g)
    ok, w = is_minimal(g)
    if not ok:
        raise InputError(f"{g.name}: not minimal (vertex {w}); enumeration needs a minimal seed")
    en = enumerate_reduced(m, cfg.caps)
    rep = verify_unique_ssf(en, cfg.radius)
    certs = [{"source": i, "target": j, "certificate": c} for i, j, c in rep.certificates]
    doc = {
        "name": g.name,
        "caps": {"depth": cfg.depth, "max_edges": cfg.max_edges, "max_order": cfg.max_order},
        "classes": len(en.classes),
        "truncated": en.truncated,
        "unproven_pairs": [list(p) for p in en.unproven],
        "reduced": en.reduced,
        "uniqueness": rep.as_json(),
        "certificates": certs,
    }
    return doc, bool(rep.violations)


def rigidity_text(doc: dict) -> str:
    u = doc["uniqueness"]
    lines = [f"{doc['name']}: {u['summary']} ({doc['classes']} classes explored, "
             f"depth {doc['caps']['depth']}{', truncated' if doc['truncated'] else ''})"]
    for m in u["maps"]:
        lines.append(f"  canonical map {m['source']} -> {m['target']}: {m['verdict']}")
    for v in u["violations"]:
        lines.append(f"  THEOREM-VIOLATION: {v}")
    return "\n".join(lines) + "\n"


def enumerate_text(g: GraphOfGroups, en) -> str:
    lines = [f"{g.name}: {len(en.classes)} classes, {len(en.reduced)} reduced"
             f"{' (truncated)' if en.truncated else ''}"]
    red = set(en.reduced)
    for i, m in enumerate(en.classes):
        tag = "reduced" if i in red else ""
        verts = ", ".join(f"{v}:{m.gog.group(v).order}" for v in sorted(m.gog.vertices))
        lines.append(f"  [{i}] depth {en.depth[i]} {verts} edges={len(m.gog.edges)} {tag}".rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# commands


def cmd_check(cfg: RunConfig) -> tuple[str, int]:
    reps = [check_report(_load(p, cfg), cfg) for p in cfg.inputs]
    if cfg.fmt == "json":
        return dumps(reps if len(reps) > 1 else reps[0]) + "\n", EXIT_OK
    if cfg.fmt == "dot":
        return "".join(emit_dot(_load(p, cfg)) for p in cfg.inputs), EXIT_OK
    return "".join(check_text(r) for r in reps), EXIT_OK


def cmd_enumerate(cfg: RunConfig) -> tuple[str, int]:
    out = []
    docs = []
    for p in cfg.inputs:
        g = _load(p, cfg)
        ok, w = is_minimal(g)
        if not ok:
            raise InputError(f"{g.name}: not minimal (vertex {w}); enumeration needs a minimal seed")
        en = enumerate_reduced(MarkedGraphOfGroups.seed(g), cfg.caps)
        if cfg.fmt == "json":
            docs.append({"name": g.name, **enumeration_json(en)})
        elif cfg.fmt == "dot":
            out.append(enumeration_dot(en))
        else:
            out.append(enumerate_text(g, en))
    if cfg.fmt == "json":
        return dumps(docs if len(docs) > 1 else docs[0]) + "\n", EXIT_OK
    return "".join(out), EXIT_OK


def cmd_rigidity(cfg: RunConfig) -> tuple[str, int]:
    docs = []
    status = EXIT_OK
    for p in cfg.inputs:
        doc, bad = rigidity_report(_load(p, cfg), cfg)
        docs.append(doc)
        if bad:
            status = EXIT_VIOLATION
    if cfg.fmt == "json":
        return dumps(docs if len(docs) > 1 else docs[0]) + "\n", status
    return "".join(rigidity_text(d) for d in docs), status


def cmd_dot(cfg: RunConfig) -> tuple[str, int]:
    out = []
    for p in cfg.inputs:
        g = _load(p, cfg)
        if cfg.moves:
            out.append(enumeration_dot(enumerate_reduced(MarkedGraphOfGroups.seed(g), cfg.caps)))
        else:
            out.append(emit_dot(g))
    return "".join(out), EXIT_OK


def cmd_nf(cfg: RunConfig, stdin) -> tuple[str, int]:
    if len(cfg.inputs) != 1:
        raise InputError("nf takes exactly one graph of groups")
    g = _load(cfg.inputs[0], cfg)
    out = []
    status = EXIT_OK
    for lineno, line in enumerate(stdin, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            w = parse_word(g, text)
        except (WordError, GroupError) as exc:
            out.append(f"<stdin>:{lineno}: error: {exc}")
            status = EXIT_INPUT
            continue
        tl = translation_length(w)
        kind = "elliptic" if tl == 0 else f"hyperbolic, translation length {tl}"
        out.append(f"{w}\t({kind})")
    return "\n".join(out) + ("\n" if out else ""), status


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gtrees", description="Deformation spaces of trees for finite graphs of finite groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "check": "predicates and finite-subgroup census",
        "nf": "normal forms of words read from stdin",
        "enumerate": "reduced classes under collapse/expansion moves",
        "rigidity": "enumerate, then verify uniqueness of the strongly slide-free class",
        "dot": "Graphviz export of a graph of groups (or its move graph with --moves)",
    }
    for name, h in helps.items():
        s = sub.add_parser(name, help=h)
        s.add_argument("inputs", nargs="+", metavar="FILE", help=".gog file or built-in fixture name")
        s.add_argument("--depth", type=int, default=3)
        s.add_argument("--max-edges", type=int, default=8)
        s.add_argument("--max-order", type=int, default=48)
        s.add_argument("--radius", type=int, default=None)
        s.add_argument("--format", choices=FORMATS, default="text")
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--out", default=None)
        if name == "dot":
            s.add_argument("--moves", action="store_true")
        if name == "check":
            s.add_argument("--samples", type=int, default=16)
    return p


def parse_config(argv: list[str]) -> tuple[str, RunConfig]:
    for a in argv:
        if a.split("=", 1)[0] in _FORBIDDEN:
            raise InputError(f"{a}: hypothesis checks cannot be disabled from the command line")
    ns = build_parser().parse_args(argv)
    cfg = RunConfig(
        inputs=ns.inputs, depth=ns.depth, max_edges=ns.max_edges, max_order=ns.max_order,
        radius=ns.radius, fmt=ns.format, seed=ns.seed, out=ns.out,
        samples=getattr(ns, "samples", 16), moves=getattr(ns, "moves", False),
    )
    return ns.command, cfg


_COMMANDS = {"check": cmd_check, "enumerate": cmd_enumerate, "rigidity": cmd_rigidity, "dot": cmd_dot}


def execute(command: str, cfg: RunConfig, stdin=None) -> tuple[str, int]:
    if command == "nf":
        return cmd_nf(cfg, stdin if stdin is not None else sys.stdin)
    return _COMMANDS[command](cfg)


def run(argv: list[str], stdin=None) -> tuple[str, int]:
    """Parse argv, run, and return (output text, exit status)."""
    return execute(*parse_config(argv), stdin=stdin)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        command, cfg = parse_config(argv)
        text, status = execute(command, cfg)
        if cfg.out:
            Path(cfg.out).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    except InputError as exc:
        print(f"gtrees: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"gtrees: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return status


if __name__ == "__main__":
    sys.exit(main())
