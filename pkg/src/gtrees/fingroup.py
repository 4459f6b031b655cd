"""Finite groups stored as explicit multiplication tables.

Elements are addressed by integer index; names are only for input and
display.  Every group built here has been checked against the group axioms
exhaustively, so downstream code never re-validates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

MAX_ORDER = 48


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``table[i][j]`` is the index of ``elements[i] * elements[j]``.
    """

    def __init__(self, name: str, elements: Sequence[str], table, max_order: int = MAX_ORDER):
        elements = tuple(elements)
        n = len(elements)
        if n == 0:
            raise GroupError(f"group {name!r} has no elements")
        if n > max_order:
            raise GroupError(f"group {name!r} has order {n} > cap {max_order}")
        if len(set(elements)) != n:
            dup = next(x for x in elements if elements.count(x) > 1)
            raise GroupError(f"group {name!r}: duplicate element name {dup!r}")
        t = np.asarray(table, dtype=np.int64)
        if t.shape != (n, n):
            raise GroupError(f"group {name!r}: table must be {n}x{n}, got {t.shape}")
        if t.min() < 0 or t.max() >= n:
            raise GroupError(f"group {name!r}: table entry out of range")
        self.name = name
        self.elements = elements
        self._index = {x: i for i, x in enumerate(elements)}
        self.table = t
        self._mul = [list(map(int, row)) for row in t]
        self.identity = self._find_identity()
        self.inverse = self._find_inverses()
        self._check_associative()
        self._cache: dict = {}

    # -- axioms ---------------------------------------------------------
    def _find_identity(self) -> int:
        n = len(self.elements)
        ar = np.arange(n)
        for e in range(n):
            if (self.table[e] == ar).all() and (self.table[:, e] == ar).all():
                return e
        raise GroupError(f"group {self.name!r}: no two-sided identity")

    def _find_inverses(self) -> tuple[int, ...]:
        inv = []
        for x in range(len(self.elements)):
            hits = np.nonzero(self.table[:, x] == self.identity)[0]
            if len(hits) != 1 or self._mul[x][int(hits[0])] != self.identity:
                raise GroupError(f"group {self.name!r}: element {self.elements[x]!r} has no inverse")
            inv.append(int(hits[0]))
        return tuple(inv)

    def _check_associative(self) -> None:
        t = self.table
        n = len(self.elements)
        lhs = t[t[:, :, None], np.arange(n)[None, None, :]]  # (xy)z
        rhs = t[np.arange(n)[:, None, None], t[None, :, :]]  # x(yz)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            x, y, z = (self.elements[int(i)] for i in bad[0])
            raise GroupError(
                f"group {self.name!r}: not associative on ({x!r}, {y!r}, {z!r})"
            )

    # -- basic arithmetic -------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"

    def mul(self, x: int, y: int) -> int:
        return self._mul[x][y]

    def inv(self, x: int) -> int:
        return self.inverse[x]

    def conj(self, x: int, y: int) -> int:
        """x y x^-1"""
        return self._mul[self._mul[x][y]][self.inverse[x]]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        r = self.identity
        for _ in range(k):
            r = self._mul[r][x]
        return r

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self._mul[y][x]
            k += 1
        return k

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise GroupError(f"unknown element {name!r} in group {self.name!r}") from None

    def name_of(self, x: int) -> str:
        return self.elements[x]

    def parse_element(self, text: str) -> int:
        """Resolve an element expression: a name, ``name^k`` or a ``*`` product."""
        text = text.strip()
        if text in self._index:
            return self._index[text]
        if text == "1":
            return self.identity
        r = self.identity
        for factor in text.split("*"):
            factor = factor.strip()
            if factor in self._index:
                r = self._mul[r][self._index[factor]]
                continue
            base, sep, exp = factor.rpartition("^")
            if not sep:
                self.index(factor)  # raises
            try:
                k = int(exp)
            except ValueError:
                raise GroupError(f"bad exponent in {factor!r}") from None
            b = self.identity if base == "1" else self.index(base)
            r = self._mul[r][self.power(b, k)]
        return r

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    # -- subgroups ----------------------------------------------------------
    def closure(self, gens: Iterable[int]) -> frozenset[int]:
        members = {self.identity}
        frontier = [self.identity]
        gens = list(set(gens))
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self._mul[x][g]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([self.identity]))

    def subgroups(self) -> list["Subgroup"]:
        """Full subgroup lattice, sorted by (order, sorted members)."""
        if "subgroups" not in self._cache:
            cyclic = {self.closure([x]) for x in range(self.order)}
            found = set(cyclic)
            frontier = set(cyclic)
            while frontier:
                new = set()
                for a in frontier:
                    for c in cyclic:
                        if c <= a:
                            continue
                        j = self.closure(a | c)
                        if j not in found:
                            new.add(j)
                found |= new
                frontier = new
            subs = sorted(found, key=lambda s: (len(s), sorted(s)))
            self._cache["subgroups"] = [Subgroup(self, s) for s in subs]
        return self._cache["subgroups"]

    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by element index."""
        if "gens" not in self._cache:
            gens: list[int] = []
            span = frozenset([self.identity])
            # prefer high-order elements so cyclic groups get one generator
            for x in sorted(range(self.order), key=lambda i: (-self.element_order(i), i)):
                if x not in span:
                    gens.append(x)
                    span = self.closure(gens)
                    if len(span) == self.order:
                        break
            self._cache["gens"] = tuple(gens)
        return self._cache["gens"]

    def subgroup_as_group(self, sub: "Subgroup", name: str | None = None) -> tuple["FiniteGroup", "Mono"]:
        """The subgroup as a standalone group, with its inclusion into self."""
        members = sorted(sub.members, key=lambda x: (x != self.identity, x))
        pos = {x: i for i, x in enumerate(members)}
        table = [[pos[self._mul[x][y]] for y in members] for x in members]
        g = FiniteGroup(name or f"{self.name}<{len(members)}>", [self.elements[x] for x in members], table)
        return g, Mono(g, self, tuple(members))


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False)
    members: frozenset[int]

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __le__(self, other: "Subgroup") -> bool:
        return self.members <= other.members

    def conjugate(self, x: int) -> "Subgroup":
        g = self.parent
        return Subgroup(g, frozenset(g.conj(x, m) for m in self.members))

    def names(self) -> list[str]:
        return sorted(self.parent.elements[m] for m in self.members)

    def __repr__(self) -> str:
        return f"Subgroup({self.parent.name}, {{{', '.join(self.names())}}})"


@dataclass(frozen=True)
class Mono:
    """A verified injective homomorphism; ``images[i]`` is the image of element i."""

    domain: FiniteGroup = field(compare=False)
    codomain: FiniteGroup = field(compare=False)
    images: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.images[x]

    def image(self) -> Subgroup:
        return Subgroup(self.codomain, frozenset(self.images))

    def preimage(self, y: int) -> int:
        return self._inverse_table()[y]

    def _inverse_table(self) -> dict[int, int]:
        inv = self.__dict__.get("_inv")
        if inv is None:
            inv = {y: x for x, y in enumerate(self.images)}
            object.__setattr__(self, "_inv", inv)
        return inv

    def compose(self, after: "Mono") -> "Mono":
        """after ∘ self"""
        return Mono(self.domain, after.codomain, tuple(after.images[y] for y in self.images))

    def twist(self, c: int) -> "Mono":
        """x -> c·self(x)·c^-1"""
        g = self.codomain
        return Mono(self.domain, g, tuple(g.conj(c, y) for y in self.images))

    def restrict_codomain(self, sub_group: FiniteGroup, inclusion: "Mono") -> "Mono":
        """Factor self through ``inclusion: sub_group -> codomain``."""
        back = inclusion._inverse_table()
        try:
            return Mono(self.domain, sub_group, tuple(back[y] for y in self.images))
        except KeyError:
            raise GroupError("image does not lie in the target subgroup") from None

    def as_dict(self) -> dict[str, str]:
        return {self.domain.elements[x]: self.codomain.elements[y] for x, y in enumerate(self.images)}


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int, gen: str = "g", name: str | None = None) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group needs n >= 1")
    names = ["1"] + [gen if k == 1 else f"{gen}^{k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(name or f"Z{n}", names, table)


def cycle_notation(perm: Sequence[int]) -> str:
    seen = set()
    parts = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen.add(j)
            j = perm[j]
        parts.append("(" + "".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) or "()"


def symmetric(n: int, name: str | None = None) -> FiniteGroup:
    if n < 1 or n > 9:
        raise GroupError("symmetric(n) supported for 1 <= n <= 9")
    perms = sorted(itertools.permutations(range(n)), key=lambda p: (p != tuple(range(n)), p))
    pos = {p: i for i, p in enumerate(perms)}
    # (p*q)(i) = p(q(i)): apply q first
    table = [[pos[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    return FiniteGroup(name or f"S{n}", [cycle_notation(p) for p in perms], table)


def from_table(name: str, rows: Mapping[str, Sequence[str]]) -> FiniteGroup:
    """Build a group from named rows: ``rows[x][k]`` is x * (k-th row name)."""
    elements = list(rows)
    pos = {x: i for i, x in enumerate(elements)}
    table = []
    for x in elements:
        row = rows[x]
        if len(row) != len(elements):
            raise GroupError(f"table row {x!r} has {len(row)} entries, expected {len(elements)}")
        try:
            table.append([pos[y] for y in row])
        except KeyError as exc:
            raise GroupError(f"table row {x!r} names unknown element {exc.args[0]!r}") from None
    return FiniteGroup(name, elements, table)


def make_group(spec, name: str | None = None) -> FiniteGroup:
    """``spec`` is ``("cyclic", n[, gen])``, ``("symmetric", n)`` or ``("table", rows)``."""
    kind, *args = spec
    if kind == "cyclic":
        return cyclic(*args, name=name)
    if kind == "symmetric":
        return symmetric(*args, name=name)
    if kind == "table":
        return from_table(name or "G", *args)
    raise GroupError(f"unknown group specification {kind!r}")


# ---------------------------------------------------------------------------
# operations


def subgroup_generated(g: FiniteGroup, gens: Iterable[int | str]) -> Subgroup:
    idx = [x if isinstance(x, int) else g.parse_element(x) for x in gens]
    for x in idx:
        if not 0 <= x < g.order:
            raise GroupError(f"element index {x} out of range for {g.name}")
    return Subgroup(g, g.closure(idx))


def is_conjugate_subgroup(g: FiniteGroup, a: Subgroup, b: Subgroup) -> tuple[bool, int | None]:
    """Return (True, w) with w·a·w^-1 = b, or (False, None)."""
    if a.parent is not g or b.parent is not g:
        raise GroupError("subgroup belongs to a different group")
    if a.order != b.order:
        return False, None
    for w in range(g.order):
        if all(g.conj(w, m) in b.members for m in a.members):
            return True, w
    return False, None


def conjugacy_class_reps(g: FiniteGroup) -> list[Subgroup]:
    """One subgroup per conjugacy class, first in lattice order."""
    if "class_reps" not in g._cache:
        reps: list[Subgroup] = []
        seen: set[frozenset[int]] = set()
        for s in g.subgroups():
            if s.members in seen:
                continue
            reps.append(s)
            for w in range(g.order):
                seen.add(s.conjugate(w).members)
        g._cache["class_reps"] = reps
    return g._cache["class_reps"]


def class_of(g: FiniteGroup, s: Subgroup) -> int:
    """Index into ``conjugacy_class_reps(g)`` of the class containing s."""
    table = g._cache.get("class_index")
    if table is None:
        table = {}
        for k, rep in enumerate(conjugacy_class_reps(g)):
            for w in range(g.order):
                table[rep.conjugate(w).members] = k
        g._cache["class_index"] = table
    return table[s.members]


def check_monomorphism(dom: FiniteGroup, cod: FiniteGroup, image_of: Mapping) -> Mono:
    """Verify (and extend multiplicatively) a map given on generators or all of dom.

    Keys and values may be element names or indices.
    """
    def _d(x):
        return x if isinstance(x, int) else dom.parse_element(x)

    def _c(y):
        return y if isinstance(y, int) else cod.parse_element(y)

    given = {_d(x): _c(y) for x, y in image_of.items()}
    if dom.identity in given and given[dom.identity] != cod.identity:
        raise GroupError(
            f"not a homomorphism: identity {dom.name_of(dom.identity)!r} maps to "
            f"{cod.name_of(given[dom.identity])!r}"
        )
    images = {dom.identity: cod.identity}
    frontier = [dom.identity]
    gens = sorted(given)
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = dom.mul(x, s)
                im = cod.mul(images[x], given[s])
                if y in images:
                    if images[y] != im:
                        raise GroupError(
                            f"not a homomorphism: {dom.name_of(y)!r} would map to both "
                            f"{cod.name_of(images[y])!r} and {cod.name_of(im)!r}"
                        )
                else:
                    images[y] = im
                    nxt.append(y)
        frontier = nxt
    for s, im in given.items():
        if images[s] != im:
            raise GroupError(f"not a homomorphism at {dom.name_of(s)!r}")
    if len(images) != dom.order:
        raise GroupError(f"map does not determine a homomorphism on all of {dom.name}: generators missing")
    for x in range(dom.order):
        for y in range(dom.order):
            if images[dom.mul(x, y)] != cod.mul(images[x], images[y]):
                raise GroupError(
                    f"not a homomorphism on pair ({dom.name_of(x)!r}, {dom.name_of(y)!r})"
                )
    seen: dict[int, int] = {}
    for x in range(dom.order):
        y = images[x]
        if y in seen:
            raise GroupError(
                f"not injective: {dom.name_of(seen[y])!r} and {dom.name_of(x)!r} both map to {cod.name_of(y)!r}"
            )
        seen[y] = x
    return Mono(dom, cod, tuple(images[x] for x in range(dom.order)))


def left_transversal(g: FiniteGroup, h: Subgroup) -> list[int]:
    """Left coset representatives of h, identity first, otherwise lowest index."""
    reps = []
    covered: set[int] = set()
    for x in sorted(range(g.order), key=lambda i: (i != g.identity, i)):
        if x not in covered:
            reps.append(x)
            covered.update(g.mul(x, m) for m in h.members)
    return reps


def double_coset_reps(g: FiniteGroup, left: Subgroup, right: Subgroup) -> list[int]:
    reps = []
    covered: set[int] = set()
    for x in sorted(range(g.order), key=lambda i: (i != g.identity, i)):
        if x not in covered:
            reps.append(x)
            covered.update(g.mul(g.mul(a, x), b) for a in left.members for b in right.members)
    return reps
