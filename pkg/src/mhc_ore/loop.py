"""Finite loops given by Cayley tables."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

__all__ = [
    "Loop",
    "LoopError",
    "IPReport",
    "validate_loop",
    "cyclic_loop",
    "permutation_group",
    "moufang_double",
]


class LoopError(ValueError):
    """Raised when a Cayley table does not define a loop with two-sided inverses."""


@dataclass(frozen=True)
class IPReport:
    ok: bool
    law: str | None = None
    pair: tuple[str, str] | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True, eq=False)
class Loop:
    """A finite loop on indices ``0..n-1``; ``table[a][b]`` is ``a*b``."""

    elements: tuple[str, ...]
    table: tuple[tuple[int, ...], ...]
    identity: int
    inv: tuple[int, ...]
    _ldiv: tuple[tuple[int, ...], ...] = field(repr=False)
    _rdiv: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, name: str) -> int:
        try:
            return self.elements.index(name)
        except ValueError:
            raise LoopError(f"unknown loop element {name!r}") from None

    def name(self, a: int) -> str:
        return self.elements[a]

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def ldiv(self, a: int, b: int) -> int:
        """The unique x with a*x = b."""
        return self._ldiv[a][b]

    def rdiv(self, a: int, b: int) -> int:
        """The unique x with x*a = b."""
        return self._rdiv[a][b]

    def check_ip(self) -> IPReport:
        """Left/right inverse property and the antiautomorphic inverse law.

        Returns the first failing pair in index order.
        """
        n, m, inv = self.order, self.table, self.inv
        for x, y in product(range(n), repeat=2):
            if m[inv[x]][m[x][y]] != y:
                return IPReport(False, "left-IP x^-1(xy)=y", (self.name(x), self.name(y)))
            if m[m[y][x]][inv[x]] != y:
                return IPReport(False, "right-IP (yx)x^-1=y", (self.name(x), self.name(y)))
            if inv[m[x][y]] != m[inv[y]][inv[x]]:
                return IPReport(False, "AAIP (xy)^-1=y^-1x^-1", (self.name(x), self.name(y)))
        return IPReport(True)

    def associativity_witness(self) -> tuple[str, str, str] | None:
        n, m = self.order, self.table
        for a, b, c in product(range(n), repeat=3):
            if m[m[a][b]][c] != m[a][m[b][c]]:
                return (self.name(a), self.name(b), self.name(c))
        return None

    def is_associative(self) -> bool:
        return self.associativity_witness() is None

    def moufang_witness(self) -> tuple[str, str, str] | None:
        """First triple violating z(x(zy)) = ((zx)z)y."""
        n, m = self.order, self.table
        for x, y, z in product(range(n), repeat=3):
            if m[z][m[x][m[z][y]]] != m[m[m[z][x]][z]][y]:
                return (self.name(x), self.name(y), self.name(z))
        return None

    def is_automorphism(self, perm: list[int]) -> bool:
        m = self.table
        n = self.order
        return all(perm[m[a][b]] == m[perm[a]][perm[b]] for a in range(n) for b in range(n))

    def to_json(self) -> dict:
        return {
            "elements": list(self.elements),
            "table": [[self.elements[v] for v in row] for row in self.table],
        }


def validate_loop(elements, table) -> Loop:
    """Build a :class:`Loop` from element names and a row-major table of names.

    ``table`` entries may be names or integer indices.
    """
    elements = tuple(str(e) for e in elements)
    n = len(elements)
    if n == 0:
        raise LoopError("empty element list")
    if len(set(elements)) != n:
        raise LoopError("duplicate element names")
    pos = {e: i for i, e in enumerate(elements)}
    if len(table) != n:
        raise LoopError(f"table has {len(table)} rows, expected {n}")
    rows = []
    for i, row in enumerate(table):
        if len(row) != n:
            raise LoopError(f"row {elements[i]!r} has {len(row)} entries, expected {n}")
        out = []
        for j, v in enumerate(row):
            if isinstance(v, int) and not isinstance(v, bool):
                if not 0 <= v < n:
                    raise LoopError(f"entry ({elements[i]!r}, {elements[j]!r}) out of range")
                out.append(v)
            elif v in pos:
                out.append(pos[v])
            else:
                raise LoopError(f"entry ({elements[i]!r}, {elements[j]!r}) = {v!r} is not an element")
        rows.append(tuple(out))
    for i, row in enumerate(rows):
        if len(set(row)) != n:
            raise LoopError(f"not a Latin square: row {elements[i]!r} repeats an element")
    for j in range(n):
        if len({rows[i][j] for i in range(n)}) != n:
            raise LoopError(f"not a Latin square: column {elements[j]!r} repeats an element")
    ident = next(
        (e for e in range(n) if all(rows[e][x] == x and rows[x][e] == x for x in range(n))),
        None,
    )
    if ident is None:
        raise LoopError("no identity: this quasigroup is not a loop")
    inv = []
    for x in range(n):
        right = rows[x].index(ident)
        if rows[right][x] != ident:
            raise LoopError(f"element {elements[x]!r} lacks a two-sided inverse")
        inv.append(right)
    ldiv = [[0] * n for _ in range(n)]
    rdiv = [[0] * n for _ in range(n)]
    for a in range(n):
        for x in range(n):
            ldiv[a][rows[a][x]] = x
            rdiv[a][rows[x][a]] = x
    return Loop(
        elements,
        tuple(rows),
        ident,
        tuple(inv),
        tuple(tuple(r) for r in ldiv),
        tuple(tuple(r) for r in rdiv),
    )


def cyclic_loop(n: int, names=None) -> Loop:
    names = names or (["e"] + [f"g{k}" if n > 2 else "g" for k in range(1, n)])
    return validate_loop(names, [[(a + b) % n for b in range(n)] for a in range(n)])


def permutation_group(gens: dict[str, tuple[int, ...]] | None = None) -> Loop:
    """Group of all permutations of ``range(k)`` for the degree of the generators.

    Without generators this is S3 with cycle-notation names.
    Composition is right-to-left: (p*q)(i) = p(q(i)).
    """
    perms = sorted(permutations(range(3))) if gens is None else sorted(gens.values())
    names = [_cycle_name(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[i]] for i in range(len(p)))] for q in perms] for p in perms]
    return validate_loop(names, table)


def _cycle_name(p: tuple[int, ...]) -> str:
    seen, cycles = set(), []
    for s in range(len(p)):
        if s in seen or p[s] == s:
            continue
        c, i = [], s
        while i not in seen:
            seen.add(i)
            c.append(str(i + 1))
            i = p[i]
        cycles.append("(" + "".join(c) + ")")
    return "".join(cycles) or "e"


def moufang_double(group: Loop, tag: str = "u") -> Loop:
    """Chein's loop M(G, 2) on G x {0, 1}.

    Nonassociative Moufang whenever G is a nonabelian group.
    """
    n, m, inv = group.order, group.table, group.inv

    def mul(x, y):
        (g, s), (h, t) = x, y
        if s == 0 and t == 0:
            return (m[g][h], 0)
        if s == 0 and t == 1:
            return (m[h][g], 1)
        if s == 1 and t == 0:
            return (m[g][inv[h]], 1)
        return (m[inv[h]][g], 0)

    pts = [(g, s) for s in (0, 1) for g in range(n)]
    names = [group.name(g) if s == 0 else f"{group.name(g)}{tag}" for g, s in pts]
    idx = {p: i for i, p in enumerate(pts)}
    return validate_loop(names, [[idx[mul(x, y)] for y in pts] for x in pts])
