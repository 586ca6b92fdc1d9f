"""Combinatorial bipartite dessin for a chosen generating pair.

Conventions, fixed once here:

* Edges are the n**2 group elements, labelled row major by (a, b).
* The cell around a black vertex is a left coset c<x>, listed cyclically
  by appending x on the right: c, cx, cx**2, ...  White cells are the
  left cosets of <y>.  A vertex is identified by its canonical coset
  representative, the minimal edge label in the cell.
* The group acts on edges by left translation.  Left translation
  permutes the cells of each colour, and the vertex c<x> is fixed by z
  exactly when c**-1 z c lies in <x>; that conjugate also determines the
  local rotation exponent at a fixed vertex.
* Faces are traced with the permutation e -> (xy) e.  Any consistent
  convention yields the same genus; this one is pinned by a unit test on
  the n = 9 direct-product dessin.
"""

from __future__ import annotations

from typing import NamedTuple

from .epi import EpiParams
from .errors import NotFixed, OracleFailure
from .group import Elt, GroupParams, linking_aut

BLACK = "black"
WHITE = "white"


class Vertex(NamedTuple):
    color: str
    rep: int


class Dessin:
    """Immutable rotation system on the n**2 edges for a generating pair."""

    def __init__(self, gp: GroupParams, x: Elt, y: Elt):
        if not gp.is_generating_pair(x, y):
            raise ValueError(f"({x}, {y}) is not a generating pair")
        n = gp.pp.n
        xy = gp.mul(x, y)
        for z in (x, y, xy):
            if gp.order(z) != n:
                raise OracleFailure(f"rotation {z} does not have full order {n}")
        self.gp = gp
        self.x = x
        self.y = y
        self.xy = xy
        self._n = n
        self.edge_count = n * n
        self._black_cell, self._black_reps = self._cells(x)
        self._white_cell, self._white_reps = self._cells(y)
        if len(self._black_reps) != n or len(self._white_reps) != n:
            raise OracleFailure("each colour must have exactly n cells")
        self._xpow_index = self._power_index(x)
        self._ypow_index = self._power_index(y)

    def _edge_elt(self, idx: int) -> Elt:
        return Elt(*divmod(idx, self._n))

    def _edge_index(self, e: Elt) -> int:
        return e.a * self._n + e.b

    def _cells(self, rot: Elt) -> tuple[list[int], list[int]]:
        """Canonical representative per edge for the orbits of e -> e*rot."""
        n2 = self.edge_count
        mul = self.gp.mul
        perm = [self._edge_index(mul(self._edge_elt(i), rot)) for i in range(n2)]
        cell = [-1] * n2
        reps = []
        for start in range(n2):
            if cell[start] >= 0:
                continue
            cycle = [start]
            cur = perm[start]
            while cur != start:
                cycle.append(cur)
                cur = perm[cur]
            if len(cycle) != self._n:
                raise OracleFailure("rotation cycle does not have length n")
            rep = min(cycle)
            for idx in cycle:
                cell[idx] = rep
            reps.append(rep)
        reps.sort()
        return cell, reps

    def _power_index(self, z: Elt) -> dict[Elt, int]:
        index = {}
        cur = Elt(0, 0)
        for d in range(self._n):
            index.setdefault(cur, d)
            cur = self.gp.mul(cur, z)
        return index

    @staticmethod
    def _check_color(color: str) -> None:
        if color not in (BLACK, WHITE):
            raise ValueError(f"color must be {BLACK!r} or {WHITE!r}, got {color!r}")

    def black_vertices(self) -> list[Vertex]:
        return [Vertex(BLACK, r) for r in self._black_reps]

    def white_vertices(self) -> list[Vertex]:
        return [Vertex(WHITE, r) for r in self._white_reps]

    def vertex_of_edge(self, idx: int, color: str) -> Vertex:
        self._check_color(color)
        cell = self._black_cell if color == BLACK else self._white_cell
        return Vertex(color, cell[idx])

    def vertex_edges(self, vertex: Vertex) -> list[int]:
        """The n incident edges in cyclic order, starting at the representative."""
        rot = self.x if vertex.color == BLACK else self.y
        mul = self.gp.mul
        edges = [vertex.rep]
        cur = self._edge_elt(vertex.rep)
        for _ in range(self._n - 1):
            cur = mul(cur, rot)
            edges.append(self._edge_index(cur))
        return edges

    def genus(self) -> int:
        """Genus from the Euler characteristic of the traced rotation system."""
        vertices = len(self._black_reps) + len(self._white_reps)
        edges = self.edge_count
        faces = self._face_count()
        chi = vertices - edges + faces
        if (2 - chi) % 2 != 0:
            raise OracleFailure(f"odd Euler characteristic {chi}")
        genus = (2 - chi) // 2
        if genus < 0:
            raise OracleFailure(f"negative genus from characteristic {chi}")
        return genus

    def _face_count(self) -> int:
        mul = self.gp.mul
        xy = self.xy
        n2 = self.edge_count
        seen = bytearray(n2)
        faces = 0
        for start in range(n2):
            if seen[start]:
                continue
            faces += 1
            cur = start
            while not seen[cur]:
                seen[cur] = 1
                cur = self._edge_index(mul(xy, self._edge_elt(cur)))
        return faces

    def _conjugate_into(self, z: Elt, rep: int) -> Elt:
        c = self._edge_elt(rep)
        return self.gp.mul(self.gp.mul(self.gp.inv(c), z), c)

    def fixed_vertices(self, z: Elt, color: str) -> list[Vertex]:
        """Vertices of the given colour fixed by left translation with z."""
        self._check_color(color)
        reps = self._black_reps if color == BLACK else self._white_reps
        index = self._xpow_index if color == BLACK else self._ypow_index
        return [
            Vertex(color, rep)
            for rep in reps
            if self._conjugate_into(z, rep) in index
        ]

    def count_fixed_vertices(self, z: Elt, color: str) -> int:
        return len(self.fixed_vertices(z, color))

    def rotation_exponent(self, z: Elt, vertex: Vertex) -> int:
        """The d with c**-1 z c equal to the d-th power of the local rotation."""
        self._check_color(vertex.color)
        index = self._xpow_index if vertex.color == BLACK else self._ypow_index
        d = index.get(self._conjugate_into(z, vertex.rep))
        if d is None:
            raise NotFixed(f"vertex {vertex} is not fixed by {z}")
        return d

    def is_edge_transitive(self) -> bool:
        """Explicit orbit computation for the left translation action."""
        mul = self.gp.mul
        e0 = self._edge_elt(0)
        orbit = {self._edge_index(mul(z, e0)) for z in self.gp.elements()}
        return len(orbit) == self.edge_count

    def has_color_reversing_aut(self) -> bool:
        """True iff some group automorphism swaps the two rotations."""
        return linking_aut(self.gp, self.x, self.y, self.y, self.x) is not None

    def rotation_system_text(self) -> str:
        """Plain-text dump, one vertex per line: colour, id, cyclic edge list."""
        lines = []
        for vertex in self.black_vertices() + self.white_vertices():
            edges = " ".join(str(i) for i in self.vertex_edges(vertex))
            lines.append(f"{vertex.color} {vertex.rep}: {edges}")
        return "\n".join(lines) + "\n"


def build(gp: GroupParams, epi: EpiParams) -> Dessin:
    """Dessin whose black and white rotations are the first two epi images."""
    x, y, _ = epi.images()
    return Dessin(gp, x, y)
