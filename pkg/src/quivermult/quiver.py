"""Finite quivers with a positive multiplicity attached to each vertex."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import SizeMismatch


@dataclass(frozen=True)
class Arrow:
    name: str
    src: str
    dst: str


class Quiver:
    """Directed graph without loops, plus a multiplicity d_v >= 1 per vertex.

    Vertex order is significant: it fixes index conventions everywhere
    (stacking order, Cartan matrix rows, catalog matching).
    """

    __slots__ = ("vertices", "arrows", "mult", "_index")

    def __init__(self, vertices, arrows, mult=None):
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise SizeMismatch("duplicate vertices")
        built = []
        for a in arrows:
            if isinstance(a, Arrow):
                built.append(Arrow(str(a.name), str(a.src), str(a.dst)))
            else:
                name, src, dst = a
                built.append(Arrow(str(name), str(src), str(dst)))
        self.arrows = tuple(built)
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise SizeMismatch("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.src not in vset or a.dst not in vset:
                raise SizeMismatch(f"arrow {a.name} touches an unknown vertex")
            if a.src == a.dst:
                raise SizeMismatch(f"arrow {a.name} is a loop")
        mult = dict(mult or {})
        self.mult = {v: int(mult.get(v, 1)) for v in self.vertices}
        if any(d < 1 for d in self.mult.values()):
            raise SizeMismatch("multiplicities must be >= 1")
        self._index = {v: i for i, v in enumerate(self.vertices)}

    # -- basic queries ----------------------------------------------------
    def index(self, v) -> int:
        return self._index[str(v)]

    def d(self, v) -> int:
        return self.mult[str(v)]

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(name)

    def arrows_at(self, v):
        v = str(v)
        return [a for a in self.arrows if a.src == v or a.dst == v]

    def neighbors(self, v):
        v = str(v)
        out = {a.dst if a.src == v else a.src for a in self.arrows_at(v)}
        return sorted(out, key=self.index)

    def adjacency(self):
        """Symmetric integer matrix counting edges between vertex pairs."""
        n = len(self.vertices)
        a = [[0] * n for _ in range(n)]
        for ar in self.arrows:
            i, j = self.index(ar.src), self.index(ar.dst)
            a[i][j] += 1
            a[j][i] += 1
        return a

    def edges_between(self, u, v):
        u, v = str(u), str(v)
        return [a for a in self.arrows
                if {a.src, a.dst} == {u, v}]

    def same_underlying_graph(self, other: "Quiver") -> bool:
        """Same vertices, multiplicities and arrow names with matching
        unordered endpoints (orientations may differ)."""
        if self.vertices != other.vertices or self.mult != other.mult:
            return False
        if len(self.arrows) != len(other.arrows):
            return False
        theirs = {a.name: a for a in other.arrows}
        for a in self.arrows:
            b = theirs.get(a.name)
            if b is None or {a.src, a.dst} != {b.src, b.dst}:
                return False
        return True

    def support_connected(self, verts) -> bool:
        verts = {str(v) for v in verts}
        if not verts:
            return False
        seen = set()
        stack = [next(iter(sorted(verts, key=self.index)))]
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            for w in self.neighbors(v):
                if w in verts and w not in seen:
                    stack.append(w)
        return seen == verts

    def relabeled(self, perm) -> "Quiver":
        """Apply a vertex renaming {old: new} preserving everything else."""
        perm = {str(k): str(v) for k, v in perm.items()}
        return Quiver(
            [perm[v] for v in self.vertices],
            [(a.name, perm[a.src], perm[a.dst]) for a in self.arrows],
            {perm[v]: d for v, d in self.mult.items()},
        )

    def __repr__(self):
        arrows = ", ".join(f"{a.name}:{a.src}->{a.dst}" for a in self.arrows)
        return f"Quiver({list(self.vertices)}, [{arrows}], mult={self.mult})"
