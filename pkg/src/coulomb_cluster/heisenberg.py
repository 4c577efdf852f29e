"""Symbol space with an integer symplectic pairing, and label machinery.

Symbols come in conjugate (position, momentum) pairs x[i], p[i] normalized so
that the pairing <p, x> = +1, together with central symbols (equivariant
parameters z[t], u[a] and the spectral parameters specU, specV) that pair to
zero with everything.  A quiver vertex label is an integer vector over this
space; the exchange matrix of a labelled quiver is the Gram matrix of the
pairing on the labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class NotClosed(ValueError):
    """An edge walk handed to loop_class does not close up at the basepoint."""


POSITION = "x"
MOMENTUM = "p"
CENTRAL = "z"


@dataclass(frozen=True)
class SymbolSpace:
    """Ordered named generators plus the skew pairing 2*pi*i*[.,.]."""

    names: tuple[str, ...]
    kinds: tuple[str, ...]        # POSITION / MOMENTUM / CENTRAL per name
    partner: tuple[int, ...]      # index of the conjugate symbol, -1 if central

    @classmethod
    def build(cls, pairs: list[tuple[str, str]], central: list[str] = ()) -> "SymbolSpace":
        """pairs lists (momentum_name, position_name) with <p, x> = 1."""
        names: list[str] = []
        kinds: list[str] = []
        for p, x in pairs:
            names += [p, x]
            kinds += [MOMENTUM, POSITION]
        names += list(central)
        kinds += [CENTRAL] * len(central)
        if len(set(names)) != len(names):
            raise ValueError("duplicate symbol names")
        partner = [-1] * len(names)
        for k in range(len(pairs)):
            partner[2 * k] = 2 * k + 1
            partner[2 * k + 1] = 2 * k
        return cls(tuple(names), tuple(kinds), tuple(partner))

    @property
    def dim(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def vector(self, combo: dict[str, int]) -> tuple[int, ...]:
        v = [0] * self.dim
        for name, c in combo.items():
            v[self.index(name)] += c
        return tuple(v)

    def pairing2pi(self) -> tuple[tuple[int, ...], ...]:
        """The integer matrix of 2*pi*i*[.,.] on basis symbols."""
        n = self.dim
        m = [[0] * n for _ in range(n)]
        for i, k in enumerate(self.kinds):
            j = self.partner[i]
            if k == MOMENTUM:
                m[i][j] = 1
            elif k == POSITION:
                m[i][j] = -1
        return tuple(tuple(r) for r in m)

    def bracket(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        """2*pi*i*[a, b], exact integer."""
        total = 0
        for i, ai in enumerate(a):
            if ai and self.kinds[i] != CENTRAL:
                j = self.partner[i]
                if b[j]:
                    total += ai * b[j] * (1 if self.kinds[i] == MOMENTUM else -1)
        return total

    def render(self, vec: tuple[int, ...]) -> str:
        parts = []
        for name, c in zip(self.names, vec):
            if c == 0:
                continue
            if c == 1:
                parts.append(f"+{name}")
            elif c == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{c:+d}*{name}")
        if not parts:
            return "0"
        out = "".join(parts)
        return out[1:] if out.startswith("+") else out


def bracket(space: SymbolSpace, a: tuple[int, ...], b: tuple[int, ...]) -> int:
    return space.bracket(a, b)


def exchange_from_labels(space: SymbolSpace, labels: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    """Gram matrix eps[i][j] = 2*pi*i*[label_i, label_j]."""
    return tuple(tuple(space.bracket(a, b) for b in labels) for a in labels)


def matrix_rank(rows) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    row = 0
    for col in range(ncols):
        piv = next((r for r in range(row, len(m)) if m[r][col] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        inv = 1 / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
        if row == len(m):
            break
    return rank


def kernel_rank(matrix) -> int:
    """dim over Q of the kernel of a square matrix."""
    n = len(matrix)
    if n == 0:
        return 0
    return n - matrix_rank(matrix)


@dataclass(frozen=True)
class LoopGraph:
    """The gauge graph with framing slots split off and glued to the basepoint.

    nodes: gauge node ids.  Each edge is (tail, head, vertex, is_slot): tail
    and head follow the edge's own orientation, vertex is the cluster-quiver
    vertex index whose basis vector weights a traversal of the edge, and
    is_slot marks a framing-slot edge (whose far end is the glued copy of the
    basepoint rather than the basepoint itself).
    """

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, int, bool], ...]
    basepoint: str
    coxeter: dict          # node id -> tuple of Coxeter vertex indices
    base_vertex: int
    n_vertices: int

    def loop_class(self, walk: list[tuple[int, int]]) -> tuple[int, ...]:
        """Weight-sum vertex vector of a closed edge walk at the basepoint.

        walk lists (edge_index, direction) with direction +1 when the edge is
        traversed tail->head.  Framing-slot edges point copy->gauge and may
        appear only as the first or last step (the glued basepoint copy is a
        dead end).  The result lies in the kernel of the label-derived
        exchange matrix.
        """
        if not walk:
            return (0,) * self.n_vertices
        seq = []
        for e, d in walk:
            tail, head, _, _ = self.edges[e]
            seq.append((tail, head) if d == 1 else (head, tail))
        for (_, a), (b, _) in zip(seq, seq[1:]):
            if a != b:
                raise NotClosed("walk is not a connected edge path")
        for e, _ in walk[1:-1]:
            if self.edges[e][3]:
                raise NotClosed("framing slots only at walk endpoints")
        # the copy side of a slot edge is its tail
        start_is_copy = self.edges[walk[0][0]][3] and walk[0][1] == 1
        end_is_copy = self.edges[walk[-1][0]][3] and walk[-1][1] == -1
        if seq[0][0] != self.basepoint or seq[-1][1] != self.basepoint:
            raise NotClosed("walk must start and end at the basepoint")

        out = [0] * self.n_vertices
        eps = [d for _, d in walk]
        for e, d in walk:
            out[self.edges[e][2]] += d

        def cox_sum(node, sign):
            for vtx in self.coxeter.get(node, ()):
                out[vtx] += sign

        for k in range(len(walk) - 1):
            if eps[k] * eps[k + 1] == 1:
                cox_sum(seq[k][1], eps[k + 1])
        if not start_is_copy:
            out[self.base_vertex] += 1
            if eps[0] == 1:
                cox_sum(self.basepoint, 1)
        if not end_is_copy:
            out[self.base_vertex] -= 1
            if eps[-1] == -1:
                cox_sum(self.basepoint, -1)
        return tuple(out)

    def cycle_basis_loops(self) -> list[list[tuple[int, int]]]:
        """One closed walk per independent cycle: tree path + non-tree edge."""
        parent: dict[str, tuple[str, int, int] | None] = {self.basepoint: None}
        order = [self.basepoint]
        tree: set[int] = set()
        changed = True
        while changed:
            changed = False
            for i, (tail, head, _, is_slot) in enumerate(self.edges):
                if is_slot or i in tree:
                    continue
                if tail in parent and head not in parent:
                    parent[head] = (tail, i, 1)
                    tree.add(i)
                    order.append(head)
                    changed = True
                elif head in parent and tail not in parent:
                    parent[tail] = (head, i, -1)
                    tree.add(i)
                    order.append(tail)
                    changed = True

        def path_from_base(node) -> list[tuple[int, int]]:
            steps = []
            while parent[node] is not None:
                prev, e, d = parent[node]
                steps.append((e, d))
                node = prev
            return list(reversed(steps))

        loops = []
        for i, (tail, head, _, is_slot) in enumerate(self.edges):
            if i in tree:
                continue
            fwd = path_from_base(tail)
            back = [(e, -d) for e, d in reversed(path_from_base(head))]
            loops.append(fwd + [(i, 1)] + back)
        return loops


def loop_class(graph: LoopGraph, walk: list[tuple[int, int]]) -> tuple[int, ...]:
    return graph.loop_class(walk)
