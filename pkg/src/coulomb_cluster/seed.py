"""Cluster seeds as basis vectors in a fixed ambient lattice.

A seed stores its basis vectors in ambient coordinates together with a fixed
skew form on the ambient lattice (form2 = twice the form, so half-integer
values stay integral).  Mutation is the tropical basis change

    e'_k = -e_k,    e'_i = e_i + [eps_ik]_+ e_k   (i != k),

leaving the form, the frozen set and the ambient lattice untouched.  Matrix
mutation of the exchange matrix is then a consequence, not a rule, and is
cross-checked in the tests.

For the quivers built here the ambient lattice is a Heisenberg symbol space
and the basis vectors are the vertex labels, so label bookkeeping under
mutation comes for free.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .heisenberg import SymbolSpace, exchange_from_labels


class FrozenVertex(ValueError):
    """Mutation requested at a frozen vertex."""


class RankTooSmall(ValueError):
    pass


class UnknownKind(ValueError):
    pass


@dataclass(frozen=True)
class MutationSeq:
    """An ordered list of mutation steps plus optional final bookkeeping.

    post_permutation maps old vertex position -> new position.  For seeds
    whose ambient lattice is a symbol space, post_symbol_map is a linear map
    applied to every basis vector (and to torus elements) after the steps;
    the Dehn twist needs it to literally restore the initial seed.
    """

    steps: tuple[int, ...]
    post_permutation: tuple[int, ...] | None = None
    post_symbol_map: tuple[tuple[int, ...], ...] | None = None


@dataclass(frozen=True)
class Seed:
    ambient_dim: int
    basis: tuple[tuple[int, ...], ...]
    form2: tuple[tuple[int, ...], ...]
    frozen: frozenset[int] = field(default_factory=frozenset)
    symbols: SymbolSpace | None = None

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector has wrong length")
        for i in range(self.ambient_dim):
            for j in range(self.ambient_dim):
                if self.form2[i][j] != -self.form2[j][i]:
                    raise ValueError("form2 must be skew-symmetric")

    # -- basic data ----------------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.basis)

    def pair2(self, a: tuple[int, ...], b: tuple[int, ...]) -> int:
        """2*(a, b) for ambient vectors a, b."""
        total = 0
        for i, ai in enumerate(a):
            if ai:
                row = self.form2[i]
                total += ai * sum(rj * bj for rj, bj in zip(row, b) if bj)
        return total

    def exchange2(self) -> tuple[tuple[int, ...], ...]:
        """The integer matrix 2*eps."""
        return tuple(tuple(self.pair2(a, b) for b in self.basis) for a in self.basis)

    def exchange(self) -> tuple[tuple[Fraction, ...], ...]:
        """eps itself; entries may be half-integers on frozen-frozen pairs."""
        return tuple(tuple(Fraction(x, 2) for x in row) for row in self.exchange2())

    def eps_int(self, i: int, j: int) -> int:
        two = self.pair2(self.basis[i], self.basis[j])
        if two % 2:
            raise ValueError(f"eps[{i}][{j}] is not an integer")
        return two // 2

    def label(self, i: int) -> str:
        if self.symbols is None:
            return f"e{i}"
        return self.symbols.render(self.basis[i])

    # -- mutation --------------------------------------------------------

    def mutate(self, k: int) -> "Seed":
        if k in self.frozen:
            raise FrozenVertex(f"vertex {k} is frozen")
        ek = self.basis[k]
        new_basis = []
        for i, ei in enumerate(self.basis):
            if i == k:
                new_basis.append(tuple(-x for x in ek))
            else:
                c = max(self.eps_int(i, k), 0)
                if c:
                    new_basis.append(tuple(x + c * y for x, y in zip(ei, ek)))
                else:
                    new_basis.append(ei)
        return Seed(self.ambient_dim, tuple(new_basis), self.form2, self.frozen, self.symbols)

    def permuted(self, perm: tuple[int, ...]) -> "Seed":
        """Relabel vertices: old position i moves to position perm[i]."""
        n = self.n_vertices
        basis = [None] * n
        for i, v in enumerate(self.basis):
            basis[perm[i]] = v
        frozen = frozenset(perm[i] for i in self.frozen)
        return Seed(self.ambient_dim, tuple(basis), self.form2, frozen, self.symbols)

    def mapped(self, matrix: tuple[tuple[int, ...], ...]) -> "Seed":
        """Apply a linear ambient map to every basis vector."""
        basis = tuple(tuple(sum(matrix[r][c] * v[c] for c in range(self.ambient_dim))
                            for r in range(self.ambient_dim)) for v in self.basis)
        return Seed(self.ambient_dim, basis, self.form2, self.frozen, self.symbols)

    def apply(self, seq: MutationSeq) -> "Seed":
        s = self
        for k in seq.steps:
            s = s.mutate(k)
        if seq.post_permutation is not None:
            s = s.permuted(seq.post_permutation)
        if seq.post_symbol_map is not None:
            s = s.mapped(seq.post_symbol_map)
        return s

    # -- export ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        out = {
            "ambient_dim": self.ambient_dim,
            "basis": [list(v) for v in self.basis],
            "form2": [list(r) for r in self.form2],
            "frozen": sorted(self.frozen),
            "labels": [self.label(i) for i in range(self.n_vertices)],
        }
        if self.symbols is not None:
            out["symbols"] = {
                "names": list(self.symbols.names),
                "kinds": list(self.symbols.kinds),
                "partner": list(self.symbols.partner),
            }
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, d: dict) -> "Seed":
        symbols = None
        if "symbols" in d:
            s = d["symbols"]
            symbols = SymbolSpace(tuple(s["names"]), tuple(s["kinds"]), tuple(s["partner"]))
        return cls(
            d["ambient_dim"],
            tuple(tuple(v) for v in d["basis"]),
            tuple(tuple(r) for r in d["form2"]),
            frozenset(d.get("frozen", [])),
            symbols,
        )

    def to_dot(self, name: str = "quiver") -> str:
        eps = self.exchange()
        lines = [f"digraph {name} {{"]
        for i in range(self.n_vertices):
            shape = "box" if i in self.frozen else "circle"
            lines.append(f'  v{i} [shape={shape}, label="{i}: {self.label(i)}"];')
        for i in range(self.n_vertices):
            for j in range(self.n_vertices):
                e = eps[i][j]
                if e > 0:
                    if e.denominator == 1:
                        lines.extend(f"  v{i} -> v{j};" for _ in range(int(e)))
                    else:
                        lines.append(f'  v{i} -> v{j} [style=dashed, label="{e}"];')
        lines.append("}")
        return "\n".join(lines)


def exchange_matrix(s: Seed) -> tuple[tuple[Fraction, ...], ...]:
    return s.exchange()


def mutate_seed(s: Seed, k: int) -> Seed:
    return s.mutate(k)


def seed_from_labels(space: SymbolSpace, labels: list[tuple[int, ...]],
                     frozen: frozenset[int] = frozenset()) -> Seed:
    """Seed whose ambient lattice is the symbol space; basis = labels."""
    p = space.pairing2pi()
    form2 = tuple(tuple(2 * x for x in row) for row in p)
    return Seed(space.dim, tuple(labels), form2, frozen, space)


# ---------------------------------------------------------------------------
# Coxeter-chain quivers
# ---------------------------------------------------------------------------


def coxeter_space(n: int) -> SymbolSpace:
    """Symbols x[0..n], p[0..n] plus the two central spectral parameters.

    Index 0 is only used by the augmented quiver and the frozen-variable
    expansion; the plain chain quiver ignores it.
    """
    pairs = [(f"p[{j}]", f"x[{j}]") for j in range(n + 1)]
    return SymbolSpace.build(pairs, ["specU", "specV"])


def coxeter_labels(space: SymbolSpace, n: int) -> list[tuple[int, ...]]:
    labels = [space.vector({"p[1]": -1, "specU": -1})]
    for j in range(1, n):
        labels.append(space.vector({f"p[{j}]": 1, f"p[{j+1}]": -1,
                                    f"x[{j}]": 1, f"x[{j+1}]": -1}))
        labels.append(space.vector({f"x[{j+1}]": 1, f"x[{j}]": -1}))
    # interleave as v_0, v_1, v_2, ..., v_{2n-1}
    out = [labels[0]]
    for j in range(1, n):
        out.append(labels[2 * j - 1])
        out.append(labels[2 * j])
    out.append(space.vector({f"p[{n}]": 1, "specV": 1}))
    return out


def build_coxeter(n: int) -> Seed:
    """The 2n-vertex chain quiver of the rank-n relativistic Toda system."""
    if n < 2:
        raise RankTooSmall("need n >= 2")
    space = coxeter_space(n)
    return seed_from_labels(space, coxeter_labels(space, n))


def build_augmented_coxeter(n: int) -> Seed:
    """build_coxeter(n) plus a mutable handle v_a and a frozen vertex v_f.

    Vertex order: v_0..v_{2n-1}, then v_a (index 2n), then v_f (index 2n+1);
    dropping the last two recovers build_coxeter(n) exactly.
    """
    if n < 2:
        raise RankTooSmall("need n >= 2")
    space = coxeter_space(n)
    labels = coxeter_labels(space, n)
    labels.append(space.vector({"p[1]": -1, "x[0]": -1}))
    labels.append(space.vector({"p[0]": 1}))
    return seed_from_labels(space, labels, frozenset({2 * n + 1}))


def glued_space(m: int, n: int) -> SymbolSpace:
    pairs = [(f"p[{j}]", f"x[{j}]") for j in range(1, m + 1)]
    pairs += [(f"q[{j}]", f"y[{j}]") for j in range(1, n + 1)]
    return SymbolSpace.build(pairs)


def glued_position(m: int, n: int, j: int) -> int:
    """Vertex index j in [2-2n, 2m-2] -> list position."""
    return j + 2 * n - 2


def build_glued(m: int, n: int) -> Seed:
    """Two chain quivers glued at v_0 = q_n - p_1; 2m+2n-3 vertices.

    Positions run over v_{2-2n}, ..., v_{-1}, v_0, v_1, ..., v_{2m-2};
    use glued_position to translate a vertex index into a position.
    """
    if m < 1 or n < 1:
        raise RankTooSmall("need m, n >= 1")
    space = glued_space(m, n)
    labels: dict[int, tuple[int, ...]] = {
        0: space.vector({f"q[{n}]": 1, "p[1]": -1})
    }
    for j in range(1, m):
        labels[2 * j] = space.vector({f"x[{j+1}]": 1, f"x[{j}]": -1})
        labels[2 * j - 1] = space.vector({f"p[{j}]": 1, f"p[{j+1}]": -1,
                                          f"x[{j}]": 1, f"x[{j+1}]": -1})
    for j in range(1, n):
        labels[-2 * j] = space.vector({f"y[{j+1}]": 1, f"y[{j}]": -1})
        labels[-2 * j + 1] = space.vector({f"q[{j}]": 1, f"q[{j+1}]": -1,
                                           f"y[{j}]": 1, f"y[{j+1}]": -1})
    ordered = [labels[j] for j in range(2 - 2 * n, 2 * m - 1)]
    return seed_from_labels(space, ordered)


# ---------------------------------------------------------------------------
# Named mutation sequences
# ---------------------------------------------------------------------------


def standard_sequence(kind: str, n: int) -> MutationSeq:
    """Named sequences on the rank-n chain quiver (application order)."""
    if n < 2:
        raise RankTooSmall("need n >= 2")
    if kind == "baxter_top":
        return MutationSeq(tuple(range(2 * n - 1)))
    if kind == "baxter_bottom":
        steps = [2 * n - 1]
        for k in range(n - 1, 0, -1):
            steps += [2 * k - 1, 2 * k]
        return MutationSeq(tuple(steps))
    if kind == "r_op":
        return MutationSeq(tuple(range(2 * n - 2)))
    if kind == "dehn":
        steps = tuple(2 * k - 1 for k in range(1, n))
        perm = list(range(2 * n))
        for k in range(1, n):
            perm[2 * k], perm[2 * k - 1] = perm[2 * k - 1], perm[2 * k]
        return MutationSeq(steps, tuple(perm), dehn_symbol_map(n))
    raise UnknownKind(kind)


def dehn_symbol_map(n: int) -> tuple[tuple[int, ...], ...]:
    """x[j] -> x[j] - p[j] on coxeter_space(n), identity elsewhere.

    This is the Gaussian half of the twist; composed with the mutation steps
    and the vertex swap it restores the chain seed and fixes the Toda
    Hamiltonians on the nose.
    """
    space = coxeter_space(n)
    d = space.dim
    mat = [[1 if r == c else 0 for c in range(d)] for r in range(d)]
    for j in range(1, n + 1):
        xi = space.index(f"x[{j}]")
        pi = space.index(f"p[{j}]")
        mat[pi][xi] = -1
    return tuple(tuple(r) for r in mat)


def frozen_trick_sequence(n: int) -> MutationSeq:
    """(mu_a, mu_1, ..., mu_{2n-2}) on the augmented chain quiver."""
    return MutationSeq((2 * n,) + tuple(range(1, 2 * n - 1)))


def bifund_vertex_tokens(m: int, n: int) -> tuple[int, ...]:
    """The array-read token string of the glue-reversing sequence.

    Entries x - 2j for j in [0, 2n-2] fill column x of a diagonal-shifted
    array; columns are read left to right, circled entries (even j) bottom to
    top, then uncircled entries top to bottom.  This reproduces the published
    (4,3) composition token for token (in application order).
    """
    if m < 1 or n < 1:
        raise RankTooSmall("need m, n >= 1")
    tokens: list[int] = []
    for x in range(0, 2 * m + 2 * n - 3):
        jlo = max(0, x - (2 * m - 2))
        jhi = min(2 * n - 2, x)
        for j in range(jlo + (jlo % 2), jhi + 1, 2):        # circled, bottom to top
            tokens.append(x - 2 * j)
        top_odd = jhi if jhi % 2 else jhi - 1
        for j in range(top_odd, jlo - 1, -2):               # uncircled, top to bottom
            tokens.append(x - 2 * j)
    return tuple(tokens)


def bifund_token_vertex(n: int, t: int) -> int:
    """Array token -> vertex index of the glued quiver.

    Nonnegative tokens name v_t directly.  Negative tokens count the lower
    chain from the glue downward, which reverses the pair index against the
    label subscripts: -(2j-1) -> v_{-(2(n-j)-1)} and -2j -> v_{-2(n-j)}.
    Both the quantum-dilogarithm factorization of the glue-reversing operator
    and its bottom-transport special case (m = 1) force this reading.
    """
    if t >= 0:
        return t
    j = (-t + 1) // 2
    return t + 2 * (2 * j - n)


def bifund_sequence(m: int, n: int) -> MutationSeq:
    """The glue-reversing sequence as seed positions for build_glued(m, n)."""
    tokens = bifund_vertex_tokens(m, n)
    return MutationSeq(tuple(glued_position(m, n, bifund_token_vertex(n, t))
                             for t in tokens))


def glued_role_swap(src: Seed, dst: Seed, vec: tuple[int, ...]) -> tuple[int, ...]:
    """Translate a src-glued-space vector into dst's symbols via x<->y, p<->q."""
    combo = {}
    for name, c in zip(src.symbols.names, vec):
        if c:
            kind, idx = name[0], name[1:]
            combo[{"x": "y", "p": "q", "y": "x", "q": "p"}[kind] + idx] = c
    return dst.symbols.vector(combo)


def bifund_renumbering(m: int, n: int) -> tuple[int, ...]:
    """Position map identifying the mutated (m,n) glue with build_glued(n,m).

    The glue-reversing sequence preserves the label set (with the glue label
    itself reversed), so matching labels role for role determines the vertex
    renumbering uniquely; under it the exchange matrices agree exactly.
    """
    src = build_glued(m, n)
    out = src.apply(bifund_sequence(m, n))
    dst = build_glued(n, m)
    lookup = {v: i for i, v in enumerate(dst.basis)}
    perm = []
    for v in out.basis:
        key = glued_role_swap(src, dst, v)
        if key not in lookup:
            raise ValueError(f"no label match for {src.symbols.render(v)}")
        perm.append(lookup[key])
    return tuple(perm)


# Matrix-mutation oracle used by the tests: the Fomin-Zelevinsky rule applied
# directly to the exchange matrix, independent of the basis-change route.
def matrix_mutation_oracle(eps, k: int):
    n = len(eps)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                out[i][j] = -eps[i][j]
            else:
                pos = max(eps[i][k], 0) * max(eps[k][j], 0)
                neg = max(-eps[i][k], 0) * max(-eps[k][j], 0)
                out[i][j] = eps[i][j] + pos - neg
    return tuple(tuple(r) for r in out)
