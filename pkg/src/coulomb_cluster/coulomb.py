"""Gauge quivers and the q-difference operator algebra of their abelianization.

The algebra has invertible generators w[i,r] (one per Cartan slot of gauge
node i), central flavor parameters z[t], cocycle parameters u[g] on non-tree
gauge edges, and shift operators D[i,r] with

    D[i,r] w[i,r] = q^2 w[i,r] D[i,r],

all other pairs commuting.  Operators are kept in normal form: coefficients
(rational functions with explicit binomial denominator factors) to the left,
shift monomials to the right, terms merged by shift.

Dressed minuscule monopole operators are built verbatim from their raw-sum
formulas: E carries the outgoing-edge factors and D^{+1}, F the incoming-edge
and flavor factors with the q^{-2m} prefactor and D^{-1}; their Weyl
denominators prod_{s != r}(1 - w_s/w_r) are stored factored so symmetrization
checks reduce to exact division.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .coeffs import LaurentPoly, QCoeff, RationalFn


class SchemaError(ValueError):
    pass


class LoopEdge(SchemaError):
    pass


class DisconnectedGraph(SchemaError):
    pass


class UnknownNode(ValueError):
    pass


class MissingColoring(ValueError):
    pass


@dataclass(frozen=True)
class NotPolynomial:
    """Denominators failed to cancel: a reportable outcome, not a crash."""

    remainder: str = ""

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class GaugeQuiver:
    gauge_nodes: tuple[tuple[str, int], ...]            # (id, dim)
    flavor_nodes: tuple[tuple[str, int, str], ...]      # (id, dim, attached_to)
    edges: tuple[tuple[str, str], ...]                  # gauge src -> gauge dst
    marked: str
    spanning_tree: frozenset[int]
    coloring: dict = field(hash=False)

    def gauge_dim(self, node: str) -> int:
        for nid, d in self.gauge_nodes:
            if nid == node:
                return d
        raise UnknownNode(node)

    @property
    def dim_v(self) -> int:
        return sum(d for _, d in self.gauge_nodes)

    @property
    def dim_w(self) -> int:
        return sum(d for _, d, _ in self.flavor_nodes)

    @property
    def euler_char(self) -> int:
        return len(self.gauge_nodes) - len(self.edges)

    def flavors_at(self, node: str) -> list[int]:
        """Global 1-based z indices attached to a gauge node."""
        out, t = [], 0
        for _, d, at in self.flavor_nodes:
            for _ in range(d):
                t += 1
                if at == node:
                    out.append(t)
        return out

    def is_sink(self, node: str) -> bool:
        self.gauge_dim(node)
        return all(src != node for src, _ in self.edges)

    def is_source(self, node: str) -> bool:
        self.gauge_dim(node)
        return all(dst != node for _, dst in self.edges)


def parse_gauge_quiver(data) -> GaugeQuiver:
    """Validate a gauge-quiver spec (JSON text or dict) and fill in defaults.

    A missing spanning tree is grown breadth-first from the marked node (edge
    declaration order breaks ties); a missing coloring is the tree's BFS
    parity, which is automatically proper on tree edges.
    """
    if isinstance(data, (str, bytes)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as e:
            raise SchemaError(f"invalid JSON: {e}") from e
    if not isinstance(data, dict):
        raise SchemaError("gauge quiver spec must be a JSON object")
    try:
        gauge = tuple((str(n["id"]), int(n["dim"])) for n in data["gauge_nodes"])
        flavor = tuple((str(n["id"]), int(n["dim"]), str(n["attached_to"]))
                       for n in data.get("flavor_nodes", []))
        edges = tuple((str(e["src"]), str(e["dst"])) for e in data.get("edges", []))
        marked = str(data["marked"])
    except (KeyError, TypeError) as e:
        raise SchemaError(f"missing or malformed field: {e}") from e

    ids = [n for n, _ in gauge]
    if len(set(ids)) != len(ids):
        raise SchemaError("duplicate gauge node ids")
    if any(d < 1 for _, d in gauge):
        raise SchemaError("gauge dimensions must be >= 1")
    if marked not in ids:
        raise SchemaError(f"marked node {marked!r} is not a gauge node")
    for fid, d, at in flavor:
        if at not in ids:
            raise SchemaError(f"flavor node {fid!r} attached to unknown node {at!r}")
        if d < 1:
            raise SchemaError("flavor dimensions must be >= 1")
    for src, dst in edges:
        if src == dst:
            raise LoopEdge(f"loop edge at {src!r}")
        if src not in ids or dst not in ids:
            raise SchemaError(f"edge {src!r}->{dst!r} uses unknown nodes")

    # BFS tree from the marked node over the undirected gauge graph
    if "spanning_tree" in data and data["spanning_tree"] is not None:
        tree = frozenset(int(i) for i in data["spanning_tree"])
        if not all(0 <= i < len(edges) for i in tree):
            raise SchemaError("spanning_tree indexes edges out of range")
    else:
        tree_set: set[int] = set()
        seen = {marked}
        frontier = [marked]
        while frontier:
            nxt = []
            for node in frontier:
                for i, (src, dst) in enumerate(edges):
                    other = dst if src == node else src if dst == node else None
                    if other is not None and other not in seen:
                        seen.add(other)
                        tree_set.add(i)
                        nxt.append(other)
            frontier = nxt
        tree = frozenset(tree_set)

    # connectivity and tree validation
    seen = {marked}
    frontier = [marked]
    while frontier:
        nxt = []
        for node in frontier:
            for i in tree:
                src, dst = edges[i]
                other = dst if src == node else src if dst == node else None
                if other is not None and other not in seen:
                    seen.add(other)
                    nxt.append(other)
        frontier = nxt
    if seen != set(ids):
        raise DisconnectedGraph("spanning tree does not reach every gauge node")
    if len(tree) != len(ids) - 1:
        raise SchemaError("spanning_tree is not a tree")

    if "coloring" in data and data["coloring"] is not None:
        coloring = {str(k): str(v) for k, v in data["coloring"].items()}
        if set(coloring) != set(ids) or not set(coloring.values()) <= {"black", "white"}:
            raise SchemaError("coloring must assign black/white to every gauge node")
        for i in tree:
            src, dst = edges[i]
            if coloring[src] == coloring[dst]:
                raise SchemaError(f"coloring not proper on tree edge {src!r}->{dst!r}")
    else:
        coloring = {marked: "black"}
        frontier = [marked]
        while frontier:
            nxt = []
            for node in frontier:
                for i in tree:
                    src, dst = edges[i]
                    other = dst if src == node else src if dst == node else None
                    if other is not None and other not in coloring:
                        coloring[other] = "white" if coloring[node] == "black" else "black"
                        nxt.append(other)
            frontier = nxt

    return GaugeQuiver(gauge, flavor, edges, marked, tree, coloring)


class DqAlgebra:
    """Variable universe and normal-form arithmetic for one gauge quiver."""

    def __init__(self, quiver: GaugeQuiver):
        self.quiver = quiver
        self.wslots: list[tuple[str, int]] = []
        for nid, d in quiver.gauge_nodes:
            for r in range(1, d + 1):
                self.wslots.append((nid, r))
        self.nontree = [i for i in range(len(quiver.edges)) if i not in quiver.spanning_tree]
        gens = [f"w[{n},{r}]" for n, r in self.wslots]
        gens += [f"z[{t}]" for t in range(1, quiver.dim_w + 1)]
        gens += [f"u[{g}]" for g in range(1, len(self.nontree) + 1)]
        self.gens = tuple(gens)
        self.slot_index = {s: i for i, s in enumerate(self.wslots)}

    def w(self, node: str, r: int) -> str:
        if (node, r) not in self.slot_index:
            raise UnknownNode(f"no slot w[{node},{r}]")
        return f"w[{node},{r}]"

    def u_name(self, edge_index: int) -> str | None:
        """Generator name for a non-tree edge, None on tree edges (u = 1)."""
        if edge_index in self.quiver.spanning_tree:
            return None
        return f"u[{self.nontree.index(edge_index) + 1}]"

    def one(self) -> LaurentPoly:
        return LaurentPoly.one(self.gens)

    def poly(self, exps: dict[str, int], c: QCoeff | None = None) -> LaurentPoly:
        return LaurentPoly.monomial(self.gens, exps, c)

    def zero_shift(self) -> tuple[int, ...]:
        return (0,) * len(self.wslots)

    def shift_units(self, shift: tuple[int, ...]) -> dict[str, QCoeff]:
        return {f"w[{n},{r}]": QCoeff.q_power(shift[i])
                for i, (n, r) in enumerate(self.wslots) if shift[i]}

    def sigma_units(self) -> dict[str, QCoeff]:
        """The sign substitution table of the two-coloring automorphism."""
        col = self.quiver.coloring
        if not col:
            raise MissingColoring("quiver carries no coloring")
        units: dict[str, QCoeff] = {}
        for (n, r) in self.wslots:
            if col[n] == "black":
                units[f"w[{n},{r}]"] = QCoeff.integer(-1)
        t = 0
        for _, d, at in self.quiver.flavor_nodes:
            for _ in range(d):
                t += 1
                if col[at] == "black":
                    units[f"z[{t}]"] = QCoeff.integer(-1)
        for g, ei in enumerate(self.nontree, start=1):
            src, dst = self.quiver.edges[ei]
            if col[src] == col[dst]:
                units[f"u[{g}]"] = QCoeff.integer(-1)
        return units


class DiffOp:
    """Normal-form q-difference operator: {shift tuple: RationalFn}."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: DqAlgebra, terms: dict[tuple[int, ...], RationalFn] | None = None):
        self.alg = alg
        self.terms = {}
        for shift, coeff in (terms or {}).items():
            if not coeff.is_zero():
                self.terms[tuple(shift)] = coeff

    @classmethod
    def from_poly(cls, alg: DqAlgebra, p: LaurentPoly) -> "DiffOp":
        return cls(alg, {alg.zero_shift(): RationalFn(p)})

    @classmethod
    def shift_op(cls, alg: DqAlgebra, node: str, r: int, power: int = 1) -> "DiffOp":
        shift = list(alg.zero_shift())
        shift[alg.slot_index[(node, r)]] = power
        return cls(alg, {tuple(shift): RationalFn(alg.one())})

    def __add__(self, other: "DiffOp") -> "DiffOp":
        terms = dict(self.terms)
        for shift, c in other.terms.items():
            if shift in terms:
                s = terms[shift] + c
                if s.is_zero():
                    del terms[shift]
                else:
                    terms[shift] = s
            else:
                terms[shift] = c
        return DiffOp(self.alg, terms)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.alg, {s: -c for s, c in self.terms.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def compose(self, other: "DiffOp") -> "DiffOp":
        """(f D^g)(h D^d) = f * g(h) * D^{g+d} with g acting as w -> q^{2g} w."""
        out = DiffOp(self.alg)
        for g, f in self.terms.items():
            units = self.alg.shift_units(g)
            for d, h in other.terms.items():
                shifted = h.scale_gens(units) if units else h
                term = DiffOp(self.alg, {tuple(x + y for x, y in zip(g, d)): f * shifted})
                out = out + term
        return out

    def commutator(self, other: "DiffOp") -> "DiffOp":
        return self.compose(other) - other.compose(self)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return (self - other).is_zero()

    def substituted(self, units: dict[str, QCoeff]) -> "DiffOp":
        return DiffOp(self.alg, {s: c.scale_gens(units) for s, c in self.terms.items()})

    def act(self, f: LaurentPoly) -> LaurentPoly | NotPolynomial:
        """Apply to a polynomial in the functional representation."""
        total = RationalFn(LaurentPoly.zero(self.alg.gens))
        for shift, coeff in self.terms.items():
            units = self.alg.shift_units(shift)
            g = f.scale_gens(units) if units else f
            total = total + coeff.times_poly(g)
        total = total.reduced()
        if total.den:
            return NotPolynomial(str(total))
        return total.num

    def to_json_list(self) -> list:
        out = []
        for shift in sorted(self.terms):
            named = {f"D[{n},{r}]": shift[i]
                     for i, (n, r) in enumerate(self.alg.wslots) if shift[i]}
            out.append({"coeff": str(self.terms[shift]), "shift": named})
        return out

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for shift in sorted(self.terms):
            named = "".join(f"D[{n},{r}]^{shift[i]}"
                            for i, (n, r) in enumerate(self.alg.wslots) if shift[i])
            bits.append(f"[{self.terms[shift]}] {named or '1'}")
        return "  +  ".join(bits)


def do_compose(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.compose(b)


def do_commutator(a: DiffOp, b: DiffOp) -> DiffOp:
    return a.commutator(b)


def _weyl_denominator_factors(alg: DqAlgebra, node: str, r: int, towards_r: bool):
    """(1 - w_s/w_r) for s != r when towards_r, else (1 - w_r/w_s)."""
    d = alg.quiver.gauge_dim(node)
    out = []
    for s in range(1, d + 1):
        if s == r:
            continue
        if towards_r:
            exps = {alg.w(node, s): 1, alg.w(node, r): -1}
        else:
            exps = {alg.w(node, r): 1, alg.w(node, s): -1}
        out.append(alg.one() - alg.poly(exps))
    return out


def monopole_E(quiver: GaugeQuiver, alg: DqAlgebra, node: str, m: int) -> DiffOp:
    """The raw-sum dressed monopole with D^{+1}: outgoing-edge factors only."""
    d = quiver.gauge_dim(node)
    total = DiffOp(alg)
    for r in range(1, d + 1):
        num = alg.poly({alg.w(node, r): m})
        for ei, (src, dst) in enumerate(quiver.edges):
            if src != node:
                continue
            u = alg.u_name(ei)
            for s in range(1, quiver.gauge_dim(dst) + 1):
                exps = {alg.w(node, r): 1, alg.w(dst, s): -1}
                if u:
                    exps[u] = 1
                num = num * (alg.one() - alg.poly(exps, QCoeff.q_power(1)))
        coeff = RationalFn(num)
        for f in _weyl_denominator_factors(alg, node, r, towards_r=True):
            coeff = coeff.divided_by_factor(f)
        shift = list(alg.zero_shift())
        shift[alg.slot_index[(node, r)]] = 1
        total = total + DiffOp(alg, {tuple(shift): coeff})
    return total


def monopole_F(quiver: GaugeQuiver, alg: DqAlgebra, node: str, m: int) -> DiffOp:
    """The raw-sum dressed monopole with D^{-1}: incoming edges and flavors."""
    d = quiver.gauge_dim(node)
    total = DiffOp(alg)
    for r in range(1, d + 1):
        num = alg.poly({alg.w(node, r): m}, QCoeff.q_power(-m))
        for ei, (src, dst) in enumerate(quiver.edges):
            if dst != node:
                continue
            u = alg.u_name(ei)
            for s in range(1, quiver.gauge_dim(src) + 1):
                exps = {alg.w(src, s): 1, alg.w(node, r): -1}
                if u:
                    exps[u] = 1
                num = num * (alg.one() - alg.poly(exps, QCoeff.q_power(1)))
        for t in quiver.flavors_at(node):
            num = num * (alg.one() - alg.poly({f"z[{t}]": 1, alg.w(node, r): -1},
                                              QCoeff.q_power(1)))
        coeff = RationalFn(num)
        for f in _weyl_denominator_factors(alg, node, r, towards_r=False):
            coeff = coeff.divided_by_factor(f)
        shift = list(alg.zero_shift())
        shift[alg.slot_index[(node, r)]] = -1
        total = total + DiffOp(alg, {tuple(shift): coeff})
    return total


def sigma_twist(op: DiffOp, quiver: GaugeQuiver | None = None) -> DiffOp:
    """Sign automorphism from the spanning tree's 2-coloring; fixes every D."""
    return op.substituted(op.alg.sigma_units())


def is_symmetric(alg: DqAlgebra, f: LaurentPoly) -> bool:
    """Invariance under adjacent transpositions within each w group."""
    for nid, d in alg.quiver.gauge_nodes:
        for r in range(1, d):
            pa = f.gens.index(alg.w(nid, r))
            pb = f.gens.index(alg.w(nid, r + 1))
            swapped = {}
            for exps, c in f.terms.items():
                e = list(exps)
                e[pa], e[pb] = e[pb], e[pa]
                swapped[tuple(e)] = c
            if LaurentPoly(f.gens, swapped) != f:
                return False
    return True


def act_symmetric(op: DiffOp, f: LaurentPoly) -> LaurentPoly | NotPolynomial:
    """Act on a per-group symmetric Laurent polynomial, clearing denominators."""
    f = f.extend(op.alg.gens) if f.gens != op.alg.gens else f
    if not is_symmetric(op.alg, f):
        raise ValueError("input must be symmetric in each w group")
    return op.act(f)


def mul_w_power(alg: DqAlgebra, m: int, node: str, r: int) -> DiffOp:
    return DiffOp.from_poly(alg, alg.poly({alg.w(node, r): m}))
