"""Quantum torus elements and exact cluster mutation.

Elements are finite sums sum_lambda c_lambda Y(lambda) with c_lambda in
Z[v^{±1}] and lambda an integer vector in a fixed ambient lattice carrying a
skew form (.,.) stored doubled as form2.  The product contract is

    Y(lambda) Y(mu) = q^{-(lambda,mu)} Y(lambda + mu),      q = v^2,

so q^{(lambda,mu)} Y(lambda) Y(mu) = Y(lambda+mu) and Y(0) = 1.

Mutation in direction d (a lattice vector, usually the current basis vector
of a seed vertex) acts on a monomial Y(lambda) with c = (d, lambda) by

    c >= 0:  Y(lambda) * prod_{a=1..c}  (1 + q^{2a-1} Y(-d))
    c <  0:  Y(lambda) * prod_{a=1..|c|}(1 + q^{1-2a} Y(-d))^{-1}

extended linearly; this is conjugation by the quantum dilogarithm of the
direction, derived from its functional equation.  The inverse factors are
cleared by one exact noncommutative division against a common denominator;
when that division fails the element is not Laurent in the target chart and
a NotLaurent value is returned instead of an element.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .coeffs import QCoeff
from .seed import MutationSeq, Seed


class NotUnimodular(ValueError):
    pass


class SizeTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class NotLaurent:
    """Mutation left the chart: a reportable outcome, not a crash."""

    step: int | None = None
    vertex: int | None = None

    def __bool__(self) -> bool:
        return False


class TorusElement:
    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: dict[tuple[int, ...], QCoeff] | None = None):
        self.dim = dim
        self.terms = {}
        for vec, c in (terms or {}).items():
            if c:
                if len(vec) != dim:
                    raise ValueError("lattice vector has wrong length")
                self.terms[tuple(vec)] = c

    @classmethod
    def zero(cls, dim: int) -> "TorusElement":
        return cls(dim, {})

    @classmethod
    def one(cls, dim: int) -> "TorusElement":
        return cls(dim, {(0,) * dim: QCoeff.one()})

    @classmethod
    def monomial(cls, vec: tuple[int, ...], c: QCoeff | None = None) -> "TorusElement":
        return cls(len(vec), {tuple(vec): c if c is not None else QCoeff.one()})

    def __add__(self, other: "TorusElement") -> "TorusElement":
        terms = dict(self.terms)
        for vec, c in other.terms.items():
            n = terms.get(vec, QCoeff.zero()) + c
            if n:
                terms[vec] = n
            else:
                terms.pop(vec, None)
        return TorusElement(self.dim, terms)

    def __neg__(self) -> "TorusElement":
        return TorusElement(self.dim, {v: -c for v, c in self.terms.items()})

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def scale(self, c: QCoeff) -> "TorusElement":
        return TorusElement(self.dim, {v: x * c for v, x in self.terms.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TorusElement) and self.dim == other.dim and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted((v, c.key()) for v, c in self.terms.items()))))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def apply_linear(self, matrix: tuple[tuple[int, ...], ...]) -> "TorusElement":
        """Y(v) -> Y(Mv); valid as an algebra map when M preserves the form."""
        terms: dict[tuple[int, ...], QCoeff] = {}
        for vec, c in self.terms.items():
            new = tuple(sum(matrix[r][k] * vec[k] for k in range(self.dim))
                        for r in range(self.dim))
            n = terms.get(new, QCoeff.zero()) + c
            if n:
                terms[new] = n
            else:
                terms.pop(new, None)
        return TorusElement(self.dim, terms)

    def extend(self, old_names: tuple[str, ...], new_names: tuple[str, ...]) -> "TorusElement":
        """Re-express over a larger named ambient basis."""
        pos = [new_names.index(n) for n in old_names]
        terms = {}
        for vec, c in self.terms.items():
            new = [0] * len(new_names)
            for p, x in zip(pos, vec):
                new[p] = x
            terms[tuple(new)] = c
        return TorusElement(len(new_names), terms)

    def to_json_list(self) -> list:
        return [{"lattice_vector": list(v), "coeff": str(c)}
                for v, c in sorted(self.terms.items())]

    def render(self, names: tuple[str, ...] | None = None) -> str:
        if not self.terms:
            return "0"
        parts = []
        for vec in sorted(self.terms):
            c = self.terms[vec]
            if names is not None:
                body = "".join(f"{x:+d}*{n}" if abs(x) != 1 else ("+" + n if x == 1 else "-" + n)
                               for n, x in zip(names, vec) if x)
                body = body[1:] if body.startswith("+") else body
            else:
                body = ",".join(str(x) for x in vec)
            cs = str(c)
            if " " in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*Y({body or '0'})" if cs != "1" else f"Y({body or '0'})")
        return " + ".join(parts)

    __repr__ = render


def _pair2(form2, a: tuple[int, ...], b: tuple[int, ...]) -> int:
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = form2[i]
            total += ai * sum(rj * bj for rj, bj in zip(row, b) if bj)
    return total


def te_mul(a: TorusElement, b: TorusElement, form2) -> TorusElement:
    """Bilinear extension of Y(l)Y(m) = v^{-l.form2.m} Y(l+m)."""
    terms: dict[tuple[int, ...], QCoeff] = {}
    for la, ca in a.terms.items():
        for lb, cb in b.terms.items():
            vec = tuple(x + y for x, y in zip(la, lb))
            c = (ca * cb).scale_v(-_pair2(form2, la, lb))
            n = terms.get(vec, QCoeff.zero()) + c
            if n:
                terms[vec] = n
            else:
                terms.pop(vec, None)
    return TorusElement(a.dim, terms)


def te_commutator(a: TorusElement, b: TorusElement, form2) -> TorusElement:
    return te_mul(a, b, form2) - te_mul(b, a, form2)


def _divide_right_binomial(s: TorusElement, g: tuple[int, ...], alpha_v: int, form2) -> TorusElement | None:
    """Solve Z * (1 + v^{alpha_v} Y(g)) = s exactly; None when impossible.

    Grouping the lattice by residue classes modulo Z*g makes the solve
    triangular: within a class all terms are rep + t*g, and the binomial
    couples slot t to slot t+1 with the constant power v^{alpha_v - (rep,g)2}.
    """
    if s.is_zero():
        return s
    pivot = next(i for i, x in enumerate(g) if x)
    gp = g[pivot]

    classes: dict[tuple[int, ...], dict[int, QCoeff]] = {}
    for vec, c in s.terms.items():
        t = vec[pivot] // gp
        rep = tuple(x - t * y for x, y in zip(vec, g))
        classes.setdefault(rep, {})[t] = c

    out: dict[tuple[int, ...], QCoeff] = {}
    for rep, col in classes.items():
        step = alpha_v - _pair2(form2, rep, g)   # Y(rep+t*g) Y(g) picks up this power
        tmax, tmin = max(col), min(col)
        z_prev = QCoeff.zero()
        for t in range(tmin, tmax + 1):
            z = col.get(t, QCoeff.zero()) - z_prev.scale_v(step)
            if t == tmax:
                if z:
                    return None
                break
            if z:
                out[tuple(x + t * y for x, y in zip(rep, g))] = z
            z_prev = z
    return TorusElement(s.dim, out)


def te_mutate(x: TorusElement, d: tuple[int, ...], form2) -> TorusElement | NotLaurent:
    """Quantum mutation of x in direction d, or NotLaurent."""
    if x.is_zero():
        return x
    if not any(d):
        raise ValueError("mutation direction must be nonzero")
    cvals = {}
    amax = 0
    for vec in x.terms:
        two_c = _pair2(form2, d, vec)
        if two_c % 2:
            raise ValueError("(d, lambda) must be an integer for mutation")
        c = two_c // 2
        cvals[vec] = c
        amax = max(amax, -c)

    md = tuple(-z for z in d)
    one = TorusElement.one(x.dim)

    def binom(j: int) -> TorusElement:
        return one + TorusElement.monomial(md, QCoeff.v_power(2 * j))

    numerator = TorusElement.zero(x.dim)
    for vec, coeff in x.terms.items():
        c = cvals[vec]
        t = TorusElement.monomial(vec, coeff)
        if c >= 0:
            for a in range(1, c + 1):
                t = te_mul(t, binom(2 * a - 1), form2)
            for a in range(1, amax + 1):
                t = te_mul(t, binom(1 - 2 * a), form2)
        else:
            for a in range(-c + 1, amax + 1):
                t = te_mul(t, binom(1 - 2 * a), form2)
        numerator = numerator + t
    out = numerator
    for a in range(1, amax + 1):
        res = _divide_right_binomial(out, md, 2 * (1 - 2 * a), form2)
        if res is None:
            return NotLaurent()
        out = res
    return out


def mutate_element(x: TorusElement, s: Seed, k: int) -> TorusElement | NotLaurent:
    """Mutation at seed vertex k; x lives in the seed's ambient lattice."""
    if k in s.frozen:
        raise ValueError(f"vertex {k} is frozen")
    return te_mutate(x, s.basis[k], s.form2)


def apply_sequence(x: TorusElement, s: Seed, seq: MutationSeq) -> TorusElement | NotLaurent:
    res, _ = apply_sequence_with_seed(x, s, seq)
    return res


def apply_sequence_with_seed(x: TorusElement, s: Seed, seq: MutationSeq
                             ) -> tuple[TorusElement | NotLaurent, Seed]:
    for i, k in enumerate(seq.steps):
        res = mutate_element(x, s, k)
        if isinstance(res, NotLaurent):
            return NotLaurent(step=i, vertex=k), s
        x = res
        s = s.mutate(k)
    if seq.post_permutation is not None:
        s = s.permuted(seq.post_permutation)
    if seq.post_symbol_map is not None:
        s = s.mapped(seq.post_symbol_map)
        x = x.apply_linear(seq.post_symbol_map)
    return x, s


def a_variable(s: Seed, M, k: int) -> TorusElement:
    """Ensemble-map image A_k = Y(sum_i upsilon_ik e_i), upsilon = (eps+M)^{-1}."""
    n = s.n_vertices
    eps = s.exchange()
    t = [[Fraction(eps[i][j]) + Fraction(M[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if t[i][j].denominator != 1:
                raise NotUnimodular("eps + M must be an integer matrix")
    # fraction-exact inverse with determinant tracking
    a = [row[:] + [Fraction(1) if r == c else Fraction(0) for c in range(n)]
         for r, row in enumerate(t)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise NotUnimodular("eps + M is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [u - f * v for u, v in zip(a[r], a[col])]
    if det not in (1, -1):
        raise NotUnimodular(f"det(eps + M) = {det}, need ±1")
    ups = [[a[r][n + c] for c in range(n)] for r in range(n)]
    vec = [0] * s.ambient_dim
    for i in range(n):
        u = ups[i][k]
        if u.denominator != 1:
            raise NotUnimodular("inverse is not integral")
        for j in range(s.ambient_dim):
            vec[j] += int(u) * s.basis[i][j]
    return TorusElement.monomial(tuple(vec))


def chain_sum(lam0: tuple[int, ...], *tail: tuple[int, ...]) -> TorusElement:
    """Y(l0) + Y(l0-l1) + Y(l0-l1-l2) + ... + Y(l0 - sum(tail))."""
    dim = len(lam0)
    acc = list(lam0)
    out = TorusElement.monomial(lam0)
    for lam in tail:
        acc = [x - y for x, y in zip(acc, lam)]
        out = out + TorusElement.monomial(tuple(acc))
    return out


def subset_sum(lam: tuple[int, ...], subset: list[int], k: int, dim: int | None = None) -> TorusElement:
    """sum over size-k subsets J of `subset` of Y(lam - sum_{r in J} e_r).

    Vertex indices in `subset` are 0-based positions in the lattice.
    """
    if k > len(subset):
        raise SizeTooLarge(f"k={k} exceeds |S|={len(subset)}")
    dim = dim if dim is not None else len(lam)
    out = TorusElement.zero(dim)
    for combo in itertools.combinations(subset, k):
        vec = list(lam)
        for r in combo:
            vec[r] -= 1
        out = out + TorusElement.monomial(tuple(vec))
    return out
