"""Exact commutative arithmetic over Z[v^{±1}].

The deformation parameter is the formal variable v with q = v^2, so that
half-integer powers of q (which show up whenever a skew form takes
half-integer values) stay inside the ring.  On top of that we build sparse
multivariate Laurent polynomials in named commuting generators, and rational
functions whose denominators are kept as explicit binomial factors.

Everything here is exact: coefficients are Python ints, evaluation uses
fractions.Fraction.  No floats anywhere.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


class ZeroAssignment(ValueError):
    """A Laurent generator was assigned the value 0."""


class QCoeff:
    """An element of Z[v^{±1}], stored as {v-exponent: int}."""

    __slots__ = ("d",)

    def __init__(self, d: dict[int, int] | None = None):
        self.d = {e: c for e, c in (d or {}).items() if c != 0}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "QCoeff":
        return cls({})

    @classmethod
    def one(cls) -> "QCoeff":
        return cls({0: 1})

    @classmethod
    def integer(cls, c: int) -> "QCoeff":
        return cls({0: c})

    @classmethod
    def v_power(cls, e: int, c: int = 1) -> "QCoeff":
        """c * v^e."""
        return cls({e: c})

    @classmethod
    def q_power(cls, e: int, c: int = 1) -> "QCoeff":
        """c * q^e = c * v^{2e}."""
        return cls({2 * e: c})

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "QCoeff") -> "QCoeff":
        d = dict(self.d)
        for e, c in other.d.items():
            n = d.get(e, 0) + c
            if n:
                d[e] = n
            else:
                d.pop(e, None)
        return QCoeff(d)

    def __neg__(self) -> "QCoeff":
        return QCoeff({e: -c for e, c in self.d.items()})

    def __sub__(self, other: "QCoeff") -> "QCoeff":
        return self + (-other)

    def __mul__(self, other: "QCoeff") -> "QCoeff":
        if not self.d or not other.d:
            return QCoeff({})
        d: dict[int, int] = {}
        for e1, c1 in self.d.items():
            for e2, c2 in other.d.items():
                e = e1 + e2
                n = d.get(e, 0) + c1 * c2
                if n:
                    d[e] = n
                else:
                    d.pop(e, None)
        return QCoeff(d)

    def scale_v(self, e: int, c: int = 1) -> "QCoeff":
        """Multiply by the unit c*v^e (c must be ±1)."""
        return QCoeff({k + e: c * x for k, x in self.d.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QCoeff) and self.d == other.d

    def __hash__(self) -> int:
        return hash(self.key())

    def __bool__(self) -> bool:
        return bool(self.d)

    def key(self) -> tuple:
        return tuple(sorted(self.d.items()))

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.d

    def is_one(self) -> bool:
        return self.d == {0: 1}

    def is_unit(self) -> bool:
        """True iff this is ±v^k."""
        return len(self.d) == 1 and abs(next(iter(self.d.values()))) == 1

    def unit_inverse(self) -> "QCoeff":
        if not self.is_unit():
            raise ValueError(f"not a unit in Z[v^±1]: {self}")
        (e, c), = self.d.items()
        return QCoeff({-e: c})

    # -- evaluation & printing ---------------------------------------------

    def eval(self, v: Fraction) -> Fraction:
        if v == 0:
            raise ZeroAssignment("v must be nonzero")
        return sum((Fraction(c) * v ** e for e, c in self.d.items()), Fraction(0))

    def __str__(self) -> str:
        if not self.d:
            return "0"
        parts = []
        for e in sorted(self.d):
            c = self.d[e]
            if e == 0:
                parts.append(f"{c}")
            else:
                mono = "v" if e == 1 else f"v^{e}"
                if c == 1:
                    parts.append(mono)
                elif c == -1:
                    parts.append(f"-{mono}")
                else:
                    parts.append(f"{c}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    __repr__ = __str__


def qc_exact_div(a: QCoeff, b: QCoeff) -> QCoeff | None:
    """Exact division in Z[v^{±1}]; None when b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by zero in Z[v^±1]")
    if a.is_zero():
        return QCoeff.zero()
    if b.is_unit():
        return a * b.unit_inverse()
    rem = dict(a.d)
    btop = max(b.d)
    quo: dict[int, int] = {}
    while rem:
        rtop = max(rem)
        c, r = divmod(rem[rtop], b.d[btop])
        if r != 0:
            return None
        e = rtop - btop
        quo[e] = c
        for be, bc in b.d.items():
            k = be + e
            n = rem.get(k, 0) - c * bc
            if n:
                rem[k] = n
            else:
                rem.pop(k, None)
        if rem and max(rem) >= rtop:
            return None
    return QCoeff(quo)


class LaurentPoly:
    """Sparse Laurent polynomial over QCoeff in named commuting generators.

    terms maps an integer exponent tuple (one slot per generator) to its
    QCoeff.  The zero polynomial has an empty term map.
    """

    __slots__ = ("gens", "terms")

    def __init__(self, gens: tuple[str, ...], terms: dict[tuple[int, ...], QCoeff] | None = None):
        self.gens = tuple(gens)
        self.terms = {}
        for exps, c in (terms or {}).items():
            if c:
                if len(exps) != len(self.gens):
                    raise ValueError("exponent vector length != generator count")
                self.terms[tuple(exps)] = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, gens: tuple[str, ...]) -> "LaurentPoly":
        return cls(gens, {})

    @classmethod
    def const(cls, gens: tuple[str, ...], c: QCoeff) -> "LaurentPoly":
        return cls(gens, {(0,) * len(gens): c})

    @classmethod
    def one(cls, gens: tuple[str, ...]) -> "LaurentPoly":
        return cls.const(gens, QCoeff.one())

    @classmethod
    def gen(cls, gens: tuple[str, ...], name: str, power: int = 1, c: QCoeff | None = None) -> "LaurentPoly":
        e = [0] * len(gens)
        e[gens.index(name)] = power
        return cls(gens, {tuple(e): c if c is not None else QCoeff.one()})

    @classmethod
    def monomial(cls, gens: tuple[str, ...], exps: dict[str, int], c: QCoeff | None = None) -> "LaurentPoly":
        e = [0] * len(gens)
        for name, p in exps.items():
            e[gens.index(name)] = p
        return cls(gens, {tuple(e): c if c is not None else QCoeff.one()})

    # -- alignment ---------------------------------------------------------

    def extend(self, gens: tuple[str, ...]) -> "LaurentPoly":
        """Re-express over a generator superset (order given by `gens`)."""
        if gens == self.gens:
            return self
        pos = [gens.index(g) for g in self.gens]
        terms = {}
        for exps, c in self.terms.items():
            e = [0] * len(gens)
            for p, x in zip(pos, exps):
                e[p] = x
            terms[tuple(e)] = c
        return LaurentPoly(gens, terms)

    @staticmethod
    def aligned(a: "LaurentPoly", b: "LaurentPoly") -> tuple["LaurentPoly", "LaurentPoly"]:
        if a.gens == b.gens:
            return a, b
        union = tuple(sorted(set(a.gens) | set(b.gens)))
        return a.extend(union), b.extend(union)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = LaurentPoly.aligned(self, other)
        terms = dict(a.terms)
        for exps, c in b.terms.items():
            n = terms.get(exps, QCoeff.zero()) + c
            if n:
                terms[exps] = n
            else:
                terms.pop(exps, None)
        return LaurentPoly(a.gens, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.gens, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = LaurentPoly.aligned(self, other)
        terms: dict[tuple[int, ...], QCoeff] = {}
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                n = terms.get(e, QCoeff.zero()) + c1 * c2
                if n:
                    terms[e] = n
                else:
                    terms.pop(e, None)
        return LaurentPoly(a.gens, terms)

    def scale(self, c: QCoeff) -> "LaurentPoly":
        return LaurentPoly(self.gens, {e: x * c for e, x in self.terms.items()})

    def scale_gens(self, units: dict[str, QCoeff]) -> "LaurentPoly":
        """Substitute g -> u_g * g for unit coefficients u_g (e.g. w -> q^2 w)."""
        idx = {}
        for g, u in units.items():
            if not u.is_unit():
                raise ValueError("scale_gens wants ±v^k multipliers")
            idx[self.gens.index(g)] = next(iter(u.d.items()))
        terms = {}
        for exps, c in self.terms.items():
            vshift, sign = 0, 1
            for i, (ue, uc) in idx.items():
                e = exps[i]
                if e:
                    vshift += ue * e
                    if uc == -1 and e % 2:
                        sign = -sign
            terms[exps] = c.scale_v(vshift, sign)
        return LaurentPoly(self.gens, terms)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        a, b = LaurentPoly.aligned(self, other)
        return a.terms == b.terms

    def __hash__(self) -> int:
        return hash(self.key())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * len(self.gens), QCoeff.zero()).is_one()

    def is_unit_monomial(self) -> bool:
        return len(self.terms) == 1 and next(iter(self.terms.values())).is_unit()

    def key(self) -> tuple:
        """Canonical hashable form (generators with nonzero support only)."""
        items = []
        for exps in sorted(self.terms):
            named = tuple((g, e) for g, e in zip(self.gens, exps) if e)
            items.append((named, self.terms[exps].key()))
        return tuple(items)

    # -- structure ---------------------------------------------------------

    def min_exps(self) -> tuple[int, ...]:
        """Per-generator minimum exponent (the unit-monomial content)."""
        if not self.terms:
            raise ValueError("zero polynomial has no content")
        cols = list(zip(*self.terms))
        return tuple(min(col) for col in cols)

    def shift_exps(self, delta: tuple[int, ...]) -> "LaurentPoly":
        return LaurentPoly(self.gens, {tuple(x + d for x, d in zip(e, delta)): c
                                       for e, c in self.terms.items()})

    # -- evaluation & printing ---------------------------------------------

    def eval(self, assignment: dict[str, Fraction], v: Fraction) -> Fraction:
        for g in self.gens:
            if any(e[self.gens.index(g)] for e in self.terms):
                if g not in assignment or assignment[g] == 0:
                    raise ZeroAssignment(f"generator {g} needs a nonzero value")
        vals = [assignment.get(g, Fraction(1)) for g in self.gens]
        total = Fraction(0)
        for exps, c in self.terms.items():
            m = c.eval(v)
            for x, e in zip(vals, exps):
                m *= x ** e
            total += m
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exps in sorted(self.terms):
            c = self.terms[exps]
            mono = "*".join(f"{g}^{e}" if e != 1 else g
                            for g, e in zip(self.gens, exps) if e)
            cs = str(c)
            if " " in cs:
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}" if mono and cs != "1" else (mono or cs))
        return " + ".join(parts)

    __repr__ = __str__


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return a * b


def lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly | None:
    """Return c with a = b*c when a Laurent quotient exists, else None.

    Both are shifted by their unit-monomial content to honest polynomials,
    then divided by leading terms in lex order; the per-variable content is
    additive under multiplication, which makes the shift lossless.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero():
        return LaurentPoly.zero(a.gens)
    a, b = LaurentPoly.aligned(a, b)
    ca, cb = a.min_exps(), b.min_exps()
    A = a.shift_exps(tuple(-x for x in ca))
    B = b.shift_exps(tuple(-x for x in cb))
    rem = dict(A.terms)
    bt = max(B.terms)
    quo: dict[tuple[int, ...], QCoeff] = {}
    while rem:
        rt = max(rem)
        e = tuple(x - y for x, y in zip(rt, bt))
        if any(x < 0 for x in e):
            return None
        c = qc_exact_div(rem[rt], B.terms[bt])
        if c is None:
            return None
        quo[e] = c
        for be, bc in B.terms.items():
            k = tuple(x + y for x, y in zip(be, e))
            n = rem.get(k, QCoeff.zero()) - c * bc
            if n:
                rem[k] = n
            else:
                rem.pop(k, None)
    shift = tuple(x - y for x, y in zip(ca, cb))
    return LaurentPoly(a.gens, quo).shift_exps(shift)


def lp_eval(a: LaurentPoly, assignment: dict[str, Fraction], v: Fraction) -> Fraction:
    return a.eval(assignment, v)


def factor_canonical(f: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Split f = unit * canon with the canon's lex-least term equal to 1.

    The unit is a ±v^k monomial; requires the lex-least coefficient of f to
    be a unit of Z[v^±1] (true for all denominator factors we produce).
    """
    if f.is_zero():
        raise ValueError("cannot canonicalize the zero factor")
    e0 = min(f.terms)
    c0 = f.terms[e0]
    if not c0.is_unit():
        raise ValueError(f"lex-least coefficient not a unit: {c0}")
    unit = LaurentPoly(f.gens, {e0: c0})
    canon = f.shift_exps(tuple(-x for x in e0)).scale(c0.unit_inverse())
    return unit, canon


class RationalFn:
    """num / prod(factor^mult) with canonical binomial denominator factors.

    The denominator is held factored (dict keyed by the factor's canonical
    key) so that reduction never needs a multivariate gcd: a factor cancels
    iff it exactly divides the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: dict | None = None):
        self.num = num
        self.den: dict[tuple, tuple[LaurentPoly, int]] = dict(den or {})
        if not num:
            self.den = {}

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFn":
        return cls(p)

    def den_poly(self) -> LaurentPoly:
        d = LaurentPoly.one(self.num.gens)
        for f, m in self.den.values():
            for _ in range(m):
                d = d * f
        return d

    @property
    def numerator(self) -> LaurentPoly:
        return self.num

    @property
    def denominator(self) -> LaurentPoly:
        return self.den_poly()

    def _with_factor(self, f: LaurentPoly, mult: int) -> None:
        """Record division by f^mult: split off f's unit content into num."""
        unit, canon = factor_canonical(f)
        (ue, uc), = unit.terms.items()
        num = self.num if self.num.gens == unit.gens else LaurentPoly.aligned(unit, self.num)[1]
        delta = [0] * len(num.gens)
        for g, x in zip(unit.gens, ue):
            delta[num.gens.index(g)] = -mult * x
        inv = uc.unit_inverse()
        scale = QCoeff.one()
        for _ in range(mult):
            scale = scale * inv
        self.num = num.shift_exps(tuple(delta)).scale(scale)
        if canon.is_one():
            return
        k = canon.key()
        got, m = self.den.get(k, (canon, 0))
        self.den[k] = (got, m + mult)

    def divided_by_factor(self, f: LaurentPoly, mult: int = 1) -> "RationalFn":
        out = RationalFn(self.num, self.den)
        out._with_factor(f, mult)
        return out.reduced()

    def times_poly(self, p: LaurentPoly) -> "RationalFn":
        return RationalFn(self.num * p, self.den).reduced()

    def __mul__(self, other: "RationalFn") -> "RationalFn":
        den = dict(self.den)
        for k, (f, m) in other.den.items():
            got, m0 = den.get(k, (f, 0))
            den[k] = (got, m0 + m)
        return RationalFn(self.num * other.num, den).reduced()

    def __add__(self, other: "RationalFn") -> "RationalFn":
        # common denominator: per-factor max multiplicity
        keys = set(self.den) | set(other.den)
        num_a, num_b = self.num, other.num
        den = {}
        for k in keys:
            fa, ma = self.den.get(k, (None, 0))
            fb, mb = other.den.get(k, (None, 0))
            f = fa if fa is not None else fb
            m = max(ma, mb)
            den[k] = (f, m)
            for _ in range(m - ma):
                num_a = num_a * f
            for _ in range(m - mb):
                num_b = num_b * f
        return RationalFn(num_a + num_b, den).reduced()

    def __neg__(self) -> "RationalFn":
        return RationalFn(-self.num, self.den)

    def __sub__(self, other: "RationalFn") -> "RationalFn":
        return self + (-other)

    def reduced(self) -> "RationalFn":
        """Cancel denominator factors that exactly divide the numerator."""
        if self.num.is_zero():
            return RationalFn(self.num, {})
        num = self.num
        den = {}
        for k, (f, m) in self.den.items():
            while m > 0:
                q = lp_exact_div(num, f)
                if q is None:
                    break
                num, m = q, m - 1
            if m > 0:
                den[k] = (f, m)
        return RationalFn(num, den)

    def scale_gens(self, units: dict[str, QCoeff]) -> "RationalFn":
        """Apply g -> u_g*g to numerator and every factor, re-canonicalizing."""
        out = RationalFn(self.num.scale_gens(units))
        for f, m in self.den.values():
            out._with_factor(f.scale_gens(units), m)
        return out

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.reduced().den

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return (self - other).is_zero()

    def eval(self, assignment: dict[str, Fraction], v: Fraction) -> Fraction:
        d = Fraction(1)
        for f, m in self.den.values():
            d *= f.eval(assignment, v) ** m
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at this point")
        return self.num.eval(assignment, v) / d

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        ds = " * ".join(f"({f})^{m}" if m != 1 else f"({f})"
                        for f, m in sorted(self.den.values(), key=lambda t: t[0].key()))
        return f"({self.num}) / [{ds}]"

    __repr__ = __str__


def elementary_symmetric(gens: tuple[str, ...], names: list[str], k: int) -> LaurentPoly:
    """e_k in the listed generators, as a LaurentPoly over `gens`."""
    out = LaurentPoly.zero(gens)
    for combo in itertools.combinations(names, k):
        out = out + LaurentPoly.monomial(gens, {n: 1 for n in combo})
    return out
