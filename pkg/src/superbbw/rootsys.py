"""Reductive factors, the dot action, Bott-Borel-Weil and reflection groups.

Weights of classical factors live in orthogonal (epsilon) coordinates; G2
weights live in fundamental-weight (omega) coordinates.  All arithmetic is
over ``Fraction``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence, Union

from .series import Poly, poly_prod, q_integer

Vec = tuple[Fraction, ...]
Number = Union[int, Fraction, str]

GROUP_ORDER_BOUND = 10**6


class NonIntegralWeight(ValueError):
    pass


class NonDominant(ValueError):
    pass


class GroupTooLarge(ValueError):
    pass


class ExponentMismatch(AssertionError):
    pass


def vec(xs: Sequence[Number]) -> Vec:
    return tuple(Fraction(x) for x in xs)


def _dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Vec, b: Vec) -> Vec:
    return tuple(x - y for x, y in zip(a, b))


def _scale(c: Fraction, a: Vec) -> Vec:
    return tuple(c * x for x in a)


def _unit(n: int, i: int, c: int = 1) -> Vec:
    return tuple(Fraction(c if k == i else 0) for k in range(n))


KINDS = ("GL", "SL", "SO_odd", "SO_even", "Sp", "G2")


@dataclass(frozen=True)
class FactorSpec:
    """One reductive factor of the even part.

    ``n`` is the natural parameter: GL(n), SL(n), SO(2n+1), SO(2n), Sp(2n);
    it is ignored for G2.
    """

    kind: str
    n: int = 2

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.kind == "G2":
            object.__setattr__(self, "n", 2)
        if self.n < 1:
            raise ValueError("factor parameter must be positive")

    # -- naming ---------------------------------------------------------
    @property
    def name(self) -> str:
        return {
            "GL": f"GL({self.n})",
            "SL": f"SL({self.n})",
            "SO_odd": f"SO({2 * self.n + 1})",
            "SO_even": f"SO({2 * self.n})",
            "Sp": f"Sp({2 * self.n})",
            "G2": "G2",
        }[self.kind]

    @classmethod
    def parse(cls, text: str) -> "FactorSpec":
        t = text.strip().replace(" ", "")
        if t == "G2":
            return cls("G2")
        head, _, rest = t.partition("(")
        k = int(rest.rstrip(")"))
        if head in ("GL", "SL"):
            return cls(head, k)
        if head == "SO":
            return cls("SO_odd", k // 2) if k % 2 else cls("SO_even", k // 2)
        if head == "Sp":
            return cls("Sp", k // 2)
        raise ValueError(f"cannot parse factor {text!r}")

    def __str__(self) -> str:
        return self.name

    # -- coordinates ----------------------------------------------------
    @property
    def width(self) -> int:
        """Number of canonical coordinates."""
        return 2 if self.kind == "G2" else self.n

    @property
    def canonical_basis(self) -> str:
        return "omega" if self.kind == "G2" else "epsilon"

    @property
    def rank(self) -> int:
        """Semisimple rank (number of simple roots)."""
        if self.kind in ("GL", "SL"):
            return self.n - 1
        if self.kind == "SO_even":
            return self.n if self.n >= 2 else 0
        return self.width

    @cached_property
    def _root_data(self) -> tuple[tuple[Vec, ...], tuple[Vec, ...], tuple[Vec, ...], tuple[Vec, ...]]:
        """(simple roots, simple coroots, positive roots, positive coroots)."""
        w = self.width
        e = lambda i, c=1: _unit(w, i, c)  # noqa: E731
        if self.kind == "G2":
            a1, a2 = vec((2, -1)), vec((-3, 2))
            expansions = [(1, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2)]
            co = [(1, 0), (0, 1), (1, 3), (2, 3), (1, 1), (1, 2)]
            pos = [_add(_scale(Fraction(p), a1), _scale(Fraction(q), a2)) for p, q in expansions]
            pco = [vec(c) for c in co]
            return tuple(pos[:2]), tuple(pco[:2]), tuple(pos), tuple(pco)
        pos: list[Vec] = []
        for i in range(w):
            for j in range(i + 1, w):
                pos.append(_sub(e(i), e(j)))
        if self.kind in ("SO_odd", "Sp", "SO_even"):
            for i in range(w):
                for j in range(i + 1, w):
                    pos.append(_add(e(i), e(j)))
        if self.kind == "SO_odd":
            pos += [e(i) for i in range(w)]
        if self.kind == "Sp":
            pos += [e(i, 2) for i in range(w)]
        simple = [_sub(e(i), e(i + 1)) for i in range(w - 1)]
        if self.kind == "SO_odd":
            simple.append(e(w - 1))
        elif self.kind == "Sp":
            simple.append(e(w - 1, 2))
        elif self.kind == "SO_even" and w >= 2:
            simple.append(_add(e(w - 2), e(w - 1)))
        coroot = lambda a: _scale(Fraction(2) / _dot(a, a), a)  # noqa: E731
        return (tuple(simple), tuple(coroot(a) for a in simple),
                tuple(pos), tuple(coroot(a) for a in pos))

    @property
    def simple_roots(self) -> tuple[Vec, ...]:
        return self._root_data[0]

    @property
    def simple_coroots(self) -> tuple[Vec, ...]:
        return self._root_data[1]

    @property
    def positive_roots(self) -> tuple[Vec, ...]:
        return self._root_data[2]

    @property
    def positive_coroots(self) -> tuple[Vec, ...]:
        return self._root_data[3]

    @cached_property
    def rho(self) -> Vec:
        if self.kind in ("GL", "SL"):
            return vec(range(self.n - 1, -1, -1))
        acc = tuple(Fraction(0) for _ in range(self.width))
        for a in self.positive_roots:
            acc = _add(acc, a)
        return _scale(Fraction(1, 2), acc)

    def zero(self) -> Vec:
        return tuple(Fraction(0) for _ in range(self.width))

    def normalize(self, lam: Sequence[Number]) -> Vec:
        """Canonical representative; SL weights are taken modulo the trace."""
        v = vec(lam)
        if self.kind == "SL":
            return tuple(x - v[-1] for x in v)
        return v

    def pair(self, lam: Vec, coroot: Vec) -> Fraction:
        return _dot(lam, coroot)

    def central(self, lam: Vec) -> Vec:
        """Component along the centre (empty for semisimple kinds)."""
        if self.kind == "GL":
            return (sum(lam, Fraction(0)),)
        if self.kind == "SO_even" and self.n == 1:
            return tuple(lam)
        return ()

    # -- basis conversion -----------------------------------------------
    @cached_property
    def fundamental_weights(self) -> tuple[Vec, ...]:
        """omega_i in canonical coordinates."""
        w, k = self.width, self.kind
        if k == "G2":
            return (vec((1, 0)), vec((0, 1)))
        if k == "SO_even" and w == 1:
            return (vec((1,)),)
        partial = lambda i: tuple(Fraction(1 if j < i else 0) for j in range(w))  # noqa: E731
        if k in ("GL", "SL"):
            return tuple(partial(i) for i in range(1, w))
        if k == "Sp":
            return tuple(partial(i) for i in range(1, w + 1))
        if k == "SO_odd":
            return tuple(partial(i) for i in range(1, w)) + (_scale(Fraction(1, 2), partial(w)),)
        half = Fraction(1, 2)
        spin_minus = tuple(half if j < w - 1 else -half for j in range(w))
        return tuple(partial(i) for i in range(1, w - 1)) + (spin_minus, _scale(half, partial(w)))

    def to_omega(self, lam: Sequence[Number]) -> Vec:
        v = vec(lam)
        if self.kind == "G2":
            return v
        if self.kind == "SO_even" and self.n == 1:
            return v
        return tuple(self.pair(v, c) for c in self.simple_coroots)

    def from_omega(self, coords: Sequence[Number]) -> Vec:
        a = vec(coords)
        if len(a) != len(self.fundamental_weights):
            raise ValueError(f"{self.name}: expected {len(self.fundamental_weights)} omega coordinates")
        acc = self.zero()
        for c, om in zip(a, self.fundamental_weights):
            acc = _add(acc, _scale(c, om))
        return self.normalize(acc)

    def coerce(self, coords: Sequence[Number], basis: str = "epsilon") -> Vec:
        if basis == "omega":
            return self.from_omega(coords)
        if basis != self.canonical_basis:
            raise ValueError(f"{self.name} has no {basis} coordinates")
        v = vec(coords)
        if len(v) != self.width:
            raise ValueError(f"{self.name}: expected {self.width} coordinates, got {len(v)}")
        return v

    # -- integrality / dominance ----------------------------------------
    def is_integral(self, lam: Vec) -> bool:
        if len(lam) != self.width:
            return False
        if any(self.pair(lam, c).denominator != 1 for c in self.simple_coroots):
            return False
        k = self.kind
        if k in ("GL", "Sp"):
            return all(x.denominator == 1 for x in lam)
        if k == "SL":
            return all((x - lam[0]).denominator == 1 for x in lam)
        if k in ("SO_odd", "SO_even"):
            return all(x.denominator == 1 for x in lam) or all(x.denominator == 2 for x in lam)
        return all(x.denominator == 1 for x in lam)

    def check_integral(self, lam: Vec) -> None:
        if not self.is_integral(lam):
            raise NonIntegralWeight(f"{self.name}: {fmt_vec(lam)} is not integral")

    def is_dominant(self, lam: Vec) -> bool:
        return all(self.pair(lam, c) >= 0 for c in self.simple_coroots)

    def reflect(self, i: int, lam: Vec) -> Vec:
        a, c = self.simple_roots[i], self.simple_coroots[i]
        return _sub(lam, _scale(self.pair(lam, c), a))

    def reflect_root(self, k: int, lam: Vec) -> Vec:
        a, c = self.positive_roots[k], self.positive_coroots[k]
        return _sub(lam, _scale(self.pair(lam, c), a))


def dot_reflect(f: FactorSpec, i: int, lam: Sequence[Number]) -> Vec:
    """s_i o lam = s_i(lam + rho) - rho."""
    if not 0 <= i < f.rank:
        raise IndexError(f"{f.name} has no simple root {i}")
    v = _add(vec(lam), f.rho)
    return f.normalize(_sub(f.reflect(i, v), f.rho))


def dot_word(f: FactorSpec, word: Sequence[int], lam: Sequence[Number]) -> Vec:
    """Apply s_{w[0]} ... s_{w[-1]} (rightmost first) in the dot action."""
    out = vec(lam)
    for i in reversed(word):
        out = dot_reflect(f, i, out)
    return out


def dominate(f: FactorSpec, v: Vec) -> tuple[Vec, int]:
    """Reflect the most negative simple pairing until v is dominant.

    Returns the dominant vector and the number of reflections used.
    """
    steps = 0
    while True:
        pairs = [f.pair(v, c) for c in f.simple_coroots]
        if not pairs:
            return v, steps
        i = min(range(len(pairs)), key=lambda k: (pairs[k], k))
        if pairs[i] >= 0:
            return v, steps
        v = f.reflect(i, v)
        steps += 1


@dataclass(frozen=True)
class Singular:
    def __str__(self) -> str:
        return "Singular"


@dataclass(frozen=True)
class Regular:
    length: int
    dominant: Vec
    dim: int

    @property
    def trivial(self) -> bool:
        return all(x == 0 for x in self.dominant)


BBWOutcome = Union[Singular, Regular]


def _dim_of_regular(f: FactorSpec, v: Vec) -> int:
    num = Fraction(1)
    for c in f.positive_coroots:
        num *= abs(f.pair(v, c)) / f.pair(f.rho, c)
    assert num.denominator == 1
    return int(num)


def bbw_line(f: FactorSpec, lam: Sequence[Number]) -> BBWOutcome:
    """Classical BBW for the line bundle of weight lam on G/B (B negative)."""
    lam = f.normalize(lam)
    f.check_integral(lam)
    v = _add(lam, f.rho)
    pairs = [f.pair(v, c) for c in f.positive_coroots]
    if any(p == 0 for p in pairs):
        return Singular()
    length = sum(1 for p in pairs if p < 0)
    top, steps = dominate(f, v)
    assert steps == length, "dominance walk disagrees with inversion count"
    return Regular(length, f.normalize(_sub(top, f.rho)), _dim_of_regular(f, top))


def weyl_dim(f: FactorSpec, lam: Sequence[Number]) -> int:
    lam = f.normalize(lam)
    f.check_integral(lam)
    if not f.is_dominant(lam):
        raise NonDominant(f"{f.name}: {fmt_vec(lam)} is not dominant")
    return _dim_of_regular(f, _add(lam, f.rho))


def fmt_frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(fmt_frac(Fraction(x)) for x in v) + ")"


# -- reflection groups ---------------------------------------------------

SERIES = ("Sym", "Hyperoctahedral", "Demihyperoctahedral")


@dataclass(frozen=True)
class ReflectionGroupSpec:
    series: str
    n: int

    def __post_init__(self):
        if self.series not in SERIES:
            raise ValueError(f"unknown reflection group series {self.series!r}")
        if self.n < 0:
            raise ValueError("rank must be nonnegative")

    @property
    def name(self) -> str:
        return f"{self.series}({self.n})"

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "ReflectionGroupSpec":
        head, _, rest = text.strip().partition("(")
        return cls(head, int(rest.rstrip(")")))

    @property
    def order(self) -> int:
        n = self.n
        if self.series == "Sym":
            return math.factorial(n)
        if self.series == "Hyperoctahedral":
            return 2**n * math.factorial(n)
        return 2 ** max(n - 1, 0) * math.factorial(n)

    @property
    def exponents(self) -> tuple[int, ...]:
        n = self.n
        if self.series == "Sym":
            return tuple(range(1, n))
        if self.series == "Hyperoctahedral":
            return tuple(range(1, 2 * n, 2))
        if n == 0:
            return ()
        return tuple(range(1, 2 * n - 2, 2)) + (n - 1,)

    def _positive_roots(self) -> list[tuple[int, ...]]:
        n = self.n
        roots = []
        for i in range(n):
            for j in range(i + 1, n):
                r = [0] * n
                r[i], r[j] = 1, -1
                roots.append(tuple(r))
                if self.series != "Sym":
                    r = [0] * n
                    r[i], r[j] = 1, 1
                    roots.append(tuple(r))
            if self.series == "Hyperoctahedral":
                r = [0] * n
                r[i] = 1
                roots.append(tuple(r))
        return roots


SignedPerm = tuple[int, ...]


def _act(w: SignedPerm, r: Sequence[int]) -> list[int]:
    """w sends e_i to sign(w[i]) e_{|w[i]|-1}."""
    out = [0] * len(r)
    for i, c in enumerate(r):
        if c:
            j = abs(w[i]) - 1
            out[j] += c if w[i] > 0 else -c
    return out


def _is_positive(r: Sequence[int]) -> bool:
    for c in r:
        if c:
            return c > 0
    return False


def enumerate_reflection_group(desc: ReflectionGroupSpec, bound: int = GROUP_ORDER_BOUND) -> list[tuple[SignedPerm, int]]:
    """All elements as signed permutations with Coxeter length.

    Length is the number of positive roots sent negative.
    """
    if desc.order > bound:
        raise GroupTooLarge(f"{desc.name} has order {desc.order} > {bound}")
    n = desc.n
    roots = desc._positive_roots()
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        if desc.series == "Sym":
            signs_iter = [(1,) * n]
        else:
            signs_iter = itertools.product((1, -1), repeat=n)
        for signs in signs_iter:
            if desc.series == "Demihyperoctahedral" and signs.count(-1) % 2:
                continue
            w = tuple(s * p for s, p in zip(signs, perm))
            length = sum(1 for r in roots if not _is_positive(_act(w, r)))
            out.append((w, length))
    return out


def poincare_by_enumeration(desc: ReflectionGroupSpec) -> Poly:
    counts: dict[int, int] = {}
    for _, length in enumerate_reflection_group(desc):
        counts[length] = counts.get(length, 0) + 1
    top = max(counts)
    return Poly(tuple(counts.get(k, 0) for k in range(top + 1)))


def poincare_by_exponents(desc: ReflectionGroupSpec) -> Poly:
    return poly_prod(q_integer(e) for e in desc.exponents)


def poincare_poly(desc: ReflectionGroupSpec) -> Poly:
    a = poincare_by_enumeration(desc)
    b = poincare_by_exponents(desc)
    if a != b:
        raise ExponentMismatch(f"{desc.name}: enumeration {a} vs exponents {b}")
    return a
