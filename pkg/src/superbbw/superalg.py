"""Catalog of classical Lie superalgebras with their BBW-parabolic data.

Odd roots are stored as flat vectors: the canonical coordinates of each even
factor concatenated in factor order (epsilon for classical factors, omega for
G2).  Root subsets are tuples in a fixed order; ``pos_roots`` is an indexed
multiset and the census enumerates subsets of its indices.
"""

from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .rootsys import (FactorSpec, ReflectionGroupSpec, Vec, fmt_frac, poincare_poly,
                      vec)
from .series import (DEFAULT_ORDER, Poly, TruncatedSeries, poly_substitute_power,
                     series_div_exact, series_from_generator_degrees)

MAX_RANK = 6
MAX_POS_ROOTS = 22


class InvariantViolation(ValueError):
    pass


class PartitionInvariantViolated(InvariantViolation):
    pass


class PartitionMismatch(InvariantViolation):
    pass


class IdentityViolation(AssertionError):
    pass


class UnsupportedParams(ValueError):
    pass


class UnknownAlgebra(ValueError):
    pass


class NoEmbeddingDefined(LookupError):
    pass


# -- spec ------------------------------------------------------------------

@dataclass(frozen=True)
class SuperAlgebraSpec:
    family: str
    params: tuple[int, ...]
    factors: tuple[FactorSpec, ...]
    phi1: tuple[Vec, ...]
    f_roots: tuple[Vec, ...]
    neg_roots: tuple[Vec, ...]
    pos_roots: tuple[Vec, ...]
    functional: Vec
    w1: ReflectionGroupSpec
    s_param: Optional[int]
    pg_degrees: Optional[tuple[int, ...]]  # None means derived as pb / z
    f1_torus_weights: tuple[Vec, ...]
    torus_relations: tuple[Vec, ...] = ()
    family_valid: bool = True
    hyperplane: str = ""
    namespace: str = "builtin"

    @property
    def name(self) -> str:
        return algebra_name(self.family, self.params)

    def __str__(self) -> str:
        return self.name

    @property
    def offsets(self) -> tuple[int, ...]:
        out, k = [], 0
        for f in self.factors:
            out.append(k)
            k += f.width
        return tuple(out)

    @property
    def width(self) -> int:
        return sum(f.width for f in self.factors)

    def split(self, v: Sequence[Fraction]) -> list[Vec]:
        return [tuple(v[o:o + f.width]) for o, f in zip(self.offsets, self.factors)]

    def normalize(self, v: Sequence) -> Vec:
        out: list[Fraction] = []
        for f, part in zip(self.factors, self.split(vec(v))):
            out.extend(f.normalize(part))
        return tuple(out)

    def evaluate(self, v: Vec) -> Fraction:
        return sum((a * b for a, b in zip(self.functional, v)), Fraction(0))

    @property
    def symmetric(self) -> bool:
        """Whether the odd roots are closed under negation."""
        return Counter(self.phi1) == Counter(neg(r) for r in self.phi1)

    @property
    def even_positive_count(self) -> int:
        return sum(len(f.positive_roots) for f in self.factors)


def neg(v: Vec) -> Vec:
    return tuple(-x for x in v)


def add(a: Vec, b: Vec) -> Vec:
    return tuple(x + y for x, y in zip(a, b))


# -- names -----------------------------------------------------------------

FAMILIES = ("gl", "sl", "psl", "osp_even", "osp_odd", "q", "psq", "p", "D21", "G3", "F4")


def algebra_name(family: str, params: tuple[int, ...]) -> str:
    if family in ("gl", "sl", "psl"):
        return f"{family}({params[0]}|{params[1]})"
    if family == "osp_even":
        return f"osp({2 * params[0]}|{2 * params[1]})"
    if family == "osp_odd":
        return f"osp({2 * params[0] + 1}|{2 * params[1]})"
    if family in ("q", "psq", "p"):
        return f"{family}({params[0]})"
    return {"D21": "D(2,1,a)", "G3": "G(3)", "F4": "F(4)"}[family]


_NAME = re.compile(r"^\s*([a-zA-Z]+)\s*\(\s*([0-9a-zα,|\s]*)\)\s*$")


def parse_algebra(text: str) -> tuple[str, tuple[int, ...]]:
    m = _NAME.match(text)
    if not m:
        raise UnknownAlgebra(f"cannot parse algebra name {text!r}")
    head, body = m.group(1), m.group(2).replace(" ", "")
    try:
        if head in ("gl", "sl", "psl"):
            a, b = body.split("|")
            return head, (int(a), int(b))
        if head == "osp":
            a, b = (int(x) for x in body.split("|"))
            if b % 2:
                raise UnknownAlgebra(f"osp needs an even symplectic rank: {text!r}")
            return ("osp_odd", ((a - 1) // 2, b // 2)) if a % 2 else ("osp_even", (a // 2, b // 2))
        if head in ("q", "psq", "p"):
            return head, (int(body),)
        if head == "D" and body.startswith("2,1,"):
            return "D21", ()
        if head == "G" and body == "3":
            return "G3", ()
        if head == "F" and body == "4":
            return "F4", ()
    except ValueError as exc:
        raise UnknownAlgebra(f"cannot parse algebra name {text!r}") from exc
    raise UnknownAlgebra(f"unknown algebra {text!r}")


# -- coordinate helpers ------------------------------------------------------

class _Coords:
    """Build flat vectors for two-block (epsilon | delta) layouts."""

    def __init__(self, m: int, n: int = 0):
        self.m, self.n = m, n

    def _v(self, pairs: Iterable[tuple[int, int]]) -> Vec:
        out = [0] * (self.m + self.n)
        for k, c in pairs:
            out[k] += c
        return vec(out)

    def eps(self, i: int, c: int = 1) -> Vec:
        return self._v([(i - 1, c)])

    def dlt(self, j: int, c: int = 1) -> Vec:
        return self._v([(self.m + j - 1, c)])

    def comb(self, *terms: Vec) -> Vec:
        acc = self._v([])
        for t in terms:
            acc = add(acc, t)
        return acc


def _multiset_minus(whole: Sequence[Vec], *parts: Sequence[Vec]) -> tuple[Vec, ...]:
    pending = Counter()
    for p in parts:
        pending.update(p)
    out = []
    for r in whole:
        if pending[r] > 0:
            pending[r] -= 1
        else:
            out.append(r)
    missing = +pending
    if missing:
        raise PartitionInvariantViolated(f"listed roots not in the odd root multiset: {sorted(missing)}")
    return tuple(out)


def _sample_chain(r: int) -> list[int]:
    """x_1 > x_2 > ... > x_r > 0 with smallest integers."""
    return list(range(r, 0, -1))


# -- family builders -----------------------------------------------------------

def _build_gl(family: str, m: int, n: int) -> dict:
    c = _Coords(m, n)
    phi1 = [c.comb(c.eps(i), c.dlt(j, -1)) for i in range(1, m + 1) for j in range(1, n + 1)]
    phi1 += [c.comb(c.eps(i, -1), c.dlt(j)) for i in range(1, m + 1) for j in range(1, n + 1)]
    k = min(m, n)
    f = [c.comb(c.eps(i), c.dlt(i, -1)) for i in range(1, k + 1)]
    f += [neg(r) for r in f]
    # {-e_i + d_j, -d_i + e_j : i < j}
    negs = [c.comb(c.eps(i, -1), c.dlt(j)) for i in range(1, m + 1) for j in range(1, n + 1) if i < j]
    negs += [c.comb(c.dlt(i, -1), c.eps(j)) for i in range(1, n + 1) for j in range(1, m + 1) if i < j]
    x = _sample_chain(max(m, n))
    rel = (c.comb(*[c.eps(i) for i in range(1, m + 1)], *[c.dlt(j, -1) for j in range(1, n + 1)]),)
    return dict(
        factors=(FactorSpec("GL", m), FactorSpec("GL", n)),
        phi1=phi1, f_roots=f, neg_roots=negs,
        functional=vec(x[:m] + x[:n]),
        w1=ReflectionGroupSpec("Sym", k), s_param=2,
        pg_degrees=tuple(2 * i for i in range(1, k + 1)) if family == "gl" else None,
        f1_torus_weights=f,
        torus_relations=() if family == "gl" else rel,
        hyperplane="sum_{i=1}^{%d} x_i E_i + sum_{j=1}^{%d} x_j D_j, x_1 > ... > x_%d" % (m, n, max(m, n)),
    )


def _build_osp(odd: bool, m: int, n: int) -> dict:
    c = _Coords(m, n)
    phi1 = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            phi1 += [c.comb(c.eps(i, s1), c.dlt(j, s2)) for i in range(1, m + 1) for j in range(1, n + 1)]
    if odd:
        phi1 += [c.dlt(j, s) for s in (1, -1) for j in range(1, n + 1)]
    # The min(m, n) bottom indices of each block are paired; surplus indices sit
    # at the top of the chain. Levels below compare positions in the chain.
    k = min(m, n)
    a, b = m - k, n - k
    f = [c.comb(c.eps(a + i), c.dlt(b + i, -1)) for i in range(1, k + 1)]
    f += [neg(r) for r in f]
    negs = [c.comb(c.eps(i, -1), c.dlt(j)) for i in range(1, m + 1) for j in range(1, n + 1) if i - a < j - b]
    negs += [c.comb(c.dlt(i, -1), c.eps(j)) for i in range(1, n + 1) for j in range(1, m + 1) if i - b < j - a]
    negs += [c.comb(c.eps(i, -1), c.dlt(j, -1)) for i in range(1, m + 1) for j in range(1, n + 1)]
    if odd:
        negs += [c.dlt(t, -1) for t in range(1, n + 1)]
    r = max(m, n)
    x = _sample_chain(r)
    if odd:
        w1 = ReflectionGroupSpec("Hyperoctahedral", k)
    elif m > n:
        w1 = ReflectionGroupSpec("Hyperoctahedral", n)
    else:
        w1 = ReflectionGroupSpec("Demihyperoctahedral", m)
    return dict(
        factors=(FactorSpec("SO_odd" if odd else "SO_even", m), FactorSpec("Sp", n)),
        phi1=phi1, f_roots=f, neg_roots=negs,
        functional=vec(x[:m] + x[a:] if m >= n else x[b:] + x[:n]),
        w1=w1, s_param=2, pg_degrees=None,
        f1_torus_weights=f,
        hyperplane="sum_{i=1}^{%d} x_{i+%d} E_i + sum_{j=1}^{%d} x_{j+%d} D_j, x_1 > ... > x_%d > 0"
        % (m, b, n, a, r),
    )


def _build_q(family: str, n: int) -> dict:
    c = _Coords(n)
    phi1 = [c.comb(c.eps(i), c.eps(j, -1)) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    negs = [c.comb(c.eps(i, -1), c.eps(j)) for i in range(1, n + 1) for j in range(1, n + 1) if i < j]
    zeros = n if family == "q" else n - 1
    return dict(
        factors=(FactorSpec("GL", n),),
        phi1=phi1, f_roots=[], neg_roots=negs,
        functional=vec(_sample_chain(n)),
        w1=ReflectionGroupSpec("Sym", n), s_param=1,
        pg_degrees=tuple(range(1, n + 1)) if family == "q" else None,
        f1_torus_weights=[c.comb() for _ in range(zeros)],
        hyperplane="sum_{i=1}^{%d} x_i E_i, x_1 > ... > x_%d" % (n, n),
    )


def _build_p(n: int) -> dict:
    c = _Coords(n)
    ee = lambda i, j, s=1: c.comb(c.eps(i, s), c.eps(j, s))  # noqa: E731
    phi1 = [ee(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    phi1 += [ee(i, j, -1) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    l = n // 2
    if n % 2 == 0:
        f = [ee(1 + j, n - j, s) for j in range(l) for s in (1, -1)]
    else:
        f = [ee(1 + j, n - j, s) for j in range(l) for s in (1, -1)] + [c.eps(l + 1, 2)]
    negs = [ee(i, j) for i in range(1, n + 1) for j in range(i, n + 1) if i + j > n + 1]
    negs += [ee(i, j, -1) for i in range(1, n + 1) for j in range(i + 1, n + 1) if i + j < n + 1]
    x = _sample_chain(l)
    func = [0] * n
    for i in range(1, l + 1):
        func[i - 1] += x[i - 1]
        func[n - i] -= x[i - 1]
    if n % 2 == 0:
        pg = tuple(4 * i for i in range(1, l)) + (l, n)
    else:
        pg = tuple(4 * i for i in range(1, l + 1)) + (n,)
    return dict(
        factors=(FactorSpec("SL", n),),
        phi1=phi1, f_roots=f, neg_roots=negs,
        functional=vec(func),
        w1=ReflectionGroupSpec("Hyperoctahedral", l), s_param=None,
        pg_degrees=pg,
        f1_torus_weights=f,
        hyperplane="sum_{i=1}^{%d} x_i (E_i - E_{%d-i}), x_1 > ... > x_%d > 0" % (l, n + 1, l),
    )


def _sl2(c: int) -> list[int]:
    return [c, 0]


def _build_d21() -> dict:
    trip = lambda a, b, c: vec(_sl2(a) + _sl2(b) + _sl2(c))  # noqa: E731
    signs = (1, -1)
    phi1 = [trip(a, b, c) for a in signs for b in signs for c in signs]
    f = [trip(1, -1, 1), trip(-1, 1, -1)]
    negs = [trip(-1, -1, -1), trip(-1, -1, 1), trip(1, -1, -1)]
    x1, x3 = 2, 1
    sl2 = FactorSpec("SL", 2)
    return dict(
        factors=(sl2, sl2, sl2),
        phi1=phi1, f_roots=f, neg_roots=negs,
        functional=vec(_sl2(x1) + _sl2(x1 + x3) + _sl2(x3)),
        w1=ReflectionGroupSpec("Sym", 2), s_param=2, pg_degrees=(4,),
        f1_torus_weights=f, family_valid=False,
        hyperplane="x_1 E_1 + (x_1 + x_3) E_2 + x_3 E_3, x_1 > x_3 > 0",
    )


def _build_g3() -> dict:
    short = [(0, 0), (1, 0), (-1, 0), (2, -1), (-2, 1), (-1, 1), (1, -1)]
    pair = lambda om, e: vec(list(om) + _sl2(e))  # noqa: E731
    phi1 = [pair(om, e) for e in (1, -1) for om in short]
    f = [pair((1, 0), -1), pair((-1, 0), 1)]
    negs = [pair(om, -1) for om in [(-1, 1), (2, -1), (0, 0), (1, -1), (-2, 1), (-1, 0)]]
    x1, x2 = 2, 3
    return dict(
        factors=(FactorSpec("G2"), FactorSpec("SL", 2)),
        phi1=phi1, f_roots=f, neg_roots=negs,
        functional=vec([x1, x2] + _sl2(x1)),
        w1=ReflectionGroupSpec("Sym", 2), s_param=2, pg_degrees=(4,),
        f1_torus_weights=f, family_valid=False,
        hyperplane="x_1 L_1 + x_2 L_2 + x_1 E, 2x_1 > x_2 > x_1 > 0",
    )


def _build_f4() -> dict:
    b3 = FactorSpec("SO_odd", 3)
    pair = lambda om, e: vec(list(b3.from_omega(om)) + _sl2(e))  # noqa: E731
    spin = [b3.from_omega(om) for om in
            [(0, 0, 1), (0, 1, -1), (1, -1, 1), (1, 0, -1), (-1, 0, 1), (-1, 1, -1), (0, -1, 1), (0, 0, -1)]]
    assert len(set(spin)) == 8 and all(abs(x) == Fraction(1, 2) for s in spin for x in s)
    phi1 = [vec(list(s) + _sl2(e)) for e in (1, -1) for s in spin]
    f = [pair((0, 0, 1), -1), pair((0, 0, -1), 1)]
    negs = [pair(om, -1) for om in
            [(0, 1, -1), (1, -1, 1), (1, 0, -1), (0, -1, 1), (-1, 1, -1), (-1, 0, 1), (0, 0, -1)]]
    x1, x2, x3 = 3, 4, 5
    # L_i is dual to omega_i, i.e. pairing with the simple coroot alpha_i^vee
    lin = [Fraction(0)] * 3
    for x, co in zip((x1, x2, x3), b3.simple_coroots):
        lin = [a + x * b for a, b in zip(lin, co)]
    return dict(
        factors=(b3, FactorSpec("SL", 2)),
        phi1=phi1, f_roots=f, neg_roots=negs,
        functional=tuple(lin) + vec(_sl2(x3)),
        w1=ReflectionGroupSpec("Sym", 2), s_param=2, pg_degrees=(4,),
        f1_torus_weights=f, family_valid=False,
        hyperplane="x_1 L_1 + x_2 L_2 + x_3 L_3 + x_3 E, 2x_1 > x_3 > x_2 > x_1 > 0",
    )


def _check_params(family: str, params: tuple[int, ...]) -> None:
    expected = {"gl": 2, "sl": 2, "psl": 2, "osp_even": 2, "osp_odd": 2, "q": 1, "psq": 1, "p": 1}
    if family not in FAMILIES:
        raise UnknownAlgebra(f"unknown family {family!r}")
    if len(params) != expected.get(family, 0):
        raise UnsupportedParams(f"{family} expects {expected.get(family, 0)} parameters, got {params}")
    if any(p < 1 for p in params):
        raise UnsupportedParams(f"{algebra_name(family, params) if params else family}: parameters must be positive")
    if family == "psl" and params[0] != params[1]:
        raise UnsupportedParams("psl(m|n) is only catalogued for m = n")
    if family == "psq" and params[0] < 2:
        raise UnsupportedParams("psq(n) needs n >= 2")
    if family == "p" and params[0] < 2:
        raise UnsupportedParams("p(n) needs n >= 2")
    if any(p > MAX_RANK for p in params):
        raise UnsupportedParams(f"{algebra_name(family, params)}: rank above desk scale ({MAX_RANK})")


def _raw_entry(family: str, params: tuple[int, ...]) -> dict:
    if family in ("gl", "sl", "psl"):
        return _build_gl(family, *params)
    if family in ("osp_even", "osp_odd"):
        return _build_osp(family == "osp_odd", *params)
    if family in ("q", "psq"):
        return _build_q(family, *params)
    if family == "p":
        return _build_p(*params)
    return {"D21": _build_d21, "G3": _build_g3, "F4": _build_f4}[family]()


def _assemble(family: str, params: tuple[int, ...], raw: dict, namespace: str = "builtin") -> SuperAlgebraSpec:
    factors = tuple(raw["factors"])

    def norm(v):
        # keep the given representative; SL classes are compared after normalization
        return vec(v)

    phi1 = tuple(norm(v) for v in raw["phi1"])
    f_roots = tuple(norm(v) for v in raw["f_roots"])
    neg_roots = tuple(norm(v) for v in raw["neg_roots"])
    pos = raw.get("pos_roots")
    pos_roots = _multiset_minus(phi1, f_roots, neg_roots) if pos is None else tuple(norm(v) for v in pos)
    return SuperAlgebraSpec(
        family=family, params=tuple(params), factors=factors,
        phi1=phi1, f_roots=f_roots, neg_roots=neg_roots, pos_roots=pos_roots,
        functional=vec(raw["functional"]),
        w1=raw["w1"], s_param=raw["s_param"],
        pg_degrees=None if raw["pg_degrees"] is None else tuple(raw["pg_degrees"]),
        f1_torus_weights=tuple(norm(v) for v in raw["f1_torus_weights"]),
        torus_relations=tuple(norm(v) for v in raw.get("torus_relations", ())),
        family_valid=raw.get("family_valid", True),
        hyperplane=raw.get("hyperplane", ""),
        namespace=namespace,
    )


_CACHE: dict[tuple[str, tuple[int, ...]], SuperAlgebraSpec] = {}


def catalog_lookup(family: str, params: Sequence[int] = ()) -> SuperAlgebraSpec:
    """Fully validated catalog entry."""
    params = tuple(int(p) for p in params)
    key = (family, params)
    if key in _CACHE:
        return _CACHE[key]
    _check_params(family, params)
    spec = _assemble(family, params, _raw_entry(family, params))
    if len(spec.pos_roots) > MAX_POS_ROOTS:
        raise UnsupportedParams(f"{spec.name}: {len(spec.pos_roots)} positive odd roots exceeds {MAX_POS_ROOTS}")
    validate(spec)
    _CACHE[key] = spec
    return spec


def lookup(name: str) -> SuperAlgebraSpec:
    return catalog_lookup(*parse_algebra(name))


# -- validation ----------------------------------------------------------------

def parabolic_from_functional(spec: SuperAlgebraSpec) -> tuple[tuple[Vec, ...], tuple[Vec, ...], tuple[Vec, ...]]:
    """(S0, S-, S+) of the odd roots by the sign of the functional."""
    zero, below, above = [], [], []
    for r in spec.phi1:
        v = spec.evaluate(r)
        (zero if v == 0 else below if v < 0 else above).append(r)
    return tuple(zero), tuple(below), tuple(above)


def check_partition_matches(spec: SuperAlgebraSpec) -> None:
    s0, sm, sp = parabolic_from_functional(spec)
    for label, got, listed in (("zero", s0, spec.f_roots), ("negative", sm, spec.neg_roots),
                               ("positive", sp, spec.pos_roots)):
        if Counter(got) != Counter(listed):
            extra = sorted((Counter(got) - Counter(listed)).elements())
            missing = sorted((Counter(listed) - Counter(got)).elements())
            raise PartitionMismatch(
                f"{spec.name}: {label} part disagrees with the functional "
                f"(functional-only {[render_root(spec, r) for r in extra]}, "
                f"listed-only {[render_root(spec, r) for r in missing]})")


def validate(spec: SuperAlgebraSpec) -> None:
    widths = spec.width
    for label, roots in (("phi1", spec.phi1), ("f_roots", spec.f_roots), ("neg_roots", spec.neg_roots),
                         ("pos_roots", spec.pos_roots), ("f1_torus_weights", spec.f1_torus_weights)):
        for r in roots:
            if len(r) != widths:
                raise PartitionInvariantViolated(f"{spec.name}: {label} entry has width {len(r)} != {widths}")
            for f, part in zip(spec.factors, spec.split(r)):
                if not f.is_integral(part):
                    raise PartitionInvariantViolated(f"{spec.name}: {label} entry is not integral for {f.name}")
    if len(spec.functional) != widths:
        raise PartitionInvariantViolated(f"{spec.name}: functional has the wrong width")
    if Counter(spec.phi1) != Counter(spec.f_roots) + Counter(spec.neg_roots) + Counter(spec.pos_roots):
        raise PartitionInvariantViolated(f"{spec.name}: f/neg/pos do not partition the odd roots")
    if spec.symmetric and Counter(spec.pos_roots) != Counter(neg(r) for r in spec.neg_roots):
        raise PartitionInvariantViolated(f"{spec.name}: positive roots are not the negatives of the negative roots")
    if sum(f.rank for f in spec.factors) > 2 * MAX_RANK:
        raise PartitionInvariantViolated(f"{spec.name}: rank above desk scale")
    if spec.pg_degrees is not None and any(d <= 0 for d in spec.pg_degrees):
        raise PartitionInvariantViolated(f"{spec.name}: generator degrees must be positive")
    check_partition_matches(spec)


# -- series ----------------------------------------------------------------------

def _projector(spec: SuperAlgebraSpec):
    """Map a weight to its class modulo the torus relations (exact Gram-Schmidt)."""
    basis: list[Vec] = []
    for r in spec.torus_relations:
        v = r
        for b in basis:
            v = add(v, tuple(-x * (sum(p * q for p, q in zip(r, b)) / sum(q * q for q in b)) for x in b))
        if any(v):
            basis.append(v)

    def proj(w: Vec) -> Vec:
        out = w
        for b in basis:
            c = sum(p * q for p, q in zip(out, b)) / sum(q * q for q in b)
            out = tuple(x - c * y for x, y in zip(out, b))
        return out

    return proj


def torus_invariant_hilbert(spec: SuperAlgebraSpec, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Hilbert series of the T0-invariants in the polynomial ring on f1^*.

    Dynamic programming over variables on integer-scaled weights. A partial
    monomial is dropped once the remaining degree budget cannot bring its
    weight back to zero (L1 bound).
    """
    if order > 40:
        raise ValueError("truncation order above 40 is not supported")
    proj = _projector(spec)
    fracs = [proj(spec.normalize(w)) for w in spec.f1_torus_weights]
    den = math.lcm(1, *(x.denominator for w in fracs for x in w))
    weights = [tuple(int(x * den) for x in w) for w in fracs]
    norms = [sum(abs(x) for x in w) for w in weights]
    reach = [max(norms[i:], default=0) for i in range(len(weights) + 1)]
    zero = (0,) * spec.width
    table: dict[tuple[int, ...], list[int]] = {zero: [1] + [0] * order}
    for i, w in enumerate(weights):
        cap = reach[i + 1]
        new: dict[tuple[int, ...], list[int]] = {}
        for base, counts in table.items():
            shifted = base
            for a in range(order + 1):
                dist = sum(abs(x) for x in shifted)
                need = 0 if dist == 0 else (-(-dist // cap) if cap else order + 1)
                if a + need <= order:
                    row = new.setdefault(shifted, [0] * (order + 1))
                    for d in range(order + 1 - a - need):
                        if counts[d]:
                            row[d + a] += counts[d]
                if not any(w):
                    if a == order:
                        break
                shifted = tuple(x + y for x, y in zip(shifted, w))
        table = new
    return TruncatedSeries(tuple(table.get(zero, [1] + [0] * order)), order)


def pb_series(spec: SuperAlgebraSpec, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    return torus_invariant_hilbert(spec, order)


def w1_series(spec: SuperAlgebraSpec) -> Poly:
    """p_{W1}(t^s), the reflection-group prediction (not used for p(n))."""
    return poly_substitute_power(poincare_poly(spec.w1), spec.s_param or 1)


def pn_closed_form(n: int, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """z(t) for p(n) from the displayed rational expressions."""
    l = n // 2
    num = Poly.one()
    for i in range(1, l if n % 2 == 0 else l + 1):
        num = num * (Poly.one() - Poly.monomial(4 * i))
    if n % 2 == 0:
        num = num * (Poly.one() - Poly.monomial(n)) * (Poly.one() + Poly.monomial(l))
    den = TruncatedSeries.from_poly(Poly((1, 0, -1)), order)
    out = TruncatedSeries.from_poly(num, order)
    for _ in range(l):
        out = series_div_exact(out, den)
    return out


def pg_series(spec: SuperAlgebraSpec, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    if spec.pg_degrees is not None:
        return series_from_generator_degrees(spec.pg_degrees, order)
    z = TruncatedSeries.from_poly(w1_series(spec), order)
    return series_div_exact(pb_series(spec, order), z)


def z_poly(spec: SuperAlgebraSpec, order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """pb / pg, checked against the reflection-group or p(n) closed form."""
    z = series_div_exact(pb_series(spec, order), pg_series(spec, order))
    if spec.family == "p":
        expected = pn_closed_form(spec.params[0], order)
    else:
        expected = TruncatedSeries.from_poly(w1_series(spec), order)
    if z != expected:
        raise IdentityViolation(f"{spec.name}: z = {z} but expected {expected}")
    return z


def z_at_one(spec: SuperAlgebraSpec, order: int = DEFAULT_ORDER) -> int:
    z = z_poly(spec, order)
    if any(z.coeffs[order - 3:]):
        raise IdentityViolation(f"{spec.name}: z is not a polynomial below degree {order - 3}")
    return z.as_poly()(1)


# -- embeddings -------------------------------------------------------------------

@dataclass(frozen=True)
class ParabolicQuotientSpec:
    parent: SuperAlgebraSpec
    quotient_roots: tuple[Vec, ...]
    label: str
    levi: Optional[SuperAlgebraSpec] = None

    @property
    def within_positive(self) -> bool:
        return not (Counter(self.quotient_roots) - Counter(self.parent.pos_roots))

    def outside_positive(self) -> list[Vec]:
        return sorted((Counter(self.quotient_roots) - Counter(self.parent.pos_roots)).elements())


def embedding_specs(spec: SuperAlgebraSpec) -> list[ParabolicQuotientSpec]:
    """Parabolics with a listed quotient root set (embeddings and the gl(n|n) parabolic)."""
    fam, out = spec.family, []
    if fam == "gl" or fam == "osp_even" or fam == "osp_odd":
        a, b = spec.params
        c = _Coords(a, b)
        norm = spec.normalize
        if fam == "gl" and a <= b - 1:
            roots = [c.comb(c.eps(i), c.dlt(b, -1)) for i in range(1, a + 1)]
            out.append(ParabolicQuotientSpec(spec, tuple(map(norm, roots)),
                                             f"{algebra_name('gl', (a, b - 1))} in {spec.name}",
                                             catalog_lookup("gl", (a, b - 1))))
        if fam == "osp_odd" and a <= b - 1:
            roots = [c.comb(c.eps(i, s), c.dlt(1)) for s in (-1, 1) for i in range(1, a + 1)]
            roots += [c.dlt(1)]
            out.append(ParabolicQuotientSpec(spec, tuple(map(norm, roots)),
                                             f"{algebra_name(fam, (a, b - 1))} in {spec.name}",
                                             catalog_lookup(fam, (a, b - 1))))
        if fam == "osp_odd" and b <= a - 1:
            roots = [c.comb(c.eps(1), c.dlt(i, -1)) for i in range(1, b + 1)]
            roots += [c.comb(c.eps(1), c.dlt(i)) for i in range(1, b + 1)]
            out.append(ParabolicQuotientSpec(spec, tuple(map(norm, roots)),
                                             f"{algebra_name(fam, (a - 1, b))} in {spec.name}",
                                             catalog_lookup(fam, (a - 1, b))))
        if fam == "osp_even" and a <= b - 1:
            roots = [c.comb(c.eps(i, s), c.dlt(1)) for s in (-1, 1) for i in range(1, a + 1)]
            out.append(ParabolicQuotientSpec(spec, tuple(map(norm, roots)),
                                             f"{algebra_name(fam, (a, b - 1))} in {spec.name}",
                                             catalog_lookup(fam, (a, b - 1))))
        if fam == "osp_even" and b <= a - 1 and a >= 2:
            roots = [c.comb(c.eps(1), c.dlt(i, s)) for s in (-1, 1) for i in range(1, b + 1)]
            out.append(ParabolicQuotientSpec(spec, tuple(map(norm, roots)),
                                             f"{algebra_name(fam, (a - 1, b))} in {spec.name}",
                                             catalog_lookup(fam, (a - 1, b))))
        if fam == "osp_even" and a == b:
            roots = [c.comb(c.eps(i), c.dlt(j)) for i in range(1, a + 1) for j in range(1, b + 1)]
            out.append(ParabolicQuotientSpec(spec, tuple(map(norm, roots)),
                                             f"gl({a}|{b})-parabolic of {spec.name}"))
        if fam == "osp_even" and a == b + 1:
            roots = [c.comb(c.eps(1), c.dlt(j, s)) for j in range(1, b + 1) for s in (1, -1)]
            out.append(ParabolicQuotientSpec(spec, tuple(map(norm, roots)),
                                             f"{algebra_name(fam, (b, b))}-parabolic of {spec.name}",
                                             catalog_lookup(fam, (b, b))))
    if not out:
        raise NoEmbeddingDefined(f"{spec.name} has no listed parabolic quotient")
    return out


# -- rendering ----------------------------------------------------------------------

def _lin(coeffs: Sequence[Fraction], labels: Sequence[str], tex: bool = False) -> str:
    parts = []
    for c, lab in zip(coeffs, labels):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else fmt_frac(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, f"{mag}{lab}"))
    if not parts:
        return "0"
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += sign + body
    return s


def _labels(spec: SuperAlgebraSpec, tex: bool) -> list[str]:
    eps, dl = (r"\epsilon_{%d}", r"\delta_{%d}") if tex else ("ε%d", "δ%d")
    out = [eps % (i + 1) for i in range(spec.factors[0].width)]
    if spec.family in ("gl", "sl", "psl", "osp_even", "osp_odd"):
        out += [dl % (j + 1) for j in range(spec.factors[1].width)]
    return out


def render_root(spec: SuperAlgebraSpec, v: Vec, tex: bool = False) -> str:
    fam = spec.family
    parts = spec.split(v)
    e = r"\epsilon" if tex else "ε"
    om = (lambda i: r"\omega_{%d}" % i) if tex else (lambda i: f"ω{i}")
    if fam == "D21":
        return "(" + ", ".join(_lin([p[0]], [e]) for p in parts) + ")"
    if fam == "G3":
        return f"({_lin(parts[0], [om(1), om(2)])}, {_lin([parts[1][0]], [e])})"
    if fam == "F4":
        omega = spec.factors[0].to_omega(parts[0])
        return f"({_lin(omega, [om(1), om(2), om(3)])}, {_lin([parts[1][0]], [e])})"
    if fam == "p":
        return _lin(v, _labels(spec, tex))
    return _lin(v, _labels(spec, tex))


def render_roots(spec: SuperAlgebraSpec, roots: Sequence[Vec], tex: bool = False) -> str:
    if not roots:
        return r"\emptyset" if tex else "∅"
    body = ", ".join(render_root(spec, r, tex) for r in roots)
    return (r"\{" + body + r"\}") if tex else "{" + body + "}"


# -- serialization -------------------------------------------------------------------

def weight_to_json(spec_factors: Sequence[FactorSpec], v: Vec) -> dict:
    out, k = [], 0
    for f in spec_factors:
        out.append({"basis": f.canonical_basis, "coords": [fmt_frac(x) for x in v[k:k + f.width]]})
        k += f.width
    return {"factors": out}


def weight_from_json(spec_factors: Sequence[FactorSpec], obj: dict) -> Vec:
    slices = obj["factors"]
    if len(slices) != len(spec_factors):
        raise ValueError("weight has the wrong number of factor slices")
    out: list[Fraction] = []
    for f, s in zip(spec_factors, slices):
        out.extend(f.coerce(s["coords"], s.get("basis", f.canonical_basis)))
    return tuple(out)


def spec_to_json(spec: SuperAlgebraSpec) -> dict:
    w = lambda roots: [weight_to_json(spec.factors, r) for r in roots]  # noqa: E731
    return {
        "family": spec.family,
        "params": list(spec.params),
        "factors": [f.name for f in spec.factors],
        "phi1": w(spec.phi1),
        "f_roots": w(spec.f_roots),
        "neg_roots": w(spec.neg_roots),
        "pos_roots": w(spec.pos_roots),
        "functional": [fmt_frac(x) for x in spec.functional],
        "hyperplane": spec.hyperplane,
        "w1": spec.w1.name,
        "s_param": spec.s_param,
        "pg_degrees": "derived" if spec.pg_degrees is None else list(spec.pg_degrees),
        "f1_torus_weights": w(spec.f1_torus_weights),
        "torus_relations": w(spec.torus_relations),
        "family_valid": spec.family_valid,
    }


def spec_from_json(obj: dict, namespace: str = "user") -> SuperAlgebraSpec:
    """Rebuild and re-validate an entry; raises InvariantViolation subclasses."""
    try:
        factors = tuple(FactorSpec.parse(s) for s in obj["factors"])
        w = lambda key: [weight_from_json(factors, x) for x in obj.get(key, [])]  # noqa: E731
        pg = obj["pg_degrees"]
        raw = dict(
            factors=factors,
            phi1=w("phi1"), f_roots=w("f_roots"), neg_roots=w("neg_roots"),
            pos_roots=w("pos_roots") if "pos_roots" in obj else None,
            functional=[Fraction(x) for x in obj["functional"]],
            w1=ReflectionGroupSpec.parse(obj["w1"]),
            s_param=obj.get("s_param"),
            pg_degrees=None if pg == "derived" else tuple(int(d) for d in pg),
            f1_torus_weights=w("f1_torus_weights"),
            torus_relations=w("torus_relations"),
            family_valid=bool(obj.get("family_valid", True)),
            hyperplane=obj.get("hyperplane", ""),
        )
        family, params = obj["family"], tuple(int(p) for p in obj.get("params", []))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, InvariantViolation):
            raise
        raise InvariantViolation(f"malformed catalog entry: {exc}") from exc
    spec = _assemble(family, params, raw, namespace)
    validate(spec)
    return spec


def dumps_spec(spec: SuperAlgebraSpec) -> str:
    return json.dumps(spec_to_json(spec), indent=2, ensure_ascii=False) + "\n"


# -- default grid -------------------------------------------------------------------

def builtin_names() -> list[str]:
    """Entries registered at startup (desk scale)."""
    names = [f"q({n})" for n in range(1, 6)] + [f"psq({n})" for n in range(2, 5)]
    names += [f"gl({m}|{n})" for m, n in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2)]]
    names += [f"sl({m}|{n})" for m, n in [(2, 1), (2, 2), (3, 3)]] + ["psl(2|2)", "psl(3|3)"]
    names += [f"osp({2 * m + 1}|{2 * n})" for m, n in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 2)]]
    names += [f"osp({2 * m}|{2 * n})" for m, n in [(1, 1), (2, 1), (1, 2), (2, 2), (3, 1), (3, 2), (2, 3), (3, 3)]]
    names += [f"p({n})" for n in range(2, 7)]
    names += ["D(2,1,a)", "G(3)", "F(4)"]
    return names


def builtin_catalog() -> list[SuperAlgebraSpec]:
    return [lookup(n) for n in builtin_names()]
