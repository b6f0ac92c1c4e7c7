"""Odd dot action of W1 and the root sets Phi(w).

Supported: gl/sl/psl(n|n) (on the gl(n|n) model), osp(2n+1|2n) and q/psq(n).
W1 acts diagonally on the epsilon and delta blocks by signed permutations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .rootsys import SignedPerm, Vec, _act, vec
from .superalg import SuperAlgebraSpec, UnsupportedParams, add, neg, render_root

Word = tuple[int, ...]
ENUMERATION_BOUND = 50_000


class PropositionViolated(AssertionError):
    """A part of the Phi(w) proposition failed; `payload` holds the counterexample."""

    def __init__(self, part: str, payload: dict):
        super().__init__(f"part ({part}) fails: {payload}")
        self.part = part
        self.payload = payload


@dataclass(frozen=True)
class Generator:
    index: int  # j in s_j, 1-based
    perm: SignedPerm


@dataclass(frozen=True)
class OddDotContext:
    spec: SuperAlgebraSpec
    block: int  # n, the rank of each diagonal block
    blocks: tuple[int, ...]  # coordinate offsets of the blocks
    rho1: Vec
    rho0: Vec
    generators: tuple[Generator, ...]
    beta: tuple[Vec, ...]
    gamma: tuple[Vec, ...]  # empty for q(n): one distinguished root per s_j
    multiplier: int  # |Phi(w)| = multiplier * l(w)

    @property
    def rho_equal(self) -> bool:
        return self.rho1 == self.rho0


def _half_sum(roots: Sequence[Vec], width: int) -> Vec:
    acc = tuple(Fraction(0) for _ in range(width))
    for r in roots:
        acc = add(acc, r)
    return tuple(x / 2 for x in acc)


def _swap(n: int, j: int) -> SignedPerm:
    w = list(range(1, n + 1))
    w[j - 1], w[j] = w[j], w[j - 1]
    return tuple(w)


def _flip(n: int, j: int) -> SignedPerm:
    w = list(range(1, n + 1))
    w[j - 1] = -w[j - 1]
    return tuple(w)


def _compose(a: SignedPerm, b: SignedPerm) -> SignedPerm:
    """a after b."""
    out = []
    for x in b:
        y = a[abs(x) - 1]
        out.append(y if x > 0 else -y)
    return tuple(out)


def _unit(width: int, *terms: tuple[int, int]) -> Vec:
    v = [Fraction(0)] * width
    for pos, c in terms:
        v[pos] += c
    return tuple(v)


def make_context(spec: SuperAlgebraSpec) -> OddDotContext:
    fam = spec.family
    width = spec.width
    if fam in ("gl", "sl", "psl", "osp_odd"):
        m, n = spec.params
        if m != n:
            raise UnsupportedParams(f"{spec.name}: the odd dot action is tabulated only for equal ranks")
        e = lambda i: i - 1  # noqa: E731
        d = lambda j: n + j - 1  # noqa: E731
        gens = [Generator(j, _swap(n, j)) for j in range(1, n)]
        beta = [_unit(width, (e(j), 1), (d(j + 1), -1)) for j in range(1, n)]
        gamma = [_unit(width, (d(j), 1), (e(j + 1), -1)) for j in range(1, n)]
        if fam == "osp_odd":
            gens.append(Generator(n, _flip(n, n)))
            beta.append(_unit(width, (d(n), 1)))
            gamma.append(_unit(width, (e(n), 1), (d(n), 1)))
        blocks, mult = (0, n), 2
    elif fam in ("q", "psq"):
        n = spec.params[0]
        gens = [Generator(j, _swap(n, j)) for j in range(1, n)]
        beta = [_unit(width, (j - 1, 1), (j, -1)) for j in range(1, n)]
        gamma = []
        blocks, mult = (0,), 1
    else:
        raise UnsupportedParams(f"{spec.name}: no distinguished odd roots are defined for this family")
    rho0 = _half_sum([r for f, o in zip(spec.factors, spec.offsets) for r in _embed(f.positive_roots, o, width)], width)
    ctx = OddDotContext(
        spec=spec, block=n, blocks=blocks,
        rho1=_half_sum(spec.pos_roots, width), rho0=rho0,
        generators=tuple(gens), beta=tuple(beta), gamma=tuple(gamma), multiplier=mult,
    )
    _check_distinguished(ctx)
    return ctx


def _embed(roots: Sequence[Vec], offset: int, width: int) -> list[Vec]:
    out = []
    for r in roots:
        v = [Fraction(0)] * width
        v[offset:offset + len(r)] = r
        out.append(tuple(v))
    return out


def act(ctx: OddDotContext, perm: SignedPerm, v: Sequence[Fraction]) -> Vec:
    out = list(vec(v))
    n = ctx.block
    for o in ctx.blocks:
        out[o:o + n] = _act(perm, out[o:o + n])
    return tuple(Fraction(x) for x in out)


def word_perm(ctx: OddDotContext, word: Word) -> SignedPerm:
    by_index = {g.index: g.perm for g in ctx.generators}
    w = tuple(range(1, ctx.block + 1))
    for j in word:
        w = _compose(w, by_index[j])
    return w


def _check_distinguished(ctx: OddDotContext) -> None:
    """s_j negates the pair {beta_j, gamma_j} as a set and keeps the rest of Phi1^+ positive."""
    pos = set(ctx.spec.pos_roots)
    for g in ctx.generators:
        special = _special(ctx, g.index)
        for r in special:
            if r not in pos:
                raise PropositionViolated("setup", {"root": r, "reason": "distinguished root not positive"})
        if {act(ctx, g.perm, r) for r in special} != {neg(r) for r in special}:
            raise PropositionViolated("setup", {"generator": g.index, "reason": "s_j does not negate {beta_j, gamma_j}"})
        for r in pos - set(special):
            if act(ctx, g.perm, r) not in pos:
                raise PropositionViolated("setup", {"generator": g.index, "root": r,
                                                    "reason": "s_j sends a non-distinguished positive root out"})


def _special(ctx: OddDotContext, j: int) -> list[Vec]:
    return [ctx.beta[j - 1]] + ([ctx.gamma[j - 1]] if ctx.gamma else [])


def elementwise_negated(ctx: OddDotContext) -> dict[int, bool]:
    """Per generator: whether s_j(beta_j) = -beta_j and s_j(gamma_j) = -gamma_j hold root by root.

    For a diagonal transposition s_j swaps beta_j with -gamma_j instead.
    """
    return {g.index: all(act(ctx, g.perm, r) == neg(r) for r in _special(ctx, g.index)) for g in ctx.generators}


def odd_dot(ctx: OddDotContext, word: Word, lam: Sequence[Fraction]) -> Vec:
    """w . lam = w(lam + rho1) - rho1."""
    w = word_perm(ctx, word)
    shifted = add(vec(lam), ctx.rho1)
    return add(act(ctx, w, shifted), neg(ctx.rho1))


@dataclass(frozen=True)
class PhiW:
    word: Word
    roots: frozenset

    def sorted_roots(self, spec: SuperAlgebraSpec) -> list[Vec]:
        order = {r: i for i, r in enumerate(spec.pos_roots)}
        return sorted(self.roots, key=order.__getitem__)


def phi_of_w(ctx: OddDotContext, word: Word) -> PhiW:
    """w(Phi1^-) meets Phi1^+, computed from the definition."""
    w = word_perm(ctx, word)
    negs = set(ctx.spec.neg_roots)
    images = {act(ctx, w, r) for r in negs}
    return PhiW(word, frozenset(r for r in ctx.spec.pos_roots if r in images))


def phi_from_reduced_word(ctx: OddDotContext, word: Word) -> frozenset:
    """{beta_{j1}, s_{j1} beta_{j2}, ...} together with the gamma analogue."""
    out = set()
    prefix: Word = ()
    for j in word:
        p = word_perm(ctx, prefix)
        out.add(act(ctx, p, ctx.beta[j - 1]))
        if ctx.gamma:
            out.add(act(ctx, p, ctx.gamma[j - 1]))
        prefix = prefix + (j,)
    return frozenset(out)


def enumerate_w1(ctx: OddDotContext, bound: int = ENUMERATION_BOUND) -> list[tuple[Word, int]]:
    """Breadth-first: each element once, with a reduced word and its length."""
    start = tuple(range(1, ctx.block + 1))
    seen = {start: ()}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for g in ctx.generators:
                u = _compose(w, g.perm)
                if u not in seen:
                    seen[u] = seen[w] + (g.index,)
                    nxt.append(u)
                    if len(seen) > bound:
                        raise UnsupportedParams(f"W1 exceeds {bound} elements")
        frontier = nxt
    return sorted(((word, len(word)) for word in seen.values()), key=lambda t: (t[1], t[0]))


def rho_of(roots, width: int) -> Vec:
    acc = tuple(Fraction(0) for _ in range(width))
    for r in roots:
        acc = add(acc, r)
    return acc


def _subset_index(ctx: OddDotContext) -> dict[Vec, list[frozenset]]:
    pos = ctx.spec.pos_roots
    width = ctx.spec.width
    table: dict[Vec, list[frozenset]] = {}
    for k in range(len(pos) + 1):
        for idx in itertools.combinations(range(len(pos)), k):
            j = frozenset(pos[i] for i in idx)
            table.setdefault(neg(rho_of(j, width)), []).append(j)
    return table


@dataclass
class PhiWRow:
    word: Word
    length: int
    roots: list[Vec]
    dot0: Vec


@dataclass
class PropositionReport:
    algebra: str
    rows: list[PhiWRow] = field(default_factory=list)
    checked: tuple[str, ...] = ("a", "b", "c", "d")

    @property
    def order(self) -> int:
        return len(self.rows)


def verify_phiw_proposition(ctx: OddDotContext, bound: Optional[int] = None) -> PropositionReport:
    """Check parts (a)-(d) for every element of W1; raise on the first failure."""
    elements = enumerate_w1(ctx, bound or ENUMERATION_BOUND)
    width = ctx.spec.width
    index = _subset_index(ctx)
    zero = tuple(Fraction(0) for _ in range(width))
    report = PropositionReport(ctx.spec.name)
    for word, length in elements:
        phi = phi_of_w(ctx, word)
        payload = {"word": word, "length": length, "phi": sorted(phi.roots)}
        if len(phi.roots) != ctx.multiplier * length:
            raise PropositionViolated("a", payload)
        dot0 = odd_dot(ctx, word, zero)
        if dot0 != neg(rho_of(phi.roots, width)):
            raise PropositionViolated("b", dict(payload, dot0=dot0))
        if phi_from_reduced_word(ctx, word) != phi.roots:
            raise PropositionViolated("c", dict(payload, formula=sorted(phi_from_reduced_word(ctx, word))))
        solutions = index.get(dot0, [])
        if solutions != [phi.roots]:
            raise PropositionViolated("d", dict(payload, solutions=[sorted(s) for s in solutions]))
        report.rows.append(PhiWRow(word, length, phi.sorted_roots(ctx.spec), dot0))
    return report


def check_dot_closure(ctx: OddDotContext) -> int:
    """w . (-rho(J)) is again some -rho(J1); returns the number of (w, J) pairs checked."""
    index = _subset_index(ctx)
    count = 0
    for word, _ in enumerate_w1(ctx):
        for weight in index:
            image = odd_dot(ctx, word, weight)
            if image not in index:
                raise PropositionViolated("closure", {"word": word, "weight": weight, "image": image})
            count += 1
    return count


def format_word(word: Word) -> str:
    return "id" if not word else "".join(f"s{j}" for j in word)


def render_report(ctx: OddDotContext, report: PropositionReport) -> str:
    from .rootsys import fmt_vec

    lines = ["| w | l(w) | Phi(w) | w.0 |", "|---|---|---|---|"]
    for row in report.rows:
        roots = "{" + ", ".join(render_root(ctx.spec, r) for r in row.roots) + "}" if row.roots else "∅"
        lines.append(f"| {format_word(row.word)} | {row.length} | {roots} | {fmt_vec(row.dot0)} |")
    lines.append("")
    lines.append(f"{report.algebra}: parts ({', '.join(report.checked)}) hold for all {report.order} elements of W1")
    return "\n".join(lines)
