"""Bott-Borel-Weil weight census over subsets of positive odd roots.

For each index subset J of the enumerated roots the weight -rho(J) is run
through BBW factor by factor.  Pairings with coroots are linear in the
weight, so the census works on subset sums of (doubled, integral) pairing
vectors rather than on weights: a table over the low index bits plus one
offset row per value of the high bits.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .rootsys import Regular, Singular, Vec, bbw_line, fmt_vec
from .series import Poly, poly_eval_signed, poly_mul
from .superalg import MAX_POS_ROOTS, ParabolicQuotientSpec, SuperAlgebraSpec

LOW_BITS = 15


class TooManySubsets(ValueError):
    pass


class FactorizationViolated(AssertionError):
    pass


@dataclass(frozen=True)
class Contribution:
    subset_indices: tuple[int, ...]
    lambda_degree: int
    coh_degree: int
    dominant: tuple[Vec, ...]
    dim: int
    trivial: bool

    def to_json(self) -> dict:
        return {"J": list(self.subset_indices), "n": self.lambda_degree, "j": self.coh_degree,
                "dim": self.dim, "trivial": self.trivial}


@dataclass
class CensusResult:
    algebra: str
    spec: SuperAlgebraSpec
    roots: tuple[Vec, ...]
    poincare: Poly
    family_valid: bool
    nontrivial_found: bool
    euler_per_lambda_degree: tuple[int, ...]
    parity_ledger: dict[int, frozenset[int]]
    _masks: np.ndarray = field(repr=False, default=None)
    _lengths: np.ndarray = field(repr=False, default=None)
    _dims: np.ndarray = field(repr=False, default=None)
    _trivial: np.ndarray = field(repr=False, default=None)

    @property
    def euler_total(self) -> int:
        return sum(self.euler_per_lambda_degree)

    @property
    def regular_count(self) -> int:
        return 0 if self._masks is None else int(self._masks.size)

    @property
    def contributions(self) -> list[Contribution]:
        """Non-singular subsets in lexicographic order of their index lists."""
        k = len(self.roots)
        out = []
        for mask, length, dim, triv in zip(self._masks.tolist(), self._lengths.tolist(),
                                           self._dims.tolist(), self._trivial.tolist()):
            idx = tuple(i for i in range(k) if mask >> i & 1)
            out.append(Contribution(idx, len(idx), int(length), self._dominant(idx), int(dim), bool(triv)))
        out.sort(key=lambda c: c.subset_indices)
        return out

    def _dominant(self, idx: Sequence[int]) -> tuple[Vec, ...]:
        mu = subset_weight(self.spec, self.roots, idx)
        out = []
        for f, part in zip(self.spec.factors, self.spec.split(mu)):
            res = bbw_line(f, part)
            assert isinstance(res, Regular)
            out.append(res.dominant)
        return tuple(out)

    def to_json(self, ledger: bool = False) -> dict:
        obj = {
            "algebra": self.algebra,
            "poincare": self.poincare.to_json(),
            "family_valid": self.family_valid,
            "nontrivial_found": self.nontrivial_found,
            "euler": list(self.euler_per_lambda_degree),
        }
        if ledger:
            obj["contributions"] = [c.to_json() for c in self.contributions]
        return obj


def subset_weight(spec: SuperAlgebraSpec, roots: Sequence[Vec], idx: Sequence[int]) -> Vec:
    """-rho(J) = minus the sum of the chosen roots."""
    acc = tuple(Fraction(0) for _ in range(spec.width))
    for i in idx:
        acc = tuple(a - b for a, b in zip(acc, roots[i]))
    return acc


# -- pairing tables ---------------------------------------------------------------

@dataclass(frozen=True)
class _Columns:
    coroots: np.ndarray   # (width, C) doubled coroot functionals
    central: np.ndarray   # (width, Z)
    rho2: np.ndarray      # (C,) doubled rho pairings, per column
    rho_total: int
    factor_of: tuple[int, ...]


def _columns(spec: SuperAlgebraSpec) -> _Columns:
    w = spec.width
    cols, cent, rho2, owner = [], [], [], []
    for fi, (f, off) in enumerate(zip(spec.factors, spec.offsets)):
        for co in f.positive_coroots:
            full = [Fraction(0)] * w
            full[off:off + f.width] = co
            cols.append(full)
            rho2.append(2 * f.pair(f.rho, co))
            owner.append(fi)
        if f.kind == "GL":
            full = [Fraction(0)] * w
            full[off:off + f.width] = [Fraction(1)] * f.width
            cent.append(full)
        elif f.kind == "SO_even" and f.n == 1:
            full = [Fraction(0)] * w
            full[off] = Fraction(1)
            cent.append(full)
    to_int = lambda rows: np.array([[int(x) for x in r] for r in rows], dtype=np.int64).reshape(len(rows), w).T  # noqa: E731
    assert all(x.denominator == 1 for r in cols + cent for x in r)
    assert all(x.denominator == 1 for x in rho2)
    return _Columns(to_int(cols), to_int(cent), np.array([int(x) for x in rho2], dtype=np.int64),
                    int(sum(rho2)), tuple(owner))


def _root_matrix(spec: SuperAlgebraSpec, roots: Sequence[Vec]) -> np.ndarray:
    """Rows 2*(-alpha) as integers."""
    rows = []
    for r in roots:
        rows.append([int(-2 * x) for x in r])
        if any((2 * x).denominator != 1 for x in r):
            raise ValueError(f"{spec.name}: root {fmt_vec(r)} is not half-integral")
    return np.array(rows, dtype=np.int64).reshape(len(roots), spec.width)


def _subset_sums(rows: np.ndarray) -> np.ndarray:
    """All 2^k subset sums, index = bitmask."""
    out = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for r in rows:
        out = np.concatenate([out, out + r], axis=0)
    return out


def _popcounts(k: int) -> np.ndarray:
    out = np.zeros(1, dtype=np.int64)
    for _ in range(k):
        out = np.concatenate([out, out + 1])
    return out


def _dim_from_abs_pairings(spec: SuperAlgebraSpec, cols: _Columns, row: Sequence[int]) -> int:
    num, den = 1, 1
    for a, r in zip(row, cols.rho2.tolist()):
        num *= int(a)
        den *= int(r)
    assert num % den == 0
    return num // den


@dataclass
class _Partial:
    hist: np.ndarray
    nontrivial: bool
    euler: np.ndarray
    parity: set
    masks: list
    lengths: list
    dims: list
    trivial: list


def _run_chunk(h_values, low_pair, low_cent, low_pop, high_pair, high_cent, high_pop,
               cols: _Columns, spec, k, low_bits, max_len) -> _Partial:
    hist = np.zeros(max_len + 1, dtype=np.int64)
    euler = np.zeros(k + 1, dtype=object)
    parity: set = set()
    masks, lengths, dims, trivial = [], [], [], []
    nontrivial = False
    base_idx = np.arange(low_pair.shape[0], dtype=np.int64)
    dim_cache: dict[bytes, int] = {}
    for h in h_values:
        P = low_pair + high_pair[h]
        regular = np.all(P != 0, axis=1) if P.shape[1] else np.ones(P.shape[0], dtype=bool)
        if not regular.any():
            continue
        P = P[regular]
        cent = (low_cent + high_cent[h])[regular]
        pop = low_pop[regular] + high_pop[h]
        length = (P < 0).sum(axis=1)
        absP = np.abs(P)
        triv = (absP.sum(axis=1) == cols.rho_total)
        if cent.shape[1]:
            triv &= np.all(cent == 0, axis=1)
        dim = np.ones(P.shape[0], dtype=object)
        nt = np.nonzero(~triv)[0]
        if nt.size:
            nontrivial = True
            for i in nt.tolist():
                key = absP[i].tobytes()
                if key not in dim_cache:
                    dim_cache[key] = _dim_from_abs_pairings(spec, cols, absP[i].tolist())
                dim[i] = dim_cache[key]
        hist += np.bincount(length[triv], minlength=max_len + 1)[: max_len + 1]
        signs = np.where(length % 2 == 0, 1, -1).astype(object)
        np.add.at(euler, pop, signs * dim)
        for j, n in set(zip(length[triv].tolist(), pop[triv].tolist())):
            parity.add((j, n))
        masks.append(base_idx[regular] + (int(h) << low_bits))
        lengths.append(length.astype(np.int16))
        dims.append(dim)
        trivial.append(triv)
    return _Partial(hist, nontrivial, euler, parity, masks, lengths, dims, trivial)


def run_census(spec: SuperAlgebraSpec, roots: Sequence[Vec], workers: int = 1,
               family_valid: Optional[bool] = None, label: Optional[str] = None) -> CensusResult:
    k = len(roots)
    if k > MAX_POS_ROOTS:
        raise TooManySubsets(f"{spec.name}: 2^{k} subsets exceeds the desk-scale bound 2^{MAX_POS_ROOTS}")
    cols = _columns(spec)
    R = _root_matrix(spec, roots)
    pair_rows = R @ cols.coroots
    cent_rows = R @ cols.central
    low_bits = min(k, LOW_BITS)
    high_bits = k - low_bits
    low_pair = _subset_sums(pair_rows[:low_bits]) + cols.rho2
    low_cent = _subset_sums(cent_rows[:low_bits])
    low_pop = _popcounts(low_bits)
    high_pair = _subset_sums(pair_rows[low_bits:])
    high_cent = _subset_sums(cent_rows[low_bits:])
    high_pop = _popcounts(high_bits)
    max_len = len(cols.rho2)
    hs = list(range(1 << high_bits))
    workers = max(1, min(workers, len(hs)))
    chunks = [hs[i::workers] for i in range(workers)]
    args = (low_pair, low_cent, low_pop, high_pair, high_cent, high_pop, cols, spec, k, low_bits, max_len)
    if workers == 1:
        parts = [_run_chunk(chunks[0], *args)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda c: _run_chunk(c, *args), chunks))
    hist = sum((p.hist for p in parts), np.zeros(max_len + 1, dtype=np.int64))
    euler = [0] * (k + 1)
    for p in parts:
        for n in range(k + 1):
            euler[n] += int(p.euler[n])
    parity: dict[int, set] = {}
    for p in parts:
        for j, n in p.parity:
            parity.setdefault(int(j), set()).add(int(n))
    cat = lambda xs, dt: np.concatenate(xs).astype(dt) if xs else np.zeros(0, dtype=dt)  # noqa: E731
    masks = cat([m for p in parts for m in p.masks], np.int64)
    order = np.argsort(masks, kind="stable")
    return CensusResult(
        algebra=label or spec.name,
        spec=spec,
        roots=tuple(roots),
        poincare=Poly(tuple(int(x) for x in hist)),
        family_valid=spec.family_valid if family_valid is None else family_valid,
        nontrivial_found=any(p.nontrivial for p in parts),
        euler_per_lambda_degree=tuple(euler),
        parity_ledger={j: frozenset(v) for j, v in sorted(parity.items())},
        _masks=masks[order],
        _lengths=cat([x for p in parts for x in p.lengths], np.int16)[order],
        _dims=cat([x for p in parts for x in p.dims], object)[order],
        _trivial=cat([x for p in parts for x in p.trivial], bool)[order],
    )


def census(spec: SuperAlgebraSpec, workers: int = 1) -> CensusResult:
    """Census over all index subsets of the positive odd roots."""
    return run_census(spec, spec.pos_roots, workers)


def census_parabolic(pq: ParabolicQuotientSpec, workers: int = 1) -> CensusResult:
    return run_census(pq.parent, pq.quotient_roots, workers, label=pq.label)


def census_reference(spec: SuperAlgebraSpec, roots: Optional[Sequence[Vec]] = None) -> dict:
    """Slow exact census with bbw_line on every subset (test oracle)."""
    roots = spec.pos_roots if roots is None else roots
    k = len(roots)
    hist: dict[int, int] = {}
    euler = [0] * (k + 1)
    nontrivial = False
    regular = []
    for size in range(k + 1):
        for idx in itertools.combinations(range(k), size):
            mu = subset_weight(spec, roots, idx)
            outs = [bbw_line(f, part) for f, part in zip(spec.factors, spec.split(mu))]
            if any(isinstance(o, Singular) for o in outs):
                continue
            j = sum(o.length for o in outs)
            dim = 1
            for o in outs:
                dim *= o.dim
            triv = all(o.trivial for o in outs)
            regular.append((idx, j, dim, triv))
            euler[size] += (-1) ** j * dim
            if triv:
                hist[j] = hist.get(j, 0) + 1
            else:
                nontrivial = True
    top = max(hist) if hist else -1
    return {
        "poincare": Poly(tuple(hist.get(d, 0) for d in range(top + 1))),
        "euler": tuple(euler),
        "nontrivial_found": nontrivial,
        "regular": sorted(regular),
    }


def euler_characteristics(spec: SuperAlgebraSpec, workers: int = 1) -> tuple[int, ...]:
    return census(spec, workers).euler_per_lambda_degree


def parity_check_q(spec: SuperAlgebraSpec, result: CensusResult) -> bool:
    """Each cohomological degree fed by exactly one exterior degree (q/psq only)."""
    if spec.family not in ("q", "psq"):
        return True
    return all(len(ns) == 1 for ns in result.parity_ledger.values())


@dataclass(frozen=True)
class FactorizationReport:
    total: Poly
    upper: Poly
    lower: Poly
    odd_vanish: bool

    @property
    def holds(self) -> bool:
        return self.odd_vanish and self.total == poly_mul(self.upper, self.lower)


def factorization_check(total: Poly, upper: Poly, lower: Poly) -> FactorizationReport:
    """p_{G,B} = p_{G,P} * p_{P,B}, with both factors concentrated in even degrees."""
    odd = all(c == 0 for p in (upper, lower) for c in p.coeffs[1::2])
    rep = FactorizationReport(total, upper, lower, odd)
    if not rep.holds:
        raise FactorizationViolated(f"{total} != ({upper}) * ({lower}) or odd terms present")
    return rep


def euler_matches(result: CensusResult) -> bool:
    return poly_eval_signed(result.poincare) == result.euler_total
