"""Integer polynomials and truncated power series in one variable t."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_ORDER = 24


class NonUnitDenominator(ArithmeticError):
    pass


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class Poly:
    """Polynomial with integer coefficients, constant term first.

    The zero polynomial has an empty coefficient tuple.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "Poly":
        return cls((0,) * degree + (coeff,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __add__(self, other: "Poly") -> "Poly":
        return poly_add(self, other)

    def __sub__(self, other: "Poly") -> "Poly":
        return poly_add(self, Poly(tuple(-c for c in other.coeffs)))

    def __mul__(self, other: "Poly") -> "Poly":
        return poly_mul(self, other)

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __str__(self) -> str:
        return render_poly(self)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: dict) -> "Poly":
        return cls(tuple(obj["coeffs"]))


def poly_add(a: Poly, b: Poly) -> Poly:
    n = max(len(a.coeffs), len(b.coeffs))
    return Poly(tuple(a[k] + b[k] for k in range(n)))


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a.coeffs or not b.coeffs:
        return Poly()
    out = [0] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        if x:
            for j, y in enumerate(b.coeffs):
                out[i + j] += x * y
    return Poly(tuple(out))


def poly_prod(polys: Iterable[Poly]) -> Poly:
    acc = Poly.one()
    for p in polys:
        acc = acc * p
    return acc


def poly_substitute_power(p: Poly, s: int) -> Poly:
    """Return p(t^s)."""
    if s < 1:
        raise ValueError("s must be a positive integer")
    out = [0] * (s * max(p.degree, 0) + 1)
    for k, c in enumerate(p.coeffs):
        out[s * k] = c
    return Poly(tuple(out))


def poly_eval_signed(p: Poly) -> int:
    return p(-1)


def q_integer(e: int) -> Poly:
    """1 + t + ... + t^e."""
    return Poly((1,) * (e + 1))


def render_poly(p: Poly, var: str = "t", tex: bool = False) -> str:
    """Plain `1 + 2t^2`; with `tex` the exponents are braced."""
    if not p.coeffs:
        return "0"
    terms = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        if k == 0:
            body = str(abs(c))
        else:
            mono = var if k == 1 else (f"{var}^{{{k}}}" if tex else f"{var}^{k}")
            body = mono if abs(c) == 1 else f"{abs(c)}{mono}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(("+ " if c > 0 else "- ") + body)
    return " ".join(terms)


def parse_poly(text: str, var: str = "t") -> Poly:
    """Inverse of render_poly for the same textual shape."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return Poly()
    s = s.replace("-", "+-")
    out: dict[int, int] = {}
    for term in filter(None, s.split("+")):
        sign = -1 if term.startswith("-") else 1
        term = term.lstrip("-")
        if var in term:
            head, _, tail = term.partition(var)
            c = int(head) if head else 1
            k = int(tail[1:]) if tail.startswith("^") else 1
        else:
            c, k = int(term), 0
        out[k] = out.get(k, 0) + sign * c
    top = max(out) if out else -1
    return Poly(tuple(out.get(k, 0) for k in range(top + 1)))


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series known in degrees 0..order."""

    coeffs: tuple[int, ...]
    order: int = DEFAULT_ORDER

    def __post_init__(self):
        c = tuple(int(x) for x in self.coeffs[: self.order + 1])
        c = c + (0,) * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def from_poly(cls, p: Poly, order: int = DEFAULT_ORDER) -> "TruncatedSeries":
        return cls(p.coeffs, order)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k <= self.order else 0

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_div_exact(self, other)

    def truncate(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs, min(order, self.order))

    def as_poly(self) -> Poly:
        return Poly(self.coeffs)

    def is_polynomial(self, slack: int = 0) -> bool:
        """True when the top `slack`+1 coefficients vanish (a heuristic for exactness)."""
        return all(c == 0 for c in self.coeffs[self.order - slack:])

    def __str__(self) -> str:
        return f"{render_poly(self.as_poly())} + O(t^{self.order + 1})"


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order)
    out = [0] * (n + 1)
    for i in range(n + 1):
        if a.coeffs[i]:
            for j in range(n + 1 - i):
                out[i + j] += a.coeffs[i] * b.coeffs[j]
    return TruncatedSeries(tuple(out), n)


def series_div_exact(num: TruncatedSeries, den: TruncatedSeries) -> TruncatedSeries:
    """q with q*den == num through min(order)."""
    u = den.coeffs[0]
    if u not in (1, -1):
        raise NonUnitDenominator(f"constant term {u} is not a unit")
    n = min(num.order, den.order)
    q = [0] * (n + 1)
    for k in range(n + 1):
        acc = num.coeffs[k] - sum(q[i] * den.coeffs[k - i] for i in range(k))
        q[k] = acc * u
    return TruncatedSeries(tuple(q), n)


def series_from_generator_degrees(degrees: Sequence[int], order: int = DEFAULT_ORDER) -> TruncatedSeries:
    """Expand prod_d 1/(1 - t^d)."""
    out = [0] * (order + 1)
    out[0] = 1
    for d in degrees:
        if d <= 0:
            raise ValueError("generator degrees must be positive")
        for k in range(d, order + 1):
            out[k] += out[k - d]
    return TruncatedSeries(tuple(out), order)
