"""Sparse polynomials in x_1..x_n over Z[beta], with exact truncation.

Terms are keyed by (exponent vector, beta exponent) with arbitrary-precision
integer coefficients.  Truncation discards terms whose total x-degree exceeds
max_deg; the beta degree is never truncated.  A polynomial may carry a split
index, in which case the first `split` variables and the remaining ones form
two alphabets and the degree bound applies to each block separately.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from .errors import (
    NonDivisibleError,
    NvarsMismatchError,
    UnboundedTruncationError,
)

TermKey = tuple[tuple[int, ...], int]


class BetaInt:
    """An element of Z[beta]: a map from beta exponent to integer."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, int] | int = 0):
        if isinstance(coeffs, int):
            coeffs = {0: coeffs} if coeffs else {}
        self.coeffs = {int(k): int(v) for k, v in coeffs.items() if v}

    @classmethod
    def beta_power(cls, k: int, coeff: int = 1) -> "BetaInt":
        return cls({k: coeff})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = BetaInt(other)
        return isinstance(other, BetaInt) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.coeffs.items())))

    def __add__(self, other: "BetaInt") -> "BetaInt":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BetaInt(out)

    def __sub__(self, other: "BetaInt") -> "BetaInt":
        return self + (-other)

    def __neg__(self) -> "BetaInt":
        return BetaInt({k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other: "BetaInt | int") -> "BetaInt":
        if isinstance(other, int):
            return BetaInt({k: v * other for k, v in self.coeffs.items()})
        out: dict[int, int] = {}
        for k1, v1 in self.coeffs.items():
            for k2, v2 in other.coeffs.items():
                k = k1 + k2
                out[k] = out.get(k, 0) + v1 * v2
        return BetaInt(out)

    __rmul__ = __mul__

    def divide_exact(self, d: int) -> "BetaInt":
        out = {}
        for k, v in self.coeffs.items():
            if v % d:
                raise NonDivisibleError(f"{v} is not divisible by {d}")
            out[k] = v // d
        return BetaInt(out)

    def single_power(self) -> tuple[int, int]:
        """The (exponent, coefficient) pair of a beta-monomial; error otherwise."""
        if len(self.coeffs) != 1:
            raise ValueError(f"not a single beta power: {self.coeffs}")
        return next(iter(self.coeffs.items()))

    def coeff_list(self) -> list[int]:
        """Coefficients [c0, c1, ...] up to the top beta exponent."""
        if not self.coeffs:
            return []
        top = max(self.coeffs)
        return [self.coeffs.get(k, 0) for k in range(top + 1)]

    def eval(self, beta: Fraction) -> Fraction:
        return sum((Fraction(v) * beta**k for k, v in self.coeffs.items()), Fraction(0))

    def __repr__(self) -> str:
        return f"BetaInt({self.coeffs})"


@dataclass(frozen=True)
class RationalPoint:
    """An exact evaluation point: a rational beta and rational coordinates."""

    beta: Fraction
    coords: tuple[Fraction, ...]


class BetaPoly:
    """A truncated sparse polynomial over Z[beta]; immutable by convention."""

    __slots__ = ("nvars", "max_deg", "split", "terms")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[TermKey, int] | None = None,
        max_deg: int | None = None,
        split: int | None = None,
    ):
        self.nvars = nvars
        self.max_deg = max_deg
        self.split = split
        clean: dict[TermKey, int] = {}
        if terms:
            for (exps, b), c in terms.items():
                if c and self._ok(exps):
                    clean[(tuple(exps), b)] = c
        self.terms = clean

    def _ok(self, exps: tuple[int, ...]) -> bool:
        if self.max_deg is None:
            return True
        if self.split is None:
            return sum(exps) <= self.max_deg
        return (
            sum(exps[: self.split]) <= self.max_deg
            and sum(exps[self.split :]) <= self.max_deg
        )

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int, max_deg: int | None = None, split: int | None = None) -> "BetaPoly":
        return cls(nvars, {}, max_deg, split)

    @classmethod
    def const(cls, nvars: int, c: int = 1, max_deg: int | None = None, split: int | None = None) -> "BetaPoly":
        return cls(nvars, {((0,) * nvars, 0): c}, max_deg, split)

    @classmethod
    def variable(cls, i: int, nvars: int, max_deg: int | None = None, split: int | None = None) -> "BetaPoly":
        """The variable x_i (1-indexed)."""
        exps = tuple(1 if k == i - 1 else 0 for k in range(nvars))
        return cls(nvars, {(exps, 0): 1}, max_deg, split)

    @classmethod
    def monomial(
        cls,
        nvars: int,
        exps: Iterable[int],
        beta_exp: int = 0,
        coeff: int = 1,
        max_deg: int | None = None,
        split: int | None = None,
    ) -> "BetaPoly":
        return cls(nvars, {(tuple(exps), beta_exp): coeff}, max_deg, split)

    def _like(self, terms: Mapping[TermKey, int], max_deg: int | None = "keep") -> "BetaPoly":  # type: ignore[assignment]
        md = self.max_deg if max_deg == "keep" else max_deg
        return BetaPoly(self.nvars, terms, md, self.split)

    def _check_compatible(self, other: "BetaPoly") -> int | None:
        if self.nvars != other.nvars or self.split != other.split:
            raise NvarsMismatchError(
                f"incompatible operands: ({self.nvars},{self.split}) vs ({other.nvars},{other.split})"
            )
        if self.max_deg is None:
            return other.max_deg
        if other.max_deg is None:
            return self.max_deg
        return min(self.max_deg, other.max_deg)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "BetaPoly") -> "BetaPoly":
        md = self._check_compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BetaPoly(self.nvars, out, md, self.split)

    def __sub__(self, other: "BetaPoly") -> "BetaPoly":
        md = self._check_compatible(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) - c
        return BetaPoly(self.nvars, out, md, self.split)

    def __neg__(self) -> "BetaPoly":
        return self._like({k: -c for k, c in self.terms.items()})

    def __mul__(self, other: "BetaPoly") -> "BetaPoly":
        md = self._check_compatible(other)
        out: dict[TermKey, int] = {}
        probe = BetaPoly.zero(self.nvars, md, self.split)
        for (e1, b1), c1 in self.terms.items():
            for (e2, b2), c2 in other.terms.items():
                exps = tuple(a + b for a, b in zip(e1, e2))
                if not probe._ok(exps):
                    continue
                key = (exps, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return BetaPoly(self.nvars, out, md, self.split)

    def __pow__(self, n: int) -> "BetaPoly":
        if n < 0:
            raise ValueError("negative power")
        result = BetaPoly.const(self.nvars, 1, self.max_deg, self.split)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "BetaPoly":
        return self._like({k: v * c for k, v in self.terms.items()})

    def times_beta(self, k: int = 1, coeff: int = 1) -> "BetaPoly":
        return self._like({(e, b + k): c * coeff for (e, b), c in self.terms.items()})

    def scale_betaint(self, s: BetaInt) -> "BetaPoly":
        out: dict[TermKey, int] = {}
        for (e, b), c in self.terms.items():
            for k, v in s.coeffs.items():
                key = (e, b + k)
                out[key] = out.get(key, 0) + c * v
        return self._like(out)

    def divide_exact(self, d: int) -> "BetaPoly":
        out = {}
        for k, c in self.terms.items():
            if c % d:
                raise NonDivisibleError(f"coefficient {c} not divisible by {d}")
            out[k] = c // d
        return self._like(out)

    # -- views and structure -----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, BetaPoly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    def coeff(self, exps: Iterable[int]) -> BetaInt:
        """The Z[beta] coefficient of the monomial x^exps."""
        exps = tuple(exps)
        return BetaInt({b: c for (e, b), c in self.terms.items() if e == exps})

    def x_degrees(self) -> set[int]:
        return {sum(e) for (e, _b) in self.terms}

    def degree_slice(self, d: int) -> "BetaPoly":
        return self._like({(e, b): c for (e, b), c in self.terms.items() if sum(e) == d})

    def truncated(self, max_deg: int | None) -> "BetaPoly":
        return BetaPoly(self.nvars, self.terms, max_deg, self.split)

    def beta_zero(self) -> "BetaPoly":
        """The specialization beta = 0."""
        return self._like({(e, b): c for (e, b), c in self.terms.items() if b == 0})

    def permuted(self, perm: tuple[int, ...]) -> "BetaPoly":
        """Relabel variables: new exponent vector e' with e'[perm[i]] = e[i]."""
        out: dict[TermKey, int] = {}
        for (e, b), c in self.terms.items():
            ne = [0] * self.nvars
            for i, v in enumerate(e):
                ne[perm[i]] = v
            key = (tuple(ne), b)
            out[key] = out.get(key, 0) + c
        return self._like(out)

    def is_symmetric(self) -> bool:
        """Invariance under adjacent transpositions (within each block if split)."""
        blocks = [(0, self.nvars)] if self.split is None else [
            (0, self.split),
            (self.split, self.nvars),
        ]
        ident = list(range(self.nvars))
        for lo, hi in blocks:
            for i in range(lo, hi - 1):
                perm = ident[:]
                perm[i], perm[i + 1] = perm[i + 1], perm[i]
                if self.permuted(tuple(perm)) != self:
                    return False
        return True

    def swap_split_blocks(self) -> "BetaPoly":
        """Exchange the two alphabets of a split polynomial of equal sizes."""
        if self.split is None or 2 * self.split != self.nvars:
            raise NvarsMismatchError("swap needs a split with equal block sizes")
        k = self.split
        perm = tuple(list(range(k, 2 * k)) + list(range(k)))
        return self.permuted(perm)

    # -- substitutions and evaluation ----------------------------------------

    def negate_vars(self, which: Iterable[int]) -> "BetaPoly":
        """Substitute x_i -> -x_i on the selected 1-indexed variables."""
        sel = {i - 1 for i in which}
        out = {}
        for (e, b), c in self.terms.items():
            sign = -1 if sum(e[i] for i in sel) % 2 else 1
            out[(e, b)] = sign * c
        return self._like(out)

    def substitute_geometric(self) -> "BetaPoly":
        """Apply x_i -> x_i/(1 - beta x_i) to every variable, truncated."""
        if self.max_deg is None:
            raise UnboundedTruncationError("substitute_geometric needs a finite max_deg")
        # x^k maps to a pure power of the series, computed per variable power.
        series_pow: dict[tuple[int, int], BetaPoly] = {}

        def var_series(i: int) -> BetaPoly:
            terms = {}
            for k in range(1, self.max_deg + 1):
                exps = tuple(k if t == i else 0 for t in range(self.nvars))
                if self._ok(exps):
                    terms[(exps, k - 1)] = 1
            return BetaPoly(self.nvars, terms, self.max_deg, self.split)

        def powered(i: int, k: int) -> BetaPoly:
            key = (i, k)
            if key not in series_pow:
                series_pow[key] = var_series(i) ** k
            return series_pow[key]

        total = BetaPoly.zero(self.nvars, self.max_deg, self.split)
        for (e, b), c in self.terms.items():
            piece = BetaPoly.const(self.nvars, c, self.max_deg, self.split).times_beta(b)
            for i, k in enumerate(e):
                if k:
                    piece = piece * powered(i, k)
            total = total + piece
        return total

    def eval_rational(self, pt: RationalPoint) -> Fraction:
        if len(pt.coords) != self.nvars:
            raise NvarsMismatchError(
                f"point has {len(pt.coords)} coords, polynomial has {self.nvars} vars"
            )
        total = Fraction(0)
        for (e, b), c in self.terms.items():
            val = Fraction(c) * pt.beta**b
            for x, k in zip(pt.coords, e):
                if k:
                    val *= x**k
            total += val
        return total

    def specialize_beta(self, beta: Fraction) -> dict[tuple[int, ...], Fraction]:
        """Collapse beta to a rational; returns monomial -> rational coefficient."""
        out: dict[tuple[int, ...], Fraction] = {}
        for (e, b), c in self.terms.items():
            out[e] = out.get(e, Fraction(0)) + Fraction(c) * beta**b
        return {e: v for e, v in out.items() if v}

    # -- serialization -------------------------------------------------------

    def sorted_terms(self) -> list[tuple[TermKey, int]]:
        """Terms in graded-lex order on exponents, then by beta exponent."""
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0][0]), kv[0][0], kv[0][1]))

    def to_json_obj(self) -> dict:
        obj = {
            "vars": self.nvars,
            "max_deg": self.max_deg,
            "terms": [
                {"exps": list(e), "beta": b, "coeff": str(c)}
                for (e, b), c in self.sorted_terms()
            ],
        }
        if self.split is not None:
            obj["split"] = self.split
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True)

    @classmethod
    def from_json_obj(cls, obj: dict) -> "BetaPoly":
        terms = {
            (tuple(t["exps"]), t["beta"]): int(t["coeff"]) for t in obj["terms"]
        }
        return cls(obj["vars"], terms, obj.get("max_deg"), obj.get("split"))

    @classmethod
    def from_json(cls, text: str) -> "BetaPoly":
        return cls.from_json_obj(json.loads(text))

    def render(self, beta_symbol: str = "b", var_prefix: str = "x") -> str:
        """Human-readable text, e.g. "2*x1 + b*x1^2"."""
        if not self.terms:
            return "0"
        bits = []
        for (e, b), c in self.sorted_terms():
            factors = []
            if b == 1:
                factors.append(beta_symbol)
            elif b > 1:
                factors.append(f"{beta_symbol}^{b}")
            for i, k in enumerate(e, start=1):
                if k == 1:
                    factors.append(f"{var_prefix}{i}")
                elif k > 1:
                    factors.append(f"{var_prefix}{i}^{k}")
            mag = abs(c)
            if mag != 1 or not factors:
                factors.insert(0, str(mag))
            term = "*".join(factors)
            bits.append(("- " if c < 0 else "+ ") + term)
        text = " ".join(bits)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"BetaPoly({self.nvars} vars, {self.render()})"


def tensor_split(px: BetaPoly, py: BetaPoly, max_deg: int | None) -> BetaPoly:
    """The product px(x) * py(y) as a split polynomial over (x, y)."""
    nx, ny = px.nvars, py.nvars
    out: dict[TermKey, int] = {}
    probe = BetaPoly.zero(nx + ny, max_deg, nx)
    for (e1, b1), c1 in px.terms.items():
        for (e2, b2), c2 in py.terms.items():
            exps = e1 + e2
            if not probe._ok(exps):
                continue
            key = (exps, b1 + b2)
            out[key] = out.get(key, 0) + c1 * c2
    return BetaPoly(nx + ny, out, max_deg, nx)


def embed_in_split(p: BetaPoly, nx: int, ny: int, block: str, max_deg: int | None) -> BetaPoly:
    """View a one-alphabet polynomial as living in the x- or y-block."""
    out: dict[TermKey, int] = {}
    for (e, b), c in p.terms.items():
        exps = e + (0,) * ny if block == "x" else (0,) * nx + e
        out[(exps, b)] = c
    return BetaPoly(nx + ny, out, max_deg, nx)


def split_with_split_index(p: BetaPoly, split: int) -> BetaPoly:
    """Re-tag an unsplit polynomial with a split index (no truncation change)."""
    return BetaPoly(p.nvars, p.terms, p.max_deg, split)


def cauchy_kernel(nx: int, ny: int, max_deg: int) -> BetaPoly:
    """The kernel Prod_{i<=nx, j<=ny} (1 - xbar_i y_j)/(1 - x_i y_j).

    Here xbar = -x/(1+beta*x), so each factor equals
    (1 + beta*x_i + x_i*y_j) / ((1 + beta*x_i) * (1 - x_i*y_j)),
    expanded exactly and truncated to degree <= max_deg in the x-block and in
    the y-block separately.  The result is a split polynomial.
    """
    n = nx + ny
    split = nx
    one = BetaPoly.const(n, 1, max_deg, split)
    kernel = one
    for i in range(1, nx + 1):
        xi = BetaPoly.variable(i, n, max_deg, split)
        # 1/(1+beta*x_i) = sum_k (-beta)^k x_i^k
        inv_1bx = BetaPoly(
            n,
            {
                (tuple(k if t == i - 1 else 0 for t in range(n)), k): (-1) ** k
                for k in range(0, max_deg + 1)
            },
            max_deg,
            split,
        )
        factor_i = inv_1bx ** ny
        for j in range(nx + 1, n + 1):
            yj = BetaPoly.variable(j, n, max_deg, split)
            xiyj = xi * yj
            # 1/(1 - x_i y_j) = sum_k (x_i y_j)^k
            inv_xy = one
            power = one
            for _ in range(max_deg):
                power = power * xiyj
                if power.is_zero():
                    break
                inv_xy = inv_xy + power
            numer = one + xi.times_beta(1) + xiyj
            factor_i = factor_i * numer * inv_xy
        kernel = kernel * factor_i
    return kernel
