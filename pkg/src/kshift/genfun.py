"""Symmetric-function families over Z[beta] and the basis-expansion engine.

Families: classical P/Q, their K-theoretic liftings GP/GQ (with skew and
double-slash variants), the dual functions gp/gq defined through the Cauchy
kernel, their transposes jp/jq under the Schur-basis involution, and the
geometric substitutions JP/JQ.  Dual functions are always computed by
inverting the Cauchy kernel, never from conjectural tableau formulas.

Triangularity conventions used throughout: GP/GQ have minimal x-degree equal
to the index size with lowest slice P/Q, so they are peeled from low degree
upward; gp/gq/jp/jq have maximal x-degree equal to the index size with top
slice P/Q, so they are peeled from high degree downward.  Within one degree,
indices are processed in decreasing lexicographic order, which refines
dominance; leading monomial coefficients are 1 for P/GP/gp/jp/schur and
2^length for Q/GQ/gq/jq.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .cache import CACHE
from .errors import (
    KshiftError,
    NonSymmetricError,
    ParameterError,
    ResourceLimitError,
    SingularPointError,
)
from .polyring import BetaInt, BetaPoly, RationalPoint, tensor_split
from .shapes import (
    EMPTY,
    SkewShape,
    StrictPartition,
    contains,
    doubleslash_inners,
    straight,
    strict_partitions_of,
)
from .tableaux import genfun_from_tableaux

# -- plain (not necessarily strict) partitions for the Schur world -----------


def partitions_of(n: int, max_part: int | None = None) -> list[tuple[int, ...]]:
    """Partitions of n in decreasing lexicographic order."""
    if n == 0:
        return [()]
    out = []
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return out


def transpose_partition(p: tuple[int, ...]) -> tuple[int, ...]:
    if not p:
        return ()
    return tuple(sum(1 for x in p if x >= j) for j in range(1, p[0] + 1))


def _iter_ssyt_weights(shape: tuple[int, ...], nvars: int):
    """Weights of semistandard Young tableaux with entries in 1..nvars."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    n = len(cells)
    index = {c: k for k, c in enumerate(cells)}
    vals = [0] * n
    weight = [0] * nvars
    if n == 0:
        yield tuple(weight)
        return

    def rec(k: int):
        if k == n:
            yield tuple(weight)
            return
        i, j = cells[k]
        lo = 1
        if j > 0:
            lo = max(lo, vals[index[(i, j - 1)]])
        if i > 0:
            lo = max(lo, vals[index[(i - 1, j)]] + 1)
        for v in range(lo, nvars + 1):
            vals[k] = v
            weight[v - 1] += 1
            yield from rec(k + 1)
            weight[v - 1] -= 1
        vals[k] = 0

    yield from rec(0)


def schur(lam: tuple[int, ...], nvars: int, max_deg: int | None = None) -> BetaPoly:
    """The classical Schur polynomial s_lam(x_1..x_nvars)."""
    lam = tuple(lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(x <= 0 for x in lam):
        raise ValueError(f"not a partition: {lam}")
    if len(lam) > nvars or (max_deg is not None and sum(lam) > max_deg):
        return BetaPoly.zero(nvars, max_deg)

    def compute() -> BetaPoly:
        terms: dict = {}
        for w in _iter_ssyt_weights(lam, nvars):
            key = (w, 0)
            terms[key] = terms.get(key, 0) + 1
        return BetaPoly(nvars, terms, None)

    key = ["schur", list(lam), nvars]
    poly = CACHE.get_or_compute(key, compute, BetaPoly.to_json_obj, BetaPoly.from_json_obj)
    return poly.truncated(max_deg)


# -- tableau-defined families -------------------------------------------------


def classical_pq(flavor: str, shape: SkewShape, nvars: int, max_deg: int | None = None) -> BetaPoly:
    """The classical Schur P- or Q-polynomial of a (skew) shifted shape."""
    fam = {"P": "shyt_p", "Q": "shyt_q"}[flavor]
    if not shape.valid:
        return BetaPoly.zero(nvars, max_deg)

    def compute() -> BetaPoly:
        return genfun_from_tableaux(fam, shape, nvars, None)

    key = ["classical", flavor, str(shape), nvars]
    poly = CACHE.get_or_compute(key, compute, BetaPoly.to_json_obj, BetaPoly.from_json_obj)
    return poly.truncated(max_deg)


def gp_gq(flavor: str, shape: SkewShape, nvars: int, max_deg: int) -> BetaPoly:
    """GP or GQ of a (skew) shifted shape; zero when inner is not contained."""
    fam = {"GP": "setshyt_p", "GQ": "setshyt_q"}[flavor]
    if not shape.valid:
        return BetaPoly.zero(nvars, max_deg)

    def compute() -> BetaPoly:
        return genfun_from_tableaux(fam, shape, nvars, max_deg)

    key = ["gpgq", flavor, str(shape), nvars, max_deg]
    return CACHE.get_or_compute(key, compute, BetaPoly.to_json_obj, BetaPoly.from_json_obj)


def gp_gq_doubleslash(
    flavor: str, lam: StrictPartition, mu: StrictPartition, nvars: int, max_deg: int
) -> BetaPoly:
    """The double-slash function: sum of beta^|mu/nu| GP_{lam/nu} over inners."""
    if not contains(mu, lam):
        return BetaPoly.zero(nvars, max_deg)
    total = BetaPoly.zero(nvars, max_deg)
    for nu in doubleslash_inners(mu):
        part = gp_gq(flavor, SkewShape(lam, nu), nvars, max_deg)
        total = total + part.times_beta(mu.size - nu.size)
    return total


# -- the Cauchy kernel inverted: dual functions --------------------------------


def _ell_max(size: int) -> int:
    """The longest possible length of a strict partition of size <= size."""
    m = 0
    while (m + 1) * (m + 2) // 2 <= size:
        m += 1
    return m


def _kernel_x_slices(S: int, ny: int, ydeg: int) -> list[BetaPoly]:
    """Coefficients k_d(y) of x^d in prod_j (1 - xbar*y_j)/(1 - x*y_j), d <= S.

    The factor for one x equals
    [sum_m e_m(beta+y) x^m] * [sum_a C(ny+a-1,a)(-beta)^a x^a] * [sum_b h_b(y) x^b].
    """
    one = BetaPoly.const(ny, 1, ydeg)
    zero = BetaPoly.zero(ny, ydeg)
    # elementary symmetric in the shifted alphabet (beta+y_1, ..., beta+y_ny)
    E = [one] + [zero] * S
    for j in range(1, ny + 1):
        fj = BetaPoly.variable(j, ny, ydeg) + BetaPoly.const(ny, 1, ydeg).times_beta(1)
        for m in range(min(j, S), 0, -1):
            E[m] = E[m] + E[m - 1] * fj
    # complete homogeneous h_b(y)
    H = [one] + [zero] * S
    for j in range(1, ny + 1):
        yj = BetaPoly.variable(j, ny, ydeg)
        for b in range(1, S + 1):
            H[b] = H[b] + H[b - 1] * yj
    EH = [zero] * (S + 1)
    for m in range(S + 1):
        for b in range(S + 1 - m):
            EH[m + b] = EH[m + b] + E[m] * H[b]
    slices = []
    for d in range(S + 1):
        k_d = zero
        for a in range(d + 1):
            coeff = comb(ny + a - 1, a) * (-1) ** a
            k_d = k_d + EH[d - a].times_beta(a, coeff)
        slices.append(k_d)
    return slices


def _dual_candidates(S: int) -> list[StrictPartition]:
    """Strict partitions of size <= S, by size then decreasing lex."""
    out: list[StrictPartition] = []
    for d in range(S + 1):
        out.extend(strict_partitions_of(d))
    return out


def dual_table(flavor: str, S: int, ny: int) -> dict[StrictPartition, BetaPoly]:
    """All dual functions gp_mu (or gq_mu) with |mu| <= S, in ny variables.

    Obtained by equating coefficients of the monomials x^mu in the Cauchy
    identity kernel = sum_mu GQ_mu(x) gp_mu(y) (respectively GP/gq) over
    nx = max length variables, and solving the triangular system.  The values
    are exact polynomials of degree <= |mu|, so they carry no truncation tag.
    """
    if flavor not in ("gp", "gq"):
        raise ValueError(f"flavor must be gp or gq, got {flavor!r}")
    key = ["dual_table", flavor, S, ny]

    def compute() -> dict[StrictPartition, BetaPoly]:
        nx = max(1, _ell_max(S))
        ydeg = S  # every dual of size <= S has y-degree <= S: no loss
        slices = _kernel_x_slices(S, ny, ydeg)
        basis_flavor = "GQ" if flavor == "gp" else "GP"
        lead_base = 2 if flavor == "gp" else 1
        candidates = _dual_candidates(S)
        basis_polys = {
            mu: gp_gq(basis_flavor, straight(mu), nx, S) for mu in candidates
        }
        solved: dict[StrictPartition, BetaPoly] = {}
        order: list[StrictPartition] = []
        for mu in candidates:
            if len(mu) > nx:
                raise ParameterError(f"internal: candidate {mu} longer than {nx}")
            target = BetaPoly.const(ny, 1, ydeg)
            for part in mu.parts:
                target = target * slices[part]
            monomial = tuple(mu.parts) + (0,) * (nx - len(mu))
            for prev in order:
                t = basis_polys[prev].coeff(monomial)
                if not t.is_zero():
                    target = target - solved[prev].scale_betaint(t)
            lead = basis_polys[mu].coeff(monomial)
            expected = lead_base ** len(mu)
            if lead != BetaInt(expected):
                raise KshiftError(
                    f"triangularity failure at {mu}: leading coefficient {lead.coeffs}"
                )
            solved[mu] = target.divide_exact(expected).truncated(None)
            order.append(mu)
        return solved

    def encode(table: dict[StrictPartition, BetaPoly]) -> dict:
        return {str(mu): poly.to_json_obj() for mu, poly in table.items()}

    def decode(obj: dict) -> dict[StrictPartition, BetaPoly]:
        return {
            StrictPartition.parse(k): BetaPoly.from_json_obj(v) for k, v in obj.items()
        }

    return CACHE.get_or_compute(key, compute, encode, decode)


def dual_gp_gq(flavor: str, lam: StrictPartition, nvars_y: int, ydeg: int | None = None) -> BetaPoly:
    """The dual function gp_lam or gq_lam as an exact polynomial in y."""
    poly = dual_table(flavor, lam.size, nvars_y)[lam]
    return poly if ydeg is None else poly.truncated(ydeg)


# -- the expansion engine ------------------------------------------------------

_MIN_FIRST = {"schur", "P", "Q", "GP", "GQ"}
_MAX_FIRST = {"gp", "gq", "jp", "jq"}


def _basis_lead(basis: str, index: tuple[int, ...]) -> int:
    return 2 ** len(index) if basis in ("Q", "GQ", "gq", "jq") else 1


def _basis_indices(basis: str, degree: int, nvars: int) -> list[tuple[int, ...]]:
    if basis == "schur":
        return [p for p in partitions_of(degree) if len(p) <= nvars]
    return [p.parts for p in strict_partitions_of(degree) if len(p) <= nvars]


def _basis_element(basis: str, index: tuple[int, ...], nvars: int, max_deg: int | None) -> BetaPoly:
    sp = StrictPartition(index) if basis != "schur" else None
    if basis == "schur":
        return schur(index, nvars, max_deg)
    if basis in ("P", "Q"):
        return classical_pq(basis, straight(sp), nvars, max_deg)
    if basis in ("GP", "GQ"):
        if max_deg is None:
            raise ParameterError("GP/GQ basis elements need a finite max_deg")
        return gp_gq(basis, straight(sp), nvars, max_deg)
    if basis in ("gp", "gq"):
        return dual_gp_gq(basis, sp, nvars).truncated(max_deg)
    if basis in ("jp", "jq"):
        return jp_jq(basis, sp, EMPTY, nvars, max_deg)
    raise ValueError(f"unknown basis {basis!r}")


@dataclass
class BasisExpansion:
    """Coefficients of an input against one family, plus the unexplained rest."""

    basis: str
    nvars: int
    max_deg: int | None
    coeffs: dict[tuple[int, ...], BetaInt] = field(default_factory=dict)
    residual: BetaPoly | None = None

    @property
    def residual_zero(self) -> bool:
        return self.residual is None or self.residual.is_zero()

    def coefficient(self, index: tuple[int, ...]) -> BetaInt:
        return self.coeffs.get(tuple(index), BetaInt(0))

    def recombine(self) -> BetaPoly:
        total = BetaPoly.zero(self.nvars, self.max_deg)
        for index, c in self.coeffs.items():
            total = total + _basis_element(self.basis, index, self.nvars, self.max_deg).scale_betaint(c)
        if self.residual is not None:
            total = total + self.residual
        return total

    def to_json_obj(self) -> dict:
        items = sorted(self.coeffs.items(), key=lambda kv: (sum(kv[0]), tuple(-x for x in kv[0])))
        return {
            "basis": self.basis,
            "vars": self.nvars,
            "max_deg": self.max_deg,
            "coeffs": [
                {"index": ",".join(str(x) for x in idx), "beta": c.coeff_list()}
                for idx, c in items
                if not c.is_zero()
            ],
            "residual_zero": self.residual_zero,
        }


def expand_in_basis(
    p: BetaPoly,
    basis: str,
    check_symmetry: bool = True,
) -> BasisExpansion:
    """Greedy triangular peel of p against the chosen family.

    The caller must supply p in enough variables: nvars at least the length
    of every index that can appear (for the Schur basis, nvars >= max degree).
    """
    if p.split is not None:
        raise ParameterError("expand_in_basis needs a one-alphabet polynomial")
    if check_symmetry and not p.is_symmetric():
        raise NonSymmetricError("input polynomial is not symmetric")
    nvars = p.nvars
    max_deg = p.max_deg
    if max_deg is None:
        max_deg = max(p.x_degrees(), default=0)
    degrees = range(0, max_deg + 1)
    if basis in _MAX_FIRST:
        degrees = range(max_deg, -1, -1)
    result = BasisExpansion(basis, nvars, p.max_deg)
    residual = BetaPoly.zero(nvars, p.max_deg)
    rest = p
    for d in degrees:
        for index in _basis_indices(basis, d, nvars):
            monomial = index + (0,) * (nvars - len(index))
            c = rest.coeff(monomial)
            if c.is_zero():
                continue
            c = c.divide_exact(_basis_lead(basis, index))
            result.coeffs[index] = c
            rest = rest - _basis_element(basis, index, nvars, p.max_deg).scale_betaint(c)
        leftover = rest.degree_slice(d)
        if not leftover.is_zero():
            residual = residual + leftover
            rest = rest - leftover
    if not rest.is_zero():
        residual = residual + rest
    result.residual = residual
    return result


def expand_split_in_basis(p: BetaPoly, basis: str) -> dict[tuple[int, ...], BetaPoly]:
    """Expand the x-block of a split polynomial; coefficients are y-polynomials.

    Raises if anything in the x-block cannot be explained by the basis: the
    callers use this only on inputs that are exact identities.
    """
    if p.split is None:
        raise ParameterError("expand_split_in_basis needs a split polynomial")
    nx = p.split
    ny = p.nvars - nx

    def x_coeff(poly: BetaPoly, exps_x: tuple[int, ...]) -> BetaPoly:
        terms = {}
        for (e, b), c in poly.terms.items():
            if e[:nx] == exps_x:
                terms[(e[nx:], b)] = c
        return BetaPoly(ny, terms, poly.max_deg)

    def x_degree_slice_empty(poly: BetaPoly, d: int) -> bool:
        return all(sum(e[:nx]) != d for (e, _b) in poly.terms)

    max_deg = p.max_deg
    if max_deg is None:
        max_deg = max((sum(e[:nx]) for (e, _b) in p.terms), default=0)
    degrees = range(0, max_deg + 1)
    if basis in _MAX_FIRST:
        degrees = range(max_deg, -1, -1)
    coeffs: dict[tuple[int, ...], BetaPoly] = {}
    rest = p
    for d in degrees:
        for index in _basis_indices(basis, d, nx):
            monomial = index + (0,) * (nx - len(index))
            cy = x_coeff(rest, monomial)
            if cy.is_zero():
                continue
            cy = cy.divide_exact(_basis_lead(basis, index))
            coeffs[index] = cy
            elem = _basis_element(basis, index, nx, p.max_deg)
            rest = rest - tensor_split(elem, cy, p.max_deg)
        if not x_degree_slice_empty(rest, d):
            raise KshiftError(
                f"split expansion residual at x-degree {d} in basis {basis}"
            )
    if not rest.is_zero():
        raise KshiftError(f"split expansion has a nonzero residual in basis {basis}")
    return coeffs


# -- skew duals, omega, and the j/J families -----------------------------------


def dual_skew_table(flavor: str, lam: StrictPartition, ny: int) -> dict[StrictPartition, BetaPoly]:
    """All skew duals gp_{lam/mu} (or gq) as polynomials in ny variables.

    Uses the two-alphabet identity g_lam(x,y) = sum_mu g_mu(x) g_{lam/mu}(y):
    the full dual polynomial over nx+ny variables is expanded over its x-block
    in the same dual basis.
    """
    S = lam.size
    nx = max(1, len(lam))
    key = ["dual_skew_table", flavor, str(lam), ny]

    def compute() -> dict[StrictPartition, BetaPoly]:
        total_vars = nx + ny
        full = dual_table(flavor, S, total_vars)[lam]
        split_poly = BetaPoly(total_vars, full.terms, None, nx)
        coeffs = expand_split_in_basis(split_poly, flavor)
        return {StrictPartition(idx): poly for idx, poly in coeffs.items()}

    def encode(table: dict[StrictPartition, BetaPoly]) -> dict:
        return {str(mu): poly.to_json_obj() for mu, poly in table.items()}

    def decode(obj: dict) -> dict[StrictPartition, BetaPoly]:
        return {StrictPartition.parse(k): BetaPoly.from_json_obj(v) for k, v in obj.items()}

    return CACHE.get_or_compute(key, compute, encode, decode)


def dual_skew(flavor: str, lam: StrictPartition, mu: StrictPartition, ny: int) -> BetaPoly:
    """The skew dual function; zero exactly when mu is not contained in lam."""
    if not contains(mu, lam):
        return BetaPoly.zero(ny, None)
    return dual_skew_table(flavor, lam, ny).get(mu, BetaPoly.zero(ny, None))


def omega(p: BetaPoly, max_deg: int | None = None) -> BetaPoly:
    """Expand in the Schur basis, transpose every index, recombine.

    Faithful when p.nvars >= the working degree bound, since a transposed
    index of size <= max_deg has at most max_deg rows.
    """
    bound = p.max_deg
    if bound is None:
        bound = max(p.x_degrees(), default=0)
    if p.nvars < bound:
        raise ParameterError(f"omega needs nvars >= degree bound ({p.nvars} < {bound})")
    exp = expand_in_basis(p, "schur")
    if not exp.residual_zero:
        raise KshiftError("omega input has a nonzero Schur residual")
    out = BetaPoly.zero(p.nvars, max_deg if max_deg is not None else p.max_deg)
    for index, c in exp.coeffs.items():
        out = out + schur(transpose_partition(index), p.nvars, out.max_deg).scale_betaint(c)
    return out


def _omega_schur_coeffs(p: BetaPoly) -> dict[tuple[int, ...], BetaInt]:
    """Schur coefficients of omega(p), index-transposed; p must be faithful."""
    exp = expand_in_basis(p, "schur")
    if not exp.residual_zero:
        raise KshiftError("nonzero Schur residual")
    return {transpose_partition(idx): c for idx, c in exp.coeffs.items()}


def jp_jq(
    flavor: str,
    lam: StrictPartition,
    mu: StrictPartition = EMPTY,
    nvars: int = 3,
    max_deg: int | None = None,
) -> BetaPoly:
    """jp or jq of lam/mu: the Schur transpose of the matching dual function."""
    dual_flavor = {"jp": "gp", "jq": "gq"}[flavor]
    if not contains(mu, lam):
        return BetaPoly.zero(nvars, max_deg)
    key = ["jpjq", flavor, str(lam), str(mu), nvars, max_deg]

    def compute() -> BetaPoly:
        degree = lam.size - mu.size
        work = max(1, degree)
        if mu == EMPTY:
            g = dual_gp_gq(dual_flavor, lam, work)
        else:
            g = dual_skew(dual_flavor, lam, mu, work)
        out = BetaPoly.zero(nvars, max_deg)
        for index, c in _omega_schur_coeffs(g).items():
            out = out + schur(index, nvars, max_deg).scale_betaint(c)
        return out

    return CACHE.get_or_compute(key, compute, BetaPoly.to_json_obj, BetaPoly.from_json_obj)


def cap_jp_jq(
    flavor: str,
    lam: StrictPartition,
    mu: StrictPartition = EMPTY,
    nvars: int = 3,
    max_deg: int = 6,
    doubleslash: bool = False,
) -> BetaPoly:
    """JP or JQ: the geometric substitution x -> x/(1-beta*x) applied to GP/GQ."""
    base_flavor = {"JP": "GP", "JQ": "GQ"}[flavor]
    if doubleslash:
        base = gp_gq_doubleslash(base_flavor, lam, mu, nvars, max_deg)
    else:
        base = gp_gq(base_flavor, SkewShape(lam, mu), nvars, max_deg)
    return base.substitute_geometric()


# -- structure constants -------------------------------------------------------


@dataclass
class StructureTable:
    """Integer coefficients of a product or skew expansion, up to a cap."""

    kind: str
    fixed: tuple[StrictPartition, StrictPartition]
    degree_cap: int
    entries: dict[StrictPartition, int] = field(default_factory=dict)
    truncated: bool = True

    def to_json_obj(self) -> dict:
        items = sorted(self.entries.items(), key=lambda kv: kv[0].sort_key())
        return {
            "kind": self.kind,
            "fixed": [str(self.fixed[0]), str(self.fixed[1])],
            "degree_cap": self.degree_cap,
            "entries": [{"index": str(k), "coeff": v} for k, v in items],
            "truncated": self.truncated,
        }


def structure_constants(
    kind: str,
    first: StrictPartition,
    second: StrictPartition,
    degree_cap: int,
) -> StructureTable:
    """The integer tables a,b (products) and ahat,bhat (double-slash expansions).

    a: GP_mu*GP_nu over GP; b: GQ_mu*GQ_nu over GQ, with beta^(|lam|-|mu|-|nu|).
    ahat: GQ_{lam//mu} over GQ; bhat: GP_{lam//mu} over GP, with
    beta^(|mu|+|nu|-|lam|).  Entries are reported up to the degree cap only.
    """
    nvars = max(1, _ell_max(degree_cap))
    if kind in ("a", "b"):
        basis = {"a": "GP", "b": "GQ"}[kind]
        mu, nu = first, second
        p = gp_gq(basis, straight(mu), nvars, degree_cap) * gp_gq(
            basis, straight(nu), nvars, degree_cap
        )
        shift = lambda lam: lam.size - mu.size - nu.size
    elif kind in ("ahat", "bhat"):
        basis = {"ahat": "GQ", "bhat": "GP"}[kind]
        lam, mu = first, second
        p = gp_gq_doubleslash(basis, lam, mu, nvars, degree_cap)
        shift = lambda nu: mu.size + nu.size - lam.size
    else:
        raise ValueError(f"unknown kind {kind!r}")
    exp = expand_in_basis(p, basis)
    if not exp.residual_zero:
        raise KshiftError(f"structure expansion has residual below the cap: {kind}")
    table = StructureTable(kind, (first, second), degree_cap)
    for index, c in exp.coeffs.items():
        if c.is_zero():
            continue
        sp = StrictPartition(index)
        k, m = c.single_power()
        if k != shift(sp):
            raise KshiftError(
                f"{kind}-coefficient at {sp} has beta power {k}, expected {shift(sp)}"
            )
        table.entries[sp] = m
    return table


# -- exact symmetrization (rational evaluation) --------------------------------


def _oplus(x: Fraction, y: Fraction, beta: Fraction) -> Fraction:
    return x + y + beta * x * y


def _ominus(x: Fraction, y: Fraction, beta: Fraction) -> Fraction:
    return (x - y) / (1 + beta * y)


def symmetrization_eval(
    flavor: str,
    lam: tuple[int, ...],
    nvars: int,
    pt: RationalPoint,
) -> Fraction:
    """Evaluate the symmetrized rational formulas exactly at a rational point.

    GP/GQ sum over all of S_n with prefactor 1/(n-r)!; A/B sum over S_r
    permuting only the first r coordinates with prefactor 1/r!, where r is the
    index of the last nonzero entry.
    """
    if nvars > 6:
        raise ResourceLimitError("symmetrization_eval is capped at 6 variables")
    if len(pt.coords) != nvars:
        raise ParameterError("point size does not match nvars")
    beta = pt.beta
    coords = pt.coords
    if len(set(coords)) != nvars:
        raise SingularPointError("coordinates must be pairwise distinct")
    if any(1 + beta * x == 0 for x in coords):
        raise SingularPointError("1 + beta*x vanishes at a coordinate")
    lam = tuple(lam)
    qflavor = flavor in ("GQ", "B")
    if flavor in ("GP", "GQ"):
        if any(lam[i] <= lam[i + 1] for i in range(len(lam) - 1)):
            raise ParameterError("GP/GQ indices must be strict partitions")
        r = len(lam)
        if r > nvars:
            raise ParameterError("index longer than nvars")
        perms = itertools.permutations(range(nvars))
        norm = factorial(nvars - r)
    elif flavor in ("A", "B"):
        r = max((i + 1 for i, v in enumerate(lam) if v), default=0)
        if r == 0:
            return Fraction(1)
        if r > nvars:
            raise ParameterError("index longer than nvars")
        perms = (
            p + tuple(range(r, nvars)) for p in itertools.permutations(range(r))
        )
        norm = factorial(r)
    else:
        raise ValueError(f"unknown flavor {flavor!r}")
    exps = lam + (0,) * (nvars - len(lam))
    total = Fraction(0)
    for perm in perms:
        xs = [coords[i] for i in perm]
        term = Fraction(1)
        for i in range(nvars):
            if exps[i]:
                term *= xs[i] ** exps[i]
        for i in range(r):
            if qflavor:
                term *= 2 + beta * xs[i]
            for j in range(i + 1, nvars):
                denom = _ominus(xs[i], xs[j], beta)
                term *= _oplus(xs[i], xs[j], beta) / denom
        total += term
    return total / norm


# -- the one-row GQ generating series ------------------------------------------


def gq_onerow_series(nvars: int, max_power: int, max_deg: int) -> list[BetaPoly]:
    """Coefficients of u^-n, 0 <= n <= max_power, of the one-row series.

    The series (1/(1+beta*u)) prod_j (1+(t+beta)x_j)/(1+(t+beta)xbar_j) with
    t = u^-1 rearranges, for its positive part, to
    1 + sum over nonempty subsets T of t (t+beta)^(|T|-1)
        prod_{j in T} (2x_j + beta x_j^2) / (1 - x_j t),
    which is expanded with exact polynomial arithmetic in t.
    """
    N = max_power
    zero = BetaPoly.zero(nvars, max_deg)
    one = BetaPoly.const(nvars, 1, max_deg)
    total = [zero] * (N + 1)
    total[0] = one
    if N == 0:
        return total

    def series_mul(a: list[BetaPoly], b: list[BetaPoly]) -> list[BetaPoly]:
        out = [zero] * (N + 1)
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if i + j > N or bj.is_zero():
                    continue
                out[i + j] = out[i + j] + ai * bj
        return out

    t_plus_beta = [one.times_beta(1), one] + [zero] * (N - 1)
    for size in range(1, nvars + 1):
        for subset in itertools.combinations(range(1, nvars + 1), size):
            acc = [zero, one] + [zero] * (N - 1)  # the series "t"
            for _ in range(size - 1):
                acc = series_mul(acc, t_plus_beta)
            for j in subset:
                xj = BetaPoly.variable(j, nvars, max_deg)
                factor = xj.scale(2) + (xj * xj).times_beta(1)
                geom = [xj**k for k in range(N + 1)]
                acc = series_mul(acc, [g * factor for g in geom])
            for n in range(N + 1):
                total[n] = total[n] + acc[n]
    return total
