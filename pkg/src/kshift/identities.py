"""Machine verification of the expansion, Cauchy, and conjecture identities.

Every check returns a VerificationReport.  Theorem checks use PASS/FAIL with a
reproducible witness on failure; conjecture checks use MATCH/MISMATCH and keep
per-shape findings, because a mismatch there is a finding to surface rather
than a test failure.  All polynomial comparisons are exact.
"""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

from .cache import CACHE
from .errors import KshiftError, ParameterError, SingularPointError
from .genfun import (
    _ell_max,
    cap_jp_jq,
    classical_pq,
    dual_gp_gq,
    dual_skew,
    dual_table,
    gp_gq,
    gp_gq_doubleslash,
    gq_onerow_series,
    jp_jq,
    structure_constants,
    symmetrization_eval,
)
from .polyring import BetaPoly, RationalPoint, cauchy_kernel, tensor_split
from .shapes import (
    EMPTY,
    SkewShape,
    StrictPartition,
    contains,
    delta,
    enumerate_strict_partitions,
    flip,
    shape_stats,
    straight,
    subshapes,
    vertical_strip_extensions,
    vertical_strip_extensions_signed,
    vertical_strip_subsets,
)
from .tableaux import genfun_from_tableaux, iter_restricted_p, iter_tableaux, weight


@dataclass
class VerificationReport:
    id: str
    params: dict
    status: str
    cases: int
    witness: dict | None = None
    findings: list[dict] = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status in ("PASS", "MATCH")

    def to_json_obj(self) -> dict:
        obj = {
            "id": self.id,
            "params": self.params,
            "status": self.status,
            "cases": self.cases,
            "witness": self.witness,
        }
        if self.findings:
            obj["findings"] = self.findings
        if self.notes:
            obj["notes"] = self.notes
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))


def _poly_pair(lhs: BetaPoly, rhs: BetaPoly) -> dict:
    return {"lhs": lhs.to_json_obj(), "rhs": rhs.to_json_obj()}


def _run_cases(
    check_id: str,
    params: dict,
    cases: list[tuple],
    worker: Callable[[tuple], tuple[bool, dict | None]],
    jobs: int = 1,
) -> VerificationReport:
    """Run sorted case keys through the worker; witness the smallest failure."""
    cases = sorted(cases)
    results: list[tuple[tuple, bool, dict | None]] = []
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(worker, cases))
        results = [(c, ok, info) for c, (ok, info) in zip(cases, outs)]
    else:
        for c in cases:
            ok, info = worker(c)
            results.append((c, ok, info))
    witness = None
    status = "PASS"
    for c, ok, info in results:
        if not ok and witness is None:
            status = "FAIL"
            witness = {"case": str(c), **(info or {})}
    return VerificationReport(check_id, params, status, len(cases), witness)


# -- Theorem: GQ in terms of GP ------------------------------------------------


def _gq_to_gp_rhs(mu: StrictPartition, nvars: int, max_deg: int) -> BetaPoly:
    """2^l(mu) sum over vertical-strip extensions with integer 2-powers."""
    total = BetaPoly.zero(nvars, max_deg)
    for lam in vertical_strip_extensions(mu):
        strip = SkewShape(lam, mu)
        st = shape_stats(strip)
        k = strip.size
        sign = (-1) ** (st.cols + k)
        coeff = sign * 2 ** (len(mu) - k)
        term = gp_gq("GP", straight(lam), nvars, max_deg)
        total = total + term.scale(coeff).times_beta(k)
    return total


def _beta_one_weight_sum(polyterms: dict, exps: tuple[int, ...]) -> None:
    polyterms[(exps, 0)] = polyterms.get((exps, 0), 0) + 1


def check_gq_to_gp(max_size: int = 6, nvars: int = 3, max_deg: int = 9, jobs: int = 1) -> VerificationReport:
    """The vertical-strip expansion of GQ, its positivity rule, and the
    beta=1 counting identity over prime-restricted tableaux."""
    mus = enumerate_strict_partitions(max_size)
    maxlen = max((len(m) for m in mus), default=0)
    if nvars < maxlen:
        raise ParameterError(f"nvars={nvars} below the longest index length {maxlen}")
    if max_deg < max_size + maxlen:
        raise ParameterError("max_deg too small for the vertical-strip extensions")
    cases = []
    for mu in mus:
        cases.append((str(mu), "expansion"))
        cases.append((str(mu), "positivity"))
        cases.append((str(mu), "count-beta1"))
    by_name = {str(m): m for m in mus}

    def worker(case: tuple) -> tuple[bool, dict | None]:
        name, kind = case
        mu = by_name[name]
        if kind == "expansion":
            lhs = gp_gq("GQ", straight(mu), nvars, max_deg)
            rhs = _gq_to_gp_rhs(mu, nvars, max_deg)
            return lhs == rhs, None if lhs == rhs else _poly_pair(lhs, rhs)
        if kind == "positivity":
            _, minus = vertical_strip_extensions_signed(mu)
            gaps_ok = all(
                mu.parts[i] - mu.parts[i + 1] >= 2 for i in range(len(mu) - 1)
            )
            ok = (not minus) == gaps_ok
            return ok, None if ok else {"minus": [str(p) for p in minus]}
        # the beta=1 counting identity between restricted tableau sets
        plus, minus = vertical_strip_extensions_signed(mu)
        lterms: dict = {}
        cap = max_deg - mu.size
        for t in iter_tableaux("setshyt_q", straight(mu), nvars, cap):
            exps, _ = weight("setshyt_q", t)
            _beta_one_weight_sum(lterms, exps + (0,) * (nvars - len(exps)))
        for lam in minus:
            for t in iter_restricted_p(lam, mu, nvars, max_deg - lam.size):
                exps, _ = weight("setshyt_q", t)
                _beta_one_weight_sum(lterms, exps + (0,) * (nvars - len(exps)))
        rterms: dict = {}
        for lam in plus:
            for t in iter_restricted_p(lam, mu, nvars, max_deg - lam.size):
                exps, _ = weight("setshyt_q", t)
                _beta_one_weight_sum(rterms, exps + (0,) * (nvars - len(exps)))
        lhs = BetaPoly(nvars, lterms, max_deg)
        rhs = BetaPoly(nvars, rterms, max_deg)
        return lhs == rhs, None if lhs == rhs else _poly_pair(lhs, rhs)

    params = {"max_size": max_size, "nvars": nvars, "max_deg": max_deg}
    return _run_cases("gq-to-gp", params, cases, worker, jobs)


# -- Theorem: skew double-slash expansions and their duals ----------------------


def _same_length_subshapes(nu: StrictPartition) -> list[StrictPartition]:
    return [k for k in subshapes(nu) if len(k) == len(nu)]


def check_skew_expansions(
    max_size: int = 5, nvars: int = 3, max_deg: int = 8, jobs: int = 1
) -> VerificationReport:
    """The double-slash GQ-to-GP expansion and its dual gq-to-gp version."""
    cases = []
    for mu in enumerate_strict_partitions(max_size):
        for nu in subshapes(mu):
            cases.append(("doubleslash", str(mu), str(nu)))
    for lam in enumerate_strict_partitions(max_size):
        for kappa in subshapes(lam):
            cases.append(("dual", str(lam), str(kappa)))

    def worker(case: tuple) -> tuple[bool, dict | None]:
        kind, outer_s, inner_s = case
        outer = StrictPartition.parse(outer_s)
        inner = StrictPartition.parse(inner_s)
        if kind == "doubleslash":
            mu, nu = outer, inner
            lhs = gp_gq_doubleslash("GQ", mu, nu, nvars, max_deg)
            pieces = []
            for kappa in _same_length_subshapes(nu):
                o_nk = shape_stats(SkewShape(nu, kappa)).overlap
                d_nk = nu.size - kappa.size
                for lam in vertical_strip_extensions(mu):
                    st = shape_stats(SkewShape(lam, mu))
                    d_lm = lam.size - mu.size
                    e = len(mu) - len(nu) + o_nk - d_nk - d_lm
                    sign = (-1) ** (st.cols + d_nk + d_lm)
                    pieces.append((e, sign, d_nk + d_lm, lam, kappa))
            scale = max(0, -min((e for e, *_ in pieces), default=0))
            rhs = BetaPoly.zero(nvars, max_deg)
            for e, sign, bpow, lam, kappa in pieces:
                term = gp_gq_doubleslash("GP", lam, kappa, nvars, max_deg)
                rhs = rhs + term.scale(sign * 2 ** (e + scale)).times_beta(bpow)
            lhs = lhs.scale(2**scale)
            return lhs == rhs, None if lhs == rhs else _poly_pair(lhs, rhs)
        lam, kappa = outer, inner
        ny = max(nvars, 1)
        lhs = dual_skew("gq", lam, kappa, ny).truncated(max_deg)
        pieces = []
        for mu in vertical_strip_subsets(lam):
            st = shape_stats(SkewShape(lam, mu))
            d_lm = lam.size - mu.size
            for nu in subshapes(mu):
                if len(nu) != len(kappa) or not contains(kappa, nu):
                    continue
                o_nk = shape_stats(SkewShape(nu, kappa)).overlap
                d_nk = nu.size - kappa.size
                e = len(lam) - len(kappa) + o_nk - d_nk - d_lm
                sign = (-1) ** (st.cols + d_nk + d_lm)
                pieces.append((e, sign, d_nk + d_lm, mu, nu))
        scale = max(0, -min((e for e, *_ in pieces), default=0))
        rhs = BetaPoly.zero(ny, max_deg)
        for e, sign, bpow, mu, nu in pieces:
            term = dual_skew("gp", mu, nu, ny).truncated(max_deg)
            rhs = rhs + term.scale(sign * 2 ** (e + scale)).times_beta(bpow)
        lhs = lhs.scale(2**scale)
        return lhs == rhs, None if lhs == rhs else _poly_pair(lhs, rhs)

    params = {"max_size": max_size, "nvars": nvars, "max_deg": max_deg}
    return _run_cases("skew-expansions", params, cases, worker, jobs)


# -- Lemma: the overlap/cols matrices are inverse --------------------------------


def check_overlap_matrix(max_part: int = 7) -> VerificationReport:
    """M = 2^overlap on same-length containments, N = (-1)^cols on vertical
    strips: M N = N M = I, blockwise by partition length."""
    if max_part > 8:
        raise ParameterError("max_part is capped at 8")
    params = {"max_part": max_part}
    import itertools as it

    cases = 0
    for ell in range(0, max_part + 1):
        idx = [
            StrictPartition(tuple(sorted(c, reverse=True)))
            for c in it.combinations(range(1, max_part + 1), ell)
        ]
        idx.sort(key=StrictPartition.sort_key)
        n = len(idx)

        def m_entry(lam: StrictPartition, mu: StrictPartition) -> int:
            if not contains(mu, lam):
                return 0
            return 2 ** shape_stats(SkewShape(lam, mu)).overlap

        def n_entry(lam: StrictPartition, mu: StrictPartition) -> int:
            if not contains(mu, lam):
                return 0
            st = shape_stats(SkewShape(lam, mu))
            if not st.is_vertical_strip:
                return 0
            return (-1) ** st.cols

        M = [[m_entry(a, b) for b in idx] for a in idx]
        N = [[n_entry(a, b) for b in idx] for a in idx]
        for A, B in ((M, N), (N, M)):
            for i in range(n):
                for j in range(n):
                    v = sum(A[i][k] * B[k][j] for k in range(n))
                    cases += 1
                    if v != (1 if i == j else 0):
                        return VerificationReport(
                            "overlap-matrix",
                            params,
                            "FAIL",
                            cases,
                            {"case": f"length {ell}: ({idx[i]}, {idx[j]})", "value": v},
                        )
    return VerificationReport("overlap-matrix", params, "PASS", cases)


# -- Proposition: flip invariance ------------------------------------------------


def check_flip(max_size: int = 6, nvars: int = 3, max_deg: int = 8, jobs: int = 1) -> VerificationReport:
    cases = []
    for lam in enumerate_strict_partitions(max_size):
        for mu in subshapes(lam):
            cases.append((str(lam), str(mu)))

    def worker(case: tuple) -> tuple[bool, dict | None]:
        lam = StrictPartition.parse(case[0])
        mu = StrictPartition.parse(case[1])
        shape = SkewShape(lam, mu)
        other = flip(shape)
        for flavor in ("GP", "GQ"):
            lhs = gp_gq(flavor, shape, nvars, max_deg)
            rhs = gp_gq(flavor, other, nvars, max_deg)
            if lhs != rhs:
                return False, {"flavor": flavor, "flipped": str(other), **_poly_pair(lhs, rhs)}
        return True, None

    params = {"max_size": max_size, "nvars": nvars, "max_deg": max_deg}
    return _run_cases("flip", params, cases, worker, jobs)


# -- coproduct identities --------------------------------------------------------


def _split_truncate(p: BetaPoly, nx: int, max_deg: int) -> BetaPoly:
    return BetaPoly(p.nvars, p.terms, max_deg, nx)


def check_coproducts(
    max_size: int = 4, nx: int = 2, ny: int = 2, max_deg: int = 6, jobs: int = 1
) -> VerificationReport:
    """Two-alphabet evaluation equals the coproduct sums, for all families."""
    lams = enumerate_strict_partitions(max_size)
    cases = [(fam, str(lam)) for fam in ("GP", "GQ", "gp", "gq", "jp", "jq", "JP", "JQ") for lam in lams]
    n = nx + ny

    def worker(case: tuple) -> tuple[bool, dict | None]:
        fam, lam_s = case
        lam = StrictPartition.parse(lam_s)
        inners = subshapes(lam)
        if fam in ("GP", "GQ"):
            lhs = _split_truncate(gp_gq(fam, straight(lam), n, 2 * max_deg), nx, max_deg)
            rhs = BetaPoly.zero(n, max_deg, nx)
            for nu in inners:
                px = gp_gq(fam, straight(nu), nx, max_deg)
                py = gp_gq_doubleslash(fam, lam, nu, ny, max_deg)
                rhs = rhs + tensor_split(px, py, max_deg)
        elif fam in ("gp", "gq"):
            lhs = _split_truncate(dual_table(fam, lam.size, n)[lam], nx, max_deg)
            rhs = BetaPoly.zero(n, max_deg, nx)
            for nu in inners:
                px = dual_gp_gq(fam, nu, nx).truncated(max_deg)
                py = dual_skew(fam, lam, nu, ny).truncated(max_deg)
                rhs = rhs + tensor_split(px, py, max_deg)
        elif fam in ("jp", "jq"):
            lhs = _split_truncate(jp_jq(fam, lam, EMPTY, n, 2 * max_deg), nx, max_deg)
            rhs = BetaPoly.zero(n, max_deg, nx)
            for nu in inners:
                px = jp_jq(fam, nu, EMPTY, nx, max_deg)
                py = jp_jq(fam, lam, nu, ny, max_deg)
                rhs = rhs + tensor_split(px, py, max_deg)
        else:
            base = {"JP": "GP", "JQ": "GQ"}[fam]
            two = _split_truncate(gp_gq(base, straight(lam), n, 2 * max_deg), nx, max_deg)
            lhs = two.substitute_geometric()
            rhs = BetaPoly.zero(n, max_deg, nx)
            for nu in inners:
                px = cap_jp_jq(fam, nu, EMPTY, nx, max_deg)
                py = cap_jp_jq(fam, lam, nu, ny, max_deg, doubleslash=True)
                rhs = rhs + tensor_split(px, py, max_deg)
        return lhs == rhs, None if lhs == rhs else _poly_pair(lhs, rhs)

    params = {"max_size": max_size, "nx": nx, "ny": ny, "max_deg": max_deg}
    return _run_cases("coproducts", params, cases, worker, jobs)


# -- the Cauchy family -----------------------------------------------------------


def _cached_kernel(nx: int, ny: int, max_deg: int) -> BetaPoly:
    key = ["kernel", nx, ny, max_deg]
    return CACHE.get_or_compute(
        key, lambda: cauchy_kernel(nx, ny, max_deg), BetaPoly.to_json_obj, BetaPoly.from_json_obj
    )


def check_cauchy_family(
    max_size: int = 2, nx: int = 2, ny: int = 2, max_deg: int = 4, jobs: int = 1
) -> VerificationReport:
    """The Cauchy identity, the skew Cauchy identities, and their six
    omega-twisted forms with negated alphabets."""
    kern = _cached_kernel(nx, ny, max_deg)
    yvars = list(range(nx + 1, nx + ny + 1))
    xvars = list(range(1, nx + 1))
    pairs = [
        (str(mu), str(nu))
        for mu in enumerate_strict_partitions(max_size)
        for nu in enumerate_strict_partitions(max_size)
    ]
    cases: list[tuple] = [("kernel", "gp", ""), ("kernel", "gq", "")]
    for mu_s, nu_s in pairs:
        for tag in ("skew-gq", "skew-gp", "a", "b", "c", "d", "e", "f"):
            cases.append((tag, mu_s, nu_s))

    def lam_range(lo: StrictPartition) -> list[StrictPartition]:
        return [
            lam
            for lam in enumerate_strict_partitions(max_deg + lo.size)
            if contains(lo, lam)
        ]

    def worker(case: tuple) -> tuple[bool, dict | None]:
        tag, mu_s, nu_s = case
        if tag == "kernel":
            flavor = mu_s
            basis = "GQ" if flavor == "gp" else "GP"
            total = BetaPoly.zero(nx + ny, max_deg, nx)
            for lam in enumerate_strict_partitions(max_deg):
                if len(lam) > nx:
                    continue
                px = gp_gq(basis, straight(lam), nx, max_deg)
                py = dual_gp_gq(flavor, lam, ny).truncated(max_deg)
                total = total + tensor_split(px, py, max_deg)
            return total == kern, None if total == kern else _poly_pair(total, kern)
        mu = StrictPartition.parse(mu_s)
        nu = StrictPartition.parse(nu_s)
        kappas = [k for k in subshapes(mu) if contains(k, nu)]
        if tag in ("skew-gq", "skew-gp"):
            # GP//*gq pairs under the plain kernel (and the GQ//*gp mirror)
            big, small = ("GP", "gq") if tag == "skew-gq" else ("GQ", "gp")
            lhs = BetaPoly.zero(nx + ny, max_deg, nx)
            for lam in lam_range(mu):
                if not contains(nu, lam):
                    continue
                px = gp_gq_doubleslash(big, lam, mu, nx, max_deg)
                py = dual_skew(small, lam, nu, ny).truncated(max_deg)
                lhs = lhs + tensor_split(px, py, max_deg)
            rhs = BetaPoly.zero(nx + ny, max_deg, nx)
            for kappa in kappas:
                px = gp_gq_doubleslash(big, nu, kappa, nx, max_deg)
                py = dual_skew(small, mu, kappa, ny).truncated(max_deg)
                rhs = rhs + tensor_split(px, py, max_deg)
            rhs = kern * rhs
            return lhs == rhs, None if lhs == rhs else _poly_pair(lhs, rhs)
        # the six omega-twisted identities
        def GPd(fl, a, b, nv):
            return gp_gq_doubleslash(fl, a, b, nv, max_deg)

        def JPd(fl, a, b, nv):
            return GPd({"JP": "GP", "JQ": "GQ"}[fl], a, b, nv).substitute_geometric()

        def jskew(fl, a, b, nv):
            return jp_jq(fl, a, b, nv, max_deg)

        def gskew(fl, a, b, nv):
            return dual_skew(fl, a, b, nv).truncated(max_deg)

        recipe = {
            "a": ("GP", GPd, "jq", jskew, "left", yvars),
            "b": ("GQ", GPd, "jp", jskew, "left", yvars),
            "c": ("JP", JPd, "gq", gskew, "left", xvars),
            "d": ("JQ", JPd, "gp", gskew, "left", xvars),
            "e": ("JP", JPd, "jq", jskew, "right", xvars + yvars),
            "f": ("JQ", JPd, "jp", jskew, "right", xvars + yvars),
        }[tag]
        big, bigfun, small, smallfun, side, negated = recipe
        twisted = kern.negate_vars(negated)
        lhs = BetaPoly.zero(nx + ny, max_deg, nx)
        for lam in lam_range(mu):
            if not contains(nu, lam):
                continue
            px = bigfun(big, lam, mu, nx)
            py = smallfun(small, lam, nu, ny)
            lhs = lhs + tensor_split(px, py, max_deg)
        rhs = BetaPoly.zero(nx + ny, max_deg, nx)
        for kappa in kappas:
            px = bigfun(big, nu, kappa, nx)
            py = smallfun(small, mu, kappa, ny)
            rhs = rhs + tensor_split(px, py, max_deg)
        if side == "left":
            lhs = twisted * lhs
        else:
            rhs = twisted * rhs
        return lhs == rhs, None if lhs == rhs else _poly_pair(lhs, rhs)

    params = {"max_size": max_size, "nx": nx, "ny": ny, "max_deg": max_deg}
    return _run_cases("cauchy", params, cases, worker, jobs)


# -- dual expansion of gq in gp ---------------------------------------------------


def check_dual_expansions(max_size: int = 6, ny: int | None = None, jobs: int = 1) -> VerificationReport:
    lams = enumerate_strict_partitions(max_size)
    if ny is None:
        ny = max(1, _ell_max(max_size))
    cases = [(str(lam), kind) for lam in lams for kind in ("expansion", "positivity")]

    def worker(case: tuple) -> tuple[bool, dict | None]:
        lam = StrictPartition.parse(case[0])
        mus = vertical_strip_subsets(lam)
        if case[1] == "expansion":
            lhs = dual_gp_gq("gq", lam, ny)
            rhs = BetaPoly.zero(ny, None)
            for mu in mus:
                strip = SkewShape(lam, mu)
                st = shape_stats(strip)
                k = strip.size
                coeff = (-1) ** (st.cols + k) * 2 ** (len(lam) - k)
                rhs = rhs + dual_gp_gq("gp", mu, ny).scale(coeff).times_beta(k)
            return lhs == rhs, None if lhs == rhs else _poly_pair(lhs, rhs)
        positive = all(
            (shape_stats(SkewShape(lam, mu)).cols + lam.size - mu.size) % 2 == 0
            for mu in mus
        )
        m = len(lam)
        resid = tuple(
            x for x in (lam.parts[i] - (m - i) for i in range(m)) if x > 0
        )
        staircase_free = all(resid[i] > resid[i + 1] for i in range(len(resid) - 1))
        ok = positive == staircase_free
        return ok, None if ok else {"positive": positive, "residue": list(resid)}

    params = {"max_size": max_size, "ny": ny}
    return _run_cases("dual-expansions", params, cases, worker, jobs)


# -- pointwise symmetrization ------------------------------------------------------


def _random_point(rng: random.Random, nvars: int) -> RationalPoint:
    beta = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
    coords = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(nvars))
    return RationalPoint(beta, coords)


def _sample_regular_point(rng: random.Random, nvars: int, notes: dict) -> RationalPoint:
    while True:
        pt = _random_point(rng, nvars)
        coords_ok = len(set(pt.coords)) == nvars and all(x != 0 for x in pt.coords)
        if coords_ok and all(1 + pt.beta * x != 0 for x in pt.coords):
            return pt
        notes["resampled"] = notes.get("resampled", 0) + 1


def check_symmetrization(trials: int = 20, seed: int = 0) -> VerificationReport:
    """Symmetrized formulas against exact tableau polynomials at random
    rational points, plus the staircase-interval identity pointwise."""
    if trials < 1:
        raise ParameterError("need at least one trial")
    rng = random.Random(seed)
    notes: dict = {}
    shapes_gp = [(1,), (2,), (2, 1), (3, 1), (3, 2)]
    staircases = [
        tuple(range(q, p - 1, -1))
        for q in range(1, 5)
        for p in range(max(1, q - 2), q + 1)
    ]
    cases = 0
    witness = None
    for trial in range(trials):
        for n in (2, 3):
            pt = _sample_regular_point(rng, n, notes)
            for lam in shapes_gp:
                if len(lam) > n:
                    continue
                sp = StrictPartition(lam)
                full_deg = 2 * n * sp.size
                for flavor in ("GP", "GQ"):
                    poly = gp_gq(flavor, straight(sp), n, full_deg)
                    want = poly.eval_rational(pt)
                    got = symmetrization_eval(flavor, lam, n, pt)
                    cases += 1
                    if got != want and witness is None:
                        witness = {
                            "case": f"trial {trial}, {flavor}_{sp}, n={n}",
                            "point": str(pt),
                            "formula": str(got),
                            "tableaux": str(want),
                        }
        n = 4
        pt = _sample_regular_point(rng, n, notes)
        for mu_t in staircases:
            mu = StrictPartition(mu_t)
            if len(mu) > n:
                continue
            b_val = symmetrization_eval("B", mu_t, n, pt)
            total = Fraction(0)
            for lam in vertical_strip_extensions(mu):
                strip = SkewShape(lam, mu)
                st = shape_stats(strip)
                k = strip.size
                a_val = symmetrization_eval("A", lam.parts, n, pt)
                total += (-1) ** st.cols * (-pt.beta / 2) ** k * a_val
            total *= 2 ** len(mu)
            cases += 1
            if b_val != total and witness is None:
                witness = {
                    "case": f"trial {trial}, staircase {mu}",
                    "point": str(pt),
                    "B": str(b_val),
                    "sumA": str(total),
                }
    status = "PASS" if witness is None else "FAIL"
    report = VerificationReport(
        "symmetrization", {"trials": trials, "seed": seed}, status, cases, witness
    )
    report.notes = notes
    return report


# -- the one-row generating series --------------------------------------------------


def check_onerow_series(max_power: int = 4, nvars: int = 2, max_deg: int = 6) -> VerificationReport:
    if max_power > 6:
        raise ParameterError("max_power is capped at 6")
    series = gq_onerow_series(nvars, max_power, max_deg)
    params = {"max_power": max_power, "nvars": nvars, "max_deg": max_deg}
    for n in range(max_power + 1):
        shape = straight(StrictPartition((n,)) if n else EMPTY)
        ref = gp_gq("GQ", shape, nvars, max_deg)
        if series[n] != ref:
            return VerificationReport(
                "onerow-series",
                params,
                "FAIL",
                n + 1,
                {"case": f"u^-{n}", **_poly_pair(series[n], ref)},
            )
    return VerificationReport("onerow-series", params, "PASS", max_power + 1)


# -- conjectures ---------------------------------------------------------------------


def check_conjectures(
    max_size: int = 6,
    nvars: int = 6,
    max_deg: int = 6,
    skew_max_size: int = 4,
    length_cap_size: int = 3,
    jobs: int = 1,
) -> VerificationReport:
    """Conjectural tableau formulas against Cauchy-kernel ground truth.

    Compares shifted reverse plane partition sums with gp/gq and shifted bar
    tableau sums with jp/jq, for straight shapes up to max_size and skew
    shapes up to skew_max_size; also scans product tables for the expected
    vanishing when the index is longer than both factors combined.  Mismatches
    are findings (MISMATCH), never exceptions.
    """
    cases: list[tuple] = []
    for lam in enumerate_strict_partitions(max_size):
        cases.append(("straight", str(lam), ""))
    for lam in enumerate_strict_partitions(skew_max_size):
        for mu in subshapes(lam):
            if mu.parts and mu != lam:
                cases.append(("skew", str(lam), str(mu)))
    for mu in enumerate_strict_partitions(length_cap_size):
        for nu in enumerate_strict_partitions(length_cap_size):
            cases.append(("length-cap", str(mu), str(nu)))

    def worker(case: tuple) -> tuple[bool, dict | None]:
        kind, a_s, b_s = case
        if kind == "length-cap":
            mu = StrictPartition.parse(a_s)
            nu = StrictPartition.parse(b_s)
            cap = mu.size + nu.size + 2
            for k in ("a", "b"):
                table = structure_constants(k, mu, nu, cap)
                for lam, val in table.entries.items():
                    if len(lam) > len(mu) + len(nu) and val != 0:
                        return False, {"kind": k, "index": str(lam), "value": val}
            return True, None
        lam = StrictPartition.parse(a_s)
        mu = StrictPartition.parse(b_s) if kind == "skew" else EMPTY
        shape = SkewShape(lam, mu)
        deg = max_deg
        rpp_p = genfun_from_tableaux("shrpp_p", shape, nvars, deg)
        rpp_q = genfun_from_tableaux("shrpp_q", shape, nvars, deg)
        bar_p = genfun_from_tableaux("shbt_p", shape, nvars, deg)
        bar_q = genfun_from_tableaux("shbt_q", shape, nvars, deg)
        if kind == "straight":
            gp_ref = dual_gp_gq("gp", lam, nvars).truncated(deg)
            gq_ref = dual_gp_gq("gq", lam, nvars).truncated(deg)
        else:
            gp_ref = dual_skew("gp", lam, mu, nvars).truncated(deg)
            gq_ref = dual_skew("gq", lam, mu, nvars).truncated(deg)
        jp_ref = jp_jq("jp", lam, mu, nvars, deg)
        jq_ref = jp_jq("jq", lam, mu, nvars, deg)
        checks = [
            ("rpp-gp", rpp_p, gp_ref),
            ("rpp-gq", rpp_q, gq_ref),
            ("bar-jp", bar_p, jp_ref),
            ("bar-jq", bar_q, jq_ref),
        ]
        for name, lhs, rhs in checks:
            if lhs != rhs:
                return False, {"formula": name, **_poly_pair(lhs, rhs)}
        return True, None

    cases = sorted(cases)
    results = []
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outs = list(pool.map(worker, cases))
        results = list(zip(cases, outs))
    else:
        results = [(c, worker(c)) for c in cases]
    findings = []
    witness = None
    for c, (ok, info) in results:
        findings.append({"case": str(c), "verdict": "MATCH" if ok else "MISMATCH"})
        if not ok and witness is None:
            witness = {"case": str(c), **(info or {})}
    status = "MATCH" if witness is None else "MISMATCH"
    params = {
        "max_size": max_size,
        "nvars": nvars,
        "max_deg": max_deg,
        "skew_max_size": skew_max_size,
        "length_cap_size": length_cap_size,
    }
    report = VerificationReport("conjectures", params, status, len(cases), witness)
    report.findings = findings
    return report


# -- registry and batch runner -------------------------------------------------------


CHECKS: dict[str, Callable[..., VerificationReport]] = {
    "gq-to-gp": check_gq_to_gp,
    "skew-expansions": check_skew_expansions,
    "overlap-matrix": check_overlap_matrix,
    "flip": check_flip,
    "coproducts": check_coproducts,
    "cauchy": check_cauchy_family,
    "dual-expansions": check_dual_expansions,
    "symmetrization": check_symmetrization,
    "onerow-series": check_onerow_series,
    "conjectures": check_conjectures,
}


def run_check(check_id: str, **params) -> VerificationReport:
    if check_id not in CHECKS:
        raise ParameterError(f"unknown check id {check_id!r}; known: {sorted(CHECKS)}")
    try:
        return CHECKS[check_id](**params)
    except TypeError as exc:
        raise ParameterError(str(exc))


def run_manifest(records: Iterable[dict], jobs: int = 1) -> list[VerificationReport]:
    """Execute a batch manifest: a list of {"id": ..., "params": {...}} records."""
    import inspect

    reports = []
    for rec in records:
        params = dict(rec.get("params", {}))
        check = CHECKS.get(rec.get("id", ""))
        if (
            jobs > 1
            and check is not None
            and "jobs" not in params
            and "jobs" in inspect.signature(check).parameters
        ):
            params["jobs"] = jobs
        try:
            reports.append(run_check(rec["id"], **params))
        except KshiftError as exc:
            reports.append(
                VerificationReport(rec.get("id", "?"), rec.get("params", {}), "ERROR", 0, {"error": str(exc)})
            )
    return reports
