import pytest

from kshift.errors import InvalidShapeError
from kshift.polyring import BetaPoly
from kshift.shapes import EMPTY, SkewShape, StrictPartition, straight, subshapes, enumerate_strict_partitions
from kshift.tableaux import (
    BarTableau,
    SetValuedTableau,
    ShiftedTableau,
    genfun_from_tableaux,
    iter_restricted_p,
    iter_tableaux,
    iter_tableaux_chunks,
    onerow_map,
    weight,
)


def sp(*parts):
    return StrictPartition(tuple(parts))


def test_enumerate_counts():
    one = straight(sp(1))
    assert [t.text() for t in iter_tableaux("setshyt_q", one, 1)] == ["{1'}", "{1'1}", "{1}"]
    assert sum(1 for _ in iter_tableaux("shrpp_p", straight(sp(2, 1)), 2)) == 5
    for fam in ("shyt_p", "setshyt_q", "shrpp_q", "shbt_p"):
        empty = SkewShape(sp(2, 1), sp(2, 1))
        assert sum(1 for _ in iter_tableaux(fam, empty, 2)) == 1


def test_enumerate_unique_and_chunked():
    shape = straight(sp(2, 1))
    ts = list(iter_tableaux("setshyt_p", shape, 2, 2))
    assert len(ts) == len(set(ts))
    chunked = [t for _, group in iter_tableaux_chunks("setshyt_p", shape, 2, 2) for t in group]
    assert chunked == ts


def test_enumerate_invalid_shape():
    with pytest.raises(InvalidShapeError):
        list(iter_tableaux("shyt_p", SkewShape(sp(1), sp(2)), 1))


def test_weight_shifted_example():
    # rows from the bottom: [1, 2', 3', 3], [2, 3'], [4]
    ent = {(1, 1): 2, (1, 2): 3, (1, 3): 5, (1, 4): 6, (2, 2): 4, (2, 3): 5, (3, 3): 8}
    t = ShiftedTableau(straight(sp(4, 2, 1)), tuple(sorted(ent.items())))
    exps, size = weight("shyt_p", t)
    assert exps == (1, 2, 3, 1)
    assert size == 7


def test_weight_rpp_example():
    # shape (5,3,2,1)/(4,1): both fillings from the running example weigh x1^3 x2 x4
    shape = SkewShape(sp(5, 3, 2, 1), sp(4, 1))
    ent1 = {(1, 5): 7, (2, 3): 1, (2, 4): 2, (3, 3): 1, (3, 4): 4, (4, 4): 4}
    from kshift.tableaux import ReversePlanePartition

    t1 = ReversePlanePartition(shape, tuple(sorted(ent1.items())))
    exps, size = weight("shrpp_q", t1)
    assert exps == (3, 1, 0, 1)
    assert size == 5
    ent2 = {(1, 5): 8, (2, 3): 1, (2, 4): 2, (3, 3): 1, (3, 4): 2, (4, 4): 3}
    t2 = ReversePlanePartition(shape, tuple(sorted(ent2.items())))
    exps2, _ = weight("shrpp_p", t2)
    assert exps2 == (3, 1, 0, 1)


def test_weight_bar_example():
    # the five-block colored example of shape (5,3)
    fill = {(1, 1): 2, (1, 2): 2, (1, 3): 2, (1, 4): 5, (1, 5): 6, (2, 2): 4, (2, 3): 4, (2, 4): 5}
    blocks = (((1, 1), (1, 2)), ((1, 3),), ((1, 4), (2, 4)), ((1, 5),), ((2, 2), (2, 3)))
    t = BarTableau(
        ShiftedTableau(straight(sp(5, 3)), tuple(sorted(fill.items()))),
        tuple(sorted(blocks)),
    )
    exps, size = weight("shbt_p", t)
    assert exps == (2, 1, 2)
    assert size == 5


def test_genfun_examples():
    got = genfun_from_tableaux("setshyt_p", straight(sp(1)), 2, 4)
    want = BetaPoly(2, {((1, 0), 0): 1, ((0, 1), 0): 1, ((1, 1), 1): 1}, 4)
    assert got == want
    empty = genfun_from_tableaux("setshyt_q", SkewShape(sp(2), sp(2)), 2, 4)
    assert empty == BetaPoly.const(2, 1, 4)


def test_genfun_symmetry():
    for lam in enumerate_strict_partitions(4):
        if not lam.parts:
            continue
        for fam in ("setshyt_p", "setshyt_q", "shrpp_p", "shrpp_q", "shbt_p", "shbt_q"):
            p = genfun_from_tableaux(fam, straight(lam), 3, lam.size + 2)
            assert p.is_symmetric(), (fam, lam)


def test_setvalued_beta_zero_is_single_valued():
    for lam in enumerate_strict_partitions(4):
        shape = straight(lam)
        for sv, single in (("setshyt_p", "shyt_p"), ("setshyt_q", "shyt_q")):
            a = genfun_from_tableaux(sv, shape, 3, lam.size + 2).beta_zero()
            b = genfun_from_tableaux(single, shape, 3, lam.size + 2)
            assert a == b


def test_q_is_power_of_two_times_p():
    for lam in enumerate_strict_partitions(4):
        p = genfun_from_tableaux("shyt_p", straight(lam), 3, None)
        q = genfun_from_tableaux("shyt_q", straight(lam), 3, None)
        assert q == p.scale(2 ** len(lam))


def test_bar_fixed_filling_weight_identity():
    # with the filling fixed, summing x^T over bar partitions gives
    # prod_i x_i^(r_i+c_i) (x_i+1)^(m_i-r_i-c_i)
    from kshift.tableaux import _iter_single, code_value, is_primed

    nvars = 2
    for lam, mu in ((sp(3, 1), EMPTY), (sp(2, 1), EMPTY), (sp(3, 2), sp(2))):
        shape = SkewShape(lam, mu)
        cells = shape.cells()
        fillings = list(_iter_single(shape, nvars, p_flavor=False, rpp=False))
        for filling in fillings:
            by_v: dict[int, list] = {}
            for cell, code in filling.items():
                by_v.setdefault(code_value(code), []).append((cell, code))
            want = BetaPoly.const(nvars, 1, None)
            for v, items in by_v.items():
                rows = {c[0][0] for c in items if not is_primed(c[1])}
                cols = {c[0][1] for c in items if is_primed(c[1])}
                m = len(items)
                xv = BetaPoly.variable(v, nvars)
                one = BetaPoly.const(nvars, 1)
                want = want * xv ** (len(rows) + len(cols)) * (xv + one) ** (m - len(rows) - len(cols))
            total = BetaPoly.zero(nvars, None)
            for t in iter_tableaux("shbt_q", shape, nvars):
                if dict(t.filling.entries) != filling:
                    continue
                exps, _ = weight("shbt_q", t)
                mono = exps + (0,) * (nvars - len(exps))
                total = total + BetaPoly.monomial(nvars, mono)
            assert total == want


def test_onerow_map_paper_example():
    t = SetValuedTableau(
        straight(sp(3)),
        (((1, 1), (2, 3, 5, 6)), ((1, 2), (6, 8)), ((1, 3), (9,))),
    )
    tag, image = onerow_map(t)
    assert tag == "moved"
    assert image.text() == "{12}{3'3}{34}{5'}"


def test_onerow_map_fixes_unprimed():
    t = SetValuedTableau(straight(sp(2)), (((1, 1), (2,)), ((1, 2), (2, 4))))
    tag, image = onerow_map(t)
    assert tag == "fixed" and image == t


def test_onerow_map_is_weight_preserving_bijection():
    for n in (1, 2, 3):
        max_value = 3
        domain = list(iter_tableaux("setshyt_q", straight(sp(n)), max_value))
        fixed_target = {
            t.entries for t in iter_restricted_p(sp(n), sp(n), max_value)
        }
        moved_target = {
            t.entries for t in iter_tableaux("setshyt_p", straight(sp(n + 1)), max_value)
        }
        seen = set()
        for t in domain:
            tag, image = onerow_map(t)
            assert weight("setshyt_q", t)[0] == weight("setshyt_q", image)[0]
            key = (tag, image.entries)
            assert key not in seen
            seen.add(key)
            if tag == "fixed":
                assert image.entries in fixed_target
            else:
                assert image.entries in moved_target
        got_fixed = {e for tag, e in seen if tag == "fixed"}
        got_moved = {e for tag, e in seen if tag == "moved"}
        assert got_fixed == fixed_target
        assert got_moved == moved_target


def test_restricted_family_examples():
    texts = [t.text() for t in iter_restricted_p(sp(1), sp(1), 1)]
    assert texts == ["{1'}", "{1}"]
    # with all parts strictly bigger, the restriction is plain P
    lam, mu = sp(3, 1), sp(2)
    with pytest.raises(InvalidShapeError):
        list(iter_restricted_p(lam, mu, 2))
    lam, mu = sp(3, 2), sp(2, 1)
    rest = {t.entries for t in iter_restricted_p(lam, mu, 2)}
    plain = {t.entries for t in iter_tableaux("setshyt_p", straight(lam), 2)}
    assert rest == plain


def test_restricted_gf_doubles_per_marked_row():
    # toggling the prime on the top diagonal element of each marked row is a
    # 2-to-1 weight-preserving cover, so the restricted generating function is
    # 2^(marked rows) times the plain P generating function
    for lam, mu in ((sp(2, 1), sp(2, 1)), (sp(3, 1), sp(3, 1)), (sp(3, 1), sp(2, 1))):
        marked = sum(1 for i in range(1, len(lam) + 1) if lam.part(i) == mu.part(i))
        nvars = 2
        terms: dict = {}
        for t in iter_restricted_p(lam, mu, nvars):
            exps, size = weight("setshyt_q", t)
            key = (exps + (0,) * (nvars - len(exps)), size - lam.size)
            terms[key] = terms.get(key, 0) + 1
        got = BetaPoly(nvars, terms, None)
        want = genfun_from_tableaux("setshyt_p", straight(lam), nvars, None).scale(2**marked)
        assert got == want
