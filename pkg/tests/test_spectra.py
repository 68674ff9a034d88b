"""Spectra against definition-level brute force, plus structural invariants."""

import numpy as np
import pytest

from ffspectra.field import make_field
from ffspectra.functions import Monomial, TableFunction, parse_function
from ffspectra.spectra import (classify, ddt_entry, ddt_row_counts,
                               ddt_spectrum, differential_uniformity,
                               fbct_entry, fbct_row_counts, fbct_spectrum,
                               monomial_row_all, monomial_table_from_row,
                               table_csv_lines)


def brute_ddt(F, a, b):
    f = F.field
    return sum(1 for x in range(f.q)
               if f.sub_code(F.eval_code(f.add_code(x, a)), F.eval_code(x)) == b)


def brute_fbct(F, a, b):
    f = F.field
    hits = 0
    for x in range(f.q):
        xab = F.eval_code(f.add_code(f.add_code(x, a), b))
        xb = F.eval_code(f.add_code(x, b))
        xa = F.eval_code(f.add_code(x, a))
        val = f.add_code(f.sub_code(f.sub_code(xab, xb), xa), F.eval_code(x))
        hits += val == 0
    return hits


CASES = [
    (2, 4, "monomial:d=14"),
    (2, 3, "monomial:d=3"),
    (3, 2, "monomial:d=7"),
    (7, 1, "monomial:d=4"),
    (5, 1, "monomial:d=3"),
]


@pytest.mark.parametrize("p,n,fn", CASES)
def test_rows_match_definition(p, n, fn):
    f = make_field(p, n)
    F = parse_function(f, fn)
    for a in range(f.q):
        drow = ddt_row_counts(F, a)
        frow = fbct_row_counts(F, a)
        for b in range(f.q):
            assert drow[b] == brute_ddt(F, a, b), (a, b)
            assert frow[b] == brute_fbct(F, a, b), (a, b)
            assert ddt_entry(F, a, b) == drow[b]
            assert fbct_entry(F, a, b) == frow[b]


def test_random_table_function_rows_match_definition():
    rng = np.random.RandomState(5)
    for p, n in [(2, 3), (5, 1)]:
        f = make_field(p, n)
        F = TableFunction(f, [int(v) for v in rng.randint(0, f.q, f.q)])
        for a in range(f.q):
            drow = ddt_row_counts(F, a)
            frow = fbct_row_counts(F, a)
            for b in range(f.q):
                assert drow[b] == brute_ddt(F, a, b)
                assert frow[b] == brute_fbct(F, a, b)


def test_ddt_rows_sum_to_q():
    for p, n in [(2, 4), (3, 2), (7, 1)]:
        f = make_field(p, n)
        F = Monomial(f, f.q - 2)
        for a in range(f.q):
            assert int(ddt_row_counts(F, a).sum()) == f.q


def test_fbct_symmetry_and_trivial_cells():
    for p, n, d in [(2, 4, 7), (3, 2, 5), (5, 1, 3)]:
        f = make_field(p, n)
        F = Monomial(f, d)
        rows = np.stack([fbct_row_counts(F, a) for a in range(f.q)])
        assert (rows == rows.T).all()          # symmetric in (a, b)
        assert (rows[0] == f.q).all()          # a = 0 row is trivial
        assert (rows[:, 0] == f.q).all()       # b = 0 column is trivial
        if f.char2:
            assert (np.diag(rows) == f.q).all()  # a = b diagonal in char 2


def test_fbct_entries_even_in_char2_off_diagonal():
    f = make_field(2, 4)
    F = Monomial(f, 7)
    for a in range(1, f.q):
        row = fbct_row_counts(F, a)
        for b in range(1, f.q):
            if b != a:
                assert row[b] % 2 == 0


def test_spectrum_reports_and_uniformities():
    f = make_field(2, 4)
    F = Monomial(f, 14)
    rep = fbct_spectrum(F, keep_table=True)
    assert dict(rep.histogram) == {0: 180, 4: 30}
    assert rep.uniformity == 4 and rep.beta == 4
    assert rep.nontrivial_cells == 15 * 14
    assert rep.trivial_cells == 16 * 16 - 15 * 14
    assert rep.table.shape == (16, 16)
    assert dict(rep.trivial_histogram) == {16: 16 + 15 + 15}
    drep = ddt_spectrum(F)
    assert drep.uniformity == differential_uniformity(F) == 4
    assert sum(c for _, c in drep.histogram) == 16 * 15


def test_odd_characteristic_uniformity_includes_diagonal():
    f = make_field(7, 1)
    F = Monomial(f, 4)
    rep = fbct_spectrum(F)
    assert rep.beta is None
    assert rep.nontrivial_cells == 6 * 6
    grid_max = max(int(fbct_row_counts(F, a)[1:].max()) for a in range(1, 7))
    assert rep.uniformity == grid_max == 2


def test_spectrum_json_schema():
    f = make_field(2, 3)
    F = Monomial(f, 3)
    obj = fbct_spectrum(F, keep_table=True).to_json_obj()
    assert set(obj) == {"field", "function", "kind", "histogram", "uniformity",
                        "beta", "trivial_histogram", "nontrivial_cells",
                        "trivial_cells", "full_table"}
    assert obj["kind"] == "fbct"
    assert obj["function"] == "monomial:d=3"
    assert obj["histogram"] == [{"value": 0, "count": 42}]
    obj2 = fbct_spectrum(F).to_json_obj()
    assert "full_table" not in obj2


def test_worker_counts_agree():
    f = make_field(2, 5)
    F = Monomial(f, 11)
    one = fbct_spectrum(F, workers=1)
    two = fbct_spectrum(F, workers=2)
    assert one.histogram == two.histogram
    assert ddt_spectrum(F, workers=2).histogram == ddt_spectrum(F).histogram


def test_fbct_methods_agree_for_monomials():
    f = make_field(2, 5)
    F = Monomial(f, 7)
    assert fbct_spectrum(F, method="monomial").histogram == \
        fbct_spectrum(F, method="entrywise").histogram
    with pytest.raises(TypeError):
        fbct_spectrum(TableFunction(f, list(range(f.q))), method="monomial")


def test_monomial_row_expansion():
    for p, n, d in [(2, 4, 14), (3, 2, 5)]:
        f = make_field(p, n)
        F = Monomial(f, d)
        row1 = monomial_row_all(F)
        assert (row1 == fbct_row_counts(F, 1)).all()
        table = monomial_table_from_row(F)
        for a in range(f.q):
            assert (table[a] == fbct_row_counts(F, a)).all()


def test_classify_flags():
    sq = classify(Monomial(make_field(3, 3), 2))
    assert sq.is_pn and sq.differential_uniformity == 1
    # the prime-subfield derivative of a quadratic map is constant, so the
    # at-most-p-solutions criterion fails at that constant
    assert sq.is_gapn is False
    cube = classify(Monomial(make_field(2, 5), 3))
    assert cube.is_apn and not cube.is_pn
    assert cube.is_gapn is True  # in characteristic 2 the two notions agree
    inv16 = classify(Monomial(make_field(2, 4), 14))
    assert inv16.differential_uniformity == 4
    assert inv16.is_locally_apn is True
    lin = classify(Monomial(make_field(2, 4), 2))
    assert lin.differential_uniformity == 16


def test_table_csv_lines_shape():
    f = make_field(2, 2)
    rep = fbct_spectrum(Monomial(f, 3), keep_table=True)
    lines = table_csv_lines(rep.table)
    assert lines[0] == "a,b,value"
    assert len(lines) == 1 + 16
    assert lines[1] == "0,0,4"
