"""Field arithmetic: exact tables, algebraic laws, and special elements."""

import numpy as np
import pytest

from ffspectra.field import (Field, FieldError, make_field, omega,
                             quadratic_character, solve_quadratic,
                             special_elements, trace)

FIELDS = [(2, 1), (2, 4), (2, 5), (3, 1), (3, 3), (5, 2), (7, 1), (11, 1)]


@pytest.fixture(params=FIELDS, ids=lambda pn: f"GF({pn[0]}^{pn[1]})")
def field(request):
    p, n = request.param
    return make_field(p, n)


def test_modulus_is_deterministic_and_monic():
    f1 = make_field(2, 8)
    f2 = make_field(2, 8)
    assert f1.modulus == f2.modulus
    assert f1.modulus[-1] == 1
    assert len(f1.modulus) == 9


def test_custom_modulus_round_trips():
    f = make_field(2, 4, [1, 0, 0, 1, 1])  # x^4 + x^3 + 1, also irreducible
    assert f.modulus_text() == "1,0,0,1,1"
    # x * x^3 = x^4 = x^3 + 1 under this modulus
    assert f.mul_code(2, 8) == 8 + 1


def test_reducible_modulus_rejected():
    with pytest.raises(FieldError):
        make_field(2, 4, [1, 0, 0, 0, 1])  # x^4 + 1 = (x + 1)^4
    with pytest.raises(FieldError):
        make_field(4, 2)  # characteristic must be prime


def test_ring_laws_on_all_pairs(field):
    f = field
    q = f.q
    xs = range(q) if q <= 32 else np.random.RandomState(7).randint(0, q, 30)
    for x in xs:
        x = int(x)
        assert f.add_code(x, 0) == x
        assert f.mul_code(x, 1 % q) == x
        assert f.add_code(x, f.neg_code(x)) == 0
        if x:
            assert f.mul_code(x, f.inv_code(x)) == 1
        for y in (0, 1 % q, x, f.neg_code(x), (x * 7 + 3) % q):
            assert f.add_code(x, y) == f.add_code(y, x)
            assert f.mul_code(x, y) == f.mul_code(y, x)
            z = (x * 5 + y + 11) % q
            assert f.mul_code(x, f.add_code(y, z)) == \
                f.add_code(f.mul_code(x, y), f.mul_code(x, z))
            assert f.mul_code(f.mul_code(x, y), z) == \
                f.mul_code(x, f.mul_code(y, z))


def test_inverse_of_zero_is_zero(field):
    assert field.inv_code(0) == 0


def test_pow_matches_repeated_multiplication(field):
    f = field
    for x in range(min(f.q, 16)):
        acc = 1 % f.q
        for e in range(1, 6):
            acc = f.mul_code(acc, x)
            assert f.pow_code(x, e) == acc
    # Fermat: x^q = x
    for x in range(min(f.q, 40)):
        assert f.pow_code(x, f.q) == x


def test_generator_has_full_order(field):
    f = field
    tb = f.tables()
    g = int(tb.gen)
    seen = set()
    acc = 1 % f.q
    for _ in range(f.q - 1):
        seen.add(acc)
        acc = f.mul_code(acc, g)
    assert len(seen) == f.q - 1 and acc == 1 % f.q


def test_exp_log_tables_agree(field):
    tb = field.tables()
    for x in range(1, field.q):
        assert int(tb.exp[int(tb.log[x])]) == x


def test_frobenius_table(field):
    f = field
    tb = f.tables()
    for x in range(f.q):
        assert int(tb.frob[x]) == f.pow_code(x, f.p)


def test_trace_is_linear_and_balanced(field):
    f = field
    vals = [f.trace_code(x) for x in range(f.q)]
    assert all(0 <= v < f.p for v in vals)
    counts = np.bincount(vals, minlength=f.p)
    assert (counts == f.q // f.p).all()
    for x in range(min(f.q, 20)):
        assert f.trace_code(f.pow_code(x, f.p)) == f.trace_code(x)
        for y in range(min(f.q, 20)):
            assert f.trace_code(f.add_code(x, y)) == \
                (f.trace_code(x) + f.trace_code(y)) % f.p


def test_quadratic_character_odd_fields():
    for p, n in [(3, 2), (5, 1), (7, 1), (11, 1), (3, 3)]:
        f = make_field(p, n)
        q = f.q
        etas = [f.eta_code(x) for x in range(q)]
        assert etas[0] == 0
        assert sum(1 for e in etas if e == 1) == (q - 1) // 2
        assert sum(1 for e in etas if e == -1) == (q - 1) // 2
        for x in range(1, q):
            # eta is the {-1, 1}-valued image of x^((q-1)/2)
            power = f.pow_code(x, (q - 1) // 2)
            assert etas[x] == (1 if power == 1 else -1)
            for y in range(1, q):
                assert etas[f.mul_code(x, y)] == etas[x] * etas[y]
        assert quadratic_character(f.from_code(2 % q)) == etas[2 % q]


def test_quadratic_character_rejected_in_char2():
    with pytest.raises(FieldError):
        make_field(2, 3).eta_code(1)


def test_solve_quadratic_matches_root_scan():
    rng = np.random.RandomState(11)
    for p, n in [(2, 4), (2, 5), (3, 2), (5, 1), (7, 1), (5, 2)]:
        f = make_field(p, n)
        for _ in range(40):
            A = f.from_code(int(rng.randint(1, f.q)))
            B = f.from_code(int(rng.randint(0, f.q)))
            C = f.from_code(int(rng.randint(0, f.q)))
            got = {r.code for r in solve_quadratic(A, B, C)}
            want = {x for x in range(f.q)
                    if (A * f.from_code(x) * f.from_code(x)
                        + B * f.from_code(x) + C).code == 0}
            assert got == want


def test_omega_is_a_primitive_cube_root():
    for p, n in [(2, 4), (2, 6), (7, 1), (13, 1), (5, 2)]:
        f = make_field(p, n)
        w = omega(f)
        assert w.code != 1 % f.q
        assert (w * w * w).code == 1
        assert (w * w + w + f.one).code == 0
    with pytest.raises(FieldError):
        omega(make_field(2, 5))  # 3 does not divide 31
    roots = special_elements(make_field(2, 5), "cube_roots_of_unity")
    assert [r.code for r in roots] == [1]


def test_element_text_round_trip(field):
    f = field
    for x in range(min(f.q, 30)):
        e = f.from_code(x)
        assert f.from_text(e.text).code == x
        assert f.from_coeffs(e.coeffs).code == x
    assert f.from_coeffs([f.p]).code == 0  # coefficients reduce mod p
    with pytest.raises(FieldError):
        f.from_code(f.q)
    with pytest.raises(FieldError):
        f.from_text("not-a-number")


def test_vectorized_ops_match_scalars(field):
    f = field
    q = f.q
    rng = np.random.RandomState(3)
    xs = rng.randint(0, q, 50).astype(np.int64)
    ys = rng.randint(0, q, 50).astype(np.int64)
    assert all(int(v) == f.add_code(int(x), int(y))
               for v, x, y in zip(f.vadd(xs, ys), xs, ys))
    assert all(int(v) == f.mul_code(int(x), int(y))
               for v, x, y in zip(f.vmul(xs, ys), xs, ys))
    assert all(int(v) == f.sub_code(int(x), int(y))
               for v, x, y in zip(f.vsub(xs, ys), xs, ys))
    assert all(int(v) == f.inv_code(int(x)) for v, x in zip(f.vinv(xs), xs))
    assert all(int(v) == f.pow_code(int(x), 5) for v, x in zip(f.vpow(xs, 5), xs))


def test_element_operators(field):
    f = field
    a = f.from_code(1 % f.q)
    b = f.from_code(min(2, f.q - 1))
    assert (a + b - b).code == a.code
    assert (a * b).code == f.mul_code(a.code, b.code)
    if b.code:
        assert ((a / b) * b).code == a.code
    assert (b ** 3).code == f.pow_code(b.code, 3)
    assert bool(f.zero) is False and bool(f.one) is True


def test_trace_helper_matches_method(field):
    x = field.from_code(min(3, field.q - 1))
    assert trace(x) == field.trace_code(x.code)


def test_scalar_mul_code(field):
    f = field
    for x in range(min(f.q, 12)):
        acc = 0
        for k in range(f.p + 2):
            assert f.scalar_mul_code(k, x) == acc
            acc = f.add_code(acc, x)


def test_cross_field_operands_rejected():
    a = make_field(2, 4).one
    b = make_field(2, 5).one
    with pytest.raises(FieldError):
        _ = a + b
