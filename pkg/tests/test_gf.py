"""Finite field tables: exhaustive axioms at small sizes, pinned moduli,
and an independent irreducibility check for the modulus search."""

import pytest

from csection.gf import MAX_FIELD_SIZE, FieldTable, field_make, smallest_irreducible

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3), (2, 4), (5, 2)]


@pytest.mark.parametrize("p,f", FIELDS)
def test_field_axioms_exhaustive(p, f):
    F = field_make(p, f)
    els = list(F.elements())
    assert els == list(range(p ** f))
    for a in els:
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.mul(a, 0) == 0
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
    for a in els:
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            assert F.sub(a, b) == F.add(a, F.neg(b))
            for c in els:
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))


def test_pinned_moduli():
    assert field_make(2, 2).modulus == (1, 1, 1)
    assert field_make(2, 3).modulus == (1, 1, 0, 1)
    assert field_make(3, 2).modulus == (1, 0, 1)
    assert field_make(2, 4).modulus == (1, 1, 0, 0, 1)


def test_arithmetic_spot_values():
    # GF(4): x * x = x + 1 under x^2 + x + 1
    assert field_make(2, 2).mul(2, 2) == 3
    # GF(3): 2 * 2 = 1
    assert field_make(3).mul(2, 2) == 1
    # GF(8): x^2 * x = x + 1 under x^3 + x + 1
    F8 = field_make(2, 3)
    assert F8.mul(F8.mul(2, 2), 2) == 3
    # GF(9): x * x = -1 = 2 under x^2 + 1
    assert field_make(3, 2).mul(3, 3) == 2
    # GF(9) addition is coefficient-wise: x + 1 encodes as 4
    assert field_make(3, 2).add(3, 1) == 4


@pytest.mark.parametrize("p,f", [(2, 3), (3, 2), (2, 4), (7, 1)])
def test_pow_matches_repeated_multiplication(p, f):
    F = field_make(p, f)
    for a in F.elements():
        acc = 1
        for e in range(2 * F.q):
            assert F.pow(a, e) == acc
            acc = F.mul(acc, a)
    for a in range(1, F.q):
        assert F.pow(a, -1) == F.inv(a)
        assert F.pow(a, F.q - 1) == 1


@pytest.mark.parametrize("p,f,phi", [(2, 3, 6), (3, 2, 4), (7, 1, 2), (2, 4, 8)])
def test_multiplicative_structure(p, f, phi):
    F = field_make(p, f)
    q = F.q
    orders = [F.multiplicative_order(a) for a in range(1, q)]
    assert all((q - 1) % o == 0 for o in orders)
    # primitive element count is Euler phi of q-1
    assert sum(1 for o in orders if o == q - 1) == phi
    g = F.primitive_element()
    assert F.multiplicative_order(g) == q - 1
    powers = {F.pow(g, e) for e in range(q - 1)}
    assert powers == set(range(1, q))


def test_error_paths():
    with pytest.raises(ZeroDivisionError):
        field_make(5).inv(0)
    with pytest.raises(ValueError):
        field_make(5).multiplicative_order(0)
    with pytest.raises(ValueError, match="not prime"):
        FieldTable(4, 1)
    with pytest.raises(ValueError, match="field size"):
        FieldTable(2, 17)
    assert 2 ** 16 == MAX_FIELD_SIZE
    with pytest.raises(ValueError, match="reducible"):
        FieldTable(2, 2, modulus=(1, 0, 1))  # x^2 + 1 = (x+1)^2 over GF(2)
    with pytest.raises(ValueError, match="monic"):
        FieldTable(2, 2, modulus=(1, 1))


# independent polynomial arithmetic for the irreducibility cross-check

def _ptrim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _pmod(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], p - 2, p)
    while len(_ptrim(a)) >= len(b):
        a = _ptrim(a)
        shift = len(a) - len(b)
        factor = (a[-1] * inv_lead) % p
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - factor * bi) % p
    return _ptrim(a)


def _monic_polys(p, deg):
    out = []
    total = p ** deg
    for enc in range(total):
        coeffs = []
        n = enc
        for _ in range(deg):
            coeffs.append(n % p)
            n //= p
        out.append(coeffs + [1])
    return out


def _naive_irreducible(poly, p):
    f = len(poly) - 1
    for d in range(1, f // 2 + 1):
        for g in _monic_polys(p, d):
            if not _pmod(poly, g, p):
                return False
    return True


@pytest.mark.parametrize("p,f", [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_smallest_irreducible_against_naive_filter(p, f):
    got = smallest_irreducible(p, f)
    assert len(got) == f + 1 and got[-1] == 1
    assert _naive_irreducible(list(got), p)
    # nothing smaller in the integer encoding is irreducible
    enc_got = sum(c * p ** i for i, c in enumerate(got[:-1]))
    for enc in range(enc_got):
        coeffs = []
        n = enc
        for _ in range(f):
            coeffs.append(n % p)
            n //= p
        assert not _naive_irreducible(coeffs + [1], p)


def test_smallest_irreducible_degree_one():
    assert smallest_irreducible(5, 1) == (0, 1)
    assert field_make(7).modulus == (0, 1)
