import itertools
import random
from fractions import Fraction

import pytest

from kerovlab.partitions import enumerate_partitions
from kerovlab.symfunc import (
    SymFunc,
    m_scalar_specialize,
    p_scalar_specialize,
    phi_hat,
)

NVARS = 7

# ---------------------------------------------------------------------------
# independent oracle: expand symmetric functions as explicit polynomials in
# NVARS variables (dict exponent-tuple -> coefficient), straight from the
# definitions of m / p / e / h
# ---------------------------------------------------------------------------


def poly_mul(f, g):
    out = {}
    for ea, ca in f.items():
        for eb, cb in g.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def expand_gen(basis, n):
    one = {(0,) * NVARS: Fraction(1)}
    if n == 0:
        return one
    if basis == "p":
        return {
            tuple(n if i == j else 0 for i in range(NVARS)): Fraction(1)
            for j in range(NVARS)
        }
    if basis == "e":
        return {
            tuple(1 if i in picks else 0 for i in range(NVARS)): Fraction(1)
            for picks in itertools.combinations(range(NVARS), n)
        }
    if basis == "h":
        out = {}
        for picks in itertools.combinations_with_replacement(range(NVARS), n):
            expo = [0] * NVARS
            for i in picks:
                expo[i] += 1
            out[tuple(expo)] = Fraction(1)
        return out
    raise ValueError(basis)


def expand_m(lam):
    expos = set(itertools.permutations(lam + (0,) * (NVARS - len(lam))))
    return {e: Fraction(1) for e in expos}


def expand_symfunc(f):
    total = {}
    for lam, c in f.terms.items():
        if f.basis == "m":
            if len(lam) > NVARS:
                continue
            term = expand_m(lam)
        else:
            term = {(0,) * NVARS: Fraction(1)}
            for part in lam:
                term = poly_mul(term, expand_gen(f.basis, part))
        for e, v in term.items():
            total[e] = total.get(e, 0) + c * v
    return {k: v for k, v in total.items() if v}


def random_symfunc(rng, basis, max_deg=6, nterms=4):
    terms = {}
    for _ in range(nterms):
        d = rng.randint(0, max_deg)
        lams = enumerate_partitions(d)
        lam = lams[rng.randrange(len(lams))]
        if basis == "m" and len(lam) > NVARS:
            continue
        terms[lam] = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
    return SymFunc(basis, terms)


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------


def test_classical_conversion_examples():
    e2 = SymFunc.gen("e", 2).convert("p")
    assert e2.terms == {(1, 1): Fraction(1, 2), (2,): Fraction(-1, 2)}
    assert SymFunc.gen("p", 2).convert("m").terms == {(2,): 1}
    assert SymFunc.gen("h", 2).convert("e").terms == {(1, 1): 1, (2,): -1}


def test_generator_conversions_match_polynomial_expansion():
    for basis in ("p", "e", "h", "m"):
        for n in range(0, 7):
            f = SymFunc.gen(basis, n) if basis != "m" else SymFunc("m", {(n,) if n else (): 1})
            want = expand_symfunc(f)
            for target in ("p", "e", "h", "m"):
                assert expand_symfunc(f.convert(target)) == want, (basis, n, target)


def test_roundtrips_on_random_functions():
    rng = random.Random(42)
    for basis in ("m", "p", "e", "h"):
        for _ in range(6):
            f = random_symfunc(rng, basis, max_deg=10 if basis != "m" else 8)
            for target in ("m", "p", "e", "h"):
                assert f.convert(target).convert(basis) == f, (basis, target)


def test_mixed_degree_conversion():
    f = SymFunc("m", {(3, 1): Fraction(2, 3), (2,): -1, (): 5})
    g = f.convert("h").convert("e").convert("p").convert("m")
    assert g == f


def test_multiply_spec_examples():
    p2, p1 = SymFunc.gen("p", 2), SymFunc.gen("p", 1)
    assert (p2 * p1).terms == {(2, 1): 1}
    e1 = SymFunc.gen("e", 1)
    assert (e1 * e1).convert("m").terms == {(2,): 1, (1, 1): 2}
    one = SymFunc.constant(1, "e")
    f = SymFunc("e", {(2, 1): Fraction(3, 7)})
    assert (one * f) == f


def test_multiply_matches_polynomial_expansion():
    rng = random.Random(5)
    for _ in range(5):
        f = random_symfunc(rng, "e", max_deg=4, nterms=3)
        g = random_symfunc(rng, "h", max_deg=4, nterms=3)
        assert expand_symfunc(f * g.convert("e")) == poly_mul(expand_symfunc(f), expand_symfunc(g))


# ---------------------------------------------------------------------------
# evaluation and scalar specializations
# ---------------------------------------------------------------------------


def test_evaluate_spec_examples():
    assert SymFunc("m", {(2, 1): 1}).evaluate((3, 1)) == 12
    assert SymFunc.gen("p", 2).evaluate((2, 2)) == 8
    assert SymFunc("m", {(1, 1, 1): 1}).evaluate((2, 1)) == 0


def test_evaluate_is_ring_homomorphism():
    rng = random.Random(99)
    vectors = [(3, 1), (2, 2, 1), (5,), (4, 4, 2, 1)]
    for _ in range(6):
        f = random_symfunc(rng, "p", max_deg=6, nterms=3)
        g = random_symfunc(rng, "e", max_deg=6, nterms=3)
        for v in vectors:
            assert (f * g.convert("p")).evaluate(v) == f.evaluate(v) * g.evaluate(v)


def test_p_scalar_specialize():
    assert p_scalar_specialize((2, 1), 3) == 9
    assert p_scalar_specialize((), Fraction(7, 2)) == 1
    assert p_scalar_specialize((5,), -2) == -2


def test_m_scalar_specialize():
    assert m_scalar_specialize((1, 1), 3) == 3
    assert m_scalar_specialize((2,), Fraction(5, 3)) == Fraction(5, 3)
    assert m_scalar_specialize((2, 1), 2) == 2


def test_m_scalar_specialize_matches_all_ones_vector():
    for n in range(0, 7):
        for mu in enumerate_partitions(n):
            for t in range(len(mu), 7):
                ones = (1,) * t
                assert m_scalar_specialize(mu, t) == SymFunc("m", {mu: 1}).evaluate(ones)


def test_phi_hat_spec_examples():
    assert phi_hat(1, 0, 0, 9).terms == {(): Fraction(1, 2)}
    ph = phi_hat(0, 0, 1, 2)
    assert ph.terms == {(): Fraction(1, 3), (2,): Fraction(1, 12)}
    assert ph.evaluate((2,)) == Fraction(2, 3)
    # 3! * phi_hat value at (2) recovers the brute-force i^2-weighted triple
    # convolution coefficient: sum_{i+j+k=2} i^2 C_i C_j C_k = 4 C_2
    assert 6 * ph.evaluate((2,)) == 4


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def test_text_form_sorted_by_degree_then_revlex():
    f = SymFunc("m", {(3, 1): Fraction(8, 5760), (4,): Fraction(3, 5760)})
    assert f.to_text() == "1/1920*m[4] + 1/720*m[3,1]"
    assert SymFunc.zero().to_text() == "0"


def test_json_roundtrip():
    f = SymFunc("h", {(2, 2): Fraction(-3, 7), (): 2, (5, 1): 1})
    data = f.to_json_dict()
    assert SymFunc.from_json_dict(data) == f
    assert data["basis"] == "h"
    assert data["terms"][0]["partition"] == [5, 1]


def test_constructor_validation():
    with pytest.raises(ValueError):
        SymFunc("x", {})
    with pytest.raises(ValueError):
        SymFunc("m", {(1, 2): 1})
    assert SymFunc("m", {(2,): 0}).is_zero()
