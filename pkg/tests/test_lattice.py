import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpbw import catalog
from qpbw import lattice as lat
from qpbw.lattice import LatticeVector as V
from qpbw.qcoeff import ONE, qpow


def vec(*e, delta=0):
    return V(tuple(e), delta)


def test_pairing_examples():
    d = lat.type_d(3)
    short = vec(0, 0, -1, 1)
    assert lat.pairing(d, short, short) == 2
    assert lat.pairing(d, d.alpha(1), d.alpha(3)) == -1
    assert lat.pairing(d, d.alpha(1), d.alpha(2)) == 0
    ad = lat.affine_d(3)
    assert lat.pairing(ad, ad.alpha(0), ad.alpha(0)) == 2
    with pytest.raises(lat.RankMismatch):
        lat.pairing(d, vec(1, 0), vec(1, 0, 0, 0))


@pytest.mark.parametrize("spec", [lat.type_d(3), lat.affine_d(4), lat.type_a(3), lat.affine_a(4)])
def test_cartan_entries_nonpositive(spec):
    for i in spec.indices:
        for j in spec.indices:
            if i != j:
                assert spec.cartan_entry(i, j) <= 0


def test_affine_a_cartan_is_a_cycle():
    spec = lat.affine_a(3)
    assert spec.cartan_entry(0, 3) == -1 and spec.cartan_entry(0, 1) == -1
    assert spec.cartan_entry(0, 2) == 0


def test_reflection_examples():
    d = lat.type_d(3)
    assert lat.simple_reflection(d, 1, vec(1, 0, 0, 0)) == vec(0, -1, 0, 0)
    for i in d.indices:
        assert lat.simple_reflection(d, i, d.alpha(i)) == -d.alpha(i)
    ad = lat.affine_d(3)
    assert lat.simple_reflection(ad, 0, vec(0, 0, 0, 1)) == vec(0, 0, -1, 0, delta=1)
    with pytest.raises(lat.BadIndex):
        lat.simple_reflection(d, 0, vec(1, 0, 0, 0))


def test_roots_of_w_word():
    n = 3
    roots = lat.roots_of_reduced_word(lat.type_d(n), catalog.w_word(n))
    top = V.unit(n + 1, n + 1)
    expected = [top - V.unit(n + 1, i) for i in range(n, 0, -1)] + [top + V.unit(n + 1, i) for i in range(1, n + 1)]
    assert roots == expected
    assert roots[0] == vec(0, 0, -1, 1)


# frozen from tests/oracles/affine_roots_numpy.py, as (e..., delta)
AFFINE_D3 = [[0, 0, -1, 1, 0], [0, -1, 0, 1, 0], [-1, 0, 0, 1, 0], [1, 0, 0, 1, 0], [0, 1, 0, 1, 0],
             [0, 0, 1, 1, 0], [0, 0, -1, 1, 1], [0, -1, 0, 1, 1], [-1, 0, 0, 1, 1], [1, 0, 0, 1, 1],
             [0, 1, 0, 1, 1], [0, 0, 1, 1, 1]]
AFFINE_A3 = [[1, -1, 0, 0, 0], [1, 0, -1, 0, 0], [1, 0, 0, -1, 0], [1, -1, 0, 0, 1], [1, 0, -1, 0, 1],
             [1, 0, 0, -1, 1]]


def test_roots_of_affine_words_against_oracle():
    got = [list(v.e) + [v.delta] for v in catalog.affine_d_degrees(3)]
    assert got == AFFINE_D3
    got = [list(v.e) + [v.delta] for v in catalog.affine_a_degrees(3)]
    assert got == AFFINE_A3
    n = 3
    assert all(v.delta == 1 for v in catalog.affine_d_degrees(n)[2 * n:])


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_finite_roots_distinct_positive(n):
    for spec, word in [(lat.type_d(n), catalog.w_word(n)), (lat.type_a(n), catalog.c_word(n))]:
        roots = lat.roots_of_reduced_word(spec, word)
        assert len(roots) == len(word)
        assert lat.vectors_distinct(roots)
        assert all(lat.is_positive(spec, r) for r in roots)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_affine_roots_distinct_positive(n):
    for spec, word in [(lat.affine_d(n), catalog.w_hat_word(n)), (lat.affine_a(n), catalog.c_hat_word(n))]:
        roots = lat.roots_of_reduced_word(spec, word)
        assert len(roots) == len(word) and lat.vectors_distinct(roots)
        assert all(lat.is_positive(spec, r) for r in roots)


def test_empty_word_rejected():
    with pytest.raises(lat.BadIndex):
        lat.roots_of_reduced_word(lat.type_d(3), [])


def vectors(dim):
    return st.tuples(st.lists(st.integers(-4, 4), min_size=dim, max_size=dim), st.integers(-3, 3)).map(
        lambda t: V(tuple(t[0]), t[1]))


@given(vectors(5), vectors(5), st.sampled_from(range(5)))
def test_reflection_involution_and_invariance(mu, nu, i):
    spec = lat.affine_d(4)
    s = lambda v: lat.simple_reflection(spec, i, v)  # noqa: E731
    assert s(s(mu)) == mu
    assert lat.pairing(spec, s(mu), s(nu)) == lat.pairing(spec, mu, nu)


@pytest.mark.parametrize("n", [3, 4])
@given(data=st.data())
def test_w_hat_acts_as_translation(n, data):
    v = data.draw(vectors(n + 1))
    spec = lat.affine_d(n)
    image = lat.apply_word(spec, catalog.w_hat_word(n), v)
    assert image == v.with_delta(v.delta + 2 * v.e[n])


def test_bicharacter_values():
    n = 3
    b = lat.beta(n)
    spec = b.spec
    assert b(spec.alpha(0), spec.alpha(n + 1)) == qpow(1)
    for i in spec.indices:
        for j in spec.indices:
            if (i, j) != (0, n + 1):
                assert b(spec.alpha(i), spec.alpha(j)) == ONE
    g = lat.gamma(3)
    assert g(g.spec.alpha(0), g.spec.alpha(1)) == qpow(1)
    assert g(g.spec.alpha(1), g.spec.alpha(0)) == ONE


def test_bicharacter_needs_lattice_vectors():
    b = lat.beta(3)
    with pytest.raises(lat.NotInRootLattice):
        b(vec(1, 0, 0, 0), vec(1, 1, 0, 0))


def test_bicharacter_rejects_non_units():
    with pytest.raises(ValueError):
        lat.Bicharacter.from_mapping(lat.affine_d(3), {(0, 1): qpow(1) + ONE})


def _root_lattice_vectors(spec):
    idx = list(spec.indices)
    coeffs = st.lists(st.integers(-2, 2), min_size=len(idx), max_size=len(idx))
    return coeffs.map(lambda cs: sum((spec.alpha(i) * c for i, c in zip(idx, cs)), V.zero(spec.dim)))


@pytest.mark.parametrize("b", [lat.beta(3), lat.gamma(3)], ids=["beta", "gamma"])
@given(data=st.data())
def test_cocycle_identity(b, data):
    gen = _root_lattice_vectors(b.spec)
    x, y, z = data.draw(gen), data.draw(gen), data.draw(gen)
    assert b(x, y) * b(x + y, z) == b(y, z) * b(x, y + z)
    assert b(x, y) * b.inverse()(x, y) == ONE


def test_serialization():
    v = vec(1, -2, 0, delta=3)
    assert V.from_json(v.to_json()) == v
    assert lat.beta(3).to_json() == [[0, 4, "q"]]
