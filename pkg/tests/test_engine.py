from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpbw import catalog
from qpbw.engine import (
    AlphabetMismatch,
    BadMap,
    DuplicatePair,
    Element,
    GeneratorInfo,
    GeneratorMap,
    IncompleteSystem,
    NonDecreasing,
    NotHomogeneous,
    NotOrientable,
    NotQuadratic,
    Presentation,
    StepBudgetExceeded,
    compare_presentations,
    degree2_span,
    degree_d_dimension,
    diamond_check,
    hilbert_count_normal_words,
    is_sorted_word,
    multiply_elements,
    normalize,
    orient_relations,
)
from qpbw.lattice import LatticeVector
from qpbw.qcoeff import ONE, QHAT, LaurentPoly, qpow


def flat_gens(t):
    return [GeneratorInfo(i, f"g{i}", LatticeVector.zero(1)) for i in range(t)]


def W(*w, c=ONE, size=None):
    return Element.word(w, c, size)


E3 = catalog.euclidean(3)
SYS3 = E3.rewrite_system()


def el(p, src):
    from qpbw.parse import parse_element
    return parse_element(src, p.names)


def test_multiply_examples():
    assert multiply_elements(W(1), W(2)) == W(1, 2)
    x = W(1, c=qpow(1)) + W(2)
    assert multiply_elements(x, Element.zero()).is_zero()
    a, b = E3.gen("x1"), E3.gen("y2")
    ab = multiply_elements(a, b)
    deg = ab.degree_of(ab.leading_word(), E3.generators)
    assert deg == E3.generators[E3.index("x1")].degree + E3.generators[E3.index("y2")].degree
    with pytest.raises(AlphabetMismatch):
        multiply_elements(Element.gen(0, 3), Element.gen(0, 4))


def test_orient_euclidean_rule():
    # y_2 x_2 -> x_2 y_2 - qhat x_1 y_1
    rule = SYS3.rule(E3.index("y2"), E3.index("x2"))
    assert rule == el(E3, "x2*y2 - qhat*x1*y1")


def test_orient_errors():
    g = flat_gens(3)
    with pytest.raises(NotOrientable):
        orient_relations(g, [W(2, 1) - W(1, 2) - W(2, 1)])
    with pytest.raises(NotOrientable):
        orient_relations(g, [W(2, 1) - W(2, 0)])
    with pytest.raises(NonDecreasing):
        orient_relations(g, [W(1, 0) - W(1, 2)])
    with pytest.raises(DuplicatePair):
        orient_relations(g, [W(1, 0) - W(0, 1), W(1, 0) - W(0, 1, c=qpow(1))])
    graded = [GeneratorInfo(i, f"g{i}", LatticeVector((i,), 0)) for i in range(3)]
    with pytest.raises(NotHomogeneous):
        orient_relations(graded, [W(2, 0) - W(0, 1)])


def test_orient_affine_relation_nine():
    p = catalog.affineD(3)
    system = p.rewrite_system()
    yb1, x1 = p.index("Yb1"), p.index("X1")
    rule = system.rule(yb1, x1)
    assert all(is_sorted_word(w) for w in rule.words())
    assert all(w < (yb1, x1) for w in rule.words())


def test_normalize_examples():
    assert normalize(el(E3, "y1*x1"), SYS3) == el(E3, "x1*y1")
    assert normalize(el(E3, "y2*x2"), SYS3) == el(E3, "x2*y2 - qhat*x1*y1")
    assert normalize(el(E3, "x1*y1"), SYS3) == el(E3, "x1*y1")
    assert normalize(el(E3, "y2*x2"), SYS3).format(E3.names) == "x2*y2 - qhat*x1*y1"


def test_normalize_guards():
    g = flat_gens(3)
    partial = orient_relations(g, [W(1, 0) - W(0, 1)])
    with pytest.raises(IncompleteSystem):
        normalize(W(2, 1), partial)
    with pytest.raises(IncompleteSystem):
        diamond_check(partial)
    with pytest.raises(StepBudgetExceeded):
        normalize(el(E3, "y3*y2*x3*x2"), SYS3, max_steps=2)


def test_trace_records_steps():
    steps = []
    normalize(el(E3, "y2*x2"), SYS3, trace=steps.append)
    assert len(steps) == 1 and steps[0].word == (E3.index("y2"), E3.index("x2"))


def test_diamond_examples():
    assert diamond_check(SYS3) == []
    assert diamond_check(catalog.xalgebra(3).rewrite_system()) == []


def test_diamond_detects_corruption():
    rels = list(E3.relations)
    # flip the sign of the correction term in x_2 y_2 - y_2 x_2 - qhat x_1 y_1
    k = next(i for i, r in enumerate(rels) if len(r) == 3 and r.coefficient((E3.index("x2"), E3.index("y2"))))
    r = rels[k]
    w = (E3.index("x1"), E3.index("y1"))
    rels[k] = r + Element({w: -2 * r.coefficient(w)}, r.size)
    bad = Presentation("bad", "D", 3, E3.generators, rels)
    assert diamond_check(bad.rewrite_system()) != []


def test_degree2_span():
    assert degree2_span(E3.relations).dimension == 15
    assert degree2_span([]).dimension == 0
    scaled = [r.scale(QHAT * qpow(k)) for k, r in enumerate(E3.relations)]
    assert [dict(r) for r in degree2_span(scaled).canonical_basis()] == \
        [dict(r) for r in degree2_span(E3.relations).canonical_basis()]
    with pytest.raises(NotQuadratic):
        degree2_span([W(0, 1, 2)])


def test_compare_identity_and_maps():
    assert compare_presentations(E3, E3).kind == "equal"
    t = E3.size
    with pytest.raises(BadMap):
        compare_presentations(E3, E3, GeneratorMap(tuple((0, ONE) for _ in range(t))))
    with pytest.raises(BadMap):
        compare_presentations(E3, E3, GeneratorMap(tuple((i, LaurentPoly()) for i in range(t))))
    with pytest.raises(BadMap):
        compare_presentations(E3, catalog.affineD(3))


def test_compare_contained():
    smaller = Presentation("part", "D", 3, E3.generators, E3.relations[:-1])
    cmp = compare_presentations(smaller, E3)
    assert cmp.kind == "contained" and cmp.gap == 1
    assert compare_presentations(E3, smaller).kind == "contains"


def test_signed_map_flips_odd_words():
    m = GeneratorMap(tuple((i, -ONE if i == 0 else ONE) for i in range(3)))
    x = W(0, 1) + W(0, 0) + W(1, 2)
    assert m.transport(x) == -W(0, 1) + W(0, 0) + W(1, 2)


ALGEBRAS = [catalog.euclidean(3), catalog.affine_space(3), catalog.quantum_matrices(2), catalog.xalgebra(2)]


def random_elements(p):
    t = p.size
    word = st.lists(st.integers(0, t - 1), min_size=0, max_size=3).map(tuple)
    coef = st.tuples(st.integers(-3, 3), st.integers(-2, 2)).map(lambda c: LaurentPoly({c[1]: c[0]}))
    return st.dictionaries(word, coef, max_size=4).map(lambda d: Element(d, t))


@pytest.mark.parametrize("p", ALGEBRAS, ids=lambda p: f"{p.name}{p.rank}")
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_normalize_properties(p, data):
    system = p.rewrite_system()
    x = data.draw(random_elements(p))
    y = data.draw(random_elements(p))
    nx = normalize(x, system)
    assert all(is_sorted_word(w) for w in nx.words())
    assert normalize(nx, system) == nx
    a, b = qpow(1) + ONE, QHAT
    assert normalize(x.scale(a) + y.scale(b), system) == nx.scale(a) + normalize(y, system).scale(b)
    assert normalize(x, system, strategy="rightmost") == nx


@pytest.mark.parametrize("p", ALGEBRAS, ids=lambda p: f"{p.name}{p.rank}")
def test_hilbert_count(p):
    assert diamond_check(p.rewrite_system()) == []
    for d in range(4):
        assert hilbert_count_normal_words(p.size, d) == comb(p.size + d - 1, d)


def test_degree_three_dimension_by_linear_algebra():
    # independent route: dimension of A_3 from the ideal, compared with the count of sorted words
    for p in (catalog.affine_space(3), catalog.quantum_matrices(2)):
        assert degree_d_dimension(p, 3) == comb(p.size + 2, 3)


def test_degree_three_dimension_detects_corruption():
    p = catalog.quantum_matrices(2)
    rels = list(p.relations)
    r = rels[-1]
    w = r.words()[0]
    rels[-1] = r + Element({w: qpow(1)}, r.size)
    bad = Presentation("bad", p.family, p.rank, p.generators, rels)
    assert diamond_check(bad.rewrite_system()) != []
    assert degree_d_dimension(bad, 3) < comb(p.size + 2, 3)
