"""Named presentations, R-matrices and the FRT relation generator.

Generator ids always follow the PBW order of the stored reduced word:

* ``euclidean(n)``: ``x_n, ..., x_1, y_1, ..., y_n``
* ``affineD(n)`` / ``smashD(n)``: that list, then its barred (second-block) copy
* ``affine_space(m)``: ``z_1, ..., z_m``
* ``xalgebra(n)`` / ``quantum_matrices(m)``: row-major ``X[1,1] < ... < X[2,N]``
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable

from . import lattice as lat
from .engine import Element, GeneratorInfo, Presentation, RelationSpan
from .lattice import LatticeVector
from .qcoeff import ONE, QHAT, ZERO, LaurentPoly, qpow, signed_qpow

NamedPresentation = Presentation


class RankTooSmall(ValueError):
    pass


class UnknownName(KeyError):
    pass


# -- reduced words ------------------------------------------------------

def w_word(n: int) -> list[int]:
    """``(s_{n+1} ... s_1)(s_3 ... s_{n+1})`` in ``W(D_{n+1})``."""
    return list(range(n + 1, 0, -1)) + list(range(3, n + 2))


def w_hat_word(n: int) -> list[int]:
    """``w_n s_0 (s_n ... s_3)(s_1 ... s_n) s_0`` in the affine Weyl group."""
    return w_word(n) + [0] + list(range(n, 2, -1)) + list(range(1, n + 1)) + [0]


def c_word(m: int) -> list[int]:
    return list(range(1, m + 1))


def c_hat_word(m: int) -> list[int]:
    """``(s_1 ... s_m)(s_0 s_1 ... s_{m-1})``."""
    return list(range(1, m + 1)) + [0] + list(range(1, m))


# -- small builders ------------------------------------------------------

class _Rel:
    """Accumulates ``sum coeff * word`` for one relation."""

    def __init__(self, size: int):
        self.size = size
        self.terms: dict[tuple[int, ...], LaurentPoly] = {}

    def add(self, c, *word: int) -> "_Rel":
        c = LaurentPoly.coerce(c)
        self.terms[word] = self.terms.get(word, ZERO) + c
        return self

    def element(self) -> Element:
        return Element(self.terms, self.size)


def _d_ids(n: int, offset: int = 0):
    x = {i: offset + n - i for i in range(1, n + 1)}
    y = {i: offset + n - 1 + i for i in range(1, n + 1)}
    return x, y


def _generators(names: list[str], degrees: list[LatticeVector], displays: list[str] | None = None):
    displays = displays or [None] * len(names)
    return [GeneratorInfo(i, nm, d, disp) for i, (nm, d, disp) in enumerate(zip(names, degrees, displays))]


def _check_rank(name: str, rank: int, minimum: int) -> None:
    if rank < minimum:
        raise RankTooSmall(f"{name} needs rank >= {minimum}, got {rank}")


def d_degrees(n: int) -> list[LatticeVector]:
    return lat.roots_of_reduced_word(lat.type_d(n), w_word(n))


def affine_d_degrees(n: int) -> list[LatticeVector]:
    return lat.roots_of_reduced_word(lat.affine_d(n), w_hat_word(n))


def a_degrees(m: int) -> list[LatticeVector]:
    return lat.roots_of_reduced_word(lat.type_a(m), c_word(m))


def affine_a_degrees(m: int) -> list[LatticeVector]:
    return lat.roots_of_reduced_word(lat.affine_a(m), c_hat_word(m))


def _euclidean_relations(n: int, size: int, x: dict, y: dict) -> list[Element]:
    rels = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append(_Rel(size).add(1, x[i], x[j]).add(-qpow(-1), x[j], x[i]).element())
            rels.append(_Rel(size).add(1, y[i], y[j]).add(-qpow(1), y[j], y[i]).element())
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            r = _Rel(size).add(1, x[i], y[j]).add(-qpow(1 - (i == j)), y[j], x[i])
            if i == j:
                for s in range(1, i):
                    r.add(-QHAT * signed_qpow(-1, i - s - 1), x[s], y[s])
            rels.append(r.element())
    return rels


def euclidean(n: int) -> Presentation:
    """Even-dimensional quantum Euclidean space, realized on the root vectors of ``w_n``."""
    _check_rank("euclidean", n, 3)
    x, y = _d_ids(n)
    names = [f"x{i}" for i in range(n, 0, -1)] + [f"y{i}" for i in range(1, n + 1)]
    gens = _generators(names, d_degrees(n))
    return Presentation("euclidean", "D", n, gens, _euclidean_relations(n, 2 * n, x, y),
                        ("quantum euclidean space",))


def affine_space(m: int) -> Presentation:
    _check_rank("affine_space", m, 2)
    names = [f"z{i}" for i in range(1, m + 1)]
    gens = _generators(names, a_degrees(m))
    rels = []
    for i in range(m):
        for j in range(i + 1, m):
            rels.append(_Rel(m).add(1, i, j).add(-qpow(1), j, i).element())
    return Presentation("affine_space", "A", m, gens, rels, ("quantum affine space",))


def _affine_d_names(n: int) -> tuple[list[str], list[str]]:
    names = ([f"X{i}" for i in range(n, 0, -1)] + [f"Y{i}" for i in range(1, n + 1)]
             + [f"Xb{i}" for i in range(n, 0, -1)] + [f"Yb{i}" for i in range(1, n + 1)])
    displays = ([f"X_{i}" for i in range(n, 0, -1)] + [f"Y_{i}" for i in range(1, n + 1)]
                + [f"X̄_{i}" for i in range(n, 0, -1)] + [f"Ȳ_{i}" for i in range(1, n + 1)])
    return names, displays


def affineD(n: int) -> Presentation:
    """Root vectors of ``w^_n``: ``X_n..X_1, Y_1..Y_n, Xb_n..Xb_1, Yb_1..Yb_n``."""
    _check_rank("affineD", n, 3)
    t = 4 * n
    X, Y = _d_ids(n)
    Xb, Yb = _d_ids(n, 2 * n)
    qi, qhq = qpow(-1), QHAT * qpow(-1)
    rels: list[Element] = []
    R = lambda: _Rel(t)  # noqa: E731
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append(R().add(1, X[i], X[j]).add(-qi, X[j], X[i]).element())
            rels.append(R().add(1, Y[j], Y[i]).add(-qi, Y[i], Y[j]).element())
            rels.append(R().add(1, Xb[i], Xb[j]).add(-qi, Xb[j], Xb[i]).element())
            rels.append(R().add(1, Yb[j], Yb[i]).add(-qi, Yb[i], Yb[j]).element())
    for a, b in ((X, Y), (Xb, Yb)):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                r = R().add(1, b[j], a[i]).add(-qpow((i == j) - 1), a[i], b[j])
                if i == j:
                    for s in range(1, i):
                        r.add(QHAT * signed_qpow(-1, i - s - 1), a[s], b[s])
                rels.append(r.element())
    for i in range(1, n + 1):
        rels.append(R().add(1, Xb[i], X[i]).add(-qpow(-2), X[i], Xb[i]).element())
        rels.append(R().add(1, Yb[i], Y[i]).add(-qpow(-2), Y[i], Yb[i]).element())
        for j in range(i + 1, n + 1):
            rels.append(R().add(1, Xb[j], X[i]).add(-qi, X[i], Xb[j]).element())
            rels.append(R().add(1, Yb[i], Y[j]).add(-qi, Y[j], Yb[i]).element())
            rels.append(R().add(1, Xb[i], X[j]).add(-qi, X[j], Xb[i]).add(qhq, X[i], Xb[j]).element())
            rels.append(R().add(1, Yb[j], Y[i]).add(-qi, Y[i], Yb[j]).add(qhq, Y[j], Yb[i]).element())
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            d = i == j
            r = R().add(1, Xb[i], Y[j]).add(-qpow(d - 1), Y[j], Xb[i])
            if d:
                for m in range(i + 1, n + 1):
                    r.add(-qhq * signed_qpow(-1, m - i), Y[m], Xb[m])
            rels.append(r.element())
            r = R().add(1, Yb[i], X[j]).add(-qpow(d - 1), X[j], Yb[i]).add(qhq, Y[i], Xb[j])
            if d:
                for m in range(1, n + 1):
                    r.add(-qhq * signed_qpow(-1, i + m - 2), Y[m], Xb[m])
                for m in range(1, i):
                    r.add(-qhq * signed_qpow(-1, i - m), X[m], Yb[m])
            rels.append(r.element())
    names, displays = _affine_d_names(n)
    gens = _generators(names, affine_d_degrees(n), displays)
    return Presentation("affineD", "affineD", n, gens, rels, ("affine D root vectors",))


def smash_d_names(n: int) -> tuple[list[str], list[str]]:
    base = [f"x{i}" for i in range(n, 0, -1)] + [f"y{i}" for i in range(1, n + 1)]
    names = [f"{b[0]}L{b[1:]}" for b in base] + [f"{b[0]}R{b[1:]}" for b in base]
    displays = [f"{b[0]}_{b[1:]}#1" for b in base] + [f"1#{b[0]}_{b[1:]}" for b in base]
    return names, displays


def smash_cross_relations_d(n: int) -> dict[tuple[str, int, str, int], Element]:
    """The four cross-relation families, keyed by ``(kind_g, i, kind_h, j)`` for ``(1#g_i)(h_j#1)``."""
    t = 4 * n
    xL, yL = _d_ids(n)
    xR, yR = _d_ids(n, 2 * n)
    qi, qhq = qpow(-1), QHAT * qpow(-1)
    out = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            r = _Rel(t).add(1, xR[i], xL[j])
            if i < j:
                r.add(-qi, xL[j], xR[i]).add(qhq, xL[i], xR[j])
            elif i == j:
                r.add(-qpow(-2), xL[j], xR[i])
            else:
                r.add(-qi, xL[j], xR[i])
            out[("x", i, "x", j)] = r.element()
            r = _Rel(t).add(1, yR[i], yL[j])
            if i > j:
                r.add(-qi, yL[j], yR[i]).add(qhq, yL[i], yR[j])
            elif i == j:
                r.add(-qpow(-2), yL[j], yR[i])
            else:
                r.add(-qi, yL[j], yR[i])
            out[("y", i, "y", j)] = r.element()
            d = i == j
            r = _Rel(t).add(1, yR[i], xL[j]).add(-qpow(d - 1), xL[j], yR[i]).add(qhq, yL[i], xR[j])
            if d:
                for m in range(1, n + 1):
                    r.add(-qhq * signed_qpow(-1, i + m - 2), yL[m], xR[m])
                for m in range(1, i):
                    r.add(-qhq * signed_qpow(-1, i - m), xL[m], yR[m])
            out[("y", i, "x", j)] = r.element()
            r = _Rel(t).add(1, xR[i], yL[j]).add(-qpow(d - 1), yL[j], xR[i])
            if d:
                for m in range(i + 1, n + 1):
                    r.add(-qhq * signed_qpow(-1, m - i), yL[m], xR[m])
            out[("x", i, "y", j)] = r.element()
    return out


def smashD(n: int) -> Presentation:
    """The smash presentation as listed: four cross families plus two base copies."""
    _check_rank("smashD", n, 3)
    t = 4 * n
    cross = smash_cross_relations_d(n)
    xL, yL = _d_ids(n)
    xR, yR = _d_ids(n, 2 * n)
    rels = list(cross.values())
    rels += _euclidean_relations(n, t, xR, yR)
    rels += _euclidean_relations(n, t, xL, yL)
    names, displays = smash_d_names(n)
    gens = _generators(names, affine_d_degrees(n), displays)
    return Presentation("smashD", "affineD", n, gens, rels, ("smash product, two copies of quantum euclidean space",))


def _prime(s: int, n: int) -> int:
    return 2 * n + 1 - s


def rho(n: int) -> list[int]:
    """``(n-1, ..., 1, 0, 0, -1, ..., -n+1)``, indexed from 1 (entry 0 unused)."""
    return [0] + [n - i for i in range(1, n + 1)] + [n - i + 1 for i in range(n + 1, 2 * n + 1)]


def matrix_names(rows: Iterable[int], ncols: int) -> list[str]:
    return [f"X[{r},{s}]" for r in rows for s in range(1, ncols + 1)]


def xalgebra(n: int) -> Presentation:
    """Generators ``X[r,s]`` with ``r in {1,2}``, ``s in 1..2n``."""
    _check_rank("xalgebra", n, 2)
    N = 2 * n
    t = 2 * N
    X = lambda r, s: (r - 1) * N + (s - 1)  # noqa: E731
    p = lambda s: _prime(s, n)  # noqa: E731
    qi = qpow(-1)
    rels: list[Element] = []
    R = lambda: _Rel(t)  # noqa: E731
    for r in (1, 2):
        for s in range(1, N + 1):
            for u in range(s + 1, N + 1):
                if u != p(s):
                    rels.append(R().add(1, X(r, u), X(r, s)).add(-qi, X(r, s), X(r, u)).element())
        for s in range(1, n + 1):
            rel = R().add(1, X(r, p(s)), X(r, s)).add(-1, X(r, s), X(r, p(s)))
            for l in range(s + 1, n + 1):
                rel.add(-QHAT * qpow(l - s - 1), X(r, l), X(r, p(l)))
            rels.append(rel.element())
    for s in range(1, N + 1):
        rels.append(R().add(1, X(2, s), X(1, s)).add(-qi, X(1, s), X(2, s)).element())
    for s in range(1, N + 1):
        for u in range(s + 1, N + 1):
            if u == p(s):
                continue
            rels.append(R().add(1, X(2, s), X(1, u)).add(-1, X(1, u), X(2, s)).element())
            rels.append(R().add(1, X(2, u), X(1, s)).add(-1, X(1, s), X(2, u)).add(QHAT, X(1, u), X(2, s)).element())
    for s in range(1, n + 1):
        rel = R().add(1, X(2, s), X(1, p(s))).add(-qpow(1), X(1, p(s)), X(2, s))
        for l in range(1, s):
            rel.add(-QHAT * qpow(s - l), X(1, p(l)), X(2, l))
        rels.append(rel.element())
        rel = R().add(1, X(2, p(s)), X(1, s)).add(-qpow(1), X(1, s), X(2, p(s)))
        for l in range(s + 1, n + 1):
            rel.add(-QHAT * qpow(l - s), X(1, l), X(2, p(l)))
        for l in range(1, n + 1):
            rel.add(-QHAT * qpow(-1) * qpow(p(l) - s), X(1, p(l)), X(2, l))
        rel.add(QHAT, X(1, p(s)), X(2, s))
        rels.append(rel.element())
    gens = _generators(matrix_names((1, 2), N), affine_d_degrees(n))
    return Presentation("xalgebra", "affineD", n, gens, rels, ("two-row type D quantum matrices",))


# -- R-matrices and the FRT construction ---------------------------------

@dataclass(frozen=True)
class RMatrix:
    """``entries[(s, t, i, j)] = R_{ij}^{st}``: ``R(v_i (x) v_j) = sum R_{ij}^{st} v_s (x) v_t``."""

    family: str
    N: int
    entries: tuple[tuple[tuple[int, int, int, int], LaurentPoly], ...]

    def as_dict(self) -> dict[tuple[int, int, int, int], LaurentPoly]:
        return dict(self.entries)

    def entry(self, s: int, t: int, i: int, j: int) -> LaurentPoly:
        return self.as_dict().get((s, t, i, j), ZERO)

    def to_json(self) -> list:
        return [[s, t, i, j, str(c)] for (s, t, i, j), c in self.entries]

    @classmethod
    def from_elementary(cls, family: str, N: int,
                        terms: Iterable[tuple[LaurentPoly, int, int, int, int]]) -> "RMatrix":
        """Build from terms ``c * E_{ab} (x) E_{cd}``, which send ``v_b (x) v_d`` to ``v_a (x) v_c``."""
        acc: dict[tuple[int, int, int, int], LaurentPoly] = {}
        for c, a, b, cc, d in terms:
            key = (a, cc, b, d)
            acc[key] = acc.get(key, ZERO) + LaurentPoly.coerce(c)
        return cls(family, N, tuple(sorted((k, v) for k, v in acc.items() if v)))


def r_matrix(family: str, size: int) -> RMatrix:
    """``R_{D_size}`` on a ``2*size``-dimensional space, or ``R_{A_{size-1}}`` on ``size`` dimensions."""
    _check_rank(f"r_matrix({family})", size, 2)
    terms = []
    if family == "D":
        n = size
        N = 2 * n
        p = lambda i: _prime(i, n)  # noqa: E731
        rh = rho(n)
        for i in range(1, N + 1):
            terms.append((qpow(1), i, i, i, i))
            terms.append((qpow(-1), p(i), p(i), i, i))
            for j in range(1, N + 1):
                if j != i and j != p(i):
                    terms.append((ONE, i, i, j, j))
            for j in range(1, i):
                terms.append((QHAT, i, j, j, i))
                terms.append((-QHAT * qpow(rh[i] - rh[j]), i, j, p(i), p(j)))
        return RMatrix.from_elementary("D", N, terms)
    if family == "A":
        m = size
        for i in range(1, m + 1):
            terms.append((qpow(1), i, i, i, i))
            for j in range(1, m + 1):
                if j != i:
                    terms.append((ONE, i, i, j, j))
            for j in range(1, i):
                terms.append((QHAT, i, j, j, i))
        return RMatrix.from_elementary("A", m, terms)
    raise UnknownName(family)


def identity_r_matrix(N: int) -> RMatrix:
    return RMatrix("identity", N, tuple(((i, j, i, j), ONE) for i in range(1, N + 1) for j in range(1, N + 1)))


def frt_relations(R: RMatrix, keep: Callable[[int, int, int, int], bool] | None = None) -> list[Element]:
    """``sum_{s,t} R_{st}^{ji} X_{sl} X_{tm} - sum_{s,t} R_{lm}^{ts} X_{is} X_{jt}`` for all ``(i,j,l,m)``.

    Generator ``X_{ab}`` has id ``(a-1)*N + (b-1)``.  Zero relations are dropped.
    """
    N = R.N
    by_upper: dict[tuple[int, int], list] = {}
    by_lower: dict[tuple[int, int], list] = {}
    for (s, t, i, j), c in R.entries:
        by_upper.setdefault((s, t), []).append((i, j, c))
        by_lower.setdefault((i, j), []).append((s, t, c))
    X = lambda a, b: (a - 1) * N + (b - 1)  # noqa: E731
    rels = []
    rng = range(1, N + 1)
    for i in rng:
        for j in rng:
            for l in rng:
                for m in rng:
                    if keep is not None and not keep(i, j, l, m):
                        continue
                    r = _Rel(N * N)
                    # R_{st}^{ji}: coefficient of v_j (x) v_i in R(v_s (x) v_t)
                    for s, t, c in by_upper.get((j, i), ()):
                        r.add(c, X(s, l), X(t, m))
                    # R_{lm}^{ts}: coefficient of v_t (x) v_s in R(v_l (x) v_m)
                    for t, s, c in by_lower.get((l, m), ()):
                        r.add(-c, X(i, s), X(j, t))
                    e = r.element()
                    if e:
                        rels.append(e)
    return rels


def frt_presentation(R: RMatrix) -> Presentation:
    N = R.N
    zero = LatticeVector.zero(1)
    gens = _generators(matrix_names(range(1, N + 1), N), [zero] * (N * N))
    return Presentation(f"frt_{R.family}", R.family, N, gens, frt_relations(R), ("FRT relations",))


def restrict_rows(relations: Iterable[Element], N: int, rows: tuple[int, ...] = (1, 2)) -> list[Element]:
    """Keep relations whose words only use ``X_{ij}`` with ``i in rows``; re-index row-major."""
    pos = {r: k for k, r in enumerate(rows)}
    out = []
    size = len(rows) * N
    for rel in relations:
        ok = all((g // N) + 1 in pos for w in rel.terms for g in w)
        if not ok:
            continue
        out.append(rel.map_words(lambda w: (tuple(pos[g // N + 1] * N + g % N for g in w), ONE)))
    return [Element(e.terms, size) for e in out]


def kernel_elements(n: int) -> list[Element]:
    """``Omega_1, Omega_2, Upsilon`` over the ``X[r,s]`` alphabet of ``xalgebra(n)``."""
    N = 2 * n
    t = 2 * N
    X = lambda r, s: (r - 1) * N + (s - 1)  # noqa: E731
    p = lambda s: _prime(s, n)  # noqa: E731
    rh = rho(n)
    omega = []
    for r in (1, 2):
        e = _Rel(t)
        for s in range(1, n + 1):
            e.add(qpow(rh[p(s)]), X(r, s), X(r, p(s)))
        omega.append(e.element())
    ups = _Rel(t)
    for s in range(1, N + 1):
        ups.add(qpow(rh[s]), X(1, p(s)), X(2, s))
    return omega + [ups.element()]


def rows_restrict_and_kernel(relations: Iterable[Element], n: int,
                             rows: tuple[int, ...] = (1, 2)) -> tuple[list[Element], list[Element]]:
    return restrict_rows(relations, 2 * n, rows), kernel_elements(n)


def frt_rows_d(n: int) -> list[Element]:
    """FRT relations of ``R_{D_n}`` supported on rows 1 and 2 (only ``i, j in {1, 2}`` can be)."""
    R = r_matrix("D", n)
    rels = frt_relations(R, keep=lambda i, j, l, m: i <= 2 and j <= 2)
    return restrict_rows(rels, 2 * n)


def t2n(n: int) -> Presentation:
    """Degree-2 relations of ``T_{2,n}`` inside ``A(R_{D_n})``, on the ``xalgebra`` alphabet."""
    _check_rank("t2n", n, 2)
    gens = xalgebra(n).generators
    return Presentation("t2n", "affineD", n, gens, frt_rows_d(n), ("FRT relations", "type D R-matrix"))


def quantum_matrices(m: int, rows: int = 2) -> Presentation:
    """``O_q(M_{2,m})`` from rows 1, 2 of ``A(R_{A_{m-1}})``, solved for out-of-order words."""
    _check_rank("quantum_matrices", m, 2)
    if rows != 2:
        raise ValueError("only 2-row quantum matrices are supported")
    R = r_matrix("A", m)
    raw = restrict_rows(frt_relations(R, keep=lambda i, j, l, k: i <= 2 and j <= 2), m)
    span = RelationSpan(raw)
    t = 2 * m
    rels = []
    for row in span.canonical_basis():
        rels.append(Element({w: c.to_laurent() for w, c in row.items()}, t))
    gens = _generators(matrix_names((1, 2), m), affine_a_degrees(m))
    return Presentation("quantum_matrices", "affineA", m, gens, rels, ("FRT relations", "type A R-matrix"))


BUILDERS: dict[str, Callable[[int], Presentation]] = {
    "euclidean": euclidean,
    "affine_space": affine_space,
    "affineD": affineD,
    "smashD": smashD,
    "xalgebra": xalgebra,
    "quantum_matrices": quantum_matrices,
}


def build_named(name: str, rank: int) -> Presentation:
    if name == "smashA":
        from .smash import smash_presentation
        return smash_presentation("A", rank)
    if name == "smashD_derived":
        from .smash import smash_presentation
        return smash_presentation("D", rank)
    try:
        builder = BUILDERS[name]
    except KeyError:
        raise UnknownName(name) from None
    return builder(rank)
