"""Root lattices of types D, affine D, A and affine A.

Vectors are kept in e-coordinates plus an explicit coefficient of the
isotropic vector ``delta``; the pairing ignores ``delta``.  Simple-root
coordinates are recovered by exact linear solving when a bicharacter is
evaluated.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .qcoeff import ONE, LaurentPoly, qpow


class RankMismatch(ValueError):
    pass


class BadIndex(KeyError):
    pass


class NotInRootLattice(ValueError):
    pass


@dataclass(frozen=True, order=True)
class LatticeVector:
    e: tuple[int, ...]
    delta: int = 0

    def __post_init__(self):
        object.__setattr__(self, "e", tuple(int(x) for x in self.e))
        object.__setattr__(self, "delta", int(self.delta))

    @classmethod
    def zero(cls, dim: int) -> "LatticeVector":
        return cls((0,) * dim, 0)

    @classmethod
    def unit(cls, dim: int, i: int, sign: int = 1) -> "LatticeVector":
        """``sign * e_i`` with 1-based ``i``."""
        v = [0] * dim
        v[i - 1] = sign
        return cls(tuple(v), 0)

    @property
    def dim(self) -> int:
        return len(self.e)

    def _check(self, other: "LatticeVector") -> None:
        if len(self.e) != len(other.e):
            raise RankMismatch(f"vectors of dimension {len(self.e)} and {len(other.e)}")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a + b for a, b in zip(self.e, other.e)), self.delta + other.delta)

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(tuple(a - b for a, b in zip(self.e, other.e)), self.delta - other.delta)

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(tuple(-a for a in self.e), -self.delta)

    def __mul__(self, k: int) -> "LatticeVector":
        return LatticeVector(tuple(k * a for a in self.e), k * self.delta)

    __rmul__ = __mul__

    def dot(self, other: "LatticeVector") -> int:
        self._check(other)
        return sum(a * b for a, b in zip(self.e, other.e))

    def with_delta(self, delta: int) -> "LatticeVector":
        return LatticeVector(self.e, delta)

    def to_json(self) -> list:
        return [list(self.e), self.delta]

    @classmethod
    def from_json(cls, data) -> "LatticeVector":
        e, delta = data
        return cls(tuple(int(x) for x in e), int(delta))

    def __str__(self) -> str:
        parts = []
        for i, a in enumerate(self.e, start=1):
            if a:
                coef = "" if abs(a) == 1 else f"{abs(a)}"
                parts.append(("-" if a < 0 else "+") + f"{coef}e{i}")
        if self.delta:
            coef = "" if abs(self.delta) == 1 else f"{abs(self.delta)}"
            parts.append(("-" if self.delta < 0 else "+") + f"{coef}d")
        if not parts:
            return "0"
        s = "".join(parts)
        return s[1:] if s[0] == "+" else s


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int
    dim: int
    simple_roots: tuple[tuple[int, LatticeVector], ...]

    def alpha(self, i: int) -> LatticeVector:
        for j, v in self.simple_roots:
            if j == i:
                return v
        raise BadIndex(f"no simple root alpha_{i} in {self.family}({self.rank})")

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.simple_roots)

    @property
    def affine(self) -> bool:
        return self.family.startswith("affine")

    def cartan_entry(self, i: int, j: int) -> int:
        ai, aj = self.alpha(i), self.alpha(j)
        return 2 * ai.dot(aj) // ai.dot(ai)


def _vec(dim: int, coords: Mapping[int, int], delta: int = 0) -> LatticeVector:
    v = [0] * dim
    for i, a in coords.items():
        v[i - 1] += a
    return LatticeVector(tuple(v), delta)


def type_d(n: int) -> RootSystemSpec:
    """``Q(D_{n+1})`` with ``alpha_1 = e_1 + e_2`` and ``alpha_i = e_i - e_{i-1}``."""
    dim = n + 1
    roots = [(1, _vec(dim, {1: 1, 2: 1}))]
    roots += [(i, _vec(dim, {i: 1, i - 1: -1})) for i in range(2, n + 2)]
    return RootSystemSpec("D", n, dim, tuple(roots))


def affine_d(n: int) -> RootSystemSpec:
    """``Q(D^_{n+1})``; adds ``alpha_0 = -e_{n+1} - e_n + delta``."""
    base = type_d(n)
    a0 = _vec(base.dim, {n + 1: -1, n: -1}, delta=1)
    return RootSystemSpec("affineD", n, base.dim, ((0, a0),) + base.simple_roots)


def type_a(m: int) -> RootSystemSpec:
    """``Q(A_m)`` inside ``Z^{m+1}`` with ``alpha_i = e_i - e_{i+1}``."""
    dim = m + 1
    roots = tuple((i, _vec(dim, {i: 1, i + 1: -1})) for i in range(1, m + 1))
    return RootSystemSpec("A", m, dim, roots)


def affine_a(m: int) -> RootSystemSpec:
    """``Q(A^_m)``; adds ``alpha_0 = e_{m+1} - e_1 + delta``.

    ``alpha_0`` is minus the highest root plus ``delta``; with ``e_m`` in place
    of ``e_{m+1}`` the Cartan matrix would get a positive off-diagonal entry.
    """
    base = type_a(m)
    a0 = _vec(base.dim, {m + 1: 1, 1: -1}, delta=1)
    return RootSystemSpec("affineA", m, base.dim, ((0, a0),) + base.simple_roots)


def _check_dim(spec: RootSystemSpec, *vs: LatticeVector) -> None:
    for v in vs:
        if v.dim != spec.dim:
            raise RankMismatch(
                f"vector of dimension {v.dim} used with {spec.family}({spec.rank}) (dimension {spec.dim})"
            )


def pairing(spec: RootSystemSpec, mu: LatticeVector, nu: LatticeVector) -> int:
    _check_dim(spec, mu, nu)
    return mu.dot(nu)


def simple_reflection(spec: RootSystemSpec, i: int, mu: LatticeVector) -> LatticeVector:
    _check_dim(spec, mu)
    a = spec.alpha(i)
    return mu - a * (2 * mu.dot(a) // a.dot(a))


def apply_word(spec: RootSystemSpec, word: Sequence[int], mu: LatticeVector) -> LatticeVector:
    """``s_{i_1} ... s_{i_t} (mu)``: the rightmost letter acts first."""
    for i in reversed(word):
        mu = simple_reflection(spec, i, mu)
    return mu


def roots_of_reduced_word(spec: RootSystemSpec, word: Sequence[int]) -> list[LatticeVector]:
    if not word:
        raise BadIndex("empty reduced word")
    for i in word:
        spec.alpha(i)
    return [apply_word(spec, word[:k], spec.alpha(i)) for k, i in enumerate(word)]


@lru_cache(maxsize=None)
def _solver(spec: RootSystemSpec):
    """Row-reduced augmented system for expressing vectors in simple roots."""
    idx = spec.indices
    cols = [list(v.e) + [v.delta] for _, v in spec.simple_roots]
    nrows = spec.dim + 1
    mat = [[Fraction(cols[c][r]) for c in range(len(idx))] for r in range(nrows)]
    return idx, mat


def simple_root_coordinates(spec: RootSystemSpec, mu: LatticeVector) -> dict[int, int]:
    _check_dim(spec, mu)
    return dict(_coords(spec, mu))


@lru_cache(maxsize=65536)
def _coords(spec: RootSystemSpec, mu: LatticeVector) -> tuple[tuple[int, int], ...]:
    idx, base = _solver(spec)
    ncols = len(idx)
    rhs = list(mu.e) + [mu.delta]
    rows = [base[r][:] + [Fraction(rhs[r])] for r in range(len(base))]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((k for k in range(r, len(rows)) if rows[k][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        rows[r] = [x / piv for x in rows[r]]
        for k in range(len(rows)):
            if k != r and rows[k][c] != 0:
                f = rows[k][c]
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
    if any(row[-1] != 0 for row in rows[r:]):
        raise NotInRootLattice(f"{mu} is not in the span of the simple roots of {spec.family}({spec.rank})")
    sol = [Fraction(0)] * ncols
    for k, c in enumerate(pivots):
        sol[c] = rows[k][-1]
    if any(x.denominator != 1 for x in sol):
        raise NotInRootLattice(f"{mu} has non-integral simple-root coordinates")
    return tuple((idx[c], int(sol[c])) for c in range(ncols) if sol[c] != 0)


@dataclass(frozen=True)
class Bicharacter:
    """Bicharacter determined by its values on pairs of simple roots (default 1)."""

    spec: RootSystemSpec
    table: tuple[tuple[tuple[int, int], LaurentPoly], ...] = field(default=())

    @classmethod
    def from_mapping(cls, spec: RootSystemSpec, values: Mapping[tuple[int, int], LaurentPoly]) -> "Bicharacter":
        for (i, j), u in values.items():
            spec.alpha(i)
            spec.alpha(j)
            if not u.is_unit():
                raise ValueError(f"bicharacter value {u} is not a unit +-q^k")
        items = tuple(sorted((k, v) for k, v in values.items() if v != ONE))
        return cls(spec, items)

    def value(self, i: int, j: int) -> LaurentPoly:
        for k, v in self.table:
            if k == (i, j):
                return v
        return ONE

    def inverse(self) -> "Bicharacter":
        return Bicharacter(self.spec, tuple((k, v.inverse()) for k, v in self.table))

    def __call__(self, mu: LatticeVector, nu: LatticeVector) -> LaurentPoly:
        return bicharacter_eval(self, mu, nu)

    def to_json(self) -> list:
        return [[i, j, str(v)] for (i, j), v in self.table]


def bicharacter_eval(b: Bicharacter, mu: LatticeVector, nu: LatticeVector,
                     basis: RootSystemSpec | None = None) -> LaurentPoly:
    spec = basis or b.spec
    if not b.table:
        return ONE
    cm = _coords(spec, mu)
    cn = dict(_coords(spec, nu))
    out = ONE
    for i, a in cm:
        for (k, j), v in b.table:
            if k == i and j in cn:
                out = out * v ** (a * cn[j])
    return out


def beta(n: int) -> Bicharacter:
    """``beta(alpha_0, alpha_{n+1}) = q``, all other simple pairs 1."""
    spec = affine_d(n)
    return Bicharacter.from_mapping(spec, {(0, n + 1): qpow(1)})


def gamma(m: int) -> Bicharacter:
    """``gamma(alpha_0, alpha_1) = q``, all other simple pairs 1."""
    spec = affine_a(m)
    return Bicharacter.from_mapping(spec, {(0, 1): qpow(1)})


def is_positive(spec: RootSystemSpec, mu: LatticeVector) -> bool:
    coords = simple_root_coordinates(spec, mu)
    return bool(coords) and all(a >= 0 for a in coords.values())


def vectors_distinct(vs: Iterable[LatticeVector]) -> bool:
    vs = list(vs)
    return len(set(vs)) == len(vs)
