"""Coproduct expansions, action tables and smash-product cross relations.

Actors are opaque labels.  Their action on the generators of the base
algebra is tabulated in closed form and never expanded inside the Borel
algebra.  A base generator ``u`` appears twice in the smash presentation:
``u#1`` in the first PBW block and ``1#u`` in the second.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import catalog
from . import lattice as lat
from .engine import Element, GeneratorInfo, Presentation
from .lattice import LatticeVector
from .qcoeff import ONE, QHAT, ZERO, LaurentPoly, qpow, signed_qpow


class UnknownActor(KeyError):
    pass


class MissingActionValue(KeyError):
    pass


@dataclass(frozen=True)
class Kappa:
    mu: LatticeVector


@dataclass(frozen=True)
class Chevalley:
    """The simple generator ``E_j``."""
    j: int


@dataclass(frozen=True)
class EDown:
    """``E_{j down i+1}``: degree ``alpha_{i+1} + ... + alpha_j``."""
    j: int
    i: int


@dataclass(frozen=True)
class EUp:
    """``E_{j+1 up i}``: degree ``alpha_{j+1} + ... + alpha_i``."""
    j: int
    i: int


@dataclass(frozen=True)
class Eps:
    """``epsilon_{ij}``."""
    i: int
    j: int


@dataclass(frozen=True)
class RootVec:
    gen: int


@dataclass(frozen=True)
class Product:
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))


Actor = Union[Kappa, Chevalley, EDown, EUp, Eps, RootVec, Product]


def actor_label(a: Actor, names: list[str] | None = None) -> str:
    if isinstance(a, Kappa):
        return f"K[{a.mu}]"
    if isinstance(a, Chevalley):
        return f"E{a.j}"
    if isinstance(a, EDown):
        return f"E[{a.j}v{a.i + 1}]"
    if isinstance(a, EUp):
        return f"E[{a.j + 1}^{a.i}]"
    if isinstance(a, Eps):
        return f"eps[{a.i},{a.j}]"
    if isinstance(a, RootVec):
        return names[a.gen] if names else f"g{a.gen}"
    if isinstance(a, Product):
        return "*".join(actor_label(f, names) for f in a.factors)
    raise UnknownActor(a)


@dataclass(frozen=True)
class CoproductEntry:
    actor: Actor
    scalar: LaurentPoly
    right: int | None  # base generator id, or None for the unit


@dataclass
class CoproductTable:
    family: str
    rank: int
    base: Presentation
    entries: dict[int, list[CoproductEntry]]

    def to_rows(self) -> list[list]:
        names = self.base.names
        return [[names[g], actor_label(e.actor, names), str(e.scalar), names[e.right] if e.right is not None else "1"]
                for g, es in sorted(self.entries.items()) for e in es]


class ActionTable:
    """Action of actors on base generators; values are linear in the generators."""

    def __init__(self, family: str, rank: int, base: Presentation, spec: lat.RootSystemSpec):
        self.family = family
        self.rank = rank
        self.base = base
        self.spec = spec
        self.t = base.size
        if family == "D":
            self.x = {i: rank - i for i in range(1, rank + 1)}
            self.y = {i: rank - 1 + i for i in range(1, rank + 1)}
            self.kind = {g: ("x", i) for i, g in self.x.items()}
            self.kind.update({g: ("y", i) for i, g in self.y.items()})
        else:
            self.z = {i: i - 1 for i in range(1, rank + 1)}
            self.kind = {g: ("z", i) for i, g in self.z.items()}

    def degree(self, g: int) -> LatticeVector:
        return self.base.generators[g].degree

    def _gen(self, c: LaurentPoly, g: int) -> Element:
        return Element({(g,): c}, self.t)

    def _zero(self) -> Element:
        return Element.zero(self.t)

    def value(self, a: Actor, g: int) -> Element:
        """Value of a non-product actor on generator ``g``."""
        if g not in self.kind:
            raise MissingActionValue(f"generator {g} not in the base alphabet")
        if isinstance(a, Kappa):
            return self._gen(qpow(a.mu.dot(self.degree(g))), g)
        if isinstance(a, RootVec):
            return self._zero()
        if self.family == "D":
            return self._value_d(a, *self.kind[g])
        return self._value_a(a, self.kind[g][1])

    def _value_d(self, a: Actor, kind: str, r: int) -> Element:
        n, x, y = self.rank, self.x, self.y
        mq = -qpow(1)
        if isinstance(a, Chevalley):
            j = a.j
            if not 1 <= j <= n + 1:
                raise MissingActionValue(a)
            if kind == "x":
                if j == 1:
                    if r == 1:
                        return self._gen(mq, y[2])
                    if r == 2:
                        return self._gen(mq, y[1])
                    return self._zero()
                return self._gen(mq, x[r - 1]) if j == r else self._zero()
            if j == n + 1 or j != r + 1:
                return self._zero()
            return self._gen(mq, y[r + 1])
        if isinstance(a, EDown):
            j, i = a.j, a.i
            if not 1 <= i < j <= n:
                raise MissingActionValue(a)
            if kind == "x":
                return self._gen(mq, x[i]) if r == j else self._zero()
            return self._gen(signed_qpow(-1, j - i), y[j]) if r == i else self._zero()
        if isinstance(a, EUp):
            j, i = a.j, a.i
            if not 1 <= j < i <= n:
                raise MissingActionValue(a)
            if kind == "x":
                return self._gen(signed_qpow(-1, i - j), x[j]) if r == i else self._zero()
            return self._gen(mq, y[i]) if r == j else self._zero()
        if isinstance(a, Eps):
            i, j = a.i, a.j
            if not (1 <= i <= n and 1 <= j <= n):
                raise MissingActionValue(a)
            if kind == "y":
                return self._zero()
            out = self._zero()
            if r == i:
                out = out + self._gen(signed_qpow(-1, i + j - 2) * qpow(int(i == j)), y[j])
            if r == j:
                out = out + self._gen(mq, y[i])
            return out
        raise UnknownActor(a)

    def _value_a(self, a: Actor, r: int) -> Element:
        m, z = self.rank, self.z
        mq = -qpow(1)
        if isinstance(a, Chevalley):
            j = a.j
            if not 1 <= j <= m:
                raise MissingActionValue(a)
            if j == 1 or j != r + 1:
                return self._zero()
            return self._gen(mq, z[r + 1])
        if isinstance(a, EUp):
            j, i = a.j, a.i
            if not 1 <= j < i <= m:
                raise MissingActionValue(a)
            return self._gen(mq, z[i]) if r == j else self._zero()
        raise UnknownActor(a)


def act(table: ActionTable, a: Actor, x: Element | int) -> Element:
    """Apply an actor to a generator id or to a linear combination of generators."""
    if isinstance(x, int):
        x = Element.gen(x, table.t)
    if isinstance(a, Product):
        for f in reversed(a.factors):
            x = act(table, f, x)
        return x
    out = Element.zero(table.t)
    for w, c in x:
        if len(w) != 1:
            raise MissingActionValue(f"actors are tabulated on generators only, got word {w}")
        out = out + table.value(a, w[0]).scale(c)
    return out


def actor_degree(spec: lat.RootSystemSpec, a: Actor, base: Presentation) -> LatticeVector:
    zero = LatticeVector.zero(spec.dim)
    if isinstance(a, Kappa):
        return zero
    if isinstance(a, Chevalley):
        return spec.alpha(a.j)
    if isinstance(a, EDown):
        return sum((spec.alpha(k) for k in range(a.i + 1, a.j + 1)), zero)
    if isinstance(a, EUp):
        return sum((spec.alpha(k) for k in range(a.j + 1, a.i + 1)), zero)
    if isinstance(a, Eps):
        # y_i = eps_{ij} . x_j up to scalar
        return base.generators[base.size // 2 - 1 + a.i].degree - base.generators[base.size // 2 - a.j].degree
    if isinstance(a, RootVec):
        return base.generators[a.gen].degree
    if isinstance(a, Product):
        return sum((actor_degree(spec, f, base) for f in a.factors), zero)
    raise UnknownActor(a)


def _base(family: str, rank: int) -> tuple[Presentation, lat.RootSystemSpec]:
    if family == "D":
        return catalog.euclidean(rank), lat.type_d(rank)
    if family == "A":
        return catalog.affine_space(rank), lat.type_a(rank)
    raise catalog.UnknownName(family)


def coproduct_table(family: str, rank: int) -> CoproductTable:
    base, _ = _base(family, rank)
    deg = lambda g: base.generators[g].degree  # noqa: E731
    entries: dict[int, list[CoproductEntry]] = {}

    def lead(g):
        return [CoproductEntry(Kappa(-deg(g)), ONE, g), CoproductEntry(RootVec(g), ONE, None)]

    if family == "D":
        n = rank
        x = {i: n - i for i in range(1, n + 1)}
        y = {i: n - 1 + i for i in range(1, n + 1)}
        for i in range(1, n + 1):
            es = lead(x[i])
            for j in range(i + 1, n + 1):
                es.append(CoproductEntry(Product((EDown(j, i), Kappa(-deg(x[j])))), QHAT, x[j]))
            entries[x[i]] = es
            es = lead(y[i])
            for j in range(1, n + 1):
                es.append(CoproductEntry(Product((Eps(i, j), Kappa(-deg(x[j])))), QHAT, x[j]))
            for j in range(1, i):
                es.append(CoproductEntry(Product((EUp(j, i), Kappa(-deg(y[j])))), QHAT, y[j]))
            entries[y[i]] = es
    else:
        m = rank
        for i in range(1, m + 1):
            es = lead(i - 1)
            for j in range(1, i):
                es.append(CoproductEntry(Product((EUp(j, i), Kappa(-deg(j - 1)))), QHAT, j - 1))
            entries[i - 1] = es
    return CoproductTable(family, rank, base, entries)


def action_table(family: str, rank: int) -> ActionTable:
    base, spec = _base(family, rank)
    return ActionTable(family, rank, base, spec)


def derive_cross_relations(cop: CoproductTable, table: ActionTable) -> dict[tuple[int, int], Element]:
    """``(1#g)(h#1) - sum scalar * (actor . h) # right`` for every ordered pair ``(g, h)``.

    Keys are base-generator pairs ``(g, h)``.  In the doubled alphabet ``u#1``
    has the base id and ``1#u`` has the base id shifted by ``t``.
    """
    if (cop.family, cop.rank) != (table.family, table.rank):
        raise ValueError("coproduct and action tables are for different algebras")
    t = table.t
    size = 2 * t
    out = {}
    for g in range(t):
        for h in range(t):
            terms: dict[tuple[int, ...], LaurentPoly] = {(g + t, h): ONE}
            for e in cop.entries[g]:
                val = act(table, e.actor, h)
                for w, c in val:
                    word = (w[0],) if e.right is None else (w[0], e.right + t)
                    terms[word] = terms.get(word, ZERO) - e.scalar * c
            out[(g, h)] = Element(terms, size)
    return out


def smash_generators(family: str, rank: int) -> list[GeneratorInfo]:
    if family == "D":
        names, displays = catalog.smash_d_names(rank)
        degrees = catalog.affine_d_degrees(rank)
    else:
        base = [f"z{i}" for i in range(1, rank + 1)]
        names = [f"zL{i}" for i in range(1, rank + 1)] + [f"zR{i}" for i in range(1, rank + 1)]
        displays = [f"{b[0]}_{b[1:]}#1" for b in base] + [f"1#{b[0]}_{b[1:]}" for b in base]
        degrees = catalog.affine_a_degrees(rank)
    return [GeneratorInfo(i, nm, d, disp) for i, (nm, d, disp) in enumerate(zip(names, degrees, displays))]


def smash_presentation(family: str, rank: int) -> Presentation:
    """Both base copies plus the derived cross relations, in the affine PBW order."""
    cop = coproduct_table(family, rank)
    table = action_table(family, rank)
    base = cop.base
    t = base.size
    right = [r.map_words(lambda w: (tuple(g + t for g in w), ONE)) for r in base.relations]
    left = [Element(r.terms, 2 * t) for r in base.relations]
    right = [Element(r.terms, 2 * t) for r in right]
    cross = list(derive_cross_relations(cop, table).values())
    fam = "affineD" if family == "D" else "affineA"
    return Presentation(f"smash{family}", fam, rank, smash_generators(family, rank), left + right + cross,
                        ("smash product law",))
