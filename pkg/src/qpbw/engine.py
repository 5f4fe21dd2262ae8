"""Free-algebra elements, PBW rewriting and degree-2 relation spans.

Words are tuples of generator ids; the id order is the PBW order.  Words are
compared degree-lexicographically (length first, then lexicographically), and
a word is in normal form when its ids are non-decreasing.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .lattice import LatticeVector
from .qcoeff import (
    ONE, ZERO, LaurentPoly, NotDivisible, RationalFunctionQ, exact_divide, laurent_gcd,
)

Word = tuple[int, ...]

DEFAULT_MAX_STEPS = 10 ** 7


class EngineError(Exception):
    pass


class AlphabetMismatch(EngineError):
    pass


class NotOrientable(EngineError):
    pass


class NonDecreasing(EngineError):
    pass


class DuplicatePair(EngineError):
    pass


class NotHomogeneous(EngineError):
    pass


class NotQuadratic(EngineError):
    pass


class IncompleteSystem(EngineError):
    pass


class StepBudgetExceeded(EngineError):
    pass


class BadMap(EngineError):
    pass


def word_key(w: Word) -> tuple[int, Word]:
    return (len(w), w)


def is_sorted_word(w: Word) -> bool:
    return all(a <= b for a, b in zip(w, w[1:]))


@dataclass(frozen=True)
class GeneratorInfo:
    id: int
    name: str
    degree: LatticeVector
    display: str | None = None

    @property
    def label(self) -> str:
        return self.display or self.name


class Element:
    """Finite linear combination of words with Laurent coefficients."""

    __slots__ = ("terms", "size")

    def __init__(self, terms: Mapping[Word, LaurentPoly] | Iterable[tuple[Word, LaurentPoly]] = (),
                 size: int | None = None):
        acc: dict[Word, LaurentPoly] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for w, c in items:
            c = LaurentPoly.coerce(c)
            w = tuple(w)
            acc[w] = acc.get(w, ZERO) + c
        self.terms = {w: c for w, c in acc.items() if c}
        self.size = size
        if size is not None:
            for w in self.terms:
                for g in w:
                    if not 0 <= g < size:
                        raise AlphabetMismatch(f"generator id {g} outside alphabet of size {size}")

    @classmethod
    def _raw(cls, terms: dict, size: int | None) -> "Element":
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.size = size
        return obj

    @classmethod
    def gen(cls, i: int, size: int | None = None) -> "Element":
        return cls({(i,): ONE}, size)

    @classmethod
    def word(cls, w: Sequence[int], coeff=ONE, size: int | None = None) -> "Element":
        return cls({tuple(w): LaurentPoly.coerce(coeff)}, size)

    @classmethod
    def scalar(cls, c, size: int | None = None) -> "Element":
        return cls({(): LaurentPoly.coerce(c)}, size)

    @classmethod
    def zero(cls, size: int | None = None) -> "Element":
        return cls._raw({}, size)

    def _size_with(self, other: "Element") -> int | None:
        if self.size is not None and other.size is not None and self.size != other.size:
            raise AlphabetMismatch(f"alphabets of size {self.size} and {other.size}")
        return self.size if self.size is not None else other.size

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[Word, LaurentPoly]]:
        return iter(sorted(self.terms.items(), key=lambda t: word_key(t[0])))

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, w: Sequence[int]) -> LaurentPoly:
        return self.terms.get(tuple(w), ZERO)

    def words(self) -> list[Word]:
        return sorted(self.terms, key=word_key)

    def leading_word(self) -> Word:
        return max(self.terms, key=word_key)

    def __add__(self, other: "Element") -> "Element":
        size = self._size_with(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            v = acc.get(w, ZERO) + c
            if v:
                acc[w] = v
            else:
                acc.pop(w, None)
        return Element._raw(acc, size)

    def __neg__(self) -> "Element":
        return Element._raw({w: -c for w, c in self.terms.items()}, self.size)

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, c) -> "Element":
        c = LaurentPoly.coerce(c)
        if not c:
            return Element.zero(self.size)
        return Element._raw({w: v * c for w, v in self.terms.items()}, self.size)

    def __mul__(self, other) -> "Element":
        if isinstance(other, (LaurentPoly, int)):
            return self.scale(other)
        if not isinstance(other, Element):
            return NotImplemented
        return multiply_elements(self, other)

    def __rmul__(self, other) -> "Element":
        if isinstance(other, (LaurentPoly, int)):
            return self.scale(other)
        return NotImplemented

    def map_words(self, f: Callable[[Word], tuple[Word, LaurentPoly]]) -> "Element":
        acc: dict[Word, LaurentPoly] = {}
        for w, c in self.terms.items():
            nw, s = f(w)
            acc[nw] = acc.get(nw, ZERO) + c * s
        return Element._raw({w: c for w, c in acc.items() if c}, self.size)

    def degree_of(self, w: Word, gens: Sequence[GeneratorInfo]) -> LatticeVector:
        deg = gens[0].degree.__class__.zero(gens[0].degree.dim)
        for g in w:
            deg = deg + gens[g].degree
        return deg

    def is_homogeneous(self, gens: Sequence[GeneratorInfo]) -> bool:
        degs = {self.degree_of(w, gens) for w in self.terms}
        return len(degs) <= 1

    def format(self, names: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        out = ""
        for k, (w, c) in enumerate(self):
            sign, body = format_coefficient(c)
            letters = "*".join(names[g] for g in w)
            if body and letters:
                term = f"{body}*{letters}"
            else:
                term = body or letters or "1"
            if k == 0:
                out = ("-" if sign < 0 else "") + term
            else:
                out += (" - " if sign < 0 else " + ") + term
        return out

    def __repr__(self) -> str:
        top = max((g for w in self.terms for g in w), default=-1)
        return f"Element({self.format([f'g{i}' for i in range(top + 1)])})"


def format_coefficient(c: LaurentPoly) -> tuple[int, str]:
    """Split a coefficient into a sign and a printable body ('' means 1).

    Monomials and monomial multiples of ``qhat`` print compactly; anything
    else prints as a parenthesised sum.
    """
    def mono(a, e) -> str:
        parts = []
        if abs(a) != 1:
            parts.append(str(abs(a)))
        if e == 1:
            parts.append("q")
        elif e != 0:
            parts.append(f"q^{e}")
        return "*".join(parts)

    if c.is_monomial():
        (e, a), = c.terms
        return (-1 if a < 0 else 1), mono(a, e)
    if len(c.terms) == 2:
        (e1, a1), (e2, a2) = c.terms
        if e2 - e1 == 2 and a1 == -a2:
            m = mono(a2, e1 + 1)
            return (-1 if a2 < 0 else 1), (f"{m}*qhat" if m else "qhat")
    return 1, f"({c})"


def multiply_elements(x: Element, y: Element) -> Element:
    size = x._size_with(y)
    acc: dict[Word, LaurentPoly] = {}
    for u, a in x.terms.items():
        for v, b in y.terms.items():
            w = u + v
            acc[w] = acc.get(w, ZERO) + a * b
    return Element._raw({w: c for w, c in acc.items() if c}, size)


@dataclass
class Presentation:
    """Generators with degrees plus a list of relations (each meaning ``= 0``)."""

    name: str
    family: str
    rank: int
    generators: list[GeneratorInfo]
    relations: list[Element]
    provenance: tuple[str, ...] = ()
    _system: "RewriteSystem | None" = field(default=None, repr=False, compare=False)

    @property
    def size(self) -> int:
        return len(self.generators)

    @property
    def names(self) -> list[str]:
        return [g.name for g in self.generators]

    def index(self, name: str) -> int:
        for g in self.generators:
            if g.name == name:
                return g.id
        raise KeyError(name)

    def gen(self, name: str) -> Element:
        return Element.gen(self.index(name), self.size)

    def rewrite_system(self) -> "RewriteSystem":
        if self._system is None:
            self._system = orient_relations(self.generators, self.relations)
        return self._system

    def __eq__(self, other) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        return (self.name, self.family, self.rank, self.generators, self.relations, self.provenance) == (
            other.name, other.family, other.rank, other.generators, other.relations, other.provenance)


class RewriteSystem:
    """Oriented quadratic rules ``g_b g_a -> rhs`` for ``b > a``."""

    def __init__(self, generators: Sequence[GeneratorInfo], rules: Mapping[tuple[int, int], Element],
                 check_grading: bool = True):
        self.generators = list(generators)
        ids = [g.id for g in self.generators]
        if ids != list(range(len(ids))):
            raise EngineError("generator ids must be 0..t-1 in PBW order")
        self.rules: dict[tuple[int, int], Element] = {}
        for (b, a), rhs in rules.items():
            if not b > a:
                raise NotOrientable(f"rule for ({b}, {a}) is not an out-of-order pair")
            lhs = (b, a)
            for w in rhs.terms:
                if not word_key(w) < word_key(lhs):
                    raise NonDecreasing(f"rule {lhs}: right-hand word {w} is not smaller")
            if check_grading and rhs.terms:
                target = self.degree(lhs)
                for w in rhs.terms:
                    if self.degree(w) != target:
                        raise NotHomogeneous(f"rule {lhs}: word {w} has degree {self.degree(w)} != {target}")
            self.rules[lhs] = rhs

    @property
    def size(self) -> int:
        return len(self.generators)

    def degree(self, w: Word) -> LatticeVector:
        d = LatticeVector.zero(self.generators[0].degree.dim)
        for g in w:
            d = d + self.generators[g].degree
        return d

    def is_complete(self) -> bool:
        return all((b, a) in self.rules for b, a in _out_of_order_pairs(self.size))

    def missing_pairs(self) -> list[tuple[int, int]]:
        return [p for p in _out_of_order_pairs(self.size) if p not in self.rules]

    def rule(self, b: int, a: int) -> Element:
        try:
            return self.rules[(b, a)]
        except KeyError:
            raise IncompleteSystem(f"no rule for the pair ({b}, {a})") from None

    def relations(self) -> list[Element]:
        """The rules read back as relations ``lhs - rhs``."""
        out = []
        for lhs, rhs in sorted(self.rules.items()):
            out.append(Element.word(lhs, ONE, self.size) - rhs)
        return out


def _out_of_order_pairs(t: int) -> Iterator[tuple[int, int]]:
    for a, b in combinations(range(t), 2):
        yield (b, a)


def orient_relations(generators: Sequence[GeneratorInfo], relations: Iterable[Element],
                     check_grading: bool = True) -> RewriteSystem:
    size = len(generators)
    rules: dict[tuple[int, int], Element] = {}
    for rel in relations:
        if rel.is_zero():
            continue
        for w in rel.terms:
            if len(w) != 2:
                raise NotQuadratic(f"relation word {w} does not have length 2")
            for g in w:
                if not 0 <= g < size:
                    raise AlphabetMismatch(f"generator id {g} outside alphabet of size {size}")
        bad = [w for w in rel.terms if w[0] > w[1]]
        if len(bad) != 1:
            raise NotOrientable(
                f"relation has {len(bad)} out-of-order words: {sorted(bad)}")
        lhs = bad[0]
        lead = rel.terms[lhs]
        rhs_terms = {}
        for w, c in rel.terms.items():
            if w == lhs:
                continue
            try:
                rhs_terms[w] = -exact_divide(c, lead)
            except NotDivisible:
                raise NotOrientable(f"coefficient {lead} of {lhs} does not divide {c}") from None
        if lhs in rules:
            raise DuplicatePair(f"two relations for the pair {lhs}")
        rules[lhs] = Element._raw(rhs_terms, size)
    return RewriteSystem(generators, rules, check_grading=check_grading)


@dataclass
class RewriteStep:
    word: Word
    position: int
    coefficient: LaurentPoly
    replacement: Element


def _descent(w: Word, strategy: str) -> int:
    rng = range(len(w) - 1) if strategy == "leftmost" else range(len(w) - 2, -1, -1)
    for k in rng:
        if w[k] > w[k + 1]:
            return k
    return -1


def normalize(x: Element, sys: RewriteSystem, strategy: str = "leftmost",
              max_steps: int = DEFAULT_MAX_STEPS,
              trace: Callable[[RewriteStep], None] | None = None) -> Element:
    """Reduce ``x`` to its PBW normal form (a combination of sorted words).

    Pending words are processed from the largest down; every rule application
    only creates smaller words, so each word is rewritten at most once.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    if x.size is not None and x.size != sys.size:
        raise AlphabetMismatch(f"element over {x.size} generators, system over {sys.size}")
    pending: dict[Word, LaurentPoly] = {}
    heap: list = []

    def push(w: Word, c: LaurentPoly) -> None:
        if w in pending:
            pending[w] = pending[w] + c
        else:
            pending[w] = c
            heapq.heappush(heap, (-len(w), tuple(-g for g in w)))

    for w, c in x.terms.items():
        push(w, c)
    out: dict[Word, LaurentPoly] = {}
    steps = 0
    while heap:
        _, neg = heapq.heappop(heap)
        w = tuple(-g for g in neg)
        c = pending.pop(w)
        if not c:
            continue
        k = _descent(w, strategy)
        if k < 0:
            out[w] = c
            continue
        rhs = sys.rule(w[k], w[k + 1])
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(f"more than {max_steps} rule applications")
        if trace is not None:
            trace(RewriteStep(w, k, c, rhs))
        pre, post = w[:k], w[k + 2:]
        for u, d in rhs.terms.items():
            push(pre + u + post, c * d)
    return Element._raw(out, sys.size)


def rewrite_at(x: Element, sys: RewriteSystem, position: int) -> Element:
    """Apply one rule at ``position`` in every word of ``x`` that has a descent there."""
    acc: dict[Word, LaurentPoly] = {}
    for w, c in x.terms.items():
        if position + 1 < len(w) and w[position] > w[position + 1]:
            rhs = sys.rule(w[position], w[position + 1])
            for u, d in rhs.terms.items():
                nw = w[:position] + u + w[position + 2:]
                acc[nw] = acc.get(nw, ZERO) + c * d
        else:
            acc[w] = acc.get(w, ZERO) + c
    return Element._raw({w: c for w, c in acc.items() if c}, sys.size)


@dataclass(frozen=True)
class FailedTriple:
    triple: tuple[int, int, int]
    left: Element
    right: Element


def diamond_check(sys: RewriteSystem, max_steps: int = DEFAULT_MAX_STEPS,
                  detail: bool = False) -> list:
    """Resolve every overlap ``g_c g_b g_a`` (``c > b > a``) both ways.

    Returns the triples whose two reductions disagree, sorted; an empty list
    certifies that the sorted words form a basis.
    """
    missing = sys.missing_pairs()
    if missing:
        raise IncompleteSystem(f"no rules for pairs {missing[:5]}{'...' if len(missing) > 5 else ''}")
    failed = []
    for a, b, c in combinations(range(sys.size), 3):
        w = Element.word((c, b, a), ONE, sys.size)
        left = normalize(rewrite_at(w, sys, 0), sys, max_steps=max_steps)
        right = normalize(rewrite_at(w, sys, 1), sys, max_steps=max_steps)
        if left != right:
            failed.append(FailedTriple((c, b, a), left, right))
    failed.sort(key=lambda f: f.triple)
    return failed if detail else [f.triple for f in failed]


def sorted_words(t: int, d: int) -> Iterator[Word]:
    """All non-decreasing words of length ``d`` over ``t`` letters."""
    from itertools import combinations_with_replacement
    return combinations_with_replacement(range(t), d)


# -- relation spans ------------------------------------------------------

def _primitive(row: dict[Word, LaurentPoly]) -> dict[Word, LaurentPoly]:
    """Divide out the polynomial content and make the leading term ``1*q^0``-led."""
    g = None
    for c in row.values():
        g = c if g is None else laurent_gcd(g, c)
        if g == ONE:
            break
    if g is not None and g != ONE and not g.is_monomial():
        row = {w: exact_divide(c, g) for w, c in row.items()}
    lead = row[max(row, key=word_key)]
    (e, a) = lead.terms[-1]
    unit = LaurentPoly.monomial(a, e)
    if unit != ONE:
        inv = unit.inverse()
        row = {w: c * inv for w, c in row.items()}
    return row


class RelationSpan:
    """Echelon basis (over ``Q(q)``) of a span of relations.

    Rows are stored fraction-free as Laurent-polynomial combinations keyed by
    their leading word, with content removed after every elimination.
    """

    def __init__(self, rows: Iterable[Element] = (), require_quadratic: bool = True):
        self.require_quadratic = require_quadratic
        self.rows: dict[Word, dict[Word, LaurentPoly]] = {}
        for r in rows:
            self.add(r)

    def copy(self) -> "RelationSpan":
        s = RelationSpan(require_quadratic=self.require_quadratic)
        s.rows = dict(self.rows)
        return s

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def _check(self, x: Element) -> None:
        if self.require_quadratic:
            for w in x.terms:
                if len(w) != 2:
                    raise NotQuadratic(f"word {w} does not have length 2")

    def reduce(self, x: Element | dict) -> dict[Word, LaurentPoly]:
        row = dict(x.terms) if isinstance(x, Element) else dict(x)
        if isinstance(x, Element):
            self._check(x)
        while row:
            pivot = None
            for w in sorted(row, key=word_key, reverse=True):
                if w in self.rows:
                    pivot = w
                    break
            if pivot is None:
                break
            prow = self.rows[pivot]
            lp = prow[pivot]
            cr = row[pivot]
            g = laurent_gcd(lp, cr)
            a, b = exact_divide(lp, g), exact_divide(cr, g)
            new: dict[Word, LaurentPoly] = {}
            for w, c in row.items():
                new[w] = c * a
            for w, c in prow.items():
                v = new.get(w, ZERO) - c * b
                new[w] = v
            row = {w: c for w, c in new.items() if c}
            if row:
                row = _primitive(row)
        return row

    def contains(self, x: Element) -> bool:
        return not self.reduce(x)

    def add(self, x: Element) -> bool:
        """Add ``x``; return whether the dimension grew."""
        row = self.reduce(x)
        if not row:
            return False
        row = _primitive(row)
        self.rows[max(row, key=word_key)] = row
        return True

    def basis(self) -> list[Element]:
        return [Element._raw(dict(self.rows[p]), None) for p in sorted(self.rows, key=word_key)]

    def canonical_basis(self) -> list[dict[Word, RationalFunctionQ]]:
        """Reduced row echelon form over ``Q(q)`` with unit pivots, pivots ascending."""
        reduced: dict[Word, dict[Word, RationalFunctionQ]] = {}
        # Rows are processed by ascending pivot, so a reduced row never
        # mentions a pivot that is introduced later.
        for p in sorted(self.rows, key=word_key):
            row = {w: RationalFunctionQ(c) for w, c in self.rows[p].items()}
            lead = row[p]
            row = {w: c / lead for w, c in row.items()}
            for piv in sorted(reduced, key=word_key, reverse=True):
                f = row.get(piv)
                if f is None:
                    continue
                for w, c in reduced[piv].items():
                    v = row.get(w, RationalFunctionQ(ZERO)) - f * c
                    if v.is_zero():
                        row.pop(w, None)
                    else:
                        row[w] = v
            reduced[p] = row
        return [reduced[p] for p in sorted(reduced, key=word_key)]


def degree2_span(relations: Iterable[Element]) -> RelationSpan:
    return RelationSpan(relations, require_quadratic=True)


@dataclass
class Comparison:
    kind: str  # "equal", "contained", "contains", "incomparable"
    dim_first: int
    dim_second: int
    dim_sum: int
    complement: list[Element]  # extends span(first) to span(first) + span(second)
    missing: list[Element]  # extends span(second) to span(first) + span(second)

    @property
    def gap(self) -> int:
        return self.dim_sum - self.dim_first


@dataclass(frozen=True)
class GeneratorMap:
    """Bijection ``source id -> (target id, unit scalar)``."""

    images: tuple[tuple[int, LaurentPoly], ...]

    @classmethod
    def identity(cls, t: int) -> "GeneratorMap":
        return cls(tuple((i, ONE) for i in range(t)))

    @classmethod
    def from_pairs(cls, pairs: Mapping[int, tuple[int, LaurentPoly]] | Sequence[tuple[int, LaurentPoly]]) -> "GeneratorMap":
        if isinstance(pairs, Mapping):
            n = len(pairs)
            if sorted(pairs) != list(range(n)):
                raise BadMap("map must be defined on every source id 0..t-1")
            pairs = [pairs[i] for i in range(n)]
        return cls(tuple((int(t), LaurentPoly.coerce(s)) for t, s in pairs))

    def validate(self, size: int | None = None) -> None:
        targets = [t for t, _ in self.images]
        if sorted(targets) != list(range(len(targets))):
            raise BadMap("generator map is not a bijection")
        if size is not None and len(targets) != size:
            raise BadMap(f"map has {len(targets)} entries for {size} generators")
        for _, s in self.images:
            if not s.is_unit():
                raise BadMap(f"scalar {s} is not a unit +-q^k")

    def transport(self, x: Element) -> Element:
        def f(w):
            scalar = ONE
            out = []
            for g in w:
                t, s = self.images[g]
                out.append(t)
                scalar = scalar * s
            return tuple(out), scalar
        return x.map_words(f)


def compare_spans(first: Iterable[Element], second: Iterable[Element]) -> Comparison:
    first = list(first)
    second = list(second)
    s1 = degree2_span(first)
    s2 = degree2_span(second)
    union = s1.copy()
    complement = []
    for r in s2.basis():
        red = union.reduce(r)
        if red:
            union.add(Element._raw(red, None))
            complement.append(Element._raw(red, None))
    union2 = s2.copy()
    missing = []
    for r in s1.basis():
        red = union2.reduce(r)
        if red:
            union2.add(Element._raw(red, None))
            missing.append(Element._raw(red, None))
    if not complement and not missing:
        kind = "equal"
    elif not missing:
        kind = "contained"
    elif not complement:
        kind = "contains"
    else:
        kind = "incomparable"
    return Comparison(kind, s1.dimension, s2.dimension, union.dimension, complement, missing)


def compare_presentations(p1: Presentation, p2: Presentation, gen_map: GeneratorMap | None = None) -> Comparison:
    """Compare degree-2 relation spans after transporting ``p1`` along ``gen_map``.

    ``kind == "contained"`` means span(p1) is strictly inside span(p2).
    """
    if p1.size != p2.size:
        raise BadMap(f"presentations have {p1.size} and {p2.size} generators")
    gen_map = gen_map or GeneratorMap.identity(p1.size)
    gen_map.validate(p1.size)
    moved = [gen_map.transport(r) for r in p1.relations]
    return compare_spans(moved, p2.relations)


def hilbert_count_normal_words(t: int, d: int) -> int:
    return sum(1 for _ in sorted_words(t, d))


def degree_d_dimension(p: Presentation, d: int) -> int:
    """``dim A_d`` by linear algebra on the two-sided ideal in word length ``d``."""
    t = p.size
    span = RelationSpan(require_quadratic=False)
    from itertools import product
    for r in p.relations:
        for left in range(d - 1):
            right = d - 2 - left
            for u in product(range(t), repeat=left):
                for v in product(range(t), repeat=right):
                    span.add(multiply_elements(multiply_elements(Element.word(u), r), Element.word(v)))
    return t ** d - span.dimension

