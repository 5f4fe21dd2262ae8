"""JSON presentation files.

Layout::

    {"format": "qpbw-presentation", "version": 1,
     "name": ..., "family": ..., "rank": ..., "provenance": [...],
     "generators": [[id, name, [[e...], delta], display-or-null], ...],
     "relations": [[[coefficient, [ids...]], ...], ...]}

Coefficients are written with the expression syntax (``"q^2 - q^-2"``) and
read back with the same parser, so a write/read cycle is lossless.
"""
from __future__ import annotations

import json
from pathlib import Path

from .engine import Element, GeneratorInfo, Presentation
from .lattice import LatticeVector
from .parse import ParseError, parse_coefficient

FORMAT = "qpbw-presentation"
VERSION = 1
_KEYS = {"format", "version", "name", "family", "rank", "provenance", "generators", "relations"}


class FormatError(ValueError):
    def __init__(self, msg: str, where: str = ""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


def to_dict(p: Presentation) -> dict:
    return {
        "format": FORMAT,
        "version": VERSION,
        "name": p.name,
        "family": p.family,
        "rank": p.rank,
        "provenance": list(p.provenance),
        "generators": [[g.id, g.name, g.degree.to_json(), g.display] for g in p.generators],
        "relations": [[[str(c), list(w)] for w, c in r] for r in p.relations],
    }


def dumps(p: Presentation) -> str:
    return json.dumps(to_dict(p), indent=1, ensure_ascii=False) + "\n"


def write_presentation(p: Presentation, path: str | Path) -> None:
    Path(path).write_text(dumps(p), encoding="utf-8")


def _expect(cond: bool, msg: str, where: str) -> None:
    if not cond:
        raise FormatError(msg, where)


def from_dict(data) -> Presentation:
    _expect(isinstance(data, dict), "top level must be an object", "document")
    extra = set(data) - _KEYS
    _expect(not extra, f"unknown fields {sorted(extra)} for format version {VERSION}", "document")
    missing = _KEYS - set(data)
    _expect(not missing, f"missing fields {sorted(missing)}", "document")
    _expect(data["format"] == FORMAT, f"not a {FORMAT} file", "format")
    _expect(data["version"] == VERSION, f"unsupported version {data['version']!r}", "version")
    _expect(isinstance(data["rank"], int), "rank must be an integer", "rank")
    gens = []
    for k, g in enumerate(data["generators"]):
        where = f"generators[{k}]"
        _expect(isinstance(g, list) and len(g) == 4, "expected [id, name, degree, display]", where)
        gid, name, deg, display = g
        _expect(gid == k, f"expected id {k}", where)
        _expect(isinstance(name, str) and name, "bad name", where)
        try:
            degree = LatticeVector.from_json(deg)
        except (TypeError, ValueError) as exc:
            raise FormatError(f"bad degree: {exc}", where) from None
        gens.append(GeneratorInfo(gid, name, degree, display))
    t = len(gens)
    rels = []
    for k, rel in enumerate(data["relations"]):
        terms = {}
        _expect(isinstance(rel, list), "relation must be a list of terms", f"relations[{k}]")
        for m, term in enumerate(rel):
            where = f"relations[{k}][{m}]"
            _expect(isinstance(term, list) and len(term) == 2, "expected [coefficient, word]", where)
            coef, word = term
            try:
                c = parse_coefficient(coef)
            except (ParseError, TypeError) as exc:
                raise FormatError(f"bad coefficient: {exc}", where) from None
            _expect(isinstance(word, list) and all(isinstance(g, int) and 0 <= g < t for g in word),
                    "word ids out of range", where)
            _expect(tuple(word) not in terms, "repeated word", where)
            terms[tuple(word)] = c
        rels.append(Element(terms, t))
    return Presentation(data["name"], data["family"], data["rank"], gens, rels, tuple(data["provenance"]))


def loads(text: str) -> Presentation:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return from_dict(data)


def read_presentation(path: str | Path) -> Presentation:
    return loads(Path(path).read_text(encoding="utf-8"))
