"""Loading of the bundled monomial catalogs and Sq-identity transcriptions."""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .f2core import Monomial, Polynomial, WeightVector, parse_monomial

__all__ = [
    "Identity",
    "fixture_path",
    "load_monomials",
    "load_polynomial",
    "load_identities",
    "P_TERMS",
]

P_TERMS = "p.txt"


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("hitf2") / "fixtures" / name))


def _lines(source) -> list[str]:
    path = source if isinstance(source, Path) else fixture_path(source)
    out = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append(line)
    return out


def load_monomials(source) -> list[Monomial]:
    """One monomial per line, file order preserved."""
    return [parse_monomial(line) for line in _lines(source)]


def load_polynomial(source) -> Polynomial:
    monos = load_monomials(source)
    if not monos:
        raise ValueError(f"{source}: no terms")
    return Polynomial(monos[0].k, monos)


@dataclass
class Identity:
    """``lhs + sum(terms) + sum(Sq^r(arg)) == 0`` modulo monomials of weight below ``weight``."""

    name: str
    weight: WeightVector
    lhs: Monomial
    terms: list[Monomial] = field(default_factory=list)
    squares: list[tuple[int, Monomial]] = field(default_factory=list)


def load_identities(source="identities.txt") -> list[Identity]:
    out: list[Identity] = []
    cur: Identity | None = None
    pending: dict = {}
    for line in _lines(source):
        word, _, rest = line.partition(" ")
        if word == "identity":
            pending = {"name": rest.strip(), "terms": [], "squares": []}
        elif word == "weight":
            pending["weight"] = WeightVector(int(x) for x in rest.split(","))
        elif word == "lhs":
            pending["lhs"] = parse_monomial(rest)
        elif word == "term":
            pending["terms"].append(parse_monomial(rest))
        elif word == "sq":
            r, _, arg = rest.partition(" ")
            pending["squares"].append((int(r), parse_monomial(arg)))
        elif word == "end":
            cur = Identity(**pending)
            out.append(cur)
            pending = {}
        else:
            raise ValueError(f"unrecognised identity line: {line!r}")
    return out
