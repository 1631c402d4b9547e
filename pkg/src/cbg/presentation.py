"""Degree-one cohomology and cup products read off a finite presentation.

H^1(G; F_p) is the space of functionals on the generators that vanish on
every relator's exponent-sum vector.  The cup product of two such classes
is evaluated on each 2-cell of the presentation complex through Fox
derivatives.  Because H^2(G) injects into H^2 of the complex, a product
vanishes for the group exactly when its evaluation vector is a coboundary.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import InvariantViolation, ParseError
from .graphs import SimpleGraph
from .linalg import PrimeField, PrimeFieldMatrix, nullspace, rank
from .properties import PROPERTY_LADDER, mu_at_most, property_index

__all__ = [
    "Letter",
    "Presentation",
    "Cocycle",
    "parse_presentation",
    "format_presentation",
    "standard_raag_presentation",
    "exponent_sum_matrix",
    "h1_basis",
    "dual_cocycle",
    "cup_eval",
    "cup_vanishes",
    "BasisGraph",
    "presentation_basis_graph",
    "Certificate",
    "certify_property",
]

log = logging.getLogger(__name__)

Letter = tuple[int, int]  # (generator index, exponent +1 or -1), 0-based index


def _free_reduce(word: Sequence[Letter]) -> tuple[Letter, ...]:
    out: list[Letter] = []
    for g, e in word:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[tuple[Letter, ...], ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if len(set(gens)) != len(gens):
            raise ValueError("generator names must be distinct")
        kept = []
        for k, word in enumerate(self.relators):
            for g, e in word:
                if not 0 <= g < len(gens) or e not in (1, -1):
                    raise ValueError(f"relator {k + 1} has an invalid letter ({g}, {e})")
            red = _free_reduce(word)
            if red:
                kept.append(red)
            else:
                log.warning("relator %d is trivial after free reduction; dropped", k + 1)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(kept))

    @property
    def n_generators(self) -> int:
        return len(self.generators)

    def word_str(self, word: Sequence[Letter]) -> str:
        return " ".join(self.generators[g] + ("" if e == 1 else "^-1") for g, e in word) or "1"


@dataclass(frozen=True)
class Cocycle:
    """A degree-one class: one field element per generator."""

    values: tuple[int, ...]
    p: int = 2

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) % self.p for v in self.values))

    def evaluate(self, word: Sequence[Letter]) -> int:
        return sum(e * self.values[g] for g, e in word) % self.p

    def is_cocycle(self, P: Presentation) -> bool:
        return len(self.values) == P.n_generators and all(self.evaluate(r) == 0 for r in P.relators)

    def label(self, P: Presentation) -> str:
        terms = []
        for name, v in zip(P.generators, self.values):
            if v:
                terms.append(f"{name}*" if v == 1 else f"{v}{name}*")
        return "+".join(terms) or "0"


_LINE_KEYS = {
    "gens": "gens", "generators": "gens",
    "rel": "rel", "rels": "rel", "relator": "rel", "relators": "rel",
}
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*$")
_EXP = re.compile(r"\^\s*(\{\s*)?([+-]?\s*\d+)\s*(?(1)\})")


def _parse_word(text: str, names: list[str], index: dict[str, int]) -> list[Letter]:
    text = text.strip()
    if text == "1" and "1" not in index:
        return []
    letters: list[Letter] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace() or text[pos] in "*.":
            pos += 1
            continue
        name = next((nm for nm in names if text.startswith(nm, pos)), None)
        if name is None:
            raise ParseError(f"unknown token at {text[pos:]!r}")
        pos += len(name)
        exp = 1
        m = _EXP.match(text, pos)
        if m:
            exp = int(m.group(2).replace(" ", ""))
            pos = m.end()
            if exp == 0:
                raise ParseError(f"malformed exponent 0 on {name}")
        elif text.startswith("^", pos):
            raise ParseError(f"malformed exponent after {name}: {text[pos:]!r}")
        letters.extend([(index[name], 1 if exp > 0 else -1)] * abs(exp))
    return letters


def _invert(word: Sequence[Letter]) -> list[Letter]:
    return [(g, -e) for g, e in reversed(word)]


def parse_presentation(text: str) -> Presentation:
    """Parse ``gens: ...`` and ``rel: u [= v]`` lines.

    Lines may also be separated by ';'.  A ``rel`` line may hold several
    relators separated by commas.  Generators are matched greedily
    (longest name first), so ``x1x2`` reads as two letters.  Exponents are
    written ``^k`` or ``^{k}`` with k a nonzero integer; ``u = v`` means
    ``u v^-1``.
    """
    gens: list[str] = []
    raw_rels: list[str] = []
    stripped = "\n".join(ln.split("#", 1)[0] for ln in text.splitlines())
    for line in re.split(r"[;\n]", stripped):
        line = line.strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        kind = _LINE_KEYS.get(key.strip().lower())
        if not sep or kind is None:
            raise ParseError(f"expected 'gens:' or 'rel:' line, got {line!r}")
        if kind == "gens":
            for name in re.split(r"[\s,]+", rest.strip()):
                if not name:
                    continue
                if not _NAME.match(name):
                    raise ParseError(f"invalid generator name {name!r}")
                if name in gens:
                    raise ParseError(f"duplicate generator {name!r}")
                gens.append(name)
        else:
            raw_rels.extend(r for r in rest.split(",") if r.strip())
    if not gens:
        raise ParseError("empty generator list")
    index = {g: i for i, g in enumerate(gens)}
    names = sorted(gens, key=len, reverse=True)
    relators = []
    for raw in raw_rels:
        sides = raw.split("=")
        if len(sides) > 2:
            raise ParseError(f"relator {raw.strip()!r} has more than one '='")
        word = _parse_word(sides[0], names, index)
        if len(sides) == 2:
            word += _invert(_parse_word(sides[1], names, index))
        relators.append(tuple(word))
    return Presentation(tuple(gens), tuple(relators))


def format_presentation(P: Presentation) -> str:
    lines = ["gens: " + " ".join(P.generators)]
    lines += ["rel: " + P.word_str(r) for r in P.relators]
    return "\n".join(lines) + "\n"


def standard_raag_presentation(graph: SimpleGraph) -> Presentation:
    """Generators v1..vn, one commutator relator per edge."""
    gens = tuple(f"v{i}" for i in graph.vertices)
    rels = tuple(((i - 1, 1), (j - 1, 1), (i - 1, -1), (j - 1, -1)) for i, j in graph.edge_list())
    return Presentation(gens, rels)


def exponent_sum_matrix(P: Presentation, p: int) -> list[list[int]]:
    """Rows are relators, columns generators; entries are exponent sums mod p."""
    M = []
    for r in P.relators:
        row = [0] * P.n_generators
        for g, e in r:
            row[g] += e
        M.append([x % p for x in row])
    return M


def h1_basis(P: Presentation, p: int = 2) -> list[Cocycle]:
    """Echelon basis of the functionals killing every abelianised relator."""
    PrimeField(p)
    E = exponent_sum_matrix(P, p)
    return [Cocycle(v, p) for v in nullspace(E, P.n_generators, p)]


def dual_cocycle(P: Presentation, generator: str | int, p: int = 2) -> Cocycle:
    """The functional dual to one generator; raises if it is not a cocycle."""
    i = P.generators.index(generator) if isinstance(generator, str) else generator
    f = Cocycle(tuple(int(k == i) for k in range(P.n_generators)), p)
    if not f.is_cocycle(P):
        raise InvariantViolation(f"dual of {P.generators[i]} does not vanish on every relator")
    return f


def cup_eval(P: Presentation, f: Cocycle, g: Cocycle) -> tuple[int, ...]:
    """Value of f ⌣ g on each relator 2-cell.

    Expands Σ_x f(∂r/∂x) g(x) over the Fox derivatives: a letter x
    contributes f(prefix before it)·g(x), a letter x^-1 contributes
    -f(prefix through it)·g(x).
    """
    if f.p != g.p:
        raise ValueError("cocycles live over different fields")
    for h in (f, g):
        if not h.is_cocycle(P):
            raise InvariantViolation(f"{h.values} is not a cocycle of the presentation")
    p, fv, gv = f.p, f.values, g.values
    out = []
    for r in P.relators:
        acc = prefix = 0
        for x, e in r:
            if e == 1:
                acc += prefix * gv[x]
                prefix += fv[x]
            else:
                prefix -= fv[x]
                acc -= prefix * gv[x]
        out.append(acc % p)
    return tuple(out)


def cup_vanishes(P: Presentation, f: Cocycle, g: Cocycle, p: int | None = None) -> bool:
    """Whether the evaluation vector is a coboundary, i.e. lies in the column span of E."""
    p = f.p if p is None else p
    if p != f.p:
        raise ValueError("field does not match the cocycles")
    c = cup_eval(P, f, g)
    if not any(c):
        return True
    E = exponent_sum_matrix(P, p)
    augmented = [row + [ci] for row, ci in zip(E, c)]
    return rank(PrimeFieldMatrix(augmented, p)) == rank(PrimeFieldMatrix(E, p))


class BasisGraph(NamedTuple):
    graph: SimpleGraph
    basis: list[Cocycle]
    labels: list[str]


def presentation_basis_graph(P: Presentation, p: int = 2) -> BasisGraph:
    """Vertices are the echelon H^1 basis; edges are the nonvanishing cup products."""
    basis = h1_basis(P, p)
    edges = {
        (a + 1, b + 1)
        for a in range(len(basis))
        for b in range(a + 1, len(basis))
        if not cup_vanishes(P, basis[a], basis[b], p)
    }
    return BasisGraph(SimpleGraph(len(basis), edges), basis, [f.label(P) for f in basis])


@dataclass(frozen=True)
class Certificate:
    """One-directional evidence about the defining graph, read off one basis graph."""

    property: str
    level: int
    p: int
    basis_graph: SimpleGraph
    basis_labels: tuple[str, ...]
    verdict: bool
    statement: str
    implication: str

    @property
    def conclusive(self) -> bool:
        return self.verdict

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "mu_at_most": self.level,
            "p": self.p,
            "basis_graph": self.basis_graph.to_json(),
            "basis_labels": list(self.basis_labels),
            "verdict": self.verdict,
            "conclusive": self.conclusive,
            "statement": self.statement,
            "implication": self.implication,
        }


def certify_property(P: Presentation, prop: str, p: int = 2) -> Certificate:
    """Test a ladder property on the presentation's basis graph.

    The properties are minor-closed and the defining graph of a
    right-angled Artin group embeds in every basis graph, so a positive
    verdict transfers to the defining graph.  A negative one does not.
    """
    k = property_index(prop)
    name = PROPERTY_LADDER[k][0]
    bg = presentation_basis_graph(P, p)
    verdict = mu_at_most(bg.graph, k)
    if verdict:
        statement = f"defining graph is {name}"
        implication = f"if G is a right-angled Artin group A(Γ) then μ(Γ) <= {k} and Γ is {name}"
    else:
        statement = f"inconclusive for upper bound; this basis graph is non-{name}"
        implication = "a negative verdict on a single basis graph certifies nothing about Γ"
    return Certificate(name, k, p, bg.graph, tuple(bg.labels), verdict, statement, implication)
