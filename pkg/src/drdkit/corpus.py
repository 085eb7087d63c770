"""Deterministic generators for positive and negative test digraphs."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Optional

from .digraph import Digraph, strongly_connected
from .errors import InvalidParameter

FAMILIES = (
    "cycle",
    "paper6",
    "paley",
    "debruijn",
    "kautz",
    "random-sc",
    "cycle-with-chord",
)

# The 6-vertex 2-regular distance-regular digraph used throughout the test
# corpus: a -> b,c; b -> d,e; c -> d,e; d -> a,f; e -> a,f; f -> b,c.
_PAPER6_ARCS = (
    ("a", "b"), ("a", "c"),
    ("b", "d"), ("b", "e"),
    ("c", "d"), ("c", "e"),
    ("d", "a"), ("d", "f"),
    ("e", "a"), ("e", "f"),
    ("f", "b"), ("f", "c"),
)


def cycle(n: int) -> Digraph:
    """Directed cycle C_n."""
    if n < 2:
        raise InvalidParameter("cycle needs n >= 2")
    return Digraph.from_arcs(n, [(i, (i + 1) % n) for i in range(n)])


def paper6() -> Digraph:
    """The 6-vertex girth-3 distance-regular digraph of valency 2."""
    labels = ("a", "b", "c", "d", "e", "f")
    index = {s: i for i, s in enumerate(labels)}
    return Digraph.from_arcs(6, [(index[u], index[v]) for u, v in _PAPER6_ARCS], labels)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    i = 2
    while i * i <= q:
        if q % i == 0:
            return False
        i += 1
    return True


def paley(q: int) -> Digraph:
    """Paley tournament on Z_q: x -> y iff y - x is a nonzero square mod q.

    Needs q prime with q = 3 (mod 4) so that -1 is not a square and the
    tournament is well defined.
    """
    if not _is_prime(q):
        raise InvalidParameter(f"paley needs a prime, got {q}")
    if q % 4 != 3:
        raise InvalidParameter(f"paley needs q = 3 (mod 4), got {q}")
    squares = {(x * x) % q for x in range(1, q)}
    arcs = [
        (x, y)
        for x in range(q)
        for y in range(q)
        if x != y and (y - x) % q in squares
    ]
    return Digraph.from_arcs(q, arcs)


def debruijn(d: int, n: int) -> Digraph:
    """Shift digraph on words of length n over d symbols, with the d loop
    arcs at constant words dropped so the result is simple.

    The classical construction keeps those loops; dropping them changes the
    degree sequence, so this family is corpus filler, not a canonical example
    of anything.
    """
    if d < 2 or n < 1:
        raise InvalidParameter("debruijn needs d >= 2 and n >= 1")
    words = ["".join(w) for w in itertools.product(*["0123456789"[:d]] * n)]
    index = {w: i for i, w in enumerate(words)}
    arcs = []
    for w in words:
        for c in "0123456789"[:d]:
            v = w[1:] + c
            if v != w:
                arcs.append((index[w], index[v]))
    return Digraph.from_arcs(len(words), arcs, tuple(words))


def kautz(d: int, n: int) -> Digraph:
    """Kautz digraph K(d, n): words of length n over d + 1 symbols with no
    two consecutive symbols equal; arcs shift left by one symbol.

    (d+1) * d^(n-1) vertices, d-regular, loop-free, diameter n."""
    if d < 2 or n < 1:
        raise InvalidParameter("kautz needs d >= 2 and n >= 1")
    alphabet = "0123456789"[: d + 1]
    words = [
        "".join(w)
        for w in itertools.product(*[alphabet] * n)
        if all(a != b for a, b in zip(w, w[1:]))
    ]
    index = {w: i for i, w in enumerate(words)}
    arcs = []
    for w in words:
        for c in alphabet:
            if c != w[-1]:
                arcs.append((index[w], index[w[1:] + c]))
    return Digraph.from_arcs(len(words), arcs, tuple(words))


def cycle_with_chord(n: int) -> Digraph:
    """C_n plus the chord 0 -> 2: strongly connected but never
    distance-regular for n >= 4."""
    if n < 4:
        raise InvalidParameter("cycle-with-chord needs n >= 4")
    arcs = [(i, (i + 1) % n) for i in range(n)] + [(0, 2)]
    return Digraph.from_arcs(n, arcs)


def random_sc(
    n: int, p: float = 0.5, seed: Optional[int] = None, max_attempts: int = 1000
) -> Digraph:
    """Random strongly connected digraph: sample arcs independently with
    probability p and resample until strongly connected."""
    if n < 1:
        raise InvalidParameter("random-sc needs n >= 1")
    if not (0.0 <= p <= 1.0):
        raise InvalidParameter(f"arc probability {p} outside [0, 1]")
    rng = random.Random(seed)
    for _ in range(max_attempts):
        arcs = [
            (u, v)
            for u in range(n)
            for v in range(n)
            if u != v and rng.random() < p
        ]
        g = Digraph.from_arcs(n, arcs)
        if strongly_connected(g):
            return g
    raise InvalidParameter(
        f"no strongly connected graph found in {max_attempts} samples (n={n}, p={p})"
    )


@dataclass(frozen=True)
class GeneratorSpec:
    """Family name plus integer parameters; seed only matters for random-sc."""

    family: str
    params: tuple[int, ...] = ()
    p: float = 0.5
    seed: Optional[int] = None


def generate(spec: GeneratorSpec) -> Digraph:
    family = spec.family
    params = spec.params
    if family == "cycle":
        if len(params) != 1:
            raise InvalidParameter("cycle takes one parameter: n")
        return cycle(params[0])
    if family == "paper6":
        if params:
            raise InvalidParameter("paper6 takes no parameters")
        return paper6()
    if family == "paley":
        if len(params) != 1:
            raise InvalidParameter("paley takes one parameter: q")
        return paley(params[0])
    if family == "debruijn":
        if len(params) != 2:
            raise InvalidParameter("debruijn takes two parameters: d n")
        return debruijn(*params)
    if family == "kautz":
        if len(params) != 2:
            raise InvalidParameter("kautz takes two parameters: d n")
        return kautz(*params)
    if family == "random-sc":
        if len(params) != 1:
            raise InvalidParameter("random-sc takes one parameter: n")
        return random_sc(params[0], spec.p, spec.seed)
    if family == "cycle-with-chord":
        if len(params) != 1:
            raise InvalidParameter("cycle-with-chord takes one parameter: n")
        return cycle_with_chord(params[0])
    raise InvalidParameter(f"unknown family {family!r}; known: {', '.join(FAMILIES)}")


def all_strongly_connected_digraphs(n: int) -> Iterator[Digraph]:
    """Every strongly connected simple digraph on n labeled vertices, in
    deterministic bitmask order. Exponential in n(n-1); meant for n <= 4."""
    if n < 1:
        raise InvalidParameter("need n >= 1")
    positions = [(u, v) for u in range(n) for v in range(n) if u != v]
    for mask in range(1 << len(positions)):
        arcs = [positions[b] for b in range(len(positions)) if mask >> b & 1]
        g = Digraph.from_arcs(n, arcs)
        if strongly_connected(g):
            yield g


def edge_list_text(g: Digraph) -> str:
    """Serialize a digraph in the edge-list input format.

    Labels are kept only when they cannot be mistaken for vertex indices
    (the parser auto-detects label mode by non-numeric tokens), so digraphs
    whose labels are digit strings round-trip through dense indices.
    """
    lines = [f"{g.n} {g.m}"]

    def looks_numeric(lbl: str) -> bool:
        try:
            int(lbl)
            return True
        except ValueError:
            return False

    use_labels = not all(looks_numeric(lbl) for lbl in g.labels)
    for u, v in g.arcs():
        if use_labels:
            lines.append(f"{g.labels[u]} {g.labels[v]}")
        else:
            lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"
