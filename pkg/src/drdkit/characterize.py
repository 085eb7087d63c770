"""One verdict per distance-regularity characterization, plus the contract
that every applicable verdict must agree.

The checks are deliberately redundant: each one re-derives distance-regularity
from a different mathematical angle (equitable partitions, scheme axioms,
span memberships, walk counts, one-step count tables, two-way distances,
spectral identities). They may share cached low-level primitives such as the
distance table or a prepared span basis, but no check ever consults another
check's verdict.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, Optional

from .digraph import Digraph, DistanceTable, distance_table, regularity, strongly_connected
from .errors import InternalInconsistency, InvalidParameter, SpectralError
from .partitions import (
    EquitableParams,
    distance_regular_scan,
)
from .ratlin import (
    RatMatrix,
    RatPolynomial,
    SpanBasis,
    adjacency_matrix,
    mat_mul,
    minimal_polynomial,
)
from .scheme import (
    DistanceMatrices,
    IntersectionTensor,
    PairCountScan,
    TransposeMap,
    adjacency_transpose_index,
    damerell_numbers,
    distance_matrices,
    distance_polynomials,
    intersection_numbers,
    pair_intersection_counts,
    scheme_axioms,
    transpose_closure,
    two_way_relations,
    walk_count_constancy,
    wang_suzuki_drd_check,
)
from .spectral import (
    Spectrum,
    average_last_shell,
    is_normal,
    spectral_excess_rhs,
    spectrum,
)

CHECK_IDS: tuple[str, ...] = (
    "DEF", "F", "A", "B", "C", "C1", "C2", "D", "E", "G", "G1", "H", "I", "J",
)

YES = "yes"
NO = "no"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class CheckConfig:
    """Tunables shared by all checks. Only the spectral ones use tolerances."""

    tol: float = 1e-6
    cluster_tol: float = 1e-7
    max_walk_len: Optional[int] = None
    chars: Optional[tuple[str, ...]] = None
    experimental_nx: bool = False


@dataclass(frozen=True)
class CharacterizationVerdict:
    id: str
    verdict: str  # "yes" | "no" | "not-applicable"
    reason: Optional[str] = None
    witness: Optional[str] = None
    params: Optional[dict] = None
    elapsed_ms: float = 0.0


@dataclass(frozen=True)
class Report:
    n: int
    m: int
    k: Optional[int]
    diameter: Optional[int]
    d: Optional[int]
    girth: Optional[int]
    strongly_connected: bool
    verdicts: tuple[CharacterizationVerdict, ...]
    agreement: bool
    total_ms: float

    @property
    def overall(self) -> Optional[str]:
        """The common applicable verdict, or None when every check was
        not-applicable. The experimental variant never participates."""
        applicable = [
            v.verdict
            for v in self.verdicts
            if v.verdict != NOT_APPLICABLE and v.id != "NX"
        ]
        if not applicable:
            return None
        return applicable[0] if len(set(applicable)) == 1 else "disagreement"


class GraphContext:
    """Lazily computed primitives shared by the checks for one digraph.

    Everything cached here is a low-level quantity (distance table, matrices,
    span expansions, spectrum), never a verdict.
    """

    def __init__(self, g: Digraph, config: CheckConfig):
        self.g = g
        self.config = config
        self._cache: dict = {}

    def _get(self, key: str, make: Callable):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @property
    def table(self) -> DistanceTable:
        return self._get("table", lambda: distance_table(self.g))

    @property
    def valency(self) -> Optional[int]:
        return self._get("valency", lambda: regularity(self.g))

    @property
    def adjacency(self) -> RatMatrix:
        return self._get("adjacency", lambda: adjacency_matrix(self.g))

    @property
    def dm(self) -> DistanceMatrices:
        return self._get("dm", lambda: distance_matrices(self.g, self.table))

    @property
    def pair_scan(self) -> PairCountScan:
        return self._get("pair_scan", lambda: pair_intersection_counts(self.table))

    @property
    def class_basis(self) -> SpanBasis:
        return self._get("class_basis", lambda: SpanBasis(self.dm.mats))

    def product_expansion(self, i: int, j: int) -> Optional[tuple]:
        key = ("prod", i, j)
        if key not in self._cache:
            prod = mat_mul(self.dm.mats[i], self.dm.mats[j])
            self._cache[key] = self.class_basis.solve(prod)
        return self._cache[key]

    @property
    def transpose_map(self) -> TransposeMap:
        return self._get("transpose_map", lambda: transpose_closure(self.dm))

    @property
    def adjacency_transpose(self) -> Optional[int]:
        return self._get("adjacency_transpose", lambda: adjacency_transpose_index(self.dm))

    @property
    def minpoly(self) -> RatPolynomial:
        return self._get("minpoly", lambda: minimal_polynomial(self.adjacency))

    @property
    def power_matrices(self) -> tuple[RatMatrix, ...]:
        """A^0 .. A^max(D, deg minpoly - 1)."""

        def make():
            top = max(self.dm.D, self.minpoly.degree - 1)
            mats = [RatMatrix.identity(self.g.n)]
            for _ in range(top):
                mats.append(mat_mul(mats[-1], self.adjacency))
            return tuple(mats)

        return self._get("powers", make)

    def power_basis(self, upto: int) -> SpanBasis:
        key = ("power_basis", upto)
        if key not in self._cache:
            self._cache[key] = SpanBasis(self.power_matrices[: upto + 1])
        return self._cache[key]

    def distance_matrix_in_powers(self, i: int, upto: int) -> bool:
        key = ("dm_in_powers", i, upto)
        if key not in self._cache:
            self._cache[key] = self.power_basis(upto).solve(self.dm.mats[i]) is not None
        return self._cache[key]

    @property
    def axioms_on_distance_matrices(self):
        return self._get("axioms", lambda: scheme_axioms(self.dm.mats))

    @property
    def intersection(self) -> IntersectionTensor:
        return self._get("intersection", lambda: intersection_numbers(self.dm, self.table))

    @property
    def normal(self) -> bool:
        return self._get("normal", lambda: is_normal(self.adjacency))

    @property
    def spectrum_or_error(self):
        def make():
            try:
                s = spectrum(self.adjacency, self.config.cluster_tol)
                if self.normal and len(s.eigs) != self.minpoly.degree:
                    raise InternalInconsistency(
                        f"{len(s.eigs)} eigenvalue clusters vs minimal polynomial "
                        f"degree {self.minpoly.degree}"
                    )
                return s
            except (SpectralError, InternalInconsistency) as exc:
                return exc

        return self._get("spectrum", make)


def _yes(check_id: str, params: Optional[dict] = None) -> CharacterizationVerdict:
    return CharacterizationVerdict(check_id, YES, params=params)


def _no(check_id: str, witness: str, params: Optional[dict] = None) -> CharacterizationVerdict:
    return CharacterizationVerdict(check_id, NO, witness=witness, params=params)


def _na(check_id: str, reason: str) -> CharacterizationVerdict:
    return CharacterizationVerdict(check_id, NOT_APPLICABLE, reason=reason)


def _params_from_equitable(p: EquitableParams) -> dict:
    return {
        "cell_sizes": list(p.cell_sizes),
        "d_out": [list(r) for r in p.d_out],
        "d_in": [list(r) for r in p.d_in],
    }


def _check_def(ctx: GraphContext) -> CharacterizationVerdict:
    params, failure = distance_regular_scan(ctx.g, ctx.table, "out")
    if params is None:
        return _no("DEF", failure or "out-distance partitions not equitable")
    return _yes("DEF", _params_from_equitable(params))


def _check_f(ctx: GraphContext) -> CharacterizationVerdict:
    params, failure = distance_regular_scan(ctx.g, ctx.table, "in")
    if params is None:
        return _no("F", failure or "in-distance partitions not equitable")
    return _yes("F", _params_from_equitable(params))


def _check_a(ctx: GraphContext) -> CharacterizationVerdict:
    rep = ctx.axioms_on_distance_matrices
    if not rep.all:
        return _no("A", rep.witness or "scheme axiom failed", params={
            "axioms": {
                "identity": rep.identity,
                "sum_to_j": rep.sum_to_j,
                "transpose_closed": rep.transpose_closed,
                "product_closed": rep.product_closed,
                "commutative": rep.commutative,
            }
        })
    return _yes("A")


def _check_b(ctx: GraphContext) -> CharacterizationVerdict:
    D = ctx.dm.D
    deg = ctx.minpoly.degree
    params = {"min_poly_degree": deg, "diameter": D}
    if deg != D + 1:
        return _no("B", f"adjacency algebra has dimension {deg}, expected {D + 1}", params)
    for i in range(D + 1):
        if not ctx.distance_matrix_in_powers(i, D):
            return _no("B", f"distance matrix {i} is not a polynomial in A", params)
    rep = ctx.axioms_on_distance_matrices
    if not rep.all:
        return _no("B", rep.witness or "scheme axiom failed", params)
    return _yes("B", params)


def _check_c(ctx: GraphContext) -> CharacterizationVerdict:
    if ctx.adjacency_transpose is None:
        return _no("C", "transpose of A is not a distance matrix")
    for i in range(ctx.dm.D + 1):
        if ctx.product_expansion(i, 1) is None:
            return _no("C", f"A_{i} * A leaves the span of the distance matrices")
    return _yes("C")


def _check_c1(ctx: GraphContext) -> CharacterizationVerdict:
    if ctx.adjacency_transpose is None:
        return _no("C1", "transpose of A is not a distance matrix")
    D = ctx.dm.D
    deg = ctx.minpoly.degree
    if deg != D + 1:
        return _no("C1", f"adjacency algebra has dimension {deg}, expected {D + 1}")
    for i in range(D + 1):
        if not ctx.distance_matrix_in_powers(i, D):
            return _no("C1", f"distance matrix {i} is outside the adjacency algebra")
    return _yes("C1")


def _check_c2(ctx: GraphContext) -> CharacterizationVerdict:
    D = ctx.dm.D
    products_closed = all(
        ctx.product_expansion(i, j) is not None
        for i in range(D + 1)
        for j in range(D + 1)
    )
    v1 = ctx.adjacency_transpose is not None and products_closed
    v2 = ctx.transpose_map.exists and products_closed
    v3 = ctx.adjacency_transpose is not None and ctx.pair_scan.all_constant
    if not (v1 == v2 == v3):
        raise InternalInconsistency(
            f"product-closure sub-variants disagree: {v1}, {v2}, {v3}"
        )
    params = {"variants": [v1, v2, v3]}
    if not v1:
        if ctx.adjacency_transpose is None:
            return _no("C2", "transpose of A is not a distance matrix", params)
        return _no("C2", "some product A_i * A_j leaves the span", params)
    return _yes("C2", params)


def _check_d(ctx: GraphContext) -> CharacterizationVerdict:
    if ctx.adjacency_transpose is None:
        return _no("D", "transpose of A is not a distance matrix")
    polys = distance_polynomials(ctx.dm, ctx.adjacency)
    if polys is None:
        return _no("D", "no degree-i polynomials with p_i(A) = A_i exist")
    return _yes("D", {"polynomials": [str(p) for p in polys]})


def _check_e(ctx: GraphContext) -> CharacterizationVerdict:
    if ctx.adjacency_transpose is None:
        return _no("E", "transpose of A is not a distance matrix")
    max_len = ctx.config.max_walk_len
    if max_len is not None and max_len < ctx.dm.D:
        max_len = ctx.dm.D  # shorter walks would not certify the theorem
    walks = walk_count_constancy(ctx.g, ctx.dm, max_len)
    if not walks:
        ell, h, p0, p1, v0, v1 = walks.witness
        return _no(
            "E",
            f"walk counts of length {ell} differ on distance class {h}: "
            f"{v0} at {p0} vs {v1} at {p1}",
        )
    return _yes("E", {"max_len": walks.max_len})


def _check_g(ctx: GraphContext) -> CharacterizationVerdict:
    table = damerell_numbers(ctx.g, ctx.table)
    if not table.exists:
        h, i, pair0, pair1, v0, v1 = table.witness
        return _no(
            "G",
            f"|shell_{i}(x) & out(y)| at pair distance {h}: {v0} at {pair0} vs {v1} at {pair1}",
        )
    s_table = {f"s^{h}_{{{i},1}}": table.b[h][i] for h in range(len(table.b)) for i in range(len(table.b))}
    return _yes("G", {"counts": s_table})


def _check_g1(ctx: GraphContext) -> CharacterizationVerdict:
    table = damerell_numbers(ctx.g, ctx.table)
    if not table.exists:
        i, j, pair0, pair1, v0, v1 = table.witness
        return _no(
            "G1",
            f"b_{{{i}{j}}} not constant: {v0} at {pair0} vs {v1} at {pair1}",
        )
    return _yes("G1", {"b": [list(row) for row in table.b]})


def _check_h(ctx: GraphContext) -> CharacterizationVerdict:
    rel = two_way_relations(ctx.table)
    result = wang_suzuki_drd_check(rel, ctx.dm.D)
    params = {"delta": [list(p) for p in rel.delta]}
    if not result:
        if result.delta_size != ctx.dm.D + 1:
            return _no(
                "H",
                f"{result.delta_size} two-way distance classes, expected {ctx.dm.D + 1}",
                params,
            )
        return _no("H", result.axioms.witness or "scheme axiom failed", params)
    return _yes("H", params)


def _check_i(ctx: GraphContext) -> CharacterizationVerdict:
    params = {
        "regular": ctx.valency is not None,
        "normal": ctx.normal,
        "min_poly_degree": ctx.minpoly.degree,
    }
    if ctx.valency is None:
        return _no("I", "digraph is not regular", params)
    if not ctx.normal:
        return _no("I", "transpose of A is not a polynomial in A (A not normal)", params)
    deg = ctx.minpoly.degree
    if deg != ctx.dm.D + 1:
        return _no(
            "I",
            f"diameter {ctx.dm.D} is not spectrally maximum ({deg - 1})",
            params,
        )
    if not ctx.distance_matrix_in_powers(ctx.dm.D, deg - 1):
        return _no("I", "distance-D matrix is not a polynomial in A", params)
    return _yes("I", params)


def _check_j(ctx: GraphContext) -> CharacterizationVerdict:
    if ctx.valency is None:
        return _no("J", "digraph is not regular")
    if not ctx.normal:
        return _no("J", "transpose of A is not a polynomial in A (A not normal)")
    s = ctx.spectrum_or_error
    if isinstance(s, Exception):
        return _na("J", f"spectral failure: {s}")
    if s.d != ctx.dm.D:
        return _no(
            "J",
            f"diameter {ctx.dm.D} is not spectrally maximum ({s.d})",
            {"distinct_eigenvalues": s.d + 1},
        )
    try:
        rhs = spectral_excess_rhs(s)
    except SpectralError as exc:
        return _na("J", f"spectral failure: {exc}")
    lhs = float(average_last_shell(ctx.table))
    gap = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
    params = {"excess_lhs": lhs, "excess_rhs": rhs, "gap": gap}
    if gap > ctx.config.tol:
        return _no(
            "J",
            f"mean last-shell size {lhs} differs from spectral value {rhs}",
            params,
        )
    return _yes("J", params)


def _check_nx(ctx: GraphContext) -> CharacterizationVerdict:
    """Experimental weaker variant of check I: requires the transpose of A to
    be a distance matrix rather than a polynomial in A. Recorded for study,
    excluded from the agreement contract."""
    params: dict = {"experimental": True}
    if ctx.valency is None:
        return _no("NX", "digraph is not regular", params)
    s = ctx.spectrum_or_error
    if isinstance(s, Exception):
        return _na("NX", f"spectral failure: {s}")
    if s.d != ctx.dm.D:
        return _no("NX", f"diameter {ctx.dm.D} is not spectrally maximum ({s.d})", params)
    if ctx.adjacency_transpose is None:
        return _no("NX", "transpose of A is not a distance matrix", params)
    deg = ctx.minpoly.degree
    if not ctx.distance_matrix_in_powers(ctx.dm.D, deg - 1):
        return _no("NX", "distance-D matrix is not a polynomial in A", params)
    return _yes("NX", params)


_CHECKS: dict[str, Callable[[GraphContext], CharacterizationVerdict]] = {
    "DEF": _check_def,
    "F": _check_f,
    "A": _check_a,
    "B": _check_b,
    "C": _check_c,
    "C1": _check_c1,
    "C2": _check_c2,
    "D": _check_d,
    "E": _check_e,
    "G": _check_g,
    "G1": _check_g1,
    "H": _check_h,
    "I": _check_i,
    "J": _check_j,
}


def _timed(check_id: str, fn: Callable[[], CharacterizationVerdict]) -> CharacterizationVerdict:
    start = time.perf_counter()
    verdict = fn()
    elapsed = (time.perf_counter() - start) * 1000.0
    return CharacterizationVerdict(
        id=verdict.id,
        verdict=verdict.verdict,
        reason=verdict.reason,
        witness=verdict.witness,
        params=verdict.params,
        elapsed_ms=elapsed,
    )


def _selected_ids(config: CheckConfig) -> tuple[str, ...]:
    if config.chars is None:
        return CHECK_IDS
    unknown = [c for c in config.chars if c not in CHECK_IDS]
    if unknown:
        raise InvalidParameter(f"unknown characterization ids: {unknown}")
    return tuple(c for c in CHECK_IDS if c in config.chars)


def check_single(
    g: Digraph, check_id: str, config: Optional[CheckConfig] = None
) -> CharacterizationVerdict:
    """Evaluate one characterization in isolation."""
    if config is None:
        config = CheckConfig()
    if check_id not in CHECK_IDS and check_id != "NX":
        raise InvalidParameter(f"unknown characterization id {check_id!r}")
    if not strongly_connected(g):
        return _na(check_id, "digraph is not strongly connected")
    if g.n == 1:
        return _yes(check_id, {"trivial": "single vertex"})
    ctx = GraphContext(g, config)
    fn = _CHECKS[check_id] if check_id != "NX" else _check_nx
    return _timed(check_id, lambda: fn(ctx))


def check_all(g: Digraph, config: Optional[CheckConfig] = None) -> Report:
    """Run every enabled characterization independently and assemble the
    report with the agreement flag."""
    if config is None:
        config = CheckConfig()
    ids = _selected_ids(config)
    start = time.perf_counter()
    sc = strongly_connected(g)
    k = regularity(g)

    if not sc:
        verdicts = tuple(_na(i, "digraph is not strongly connected") for i in ids)
        total = (time.perf_counter() - start) * 1000.0
        return Report(
            n=g.n, m=g.m, k=k, diameter=None, d=None, girth=None,
            strongly_connected=False, verdicts=verdicts, agreement=True,
            total_ms=total,
        )

    if g.n == 1:
        verdicts = tuple(_yes(i, {"trivial": "single vertex"}) for i in ids)
        if config.experimental_nx:
            verdicts = verdicts + (_yes("NX", {"trivial": "single vertex"}),)
        total = (time.perf_counter() - start) * 1000.0
        return Report(
            n=1, m=0, k=0, diameter=0, d=0, girth=None,
            strongly_connected=True, verdicts=verdicts, agreement=True,
            total_ms=total,
        )

    ctx = GraphContext(g, config)
    verdicts = [_timed(i, lambda i=i: _CHECKS[i](ctx)) for i in ids]
    if config.experimental_nx:
        verdicts.append(_timed("NX", lambda: _check_nx(ctx)))

    applicable = {
        v.verdict for v in verdicts if v.verdict != NOT_APPLICABLE and v.id != "NX"
    }
    agreement = len(applicable) <= 1

    s = ctx.spectrum_or_error
    d = s.d if isinstance(s, Spectrum) else None
    total = (time.perf_counter() - start) * 1000.0
    return Report(
        n=g.n,
        m=g.m,
        k=k,
        diameter=ctx.table.diameter,
        d=d,
        girth=ctx.table.girth,
        strongly_connected=True,
        verdicts=tuple(verdicts),
        agreement=agreement,
        total_ms=total,
    )
