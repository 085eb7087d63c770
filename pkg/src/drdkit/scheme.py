"""Distance-matrix algebra: association-scheme axioms, intersection numbers,
distance polynomials, transpose closure, walk counts, and the one-step and
two-way-distance count tables.

Every check in this module is exact; all quantities are integer counts or
integer matrix identities, so there are no tolerances anywhere.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .digraph import Digraph, DistanceTable
from .errors import (
    DimensionMismatch,
    InternalInconsistency,
    NotStronglyConnected,
    PreconditionViolated,
)
from .ratlin import (
    RatMatrix,
    RatPolynomial,
    SpanBasis,
    eval_poly_at_matrix,
    mat_mul,
    transpose,
)


@dataclass(frozen=True)
class DistanceMatrices:
    """The 01 matrices A_0..A_D with (A_i)[x][y] = 1 iff d(x,y) = i."""

    mats: tuple[RatMatrix, ...]

    @property
    def D(self) -> int:
        return len(self.mats) - 1

    @property
    def adjacency(self) -> RatMatrix:
        """A_1 when the diameter is positive, else the zero matrix."""
        if self.D >= 1:
            return self.mats[1]
        n = self.mats[0].rows
        return RatMatrix.zeros(n, n)


def distance_matrices(g: Digraph, t: DistanceTable) -> DistanceMatrices:
    """Build A_0..A_D and verify the partition invariants at construction."""
    if not t.strongly_connected:
        raise NotStronglyConnected("distance matrices need a strongly connected digraph")
    D = t.diameter
    mats = []
    for i in range(D + 1):
        mats.append(
            RatMatrix(
                tuple(
                    tuple(1 if t.dist[x][y] == i else 0 for y in range(g.n))
                    for x in range(g.n)
                )
            )
        )
    if mats[0] != RatMatrix.identity(g.n):
        raise InternalInconsistency("A_0 != I")
    total = [[0] * g.n for _ in range(g.n)]
    for m in mats:
        for x in range(g.n):
            for y in range(g.n):
                total[x][y] += m.entries[x][y]
    if any(total[x][y] != 1 for x in range(g.n) for y in range(g.n)):
        raise InternalInconsistency("distance classes do not partition X x X")
    if D >= 1 and mats[1].entries != g.adj:
        raise InternalInconsistency("A_1 != adjacency matrix")
    return DistanceMatrices(tuple(mats))


@dataclass(frozen=True)
class TransposeMap:
    """Index map sigma with A_i^T = A_sigma(i) for every i, or the first
    index with no match."""

    sigma: Optional[tuple[int, ...]]
    failing_index: Optional[int]

    @property
    def exists(self) -> bool:
        return self.sigma is not None


def transpose_closure(dm: DistanceMatrices) -> TransposeMap:
    """Search, for each i, the j with A_i^T = A_j exactly."""
    sigma = []
    for i, m in enumerate(dm.mats):
        mt = transpose(m)
        for j, cand in enumerate(dm.mats):
            if mt == cand:
                sigma.append(j)
                break
        else:
            return TransposeMap(None, i)
    return TransposeMap(tuple(sigma), None)


def adjacency_transpose_index(dm: DistanceMatrices) -> Optional[int]:
    """The j with A^T = A_j, if any: the single-matrix transpose test."""
    if dm.D == 0:
        return 0  # one-vertex digraph: conventionally closed
    at = transpose(dm.mats[1])
    for j, cand in enumerate(dm.mats):
        if at == cand:
            return j
    return None


@dataclass(frozen=True)
class PairCountScan:
    """Constancy scan of the counts |{z : d(x,z) = i and d(z,y) = j}| over all
    ordered pairs (x, y) grouped by h = d(x,y).

    values[h][i][j] holds the count seen at the first pair of class h;
    ok[i][j] says whether that count was constant over every pair.
    """

    D: int
    values: tuple[tuple[tuple[int, ...], ...], ...]
    ok: tuple[tuple[bool, ...], ...]
    witness: Optional[tuple]

    @property
    def all_constant(self) -> bool:
        return all(all(row) for row in self.ok)

    def right_slices_constant(self) -> bool:
        """Constancy of every (i, 1) slice: the A_i * A expansions."""
        if self.D == 0:
            return True
        return all(self.ok[i][1] for i in range(self.D + 1))

    def left_slices_constant(self) -> bool:
        """Constancy of every (1, i) slice: the A * A_i expansions."""
        if self.D == 0:
            return True
        return all(self.ok[1][j] for j in range(self.D + 1))


def pair_intersection_counts(t: DistanceTable) -> PairCountScan:
    if not t.strongly_connected:
        raise NotStronglyConnected("pair counts need a strongly connected digraph")
    n = t.n
    D = t.diameter
    dist = t.dist
    ref: list[Optional[dict]] = [None] * (D + 1)
    ref_pair: list[tuple[int, int]] = [(-1, -1)] * (D + 1)
    ok = [[True] * (D + 1) for _ in range(D + 1)]
    witness: Optional[tuple] = None
    for x in range(n):
        drow = dist[x]
        for y in range(n):
            h = int(drow[y])
            counts: dict[tuple[int, int], int] = {}
            for z in range(n):
                key = (int(drow[z]), int(dist[z][y]))
                counts[key] = counts.get(key, 0) + 1
            if ref[h] is None:
                ref[h] = counts
                ref_pair[h] = (x, y)
            elif counts != ref[h]:
                base = ref[h]
                for key in set(base) | set(counts):
                    v0 = base.get(key, 0)
                    v1 = counts.get(key, 0)
                    if v0 != v1:
                        i, j = key
                        if ok[i][j]:
                            ok[i][j] = False
                            if witness is None:
                                witness = (i, j, h, ref_pair[h], (x, y), v0, v1)
    values = tuple(
        tuple(
            tuple((ref[h] or {}).get((i, j), 0) for j in range(D + 1))
            for i in range(D + 1)
        )
        for h in range(D + 1)
    )
    return PairCountScan(
        D=D,
        values=values,
        ok=tuple(tuple(row) for row in ok),
        witness=witness,
    )


@dataclass(frozen=True)
class IntersectionTensor:
    """Intersection numbers p[h][i][j] = |{z : d(x,z)=i, d(z,y)=j}| for any
    pair with d(x,y) = h, when that count is pair-independent."""

    exists: bool
    p: Optional[tuple[tuple[tuple[int, ...], ...], ...]]
    witness: Optional[tuple]


def intersection_numbers(dm: DistanceMatrices, t: DistanceTable) -> IntersectionTensor:
    """Combinatorial counting pass cross-checked against exact span solves of
    every product A_i * A_j; any disagreement between the two routes raises
    InternalInconsistency (it would be a bug, not a property of the graph).
    """
    scan = pair_intersection_counts(t)
    D = dm.D
    basis = SpanBasis(dm.mats)
    for i in range(D + 1):
        for j in range(D + 1):
            coeffs = basis.solve(mat_mul(dm.mats[i], dm.mats[j]))
            if scan.ok[i][j] != (coeffs is not None):
                raise InternalInconsistency(
                    f"count scan and span solve disagree on slice ({i},{j})"
                )
            if coeffs is not None:
                for h in range(D + 1):
                    if coeffs[h] != scan.values[h][i][j]:
                        raise InternalInconsistency(
                            f"p^{h}_{{{i}{j}}}: scan {scan.values[h][i][j]} vs solve {coeffs[h]}"
                        )
    if scan.all_constant:
        return IntersectionTensor(True, scan.values, None)
    return IntersectionTensor(False, None, scan.witness)


def distance_polynomials(
    dm: DistanceMatrices, a: Optional[RatMatrix] = None
) -> Optional[tuple[RatPolynomial, ...]]:
    """Polynomials p_i with p_i(A) = A_i and deg p_i = i, or None.

    Built by the exact three-term-style recurrence
    c_{i+1} p_{i+1}(t) = t p_i(t) - sum_{h<=i} c_h p_h(t) from the expansion
    A_i A = sum_h c_h A_h, then re-verified by evaluating each p_i at A.
    """
    if a is None:
        a = dm.adjacency
    D = dm.D
    polys = [RatPolynomial.one()]
    if D >= 1:
        polys.append(RatPolynomial.t())
    basis = SpanBasis(dm.mats)
    for i in range(1, D):
        coeffs = basis.solve(mat_mul(dm.mats[i], a))
        if coeffs is None:
            return None
        if any(coeffs[h] != 0 for h in range(i + 2, D + 1)):
            raise InternalInconsistency("one-step expansion reaches past distance i+1")
        lead = coeffs[i + 1]
        if lead == 0:
            return None
        nxt = polys[i].times_t()
        for h in range(i + 1):
            if coeffs[h]:
                nxt = nxt.sub(polys[h].scale(coeffs[h]))
        polys.append(nxt.scale(Fraction(1) / lead))
    for i, p in enumerate(polys):
        if p.degree != i:
            return None
        if eval_poly_at_matrix(p, a) != dm.mats[i]:
            return None
    return tuple(polys)


def _int_mat_mul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


@dataclass(frozen=True)
class WalkConstancy:
    """Whether the number of length-l walks between two vertices depends only
    on their distance, for every l up to max_len."""

    ok: bool
    max_len: int
    witness: Optional[tuple]

    def __bool__(self) -> bool:
        return self.ok


def walk_count_constancy(
    g: Digraph, dm: DistanceMatrices, max_len: Optional[int] = None
) -> WalkConstancy:
    """Check that A^l is constant on every distance class for l = 0..max_len
    (default: the diameter). max_len below the diameter would weaken the
    test and is refused."""
    D = dm.D
    if max_len is None:
        max_len = D
    elif max_len < D:
        raise PreconditionViolated(f"max_len {max_len} below diameter {D}")
    n = g.n
    classes: list[list[tuple[int, int]]] = [[] for _ in range(D + 1)]
    for h, m in enumerate(dm.mats):
        for x in range(n):
            row = m.entries[x]
            for y in range(n):
                if row[y]:
                    classes[h].append((x, y))
    power = [[1 if x == y else 0 for y in range(n)] for x in range(n)]
    adj = [list(row) for row in g.adj]
    for ell in range(max_len + 1):
        if ell > 0:
            power = _int_mat_mul(power, adj)
        for h in range(D + 1):
            pairs = classes[h]
            x0, y0 = pairs[0]
            v0 = power[x0][y0]
            for x, y in pairs[1:]:
                if power[x][y] != v0:
                    return WalkConstancy(
                        False, max_len, (ell, h, (x0, y0), (x, y), v0, power[x][y])
                    )
    return WalkConstancy(True, max_len, None)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the five association-scheme axioms on a matrix family."""

    identity: bool
    sum_to_j: bool
    transpose_closed: bool
    product_closed: bool
    commutative: bool
    witness: Optional[str]
    coefficients: Optional[dict]

    @property
    def all(self) -> bool:
        return (
            self.identity
            and self.sum_to_j
            and self.transpose_closed
            and self.product_closed
            and self.commutative
        )


def scheme_axioms(mats: Sequence[RatMatrix]) -> AxiomReport:
    """Verify, exactly, that a family of 01 matrices is the standard basis of
    a commutative association scheme: contains I, sums to J, is closed under
    transpose and under products (with product coordinates from exact span
    solves), and commutes."""
    if not mats:
        raise DimensionMismatch("empty matrix family")
    n = mats[0].rows
    for m in mats:
        if m.shape != (n, n):
            raise DimensionMismatch("matrices must be square and same size")
    witness = None

    identity = mats[0] == RatMatrix.identity(n)
    if not identity:
        witness = witness or "first matrix is not the identity"

    total = RatMatrix.zeros(n, n)
    for m in mats:
        total = total.add(m)
    sum_to_j = total == RatMatrix.ones(n)
    if not sum_to_j and witness is None:
        witness = "family does not sum to the all-ones matrix"

    transpose_closed = True
    for i, m in enumerate(mats):
        if transpose(m) not in mats:
            transpose_closed = False
            if witness is None:
                witness = f"transpose of matrix {i} is not in the family"
            break

    basis = SpanBasis(mats)
    products: dict[tuple[int, int], RatMatrix] = {}
    product_closed = True
    coefficients: dict[tuple[int, int], tuple] = {}
    for i in range(len(mats)):
        for j in range(len(mats)):
            prod = mat_mul(mats[i], mats[j])
            products[(i, j)] = prod
            coeffs = basis.solve(prod)
            if coeffs is None:
                product_closed = False
                if witness is None:
                    witness = f"product {i}*{j} leaves the span"
            else:
                coefficients[(i, j)] = coeffs
    commutative = True
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if products[(i, j)] != products[(j, i)]:
                commutative = False
                if witness is None:
                    witness = f"matrices {i} and {j} do not commute"
                break
        if not commutative:
            break

    return AxiomReport(
        identity=identity,
        sum_to_j=sum_to_j,
        transpose_closed=transpose_closed,
        product_closed=product_closed,
        commutative=commutative,
        witness=witness,
        coefficients=coefficients if product_closed else None,
    )


@dataclass(frozen=True)
class DamerellTable:
    """One-step forward counts b[i][j] = |{z : d(y,z) = 1, d(x,z) = j}| over
    pairs with d(x,y) = i, when pair-independent. The same table read as
    b[h][i] gives the counts |shell_i(x) & out(y)| at pair distance h."""

    exists: bool
    b: Optional[tuple[tuple[int, ...], ...]]
    witness: Optional[tuple]


def damerell_numbers(g: Digraph, t: DistanceTable) -> DamerellTable:
    if not t.strongly_connected:
        raise NotStronglyConnected("count table needs a strongly connected digraph")
    n = g.n
    D = t.diameter
    ref: list[Optional[tuple[int, ...]]] = [None] * (D + 1)
    ref_pair: list[tuple[int, int]] = [(-1, -1)] * (D + 1)
    for x in range(n):
        drow = t.dist[x]
        for y in range(n):
            i = int(drow[y])
            counts = [0] * (D + 1)
            for z in g.out_neighbors[y]:
                counts[int(drow[z])] += 1
            counts = tuple(counts)
            if ref[i] is None:
                ref[i] = counts
                ref_pair[i] = (x, y)
            elif counts != ref[i]:
                base = ref[i]
                j = next(jj for jj in range(D + 1) if base[jj] != counts[jj])
                return DamerellTable(
                    False, None, (i, j, ref_pair[i], (x, y), base[j], counts[j])
                )
    return DamerellTable(True, tuple(r for r in ref if r is not None), None)


@dataclass(frozen=True)
class TwoWayRelations:
    """Partition of X x X by the ordered pair (d(x,y), d(y,x)), with one 01
    class matrix per realized pair, in lexicographic pair order."""

    delta: tuple[tuple[int, int], ...]
    classes: tuple[RatMatrix, ...]


def two_way_relations(t: DistanceTable) -> TwoWayRelations:
    if not t.strongly_connected:
        raise NotStronglyConnected("two-way relations need a strongly connected digraph")
    n = t.n
    pairs = sorted(
        {(int(t.dist[x][y]), int(t.dist[y][x])) for x in range(n) for y in range(n)}
    )
    index = {p: i for i, p in enumerate(pairs)}
    rows = [[[0] * n for _ in range(n)] for _ in pairs]
    for x in range(n):
        for y in range(n):
            rows[index[(int(t.dist[x][y]), int(t.dist[y][x]))]][x][y] = 1
    classes = tuple(RatMatrix(tuple(tuple(r) for r in mat)) for mat in rows)
    return TwoWayRelations(tuple(pairs), classes)


@dataclass(frozen=True)
class WangSuzukiResult:
    """Whether the two-way-distance classes form a commutative association
    scheme with exactly diameter + 1 classes."""

    ok: bool
    delta_size: int
    axioms: Optional[AxiomReport]

    def __bool__(self) -> bool:
        return self.ok


def wang_suzuki_drd_check(r: TwoWayRelations, D: int) -> WangSuzukiResult:
    if len(r.delta) != D + 1:
        return WangSuzukiResult(False, len(r.delta), None)
    rep = scheme_axioms(r.classes)
    return WangSuzukiResult(rep.all, len(r.delta), rep)


@dataclass(frozen=True)
class DouglasNomuraTensor:
    """Counts s[h][i][j] = |{z : d(u,z) = i, d(v,z) = j}| over pairs with
    d(u,v) = h, when pair-independent. Diagnostic only."""

    exists: bool
    s: Optional[tuple[tuple[tuple[int, ...], ...], ...]]
    witness: Optional[tuple]


def douglas_nomura_numbers(t: DistanceTable) -> DouglasNomuraTensor:
    if not t.strongly_connected:
        raise NotStronglyConnected("count tensor needs a strongly connected digraph")
    n = t.n
    D = t.diameter
    dist = t.dist
    ref: list[Optional[dict]] = [None] * (D + 1)
    for u in range(n):
        du = dist[u]
        for v in range(n):
            h = int(du[v])
            dv = dist[v]
            counts: dict[tuple[int, int], int] = {}
            for z in range(n):
                key = (int(du[z]), int(dv[z]))
                counts[key] = counts.get(key, 0) + 1
            if ref[h] is None:
                ref[h] = counts
            elif counts != ref[h]:
                base = ref[h]
                key = next(k for k in set(base) | set(counts) if base.get(k, 0) != counts.get(k, 0))
                return DouglasNomuraTensor(
                    False, None, (key[0], key[1], h, (u, v), base.get(key, 0), counts.get(key, 0))
                )
    s = tuple(
        tuple(
            tuple((ref[h] or {}).get((i, j), 0) for j in range(D + 1))
            for i in range(D + 1)
        )
        for h in range(D + 1)
    )
    return DouglasNomuraTensor(True, s, None)


def weak_dr_comellas(g: Digraph, dm: DistanceMatrices) -> bool:
    """Weak distance-regularity: every distance matrix is a polynomial of its
    own degree in the adjacency matrix (equivalently, walk counts up to the
    diameter depend only on distance)."""
    return distance_polynomials(dm) is not None


def comellas_damerell_link(g: Digraph, dm: DistanceMatrices, t: DistanceTable) -> bool:
    """Consistency predicate: on weakly distance-regular digraphs, adjacency
    normality and the existence of the one-step forward count table must
    coincide. Always true for a correct implementation; exercised by the
    property suite."""
    from .spectral import is_normal

    if not weak_dr_comellas(g, dm):
        return True
    normal = is_normal(RatMatrix(g.adj))
    return normal == damerell_numbers(g, t).exists
