"""Independent brute-force oracles used by the test suite.

Nothing here reuses the library's algorithms: distances come from
Floyd-Warshall instead of BFS, girth from explicit cycle enumeration, walk
counts from recursive enumeration, and minimal polynomials from a
divisor search over the factored characteristic polynomial.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import sympy

INF = math.inf


def floyd_warshall(adj) -> list[list[float]]:
    """All-pairs shortest directed path lengths by Floyd-Warshall."""
    n = len(adj)
    dist = [[0 if i == j else (1 if adj[i][j] else INF) for j in range(n)] for i in range(n)]
    for k in range(n):
        for i in range(n):
            dik = dist[i][k]
            if dik == INF:
                continue
            for j in range(n):
                alt = dik + dist[k][j]
                if alt < dist[i][j]:
                    dist[i][j] = alt
    return dist


def brute_girth(adj):
    """Length of a shortest directed cycle found by DFS over simple paths,
    or None when the digraph is acyclic. Exponential; for n <= 7."""
    n = len(adj)
    best = [None]

    def extend(start: int, current: int, length: int, visited: set) -> None:
        if best[0] is not None and length >= best[0]:
            return
        for nxt in range(n):
            if not adj[current][nxt]:
                continue
            if nxt == start:
                if best[0] is None or length + 1 < best[0]:
                    best[0] = length + 1
            elif nxt not in visited:
                visited.add(nxt)
                extend(start, nxt, length + 1, visited)
                visited.remove(nxt)

    for v in range(n):
        extend(v, v, 0, {v})
    return best[0]


def count_walks(adj, x: int, y: int, length: int) -> int:
    """Number of directed walks of the given length, by recursion."""
    n = len(adj)

    @lru_cache(maxsize=None)
    def rec(v: int, remaining: int) -> int:
        if remaining == 0:
            return 1 if v == y else 0
        return sum(rec(u, remaining - 1) for u in range(n) if adj[v][u])

    return rec(x, length)


def minimal_polynomial_coeffs(adj) -> tuple[Fraction, ...]:
    """Monic minimal polynomial coefficients (ascending) via sympy: factor
    the characteristic polynomial and search monic divisors by degree."""
    m = sympy.Matrix(adj)
    lam = sympy.Symbol("lam")
    charpoly = m.charpoly(lam).as_expr()
    _, factors = sympy.factor_list(charpoly)

    def annihilates(poly_expr) -> bool:
        coeffs = sympy.Poly(poly_expr, lam).all_coeffs()
        acc = sympy.zeros(m.rows, m.rows)
        for c in coeffs:
            acc = acc * m + c * sympy.eye(m.rows)
        return acc == sympy.zeros(m.rows, m.rows)

    candidates = [sympy.Integer(1)]
    for factor, mult in factors:
        candidates = [
            c * factor**e for c in candidates for e in range(mult + 1)
        ]
    best = None
    for cand in candidates:
        poly = sympy.Poly(cand, lam)
        if best is not None and poly.degree() >= best.degree():
            continue
        if annihilates(poly.monic().as_expr()):
            best = poly.monic()
    assert best is not None, "characteristic polynomial must annihilate"
    coeffs = [Fraction(str(c)) for c in best.all_coeffs()]
    coeffs.reverse()
    return tuple(coeffs)


def equitable_params_direct(adj, cells):
    """Parameter matrices of an equitable partition by the textbook double
    count, or None. Independent re-statement of the definition."""
    n = len(adj)
    cell_of = {}
    for idx, cell in enumerate(cells):
        for v in cell:
            cell_of[v] = idx
    s = len(cells)
    d_out = []
    d_in = []
    for cell in cells:
        out_ref = None
        in_ref = None
        for y in sorted(cell):
            out_row = [0] * s
            in_row = [0] * s
            for z in range(n):
                if adj[y][z]:
                    out_row[cell_of[z]] += 1
                if adj[z][y]:
                    in_row[cell_of[z]] += 1
            if out_ref is None:
                out_ref, in_ref = out_row, in_row
            elif (out_row, in_row) != (out_ref, in_ref):
                return None
        d_out.append(tuple(out_ref))
        d_in.append(tuple(in_ref))
    return tuple(d_out), tuple(d_in)
