"""Shared exhaustive property checks, reused by the acceptance suite."""

from itertools import combinations

from qalcove.alcove import admissible_subsets, filtered_A, make_chain
from qalcove.typec import root_from_letters


def _edge(qbg, w, i, j):
    return qbg.edge_kind(w, root_from_letters(i, j, qbg.n))


def _tgt(qbg, w, i, j):
    return qbg.target(w, root_from_letters(i, j, qbg.n))


def assert_exchange(qbg, group=None):
    """Three equivalent ways to extend pairs of (k,m),(l,m) edges, k<l<m."""
    n = qbg.n
    for w in group or qbg.group:
        for m in range(3, n + 1):
            for k in range(1, m - 1):
                for l in range(k + 1, m):
                    e_km = _edge(qbg, w, k, m) is not None
                    e_lm = _edge(qbg, w, l, m) is not None
                    c2 = e_km and e_lm
                    c1 = e_km and e_lm and _edge(qbg, _tgt(qbg, w, l, m), k, l) is not None
                    c3 = e_km and _edge(qbg, _tgt(qbg, w, k, m), l, m) is not None
                    assert c1 == c2 == c3, (w, k, l, m)


def assert_exchange2(qbg, group=None):
    """Edges with disjoint index pairs commute."""
    n = qbg.n
    pairs = [(k, l) for k in range(1, n) for l in range(k + 1, n + 1)]
    for w in group or qbg.group:
        for p1 in pairs:
            for p2 in pairs:
                if set(p1) & set(p2):
                    continue
                c1 = (_edge(qbg, w, *p1) is not None
                      and _edge(qbg, _tgt(qbg, w, *p1), *p2) is not None)
                c2 = (_edge(qbg, w, *p2) is not None
                      and _edge(qbg, _tgt(qbg, w, *p2), *p1) is not None)
                assert c1 == c2, (w, p1, p2)


def edge_starts(qbg, w, m):
    """The set {k in [1,m-1] : w -> (k,m) is an edge}; always contains m-1."""
    out = [k for k in range(1, m) if _edge(qbg, w, k, m)]
    assert out and out[-1] == m - 1
    return out


def _walk(qbg, w, ks, m):
    for k in ks:
        assert _edge(qbg, w, k, m) is not None
        w = _tgt(qbg, w, k, m)
    return w


def assert_existence(qbg, group=None):
    """For any increasing run of (a_i,m) edges ending at y, any c below min(a_i)
    with y -> (c, a_1) an edge but w -> (c,m) NOT an edge bounds every
    edge-start below a_1 strictly from above.

    Returns the number of (w,m,subset,c) instances in which w -> (c,m) IS an
    edge; any such instance shows the unmodified bullet list is contradictory
    (take p = c), so a positive count certifies the "not"-reading.
    """
    contradictory = 0
    for w in group or qbg.group:
        for m in range(2, qbg.n + 1):
            starts = edge_starts(qbg, w, m)
            for r in range(1, len(starts) + 1):
                for sub in combinations(starts, r):
                    a1 = sub[0]
                    if a1 == 1:
                        continue
                    ys = _walk(qbg, w, sub, m)
                    for c in range(1, a1):
                        if _edge(qbg, ys, c, a1) is None:
                            continue
                        if _edge(qbg, w, c, m) is not None:
                            contradictory += 1
                            continue
                        for p in range(1, a1):
                            if _edge(qbg, w, p, m) is not None:
                                assert p < c, (w, m, sub, c, p)
    return contradictory


def assert_minimum(qbg, group=None):
    """The minimal c with z_u -> (c, a_{b_1}) an edge is a_1, for every chain
    of (a_{b_i}, m) edges starting at the second-smallest edge start."""
    for w in group or qbg.group:
        for m in range(2, qbg.n + 1):
            starts = edge_starts(qbg, w, m)
            if len(starts) < 2:
                continue
            a1, ab1 = starts[0], starts[1]
            for r in range(0, len(starts) - 1):
                for tail in combinations(starts[2:], r):
                    zu = _walk(qbg, w, (ab1,) + tail, m)
                    cs = [c for c in range(1, ab1) if _edge(qbg, zu, c, ab1)]
                    assert cs and cs[0] == a1, (w, m, (ab1,) + tail, cs)


def assert_filtered_structure(qbg, group=None):
    """A_w^{m,j} is {j} joined with subsets of larger edge starts, or empty."""
    for w in group or qbg.group:
        for m in range(2, qbg.n + 1):
            starts = edge_starts(qbg, w, m)
            for j in range(1, m):
                got = sorted(A.positions for A in filtered_A(qbg, w, m, j))
                if j not in starts:
                    assert got == [], (w, m, j, got)
                    continue
                larger = [a for a in starts if a > j]
                want = sorted(
                    tuple(sorted((j,) + sub))
                    for r in range(len(larger) + 1)
                    for sub in combinations(larger, r)
                )
                assert got == want, (w, m, j, got, want)


def assert_theta_paths_shortest(qbg, group=None):
    """Paths induced by admissible subsets of Theta_m are geodesics."""
    n = qbg.n
    for w in group or qbg.group:
        for m in range(2, n + 1):
            chain = make_chain("theta", m, n)
            for A in admissible_subsets(qbg, w, chain):
                assert qbg.graph_distance(w, A.end) == len(A.positions), (w, m, A)


def assert_shortest_weights_unique(qbg):
    """All geodesics between any ordered pair have the same weight."""
    for u in qbg.group:
        for v in qbg.group:
            paths = qbg.shortest_paths(u, v)
            assert paths, (u, v)
            weights = {p.weight for p in paths}
            assert len(weights) == 1, (u, v, weights)
            assert all(len(p) == qbg.graph_distance(u, v) for p in paths)


def assert_criterion_matches(qbg, group=None):
    for w in group or qbg.group:
        for a in qbg.pos_roots:
            assert (qbg.edge_kind(w, a) is not None) == qbg.criterion_edge(w, a), (w, a)
