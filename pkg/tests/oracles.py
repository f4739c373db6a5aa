"""Independent brute-force oracles shared by the test modules."""

from dqdlab.congruence import Congruence


def set_partitions(n):
    """All partitions of range(n) as least-leader tuples (restricted growth)."""
    def grow(prefix, blocks):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        x = len(prefix)
        for lead in blocks:
            yield from grow(prefix + [lead], blocks)
        yield from grow(prefix + [x], blocks + [x])
    yield from grow([], [])


def compatible(A, leaders):
    rel = lambda u, v: leaders[u] == leaders[v]  # noqa: E731
    pairs = [(u, v) for u in range(A.size) for v in range(A.size) if rel(u, v)]
    for u, v in pairs:
        if not rel(A.neg[u], A.neg[v]):
            return False
        for p, q in pairs:
            for t in (A.meet, A.join, A.imp):
                if not rel(t[u][p], t[v][q]):
                    return False
    return True


def brute_force_congruences(A):
    return {Congruence(p) for p in set_partitions(A.size) if compatible(A, p)}
