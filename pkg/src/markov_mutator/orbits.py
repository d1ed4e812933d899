"""Orbit machinery: fundamental-domain reduction, bounded breadth-first
orbit enumeration, the acyclicity search over mutations, and the lift
from triples with integer squares back to integer matrices.

The fundamental domain consists of the positive integer tuples with
xyz >= 2xx', 2yy', 2zz'. Every cluster-cyclic gamma-orbit meets it in
exactly one point, the entrywise minimum of the orbit, and greedy
descent (apply any strictly column-decreasing gamma until none is left)
reaches it.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Optional

from .errors import (
    INT64_MAX,
    DomainError,
    NotClusterCyclic,
    NotInShat,
    OverflowLimitError,
)
from .classify import cyclicity, is_cluster_cyclic
from .matrices import (
    CyclicityClass,
    MatM,
    MutationPath,
    SixTuple,
    TripleS,
    gamma_tuple,
    mutate_tuple,
    permute,
    validate,
)

__all__ = [
    "DEFAULT_DEPTH",
    "DEFAULT_ENTRY_BOUND",
    "OrbitBfsResult",
    "OrbitReport",
    "lift_to_matm",
    "mu_orbit_search_acyclic",
    "orbit_bfs",
    "reduce_to_fundamental",
]

DEFAULT_DEPTH = 12
DEFAULT_ENTRY_BOUND = 10**9


@dataclass(frozen=True)
class OrbitReport:
    """Result of a fundamental-domain reduction.

    path is the gamma word taking the representative back to the input
    (the reversed descent word; no claim that it is shortest).
    """

    representative: MatM
    path: MutationPath
    explored: int
    is_minimal_certified: bool

    def to_json(self) -> dict:
        return {
            "representative": str(self.representative),
            "path": self.path.to_json(),
            "explored": self.explored,
            "is_minimal_certified": self.is_minimal_certified,
        }


@dataclass(frozen=True)
class OrbitBfsResult:
    """Members found by a bounded gamma-word BFS, plus what was pruned."""

    members: frozenset[MatM]
    pruned: int
    depth: int
    entry_bound: int

    def to_json(self) -> dict:
        return {
            "members": sorted(str(m) for m in self.members),
            "count": len(self.members),
            "pruned": self.pruned,
            "caps": {"depth": self.depth, "entry_bound": self.entry_bound},
        }


def _in_fundamental_domain(t: SixTuple) -> bool:
    x, y, z, xp, yp, zp = t
    xyz = x * y * z
    return xyz >= 2 * x * xp and xyz >= 2 * y * yp and xyz >= 2 * z * zp


def reduce_to_fundamental(m: MatM) -> OrbitReport:
    """Greedy descent of a positive cluster-cyclic matrix to its orbit minimum.

    While some gamma_i strictly decreases column i (equivalently
    xyz < 2 a_i a_i'), apply the smallest such i. The endpoint is the
    unique M1 element of the orbit and satisfies the fundamental-domain
    inequalities, which are checked before certifying.
    """
    if cyclicity(m) is not CyclicityClass.POSITIVE_CYCLIC:
        raise NotClusterCyclic(f"{m} is not positive-cyclic")
    ok, cert = is_cluster_cyclic(m)
    if not ok:
        raise NotClusterCyclic(f"{m} is not cluster-cyclic ({cert.violated})")
    cur = m.entries()
    word: list[int] = []
    explored = 1
    while True:
        x, y, z, xp, yp, zp = cur
        xyz = x * y * z
        step = None
        for i, prod in enumerate((x * xp, y * yp, z * zp), start=1):
            if xyz < 2 * prod:
                step = i
                break
        if step is None:
            break
        cur = gamma_tuple(cur, step)
        word.append(step)
        explored += 1
    representative = validate(*cur)
    return OrbitReport(
        representative=representative,
        path=MutationPath(tuple(reversed(word))),
        explored=explored,
        is_minimal_certified=_in_fundamental_domain(cur),
    )


def _bfs(
    start: SixTuple,
    depth: int,
    step,
    entry_bound: int,
    collect_all: bool,
    stop_when=None,
):
    """Shared no-backtrack BFS over words in gamma or mu.

    step(tuple, k) produces the next tuple; branches whose entries leave
    [-entry_bound, entry_bound] are pruned and counted. If stop_when is
    given, the search returns early with (word, tuple) on the first hit.
    """
    bound = min(entry_bound, INT64_MAX)
    visited = {start}
    queue = deque([(start, 0, ())])  # tuple, last index, word
    pruned = 0
    if stop_when is not None and stop_when(start):
        return visited, pruned, ((), start)
    for _ in range(depth):
        next_queue: deque = deque()
        while queue:
            cur, last, word = queue.popleft()
            for k in (1, 2, 3):
                if k == last:
                    continue
                child = step(cur, k)
                if any(abs(e) > bound for e in child):
                    pruned += 1
                    continue
                if child in visited:
                    continue
                visited.add(child)
                child_word = word + (k,)
                if stop_when is not None and stop_when(child):
                    return visited, pruned, (child_word, child)
                next_queue.append((child, k, child_word))
        queue = next_queue
        if not queue:
            break
    return visited, pruned, None


def orbit_bfs(
    m: MatM, depth: int = DEFAULT_DEPTH, entry_bound: int = DEFAULT_ENTRY_BOUND
) -> OrbitBfsResult:
    """All distinct gamma-word images of m with word length <= depth.

    Words never repeat an index consecutively (each gamma_k is an
    involution). Branches that would exceed entry_bound in absolute
    value are pruned and reported in the result.
    """
    if depth < 0:
        raise DomainError(f"depth must be non-negative, got {depth}")
    visited, pruned, _ = _bfs(m.entries(), depth, gamma_tuple, entry_bound, True)
    members = frozenset(validate(*t) for t in visited)
    return OrbitBfsResult(members=members, pruned=pruned, depth=depth, entry_bound=entry_bound)


def _is_acyclic_tuple(t: SixTuple) -> bool:
    return not (all(e > 0 for e in t) or all(e < 0 for e in t))


def mu_orbit_search_acyclic(
    m: MatM, depth: int = DEFAULT_DEPTH, entry_bound: int = DEFAULT_ENTRY_BOUND
) -> Optional[tuple[MutationPath, MatM]]:
    """Breadth-first search over mutation words for an acyclic image.

    Returns the first acyclic matrix found together with the word that
    reaches it (the input itself counts, with the empty word), or None
    if every image within the depth and entry bound is cyclic.
    """
    if depth < 0:
        raise DomainError(f"depth must be non-negative, got {depth}")
    _, _, hit = _bfs(
        m.entries(), depth, mutate_tuple, entry_bound, False, stop_when=_is_acyclic_tuple
    )
    if hit is None:
        return None
    word, t = hit
    return MutationPath(word), validate(*t)


def lift_to_matm(s: TripleS) -> MatM:
    """An integer matrix whose skew-symmetrization is the given triple.

    Requires the exact backend with positive entries, or exactly one
    zero entry among positives. Writing p = l sqrt(a), q = m sqrt(b),
    r = n sqrt(c) with squarefree a, b, c, an integer product pqr forces
    every prime of abc to appear in exactly two of a, b, c, so with
    u = gcd(a, b), v = gcd(b, c), w = gcd(c, a):

        M = (l u, m v, n w / l w, m u, n v).

    With r = 0 the lift is (p^2, 1, 0 / 1, q^2, 0), and zeros elsewhere
    are handled by permuting to that shape and back.
    """
    if s.backend != "exact":
        raise NotInShat("lift_to_matm requires the exact backend")
    signs = [e.sign for e in s.entries()]
    if any(sig < 0 for sig in signs):
        raise DomainError(f"lift_to_matm requires non-negative entries, got ({s})")
    zeros = [i for i, sig in enumerate(signs) if sig == 0]
    if len(zeros) > 1:
        raise DomainError(f"at most one zero entry is supported, got ({s})")
    if len(zeros) == 1:
        # move the zero to the last slot, lift, move back
        rotations = {0: (2, 3, 1), 1: (1, 3, 2), 2: (1, 2, 3)}
        sigma = rotations[zeros[0]]
        rotated = permute(s, sigma)
        p, q, _ = rotated.entries()
        lifted = validate(p.square(), 1, 0, 1, q.square(), 0)
        inverse = tuple(sigma.index(i) + 1 for i in (1, 2, 3))
        return permute(lifted, inverse)
    p, q, r = s.entries()
    a, b, c = p.radicand, q.radicand, r.radicand
    u = math.gcd(a, b)
    v = math.gcd(b, c)
    w = math.gcd(c, a)
    if a != u * w or b != u * v or c != v * w:
        raise NotInShat(f"({s}) does not have an integer product pqr")
    l, m, n = p.coeff, q.coeff, r.coeff
    return validate(l * u, m * v, n * w, l * w, m * u, n * v)
