"""Classification logic: cyclicity, cluster-cyclicity, triple classes,
the A/B dichotomy, the alternating 1,2-orbit and fixed points.

A cyclic matrix is cluster-cyclic exactly when its Markov constant (in
the |xyz| convention) is at most 4 and each column product xx', yy',
zz' is at least 4. Positive triples split into classes M1/M2/M3 by how
many of the three gamma directions are entrywise non-decreasing (3,
exactly 2, at most 1). Cluster-positive triples either descend to a
unique M1 minimum (class A) or consist entirely of M2 elements whose
descent tends to (2, 2, 2) (class B; only possible when C = 4).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Union

from .errors import (
    DomainError,
    IterationCapExceeded,
    OperationCancelled,
    SearchBudgetExceeded,
)
from .matrices import (
    CyclicityClass,
    MatM,
    MutationPath,
    TripleS,
    gamma_s,
    markov_c_m,
    markov_c_m_abs,
    markov_c_s,
    sk,
)
from .surd import Surd

__all__ = [
    "ABClass",
    "ABKind",
    "CyclicityCertificate",
    "MkClass",
    "SequenceBehavior",
    "ab_class",
    "analyze_12_sequence",
    "chebyshev_u",
    "cyclicity",
    "descent_step",
    "find_negative_in_12_orbit",
    "integer_fixed_points",
    "is_cluster_cyclic",
    "is_fixed_point",
    "mk_class",
    "mk_class_matm",
    "one_two_orbit",
]

DESCENT_CAP = 10_000
CONVERGENCE_TOL = 1e-9
FLOAT_CLASS_EPS = 1e-12
NOISE_BASIN = 1e-6
NOISE_STEP = 1e-8
NEGATIVE_SEARCH_CAP = 1_000_000


class MkClass(Enum):
    M1 = "M1"
    M2 = "M2"
    M3 = "M3"


class ABKind(Enum):
    A = "A"
    B = "B"


class SequenceBehavior(Enum):
    DIVERGES = "diverges"
    CONSTANT_EQUAL = "constant-equal"
    CONVERGES_TO_ZERO = "converges-to-zero"


@dataclass(frozen=True)
class ABClass:
    """Outcome of the descent on a cluster-positive triple.

    Class A carries the M1 representative (the minimum of the orbit)
    and the word of gamma indices that was applied to reach it. Class B
    carries the limit marker (2, 2, 2) instead.
    """

    kind: ABKind
    path: MutationPath
    iterations: int
    representative: Optional[TripleS] = None
    limit: Optional[tuple[float, float, float]] = None


@dataclass(frozen=True)
class CyclicityCertificate:
    """Why a matrix was declared cluster-cyclic or not."""

    decision: str
    markov: int
    products: tuple[int, int, int]
    violated: Optional[str] = None
    witness_path: Optional[MutationPath] = None

    def to_json(self) -> dict:
        out: dict = {"decision": self.decision, "markov": self.markov, "products": list(self.products)}
        if self.violated is not None:
            out["violated"] = self.violated
        if self.witness_path is not None:
            out["witness_path"] = self.witness_path.to_json()
        return out


def cyclicity(m: MatM) -> CyclicityClass:
    """Positive-cyclic, negative-cyclic, or acyclic by entry signs."""
    if all(e > 0 for e in m.entries()):
        return CyclicityClass.POSITIVE_CYCLIC
    if all(e < 0 for e in m.entries()):
        return CyclicityClass.NEGATIVE_CYCLIC
    return CyclicityClass.ACYCLIC


def is_cluster_cyclic(m: MatM) -> tuple[bool, CyclicityCertificate]:
    """Decide cluster-cyclicity with a certificate.

    Acyclic input is immediately not cluster-cyclic. Cyclic input is
    cluster-cyclic iff markov_c_m_abs(m) <= 4 and xx', yy', zz' >= 4.
    """
    products = (m.x * m.xp, m.y * m.yp, m.z * m.zp)
    if cyclicity(m) is CyclicityClass.ACYCLIC:
        # No |xyz| convention is canonical off the cyclic locus; report
        # the gamma-normalized constant.
        cert = CyclicityCertificate("cluster_acyclic", markov_c_m(m), products, "acyclic_input")
        return False, cert
    c = markov_c_m_abs(m)
    for name, prod in zip(("xx", "yy", "zz"), products):
        if prod < 4:
            return False, CyclicityCertificate(
                "cluster_acyclic", c, products, f"product_{name}_lt_4"
            )
    if c > 4:
        return False, CyclicityCertificate("cluster_acyclic", c, products, "markov_gt_4")
    return True, CyclicityCertificate("cluster_cyclic", c, products)


# -- M1 / M2 / M3 ------------------------------------------------------


def _non_decreasing_directions(s: TripleS, rel_eps: float = 0.0) -> list[bool]:
    """For each index i: is s <= gamma_i(s), i.e. 2 s_i <= product of the others?

    The float backend accepts a relative epsilon so that noise-level
    differences count as non-decreasing.
    """
    p, q, r = s.entries()
    others = (q * r, r * p, p * q)
    flags = []
    for own, prod in zip((p, q, r), others):
        if s.backend == "exact":
            flags.append(not (prod < own * 2))
        else:
            slack = rel_eps * max(1.0, abs(prod))
            flags.append(own * 2 <= prod + slack)
    return flags


def mk_class(s: TripleS, rel_eps: float = 0.0) -> MkClass:
    """M1, M2 or M3 by the number of non-decreasing gamma directions (3, 2, <=1).

    Total in the entry signs: a triple with a non-positive entry counts
    at most one non-decreasing direction and lands in M3.
    """
    count = sum(_non_decreasing_directions(s, rel_eps))
    if count == 3:
        return MkClass.M1
    if count == 2:
        return MkClass.M2
    return MkClass.M3


def mk_class_matm(m: MatM) -> MkClass:
    """The class of a positive matrix by integer comparisons of xyz with 2xx', 2yy', 2zz'."""
    if not m.is_positive():
        raise DomainError("mk_class_matm requires a positive matrix")
    xyz = m.x * m.y * m.z
    count = sum(xyz >= 2 * a * b for a, b in m.columns())
    if count == 3:
        return MkClass.M1
    if count == 2:
        return MkClass.M2
    return MkClass.M3


def descent_step(s: TripleS, rel_eps: float = 0.0) -> Optional[tuple[int, TripleS]]:
    """The smallest strictly-decreasing gamma direction and its image.

    Returns None when no direction strictly decreases, i.e. s is M1.
    For an M2 triple the direction is unique.
    """
    flags = _non_decreasing_directions(s, rel_eps)
    for i, non_decreasing in enumerate(flags, start=1):
        if not non_decreasing:
            return i, gamma_s(s, i)
    return None


def _check_cancel(cancel, where: str) -> None:
    """Raise if a cooperative cancellation token (threading.Event-like) is set."""
    if cancel is not None and cancel.is_set():
        raise OperationCancelled(f"{where} was cancelled")


def ab_class(s: TripleS, cap: int = DESCENT_CAP, cancel=None) -> ABClass:
    """Descend a cluster-positive triple to its class A minimum or class B limit.

    Exact backend: repeatedly apply the unique strictly-decreasing gamma
    while the triple is M2; the reached M1 element is the class A
    representative. (Over triples with integer squares the answer is
    always A.) Float backend: same loop with tolerant comparisons;
    convergence to (2, 2, 2) means class B. Near the limit, rounding
    noise dominates: once every entry is within NOISE_BASIN of 2, a
    noise-level M3 reading or an M2 step smaller than NOISE_STEP is
    taken as having reached the B limit. Classification runs first, so
    an exact-shape (p, p, 2) endpoint still comes back as M1 / class A.
    Hitting the cap raises IterationCapExceeded with the last iterate.
    """
    if not s.is_positive():
        raise DomainError("ab_class requires a positive triple")
    exact = s.backend == "exact"
    eps = 0.0 if exact else FLOAT_CLASS_EPS
    cur = s
    word: list[int] = []
    for iterations in itertools.count():
        _check_cancel(cancel, "ab_class descent")
        dist = None if exact else max(abs(e - 2.0) for e in cur.entries())
        if dist is not None and dist < CONVERGENCE_TOL:
            return ABClass(ABKind.B, MutationPath(tuple(word)), iterations, limit=(2.0, 2.0, 2.0))
        cls = mk_class(cur, eps)
        if cls is MkClass.M1:
            return ABClass(ABKind.A, MutationPath(tuple(word)), iterations, representative=cur)
        if cls is MkClass.M3:
            if dist is not None and dist <= NOISE_BASIN:
                return ABClass(
                    ABKind.B, MutationPath(tuple(word)), iterations, limit=(2.0, 2.0, 2.0)
                )
            raise DomainError(f"triple {cur} is M3; the input was not cluster-positive")
        if iterations >= cap:
            raise IterationCapExceeded(f"descent did not resolve within {cap} steps", last=cur)
        step = descent_step(cur, eps)
        assert step is not None  # M2 has a strictly-decreasing direction
        if dist is not None and dist <= NOISE_BASIN:
            p, q, r = cur.entries()
            i = step[0] - 1
            own = (p, q, r)[i]
            prod = (q * r, r * p, p * q)[i]
            if 2.0 * own - prod <= NOISE_STEP * max(1.0, prod):
                return ABClass(
                    ABKind.B, MutationPath(tuple(word)), iterations, limit=(2.0, 2.0, 2.0)
                )
        word.append(step[0])
        cur = step[1]
    raise AssertionError("unreachable")


# -- fixed points ------------------------------------------------------


def is_fixed_point(m: MatM) -> bool:
    """A positive matrix is gamma-fixed iff xx' = yy' = zz' = 4."""
    if not m.is_positive():
        raise DomainError("is_fixed_point requires a positive matrix")
    return all(a * b == 4 for a, b in m.columns())


def integer_fixed_points() -> frozenset[MatM]:
    """All positive integer matrices fixed by every gamma_k.

    Generated from the constraints xx' = yy' = zz' = 4 and xyz = 8 over
    the integer factor pairs (1, 4), (2, 2), (4, 1); this is exactly the
    permutation/transpose closure of (2 2 2 / 2 2 2) and (4 1 2 / 1 4 2).
    """
    pairs = ((1, 4), (2, 2), (4, 1))
    found = set()
    for c1 in pairs:
        for c2 in pairs:
            for c3 in pairs:
                if c1[0] * c2[0] * c3[0] == 8:
                    found.add(MatM(c1[0], c2[0], c3[0], c1[1], c2[1], c3[1]))
    return frozenset(found)


# -- Chebyshev-like recursions ----------------------------------------


def chebyshev_u(n: int, r: Union[Surd, float]):
    """u_n(r) with u_{-2} = -1, u_{-1} = 0 and u_{n+1} = r u_n - u_{n-1}.

    Exact for Surd input (even-index values are integers, odd-index
    values share r's radicand), plain float recursion otherwise.
    """
    if n < -2:
        raise DomainError(f"chebyshev_u requires n >= -2, got {n}")
    if isinstance(r, Surd):
        prev, cur = Surd.from_int(-1), Surd.zero()
    else:
        prev, cur = -1.0, 0.0
    if n == -2:
        return prev
    for _ in range(n + 1):
        prev, cur = cur, r * cur - prev
    return cur


def _f_pairs(s: TripleS):
    """Yield (n, f_n) for n = -1, 0, 1, ... where f_{-1} = p, f_0 = q
    and f_{n+1} = r f_n - f_{n-1}. Works for both backends."""
    p, q, r = s.entries()
    yield -1, p
    prev, cur = p, q
    n = 0
    while True:
        yield n, cur
        prev, cur = cur, r * cur - prev
        n += 1


def one_two_orbit(s: TripleS, n: int) -> list[TripleS]:
    """The iterates of alternating gamma_1, gamma_2 starting from s.

    Returns [s, gamma_1(s), gamma_2 gamma_1 (s), ...] with n applications,
    checking along the way that the k-th iterate equals
    (f_{k-1}, f_k, r) for k even and (f_k, f_{k-1}, r) for k odd.
    """
    if n < 0:
        raise DomainError(f"one_two_orbit requires n >= 0, got {n}")
    out = [s]
    cur = s
    fs = _f_pairs(s)
    f_prev = next(fs)[1]
    f_cur = next(fs)[1]
    for k in range(1, n + 1):
        cur = gamma_s(cur, 1 if k % 2 == 1 else 2)
        out.append(cur)
        f_prev, f_cur = f_cur, next(fs)[1]
        expected = (f_prev, f_cur, s.r) if k % 2 == 0 else (f_cur, f_prev, s.r)
        if s.backend == "exact":
            assert cur.entries() == expected, (k, cur, expected)
        else:
            assert all(
                math.isclose(a, b, rel_tol=1e-9, abs_tol=1e-9)
                for a, b in zip(cur.entries(), expected)
            ), (k, cur, expected)
    return out


def find_negative_in_12_orbit(
    s: TripleS, cap: int = NEGATIVE_SEARCH_CAP, cancel=None
) -> tuple[int, Union[Surd, float]]:
    """Smallest n >= 1 with f_n(s) < 0, for a positive triple with r < 2.

    Existence is a theorem for 0 < r < 2; the budget only guards
    against implementation bugs.
    """
    if not s.is_positive():
        raise DomainError("find_negative_in_12_orbit requires a positive triple")
    r = s.r
    r_lt_2 = (r < Surd.from_int(2)) if isinstance(r, Surd) else (r < 2.0)
    if not r_lt_2:
        raise DomainError(f"requires r < 2, got r = {r}")
    negative = (lambda v: v.sign < 0) if s.backend == "exact" else (lambda v: v < 0.0)
    for n, value in _f_pairs(s):
        _check_cancel(cancel, "negative-entry search")
        if n >= 1 and negative(value):
            return n, value
        if n >= cap:
            raise SearchBudgetExceeded(
                f"no negative value within {cap} iterations; r = {r} should force one"
            )
    raise AssertionError("unreachable")


def analyze_12_sequence(s: TripleS, rel_tol: float = 1e-9) -> SequenceBehavior:
    """Limit behavior of the alternating 1,2-orbit for float p, q, r >= 2.

    With r = 2 cosh(theta): constant iff r = 2 and p = q; tending to
    zero iff r > 2 and q e^theta = p; divergent otherwise.
    """
    if s.backend != "float":
        raise DomainError("analyze_12_sequence works on the float backend")
    p, q, r = s.entries()
    if min(p, q, r) < 2.0 - 1e-12:
        raise DomainError(f"requires p, q, r >= 2, got ({p}, {q}, {r})")
    if abs(r - 2.0) <= rel_tol * 2.0:
        if abs(p - q) <= rel_tol * max(1.0, abs(p)):
            return SequenceBehavior.CONSTANT_EQUAL
        return SequenceBehavior.DIVERGES
    theta = math.acosh(r / 2.0)
    if abs(q * math.exp(theta) - p) <= rel_tol * max(1.0, abs(p)):
        return SequenceBehavior.CONVERGES_TO_ZERO
    return SequenceBehavior.DIVERGES
