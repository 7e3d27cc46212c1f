"""Bounded point search and the theta-congruence decision pipeline.

Nothing here proves non-congruence: when the search bounds run out
without a witness the verdict is ``Unknown``.
"""

from __future__ import annotations

import enum
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional

import numpy as np

from .curve import (
    INFINITY,
    CurveParams,
    Point,
    WeierstrassK,
    _add,
    _mul,
    build_curve,
    certify_non_torsion,
    quadratic_twist,
    torsion_subgroup,
    transport_twist_point,
)
from .field import QQ, FieldDesc, QuadElem, sqrt_in_field
from .triangle import TriangleK, psi_point_to_triangle, verify_triangle

__all__ = [
    "RankEvidence",
    "SearchConfig",
    "Status",
    "Verdict",
    "classify",
    "independent_subset",
    "oracle_triangle_search",
    "search_points",
    "twist_rank_evidence",
]

THREADS_ENV = "THETA_FORGE_THREADS"
DEFAULT_SIEVE_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61)
_SIEVE_BLOCK = 40_000


@dataclass(frozen=True)
class SearchConfig:
    denom_bound: int = 20
    numer_bound: int = 10**6
    twist_d: Optional[int] = None
    sieve_primes: tuple[int, ...] = DEFAULT_SIEVE_PRIMES

    def __post_init__(self):
        if self.denom_bound < 1 or self.numer_bound < 1:
            raise ValueError("search bounds must be >= 1")


def _worker_count(jobs: int) -> int:
    cap = os.environ.get(THREADS_ENV)
    workers = os.cpu_count() or 1
    if cap:
        workers = min(workers, max(1, int(cap)))
    return max(1, min(workers, jobs))


def _sieve_groups(primes) -> list[tuple[int, list[int]]]:
    groups, current, modulus = [], [], 1
    for p in primes:
        if current and modulus * p > _SIEVE_BLOCK:
            groups.append((modulus, current))
            current, modulus = [], 1
        current.append(p)
        modulus *= p
    if current:
        groups.append((modulus, current))
    return groups


def _square_tables(primes) -> dict[int, np.ndarray]:
    tables = {}
    for p in primes:
        t = np.zeros(p, dtype=bool)
        t[(np.arange(p, dtype=np.int64) ** 2) % p] = True
        tables[p] = t
    return tables


def _integral_coefficients(E: WeierstrassK) -> tuple[int, int]:
    if not E.field.is_rational or not E.is_rational:
        raise ValueError("point search runs on curves over Q")
    A, B = E.A.to_fraction(), E.B.to_fraction()
    if A.denominator != 1 or B.denominator != 1:
        raise ValueError("point search needs integral A and B")
    return int(A), int(B)


def search_points(E: WeierstrassK, cfg: SearchConfig = SearchConfig()) -> list[Point]:
    """Rational points with x = m/e^2, gcd(m, e) = 1, e <= denom_bound, |m| <= numer_bound.

    One point per x (y >= 0), sorted by (e, m).  With ``cfg.twist_d`` the
    search runs on the quadratic twist instead.
    """
    if cfg.twist_d is not None:
        E = quadratic_twist(E, cfg.twist_d)
    A, B = _integral_coefficients(E)
    N = cfg.numer_bound
    ms = np.arange(-N, N + 1, dtype=np.int64)
    groups = _sieve_groups(cfg.sieve_primes)
    tables = _square_tables(cfg.sieve_primes)
    first_res = (ms % groups[0][0]).astype(np.int32) if groups else None

    def group_table(M, primes, e):
        k = np.arange(M, dtype=np.int64)
        e2 = e * e % M
        e4 = e2 * e2 % M
        t = (k * k % M + (A % M) * e2 % M * k % M + (B % M) * e4 % M) % M
        F = k * t % M
        ok = np.ones(M, dtype=bool)
        for p in primes:
            ok &= tables[p][F % p]
        return ok

    def one_denominator(e: int) -> list[tuple[int, int, Point]]:
        if groups:
            M, primes = groups[0]
            cand = ms[group_table(M, primes, e)[first_res]]
            for M, primes in groups[1:]:
                cand = cand[group_table(M, primes, e)[cand % M]]
        else:
            cand = ms
        e2, e4, e3 = e * e, e**4, e**3
        found = []
        for m in cand.tolist():
            if gcd(m, e) != 1:
                continue
            F = m * (m * m + A * m * e2 + B * e4)
            if F < 0:
                continue
            root = isqrt(F)
            if root * root == F:
                P = Point(QuadElem(Fraction(m, e2)), QuadElem(Fraction(root, e3)))
                found.append((e, m, P))
        return found

    denominators = range(1, cfg.denom_bound + 1)
    workers = _worker_count(len(denominators))
    if workers == 1:
        chunks = [one_denominator(e) for e in denominators]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(one_denominator, denominators))
    rows = sorted((row for chunk in chunks for row in chunk), key=lambda t: (t[0], t[1]))
    return [P for _, _, P in rows]


def naive_height(P: Point) -> int:
    x = P.x.to_fraction()
    return max(abs(x.numerator), x.denominator)


def independent_subset(
    points: list[Point],
    E: WeierstrassK,
    box: int = 5,
    max_gens: int = 3,
    torsion: tuple[Point, ...] = (),
) -> list[Point]:
    """Greedy screen: keep P unless aP lands in {sum b_i G_i + T} for |a|, |b_i| <= box.

    A bounded-relation check, not a regulator; ``max_gens`` caps the
    lattice enumeration (it grows as (2*box + 1)**k).
    """
    lattice = {INFINITY, *torsion}
    for x in E.two_torsion_x():
        lattice.add(Point(x, QuadElem(0, 0, E.field)))
    gens: list[Point] = []
    for P in points:
        if len(gens) >= max_gens:
            break
        multiples, Q = [], INFINITY
        for _ in range(box):
            Q = _add(Q, P, E)
            multiples.append(Q)
        if any(M in lattice for M in multiples):
            continue
        gens.append(P)
        steps = [_mul(b, P, E) for b in range(-box, box + 1)]
        lattice = {_add(L, S, E) for L in lattice for S in steps}
    return gens


class Status(str, enum.Enum):
    PROPER = "ProperlyCongruent"
    TORSION_ONLY = "TorsionOnlyCongruent"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    status: Status
    witness_point: Optional[Point] = None
    witness_triangle: Optional[TriangleK] = None
    evidence: tuple[str, ...] = ()


@dataclass(frozen=True)
class RankEvidence:
    base_points: tuple[Point, ...]
    twist_points: tuple[Point, ...]
    transported: tuple[Point, ...]
    lower_bound_hint: int
    base_generators: tuple[Point, ...] = ()
    twist_generators: tuple[Point, ...] = ()


def _non_torsion(points: list[Point], E: WeierstrassK) -> list[Point]:
    return [P for P in points if P.y and certify_non_torsion(P, E, QQ)]


def _by_height(points: list[Point]) -> list[Point]:
    return sorted(points, key=lambda P: (naive_height(P), P.x.to_fraction()))


def classify(p: CurveParams, K: FieldDesc = QQ, cfg: SearchConfig = SearchConfig()) -> Verdict:
    """Decide (K, theta)-congruence of n as far as torsion probes and the search allow."""
    evidence = []
    tors = torsion_subgroup(p, K)
    evidence.append(
        f"torsion over {K}: {tors.group.value}" + ("" if tors.complete else " (probes not exhaustive)")
    )
    evidence.extend(tors.notes)
    candidate = None
    if tors.witnesses:
        W = tors.witnesses[0]
        candidate = Verdict(
            Status.TORSION_ONLY,
            W,
            psi_point_to_triangle(W, p, K),
            (),
        )
        evidence.append(f"finite-order witness {W}")

    E = build_curve(p)
    base_cfg = SearchConfig(cfg.denom_bound, cfg.numer_bound, None, cfg.sieve_primes)
    base = _by_height(_non_torsion(search_points(E, base_cfg), E))
    evidence.append(
        f"searched E(Q) with e <= {cfg.denom_bound}, |m| <= {cfg.numer_bound}: "
        f"{len(base)} non-torsion points"
    )
    witness = None
    if not K.is_rational:
        # a transported twist point is the witness that actually needs K
        Ed = quadratic_twist(E, K.d)
        twist = _by_height(_non_torsion(search_points(Ed, base_cfg), Ed))
        evidence.append(f"searched the twist by {K.d}: {len(twist)} non-torsion points")
        EK = E.base_change(K)
        for Q in twist:
            P = transport_twist_point(Q, Ed, K.d)
            if certify_non_torsion(P, EK):
                evidence.append(f"twist point {Q} transported to {P}")
                witness = P
                break
    if witness is None and base:
        witness = Point(base[0].x.in_field(K), base[0].y.in_field(K))
        evidence.append(f"rational point {base[0]} has infinite order")
    if witness is not None:
        T = psi_point_to_triangle(witness, p, K)
        return Verdict(Status.PROPER, witness, T, tuple(evidence))

    if candidate is not None:
        evidence.append("no point of infinite order within bounds; rank is not decided")
        return Verdict(Status.TORSION_ONLY, candidate.witness_point, candidate.witness_triangle, tuple(evidence))
    evidence.append("bounds exhausted without a witness; this is not a proof of non-congruence")
    return Verdict(Status.UNKNOWN, None, None, tuple(evidence))


def twist_rank_evidence(p: CurveParams, d: int, cfg: SearchConfig = SearchConfig()) -> RankEvidence:
    """Points on E(Q) and E^d(Q) backing rank E(Q(sqrt d)) = rank E(Q) + rank E^d(Q)."""
    E = build_curve(p)
    Ed = quadratic_twist(E, d)
    base_cfg = SearchConfig(cfg.denom_bound, cfg.numer_bound, None, cfg.sieve_primes)
    base = _non_torsion(search_points(E, base_cfg), E)
    twist = _non_torsion(search_points(Ed, base_cfg), Ed)
    transported = tuple(transport_twist_point(Q, Ed, d) for Q in twist)
    base_gens = independent_subset(_by_height(base), E)
    twist_gens = independent_subset(_by_height(twist), Ed)
    return RankEvidence(
        tuple(base),
        tuple(twist),
        transported,
        len(base_gens) + len(twist_gens),
        tuple(base_gens),
        tuple(twist_gens),
    )


def oracle_triangle_search(p: CurveParams, K: FieldDesc = QQ, height: int = 10) -> Optional[TriangleK]:
    """First triangle found by enumerating one leg, independent of the curve machinery.

    The leg runs over a/b (and (a/b)*sqrt d over a quadratic field) with
    1 <= a, b <= height in lowest terms, ordered by (b, a); the other leg
    is forced by the area.
    """
    n, r, s = p.n, p.r, p.s
    scales = [QuadElem(1, 0, K)] if K.is_rational else [K.sqrt_d(), QuadElem(1, 0, K)]
    for b in range(1, height + 1):
        for a in range(1, height + 1):
            if gcd(a, b) != 1:
                continue
            for scale in scales:
                u = scale * Fraction(a, b)
                v = 2 * n * r / u
                w = sqrt_in_field(u * u + v * v - 4 * n * s, K)
                if w is None or not w:
                    continue
                T = TriangleK.make(u, v, w, p, K)
                if verify_triangle(T):
                    return T
    return None
