"""Invariants of the congruence subgroups attached to (N, Delta).

The subgroup of SL2(Z/NZ) consisting of upper-triangular matrices with
top-left entry in Delta acts on SL2(Z/NZ) by left multiplication; its right
cosets are in bijection with unimodular row pairs (c, d) mod N taken up to
scaling by Delta.  The permutations that S = [[0,-1],[1,0]] and
T = [[1,1],[0,1]] induce on these cosets give the index, the elliptic point
counts (fixed cosets of S and of S*T), the cusp count (orbits of T) and
hence the genus.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import DirichletSubgroup, euler_phi, unit_group


@dataclass(frozen=True)
class CongruenceSubgroupRep:
    """Coset space of the congruence subgroup, with generator permutations.

    cosets[i] is the canonical (c, d) representative of coset i (the
    lexicographically least pair in its Delta-scaling class); perm_s and
    perm_t are the permutations induced by right multiplication by S and T.
    """

    N: int
    delta: DirichletSubgroup
    cosets: tuple[tuple[int, int], ...]
    perm_s: tuple[int, ...]
    perm_t: tuple[int, ...]

    @property
    def index(self) -> int:
        return len(self.cosets)


@dataclass(frozen=True)
class CongruenceInvariants:
    mu: int
    nu2: int
    nu3: int
    nu_inf: int
    genus: int

    def __post_init__(self):
        lhs = 12 * (self.genus - 1) + 3 * self.nu2 + 4 * self.nu3 + 6 * self.nu_inf
        if lhs != self.mu:
            raise ValueError(f"Riemann-Hurwitz bookkeeping failed: {self}")


def gamma0_index(N: int) -> int:
    """[SL2(Z) : Gamma_0(N)] = N * prod_{p | N} (1 + 1/p)."""
    idx = N
    m, p = N, 2
    while p * p <= m:
        if m % p == 0:
            idx = idx // p * (p + 1)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        idx = idx // m * (m + 1)
    return idx


def expected_index(N: int, delta: DirichletSubgroup) -> int:
    """Closed form [SL2(Z) : Gamma_Delta(N)] = [SL2:Gamma_0] * phi(N)/|Delta|."""
    if N == 1:
        return 1
    return gamma0_index(N) * euler_phi(N) // delta.order


def coset_action(N: int, delta: DirichletSubgroup) -> CongruenceSubgroupRep:
    """Build the coset space by a BFS orbit walk from the identity coset."""
    if delta.N != N:
        raise ValueError("subgroup level does not match N")
    if N == 1:
        return CongruenceSubgroupRep(1, delta, ((0, 0),), (0,), (0,))

    dset = delta.elements

    def canon(c: int, d: int) -> tuple[int, int]:
        return min(((lam * c) % N, (lam * d) % N) for lam in dset)

    start = canon(0, 1)
    index_of = {start: 0}
    cosets = [start]
    frontier = [start]
    while frontier:
        nxt = []
        for (c, d) in frontier:
            for img in (((d % N), (-c) % N), (c, (c + d) % N)):  # S then T
                r = canon(*img)
                if r not in index_of:
                    index_of[r] = len(cosets)
                    cosets.append(r)
                    nxt.append(r)
        frontier = nxt
    perm_s = tuple(index_of[canon(d, (-c) % N)] for (c, d) in cosets)
    perm_t = tuple(index_of[canon(c, (c + d) % N)] for (c, d) in cosets)

    rep = CongruenceSubgroupRep(N, delta, tuple(cosets), perm_s, perm_t)
    if rep.index != expected_index(N, delta):
        raise AssertionError(
            f"coset walk found {rep.index} cosets, closed form gives "
            f"{expected_index(N, delta)} for N={N}, Delta={delta.elements}"
        )
    return rep


def _orbit_count(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    orbits = 0
    for i in range(len(perm)):
        if seen[i]:
            continue
        orbits += 1
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
    return orbits


def invariants(rep: CongruenceSubgroupRep) -> CongruenceInvariants:
    mu = rep.index
    if rep.N == 1:
        return CongruenceInvariants(1, 1, 1, 1, 0)
    perm_st = tuple(rep.perm_t[s] for s in rep.perm_s)
    nu2 = sum(1 for i, j in enumerate(rep.perm_s) if i == j)
    nu3 = sum(1 for i, j in enumerate(perm_st) if i == j)
    nu_inf = _orbit_count(rep.perm_t)
    num = mu - 3 * nu2 - 4 * nu3 - 6 * nu_inf + 12
    if num % 12 != 0:
        raise AssertionError(f"non-integral genus for N={rep.N}: mu={mu}")
    return CongruenceInvariants(mu, nu2, nu3, nu_inf, num // 12)


def curve_invariants(N: int, delta: DirichletSubgroup) -> CongruenceInvariants:
    return invariants(coset_action(N, delta))


def projection_degree(delta1: DirichletSubgroup, delta2: DirichletSubgroup) -> int:
    """Degree of the natural projection X_{Delta1} -> X_{Delta2}."""
    if delta1.N != delta2.N:
        raise ValueError("projection between different levels")
    if not delta2.contains(delta1):
        raise ValueError(
            f"no projection: {delta1.elements} is not contained in {delta2.elements}"
        )
    return delta2.order // delta1.order


def kim_sarnak_floor(d: int) -> int:
    """Largest PSL2 index compatible with d-gonality: floor(12000*d/119)."""
    if d < 0:
        raise ValueError("d must be non-negative")
    return 12000 * d // 119
