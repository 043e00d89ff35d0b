"""Unit groups (Z/NZ)^x and the lattice of subgroups containing -1.

Everything here is plain integer arithmetic on sorted residue tuples; a
subgroup is identified by its element tuple, generator lists are kept for
display only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd


def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    result = n
    m, p = n, 2
    while p * p <= m:
        if m % p == 0:
            result -= result // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        result -= result // m
    return result


def multiplicative_order(a: int, n: int) -> int:
    a %= n
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    order, x = 1, a
    while x != 1 % n:
        x = (x * a) % n
        order += 1
    return order


@dataclass(frozen=True)
class UnitGroup:
    """The full group (Z/NZ)^x with a cyclic factor decomposition."""

    N: int
    elements: tuple[int, ...]
    # (generator, order) pairs; the generators jointly regenerate the group
    factors: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def structure(self) -> str:
        """Invariant-factor style description such as 'C2xC2xC4'."""
        orders = sorted(o for _, o in self.factors)
        return "x".join(f"C{o}" for o in orders) if orders else "C1"


@dataclass(frozen=True)
class DirichletSubgroup:
    """A subgroup {+-1} <= Delta <= (Z/NZ)^x, canonically a sorted tuple."""

    N: int
    elements: tuple[int, ...]
    generators: tuple[int, ...] = field(default=(), compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def contains(self, other: "DirichletSubgroup") -> bool:
        if self.N != other.N:
            raise ValueError("subgroups at different levels")
        return set(other.elements) <= set(self.elements)

    def __le__(self, other: "DirichletSubgroup") -> bool:
        return other.contains(self)

    def label(self) -> str:
        gens = self.generators or minimal_generators(self)
        return f"{self.N}:" + ",".join(str(g if g != self.N - 1 else -1) for g in gens)


def _factorize(n: int) -> list[tuple[int, int]]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def _primitive_root(q: int) -> int:
    """Smallest primitive root mod an odd prime power q."""
    phi = euler_phi(q)
    primes = [p for p, _ in _factorize(phi)]
    for g in range(2, q):
        if gcd(g, q) != 1:
            continue
        if all(pow(g, phi // p, q) != 1 for p in primes):
            return g
    raise ValueError(f"no primitive root mod {q}")


def _crt_lift(N: int, q: int, a: int) -> int:
    """Element of (Z/NZ)^x congruent to a mod q and to 1 mod N/q."""
    m = N // q
    # x = a + q*t with x = 1 mod m
    t = ((1 - a) * pow(q, -1, m)) % m if m > 1 else 0
    return (a + q * t) % N


def unit_group(N: int) -> UnitGroup:
    if N < 1:
        raise ValueError("level must be positive")
    if N <= 2:
        return UnitGroup(N, (1,), ())
    elements = tuple(a for a in range(1, N) if gcd(a, N) == 1)
    # Cyclic decomposition by CRT over prime powers: (Z/p^e)^x is cyclic for
    # odd p, and C2 x C_{2^{e-2}} for p = 2, e >= 3 (generated by -1 and 3).
    factors: list[tuple[int, int]] = []
    for p, e in _factorize(N):
        q = p**e
        if p == 2:
            if e == 1:
                continue
            factors.append((_crt_lift(N, q, q - 1), 2))
            if e >= 3:
                factors.append((_crt_lift(N, q, 3), 2 ** (e - 2)))
        else:
            factors.append((_crt_lift(N, q, _primitive_root(q)), euler_phi(q)))
    return UnitGroup(N, elements, tuple(factors))


def _closure(N: int, seed: set[int]) -> set[int]:
    out = {1 % max(N, 2)}
    frontier = list(seed)
    out |= set(seed)
    while frontier:
        x = frontier.pop()
        for y in list(out):
            z = (x * y) % N
            if z not in out:
                out.add(z)
                frontier.append(z)
    return out


def subgroup_from_generators(N: int, gens: list[int] | tuple[int, ...]) -> DirichletSubgroup:
    """Closure of gens together with -1 under multiplication mod N.

    Generators may be negative (interpreted mod N) and must be coprime to N.
    """
    if N < 1:
        raise ValueError("level must be positive")
    norm = []
    for g in gens:
        r = g % N
        if gcd(r, N) != 1:
            raise ValueError(f"generator {g} is not coprime to N={N}")
        norm.append(r)
    seed = set(norm) | {1 % max(N, 2), (N - 1) % max(N, 2)}
    elems = tuple(sorted(_closure(N, seed)))
    return DirichletSubgroup(N, elems, tuple(gens))


def minimal_generators(delta: DirichletSubgroup) -> tuple[int, ...]:
    """A short generating list for display: -1 first, then greedy extension."""
    N = delta.N
    if N <= 2 or delta.order <= 2:
        return (-1,)
    gens: list[int] = [-1]
    have = _closure(N, {1, N - 1})
    for a in delta.elements:
        if a in have:
            continue
        gens.append(a)
        have = _closure(N, have | {a})
        if len(have) == delta.order:
            break
    return tuple(gens)


def enumerate_deltas(N: int, proper_only: bool = False) -> list[DirichletSubgroup]:
    """All subgroups {+-1} <= Delta <= (Z/NZ)^x, sorted by (order, elements).

    Strategy: cyclic subgroups <x, -1> for every unit x, closed under
    pairwise joins.  Every subgroup of a finite abelian group is a join of
    cyclic ones, so this is complete.
    """
    if N < 3:
        full = subgroup_from_generators(N, [])
        return [] if proper_only else [full]
    units = unit_group(N)
    seen: dict[tuple[int, ...], DirichletSubgroup] = {}
    base = subgroup_from_generators(N, [-1])
    seen[base.elements] = base
    for x in units.elements:
        s = subgroup_from_generators(N, [-1, x])
        seen.setdefault(s.elements, s)
    changed = True
    while changed:
        changed = False
        current = list(seen.values())
        for i, a in enumerate(current):
            for b in current[i + 1 :]:
                if a.contains(b) or b.contains(a):
                    continue
                j = subgroup_from_generators(N, list(a.elements) + list(b.elements))
                if j.elements not in seen:
                    seen[j.elements] = j
                    changed = True
    subs = sorted(seen.values(), key=lambda s: (s.order, s.elements))
    if proper_only:
        full_order = units.order
        subs = [s for s in subs if 2 < s.order < full_order]
    return subs


def lattice_edges(
    deltas: list[DirichletSubgroup],
) -> list[tuple[DirichletSubgroup, DirichletSubgroup]]:
    """Hasse-diagram edges (smaller, larger) of the containment order."""
    levels = {d.N for d in deltas}
    if len(levels) > 1:
        raise ValueError(f"mixed levels in lattice input: {sorted(levels)}")
    edges = []
    for a in deltas:
        for b in deltas:
            if a is b or not b.contains(a) or a.order == b.order:
                continue
            # Hasse edge: nothing strictly between a and b
            if any(
                c is not a and c is not b and b.contains(c) and c.contains(a)
                for c in deltas
            ):
                continue
            edges.append((a, b))
    edges.sort(key=lambda e: (e[0].elements, e[1].elements))
    return edges
