"""Residue classes mod p^N, radii, exponent multisets, level maps.

A radius is a class in (Z/p^N Z)^x / {+-1}; its canonical representative
is the smaller of the two unit lifts, so reps live in [1, (p^N-1)/2] and
ordering/serialization are deterministic.
"""

from dataclasses import dataclass
from math import gcd

from dormant.combinat import digits_base_p
from dormant.errors import NotInXi, NotUnit


@dataclass(frozen=True, order=True)
class ResidueClass:
    p: int
    N: int
    value: int

    def __post_init__(self):
        if not (1 <= self.N):
            raise ValueError("level must be >= 1")
        object.__setattr__(self, "value", self.value % self.p**self.N)

    def digit(self, a):
        return (self.value // self.p**a) % self.p

    def prefix(self, a):
        """Value mod p^{a+1} (the digits-[0..a] part)."""
        return self.value % self.p ** (a + 1)


def digits(d: ResidueClass):
    """All base-p digits of d plus the prefix values d mod p^{a+1}."""
    ds = digits_base_p(d.value, d.p, d.N)
    prefixes = [d.prefix(a) for a in range(d.N)]
    return ds, prefixes


@dataclass(frozen=True, order=True)
class Radius:
    p: int
    N: int
    rep: int

    def __post_init__(self):
        pN = self.p**self.N
        r = self.rep % pN
        if gcd(r, self.p) != 1:
            raise NotUnit(f"{r} is not a unit mod {self.p}^{self.N}")
        object.__setattr__(self, "rep", min(r, pN - r))

    def to_json(self):
        return {"p": self.p, "N": self.N, "rep": self.rep}

    @staticmethod
    def from_json(obj):
        return Radius(obj["p"], obj["N"], obj["rep"])


@dataclass(frozen=True)
class ExponentMultiset:
    p: int
    N: int
    entries: tuple

    def __post_init__(self):
        pN = self.p**self.N
        object.__setattr__(self, "entries", tuple(sorted(e % pN for e in self.entries)))

    @property
    def n(self):
        return len(self.entries)

    def in_xi_tilde(self):
        """Whether the mod-p images are pairwise distinct."""
        mods = [e % self.p for e in self.entries]
        return len(set(mods)) == len(mods)


@dataclass(frozen=True)
class GeneralRadius:
    """Element of S_n \\ (Z/p^N Z)^n / Delta in canonical form.

    Canonical form: among the n diagonal shifts that put some entry at 0,
    the lexicographically least sorted tuple.
    """

    p: int
    N: int
    entries: tuple

    def __post_init__(self):
        pN = self.p**self.N
        raw = [e % pN for e in self.entries]
        candidates = [tuple(sorted((e - c) % pN for e in raw)) for c in raw]
        object.__setattr__(self, "entries", min(candidates))

    @property
    def n(self):
        return len(self.entries)


def is_in_Xi(g: GeneralRadius):
    """True iff some (equivalently the canonical) representative has
    pairwise-distinct mod-p entries."""
    mods = [e % g.p for e in g.entries]
    return len(set(mods)) == len(mods)


def enum_Xi2(p, N):
    """All radii at level N, ascending by canonical representative."""
    if p == 2:
        raise ValueError("p must be odd")
    pN = p**N
    return [Radius(p, N, r) for r in range(1, (pN - 1) // 2 + 1) if r % p != 0]


def radius_from_exponent(e: ExponentMultiset):
    """The radius of a rank-2 exponent multiset: the class of (d1 - d2)/2."""
    if e.n != 2:
        raise ValueError("rank-2 multiset required")
    if not e.in_xi_tilde():
        raise NotInXi("mod-p images coincide")
    pN = e.p**e.N
    half = (pN + 1) // 2  # inverse of 2 mod p^N
    d1, d2 = e.entries
    return Radius(e.p, e.N, ((d1 - d2) * half) % pN)


def reduce_level(rho: Radius, N2):
    """Image of a radius at level N under reduction to level N2 <= N."""
    if not (1 <= N2 <= rho.N):
        raise ValueError("need 1 <= N' <= N")
    return Radius(rho.p, N2, rho.rep % rho.p**N2)


def lift_fiber(rho: Radius):
    """All level-(N+1) radii reducing to rho; exactly p of them."""
    p, N = rho.p, rho.N
    pN, pN1 = p**N, p ** (N + 1)
    out = set()
    for k in range(p):
        out.add(Radius(p, N + 1, rho.rep + k * pN))
        out.add(Radius(p, N + 1, (pN - rho.rep) + k * pN))
    return sorted(out)


def radius_from_edge_number(a, p, N):
    """Radius attached to an edge integer a: the class of (2a+1)/2."""
    pN = p**N
    if (2 * a + 1) % p == 0:
        raise NotUnit(f"p divides 2a+1 for a = {a}")
    half = (pN + 1) // 2
    return Radius(p, N, ((2 * a + 1) * half) % pN)


def edge_numbers_for_radius(rho: Radius):
    """The two integers a in [0, p^N) with (2a+1)/2 = +-rho, ascending."""
    pN = rho.p**rho.N
    out = []
    for s in (rho.rep, pN - rho.rep):
        # solve 2a + 1 = 2s  (mod p^N)
        out.append((2 * s - 1) * ((pN + 1) // 2) % pN)
    return sorted(out)
