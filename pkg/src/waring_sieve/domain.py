from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .field import PrimeModulus, make_modulus, power_structure

__all__ = ["ValuedDomain"]


@dataclass(frozen=True)
class ValuedDomain:
    """A multiset of residues mod p, stored as (value, multiplicity) pairs.

    Items are kept in ascending value order. The m-th power instance stores
    each h in H with multiplicity d, standing for its d preimages in F_p*.
    """

    p: PrimeModulus
    items: tuple[tuple[int, int], ...]
    subset_of_units: bool = True

    def __post_init__(self):
        p = self.p.p
        seen = set()
        for v, mu in self.items:
            if not 0 <= v < p:
                raise ValueError(f"value {v} is not a canonical residue mod {p}")
            if v in seen:
                raise ValueError(f"duplicate value {v}; merge it into one item")
            if mu < 1:
                raise ValueError(f"multiplicity of {v} must be positive, got {mu}")
            seen.add(v)
        if list(self.items) != sorted(self.items):
            raise ValueError("items must be sorted by value")
        if self.subset_of_units:
            if 0 in seen:
                raise ValueError("0 is not a unit")
            if self.n > p - 1:
                raise ValueError(f"{self.n} units cannot fit in F_{p}*")

    @property
    def n(self) -> int:
        return sum(mu for _, mu in self.items)

    @property
    def values(self) -> list[int]:
        return [v for v, _ in self.items]

    def slots(self) -> list[int]:
        """Every value repeated by its multiplicity, ascending."""
        return [v for v, mu in self.items for _ in range(mu)]

    @classmethod
    def from_values(cls, p, values: Iterable[int], subset_of_units: bool = True) -> "ValuedDomain":
        """Build from a list of residues; repeats become multiplicities."""
        mod = make_modulus(p)
        counts: dict[int, int] = {}
        for v in values:
            v %= mod.p
            counts[v] = counts.get(v, 0) + 1
        return cls(mod, tuple(sorted(counts.items())), subset_of_units)

    @classmethod
    def from_set(cls, p, values: Iterable[int]) -> "ValuedDomain":
        mod = make_modulus(p)
        vals = sorted({v % mod.p for v in values})
        return cls(mod, tuple((v, 1) for v in vals))

    @classmethod
    def units(cls, p) -> "ValuedDomain":
        mod = make_modulus(p)
        return cls(mod, tuple((v, 1) for v in range(1, mod.p)))

    @classmethod
    def power_image(cls, p, m: int) -> "ValuedDomain":
        """{(h, d) : h in H}: the m-th powers of F_p*, each with its d preimages."""
        ps = power_structure(p, m)
        return cls(ps.p, tuple((h, ps.d) for h in ps.members))

    @classmethod
    def subgroup(cls, p, m: int) -> "ValuedDomain":
        """H itself, every member with multiplicity one."""
        ps = power_structure(p, m)
        return cls(ps.p, tuple((h, 1) for h in ps.members))

    @classmethod
    def random_subset(cls, p, rng: random.Random, size: int | None = None) -> "ValuedDomain":
        """A uniformly random nonempty subset of F_p* (or one of given size)."""
        mod = make_modulus(p)
        if size is None:
            while True:
                vals = [x for x in range(1, mod.p) if rng.random() < 0.5]
                if vals:
                    break
        else:
            vals = rng.sample(range(1, mod.p), size)
        return cls.from_set(mod, vals)

    def describe(self) -> str:
        return ",".join(str(v) if mu == 1 else f"{v}x{mu}" for v, mu in self.items)
