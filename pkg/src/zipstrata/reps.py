"""Weight multisets of the representations feeding the zip-stack models.

A representation enters the computation only through its multiset of torus
weights. The constructors here cover the standard and (half-)spin modules of
the classical types plus the tensor operations needed to assemble the case
list: exterior powers, duals and direct sums. ``mu_profile`` slices a multiset
along a cocharacter, ``is_cy`` recognizes the profiles whose top slice is a
line, and ``hodge_character`` extracts the weight eta of the Hodge line from
a two-slice profile.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Sequence, Tuple

from .rootsys import Vector, dot, neg, smul, sum_vectors, vec

# Ceiling on the subset enumeration behind exterior powers.
WEDGE_CAP = 10_000_000


@dataclass(frozen=True)
class WeightMultiset:
    """Torus weights of a representation, with multiplicities, canonically
    sorted so that equal multisets compare equal."""

    entries: Tuple[Tuple[Vector, int], ...]

    @staticmethod
    def from_weights(weights: Iterable[Vector]) -> "WeightMultiset":
        counts: Dict[Vector, int] = {}
        for weight in weights:
            counts[weight] = counts.get(weight, 0) + 1
        return WeightMultiset(tuple(sorted(counts.items())))

    @property
    def dimension(self) -> int:
        return sum(mult for _, mult in self.entries)

    def expanded(self) -> Tuple[Vector, ...]:
        """Every weight repeated by its multiplicity."""
        return tuple(
            weight for weight, mult in self.entries for _ in range(mult)
        )

    def multiplicity(self, weight: Vector) -> int:
        return dict(self.entries).get(weight, 0)


def std_weights(cartan_type: str, rank: int) -> WeightMultiset:
    """Weights of the defining module: e_i for type A (dimension rank + 1),
    plus-minus e_i for C and D, and the same with an extra zero weight for
    the odd orthogonal type B."""
    if cartan_type == "A":
        dim = rank + 1
        return WeightMultiset.from_weights(_unit(dim, i) for i in range(dim))
    if cartan_type in ("C", "D"):
        units = [_unit(rank, i) for i in range(rank)]
        return WeightMultiset.from_weights(units + [neg(u) for u in units])
    if cartan_type == "B":
        units = [_unit(rank, i) for i in range(rank)]
        zero = vec(*([0] * rank))
        return WeightMultiset.from_weights(units + [neg(u) for u in units] + [zero])
    raise ValueError(f"no standard module for type {cartan_type}")


def spin_weights(cartan_type: str, rank: int) -> WeightMultiset:
    """Weights of the spin module (type B, dimension 2^m) or of one half-spin
    module (type D, dimension 2^(m-1), even number of minus signs)."""
    half = Fraction(1, 2)
    if cartan_type == "B":
        signs = itertools.product((half, -half), repeat=rank)
        return WeightMultiset.from_weights(tuple(s) for s in signs)
    if cartan_type == "D":
        weights = [
            tuple(s)
            for s in itertools.product((half, -half), repeat=rank)
            if sum(coord < 0 for coord in s) % 2 == 0
        ]
        return WeightMultiset.from_weights(weights)
    raise ValueError(f"no spin module for type {cartan_type}")


def wedge(module: WeightMultiset, k: int) -> WeightMultiset:
    """Exterior power: sums of the weights over k-element sub-multisets."""
    dim = module.dimension
    if not 0 <= k <= dim:
        raise ValueError(f"exterior power {k} of a {dim}-dimensional module")
    if math.comb(dim, k) > WEDGE_CAP:
        raise ValueError(
            f"exterior power would enumerate {math.comb(dim, k)} subsets"
        )
    flat = module.expanded()
    width = _width(module)
    return WeightMultiset.from_weights(
        sum_vectors(subset, width) for subset in itertools.combinations(flat, k)
    )


def dual(module: WeightMultiset) -> WeightMultiset:
    return WeightMultiset(
        tuple(sorted((neg(weight), mult) for weight, mult in module.entries))
    )


def dsum(left: WeightMultiset, right: WeightMultiset) -> WeightMultiset:
    return WeightMultiset.from_weights(left.expanded() + right.expanded())


def mu_profile(
    module: WeightMultiset, mu: Vector
) -> Tuple[Tuple[Fraction, int], ...]:
    """Pairings of the weights against the cocharacter mu, highest first,
    each with the dimension of its slice."""
    slices: Dict[Fraction, int] = {}
    for weight, mult in module.entries:
        value = dot(weight, mu)
        slices[value] = slices.get(value, 0) + mult
    return tuple(sorted(slices.items(), key=lambda kv: kv[0], reverse=True))


def is_cy(module: WeightMultiset, mu: Vector) -> bool:
    """Whether the highest mu-slice of the module is one dimensional."""
    profile = mu_profile(module, mu)
    return bool(profile) and profile[0][1] == 1


def hodge_character(module: WeightMultiset, mu: Vector) -> Vector:
    """Sum of the weights in the lower slice of a two-slice profile.

    Modules whose weights spread over three or more pairing values have no
    single Hodge line in this sense and are rejected.
    """
    profile = mu_profile(module, mu)
    if len(profile) != 2:
        raise ValueError(
            f"expected exactly two mu-slices, found {len(profile)}"
        )
    low = profile[-1][0]
    parts = [
        smul(mult, weight)
        for weight, mult in module.entries
        if dot(weight, mu) == low
    ]
    return sum_vectors(parts, _width(module))


def _unit(dim: int, index: int) -> Vector:
    return tuple(Fraction(1) if j == index else Fraction(0) for j in range(dim))


def _width(module: WeightMultiset) -> int:
    if not module.entries:
        raise ValueError("empty module has no ambient dimension")
    return len(module.entries[0][0])
