"""Classical root systems in their standard coordinate realizations.

Everything is exact: vectors are tuples of ``Fraction`` and no float ever
appears. Types A, B, C, D are supported; type A_{rank} lives in rank+1
coordinates (the GL weight lattice), the others in ``rank`` coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Tuple

Vector = Tuple[Fraction, ...]

CLASSICAL_TYPES = ("A", "B", "C", "D")


def vec(*entries: int | Fraction) -> Vector:
    """Build an exact vector from ints or Fractions."""
    return tuple(Fraction(e) for e in entries)


def unit(dim: int, i: int) -> Vector:
    """Standard basis vector e_i, 1-indexed."""
    if not 1 <= i <= dim:
        raise ValueError(f"unit index {i} out of range for dimension {dim}")
    return tuple(Fraction(1 if j == i else 0) for j in range(1, dim + 1))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def neg(v: Vector) -> Vector:
    return tuple(-a for a in v)


def smul(c: int | Fraction, v: Vector) -> Vector:
    c = Fraction(c)
    return tuple(c * a for a in v)


def dot(u: Vector, v: Vector) -> Fraction:
    return sum((a * b for a, b in zip(u, v, strict=True)), Fraction(0))


def is_zero(v: Vector) -> bool:
    return all(a == 0 for a in v)


def first_nonzero_sign(v: Vector) -> int:
    """Sign of the first nonzero coordinate, or 0 for the zero vector.

    In the coordinate realizations used here a root is positive exactly when
    this sign is +1, which is how Weyl-group lengths and descents are tested.
    """
    for a in v:
        if a != 0:
            return 1 if a > 0 else -1
    return 0


@dataclass(frozen=True)
class RootSystem:
    """A root system with its chosen simple roots.

    ``positive_roots`` is the full set of positive roots; ``roots`` adds the
    negatives. ``ambient_dim`` is the number of coordinates (rank+1 for A).
    """

    cartan_type: str
    rank: int
    ambient_dim: int
    simple_roots: Tuple[Vector, ...]
    positive_roots: Tuple[Vector, ...]

    @property
    def roots(self) -> Tuple[Vector, ...]:
        return self.positive_roots + tuple(neg(a) for a in self.positive_roots)

    def simple(self, i: int) -> Vector:
        """The i-th simple root, 1-indexed."""
        if not 1 <= i <= self.rank:
            raise ValueError(f"simple root index {i} out of range for rank {self.rank}")
        return self.simple_roots[i - 1]


def root_system(cartan_type: str, rank: int) -> RootSystem:
    """Construct a classical root system.

    A: rank >= 1, simple roots e_i - e_{i+1} in rank+1 coordinates.
    B: rank >= 1, short root e_m at the end.
    C: rank >= 1, long root 2 e_n at the end.
    D: rank >= 2, fork e_{m-1} + e_m at the end.
    """
    if cartan_type not in CLASSICAL_TYPES:
        raise ValueError(f"unknown Cartan type {cartan_type!r}")
    if rank < 1:
        raise ValueError("rank must be positive")
    if cartan_type == "D" and rank < 2:
        raise ValueError("type D needs rank >= 2")

    if cartan_type == "A":
        dim = rank + 1
        simple = [sub(unit(dim, i), unit(dim, i + 1)) for i in range(1, rank + 1)]
        positive = [
            sub(unit(dim, i), unit(dim, j))
            for i in range(1, dim + 1)
            for j in range(i + 1, dim + 1)
        ]
        return RootSystem("A", rank, dim, tuple(simple), tuple(positive))

    m = rank
    dim = m
    simple = [sub(unit(dim, i), unit(dim, i + 1)) for i in range(1, m)]
    if cartan_type == "B":
        simple.append(unit(dim, m))
    elif cartan_type == "C":
        simple.append(smul(2, unit(dim, m)))
    else:
        simple.append(add(unit(dim, m - 1), unit(dim, m)))

    positive: list[Vector] = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            positive.append(sub(unit(dim, i), unit(dim, j)))
            positive.append(add(unit(dim, i), unit(dim, j)))
    if cartan_type == "B":
        positive.extend(unit(dim, i) for i in range(1, m + 1))
    elif cartan_type == "C":
        positive.extend(smul(2, unit(dim, i)) for i in range(1, m + 1))
    return RootSystem(cartan_type, rank, dim, tuple(simple), tuple(positive))


def pairing(lam: Vector, alpha: Vector) -> Fraction:
    """<lam, alpha_vee> = 2 (lam, alpha) / (alpha, alpha)."""
    denom = dot(alpha, alpha)
    if denom == 0:
        raise ValueError("pairing against the zero vector")
    return 2 * dot(lam, alpha) / denom


def reflect(lam: Vector, alpha: Vector) -> Vector:
    """Reflection of lam in the hyperplane orthogonal to alpha."""
    return sub(lam, smul(pairing(lam, alpha), alpha))


def cartan_matrix(system: RootSystem) -> Tuple[Tuple[int, ...], ...]:
    """Matrix with entry[i][j] = <alpha_j, alpha_i_vee> (0-indexed rows)."""
    rows = []
    for a_i in system.simple_roots:
        row = []
        for a_j in system.simple_roots:
            val = pairing(a_j, a_i)
            if val.denominator != 1:
                raise ValueError("non-integral Cartan pairing")
            row.append(int(val))
        rows.append(tuple(row))
    return tuple(rows)


def is_dominant(system: RootSystem, lam: Vector) -> bool:
    """True when lam pairs non-negatively with every simple coroot."""
    return all(pairing(lam, a) >= 0 for a in system.simple_roots)


def parse_weight(system: RootSystem, coords: Sequence[int | Fraction]) -> Vector:
    """Validate a coordinate sequence as a weight of this system."""
    v = tuple(Fraction(c) for c in coords)
    if len(v) != system.ambient_dim:
        raise ValueError(
            f"weight has {len(v)} coordinates, expected {system.ambient_dim}"
        )
    return v


def sum_vectors(vs: Iterable[Vector], dim: int) -> Vector:
    total = tuple(Fraction(0) for _ in range(dim))
    for v in vs:
        total = add(total, v)
    return total
