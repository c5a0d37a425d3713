"""Standard zips in the permutation model and the conjugate line position.

A zip here is a vector space with two filtrations: the descending one cut out
by the cocharacter slices of a weight multiset, and the ascending conjugate
one obtained by pushing coordinate lines through a Weyl element. Both are
encoded combinatorially: the slots are the weights sorted by slice, and the
element acts as a permutation of slots. ``clp`` locates the top Hodge line
inside the conjugate filtration; on the open stratum it lands in the bottom
step and the Hasse section is invertible, which is what ``hasse_nonzero``
reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Tuple

from .reps import WeightMultiset, mu_profile
from .rootsys import Vector, dot
from .weyl import CocharacterDatum, Perm, compose


@dataclass(frozen=True)
class ZipType:
    """Slice values of a weight multiset along the cocharacter, highest
    first, with the dimension of each slice."""

    supports: Tuple[Fraction, ...]
    dims: Tuple[int, ...]

    @property
    def steps(self) -> int:
        return len(self.dims)

    @property
    def total(self) -> int:
        return sum(self.dims)

    @property
    def cumulative(self) -> Tuple[int, ...]:
        sums = []
        running = 0
        for dim in self.dims:
            running += dim
            sums.append(running)
        return tuple(sums)

    @property
    def is_cy(self) -> bool:
        """Whether the top slice is a line."""
        return bool(self.dims) and self.dims[0] == 1


def zip_type(module: WeightMultiset, mu: Vector) -> ZipType:
    profile = mu_profile(module, mu)
    return ZipType(
        supports=tuple(value for value, _ in profile),
        dims=tuple(dim for _, dim in profile),
    )


@dataclass(frozen=True)
class StandardZip:
    """A zip of the given type together with the slot permutation induced by
    a Weyl element."""

    ztype: ZipType
    slots: Tuple[Vector, ...]
    sigma: Perm

    @property
    def w0ij(self) -> Perm:
        """The frame permutation of this zip's type."""
        return w0ij_perm(self.ztype)


def w0ij_perm(ztype: ZipType) -> Perm:
    """Frame permutation of a zip type: slot i of slice j moves to slot
    i - m_{j-1} + (N - m_j), reversing the slice order while keeping each
    slice's internal order.

    On the open stratum the conjugate filtration is opposed to the Hodge one,
    and this is the permutation realizing that relative position.
    """
    cumulative = (0,) + ztype.cumulative
    total = ztype.total
    images = []
    for i in range(1, total + 1):
        j = next(b for b in range(1, ztype.steps + 1) if i <= cumulative[b])
        images.append(i - cumulative[j - 1] + total - cumulative[j])
    return tuple(images)


def _slot_order(module: WeightMultiset, mu: Vector) -> Tuple[Vector, ...]:
    return tuple(
        sorted(module.expanded(), key=lambda w: (dot(w, mu), w), reverse=True)
    )


def _vector_key(v: Vector) -> Tuple[Tuple[int, int], ...]:
    return tuple((c.numerator, c.denominator) for c in v)


# Memo for the per-module slot bookkeeping, keyed by identity because
# hashing a large weight multiset on every lookup would cost more than the
# sort it saves. Entries retain the module, so an id is never recycled
# while its entry is alive; the `is` check makes the hit unambiguous.
_SLOT_TABLES: Dict[Tuple[int, Vector], Tuple[WeightMultiset, tuple, dict, ZipType]] = {}


def _slot_table(
    module: WeightMultiset, mu: Vector
) -> Tuple[Tuple[Vector, ...], Dict[Tuple[Tuple[int, int], ...], int], ZipType]:
    key = (id(module), mu)
    hit = _SLOT_TABLES.get(key)
    if hit is not None and hit[0] is module:
        return hit[1], hit[2], hit[3]
    slots = _slot_order(module, mu)
    index_of = {_vector_key(weight): k + 1 for k, weight in enumerate(slots)}
    ztype = zip_type(module, mu)
    if len(_SLOT_TABLES) > 64:
        _SLOT_TABLES.clear()
    _SLOT_TABLES[key] = (module, slots, index_of, ztype)
    return slots, index_of, ztype


def build_standard(
    datum: CocharacterDatum, module: WeightMultiset, w: Perm
) -> StandardZip:
    """Standard zip of the module at the cocharacter of the datum, with the
    conjugate lines permuted by w.

    The weights must be multiplicity free, otherwise slots and weights do not
    determine each other and the permutation model breaks down.
    """
    if any(mult != 1 for _, mult in module.entries):
        raise ValueError("the permutation model needs multiplicity-free weights")
    slots, index_of, ztype = _slot_table(module, datum.mu)
    group = datum.group
    images = []
    for weight in slots:
        image = group.act(w, weight)
        slot = index_of.get(_vector_key(image))
        if slot is None:
            raise ValueError(f"weights are not stable: {image} is not a slot")
        images.append(slot)
    return StandardZip(ztype=ztype, slots=slots, sigma=tuple(images))


def ordinary_slot_perm(datum: CocharacterDatum, module: WeightMultiset) -> Perm:
    """Slot permutation of the element w0 w_{0,I}, the frame of the ordinary
    zip: it reverses the order of the slices while fixing each slice's
    internal order."""
    group = datum.group
    frame = compose(group.longest_element(), group.longest_in(datum.I))
    return build_standard(datum, module, frame).sigma


def clp(z: StandardZip) -> int:
    """Conjugate line position: the deepest conjugate step containing the
    Hodge line, between 0 (ordinary) and steps - 1."""
    if not z.ztype.is_cy:
        raise ValueError("the Hodge slice is not a line")
    source = z.sigma.index(1) + 1
    cumulative = z.ztype.cumulative
    steps = z.ztype.steps
    position = 0
    for j in range(1, steps):
        if source <= cumulative[steps - 1 - j]:
            position = j
    return position


def clp_exterior_top(z: StandardZip) -> int:
    """Line position for the top exterior power of a two-step zip: the number
    of top-slice slots kept inside the top slice."""
    if z.ztype.steps != 2:
        raise ValueError("the exterior-top position needs a two-step zip")
    top = z.ztype.dims[0]
    return sum(1 for k in range(top) if z.sigma[k] <= top)


def hasse_nonzero(z: StandardZip) -> bool:
    """Whether the Hasse section is invertible on the zip: the Hodge line
    already lies in the bottom conjugate step."""
    return clp(z) == 0
