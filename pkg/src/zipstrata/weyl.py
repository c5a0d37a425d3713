"""Weyl groups of classical type as explicit slot permutations.

An element is a tuple ``perm`` with ``perm[i-1]`` the image of slot i
(one-line notation, 1-indexed). The slot count N and the slot/weight
dictionary depend on the type:

  A_{r}   N = r+1      slot i <-> e_i
  B_m     N = 2m+1     slot i <-> e_i (i <= m), slot m+1 <-> 0,
                       slot N+1-i <-> -e_i
  C_n     N = 2n       slot i <-> e_i (i <= n), slot N+1-i <-> -e_i
  D_m     N = 2m       as for C

Outside type A every group element sigma satisfies
sigma(i) + sigma(N+1-i) = N+1. Lengths, descents and reduced words are
computed root-theoretically from the action on coordinate vectors, so the
same code serves all four types.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .rootsys import (
    RootSystem,
    Vector,
    add,
    dot,
    first_nonzero_sign,
    neg,
    parse_weight,
    smul,
    sub,
    unit,
)

Perm = Tuple[int, ...]

ENUMERATION_CAP = 200_000


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(a: Perm, b: Perm) -> Perm:
    """a after b: (a*b)(i) = a(b(i))."""
    return tuple(a[x - 1] for x in b)


def compose_all(perms: Sequence[Perm], n: int) -> Perm:
    return reduce(compose, perms, identity_perm(n))


def inverse(a: Perm) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a, start=1):
        out[x - 1] = i
    return tuple(out)


def transpositions(n: int, *pairs: Tuple[int, int]) -> Perm:
    out = list(range(1, n + 1))
    for i, j in pairs:
        out[i - 1], out[j - 1] = out[j - 1], out[i - 1]
    return tuple(out)


@dataclass(frozen=True)
class WeylGroup:
    """Weyl group of a classical root system, acting by slot permutations."""

    system: RootSystem

    @property
    def rank(self) -> int:
        return self.system.rank

    @property
    def slots(self) -> int:
        t, m = self.system.cartan_type, self.system.rank
        if t == "A":
            return m + 1
        if t == "B":
            return 2 * m + 1
        return 2 * m

    def identity(self) -> Perm:
        return identity_perm(self.slots)

    # -- slot/weight dictionary -------------------------------------------

    def weight_of_slot(self, k: int) -> Vector:
        n, dim, t = self.slots, self.system.ambient_dim, self.system.cartan_type
        if not 1 <= k <= n:
            raise ValueError(f"slot {k} out of range")
        if t == "A":
            return unit(dim, k)
        if k <= dim:
            return unit(dim, k)
        if t == "B" and k == dim + 1:
            return tuple(Fraction(0) for _ in range(dim))
        return neg(unit(dim, n + 1 - k))

    def act(self, w: Perm, v: Vector) -> Vector:
        """Image of a coordinate vector under the reflection action.

        Each source coordinate lands in one slot, so the image is assembled
        entry by entry; the cutoff n + 1 - dim skips the zero-weight middle
        slot of the odd orthogonal groups.
        """
        dim = self.system.ambient_dim
        n = self.slots
        out = [Fraction(0)] * dim
        for i, c in enumerate(v):
            if c:
                k = w[i]
                if k <= dim:
                    out[k - 1] += c
                elif k >= n + 1 - dim:
                    out[n - k] -= c
        return tuple(out)

    # -- generators and words ---------------------------------------------

    def simple_reflection(self, i: int) -> Perm:
        t, m, n = self.system.cartan_type, self.system.rank, self.slots
        if not 1 <= i <= m:
            raise ValueError(f"simple reflection index {i} out of range")
        if t == "A":
            return transpositions(n, (i, i + 1))
        if i < m:
            return transpositions(n, (i, i + 1), (n + 1 - i, n - i))
        if t == "B":
            return transpositions(n, (m, m + 2))
        if t == "C":
            return transpositions(n, (m, m + 1))
        return transpositions(n, (m - 1, m + 1), (m, m + 2))

    def from_word(self, word: Sequence[int]) -> Perm:
        return compose_all([self.simple_reflection(i) for i in word], self.slots)

    def length(self, w: Perm) -> int:
        return sum(
            1
            for a in self.system.positive_roots
            if first_nonzero_sign(self.act(w, a)) < 0
        )

    def right_descents(self, w: Perm) -> Tuple[int, ...]:
        return tuple(
            i
            for i in range(1, self.rank + 1)
            if first_nonzero_sign(self.act(w, self.system.simple(i))) < 0
        )

    def left_descents(self, w: Perm) -> Tuple[int, ...]:
        return self.right_descents(inverse(w))

    def reduced_word(self, w: Perm) -> Tuple[int, ...]:
        """Reduced word chosen by stripping the smallest left descent."""
        word: List[int] = []
        cur = w
        ident = self.identity()
        while cur != ident:
            i = self.left_descents(cur)[0]
            word.append(i)
            cur = compose(self.simple_reflection(i), cur)
        return tuple(word)

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.length(self.from_word(word)) == len(word)

    # -- distinguished elements -------------------------------------------

    def longest_element(self) -> Perm:
        t, m, n = self.system.cartan_type, self.system.rank, self.slots
        rev = tuple(range(n, 0, -1))
        if t == "D" and m % 2 == 1:
            out = list(rev)
            out[m - 1], out[m] = m, m + 1
            return tuple(out)
        return rev

    def longest_in(self, I: Sequence[int]) -> Perm:
        """Longest element of the parabolic subgroup generated by I."""
        u = self.identity()
        while True:
            for i in I:
                if first_nonzero_sign(self.act(u, self.system.simple(i))) > 0:
                    u = compose(u, self.simple_reflection(i))
                    break
            else:
                return u

    def group_order(self) -> int:
        t, m = self.system.cartan_type, self.system.rank
        if t == "A":
            return factorial(m + 1)
        if t in ("B", "C"):
            return 2**m * factorial(m)
        return 2 ** (m - 1) * factorial(m)

    # -- coset combinatorics ----------------------------------------------

    def in_min_coset_reps(self, w: Perm, I: Sequence[int]) -> bool:
        """True when w is the minimal-length element of W_I * w."""
        winv = inverse(w)
        return all(
            first_nonzero_sign(self.act(winv, self.system.simple(i))) > 0 for i in I
        )

    def min_coset_reps(self, I: Sequence[int]) -> Tuple[Perm, ...]:
        """All minimal-length representatives of W_I \\ W, by BFS.

        Every right descent step out of a minimal representative lands on a
        minimal representative, so the upward search from the identity is
        complete and never leaves the set.
        """
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt: List[Perm] = []
            for u in frontier:
                for j in range(1, self.rank + 1):
                    if first_nonzero_sign(self.act(u, self.system.simple(j))) > 0:
                        v = compose(u, self.simple_reflection(j))
                        if v not in seen and self.in_min_coset_reps(v, I):
                            seen.add(v)
                            nxt.append(v)
            frontier = nxt
        return tuple(sorted(seen, key=lambda u: (self.length(u), self.reduced_word(u))))

    def min_double_coset_reps(
        self, I: Sequence[int], J: Sequence[int]
    ) -> Tuple[Perm, ...]:
        """Minimal-length representatives of W_I \\ W / W_J."""
        return tuple(
            u for u in self.min_coset_reps(I) if not any(j in self.right_descents(u) for j in J)
        )

    def min_in_double_coset(self, w: Perm, I: Sequence[int], J: Sequence[int]) -> Perm:
        """Minimum of W_I * w * W_J by alternating descent stripping.

        An element with no left descent in I and no right descent in J is the
        unique minimal-length element of its double coset, so the greedy loop
        cannot stall on a non-minimal element.
        """
        cur = w
        while True:
            left = [i for i in I if i in self.left_descents(cur)]
            if left:
                cur = compose(self.simple_reflection(left[0]), cur)
                continue
            right = [j for j in J if j in self.right_descents(cur)]
            if right:
                cur = compose(cur, self.simple_reflection(right[0]))
                continue
            return cur

    def bruhat_leq(self, u: Perm, w: Perm) -> bool:
        """Bruhat order, by the left-descent recursion."""
        if u == self.identity():
            return True
        if self.length(u) > self.length(w):
            return False
        i = self.left_descents(w)[0]
        sw = compose(self.simple_reflection(i), w)
        if i in self.left_descents(u):
            return self.bruhat_leq(compose(self.simple_reflection(i), u), sw)
        return self.bruhat_leq(u, sw)

    # -- enumeration (guarded, small ranks only) --------------------------

    def elements(self, cap: int = ENUMERATION_CAP) -> Tuple[Perm, ...]:
        if self.group_order() > cap:
            raise ValueError(
                f"refusing to enumerate {self.group_order()} elements (cap {cap})"
            )
        return self._closure(range(1, self.rank + 1))

    def subgroup_elements(
        self, I: Sequence[int], cap: int = ENUMERATION_CAP
    ) -> Tuple[Perm, ...]:
        """All elements of the parabolic subgroup W_I."""
        return self._closure(I, cap=cap)

    def _closure(self, gens: Iterable[int], cap: int = ENUMERATION_CAP) -> Tuple[Perm, ...]:
        gen_perms = [self.simple_reflection(i) for i in gens]
        seen = {self.identity()}
        frontier = [self.identity()]
        while frontier:
            nxt: List[Perm] = []
            for u in frontier:
                for s in gen_perms:
                    v = compose(u, s)
                    if v not in seen:
                        if len(seen) >= cap:
                            raise ValueError(f"subgroup enumeration exceeded cap {cap}")
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        return tuple(seen)


@dataclass(frozen=True)
class CocharacterDatum:
    """A group with cocharacter: parabolic types I, J and the twist z.

    I is the set of simple indices orthogonal to mu, J its image under the
    -w0 diagram involution, and z = w0 * w_{0,J}, the longest element of the
    minimal coset representatives W^J.
    """

    group: WeylGroup
    mu: Vector
    I: Tuple[int, ...]
    J: Tuple[int, ...]
    z: Perm


def cocharacter_datum(group: WeylGroup, mu: Sequence[int | Fraction]) -> CocharacterDatum:
    system = group.system
    mu_v = parse_weight(system, mu)
    I = tuple(i for i in range(1, system.rank + 1) if dot(system.simple(i), mu_v) == 0)
    w0 = group.longest_element()
    J: List[int] = []
    for i in I:
        target = neg(group.act(w0, system.simple(i)))
        for j in range(1, system.rank + 1):
            if system.simple(j) == target:
                J.append(j)
                break
        else:
            raise ValueError(f"-w0(alpha_{i}) is not a simple root")
    z = compose(w0, group.longest_in(J))
    return CocharacterDatum(group, mu_v, I, tuple(sorted(J)), z)


def element_z(datum: CocharacterDatum) -> Perm:
    """The twist z = w0 * w_{0,J}, recomputed from the datum's group and J.

    This is the longest element among the minimal coset representatives W^J,
    so it is also the label of the open stratum.
    """
    g = datum.group
    return compose(g.longest_element(), g.longest_in(datum.J))


def eo_same_stratum(
    w: Perm,
    w_prime: Perm,
    datum: CocharacterDatum,
    frobenius: Optional[object] = None,
    cap: int = ENUMERATION_CAP,
) -> bool:
    """Whether w and w_prime are related by y . w' . z . y^-1 . z over y in W_I.

    This is the zip-stack equivalence in a frame where z is an involution
    (all the orthogonal, symplectic and spin data here). The Frobenius twist
    on the Weyl group is trivial for these split groups; anything else is
    rejected rather than silently mishandled.
    """
    if frobenius is not None:
        raise NotImplementedError(
            "nontrivial Frobenius action on characters (non-split group) is not supported"
        )
    g = datum.group
    z = datum.z
    for y in g.subgroup_elements(datum.I, cap=cap):
        candidate = compose_all([y, w_prime, z, inverse(y), z], g.slots)
        if candidate == w:
            return True
    return False
