"""Vanishing orders of highest-weight sections on translated Bruhat cells.

Three closed-form order formulas are implemented, one per word shape: pairwise
distinct letters, the three-letter pattern s_a s_b s_a, and the two mirrored
shapes betas / etas + reversed(alphas) + center + alphas that cover the
orthogonal stratum families. Each formula is guarded by the closedness
condition on the root sets swept out by the word's suffixes, by a reduced-word
check, and by dominance of the weight. ``strata_ord_table`` drives the
formulas over a full set of stratum representatives, and ``d_w0`` is the
twisted character difference that ties the Hasse weight to its section.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .rootsys import (
    RootSystem,
    Vector,
    add,
    is_dominant,
    pairing,
    reflect,
    smul,
    sub,
)
from .weyl import CocharacterDatum, Perm, WeylGroup, compose

Word = Tuple[int, ...]

# With two roots a, b and a + b not a root, no m*a + n*b (m, n >= 1) is a
# root either, so only these coefficient pairs can ever produce one in the
# classical types (triple multiples need G_2).
_EXTRA_COEFFS = ((2, 1), (1, 2))


@dataclass(frozen=True)
class ClosednessWitness:
    """A violation of closedness: alpha, beta in the stage-th suffix set but
    combination = a*alpha + b*beta is a root outside it."""

    stage: int
    alpha: Vector
    beta: Vector
    combination: Vector


def _vkey(v: Vector) -> Tuple[Tuple[int, int], ...]:
    """Hash-friendly exact key: hashing integer pairs is far cheaper than
    hashing Fractions, which costs a modular inverse per entry."""
    return tuple((c.numerator, c.denominator) for c in v)


_ROOT_KEYS: Dict[Tuple[str, int], frozenset] = {}


def _root_keys(system: RootSystem) -> frozenset:
    tag = (system.cartan_type, system.rank)
    hit = _ROOT_KEYS.get(tag)
    if hit is None:
        hit = frozenset(_vkey(a) for a in system.roots)
        _ROOT_KEYS[tag] = hit
    return hit


def _closure_violation(
    system: RootSystem, subset: Iterable[Vector]
) -> Optional[Tuple[Vector, Vector, Vector]]:
    """First pair in the subset whose natural combination escapes it."""
    members = tuple(dict.fromkeys(subset))
    chosen = {_vkey(v) for v in members}
    all_roots = _root_keys(system)
    for alpha, beta in itertools.combinations(members, 2):
        total = add(alpha, beta)
        total_key = _vkey(total)
        if total_key not in all_roots:
            continue
        if total_key not in chosen:
            return alpha, beta, total
        for a, b in _EXTRA_COEFFS:
            combo = add(smul(a, alpha), smul(b, beta))
            combo_key = _vkey(combo)
            if combo_key in all_roots and combo_key not in chosen:
                return alpha, beta, combo
    return None


def is_closed(system: RootSystem, subset: Iterable[Vector]) -> bool:
    """Whether every root of the form a*alpha + b*beta (a, b natural, alpha
    and beta in the subset) again lies in the subset."""
    return _closure_violation(system, subset) is None


def root_sequence(system: RootSystem, word: Sequence[int]) -> Tuple[Vector, ...]:
    """Roots swept out by the word: alpha_{i_1}, s_{i_1} alpha_{i_2}, and so
    on, each letter's simple root pushed through the reflections before it.

    For a reduced word these are exactly the inversions of the product, all
    positive and pairwise distinct; a non-reduced word revisits a root line
    and the sequence picks up repeats or negatives.
    """
    swept = []
    for pos, letter in enumerate(word):
        image = system.simple(letter)
        for j in range(pos - 1, -1, -1):
            image = reflect(image, system.simple(word[j]))
        swept.append(image)
    return tuple(swept)


_CONDITION_CACHE: Dict[
    Tuple[str, int, Word], Tuple[bool, Optional[ClosednessWitness]]
] = {}


def condition_closed(
    system: RootSystem, word: Sequence[int]
) -> Tuple[bool, Optional[ClosednessWitness]]:
    """Check the root sets swept by every suffix of the word for closedness.

    Reduced words always pass (each suffix sweeps an inversion set). The
    returned witness names the suffix start together with the two roots and
    the escaping combination. Results are cached per word: the same cell
    words come back for every weight a case is run against.
    """
    word = tuple(word)
    tag = (system.cartan_type, system.rank, word)
    hit = _CONDITION_CACHE.get(tag)
    if hit is not None:
        return hit
    result: Tuple[bool, Optional[ClosednessWitness]] = (True, None)
    for start in range(len(word)):
        swept = root_sequence(system, word[start:])
        violation = _closure_violation(system, swept)
        if violation is not None:
            alpha, beta, combo = violation
            result = (False, ClosednessWitness(start, alpha, beta, combo))
            break
    if len(_CONDITION_CACHE) > 50_000:
        _CONDITION_CACHE.clear()
    _CONDITION_CACHE[tag] = result
    return result


def find_nonclosed_word(
    system: RootSystem, max_length: int = 6
) -> Optional[Word]:
    """Shortest word failing the closedness condition, scanning exhaustively.

    Serves as the negative control for ``condition_closed``: reduced words
    cannot fail, so the scan has to wander through non-reduced territory.
    """
    letters = range(1, system.rank + 1)
    for length in range(1, max_length + 1):
        for word in itertools.product(letters, repeat=length):
            ok, _ = condition_closed(system, word)
            if not ok:
                return word
    return None


# -- validation helpers ------------------------------------------------------


def _int_pairing(lam: Vector, alpha: Vector) -> int:
    value = pairing(lam, alpha)
    if value.denominator != 1:
        raise ValueError(f"pairing {value} of {lam} against {alpha} is not integral")
    return int(value)


def _require_dominant(system: RootSystem, lam: Vector) -> None:
    if not is_dominant(system, lam):
        raise ValueError(f"weight {lam} is not dominant")


def _require_reduced(system: RootSystem, word: Word) -> None:
    if not WeylGroup(system).is_reduced(word):
        raise ValueError(f"word {word} is not reduced")


def _require_condition(system: RootSystem, word: Word) -> None:
    ok, witness = condition_closed(system, word)
    if not ok:
        raise ValueError(
            f"word {word} fails the closedness condition at suffix "
            f"{witness.stage}: {witness.combination} escapes"
        )


def _require_distinct(groups: Sequence[Sequence[int]]) -> None:
    letters = [letter for group in groups for letter in group]
    if len(set(letters)) != len(letters):
        raise ValueError(f"letters {letters} are not pairwise distinct")


# -- the three order formulas ------------------------------------------------


def ord_distinct(system: RootSystem, lam: Vector, word: Sequence[int]) -> int:
    """Order of f_lam on the cell of a product of distinct simple reflections:
    the sum of the pairings of lam with the letters' coroots."""
    word = tuple(word)
    _require_distinct([word])
    _require_dominant(system, lam)
    _require_reduced(system, word)
    _require_condition(system, word)
    return sum(_int_pairing(lam, system.simple(i)) for i in word)


def ord_aba(system: RootSystem, lam: Vector, alpha: int, beta: int) -> int:
    """Order of f_lam on the cell of s_alpha s_beta s_alpha.

    The outer letter contributes twice unless the Cartan pairing is -1, in
    which case the two visits share a coordinate and one visit is absorbed.
    """
    if alpha == beta:
        raise ValueError("the pattern needs two different letters")
    _require_dominant(system, lam)
    word = (alpha, beta, alpha)
    _require_reduced(system, word)
    _require_condition(system, word)
    a_root = system.simple(alpha)
    b_root = system.simple(beta)
    cartan = _int_pairing(a_root, b_root)
    return _int_pairing(lam, b_root) + _int_pairing(lam, a_root) * min(2, -cartan)


def e_orders(
    system: RootSystem,
    betas: Sequence[int],
    alphas: Sequence[int],
    gamma: int,
) -> Tuple[int, ...]:
    """Orders of the coordinate functions E_1..E_n of the mirrored shape with
    a single center letter gamma."""
    betas, alphas = tuple(betas), tuple(alphas)
    _require_distinct([betas, alphas, (gamma,)])
    gamma_root = system.simple(gamma)
    orders: list[int] = []
    for i, letter in enumerate(alphas):
        root = system.simple(letter)
        drop = -_int_pairing(root, gamma_root)
        for j in range(i):
            drop -= _int_pairing(root, system.simple(alphas[j])) * orders[j]
        orders.append(min(2, drop))
    return tuple(orders)


def f_orders(
    system: RootSystem,
    etas: Sequence[int],
    alphas: Sequence[int],
    beta: int,
    gamma: int,
) -> Tuple[int, ...]:
    """Orders of the coordinate functions F_1..F_n of the mirrored shape with
    the two-letter center (beta, gamma)."""
    etas, alphas = tuple(etas), tuple(alphas)
    _require_distinct([etas, alphas, (beta,), (gamma,)])
    beta_root = system.simple(beta)
    gamma_root = system.simple(gamma)
    orders: list[int] = []
    for i, letter in enumerate(alphas):
        root = system.simple(letter)
        drop = -_int_pairing(root, beta_root) - _int_pairing(root, gamma_root)
        for j in range(i):
            drop -= _int_pairing(root, system.simple(alphas[j])) * orders[j]
        orders.append(min(2, drop))
    return tuple(orders)


def ord_typeB(
    system: RootSystem,
    lam: Vector,
    betas: Sequence[int],
    alphas: Sequence[int],
    gamma: int,
) -> int:
    """Order of f_lam on the cell of
    s_{beta_1}..s_{beta_l} s_{alpha_n}..s_{alpha_1} s_gamma s_{alpha_1}..s_{alpha_n}.
    """
    betas, alphas = tuple(betas), tuple(alphas)
    word = betas + tuple(reversed(alphas)) + (gamma,) + alphas
    _require_distinct([betas, alphas, (gamma,)])
    _require_dominant(system, lam)
    _require_reduced(system, word)
    _require_condition(system, word)
    orders = e_orders(system, betas, alphas, gamma)
    total = sum(_int_pairing(lam, system.simple(b)) for b in betas)
    total += _int_pairing(lam, system.simple(gamma))
    total += sum(
        _int_pairing(lam, system.simple(a)) * o for a, o in zip(alphas, orders)
    )
    return total


def ord_typeD(
    system: RootSystem,
    lam: Vector,
    etas: Sequence[int],
    alphas: Sequence[int],
    beta: int,
    gamma: int,
) -> int:
    """Order of f_lam on the cell of
    s_{eta_1}..s_{eta_l} s_{alpha_n}..s_{alpha_1} s_beta s_gamma s_{alpha_1}..s_{alpha_n}.
    """
    etas, alphas = tuple(etas), tuple(alphas)
    word = etas + tuple(reversed(alphas)) + (beta, gamma) + alphas
    _require_distinct([etas, alphas, (beta,), (gamma,)])
    _require_dominant(system, lam)
    _require_reduced(system, word)
    _require_condition(system, word)
    orders = f_orders(system, etas, alphas, beta, gamma)
    total = sum(_int_pairing(lam, system.simple(e)) for e in etas)
    total += _int_pairing(lam, system.simple(beta))
    total += _int_pairing(lam, system.simple(gamma))
    total += sum(
        _int_pairing(lam, system.simple(a)) * o for a, o in zip(alphas, orders)
    )
    return total


# -- stratum family words ----------------------------------------------------


def family_word_typeB(m: int, j: int, l: int) -> Word:
    """The word s_j .. s_{m-1} s_m s_{m-1} .. s_{m-l} (empty tail for l = 0).

    Valid whenever 1 <= j and j + l <= m; outside that range the swept roots
    would collide.
    """
    if not 1 <= j <= m or l < 0 or j + l > m:
        raise ValueError(f"no such family word: m={m}, j={j}, l={l}")
    return tuple(range(j, m + 1)) + tuple(range(m - 1, m - l - 1, -1))


def family_word_typeD(m: int, j: int, l: int) -> Word:
    """The word s_j .. s_{m-1} s_m s_{m-2} .. s_{m-l}, the forked analogue of
    the single-tail family (the tail skips m-1 and is empty for l <= 1)."""
    if m < 3 or not 1 <= j <= m or l < 0 or j + l > m:
        raise ValueError(f"no such family word: m={m}, j={j}, l={l}")
    return tuple(range(j, m + 1)) + tuple(range(m - 2, m - l - 1, -1))


# -- word-shape dispatch -----------------------------------------------------


def _parse_mirrored_single(word: Word) -> Optional[Tuple[Word, Word, int]]:
    """Split as betas + reversed(alphas) + (gamma,) + alphas, longest alphas
    first; None when no split has pairwise distinct letters."""
    length = len(word)
    for k in range((length - 1) // 2, 0, -1):
        alphas = word[length - k :]
        gamma = word[length - k - 1]
        mirror = word[length - 2 * k - 1 : length - k - 1]
        if mirror != tuple(reversed(alphas)):
            continue
        betas = word[: length - 2 * k - 1]
        letters = betas + alphas + (gamma,)
        if len(set(letters)) == len(letters):
            return betas, alphas, gamma
    return None


def _parse_mirrored_double(word: Word) -> Optional[Tuple[Word, Word, int, int]]:
    """Split as etas + reversed(alphas) + (beta, gamma) + alphas."""
    length = len(word)
    for k in range((length - 2) // 2, 0, -1):
        alphas = word[length - k :]
        gamma = word[length - k - 1]
        beta = word[length - k - 2]
        mirror = word[length - 2 * k - 2 : length - k - 2]
        if mirror != tuple(reversed(alphas)):
            continue
        etas = word[: length - 2 * k - 2]
        letters = etas + alphas + (beta, gamma)
        if len(set(letters)) == len(letters):
            return etas, alphas, beta, gamma
    return None


def ord_for_word(system: RootSystem, lam: Vector, word: Sequence[int]) -> int:
    """Order of f_lam on the cell of the given reduced word, dispatching on
    the word's shape; words outside the three supported shapes are an error.
    """
    word = tuple(word)
    if len(set(word)) == len(word):
        return ord_distinct(system, lam, word)
    single = _parse_mirrored_single(word)
    if single is not None:
        betas, alphas, gamma = single
        return ord_typeB(system, lam, betas, alphas, gamma)
    double = _parse_mirrored_double(word)
    if double is not None:
        etas, alphas, beta, gamma = double
        return ord_typeD(system, lam, etas, alphas, beta, gamma)
    raise ValueError(f"word {word} matches no supported shape")


# -- stratum tables and the twisted character --------------------------------


def d_w0(lam: Vector, p: int, datum: CocharacterDatum) -> Vector:
    """The difference lam - p * (z w0)(lam) attached to the cocharacter datum.

    Applied to the Hasse weight it recovers (p - 1) times the Hodge character,
    which is the standard consistency check on a case's lambda.
    """
    group = datum.group
    twisted = group.act(compose(datum.z, group.longest_element()), lam)
    return sub(lam, smul(p, twisted))


def strata_ord_table(datum: CocharacterDatum, lam: Vector) -> Dict[Perm, int]:
    """Vanishing order of f_lam on every stratum of the datum, keyed by the
    minimal coset representative labeling the stratum.

    Each label is first turned into the cell actually carrying the section:
    the label w is paired with w_{0,I} w w_0, the unique twist under which
    the open stratum gets the empty word and orders grow toward the identity
    label. The twist happens here and nowhere else.
    """
    group = datum.group
    system = group.system
    w0 = group.longest_element()
    w0_I = group.longest_in(datum.I)
    table: Dict[Perm, int] = {}
    for label in group.min_coset_reps(datum.I):
        cell = compose(w0_I, compose(label, w0))
        word = group.reduced_word(cell)
        try:
            table[label] = ord_for_word(system, lam, word)
        except ValueError as err:
            raise ValueError(
                f"stratum {label} has cell word {word}: {err}"
            ) from err
    return table
