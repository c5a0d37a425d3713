"""Brute-force polynomial oracles for vanishing orders on matrix groups.

Everything here works with honest coordinates: group elements are matrices
of sparse integer polynomials, highest-weight sections are minors or
Pluecker coordinates, and the order of vanishing is read off the exponents
of monomials. No structure theory enters, which is the point: the results
cross-check the closed formulas computed elsewhere in the package.

Matrices are tuples of tuples. Polynomials are sparse maps from exponent
tuples to integer coefficients over a fixed variable list, so all
arithmetic is exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Sequence, Set, Tuple

Monomial = Tuple[int, ...]


@dataclass(frozen=True)
class SparsePoly:
    """Multivariate polynomial with integer coefficients, stored sparsely."""

    nvars: int
    coeffs: Tuple[Tuple[Monomial, int], ...]

    @staticmethod
    def build(nvars: int, terms: Dict[Monomial, int]) -> "SparsePoly":
        cleaned = {m: c for m, c in terms.items() if c != 0}
        return SparsePoly(nvars, tuple(sorted(cleaned.items())))

    @staticmethod
    def zero(nvars: int) -> "SparsePoly":
        return SparsePoly.build(nvars, {})

    @staticmethod
    def const(nvars: int, c: int) -> "SparsePoly":
        return SparsePoly.build(nvars, {(0,) * nvars: c})

    @staticmethod
    def variable(nvars: int, index: int) -> "SparsePoly":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range")
        expo = tuple(1 if k == index else 0 for k in range(nvars))
        return SparsePoly.build(nvars, {expo: 1})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other: "SparsePoly") -> "SparsePoly":
        terms = dict(self.coeffs)
        for m, c in other.coeffs:
            terms[m] = terms.get(m, 0) + c
        return SparsePoly.build(self.nvars, terms)

    def __neg__(self) -> "SparsePoly":
        return SparsePoly(self.nvars, tuple((m, -c) for m, c in self.coeffs))

    def __sub__(self, other: "SparsePoly") -> "SparsePoly":
        return self + (-other)

    def __mul__(self, other: "SparsePoly") -> "SparsePoly":
        terms: Dict[Monomial, int] = {}
        for m1, c1 in self.coeffs:
            for m2, c2 in other.coeffs:
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return SparsePoly.build(self.nvars, terms)

    def scale(self, c: int) -> "SparsePoly":
        return SparsePoly.build(self.nvars, {m: c * v for m, v in self.coeffs})

    def eval_int(self, point: Sequence[int]) -> int:
        total = 0
        for m, c in self.coeffs:
            term = c
            for e, x in zip(m, point):
                term *= x**e
            total += term
        return total


Matrix = Tuple[Tuple[SparsePoly, ...], ...]


def poly_matrix(rows: Sequence[Sequence[SparsePoly]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def const_matrix(nvars: int, entries: Sequence[Sequence[int]]) -> Matrix:
    return poly_matrix(
        [[SparsePoly.const(nvars, int(x)) for x in row] for row in entries]
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n, mid, m = len(a), len(b), len(b[0])
    out: List[List[SparsePoly]] = []
    for i in range(n):
        row: List[SparsePoly] = []
        for j in range(m):
            acc = SparsePoly.zero(a[0][0].nvars)
            for k in range(mid):
                if not a[i][k].is_zero() and not b[k][j].is_zero():
                    acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return poly_matrix(out)


def mat_mul_all(ms: Sequence[Matrix]) -> Matrix:
    out = ms[0]
    for m in ms[1:]:
        out = mat_mul(out, m)
    return out


def determinant(m: Matrix) -> SparsePoly:
    """Cofactor expansion; fine for the small minors used here."""
    n = len(m)
    if n == 1:
        return m[0][0]
    nvars = m[0][0].nvars
    acc = SparsePoly.zero(nvars)
    for j in range(n):
        if m[0][j].is_zero():
            continue
        minor = poly_matrix([[m[i][k] for k in range(n) if k != j] for i in range(1, n)])
        term = m[0][j] * determinant(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def minor_det(m: Matrix, rows: Sequence[int], cols: Sequence[int]) -> SparsePoly:
    return determinant(poly_matrix([[m[i][j] for j in cols] for i in rows]))


def order_at_zero(f: SparsePoly, vanishing_vars: Iterable[int]) -> int:
    """Order of vanishing of f along the coordinate subspace where the
    distinguished variables are zero.

    This is the minimum, over monomials with nonzero coefficient, of the
    total degree in the distinguished variables; the remaining variables
    stay generic. Raises on the zero polynomial, which vanishes to every
    order.
    """
    vs = set(vanishing_vars)
    if f.is_zero():
        raise ValueError("zero polynomial has no finite vanishing order")
    return min(sum(e for k, e in enumerate(m) if k in vs) for m, _ in f.coeffs)


# -- GL(n): Schubert cells in the flag variety -------------------------------


def _perm_matrix(nvars: int, w: Sequence[int]) -> Matrix:
    n = len(w)
    entries = [[0] * n for _ in range(n)]
    for i in range(1, n + 1):
        entries[w[i - 1] - 1][i - 1] = 1
    return const_matrix(nvars, entries)


def _gl_inversions(w: Sequence[int]) -> List[Tuple[int, int]]:
    """Positive roots (i, j) sent to negative ones by w, as position pairs."""
    n = len(w)
    return [
        (i, j)
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
        if w[i - 1] > w[j - 1]
    ]


@dataclass(frozen=True)
class CellPoint:
    """Coordinates for a point of the cell w U B inside GL(n).

    The unipotent coordinates are listed with the non-inversion positions
    of w first and the inversion positions last, so the distinguished
    point of the cell is cut out by the vanishing of the trailing l(w)
    coordinates. Torus coordinates follow the unipotent block.
    """

    n: int
    w: Tuple[int, ...]
    unipotent_positions: Tuple[Tuple[int, int], ...]
    nvars: int

    @property
    def distinguished_vars(self) -> Tuple[int, ...]:
        start = len(self.unipotent_positions) - len(_gl_inversions(self.w))
        return tuple(range(start, len(self.unipotent_positions)))


def gl_cell_point(n: int, w: Sequence[int]) -> Tuple[CellPoint, Matrix]:
    """Generic point of the cell of w: the matrix w * prod X_{ij}(a) * t.

    One coordinate per positive root (i, j), i < j, inversions of w last,
    followed by n generic torus coordinates. The torus entries are kept as
    variables so semi-invariance is visible in the output rather than
    assumed.
    """
    inversions = _gl_inversions(w)
    inv_set = set(inversions)
    others = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if (i, j) not in inv_set]
    positions = tuple(others + inversions)
    nvars = len(positions) + n
    factors: List[Matrix] = [_perm_matrix(nvars, w)]
    for k, (i, j) in enumerate(positions):
        entries = [[1 if a == b else 0 for b in range(n)] for a in range(n)]
        x = [[SparsePoly.const(nvars, v) for v in row] for row in entries]
        x[i - 1][j - 1] = SparsePoly.variable(nvars, k)
        factors.append(poly_matrix(x))
    torus = [
        [
            SparsePoly.variable(nvars, len(positions) + a) if a == b else SparsePoly.zero(nvars)
            for b in range(n)
        ]
        for a in range(n)
    ]
    factors.append(poly_matrix(torus))
    point = CellPoint(n, tuple(w), positions, nvars)
    return point, mat_mul_all(factors)


def gl_flambda(n: int, lam: Sequence[int]) -> "MinorProduct":
    """Highest-weight section of weight lambda on GL(n), as a product of
    principal minors anchored at the lower-right corner.

    lambda must be dominant (weakly decreasing). The k-th trailing minor
    appears with exponent lambda_{n-k} - lambda_{n-k+1}, and det appears
    with exponent lambda_n; negative det exponents are tracked separately
    so integral weights with negative entries work.
    """
    lam = list(lam)
    if len(lam) != n:
        raise ValueError("weight length must equal n")
    if any(lam[i] < lam[i + 1] for i in range(n - 1)):
        raise ValueError("weight must be dominant (weakly decreasing)")
    exponents = {k: lam[n - k - 1] - lam[n - k] for k in range(1, n)}
    return MinorProduct(n=n, trailing_exponents=exponents, det_exponent=lam[n - 1])


@dataclass(frozen=True)
class MinorProduct:
    """Product of trailing principal minors with integer exponents."""

    n: int
    trailing_exponents: Dict[int, int]
    det_exponent: int

    def evaluate(self, m: Matrix) -> SparsePoly:
        nvars = m[0][0].nvars
        acc = SparsePoly.const(nvars, 1)
        for k, e in sorted(self.trailing_exponents.items()):
            if e < 0:
                raise ValueError("negative exponent on a non-det minor")
            if e == 0:
                continue
            rows = list(range(self.n - k, self.n))
            mk = minor_det(m, rows, rows)
            for _ in range(e):
                acc = acc * mk
        if self.det_exponent < 0:
            raise ValueError("cannot evaluate a negative det power on a polynomial point")
        if self.det_exponent:
            d = determinant(m)
            for _ in range(self.det_exponent):
                acc = acc * d
        return acc


def gl_cell_order(n: int, lam: Sequence[int], w: Sequence[int]) -> int:
    """Order of vanishing of the weight-lambda section along the cell of w.

    Substitutes the generic cell point into the minor product and reads
    the minimal degree in the cell's distinguished coordinates. Powers of
    det are invertible on the whole group, so lambda is first shifted to
    end in zero; this changes the section by a nonvanishing factor only.
    """
    lam = list(lam)
    if len(lam) != n:
        raise ValueError("weight length must equal n")
    shifted = [x - lam[n - 1] for x in lam]
    point, matrix = gl_cell_point(n, w)
    f = gl_flambda(n, shifted).evaluate(matrix)
    return order_at_zero(f, point.distinguished_vars)


# -- GSp(2n): the Hasse determinant on symplectic similitudes -----------------


def _antidiag_j(n: int) -> List[List[int]]:
    return [[1 if i + j == n - 1 else 0 for j in range(n)] for i in range(n)]


def gsp_form(n: int) -> Tuple[Tuple[int, ...], ...]:
    """Antidiagonal symplectic form: -J in the upper right, J lower left."""
    j = _antidiag_j(n)
    top = [[0] * n + [-x for x in row] for row in j]
    bottom = [row + [0] * n for row in j]
    return tuple(tuple(r) for r in top + bottom)


def is_symplectic_similitude(x: Sequence[Sequence[int]], p: int) -> bool:
    """Whether x preserves the antidiagonal form up to a nonzero scalar mod p."""
    m = len(x)
    n = m // 2
    psi = gsp_form(n)
    lhs = [
        [sum(x[i][a] * psi[a][b] * x[j][b] for a in range(m) for b in range(m)) % p for j in range(m)]
        for i in range(m)
    ]
    scalar = None
    for i in range(m):
        for j in range(m):
            if psi[i][j] % p != 0:
                ratio = (lhs[i][j] * pow(psi[i][j], -1, p)) % p
                if scalar is None:
                    scalar = ratio
                elif ratio != scalar:
                    return False
            elif lhs[i][j] % p != 0:
                return False
    return scalar is not None and scalar % p != 0


def gsp_hasse(n: int) -> SparsePoly:
    """Determinant of the upper-left n x n block, on symbolic 2n x 2n input.

    Variables are the 4 n^2 matrix entries in row-major order; the section
    only involves the first block.
    """
    nvars = (2 * n) ** 2
    block = poly_matrix(
        [[SparsePoly.variable(nvars, (2 * n) * i + j) for j in range(n)] for i in range(n)]
    )
    return determinant(block)


def _rank_mod_p(rows: List[List[int]], p: int) -> int:
    """Row echelon rank over the prime field, by hand."""
    m = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(m[0]) if m else 0
    row = 0
    for col in range(ncols):
        pivot = None
        for r in range(row, len(m)):
            if m[r][col] % p != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[row], m[pivot] = m[pivot], m[row]
        inv = pow(m[row][col], -1, p)
        m[row] = [(v * inv) % p for v in m[row]]
        for r in range(len(m)):
            if r != row and m[r][col] % p:
                factor = m[r][col]
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[row])]
        row += 1
        rank += 1
    return rank


def gsp_point_order(n: int, p: int, x: Sequence[Sequence[int]]) -> int:
    """Corank of the upper-left block of a symplectic similitude mod p.

    This is the multiplicity with which the Hasse determinant vanishes at
    the point, stratum by stratum. Rejects matrices that do not preserve
    the form up to scalar.
    """
    if len(x) != 2 * n or any(len(row) != 2 * n for row in x):
        raise ValueError("matrix must be 2n x 2n")
    if not is_symplectic_similitude(x, p):
        raise ValueError("matrix is not a symplectic similitude mod p")
    block = [[x[i][j] % p for j in range(n)] for i in range(n)]
    return n - _rank_mod_p(block, p)


def gsp_witness(n: int, i: int) -> Tuple[Tuple[int, ...], ...]:
    """Similitude whose upper-left block is a rank-i diagonal idempotent.

    The block layout [[A, -J], [J, 0]] preserves the antidiagonal form for
    any symmetric-under-J choice of A; a diagonal 0/1 pattern is the
    simplest one, and gives Hasse order n - i.
    """
    if not 0 <= i <= n:
        raise ValueError("rank must lie between 0 and n")
    j = _antidiag_j(n)
    a = [[1 if (r == c and r < i) else 0 for c in range(n)] for r in range(n)]
    top = [arow + [-x for x in jrow] for arow, jrow in zip(a, j)]
    bottom = [jrow + [0] * n for jrow in j]
    return tuple(tuple(r) for r in top + bottom)


def gsp_psi_curve_point(n: int, a: Sequence[int]) -> Tuple[Tuple[int, ...], ...]:
    """The test-curve point psi(a): diagonal block diag(a) over the J frame."""
    if len(a) != n:
        raise ValueError("curve parameter must have n coordinates")
    j = _antidiag_j(n)
    top = [[a[r] if r == c else 0 for c in range(n)] + [-x for x in j[r]] for r in range(n)]
    bottom = [row + [0] * n for row in j]
    return tuple(tuple(r) for r in top + bottom)


# -- GL(n): Pluecker coordinate of the dual-pair section ----------------------


def gl_plucker_order(n: int, w: Sequence[int]) -> int:
    """Order of the squared top Pluecker coordinate along the stratum of w.

    The section is the square of the coefficient of e_1 ^ ... ^ e_{n-1} in
    the wedge of the first n - 1 columns of the moving frame. The frame is
    a lower-unipotent chart anchored at w * w0, dense in the flag space,
    whose trailing coordinates cut out the stratum; the order is computed
    by actual polynomial expansion of the minor. Cross-checked in tests
    against the closed form 2 * [w(1) != n].
    """
    if sorted(w) != list(range(1, n + 1)):
        raise ValueError("w must be a permutation of 1..n")
    v = tuple(w[n - i] for i in range(1, n + 1))
    lower = [(i, j) for i in range(1, n + 1) for j in range(1, i)]
    vanishing = [(i, j) for (i, j) in lower if v[i - 1] < v[j - 1]]
    free = [(i, j) for (i, j) in lower if (i, j) not in set(vanishing)]
    positions = free + vanishing
    nvars = len(positions) + n
    factors: List[Matrix] = [_perm_matrix(nvars, v)]
    for k, (i, j) in enumerate(positions):
        x = [
            [SparsePoly.const(nvars, 1 if a == b else 0) for b in range(n)]
            for a in range(n)
        ]
        x[i - 1][j - 1] = SparsePoly.variable(nvars, k)
        factors.append(poly_matrix(x))
    torus = [
        [
            SparsePoly.variable(nvars, len(positions) + a) if a == b else SparsePoly.zero(nvars)
            for b in range(n)
        ]
        for a in range(n)
    ]
    factors.append(poly_matrix(torus))
    matrix = mat_mul_all(factors)
    top = minor_det(matrix, list(range(n - 1)), list(range(n - 1)))
    section = top * top
    distinguished = range(len(free), len(positions))
    return order_at_zero(section, distinguished)
