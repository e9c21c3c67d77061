"""Exact rational linear algebra for degenerate symplectic flag varieties.

Subspaces of W = Q^{2n} are stored as reduced row echelon matrices over
Fraction, so equality of subspaces is equality of matrices.  Coordinates are
1-indexed in the public API, matching the basis w_1..w_2n.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .rootsys import (
    Root,
    TypeC,
    column_max,
    positive_roots,
    radical_pairs,
    root_vector_matrix,
)

Q = Fraction
Vector = tuple[Q, ...]
Matrix = tuple[Vector, ...]


class LiftError(ValueError):
    """No valid resolution component exists: the flag point is not a member."""


# ---------------------------------------------------------------------------
# matrix kernel


def rref(rows) -> Matrix:
    """Reduced row echelon form over Fraction; zero rows dropped."""
    work = [list(map(Q, row)) for row in rows]
    if not work:
        return ()
    ncols = len(work[0])
    lead = 0
    r = 0
    for col in range(ncols):
        piv = next((k for k in range(r, len(work)) if work[k][col] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = 1 / work[r][col]
        work[r] = [x * inv for x in work[r]]
        for k in range(len(work)):
            if k != r and work[k][col] != 0:
                f = work[k][col]
                work[k] = [a - f * b for a, b in zip(work[k], work[r])]
        r += 1
        if r == len(work):
            break
    out = [tuple(row) for row in work[:r] if any(x != 0 for x in row)]
    return tuple(out)


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in zip(*b)) for row in a
    )


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def nullspace(rows, ncols: int) -> list[Vector]:
    """Basis of the right kernel of the matrix, deterministic order."""
    red = rref(rows)
    pivots = []
    for row in red:
        pivots.append(next(c for c in range(ncols) if row[c] != 0))
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Q(0)] * ncols
        v[f] = Q(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def det(rows) -> Q:
    work = [list(map(Q, row)) for row in rows]
    m = len(work)
    sign = 1
    for col in range(m):
        piv = next((k for k in range(col, m) if work[k][col] != 0), None)
        if piv is None:
            return Q(0)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            sign = -sign
        for k in range(col + 1, m):
            f = work[k][col] / work[col][col]
            if f:
                work[k] = [a - f * b for a, b in zip(work[k], work[col])]
    out = Q(sign)
    for k in range(m):
        out *= work[k][k]
    return out


# ---------------------------------------------------------------------------
# subspaces


class Subspace:
    """Row space of an exact rational matrix, canonicalized by RREF."""

    __slots__ = ("rows", "ambient")

    def __init__(self, rows: Matrix, ambient: int):
        self.rows = rows
        self.ambient = ambient

    @classmethod
    def span(cls, vectors, ambient: int) -> "Subspace":
        vectors = list(vectors)
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("vector length does not match ambient dimension")
        return cls(rref(vectors), ambient)

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls((), ambient)

    @classmethod
    def coordinate(cls, indices, ambient: int) -> "Subspace":
        """Span of the basis vectors w_l for l in indices (1-indexed)."""
        vecs = []
        for l in sorted(indices):
            v = [Q(0)] * ambient
            v[l - 1] = Q(1)
            vecs.append(v)
        return cls.span(vecs, ambient)

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.rows))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient})"

    def reduce_vector(self, v) -> Vector:
        """Residual of v after elimination against the RREF rows."""
        v = list(map(Q, v))
        for row in self.rows:
            p = next(c for c in range(self.ambient) if row[c] != 0)
            if v[p] != 0:
                f = v[p]
                v = [a - f * b for a, b in zip(v, row)]
        return tuple(v)

    def contains_vector(self, v) -> bool:
        return all(x == 0 for x in self.reduce_vector(v))

    def contains(self, other: "Subspace") -> bool:
        return all(self.contains_vector(row) for row in other.rows)

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace(rref(list(self.rows) + list(other.rows)), self.ambient)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Kernel construction: c with c[:r]*self - c[r:]*other = 0."""
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient)
        stacked = list(self.rows) + list(other.rows)
        vecs = []
        for c in nullspace(mat_transpose(tuple(stacked)), len(stacked)):
            v = [Q(0)] * self.ambient
            for coef, row in zip(c[: self.dim], self.rows):
                if coef:
                    v = [a + coef * b for a, b in zip(v, row)]
            if any(x != 0 for x in v):
                vecs.append(tuple(v))
        return Subspace.span(vecs, self.ambient)


def project_away(u: Subspace, coords) -> Subspace:
    """Image under the projection that zeroes the given 1-indexed coordinates."""
    kill = set(coords)
    vecs = [
        tuple(Q(0) if (c + 1) in kill else x for c, x in enumerate(row))
        for row in u.rows
    ]
    return Subspace.span(vecs, u.ambient)


def w_space(i: int, j: int, n: int) -> Subspace:
    """W_{i,j} = span(w_1..w_i, w_{j+1}..w_2n)."""
    return Subspace.coordinate(
        list(range(1, i + 1)) + list(range(j + 1, 2 * n + 1)), 2 * n
    )


# ---------------------------------------------------------------------------
# symplectic structure


def symplectic_form(n: int) -> tuple[tuple[int, ...], ...]:
    """J with <w_i, w_{2n+1-i}> = 1 for i <= n and -1 for i > n."""
    m = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(1, 2 * n + 1):
        m[i - 1][2 * n - i] = 1 if i <= n else -1
    return tuple(tuple(row) for row in m)


def form_value(u, v, j_mat) -> Q:
    total = Q(0)
    for a, row in zip(u, j_mat):
        if a:
            total += a * sum(x * y for x, y in zip(row, v))
    return total


def is_isotropic(u: Subspace, n: int, j_mat=None) -> bool:
    j_mat = j_mat if j_mat is not None else symplectic_form(n)
    rows = u.rows
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if form_value(rows[a], rows[b], j_mat) != 0:
                return False
    return True


def perp(u: Subspace, n: int, j_mat=None) -> Subspace:
    """J-orthogonal complement, of dimension 2n - dim u."""
    j_mat = j_mat if j_mat is not None else symplectic_form(n)
    if u.dim == 0:
        return Subspace(rref([[Q(1) if c == r else Q(0) for c in range(2 * n)] for r in range(2 * n)]), 2 * n)
    constraints = mat_mul(tuple(tuple(map(Q, row)) for row in u.rows), tuple(tuple(map(Q, r)) for r in j_mat))
    return Subspace.span(nullspace(constraints, 2 * n), 2 * n)


# ---------------------------------------------------------------------------
# membership tests


def in_sp_grass_a(u: Subspace, k: int, n: int) -> bool:
    """Degenerate symplectic Grassmannian test: pr_{1,3}(U) is isotropic."""
    if u.dim != k:
        raise ValueError(f"expected a {k}-dimensional subspace, got dim {u.dim}")
    middle = range(k + 1, 2 * n - k + 1)
    return is_isotropic(project_away(u, middle), n)


@dataclass(frozen=True)
class FlagPoint:
    """Collection (V_{d_1},...,V_{d_k}) of subspaces of Q^{2n}."""

    d: tuple[int, ...]
    spaces: tuple[Subspace, ...]

    def __post_init__(self) -> None:
        if len(self.d) != len(self.spaces):
            raise ValueError("index list and space list lengths differ")


def in_sp_flag_a(flag: FlagPoint, n: int) -> bool:
    """Each space passes the Grassmannian test and projected inclusions hold."""
    for dl, v in zip(flag.d, flag.spaces):
        if v.dim != dl:
            raise ValueError(f"dim V_{dl} = {v.dim}")
        if not in_sp_grass_a(v, dl, n):
            return False
    for l in range(len(flag.d) - 1):
        lo, hi = flag.d[l], flag.d[l + 1]
        proj = project_away(flag.spaces[l], range(lo + 1, hi + 1))
        if not flag.spaces[l + 1].contains(proj):
            return False
    return True


@dataclass(frozen=True)
class ResolutionPoint:
    """Collection V_{i,j}, (i,j) in P_d, with V_{i,j} inside W_{i,j}."""

    n: int
    d: tuple[int, ...]
    spaces: dict[tuple[int, int], Subspace]

    def pairs(self) -> frozenset[tuple[int, int]]:
        return radical_pairs(self.d, self.n)


def in_resolution(p: ResolutionPoint, d: tuple[int, ...], n: int) -> bool:
    pairs = radical_pairs(tuple(d), n)
    if set(p.spaces) != set(pairs):
        raise ValueError("resolution point shape does not match P_d")
    for (i, j), v in p.spaces.items():
        if v.dim != i or not w_space(i, j, n).contains(v):
            return False
    for i, j in pairs:
        v = p.spaces[(i, j)]
        if (i + 1, j) in pairs and not p.spaces[(i + 1, j)].contains(v):
            return False
        if (i, j + 1) in pairs and not p.spaces[(i, j + 1)].contains(
            project_away(v, [j + 1])
        ):
            return False
        if i + j == 2 * n and not is_isotropic(v, n):
            return False
    return True


def project_pi(p: ResolutionPoint) -> FlagPoint:
    """Forget the off-diagonal components."""
    return FlagPoint(p.d, tuple(p.spaces[(dl, dl)] for dl in p.d))


def in_divisor(p: ResolutionPoint, i: int, j: int) -> bool:
    """Membership in Z_{i,j}: the component sits on the section."""
    n = p.n
    if i == 1:
        target = Subspace.coordinate([j + 1], 2 * n)
    else:
        target = p.spaces[(i - 1, j + 1)].sum(Subspace.coordinate([j + 1], 2 * n))
    return p.spaces[(i, j)] == target


def plucker_top_nonzero(u: Subspace, i: int) -> bool:
    """Whether the Pluecker coordinate p_{1..i} does not vanish."""
    if u.dim != i:
        raise ValueError("dimension mismatch")
    if i == 0:
        return True
    minor = tuple(row[:i] for row in u.rows)
    return det(minor) != 0


def in_open_cell(p: ResolutionPoint) -> bool:
    return all(
        plucker_top_nonzero(v, i) for (i, _), v in p.spaces.items()
    )


# ---------------------------------------------------------------------------
# lift


def _transport_isotropic_constraint(
    upper: Subspace, current: Subspace, i: int, j: int, n: int
) -> Subspace:
    """Vectors x in `upper` whose projection pairs to zero with that of `current`.

    The projection zeroes coordinates j+1..2n-i; keeping it isotropic while
    growing `current` is the side condition the column induction maintains.
    """
    if current.dim == 0:
        return upper
    middle = range(j + 1, 2 * n - i + 1)
    pu = [project_away_vector(row, middle) for row in upper.rows]
    pc = [project_away_vector(row, middle) for row in current.rows]
    j_mat = symplectic_form(n)
    cmatrix = [[form_value(a, b, j_mat) for b in pc] for a in pu]
    sol = nullspace(mat_transpose(tuple(map(tuple, cmatrix))), len(pu))
    vecs = []
    for c in sol:
        v = [Q(0)] * (2 * n)
        for coef, row in zip(c, upper.rows):
            if coef:
                v = [a + coef * b for a, b in zip(v, row)]
        vecs.append(tuple(v))
    return Subspace.span(vecs, 2 * n)


def project_away_vector(v, coords) -> Vector:
    kill = set(coords)
    return tuple(Q(0) if (c + 1) in kill else x for c, x in enumerate(v))


def _extend_choice(
    lower: Subspace, upper: Subspace, i: int, j: int, n: int
) -> Subspace:
    """Grow `lower` to dimension i inside `upper`, keeping the transported
    projection isotropic; among valid one-vector extensions the candidate with
    lexicographically minimal RREF is taken, for determinism."""
    current = lower
    while current.dim < i:
        feasible = _transport_isotropic_constraint(upper, current, i, j, n)
        candidates = []
        for x in feasible.rows:
            if not current.contains_vector(x):
                candidates.append(current.sum(Subspace.span([x], 2 * n)))
        if not candidates:
            raise LiftError(f"no valid component at ({i},{j})")
        current = min(candidates, key=lambda s: s.rows)
    return current


def lift(flag: FlagPoint, n: int) -> ResolutionPoint:
    """Resolution point over a flag point, by column induction.

    Components are fixed column by column (j increasing, i decreasing inside a
    column).  Whenever pr_{j+1} preserves the dimension the component is
    forced; otherwise an admissible extension is chosen deterministically.
    Raises LiftError when some step is infeasible, which signals that the
    input does not satisfy the flag membership conditions.
    """
    d = tuple(flag.d)
    pairs = radical_pairs(d, n)
    anchors = dict(zip(d, flag.spaces))
    for dl, v in anchors.items():
        if v.dim != dl:
            raise ValueError(f"anchor V_{dl} has dim {v.dim}")
    spaces: dict[tuple[int, int], Subspace] = {}
    columns = sorted({j for _, j in pairs})
    for j in columns:
        for i in range(column_max(j, d, n), 0, -1):
            if (i, j) not in pairs:
                continue
            lower = Subspace.zero(2 * n)
            if (i, j - 1) in pairs:
                lower = project_away(spaces[(i, j - 1)], [j])
            upper = w_space(i, j, n)
            if (i + 1, j) in pairs:
                upper = upper.intersection(spaces[(i + 1, j)])
            if i == j and i in anchors:
                v = anchors[i]
            elif lower.dim == i:
                v = lower
            else:
                if not upper.contains(lower):
                    raise LiftError(f"incompatible constraints at ({i},{j})")
                v = _extend_choice(lower, upper, i, j, n)
            ok = (
                v.dim == i
                and upper.contains(v)
                and v.contains(lower)
                and is_isotropic(
                    project_away(v, range(j + 1, 2 * n - i + 1)), n
                )
            )
            if not ok:
                raise LiftError(f"no valid component at ({i},{j})")
            spaces[(i, j)] = v
    point = ResolutionPoint(n, d, spaces)
    if not in_resolution(point, d, n):
        raise LiftError("constructed point fails the resolution conditions")
    return point


# ---------------------------------------------------------------------------
# involution and flat family


def sigma_involution(spaces: list[Subspace]) -> list[Subspace]:
    """(V_1,...,V_{2n-1}) -> (V_{2n-1}^perp,...,V_1^perp)."""
    if not spaces:
        raise ValueError("empty flag")
    two_n = spaces[0].ambient
    if len(spaces) != two_n - 1:
        raise ValueError("expected a complete flag of 2n-1 subspaces")
    n = two_n // 2
    for k, v in enumerate(spaces, start=1):
        if v.dim != k:
            raise ValueError(f"dim V_{k} = {v.dim}")
    return [perp(v, n) for v in reversed(spaces)]


def flat_family_form(s, n: int, k: int) -> Matrix:
    """The degenerating form J_s, with anti-diagonal identity blocks."""
    s = Q(s)
    m = [[Q(0)] * (2 * n) for _ in range(2 * n)]
    for i in range(1, 2 * n + 1):
        if i <= k:
            m[i - 1][2 * n - i] = Q(1)
        elif i <= n:
            m[i - 1][2 * n - i] = s
        elif i <= 2 * n - k:
            m[i - 1][2 * n - i] = -s
        else:
            m[i - 1][2 * n - i] = Q(-1)
    return tuple(tuple(row) for row in m)


def eta_matrix(s, n: int, k: int) -> Matrix:
    """Diagonal one-parameter subgroup scaling the middle 2(n-k) coordinates."""
    s = Q(s)
    diag = [Q(1)] * k + [s] * (2 * (n - k)) + [Q(1)] * k
    return tuple(
        tuple(diag[r] if r == c else Q(0) for c in range(2 * n)) for r in range(2 * n)
    )


def apply_matrix(m: Matrix, u: Subspace) -> Subspace:
    vecs = [
        tuple(sum(m[r][c] * x for c, x in enumerate(row)) for r in range(len(m)))
        for row in u.rows
    ]
    return Subspace.span(vecs, u.ambient)


def isotropy_transport_check(u: Subspace, s, n: int, k: int) -> bool:
    """U isotropic for J_1 implies eta(1/s) U isotropic for J_{s^2}."""
    s = Q(s)
    if s == 0:
        raise ValueError("transport needs s != 0")
    if not _isotropic_for(u, flat_family_form(1, n, k)):
        raise ValueError("input subspace is not J_1-isotropic")
    moved = apply_matrix(eta_matrix(1 / s, n, k), u)
    return _isotropic_for(moved, flat_family_form(s * s, n, k))


def _isotropic_for(u: Subspace, j_mat: Matrix) -> bool:
    rows = u.rows
    for a in range(len(rows)):
        for b in range(a + 1, len(rows)):
            if form_value(rows[a], rows[b], j_mat) != 0:
                return False
    return True


def j0_isotropic(u: Subspace, n: int, k: int) -> bool:
    return _isotropic_for(u, flat_family_form(0, n, k))


# ---------------------------------------------------------------------------
# random generators (open cell, isotropic subspaces)


def sp_lower_matrix(coeffs: dict[Root, Q], n: int) -> Matrix:
    """Strictly lower matrix sum c_alpha f_alpha in sp_2n."""
    m = [[Q(0)] * (2 * n) for _ in range(2 * n)]
    for root, c in coeffs.items():
        for r, row in enumerate(root_vector_matrix(root)):
            for col, x in enumerate(row):
                if x:
                    m[r][col] += c * x
    return tuple(tuple(row) for row in m)


def unipotent_flag(gamma: Matrix, d: tuple[int, ...], n: int) -> FlagPoint:
    """Open-cell flag point: V_k is spanned by w_c + sum_{r>k} gamma_{rc} w_r."""
    spaces = []
    for k in d:
        vecs = []
        for c in range(k):
            v = [Q(0)] * (2 * n)
            v[c] = Q(1)
            for r in range(k, 2 * n):
                v[r] = Q(gamma[r][c])
            vecs.append(tuple(v))
        spaces.append(Subspace.span(vecs, 2 * n))
    return FlagPoint(tuple(d), tuple(spaces))


def random_sp_flag(d: tuple[int, ...], n: int, rng: random.Random) -> FlagPoint:
    coeffs = {
        r: Q(rng.randint(-9, 9), rng.randint(1, 5)) for r in positive_roots(TypeC(n))
    }
    return unipotent_flag(sp_lower_matrix(coeffs, n), d, n)


def random_sl_flag(two_n: int, rng: random.Random) -> list[Subspace]:
    """Random complete degenerate sl flag from a strictly lower matrix."""
    gamma = [[Q(0)] * two_n for _ in range(two_n)]
    for r in range(two_n):
        for c in range(r):
            gamma[r][c] = Q(rng.randint(-9, 9), rng.randint(1, 5))
    spaces = []
    for k in range(1, two_n):
        vecs = []
        for c in range(k):
            v = [Q(0)] * two_n
            v[c] = Q(1)
            for r in range(k, two_n):
                v[r] = gamma[r][c]
            vecs.append(tuple(v))
        spaces.append(Subspace.span(vecs, two_n))
    return spaces


def random_subspace(ambient: int, k: int, rng: random.Random) -> Subspace:
    while True:
        vecs = [
            tuple(Q(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(ambient))
            for _ in range(k)
        ]
        u = Subspace.span(vecs, ambient)
        if u.dim == k:
            return u


def random_isotropic(n: int, k: int, rng: random.Random) -> Subspace:
    """Random k-dimensional J_1-isotropic subspace of Q^{2n}, k <= n."""
    j_mat = symplectic_form(n)
    current = Subspace.zero(2 * n)
    while current.dim < k:
        room = perp(current, n, j_mat)
        for _ in range(50):
            v = [Q(0)] * (2 * n)
            for row in room.rows:
                c = Q(rng.randint(-5, 5))
                if c:
                    v = [a + c * b for a, b in zip(v, row)]
            cand = current.sum(Subspace.span([tuple(v)], 2 * n))
            if cand.dim == current.dim + 1 and is_isotropic(cand, n, j_mat):
                current = cand
                break
        else:
            raise RuntimeError("failed to extend an isotropic subspace")
    return current
