"""Positive-root combinatorics for sl_m and sp_2n in epsilon coordinates.

Weights live in the epsilon basis throughout: for sp_2n the simple roots are
eps_i - eps_{i+1} (i < n) and 2 eps_n, and the fundamental weight omega_d is
eps_1 + ... + eps_d.  Type A is handled at the gl level (length-m epsilon
vectors, sum unconstrained).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class TypeA:
    """Root system of sl_m, m >= 2."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"TypeA needs m >= 2, got {self.m}")


@dataclass(frozen=True)
class TypeC:
    """Root system of sp_2n, n >= 1."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"TypeC needs n >= 1, got {self.n}")


RootSystem = TypeA | TypeC


def rank(system: RootSystem) -> int:
    return system.m - 1 if isinstance(system, TypeA) else system.n


def num_vars(system: RootSystem) -> int:
    """Length of epsilon-coordinate weight vectors for the system."""
    return system.m if isinstance(system, TypeA) else system.n


def is_valid_pair(i: int, j: int, system: RootSystem) -> bool:
    if isinstance(system, TypeA):
        return 1 <= i <= j <= system.m - 1
    return 1 <= i <= j and i + j <= 2 * system.n


@dataclass(frozen=True)
class Root:
    """Positive root alpha_{i,j}; in type C the range i <= j, i+j <= 2n."""

    i: int
    j: int
    system: RootSystem

    def __post_init__(self) -> None:
        if not is_valid_pair(self.i, self.j, self.system):
            raise ValueError(f"invalid root index ({self.i},{self.j}) for {self.system}")

    @property
    def pair(self) -> tuple[int, int]:
        return (self.i, self.j)


def index_pairs(system: RootSystem) -> tuple[tuple[int, int], ...]:
    """All root index pairs, columns j descending and i ascending within a column.

    This order is a topological order in which (i-1,j) and (i,j+1) always
    precede (i,j); the fibration tower and the fixed-point enumeration both
    consume it.
    """
    pairs = []
    if isinstance(system, TypeA):
        jmax = system.m - 1
        for j in range(jmax, 0, -1):
            for i in range(1, j + 1):
                pairs.append((i, j))
    else:
        two_n = 2 * system.n
        for j in range(two_n - 1, 0, -1):
            for i in range(1, min(j, two_n - j) + 1):
                pairs.append((i, j))
    return tuple(pairs)


def positive_roots(system: RootSystem) -> tuple[Root, ...]:
    """All positive roots exactly once; n^2 in type C(n), m(m-1)/2 in type A(m)."""
    return tuple(Root(i, j, system) for i, j in index_pairs(system))


def root_weight(r: Root) -> tuple[int, ...]:
    """Epsilon coordinates of the root."""
    i, j = r.i, r.j
    if isinstance(r.system, TypeA):
        w = [0] * r.system.m
        w[i - 1] += 1
        w[j] -= 1
        return tuple(w)
    n = r.system.n
    w = [0] * n
    if j < n:
        w[i - 1] += 1
        w[j] -= 1
    elif j == 2 * n - i:
        w[i - 1] = 2
    else:
        w[i - 1] += 1
        w[2 * n - j - 1] += 1
    return tuple(w)


def root_vector_matrix(r: Root) -> tuple[tuple[int, ...], ...]:
    """Lowering operator f_{i,j} of sp_2n as a 2n x 2n integer matrix."""
    if not isinstance(r.system, TypeC):
        raise ValueError("root vector matrices are defined for type C only")
    n = r.system.n
    i, j = r.i, r.j
    m = [[0] * (2 * n) for _ in range(2 * n)]
    if j == 2 * n - i:
        m[2 * n - i][i - 1] = 1
    elif j < n:
        m[j][i - 1] = 1
        m[2 * n - i][2 * n - j - 1] = -1
    else:
        m[j][i - 1] = 1
        m[2 * n - i][2 * n - j - 1] = 1
    return tuple(tuple(row) for row in m)


def phi_embed(r: Root) -> Root:
    """Index-preserving embedding of a type-C(n) root into type A(2n)."""
    if not isinstance(r.system, TypeC):
        raise ValueError("phi_embed expects a type C root")
    return Root(r.i, r.j, TypeA(2 * r.system.n))


def fundamental_weight(d: int, system: RootSystem) -> tuple[int, ...]:
    """omega_d = eps_1 + ... + eps_d."""
    if not 1 <= d <= rank(system):
        raise ValueError(f"fundamental weight index {d} out of range")
    nv = num_vars(system)
    return tuple(1 if k < d else 0 for k in range(nv))


def weight_of(m_vec: tuple[int, ...], system: RootSystem) -> tuple[int, ...]:
    """Epsilon coordinates of lambda = sum_i m_i omega_i."""
    if len(m_vec) != rank(system):
        raise ValueError(f"expected {rank(system)} coefficients, got {len(m_vec)}")
    nv = num_vars(system)
    out = [0] * nv
    for d, m in enumerate(m_vec, start=1):
        for k in range(d):
            out[k] += m
    return tuple(out)


def pairing(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Standard dot product on epsilon coordinates."""
    return sum(x * y for x, y in zip(a, b, strict=True))


@lru_cache(maxsize=None)
def radical_pairs(d: tuple[int, ...], n: int) -> frozenset[tuple[int, int]]:
    """Index pairs of P_d: roots pairing positively with some omega_{d_l}.

    Membership is decided by the brute-force epsilon pairing rather than a
    hand-derived index rule.
    """
    _check_d(d, n)
    system = TypeC(n)
    fund = [fundamental_weight(dl, system) for dl in d]
    out = set()
    for r in positive_roots(system):
        w = root_weight(r)
        if any(pairing(w, f) > 0 for f in fund):
            out.add(r.pair)
    return frozenset(out)


def radical_roots(d: tuple[int, ...], n: int) -> frozenset[Root]:
    system = TypeC(n)
    return frozenset(Root(i, j, system) for i, j in radical_pairs(tuple(d), n))


@lru_cache(maxsize=None)
def boundary_pairs(d: tuple[int, ...], n: int) -> frozenset[tuple[int, int]]:
    """The subset B_d of P_d: runs up each column d_m, across to the next one,
    and along row d_k out to (d_k, 2n-d_k)."""
    _check_d(d, n)
    k = len(d)
    out = set()
    for m in range(k):
        lo = d[m - 1] + 1 if m > 0 else 1
        for i in range(lo, d[m] + 1):
            out.add((i, d[m]))
        if m < k - 1:
            for j in range(d[m] + 1, d[m + 1] + 1):
                out.add((d[m], j))
    for j in range(d[-1] + 1, 2 * n - d[-1] + 1):
        out.add((d[-1], j))
    return frozenset(out)


def _check_d(d: tuple[int, ...], n: int) -> None:
    if len(d) == 0:
        raise ValueError("empty index list d")
    if list(d) != sorted(set(d)) or d[0] < 1 or d[-1] > n:
        raise ValueError(f"d must be strictly increasing within 1..{n}, got {d}")


def column_max(j: int, d: tuple[int, ...], n: int) -> int:
    """Largest i with (i,j) in P_d, or 0 if the column is empty."""
    pairs = radical_pairs(tuple(d), n)
    best = 0
    for i in range(1, min(j, 2 * n - j) + 1):
        if (i, j) in pairs:
            best = i
    return best
