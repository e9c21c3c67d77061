import pytest

from spflag.geometry import symplectic_form
from spflag.rootsys import (
    Root,
    TypeA,
    TypeC,
    boundary_pairs,
    fundamental_weight,
    pairing,
    phi_embed,
    positive_roots,
    radical_pairs,
    root_vector_matrix,
    root_weight,
    weight_of,
)


def pairs(system):
    return {(r.i, r.j) for r in positive_roots(system)}


def test_positive_roots_c1():
    assert pairs(TypeC(1)) == {(1, 1)}


def test_positive_roots_c2():
    assert pairs(TypeC(2)) == {(1, 1), (2, 2), (1, 2), (1, 3)}


def test_positive_roots_a3():
    assert pairs(TypeA(3)) == {(1, 1), (2, 2), (1, 2)}


@pytest.mark.parametrize("n", range(1, 7))
def test_type_c_count(n):
    assert len(positive_roots(TypeC(n))) == n * n


@pytest.mark.parametrize("m", range(2, 7))
def test_type_a_count(m):
    assert len(positive_roots(TypeA(m))) == m * (m - 1) // 2


def test_root_order_is_topological():
    seen = set()
    for r in positive_roots(TypeC(3)):
        if r.i > 1:
            assert (r.i - 1, r.j) in seen
        if r.i + r.j + 1 <= 6 and r.j + 1 >= r.i:
            assert (r.i, r.j + 1) in seen
        seen.add((r.i, r.j))


def test_invalid_root_rejected():
    with pytest.raises(ValueError):
        Root(2, 3, TypeC(2))
    with pytest.raises(ValueError):
        Root(1, 3, TypeA(3))


def test_root_weight_c2():
    c2 = TypeC(2)
    assert root_weight(Root(1, 3, c2)) == (2, 0)
    assert root_weight(Root(1, 2, c2)) == (1, 1)
    assert root_weight(Root(1, 1, c2)) == (1, -1)
    assert root_weight(Root(2, 2, c2)) == (0, 2)


def test_root_weight_sums_simple_roots():
    n = 3
    c = TypeC(n)
    simple = [root_weight(Root(i, i if i < n else n, c)) for i in range(1, n)]
    simple.append(root_weight(Root(n, n, c)))
    # alpha_{1,2} = alpha_1 + alpha_2
    expect = tuple(a + b for a, b in zip(simple[0], simple[1]))
    assert root_weight(Root(1, 2, c)) == expect


def test_root_vector_matrix_examples():
    def e(r, c, size):
        m = [[0] * size for _ in range(size)]
        m[r - 1][c - 1] = 1
        return m

    def add(a, b, sign=1):
        return tuple(
            tuple(x + sign * y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
        )

    assert root_vector_matrix(Root(1, 1, TypeC(1))) == tuple(
        tuple(row) for row in e(2, 1, 2)
    )
    assert root_vector_matrix(Root(1, 1, TypeC(2))) == add(e(2, 1, 4), e(4, 3, 4), -1)
    assert root_vector_matrix(Root(1, 2, TypeC(2))) == add(e(3, 1, 4), e(4, 2, 4), 1)


@pytest.mark.parametrize("n", range(1, 6))
def test_root_vectors_in_sp(n):
    j = symplectic_form(n)
    for r in positive_roots(TypeC(n)):
        f = root_vector_matrix(r)
        # f^T J + J f = 0
        size = 2 * n
        for a in range(size):
            for b in range(size):
                lhs = sum(f[k][a] * j[k][b] for k in range(size))
                rhs = sum(j[a][k] * f[k][b] for k in range(size))
                assert lhs + rhs == 0


def test_phi_embed():
    c2 = TypeC(2)
    images = {phi_embed(r) for r in positive_roots(c2)}
    assert len(images) == 4
    for r in positive_roots(c2):
        img = phi_embed(r)
        assert (img.i, img.j) == (r.i, r.j)
        assert img.system == TypeA(4)


def test_weights_of_lambda():
    assert weight_of((1, 0), TypeC(2)) == (1, 0)
    assert weight_of((0, 1), TypeC(2)) == (1, 1)
    assert weight_of((2, 3), TypeC(2)) == (5, 3)
    assert fundamental_weight(2, TypeC(3)) == (1, 1, 0)


def test_radical_full():
    for n in range(1, 5):
        assert len(radical_pairs(tuple(range(1, n + 1)), n)) == n * n


def test_radical_examples_n2():
    assert radical_pairs((1,), 2) == frozenset({(1, 1), (1, 2), (1, 3)})
    assert radical_pairs((2,), 2) == frozenset({(1, 2), (2, 2), (1, 3)})


def test_radical_matches_bruteforce_pairing():
    n = 3
    system = TypeC(n)
    for d in [(1,), (2,), (3,), (1, 3), (2, 3), (1, 2, 3)]:
        expect = set()
        for r in positive_roots(system):
            w = root_weight(r)
            if any(pairing(w, fundamental_weight(dl, system)) > 0 for dl in d):
                expect.add((r.i, r.j))
        assert radical_pairs(d, n) == frozenset(expect)


def test_radical_rejects_empty():
    with pytest.raises(ValueError):
        radical_pairs((), 2)


def test_boundary_examples():
    assert boundary_pairs((1,), 1) == frozenset({(1, 1)})
    assert boundary_pairs((1, 2), 2) == frozenset({(1, 1), (1, 2), (2, 2)})
    assert boundary_pairs((2,), 2) == frozenset({(1, 2), (2, 2)})


@pytest.mark.parametrize("n", range(1, 6))
def test_boundary_subset_and_characterization(n):
    for mask in range(1, 1 << n):
        d = tuple(i + 1 for i in range(n) if mask >> i & 1)
        p = radical_pairs(d, n)
        b = boundary_pairs(d, n)
        assert b <= p
        # exactly those (i0,j0) in P_d with (i0+1, j0-1) outside P_d
        expect = {(i, j) for (i, j) in p if (i + 1, j - 1) not in p}
        assert b == expect
