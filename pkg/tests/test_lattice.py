import itertools
import random

import pytest

from totalsearch.lattice import IntMatrix, det_exact, lattice_member


def test_det_examples():
    assert det_exact(IntMatrix.scaled_identity(4, 2)) == 16
    assert det_exact(IntMatrix.from_rows([[2, 1], [0, 3]])) == 6
    assert det_exact(IntMatrix.from_rows([[1, 2], [2, 4]])) == 0


def test_det_needs_pivoting():
    assert det_exact(IntMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det_exact(IntMatrix.from_rows([[0, 2, 1], [3, 0, 0], [0, 0, 5]])) == -30


def test_membership_examples():
    assert lattice_member(IntMatrix.scaled_identity(3, 2), (2, 0, -2)) == (1, 0, -1)
    assert lattice_member(IntMatrix.scaled_identity(2, 2), (1, 0)) is None
    assert lattice_member(IntMatrix.scaled_identity(2, 2), (0, 0)) == (0, 0)


def test_membership_rejects_singular():
    with pytest.raises(ValueError):
        lattice_member(IntMatrix.from_rows([[1, 2], [2, 4]]), (1, 1))


def _random_unimodular(rng, n):
    # product of elementary row additions of a permuted identity
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    rng.shuffle(rows)
    for _ in range(3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            c = rng.randint(-2, 2)
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return rows


def test_unimodular_invariance():
    rng = random.Random(12)
    for _ in range(20):
        n = rng.randint(2, 6)
        diag = [[0] * n for _ in range(n)]
        for i in range(n):
            diag[i][i] = rng.randint(1, 10)
        u = _random_unimodular(rng, n)
        # B = U * D: same lattice as D up to basis change, same |det|
        b_rows = [
            [sum(u[i][k] * diag[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        b = IntMatrix.from_rows(b_rows)
        d = IntMatrix.from_rows(diag)
        assert abs(det_exact(b)) == abs(det_exact(d))
        if n <= 3:
            coords = itertools.product(range(-3, 4), repeat=n)
        else:
            coords = (
                tuple(rng.randint(-3, 3) for _ in range(n)) for _ in range(60)
            )
        for z in coords:
            point = b.mul_vec(z)
            assert lattice_member(b, point) is not None


def test_doubled_lattice_has_no_small_points():
    # the only vector with entries in {-1, 0, 1} inside 2Z^n is zero
    for n in range(1, 5):
        b = IntMatrix.scaled_identity(n, 2)
        for v in itertools.product((-1, 0, 1), repeat=n):
            member = lattice_member(b, v) is not None
            assert member == all(x == 0 for x in v)
