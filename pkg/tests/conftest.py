import math
import random

import pytest

from hypertoric import IntMatrix, cokernel_matrix, gale_dual, is_lattice_surjection

# the worked 2x4 example used throughout; its kernel has rows of gcd 2 and 3
A_DEMO = IntMatrix.from_rows([[1, 0, -2, -2], [0, 1, -3, -3]])
B_DEMO = IntMatrix.from_rows([[2, 2], [3, 3], [1, 0], [0, 1]])
B_DEMO_PRIM = IntMatrix.from_rows([[1, 1]] * 5 + [[1, 0], [0, 1]])
A_DEMO_EXPANDED = IntMatrix.from_rows(
    [[1, 0, 0, -1, -1], [0, 0, 1, -3, -3], [1, -1, 0, 0, 0]])
A_DEMO_STEP1 = IntMatrix.from_rows(
    [[1, 0, 0, -3, -3], [0, 1, 0, -1, -1], [0, 1, -1, 0, 0]])

# all kernel rows primitive but the matrix is not unimodular
A_TERMINAL_QUOTIENT = IntMatrix.from_rows([[1, -1, -1, 0], [0, -1, 1, 1]])


def row_gcd(row):
    g = 0
    for x in row:
        g = math.gcd(g, x)
    return g


def random_exact_pair(rng, n_range=(2, 8), d_max=4, entry_bound=3,
                      force_nonprimitive=False, scales=(2, 3, 4)):
    """Random exact pair (A, B), built B-first so exactness is automatic.

    Draws B with entries in [-entry_bound, entry_bound], optionally
    scaling some primitive rows by a factor from ``scales``, and rejects
    until B is injective with saturated image and has no zero row; A is
    then the cokernel presentation.
    """
    while True:
        n = rng.randint(*n_range)
        k = rng.randint(max(1, n - d_max), n - 1)
        rows = [[rng.randint(-entry_bound, entry_bound) for _ in range(k)]
                for _ in range(n)]
        if force_nonprimitive:
            for i in rng.sample(range(n), rng.randint(1, max(1, n // 2))):
                if row_gcd(rows[i]) == 1:
                    m = rng.choice(scales)
                    rows[i] = [m * x for x in rows[i]]
        if any(row_gcd(r) == 0 for r in rows):
            continue
        if force_nonprimitive and not any(row_gcd(r) > 1 for r in rows):
            continue
        B = IntMatrix.from_rows(rows)
        if not is_lattice_surjection(B.transpose()):
            continue
        return cokernel_matrix(B), B


def random_surjection(rng, n_range=(2, 8), d_max=4, entry_bound=3):
    """Random surjective A with nonzero kernel rows, sampled on the A side."""
    while True:
        n = rng.randint(*n_range)
        d = rng.randint(1, min(d_max, n - 1))
        A = IntMatrix.from_rows(
            [[rng.randint(-entry_bound, entry_bound) for _ in range(n)]
             for _ in range(d)])
        if not is_lattice_surjection(A):
            continue
        try:
            gale_dual(A)
        except Exception:
            continue
        return A


@pytest.fixture(scope="session")
def corpus500():
    """500 surjections with nonzero kernel rows: 300 kernel-side draws
    (rich in non-primitive rows), 200 direct draws."""
    rng = random.Random(20250809)
    pairs = [random_exact_pair(rng)[0] for _ in range(300)]
    pairs += [random_surjection(rng) for _ in range(200)]
    return pairs


@pytest.fixture(scope="session")
def corpus_nonprimitive():
    """200 instances guaranteed to carry kernel rows with gcd in {2, 3, 4}."""
    rng = random.Random(987654321)
    return [random_exact_pair(rng, n_range=(2, 6), force_nonprimitive=True)[0]
            for _ in range(200)]


@pytest.fixture(scope="session")
def corpus_pairs100():
    """100 exact pairs (A, B) with n <= 8 for minor-duality checks."""
    rng = random.Random(13579)
    return [random_exact_pair(rng) for _ in range(100)]
