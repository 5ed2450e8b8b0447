import numpy as np
import pytest

from fracplace import Pattern


def random_pattern(rng: np.random.Generator, n: int, density: float) -> Pattern:
    """Uniform random square pattern with round(density * n^2) entries."""
    total = n * n
    count = min(int(round(density * total)), total)
    if count == 0:
        return Pattern(n, n)
    flat = rng.choice(total, size=count, replace=False)
    return Pattern(n, n, ((int(p) // n, int(p) % n) for p in flat))


@pytest.fixture
def chain3() -> Pattern:
    """Three-state chain x0 -> x1 -> x2 (entry (i, j) means edge j -> i)."""
    return Pattern(3, 3, [(1, 0), (2, 1)])
