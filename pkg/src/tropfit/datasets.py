"""Bundled demo data: samples of a convex test function on [1, 3]."""
import numpy as np

from .semifield import MAX_PLUS, Semifield


def test_function(x):
    """``(x - 3/4)^2 - 3 (x - 1)^(1/2) + 2``, defined for x >= 1."""
    x = np.asarray(x, dtype=float)
    return (x - 0.75) ** 2 - 3.0 * np.sqrt(x - 1.0) + 2.0


test_function.__test__ = False  # not a pytest test


def demo_xy(m: int = 21) -> tuple[np.ndarray, np.ndarray]:
    """``m`` equally spaced abscissas starting at 1 with step 1/10, and their values."""
    xs = 1.0 + np.arange(m) / 10.0
    return xs, test_function(xs)


def demo_samples(m: int = 21, tag: Semifield = MAX_PLUS):
    from .fitter import SampleSet

    xs, ys = demo_xy(m)
    return SampleSet(xs, ys, tag)
