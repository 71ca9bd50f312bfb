import numpy as np
import pytest

from chancap import SeededRng


@pytest.fixture
def gen():
    """Fresh deterministic generator per test."""
    return SeededRng(1234).split("tests").generator()


def random_hermitian(gen, dim):
    g = gen.standard_normal((dim, dim)) + 1j * gen.standard_normal((dim, dim))
    return (g + g.conj().T) / 2


def random_traceless_hermitian(gen, dim):
    h = random_hermitian(gen, dim)
    h -= np.trace(h) * np.eye(dim) / dim
    return h / np.linalg.norm(h)
