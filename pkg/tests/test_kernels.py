from __future__ import annotations

import itertools
import random
import subprocess
import sys

import numpy as np
import pytest

from lambdastar import _pykernels, kernels
from lambdastar.multiword import coordinate_words

try:
    from lambdastar import _ckernels
except ImportError:  # pragma: no cover - exercised only without a compiler
    _ckernels = None


def _naive_free(coords, forbidden):
    for f in forbidden:
        if all(fc in c for fc, c in zip(f, coords)):
            return False
    return True


def _workload(seed):
    rng = random.Random(seed)
    grid = list(itertools.product(coordinate_words(2, 3), coordinate_words(3, 2)))
    forbidden = []
    for _ in range(rng.randint(1, 5)):
        f = (bytes(rng.randrange(2) for _ in range(rng.randint(0, 2))),
             bytes(rng.randrange(3) for _ in range(rng.randint(0, 2))))
        if any(f):
            forbidden.append(f)
    return grid, forbidden


@pytest.mark.parametrize("seed", range(8))
def test_python_kernel_matches_naive(seed):
    grid, forbidden = _workload(seed)
    mask = _pykernels.member_mask(grid, forbidden)
    assert list(mask) == [_naive_free(w, forbidden) for w in grid]


@pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")
@pytest.mark.parametrize("seed", range(8))
def test_backends_agree(seed):
    grid, forbidden = _workload(seed)
    assert np.array_equal(_ckernels.member_mask(grid, forbidden), _pykernels.member_mask(grid, forbidden))
    for w in grid[:50]:
        assert bool(_ckernels.forbidden_free(w, forbidden)) == bool(_pykernels.forbidden_free(w, forbidden))
    words = coordinate_words(2, 3)
    for pattern in (b"", b"1", b"01", b"110"):
        assert np.array_equal(
            np.asarray(_ckernels.factor_matrix(words, words, pattern)),
            np.asarray(_pykernels.factor_matrix(words, words, pattern)),
        )


def test_backend_selection():
    assert kernels.BACKEND in ("cython", "python")
    out = subprocess.run(
        [sys.executable, "-c", "from lambdastar import kernels; print(kernels.BACKEND)"],
        env={"LAMBDASTAR_PURE_PYTHON": "1", "PATH": ""},
        capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
