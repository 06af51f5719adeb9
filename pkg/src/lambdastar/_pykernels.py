"""Pure-Python kernels; the reference for the compiled ``_ckernels``."""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def forbidden_free(coords, forbidden):
    """True iff no forbidden tuple occurs coordinatewise in ``coords``."""
    for f in forbidden:
        for a, b in zip(f, coords):
            if a not in b:
                break
        else:
            return False
    return True


def member_mask(words, forbidden):
    """forbidden_free over a batch; returns a uint8 array."""
    return np.fromiter(
        (forbidden_free(w, forbidden) for w in words), dtype=np.uint8, count=len(words)
    )


def factor_matrix(lefts, rights, pattern):
    """M[a, b] = 1 iff ``pattern`` is a factor of ``lefts[a] + rights[b]``."""
    out = np.zeros((len(lefts), len(rights)), dtype=np.uint8)
    for a, left in enumerate(lefts):
        row = out[a]
        for b, right in enumerate(rights):
            if pattern in left + right:
                row[b] = 1
    return out
