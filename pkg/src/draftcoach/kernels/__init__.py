"""Token-stream kernels with a compiled fast path.

At import time the package picks the Cython extension when it was built and
``DRAFTCOACH_PURE_PYTHON`` is not set; otherwise the pure-Python reference
implementation. Both produce bit-identical floats. ``backend_name()`` reports
the active choice; the benchmark script compares the two directly.
"""

from __future__ import annotations

import importlib
import os
from typing import Hashable, Sequence

import numpy as np

from . import pykernels

_ckernels = None
if not os.environ.get("DRAFTCOACH_PURE_PYTHON"):
    try:
        _ckernels = importlib.import_module("draftcoach.kernels._ckernels")
    except ImportError:
        _ckernels = None

_impl = _ckernels if _ckernels is not None else pykernels

# ngram key packing in the extension uses 15 bits per id, up to 4 ids
_C_NGRAM_MAX_N = 4
_C_NGRAM_MAX_VOCAB = 1 << 15


def backend_name() -> str:
    return _impl.NAME


def intern_ids(items: Sequence[Hashable]) -> tuple[np.ndarray, int]:
    """Map hashables to dense int ids in first-seen order."""
    table: dict[Hashable, int] = {}
    out = np.empty(len(items), dtype=np.int32)
    for i, item in enumerate(items):
        out[i] = table.setdefault(item, len(table))
    return out, len(table)


def ttr(ids: np.ndarray, vocab_size: int) -> float:
    """Type-token ratio; caller guarantees a non-empty stream."""
    return vocab_size / len(ids)


def mattr(ids: np.ndarray, window: int, vocab_size: int) -> float:
    """Moving-average TTR; equals plain TTR when the stream fits one window."""
    if len(ids) <= window:
        return len(np.unique(ids)) / len(ids)
    total, n_windows = _impl.mattr_sum(ids, window, vocab_size)
    return total / (n_windows * window)


def mtld(ids: np.ndarray, threshold: float, vocab_size: int) -> float:
    """Bidirectional MTLD.

    Each direction yields token_count / factor_count; a direction with zero
    factors (text never dips below the threshold) is defined as token_count.
    """
    n = len(ids)
    fwd = _impl.mtld_factor_count(ids, threshold, vocab_size)
    bwd = _impl.mtld_factor_count(ids[::-1].copy(), threshold, vocab_size)
    v_fwd = n / fwd if fwd > 0 else float(n)
    v_bwd = n / bwd if bwd > 0 else float(n)
    return (v_fwd + v_bwd) / 2.0


def ngram_overlap(cand: np.ndarray, ref: np.ndarray, n: int, vocab_size: int) -> tuple[int, int]:
    """Clipped multiset n-gram overlap: (matched ref n-grams, total ref n-grams)."""
    if _impl is not pykernels and (n > _C_NGRAM_MAX_N or vocab_size >= _C_NGRAM_MAX_VOCAB):
        return pykernels.ngram_overlap(cand, ref, n)
    return _impl.ngram_overlap(cand, ref, n)


def get_backend(name: str):
    """Fetch a backend module by name ('python' or 'cython'); for benchmarks/tests."""
    if name == "python":
        return pykernels
    if name == "cython":
        if _ckernels is None:
            raise RuntimeError("compiled kernel extension is not available")
        return _ckernels
    raise ValueError(f"unknown backend {name!r}")


def available_backends() -> list[str]:
    names = ["python"]
    if _ckernels is not None:
        names.append("cython")
    return names
