# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled token-stream kernels; float-identical twin of ``pykernels``.

Integer accumulation mirrors the pure version exactly so the two backends
agree bit for bit. Inputs are int32 numpy arrays of interned lemma ids.
"""

import numpy as np

NAME = "cython"


def mattr_sum(int[:] ids, int window, int vocab_size):
    cdef Py_ssize_t n = ids.shape[0]
    cdef long[:] counts = np.zeros(vocab_size, dtype=np.int64)
    cdef long distinct = 0
    cdef long long total = 0
    cdef Py_ssize_t i
    cdef int out
    for i in range(window):
        if counts[ids[i]] == 0:
            distinct += 1
        counts[ids[i]] += 1
    total = distinct
    for i in range(window, n):
        out = ids[i - window]
        counts[out] -= 1
        if counts[out] == 0:
            distinct -= 1
        if counts[ids[i]] == 0:
            distinct += 1
        counts[ids[i]] += 1
        total += distinct
    return int(total), int(n - window + 1)


def mtld_factor_count(int[:] ids, double threshold, int vocab_size):
    cdef Py_ssize_t n = ids.shape[0]
    cdef long[:] stamp = np.zeros(vocab_size, dtype=np.int64)
    cdef long epoch = 1
    cdef double factors = 0.0
    cdef long seg_len = 0
    cdef long distinct = 0
    cdef Py_ssize_t i
    cdef int tid
    cdef double ttr
    for i in range(n):
        tid = ids[i]
        seg_len += 1
        if stamp[tid] != epoch:
            stamp[tid] = epoch
            distinct += 1
        if (<double> distinct) / (<double> seg_len) < threshold:
            factors += 1.0
            epoch += 1
            seg_len = 0
            distinct = 0
    if seg_len > 0:
        ttr = (<double> distinct) / (<double> seg_len)
        factors += (1.0 - ttr) / (1.0 - threshold)
    return factors


def ngram_overlap(int[:] cand, int[:] ref, int n):
    """Clipped multiset n-gram overlap via sorted packed keys.

    Requires n <= 4 and vocab ids < 2**15 (the dispatching wrapper falls back
    to the pure backend otherwise).
    """
    cdef Py_ssize_t ref_total = ref.shape[0] - n + 1
    cdef Py_ssize_t cand_total = cand.shape[0] - n + 1
    if ref_total < 1:
        return 0, 0
    if cand_total < 1:
        return 0, int(ref_total)

    cdef unsigned long long[:] ref_keys = np.empty(ref_total, dtype=np.uint64)
    cdef unsigned long long[:] cand_keys = np.empty(cand_total, dtype=np.uint64)
    cdef Py_ssize_t i, j
    cdef unsigned long long key
    for i in range(ref_total):
        key = 0
        for j in range(n):
            key = (key << 15) | <unsigned long long> ref[i + j]
        ref_keys[i] = key
    for i in range(cand_total):
        key = 0
        for j in range(n):
            key = (key << 15) | <unsigned long long> cand[i + j]
        cand_keys[i] = key

    ref_sorted = np.sort(np.asarray(ref_keys))
    cand_sorted = np.sort(np.asarray(cand_keys))
    cdef unsigned long long[:] rs = ref_sorted
    cdef unsigned long long[:] cs = cand_sorted

    cdef Py_ssize_t a = 0, b = 0
    cdef long long match = 0
    while a < cand_total and b < ref_total:
        if cs[a] == rs[b]:
            match += 1
            a += 1
            b += 1
        elif cs[a] < rs[b]:
            a += 1
        else:
            b += 1
    return int(match), int(ref_total)
