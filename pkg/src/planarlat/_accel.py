"""Kernel selection: compiled ``_ckernels`` when importable, else ``_pykernels``.

Set ``PLANARLAT_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
kernels = _pykernels

if not os.environ.get("PLANARLAT_PURE_PYTHON"):
    try:
        from . import _ckernels
    except ImportError:
        pass
    else:
        kernels = _ckernels
        BACKEND = "cython"


def csr(lists):
    """Flatten a list of adjacency lists into (ptr, idx) int lists."""
    ptr = [0]
    idx = []
    for row in lists:
        idx.extend(row)
        ptr.append(len(idx))
    return ptr, idx


def leq_matrix(adj):
    ptr, idx = csr(adj)
    return kernels.leq_matrix(len(adj), ptr, idx)


def join_meet_tables(leq):
    return kernels.join_meet_tables(leq)


def count_faces(rot):
    ptr, idx = csr(rot)
    return kernels.count_faces(len(rot), ptr, idx)


def semimodular(up, join):
    ptr, idx = csr(up)
    return kernels.semimodular(len(up), ptr, idx, join)
