# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; the pure-Python reference lives in ``_pykernels``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def leq_matrix(int n, up_ptr, up_idx):
    cdef int[::1] ptr = np.ascontiguousarray(up_ptr, dtype=np.int32)
    cdef int[::1] idx = np.ascontiguousarray(up_idx, dtype=np.int32)
    cdef int[::1] indeg = np.zeros(n, dtype=np.int32)
    cdef int[::1] stack = np.empty(max(n, 1), dtype=np.int32)
    cdef int[::1] order = np.empty(max(n, 1), dtype=np.int32)
    cdef int top = 0, cnt = 0, v, w, k, i
    out = np.zeros((n, n), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] leq = out
    for k in range(ptr[n]):
        indeg[idx[k]] += 1
    for v in range(n):
        if indeg[v] == 0:
            stack[top] = v
            top += 1
    while top > 0:
        top -= 1
        v = stack[top]
        order[cnt] = v
        cnt += 1
        for k in range(ptr[v], ptr[v + 1]):
            w = idx[k]
            indeg[w] -= 1
            if indeg[w] == 0:
                stack[top] = w
                top += 1
    if cnt != n:
        return None
    for i in range(n - 1, -1, -1):
        v = order[i]
        leq[v, v] = 1
        for k in range(ptr[v], ptr[v + 1]):
            w = idx[k]
            for cnt in range(n):
                if leq[w, cnt]:
                    leq[v, cnt] = 1
    return out


def join_meet_tables(leq_in):
    cdef cnp.uint8_t[:, ::1] leq = np.ascontiguousarray(leq_in, dtype=np.uint8)
    cdef int n = leq.shape[0]
    join_a = np.full((n, n), -1, dtype=np.int32)
    meet_a = np.full((n, n), -1, dtype=np.int32)
    cdef int[:, ::1] join = join_a
    cdef int[:, ::1] meet = meet_a
    cdef int x, y, c, d, ok
    for x in range(n):
        for y in range(x, n):
            for c in range(n):
                if leq[x, c] and leq[y, c]:
                    ok = 1
                    for d in range(n):
                        if leq[x, d] and leq[y, d] and not leq[c, d]:
                            ok = 0
                            break
                    if ok:
                        join[x, y] = c
                        join[y, x] = c
                        break
            for c in range(n):
                if leq[c, x] and leq[c, y]:
                    ok = 1
                    for d in range(n):
                        if leq[d, x] and leq[d, y] and not leq[d, c]:
                            ok = 0
                            break
                    if ok:
                        meet[x, y] = c
                        meet[y, x] = c
                        break
    return join_a, meet_a


def count_faces(int n, rot_ptr, rot_idx):
    cdef int[::1] ptr = np.ascontiguousarray(rot_ptr, dtype=np.int32)
    cdef int[::1] idx = np.ascontiguousarray(rot_idx, dtype=np.int32)
    cdef int m = ptr[n]
    cdef int[::1] twin = np.full(max(m, 1), -1, dtype=np.int32)
    cdef cnp.uint8_t[::1] seen = np.zeros(max(m, 1), dtype=np.uint8)
    cdef int v, k, b, j, faces = 0, d, deg
    for v in range(n):
        for k in range(ptr[v], ptr[v + 1]):
            b = idx[k]
            for j in range(ptr[b], ptr[b + 1]):
                if idx[j] == v:
                    twin[k] = j
                    break
            if twin[k] < 0:
                return -1
    for k in range(m):
        if seen[k]:
            continue
        faces += 1
        d = k
        while not seen[d]:
            seen[d] = 1
            j = twin[d]
            b = idx[d]
            deg = ptr[b + 1] - ptr[b]
            d = ptr[b] + (j - ptr[b] + 1) % deg
    return faces


def semimodular(int n, up_ptr, up_idx, join_in):
    cdef int[::1] ptr = np.ascontiguousarray(up_ptr, dtype=np.int32)
    cdef int[::1] idx = np.ascontiguousarray(up_idx, dtype=np.int32)
    cdef int[:, ::1] join = np.ascontiguousarray(join_in, dtype=np.int32)
    cdef int o, i, k, a, b, j, t, found
    for o in range(n):
        for i in range(ptr[o], ptr[o + 1]):
            a = idx[i]
            for k in range(i + 1, ptr[o + 1]):
                b = idx[k]
                j = join[a, b]
                found = 0
                for t in range(ptr[a], ptr[a + 1]):
                    if idx[t] == j:
                        found = 1
                if not found:
                    return False
                found = 0
                for t in range(ptr[b], ptr[b + 1]):
                    if idx[t] == j:
                        found = 1
                if not found:
                    return False
    return True
