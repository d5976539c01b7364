"""Pure-Python kernels. Same signatures as the compiled ``_ckernels`` module.

All graph inputs use CSR form: ``ptr`` has length n+1 and the neighbours of
vertex ``v`` are ``idx[ptr[v]:ptr[v+1]]``.
"""

import numpy as np


def leq_matrix(n, up_ptr, up_idx):
    """Reflexive-transitive closure of the cover relation as an n x n uint8 matrix.

    Returns ``None`` when the cover graph has a directed cycle.
    """
    up_ptr = [int(v) for v in up_ptr]
    up_idx = [int(v) for v in up_idx]
    indeg = [0] * n
    for v in up_idx:
        indeg[v] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for k in range(up_ptr[v], up_ptr[v + 1]):
            w = up_idx[k]
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(order) != n:
        return None
    masks = [0] * n
    for v in reversed(order):
        m = 1 << v
        for k in range(up_ptr[v], up_ptr[v + 1]):
            m |= masks[up_idx[k]]
        masks[v] = m
    out = np.zeros((n, n), dtype=np.uint8)
    for v in range(n):
        m = masks[v]
        for w in range(n):
            if (m >> w) & 1:
                out[v, w] = 1
    return out


def join_meet_tables(leq):
    """Least upper / greatest lower bound tables; -1 marks a missing bound."""
    n = leq.shape[0]
    rows = [int.from_bytes(np.packbits(leq[v], bitorder="little").tobytes(), "little") for v in range(n)]
    cols = [int.from_bytes(np.packbits(leq[:, v], bitorder="little").tobytes(), "little") for v in range(n)]
    join = np.full((n, n), -1, dtype=np.int32)
    meet = np.full((n, n), -1, dtype=np.int32)
    for x in range(n):
        for y in range(x, n):
            common = rows[x] & rows[y]
            j = -1
            z = common
            while z:
                low = z & -z
                c = low.bit_length() - 1
                if rows[c] & common == common:
                    j = c
                    break
                z ^= low
            join[x, y] = join[y, x] = j
            common = cols[x] & cols[y]
            m = -1
            z = common
            while z:
                low = z & -z
                c = low.bit_length() - 1
                if cols[c] & common == common:
                    m = c
                    break
                z ^= low
            meet[x, y] = meet[y, x] = m
    return join, meet


def count_faces(n, rot_ptr, rot_idx):
    """Number of faces of the rotation system (successor rule ``rot(v)[i+1]``)."""
    rot_ptr = [int(v) for v in rot_ptr]
    rot_idx = [int(v) for v in rot_idx]
    # position of u inside rot(v), keyed by dart index of (v, u)
    pos = {}
    for v in range(n):
        for k in range(rot_ptr[v], rot_ptr[v + 1]):
            pos[(v, rot_idx[k])] = k - rot_ptr[v]
    seen = set()
    faces = 0
    for v in range(n):
        for k in range(rot_ptr[v], rot_ptr[v + 1]):
            dart = (v, rot_idx[k])
            if dart in seen:
                continue
            faces += 1
            while dart not in seen:
                seen.add(dart)
                a, b = dart
                deg = rot_ptr[b + 1] - rot_ptr[b]
                i = pos.get((b, a))
                if i is None:
                    return -1
                dart = (b, rot_idx[rot_ptr[b] + (i + 1) % deg])
    return faces


def semimodular(n, up_ptr, up_idx, join):
    """True iff a, b covering a common o always have a v b covering a."""
    up_ptr = [int(v) for v in up_ptr]
    up_idx = [int(v) for v in up_idx]
    for o in range(n):
        covers = up_idx[up_ptr[o]:up_ptr[o + 1]]
        for i, a in enumerate(covers):
            ua = up_idx[up_ptr[a]:up_ptr[a + 1]]
            for b in covers[i + 1:]:
                j = int(join[a, b])
                if j not in ua:
                    return False
                if j not in up_idx[up_ptr[b]:up_ptr[b + 1]]:
                    return False
    return True
