"""Exhaustive enumeration kernels: CNF model counting and layer-by-layer extension."""
from __future__ import annotations

import numpy as np

from ._accel import njit


@njit
def count_models_kernel(lits, starts, n_vars, limit, node_limit):
    """Backtracking over variables ``1..n_vars`` in index order.

    A clause is tested as soon as its highest variable is assigned.  Returns
    ``(count, exhausted)``; ``exhausted`` is 1 when ``limit`` models or
    ``node_limit`` search nodes were exceeded (count is then a lower bound).
    """
    n_cl = starts.shape[0] - 1
    # bucket clauses by their largest variable
    owner = np.zeros(n_cl, dtype=np.int64)
    for c in range(n_cl):
        mx = 0
        for k in range(starts[c], starts[c + 1]):
            v = abs(lits[k])
            if v > mx:
                mx = v
        owner[c] = mx
    bucket_n = np.zeros(n_vars + 2, dtype=np.int64)
    for c in range(n_cl):
        bucket_n[owner[c]] += 1
    bstart = np.zeros(n_vars + 2, dtype=np.int64)
    for v in range(1, n_vars + 2):
        bstart[v] = bstart[v - 1] + bucket_n[v - 1]
    order = np.zeros(n_cl, dtype=np.int64)
    fillpos = bstart.copy()
    for c in range(n_cl):
        order[fillpos[owner[c]]] = c
        fillpos[owner[c]] += 1
    # empty clauses (owner 0) make the formula unsatisfiable
    if bucket_n[0] > 0:
        return 0, 0
    if n_vars == 0:
        return 1, 0

    val = np.zeros(n_vars + 1, dtype=np.int8)
    state = np.zeros(n_vars + 2, dtype=np.int8)  # 0 untried, 1 tried 0, 2 tried both
    count = 0
    nodes = 0
    v = 1
    while v >= 1:
        if state[v] == 2:
            state[v] = 0
            v -= 1
            continue
        val[v] = state[v]
        state[v] += 1
        nodes += 1
        if node_limit > 0 and nodes > node_limit:
            return count, 1
        ok = True
        for t in range(bstart[v], bstart[v] + bucket_n[v]):
            c = order[t]
            sat = False
            for k in range(starts[c], starts[c + 1]):
                d = lits[k]
                if d > 0:
                    if val[d] == 1:
                        sat = True
                        break
                elif val[-d] == 0:
                    sat = True
                    break
            if not sat:
                ok = False
                break
        if not ok:
            continue
        if v == n_vars:
            count += 1
            if limit > 0 and count > limit:
                return count, 1
            continue
        v += 1
    return count, 0


@njit
def extend_kernel(configs, owner_pos, arity, pred, layer_ends, collect_layer, collect_out, node_limit):
    """Depth-first extension of colorings along a layered cell order.

    ``configs`` rows hold positions in the layer order (0-based); row ``i``
    is checked once position ``owner_pos[i]`` (its largest) is colored, so
    every extension only tests configurations touching the new cells.  Rows
    must be sorted by ``owner_pos``.  ``pred``: 0 not-monochromatic, 1
    balanced (exactly two black of four), 2 odd parity.

    ``counts[l]`` is the number of valid colorings of the first
    ``layer_ends[l]`` positions.  Colorings of layer ``collect_layer`` are
    written to ``collect_out`` (as position-order bit rows) while room lasts.
    Returns ``(counts, n_collected, exhausted)``.
    """
    n_pos = layer_ends[layer_ends.shape[0] - 1]
    n_layers = layer_ends.shape[0]
    counts = np.zeros(n_layers, dtype=np.int64)
    if n_pos == 0:
        return counts, 0, 0
    n_cfg = configs.shape[0]
    bstart = np.zeros(n_pos + 1, dtype=np.int64)
    for i in range(n_cfg):
        bstart[owner_pos[i] + 1] += 1
    for p in range(n_pos):
        bstart[p + 1] += bstart[p]
    layer_of_end = np.full(n_pos + 1, -1, dtype=np.int64)
    for l in range(n_layers):
        layer_of_end[layer_ends[l]] = l
    col = np.zeros(n_pos, dtype=np.int8)
    state = np.zeros(n_pos + 1, dtype=np.int8)
    n_coll = 0
    nodes = 0
    p = 0
    while p >= 0:
        if state[p] == 2:
            state[p] = 0
            p -= 1
            continue
        col[p] = state[p]
        state[p] += 1
        nodes += 1
        if node_limit > 0 and nodes > node_limit:
            return counts, n_coll, 1
        ok = True
        for i in range(bstart[p], bstart[p + 1]):
            s = 0
            for j in range(arity):
                s += col[configs[i, j]]
            if pred == 0:
                bad = s == 0 or s == arity
            elif pred == 1:
                bad = s != 2
            else:
                bad = s % 2 == 0
            if bad:
                ok = False
                break
        if not ok:
            continue
        l = layer_of_end[p + 1]
        if l >= 0:
            counts[l] += 1
            if l == collect_layer and n_coll < collect_out.shape[0]:
                for q in range(p + 1):
                    collect_out[n_coll, q] = col[q]
                n_coll += 1
        if p + 1 == n_pos:
            continue
        p += 1
    return counts, n_coll, 0
