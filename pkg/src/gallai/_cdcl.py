"""Conflict-driven clause-learning kernel.

Literal codes are ``2*v`` (true) and ``2*v + 1`` (false) for variable
``v >= 1``.  Watches are intrusive singly linked lists: watcher node
``2*c + w`` sits in the list of the literal in slot ``w`` of clause ``c``.
Clause-database reduction happens only at decision level 0, so reasons can
be dropped and clause ids renumbered freely.

The kernel is resumable: on budget exhaustion it returns its learnt clauses
(level-0 units included), and the caller's ``act``/``phase`` arrays keep
their updated values, so a follow-up call continues from a restart.
"""
from __future__ import annotations

import numpy as np

from ._accel import njit

SAT = 10
UNSAT = 20
UNKNOWN = 0


@njit
def _heap_up(heap, hpos, act, i):
    v = heap[i]
    while i > 0:
        parent = (i - 1) >> 1
        u = heap[parent]
        if act[u] >= act[v]:
            break
        heap[i] = u
        hpos[u] = i
        i = parent
    heap[i] = v
    hpos[v] = i


@njit
def _heap_down(heap, hpos, act, size, i):
    v = heap[i]
    while True:
        child = 2 * i + 1
        if child >= size:
            break
        if child + 1 < size and act[heap[child + 1]] > act[heap[child]]:
            child += 1
        u = heap[child]
        if act[u] <= act[v]:
            break
        heap[i] = u
        hpos[u] = i
        i = child
    heap[i] = v
    hpos[v] = i


@njit
def _luby(i):
    # i-th element (0-based) of 1,1,2,1,1,2,4,...
    size = 1
    seq = 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


@njit
def solve_kernel(lits, starts, n_orig, n_vars, act, phase, conflict_limit, seed):
    """Run CDCL for at most ``conflict_limit`` conflicts (``<= 0``: unlimited).

    Returns ``(status, assign, learnt_lits, learnt_starts, stats)`` where
    ``stats = [conflicts, decisions, propagations, restarts]`` and
    ``learnt_*`` use DIMACS literals.
    """
    n_in = starts.shape[0] - 1
    stats = np.zeros(4, dtype=np.int64)
    assign = np.full(n_vars + 1, -1, dtype=np.int8)

    cap = max(2 * n_in + 16, 1024)
    cl_start = np.zeros(cap, dtype=np.int64)
    cl_len = np.zeros(cap, dtype=np.int64)
    cl_learnt = np.zeros(cap, dtype=np.uint8)
    cl_lbd = np.zeros(cap, dtype=np.int64)
    cl_act = np.zeros(cap, dtype=np.float64)
    acap = max(2 * lits.shape[0] + 64, 4096)
    arena = np.zeros(acap, dtype=np.int64)
    top = 0
    n_cl = 0

    n_lits = 2 * n_vars + 2
    w_head = np.full(n_lits, -1, dtype=np.int64)
    w_next = np.full(2 * cap, -1, dtype=np.int64)

    trail = np.zeros(n_vars + 1, dtype=np.int64)
    trail_lim = np.zeros(n_vars + 2, dtype=np.int64)
    level = np.zeros(n_vars + 1, dtype=np.int64)
    reason = np.full(n_vars + 1, -1, dtype=np.int64)
    seen = np.zeros(n_vars + 1, dtype=np.uint8)
    lvl_stamp = np.zeros(n_vars + 2, dtype=np.int64)
    stamp = 0
    lbuf = np.zeros(n_vars + 1, dtype=np.int64)
    kbuf = np.zeros(n_vars + 1, dtype=np.uint8)
    trail_len = 0
    qhead = 0
    dl = 0

    heap = np.zeros(n_vars + 1, dtype=np.int64)
    hpos = np.full(n_vars + 1, -1, dtype=np.int64)
    hsize = 0
    rng = np.uint64(seed * 2654435761 + 88172645463325252)
    if seed != 0:
        for v in range(1, n_vars + 1):
            rng ^= rng << np.uint64(13)
            rng ^= rng >> np.uint64(7)
            rng ^= rng << np.uint64(17)
            act[v] += float(rng % np.uint64(1000)) * 1e-9
    for v in range(1, n_vars + 1):
        heap[hsize] = v
        hpos[v] = hsize
        hsize += 1
        _heap_up(heap, hpos, act, hsize - 1)
    var_inc = 1.0
    cla_inc = 1.0

    status = UNKNOWN
    root_conflict = False

    # ---- load clauses: drop duplicate literals and tautologies
    mark = np.zeros(n_lits, dtype=np.int64)
    mstamp = 0
    for c in range(n_in):
        mstamp += 1
        taut = False
        s0 = top
        for k in range(starts[c], starts[c + 1]):
            d = lits[k]
            code = 2 * d if d > 0 else -2 * d + 1
            if mark[code ^ 1] == mstamp:
                taut = True
                break
            if mark[code] != mstamp:
                mark[code] = mstamp
                arena[top] = code
                top += 1
        if taut:
            top = s0
            continue
        ln = top - s0
        if ln == 0:
            root_conflict = True
            continue
        if ln == 1:
            top = s0
            code = arena[s0]
            v = code >> 1
            want = 1 - (code & 1)
            if assign[v] < 0:
                assign[v] = want
                level[v] = 0
                reason[v] = -1
                trail[trail_len] = code
                trail_len += 1
            elif assign[v] != want:
                root_conflict = True
            continue
        cl_start[n_cl] = s0
        cl_len[n_cl] = ln
        cl_learnt[n_cl] = 1 if c >= n_orig else 0
        cl_lbd[n_cl] = ln
        for w in range(2):
            node = 2 * n_cl + w
            lit = arena[s0 + w]
            w_next[node] = w_head[lit]
            w_head[lit] = node
        n_cl += 1
    if root_conflict:
        return UNSAT, assign, np.zeros(0, dtype=np.int64), np.zeros(1, dtype=np.int64), stats

    n_learnt = 0
    for c in range(n_cl):
        if cl_learnt[c]:
            n_learnt += 1
    n_orig_kept = n_cl - n_learnt
    max_learnts = max(n_orig_kept // 3, 2000) + n_learnt
    restart_idx = 0
    restart_limit = 100 * _luby(0)
    since_restart = 0
    want_restart = False

    while True:
        # ---------------- propagate
        confl = -1
        while qhead < trail_len:
            p = trail[qhead]
            qhead += 1
            stats[2] += 1
            f = p ^ 1
            prev = -1
            node = w_head[f]
            while node != -1:
                nxt = w_next[node]
                c = node >> 1
                w = node & 1
                s = cl_start[c]
                other = arena[s + 1 - w]
                a = assign[other >> 1]
                ov = -1 if a < 0 else (a ^ (other & 1))
                if ov == 1:
                    prev = node
                    node = nxt
                    continue
                found = -1
                for k in range(s + 2, s + cl_len[c]):
                    q = arena[k]
                    aq = assign[q >> 1]
                    if aq < 0 or (aq ^ (q & 1)) == 1:
                        found = k
                        break
                if found >= 0:
                    newlit = arena[found]
                    arena[found] = arena[s + w]
                    arena[s + w] = newlit
                    if prev == -1:
                        w_head[f] = nxt
                    else:
                        w_next[prev] = nxt
                    w_next[node] = w_head[newlit]
                    w_head[newlit] = node
                    node = nxt
                    continue
                prev = node
                if ov == 0:
                    confl = c
                    break
                v = other >> 1
                assign[v] = 1 - (other & 1)
                level[v] = dl
                reason[v] = c
                trail[trail_len] = other
                trail_len += 1
                node = nxt
            if confl >= 0:
                qhead = trail_len
                break

        if confl >= 0:
            stats[0] += 1
            since_restart += 1
            if dl == 0:
                status = UNSAT
                break
            # ---------------- 1UIP analysis
            path = 0
            p = -1
            idx = trail_len - 1
            blen = 1
            c = confl
            while True:
                if cl_learnt[c]:
                    cl_act[c] += cla_inc
                s = cl_start[c]
                for k in range(s, s + cl_len[c]):
                    q = arena[k]
                    if q == p:
                        continue
                    v = q >> 1
                    if seen[v] == 0 and level[v] > 0:
                        seen[v] = 1
                        act[v] += var_inc
                        if hpos[v] >= 0:
                            _heap_up(heap, hpos, act, hpos[v])
                        if act[v] > 1e100:
                            for u in range(1, n_vars + 1):
                                act[u] *= 1e-100
                            var_inc *= 1e-100
                        if level[v] >= dl:
                            path += 1
                        else:
                            lbuf[blen] = q
                            blen += 1
                while seen[trail[idx] >> 1] == 0:
                    idx -= 1
                p = trail[idx]
                idx -= 1
                v = p >> 1
                c = reason[v]
                seen[v] = 0
                path -= 1
                if path == 0:
                    break
            lbuf[0] = p ^ 1
            # local minimisation: drop literals implied by other clause literals
            for i in range(1, blen):
                q = lbuf[i]
                r = reason[q >> 1]
                keep = 1
                if r >= 0:
                    keep = 0
                    rs = cl_start[r]
                    for k in range(rs, rs + cl_len[r]):
                        u = arena[k] >> 1
                        if u == (q >> 1):
                            continue
                        if seen[u] == 0 and level[u] > 0:
                            keep = 1
                            break
                kbuf[i] = keep
            for i in range(1, blen):
                seen[lbuf[i] >> 1] = 0
            j = 1
            for i in range(1, blen):
                if kbuf[i]:
                    lbuf[j] = lbuf[i]
                    j += 1
            blen = j
            # backjump level = highest level among the rest, moved to slot 1
            bt = 0
            if blen > 1:
                mi = 1
                for i in range(2, blen):
                    if level[lbuf[i] >> 1] > level[lbuf[mi] >> 1]:
                        mi = i
                tmp = lbuf[1]
                lbuf[1] = lbuf[mi]
                lbuf[mi] = tmp
                bt = level[lbuf[1] >> 1]
            stamp += 1
            lbd = 0
            for i in range(blen):
                lv = level[lbuf[i] >> 1]
                if lvl_stamp[lv] != stamp:
                    lvl_stamp[lv] = stamp
                    lbd += 1
            # backtrack
            if dl > bt:
                lim = trail_lim[bt]
                for t in range(trail_len - 1, lim - 1, -1):
                    v = trail[t] >> 1
                    phase[v] = assign[v]
                    assign[v] = -1
                    reason[v] = -1
                    if hpos[v] < 0:
                        heap[hsize] = v
                        hpos[v] = hsize
                        hsize += 1
                        _heap_up(heap, hpos, act, hsize - 1)
                trail_len = lim
                qhead = lim
                dl = bt
            asserting = lbuf[0]
            if blen == 1:
                v = asserting >> 1
                assign[v] = 1 - (asserting & 1)
                level[v] = 0
                reason[v] = -1
                trail[trail_len] = asserting
                trail_len += 1
            else:
                if n_cl >= cap:
                    ncap = 2 * cap
                    t1 = np.zeros(ncap, dtype=np.int64)
                    t1[:cap] = cl_start
                    cl_start = t1
                    t2 = np.zeros(ncap, dtype=np.int64)
                    t2[:cap] = cl_len
                    cl_len = t2
                    t3 = np.zeros(ncap, dtype=np.uint8)
                    t3[:cap] = cl_learnt
                    cl_learnt = t3
                    t4 = np.zeros(ncap, dtype=np.int64)
                    t4[:cap] = cl_lbd
                    cl_lbd = t4
                    t5 = np.zeros(ncap, dtype=np.float64)
                    t5[:cap] = cl_act
                    cl_act = t5
                    t6 = np.full(2 * ncap, -1, dtype=np.int64)
                    t6[:2 * cap] = w_next
                    w_next = t6
                    cap = ncap
                if top + blen > acap:
                    nacap = 2 * acap + blen
                    ta = np.zeros(nacap, dtype=np.int64)
                    ta[:top] = arena[:top]
                    arena = ta
                    acap = nacap
                s = top
                for i in range(blen):
                    arena[top] = lbuf[i]
                    top += 1
                c = n_cl
                n_cl += 1
                n_learnt += 1
                cl_start[c] = s
                cl_len[c] = blen
                cl_learnt[c] = 1
                cl_lbd[c] = lbd
                cl_act[c] = cla_inc
                for w in range(2):
                    node = 2 * c + w
                    lit = arena[s + w]
                    w_next[node] = w_head[lit]
                    w_head[lit] = node
                v = asserting >> 1
                assign[v] = 1 - (asserting & 1)
                level[v] = dl
                reason[v] = c
                trail[trail_len] = asserting
                trail_len += 1
            var_inc /= 0.95
            cla_inc /= 0.999
            if cla_inc > 1e20:
                for c2 in range(n_cl):
                    cl_act[c2] *= 1e-20
                cla_inc *= 1e-20
            if since_restart >= restart_limit or n_learnt >= max_learnts:
                want_restart = True
            if conflict_limit > 0 and stats[0] >= conflict_limit:
                break
            continue

        # ---------------- no conflict
        if want_restart:
            want_restart = False
            stats[3] += 1
            restart_idx += 1
            restart_limit = 100 * _luby(restart_idx)
            since_restart = 0
            if dl > 0:
                lim = trail_lim[0]
                for t in range(trail_len - 1, lim - 1, -1):
                    v = trail[t] >> 1
                    phase[v] = assign[v]
                    assign[v] = -1
                    reason[v] = -1
                    if hpos[v] < 0:
                        heap[hsize] = v
                        hpos[v] = hsize
                        hsize += 1
                        _heap_up(heap, hpos, act, hsize - 1)
                trail_len = lim
                qhead = lim
                dl = 0
            if n_learnt >= max_learnts:
                # ---- reduce: keep the better half of learnt clauses by (lbd, activity)
                for t in range(trail_len):
                    reason[trail[t] >> 1] = -1
                ids = np.zeros(n_learnt, dtype=np.int64)
                score = np.zeros(n_learnt, dtype=np.float64)
                nl = 0
                for c in range(n_cl):
                    if cl_learnt[c]:
                        ids[nl] = c
                        score[nl] = cl_lbd[c] * 1e6 - min(cl_act[c] / cla_inc, 1.0) * 1e5
                        nl += 1
                order = np.argsort(score[:nl], kind="mergesort")
                drop = np.zeros(n_cl, dtype=np.uint8)
                for t in range(nl // 2, nl):
                    c = ids[order[t]]
                    if cl_lbd[c] > 2 and cl_len[c] > 2:
                        drop[c] = 1
                ntop = 0
                nn = 0
                narena = np.zeros(acap, dtype=np.int64)
                for c in range(n_cl):
                    if drop[c]:
                        continue
                    s = cl_start[c]
                    ln = cl_len[c]
                    for k in range(ln):
                        narena[ntop + k] = arena[s + k]
                    cl_start[nn] = ntop
                    cl_len[nn] = ln
                    cl_learnt[nn] = cl_learnt[c]
                    cl_lbd[nn] = cl_lbd[c]
                    cl_act[nn] = cl_act[c]
                    ntop += ln
                    nn += 1
                arena = narena
                top = ntop
                n_cl = nn
                n_learnt = nn - n_orig_kept
                for lit in range(n_lits):
                    w_head[lit] = -1
                for c in range(n_cl):
                    s = cl_start[c]
                    for w in range(2):
                        node = 2 * c + w
                        lit = arena[s + w]
                        w_next[node] = w_head[lit]
                        w_head[lit] = node
                max_learnts = n_learnt + max(n_orig_kept // 3, 2000) + stats[3] * 50
                # re-propagate the root trail so every watch is consistent again
                qhead = 0
            continue

        # ---------------- decide
        v = 0
        while hsize > 0:
            top_v = heap[0]
            hsize -= 1
            hpos[top_v] = -1
            if hsize > 0:
                heap[0] = heap[hsize]
                hpos[heap[0]] = 0
                _heap_down(heap, hpos, act, hsize, 0)
            if assign[top_v] < 0:
                v = top_v
                break
        if v == 0:
            status = SAT
            break
        stats[1] += 1
        trail_lim[dl] = trail_len
        dl += 1
        lit = 2 * v + (1 - phase[v])
        assign[v] = phase[v]
        level[v] = dl
        reason[v] = -1
        trail[trail_len] = lit
        trail_len += 1

    # ---- export learnt clauses (and root units) for resumption
    n_out = 0
    tot = 0
    for c in range(n_cl):
        if cl_learnt[c]:
            n_out += 1
            tot += cl_len[c]
    root_units = 0
    for t in range(trail_len):
        if level[trail[t] >> 1] == 0:
            root_units += 1
    out_lits = np.zeros(tot + root_units, dtype=np.int64)
    out_starts = np.zeros(n_out + root_units + 1, dtype=np.int64)
    pos = 0
    ci = 0
    for c in range(n_cl):
        if cl_learnt[c]:
            s = cl_start[c]
            for k in range(cl_len[c]):
                code = arena[s + k]
                out_lits[pos] = (code >> 1) if (code & 1) == 0 else -(code >> 1)
                pos += 1
            ci += 1
            out_starts[ci] = pos
    for t in range(trail_len):
        code = trail[t]
        if level[code >> 1] == 0:
            out_lits[pos] = (code >> 1) if (code & 1) == 0 else -(code >> 1)
            pos += 1
            ci += 1
            out_starts[ci] = pos
    return status, assign, out_lits, out_starts, stats
