"""Numba kernels for the branch-and-bound enumeration.

The search walks candidate cells in a fixed order whose every prefix is
down-closed (if a cell is decided, so is everything to its lower left).
At each cell it branches on leaving the cell empty or placing a point
there, keeping a multiplicity grid of A + A up to date so that both
placement and undo cost O(|A|).

Hole test: once the last cell in the box [0, u'] x [0, v'] is decided, a
target cell (u, v) whose candidate partners all live in that box can no
longer gain a representation, so it must already be covered.  For
admissible bases the box of (u, v) is (u, v) itself; for restricted
bases it is (min(u, h_x), min(v, h_y)).  ``close_ptr``/``close_cells``
list, per order position, the target cells whose box completes there.
"""
import numpy as np
from numba import njit


@njit(cache=True, nogil=True)
def _place(x, y, W, H, px, py, j, cnt, gaps):
    px[j] = x
    py[j] = y
    j += 1
    for q in range(j):
        u = x + px[q]
        v = y + py[q]
        if u < W and v < H:
            s = v * W + u
            if cnt[s] == 0:
                gaps -= 1
            cnt[s] += 1
    return j, gaps


@njit(cache=True, nogil=True)
def _unplace(W, H, px, py, j, cnt, gaps):
    j -= 1
    x = px[j]
    y = py[j]
    for q in range(j + 1):
        u = x + px[q]
        v = y + py[q]
        if u < W and v < H:
            s = v * W + u
            cnt[s] -= 1
            if cnt[s] == 0:
                gaps += 1
    return j, gaps


@njit(cache=True, nogil=True)
def _closed_ok(i, close_ptr, close_cells, cnt):
    for t in range(close_ptr[i], close_ptr[i + 1]):
        if cnt[close_cells[t]] == 0:
            return False
    return True


@njit(cache=True, nogil=True)
def enumerate_bases(W, H, k, ord_x, ord_y, close_ptr, close_cells,
                    seed_x, seed_y, start, count_only, hole, counting,
                    split_pos, n_workers, worker):
    """Enumerate k-point sets over the ordered candidates covering the W x H grid.

    Returns (number of solutions, flat array of solution cells as y*W + x,
    nodes visited).  With ``n_workers > 1`` only the subtrees rooted at
    cursor ``split_pos`` whose running index is congruent to ``worker``
    are explored; nodes above the split are counted by worker 0 only, so
    node totals add up to the serial count.
    """
    n = ord_x.size
    cnt = np.zeros(W * H, np.int32)
    px = np.zeros(k + 1, np.int64)
    py = np.zeros(k + 1, np.int64)
    st = np.zeros(n + 1, np.int8)
    gaps = W * H
    j = 0
    for t in range(seed_x.size):
        j, gaps = _place(seed_x[t], seed_y[t], W, H, px, py, j, cnt, gaps)

    cap = 64
    sols = np.empty(cap * k, np.int32)
    nsol = 0
    nodes = 0
    subtree = -1
    split = n_workers > 1
    i = start
    while True:
        # Entering a node: cells before cursor i are decided.
        live = True
        if split and i == split_pos:
            subtree += 1
            if subtree % n_workers != worker:
                live = False
        owner = (not split) or i >= split_pos or worker == 0
        if live and owner:
            nodes += 1
        descended = False
        if live:
            if j == k:
                if gaps == 0 and owner:
                    if not count_only:
                        if (nsol + 1) * k > sols.size:
                            bigger = np.empty(sols.size * 2, np.int32)
                            bigger[:sols.size] = sols
                            sols = bigger
                        for q in range(k):
                            sols[nsol * k + q] = py[q] * W + px[q]
                    nsol += 1
            elif counting and (k + j + 1) * (k - j) // 2 < gaps:
                pass
            elif i < n and n - i >= k - j:
                if (not hole) or _closed_ok(i, close_ptr, close_cells, cnt):
                    st[i] = 1
                    i += 1
                    descended = True
                else:
                    st[i] = 2
                    j, gaps = _place(ord_x[i], ord_y[i], W, H, px, py, j, cnt, gaps)
                    if _closed_ok(i, close_ptr, close_cells, cnt):
                        i += 1
                        descended = True
                    else:
                        j, gaps = _unplace(W, H, px, py, j, cnt, gaps)
                        st[i] = 0
        if descended:
            continue
        # Backtrack to the most recent cell whose "with" branch is untried.
        resumed = False
        i -= 1
        while i >= start:
            if st[i] == 1:
                st[i] = 2
                j, gaps = _place(ord_x[i], ord_y[i], W, H, px, py, j, cnt, gaps)
                if (not hole) or _closed_ok(i, close_ptr, close_cells, cnt):
                    i += 1
                    resumed = True
                    break
                j, gaps = _unplace(W, H, px, py, j, cnt, gaps)
                st[i] = 0
                i -= 1
            elif st[i] == 2:
                j, gaps = _unplace(W, H, px, py, j, cnt, gaps)
                st[i] = 0
                i -= 1
            else:
                i -= 1
        if not resumed:
            break
    return nsol, sols[:nsol * k].copy(), nodes


# ---------------------------------------------------------------------------
# Bitset kernels for gluing quadrant components.
#
# A point set is stored as row masks: masks[r, w] has bit x of word w set when
# (64*w + x, r) is in the set.  Sums of two sets are ORs of shifted rows.


@njit(cache=True, nogil=True)
def _shift_or(dst, src, shift, nw):
    ws = shift // 64
    bs = shift % 64
    for w in range(nw - 1, ws - 1, -1):
        v = src[w - ws] << np.uint64(bs)
        if bs > 0 and w - ws - 1 >= 0:
            v |= src[w - ws - 1] >> np.uint64(64 - bs)
        dst[w] |= v


@njit(cache=True, nogil=True)
def row_masks(pts, rows, nw):
    """(n, k, 2) candidate points -> (n, rows, nw) row masks (points with y >= rows dropped)."""
    n = pts.shape[0]
    out = np.zeros((n, rows, nw), np.uint64)
    for c in range(n):
        for q in range(pts.shape[1]):
            x = pts[c, q, 0]
            y = pts[c, q, 1]
            if y < rows:
                out[c, y, x // 64] |= np.uint64(1) << np.uint64(x % 64)
    return out


@njit(cache=True, nogil=True)
def self_sums(pts, masks, rows, nw):
    """Rows 0..rows-1 of C + C for every candidate C."""
    n = pts.shape[0]
    out = np.zeros((n, rows, nw), np.uint64)
    for c in range(n):
        for q in range(pts.shape[1]):
            x = pts[c, q, 0]
            y = pts[c, q, 1]
            for r in range(rows - y):
                _shift_or(out[c, y + r], masks[c, r], x, nw)
    return out


@njit(cache=True, nogil=True)
def strip_pairs(P, maskP, selfP, Q, maskQ, selfQ, full, rows, nw):
    """All (i, j) with rows 0..rows-1 of (P_i u Q_j) + (P_i u Q_j) equal to ``full``."""
    nP = P.shape[0]
    nQ = Q.shape[0]
    out = np.empty((1024, 2), np.int64)
    m = 0
    need = np.zeros((rows, nw), np.uint64)
    acc = np.zeros((rows, nw), np.uint64)
    cross = np.zeros((rows, nw), np.uint64)
    for i in range(nP):
        for r in range(rows):
            for w in range(nw):
                need[r, w] = full[r, w] & ~selfP[i, r, w]
        for j in range(nQ):
            missing = False
            for r in range(rows):
                for w in range(nw):
                    acc[r, w] = need[r, w] & ~selfQ[j, r, w]
                    if acc[r, w] != 0:
                        missing = True
            if missing:
                cross[:, :] = 0
                for q in range(P.shape[1]):
                    x = P[i, q, 0]
                    y = P[i, q, 1]
                    for r in range(rows - y):
                        _shift_or(cross[y + r], maskQ[j, r], x, nw)
                ok = True
                for r in range(rows):
                    for w in range(nw):
                        if acc[r, w] & ~cross[r, w] != 0:
                            ok = False
                if not ok:
                    continue
            if m == out.shape[0]:
                bigger = np.empty((out.shape[0] * 2, 2), np.int64)
                bigger[:m] = out[:m]
                out = bigger
            out[m, 0] = i
            out[m, 1] = j
            m += 1
    return out[:m].copy()


@njit(cache=True, nogil=True)
def _covers_middle(rowsA, pts4, x_lo, x_hi, y_lo, y_hi, hy, nw):
    acc = np.zeros(nw, np.uint64)
    for v in range(y_lo, y_hi + 1):
        acc[:] = 0
        for q in range(pts4.shape[0]):
            py = pts4[q, 1]
            r = v - py
            if 0 <= r <= hy:
                _shift_or(acc, rowsA[r], pts4[q, 0], nw)
        for u in range(x_lo, x_hi + 1):
            if (acc[u // 64] >> np.uint64(u % 64)) & np.uint64(1) == 0:
                return False
    return True


@njit(cache=True, nogil=True)
def glue_cycles(e12, adj23_ptr, adj23, adj34_ptr, adj34, keys41, n1,
                abs1, abs2, abs3, abs4, rows1, rows2, rows3, rows4,
                x_lo, x_hi, y_lo, y_hi, hy, nw, lo, hi):
    """Close I-II-III-IV cycles of compatible pairs and test the middle region.

    e12 rows are (i1, i2); adj23 lists i3 for each i2; adj34 lists i4 for each
    i3; keys41 is the sorted array of i4 * n1 + i1 for compatible (IV, I).
    Only e12 rows lo..hi-1 are processed.  Returns accepted (i1, i2, i3, i4)
    rows and the number of closed cycles examined.
    """
    cap = 256
    out = np.empty((cap, 4), np.int64)
    m = 0
    cycles = 0
    k1 = abs1.shape[1]
    k2 = abs2.shape[1]
    k3 = abs3.shape[1]
    k4 = abs4.shape[1]
    pts4 = np.empty((k1 + k2 + k3 + k4, 2), np.int64)
    rowsA = np.zeros((hy + 1, nw), np.uint64)
    for e in range(lo, hi):
        i1 = e12[e, 0]
        i2 = e12[e, 1]
        for t3 in range(adj23_ptr[i2], adj23_ptr[i2 + 1]):
            i3 = adj23[t3]
            for t4 in range(adj34_ptr[i3], adj34_ptr[i3 + 1]):
                i4 = adj34[t4]
                key = i4 * n1 + i1
                pos = np.searchsorted(keys41, key)
                if pos >= keys41.size or keys41[pos] != key:
                    continue
                cycles += 1
                for r in range(hy + 1):
                    for w in range(nw):
                        rowsA[r, w] = rows1[i1, r, w] | rows2[i2, r, w] | rows3[i3, r, w] | rows4[i4, r, w]
                pts4[:k1] = abs1[i1]
                pts4[k1:k1 + k2] = abs2[i2]
                pts4[k1 + k2:k1 + k2 + k3] = abs3[i3]
                pts4[k1 + k2 + k3:] = abs4[i4]
                if _covers_middle(rowsA, pts4, x_lo, x_hi, y_lo, y_hi, hy, nw):
                    if m == out.shape[0]:
                        bigger = np.empty((out.shape[0] * 2, 4), np.int64)
                        bigger[:m] = out[:m]
                        out = bigger
                    out[m, 0] = i1
                    out[m, 1] = i2
                    out[m, 2] = i3
                    out[m, 3] = i4
                    m += 1
    return out[:m].copy(), cycles
