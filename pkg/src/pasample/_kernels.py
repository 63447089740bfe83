"""Compiled inner loops for samplers, Monte Carlo tallies, and graph growth.

Everything here operates on float64 weight arrays (exact for the integer
degree weights the generators produce) and a numpy ``Generator`` passed in
by the caller, so seeded runs are reproducible and chunks can run on
separate threads (kernels are nogil).
"""

import numpy as np
from numba import njit

# Design ids shared with the Python layer.
CHAO = 0
DBD = 1
CP = 2
OSYS = 3
RSYS = 4


# ---------------------------------------------------------------------------
# Single draws
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def dbd_draw(w, m, rng, out):
    """Draw-by-draw: m sequential selections, chosen units removed, the
    remaining weights untouched. Mutates ``w`` (pass a scratch copy)."""
    t = w.shape[0]
    total = 0.0
    for i in range(t):
        total += w[i]
    for k in range(m):
        u = rng.random() * total
        acc = 0.0
        pick = -1
        for i in range(t):
            wi = w[i]
            if wi > 0.0:
                acc += wi
                if u < acc:
                    pick = i
                    break
        if pick < 0:  # float edge: take the last positive entry
            for i in range(t - 1, -1, -1):
                if w[i] > 0.0:
                    pick = i
                    break
        out[k] = pick
        total -= w[pick]
        w[pick] = 0.0


@njit(cache=True, nogil=True)
def cp_draw(w, m, rng, out, max_rounds):
    """Conditional Poisson by rejection: Bernoulli(m*w_i/W) rounds until one
    has exactly m successes. Returns rounds used, or -1 if the budget ran
    out."""
    t = w.shape[0]
    W = 0.0
    for i in range(t):
        W += w[i]
    for r in range(1, max_rounds + 1):
        u = rng.random(t)
        cnt = 0
        ok = True
        for i in range(t):
            if u[i] * W < m * w[i]:
                if cnt == m:
                    ok = False
                    break
                out[cnt] = i
                cnt += 1
        if ok and cnt == m:
            return r
    return -1


@njit(cache=True, nogil=True)
def _capped_pi(w, k, m, out):
    """Inclusion probabilities proportional to size over w[0:k], with
    iterative capping of overweight units at 1."""
    mfree = m
    Wfree = 0.0
    for i in range(k):
        out[i] = -1.0
        Wfree += w[i]
    changed = True
    while changed and mfree > 0:
        changed = False
        for i in range(k):
            if out[i] < 0.0 and mfree * w[i] >= Wfree:
                out[i] = 1.0
                mfree -= 1
                Wfree -= w[i]
                changed = True
    for i in range(k):
        if out[i] < 0.0:
            out[i] = mfree * w[i] / Wfree if mfree > 0 else 0.0


@njit(cache=True, nogil=True)
def chao_draw(w, m, rng, out, pi_prev, pi_cur):
    """Chao's sequential reservoir procedure over positive weights.

    Processes units in index order; unit k enters with its current
    size-proportional inclusion probability (capped prefixes handled
    exactly) and evicts reservoir member j with probability proportional
    to 1 - pi_j(k)/pi_j(k-1).
    """
    t = w.shape[0]
    for i in range(m):
        out[i] = i
    if t == m:
        return
    W = 0.0
    mx = 0.0
    for i in range(m):
        W += w[i]
        if w[i] > mx:
            mx = w[i]
    prev_capped = m * mx > W
    for k in range(m, t):
        wk = w[k]
        W_prev = W
        W += wk
        if wk > mx:
            mx = wk
        cur_capped = m * mx > W
        if not cur_capped and not prev_capped:
            # Uncapped on both prefixes: pi ratios are W_prev/W for every
            # unit, so the eviction is uniform over the reservoir.
            pik = m * wk / W
            if rng.random() < pik:
                out[rng.integers(0, m)] = k
        else:
            _capped_pi(w, k + 1, m, pi_cur)
            _capped_pi(w, k, m, pi_prev)
            pik = pi_cur[k]
            if pik > 0.0 and rng.random() < pik:
                s = 0.0
                for q in range(m):
                    j = out[q]
                    rq = 0.0
                    if pi_prev[j] > 0.0:
                        rq = 1.0 - pi_cur[j] / pi_prev[j]
                    if rq < 0.0:
                        rq = 0.0
                    pi_prev[j] = -rq  # stash eviction weight, negated
                    s += rq
                u = rng.random() * s
                acc = 0.0
                pick = m - 1
                for q in range(m):
                    acc += -pi_prev[out[q]]
                    if u < acc:
                        pick = q
                        break
                out[pick] = k
        prev_capped = cur_capped


@njit(cache=True, nogil=True)
def systematic_walk(cumw, m, u, circular, out):
    """Map a start point to the m systematic picks (array positions)."""
    t = cumw.shape[0]
    W = cumw[t - 1]
    skip = W / m
    for k in range(m):
        p = u + k * skip
        if circular:
            p = p % W
        idx = np.searchsorted(cumw, p, side="right")
        if idx >= t:
            idx = t - 1
        out[k] = idx


# ---------------------------------------------------------------------------
# Batched Monte Carlo tallies
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def mc_batch(design_id, w, m, reps, rng, circular, max_rounds, first, pairs):
    """Tally first-order and pairwise inclusion counts over seeded draws.

    Returns -1 if a conditional Poisson draw exhausts its budget, else 0.
    """
    t = w.shape[0]
    out = np.empty(m, np.int64)
    scratch = np.empty(t, np.float64)
    pi_a = np.empty(t, np.float64)
    pi_b = np.empty(t, np.float64)
    perm = np.empty(t, np.int64)
    cumw = np.empty(t, np.float64)
    if design_id == OSYS:
        acc = 0.0
        for i in range(t):
            acc += w[i]
            cumw[i] = acc
    for _ in range(reps):
        if design_id == DBD:
            for i in range(t):
                scratch[i] = w[i]
            dbd_draw(scratch, m, rng, out)
        elif design_id == CP:
            if cp_draw(w, m, rng, out, max_rounds) < 0:
                return -1
        elif design_id == CHAO:
            chao_draw(w, m, rng, out, pi_a, pi_b)
        elif design_id == OSYS:
            W = cumw[t - 1]
            hi = W if circular else W / m
            systematic_walk(cumw, m, rng.random() * hi, circular, out)
        else:  # RSYS
            for i in range(t):
                perm[i] = i
            for i in range(t - 1, 0, -1):
                j = rng.integers(0, i + 1)
                tmp = perm[i]
                perm[i] = perm[j]
                perm[j] = tmp
            acc = 0.0
            for i in range(t):
                acc += w[perm[i]]
                cumw[i] = acc
            W = cumw[t - 1]
            hi = W if circular else W / m
            systematic_walk(cumw, m, rng.random() * hi, circular, out)
            for k in range(m):
                out[k] = perm[out[k]]
        for a in range(m):
            first[out[a]] += 1
            for b in range(a + 1, m):
                i = out[a]
                j = out[b]
                if i < j:
                    pairs[i, j] += 1
                else:
                    pairs[j, i] += 1
    return 0


# ---------------------------------------------------------------------------
# Fenwick tree (for the m=2 conditional Poisson growth path)
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def _fenwick_add(tree, i, delta):
    n = tree.shape[0] - 1
    j = i + 1
    while j <= n:
        tree[j] += delta
        j += j & (-j)


@njit(cache=True, nogil=True)
def _fenwick_search(tree, u, topbit):
    """Smallest 0-based index whose cumulative sum exceeds u."""
    n = tree.shape[0] - 1
    pos = 0
    bit = topbit
    rem = u
    while bit > 0:
        nxt = pos + bit
        if nxt <= n and tree[nxt] <= rem:
            rem -= tree[nxt]
            pos = nxt
        bit >>= 1
    return pos


# ---------------------------------------------------------------------------
# Growth engines
# ---------------------------------------------------------------------------

@njit(cache=True, nogil=True)
def grow_edges(design_id, n, m, rng, max_rounds, edges):
    """Grow a preferential-attachment graph, recording edges as (u, v) rows.

    Starts from the complete graph on m vertices; each step draws m
    distinct targets (weights = start-of-step degrees) with the requested
    design and attaches the newborn. Returns 0, or -1 on a conditional
    Poisson budget failure.
    """
    deg = np.zeros(n, np.float64)
    e = 0
    for i in range(m):
        deg[i] = m - 1
        for j in range(i + 1, m):
            edges[e, 0] = i
            edges[e, 1] = j
            e += 1
    targets = np.empty(m, np.int64)
    # Design-specific state.
    bag = np.empty(0, np.int64)
    blen = 0
    tree = np.empty(0, np.float64)
    topbit = 1
    use_fenwick = design_id == CP and m == 2
    if design_id == DBD:
        bag = np.empty(2 * m * n, np.int64)
        for i in range(m):
            for j in range(i + 1, m):
                bag[blen] = i
                blen += 1
                bag[blen] = j
                blen += 1
    elif use_fenwick:
        tree = np.zeros(n + 1, np.float64)
        while topbit * 2 <= n:
            topbit *= 2
        for i in range(m):
            _fenwick_add(tree, i, float(m - 1))
    pi_a = np.empty(n, np.float64)
    pi_b = np.empty(n, np.float64)
    W = float(m * (m - 1))
    dmax = float(m - 1)
    for t in range(m, n):
        if t == m:
            # Forced first step: every design selects the whole clique.
            for q in range(m):
                targets[q] = q
        elif design_id == DBD:
            k = 0
            while k < m:
                cand = bag[rng.integers(0, blen)]
                dup = False
                for q in range(k):
                    if targets[q] == cand:
                        dup = True
                        break
                if not dup:
                    targets[k] = cand
                    k += 1
        elif design_id == CHAO:
            chao_draw(deg[:t], m, rng, targets, pi_a, pi_b)
        elif use_fenwick and m * dmax < W:
            # Exact conditional Poisson pair: P({i,j}) prop. to o_i * o_j
            # with odds o = m*d/(W - m*d), via proposals prop. to d and a
            # ratio acceptance bounded through the max degree.
            amax = W - m * dmax
            while True:
                i = _fenwick_search(tree, rng.random() * W, topbit)
                j = _fenwick_search(tree, rng.random() * W, topbit)
                if i == j or i >= t or j >= t:
                    continue
                if deg[i] <= 0.0 or deg[j] <= 0.0:
                    continue
                accept = (amax * amax) / ((W - m * deg[i]) * (W - m * deg[j]))
                if rng.random() < accept:
                    targets[0] = i
                    targets[1] = j
                    break
        else:  # CP general / forced-unit fallback
            if cp_draw(deg[:t], m, rng, targets, max_rounds) < 0:
                return -1
        for q in range(m):
            v = targets[q]
            edges[e, 0] = v
            edges[e, 1] = t
            e += 1
            deg[v] += 1.0
            if deg[v] > dmax:
                dmax = deg[v]
            if design_id == DBD:
                bag[blen] = v
                blen += 1
                bag[blen] = t
                blen += 1
            elif use_fenwick:
                _fenwick_add(tree, v, 1.0)
        deg[t] = float(m)
        if deg[t] > dmax:
            dmax = deg[t]
        if use_fenwick:
            _fenwick_add(tree, t, float(m))
        W += 2.0 * m
    return 0


@njit(cache=True, nogil=True)
def _replay_stats(n, m, edges, deg, tie_counts, ot_counts, ot_totals, deg_hist):
    """Replay a recorded growth run: per-size overthrow events, final
    top-rank tie counts, and the final degree histogram."""
    for i in range(n):
        deg[i] = 0
    for i in range(m):
        deg[i] = m - 1
    cur = m - 1
    cnt = m
    if m == 1:
        cur = 0
        cnt = 1
    prev_tied = cnt >= 2
    e = m * (m - 1) // 2
    total = 0
    for t in range(m, n):
        for _ in range(m):
            v = edges[e, 0]
            e += 1
            deg[v] += 1
            if deg[v] > cur:
                cur = deg[v]
                cnt = 1
            elif deg[v] == cur:
                cnt += 1
        deg[t] = m
        if m > cur:
            cur = m
            cnt = 1
        elif m == cur:
            cnt += 1
        tied = cnt >= 2
        if not tied and prev_tied:
            ot_counts[t + 1] += 1
            total += 1
        prev_tied = tied
    ot_totals[total] += 1
    for v in range(n):
        deg_hist[deg[v]] += 1
    for v in range(n):
        if deg[v] == cur:
            tie_counts[v, cnt] += 1


@njit(cache=True, nogil=True)
def stats_driver(
    design_id, n, m, reps, rng, max_rounds,
    tie_counts, ot_counts, ot_totals, deg_hist,
):
    """Run ``reps`` seeded growth runs and accumulate replay statistics."""
    n_edges = m * (m - 1) // 2 + (n - m) * m
    edges = np.empty((n_edges, 2), np.int64)
    deg = np.empty(n, np.int64)
    for _ in range(reps):
        if grow_edges(design_id, n, m, rng, max_rounds, edges) < 0:
            return -1
        _replay_stats(n, m, edges, deg, tie_counts, ot_counts, ot_totals, deg_hist)
    return 0


@njit(cache=True, nogil=True)
def deghist_driver(design_id, n, m, reps, rng, max_rounds, deg_hist):
    """Pool final-degree histograms over seeded growth runs."""
    n_edges = m * (m - 1) // 2 + (n - m) * m
    edges = np.empty((n_edges, 2), np.int64)
    deg = np.empty(n, np.int64)
    for _ in range(reps):
        if grow_edges(design_id, n, m, rng, max_rounds, edges) < 0:
            return -1
        for i in range(n):
            deg[i] = 0
        for row in range(n_edges):
            deg[edges[row, 0]] += 1
            deg[edges[row, 1]] += 1
        for v in range(n):
            deg_hist[deg[v]] += 1
    return 0


@njit(cache=True, nogil=True)
def step_batch(design_id, w, m, reps, rng, max_rounds, first):
    """Tally per-step inclusion counts for one fixed weight profile."""
    t = w.shape[0]
    out = np.empty(m, np.int64)
    scratch = np.empty(t, np.float64)
    pi_a = np.empty(t, np.float64)
    pi_b = np.empty(t, np.float64)
    for _ in range(reps):
        if design_id == DBD:
            for i in range(t):
                scratch[i] = w[i]
            dbd_draw(scratch, m, rng, out)
        elif design_id == CP:
            if cp_draw(w, m, rng, out, max_rounds) < 0:
                return -1
        else:
            chao_draw(w, m, rng, out, pi_a, pi_b)
        for a in range(m):
            first[out[a]] += 1
    return 0
