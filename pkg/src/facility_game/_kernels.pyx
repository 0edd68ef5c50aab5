# cython: language_level=3
"""Compiled twins of the kernels in ``_pykernels``.

All arithmetic is int64.  Callers must check magnitudes first; see
``_backend.fits_int64``.
"""

import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64

cdef enum:
    NO_EDGE = -1


def floyd_warshall(Py_ssize_t n, us, vs, ws):
    cdef cnp.ndarray[i64, ndim=2] dist_arr = np.full((n, n), NO_EDGE, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=2] nxt_arr = np.full((n, n), NO_EDGE, dtype=np.int64)
    cdef i64[:, ::1] dist = dist_arr
    cdef i64[:, ::1] nxt = nxt_arr
    cdef const i64[::1] eu = np.ascontiguousarray(us, dtype=np.int64)
    cdef const i64[::1] ev = np.ascontiguousarray(vs, dtype=np.int64)
    cdef const i64[::1] ew = np.ascontiguousarray(ws, dtype=np.int64)
    cdef Py_ssize_t i, j, k, e, a, b
    cdef i64 dik, dkj, cand, hop
    for i in range(n):
        dist[i, i] = 0
        nxt[i, i] = i
    for e in range(eu.shape[0]):
        for a, b in ((eu[e], ev[e]), (ev[e], eu[e])):
            if dist[a, b] == NO_EDGE or ew[e] < dist[a, b]:
                dist[a, b] = ew[e]
                nxt[a, b] = b
    with nogil:
        for k in range(n):
            for i in range(n):
                dik = dist[i, k]
                if dik == NO_EDGE:
                    continue
                hop = nxt[i, k]
                for j in range(n):
                    dkj = dist[k, j]
                    if dkj == NO_EDGE:
                        continue
                    cand = dik + dkj
                    if dist[i, j] == NO_EDGE or cand < dist[i, j]:
                        dist[i, j] = cand
                        nxt[i, j] = hop
    return dist_arr, nxt_arr


def payoff_rows(
    Py_ssize_t start,
    Py_ssize_t stop,
    Py_ssize_t owners,
    demand_qty,
    demand_site_dist,
    site_order,
    dsite_cost,
    dsite_vertex,
    psite_cost,
    psite_vertex,
    raw_order,
    raw_price,
    raw_prod_dist,
    prod_dist_dist,
    prices,
    Py_ssize_t n_prod,
    Py_ssize_t n_dist,
):
    cdef const i64[::1] qty = np.ascontiguousarray(demand_qty, dtype=np.int64)
    cdef const i64[:, ::1] dsd = np.ascontiguousarray(demand_site_dist, dtype=np.int64).reshape(len(demand_qty), n_dist)
    cdef const i64[::1] sorder = np.ascontiguousarray(site_order, dtype=np.int64)
    cdef const i64[::1] dcost = np.ascontiguousarray(dsite_cost, dtype=np.int64)
    cdef const i64[::1] dvert = np.ascontiguousarray(dsite_vertex, dtype=np.int64)
    cdef const i64[::1] pcost = np.ascontiguousarray(psite_cost, dtype=np.int64)
    cdef const i64[::1] pvert = np.ascontiguousarray(psite_vertex, dtype=np.int64)
    cdef const i64[::1] rorder = np.ascontiguousarray(raw_order, dtype=np.int64)
    cdef const i64[::1] rprice = np.ascontiguousarray(raw_price, dtype=np.int64)
    cdef const i64[:, ::1] rpd = np.ascontiguousarray(raw_prod_dist, dtype=np.int64).reshape(len(raw_price), n_prod)
    cdef const i64[:, ::1] pdd = np.ascontiguousarray(prod_dist_dist, dtype=np.int64).reshape(n_prod, n_dist)
    cdef const i64[::1] price = np.ascontiguousarray(prices, dtype=np.int64)

    cdef Py_ssize_t n_price = price.shape[0]
    cdef Py_ssize_t n_strat = n_price * n_prod * n_dist
    cdef Py_ssize_t n_dem = qty.shape[0]
    cdef Py_ssize_t n_raw = rprice.shape[0]
    cdef Py_ssize_t count = stop - start if stop > start else 0

    cdef cnp.ndarray[i64, ndim=2] out_arr = np.zeros((count, owners), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef i64[::1] pidx = np.zeros(owners, dtype=np.int64)
    cdef i64[::1] midx = np.zeros(owners, dtype=np.int64)
    cdef i64[::1] widx = np.zeros(owners, dtype=np.int64)
    cdef i64[::1] active = np.zeros(owners, dtype=np.int64)
    cdef i64[::1] served = np.zeros(owners, dtype=np.int64)
    cdef i64[::1] site_owner = np.zeros(n_dist, dtype=np.int64)
    cdef i64[::1] site_price = np.zeros(n_dist, dtype=np.int64)

    cdef i64 floor_price = price[0]
    cdef Py_ssize_t s, o, q, k, j, t, l, best, rem, d, m, w
    cdef i64 c, best_cost, sq
    for t in range(1, n_price):
        if price[t] < floor_price:
            floor_price = price[t]

    with nogil:
        for s in range(start, stop):
            rem = s
            for o in range(owners - 1, -1, -1):
                d = rem % n_strat
                rem = rem // n_strat
                pidx[o] = d // (n_prod * n_dist)
                midx[o] = (d // n_dist) % n_prod
                widx[o] = d % n_dist

            for o in range(owners):
                active[o] = 1
                for q in range(o):
                    if active[q] and (
                        pvert[midx[q]] == pvert[midx[o]]
                        or dvert[widx[q]] == dvert[widx[o]]
                    ):
                        active[o] = 0
                        break

            for j in range(n_dist):
                site_owner[j] = -1
                site_price[j] = floor_price
            for o in range(owners):
                served[o] = 0
                if active[o]:
                    site_owner[widx[o]] = o
                    site_price[widx[o]] = price[pidx[o]]

            for k in range(n_dem):
                best = -1
                best_cost = 0
                for t in range(n_dist):
                    j = sorder[t]
                    c = site_price[j] * qty[k] + dsd[k, j]
                    if best < 0 or c < best_cost:
                        best = j
                        best_cost = c
                if site_owner[best] >= 0:
                    served[site_owner[best]] += qty[k]

            for o in range(owners):
                if not active[o]:
                    out[s - start, o] = 0
                    continue
                m = midx[o]
                w = widx[o]
                sq = served[o]
                best = -1
                best_cost = 0
                for t in range(n_raw):
                    l = rorder[t]
                    c = rprice[l] * sq + rpd[l, m]
                    if best < 0 or c < best_cost:
                        best = l
                        best_cost = c
                out[s - start, o] = price[pidx[o]] * sq - (
                    rpd[best, m] + pdd[m, w] + dcost[w] + pcost[m] + rprice[best] * sq
                )
    return out_arr


def nash_mask(values, Py_ssize_t n_strat, Py_ssize_t owners):
    cdef const i64[:, ::1] v = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n_prof = v.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] ok_arr = np.ones(n_prof, dtype=np.uint8)
    cdef cnp.uint8_t[::1] ok = ok_arr
    cdef Py_ssize_t i, base, stride, t, s
    cdef i64 top
    with nogil:
        for i in range(owners):
            stride = 1
            for t in range(owners - 1 - i):
                stride = stride * n_strat
            for base in range(n_prof):
                if (base // stride) % n_strat:
                    continue
                top = v[base, i]
                for t in range(1, n_strat):
                    s = base + t * stride
                    if v[s, i] > top:
                        top = v[s, i]
                for t in range(n_strat):
                    s = base + t * stride
                    if v[s, i] < top:
                        ok[s] = 0
    return ok_arr.astype(bool)


def minmax_regret(values, Py_ssize_t owners):
    cdef const i64[:, ::1] v = np.ascontiguousarray(values, dtype=np.int64)
    cdef Py_ssize_t n_prof = v.shape[0]
    cdef cnp.ndarray[i64, ndim=1] ideal_arr = np.empty(owners, dtype=np.int64)
    cdef cnp.ndarray[i64, ndim=1] gamma_arr = np.empty(n_prof, dtype=np.int64)
    cdef i64[::1] ideal = ideal_arr
    cdef i64[::1] gamma = gamma_arr
    cdef Py_ssize_t i, s
    cdef i64 g, r, best
    with nogil:
        for i in range(owners):
            ideal[i] = v[0, i]
            for s in range(1, n_prof):
                if v[s, i] > ideal[i]:
                    ideal[i] = v[s, i]
        best = 0
        for s in range(n_prof):
            g = ideal[0] - v[s, 0]
            for i in range(1, owners):
                r = ideal[i] - v[s, i]
                if r > g:
                    g = r
            gamma[s] = g
            if s == 0 or g < best:
                best = g
    return ideal_arr, gamma_arr, best
