"""Pure-Python implementations of the hot kernels.

Every function here has a twin of the same name and signature in the
compiled ``_kernels`` extension.  These versions use arbitrary-precision
Python integers, so they are also the fallback whenever a problem's
magnitudes could overflow int64.
"""

NO_EDGE = -1


def floyd_warshall(n, us, vs, ws):
    """All-pairs closure over an undirected edge list with 0-based ids.

    Returns ``(dist, nxt)`` as lists of lists.  Unreachable pairs carry
    ``NO_EDGE`` in both matrices.
    """
    dist = [[NO_EDGE] * n for _ in range(n)]
    nxt = [[NO_EDGE] * n for _ in range(n)]
    for i in range(n):
        dist[i][i] = 0
        nxt[i][i] = i
    for u, v, w in zip(us, vs, ws):
        for a, b in ((u, v), (v, u)):
            if dist[a][b] == NO_EDGE or w < dist[a][b]:
                dist[a][b] = w
                nxt[a][b] = b
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == NO_EDGE:
                continue
            di = dist[i]
            ni = nxt[i]
            hop = ni[k]
            for j in range(n):
                dkj = dk[j]
                if dkj == NO_EDGE:
                    continue
                cand = dik + dkj
                if di[j] == NO_EDGE or cand < di[j]:
                    di[j] = cand
                    ni[j] = hop
    return dist, nxt


def payoff_rows(
    start,
    stop,
    owners,
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
    n_prod,
    n_dist,
):
    """Net income of every owner for profiles ``start <= s < stop``.

    Arguments are flat index tables prepared by ``market.pack_scenario``:
    ``demand_site_dist[k][j]`` is the distance from demand point k to
    distribution candidate j, ``raw_prod_dist[l][m]`` from raw point l to
    production candidate m, ``prod_dist_dist[m][j]`` from production
    candidate m to distribution candidate j.  ``site_order`` and
    ``raw_order`` list candidate indices by ascending vertex id so that a
    strict ``<`` scan implements the lowest-vertex tie-break.
    """
    n_strat = len(prices) * n_prod * n_dist
    floor_price = min(prices)
    n_sites = len(dsite_cost)
    rows = []
    digits = [0] * owners
    for s in range(start, stop):
        rem = s
        for o in range(owners - 1, -1, -1):
            digits[o] = rem % n_strat
            rem //= n_strat
        pidx = [d // (n_prod * n_dist) for d in digits]
        midx = [(d // n_dist) % n_prod for d in digits]
        widx = [d % n_dist for d in digits]

        active = [True] * owners
        for o in range(owners):
            for q in range(o):
                if active[q] and (
                    psite_vertex[midx[q]] == psite_vertex[midx[o]]
                    or dsite_vertex[widx[q]] == dsite_vertex[widx[o]]
                ):
                    active[o] = False
                    break

        site_owner = [-1] * n_sites
        site_price = [floor_price] * n_sites
        for o in range(owners):
            if active[o]:
                site_owner[widx[o]] = o
                site_price[widx[o]] = prices[pidx[o]]

        served = [0] * owners
        for k, qty in enumerate(demand_qty):
            row = demand_site_dist[k]
            best = -1
            best_cost = 0
            for j in site_order:
                c = site_price[j] * qty + row[j]
                if best < 0 or c < best_cost:
                    best = j
                    best_cost = c
            if site_owner[best] >= 0:
                served[site_owner[best]] += qty

        out = [0] * owners
        for o in range(owners):
            if not active[o]:
                continue
            m = midx[o]
            w = widx[o]
            q = served[o]
            best_l = -1
            best_cost = 0
            for l in raw_order:
                c = raw_price[l] * q + raw_prod_dist[l][m]
                if best_l < 0 or c < best_cost:
                    best_l = l
                    best_cost = c
            costs = (
                raw_prod_dist[best_l][m]
                + prod_dist_dist[m][w]
                + dsite_cost[w]
                + psite_cost[m]
                + raw_price[best_l] * q
            )
            out[o] = prices[pidx[o]] * q - costs
        rows.append(out)
    return rows


def nash_mask(values, n_strat, owners):
    """Flag profiles where no owner has a strictly improving deviation.

    ``values`` is a sequence of per-profile payoff rows in enumeration
    order (owner 0 most significant).
    """
    n_prof = len(values)
    ok = [True] * n_prof
    for i in range(owners):
        stride = n_strat ** (owners - 1 - i)
        block = stride * n_strat
        for base in range(n_prof):
            if (base // stride) % n_strat:
                continue
            line = range(base, base + block, stride)
            top = max(values[s][i] for s in line)
            for s in line:
                if values[s][i] < top:
                    ok[s] = False
    return ok


def minmax_regret(values, owners):
    """Ideal vector, per-profile worst residual, and the min-max value."""
    ideal = [max(row[i] for row in values) for i in range(owners)]
    gamma = [max(ideal[i] - row[i] for i in range(owners)) for row in values]
    return ideal, gamma, min(gamma)
