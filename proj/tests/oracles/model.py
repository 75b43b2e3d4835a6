"""Direct evaluation of the delay model on dense 0/1 or fractional matrices.

Kept deliberately literal: every sum is written out over the full index
ranges, with x[i][k] placement, y[j][k] selection and lat[j][i] the latency
between base station j and cloud i.
"""

import itertools
import math
import random

INF = math.inf


def indicator(rows, cols, picks):
    m = [[0.0] * cols for _ in range(rows)]
    for k, r in enumerate(picks):
        m[r][k] = 1.0
    return m


def switching(sizes, x_now, x_prev):
    total = 0.0
    for k in range(len(sizes)):
        for i in range(len(x_now)):
            total += sizes[k] * max(x_now[i][k] - x_prev[i][k], 0.0)
    return total


def queuing(capacity, demand, y):
    m, n = len(y), len(y[0])
    load = [sum(demand[k] * y[j][k] for k in range(n)) for j in range(m)]
    total = 0.0
    for k in range(n):
        for j in range(m):
            if y[j][k] == 0.0:
                continue
            if load[j] >= capacity[j]:
                return INF
            total += y[j][k] / (capacity[j] - load[j])
    return total


def communication(coverage, lat, x, y):
    m, n = len(x), len(x[0])
    total = 0.0
    for k in range(n):
        for i in range(m):
            for j in coverage[k]:
                total += y[j][k] * x[i][k] * lat[j][i]
    return total


def breakdown(scn, t, now, prev):
    """now/prev are (placement, selection) lists; prev may be None."""
    m, n = scn["num_clouds"], scn["num_users"]
    x = indicator(m, n, now[0])
    y = indicator(m, n, now[1])
    sw = 0.0 if prev is None else switching(scn["service_size"], x, indicator(m, n, prev[0]))
    q = queuing(scn["bs_capacity"], scn["demand"][t], y)
    c = communication(scn["coverage"][t], scn["link_latency"][t], x, y)
    return {"switching": sw, "queuing": q, "communication": c,
            "non_switching": q + c, "total": q + c + sw}


def feasible(scn, t, placement, selection, margin=1e-6):
    m, n = scn["num_clouds"], scn["num_users"]
    for k in range(n):
        if selection[k] not in scn["coverage"][t][k]:
            return False
    for i in range(m):
        used = sum(scn["service_size"][k] for k in range(n) if placement[k] == i)
        if used > scn["cloud_capacity"][i]:
            return False
    for j in range(m):
        load = sum(scn["demand"][t][k] for k in range(n) if selection[k] == j)
        if load > scn["bs_capacity"][j] - margin:
            return False
    return True


def slot_decisions(scn, t, margin=1e-6):
    m, n = scn["num_clouds"], scn["num_users"]
    out = []
    for placement in itertools.product(range(m), repeat=n):
        for selection in itertools.product(*scn["coverage"][t]):
            if feasible(scn, t, placement, selection, margin):
                out.append((list(placement), list(selection)))
    return out


def random_scenario(rng, m, n, slots, cov_p=0.6, cap=(4.0, 9.0), store=(3.0, 8.0),
                    demand=(0.5, 2.0), size=(1.0, 3.0), lat_max=3.0):
    scn = {
        "num_clouds": m,
        "num_users": n,
        "num_slots": slots,
        "bs_capacity": [rng.uniform(*cap) for _ in range(m)],
        "cloud_capacity": [rng.uniform(*store) for _ in range(m)],
        "service_size": [rng.uniform(*size) for _ in range(n)],
        "link_latency": [],
        "coverage": [],
        "demand": [],
    }
    for _ in range(slots):
        scn["link_latency"].append(
            [[0.0 if a == b else rng.uniform(0.0, lat_max) for b in range(m)] for a in range(m)])
        cov = []
        for _k in range(n):
            c = [j for j in range(m) if rng.random() < cov_p]
            cov.append(c or [rng.randrange(m)])
        scn["coverage"].append(cov)
        scn["demand"].append([rng.uniform(*demand) for _ in range(n)])
    return scn


def seeded(seed):
    return random.Random(seed)
