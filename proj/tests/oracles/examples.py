"""Evaluates the small hand-sized examples used by the unit tests.
Values printed here are frozen in tests/unit."""

import itertools

import model


def main():
    # Switching: two users with sizes (2, 3); user 0 moves 0 -> 1, user 1 stays on 1.
    x_prev = model.indicator(2, 2, [0, 1])
    x_now = model.indicator(2, 2, [1, 1])
    print("switching two users:", model.switching([2.0, 3.0], x_now, x_prev))

    # Queuing: two users with demand 1 on base station 0, C_0 = 10.
    y = model.indicator(2, 2, [0, 0])
    q = model.queuing([10.0, 10.0], [1.0, 1.0], y)
    print("queuing two users on bs0:", q)

    # Communication: x = (0.5, 0.5, 0), y at BS 0, l_00 = 0, l_01 = 4.
    lat = [[0.0, 4.0, 7.0], [4.0, 0.0, 1.0], [7.0, 1.0, 0.0]]
    x = [[0.5], [0.5], [0.0]]
    y = [[1.0], [0.0], [0.0]]
    print("communication fractional x:", model.communication([[0]], lat, x, y))
    print("non-switching combined:", q + 0.0)

    # Zero latency, huge capacities: sum_k 1 / C_{j(k)} with tiny demands.
    caps = [1e9, 2e9, 4e9]
    demand = [1e-9, 1e-9, 1e-9, 1e-9]
    y = model.indicator(3, 4, [0, 1, 2, 2])
    print("huge capacity queuing:", repr(model.queuing(caps, demand, y)),
          "closed form:", repr(1 / 1e9 + 1 / 2e9 + 2 / 4e9))

    # Strict margin: two users c = 5 on BS 0 with C_0 = 10.
    scn = {"num_clouds": 1, "num_users": 2, "service_size": [1.0, 1.0],
           "cloud_capacity": [10.0], "bs_capacity": [10.0], "demand": [[5.0, 5.0]],
           "coverage": [[[0], [0]]]}
    print("margin 1e-6 feasible:", model.feasible(scn, 0, [0, 0], [0, 0], 1e-6))
    print("margin 0 feasible:", model.feasible(scn, 0, [0, 0], [0, 0], 0.0))

    # Capacity-tight LP: 2 users, 2 clouds, S = (s_1, s_2) = (2, 1); only one
    # integral assignment fits storage.
    scn = {"num_clouds": 2, "num_users": 2, "service_size": [2.0, 1.0],
           "cloud_capacity": [2.0, 1.0], "bs_capacity": [10.0, 10.0],
           "demand": [[1.0, 1.0]], "coverage": [[[0, 1], [0, 1]]]}
    fits = sorted({tuple(p) for p, _ in model.slot_decisions(scn, 0)})
    print("capacity-tight placements:", fits)

    # Adversarial rounding: 2 clouds with S = 1.5, 3 users with s = 1.
    scn = {"num_clouds": 2, "num_users": 3, "service_size": [1.0, 1.0, 1.0],
           "cloud_capacity": [1.5, 1.5], "bs_capacity": [10.0, 10.0],
           "demand": [[1.0, 1.0, 1.0]], "coverage": [[[0, 1], [0, 1], [0, 1]]]}
    print("adversarial feasible integral decisions:", len(model.slot_decisions(scn, 0)),
          "fractional storage slack:", sum(scn["cloud_capacity"]) - sum(scn["service_size"]))

    # Symmetric instance: two identical clouds, one user covered by both.
    scn = {"num_clouds": 2, "num_users": 1, "num_slots": 1, "service_size": [1.0],
           "cloud_capacity": [5.0, 5.0], "bs_capacity": [4.0, 4.0], "demand": [[1.0]],
           "coverage": [[[0, 1]]], "link_latency": [[[0.0, 2.0], [2.0, 0.0]]]}
    best = min(model.breakdown(scn, 0, d, None)["non_switching"]
               for d in model.slot_decisions(scn, 0))
    print("symmetric optimum:", repr(best))

    # Static scenario under never-migrate: cum_total = tau * slot-0 total.
    print("static never cum_total (tau=4, slot total 0.5):", 4 * 0.5)

    # Gradient example: single user, c = 1, C_0 = 2, y_00 = 1.
    print("grad_y example:", 1 / (2 - 1) + 1 * 1 / (2 - 1) ** 2)


if __name__ == "__main__":
    main()
