"""Soft convex hulls: pruning a point cloud to its essential representatives.

An (eps, delta)-envelope is a subset T of W whose eps*diam(W)-inflated hull
covers W while the members stay delta*diam(W)-separated from each other's
hulls.  Greedy strategies fail on rings (every point is near the hull of the
rest) and on midpoints of edges; the prune-then-thin procedure handles both.
"""

import warnings

import numpy as np

import polylearn as pl


def main():
    fx = pl.fixtures()
    params = pl.EnvelopeParams(epsilon=0.02, delta=0.5, epsilon3=0.08)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)

        W = fx["two-cluster"]
        res = pl.find_soft_envelope(W, params)
        print(f"two clusters of 5 points each -> envelope indices {res.q_indices}")

        rings = fx["two-rings"]
        dw = pl.diameter(rings)
        naive = [
            j
            for j in range(rings.count)
            if not pl.in_soft_hull(
                rings.entries[:, j], np.delete(rings.entries, j, axis=1), 0.02, dw
            )[0]
        ]
        res = pl.find_soft_envelope(rings, params)
        print(f"\ntwo rings: naive 'drop points near the hull of the rest' keeps {naive}")
        print(f"two rings: envelope procedure keeps {res.q_indices} (one per ring)")

        sq = fx["square-plus-midpoint"]
        res = pl.find_soft_envelope(sq, pl.EnvelopeParams(0.0005, 0.1, 0.02))
        print(f"\nsquare + top-edge midpoint: envelope keeps {res.q_indices}")
        print("(the midpoint is inside the hull of its far set, so it gets pruned;")
        print(" an iterative farthest-point heuristic would have grabbed it early)")


if __name__ == "__main__":
    main()
