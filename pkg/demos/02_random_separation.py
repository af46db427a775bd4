"""How often does a random hyperplane separate a point from a polytope?

For a point at distance delta*diam(K) from a k-vertex polytope K, a random
Gaussian direction u separates with margin |u|*delta*diam(K)*t(k,m) with
probability at least (1/40)*k^(-10/delta^2), where m is the dimension of a
subspace containing K and the point.  This script estimates the probability
on the tight example (a segment), shows the 1/sqrt(m) margin decay, and the
degradation as the vertex count grows on a discretized sphere.
"""

import numpy as np

import polylearn as pl


def main():
    K = pl.example1_segment(50)
    a = np.zeros(50)
    a[1] = 1.0  # distance 1 = delta*diam with delta = 1
    est = pl.estimate_rsh_probability(K, a, delta=1.0, m=50, trials=200_000, seed=1)
    print("segment in R^50, delta = 1:")
    print(f"  margin threshold factor t = {est.margin_threshold_factor:.4f}")
    print(f"  empirical success probability = {est.empirical_probability:.4f}")
    print(f"  guaranteed lower bound (1/40)k^(-10/delta^2) = {est.theoretical_lower_bound:.2e}")
    print(f"  99% Wilson interval = [{est.wilson_lower:.4f}, {est.wilson_upper:.4f}]")

    print("\nmargin decay with the subspace dimension (90th percentile of margin/|u|):")
    for m in (10, 50, 250):
        Km = pl.example1_segment(m)
        am = np.zeros(m)
        am[1] = 1.0
        s = pl.normalized_margin_samples(Km, am, m, trials=100_000, seed=2)
        print(f"  m = {m:>3}: q90 = {np.quantile(s, 0.9):.4f}   (1/sqrt(m) = {1/np.sqrt(m):.4f})")

    print("\nsuccess probability vs vertex count (sphere cross-section, delta = 1/2):")
    for k in (4, 16, 64):
        K = pl.example2_sphere(k, 8)
        a = np.zeros(8)
        a[0] = 1.0
        est = pl.estimate_rsh_probability(K, a, delta=0.5, m=8, trials=100_000, seed=3)
        print(f"  k = {k:>2}: empirical p = {est.empirical_probability:.4f}")


if __name__ == "__main__":
    main()
