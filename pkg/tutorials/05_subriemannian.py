"""Horizontal paths, Carnot-Caratheodory distance estimates, and volume scaling."""
import math

import numpy as np

from heisenberg_solenoid.subriemannian import (HorizontalPath, ball_volume_scaling,
                                               box_quasinorm, cc_distance_search, dilate_array,
                                               path_endpoint, path_length, planar_lower_bound,
                                               translation_jacobian_check)

# a horizontal path moves t by the signed integral of y dx
m = 200
tau = np.arange(m + 1) / m
circle = np.stack([np.cos(2 * np.pi * tau), np.sin(2 * np.pi * tau)], axis=1)
path = HorizontalPath(np.diff(circle, axis=0) * m, start=[1.0, 0.0, 0.0])
print(path_endpoint(path), path_length(path))    # back to (1, 0), t ~ -pi, length ~ 2 pi

# shortest path to (0, 0, 1): a circle of area 1, length 2 sqrt(pi)
est = cc_distance_search([0.0, 0.0, 1.0], m=64, restarts=20, seed=0)
print(est.length, 2 * math.sqrt(math.pi), est.endpoint_error)

# straight segments are optimal in the plane
print(cc_distance_search([1.0, 0.0, 0.0], m=64, restarts=4).length)

# d(delta_s p) = s d(p)
p = np.array([0.3, -0.5, 0.7])
a = cc_distance_search(dilate_array(p, 2.0), restarts=6).length
b = cc_distance_search(p, restarts=6).length
print(a, 2 * b, box_quasinorm(p), planar_lower_bound(p))

# balls scale like r^(2n+2)
print(ball_volume_scaling(samples=10 ** 6, seed=0, n=1))
print(ball_volume_scaling(samples=10 ** 6, seed=0, n=2))

# translations preserve Lebesgue measure on both sides
h = np.array([1.0, -2.0, 0.5])
print(translation_jacobian_check(h, "left", probes=5), translation_jacobian_check(h, "right", probes=5))
