"""Brute-force structure of H_n(Z/kZ) and of the lattices H_n(kZ) and delta_r(H_n(Z))."""
from heisenberg_solenoid.finite import (center_of, commutator_subgroup, dilated_lattice_image,
                                        enumerate_group, is_normal, normal_closure,
                                        quotient_center_by_commutator, scaled_lattice_image,
                                        subgroup_index)

# k^(2n+1) elements
for n, k in [(1, 2), (1, 3), (2, 2)]:
    print(n, k, enumerate_group(n, k).order)

# the center is the t-axis, and every central element is a commutator
G = enumerate_group(1, 6)
Z, C = center_of(G), commutator_subgroup(G)
print(Z.order, Z == C)
print(Z.coords()[:3])

# work modulo 8 = 2^3 so both lattices are visible
G = enumerate_group(1, 8)
S = scaled_lattice_image(G, 2)     # image of H_1(2Z)
D = dilated_lattice_image(G, 2)    # image of delta_2(H_1(Z)) = {(2a, 2b, 4c)}
print(subgroup_index(G, S), subgroup_index(G, D))   # 2^3 and 2^4

# H(2Z) is normal, the dilated lattice is not, though it is normal inside H(2Z)
print(is_normal(G, S), is_normal(G, D), is_normal(S, D))
print(normal_closure(G, D).order)   # t-axis filled in: 4 * 4 * 4

# the commutator subgroup of H(2Z) only reaches 4Z in the t-coordinate
print(commutator_subgroup(S).coords())

# center / commutator of H_n(kZ) has order k, so H_n(kZ) are pairwise non-isomorphic
for k in (2, 3):
    print(k, quotient_center_by_commutator(1, k, 3))
