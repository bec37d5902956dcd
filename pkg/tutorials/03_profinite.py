"""Coherent sequences in prod H_n(Z/r^l Z), and the same points with r-adic coordinates."""
from heisenberg_solenoid.group import HeisenbergPoint, compose
from heisenberg_solenoid.profinite import (count_coherent, from_profinite,
                                           group_coherence_check, phi_embed, to_profinite,
                                           v_density_witness)

g = HeisenbergPoint((1,), (2,), 3)
h = HeisenbergPoint((-7,), (5,), 11)

w = phi_embed(g, 2, 3)
for l in range(1, 4):
    print(l, [int(c) for c in w.level(l).coords()])
print(group_coherence_check(w))

# levelwise products agree with products of r-adic coordinates
lhs = phi_embed(g, 2, 3) * phi_embed(h, 2, 3)
rhs = from_profinite(compose(to_profinite(phi_embed(g, 2, 3)), to_profinite(phi_embed(h, 2, 3))))
print(lhs == rhs)

# every coherent element is the image of some integer point
print(v_density_witness(lhs))

# the level-L entry determines the rest: r^(L(2n+1)) coherent elements
print([count_coherent(1, 2, L) for L in (1, 2, 3)])
