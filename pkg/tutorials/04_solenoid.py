"""Heisenberg solenoids truncated at depth L, stored as canonical coset representatives."""
from fractions import Fraction as F

from heisenberg_solenoid.group import HeisenbergPoint
from heisenberg_solenoid.solenoid import (base_projection, canonical_reduce,
                                          dilated_components_as_base, dilated_to_standard,
                                          embed_phi_tilde, embed_psi_tilde, left_action, pi0,
                                          same_coset, shift_map, shift_preimages, tilde_q_embed)

g = HeisenbergPoint((F(5, 2),), (F(3),), F(7, 3))
p = canonical_reduce(g, 2, 1)
print(p.rep)                       # x, y reduced first, then t: (1/2, 1, 4/3)
print(same_coset(g, p.rep, 2, 1))

# shallower levels come from re-reducing the same representative
p3 = canonical_reduce(g, 2, 3)
print([c.rep for c in p3.components()])

# H_n(R) acts on the left; the center only moves the fiber
h = HeisenbergPoint((F(1, 3),), (F(-2),), F(1))
print(left_action(h, p3).rep)
print(base_projection(left_action(HeisenbergPoint((F(0),), (F(0),), F(9, 5)), p3), 3),
      base_projection(p3, 3))

# the shift map delta_r is r^(2n+2)-to-one
target = embed_phi_tilde(HeisenbergPoint((F(0),), (F(0),), F(0)), 2, 0)
pre = shift_preimages(target)
print(len(pre), [q.rep.coords() for q in pre[:4]])
print(all(shift_map(q) == target for q in pre))

# the dilated tower gives the same solenoid
u = embed_psi_tilde(g, 2, 2)
print(dilated_to_standard(u) == embed_phi_tilde(g, 2, 2))
comps = dilated_components_as_base(u)
print(shift_map(comps[1]) == comps[0])

# the circle version: R / 2^L Z, with pi0 reading off the fractional part
c = tilde_q_embed(F(7, 3), 2, 2)
print(c.levels(), pi0(c))
