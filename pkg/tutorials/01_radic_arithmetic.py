"""r-adic integers by hand: absolute values, coherent residues, truncated digits."""

from heisenberg_solenoid.rings import (RAdicInt, embed_q, coherence_check, radic_abs,
                                       radic_dist, radic_from_cauchy, ultrametric_rho)

# |a|_r = r^-l where r^l is the largest power of r dividing a
print(radic_abs(12, 2))          # 1/4, since 4 | 12 but 8 does not
print(radic_abs(0, 5))           # 0 by convention
print(radic_dist(3, 7, 2))       # |3 - 7|_2 = |-4|_2 = 1/4

# composite radices still give an ultrametric, but |.|_6 is not multiplicative
print(radic_abs(2, 6) * radic_abs(3, 6), radic_abs(6, 6))

# q: Z -> prod Z/r^l Z, one residue per level
x = embed_q(5, 2, 4)
print([str(v) for v in x.residues])   # 1 mod 2, 1 mod 4, 5 mod 8, 5 mod 16
print(coherence_check(x))

# rho(q(a), q(b)) = |a - b|_r as long as |a - b| < r^L
a, b = 40, 48
print(ultrametric_rho(embed_q(a, 2, 6), embed_q(b, 2, 6)), radic_dist(a, b, 2))

# arithmetic mod r^L; mixed precisions truncate to the smaller one
u, v = RAdicInt(3, 2, 3), RAdicInt(5, 2, 3)
print(u * v, (-RAdicInt(1, 2, 3)).digits())    # 15 = 7 mod 8; -1 is all ones

# a Cauchy sequence in the 2-adic metric: 1, 3, 7, 15, ... tends to -1
partial = [2 ** (j + 1) - 1 for j in range(10)]
print(radic_from_cauchy(partial, 2, 6) == RAdicInt(-1, 2, 6))
