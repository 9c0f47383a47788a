"""SO(N) specializations and the rigid N = 2 structure.

Substituting A = q, B = q^-1, a = q^(N-1) turns the two-variable invariant
into the one-variable SO(N) Kauffman polynomial.  At N = 2 the four skein
constants degenerate so far that the polynomial of any planar trivalent
graph depends only on its component and vertex counts:

    P(G) = 2^(c-1) (-q - q^-1)^(n/2).
"""

import random

from dubrovnik import (constants, eval_braid, evaluate, n2_closed_form,
                       parse_braid, qlaurent_text, so_n, specialize_soN)
from dubrovnik.corpus import dodecahedral_graphs, random_trivalent_graph

C = constants()

print("the four constants at N = 2, 3, 4:")
for n in (2, 3, 4):
    row = [qlaurent_text(specialize_soN(x, n))
           for x in (C.alpha, C.beta, C.gamma, C.delta)]
    print(f"  N={n}: alpha = {row[0]:18s} beta = {row[1]:24s} "
          f"gamma = {row[2]:18s} delta = {row[3]}")

hopf = eval_braid(parse_braid("1 1"))
print("\nHopf at N=2:", qlaurent_text(so_n(hopf, 2)))
print("Hopf at N=3:", qlaurent_text(so_n(hopf, 3)))
print("Hopf at N=4:", qlaurent_text(so_n(hopf, 4)))

# The N = 2 closed form bypasses the reduction engine entirely and agrees
# with specializing the full evaluation.
rng = random.Random(1)
print("\nclosed form vs specialized evaluation:")
for _ in range(3):
    g = random_trivalent_graph(rng, max_vertices=10)
    closed = n2_closed_form(g)
    full = specialize_soN(evaluate(g), 2)
    print(f"  {g.vertex_count():2d} vertices: {qlaurent_text(closed):30s}",
          closed == full)

# It also holds for graphs with no small faces, where evaluation has to
# discover moves before it can reduce anything.
g = dodecahedral_graphs(1)[0]
print("\ndodecahedral graph (20 vertices, all faces pentagons):")
print("  closed form:", qlaurent_text(n2_closed_form(g)))
print("  engine agrees:", specialize_soN(evaluate(g), 2) == n2_closed_form(g))
