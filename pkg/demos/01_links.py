"""Computing the two-variable Kauffman polynomial of links.

The invariant P(A, B, a) lives in Z[A^±1, B^±1, a^±1, (A-B)^-1] and is a
regular-isotopy invariant; a^(-writhe) P is the ambient-isotopy version.
Setting z = A - B recovers the classical Dubrovnik polynomial D(z, a).
"""

from dubrovnik import (eval_braid, kauffman_state_sum, normalized,
                       parse_braid, parse_pd, to_canonical_text)

# The unknot, from a one-strand braid with no letters.
unknot = eval_braid(parse_braid("n=1;"))
print("unknot:", to_canonical_text(unknot.value))

# The Hopf link is the closure of sigma_1^2.  Nine states are summed.
hopf = eval_braid(parse_braid("1 1"))
print(f"\nHopf link ({hopf.states_evaluated} states):")
print(" ", to_canonical_text(hopf.value))

# Positive and negative kinks scale the invariant by a and 1/a; the
# normalized value divides the writhe back out.
kink = eval_braid(parse_braid("1"))
print("\npositive kink:", to_canonical_text(kink.value),
      "-> normalized:", to_canonical_text(normalized(kink)))

# The trefoil, its mirror, and how chirality shows up: the mirror value is
# the image under A <-> B, a <-> a^-1, and differs from the original.
trefoil = eval_braid(parse_braid("1 1 1"))
mirror_trefoil = eval_braid(parse_braid("-1 -1 -1"))
print("\ntrefoil:        ", to_canonical_text(normalized(trefoil)))
print("mirror trefoil: ", to_canonical_text(normalized(mirror_trefoil)))
print("mirror law holds:",
      mirror_trefoil.value == trefoil.value.swap_AB_invert_a())
print("trefoil is chiral:", trefoil.value != mirror_trefoil.value)

# PD codes describe diagrams directly: X(a,b,c,d) lists the four edge
# labels counterclockwise starting on the under-strand.
pd_hopf = kauffman_state_sum(parse_pd("X(1,3,2,4) X(3,1,4,2)"))
print("\nHopf from its PD code matches:", pd_hopf.value == hopf.value)
