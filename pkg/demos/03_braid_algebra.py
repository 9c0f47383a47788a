"""The braid-algebra route to the same invariant.

Every braid letter expands into three weighted tangles: the identity
pattern, the cup-cap pattern t_i, and the wide gadget c_i.  Multiplying the
expansions by stacking and closing up gives the trace; the bracket
a^(-writhe) tr(rho(braid)) is a Markov-invariant function of the braid and
recovers the link polynomial.
"""

from dubrovnik import (BraidWord, bracket, c_tangle, constants, eval_braid,
                       identity_tangle, parse_braid, rho_expand, t_tangle,
                       to_canonical_text, trace, RingElem)

C = constants()

# Traces of the three generators on two strands: closing the identity gives
# two circles (alpha), the cup-cap gives one circle, the gadget gives theta.
one = RingElem.one()
print("tr(1_2) =", to_canonical_text(trace([(one, identity_tangle(2))])))
print("tr(t_1) =", to_canonical_text(trace([(one, t_tangle(2, 1))])))
print("tr(c_1) =", to_canonical_text(trace([(one, c_tangle(2, 1))])))

# rho expands a braid into 3^length tangle terms.
b = parse_braid("1 1")
combo = rho_expand(b)
print(f"\nrho(sigma_1^2) has {len(combo)} terms")
lit = RingElem.mono(-b.writhe(), 0, 0) * trace(combo)
print("literal trace path equals bracket():", lit == bracket(b))

# The bracket is invariant under conjugation, stabilization and insertion
# of sigma_i sigma_i^-1: the Markov moves.
b = BraidWord(3, (1, -2, 1, 1))
base = bracket(b)
print("\nMarkov invariance for", b.letters)
print("  conjugation:  ", bracket(b.conjugated_by(2)) == base)
print("  stabilization:", bracket(b.stabilized(1)) == base,
      bracket(b.stabilized(-1)) == base)
ins = BraidWord(3, (1, 2, -2, -2, 1, 1))
print("  insertion:    ", bracket(ins) == base)

# Path agreement: bracket * a^writhe equals the state sum over the closure.
for text in ["1 1 1", "n=3; 1 -2 1 -2", "n=4; 1 2 3 1"]:
    b = parse_braid(text)
    lhs = RingElem.mono(b.writhe(), 0, 0) * bracket(b)
    print(f"bracket vs state sum for {text!r}:",
          lhs == eval_braid(b).value)
