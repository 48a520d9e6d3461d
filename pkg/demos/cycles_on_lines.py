"""Residues, reciprocity and homotopy preimages on the affine and projective line."""
from mwcycles import AffineLine, ProjLine, differential, finite_field_of_order, h_preimage, reciprocity_sum, symbol
from mwcycles.chow_witt import chow_witt_curve

F = finite_field_of_order(5)
P1 = ProjLine(F)
T = P1.function_field
alpha = symbol(T, T.t ** 2 + 2, T.t + 1)
print("alpha =", alpha)
print("d(alpha) on P^1:", differential(P1, alpha))
print("reciprocity sum:", reciprocity_sum(P1, alpha), "(degree one is written multiplicatively, [1] is zero)")

A1 = AffineLine(F)
target = differential(A1, alpha)
beta = h_preimage(target)
print("preimage of d(alpha) on A^1:", beta, "| check:", differential(A1, beta) == target)

for model in (A1, P1):
    G, _ = chow_witt_curve(model)
    print(f"CH~_0 of {model.spec()}: {G}")
