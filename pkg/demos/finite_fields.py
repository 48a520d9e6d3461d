"""Grothendieck-Witt and Witt groups of small finite fields, plus a transfer."""
from mwcycles import finite_field_of_order, gw_of_finite_field, n_epsilon, transfer, witt_group
from mwcycles.finite_field import FFElem, first_irreducible
from mwcycles.gw import angle

for q in (2, 3, 4, 5, 7, 9, 27):
    print(f"q={q:<3} GW = {gw_of_finite_field(q).group}   W = {witt_group(q)}")

F = finite_field_of_order(7)
print("3_eps over F_7:", n_epsilon(3, F))

L = F.extension(first_irreducible(F, 2))
a = FFElem(L, L.gen_raw)
print("trace transfer of <a> from F_49 to F_7:", transfer(angle(L, a), F))
