"""Chow-Witt groups of zero cycles on rings of integers, next to their class groups."""
import time

from mwcycles import chow_witt_number_ring, class_group, quadratic_field
from mwcycles.kmw import MILNOR

for d in (-1, -5, -23, -14, -21, 10):
    t = time.perf_counter()
    G, cert = chow_witt_number_ring(d)
    Gm, _ = chow_witt_number_ring(d, mode=MILNOR)
    cl = class_group(quadratic_field(d))[0].invariants()
    orders = [s["order"] for s in cert.to_json()["stages"]]
    print(f"d={d:<4} CH~ = {str(G):<10} Milnor = {str(Gm):<10} Cl = {str(cl):<10} "
          f"stage orders {orders}  {time.perf_counter() - t:.2f}s")
