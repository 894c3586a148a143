"""Eigenvalues of the Voisin map on a block model of the Chow groups, and the
projectors built from them.

Run with ``python3 demos/voisin_map_spectrum.py``.
"""

import random

from fano_calculus.chern import derive_a, key_identity_coefficients
from fano_calculus.chowmodel import build_model, derive_operator_relations, random_ranks, verify_minpolys
from fano_calculus.projectors import assemble_ck, beilinson_lift, murre_D_check, random_lift_input


def main():
    a = derive_a()
    print(f"the Chern expansion forces a = {a}")
    print("key identity coefficients:", ", ".join(str(c) for c in key_identity_coefficients(a)))

    d = derive_operator_relations()
    print("\nrelations derived by rewriting:")
    for claim, nf in d.claims.items():
        print(f"  {claim:28} normal form {nf}")

    model = build_model((1, 1, 1, 1), basis_seed=0)
    print("\nminimal polynomials with every block present:")
    for row in verify_minpolys(model):
        print(f"  {row['operator']:20} {row['computed']}")

    rng = random.Random(7)
    bad = 0
    for _ in range(50):
        m = build_model(random_ranks(rng, 0, 3), basis_seed=rng.randrange(10 ** 6))
        bad += not all(r["ok"] for r in verify_minpolys(m))
    print(f"random sweep of 50 rank tuples: {50 - bad} agree")

    ck = assemble_ck(model)
    print("\nChow-Kunneth assembly:")
    for name, ok in ck.checks().items():
        print(f"  {name:34} {ok}")
    for ranks in ((1, 1, 1, 1), (1, 0, 1, 1)):
        holds, _ = murre_D_check(build_model(ranks, basis_seed=1))
        print(f"pi4 kills CH_2 hom for ranks {ranks}: {holds}")

    p = random_lift_input(random.Random(3), size=6, rank=3, index=3)
    res = beilinson_lift(p)
    print(f"\nidempotent lift: defect index {res.index}, {res.iterations} iterations (bound {res.bound})")


if __name__ == "__main__":
    main()
