"""Walk through the tautological ring of the Fano variety of lines.

Run with ``python3 demos/tautological_ring.py``.
"""

from fractions import Fraction

from fano_calculus.chowmodel import verify_phi_of_o
from fano_calculus.dsl import evaluate_text
from fano_calculus.tautological import C, CX, G, cylinder_table


def main():
    # degree-4 products land on multiples of the canonical zero-cycle o
    print("top products")
    for name, value in [("g^4", G ** 4), ("c^2", C * C), ("g^2 c", G * G * C), ("g Cx", G * CX)]:
        print(f"  {name:6} = {value}")

    # the class of the surface of lines through a general point of the
    # canonical surface squares to 5 o
    s_o = (G * G - C).scale(Fraction(1, 3))
    print(f"\n(1/3 (g^2 - c))^2 = {s_o * s_o}")
    res = verify_phi_of_o()
    print(f"so phi_*(o) = {res.phi_push_o} o and phi^*(o) = {res.phi_pull_o} o")

    # every cylinder identity is computed by going through the fourfold
    print("\ncylinder identities")
    for lhs, expected, computed in cylinder_table():
        mark = "ok" if computed == expected else "MISMATCH"
        print(f"  {lhs:16} = {str(computed):14} {mark}")

    # the expression language reaches the same numbers
    print("\nexpression language")
    for text in ["g^2 * g^2", "push(D, pt[l])", "((1/3)*(g^2 - c))^2", "push(g2^2*I, pt[l])"]:
        print(f"  {text:22} -> {evaluate_text(text)}")


if __name__ == "__main__":
    main()
