"""The 27 lines, their triangles and the triangle relations for disjoint pairs.

Run with ``python3 demos/lines_on_a_cubic_surface.py``.
"""

from collections import Counter

from fano_calculus import surface


def main():
    lines = surface.enumerate_lines()
    print(f"{len(lines)} lines in the Picard lattice of the blown-up plane")
    for label, cls in lines[:3]:
        print(f"  {label}: {cls}")
    print("  ...")

    labs = surface.all_labels()
    degrees = Counter(sum(surface.meets(x, y) for y in labs if y != x) for x in labs)
    print(f"each line meets {sorted(degrees)} others")

    tris = surface.enumerate_triangles()
    print(f"{len(tris)} triangles (coplanar triples)")

    part = surface.find_triangle_partition()
    print("\na partition of the 27 lines into 9 triangles:")
    for t in part:
        print("  " + " ".join(str(l) for l in t.lines))

    pairs = surface.disjoint_pairs()
    print(f"\n{len(pairs)} unordered disjoint pairs, each with 5 secants")
    x, y = surface.LineLabel("E", 1), surface.LineLabel("E", 2)
    print(f"secants of ({x}, {y}):", ", ".join(map(str, surface.secant_lines(x, y))))

    cert = surface.reference_certificate()
    print("\nsigned triangle combination for 2E1 + 2E2 + secants:")
    for t, k in cert.coefficients.items():
        print(f"  {k:+d} * ({' '.join(map(str, t.lines))})")
    print("valid:", cert.is_valid())

    # every other pair is handled by symmetry or by a bounded search
    x, y = surface.LineLabel.parse("L12"), surface.LineLabel.parse("L13")
    other = surface.verify_pair_decomposition(x, y, use_reference=False)
    print(f"\npair ({x}, {y}): {len(other.coefficients)} triangles, found via {other.source}")


if __name__ == "__main__":
    main()
