"""Smoke test for the pyeqpart extension module.

Build first, e.g. `maturin develop -m crates/py/Cargo.toml`, then run
`python python/smoke_test.py`.
"""

from fractions import Fraction

import pyeqpart as eq


def rows(*rows):
    return [[Fraction(x) for x in r] for r in rows]


def main():
    h = eq.Graph.hamming(2, 3)
    assert h.n_vertices == 9
    assert h.intersection_array() == ([4, 2], [0, 1, 2], [1, 2])

    colors = eq.distance_coloring(h, [0])
    s = eq.quotient_matrix(h, colors)
    assert s == rows([0, 4, 0], [1, 1, 2], [0, 2, 2])

    d = eq.vertex_distribution(h, s, 0)
    f = [[Fraction(int(c == j)) for j in range(3)] for c in colors]
    assert d == eq.brute_distribution(h, [0], f)

    h7 = eq.Graph.hamming(7, 2)
    code = eq.binary_hamming_code(3)
    crc = eq.check_completely_regular(h7, code)
    assert crc["rho"] == 1 and crc["R"] == rows([0, 7], [1, 6])

    g = [[7 if v in code else -1] for v in range(128)]
    holds, _ = eq.verify_structure(h7, g, [[-1]])
    assert holds
    assert eq.code_distribution(h7, code, [[-1]], [112]) == rows([112], [-112])

    assert eq.lattice_distribution(2, 2, 2, [[4]], [4]) == rows([4], [8], [4])
    assert eq.pcube_distribution(2, 2, 3, [[4]], ["4"]) == rows([4], [4], [1])
    assert eq.krawtchouk(1, 3, Fraction(3, 2)) == [Fraction(3, 2), Fraction(-3, 2)]

    r = eq.tensor_params(s, s)
    assert r[5] == rows([0, 0, 1, 0, 2, 3, 0, 0, 2])[0]

    prod = eq.Graph.product(h, h)
    local = eq.local_distribution(h, [0], h, [0], [0] * prod.n_vertices)
    rebuilt = eq.reconstruct_local(h, [0], h, [0], [[8]], local["h_star"][0])
    assert rebuilt == local["h_star"]

    try:
        eq.quotient_matrix(h, [0, 1] + [0] * 7)
    except ValueError:
        pass
    else:
        raise AssertionError("non-equitable coloring accepted")

    print("pyeqpart smoke test passed")


if __name__ == "__main__":
    main()
