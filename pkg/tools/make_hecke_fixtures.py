"""Regenerate the Brandt-matrix fixtures in src/hyperell/data/hecke.

Brandt matrix B(p) in characteristic q: rows and columns are the
supersingular j-invariants over F_{q^2}; entry (i, j) is the multiplicity
of j_j as a root of the modular polynomial Phi_p(j_i, Y).  Only p = 2, 3 are
supported (their modular polynomials are hard-coded below).

    python tools/make_hecke_fixtures.py
"""

from __future__ import annotations

import json
from pathlib import Path

import networkx as nx

OUT = Path(__file__).resolve().parent.parent / "src" / "hyperell" / "data" / "hecke"

# Phi_p(X, Y) as {(i, k): c} meaning c X^i Y^k
PHI = {
    2: {(3, 0): 1, (0, 3): 1, (2, 2): -1, (2, 1): 1488, (1, 2): 1488, (2, 0): -162000, (0, 2): -162000,
        (1, 1): 40773375, (1, 0): 8748000000, (0, 1): 8748000000, (0, 0): -157464000000000},
    3: {(4, 0): 1, (0, 4): 1, (3, 3): -1, (3, 2): 2232, (2, 3): 2232, (3, 1): -1069956, (1, 3): -1069956,
        (3, 0): 36864000, (0, 3): 36864000, (2, 2): 2587918086, (2, 1): 8900222976000,
        (1, 2): 8900222976000, (2, 0): 452984832000000, (0, 2): 452984832000000,
        (1, 1): -770845966336000000, (1, 0): 1855425871872000000000, (0, 1): 1855425871872000000000},
}

# discriminant -> CM j-invariant, used to find a first supersingular j
CM = {-3: 0, -4: 1728, -7: -3375, -8: 8000, -11: -32768, -12: 54000, -16: 287496, -19: -884736,
      -27: -12288000, -28: 16581375, -43: -884736000, -67: -147197952000, -163: -262537412640768000}

# Ogg's hyperelliptic Shimura curves, D = p q
OGG = [26, 35, 38, 39, 51, 55, 57, 58, 62, 69, 74, 82, 86, 87, 93, 94, 95, 111, 119, 134, 146, 159, 194, 206]


class Fq2:
    """F_{q^2} = F_q[s] / (s^2 - n) with n a non-residue; elements are pairs."""

    def __init__(self, q: int):
        self.q = q
        self.n = next(x for x in range(2, q) if pow(x, (q - 1) // 2, q) == q - 1) if q > 2 else None

    def add(self, a, b):
        return ((a[0] + b[0]) % self.q, (a[1] + b[1]) % self.q)

    def mul(self, a, b):
        q, n = self.q, self.n
        return ((a[0] * b[0] + a[1] * b[1] * n) % q, (a[0] * b[1] + a[1] * b[0]) % q)

    def elements(self):
        return [(x, y) for x in range(self.q) for y in range(self.q)]


def poly_in_y(field: Fq2, p: int, x) -> list:
    """Coefficients (lowest first) of Phi_p(x, Y) over F_{q^2}."""
    coeffs = [(0, 0)] * (p + 2)
    powers = [(1, 0)]
    for _ in range(p + 1):
        powers.append(field.mul(powers[-1], x))
    for (i, k), c in PHI[p].items():
        term = field.mul(((c % field.q), 0), powers[i])
        coeffs[k] = field.add(coeffs[k], term)
    return coeffs


def roots_with_multiplicity(field: Fq2, coeffs: list) -> dict:
    out = {}
    for r in field.elements():
        poly = list(coeffs)
        m = 0
        while len(poly) > 1:
            # synthetic division by (Y - r)
            acc, quot = (0, 0), []
            for c in reversed(poly):
                acc = field.add(field.mul(acc, r), c)
                quot.append(acc)
            rem = quot.pop()
            if rem != (0, 0):
                break
            m += 1
            poly = list(reversed(quot))
        if m:
            out[r] = m
    return out


def supersingular_count(q: int) -> int:
    return q // 12 + {1: 0, 5: 1, 7: 1, 11: 2}[q % 12]


def brandt(p: int, q: int) -> list[list[int]]:
    field = Fq2(q)
    start = None
    for disc, j in CM.items():
        # a CM curve is supersingular mod q when q is inert in the CM field
        if disc % q and pow(disc % q, (q - 1) // 2, q) == q - 1:
            start = (j % q, 0)
            break
    if start is None:
        raise RuntimeError(f"no CM starting point for q={q}")
    graph_roots = {}
    queue = [start]
    while queue:
        j = queue.pop()
        if j in graph_roots:
            continue
        graph_roots[j] = roots_with_multiplicity(field, poly_in_y(field, p, j))
        queue.extend(r for r in graph_roots[j] if r not in graph_roots)
    js = sorted(graph_roots)
    if len(js) != supersingular_count(q):
        raise RuntimeError(f"found {len(js)} supersingular j for q={q}")
    return [[graph_roots[a].get(b, 0) for b in js] for a in js]


def write(name: str, mat, D: int, p: int, q: int, manifest: dict, expected, source: str) -> None:
    d = len(mat)
    lines = [f"hecke {d} {D} {p} {q}"] + [" ".join(map(str, row)) for row in mat]
    (OUT / name).write_text("\n".join(lines) + "\n")
    manifest[name] = {"expected_planar": expected, "source": source}


def planar(mat) -> bool:
    d = len(mat)
    h = nx.Graph()
    h.add_nodes_from(range(2 * d))
    h.add_edges_from((i, d + j) for i in range(d) for j in range(d) if mat[i][j])
    return nx.check_planarity(h)[0]


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    manifest: dict = {}
    for D in OGG:
        p1, p2 = sorted(x for x in range(2, D + 1) if D % x == 0 and all(x % y for y in range(2, x)))
        for p, q in ((p1, p2), (p2, p1)):
            if q in (2, 3):
                mat = [[p + 1]]  # a single supersingular class in characteristic 2 or 3
            elif p in PHI:
                mat = brandt(p, q)
            else:
                continue
            if not planar(mat):
                raise RuntimeError(f"D={D} p={p}: dual graph is not planar")
            write(f"ogg_D{D}_p{p}.txt", mat, D, p, q, manifest, True, "paper")
    # outside Ogg's list: expected values computed when the fixture was made
    for p, q in ((2, 193), (3, 101), (2, 109)):
        mat = brandt(p, q)
        write(f"extra_p{p}_q{q}.txt", mat, p * q, p, q, manifest, planar(mat), "derived")
    # the identity operator: a perfect matching, trivially planar
    write("identity_d4.txt", [[int(i == j) for j in range(4)] for i in range(4)], 0, 1, 0, manifest, True, "derived")
    # malformed on purpose: support is not symmetric
    write("asymmetric.txt", [[0, 1, 0], [0, 0, 2], [1, 0, 0]], 0, 0, 0, manifest, None, "invalid")
    (OUT / "manifest.json").write_text(json.dumps(manifest, indent=1, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
