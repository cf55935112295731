#!/usr/bin/env python3
"""Write the sample input files used by the demos and the README."""
from fractions import Fraction
from pathlib import Path

from npcx import io
from npcx.builders import named_graph
from npcx.cog import bourdon_polygon
from npcx.complex import build_complex
from npcx.cubical import build_cube_complex, grid_complex
from npcx.curvature import SimplicialComplex2
from npcx.groups import CoxeterSystem

OUT = Path(__file__).resolve().parent / "inputs"
RIGHT = Fraction(1, 2)


def torus_square():
    # one vertex, two loops, one square reading a b a^-1 b^-1
    return build_complex({
        "vertices": [0],
        "edges": [{"id": 0, "ends": [0, 0]}, {"id": 1, "ends": [0, 0]}],
        "faces": [{"boundary": [[0, False], [1, False], [0, True], [1, True]],
                   "angles": [RIGHT] * 4}],
    })


def torus_cubes(n=3):
    """``n`` by ``n`` square grid with opposite sides glued."""
    def vid(i, j):
        return (j % n) * n + (i % n)

    edges, horiz, vert = {}, {}, {}
    for j in range(n):
        for i in range(n):
            horiz[i, j] = len(edges)
            edges[len(edges)] = (vid(i, j), vid(i + 1, j))
            vert[i, j] = len(edges)
            edges[len(edges)] = (vid(i, j), vid(i, j + 1))
    squares = [{"corners": [vid(i, j), vid(i + 1, j), vid(i, j + 1), vid(i + 1, j + 1)],
                "edges": [horiz[i, j], horiz[i, (j + 1) % n], vert[i, j], vert[(i + 1) % n, j]]}
               for j in range(n) for i in range(n)]
    return build_cube_complex({"vertices": range(n * n), "edges": edges, "squares": squares})


def solid_cube():
    corners = list(range(8))
    return build_cube_complex({
        "vertices": corners,
        "edges": [[a, b] for a in corners for b in corners if a < b and bin(a ^ b).count("1") == 1],
        "squares": [{"corners": list(s)} for s in
                    [(0, 2, 4, 6), (1, 3, 5, 7), (0, 1, 4, 5), (2, 3, 6, 7), (0, 1, 2, 3),
                     (4, 5, 6, 7)]],
        "cubes": [{"corners": corners}],
    })


def main():
    OUT.mkdir(exist_ok=True)
    files = {
        "torus.cplx": io.complex_to_json(torus_square()),
        "grid2x1.ccx": io.cube_complex_to_json(grid_complex(2, 1)),
        "torus3x3.ccx": io.cube_complex_to_json(torus_cubes()),
        "solid_cube.ccx": io.cube_complex_to_json(solid_cube()),
        "hollow_triangle.scx": io.simplicial_to_json(
            SimplicialComplex2.create([0, 1, 2], [(0, 1), (1, 2), (0, 2)])),
        "two_simplex.scx": io.simplicial_to_json(
            SimplicialComplex2.create([0, 1, 2], [(0, 1), (1, 2), (0, 2)], [(0, 1, 2)])),
        "heawood.graph": io.graph_to_json(named_graph("heawood")),
        "K4.graph": io.graph_to_json(named_graph("K4")),
        "ipq53.pog": io.pog_to_json(bourdon_polygon(5, 3)),
        "pentagon_nerve.cox": io.coxeter_to_json(
            CoxeterSystem.from_graph(list("abcde"), [(x, y) for x, y in zip("abcde", "bcdea")],
                                     2), q=[3] * 5),
    }
    for name, doc in files.items():
        io.save(OUT / name, doc)
        print(OUT / name)


if __name__ == "__main__":
    main()
