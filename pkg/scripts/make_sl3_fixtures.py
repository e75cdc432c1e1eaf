"""Regenerate src/bruhatcells/data/sl3_fixtures.json from the SL(3) closed forms."""
import json
from pathlib import Path

import numpy as np

from bruhatcells import sl3
from bruhatcells.matrixlie import matrix_to_json
from bruhatcells.rootsys import build_type_a

OUT = Path(__file__).resolve().parents[1] / "src" / "bruhatcells" / "data" / "sl3_fixtures.json"

# representatives as displayed for SL(3), entered literally
G1 = [[0, 1j, 0], [1j, 0, 0], [0, 0, 1]]
G2 = [[1, 0, 0], [0, 0, 1j], [0, 1j, 0]]
WDOT = [[0, 0, -1], [0, -1, 0], [-1, 0, 0]]


def cjson(v):
    return [[complex(x).real, complex(x).imag] for x in v]


def main(seed: int = 20240601, count: int = 50) -> None:
    rng = np.random.default_rng(seed)
    z = rng.uniform(-3, 3, (count, 3)) + 1j * rng.uniform(-3, 3, (count, 3))
    u = sl3.u_from_z(z)
    points = []
    for k in range(count):
        points.append({
            "z": cjson(z[k]),
            "u": cjson(u[k]),
            "n": matrix_to_json(sl3.n_matrix(u[k])),
            "a_w_diag": sl3.a_w_diag_z(z[k]).tolist(),
            "deltas": sl3.deltas_z(z[k]).tolist(),
            "z_prime": cjson(sl3.bott_samelson_z_prime(z[k])),
            "circ_product": matrix_to_json(sl3.circ_product_z(z[k])),
        })
    doc = {
        "schema": "bruhatcells.sl3-fixtures/1",
        "root_system": build_type_a(3).to_json(),
        "word": list(sl3.WORD),
        "seed": seed,
        "gamma_dot": [matrix_to_json(G1), matrix_to_json(G2)],
        "w_dot": matrix_to_json(WDOT),
        "points": points,
    }
    OUT.write_text(json.dumps(doc, indent=1) + "\n")
    print(f"wrote {len(points)} points to {OUT}")


if __name__ == "__main__":
    main()
