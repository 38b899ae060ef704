"""Writes the structure fixtures under data/structures/ (lattice vectors in angstrom, fractional positions)."""
import json
import math
import pathlib

OUT = pathlib.Path(__file__).resolve().parent.parent / "data" / "structures"


def fcc(a):
    h = a / 2
    return [[0, h, h], [h, 0, h], [h, h, 0]]


def bcc(a):
    h = a / 2
    return [[-h, h, h], [h, -h, h], [h, h, -h]]


def hexagonal(a, c):
    return [[a, 0, 0], [-a / 2, a * math.sqrt(3) / 2, 0], [0, 0, c]]


def tetragonal(a, c):
    return [[a, 0, 0], [0, a, 0], [0, 0, c]]


def pp(el):
    return f"{el}.pbe-n-kjpaw_psl.1.0.0.UPF"


STRUCTURES = [
    ("Si", "3D", fcc(5.431), [("Si", [0, 0, 0]), ("Si", [0.25, 0.25, 0.25])]),
    ("C", "3D", fcc(3.567), [("C", [0, 0, 0]), ("C", [0.25, 0.25, 0.25])]),
    ("Cu", "3D", fcc(3.615), [("Cu", [0, 0, 0])]),
    ("Al", "3D", fcc(4.05), [("Al", [0, 0, 0])]),
    ("Ni", "3D", fcc(3.524), [("Ni", [0, 0, 0])]),
    ("Au", "3D", fcc(4.078), [("Au", [0, 0, 0])]),
    ("Ag", "3D", fcc(4.086), [("Ag", [0, 0, 0])]),
    ("Pt", "3D", fcc(3.924), [("Pt", [0, 0, 0])]),
    ("Fe", "3D", bcc(2.867), [("Fe", [0, 0, 0])]),
    ("GaAs", "3D", fcc(5.653), [("Ga", [0, 0, 0]), ("As", [0.25, 0.25, 0.25])]),
    ("MgO", "3D", fcc(4.212), [("Mg", [0, 0, 0]), ("O", [0.5, 0.5, 0.5])]),
    ("NaCl", "3D", fcc(5.640), [("Na", [0, 0, 0]), ("Cl", [0.5, 0.5, 0.5])]),
    ("NiO", "3D", fcc(4.177), [("Ni", [0, 0, 0]), ("O", [0.5, 0.5, 0.5])]),
    ("ZnO", "3D", hexagonal(3.25, 5.207),
     [("Zn", [1 / 3, 2 / 3, 0]), ("Zn", [2 / 3, 1 / 3, 0.5]), ("O", [1 / 3, 2 / 3, 0.382]), ("O", [2 / 3, 1 / 3, 0.882])]),
    ("TiO2", "3D", tetragonal(4.594, 2.959),
     [("Ti", [0, 0, 0]), ("Ti", [0.5, 0.5, 0.5]), ("O", [0.305, 0.305, 0]), ("O", [0.695, 0.695, 0]),
      ("O", [0.805, 0.195, 0.5]), ("O", [0.195, 0.805, 0.5])]),
    ("C", "2D", hexagonal(2.464, 15.0), [("C", [1 / 3, 2 / 3, 0.5]), ("C", [2 / 3, 1 / 3, 0.5])]),
    ("BN", "2D", hexagonal(2.504, 15.0), [("B", [1 / 3, 2 / 3, 0.5]), ("N", [2 / 3, 1 / 3, 0.5])]),
    ("MoS2", "2D", hexagonal(3.16, 18.0),
     [("Mo", [1 / 3, 2 / 3, 0.5]), ("S", [2 / 3, 1 / 3, 0.5 + 1.56 / 18]), ("S", [2 / 3, 1 / 3, 0.5 - 1.56 / 18])]),
    # 1T-type PdS2 layer with a doubled in-plane cell: 2 Pd + 4 S
    ("PdS2", "2D", [[5.46, 0, 0], [0, 3.54, 0], [0, 0, 20.0]],
     [("Pd", [0, 0, 0.5]), ("Pd", [0.5, 0.5, 0.5]),
      ("S", [0.25, 0.16, 0.5 + 1.25 / 20]), ("S", [0.75, 0.66, 0.5 + 1.25 / 20]),
      ("S", [0.25, 0.84, 0.5 - 1.25 / 20]), ("S", [0.75, 0.34, 0.5 - 1.25 / 20])]),
]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for formula, dim, cell, atoms in STRUCTURES:
        species = [a[0] for a in atoms]
        doc = {
            "formula": formula,
            "source": "MC2D" if dim == "2D" else "MC3D",
            "species": species,
            "positions": [[round(x, 10) for x in a[1]] for a in atoms],
            "cell": [[round(x, 10) for x in row] for row in cell],
            "pseudopotentials": {el: pp(el) for el in dict.fromkeys(species)},
            "metadata": {"note": "idealized fixture structure"},
        }
        name = f"{formula.lower()}_{'two_d' if dim == '2D' else 'three_d'}.json"
        (OUT / name).write_text(json.dumps(doc, indent=2) + "\n")


if __name__ == "__main__":
    main()
