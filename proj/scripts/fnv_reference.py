#!/usr/bin/env python3
"""Independent reference for the hashed vectorizer; writes data/reference/fnv_vectors.json."""
import json
import re
import sys

DIM = 1 << 17


def fnv1a64(data: bytes) -> int:
    h = 0xCBF29CE484222325
    for b in data:
        h ^= b
        h = (h * 0x100000001B3) & 0xFFFFFFFFFFFFFFFF
    return h


def vectorize(text: str):
    tokens = [t.lower() for t in re.split(r"[^A-Za-z0-9]+", text) if len(t) >= 2]
    out = {}
    for t in tokens:
        h = fnv1a64(t.encode("utf-8"))
        idx = h % DIM
        out[idx] = out.get(idx, 0) + (1 if (h >> 63) == 0 else -1)
    return sorted([i, w] for i, w in out.items() if w != 0)


TEXTS = [
    "",
    "ecutwfc",
    "ecutwfc ecutwfc",
    "K-points k_points",
    "Metallic systems",
    "relax bulk Cu with PBE and smearing",
    "geometry optimization for 2D PdS2 in the P21/c space group using B3LYP",
    "nspin starting_magnetization tot_magnetization",
    "Kinetic energy cutoff for wavefunctions in Ry.",
    "a b c dd EE ff 12 3 x9",
    "ATOMIC_SPECIES ATOMIC_POSITIONS K_POINTS CELL_PARAMETERS",
    "Error in routine cell_base_init (2): ibrav=0: must read cell parameters",
]


def main(path):
    cases = []
    for text in TEXTS:
        h = fnv1a64(text.encode("utf-8"))
        cases.append({"text": text, "fnv1a64": str(h), "entries": vectorize(text)})
    with open(path, "w") as f:
        json.dump({"dimension": DIM, "cases": cases}, f, indent=1)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/reference/fnv_vectors.json")
