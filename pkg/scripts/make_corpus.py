#!/usr/bin/env python3
"""Regenerate the bundled system corpus under corpus/.

Each file gets its coverage verdict from the brute-force oracle and the
verdicts are frozen into corpus/index.json. Deterministic: fixed seed.
"""

import json
import random
from pathlib import Path

from fqcover import FieldSpec, covers, parse_poly, search_distinct
from fqcover.covering import format_system, parse_system, random_system

ROOT = Path(__file__).resolve().parent.parent / "corpus"

HANDCRAFTED = {
    "f2_single_noncover.txt": "q=2\n1 | x\n",
    "f2_linear_cover.txt": "q=2\n0 | x\n1 | x\n",
    "f2_mixed_cover.txt": "q=2\n0 | x\n1 | x^2\nx+1 | x^2\n",
    "f3_linear_cover.txt": "q=3\n0 | x\n1 | x\n2 | x\n",
    "f3_sparse_noncover.txt": "q=3\n1 | x^2\n2 | x^2+1\n",
    "f4_extension_noncover.txt": "q=2^2;modulus=t^2+t+1\n(1,0) | x^2+(1,1)x+1\n0 | x\n",
}


def main():
    ROOT.mkdir(exist_ok=True)
    entries = []

    for name, text in HANDCRAFTED.items():
        (ROOT / name).write_text(text)
        entries.append(name)

    # a distinct covering system found by exhaustive search
    found = search_distinct(FieldSpec(2), 1, parse_poly("x^3+x^2", FieldSpec(2)))
    assert found is not None
    (ROOT / "f2_distinct_search.txt").write_text(format_system(found))
    entries.append("f2_distinct_search.txt")

    # seeded random samples over F_2 and F_3
    for q, count, max_deg in ((2, 6, 9), (3, 6, 6)):
        field = FieldSpec(q)
        rng = random.Random(1000 + q)
        for i in range(count):
            system = random_system(field, rng, max_lcm_degree=max_deg)
            name = f"f{q}_random_{i}.txt"
            (ROOT / name).write_text(format_system(system))
            entries.append(name)

    index = []
    for name in entries:
        system = parse_system((ROOT / name).read_text())
        report = covers(system)
        index.append({"file": name, "covers": report.covers})
    (ROOT / "index.json").write_text(json.dumps(index, indent=2, sort_keys=True) + "\n")
    print(f"wrote {len(index)} systems to {ROOT}")


if __name__ == "__main__":
    main()
