#!/usr/bin/env python3
"""Smoke test for the hcgp_py extension module.

Builds the cdylib with cargo if needed, copies it next to this script as
hcgp_py.so, imports it, and drives the main types and operations end to end.

Usage: python3 python/smoke_test.py
"""

import math
import shutil
import subprocess
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
ROOT = HERE.parent
MODULE = HERE / "hcgp_py.so"


def build_extension():
    subprocess.run(
        ["cargo", "build", "-p", "hcgp-py", "--release"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libhcgp_py.so"
    shutil.copy2(lib, MODULE)


def main():
    build_extension()
    sys.path.insert(0, str(HERE))
    import hcgp_py as hcgp

    # Generators and graph primitives.
    g = hcgp.generate("grid(3,4)")
    assert (g.n, g.m) == (12, 17), (g.n, g.m)
    assert g.is_q_connected(2)
    kappa, cutset = g.minimum_vertex_cutset()
    assert kappa == 2 and len(cutset) == 2

    myc = hcgp.generate("mycielskian(cycle(5),1)")
    assert (myc.n, myc.m) == (11, 20)

    k4 = hcgp.Graph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    kappa, cutset = k4.minimum_vertex_cutset()
    assert kappa == 3 and cutset is None

    # Preprocessing.
    tri_tail = hcgp.Graph(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    block, labels = hcgp.extract_biconnected(tri_tail)
    assert block.n == 3 and labels == [0, 1, 2]
    p3 = hcgp.Graph(3, [(0, 1), (1, 2)])
    raised = hcgp.raise_connectivity(p3, 2)
    assert raised.m == 3 and raised.is_q_connected(2)

    # Instances and bounds.
    inst = hcgp.Instance(g, k=2, q=2, tau=0.1, name="g34")
    lo, hi = inst.bounds()
    assert math.isclose(lo, 5.4) and math.isclose(hi, 6.6)

    # Exact solve.
    res = hcgp.exact(inst)
    assert res["status"] == "optimal", res
    assert math.isclose(res["objective"], res["lower_bound"], abs_tol=1e-9)
    parts = res["parts"]
    assert sorted(v for part in parts for v in part) == list(range(12))
    report = hcgp.verify(inst, parts)
    assert report["pass"], report

    # Heuristic solve agrees within a sane gap and is deterministic.
    h1 = hcgp.heuristic(inst, seed=7)
    h2 = hcgp.heuristic(inst, seed=7)
    assert h1["status"] == "feasible"
    assert h1["parts"] == h2["parts"]
    assert h1["objective"] >= res["objective"] - 1e-9
    assert hcgp.verify(inst, h1["parts"])["pass"]

    # Objective helpers match the reported values.
    assert math.isclose(hcgp.compactness(inst, parts), res["objective"], abs_tol=1e-9)
    assert hcgp.balance(inst, parts) == 0.0

    # Separation on an improper assignment yields violated cuts; the
    # exhaustive oracle agrees with per-part connectivity.
    c6 = hcgp.generate("cycle(6)")
    cuts = hcgp.separation(c6, [[0, 1, 2, 3], [4, 5]], [0, 4], 2)
    assert cuts and all(c["q"] == 2 for c in cuts)
    assert not hcgp.properness_oracle(c6, [[0, 1, 2], [3, 4, 5]], 2)
    assert hcgp.properness_oracle(c6, [[0, 1, 2], [3, 4, 5]], 1)

    # Infeasibility surfaces as a status, not an exception.
    c6_inst = hcgp.Instance(c6, k=2, q=2, name="c6")
    res_c6 = hcgp.exact(c6_inst)
    assert res_c6["status"] == "infeasible"
    assert res_c6["lower_bound"] == "inf"

    # File round trips.
    tmp = HERE / "smoke_tmp"
    tmp.mkdir(exist_ok=True)
    hcgp.save(inst, str(tmp / "g34.json"))
    back = hcgp.load(str(tmp / "g34.json"))
    assert back.k == 2 and back.q == 2 and back.graph.n == 12
    hcgp.write_lp(inst, str(tmp / "g34.lp"))
    lp = (tmp / "g34.lp").read_text()
    assert lp.startswith("\\ hcgp master model") and "Binaries" in lp
    dot = hcgp.partition_dot(inst, parts)
    assert dot.startswith("graph partition {") and "doublecircle" in dot
    shutil.rmtree(tmp)

    print("smoke test passed")


if __name__ == "__main__":
    main()
