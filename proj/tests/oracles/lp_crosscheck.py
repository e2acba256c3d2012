#!/usr/bin/env python3
# Copyright 2026 The pondc Authors
# SPDX-License-Identifier: Apache-2.0
"""Solves exported LP files with HiGHS and compares against `pondc solve`.

Not part of ctest (it needs the optional `highspy` package):

    pip install highspy
    python3 tests/oracles/lp_crosscheck.py build/pondc
"""

import json
import os
import subprocess
import sys
import tempfile

import highspy

CASES = [  # (vms, seed, groups, subgroups, servers, onu mode)
    (3, 1, 2, 2, 2, "FixedWhenActive"),
    (4, 2, 2, 2, 2, "FixedWhenActive"),
    (5, 3, 2, 2, 2, "FixedWhenActive"),
    (5, 4, 1, 2, 3, "FixedWhenActive"),
    (6, 5, 2, 2, 2, "FixedWhenActive"),
    (6, 6, 2, 1, 3, "FixedWhenActive"),
    (5, 7, 2, 2, 2, "TrafficProportional"),
    (6, 8, 2, 2, 2, "TrafficProportional"),
    (7, 9, 2, 2, 2, "FixedWhenActive"),
    (8, 10, 2, 2, 2, "FixedWhenActive"),
]


def run(cli, *args):
    return subprocess.run([cli, *args], check=False, capture_output=True,
                          text=True)


def main():
    cli = sys.argv[1]
    failures = 0
    with tempfile.TemporaryDirectory() as tmp:
        for vms, seed, g, sg, n, mode in CASES:
            wl = os.path.join(tmp, "w.json")
            lp = os.path.join(tmp, "m.lp")
            run(cli, "generate", "--vms", str(vms), "--seed", str(seed),
                "-o", wl)
            topo = ["--groups", str(g), "--subgroups", str(sg),
                    "--servers", str(n), "--onu-mode", mode]
            run(cli, "export-lp", "--workload", wl, *topo, "-o", lp)
            solved = run(cli, "solve", "--workload", wl, *topo)
            h = highspy.Highs()
            h.setOptionValue("output_flag", False)
            h.setOptionValue("mip_rel_gap", 0.0)
            h.setOptionValue("mip_abs_gap", 1e-9)
            h.readModel(lp)
            h.run()
            status = h.modelStatusToString(h.getModelStatus())
            if solved.returncode == 2:
                ok = status == "Infeasible"
                ours = "infeasible"
                theirs = status
            else:
                ours = json.loads(solved.stdout)["power"]["total_w"]
                theirs = h.getInfo().objective_function_value
                ok = status == "Optimal" and abs(ours - theirs) <= 1e-6
            failures += not ok
            print(f"{'ok  ' if ok else 'FAIL'} vms={vms} seed={seed} "
                  f"{g}x{sg}x{n} {mode}: pondc={ours} highs={theirs}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
