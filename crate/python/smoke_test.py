"""Smoke test for the pydirramsey extension module.

Builds the extension with cargo if needed, imports it from a temporary
directory and exercises each exported entry point.
"""

import os
import shutil
import subprocess
import sys
import tempfile

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load():
    subprocess.run(["cargo", "build", "-q", "-p", "dirramsey-py"], cwd=ROOT, check=True)
    target = os.environ.get("CARGO_TARGET_DIR", os.path.join(ROOT, "target"))
    lib = os.path.join(target, "debug", "libpydirramsey.so")
    tmp = tempfile.mkdtemp()
    shutil.copy(lib, os.path.join(tmp, "pydirramsey.so"))
    sys.path.insert(0, tmp)
    import pydirramsey

    return pydirramsey


def main():
    dr = load()

    p3 = dr.OrientedTree.named("p3")
    assert p3.order == 3 and p3.edges == [(0, 1), (1, 2)]
    same = dr.OrientedTree(3, [(2, 1), (1, 0)])
    assert same.canonical_code() == p3.canonical_code()
    assert dr.OrientedTree.parse(p3.to_text()).edges == p3.edges

    host, side = dr.construct_lexicographic(3, 2, 2)
    assert host.order == 6 and host.kind == "T"
    assert side["verification"]["passed"]
    assert dr.ColouredDigraph.parse(host.to_text()).edges() == host.edges()
    assert host.find_copy(dr.OrientedTree.directed_path(4), 1) is None

    layered, side = dr.construct_layered(2, 3)
    assert layered.order == 16 and side["verification"]["passed"]

    t = dr.ColouredDigraph.random_tournament(12, 2, 7)
    run = dr.embed_path(t, p3)
    assert run["colour"] in (1, 2) and run["verified"]
    run = dr.embed_trees(t, [dr.OrientedTree.named("outstar3"), p3], tracked=1)
    assert run["guarantee_held"]

    witness, res = dr.exact_digraph_ramsey([p3, p3], max_n=6)
    assert res["value"] == 3 and witness.order == 2
    witness, res = dr.exact_tournament_ramsey([p3, p3])
    assert res["value"] == 5

    assert [dr.count_tournaments(n) for n in range(1, 7)] == [1, 1, 2, 4, 12, 56]

    try:
        dr.ColouredDigraph.parse("")
    except ValueError as e:
        assert "line 1" in str(e)
    else:
        raise AssertionError("empty colouring accepted")

    print("python smoke test ok")


if __name__ == "__main__":
    main()
