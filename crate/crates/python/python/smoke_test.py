"""Smoke test for the chimukai extension module."""
import json
import pathlib
import sys

import chimukai

CORPUS = pathlib.Path(__file__).resolve().parents[3] / "corpus"


def main():
    # Two transverse lines in the plane meet once.
    r = chimukai.serre_chi(["x", "y"], ["x"], ["y"])
    assert r["chi"] == 1, r

    # Tangent parabola: multiplicity 2.
    r = chimukai.serre_chi(["x", "y"], ["x"], ["x - y^2"], weights=[2, 1])
    assert r["chi"] == 2, r

    o = {"line_bundle": [0]}
    o3 = {"line_bundle": [3]}
    assert chimukai.euler_pairing([2], o, o3) == "10"
    assert chimukai.mukai_pairing([2], o, o3) == "10"

    g = chimukai.gamma_identity(8)
    assert g["passed"], g

    assert chimukai.milnor_number("x^3 + y^3", ["x", "y"], [1, 1]) == 4
    assert chimukai.residue("x^3", ["x"], [1], "x") == "1/3"

    scene = json.dumps({
        "id": "py_cubic",
        "kind": "residue",
        "ring": {"vars": ["x"], "weights": [1]},
        "f": "x^3",
        "g": ["x"],
        "expect": {"milnor_number": 2},
    })
    rep = chimukai.run_scene(scene)
    assert rep["passed"], rep
    assert "residue" in chimukai.explain(scene).lower()

    summary = chimukai.run_corpus(str(CORPUS))
    assert summary["failed"] == 0 and summary["errors"] == 0, summary
    print(f"corpus: {summary['passed']} of {summary['total']} passed")

    try:
        chimukai.run_scene("{not json")
    except chimukai.ChimukaiError:
        pass
    else:
        raise AssertionError("bad json accepted")

    print("smoke test ok")


if __name__ == "__main__":
    sys.exit(main())
