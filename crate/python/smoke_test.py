"""Smoke test for the frusta extension module.

Build and run from the repository root:

    cargo build -p frusta-py --features extension-module
    cp target/debug/libfrusta.so python/frusta.so
    python3 python/smoke_test.py
"""

import json
import os
import sys
from fractions import Fraction

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import frusta  # noqa: E402


def main():
    assert frusta.formula("F_T", 4, 2, 6) == 56
    assert frusta.formula("F_TA", 50, 40, 50) == Fraction(305000, 3)
    text, values = frusta.trace("moscow", 4, 2, 6, unit="cubits")
    assert values == [16, 8, 4, 28, 2, 56], values
    assert "cubits" in text

    f = frusta.Polytope.solid("symmetric_frustum:4,2,6")
    assert f.volume() == 56
    assert len(f.vertices) == 8 and len(f.faces) == 6
    assert f.contains_point([0, 0, 3]) and not f.contains_point([3, 0, 3])

    # quarter turn about z then a shift; volume and congruence survive
    moved = f.transform([[0, -1, 0], [1, 0, 0], [0, 0, 1]], ["1/2", 0, 0])
    assert moved.volume() == 56
    assert f.congruent_to(moved)
    assert f.scale(Fraction(1, 2)).volume() == 7

    cube = frusta.Polytope(
        [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]],
        [[0, 3, 2, 1], [4, 5, 6, 7], [0, 1, 5, 4], [1, 2, 6, 5], [2, 3, 7, 6], [3, 0, 4, 7]],
    )
    assert cube.volume() == 1
    assert cube.intersect(cube.transform([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [2, 0, 0])) is None
    assert cube.dehn_invariant().startswith("0")

    cert = frusta.Certificate.build("liu-hui", [3, 1, 1])
    assert len(cert.pieces) == 27
    report = cert.verify()
    assert report["passed"] and report["overall"] == "pass (exact)", report
    again = frusta.Certificate.from_json(cert.to_json())
    assert again.verify() == report

    broken = json.loads(cert.to_json())
    broken["pieces"][0]["source"]["motion"]["matrix"][0] = ["0", "0", "0"]
    assert not frusta.Certificate.from_json(json.dumps(broken)).verify()["passed"]

    tet = frusta.Polytope.solid("regular_tetrahedron")
    verdict, _ = frusta.compare_dehn([tet], [frusta.Polytope.solid("box:1,1,1").scale(Fraction(1, 3))])
    assert verdict == "SoundlyDifferent", verdict

    passed, table = frusta.report()
    assert passed, table

    for bad in (lambda: frusta.formula("F_T", 0.5, 1, 1), lambda: frusta.Polytope.solid("box:1,2")):
        try:
            bad()
        except (TypeError, ValueError):
            pass
        else:
            raise AssertionError("expected an error")

    print("smoke test passed")


if __name__ == "__main__":
    main()
