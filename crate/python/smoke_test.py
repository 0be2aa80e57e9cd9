"""Smoke test for the compiled `pdm` extension.

Build it with `cargo build --release -p pdm-python` and copy
`target/release/libpdm.so` next to this file as `pdm.so`.
"""

import json
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import pdm  # noqa: E402


def main():
    e = pdm.Expr("x1^2*x2 + sin(x1)")
    assert str(e.diff("x1").simplify()) in ("2*x1*x2 + cos(x1)", "cos(x1) + 2*x1*x2"), str(e.diff("x1"))
    assert abs(e.evaluate({"x1": 0.5, "x2": 2.0}) - (0.5 + 0.479425538604203)) < 1e-12
    assert (pdm.Expr("sin(x1)^2 + cos(x1)^2") - pdm.Expr("1")).zero_test()["verdict"] != "proven-nonzero"

    h = pdm.Hamiltonian("(r^2 + 1)^2", "-4*r^2")
    sqrt = h.convert("roos(-1/2, 0, -1/2)").convert("sqrt")
    assert str(sqrt.potential) == "4", str(sqrt.potential)
    assert h.check_symmetry("x1*p2 - x2*p1")["is_symmetry"]
    assert not h.check_symmetry("p1")["is_symmetry"]

    flat = pdm.constant_mass_test("exp(2*x1)")
    assert flat["is_flat"] and flat["family"] == "exponential-x1"
    assert not pdm.constant_mass_test("(r^2 + 1)^2")["is_flat"]

    ids = pdm.catalog_ids()
    assert "so4" in ids and len(ids) >= 11
    assert pdm.verify_entry("so4")["passed"]
    assert pdm.verify_algebra("so5")["passed"]

    assert pdm.closed_form_energy(3) == 12.0
    assert abs(pdm.eigenfunction_closed(1, 0, 2.0) - 0.2) < 1e-15
    spec = pdm.solve_radial(k=0, grid_points=1000)
    assert spec["eigenvalues"][0]["matched_n"] == 1
    assert pdm.casimir_check()["passed"]

    try:
        pdm.Expr("x1 +")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")

    manifest = json.loads(pdm.verify_all())
    assert manifest["passed"], [s["name"] for s in manifest["sections"] if not s["passed"]]
    print("python smoke test passed")


if __name__ == "__main__":
    main()
