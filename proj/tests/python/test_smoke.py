import math

import pytest

import planarep


def test_measure_and_analyze():
    assert planarep.measure(0, [2, 3, 7]) == (1, 42)
    res = planarep.analyze("genus=0; torsion=2,3,7")
    assert res["b"] == ["42", "-21", "-14", "-6"]
    assert res["filling_chain"]["boundary_verified"]


def test_fox_derivative_of_commutator():
    # d[x,y]/dx = 1 - x y x^-1
    terms = dict((tuple(w), q) for w, q in planarep.fox_derivative([1, 2, -1, -2], 0))
    assert terms == {(): (1, 1), (1, 2, -1): (-1, 1)}


def test_classes_and_oracle():
    assert len(planarep.finite_order_classes("SU2", 4)) == 3
    assert planarep.su2_triangle_oracle(math.pi / 2, math.pi / 2, math.pi / 2)
    assert not planarep.su2_triangle_oracle(0, 0, math.pi / 2)


def test_solve_then_cohomology():
    spec = {"presentation": "genus=2; torsion=", "group": "SU2", "seed": 4}
    res = planarep.solve(spec)
    assert res["found"] and res["residual"] < 1e-10
    coh = planarep.cohomology(res["point"])
    assert coh["h0"] == coh["h2"]
    assert coh["h0"] - coh["h1"] + coh["h2"] == -6
    deg = planarep.degeneracy_report(res["point"])
    assert deg["nullspace_matches_B1"]


def test_run_is_reproducible():
    a, code = planarep.run("momenttest", seed=3, samples=4)
    b, _ = planarep.run("momenttest", seed=3, samples=4)
    assert code == 0 and a == b
    assert a["schema"] == "planarep/1"


def test_errors_are_translated():
    with pytest.raises(planarep.PlanarepError, match="TorsionOrderTooSmall"):
        planarep.analyze("genus=0; torsion=1")
    with pytest.raises(KeyError):
        planarep.run("analyze", bogus=1)
