"""Smoke test for the pyhypercert extension module.

Build and install first, e.g.

    maturin build --release -m crates/python/Cargo.toml -o dist
    pip install dist/pyhypercert-*.whl
    python python/smoke_test.py
"""

import pyhypercert as hc


def main():
    # coordinates of k[Z, T]
    yes = hc.coordinate_decide("T + (Z + T^2)^3")
    assert yes["verdict"] == "coordinate", yes
    sn = hc.segre_nagata(2, 2, 3)
    no = hc.coordinate_decide(sn, field="F2")
    assert no["verdict"] == "not-coordinate", no

    word = hc.random_word(7, field="F5")
    auto = hc.compose_word(word, field="F5")
    assert auto["verified"]

    # normal forms in A = Q[X1, Y, Z, T] / (X1^2 Y - Z - X1 Z)
    pres = hc.Presentation(1, [2], "Q", "Z + X1*Z")
    assert pres.is_structured()
    assert pres.normal_form("X1^2*Y") == "X1*Z + Z"
    assert pres.equal("X1^3*Y", "X1^2*Z + X1*Z")

    # coordinate system for G = X1^2 Y - F, re-checked from its dict form
    rep = pres.theorem_b()
    assert rep["statements_i_to_iv"] == "established", rep
    assert hc.verify_coordinate_system(rep["witness"], pres.m, pres.field)

    refuted = hc.Presentation(2, [2, 2], "F2", "Z^4 + T + T^6 + X1*X2*T").theorem_b()
    assert refuted["statements_i_to_iv"] == "refuted"

    ex1 = hc.Presentation(2, [2, 2], "Q", "X1*Z + X2 + Z")
    assert not ex1.is_structured()
    ufd = ex1.ufd_check()
    assert ufd["verdict"]["NotUFD"]["factor"] == "X1 + 1", ufd
    try:
        ex1.theorem_b()
    except ValueError as e:
        assert "unstructured" in str(e)
    else:
        raise AssertionError("theorem_b accepted an unstructured presentation")

    maps = hc.Presentation(1, [2], "Q", "Z + X1*T^2").exp_maps()
    assert maps["phi1"]["fixed"] == ["X1", "Z"]

    chain = hc.Presentation(1, [2], "Q", "Z + X1*T^2").graded()
    assert chain["last"]["F"] == "Z"

    entries = hc.catalog(5, (2, 2, 3), m=2)
    assert len(entries) == 5
    assert sum(len(e["certificates"]) for e in entries) == 10

    back = hc.Presentation.from_json(pres.to_json())
    assert back.F == pres.F
    print(f"pyhypercert {hc.__version__}: all smoke checks passed")


if __name__ == "__main__":
    main()
