"""Smoke test for the secantlab extension module.

Build with `maturin develop -m crates/py/Cargo.toml`, or copy
`target/release/libsecantlab.so` next to this script as `secantlab.so`.
"""

import secantlab


def main():
    p = secantlab.Profile("P(1)xP(1)xP(5)")
    assert str(p) == "P(1)xP(1)xP(5)"
    assert p.ambient_dim == 23 and p.variety_dim == 7
    assert [p.secant_dim(s) for s in (2, 3, 4)] == [15, 20, 23]

    row = p.report(3)
    assert row["defect"] == 3 and row["thm24_case"] == 3

    m = secantlab.Profile("P(1)xP(1)xP(3)").flatten("1,1,0")
    assert len(m) == 4 and len(m[0]) == 4

    census = secantlab.Profile("P(1)x5").splits()
    assert sorted({(r, c) for _, r, c in census}) == [(2, 16), (4, 8)]

    b = secantlab.Profile("P(1,2)xP(1,2)")
    assert b.rank_bound("1,1", 3) == (True, 3)
    assert len(b.minors("1,1", 4)) == 1

    assert secantlab.giambelli_degree(2, 5, 2) == 15
    assert secantlab.two_factor_secant_dim(3, 5, 3) == 20
    assert secantlab.critical_s([1, 1, 1]) == 5
    assert secantlab.sv_defect_range(1, 3) == (6, 7)
    assert secantlab.unbalanced_classify([1, 1], 5, 3)["closed_form_defect"] == 3
    assert secantlab.symbolic_minor_vanishing("S9", 2)
    assert not secantlab.symbolic_minor_vanishing("D8", 1)

    table = secantlab.delpezzo_report()
    assert [r["sigma2_degree"] for r in table["surfaces"]] == [15, 10, 6, 3, 10]

    try:
        secantlab.Profile("P(1")
    except ValueError:
        pass
    else:
        raise AssertionError("bad profile accepted")

    print("secantlab smoke test passed")


if __name__ == "__main__":
    main()
