import math

import pytest

from orthoposet.root_system import DiagramType, build_root_system
from orthoposet.tables import (
    check_tables,
    compute_class,
    desk_diagrams,
    evaluate,
    load_fixture,
    normalizer_order,
    orbit_classes,
    seed_from_table,
    weyl_factor,
)

# rows whose tabulated entries disagree with the computed ones
KNOWN_DIFFS = {
    ("D4 |B|=4 variant=0 k=2", "normalizer"),
    ("D6 |B|=6 variant=0 k=3", "normalizer"),
    ("D8 |B|=8 variant=0 k=4", "normalizer"),
    ("E7 |B|=2 variant=0", "C"),
    ("E8 |B|=4 variant=1", "normalizer"),
}


def test_evaluate():
    assert evaluate("fact(n+1)//(2**t*fact(t)*fact(n-2*t+1))", n=5, t=2) == 45
    assert evaluate(7) == 7
    assert evaluate("n-2*t >= 2 and t > 0", n=6, t=2) is True
    assert evaluate("-n % 4", n=3) == 1
    for bad in ["__import__('os')", "n.real", "[n]", "lambda: 1", "open('x')"]:
        with pytest.raises(ValueError):
            evaluate(bad, n=1)
    with pytest.raises(ValueError, match="unknown name"):
        evaluate("k+1", n=1)


def test_weyl_factors():
    assert weyl_factor("pow2", 3) == 8
    assert weyl_factor("S", 0) == 1 and weyl_factor("S", 4) == 24
    assert weyl_factor("WB", 2) == 8
    assert weyl_factor("WD", 1) == 1 and weyl_factor("WD", 4) == 192
    assert weyl_factor("WE", 7) == 2903040
    assert weyl_factor("L32", 1) == 168
    with pytest.raises(ValueError):
        weyl_factor("X", 1)
    assert normalizer_order([["pow2", "t"], ["S", "n+1-2*t"]], n=5, t=2) == 4 * 2


def test_fixture_is_versioned():
    fx = load_fixture()
    assert "version" in fx and "rows" in fx and "orbit_classes" in fx


def test_seed_examples():
    rs = build_root_system("A5")
    assert seed_from_table("A5", 2).roots == (rs.simple(1), rs.simple(3))
    rs = build_root_system("D6")
    assert set(seed_from_table("D6", 3, 1).roots) == {rs.simple(1), rs.simple(3), rs.simple(6)}
    c = seed_from_table("E7", 7)
    assert len(c.roots) == 7 and c.row_id == "E7-7"
    assert seed_from_table("D6", 4, 0, k=2).row_id == "D-double"
    assert seed_from_table("D6", 3, 0, k=1).row_id is None


def test_seed_errors_list_valid_rows():
    with pytest.raises(ValueError, match="valid: size=1 variant=0"):
        seed_from_table("E6", 5)
    with pytest.raises(ValueError, match="k=1"):
        seed_from_table("D5", 2, 0, k=3)


def test_orbit_formula_a5():
    res = compute_class(seed_from_table("A5", 2))
    assert res.orbit == 45 == math.factorial(6) // (2**2 * 2 * 2)


@pytest.mark.parametrize(
    "dtype,sizes",
    [("E6", {1: 36, 2: 270, 4: 135}), ("E7", {1: 63, 2: 945, 3: 315, 4: 945, 7: 135})],
)
def test_e_orbit_sizes(dtype, sizes):
    got = {}
    for c in orbit_classes(dtype):
        if c.row_id is not None:
            got[c.size] = compute_class(c).orbit
    assert got == sizes


def test_e6_size3_absent_and_not_admissible():
    c = seed_from_table("E6", 3)
    assert c.row_id is None
    assert not compute_class(c).admissible


def test_stabilizer_examples():
    assert compute_class(seed_from_table("E7", 7)).stabilizer == 2903040 // 135 == 2**7 * 168
    res = compute_class(seed_from_table("E8", 8))
    assert res.orbit == 2025
    assert res.stabilizer == 2**8 * 2**3 * 168 == 344064 == 696729600 // 2025
    assert seed_from_table("E8", 8).expected().normalizer == 344064


def test_expected_rows():
    exp = seed_from_table("D7", 2, 0, k=0).expected()
    assert exp.orbit == math.factorial(7) // (2 * math.factorial(3))
    # W(D3) = 2**2 * 3!
    assert exp.normalizer == 2**4 * 2 * 24 == DiagramType("D", 7).weyl_order() // exp.orbit


def test_desk_diagrams():
    names = [str(d) for d in desk_diagrams(8)]
    assert names[:8] == [f"A{n}" for n in range(1, 9)]
    assert names[-3:] == ["E6", "E7", "E8"] and "D4" in names and "D3" not in names


@pytest.mark.parametrize("names", [["A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8"], ["D4", "D5", "D6", "D7"], ["E6"]])
def test_check_tables_diffs(names):
    results, diffs = check_tables([DiagramType.parse(n) for n in names])
    assert results
    assert {(d.label, d.column) for d in diffs} <= KNOWN_DIFFS
    for r in results:
        assert r.admissible == r.admissible_moves
        assert r.admissible == (r.cls.row_id is not None)


def test_fused_classes_share_a_row():
    results, diffs = check_tables([DiagramType.parse("D6")])
    fused = [r for r in results if r.cls.fused]
    assert len(fused) == 2
    exp = fused[0].cls.expected()
    assert sum(r.orbit for r in fused) == exp.orbit
    for r in fused:
        assert r.stabilizer == exp.normalizer
