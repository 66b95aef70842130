import pytest

import coxlat

EXAMPLE = """
generators: s1 s2 s3 s4 s5
m s1 s4 = 4
m s2 s4 = 4
m s3 s4 = 4
m s1 s5 = 4
m s2 s5 = 4
m s3 s5 = 4
"""


def test_parse_and_labels():
    sys = coxlat.parse_system(EXAMPLE)
    assert sys.rank == 5
    assert sys.generators() == ["s1", "s2", "s3", "s4", "s5"]
    assert sys.label(0, 3) == 4
    assert sys.label(0, 1) is None  # infinity


def test_parse_errors_carry_location():
    with pytest.raises(ValueError, match="asymmetric"):
        coxlat.parse_system("generators: s t\nm s t = 3\nm t s = 4\n")


def test_word_problem():
    sys = coxlat.parse_system("generators: s t\nm s t = 4\n")
    assert coxlat.word_reduce(sys, [0, 0]) == []
    assert coxlat.word_reduce(sys, [0, 1, 0, 1]) == [0, 1, 0, 1]
    assert coxlat.words_equal(sys, [0, 1, 0, 1], [1, 0, 1, 0])


def test_spherical_classification():
    sys = coxlat.parse_system(
        "generators: a b c\nm a b = 4\nm b c = 3\nm a c = 2\n")
    t = coxlat.is_spherical(sys, [0, 1, 2])
    assert t["order"] == 48
    assert t["components"][0]["type"] == "B3"
    assert coxlat.enumerate_order(sys, [0, 1, 2]) == 48
    assert coxlat.is_spherical(coxlat.parse_system("generators: a b\n"),
                               [0, 1]) is None


def test_halving():
    sys = coxlat.parse_system("generators: s t\nm s t = 4\n")
    assert coxlat.halving_order(sys, [0, 1], 0) == 4
    odd = coxlat.parse_system("generators: s t\nm s t = 3\n")
    assert coxlat.halving_order(odd, [0, 1], 0) is None


def test_catalog_and_nerve():
    sys = coxlat.catalog("petersen(4)")
    assert sys.rank == 10
    info = coxlat.nerve(sys)
    assert info["edges"] == 15
    assert len(info["simplices"]) == 25
    names = [entry["name"] for entry in coxlat.catalog_list()]
    assert "gl32_building" in names


def test_witnesses():
    ws = coxlat.find_witnesses(coxlat.parse_system(EXAMPLE))
    assert ws
    assert ws[0]["s1"] == "s1"
    assert ws[0]["alpha1"] == "(s1 s3)"
    assert ws[0]["q1"] == 2
    assert coxlat.find_witnesses(coxlat.catalog("petersen(3)")) == []


def test_verify_runs_all_suites():
    report = coxlat.verify(n=2, system=EXAMPLE)
    assert report["status"] == "pass"
    names = {c["name"] for c in report["checks"]}
    assert "covering-lambda" in names


def test_covolume_table():
    report = coxlat.covolume(n_max=3, catalog="complete_bipartite(2,3,4)")
    rows = report["tables"]["covolumes"]
    assert [r["series"] for r in rows] == ["1", "3/2", "13/8"]
    assert rows[1]["direct"] == "3/2"
    assert rows[1]["agree"] is True
    assert rows[2]["agree"] is False  # the surfaced discrepancy


def test_build_counts():
    report = coxlat.build(n=4, system=EXAMPLE)
    assert report["tables"]["chambers"] == 15
