import json

import pytest

import qmm


def test_qdet_strings():
    assert qmm.qdet(2, [1, 2], "single") == "z11·z22 − q^-1·z21·z12"
    assert qmm.qdet(3, [2]) == "z22"
    assert "q13" in qmm.qdet(3, [1, 3])


def test_master_identity():
    report = qmm.verify_master(2, 3)
    assert report["pass"]
    assert [d["degree"] for d in report["degrees"]] == [0, 1, 2, 3]
    assert qmm.verify_master(2, 3, mode="exact")["pass"]


def test_twisted_and_koszul():
    assert qmm.verify_twisted(2, 3)["pass"]
    k = qmm.koszul(2, 3, mode="exact")
    assert k["exact"] and k["d_squared_zero"]
    assert k["homology"] == [0, 0, 0, 0]


def test_membership():
    # z_2^1 z_1^1 - q12 z_1^1 z_2^1
    column = [(1, [0], [(2, 1), (1, 1)]), (-1, [1], [(1, 1), (2, 1)])]
    assert qmm.ideal_member(2, column) == "member"
    commutator = [(1, [], [(1, 1), (2, 2)]), (-1, [], [(2, 2), (1, 1)])]
    assert qmm.ideal_member(2, commutator) == "non-member"
    assert len(qmm.relations(2)) == 3


def test_classical():
    ok, bos = qmm.classical_check([["0", "1"], ["1", "0"]], 4)
    assert ok
    assert bos == ["1", "0", "1", "0", "1"]


def test_cli_and_errors():
    code, out, _ = qmm.run_cli(["verify", "--n", "2", "--degree", "2", "--output", "json"])
    assert code == 0
    assert json.loads(out)["pass"] is True
    assert qmm.run_cli(["twisted", "--n", "2", "--params", "multi"])[0] == 2
    with pytest.raises(ValueError):
        qmm.qdet(2, [1, 3])
