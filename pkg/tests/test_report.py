from cyclojac.report import ClauseCheck, Report


def test_report_passes_only_when_every_clause_passes():
    rep = Report("r")
    assert rep.passed
    rep.add("a", True, 3)
    rep.add("b", False, 1, witness=(1, 2))
    assert not rep.passed
    assert [c.clause for c in rep.failures()] == ["b"]
    assert rep.to_json()["clauses"][1]["witness"] == [1, 2]


def test_clause_check_keeps_first_witness():
    rep = Report("r")
    check = ClauseCheck(rep, "c")
    for k in range(5):
        check(k < 2, k)
    result = check.close()
    assert result.checked == 5 and result.witness == 2 and not result.passed


def test_merged_folds_repeated_names():
    rep = Report("r")
    rep.add("x", True, 2)
    rep.add("y", True, 1)
    rep.add("x", False, 3, witness="w")
    merged = rep.merged()
    assert [c.clause for c in merged.clauses] == ["x", "y"]
    assert merged.clause("x").checked == 5 and merged.clause("x").witness == "w"
    assert len(rep.clauses) == 3


def test_extend_prefixes():
    a, b = Report("a"), Report("b")
    b.add("k", True, 1)
    a.extend(b, prefix="sub:")
    assert a.clause("sub:k").passed
