import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from frobgb.cli import main
from frobgb.errors import UnknownFamily
from frobgb.families import FAMILIES
from frobgb.frobenius import Metrics, sweep
from frobgb.groebner import Ideal
from frobgb.harness import ExperimentConfig, classify, load_config, run, verify_family
from frobgb.poly import PolyRing

P48 = dict(
    p=3,
    vars="x,y,z,w",
    ideal_i="x^2*y^2*z*w^5 - x*y*z^2*w^2",
    ideal_j="x*y^2*z^3*w - x*y*z*w^3",
)


def test_classify_linear():
    b = classify([(0, 1, 1), (1, 3, 3), (2, 9, 9), (3, 27, 27)])
    assert (b.kind, b.params, b.onset) == ("linear", ((1, 0),), 0)


def test_classify_periodic():
    s = [(e, 3**e, v) for e, v in enumerate([3, 3, 2, 3, 2])]
    b = classify(s)
    assert (b.kind, b.onset) == ("periodic2-constant", 1)
    assert b.value(3, 27) == 3 and b.value(4, 81) == 2


def test_classify_constant_and_eventual():
    assert classify([(e, 2**e, 5) for e in range(4)]).kind == "constant"
    b = classify([(e, 3**e, 2 * 3**e if e else 9) for e in range(6)])
    assert (b.kind, b.onset) == ("eventually-linear", 1)


def test_classify_gives_up():
    assert classify([(0, 1, 4)]).kind == "unclassified"
    assert classify([(0, 1, 1), (1, 2, 5), (2, 4, 2)]).kind == "unclassified"


@given(
    st.sampled_from([2, 3, 5]),
    st.lists(st.integers(-50, 50), min_size=1, max_size=7),
)
def test_classify_is_exact(p, values):
    series = [(e, p**e, v) for e, v in enumerate(values)]
    b = classify(series)
    if b.kind == "unclassified":
        return
    for e, q, v in series:
        if e >= b.onset:
            assert b.value(e, q) == v
            assert isinstance(b.value(e, q), Fraction)


def test_verify_single_row():
    rep = verify_family("P4.1", e_max=0)
    assert len(rep.rows) == 1 and rep.rows[0].row.q == 1
    assert rep.rows[0].basis_match and rep.ok


def test_verify_char2_variant():
    rep = verify_family("P4.7", e_max=5)
    assert rep.rows_ok
    for r in rep.rows:
        if r.row.e >= 3:
            q = r.row.q
            assert r.row.metrics == Metrics(2 * q + 5, 4 * q + 5, q + 3)
            assert r.source == "formula"


def test_verify_unknown():
    with pytest.raises(UnknownFamily):
        verify_family("nope")


def test_run_csv_rows():
    res = run(ExperimentConfig(**P48, e_max=2, format="csv"))
    assert res.status == 0
    assert res.output == "e,q,delta,Delta,c,match\n0,1,7,11,3,\n1,3,25,33,6,\n2,9,79,99,15,\n"


def test_run_family_exit_codes():
    assert run(ExperimentConfig(family="P4.3a", e_max=3)).status == 0
    bad = run(ExperimentConfig(**{**P48, "ideal_i": "x^3*y - z^"}))
    assert bad.status == 2 and bad.error
    assert run(ExperimentConfig(family="P9")).status == 2
    assert run(ExperimentConfig(family="P4.1", p=5)).status == 2


def test_run_reports_mismatch():
    # wrong ideal for a named family: the formula rows no longer agree
    cfg = ExperimentConfig(family="P4.1", p=3, vars="x,y,z", ideal_i="y^2 - x*z", ideal_j="y^3 - x*y", e_max=1)
    res = run(cfg)
    assert res.status == 1
    assert "no" in res.output


def test_run_json_and_determinism():
    cfg = dict(family="P4.8", e_max=1, format="json")
    a = run(ExperimentConfig(**cfg)).output
    b = run(ExperimentConfig(**cfg)).output
    assert a == b
    doc = json.loads(a)
    assert [r["e"] for r in doc["rows"]] == [0, 1]
    row = doc["rows"][1]
    assert set(row) == {"e", "q", "delta", "Delta", "c", "basis", "match"}
    assert (row["delta"], row["Delta"], row["c"], row["match"]) == (25, 33, 6, True)
    assert len(row["basis"]) == 6
    assert set(doc["classification"]) == {"delta", "Delta", "c"}


def test_run_table_mentions_growth():
    res = run(ExperimentConfig(family="P4.3a"))
    assert res.status == 0
    assert "growth pattern matches family: yes" in res.output
    assert "constant" in res.output


def test_degree_excess():
    spec = FAMILIES["P4.8"]
    I, J = spec.ideals()
    for row in sweep(I, J, 3, range(1, 4)):
        assert row.metrics.Delta == 11 * row.q > 10 * row.q


def test_config_files(tmp_path):
    js = tmp_path / "c.json"
    js.write_text(json.dumps({**P48, "emax": 1, "format": "csv"}))
    kv = tmp_path / "c.cfg"
    kv.write_text(
        "# x > y > z > w\np = 3\nvars = x,y,z,w\nI = x^2*y^2*z*w^5 - x*y*z^2*w^2\n"
        "J = x*y^2*z^3*w - x*y*z*w^3\nemax = 1\nformat = csv\n"
    )
    a, b = load_config(js), load_config(kv)
    assert a == b
    assert a.vars == ("x", "y", "z", "w") and a.e_max == 1
    assert run(a).output.splitlines()[-1] == "1,3,25,33,6,"
    bad = tmp_path / "bad.cfg"
    bad.write_text("colour = blue\n")
    with pytest.raises(ValueError):
        load_config(bad)


def test_cli(capsys, tmp_path):
    argv = ["sweep", "--p", "3", "--vars", "x,y,z,w", "--ideal-i", P48["ideal_i"], "--ideal-j", P48["ideal_j"]]
    assert main(argv + ["--emax", "1", "--format", "csv"]) == 0
    assert capsys.readouterr().out.endswith("1,3,25,33,6,\n")
    assert main(["verify", "--family", "P4.3a", "--emax", "2"]) == 0
    capsys.readouterr()
    assert main(["verify", "--p", "3"]) == 2
    assert main(["sweep", "--p", "3", "--vars", "x", "--ideal-i", "x^", "--ideal-j", "x"]) == 2
    assert "frobgb:" in capsys.readouterr().err
    assert main(["sweep", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_swap_matches_manual_roles():
    ring = PolyRing(3, ("x", "y", "z"))
    I = Ideal.parse(ring, ["y^2 - x*z"])
    J = Ideal.parse(ring, ["y^3 - x*y"])
    base = dict(p=3, vars="x,y,z", ideal_i="y^2 - x*z", ideal_j="y^3 - x*y", e_max=2, format="csv")
    swapped = run(ExperimentConfig(**base, swap=True)).output.splitlines()[1:]
    manual = [f"{r.e},{r.q},{r.metrics.delta},{r.metrics.Delta},{r.metrics.c}," for r in sweep(J, I, 3, range(3))]
    assert swapped == manual


def test_verify_periodic_family():
    rep = verify_family("P4.6", e_max=4)
    bad = [(r.row.e, r.row.metrics.as_tuple(), r.predicted.as_tuple()) for r in rep.rows if r.ok is False]
    assert not bad, bad
    assert rep.classes["delta"].rule == ("periodic2-linear", 2)
