import io
import json

import pytest

from jetcalc.cache import ResultCache
from jetcalc.cli import run
from jetcalc.invariants import cusp_resolution


@pytest.fixture
def files(tmp_path, monkeypatch):
    monkeypatch.setenv("JETCALC_CACHE", str(tmp_path / "cache"))
    paths = {}
    for name, text in {"cusp": "vars: x,y\nchar: 0\nx^2+y^3\n", "empty": "vars: x,y\nchar: 0\n",
                       "xy": "vars: x,y\nchar: 0\nx*y\n", "line": "vars: x,y\nchar: 0\nx\n",
                       "origin": "vars: x,y\nchar: 0\nx\ny\n", "bad": "vars: x,y\nchar: 0\nx^2+2y\n",
                       "box": "algvars: s,t\nrelations: s^2, t^2\n"}.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    p = tmp_path / "cusp.json"
    p.write_text(json.dumps(cusp_resolution().to_json()))
    paths["cuspdata"] = str(p)
    return paths


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    text = out.getvalue()
    return code, (json.loads(text) if text.startswith("{") else text)


def test_lct_diagonal():
    code, rep = call("lct-diagonal", "--exponents", "2,3")
    assert code == 0 and rep["lct"] == "5/6"


def test_dim_of_empty_ideal(files):
    code, rep = call("dim", "--ideal", files["empty"])
    assert code == 0 and rep["dimension"] == 2 and rep["unit_ideal"] is False
    assert set(rep["input_hashes"]) == {"ideal"}


def test_contact_codim(files):
    assert call("contact-codim", "--data", files["cuspdata"], "--m", "6")[1]["codim"] == 5
    assert call("contact-codim", "--data", files["cuspdata"], "--m", "6", "--bruteforce")[1]["codim"] == 5
    assert call("lct-resolution", "--data", files["cuspdata"])[1]["lct"] == "5/6"


def test_cache_hit_is_identical(files):
    a = call("dim", "--ideal", files["cusp"], "--m", "4")
    b = call("dim", "--ideal", files["cusp"], "--m", "4")
    c = call("dim", "--ideal", files["cusp"], "--m", "4", "--verify")
    d = call("dim", "--ideal", files["cusp"], "--m", "4", "--no-cache")
    assert a == b == c == d and a[1]["dimension"] == 5


def test_input_errors_exit_2(files, capsys):
    assert call("dim", "--ideal", files["bad"])[0] == 2
    assert "bad.txt:3" in capsys.readouterr().err
    assert call("dim", "--ideal", "/nonexistent/file")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("dim", "--ideal", files["cusp"], "--char", "12")[0] == 2
    assert call("mld-resolution", "--data", files["cuspdata"], "--q", "0.5")[0] == 2


def test_budget_exit_3(files):
    code, rep = call("dim", "--ideal", files["cusp"], "--m", "5", "--budget", "10", "--no-cache")
    assert code == 3 and rep["partial"] is True
    code, rep = call("lct-estimate", "--ideal", files["cusp"], "--mmax", "5", "--budget", "12", "--no-cache")
    assert code == 3 and rep["partial"] is True and rep["sequence"]


def test_prime_field_is_labelled(files):
    code, rep = call("lct-estimate", "--ideal", files["cusp"], "--mmax", "3", "--char", "101")
    assert code == 0 and rep["field"] == "GF(101)" and rep["heuristic"] is True
    assert rep["lct"] == "1/1" and rep["certified"]


def test_estimates(files):
    rep = call("lct-estimate", "--ideal", files["xy"], "--mmax", "3")[1]
    assert rep["lct"] == "1/1" and rep["certified"]
    rep = call("mld-estimate", "--ideal", files["line"], "--center", files["origin"], "--q", "1", "--mmax", "3")[1]
    assert rep["mld"] == "1/1"
    rep = call("mld-estimate", "--ideal", files["line"], "--center", files["origin"], "--q", "3", "--mmax", "3")[1]
    assert rep["mld"] == "-inf"


def test_alpha_beta_gamma(files):
    assert call("alpha", "--ideal", files["xy"], "--p", "2", "--q", "2")[1]["alpha"] == 5
    assert call("alpha", "--ideal", files["xy"], "--p", "2", "--q", "2", "--table")[1]["monotone"]
    assert call("beta", "--ideal", files["xy"], "--m", "2")[1]["beta"] == 4
    rep = call("beta-monomial", "--exponents", "1,1", "--m", "2")[1]
    assert rep["beta"] == 4 and rep["limit"] == "3/2"
    rep = call("gamma", "--ideal", files["xy"], "--algebra", files["box"], "--algebra", "truncation:2")[1]
    assert rep["gamma_lower_bound"] == "5/4"


def test_homog_lci_prop54(files):
    assert call("homog", "--n", "2", "--d", "2", "--mmax", "3")[1]["D"] == [1, 2, 3, 4]
    rep = call("lci-check", "--ideal", files["xy"], "--dim", "1", "--m", "1")[1]
    assert rep["pure_dimensional"] and not rep["irreducible"]
    rep = call("prop54", "--n", "2", "--d", "2", "--r", "2", "--jmax", "3")[1]
    assert rep["limit"] == 4 and rep["verdict"] == "not pure-dimensional"


def test_jet_eqs_roundtrip(files, tmp_path):
    code, text = call("jet-eqs", "--ideal", files["cusp"], "--m", "1")
    assert code == 0 and text.splitlines()[0] == "vars: a_1_1,a_2_1,a_1_2,a_2_2"
    p = tmp_path / "jets.txt"
    p.write_text(text)
    assert call("dim", "--ideal", str(p))[1]["dimension"] == 2


def test_text_format_and_determinism(files):
    a = io.StringIO()
    run(["homog", "--n", "3", "--d", "2", "--mmax", "2", "--format", "text"], a)
    assert "D.2\t6" in a.getvalue()
    b = io.StringIO()
    run(["homog", "--n", "3", "--d", "2", "--mmax", "2", "--format", "text"], b)
    assert a.getvalue() == b.getvalue()


def test_corrupt_cache_entry_is_evicted(tmp_path):
    cache = ResultCache(tmp_path)
    key = cache.key(a=1)
    cache.store(key, {"dimension": 3})
    assert cache.lookup(key) == {"dimension": 3}
    (tmp_path / f"{key}.json").write_text("{not json")
    assert cache.lookup(key) is None
    assert not (tmp_path / f"{key}.json").exists()
    (tmp_path / f"{key}.json").write_text(json.dumps({"key": "other", "result": 1}))
    assert cache.lookup(key) is None


def test_unwritable_cache_degrades(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    cache = ResultCache(blocker / "sub")
    assert not cache.enabled and "cache disabled" in capsys.readouterr().err
    cache.store("k", 1)
    assert cache.lookup("k") is None
