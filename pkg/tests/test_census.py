import json

import pytest

from superell import InputError, make_field
from superell.census import (
    decomposition_check,
    family_experiment,
    model_from_char,
    run_census,
    seed_check,
    seed_model,
)
from superell.characters import enumerate_order_ell
from superell.cli import main as cli_main
from superell.curves import SuperellipticModel, has_central_eigenvalue, zeta_numerator
from superell.polyring import Poly


def test_census_small_counts_and_invariants(F7):
    rep = run_census(7, 1, 3, 2, sample_decomp=10)
    rows = {(r["degree"], r["count_A"]) for r in rep.per_degree}
    assert rows == {(1, 14), (2, 126)}
    assert rep.duality_ok
    assert rep.decomposition["sampled"] == 10 and rep.decomposition["all_match"]
    data = rep.to_json()
    assert data["schema_version"] == 1
    csv = rep.per_degree_csv()
    assert csv.splitlines()[0] == "degree,count_A,count_B"


def test_census_cache_warm_rerun_identical(tmp_path):
    path = str(tmp_path / "lcache.jsonl")
    cold = run_census(7, 1, 3, 2, sample_decomp=5, cache_path=path)
    warm = run_census(7, 1, 3, 2, sample_decomp=5, cache_path=path)
    assert warm.cache_stats["hits"] > 0
    a = cold.to_json(include_runtime=False)
    b = warm.to_json(include_runtime=False)
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)


def test_census_cache_corruption_rebuilds(tmp_path):
    path = str(tmp_path / "lcache.jsonl")
    run_census(7, 1, 3, 1, sample_decomp=2, cache_path=path)
    with open(path) as fh:
        text = fh.read()
    with open(path, "w") as fh:
        fh.write(text.replace('"checksum":"', '"checksum":"ff'))
    rep = run_census(7, 1, 3, 1, sample_decomp=2, cache_path=path)
    assert rep.cache_stats.get("rebuilt") is True


def test_model_from_char_roundtrip(F7):
    for chi in enumerate_order_ell(F7, 3, 2):
        model = model_from_char(chi)
        assert model.normalized == chi.even
        from superell import char_from_model

        assert char_from_model(model) == chi


def test_decomposition_check_requires_normalized(F7):
    t = Poly.x(F7)
    odd_model = SuperellipticModel(3, F7, F7.one(), (t, Poly.one(F7)))
    with pytest.raises(InputError):
        decomposition_check(odd_model)


def test_decomposition_check_twisted_models(F7):
    t = Poly.x(F7)
    for ci in (2, 3):
        m = SuperellipticModel(3, F7, F7.elem_at(ci), (t**3 - t, Poly.one(F7)))
        assert decomposition_check(m)


def test_seed_check_thm41():
    rep = seed_check("thm41", 5)
    assert all(rep.verdicts.values())
    data = rep.to_json()
    assert data["P_E"]["coeffs"] == ["1", "0", "5"]
    assert data["P_E_base4"]["coeffs"] == ["1", "-50", "625"]
    with pytest.raises(InputError):
        seed_check("thm41", 7)  # 7 = 1 mod 3


def test_seed_check_thm42_small():
    rep = seed_check("thm42", 5, ell=3)
    assert rep.data["genus"] == 1
    assert all(rep.verdicts.values())
    with pytest.raises(InputError):
        seed_check("thm42", 7, ell=5)  # 7 != -1 mod 5


def test_seed_check_f25twist():
    rep = seed_check("f25twist", 5)
    assert rep.verdicts["found"]
    assert rep.data["traces"] == [-10, -5, -5, 5, 5, 10]
    found = rep.data["found"]
    F25 = make_field(5, 2)
    model = SuperellipticModel.from_json(F25, found)
    assert zeta_numerator(model).coeffs == (1, -10, 25)
    assert has_central_eigenvalue(zeta_numerator(model))


def test_seed_model_f25twist():
    m = seed_model("f25twist", 5)
    assert m.field.q == 25 and m.normalized


def test_family_experiment_vacuous():
    out = family_experiment("f25twist", 2, p=5)
    assert out["vacuous"] and out["distinct_models"] == 0


def test_family_experiment_thm41_base_member():
    out = family_experiment(
        "thm41",
        3,
        p=5,
        verify_vanishing=True,
        max_pairs_per_degree=1,
        max_members_per_degree=1,
        decomposition_sample=0,
    )
    assert out["distinct_models"] == 1
    entry = out["verification"][0]
    assert entry["divides"] and entry["central_eigenvalue"] and entry["l_central_zero"]
    assert out["all_verified"]


def test_unknown_seed_kind():
    with pytest.raises(InputError):
        seed_check("nope", 5)
    with pytest.raises(InputError):
        seed_model("nope", 5)
    with pytest.raises(InputError):
        seed_check("thm42", 19)  # missing ell


# -- CLI ------------------------------------------------------------------------------


def test_cli_census_json_and_csv(tmp_path, capsys):
    out = tmp_path / "rep.json"
    rc = cli_main(["census", "--p", "7", "--ell", "3", "--max-degree", "1",
                   "--sample-decomp", "2", "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["per_degree"][0]["count_A"] == 14
    out_csv = tmp_path / "rep.csv"
    rc = cli_main(["census", "--p", "7", "--ell", "3", "--max-degree", "1",
                   "--sample-decomp", "0", "--out", str(out_csv)])
    assert rc == 0
    assert out_csv.read_text().startswith("degree,count_A,count_B")


def test_cli_seed_check(capsys):
    rc = cli_main(["seed-check", "--kind", "thm41", "--p", "5"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["verdicts"]["a_p_zero"] is True


def test_cli_family(tmp_path):
    out = tmp_path / "fam.json"
    rc = cli_main(["family", "--seed-kind", "f25twist", "--p", "5", "--n", "3",
                   "--max-pairs-per-degree", "30", "--max-members-per-degree", "5",
                   "--out", str(out)])
    assert rc == 0
    data = json.loads(out.read_text())
    assert data["distinct_models"] >= 1
    assert all(v["divides"] for v in data["verification"])


def test_cli_density(capsys):
    rc = cli_main(["density", "--p", "7", "--ell", "3",
                   "--components", "[[0,6,0,1],[1]]", "--deg-max", "1",
                   "--samples", "200", "--seed", "3"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["empirical"]["samples"] == 200
    assert int(data["truncated_product"]["den"]) > 0


def test_cli_lpoly(capsys):
    rc = cli_main(["lpoly", "--p", "7", "--ell", "3",
                   "--conductor-factors", "[[[0,1],1],[[6,1],2]]"])
    assert rc == 0
    data = json.loads(capsys.readouterr().out)
    assert data["even"] is True
    assert data["trivial_factor_exponent"] == 0


def test_cli_exit_codes(capsys):
    assert cli_main(["lpoly", "--p", "6", "--ell", "3", "--conductor-factors", "[[[0,1],1]]"]) == 2
    assert cli_main(["census", "--p", "7", "--ell", "3", "--max-degree", "12"]) == 3


@pytest.mark.slow
def test_census_f25_degree3_includes_seed_vanishing():
    rep = run_census(5, 2, 3, 3, sample_decomp=5)
    counts = {r["degree"]: r["count_A"] for r in rep.per_degree}
    assert counts == {1: 50, 2: 1800, 3: 58800}
    assert rep.duality_ok
    # the trivial-twist quadratic-partner conductors of the f25twist seed live
    # at degree 3; the census flags some vanishing conductor there
    assert rep.per_degree[2]["count_B"] > 0


def test_vanishing_characters_confirmed_by_zeta_route(F7):
    """Central vanishing found by character sums must be visible as a central
    eigenvalue of the corresponding curve, counted independently.  For models
    ramified at infinity the unstripped product L(chi) L(chi-bar) is the full
    numerator."""
    from superell.lfunction import l_polynomial

    rep = run_census(7, 1, 3, 3, sample_decomp=0)
    vanishing = rep.per_degree[2]["vanishing"]
    assert vanishing, "the degree-3 census is expected to contain vanishing characters"
    from superell import DirichletChar

    for data in vanishing[:4]:
        chi = DirichletChar.from_json(F7, data)
        model = model_from_char(chi)
        P = zeta_numerator(model)
        assert has_central_eigenvalue(P)
        if not chi.even:
            prod = l_polynomial(chi) * l_polynomial(chi.dual())
            assert [c.as_int() for c in prod.coeffs] == list(P.coeffs)


def test_census_count_formula_other_fields():
    # count-only agreement between enumeration and the generating series
    from superell import count_order_ell_exact, enumerate_order_ell

    F13 = make_field(13, 1)
    by_deg: dict = {}
    for chi in enumerate_order_ell(F13, 3, 3):
        by_deg[chi.degree] = by_deg.get(chi.degree, 0) + 1
    assert by_deg == {d: count_order_ell_exact(13, 3, d) for d in (1, 2, 3)}
    F25 = make_field(5, 2)
    by_deg = {}
    for chi in enumerate_order_ell(F25, 3, 2):
        by_deg[chi.degree] = by_deg.get(chi.degree, 0) + 1
    assert by_deg == {1: 50, 2: count_order_ell_exact(25, 3, 2)}
