import json

import pytest

from hopfgal import __version__
from hopfgal.cli import main
from hopfgal.corpus import named_group, quaternion8
from hopfgal.groups import surjections_up_to_precomposition


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, ["--json"] + argv)
    return code, json.loads(out), err


@pytest.fixture(scope="module")
def hom_file(tmp_path_factory):
    Q8 = quaternion8()
    V4 = named_group("V4")
    f = surjections_up_to_precomposition(Q8, V4)[0]
    path = tmp_path_factory.mktemp("hom") / "q8_to_v4.json"
    path.write_text(json.dumps({
        "domain": Q8.to_json(),
        "codomain": V4.to_json(),
        "mapping": list(f.mapping),
    }))
    return str(path)


@pytest.fixture()
def pres_file(tmp_path):
    path = tmp_path / "v4.pres"
    path.write_text("gens: x y\nrels: x^2, y^2, [x,y]\nclass: 1\n")
    return str(path)


class TestHomologyCommand:
    def test_both_engines_agree_on_klein_group(self, capsys):
        code, blob, _ = run_json(
            capsys, ["homology", "--named", "V4", "--degree", "2",
                     "--method", "both"])
        assert code == 0
        assert blob["results"]["hopf"] == {"free_rank": 0, "factors": [2]}
        assert blob["results"]["bar"] == {"free_rank": 0, "factors": [2]}
        assert blob["flags"]["agreement"] is True
        assert blob["ok"] is True

    def test_cyclic_group_has_trivial_schur_multiplier(self, capsys):
        code, blob, _ = run_json(
            capsys, ["homology", "--named", "C6", "--degree", "2",
                     "--method", "bar"])
        assert code == 0
        assert blob["results"]["bar"] == {"free_rank": 0, "factors": []}

    def test_trivial_group(self, capsys):
        code, blob, _ = run_json(
            capsys, ["homology", "--named", "trivial", "--degree", "2"])
        assert code == 0
        assert blob["results"]["hopf"]["factors"] == []
        assert blob["results"]["bar"]["factors"] == []

    def test_presentation_file_input(self, capsys, pres_file):
        code, blob, _ = run_json(
            capsys, ["homology", "--presentation", pres_file,
                     "--degree", "2", "--method", "hopf"])
        assert code == 0
        assert blob["results"]["hopf"]["factors"] == [2]
        assert blob["flags"]["stabilization"] == "NONE"
        # input is echoed as a digest so reports stay self-contained
        assert len(blob["inputs"]["presentation"]) == 64

    def test_degree_one_is_abelianization(self, capsys, pres_file):
        code, blob, _ = run_json(
            capsys, ["homology", "--presentation", pres_file,
                     "--degree", "1", "--method", "hopf"])
        assert code == 0
        assert blob["results"]["hopf"]["factors"] == [2, 2]

    def test_primes_flag_quotients_torsion(self, capsys):
        code, blob, _ = run_json(
            capsys, ["homology", "--named", "V4", "--degree", "2",
                     "--primes", "2"])
        assert code == 0
        assert blob["results"]["hopf"]["factors"] == []
        assert blob["results"]["bar"]["factors"] == []
        assert blob["inputs"]["primes"] == [2]

    def test_group_json_input(self, capsys, tmp_path):
        path = tmp_path / "z3xz3.json"
        path.write_text(json.dumps(named_group("Z3xZ3").to_json()))
        code, blob, _ = run_json(
            capsys, ["homology", "--group", str(path), "--method", "bar"])
        assert code == 0
        assert blob["results"]["bar"]["factors"] == [3]

    def test_plain_output_lists_results_and_ok(self, capsys):
        code, out, _ = run(
            capsys, ["homology", "--named", "V4", "--method", "both"])
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-1] == "ok: True"
        assert any(line.startswith("agreement: True") for line in lines)

    def test_disagreement_fails_the_run(self, capsys, pres_file):
        # presentation overrides the named group's own, so the two
        # engines are deliberately fed different inputs here
        code, blob, _ = run_json(
            capsys, ["homology", "--named", "Z4", "--presentation",
                     pres_file, "--method", "both"])
        assert code == 1
        assert blob["flags"]["agreement"] is False
        assert blob["ok"] is False

    def test_hopf_without_presentation_is_an_error(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        path.write_text(json.dumps(named_group("Z4").to_json()))
        code, out, err = run(
            capsys, ["homology", "--group", str(path), "--method", "hopf"])
        assert code == 2
        assert out == ""
        assert "presentation" in err

    def test_no_input_is_an_error(self, capsys):
        code, _, err = run(capsys, ["homology"])
        assert code == 2
        assert "need --named" in err

    def test_unknown_name_is_an_error(self, capsys):
        code, _, err = run(capsys, ["homology", "--named", "monster"])
        assert code == 2
        assert "error:" in err

    def test_missing_file_is_an_error(self, capsys):
        code, _, err = run(
            capsys, ["homology", "--presentation", "/nonexistent.pres"])
        assert code == 2
        assert "error:" in err

    def test_bad_primes_flag_is_an_error(self, capsys):
        code, _, err = run(
            capsys, ["homology", "--named", "V4", "--primes", "2,zebra"])
        assert code == 2
        assert "--primes" in err


class TestGaloisCommand:
    def test_normal_but_not_trivial_witness(self, capsys, hom_file):
        code, blob, _ = run_json(
            capsys, ["galois", "is-normal", "--hom", hom_file])
        assert code == 0 and blob["results"]["normal"] is True
        code, blob, _ = run_json(
            capsys, ["galois", "is-trivial", "--hom", hom_file])
        assert code == 0 and blob["results"]["trivial"] is False

    def test_galois_group_of_central_quotient(self, capsys, hom_file):
        code, blob, _ = run_json(
            capsys, ["galois", "group", "--hom", hom_file])
        assert code == 0
        assert blob["results"]["galois_group"] == {"free_rank": 0,
                                                   "factors": [2]}

    def test_centralize_reports_kernel_and_unit(self, capsys, hom_file):
        code, blob, _ = run_json(
            capsys, ["galois", "centralize", "--hom", hom_file])
        assert code == 0
        assert blob["results"]["centralized_domain_order"] == 8
        assert blob["results"]["centralized_kernel"]["factors"] == [2]
        assert blob["flags"]["unit_surjective"] is True

    def test_characterisation_sees_local_torsion(self, capsys, hom_file):
        # kernel is Z/2: normal in the plain structure, but not once the
        # 2-torsion-free reflector is composed in
        code, blob, _ = run_json(
            capsys, ["galois", "characterisation", "--hom", hom_file,
                     "--primes", "2"])
        assert code == 0 and blob["results"]["normal"] is False
        code, blob, _ = run_json(
            capsys, ["galois", "characterisation", "--hom", hom_file,
                     "--primes", "3"])
        assert code == 0 and blob["results"]["normal"] is True

    def test_malformed_hom_file_is_an_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"domain": named_group("Z2").to_json()}))
        code, _, err = run(capsys, ["galois", "is-normal",
                                    "--hom", str(path)])
        assert code == 2
        assert "hom file" in err


class TestVerifyCommand:
    def test_none_suite_runs_nothing(self, capsys):
        code, blob, _ = run_json(capsys, ["verify", "--suite", "none"])
        assert code == 0
        assert blob["results"] == {}
        assert blob["ok"] is True

    def test_single_suite_with_seed(self, capsys):
        code, blob, _ = run_json(
            capsys, ["verify", "--suite", "matrices", "--seed", "7"])
        assert code == 0
        assert "matrices" in blob["results"]
        assert blob["inputs"]["seed"] == 7

    def test_suites_can_be_repeated(self, capsys):
        code, blob, _ = run_json(
            capsys, ["verify", "--suite", "matrices", "--suite", "closure",
                     "--max-order", "8"])
        assert code == 0
        assert set(blob["results"]) == {"matrices", "closure"}

    def test_unknown_suite_is_an_error(self, capsys):
        code, _, err = run(capsys, ["verify", "--suite", "astrology"])
        assert code == 2
        assert "astrology" in err


class TestReportShape:
    def test_json_report_keys(self, capsys):
        code, blob, _ = run_json(capsys, ["verify", "--suite", "none"])
        assert code == 0
        assert set(blob) == {"command", "engine_version", "inputs",
                             "results", "timings", "flags", "ok"}
        assert blob["engine_version"] == __version__
        assert blob["command"] == ["--json", "verify", "--suite", "none"]

    def test_timings_are_recorded(self, capsys):
        code, blob, _ = run_json(
            capsys, ["homology", "--named", "Z3", "--method", "bar"])
        assert code == 0
        assert "bar" in blob["timings"]
        assert blob["timings"]["bar"] >= 0


class TestEnvironmentOverride:
    def test_max_order_cap_bounds_bar_runs(self, capsys, monkeypatch):
        monkeypatch.setenv("HOPFGAL_MAX_ORDER", "4")
        code, _, err = run(
            capsys, ["homology", "--named", "Z8", "--method", "bar"])
        assert code == 2
        assert "error:" in err

    def test_max_order_cap_allows_small_runs(self, capsys, monkeypatch):
        monkeypatch.setenv("HOPFGAL_MAX_ORDER", "4")
        code, blob, _ = run_json(
            capsys, ["homology", "--named", "Z4", "--method", "bar"])
        assert code == 0
        assert blob["results"]["bar"]["factors"] == []

    def test_garbage_env_value_is_an_error(self, capsys, monkeypatch):
        monkeypatch.setenv("HOPFGAL_MAX_ORDER", "plenty")
        code, _, err = run(
            capsys, ["homology", "--named", "Z4", "--method", "bar"])
        assert code == 2
        assert "HOPFGAL_MAX_ORDER" in err

    def test_env_also_caps_the_verify_corpus(self, capsys, monkeypatch):
        monkeypatch.setenv("HOPFGAL_MAX_ORDER", "6")
        code, blob, _ = run_json(capsys, ["verify", "--suite", "centrality"])
        assert code == 0
        assert blob["inputs"]["max_order"] == 6


class TestArgumentParsing:
    def test_unknown_subcommand_exits_via_argparse(self, capsys):
        with pytest.raises(SystemExit):
            main(["conjecture"])

    def test_degree_is_restricted(self, capsys):
        with pytest.raises(SystemExit):
            main(["homology", "--named", "V4", "--degree", "4"])
