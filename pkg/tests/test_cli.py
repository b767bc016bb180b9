import json

from compchoice import documents
from compchoice.cli import main
from compchoice.fixtures import get_fixture_document


def write_fixture(tmp_path, name, filename=None):
    path = tmp_path / (filename or f"{name}.json")
    path.write_text(documents.dumps(get_fixture_document(name)), encoding="utf-8")
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


class TestVerify:
    def test_expected_property_holds(self, tmp_path, capsys):
        path = write_fixture(tmp_path, "submodular-counterexample")
        code, out = run(capsys, "verify", path, "--expect", "submodular")
        assert code == 0
        assert "submodular" in out

    def test_refuted_expectation_exits_one(self, tmp_path, capsys):
        path = write_fixture(tmp_path, "submodular-counterexample-cf")
        code, out = run(capsys, "verify", path, "--expect", "substitutable")
        assert code == 1
        assert "element=b" in out

    def test_truncated_document_exits_two(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text('{"kind": "choice_function"', encoding="utf-8")
        code, _ = run(capsys, "verify", path)
        assert code == 2

    def test_missing_file_exits_two(self, tmp_path, capsys):
        code, _ = run(capsys, "verify", tmp_path / "absent.json")
        assert code == 2

    def test_unknown_expectation_exits_two(self, tmp_path, capsys):
        path = write_fixture(tmp_path, "submodular-counterexample")
        code, _ = run(capsys, "verify", path, "--expect", "sparkly")
        assert code == 2

    def test_json_format(self, tmp_path, capsys):
        path = write_fixture(tmp_path, "submodular-counterexample-cf")
        code, out = run(capsys, "verify", path, "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["kind"] == "verify_report"
        assert payload["flags"]["substitutable_heredity"] is False
        assert payload["witnesses"]["substitutable_heredity"]["element"] == "b"

    def test_family_flags(self, tmp_path, capsys):
        path = write_fixture(tmp_path, "partition-pretopology")
        code, out = run(
            capsys, "verify", path, "--expect", "union-closed,intersection-closed"
        )
        assert code == 0

    def test_preorder_and_lattice_load(self, tmp_path, capsys):
        for name in ("twin-elements-preorder", "divisors-12-lattice"):
            path = write_fixture(tmp_path, name)
            code, _ = run(capsys, "verify", path, "--expect", "valid")
            assert code == 0

    def test_max_n_guard_exits_two(self, tmp_path, capsys):
        path = write_fixture(tmp_path, "submodular-counterexample-cf")
        code, _ = run(capsys, "verify", path, "--max-n", "2")
        assert code == 2

    def test_tampered_lift_exits_one_even_without_expect(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        lift_path = tmp_path / "lift.json"
        code, _ = run(capsys, "convert", src, "--to", "lift", "-o", lift_path)
        assert code == 0
        doc = json.loads(lift_path.read_text(encoding="utf-8"))
        doc["order_pairs"] = [[x, x] for x in doc["pair_elements"]]
        lift_path.write_text(json.dumps(doc), encoding="utf-8")
        code, out = run(capsys, "verify", lift_path)
        assert code == 1
        assert "verified" in out


class TestConvert:
    def test_cf_family_roundtrip(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        fam = tmp_path / "fam.json"
        code, _ = run(capsys, "convert", src, "--to", "family", "-o", fam)
        assert code == 0
        back = tmp_path / "back.json"
        code, _ = run(capsys, "convert", fam, "--to", "cf", "-o", back)
        assert code == 0
        assert documents.load_path(str(back)).table == documents.load_path(str(src)).table

    def test_cf_setfn_roundtrip(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        u = tmp_path / "u.json"
        code, _ = run(capsys, "convert", src, "--to", "setfn", "-o", u)
        assert code == 0
        back = tmp_path / "back.json"
        code, _ = run(capsys, "convert", u, "--to", "cf", "-o", back)
        assert code == 0
        assert documents.load_path(str(back)).table == documents.load_path(str(src)).table

    def test_perturb_flag_with_epsilon(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        code, out = run(
            capsys, "convert", src, "--to", "setfn", "--perturb",
            "--epsilon", "1/4", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["stamp"]["ok"] is True
        values = {tuple(e["subset"]): e["value"] for e in payload["document"]["values"]}
        assert values[("b", "c")] == "1/2"

    def test_preorder_roundtrip(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "twin-elements-cf")
        pre = tmp_path / "p.json"
        code, _ = run(capsys, "convert", src, "--to", "preorder", "-o", pre)
        assert code == 0
        p = documents.load_path(str(pre))
        assert p.leq("a", "b") and p.leq("b", "a") and not p.leq("c", "b")
        back = tmp_path / "back.json"
        code, _ = run(capsys, "convert", pre, "--to", "cf", "-o", back)
        assert code == 0
        assert documents.load_path(str(back)).table == documents.load_path(str(src)).table

    def test_preorder_route_precondition_exits_one(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        code, out = run(capsys, "convert", src, "--to", "preorder")
        assert code == 1
        assert "minimal neighborhoods" in out

    def test_lift_routes_and_reverify(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        for target in ("lift", "lift-economical"):
            out_path = tmp_path / f"{target}.json"
            code, _ = run(capsys, "convert", src, "--to", target, "-o", out_path)
            assert code == 0
            code, _ = run(capsys, "verify", out_path, "--expect", "verified")
            assert code == 0

    def test_neighborhoods_roundtrip(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        systems = tmp_path / "m.json"
        code, _ = run(capsys, "convert", src, "--to", "neighborhoods", "-o", systems)
        assert code == 0
        back = tmp_path / "back.json"
        code, _ = run(capsys, "convert", systems, "--to", "cf", "-o", back)
        assert code == 0
        assert documents.load_path(str(back)).table == documents.load_path(str(src)).table

    def test_lattice_routes(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "divisors-12-lattice-cf")
        fn = tmp_path / "u.json"
        code, _ = run(capsys, "convert", src, "--to", "lattice-fn", "-o", fn)
        assert code == 0
        back = tmp_path / "back.json"
        code, _ = run(capsys, "convert", fn, "--to", "lattice-cf", "-o", back)
        assert code == 0
        assert documents.load_path(str(back)).table == documents.load_path(str(src)).table

    def test_invalid_route_exits_two(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "partition-pretopology")
        code, _ = run(capsys, "convert", src, "--to", "preorder")
        assert code == 2

    def test_setfn_route_needs_unique_minimizers(self, tmp_path, capsys):
        doc = {
            "kind": "set_function",
            "ground": ["a", "b"],
            "values": [
                {"subset": [], "value": "0"},
                {"subset": ["a"], "value": "1"},
                {"subset": ["b"], "value": "1"},
                {"subset": ["a", "b"], "value": "0"},
            ],
        }
        path = tmp_path / "ties.json"
        path.write_text(documents.dumps(doc), encoding="utf-8")
        code, out = run(capsys, "convert", path, "--to", "cf")
        assert code == 1
        assert "least maximizer" in out

    def test_failed_reverification_exits_three(self, tmp_path, capsys, monkeypatch):
        from compchoice import ChoiceFunction, decompose
        from compchoice import cli as cli_module

        monkeypatch.setitem(
            cli_module._ROUTES,
            (ChoiceFunction, "family"),
            lambda obj, cfg: (decompose(obj), [{"name": "forced failure", "ok": False}]),
        )
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        code, out = run(capsys, "convert", src, "--to", "family")
        assert code == 3
        assert "FAILED" in out

    def test_verify_neighborhood_and_lattice_documents(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        systems = tmp_path / "m.json"
        code, _ = run(capsys, "convert", src, "--to", "neighborhoods", "-o", systems)
        assert code == 0
        code, _ = run(capsys, "verify", systems, "--expect", "antichain,refinement")
        assert code == 0
        lcf = write_fixture(tmp_path, "divisors-12-lattice-cf")
        code, _ = run(capsys, "verify", lcf, "--expect", "complementary")
        assert code == 0

    def test_output_files_roundtrip_byte_identically(self, tmp_path, capsys):
        src = write_fixture(tmp_path, "overlapping-pairs-cf")
        for target in ("family", "setfn", "lift", "neighborhoods"):
            out_path = tmp_path / f"{target}-doc.json"
            code, _ = run(capsys, "convert", src, "--to", target, "-o", out_path)
            assert code == 0
            text = out_path.read_text(encoding="utf-8")
            assert documents.dumps(documents.loads(text)) == text


class TestEnumerate:
    def test_n1_and_n2_counts(self, capsys):
        code, out = run(capsys, "enumerate", "--n", "1", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["contracting_filter_count"] == 2
        assert payload["union_closed_family_count"] == 2
        code, out = run(capsys, "enumerate", "--n", "2", "--format", "json")
        payload = json.loads(out)
        assert payload["contracting_filter_count"] == 7
        assert payload["union_closed_family_count"] == 7

    def test_n3_agreement(self, capsys):
        code, out = run(capsys, "enumerate", "--n", "3", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["agree"] is True
        assert payload["contracting_filter_count"] == payload["union_closed_family_count"]

    def test_stream(self, capsys):
        code, out = run(capsys, "enumerate", "--n", "1", "--stream")
        assert code == 0
        lines = [l for l in out.splitlines() if l.startswith("{")]
        assert len(lines) == 2

    def test_too_large_exits_two(self, capsys):
        code, _ = run(capsys, "enumerate", "--n", "6")
        assert code == 2


class TestSearch:
    def test_counterexample_found_at_n3(self, capsys):
        code, out = run(
            capsys,
            "search", "--pattern", "submodular-not-substitutable",
            "--n", "3", "--limit", "1", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["found"] >= 1
        match = payload["matches"][0]
        u = documents.from_document(match["set_function"])
        from compchoice import analyze, classify, induce_cf

        assert classify(u).is_submodular
        assert not analyze(induce_cf(u)).substitutable_heredity

    def test_no_violation_possible_at_n1(self, capsys):
        code, out = run(
            capsys,
            "search", "--pattern", "submodular-not-substitutable",
            "--n", "1", "--format", "json",
        )
        payload = json.loads(out)
        assert payload["found"] == 0

    def test_order_violations_absent(self, capsys):
        code, out = run(
            capsys,
            "search", "--pattern", "supermodular-order-violation",
            "--n", "3", "--format", "json",
        )
        payload = json.loads(out)
        assert payload["found"] == 0

    def test_custom_predicate(self, capsys):
        code, out = run(
            capsys,
            "search", "--pattern", "custom-predicate", "--n", "2",
            "--predicate", "monotone&!consistent", "--format", "json",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["found"] >= 1
        from compchoice import analyze

        for match in payload["matches"]:
            f = documents.from_document(match["choice_function"])
            rep = analyze(f)
            assert rep.monotone and not rep.consistent

    def test_custom_predicate_bad_axiom_exits_two(self, capsys):
        code, _ = run(
            capsys,
            "search", "--pattern", "custom-predicate", "--n", "2",
            "--predicate", "shiny",
        )
        assert code == 2

    def test_missing_predicate_exits_two(self, capsys):
        code, _ = run(capsys, "search", "--pattern", "custom-predicate", "--n", "2")
        assert code == 2


class TestFixturesCommand:
    def test_listing(self, capsys):
        code, out = run(capsys, "fixtures")
        assert code == 0
        assert "submodular-counterexample" in out

    def test_emit_document(self, capsys):
        code, out = run(capsys, "fixtures", "--name", "partition-pretopology")
        assert code == 0
        doc = json.loads(out)
        assert doc["kind"] == "family"

    def test_unknown_name_exits_two(self, capsys):
        code, _ = run(capsys, "fixtures", "--name", "nope")
        assert code == 2
