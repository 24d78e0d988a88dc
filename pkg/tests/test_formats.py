import json
import pathlib

import pytest
from hypothesis import given

from conftest import digraphs, random_digraph
from kernelhunt import (
    ParseError,
    RunReport,
    canonical_json,
    conjecture_premise,
    find_kernel,
    make_digraph,
    parse_edge_list,
    write_dot,
    write_edge_list,
)
from kernelhunt.families import build_h_k
from kernelhunt.formats import certificate_json, input_digest, verdict_json

GOLDEN = pathlib.Path(__file__).parent / "golden"


class TestParse:
    def test_digon(self):
        d = parse_edge_list("n 2\n0 1\n1 0\n")
        assert d == make_digraph(2, [(0, 1), (1, 0)])

    def test_comments_and_blanks_ignored(self):
        d = parse_edge_list("n 3\n# comment\n\n0 1\n1 2\n")
        assert d == make_digraph(3, [(0, 1), (1, 2)])

    def test_loop_rejected_with_line_number(self):
        with pytest.raises(ParseError) as exc:
            parse_edge_list("n 2\n0 0\n")
        assert "line 2" in str(exc.value)

    def test_missing_header(self):
        with pytest.raises(ParseError):
            parse_edge_list("0 1\n")

    def test_malformed_arc_line(self):
        with pytest.raises(ParseError) as exc:
            parse_edge_list("n 2\n0 1 junk\n")
        assert "line 2" in str(exc.value)

    def test_non_integer_token(self):
        with pytest.raises(ParseError):
            parse_edge_list("n 2\na b\n")

    def test_vertex_out_of_range(self):
        with pytest.raises(ParseError) as exc:
            parse_edge_list("n 2\n0 5\n")
        assert "line 2" in str(exc.value)

    def test_duplicate_arcs_collapse(self):
        d = parse_edge_list("n 2\n0 1\n0 1\n")
        assert d.arc_count == 1


class TestRoundTrip:
    @given(digraphs(max_n=8))
    def test_parse_write_identity(self, d):
        assert parse_edge_list(write_edge_list(d)) == d

    @given(digraphs(max_n=8))
    def test_write_is_canonical(self, d):
        text = write_edge_list(d)
        assert write_edge_list(parse_edge_list(text)) == text

    def test_random_larger(self, rng):
        for _ in range(50):
            d = random_digraph(rng, 8)
            assert parse_edge_list(write_edge_list(d)) == d


class TestDot:
    def test_digon_has_both_arcs(self):
        text = write_dot(make_digraph(2, [(0, 1), (1, 0)]))
        assert "0 -> 1" in text and "1 -> 0" in text

    def test_empty_digraph(self):
        assert write_dot(make_digraph(0, [])).split() == ["digraph", "{", "}"]

    def test_family_golden_file(self):
        inst = build_h_k(3)
        want = (GOLDEN / "family_order3.dot").read_text()
        assert write_dot(inst.digraph, labels=inst.labels) == want

    def test_no_label_lines_without_labels(self):
        text = write_dot(make_digraph(2, [(0, 1)]))
        assert "//" not in text


class TestJsonPlumbing:
    def test_canonical_json_is_sorted_and_newline_terminated(self):
        blob = canonical_json({"b": 1, "a": [2, 1]})
        assert blob == '{"a":[2,1],"b":1}\n'

    def test_digest_is_stable(self):
        text = "n 2\n0 1\n"
        assert input_digest(text) == input_digest(text)
        assert len(input_digest(text)) == 64
        assert input_digest(text) != input_digest(text + "\n")

    def test_certificate_json_shape(self):
        cert = find_kernel(make_digraph(3, [(0, 1), (1, 2)]))
        blob = certificate_json(cert)
        assert blob["S"] == sorted(blob["S"])
        assert set(blob) == {"S", "k", "l", "witnesses"}
        assert all(isinstance(key, str) for key in blob["witnesses"])
        assert certificate_json(None) is None

    def test_verdict_json_shape(self):
        verdict = conjecture_premise(make_digraph(3, [(0, 1), (1, 2), (2, 0)]), 3)
        blob = verdict_json(verdict)
        assert blob["holds"] is False
        assert blob["worst"]["margin"] < 0
        json.dumps(blob)

    def test_run_report_rounds_seconds(self):
        report = RunReport(
            command="cycles", input_digest="00", result={"count": 0}, seconds=0.123456789
        )
        assert report.to_json_dict()["seconds"] == 0.123457
