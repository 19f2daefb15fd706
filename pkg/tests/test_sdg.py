from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gradflow.canon import canonical_code
from gradflow.diagram import Surface
from gradflow.enumerator import enumerate_connections, enumerate_morse
from gradflow.sdg import SdgParseError, parse_diagram, print_diagram

from conftest import disk_minimal


def all_diagrams():
    out = []
    for surf in Surface:
        for n in range(2, 7):
            out.extend(enumerate_morse(surf, n))
            out.extend(enumerate_connections(surf, n))
    return out


class TestRoundTrip:
    def test_parse_print_identity(self):
        for d in all_diagrams():
            assert parse_diagram(print_diagram(d)) == d

    def test_print_parse_is_canonical_form(self):
        for d in all_diagrams():
            text = print_diagram(d)
            messy = "# banner\n\n" + text.replace("\n", "\n\n")
            messy = messy.replace(" ", "  ") + "# trailing\n"
            assert print_diagram(parse_diagram(messy)) == text

    def test_codes_survive_round_trip(self):
        for d in all_diagrams():
            assert canonical_code(parse_diagram(print_diagram(d))) \
                == canonical_code(d)

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_random_whitespace_and_comments(self, data):
        text = print_diagram(disk_minimal())
        lines = text.splitlines()
        noisy = []
        for line in lines:
            noisy.append(data.draw(st.text(alphabet=" \t", max_size=3))
                         + line)
            if data.draw(st.booleans()):
                noisy.append("# " + data.draw(st.text(
                    alphabet="abc #:0", max_size=12)))
        assert parse_diagram("\n".join(noisy)) == disk_minimal()


class TestParseErrors:
    def base(self) -> str:
        return print_diagram(disk_minimal())

    def test_missing_surface(self):
        bad = "\n".join(line for line in self.base().splitlines()
                        if not line.startswith("surface"))
        with pytest.raises(SdgParseError):
            parse_diagram(bad)

    def test_duplicate_vertex(self):
        with pytest.raises(SdgParseError, match="duplicate vertex"):
            parse_diagram(self.base() + "vertex 0 iSink\n")

    def test_dart_without_edge(self):
        bad = "\n".join(line for line in self.base().splitlines()
                        if not line.startswith("edge 1"))
        with pytest.raises(SdgParseError, match="no edge"):
            parse_diagram(bad)

    def test_origin_must_be_endpoint(self):
        bad = self.base().replace("edge 0 3 boundary from 0",
                                  "edge 0 3 boundary from 1")
        assert bad != self.base()
        with pytest.raises(SdgParseError, match="origin"):
            parse_diagram(bad)

    def test_unknown_keyword(self):
        with pytest.raises(SdgParseError, match="unknown keyword"):
            parse_diagram(self.base() + "frobnicate 1\n")

    def test_surface_must_match_holes(self):
        bad = self.base().replace("surface disk", "surface pants")
        with pytest.raises(SdgParseError, match="surface"):
            parse_diagram(bad)

    def test_bad_vertex_type(self):
        bad = self.base().replace("bSource", "bMystery")
        with pytest.raises(SdgParseError):
            parse_diagram(bad)
