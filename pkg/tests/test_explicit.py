import pytest

from algebra.spans import Span
from errors import TooLarge
from trellises.builders import bcjr_trellis_from_spans, elementary_trellis, product_trellis
from trellises.explicit import cycle_label_set, explicit_graph, label_set_of_code, vertex_counts
from utils.display import format_matrix, staggered
from utils.dot_export import export_dot, vertex_name
from .strategies import gf


@pytest.fixture
def elementary():
    return elementary_trellis([1, 0, 1], Span(2, 0, 3))


class TestExplicitGraph:
    def test_elementary_graph(self, elementary):
        graph = explicit_graph(elementary)
        assert vertex_counts(graph) == (2, 1, 1)
        assert graph.number_of_edges() == 5
        assert cycle_label_set(elementary) == {(0, 0, 0), (1, 0, 1)}

    def test_bcjr_vertex_counts(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        assert vertex_counts(explicit_graph(t)) == (4, 2, 2, 4, 4)

    def test_cycles_spell_the_code(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        labels = cycle_label_set(t)
        assert len(labels) == 8
        assert labels == label_set_of_code(bcjr_example.code.G)

    def test_vertex_budget(self, bcjr_example):
        t = bcjr_trellis_from_spans(bcjr_example.G, bcjr_example.H, bcjr_example.spans).base
        with pytest.raises(TooLarge):
            explicit_graph(t, budget=10)


class TestDot:
    def test_vertex_names(self):
        assert vertex_name(0, (1, 0)) == "t0_10"
        assert vertex_name(2, ()) == "t2_0"

    def test_elementary_dot(self, elementary):
        dot = export_dot(elementary)
        assert dot.startswith("digraph trellis {\n  rankdir=LR;\n")
        assert '  "t0_1" -> "t1_0" [label="1", style=solid];' in dot
        assert '  "t0_0" -> "t1_0" [label="0", style=dashed];' in dot
        assert dot.count(" -> ") == 5
        assert dot == export_dot(elementary_trellis([1, 0, 1], Span(2, 0, 3)))


class TestDisplay:
    def test_format_matrix(self):
        assert format_matrix(gf(2, "1001;0110")) == "1001\n0110"
        assert format_matrix(gf(3, "12"), separator=" ") == "1 2"

    def test_staggered_bcjr_rows(self, selfdual):
        t = bcjr_trellis_from_spans(selfdual.G, selfdual.H, selfdual.spans)
        lines = staggered(t.N, t.G).splitlines()
        assert len(lines) == 4
        assert lines[0] == "1 0 | 1 | 0 0 | 0 | 0 0 | 0 | 0 0 | 1 | 1 0"

    def test_staggered_product_rows(self, improper_product):
        t = product_trellis(improper_product.G, improper_product.spans)
        assert staggered(t.M, t.G).splitlines()[0] == "0 0 | 0 | 0 0 | 1 | 1 0 | 1 | 0 0"
