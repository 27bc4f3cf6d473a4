import json
import random

import pytest

from treelat.complex_model import (
    ComplexFormatError,
    DegenerateOrbitError,
    DirectedEdgeRef,
    expand_directed_squares,
    load_complex,
    serialize_complex,
    sigma_act,
    validate_vht,
)

import _complexes
from _complexes import one_vertex_doc, ref, square


def load(doc):
    return load_complex(doc)


def test_torus_counts():
    c = load(_complexes.torus_doc())
    assert len(c.vertices) == 1
    assert len(c.h_edges) == 1 and len(c.v_edges) == 1
    assert len(c.squares) == 1
    assert len(c.directed_h()) + len(c.directed_v()) == 4


def test_unknown_edge_reference():
    doc = one_vertex_doc(["a"], ["b"], [square(ref("a"), ref("b"), ref("c"), ref("b"))])
    with pytest.raises(ComplexFormatError, match="unknown edge 'c'"):
        load(doc)


def test_wrong_edge_role():
    doc = one_vertex_doc(["a"], ["b"], [square(ref("b"), ref("a"), ref("b"), ref("a"))])
    with pytest.raises(ComplexFormatError, match="slot is horizontal"):
        load(doc)


def test_duplicate_edge_id_across_lists():
    doc = json.dumps(
        {
            "vertices": ["v"],
            "horizontal_edges": [{"id": "e", "origin": "v", "terminus": "v"}],
            "vertical_edges": [{"id": "e", "origin": "v", "terminus": "v"}],
            "squares": [],
        }
    )
    with pytest.raises(ComplexFormatError, match="duplicate edge id 'e'"):
        load(doc)


def test_duplicate_vertex_id():
    doc = json.dumps(
        {"vertices": ["v", "v"], "horizontal_edges": [], "vertical_edges": [], "squares": []}
    )
    with pytest.raises(ComplexFormatError, match="duplicate vertex id 'v'"):
        load(doc)


def test_unknown_vertex_in_edge():
    doc = json.dumps(
        {
            "vertices": ["v"],
            "horizontal_edges": [{"id": "a", "origin": "v", "terminus": "w"}],
            "vertical_edges": [],
            "squares": [],
        }
    )
    with pytest.raises(ComplexFormatError, match="unknown vertex 'w'"):
        load(doc)


def test_unknown_keys_rejected():
    doc = json.loads(_complexes.torus_doc())
    doc["extra"] = 1
    with pytest.raises(ComplexFormatError, match="unknown top-level keys"):
        load(json.dumps(doc))
    doc = json.loads(_complexes.torus_doc())
    doc["squares"][0]["color"] = "red"
    with pytest.raises(ComplexFormatError, match="unknown keys"):
        load(json.dumps(doc))


def test_metadata_key_tolerated():
    doc = json.loads(_complexes.torus_doc())
    doc["metadata"] = {"note": "anything"}
    c = load(json.dumps(doc))
    assert len(c.squares) == 1


def test_malformed_json():
    with pytest.raises(ComplexFormatError, match="not valid JSON"):
        load("{nope")


def test_corner_incidence_failure():
    doc = json.dumps(
        {
            "vertices": ["v", "w"],
            "horizontal_edges": [{"id": "a", "origin": "v", "terminus": "w"}],
            "vertical_edges": [{"id": "b", "origin": "v", "terminus": "v"}],
            "squares": [square(ref("a"), ref("b"), ref("a"), ref("b"))],
        }
    )
    with pytest.raises(ComplexFormatError, match="corner incidence"):
        load(doc)


def test_serialize_round_trip():
    doc = serialize_complex(load(_complexes.f2xf2_doc()))
    c = load(doc)
    assert serialize_complex(c) == doc


# --- reflections and expansion ------------------------------------------------


def test_torus_expansion_matches_reflection_formulas():
    c = load(_complexes.torus_doc())
    r = expand_directed_squares(c)
    assert len(r) == 4
    a = DirectedEdgeRef("a", False)
    b = DirectedEdgeRef("b", False)
    assert r[0].labels() == (a, b, a, b)
    assert r[1].labels() == (a, b.bar(), a, b.bar())
    assert r[2].labels() == (a.bar(), b, a.bar(), b)
    assert r[3].labels() == (a.bar(), b.bar(), a.bar(), b.bar())
    assert [t.sigma_tag for t in r] == ["1", "v", "h", "vh"]


KLEIN_TABLE = {
    ("1", "1"): "1", ("1", "v"): "v", ("1", "h"): "h", ("1", "vh"): "vh",
    ("v", "1"): "v", ("v", "v"): "1", ("v", "h"): "vh", ("v", "vh"): "h",
    ("h", "1"): "h", ("h", "v"): "vh", ("h", "h"): "1", ("h", "vh"): "v",
    ("vh", "1"): "vh", ("vh", "v"): "h", ("vh", "h"): "v", ("vh", "vh"): "1",
}


def test_sigma_group_laws(corpus):
    # all sixteen composition identities of the Klein four-group, on every
    # directed square of every corpus complex
    for analysis in corpus.values():
        for t in analysis.expanded:
            assert sigma_act(t, "1") == t
            for (g, h), gh in KLEIN_TABLE.items():
                lhs = sigma_act(sigma_act(t, h), g)
                rhs = sigma_act(t, gh)
                assert lhs.labels() == rhs.labels()
                assert lhs.sigma_tag == rhs.sigma_tag
                assert lhs.orbit_id == rhs.orbit_id


def test_expanded_orbits_have_four_distinct_tags(corpus):
    for analysis in corpus.values():
        r = analysis.expanded
        for base in range(0, len(r), 4):
            orbit = r[base : base + 4]
            assert [t.sigma_tag for t in orbit] == ["1", "v", "h", "vh"]
            assert len({t.orbit_id for t in orbit}) == 1
            assert len({t.labels() for t in orbit}) == 4
            rep = orbit[0]
            for t, g in zip(orbit, ("1", "v", "h", "vh")):
                assert t.labels() == sigma_act(rep, g).labels()


def test_flip_identities(corpus):
    # a'(t) = a(t^v) and b'(t) = b(t^h) for every directed square
    for analysis in corpus.values():
        for t in analysis.expanded:
            assert t.a_prime == sigma_act(t, "v").a
            assert t.b_prime == sigma_act(t, "h").b


def test_expansion_is_four_to_one(corpus):
    for analysis in corpus.values():
        assert len(analysis.expanded) == 4 * len(analysis.complex.squares)


def test_expansion_rejects_degenerate_orbit():
    doc = one_vertex_doc(
        ["a"], ["b"], [square(ref("a"), ref("b"), ref("a", True), ref("b", True))]
    )
    with pytest.raises(DegenerateOrbitError):
        expand_directed_squares(load(doc))


def test_reversal_is_fixed_point_free(corpus):
    for analysis in corpus.values():
        c = analysis.complex
        for d in c.directed_h() + c.directed_v():
            assert d.bar() != d
            assert d.bar().bar() == d


# --- validation ----------------------------------------------------------------


def test_torus_validation_warns_on_degrees():
    rep = validate_vht(load(_complexes.torus_doc()))
    assert rep.ok
    kinds = [w.kind for w in rep.warnings]
    assert kinds == ["low_h_degree", "low_v_degree"]
    assert "horizontal degree 2 < 3 at vertex v" in rep.warnings[0].message
    assert rep.degrees == (("v", 2, 2),)


def test_f2xf2_validation_clean():
    rep = validate_vht(load(_complexes.f2xf2_doc()))
    assert rep.ok and not rep.warnings
    assert rep.degrees == (("v", 4, 4),)


def test_duplicated_square_link_failure():
    # F2 x F2 with one square doubled and another dropped
    squares = [
        square(ref("a1"), ref("b1"), ref("a1"), ref("b1")),
        square(ref("a1"), ref("b1"), ref("a1"), ref("b1")),
        square(ref("a2"), ref("b1"), ref("a2"), ref("b1")),
        square(ref("a2"), ref("b2"), ref("a2"), ref("b2")),
    ]
    rep = validate_vht(load(one_vertex_doc(["a1", "a2"], ["b1", "b2"], squares)))
    assert not rep.ok
    messages = " | ".join(e.message for e in rep.errors)
    assert "(a1, b2) not covered" in messages
    assert "(a1, b1) covered 2 times" in messages


def test_uncovered_corner_reported_per_pair():
    rep = validate_vht(load(one_vertex_doc(["a"], ["b"], [])))
    uncovered = [e for e in rep.errors if e.kind == "link_uncovered"]
    assert len(uncovered) == 4  # all of {a,~a} x {b,~b}


def test_forced_edge_inversion_detected():
    squares = [
        square(ref("a"), ref("b"), ref("c"), ref("d")),
        square(ref("a"), ref("b"), ref("c", True), ref("d")),
    ]
    rep = validate_vht(load(one_vertex_doc(["a", "c"], ["b", "d"], squares)))
    inverted = [e for e in rep.errors if e.kind == "edge_inverted"]
    assert inverted and "c = ~c" in inverted[0].message


def test_orbit_degeneracy_is_an_error():
    doc = one_vertex_doc(
        ["a"], ["b"], [square(ref("a"), ref("b"), ref("a", True), ref("b", True))]
    )
    rep = validate_vht(load(doc))
    assert any(e.kind == "orbit_degenerate" for e in rep.errors)


def test_disconnected_complex_is_an_error():
    rep = validate_vht(load(_complexes.two_torus_components_doc()))
    assert any(e.kind == "disconnected" for e in rep.errors)
    assert not rep.connected


def test_link_count_identity(corpus):
    # sum over vertices of h-degree * v-degree equals |expanded squares|
    for analysis in corpus.values():
        c = analysis.complex
        total = sum(c.h_degree(v) * c.v_degree(v) for v in c.vertices)
        assert total == len(analysis.expanded)


def test_one_vertex_corner_map_is_onto_all_pairs(f2xf2):
    c = f2xf2.complex
    pairs = {(t.a, t.b) for t in f2xf2.expanded}
    assert pairs == {(al, be) for al in c.directed_h() for be in c.directed_v()}


def test_random_one_vertex_complexes_validate():
    rng = random.Random(1234)
    for _ in range(8):
        doc = _complexes.random_one_vertex_doc(rng, rng.randint(2, 3), rng.randint(2, 3))
        rep = validate_vht(load(doc))
        assert rep.ok, rep.errors


def test_random_product_complexes_validate():
    rng = random.Random(987)
    for _ in range(5):
        g1 = _complexes.random_multigraph(rng, rng.randint(1, 3), rng.randint(1, 3), 3)
        g2 = _complexes.random_multigraph(rng, rng.randint(1, 3), rng.randint(1, 3), 3)
        rep = validate_vht(load(_complexes.product_doc(g1, g2)))
        assert rep.ok, rep.errors
        assert not rep.warnings
