from treelat.homology import forward_edge_index
from treelat.tiling_system import stacked_matrix
from treelat.zlinalg import smith_normal_form


def test_d1_composed_with_d2_vanishes(corpus):
    for name, analysis in corpus.items():
        assert analysis.maps.d1.mul(analysis.maps.d2).is_zero(), name


def test_torus_classical_homology(torus):
    hom = torus.homology
    assert (hom.h0.free_rank, hom.h0.torsion) == (1, ())
    assert (hom.h1.free_rank, hom.h1.torsion) == (2, ())
    assert hom.h2_rank == 1
    assert hom.euler_characteristic == 0


def test_torus_d2_column_is_zero(torus):
    assert torus.maps.d2.is_zero()


def test_klein_bottle_homology(klein):
    hom = klein.homology
    assert (hom.h0.free_rank, hom.h0.torsion) == (1, ())
    assert (hom.h1.free_rank, hom.h1.torsion) == (1, (2,))
    assert hom.h2_rank == 0
    assert hom.euler_characteristic == 0


def test_f2xf2_homology(f2xf2):
    hom = f2xf2.homology
    assert (hom.h1.free_rank, hom.h1.torsion) == (4, ())
    assert hom.h2_rank == 4
    assert hom.euler_characteristic == 1


def test_mozes513_homology(mozes513):
    hom = mozes513.homology
    assert hom.euler_characteristic == 12  # (p-1)(l-1)/4 with one vertex
    assert hom.h2_rank == 11
    assert hom.h1.free_rank == 0  # finite abelianization
    assert (hom.h0.free_rank, hom.h0.torsion) == (1, ())


def test_mozes517_homology(mozes517):
    hom = mozes517.homology
    assert hom.euler_characteristic == 16
    assert hom.h2_rank == 15
    assert hom.h1.free_rank == 0


def test_one_vertex_d1_is_zero(mozes513):
    assert mozes513.maps.d1.is_zero()
    assert (mozes513.maps.d1.rows, mozes513.maps.d1.cols) == (1, 10)


def test_euler_characteristic_consistency(corpus):
    for analysis in corpus.values():
        c = analysis.complex
        hom = analysis.homology
        cells = len(c.vertices) - (len(c.h_edges) + len(c.v_edges)) + len(c.squares)
        assert hom.euler_characteristic == cells
        assert cells == hom.h0.free_rank - hom.h1.free_rank + hom.h2_rank


def test_diagram_commutes_exactly(corpus):
    for analysis in corpus.values():
        stacked = stacked_matrix(analysis.tiling)
        lhs = stacked.mul(analysis.maps.phi2)
        rhs = analysis.maps.phi1.mul(analysis.maps.d2)
        assert lhs.entries == rhs.entries


def test_phi_maps_injective(corpus):
    for analysis in corpus.values():
        maps = analysis.maps
        assert smith_normal_form(maps.phi2).rank == maps.phi2.cols
        assert smith_normal_form(maps.phi1).rank == maps.phi1.cols


def test_psi_phi1_diagonal_positive(corpus):
    for analysis in corpus.values():
        prod = analysis.maps.psi.mul(analysis.maps.phi1)
        assert prod.rows == prod.cols
        for i in range(prod.rows):
            for j in range(prod.cols):
                if i == j:
                    assert prod.entry(i, j) > 0
                else:
                    assert prod.entry(i, j) == 0


def test_psi_phi1_entries_are_twice_transverse_degrees(mozes513):
    # one-vertex (p+1, l+1)-regular complex: 2(l+1) on horizontal rows,
    # 2(p+1) on vertical rows
    c = mozes513.complex
    prod = mozes513.maps.psi.mul(mozes513.maps.phi1)
    eidx = forward_edge_index(c)
    for e in c.h_edges:
        assert prod.entry(eidx[e.id], eidx[e.id]) == 2 * (13 + 1)
    for e in c.v_edges:
        assert prod.entry(eidx[e.id], eidx[e.id]) == 2 * (5 + 1)


def test_verdict_on_mozes(mozes513, mozes517):
    for analysis in (mozes513, mozes517):
        verdict = analysis.theorem
        assert verdict.within_hypotheses
        assert verdict.holds
        assert verdict.rank_ker_d2 == verdict.rank_ker_stacked


def test_verdict_on_f2xf2(f2xf2):
    verdict = f2xf2.theorem
    assert verdict.within_hypotheses
    assert verdict.holds
    assert verdict.rank_ker_d2 == verdict.rank_ker_stacked == 4


def test_verdict_on_torus_outside_hypotheses(torus):
    verdict = torus.theorem
    assert not verdict.within_hypotheses
    assert verdict.diagram_commutes
    assert (verdict.rank_ker_d2, verdict.rank_ker_stacked) == (1, 4)
    assert not verdict.ranks_equal
    assert verdict.phi2_image_in_kernel
    assert not verdict.kernel_symmetries_hold
    assert not verdict.mu_vanishes
    assert not verdict.holds
