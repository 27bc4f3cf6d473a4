"""Cellular chain complex of a VH-T complex and the tiling-kernel comparison.

Coordinates.  Forward edges (the orientation class) are rows in the order
horizontal edges then vertical edges, each in input order; a reversed
reference contributes with sign -1 to the row of its forward edge (the
signed projection written `eps` below).  Geometric squares (the input
orbit representatives) index the columns of the boundary map d2; expanded
directed squares index everything on the tiling side.

Maps:

    d2   (|E+| x |R+|):  column t  =  eps(a + b' - a' - b)
    d1   (|X0| x |E+|):  column e  =  t(e) - o(e)
    phi2 (|R|  x |R+|):  column t  =  t - t^v - t^h + t^vh
    phi1 (2|R| x |E+|):  forward vertical b   -> (sum_{b(s)=b} s - sum_{b(s)=~b} s, 0)
                         forward horizontal a -> (0, sum_{a(s)=~a} s - sum_{a(s)=a} s)
    psi  (|E+| x 2|R|):  (s, t) -> eps(b(s)) - eps(a(t))

d1 . d2 = 0 follows from the corner incidences, and the square

    stacked . phi2 = phi1 . d2

commutes exactly, which is what ties ker d2 (the second homology lattice)
to the kernel of the stacked transition operator.
"""

from __future__ import annotations

from dataclasses import dataclass

from treelat.complex_model import DirectedSquare, SquareComplex
from treelat.tiling_system import (
    TilingSystem,
    h_image_index,
    stacked_matrix,
    v_image_index,
    vh_image_index,
)
from treelat.zlinalg import (
    AbelianInvariants,
    IntMatrix,
    cokernel_invariants,
    kernel_basis,
    lattice_membership,
    smith_normal_form,
    solve_exact,
)


@dataclass(frozen=True)
class ChainMaps:
    d2: IntMatrix
    d1: IntMatrix
    phi2: IntMatrix
    phi1: IntMatrix
    psi: IntMatrix


@dataclass(frozen=True)
class HomologyReport:
    h0: AbelianInvariants
    h1: AbelianInvariants
    h2_rank: int
    euler_characteristic: int


@dataclass(frozen=True)
class TheoremVerdict:
    """Instance-level check that phi2 maps ker d2 isomorphically onto
    the stacked-operator kernel lattice.

    within_hypotheses is false when some vertex degree is below three; the
    remaining fields are still computed and reported, but the rank identity
    is only guaranteed inside the hypotheses.
    """

    within_hypotheses: bool
    diagram_commutes: bool
    rank_ker_d2: int
    rank_ker_stacked: int
    phi2_image_in_kernel: bool
    kernel_in_phi2_image: bool
    kernel_symmetries_hold: bool
    mu_vanishes: bool

    @property
    def ranks_equal(self) -> bool:
        return self.rank_ker_d2 == self.rank_ker_stacked

    @property
    def holds(self) -> bool:
        return (
            self.diagram_commutes
            and self.ranks_equal
            and self.phi2_image_in_kernel
            and self.kernel_in_phi2_image
            and self.kernel_symmetries_hold
            and self.mu_vanishes
        )


def forward_edge_index(c: SquareComplex) -> dict[str, int]:
    """Row index of each geometric edge: horizontals first, then verticals."""
    index: dict[str, int] = {}
    for e in c.h_edges:
        index[e.id] = len(index)
    for e in c.v_edges:
        index[e.id] = len(index)
    return index


def chain_maps(c: SquareComplex, r: tuple[DirectedSquare, ...]) -> ChainMaps:
    eidx = forward_edge_index(c)
    n_edges = len(eidx)
    n_cells = len(c.squares)
    n_tiles = len(r)
    vidx = {v: i for i, v in enumerate(c.vertices)}

    def eps(ref) -> tuple[int, int]:
        return eidx[ref.edge], (-1 if ref.reversed else 1)

    d2 = [[0] * n_cells for _ in range(n_edges)]
    for k, t in enumerate(c.squares):
        for ref, sign in ((t.a, 1), (t.b_prime, 1), (t.a_prime, -1), (t.b, -1)):
            row, s = eps(ref)
            d2[row][k] += sign * s

    d1 = [[0] * n_edges for _ in range(len(c.vertices))]
    for e in c.h_edges + c.v_edges:
        j = eidx[e.id]
        d1[vidx[e.terminus]][j] += 1
        d1[vidx[e.origin]][j] -= 1

    phi2 = [[0] * n_cells for _ in range(n_tiles)]
    for k in range(n_cells):
        base = 4 * k
        phi2[base][k] = 1
        phi2[base + 1][k] = -1
        phi2[base + 2][k] = -1
        phi2[base + 3][k] = 1

    phi1 = [[0] * n_edges for _ in range(2 * n_tiles)]
    for e in c.v_edges:
        j = eidx[e.id]
        for i, s in enumerate(r):
            if s.b.edge == e.id:
                phi1[i][j] += -1 if s.b.reversed else 1
    for e in c.h_edges:
        j = eidx[e.id]
        for i, s in enumerate(r):
            if s.a.edge == e.id:
                phi1[n_tiles + i][j] += 1 if s.a.reversed else -1

    psi = [[0] * (2 * n_tiles) for _ in range(n_edges)]
    for i, s in enumerate(r):
        row, sign = eps(s.b)
        psi[row][i] += sign
        row, sign = eps(s.a)
        psi[row][n_tiles + i] -= sign

    return ChainMaps(
        d2=IntMatrix.from_rows(d2, cols=n_cells),
        d1=IntMatrix.from_rows(d1, cols=n_edges),
        phi2=IntMatrix.from_rows(phi2, cols=n_cells),
        phi1=IntMatrix.from_rows(phi1, cols=n_edges),
        psi=IntMatrix.from_rows(psi, cols=2 * n_tiles),
    )


def homology_report(
    c: SquareComplex, r: tuple[DirectedSquare, ...], maps: ChainMaps
) -> HomologyReport:
    """Integral homology in degrees 0, 1, 2.

    H2 is the kernel of d2, hence free: only its rank is reported.  H1 is
    ker d1 / im d2, computed by expressing the columns of d2 in a saturated
    basis of ker d1 and taking the cokernel there.  H0 is the cokernel of
    d1 (free of rank one exactly when the complex is connected).
    """
    h2_rank = maps.d2.cols - smith_normal_form(maps.d2).rank
    h0 = cokernel_invariants(maps.d1)

    kernel_d1 = kernel_basis(maps.d1)
    k = IntMatrix.from_columns(kernel_d1, rows=maps.d1.cols)
    y = solve_exact(k, maps.d2)
    if y is None:  # d1.d2 = 0 and the kernel basis is saturated, so never
        raise RuntimeError("boundary image escaped the cycle lattice")
    h1 = cokernel_invariants(y)

    euler = len(c.vertices) - (len(c.h_edges) + len(c.v_edges)) + len(c.squares)
    return HomologyReport(h0=h0, h1=h1, h2_rank=h2_rank, euler_characteristic=euler)


def verify_main_theorem(
    c: SquareComplex,
    r: tuple[DirectedSquare, ...],
    ts: TilingSystem,
    maps: ChainMaps,
) -> TheoremVerdict:
    """Check, on this instance, every step that ties H2 to the tiling kernel.

    (1) the square stacked.phi2 = phi1.d2 commutes exactly; (2) the kernel
    ranks of d2 and of the stacked operator agree; (3) phi2 carries each
    H2 basis vector into the stacked-kernel lattice; (4) each stacked-kernel
    basis vector is alternating under the reflections (negated by v and by
    h, fixed by vh) and is phi2 of the integer vector of its orbit-
    representative coordinates; (5) for each stacked-kernel basis vector the
    per-directed-edge sums mu(b) = sum over b'(t) = b (and the horizontal
    analogue) all vanish.
    """
    stacked = stacked_matrix(ts)
    diagram_commutes = stacked.mul(maps.phi2).entries == maps.phi1.mul(maps.d2).entries

    h2_basis = kernel_basis(maps.d2)
    stacked_kernel = kernel_basis(stacked)
    rank_ker_d2 = len(h2_basis)
    rank_ker_stacked = len(stacked_kernel)

    phi2_image_in_kernel = all(
        lattice_membership(
            maps.phi2.mul(IntMatrix.from_columns([vec])).column(0), stacked_kernel
        )
        for vec in h2_basis
    )

    n_tiles = len(r)
    symmetries = True
    in_image = True
    for lam in stacked_kernel:
        for i in range(n_tiles):
            if (
                lam[i] != -lam[h_image_index(i)]
                or lam[i] != -lam[v_image_index(i)]
                or lam[i] != lam[vh_image_index(i)]
            ):
                symmetries = False
        w = [lam[4 * k] for k in range(len(c.squares))]
        image = maps.phi2.mul(IntMatrix.from_columns([w])).column(0)
        if tuple(image) != tuple(lam):
            in_image = False

    mu_ok = True
    for lam in stacked_kernel:
        by_bp: dict = {}
        by_ap: dict = {}
        for i, s in enumerate(r):
            by_bp[s.b_prime] = by_bp.get(s.b_prime, 0) + lam[i]
            by_ap[s.a_prime] = by_ap.get(s.a_prime, 0) + lam[i]
        if any(total != 0 for total in by_bp.values()) or any(
            total != 0 for total in by_ap.values()
        ):
            mu_ok = False

    within = all(hd >= 3 and vd >= 3 for hd, vd in c.degrees.values())
    return TheoremVerdict(
        within_hypotheses=within,
        diagram_commutes=diagram_commutes,
        rank_ker_d2=rank_ker_d2,
        rank_ker_stacked=rank_ker_stacked,
        phi2_image_in_kernel=phi2_image_in_kernel,
        kernel_in_phi2_image=in_image,
        kernel_symmetries_hold=symmetries,
        mu_vanishes=mu_ok,
    )
