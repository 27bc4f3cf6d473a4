"""Finite VH-T square complexes: data model, parser, validator, reflections.

Conventions.  A directed square carries four directed edge references
(a, b, a_prime, b_prime): a runs along the bottom, b up the left side,
a_prime along the top and b_prime up the right side, so the corner
incidences are

    o(a) = o(b),  t(a) = o(b_prime),  t(b) = o(a_prime),  t(a_prime) = t(b_prime).

Each geometric edge of the input determines two directed edges, the forward
one (origin -> terminus, the chosen orientation class) and its reversal.
The Klein four-group of reflections acts on directed squares by

    t^v  = (a', ~b, a, ~b'),   t^h  = (~a, b', ~a', b),   t^vh = (~a', ~b', ~a, ~b)

where ~x toggles the reversed flag.  The squares listed in a document are
the orbit representatives; expansion appends the v-, h- and vh-images, so a
structurally sound complex with n squares always expands to 4n directed
squares, indexed orbit-major in the order (1, v, h, vh).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

SIGMA_TAGS = ("1", "v", "h", "vh")

# Klein four-group composition as xor on tag offsets (1, v, h, vh) = (0..3).
_TAG_INDEX = {tag: i for i, tag in enumerate(SIGMA_TAGS)}


class ComplexFormatError(ValueError):
    """Raised by load_complex on malformed or structurally unsound documents."""

    def __init__(self, problems: Iterable[str]):
        self.problems = tuple(problems)
        super().__init__("; ".join(self.problems))


class DegenerateOrbitError(ValueError):
    """Raised when a reflection orbit collapses below its four elements."""


@dataclass(frozen=True)
class GeometricEdge:
    id: str
    origin: str
    terminus: str


@dataclass(frozen=True)
class DirectedEdgeRef:
    """A directed edge: a geometric edge plus a direction flag."""

    edge: str
    reversed: bool

    def bar(self) -> "DirectedEdgeRef":
        return DirectedEdgeRef(self.edge, not self.reversed)

    def display(self) -> str:
        return f"~{self.edge}" if self.reversed else self.edge


@dataclass(frozen=True)
class DirectedSquare:
    a: DirectedEdgeRef
    b: DirectedEdgeRef
    a_prime: DirectedEdgeRef
    b_prime: DirectedEdgeRef
    orbit_id: int
    sigma_tag: str

    def labels(self) -> tuple[DirectedEdgeRef, DirectedEdgeRef, DirectedEdgeRef, DirectedEdgeRef]:
        return (self.a, self.b, self.a_prime, self.b_prime)


@dataclass(frozen=True)
class SquareComplex:
    vertices: tuple[str, ...]
    h_edges: tuple[GeometricEdge, ...]
    v_edges: tuple[GeometricEdge, ...]
    squares: tuple[DirectedSquare, ...]

    @cached_property
    def _edge_index(self) -> dict[str, tuple[GeometricEdge, bool]]:
        index: dict[str, tuple[GeometricEdge, bool]] = {}
        for e in self.h_edges:
            index[e.id] = (e, True)
        for e in self.v_edges:
            index[e.id] = (e, False)
        return index

    def edge(self, edge_id: str) -> GeometricEdge:
        return self._edge_index[edge_id][0]

    def is_horizontal(self, edge_id: str) -> bool:
        return self._edge_index[edge_id][1]

    def origin(self, ref: DirectedEdgeRef) -> str:
        e = self.edge(ref.edge)
        return e.terminus if ref.reversed else e.origin

    def terminus(self, ref: DirectedEdgeRef) -> str:
        e = self.edge(ref.edge)
        return e.origin if ref.reversed else e.terminus

    def directed_h(self) -> tuple[DirectedEdgeRef, ...]:
        return tuple(
            DirectedEdgeRef(e.id, rev) for e in self.h_edges for rev in (False, True)
        )

    def directed_v(self) -> tuple[DirectedEdgeRef, ...]:
        return tuple(
            DirectedEdgeRef(e.id, rev) for e in self.v_edges for rev in (False, True)
        )

    @cached_property
    def degrees(self) -> dict[str, tuple[int, int]]:
        """Per vertex: number of directed horizontal / vertical edges based there.

        A loop contributes two (one per direction), matching link size.
        """
        deg = {v: [0, 0] for v in self.vertices}
        for slot, edges in ((0, self.h_edges), (1, self.v_edges)):
            for e in edges:
                deg[e.origin][slot] += 1
                deg[e.terminus][slot] += 1
        return {v: (h, w) for v, (h, w) in deg.items()}

    def h_degree(self, vertex: str) -> int:
        return self.degrees[vertex][0]

    def v_degree(self, vertex: str) -> int:
        return self.degrees[vertex][1]


@dataclass(frozen=True)
class ValidationIssue:
    kind: str
    message: str


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[ValidationIssue, ...]
    warnings: tuple[ValidationIssue, ...]
    degrees: tuple[tuple[str, int, int], ...]
    connected: bool

    @property
    def ok(self) -> bool:
        return not self.errors


def sigma_act(t: DirectedSquare, g: str) -> DirectedSquare:
    """Apply a reflection (one of "1", "v", "h", "vh") to a directed square."""
    if g not in _TAG_INDEX:
        raise ValueError(f"unknown reflection {g!r}")
    if g == "1":
        return t
    a, b, ap, bp = t.a, t.b, t.a_prime, t.b_prime
    if g == "v":
        labels = (ap, b.bar(), a, bp.bar())
    elif g == "h":
        labels = (a.bar(), bp, ap.bar(), b)
    else:  # "vh"
        labels = (ap.bar(), bp.bar(), a.bar(), b.bar())
    tag = SIGMA_TAGS[_TAG_INDEX[t.sigma_tag] ^ _TAG_INDEX[g]]
    return DirectedSquare(*labels, orbit_id=t.orbit_id, sigma_tag=tag)


def _expand_orbit(t: DirectedSquare) -> tuple[DirectedSquare, ...]:
    return (t, sigma_act(t, "v"), sigma_act(t, "h"), sigma_act(t, "vh"))


def _orbit_degenerate(t: DirectedSquare) -> bool:
    # t equals its vh-image exactly when both opposite sides are the same
    # edge traversed backwards; the v- and h-degeneracies cannot even be
    # written down in this representation (they would need an edge equal to
    # its own reversal).
    return t.a_prime == t.a.bar() and t.b_prime == t.b.bar()


def expand_directed_squares(c: SquareComplex) -> tuple[DirectedSquare, ...]:
    """All 4n directed squares, orbit-major, each orbit ordered (1, v, h, vh)."""
    bad = [t.orbit_id for t in c.squares if _orbit_degenerate(t)]
    if bad:
        raise DegenerateOrbitError(
            f"squares {bad} coincide with their vh-images; orbits are not free"
        )
    out: list[DirectedSquare] = []
    for t in c.squares:
        out.extend(_expand_orbit(t))
    return tuple(out)


# --- parsing ---------------------------------------------------------------

_TOP_KEYS = ("vertices", "horizontal_edges", "vertical_edges", "squares")
_EDGE_KEYS = ("id", "origin", "terminus")
_SQUARE_KEYS = ("a", "b", "a_prime", "b_prime")
_REF_KEYS = ("edge", "reversed")


def _parse_edges(raw, key, vertex_set, problems) -> list[GeometricEdge]:
    edges = []
    if not isinstance(raw, list):
        problems.append(f"{key} must be an array")
        return edges
    for k, item in enumerate(raw):
        if not isinstance(item, dict):
            problems.append(f"{key}[{k}] must be an object")
            continue
        unknown = set(item) - set(_EDGE_KEYS)
        if unknown:
            problems.append(f"{key}[{k}]: unknown keys {sorted(unknown)}")
            continue
        missing = [x for x in _EDGE_KEYS if x not in item]
        if missing:
            problems.append(f"{key}[{k}]: missing keys {missing}")
            continue
        if not all(isinstance(item[x], str) for x in _EDGE_KEYS):
            problems.append(f"{key}[{k}]: id, origin and terminus must be strings")
            continue
        for end in ("origin", "terminus"):
            if item[end] not in vertex_set:
                problems.append(
                    f"{key}[{k}] ('{item['id']}'): unknown vertex '{item[end]}'"
                )
        edges.append(GeometricEdge(item["id"], item["origin"], item["terminus"]))
    return edges


def _parse_ref(raw, where, problems) -> DirectedEdgeRef | None:
    if not isinstance(raw, dict):
        problems.append(f"{where} must be an object")
        return None
    unknown = set(raw) - set(_REF_KEYS)
    if unknown:
        problems.append(f"{where}: unknown keys {sorted(unknown)}")
        return None
    if not isinstance(raw.get("edge"), str) or not isinstance(raw.get("reversed"), bool):
        problems.append(f"{where}: need edge (string) and reversed (boolean)")
        return None
    return DirectedEdgeRef(raw["edge"], raw["reversed"])


def load_complex(text: str) -> SquareComplex:
    """Parse a complex document; total and deterministic.

    Raises ComplexFormatError carrying every problem found: malformed JSON,
    unknown keys, missing or duplicate ids, unknown edge or vertex
    references, an edge used in the wrong role, or a corner incidence
    failure (all named by square or edge id).
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ComplexFormatError([f"not valid JSON: {exc}"]) from exc
    if not isinstance(doc, dict):
        raise ComplexFormatError(["document root must be an object"])

    problems: list[str] = []
    unknown = set(doc) - set(_TOP_KEYS) - {"metadata"}
    if unknown:
        problems.append(f"unknown top-level keys {sorted(unknown)}")
    missing = [k for k in _TOP_KEYS if k not in doc]
    if missing:
        problems.append(f"missing top-level keys {missing}")
        raise ComplexFormatError(problems)

    raw_vertices = doc["vertices"]
    vertices: list[str] = []
    if not isinstance(raw_vertices, list) or not all(isinstance(v, str) for v in raw_vertices):
        problems.append("vertices must be an array of strings")
    else:
        vertices = list(raw_vertices)
        seen = set()
        for v in vertices:
            if v in seen:
                problems.append(f"duplicate vertex id '{v}'")
            seen.add(v)

    vertex_set = set(vertices)
    h_edges = _parse_edges(doc["horizontal_edges"], "horizontal_edges", vertex_set, problems)
    v_edges = _parse_edges(doc["vertical_edges"], "vertical_edges", vertex_set, problems)

    edge_ids = set()
    for e in h_edges + v_edges:
        if e.id in edge_ids:
            problems.append(f"duplicate edge id '{e.id}'")
        edge_ids.add(e.id)

    h_ids = {e.id for e in h_edges}
    v_ids = {e.id for e in v_edges}

    squares: list[DirectedSquare] = []
    raw_squares = doc["squares"]
    if not isinstance(raw_squares, list):
        problems.append("squares must be an array")
        raw_squares = []
    for k, item in enumerate(raw_squares):
        if not isinstance(item, dict):
            problems.append(f"squares[{k}] must be an object")
            continue
        unknown = set(item) - set(_SQUARE_KEYS)
        if unknown:
            problems.append(f"squares[{k}]: unknown keys {sorted(unknown)}")
            continue
        missing = [x for x in _SQUARE_KEYS if x not in item]
        if missing:
            problems.append(f"squares[{k}]: missing keys {missing}")
            continue
        refs = {}
        ok = True
        for slot in _SQUARE_KEYS:
            ref = _parse_ref(item[slot], f"squares[{k}].{slot}", problems)
            if ref is None:
                ok = False
                continue
            wanted_h = slot in ("a", "a_prime")
            if ref.edge not in edge_ids:
                problems.append(f"squares[{k}].{slot}: unknown edge '{ref.edge}'")
                ok = False
            elif wanted_h and ref.edge not in h_ids:
                problems.append(
                    f"squares[{k}].{slot}: edge '{ref.edge}' is vertical but the slot is horizontal"
                )
                ok = False
            elif not wanted_h and ref.edge not in v_ids:
                problems.append(
                    f"squares[{k}].{slot}: edge '{ref.edge}' is horizontal but the slot is vertical"
                )
                ok = False
            refs[slot] = ref
        if ok:
            squares.append(
                DirectedSquare(
                    refs["a"], refs["b"], refs["a_prime"], refs["b_prime"],
                    orbit_id=k, sigma_tag="1",
                )
            )

    if problems:
        raise ComplexFormatError(problems)

    c = SquareComplex(tuple(vertices), tuple(h_edges), tuple(v_edges), tuple(squares))

    corner_checks = (
        ("o(a)", "o(b)", lambda t: (c.origin(t.a), c.origin(t.b))),
        ("t(a)", "o(b_prime)", lambda t: (c.terminus(t.a), c.origin(t.b_prime))),
        ("t(b)", "o(a_prime)", lambda t: (c.terminus(t.b), c.origin(t.a_prime))),
        ("t(a_prime)", "t(b_prime)", lambda t: (c.terminus(t.a_prime), c.terminus(t.b_prime))),
    )
    for t in c.squares:
        for left, right, get in corner_checks:
            x, y = get(t)
            if x != y:
                problems.append(
                    f"squares[{t.orbit_id}]: corner incidence {left} = {right} fails"
                    f" ('{x}' != '{y}')"
                )
    if problems:
        raise ComplexFormatError(problems)
    return c


def serialize_complex(c: SquareComplex, metadata: dict | None = None) -> str:
    """Canonical document text: fixed key order, input array order."""

    def ref(r: DirectedEdgeRef) -> dict:
        return {"edge": r.edge, "reversed": r.reversed}

    doc: dict = {
        "vertices": list(c.vertices),
        "horizontal_edges": [
            {"id": e.id, "origin": e.origin, "terminus": e.terminus} for e in c.h_edges
        ],
        "vertical_edges": [
            {"id": e.id, "origin": e.origin, "terminus": e.terminus} for e in c.v_edges
        ],
        "squares": [
            {"a": ref(t.a), "b": ref(t.b), "a_prime": ref(t.a_prime), "b_prime": ref(t.b_prime)}
            for t in c.squares
        ],
    }
    if metadata is not None:
        doc["metadata"] = metadata
    return json.dumps(doc, indent=2) + "\n"


# --- validation -------------------------------------------------------------


def _connected_components(c: SquareComplex) -> int:
    index = {v: i for i, v in enumerate(c.vertices)}
    parent = list(range(len(c.vertices)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in c.h_edges + c.v_edges:
        ra, rb = find(index[e.origin]), find(index[e.terminus])
        if ra != rb:
            parent[ra] = rb
    return len({find(i) for i in range(len(c.vertices))})


def validate_vht(c: SquareComplex) -> ValidationReport:
    """Check the VH-T conditions beyond structural soundness.

    Errors: a link failure (the corner map over all directed squares is not
    a bijection onto incident horizontal/vertical directed-edge pairs), a
    corner collision that forces some directed edge to equal its own
    reversal, a degenerate reflection orbit, or a disconnected complex.
    Degrees below three only warn: homology is still meaningful there, but
    the tiling-kernel rank identity is outside its hypotheses.
    """
    errors: list[ValidationIssue] = []
    warnings: list[ValidationIssue] = []

    degrees = tuple((v, *c.degrees[v]) for v in c.vertices)
    for v, hd, vd in degrees:
        if hd < 3:
            warnings.append(
                ValidationIssue("low_h_degree", f"horizontal degree {hd} < 3 at vertex {v}")
            )
        if vd < 3:
            warnings.append(
                ValidationIssue("low_v_degree", f"vertical degree {vd} < 3 at vertex {v}")
            )

    if not c.vertices:
        errors.append(ValidationIssue("disconnected", "complex has no vertices"))
        connected = False
    else:
        n_comp = _connected_components(c)
        connected = n_comp == 1
        if not connected:
            errors.append(
                ValidationIssue(
                    "disconnected", f"complex has {n_comp} connected components"
                )
            )

    for t in c.squares:
        if _orbit_degenerate(t):
            errors.append(
                ValidationIssue(
                    "orbit_degenerate",
                    f"square {t.orbit_id} equals its vh-image; its reflection orbit has size 2",
                )
            )

    # Link condition: over the expanded directed squares, t -> (a(t), b(t))
    # must cover each incident pair (horizontal, vertical) exactly once.
    expanded = [s for t in c.squares for s in _expand_orbit(t)]
    coverage: dict[tuple[DirectedEdgeRef, DirectedEdgeRef], list[DirectedSquare]] = {}
    for s in expanded:
        coverage.setdefault((s.a, s.b), []).append(s)

    incident = [
        (alpha, beta)
        for alpha in c.directed_h()
        for beta in c.directed_v()
        if c.origin(alpha) == c.origin(beta)
    ]
    incident_set = set(incident)

    for pair in incident:
        hits = coverage.get(pair, [])
        alpha, beta = pair
        if not hits:
            errors.append(
                ValidationIssue(
                    "link_uncovered",
                    f"link failure at vertex {c.origin(alpha)}: corner pair "
                    f"({alpha.display()}, {beta.display()}) not covered by any square",
                )
            )
        elif len(hits) > 1:
            names = ", ".join(f"{s.orbit_id}^{s.sigma_tag}" for s in hits)
            errors.append(
                ValidationIssue(
                    "link_multiple",
                    f"link failure: corner pair ({alpha.display()}, {beta.display()}) "
                    f"covered {len(hits)} times (squares {names})",
                )
            )
            # When two colliding squares agree except for direction flags on
            # the opposite sides, the collision forces those edges to equal
            # their own reversals.
            for x in range(len(hits)):
                for y in range(x + 1, len(hits)):
                    s1, s2 = hits[x], hits[y]
                    forced = []
                    for r1, r2 in ((s1.a_prime, s2.a_prime), (s1.b_prime, s2.b_prime)):
                        if r1.edge == r2.edge and r1.reversed != r2.reversed:
                            forced.append(r1.edge)
                    same_edges = (
                        s1.a_prime.edge == s2.a_prime.edge
                        and s1.b_prime.edge == s2.b_prime.edge
                    )
                    if forced and same_edges:
                        errors.append(
                            ValidationIssue(
                                "edge_inverted",
                                f"squares {s1.orbit_id}^{s1.sigma_tag} and "
                                f"{s2.orbit_id}^{s2.sigma_tag} share corner "
                                f"({alpha.display()}, {beta.display()}) and force "
                                + " and ".join(f"{e} = ~{e}" for e in forced),
                            )
                        )
    for pair, hits in coverage.items():
        if pair not in incident_set:
            # Unreachable for structurally sound complexes (corner
            # incidences guarantee o(a) = o(b)); kept as a safety net.
            alpha, beta = pair
            errors.append(
                ValidationIssue(
                    "link_multiple",
                    f"corner pair ({alpha.display()}, {beta.display()}) is not incident",
                )
            )

    return ValidationReport(
        errors=tuple(errors),
        warnings=tuple(warnings),
        degrees=degrees,
        connected=connected,
    )
