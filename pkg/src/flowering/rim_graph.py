"""Regular indexed multigraphs (RIMs) and flowering cuts.

A RIM assigns every vertex exactly n incident edge slots indexed 1..n, stored
here 0-based as a dense |V| x n table ``adj`` with the involution property
``adj[adj[v][l]][l] == v``.  A slot with ``adj[v][l] == v`` is a petal (loop).
Slots (v, l) and (adj[v][l], l) form one undirected edge class; words and
Merkle leaves are indexed by classes in a canonical order, so that order is
fixed once here: classes sorted by (minimum vertex id, index l).

Cutting a graph to a vertex subset keeps ids dense by remapping; the mapping
is kept alongside because the proximity protocol must translate query
vertices across every cut level.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction

from .errors import FloweringError


class UnknownVertexError(FloweringError):
    pass


class EmptyCutError(FloweringError):
    pass


class InvalidCutError(FloweringError):
    """A claimed flowering cut failed validation; see .reason."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


NOT_PARTITION = "NotPartition"
UNEQUAL_HALVES = "UnequalHalves"
NOT_ISOMORPHISM = "NotIsomorphism"


class EdgeClassIndex:
    """Quotient of V x [n] by the shared-edge relation, in canonical order.

    class_of is a flat lookup: class_of[v * n + l] is the class id of slot
    (v, l).  reps[cid] is the (min vertex, l) representative; sizes[cid] is 1
    for petals and 2 otherwise.
    """

    __slots__ = ("n", "num_classes", "class_of", "reps", "sizes", "petals")

    def __init__(self, rim: RIM):
        n = rim.n
        self.n = n
        adj = rim.adj
        class_of = [-1] * (rim.num_vertices * n)
        reps: list[tuple[int, int]] = []
        sizes: list[int] = []
        petals: list[int] = []
        cid = 0
        for v in range(rim.num_vertices):
            base = v * n
            for l in range(n):
                if class_of[base + l] >= 0:
                    continue
                w = adj[v][l]
                class_of[base + l] = cid
                if w == v:
                    sizes.append(1)
                    petals.append(cid)
                else:
                    class_of[w * n + l] = cid
                    sizes.append(2)
                reps.append((v, l))
                cid += 1
        self.num_classes = cid
        self.class_of = class_of
        self.reps = reps
        self.sizes = sizes
        self.petals = petals

    @property
    def num_petals(self) -> int:
        return len(self.petals)

    def id_of(self, v: int, l: int) -> int:
        return self.class_of[v * self.n + l]


class RIM:
    """n-regular indexed multigraph on dense vertex ids 0..|V|-1."""

    __slots__ = ("n", "num_vertices", "adj", "_classes")

    def __init__(self, n: int, adjacency: list[list[int]], check: bool = True):
        self.n = n
        self.num_vertices = len(adjacency)
        self.adj = [list(row) for row in adjacency]
        self._classes: EdgeClassIndex | None = None
        if check:
            bad = self.violations()
            if bad:
                raise FloweringError(f"not a valid RIM, violations at {bad[:5]}")

    def violations(self) -> list[tuple[int, int]]:
        """All slots (v, l) where the involution E(E(v,l),l) = v fails."""
        out = []
        V = self.num_vertices
        for v in range(V):
            row = self.adj[v]
            if len(row) != self.n:
                out.extend((v, l) for l in range(self.n))
                continue
            for l in range(self.n):
                w = row[l]
                if not 0 <= w < V or self.adj[w][l] != v:
                    out.append((v, l))
        return out

    @property
    def classes(self) -> EdgeClassIndex:
        if self._classes is None:
            self._classes = EdgeClassIndex(self)
        return self._classes

    def neighbor(self, v: int, l: int) -> int:
        return self.adj[v][l]

    def petal_counts(self) -> list[int]:
        """Number of petals at each vertex."""
        return [sum(1 for l in range(self.n) if row[l] == v) for v, row in enumerate(self.adj)]

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RIM)
            and other.n == self.n
            and other.adj == self.adj
        )

    def __hash__(self) -> int:
        return hash((self.n, tuple(tuple(r) for r in self.adj)))

    def __repr__(self) -> str:
        return f"RIM(n={self.n}, vertices={self.num_vertices}, classes={self.classes.num_classes})"

    # serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "num_vertices": self.num_vertices, "adjacency": self.adj}

    @classmethod
    def from_json(cls, data: dict) -> RIM:
        rim = cls(data["n"], data["adjacency"])
        if rim.num_vertices != data["num_vertices"]:
            raise FloweringError("adjacency table does not match num_vertices")
        return rim

    def canonical_bytes(self) -> bytes:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":")).encode()

    def hash_hex(self) -> str:
        return hashlib.sha256(self.canonical_bytes()).hexdigest()


def cut_graph(rim: RIM, vertices) -> tuple[RIM, list[int]]:
    """Restrict the graph to a vertex subset; edges leaving it become petals.

    Returns the cut graph (vertex ids remapped densely, preserving order) and
    the child-to-parent id list.
    """
    kept = sorted(set(vertices))
    if not kept:
        raise EmptyCutError("cut to the empty vertex set")
    if kept[0] < 0 or kept[-1] >= rim.num_vertices:
        raise UnknownVertexError(f"cut set contains ids outside 0..{rim.num_vertices - 1}")
    to_child = {v: i for i, v in enumerate(kept)}
    adj = []
    for v in kept:
        row = []
        for l in range(rim.n):
            w = rim.adj[v][l]
            row.append(to_child[w] if w in to_child else to_child[v])
        adj.append(row)
    return RIM(rim.n, adj, check=False), kept


def is_isomorphism(g1: RIM, g2: RIM, phi: dict[int, int]) -> bool:
    """True iff phi is a bijection V(g1) -> V(g2) commuting with adjacency."""
    if g1.n != g2.n or g1.num_vertices != g2.num_vertices:
        return False
    if len(phi) != g1.num_vertices:
        return False
    image = set(phi.values())
    if len(image) != g2.num_vertices or not all(0 <= u < g2.num_vertices for u in image):
        return False
    for v in range(g1.num_vertices):
        if v not in phi:
            return False
        pv = phi[v]
        for l in range(g1.n):
            if phi.get(g1.adj[v][l]) != g2.adj[pv][l]:
                return False
    return True


def flowering_cut_validate(rim: RIM, v_prime, phi: dict[int, int]) -> str | None:
    """None if (V', phi) is a flowering cut of rim, else the failure reason."""
    v_set = set(v_prime)
    all_v = set(range(rim.num_vertices))
    if not v_set or not v_set < all_v:
        return NOT_PARTITION
    if 2 * len(v_set) != rim.num_vertices:
        return UNEQUAL_HALVES
    comp = all_v - v_set
    if set(phi.keys()) != v_set or set(phi.values()) != comp:
        return NOT_ISOMORPHISM
    child1, kept1 = cut_graph(rim, v_set)
    child2, kept2 = cut_graph(rim, comp)
    to1 = {v: i for i, v in enumerate(kept1)}
    to2 = {v: i for i, v in enumerate(kept2)}
    translated = {to1[v]: to2[phi[v]] for v in v_set}
    if not is_isomorphism(child1, child2, translated):
        return NOT_ISOMORPHISM
    return None


class FloweringCut:
    """A validated flowering cut (V', phi) of a parent graph, with the cut
    graph and all id translations cached for the protocol walk."""

    __slots__ = (
        "parent", "v_prime", "phi", "phi_inv", "child",
        "from_child", "to_child", "_fold_plan",
    )

    def __init__(self, parent: RIM, v_prime, phi: dict[int, int], check: bool = True):
        if check:
            reason = flowering_cut_validate(parent, v_prime, phi)
            if reason is not None:
                raise InvalidCutError(reason)
        self.parent = parent
        self.v_prime = tuple(sorted(set(v_prime)))
        self.phi = dict(phi)
        self.phi_inv = {w: v for v, w in self.phi.items()}
        self.child, kept = cut_graph(parent, self.v_prime)
        self.from_child = kept
        self.to_child = {v: i for i, v in enumerate(kept)}
        self._fold_plan: list[tuple[int, int]] | None = None

    def project(self, v: int) -> int:
        """pi_phi: parent vertex -> its representative in V' (parent ids)."""
        if not 0 <= v < self.parent.num_vertices:
            raise UnknownVertexError(f"vertex {v} not in the parent graph")
        return v if v in self.to_child else self.phi_inv[v]

    def project_child(self, v: int) -> int:
        """pi_phi followed by the dense remap: parent vertex -> child id."""
        return self.to_child[self.project(v)]

    @property
    def fold_plan(self) -> list[tuple[int, int]]:
        """Per child edge class, the pair of parent class ids feeding it:
        (class of (v, l), class of (phi(v), l)) for a representative (v, l)."""
        if self._fold_plan is None:
            pc = self.parent.classes
            n = self.parent.n
            plan = []
            for vc, l in self.child.classes.reps:
                vp = self.from_child[vc]
                plan.append((pc.class_of[vp * n + l], pc.class_of[self.phi[vp] * n + l]))
            self._fold_plan = plan
        return self._fold_plan

    def to_json(self) -> dict:
        return {
            "v_prime": list(self.v_prime),
            "phi": sorted([v, w] for v, w in self.phi.items()),
        }

    @classmethod
    def from_json(cls, parent: RIM, data: dict, check: bool = True) -> FloweringCut:
        return cls(parent, data["v_prime"], {v: w for v, w in data["phi"]}, check=check)


def mu(rim: RIM) -> Fraction:
    """The distance-comparison ratio |classes| / (m |V|), where m is the
    maximum over vertices of sum_l 1/|class(v, l)|.

    With q petals at a vertex that sum is (n + q) / 2, so mu depends only on
    the largest per-vertex petal count; it is 1 when petals are spread evenly.
    """
    worst = max(rim.petal_counts())
    return Fraction(2 * rim.classes.num_classes, (rim.n + worst) * rim.num_vertices)
