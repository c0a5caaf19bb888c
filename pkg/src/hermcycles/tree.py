"""Truncated simulator of the reduced locus and its divisor calculus.

The reduced locus is a bipartite tree: curve nodes carrying p^3 + 1
point nodes each, point nodes lying on p + 1 curves each.  A window
materializes this tree breadth-first to a fixed radius with path-string
node ids, so runs are deterministic and diffs stable.

Cycles are placed on the window relative to its root curve:

* an even cycle of valuation 2r is a ball of point-distance r around a
  center point;
* an odd cycle of valuation 2r + 1 is a ball of curve-distance r around
  a marked central subtree: the root curve carries p + 1 marked points,
  every curve through a marked point belongs to the subtree, and each
  such curve marks its entry point plus the p own points of lowest id.

Perpendicular odd cycles sharing the root curve receive pairwise
disjoint marked sets; even centers in mixed configurations sit at marked
points of the odd subtree.  The tree is homogeneous, so only the sizes
of these sets affect any count.

On top of the placement the module computes special-fiber divisors,
self-intersections of curves inside a difference divisor, pairwise
vertical/horizontal multiplicities, shell counts, and a pure
divisor-calculus evaluation of all-odd difference-divisor triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BudgetExceeded, HermcyclesError, WindowTooSmall


class NotInDivisor(HermcyclesError):
    """The curve does not belong to the divisor under inspection."""


class CaseNotCovered(HermcyclesError):
    """A multiplicity configuration the theory does not pin down."""


def window_node_count(p: int, radius: int) -> int:
    """Nodes a window of the given radius materializes.

    Curves at the boundary depth carry no own points, except in the
    radius-0 window whose root keeps its points as boundary points.
    """
    curves, points = 1, p**3 + 1
    layer = (p**3 + 1) * p
    for d in range(1, radius + 1):
        curves += layer
        if d < radius:
            points += layer * p**3
        layer *= p**3 * p
    return curves + points


class TreeWindow:
    """Breadth-first materialized window of the curve/point tree.

    Node ids are path strings: the root curve is "R", points of a curve c
    are "c.i", and the p new curves through a point q are "q:j".
    """

    def __init__(self, p: int, radius: int, budget: int = 10**7):
        if p < 3 or p % 2 == 0:
            raise ValueError("p must be an odd prime >= 3")
        if radius < 0:
            raise ValueError("radius must be nonnegative")
        est = window_node_count(p, radius)
        if est > budget:
            raise BudgetExceeded(f"window needs {est} nodes, budget is {budget}")
        self.p = p
        self.radius = radius
        self.root = "R"
        self.curve_depth: dict[str, int] = {self.root: 0}
        self.curve_entry: dict[str, str | None] = {self.root: None}
        self.curve_own_points: dict[str, tuple[str, ...]] = {}
        self.point_depth: dict[str, int] = {}
        self.point_curve: dict[str, str] = {}
        self.point_children: dict[str, tuple[str, ...]] = {}
        self._build()

    def _build(self):
        p = self.p
        frontier = [self.root]
        for depth in range(self.radius + 1):
            next_frontier = []
            grow_points = depth < self.radius or self.radius == 0
            for c in frontier:
                if not grow_points:
                    self.curve_own_points[c] = ()
                    continue
                n_pts = p**3 + 1 if c == self.root else p**3
                pts = tuple(f"{c}.{i}" for i in range(n_pts))
                self.curve_own_points[c] = pts
                for q in pts:
                    self.point_depth[q] = depth
                    self.point_curve[q] = c
                    if depth == self.radius:
                        self.point_children[q] = ()
                        continue
                    kids = tuple(f"{q}:{j}" for j in range(p))
                    self.point_children[q] = kids
                    for kid in kids:
                        self.curve_depth[kid] = depth + 1
                        self.curve_entry[kid] = q
                        next_frontier.append(kid)
            frontier = next_frontier

    # -- structure queries -------------------------------------------------

    def is_boundary_curve(self, c: str) -> bool:
        """Own points (hence children) not materialized."""
        return not self.curve_own_points[c]

    def has_children_materialized(self, c: str) -> bool:
        return bool(self.curve_own_points[c]) and self.curve_depth[c] < self.radius

    def curve_points(self, c: str) -> tuple[str, ...]:
        """All points on the curve (entry point plus own points)."""
        if self.is_boundary_curve(c):
            raise WindowTooSmall(f"points of boundary curve {c} are not materialized")
        entry = self.curve_entry[c]
        own = self.curve_own_points[c]
        return own if entry is None else (entry,) + own

    def known_points(self, c: str) -> tuple[str, ...]:
        """Materialized points of the curve (possibly only the entry)."""
        entry = self.curve_entry[c]
        own = self.curve_own_points[c]
        return own if entry is None else (entry,) + own

    def point_curves(self, q: str) -> tuple[str, ...]:
        """The materialized curves through the point."""
        return (self.point_curve[q],) + self.point_children[q]

    def parent_curve(self, c: str) -> str | None:
        q = self.curve_entry[c]
        return None if q is None else self.point_curve[q]

    def curve_chain(self, c: str) -> list[str]:
        """Ancestor curves from the root down to c (inclusive)."""
        chain = [c]
        while (par := self.parent_curve(chain[-1])) is not None:
            chain.append(par)
        return chain[::-1]

    def _bip_chain(self, node: str, is_point: bool) -> list[tuple[str, int]]:
        """Ancestor chain in the bipartite tree with bipartite depths."""
        chain = []
        if is_point:
            chain.append((node, 2 * self.point_depth[node] + 1))
            node = self.point_curve[node]
        d = self.curve_depth[node]
        while True:
            chain.append((node, 2 * d))
            entry = self.curve_entry[node]
            if entry is None:
                return chain
            chain.append((entry, 2 * d - 1))
            node = self.point_curve[entry]
            d -= 1

    def _bip_distance(self, n1: str, p1: bool, n2: str, p2: bool) -> int:
        c1 = self._bip_chain(n1, p1)
        c2 = self._bip_chain(n2, p2)
        depths = {node: bd for node, bd in c1}
        for node, bd in c2:
            if node in depths:
                return (c1[0][1] - bd) + (c2[0][1] - bd)
        raise AssertionError("no common ancestor in a tree")

    def curve_distance(self, c1: str, c2: str) -> int:
        """Distance in the curve graph (adjacent = sharing a point)."""
        return self._bip_distance(c1, False, c2, False) // 2

    def point_curve_distance(self, c: str, q: str) -> int:
        """Minimal length d >= 1 of a curve chain from a curve through q to c."""
        return (self._bip_distance(c, False, q, True) + 1) // 2

    def adjacent_curves(self, c: str) -> tuple[str, ...]:
        """All curves sharing a point with c; needs materialized points."""
        out = []
        for q in self.curve_points(c):
            for c2 in self.point_curves(q):
                if c2 != c:
                    out.append(c2)
        return tuple(out)

    def curves(self, max_depth: int | None = None):
        md = self.radius if max_depth is None else min(max_depth, self.radius)
        for c, d in self.curve_depth.items():
            if d <= md:
                yield c

    def audit(self) -> None:
        """Re-validate the advertised degrees on all interior nodes."""
        p = self.p
        for c in self.curves():
            if not self.is_boundary_curve(c) and len(self.known_points(c)) != p**3 + 1:
                raise AssertionError(f"curve {c} has wrong point degree")
        for q, kids in self.point_children.items():
            if kids:
                if len(self.point_curves(q)) != p + 1:
                    raise AssertionError(f"point {q} has wrong curve degree")
                for c2 in kids:
                    if self.curve_entry[c2] != q:
                        raise AssertionError("inconsistent parent structure")


def build_window(p: int, radius: int, budget: int = 10**7) -> TreeWindow:
    return TreeWindow(p, radius, budget)


# -- cycles ------------------------------------------------------------------


class OddCycle:
    """Special cycle of odd valuation 2r + 1, anchored at the window root.

    Membership in the marked central subtree and distances to it are
    decided lazily by walking ancestor chains, so the (unbounded) subtree
    never has to be materialized.
    """

    def __init__(self, window: TreeWindow, valuation: int, slot: int = 0):
        if valuation < 1 or valuation % 2 == 0:
            raise ValueError("odd cycle needs odd valuation >= 1")
        p = window.p
        if (slot + 1) * (p + 1) > p**3 + 1:
            raise ValueError(f"slot {slot} exceeds the disjoint marked-set capacity")
        self.window = window
        self.valuation = valuation
        self.slot = slot
        root_own = window.curve_own_points[window.root]
        self.root_marked = frozenset(root_own[slot * (p + 1) : (slot + 1) * (p + 1)])
        self._dist_cache: dict[str, int] = {}

    @property
    def parity(self) -> str:
        return "odd"

    @property
    def radius(self) -> int:
        return (self.valuation - 1) // 2

    def shifted(self, l: int) -> "OddCycle":
        """The cycle divided by p^l (same central subtree, lower valuation)."""
        if self.valuation - 2 * l < 1:
            raise ValueError("shift below valuation 1")
        return OddCycle(self.window, self.valuation - 2 * l, self.slot)

    def tree_distance(self, c: str) -> int:
        """Curve-graph distance to the marked central subtree."""
        cached = self._dist_cache.get(c)
        if cached is not None:
            return cached
        w = self.window
        chain = w.curve_chain(c)
        depth_in = 0
        for i in range(1, len(chain)):
            prev, cur = chain[i - 1], chain[i]
            entry = w.curve_entry[cur]
            if prev == w.root:
                inside = entry in self.root_marked
            else:
                inside = entry in w.curve_own_points[prev][: w.p]
            if not inside:
                break
            depth_in = i
        d = len(chain) - 1 - depth_in
        self._dist_cache[c] = d
        return d

    def in_tree(self, c: str) -> bool:
        return self.tree_distance(c) == 0

    def marked_points(self, c: str) -> frozenset[str]:
        """Marked points of a central-subtree curve."""
        w = self.window
        if c == w.root:
            return self.root_marked
        if not self.in_tree(c):
            raise ValueError(f"{c} is not in the central subtree")
        entry = w.curve_entry[c]
        return frozenset((entry,) + w.curve_own_points[c][: w.p])

    def b_value(self, c: str) -> int | None:
        d = self.tree_distance(c)
        return self.radius - d if d <= self.radius else None

    def center_points(self) -> tuple[str, ...]:
        """Marked points on the root curve, in id order."""
        return tuple(sorted(self.root_marked))


class EvenCycle:
    """Special cycle of even valuation 2r: a point-distance ball."""

    def __init__(self, window: TreeWindow, valuation: int, center: str):
        if valuation < 0 or valuation % 2 == 1:
            raise ValueError("even cycle needs even valuation >= 0")
        if center not in window.point_depth:
            raise ValueError(f"unknown center point {center}")
        self.window = window
        self.valuation = valuation
        self.center = center
        self._dist_cache: dict[str, int] = {}

    @property
    def parity(self) -> str:
        return "even"

    @property
    def radius(self) -> int:
        return self.valuation // 2

    def shifted(self, l: int) -> "EvenCycle":
        if self.valuation - 2 * l < 0:
            raise ValueError("shift below valuation 0")
        return EvenCycle(self.window, self.valuation - 2 * l, self.center)

    def center_distance(self, c: str) -> int:
        cached = self._dist_cache.get(c)
        if cached is None:
            cached = self.window.point_curve_distance(c, self.center)
            self._dist_cache[c] = cached
        return cached

    def b_value(self, c: str) -> int | None:
        d = self.center_distance(c)
        return self.radius - d if d <= self.radius else None


Cycle = OddCycle | EvenCycle


def place_odd_cycles(window: TreeWindow, valuations) -> list[OddCycle]:
    """Perpendicular odd cycles sharing the root curve, disjoint marked sets."""
    return [OddCycle(window, v, slot=i) for i, v in enumerate(valuations)]


# -- divisor ledgers ---------------------------------------------------------


@dataclass(frozen=True)
class Marker:
    """Horizontal component anchored at a point, meeting every curve through
    the anchor with the same fixed multiplicity."""

    anchor: str
    incidence: int


@dataclass
class DivisorLedger:
    """Weighted curves plus horizontal markers."""

    vertical: dict[str, int] = field(default_factory=dict)
    horizontal: list[Marker] = field(default_factory=list)


def _geometric(p: int, b: int) -> int:
    """1 + p^2 + ... + p^(2b)."""
    return sum(p ** (2 * i) for i in range(b + 1))


def reduced_locus(window: TreeWindow, cycle: Cycle) -> dict[str, int]:
    """Curves of the cycle's reduced locus with their b-values.

    Even cycles of valuation 0 have a single point and no curves, and the
    even locus is complete within the window.  Odd central subtrees are
    unbounded, so the odd locus is the in-window portion.
    """
    required = (cycle.valuation + 1) // 2
    if window.radius < required:
        raise WindowTooSmall(
            f"radius {window.radius} < required {required} for valuation {cycle.valuation}"
        )
    out = {}
    for c in window.curves():
        b = cycle.b_value(c)
        if b is not None:
            out[c] = b
    return out


def special_fiber_divisor(window: TreeWindow, cycle: Cycle) -> DivisorLedger:
    """The cycle's special fiber as a divisor: vertical multiplicity
    1 + p^2 + ... + p^(2b) per locus curve, plus (for even valuation) one
    horizontal marker of weight p^valuation through the center, meeting
    each adjacent curve with multiplicity 1."""
    p = window.p
    locus = reduced_locus(window, cycle)
    ledger = DivisorLedger(vertical={c: _geometric(p, b) for c, b in locus.items()})
    if cycle.parity == "even":
        ledger.horizontal.append(Marker(cycle.center, p**cycle.valuation))
    return ledger


def difference_multiplicity(cycle: Cycle, c: str) -> int:
    """Multiplicity p^(2b) of a curve in the difference divisor's fiber."""
    b = cycle.b_value(c)
    return 0 if b is None else cycle.window.p ** (2 * b)


def horizontal_incidence(p: int, even_valuation: int) -> int:
    """Weight of the even cycle's horizontal piece in its difference fiber:
    p^(a-2)(p^2 - 1) for a >= 2, and 1 for a = 0."""
    if even_valuation == 0:
        return 1
    return p ** (even_valuation - 2) * (p * p - 1)


def self_intersection(window: TreeWindow, cycle: OddCycle, c: str) -> int:
    """Self-intersection of a locus curve inside the difference divisor of
    an odd cycle of valuation u:

        u = 1                         -> -p^2 - p
        u > 1, deeper layer  (b >= 1) -> -2p^2 - p + 1
        u > 1, boundary layer (b = 0) -> -p^2 - p + 1
    """
    p = window.p
    b = cycle.b_value(c)
    if b is None:
        raise NotInDivisor(f"{c} is not in the divisor of valuation {cycle.valuation}")
    if cycle.valuation == 1:
        return -p * p - p
    if b >= 1:
        return -2 * p * p - p + 1
    return -p * p - p + 1


def _children_provably_outside(cycle: Cycle, c: str) -> bool:
    """Whether all children of c are provably outside the cycle's locus,
    without enumerating them."""
    if cycle.parity == "even":
        # A child's center distance exceeds the parent's by one.
        return cycle.center_distance(c) >= cycle.radius
    d = cycle.tree_distance(c)
    return d >= 1 and d + 1 > cycle.radius


def _neighbor_multiplicities(window: TreeWindow, cycle: Cycle, c: str):
    """(neighbor, difference-fiber multiplicity) over all neighbors of c
    with nonzero multiplicity; WindowTooSmall if children with possibly
    nonzero multiplicity cannot be enumerated."""
    out = []
    entry = window.curve_entry[c]
    if entry is not None:
        for c2 in window.point_curves(entry):
            if c2 != c:
                m = difference_multiplicity(cycle, c2)
                if m:
                    out.append((c2, m))
    if not window.has_children_materialized(c):
        if not _children_provably_outside(cycle, c):
            raise WindowTooSmall(f"cannot enumerate children of boundary curve {c}")
        return out
    for q in window.curve_own_points[c]:
        for c2 in window.point_children[q]:
            m = difference_multiplicity(cycle, c2)
            if m:
                out.append((c2, m))
    return out


def degree_zero_check(window: TreeWindow, cycle: OddCycle) -> bool:
    """Verify mult(c) * selfint(c) + sum of adjacent multiplicities == 0 for
    every auditable curve of the difference divisor's fiber.

    A curve is auditable when all neighbor multiplicities are determinable:
    interior, or boundary with provably absent children.  Raises
    WindowTooSmall unless every multiplicity layer of the divisor gets
    audited at least once.
    """
    p = window.p
    audited_layers: set[int] = set()
    for c in window.curves():
        b = cycle.b_value(c)
        if b is None:
            continue
        try:
            neighbors = _neighbor_multiplicities(window, cycle, c)
        except WindowTooSmall:
            continue
        total = p ** (2 * b) * self_intersection(window, cycle, c)
        total += sum(m for _, m in neighbors)
        if total != 0:
            return False
        audited_layers.add(b)
    if audited_layers != set(range(cycle.radius + 1)):
        raise WindowTooSmall(
            f"layers {sorted(audited_layers)} audited, need 0..{cycle.radius}"
        )
    return True


# -- pairwise multiplicities ---------------------------------------------


def vertical_multiplicity(c1: Cycle, c2: Cycle, curve: str) -> int:
    """Multiplicity of a common curve in the intersection of the two
    difference divisors (as a divisor in either one).

    Distinct fiber multiplicities give p^min; equal fiber multiplicities
    p^r with distinct valuations not both even give ((min_val+1-r)/2) p^r
    (the smaller valuation is then automatically odd).  Configurations
    the theory does not pin down raise CaseNotCovered.
    """
    b1, b2 = c1.b_value(curve), c2.b_value(curve)
    if b1 is None or b2 is None:
        raise NotInDivisor(f"{curve} is not in both difference divisors")
    p = c1.window.p
    r1, r2 = 2 * b1, 2 * b2
    if r1 != r2:
        return p ** min(r1, r2)
    a1, a2 = c1.valuation, c2.valuation
    if a1 == a2:
        raise CaseNotCovered(
            f"equal valuations {a1} with equal fiber multiplicities at {curve}"
        )
    if a1 % 2 == 0 and a2 % 2 == 0:
        raise CaseNotCovered("both valuations even with equal fiber multiplicities")
    low = min(a1, a2)
    if low % 2 == 0:
        raise CaseNotCovered(
            "equal fiber multiplicities with the smaller valuation even"
        )
    return (low + 1 - r1) // 2 * p**r1


def horizontal_ledger(c1: Cycle, c2: Cycle) -> Marker | None:
    """Horizontal component of the intersection of two difference divisors.

    Present exactly when one valuation is even and smaller than the other
    (odd) one: a marker at the even center whose pairing multiplicity
    against each curve through it is p^(a_even - 2)(p^2 - 1), or 1 when
    the even valuation is 0.  Odd/odd pairs of distinct valuations and
    odd-below-even pairs have no horizontal part.
    """
    if c1.parity == "odd" and c2.parity == "odd":
        if c1.valuation == c2.valuation:
            raise CaseNotCovered("equal odd valuations")
        return None
    if c1.parity == "even" and c2.parity == "even":
        raise CaseNotCovered("two even cycles")
    even, odd = (c1, c2) if c1.parity == "even" else (c2, c1)
    if even.valuation < odd.valuation:
        p = even.window.p
        return Marker(even.center, horizontal_incidence(p, even.valuation))
    return None


def _pair_reach(a: Cycle, b: Cycle) -> int:
    """Window-depth bound for curves lying in both cycles.

    A common curve hangs under at most one of the two central structures,
    so its depth is bounded by the other cycle's radius; the maximum of
    the radii bounds both cases.
    """
    return max(a.radius, b.radius)


def pair_divisor(window: TreeWindow, pivot: OddCycle, other: Cycle) -> DivisorLedger:
    """The intersection of the two difference divisors as a divisor inside
    the pivot's (regular) difference divisor."""
    reach = _pair_reach(pivot, other)
    if reach > window.radius:
        raise WindowTooSmall(f"pair support reach {reach} exceeds radius {window.radius}")
    vertical = {}
    for c in window.curves(max_depth=reach):
        if pivot.b_value(c) is not None and other.b_value(c) is not None:
            vertical[c] = vertical_multiplicity(pivot, other, c)
    ledger = DivisorLedger(vertical=vertical)
    marker = horizontal_ledger(pivot, other)
    if marker is not None:
        ledger.horizontal.append(marker)
    return ledger


def z_pair_divisor(
    window: TreeWindow, pivot: OddCycle, other: Cycle, from_level: int = 1
) -> DivisorLedger:
    """Intersection of the pivot's difference divisor with the full cycle
    other / p^from_level: the sum of the pairwise difference intersections
    over all deeper levels."""
    floor = 0 if other.parity == "even" else 1
    total = DivisorLedger()
    level = from_level
    while other.valuation - 2 * level >= floor:
        piece = pair_divisor(window, pivot, other.shifted(level))
        for c, m in piece.vertical.items():
            total.vertical[c] = total.vertical.get(c, 0) + m
        total.horizontal.extend(piece.horizontal)
        level += 1
    return total


def pair_intersection(
    window: TreeWindow, pivot: OddCycle, a: DivisorLedger, b: DivisorLedger
) -> int:
    """Intersection number of two divisors supported on the pivot's
    difference divisor.

    Curve against curve pairs to the self-intersection (equal), 1 (one
    common point) or 0 (disjoint); a horizontal marker meets exactly the
    curves through its anchor with its fixed incidence; marker against
    marker vanishes.  Pairings with markers on both sides are refused.
    """
    if a.horizontal and b.horizontal:
        raise CaseNotCovered("horizontal components on both sides of a pairing")
    # Index the b-side support by its materialized points for adjacency.
    b_at_point: dict[str, list[tuple[str, int]]] = {}
    for c2, m2 in b.vertical.items():
        for q in window.known_points(c2):
            b_at_point.setdefault(q, []).append((c2, m2))
    total = 0
    for c, ma in a.vertical.items():
        val = 0
        mb = b.vertical.get(c, 0)
        if mb:
            val += mb * self_intersection(window, pivot, c)
        for q in window.known_points(c):
            for c2, m2 in b_at_point.get(q, ()):
                if c2 != c:
                    val += m2
        for marker in b.horizontal:
            if window.point_curve_distance(c, marker.anchor) == 1:
                val += marker.incidence
        total += ma * val
    for marker in a.horizontal:
        for c2, m2 in b.vertical.items():
            if window.point_curve_distance(c2, marker.anchor) == 1:
                total += marker.incidence * m2
    return total


# -- all-odd difference-divisor triples -----------------------------------

_WINDOW_CACHE: dict[tuple[int, int, int], TreeWindow] = {}


def _cached_window(p: int, radius: int, budget: int) -> TreeWindow:
    key = (p, radius, budget)
    if key not in _WINDOW_CACHE:
        _WINDOW_CACHE[key] = build_window(p, radius, budget)
    return _WINDOW_CACHE[key]


def dtriple_via_divisors(
    p: int, triple, window: TreeWindow | None = None, budget: int = 10**7
) -> int:
    """Difference-divisor triple intersection for all-odd valuations,
    recomputed purely from the tree divisor calculus.

    Triples with a unique lowest or highest valuation pair the two
    difference intersections inside the divisor of the unique one; fully
    equal triples go through the even-valuation perturbation
    decomposition and recurse on strictly smaller all-odd triples.
    """
    a1, a2, a3 = sorted(int(a) for a in triple)
    if a1 < 1 or any(a % 2 == 0 for a in (a1, a2, a3)):
        raise CaseNotCovered("all valuations must be odd and >= 1")
    radius = (a3 + 1) // 2
    if window is None:
        window = _cached_window(p, radius, budget)
    elif window.radius < radius:
        raise WindowTooSmall(f"radius {window.radius} < required {radius}")

    if a1 == a2 == a3:
        return _dtriple_equal(p, a1, window, budget)

    cycles = place_odd_cycles(window, (a1, a2, a3))
    if a2 == a3:  # a1 < a2 = a3: pivot the unique low valuation
        pivot, others = cycles[0], (cycles[1], cycles[2])
    else:  # a1 <= a2 < a3: pivot the unique top valuation
        pivot, others = cycles[2], (cycles[0], cycles[1])
    lhs = pair_divisor(window, pivot, others[0])
    rhs = pair_divisor(window, pivot, others[1])
    return pair_intersection(window, pivot, lhs, rhs)


def _mixed_equal(p: int, a: int, window: TreeWindow) -> int:
    """The mixed combination (D1, Z2, Z3) - (D1, Z2/p, Z3/p) for three
    perpendicular odd cycles of equal valuation a.

    Replacing the second and third cycles by combinations of valuation
    a + 1 (even, centered at two distinct marked points of the first
    cycle's subtree on the root curve) expresses the combination as three
    divisor pairings inside the first difference divisor:
    (D1, D(y2), Z(y3/p)) + (D1, Z(y2/p), D(y3)) + (D1, D(y2), D(y3)).
    """
    c1 = OddCycle(window, a, slot=0)
    centers = c1.center_points()
    y2 = EvenCycle(window, a + 1, centers[0])
    y3 = EvenCycle(window, a + 1, centers[1])
    d1_y2 = pair_divisor(window, c1, y2)
    d1_y3 = pair_divisor(window, c1, y3)
    d1_z_y3 = z_pair_divisor(window, c1, y3, from_level=1)
    d1_z_y2 = z_pair_divisor(window, c1, y2, from_level=1)
    return (
        pair_intersection(window, c1, d1_y2, d1_z_y3)
        + pair_intersection(window, c1, d1_y3, d1_z_y2)
        + pair_intersection(window, c1, d1_y2, d1_y3)
    )


def _dtriple_equal(p: int, a: int, window: TreeWindow, budget: int) -> int:
    """All-equal triple (a, a, a): the mixed combination minus the deeper
    difference triples (which recurse into the unequal case)."""
    deeper = 0
    for l in range(1, (a - 1) // 2 + 1):
        deeper += 2 * dtriple_via_divisors(p, sorted((a - 2 * l, a, a)), window, budget)
    return _mixed_equal(p, a, window) - deeper


def mixed_equal_combination(p: int, a: int, budget: int = 10**7) -> int:
    """The mixed combination (D1, Z2, Z3) - (D1, Z2/p, Z3/p) for three
    perpendicular odd cycles of equal valuation a, via divisor calculus."""
    if a < 1 or a % 2 == 0:
        raise CaseNotCovered("valuation must be odd and >= 1")
    window = _cached_window(p, (a + 1) // 2, budget)
    return _mixed_equal(p, a, window)


# -- shell counting and export ---------------------------------------------


def shell_count(window: TreeWindow, predicate, reach: int) -> int:
    """Number of curves within the given depth satisfying the predicate.

    The caller states the predicate's reach; shells extending beyond the
    window are refused rather than silently truncated.
    """
    if reach > window.radius:
        raise WindowTooSmall(f"shell reach {reach} exceeds window radius {window.radius}")
    return sum(1 for c in window.curves(max_depth=reach) if predicate(c))


def to_dot(window: TreeWindow, max_depth: int = 1) -> str:
    """GraphViz rendering of a small window (documentation aid)."""
    lines = ["graph reduced_locus {"]
    for c in window.curves(max_depth=max_depth):
        lines.append(f'  "{c}" [shape=box];')
    for q, kids in sorted(window.point_children.items()):
        parent = window.point_curve[q]
        if window.curve_depth[parent] >= max_depth:
            continue
        for child in kids:
            lines.append(f'  "{parent}" -- "{child}" [label="{q}"];')
    lines.append("}")
    return "\n".join(lines)
