r"""
Lopsp-operations: enumeration from quadrangulations, validation,
c2/c3 classification and lsp recognition.

A lopsp-operation is a plane triangulation with a proper 3-colouring and
marks v0, v1, v2 (v0 and v2 never coloured 1; a colour-1 v1 has degree 2;
every other colour-1 vertex has degree 4). It is stored compactly as a
*predecoration*: a quadrangulation together with the marks, a {0,2}
colouring and, for odd inflation factors, the flag that v1 is the special
colour-1 pendant. Expanding a predecoration inserts a degree-4 colour-1
vertex into every face (resp. the single v1-x edge into the pendant face).

Classification happens on the predecoration:

* c2 holds iff every parallel-edge pair has a mark strictly inside each of
  its two sides.
* c3 holds iff additionally no small submap (at most four edges) has a
  size-2 boundary walk without v0/v2 strictly inside (lone colour-1 v1
  excepted) or a vertex-nonempty size-4 walk without any mark inside.
* lsp holds iff some orientation-reversing automorphism of the
  quadrangulation fixes all three marks (it then preserves the colouring
  automatically, since an automorphism with a fixed vertex cannot exchange
  the bipartition classes).
"""

from .maps import (PlaneMap, MapError, PreconditionViolated, canonical_form,
                   vertex_action)
from .oracles import submap_constraints, holds_for_marks
from .quadgen import GenConfig, generate


class InvalidPredecoration(MapError):
    pass


def predecoration_params(k):
    """Vertex count of the quadrangulations feeding inflation factor ``k``
    and whether v1 is the special colour-1 pendant: ((k+4)/2, False) for
    even k and ((k+5)/2, True) for odd k."""
    if k < 1:
        raise ValueError("inflation factor must be >= 1")
    if k % 2 == 0:
        return (k + 4) // 2, False
    return (k + 5) // 2, True


class Predecoration:
    """A quadrangulation with marks v0, v1, v2 and a {0,2}-colouring; the
    compact encoding of a lopsp-operation."""

    __slots__ = ("quad", "v0", "v1", "v2", "v1_colour1", "colour")

    def __init__(self, quad, v0, v1, v2, v1_colour1, colour):
        self.quad = quad
        self.v0 = v0
        self.v1 = v1
        self.v2 = v2
        self.v1_colour1 = v1_colour1
        self.colour = colour
        self._check()

    def _check(self):
        if len({self.v0, self.v1, self.v2}) != 3:
            raise InvalidPredecoration("marks must be pairwise distinct")
        q = self.quad
        if not q.validate("quadrangulation"):
            raise InvalidPredecoration("carrier is not a quadrangulation")
        c = self.colour
        if c[self.v0] not in (0, 2) or c[self.v2] not in (0, 2):
            raise InvalidPredecoration("v0 and v2 must have colour 0 or 2")
        if self.v1_colour1:
            if q.degrees()[self.v1] != 1:
                raise InvalidPredecoration("colour-1 v1 must have degree 1")
            if c[self.v1] != 1:
                raise InvalidPredecoration("v1 flag disagrees with colour")
            d = _dart_at(q, self.v1)
            if c[q.vertex_of[d ^ 1]] != 0:
                raise InvalidPredecoration("v1's neighbour must have colour 0")
        for d in range(0, len(q.sigma), 2):
            u, w = q.vertex_of[d], q.vertex_of[d ^ 1]
            if (u == self.v1 or w == self.v1) and self.v1_colour1:
                continue
            if c[u] == c[w]:
                raise InvalidPredecoration("colouring not proper")

    @property
    def k(self):
        return 2 * len(self.quad.faces()) - (1 if self.v1_colour1 else 0)

    def marks(self):
        return (self.v0, self.v1, self.v2)


def _dart_at(q, v):
    for d in range(len(q.sigma)):
        if q.vertex_of[d] == v:
            return d
    raise ValueError("vertex %d has no dart" % v)


def make_predecoration(q, v0, v1, v2, colour_bit, classes=None):
    """Predecoration from a marked quadrangulation: for odd factors ``v1``
    must be a degree-1 vertex and the colouring is forced (its neighbour's
    class gets colour 0); even factors pass ``colour_bit`` to pick which
    bipartition class is coloured 0."""
    a, b = classes if classes is not None else q.bipartition()
    deg = q.degrees()
    v1c1 = deg[v1] == 1 and colour_bit is None
    if colour_bit is None:
        u = q.vertex_of[_dart_at(q, v1) ^ 1]
        zero_class = a if u in a else b
    else:
        zero_class = a if colour_bit == 0 else b
    colour = [0 if v in zero_class else 2 for v in range(q.vertex_count)]
    if v1c1:
        colour[v1] = 1
    return Predecoration(q, v0, v1, v2, v1c1, colour)


# ----------------------------------------------------------------------
# enumeration
# ----------------------------------------------------------------------

def mark_group(q, cf=None):
    """List of (vertex_action, has_op_rep, has_or_rep, swaps_classes)."""
    if cf is None:
        cf = canonical_form(q)
    a, _b = q.bipartition()
    probe = min(a)
    seen = {}
    for perm, op in cf.automorphisms:
        act = tuple(vertex_action(q, perm))
        rec = seen.setdefault(act, [False, False, act[probe] not in a])
        rec[0 if op else 1] = True
    return [(act, rec[0], rec[1], rec[2]) for act, rec in seen.items()]


def enumerate_ops(q, k, dedup="full", visitor=None):
    """Visit one predecoration per isomorphism class of lopsp-operation with
    carrier ``q`` and inflation factor ``k``; returns the count.

    ``dedup`` chooses the group: "full" identifies mirror images,
    "orientation_preserving" counts each chiral operation twice. Odd ``k``
    restricts v1 to degree-1 vertices with the colouring forced; even ``k``
    emits both colourings of every mark triple (never isomorphic to each
    other, since a class swap fixes no vertex).
    """
    n, v1c1 = predecoration_params(k)
    if q.vertex_count != n:
        raise ValueError("expected %d vertices for k=%d" % (n, k))
    group = mark_group(q)
    if dedup == "orientation_preserving":
        group = [g for g in group if g[1]]
    elif dedup != "full":
        raise ValueError(dedup)
    deg = q.degrees()
    classes = q.bipartition()
    count = 0
    verts = range(n)
    v1_choices = [v for v in verts if deg[v] == 1] if v1c1 else verts
    colour_bits = (None,) if v1c1 else (0, 1)
    for v1 in v1_choices:
        for v0 in verts:
            if v0 == v1:
                continue
            for v2 in verts:
                if v2 == v1 or v2 == v0:
                    continue
                for bit in colour_bits:
                    key = (v0, v1, v2, bit)
                    smallest = True
                    for act, _op, _orr, swap in group:
                        img = (act[v0], act[v1], act[v2],
                               None if bit is None else bit ^ (1 if swap else 0))
                        if img < key:
                            smallest = False
                            break
                    if not smallest:
                        continue
                    count += 1
                    if visitor is not None:
                        visitor(make_predecoration(q, v0, v1, v2, bit, classes))
    return count


# ----------------------------------------------------------------------
# classification
# ----------------------------------------------------------------------

def parallel_pair_sides(q):
    """For every unordered pair of parallel edges, the two strict interior
    vertex sets of its sides, as bitmasks."""
    from .oracles import _region_data
    vo = q.vertex_of
    byends = {}
    for e in range(q.edge_count):
        u, w = vo[2 * e], vo[2 * e + 1]
        byends.setdefault((min(u, w), max(u, w)), []).append(e)
    out = []
    for ends, es in byends.items():
        if len(es) < 2:
            continue
        for i in range(len(es)):
            for j in range(i + 1, len(es)):
                sides = []
                for size, wverts, rverts in _region_data(q, (es[i], es[j])):
                    mask = 0
                    for v in rverts - wverts:
                        mask |= 1 << v
                    sides.append(mask)
                out.append(tuple(sides))
    return out


_pair_cache = {}
_c3_cache = {}


def _pairs_of(q):
    key = id(q)
    if key not in _pair_cache:
        _pair_cache[key] = (q, parallel_pair_sides(q))
    return _pair_cache[key][1]


def _c3_items_of(q):
    key = id(q)
    if key not in _c3_cache:
        _c3_cache[key] = (q, submap_constraints(q, max_edges=4))
    return _c3_cache[key][1]


def is_c2(p):
    """True iff every parallel pair of the carrier has one of the marks
    strictly inside each side (marks on the 2-cycle itself do not count)."""
    mmask = (1 << p.v0) | (1 << p.v1) | (1 << p.v2)
    for sides in _pairs_of(p.quad):
        for mask in sides:
            if not mask & mmask:
                return False
    return True


def is_c3(p):
    """True iff no small-submap constraint is violated; requires c2."""
    if not is_c2(p):
        raise PreconditionViolated("is_c3 requires a c2 predecoration")
    for item in _c3_items_of(p.quad):
        if not holds_for_marks(item, p.v0, p.v1, p.v2, p.v1_colour1):
            return False
    return True


def is_c3_or_false(p):
    """c2 and c3 together, no precondition."""
    return is_c2(p) and is_c3(p)


def is_lsp(p, cf=None):
    """True iff some orientation-reversing automorphism of the carrier fixes
    v0, v1 and v2 pointwise."""
    for act, _has_op, has_or, _swap in mark_group(p.quad, cf):
        if (has_or and act[p.v0] == p.v0 and act[p.v1] == p.v1
                and act[p.v2] == p.v2):
            return True
    return False


# ----------------------------------------------------------------------
# expansion to the full operation
# ----------------------------------------------------------------------

class LopspOperation:
    """A 3-coloured plane triangulation with marks; produced by ``expand``."""

    __slots__ = ("map", "colour", "v0", "v1", "v2")

    def __init__(self, m, colour, v0, v1, v2, check=True):
        self.map = m
        self.colour = colour
        self.v0 = v0
        self.v1 = v1
        self.v2 = v2
        if check:
            validate_operation(self)

    @property
    def k(self):
        return len(self.map.faces()) // 2

    def marks(self):
        return (self.v0, self.v1, self.v2)


def validate_operation(o):
    """Machine check of the full operation definition; raises on failure."""
    m, c = o.map, o.colour
    if m.genus() != 0:
        raise InvalidPredecoration("operation must be plane")
    if not m.validate("triangulation"):
        raise InvalidPredecoration("operation must be a triangulation")
    if not m.validate("proper_colouring", c):
        raise InvalidPredecoration("colouring not proper")
    if c[o.v0] == 1 or c[o.v2] == 1:
        raise InvalidPredecoration("v0 and v2 must not have colour 1")
    deg = m.degrees()
    for v in range(m.vertex_count):
        if c[v] != 1:
            continue
        if v == o.v1:
            if deg[v] != 2:
                raise InvalidPredecoration("colour-1 v1 must have degree 2")
        elif deg[v] != 4:
            raise InvalidPredecoration("colour-1 vertices must have degree 4")
    if not _two_connected(m):
        raise InvalidPredecoration("operation must be 2-connected")


def _two_connected(m):
    if m.vertex_count < 3:
        return m.vertex_count == 2 and m.edge_count >= 2
    adj = [set() for _ in range(m.vertex_count)]
    for d in range(0, len(m.sigma), 2):
        u, w = m.vertex_of[d], m.vertex_of[d ^ 1]
        if u == w:
            return False
        adj[u].add(w)
        adj[w].add(u)
    for cut in range(m.vertex_count):
        start = 0 if cut else 1
        seen = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u != cut and u not in seen:
                    seen.add(u)
                    stack.append(u)
        if len(seen) != m.vertex_count - 1:
            return False
    return True


def expand(p):
    """The lopsp-operation of a predecoration: every carrier face receives a
    degree-4 colour-1 vertex joined to its corners in rotation order, except
    that a colour-1 v1's pendant face receives the single edge from v1 to
    the corner opposite it."""
    q = p.quad
    fs = q.faces()
    vo = q.vertex_of
    V = q.vertex_count
    E = q.edge_count
    special_face = -1
    opposite_dart = -1
    if p.v1_colour1:
        dp = _dart_at(q, p.v1)
        special_face = fs.face_of[dp]
        opposite_dart = q.sigma[q.sigma[dp] ^ 1] ^ 1   # two face steps from dp
        if vo[opposite_dart] == p.v1:
            raise InvalidPredecoration("pendant face has no opposite corner")
    # corner edge of dart d gets edge id E + offset(d); special face: one edge
    corner_edge = {}
    next_edge = E
    fverts = {}
    for f, cyc in enumerate(fs.faces):
        if f == special_face:
            continue
        fverts[f] = V + len(fverts)
        for d in cyc:
            corner_edge[d] = next_edge
            next_edge += 1
    if p.v1_colour1:
        dp = _dart_at(q, p.v1)
        corner_edge[dp] = next_edge        # v1 end of the v1-x edge
        corner_edge[opposite_dart] = next_edge
        next_edge += 1
    rotations = [None] * (V + len(fverts))
    for v, rot in enumerate(q.rotations()):
        r = []
        for d in rot:
            r.append(d)
            if d in corner_edge:
                # the v1-x edge owns darts (2e at v1, 2e+1 at x); ordinary
                # corner edges put 2e at the carrier corner
                e = corner_edge[d]
                if p.v1_colour1 and d == opposite_dart:
                    r.append(2 * e + 1)
                else:
                    r.append(2 * e)
        rotations[v] = r
    for f, cyc in enumerate(fs.faces):
        if f == special_face:
            continue
        rotations[fverts[f]] = [2 * corner_edge[d] + 1 for d in reversed(cyc)]
    colour = list(p.colour) + [1] * len(fverts)
    m = PlaneMap.from_rotation(V + len(fverts), rotations)
    return LopspOperation(m, colour, p.v0, p.v1, p.v2)


def predecoration_of(o):
    """Extract the predecoration: the submap on colour-0/2 vertices with the
    colour-1 edges, plus v1 and its colour-2 edge when v1 has colour 1."""
    m, c = o.map, o.colour
    vo = m.vertex_of
    keep_vertex = [c[v] != 1 for v in range(m.vertex_count)]
    v1c1 = c[o.v1] == 1
    if v1c1:
        keep_vertex[o.v1] = True

    def keep_edge(e):
        u, w = vo[2 * e], vo[2 * e + 1]
        if c[u] != 1 and c[w] != 1:
            return True
        if v1c1 and (u == o.v1 or w == o.v1):
            other = w if u == o.v1 else u
            return c[other] == 0
        return False

    keep = [e for e in range(m.edge_count) if keep_edge(e)]
    emap = {e: i for i, e in enumerate(keep)}
    vmap = {}
    rotations = []
    for v, rot in enumerate(m.rotations()):
        if not keep_vertex[v]:
            continue
        vmap[v] = len(rotations)
        rotations.append([2 * emap[d >> 1] + (d & 1) for d in rot
                          if (d >> 1) in emap])
    q = PlaneMap.from_rotation(len(rotations), rotations)
    colour = [0] * q.vertex_count
    for v, nv in vmap.items():
        colour[nv] = c[v]
    return Predecoration(q, vmap[o.v0], vmap[o.v1], vmap[o.v2], v1c1, colour)


# ----------------------------------------------------------------------
# counting
# ----------------------------------------------------------------------

class CountReport:
    """Table row for one inflation factor: total and lsp counts, their
    c2/c3 restrictions, and the derived chiral / orientation-preserving
    counts (n_tot = n_lsp + n_chir, n_op = 2 n_tot - n_lsp)."""

    __slots__ = ("k", "n_tot", "n_lsp", "c2_tot", "c2_lsp", "c3_tot",
                 "c3_lsp", "quads_generated", "quads_candidates",
                 "quads_predecorated")

    def __init__(self, k):
        self.k = k
        self.n_tot = 0
        self.n_lsp = 0
        self.c2_tot = 0
        self.c2_lsp = 0
        self.c3_tot = 0
        self.c3_lsp = 0
        self.quads_generated = 0
        self.quads_candidates = 0
        self.quads_predecorated = 0

    @property
    def n_chir(self):
        return self.n_tot - self.n_lsp

    @property
    def n_op(self):
        return 2 * self.n_tot - self.n_lsp

    def __str__(self):
        return ("k=%d: all %d/%d c2 %d/%d c3 %d/%d (tot/lsp)" %
                (self.k, self.n_tot, self.n_lsp, self.c2_tot, self.c2_lsp,
                 self.c3_tot, self.c3_lsp))


def count_report(k, mode="all"):
    """Classify every operation of inflation factor ``k``.

    ``mode`` is "all", "c2" or "c3"; restricted modes skip carriers that
    cannot support a c2 operation (degree-1 count over 3, or some parallel
    pair side without candidate marks) and only fill the restricted columns.
    """
    n, v1c1 = predecoration_params(k)
    rep = CountReport(k)
    restricted = mode in ("c2", "c3")
    max_deg1 = 3 if restricted else None

    def on_quad(q):
        rep.quads_generated += 1
        if restricted and not _c2_feasible(q):
            return
        rep.quads_candidates += 1
        cf = canonical_form(q)
        got = [False]

        def visit(p):
            c2 = is_c2(p)
            c3 = c2 and is_c3(p)
            if restricted and not c2:
                return
            lsp = is_lsp(p, cf)
            if not restricted:
                rep.n_tot += 1
                rep.n_lsp += 1 if lsp else 0
            if c2:
                rep.c2_tot += 1
                rep.c2_lsp += 1 if lsp else 0
            if c3:
                rep.c3_tot += 1
                rep.c3_lsp += 1 if lsp else 0
                got[0] = True

        enumerate_ops(q, k, "full", visit)
        if got[0]:
            rep.quads_predecorated += 1

    generate(GenConfig(n, max_degree1=max_deg1), on_quad)
    return rep


def _c2_feasible(q):
    """Can any 3 marks hit every parallel-pair side interior? Exact hitting
    set test; sides are few and nested."""
    sides = []
    for pair in _pairs_of(q):
        sides.extend(pair)
    if not sides:
        return True
    if any(m == 0 for m in sides):
        return False
    need = sorted(set(sides))
    if len(need) <= 3:
        return True
    # greedy + exact check over single-bit choices is enough at desk scale
    import itertools
    verts = range(q.vertex_count)
    for trio in itertools.combinations(verts, 3):
        mask = (1 << trio[0]) | (1 << trio[1]) | (1 << trio[2])
        if all(s & mask for s in need):
            return True
    return False
