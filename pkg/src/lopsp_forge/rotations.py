r"""
Local rotations on quadrangulations and the closure audit.

Two vertex-count-preserving moves are enough to connect all plane
quadrangulations of a given size:

* ``A`` slides an edge whose two faces differ onto one of the two adjacent
  diagonals of the hexagon formed by those faces.
* ``C`` swings a pendant edge across its enclosing 2-gon, re-attaching the
  degree-1 vertex to the other 2-gon endpoint.

Applying every move to every member of a complete isomorph-free list and
checking the results stay inside the list is an independent completeness
test of the generator: a missing class would show up as a move leaving the
list (closure) and the move graph on a complete list is connected.
"""

from .maps import PlaneMap, NotApplicable, canonical_code


class RotationMove:
    __slots__ = ("kind", "anchor_dart", "direction")

    def __init__(self, kind, anchor_dart, direction=None):
        if kind not in ("A", "C"):
            raise ValueError(kind)
        self.kind = kind
        self.anchor_dart = anchor_dart
        self.direction = direction

    def __repr__(self):
        if self.kind == "A":
            return "RotationMove(A, %d, %s)" % (self.anchor_dart, self.direction)
        return "RotationMove(C, %d)" % self.anchor_dart


def _rebuild_without_edge(q, edge):
    keep = [e for e in range(q.edge_count) if e != edge]
    emap = {e: i for i, e in enumerate(keep)}
    rots = []
    for rot in q.rotations():
        rots.append([2 * emap[d >> 1] + (d & 1) for d in rot if (d >> 1) != edge])
    return rots, emap


def rotate_a(q, anchor_dart, direction="forward"):
    """Slide the anchor's edge to an adjacent hexagon diagonal.

    The two faces of the edge must differ; ``direction`` picks which of the
    two diagonals replaces it. Vertex and edge counts are preserved and the
    result is again a quadrangulation.
    """
    d = anchor_dart
    sigma = q.sigma
    vo = q.vertex_of
    fs = q.faces()
    if fs.face_of[d] == fs.face_of[d ^ 1]:
        raise NotApplicable("both sides of the edge are the same face")
    # face(d) is the 4-cycle (x, y, t2, t1) and face(d^1) is (y, x, s2, s1)
    # where d runs x -> y; the adjacent diagonals are t1-s1 and t2-s2
    x1 = sigma[d] ^ 1           # corner t1 of face(d)
    x2 = sigma[x1] ^ 1          # corner t2
    y1 = sigma[d ^ 1] ^ 1       # corner s1 of face(d^1)
    y2 = sigma[y1] ^ 1          # corner s2
    if direction == "forward":
        ca, cb = x1, y1
    elif direction == "backward":
        ca, cb = x2, y2
    else:
        raise ValueError(direction)
    rots, emap = _rebuild_without_edge(q, d >> 1)
    E2 = len(emap)
    na, nb = 2 * E2, 2 * E2 + 1

    def insert_after(rot_list, dart, new):
        # dart in old labels; rotation lists are already relabeled
        old = 2 * emap[dart >> 1] + (dart & 1)
        i = rot_list.index(old)
        rot_list.insert(i + 1, new)

    insert_after(rots[vo[ca]], ca, na)
    insert_after(rots[vo[cb]], cb, nb)
    return PlaneMap.from_rotation(q.vertex_count, rots)


def rotate_c(q, pendant_dart):
    """Swing a pendant edge across its 2-gon: the degree-1 vertex detaches
    from one endpoint of the enclosing parallel pair and re-attaches to the
    other, inside the same face."""
    d = pendant_dart
    sigma = q.sigma
    vo = q.vertex_of
    if q.degrees()[vo[d]] != 1:
        raise NotApplicable("anchor tail is not a degree-1 vertex")
    # pendant face is (p, w, x, w): orbit [d, d^1, b, c] with b = (x->w)
    b = sigma[d ^ 1] ^ 1
    c = sigma[b] ^ 1
    if (b >> 1) == (c >> 1):
        raise NotApplicable("pendant face carries no parallel pair")
    x = vo[b]
    w = vo[d ^ 1]
    assert vo[c] == w
    rots, emap = _rebuild_without_edge(q, d >> 1)
    E2 = len(emap)
    np_, nx = 2 * E2, 2 * E2 + 1
    rots[vo[d]] = [np_]
    old_b = 2 * emap[b >> 1] + (b & 1)
    i = rots[x].index(old_b)
    rots[x].insert(i + 1, nx)
    return PlaneMap.from_rotation(q.vertex_count, rots)


def rotate_b(q, anchor_dart):
    """The composite move A then C then A, each at the first applicable
    site; defined only through this composite."""
    m1 = rotate_a(q, anchor_dart, "forward")
    m2 = None
    for mv in moves(m1):
        if mv.kind == "C":
            m2 = rotate_c(m1, mv.anchor_dart)
            break
    if m2 is None:
        raise NotApplicable("no C move applies after the first slide")
    for mv in moves(m2):
        if mv.kind == "A":
            return rotate_a(m2, mv.anchor_dart, mv.direction)
    raise NotApplicable("no final slide applies")


def moves(q):
    """Every applicable A move (both directions) and C move of ``q``."""
    out = []
    fs = q.faces()
    deg = q.degrees()
    vo = q.vertex_of
    for d in range(0, len(q.sigma), 2):
        if fs.face_of[d] != fs.face_of[d ^ 1]:
            out.append(RotationMove("A", d, "forward"))
            out.append(RotationMove("A", d, "backward"))
    for d in range(len(q.sigma)):
        if deg[vo[d]] == 1:
            b = q.sigma[d ^ 1] ^ 1
            c = q.sigma[b] ^ 1
            if (b >> 1) != (c >> 1):
                out.append(RotationMove("C", d))
    return out


def apply_move(q, move):
    if move.kind == "A":
        return rotate_a(q, move.anchor_dart, move.direction)
    return rotate_c(q, move.anchor_dart)


class ClosureReport:
    __slots__ = ("n", "map_count", "move_count", "closed", "connected")

    def __init__(self, n, map_count, move_count, closed, connected):
        self.n = n
        self.map_count = map_count
        self.move_count = move_count
        self.closed = closed
        self.connected = connected

    def __str__(self):
        return "closure n=%d: maps %d moves %d closed %s connected %s" % (
            self.n, self.map_count, self.move_count,
            str(self.closed).lower(), str(self.connected).lower())


def closure_audit(maps):
    """Apply every A and C move to every map of a claimed-complete list and
    report whether all results stay in the list and whether the move graph
    on the list is connected."""
    index = {}
    for i, m in enumerate(maps):
        index[canonical_code(m)] = i
    n = maps[0].vertex_count if maps else 0
    parent = list(range(len(maps)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    closed = True
    move_count = 0
    for i, m in enumerate(maps):
        for mv in moves(m):
            move_count += 1
            r = apply_move(m, mv)
            j = index.get(canonical_code(r))
            if j is None:
                closed = False
            else:
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    connected = len({find(i) for i in range(len(maps))}) <= 1
    return ClosureReport(n, len(maps), move_count, closed, connected)
