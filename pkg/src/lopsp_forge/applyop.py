r"""
Applying a lopsp-operation to a plane map.

The operation is cut open along a path from v1 through v0 to v2, giving a
disc patch whose boundary is two copies of the path. A copy of the patch is
glued into every quadrilateral of the host's barycentric subdivision minus
its colour-0 edges, v_i copies landing on colour-i vertices; the glued
complex is the barycentric subdivision of the result, which is read back by
taking colour-0 vertices as vertices, colour-1 vertices as edges and
colour-2 vertices as faces.

Nothing here performs explicit surgery. Patches, double patches and the
full application complex are all assembled from chamber systems: triangles
with oriented corner lists and an adjacency rule per side. Crossing a
cut-path edge of the v1 segment hops to the host dart's edge partner;
crossing one of the v0 segment hops to a face-orbit neighbour, the side of
the path picking the direction.
"""

from .maps import PlaneMap, MapError, canonical_form
from .lopsp import LopspOperation


class InvalidPath(MapError):
    pass


class CutPath:
    """A dart path v1 -> v0 -> v2 with pairwise distinct vertices;
    ``split`` indexes where the v0 -> v2 segment starts."""

    __slots__ = ("darts", "split")

    def __init__(self, darts, split):
        self.darts = darts
        self.split = split

    def __len__(self):
        return len(self.darts)

    def vertices(self, m):
        vo = m.vertex_of
        return [vo[d] for d in self.darts] + [vo[self.darts[-1] ^ 1]]

    def check(self, o):
        verts = self.vertices(o.map)
        if len(set(verts)) != len(verts):
            raise InvalidPath("cut path revisits a vertex")
        if not 0 < self.split < len(self.darts) + 1:
            raise InvalidPath("split index out of range")
        if verts[0] != o.v1 or verts[self.split] != o.v0 or verts[-1] != o.v2:
            raise InvalidPath("cut path endpoints are not v1, v0, v2")


def _bfs_dist(m, src):
    vo = m.vertex_of
    dist = [-1] * m.vertex_count
    dist[src] = 0
    frontier = [src]
    rots = m.rotations()
    while frontier:
        nxt = []
        for v in frontier:
            for d in rots[v]:
                u = vo[d ^ 1]
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    nxt.append(u)
        frontier = nxt
    return dist


def _paths(m, src, dst, length, banned):
    """All dart paths of exactly ``length`` edges from src to dst whose
    interior avoids ``banned`` and repeats no vertex."""
    rots = m.rotations()
    vo = m.vertex_of
    out = []

    def go(v, left, darts, used):
        for d in rots[v]:
            u = vo[d ^ 1]
            if left == 1:
                if u == dst:
                    out.append(darts + [d])
                continue
            if u == dst or u in used or u in banned:
                continue
            used.add(u)
            go(u, left - 1, darts + [d], used)
            used.discard(u)

    if length >= 1:
        go(src, length, [], {src})
    return out


def minimal_cut_paths(o):
    """All cut paths of minimal total edge count."""
    m = o.map
    d1 = _bfs_dist(m, o.v1)
    d2 = _bfs_dist(m, o.v0)
    base = max(d1[o.v0] + d2[o.v2], 2)
    for total in range(base, base + 2 * m.vertex_count + 1):
        out = []
        for l1 in range(1, total):
            l2 = total - l1
            if l1 < d1[o.v0] or l2 < d2[o.v2]:
                continue
            for p1 in _paths(m, o.v1, o.v0, l1, {o.v2}):
                interior = {m.vertex_of[d] for d in p1[1:]} | {o.v1}
                for p2 in _paths(m, o.v0, o.v2, l2, interior):
                    cp = CutPath(p1 + p2, l1)
                    cp.check(o)
                    out.append(cp)
        if out:
            return out
    raise InvalidPath("no cut path found")


def shortest_cut_path(o):
    """One minimal cut path (the application result is independent of the
    choice)."""
    return minimal_cut_paths(o)[0]


# ----------------------------------------------------------------------
# chamber-system assembly
# ----------------------------------------------------------------------

def assemble_chambers(corners, adjacency):
    """Build a plane map from oriented triangles.

    ``corners[c]`` lists chamber ``c``'s corner labels counter-clockwise;
    ``adjacency[c][i]`` is the chamber/slot across the side between corners
    ``i`` and ``i+1`` as ``(c', i')``, or None on the complex boundary.
    Returns ``(map, corner_class)`` where ``corner_class[c][i]`` is the
    vertex id of corner ``(c, i)``.
    """
    nc = len(corners)
    parent = list(range(3 * nc))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for c in range(nc):
        for i in range(3):
            adj = adjacency[c][i]
            if adj is None:
                continue
            c2, i2 = adj
            if adjacency[c2][i2] != (c, i):
                raise ValueError("adjacency is not involutive")
            # side (i, i+1) of c matches side (i2, i2+1) of c2 reversed
            union(3 * c + i, 3 * c2 + (i2 + 1) % 3)
            union(3 * c + (i + 1) % 3, 3 * c2 + i2)
    vid = {}
    corner_class = [[0] * 3 for _ in range(nc)]
    for c in range(nc):
        for i in range(3):
            r = find(3 * c + i)
            if r not in vid:
                vid[r] = len(vid)
            corner_class[c][i] = vid[r]
    nv = len(vid)
    # edge slots: (c, i); interior edges pair two slots, boundary slots pair
    # with a fresh dart on the outer face
    slot_edge = {}
    edges = []
    for c in range(nc):
        for i in range(3):
            if (c, i) in slot_edge:
                continue
            adj = adjacency[c][i]
            e = len(edges)
            if adj is None:
                edges.append(((c, i), None))
                slot_edge[(c, i)] = (e, 0)
            else:
                edges.append(((c, i), adj))
                slot_edge[(c, i)] = (e, 0)
                slot_edge[adj] = (e, 1)

    # rotations: walk ccw around each vertex class. At corner (c, i) the
    # outgoing side is slot i and the incoming one slot i-1; ccw continues
    # across the incoming side.
    rotations = [None] * nv
    visited = set()
    for c0 in range(nc):
        for i0 in range(3):
            if (c0, i0) in visited:
                continue
            v = corner_class[c0][i0]
            # rewind clockwise to a boundary, or detect a full cycle
            c, i = c0, i0
            steps = 0
            while True:
                adj = adjacency[c][i]
                if adj is None:
                    break
                c2, i2 = adj
                c, i = c2, (i2 + 1) % 3
                steps += 1
                if (c, i) == (c0, i0):
                    break
                if steps > 3 * nc:
                    raise ValueError("corner walk does not close")
            start_boundary = adjacency[c][i] is None
            rot = []
            cc, ci = c, i
            while True:
                visited.add((cc, ci))
                e, end = slot_edge[(cc, ci)]
                rot.append(2 * e + end)
                inc = (ci + 2) % 3
                adj = adjacency[cc][inc]
                if adj is None:
                    # a boundary edge ends the fan; this walk is around its
                    # other endpoint, so it contributes the partner dart
                    e2, _end2 = slot_edge[(cc, inc)]
                    rot.append(2 * e2 + 1)
                    break
                c2, i2 = adj
                cc, ci = c2, i2
                if (cc, ci) == (c, i):
                    break
            if rotations[v] is not None:
                raise ValueError("vertex class visited twice")
            rotations[v] = rot
    m = PlaneMap.from_rotation(nv, rotations)
    return m, corner_class


def _chamber_geometry(o, path):
    """Oriented chamber data of the operation relative to a cut path.

    Returns (ccw, corners, slot_of, side_info): ``ccw[f]`` lists face f's
    boundary darts in geometric counter-clockwise order (each dart's tail is
    a corner), ``corners[f]`` the corner vertices, ``slot_of[d]`` the slot
    of dart ``d`` in its face, and ``side_info[f][j]`` one of
    ``("in", f2, j2)`` or ``("path", segment, f2, j2, ahead)`` where
    ``ahead`` is True when the face holds the forward walk dart.
    """
    m = o.map
    fs = m.faces()
    seg_of = {}
    for idx, d in enumerate(path.darts):
        seg_of[d >> 1] = (0 if idx < path.split else 1, d)
    ccw = []
    corners = []
    slot_of = [0] * len(m.sigma)
    for cyc in fs.faces:
        order = [cyc[0]] + list(reversed(cyc[1:]))
        for j, d in enumerate(order):
            slot_of[d] = j
        ccw.append(order)
        corners.append([m.vertex_of[d] for d in order])
    side_info = []
    for f, order in enumerate(ccw):
        sides = []
        for j, d in enumerate(order):
            f2 = fs.face_of[d ^ 1]
            j2 = slot_of[d ^ 1]
            e = d >> 1
            if e in seg_of:
                seg, wd = seg_of[e]
                sides.append(("path", seg, f2, j2, d == wd))
            else:
                sides.append(("in", f2, j2))
        side_info.append(sides)
    return ccw, corners, slot_of, side_info


# ----------------------------------------------------------------------
# cutting and double patches
# ----------------------------------------------------------------------

class Patch:
    """The operation cut open along a path: a disc whose boundary face is
    two copies of the path. ``v0_left``/``v0_right`` are the two copies of
    v0; interior faces are the operation's chambers."""

    __slots__ = ("map", "colour", "boundary_face", "v1", "v2",
                 "v0_left", "v0_right")

    def __init__(self, m, colour, boundary_face, v1, v2, v0_left, v0_right):
        self.map = m
        self.colour = colour
        self.boundary_face = boundary_face
        self.v1 = v1
        self.v2 = v2
        self.v0_left = v0_left
        self.v0_right = v0_right


def _assemble_patch(o, path, copies, shared_segment):
    """Shared builder: ``copies`` copies of the cut operation, glued across
    ``shared_segment`` (0, 1 or None) path edges; other path edges stay on
    the boundary. Returns (map, colour, corner_class, corners)."""
    ccw, corners, _slot_of, side_info = _chamber_geometry(o, path)
    nf = len(ccw)
    corner_lists = []
    adjacency = []
    for copy in range(copies):
        for f in range(nf):
            corner_lists.append(corners[f])
            adj = []
            for j in range(3):
                info = side_info[f][j]
                if info[0] == "in":
                    adj.append((copy * nf + info[1], info[2]))
                else:
                    _tag, seg, f2, j2, _ahead = info
                    if seg == shared_segment:
                        adj.append(((1 - copy) * nf + f2, j2))
                    else:
                        adj.append(None)
            adjacency.append(adj)
    m, corner_class = assemble_chambers(corner_lists, adjacency)
    colour = [0] * m.vertex_count
    for c, labels in enumerate(corner_lists):
        for i, v in enumerate(labels):
            colour[corner_class[c][i]] = o.colour[v]
    return m, corner_class, corner_lists


def cut(o, path):
    """Cut the operation along a cut path; interior faces are unchanged (the
    chamber count is preserved) and the boundary face has two copies of the
    path."""
    path.check(o)
    m, corner_class, corner_lists = _assemble_patch(o, path, 1, None)
    colour = [0] * m.vertex_count
    marks = {o.v1: [], o.v2: [], o.v0: []}
    for c, labels in enumerate(corner_lists):
        for i, v in enumerate(labels):
            colour[corner_class[c][i]] = o.colour[v]
            if v in marks:
                marks[v].append(corner_class[c][i])
    fs = m.faces()
    boundary = max(range(len(fs.faces)), key=lambda f: len(fs.faces[f]))
    v1s = sorted(set(marks[o.v1]))
    v2s = sorted(set(marks[o.v2]))
    v0s = sorted(set(marks[o.v0]))
    if len(v1s) != 1 or len(v2s) != 1 or len(v0s) != 2:
        raise InvalidPath("cutting did not duplicate v0 exactly")
    if len(fs.faces[boundary]) != 2 * len(path.darts):
        raise InvalidPath("boundary face size is not twice the path length")
    return Patch(m, colour, boundary, v1s[0], v2s[0], v0s[0], v0s[1])


def double_patch(o, path, shared_segment):
    """Two copies of the cut operation glued along one path segment: 0 for
    the v1 -> v0 copies, 1 for v0 -> v2. Returns (map, colour)."""
    path.check(o)
    m, corner_class, corner_lists = _assemble_patch(o, path, 2, shared_segment)
    colour = [0] * m.vertex_count
    for c, labels in enumerate(corner_lists):
        for i, v in enumerate(labels):
            colour[corner_class[c][i]] = o.colour[v]
    return m, colour


# ----------------------------------------------------------------------
# application
# ----------------------------------------------------------------------

def apply_operation(o, host, path=None):
    """The map obtained by applying the operation to ``host``; its edge
    count is the inflation factor times the host's."""
    if path is None:
        path = shortest_cut_path(o)
    else:
        path.check(o)
    ccw, corners, _slot_of, side_info = _chamber_geometry(o, path)
    nf = len(ccw)
    sigma = host.sigma
    fs = host.faces()
    D = len(sigma)
    phi = [0] * D            # face-orbit step d -> sigma[d]^1
    phi_inv = [0] * D
    for d in range(D):
        phi[d] = sigma[d] ^ 1
    for d in range(D):
        phi_inv[phi[d]] = d

    # complex chambers: (host dart, operation face)
    def cid(dart, f):
        return dart * nf + f

    corner_lists = []
    adjacency = []
    for dart in range(D):
        for f in range(nf):
            corner_lists.append(corners[f])
            adj = []
            for j in range(3):
                info = side_info[f][j]
                if info[0] == "in":
                    adj.append((cid(dart, info[1]), info[2]))
                else:
                    _tag, seg, f2, j2, ahead = info
                    if seg == 0:
                        adj.append((cid(dart ^ 1, f2), j2))
                    elif ahead:
                        adj.append((cid(phi[dart], f2), j2))
                    else:
                        adj.append((cid(phi_inv[dart], f2), j2))
            adjacency.append(adj)
    bmap, corner_class = assemble_chambers(corner_lists, adjacency)
    colour = [0] * bmap.vertex_count
    for c, labels in enumerate(corner_lists):
        for i, v in enumerate(labels):
            colour[corner_class[c][i]] = o.colour[v]
    result = _contract_barycentric(bmap, colour)
    if result.edge_count != o.k * host.edge_count:
        raise MapError("edge multiplication violated: got %d, expected %d" %
                       (result.edge_count, o.k * host.edge_count))
    return result


def _contract_barycentric(bmap, colour):
    """Read a map off its coloured barycentric subdivision: colour-0
    vertices stay, colour-1 vertices become edges, colour-2 faces."""
    vo = bmap.vertex_of
    vmap = {}
    for v in range(bmap.vertex_count):
        if colour[v] == 0:
            vmap[v] = len(vmap)
    emap = {}
    for v in range(bmap.vertex_count):
        if colour[v] == 1:
            emap[v] = len(emap)
    # around each colour-0 vertex take its colour-1 neighbours in rotation
    # order; each (vertex, occurrence) is one dart of the final map
    rotations = [None] * len(vmap)
    dart_slots = {}   # colour-1 vertex -> list of (vertex, position) slots
    rots = bmap.rotations()
    for v, nv in vmap.items():
        rot = []
        for d in rots[v]:
            u = vo[d ^ 1]
            if colour[u] == 1:
                dart_slots.setdefault(u, []).append((nv, len(rot), d))
                rot.append(None)
        rotations[nv] = rot
    for u, slots in dart_slots.items():
        if len(slots) != 2:
            raise MapError("colour-1 vertex with %d colour-0 incidences" % len(slots))
        e = emap[u]
        (va, ia, _), (vb, ib, _) = slots
        rotations[va][ia] = 2 * e
        rotations[vb][ib] = 2 * e + 1
    return PlaneMap.from_rotation(len(rotations), rotations)
