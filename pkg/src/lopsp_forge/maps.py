r"""
Dart-based combinatorial maps on orientable surfaces.

A map is stored as a rotation system on darts (directed edges). Darts are
numbered ``0 .. 2E-1`` and edge ``e`` owns the dart pair ``2e, 2e+1``, so the
edge involution is ``d ^ 1`` and needs no storage. ``sigma[d]`` is the next
dart counter-clockwise around the tail vertex of ``d``; this handedness is a
global convention (the mirror image of a map is obtained by inverting sigma).
Faces are the orbits of ``d -> (sigma[d]) ^ 1``; a map is plane when its Euler
genus is zero.

Maps are immutable after construction and safe to share between workers.
"""

from fractions import Fraction


class MapError(Exception):
    pass


class MalformedRotation(MapError):
    pass


class Disconnected(MapError):
    pass


class NonPlanar(MapError):
    def __init__(self, genus):
        super().__init__("map has genus %d" % genus)
        self.genus = genus


class NotBipartite(MapError):
    pass


class NotApplicable(MapError):
    pass


class PreconditionViolated(MapError):
    pass


class FaceSet:
    """Faces of a map: dart cycles under ``d -> sigma[d] ^ 1``.

    ``faces[i]`` lists the darts of face ``i`` in orbit order and
    ``face_of[d]`` gives the face index of each dart.
    """

    __slots__ = ("faces", "face_of")

    def __init__(self, faces, face_of):
        self.faces = faces
        self.face_of = face_of

    def __len__(self):
        return len(self.faces)

    def sizes(self):
        return [len(f) for f in self.faces]


class PlaneMap:
    """A connected map given by its rotation system.

    ``PlaneMap.from_rotation`` validates planarity (genus 0); use
    ``from_rotation_any`` to build maps of arbitrary genus, e.g. to compute
    the genus itself. Isolated vertices are rejected in both cases.
    """

    __slots__ = ("vertex_count", "sigma", "vertex_of", "_faces", "_degrees")

    def __init__(self, vertex_count, sigma, vertex_of):
        self.vertex_count = vertex_count
        self.sigma = sigma
        self.vertex_of = vertex_of
        self._faces = None
        self._degrees = None

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def from_rotation(cls, vertex_count, rotations, planar=True):
        """Build a map from per-vertex cyclic dart lists.

        ``rotations[v]`` lists the darts with tail ``v`` in counter-clockwise
        order. Dart ids must be exactly ``0 .. 2E-1`` with ``d ^ 1`` the other
        half of the same edge. Raises ``MalformedRotation``, ``Disconnected``
        or ``NonPlanar``.
        """
        if vertex_count <= 0:
            raise MalformedRotation("empty map")
        if len(rotations) != vertex_count:
            raise MalformedRotation("expected %d rotations" % vertex_count)
        dart_count = sum(len(r) for r in rotations)
        if dart_count == 0 or dart_count % 2:
            raise MalformedRotation("dart count must be even and positive")
        sigma = [-1] * dart_count
        vertex_of = [-1] * dart_count
        for v, rot in enumerate(rotations):
            if not rot:
                raise MalformedRotation("isolated vertex %d" % v)
            for i, d in enumerate(rot):
                if not 0 <= d < dart_count or sigma[d] != -1:
                    raise MalformedRotation("bad dart %d at vertex %d" % (d, v))
                sigma[d] = rot[(i + 1) % len(rot)]
                vertex_of[d] = v
        m = cls(vertex_count, sigma, vertex_of)
        m._check_connected()
        if planar:
            g = m.genus()
            if g != 0:
                raise NonPlanar(g)
        return m

    @classmethod
    def from_rotation_any(cls, vertex_count, rotations):
        """Like ``from_rotation`` but with no genus restriction."""
        return cls.from_rotation(vertex_count, rotations, planar=False)

    def _check_connected(self):
        sigma = self.sigma
        n = len(sigma)
        seen = bytearray(n)
        stack = [0]
        seen[0] = 1
        count = 0
        while stack:
            d = stack.pop()
            count += 1
            for e in (sigma[d], d ^ 1):
                if not seen[e]:
                    seen[e] = 1
                    stack.append(e)
        if count != n:
            raise Disconnected("dart orbit covers %d of %d darts" % (count, n))

    # ------------------------------------------------------------------
    # basic invariants
    # ------------------------------------------------------------------

    @property
    def dart_count(self):
        return len(self.sigma)

    @property
    def edge_count(self):
        return len(self.sigma) // 2

    def degrees(self):
        if self._degrees is None:
            deg = [0] * self.vertex_count
            for v in self.vertex_of:
                deg[v] += 1
            self._degrees = deg
        return self._degrees

    def rotations(self):
        """Per-vertex dart lists, inverse of ``from_rotation``."""
        first = [-1] * self.vertex_count
        for d in range(len(self.sigma) - 1, -1, -1):
            first[self.vertex_of[d]] = d
        out = []
        for v in range(self.vertex_count):
            d0 = first[v]
            rot = [d0]
            d = self.sigma[d0]
            while d != d0:
                rot.append(d)
                d = self.sigma[d]
            out.append(rot)
        return out

    def faces(self):
        """FaceSet of the orbits of ``d -> sigma[d] ^ 1``."""
        if self._faces is None:
            sigma = self.sigma
            n = len(sigma)
            face_of = [-1] * n
            faces = []
            for d0 in range(n):
                if face_of[d0] >= 0:
                    continue
                idx = len(faces)
                cyc = []
                d = d0
                while face_of[d] < 0:
                    face_of[d] = idx
                    cyc.append(d)
                    d = sigma[d] ^ 1
                faces.append(cyc)
            self._faces = FaceSet(faces, face_of)
        return self._faces

    def genus(self):
        v = self.vertex_count
        e = self.edge_count
        f = len(self.faces())
        return (2 - v + e - f) // 2

    def validate(self, kind, colour=None):
        """Check a structural predicate: ``"quadrangulation"``,
        ``"triangulation"`` or ``"proper_colouring"`` (needs ``colour``)."""
        if kind == "quadrangulation":
            return all(len(f) == 4 for f in self.faces().faces)
        if kind == "triangulation":
            return all(len(f) == 3 for f in self.faces().faces)
        if kind == "proper_colouring":
            vo = self.vertex_of
            return all(colour[vo[d]] != colour[vo[d ^ 1]] for d in range(0, len(self.sigma), 2))
        raise ValueError("unknown kind %r" % kind)

    def bipartition(self):
        """2-colouring ``(classA, classB)`` with vertex 0 in classA.

        Raises ``NotBipartite`` on an odd cycle; loops always fail.
        """
        side = [-1] * self.vertex_count
        side[0] = 0
        first = [-1] * self.vertex_count
        for d in range(len(self.sigma)):
            if first[self.vertex_of[d]] < 0:
                first[self.vertex_of[d]] = d
        stack = [0]
        while stack:
            v = stack.pop()
            d0 = first[v]
            d = d0
            while True:
                u = self.vertex_of[d ^ 1]
                if side[u] < 0:
                    side[u] = 1 - side[v]
                    stack.append(u)
                elif side[u] == side[v]:
                    raise NotBipartite("odd cycle through vertex %d" % v)
                d = self.sigma[d]
                if d == d0:
                    break
        a = {v for v in range(self.vertex_count) if side[v] == 0}
        return a, set(range(self.vertex_count)) - a

    def has_loop(self):
        vo = self.vertex_of
        return any(vo[d] == vo[d ^ 1] for d in range(0, len(self.sigma), 2))

    # ------------------------------------------------------------------
    # derived maps
    # ------------------------------------------------------------------

    def barycentric(self):
        """The flag triangulation on vertices+edges+faces.

        Original vertices get colour 0, edge midpoints colour 1 and face
        centres colour 2; the result has ``4E`` triangular faces (chambers).
        """
        V, E = self.vertex_count, self.edge_count
        fs = self.faces()
        face_of = fs.face_of
        # new vertex ids: v | V + e | V + E + f
        # new edges: per dart d three edges (tail-edge, tail-face, edge-face),
        # ids 3d, 3d+1, 3d+2 owning dart pairs (6d,6d+1), (6d+2,6d+3), (6d+4,6d+5).
        rotations = [[] for _ in range(V + E + len(fs))]
        sigma = self.sigma
        vo = self.vertex_of
        for v in range(V):
            rotations[v] = []
        rot = self.rotations()
        for v, darts in enumerate(rot):
            r = []
            for d in darts:
                r.append(6 * d)        # toward edge midpoint of d
                r.append(6 * d + 2)    # toward face centre of face(d)
            rotations[v] = r
        for e in range(E):
            d, dd = 2 * e, 2 * e + 1
            # ccw around the midpoint: tail(d), face(dd), tail(dd), face(d)
            rotations[V + e] = [6 * d + 1, 6 * dd + 4, 6 * dd + 1, 6 * d + 4]
        # The face-centre rotation interleaves corner vertices and edge
        # midpoints along the geometric boundary, which is the reversed orbit.
        for f, cyc in enumerate(fs.faces):
            r = []
            for d in reversed(cyc):
                r.append(6 * d + 3)    # corner tail(d)
                r.append(6 * d + 5)    # midpoint of edge(d)
            rotations[V + E + f] = r
        colour = [0] * V + [1] * E + [2] * len(fs)
        m = PlaneMap.from_rotation(V + E + len(fs), rotations, planar=False)
        return ColouredMap(m, colour)

    def relabel_random(self, rng):
        """An isomorphic copy under random vertex/edge relabeling and random
        rotation of each cycle; used to test isomorphism invariance."""
        E = self.edge_count
        eperm = list(range(E))
        rng.shuffle(eperm)
        flip = [rng.random() < 0.5 for _ in range(E)]
        dmap = [0] * (2 * E)
        for e in range(E):
            dmap[2 * e] = 2 * eperm[e] + (1 if flip[e] else 0)
            dmap[2 * e + 1] = 2 * eperm[e] + (0 if flip[e] else 1)
        vperm = list(range(self.vertex_count))
        rng.shuffle(vperm)
        rot = self.rotations()
        new_rot = [None] * self.vertex_count
        for v, darts in enumerate(rot):
            k = rng.randrange(len(darts))
            new_rot[vperm[v]] = [dmap[d] for d in darts[k:] + darts[:k]]
        return PlaneMap.from_rotation(self.vertex_count, new_rot, planar=False)


class ColouredMap:
    """A map together with a vertex colouring into {0,1,2}."""

    __slots__ = ("map", "colour")

    def __init__(self, m, colour):
        self.map = m
        self.colour = colour

    def is_proper(self):
        return self.map.validate("proper_colouring", self.colour)


# ----------------------------------------------------------------------
# canonical forms
# ----------------------------------------------------------------------


class CanonicalForm:
    """Minimal BFS code of a map plus its full automorphism group.

    ``code`` is byte-equal for two maps iff they are isomorphic with
    compatible refinement labels. ``automorphisms`` lists pairs
    ``(dart_permutation, orientation_preserving)``; they form a group under
    composition and the orientation-preserving ones a subgroup of index 1
    or 2. ``canonical_dart`` is the ``(dart, reversed)`` start realizing the
    minimal code.
    """

    __slots__ = ("code", "automorphisms", "canonical_dart", "_labels")

    def __init__(self, code, automorphisms, canonical_dart, labels):
        self.code = code
        self.automorphisms = automorphisms
        self.canonical_dart = canonical_dart
        self._labels = labels

    def dart_orbits(self):
        """Orbit id per dart under the full group."""
        n = len(self.automorphisms[0][0])
        orbit = list(range(n))

        def find(x):
            while orbit[x] != x:
                orbit[x] = orbit[orbit[x]]
                x = orbit[x]
            return x

        for perm, _ in self.automorphisms:
            for d in range(n):
                a, b = find(d), find(perm[d])
                if a != b:
                    orbit[max(a, b)] = min(a, b)
        return [find(d) for d in range(n)]


def bfs_code(m, start, reverse=False, labels=None):
    """Rooted code of ``m`` from ``start``: vertices are numbered in BFS
    discovery order and each vertex unit is ``[label?, nbr1.., 0]`` with the
    rotation walked from the entry dart (``sigma`` inverted when ``reverse``).

    Equal codes from two roots give an isomorphism mapping the traversals
    onto each other.
    """
    sigma = m.sigma
    vo = m.vertex_of
    if reverse:
        inv = [0] * len(sigma)
        for d, s in enumerate(sigma):
            inv[s] = d
        sigma = inv
    deg = m.degrees()
    num = [0] * m.vertex_count
    queue = [start]
    num[vo[start]] = 1
    count = 1
    code = []
    append = code.append
    qi = 0
    while qi < len(queue):
        entry = queue[qi]
        qi += 1
        v = vo[entry]
        if labels is not None:
            append(labels[v])
        d = entry
        for _ in range(deg[v]):
            u = vo[d ^ 1]
            nu = num[u]
            if nu == 0:
                count += 1
                num[u] = nu = count
                queue.append(d ^ 1)
            append(nu)
            d = sigma[d]
        append(0)
    return code


def _traversal_darts(m, start, reverse=False):
    """Darts of ``m`` in the bfs_code emission order from ``start``."""
    sigma = m.sigma
    vo = m.vertex_of
    if reverse:
        inv = [0] * len(sigma)
        for d, s in enumerate(sigma):
            inv[s] = d
        sigma = inv
    deg = m.degrees()
    num = [0] * m.vertex_count
    queue = [start]
    num[vo[start]] = 1
    count = 1
    order = []
    qi = 0
    while qi < len(queue):
        entry = queue[qi]
        qi += 1
        v = vo[entry]
        d = entry
        for _ in range(deg[v]):
            u = vo[d ^ 1]
            if num[u] == 0:
                count += 1
                num[u] = count
                queue.append(d ^ 1)
            order.append(d)
            d = sigma[d]
    return order


def canonical_form(m, refinement=None):
    """Canonical form of a map, optionally refined by vertex labels.

    The code is minimized over all ``2 * dart_count`` rooted BFS codes (both
    orientations, so mirror images are identified); every root reproducing
    the minimum contributes one automorphism.
    """
    best = None
    best_starts = []
    labels = refinement
    for reverse in (False, True):
        for start in range(len(m.sigma)):
            code = bfs_code(m, start, reverse, labels)
            if best is None or code < best:
                best = code
                best_starts = [(start, reverse)]
            elif code == best:
                best_starts.append((start, reverse))
    d0, r0 = best_starts[0]
    ref_order = _traversal_darts(m, d0, r0)
    pos = [0] * len(m.sigma)
    for i, d in enumerate(ref_order):
        pos[d] = i
    autos = []
    for start, reverse in best_starts:
        order = _traversal_darts(m, start, reverse)
        perm = [0] * len(m.sigma)
        for i, d in enumerate(ref_order):
            perm[d] = order[i]
        autos.append((perm, reverse == r0))
    code_bytes = bytes(x & 0xFF for x in best) if max(best, default=0) < 256 \
        else b"".join(x.to_bytes(2, "little") for x in best)
    return CanonicalForm(code_bytes, autos, (d0, r0), refinement)


def canonical_code(m, refinement=None):
    """Just the minimal code, cheaper than ``canonical_form``."""
    best = None
    for reverse in (False, True):
        for start in range(len(m.sigma)):
            code = bfs_code(m, start, reverse, refinement)
            if best is None or code < best:
                best = code
    return bytes(x & 0xFF for x in best) if max(best, default=0) < 256 \
        else b"".join(x.to_bytes(2, "little") for x in best)


def vertex_action(m, perm):
    """Vertex permutation induced by a dart automorphism."""
    act = [-1] * m.vertex_count
    vo = m.vertex_of
    for d, pd in enumerate(perm):
        act[vo[d]] = vo[pd]
    return act


def vertex_orbits(m, cf, orientation_preserving=False):
    """Vertex orbit partition under the automorphism group of ``cf``."""
    parent = list(range(m.vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm, op in cf.automorphisms:
        if orientation_preserving and not op:
            continue
        act = vertex_action(m, perm)
        for v in range(m.vertex_count):
            a, b = find(v), find(act[v])
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for v in range(m.vertex_count):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def automorphism_count(m):
    """Order of the automorphism group, as (full, orientation_preserving)."""
    cf = canonical_form(m)
    full = len(cf.automorphisms)
    op = sum(1 for _, o in cf.automorphisms if o)
    return full, op


def rooted_weight(m):
    """4E / |Aut|, the number of rooted maps this isomorphism class carries."""
    full, _ = automorphism_count(m)
    return Fraction(4 * m.edge_count, full)
