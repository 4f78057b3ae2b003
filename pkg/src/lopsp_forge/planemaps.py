r"""
The bijection between plane maps and quadrangulations with a chosen
bipartition class, and plane-map generation built on it.

``join`` sends a map to its vertex-face incidence quadrangulation (the
radial graph); ``split`` inverts it: given a bipartite quadrangulation and
one colour class, every face contributes one edge between its two corners in
that class. Composing the two is the identity up to isomorphism, so
generating all quadrangulations with ``e + 2`` vertices and splitting each
at one or both classes (depending on whether some automorphism exchanges the
classes) yields every plane map with ``e`` edges exactly once.
"""

from .maps import PlaneMap, canonical_code


def join(m):
    """Radial quadrangulation of a map: vertices are the map's vertices and
    faces, with one edge per corner. |V| grows to |V|+|F|, |E| doubles."""
    fs = m.faces()
    V = m.vertex_count
    # edge ids = darts of m; join-darts 2d (at tail(d)) and 2d+1 (at the
    # face centre of face(d))
    rotations = [[] for _ in range(V + len(fs))]
    for v, rot in enumerate(m.rotations()):
        rotations[v] = [2 * d for d in rot]
    for f, cyc in enumerate(fs.faces):
        rotations[V + f] = [2 * d + 1 for d in reversed(cyc)]
    out = PlaneMap.from_rotation(V + len(fs), rotations)
    assert out.validate("quadrangulation")
    return out


def split(q, class_vertices):
    """Map whose vertices are one bipartition class of a quadrangulation,
    with one edge per face joining the two class corners (a loop when a face
    meets the class twice in the same vertex). Inverse of ``join``."""
    fs = q.faces()
    vo = q.vertex_of
    inside = [False] * q.vertex_count
    for v in class_vertices:
        inside[v] = True
    # per face, its two class corners in orbit order; the split-dart of a
    # class corner dart d is indexed by d itself
    dart_id = {}
    for f, cyc in enumerate(fs.faces):
        corners = [d for d in cyc if inside[vo[d]]]
        if len(corners) != 2:
            raise ValueError("class does not split face %d" % f)
        dart_id[corners[0]] = 2 * f
        dart_id[corners[1]] = 2 * f + 1
    vmap = {}
    rotations = []
    for v in sorted(class_vertices):
        vmap[v] = len(rotations)
        rotations.append([])
    for v, rot in enumerate(q.rotations()):
        if inside[v]:
            rotations[vmap[v]] = [dart_id[d] for d in rot]
    return PlaneMap.from_rotation(len(rotations), rotations)


def class_swap_exists(q, class_a, class_b):
    """True iff some automorphism of ``q`` exchanges the two bipartition
    classes; decided by comparing canonical codes refined by class labels."""
    labels_a = [1 if v in class_a else 2 for v in range(q.vertex_count)]
    labels_b = [1 if v in class_b else 2 for v in range(q.vertex_count)]
    return canonical_code(q, labels_a) == canonical_code(q, labels_b)


def maps_from_quadrangulation(q):
    """The one or two plane maps a quadrangulation splits into."""
    a, b = q.bipartition()
    out = [split(q, a)]
    if not class_swap_exists(q, a, b):
        out.append(split(q, b))
    return out


def generate_maps(edge_count, visitor=None):
    """Generate every plane map with ``edge_count`` edges exactly once
    (loops and parallel edges allowed); returns the count."""
    if edge_count < 1:
        raise ValueError("edge_count must be >= 1")
    from .quadgen import GenConfig, generate
    total = [0]

    def on_quad(q):
        for m in maps_from_quadrangulation(q):
            total[0] += 1
            if visitor is not None:
                visitor(m)

    generate(GenConfig(edge_count + 2), on_quad)
    return total[0]
