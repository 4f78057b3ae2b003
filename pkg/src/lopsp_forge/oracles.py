r"""
Slow definition-level reference implementations.

These cross-check the fast classifiers and the generator at desk scale: an
exact backtracking isomorphism test, a duplicate counter built on it, the
rooted-count formula, and the cut-path based c2/c3 checks that work on the
operation itself instead of its predecoration (see ``applyop`` for the
cutting machinery). They are deliberately simple; nothing here is tuned.
"""

import math
from fractions import Fraction

from .maps import PlaneMap


def are_isomorphic(m1, m2):
    """Exact map isomorphism (orientation-preserving or reversing), by
    propagating a dart correspondence from every possible seed. Handles
    loops and parallel edges."""
    if (m1.vertex_count != m2.vertex_count
            or len(m1.sigma) != len(m2.sigma)
            or sorted(m1.degrees()) != sorted(m2.degrees())
            or sorted(m1.faces().sizes()) != sorted(m2.faces().sizes())):
        return False
    n = len(m1.sigma)
    sigma1 = m1.sigma
    for reverse in (False, True):
        sigma2 = m2.sigma
        if reverse:
            inv = [0] * n
            for d, s in enumerate(m2.sigma):
                inv[s] = d
            sigma2 = inv
        for seed in range(n):
            phi = [-1] * n
            phi[0] = seed
            stack = [0]
            ok = True
            while stack and ok:
                d = stack.pop()
                for nd, img in ((sigma1[d], sigma2[phi[d]]), (d ^ 1, phi[d] ^ 1)):
                    if phi[nd] < 0:
                        phi[nd] = img
                        stack.append(nd)
                    elif phi[nd] != img:
                        ok = False
                        break
            if ok and len(set(phi)) == n:
                return True
    return False


def dedup_oracle(maps):
    """Number of isomorphism classes in a batch, by pairwise testing."""
    reps = []
    for m in maps:
        if not any(are_isomorphic(m, r) for r in reps):
            reps.append(m)
    return len(reps)


def rooted_identity(face_count):
    """Closed form for the number of rooted plane quadrangulations with a
    given face count: 2 * 3^f * (2f)! / (f! (f+2)!)."""
    f = face_count
    value = Fraction(2 * 3 ** f * math.factorial(2 * f),
                     math.factorial(f) * math.factorial(f + 2))
    assert value.denominator == 1
    return int(value)


# ----------------------------------------------------------------------
# submap-based c3 oracle
# ----------------------------------------------------------------------

def _region_data(q, edge_subset):
    """Faces of the submap given by ``edge_subset`` (edge ids of ``q``).

    Returns a list of (walk_size, walk_vertices, region_vertices) triples,
    one per boundary walk of the submap. The region of a walk is the side it
    bounds, found by flooding the faces of ``q`` across non-subset edges;
    region_vertices are the vertices of ``q`` with at least one corner in
    that region (the walk's own vertices are excluded by the caller).
    """
    sigma = q.sigma
    vo = q.vertex_of
    fs = q.faces()
    nf = len(fs.faces)
    in_h = [False] * q.edge_count
    for e in edge_subset:
        in_h[e] = True
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in range(q.edge_count):
        if not in_h[e]:
            a, b = find(fs.face_of[2 * e]), find(fs.face_of[2 * e + 1])
            if a != b:
                parent[max(a, b)] = min(a, b)
    region_verts = {}
    for d in range(len(sigma)):
        region_verts.setdefault(find(fs.face_of[d]), set()).add(vo[d])
    # walks: orbits of the submap's own face map
    h_darts = [d for d in range(len(sigma)) if in_h[d >> 1]]
    sigma_h = {}
    for d in h_darts:
        nxt = sigma[d]
        while not in_h[nxt >> 1]:
            nxt = sigma[nxt]
        sigma_h[d] = nxt
    seen = set()
    walks = []
    for d0 in h_darts:
        if d0 in seen:
            continue
        walk = []
        d = d0
        while d not in seen:
            seen.add(d)
            walk.append(d)
            d = sigma_h[d] ^ 1
        region = find(fs.face_of[walk[0]])
        walks.append((len(walk), {vo[x] for x in walk},
                      region_verts.get(region, set())))
    return walks


def _is_connected_subset(q, subset):
    vo = q.vertex_of
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in subset:
        for v in (vo[2 * e], vo[2 * e + 1]):
            parent.setdefault(v, v)
    for e in subset:
        a, b = find(vo[2 * e]), find(vo[2 * e + 1])
        if a != b:
            parent[max(a, b)] = min(a, b)
    return len({find(v) for v in parent}) == 1


def submap_constraints(q, max_edges=None):
    """All (size, walk_mask, interior_mask, interior_count) constraint items
    over connected edge subsets of ``q`` with at most ``max_edges`` edges
    (no limit when None), keeping only walks of size 2 or 4. Vertex sets are
    bitmasks.

    A disconnected submap contributes exactly its components' constraints
    (its faces are computed per component), so connected subsets cover the
    whole submap universe. Emptiness of an interior means no vertex; inside
    a quadrangulation a vertex-free region carries no edges either. And any
    size-2/4 walk uses at most 4 edges while everything of the submap inside
    its region would force the walk to detour through it, so the items from
    subsets of more than 4 edges are already present at 4; ``max_edges=4``
    is exact, which the tests cross-check against the unlimited oracle.
    """
    import itertools
    items = set()
    E = q.edge_count
    sizes = range(1, (max_edges if max_edges is not None else E) + 1)
    for k in sizes:
        for subset in itertools.combinations(range(E), k):
            if k > 1 and not _is_connected_subset(q, subset):
                continue
            for size, wverts, rverts in _region_data(q, subset):
                if size not in (2, 4):
                    continue
                interior = rverts - wverts
                wmask = 0
                for v in wverts:
                    wmask |= 1 << v
                imask = 0
                for v in interior:
                    imask |= 1 << v
                items.add((size, wmask, imask, len(interior)))
    return sorted(items)


def holds_for_marks(item, v0, v1, v2, v1_colour1):
    """One Thm-style constraint item against a mark triple."""
    size, _wmask, imask, icount = item
    if size == 2:
        if imask & ((1 << v0) | (1 << v2)):
            return True
        return v1_colour1 and icount == 1 and imask == (1 << v1)
    if icount == 0:
        return True
    return bool(imask & ((1 << v0) | (1 << v1) | (1 << v2)))


def submap_c3_oracle(p):
    """Literal submap check of the c3 characterization: every size-2 face of
    every submap has v0 or v2 in its interior (or the lone colour-1 v1), and
    every vertex-nonempty size-4 face meets a mark."""
    items = submap_constraints(p.quad)
    return all(holds_for_marks(item, p.v0, p.v1, p.v2, p.v1_colour1)
               for item in items)


# ----------------------------------------------------------------------
# cut-path based c2/c3 oracles
# ----------------------------------------------------------------------

def _two_cycle_exists(m):
    seen = set()
    vo = m.vertex_of
    for e in range(m.edge_count):
        u, w = vo[2 * e], vo[2 * e + 1]
        key = (min(u, w), max(u, w))
        if key in seen:
            return True
        seen.add(key)
    return False


def c2_oracle(o):
    """Literal check: no two-cycle appears in the patch of any minimal-length
    cut path."""
    from .applyop import minimal_cut_paths, cut
    for path in minimal_cut_paths(o):
        if _two_cycle_exists(cut(o, path).map):
            return False
    return True


def _closed_four_walks(m):
    """Closed walks of four pairwise distinct edges, deduplicated up to
    rotation and reflection, as edge quadruples with their vertex masks."""
    vo = m.vertex_of
    rots = m.rotations()
    two = {}
    for v in range(m.vertex_count):
        for d1 in rots[v]:
            for d2 in rots[v]:
                if (d1 >> 1) == (d2 >> 1) and d1 != (d2 ^ 1):
                    # same edge twice is fine only as the two darts of a
                    # pair of distinct parallel edges, filtered below
                    pass
                a, b = vo[d1 ^ 1], vo[d2 ^ 1]
                two.setdefault((a, b), []).append((d1 ^ 1, d2, v))
    out = {}
    for (a, b), walks in two.items():
        if (b, a) not in two or (a, b) > (b, a):
            continue
        backs = two[(b, a)] if (a, b) != (b, a) else walks
        for w1 in walks:
            for w2 in backs:
                e = (w1[0] >> 1, w1[1] >> 1, w2[0] >> 1, w2[1] >> 1)
                if len(set(e)) != 4:
                    continue
                key = frozenset(e)
                if key in out:
                    continue
                mask = (1 << a) | (1 << b) | (1 << w1[2]) | (1 << w2[2])
                out[key] = (e, mask)
    return list(out.values())


def _sides_have_colour0(m, colour, edges, walk_mask):
    """Flood the faces across non-walk edges; True iff every region holds a
    colour-0 vertex that is not on the walk."""
    fs = m.faces()
    nf = len(fs.faces)
    parent = list(range(nf))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    walk = set(edges)
    for e in range(m.edge_count):
        if e in walk:
            continue
        a, b = find(fs.face_of[2 * e]), find(fs.face_of[2 * e + 1])
        if a != b:
            parent[max(a, b)] = min(a, b)
    good = set()
    regions = set()
    vo = m.vertex_of
    for d in range(len(m.sigma)):
        r = find(fs.face_of[d])
        regions.add(r)
        v = vo[d]
        if colour[v] == 0 and not (walk_mask >> v) & 1:
            good.add(r)
    return len(regions) >= 2 and regions == good


def c3_oracle(o):
    """Literal check: c2 and, for every minimal cut path, neither double
    patch (two copies glued along the v1 segment or along the v0-v2 segment)
    contains a 4-cycle with a colour-0 vertex strictly on each side."""
    from .applyop import minimal_cut_paths, double_patch
    if not c2_oracle(o):
        return False
    for path in minimal_cut_paths(o):
        for segment in (0, 1):
            m, colour = double_patch(o, path, segment)
            for edges, mask in _closed_four_walks(m):
                if _sides_have_colour0(m, colour, edges, mask):
                    return False
    return True
