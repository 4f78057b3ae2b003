r"""
Isomorph-free generation of plane quadrangulations with parallel edges.

Starting from the 3-vertex path, three extensions grow a quadrangulation by
one vertex, two edges and one face:

* ``D1(d)`` doubles the edge of dart ``d`` with a parallel copy on the side
  of ``d``'s face and hangs a new degree-1 vertex off ``tail(d)`` inside the
  resulting 2-gon.
* ``P0(d)`` puts a new degree-2 vertex inside ``d``'s face, joined to
  ``tail(d)`` and to the opposite corner.
* ``P1(d)`` deletes the edge of ``d`` (whose two faces must differ) and puts
  a new degree-3 vertex joined to ``head(d)`` and to the corners opposite
  ``head(d)`` in the edge's two faces.

Duplicates are rejected with the canonical construction path method: a child
is kept only if the extension that produced it inverts the child's canonical
reduction. The canonical reduction kind is the first of D1, P0, P1 with any
applicable site (this priority makes the degree-1 count monotone along
accepted chains once it reaches 3, which the c2/c3 pruning relies on), and
among sites of that kind the one with the minimal site-rooted BFS code wins;
equality of rooted codes is equivalent to being in the same automorphism
orbit, so exactly one orbit is accepted.
"""

from .maps import (PlaneMap, NotApplicable, bfs_code, canonical_form)


class ExtensionSite:
    """An extension move: kind in {"D1","P0","P1"} anchored at a dart of the
    host map (for P1 the deleted edge is the anchor's edge)."""

    __slots__ = ("kind", "anchor_dart")

    def __init__(self, kind, anchor_dart):
        if kind not in ("D1", "P0", "P1"):
            raise ValueError("bad extension kind %r" % kind)
        self.kind = kind
        self.anchor_dart = anchor_dart

    def __repr__(self):
        return "ExtensionSite(%s, %d)" % (self.kind, self.anchor_dart)

    def __eq__(self, other):
        return self.kind == other.kind and self.anchor_dart == other.anchor_dart

    def __hash__(self):
        return hash((self.kind, self.anchor_dart))


class GenConfig:
    """Options for ``generate``: target vertex count, optional bounds on the
    number of degree-1 vertices and on the largest parallel class, and a
    deterministic (res, mod, depth) work split."""

    __slots__ = ("target_n", "max_degree1", "max_parallel_class",
                 "res", "mod", "depth")

    def __init__(self, target_n, max_degree1=None, max_parallel_class=None,
                 res=0, mod=1, depth=0):
        if target_n < 3:
            raise ValueError("target_n must be >= 3")
        if not (0 <= res < mod) or depth < 0:
            raise ValueError("need 0 <= res < mod and depth >= 0")
        self.target_n = target_n
        self.max_degree1 = max_degree1
        self.max_parallel_class = max_parallel_class
        self.res = res
        self.mod = mod
        self.depth = depth


class GenStats:
    """Per-level counters: children built, accepted, rejected by the
    canonicity test, and filter-pruned subtrees."""

    def __init__(self, target_n):
        self.target_n = target_n
        self.generated = [0] * (target_n + 1)
        self.accepted = [0] * (target_n + 1)
        self.rejected_by_canonicity = [0] * (target_n + 1)
        self.pruned_by_filter = [0] * (target_n + 1)
        self.emitted = 0

    def report(self):
        lines = []
        for n in range(4, self.target_n + 1):
            lines.append("level %d: generated %d accepted %d pruned %d" % (
                n, self.generated[n], self.accepted[n], self.pruned_by_filter[n]))
        return "\n".join(lines)


def base_quad():
    """The path on 3 vertices: the unique quadrangulation with one face."""
    return PlaneMap.from_rotation(3, [[0], [1, 2], [3]])


# ----------------------------------------------------------------------
# extensions
# ----------------------------------------------------------------------

def _sigma_prev(sigma, d):
    # predecessor in the rotation at tail(d); rotations are short
    e = d
    while sigma[e] != d:
        e = sigma[e]
    return e


def extend(q, site):
    """Apply an extension; the result has one more vertex, two more edges and
    one more face. Raises NotApplicable when preconditions fail."""
    kind, d = site.kind, site.anchor_dart
    sigma = q.sigma
    vo = q.vertex_of
    D = len(sigma)
    V = q.vertex_count
    if kind == "D1":
        w, x = vo[d], vo[d ^ 1]
        n1, n1p, qw, qp = D, D + 1, D + 2, D + 3
        s = sigma + [0, 0, 0, 0]
        v = vo + [w, x, w, V]
        yp = _sigma_prev(sigma, d ^ 1)
        s[n1] = sigma[d]
        s[d] = qw
        s[qw] = n1
        s[yp] = n1p
        s[n1p] = d ^ 1
        s[qp] = qp
        return PlaneMap(V + 1, s, v)
    if kind == "P0":
        o1 = sigma[d] ^ 1
        opp = sigma[o1] ^ 1
        a, c = vo[d], vo[opp]
        if a == c:
            raise NotApplicable("opposite corner equals the anchor corner")
        va, av, vc, cv = D, D + 1, D + 2, D + 3
        s = sigma + [0, 0, 0, 0]
        v = vo + [V, a, V, c]
        s[av] = sigma[d]
        s[d] = av
        s[cv] = sigma[opp]
        s[opp] = cv
        s[va] = vc
        s[vc] = va
        return PlaneMap(V + 1, s, v)
    if kind == "P1":
        fo = q.faces().face_of
        if fo[d] == fo[d ^ 1]:
            raise NotApplicable("the anchor edge is a bridge")
        x1 = sigma[d] ^ 1
        y1 = sigma[d ^ 1] ^ 1
        y2 = sigma[y1] ^ 1
        u1, c2 = vo[x1], vo[y2]
        m1, m2, m3, m4 = D, D + 1, D + 2, D + 3
        s = sigma + [0, 0, 0, 0]
        v = vo + [V, u1, V, c2]
        prev_a = _sigma_prev(sigma, d)
        old_sd = sigma[d]
        old_sx1 = sigma[x1]
        old_sy2 = sigma[y2]
        # splice the anchor out of tail(d)'s rotation, re-root it at the
        # new vertex, and hook the two new edges into the old corners
        s[prev_a] = old_sd
        v[d] = V
        s[d] = m1
        s[m1] = m3
        s[m3] = d
        s[x1] = m2
        s[m2] = old_sx1
        s[y2] = m4
        s[m4] = old_sy2
        return PlaneMap(V + 1, s, v)
    raise ValueError(kind)


def inverse_site_darts(child, site):
    """Dart set, in the child, of the reduction undoing ``site``."""
    D = len(child.sigma)
    if site.kind == "D1":
        return (D - 1,)                      # the new pendant's dart
    if site.kind == "P0":
        return (D - 4, D - 2)                # both darts of the new vertex
    return (site.anchor_dart,)               # the (v -> z) dart


# ----------------------------------------------------------------------
# reductions
# ----------------------------------------------------------------------

def _rebuild(q, drop_vertices, drop_edges, extra=None):
    """Rebuild a map from rotations with vertices/edges removed and optional
    inserted edges; ``extra`` maps a vertex to (position dart, new neighbour
    tag) pairs handled by the callers."""
    keep_edge = [e for e in range(q.edge_count) if e not in drop_edges]
    emap = {e: i for i, e in enumerate(keep_edge)}
    vmap = {}
    rots = []
    for v, rot in enumerate(q.rotations()):
        if v in drop_vertices:
            continue
        vmap[v] = len(rots)
        rots.append([2 * emap[d >> 1] + (d & 1) for d in rot
                     if (d >> 1) in emap])
    return rots, vmap, emap


def reduce_at(child, kind, dart):
    """Undo an extension at a reduction site of the child; inverse of
    ``extend``. ``dart`` anchors the site: a pendant dart for D1, any dart of
    the degree-2 vertex for P0, the (v -> z) dart for P1."""
    sigma = child.sigma
    vo = child.vertex_of
    if kind == "D1":
        p = vo[dart]
        e_pend = dart >> 1
        e_del = sigma[dart ^ 1] >> 1
        rots, vmap, emap = _rebuild(child, {p}, {e_pend, e_del})
        return PlaneMap.from_rotation(len(rots), rots)
    if kind == "P0":
        v = vo[dart]
        d2 = sigma[dart]
        rots, vmap, emap = _rebuild(child, {v}, {dart >> 1, d2 >> 1})
        return PlaneMap.from_rotation(len(rots), rots)
    if kind == "P1":
        v, z = vo[dart], vo[dart ^ 1]
        dm = sigma[dart]
        dn = sigma[dm]
        fs = child.faces()
        if len({fs.face_of[dart], fs.face_of[dm], fs.face_of[dn]}) != 3:
            raise NotApplicable("faces around the degree-3 vertex coincide")
        # corner opposite v in the face between the two non-kept neighbours
        da = sigma[sigma[dm] ^ 1] ^ 1
        a = vo[da]
        edges = {dart >> 1, dm >> 1, dn >> 1}
        rots, vmap, emap = _rebuild(child, {v}, edges)
        E2 = len(emap)
        nz, na = 2 * E2, 2 * E2 + 1
        # insert the z-a chord: at z in place of the old (z -> v) dart, at a
        # inside the old corner of the middle face
        zrot = []
        for d in _rotation_from(child, dart ^ 1):
            if d == (dart ^ 1):
                zrot.append(nz)
            elif (d >> 1) in emap:
                zrot.append(2 * emap[d >> 1] + (d & 1))
        rots[vmap[z]] = zrot
        arot = [2 * emap[d >> 1] + (d & 1)
                for d in _rotation_from(child, da) if (d >> 1) in emap]
        rots[vmap[a]] = [arot[0], na] + arot[1:]
        return PlaneMap.from_rotation(len(rots), rots)
    raise ValueError(kind)


def _rotation_from(q, d0):
    out = [d0]
    d = q.sigma[d0]
    while d != d0:
        out.append(d)
        d = q.sigma[d]
    return out


def reduction_sites(q, kind):
    """All applicable reduction sites of one kind, each given as a tuple of
    anchoring darts. Applicability means the reduction yields a valid plane
    quadrangulation, checked structurally."""
    sigma = q.sigma
    vo = q.vertex_of
    deg = q.degrees()
    n = q.vertex_count
    sites = []
    if kind == "D1":
        if n <= 3:
            return []
        for d in range(len(sigma)):
            if deg[vo[d]] == 1:
                # the pendant's face is (p, w, x, w); reducible when the two
                # w-x sides are genuinely parallel edges
                b = sigma[d ^ 1] ^ 1
                c = sigma[b] ^ 1      # face orbit: d, d^1, b, c
                if (b >> 1) != (c >> 1):
                    sites.append((d,))
        return sites
    if kind == "P0":
        if n <= 3:
            return []
        first = {}
        for d in range(len(sigma)):
            v = vo[d]
            if deg[v] == 2 and v not in first:
                first[v] = d
        for v, d in first.items():
            d2 = sigma[d]
            if vo[d ^ 1] != vo[d2 ^ 1]:
                sites.append((d, d2))
        return sites
    if kind == "P1":
        if n <= 3:
            return []
        fs = q.faces()
        for d in range(len(sigma)):
            v = vo[d]
            if deg[v] != 3:
                continue
            dm = sigma[d]
            dn = sigma[dm]
            if len({fs.face_of[d], fs.face_of[dm], fs.face_of[dn]}) != 3:
                continue
            if deg[vo[dm ^ 1]] < 2 or deg[vo[dn ^ 1]] < 2:
                continue
            try:
                reduce_at(q, "P1", d)
            except Exception:
                continue
            sites.append((d,))
        return sites
    raise ValueError(kind)


def canonical_kind(q):
    """First of D1, P0, P1 with a nonempty reduction site list, or None for
    the base path."""
    for kind in ("D1", "P0", "P1"):
        if reduction_sites(q, kind):
            return kind
    return None


def _site_key(q, darts):
    best = None
    for d in darts:
        for rev in (False, True):
            code = bfs_code(q, d, rev)
            if best is None or code < best:
                best = code
    return best


def canonical_accept(child, applied_site):
    """Decide whether ``child = extend(parent, applied_site)`` was built by
    its canonical construction path: the applied kind must equal the child's
    canonical reduction kind, and the inverse of the applied site must lie in
    the automorphism orbit of the canonical site (the site whose rooted code
    is minimal; rooted-code equality characterizes the orbit)."""
    kind = canonical_kind(child)
    if kind != applied_site.kind:
        return False
    sites = reduction_sites(child, kind)
    inv = inverse_site_darts(child, applied_site)
    inv_key = _site_key(child, inv)
    for darts in sites:
        if darts == inv:
            continue
        if _site_key(child, darts) < inv_key:
            return False
    return True


# ----------------------------------------------------------------------
# search
# ----------------------------------------------------------------------

def filter_state(q):
    """(number of degree-1 vertices, size of the largest parallel class)."""
    deg = q.degrees()
    deg1 = sum(1 for x in deg if x == 1)
    classes = {}
    vo = q.vertex_of
    for e in range(q.edge_count):
        u, v = vo[2 * e], vo[2 * e + 1]
        key = (u, v) if u <= v else (v, u)
        classes[key] = classes.get(key, 0) + 1
    return deg1, max(classes.values())


def _moves(q, cf):
    """Orbit representatives of the forward extension sites of ``q``,
    pre-filtered by cheap child-kind predictions (sound: only moves whose
    child would certainly fail canonical_accept are dropped).

    D1 and P1 moves are determined by their anchor dart (attach vertex plus
    edge, resp. deleted edge plus kept head), so plain dart orbits dedupe
    them. A P0 move is an opposite-corner pair of a face; an
    orientation-reversing automorphism sends the corner at dart ``x`` to the
    corner at ``perm[face_prev(x)] ^ 1``, so P0 orbits need that action.
    """
    sigma = q.sigma
    vo = q.vertex_of
    deg = q.degrees()
    orbits = cf.dart_orbits()
    pendants = {v for v in range(q.vertex_count) if deg[v] == 1}
    fs = q.faces()
    reps = sorted(set(orbits))
    out = []
    # nondegenerate degree-2 vertices survive P0/P1 unless bumped
    deg2 = set()
    for v in range(q.vertex_count):
        if deg[v] == 2:
            darts = [d for d in range(len(sigma)) if vo[d] == v]
            if vo[darts[0] ^ 1] != vo[darts[1] ^ 1]:
                deg2.add(v)
    fprev = [0] * len(sigma)
    for d in range(len(sigma)):
        fprev[sigma[d] ^ 1] = d
    corner_acts = []
    for perm, op in cf.automorphisms:
        if op:
            corner_acts.append(perm)
        else:
            corner_acts.append([perm[fprev[x]] ^ 1 for x in range(len(sigma))])
    for r in reps:
        out.append(ExtensionSite("D1", r))
        if (not pendants and fs.face_of[r] != fs.face_of[r ^ 1]
                and deg[vo[r ^ 1]] >= 3 and deg[vo[r]] >= 3):
            x1 = sigma[r] ^ 1
            y2 = sigma[sigma[r ^ 1] ^ 1] ^ 1
            u1, c2 = vo[x1], vo[y2]
            if deg2 <= {u1, c2}:
                if deg[vo[r]] != 3 or _other_edges_parallel(q, vo[r], r):
                    out.append(ExtensionSite("P1", r))
    seen_pairs = set()
    for x in range(len(sigma)):
        o1 = sigma[x] ^ 1
        opp = sigma[o1] ^ 1
        a, c = vo[x], vo[opp]
        if a == c or not pendants <= {a, c}:
            continue
        pair = (x, opp) if x <= opp else (opp, x)
        if pair in seen_pairs:
            continue
        orbit_min = pair
        orbit = []
        for act in corner_acts:
            ix, io = act[x], act[opp]
            p = (ix, io) if ix <= io else (io, ix)
            orbit.append(p)
            if p < orbit_min:
                orbit_min = p
        if orbit_min == pair:
            out.append(ExtensionSite("P0", x))
        seen_pairs.update(orbit)
    return out


def _other_edges_parallel(q, a, d):
    # after P1 deletes edge(d), would vertex a become a *degenerate*
    # degree-2 vertex (both remaining edges to one neighbour)?
    nbrs = [q.vertex_of[e ^ 1] for e in _rotation_from(q, d) if e != d]
    return len(set(nbrs)) == 1


def generate(config, visitor=None):
    """Drive the canonical construction path search and hand every
    isomorphism class of plane quadrangulation with ``target_n`` vertices to
    ``visitor`` exactly once. Returns GenStats."""
    stats = GenStats(config.target_n)
    split_level = min(3 + config.depth, config.target_n)
    counter = [0]

    def recurse(q, n, cf):
        if n == split_level:
            i = counter[0]
            counter[0] += 1
            if i % config.mod != config.res:
                return
        if n == config.target_n:
            deg1, maxpar = filter_state(q)
            if config.max_degree1 is not None and deg1 > config.max_degree1:
                stats.pruned_by_filter[n] += 1
                return
            if config.max_parallel_class is not None and maxpar > config.max_parallel_class:
                stats.pruned_by_filter[n] += 1
                return
            stats.emitted += 1
            if visitor is not None:
                visitor(q)
            return
        if config.max_degree1 is not None:
            deg1, maxpar = filter_state(q)
            if deg1 > max(config.max_degree1, 2):
                stats.pruned_by_filter[n] += 1
                return
            if (config.max_parallel_class is not None
                    and maxpar - (config.target_n - n) > config.max_parallel_class):
                stats.pruned_by_filter[n] += 1
                return
        for site in _moves(q, cf):
            try:
                child = extend(q, site)
            except NotApplicable:
                continue
            stats.generated[n + 1] += 1
            if canonical_accept(child, site):
                stats.accepted[n + 1] += 1
                recurse(child, n + 1, canonical_form(child))
            else:
                stats.rejected_by_canonicity[n + 1] += 1

    root = base_quad()
    recurse(root, 3, canonical_form(root))
    return stats


def count(target_n, **kw):
    """Number of isomorphism classes with ``target_n`` vertices."""
    cfg = GenConfig(target_n, **kw)
    return generate(cfg).emitted


def all_quadrangulations(target_n, **kw):
    """List of all quadrangulations with ``target_n`` vertices."""
    out = []
    cfg = GenConfig(target_n, **kw)
    generate(cfg, out.append)
    return out
