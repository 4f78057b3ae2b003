r"""
Stream codecs for maps.

Three formats are supported:

* ``planar_code``: header ``>>planar_code<<``, then per map one byte with the
  vertex count (0 + two little-endian bytes when >= 255) followed, for each
  vertex, by its 1-based neighbours in rotation order, 0-terminated. Compact
  and plantri-compatible, but the embedding of parallel edges cannot always
  be reconstructed and loops cannot be written at all.
* ``edge_code``: header ``>>edge_code<<``, then per map a body length byte
  (255 + four little-endian bytes when >= 255) and a body listing, for each
  vertex in rotation order, its incident 0-based edge indices (loops appear
  twice), vertex lists separated by 0xFF with no trailing separator.
  Faithful for any map, loops included.
* ``lopsp_text``: line oriented UTF-8 records for marked coloured maps
  (operations and predecorations), see ``write_lopsp_record``.
"""

from .maps import PlaneMap, MapError

PLANAR_HEADER = b">>planar_code<<"
EDGE_HEADER = b">>edge_code<<"


class UnknownHeader(MapError):
    pass


class TruncatedRecord(MapError):
    pass


class InconsistentRotation(MapError):
    pass


# ----------------------------------------------------------------------
# planar_code
# ----------------------------------------------------------------------

def encode_planar(m):
    """planar_code body of one map. Loops are rejected; parallel edges are
    written but flagged lossy (use edge_code when fidelity matters)."""
    if m.has_loop():
        raise InconsistentRotation("planar_code cannot represent loops")
    n = m.vertex_count
    out = bytearray()
    if n >= 255:
        out.append(0)
        out += n.to_bytes(2, "little")
    else:
        out.append(n)
    vo = m.vertex_of
    for rot in m.rotations():
        for d in rot:
            out.append(vo[d ^ 1] + 1)
        out.append(0)
    return bytes(out)


def _match_parallel(u_slots, v_slots):
    # pair i-th occurrence at u with the reverse occurrence at v; the
    # planar pairing of a parallel class reverses the cyclic order
    return list(zip(u_slots, reversed(v_slots)))


def decode_planar(body, offset=0):
    """Decode one planar_code record starting at ``offset``; returns
    ``(PlaneMap, next_offset)``.

    Parallel edges make planar_code ambiguous: several non-isomorphic plane
    maps can share the same bytes. Each parallel class is re-embedded by a
    cyclic-order-reversing matching (forced by planarity) and among all
    genus-0 choices the embedding with the lexicographically largest sorted
    face-size profile is returned, which in particular recovers the unique
    all-faces-equal embedding of quadrangulation streams.
    """
    if offset >= len(body):
        raise TruncatedRecord("empty record")
    n = body[offset]
    offset += 1
    if n == 0:
        if offset + 2 > len(body):
            raise TruncatedRecord("truncated wide vertex count")
        n = int.from_bytes(body[offset:offset + 2], "little")
        offset += 2
    nbrs = []
    for v in range(n):
        lst = []
        while True:
            if offset >= len(body):
                raise TruncatedRecord("record ends inside vertex %d" % v)
            b = body[offset]
            offset += 1
            if b == 0:
                break
            if not 1 <= b <= n:
                raise InconsistentRotation("neighbour %d out of range" % b)
            lst.append(b - 1)
        nbrs.append(lst)
    # slot (v, i) is the i-th dart around v; pair slots into edges
    deg = [len(l) for l in nbrs]
    if sum(deg) % 2:
        raise InconsistentRotation("odd dart count")
    slot_id = []
    base = [0] * n
    t = 0
    for v in range(n):
        base[v] = t
        t += deg[v]
    pair = [-1] * t

    occ = {}
    for v in range(n):
        for i, u in enumerate(nbrs[v]):
            if u == v:
                raise InconsistentRotation("planar_code carries no loops")
            key = (min(u, v), max(u, v))
            occ.setdefault(key, ([], []))[0 if v == key[0] else 1].append(base[v] + i)
    classes = []
    for (u, v), (su, sv) in occ.items():
        if len(su) != len(sv):
            raise InconsistentRotation("mismatched multiplicity %d-%d" % (u, v))
        classes.append((su, sv))

    def build(assignments):
        for su, sv, shift in assignments:
            k = len(su)
            for i in range(k):
                a, b = su[i], sv[(shift - i) % k]
                pair[a], pair[b] = b, a
        rotations = []
        dart_of_slot = [0] * t
        nd = 0
        seen = [False] * t
        for s in range(t):
            if seen[s]:
                continue
            seen[s] = seen[pair[s]] = True
            dart_of_slot[s] = nd
            dart_of_slot[pair[s]] = nd + 1
            nd += 2
        for v in range(n):
            rotations.append([dart_of_slot[base[v] + i] for i in range(deg[v])])
        return PlaneMap.from_rotation(n, rotations, planar=False)

    amb = [i for i, (su, sv) in enumerate(classes) if len(su) > 1]
    shifts = [0] * len(classes)
    best = None
    best_profile = None
    budget = [10000]

    def attempt(k):
        nonlocal best, best_profile
        if budget[0] <= 0:
            return
        if k == len(amb):
            budget[0] -= 1
            m = build([(su, sv, shifts[i]) for i, (su, sv) in enumerate(classes)])
            if m.genus() != 0:
                return
            profile = sorted(m.faces().sizes())
            if best is None or profile > best_profile:
                best, best_profile = m, profile
            return
        for s in range(len(classes[amb[k]][0])):
            shifts[amb[k]] = s
            attempt(k + 1)

    attempt(0)
    if best is None:
        raise InconsistentRotation("no plane embedding matches the code")
    return best, offset


# ----------------------------------------------------------------------
# edge_code
# ----------------------------------------------------------------------

def encode_edge(m):
    """edge_code body of one map (exact for loops and parallel edges)."""
    body = bytearray()
    if m.edge_count > 255:
        raise InconsistentRotation("edge_code bytes limited to 255 edges")
    for v, rot in enumerate(m.rotations()):
        if v:
            body.append(0xFF)
        for d in rot:
            body.append(d >> 1)
    out = bytearray()
    if len(body) >= 255:
        out.append(255)
        out += len(body).to_bytes(4, "little")
    else:
        out.append(len(body))
    out += body
    return bytes(out)


def decode_edge(body, offset=0):
    """Decode one edge_code record; returns ``(PlaneMap, next_offset)``."""
    if offset >= len(body):
        raise TruncatedRecord("empty record")
    ln = body[offset]
    offset += 1
    if ln == 255:
        if offset + 4 > len(body):
            raise TruncatedRecord("truncated wide length")
        ln = int.from_bytes(body[offset:offset + 4], "little")
        offset += 4
    if offset + ln > len(body):
        raise TruncatedRecord("record body exceeds stream")
    chunk = body[offset:offset + ln]
    offset += ln
    lists = [[]]
    for b in chunk:
        if b == 0xFF:
            lists.append([])
        else:
            lists[-1].append(b)
    used = {}
    rotations = []
    for lst in lists:
        rot = []
        for e in lst:
            k = used.get(e, 0)
            used[e] = k + 1
            if k >= 2:
                raise InconsistentRotation("edge %d used more than twice" % e)
            rot.append(2 * e + k)
        rotations.append(rot)
    if any(v != 2 for v in used.values()):
        raise InconsistentRotation("some edge appears only once")
    edges = sorted(used)
    if edges != list(range(len(edges))):
        raise InconsistentRotation("edge indices not contiguous")
    return PlaneMap.from_rotation(len(rotations), rotations, planar=False), offset


# ----------------------------------------------------------------------
# streams
# ----------------------------------------------------------------------

def write_stream(maps, fmt, fh):
    """Write a header plus one record per map to a binary file object."""
    if fmt == "planar_code":
        fh.write(PLANAR_HEADER)
        for m in maps:
            fh.write(encode_planar(m))
    elif fmt == "edge_code":
        fh.write(EDGE_HEADER)
        for m in maps:
            fh.write(encode_edge(m))
    else:
        raise ValueError("unknown format %r" % fmt)


def read_stream(data):
    """Decode a whole stream (header audodetected); returns a list of maps."""
    if data.startswith(PLANAR_HEADER):
        decode, offset = decode_planar, len(PLANAR_HEADER)
    elif data.startswith(EDGE_HEADER):
        decode, offset = decode_edge, len(EDGE_HEADER)
    else:
        raise UnknownHeader("stream must start with >>planar_code<< or >>edge_code<<")
    out = []
    while offset < len(data):
        m, offset = decode(data, offset)
        out.append(m)
    return out


# ----------------------------------------------------------------------
# lopsp_text
# ----------------------------------------------------------------------

def write_lopsp_record(m, colour, marks, kind, k=None, v1_colour1=None,
                       flags=None):
    """One lopsp_text record for a marked coloured map.

    ``kind`` is "lopsp" (needs ``k``) or "predeco" (needs ``v1_colour1``);
    ``marks`` is the triple (v0, v1, v2); ``flags`` an optional dict written
    as a trailing comment, e.g. {"c2": True}.
    """
    lines = []
    if kind == "lopsp":
        lines.append("lopsp k=%d" % k)
    elif kind == "predeco":
        lines.append("predeco v1c1=%d" % (1 if v1_colour1 else 0))
    else:
        raise ValueError(kind)
    lines.append("vertices %d" % m.vertex_count)
    for v, rot in enumerate(m.rotations()):
        lines.append("v%d c=%d rot=%s" % (v, colour[v], ",".join(str(d) for d in rot)))
    lines.append("marks v0=%d v1=%d v2=%d" % marks)
    if flags:
        lines.append("# " + " ".join("%s=%d" % (kk, 1 if vv else 0)
                                     for kk, vv in flags.items()))
    return "\n".join(lines) + "\n\n"


def parse_lopsp_records(text):
    """Parse lopsp_text; yields dicts with map, colour, marks, kind and the
    record header value (k or v1_colour1). Comment lines are ignored."""
    out = []
    block = []
    for raw in text.splitlines() + [""]:
        line = raw.strip()
        if not line:
            if block:
                out.append(_parse_block(block))
                block = []
            continue
        if line.startswith("#"):
            continue
        block.append(line)
    return out


def _parse_block(lines):
    head = lines[0].split()
    rec = {}
    if head[0] == "lopsp":
        rec["kind"] = "lopsp"
        rec["k"] = int(head[1].split("=")[1])
    elif head[0] == "predeco":
        rec["kind"] = "predeco"
        rec["v1_colour1"] = bool(int(head[1].split("=")[1]))
    else:
        raise UnknownHeader("bad record header %r" % lines[0])
    if not lines[1].startswith("vertices "):
        raise TruncatedRecord("missing vertex count")
    n = int(lines[1].split()[1])
    colour = [0] * n
    rotations = [None] * n
    for line in lines[2:2 + n]:
        parts = line.split()
        if not parts[0].startswith("v"):
            raise TruncatedRecord("expected vertex line, got %r" % line)
        v = int(parts[0][1:])
        colour[v] = int(parts[1].split("=")[1])
        rotations[v] = [int(x) for x in parts[2].split("=")[1].split(",")]
    marks_line = lines[2 + n].split()
    if marks_line[0] != "marks":
        raise TruncatedRecord("missing marks line")
    marks = tuple(int(p.split("=")[1]) for p in marks_line[1:4])
    rec["map"] = PlaneMap.from_rotation(n, rotations)
    rec["colour"] = colour
    rec["marks"] = marks
    return rec
