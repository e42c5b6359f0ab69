"""Independent oracles used to cross-check the library's graph code.

Everything here re-derives answers straight from the taxonomy file with its
own parser and a plain breadth-first search, so it shares no code paths with
the implementation it checks.
"""

from collections import deque


def parse_taxonomy_file(path):
    """Minimal independent parse: (synset_ids, undirected adjacency, categories).

    categories maps name -> (supercategory, synset_id).
    """
    ids = set()
    adjacency = {}
    categories = {}
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            kind, _, rest = line.partition(" ")
            if kind == "S":
                sid = rest.split()[0]
                ids.add(sid)
                adjacency.setdefault(sid, set())
            elif kind == "H":
                child, parent = rest.split()
                adjacency.setdefault(child, set()).add(parent)
                adjacency.setdefault(parent, set()).add(child)
            elif kind == "C":
                name, supercategory, sid = (f.strip() for f in rest.split("|"))
                categories[name.lower()] = (supercategory.lower(), sid)
    return ids, adjacency, categories


def bfs_distances(adjacency, source):
    """Hop distances from source over an undirected adjacency dict."""
    dist = {source: 0}
    queue = deque([source])
    while queue:
        node = queue.popleft()
        for neighbour in adjacency.get(node, ()):
            if neighbour not in dist:
                dist[neighbour] = dist[node] + 1
                queue.append(neighbour)
    return dist
