"""Semantic network of noun synsets with hypernym edges and category anchors.

The network bridges two vocabularies: nouns found in captions and the object
labels a detector can emit. Categories ("common terms") are names attached to
synsets; any other noun reaches a category either through an exact lemma match
or through shortest-path similarity over the hypernym graph.
"""

from collections import deque
from dataclasses import dataclass, field

from .config import DEFAULT_TAU
from .errors import TaxonomyParseError, TaxonomyValidationError, UnknownSynsetError


@dataclass(frozen=True)
class Synset:
    """A set of word forms naming one concept."""

    id: str
    lemmas: frozenset[str]
    pos: str = "n"


@dataclass(frozen=True)
class CommonTerm:
    """A category name shared by detector labels and caption nouns."""

    name: str
    supercategory: str
    synset_id: str


class SemanticNetwork:
    """Immutable synset graph with category lookups and path similarity.

    Hypernym edges are stored directed child -> parent but traversed as
    undirected for distance queries. All derived indexes are built once here;
    instances are safe for unrestricted concurrent reads.
    """

    def __init__(self, synsets, hypernym_edges, categories):
        self.synsets: dict[str, Synset] = {s.id: s for s in synsets}
        if len(self.synsets) != len(list(synsets)):
            raise TaxonomyValidationError("duplicate synset ids")
        self.hypernym_edges: frozenset[tuple[str, str]] = frozenset(hypernym_edges)
        self.categories: dict[str, CommonTerm] = {c.name: c for c in categories}
        self._validate()

        adj: dict[str, list[str]] = {sid: [] for sid in self.synsets}
        for child, parent in sorted(self.hypernym_edges):
            adj[child].append(parent)
            adj[parent].append(child)
        self._adjacency = adj

        lemma_index: dict[str, list[str]] = {}
        for sid in sorted(self.synsets):
            for lemma in self.synsets[sid].lemmas:
                lemma_index.setdefault(lemma, []).append(sid)
        self._lemma_to_synsets = lemma_index

        # lemma -> category names whose anchor synset carries that lemma
        by_lemma: dict[str, list[str]] = {}
        for name in sorted(self.categories):
            term = self.categories[name]
            for lemma in self.synsets[term.synset_id].lemmas:
                by_lemma.setdefault(lemma, []).append(name)
        self._categories_by_lemma = by_lemma

    def _validate(self):
        for child, parent in sorted(self.hypernym_edges):
            for endpoint in (child, parent):
                if endpoint not in self.synsets:
                    raise TaxonomyValidationError(
                        f"hypernym edge ({child}, {parent}) references unknown synset {endpoint!r}"
                    )
        for term in self.categories.values():
            if term.synset_id not in self.synsets:
                raise TaxonomyValidationError(
                    f"category {term.name!r} references unknown synset {term.synset_id!r}"
                )
            if not term.supercategory:
                raise TaxonomyValidationError(f"category {term.name!r} has an empty supercategory")
        for s in self.synsets.values():
            if not s.lemmas:
                raise TaxonomyValidationError(f"synset {s.id!r} has no lemmas")

        # Kahn's algorithm on the directed child->parent edges; leftovers form a cycle.
        out = {sid: 0 for sid in self.synsets}
        incoming: dict[str, list[str]] = {sid: [] for sid in self.synsets}
        for child, parent in self.hypernym_edges:
            out[child] += 1
            incoming[parent].append(child)
        queue = deque(sid for sid, n in out.items() if n == 0)
        seen = 0
        while queue:
            sid = queue.popleft()
            seen += 1
            for child in incoming[sid]:
                out[child] -= 1
                if out[child] == 0:
                    queue.append(child)
        if seen != len(self.synsets):
            cyclic = sorted(sid for sid, n in out.items() if n > 0)
            raise TaxonomyValidationError(f"hypernym graph contains a cycle through {cyclic[:5]}")

    # -- distance / similarity ------------------------------------------------

    def _require(self, synset_id):
        if synset_id not in self.synsets:
            raise UnknownSynsetError(synset_id)

    def shortest_path_length(self, a, b):
        """Undirected hop count between two synsets, or None if disconnected.

        Bidirectional BFS: the smaller frontier expands one full level at a
        time; the first level producing meet points yields the minimum sum.
        """
        self._require(a)
        self._require(b)
        if a == b:
            return 0
        adj = self._adjacency
        dist_a, dist_b = {a: 0}, {b: 0}
        frontier_a, frontier_b = [a], [b]
        while frontier_a and frontier_b:
            if len(frontier_a) > len(frontier_b):
                dist_a, dist_b = dist_b, dist_a
                frontier_a, frontier_b = frontier_b, frontier_a
            best = None
            next_frontier = []
            for node in frontier_a:
                d = dist_a[node] + 1
                for nxt in adj[node]:
                    if nxt in dist_a:
                        continue
                    other = dist_b.get(nxt)
                    if other is not None and (best is None or d + other < best):
                        best = d + other
                    dist_a[nxt] = d
                    next_frontier.append(nxt)
            if best is not None:
                return best
            frontier_a = next_frontier
        return None

    def path_similarity(self, a, b):
        """1 / (1 + shortest path length), or None when no path exists.

        Symmetric; equals 1.0 iff a == b.
        """
        d = self.shortest_path_length(a, b)
        if d is None:
            return None
        return 1.0 / (1.0 + d)

    def _distances_from(self, source):
        dist = {source: 0}
        queue = deque([source])
        while queue:
            node = queue.popleft()
            d = dist[node] + 1
            for nxt in self._adjacency[node]:
                if nxt not in dist:
                    dist[nxt] = d
                    queue.append(nxt)
        return dist

    # -- common-term resolution -----------------------------------------------

    def map_to_common_term(self, noun, tau=DEFAULT_TAU):
        """Resolve a normalized noun to a category, or None.

        Resolution order: exact category name, exact lemma of a category's
        synset, then the category whose synset is most path-similar to any
        synset carrying the noun (accepted only at similarity >= tau). Ties
        break toward higher similarity, then smaller category name.
        """
        if noun in self.categories:
            return self.categories[noun]
        by_lemma = self._categories_by_lemma.get(noun)
        if by_lemma:
            return self.categories[by_lemma[0]]
        best_name = None
        best_sim = 0.0
        for sid in self._lemma_to_synsets.get(noun, ()):
            dist = self._distances_from(sid)
            for name in sorted(self.categories):
                d = dist.get(self.categories[name].synset_id)
                if d is None:
                    continue
                sim = 1.0 / (1.0 + d)
                if sim > best_sim or (sim == best_sim and best_name is not None and name < best_name):
                    best_sim, best_name = sim, name
        if best_name is not None and best_sim >= tau:
            return self.categories[best_name]
        return None

    def same_supercategory(self, a, b):
        """True iff two categories share a supercategory string."""
        return self._term(a).supercategory == self._term(b).supercategory

    def rank_candidates(self, term, candidates):
        """Order replacement candidates for a term.

        Keeps candidates sharing the term's supercategory, sorted by
        descending path similarity to the term's synset, then ascending name.
        Returns (CommonTerm, similarity) pairs.
        """
        anchor = self._term(term)
        dist = self._distances_from(anchor.synset_id)
        kept = []
        for cand in candidates:
            cand = self._term(cand)
            if cand.supercategory != anchor.supercategory:
                continue
            d = dist.get(cand.synset_id)
            sim = 0.0 if d is None else 1.0 / (1.0 + d)
            kept.append((cand, sim))
        kept.sort(key=lambda pair: (-pair[1], pair[0].name))
        return kept

    def _term(self, value):
        if isinstance(value, CommonTerm):
            return value
        try:
            return self.categories[value]
        except KeyError:
            raise KeyError(f"unknown category {value!r}") from None


def load_taxonomy(source) -> SemanticNetwork:
    """Parse a taxonomy document into a validated SemanticNetwork.

    `source` is a path or an open text file. The format is line oriented:
    `S <id> <pos> <lemma,lemma,...>` declares a synset, `H <child> <parent>`
    a hypernym edge, `C <name>|<supercategory>|<synset_id>` a category
    (pipe-separated; the name may contain spaces). `#` starts a comment.
    Underscores in lemmas stand for spaces. Validation runs after the whole
    document is read.
    """
    if hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        with open(source, encoding="utf-8") as fh:
            lines = fh.read().splitlines()

    synsets: list[Synset] = []
    seen_ids: set[str] = set()
    edges: set[tuple[str, str]] = set()
    categories: list[CommonTerm] = []
    seen_names: set[str] = set()

    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        kind, _, rest = line.partition(" ")
        if kind == "S":
            parts = rest.split()
            if len(parts) != 3:
                raise TaxonomyParseError(f"synset record needs id, pos and lemmas: {line!r}", line_no)
            sid, pos, lemma_field = parts
            if sid in seen_ids:
                raise TaxonomyParseError(f"duplicate synset id {sid!r}", line_no)
            lemmas = frozenset(
                lemma.replace("_", " ").lower() for lemma in lemma_field.split(",") if lemma
            )
            if not lemmas:
                raise TaxonomyParseError(f"synset {sid!r} has no lemmas", line_no)
            seen_ids.add(sid)
            synsets.append(Synset(id=sid, lemmas=lemmas, pos=pos))
        elif kind == "H":
            parts = rest.split()
            if len(parts) != 2:
                raise TaxonomyParseError(f"hypernym record needs child and parent: {line!r}", line_no)
            edges.add((parts[0], parts[1]))
        elif kind == "C":
            fields = [f.strip() for f in rest.split("|")]
            if len(fields) != 3 or not all(fields):
                raise TaxonomyParseError(
                    f"category record needs name|supercategory|synset_id: {line!r}", line_no
                )
            name, supercategory, synset_id = fields
            if name in seen_names:
                raise TaxonomyParseError(f"duplicate category name {name!r}", line_no)
            seen_names.add(name)
            categories.append(CommonTerm(name=name.lower(), supercategory=supercategory.lower(), synset_id=synset_id))
        else:
            raise TaxonomyParseError(f"unknown record kind {kind!r}", line_no)

    return SemanticNetwork(synsets, edges, categories)
