"""Bibliographic record ingestion and research-network construction.

Records arrive as JSON lines with fields id, year, authors, and optionally
title, venue, cited. Three network builds are supported: coauthor (directed
author-order arcs, self-loop for a sole author), citation (validated DAG),
and a heterogeneous graph mixing author, paper, and venue nodes under typed
relation labels.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .graph import Graph, build_graph

AUTHOR_PREFIX = "author:"
PAPER_PREFIX = "paper:"
VENUE_PREFIX = "venue:"


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    year: int
    authors: tuple[str, ...]
    title: str = ""
    venue: str = ""
    cited: tuple[str, ...] = ()


@dataclass(frozen=True)
class ParseResult:
    records: tuple[PaperRecord, ...]
    errors: tuple[tuple[int, str], ...]


def _token(value, name: str) -> str:
    if not isinstance(value, str) or not value or any(ch.isspace() for ch in value):
        raise ValueError(f"{name} must be a non-empty token without whitespace")
    return value


def parse_records(source: str | Iterable[str]) -> ParseResult:
    """Parse JSON-lines records; bad lines become error entries, not stops."""
    lines = source.splitlines() if isinstance(source, str) else source
    records: list[PaperRecord] = []
    errors: list[tuple[int, str]] = []
    seen_ids: set[str] = set()
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
            if not isinstance(obj, dict):
                raise ValueError("record must be a JSON object")
            paper_id = _token(obj.get("id"), "id")
            year = obj.get("year")
            if isinstance(year, bool) or not isinstance(year, int):
                raise ValueError("year must be an integer")
            authors_raw = obj.get("authors")
            if not isinstance(authors_raw, list) or not authors_raw:
                raise ValueError("authors must be a nonempty list")
            authors = []
            for a in authors_raw:
                a = _token(a, "author")
                if a not in authors:
                    authors.append(a)
            title = obj.get("title", "")
            if not isinstance(title, str):
                raise ValueError("title must be a string")
            venue = obj.get("venue", "")
            if venue and not isinstance(venue, str):
                raise ValueError("venue must be a string")
            cited_raw = obj.get("cited", [])
            if not isinstance(cited_raw, list):
                raise ValueError("cited must be a list")
            cited = []
            for c in cited_raw:
                c = _token(c, "cited id")
                if c not in cited:
                    cited.append(c)
            if paper_id in seen_ids:
                raise ValueError(f"duplicate paper id {paper_id!r}")
        except json.JSONDecodeError as exc:
            errors.append((lineno, f"invalid JSON: {exc.msg}"))
            continue
        except ValueError as exc:
            errors.append((lineno, str(exc)))
            continue
        seen_ids.add(paper_id)
        records.append(PaperRecord(paper_id, year, tuple(authors), title, venue or "", tuple(cited)))
    return ParseResult(tuple(records), tuple(errors))


def _ordered_author_pairs(authors: Sequence[str]) -> list[tuple[str, str]]:
    if len(authors) == 1:
        return [(authors[0], authors[0])]
    return [(authors[i], authors[j]) for i in range(len(authors)) for j in range(i + 1, len(authors))]


def build_coauthor_network(records: Sequence[PaperRecord]) -> Graph:
    """One arc per ordered author pair per paper; repeats stay as parallel arcs."""
    nodes: set[str] = set()
    arcs: list[tuple[str, str]] = []
    for rec in records:
        nodes.update(rec.authors)
        arcs.extend(_ordered_author_pairs(rec.authors))
    relations = {i: "coauthor" for i in range(len(arcs))}
    return build_graph(nodes, arcs, directed=True, relations=relations)


@dataclass(frozen=True)
class CitationNetwork:
    graph: Graph
    dangling_count: int
    dropped_arcs: tuple[tuple[str, str, str], ...] = ()


def _find_cycle(nodes: list[str], out: dict[str, list[str]]) -> list[str]:
    """One directed cycle as a node sequence; assumes at least one exists."""
    color: dict[str, int] = {}
    parent: dict[str, str] = {}
    for start in nodes:
        if color.get(start):
            continue
        stack = [(start, iter(out.get(start, ())))]
        color[start] = 1
        while stack:
            v, it = stack[-1]
            advanced = False
            for w in it:
                if color.get(w) == 1:
                    cycle = [w, v]
                    cur = v
                    while cur != w:
                        cur = parent[cur]
                        cycle.append(cur)
                    cycle.pop()
                    cycle.reverse()
                    return cycle
                if not color.get(w):
                    color[w] = 1
                    parent[w] = v
                    stack.append((w, iter(out.get(w, ()))))
                    advanced = True
                    break
            if not advanced:
                color[v] = 2
                stack.pop()
    raise AssertionError("no cycle found")


def _is_dag(nodes: list[str], arcs: list[tuple[str, str]]) -> bool:
    indeg = {v: 0 for v in nodes}
    out: dict[str, list[str]] = {v: [] for v in nodes}
    for u, v in arcs:
        indeg[v] += 1
        out[u].append(v)
    queue = [v for v in nodes if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(nodes)


def build_citation_network(records: Sequence[PaperRecord], strict: bool = False) -> CitationNetwork:
    """Arcs citing -> cited among in-corpus papers, validated acyclic.

    An arc citing a strictly later year, or completing a cycle, violates the
    publication order: strict mode rejects the corpus naming the offender,
    lenient mode drops the arc and records it. Same-year citations pass.
    """
    by_id = {rec.paper_id: rec for rec in records}
    nodes = sorted(by_id)
    dangling = 0
    arcs: list[tuple[str, str]] = []
    dropped: list[tuple[str, str, str]] = []
    for rec in records:
        for cited in rec.cited:
            if cited not in by_id:
                dangling += 1
                continue
            if by_id[rec.paper_id].year < by_id[cited].year:
                reason = (
                    f"cites a later paper ({rec.paper_id} year {rec.year} -> "
                    f"{cited} year {by_id[cited].year})"
                )
                if strict:
                    raise ValueError(f"citation order violation: {reason}")
                dropped.append((rec.paper_id, cited, reason))
                continue
            arcs.append((rec.paper_id, cited))
    while not _is_dag(nodes, arcs):
        out: dict[str, list[str]] = {v: [] for v in nodes}
        for u, v in arcs:
            out[u].append(v)
        for v in out:
            out[v].sort()
        cycle = _find_cycle(nodes, out)
        pretty = " -> ".join(cycle + [cycle[0]])
        if strict:
            raise ValueError(f"citation cycle: {pretty}")
        u, v = cycle[0], cycle[1 % len(cycle)]
        arcs.remove((u, v))
        dropped.append((u, v, f"breaks cycle {pretty}"))
    relations = {i: "cite" for i in range(len(arcs))}
    graph = build_graph(nodes, arcs, directed=True, relations=relations)
    return CitationNetwork(graph, dangling, tuple(dropped))


def build_heterogeneous_network(records: Sequence[PaperRecord]) -> Graph:
    """Author, paper, and venue nodes joined by typed arcs.

    Node kind is encoded in an id prefix. Citations to papers outside the
    corpus are omitted.
    """
    by_id = {rec.paper_id: rec for rec in records}
    nodes: set[str] = set()
    arcs: list[tuple[str, str]] = []
    labels: list[str] = []

    def arc(u: str, v: str, label: str) -> None:
        arcs.append((u, v))
        labels.append(label)

    for rec in records:
        paper = PAPER_PREFIX + rec.paper_id
        nodes.add(paper)
        for a in rec.authors:
            nodes.add(AUTHOR_PREFIX + a)
            arc(AUTHOR_PREFIX + a, paper, "authorOf")
        for u, v in _ordered_author_pairs(rec.authors):
            arc(AUTHOR_PREFIX + u, AUTHOR_PREFIX + v, "coauthor")
        if rec.venue:
            nodes.add(VENUE_PREFIX + rec.venue)
            arc(paper, VENUE_PREFIX + rec.venue, "publishedIn")
        for cited in rec.cited:
            if cited in by_id:
                arc(paper, PAPER_PREFIX + cited, "cite")
    relations = {i: label for i, label in enumerate(labels)}
    return build_graph(nodes, arcs, directed=True, relations=relations)


@dataclass(frozen=True)
class MotifCensus:
    counts: dict[str, int] = field(default_factory=dict)

    def total(self) -> int:
        return sum(self.counts.values())


def motif_label(author_count: int) -> str:
    if author_count == 1:
        return "loop"
    if author_count == 2:
        return "edge"
    if author_count == 3:
        return "triangle"
    return f"K{author_count}"


def motif_census(records: Sequence[PaperRecord]) -> MotifCensus:
    """Classify each paper by its coauthor pattern size."""
    counts = Counter(motif_label(len(rec.authors)) for rec in records)
    return MotifCensus(dict(sorted(counts.items())))


def cumulative_coauthor_snapshots(records: Sequence[PaperRecord]) -> list[tuple[str, Graph]]:
    """Coauthor networks accumulated year by year, one snapshot per year seen."""
    years = sorted({rec.year for rec in records})
    snapshots = []
    for year in years:
        subset = [rec for rec in records if rec.year <= year]
        snapshots.append((str(year), build_coauthor_network(subset)))
    return snapshots
