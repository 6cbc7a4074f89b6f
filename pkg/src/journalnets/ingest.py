"""Parsers, writers and bipartite-to-one-mode projection.

File formats:

* Bipartite CSV: two columns ``journal,entity`` with one header line;
  one row per affiliation (editor, author, or citing article).
* Pajek ``.net``: ``*Vertices n`` block with quoted labels, then an
  optional ``*Edges`` block of ``i j w`` lines (1-based indices, weight
  defaulting to 1).
* Pajek ``.clu``: ``*Vertices n`` followed by one community id per line.
* One-mode edge-list CSV: header ``source,target,weight``.
* Sizes CSV: header ``journal,size``; per-journal entity-set
  cardinalities, used to attach node sizes to one-mode inputs.

All parsers are pure functions of the file contents; all writers return
the full file text.
"""

from __future__ import annotations

import csv
import io
import itertools
import re
from collections import Counter
from pathlib import Path
from typing import Mapping

from .model import BipartiteIncidence, ParseError, Partition, WeightedGraph

BIPARTITE_KINDS = ("ie", "ia", "cc")


def _read_csv_rows(path: str | Path) -> list[tuple[int, list[str]]]:
    """Non-empty CSV rows with their 1-based line numbers."""
    with open(path, encoding="utf-8", newline="") as fh:
        return [
            (lineno, row)
            for lineno, row in enumerate(csv.reader(fh), start=1)
            if row
        ]


def parse_bipartite_csv(path: str | Path, kind: str) -> BipartiteIncidence:
    """Parse a journal,entity affiliation CSV into a BipartiteIncidence.

    ``kind`` names what the entities are (``ie`` editors, ``ia`` authors,
    ``cc`` citing articles); it is validated but does not change parsing.
    Journals and entities keep first-appearance order; duplicate rows
    collapse to a single membership.
    """
    if kind not in BIPARTITE_KINDS:
        raise ValueError(f"kind must be one of {BIPARTITE_KINDS}, got {kind!r}")
    rows = _read_csv_rows(path)
    if not rows:
        raise ParseError(f"{path}: empty file")
    header_line, header = rows[0]
    if len(header) != 2:
        raise ParseError(
            f"{path}: line {header_line}: expected 2 header fields, got {len(header)}"
        )
    if len(rows) == 1:
        raise ParseError(f"{path}: no data rows")
    journals: dict[str, int] = {}
    entities: dict[str, int] = {}
    membership: list[set[int]] = []
    for lineno, row in rows[1:]:
        if len(row) != 2:
            raise ParseError(
                f"{path}: line {lineno}: expected 2 fields, got {len(row)}"
            )
        journal, entity = row
        if not journal or not entity:
            raise ParseError(f"{path}: line {lineno}: empty field")
        if journal not in journals:
            journals[journal] = len(journals)
            membership.append(set())
        if entity not in entities:
            entities[entity] = len(entities)
        membership[journals[journal]].add(entities[entity])
    return BipartiteIncidence(
        tuple(journals),
        tuple(entities),
        tuple(frozenset(m) for m in membership),
    )


def _project(inc: BipartiteIncidence) -> WeightedGraph:
    # weight(i, j) = |N(i) ∩ N(j)|, accumulated entity-by-entity so the
    # cost scales with affiliation-list sizes, not with n^2 set ops.
    entity_journals: dict[int, list[int]] = {}
    for j, members in enumerate(inc.membership):
        for e in members:
            entity_journals.setdefault(e, []).append(j)
    pair_counts: Counter[tuple[int, int]] = Counter()
    for js in entity_journals.values():
        for a, b in itertools.combinations(js, 2):
            pair_counts[(a, b)] += 1
    node_size = tuple(len(m) for m in inc.membership)
    return WeightedGraph(
        inc.journal_labels, dict(sorted(pair_counts.items())), node_size
    )


def project_interlocking(inc: BipartiteIncidence) -> WeightedGraph:
    """One-mode projection where entities are people (editors or authors).

    Edge (i, j) exists iff the journals share at least one person, with
    weight equal to the number of shared people. Journals sharing nobody
    stay in the graph as isolated nodes.
    """
    return _project(inc)


def project_cocitation(inc: BipartiteIncidence) -> WeightedGraph:
    """One-mode projection where entities are citing articles.

    Edge weight (i, j) is the number of articles citing both journals;
    an article citing the same journal several times counts once.
    """
    return _project(inc)


_VERTEX_QUOTED = re.compile(r'^\s*(\d+)\s+"([^"]*)"')
_VERTEX_BARE = re.compile(r"^\s*(\d+)\s+(\S+)\s*$")


def _net_lines(path: str | Path) -> list[tuple[int, str]]:
    text = Path(path).read_text(encoding="utf-8")
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("%"):
            continue
        out.append((lineno, line))
    return out


def parse_pajek_net(path: str | Path) -> WeightedGraph:
    """Parse a Pajek .net file into a WeightedGraph (node_size absent)."""
    lines = _net_lines(path)
    if not lines:
        raise ParseError(f"{path}: empty file")
    lineno, line = lines[0]
    m = re.match(r"^\*vertices\s+(\d+)\s*$", line, re.IGNORECASE)
    if not m:
        raise ParseError(f"{path}: line {lineno}: expected '*Vertices n' header")
    n = int(m.group(1))
    labels: list[str | None] = [None] * n
    idx = 1
    seen_vertices = 0
    while idx < len(lines) and seen_vertices < n:
        lineno, line = lines[idx]
        if line.startswith("*"):
            break
        vm = _VERTEX_QUOTED.match(line) or _VERTEX_BARE.match(line)
        if not vm:
            raise ParseError(f"{path}: line {lineno}: malformed vertex line")
        v = int(vm.group(1))
        if not 1 <= v <= n:
            raise ParseError(f"{path}: line {lineno}: vertex index {v} out of range")
        if labels[v - 1] is not None:
            raise ParseError(f"{path}: line {lineno}: duplicate vertex {v}")
        labels[v - 1] = vm.group(2)
        seen_vertices += 1
        idx += 1
    if seen_vertices != n:
        raise ParseError(f"{path}: expected {n} vertex lines, found {seen_vertices}")

    edges: dict[tuple[int, int], int] = {}
    in_edges = False
    for lineno, line in lines[idx:]:
        if line.startswith("*"):
            if re.match(r"^\*edges\s*$", line, re.IGNORECASE):
                if in_edges:
                    raise ParseError(f"{path}: line {lineno}: duplicate *Edges section")
                in_edges = True
                continue
            raise ParseError(f"{path}: line {lineno}: unknown section header {line!r}")
        if not in_edges:
            raise ParseError(f"{path}: line {lineno}: data outside any section")
        parts = line.split()
        if len(parts) < 2:
            raise ParseError(f"{path}: line {lineno}: malformed edge line")
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ParseError(f"{path}: line {lineno}: malformed edge line") from exc
        w = _parse_weight(parts[2], path, lineno) if len(parts) >= 3 else 1
        for v in (i, j):
            if not 1 <= v <= n:
                raise ParseError(
                    f"{path}: line {lineno}: vertex index {v} out of range"
                )
        if i == j:
            raise ParseError(f"{path}: line {lineno}: self-loop at vertex {i}")
        pair = (min(i, j) - 1, max(i, j) - 1)
        if pair in edges and edges[pair] != w:
            raise ParseError(
                f"{path}: line {lineno}: duplicate edge {i}-{j} with "
                f"conflicting weight ({edges[pair]} vs {w})"
            )
        edges[pair] = w
    return WeightedGraph(tuple(labels), dict(sorted(edges.items())))  # type: ignore[arg-type]


def _parse_weight(tok: str, path: str | Path, lineno: int) -> int:
    try:
        w = float(tok)
    except ValueError as exc:
        raise ParseError(f"{path}: line {lineno}: malformed weight {tok!r}") from exc
    if not w.is_integer() or w < 1:
        raise ParseError(
            f"{path}: line {lineno}: weight {tok!r} is not a positive integer count"
        )
    return int(w)


def _check_label_writable(label: str) -> None:
    if '"' in label or "\n" in label or "\r" in label:
        raise ValueError(f"label {label!r} cannot be written to Pajek format")


def write_pajek_net(graph: WeightedGraph) -> str:
    """Render a WeightedGraph as Pajek .net text (node sizes are not
    representable and are dropped)."""
    out = [f"*Vertices {graph.n}"]
    for i, lab in enumerate(graph.node_labels, start=1):
        _check_label_writable(lab)
        out.append(f'{i} "{lab}"')
    out.append("*Edges")
    for (i, j), w in sorted(graph.edges.items()):
        out.append(f"{i + 1} {j + 1} {w}")
    return "\n".join(out) + "\n"


def write_pajek_clu(partition: Partition) -> str:
    out = [f"*Vertices {partition.n_nodes}"]
    out.extend(str(c) for c in partition.assignment)
    return "\n".join(out) + "\n"


def parse_pajek_clu(path: str | Path, n: int) -> Partition:
    """Parse a Pajek .clu file carrying exactly ``n`` community ids.

    Zero-based ids from external tools are accepted and shifted to
    1-based; ids must be contiguous either way.
    """
    lines = _net_lines(path)
    if not lines:
        raise ParseError(f"{path}: empty file")
    lineno, line = lines[0]
    m = re.match(r"^\*vertices\s+(\d+)\s*$", line, re.IGNORECASE)
    if not m:
        raise ParseError(f"{path}: line {lineno}: expected '*Vertices n' header")
    declared = int(m.group(1))
    ids = []
    for lineno, line in lines[1:]:
        try:
            ids.append(int(line))
        except ValueError as exc:
            raise ParseError(
                f"{path}: line {lineno}: expected a community id, got {line!r}"
            ) from exc
    if declared != len(ids) or len(ids) != n:
        raise ParseError(
            f"{path}: partition length mismatch: expected {n} ids, "
            f"got {len(ids)} (header says {declared})"
        )
    if ids and min(ids) == 0:
        ids = [c + 1 for c in ids]
    try:
        return Partition(tuple(ids))
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def write_edgelist_csv(graph: WeightedGraph) -> str:
    """Render edges as a labeled source,target,weight CSV.

    Lossy for isolated nodes; meant for external visualization. Use the
    Pajek .net format to round-trip full graphs.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["source", "target", "weight"])
    for (i, j), w in sorted(graph.edges.items()):
        writer.writerow([graph.node_labels[i], graph.node_labels[j], w])
    return buf.getvalue()


def parse_edgelist_csv(path: str | Path) -> WeightedGraph:
    """Parse a source,target,weight CSV; node order is first appearance."""
    rows = _read_csv_rows(path)
    if not rows:
        raise ParseError(f"{path}: empty file")
    header_line, header = rows[0]
    if len(header) != 3:
        raise ParseError(
            f"{path}: line {header_line}: expected 3 header fields, got {len(header)}"
        )
    labels: dict[str, int] = {}
    edges: dict[tuple[int, int], int] = {}
    for lineno, row in rows[1:]:
        if len(row) != 3:
            raise ParseError(
                f"{path}: line {lineno}: expected 3 fields, got {len(row)}"
            )
        src, dst, wtok = row
        if not src or not dst:
            raise ParseError(f"{path}: line {lineno}: empty field")
        if src == dst:
            raise ParseError(f"{path}: line {lineno}: self-loop at {src!r}")
        w = _parse_weight(wtok, path, lineno)
        for lab in (src, dst):
            if lab not in labels:
                labels[lab] = len(labels)
        pair = (labels[src], labels[dst])
        if pair[0] > pair[1]:
            pair = (pair[1], pair[0])
        if pair in edges and edges[pair] != w:
            raise ParseError(
                f"{path}: line {lineno}: duplicate edge {src!r}-{dst!r} with "
                f"conflicting weight ({edges[pair]} vs {w})"
            )
        edges[pair] = w
    return WeightedGraph(tuple(labels), dict(sorted(edges.items())))


def parse_sizes_csv(path: str | Path) -> dict[str, int]:
    """Parse a journal,size CSV into a label -> |N(i)| mapping."""
    rows = _read_csv_rows(path)
    if not rows:
        raise ParseError(f"{path}: empty file")
    header_line, header = rows[0]
    if len(header) != 2:
        raise ParseError(
            f"{path}: line {header_line}: expected 2 header fields, got {len(header)}"
        )
    sizes: dict[str, int] = {}
    for lineno, row in rows[1:]:
        if len(row) != 2:
            raise ParseError(
                f"{path}: line {lineno}: expected 2 fields, got {len(row)}"
            )
        journal, tok = row
        try:
            size = int(tok)
        except ValueError as exc:
            raise ParseError(f"{path}: line {lineno}: malformed size {tok!r}") from exc
        if size < 0:
            raise ParseError(f"{path}: line {lineno}: negative size")
        if journal in sizes:
            raise ParseError(f"{path}: line {lineno}: duplicate journal {journal!r}")
        sizes[journal] = size
    return sizes


def with_node_sizes(graph: WeightedGraph, sizes: Mapping[str, int]) -> WeightedGraph:
    """Attach per-node entity-set sizes to a graph parsed from one-mode data."""
    missing = [lab for lab in graph.node_labels if lab not in sizes]
    if missing:
        raise ValueError(
            "sizes missing for: " + ", ".join(repr(m) for m in missing[:5])
        )
    return WeightedGraph(
        graph.node_labels,
        graph.edges,
        tuple(int(sizes[lab]) for lab in graph.node_labels),
    )
