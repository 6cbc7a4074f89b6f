"""Study driver: three networks in, three result tables out.

For one field this runs the full pipeline (parse, project, align,
communities, dissimilarities, distance correlations, partition
associations) and writes:

* ``networks.csv``: per-network descriptives and community statistics,
* ``correlations.csv``: per-pair sqrt(rd), permutation p, Bonferroni decision,
* ``associations.csv``: per-pair partition association indices,
* ``provenance.json``: config echo, derived seeds, software version,
* per network: ``<key>.net``, ``<key>_edges.csv``, ``<key>.clu``.

Outputs are staged in a temporary directory and promoted only when every
stage succeeds; a failed stage aborts with its name. With all seeds
fixed the output bytes are identical across runs and worker counts.
"""

from __future__ import annotations

import dataclasses
import json
import os
import shutil
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .association import assoc_report
from .communities import louvain, network_stats
from .config import NETWORK_KEYS, NetworkSettings, StudyConfig
from .dissimilarity import dissim_from_graph, dissim_from_incidence
from .distcorr import bonferroni_gate, perm_test
from .ingest import (
    parse_bipartite_csv,
    parse_edgelist_csv,
    parse_pajek_net,
    parse_sizes_csv,
    project_cocitation,
    project_interlocking,
    with_node_sizes,
    write_edgelist_csv,
    write_pajek_clu,
    write_pajek_net,
)
from .model import (
    AssocReport,
    CommunityStats,
    DcorResult,
    DissimMatrix,
    NetworkStats,
    Partition,
    WeightedGraph,
    reindex_graph,
    reindex_incidence,
)

CORRELATION_PAIRS = (("cc", "ie"), ("cc", "ia"), ("ie", "ia"))
ASSOCIATION_PAIRS = (("ie", "cc"), ("ie", "ia"), ("cc", "ia"))


class StageError(RuntimeError):
    """A pipeline stage failed; the message names the stage."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage


@contextmanager
def _stage(name: str):
    try:
        yield
    except StageError:
        raise
    except Exception as exc:
        raise StageError(name, exc) from exc


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write via a sibling temp file + rename so failures leave no
    partial output behind."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


@dataclass(frozen=True)
class NetworkResult:
    graph: WeightedGraph
    dissim: DissimMatrix
    partition: Partition
    net_stats: NetworkStats
    comm_stats: CommunityStats


def _load_network(key: str, settings: NetworkSettings):
    """Returns (graph, incidence-or-None) per the configured input kind."""
    if settings.kind == "bipartite":
        inc = parse_bipartite_csv(settings.path, key)
        project = project_cocitation if key == "cc" else project_interlocking
        return project(inc), inc
    graph = (
        parse_edgelist_csv(settings.path)
        if settings.path.endswith(".csv")
        else parse_pajek_net(settings.path)
    )
    if settings.sizes is not None:
        graph = with_node_sizes(graph, parse_sizes_csv(settings.sizes))
    return graph, None


def pair_seeds(master_seed: int) -> dict[str, int]:
    """One derived integer seed per correlation pair, in table order."""
    state = np.random.SeedSequence(master_seed).generate_state(
        len(CORRELATION_PAIRS)
    )
    return {
        f"{a}_vs_{b}": int(s) for (a, b), s in zip(CORRELATION_PAIRS, state)
    }


def _fmt(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _csv_table(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


def networks_table(results: dict[str, NetworkResult]) -> str:
    header = [
        "network", "density", "average_degree", "isolated_journals",
        "resolution", "modularity", "n_communities",
        "n_non_isolated_communities", "ei_unweighted", "ei_weighted",
    ]
    rows = []
    for key in NETWORK_KEYS:
        r = results[key]
        rows.append([
            key, r.net_stats.density, r.net_stats.average_degree,
            r.net_stats.isolated_count, r.comm_stats.resolution,
            r.comm_stats.modularity, r.comm_stats.n_communities,
            r.comm_stats.n_non_isolated_communities,
            r.comm_stats.ei_unweighted, r.comm_stats.ei_weighted,
        ])
    return _csv_table(header, rows)


def correlations_table(
    dcor_results: dict[str, DcorResult], alpha: float, family_size: int
) -> str:
    header = ["pair", "sqrt_rd", "p_value", "reject_bonferroni"]
    pairs = [f"{a}_vs_{b}" for a, b in CORRELATION_PAIRS]
    decisions = bonferroni_gate(
        [dcor_results[p].p_value for p in pairs], alpha, family_size
    )
    rows = [
        [p, dcor_results[p].sqrt_rd, dcor_results[p].p_value, str(rej).lower()]
        for p, rej in zip(pairs, decisions)
    ]
    return _csv_table(header, rows)


def associations_table(reports: dict[str, AssocReport]) -> str:
    header = [
        "pair", "chi2", "df", "cramers_v", "rajski_sym",
        "rajski_right", "rajski_left", "adjusted_rand",
    ]
    rows = []
    for a, b in ASSOCIATION_PAIRS:
        key = f"{a}_vs_{b}"
        r = reports[key]
        rows.append([
            key, r.chi2, r.df, r.cramers_v, r.rajski_sym,
            r.rajski_right, r.rajski_left, r.ari,
        ])
    return _csv_table(header, rows)


def run_study(config: StudyConfig, out_dir: str | Path, workers: int = 1) -> list[str]:
    """Run the whole pipeline for one field; returns the written file names."""
    out_dir = Path(out_dir)
    out_dir.parent.mkdir(parents=True, exist_ok=True)

    results: dict[str, NetworkResult] = {}
    graphs: dict[str, WeightedGraph] = {}
    incidences: dict[str, object] = {}

    for key in NETWORK_KEYS:
        with _stage(f"load {key}"):
            graphs[key], incidences[key] = _load_network(key, config.networks[key])

    with _stage("align labels"):
        labels = graphs["ie"].node_labels
        for key in NETWORK_KEYS:
            graphs[key] = reindex_graph(graphs[key], labels)
            if incidences[key] is not None:
                incidences[key] = reindex_incidence(incidences[key], labels)

    for key in NETWORK_KEYS:
        settings = config.networks[key]
        with _stage(f"network stats {key}"):
            nstats = network_stats(graphs[key])
        with _stage(f"communities {key}"):
            partition, cstats = louvain(
                graphs[key],
                resolution=settings.resolution,
                seed=settings.seed,
                restarts=settings.restarts,
            )
        with _stage(f"dissimilarity {key}"):
            if incidences[key] is not None:
                dissim = dissim_from_incidence(incidences[key])
            else:
                dissim = dissim_from_graph(graphs[key])
        results[key] = NetworkResult(graphs[key], dissim, partition, nstats, cstats)

    corr = config.correlation
    seeds = pair_seeds(corr.seed)
    dcor_results: dict[str, DcorResult] = {}
    for a, b in CORRELATION_PAIRS:
        pair = f"{a}_vs_{b}"
        with _stage(f"distance correlation {pair}"):
            dcor_results[pair] = perm_test(
                results[a].dissim,
                results[b].dissim,
                n_permutations=corr.n_permutations,
                seed=seeds[pair],
                workers=workers,
                centering=corr.centering,
            )

    reports: dict[str, AssocReport] = {}
    for a, b in ASSOCIATION_PAIRS:
        pair = f"{a}_vs_{b}"
        with _stage(f"association {pair}"):
            reports[pair] = assoc_report(results[a].partition, results[b].partition)

    with _stage("write outputs"):
        files = _write_outputs(config, out_dir, results, dcor_results, reports, seeds)
    return files


def _write_outputs(
    config: StudyConfig,
    out_dir: Path,
    results: dict[str, NetworkResult],
    dcor_results: dict[str, DcorResult],
    reports: dict[str, AssocReport],
    seeds: dict[str, int],
) -> list[str]:
    tmp = Path(tempfile.mkdtemp(dir=out_dir.parent, prefix=".journalnets-"))
    try:
        contents: dict[str, str] = {
            "networks.csv": networks_table(results),
            "correlations.csv": correlations_table(
                dcor_results, config.correlation.alpha, config.correlation.family_size
            ),
            "associations.csv": associations_table(reports),
        }
        for key in NETWORK_KEYS:
            contents[f"{key}.net"] = write_pajek_net(results[key].graph)
            contents[f"{key}_edges.csv"] = write_edgelist_csv(results[key].graph)
            contents[f"{key}.clu"] = write_pajek_clu(results[key].partition)
        names = sorted(contents) + ["provenance.json"]
        contents["provenance.json"] = _provenance(config, seeds, names)
        for name, text in contents.items():
            (tmp / name).write_text(text, encoding="utf-8", newline="")
        out_dir.mkdir(parents=True, exist_ok=True)
        for name in contents:
            os.replace(tmp / name, out_dir / name)
    finally:
        shutil.rmtree(tmp, ignore_errors=True)
    return names


def _provenance(config: StudyConfig, seeds: dict[str, int], files: list[str]) -> str:
    record = {
        "software": "journalnets",
        "version": __version__,
        "field": config.field,
        "networks": {
            key: dataclasses.asdict(config.networks[key]) for key in NETWORK_KEYS
        },
        "correlation": dataclasses.asdict(config.correlation),
        "pair_seeds": seeds,
        "outputs": files,
    }
    return json.dumps(record, indent=2, sort_keys=True) + "\n"
