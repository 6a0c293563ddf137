"""Reparse the CLI's GEXF and JSON exports with networkx and compare counts."""
import json
import subprocess
import sys

import networkx as nx

cli, data, store = sys.argv[1:4]


def run(*args):
    return subprocess.run([cli, "--store", store, *args], check=True, capture_output=True, text=True).stdout


run("ingest", "--data", f"{data}/table3.jsonl", "--url-map", f"{data}/table3_urlmap.tsv")
for depth in ("1", "2"):
    gexf = run("--format", "gexf", "similar", "adonisgeorgiadi", "--k", "15", "--depth", depth)
    meta = json.loads(run("--format", "json", "similar", "adonisgeorgiadi", "--k", "15", "--depth", depth))
    path = f"{store}.d{depth}.gexf"
    with open(path, "w", encoding="utf-8") as f:
        f.write(gexf)
    g = nx.read_gexf(path)
    if not isinstance(g, nx.DiGraph):
        sys.exit(f"depth {depth}: expected a directed graph")
    if "nodes" in meta:
        nodes, edges = len(meta["nodes"]), len(meta["edges"])
    else:  # depth 1 json is the ranking itself
        nodes, edges = 1 + len(meta["results"]), len(meta["results"])
    if g.number_of_nodes() != nodes or g.number_of_edges() != edges:
        sys.exit(f"depth {depth}: networkx sees {g.number_of_nodes()}/{g.number_of_edges()}, export has {nodes}/{edges}")
    print(f"depth {depth}: {nodes} nodes, {edges} edges")
