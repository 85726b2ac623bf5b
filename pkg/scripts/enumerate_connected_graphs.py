"""Write every connected graph on N nodes (up to isomorphism) as graph6 lines.

Each N-node graph arises from some (N-1)-node graph plus one vertex, so we
extend every graph in the networkx atlas (all graphs on <= 7 nodes) by a new
vertex with each possible neighbourhood and keep one representative per
isomorphism class.

    python scripts/enumerate_connected_graphs.py 8 > tests/data/connected8.g6
"""

import sys
from collections import defaultdict
from itertools import combinations

import networkx as nx
from networkx.generators.atlas import graph_atlas_g


def main(n: int) -> None:
    base = [g for g in graph_atlas_g() if g.number_of_nodes() == n - 1]
    buckets: dict[tuple, list[nx.Graph]] = defaultdict(list)
    for g in base:
        for r in range(1, n):
            for nbrs in combinations(range(n - 1), r):
                h = g.copy()
                h.add_node(n - 1)
                h.add_edges_from((n - 1, v) for v in nbrs)
                if not nx.is_connected(h):
                    continue
                key = (tuple(sorted(d for _, d in h.degree())), h.number_of_edges(), nx.weisfeiler_lehman_graph_hash(h))
                if not any(nx.is_isomorphic(h, o) for o in buckets[key]):
                    buckets[key].append(h)
    graphs = [g for group in buckets.values() for g in group]
    lines = sorted(nx.to_graph6_bytes(g, header=False).decode().strip() for g in graphs)
    sys.stdout.write("\n".join(lines) + "\n")
    print(f"{len(lines)} connected graphs on {n} nodes", file=sys.stderr)


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 8)
