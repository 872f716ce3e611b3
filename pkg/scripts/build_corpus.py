"""Write the connected-graph corpus for one order as gzipped graph6.

    python scripts/build_corpus.py 9 data/connected9.g6.gz

Orders up to 8 come straight from the internal enumerator. Order 9 extends
every connected 8-vertex graph by one vertex and removes isomorphic copies by
canonical form, which takes a few minutes on one core.
"""

import argparse
import gzip
import time

from fracgap.graph import enumerate_connected, encode_graph6, extend_by_vertex, MAX_ENUMERATE_N

# connected graphs on n unlabeled vertices, n = 1..10
KNOWN_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080, 10: 11716571}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("n", type=int)
    ap.add_argument("out")
    args = ap.parse_args()

    t0 = time.time()
    if args.n <= MAX_ENUMERATE_N:
        graphs = list(enumerate_connected(args.n))
    elif args.n == MAX_ENUMERATE_N + 1:
        graphs = extend_by_vertex(enumerate_connected(MAX_ENUMERATE_N), connected=True)
    else:
        raise SystemExit("only orders up to 9 are supported")
    print(f"n={args.n}: {len(graphs)} graphs in {time.time() - t0:.1f}s")
    if len(graphs) != KNOWN_COUNTS[args.n]:
        raise SystemExit(f"count mismatch: expected {KNOWN_COUNTS[args.n]}")

    # mtime=0 keeps the gzip bytes reproducible
    with (gzip.GzipFile(args.out, "wb", mtime=0) if args.out.endswith(".gz") else open(args.out, "wb")) as fh:
        for g in graphs:
            fh.write(encode_graph6(g).encode("ascii") + b"\n")


if __name__ == "__main__":
    main()
