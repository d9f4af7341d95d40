"""Pure-Python versions of the hot loops; same signatures as ``_ckernels``."""
import numpy as np


def component_labels(n, ei, ej):
    """Union-find over ``n`` vertices and edges ``(ei[k], ej[k])``.

    Labels are 0..k-1, numbered by smallest member vertex.
    """
    parent = list(range(n))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for a, b in zip(np.asarray(ei).tolist(), np.asarray(ej).tolist()):
        ra, rb = find(a), find(b)
        if ra != rb:
            if ra < rb:
                parent[rb] = ra
            else:
                parent[ra] = rb
    labels = np.empty(n, dtype=np.int64)
    seen = {}
    for v in range(n):
        r = find(v)
        if r not in seen:
            seen[r] = len(seen)
        labels[v] = seen[r]
    return labels


def f2_rank(columns, nrows):
    """Rank over GF(2) of the matrix whose k-th column has ones at ``columns[k]``."""
    pivots = {}
    rank = 0
    for col in columns:
        v = 0
        for i in col:
            v ^= 1 << int(i)
        while v:
            top = v.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = v
                rank += 1
                break
            v ^= p
    return rank


def triangles(adj):
    """All i<j<k with adj[i,j] & adj[i,k] & adj[j,k]; rows in lexicographic order."""
    adj = np.asarray(adj, dtype=bool)
    n = adj.shape[0]
    out = []
    for i in range(n):
        nbr = np.flatnonzero(adj[i, i + 1:]) + i + 1
        for a, j in enumerate(nbr.tolist()):
            rest = nbr[a + 1:]
            ks = rest[adj[j, rest]]
            out.extend((i, j, int(k)) for k in ks)
    return np.array(out, dtype=np.int64).reshape(-1, 3)
