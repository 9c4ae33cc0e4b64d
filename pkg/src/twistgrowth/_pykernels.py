"""Pure-Python reference kernels.

Same contracts as the compiled ``_ckernels`` module, but on nested lists of
Python ints, so they stay exact for any magnitude.
"""


def bfs_layers(offset, mult, r_max, budget):
    """Layers of the Cayley ball under right multiplication by generators.

    Right-multiplying ``(x, a)`` by generator ``j`` gives
    ``(x + offset[a][j], mult[a][j])``.  Returns a list of layers, each a
    list of ``[coset, x_1, ..., x_n]`` rows in discovery order, or None when
    the total count exceeds ``budget``.
    """
    n = len(offset[0][0])
    s = len(mult[0])
    start = (0,) + (0,) * n
    seen = {start}
    layers = [[list(start)]]
    frontier = [start]
    total = 1
    for _ in range(r_max):
        nxt = []
        for row in frontier:
            a = row[0]
            x = row[1:]
            offs = offset[a]
            targ = mult[a]
            for j in range(s):
                o = offs[j]
                key = (targ[j],) + tuple(u + v for u, v in zip(x, o))
                if key not in seen:
                    seen.add(key)
                    nxt.append(key)
        total += len(nxt)
        if total > budget:
            return None
        layers.append([list(k) for k in nxt])
        frontier = nxt
    return layers


def canonicalize(elems, lin, offset, target, P, P_inv, diag):
    """Canonical ``[coset, residue...]`` row for each ``[coset, x...]`` row."""
    m = len(lin)
    out = []
    for row in elems:
        a = row[0]
        x = row[1:]
        n = len(x)
        best = None
        for c in range(m):
            ac = target[c][a]
            if best is not None and ac > best[0]:
                continue
            M = lin[c]
            o = offset[c][a]
            v = [sum(M[i][j] * x[j] for j in range(n)) + o[i] for i in range(n)]
            Pi = P_inv[ac]
            y = [sum(Pi[i][j] * v[j] for j in range(n)) for i in range(n)]
            for i, d in enumerate(diag[ac]):
                if d:
                    r = y[i] % d
                    y[i] = r - d if r > d // 2 else r
            Pa = P[ac]
            cand = [ac] + [sum(Pa[i][j] * y[j] for j in range(n)) for i in range(n)]
            if best is None or cand < best:
                best = cand
        out.append(best)
    return out
