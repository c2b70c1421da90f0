"""
Independent reference for the loop expansion.

The eigenvalue shift delta = lambda_j - V_j solves
    delta = sum over simple j-loops P of eps^|P| w(P) prod_s 1 / (V_j - V_s + delta),
and 1 / (V_j - V_s + delta) = W_s * sum_m (-W_s delta)^m. Iterating this
fixed point on truncated power series in eps, with W_s kept symbolic as a
multiplicity vector, yields every (order, footprint, quasi) coefficient.
"""

from collections import defaultdict
from fractions import Fraction

from flatband.algebra.scalars import GaussianRational

# series: {(order, footprint vector, quasi): coefficient}


def _mul(a, b, max_order):
    out = defaultdict(lambda: GaussianRational(Fraction(0)))
    for (o1, f1, q1), c1 in a.items():
        for (o2, f2, q2), c2 in b.items():
            if o1 + o2 > max_order:
                continue
            key = (o1 + o2, tuple(x + y for x, y in zip(f1, f2)), tuple(x + y for x, y in zip(q1, q2)))
            out[key] = out[key] + c1 * c2
    return dict(out)


def _add(a, b):
    out = dict(a)
    for key, c in b.items():
        out[key] = out[key] + c if key in out else c
    return out


def _walks(g, j, max_len):
    """Closed walks at j with interior avoiding j, straight from the edge list"""
    outgoing = defaultdict(list)
    for e in g.edges:
        outgoing[e.source].append(e)
    found = []

    def step(vertex, path):
        if len(path) == max_len:
            return
        for e in outgoing[vertex]:
            if e.target == j:
                found.append(path + [e])
            else:
                step(e.target, path + [e])

    step(j, [])
    return found


def loop_expansion(g, j, max_order):
    """Exact delta as {(k, footprint pairs, quasi): coefficient} for k <= max_order, zeros dropped"""
    zero_fp = (0,) * g.n
    zero_q = (0,) * g.d
    unit = {(0, zero_fp, zero_q): GaussianRational(1)}
    walks = _walks(g, j, max_order)

    delta = {}
    for _ in range(max_order):
        # -W_s * delta for each vertex s
        attached = {}
        for s in range(1, g.n + 1):
            marker = tuple(1 if v == s else 0 for v in range(1, g.n + 1))
            attached[s] = {(o, tuple(x + y for x, y in zip(f, marker)), q): -c for (o, f, q), c in delta.items()}
        geometric = {}
        for s, term in attached.items():
            series, power = dict(unit), dict(unit)
            for _ in range(max_order):
                power = _mul(power, term, max_order)
                if not power:
                    break
                series = _add(series, power)
            geometric[s] = series

        updated = {}
        for walk in walks:
            weight = GaussianRational(1)
            quasi = [0] * g.d
            footprint = [0] * g.n
            for e in walk:
                weight = weight * e.weight
                quasi = [a + b for a, b in zip(quasi, e.shift)]
            interior = [e.target for e in walk[:-1]]
            for s in interior:
                footprint[s - 1] += 1
            term = {(len(walk), tuple(footprint), tuple(quasi)): weight}
            for s in interior:
                term = _mul(term, geometric[s], max_order)
            updated = _add(updated, term)
        delta = updated

    result = {}
    for (order, fp, quasi), c in delta.items():
        if c != 0:
            pairs = tuple((v + 1, m) for v, m in enumerate(fp) if m)
            result[(order, pairs, quasi)] = c
    return result
