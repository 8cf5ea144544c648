"""Pure-Python Louvain local-move kernel.

Reference implementation of the hot loop; the compiled twin in
``_louvain_cy.pyx`` performs bit-for-bit the same arithmetic in the same
order, so both backends produce identical partitions for identical inputs.
"""

from __future__ import annotations


def local_move_sweeps(indptr, indices, weights, degrees, labels, sigma_tot, order, total_weight, trace=None):
    """Sweep nodes in ``order`` until a full sweep makes no move.

    Operates on the symmetrized adjacency in CSR form.  ``labels`` and
    ``sigma_tot`` (summed degree per community id) are mutated in place.
    A node moves only on a strictly positive modularity gain; among
    equal-gain candidates the lowest community id wins.

    ``trace``, when a list, receives one ``(node, from, to, delta_q)``
    tuple per accepted move, with ``delta_q`` the modularity increase the
    incremental formula claims for that move.

    Returns the total number of moves across all sweeps.
    """
    n = len(labels)
    ptr = indptr.tolist()
    idx = indices.tolist()
    wts = weights.tolist()
    deg = degrees.tolist()
    lab = labels.tolist()
    sig = sigma_tot.tolist()
    ordr = order.tolist()
    s = float(total_weight)

    total_moves = 0
    while True:
        moves = 0
        for i in ordr:
            d = lab[i]
            ki = deg[i]
            # Accumulate edge weight from i towards each neighboring community.
            cw: dict[int, float] = {}
            for p in range(ptr[i], ptr[i + 1]):
                j = idx[p]
                if j == i:
                    continue
                c = lab[j]
                cw[c] = cw.get(c, 0.0) + wts[p]
            if not cw:
                continue
            sig[d] -= ki
            stay_gain = cw.get(d, 0.0) - ki * sig[d] / s
            best_gain = float("-inf")
            best_c = -1
            for c, w in cw.items():
                if c == d:
                    continue
                gain = w - ki * sig[c] / s
                if gain > best_gain or (gain == best_gain and c < best_c):
                    best_gain = gain
                    best_c = c
            if best_c >= 0 and best_gain > stay_gain:
                lab[i] = best_c
                sig[best_c] += ki
                moves += 1
                if trace is not None:
                    trace.append((i, d, best_c, 2.0 * (best_gain - stay_gain) / s))
            else:
                sig[d] += ki
        total_moves += moves
        if moves == 0:
            break

    labels[:] = lab
    sigma_tot[:n] = sig[:n]
    return total_moves
