"""Pure-Python segmentation kernels.

Fallback twin of the compiled extension `_kernels`; same functions, same
results, selected at import time by `kernels`.
"""

from __future__ import annotations

from .errors import UnsegmentableError

BACKEND = "python"

_NO_RANK = 0x7FFFFFFF
_INF = 0x3FFFFFFF


def greedy_ids(ranks: dict[bytes, int], piece: bytes) -> list[int]:
    """Iterated lowest-rank adjacent-pair merge, leftmost tie-break.

    Starts from single-byte parts; each step merges the adjacent pair whose
    concatenated bytes carry the lowest rank in `ranks`, until no adjacent
    concatenation is in the vocabulary.
    """
    n = len(piece)
    if n == 1:
        return [ranks[piece]]
    get = ranks.get
    starts = list(range(n + 1))
    # pair_rank[i]: rank of merging parts i,i+1 (bytes starts[i]:starts[i+2])
    pair_rank = [get(piece[i:i + 2], _NO_RANK) for i in range(n - 1)]
    while True:
        best = _NO_RANK
        at = -1
        for i, r in enumerate(pair_rank):
            if r < best:
                best = r
                at = i
        if at < 0:
            break
        del starts[at + 1]
        del pair_rank[at]
        if at > 0:
            pair_rank[at - 1] = get(piece[starts[at - 1]:starts[at + 1]], _NO_RANK)
        if at < len(pair_rank):
            pair_rank[at] = get(piece[starts[at]:starts[at + 2]], _NO_RANK)
    return [ranks[piece[starts[i]:starts[i + 1]]] for i in range(len(starts) - 1)]


def optimal_ids(trie, piece: bytes) -> list[int]:
    """Minimal-token segmentation by DP over the reversed trie.

    dp[i+1] is the minimal token count for the prefix ending at byte i
    (dp[0] = 0 for the empty prefix).  For each end position the suffix is
    grown backwards through the trie; only strictly better counts update,
    so the shortest admissible suffix wins every tie.
    """
    n = len(piece)
    children = trie.children
    terminal = trie.terminal
    dp = [_INF] * (n + 1)
    dp[0] = 0
    par = [-2] * n
    tok = [-1] * n
    for i in range(n):
        v = 0
        best = dp[i + 1]
        for j in range(i, -1, -1):
            v = children[v].get(piece[j], -1)
            if v < 0:
                break
            t = terminal[v]
            if t >= 0 and dp[j] + 1 < best:
                best = dp[j] + 1
                par[i] = j - 1
                tok[i] = t
        dp[i + 1] = best
    if dp[n] >= _INF:
        # first position no segmentable prefix extends past
        stuck = max(i for i in range(n + 1) if dp[i] < _INF)
        raise UnsegmentableError(stuck)
    ids: list[int] = []
    k = n - 1
    while k != -1:
        ids.append(tok[k])
        k = par[k]
    ids.reverse()
    return ids


def dp_arrays(trie, piece: bytes) -> tuple[list[int], list[int], list[int]]:
    """DP tables for inspection: (dp with dp[0] = 0 base, par, token ids).

    Infeasible positions keep a large sentinel in dp and -2/-1 in par/tok.
    """
    n = len(piece)
    children = trie.children
    terminal = trie.terminal
    dp = [_INF] * (n + 1)
    dp[0] = 0
    par = [-2] * n
    tok = [-1] * n
    for i in range(n):
        v = 0
        best = dp[i + 1]
        for j in range(i, -1, -1):
            v = children[v].get(piece[j], -1)
            if v < 0:
                break
            t = terminal[v]
            if t >= 0 and dp[j] + 1 < best:
                best = dp[j] + 1
                par[i] = j - 1
                tok[i] = t
        dp[i + 1] = best
    return dp, par, tok
