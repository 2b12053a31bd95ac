# cython: language_level=3, boundscheck=False, wraparound=False
# cython: initializedcheck=False, cdivision=True
"""Compiled segmentation kernels; behavioral twin of _kernels_py."""

from cpython.bytes cimport PyBytes_FromStringAndSize
from cpython.dict cimport PyDict_GetItem
from cpython.object cimport PyObject
from libc.stdlib cimport free, malloc

from .errors import UnsegmentableError

BACKEND = "cython"

cdef long NO_RANK = 0x7FFFFFFF
cdef int INF = 0x3FFFFFFF


def greedy_ids(dict ranks, bytes piece):
    """Iterated lowest-rank adjacent-pair merge, leftmost tie-break."""
    cdef Py_ssize_t n = len(piece)
    cdef const char* buf = piece
    if n == 1:
        return [ranks[piece]]
    cdef int* starts = <int*> malloc((n + 1) * sizeof(int))
    cdef long* pair_rank = <long*> malloc(n * sizeof(long))
    if starts == NULL or pair_rank == NULL:
        free(starts)
        free(pair_rank)
        raise MemoryError()
    cdef Py_ssize_t parts = n
    cdef Py_ssize_t i, at, k
    cdef long best, r
    try:
        for i in range(n + 1):
            starts[i] = <int> i
        for i in range(n - 1):
            pair_rank[i] = _pair(ranks, buf, starts[i], starts[i + 2])
        while True:
            best = NO_RANK
            at = -1
            for i in range(parts - 1):
                r = pair_rank[i]
                if r < best:
                    best = r
                    at = i
            if at < 0:
                break
            # merge parts at, at+1: drop boundary starts[at+1]
            for k in range(at + 1, parts):
                starts[k] = starts[k + 1]
            for k in range(at, parts - 2):
                pair_rank[k] = pair_rank[k + 1]
            parts -= 1
            if at > 0:
                pair_rank[at - 1] = _pair(ranks, buf, starts[at - 1], starts[at + 1])
            if at < parts - 1:
                pair_rank[at] = _pair(ranks, buf, starts[at], starts[at + 2])
        out = []
        for i in range(parts):
            key = PyBytes_FromStringAndSize(buf + starts[i], starts[i + 1] - starts[i])
            out.append(ranks[key])
        return out
    finally:
        free(starts)
        free(pair_rank)


cdef inline long _pair(dict ranks, const char* buf, int a, int b):
    key = PyBytes_FromStringAndSize(buf + a, b - a)
    cdef PyObject* hit = PyDict_GetItem(ranks, key)
    if hit == NULL:
        return NO_RANK
    return <long> <object> hit


def optimal_ids(trie, bytes piece):
    """Minimal-token segmentation by DP over the flattened reversed trie."""
    cdef Py_ssize_t n = len(piece)
    cdef const unsigned char* buf = <const unsigned char*> (<const char*> piece)
    cdef const int[::1] root = trie.root_child
    cdef const int[::1] node_start = trie.node_start
    cdef const unsigned char[::1] child_byte = trie.child_byte
    cdef const int[::1] child_node = trie.child_node
    cdef const int[::1] terminal = trie.terminal_arr
    cdef int* dp = <int*> malloc((n + 1) * sizeof(int))
    cdef int* par = <int*> malloc((n + 1) * sizeof(int))
    cdef int* tok = <int*> malloc((n + 1) * sizeof(int))
    if dp == NULL or par == NULL or tok == NULL:
        free(dp)
        free(par)
        free(tok)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef int v, t, best, stuck, k
    try:
        dp[0] = 0
        for i in range(n):
            dp[i + 1] = INF
            par[i] = -2
            tok[i] = -1
        for i in range(n):
            v = root[buf[i]]
            best = dp[i + 1]
            j = i
            while v >= 0:
                t = terminal[v]
                if t >= 0 and dp[j] + 1 < best:
                    best = dp[j] + 1
                    par[i] = <int> j - 1
                    tok[i] = t
                j -= 1
                if j < 0:
                    break
                v = _child(node_start, child_byte, child_node, v, buf[j])
            dp[i + 1] = best
        if dp[n] >= INF:
            stuck = 0
            for i in range(n + 1):
                if dp[i] < INF:
                    stuck = <int> i
            raise UnsegmentableError(stuck)
        out = []
        k = <int> n - 1
        while k != -1:
            out.append(tok[k])
            k = par[k]
        out.reverse()
        return out
    finally:
        free(dp)
        free(par)
        free(tok)


cdef inline int _child(const int[::1] node_start, const unsigned char[::1] child_byte,
                       const int[::1] child_node, int v, unsigned char b) noexcept:
    cdef int lo = node_start[v]
    cdef int hi = node_start[v + 1] - 1
    cdef int mid
    while lo <= hi:
        mid = (lo + hi) >> 1
        if child_byte[mid] < b:
            lo = mid + 1
        elif child_byte[mid] > b:
            hi = mid - 1
        else:
            return child_node[mid]
    return -1
