# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled subset-construction kernels; see ``_pykernels`` for the contract."""

from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from libcpp.unordered_map cimport unordered_map
from libcpp.unordered_set cimport unordered_set
from libcpp.deque cimport deque

from .errors import BudgetExceeded


cdef inline uint64_t _image(const vector[uint64_t]& bits, int n, int k,
                            uint64_t mask, int a) nogil:
    cdef uint64_t out = 0
    cdef int q = 0
    while mask:
        if mask & 1:
            out |= bits[q * k + a]
        mask >>= 1
        q += 1
    return out


cdef vector[uint64_t] _bits(delta, int n, int k) except *:
    if n > 63:
        raise ValueError("compiled kernels support at most 63 states")
    cdef vector[uint64_t] bits
    bits.resize(n * k)
    cdef int i
    for i in range(n * k):
        bits[i] = (<uint64_t>1) << <int>delta[i]
    return bits


def image_mask(delta, int n, int k, mask, int a):
    cdef vector[uint64_t] bits = _bits(delta, n, k)
    return _image(bits, n, k, <uint64_t>mask, a)


def power_closure(delta, int n, int k, start, cap):
    cdef vector[uint64_t] bits = _bits(delta, n, k)
    cdef unordered_map[uint64_t, Py_ssize_t] index
    cdef vector[uint64_t] masks
    cdef vector[Py_ssize_t] trans
    cdef Py_ssize_t limit = cap
    cdef Py_ssize_t i = 0, j
    cdef uint64_t img
    cdef int a
    masks.push_back(<uint64_t>start)
    index[<uint64_t>start] = 0
    while i < <Py_ssize_t>masks.size():
        for a in range(k):
            img = _image(bits, n, k, masks[i], a)
            if index.count(img) == 0:
                if <Py_ssize_t>masks.size() >= limit:
                    raise BudgetExceeded(f"more than {cap} reachable subsets")
                j = masks.size()
                index[img] = j
                masks.push_back(img)
            else:
                j = index[img]
            trans.push_back(j)
        i += 1
    return [m for m in masks], [t for t in trans]


def power_equals_dfa(delta, int n, int k, start, dfa, int dfa_init, dfa_final):
    cdef vector[uint64_t] bits = _bits(delta, n, k)
    cdef int m = len(dfa_final)
    if n > 40 or m > (1 << 20):
        raise ValueError("instance too large for packed product keys")
    cdef vector[int] dtab
    cdef vector[int] dfin
    cdef int i
    dtab.resize(m * k)
    dfin.assign(m, 0)
    for i in range(m * k):
        dtab[i] = dfa[i]
    for i in range(m):
        if dfa_final[i]:
            dfin[i] = 1
    cdef unordered_set[uint64_t] seen
    cdef deque[uint64_t] queue
    cdef uint64_t key = (<uint64_t>start << 20) | <uint64_t>dfa_init
    cdef uint64_t mask, img, nxt
    cdef int d, a
    cdef bint singleton
    cdef bint equal = True
    seen.insert(key)
    queue.push_back(key)
    with nogil:
        while not queue.empty():
            key = queue.front()
            queue.pop_front()
            mask = key >> 20
            d = <int>(key & 0xFFFFF)
            singleton = (mask & (mask - 1)) == 0
            if singleton != (dfin[d] != 0):
                equal = False
                break
            for a in range(k):
                img = _image(bits, n, k, mask, a)
                nxt = (img << 20) | <uint64_t>dtab[d * k + a]
                if seen.find(nxt) == seen.end():
                    seen.insert(nxt)
                    queue.push_back(nxt)
    return equal
