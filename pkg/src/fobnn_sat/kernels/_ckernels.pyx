# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels.  Same signatures and results as ``_pykernels``."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

cnp.import_array()

cdef enum:
    PUSH_VAR = 0
    PUSH_MASK = 1
    ADD = 2
    EQ = 6
    NONNEG = 7
    NONNEG_MASK = 5
    MAX_STACK = 256


cdef inline bint eval_atom(const int[:] code, int start, int stop, int* values,
                           const int[:, :, :] tables) nogil:
    cdef int stack[MAX_STACK]
    cdef int sp = 0
    cdef int i, op, arg, a, b
    for i in range(start, stop):
        op = code[2 * i]
        arg = code[2 * i + 1]
        if op == PUSH_VAR:
            stack[sp] = values[arg]
            sp += 1
        elif op == PUSH_MASK:
            stack[sp] = arg
            sp += 1
        elif op == EQ:
            sp -= 1
            b = stack[sp]
            a = stack[sp - 1]
            stack[sp - 1] = 1 if (a & b) else 0
        elif op == NONNEG:
            stack[sp - 1] = 1 if (stack[sp - 1] & NONNEG_MASK) else 0
        else:
            sp -= 1
            b = stack[sp]
            a = stack[sp - 1]
            stack[sp - 1] = tables[op - ADD, a, b]
    return stack[sp - 1] != 0


cdef bint component_holds(const int[:] code, const int[:] atom_start,
                          const int[:, :, :] tables, int* values,
                          const int[:] slots, int s0, int s1,
                          const int[:] atoms, int a0, int a1) nogil:
    cdef int m = s1 - s0
    cdef int k, a
    cdef int idx[64]
    cdef int signs[3]
    cdef bint ok
    signs[0] = 1
    signs[1] = 2
    signs[2] = 4
    for k in range(m):
        idx[k] = 0
    while True:
        for k in range(m):
            values[slots[s0 + k]] = signs[idx[k]]
        ok = True
        for a in range(a0, a1):
            if not eval_atom(code, atom_start[atoms[a]], atom_start[atoms[a] + 1], values, tables):
                ok = False
                break
        if ok:
            return True
        k = m - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < 3:
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            return False


def satisfying_assignments(code, atom_start, tables, int n_slots, free_slots,
                           free_domains, ground_atoms, comp_slot_start,
                           comp_slots, comp_atom_start, comp_atoms):
    cdef const int[:] c_code = np.ascontiguousarray(code, dtype=np.intc).ravel()
    cdef const int[:] c_start = np.ascontiguousarray(atom_start, dtype=np.intc)
    cdef const int[:, :, :] c_tables = np.ascontiguousarray(tables, dtype=np.intc)
    cdef const int[:] c_free = np.ascontiguousarray(free_slots, dtype=np.intc)
    cdef const int[:] c_dom = np.ascontiguousarray(free_domains, dtype=np.intc)
    cdef const int[:] c_ground = np.ascontiguousarray(ground_atoms, dtype=np.intc)
    cdef const int[:] c_cs = np.ascontiguousarray(comp_slot_start, dtype=np.intc)
    cdef const int[:] c_cslots = np.ascontiguousarray(comp_slots, dtype=np.intc)
    cdef const int[:] c_ca = np.ascontiguousarray(comp_atom_start, dtype=np.intc)
    cdef const int[:] c_catoms = np.ascontiguousarray(comp_atoms, dtype=np.intc)

    cdef int nf = c_free.shape[0]
    cdef int n_comp = c_cs.shape[0] - 1
    cdef int k, c, a, b, nd
    cdef bint ok
    cdef int* values = <int*> malloc(max(n_slots, 1) * sizeof(int))
    cdef int* idx = <int*> malloc(max(nf, 1) * sizeof(int))
    cdef int* dom = <int*> malloc(max(nf, 1) * 3 * sizeof(int))
    cdef int* ndom = <int*> malloc(max(nf, 1) * sizeof(int))
    out = []
    for c in range(n_comp):
        if c_cs[c + 1] - c_cs[c] > 64:
            raise ValueError("component with more than 64 existential slots")
    try:
        for k in range(n_slots):
            values[k] = 0
        for k in range(nf):
            idx[k] = 0
            nd = 0
            for b in range(3):
                if c_dom[k] & (1 << b):
                    dom[3 * k + nd] = 1 << b
                    nd += 1
            ndom[k] = nd
            if nd == 0:
                return out
        while True:
            for k in range(nf):
                values[c_free[k]] = dom[3 * k + idx[k]]
            ok = True
            for a in range(c_ground.shape[0]):
                if not eval_atom(c_code, c_start[c_ground[a]], c_start[c_ground[a] + 1], values, c_tables):
                    ok = False
                    break
            if ok:
                for c in range(n_comp):
                    if not component_holds(c_code, c_start, c_tables, values,
                                           c_cslots, c_cs[c], c_cs[c + 1],
                                           c_catoms, c_ca[c], c_ca[c + 1]):
                        ok = False
                        break
            if ok:
                out.append(tuple([values[c_free[k]] for k in range(nf)]))
            k = nf - 1
            while k >= 0:
                idx[k] += 1
                if idx[k] < ndom[k]:
                    break
                idx[k] = 0
                k -= 1
            if k < 0:
                return out
    finally:
        free(values)
        free(idx)
        free(dom)
        free(ndom)


def classic_edges(int n_species, reactant_masks, product_masks):
    cdef const cnp.int64_t[:] rm = np.ascontiguousarray(reactant_masks, dtype=np.int64)
    cdef const cnp.int64_t[:] pm = np.ascontiguousarray(product_masks, dtype=np.int64)
    cdef long long n_states = 1LL << n_species
    cdef long long s, r, p, base, fr, sub, t
    cdef Py_ssize_t j, nr = rm.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] mark = np.full(n_states, -1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] succ = np.empty(n_states, dtype=np.int64)
    cdef Py_ssize_t ns
    chunks = []
    cdef cnp.ndarray[cnp.int64_t, ndim=2] block
    for s in range(n_states):
        ns = 0
        for j in range(nr):
            r = rm[j]
            p = pm[j]
            if (s & r) != r:
                continue
            base = s | p
            fr = r & ~p
            sub = fr
            while True:
                t = base & ~sub
                if mark[t] != s:
                    mark[t] = s
                    succ[ns] = t
                    ns += 1
                if sub == 0:
                    break
                sub = (sub - 1) & fr
        if ns:
            block = np.empty((ns, 2), dtype=np.int64)
            block[:, 0] = s
            block[:, 1] = np.sort(succ[:ns])
            chunks.append(block)
    if not chunks:
        return np.empty((0, 2), dtype=np.int64)
    return np.concatenate(chunks)
