"""Pure-Python kernels.  Same signatures and results as ``_ckernels``."""
from __future__ import annotations

import numpy as np

PUSH_VAR, PUSH_MASK, ADD, SUB, MUL, DIV, EQ, NONNEG = range(8)
NONNEG_MASK = 1 | 4


def _bits(mask: int) -> list[int]:
    return [b for b in (1, 2, 4) if mask & b]


def _eval_atom(code, start, stop, values, tables) -> bool:
    stack = []
    push = stack.append
    pop = stack.pop
    for i in range(start, stop):
        op = code[2 * i]
        arg = code[2 * i + 1]
        if op == PUSH_VAR:
            push(values[arg])
        elif op == PUSH_MASK:
            push(arg)
        elif op == EQ:
            b = pop()
            a = pop()
            push(1 if a & b else 0)
        elif op == NONNEG:
            push(1 if pop() & NONNEG_MASK else 0)
        else:
            b = pop()
            a = pop()
            push(tables[op - ADD][a][b])
    return stack[-1] != 0


def satisfying_assignments(
    code,
    atom_start,
    tables,
    n_slots,
    free_slots,
    free_domains,
    ground_atoms,
    comp_slot_start,
    comp_slots,
    comp_atom_start,
    comp_atoms,
):
    """Enumerate assignments of the free slots under which every atom group holds.

    Ground atoms mention only free slots.  Each component is a group of atoms
    sharing existential slots; it holds if some choice of signs for its
    slots satisfies all its atoms.
    Returns a list of tuples of sign masks, one entry per free slot.
    """
    code = list(np.asarray(code).ravel().tolist())
    atom_start = list(np.asarray(atom_start).tolist())
    tables = np.asarray(tables).tolist()
    free_slots = list(np.asarray(free_slots).tolist())
    domains = [_bits(int(m)) for m in np.asarray(free_domains).tolist()]
    ground = list(np.asarray(ground_atoms).tolist())
    cs = list(np.asarray(comp_slot_start).tolist())
    cslots = list(np.asarray(comp_slots).tolist())
    ca = list(np.asarray(comp_atom_start).tolist())
    catoms = list(np.asarray(comp_atoms).tolist())
    n_comp = len(cs) - 1

    values = [0] * n_slots
    out = []
    nf = len(free_slots)
    if any(not d for d in domains):
        return out
    idx = [0] * nf
    while True:
        for k in range(nf):
            values[free_slots[k]] = domains[k][idx[k]]
        ok = all(_eval_atom(code, atom_start[a], atom_start[a + 1], values, tables) for a in ground)
        if ok:
            for c in range(n_comp):
                slots = cslots[cs[c]:cs[c + 1]]
                atoms = catoms[ca[c]:ca[c + 1]]
                if not _component_holds(code, atom_start, tables, values, slots, atoms):
                    ok = False
                    break
        if ok:
            out.append(tuple(values[s] for s in free_slots))
        # odometer, last slot fastest
        k = nf - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < len(domains[k]):
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            return out


def _component_holds(code, atom_start, tables, values, slots, atoms) -> bool:
    m = len(slots)
    idx = [0] * m
    signs = (1, 2, 4)
    while True:
        for k in range(m):
            values[slots[k]] = signs[idx[k]]
        if all(_eval_atom(code, atom_start[a], atom_start[a + 1], values, tables) for a in atoms):
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


def classic_edges(n_species, reactant_masks, product_masks):
    """All edges of the classic boolean semantics over bitmask states.

    One enabled reaction fires per step: its products become present, the
    reactants it does not also produce may or may not persist, and every
    other species keeps its value.
    Returns an ``(m, 2)`` int64 array sorted by (source, target).
    """
    reactants = [int(x) for x in np.asarray(reactant_masks).tolist()]
    products = [int(x) for x in np.asarray(product_masks).tolist()]
    edges = []
    for s in range(1 << n_species):
        succ = set()
        for r, p in zip(reactants, products):
            if s & r != r:
                continue
            base = s | p
            free = r & ~p
            sub = free
            while True:
                succ.add(base & ~sub)
                if sub == 0:
                    break
                sub = (sub - 1) & free
        edges.extend((s, t) for t in sorted(succ))
    return np.array(edges, dtype=np.int64).reshape(-1, 2)
