"""Pure-Python subset-construction kernels.

Same contract as the compiled ``_ckernels`` module.  Subsets of the state
set are bitmasks; ``delta`` is the flat row-major table ``delta[q*k + a]``.
"""

from collections import deque

from .errors import BudgetExceeded


def _letter_images(delta, n, k):
    return [[1 << delta[q * k + a] for q in range(n)] for a in range(k)]


def image_mask(delta, n, k, mask, a):
    out = 0
    q = 0
    while mask:
        if mask & 1:
            out |= 1 << delta[q * k + a]
        mask >>= 1
        q += 1
    return out


def power_closure(delta, n, k, start, cap):
    """Breadth-first closure of ``start`` under the power automaton.

    Returns ``(masks, trans)``: subsets in discovery order (letters expanded
    in alphabet order) and the flat successor-index table
    ``trans[i*k + a]``.
    """
    images = _letter_images(delta, n, k)
    index = {start: 0}
    masks = [start]
    trans = []
    i = 0
    while i < len(masks):
        mask = masks[i]
        for a in range(k):
            img = 0
            row = images[a]
            m = mask
            q = 0
            while m:
                if m & 1:
                    img |= row[q]
                m >>= 1
                q += 1
            j = index.get(img)
            if j is None:
                if len(masks) >= cap:
                    raise BudgetExceeded(f"more than {cap} reachable subsets")
                j = len(masks)
                index[img] = j
                masks.append(img)
            trans.append(j)
        i += 1
    return masks, trans


def power_equals_dfa(delta, n, k, start, dfa, dfa_init, dfa_final):
    """Decide whether the power automaton from ``start`` with singleton
    finals accepts the same language as the DFA ``(dfa, dfa_init,
    dfa_final)`` over the same ``k`` letters."""
    images = _letter_images(delta, n, k)
    seen = {(start, dfa_init)}
    queue = deque(seen)
    while queue:
        mask, d = queue.popleft()
        singleton = mask & (mask - 1) == 0
        if singleton != bool(dfa_final[d]):
            return False
        for a in range(k):
            img = 0
            row = images[a]
            m = mask
            q = 0
            while m:
                if m & 1:
                    img |= row[q]
                m >>= 1
                q += 1
            nxt = (img, dfa[d * k + a])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True
