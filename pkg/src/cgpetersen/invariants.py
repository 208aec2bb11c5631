"""
Linking number and Conway polynomial of diagrams given by Gauss codes.

The Conway polynomial is computed by the skein relation

    nabla(L+) - nabla(L-) = z * nabla(L0)

walking the components in order from their base points: the first
crossing met from below is switched (and separately smoothed), until the
diagram is descending. A descending diagram is a trivial link, so its
polynomial is 1 for one component and 0 otherwise.

Polynomials are tuples of integer coefficients, lowest degree first.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .spatial import Diagram

__all__ = [
    "ComponentCountError",
    "linking_number",
    "conway_polynomial",
    "conway_knot_poly",
    "a2",
    "a2_gauss_diagram",
    "switch_crossing",
    "smooth_crossing",
    "poly_add",
    "poly_mul",
]

Poly = tuple[int, ...]


class ComponentCountError(ValueError):
    pass


def linking_number(d: Diagram) -> int:
    """Half the signed count of crossings between the two components."""
    if len(d.components) != 2:
        raise ComponentCountError(f"linking number needs 2 components, got {len(d.components)}")
    total = sum(d.signs[c] for c in d.mixed_crossings())
    assert total % 2 == 0, "mixed crossings must pair up"
    return total // 2


def _trim(p) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def poly_add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return _trim((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))


def poly_mul(p: Poly, q: Poly) -> Poly:
    out = [0] * (len(p) + len(q))
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


# Internal code: tuple of components, each a tuple of (cid, over, sign).
Code = tuple[tuple[tuple[int, bool, int], ...], ...]


def _to_code(d: Diagram) -> Code:
    return tuple(tuple((c, o, d.signs[c]) for c, o in comp) for comp in d.components)


def _from_code(code: Code) -> Diagram:
    signs = {c: s for comp in code for c, _, s in comp}
    return Diagram(tuple(tuple((c, o) for c, o, _ in comp) for comp in code), signs)


def _relabel(code: Code) -> Code:
    """Renumber crossings by first appearance so equal diagrams share a key."""
    names: dict[int, int] = {}
    out = []
    for comp in code:
        row = []
        for c, o, s in comp:
            names.setdefault(c, len(names))
            row.append((names[c], o, s))
        out.append(tuple(row))
    return tuple(out)


def _switch(code: Code, cid: int) -> Code:
    return tuple(tuple((c, (not o) if c == cid else o, -s if c == cid else s)
                       for c, o, s in comp) for comp in code)


def _rotate_to(comp, cid, start=0):
    i = next(k for k in range(start, len(comp)) if comp[k][0] == cid)
    return comp[i:] + comp[:i]


def _smooth(code: Code, cid: int) -> Code:
    where = [k for k, comp in enumerate(code) for c, _, _ in comp if c == cid]
    comps = list(code)
    if where[0] == where[1]:
        k = where[0]
        comp = _rotate_to(comps[k], cid)
        j = next(i for i in range(1, len(comp)) if comp[i][0] == cid)
        first, second = comp[1:j], comp[j + 1:]
        return tuple(comps[:k] + [first, second] + comps[k + 1:])
    k1, k2 = where
    merged = _rotate_to(comps[k1], cid)[1:] + _rotate_to(comps[k2], cid)[1:]
    return tuple(comps[:k1] + [merged] + comps[k1 + 1:k2] + comps[k2 + 1:])


def _drop_kinks(code: Code) -> Code:
    """Remove crossings whose two visits are cyclically adjacent (Reidemeister I)."""
    while True:
        kink = None
        for comp in code:
            n = len(comp)
            for i in range(n):
                if n > 1 and comp[i][0] == comp[(i + 1) % n][0]:
                    kink = comp[i][0]
                    break
            if kink is not None:
                break
        if kink is None:
            return code
        code = tuple(tuple(v for v in comp if v[0] != kink) for comp in code)


def _is_split(code: Code) -> bool:
    """Whether the components fall into groups with no crossings between them."""
    if len(code) < 2:
        return False
    owner: dict[int, list[int]] = {}
    for k, comp in enumerate(code):
        for c, _, _ in comp:
            owner.setdefault(c, []).append(k)
    reached, stack = {0}, [0]
    while stack:
        k = stack.pop()
        for c, _, _ in code[k]:
            for j in owner[c]:
                if j not in reached:
                    reached.add(j)
                    stack.append(j)
    return len(reached) < len(code)


@lru_cache(maxsize=200_000)
def _conway(code: Code, maxdeg: int) -> Poly:
    """Conway polynomial truncated above degree ``maxdeg``.

    A link of m components has nabla divisible by z^(m-1), which bounds the
    recursion: smoothings raise or lower m by one and lower the budget.
    """
    if len(code) - 1 > maxdeg or _is_split(code):
        return ()
    code = _drop_kinks(code)
    seen: set[int] = set()
    for comp in code:
        for c, over, sign in comp:
            if c in seen:
                continue
            seen.add(c)
            if over:
                continue
            # First met from below: nabla(L) = nabla(L switched) + sign * z * nabla(L0)
            switched = _conway(_relabel(_switch(code, c)), maxdeg)
            smoothed = _conway(_relabel(_smooth(code, c)), maxdeg - 1) if maxdeg else ()
            return poly_add(switched, (0,) + tuple(sign * a for a in smoothed) if smoothed else ())
    return (1,) if len(code) == 1 else ()


def conway_polynomial(d: Diagram, maxdeg: int | None = None) -> Poly:
    """Conway polynomial of an oriented link diagram (any number of components).

    With ``maxdeg`` only coefficients up to that degree are computed, which
    keeps the skein recursion polynomial in the crossing count.
    """
    if maxdeg is None:
        maxdeg = d.crossing_count + len(d.components)
    return _conway(_relabel(_to_code(d)), maxdeg)


def conway_knot_poly(d: Diagram, maxdeg: int | None = None) -> Poly:
    if len(d.components) != 1:
        raise ComponentCountError(f"expected a knot diagram, got {len(d.components)} components")
    return conway_polynomial(d, maxdeg)


def a2(d: Diagram) -> int:
    """Second Conway coefficient of a knot diagram."""
    p = conway_knot_poly(d, maxdeg=2)
    return p[2] if len(p) > 2 else 0


def a2_gauss_diagram(d: Diagram) -> int:
    """a2 from the Polyak-Viro Gauss diagram formula.

    Reading the code from its base point, sum sign(c1) * sign(c2) over
    pairs of crossings met in the interlaced order c1 c2 c1 c2 where c1 is
    first passed under and c2 first passed over.
    """
    if len(d.components) != 1:
        raise ComponentCountError(f"expected a knot diagram, got {len(d.components)} components")
    (comp,) = d.components
    first: dict[int, int] = {}
    second: dict[int, int] = {}
    first_over: dict[int, bool] = {}
    for i, (c, over) in enumerate(comp):
        if c in first:
            second[c] = i
        else:
            first[c] = i
            first_over[c] = over
    total = 0
    for c1, c2 in combinations(first, 2):
        if first[c2] < first[c1]:
            c1, c2 = c2, c1
        if not (first[c1] < first[c2] < second[c1] < second[c2]):
            continue
        if not first_over[c1] and first_over[c2]:
            total += d.signs[c1] * d.signs[c2]
    return total


def switch_crossing(d: Diagram, cid: int) -> Diagram:
    return _from_code(_switch(_to_code(d), cid))


def smooth_crossing(d: Diagram, cid: int) -> Diagram:
    """Oriented smoothing of one crossing (component count changes by one)."""
    return _from_code(_smooth(_to_code(d), cid))
