"""
Brute-force closures used as independent oracles: the whole group, all of its
reflections, the W-orbit of the simple reflection pairs and the conjugates
of the finite rank-2 parabolics.
"""

from collections import deque
from itertools import combinations
from typing import Dict, FrozenSet, List, Set, Tuple

from src.coxcore.matrix import INF
from src.coxcore.reflections import Reflection, reflection_from_conjugate
from src.coxcore.system import CoxeterSystem, GroupElement
from src.coxcore.words import Word
from src.utils.errors import GroupTooLarge
from src.utils.logging import logger


def enumerate_group(system: CoxeterSystem, cap: int) -> List[GroupElement]:
    """BFS over left multiplication by generators, deduplicated by exact matrix."""
    identity = system.identity()
    seen: Dict[tuple, GroupElement] = {identity.key: identity}
    frontier = deque([identity])
    while frontier:
        g = frontier.popleft()
        for name in system.generators:
            h = g.left_by(name)
            if h.key in seen:
                continue
            seen[h.key] = h
            if len(seen) > cap:
                raise GroupTooLarge(f"group has more than {cap} elements", {"cap": cap})
            frontier.append(h)
    logger.info("Group enumerated", order=len(seen), generators=list(system.generators))
    return list(seen.values())


def enumerate_reflections(system: CoxeterSystem, cap: int) -> List[Reflection]:
    """All reflections w·r·w⁻¹, closed under conjugation by the generators."""
    found: Dict[tuple, Reflection] = {}
    queue = deque()
    for name in system.generators:
        rec = reflection_from_conjugate(Word(), name, system)
        found[rec.element.key] = rec
        queue.append(rec)
    while queue:
        rec = queue.popleft()
        for name in system.generators:
            element = rec.element.left_by(name).right_by(name)
            if element.key in found:
                continue
            new = reflection_from_conjugate(Word((name,)) + rec.conjugator, rec.generator, system)
            found[element.key] = new
            if len(found) > cap:
                raise GroupTooLarge(f"more than {cap} reflections", {"cap": cap})
            queue.append(new)
    return list(found.values())


PairKey = FrozenSet[tuple]


def simple_pair_orbit(system: CoxeterSystem, cap: int) -> Set[PairKey]:
    """
    {{w r w⁻¹, w r' w⁻¹} : w ∈ W, r ≠ r' ∈ R} as sets of matrix keys, closed
    under conjugation by generators.
    """
    generators = system.gen_matrices
    start = {frozenset((a.key, b.key)): (a, b) for a, b in combinations(generators, 2)}
    orbit: Dict[PairKey, Tuple[GroupElement, GroupElement]] = dict(start)
    queue = deque(start.values())
    while queue:
        a, b = queue.popleft()
        for name in system.generators:
            a2 = a.left_by(name).right_by(name)
            b2 = b.left_by(name).right_by(name)
            key = frozenset((a2.key, b2.key))
            if key in orbit:
                continue
            orbit[key] = (a2, b2)
            if len(orbit) > cap:
                raise GroupTooLarge(f"simple pair orbit exceeds {cap}", {"cap": cap})
            queue.append((a2, b2))
    return set(orbit)


def dihedral_reflections(x: GroupElement, y: GroupElement, order: int) -> PairKey:
    """Keys of the reflections (xy)^k·x, 0 ≤ k < order, of the dihedral group ⟨x, y⟩."""
    keys = set()
    current = x
    step = x * y
    for _ in range(order):
        keys.add(current.key)
        current = step * current
    return frozenset(keys)


def parabolic_dihedral_orbit(system: CoxeterSystem, cap: int) -> Set[PairKey]:
    """
    Conjugates of the finite rank-2 standard parabolics ⟨r, r'⟩, each stored as
    the set of keys of its reflections.
    """
    orbit: Dict[PairKey, Tuple[GroupElement, ...]] = {}
    queue = deque()
    for a, b in combinations(system.gen_matrices, 2):
        m = system.matrix.label(a.witness.letters[0], b.witness.letters[0])
        if m == INF:
            continue
        members = []
        current = a
        for _ in range(m):
            members.append(current)
            current = (a * b) * current
        key = frozenset(g.key for g in members)
        if key not in orbit:
            orbit[key] = tuple(members)
            queue.append(tuple(members))
    while queue:
        members = queue.popleft()
        for name in system.generators:
            moved = tuple(g.left_by(name).right_by(name) for g in members)
            key = frozenset(g.key for g in moved)
            if key in orbit:
                continue
            orbit[key] = moved
            if len(orbit) > cap:
                raise GroupTooLarge(f"parabolic orbit exceeds {cap}", {"cap": cap})
            queue.append(moved)
    return set(orbit)
