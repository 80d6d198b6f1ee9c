"""
Certificate checks for a deformation record.

Every item is decided by exact matrix arithmetic on the reflections of S and
of δ(S). Generation of W by δ(S) is certified where a re-expression of each
x ∈ S can be found (explicit conjugators, the dihedral group ⟨J⟩ and the
finite parabolics of the spherical family); anything else is reported as
unverified, not as a failure.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Set

from src.coxcore.reflections import ReflectionSet
from src.coxcore.system import GroupElement
from src.diagrams.diagram import Diagram
from src.deform.deformation import Deformation, edge_key
from src.utils.config_reader import get_config_int
from src.utils.errors import GroupTooLarge
from src.utils.logging import logger


class CheckStatus(str, Enum):
    PASSED = "passed"
    FAILED = "failed"
    UNVERIFIED = "unverified"


@dataclass
class CheckResult:
    status: CheckStatus = CheckStatus.PASSED
    details: List[str] = field(default_factory=list)

    def fail(self, detail: str) -> None:
        self.status = CheckStatus.FAILED
        self.details.append(detail)

    def to_dict(self) -> Dict[str, Any]:
        return {"status": self.status.value, "details": list(self.details)}


@dataclass
class VerificationReport:
    edge: List[str]
    checks: Dict[str, CheckResult]

    @property
    def failures(self) -> List[str]:
        return [name for name, check in self.checks.items() if check.status == CheckStatus.FAILED]

    @property
    def ok(self) -> bool:
        return not self.failures

    def status(self, name: str) -> CheckStatus:
        return self.checks[name].status

    def to_dict(self) -> Dict[str, Any]:
        return {
            "edge": self.edge,
            "ok": self.ok,
            "failures": self.failures,
            "checks": {name: check.to_dict() for name, check in self.checks.items()},
        }


def subgroup_closure(generators: Iterable[GroupElement], cap: int) -> Set[GroupElement]:
    """Breadth-first closure of a finite subgroup generated by the given elements."""
    generators = list(generators)
    if not generators:
        return set()
    identity = generators[0].system.identity()
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for g in frontier:
            for h in generators:
                gh = g * h
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
                    if len(seen) > cap:
                        raise GroupTooLarge(f"subgroup exceeds {cap} elements", {"cap": cap})
        frontier = nxt
    return seen


def _check_ad1(d: Deformation, images: ReflectionSet) -> CheckResult:
    check = CheckResult()
    for x in d.domain:
        if not images[x].element.is_involution():
            check.fail(f"delta({x}) is not an involution")
    return check


def _check_ad2(d: Deformation, S: ReflectionSet, images: ReflectionSet, cap: int) -> CheckResult:
    check = CheckResult()
    r, s = d.J
    if not d.omega.alphabet() <= {r, s}:
        check.fail(f"omega = {d.omega} leaves <{r}, {s}>")
    if images[s].element != S[s].element:
        check.fail(f"delta({s}) != {s}")
    if images[r].element != S.evaluate(d.omega.conjugate(r)):
        check.fail(f"delta({r}) != omega {r} omega^-1")
    if check.status == CheckStatus.PASSED:
        dihedral = subgroup_closure([images[r].element, S[s].element], cap)
        if S[r].element not in dihedral:
            check.fail(f"omega {r} omega^-1 and {s} do not generate <{r}, {s}>")
    return check


def _check_generation(
    d: Deformation, S: ReflectionSet, images: ReflectionSet, diagram: Diagram, order_cap: int, group_cap: int
) -> CheckResult:
    """
    Grow the set G of x ∈ S known to lie in ⟨δ(S)⟩: x joins when δ(x) = x, when
    every letter of w_x is already in G, through ⟨δ(r), s⟩ = ⟨J⟩, or through a
    finite parabolic ⟨K⟩ from the spherical family.
    """
    r, s = d.J
    generated = {x for x in d.domain if images[x].element == S[x].element}
    closures: Dict[FrozenSet[str], Set[GroupElement]] = {}
    changed = True
    while changed:
        changed = False
        for x in d.domain:
            if x not in generated and d.conjugator(x).alphabet() <= generated:
                generated.add(x)
                changed = True
        if s in generated and r not in generated:
            if S[r].element in subgroup_closure([images[r].element, S[s].element], order_cap):
                generated.add(r)
                changed = True
        if changed:
            continue
        for K in d.spherical_family:
            missing = [x for x in diagram.ordered(K) if x not in generated]
            if not missing or not diagram.is_spherical(K):
                continue
            gens = [images[x].element for x in K if d.conjugator(x).alphabet() <= K]
            gens += [S[x].element for x in K if x in generated]
            key = frozenset(gens)
            if key not in closures:
                try:
                    closures[key] = subgroup_closure(gens, group_cap)
                except GroupTooLarge:
                    closures[key] = set()
            for x in missing:
                if S[x].element in closures[key]:
                    generated.add(x)
                    changed = True

    check = CheckResult()
    missing = [x for x in d.domain if x not in generated]
    if missing:
        check.status = CheckStatus.UNVERIFIED
        check.details.append(f"no re-expression found for {missing}")
    return check


def _check_ad4(d: Deformation, S: ReflectionSet, images: ReflectionSet, diagram: Diagram, cap: int) -> CheckResult:
    check = CheckResult()
    new_diagram = images.diagram(cap)
    J = edge_key(*d.J)
    seen_images = []
    for a, b in diagram.edges(d.domain):
        E = edge_key(a, b)
        if E == J:
            seen_images.append(J)
            continue
        img = d.edge_map.get(E)
        if img is None:
            check.fail(f"edge {a}{b} has no image")
            continue
        a2, b2 = img.image
        seen_images.append(edge_key(a2, b2))
        g = S.evaluate(img.conjugator)
        g_inv = S.evaluate(img.conjugator.inverse())
        expected = {g * S[a].element * g_inv, g * S[b].element * g_inv}
        if {images[a2].element, images[b2].element} != expected:
            check.fail(f"delta({{{a2}, {b2}}}) != {{{a}, {b}}} conjugated by {img.conjugator}")
        if new_diagram.label(a2, b2) != diagram.label(a, b):
            check.fail(f"o(delta({a2}) delta({b2})) != o({a}{b})")
    if len(set(seen_images)) != len(seen_images):
        check.fail("edge map is not injective")
    new_edges = {edge_key(a, b) for a, b in new_diagram.edges()}
    if set(seen_images) != new_edges:
        check.fail(f"edge map misses {sorted(sorted(e) for e in new_edges - set(seen_images))}")
    return check


def _check_automorphism(d: Deformation, diagram: Diagram) -> CheckResult:
    """Conjugators inside spherical members of the family and every edge fixed by name."""
    check = CheckResult()
    family = [K for K in d.spherical_family if diagram.is_spherical(K)]
    if len(family) != len(d.spherical_family) or not family:
        check.status = CheckStatus.UNVERIFIED
        check.details.append("no spherical family recorded")
        return check
    for x in d.domain:
        letters = d.conjugator(x).alphabet()
        if letters and not any(letters <= K for K in family):
            check.status = CheckStatus.UNVERIFIED
            check.details.append(f"w_{x} is not inside one K of the family")
    for E, img in d.edge_map.items():
        if edge_key(*img.image) != E:
            check.status = CheckStatus.UNVERIFIED
            check.details.append(f"edge {sorted(E)} changes name")
    return check


def verify_deformation(
    d: Deformation,
    reflections: ReflectionSet,
    cap: int,
    group_cap: Optional[int] = None,
    diagram: Optional[Diagram] = None,
) -> VerificationReport:
    """
    Check a deformation of the named set ``reflections``. The report lists
    ad1, ad2, generation, ad4 and automorphism; only failed items count as
    failures.
    """
    group_cap = group_cap or get_config_int("coxeter.group_cap", 20000)
    diagram = diagram or reflections.diagram(cap)
    checks: Dict[str, CheckResult] = {}

    domain = CheckResult()
    unknown = [x for x in d.domain if x not in reflections]
    if unknown:
        domain.fail(f"unknown generators {unknown}")
        return VerificationReport(list(d.J), {"domain": domain})
    uncovered = [x for x in diagram.vertices if x not in d]
    if uncovered:
        domain.fail(f"delta is undefined on {uncovered}")
    checks["domain"] = domain

    images = reflections.replace({x: d.conjugator(x) for x in d.domain})
    checks["ad1"] = _check_ad1(d, images)
    checks["ad2"] = _check_ad2(d, reflections, images, 2 * cap + 2)
    checks["generation"] = _check_generation(d, reflections, images, diagram, 2 * cap + 2, group_cap)
    checks["ad4"] = _check_ad4(d, reflections, images, diagram, cap)
    checks["automorphism"] = _check_automorphism(d, diagram)

    report = VerificationReport(list(d.J), checks)
    logger.info(
        "Deformation verified",
        edge=list(d.J),
        failures=report.failures,
        generation=checks["generation"].status.value,
    )
    return report
