"""
Sharpening drivers.

Both drivers repeat one step until S is sharp-angled: take the first
non-sharp edge {s, r} in diagram order, build a deformation δ for J = (r, s),
check its certificate, and replace S by δ(S). Every step lowers the number of
non-sharp edges by exactly one.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from src.coxcore.reflections import ReflectionSet
from src.diagrams.classification import is_delta_edge, is_theta_edge
from src.diagrams.context import EdgeContext
from src.diagrams.diagram import Diagram, Vertex
from src.deform.constructions import sharpening_omega, theta_deformation
from src.deform.deformation import Deformation
from src.deform.verifier import VerificationReport, verify_deformation
from src.deform.wild import delta_edge_deformation
from src.pipeline.problem import ProblemInstance
from src.roots.angles import is_sharp_angled_set
from src.utils.errors import HasH3Subset, InputInconsistent, InternalInvariantBroken, NotThetaEdge
from src.utils.logging import logger

THETA = "theta"
DELTA = "delta"


@dataclass
class SharpeningStep:
    edge: Tuple[Vertex, Vertex]
    route: str
    rationale: str
    deformation: Deformation
    reflections: ReflectionSet
    verification: VerificationReport
    non_sharp_before: int
    non_sharp_after: int

    def to_json(self) -> Dict[str, Any]:
        record = self.deformation.to_json()
        record.update(
            {
                "route": self.route,
                "rationale": self.rationale,
                "verification": self.verification.to_dict(),
                "S": [word.to_json() for word in self.reflections.words().values()],
                "non_sharp": [self.non_sharp_before, self.non_sharp_after],
            }
        )
        return record


@dataclass
class SharpeningTrace:
    instance: ProblemInstance
    steps: List[SharpeningStep] = field(default_factory=list)
    final_reflections: Optional[ReflectionSet] = None
    final_sharp: bool = False

    @property
    def final_words(self):
        final = self.final_reflections or self.instance.reflections
        return final.words()


def non_sharp_edges(reflections: ReflectionSet, cap: int) -> Tuple[Tuple[Vertex, Vertex], ...]:
    return is_sharp_angled_set(reflections, reflections.system, cap).offending


def choose_route(diagram: Diagram, J: Tuple[Vertex, Vertex]) -> Tuple[str, str]:
    """Θ when o(rs) != 5 or no H₃ subset contains J; Δ otherwise."""
    r, s = J
    m = diagram.label(r, s)
    if m != 5:
        return THETA, f"o({r}{s}) = {m} is not 5"
    if not diagram.has_h3_subset(J):
        return THETA, f"o({r}{s}) = 5 and no H3 subset contains {{{r}, {s}}}"
    return DELTA, f"o({r}{s}) = 5 and {{{r}, {s}}} lies in an H3 subset"


def _theta_step(diagram: Diagram, reflections: ReflectionSet, J, cap: int) -> Deformation:
    r, s = J
    if not is_theta_edge(diagram, J):
        raise InputInconsistent(
            f"non-sharp edge {s}{r} should be a theta-edge but is not",
            {"edge": [s, r]},
        )
    omega = sharpening_omega(reflections, r, s, cap)
    return theta_deformation(diagram, J, omega)


def _delta_step(diagram: Diagram, J) -> Deformation:
    r, s = J
    report = is_delta_edge(diagram, J)
    if not report:
        raise InputInconsistent(
            f"non-sharp edge {s}{r} should be a delta-edge but is not",
            {"edge": [s, r], "violations": [v.to_dict() for v in report.violations]},
        )
    context = EdgeContext(diagram, J)
    problems = context.guarantee_violations()
    if problems:
        raise InputInconsistent(f"delta-edge context of {s}{r} is malformed", {"edge": [s, r], "problems": problems})
    return delta_edge_deformation(diagram, J, context=context)


def sharpening_step(
    instance: ProblemInstance, reflections: ReflectionSet, allow_delta: bool = True
) -> Optional[SharpeningStep]:
    """One deformation step, or None when the set is already sharp-angled."""
    cap = instance.order_cap
    offending = non_sharp_edges(reflections, cap)
    if not offending:
        return None

    s, r = offending[0]
    J = (r, s)
    diagram = reflections.diagram(cap)
    route, rationale = choose_route(diagram, J)
    log = logger.bind(edge=[s, r], route=route)
    log.info("Sharpening step", rationale=rationale, non_sharp=len(offending))

    if route == THETA:
        d = _theta_step(diagram, reflections, J, cap)
    elif not allow_delta:
        raise HasH3Subset(f"{{{s}, {r}}} lies in an H3 subset", {"edge": [s, r]})
    else:
        d = _delta_step(diagram, J)

    report = verify_deformation(d, reflections, cap, instance.group_cap, diagram)
    if not report.ok:
        raise InternalInvariantBroken(
            f"deformation for {s}{r} failed {report.failures}",
            {"edge": [s, r], "verification": report.to_dict()},
        )

    updated = reflections.replace(d.conjugators)
    after = non_sharp_edges(updated, cap)
    if len(after) != len(offending) - 1:
        raise InternalInvariantBroken(
            f"non-sharp count went from {len(offending)} to {len(after)}",
            {"edge": [s, r], "before": [list(e) for e in offending], "after": [list(e) for e in after]},
        )
    log.debug("Step applied", changed=list(d.changed()), non_sharp_after=len(after))
    return SharpeningStep(
        edge=(s, r),
        route=route,
        rationale=rationale,
        deformation=d,
        reflections=updated,
        verification=report,
        non_sharp_before=len(offending),
        non_sharp_after=len(after),
    )


def _run(instance: ProblemInstance, allow_delta: bool) -> SharpeningTrace:
    trace = SharpeningTrace(instance)
    reflections = instance.reflections
    while True:
        step = sharpening_step(instance, reflections, allow_delta=allow_delta)
        if step is None:
            break
        trace.steps.append(step)
        reflections = step.reflections
    trace.final_reflections = reflections
    trace.final_sharp = True
    logger.info("Sharpening finished", steps=len(trace.steps), S=list(reflections.names))
    return trace


def sharpen(instance: ProblemInstance) -> SharpeningTrace:
    """Sharpen S with Θ-steps and Δ-steps."""
    return _run(instance, allow_delta=True)


def sharpen_no_h3(instance: ProblemInstance) -> SharpeningTrace:
    """Sharpen S with Θ-steps only; Γ(S) must have no subset of type H₃."""
    diagram = instance.reflections.diagram(instance.order_cap)
    if diagram.has_h3_subset():
        raise HasH3Subset("the diagram of S has a subset of type H3")
    try:
        return _run(instance, allow_delta=False)
    except InputInconsistent as e:
        raise NotThetaEdge(str(e), e.details) from e
