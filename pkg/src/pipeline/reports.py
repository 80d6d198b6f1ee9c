"""
Reports over a problem instance: per-edge analysis, the brute-force oracle for
finite groups, and trace (de)serialization with exact replay.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, List, Mapping, Optional

import pandas as pd

from src.coxcore.enumeration import (
    dihedral_reflections,
    enumerate_group,
    enumerate_reflections,
    parabolic_dihedral_orbit,
    simple_pair_orbit,
)
from src.coxcore.matrix import INF
from src.coxcore.reflections import ReflectionSet
from src.coxcore.words import Word
from src.diagrams.classification import is_delta_edge, is_theta_edge
from src.diagrams.context import EdgeContext
from src.deform.deformation import Deformation
from src.deform.verifier import verify_deformation
from src.pipeline.drivers import DELTA, SharpeningTrace, choose_route, non_sharp_edges
from src.pipeline.problem import ProblemInstance
from src.roots.angles import angle_class, is_sharp_angled_set
from src.utils.errors import ParseError
from src.utils.logging import logger


# --- analyze --------------------------------------------------------------------


@dataclass
class AnalysisReport:
    sharp: bool
    has_h3: bool
    edges: List[Dict[str, Any]]

    @property
    def table(self) -> pd.DataFrame:
        columns = ["edge", "label", "b", "sharp", "route", "theta", "delta"]
        rows = [{key: row.get(key) for key in columns} for row in self.edges]
        return pd.DataFrame(rows, columns=columns)

    @property
    def non_sharp(self) -> int:
        return sum(1 for row in self.edges if row["sharp"] is False)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sharp": self.sharp,
            "has_h3": self.has_h3,
            "non_sharp": self.non_sharp,
            "edges": self.edges,
        }


def analyze(instance: ProblemInstance) -> AnalysisReport:
    """Sharpness of every edge of Γ(S); for non-sharp edges also the route and its classification."""
    reflections = instance.reflections
    cap = instance.order_cap
    diagram = reflections.diagram(cap)
    verdict = is_sharp_angled_set(reflections, reflections.system, cap)

    edges: List[Dict[str, Any]] = []
    for a, b in diagram.edges():
        angle = verdict.angles[(a, b)]
        row: Dict[str, Any] = {
            "edge": [a, b],
            "label": diagram.label(a, b),
            "b": str(angle.b_value),
            "sharp": angle.sharp,
        }
        if angle.sharp is False:
            J = (b, a)
            route, rationale = choose_route(diagram, J)
            row.update({"route": route, "rationale": rationale, "theta": is_theta_edge(diagram, J)})
            if diagram.label(a, b) == 5:
                report = is_delta_edge(diagram, J, exhaustive=True)
                row["delta"] = report.is_delta
                row["delta_report"] = report.to_dict()
            if route == DELTA:
                context = EdgeContext(diagram, J)
                row["context"] = context.summary()
                row["guarantee_violations"] = context.guarantee_violations()
        edges.append(row)

    logger.info("Instance analyzed", edges=len(edges), non_sharp=len(verdict.offending))
    return AnalysisReport(sharp=verdict.sharp, has_h3=diagram.has_h3_subset(), edges=edges)


# --- oracle ---------------------------------------------------------------------


@dataclass
class OracleReport:
    group_order: int
    reflection_count: int
    table: pd.DataFrame
    S_edges: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def compared(self) -> pd.DataFrame:
        return self.table[self.table["parabolic"].astype(bool)]

    @property
    def disagreements(self) -> pd.DataFrame:
        compared = self.compared
        return compared[~compared["agree"].astype(bool)]

    @property
    def ok(self) -> bool:
        return self.disagreements.empty

    def to_dict(self) -> Dict[str, Any]:
        return {
            "group_order": self.group_order,
            "reflections": self.reflection_count,
            "pairs_checked": int(len(self.compared)),
            "pairs_skipped": int(len(self.table) - len(self.compared)),
            "disagreements": self.disagreements.to_dict(orient="records"),
            "S_edges": self.S_edges,
            "ok": self.ok,
        }


def oracle(instance: ProblemInstance, cap: Optional[int] = None) -> OracleReport:
    """
    Enumerate W and all of its reflections, then compare the root test with
    pair conjugacy to a simple pair on every reflection pair of finite order
    whose dihedral group is conjugate to a standard parabolic ⟨r, r'⟩. Other
    pairs are tabulated with parabolic=False and left out of the comparison.
    Raises GroupTooLarge when W does not fit under ``cap``.
    """
    cap = cap or instance.group_cap
    system = instance.system
    order = len(enumerate_group(system, cap))
    reflections = enumerate_reflections(system, cap)
    orbit = simple_pair_orbit(system, cap)
    parabolics = parabolic_dihedral_orbit(system, cap)

    rows = []
    for x, y in combinations(reflections, 2):
        angle = angle_class(x, y, system, instance.order_cap)
        if angle.order_q == INF:
            continue
        conjugate_to_simple = frozenset((x.element.key, y.element.key)) in orbit
        parabolic = dihedral_reflections(x.element, y.element, angle.order_q) in parabolics
        rows.append(
            {
                "x": str(x.word),
                "y": str(y.word),
                "order": angle.order_q,
                "b": str(angle.b_value),
                "root_sharp": bool(angle.sharp),
                "conjugacy_sharp": conjugate_to_simple,
                "parabolic": parabolic,
                "agree": bool(angle.sharp) == conjugate_to_simple,
            }
        )
    table = pd.DataFrame(rows, columns=["x", "y", "order", "b", "root_sharp", "conjugacy_sharp", "parabolic", "agree"])

    S = instance.reflections
    S_edges = []
    for (a, x), (b, y) in combinations(S.items(), 2):
        angle = angle_class(x, y, system, instance.order_cap)
        if angle.order_q == INF:
            continue
        S_edges.append(
            {
                "edge": [a, b],
                "root_sharp": bool(angle.sharp),
                "conjugacy_sharp": frozenset((x.element.key, y.element.key)) in orbit,
            }
        )

    report = OracleReport(order, len(reflections), table, S_edges)
    logger.info(
        "Oracle finished",
        group_order=order,
        reflections=len(reflections),
        pairs=len(table),
        disagreements=len(report.disagreements),
    )
    return report


# --- traces ---------------------------------------------------------------------


@dataclass
class StepRecord:
    edge: List[str]
    route: Optional[str]
    rationale: Optional[str]
    deformation: Deformation
    words: Dict[str, Word]
    verification: Dict[str, Any]


@dataclass
class TraceRecord:
    steps: List[StepRecord]
    final_words: Dict[str, Word]
    sharp: bool
    instance: Optional[Dict[str, Any]] = None


def trace_to_json(trace: SharpeningTrace) -> Dict[str, Any]:
    """
    ``{"instance", "names", "steps": [...], "final_S": [[letters], ...], "sharp"}``;
    every S is a list of words in the order of ``names``.
    """
    return {
        "instance": trace.instance.to_dict(),
        "names": list(trace.instance.names),
        "steps": [step.to_json() for step in trace.steps],
        "final_S": [word.to_json() for word in trace.final_words.values()],
        "sharp": trace.final_sharp,
    }


def _names(data: Mapping[str, Any]) -> List[str]:
    if "names" in data:
        return [str(name) for name in data["names"]]
    instance = data.get("instance")
    if isinstance(instance, Mapping) and isinstance(instance.get("S"), list):
        return [str(Word.parse(raw)) for raw in instance["S"]]
    raise ParseError("trace has neither names nor an instance to name S by")


def _words(raw: Any, names: List[str]) -> Dict[str, Word]:
    if not isinstance(raw, list) or not all(isinstance(letters, list) for letters in raw):
        raise ParseError("S must be a list of words given as letter lists")
    if len(raw) != len(names):
        raise ParseError(f"S has {len(raw)} words for {len(names)} names")
    words = {name: Word(tuple(letters)) for name, letters in zip(names, raw)}
    bad = [name for name, word in words.items() if not word.is_conjugate_shape()]
    if bad:
        raise ParseError(f"recorded words of {bad} are not reflections")
    return words


def trace_from_json(data: Mapping[str, Any]) -> TraceRecord:
    if not isinstance(data, Mapping) or not isinstance(data.get("steps"), list):
        raise ParseError("trace must be an object with a list of steps")
    try:
        names = _names(data)
        steps = [
            StepRecord(
                edge=list(item["edge"]),
                route=item.get("route"),
                rationale=item.get("rationale"),
                deformation=Deformation.from_json(item),
                words=_words(item["S"], names),
                verification=dict(item.get("verification", {})),
            )
            for item in data["steps"]
        ]
        return TraceRecord(
            steps=steps,
            final_words=_words(data["final_S"], names),
            sharp=bool(data["sharp"]),
            instance=data.get("instance"),
        )
    except (KeyError, TypeError) as e:
        raise ParseError(f"malformed trace: {e}") from e


@dataclass
class ReplayReport:
    steps: List[Dict[str, Any]]
    final_matches: bool
    final_sharp: bool
    claimed_sharp: bool

    @property
    def ok(self) -> bool:
        return (
            all(step["ok"] for step in self.steps)
            and self.final_matches
            and self.final_sharp == self.claimed_sharp
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "steps": self.steps,
            "final_matches": self.final_matches,
            "final_sharp": self.final_sharp,
            "claimed_sharp": self.claimed_sharp,
        }


def replay(instance: ProblemInstance, trace_json: Mapping[str, Any]) -> ReplayReport:
    """
    Re-apply every recorded δ to S, compare each S_i with the recorded words by
    exact group elements, re-run the verifier on every step and recompute the
    final sharpness.
    """
    record = trace_from_json(trace_json)
    cap = instance.order_cap
    reflections = instance.reflections
    results = []
    for index, step in enumerate(record.steps):
        d = step.deformation
        problems = []
        if set(d.domain) != set(reflections.names):
            problems.append(f"domain {sorted(d.domain)} differs from S")
            results.append({"index": index, "edge": step.edge, "ok": False, "problems": problems})
            break
        report = verify_deformation(d, reflections, cap, instance.group_cap)
        if not report.ok:
            problems.append(f"verification failed: {report.failures}")
        reflections = reflections.replace(d.conjugators)
        recorded = ReflectionSet.from_words(instance.system, step.words)
        if not recorded.same_elements(reflections):
            problems.append("recorded S differs from the replayed S")
        results.append({"index": index, "edge": step.edge, "ok": not problems, "problems": problems})

    final_recorded = ReflectionSet.from_words(instance.system, record.final_words)
    final_sharp = not non_sharp_edges(reflections, cap)
    report = ReplayReport(
        steps=results,
        final_matches=final_recorded.same_elements(reflections),
        final_sharp=final_sharp,
        claimed_sharp=record.sharp,
    )
    logger.info("Trace replayed", steps=len(results), ok=report.ok)
    return report
