"""
Constraint-table templates for the DE3, DE4 and tameness patterns.

The tables live in templates.toml. A template is a set of roles with fixed
core labels, optional anchor vertices whose labels to the roles must equal one
of the allowed rows, and an optional chordfree path with head/tail/escape
conditions. Matching is a small backtracking search; it is not a general
subgraph-isomorphism engine.
"""

import os
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

from src.coxcore.matrix import Label, parse_label
from src.diagrams.diagram import Diagram, Vertex
from src.utils.config_reader import get_config_value
from src.utils.errors import ParseError
from src.utils.logging import logger

_PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
_DEFAULT_FILE = os.path.join(os.path.dirname(os.path.abspath(__file__)), "templates.toml")


@dataclass(frozen=True)
class Anchor:
    name: str
    roles: Tuple[str, ...]
    rows: Tuple[Tuple[Label, ...], ...]


@dataclass(frozen=True)
class PathSpec:
    min_length: int
    head: str
    escape_roles: Tuple[str, ...] = ()
    escape_tail: bool = False
    tail_roles: Tuple[str, ...] = ()
    tail_labels: Tuple[Tuple[Label, ...], ...] = ()
    tail_anchor: Optional[str] = None


@dataclass(frozen=True)
class Template:
    name: str
    description: str
    roles: Tuple[str, ...]
    core: Tuple[Tuple[str, str, Label], ...]
    anchors: Tuple[Anchor, ...] = ()
    path: Optional[PathSpec] = None


@dataclass(frozen=True)
class TemplateMatch:
    template: str
    roles: Dict[str, Vertex]
    path: Tuple[Vertex, ...] = field(default=())

    @property
    def vertices(self) -> Tuple[Vertex, ...]:
        return tuple(self.roles.values()) + self.path

    def to_dict(self) -> Dict[str, Any]:
        return {"pattern": self.template, "roles": dict(self.roles), "path": list(self.path)}


def _rows(raw: Sequence[Sequence[Any]]) -> Tuple[Tuple[Label, ...], ...]:
    return tuple(tuple(parse_label(v) for v in row) for row in raw)


def _parse_template(name: str, raw: Mapping[str, Any]) -> Template:
    try:
        anchors = tuple(
            Anchor(a["name"], tuple(a["roles"]), _rows(a["labels"])) for a in raw.get("anchors", [])
        )
        path = None
        if "path" in raw:
            p = raw["path"]
            path = PathSpec(
                min_length=int(p["min_length"]),
                head=p["head"],
                escape_roles=tuple(p.get("escape_roles", ())),
                escape_tail=bool(p.get("escape_tail", False)),
                tail_roles=tuple(p.get("tail_roles", ())),
                tail_labels=_rows(p.get("tail_labels", ())),
                tail_anchor=p.get("tail_anchor"),
            )
        return Template(
            name=name,
            description=raw.get("description", ""),
            roles=tuple(raw["roles"]),
            core=tuple((a, b, parse_label(m)) for a, b, m in raw["core"]),
            anchors=anchors,
            path=path,
        )
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"template {name} is malformed: {e}", {"template": name}) from e


def _templates_path() -> str:
    configured = get_config_value("diagrams.templates_file", None)
    if not configured:
        return _DEFAULT_FILE
    return configured if os.path.isabs(configured) else os.path.join(_PROJECT_ROOT, configured)


@lru_cache(maxsize=None)
def load_templates(path: Optional[str] = None) -> Dict[str, Template]:
    path = path or _templates_path()
    with open(path, "rb") as fp:
        raw = tomllib.load(fp)
    templates = {name: _parse_template(name, body) for name, body in raw.items()}
    logger.debug("Templates loaded", path=path, names=sorted(templates))
    return templates


def get_template(name: str) -> Template:
    return load_templates()[name]


# --- matching -----------------------------------------------------------------


def _label_matches(diagram: Diagram, a: Vertex, b: Vertex, wanted: Label) -> bool:
    return diagram.label(a, b) == wanted


def _bind_roles(
    diagram: Diagram, template: Template, bound: Dict[str, Vertex], pool: Sequence[Vertex]
) -> Iterator[Dict[str, Vertex]]:
    """Backtrack over the unbound roles in template order."""
    free = [role for role in template.roles if role not in bound]
    if not free:
        if all(_label_matches(diagram, bound[a], bound[b], m) for a, b, m in template.core):
            yield dict(bound)
        return
    role = free[0]
    used = set(bound.values())
    for v in pool:
        if v in used:
            continue
        trial = {**bound, role: v}
        consistent = all(
            _label_matches(diagram, trial[a], trial[b], m)
            for a, b, m in template.core
            if a in trial and b in trial
        )
        if consistent:
            yield from _bind_roles(diagram, template, trial, pool)


def _bind_anchors(
    diagram: Diagram, anchors: Sequence[Anchor], roles: Dict[str, Vertex], pool: Sequence[Vertex]
) -> Iterator[Dict[str, Vertex]]:
    if not anchors:
        yield dict(roles)
        return
    anchor, rest = anchors[0], anchors[1:]
    used = set(roles.values())
    for v in pool:
        if v in used:
            continue
        labels = tuple(diagram.label(v, roles[role]) for role in anchor.roles)
        if labels in anchor.rows:
            yield from _bind_anchors(diagram, rest, {**roles, anchor.name: v}, pool)


def _paths(
    diagram: Diagram, spec: PathSpec, roles: Dict[str, Vertex], pool: Sequence[Vertex]
) -> Iterator[Tuple[Vertex, ...]]:
    head = roles[spec.head]
    anchor = roles.get(spec.tail_anchor) if spec.tail_anchor else None
    escape = [roles[role] for role in spec.escape_roles]
    tail_roles = [roles[role] for role in spec.tail_roles]
    taken = set(roles.values())
    cap = len(diagram)

    def escapes(v: Vertex) -> bool:
        return not escape or any(diagram.infinite(v, e) for e in escape)

    def can_end(v: Vertex) -> bool:
        if spec.escape_tail and not escapes(v):
            return False
        if anchor is not None and not diagram.finite(v, anchor):
            return False
        if tail_roles and tuple(diagram.label(v, x) for x in tail_roles) not in spec.tail_labels:
            return False
        return True

    def can_continue(v: Vertex) -> bool:
        if not escapes(v):
            return False
        return anchor is None or diagram.infinite(v, anchor)

    def walk(path: List[Vertex]) -> Iterator[Tuple[Vertex, ...]]:
        last = path[-1]
        if len(path) >= spec.min_length and can_end(last):
            yield tuple(path)
        if len(path) >= cap or not can_continue(last):
            return
        for v in pool:
            if v in taken or v in path:
                continue
            if not diagram.finite(v, last) or not diagram.infinite(v, head):
                continue
            if any(diagram.finite(v, p) for p in path[:-1]):
                continue
            yield from walk(path + [v])

    for first in pool:
        if first in taken or not diagram.finite(first, head):
            continue
        yield from walk([first])


def match_template(
    diagram: Diagram,
    template: Template,
    J: Sequence[Vertex],
    bound: Optional[Mapping[str, Vertex]] = None,
) -> Optional[TemplateMatch]:
    """
    First match of ``template`` with {r, s} = J (both orientations tried) and
    any extra roles pre-bound, or None.
    """
    a, b = J
    pool = diagram.vertices
    for r, s in ((a, b), (b, a)):
        start = {"r": r, "s": s, **(bound or {})}
        if len(set(start.values())) != len(start):
            continue
        for roles in _bind_roles(diagram, template, start, pool):
            for with_anchors in _bind_anchors(diagram, template.anchors, roles, pool):
                if template.path is None:
                    return TemplateMatch(template.name, with_anchors)
                for path in _paths(diagram, template.path, with_anchors, pool):
                    return TemplateMatch(template.name, with_anchors, path)
    return None


def find_pattern(
    diagram: Diagram, name: str, J: Sequence[Vertex], bound: Optional[Mapping[str, Vertex]] = None
) -> Optional[TemplateMatch]:
    return match_template(diagram, get_template(name), J, bound)
