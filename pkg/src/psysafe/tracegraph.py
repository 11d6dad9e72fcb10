"""Typed traceability graph over all analysis artifacts.

The graph contains exactly the declared links, nothing synthesized. Edges
point from the more derived artifact to the one it was derived from or
refers to (loss -> stake, hazard -> loss, goal -> hazard, responsibility
-> goal/entity, UCA -> action/hazard, scenario -> UCA/action), so "up"
follows edges forward towards stakes and "down" follows them backwards
towards scenarios.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass

from .model import AnalysisModel, EntityKind, ScenarioType, entity_kind


class EdgeType(enum.Enum):
    VIOLATES = "violates"
    LEADS_TO = "leads_to"
    PREVENTS = "prevents"
    DERIVED_FROM = "derived_from"
    ASSIGNED_TO = "assigned_to"
    ON_ACTION = "on_action"
    HAZARDS = "hazards"
    FOR_UCA = "for_uca"
    FOR_ACTION = "for_action"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class TraceEdge:
    source: str
    target: str
    type: EdgeType


@dataclass(frozen=True)
class TraceGraph:
    #: entity ID -> declaration kind
    nodes: tuple[tuple[str, EntityKind], ...]
    edges: tuple[TraceEdge, ...]

    def node_ids(self) -> frozenset[str]:
        return frozenset(node_id for node_id, _ in self.nodes)

    def outgoing(self, node_id: str) -> list[TraceEdge]:
        return [e for e in self.edges if e.source == node_id]

    def incoming(self, node_id: str) -> list[TraceEdge]:
        return [e for e in self.edges if e.target == node_id]


def build_trace_graph(model: AnalysisModel) -> TraceGraph:
    """One node per declared entity, one edge per declared link."""
    nodes = sorted((entity_id, model.kind_of(entity_id))
                   for entity_id in model.entity_ids)
    edges: list[TraceEdge] = []
    for loss in model.losses:
        for stake_id in sorted(loss.violates):
            edges.append(TraceEdge(loss.id, stake_id, EdgeType.VIOLATES))
    for hazard in model.hazards:
        for loss_id in sorted(hazard.leads_to):
            edges.append(TraceEdge(hazard.id, loss_id, EdgeType.LEADS_TO))
    for goal in model.goals:
        for hazard_id in sorted(goal.prevents):
            edges.append(TraceEdge(goal.id, hazard_id, EdgeType.PREVENTS))
    for resp in model.responsibilities:
        for goal_id in sorted(resp.derived_from):
            edges.append(TraceEdge(resp.id, goal_id, EdgeType.DERIVED_FROM))
        edges.append(TraceEdge(resp.id, resp.assignee, EdgeType.ASSIGNED_TO))
    for uca in model.ucas:
        edges.append(TraceEdge(uca.id, uca.on, EdgeType.ON_ACTION))
        for hazard_id in sorted(uca.hazards):
            edges.append(TraceEdge(uca.id, hazard_id, EdgeType.HAZARDS))
    for scenario in model.scenarios:
        edge_type = (EdgeType.FOR_UCA
                     if scenario.scenario_type is ScenarioType.UCA_OCCURRENCE
                     else EdgeType.FOR_ACTION)
        edges.append(TraceEdge(scenario.id, scenario.for_ref, edge_type))
    edges.sort(key=lambda e: (e.source, e.type.value, e.target))
    return TraceGraph(tuple(nodes), tuple(edges))


def trace_from(model: AnalysisModel, entity_id: str,
               direction: str = "both") -> TraceGraph:
    """Subgraph reachable from ``entity_id``.

    ``direction`` is ``up`` (follow edges forward, towards stakes),
    ``down`` (follow edges backwards, towards scenarios), or ``both``
    (the union of the two traversals). The result always includes the
    starting node. Raises KeyError for an unknown ID.
    """
    if direction not in ("up", "down", "both"):
        raise ValueError(f"direction must be up, down, or both, "
                         f"not {direction!r}")
    if entity_kind(model, entity_id) is None:
        raise KeyError(entity_id)
    graph = build_trace_graph(model)

    reached = {entity_id}
    if direction in ("up", "both"):
        reached |= _closure(graph, entity_id, forward=True)
    if direction in ("down", "both"):
        reached |= _closure(graph, entity_id, forward=False)

    nodes = tuple((node_id, kind) for node_id, kind in graph.nodes
                  if node_id in reached)
    edges = tuple(e for e in graph.edges
                  if e.source in reached and e.target in reached)
    return TraceGraph(nodes, edges)


def _closure(graph: TraceGraph, start: str, forward: bool) -> set[str]:
    adj: dict[str, set[str]] = {}
    for e in graph.edges:
        a, b = (e.source, e.target) if forward else (e.target, e.source)
        adj.setdefault(a, set()).add(b)
    seen: set[str] = set()
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in adj.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def format_trace_tree(model: AnalysisModel, entity_id: str,
                      direction: str = "both") -> str:
    """Render the reachable subgraph as an indented tree.

    Forward (up) steps print as ``-> edge_type target`` and reverse (down)
    steps as ``<- edge_type source``. A node already expanded earlier in
    the traversal is printed without re-expanding its children.
    """
    if direction not in ("up", "down", "both"):
        raise ValueError(f"direction must be up, down, or both, "
                         f"not {direction!r}")
    if entity_kind(model, entity_id) is None:
        raise KeyError(entity_id)
    graph = build_trace_graph(model)
    lines = [f"{entity_id} [{model.kind_of(entity_id)}]"]

    def expand(node: str, forward: bool, depth: int, seen: set[str]) -> None:
        edges = graph.outgoing(node) if forward else graph.incoming(node)
        edges.sort(key=lambda e: ((e.target if forward else e.source),
                                  e.type.value))
        for e in edges:
            other = e.target if forward else e.source
            arrow = "->" if forward else "<-"
            lines.append(f"{'  ' * depth}{arrow} {e.type} {other} "
                         f"[{model.kind_of(other)}]")
            if other not in seen:
                seen.add(other)
                expand(other, forward, depth + 1, seen)

    if direction in ("up", "both"):
        expand(entity_id, True, 1, {entity_id})
    if direction in ("down", "both"):
        expand(entity_id, False, 1, {entity_id})
    return "\n".join(lines) + "\n"
