"""Canonical ``.psy`` form of a resolved model.

Deterministic: declarations are grouped by kind, sorted by ID inside each
group, and ID lists are sorted. Re-parsing and resolving the output yields
a model equal to the input (spans aside).
"""

from __future__ import annotations

from .model import AnalysisModel, Entity, EntityKind


def _esc(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def _q(text: str) -> str:
    return f'"{_esc(text)}"'


def _ids(ids: frozenset[str] | tuple[str, ...]) -> str:
    return ", ".join(sorted(ids))


def _entity_props(e: Entity) -> str:
    props: list[str] = []
    if e.is_human:
        props.append("human")
    if e.sa_level is not None:
        props.append(f"sa_level {e.sa_level}")
    if e.psych_state is not None:
        props.append(f"psych_state {_q(e.psych_state)}")
    if e.algorithm is not None:
        props.append(f"algorithm {_q(e.algorithm)}")
    for pm in e.process_model:
        props.append(f"process_model {_q(pm)}")
    return " { " + " ".join(props) + " }" if props else ""


def print_canonical(model: AnalysisModel) -> str:
    """Render a resolved model as canonical ``.psy`` text (LF line ends)."""
    out: list[str] = []
    out.append(f"analysis {_q(model.title)} {{")
    out.append(f"  sae_level = {model.sae_level}")
    if model.boundary is not None:
        out.append(f"  boundary {_q(model.boundary)}")
    out.append("}")

    def by_id(items):
        return sorted(items, key=lambda item: item.id)

    groups: list[list[str]] = []

    groups.append([f"stakeholder {s.id} {_q(s.name)}"
                   for s in by_id(model.stakeholders)])
    groups.append([f"stake {s.id} {_q(s.description)} of {s.holder}"
                   for s in by_id(model.stakes)])
    groups.append([f"loss {l.id} {_q(l.description)} violates "
                   f"{_ids(l.violates)}" for l in by_id(model.losses)])
    hazard_lines = []
    for h in by_id(model.hazards):
        line = f"hazard {h.id} {_q(h.description)} leads_to {_ids(h.leads_to)}"
        if h.context is not None:
            line += f" context {_q(h.context)}"
        hazard_lines.append(line)
    groups.append(hazard_lines)
    groups.append([f"goal {g.id} {_q(g.description)} prevents "
                   f"{_ids(g.prevents)}" for g in by_id(model.goals)])
    groups.append([
        f"{'process' if e.kind is EntityKind.PROCESS else 'controller'} "
        f"{e.id} {_q(e.name)} level {e.level}{_entity_props(e)}"
        for e in by_id(model.structure.entities)])
    groups.append([f"action {a.id} {_q(a.label)} from {a.source} to "
                   f"{a.target}" for a in by_id(model.structure.actions)])
    groups.append([f"feedback {f.id} {_q(f.label)} from {f.source} to "
                   f"{f.target}" for f in by_id(model.structure.feedbacks)])
    groups.append([f"resp {r.id} {_q(r.description)} of {r.assignee} "
                   f"from {_ids(r.derived_from)}"
                   for r in by_id(model.responsibilities)])
    groups.append([f"uca {u.id} on {u.on} kind {u.kind.value} context "
                   f"{_q(u.context)} hazards {_ids(u.hazards)}"
                   for u in by_id(model.ucas)])
    groups.append([f"scenario {s.id} for {s.for_ref} factor "
                   f"{s.factor.value} {_q(s.description)}"
                   for s in by_id(model.scenarios)])
    assess_lines = []
    for hazard_id in sorted(model.assessments):
        a = model.assessments[hazard_id]
        line = (f"assess {a.hazard} severity {a.severity.name} exposure "
                f"{a.exposure.name} controllability {a.controllability.name}")
        if a.rationale is not None:
            line += f" rationale {_q(a.rationale)}"
        assess_lines.append(line)
    groups.append(assess_lines)

    for group in groups:
        if group:
            out.append("")
            out.extend(group)
    return "\n".join(out) + "\n"
