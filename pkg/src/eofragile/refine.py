"""Inline candidates, static forms and object refinements.

A call ``s.f a1 .. aN`` whose receiver ``s`` is a void attribute that is also
passed as an argument dispatches dynamically on ``s``. Its static form points
every occurrence of ``s`` at the object that defines the enclosing method
with a ``^`` locator, fixing the dispatch. Refining an object replaces zero
or more such calls with their static forms; a recursion that disappears
under some refinement of a decoratee was not anticipated by that decoratee.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .analysis import DefectReport
from .eo.syntax import (Application, DotAccess, EoProgram, Locator, Ref,
                        node_at, replace_at)
from .model import (CallSite, MethodInfo, ObjectNode, attribute_owner,
                    visible_binder, walk_method)


@dataclass(frozen=True)
class InlineCandidate:
    site: CallSite
    enclosing_method: MethodInfo
    enclosing_object_fqn: str
    receiver_param: str
    path: tuple
    program_index: int
    binder: int   # scope that declares the receiver, 0 = the method itself
    nesting: int  # abstract objects enclosing the call, the method included

    @property
    def attribute(self):
        return self.site.method_name


@dataclass(frozen=True)
class StaticForm:
    candidate: InlineCandidate
    owner_fqn: str
    locator_depth: int


@dataclass(frozen=True)
class NotInlinable:
    candidate: InlineCandidate
    reason: str


@dataclass(frozen=True)
class Anticipated:
    report: DefectReport


@dataclass(frozen=True)
class Unanticipated:
    report: DefectReport
    witness: StaticForm
    forms: tuple[StaticForm, ...] = ()  # every call on the witness edge, witness first


def _program(node: ObjectNode, index: int) -> EoProgram:
    return node.root.programs[index]


def find_inline_candidates(node: ObjectNode) -> list[InlineCandidate]:
    found = []
    for info in node.own_methods.values():
        method = node_at(_program(node, info.program_index), info.path)
        for v in walk_method(method, info.path):
            e = v.expr
            if not (isinstance(e, Application) and isinstance(e.head, DotAccess)
                    and isinstance(e.head.receiver, Ref)):
                continue
            s = e.head.receiver.name
            binder = visible_binder(s, v.scopes)
            if binder is None or Ref(s) not in e.args:
                continue
            site = CallSite(e.head.attribute, binder == 0 and s == info.receiver,
                            e.args[0] == Ref(s), e.span)
            found.append(InlineCandidate(site, info, node.fqn, s, v.path,
                                         info.program_index, binder, len(v.scopes)))
    return found


def is_inlinable(candidate: InlineCandidate, root: ObjectNode):
    if candidate.binder != 0:
        return NotInlinable(candidate, "receiver is bound inside the method body")
    obj = root.find(candidate.enclosing_object_fqn)
    if obj is None:
        return NotInlinable(candidate, f"unknown object {candidate.enclosing_object_fqn}")
    owner = attribute_owner(obj, candidate.attribute)
    if owner is None:
        return NotInlinable(candidate, f"no attribute {candidate.attribute!r} in the decoration chain")
    return StaticForm(candidate, owner.fqn, candidate.nesting - candidate.binder)


def _fix_receiver(expr, name, locator):
    if expr == Ref(name):
        return replace(locator, span=expr.span)
    if isinstance(expr, Application):
        return replace(expr, head=_fix_receiver(expr.head, name, locator),
                       args=tuple(_fix_receiver(a, name, locator) for a in expr.args))
    if isinstance(expr, DotAccess):
        return replace(expr, receiver=_fix_receiver(expr.receiver, name, locator))
    return expr


def apply_static_forms(root: ObjectNode, forms, program_index: int = 0) -> EoProgram:
    """Copy of one program of the context with each static form applied in turn."""
    program = root.programs[program_index]
    for form in forms:
        cand = form.candidate
        if cand.program_index != program_index:
            continue
        call = node_at(program, cand.path)
        if not (isinstance(call, Application) and isinstance(call.head, DotAccess)
                and call.head.receiver == Ref(cand.receiver_param)):
            continue  # already static
        fixed = _fix_receiver(call, cand.receiver_param, Locator(form.locator_depth))
        program = replace_at(program, cand.path, fixed)
    return program


def apply_static_form(root: ObjectNode, form: StaticForm | None) -> EoProgram:
    if form is None:
        return root.programs[0]
    return apply_static_forms(root, [form], form.candidate.program_index)


def classify_cycle(report: DefectReport, root: ObjectNode):
    """Unanticipated when fixing some decoratee call statically changes its target.

    The witness is a call on a cycle edge leaving a decoratee whose static
    form binds to a different owner than dynamic dispatch does; such an edge
    always exists when the callee is defined in the decoratee's own chain.
    """
    node = root.find(report.object_fqn)
    decoratees = {n.fqn for n in node.chain()[1:]} if node else set()
    cycle = report.cycle
    for i, (owner, name) in enumerate(cycle):
        callee_owner, callee = cycle[(i + 1) % len(cycle)]
        if owner not in decoratees:
            continue
        forms = []
        for cand in find_inline_candidates(root.find(owner)):
            if cand.enclosing_method.name != name or cand.attribute != callee:
                continue
            form = is_inlinable(cand, root)
            if isinstance(form, StaticForm) and form.owner_fqn != callee_owner:
                forms.append(form)
        if forms:
            return Unanticipated(report, forms[0], tuple(forms))
    return Anticipated(report)


def inlinable_forms(node: ObjectNode, root: ObjectNode) -> list[StaticForm]:
    forms = (is_inlinable(c, root) for c in find_inline_candidates(node))
    return [f for f in forms if isinstance(f, StaticForm)]
