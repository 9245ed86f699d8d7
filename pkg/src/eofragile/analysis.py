"""Detection of call cycles that span several objects of a decoration chain."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MethodNotFound
from .model import ObjectNode, lookup_attribute, qualify

# A state of the dispatch automaton: (owner fqn, method name).
State = tuple[str, str]


@dataclass(frozen=True)
class ChainLink:
    method_fqn: str
    redefined_in: str | None = None

    def __str__(self):
        if self.redefined_in is None:
            return self.method_fqn
        return f'{self.method_fqn} (was last redefined in "{self.redefined_in}")'


@dataclass(frozen=True)
class DefectReport:
    object_fqn: str
    chain: tuple[ChainLink, ...]
    cycle: tuple[State, ...]

    def one_line(self):
        return f"{self.object_fqn}: " + " -> ".join(str(link) for link in self.chain)

    def contains(self, name):
        return any(state[1] == name for state in self.cycle)


def dispatch_graph(root: ObjectNode, node: ObjectNode) -> dict[State, list[State]]:
    """Call edges between the methods visible from ``node``.

    Calls through the receiver dispatch on ``node`` itself; locator calls
    are bound to the object that lexically encloses the calling method.
    """
    index = {n.fqn: n for n in root.walk()}
    graph: dict[State, list[State]] = {}
    todo = [(owner, name) for name, (owner, _) in node.extended_methods.items()]
    infos = {(owner, name): info for name, (owner, info) in node.extended_methods.items()}
    while todo:
        state = todo.pop()
        if state in graph:
            continue
        info = infos[state]
        succ = []
        for call in info.calls:
            hit = node.extended_methods.get(call.method_name)
            if hit is not None:
                succ.append(((hit[0], call.method_name), hit[1]))
        definer = index.get(info.defining_fqn)
        for call in info.static_calls:
            hit = lookup_attribute(definer, call.method_name) if definer else None
            if hit is not None:
                succ.append(((hit[0], call.method_name), hit[1]))
        targets = []
        for target, target_info in succ:
            if target not in targets:
                targets.append(target)
            infos.setdefault(target, target_info)
            if target not in graph:
                todo.append(target)
        graph[state] = targets
    return graph


def simple_cycles(graph: dict[State, list[State]]) -> list[tuple[State, ...]]:
    """All elementary cycles, each listed once starting from its least state."""
    order = sorted(graph)
    rank = {s: i for i, s in enumerate(order)}
    reverse: dict[State, list[State]] = {}
    for s, targets in graph.items():
        for t in targets:
            reverse.setdefault(t, []).append(s)
    found = []
    for start in order:
        lo = rank[start]
        # states above start that can get back to it without going below it
        back = {start}
        frontier = [start]
        while frontier:
            s = frontier.pop()
            for p in reverse.get(s, ()):
                if rank[p] > lo and p not in back:
                    back.add(p)
                    frontier.append(p)
        path = [start]
        on_path = {start}

        def extend(state):
            for nxt in graph[state]:
                if nxt == start:
                    found.append(tuple(path))
                elif nxt in back and nxt not in on_path:
                    path.append(nxt)
                    on_path.add(nxt)
                    extend(nxt)
                    on_path.discard(nxt)
                    path.pop()

        extend(start)
    return found


def _canonical(cycle, object_fqn):
    # start where dispatch first leaves the analysed object
    foreign = [i for i, (owner, name) in enumerate(cycle) if owner != object_fqn]
    best = min(foreign, key=lambda i: (cycle[i][1], cycle[i][0]))
    return cycle[best:] + cycle[:best]


def _report(node, cycle):
    links = [ChainLink(qualify(node.fqn, name), None if owner == node.fqn else owner)
             for owner, name in cycle]
    return DefectReport(node.fqn, tuple(links + links[:1]), cycle)


def detect_object(root: ObjectNode, node: ObjectNode) -> list[DefectReport]:
    graph = dispatch_graph(root, node)
    cycles = set()
    for cycle in simple_cycles(graph):
        owners = {owner for owner, _ in cycle}
        if len(owners) >= 2:
            cycles.add(_canonical(cycle, node.fqn))
    reports = [_report(node, c) for c in cycles]
    reports.sort(key=lambda r: ([s[1] for s in r.cycle], [s[0] for s in r.cycle]))
    return reports


def detect_cycles(root: ObjectNode) -> list[DefectReport]:
    """Cross-object call cycles for every object of a resolved tree, sorted by object."""
    reports = []
    for node in sorted(root.walk(), key=lambda n: n.fqn):
        if node.extended_methods:
            reports.extend(detect_object(root, node))
    return reports


def format_reports(reports) -> str:
    blocks = []
    for r in reports:
        lines = [f"{r.object_fqn}:"]
        for i, link in enumerate(r.chain):
            arrow = " -> " if i < len(r.chain) - 1 else ""
            lines.append(f"  {link}{arrow}")
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


# -- bounded symbolic exercise ---------------------------------------------------

@dataclass(frozen=True)
class Cycle:
    object_fqn: str
    states: tuple[State, ...]  # first state repeated at the end

    @property
    def steps(self):
        return len(self.states) - 1


@dataclass(frozen=True)
class NoCycleWithinBound:
    object_fqn: str
    method_name: str
    bound: int


def count_clauses(root: ObjectNode) -> int:
    return sum(len(n.own_methods) for n in root.walk())


def symbolic_exercise(root: ObjectNode, object_fqn: str, method_name: str,
                      bound: int | None = None, cross_object: bool = True):
    """Exercise ``obj.method obj`` symbolically for at most ``bound`` calls in a row.

    Every call made through the receiver is dispatched on the original object,
    so the run is a walk through its dispatch automaton. A run that revisits a
    state other than the starting one is a lasso and is abandoned. With
    ``cross_object`` only returns that pass through a second owner count.
    """
    nodes = {n.fqn: n for n in root.walk()}
    obj = nodes.get(object_fqn)
    if obj is None or method_name not in obj.extended_methods:
        raise MethodNotFound(object_fqn, method_name)
    if bound is None:
        bound = count_clauses(root)

    def method(state):
        owner, name = state
        return nodes[owner].own_methods[name]

    def step(state):
        info = method(state)
        out = []
        for call in info.calls:
            if call.method_name in obj.extended_methods:
                out.append((obj.extended_methods[call.method_name][0], call.method_name))
        for call in info.static_calls:
            for candidate in nodes[info.defining_fqn].chain():
                if call.method_name in candidate.own_methods:
                    out.append((candidate.fqn, call.method_name))
                    break
        return out

    start = (obj.extended_methods[method_name][0], method_name)
    runs = [(start,)]
    for _ in range(bound):
        next_runs = []
        for run in runs:
            for state in step(run[-1]):
                if state == start:
                    if not cross_object or len({s[0] for s in run}) > 1:
                        return Cycle(object_fqn, run + (start,))
                elif state not in run:
                    next_runs.append(run + (state,))
        runs = next_runs
        if not runs:
            break
    return NoCycleWithinBound(object_fqn, method_name, bound)
