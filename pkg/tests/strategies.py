"""Random EO contexts for property tests.

A context has up to 8 top-level objects. Each object may decorate an
earlier one, so decoration forms a DAG, and holds up to 4 methods whose
bodies call other methods through the receiver or through a locator.
"""

from __future__ import annotations

from hypothesis import strategies as st

NAMES = ("f", "g", "h", "k", "m")


@st.composite
def contexts(draw, max_objects=8, max_methods=4, dense=False):
    """With ``dense`` every object has methods and every method makes calls."""
    count = draw(st.integers(3 if dense else 1, max_objects))
    objects = []
    for i in range(count):
        # mostly decorate something: cycles need a decoration chain
        parent = draw(st.integers(-1, i - 1)) if i else -1
        names = draw(st.lists(st.sampled_from(NAMES), min_size=1 if dense else 0,
                              max_size=max_methods, unique=True))
        methods = []
        for name in names:
            calls = draw(st.lists(
                st.tuples(st.sampled_from(("self", "self", "self", "static")),
                          st.sampled_from(NAMES)),
                min_size=1 if dense else 0, max_size=3))
            methods.append((name, calls))
        objects.append((f"o{i}", None if parent < 0 else f"o{parent}", methods))
    return render(objects)


def render(objects) -> str:
    blocks = []
    for name, parent, methods in objects:
        lines = [f"[] > {name}"]
        if parent:
            lines.append(f"  {parent} > @")
        for mname, calls in methods:
            lines.append(f"  [self] > {mname}")
            if not calls:
                lines.append("    self > @")
                continue
            lines.append("    seq > @")
            for kind, target in calls:
                lines.append(f"      self.{target} self" if kind == "self" else f"      ^.{target} ^")
            lines.append("      self")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"
