"""Iterative Tarjan SCC over implicit graphs.

Kept recursion-free so product graphs with tens of thousands of vertices do
not hit the interpreter's recursion limit.
"""

from __future__ import annotations

from typing import Callable, Hashable, Iterable


def strongly_connected_components(
    roots: Iterable[Hashable],
    successors: Callable[[Hashable], Iterable[Hashable]],
) -> list[list[Hashable]]:
    """Tarjan's algorithm with an explicit stack.

    Components are emitted in reverse topological order of the condensation:
    every component appears after all components it can reach.  Vertices not
    listed in ``roots`` are still visited if reachable from one.
    """
    index: dict = {}
    low: dict = {}
    on_stack: set = set()
    stack: list = []
    components: list[list] = []
    counter = 0

    for root in roots:
        if root in index:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        work = [(root, iter(successors(root)))]
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(successors(w))))
                    advanced = True
                    break
                if w in on_stack and index[w] < low[v]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                components.append(component)
    return components
