"""Named example curves used by the test corpus and the CLI.

Length arguments are rationals (or "p/q" strings); each family has a
sensible default so `corpus()` works with no arguments.
"""

from __future__ import annotations

from .errors import InvalidInputError
from .graph import MetricGraph
from .rational import parse_rational


def segment(length="1") -> MetricGraph:
    """Genus 0: a single edge A-B."""
    return MetricGraph(["A", "B"], [("e", "A", "B", length)])


def circle(length="1") -> MetricGraph:
    """Genus 1: one loop at a single vertex."""
    return MetricGraph(["v"], [("c", "v", "v", length)])


def theta(lengths=("1", "2", "3")) -> MetricGraph:
    """Genus 2: two vertices joined by three parallel edges."""
    return banana(2, lengths)


def banana(g: int = 3, lengths=None) -> MetricGraph:
    """Genus g: two vertices P, Q joined by g+1 parallel edges."""
    if g < 1:
        raise InvalidInputError("banana needs genus >= 1")
    if lengths is None:
        lengths = [str(i + 1) for i in range(g + 1)]
    lengths = [parse_rational(x) for x in lengths]
    if len(lengths) != g + 1:
        raise InvalidInputError(f"banana of genus {g} needs {g + 1} lengths")
    return MetricGraph(
        ["P", "Q"], [(f"e{i+1}", "P", "Q", l) for i, l in enumerate(lengths)]
    )


def cII(g: int = 3, parallel=None, arm="1", loop="1") -> MetricGraph:
    """Genus g curve of family C.II: P, Q of degree g joined by g-1
    parallel edges, a 4-valent vertex R with a loop, |PR| = |RQ| = arm."""
    if g < 2:
        raise InvalidInputError("cII needs genus >= 2")
    if parallel is None:
        parallel = [str(i + 1) for i in range(g - 1)]
    parallel = [parse_rational(x) for x in parallel]
    if len(parallel) != g - 1:
        raise InvalidInputError(f"cII of genus {g} needs {g - 1} parallel lengths")
    edges = [(f"e{i+1}", "P", "Q", l) for i, l in enumerate(parallel)]
    edges += [
        ("pr", "P", "R", arm),
        ("rq", "R", "Q", arm),
        ("loop", "R", "R", loop),
    ]
    return MetricGraph(["P", "Q", "R"], edges)


def cIIprime(g: int = 3, parallel=None, arm="1", rungs=("1", "2")) -> MetricGraph:
    """Genus g curve of family C.II': g-1 parallel edges P-Q, trivalent
    R, S joined by a double edge, with |PR| = |QS| = arm."""
    if g < 3:
        raise InvalidInputError("cIIprime needs genus >= 3")
    if parallel is None:
        parallel = [str(i + 1) for i in range(g - 1)]
    parallel = [parse_rational(x) for x in parallel]
    if len(parallel) != g - 1:
        raise InvalidInputError(f"cIIprime of genus {g} needs {g - 1} parallel lengths")
    edges = [(f"e{i+1}", "P", "Q", l) for i, l in enumerate(parallel)]
    edges += [
        ("pr", "P", "R", arm),
        ("rs1", "R", "S", rungs[0]),
        ("rs2", "R", "S", rungs[1]),
        ("sq", "S", "Q", arm),
    ]
    return MetricGraph(["P", "Q", "R", "S"], edges)


def cIII(bridge="2", loops=("3", "5")) -> MetricGraph:
    """Genus 2 curve of family C.III: trivalent vertices R and S, each
    carrying a loop, joined by a bridge; all lengths arbitrary.

    The family only exists in genus two: its witness pair consists of
    2-valent points placed symmetrically on a loop, and in higher genus
    witnesses would have to be branch vertices, which forces one of the
    length equalities of families C.II/C.II' instead."""
    return dumbbell(bridge, loops)


def figure_eight(loops=("2", "3")) -> MetricGraph:
    """Genus 2: two loops at a single vertex."""
    return MetricGraph(
        ["v"], [("l1", "v", "v", loops[0]), ("l2", "v", "v", loops[1])]
    )


def dumbbell(bridge="2", loops=("3", "5")) -> MetricGraph:
    """Genus 2: loops at R and S joined by a bridge."""
    return MetricGraph(
        ["R", "S"],
        [("lr", "R", "R", loops[0]), ("b", "R", "S", bridge), ("ls", "S", "S", loops[1])],
    )


def corpus():
    """The six-curve acceptance corpus."""
    return {
        "segment": segment(),
        "circle": circle(),
        "theta": theta(),
        "banana3": banana(3),
        "cII": cII(3),
        "cIII": cIII(3),
    }


NAMED = {
    "segment": segment,
    "circle": circle,
    "theta": theta,
    "banana": banana,
    "banana3": banana,
    "cII": cII,
    "cIIprime": cIIprime,
    "cIII": cIII,
    "figure_eight": figure_eight,
    "dumbbell": dumbbell,
}
