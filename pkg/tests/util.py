"""Shared generators and independent oracles for the test suite.

The oracles deliberately avoid the package's evaluation path: plain-float
recursion for tree scoring, adaptive Simpson for the chi-square tail.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from random import Random

from gcindex.model import IndexTree, InnovatorClass, Node, validate_tree


def make_random_tree(rng: Random, max_depth: int = 3, max_children: int = 4) -> IndexTree:
    """Random valid tree with survey-style leaves and exact rational weights."""
    counter = itertools.count()
    nodes = {}

    def build(depth: int) -> str:
        node_id = f"n{next(counter)}"
        if depth > 0 and (depth >= max_depth or rng.random() < 0.35):
            nodes[node_id] = Node(node_id)
            return node_id
        k = rng.randint(2, max_children)
        children = [build(depth + 1) for _ in range(k)]
        raw = [rng.randint(1, 9) for _ in range(k)]
        total = sum(raw)
        edges = tuple((c, Fraction(w, total)) for c, w in zip(children, raw))
        nodes[node_id] = Node(node_id, edges=edges)
        return node_id

    root = build(0)
    return validate_tree(IndexTree(nodes=nodes, root=root))


def make_assignment(rng: Random, tree: IndexTree, country: str = "X") -> dict:
    return {(country, leaf): rng.uniform(1.0, 7.0) for leaf in tree.leaves()}


def oracle_eval(tree: IndexTree, node_id: str, cls: InnovatorClass, leaves, country: str) -> float:
    """Brute-force recursive weighted sum in plain float arithmetic."""
    node = tree.node(node_id)
    if node.is_leaf:
        return float(leaves[(country, node_id)])
    return sum(
        float(w) * oracle_eval(tree, child, cls, leaves, country)
        for child, w in node.children(cls)
    )


def chi2_pdf(x: float, df: int) -> float:
    a = df / 2.0
    return math.exp((a - 1.0) * math.log(x) - x / 2.0 - a * math.log(2.0) - math.lgamma(a))


def adaptive_simpson(f, a: float, b: float, tol: float) -> float:
    """Adaptive Simpson quadrature with Richardson-style error control."""

    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, eps, depth):
        x1 = 0.5 * (x0 + x2)
        lm, rm = 0.5 * (x0 + x1), 0.5 * (x1 + x2)
        flm, frm = f(lm), f(rm)
        left = simpson(x0, x1, f0, flm, f1)
        right = simpson(x1, x2, f1, frm, f2)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return recurse(x0, x1, f0, flm, f1, left, eps / 2.0, depth - 1) + recurse(
            x1, x2, f1, frm, f2, right, eps / 2.0, depth - 1
        )

    mid = 0.5 * (a + b)
    fa, fm, fb = f(a), f(mid), f(b)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 48)


def sf_by_integration(x: float, df: int, tol: float = 1e-11) -> float:
    """Upper-tail chi-square probability by integrating the density.

    The integrand decays like exp(-t/2); a cutoff 320 units past the larger
    of x and df leaves a remainder far below the tolerance.
    """
    if x == 0.0:
        return 1.0
    cutoff = max(x, float(df)) + 320.0
    return adaptive_simpson(lambda t: chi2_pdf(t, df), x, cutoff, tol)
