"""Explicit parallel-chain circuit for one ordered pair, solved by nodal analysis.

Every simple path becomes its own chain of unit resistors between the two
terminals; interior nodes are never shared between chains.  Each branch
carries a source equal to its edge weight, oriented from the path's start
towards its end, so an open branch satisfies ``phi_head - phi_tail = emf``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .graph import ConceptNet
from .numerics import solve_linear
from .pathfinder import DEFAULT_BUDGET, enumerate_simple_paths


@dataclass(frozen=True)
class Branch:
    emf: float
    edge: tuple  # (source_label, target_label) of the original directed edge
    resistance: float = 1.0


@dataclass(frozen=True)
class CircuitGraph:
    alpha: str
    beta: str
    chains: tuple = ()  # tuple of tuples of Branch

    @property
    def node_count(self) -> int:
        return 2 + sum(len(c) - 1 for c in self.chains)

    def node_names(self) -> list:
        names = [self.alpha, self.beta]
        for m, chain in enumerate(self.chains, start=1):
            names.extend(f"p{m}_{k}" for k in range(1, len(chain)))
        return names

    def branches(self):
        """Yield ``(tail, head, branch)`` with node indices into :meth:`node_names`."""
        nxt = 2
        for chain in self.chains:
            tail = 0
            for k, br in enumerate(chain):
                if k == len(chain) - 1:
                    head = 1
                else:
                    head = nxt
                    nxt += 1
                yield tail, head, br
                tail = head


@dataclass(frozen=True)
class CircuitSolution:
    potentials: np.ndarray  # per node, in CircuitGraph.node_names() order
    currents: np.ndarray  # per branch, tail -> head, in CircuitGraph.branches() order
    k_value: float


def build_circuit(
    net: ConceptNet,
    source: str,
    target: str,
    max_len: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
) -> CircuitGraph:
    chains = []
    for rec in enumerate_simple_paths(net, source, target, max_len, budget=budget):
        hops = zip(rec.nodes[:-1], rec.nodes[1:])
        chains.append(tuple(Branch(w, edge) for w, edge in zip(rec.edge_emfs, hops)))
    return CircuitGraph(source, target, tuple(chains))


def solve_circuit_nodal(circuit: CircuitGraph) -> CircuitSolution:
    """Node potentials with ``phi_alpha = 0``; the pair's influence is ``phi_beta``.

    Branch current (tail to head) is ``(phi_tail - phi_head + emf) / R``.
    Current conservation is imposed at every node except ``alpha``.
    """
    if not circuit.chains:
        raise ValueError("circuit has no chains")
    n = circuit.node_count
    branches = list(circuit.branches())
    g = np.zeros((n, n))
    rhs = np.zeros(n)
    for tail, head, br in branches:
        c = 1.0 / br.resistance
        g[tail, tail] += c
        g[head, head] += c
        g[tail, head] -= c
        g[head, tail] -= c
        # outflow at tail: c*(phi_t - phi_h) + c*emf = 0 -> move c*emf to rhs
        rhs[tail] -= c * br.emf
        rhs[head] += c * br.emf
    phi = np.zeros(n)
    phi[1:] = solve_linear(g[1:, 1:], rhs[1:])
    currents = np.array([(phi[t] - phi[h] + br.emf) / br.resistance for t, h, br in branches])
    return CircuitSolution(phi, currents, float(phi[1] - phi[0]))


def _quote(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def export_circuit_dot(circuit: CircuitGraph, name: str = "K") -> str:
    """Undirected DOT rendering; interior nodes are ``p<chain>_<position>``."""
    names = circuit.node_names()
    lines = [f"graph {_quote(name)} {{"]
    lines.append(f"  {_quote(circuit.alpha)} [shape=doublecircle];")
    lines.append(f"  {_quote(circuit.beta)} [shape=doublecircle];")
    for nm in names[2:]:
        lines.append(f"  {_quote(nm)} [shape=point];")
    for tail, head, br in circuit.branches():
        edge = f"{br.edge[0]}->{br.edge[1]}"
        lines.append(
            f"  {_quote(names[tail])} -- {_quote(names[head])} "
            f"[label={_quote(format(br.emf, '.9g'))}, edge={_quote(edge)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
