"""Directed weighted concept networks and their file formats."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np


class NetworkError(ValueError):
    """Raised when an input document or edge set does not describe a valid net.

    ``issues`` holds ``(code, message, location)`` triples; ``location`` is a
    1-based (row, column) pair, a 1-based index, or ``None``.
    """

    def __init__(self, issues):
        self.issues = list(issues)
        super().__init__("; ".join(_fmt_issue(i) for i in self.issues))


def _fmt_issue(issue):
    code, message, location = issue
    if location is None:
        return f"{code}: {message}"
    return f"{code} at {location}: {message}"


@dataclass(frozen=True)
class NetValidationReport:
    errors: tuple = ()
    warnings: tuple = ()

    @property
    def ok(self) -> bool:
        return not self.errors


class ConceptNet:
    """An immutable directed graph with one real weight per ordered node pair.

    ``edges`` maps ``(source_label, target_label)`` to the weight.  Node order
    is the order of ``labels`` and every matrix derived from the net uses it.
    Construction checks the invariants unless ``check=False``; an unchecked
    net can be inspected with :func:`validate`.
    """

    __slots__ = ("_labels", "_edges", "_index", "_csr")

    def __init__(self, labels: Iterable[str], edges: Mapping | Iterable = (), *, check: bool = True):
        labels = tuple(labels)
        if isinstance(edges, Mapping):
            items = list(edges.items())
        else:
            items = [((s, t), w) for s, t, w in edges]
        if check:
            issues = list(_structural_errors(labels, items))
            if issues:
                raise NetworkError(issues)
        self._labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        self._edges = MappingProxyType({(s, t): float(w) for (s, t), w in items})
        self._csr = None

    @property
    def labels(self) -> tuple:
        return self._labels

    @property
    def edges(self) -> Mapping:
        return self._edges

    @property
    def n(self) -> int:
        return len(self._labels)

    def __len__(self):
        return len(self._labels)

    def __repr__(self):
        return f"ConceptNet(n={self.n}, edges={len(self._edges)})"

    def __eq__(self, other):
        if not isinstance(other, ConceptNet):
            return NotImplemented
        return self._labels == other._labels and dict(self._edges) == dict(other._edges)

    def __hash__(self):
        return hash((self._labels, frozenset(self._edges.items())))

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown node {label!r}") from None

    def csr(self):
        """``(indptr, indices, weights)`` with each row's targets in label order."""
        if self._csr is None:
            n = self.n
            rows = [[] for _ in range(n)]
            for (s, t), w in self._edges.items():
                rows[self._index[s]].append((self._index[t], w))
            indptr = np.zeros(n + 1, dtype=np.int64)
            indices = []
            weights = []
            for i, row in enumerate(rows):
                row.sort()
                indptr[i + 1] = indptr[i] + len(row)
                indices.extend(j for j, _ in row)
                weights.extend(w for _, w in row)
            csr = (
                indptr,
                np.asarray(indices, dtype=np.int64),
                np.asarray(weights, dtype=np.float64),
            )
            for arr in csr:
                arr.setflags(write=False)
            self._csr = csr
        return self._csr

    def out_degree(self) -> np.ndarray:
        return np.diff(self.csr()[0])

    def in_degree(self) -> np.ndarray:
        _, indices, _ = self.csr()
        return np.bincount(indices, minlength=self.n)

    def reversed(self) -> "ConceptNet":
        return ConceptNet(self._labels, {(t, s): w for (s, t), w in self._edges.items()})

    def relabeled(self, order: Iterable[int]) -> "ConceptNet":
        """Same edges, nodes reordered so that new position ``k`` holds old node ``order[k]``."""
        order = list(order)
        return ConceptNet([self._labels[i] for i in order], self._edges)

    def with_weights(self, func) -> "ConceptNet":
        """Apply ``func(source, target, weight)`` to every stored edge, keeping the support."""
        return ConceptNet(self._labels, {(s, t): func(s, t, w) for (s, t), w in self._edges.items()})

    @classmethod
    def from_dense(cls, matrix, labels=None) -> "ConceptNet":
        """Nonzero off-diagonal entries become edges; zeros mean no edge."""
        a = np.asarray(matrix, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise NetworkError([("non-square", f"matrix shape {a.shape}", None)])
        n = a.shape[0]
        if labels is None:
            labels = [str(i + 1) for i in range(n)]
        diag = [i for i in range(n) if a[i, i] != 0]
        if diag:
            raise NetworkError([("nonzero-diagonal", "self-influence is not allowed", (i + 1, i + 1)) for i in diag])
        edges = {(labels[i], labels[j]): float(a[i, j]) for i in range(n) for j in range(n) if a[i, j] != 0}
        return cls(labels, edges)


def _structural_errors(labels, items):
    seen = {}
    for pos, lab in enumerate(labels, start=1):
        if not isinstance(lab, str) or not lab:
            yield ("empty-label", "node labels must be non-empty strings", pos)
        elif lab in seen:
            yield ("duplicate-label", f"label {lab!r} repeats node {seen[lab]}", pos)
        else:
            seen[lab] = pos
    pairs = set()
    for (s, t), w in items:
        if s not in seen:
            yield ("unknown-endpoint", f"edge source {s!r} is not a declared node", None)
        if t not in seen:
            yield ("unknown-endpoint", f"edge target {t!r} is not a declared node", None)
        if s == t:
            yield ("self-loop", f"edge {s!r} -> {t!r} is a self-loop", None)
        if (s, t) in pairs:
            yield ("duplicate-edge", f"edge {s!r} -> {t!r} declared twice", None)
        pairs.add((s, t))
        if isinstance(w, bool) or not isinstance(w, (int, float, np.floating, np.integer)):
            yield ("non-numeric", f"weight of {s!r} -> {t!r} is not a number", None)
        elif not math.isfinite(w):
            yield ("non-finite", f"weight of {s!r} -> {t!r} is not finite", None)


def validate(net: ConceptNet) -> NetValidationReport:
    """Report invariant violations as errors; sinks and isolated nodes as warnings.

    A node without any edge gets both a ``sink`` and an ``isolated`` warning.
    """
    errors = tuple(_structural_errors(net.labels, list(net.edges.items())))
    if errors:
        return NetValidationReport(errors=errors)
    out_deg = net.out_degree()
    in_deg = net.in_degree()
    warnings = []
    for i, lab in enumerate(net.labels):
        if out_deg[i] == 0:
            warnings.append(("sink", f"node {lab!r} has no outgoing edges", i + 1))
            if in_deg[i] == 0:
                warnings.append(("isolated", f"node {lab!r} has no edges", i + 1))
    return NetValidationReport(warnings=tuple(warnings))


def to_dense(net: ConceptNet) -> np.ndarray:
    indptr, indices, weights = net.csr()
    out = np.zeros((net.n, net.n))
    rows = np.repeat(np.arange(net.n), np.diff(indptr))
    out[rows, indices] = weights
    return out


def _data_rows(text):
    lines = [ln for ln in io.StringIO(text) if ln.strip() and not ln.lstrip().startswith("#")]
    return [[cell.strip() for cell in row] for row in csv.reader(lines)]


def parse_matrix(text: str) -> ConceptNet:
    """Parse the CSV adjacency format.

    The header is ``node,<label_1>,...,<label_n>`` and row ``i`` is
    ``<label_i>,<w_i1>,...,<w_in>``.  Nonzero entries become edges; the
    diagonal must be zero.  Blank lines and ``#`` comment lines are skipped.
    """
    rows = _data_rows(text)
    if not rows:
        raise NetworkError([("empty", "no header row", None)])
    header, body = rows[0], rows[1:]
    if header[0] != "node":
        raise NetworkError([("bad-header", "first header cell must be 'node'", (1, 1))])
    labels = header[1:]
    n = len(labels)
    issues = []
    if len(body) != n:
        issues.append(("non-square", f"{n} column labels but {len(body)} data rows", None))
    edges = {}
    for r, row in enumerate(body, start=2):
        if len(row) != n + 1:
            issues.append(("non-square", f"row has {len(row) - 1} values, expected {n}", (r, None)))
            continue
        i = r - 2
        if i < n and row[0] != labels[i]:
            issues.append(("label-mismatch", f"row label {row[0]!r} != column label {labels[i]!r}", (r, 1)))
        for j, cell in enumerate(row[1:]):
            try:
                w = float(cell)
            except ValueError:
                issues.append(("non-numeric", f"cell {cell!r} is not a number", (r, j + 2)))
                continue
            if not math.isfinite(w):
                issues.append(("non-finite", f"cell {cell!r} is not finite", (r, j + 2)))
            elif i < n and i == j:
                if w != 0:
                    issues.append(("nonzero-diagonal", f"diagonal entry {cell!r} must be 0", (r, j + 2)))
            elif w != 0 and i < n:
                edges[(labels[i], labels[j])] = w
    issues.extend(i for i in _structural_errors(labels, []) if i[0] in ("duplicate-label", "empty-label"))
    if issues:
        raise NetworkError(issues)
    return ConceptNet(labels, edges)


def parse_edge_list(text: str) -> ConceptNet:
    """Parse ``{"nodes": [...], "edges": [{"from", "to", "weight"}, ...]}``.

    Explicit zero-weight edges are kept: such a link still carries unit
    resistance in the circuit picture.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkError([("bad-json", str(exc), None)]) from None
    if not isinstance(doc, dict) or not isinstance(doc.get("nodes"), list) or not isinstance(doc.get("edges", []), list):
        raise NetworkError([("bad-schema", "expected an object with 'nodes' and 'edges' lists", None)])
    labels = doc["nodes"]
    items = []
    issues = []
    for k, e in enumerate(doc.get("edges", []), start=1):
        if not isinstance(e, dict) or not {"from", "to", "weight"} <= e.keys():
            issues.append(("bad-schema", "edge needs 'from', 'to' and 'weight'", k))
            continue
        if not isinstance(e["from"], str) or not isinstance(e["to"], str):
            issues.append(("bad-schema", "edge endpoints must be node labels", k))
            continue
        items.append(((e["from"], e["to"]), e["weight"]))
    issues.extend(_structural_errors(labels, items))
    if issues:
        raise NetworkError(issues)
    return ConceptNet(labels, dict(items))


def format_number(x: float, digits: int = 9) -> str:
    s = format(float(x), f".{digits}g")
    return "0" if s in ("-0", "0") else s


def render_matrix(net_or_labels, matrix=None, *, digits: int | None = None) -> str:
    """Write the CSV adjacency format.

    With a net, renders its weights; with ``(labels, matrix)``, renders any
    square matrix in the same layout.  ``digits=None`` uses shortest
    round-trip ``repr`` formatting.
    """
    if isinstance(net_or_labels, ConceptNet):
        labels, matrix = net_or_labels.labels, to_dense(net_or_labels)
    else:
        labels = list(net_or_labels)
    fmt = (lambda x: repr(float(x)) if x != 0 else "0") if digits is None else (lambda x: format_number(x, digits))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["node", *labels])
    for lab, row in zip(labels, np.asarray(matrix)):
        writer.writerow([lab, *(fmt(x) for x in row)])
    return buf.getvalue()


def render_edge_list(net: ConceptNet) -> str:
    indptr, indices, weights = net.csr()
    edges = []
    for i, lab in enumerate(net.labels):
        for p in range(indptr[i], indptr[i + 1]):
            edges.append({"from": lab, "to": net.labels[indices[p]], "weight": float(weights[p])})
    return json.dumps({"nodes": list(net.labels), "edges": edges}, indent=2)


def read_net(path, fmt: str | None = None) -> ConceptNet:
    """Load a net from ``path``; ``fmt`` is ``matrix-csv`` or ``edges-json`` (default: by extension)."""
    path = str(path)
    if fmt is None:
        fmt = "edges-json" if path.lower().endswith(".json") else "matrix-csv"
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "matrix-csv":
        return parse_matrix(text)
    if fmt == "edges-json":
        return parse_edge_list(text)
    raise ValueError(f"unknown input format {fmt!r}")
