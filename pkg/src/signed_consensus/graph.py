"""Signed weighted digraphs, their Laplacians and root-ordered block form.

Weights follow the receiver-first convention: ``weights[i, j]`` is the weight
``a_ij`` of the edge ``v_j -> v_i`` (node ``i`` listens to node ``j``).  The
edge-list text format is written the other way round, ``src dst weight``, so
the line ``1 2 3.0`` sets ``a_21 = 3``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graphs or graph files."""


@dataclass(frozen=True, eq=False)
class SignedDigraph:
    weights: np.ndarray
    node_labels: tuple[str, ...] | None = None
    # original indices of each node when the graph is a subgraph of another
    parent_index: tuple[int, ...] | None = None

    def __post_init__(self):
        w = np.array(self.weights, dtype=float)
        if w.ndim != 2 or w.shape[0] != w.shape[1] or w.shape[0] < 1:
            raise GraphError(f"weights must be a non-empty square matrix, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise GraphError("weights must be finite")
        if np.any(np.diag(w) != 0):
            raise GraphError("self-loops are not allowed (nonzero diagonal)")
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)
        if self.node_labels is not None:
            labels = tuple(str(s) for s in self.node_labels)
            if len(labels) != w.shape[0]:
                raise GraphError("node_labels length does not match node count")
            object.__setattr__(self, "node_labels", labels)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def __eq__(self, other):
        if not isinstance(other, SignedDigraph):
            return NotImplemented
        return (np.array_equal(self.weights, other.weights)
                and self.node_labels == other.node_labels)

    def __hash__(self):
        return hash((self.weights.tobytes(), self.node_labels))

    def edges(self) -> list[tuple[int, int, float]]:
        """Return ``(src, dst, weight)`` triples, 0-based, in row-major order of ``dst``."""
        dst, src = np.nonzero(self.weights)
        return [(int(s), int(d), float(self.weights[d, s])) for d, s in zip(dst, src)]

    def in_neighbors(self, i: int) -> list[int]:
        return [int(j) for j in np.flatnonzero(self.weights[i])]

    def out_neighbors(self, j: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.weights[:, j])]

    def label(self, i: int) -> str:
        if self.node_labels is not None:
            return self.node_labels[i]
        return f"v{i + 1}"

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, float]],
                   node_labels: Sequence[str] | None = None) -> "SignedDigraph":
        """Build from 0-based ``(src, dst, weight)`` triples."""
        w = np.zeros((n, n))
        for src, dst, weight in edges:
            if src == dst:
                raise GraphError(f"self-loop on node {src + 1}")
            w[dst, src] = weight
        return cls(w, node_labels)

    @classmethod
    def from_laplacian(cls, lap) -> "SignedDigraph":
        """Recover the graph whose Laplacian is ``lap`` (``a_ij = -l_ij`` off the diagonal).

        The diagonal of ``lap`` must equal the row sums of absolute off-diagonal entries.
        """
        lap = np.asarray(lap, dtype=float)
        w = -lap.copy()
        np.fill_diagonal(w, 0.0)
        g = cls(w)
        if not np.allclose(np.diag(lap), np.abs(w).sum(axis=1), rtol=0, atol=1e-12):
            raise GraphError("diagonal is not the sum of absolute off-diagonal entries")
        return g


@dataclass(frozen=True, eq=False)
class LaplacianView:
    """Laplacian ``L`` plus, when roots are known, the blocks of the root-first ordering.

    ``root_order[k]`` is the original index of the node placed at position ``k``.
    """

    L: np.ndarray
    root_order: tuple[int, ...]
    m: int | None = None
    L_r: np.ndarray | None = None
    A_rnr: np.ndarray | None = None
    L_nr: np.ndarray | None = None
    B: np.ndarray | None = None

    @property
    def has_blocks(self) -> bool:
        return self.m is not None

    def permuted(self) -> np.ndarray:
        """``P L P^T`` for the stored ordering."""
        idx = np.asarray(self.root_order)
        return self.L[np.ix_(idx, idx)]

    def reassemble(self) -> np.ndarray:
        """Rebuild the permuted Laplacian from its blocks."""
        if not self.has_blocks:
            raise GraphError("view has no blocks")
        n, m = self.L.shape[0], self.m
        out = np.zeros((n, n))
        out[:m, :m] = self.L_r
        out[m:, :m] = -self.A_rnr
        out[m:, m:] = self.L_nr + self.B
        return out


def laplacian_matrix(weights: np.ndarray) -> np.ndarray:
    L = -np.asarray(weights, dtype=float).copy()
    np.fill_diagonal(L, np.abs(weights).sum(axis=1))
    return L


def laplacian(g: SignedDigraph) -> LaplacianView:
    L = laplacian_matrix(g.weights)
    L.setflags(write=False)
    return LaplacianView(L=L, root_order=tuple(range(g.n)))


def induced_unsigned(g: SignedDigraph) -> SignedDigraph:
    return SignedDigraph(np.abs(g.weights), g.node_labels, g.parent_index)


def induced_subgraph(g: SignedDigraph, nodes: Iterable[int]) -> SignedDigraph:
    """Subgraph on ``nodes`` (0-based) keeping every edge with both endpoints inside.

    Nodes are kept in ascending order; ``parent_index`` maps back to ``g``.
    """
    idx = sorted(set(int(v) for v in nodes))
    if not idx:
        raise GraphError("node set must be nonempty")
    if idx[0] < 0 or idx[-1] >= g.n:
        raise GraphError(f"node index out of range for n={g.n}")
    labels = None if g.node_labels is None else tuple(g.node_labels[i] for i in idx)
    base = g.parent_index
    parent = tuple(idx) if base is None else tuple(base[i] for i in idx)
    return SignedDigraph(g.weights[np.ix_(idx, idx)], labels, parent)


def conjugate(g: SignedDigraph, sigma: Sequence[int]) -> SignedDigraph:
    """Apply the gauge transformation ``D A D`` with ``D = diag(sigma)``."""
    s = np.asarray(sigma, dtype=float)
    if s.shape != (g.n,) or not np.all(np.abs(s) == 1):
        raise GraphError("gauge must be a length-n vector of +-1")
    return SignedDigraph(s[:, None] * g.weights * s[None, :], g.node_labels, g.parent_index)


def root_ordered_blocks(g: SignedDigraph, roots: Iterable[int]) -> LaplacianView:
    """Permute roots to the front and split the Laplacian into its four blocks.

    Raises :class:`GraphError` if some root listens to a non-root, which would
    make the upper-right block nonzero.
    """
    roots = sorted(set(int(r) for r in roots))
    if not roots:
        raise GraphError("root set must be nonempty")
    if roots[0] < 0 or roots[-1] >= g.n:
        raise GraphError("root index out of range")
    rest = [i for i in range(g.n) if i not in set(roots)]
    order = roots + rest
    m = len(roots)
    A = g.weights[np.ix_(order, order)]
    if np.any(A[:m, m:] != 0):
        raise GraphError("not a valid root set: a root has an in-edge from a non-root")
    L_r = laplacian_matrix(A[:m, :m])
    A_rnr = A[m:, :m].copy()
    L_nr = laplacian_matrix(A[m:, m:])
    B = np.diag(np.abs(A_rnr).sum(axis=1))
    L = laplacian(g).L
    for block in (L_r, A_rnr, L_nr, B):
        block.setflags(write=False)
    return LaplacianView(L=L, root_order=tuple(order), m=m,
                         L_r=L_r, A_rnr=A_rnr, L_nr=L_nr, B=B)


# -- serialization -----------------------------------------------------------

def _parse_index(tok: str, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise GraphError(f"line {lineno}: node index {tok!r} is not an integer") from None
    if v < 1:
        raise GraphError(f"line {lineno}: node index must be >= 1, got {v}")
    return v


def from_edge_list(text: str) -> SignedDigraph:
    """Parse the ``src dst weight`` text format (1-based, ``#`` comments, optional ``n`` header)."""
    n_header = None
    seen: dict[tuple[int, int], float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "n":
            if len(parts) != 2 or n_header is not None:
                raise GraphError(f"line {lineno}: malformed or repeated 'n' header")
            n_header = _parse_index(parts[1], lineno)
            continue
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'src dst weight', got {line!r}")
        src, dst = _parse_index(parts[0], lineno), _parse_index(parts[1], lineno)
        try:
            weight = float(parts[2])
        except ValueError:
            raise GraphError(f"line {lineno}: weight {parts[2]!r} is not numeric") from None
        if not np.isfinite(weight):
            raise GraphError(f"line {lineno}: weight must be finite")
        if weight == 0:
            raise GraphError(f"line {lineno}: zero-weight edge")
        if src == dst:
            raise GraphError(f"line {lineno}: self-loop on node {src}")
        if (src, dst) in seen:
            raise GraphError(f"line {lineno}: duplicate edge {src} -> {dst}")
        seen[(src, dst)] = weight
    n_seen = max((max(s, d) for s, d in seen), default=0)
    if n_header is not None:
        if n_header < n_seen:
            raise GraphError(f"header n={n_header} but index {n_seen} used")
        n = n_header
    else:
        n = n_seen
    if n < 1:
        raise GraphError("graph has no nodes")
    return SignedDigraph.from_edges(n, ((s - 1, d - 1, w) for (s, d), w in seen.items()))


def to_edge_list(g: SignedDigraph) -> str:
    # repr() of a float is the shortest string that round-trips exactly
    lines = [f"n {g.n}"]
    lines += [f"{s + 1} {d + 1} {w!r}" for s, d, w in sorted(g.edges())]
    return "\n".join(lines) + "\n"


def to_json_dict(g: SignedDigraph) -> dict:
    out = {"n": g.n, "edges": [[s + 1, d + 1, w] for s, d, w in sorted(g.edges())]}
    if g.node_labels is not None:
        out["labels"] = list(g.node_labels)
    return out


def from_json_dict(data: dict) -> SignedDigraph:
    try:
        n = int(data["n"])
        edges = data.get("edges", [])
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None
    text = [f"n {n}"] + [" ".join(str(v) for v in e) for e in edges]
    g = from_edge_list("\n".join(text))
    labels = data.get("labels")
    return SignedDigraph(g.weights, labels) if labels else g


def load_graph(path: str) -> SignedDigraph:
    """Read a graph file; ``.json`` uses the JSON schema, anything else the edge list."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if str(path).endswith(".json"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"{path}: invalid JSON: {exc}") from None
        return from_json_dict(data)
    return from_edge_list(text)


def example_graph() -> SignedDigraph:
    """The bundled 13-node example network ``G_a``."""
    from importlib.resources import files

    return from_edge_list(files(__package__).joinpath("data/example_ga.txt").read_text())
