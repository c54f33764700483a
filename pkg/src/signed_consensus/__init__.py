"""Collective-behavior analysis for multi-agent networks on signed digraphs."""

from .balance import (BalanceResult, GaugeVector, RootCondition, classify_root_condition,
                      gauge_partition, graph_balance, is_balanced_node, node_balance)
from .connectivity import ConnectivityReport, analyze_connectivity, ancestor_closure
from .graph import (GraphError, LaplacianView, SignedDigraph, conjugate, from_edge_list,
                    induced_subgraph, induced_unsigned, laplacian, load_graph,
                    root_ordered_blocks, to_edge_list)
from .linalg import determinant, nullspace_oracle, rank
from .spectral import (SpectralCertificate, SpectralError, certificate, left_eigenvector,
                       null_vector, right_eigenvector)

__version__ = "0.1.0"
