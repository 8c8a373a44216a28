"""Graded and persistent Betti numbers of edge ideals of graph and hypergraph filtrations."""

__version__ = "0.1.0"

from .betti import (BettiTable, PersistentBettiTable, betti_table_ideal, betti_table_quotient,
                    component_betti_fast, hochster_multigraded, persistent_betti, persistent_betti_table,
                    upper_koszul_betti)
from .complexes import (Hypergraph, HypergraphFiltration, MonomialIdeal, SimplicialComplex,
                        complement_graph, edge_ideal, independence_complex, induced_subcomplex,
                        stanley_reisner_complex, vertex_split)
from .covers import CoverBarcode, cover_barcode, minimal_primes, minimal_vertex_covers, pi_count
from .homology import induced_map_rank, reduced_homology_dims
from .linalg import GF2, QQ, Field
from .splitting import (SplittingReport, check_betti_splitting, check_persistent_splitting,
                        check_vertex_splitting)
