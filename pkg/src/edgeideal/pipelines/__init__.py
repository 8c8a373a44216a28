from .genome import (DEFAULT_RADII, EvalMetrics, KmerOccurrence, betti_curve_kmer, featurize,
                     genome_feature_vector, kmer_graph_filtration, kmer_positions, nn_evaluate,
                     pairwise_distances, parse_fasta, read_labels_csv)
from .molecule import (PointCloud, builtin_molecule, curves_csv, molecule_betti_curves, parse_xyz,
                       vr_graph_filtration)
