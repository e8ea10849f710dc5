"""trajscope: label trajectories with a movement taxonomy, score them with
distance-based outlier detection, partition the score plane into decision
zones, and explain zone membership through random-forest feature importance.
"""

__version__ = "0.1.0"

from .ingest import (Dataset, FeatureSeries, IngestConfig, IngestError,
                     IngestionReport, Trajectory, TrajectoryPoint,
                     compute_point_features, dataset_from_arrays,
                     haversine_distance, initial_bearing, parse_dataset)
from .stats import STATISTIC_NAMES, summarize_series
from .catalog import SIGNATURE_PAIRS, VARIABLE_NAMES, VARIABLES
from .taxonomy import (Combination, CombinationError, TaxonomyNode,
                       combination_from_slug, valid_combinations,
                       validate_combination)
from .vectorize import (FeatureVector, VectorizedDataset,
                        distance_geometry_signatures, node_subspace,
                        vectorize_dataset, vectorize_trajectory)
from .outliers import (DbosConfig, FrequencyMatrix, NodeScores, ZonedScore,
                       assign_zone, dbos_raw, frequency_matrix,
                       pairwise_radius, scale_scores, score_combination,
                       score_node, score_vectors)
from .forest import (EvalMetrics, Forest, ForestConfig, evaluate, fit_forest,
                     gini_importance, grid_search, predict, stratified_split,
                     train_and_evaluate)
from .comparison import (ComparisonError, ComparisonReport, SampleWindow,
                         compare_zones, extract_sample, segment_for_signature,
                         shared_feature_range, variable_anchor)
from .pipeline import Analysis
