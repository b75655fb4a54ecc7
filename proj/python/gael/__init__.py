"""Community detection with an ensemble-crossover genetic algorithm."""

from ._core import (
    DataError,
    GaConfig,
    Graph,
    Partition,
    RunReport,
    SweepRow,
    accuracy,
    arrival_probabilities,
    crossover,
    edge_join_strengths,
    edge_similarities,
    generate_gn,
    init_population,
    modularity,
    run,
    sweep,
)

__all__ = [
    "DataError",
    "GaConfig",
    "Graph",
    "Partition",
    "RunReport",
    "SweepRow",
    "accuracy",
    "arrival_probabilities",
    "crossover",
    "edge_join_strengths",
    "edge_similarities",
    "generate_gn",
    "init_population",
    "modularity",
    "run",
    "sweep",
]

__version__ = "0.1.0"
