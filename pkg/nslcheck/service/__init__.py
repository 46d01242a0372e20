from .queries import (
    QueryBounds,
    QueryRecord,
    QueryStrategy,
    QuerySweep,
    QueryTrace,
    query_bounds,
    query_sweep,
    run_strategy,
)
from .repair import (
    MinimalRepair,
    RepairIteration,
    RepairOutcome,
    RepairSweep,
    RepairTrace,
    greedy_repair,
    minimal_repair_bruteforce,
    random_repair,
    repair_sweep,
)

__all__ = [
    "MinimalRepair",
    "QueryBounds",
    "QueryRecord",
    "QueryStrategy",
    "QuerySweep",
    "QueryTrace",
    "RepairIteration",
    "RepairOutcome",
    "RepairSweep",
    "RepairTrace",
    "greedy_repair",
    "minimal_repair_bruteforce",
    "query_bounds",
    "query_sweep",
    "random_repair",
    "repair_sweep",
    "run_strategy",
]
