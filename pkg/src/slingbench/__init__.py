"""slingbench: a deterministic 2D slingshot-puzzle testbed.

Library layout:

* ``geometry`` / ``physics`` / ``materials`` — rigid-body simulation core
* ``world`` / ``levelfile`` — game objects, launching, episode lifecycle
* ``perception`` — screenshot, symbolic frame, and occupancy-tensor encodings
* ``trajectory`` — closed-form shot planner and obstruction checks
* ``taskgen`` — scenario templates, seeded task generation, train/test splits
* ``agents`` — random / pig-shooter / heuristic / tabular-learner baselines
* ``evaluation`` — generalization protocols, aggregation, quotient scoring
* ``server`` / ``client`` — length-prefixed socket protocol for external agents
"""

__version__ = "0.1.0"
