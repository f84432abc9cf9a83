"""Learning qubit rotations about a direction stored in a spin-j memory.

Numerical library and CLI covering the optimal quantum strategies, the
classical measure-and-operate benchmark, memory recycling, thermal
robustness, and higher-spin targets, with Monte-Carlo cross-validation of
every closed form.
"""

__version__ = "0.1.0"
