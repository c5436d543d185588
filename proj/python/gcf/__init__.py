"""Graph convolutions built by translating a kernel over an irregular graph."""

from ._gcf import *  # noqa: F401,F403
from ._gcf import __doc__  # noqa: F401


def pipeline(graph, radius=1, weights=None, threads=0):
    """Seed a kernel at the most central vertex, propagate it, and build the layer.

    Returns (placements, scheme).
    """
    seed = init_kernel(graph, most_central_vertex(graph, threads), radius)
    placements = propagate(graph, seed, weights or ScoreWeights(), threads)
    return placements, build_scheme(placements)
