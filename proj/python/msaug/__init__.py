"""Morse-Smale segmentation hierarchies for data augmentation.

Grids are 2-D or 3-D float arrays; graphs are a 1-D value array plus an
(E, 2) integer edge array. Inputs are copied once into the core; outputs
are numpy arrays that own the core's buffers.
"""

from ._core import (
    Hierarchy,
    MsaugError,
    __version__,
    augment_graph,
    augment_image,
    build_hierarchy,
    persistence_image,
    persistence_landscape,
    segment,
    to_channels,
    to_gnn_graph,
)

__all__ = [
    "Hierarchy",
    "MsaugError",
    "__version__",
    "augment_graph",
    "augment_image",
    "build_hierarchy",
    "persistence_image",
    "persistence_landscape",
    "segment",
    "to_channels",
    "to_gnn_graph",
]
