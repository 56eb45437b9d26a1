"""Shape features, stigmergic clustering, and grid k-NN classification.

The pipeline: segment an object from a greyscale image, reduce it to seven
rotation/translation/scale-invariant moment features, min-max normalize a
collection of such vectors into the unit box, let simulated ants cluster
them on a toroidal grid, then label unknowns from their grid neighbours.
"""

from .errors import (
    CapacityExceededError,
    DegenerateHistogramError,
    DimensionMismatchError,
    EmptyObjectError,
    EvenKError,
    IdMismatchError,
    InsufficientDataError,
    NoItemsError,
    NotEnoughMarkersError,
    StigmergiaError,
    UnknownColumnError,
)
from .knn import Placement, PlacementEntry, accuracy, knn_classify, toroidal_distance
from .moments import (
    HuVector,
    MomentSet,
    central_moments,
    centroid,
    hu_features,
    hu_moments,
    log_normalize,
    minmax_normalize,
    normalized_central_moments,
    raw_moment,
    signed_log,
)
from .segmentation import binarize, histogram_threshold, largest_component, segment
from .swarm import (
    Params,
    RunResult,
    SwarmState,
    agent_act,
    crowding,
    directional_weight,
    drop_probability,
    drop_threshold,
    evaporate,
    feature_distance,
    pheromone_weight,
    pick_probability,
    pick_threshold,
    response_threshold,
    run,
    spatial_entropy,
    transition_probabilities,
    transition_step,
)

__version__ = "0.1.0"
