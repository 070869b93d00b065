"""Color image segmentation with swarm-seeded fuzzy c-means.

Images are (H, W, 3) uint8 arrays. Lower-level functions take pixels as
(N, d) float arrays and centers as (C, d) float arrays.
"""

from ._apsof import (
    ApsofError,
    ClusterConfig,
    SwarmConfig,
    SwarmMode,
    adaptive_inertia,
    adaptive_learning_factors,
    assign_nearest,
    compare,
    compute_memberships,
    dump_ppm,
    evaluate_jm,
    load_ppm,
    normalized_jm_pair,
    particle_fitness,
    run_fcm,
    segment,
    swarm_stats,
    update_centers,
)

ALGORITHMS = ("kmeans", "fcm", "psofcm", "apsof")


def read_ppm(path):
    with open(path, "rb") as f:
        return load_ppm(f.read())


def write_ppm(path, image):
    with open(path, "wb") as f:
        f.write(dump_ppm(image))


__all__ = [
    "ALGORITHMS",
    "ApsofError",
    "ClusterConfig",
    "SwarmConfig",
    "SwarmMode",
    "adaptive_inertia",
    "adaptive_learning_factors",
    "assign_nearest",
    "compare",
    "compute_memberships",
    "dump_ppm",
    "evaluate_jm",
    "load_ppm",
    "normalized_jm_pair",
    "particle_fitness",
    "read_ppm",
    "run_fcm",
    "segment",
    "swarm_stats",
    "update_centers",
    "write_ppm",
]
