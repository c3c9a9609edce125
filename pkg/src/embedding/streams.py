"""
Counter-Based Random Streams - FSW Embedding Toolkit

Every random quantity is addressed by (seed, namespace, block) rather than
drawn from one long sequential stream. Coordinate k lives in block
k // STREAM_BLOCK, whose generator is a Philox counter-based bit generator
keyed by a SeedSequence built from (seed, namespace, block). Consequences:

- regenerating from the same seed reproduces every coordinate bit-exactly;
- blocks can be produced in any order, on any number of workers;
- the first k coordinates of an (m >= k)-draw equal the k-draw, because
  blocks are always drawn whole and truncated afterwards.

Each block draws STREAM_BLOCK x d standard normals (sphere directions,
g / ||g||) followed by STREAM_BLOCK uniforms u in [0, 1) (frequencies).
"""

from typing import Tuple

import numpy as np

from config import STREAM_BLOCK
from ..errors import FSWError

SEED_LIMIT = 2 ** 64


def check_seed(seed: int) -> int:
    """Seeds are integers in [0, 2^64)."""
    if isinstance(seed, bool) or not isinstance(seed, (int, np.integer)):
        raise FSWError(f"seed must be an integer, got {seed!r}")
    seed = int(seed)
    if not 0 <= seed < SEED_LIMIT:
        raise FSWError(f"seed must lie in [0, 2^64), got {seed}")
    return seed


def fresh_seed() -> int:
    """A new seed from OS entropy, small enough to print and replay."""
    return int(np.random.SeedSequence().entropy) % (2 ** 63)


def derive_seed(seed: int, *keys: int) -> int:
    """Deterministic child seed of `seed` for the given integer keys."""
    sequence = np.random.SeedSequence(entropy=check_seed(seed), spawn_key=tuple(keys))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def block_generator(seed: int, namespace: int, block: int) -> np.random.Generator:
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=(namespace, block))
    return np.random.Generator(np.random.Philox(sequence))


def _draw_block(seed: int, namespace: int, block: int, d: int) -> Tuple[np.ndarray, np.ndarray]:
    rng = block_generator(seed, namespace, block)
    normals = rng.standard_normal((STREAM_BLOCK, d))
    uniforms = rng.random(STREAM_BLOCK)
    return normals, uniforms


def _to_sphere(normals: np.ndarray) -> np.ndarray:
    norms = np.linalg.norm(normals, axis=1, keepdims=True)
    # a zero Gaussian vector has probability zero; map it to e_1
    degenerate = norms[:, 0] == 0
    if np.any(degenerate):
        normals = normals.copy()
        normals[degenerate] = 0.0
        normals[degenerate, 0] = 1.0
        norms[degenerate] = 1.0
    return normals / norms


def frequency_from_uniform(u):
    """
    Inverse CDF of the frequency law, density (1 + xi)^-2 on [0, inf).

    F(xi) = xi / (1 + xi), hence xi = u / (1 - u).
    """
    u = np.asarray(u, dtype=np.float64)
    return u / (1.0 - u)


def draw_directions_and_frequencies(d: int, count: int, seed: int, namespace: int):
    """
    Directions uniform on S^{d-1} and frequencies from the (1+xi)^-2 law.

    Returns:
        (count, d) directions and (count,) frequencies
    """
    if d < 1 or count < 1:
        raise FSWError(f"need d >= 1 and count >= 1, got d={d}, count={count}")
    seed = check_seed(seed)
    blocks = -(-count // STREAM_BLOCK)
    normals, uniforms = zip(*(_draw_block(seed, namespace, b, d) for b in range(blocks)))
    directions = _to_sphere(np.concatenate(normals)[:count])
    frequencies = frequency_from_uniform(np.concatenate(uniforms)[:count])
    return directions, frequencies


def draw_directions(d: int, count: int, seed: int, namespace: int) -> np.ndarray:
    """Directions only, from the same sampler as the embedding parameters."""
    directions, _ = draw_directions_and_frequencies(d, count, seed, namespace)
    return directions
