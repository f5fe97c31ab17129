import random

import pytest

from dnabricks.canvas import Canvas, CanvasSpec, all_voxels, new_canvas


@pytest.fixture
def small_spec():
    return CanvasSpec(2, 2, 16)


@pytest.fixture
def cube_spec():
    return CanvasSpec(8, 8, 64)


def random_sculpt(spec: CanvasSpec, rng: random.Random, keep_fraction=None):
    """A canvas with a random subset of voxels deselected."""
    canvas = new_canvas(spec)
    voxels = list(all_voxels(spec))
    if keep_fraction is None:
        n_remove = rng.randrange(len(voxels) + 1)
    else:
        n_remove = len(voxels) - round(keep_fraction * len(voxels))
    removed = rng.sample(voxels, n_remove)
    return Canvas(spec, canvas.selected - set(removed))


def random_spec(rng: random.Random, max_helices=10, max_slabs=5) -> CanvasSpec:
    return CanvasSpec(
        rng.randint(2, max_helices),
        rng.randint(2, max_helices),
        16 * rng.randint(1, max_slabs),
    )
