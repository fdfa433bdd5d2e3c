import numpy as np
import pytest

from maskprobe.harness import occlusion_sweep, render_heatmap
from maskprobe.harness.sweep import patch_mask
from maskprobe.image import ImageBuffer
from maskprobe.inference import classify
from maskprobe.masking import FillPolicy, composite

from conftest import make_image


def test_grid_dimensions_formula(stub_model, rng):
    img = make_image(rng, 50, 38)
    heatmap = occlusion_sweep(img, stub_model, patch_size=12, stride=9)
    assert heatmap.grid.shape == ((38 - 12) // 9 + 1, (50 - 12) // 9 + 1)


def test_full_frame_patch_degenerates_to_single_cell(stub_model, rng):
    img = make_image(rng, 32, 32)
    fill = FillPolicy.dataset_mean()
    heatmap = occlusion_sweep(img, stub_model, patch_size=32, stride=5, fill=fill)
    assert heatmap.grid.shape == (1, 1)
    # Direct path: fully filled image, probability of the baseline class.
    fully = composite(img, patch_mask(32, 32, 0, 0, 32), fill)
    direct = classify(stub_model, fully, k=1000)
    expected = next(
        r.confidence for r in direct.top if r.class_index == heatmap.baseline_class_index
    )
    assert heatmap.grid[0, 0] == pytest.approx(expected, abs=1e-12)


def test_constant_image_no_spatial_signal_when_fill_matches(stub_model):
    # With the fill equal to the image's constant color, compositing is the
    # identity at every patch position, so all cells must be exactly equal.
    # (With a differing fill the model may legitimately react to patch
    # position; that case is covered by the cell-by-cell consistency test.)
    color = (90, 120, 150)
    img = ImageBuffer.from_array(np.full((48, 48, 3), color, dtype=np.uint8))
    heatmap = occlusion_sweep(img, stub_model, patch_size=16, stride=16,
                              fill=FillPolicy.constant(color))
    cells = heatmap.grid.reshape(-1)
    assert (cells == cells[0]).all()
    assert cells[0] == pytest.approx(heatmap.baseline_confidence, abs=1e-12)


def test_sweep_consistency_cell_by_cell(stub_model, rng):
    # Every cell must equal the direct composite-then-classify path.
    img = make_image(rng, 30, 30)
    fill = FillPolicy.constant((0, 0, 0))
    heatmap = occlusion_sweep(img, stub_model, patch_size=10, stride=10, fill=fill)
    assert heatmap.grid.shape == (3, 3)
    for gy in range(3):
        for gx in range(3):
            mask = patch_mask(30, 30, gx * 10, gy * 10, 10)
            direct = classify(stub_model, composite(img, mask, fill), k=1000)
            expected = next(
                r.confidence
                for r in direct.top
                if r.class_index == heatmap.baseline_class_index
            )
            assert heatmap.grid[gy, gx] == pytest.approx(expected, abs=1e-12)


def test_patch_larger_than_image_rejected(stub_model, rng):
    with pytest.raises(ValueError, match="exceeds"):
        occlusion_sweep(make_image(rng, 16, 16), stub_model, patch_size=17, stride=1)


@pytest.mark.parametrize("patch,stride", [(0, 1), (1, 0), (-2, 3)])
def test_bad_patch_or_stride_rejected(stub_model, rng, patch, stride):
    with pytest.raises(ValueError):
        occlusion_sweep(make_image(rng, 16, 16), stub_model, patch_size=patch, stride=stride)


def test_render_heatmap_formats(stub_model, rng):
    heatmap = occlusion_sweep(make_image(rng, 20, 20), stub_model, patch_size=10, stride=10)
    import json

    payload = json.loads(render_heatmap(heatmap, format="json"))
    assert len(payload["grid"]) == 2 and len(payload["grid"][0]) == 2
    csv_text = render_heatmap(heatmap, format="csv").decode()
    assert csv_text.splitlines()[0] == "gy,gx,x0,y0,confidence"
    assert len(csv_text.strip().splitlines()) == 5
    md_text = render_heatmap(heatmap, format="md").decode()
    assert md_text.startswith("# Occlusion sweep")
    assert render_heatmap(heatmap, format="json") == render_heatmap(heatmap, format="json")
