#!/usr/bin/env python3
"""Regenerate every bundled asset from code.

Produces, deterministically:
  src/maskprobe/assets/imagenet_labels.txt   (from torchvision's static table)
  src/maskprobe/assets/stub_model.json
  src/maskprobe/assets/corpus/*.png          five drawn sample scenes
  src/maskprobe/assets/masks/*.png           two interaction masks per scene
  src/maskprobe/assets/manifest.json
  tests/golden/*.json / *.png                scripted stroke fixtures shared
                                             with the web client test suite

The corpus images are procedural stand-ins for the five sample classes
(golden retriever, soccer ball, coffee mug, bakery, cinema). Replace them
with real photographs for quantitative work; the mask geometry tracks the
drawn scene geometry defined here, so regenerate masks if you change
scenes. Assets are versioned with the repo so experiment reports stay
comparable across runs.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import numpy as np
from PIL import Image, ImageDraw

REPO = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(REPO / "src"))

from maskprobe.masking import Mask, Stroke, apply_stroke, encode_mask, new_mask  # noqa: E402

ASSETS = REPO / "src" / "maskprobe" / "assets"
CORPUS = ASSETS / "corpus"
MASKS = ASSETS / "masks"
GOLDEN = REPO / "tests" / "golden"

W, H = 480, 360


# ---------------------------------------------------------------------------
# Labels and stub model
# ---------------------------------------------------------------------------

def write_labels() -> None:
    try:
        from torchvision.models._meta import _IMAGENET_CATEGORIES as categories
    except ImportError:
        sys.exit("torchvision is required to regenerate the label table")
    assert len(categories) == 1000
    (ASSETS / "imagenet_labels.txt").write_text("\n".join(categories) + "\n", encoding="utf-8")
    print(f"wrote imagenet_labels.txt ({len(categories)} classes)")


def write_stub_model() -> None:
    spec = {
        "format": "maskprobe-stub",
        "kind": "patch_linear",
        "seed": 7,
        "grid": 8,
        "outputs": 1000,
    }
    (ASSETS / "stub_model.json").write_text(json.dumps(spec, indent=2) + "\n", encoding="utf-8")
    print("wrote stub_model.json")


# ---------------------------------------------------------------------------
# Scenes. Each returns (image, keep_regions) where keep_regions maps an
# interaction label to a list of shapes left visible by that interaction.
# Shapes: ("ellipse"|"rect", (x0, y0, x1, y1)) in image coordinates.
# ---------------------------------------------------------------------------

Shape = tuple[str, tuple[int, int, int, int]]


def _draw_shapes(draw: ImageDraw.ImageDraw, shapes: list[tuple[Shape, tuple]], outline=None) -> None:
    for (kind, box), color in shapes:
        if kind == "ellipse":
            draw.ellipse(box, fill=color, outline=outline)
        else:
            draw.rectangle(box, fill=color, outline=outline)


def scene_golden_retriever() -> tuple[Image.Image, dict[str, list[Shape]]]:
    img = Image.new("RGB", (W, H), (150, 200, 235))
    d = ImageDraw.Draw(img)
    d.rectangle((0, 220, W, H), fill=(90, 160, 70))
    body: Shape = ("ellipse", (130, 180, 330, 290))
    head: Shape = ("ellipse", (290, 120, 390, 220))
    ear: Shape = ("ellipse", (295, 130, 325, 195))
    legs = [("rect", (160, 270, 185, 330)), ("rect", (280, 270, 305, 330))]
    tail: Shape = ("ellipse", (100, 170, 150, 210))
    for shape, color in [(body, (196, 148, 70)), (tail, (186, 138, 62)),
                         (head, (205, 158, 80)), (ear, (160, 112, 48))]:
        _draw_shapes(d, [(shape, color)])
    for leg in legs:
        _draw_shapes(d, [(leg, (186, 138, 62))])
    d.ellipse((330, 150, 345, 165), fill=(30, 25, 20))   # eye
    d.ellipse((365, 180, 385, 196), fill=(40, 30, 25))   # nose
    dog = [body, head, ear, tail] + legs
    face = [head, ear]
    return img, {"background except dog": dog, "all except face": face}


def scene_soccer_ball() -> tuple[Image.Image, dict[str, list[Shape]]]:
    img = Image.new("RGB", (W, H), (120, 175, 90))
    d = ImageDraw.Draw(img)
    d.rectangle((0, 0, W, 110), fill=(170, 210, 240))
    ball: Shape = ("ellipse", (140, 180, 260, 300))
    leg: Shape = ("rect", (255, 90, 300, 215))
    _draw_shapes(d, [(leg, (222, 184, 150))])
    d.rectangle((250, 195, 310, 230), fill=(40, 40, 45))  # shoe
    _draw_shapes(d, [(ball, (240, 240, 240))])
    d.regular_polygon((200, 240, 26), n_sides=5, fill=(20, 20, 25))
    d.ellipse((160, 200, 180, 220), fill=(25, 25, 30))
    d.ellipse((225, 270, 247, 290), fill=(25, 25, 30))
    shoe: Shape = ("rect", (250, 195, 310, 230))
    return img, {
        "background except ball": [ball],
        "all except ball and leg": [ball, leg, shoe],
    }


def scene_coffee_mug() -> tuple[Image.Image, dict[str, list[Shape]]]:
    img = Image.new("RGB", (W, H), (225, 214, 196))
    d = ImageDraw.Draw(img)
    d.rectangle((0, 235, W, H), fill=(140, 95, 55))
    body: Shape = ("rect", (180, 120, 290, 260))
    handle_outer: Shape = ("ellipse", (275, 150, 345, 230))
    _draw_shapes(d, [(handle_outer, (200, 60, 50))])
    d.ellipse((292, 167, 328, 213), fill=(225, 214, 196))   # handle hole
    _draw_shapes(d, [(body, (210, 65, 55))])
    d.ellipse((180, 108, 290, 132), fill=(245, 240, 235))   # rim
    d.ellipse((195, 113, 275, 127), fill=(70, 45, 30))      # coffee
    return img, {
        "background except mug": [body, handle_outer],
        "background and handle of mug": [body],
    }


def scene_bakery() -> tuple[Image.Image, dict[str, list[Shape]]]:
    img = Image.new("RGB", (W, H), (212, 190, 160))
    d = ImageDraw.Draw(img)
    d.rectangle((0, 280, W, H), fill=(120, 85, 50))                  # floor
    shelves: Shape = ("rect", (50, 60, 330, 240))
    _draw_shapes(d, [(shelves, (150, 105, 60))])
    for y in (110, 165, 220):
        d.rectangle((55, y, 325, y + 10), fill=(95, 65, 38))         # boards
    rng = np.random.default_rng(11)
    for row_y in (84, 138, 192):
        for i in range(5):
            x = 70 + i * 52 + int(rng.integers(-4, 5))
            d.ellipse((x, row_y, x + 40, row_y + 22), fill=(222, 170, 96))
    person_body: Shape = ("rect", (380, 200, 430, 300))
    person_head: Shape = ("ellipse", (386, 160, 424, 198))
    _draw_shapes(d, [(person_body, (80, 90, 140)), (person_head, (224, 186, 152))])
    counter: Shape = ("rect", (40, 300, 300, 350))
    _draw_shapes(d, [(counter, (165, 120, 72))])
    return img, {
        "others except shelves": [shelves],
        "others except shelves, person, interior": [shelves, person_body, person_head, counter],
    }


def scene_cinema() -> tuple[Image.Image, dict[str, list[Shape]]]:
    img = Image.new("RGB", (W, H), (28, 24, 40))
    d = ImageDraw.Draw(img)
    screen: Shape = ("rect", (90, 50, 390, 190))
    stage: Shape = ("rect", (60, 190, 420, 225))
    _draw_shapes(d, [(screen, (215, 220, 228)), (stage, (90, 60, 45))])
    d.rectangle((100, 60, 380, 180), fill=(170, 190, 215))           # projected frame
    seat_rows = []
    for r, y in enumerate((245, 280, 315)):
        for i in range(8):
            x = 45 + i * 52 + (10 if r % 2 else 0)
            d.rounded_rectangle((x, y, x + 38, y + 24), radius=6, fill=(120, 30, 40))
    front_seats: Shape = ("rect", (40, 240, 440, 272))
    return img, {
        "others except screen and stage": [screen, stage],
        "others except screen, stage, some seats": [screen, stage, front_seats],
    }


SCENES = {
    "golden_retriever": scene_golden_retriever,
    "soccer_ball": scene_soccer_ball,
    "coffee_mug": scene_coffee_mug,
    "bakery": scene_bakery,
    "cinema": scene_cinema,
}


def mask_keeping(shapes: list[Shape]) -> Image.Image:
    """All-painted mask with the given shapes left visible. Hard edges only."""
    m = Image.new("L", (W, H), 255)
    d = ImageDraw.Draw(m)
    for kind, box in shapes:
        if kind == "ellipse":
            d.ellipse(box, fill=0)
        else:
            d.rectangle(box, fill=0)
    return m


def slug(text: str) -> str:
    return text.replace(",", "").replace(" ", "_")


def write_corpus_and_masks() -> dict:
    manifest_entries = []
    for name, builder in SCENES.items():
        img, interactions = builder()
        img_path = CORPUS / f"{name}.png"
        img.save(img_path, format="PNG")
        entry_interactions = []
        for label, shapes in interactions.items():
            mask_img = mask_keeping(shapes)
            arr = np.asarray(mask_img)
            assert set(np.unique(arr)) <= {0, 255}, f"mask for {name}/{label} not binary"
            mask_path = MASKS / f"{name}__{slug(label)}.png"
            mask_img.save(mask_path, format="PNG")
            entry_interactions.append(
                {"label": label, "mask_path": f"masks/{mask_path.name}"}
            )
        manifest_entries.append(
            {
                "name": name,
                "image_path": f"corpus/{name}.png",
                "interactions": entry_interactions,
            }
        )
        print(f"wrote scene {name} (+{len(entry_interactions)} masks)")
    return {
        "fill": {"kind": "dataset_mean", "color": None},
        "k": 1,
        "entries": manifest_entries,
    }


def write_manifest(manifest: dict) -> None:
    (ASSETS / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    print("wrote manifest.json")


# ---------------------------------------------------------------------------
# Golden stroke fixtures (shared with the web client's parity tests)
# ---------------------------------------------------------------------------

GOLDEN_FIXTURES = [
    {
        "name": "single_dot",
        "width": 64,
        "height": 48,
        "strokes": [
            {"mode": "paint", "brush_radius": 3.5, "points": [[10.25, 12.75]]},
        ],
    },
    {
        "name": "diagonal_drag",
        "width": 64,
        "height": 48,
        "strokes": [
            {"mode": "paint", "brush_radius": 5.0,
             "points": [[5.5, 5.5], [30.0, 20.0], [58.2, 40.9]]},
        ],
    },
    {
        "name": "paint_then_erase",
        "width": 64,
        "height": 48,
        "strokes": [
            {"mode": "paint", "brush_radius": 8.0, "points": [[16.0, 16.0], [48.0, 32.0]]},
            {"mode": "erase", "brush_radius": 4.0, "points": [[32.0, 24.0], [40.0, 28.0]]},
        ],
    },
    {
        "name": "clipped_edges",
        "width": 64,
        "height": 48,
        "strokes": [
            {"mode": "paint", "brush_radius": 6.0, "points": [[-10.0, -10.0], [20.0, 10.0]]},
            {"mode": "paint", "brush_radius": 6.0, "points": [[60.0, 44.0], [80.0, 60.0]]},
        ],
    },
    {
        "name": "integer_boundary",
        "width": 64,
        "height": 48,
        "strokes": [
            {"mode": "paint", "brush_radius": 1.0, "points": [[2.0, 2.0], [2.0, 10.0]]},
            {"mode": "paint", "brush_radius": 2.0, "points": [[20.0, 20.0]]},
        ],
    },
]


def write_golden_fixtures() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for fixture in GOLDEN_FIXTURES:
        mask = new_mask(fixture["width"], fixture["height"])
        for s in fixture["strokes"]:
            stroke = Stroke(
                mode=s["mode"],
                brush_radius=s["brush_radius"],
                points=[(p[0], p[1]) for p in s["points"]],
            )
            mask = apply_stroke(mask, stroke)
        (GOLDEN / f"{fixture['name']}.json").write_text(
            json.dumps(fixture, indent=2) + "\n", encoding="utf-8"
        )
        (GOLDEN / f"{fixture['name']}.png").write_bytes(encode_mask(mask))
        print(f"wrote golden fixture {fixture['name']}")


def main() -> None:
    for directory in (ASSETS, CORPUS, MASKS, GOLDEN):
        directory.mkdir(parents=True, exist_ok=True)
    write_labels()
    write_stub_model()
    manifest = write_corpus_and_masks()
    write_manifest(manifest)
    write_golden_fixtures()


if __name__ == "__main__":
    main()
