# Copyright 2026 The compose Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import numpy as np
import pytest

import compose


def corridor(width=200, height=132, vp=(100.0, 66.0)):
    """Four flat walls meeting at vp, each a different gray."""
    ys, xs = np.mgrid[0:height, 0:width]
    angle = np.degrees(np.arctan2(vp[1] - ys, xs - vp[0])) % 360
    sector = (angle // 90).astype(int)
    gray = np.array([60, 120, 180, 240], dtype=np.uint8)[sector]
    return np.repeat(gray[:, :, None], 3, axis=2)


def test_detect_vp_returns_grid_scores():
    result = compose.detect_vp(corridor(), cols=10, rows=7)
    x, y = result["vp"]
    assert 0 <= x < 200 and 0 <= y < 132
    assert result["scores"].shape == (7, 10)
    assert result["score"] == pytest.approx(np.nanmax(result["scores"]))


def test_segment_labels_cover_the_image():
    labels = compose.segment(corridor(), (100.0, 66.0), k=4, delta=1.0)
    assert labels.shape == (132, 200)
    assert labels.dtype == np.int32
    assert len(np.unique(labels)) == 4


def test_lines_on_a_drawn_square():
    img = np.full((132, 200, 3), 40, dtype=np.uint8)
    img[30:100, 50:150] = 220
    lines = compose.detect_lines(img)
    assert lines.shape[1] == 5
    assert len(lines) >= 4
    assert np.all((lines[:, 4] >= 0) & (lines[:, 4] <= 1))


def test_triangles_on_a_blank_image():
    assert compose.detect_triangles(np.full((64, 64, 3), 128, dtype=np.uint8)) == []


def test_metrics():
    a = np.array([[0, 0, 1, 1]], dtype=np.int32)
    whole = np.zeros((1, 4), dtype=np.int32)
    assert compose.rand_index(a, a) == 1.0
    assert compose.rand_index(a, whole) == pytest.approx(2 / 6)
    assert compose.variation_of_information(a, whole) == pytest.approx(1.0)
    assert compose.segmentation_covering(whole, a) == 0.5


def test_invalid_input_raises_value_error():
    with pytest.raises(ValueError):
        compose.segment(corridor(), (100.0, 66.0), lam=1.5)
    with pytest.raises(ValueError):
        compose.rand_index(np.zeros((2, 2), np.int32), np.zeros((3, 3), np.int32))


def test_scene_index_round_trip(tmp_path):
    images = tmp_path / "images"
    images.mkdir()
    for i, x in enumerate([60.0, 140.0]):
        compose.save_image(corridor(vp=(x, 66.0)), images / f"scene{i}.png")
    assert compose.build_index(images, tmp_path / "index", cols=10, rows=7) == 2
    query = compose.load_image(images / "scene1.png")
    ranked = compose.query_scene(query, tmp_path / "index")
    assert ranked[0] == ("scene1.png", 0.0)
    assert [r[0] for r in ranked] == ["scene1.png", "scene0.png"]
    assert math.isfinite(ranked[1][1])
