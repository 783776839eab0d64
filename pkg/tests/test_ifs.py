import json

import numpy as np
import pytest
from scipy.optimize import brentq

from fractal_dirac import (
    BudgetExceededError,
    IfsSystem,
    Similitude,
    cantor_dust,
    cantor_set,
    compose,
    enumerate_words,
    iter_placed,
    lifted_carpet,
    load_ifs,
    menger_sponge,
    non_osc,
    preset,
    rotation,
    save_ifs,
    sierpinski_carpet,
    similarity_dimension,
    vertex_closure_check,
)
from fractal_dirac.cube import vertex_bits
from fractal_dirac.ifs import word_count
from fractal_dirac.presets import carpet_index_set


def test_compose_empty_word_is_identity():
    cube = compose(cantor_set(), ())
    assert cube.e_w == 1.0
    np.testing.assert_allclose(cube.transform, np.eye(1))
    np.testing.assert_allclose(cube.offset, [0.0])


def test_compose_cantor_repeated_right_map():
    cube = compose(cantor_set(), (2, 2))
    np.testing.assert_allclose(cube.offset, [8.0 / 9.0], atol=1e-15)
    np.testing.assert_allclose(cube.e_w, 1.0 / 9.0, rtol=1e-15)
    np.testing.assert_allclose(cube.vertices, [[8.0 / 9.0], [1.0]], atol=1e-15)


@pytest.mark.parametrize("j", [1, 2, 4])
def test_compose_rotation_word(j):
    ifs = rotation()
    cube = compose(ifs, (1,) * j)
    np.testing.assert_allclose(cube.e_w, (2.0 * np.sqrt(2.0)) ** -j, rtol=1e-14)
    np.testing.assert_allclose(
        cube.transform, np.linalg.matrix_power(ifs.maps[0].matrix, j), atol=1e-14
    )


def test_compose_is_monoid_action(rng):
    ifs = rotation()
    for _ in range(10):
        w1 = tuple(rng.integers(1, 5, size=rng.integers(0, 4)))
        w2 = tuple(rng.integers(1, 5, size=rng.integers(0, 4)))
        left = compose(ifs, w1 + w2)
        c1, c2 = compose(ifs, w1), compose(ifs, w2)
        np.testing.assert_allclose(left.e_w, c1.e_w * c2.e_w, rtol=1e-12)
        np.testing.assert_allclose(left.transform, c1.transform @ c2.transform, atol=1e-12)
        np.testing.assert_allclose(
            left.offset, c1.e_w * (c1.transform @ c2.offset) + c1.offset, atol=1e-12
        )


def test_word_enumeration_counts():
    assert len(list(enumerate_words(cantor_set(), 3))) == 15
    assert len(list(enumerate_words(sierpinski_carpet(), 2))) == 73
    assert len(list(enumerate_words(non_osc(), 0))) == 1


def test_word_enumeration_order():
    words = list(enumerate_words(cantor_set(), 2))
    assert words == [(), (1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_iter_placed_matches_enumeration():
    ifs = cantor_dust(2)
    placed_words = sorted(c.word for c in iter_placed(ifs, 3))
    assert placed_words == sorted(enumerate_words(ifs, 3))


def test_iter_placed_partition_by_top_symbol():
    ifs = cantor_dust(2)
    full = sorted(c.word for c in iter_placed(ifs, 3))
    parts = [()]
    for s in (1, 2, 3, 4):
        parts.extend(c.word for c in iter_placed(ifs, 3, top_symbols=[s]))
    assert sorted(parts) == full


def test_budget_guard():
    assert word_count(20, 9) > 10**7
    with pytest.raises(BudgetExceededError):
        list(enumerate_words(menger_sponge(), 9))
    with pytest.raises(BudgetExceededError):
        list(iter_placed(menger_sponge(), 4, budget=100))
    with pytest.raises(ValueError):
        list(enumerate_words(cantor_set(), -1))


def test_budget_env_override(monkeypatch):
    from fractal_dirac.ifs import default_budget

    monkeypatch.setenv("FRACTAL_DIRAC_BUDGET", "123")
    assert default_budget() == 123
    with pytest.raises(BudgetExceededError):
        list(enumerate_words(cantor_set(), 8))
    monkeypatch.setenv("FRACTAL_DIRAC_BUDGET", "junk")
    with pytest.raises(ValueError):
        default_budget()


def test_placed_cube_invariants(rng):
    ifs = non_osc()
    for cube in iter_placed(ifs, 3):
        recomputed = float(np.prod([ifs.maps[s - 1].ratio for s in cube.word]))
        assert abs(cube.e_w - recomputed) <= 1e-12 * max(recomputed, 1e-300)
        expected = cube.offset + cube.e_w * (vertex_bits(2) @ cube.transform.T)
        np.testing.assert_allclose(cube.vertices, expected, atol=1e-14)


@pytest.mark.parametrize(
    "name,expected",
    [
        ("cantor_set", np.log(2) / np.log(3)),
        ("cantor_dust2", 2 * np.log(2) / np.log(3)),
        ("cantor_dust3", 3 * np.log(2) / np.log(3)),
        ("sierpinski_carpet", np.log(8) / np.log(3)),
        ("menger_sponge", np.log(20) / np.log(3)),
        ("rotation", 4.0 / 3.0),
    ],
)
def test_similarity_dimension_equal_ratios(name, expected):
    assert abs(similarity_dimension(preset(name)) - expected) <= 1e-10


def test_similarity_dimension_residual(any_preset):
    dim = similarity_dimension(any_preset)
    assert abs(float(np.sum(any_preset.ratios**dim)) - 1.0) <= 1e-10


def test_non_osc_dimension_root():
    ifs = non_osc()
    dim = similarity_dimension(ifs)
    assert 1.8 < dim < 1.9

    def residual(s):
        return 4.0 * 3.0**-s + (2.0 / 3.0) ** s - 1.0

    assert residual(1.8) > 0 > residual(1.9)
    # independent root finder agrees
    reference = brentq(residual, 1.8, 1.9, xtol=1e-13)
    assert abs(dim - reference) <= 1e-10


@pytest.mark.parametrize(
    "name,expected",
    [
        ("cantor_set", True),
        ("cantor_dust2", True),
        ("cantor_dust3", True),
        ("sierpinski_carpet", True),
        ("menger_sponge", True),
        ("non_osc", True),
        ("rotation", False),
        ("lifted_cantor", False),
        ("lifted_carpet", False),
    ],
)
def test_vertex_closure(name, expected):
    assert vertex_closure_check(preset(name)) is expected


def test_carpet_index_sets():
    assert carpet_index_set(2) == [0, 1, 2, 3, 5, 6, 7, 8]
    extra = [9, 11, 15, 17, 18, 19, 20, 21, 23, 24, 25, 26]
    assert carpet_index_set(3) == sorted(carpet_index_set(2) + extra)
    assert len(carpet_index_set(4)) == 2**3 * 6  # 2^(n-1) (n+2) with n=4


def test_non_osc_preset_maps():
    ifs = non_osc()
    assert ifs.num_maps == 5
    ratios = sorted(m.ratio for m in ifs.maps)
    np.testing.assert_allclose(ratios, [1 / 3, 1 / 3, 1 / 3, 1 / 3, 2 / 3])
    np.testing.assert_allclose(ifs.maps[4].translation, [1 / 6, 1 / 6])


def test_rotation_preset_geometry():
    ifs = rotation()
    np.testing.assert_allclose(ifs.ratios, [1 / (2 * np.sqrt(2))] * 4)
    centers = np.array([[1, 1], [3, 1], [1, 3], [3, 3]]) / 4.0
    for m, c in zip(ifs.maps, centers):
        np.testing.assert_allclose(m.apply(np.array([0.5, 0.5])), c, atol=1e-14)


def test_lifted_carpet_shape():
    ifs = lifted_carpet()
    assert ifs.n == 3 and ifs.num_maps == 8
    assert all(m.translation[2] == 0.0 for m in ifs.maps)


def test_preset_parser_errors():
    with pytest.raises(ValueError):
        preset("no_such_thing")
    with pytest.raises(ValueError):
        preset("cantor_dustX")
    with pytest.raises(ValueError):
        preset("rotation:abc")


def test_similitude_validation():
    eye = np.eye(2)
    with pytest.raises(ValueError):
        Similitude(ratio=1.0, matrix=eye, translation=np.zeros(2))
    with pytest.raises(ValueError):
        Similitude(ratio=0.5, matrix=np.array([[1.0, 0.3], [0.0, 1.0]]), translation=np.zeros(2))
    with pytest.raises(ValueError):  # image escapes the unit cube
        Similitude(ratio=0.5, matrix=eye, translation=np.array([0.9, 0.0]))
    with pytest.raises(ValueError):
        IfsSystem(n=2, maps=())


def test_json_round_trip(tmp_path):
    ifs = rotation()
    path = tmp_path / "rotation.json"
    save_ifs(ifs, path)
    loaded = load_ifs(path)
    assert loaded.n == ifs.n and loaded.num_maps == ifs.num_maps
    for a, b in zip(loaded.maps, ifs.maps):
        np.testing.assert_allclose(a.matrix, b.matrix, atol=1e-15)
        np.testing.assert_allclose(a.translation, b.translation, atol=1e-15)
        assert a.ratio == b.ratio


def test_json_rejects_bad_documents(tmp_path):
    doc = {
        "n": 2,
        "maps": [
            {"ratio": 0.5, "matrix": [1.0, 0.3, 0.0, 1.0], "translation": [0.0, 0.0]}
        ],
        "label": "bad",
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    with pytest.raises(ValueError):
        load_ifs(path)
    path.write_text(json.dumps({"maps": []}))
    with pytest.raises(ValueError):
        load_ifs(path)
