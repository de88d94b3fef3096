import numpy as np
import pytest

from graphlimits import (Graph, Kernel, Multigraph, RasterSpec, Seed, StepGraphon, builtin_kernel, chessboard,
                         grow_prefix, grow_uniform, half_graph, petersen, render, render_series)
from graphlimits.graphs import parity_order
from graphlimits.viz import raster, read_pgm, to_gray, write_pgm

from conftest import random_graph


def blocks(pixels, n):
    r = pixels.shape[0] // n
    return pixels.reshape(n, r, n, r)


@pytest.mark.parametrize("res", [20, 40, 100])
def test_petersen_blocks_reproduce_adjacency(tmp_path, res):
    g = petersen()
    pix = read_pgm(render(g, RasterSpec(res), tmp_path / "p.pgm"))
    assert pix.shape == (res, res)
    b = blocks(pix, 10)
    assert (b == b[:, :1, :, :1]).all()
    assert np.array_equal(b[:, 0, :, 0] == 0, g.adj)
    assert set(np.unique(pix)) == {0, 255}


def test_random_graph_blocks(tmp_path):
    g = random_graph(np.random.default_rng(0), 13, 0.4)
    pix = read_pgm(render(g, RasterSpec(13 * 7), tmp_path / "g.pgm"))
    assert np.array_equal(blocks(pix, 13)[:, 3, :, 3] == 0, g.adj)


def test_upper_left_origin():
    # node 0 joined only to node 1: dark pixels at the top-left corner
    pix = to_gray(raster(Graph.from_edges(4, [(0, 1)]), RasterSpec(16)))
    assert pix[0, 4] == 0 and pix[4, 0] == 0 and pix[15, 15] == 255


def test_half_gray():
    pix = to_gray(raster(Kernel.constant(0.5), RasterSpec(32)))
    assert (pix == 128).all()


def test_half_graph_picture_approaches_limit():
    spec = RasterSpec(256)
    lim = raster(builtin_kernel("half-graph"), spec)
    err = [np.abs(raster(half_graph(n), spec) - lim).mean() for n in (4, 16, 64)]
    assert err[0] > err[1] > err[2]


def test_chessboard_orderings():
    g = chessboard(8)
    birth = raster(g, RasterSpec(16))
    assert birth[0, 2] == 1.0 and birth[0, 4] == 0.0 and birth[0, 1] == 0.0
    grouped = raster(g.relabel(parity_order(8)), RasterSpec(16))
    # two dark off-diagonal squares
    assert grouped[:8, 8:].all() and not grouped[:8, :8].any()


def test_degree_ordering_sorts_rows():
    g, _ = grow_prefix(60, Seed(2))
    r = raster(g, RasterSpec(60, "degree"))
    deg = r.sum(axis=1)
    assert all(a >= b for a, b in zip(deg, deg[1:]))


def test_step_and_multigraph():
    s = StepGraphon(np.array([[1.0, 0.2], [0.2, 0.0]]), np.array([0.25, 0.75]))
    r = raster(s, RasterSpec(16))
    assert (r[:4, :4] == 1).all() and np.allclose(r[:4, 4:], 0.2) and (r[4:, 4:] == 0).all()
    mg = Multigraph.from_edges(2, [(0, 1), (0, 1), (0, 0)])
    assert raster(mg, RasterSpec(16))[0, 15] == 1.0


def test_unbounded_kernel_is_clipped():
    r = raster(builtin_kernel("pref-log", 1.0), RasterSpec(16))
    assert r.max() == 1.0 and r.min() >= 0.0


def test_two_dimensional_kernel(tmp_path):
    pix = read_pgm(render(builtin_kernel("prefix-limit"), RasterSpec(64), tmp_path / "k.pgm"))
    assert pix.shape == (64, 64) and 0 < (pix == 0).mean() < 1


def test_deterministic_bytes(tmp_path):
    g = grow_uniform(50, Seed(3))
    a = render(g, RasterSpec(128), tmp_path / "a.pgm").read_bytes()
    b = render(g, RasterSpec(128), tmp_path / "b.pgm").read_bytes()
    assert a == b and a.startswith(b"P5\n128 128\n255\n")


def test_spec_validation():
    RasterSpec(16)
    RasterSpec(4096)
    for bad in (15, 4097):
        with pytest.raises(ValueError):
            RasterSpec(bad)
    with pytest.raises(ValueError):
        RasterSpec(32, "random")
    with pytest.raises(TypeError):
        raster("graph", RasterSpec(16))


def test_pgm_roundtrip_keeps_whitespace_bytes(tmp_path):
    pix = np.arange(256, dtype=np.uint8).reshape(16, 16)
    assert np.array_equal(read_pgm(write_pgm(pix, tmp_path / "x.pgm")), pix)
    (tmp_path / "bad.pgm").write_bytes(b"P2\n1 1\n255\n0")
    with pytest.raises(ValueError):
        read_pgm(tmp_path / "bad.pgm")


def test_series(tmp_path):
    paths = render_series([grow_uniform(n, Seed(n)) for n in (10, 20, 30)], RasterSpec(32), tmp_path / "out")
    assert [p.name for p in paths] == ["frame_000.pgm", "frame_001.pgm", "frame_002.pgm"]
    assert all(read_pgm(p).shape == (32, 32) for p in paths)
    with pytest.raises(ValueError):
        render_series([], RasterSpec(32), tmp_path)


def test_uniform_attachment_dark_upper_left():
    r = raster(grow_uniform(100, Seed(0)), RasterSpec(100))
    assert r[:25, :25].mean() > 0.6 and r[75:, 75:].mean() < 0.2
