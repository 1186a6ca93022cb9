"""Smoke test for the distrep extension module.

Build it first, e.g. `maturin develop -m crates/python/Cargo.toml`.
"""

import math

import distrep


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


def main():
    p3 = distrep.Graph(3, [(0, 1), (1, 2)])
    assert p3.classify() == "mixed"
    assert p3.complement().edges() == [(0, 2)]
    assert distrep.Graph.parse(p3.render()) == p3

    out = distrep.embed(p3)
    assert out["status"] == "ok", out
    assert out["dim"] == 1
    assert close(out["tau"], 0.375)
    assert close(out["final_lengths"][0], 1.0) and close(out["final_lengths"][1], 2.0)
    assert out["certification"]["passed"]
    assert distrep.verify(p3, out["coords"])["passed"]
    assert not distrep.verify(p3, [[0.0], [1.0], [2.5]])["passed"]

    k3 = distrep.Graph(3, [(0, 1), (0, 2), (1, 2)])
    fb = distrep.embed(k3)
    assert fb["status"] == "fallback" and fb["dim"] == 2
    assert "dimension |G|-1 is necessary" in fb["note"]

    tri = distrep.ColoredGraph([[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    assert tri.palette() == [1, 2, 3]
    col = distrep.embed(tri)
    assert col["status"] == "ok" and col["dim"] == 1

    q, x = distrep.q_value([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
    assert close(q, -0.5, 1e-12) and close(sum(x), 0.0, 1e-12)
    assert distrep.embeddability([[0, 1, 9], [1, 0, 1], [9, 1, 0]])[0] == "NonEmbeddable"

    pts = distrep.simplex(4)
    for i in range(4):
        for j in range(i + 1, 4):
            assert close(math.dist(pts[i], pts[j]), 1.0, 1e-12)

    mixed = [g for g in distrep.enumerate_graphs(4) if g.classify() == "mixed"]
    assert len(mixed) == 62
    assert all(distrep.embed(g)["status"] == "ok" for g in mixed)

    try:
        distrep.Graph(3, [(0, 0)])
    except ValueError:
        pass
    else:
        raise AssertionError("self loop accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
