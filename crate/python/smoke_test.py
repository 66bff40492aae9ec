"""Smoke test for the latstick_py extension module."""

import json

import latstick_py as ls


def main():
    assert "trefoil" in ls.demo_names()
    assert ls.construction_count(2, 1, 1, 1, 1) == 4
    assert ls.main_upper(3, 1, 1, 1, 1, 1) == 13
    assert ls.lemma_binding(6, 1, 3) == 4

    tref = ls.SpatialGraph.demo("trefoil")
    assert tref.census() == {"alpha": 5, "b": 1, "e": 1, "k": 1, "s": 1, "v": 1}
    emb = tref.build()
    assert 12 <= emb.stick_count <= 13, emb
    assert emb.determinant("trefoil")[1] == 3

    again = ls.Embedding.from_json(emb.to_json())
    assert again.to_obj() == emb.to_obj()
    assert sum(1 for line in emb.to_obj().splitlines() if line.startswith("l ")) == emb.stick_count

    theta = ls.SpatialGraph.from_json(ls.SpatialGraph.demo("theta-planar").to_json())
    built = theta.build()
    assert built.stick_count <= 8 and built.theorem_bound == 8
    assert set(built.vertices) == {"v1", "v2"}

    doc = json.loads(theta.to_json())
    doc["components"][0]["arcs"] = [{"page": p, "from": 1, "to": 2} for p in range(1, 8)]
    th7 = ls.SpatialGraph.from_json(json.dumps(doc))
    assert th7.problems()
    try:
        th7.build()
    except ls.LatstickError:
        pass
    else:
        raise AssertionError("degree 7 accepted")

    try:
        ls.SpatialGraph.from_json('{"components": [], "extra": 1}')
    except ValueError:
        pass
    else:
        raise AssertionError("unknown key accepted")

    print("smoke test ok:", emb, built)


if __name__ == "__main__":
    main()
