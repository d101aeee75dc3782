from fastapi.testclient import TestClient

from seedgraph.service import create_app


def make_client() -> TestClient:
    return TestClient(create_app(debug=True))


def create(client, body):
    r = client.post("/session", json=body)
    assert r.status_code == 200, r.text
    return r.json()


def test_create_preset_session():
    client = make_client()
    data = create(client, {"preset": "A2"})
    assert data["seed"]["cluster"] == ["x1", "x2"]
    assert data["seed"]["quiver"]["b"] == [[0, 1], [-1, 0]]
    sid = data["id"]
    got = client.get(f"/session/{sid}").json()
    assert got["seed"] == data["seed"]
    assert got["word"] == "e"
    assert got["history"] == []


def test_create_quiver_session():
    client = make_client()
    data = create(client, {"quiver": {"n": 2, "b": [[0, 2], [-2, 0]], "frozen": []}})
    assert data["seed"]["quiver"]["b"] == [[0, 2], [-2, 0]]


def test_create_rejects_bad_bodies():
    client = make_client()
    assert client.post("/session", json={}).status_code == 400
    assert (
        client.post("/session", json={"preset": "A2", "quiver": {"b": [[0]]}}).status_code
        == 400
    )
    assert client.post("/session", json={"preset": "nope"}).status_code == 400
    assert client.post("/session", json={"quiver": {"b": [[0, 5], [1, 0]]}}).status_code == 400


def test_mutate_twice_is_identity():
    client = make_client()
    data = create(client, {"preset": "A2"})
    sid = data["id"]
    once = client.post(f"/session/{sid}/mutate", json={"vertex": 1}).json()
    assert once["seed"]["cluster"] == ["x1^-1 + x1^-1*x2", "x2"]
    twice = client.post(f"/session/{sid}/mutate", json={"vertex": 1}).json()
    assert twice["seed"] == data["seed"]
    assert twice["word"] == "e"  # m1 m1 cancels in the normal form


def test_pair_word_five_times_is_identity_over_the_wire():
    client = make_client()
    data = create(client, {"preset": "A2"})
    sid = data["id"]
    last = None
    for _ in range(5):
        client.post(f"/session/{sid}/mutate", json={"vertex": 1})
        last = client.post(f"/session/{sid}/mutate", json={"vertex": 2})
    assert last.json()["seed"] == data["seed"]
    assert len(last.json()["history"]) == 10


def test_word_after_mutate_and_permute():
    client = make_client()
    sid = create(client, {"preset": "A2"})["id"]
    client.post(f"/session/{sid}/mutate", json={"vertex": 1})
    client.post(f"/session/{sid}/permute", json={"perm": [2, 1]})
    assert client.get(f"/session/{sid}/word").json()["word"] == "m1 | (1 2)"


def test_permute_swaps_variables():
    client = make_client()
    sid = create(client, {"preset": "A2"})["id"]
    got = client.post(f"/session/{sid}/permute", json={"perm": [2, 1]}).json()
    assert got["seed"]["cluster"] == ["x2", "x1"]
    assert got["seed"]["quiver"]["b"] == [[0, -1], [1, 0]]
    assert got["history"][-1]["generator"] == "(1 2)"


def test_unknown_session_404():
    client = make_client()
    for method, path in [
        ("get", "/session/deadbeef"),
        ("post", "/session/deadbeef/mutate"),
        ("post", "/session/deadbeef/undo"),
        ("get", "/session/deadbeef/word"),
        ("get", "/session/deadbeef/neighborhood"),
        ("get", "/session/deadbeef/classinfo"),
    ]:
        if method == "get":
            r = client.get(path)
        else:
            r = client.post(path, json={"vertex": 1})
        assert r.status_code == 404, path


def test_bad_vertex_and_permutation_400():
    client = make_client()
    sid = create(client, {"preset": "A2"})["id"]
    assert client.post(f"/session/{sid}/mutate", json={"vertex": 0}).status_code == 400
    assert client.post(f"/session/{sid}/mutate", json={"vertex": 3}).status_code == 400
    assert client.post(f"/session/{sid}/permute", json={"perm": [1, 1]}).status_code == 400
    assert client.post(f"/session/{sid}/permute", json={"perm": [1]}).status_code == 400


def test_frozen_vertex_409():
    client = make_client()
    # one mutable vertex (1) and one frozen coefficient vertex (2)
    body = {"quiver": {"n": 2, "b": [[0, -1], [1, 0]], "frozen": [2]}}
    sid = create(client, body)["id"]
    assert client.post(f"/session/{sid}/mutate", json={"vertex": 2}).status_code == 409
    assert client.post(f"/session/{sid}/mutate", json={"vertex": 1}).status_code == 200
    # permutation mixing frozen and mutable labels is invalid, not conflicting
    assert client.post(f"/session/{sid}/permute", json={"perm": [2, 1]}).status_code == 400


def test_undo():
    client = make_client()
    data = create(client, {"preset": "A2"})
    sid = data["id"]
    client.post(f"/session/{sid}/mutate", json={"vertex": 1})
    client.post(f"/session/{sid}/mutate", json={"vertex": 2})
    got = client.post(f"/session/{sid}/undo").json()
    assert got["word"] == "m1"
    assert len(got["history"]) == 1
    client.post(f"/session/{sid}/undo")
    final = client.get(f"/session/{sid}").json()
    assert final["seed"] == data["seed"]
    assert client.post(f"/session/{sid}/undo").status_code == 400


def test_neighborhood():
    client = make_client()
    sid = create(client, {"preset": "A2"})["id"]
    ball = client.get(f"/session/{sid}/neighborhood", params={"depth": 1}).json()
    assert len(ball["vertices"]) == 3  # self plus two mutation neighbors
    assert ball["center"] == 0
    assert sorted(lab for _, _, lab in ball["edges"]) == [1, 2]
    point = client.get(f"/session/{sid}/neighborhood", params={"depth": 0}).json()
    assert len(point["vertices"]) == 1 and point["edges"] == []
    assert client.get(f"/session/{sid}/neighborhood", params={"depth": 99}).status_code == 400
    assert client.get(f"/session/{sid}/neighborhood", params={"depth": -1}).status_code == 400
    # the whole class at depth 6: the ten-seed cycle, one 1-edge and one
    # 2-edge at every vertex
    full = client.get(f"/session/{sid}/neighborhood", params={"depth": 6}).json()
    assert len(full["vertices"]) == 10 and len(full["edges"]) == 10


def test_classinfo_closed_and_unknown():
    client = make_client()
    sid = create(client, {"preset": "A2"})["id"]
    info = client.get(f"/session/{sid}/classinfo").json()
    assert info == {
        "status": "closed",
        "seeds": 10,
        "same_quiver_classes": 2,
        "similarity_classes": 1,
        "max_arrow_multiplicity": 1,
    }
    # stays the same after walking: class data belongs to the class
    client.post(f"/session/{sid}/mutate", json={"vertex": 1})
    assert client.get(f"/session/{sid}/classinfo").json() == info
    wild = create(client, {"preset": "markov3"})["id"]
    unknown = client.get(f"/session/{wild}/classinfo").json()
    assert unknown["status"] == "unknown"


def test_consistency_endpoint():
    client = make_client()
    sid = create(client, {"preset": "A2"})["id"]
    for vertex in (1, 2, 1):
        client.post(f"/session/{sid}/mutate", json={"vertex": vertex})
    client.post(f"/session/{sid}/permute", json={"perm": [2, 1]})
    client.post(f"/session/{sid}/undo")
    r = client.get(f"/session/{sid}/debug/consistency")
    assert r.status_code == 200
    assert r.json() == {"consistent": True}
    # endpoint absent outside debug builds
    plain = TestClient(create_app(debug=False))
    sid2 = create(plain, {"preset": "A2"})["id"]
    assert plain.get(f"/session/{sid2}/debug/consistency").status_code == 404


def test_sessions_are_independent():
    client = make_client()
    a = create(client, {"preset": "A2"})["id"]
    b = create(client, {"preset": "A2"})["id"]
    client.post(f"/session/{a}/mutate", json={"vertex": 1})
    assert client.get(f"/session/{b}").json()["history"] == []
    assert client.get(f"/session/{a}").json()["word"] == "m1"
