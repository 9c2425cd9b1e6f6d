import pytest

from dscentrality import datasets
from dscentrality.errors import DatasetUnavailableError
from dscentrality.graph import GraphStats

REFERENCE = {
    "email": (1133, 5451, 9.622, 0.048),
    "protein": (2783, 6007, 4.317, 0.063),
    "erdos": (456, 1314, 5.763, 0.079),
    "router": (2114, 6632, 6.274, 0.036),
}


def test_manifest_lists_reference_statistics():
    entries = datasets.manifest()
    assert set(entries) == set(REFERENCE)
    for name, (n, e, k, inv) in REFERENCE.items():
        ref = entries[name]["reference"]
        assert (ref["n"], ref["e"], ref["mean_degree"], ref["inv_lambda1"]) == (n, e, k, inv)
        assert entries[name]["source_url"].startswith("http")
        assert entries[name]["snapshot"]


def test_reference_mean_degree_is_consistent():
    for n, e, k, _ in REFERENCE.values():
        assert round(2 * e / n, 3) == pytest.approx(k, abs=1e-3)


def test_unavailable_dataset_explains_where_to_put_it(tmp_path, monkeypatch):
    monkeypatch.setenv(datasets.ENV_VAR, str(tmp_path))
    name = next(n for n in datasets.names() if n not in datasets.available())
    with pytest.raises(DatasetUnavailableError, match=datasets.manifest()[name]["file"]):
        datasets.load_dataset(name)
    with pytest.raises(KeyError):
        datasets.dataset_path("karate")


def test_env_directory_lookup(tmp_path, monkeypatch):
    monkeypatch.setenv(datasets.ENV_VAR, str(tmp_path))
    (tmp_path / "erdos.txt").write_text("1 2\n2 3\n")
    assert "erdos" in datasets.available()
    assert datasets.dataset_path("erdos") == tmp_path / "erdos.txt"
    name, g = datasets.resolve_graph("erdos")
    assert name == "erdos" and g.edge_count == 2
    # a wrong snapshot loads, but the comparison reports every mismatch
    problems = datasets.compare_to_reference("erdos", GraphStats(3, 2, 4 / 3, 0.707))
    assert len(problems) == 4


def test_compare_to_reference_accepts_rounding():
    assert datasets.compare_to_reference("email", GraphStats(1133, 5451, 2 * 5451 / 1133, 0.0484)) == []
    assert datasets.compare_to_reference("email", GraphStats(1133, 5451, 9.622, 0.0495)) != []


def test_resolve_graph_prefers_files(tmp_path):
    path = tmp_path / "email"
    path.write_text("a b\n")
    name, g = datasets.resolve_graph(str(path))
    assert name == "email" and g.node_count == 2
    with pytest.raises(FileNotFoundError):
        datasets.resolve_graph(str(tmp_path / "absent.txt"))
