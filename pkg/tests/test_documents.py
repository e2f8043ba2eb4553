import pytest

from leafforge.documents import fixture_names, load_document, parse_document
from leafforge.errors import SpecError


def test_fixtures_load():
    for name in fixture_names():
        doc = load_document(f"fixture:{name}")
        assert doc.model.form.rank > 0


def test_round_trip():
    doc = load_document("fixture:leaf_minimise")
    again = parse_document(doc.to_json())
    assert again.model == doc.model and again.classes == doc.classes


def test_prime_alias():
    doc = load_document("fixture:leaf_minimise")
    assert doc.cls("sigma'") == doc.cls("sigma_prime")


@pytest.mark.parametrize("data", [
    {"blocks": ["H"]},
    {"blocks": ["H"], "gram": [[0, 1], [1, 0]], "chi": 0},
    {"blocks": ["Q"], "chi": 0},
    {"gram": [[2]], "chi": 0},
    {"blocks": ["+1", "-1"], "chi": 0, "sigma": 2},
    {"blocks": ["H"], "chi": 0, "classes": {"a": [1]}},
    {"blocks": ["H"], "chi": 0, "classes": {"a": [1, 0]}, "genus": {"b": 2}},
    {"blocks": ["H"], "chi": "0"},
])
def test_rejects(data):
    with pytest.raises(SpecError):
        parse_document(data)
