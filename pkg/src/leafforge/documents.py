"""Manifold documents: one JSON object per manifold.

::

    {"name": "...", "blocks": ["+1", "-1", "H", ...] | "gram": [[...], ...],
     "chi": 4, "sigma": 0, "classes": {"v1": [1, 0, 0, 0]},
     "genus": {"v1": 2}}

``sigma`` is optional and, when present, must equal the signature of the
form. ``genus`` annotations are optional defaults for leaf queries.
Bundled fixtures are addressed as ``fixture:<name>``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .distributions import ManifoldModel
from .errors import LeafforgeError, SpecError
from .lattice import ClassVector, IntersectionForm, build_form


@dataclass(frozen=True)
class ManifoldDocument:
    model: ManifoldModel
    classes: dict[str, ClassVector] = field(default_factory=dict)
    genus: dict[str, int] = field(default_factory=dict)
    source: str = ""

    def cls(self, name: str) -> ClassVector:
        if name not in self.classes and name.endswith("'"):
            name = name.rstrip("'") + "_prime" * (len(name) - len(name.rstrip("'")))
        try:
            return self.classes[name]
        except KeyError:
            known = ", ".join(sorted(self.classes)) or "none"
            raise SpecError(f"unknown class {name!r} (known: {known})") from None

    def to_json(self) -> dict:
        M = self.model
        doc: dict = {"name": M.name, "chi": M.chi, "sigma": M.sigma}
        if M.form.blocks is not None:
            doc["blocks"] = [b.value for b in M.form.blocks]
        else:
            doc["gram"] = [list(r) for r in M.form.gram]
        doc["classes"] = {k: list(v) for k, v in self.classes.items()}
        if self.genus:
            doc["genus"] = dict(self.genus)
        return doc


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SpecError(f"{what} must be an integer, got {value!r}")
    return value


def parse_document(data: dict, source: str = "") -> ManifoldDocument:
    if not isinstance(data, dict):
        raise SpecError("manifold document must be a JSON object")
    name = str(data.get("name", source or "unnamed"))
    if "chi" not in data:
        raise SpecError("missing field 'chi'")
    chi = _int(data["chi"], "chi")
    try:
        if "blocks" in data and "gram" in data:
            raise SpecError("give either 'blocks' or 'gram', not both")
        if "blocks" in data:
            form = build_form(data["blocks"])
        elif "gram" in data:
            rows = data["gram"]
            if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
                raise SpecError("'gram' must be a list of rows")
            form = IntersectionForm.from_gram(
                [[_int(x, "gram entry") for x in r] for r in rows])
        else:
            raise SpecError("missing 'blocks' or 'gram'")
        sigma = data.get("sigma")
        if sigma is not None:
            sigma = _int(sigma, "sigma")
        model = ManifoldModel(name, form, chi, sigma)
    except SpecError:
        raise
    except (LeafforgeError, ValueError, TypeError) as exc:
        raise SpecError(f"{name}: {exc}") from exc

    classes: dict[str, ClassVector] = {}
    for cname, vec in (data.get("classes") or {}).items():
        if not isinstance(vec, list):
            raise SpecError(f"class {cname!r} must be a list of integers")
        v = tuple(_int(x, f"class {cname!r} entry") for x in vec)
        if len(v) != form.rank:
            raise SpecError(f"class {cname!r} has length {len(v)}, form rank is {form.rank}")
        classes[str(cname)] = v
    genus = {}
    for cname, g in (data.get("genus") or {}).items():
        if cname not in classes:
            raise SpecError(f"genus annotation for unknown class {cname!r}")
        genus[str(cname)] = _int(g, f"genus of {cname!r}")
    return ManifoldDocument(model, classes, genus, source)


def fixture_names() -> list[str]:
    root = resources.files("leafforge") / "fixtures"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_document(ref: str | Path) -> ManifoldDocument:
    """Load ``fixture:<name>`` or a path to a JSON file."""
    ref = str(ref)
    try:
        if ref.startswith("fixture:"):
            name = ref.split(":", 1)[1]
            path = resources.files("leafforge") / "fixtures" / f"{name}.json"
            if not path.is_file():
                raise SpecError(f"no bundled fixture {name!r} (have: {', '.join(fixture_names())})")
            text = path.read_text()
        else:
            text = Path(ref).read_text()
    except OSError as exc:
        raise SpecError(f"cannot read {ref}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{ref}: invalid JSON: {exc}") from exc
    return parse_document(data, ref)
