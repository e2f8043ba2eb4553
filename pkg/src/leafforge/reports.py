"""Report assembly, rendering and independent re-verification.

Reports are plain dicts with a fixed key order. Rationals are written as
``"p/q"`` strings, never floats, so a JSON report round-trips exactly and
:func:`verify_report` can recheck every number from the echoed inputs.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from . import bundles
from .distributions import (
    CharacteristicPair,
    distribution_exists,
    euler_from_pair,
    pair_checks,
    solve_pairs,
)
from .documents import ManifoldDocument, parse_document
from .errors import SpecError
from .leaves import (
    EXHAUSTED,
    LeafOutcome,
    SurfaceClass,
    certificate_checks,
    genus_spectrum,
    realize_leaf,
)
from .quasimorphisms import (
    PremiseViolated,
    QmAssignment,
    lantern_reduce,
    phi_closed_form,
    replay_unbound,
    _render_combo,
)

EXIT_OK = 0
EXIT_EXHAUSTED = 1
EXIT_INPUT = 2
EXIT_HYPOTHESIS = 3
EXIT_UNVERIFIED = 4


def q(x: Fraction | int) -> str:
    return str(Fraction(x))


def _pair_json(p: CharacteristicPair) -> dict:
    e = euler_from_pair(p)
    return {"kplus": list(p.kplus), "kminus": list(p.kminus),
            "e1": list(e.e1), "e2": list(e.e2)}


# -- builders: each returns (report, exit code) ------------------------------

def distribution_report(doc: ManifoldDocument, search_bound: int | None = None,
                        jobs: int = 1) -> tuple[dict, int]:
    M = doc.model
    exists = distribution_exists(M)
    rep: dict[str, Any] = {
        "command": "distribution",
        "manifold": doc.to_json(),
        "checks": {"sigma_mod_2": M.sigma % 2, "chi_minus_sigma_mod_4": (M.chi - M.sigma) % 4},
        "exists": exists,
        "outcome": "exists" if exists else "does_not_exist",
    }
    code = EXIT_OK
    if search_bound is not None:
        res = solve_pairs(M, (), search_bound, limit=1, jobs=jobs)
        search: dict[str, Any] = {"bound": search_bound, "status": res.status}
        if res.found:
            search["witness"] = _pair_json(res.first)
        if res.reason:
            search["reason"] = res.reason
        rep["search"] = search
        if res.status == "exhausted" and exists:
            code = EXIT_EXHAUSTED
    return rep, code


def _outcome_json(o: LeafOutcome) -> dict:
    out: dict[str, Any] = {"genus": o.surface.genus, "outcome": o.status}
    if o.certificate is not None:
        out["certificate"] = dict(_pair_json(o.certificate.pair),
                                  checks=dict(o.certificate.checks))
    if o.reason:
        out["reason"] = o.reason
    return out


def leaf_report(doc: ManifoldDocument, cname: str, genus: int, bound: int,
                jobs: int = 1) -> tuple[dict, int]:
    S = SurfaceClass(doc.cls(cname), genus)
    o = realize_leaf(doc.model, S, bound, jobs=jobs)
    rep = {
        "command": "leaf",
        "manifold": doc.to_json(),
        "class": cname,
        "vector": list(S.cls),
        "bound": bound,
        **_outcome_json(o),
    }
    return rep, EXIT_EXHAUSTED if o.status == EXHAUSTED else EXIT_OK


def spectrum_report(doc: ManifoldDocument, cname: str, gmax: int, bound: int,
                    jobs: int = 1) -> tuple[dict, int]:
    v = doc.cls(cname)
    spec = genus_spectrum(doc.model, v, gmax, bound, jobs=jobs)
    rep = {
        "command": "genus-spectrum",
        "manifold": doc.to_json(),
        "class": cname,
        "vector": list(v),
        "gmax": gmax,
        "bound": bound,
        "entries": [_outcome_json(spec[g]) for g in sorted(spec)],
    }
    undecided = any(o.status == EXHAUSTED for o in spec.values())
    return rep, EXIT_EXHAUSTED if undecided else EXIT_OK


def bounds_report(g: int, h: int, k: int) -> tuple[dict, int]:
    rep: dict[str, Any] = {
        "command": "bounds",
        "g": g, "h": h, "k": k,
        "section_bound": bundles.section_bound(g, h),
        "pure_multisection_bound": bundles.pure_multisection_bound(g, h),
        "vertical_norm": q(bundles.vertical_norm()),
        "norm_bound_k": q(bundles.norm_bound_k(k)),
        "factorial_cover_degree": _factorial(k),
        "factorial_cover_bound": bundles.factorial_cover_bound(g, h, k),
        "b2_upper": bundles.b2_upper(g, h),
    }
    if g >= 2:
        cm = bundles.covering_multisection(g, h)
        rep["covering_multisection"] = {
            "cover_degree": cm.cover_degree, "section_genus": cm.section_genus,
            "self_intersection": cm.self_intersection,
            "euler_characteristic": cm.euler_characteristic,
        }
    return rep, EXIT_OK


def _factorial(k: int) -> int:
    from math import factorial
    return factorial(k)


def _in_phi12(combo: dict[int, Fraction]) -> dict[int, Fraction]:
    out = {1: Fraction(0), 2: Fraction(0)}
    for j, c in combo.items():
        cf = phi_closed_form(j)
        out[1] += c * cf.phi1
        out[2] += c * cf.phi2
    return out


def lantern_report(a: int, b: int, c: int) -> tuple[dict, int]:
    ident = lantern_reduce(a, b, c)
    top = ident.coefficients[-1][0]
    reduced = _in_phi12(ident.solve_for(top))
    rep = {
        "command": "lantern",
        "a": a, "b": b, "c": c,
        "identity": {str(k): q(v) for k, v in ident.coefficients},
        "relation": ident.render(),
        "in_phi1_phi2": f"φ{top} = {_render_combo(reduced)}",
        "closed_form_agrees": phi_closed_form(top).phi1 == reduced[1]
        and phi_closed_form(top).phi2 == reduced[2],
    }
    return rep, EXIT_OK


def replay_report(c, x1, x2) -> tuple[dict, int]:
    qa = QmAssignment(x1, x2, c)
    rep: dict[str, Any] = {"command": "replay", "c": q(qa.c), "x1": q(qa.x1), "x2": q(qa.x2)}
    try:
        cert = replay_unbound(qa)
    except PremiseViolated as exc:
        rep["outcome"] = "premise_violated"
        rep["premise"] = exc.premise
        rep["detail"] = exc.detail
        return rep, EXIT_HYPOTHESIS
    rep["outcome"] = "contradiction"
    rep["x4"] = q(qa.x4)
    rep["steps"] = [
        {"label": s.label, "lhs": q(s.lhs), "relation": s.relation, "rhs": q(s.rhs),
         "justification": s.justification}
        for s in cert.steps
    ]
    rep["chain_value"] = q(cert.chain_value)
    rep["conclusion"] = f"{q(cert.steps[-1].lhs)} > {q(qa.c)}"
    return rep, EXIT_OK


# -- rendering ---------------------------------------------------------------

def render_json(rep: dict) -> str:
    return json.dumps(rep, indent=2, ensure_ascii=False)


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return str(v)


def _headline(rep: dict) -> list[str]:
    cmd = rep.get("command")
    if cmd == "distribution":
        c = rep["checks"]
        return [f"exists: {_fmt(rep['exists'])}; sigma mod 2 = {c['sigma_mod_2']}; "
                f"chi − sigma mod 4 = {c['chi_minus_sigma_mod_4']}"]
    if cmd == "leaf":
        line = f"outcome: {rep['outcome']}"
        cert = rep.get("certificate")
        if cert:
            ch = cert["checks"]
            line += (f"; e1.{rep['class']} = {ch['e1_dot_surface']}"
                     f"; e2.{rep['class']} = {ch['e2_dot_surface']}")
        return [line]
    if cmd == "genus-spectrum":
        lines = []
        for e in rep["entries"]:
            line = f"genus {e['genus']}: {e['outcome']}"
            if "certificate" in e:
                line += f" e1={_fmt(e['certificate']['e1'])} e2={_fmt(e['certificate']['e2'])}"
            lines.append(line)
        return lines
    if cmd == "bounds":
        return [f"section {rep['section_bound']}, pure {rep['pure_multisection_bound']}, "
                f"norm {rep['norm_bound_k']}, factorial-cover {rep['factorial_cover_bound']}"]
    if cmd == "lantern":
        if rep["relation"] == rep["in_phi1_phi2"]:
            return [rep["relation"]]
        return [rep["relation"], rep["in_phi1_phi2"]]
    if cmd == "replay":
        if rep["outcome"] != "contradiction":
            return [f"premise violated: {rep['premise']} ({rep['detail']})"]
        lines = [f"{s['label']}: {s['lhs']} {s['relation']} {s['rhs']}    [{s['justification']}]"
                 for s in rep["steps"]]
        return lines + [f"contradiction: {rep['conclusion']}"]
    if cmd == "verify":
        return [f"verified: {_fmt(rep['verified'])}"] + [f"failed: {f}" for f in rep["failures"]]
    return []


def _flatten(prefix: str, v, out: list[str]) -> None:
    if isinstance(v, dict):
        for k, x in v.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), x, out)
    elif isinstance(v, list) and v and isinstance(v[0], dict):
        for i, x in enumerate(v):
            _flatten(f"{prefix}[{i}]", x, out)
    else:
        out.append(f"{prefix}: {_fmt(v)}")


def render_text(rep: dict) -> str:
    lines = _headline(rep)
    body: list[str] = []
    _flatten("", {k: v for k, v in rep.items() if k != "timing"}, body)
    lines += [""] + body
    if "timing" in rep:
        lines.append(f"# elapsed: {rep['timing']}")
    return "\n".join(lines)


# -- verification ------------------------------------------------------------

def _doc_of(rep: dict) -> ManifoldDocument:
    try:
        return parse_document(rep["manifold"], "report")
    except KeyError:
        raise SpecError("report carries no manifold echo") from None


def _check_cert(doc: ManifoldDocument, vec, genus: int, cert: dict, where: str,
                failures: list[str]) -> None:
    p = CharacteristicPair(cert["kplus"], cert["kminus"])
    S = SurfaceClass(tuple(vec), genus)
    fresh = certificate_checks(doc.model, S, p)
    e = euler_from_pair(p) if fresh.get("parity") else None
    if fresh != cert.get("checks"):
        failures.append(f"{where}: recorded checks differ from recomputation")
    if not all(v for v in fresh.values() if isinstance(v, bool)) or fresh.get("milnor_margin", -1) < 0:
        failures.append(f"{where}: certificate does not satisfy the leaf conditions")
    if e is None or list(e.e1) != cert["e1"] or list(e.e2) != cert["e2"]:
        failures.append(f"{where}: Euler classes do not match (K+ + K-)/2, (K- - K+)/2")


def verify_report(rep: dict) -> list[str]:
    """Recompute every claim of ``rep``; return the list of failures (empty if sound)."""
    failures: list[str] = []
    cmd = rep.get("command")
    if cmd == "distribution":
        doc = _doc_of(rep)
        fresh, _ = distribution_report(doc)
        for key in ("checks", "exists", "outcome"):
            if fresh[key] != rep.get(key):
                failures.append(f"{key} differs from recomputation")
        wit = rep.get("search", {}).get("witness")
        if wit is not None:
            p = CharacteristicPair(wit["kplus"], wit["kminus"])
            bad = [k for k, ok in pair_checks(doc.model, p).items() if not ok]
            failures += [f"witness: {k} fails" for k in bad]
            if not bad and _pair_json(p) != wit:
                failures.append("witness: Euler classes do not match")
    elif cmd == "leaf":
        doc = _doc_of(rep)
        if rep.get("outcome") == "realized":
            _check_cert(doc, rep["vector"], rep["genus"], rep["certificate"], "certificate", failures)
        elif rep.get("outcome") == "milnor_fail":
            S = SurfaceClass(tuple(rep["vector"]), rep["genus"])
            if abs(S.self_intersection(doc.model.form)) <= S.genus - 1:
                failures.append("Milnor inequality actually holds")
    elif cmd == "genus-spectrum":
        doc = _doc_of(rep)
        for e in rep["entries"]:
            if e["outcome"] == "realized":
                _check_cert(doc, rep["vector"], e["genus"], e["certificate"],
                            f"genus {e['genus']}", failures)
            elif e["outcome"] == "milnor_fail":
                S = SurfaceClass(tuple(rep["vector"]), e["genus"])
                if abs(S.self_intersection(doc.model.form)) <= S.genus - 1:
                    failures.append(f"genus {e['genus']}: Milnor inequality actually holds")
    elif cmd == "bounds":
        fresh, _ = bounds_report(rep["g"], rep["h"], rep["k"])
        failures += [f"{k} differs" for k in fresh if fresh[k] != rep.get(k)]
    elif cmd == "lantern":
        fresh, _ = lantern_report(rep["a"], rep["b"], rep["c"])
        failures += [f"{k} differs" for k in fresh if fresh[k] != rep.get(k)]
    elif cmd == "replay":
        fresh, _ = replay_report(Fraction(rep["c"]), Fraction(rep["x1"]), Fraction(rep["x2"]))
        failures += [f"{k} differs" for k in fresh if fresh[k] != rep.get(k)]
        if rep.get("outcome") == "contradiction":
            cert = replay_unbound(QmAssignment(Fraction(rep["x1"]), Fraction(rep["x2"]),
                                               Fraction(rep["c"])))
            if not cert.verify():
                failures.append("certificate does not re-verify")
    else:
        failures.append(f"unknown report command {cmd!r}")
    return failures
