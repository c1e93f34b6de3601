"""Chow-Witt cycle representatives from local orientations."""

import json as _json

from ._cwkit import (
    CwkitError,
    Falsified,
    InvalidArgument,
    Rejected,
    Unsupported,
    commands,
    decide_isometry,
    groebner_basis,
    hilbert_symbol,
    set_trial_division_bound,
    witt_class,
)
from ._cwkit import run as _run

__all__ = [
    "CwkitError",
    "Falsified",
    "InvalidArgument",
    "Rejected",
    "Report",
    "Unsupported",
    "commands",
    "compare",
    "d1",
    "decide_isometry",
    "groebner_basis",
    "hilbert_symbol",
    "homotopy_check",
    "run",
    "set_trial_division_bound",
    "theta",
    "validate",
    "verify_difference",
    "witt",
    "witt_class",
]


class Report(dict):
    """A report dictionary with `status` and `exit_code` shortcuts."""

    @property
    def status(self):
        return self["status"]

    @property
    def ok(self):
        return self["status"] == "ok"

    @property
    def result(self):
        return self.get("result")

    exit_code = 0


def run(command, document):
    """Run `command` on a problem document given as a dict or JSON text."""
    text = document if isinstance(document, str) else _json.dumps(document)
    status, code, report = _run(command or "", text)
    out = Report(_json.loads(report))
    out.exit_code = code
    return out


def _ring(variables, field, homotopy=None):
    ring = {"field": field, "variables": list(variables)}
    if homotopy is not None:
        ring["homotopy"] = homotopy
    return ring


def validate(generators, variables, field="QQ", n=None, homotopy=None):
    return run("validate", {"ring": _ring(variables, field, homotopy), "n": n or len(generators),
                            "orientation": {"generators": list(generators)}})


def theta(generators, variables, field="QQ", n=None, reference=None, decomposition=None):
    doc = {"ring": _ring(variables, field), "n": n or len(generators), "orientation": {"generators": list(generators)}}
    if reference is not None:
        doc["reference"] = {"generators": list(reference)}
    if decomposition is not None:
        doc["decomposition"] = decomposition
    return run("theta", doc)


def compare(first, second, variables, field="QQ"):
    return run("compare", {"ring": _ring(variables, field), "n": len(first),
                           "orientations": [{"generators": list(first)}, {"generators": list(second)}]})


def homotopy_check(generators, variables, homotopy="T", field="QQ"):
    return run("homotopy-check", {"ring": _ring(variables, field, homotopy), "n": len(generators),
                                  "orientation": {"generators": list(generators)}})


def d1(g, t, variables, form=("1",), field="QQ"):
    return run("d1", {"ring": _ring(variables, field), "boundary": {"g": list(g), "form": list(form), "t": t}})


def verify_difference(cycles, witnesses, variables, n, field="QQ"):
    return run("verify-difference", {"ring": _ring(variables, field), "n": n, "cycles": cycles,
                                      "witnesses": witnesses})


def witt(forms=None, matrix=None, field="QQ"):
    body = {"forms": [list(f) for f in (forms or [])]}
    if matrix is not None:
        body["matrix"] = matrix
    return run("witt", {"ring": _ring([], field), "witt": body})
