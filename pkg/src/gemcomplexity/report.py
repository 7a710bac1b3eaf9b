"""Machine-readable reports shared by the command line and batch mode."""

from __future__ import annotations

import hashlib
import json
import time
from importlib import resources
from pathlib import Path

from gemcomplexity.bridge import cross_check, first_homology, induce_diagram
from gemcomplexity.census import gem_invariants
from gemcomplexity.diagram import DOUBLE_PRIME, PRIME, parse_hdg, validate_diagram
from gemcomplexity.errors import DiagramFormatError, GemFormatError
from gemcomplexity.forests import DEFAULT_FOREST_CAP
from gemcomplexity.gem import parse_gem, validate_gem
from gemcomplexity.gm import gm_value, parse_pairs
from gemcomplexity.heegaard import classify_system, modified_complexity

UPPER_BOUND_NOTE = "complexity values bound the Matveev complexity of the manifold from above"

FORMATS = ("gem", "hdg")


def load_schema():
    text = resources.files("gemcomplexity").joinpath("report.schema.json").read_text()
    return json.loads(text)


def detect_format(text):
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            head = line.split()[0]
            return head if head in FORMATS else None
    return None


class LoadedInput:
    """A parsed input file; ``error`` is set instead of ``obj`` when parsing failed."""

    def __init__(self, path, text):
        self.path = str(path)
        self.text = text
        self.digest = hashlib.sha256(text.encode()).hexdigest()
        self.format = detect_format(text)
        self.obj = None
        self.error = None
        try:
            if self.format == "gem":
                self.obj = parse_gem(text)
            elif self.format == "hdg":
                self.obj = parse_hdg(text)
            else:
                self.error = "unrecognized format: expected a 'gem' or 'hdg' header"
        except (GemFormatError, DiagramFormatError) as exc:
            self.error = str(exc)

    @property
    def name(self):
        return self.obj.name if self.obj is not None else Path(self.path).stem

    def identity(self):
        return {"name": self.name, "path": self.path, "format": self.format, "sha256": self.digest}


def load(path):
    return LoadedInput(path, Path(path).read_text())


def _skeleton(command, inp):
    return {"command": command, "input": inp.identity(), "status": "ok"}


def _invalid(rec, problems):
    rec["status"] = "invalid"
    rec["validation"] = {"valid": False, "problems": list(problems)}
    return rec


def _require(inp, fmt, rec):
    """Fill ``rec`` for an unusable input; returns False when the command cannot run."""
    if inp.error:
        _invalid(rec, [inp.error])
        return False
    if fmt and inp.format != fmt:
        _invalid(rec, [f"expected a {fmt} file, got {inp.format}"])
        return False
    if inp.format == "gem":
        v = validate_gem(inp.obj)
        if not v.valid:
            _invalid(rec, v.problems)
            return False
    else:
        v = validate_diagram(inp.obj)
        if not v.valid:
            _invalid(rec, v.problems)
            return False
    return True


def validate_record(inp):
    rec = _skeleton("validate", inp)
    if not _require(inp, None, rec):
        return rec
    if inp.format == "gem":
        rec["validation"] = validate_gem(inp.obj).to_dict()
    else:
        rec["validation"] = validate_diagram(inp.obj).to_dict()
    return rec


def _invariants(g):
    inv = gem_invariants(g)
    return {
        "vertices": g.num_vertices,
        "g_ij": inv["g_ij"],
        "g_hat": inv["g_hat"],
        "bipartite": inv["bipartite"],
        "contracted": inv["contracted"],
        "manifold": inv["manifold"],
        "euler_char_K": inv["euler_char_K"],
    }


def _diagram_info(d):
    out = {
        "crossings": d.num_vertices,
        "singular_vertices": len(d.singular_vertices),
        "edges": d.num_edges,
        "faces": d.num_faces,
        "euler_char": d.euler_char,
        "orientable": d.orientable,
    }
    for system in (PRIME, DOUBLE_PRIME):
        cls = classify_system(d, system)
        out[system] = {
            "curves": d.curve_names(system),
            "proper": cls.proper,
            "reduced": cls.reduced,
        }
    return out


def info_record(inp):
    rec = _skeleton("info", inp)
    if not _require(inp, None, rec):
        return rec
    if inp.format == "gem":
        rec["invariants"] = _invariants(inp.obj)
        rec["h1"] = str(first_homology(inp.obj))
    else:
        rec["diagram"] = _diagram_info(inp.obj)
    return rec


def gm_record(inp, pairs=None, forest_cap=DEFAULT_FOREST_CAP):
    rec = _skeleton("gm", inp)
    if not _require(inp, "gem", rec):
        return rec
    value, witness = gm_value(inp.obj, pairs=pairs, forest_cap=forest_cap)
    rec["gm"] = {"value": value, "witness": witness.to_dict(), "note": UPPER_BOUND_NOTE}
    return rec


def induce_record(inp, pairs=None):
    rec = _skeleton("induce", inp)
    if not _require(inp, "gem", rec):
        return rec
    rec["pairs"] = []
    for pair in parse_pairs(pairs):
        d = induce_diagram(inp.obj, pair).diagram
        info = _diagram_info(d)
        info["pair"] = list(pair)
        info["valid"] = validate_diagram(d).valid
        rec["pairs"].append(info)
    return rec


def hm_record(inp, forest_cap=DEFAULT_FOREST_CAP):
    rec = _skeleton("hm", inp)
    if not _require(inp, "hdg", rec):
        return rec
    d = inp.obj
    if not classify_system(d, PRIME).proper:
        return _invalid(rec, ["the prime system is not proper"])
    value, witness = modified_complexity(d, cap=forest_cap)
    rec["diagram"] = _diagram_info(d)
    rec["hm"] = {"value": value, "witness": witness.to_dict(), "note": UPPER_BOUND_NOTE}
    return rec


def crosscheck_record(inp, pairs=None, forest_cap=DEFAULT_FOREST_CAP):
    rec = _skeleton("crosscheck", inp)
    if not _require(inp, "gem", rec):
        return rec
    g = inp.obj
    rep = cross_check(g, forest_cap=forest_cap, pairs=pairs)
    rec["invariants"] = _invariants(g)
    rec["gm"] = {"value": rep.gm_value, "witness": rep.gem_witness, "note": UPPER_BOUND_NOTE}
    rec["hm"] = {"value": rep.hm_value, "witness": rep.diagram_witness, "note": UPPER_BOUND_NOTE}
    rec["pairs"] = [p.to_dict() for p in rep.pairs]
    rec["h1"] = str(first_homology(g))
    rec["crosscheck"] = {
        "gm_value": rep.gm_value,
        "hm_value": rep.hm_value,
        "equal": rep.equal,
        "failures": rep.failures,
        "forests_checked": rep.forests_checked,
        "choices_compared": rep.choices_compared,
        "positive_choices": rep.positive_choices,
    }
    if not rep.ok:
        rec["status"] = "mismatch"
    return rec


BUILDERS = {
    "validate": validate_record,
    "info": info_record,
    "gm": gm_record,
    "induce": induce_record,
    "hm": hm_record,
    "crosscheck": crosscheck_record,
}


def build(command, inp, timing=False, **options):
    start = time.perf_counter()
    rec = BUILDERS[command](inp, **options)
    if timing:
        rec["timing_seconds"] = round(time.perf_counter() - start, 6)
    return rec
