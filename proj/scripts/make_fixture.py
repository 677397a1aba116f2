#!/usr/bin/env python3
"""Regenerates the bundled case-study fixture under data/.

The fixture encodes one industrial inspection-and-test quality assurance run:
12 inspected code classes, 236 reported inspection problems (189 accepted in
triage), reading logs for six inspectors, a system-test catalog of 16 case
groups over 8 functionalities, and 13 system-test defects. Aggregate numbers
(per-class defect content and density, ODC type marginals, test effort) are
the published ones; record-level details that the source data does not pin
down (per-defect severity, per-part type mix, descriptions) are generated
deterministically from a fixed seed.

Run from the repo root: python3 scripts/make_fixture.py
"""

import csv
import io
import json
import os
import random

OUT_DIR = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data")

ROMAN = ["I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX", "X", "XI", "XII"]

# Per-class accepted defect content and published 3-decimal densities.
CONTENT = [4, 18, 19, 2, 34, 18, 13, 24, 31, 11, 10, 5]
DENSITY = [0.009, 0.021, 0.020, 0.008, 0.061, 0.057, 0.038, 0.031, 0.045, 0.026, 0.031, 0.016]

# Problems rejected in triage, per class (sums to 47; 236 reported - 189 accepted).
REJECTED = [1, 4, 5, 1, 8, 4, 3, 6, 8, 3, 2, 2]

# ODC marginal over the 189 accepted inspection defects.
TYPE_MARGINAL = [
    ("algorithm_method", 53),
    ("checking", 36),
    ("function_class_object", 32),
    ("assignment_initialization", 13),
    ("relationship", 1),
    ("other", 54),
]

# Severity marginal over the 189 accepted inspection defects (not published;
# fixed deterministic choice).
SEVERITY_MARGINAL = [("minor", 99), ("major", 78), ("crash", 12)]

FUNCTIONALITIES = [
    ("GIT", "reading support: GIT", True),
    ("SGIT", "reading support: SGIT", False),
    ("GC", "reading support: GC", False),
    ("VID", "reading support: VID", False),
    ("CL", "reading support: CL", False),
    ("interaction", "interaction", False),
    ("report_generation", "report generation", False),
    ("checklist_creation", "checklist creation", False),
]

# (id, part, case_count, effort_minutes, revealed defect ids)
TEST_GROUPS = [
    ("git.t1", "GIT", 3, 10, ["id1", "id8"]),
    ("git.t2", "GIT", 3, 6, ["id1"]),
    ("sgit.t1", "SGIT", 3, 7, ["id9"]),
    ("sgit.t2", "SGIT", 3, 6, ["id1"]),
    ("gc.t1", "GC", 3, 7, ["id10"]),
    ("gc.t2", "GC", 3, 6, []),
    ("vid.t1", "VID", 0, 0, ["id11"]),
    ("vid.t2", "VID", 11, 30, ["id1"]),
    ("cl.t1", "CL", 1, 3, []),
    ("cl.t2", "CL", 1, 2, []),
    ("interaction.t1", "interaction", 15, 33, ["id2", "id3", "id4", "id6", "id7", "id12"]),
    ("interaction.t2", "interaction", 8, 21, ["id2", "id3"]),
    ("report.t1", "report_generation", 1, 15, ["id5", "id13"]),
    ("report.t2", "report_generation", 1, 10, []),
    ("checklist.t1", "checklist_creation", 16, 40, ["id4"]),
    ("checklist.t2", "checklist_creation", 10, 10, []),
]

# (id, part, severity, odc_type, functional, description)
TEST_DEFECTS = [
    ("id1", "GIT", "major", "relationship", True,
     "selecting a tree node desynchronizes the artifact pane regardless of reading support kind"),
    ("id2", "interaction", "major", "checking", True,
     "no guard against loading an artifact while the previous one is still rendering"),
    ("id3", "interaction", "major", "checking", True,
     "tracking step is recorded even when the checklist answer dialog is cancelled"),
    ("id4", "checklist_creation", "major", "algorithm_method", True,
     "question ordering is lost when a checklist is saved and reopened"),
    ("id5", "report_generation", "major", "algorithm_method", True,
     "findings report drops entries whose location field is empty"),
    ("id6", "interaction", "minor", "checking", True,
     "double-click on an already-open artifact opens a duplicate view"),
    ("id7", "interaction", "major", "checking", True,
     "scroll position resets when switching between reading support and artifact"),
    ("id8", "GIT", "minor", "other:usability", False,
     "indicator labels in the goal tree are truncated at default window size"),
    ("id9", "SGIT", "minor", "other:usability", False,
     "collapsed subtree gives no hint that unanswered indicators remain"),
    ("id10", "GC", "minor", "other:usability", False,
     "checklist pane uses a low-contrast font for answered questions"),
    ("id11", "VID", "minor", "other:usability", False,
     "diagram view cannot be zoomed, large models are unreadable"),
    ("id12", "interaction", "minor", "other:usability", False,
     "artifact pane and reading support scroll independently with no link option"),
    ("id13", "report_generation", "minor", "other:usability", False,
     "exported report table has no column headers"),
]

# inspector -> (parts read, loc read incl. blanks/comments, minutes)
READING_LOGS = [
    ("insp1", ["III", "VIII", "VI", "IV"], 2500, 90),
    ("insp2", ["II", "IX", "X", "XII"], 2500, 280),
    ("insp3", ["III", "V", "XI", "IV"], 2500, 270),
    ("insp4", ["II", "VIII", "VII", "I"], 2500, 265),
    ("insp5", ["IX", "V", "X", "VI"], 2500, 275),
    ("insp6", ["I", "VII", "XI", "XII"], 2500, 270),
]

DESCRIPTIONS = {
    "algorithm_method": [
        "loop over child nodes skips the last element",
        "wrong traversal order when rebuilding the indicator tree",
        "string comparison ignores case where it must not",
        "progress computation divides by the unfiltered node count",
        "sort comparator is not transitive for equal keys",
    ],
    "checking": [
        "missing null check before dereferencing the selection",
        "array index not validated against the model size",
        "return value of the parser is not checked",
        "no range check on the column index",
        "file handle used after a failed open",
    ],
    "function_class_object": [
        "listener object is never unregistered",
        "class exposes a mutable internal list",
        "constructor leaves the field uninitialized on the error path",
        "dialog instance is reused across unrelated workflows",
        "helper object duplicates state already held by the model",
    ],
    "assignment_initialization": [
        "counter initialized to one instead of zero",
        "flag assigned before the guarded branch",
        "default path string left empty",
        "wrong constant assigned to the mode field",
        "cache map never cleared between runs",
    ],
    "relationship": [
        "view observes the wrong model instance",
    ],
    "other": [
        "method lacks a comment explaining the traversal contract",
        "unclear comment, does not match the implementation",
        "misleading field name, meaning is the opposite",
        "missing explanation of the tracking mode states",
        "commented-out block left without rationale",
    ],
    "rejected": [
        "reported as defect, works as intended per design notes",
        "misread the guard condition, no defect",
        "duplicate of an earlier finding in the same class",
        "style remark, no correction required",
        "tool usage question, not a code problem",
    ],
}


def loc_from_table(content, density):
    # LOC implied by the published content/density pair, rounded half up.
    return int(content / density + 0.5)


def build_inspection_defects(rng):
    type_pool = []
    for name, count in TYPE_MARGINAL:
        type_pool += [name] * count
    sev_pool = []
    for name, count in SEVERITY_MARGINAL:
        sev_pool += [name] * count
    rng.shuffle(type_pool)
    rng.shuffle(sev_pool)

    defects = []
    seq = 0
    pool_at = 0
    for part, content, rejected in zip(ROMAN, CONTENT, REJECTED):
        for _ in range(content):
            odc = type_pool[pool_at]
            sev = sev_pool[pool_at]
            pool_at += 1
            seq += 1
            desc = rng.choice(DESCRIPTIONS[odc])
            functional = odc != "other"
            if odc == "other":
                odc = "other:documentation"
            defects.append({
                "id": "p%03d" % seq,
                "part_id": part,
                "severity": sev,
                "odc_type": odc,
                "phase": "inspection",
                "functional": functional,
                "accepted": True,
                "description": desc,
            })
        for _ in range(rejected):
            seq += 1
            defects.append({
                "id": "p%03d" % seq,
                "part_id": part,
                "severity": "minor",
                "odc_type": rng.choice(["checking", "algorithm_method", "other:documentation"]),
                "phase": "inspection",
                "functional": True,
                "accepted": False,
                "description": rng.choice(DESCRIPTIONS["rejected"]),
            })
    assert seq == 236
    assert sum(1 for d in defects if d["accepted"]) == 189
    return defects


def build_dataset():
    rng = random.Random(20260819)
    parts = []
    for part, content, density in zip(ROMAN, CONTENT, DENSITY):
        loc = loc_from_table(content, density)
        assert abs(content / loc - density) <= 0.0005, part
        parts.append({
            "id": part,
            "name": "code class %s" % part,
            "kind": "code_class",
            "loc": loc,
            "inspected": True,
        })
    for fid, name, inspected in FUNCTIONALITIES:
        parts.append({"id": fid, "name": name, "kind": "functionality", "inspected": inspected})

    defects = build_inspection_defects(rng)
    for did, part, sev, odc, functional, desc in TEST_DEFECTS:
        defects.append({
            "id": did,
            "part_id": part,
            "severity": sev,
            "odc_type": odc,
            "phase": "system_test",
            "functional": functional,
            "accepted": True,
            "description": desc,
        })

    reading_logs = [
        {"inspector_id": i, "parts_read": p, "loc_read": loc, "effort_minutes": m}
        for i, p, loc, m in READING_LOGS
    ]
    assert sum(l["effort_minutes"] for l in reading_logs) == 1450
    assert sum(l["loc_read"] for l in reading_logs) == 15000

    test_cases = [
        {"id": cid, "part_id": part, "case_count": n, "effort_minutes": eff, "revealed_defects": rev}
        for cid, part, n, eff, rev in TEST_GROUPS
    ]
    assert sum(c["effort_minutes"] for c in test_cases) == 206
    assert sum(c["case_count"] for c in test_cases) == 82

    return {
        "format_version": 1,
        "parts": parts,
        "defects": defects,
        "reading_logs": reading_logs,
        "test_cases": test_cases,
        "traceability": {part: "GIT" for part in ROMAN},
    }


def defects_csv(defects):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "part_id", "severity", "odc_type", "phase", "functional", "accepted", "description"])
    for d in defects:
        w.writerow([
            d["id"], d["part_id"], d["severity"], d["odc_type"], d["phase"],
            "true" if d["functional"] else "false",
            "true" if d["accepted"] else "false",
            d["description"],
        ])
    return buf.getvalue()


def case_study_rules():
    return {
        "format_version": 1,
        "baseline": {"reading_rate_band": [500, 700]},
        "rules": [],
        "strategy": {
            "stages": [
                {"kind": "part_stage", "assumption": {"id": "equal-distribution", "kind": "equal_distribution"}},
                {"kind": "type_stage", "assumption": {"id": "pareto-types-top2", "kind": "pareto_types", "top_k": 2}},
            ]
        },
    }


def omission_plan():
    deprioritized = ["git.t1", "git.t2", "sgit.t1", "sgit.t2", "gc.t1", "gc.t2", "cl.t1", "cl.t2"]
    prioritized = [cid for cid, *_ in TEST_GROUPS if cid not in deprioritized]
    return {
        "format_version": 1,
        "prioritization": {
            "prioritized_parts": ["VID", "checklist_creation", "interaction", "report_generation"],
            "prioritized_types": [],
            "part_provenance": {},
            "type_provenance": {},
        },
        "plan": {
            "prioritized": prioritized,
            "deprioritized": deprioritized,
            "predicted_effort_saved_fraction": 47.0 / 206.0,
            "predicted_cases_omitted_fraction": 20.0 / 82.0,
        },
        "assumptions": [
            {"id": "equal-distribution", "kind": "equal_distribution"},
            {"id": "pareto-types-top2", "kind": "pareto_types", "top_k": 2},
        ],
    }


def scenarios():
    pareto = {
        "format_version": 1,
        "n_parts": 20,
        "loc_distribution": {"min": 500, "max": 500},
        "ground_truth": {"kind": "pareto", "shape": 1.16},
        "total_defects": 1000,
        "inspection_coverage": 1.0,
        "inspection_effectiveness": 0.5,
        "type_assignment": "none",
        "seed": 97,
    }
    uniform = {
        "format_version": 1,
        "n_parts": 20,
        "loc_distribution": {"min": 100, "max": 1000},
        "ground_truth": {"kind": "uniform"},
        "total_defects": 1000,
        "inspection_coverage": 0.5,
        "inspection_effectiveness": 0.1,
        "type_assignment": "none",
        "seed": 131,
    }
    strategies = {
        "format_version": 1,
        "strategies": [
            {"id": "pareto-top20",
             "stages": [{"kind": "part_stage", "assumption": {"id": "pareto-top20", "kind": "pareto_parts", "top_k": 4}}]},
            {"id": "random-20", "kind": "random_parts", "fraction": 0.2},
            {"id": "equal-distribution",
             "stages": [{"kind": "part_stage", "assumption": {"id": "equal-distribution", "kind": "equal_distribution"}}]},
        ],
    }
    return pareto, uniform, strategies


def dump(path, obj):
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump(obj, f, indent=2, sort_keys=True)
        f.write("\n")


def main():
    ds = build_dataset()
    dump(os.path.join(OUT_DIR, "case_study", "dataset.json"), ds)
    with open(os.path.join(OUT_DIR, "case_study", "defects.csv"), "w") as f:
        f.write(defects_csv(ds["defects"]))
    dump(os.path.join(OUT_DIR, "case_study", "rules.json"), case_study_rules())
    dump(os.path.join(OUT_DIR, "case_study", "plan_omit_reading_support.json"), omission_plan())
    pareto, uniform, strategies = scenarios()
    dump(os.path.join(OUT_DIR, "scenarios", "pareto.json"), pareto)
    dump(os.path.join(OUT_DIR, "scenarios", "uniform.json"), uniform)
    dump(os.path.join(OUT_DIR, "scenarios", "strategies.json"), strategies)
    print("fixture written to", OUT_DIR)


if __name__ == "__main__":
    main()
