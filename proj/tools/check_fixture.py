#!/usr/bin/env python3
"""Independent validation of fixtures/runs.jsonl.

Recomputes every aggregate the acceptance suite pins, straight from the
JSONL text with exact integer arithmetic, so the fixture and the C++
analytics cannot drift together unnoticed. Exits non-zero on the first
mismatch.
"""

import json
import sys
from datetime import datetime, timezone
from fractions import Fraction

SLOT = 225  # seconds; every duration must be a whole number of slots
WINDOW = (1698796800, 1723680000)
CLUSTER_GPUS = 1016
MAX_RUN_DAYS = 42

# Half-open bucket upper bounds, GPU-hours.
BUCKETS = [1, 24, 168, 730, 8760, 26280, 43800, 87600]

MODULES = {"tokenizer", "llm_backbone", "main_model", "data_generator"}
PHASES = {"exp", "pre", "post", "ft", "train"}
RESEARCH = {"debug", "failed", "tuning", "ablation", "final"}
VALID = {
    "tokenizer": {"train"},
    "llm_backbone": {"train"},
    "main_model": {"exp", "pre", "post", "ft"},
    "data_generator": {"exp", "post", "ft"},
}

EXPECT_CELLS = {  # GPU-hours per non-failed (module, phase) cell
    ("tokenizer", "train"): 181997,
    ("main_model", "exp"): 525262,
    ("main_model", "pre"): 1118440,
    ("main_model", "post"): 292724,
    ("main_model", "ft"): 27996,
    ("data_generator", "exp"): 292936,
    ("data_generator", "post"): 24885,
    ("data_generator", "ft"): 402,
    ("llm_backbone", "train"): 439999,
}
EXPECT_FAILED = 351621
EXPECT_RESEARCH = {"debug": 78906, "failed": 351621, "tuning": 2431941,
                   "ablation": 273608, "final": 120186}
EXPECT_RUN_PHASE = {"optimization": 2535973, "validation": 78309,
                    "evaluation": 160871, "sample_generation": 41110}
EXPECT_FINAL_TOTAL = 120186
EXPECT_RATIOS = {  # percent to one decimal, Table 1 order
    ("tokenizer", "train"): 1.0,
    ("main_model", "pre"): 4.0,
    ("main_model", "post"): 0.9,
    ("main_model", "ft"): 2.0,
    ("data_generator", "post"): 10.6,
    ("data_generator", "ft"): 8.2,
    ("llm_backbone", "train"): 15.5,
}
EXPECT_BUCKET_COUNTS = [543, 948, 1028, 551, 396, 49, 8, 11]
EXPECT_RUNS = 3540


def fail(msg):
    print(f"check_fixture: FAIL: {msg}")
    sys.exit(1)


def parse_ts(s):
    return int(datetime.strptime(s, "%Y-%m-%dT%H:%M:%SZ")
               .replace(tzinfo=timezone.utc).timestamp())


def main():
    path = sys.argv[1] if len(sys.argv) > 1 else "fixtures/runs.jsonl"
    runs = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, 1):
            if not line.strip():
                continue
            r = json.loads(line)
            r["_line"] = lineno
            runs.append(r)

    if len(runs) != EXPECT_RUNS:
        fail(f"{len(runs)} runs, expected {EXPECT_RUNS}")

    ids = [r["run_id"] for r in runs]
    if len(set(ids)) != len(ids):
        fail("duplicate run ids")

    events = []
    cells = {}
    failed = Fraction(0)
    research = {k: Fraction(0) for k in RESEARCH}
    run_phase = {k: Fraction(0) for k in EXPECT_RUN_PHASE}
    bucket_counts = [0] * len(BUCKETS)
    bucket_compute = [Fraction(0)] * len(BUCKETS)
    nonllm_runs = 0
    nonllm_compute = Fraction(0)
    prev_start = None

    for r in runs:
        where = f"{r['run_id']} (line {r['_line']})"
        if r["module"] not in MODULES or r["training_phase"] not in PHASES \
                or r["research_phase"] not in RESEARCH:
            fail(f"{where}: unknown category")
        if r["training_phase"] not in VALID[r["module"]]:
            fail(f"{where}: invalid module/phase combination")
        start, end = parse_ts(r["start"]), parse_ts(r["end"])
        if not (WINDOW[0] <= start < end <= WINDOW[1]):
            fail(f"{where}: outside the cluster window")
        if start % SLOT or (end - start) % SLOT:
            fail(f"{where}: not aligned to {SLOT}-second slots")
        if (end - start) > MAX_RUN_DAYS * 86400:
            fail(f"{where}: wall time exceeds {MAX_RUN_DAYS} days")
        gpus = r["gpus"]
        if not isinstance(gpus, int) or not 1 <= gpus <= CLUSTER_GPUS:
            fail(f"{where}: bad gpu count")
        if prev_start is not None and start < prev_start:
            fail(f"{where}: ids are not chronological")
        prev_start = start
        events.append((start, gpus))
        events.append((end, -gpus))

        compute = Fraction((end - start) * gpus, 3600)  # GPU-hours, exact

        fr = r.get("phase_fractions", {})
        if fr:
            fracs = {k: Fraction(v).limit_denominator(1 << 20) for k, v in fr.items()}
            if any(f < 0 or f > 1 for f in fracs.values()) or sum(fracs.values()) != 1:
                fail(f"{where}: phase fractions do not form a unit split")
        else:
            fracs = {"optimization": Fraction(1)}

        research[r["research_phase"]] += compute
        if r["research_phase"] == "failed":
            failed += compute
        else:
            key = (r["module"], r["training_phase"])
            cells[key] = cells.get(key, Fraction(0)) + compute

        if r["module"] != "llm_backbone":
            nonllm_runs += 1
            nonllm_compute += compute
            for k, f in fracs.items():
                run_phase[k] += compute * f
            for i, hi in enumerate(BUCKETS):
                if compute < hi:
                    bucket_counts[i] += 1
                    bucket_compute[i] += compute
                    break
            else:
                fail(f"{where}: exceeds the top intensity bucket")

    # Cluster capacity: sweep start/end events, ends release before starts.
    load = peak = 0
    for _, delta in sorted(events):
        load += delta
        peak = max(peak, load)
    if peak > CLUSTER_GPUS:
        fail(f"peak GPU load {peak} exceeds the {CLUSTER_GPUS}-GPU cluster")

    for key, want in EXPECT_CELLS.items():
        got = cells.get(key, Fraction(0))
        if got != want:
            fail(f"cell {key}: {float(got)} GPU-h, expected {want}")
    if failed != EXPECT_FAILED:
        fail(f"failed pool: {float(failed)}, expected {EXPECT_FAILED}")
    for k, want in EXPECT_RESEARCH.items():
        if research[k] != want:
            fail(f"research {k}: {float(research[k])}, expected {want}")
    for k, want in EXPECT_RUN_PHASE.items():
        if run_phase[k] != want:
            fail(f"run phase {k}: {float(run_phase[k])}, expected {want}")

    final_total = research["final"]
    if final_total != EXPECT_FINAL_TOTAL:
        fail(f"final total {float(final_total)}, expected {EXPECT_FINAL_TOTAL}")

    finals = {}
    for r in runs:
        if r["research_phase"] == "final":
            key = (r["module"], r["training_phase"])
            start, end = parse_ts(r["start"]), parse_ts(r["end"])
            finals[key] = finals.get(key, Fraction(0)) \
                + Fraction((end - start) * r["gpus"], 3600)
    for key, want in EXPECT_RATIOS.items():
        pct = round(float(100 * finals[key] / cells[key]), 1)
        if pct != want:
            fail(f"ratio {key}: {pct}%, expected {want}%")

    if bucket_counts != EXPECT_BUCKET_COUNTS:
        fail(f"bucket counts {bucket_counts}, expected {EXPECT_BUCKET_COUNTS}")

    heavy_runs = sum(bucket_counts[4:])
    heavy_compute = sum(bucket_compute[4:], Fraction(0))
    run_pct = round(100 * heavy_runs / nonllm_runs)
    compute_pct = round(float(100 * heavy_compute / nonllm_compute))
    if run_pct != 13 or compute_pct != 89:
        fail(f"heavy-run shares {run_pct}%/{compute_pct}%, expected 13%/89%")

    grand = sum(cells.values(), failed)
    print(f"check_fixture: OK: {len(runs)} runs, {float(grand)} GPU-hours, "
          f"peak load {peak} GPUs")


if __name__ == "__main__":
    main()
