"""Suite runs, report rendering and witness re-verification."""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field

from . import __version__
from . import witnesses as W
from .corpus import CorpusConfig, generate_corpus
from .hunts import QUESTIONS, hunt_counterexample
from .properties import PROPERTIES, PropertyCache, RingRecord, spot_check
from .theorems import THEOREM_IDS, Context, run_theorem

log = logging.getLogger(__name__)

REPORT_PROPERTIES = tuple(sorted(PROPERTIES))


@dataclass
class SuiteConfig:
    seed: int = 0
    corpus: CorpusConfig = field(default_factory=CorpusConfig)
    theorems: tuple = tuple(THEOREM_IDS)
    hunts: tuple = QUESTIONS
    hunt_budget: int = 20
    use_cache: bool = True
    cache_dir: str | None = None
    timings: bool = False
    spot_samples: int = 3


def run_suite(corpus=None, config: SuiteConfig | None = None) -> dict:
    """Run every theorem (and the hunts) over a corpus of ring expressions."""
    config = config or SuiteConfig()
    if corpus is None:
        corpus = generate_corpus(config.corpus)
    cache = PropertyCache(config.cache_dir) if config.use_cache else None
    records = [RingRecord(e, cache) for e in corpus]
    if cache is not None:
        bad = spot_check(records, seed=config.seed, samples=config.spot_samples)
        for spec, name, cached, cold in bad:
            log.warning("cache entry for %s disagreed on %s (%r vs %r)", spec, name, cached, cold)
    ctx = Context(config.seed, cache)
    entries = []
    for rec in records:
        entries.append({"spec": rec.spec, "order": rec.order,
                        "properties": {n: rec.get(n) for n in REPORT_PROPERTIES}})
        rec.save()
    theorems = [run_theorem(t, records, ctx, config.timings) for t in config.theorems]
    ctx.save()
    hunts = [hunt_counterexample(q, config.hunt_budget, config.seed, cache) for q in config.hunts]
    return {
        "toolVersion": __version__,
        "seed": config.seed,
        "corpus": entries,
        "theorems": theorems,
        "hunts": hunts,
    }


def exit_status(report: dict) -> int:
    """1 when some theorem with a nonempty hypothesis set has a counterexample."""
    return int(any(t["counterexamples"] and not t["vacuous"] for t in report["theorems"]))


def iter_witnesses(report: dict):
    """(location, witness record) for every witness in a report."""
    for t in report.get("theorems", []):
        for group in ("counterexamples", "certificates"):
            for i, block in enumerate(t.get(group, [])):
                for j, w in enumerate(block["witnesses"]):
                    yield f"{t['id']}/{group}[{i}]/{j}", w
    for h in report.get("hunts", []):
        for i, block in enumerate(h.get("findings", [])):
            for j, w in enumerate(block["witnesses"]):
                yield f"hunt {h['question']}/findings[{i}]/{j}", w


def verify_report(report: dict) -> tuple:
    """Re-verify every serialized witness; returns (count, failures)."""
    pool = W.RingPool()
    failures, n = [], 0
    for where, w in iter_witnesses(report):
        n += 1
        try:
            ok, msg = W.verify_record(w, pool)
        except Exception as exc:  # a bad spec in a hand-edited report
            ok, msg = False, f"{type(exc).__name__}: {exc}"
        if not ok:
            failures.append((where, w.get("ring"), w.get("kind"), msg))
    return n, failures


# --- rendering -----------------------------------------------------------------

MD_PROPERTIES = ("regular", "unitRegular", "starRegular", "rickartStar", "baerStar", "abelian", "clean",
                 "star-clean")


def _cell(v) -> str:
    if v is None:
        return "-"
    if v is True:
        return "yes"
    if v is False:
        return "no"
    return str(v)


def _witness_lines(ws) -> list:
    out = []
    for w in ws:
        shown = w["rendered"] or w["data"]
        body = ", ".join(f"{k}={v}" for k, v in shown.items())
        extra = f" [{w['data']['mode']}]" if "mode" in w["data"] else ""
        out.append(f"  - `{w['kind']}`{extra} in `{w['ring']}`: {body}")
    return out


def render_markdown(report: dict) -> str:
    lines = [f"# Suite report (tool {report['toolVersion']}, seed {report['seed']})", ""]
    if report.get("corpus"):
        lines += ["## Corpus", "", "| ring | order | " + " | ".join(MD_PROPERTIES) + " |",
                  "|---|---|" + "---|" * len(MD_PROPERTIES)]
        for c in report["corpus"]:
            props = c["properties"]
            lines.append(f"| `{c['spec']}` | {c['order']} | "
                         + " | ".join(_cell(props.get(p)) for p in MD_PROPERTIES) + " |")
        lines.append("")
    if report.get("theorems"):
        lines += ["## Theorems", "", "| id | hypothesis | pass | counterexamples | vacuous | skipped |",
                  "|---|---|---|---|---|---|"]
        for t in report["theorems"]:
            lines.append(f"| {t['id']} | {t['hypothesisCount']} | {t['passCount']} | {len(t['counterexamples'])} "
                         f"| {_cell(t['vacuous'])} | {len(t.get('skipped', []))} |")
        lines.append("")
        for t in report["theorems"]:
            lines.append(f"### {t['id']}")
            lines.append("")
            lines.append(t["anchor"])
            lines.append("")
            for ce in t["counterexamples"]:
                lines.append(f"- counterexample `{ce['ring']}` {ce.get('note', '')}".rstrip())
                lines += _witness_lines(ce["witnesses"])
            extra = t.get("extra", {})
            if "axiomSubsets" in extra:
                lines += ["", "| axioms | hypothesis | pass |", "|---|---|---|"]
                for row in extra["axiomSubsets"]:
                    lines.append(f"| {', '.join(row['axioms']) or '(none)'} | {row['hypothesisCount']} "
                                 f"| {row['passCount']} |")
            for k, v in extra.items():
                if k != "axiomSubsets":
                    lines.append(f"- {k}: `{json.dumps(v, sort_keys=True)}`")
            lines.append("")
    if report.get("hunts"):
        lines += ["## Hunts", "", "| question | pattern | examined | in class | skipped | findings |",
                  "|---|---|---|---|---|---|"]
        for h in report["hunts"]:
            lines.append(f"| {h['question']} | {h['pattern']} | {h['examined']} | {h['inClass']} "
                         f"| {len(h['skipped'])} | {len(h['findings'])} |")
        lines.append("")
        for h in report["hunts"]:
            for f in h["findings"]:
                lines.append(f"- {h['question']}: `{f['ring']}` (order {f['order']})")
                lines += _witness_lines(f["witnesses"])
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"


def emit_report(report: dict, fmt: str = "json", path=None) -> str:
    """Serialize a report; JSON keeps the construction order of fields."""
    if fmt == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif fmt == "markdown":
        text = render_markdown(report)
    else:
        raise ValueError(f"unknown format {fmt!r}")
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
