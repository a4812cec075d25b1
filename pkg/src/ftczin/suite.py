"""The full check suite: every corpus law, mutation, round trip, naturality
square and correspondence check, collected into one deterministic report.

Each entry records the expected status next to the observed one; the suite
passes when every entry matches, so planted violations count as successes
only when they are actually detected.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import corpus
from .calculus import check_augmented, check_ftc2_equivalence, law_suite
from .equivalence import (
    _fg,
    _gf,
    check_action_vs_product,
    check_augmented_correspondence,
    check_naturality,
    check_roundtrip_ftc,
    check_roundtrip_zin,
    eta,
    eta_inv,
    functor_G,
    identity_ftc,
    identity_zin,
    shuffle_iso,
    verify_morphism,
)
from .laws import DEFAULT_SAMPLES, HOLDS, VIOLATED, LawReport
from .zinbiel import zinbiel_suite

SCHEMA_VERSION = 1

# functor images are checked with a reduced budget; see derived_budget
DERIVED_SAMPLE_DIVISOR = 5
DERIVED_EXHAUSTIVE_LIMIT = 200


@dataclass
class Entry:
    instance: str
    report: LawReport
    expected: str

    @property
    def ok(self) -> bool:
        return self.report.status == self.expected

    def to_dict(self) -> dict:
        out = {
            "instance": self.instance,
            "law": self.report.law,
            "status": self.report.status,
            "expected": self.expected,
            "ok": self.ok,
            "samples": self.report.samples,
        }
        if self.report.witness is not None:
            out["witness"] = self.report.witness.to_dict()
        if self.report.details:
            out["details"] = self.report.details
        return out


def derived_budget(samples: int) -> dict:
    """Keyword budget for checks on functor images (G∘F, F∘G, naturality)."""
    return {"samples": max(1, samples // DERIVED_SAMPLE_DIVISOR), "exhaustive_limit": DERIVED_EXHAUSTIVE_LIMIT}


def _expect(violated: bool) -> str:
    return VIOLATED if violated else HOLDS


def _ftc_pairs():
    """Corpus pairs that are FTC-pairs (the separating example is not)."""
    for name, entry in corpus.FTC_INSTANCES.items():
        if not entry.expected_violations:
            yield name


def collect(seed: int = 0, samples: int = DEFAULT_SAMPLES, workers: int | None = None) -> list[Entry]:
    kw = {"seed": seed, "samples": samples, "workers": workers}
    dkw = {**kw, **derived_budget(samples)}
    entries: list[Entry] = []

    def add(instance, report, expected=HOLDS):
        entries.append(Entry(instance, report, expected))

    # FTC corpus and mutations
    pairs = {}
    for table in (corpus.FTC_INSTANCES, corpus.MUTATIONS):
        for name, spec in table.items():
            pair = corpus.build_ftc(name)
            pairs[name] = pair
            reports = law_suite(pair, **kw)
            for report in reports:
                add(name, report, _expect(report.law in spec.expected_violations))
            add(name, check_ftc2_equivalence(pair, seed=seed, samples=samples, workers=workers, reports=reports))
            if spec.augmented is not None:
                add(name, check_augmented(pair, **kw), _expect(not spec.augmented))

    # Zinbiel corpus and mutations
    zins = {}
    for table in (corpus.ZIN_INSTANCES, corpus.ZIN_MUTATIONS):
        for name, spec in table.items():
            z = corpus.build_zin(name)
            zins[name] = z
            for report in zinbiel_suite(z, **kw):
                add(name, report, _expect(report.law in spec.expected_violations))

    # the equivalence: round trips, functor images, correspondence
    for name in _ftc_pairs():
        pair = pairs[name]
        add(name, check_roundtrip_ftc(pair, **kw))
        for report in law_suite(_gf(pair), **dkw):
            add(f"G(F({name}))", report)
        add(name, check_augmented_correspondence(pair, **kw))
    for name in corpus.ZIN_INSTANCES:
        z = zins[name]
        add(name, check_roundtrip_zin(z, **kw))
        for report in zinbiel_suite(_fg(z), **dkw):
            add(f"F(G({name}))", report)
    for name in ("shuffle-zinbiel", "poly-zinbiel", "rb-zinbiel"):
        add(name, check_augmented_correspondence(zins[name], **kw))

    # naturality on the morphisms we can build
    poly, shuffle = pairs["poly-ftc"], pairs["shuffle-ftc"]
    for name in _ftc_pairs():
        add(f"id[{name}]", check_naturality(identity_ftc(pairs[name]), **dkw))
    for name in corpus.ZIN_INSTANCES:
        add(f"id[{name}]", check_naturality(identity_zin(zins[name]), **dkw))
    morphisms = {
        "dilation[poly-ftc]": corpus.poly_dilation(poly),
        "permutation[shuffle-ftc]": corpus.letter_permutation(shuffle),
        "permutation[shuffle-zinbiel]": corpus.zin_letter_permutation(zins["shuffle-zinbiel"]),
        "eta[poly-ftc]": eta(poly),
        "eta-inverse[poly-ftc]": eta_inv(poly),
    }
    morphisms.update(zip(("shuffle-iso", "shuffle-iso-inverse"), shuffle_iso()))
    for name, m in morphisms.items():
        add(name, verify_morphism(m, **dkw))
        add(name, check_naturality(m, **dkw))
    # planted non-morphisms: the sign flip breaks g∘D = D∘f, negation breaks ◁
    add("sign-flip[shuffle-ftc]", verify_morphism(corpus.sign_mutation(shuffle), **dkw), VIOLATED)
    add("sign-flip[shuffle-ftc]", check_naturality(corpus.sign_mutation(shuffle), **dkw), VIOLATED)
    add("negation[shuffle-zinbiel]", verify_morphism(corpus.zin_negation(zins["shuffle-zinbiel"]), **dkw), VIOLATED)

    # the action of A ⋊ Z on Z is not the product with (0, y)
    add("G(shuffle-zinbiel)", check_action_vs_product(functor_G(zins["shuffle-zinbiel"], verify=False), **kw), VIOLATED)
    return entries


def summarize(entries: list[Entry]) -> dict:
    failed = [f"{e.instance}/{e.report.law}" for e in entries if not e.ok]
    return {
        "entries": len(entries),
        "ok": len(entries) - len(failed),
        "failed": failed,
        "violationsDetected": sum(e.report.status == VIOLATED for e in entries),
    }


def run_suite(seed: int = 0, samples: int = DEFAULT_SAMPLES, workers: int | None = None) -> dict:
    entries = collect(seed, samples, workers)
    return {
        "schemaVersion": SCHEMA_VERSION,
        "seed": seed,
        "samples": samples,
        "entries": [e.to_dict() for e in entries],
        "summary": summarize(entries),
    }


def suite_passed(report: dict) -> bool:
    return not report["summary"]["failed"]


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=1)


def to_text(report: dict) -> str:
    lines = []
    for e in report["entries"]:
        mark = "ok  " if e["ok"] else "FAIL"
        lines.append(f"{mark} {e['instance']:<34} {e['law']:<26} {e['status']}")
        if "witness" in e:
            w = e["witness"]
            args = ", ".join(f"{k} = {v}" for k, v in w["inputs"].items())
            lines.append(f"       witness [{w['clause']}] {args}")
            lines.append(f"         lhs = {w['lhs']}")
            lines.append(f"         rhs = {w['rhs']}")
    s = report["summary"]
    lines.append(f"{s['ok']}/{s['entries']} entries as expected, {s['violationsDetected']} violations detected")
    return "\n".join(lines)
