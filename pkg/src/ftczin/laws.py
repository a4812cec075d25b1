"""Law-checking engine.

A law is a list of clauses ``lhs == rhs`` over named variables drawn from
carriers.  The engine evaluates the clauses on a deterministic stream of
input tuples: first the exhaustive products of the carriers' small bases,
then ``samples`` random tuples where tuple ``i`` is drawn from an RNG seeded
by ``(seed, i)``.  The first failing tuple (in stream order) becomes the
witness, which makes reports independent of the number of workers.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .carriers.base import Carrier

HOLDS = "holds-on-samples"
VIOLATED = "violated"

DEFAULT_SAMPLES = 500
DEFAULT_EXHAUSTIVE_LIMIT = 1000


@dataclass(frozen=True)
class Variable:
    name: str
    carrier: Carrier


@dataclass(frozen=True)
class Clause:
    """``lhs(*args) == rhs(*args)`` with ``args`` the variables named in ``uses``."""

    name: str
    uses: tuple
    lhs: Callable
    rhs: Callable
    carrier: Carrier

    def evaluate(self, env: dict):
        args = [env[n] for n in self.uses]
        return self.lhs(*args), self.rhs(*args)


@dataclass
class Witness:
    clause: str
    inputs: dict
    lhs: str
    rhs: str
    values: dict = field(default_factory=dict, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {"clause": self.clause, "inputs": dict(self.inputs), "lhs": self.lhs, "rhs": self.rhs}


@dataclass
class LawReport:
    law: str
    status: str
    samples: int
    seed: int
    witness: Witness | None = None
    details: dict = field(default_factory=dict)
    clauses: Sequence[Clause] = field(default=(), repr=False, compare=False)

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    def reevaluate(self) -> bool:
        """Recompute the witness clause; True iff the inequality is reproduced."""
        if self.witness is None:
            return False
        clause = next(c for c in self.clauses if c.name == self.witness.clause)
        lhs, rhs = clause.evaluate(self.witness.values)
        return lhs != rhs

    def to_dict(self) -> dict:
        out = {"law": self.law, "status": self.status, "samples": self.samples, "seed": self.seed}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, ensure_ascii=False)

    def __str__(self):
        head = f"{self.law}: {self.status} ({self.samples} tuples, seed {self.seed})"
        if self.witness is None:
            return head
        w = self.witness
        args = ", ".join(f"{k} = {v}" for k, v in w.inputs.items())
        return f"{head}\n  witness [{w.clause}] {args}\n    lhs = {w.lhs}\n    rhs = {w.rhs}"


def sample_rng(seed: int, index: int, position: int = 0) -> random.Random:
    return random.Random(f"{seed}:{index}:{position}")


# (carrier, seed, index, position) -> element; carriers compare structurally,
# so equal carriers built separately share their samples
_SAMPLES: dict = {}


def draw(carrier, seed: int, index: int, position: int = 0):
    """The sample at (seed, index, position), memoised.  Elements are immutable."""
    key = (carrier, seed, index, position)
    x = _SAMPLES.get(key)
    if x is None:
        x = _SAMPLES[key] = carrier.sample(sample_rng(seed, index, position))
    return x


def _exhaustive(variables: Sequence[Variable], limit: int | None) -> list[tuple]:
    bases = [v.carrier.basis() for v in variables]
    total = 1
    for b in bases:
        total *= len(b)
    if limit is None or total <= limit:
        return list(itertools.product(*bases))
    # keep the tuples built from the earliest (smallest) basis elements
    index_tuples = sorted(
        itertools.product(*(range(len(b)) for b in bases)), key=lambda t: (sum(t), t)
    )[:limit]
    return [tuple(b[i] for b, i in zip(bases, t)) for t in index_tuples]


def tuple_stream(
    variables: Sequence[Variable],
    seed: int,
    samples: int,
    exhaustive: bool | Iterable[tuple] = True,
    exhaustive_limit: int | None = DEFAULT_EXHAUSTIVE_LIMIT,
) -> list[tuple]:
    if exhaustive is True:
        head = _exhaustive(variables, exhaustive_limit)
    elif exhaustive is False or exhaustive is None:
        head = []
    else:
        head = list(exhaustive)
    tail = [tuple(draw(v.carrier, seed, i, j) for j, v in enumerate(variables)) for i in range(samples)]
    return head + tail


def _first_failure(names, clauses, values):
    env = dict(zip(names, values))
    for clause in clauses:
        lhs, rhs = clause.evaluate(env)
        if lhs != rhs:
            return clause, env, lhs, rhs
    return None


def check_law(
    law: str,
    variables: Sequence[Variable],
    clauses: Sequence[Clause],
    *,
    seed: int = 0,
    samples: int = DEFAULT_SAMPLES,
    exhaustive: bool | Iterable[tuple] = True,
    exhaustive_limit: int | None = DEFAULT_EXHAUSTIVE_LIMIT,
    workers: int | None = None,
    stream: list[tuple] | None = None,
    details: dict | None = None,
) -> LawReport:
    names = [v.name for v in variables]
    if stream is None:
        stream = tuple_stream(variables, seed, samples, exhaustive, exhaustive_limit)
    failure, index = None, len(stream)
    if workers and workers > 1:
        chunk = 32 * workers
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for start in range(0, len(stream), chunk):
                block = stream[start : start + chunk]
                results = list(pool.map(lambda vals: _first_failure(names, clauses, vals), block))
                hit = next((i for i, r in enumerate(results) if r is not None), None)
                if hit is not None:
                    failure, index = results[hit], start + hit
                    break
    else:
        for i, values in enumerate(stream):
            failure = _first_failure(names, clauses, values)
            if failure is not None:
                index = i
                break
    if failure is None:
        return LawReport(law, HOLDS, len(stream), seed, None, details or {}, clauses)
    clause, env, lhs, rhs = failure
    carriers = {v.name: v.carrier for v in variables}
    witness = Witness(
        clause=clause.name,
        inputs={n: carriers[n].format(env[n]) for n in clause.uses},
        lhs=clause.carrier.format(lhs),
        rhs=clause.carrier.format(rhs),
        values=env,
    )
    return LawReport(law, VIOLATED, index + 1, seed, witness, details or {}, clauses)
