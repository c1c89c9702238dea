"""Verification checks and seeded searches over generating sets.

Every check returns a :class:`CheckReport`.  Checks whose expected value is
a claimed result carry provenance ``"claim"`` and must pass; values
computed once by this harness and frozen carry ``"derived"``.

Randomness comes only from ``random.Random`` seeded with explicit integers;
trial ``t`` of a search with seed ``s`` uses its own generator seeded with
``(s << 32) | t``, so any single trial can be replayed in isolation.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field as dc_field
from itertools import product
from math import gcd
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .constructions import elem, jordan_power_pair, nilpotent_pair, w_space_basis
from .documents import dump_document
from .errors import ResourceLimitError
from .fields import GF, QQ, Field
from .matrix import Matrix, is_derogatory, is_invertible
from .span import Word, evaluate_word, exact_length_span, length_profile

PAZ_N_CAP = 6
SMALL_SWEEP_MAX = 8
CLAIM = "claim"
DERIVED = "derived"
CONJECTURE = "conjecture"


@dataclass
class CheckReport:
    check_id: str
    claim: str
    params: Dict[str, Any]
    expected: Any
    computed: Any
    passed: bool
    provenance: str = CLAIM
    runtime: float = 0.0
    replay: Optional[dict] = None
    findings: List[dict] = dc_field(default_factory=list)

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "check_id": self.check_id,
            "claim": self.claim,
            "params": self.params,
            "provenance": self.provenance,
            "expected": self.expected,
            "computed": self.computed,
            "passed": self.passed,
        }
        if self.findings:
            d["findings"] = self.findings
        if self.replay is not None:
            d["replay"] = self.replay
        if timing:
            d["runtime_s"] = round(self.runtime, 6)
        return d


@dataclass(frozen=True)
class SearchConfig:
    n: int
    field: Field = QQ
    set_size: int = 2
    trials: int = 1000
    seed: int = 0
    bound: int = 3
    density: float = 1.0

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trial count must be >= 1")
        if self.n < 1 or self.set_size < 1:
            raise ValueError("n and set size must be >= 1")
        if not 0.0 < self.density <= 1.0:
            raise ValueError("density must lie in (0, 1]")

    def params(self) -> dict:
        return {
            "n": self.n,
            "field": str(self.field),
            "set_size": self.set_size,
            "trials": self.trials,
            "seed": self.seed,
            "bound": self.bound,
            "density": self.density,
        }


def trial_rng(seed: int, trial: int) -> random.Random:
    return random.Random(((seed & 0xFFFFFFFFFFFFFFFF) << 32) | trial)


def random_entry(rng: random.Random, field: Field, bound: int):
    if field.p is None:
        return rng.randint(-bound, bound)
    return rng.randrange(field.p)


def random_matrix(rng: random.Random, n: int, field: Field, bound: int = 3, density: float = 1.0) -> Matrix:
    entries = []
    for _ in range(n * n):
        if density < 1.0 and rng.random() >= density:
            entries.append(0)
        else:
            entries.append(random_entry(rng, field, bound))
    return Matrix(n, field, entries)


def random_set(config: SearchConfig, trial: int) -> List[Matrix]:
    rng = trial_rng(config.seed, trial)
    return [random_matrix(rng, config.n, config.field, config.bound, config.density) for _ in range(config.set_size)]


def _single(check_id, claim, params, gens, expected, computed, provenance=CLAIM, include_identity=True):
    passed = expected == computed
    t0 = time.perf_counter()
    rep = CheckReport(check_id, claim, params, expected, computed, passed, provenance)
    if not passed:
        rep.replay = dump_document(gens, include_identity)
    rep.runtime = time.perf_counter() - t0
    return rep


def _timed_report(check_id, claim, params, gens, fn, expected, provenance=CLAIM):
    t0 = time.perf_counter()
    computed = fn()
    rep = _single(check_id, claim, params, gens, expected, computed, provenance)
    rep.runtime = time.perf_counter() - t0
    return rep


def check_unit_example(field: Field = QQ) -> List[CheckReport]:
    """S = {E12, E21, E22} has (l, l0) = (1, 2); adding E11 gives (1, 1)."""
    s = [elem(2, 1, 2, field), elem(2, 2, 1, field), elem(2, 2, 2, field)]
    s2 = s + [elem(2, 1, 1, field)]
    prov = CLAIM if field.is_rational else DERIVED
    reports = []
    for cid, gens, expected in (("unit-example", s, [1, 2]), ("unit-example-plus-e11", s2, [1, 1])):
        reports.append(_timed_report(
            cid,
            "(l, l0) for a set of matrix units in M_2",
            {"n": 2, "field": str(field)},
            gens,
            lambda gens=gens: [length_profile(gens, True).length, length_profile(gens, False).length],
            expected,
            prov,
        ))
    return reports


def check_nilpotent_pair(n_max: int, field: Field = QQ) -> List[CheckReport]:
    """{J_n, B_n} generates M_n with l = 2n-3 and l0 = 2n-2, n = 3..n_max."""
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    if not field.is_rational:
        raise ValueError("this family is only claimed in characteristic 0")
    reports = []
    for n in range(3, n_max + 1):
        gens = list(nilpotent_pair(n, field))

        def run(gens=gens):
            with_id, without = length_profile(gens, True), length_profile(gens, False)
            return [with_id.generates, with_id.length, without.length]

        reports.append(_timed_report(
            f"nilpotent-pair-n{n}",
            "{J_n, B_n} generates with l = 2n-3, l0 = 2n-2",
            {"n": n, "field": str(field)},
            gens,
            run,
            [True, 2 * n - 3, 2 * n - 2],
        ))
    return reports


def _power_pairs(n_max):
    for n in range(2, n_max + 1):
        for i in range(1, n):
            yield n, i


def check_power_pair_generation(n_max: int, field: Field = QQ) -> List[CheckReport]:
    """{J_n^i, (J_n^T)^(n-i)} spans an algebra of dimension (n/d)^2, d = gcd(n, i)."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    reports = []
    for n, i in _power_pairs(n_max):
        gens = list(jordan_power_pair(n, i, field))
        d = gcd(n, i)
        reports.append(_timed_report(
            f"power-pair-dim-n{n}-i{i}",
            "subalgebra dimension (n/gcd(n,i))^2; generates iff gcd(i, n-i) = 1",
            {"n": n, "i": i, "field": str(field)},
            gens,
            lambda gens=gens: [length_profile(gens, True).final_dim, length_profile(gens, True).generates],
            [(n // d) ** 2, d == 1],
        ))
    return reports


def check_power_pair_lengths(n_max: int, field: Field = QQ) -> List[CheckReport]:
    """l = l0 = 2n/d - 2 for {J_n^i, (J_n^T)^(n-i)}."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    reports = []
    for n, i in _power_pairs(n_max):
        gens = list(jordan_power_pair(n, i, field))
        d = gcd(n, i)
        reports.append(_timed_report(
            f"power-pair-length-n{n}-i{i}",
            "l = l0 = 2n/gcd(n,i) - 2",
            {"n": n, "i": i, "field": str(field)},
            gens,
            lambda gens=gens: [length_profile(gens, True).length, length_profile(gens, False).length],
            [2 * (n // d) - 2] * 2,
        ))
    return reports


def exact_span_facts(n: int, i: int, field: Field = QQ) -> dict:
    gens = list(jordan_power_pair(n, i, field))
    span = exact_length_span(gens, n - 2)
    w = w_space_basis(n, i, field)
    return {"span_dim": len(span), "w_dim": len(w), "contained": span.is_subspace_of(w)}


def check_exact_length_spans(n_max: int, field: Field = QQ) -> List[CheckReport]:
    """Words of length exactly n-2 span a proper subspace of the two-diagonal space W(n, i)."""
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    reports = []
    for n, i in _power_pairs(n_max):
        if gcd(n, i) != 1:
            continue
        t0 = time.perf_counter()
        facts = exact_span_facts(n, i, field)
        computed = [facts["contained"], facts["span_dim"] < facts["w_dim"], facts["w_dim"]]
        rep = _single(
            f"exact-span-n{n}-i{i}",
            "span of words of length n-2 is contained in and smaller than W(n,i); dim W(n,i) = n",
            {"n": n, "i": i, "field": str(field), "span_dim": facts["span_dim"]},
            list(jordan_power_pair(n, i, field)),
            [True, True, n],
            computed,
        )
        rep.runtime = time.perf_counter() - t0
        reports.append(rep)
    return reports


@dataclass
class M2Census:
    subsets: int
    generating: int
    distinct_spans: int
    max_l: int
    max_l0: int
    argmax_l: Tuple[int, ...]
    argmax_l0: Tuple[int, ...]
    length_pairs: Dict[Tuple[int, int], int]


def m2_gf2_matrices() -> List[Matrix]:
    f = GF(2)
    return [Matrix(2, f, [(m >> k) & 1 for k in range(4)]) for m in range(16)]


def m2_gf2_census() -> M2Census:
    """Lengths of every subset of M_2(GF(2)), grouped by the span of the subset.

    Both filtrations depend on S only through span(S), since words in S of
    length k span the same space as products of k elements of span(S).  So
    each of the 2^16 subsets is mapped to its span, and profiles are
    computed once per distinct span on the first subset that realizes it.
    """
    from .echelon import SpanBasis

    mats = m2_gf2_matrices()
    f = GF(2)
    keys: List[tuple] = [()] * (1 << 16)
    reps: Dict[tuple, int] = {}
    counts: Counter = Counter()
    for mask in range(1, 1 << 16):
        low = (mask & -mask).bit_length() - 1
        b = SpanBasis(f, 4)
        b.extend(keys[mask & (mask - 1)])
        b.insert(mats[low].vec())
        key = b.key()
        keys[mask] = key
        reps.setdefault(key, mask)
        counts[key] += 1
    generating = 0
    max_l = max_l0 = -1
    arg_l = arg_l0 = ()
    pairs: Counter = Counter()
    for key, mask in reps.items():
        gens = [mats[j] for j in range(16) if mask >> j & 1]
        with_id = length_profile(gens, True)
        if not with_id.generates:
            continue
        l0 = length_profile(gens, False).length
        generating += counts[key]
        pairs[(with_id.length, l0)] += counts[key]
        subset = tuple(j for j in range(16) if mask >> j & 1)
        if with_id.length > max_l:
            max_l, arg_l = with_id.length, subset
        if l0 > max_l0:
            max_l0, arg_l0 = l0, subset
    return M2Census(
        subsets=1 << 16,
        generating=generating,
        distinct_spans=len(reps),
        max_l=max_l,
        max_l0=max_l0,
        argmax_l=arg_l,
        argmax_l0=arg_l0,
        length_pairs=dict(pairs),
    )


def exhaustive_m2_gf2() -> CheckReport:
    """Maximum l0 and l over all generating subsets of M_2(GF(2)) are both 2."""
    t0 = time.perf_counter()
    census = m2_gf2_census()
    mats = m2_gf2_matrices()
    rep = CheckReport(
        "m2-gf2-exhaustive",
        "max l0 and max l over all generating subsets of M_2(GF(2)) equal 2",
        {"n": 2, "field": "GF(2)", "subsets": census.subsets},
        [2, 2],
        [census.max_l0, census.max_l],
        [census.max_l0, census.max_l] == [2, 2],
    )
    rep.params["generating_subsets"] = census.generating
    rep.params["distinct_spans"] = census.distinct_spans
    rep.params["length_pairs"] = {f"{a},{b}": c for (a, b), c in sorted(census.length_pairs.items())}
    if not rep.passed:
        rep.replay = dump_document([mats[j] for j in census.argmax_l0], False)
    rep.runtime = time.perf_counter() - t0
    return rep


def _finding(kind, gens, **extra):
    d = {"kind": kind, "input": dump_document(gens)}
    d.update(extra)
    return d


def sample_l0_m3(config: SearchConfig, include_seed: bool = True) -> CheckReport:
    """Random generating sets of M_3 all have l0 <= 4; {J_3, B_3} attains 4.

    Draws until ``config.trials`` generating sets are seen (giving up after
    50 times as many draws).  Non-generating draws are counted and skipped.
    """
    if config.n != 3:
        raise ValueError("sample_l0_m3 needs n = 3")
    t0 = time.perf_counter()
    findings = []
    seen = Counter()
    attained = False
    draws = generating = 0
    if include_seed:
        gens = list(nilpotent_pair(3, config.field))
        l0 = length_profile(gens, False).length
        attained = l0 == 4
        seen[l0] += 1
    while generating < config.trials and draws < 50 * config.trials:
        gens = random_set(config, draws)
        draws += 1
        with_id = length_profile(gens, True)
        if not with_id.generates:
            continue
        generating += 1
        without = length_profile(gens, False)
        l, l0 = with_id.length, without.length
        seen[l0] += 1
        if l0 == 4:
            attained = True
        if l0 > 4:
            findings.append(_finding("l0-exceeds-4", gens, trial=draws - 1, l=l, l0=l0))
        if not without.generates or not l <= l0 <= l + 1:
            findings.append(_finding("invariant-violation", gens, trial=draws - 1, l=l, l0=l0))
    computed = {
        "max_l0": max(seen) if seen else None,
        "attained_4": attained,
        "generating_samples": generating,
        "draws": draws,
        "l0_histogram": {str(k): v for k, v in sorted(seen.items())},
    }
    passed = not findings and generating >= config.trials and (attained or not include_seed)
    rep = CheckReport(
        f"m3-l0-sample-{config.field}",
        "random generating sets of M_3 have l0 <= 4; the bound 4 is attained",
        config.params(),
        {"max_l0": 4, "attained_4": True},
        computed,
        passed,
        findings=findings,
    )
    rep.runtime = time.perf_counter() - t0
    return rep


def paz_search(config: SearchConfig, seed_sets: Sequence[Sequence[Matrix]] = ()) -> CheckReport:
    """Largest l(S) observed over random generating sets, against 2n - 2.

    Seed sets are evaluated first, then ``config.trials`` random draws.
    Lengths above 2n - 2 are reported as findings; the conjectured bound is
    never assumed.
    """
    if config.n > PAZ_N_CAP:
        raise ResourceLimitError(f"paz_search is capped at n <= {PAZ_N_CAP}, got {config.n}")
    t0 = time.perf_counter()
    bound = 2 * config.n - 2
    best, best_set = -1, None
    hist = Counter()
    findings = []
    generating = 0
    candidates = [(f"seed-{k}", list(s)) for k, s in enumerate(seed_sets)]
    for label, gens in candidates + [(f"trial-{t}", None) for t in range(config.trials)]:
        if gens is None:
            gens = random_set(config, int(label[6:]))
        prof = length_profile(gens, True)
        if not prof.generates:
            continue
        generating += 1
        hist[prof.length] += 1
        if prof.length > best:
            best, best_set = prof.length, (label, gens)
        if prof.length > bound:
            findings.append(_finding("exceeds-2n-2", gens, source=label, l=prof.length))
    computed = {
        "max_l": best if best >= 0 else None,
        "argmax_source": best_set[0] if best_set else None,
        "argmax_input": dump_document(best_set[1]) if best_set else None,
        "generating_samples": generating,
        "l_histogram": {str(k): v for k, v in sorted(hist.items())},
    }
    rep = CheckReport(
        f"paz-search-n{config.n}-{config.field}",
        "observed l(S) <= 2n - 2 over sampled generating sets (conjecture under test)",
        config.params(),
        {"max_l_at_most": bound},
        computed,
        not findings,
        provenance=CONJECTURE,
        findings=findings,
    )
    rep.runtime = time.perf_counter() - t0
    return rep


@dataclass(frozen=True)
class InvertibleWitness:
    matrix: Matrix
    expression: Tuple[Tuple[Any, Word], ...]  # (coefficient, word) pairs
    source: str


def find_invertible_witness(
    gens: Sequence[Matrix],
    layer: int = 1,
    trials: int = 64,
    seed: int = 0,
    derogatory: bool = False,
    bound: int = 1000,
) -> Optional[InvertibleWitness]:
    """Search the span of words of length 1..layer for an invertible element.

    Tries the generators, then (for layer 2) every product of two, then
    ``trials`` random combinations of a word basis of that span.  With
    ``derogatory`` set, all {-1, 0, 1} combinations of a basis of at most
    eight words are swept first.  A None result means nothing was found, not
    that nothing exists.
    """
    if layer not in (1, 2):
        raise ValueError("layer must be 1 or 2")
    gens = list(gens)
    field = gens[0].field

    def ok(m):
        return is_invertible(m) and (not derogatory or is_derogatory(m))

    words: List[Word] = [(j,) for j in range(len(gens))]
    if layer == 2:
        words += [(a, b) for a in range(len(gens)) for b in range(len(gens))]
    for w in words:
        m = evaluate_word(gens, w)
        if ok(m):
            return InvertibleWitness(m, ((1, w),), "word")
    prof = length_profile(gens, False)
    basis_words = [w for w, lay in zip(prof.witnesses, prof.witness_layers) if lay <= layer]
    values = [evaluate_word(gens, w) for w in basis_words]

    def combine(coeffs):
        m = Matrix.zero(gens[0].n, field)
        for c, v in zip(coeffs, values):
            if c:
                m = m + v.scale(c)
        return m

    def witness(coeffs, source):
        expr = tuple((field.coerce(c), w) for c, w in zip(coeffs, basis_words) if field.coerce(c))
        return InvertibleWitness(combine(coeffs), expr, source)

    # derogatory elements are a thin subset; random combinations miss them
    if derogatory and len(values) <= SMALL_SWEEP_MAX:
        for coeffs in product((0, 1, -1), repeat=len(values)):
            if any(coeffs) and ok(combine(coeffs)):
                return witness(coeffs, "small-combination")
    rng = random.Random(seed)
    for _ in range(trials):
        coeffs = [random_entry(rng, field, bound) for _ in values]
        if ok(combine(coeffs)):
            return witness(coeffs, "random-combination")
    return None


SUITES = ("all", "thm33", "thm42", "thm44", "lemma43", "m2", "m3", "example")


def run_suite(name: str, n_max: int = 8, m3_trials: int = 1000, seed: int = 0) -> List[CheckReport]:
    """Run one named suite (or ``all``) and return reports in a fixed order."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    selected = SUITES[1:] if name == "all" else (name,)
    reports: List[CheckReport] = []
    for suite in ("example", "thm33", "thm42", "thm44", "lemma43", "m2", "m3"):
        if suite not in selected:
            continue
        if suite == "example":
            reports += check_unit_example(QQ) + check_unit_example(GF(7))
        elif suite == "thm33":
            reports += check_nilpotent_pair(max(n_max, 3))
        elif suite == "thm42":
            reports += check_power_pair_generation(n_max)
        elif suite == "thm44":
            reports += check_power_pair_lengths(n_max)
        elif suite == "lemma43":
            reports += check_exact_length_spans(n_max)
        elif suite == "m2":
            reports.append(exhaustive_m2_gf2())
        elif suite == "m3":
            reports.append(sample_l0_m3(SearchConfig(3, GF(5), 3, m3_trials, seed)))
            reports.append(sample_l0_m3(SearchConfig(3, QQ, 2, m3_trials, seed, bound=3)))
    return reports
