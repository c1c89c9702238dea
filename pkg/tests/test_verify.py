import random
from math import gcd

import pytest

from matlength.constructions import elem, jordan, jordan_power_pair, nilpotent_pair
from matlength.errors import ResourceLimitError
from matlength.fields import GF, QQ
from matlength.matrix import Matrix, diag, is_derogatory, is_invertible
from matlength.span import evaluate_word, length_profile
from matlength.verify import (
    SUITES,
    SearchConfig,
    check_exact_length_spans,
    check_nilpotent_pair,
    check_power_pair_generation,
    check_power_pair_lengths,
    check_unit_example,
    exact_span_facts,
    exhaustive_m2_gf2,
    find_invertible_witness,
    m2_gf2_census,
    m2_gf2_matrices,
    paz_search,
    random_set,
    run_suite,
    sample_l0_m3,
)

# first run of the exact-length span check, frozen: dim = n - 1 for every co-prime pair
EXACT_SPAN_DIMS = {
    (2, 1): 1, (3, 1): 2, (3, 2): 2, (4, 1): 3, (4, 3): 3, (5, 1): 4, (5, 2): 4,
    (5, 3): 4, (5, 4): 4, (6, 1): 5, (6, 5): 5, (7, 1): 6, (7, 2): 6, (7, 3): 6,
    (7, 4): 6, (7, 5): 6, (7, 6): 6, (8, 1): 7, (8, 3): 7, (8, 5): 7, (8, 7): 7,
}
M2_GF2_GENERATING = 64800


def test_unit_example_reports():
    reps = check_unit_example(QQ)
    assert [r.computed for r in reps] == [[1, 2], [1, 1]]
    assert all(r.passed for r in reps)
    assert all(r.passed for r in check_unit_example(GF(7)))


def test_nilpotent_pair_reports():
    reps = check_nilpotent_pair(8)
    got = {r.params["n"]: r.computed for r in reps}
    assert got[3] == [True, 3, 4]
    assert got[6] == [True, 9, 10]
    assert got[8] == [True, 13, 14]
    assert all(r.passed for r in reps)
    with pytest.raises(ValueError):
        check_nilpotent_pair(5, GF(5))


def test_power_pair_reports():
    dims = {(r.params["n"], r.params["i"]): r.computed for r in check_power_pair_generation(6)}
    assert dims[(4, 2)] == [4, False]
    assert dims[(5, 2)] == [25, True]
    assert dims[(6, 3)] == [4, False]
    lens = {(r.params["n"], r.params["i"]): r.computed for r in check_power_pair_lengths(6)}
    assert lens[(5, 2)] == [8, 8]
    assert lens[(4, 2)] == [2, 2]
    assert lens[(6, 2)] == [4, 4]


def test_exact_span_regression():
    for rep in check_exact_length_spans(8):
        n, i = rep.params["n"], rep.params["i"]
        assert rep.passed
        assert rep.params["span_dim"] == EXACT_SPAN_DIMS[(n, i)]
    facts = exact_span_facts(2, 1)
    assert facts == {"span_dim": 1, "w_dim": 2, "contained": True}
    facts = exact_span_facts(7, 3)
    assert facts["contained"] and facts["span_dim"] < facts["w_dim"] == 7


def _gaussian_binomial(n, k, q):
    num = den = 1
    for j in range(k):
        num *= q ** (n - j) - 1
        den *= q ** (j + 1) - 1
    return num // den


def test_m2_census():
    census = m2_gf2_census()
    assert (census.max_l, census.max_l0) == (2, 2)
    assert census.generating == M2_GF2_GENERATING
    # number of subspaces of GF(2)^4
    assert census.distinct_spans == sum(_gaussian_binomial(4, k, 2) for k in range(5)) == 67
    assert sum(census.length_pairs.values()) == census.generating


def test_m2_generating_count_direct():
    # no span grouping: every subset profiled on its own
    mats = m2_gf2_matrices()
    count = 0
    for mask in range(1, 1 << 16):
        gens = [mats[j] for j in range(16) if mask >> j & 1]
        count += length_profile(gens, True).generates
    assert count == M2_GF2_GENERATING


def test_m2_lengths_depend_only_on_span():
    mats = m2_gf2_matrices()
    rng = random.Random(4)
    for _ in range(300):
        gens = [m for m in mats if rng.random() < 0.3] or [mats[1]]
        a = rng.randrange(len(gens))
        b = rng.randrange(len(gens))
        extra = gens + [gens[a] + gens[b]]  # same span
        for flag in (True, False):
            assert length_profile(gens, flag).dims == length_profile(extra, flag).dims


def test_exhaustive_report():
    rep = exhaustive_m2_gf2()
    assert rep.passed and rep.computed == [2, 2]
    assert rep.params["generating_subsets"] == M2_GF2_GENERATING


def test_sample_l0_m3_small():
    rep = sample_l0_m3(SearchConfig(3, GF(5), 3, 300, 1))
    assert rep.passed, rep.findings
    assert rep.computed["max_l0"] <= 4 and rep.computed["attained_4"]
    rep = sample_l0_m3(SearchConfig(3, QQ, 2, 200, 2, bound=3))
    assert rep.passed
    with pytest.raises(ValueError):
        sample_l0_m3(SearchConfig(4, QQ))


def test_paz_search_seeded_n4():
    seeds = [list(nilpotent_pair(4))]
    rep = paz_search(SearchConfig(4, QQ, 2, 50, 3), seeds)
    assert rep.computed["max_l"] >= 5
    assert rep.passed


def test_paz_search_gf3_n3():
    rep = paz_search(SearchConfig(3, GF(3), 2, 2000, 42))
    assert rep.computed["max_l"] <= 4
    assert not rep.findings


def test_paz_search_records_argmax():
    seeds = [list(jordan_power_pair(4, 1))]
    rep = paz_search(SearchConfig(4, QQ, 2, 5, 0), seeds)
    assert rep.computed["max_l"] == 6
    assert rep.computed["argmax_source"] == "seed-0"
    assert rep.computed["argmax_input"]["n"] == 4


def test_paz_search_cap():
    with pytest.raises(ResourceLimitError):
        paz_search(SearchConfig(7, QQ, 2, 1, 0))


def test_search_determinism():
    cfg = SearchConfig(3, GF(5), 2, 200, 17)
    a = paz_search(cfg).to_dict(timing=False)
    b = paz_search(cfg).to_dict(timing=False)
    assert a == b
    assert random_set(cfg, 5) == random_set(cfg, 5)
    assert random_set(cfg, 5) != random_set(cfg, 6)


def test_search_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(3, trials=0)
    with pytest.raises(ValueError):
        SearchConfig(3, density=0)


def test_find_invertible_witness():
    w = find_invertible_witness([diag([1, 2]), elem(2, 1, 2)], 1)
    assert w is not None and w.matrix == diag([1, 2]) and w.expression == ((1, (0,)),)
    j3, b3 = nilpotent_pair(3)
    assert find_invertible_witness([j3, b3], 1, trials=200, seed=1) is None
    j2 = jordan(2)
    w = find_invertible_witness([j2, j2.T], 2, trials=50, seed=0)
    assert w is not None and is_invertible(w.matrix)
    # the expression rebuilds the witness exactly
    total = Matrix.zero(2)
    for c, word in w.expression:
        total = total + evaluate_word([j2, j2.T], word).scale(c)
    assert total == w.matrix


def test_find_derogatory_invertible_witness():
    # J_2 J_2^T + J_2^T J_2 = I is derogatory and invertible in layer 2
    j2 = jordan(2)
    w = find_invertible_witness([j2, j2.T], 2, trials=400, seed=3, derogatory=True)
    assert w is not None and is_derogatory(w.matrix) and is_invertible(w.matrix)
    with pytest.raises(ValueError):
        find_invertible_witness([j2], 3)


def test_identity_recovery_with_witness():
    # an invertible element of the span of words of length 1 puts I among
    # words of length <= n, so l0 <= max(l, n)
    from matlength.matrix import identity_length_bound

    rng = random.Random(8)
    for _ in range(30):
        gens = random_set(SearchConfig(3, QQ, 2, 1, rng.randrange(10**6)), 0)
        w = find_invertible_witness(gens, 1, trials=5, seed=0)
        prof = length_profile(gens, False)
        if w is None or not prof.generates:
            continue
        cert = identity_length_bound(w.matrix, 1)
        assert cert.bound <= 3
        with_id = length_profile(gens, True)
        assert prof.length <= max(with_id.length, cert.bound)


def test_run_suite_names():
    assert set(SUITES) == {"all", "thm33", "thm42", "thm44", "lemma43", "m2", "m3", "example"}
    reps = run_suite("example")
    assert len(reps) == 4 and all(r.passed for r in reps)
    with pytest.raises(ValueError):
        run_suite("nope")


def test_failed_report_carries_replay():
    from matlength.verify import _single

    rep = _single("x", "claim", {}, [elem(2, 1, 2)], 1, 2)
    assert not rep.passed and rep.replay["matrices"] == [[["0", "1"], ["0", "0"]]]


def _inflated(real):
    def fake(gens, include_identity=True, n=None):
        from dataclasses import replace

        prof = real(gens, include_identity, n)
        return replace(prof, length=prof.length + 10) if prof.generates else prof

    return fake


def test_paz_search_surfaces_violations(monkeypatch):
    import matlength.verify as v

    monkeypatch.setattr(v, "length_profile", _inflated(v.length_profile))
    rep = paz_search(SearchConfig(2, GF(3), 2, 20, 0))
    assert not rep.passed
    assert rep.findings and rep.findings[0]["kind"] == "exceeds-2n-2"
    assert rep.findings[0]["input"]["field"] == "GF(3)"
