import json

import pytest

from cgpetersen import verify
from cgpetersen.catalog import EXCHANGES, Member, build, classify, weight_rules, weight_table
from cgpetersen.exchange import delta_to_y, phi_preimage
from cgpetersen.fixtures import doubled_k6, hopf_link, moment_curve_k6
from cgpetersen.graph import WeightMap, enumerate_cycles
from cgpetersen.spatial import random_embedding
from cgpetersen.verify import (DERIVATION_ROUTES, NotInCatalogError, PreconditionError,
                               compute_report, corollary_check, derive_and_check_weights,
                               is_complexly_algebraically_linked, member_of,
                               verify_integral_identity, verify_mod2)


def _first_seed(member, predicate, limit=200):
    for seed in range(limit):
        r = compute_report(random_embedding(build(member), seed))
        if predicate(r):
            return seed, r
    pytest.fail(f"no seed below {limit} satisfies the predicate")


def test_moment_curve_k6():
    r = verify_integral_identity(moment_curve_k6())
    assert r.identity_holds and r.mod2_holds
    assert r.lk_squares == 1
    assert sorted(abs(v) for v in r.pair_lk.values()) == [0] * 9 + [1]
    assert r.weighted_a2 == 0
    assert not is_complexly_algebraically_linked(r)
    with pytest.raises(PreconditionError):
        corollary_check(r)


def test_doubled_k6_corollary():
    r = compute_report(doubled_k6())
    assert any(abs(v) == 2 for v in r.pair_lk.values())
    assert r.identity_holds
    assert is_complexly_algebraically_linked(r)
    witnesses = corollary_check(r)
    assert witnesses
    assert r.weighted_a2 >= 1
    for c, w, a in witnesses:
        assert len(c) in (5, 6) and w != 0 and a != 0


def test_p10_cal_witness_lengths():
    _, r = _first_seed(Member.P10, lambda r: r.cal)
    witnesses = corollary_check(r)
    assert {len(c) for c, _, _ in witnesses} <= {5, 6, 9}


def test_cal_by_two_unit_pairs():
    _, r = _first_seed(Member.K6, lambda r: all(abs(v) <= 1 for v in r.pair_lk.values())
                       and sum(1 for v in r.pair_lk.values() if v) >= 2)
    assert r.lk_squares >= 3
    assert is_complexly_algebraically_linked(r)
    assert corollary_check(r)


def test_single_hopf_pair_not_cal():
    _, r = _first_seed(Member.P8, lambda r: r.lk_squares == 1)
    assert not r.cal
    assert r.weighted_a2 == 0


@pytest.mark.parametrize("member", list(Member), ids=lambda m: m.value)
def test_identity_properties_on_random_embeddings(member):
    for seed in range(8):
        r = compute_report(random_embedding(build(member), 500 + seed))
        assert r.identity_holds
        assert r.mod2_holds
        assert verify_mod2(r) == (1, True)
        assert r.mod2_sum == r.lk_squares % 2
        assert r.rhs % 2 == 0 == r.lhs % 2
        assert r.cal == (r.lk_squares >= 3)
        if r.weighted_a2 >= 1:
            assert r.witnesses


def test_weight_only_report_agrees():
    f = random_embedding(build(Member.P9), 7)
    full = compute_report(f)
    short = compute_report(f, all_cycles=False)
    assert short.weighted_a2 == full.weighted_a2
    assert len(short.cycle_a2) < len(full.cycle_a2)


def test_not_in_catalog():
    with pytest.raises(NotInCatalogError):
        member_of(hopf_link())


def test_report_json_serializable():
    d = compute_report(doubled_k6()).to_dict()
    assert json.loads(json.dumps(d)) == d
    assert d["lhs"] == d["rhs"]


def test_all_derivations_pass():
    results = derive_and_check_weights()
    assert len(results) == len(DERIVATION_ROUTES)
    for res in results:
        assert res.passed, res.route.describe()
        assert res.uncovered_rules == [], res.route.describe()


def test_source_rules_exercised():
    """Every rule of the K6 and P7 tables feeds some preimage of a pulled-back cycle."""
    for member, step in ((Member.K6, 1), (Member.P7, 6)):
        e = EXCHANGES[step]
        used = {classify(member, p)[0]
                for c in enumerate_cycles(delta_to_y(build(member), e))
                for p in phi_preimage(c, e)}
        assert {name for name, _, _ in weight_rules(member)} <= used


def test_mismatch_is_reported(monkeypatch):
    real = weight_table(Member.Q7)
    cycle = real.support()[0]
    values = {c: v for c, v in real.items()}
    values[cycle] += 5
    broken = WeightMap(real.graph, values)
    monkeypatch.setattr(verify, "weight_table",
                        lambda m: broken if Member(m) is Member.Q7 else weight_table(m))
    (res,) = derive_and_check_weights([DERIVATION_ROUTES[0]])
    assert not res.passed
    assert res.mismatches == [(cycle, real[cycle], real[cycle] + 5)]
