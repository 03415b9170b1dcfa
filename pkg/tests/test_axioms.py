import pytest

from mhpref import (
    Contract,
    CostFunction,
    Lottery,
    PreferenceOracle,
    SimplexPoint,
)
from mhpref.axioms import (
    Axiom,
    ChoiceDataset,
    ChoiceRecord,
    SamplerConfig,
    check_all_axioms,
    check_axiom,
    dataset_consistency,
    reverify_witness,
)


@pytest.fixture
def malevolent(space2, u_lin):
    return PreferenceOracle.malevolent(space2, CostFunction.quadratic1d(1.0, 0.5), u_lin)


@pytest.fixture
def income(space2, u_lin):
    return PreferenceOracle.income_effects(space2, CostFunction.quadratic1d(1.0, 0.5), u_lin, 5.0)


class TestSamplerConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SamplerConfig(seed=1, n_samples=0)
        with pytest.raises(ValueError):
            SamplerConfig(seed=1, prize_range=(2.0, 1.0))
        with pytest.raises(ValueError):
            SamplerConfig(seed=1, mixture_grid=(0.5, 1.5))


class TestMoralHazardPasses:
    @pytest.mark.parametrize("axiom", list(Axiom))
    def test_quadratic_linear_fixture(self, mh_oracle, axiom):
        v = check_axiom(mh_oracle, axiom, SamplerConfig(seed=31, n_samples=2000))
        assert v.passed, (axiom, v.witness)

    def test_grid_cost_cara_fixture(self, space2, u_cara):
        c = CostFunction.grid([
            (SimplexPoint((1.0, 0.0)), 0.3),
            (SimplexPoint((0.5, 0.5)), 0.0),
            (SimplexPoint((0.0, 1.0)), 0.5),
        ])
        o = PreferenceOracle.moral_hazard(space2, c, u_cara)
        res = check_all_axioms(o, SamplerConfig(seed=32, n_samples=1500))
        assert all(v.passed for v in res.values())


class TestCounterexamples:
    def test_malevolent_fails_quasiconvexity(self, malevolent):
        v = check_axiom(malevolent, Axiom.QUASICONVEXITY, SamplerConfig(seed=33, n_samples=50_000))
        assert not v.passed
        assert v.witness.margin >= 1e-6
        ok, margin = reverify_witness(malevolent, v.witness)
        assert ok
        assert margin == pytest.approx(v.witness.margin, abs=1e-9)

    def test_income_fails_mmr(self, income):
        v = check_axiom(income, Axiom.MMR_INDEPENDENCE, SamplerConfig(seed=34, n_samples=50_000))
        assert not v.passed
        assert v.witness.margin >= 1e-6
        ok, margin = reverify_witness(income, v.witness)
        assert ok
        assert margin == pytest.approx(v.witness.margin, abs=1e-9)

    def test_malevolent_passes_vnm(self, malevolent):
        # constants are ranked by expected utility under every family
        v = check_axiom(malevolent, Axiom.VNM_INDEPENDENCE, SamplerConfig(seed=35, n_samples=2000))
        assert v.passed

    def test_witness_survives_serialisation(self, malevolent):
        from mhpref import serialize as ser

        v = check_axiom(malevolent, Axiom.QUASICONVEXITY, SamplerConfig(seed=36, n_samples=20_000))
        wire = ser.encode_witness(v.witness)
        back = ser.decode_witness(wire, malevolent.space)
        ok, margin = reverify_witness(malevolent, back)
        assert ok
        assert margin == pytest.approx(v.witness.margin, abs=1e-9)


class TestDeterminism:
    def test_same_seed_same_verdict(self, malevolent):
        cfg = SamplerConfig(seed=37, n_samples=30_000)
        v1 = check_axiom(malevolent, Axiom.QUASICONVEXITY, cfg)
        v2 = check_axiom(malevolent, Axiom.QUASICONVEXITY, cfg)
        assert v1 == v2

    def test_jobs_do_not_change_verdict(self, malevolent):
        cfg = SamplerConfig(seed=38, n_samples=30_000)
        v1 = check_axiom(malevolent, Axiom.QUASICONVEXITY, cfg, jobs=1)
        v4 = check_axiom(malevolent, Axiom.QUASICONVEXITY, cfg, jobs=4)
        assert v1 == v4

    def test_different_seeds_may_find_different_witnesses(self, malevolent):
        a = check_axiom(malevolent, Axiom.QUASICONVEXITY, SamplerConfig(seed=1, n_samples=30_000))
        b = check_axiom(malevolent, Axiom.QUASICONVEXITY, SamplerConfig(seed=2, n_samples=30_000))
        assert not a.passed and not b.passed


class TestDatasetConsistency:
    def test_three_cycle_detected(self, space2):
        a = Contract.constant(space2, 0.1)
        b = Contract.constant(space2, Lottery(((0.0, 0.5), (0.4, 0.5))))
        c = Contract.constant(space2, Lottery(((0.05, 0.5), (0.2, 0.5))))
        ds = ChoiceDataset((
            ChoiceRecord(a, b, "strict"),
            ChoiceRecord(b, c, "strict"),
            ChoiceRecord(c, a, "strict"),
        ))
        rep = dataset_consistency(ds)
        assert not rep.consistent
        assert rep.cycles

    def test_monotone_pair_consistent(self, space2):
        ds = ChoiceDataset((
            ChoiceRecord(Contract.constant(space2, 1.0), Contract.constant(space2, 0.0), "strict"),
        ))
        assert dataset_consistency(ds).consistent

    def test_empty_dataset_consistent(self):
        assert dataset_consistency(ChoiceDataset(())).consistent

    def test_monotonicity_violation_flagged(self, space2):
        ds = ChoiceDataset((
            ChoiceRecord(Contract.constant(space2, 0.0), Contract.constant(space2, 1.0), "strict"),
        ))
        rep = dataset_consistency(ds)
        assert not rep.consistent
        assert rep.monotonicity_violations

    def test_indifference_between_distinct_prizes_flagged(self, space2):
        ds = ChoiceDataset((
            ChoiceRecord(Contract.constant(space2, 1.0), Contract.constant(space2, 0.0), "indifferent"),
        ))
        rep = dataset_consistency(ds)
        assert not rep.consistent

    def test_dominance_contradiction(self, space2):
        lo = Lottery.degenerate(0.0)
        hi = Lottery.degenerate(1.0)
        w = Contract(space2, (hi, hi))
        wp = Contract(space2, (lo, lo))
        ds = ChoiceDataset((
            ChoiceRecord(Contract.constant(space2, hi), Contract.constant(space2, lo), "strict"),
            ChoiceRecord(wp, w, "strict"),  # contradicts statewise dominance
        ))
        rep = dataset_consistency(ds)
        assert not rep.consistent
        assert rep.dominance_violations

    def test_mixed_spaces_rejected(self, space2, space3):
        with pytest.raises(ValueError):
            ChoiceDataset((
                ChoiceRecord(Contract.constant(space2, 0.0), Contract.constant(space3, 0.0), "strict"),
            ))
