import numpy as np
import pytest
import scipy.stats

from exorder import (
    Exponential,
    PHRModel,
    RateVector,
    SampleStream,
    Uniform,
    Weibull,
    ks_critical_value,
    ks_distance,
    phr_pair_copulas,
    phr_sample,
    phr_si_check,
    phr_transform,
)

RV = RateVector((1.0, 2.0, 3.0))


class TestPhrSample:
    def test_exponential_baseline_reproduces_rates(self):
        # Fbar(x)^lam = exp(-lam x): column k must be Exp(lam_k).
        model = PHRModel(Exponential(1.0), RV)
        mat = phr_sample(model, SampleStream.from_label(41, "phr-exp"), 50_000)
        assert mat.shape == (50_000, 3)
        for k, lam in enumerate(RV.rates):
            d = ks_distance(np.sort(mat[:, k]), Exponential(lam).cdf)
            assert d < ks_critical_value(50_000)

    def test_weibull_baseline_marginals(self):
        # Fbar(x)^lam for Weibull(shape 2) is itself Weibull with scale
        # shrunk by lam^(1/2); check one column against the closed form.
        model = PHRModel(Weibull(2.0), RV)
        mat = phr_sample(model, SampleStream.from_label(41, "phr-wb"), 50_000)
        target = Weibull(2.0, scale=3.0 ** (-1 / 2))
        d = ks_distance(np.sort(mat[:, 2]), target.cdf)
        assert d < ks_critical_value(50_000)

    def test_positive_size_required(self):
        with pytest.raises(ValueError):
            phr_sample(PHRModel(Exponential(1.0), RV), SampleStream(1, 0), 0)


class TestPhrTransform:
    def test_exponential_baseline_is_identity(self):
        model = PHRModel(Exponential(1.0), RV)
        x = np.linspace(0.01, 5.0, 50)
        assert np.allclose(phr_transform(model, x), x, atol=1e-12)

    def test_weibull_baseline_is_square(self):
        model = PHRModel(Weibull(2.0), RV)
        x = np.linspace(0.01, 3.0, 50)
        assert np.allclose(phr_transform(model, x), x**2, atol=1e-10)

    def test_scalar_round_trip(self):
        model = PHRModel(Weibull(2.0), RV)
        out = phr_transform(model, 1.5)
        assert isinstance(out, float) and out == pytest.approx(2.25)

    def test_strictly_increasing(self):
        model = PHRModel(Weibull(1.7), RV)
        x = np.linspace(0.05, 4.0, 200)
        r = phr_transform(model, x)
        assert np.all(np.diff(r) > 0)

    def test_transformed_columns_are_exponential(self):
        # After R the k-th column must be Exp(lam_k) regardless of baseline.
        model = PHRModel(Weibull(2.0), RV)
        mat = phr_sample(model, SampleStream.from_label(43, "phr-tr"), 50_000)
        r = phr_transform(model, mat)
        for k, lam in enumerate(RV.rates):
            d = ks_distance(np.sort(r[:, k]), Exponential(lam).cdf)
            assert d < ks_critical_value(50_000)

    def test_vanishing_survival_rejected(self):
        model = PHRModel(Uniform(0.0, 1.0), RV)
        with pytest.raises(ValueError, match="vanishes"):
            phr_transform(model, np.array([0.5, 1.0]))


class TestPhrPairCopulas:
    def test_rank_invariance_is_exact(self):
        model = PHRModel(Weibull(2.0), RV)
        raw, transformed = phr_pair_copulas(model, 2, master_seed=47, m=20_000)
        assert np.array_equal(raw.values, transformed.values)
        assert raw.sup_distance(transformed) == 0.0

    def test_index_validation(self):
        model = PHRModel(Weibull(2.0), RV)
        with pytest.raises(ValueError):
            phr_pair_copulas(model, 1, master_seed=47)
        with pytest.raises(ValueError):
            phr_pair_copulas(model, 4, master_seed=47)


class TestPhrSiCheck:
    def test_weibull_model_passes(self):
        model = PHRModel(Weibull(2.0), RV)
        v = phr_si_check(model, 2, master_seed=53, m=20_000)
        assert v.holds
        assert v.order_name == "more_si_phr"

    def test_violation_reduces_to_exponential_case(self):
        # The copula sup distance is exactly zero, so the reported violation
        # equals the exact exponential SI comparison.
        from exorder import check_more_si, conditional_family, min_law

        model = PHRModel(Weibull(2.0), RV)
        v = phr_si_check(model, 3, master_seed=53, m=20_000)
        hom = RV.homogenize()
        direct = check_more_si(
            conditional_family(RV, 3), min_law(RV), conditional_family(hom, 3), min_law(hom)
        )
        assert v.max_violation == direct.max_violation

    def test_index_validation(self):
        model = PHRModel(Weibull(2.0), RV)
        with pytest.raises(ValueError):
            phr_si_check(model, 1, master_seed=53)
