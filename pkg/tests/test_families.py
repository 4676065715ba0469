import numpy as np
import pytest

from ctpareto import (
    FAMILIES,
    MODIFIED_SET,
    ORIGINAL_SET,
    FamilyId,
    FamilyParams,
    from_delta,
    get_family,
    region_contains,
    region_sample,
    to_delta,
    validity_check,
)

MODIFIED_REGIONS = ("mg", "ma", "mr18a", "mr18b", "mr19")
TWO_PARAM = ("g", "mg", "r18a", "mr18a", "r18b", "mr18b", "r23")


def test_every_id_is_registered():
    assert set(FAMILIES) == set(FamilyId)
    dims = {f.value: get_family(f).dim for f in FamilyId}
    assert dims["pareto"] == 0
    assert {k for k, v in dims.items() if v == 1} == {"a", "ma", "r19", "mr19", "tp"}


def test_ids_are_lowercase_strings():
    assert [f.value for f in FamilyId] == [
        "g", "mg", "a", "ma", "r18a", "mr18a", "r18b", "mr18b", "r19", "mr19", "r23", "tp", "pareto"
    ]
    assert get_family("MR18a").id is FamilyId.MR18A


def test_unknown_family():
    with pytest.raises(ValueError, match="unknown family"):
        get_family("weibull")


def test_comparison_sets():
    assert [f.value for f in ORIGINAL_SET] == ["g", "a", "r18a", "r18b", "r19", "r23", "tp", "pareto"]
    assert [f.value for f in MODIFIED_SET] == ["mg", "ma", "mr18a", "mr18b", "mr19", "r23", "tp", "pareto"]


def test_family_params_length():
    p = FamilyParams((0.5, -1.0))
    assert len(p) == 2 and list(p) == [0.5, -1.0] and p[1] == -1.0


# ---- to_delta -----------------------------------------------------------------


@pytest.mark.parametrize(
    "family, params, expected",
    [
        ("r19", 0.0, (1.0, 0.0)),
        ("a", 1.0, (2.0, -2.0)),
        ("ma", 3.0, (4.0, -6.0)),
        ("g", (0.3, 0.5), (0.3, 0.2)),
        ("r18a", (0.2, -0.4), (1.2, -0.6)),
        ("r18b", (0.2, 0.5), (1.7, -1.2)),
        ("r23", (0.5, 2.0), (0.5, 1.5)),
        ("tp", -0.5, (0.5, 0.5)),
        ("pareto", (), (1.0, 0.0)),
    ],
)
def test_to_delta_examples(family, params, expected):
    assert to_delta(family, params).as_tuple() == pytest.approx(expected, abs=1e-15)


def test_ma_endpoint_is_perfect_square():
    cert = validity_check(to_delta("ma", 3.0))
    assert cert.is_valid and cert.min_value == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize("family, params", [("a", (0.1, 0.2)), ("g", 0.5), ("pareto", (1.0,))])
def test_to_delta_dimension_mismatch(family, params):
    with pytest.raises(ValueError):
        to_delta(family, params)


@pytest.mark.parametrize(
    "family, identity",
    [("a", 0.0), ("r19", 0.0), ("tp", 0.0), ("r18a", (0.0, 0.0)), ("r18b", (0.0, 0.0)),
     ("r23", (0.0, 0.0)), ("r23", (0.0, 1.7)), ("g", (1.0, 1.0)), ("pareto", ())],
)
def test_identity_points_give_pareto(family, identity):
    assert to_delta(family, identity).as_tuple() == (1.0, 0.0)


def test_documented_identity_is_in_region():
    for f in FamilyId:
        spec = get_family(f)
        assert region_contains(spec, spec.identity)
        assert to_delta(spec, spec.identity).as_tuple() == (1.0, 0.0)


# ---- from_delta -----------------------------------------------------------------


def test_from_delta_examples():
    assert tuple(from_delta("mg", (1.0, 0.0))) == (1.0, 1.0)
    assert tuple(from_delta("a", (2.0, -2.0))) == (1.0,)
    assert from_delta("a", (2.0, -1.0)) is None
    assert from_delta("r19", (0.5, 1.0)) is None
    assert from_delta("tp", (1.5, 0.1)) is None
    assert from_delta("pareto", (1.0, 1e-3)) is None
    assert tuple(from_delta("pareto", (1.0, 0.0))) == ()


def test_r23_inverse_at_zero_lambda():
    p = from_delta("r23", (1.0, 0.0))
    assert tuple(p) == (0.0, 0.0) and p.unique is False
    # lambda = 0 yet delta1 + delta2 != 1: off the image
    assert from_delta("r23", (1.5, -1.0)) is None


@pytest.mark.parametrize("family", TWO_PARAM)
def test_round_trip_two_parameter(family):
    theta = region_sample(family, 2000, seed=5)
    if family == "r23":
        theta = theta[np.abs(theta[:, 0]) > 1e-3]
    for th in theta:
        back = from_delta(family, to_delta(family, th))
        np.testing.assert_allclose(back.as_array(), th, atol=1e-12, rtol=0)


@pytest.mark.parametrize("family", ["a", "ma", "r19", "mr19", "tp"])
def test_round_trip_on_curve(family):
    for th in region_sample(family, 500, seed=6):
        back = from_delta(family, to_delta(family, th))
        assert back is not None
        assert back[0] == pytest.approx(th[0], abs=1e-12)


# ---- regions -------------------------------------------------------------------


@pytest.mark.parametrize(
    "family, params, inside",
    [
        ("mg", (3.0, 0.0), True),
        ("g", (0.0, -1.0), True),
        ("mr19", -2.0, True),
        ("r19", -2.0, False),
        ("mg", (2.0, 2.0), False),
        ("r18a", (1.0, 1.0), False),
        ("mr18b", (-2.0, 1.0), True),
        ("mr18b", (-2.0, 0.5), False),
        ("r23", (0.5, 2.0 + 1e-13), True),
        ("r23", (0.5, 2.0 + 1e-9), False),
    ],
)
def test_region_contains_examples(family, params, inside):
    assert region_contains(family, params) is inside


def test_region_sample_examples():
    assert region_sample("mg", 0, seed=1).shape == (0, 2)
    ma = region_sample("ma", 100, seed=1)
    assert ma.shape == (100, 1) and ma.min() >= -1 and ma.max() <= 3
    mr = region_sample("mr18a", 1000, seed=2)
    s = mr.sum(axis=1)
    assert np.all((s >= -2) & (s <= 1))
    np.testing.assert_array_equal(region_sample("r23", 50, seed=4), region_sample("r23", 50, seed=4))


@pytest.mark.parametrize("family", [f.value for f in FamilyId if f is not FamilyId.PARETO])
def test_region_sample_stays_inside(family):
    pts = region_sample(family, 500, seed=13)
    assert all(region_contains(family, p) for p in pts)


def test_region_projection_lands_inside():
    rng = np.random.default_rng(0)
    for fam in TWO_PARAM:
        region = get_family(fam).region
        for th in rng.uniform(-5, 5, (200, 2)):
            p = region.project(th)
            assert region.contains(p, 1e-9)
            if region.contains(th):
                np.testing.assert_allclose(p, th, atol=1e-12)


# ---- validity of the regions -------------------------------------------------------


@pytest.mark.parametrize("family", MODIFIED_REGIONS)
def test_modified_regions_always_valid(family):
    spec = get_family(family)
    pts = np.vstack([region_sample(family, 10**4, seed=21), spec.region.vertices()])
    bad = [p for p in pts if not validity_check(to_delta(family, p)).is_valid]
    assert not bad, f"{family}: {len(bad)} invalid points, e.g. {bad[:3]}"


def test_g_region_contains_invalid_points():
    assert region_contains("g", (0.0, -1.0))
    cert = validity_check(to_delta("g", (0.0, -1.0)))
    assert not cert.is_valid and cert.min_value == pytest.approx(-1 / 6)
    pts = region_sample("g", 10**4, seed=3)
    n_bad = sum(not validity_check(to_delta("g", p)).is_valid for p in pts)
    assert n_bad > 0


def test_original_regions_valid_except_g():
    # A, R18a, R18b, R19 and TP regions sit inside the valid set
    for family in ("a", "r18a", "r18b", "r19", "tp"):
        spec = get_family(family)
        pts = np.vstack([region_sample(family, 5000, seed=8), spec.region.vertices()])
        assert all(validity_check(to_delta(family, p)).is_valid for p in pts), family


def test_r23_region_validity_is_observed(capsys):
    spec = get_family("r23")
    pts = np.vstack([region_sample("r23", 10**4, seed=23), spec.region.vertices()])
    mins = np.array([validity_check(to_delta("r23", p)).min_value for p in pts])
    n_bad = int(np.sum(mins < -1e-12))
    with capsys.disabled():
        print(f"\nr23 region: {n_bad} of {len(pts)} points invalid, smallest min r = {mins.min():.3g}")
    assert n_bad == 0


def test_mg_mr18a_mr18b_region_equivalence():
    images = {
        "mg": region_sample("mg", 10**4, seed=31),
        "mr18a": region_sample("mr18a", 10**4, seed=32),
        "mr18b": region_sample("mr18b", 10**4, seed=33),
    }
    for src, pts in images.items():
        for dst in images:
            if dst == src:
                continue
            for p in pts:
                q = from_delta(dst, to_delta(src, p))
                assert region_contains(dst, q), (src, dst, p, q)


def test_modified_regions_are_one_delta_triangle():
    # vertices of the three regions map to the same delta polygon
    def image(fam):
        v = get_family(fam).region.vertices()
        return {tuple(np.round(to_delta(fam, p).as_tuple(), 12) + 0.0) for p in v}

    assert image("mg") == image("mr18a") == image("mr18b")
