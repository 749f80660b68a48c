import pytest

from povmrt.tolerances import DEFAULT, ToleranceProfile, resolve


def test_defaults():
    assert DEFAULT.feas == 1e-7 and DEFAULT.psd == 1e-9
    assert resolve(None) is DEFAULT


def test_env_override():
    tol = ToleranceProfile.from_env({"POVMRT_EPS_FEAS": "1e-5", "UNRELATED": "x"})
    assert tol.feas == 1e-5 and tol.psd == DEFAULT.psd


def test_env_bad_number():
    with pytest.raises(ValueError, match="POVMRT_EPS_GAP"):
        ToleranceProfile.from_env({"POVMRT_EPS_GAP": "tiny"})


def test_dict_roundtrip():
    tol = DEFAULT.replace(maj=1e-6)
    assert ToleranceProfile.from_dict(tol.to_dict()) == tol
    with pytest.raises(ValueError, match="bogus"):
        ToleranceProfile.from_dict({"bogus": 1})
