import pytest

from tfloc.atoms import make_wavelet, make_window


@pytest.fixture(scope="session")
def shannon():
    return make_wavelet("shannon")


@pytest.fixture(scope="session")
def haar():
    return make_wavelet("haar")


@pytest.fixture(scope="session")
def gaussian():
    return make_window("gaussian")


@pytest.fixture(scope="session")
def rect():
    return make_window("rect")
