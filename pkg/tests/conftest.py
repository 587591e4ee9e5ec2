import numpy as np
import pytest

from coherence_lab.field import FieldConfig
from coherence_lab.states import number_state, product_of, vacuum


@pytest.fixture
def unit_field():
    return FieldConfig()


@pytest.fixture
def fig2_state():
    return product_of(number_state(1, 8), vacuum(8))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
