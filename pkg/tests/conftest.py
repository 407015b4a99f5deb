from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import settings

from sasaki7 import sasaki

settings.register_profile("exact", max_examples=100, deadline=None, derandomize=True)
settings.load_profile("exact")


@lru_cache(maxsize=None)
def model_at(t) -> sasaki.SasakiModel:
    return sasaki.build_model(Fraction(t))


@pytest.fixture(scope="session")
def model():
    return model_at(Fraction(1))
