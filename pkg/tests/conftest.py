import os

import hypothesis
import numpy
import pytest

from gspcert import gvars
from gspcert import logging
from gspcert.cartan import build_normalizer
from gspcert.fieldtower import build_tower

numpy.seterr(all='warn')

hypothesis.settings.register_profile('default', max_examples=40,
                                     deadline=None)
hypothesis.settings.register_profile('fast', max_examples=5, deadline=None)
hypothesis.settings.register_profile('thorough', max_examples=400,
                                     deadline=None)
hypothesis.settings.load_profile(os.environ.get('HYPOTHESIS_PROFILE',
                                                'default'))

small_towers = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3), (5, 1),
                (5, 2), (7, 1), (11, 1), (13, 1)]
# |N| up to about 10^5
large_towers = [(5, 3), (7, 2), (7, 3), (11, 2), (11, 3), (13, 2)]
towers = small_towers + [pytest.param(pd, marks=pytest.mark.slow)
                         for pd in large_towers]

def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: long exhaustive searches')

@pytest.fixture(autouse=True)
def quiet_logger():
    level = gvars.logger.level
    gvars.logger.level = logging.DISABLED
    yield
    gvars.logger.level = level

@pytest.fixture(params=towers, ids=lambda pd: f'p{pd[0]}d{pd[1]}')
def tower(request):
    return build_tower(*request.param)

@pytest.fixture(params=towers, ids=lambda pd: f'p{pd[0]}d{pd[1]}')
def normalizer(request):
    return build_normalizer(*request.param)
