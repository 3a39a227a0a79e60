import doctest

import pytest

from chordlab import bijections, chord, fps


@pytest.mark.parametrize("module", [fps, chord, bijections])
def test_module_doctests(module):
    failures, attempted = doctest.testmod(module, verbose=False)
    assert attempted > 0
    assert failures == 0
