import doctest
import importlib
import pkgutil

import pytest

import mwcycles

MODULES = sorted(m.name for m in pkgutil.iter_modules(mwcycles.__path__, "mwcycles.")
                 if not m.name.endswith("__main__"))


@pytest.mark.parametrize("name", ["mwcycles"] + MODULES)
def test_doctests(name):
    result = doctest.testmod(importlib.import_module(name), optionflags=doctest.ELLIPSIS)
    assert result.failed == 0
