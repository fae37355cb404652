import os

from tests.filter_composer import FilterComposer


def teardown_module():
    if os.environ.get("FBDUAL_DEBUG") is not None:
        return
    FilterComposer.cleanup()
