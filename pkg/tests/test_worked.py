import json

import pytest

from multcalc.jsonio import dumps
from multcalc.worked import EXAMPLES, ExampleResult, run_examples


@pytest.mark.parametrize("name, fn", EXAMPLES, ids=[name for name, _ in EXAMPLES])
def test_worked_example(name, fn):
    passed, value = fn()
    assert passed, f"{name}: {value!r}"


def test_example_names_are_unique():
    names = [name for name, _ in EXAMPLES]
    assert len(names) == len(set(names))


def test_example_results_serialize():
    results = run_examples()
    assert all(isinstance(r, ExampleResult) for r in results)
    text = dumps([r.to_json() for r in results])
    assert [e["name"] for e in json.loads(text)] == [name for name, _ in EXAMPLES]
