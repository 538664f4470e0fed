import bisect
import csv
import io
import random

import pytest

import todolist


@pytest.mark.parametrize("cls", [todolist.TodoList, todolist.LinkedTodoList])
def test_matches_sorted_list(cls):
    t = cls(0.2)
    model = []
    rng = random.Random(5)
    for _ in range(5000):
        x = rng.randrange(0, 500)
        op = rng.randrange(4)
        if op < 2:
            present = x in model
            assert t.insert(x) is (not present)
            if not present:
                bisect.insort(model, x)
        elif op == 2:
            present = x in model
            assert t.erase(x) is present
            if present:
                model.remove(x)
        else:
            i = bisect.bisect_left(model, x)
            out = t.find_predecessor(x)
            assert out.successor == (model[i] if i < len(model) else None)
            assert out.predecessor == (model[i - 1] if i > 0 else None)
            assert out.found == (i < len(model) and model[i] == x)
            assert out.comparisons <= t.height + 1
    assert t.keys() == model
    assert len(t) == len(model)
    t.validate()


def test_stats_count_comparisons():
    t = todolist.TodoList(0.2)
    for k in range(1000):
        t.insert(k)
    t.reset_stats()
    assert t.successor(500) == 500
    assert 0 < t.stats().comparisons <= t.height + 2


def test_bad_epsilon_raises():
    with pytest.raises(ValueError):
        todolist.TodoList(0.0)


def test_working_todolist_promotes_to_level_zero():
    w = todolist.WorkingTodoList(1000, 0.2)
    out = w.access(777)
    assert out.found_level == w.height
    assert 777 in w.level_keys(0)
    assert w.queue_order()[0] == 777
    again = w.access(777)
    assert again.found_level == 0
    w.validate()
    with pytest.raises(IndexError):
        w.access(0)


def test_sweep_csv_has_insert_and_search_rows():
    text = todolist.sweep_csv(n=2000, eps_from=0.1, eps_to=0.3, eps_step=0.1)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert [r["phase"] for r in rows] == ["insert", "search"] * 3
    assert {r["epsilon"] for r in rows} == {"0.1", "0.2", "0.3"}
    assert all(int(r["comparisons"]) > 0 for r in rows if r["phase"] == "search")


def test_race_csv_rejects_unknown_structure():
    with pytest.raises(ValueError):
        todolist.race_csv(n_from=100, n_to=100, n_step=100, structures=["nope"])
