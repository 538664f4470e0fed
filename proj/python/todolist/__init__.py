"""Top-down skiplists (todolists) with comparison instrumentation."""

from ._core import (
    AccessOutcome,
    LinkedTodoList,
    OpStats,
    SearchOutcome,
    TodoList,
    WorkingRebuildReport,
    WorkingTodoList,
    race_csv,
    sweep_csv,
)

__all__ = [
    "AccessOutcome",
    "LinkedTodoList",
    "OpStats",
    "SearchOutcome",
    "TodoList",
    "WorkingRebuildReport",
    "WorkingTodoList",
    "race_csv",
    "sweep_csv",
]
