"""Possible worlds of an experiment table.

A world fixes both settings and both outcomes and carries the probability
the table assigns to that combination.  Only combinations with probability
strictly above the classification threshold epsilon count as possible.
World identity is the four coordinates; the probability tags along for
reporting but plays no role in equality, so all logic downstream is modal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import DomainError, InconsistentModelError
from .labels import SETTING_PAIRS, FrameOrdering, Outcome, Region, Setting
from .quantum import JointProbabilityTable

EPSILON_DEFAULT = 1e-9
EPSILON_MAX = 0.1


@dataclass(frozen=True)
class World:
    left_setting: Setting
    right_setting: Setting
    left_outcome: Outcome
    right_outcome: Outcome
    probability: float = field(compare=False)

    def __post_init__(self) -> None:
        if self.left_setting.region is not Region.LEFT:
            raise ValueError(f"{self.left_setting} is not a left setting")
        if self.right_setting.region is not Region.RIGHT:
            raise ValueError(f"{self.right_setting} is not a right setting")

    def setting_in(self, region: Region) -> Setting:
        return self.left_setting if region is Region.LEFT else self.right_setting

    def outcome_in(self, region: Region) -> Outcome:
        return self.left_outcome if region is Region.LEFT else self.right_outcome

    @property
    def sort_key(self) -> tuple[int, int, int, int]:
        return (
            self.left_setting.index,
            self.right_setting.index,
            self.left_outcome.sort_index,
            self.right_outcome.sort_index,
        )

    def label(self) -> str:
        return (
            f"{self.left_setting} {self.right_setting} "
            f"{self.left_outcome} {self.right_outcome}"
        )

    def __str__(self) -> str:
        return f"({self.left_setting},{self.right_setting},{self.left_outcome},{self.right_outcome})"


@dataclass(frozen=True)
class WorldModel:
    """The possible worlds of a table, with the frame used to order regions."""

    worlds: frozenset[World]
    table: JointProbabilityTable
    epsilon: float
    frame: FrameOrdering

    def sorted_worlds(self) -> list[World]:
        return sorted(self.worlds, key=lambda w: w.sort_key)

    def worlds_for_pair(
        self, left_setting: Setting, right_setting: Setting
    ) -> list[World]:
        return [
            w
            for w in self.sorted_worlds()
            if w.left_setting is left_setting and w.right_setting is right_setting
        ]

    def find(
        self,
        left_setting: Setting,
        right_setting: Setting,
        left_outcome: Outcome,
        right_outcome: Outcome,
    ) -> World | None:
        for w in self.worlds:
            if (
                w.left_setting is left_setting
                and w.right_setting is right_setting
                and w.left_outcome is left_outcome
                and w.right_outcome is right_outcome
            ):
                return w
        return None

    def __iter__(self) -> Iterator[World]:
        return iter(self.sorted_worlds())

    def __len__(self) -> int:
        return len(self.worlds)


def enumerate_worlds(
    table: JointProbabilityTable,
    epsilon: float = EPSILON_DEFAULT,
    frame: FrameOrdering = FrameOrdering.LEFT_BEFORE_RIGHT,
) -> WorldModel:
    """Collect every setting/outcome combination with probability > epsilon.

    Raises InconsistentModelError when some setting pair ends up with no
    possible world at all; free choice of settings demands at least one
    possible outcome for every pair.
    """
    epsilon = float(epsilon)
    if not 0.0 < epsilon < EPSILON_MAX:
        raise DomainError(
            f"epsilon must lie strictly in (0, {EPSILON_MAX}), got {epsilon!r}"
        )
    worlds = frozenset(
        World(ls, rs, lo, ro, probability=p)
        for (ls, rs, lo, ro), p in table.entries.items()
        if p > epsilon
    )
    for ls, rs in SETTING_PAIRS:
        if not any(
            w.left_setting is ls and w.right_setting is rs for w in worlds
        ):
            raise InconsistentModelError(
                f"free-choice violation: settings ({ls}, {rs}) admit no outcome "
                f"with probability above {epsilon}"
            )
    return WorldModel(worlds=worlds, table=table, epsilon=epsilon, frame=frame)
