from __future__ import annotations

from dataclasses import dataclass
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Truth value of a checked property, with a counterexample when false.

    Behaves like a bool, so ``if is_congruence(D, P): ...`` reads naturally.
    """

    holds: bool
    witness: Any = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


TRUE = Verdict(True)
