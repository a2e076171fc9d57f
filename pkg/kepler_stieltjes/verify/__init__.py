import importlib
import os
from dataclasses import dataclass
from enum import Enum

from kepler_stieltjes import config
from kepler_stieltjes.logger import logger
from kepler_stieltjes.utils import Timer


def scaled(n: int, minimum: int = 2) -> int:
    """Grid size n, shrunk under ENV=unittest."""
    return max(minimum, int(round(n * config.VERIFY_SCALE)))


class SuiteLevel(str, Enum):
    quick = "quick"  # run by `verify --level quick` and `--level full`
    full = "full"  # run by `verify --level full` only


@dataclass
class Suite:
    name: str
    description: str
    level: SuiteLevel

    @classmethod
    def from_dict(cls, d: dict):
        return cls(**{k: v for k, v in d.items() if k not in ["func"]})


@dataclass
class SuiteOutcome:
    name: str
    passed: bool
    elapsed: float
    detail: str

    def to_line(self) -> str:
        status = "pass" if self.passed else "fail"
        detail = " ".join(self.detail.split())
        return f"suite={self.name} status={status} elapsed={self.elapsed:.3f} detail={detail}"


class SuiteRegistry:
    def __init__(self):
        self._suites = {}

    def register(self, name: str, description: str, level: str = "quick"):
        """A suite takes no argument and returns (passed, detail)."""

        def decorator(func):
            self._suites[name] = {
                "name": name,
                "description": description,
                "level": SuiteLevel(level),
                "func": func,
            }
            return func

        return decorator

    def get_suite_function(self, name):
        return self._suites.get(name, {}).get("func", None)

    def get_suite(self, name) -> Suite:
        return Suite.from_dict(self._suites.get(name, {}))

    def get_suites(self, level: str | SuiteLevel = SuiteLevel.full) -> list[Suite]:
        level = SuiteLevel(level)
        suites = [self.get_suite(name) for name in self._suites]
        if level == SuiteLevel.quick:
            suites = [s for s in suites if s.level == SuiteLevel.quick]
        return suites

    def get_suite_names(self) -> list[str]:
        return list(self._suites.keys())

    def run(self, name: str) -> SuiteOutcome:
        func = self.get_suite_function(name)
        if func is None:
            raise KeyError(f"Unknown suite: {name}")

        with Timer() as timer:
            try:
                passed, detail = func()
            except Exception as e:
                logger.exception(f"Suite {name} raised")
                passed, detail = False, f"{type(e).__name__}: {e}"
        return SuiteOutcome(name=name, passed=bool(passed), elapsed=timer.execution_time, detail=detail)

    def run_level(self, level: str | SuiteLevel) -> list[SuiteOutcome]:
        return [self.run(s.name) for s in self.get_suites(level)]


# Create a global instance of the SuiteRegistry
suite_registry = SuiteRegistry()

# Registed decorated suites in verify
# --
suites_package = "kepler_stieltjes.verify"
suites_directory = __path__[0]
for filename in sorted(os.listdir(suites_directory)):
    if filename.endswith(".py") and not filename.startswith("_"):
        # The suite is registed from the decorator @suite_registry.register
        module_name = filename[:-3]
        importlib.import_module(f"{suites_package}.{module_name}")
