"""Run configuration."""
import os
from typing import Any, Optional

from dotenv import find_dotenv, load_dotenv


def default_threads() -> int:
    """TESSERA_THREADS from the environment or a working-directory .env, else the core count."""
    load_dotenv(find_dotenv(usecwd=True))
    value = os.getenv("TESSERA_THREADS", "")
    if value.strip().isdigit() and int(value) > 0:
        return int(value)
    return os.cpu_count() or 1


class RunConfig:
    """Configuration of one CLI run.

    ``params`` holds the command-specific options (degrees, heights, ratio
    selectors); everything else is shared by all commands.
    """

    def __init__(
        self,
        command: str,
        subcommand: str = "",
        input: str = "",
        output: str = "",
        witness: str = "",
        params: Optional[dict] = None,
        seed: int = 0,
        budget: int = 0,
        threads: Optional[int] = None,
        verbose: bool = False,
    ):
        self.command = command
        self.subcommand = subcommand
        self.input = input
        self.output = output
        self.witness = witness
        self.params = dict(params or {})
        self.seed = seed
        self.budget = budget
        self.threads = threads if threads is not None else default_threads()
        self.verbose = verbose

    def param(self, name: str, default: Any = None) -> Any:
        value = self.params.get(name)
        return default if value is None else value

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "subcommand": self.subcommand,
            "input": self.input,
            "output": self.output,
            "witness": self.witness,
            "params": dict(self.params),
            "seed": self.seed,
            "budget": self.budget,
            "threads": self.threads,
            "verbose": self.verbose,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        return cls(**data)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RunConfig) and self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        return f"RunConfig({self.command} {self.subcommand}".rstrip() + ")"
